//! Distance-only power-law propagation model `g(r) = K r^-eta`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Power-law path gain shared by the fluid model and the simulator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathLossModel {
    k: f64,
    eta: f64,
}

impl PathLossModel {
    /// Builds a model with constant `k > 0` and exponent `eta > 2`.
    pub fn new(k: f64, eta: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::invalid("k", format!("must be finite and > 0 (got {k})")));
        }
        if !eta.is_finite() {
            return Err(Error::invalid("eta", format!("must be finite (got {eta})")));
        }
        if eta <= 2.0 {
            return Err(Error::EtaTooSmall(eta));
        }
        Ok(Self { k, eta })
    }

    /// `K = 1`, the usual choice when only power ratios matter.
    pub fn with_eta(eta: f64) -> Result<Self> {
        Self::new(1.0, eta)
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Path gain `K r^-eta` at distance `r` meters.
    pub fn path_gain(&self, r: f64) -> Result<f64> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Domain {
                what: "r",
                value: r,
                bound: "0 < r < inf".into(),
            });
        }
        Ok(self.k * r.powf(-self.eta))
    }
}
