//! Downlink radio quality from the interference factor: CDMA SINR and
//! power control under perfect power control, and OFDMA SINR.
//!
//! All SINR values are linear.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One mobile served by the cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CdmaUser {
    /// Target SINR, linear.
    pub gamma_star: f64,
    /// Path gain to the serving station.
    pub gain_g: f64,
    /// Other-cell interference factor at the mobile.
    pub f: f64,
    /// Thermal noise, W.
    pub noise: f64,
}

impl CdmaUser {
    pub fn new(gamma_star: f64, gain_g: f64, f: f64, noise: f64) -> Result<Self> {
        let u = Self {
            gamma_star,
            gain_g,
            f,
            noise,
        };
        u.validate()?;
        Ok(u)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma_star.is_finite() && self.gamma_star >= 0.0) {
            return Err(Error::invalid("gamma_star", format!("must be finite and >= 0 (got {})", self.gamma_star)));
        }
        if !(self.gain_g.is_finite() && self.gain_g > 0.0) {
            return Err(Error::invalid("gain_g", format!("must be finite and > 0 (got {})", self.gain_g)));
        }
        if !(self.f.is_finite() && self.f >= 0.0) {
            return Err(Error::invalid("f", format!("must be finite and >= 0 (got {})", self.f)));
        }
        if !(self.noise.is_finite() && self.noise >= 0.0) {
            return Err(Error::invalid("noise", format!("must be finite and >= 0 (got {})", self.noise)));
        }
        Ok(())
    }

    /// `t = gamma* / (1 + alpha gamma*)`, the user's share of its own
    /// received power.
    pub fn power_share(&self, alpha: f64) -> f64 {
        self.gamma_star / (1.0 + alpha * self.gamma_star)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdmaCellConfig {
    /// Orthogonality loss factor in `[0, 1]`.
    pub alpha: f64,
    /// Common and broadcast channel power, W.
    pub p_cch: f64,
    pub users: Vec<CdmaUser>,
}

impl CdmaCellConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::invalid("alpha", format!("must be in [0, 1] (got {})", self.alpha)));
        }
        if !(self.p_cch.is_finite() && self.p_cch >= 0.0) {
            return Err(Error::invalid("p_cch", format!("must be finite and >= 0 (got {})", self.p_cch)));
        }
        self.users.iter().try_for_each(CdmaUser::validate)
    }

    /// `L = sum_u t_u (alpha + f_u)`; the cell is feasible iff `L < 1`.
    pub fn load(&self) -> f64 {
        self.users
            .iter()
            .map(|u| u.power_share(self.alpha) * (self.alpha + u.f))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellPowerSolution {
    pub total_power_pb: f64,
    pub per_user_power: Vec<f64>,
    pub load: f64,
}

/// `S / (alpha (I_int - S) + I_ext + noise)`. `I_int` includes the useful
/// signal `S`.
pub fn cdma_sinr(s: f64, i_int: f64, i_ext: f64, noise: f64, alpha: f64) -> Result<f64> {
    for (name, v) in [("s", s), ("i_int", i_int), ("i_ext", i_ext), ("noise", noise), ("alpha", alpha)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::invalid(name, format!("must be finite and >= 0 (got {v})")));
        }
    }
    if s > i_int {
        return Err(Error::InvalidDecomposition {
            signal: s,
            internal: i_int,
        });
    }
    let denom = alpha * (i_int - s) + i_ext + noise;
    if denom <= 0.0 {
        return Err(Error::SingularSinr);
    }
    Ok(s / denom)
}

/// Transmit power the station spends on `u` so that it meets its target
/// when the station emits `p_b` in total.
pub fn cdma_user_power(u: &CdmaUser, alpha: f64, p_b: f64) -> Result<f64> {
    if !(p_b.is_finite() && p_b > 0.0) {
        return Err(Error::invalid("p_b", format!("must be finite and > 0 (got {p_b})")));
    }
    u.validate()?;
    Ok(u.power_share(alpha) * (alpha * p_b + u.f * p_b + u.noise / u.gain_g))
}

/// Solves the station power fixed point
/// `Pb = p_cch + sum_u t_u ((alpha + f_u) Pb + noise_u / g_u)`.
pub fn cdma_cell_power(cfg: &CdmaCellConfig) -> Result<CellPowerSolution> {
    cfg.validate()?;
    let load = cfg.load();
    if !(load < 1.0) {
        return Err(Error::Infeasible { load });
    }
    let noise_term: f64 = cfg
        .users
        .iter()
        .map(|u| u.power_share(cfg.alpha) * u.noise / u.gain_g)
        .sum();
    let total = (cfg.p_cch + noise_term) / (1.0 - load);
    if total == 0.0 {
        // No common channel and only noiseless users: everything is zero.
        return Ok(CellPowerSolution {
            total_power_pb: 0.0,
            per_user_power: vec![0.0; cfg.users.len()],
            load,
        });
    }
    let per_user_power = cfg
        .users
        .iter()
        .map(|u| cdma_user_power(u, cfg.alpha, total))
        .collect::<Result<Vec<_>>>()?;
    Ok(CellPowerSolution {
        total_power_pb: total,
        per_user_power,
        load,
    })
}

/// `1 / (f + noise / (P_bu g))`; OFDMA has no own-cell interference.
pub fn ofdma_sinr(f: f64, noise_over_signal: f64) -> Result<f64> {
    if !(f.is_finite() && f >= 0.0) {
        return Err(Error::invalid("f", format!("must be finite and >= 0 (got {f})")));
    }
    if !(noise_over_signal.is_finite() && noise_over_signal >= 0.0) {
        return Err(Error::invalid(
            "noise_over_signal",
            format!("must be finite and >= 0 (got {noise_over_signal})"),
        ));
    }
    let denom = f + noise_over_signal;
    if denom == 0.0 {
        return Err(Error::SingularSinr);
    }
    Ok(1.0 / denom)
}

/// Interference-limited OFDMA SINR `1 / f`, valid when noise is negligible
/// against other-cell interference.
pub fn ofdma_sinr_approx(f: f64) -> Result<f64> {
    ofdma_sinr(f, 0.0)
}
