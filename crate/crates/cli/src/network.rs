//! Resolution of fluid-network parameters from flags or config files.

use ocif_core::fluid::{half_distance_for_cell_radius, network_radius_for_rings};
use ocif_core::{ocif_finite, ocif_infinite, NetworkParams, PathLossModel};
use serde::{Deserialize, Serialize};

use crate::args::NetworkArgs;
use crate::error::CliError;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

fn default_k() -> f64 {
    1.0
}

/// Network description shared by the CLI flags and the `cdma` config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSpec {
    #[serde(default)]
    pub cell_radius: Option<f64>,
    #[serde(default)]
    pub half_distance: Option<f64>,
    #[serde(default)]
    pub bs_density: Option<f64>,
    pub eta: f64,
    #[serde(default = "default_k")]
    pub k: f64,
    #[serde(default)]
    pub network_radius: Option<f64>,
    #[serde(default)]
    pub rings_equivalent: Option<u32>,
    #[serde(default)]
    pub infinite: bool,
}

impl NetworkSpec {
    pub fn from_args(a: &NetworkArgs, eta: f64) -> Self {
        Self {
            cell_radius: a.cell_radius,
            half_distance: a.half_distance,
            bs_density: a.bs_density,
            eta,
            k: 1.0,
            network_radius: a.network_radius,
            rings_equivalent: a.rings_equivalent,
            infinite: a.infinite,
        }
    }

    pub fn resolve(&self) -> Result<Network, CliError> {
        let pathloss = PathLossModel::new(self.k, self.eta)?;
        let (half_distance, cell_radius) = match (self.cell_radius, self.half_distance) {
            (Some(r), None) => (half_distance_for_cell_radius(r), r),
            (None, Some(rc)) => (rc, rc * 2.0 / SQRT_3),
            (Some(_), Some(_)) => {
                return Err(CliError::Usage("give only one of cell_radius and half_distance".into()))
            }
            (None, None) => return Err(CliError::Usage("one of cell_radius or half_distance is required".into())),
        };
        if !(cell_radius.is_finite() && cell_radius > 0.0) {
            return Err(CliError::Usage(format!("cell radius must be finite and > 0 (got {cell_radius})")));
        }
        let network_radius = match (self.network_radius, self.rings_equivalent, self.infinite) {
            (Some(rnw), None, false) => Some(rnw),
            (None, Some(n), false) => Some(network_radius_for_rings(n, cell_radius)),
            (None, None, true) => None,
            (None, None, false) => {
                return Err(CliError::Usage(
                    "network size required: network_radius, rings_equivalent or infinite".into(),
                ))
            }
            _ => {
                return Err(CliError::Usage(
                    "give only one of network_radius, rings_equivalent or infinite".into(),
                ))
            }
        };
        let params = match network_radius {
            Some(rnw) => Some(match (self.cell_radius, self.bs_density) {
                (Some(r), None) => NetworkParams::hex_consistent(r, rnw, pathloss, 1.0)?,
                (_, Some(rho)) => NetworkParams::new(half_distance, rnw, rho, pathloss, 1.0)?,
                (None, None) => NetworkParams::new(half_distance, rnw, hex_density_for(half_distance), pathloss, 1.0)?,
            }),
            None => None,
        };
        let bs_density = match (params, self.bs_density, self.cell_radius) {
            (Some(p), _, _) => p.bs_density(),
            (None, Some(rho), _) => rho,
            (None, None, Some(r)) => ocif_core::fluid::hex_density(r),
            (None, None, None) => hex_density_for(half_distance),
        };
        Ok(Network {
            cell_radius,
            half_distance,
            bs_density,
            pathloss,
            params,
        })
    }
}

fn hex_density_for(half_distance: f64) -> f64 {
    1.0 / (2.0 * SQRT_3 * half_distance * half_distance)
}

/// Fully resolved fluid network; `params` is `None` for an unbounded one.
#[derive(Debug, Clone, Copy)]
pub struct Network {
    pub cell_radius: f64,
    pub half_distance: f64,
    pub bs_density: f64,
    pub pathloss: PathLossModel,
    pub params: Option<NetworkParams>,
}

impl Network {
    pub fn f_infinite(&self, r: f64) -> Result<f64, CliError> {
        Ok(ocif_infinite(r, self.half_distance, self.bs_density, self.pathloss.eta())?)
    }

    pub fn f_finite(&self, r: f64) -> Result<Option<f64>, CliError> {
        match &self.params {
            Some(p) => Ok(Some(ocif_finite(r, p)?)),
            None => Ok(None),
        }
    }

    /// The network's own interference factor: finite when it has an edge.
    pub fn f(&self, r: f64) -> Result<f64, CliError> {
        match self.f_finite(r)? {
            Some(f) => Ok(f),
            None => self.f_infinite(r),
        }
    }
}
