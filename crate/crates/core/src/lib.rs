//! Downlink other-cell interference factor (OCIF) of cellular networks.
//!
//! The interference factor `f` at a mobile is the ratio of the power it
//! receives from every non-serving station to the power it receives from
//! its serving station. This crate evaluates `f` two ways:
//!
//! * [`fluid`]: closed form obtained by replacing the stations around the
//!   cell by a uniform density of transmitters;
//! * [`hexsim`]: Monte Carlo on a discrete hexagonal lattice ([`geometry`]).
//!
//! [`linkmodel`] turns `f` into CDMA downlink power control and OFDMA SINR.

// `!(x < y)` is used deliberately so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fluid;
pub mod geometry;
pub mod hexsim;
pub mod linkmodel;
pub mod pathloss;

pub use error::{Error, Result};
pub use fluid::{external_interference_fluid, ocif_finite, ocif_infinite, NetworkParams};
pub use geometry::{HexLayout, Point2D};
pub use hexsim::{compare_profiles, empirical_f, simulate_profile, CompareOptions, DeviationReport, FProfile, SimConfig};
pub use linkmodel::{
    cdma_cell_power, cdma_sinr, cdma_user_power, ofdma_sinr, ofdma_sinr_approx, CdmaCellConfig, CdmaUser,
    CellPowerSolution,
};
pub use pathloss::PathLossModel;
