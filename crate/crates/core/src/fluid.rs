//! Closed-form interference of the fluid network model.
//!
//! Base stations are smeared into a uniform density `rho` outside a disc of
//! radius `2 Rc - r` around the mobile, out to the network edge `Rnw - r`.
//! Integrating `rho Pb K z^-eta` over that ring gives the external
//! interference; dividing by the serving power `Pb K r^-eta` gives the
//! other-cell interference factor `f(r)`, which is independent of `Pb` and
//! `K`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pathloss::PathLossModel;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Parameters of the fluid network around the cell of interest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkParams {
    half_distance: f64,
    network_radius: f64,
    bs_density: f64,
    pathloss: PathLossModel,
    bs_power: f64,
}

impl NetworkParams {
    /// `half_distance` is `Rc`, half the distance between neighboring
    /// stations; `network_radius` is `Rnw`; `bs_density` is in stations/m².
    pub fn new(
        half_distance: f64,
        network_radius: f64,
        bs_density: f64,
        pathloss: PathLossModel,
        bs_power: f64,
    ) -> Result<Self> {
        if !(half_distance.is_finite() && half_distance > 0.0) {
            return Err(Error::invalid(
                "half_distance",
                format!("must be finite and > 0 (got {half_distance})"),
            ));
        }
        if !(network_radius.is_finite() && network_radius > 2.0 * half_distance) {
            return Err(Error::invalid(
                "network_radius",
                format!("must be finite and > 2 * half_distance = {} (got {network_radius})", 2.0 * half_distance),
            ));
        }
        if !(bs_density.is_finite() && bs_density > 0.0) {
            return Err(Error::invalid(
                "bs_density",
                format!("must be finite and > 0 (got {bs_density})"),
            ));
        }
        if !(bs_power.is_finite() && bs_power > 0.0) {
            return Err(Error::invalid(
                "bs_power",
                format!("must be finite and > 0 (got {bs_power})"),
            ));
        }
        Ok(Self {
            half_distance,
            network_radius,
            bs_density,
            pathloss,
            bs_power,
        })
    }

    /// Parameters matching a hexagonal lattice of cell radius `R`:
    /// `Rc = sqrt(3)/2 R` and one station per hexagon area `3 sqrt(3) R² / 2`.
    pub fn hex_consistent(
        cell_radius: f64,
        network_radius: f64,
        pathloss: PathLossModel,
        bs_power: f64,
    ) -> Result<Self> {
        if !(cell_radius.is_finite() && cell_radius > 0.0) {
            return Err(Error::invalid(
                "cell_radius",
                format!("must be finite and > 0 (got {cell_radius})"),
            ));
        }
        Self::new(
            half_distance_for_cell_radius(cell_radius),
            network_radius,
            hex_density(cell_radius),
            pathloss,
            bs_power,
        )
    }

    /// Hex-consistent parameters whose round network encloses a lattice of
    /// `rings` rings with half-spacing margin, `Rnw = (2 rings + 1) Rc`.
    pub fn for_rings(
        rings: u32,
        cell_radius: f64,
        pathloss: PathLossModel,
        bs_power: f64,
    ) -> Result<Self> {
        if rings == 0 {
            return Err(Error::invalid("rings", "need at least one ring of interferers"));
        }
        Self::hex_consistent(
            cell_radius,
            network_radius_for_rings(rings, cell_radius),
            pathloss,
            bs_power,
        )
    }

    pub fn half_distance(&self) -> f64 {
        self.half_distance
    }

    pub fn network_radius(&self) -> f64 {
        self.network_radius
    }

    pub fn bs_density(&self) -> f64 {
        self.bs_density
    }

    pub fn pathloss(&self) -> PathLossModel {
        self.pathloss
    }

    pub fn eta(&self) -> f64 {
        self.pathloss.eta()
    }

    pub fn bs_power(&self) -> f64 {
        self.bs_power
    }

    /// Same network with a different station power.
    pub fn with_bs_power(self, bs_power: f64) -> Result<Self> {
        Self::new(
            self.half_distance,
            self.network_radius,
            self.bs_density,
            self.pathloss,
            bs_power,
        )
    }

    fn check_domain(&self, r: f64) -> Result<()> {
        let two_rc = 2.0 * self.half_distance;
        if !(r > 0.0) {
            return Err(Error::Domain {
                what: "r",
                value: r,
                bound: "r > 0".into(),
            });
        }
        if !(r < two_rc) {
            return Err(Error::Domain {
                what: "r",
                value: r,
                bound: format!("r < 2 Rc = {two_rc}"),
            });
        }
        let outer = self.network_radius - two_rc;
        if !(r < outer) {
            return Err(Error::Domain {
                what: "r",
                value: r,
                bound: format!("r < Rnw - 2 Rc = {outer}"),
            });
        }
        Ok(())
    }

    /// `(2Rc - r)^(2-eta) - (Rnw - r)^(2-eta)`, with both bases positive.
    fn ring_bracket(&self, r: f64) -> f64 {
        let e = 2.0 - self.eta();
        (2.0 * self.half_distance - r).powf(e) - (self.network_radius - r).powf(e)
    }
}

/// `Rc = sqrt(3)/2 R`.
pub fn half_distance_for_cell_radius(cell_radius: f64) -> f64 {
    0.5 * SQRT_3 * cell_radius
}

/// One station per hexagon of radius `R`: `(3 sqrt(3) R² / 2)^-1`.
pub fn hex_density(cell_radius: f64) -> f64 {
    1.0 / (1.5 * SQRT_3 * cell_radius * cell_radius)
}

pub fn network_radius_for_rings(rings: u32, cell_radius: f64) -> f64 {
    (2.0 * rings as f64 + 1.0) * half_distance_for_cell_radius(cell_radius)
}

/// External interference power (W) received at distance `r` from the
/// serving station.
pub fn external_interference_fluid(r: f64, params: &NetworkParams) -> Result<f64> {
    params.check_domain(r)?;
    let eta = params.eta();
    let scale = 2.0 * PI * params.bs_density * params.bs_power * params.pathloss.k() / (eta - 2.0);
    Ok(scale * params.ring_bracket(r))
}

/// Interference factor of a finite round network of radius `Rnw`.
pub fn ocif_finite(r: f64, params: &NetworkParams) -> Result<f64> {
    params.check_domain(r)?;
    let eta = params.eta();
    Ok(2.0 * PI * params.bs_density * r.powf(eta) / (eta - 2.0) * params.ring_bracket(r))
}

/// Interference factor of an unbounded network (`Rnw -> inf`).
pub fn ocif_infinite(r: f64, half_distance: f64, bs_density: f64, eta: f64) -> Result<f64> {
    if !eta.is_finite() {
        return Err(Error::invalid("eta", format!("must be finite (got {eta})")));
    }
    if eta <= 2.0 {
        return Err(Error::EtaTooSmall(eta));
    }
    if !(half_distance.is_finite() && half_distance > 0.0) {
        return Err(Error::invalid(
            "half_distance",
            format!("must be finite and > 0 (got {half_distance})"),
        ));
    }
    if !(bs_density.is_finite() && bs_density > 0.0) {
        return Err(Error::invalid(
            "bs_density",
            format!("must be finite and > 0 (got {bs_density})"),
        ));
    }
    let two_rc = 2.0 * half_distance;
    if !(r > 0.0 && r < two_rc) {
        return Err(Error::Domain {
            what: "r",
            value: r,
            bound: format!("0 < r < 2 Rc = {two_rc}"),
        });
    }
    Ok(2.0 * PI * bs_density * r.powf(eta) / (eta - 2.0) * (two_rc - r).powf(2.0 - eta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn params(rc: f64, rnw_over_rc: f64, eta: f64) -> NetworkParams {
        let rho = 1.0 / (2.0 * SQRT_3 * rc * rc);
        NetworkParams::new(rc, rnw_over_rc * rc, rho, PathLossModel::with_eta(eta).unwrap(), 1.0).unwrap()
    }

    #[test]
    fn hex_density_matches_half_distance_form() {
        for &r in &[1.0, 37.5, 1000.0, 2.5e4] {
            let rc = half_distance_for_cell_radius(r);
            let alt = 1.0 / (2.0 * SQRT_3 * rc * rc);
            assert!(rel(hex_density(r), alt) < 1e-12);
        }
        assert!(rel(network_radius_for_rings(15, 1000.0), 31.0 * 866.025_403_784_438_6) < 1e-15);
    }

    #[test]
    fn finite_network_at_half_distance() {
        // (pi / (2 sqrt 3)) (1 - 1/81), 25-digit reference.
        for &rc in &[1.0, 866.025, 5e3] {
            let f = ocif_finite(rc, &params(rc, 10.0, 4.0)).unwrap();
            assert!(rel(f, 0.895_703_389_745_292_8) < 1e-12, "rc={rc} f={f}");
        }
    }

    #[test]
    fn infinite_network_examples() {
        let rc = 866.025;
        let rho = 1.0 / (2.0 * SQRT_3 * rc * rc);
        let f3 = ocif_infinite(rc, rc, rho, 3.0).unwrap();
        assert!(rel(f3, 1.813_799_364_234_217_9) < 1e-12);
        let f4 = ocif_infinite(rc / 2.0, rc, rho, 4.0).unwrap();
        assert!(rel(f4, 0.025_191_657_836_586_36) < 1e-12);
        assert!(ocif_infinite(1e-9 * rc, rc, rho, 3.0).unwrap() < 1e-20);
    }

    #[test]
    fn cell_center_limits() {
        let p = params(866.0, 31.0, 3.0);
        let r = 1e-6;
        let eta = p.eta();
        let limit = 2.0 * PI * p.bs_density() / (eta - 2.0)
            * ((2.0 * p.half_distance()).powf(2.0 - eta) - p.network_radius().powf(2.0 - eta));
        let i_ext = external_interference_fluid(r, &p).unwrap();
        assert!(i_ext > 0.0);
        assert!(rel(i_ext, limit) < 1e-6);
        assert!(ocif_finite(r, &p).unwrap() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        let p = params(100.0, 10.0, 3.0);
        for r in [0.0, -1.0, 200.0, 250.0, f64::NAN] {
            assert!(matches!(ocif_finite(r, &p), Err(Error::Domain { .. })), "r={r}");
            assert!(matches!(external_interference_fluid(r, &p), Err(Error::Domain { .. })));
        }
        // Rnw - 2Rc caps r when the network is tiny.
        let tight = params(100.0, 2.5, 3.0);
        match ocif_finite(60.0, &tight) {
            Err(Error::Domain { bound, .. }) => assert!(bound.contains("Rnw")),
            other => panic!("{other:?}"),
        }
        assert!(ocif_finite(40.0, &tight).is_ok());
        assert!(ocif_infinite(200.0, 100.0, 1e-5, 3.0).is_err());
        assert_eq!(ocif_infinite(50.0, 100.0, 1e-5, 2.0), Err(Error::EtaTooSmall(2.0)));
    }

    #[test]
    fn construction_errors() {
        let m = PathLossModel::with_eta(3.0).unwrap();
        assert!(NetworkParams::new(0.0, 10.0, 1.0, m, 1.0).is_err());
        assert!(NetworkParams::new(1.0, 2.0, 1.0, m, 1.0).is_err());
        assert!(NetworkParams::new(1.0, 10.0, 0.0, m, 1.0).is_err());
        assert!(NetworkParams::new(1.0, 10.0, 1.0, m, 0.0).is_err());
        assert!(NetworkParams::for_rings(0, 1000.0, m, 1.0).is_err());
    }

    #[test]
    fn ratio_identity_and_power_independence() {
        let base = params(866.0, 31.0, 3.5);
        for i in 1..=50 {
            let r = 1.2 * 866.0 * i as f64 / 50.0;
            let f = ocif_finite(r, &base).unwrap();
            for &pb in &[1.0, 20.0, 1e3] {
                let p = base.with_bs_power(pb).unwrap();
                assert_eq!(ocif_finite(r, &p).unwrap().to_bits(), f.to_bits());
                let i_ext = external_interference_fluid(r, &p).unwrap();
                let serving = pb * p.pathloss().path_gain(r).unwrap();
                assert!(rel(f * serving, i_ext) < 1e-12);
            }
        }
    }

    #[test]
    fn external_interference_scales_with_length() {
        let p = NetworkParams::hex_consistent(1000.0, 31.0 * 866.0, PathLossModel::with_eta(3.3).unwrap(), 5.0).unwrap();
        let r = 640.0;
        let base = external_interference_fluid(r, &p).unwrap();
        for &lambda in &[0.1, 3.0, 1000.0] {
            let q = NetworkParams::new(
                lambda * p.half_distance(),
                lambda * p.network_radius(),
                p.bs_density() / (lambda * lambda),
                p.pathloss(),
                p.bs_power(),
            )
            .unwrap();
            let scaled = external_interference_fluid(lambda * r, &q).unwrap();
            assert!(rel(scaled, lambda.powf(-p.eta()) * base) < 1e-12);
        }
    }

    #[test]
    fn finite_approaches_infinite() {
        let rc = 866.0;
        for &eta in &[2.7, 3.0, 3.5, 4.0] {
            for &frac in &[0.2, 0.5, 0.8, 1.0, 1.2] {
                let r = frac * rc;
                let p = params(rc, 10.0, eta);
                let inf = ocif_infinite(r, rc, p.bs_density(), eta).unwrap();
                let mut last = f64::INFINITY;
                for &ratio in &[10.0, 100.0, 1000.0] {
                    let fin = ocif_finite(r, &params(rc, ratio, eta)).unwrap();
                    let gap = (inf - fin) / inf;
                    assert!(gap > 0.0 && gap < last, "eta={eta} r={r} ratio={ratio}");
                    // The relative gap is exactly ((Rnw - r) / (2Rc - r))^(2 - eta).
                    let closed = ((ratio * rc - r) / (2.0 * rc - r)).powf(2.0 - eta);
                    assert!(rel(gap, closed) < 1e-6, "{gap} vs {closed}");
                    last = gap;
                }
            }
        }
    }

    #[test]
    fn increasing_over_cell() {
        let rc = 866.0;
        for &eta in &[2.7, 3.0, 3.5, 4.0] {
            let p = params(rc, 31.0, eta);
            let mut prev = 0.0;
            for i in 1..=1000 {
                let f = ocif_finite(1.2 * rc * i as f64 / 1000.0, &p).unwrap();
                assert!(f > prev, "eta={eta} i={i}");
                prev = f;
            }
        }
    }
}
