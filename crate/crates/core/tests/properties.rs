use ocif_core::fluid::{half_distance_for_cell_radius, hex_density};
use ocif_core::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

proptest! {
    #[test]
    fn every_station_serves_itself(rings in 0u32..9, radius in 1.0f64..1e4) {
        let l = HexLayout::new(rings, radius).unwrap();
        for (j, p) in l.bs_positions().iter().enumerate() {
            prop_assert_eq!(l.serving_bs(p), j);
        }
    }

    #[test]
    fn samples_within_radius(seed in any::<u64>(), radius in 1.0f64..1e4) {
        let l = HexLayout::new(1, radius).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..64 {
            let p = l.sample_center_cell(&mut rng);
            prop_assert!(p.norm() <= radius * (1.0 + 1e-12));
            prop_assert_eq!(l.serving_bs(&p), 0);
        }
    }

    #[test]
    fn hex_consistent_density(radius in 1e-3f64..1e6) {
        let rc = half_distance_for_cell_radius(radius);
        prop_assert!(rel(hex_density(radius), 1.0 / (2.0 * 3f64.sqrt() * rc * rc)) < 1e-12);
    }

    #[test]
    fn fluid_scale_invariance(
        frac in 0.01f64..1.2,
        eta in 2.05f64..6.0,
        ratio in 4.0f64..200.0,
        lambda in prop::sample::select(vec![0.1, 3.0, 1000.0]),
    ) {
        let rc = 866.0;
        let m = PathLossModel::with_eta(eta).unwrap();
        let rho = 1.0 / (2.0 * 3f64.sqrt() * rc * rc);
        let base = NetworkParams::new(rc, ratio * rc, rho, m, 1.0).unwrap();
        let scaled = NetworkParams::new(lambda * rc, lambda * ratio * rc, rho / (lambda * lambda), m, 1.0).unwrap();
        let r = frac * rc;
        let a = ocif_finite(r, &base).unwrap();
        let b = ocif_finite(lambda * r, &scaled).unwrap();
        prop_assert!(rel(b, a) < 1e-12, "{} vs {}", a, b);
    }

    #[test]
    fn fluid_ratio_identity(frac in 0.01f64..1.9, eta in 2.05f64..6.0, k in 1e-6f64..10.0, pb in 1e-3f64..100.0) {
        let m = PathLossModel::new(k, eta).unwrap();
        let p = NetworkParams::hex_consistent(1000.0, 31.0 * 866.025, m, pb).unwrap();
        let r = frac * p.half_distance();
        let f = ocif_finite(r, &p).unwrap();
        let i_ext = external_interference_fluid(r, &p).unwrap();
        prop_assert!(i_ext > 0.0);
        prop_assert!(rel(f * pb * m.path_gain(r).unwrap(), i_ext) < 1e-12);
    }

    #[test]
    fn cdma_round_trip(
        users in prop::collection::vec((0.005f64..0.05, 1e-13f64..1e-8, 0.0f64..2.0, 0.0f64..1e-12), 1..20),
        alpha in 0.0f64..=1.0,
        p_cch in 0.0f64..20.0,
    ) {
        let users: Vec<CdmaUser> = users.into_iter().map(|(g, gain, f, n)| CdmaUser::new(g, gain, f, n).unwrap()).collect();
        let cfg = CdmaCellConfig { alpha, p_cch, users };
        match cdma_cell_power(&cfg) {
            Ok(sol) if sol.total_power_pb > 0.0 => {
                let pb = sol.total_power_pb;
                let resum = p_cch + sol.per_user_power.iter().sum::<f64>();
                prop_assert!(rel(resum, pb) < 1e-12);
                for (u, &pu) in cfg.users.iter().zip(&sol.per_user_power) {
                    let s = pu * u.gain_g;
                    let g = cdma_sinr(s, pb * u.gain_g, u.f * pb * u.gain_g, u.noise, alpha).unwrap();
                    prop_assert!(rel(g, u.gamma_star) < 1e-9);
                }
            }
            Ok(_) => {}
            Err(Error::Infeasible { load }) => prop_assert!(load >= 1.0),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn ofdma_error_identity(f in 1e-4f64..10.0, n in 0.0f64..5.0) {
        let exact = ofdma_sinr(f, n).unwrap();
        let approx = ofdma_sinr_approx(f).unwrap();
        let closed = n / (f * (f + n));
        prop_assert!((approx - exact - closed).abs() <= 1e-12 * approx);
    }
}

#[test]
fn cdma_power_increases_with_each_input() {
    let base_users = vec![
        CdmaUser::new(0.02, 1e-10, 0.6, 1e-13).unwrap(),
        CdmaUser::new(0.05, 3e-11, 1.1, 1e-13).unwrap(),
        CdmaUser::new(0.01, 1e-9, 0.1, 1e-13).unwrap(),
    ];
    let base = CdmaCellConfig { alpha: 0.7, p_cch: 2.0, users: base_users };
    let p0 = cdma_cell_power(&base).unwrap().total_power_pb;

    let mut c = base.clone();
    c.p_cch *= 1.01;
    assert!(cdma_cell_power(&c).unwrap().total_power_pb > p0);
    for i in 0..base.users.len() {
        let mut c = base.clone();
        c.users[i].gamma_star *= 1.01;
        assert!(cdma_cell_power(&c).unwrap().total_power_pb > p0, "gamma user {i}");
        let mut c = base.clone();
        c.users[i].f += 0.01;
        assert!(cdma_cell_power(&c).unwrap().total_power_pb > p0, "f user {i}");
    }
}
