//! Hexagonal base-station lattice, nearest-station attachment and uniform
//! sampling over the center cell.
//!
//! The center hexagon has one vertex on the positive x-axis, so its
//! top and bottom edges are horizontal and the six first-ring stations sit
//! at angles 30°, 90°, ..., 330° at distance `sqrt(3) R`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

impl Point2D {
    pub const ORIGIN: Point2D = Point2D { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance_sq(&self, other: &Point2D) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn distance(&self, other: &Point2D) -> f64 {
        self.distance_sq(other).sqrt()
    }
}

/// Axial steps between adjacent stations, counter-clockwise from 30°.
/// Axial `(a, b)` maps to `a * (1.5R, sqrt(3)/2 R) + b * (0, sqrt(3) R)`.
const AXIAL_DIRS: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

/// Base stations of a hexagonal network made of `rings` rings around a
/// center cell. Index 0 is the center station at the origin; stations are
/// then listed ring by ring, counter-clockwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HexLayout {
    rings: u32,
    cell_radius: f64,
    bs_positions: Vec<Point2D>,
}

impl HexLayout {
    /// Builds the lattice for `rings` rings of hexagonal cells of radius
    /// `cell_radius` (center to vertex) meters.
    pub fn new(rings: u32, cell_radius: f64) -> Result<Self> {
        if !(cell_radius.is_finite() && cell_radius > 0.0) {
            return Err(Error::invalid(
                "cell_radius",
                format!("must be finite and > 0 (got {cell_radius})"),
            ));
        }
        let n = rings as i64;
        let mut axial = Vec::with_capacity(Self::station_count(rings));
        axial.push((0, 0));
        for k in 1..=n {
            let (mut a, mut b) = (AXIAL_DIRS[4].0 * k, AXIAL_DIRS[4].1 * k);
            for &(da, db) in &AXIAL_DIRS {
                for _ in 0..k {
                    axial.push((a, b));
                    a += da;
                    b += db;
                }
            }
        }
        let bs_positions = axial
            .into_iter()
            .map(|(a, b)| {
                let (a, b) = (a as f64, b as f64);
                Point2D::new(1.5 * cell_radius * a, 0.5 * SQRT_3 * cell_radius * (a + 2.0 * b))
            })
            .collect();
        Ok(Self {
            rings,
            cell_radius,
            bs_positions,
        })
    }

    /// `1 + 3 n (n + 1)` stations for `n` rings.
    pub fn station_count(rings: u32) -> usize {
        let n = rings as usize;
        1 + 3 * n * (n + 1)
    }

    pub fn rings(&self) -> u32 {
        self.rings
    }

    pub fn cell_radius(&self) -> f64 {
        self.cell_radius
    }

    /// Distance between adjacent stations, `sqrt(3) R`.
    pub fn bs_spacing(&self) -> f64 {
        SQRT_3 * self.cell_radius
    }

    pub fn bs_positions(&self) -> &[Point2D] {
        &self.bs_positions
    }

    pub fn len(&self) -> usize {
        self.bs_positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bs_positions.is_empty()
    }

    /// Index of the station nearest to `p`. Ties go to the lowest index.
    pub fn serving_bs(&self, p: &Point2D) -> usize {
        nearest_station(p, &self.bs_positions)
    }

    /// Whether `p` lies in the closed center hexagon.
    pub fn in_center_cell(&self, p: &Point2D) -> bool {
        let r = self.cell_radius;
        p.y.abs() <= 0.5 * SQRT_3 * r && SQRT_3 * p.x.abs() + p.y.abs() <= SQRT_3 * r
    }

    /// Draws a point uniformly over the center cell by rejection from its
    /// bounding box `[-R, R] x [-sqrt(3)/2 R, sqrt(3)/2 R]` (acceptance 3/4).
    pub fn sample_center_cell<R: Rng + ?Sized>(&self, rng: &mut R) -> Point2D {
        let r = self.cell_radius;
        let half_h = 0.5 * SQRT_3 * r;
        loop {
            let p = Point2D::new(rng.gen_range(-r..=r), rng.gen_range(-half_h..=half_h));
            if self.in_center_cell(&p) {
                return p;
            }
        }
    }
}

/// Index of the point in `stations` nearest to `p`, lowest index on ties.
/// Returns 0 for an empty slice.
pub fn nearest_station(p: &Point2D, stations: &[Point2D]) -> usize {
    let mut best = 0;
    let mut best_d2 = f64::INFINITY;
    for (j, bs) in stations.iter().enumerate() {
        let d2 = p.distance_sq(bs);
        if d2 < best_d2 {
            best = j;
            best_d2 = d2;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn min_pair_distance(layout: &HexLayout) -> f64 {
        let pts = layout.bs_positions();
        let mut best = f64::INFINITY;
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                best = best.min(pts[i].distance(&pts[j]));
            }
        }
        best
    }

    #[test]
    fn single_cell() {
        let l = HexLayout::new(0, 1000.0).unwrap();
        assert_eq!(l.bs_positions(), &[Point2D::ORIGIN]);
    }

    #[test]
    fn first_ring_by_hand() {
        let l = HexLayout::new(1, 1000.0).unwrap();
        assert_eq!(l.len(), 7);
        let d = 3f64.sqrt() * 1000.0;
        let mut angles = Vec::new();
        for p in &l.bs_positions()[1..] {
            assert!((p.norm() - d).abs() < 1e-9 * d);
            angles.push(p.y.atan2(p.x).to_degrees().rem_euclid(360.0).round() as i64);
        }
        angles.sort();
        assert_eq!(angles, vec![30, 90, 150, 210, 270, 330]);
        assert!((d - 1_732.050_807_568_877).abs() < 1e-9);
    }

    #[test]
    fn fifteen_rings() {
        assert_eq!(HexLayout::new(15, 1000.0).unwrap().len(), 721);
    }

    #[test]
    fn cardinality_and_spacing() {
        for rings in 0..=20 {
            let l = HexLayout::new(rings, 750.0).unwrap();
            assert_eq!(l.len(), 1 + 3 * rings as usize * (rings as usize + 1));
            assert_eq!(l.bs_positions()[0], Point2D::ORIGIN);
            if rings > 0 && rings <= 8 {
                let d = min_pair_distance(&l);
                assert!((d - l.bs_spacing()).abs() <= 1e-9 * l.bs_spacing());
            }
        }
    }

    #[test]
    fn rejects_bad_radius() {
        assert!(HexLayout::new(3, 0.0).is_err());
        assert!(HexLayout::new(3, -5.0).is_err());
        assert!(HexLayout::new(3, f64::INFINITY).is_err());
    }

    #[test]
    fn serving_examples() {
        let l = HexLayout::new(3, 1000.0).unwrap();
        assert_eq!(l.serving_bs(&Point2D::ORIGIN), 0);
        for (j, p) in l.bs_positions().iter().enumerate() {
            assert_eq!(l.serving_bs(p), j);
        }
        for j in 1..=6 {
            let q = l.bs_positions()[j];
            let mid = Point2D::new(0.5 * q.x, 0.5 * q.y);
            assert_eq!(l.serving_bs(&mid), 0, "bisector with BS {j}");
        }
    }

    #[test]
    fn samples_stay_in_center_cell() {
        let l = HexLayout::new(2, 1000.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20_000 {
            let p = l.sample_center_cell(&mut rng);
            assert_eq!(l.serving_bs(&p), 0);
            assert!(p.norm() <= l.cell_radius() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let l = HexLayout::new(0, 1000.0).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..100).map(|_| l.sample_center_cell(&mut rng)).collect::<Vec<_>>()
        };
        let a = draw(11);
        let b = draw(11);
        assert!(a.iter().zip(&b).all(|(p, q)| p.x.to_bits() == q.x.to_bits() && p.y.to_bits() == q.y.to_bits()));
        assert_ne!(a, draw(12));
    }

    #[test]
    fn sampling_moments_and_disc_fraction() {
        let r = 1000.0;
        let l = HexLayout::new(0, r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let n = 100_000;
        let (mut sx, mut sy, mut sxx, mut syy, mut inside) = (0.0, 0.0, 0.0, 0.0, 0usize);
        for _ in 0..n {
            let p = l.sample_center_cell(&mut rng);
            sx += p.x;
            sy += p.y;
            sxx += p.x * p.x;
            syy += p.y * p.y;
            if p.norm() <= r / 2.0 {
                inside += 1;
            }
        }
        let nf = n as f64;
        for (s, ss) in [(sx, sxx), (sy, syy)] {
            let mean = s / nf;
            let sigma = (ss / nf - mean * mean).sqrt() / nf.sqrt();
            assert!(mean.abs() < 3.0 * sigma, "mean {mean} sigma {sigma}");
        }
        // pi (R/2)^2 / (3 sqrt(3) R^2 / 2)
        let expected = std::f64::consts::PI / 4.0 / (1.5 * SQRT_3);
        assert!((expected - 0.302_299_894_039_036_1).abs() < 1e-12);
        let frac = inside as f64 / nf;
        assert!(((frac - expected) / expected).abs() < 0.01, "{frac} vs {expected}");
    }
}
