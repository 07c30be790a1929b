//! Monte Carlo interference factor on the discrete hexagonal network.
//!
//! Each snapshot draws one mobile uniformly in the center cell and computes
//! the ratio of the power received from every other station to the power
//! received from its serving station. Snapshots are binned by distance to
//! the center station.
//!
//! Snapshot `i` draws from ChaCha8 stream `i` of the configured seed, so
//! the profile does not depend on how snapshots are scheduled over threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fluid::{ocif_finite, NetworkParams};
use crate::geometry::{nearest_station, HexLayout, Point2D};
use crate::pathloss::PathLossModel;

/// Default number of distance bins over `(0, R]`.
pub const DEFAULT_BINS: usize = 20;
/// Default minimum bin population for comparison.
pub const DEFAULT_MIN_COUNT: usize = 10;

/// Other-cell interference factor at `p`: `sum_{j != b} d_j^-eta / d_b^-eta`
/// with `b` the nearest station. Transmit powers and `K` cancel.
pub fn empirical_f(p: &Point2D, layout: &HexLayout, pathloss: &PathLossModel) -> Result<f64> {
    interference_ratio(p, layout.bs_positions(), pathloss)
}

/// [`empirical_f`] over an arbitrary station set.
pub fn interference_ratio(p: &Point2D, positions: &[Point2D], pathloss: &PathLossModel) -> Result<f64> {
    if positions.is_empty() {
        return Err(Error::invalid("positions", "no base stations"));
    }
    let b = nearest_station(p, positions);
    let d_b_sq = p.distance_sq(&positions[b]);
    if d_b_sq == 0.0 {
        return Err(Error::CoincidentWithBs { index: b });
    }
    let half_eta = 0.5 * pathloss.eta();
    let mut sum = 0.0;
    for (j, bs) in positions.iter().enumerate() {
        if j != b {
            sum += (d_b_sq / p.distance_sq(bs)).powf(half_eta);
        }
    }
    Ok(sum)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub rings: u32,
    pub cell_radius: f64,
    pub pathloss: PathLossModel,
    pub snapshots: usize,
    pub bins: usize,
    /// Upper edge of the binned range, at most `cell_radius`.
    pub r_max: f64,
    pub seed: u64,
}

impl SimConfig {
    /// Bins cover the whole cell, `r_max = cell_radius`.
    pub fn new(
        rings: u32,
        cell_radius: f64,
        pathloss: PathLossModel,
        snapshots: usize,
        bins: usize,
        seed: u64,
    ) -> Self {
        Self {
            rings,
            cell_radius,
            pathloss,
            snapshots,
            bins,
            r_max: cell_radius,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cell_radius.is_finite() && self.cell_radius > 0.0) {
            return Err(Error::invalid("cell_radius", format!("must be finite and > 0 (got {})", self.cell_radius)));
        }
        if self.snapshots == 0 {
            return Err(Error::invalid("snapshots", "must be >= 1"));
        }
        if self.bins == 0 {
            return Err(Error::invalid("bins", "must be >= 1"));
        }
        if !(self.r_max > 0.0 && self.r_max <= self.cell_radius) {
            return Err(Error::invalid(
                "r_max",
                format!("must satisfy 0 < r_max <= cell_radius = {} (got {})", self.cell_radius, self.r_max),
            ));
        }
        Ok(())
    }

    pub fn bin_width(&self) -> f64 {
        self.r_max / self.bins as f64
    }
}

/// Statistics of one distance bin `(lo, hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinStats {
    pub r_lo: f64,
    pub r_hi: f64,
    pub center: f64,
    pub count: usize,
    /// `None` when the bin received no sample.
    pub mean_f: Option<f64>,
    /// Sample standard deviation; zero for a single sample.
    pub std_f: Option<f64>,
}

impl BinStats {
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FProfile {
    pub config: SimConfig,
    pub bins: Vec<BinStats>,
    /// Samples farther than `r_max` from the center station.
    pub out_of_range: usize,
}

impl FProfile {
    pub fn total_count(&self) -> usize {
        self.bins.iter().map(|b| b.count).sum::<usize>() + self.out_of_range
    }
}

/// Bin index for a distance in `(0, r_max]`; `None` beyond `r_max`.
fn bin_index(r: f64, width: f64, bins: usize) -> Option<usize> {
    if r > width * bins as f64 {
        return None;
    }
    let k = (r / width).ceil() as usize;
    Some(k.saturating_sub(1).min(bins - 1))
}

/// One snapshot: a mobile drawn from stream `index`, with its distance to
/// the center station and its interference factor.
fn snapshot(layout: &HexLayout, pathloss: &PathLossModel, seed: u64, index: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    loop {
        let p = layout.sample_center_cell(&mut rng);
        match empirical_f(&p, layout, pathloss) {
            Ok(f) => return (p.norm(), f),
            Err(_) => continue,
        }
    }
}

/// Runs `cfg.snapshots` snapshots and bins them by distance. Uses the
/// ambient rayon pool; the result is identical for any pool size.
pub fn simulate_profile(cfg: &SimConfig) -> Result<FProfile> {
    cfg.validate()?;
    let layout = HexLayout::new(cfg.rings, cfg.cell_radius)?;
    let samples: Vec<(f64, f64)> = (0..cfg.snapshots as u64)
        .into_par_iter()
        .map(|i| snapshot(&layout, &cfg.pathloss, cfg.seed, i))
        .collect();

    let width = cfg.bin_width();
    let mut per_bin: Vec<Vec<f64>> = vec![Vec::new(); cfg.bins];
    let mut out_of_range = 0;
    for &(r, f) in &samples {
        match bin_index(r, width, cfg.bins) {
            Some(k) => per_bin[k].push(f),
            None => out_of_range += 1,
        }
    }

    let bins = per_bin
        .iter()
        .enumerate()
        .map(|(k, values)| {
            let r_lo = k as f64 * width;
            let r_hi = if k + 1 == cfg.bins { cfg.r_max } else { (k + 1) as f64 * width };
            let (mean_f, std_f) = mean_std(values);
            BinStats {
                r_lo,
                r_hi,
                center: 0.5 * (r_lo + r_hi),
                count: values.len(),
                mean_f,
                std_f,
            }
        })
        .collect();

    Ok(FProfile {
        config: cfg.clone(),
        bins,
        out_of_range,
    })
}

fn mean_std(values: &[f64]) -> (Option<f64>, Option<f64>) {
    let n = values.len();
    if n == 0 {
        return (None, None);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (Some(mean), Some(0.0));
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (Some(mean), Some((ss / (n - 1) as f64).sqrt()))
}

/// Why a bin did not enter the deviation statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    Empty,
    TooFewSamples,
    BelowMinRadius,
    OutsideFluidDomain,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinDeviation {
    pub center: f64,
    pub count: usize,
    pub mean_f: Option<f64>,
    pub std_f: Option<f64>,
    /// Fluid prediction at the bin center, when defined.
    pub f_fluid: Option<f64>,
    pub rel_dev: Option<f64>,
    pub skipped: Option<SkipReason>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationReport {
    pub bins: Vec<BinDeviation>,
    /// `None` when no bin qualified.
    pub mean_rel_dev: Option<f64>,
    pub max_rel_dev: Option<f64>,
    pub compared_bins: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompareOptions {
    pub min_count: usize,
    /// Bins whose center is below this radius are skipped.
    pub min_r: f64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            min_count: DEFAULT_MIN_COUNT,
            min_r: 0.0,
        }
    }
}

/// Relative deviation `|mean_f - f_fluid| / f_fluid` per qualifying bin,
/// with `f_fluid = ocif_finite(bin center)`.
pub fn compare_profiles(sim: &FProfile, params: &NetworkParams, opts: &CompareOptions) -> Result<DeviationReport> {
    if sim.bins.is_empty() {
        return Err(Error::invalid("sim", "profile has no bins"));
    }
    let mut bins = Vec::with_capacity(sim.bins.len());
    let mut devs = Vec::new();
    for b in &sim.bins {
        let f_fluid = ocif_finite(b.center, params).ok();
        let skipped = if b.is_empty() {
            Some(SkipReason::Empty)
        } else if f_fluid.is_none() {
            Some(SkipReason::OutsideFluidDomain)
        } else if b.count < opts.min_count {
            Some(SkipReason::TooFewSamples)
        } else if b.center < opts.min_r {
            Some(SkipReason::BelowMinRadius)
        } else {
            None
        };
        let rel_dev = match (b.mean_f, f_fluid) {
            (Some(m), Some(f)) => Some((m - f).abs() / f),
            _ => None,
        };
        if skipped.is_none() {
            devs.push(rel_dev.expect("qualifying bin has both values"));
        }
        bins.push(BinDeviation {
            center: b.center,
            count: b.count,
            mean_f: b.mean_f,
            std_f: b.std_f,
            f_fluid,
            rel_dev,
            skipped,
        });
    }
    let (mean_rel_dev, max_rel_dev) = if devs.is_empty() {
        (None, None)
    } else {
        (
            Some(devs.iter().sum::<f64>() / devs.len() as f64),
            Some(devs.iter().cloned().fold(0.0, f64::max)),
        )
    };
    Ok(DeviationReport {
        bins,
        mean_rel_dev,
        max_rel_dev,
        compared_bins: devs.len(),
    })
}
