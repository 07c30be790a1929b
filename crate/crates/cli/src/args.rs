use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "ocif", version, about = "Downlink other-cell interference factor: fluid model, hexagonal simulation and link budgets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the fluid interference factor f(r) on a distance grid (CSV).
    Ocif(OcifArgs),
    /// Simulate a hexagonal network and compare against the fluid model (CSV + JSON summary).
    Compare(CompareArgs),
    /// Solve CDMA downlink power control for one cell (JSON).
    Cdma(CdmaArgs),
    /// OFDMA SINR, exact and interference-limited (JSON).
    Ofdma(OfdmaArgs),
}

/// Geometry of the fluid network. Give either `--cell-radius` or
/// `--half-distance`, and one of `--network-radius`, `--rings-equivalent`
/// or `--infinite`.
#[derive(Debug, Clone, Args)]
pub struct NetworkArgs {
    /// Hexagonal cell radius R, center to vertex (m).
    #[arg(long, conflicts_with = "half_distance")]
    pub cell_radius: Option<f64>,
    /// Half the distance between neighboring stations, Rc (m).
    #[arg(long)]
    pub half_distance: Option<f64>,
    /// Station density (per m²); defaults to one station per hexagonal cell.
    #[arg(long)]
    pub bs_density: Option<f64>,
    /// Radius of the round network, Rnw (m).
    #[arg(long, conflicts_with_all = ["rings_equivalent", "infinite"])]
    pub network_radius: Option<f64>,
    /// Size the network to enclose this many hexagonal rings: Rnw = (2n + 1) Rc.
    #[arg(long, conflicts_with = "infinite")]
    pub rings_equivalent: Option<u32>,
    /// Use the unbounded-network formula.
    #[arg(long)]
    pub infinite: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OcifArgs {
    #[command(flatten)]
    pub network: NetworkArgs,
    /// Path-loss exponent (> 2).
    #[arg(long)]
    pub eta: f64,
    /// Number of grid points r_max/N, 2 r_max/N, ..., r_max.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
    pub grid: u32,
    /// Upper end of the grid (m); defaults to the cell radius.
    #[arg(long)]
    pub r_max: Option<f64>,
    /// Explicit distances (m) instead of a grid; repeatable.
    #[arg(long = "r", value_name = "METERS")]
    pub r_values: Vec<f64>,
    /// Output CSV path (stdout when absent). A manifest is written to `<out>.manifest.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Rings of cells around the center cell.
    #[arg(long, default_value_t = 15)]
    pub rings: u32,
    /// Hexagonal cell radius R (m).
    #[arg(long, default_value_t = 1000.0)]
    pub cell_radius: f64,
    /// Path-loss exponents; repeatable.
    #[arg(long, default_values_t = [2.7, 3.0, 3.5, 4.0])]
    pub eta: Vec<f64>,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub snapshots: u64,
    /// Equal-width distance bins over (0, R].
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub bins: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Bins with fewer samples are excluded from the deviation summary.
    #[arg(long, default_value_t = 10)]
    pub min_count: usize,
    /// Bins centered below this distance (m) are excluded from the summary.
    #[arg(long, default_value_t = 0.0)]
    pub min_r: f64,
    /// Worker threads (defaults to all cores); output does not depend on it.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    /// Output CSV path (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Summary JSON path; defaults to `<out>.summary.json`, or stderr without `--out`.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CdmaArgs {
    /// Cell description (JSON).
    #[arg(long)]
    pub config: PathBuf,
    /// Read `gamma_star` values in dB.
    #[arg(long)]
    pub db: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OfdmaArgs {
    /// Interference factor at the mobile.
    #[arg(long, conflicts_with = "r")]
    pub f: Option<f64>,
    /// Distance to the serving station (m); f then comes from the fluid model.
    #[arg(long, requires = "eta")]
    pub r: Option<f64>,
    /// Path-loss exponent, needed with `--r`.
    #[arg(long)]
    pub eta: Option<f64>,
    #[command(flatten)]
    pub network: NetworkArgs,
    /// Noise over useful received power, Noise / (P_bu g).
    #[arg(long, default_value_t = 0.0)]
    pub noise_over_signal: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
