use std::io::Write;

use ocif_core::hexsim::SkipReason;
use ocif_core::{
    cdma_cell_power, compare_profiles, ofdma_sinr, ofdma_sinr_approx, simulate_profile, CdmaCellConfig, CdmaUser,
    CompareOptions, DeviationReport, Error, FProfile, NetworkParams, PathLossModel, SimConfig,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::args::{CdmaArgs, CompareArgs, OcifArgs, OfdmaArgs};
use crate::error::{CliError, EXIT_INFEASIBLE, EXIT_OK};
use crate::network::{Network, NetworkSpec};
use crate::output::{emit, fmt_f64, fmt_opt, sibling, to_json_bytes, write_atomic, RunManifest};

pub const OCIF_HEADER: [&str; 3] = ["r_m", "f_finite", "f_infinite"];
pub const COMPARE_HEADER: [&str; 7] = [
    "eta",
    "r_bin_center_m",
    "f_sim_mean",
    "f_sim_std",
    "n_samples",
    "f_fluid",
    "rel_dev",
];

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.into_error()))
}

pub fn ocif(args: &OcifArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let net = NetworkSpec::from_args(&args.network, args.eta).resolve()?;
    let radii: Vec<f64> = if args.r_values.is_empty() {
        let r_max = args.r_max.unwrap_or(net.cell_radius);
        let n = args.grid as usize;
        (1..=n).map(|i| r_max * i as f64 / n as f64).collect()
    } else {
        args.r_values.clone()
    };

    let mut rows = Vec::with_capacity(radii.len());
    for r in radii {
        if r == 0.0 {
            writeln!(stderr, "warning: skipping r = 0 (f tends to 0 at the serving station)")?;
            continue;
        }
        let f_finite = net.f_finite(r)?;
        let f_infinite = net.f_infinite(r)?;
        rows.push(vec![fmt_f64(r), fmt_opt(f_finite), fmt_f64(f_infinite)]);
    }
    let bytes = csv_bytes(&OCIF_HEADER, &rows)?;

    if let Some(out) = &args.out {
        let manifest = RunManifest::new("ocif", None, ocif_parameters(args, &net));
        write_atomic(out, &bytes)?;
        write_atomic(&sibling(out, "manifest.json"), &to_json_bytes(&manifest)?)?;
    } else {
        stdout.write_all(&bytes)?;
    }
    Ok(EXIT_OK)
}

fn network_json(net: &Network) -> serde_json::Value {
    json!({
        "cell_radius_m": net.cell_radius,
        "half_distance_m": net.half_distance,
        "bs_density_per_m2": net.bs_density,
        "eta": net.pathloss.eta(),
        "k": net.pathloss.k(),
        "network_radius_m": net.params.map(|p| p.network_radius()),
    })
}

fn ocif_parameters(args: &OcifArgs, net: &Network) -> serde_json::Value {
    json!({
        "network": network_json(net),
        "grid": args.grid,
        "r_max_m": args.r_max,
        "r_values_m": args.r_values,
    })
}

/// One exponent's worth of `compare` output.
#[derive(Debug, Clone, Serialize)]
pub struct EtaComparison {
    pub eta: f64,
    pub mean_rel_dev: Option<f64>,
    pub max_rel_dev: Option<f64>,
    pub compared_bins: usize,
    pub skipped: Vec<SkippedBin>,
    pub network: NetworkParams,
    pub profile: FProfile,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkippedBin {
    pub r_bin_center_m: f64,
    pub n_samples: usize,
    pub reason: SkipReason,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareSummary {
    pub manifest: RunManifest,
    pub results: Vec<EtaComparison>,
}

/// Runs the simulation and comparison for every exponent. Returns the CSV
/// bytes and the summary.
pub fn compare_run(args: &CompareArgs) -> Result<(Vec<u8>, CompareSummary), CliError> {
    if args.eta.is_empty() {
        return Err(CliError::Usage("at least one --eta is required".into()));
    }
    let opts = CompareOptions {
        min_count: args.min_count,
        min_r: args.min_r,
    };
    let work = || -> Result<Vec<(f64, NetworkParams, FProfile, DeviationReport)>, CliError> {
        args.eta
            .iter()
            .map(|&eta| {
                let m = PathLossModel::with_eta(eta)?;
                let params = NetworkParams::for_rings(args.rings, args.cell_radius, m, 1.0)?;
                let cfg = SimConfig::new(
                    args.rings,
                    args.cell_radius,
                    m,
                    args.snapshots as usize,
                    args.bins as usize,
                    args.seed,
                );
                let profile = simulate_profile(&cfg)?;
                let report = compare_profiles(&profile, &params, &opts)?;
                Ok((eta, params, profile, report))
            })
            .collect()
    };
    let runs = match args.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {n} threads: {e}")))?
            .install(work)?,
        None => work()?,
    };

    let mut rows = Vec::new();
    let mut results = Vec::with_capacity(runs.len());
    for (eta, params, profile, report) in runs {
        for d in &report.bins {
            rows.push(vec![
                fmt_f64(eta),
                fmt_f64(d.center),
                fmt_opt(d.mean_f),
                fmt_opt(d.std_f),
                d.count.to_string(),
                fmt_opt(d.f_fluid),
                fmt_opt(d.rel_dev),
            ]);
        }
        let skipped = report
            .bins
            .iter()
            .filter_map(|d| {
                d.skipped.map(|reason| SkippedBin {
                    r_bin_center_m: d.center,
                    n_samples: d.count,
                    reason,
                })
            })
            .collect();
        results.push(EtaComparison {
            eta,
            mean_rel_dev: report.mean_rel_dev,
            max_rel_dev: report.max_rel_dev,
            compared_bins: report.compared_bins,
            skipped,
            network: params,
            profile,
        });
    }
    let csv = csv_bytes(&COMPARE_HEADER, &rows)?;
    let manifest = RunManifest::new(
        "compare",
        Some(args.seed),
        json!({
            "rings": args.rings,
            "cell_radius_m": args.cell_radius,
            "eta": args.eta,
            "snapshots": args.snapshots,
            "bins": args.bins,
            "min_count": args.min_count,
            "min_r_m": args.min_r,
            "rng": "ChaCha8, stream = snapshot index",
        }),
    );
    Ok((csv, CompareSummary { manifest, results }))
}

pub fn compare(args: &CompareArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let (csv, summary) = compare_run(args)?;
    let summary_bytes = to_json_bytes(&summary)?;
    emit(args.out.as_deref(), &csv, stdout)?;
    let summary_path = args
        .summary
        .clone()
        .or_else(|| args.out.as_ref().map(|o| sibling(o, "summary.json")));
    match summary_path {
        Some(p) => write_atomic(&p, &summary_bytes)?,
        None => stderr.write_all(&summary_bytes)?,
    }
    Ok(EXIT_OK)
}

pub const CDMA_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellFile {
    pub schema_version: u32,
    pub alpha: f64,
    pub p_cch: f64,
    #[serde(default)]
    pub network: Option<NetworkSpec>,
    pub users: Vec<UserSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UserSpec {
    pub gamma_star: f64,
    #[serde(default)]
    pub gain: Option<f64>,
    #[serde(default)]
    pub f: Option<f64>,
    #[serde(default)]
    pub r: Option<f64>,
    #[serde(default)]
    pub noise: f64,
}

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Turns a parsed config file into a cell, deriving `f` (and `gain` when
/// absent) from `r` through the configured network.
pub fn cell_from_file(file: &CellFile, gamma_in_db: bool) -> Result<CdmaCellConfig, CliError> {
    if file.schema_version != CDMA_SCHEMA_VERSION {
        return Err(CliError::Config(format!(
            "schema_version: expected {CDMA_SCHEMA_VERSION}, got {}",
            file.schema_version
        )));
    }
    if !(0.0..=1.0).contains(&file.alpha) {
        return Err(CliError::Config(format!("alpha: must be in [0, 1] (got {})", file.alpha)));
    }
    if !(file.p_cch.is_finite() && file.p_cch >= 0.0) {
        return Err(CliError::Config(format!("p_cch: must be finite and >= 0 (got {})", file.p_cch)));
    }
    let net = match &file.network {
        Some(spec) => Some(spec.resolve().map_err(|e| CliError::Config(format!("network: {e}")))?),
        None => None,
    };
    let mut users = Vec::with_capacity(file.users.len());
    for (i, u) in file.users.iter().enumerate() {
        let gamma_star = if gamma_in_db { db_to_linear(u.gamma_star) } else { u.gamma_star };
        let (f, gain) = match (u.f, u.r) {
            (Some(f), None) => (f, u.gain),
            (None, Some(r)) => {
                let net = net
                    .as_ref()
                    .ok_or_else(|| CliError::Config(format!("users[{i}].r: requires a `network` section")))?;
                let f = net.f(r)?;
                let gain = match u.gain {
                    Some(g) => g,
                    None => net.pathloss.path_gain(r)?,
                };
                (f, Some(gain))
            }
            (Some(_), Some(_)) => {
                return Err(CliError::Config(format!("users[{i}]: give only one of `f` and `r`")))
            }
            (None, None) => return Err(CliError::Config(format!("users[{i}]: one of `f` or `r` is required"))),
        };
        let gain = gain.ok_or_else(|| CliError::Config(format!("users[{i}].gain: required when `f` is given")))?;
        let user = CdmaUser::new(gamma_star, gain, f, u.noise).map_err(|e| match e {
            Error::InvalidParameter { name, reason } => CliError::Config(format!("users[{i}].{name}: {reason}")),
            other => CliError::Model(other),
        })?;
        users.push(user);
    }
    Ok(CdmaCellConfig {
        alpha: file.alpha,
        p_cch: file.p_cch,
        users,
    })
}

pub fn parse_cell_file(text: &str) -> Result<CellFile, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
}

pub fn cdma(args: &CdmaArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(&args.config)?;
    let file = parse_cell_file(&text)?;
    let cell = cell_from_file(&file, args.db)?;
    let manifest = RunManifest::new(
        "cdma",
        None,
        json!({ "config": args.config, "gamma_star_db": args.db, "cell": cell }),
    );
    let (doc, code) = match cdma_cell_power(&cell) {
        Ok(sol) => (
            json!({
                "feasible": true,
                "total_power_w": sol.total_power_pb,
                "per_user_power_w": sol.per_user_power,
                "load": sol.load,
                "manifest": manifest,
            }),
            EXIT_OK,
        ),
        Err(Error::Infeasible { load }) => (
            json!({
                "feasible": false,
                "load": load,
                "reason": "load >= 1: pole capacity exceeded",
                "manifest": manifest,
            }),
            EXIT_INFEASIBLE,
        ),
        Err(e) => return Err(e.into()),
    };
    emit(args.out.as_deref(), &to_json_bytes(&doc)?, stdout)?;
    Ok(code)
}

#[derive(Debug, Clone, Serialize)]
pub struct OfdmaResult {
    pub f: f64,
    pub noise_over_signal: f64,
    pub gamma_exact: f64,
    /// `None` when `f = 0` (the interference-limited form is singular).
    pub gamma_approx: Option<f64>,
    /// `(gamma_approx - gamma_exact) / gamma_exact`.
    pub relative_error: Option<f64>,
    pub gamma_exact_db: f64,
    pub gamma_approx_db: Option<f64>,
}

pub fn ofdma_eval(args: &OfdmaArgs) -> Result<OfdmaResult, CliError> {
    let f = match (args.f, args.r) {
        (Some(f), None) => f,
        (None, Some(r)) => {
            let eta = args.eta.ok_or_else(|| CliError::Usage("--r needs --eta".into()))?;
            NetworkSpec::from_args(&args.network, eta).resolve()?.f(r)?
        }
        _ => return Err(CliError::Usage("give exactly one of --f or --r".into())),
    };
    let gamma_exact = ofdma_sinr(f, args.noise_over_signal)?;
    let gamma_approx = match ofdma_sinr_approx(f) {
        Ok(g) => Some(g),
        Err(Error::SingularSinr) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(OfdmaResult {
        f,
        noise_over_signal: args.noise_over_signal,
        gamma_exact,
        gamma_approx,
        relative_error: gamma_approx.map(|a| (a - gamma_exact) / gamma_exact),
        gamma_exact_db: 10.0 * gamma_exact.log10(),
        gamma_approx_db: gamma_approx.map(|a| 10.0 * a.log10()),
    })
}

pub fn ofdma(args: &OfdmaArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let result = ofdma_eval(args)?;
    let manifest = RunManifest::new(
        "ofdma",
        None,
        json!({ "f": args.f, "r_m": args.r, "eta": args.eta, "noise_over_signal": args.noise_over_signal }),
    );
    let doc = json!({ "result": result, "manifest": manifest });
    emit(args.out.as_deref(), &to_json_bytes(&doc)?, stdout)?;
    Ok(EXIT_OK)
}
