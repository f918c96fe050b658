//! The five subcommands. Each returns the rendered report and a status;
//! nothing is written until the whole report exists.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use virial_core::analysis::{extended, INV_E};
use virial_core::cluster::{lemma2_min_gap, penrose_tree_sum_with_order};
use virial_core::graphs::{self, random_tied_weights, verify_partition, MAX_CONNECTED_N, MAX_TREE_N};
use virial_core::stability::{check_stability_inequalities, estimate_bn, StabilityReport};
use virial_core::{
    bound_penrose_ruelle, bound_py, bound_py_basuev, build_radii_report, g_function,
    integral_c, integral_ctilde, mayer_coefficient_mc, penrose_tree_sum, tree_function_w,
    ursell_direct, CubeBox, EdgeOrder, MayerEstimate, PairPotential,
    StabilityEstimate,
};

use crate::config::{Format, RunConfig};
use crate::output::{render_json, Cell, Table};
use crate::{CliError, Command, Status};

/// Relative tolerance of the identity checks.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Slack allowed below zero in the stability-gap check.
pub const GAP_TOL: f64 = 1e-9;
/// Bound violations are flagged beyond this many standard errors.
pub const MC_SIGMAS: f64 = 3.0;

pub fn execute(command: Command, cfg: &RunConfig) -> Result<(String, Status), CliError> {
    match command {
        Command::Radii => radii(cfg),
        Command::Verify => verify(cfg),
        Command::Mayer => mayer(cfg),
        Command::Stability => stability(cfg),
        Command::Gfun => gfun(cfg),
    }
}

fn core<T>(r: virial_core::Result<T>) -> Result<T, CliError> {
    r.map_err(CliError::from_core)
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stream id of trial `trial` of check `check` at size `n`.
fn stream_id(check: u64, n: usize, trial: usize) -> u64 {
    (check << 48) | ((n as u64) << 32) | trial as u64
}

// ---------------------------------------------------------------- radii

pub fn radii(cfg: &RunConfig) -> Result<(String, Status), CliError> {
    let betas = cfg.betas.clone().unwrap_or_else(|| vec![1.0]);
    let p = &cfg.potential;
    let reports: Vec<_> = core(
        betas
            .par_iter()
            .map(|&b| build_radii_report(p, b))
            .collect::<virial_core::Result<_>>(),
    )?;
    let text = match cfg.format.unwrap_or(Format::Csv) {
        Format::Json => render_json(&reports)?,
        Format::Csv => {
            let mut t = Table::new(&[
                "potential",
                "beta",
                "B",
                "Bbar",
                "bbar_upper_bound",
                "C",
                "C_error",
                "Ctilde",
                "Ctilde_error",
                "g_one",
                "g_lp",
                "radius_mayer",
                "radius_lp",
                "radius_virial",
                "ratio",
            ]);
            for r in &reports {
                t.push(vec![
                    r.potential.clone().into(),
                    r.beta.into(),
                    r.b.into(),
                    r.bbar.into(),
                    r.bbar_upper_bound.into(),
                    r.c.value.into(),
                    r.c.error.into(),
                    r.ctilde.value.into(),
                    r.ctilde.error.into(),
                    r.g_one.into(),
                    r.g_lp.into(),
                    r.radius_mayer.into(),
                    r.radius_lp.into(),
                    r.radius_virial.into(),
                    r.ratio.into(),
                ]);
            }
            t.render()
        }
    };
    Ok((text, Status::Ok))
}

// ---------------------------------------------------------------- verify

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionRow {
    pub n: usize,
    /// Random tie-heavy edge orders checked.
    pub orders: usize,
    pub connected: u64,
    pub trees: u64,
    /// `Σ_τ |[τ, M(τ)]|` for the last order checked.
    pub interval_total: Option<u64>,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PenroseRow {
    pub n: usize,
    /// `direct`: connected-graph sum against the tree sum. `orders`: tree
    /// sums under the energy order and the lexicographic order, used where
    /// the graph sum is out of reach.
    pub method: &'static str,
    pub trials: usize,
    pub worst_relative_deviation: f64,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapRow {
    pub n: usize,
    pub trials: usize,
    #[serde(serialize_with = "extended")]
    pub min_gap: f64,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub potential: String,
    pub beta: f64,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub partition: Vec<PartitionRow>,
    pub penrose: Vec<PenroseRow>,
    pub stability_gap: Vec<GapRow>,
    /// Checks skipped because `n` exceeds their cap.
    pub capacity: Vec<String>,
    /// Checks skipped for other reasons.
    pub skipped: Vec<String>,
    pub counterexamples: usize,
}

impl VerifyReport {
    pub fn status(&self) -> Status {
        if self.counterexamples > 0 {
            Status::Counterexample
        } else if !self.capacity.is_empty() {
            Status::Capacity
        } else {
            Status::Ok
        }
    }
}

/// Random configurations dense enough that most pairs interact.
fn trial_box(p: &PairPotential, n: usize) -> CubeBox {
    let d = p.dimension();
    let side = 1.5 * p.length_scale() * (n as f64).powf(1.0 / d as f64);
    CubeBox::new(side, d).expect("positive side")
}

fn relative_deviation(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn partition_row(n: usize, trials: usize, seed: u64) -> Result<PartitionRow, CliError> {
    let results: Vec<_> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng_for(seed, stream_id(1, n, t));
            let weights = random_tied_weights(n, 4, &mut rng);
            let ord = EdgeOrder::from_weights(n, &weights)?;
            verify_partition(n, &ord)
        })
        .collect::<virial_core::Result<_>>()
        .map_err(CliError::from_core)?;
    let failures: Vec<_> = results.iter().filter_map(|r| r.failure.as_ref()).collect();
    Ok(PartitionRow {
        n,
        orders: trials,
        connected: core(graphs::connected_graphs(n))?.len() as u64,
        trees: core(graphs::trees(n))?.len() as u64,
        interval_total: results.last().map(|r| r.interval_total),
        failures: failures.len(),
        first_failure: failures.first().map(|f| f.to_string()),
    })
}

fn penrose_row(p: &PairPotential, beta: f64, n: usize, trials: usize, seed: u64) -> Result<PenroseRow, CliError> {
    let direct = n <= MAX_CONNECTED_N;
    let region = trial_box(p, n);
    let deviations: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let c = region.sample(n, &mut rng_for(seed, stream_id(2, n, t)));
            let tree = penrose_tree_sum(p, beta, &c)?;
            let other = if direct {
                ursell_direct(p, beta, &c)?
            } else {
                penrose_tree_sum_with_order(p, beta, &c, &EdgeOrder::lexicographic(n))?
            };
            Ok(relative_deviation(tree, other))
        })
        .collect::<virial_core::Result<_>>()
        .map_err(CliError::from_core)?;
    Ok(PenroseRow {
        n,
        method: if direct { "direct" } else { "orders" },
        trials,
        worst_relative_deviation: deviations.iter().copied().fold(0.0, f64::max),
        failures: deviations.iter().filter(|&&d| !(d <= IDENTITY_TOL)).count(),
    })
}

fn gap_row(p: &PairPotential, n: usize, trials: usize, seed: u64) -> Result<GapRow, CliError> {
    let region = trial_box(p, n);
    let gaps: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let c = region.sample(n, &mut rng_for(seed, stream_id(3, n, t)));
            lemma2_min_gap(p, &c)
        })
        .collect::<virial_core::Result<_>>()
        .map_err(CliError::from_core)?;
    Ok(GapRow {
        n,
        trials,
        min_gap: gaps.iter().copied().fold(f64::INFINITY, f64::min),
        violations: gaps.iter().filter(|&&g| g < -GAP_TOL).count(),
    })
}

pub fn verify_report(cfg: &RunConfig) -> Result<VerifyReport, CliError> {
    let p = &cfg.potential;
    let n_max = cfg.ns.as_ref().and_then(|v| v.iter().copied().max()).unwrap_or(5);
    let trials = cfg.trials.unwrap_or(100);
    let beta = cfg.betas.as_ref().map_or(1.0, |b| b[0]);
    let mut report = VerifyReport {
        potential: p.name().to_string(),
        beta,
        n_max,
        trials,
        seed: cfg.seed,
        partition: Vec::new(),
        penrose: Vec::new(),
        stability_gap: Vec::new(),
        capacity: Vec::new(),
        skipped: Vec::new(),
        counterexamples: 0,
    };
    for n in 2..=n_max.min(MAX_CONNECTED_N) {
        report.partition.push(partition_row(n, trials, cfg.seed)?);
    }
    for n in 2..=n_max.min(MAX_TREE_N) {
        report.penrose.push(penrose_row(p, beta, n, trials, cfg.seed)?);
    }
    if p.known_bbar().is_some() {
        for n in 2..=n_max.min(MAX_TREE_N) {
            report.stability_gap.push(gap_row(p, n, trials, cfg.seed)?);
        }
    } else {
        report
            .skipped
            .push("stability-gap checks need the Basuev constant Bbar".to_string());
    }
    if n_max > MAX_CONNECTED_N {
        report.capacity.push(format!(
            "partition scheme and direct cluster sums support n <= {MAX_CONNECTED_N}; \
             skipped n = {}..={n_max}, tree-level checks still run",
            MAX_CONNECTED_N + 1
        ));
    }
    if n_max > MAX_TREE_N {
        report.capacity.push(format!(
            "tree-level checks support n <= {MAX_TREE_N}; skipped n = {}..={n_max}",
            MAX_TREE_N + 1
        ));
    }
    report.counterexamples = report.partition.iter().map(|r| r.failures).sum::<usize>()
        + report.penrose.iter().map(|r| r.failures).sum::<usize>()
        + report.stability_gap.iter().map(|r| r.violations).sum::<usize>();
    Ok(report)
}

pub fn verify(cfg: &RunConfig) -> Result<(String, Status), CliError> {
    let report = verify_report(cfg)?;
    let text = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => render_json(&report)?,
        Format::Csv => {
            let mut t = Table::new(&["check", "n", "trials", "worst", "failures", "detail"]);
            for r in &report.partition {
                t.push(vec![
                    "partition".into(),
                    r.n.into(),
                    r.orders.into(),
                    r.interval_total.into(),
                    r.failures.into(),
                    r.first_failure.clone().into(),
                ]);
            }
            for r in &report.penrose {
                t.push(vec![
                    "penrose".into(),
                    r.n.into(),
                    r.trials.into(),
                    r.worst_relative_deviation.into(),
                    r.failures.into(),
                    r.method.into(),
                ]);
            }
            for r in &report.stability_gap {
                t.push(vec![
                    "stability_gap".into(),
                    r.n.into(),
                    r.trials.into(),
                    r.min_gap.into(),
                    r.violations.into(),
                    Cell::Empty,
                ]);
            }
            for msg in report.capacity.iter().chain(&report.skipped) {
                t.push(vec![
                    "diagnostic".into(),
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Empty,
                    msg.clone().into(),
                ]);
            }
            t.render()
        }
    };
    Ok((text, report.status()))
}

// ---------------------------------------------------------------- mayer

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MayerRow {
    pub potential: String,
    #[serde(flatten)]
    pub estimate: MayerEstimate,
    pub seed: u64,
    /// Missing when the potential has no stability constant.
    pub bound_py: Option<f64>,
    pub bound_penrose_ruelle: Option<f64>,
    pub bound_py_basuev: Option<f64>,
    /// `|estimate| - 3σ` exceeds one of the bounds.
    pub violation: bool,
}

pub fn mayer_rows(cfg: &RunConfig) -> Result<Vec<MayerRow>, CliError> {
    let p = &cfg.potential;
    let betas = cfg.betas.clone().unwrap_or_else(|| vec![1.0]);
    let ns = cfg.ns.clone().unwrap_or_else(|| vec![2]);
    let side = cfg.box_side.unwrap_or(10.0 * p.length_scale());
    let samples = cfg.samples.unwrap_or(100_000);
    let region = core(CubeBox::new(side, p.dimension()))?;
    let mut rows = Vec::new();
    for &beta in &betas {
        let bounds_input = match (p.known_b(), p.known_bbar()) {
            (Some(b), Some(bbar)) => Some((
                b,
                bbar.value,
                core(integral_c(p, beta))?.value,
                core(integral_ctilde(p, beta))?.value,
            )),
            _ => None,
        };
        for &n in &ns {
            let estimate = core(mayer_coefficient_mc(p, beta, n, &region, samples, cfg.seed))?;
            let (py, pr, basuev) = match bounds_input {
                Some((b, bbar, c, ct)) => (
                    Some(core(bound_py(n, beta, b, ct))?),
                    Some(core(bound_penrose_ruelle(n, beta, b, c))?),
                    Some(core(bound_py_basuev(n, beta, bbar, ct))?),
                ),
                None => (None, None, None),
            };
            let low = estimate.estimate.abs() - MC_SIGMAS * estimate.std_error;
            let violation = [py, pr, basuev].into_iter().flatten().any(|bound| low > bound);
            rows.push(MayerRow {
                potential: p.name().to_string(),
                estimate,
                seed: cfg.seed,
                bound_py: py,
                bound_penrose_ruelle: pr,
                bound_py_basuev: basuev,
                violation,
            });
        }
    }
    Ok(rows)
}

pub fn mayer(cfg: &RunConfig) -> Result<(String, Status), CliError> {
    let rows = mayer_rows(cfg)?;
    let status = if rows.iter().any(|r| r.violation) {
        Status::Counterexample
    } else {
        Status::Ok
    };
    let text = match cfg.format.unwrap_or(Format::Csv) {
        Format::Json => render_json(&rows)?,
        Format::Csv => {
            let mut t = Table::new(&[
                "potential",
                "n",
                "beta",
                "box_side",
                "dim",
                "samples",
                "seed",
                "estimate",
                "std_error",
                "bound_py",
                "bound_penrose_ruelle",
                "bound_py_basuev",
                "violation",
            ]);
            for r in &rows {
                let e = &r.estimate;
                t.push(vec![
                    r.potential.clone().into(),
                    e.n.into(),
                    e.beta.into(),
                    e.box_side.into(),
                    e.dim.into(),
                    e.samples.into(),
                    r.seed.into(),
                    e.estimate.into(),
                    e.std_error.into(),
                    r.bound_py.into(),
                    r.bound_penrose_ruelle.into(),
                    r.bound_py_basuev.into(),
                    r.violation.into(),
                ]);
            }
            t.render()
        }
    };
    Ok((text, status))
}

// ---------------------------------------------------------------- stability

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityRow {
    pub estimate: StabilityEstimate,
    pub checks: StabilityReport,
}

pub fn stability_rows(cfg: &RunConfig) -> Result<Vec<StabilityRow>, CliError> {
    let p = &cfg.potential;
    let ns = cfg.ns.clone().unwrap_or_else(|| vec![2, 3, 4]);
    let d = cfg.dim.unwrap_or(p.dimension());
    let starts = cfg.starts.unwrap_or(16);
    let samples = cfg.samples.unwrap_or(10_000) as usize;
    ns.iter()
        .map(|&n| {
            let estimate = core(estimate_bn(p, n, d, starts, cfg.seed))?;
            let checks = check_stability_inequalities(&estimate, p, samples, cfg.seed);
            Ok(StabilityRow { estimate, checks })
        })
        .collect()
}

pub fn stability(cfg: &RunConfig) -> Result<(String, Status), CliError> {
    let rows = stability_rows(cfg)?;
    let status = if rows.iter().all(|r| r.checks.passed()) {
        Status::Ok
    } else {
        Status::Counterexample
    };
    let text = match cfg.format.unwrap_or(Format::Csv) {
        Format::Json => render_json(&rows)?,
        Format::Csv => {
            let mut t = Table::new(&[
                "potential",
                "n",
                "dim",
                "B_n",
                "Bbar_n",
                "energy",
                "witness_energy",
                "starts",
                "iterations",
                "seed",
                "B_known",
                "Bbar_known",
                "violations_B",
                "violations_Bbar",
                "general_cap_passed",
                "piecewise_cap_passed",
                "piecewise_applicable",
                "passed",
            ]);
            for r in &rows {
                let (e, c) = (&r.estimate, &r.checks);
                t.push(vec![
                    c.potential.clone().into(),
                    e.n.into(),
                    e.dim.into(),
                    e.b_n.into(),
                    e.bbar_n.into(),
                    e.energy.into(),
                    e.witness_energy.into(),
                    e.starts.into(),
                    e.iterations.into(),
                    e.seed.into(),
                    c.b_known.into(),
                    c.bbar_known.into(),
                    c.violations_b.into(),
                    c.violations_bbar.into(),
                    c.general_cap.map(|g| g.passed).into(),
                    c.piecewise_cap.map(|g| g.passed).into(),
                    c.piecewise_applicable.into(),
                    c.passed().into(),
                ]);
            }
            t.render()
        }
    };
    Ok((text, status))
}

// ---------------------------------------------------------------- gfun

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPoint {
    pub function: &'static str,
    pub argument: f64,
    pub value: f64,
}

/// `g` on a log grid over `[1e-4, 1e8]` and `w` on a uniform grid over
/// `[0, 1/e]`, `points` values each.
pub fn gfun_table(points: usize) -> Result<Vec<GridPoint>, CliError> {
    if points < 2 {
        return Err(CliError::validation("gfun needs at least 2 grid points"));
    }
    let t = |k: usize| k as f64 / (points - 1) as f64;
    let mut rows = Vec::with_capacity(2 * points);
    for k in 0..points {
        let u = 10f64.powf(-4.0 + 12.0 * t(k));
        rows.push(GridPoint {
            function: "g",
            argument: u,
            value: core(g_function(u))?,
        });
    }
    for k in 0..points {
        let x = if k + 1 == points { INV_E } else { INV_E * t(k) };
        rows.push(GridPoint {
            function: "w",
            argument: x,
            value: core(tree_function_w(x))?,
        });
    }
    Ok(rows)
}

pub fn gfun(cfg: &RunConfig) -> Result<(String, Status), CliError> {
    let points = cfg.ns.as_ref().map_or(41, |v| v[0]);
    let rows = gfun_table(points)?;
    let text = match cfg.format.unwrap_or(Format::Csv) {
        Format::Json => render_json(&rows)?,
        Format::Csv => {
            let mut t = Table::new(&["function", "argument", "value"]);
            for r in &rows {
                t.push(vec![r.function.into(), r.argument.into(), r.value.into()]);
            }
            t.render()
        }
    };
    Ok((text, Status::Ok))
}
