//! Finite-`n` stability constants.
//!
//! `B_n = sup(-U/n)` and `B̄_n = sup(-U/(n-1))` over `n`-point configurations,
//! estimated by multi-start Nelder-Mead. Every number returned here is a
//! lower bound on the true supremum: a local optimizer can only undershoot.
//! The constants that feed the radius formulas come from the potential
//! catalog, never from this module.

use std::cell::Cell;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::Serialize;

use crate::cluster::{pair_energy_sum, Configuration};
use crate::error::{Error, Result};
use crate::potentials::PairPotential;
use crate::sum::CompensatedSum;

/// Best configuration found for one `n`, with both normalizations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityEstimate {
    pub n: usize,
    pub dim: usize,
    /// `-U_min / n`
    pub b_n: f64,
    /// `-U_min / (n - 1)`
    pub bbar_n: f64,
    /// `U` of the best configuration.
    pub energy: f64,
    /// Lowest energy among the seeded witnesses before any optimization.
    pub witness_energy: f64,
    pub best: Vec<Vec<f64>>,
    /// Seeded witnesses plus random starts.
    pub starts: usize,
    /// Energy evaluations summed over all starts.
    pub iterations: usize,
    pub seed: u64,
}

impl StabilityEstimate {
    pub fn best_configuration(&self) -> Configuration {
        Configuration::new(self.dim, &self.best).expect("stored configuration is valid")
    }
}

/// `U` at flat coordinates; `+∞` as soon as a hard core is hit.
fn energy_flat(p: &PairPotential, dim: usize, x: &[f64]) -> f64 {
    let n = x.len() / dim;
    let mut sum = CompensatedSum::new();
    for i in 0..n {
        for j in i + 1..n {
            let r = x[i * dim..(i + 1) * dim]
                .iter()
                .zip(&x[j * dim..(j + 1) * dim])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let v = p.energy(r);
            if v == f64::INFINITY {
                return f64::INFINITY;
            }
            sum.add(v);
        }
    }
    sum.value()
}

struct Minimum {
    x: Vec<f64>,
    value: f64,
    evaluations: usize,
}

/// Nelder-Mead with the standard coefficients. Points where `f` is `+∞` are
/// never accepted, so hard cores act as rejected moves. Restarts around the
/// incumbent until a restart stops improving it.
fn nelder_mead<F: Fn(&[f64]) -> f64>(f: F, x0: Vec<f64>, step: f64, max_evals: usize) -> Minimum {
    let dim = x0.len();
    let mut best = Minimum {
        value: f(&x0),
        x: x0,
        evaluations: 1,
    };
    let mut step = step;
    for _ in 0..4 {
        let before = best.value;
        let budget = max_evals.saturating_sub(best.evaluations);
        if budget <= dim + 1 {
            break;
        }
        let run = nelder_mead_once(&f, &best.x, best.value, step, budget);
        best.evaluations += run.evaluations;
        if run.value < best.value {
            best.x = run.x;
            best.value = run.value;
        }
        if !(best.value < before - 1e-13 * (1.0 + before.abs())) {
            break;
        }
        step *= 0.25;
    }
    best
}

fn nelder_mead_once<F: Fn(&[f64]) -> f64>(
    f: &F,
    x0: &[f64],
    f0: f64,
    step: f64,
    max_evals: usize,
) -> Minimum {
    let dim = x0.len();
    let evals = Cell::new(0usize);
    let eval = |x: &[f64]| {
        evals.set(evals.get() + 1);
        f(x)
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), f0));
    for k in 0..dim {
        let mut x = x0.to_vec();
        x[k] += step;
        let mut v = eval(&x);
        if v == f64::INFINITY {
            x[k] = x0[k] - step;
            v = eval(&x);
        }
        simplex.push((x, v));
    }

    let centroid = |simplex: &[(Vec<f64>, f64)]| {
        let mut c = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (ck, xk) in c.iter_mut().zip(x) {
                *ck += xk;
            }
        }
        c.iter_mut().for_each(|ck| *ck /= dim as f64);
        c
    };
    let along = |c: &[f64], w: &[f64], t: f64| -> Vec<f64> {
        c.iter().zip(w).map(|(ci, wi)| ci + t * (wi - ci)).collect()
    };

    while evals.get() < max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (lo, hi) = (simplex[0].1, simplex[dim].1);
        let spread = simplex
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if hi.is_finite() && hi - lo <= 1e-15 * (1.0 + lo.abs()) && spread <= 1e-11 {
            break;
        }
        let c = centroid(&simplex);
        let worst = simplex[dim].0.clone();
        let reflected = along(&c, &worst, -1.0);
        let fr = eval(&reflected);
        if fr < simplex[0].1 {
            let expanded = along(&c, &worst, -2.0);
            let fe = eval(&expanded);
            simplex[dim] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[dim - 1].1 {
            simplex[dim] = (reflected, fr);
        } else {
            let (point, fc) = if fr < simplex[dim].1 {
                let p = along(&c, &worst, -0.5);
                let v = eval(&p);
                (p, v)
            } else {
                let p = along(&c, &worst, 0.5);
                let v = eval(&p);
                (p, v)
            };
            if fc < fr.min(simplex[dim].1) {
                simplex[dim] = (point, fc);
            } else {
                let anchor = simplex[0].0.clone();
                for vertex in simplex.iter_mut().skip(1) {
                    let x = along(&anchor, &vertex.0, 0.5);
                    let v = eval(&x);
                    *vertex = (x, v);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    Minimum {
        x,
        value,
        evaluations: evals.get(),
    }
}

/// Regular simplex of `d + 1` points in `ℝ^d` with all edges equal to `side`.
///
/// Vertex `k` is the centroid of vertices `0..k` lifted along axis `k - 1`.
pub fn simplex_configuration(d: usize, side: f64) -> Result<Configuration> {
    if d == 0 || !(side > 0.0 && side.is_finite()) {
        return Err(Error::Domain(format!("need d >= 1 and side > 0, got d = {d}, side = {side}")));
    }
    let mut points: Vec<Vec<f64>> = vec![vec![0.0; d]];
    for k in 1..=d {
        let mut c = vec![0.0; d];
        for p in &points {
            for (ci, pi) in c.iter_mut().zip(p) {
                *ci += pi / k as f64;
            }
        }
        // circumradius of a regular simplex on k vertices
        let radius_sq = side * side * (k as f64 - 1.0) / (2.0 * k as f64);
        c[k - 1] = (side * side - radius_sq).sqrt();
        points.push(c);
    }
    Configuration::new(d, &points)
}

/// Finite patch of the close-packed lattice with nearest-neighbour distance 1:
/// the integer chain (`d = 1`), the triangular lattice (`d = 2`) or the
/// face-centred cubic lattice (`d = 3`).
///
/// Sites lie within `shells` lattice steps of the origin in each lattice
/// coordinate. They are sorted by distance from the origin, so the origin
/// comes first and every prefix is a compact cluster.
pub fn close_packed_patch(d: usize, shells: usize) -> Result<Configuration> {
    if shells == 0 {
        return Err(Error::Domain("need at least one shell".into()));
    }
    let s = shells as i64;
    let mut points: Vec<Vec<f64>> = match d {
        1 => (-s..=s).map(|i| vec![i as f64]).collect(),
        2 => {
            let h = 3f64.sqrt() / 2.0;
            let mut pts = Vec::new();
            for a in -s..=s {
                for b in -s..=s {
                    // hexagonal distance from the origin
                    if (a.abs() + b.abs() + (a + b).abs()) / 2 <= s {
                        pts.push(vec![a as f64 + 0.5 * b as f64, h * b as f64]);
                    }
                }
            }
            pts
        }
        3 => {
            let scale = std::f64::consts::FRAC_1_SQRT_2;
            let mut pts = Vec::new();
            for a in -s..=s {
                for b in -s..=s {
                    for c in -s..=s {
                        if (a + b + c) % 2 == 0 {
                            pts.push(vec![a as f64 * scale, b as f64 * scale, c as f64 * scale]);
                        }
                    }
                }
            }
            pts
        }
        _ => {
            return Err(Error::Domain(format!(
                "close-packed patches exist for d = 1, 2, 3; got d = {d}"
            )))
        }
    };
    let norm = |p: &Vec<f64>| p.iter().map(|x| x * x).sum::<f64>();
    points.sort_by(|p, q| {
        norm(p)
            .total_cmp(&norm(q))
            .then_with(|| p.iter().zip(q).map(|(a, b)| a.total_cmp(b)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal))
    });
    Configuration::new(d, &points)
}

const UNIT_TOL: f64 = 1e-9;

/// Number of pairs at distance 1 (to within `1e-9`).
pub fn unit_distance_pairs(c: &Configuration) -> usize {
    let n = c.n();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| (c.distance(i, j) - 1.0).abs() < UNIT_TOL)
        .count()
}

/// Number of points at distance 1 from point `i`.
pub fn coordination_number(c: &Configuration, i: usize) -> usize {
    (0..c.n())
        .filter(|&j| j != i && (c.distance(i, j) - 1.0).abs() < UNIT_TOL)
        .count()
}

/// Seeded starting points: simplex, lattice patch and a dispersed chain.
fn witnesses(p: &PairPotential, n: usize, d: usize) -> Vec<Vec<f64>> {
    let scale = p.length_scale();
    let scaled = |c: Configuration, take: usize| -> Vec<f64> {
        c.coords()[..take * d].iter().map(|x| x * scale).collect()
    };
    let mut out = Vec::new();
    if n <= d + 1 {
        if let Ok(s) = simplex_configuration(d, 1.0) {
            out.push(scaled(s, n));
        }
    }
    if d <= 3 {
        let mut shells = 1;
        while let Ok(patch) = close_packed_patch(d, shells) {
            if patch.n() >= n {
                out.push(scaled(patch, n));
                break;
            }
            shells += 1;
        }
    }
    // far enough apart that U is negligible or exactly zero
    let spacing = 1e3 * scale.max(p.support_radius().unwrap_or(0.0));
    let mut dispersed = vec![0.0; n * d];
    for i in 0..n {
        dispersed[i * d] = spacing * i as f64;
    }
    out.push(dispersed);
    out
}

/// Random start `k`: alternately uniform in a cube sized for `n` particles
/// of diameter `scale` and a Gaussian jitter of the lattice witness.
fn random_start(p: &PairPotential, n: usize, d: usize, seed: u64, k: u64, lattice: Option<&[f64]>) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    let scale = p.length_scale();
    let core = p.hard_core_radius();
    if let (Some(base), true) = (lattice, k % 2 == 1) {
        let jitter = Normal::new(0.0, 0.1 * scale).expect("positive width");
        return base.iter().map(|x| x + jitter.sample(&mut rng)).collect();
    }
    let side = scale * (2.0 * n as f64).powf(1.0 / d as f64);
    let mut x: Vec<f64> = Vec::with_capacity(n * d);
    for i in 0..n {
        let mut candidate = vec![0.0; d];
        for _ in 0..1000 {
            candidate.iter_mut().for_each(|c| *c = side * (rng.random::<f64>() - 0.5));
            let clear = (0..i).all(|j| {
                let r2: f64 = x[j * d..(j + 1) * d]
                    .iter()
                    .zip(&candidate)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                r2.sqrt() > core
            });
            if clear {
                break;
            }
        }
        x.extend_from_slice(&candidate);
    }
    x
}

/// Energy-evaluation budget per start.
fn eval_budget(n: usize, d: usize) -> usize {
    4000 * n * d
}

/// Multi-start estimate of `B_n` and `B̄_n` in dimension `d`.
///
/// Runs Nelder-Mead from every seeded witness and from `starts` random
/// configurations, in parallel on the current rayon pool. Start `k` draws
/// from stream `k` of a ChaCha8 generator seeded with `seed`, and the
/// reduction keeps the lowest energy with ties going to the lower index, so
/// the result does not depend on the number of threads.
pub fn estimate_bn(p: &PairPotential, n: usize, d: usize, starts: usize, seed: u64) -> Result<StabilityEstimate> {
    if n < 2 {
        return Err(Error::Domain(format!("B_n needs n >= 2, got {n}")));
    }
    if d == 0 {
        return Err(Error::Domain("dimension must be >= 1".into()));
    }
    let seeded = witnesses(p, n, d);
    let witness_energy = seeded
        .iter()
        .map(|x| energy_flat(p, d, x))
        .fold(f64::INFINITY, f64::min);
    let lattice = if d <= 3 { seeded.get(seeded.len().saturating_sub(2)).cloned() } else { None };
    let mut initial = seeded;
    initial.extend((0..starts as u64).map(|k| random_start(p, n, d, seed, k, lattice.as_deref())));

    let step = 0.1 * p.length_scale();
    let budget = eval_budget(n, d);
    let runs: Vec<Minimum> = initial
        .into_par_iter()
        .map(|x0| nelder_mead(|x| energy_flat(p, d, x), x0, step, budget))
        .collect();
    let iterations = runs.iter().map(|m| m.evaluations).sum();
    let total = runs.len();
    let best = runs
        .into_iter()
        .reduce(|a, b| if b.value < a.value { b } else { a })
        .expect("at least the dispersed witness is present");

    let config = Configuration::from_flat(d, best.x)?;
    let energy = pair_energy_sum(p, &config);
    // + 0.0 turns -0.0 into 0.0
    let b_n = -energy / n as f64 + 0.0;
    let bbar_n = -energy / (n - 1) as f64 + 0.0;
    Ok(StabilityEstimate {
        n,
        dim: d,
        b_n,
        bbar_n,
        energy,
        witness_energy,
        best: config.points().map(<[f64]>::to_vec).collect(),
        starts: total,
        iterations,
        seed,
    })
}

/// `B̄ ≤ factor · B`, evaluated on whatever constants are at hand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapCheck {
    pub factor: f64,
    pub bbar: f64,
    pub cap: f64,
    pub passed: bool,
}

impl CapCheck {
    fn new(bbar: f64, b: f64, factor: f64, tol: f64) -> Self {
        let cap = factor * b;
        Self {
            factor,
            bbar,
            cap,
            passed: bbar <= cap * (1.0 + tol) + tol,
        }
    }
}

/// Outcome of [`check_stability_inequalities`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub potential: String,
    pub n: usize,
    pub dim: usize,
    pub samples: usize,
    #[serde(rename = "B_known")]
    pub b_known: Option<f64>,
    #[serde(rename = "Bbar_known")]
    pub bbar_known: Option<f64>,
    /// Smallest `U + nB` over the random configurations.
    pub min_margin_b: Option<f64>,
    /// Smallest `U + (n-1)B̄` over the random configurations.
    pub min_margin_bbar: Option<f64>,
    pub violations_b: usize,
    pub violations_bbar: usize,
    /// The optimizer found `B_n > B` or `B̄_n > B̄`: either the catalog
    /// constants are wrong or they are contradicted.
    pub estimate_exceeds_known: bool,
    /// `B̄_n ≤ ((d+1)/d) B` for the estimate.
    pub estimate_general_cap: Option<CapCheck>,
    /// `B̄ ≤ ((d+1)/d) B` for the catalog constants.
    pub general_cap: Option<CapCheck>,
    /// The sharper cap for potentials negative beyond their minimum:
    /// 3/2, 7/6 and `(2d(d-1)+1)/(2d(d-1))` for `d = 1, 2, >= 3`.
    pub piecewise_cap: Option<CapCheck>,
    /// Whether the potential is negative beyond its minimum, which is the
    /// hypothesis of the piecewise cap.
    pub piecewise_applicable: bool,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.violations_b == 0
            && self.violations_bbar == 0
            && !self.estimate_exceeds_known
            && self.estimate_general_cap.is_none_or(|c| c.passed)
            && self.general_cap.is_none_or(|c| c.passed)
            && (!self.piecewise_applicable || self.piecewise_cap.is_none_or(|c| c.passed))
    }
}

/// The sharper `B̄/B` factor for potentials negative beyond their minimum.
pub fn piecewise_cap_factor(d: usize) -> f64 {
    match d {
        1 => 1.5,
        2 => 7.0 / 6.0,
        _ => {
            let m = 2.0 * d as f64 * (d as f64 - 1.0);
            (m + 1.0) / m
        }
    }
}

const CHECK_TOL: f64 = 1e-9;

/// Test the stability inequalities `U ≥ -nB` and `U ≥ -(n-1)B̄` on `samples`
/// random `n`-point configurations, and the `B̄/B` caps on the catalog
/// constants and on the estimate.
pub fn check_stability_inequalities(
    est: &StabilityEstimate,
    p: &PairPotential,
    samples: usize,
    seed: u64,
) -> StabilityReport {
    let (n, d) = (est.n, est.dim);
    let b = p.known_b();
    let bbar = p.known_bbar().map(|c| c.value);
    let scale = p.length_scale();
    let side = scale * (n as f64).powf(1.0 / d as f64);

    let mut min_margin_b: Option<f64> = None;
    let mut min_margin_bbar: Option<f64> = None;
    let (mut violations_b, mut violations_bbar) = (0, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0.0; n * d];
    for _ in 0..samples {
        x.iter_mut().for_each(|c| *c = side * (rng.random::<f64>() - 0.5));
        let u = energy_flat(p, d, &x);
        if let Some(b) = b {
            let margin = u + n as f64 * b;
            min_margin_b = Some(min_margin_b.map_or(margin, |m| m.min(margin)));
            violations_b += usize::from(margin < -CHECK_TOL);
        }
        if let Some(bbar) = bbar {
            let margin = u + (n - 1) as f64 * bbar;
            min_margin_bbar = Some(min_margin_bbar.map_or(margin, |m| m.min(margin)));
            violations_bbar += usize::from(margin < -CHECK_TOL);
        }
    }

    let general = (d as f64 + 1.0) / d as f64;
    let estimate_exceeds_known = b.is_some_and(|b| est.b_n > b * (1.0 + CHECK_TOL) + CHECK_TOL)
        || bbar.is_some_and(|bb| est.bbar_n > bb * (1.0 + CHECK_TOL) + CHECK_TOL);
    StabilityReport {
        potential: p.name().to_string(),
        n,
        dim: d,
        samples,
        b_known: b,
        bbar_known: bbar,
        min_margin_b,
        min_margin_bbar,
        violations_b,
        violations_bbar,
        estimate_exceeds_known,
        estimate_general_cap: b.map(|b| CapCheck::new(est.bbar_n, b, general, CHECK_TOL)),
        general_cap: b.zip(bbar).map(|(b, bb)| CapCheck::new(bb, b, general, CHECK_TOL)),
        piecewise_cap: b
            .zip(bbar)
            .map(|(b, bb)| CapCheck::new(bb, b, piecewise_cap_factor(d), CHECK_TOL)),
        piecewise_applicable: p.negative_beyond_minimum(),
    }
}
