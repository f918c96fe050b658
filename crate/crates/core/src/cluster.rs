//! Cluster sums at fixed configurations and Mayer coefficients.
//!
//! Two routes to the Ursell function `Σ_{g∈G_n} Π_{ij∈g} f_ij` are provided:
//! the direct connected-graph sum ([`ursell_direct`], `n <= 6`) and the
//! Penrose tree-graph form built on the Kruskal partition scheme
//! ([`penrose_tree_sum`], `n <= 8`). Their agreement is the central exactness
//! check of the crate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_capacity, Error, Result};
use crate::graphs::{self, edge_count, EdgeOrder, LabeledTree, MAX_CONNECTED_N, MAX_TREE_N};
use crate::potentials::{abs_mayer_factor, mayer_factor, PairPotential};
use crate::sum::CompensatedSum;

/// `n` points in `ℝ^d`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    dim: usize,
    coords: Vec<f64>,
}

impl Configuration {
    pub fn new(dim: usize, points: &[Vec<f64>]) -> Result<Self> {
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidInput(format!("every point needs {dim} coordinates")));
        }
        Self::from_flat(dim, points.concat())
    }

    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("dimension must be >= 1".into()));
        }
        if coords.is_empty() || !coords.len().is_multiple_of(dim) {
            return Err(Error::InvalidInput(format!(
                "{} coordinates do not form a nonempty set of {dim}-dimensional points",
                coords.len()
            )));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("coordinates must be finite".into()));
        }
        Ok(Self { dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.point(i)
            .iter()
            .zip(self.point(j))
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// `V(|x_i - x_j|)` for every pair, in lexicographic edge order.
    pub fn pair_energies(&self, p: &PairPotential) -> Vec<f64> {
        let n = self.n();
        let mut out = Vec::with_capacity(edge_count(n));
        for i in 0..n {
            for j in i + 1..n {
                out.push(p.energy(self.distance(i, j)));
            }
        }
        out
    }

    /// The edge order of the partition scheme: ascending pair energy, ties
    /// broken lexicographically.
    pub fn edge_order(&self, p: &PairPotential) -> Result<EdgeOrder> {
        EdgeOrder::from_weights(self.n(), &self.pair_energies(p))
    }
}

/// The cube `Λ = [-L/2, L/2]^d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubeBox {
    side: f64,
    dim: usize,
}

impl CubeBox {
    pub fn new(side: f64, dim: usize) -> Result<Self> {
        if !(side > 0.0 && side.is_finite()) {
            return Err(Error::Domain(format!("box side {side} must be positive")));
        }
        if dim == 0 {
            return Err(Error::Domain("dimension must be >= 1".into()));
        }
        Ok(Self { side, dim })
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `|Λ| = L^d`.
    pub fn volume(&self) -> f64 {
        self.side.powi(self.dim as i32)
    }

    /// `n` points drawn independently and uniformly in the box.
    pub fn sample<R: Rng>(&self, n: usize, rng: &mut R) -> Configuration {
        let mut coords = vec![0.0; n.max(1) * self.dim];
        self.sample_into(rng, &mut coords);
        Configuration {
            dim: self.dim,
            coords,
        }
    }

    fn sample_into<R: Rng>(&self, rng: &mut R, out: &mut [f64]) {
        let half = 0.5 * self.side;
        for x in out {
            *x = rng.random_range(-half..half);
        }
    }
}

/// `U(x_1..x_n) = Σ_{i<j} V(|x_i - x_j|)`; `+∞` on any hard-core overlap.
pub fn pair_energy_sum(p: &PairPotential, c: &Configuration) -> f64 {
    let energies = c.pair_energies(p);
    if energies.contains(&f64::INFINITY) {
        return f64::INFINITY;
    }
    energies.into_iter().collect::<CompensatedSum>().value()
}

/// `Σ_{g∈G_n} Π_{ij∈g} (exp(-βV_ij) - 1)`; equals 1 for `n = 1`.
pub fn ursell_direct(p: &PairPotential, beta: f64, c: &Configuration) -> Result<f64> {
    let n = c.n();
    check_capacity("direct Ursell sum", n, MAX_CONNECTED_N)?;
    let f: Vec<f64> = c
        .pair_energies(p)
        .into_iter()
        .map(|v| mayer_factor(beta, v))
        .collect();
    ursell_from_factors(n, &f)
}

fn ursell_from_factors(n: usize, f: &[f64]) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    for g in graphs::connected_graphs(n)? {
        acc.add(g.edge_indices().map(|k| f[k]).product());
    }
    Ok(acc.value())
}

/// Right side of the Penrose tree-graph identity,
/// `Σ_τ exp(-β Σ_{M(τ)∖τ} V) Π_{ij∈τ} (exp(-βV_ij) - 1)`, with `M` the
/// Kruskal partition scheme of the configuration's energy order.
pub fn penrose_tree_sum(p: &PairPotential, beta: f64, c: &Configuration) -> Result<f64> {
    check_capacity("Penrose tree sum", c.n(), MAX_TREE_N)?;
    let ord = c.edge_order(p)?;
    penrose_tree_sum_with_order(p, beta, c, &ord)
}

/// [`penrose_tree_sum`] with the scheme built from an arbitrary total order.
///
/// Any total order yields a partition scheme, so the identity holds for
/// every `ord`, compatible with the energies or not.
pub fn penrose_tree_sum_with_order(
    p: &PairPotential,
    beta: f64,
    c: &Configuration,
    ord: &EdgeOrder,
) -> Result<f64> {
    let n = c.n();
    check_capacity("Penrose tree sum", n, MAX_TREE_N)?;
    let v = c.pair_energies(p);
    let f: Vec<f64> = v.iter().map(|&e| mayer_factor(beta, e)).collect();
    let mut acc = CompensatedSum::new();
    for tau in graphs::trees(n)? {
        let m = graphs::scheme_map(tau, ord);
        let extra = m.bits() & !tau.graph().bits();
        let Some(extra_energy) = finite_sum(&v, extra) else {
            // a hard-core edge outside τ kills the term
            continue;
        };
        let tree_product: f64 = tau.graph().edge_indices().map(|k| f[k]).product();
        acc.add((-beta * extra_energy).exp() * tree_product);
    }
    Ok(acc.value())
}

/// `Σ_{k∈mask} v[k]`, or `None` if any term is `+∞`.
fn finite_sum(v: &[f64], mask: u32) -> Option<f64> {
    let mut s = 0.0;
    let mut bits = mask;
    while bits != 0 {
        let k = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if v[k] == f64::INFINITY {
            return None;
        }
        s += v[k];
    }
    Some(s)
}

/// Mask of the tree edges with `V >= 0`.
fn nonnegative_tree_edges(tau: &LabeledTree, v: &[f64]) -> u32 {
    tau.graph()
        .edge_indices()
        .filter(|&k| v[k] >= 0.0)
        .fold(0, |m, k| m | 1 << k)
}

/// `Σ_{ij ∈ M(τ)∖E_τ^+} V_ij + B̄(n-1)`, where `E_τ^+` are the tree edges with
/// `V >= 0`. Nonnegative whenever `B̄` bounds the Basuev constant.
///
/// `ord` must be the energy order of `c` for the inequality to apply.
pub fn lemma2_gap(
    p: &PairPotential,
    c: &Configuration,
    tau: &LabeledTree,
    ord: &EdgeOrder,
) -> Result<f64> {
    let bbar = p.require_bbar()?.value;
    let n = c.n();
    if tau.n() != n || ord.n() != n {
        return Err(Error::InvalidInput(format!(
            "tree on {} vertices, order on K_{}, configuration of {n} points",
            tau.n(),
            ord.n()
        )));
    }
    let v = c.pair_energies(p);
    let m = graphs::scheme_map(tau, ord);
    let mask = m.bits() & !nonnegative_tree_edges(tau, &v);
    Ok(match finite_sum(&v, mask) {
        Some(s) => s + bbar * (n as f64 - 1.0),
        None => f64::INFINITY,
    })
}

/// Smallest [`lemma2_gap`] over all trees on `[n]`, with the configuration's
/// own energy order.
pub fn lemma2_min_gap(p: &PairPotential, c: &Configuration) -> Result<f64> {
    let ord = c.edge_order(p)?;
    let mut worst = f64::INFINITY;
    for tau in graphs::trees(c.n())? {
        worst = worst.min(lemma2_gap(p, c, tau, &ord)?);
    }
    Ok(worst)
}

/// `Σ_τ exp(-β Σ_{M(τ)∖E_τ^+} V) Π_{ij∈τ} (1 - exp(-β|V_ij|))`, an upper bound
/// on `|ursell_direct|`.
pub fn penrose_abs_bound(p: &PairPotential, beta: f64, c: &Configuration) -> Result<f64> {
    let n = c.n();
    check_capacity("Penrose bound", n, MAX_TREE_N)?;
    let v = c.pair_energies(p);
    let ord = EdgeOrder::from_weights(n, &v)?;
    let mut acc = CompensatedSum::new();
    for tau in graphs::trees(n)? {
        let m = graphs::scheme_map(tau, &ord);
        let mask = m.bits() & !nonnegative_tree_edges(tau, &v);
        let Some(s) = finite_sum(&v, mask) else {
            continue;
        };
        let prod: f64 = tau
            .graph()
            .edge_indices()
            .map(|k| abs_mayer_factor(beta, v[k]))
            .product();
        acc.add((-beta * s).exp() * prod);
    }
    Ok(acc.value())
}

/// `exp(βB̄(n-1)) Σ_τ Π_{ij∈τ} (1 - exp(-β|V_ij|))`, the configuration-level
/// bound behind the Basuev-constant coefficient estimate.
pub fn tree_graph_bound(p: &PairPotential, beta: f64, c: &Configuration) -> Result<f64> {
    let bbar = p.require_bbar()?.value;
    let n = c.n();
    check_capacity("tree-graph bound", n, MAX_TREE_N)?;
    let a: Vec<f64> = c
        .pair_energies(p)
        .into_iter()
        .map(|v| abs_mayer_factor(beta, v))
        .collect();
    let sum: CompensatedSum = graphs::trees(n)?
        .iter()
        .map(|tau| tau.graph().edge_indices().map(|k| a[k]).product::<f64>())
        .collect();
    Ok((beta * bbar * (n as f64 - 1.0)).exp() * sum.value())
}

/// Monte Carlo estimate of `C_n(β, Λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MayerEstimate {
    pub n: usize,
    pub beta: f64,
    pub box_side: f64,
    pub dim: usize,
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
}

/// Samples per independently seeded block. Fixed so the result does not
/// depend on how blocks are spread over threads.
pub const MC_BLOCK: u64 = 4096;

/// Plain Monte Carlo for
/// `C_n(β,Λ) = (1/n!)(1/|Λ|) ∫_Λ…∫_Λ Σ_{g∈G_n} Π f`.
///
/// All `n` points are drawn uniformly in `Λ`; the sample mean of
/// [`ursell_direct`] is scaled by `|Λ|^{n-1}/n!`. Samples are split into
/// blocks of [`MC_BLOCK`], block `b` drawing from ChaCha8 stream `b` of
/// `seed`; blocks run on the current rayon pool and are merged in order, so
/// the estimate is bit-identical for any thread count.
pub fn mayer_coefficient_mc(
    p: &PairPotential,
    beta: f64,
    n: usize,
    region: &CubeBox,
    samples: u64,
    seed: u64,
) -> Result<MayerEstimate> {
    check_capacity("Monte Carlo Mayer coefficient", n, MAX_CONNECTED_N)?;
    if n < 2 {
        return Err(Error::Domain(format!("Monte Carlo needs n >= 2, got {n}")));
    }
    if samples < 2 {
        return Err(Error::Domain(format!("need at least 2 samples, got {samples}")));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!("beta = {beta} must be positive")));
    }
    let dim = region.dim();
    let graph_list = graphs::connected_graphs(n)?;
    let blocks = samples.div_ceil(MC_BLOCK);

    let stats: Vec<RunningStats> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let count = MC_BLOCK.min(samples - b * MC_BLOCK);
            let mut coords = vec![0.0; n * dim];
            let mut f = vec![0.0; edge_count(n)];
            let mut stats = RunningStats::default();
            for _ in 0..count {
                region.sample_into(&mut rng, &mut coords);
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        let r = coords[i * dim..(i + 1) * dim]
                            .iter()
                            .zip(&coords[j * dim..(j + 1) * dim])
                            .map(|(a, b)| (a - b) * (a - b))
                            .sum::<f64>()
                            .sqrt();
                        f[k] = mayer_factor(beta, p.energy(r));
                        k += 1;
                    }
                }
                let mut acc = CompensatedSum::new();
                for g in graph_list {
                    acc.add(g.edge_indices().map(|k| f[k]).product());
                }
                stats.push(acc.value());
            }
            stats
        })
        .collect();

    let total = stats
        .into_iter()
        .fold(RunningStats::default(), |a, b| a.merge(&b));
    let scale = region.volume().powi(n as i32 - 1) / factorial(n);
    Ok(MayerEstimate {
        n,
        beta,
        box_side: region.side(),
        dim,
        estimate: total.mean * scale,
        std_error: (total.variance() / total.count as f64).sqrt() * scale,
        samples: total.count,
    })
}

/// Welford accumulator with Chan's pairwise merge.
#[derive(Debug, Clone, Copy, Default)]
struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(&self, other: &Self) -> Self {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let (na, nb) = (self.count as f64, other.count as f64);
        Self {
            count,
            mean: self.mean + delta * nb / count as f64,
            m2: self.m2 + other.m2 + delta * delta * na * nb / count as f64,
        }
    }

    fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `ln n!`.
pub(crate) fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

fn check_bound_args(n: usize, beta: f64, constant: f64, integral: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    for (name, x) in [("beta", beta), ("stability constant", constant), ("integral", integral)] {
        if !(x >= 0.0) {
            return Err(Error::Domain(format!("{name} = {x} must be >= 0")));
        }
    }
    Ok(())
}

/// `exp(exponent) · n^{n-2}/n! · base^{n-1}`, evaluated in the log domain.
fn tree_count_bound(n: usize, exponent: f64, base: f64) -> f64 {
    if n == 1 {
        return 1.0;
    }
    let nf = n as f64;
    let ln = exponent + (nf - 2.0) * nf.ln() - ln_factorial(n) + (nf - 1.0) * base.ln();
    ln.exp()
}

/// Penrose-Ruelle: `|C_n| <= exp(2βB(n-2)) n^{n-2}/n! C(β)^{n-1}`.
pub fn bound_penrose_ruelle(n: usize, beta: f64, b: f64, c_of_beta: f64) -> Result<f64> {
    check_bound_args(n, beta, b, c_of_beta)?;
    Ok(tree_count_bound(n, 2.0 * beta * b * (n as f64 - 2.0), c_of_beta))
}

/// `|C_n| <= exp(βBn) n^{n-2}/n! C̃(β)^{n-1}`.
pub fn bound_py(n: usize, beta: f64, b: f64, ctilde: f64) -> Result<f64> {
    check_bound_args(n, beta, b, ctilde)?;
    Ok(tree_count_bound(n, beta * b * n as f64, ctilde))
}

/// `|C_n| <= exp(βB̄(n-1)) n^{n-2}/n! C̃(β)^{n-1}`.
pub fn bound_py_basuev(n: usize, beta: f64, bbar: f64, ctilde: f64) -> Result<f64> {
    check_bound_args(n, beta, bbar, ctilde)?;
    Ok(tree_count_bound(n, beta * bbar * (n as f64 - 1.0), ctilde))
}
