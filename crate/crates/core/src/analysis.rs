//! Scalar numerics behind the convergence radii.
//!
//! - `C(β) = ∫ |1 - exp(-βV)|` and `C̃(β) = ∫ (1 - exp(-β|V|))` by radial
//!   quadrature;
//! - the Lebowitz-Penrose function
//!   `g(u) = max_{0<w<ln(1+u)} [(1+u)e^{-w} - 1] w / u`;
//! - the tree function, the inverse of `w ↦ w e^{-w}` on `[0, 1]`, and its
//!   power series `Σ n^{n-1}/n! x^n`;
//! - the density lower bound `(w/K)(2e^{-w} - 1)` with `K = C̃ e^{βB̄}`;
//! - the Mayer radius, the Lebowitz-Penrose virial radius and the
//!   Basuev-constant virial radius `g(1)/(C̃ e^{βB̄})`.

use std::f64::consts::LN_2;

use serde::{Serialize, Serializer};

use crate::cluster::ln_factorial;
use crate::error::{Error, Result};
use crate::potentials::{abs_mayer_factor, PairPotential};
use crate::quadrature::{radial_integral, RadialProblem};
use crate::sum::CompensatedSum;

/// `1/e`.
pub const INV_E: f64 = 0.36787944117144233;

const QUAD_REL_TOL: f64 = 1e-13;
const TAIL_FRACTION: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegralKind {
    /// `∫ |1 - exp(-βV)|`
    C,
    /// `∫ (1 - exp(-β|V|))`
    CTilde,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// Estimated absolute error, tail included.
    pub error: f64,
    pub beta: f64,
    pub kind: IntegralKind,
}

impl QuadratureResult {
    pub fn relative_error(&self) -> f64 {
        if self.value == 0.0 {
            self.error
        } else {
            self.error / self.value
        }
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("beta = {beta} must be positive and finite")))
    }
}

fn radial(p: &PairPotential, beta: f64, kind: IntegralKind) -> Result<QuadratureResult> {
    check_beta(beta)?;
    let breakpoints = p.breakpoints();
    let problem = RadialProblem {
        dim: p.dimension(),
        core: p.hard_core_radius(),
        breakpoints: &breakpoints,
        support: p.support_radius(),
        rel_tol: QUAD_REL_TOL,
        tail_fraction: TAIL_FRACTION,
    };
    let result = match kind {
        IntegralKind::C => radial_integral(
            |r| {
                let v = p.energy(r);
                if v == f64::INFINITY {
                    1.0
                } else {
                    (-beta * v).exp_m1().abs()
                }
            },
            &problem,
        )?,
        IntegralKind::CTilde => radial_integral(|r| abs_mayer_factor(beta, p.energy(r)), &problem)?,
    };
    Ok(QuadratureResult {
        value: result.value,
        error: result.error,
        beta,
        kind,
    })
}

/// `C(β) = ∫_{ℝ^d} |1 - exp(-βV(|x|))| dx`.
pub fn integral_c(p: &PairPotential, beta: f64) -> Result<QuadratureResult> {
    radial(p, beta, IntegralKind::C)
}

/// `C̃(β) = ∫_{ℝ^d} (1 - exp(-β|V(|x|)|)) dx`.
pub fn integral_ctilde(p: &PairPotential, beta: f64) -> Result<QuadratureResult> {
    radial(p, beta, IntegralKind::CTilde)
}

/// `g(u) = max_{0<w<ln(1+u)} [(1+u)e^{-w} - 1] w / u`.
///
/// The maximiser solves `(1+u) e^{-w} (1 - w) = 1`, which has exactly one
/// root in `(0, min(1, ln(1+u)))`; it is found by bisection. `u = +∞` gives
/// the limit `1/e`.
pub fn g_function(u: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::Domain(format!("g(u) needs u > 0, got {u}")));
    }
    let inv_u = 1.0 / u;
    // h(w) and the stationarity residual, both scaled by u for large u
    let objective = |w: f64| {
        if u <= 1.0 {
            ((1.0 + u) * (-w).exp() - 1.0) * w * inv_u
        } else {
            ((1.0 + inv_u) * (-w).exp() - inv_u) * w
        }
    };
    let residual = |w: f64| {
        if u <= 1.0 {
            (1.0 + u) * (-w).exp() * (1.0 - w) - 1.0
        } else {
            (1.0 + inv_u) * (-w).exp() * (1.0 - w) - inv_u
        }
    };
    let upper = u.ln_1p().min(1.0);
    let w = match bisect(residual, 0.0, upper, 1e-15) {
        Some(w) => w,
        None => golden_section_max(objective, 0.0, upper, 1e-12),
    };
    Ok(objective(w))
}

/// Root of a function that is positive at `lo` and negative at `hi`.
fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    if !(f(lo) > 0.0 && f(hi) < 0.0) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    while b - a > tol {
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - ratio * (b - a);
        d = a + ratio * (b - a);
    }
    0.5 * (a + b)
}

/// The `w ∈ [0, 1]` with `w e^{-w} = x`, for `x ∈ [0, 1/e]`.
pub fn tree_function_w(x: f64) -> Result<f64> {
    if !(0.0..=INV_E).contains(&x) {
        return Err(Error::Domain(format!("tree function needs 0 <= x <= 1/e, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == INV_E {
        return Ok(1.0);
    }
    // w e^{-w} is increasing on [0, 1]
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mid * (-mid).exp() < x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `Σ_{n=1}^{N} n^{n-1}/n! x^n`, terms evaluated in the log domain.
pub fn euler_series_partial(x: f64, terms: usize) -> Result<f64> {
    if !(0.0..INV_E).contains(&x) {
        return Err(Error::Domain(format!("Euler series needs 0 <= x < 1/e, got {x}")));
    }
    if terms == 0 {
        return Err(Error::Domain("need at least one term".into()));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let ln_x = x.ln();
    let sum: CompensatedSum = (1..=terms)
        .map(|n| {
            let nf = n as f64;
            ((nf - 1.0) * nf.ln() - ln_factorial(n) + nf * ln_x).exp()
        })
        .collect();
    Ok(sum.value())
}

/// `K = C̃ e^{βB̄}`, the activity scale of the Basuev-constant bound.
fn activity_scale(beta: f64, bbar: f64, ctilde: f64) -> Result<f64> {
    if !(beta >= 0.0 && bbar >= 0.0 && ctilde >= 0.0) {
        return Err(Error::Domain(format!(
            "beta = {beta}, Bbar = {bbar}, Ctilde = {ctilde} must all be >= 0"
        )));
    }
    Ok(ctilde * (beta * bbar).exp())
}

fn check_activity(lambda_abs: f64, k: f64) -> Result<()> {
    if !(lambda_abs >= 0.0) || k * lambda_abs >= INV_E {
        return Err(Error::Domain(format!(
            "|lambda| = {lambda_abs} must lie in [0, 1/(e K)) with K = {k}"
        )));
    }
    Ok(())
}

/// `(w/K)(2e^{-w} - 1)` where `w e^{-w} = K|λ|` and `K = C̃ e^{βB̄}`: a lower
/// bound on `|ρ(β, λ)|` for `|λ| < 1/(eK)`.
pub fn density_lower_bound(lambda_abs: f64, beta: f64, bbar: f64, ctilde: f64) -> Result<f64> {
    let k = activity_scale(beta, bbar, ctilde)?;
    check_activity(lambda_abs, k)?;
    if k == 0.0 {
        return Ok(lambda_abs);
    }
    let w = tree_function_w(k * lambda_abs)?;
    Ok(density_bound_at(w, k))
}

/// The same bound before resumming the tree series:
/// `2|λ| - (1/K) Σ_{n=1}^{N} n^{n-1}/n! (K|λ|)^n`.
pub fn density_lower_bound_series(
    lambda_abs: f64,
    beta: f64,
    bbar: f64,
    ctilde: f64,
    terms: usize,
) -> Result<f64> {
    let k = activity_scale(beta, bbar, ctilde)?;
    check_activity(lambda_abs, k)?;
    if k == 0.0 {
        return Ok(lambda_abs);
    }
    Ok(2.0 * lambda_abs - euler_series_partial(k * lambda_abs, terms)? / k)
}

/// `(w/K)(2e^{-w} - 1)` as a function of `w`.
pub fn density_bound_at(w: f64, k: f64) -> f64 {
    w / k * (2.0 * (-w).exp() - 1.0)
}

fn check_radius_args(beta: f64, constant: f64, integral: f64) -> Result<()> {
    if !(beta >= 0.0 && constant >= 0.0 && integral >= 0.0) {
        return Err(Error::Domain(format!(
            "beta = {beta}, constant = {constant}, integral = {integral} must all be >= 0"
        )));
    }
    Ok(())
}

/// Mayer-series radius `1/(e^{βB+1} C̃)`; `+∞` when `C̃ = 0`.
pub fn radius_mayer(beta: f64, b: f64, ctilde: f64) -> Result<f64> {
    check_radius_args(beta, b, ctilde)?;
    Ok(1.0 / ((beta * b + 1.0).exp() * ctilde))
}

/// Lebowitz-Penrose virial radius `g(e^{2βB})/(e^{2βB} C)`; `+∞` when `C = 0`.
pub fn radius_lp(beta: f64, b: f64, c: f64) -> Result<f64> {
    check_radius_args(beta, b, c)?;
    let exponent = 2.0 * beta * b;
    let g = g_function(exponent.exp())?;
    Ok(g * (-exponent).exp() / c)
}

/// Basuev-constant virial radius `g(1)/(C̃ e^{βB̄})`; `+∞` when `C̃ = 0`.
pub fn radius_virial_new(beta: f64, bbar: f64, ctilde: f64) -> Result<f64> {
    check_radius_args(beta, bbar, ctilde)?;
    Ok(g_function(1.0)? / (ctilde * (beta * bbar).exp()))
}

/// Every scalar of the radius comparison at one `β`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiiReport {
    pub potential: String,
    pub beta: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "Bbar")]
    pub bbar: f64,
    /// `B̄` is only known as an upper bound; the virial radius and the ratio
    /// are then conservative.
    pub bbar_upper_bound: bool,
    #[serde(rename = "C")]
    pub c: QuadratureResult,
    #[serde(rename = "Ctilde")]
    pub ctilde: QuadratureResult,
    pub g_one: f64,
    /// `g(e^{2βB})`
    pub g_lp: f64,
    #[serde(serialize_with = "extended")]
    pub radius_mayer: f64,
    #[serde(serialize_with = "extended")]
    pub radius_lp: f64,
    #[serde(serialize_with = "extended")]
    pub radius_virial: f64,
    /// `radius_virial / radius_lp`
    #[serde(serialize_with = "extended")]
    pub ratio: f64,
}

impl RadiiReport {
    /// `ratio` recomputed from its factors,
    /// `(g(1)/g(e^{2βB})) (C/C̃) e^{β(2B - B̄)}`.
    pub fn ratio_from_factors(&self) -> f64 {
        self.g_one / self.g_lp * (self.c.value / self.ctilde.value)
            * (self.beta * (2.0 * self.b - self.bbar)).exp()
    }
}

/// Writes `+∞` as `"inf"` and NaN as `null`; JSON has no literal for either.
pub fn extended<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_nan() {
        s.serialize_none()
    } else if x.is_infinite() {
        s.serialize_str(if *x > 0.0 { "inf" } else { "-inf" })
    } else {
        s.serialize_f64(*x)
    }
}

/// Quadratures, radii and their ratio for `p` at `β`.
///
/// Needs the potential's `B` and `B̄`. With only an upper bound on `B̄` the
/// virial radius is still a valid lower bound, since it decreases in `B̄`.
pub fn build_radii_report(p: &PairPotential, beta: f64) -> Result<RadiiReport> {
    let b = p.require_b()?;
    let bbar = p.require_bbar()?;
    let c = integral_c(p, beta)?;
    let ctilde = integral_ctilde(p, beta)?;
    let radius_lp = radius_lp(beta, b, c.value)?;
    let radius_virial = radius_virial_new(beta, bbar.value, ctilde.value)?;
    Ok(RadiiReport {
        potential: p.name().to_string(),
        beta,
        b,
        bbar: bbar.value,
        bbar_upper_bound: bbar.upper_bound,
        c,
        ctilde,
        g_one: g_function(1.0)?,
        g_lp: g_function((2.0 * beta * b).exp())?,
        radius_mayer: radius_mayer(beta, b, ctilde.value)?,
        radius_lp,
        radius_virial,
        ratio: radius_virial / radius_lp,
    })
}

/// `max_{w∈(0, ln 2)} w(2e^{-w} - 1)`, located on the stationarity condition
/// `2e^{-w}(1 - w) = 1`. Equal to `g(1)`.
pub fn density_curve_max() -> f64 {
    let w = bisect(|w| 2.0 * (-w).exp() * (1.0 - w) - 1.0, 0.0, LN_2, 1e-15)
        .expect("bracket (0, ln 2) is valid");
    w * (2.0 * (-w).exp() - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{E, PI};

    /// Dense grid maximum of `[(1+u)e^{-w} - 1] w / u`, refined once around
    /// the best grid point.
    fn g_by_grid(u: f64) -> f64 {
        let hi = u.ln_1p();
        let h = |w: f64| ((1.0 + u) * (-w).exp() - 1.0) * w / u;
        let steps = 200_000;
        let (mut best_w, mut best) = (0.0, f64::NEG_INFINITY);
        for k in 1..steps {
            let w = hi * k as f64 / steps as f64;
            if h(w) > best {
                best = h(w);
                best_w = w;
            }
        }
        let step = hi / steps as f64;
        for k in 0..=2000 {
            let w = best_w - step + 2.0 * step * k as f64 / 2000.0;
            if w > 0.0 && w < hi {
                best = best.max(h(w));
            }
        }
        best
    }

    #[test]
    fn inv_e_constant() {
        assert_eq!(INV_E, (-1.0f64).exp());
    }

    #[test]
    fn g_reference_values() {
        assert!((g_function(1.0).unwrap() - 0.14477).abs() < 1e-5);
        assert!((g_function(1e8).unwrap() - INV_E).abs() < 1e-3);
        assert_eq!(g_function(f64::INFINITY).unwrap(), INV_E);
        let small = g_function(0.01).unwrap();
        assert!((small - 0.0025).abs() < 0.05 * 0.0025, "{small}");
    }

    #[test]
    fn g_matches_grid_oracle() {
        for u in [0.01, 0.3, 1.0, 2.5, 10.0, 1e3, 1e6] {
            let g = g_function(u).unwrap();
            let oracle = g_by_grid(u);
            assert!(g >= oracle - 1e-13, "u = {u}: {g} < {oracle}");
            assert_relative_eq!(g, oracle, max_relative = 1e-10);
        }
    }

    #[test]
    fn g_domain() {
        assert!(g_function(0.0).is_err());
        assert!(g_function(-1.0).is_err());
        assert!(g_function(f64::NAN).is_err());
    }

    #[test]
    fn g_is_nondecreasing_and_bounded() {
        let mut prev = 0.0;
        for k in 0..=8 {
            let g = g_function(10f64.powi(k)).unwrap();
            assert!(g > 0.0 && g < INV_E);
            assert!(g >= prev);
            prev = g;
        }
    }

    #[test]
    fn g_one_is_density_curve_max() {
        assert_relative_eq!(g_function(1.0).unwrap(), density_curve_max(), max_relative = 1e-12);
    }

    #[test]
    fn tree_function_values() {
        assert_eq!(tree_function_w(0.0).unwrap(), 0.0);
        assert_eq!(tree_function_w(INV_E).unwrap(), 1.0);
        let w = tree_function_w(0.2).unwrap();
        assert!((w - 0.2592).abs() < 1e-4);
        assert!((w * (-w).exp() - 0.2).abs() < 1e-15);
        assert!(tree_function_w(0.4).is_err());
        assert!(tree_function_w(-0.01).is_err());
    }

    #[test]
    fn tree_function_inverts_w_exp() {
        for k in 0..=99 {
            let w = k as f64 / 100.0;
            let back = tree_function_w(w * (-w).exp()).unwrap();
            assert!((back - w).abs() < 1e-12, "w = {w}: {back}");
        }
        assert_eq!(tree_function_w(1.0 * (-1.0f64).exp()).unwrap(), 1.0);
    }

    #[test]
    fn euler_series() {
        assert_eq!(euler_series_partial(0.0, 10).unwrap(), 0.0);
        assert_eq!(euler_series_partial(0.25, 1).unwrap(), 0.25);
        let partial = euler_series_partial(0.3, 100).unwrap();
        assert!((partial - tree_function_w(0.3).unwrap()).abs() < 1e-8);
        // no overflow past n = 170
        assert!(euler_series_partial(0.36, 400).unwrap().is_finite());
        assert!(euler_series_partial(INV_E, 10).is_err());
        assert!(euler_series_partial(0.1, 0).is_err());
    }

    #[test]
    fn density_bound() {
        let (beta, bbar, ctilde) = (1.0, 0.7, 2.3);
        assert_eq!(density_lower_bound(0.0, beta, bbar, ctilde).unwrap(), 0.0);
        let k = ctilde * (beta * bbar).exp();
        let lambda = 0.5 / (E * k);
        let closed = density_lower_bound(lambda, beta, bbar, ctilde).unwrap();
        let series = density_lower_bound_series(lambda, beta, bbar, ctilde, 200).unwrap();
        assert!((closed - series).abs() < 1e-8, "{closed} vs {series}");
        assert!(closed > 0.0);
        assert_eq!(density_bound_at(LN_2, k), 0.0);
        assert!(density_lower_bound(1.0 / (E * k), beta, bbar, ctilde).is_err());
        assert!(density_lower_bound(-0.1, beta, bbar, ctilde).is_err());
    }

    #[test]
    fn radius_formulas() {
        assert_relative_eq!(radius_mayer(1.0, 0.0, 1.0).unwrap(), INV_E, max_relative = 1e-15);
        assert_relative_eq!(
            radius_mayer(1.0, 2.0, 3.0).unwrap(),
            2.0 * radius_mayer(1.0, 2.0, 6.0).unwrap(),
            max_relative = 1e-15
        );
        assert_eq!(radius_mayer(1.0, 2.0, 0.0).unwrap(), f64::INFINITY);
        assert_relative_eq!(radius_lp(1.0, 0.0, 1.0).unwrap(), g_function(1.0).unwrap());
        assert!((radius_lp(3.0, 0.0, 1.0).unwrap() - 0.14477).abs() < 1e-5);
        // 2βB = 40: g → 1/e
        let lp = radius_lp(1.0, 20.0, 2.0).unwrap();
        let asymptotic = INV_E * (-40.0f64).exp() / 2.0;
        assert!((lp / asymptotic - 1.0).abs() < 0.01);
        // huge βB overflows e^{2βB} but the radius is still defined
        assert_eq!(radius_lp(10.0, 100.0, 1.0).unwrap(), 0.0);
        let hs = radius_virial_new(1.0, 0.0, 4.0 * PI / 3.0).unwrap();
        assert_relative_eq!(hs, g_function(1.0).unwrap() * 3.0 / (4.0 * PI), max_relative = 1e-15);
        assert!((hs - 0.14477 * 3.0 / (4.0 * PI)).abs() < 1e-5, "{hs}");
        assert!(radius_virial_new(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn radii_decrease_in_integrals() {
        let mut prev = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
        for c in [0.1, 0.5, 1.0, 5.0, 40.0] {
            let now = (
                radius_mayer(0.8, 1.2, c).unwrap(),
                radius_lp(0.8, 1.2, c).unwrap(),
                radius_virial_new(0.8, 1.3, c).unwrap(),
            );
            assert!(now.0 > 0.0 && now.1 > 0.0 && now.2 > 0.0);
            assert!(now.0 < prev.0 && now.1 < prev.1 && now.2 < prev.2);
            prev = now;
        }
    }

    #[test]
    fn hard_sphere_integrals() {
        let hs = PairPotential::hard_sphere(1.3, 3).unwrap();
        let exact = 4.0 / 3.0 * PI * 1.3f64.powi(3);
        for beta in [0.1, 1.0, 10.0] {
            let c = integral_c(&hs, beta).unwrap();
            let ct = integral_ctilde(&hs, beta).unwrap();
            assert_relative_eq!(c.value, exact, max_relative = 1e-14);
            assert_eq!(c.value, ct.value);
        }
        assert!(integral_c(&hs, 0.0).is_err());
    }

    #[test]
    fn square_well_integrals_closed_form() {
        let p = PairPotential::square_well(1.0, 1.5, 1.0, 1).unwrap();
        let c = integral_c(&p, 1.0).unwrap();
        let ct = integral_ctilde(&p, 1.0).unwrap();
        assert_relative_eq!(c.value, 2.0 * (1.0 + 0.5 * (E - 1.0)), max_relative = 1e-13);
        assert_relative_eq!(ct.value, 2.0 * (1.0 + 0.5 * (1.0 - 1.0 / E)), max_relative = 1e-13);
        assert!((c.value - 3.71828).abs() < 1e-5);
        assert!((ct.value - 2.63212).abs() < 1e-5);
    }

    #[test]
    fn lj_integrals_ordering() {
        let lj = PairPotential::lennard_jones();
        let mut prev_radius = f64::INFINITY;
        for beta in [0.5, 1.0, 2.0, 5.0, 10.0] {
            let c = integral_c(&lj, beta).unwrap();
            let ct = integral_ctilde(&lj, beta).unwrap();
            assert!(c.value > ct.value && ct.value > 0.0);
            assert!(c.relative_error() < 1e-8 && ct.relative_error() < 1e-8);
            let r = radius_mayer(beta, 8.61, ct.value).unwrap();
            assert!(r < prev_radius);
            prev_radius = r;
        }
    }

    #[test]
    fn positive_tabulated_has_equal_integrals() {
        use crate::potentials::Table;
        let t = Table::new(0.2, vec![0.5, 1.0, 2.0], vec![3.0, 1.0, 0.2]).unwrap();
        let p = PairPotential::tabulated(t, 2).unwrap();
        let c = integral_c(&p, 1.5).unwrap();
        let ct = integral_ctilde(&p, 1.5).unwrap();
        assert_eq!(c.value, ct.value);
        let report = build_radii_report(&p, 1.5).unwrap();
        assert_eq!(report.ratio, 1.0);
    }

    #[test]
    fn report_needs_constants() {
        let p = PairPotential::square_well(1.0, 1.5, 1.0, 3).unwrap();
        assert!(matches!(build_radii_report(&p, 1.0), Err(Error::MissingConstant(_))));
    }

    #[test]
    fn report_ratio_matches_factors() {
        let lj = PairPotential::lennard_jones();
        for beta in [0.5, 1.0, 3.0, 10.0] {
            let r = build_radii_report(&lj, beta).unwrap();
            assert!(r.bbar_upper_bound);
            assert_relative_eq!(r.ratio, r.ratio_from_factors(), max_relative = 1e-12);
        }
    }
}
