//! Radial pair potentials and the Mayer factors built from them.
//!
//! A [`PairPotential`] couples an energy model `V(r)` with the metadata the
//! bound formulas need: the spatial dimension, the stability constant `B`,
//! the Basuev constant `B̄` (possibly only an upper bound), the well depth
//! `C = -inf V` and the location `r0` of the minimum.
//!
//! Hard cores are represented by a genuine `f64::INFINITY` energy. Every
//! downstream formula uses the limits `exp(-β·∞) = 0`, so no large finite
//! surrogate ever enters an identity check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stability constant of the Lennard-Jones potential `r^-12 - 2 r^-6` in three
/// dimensions.
pub const LJ_STABILITY_B: f64 = 8.61;

/// Upper bound on the Basuev constant of the three-dimensional Lennard-Jones
/// potential, `1.001 · B`.
pub const LJ_BASUEV_UPPER: f64 = 8.61861;

/// The Basuev constant of a potential, or an upper bound for it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasuevConstant {
    pub value: f64,
    /// `true` when only `B̄ <= value` is known.
    pub upper_bound: bool,
}

impl BasuevConstant {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            upper_bound: false,
        }
    }

    pub fn at_most(value: f64) -> Self {
        Self {
            value,
            upper_bound: true,
        }
    }
}

/// Piecewise-linear table of `(r, V(r))` samples.
///
/// Below the first knot the first value is held; beyond the last knot the
/// potential is zero. An optional hard core makes `V = +∞` for `r < core`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    core: f64,
    radii: Vec<f64>,
    values: Vec<f64>,
}

impl Table {
    pub fn new(core: f64, radii: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if radii.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "table has {} radii but {} values",
                radii.len(),
                values.len()
            )));
        }
        if radii.len() < 2 {
            return Err(Error::InvalidInput("table needs at least two knots".into()));
        }
        if !(core >= 0.0 && core.is_finite()) {
            return Err(Error::InvalidInput(format!("core radius {core} must be finite and >= 0")));
        }
        if radii.iter().chain(&values).any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("table entries must be finite".into()));
        }
        if radii[0] < 0.0 || radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput(
                "table radii must be nonnegative and strictly increasing".into(),
            ));
        }
        Ok(Self {
            core,
            radii,
            values,
        })
    }

    fn eval(&self, r: f64) -> f64 {
        if r < self.core {
            return f64::INFINITY;
        }
        let last = self.radii.len() - 1;
        if r >= self.radii[last] {
            return 0.0;
        }
        if r <= self.radii[0] {
            return self.values[0];
        }
        // first knot strictly greater than r
        let hi = self.radii.partition_point(|&k| k <= r);
        let lo = hi - 1;
        let t = (r - self.radii[lo]) / (self.radii[hi] - self.radii[lo]);
        self.values[lo] + t * (self.values[hi] - self.values[lo])
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn core(&self) -> f64 {
        self.core
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Model {
    LennardJones,
    HardSphere { diameter: f64 },
    SquareWell { core: f64, range: f64, depth: f64 },
    Tabulated(Table),
}

/// A radial pair interaction with its known constants.
#[derive(Debug, Clone, PartialEq)]
pub struct PairPotential {
    name: &'static str,
    model: Model,
    dimension: usize,
    known_b: Option<f64>,
    known_bbar: Option<BasuevConstant>,
    well_depth: Option<f64>,
    well_radius: Option<f64>,
}

impl PairPotential {
    /// `V(r) = r^-12 - 2 r^-6` in three dimensions: well depth 1 at `r = 1`,
    /// `B = 8.61`, `B̄ <= 1.001 B`.
    pub fn lennard_jones() -> Self {
        Self {
            name: "lennard_jones",
            model: Model::LennardJones,
            dimension: 3,
            known_b: Some(LJ_STABILITY_B),
            known_bbar: Some(BasuevConstant::at_most(LJ_BASUEV_UPPER)),
            well_depth: Some(1.0),
            well_radius: Some(1.0),
        }
    }

    /// Hard spheres of the given diameter; `B = B̄ = 0`.
    pub fn hard_sphere(diameter: f64, dimension: usize) -> Result<Self> {
        check_dimension(dimension)?;
        if !(diameter > 0.0 && diameter.is_finite()) {
            return Err(Error::Domain(format!("hard-sphere diameter {diameter} must be positive")));
        }
        Ok(Self {
            name: "hard_sphere",
            model: Model::HardSphere { diameter },
            dimension,
            known_b: Some(0.0),
            known_bbar: Some(BasuevConstant::exact(0.0)),
            well_depth: Some(0.0),
            well_radius: None,
        })
    }

    /// Hard core of diameter `core`, attractive well of depth `depth` for
    /// `core <= r < range`, zero beyond.
    ///
    /// In one dimension with `range <= 2·core` only nearest neighbours can
    /// interact, so at most `n - 1` pairs are in the well and
    /// `B = B̄ = depth`; those constants are attached automatically. Other
    /// cases carry no constants unless supplied with [`Self::with_constants`].
    pub fn square_well(core: f64, range: f64, depth: f64, dimension: usize) -> Result<Self> {
        check_dimension(dimension)?;
        if !(core > 0.0 && core.is_finite()) {
            return Err(Error::Domain(format!("square-well core {core} must be positive")));
        }
        if !(range > core && range.is_finite()) {
            return Err(Error::Domain(format!(
                "square-well range {range} must exceed the core {core}"
            )));
        }
        if !(depth >= 0.0 && depth.is_finite()) {
            return Err(Error::Domain(format!("square-well depth {depth} must be >= 0")));
        }
        let (known_b, known_bbar) = if depth == 0.0 || (dimension == 1 && range <= 2.0 * core) {
            (Some(depth), Some(BasuevConstant::exact(depth)))
        } else {
            (None, None)
        };
        Ok(Self {
            name: "square_well",
            model: Model::SquareWell { core, range, depth },
            dimension,
            known_b,
            known_bbar,
            well_depth: Some(depth),
            well_radius: (depth > 0.0).then_some(0.5 * (core + range)),
        })
    }

    pub fn tabulated(table: Table, dimension: usize) -> Result<Self> {
        check_dimension(dimension)?;
        let (min_idx, min_val) = table
            .values
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });
        let nonnegative = min_val >= 0.0;
        Ok(Self {
            name: "tabulated",
            dimension,
            known_b: nonnegative.then_some(0.0),
            known_bbar: nonnegative.then_some(BasuevConstant::exact(0.0)),
            well_depth: Some((-min_val).max(0.0)),
            well_radius: (!nonnegative).then(|| table.radii[min_idx]),
            model: Model::Tabulated(table),
        })
    }

    /// Replace the stability constants. Requires `B̄ >= B >= 0`.
    pub fn with_constants(mut self, b: Option<f64>, bbar: Option<BasuevConstant>) -> Result<Self> {
        if let Some(b) = b {
            if !(b >= 0.0 && b.is_finite()) {
                return Err(Error::Domain(format!("stability constant B = {b} must be >= 0")));
            }
        }
        if let Some(bb) = bbar {
            if !(bb.value >= 0.0 && bb.value.is_finite()) {
                return Err(Error::Domain(format!("Basuev constant {} must be >= 0", bb.value)));
            }
            if let Some(b) = b {
                if bb.value < b {
                    return Err(Error::Domain(format!(
                        "Basuev constant {} is below the stability constant {b}",
                        bb.value
                    )));
                }
            }
        }
        self.known_b = b;
        self.known_bbar = bbar;
        Ok(self)
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn known_b(&self) -> Option<f64> {
        self.known_b
    }

    pub fn known_bbar(&self) -> Option<BasuevConstant> {
        self.known_bbar
    }

    /// `C = -inf V`.
    pub fn well_depth(&self) -> Option<f64> {
        self.well_depth
    }

    /// A point where `V` attains its minimum.
    pub fn well_radius(&self) -> Option<f64> {
        self.well_radius
    }

    pub fn require_b(&self) -> Result<f64> {
        self.known_b.ok_or(Error::MissingConstant("stability constant B"))
    }

    pub fn require_bbar(&self) -> Result<BasuevConstant> {
        self.known_bbar.ok_or(Error::MissingConstant("Basuev constant Bbar"))
    }

    /// `V(r)`, with a domain check on `r`.
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if r < 0.0 || r.is_nan() {
            return Err(Error::Domain(format!("distance {r} must be >= 0")));
        }
        Ok(self.energy(r))
    }

    /// `V(r)` for a distance already known to be nonnegative.
    #[inline]
    pub fn energy(&self, r: f64) -> f64 {
        debug_assert!(r >= 0.0);
        match &self.model {
            Model::LennardJones => {
                let s = r.powi(-6);
                if s.is_finite() {
                    s * s - 2.0 * s
                } else {
                    f64::INFINITY
                }
            }
            Model::HardSphere { diameter } => {
                if r < *diameter {
                    f64::INFINITY
                } else {
                    0.0
                }
            }
            Model::SquareWell { core, range, depth } => {
                if r < *core {
                    f64::INFINITY
                } else if r < *range {
                    -depth
                } else {
                    0.0
                }
            }
            Model::Tabulated(t) => t.eval(r),
        }
    }

    /// Mayer factor `exp(-βV(r)) - 1`.
    pub fn mayer_f(&self, beta: f64, r: f64) -> Result<f64> {
        Ok(mayer_factor(beta, self.evaluate(r)?))
    }

    /// `1 - exp(-β|V(r)|)`.
    pub fn abs_mayer_f(&self, beta: f64, r: f64) -> Result<f64> {
        Ok(abs_mayer_factor(beta, self.evaluate(r)?))
    }

    /// Radius below which `V = +∞`, or 0.
    pub fn hard_core_radius(&self) -> f64 {
        match &self.model {
            Model::LennardJones => 0.0,
            Model::HardSphere { diameter } => *diameter,
            Model::SquareWell { core, .. } => *core,
            Model::Tabulated(t) => t.core,
        }
    }

    /// Radius beyond which `V` vanishes identically, when there is one.
    pub fn support_radius(&self) -> Option<f64> {
        match &self.model {
            Model::LennardJones => None,
            Model::HardSphere { diameter } => Some(*diameter),
            Model::SquareWell { range, .. } => Some(*range),
            Model::Tabulated(t) => Some(*t.radii.last().unwrap()),
        }
    }

    /// Radii where `V` or its derivative is discontinuous, changes sign, or
    /// attains its minimum. Sorted, deduplicated, strictly positive.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts = match &self.model {
            // zero crossing and minimum
            Model::LennardJones => vec![2f64.powf(-1.0 / 6.0), 1.0],
            Model::HardSphere { diameter } => vec![*diameter],
            Model::SquareWell { core, range, .. } => vec![*core, *range],
            Model::Tabulated(t) => {
                let mut v = t.radii.clone();
                v.push(t.core);
                // sign changes between knots
                for (w, r) in t.values.windows(2).zip(t.radii.windows(2)) {
                    if w[0] * w[1] < 0.0 {
                        v.push(r[0] + (r[1] - r[0]) * w[0] / (w[0] - w[1]));
                    }
                }
                v
            }
        };
        pts.retain(|&x| x > 0.0);
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// Typical interparticle distance: the well radius, or else the outermost
    /// feature of the potential (at least 1).
    pub fn length_scale(&self) -> f64 {
        self.well_radius.unwrap_or_else(|| {
            self.breakpoints()
                .into_iter()
                .chain(self.support_radius())
                .fold(self.hard_core_radius().max(1.0), f64::max)
        })
    }

    /// `true` when `V >= 0` everywhere.
    pub fn is_nonnegative(&self) -> bool {
        self.well_depth == Some(0.0)
    }

    /// `true` when `V` has a negative minimum at `r0` and stays negative for
    /// all `r > r0`, as Lennard-Jones type potentials do.
    pub fn negative_beyond_minimum(&self) -> bool {
        matches!(self.model, Model::LennardJones)
    }
}

fn check_dimension(d: usize) -> Result<()> {
    if d == 0 {
        Err(Error::Domain("dimension must be >= 1".into()))
    } else {
        Ok(())
    }
}

/// `exp(-βV) - 1`, mapping `V = +∞` to exactly `-1`.
#[inline]
pub fn mayer_factor(beta: f64, v: f64) -> f64 {
    if v == f64::INFINITY {
        -1.0
    } else {
        (-beta * v).exp_m1()
    }
}

/// `1 - exp(-β|V|)`, mapping `V = +∞` to exactly `1`.
#[inline]
pub fn abs_mayer_factor(beta: f64, v: f64) -> f64 {
    if v == f64::INFINITY {
        1.0
    } else {
        -(-beta * v.abs()).exp_m1()
    }
}

/// Serializable description of a potential, as used in run configurations.
///
/// ```json
/// {"kind": "square_well", "core": 1.0, "range": 1.5, "depth": 1.0, "dimension": 1}
/// ```
///
/// The optional `B`, `Bbar` and `bbar_upper_bound` fields override the
/// catalog constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct PotentialSpec {
    #[serde(flatten)]
    pub model: ModelSpec,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(rename = "Bbar", default, skip_serializing_if = "Option::is_none")]
    pub bbar: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bbar_upper_bound: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    LennardJones,
    HardSphere {
        diameter: f64,
        #[serde(default = "default_dimension")]
        dimension: usize,
    },
    SquareWell {
        core: f64,
        range: f64,
        depth: f64,
        #[serde(default = "default_dimension")]
        dimension: usize,
    },
    Tabulated {
        #[serde(default)]
        core: f64,
        radii: Vec<f64>,
        values: Vec<f64>,
        #[serde(default = "default_dimension")]
        dimension: usize,
    },
}

fn default_dimension() -> usize {
    3
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Kind {
    LennardJones,
    HardSphere,
    SquareWell,
    Tabulated,
}

/// Flat wire form of [`PotentialSpec`]. Serde cannot combine a flattened
/// enum with `deny_unknown_fields`, so unknown and misplaced fields are
/// rejected here instead.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    kind: Kind,
    diameter: Option<f64>,
    core: Option<f64>,
    range: Option<f64>,
    depth: Option<f64>,
    radii: Option<Vec<f64>>,
    values: Option<Vec<f64>>,
    dimension: Option<usize>,
    #[serde(rename = "B")]
    b: Option<f64>,
    #[serde(rename = "Bbar")]
    bbar: Option<f64>,
    bbar_upper_bound: Option<bool>,
}

impl TryFrom<RawSpec> for PotentialSpec {
    type Error = String;

    fn try_from(raw: RawSpec) -> std::result::Result<Self, String> {
        let present = [
            ("diameter", raw.diameter.is_some()),
            ("core", raw.core.is_some()),
            ("range", raw.range.is_some()),
            ("depth", raw.depth.is_some()),
            ("radii", raw.radii.is_some()),
            ("values", raw.values.is_some()),
            ("dimension", raw.dimension.is_some()),
        ];
        let allowed: &[&str] = match raw.kind {
            Kind::LennardJones => &[],
            Kind::HardSphere => &["diameter", "dimension"],
            Kind::SquareWell => &["core", "range", "depth", "dimension"],
            Kind::Tabulated => &["core", "radii", "values", "dimension"],
        };
        if let Some((name, _)) = present.iter().find(|(name, set)| *set && !allowed.contains(name)) {
            return Err(format!("field `{name}` does not apply to kind {:?}", raw.kind));
        }
        fn need<T>(v: Option<T>, name: &str) -> std::result::Result<T, String> {
            v.ok_or_else(|| format!("missing field `{name}`"))
        }
        let dimension = raw.dimension.unwrap_or_else(default_dimension);
        let model = match raw.kind {
            Kind::LennardJones => ModelSpec::LennardJones,
            Kind::HardSphere => ModelSpec::HardSphere {
                diameter: need(raw.diameter, "diameter")?,
                dimension,
            },
            Kind::SquareWell => ModelSpec::SquareWell {
                core: need(raw.core, "core")?,
                range: need(raw.range, "range")?,
                depth: need(raw.depth, "depth")?,
                dimension,
            },
            Kind::Tabulated => ModelSpec::Tabulated {
                core: raw.core.unwrap_or(0.0),
                radii: need(raw.radii, "radii")?,
                values: need(raw.values, "values")?,
                dimension,
            },
        };
        Ok(Self {
            model,
            b: raw.b,
            bbar: raw.bbar,
            bbar_upper_bound: raw.bbar_upper_bound,
        })
    }
}

impl PotentialSpec {
    pub fn new(model: ModelSpec) -> Self {
        Self {
            model,
            b: None,
            bbar: None,
            bbar_upper_bound: None,
        }
    }

    pub fn build(&self) -> Result<PairPotential> {
        let p = match &self.model {
            ModelSpec::LennardJones => PairPotential::lennard_jones(),
            ModelSpec::HardSphere {
                diameter,
                dimension,
            } => PairPotential::hard_sphere(*diameter, *dimension)?,
            ModelSpec::SquareWell {
                core,
                range,
                depth,
                dimension,
            } => PairPotential::square_well(*core, *range, *depth, *dimension)?,
            ModelSpec::Tabulated {
                core,
                radii,
                values,
                dimension,
            } => PairPotential::tabulated(Table::new(*core, radii.clone(), values.clone())?, *dimension)?,
        };
        if self.b.is_none() && self.bbar.is_none() && self.bbar_upper_bound.is_none() {
            return Ok(p);
        }
        let b = self.b.or(p.known_b);
        let bbar = match self.bbar {
            Some(v) => Some(BasuevConstant {
                value: v,
                upper_bound: self.bbar_upper_bound.unwrap_or(false),
            }),
            None => p.known_bbar.map(|bb| BasuevConstant {
                upper_bound: self.bbar_upper_bound.unwrap_or(bb.upper_bound),
                ..bb
            }),
        };
        p.with_constants(b, bbar)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn rods() -> PairPotential {
        PairPotential::square_well(1.0, 1.5, 1.0, 1).unwrap()
    }

    #[test]
    fn lj_values() {
        let lj = PairPotential::lennard_jones();
        assert_eq!(lj.evaluate(1.0).unwrap(), -1.0);
        let zero = 2f64.powf(-1.0 / 6.0);
        assert!(lj.evaluate(zero).unwrap().abs() < 1e-14);
        assert_eq!(lj.evaluate(0.0).unwrap(), f64::INFINITY);
        assert_eq!(lj.evaluate(1e-60).unwrap(), f64::INFINITY);
        assert_eq!(lj.known_b(), Some(8.61));
        assert_eq!(lj.known_bbar(), Some(BasuevConstant::at_most(8.61861)));
        assert_eq!(lj.well_depth(), Some(1.0));
        assert_eq!(lj.well_radius(), Some(1.0));
    }

    #[test]
    fn lj_basuev_bound_is_one_permille_above_b() {
        assert_relative_eq!(LJ_BASUEV_UPPER, 1.001 * LJ_STABILITY_B, max_relative = 1e-15);
    }

    #[test]
    fn negative_distance_is_rejected() {
        let lj = PairPotential::lennard_jones();
        assert!(matches!(lj.evaluate(-0.1), Err(Error::Domain(_))));
        assert!(lj.evaluate(f64::NAN).is_err());
        assert!(lj.mayer_f(1.0, -1.0).is_err());
    }

    #[test]
    fn hard_sphere_core() {
        let hs = PairPotential::hard_sphere(1.0, 3).unwrap();
        assert_eq!(hs.evaluate(0.5).unwrap(), f64::INFINITY);
        assert_eq!(hs.evaluate(1.0).unwrap(), 0.0);
        assert_eq!(hs.mayer_f(2.0, 0.5).unwrap(), -1.0);
        assert_eq!(hs.abs_mayer_f(2.0, 0.5).unwrap(), 1.0);
        assert_eq!(hs.known_b(), Some(0.0));
        assert_eq!(hs.known_bbar(), Some(BasuevConstant::exact(0.0)));
        assert!(hs.is_nonnegative());
    }

    #[test]
    fn mayer_factors_at_lj_minimum() {
        let lj = PairPotential::lennard_jones();
        assert_relative_eq!(lj.mayer_f(1.0, 1.0).unwrap(), 1.718281828459045, max_relative = 1e-14);
        assert_relative_eq!(lj.abs_mayer_f(1.0, 1.0).unwrap(), 0.6321205588285577, max_relative = 1e-14);
    }

    #[test]
    fn zero_energy_gives_zero_factors() {
        let hs = PairPotential::hard_sphere(1.0, 3).unwrap();
        assert_eq!(hs.mayer_f(1.0, 3.0).unwrap(), 0.0);
        assert_eq!(hs.abs_mayer_f(1.0, 3.0).unwrap(), 0.0);
    }

    #[test]
    fn square_well_rods_constants() {
        let p = rods();
        assert_eq!(p.evaluate(0.99).unwrap(), f64::INFINITY);
        assert_eq!(p.evaluate(1.0).unwrap(), -1.0);
        assert_eq!(p.evaluate(1.49).unwrap(), -1.0);
        assert_eq!(p.evaluate(1.5).unwrap(), 0.0);
        assert_eq!(p.known_b(), Some(1.0));
        assert_eq!(p.known_bbar(), Some(BasuevConstant::exact(1.0)));
        assert_eq!(p.well_radius(), Some(1.25));
        // 3D square well has no catalog constants
        let p3 = PairPotential::square_well(1.0, 1.5, 1.0, 3).unwrap();
        assert!(p3.require_b().is_err());
        assert!(p3.require_bbar().is_err());
    }

    #[test]
    fn constants_must_be_ordered() {
        let p = PairPotential::hard_sphere(1.0, 3).unwrap();
        assert!(p
            .clone()
            .with_constants(Some(2.0), Some(BasuevConstant::exact(1.0)))
            .is_err());
        assert!(p.with_constants(Some(1.0), Some(BasuevConstant::exact(1.5))).is_ok());
    }

    #[test]
    fn tabulated_interpolates_and_extrapolates() {
        let t = Table::new(0.5, vec![1.0, 2.0, 3.0], vec![2.0, -1.0, -0.5]).unwrap();
        let p = PairPotential::tabulated(t, 3).unwrap();
        assert_eq!(p.energy(0.4), f64::INFINITY);
        assert_eq!(p.energy(0.7), 2.0);
        assert_relative_eq!(p.energy(1.5), 0.5);
        assert_relative_eq!(p.energy(2.5), -0.75);
        assert_eq!(p.energy(3.0), 0.0);
        assert_eq!(p.energy(10.0), 0.0);
        assert_eq!(p.well_depth(), Some(1.0));
        assert_eq!(p.well_radius(), Some(2.0));
        let bp = p.breakpoints();
        assert!(bp.iter().any(|&x| (x - 5.0 / 3.0).abs() < 1e-12), "{bp:?}");
    }

    #[test]
    fn tabulated_rejects_bad_tables() {
        assert!(Table::new(0.0, vec![1.0], vec![1.0]).is_err());
        assert!(Table::new(0.0, vec![1.0, 1.0], vec![1.0, 2.0]).is_err());
        assert!(Table::new(0.0, vec![1.0, 2.0], vec![1.0, f64::NAN]).is_err());
        assert!(Table::new(0.0, vec![1.0, 2.0], vec![1.0]).is_err());
    }

    #[test]
    fn spec_roundtrip_and_overrides() {
        let json = r#"{"kind":"square_well","core":1.0,"range":1.5,"depth":1.0,"dimension":1}"#;
        let spec: PotentialSpec = serde_json::from_str(json).unwrap();
        let p = spec.build().unwrap();
        assert_eq!(p, rods());

        let mut spec = PotentialSpec::new(ModelSpec::LennardJones);
        spec.bbar = Some(9.0);
        spec.bbar_upper_bound = Some(false);
        let p = spec.build().unwrap();
        assert_eq!(p.known_bbar(), Some(BasuevConstant::exact(9.0)));
        assert_eq!(p.known_b(), Some(8.61));

        let bad = r#"{"kind":"lennard_jones","sigma":2.0}"#;
        assert!(serde_json::from_str::<PotentialSpec>(bad).is_err());
        let misplaced = r#"{"kind":"lennard_jones","diameter":2.0}"#;
        assert!(serde_json::from_str::<PotentialSpec>(misplaced).is_err());
        let missing = r#"{"kind":"square_well","core":1.0,"depth":1.0}"#;
        assert!(serde_json::from_str::<PotentialSpec>(missing).is_err());

        let spec = PotentialSpec::new(ModelSpec::HardSphere {
            diameter: 1.5,
            dimension: 2,
        });
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<PotentialSpec>(&text).unwrap(), spec);
    }
}
