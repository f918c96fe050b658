//! Rigorous lower bounds on the convergence radii of the Mayer and virial
//! series for classical gases with stable, tempered pair potentials.
//!
//! The crate is organised bottom-up:
//!
//! - [`potentials`]: radial pair potentials, Mayer factors and the catalog of
//!   fixtures (Lennard-Jones, hard spheres, square wells, tables).
//! - [`graphs`]: labeled graphs and trees on `[n]`, Kruskal's minimal-tree map
//!   and the partition scheme it induces, with exhaustive verification.
//! - [`cluster`]: configuration-level cluster sums (direct Ursell sum and the
//!   Penrose tree-graph form), the stability inequality on scheme graphs,
//!   Monte Carlo Mayer coefficients and the three coefficient bounds.
//! - [`analysis`]: radial quadrature for `C(β)` and `C̃(β)`, the
//!   Lebowitz-Penrose function `g`, the tree function, and the radii.
//! - [`stability`]: multi-start estimates of finite-`n` stability constants
//!   and the witness configurations that lower-bound them.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cluster;
pub mod error;
pub mod graphs;
pub mod potentials;
pub mod quadrature;
pub mod stability;
pub mod sum;

pub use analysis::{
    build_radii_report, euler_series_partial, g_function, integral_c, integral_ctilde,
    radius_lp, radius_mayer, radius_virial_new, tree_function_w, IntegralKind,
    QuadratureResult, RadiiReport,
};
pub use cluster::{
    bound_penrose_ruelle, bound_py, bound_py_basuev, mayer_coefficient_mc, pair_energy_sum,
    penrose_tree_sum, ursell_direct, Configuration, CubeBox, MayerEstimate,
};
pub use error::{Error, Result};
pub use graphs::{EdgeId, EdgeOrder, LabeledGraph, LabeledTree};
pub use potentials::{BasuevConstant, PairPotential, PotentialSpec};
pub use stability::StabilityEstimate;
