//! Variable-exponent Lebesgue spaces `L^{p(·)}` over one-dimensional interval
//! measure spaces.
//!
//! The crate computes decreasing rearrangements, modulars and Luxemburg norms
//! for piecewise closed-form functions, and decides — with numerically
//! validated witnesses — whether an inclusion `L^{p(·)} ⊆ L^{q(·)}` holds and
//! whether it is L-weakly compact, M-weakly compact, or disjointly strictly
//! singular. Verdicts are three-valued: a decision is only reported when the
//! evidence supports it, otherwise the answer is "indeterminate".
//!
//! Entry points:
//! * [`specfile::parse_function_str`] / [`specfile::load_exponent`] — read
//!   the TOML-based piecewise function documents.
//! * [`rearrange::Rearrangement`] — decreasing rearrangement machinery.
//! * [`modular::luxemburg_norm`], [`modular::modular_of`],
//!   [`modular::char_norm`], [`modular::holder_products`] — norm layer.
//! * [`criteria::classify_pair`], [`criteria::classify_left_infty`],
//!   [`criteria::classify_right_l1`] — inclusion classification.
//! * [`witness`] — disjoint witness sequences certifying non-compactness /
//!   non-singularity, plus the sequence-space equivalence test.
//! * [`fixtures::run_examples`] — the built-in worked-example catalog.

pub mod criteria;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod function;
pub mod interval;
pub mod modular;
pub mod quad;
pub mod rearrange;
pub mod report;
pub mod specfile;
pub mod witness;

pub use error::Error;

/// Shared engine configuration. `Default` matches the documented defaults;
/// the CLI overrides individual fields from flags or a config file.
#[derive(Debug, Clone)]
pub struct Config {
    /// Grid points per piece for sampled (non-exact) methods.
    pub grid: usize,
    /// Endpoint-limit sample depth `K`: samples at distance `b·2^{-k}`,
    /// `k = 4..=K`. Exact-mode rearrangements extend this internally.
    pub depth: u32,
    /// Zero-detection threshold `τ` for endpoint limits.
    pub tol: f64,
    /// Number of witness sets constructed by default.
    pub witness_n: usize,
    /// RNG seed for randomized trials (section checks, property fan-outs).
    pub seed: u64,
    /// Quadrature engine settings.
    pub quad: quad::QuadConfig,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            grid: 10_000,
            depth: 48,
            tol: 1e-6,
            witness_n: 8,
            seed: 0x5eed_cafe,
            quad: quad::QuadConfig::default(),
        }
    }
}

/// Three-valued verdict used across the classification layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThreeValued {
    True,
    False,
    Indeterminate,
}

impl ThreeValued {
    pub fn from_bool(b: bool) -> Self {
        if b {
            ThreeValued::True
        } else {
            ThreeValued::False
        }
    }

    pub fn is_decisive(self) -> bool {
        !matches!(self, ThreeValued::Indeterminate)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ThreeValued::True => "true",
            ThreeValued::False => "false",
            ThreeValued::Indeterminate => "indeterminate",
        }
    }
}

impl std::fmt::Display for ThreeValued {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
