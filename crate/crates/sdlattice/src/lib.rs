//! Lattice calculus of first- and second-order stochastic dominance on
//! finitely supported distributions.
//!
//! The crate provides order checks with violation witnesses, joins and meets
//! through survival functions and concave/convex envelopes of the integrated
//! transforms, Wasserstein-1 / Lévy / Kolmogorov metrics with monotone
//! approximation of directed suprema, tightness and uniform-integrability
//! diagnostics with explicit ψ constructions, and essential extrema of flows
//! of distributions over finite atomic measure spaces.
//!
//! ```
//! use sdlattice::{order_first, DiscreteDistribution};
//!
//! let bimodal = DiscreteDistribution::from_pairs([(0.0, 0.5), (2.0, 0.5)]).unwrap();
//! let point = DiscreteDistribution::dirac(1.5);
//! let join = order_first::join_st(&bimodal, &point);
//! assert_eq!(join.support(), &[1.5, 2.0]);
//! ```

pub mod cli;
mod error;
pub mod flows;
pub mod gauss;
pub mod integrability;
pub mod measure;
pub mod metrics;
pub mod order_first;
pub mod order_second;

pub use error::{Error, Result};
pub use measure::{DiscreteDistribution, PiecewiseLinearFunction, StepFunction, CMP_TOL};

/// Stochastic order selector shared by checks, lattice operations, metrics and
/// flows. Not every operation supports every variant; unsupported combinations
/// return [`Error::InvalidParameter`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    /// First order stochastic dominance (pointwise order of survival functions).
    St,
    /// Increasing concave order / second order stochastic dominance.
    Icv,
    /// Increasing convex order.
    Icx,
    /// Convex order (= increasing convex together with reversed increasing concave).
    Cx,
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Order::St => "st",
            Order::Icv => "icv",
            Order::Icx => "icx",
            Order::Cx => "cx",
        };
        f.write_str(name)
    }
}

/// Direction of a family extremum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Sup,
    Inf,
}
