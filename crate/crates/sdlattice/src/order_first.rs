//! First order stochastic dominance: the order test with a violation witness,
//! pairwise and finite-family joins/meets through pointwise extrema of
//! survival functions, and the strictly increasing functional backing the
//! completeness machinery.

use crate::error::{Error, Result};
use crate::gauss;
use crate::measure::{merge_sorted, DiscreteDistribution, CMP_TOL};

/// Verdict of an order check together with a certifying violation point when
/// the order fails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderWitness {
    pub holds: bool,
    pub witness: Option<f64>,
}

impl OrderWitness {
    pub(crate) fn ok() -> Self {
        Self {
            holds: true,
            witness: None,
        }
    }

    pub(crate) fn violated_at(s: f64) -> Self {
        Self {
            holds: false,
            witness: Some(s),
        }
    }
}

/// Does `a ≤_st b` hold, i.e. is the survival function of `a` pointwise below
/// the survival function of `b`?
///
/// Both survival functions are constant between the union of their jump
/// points, so comparing the right-continuous values there decides the order.
/// On failure the smallest violating union point is returned.
pub fn leq_st(a: &DiscreteDistribution, b: &DiscreteDistribution) -> OrderWitness {
    for &s in &merge_sorted(a.support(), b.support()) {
        if a.survival(s) > b.survival(s) + CMP_TOL {
            return OrderWitness::violated_at(s);
        }
    }
    OrderWitness::ok()
}

/// Least upper bound for ≤_st: the survival function of the result is the
/// pointwise maximum of the two survival functions.
pub fn join_st(a: &DiscreteDistribution, b: &DiscreteDistribution) -> DiscreteDistribution {
    let sf = a.survival_function().pointwise_max(&b.survival_function());
    DiscreteDistribution::from_survival(&sf)
        .expect("pointwise max of survival functions is a survival function")
}

/// Greatest lower bound for ≤_st via the pointwise minimum of survival
/// functions. With finitely many jumps no lower-semicontinuous correction is
/// needed.
pub fn meet_st(a: &DiscreteDistribution, b: &DiscreteDistribution) -> DiscreteDistribution {
    let sf = a.survival_function().pointwise_min(&b.survival_function());
    DiscreteDistribution::from_survival(&sf)
        .expect("pointwise min of survival functions is a survival function")
}

/// Supremum of a nonempty finite family, the fold of pairwise joins (the fold
/// order does not matter).
pub fn sup_st(family: &[DiscreteDistribution]) -> Result<DiscreteDistribution> {
    let (first, rest) = family
        .split_first()
        .ok_or(Error::EmptyInput("family supremum needs at least one member"))?;
    Ok(rest.iter().fold(first.clone(), |acc, d| join_st(&acc, d)))
}

/// Infimum of a nonempty finite family.
pub fn inf_st(family: &[DiscreteDistribution]) -> Result<DiscreteDistribution> {
    let (first, rest) = family
        .split_first()
        .ok_or(Error::EmptyInput("family infimum needs at least one member"))?;
    Ok(rest.iter().fold(first.clone(), |acc, d| meet_st(&acc, d)))
}

/// Σ pᵢ Φ(xᵢ) with Φ the standard normal CDF; strictly increasing for ≤_st:
/// comparable distributions with equal values are equal.
pub fn st_functional(d: &DiscreteDistribution) -> f64 {
    d.points().map(|(x, w)| w * gauss::normal_cdf(x)).sum()
}
