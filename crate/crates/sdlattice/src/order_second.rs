//! Increasing concave/convex and convex orders: order tests on the integrated
//! transforms, envelope-based joins and meets, family extrema with the mean
//! identities, and the strictly increasing normal-kernel functionals.

use crate::error::{Error, Result};
use crate::gauss;
use crate::measure::{merge_sorted, DiscreteDistribution, PiecewiseLinearFunction, CMP_TOL};
use crate::order_first::{leq_st, OrderWitness};
use crate::{Direction, Order};

/// A convex minorant or concave majorant together with the input breakpoints
/// it touches.
#[derive(Debug, Clone)]
pub struct EnvelopeResult {
    pub envelope: PiecewiseLinearFunction,
    pub contact_points: Vec<f64>,
}

/// Order test for ≤_icv, ≤_icx and ≤_cx (≤_st delegates to
/// [`crate::order_first::leq_st`]).
///
/// The transforms are affine between the union of the two breakpoint sets and
/// agree with their rays outside it, so comparing the union breakpoints plus
/// the ray behaviour (a mean comparison) decides the order. The witness is the
/// first violating union breakpoint, or a point one unit into the violating
/// ray when the failure already shows at infinity.
pub fn leq_order(a: &DiscreteDistribution, b: &DiscreteDistribution, order: Order) -> OrderWitness {
    match order {
        Order::St => leq_st(a, b),
        Order::Icx => leq_icx(a, b),
        Order::Icv => leq_icv(a, b),
        Order::Cx => {
            let lower = leq_icv(b, a);
            if !lower.holds {
                return lower;
            }
            leq_icx(a, b)
        }
    }
}

fn leq_icx(a: &DiscreteDistribution, b: &DiscreteDistribution) -> OrderWitness {
    let grid = merge_sorted(a.support(), b.support());
    // on the left rays the difference is constant mean(a) − mean(b)
    if a.mean() > b.mean() + CMP_TOL {
        return OrderWitness::violated_at(grid[0] - 1.0);
    }
    for &s in &grid {
        if a.icx_at(s) > b.icx_at(s) + CMP_TOL {
            return OrderWitness::violated_at(s);
        }
    }
    OrderWitness::ok()
}

fn leq_icv(a: &DiscreteDistribution, b: &DiscreteDistribution) -> OrderWitness {
    let grid = merge_sorted(a.support(), b.support());
    // on the right rays the difference tends to mean(a) − mean(b)
    if a.mean() > b.mean() + CMP_TOL {
        return OrderWitness::violated_at(grid[grid.len() - 1] + 1.0);
    }
    for &s in &grid {
        if a.icv_at(s) > b.icv_at(s) + CMP_TOL {
            return OrderWitness::violated_at(s);
        }
    }
    OrderWitness::ok()
}

/// Least upper bound for ≤_icx: the pointwise maximum of the two integrated
/// survival functions is itself convex and reconstructs to a distribution.
pub fn join_icx(a: &DiscreteDistribution, b: &DiscreteDistribution) -> Result<DiscreteDistribution> {
    let hi = a.icx_transform().pointwise_max(&b.icx_transform());
    DiscreteDistribution::from_icx_transform(&hi)
}

/// Greatest lower bound for ≤_icv via the pointwise minimum of the negative
/// integrated distribution functions.
pub fn meet_icv(a: &DiscreteDistribution, b: &DiscreteDistribution) -> Result<DiscreteDistribution> {
    let lo = a.icv_transform().pointwise_min(&b.icv_transform());
    DiscreteDistribution::from_icv_transform(&lo)
}

/// Greatest lower bound for ≤_icx: the greatest convex minorant of the
/// pointwise minimum of the two integrated survival functions, computed as the
/// lower convex hull over the minimum's breakpoints with the boundary rays
/// fixed (left slope -1, right ray 0).
pub fn meet_icx(a: &DiscreteDistribution, b: &DiscreteDistribution) -> Result<DiscreteDistribution> {
    let lo = a.icx_transform().pointwise_min(&b.icx_transform());
    let env = lower_convex_envelope(&lo)?;
    DiscreteDistribution::from_icx_transform(&env.envelope)
}

/// Least upper bound for ≤_icv: the least concave majorant of the pointwise
/// maximum of the negative integrated distribution functions (left ray 0,
/// right ray slope -1 with intercept the larger mean).
pub fn join_icv(a: &DiscreteDistribution, b: &DiscreteDistribution) -> Result<DiscreteDistribution> {
    let hi = a.icv_transform().pointwise_max(&b.icv_transform());
    let env = upper_concave_envelope(&hi)?;
    DiscreteDistribution::from_icv_transform(&env.envelope)
}

/// Extremum of a nonempty finite family under ≤_icv or ≤_icx.
///
/// sup_icx and inf_icv fold the pointwise formulas (max of convex, min of
/// concave); inf_icx and sup_icv fold the pairwise envelope operations. The
/// fold order does not matter. The mean identities hold: mean(inf_icv K) is
/// the smallest member mean and mean(sup_icx K) the largest.
pub fn extremum_family(
    family: &[DiscreteDistribution],
    order: Order,
    direction: Direction,
) -> Result<DiscreteDistribution> {
    let (first, rest) = family
        .split_first()
        .ok_or(Error::EmptyInput("family extremum needs at least one member"))?;
    let mut acc = first.clone();
    for d in rest {
        acc = match (order, direction) {
            (Order::Icx, Direction::Sup) => join_icx(&acc, d)?,
            (Order::Icx, Direction::Inf) => meet_icx(&acc, d)?,
            (Order::Icv, Direction::Sup) => join_icv(&acc, d)?,
            (Order::Icv, Direction::Inf) => meet_icv(&acc, d)?,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "family extrema are defined for icv and icx, got {order}"
                )))
            }
        };
    }
    Ok(acc)
}

/// Σ pᵢ Φ⁺(xᵢ) with Φ⁺(x) = x·N(x) + n(x): strictly increasing for ≤_icx.
pub fn icx_functional(d: &DiscreteDistribution) -> f64 {
    d.points().map(|(x, w)| w * gauss::phi_plus(x)).sum()
}

/// Σ pᵢ Φ⁻(xᵢ) with Φ⁻(x) = x·N(-x) - n(x): strictly increasing for ≤_icv.
pub fn icv_functional(d: &DiscreteDistribution) -> f64 {
    d.points().map(|(x, w)| w * gauss::phi_minus(x)).sum()
}

/// Greatest convex minorant of a piecewise linear function whose ray slopes
/// already bound its chord slopes (left ≤ all chords ≤ right). The envelope
/// keeps the input rays and is the lower convex hull of the breakpoint
/// vertices; collinear vertices are dropped at slope threshold 1e-12.
pub fn lower_convex_envelope(f: &PiecewiseLinearFunction) -> Result<EnvelopeResult> {
    let pts: Vec<(f64, f64)> = f
        .breakpoints()
        .iter()
        .copied()
        .zip(f.values().iter().copied())
        .collect();
    let hull = lower_hull(&pts);
    let first_slope = chord(&hull, 0);
    let last_slope = chord(&hull, hull.len().wrapping_sub(2));
    if hull.len() >= 2
        && (f.left_slope() > first_slope + CMP_TOL || f.right_slope() < last_slope - CMP_TOL)
    {
        return Err(Error::InvalidFunction(
            "ray slopes do not bound the hull; no piecewise linear convex minorant".into(),
        ));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = hull.iter().copied().unzip();
    let envelope = PiecewiseLinearFunction::new(xs.clone(), ys, f.left_slope(), f.right_slope())?;
    Ok(EnvelopeResult {
        envelope,
        contact_points: xs,
    })
}

/// Least concave majorant; mirror of [`lower_convex_envelope`].
pub fn upper_concave_envelope(f: &PiecewiseLinearFunction) -> Result<EnvelopeResult> {
    let flipped = PiecewiseLinearFunction::new(
        f.breakpoints().to_vec(),
        f.values().iter().map(|y| -y).collect(),
        -f.left_slope(),
        -f.right_slope(),
    )?;
    let env = lower_convex_envelope(&flipped)?;
    let envelope = PiecewiseLinearFunction::new(
        env.envelope.breakpoints().to_vec(),
        env.envelope.values().iter().map(|y| -y).collect(),
        f.left_slope(),
        f.right_slope(),
    )?;
    Ok(EnvelopeResult {
        envelope,
        contact_points: env.contact_points,
    })
}

fn chord(pts: &[(f64, f64)], i: usize) -> f64 {
    if pts.len() < 2 || i + 1 >= pts.len() {
        return 0.0;
    }
    (pts[i + 1].1 - pts[i].1) / (pts[i + 1].0 - pts[i].0)
}

/// Andrew monotone chain over points with strictly increasing x. A vertex is
/// popped when the new point fails to make slopes increase by more than the
/// collinearity threshold.
fn lower_hull(pts: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for &p in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let turn = (p.1 - a.1) * (b.0 - a.0) - (b.1 - a.1) * (p.0 - a.0);
            if turn <= 1e-12 * (b.0 - a.0) * (p.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}
