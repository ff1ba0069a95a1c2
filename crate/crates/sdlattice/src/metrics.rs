//! Distances metrizing Wasserstein-1 and weak convergence, plus the monotone
//! approximation of suprema and infima of directed families.

use crate::error::{Error, Result};
use crate::measure::DiscreteDistribution;
use crate::order_first::{join_st, meet_st};
use crate::order_second::{join_icv, join_icx, leq_order, meet_icv, meet_icx};
use crate::{Direction, Order};

/// Default stopping tolerance for [`monotone_sup_approx`].
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
/// Default cap on consumed family members.
pub const DEFAULT_MAX_STEPS: usize = 10_000;

/// Exact Wasserstein-1 distance: the integral of |F_μ − F_ν| over the union
/// breakpoint partition (both CDFs are constant between union support points).
pub fn wasserstein1(a: &DiscreteDistribution, b: &DiscreteDistribution) -> f64 {
    let mut total = 0.0;
    cdf_sweep(a, b, |prev, x, fa, fb| {
        total += (fa - fb).abs() * (x - prev);
    });
    total
}

/// Kolmogorov distance sup |F_μ − F_ν|, attained at a union support point.
pub fn kolmogorov(a: &DiscreteDistribution, b: &DiscreteDistribution) -> f64 {
    let mut worst = 0.0_f64;
    cdf_sweep(a, b, |_, _, fa, fb| {
        worst = worst.max((fa - fb).abs());
    });
    worst
}

/// Merged walk over the union support reporting, per consecutive pair of union
/// points, the left point, the current point and both CDF values on the
/// interval between them.
fn cdf_sweep(
    a: &DiscreteDistribution,
    b: &DiscreteDistribution,
    mut visit: impl FnMut(f64, f64, f64, f64),
) {
    let (sa, wa) = (a.support(), a.weights());
    let (sb, wb) = (b.support(), b.weights());
    let (mut i, mut j) = (0, 0);
    let (mut fa, mut fb) = (0.0, 0.0);
    let mut prev: Option<f64> = None;
    while i < sa.len() || j < sb.len() {
        let x = match (sa.get(i), sb.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => break,
        };
        if let Some(p) = prev {
            visit(p, x, fa, fb);
        }
        while i < sa.len() && sa[i] == x {
            fa += wa[i];
            i += 1;
        }
        while j < sb.len() && sb[j] == x {
            fb += wb[j];
            j += 1;
        }
        prev = Some(x);
    }
}

/// Lévy metric inf { ε ≥ 0 : F_μ(x−ε) − ε ≤ F_ν(x) ≤ F_μ(x+ε) + ε for all x },
/// computed by bisection (tolerance 1e-10) with feasibility checked at the
/// breakpoints shifted by ±ε.
pub fn levy(a: &DiscreteDistribution, b: &DiscreteDistribution) -> f64 {
    levy_with_tolerance(a, b, 1e-10)
}

/// [`levy`] with a caller-chosen bisection tolerance.
pub fn levy_with_tolerance(a: &DiscreteDistribution, b: &DiscreteDistribution, tol: f64) -> f64 {
    if levy_feasible(a, b, 0.0) {
        return 0.0;
    }
    let (alo, ahi) = a.hull();
    let (blo, bhi) = b.hull();
    let spread = ahi.max(bhi) - alo.min(blo);
    let mut lo = 0.0;
    let mut hi = spread.max(1.0);
    while hi - lo > tol.max(f64::EPSILON) {
        let mid = 0.5 * (lo + hi);
        if levy_feasible(a, b, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// sup_x [F_a(x−ε) − F_b(x)] ≤ ε and the same with the roles swapped.
///
/// The shifted difference is a step function; its supremum sits either at an
/// upward jump x = aᵢ + ε (right-continuous value) or just before a downward
/// jump at x = bⱼ (left limits).
fn levy_feasible(a: &DiscreteDistribution, b: &DiscreteDistribution, eps: f64) -> bool {
    let one_sided = |f: &DiscreteDistribution, g: &DiscreteDistribution| -> f64 {
        let mut worst = 0.0_f64;
        for &x in f.support() {
            worst = worst.max(f.cdf(x) - g.cdf(x + eps));
        }
        for &y in g.support() {
            worst = worst.max(f.cdf_left(y - eps) - g.cdf_left(y));
        }
        worst
    };
    one_sided(a, b) <= eps && one_sided(b, a) <= eps
}

/// A directed family presented as an enumerator of members plus a dominating
/// selector: given members x and y it returns a member z with z ≥ x ∨ y in the
/// chosen order (z ≤ x ∧ y when approximating an infimum), or reports that
/// none exists.
pub struct DirectedFamily<'a, T> {
    enumerator: Box<dyn Iterator<Item = T> + 'a>,
    dominator: Box<dyn FnMut(&T, &T) -> Option<T> + 'a>,
}

impl<'a, T> DirectedFamily<'a, T> {
    pub fn new(
        enumerator: impl Iterator<Item = T> + 'a,
        dominator: impl FnMut(&T, &T) -> Option<T> + 'a,
    ) -> Self {
        Self {
            enumerator: Box::new(enumerator),
            dominator: Box::new(dominator),
        }
    }

    pub(crate) fn next_member(&mut self) -> Option<T> {
        self.enumerator.next()
    }

    pub(crate) fn dominate(&mut self, x: &T, y: &T) -> Option<T> {
        (self.dominator)(x, y)
    }
}

/// Result of a monotone directed approximation.
///
/// `sequence` is the monotone member chain x¹ ≤ x² ≤ …; `limit` joins the last
/// iterate with the exact fold of everything enumerated; `trace` records, per
/// consumed element, the metric gap between the current iterate and the
/// running fold (Lévy for st, Wasserstein-1 for icv/icx). `converged` is true
/// exactly when the final trace entry fell below the tolerance.
#[derive(Debug, Clone)]
pub struct ApproxResult {
    pub sequence: Vec<DiscreteDistribution>,
    pub limit: DiscreteDistribution,
    pub trace: Vec<f64>,
    pub converged: bool,
}

/// Build the monotone approximation x¹ := y¹, x^{n+1} := dominator(xⁿ, y^{n+1})
/// of the supremum (or infimum) of a directed family.
///
/// After pulling each element the exact running fold of all seen members is
/// updated first; iteration stops once the metric between the current iterate
/// and that fold drops below `tolerance`, when the enumerator is exhausted, or
/// after `max_steps` consumed members (reported via `converged = false`, not an
/// error). A `tolerance` of 0 disables the early stop. For unbounded
/// enumerations boundedness (st) or a uniformly integrable bound pair
/// (icv/icx) is the caller's obligation.
pub fn monotone_sup_approx(
    mut family: DirectedFamily<'_, DiscreteDistribution>,
    order: Order,
    direction: Direction,
    tolerance: f64,
    max_steps: usize,
) -> Result<ApproxResult> {
    if !(tolerance >= 0.0) {
        return Err(Error::InvalidParameter(
            "tolerance must be a nonnegative real".into(),
        ));
    }
    if max_steps == 0 {
        return Err(Error::InvalidParameter("max_steps must be positive".into()));
    }
    let metric = match order {
        Order::St => levy,
        Order::Icv | Order::Icx => wasserstein1,
        Order::Cx => {
            return Err(Error::InvalidParameter(
                "monotone approximation is defined for st, icv and icx".into(),
            ))
        }
    };

    let first = family
        .next_member()
        .ok_or(Error::EmptyInput("directed family enumerated no members"))?;
    let mut current = first.clone();
    let mut fold = first.clone();
    let mut sequence = vec![first];
    let mut trace = Vec::new();
    let mut consumed = 1;
    let converged = loop {
        if consumed >= max_steps {
            break trace.last().map_or(false, |&gap| gap < tolerance);
        }
        let Some(next) = family.next_member() else {
            let gap = metric(&current, &fold);
            trace.push(gap);
            break gap < tolerance;
        };
        consumed += 1;
        fold = fold_step(&fold, &next, order, direction)?;
        let gap = metric(&current, &fold);
        trace.push(gap);
        if gap < tolerance && tolerance > 0.0 {
            break true;
        }
        let z = family.dominate(&current, &next).ok_or(Error::NotDirected)?;
        if !dominates(&z, &current, order, direction) || !dominates(&z, &next, order, direction) {
            return Err(Error::NotDirected);
        }
        current = z;
        sequence.push(current.clone());
    };
    let limit = fold_step(&fold, &current, order, direction)?;
    Ok(ApproxResult {
        sequence,
        limit,
        trace,
        converged,
    })
}

fn fold_step(
    acc: &DiscreteDistribution,
    next: &DiscreteDistribution,
    order: Order,
    direction: Direction,
) -> Result<DiscreteDistribution> {
    Ok(match (order, direction) {
        (Order::St, Direction::Sup) => join_st(acc, next),
        (Order::St, Direction::Inf) => meet_st(acc, next),
        (Order::Icx, Direction::Sup) => join_icx(acc, next)?,
        (Order::Icx, Direction::Inf) => meet_icx(acc, next)?,
        (Order::Icv, Direction::Sup) => join_icv(acc, next)?,
        (Order::Icv, Direction::Inf) => meet_icv(acc, next)?,
        (Order::Cx, _) => unreachable!("rejected above"),
    })
}

fn dominates(
    z: &DiscreteDistribution,
    x: &DiscreteDistribution,
    order: Order,
    direction: Direction,
) -> bool {
    match direction {
        Direction::Sup => leq_order(x, z, order).holds,
        Direction::Inf => leq_order(z, x, order).holds,
    }
}
