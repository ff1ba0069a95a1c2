//! The lattice of flows of distributions over a finite atomic measure space:
//! almost-everywhere order, finite-family essential extrema, and the
//! countable-selection supremum driven by the strictly increasing functionals.

use crate::error::{Error, Result};
use crate::measure::DiscreteDistribution;
use crate::metrics::DirectedFamily;
use crate::order_first::{join_st, leq_st, meet_st, st_functional};
use crate::order_second::{extremum_family, icv_functional, icx_functional, leq_order};
use crate::{Direction, Order};

/// A finite measure space of weighted, distinctly labelled atoms; at least one
/// atom carries positive weight.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasureSpace {
    labels: Vec<String>,
    weights: Vec<f64>,
}

impl AtomicMeasureSpace {
    pub fn new(labels: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyInput("measure space needs at least one atom"));
        }
        if labels.len() != weights.len() {
            return Err(Error::InvalidParameter(
                "one weight per atom required".into(),
            ));
        }
        let mut seen = std::collections::HashSet::new();
        if !labels.iter().all(|l| seen.insert(l.as_str())) {
            return Err(Error::InvalidParameter("atom labels must be distinct".into()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidParameter(
                "atom weights must be finite and nonnegative".into(),
            ));
        }
        if !weights.iter().any(|w| *w > 0.0) {
            return Err(Error::InvalidParameter(
                "at least one atom weight must be positive".into(),
            ));
        }
        Ok(Self { labels, weights })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The same atoms with every weight scaled by a positive constant; changes
    /// no null sets, hence no verdict.
    pub fn rescaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::InvalidParameter(
                "rescaling factor must be positive and finite".into(),
            ));
        }
        Ok(Self {
            labels: self.labels.clone(),
            weights: self.weights.iter().map(|w| w * factor).collect(),
        })
    }
}

/// A map from atoms to distributions; flows over the same space compare
/// atomwise, ignoring zero-weight atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct Flow {
    space: AtomicMeasureSpace,
    assignment: Vec<DiscreteDistribution>,
}

impl Flow {
    pub fn new(space: AtomicMeasureSpace, assignment: Vec<DiscreteDistribution>) -> Result<Self> {
        if assignment.len() != space.len() {
            return Err(Error::InvalidParameter(
                "every atom needs an assigned distribution".into(),
            ));
        }
        Ok(Self { space, assignment })
    }

    /// Constant flow assigning one distribution to every atom.
    pub fn constant(space: AtomicMeasureSpace, d: DiscreteDistribution) -> Self {
        let n = space.len();
        Self {
            space,
            assignment: vec![d; n],
        }
    }

    pub fn space(&self) -> &AtomicMeasureSpace {
        &self.space
    }

    pub fn assignment(&self) -> &[DiscreteDistribution] {
        &self.assignment
    }

    pub fn atom(&self, i: usize) -> &DiscreteDistribution {
        &self.assignment[i]
    }

    /// The same assignment over a positively rescaled space.
    pub fn rescaled(&self, factor: f64) -> Result<Self> {
        Ok(Self {
            space: self.space.rescaled(factor)?,
            assignment: self.assignment.clone(),
        })
    }
}

/// Verdict of an almost-everywhere order check; on failure the label of the
/// first positive-weight atom violating the order.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowOrderWitness {
    pub holds: bool,
    pub witness_atom: Option<String>,
}

fn check_same_space(a: &Flow, b: &Flow) -> Result<()> {
    if a.space != b.space {
        return Err(Error::MismatchedSpaces);
    }
    Ok(())
}

fn atom_order(order: Order) -> Result<Order> {
    match order {
        Order::St | Order::Icv | Order::Icx => Ok(order),
        Order::Cx => Err(Error::InvalidParameter(
            "flow comparisons are defined for st, icv and icx".into(),
        )),
    }
}

/// Does `a ≤ b` hold at every atom of positive weight?
pub fn leq_flow(a: &Flow, b: &Flow, order: Order) -> Result<FlowOrderWitness> {
    check_same_space(a, b)?;
    let order = atom_order(order)?;
    for (i, pi) in a.space.weights().iter().enumerate() {
        if *pi <= 0.0 {
            continue;
        }
        let ok = match order {
            Order::St => leq_st(a.atom(i), b.atom(i)).holds,
            _ => leq_order(a.atom(i), b.atom(i), order).holds,
        };
        if !ok {
            return Ok(FlowOrderWitness {
                holds: false,
                witness_atom: Some(a.space.labels()[i].clone()),
            });
        }
    }
    Ok(FlowOrderWitness {
        holds: true,
        witness_atom: None,
    })
}

/// Σ_atoms π_t · (order functional of μ_t); strictly increasing on the
/// almost-everywhere order.
pub fn flow_functional(f: &Flow, order: Order) -> Result<f64> {
    let order = atom_order(order)?;
    let functional = match order {
        Order::St => st_functional,
        Order::Icv => icv_functional,
        Order::Icx => icx_functional,
        Order::Cx => unreachable!("rejected above"),
    };
    Ok(f
        .space
        .weights()
        .iter()
        .zip(&f.assignment)
        .map(|(pi, d)| pi * functional(d))
        .sum())
}

/// Atomwise extremum of a nonempty finite family of flows over a common space.
pub fn ess_extremum_flow(family: &[Flow], order: Order, direction: Direction) -> Result<Flow> {
    let order = atom_order(order)?;
    let (first, rest) = family
        .split_first()
        .ok_or(Error::EmptyInput("flow extremum needs at least one member"))?;
    for f in rest {
        check_same_space(first, f)?;
    }
    let mut assignment = Vec::with_capacity(first.space.len());
    for i in 0..first.space.len() {
        let members: Vec<DiscreteDistribution> =
            family.iter().map(|f| f.atom(i).clone()).collect();
        let extremum = match order {
            Order::St => match direction {
                Direction::Sup => crate::order_first::sup_st(&members)?,
                Direction::Inf => crate::order_first::inf_st(&members)?,
            },
            _ => extremum_family(&members, order, direction)?,
        };
        assignment.push(extremum);
    }
    Flow::new(first.space.clone(), assignment)
}

/// Atomwise join of two flows (used as the default dominating selector in
/// tests and examples).
pub fn join_flow(a: &Flow, b: &Flow, order: Order) -> Result<Flow> {
    check_same_space(a, b)?;
    let order = atom_order(order)?;
    let mut assignment = Vec::with_capacity(a.space.len());
    for i in 0..a.space.len() {
        let joined = match order {
            Order::St => join_st(a.atom(i), b.atom(i)),
            _ => extremum_family(
                &[a.atom(i).clone(), b.atom(i).clone()],
                order,
                Direction::Sup,
            )?,
        };
        assignment.push(joined);
    }
    Flow::new(a.space.clone(), assignment)
}

/// Atomwise meet of two flows.
pub fn meet_flow(a: &Flow, b: &Flow, order: Order) -> Result<Flow> {
    check_same_space(a, b)?;
    let order = atom_order(order)?;
    let mut assignment = Vec::with_capacity(a.space.len());
    for i in 0..a.space.len() {
        let met = match order {
            Order::St => meet_st(a.atom(i), b.atom(i)),
            _ => extremum_family(
                &[a.atom(i).clone(), b.atom(i).clone()],
                order,
                Direction::Inf,
            )?,
        };
        assignment.push(met);
    }
    Flow::new(a.space.clone(), assignment)
}

/// Certificate of a countable-selection run: the monotone functional trace
/// F(x¹) ≤ F(x²) ≤ …, the number of enumerated members consumed, and whether
/// the run stopped because the increment fell below the tolerance.
#[derive(Debug, Clone)]
pub struct SupCertificate {
    pub functional_trace: Vec<f64>,
    pub elements_consumed: usize,
    pub converged: bool,
}

/// Countable-selection essential supremum of a directed family of flows.
///
/// Maintains the running member x¹ := y¹, x^{n+1} := dominator(xⁿ, y^{n+1}) and
/// the monotone functional trace; stops when the functional increment drops
/// below `tolerance` (0 disables the early stop), the enumerator is exhausted
/// (exact for finite enumerations) or `max_steps` members were consumed. For
/// st an upper-bound flow should be supplied for unbounded enumerations; for
/// icv/icx a uniformly integrable bound per the order-bound characterization.
/// The run fails if the running member escapes the supplied bound.
pub fn ess_sup_countable(
    mut family: DirectedFamily<'_, Flow>,
    order: Order,
    tolerance: f64,
    max_steps: usize,
    bound: Option<&Flow>,
) -> Result<(Flow, SupCertificate)> {
    if !(tolerance >= 0.0) {
        return Err(Error::InvalidParameter(
            "tolerance must be a nonnegative real".into(),
        ));
    }
    if max_steps == 0 {
        return Err(Error::InvalidParameter("max_steps must be positive".into()));
    }
    let order = atom_order(order)?;
    let first = family
        .next_member()
        .ok_or(Error::EmptyInput("directed family enumerated no members"))?;
    if let Some(b) = bound {
        if !leq_flow(&first, b, order)?.holds {
            return Err(Error::Unbounded);
        }
    }
    let mut current = first;
    let mut trace = vec![flow_functional(&current, order)?];
    let mut consumed = 1;
    let converged = loop {
        if consumed >= max_steps {
            break false;
        }
        let Some(next) = family.next_member() else {
            break true;
        };
        consumed += 1;
        let z = family.dominate(&current, &next).ok_or(Error::NotDirected)?;
        check_same_space(&current, &z)?;
        if !leq_flow(&current, &z, order)?.holds || !leq_flow(&next, &z, order)?.holds {
            return Err(Error::NotDirected);
        }
        if let Some(b) = bound {
            if !leq_flow(&z, b, order)?.holds {
                return Err(Error::Unbounded);
            }
        }
        let prev = *trace.last().expect("nonempty");
        // F is monotone along the chain; clamp out floating-point noise
        let value = flow_functional(&z, order)?.max(prev);
        let increment = value - prev;
        trace.push(value);
        current = z;
        if tolerance > 0.0 && increment < tolerance {
            break true;
        }
    };
    Ok((
        current,
        SupCertificate {
            functional_trace: trace,
            elements_consumed: consumed,
            converged,
        },
    ))
}
