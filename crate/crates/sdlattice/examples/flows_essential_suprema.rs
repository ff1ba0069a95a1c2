//! Flows of distributions over a finite atomic measure space:
//! almost-everywhere order, the weighted functional, atomwise essential
//! extrema and the countable-selection supremum with its certificate.
//!
//! Run with `cargo run -p sdlattice --example flows_essential_suprema`.

use sdlattice::flows::{
    ess_extremum_flow, ess_sup_countable, flow_functional, join_flow, leq_flow,
    AtomicMeasureSpace, Flow,
};
use sdlattice::metrics::DirectedFamily;
use sdlattice::{DiscreteDistribution, Direction, Order};

fn main() {
    let space = AtomicMeasureSpace::new(
        vec!["low".into(), "mid".into(), "null".into()],
        vec![1.0, 2.0, 0.0],
    )
    .unwrap();

    let a = Flow::new(
        space.clone(),
        vec![
            DiscreteDistribution::dirac(0.0),
            DiscreteDistribution::from_pairs([(0.0, 0.5), (2.0, 0.5)]).unwrap(),
            DiscreteDistribution::dirac(99.0), // weight zero: ignored a.e.
        ],
    )
    .unwrap();
    let b = Flow::new(
        space.clone(),
        vec![
            DiscreteDistribution::dirac(1.0),
            DiscreteDistribution::dirac(1.5),
            DiscreteDistribution::dirac(0.0),
        ],
    )
    .unwrap();

    let w = leq_flow(&a, &b, Order::St).unwrap();
    println!("a <=_st b a.e.? {} (witness atom {:?})", w.holds, w.witness_atom);
    println!(
        "functionals: F(a) = {:.6}, F(b) = {:.6}",
        flow_functional(&a, Order::St).unwrap(),
        flow_functional(&b, Order::St).unwrap()
    );

    let sup = ess_extremum_flow(&[a.clone(), b.clone()], Order::Icx, Direction::Sup).unwrap();
    for (label, d) in space.labels().iter().zip(sup.assignment()) {
        println!("essential sup at {label}: support {:?}", d.support());
    }

    // a directed chain of flows enumerated lazily
    let members = (1..=40).map({
        let space = space.clone();
        move |n| {
            Flow::constant(
                space.clone(),
                DiscreteDistribution::dirac(1.0 - 1.0 / n as f64),
            )
        }
    });
    let bound = Flow::constant(space.clone(), DiscreteDistribution::dirac(1.0));
    let family = DirectedFamily::new(members, |x: &Flow, y: &Flow| {
        join_flow(x, y, Order::St).ok()
    });
    let (x_star, cert) =
        ess_sup_countable(family, Order::St, 1e-6, 1000, Some(&bound)).unwrap();
    println!(
        "countable selection consumed {} members (converged = {})",
        cert.elements_consumed, cert.converged
    );
    println!(
        "running supremum at atom 'low': support {:?}",
        x_star.atom(0).support()
    );
    let trace = &cert.functional_trace;
    println!(
        "functional climbed from {:.6} to {:.6}",
        trace[0],
        trace[trace.len() - 1]
    );
}
