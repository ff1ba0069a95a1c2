//! First order stochastic dominance: order checks with witnesses, pairwise
//! joins and meets through survival functions, family extrema and the strictly
//! increasing functional.
//!
//! Run with `cargo run -p sdlattice --example first_order_lattice`.

use sdlattice::order_first::{inf_st, join_st, leq_st, meet_st, st_functional, sup_st};
use sdlattice::DiscreteDistribution;

fn main() {
    let spread = DiscreteDistribution::from_pairs([(0.0, 0.5), (2.0, 0.5)]).unwrap();
    let point = DiscreteDistribution::dirac(1.5);

    let forward = leq_st(&spread, &point);
    println!(
        "spread <=_st point? {} (witness: {:?})",
        forward.holds, forward.witness
    );
    let backward = leq_st(&point, &spread);
    println!(
        "point  <=_st spread? {} (witness: {:?})",
        backward.holds, backward.witness
    );

    let join = join_st(&spread, &point);
    let meet = meet_st(&spread, &point);
    println!("join_st support {:?} weights {:?}", join.support(), join.weights());
    println!("meet_st support {:?} weights {:?}", meet.support(), meet.weights());

    // the join dominates both arguments, the meet is dominated by both
    assert!(leq_st(&spread, &join).holds && leq_st(&point, &join).holds);
    assert!(leq_st(&meet, &spread).holds && leq_st(&meet, &point).holds);

    let family = vec![
        spread.clone(),
        point.clone(),
        DiscreteDistribution::dirac(0.0),
    ];
    let sup = sup_st(&family).unwrap();
    let inf = inf_st(&family).unwrap();
    println!("family sup support {:?}", sup.support());
    println!("family inf support {:?}", inf.support());

    // the normal-CDF functional orders the chain strictly
    for d in [&inf, &spread, &sup] {
        println!("st functional = {:.6}", st_functional(d));
    }
}
