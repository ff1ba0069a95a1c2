//! Increasing concave/convex orders: checks on the integrated transforms,
//! joins and meets through concave/convex envelopes, the mean identities of
//! family extrema, and reflection duality.
//!
//! Run with `cargo run -p sdlattice --example second_order_envelopes`.

use sdlattice::order_second::{
    extremum_family, icv_functional, icx_functional, join_icv, join_icx, leq_order, meet_icv,
    meet_icx,
};
use sdlattice::{DiscreteDistribution, Direction, Order};

fn show(label: &str, d: &DiscreteDistribution) {
    println!(
        "{label}: support {:?} weights {:?} (mean {:.4})",
        d.support(),
        d.weights(),
        d.mean()
    );
}

fn main() {
    let spread = DiscreteDistribution::from_pairs([(0.0, 0.5), (2.0, 0.5)]).unwrap();
    let point = DiscreteDistribution::dirac(1.5);

    // a mean-preserving spread sits above its mean in the convex order
    let mean_point = DiscreteDistribution::dirac(1.0);
    println!(
        "dirac(1) <=_cx spread? {}",
        leq_order(&mean_point, &spread, Order::Cx).holds
    );

    let w = leq_order(&spread, &point, Order::Icx);
    println!("spread <=_icx point? {} (witness {:?})", w.holds, w.witness);

    // pointwise max of the integrated survival functions
    show("join_icx", &join_icx(&spread, &point).unwrap());
    // greatest convex minorant of their pointwise min
    show("meet_icx", &meet_icx(&spread, &point).unwrap());

    let base = DiscreteDistribution::dirac(0.0);
    let wide = DiscreteDistribution::from_pairs([(-1.0, 0.5), (10.0, 0.5)]).unwrap();
    // least concave majorant / pointwise min of the integrated CDFs
    show("join_icv", &join_icv(&base, &wide).unwrap());
    show("meet_icv", &meet_icv(&base, &wide).unwrap());

    // family extrema realize the extreme means
    let family = vec![spread.clone(), point.clone(), base.clone()];
    let sup = extremum_family(&family, Order::Icx, Direction::Sup).unwrap();
    let inf = extremum_family(&family, Order::Icv, Direction::Inf).unwrap();
    println!("sup_icx mean = {:.4} (largest member mean)", sup.mean());
    println!("inf_icv mean = {:.4} (smallest member mean)", inf.mean());

    // reflecting both sides swaps the two orders
    let duality = leq_order(&spread, &point, Order::Icx).holds
        == leq_order(&point.reflect(), &spread.reflect(), Order::Icv).holds;
    println!("reflection duality holds: {duality}");

    println!(
        "normal-kernel functionals: icx {:.6}, icv {:.6}",
        icx_functional(&spread),
        icv_functional(&spread)
    );
}
