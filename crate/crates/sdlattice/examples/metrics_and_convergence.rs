//! Wasserstein-1, Kolmogorov and Lévy distances, and monotone approximation of
//! the supremum of a directed family with a convergence trace.
//!
//! Run with `cargo run -p sdlattice --example metrics_and_convergence`.

use sdlattice::metrics::{
    kolmogorov, levy, monotone_sup_approx, wasserstein1, DirectedFamily, DEFAULT_MAX_STEPS,
};
use sdlattice::order_first::join_st;
use sdlattice::{DiscreteDistribution, Direction, Order};

fn main() {
    let spread = DiscreteDistribution::from_pairs([(0.0, 0.5), (2.0, 0.5)]).unwrap();
    let point = DiscreteDistribution::dirac(1.0);
    println!("w1(spread, point)         = {}", wasserstein1(&spread, &point));
    println!("kolmogorov(spread, point) = {}", kolmogorov(&spread, &point));
    println!("levy(spread, point)       = {:.10}", levy(&spread, &point));

    // a directed chain of Dirac masses creeping up to 1
    let members = (1..=200).map(|n| DiscreteDistribution::dirac(1.0 - 1.0 / n as f64));
    let family = DirectedFamily::new(members, |x: &DiscreteDistribution, y: &_| {
        Some(join_st(x, y))
    });
    let run = monotone_sup_approx(family, Order::St, Direction::Sup, 1e-4, DEFAULT_MAX_STEPS)
        .unwrap();
    println!(
        "chain run: {} members consumed, converged = {}",
        run.sequence.len(),
        run.converged
    );
    println!("limit support: {:?}", run.limit.support());
    let top = DiscreteDistribution::dirac(1.0);
    for (i, x) in run.sequence.iter().enumerate().step_by(25) {
        println!(
            "  step {:3}: levy to the true supremum = {:.6}",
            i + 1,
            levy(x, &top)
        );
    }
    let gaps: Vec<f64> = run.trace.iter().rev().take(3).copied().collect();
    println!("final stopping gaps: {gaps:?}");
}
