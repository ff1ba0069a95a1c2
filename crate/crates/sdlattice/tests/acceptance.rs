//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! and enforcing its runtime budget. Derived golden values are re-derived by
//! independent oracles (definition sums, dense grids, discrete hulls) before
//! being asserted.

mod common;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::Rng;
use sdlattice::flows::{
    ess_extremum_flow, ess_sup_countable, flow_functional, join_flow, leq_flow,
    AtomicMeasureSpace, Flow,
};
use sdlattice::integrability::{
    build_psi_dlvp, build_psi_strict, build_psi_tight, MeasureFamily, NonnegMeasure, PsiFunction,
};
use sdlattice::metrics::{kolmogorov, levy, monotone_sup_approx, wasserstein1, DirectedFamily};
use sdlattice::order_first::{join_st, leq_st, meet_st, sup_st};
use sdlattice::order_second::{
    extremum_family, join_icv, join_icx, leq_order, meet_icv,
    meet_icx,
};
use sdlattice::{DiscreteDistribution, Direction, Order};

fn suite_start() -> Instant {
    static START: OnceLock<Instant> = OnceLock::new();
    *START.get_or_init(Instant::now)
}

fn finish(criterion: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "{criterion} exceeded its {budget:?} budget: {elapsed:?}"
    );
    println!("acceptance {criterion}: PASS ({elapsed:.2?})");
}

fn dist(pairs: &[(f64, f64)]) -> DiscreteDistribution {
    DiscreteDistribution::from_pairs(pairs.iter().copied()).unwrap()
}

fn translate(d: &DiscreteDistribution, delta: f64) -> DiscreteDistribution {
    DiscreteDistribution::from_pairs(d.points().map(|(x, w)| (x + delta, w))).unwrap()
}

fn recentre(d: &DiscreteDistribution) -> DiscreteDistribution {
    translate(d, -d.mean())
}

fn pairwise(
    a: &DiscreteDistribution,
    b: &DiscreteDistribution,
    order: Order,
    direction: Direction,
) -> DiscreteDistribution {
    match (order, direction) {
        (Order::St, Direction::Sup) => join_st(a, b),
        (Order::St, Direction::Inf) => meet_st(a, b),
        (Order::Icx, Direction::Sup) => join_icx(a, b).unwrap(),
        (Order::Icx, Direction::Inf) => meet_icx(a, b).unwrap(),
        (Order::Icv, Direction::Sup) => join_icv(a, b).unwrap(),
        (Order::Icv, Direction::Inf) => meet_icv(a, b).unwrap(),
        (Order::Cx, _) => unreachable!("no cx lattice operations"),
    }
}

fn holds(a: &DiscreteDistribution, b: &DiscreteDistribution, order: Order) -> bool {
    match order {
        Order::St => leq_st(a, b).holds,
        o => leq_order(a, b, o).holds,
    }
}

#[test]
fn criterion_01_lattice_laws() {
    let start = suite_start();
    let t0 = Instant::now();
    let mut rng = common::rng(101);
    let tol = 1e-9;
    for _ in 0..1000 {
        let a = common::random_dist(&mut rng, 8, -10.0, 10.0);
        let b = common::random_dist(&mut rng, 8, -10.0, 10.0);
        let c = common::random_dist(&mut rng, 8, -10.0, 10.0);
        for order in [Order::St, Order::Icv, Order::Icx] {
            for direction in [Direction::Sup, Direction::Inf] {
                let op = |x: &DiscreteDistribution, y: &DiscreteDistribution| {
                    pairwise(x, y, order, direction)
                };
                assert!(common::w1_close(&op(&a, &a), &a, tol), "idempotence {order}");
                assert!(
                    common::w1_close(&op(&a, &b), &op(&b, &a), tol),
                    "commutativity {order}"
                );
                assert!(
                    common::w1_close(&op(&op(&a, &b), &c), &op(&a, &op(&b, &c)), tol),
                    "associativity {order}"
                );
            }
            let j = pairwise(&a, &pairwise(&a, &b, order, Direction::Inf), order, Direction::Sup);
            assert!(common::w1_close(&j, &a, tol), "absorption {order}");
            let m = pairwise(&a, &pairwise(&a, &b, order, Direction::Sup), order, Direction::Inf);
            assert!(common::w1_close(&m, &a, tol), "dual absorption {order}");
        }
    }
    assert!(t0.elapsed() < Duration::from_secs(30), "criterion 1 runtime bound");
    finish("criterion 1 (lattice laws)", start, Duration::from_secs(30));
}

#[test]
fn criterion_02_bounds_and_least_bounds() {
    let start = suite_start();
    let mut rng = common::rng(202);
    for _ in 0..1000 {
        let a = common::random_dist(&mut rng, 8, -10.0, 10.0);
        let b = common::random_dist(&mut rng, 8, -10.0, 10.0);
        let c = common::random_dist(&mut rng, 8, -10.0, 10.0);
        let shift: f64 = rng.gen_range(0.0..3.0);
        for order in [Order::St, Order::Icv, Order::Icx] {
            let j = pairwise(&a, &b, order, Direction::Sup);
            assert!(holds(&a, &j, order) && holds(&b, &j, order), "join bounds {order}");
            let m = pairwise(&a, &b, order, Direction::Inf);
            assert!(holds(&m, &a, order) && holds(&m, &b, order), "meet bounds {order}");
            // common upper bounds: a fold with a third member, and a translate
            let kappa = pairwise(&j, &c, order, Direction::Sup);
            assert!(holds(&j, &kappa, order), "least upper bound {order}");
            let lifted = translate(&j, shift);
            assert!(holds(&a, &lifted, order) && holds(&b, &lifted, order));
            assert!(holds(&j, &lifted, order), "least vs translate {order}");
            let kappa = pairwise(&m, &c, order, Direction::Inf);
            assert!(holds(&kappa, &m, order), "greatest lower bound {order}");
            let lowered = translate(&m, -shift);
            assert!(holds(&lowered, &m, order), "greatest vs translate {order}");
        }
        // convex order: the icx operations restricted to a common mean
        let (a0, b0, c0) = (recentre(&a), recentre(&b), recentre(&c));
        let j = join_icx(&a0, &b0).unwrap();
        assert!(holds(&a0, &j, Order::Cx) && holds(&b0, &j, Order::Cx), "cx join bounds");
        let kappa = join_icx(&j, &c0).unwrap();
        assert!(holds(&j, &kappa, Order::Cx), "cx least upper bound");
        let m = meet_icx(&a0, &b0).unwrap();
        assert!(holds(&m, &a0, Order::Cx) && holds(&m, &b0, Order::Cx), "cx meet bounds");
        let kappa = meet_icx(&m, &c0).unwrap();
        assert!(holds(&kappa, &m, Order::Cx), "cx greatest lower bound");
    }
    finish("criterion 2 (bound/least-bound)", start, Duration::from_secs(30));
}

#[test]
fn criterion_03_exact_derived_instances() {
    let start = suite_start();
    let spread = dist(&[(0.0, 0.5), (2.0, 0.5)]);
    let mid = DiscreteDistribution::dirac(1.5);
    let point = DiscreteDistribution::dirac(0.0);
    let wide = dist(&[(-1.0, 0.5), (10.0, 0.5)]);

    // first order: re-derive through the pointwise survival extremum on a grid
    let join1 = join_st(&spread, &mid);
    let meet1 = meet_st(&spread, &mid);
    for &s in &common::envelope_grid(&spread, &mid, 1e-3) {
        let (f, g) = (spread.survival(s), mid.survival(s));
        assert!((join1.survival(s) - f.max(g)).abs() < 1e-12);
        assert!((meet1.survival(s) - f.min(g)).abs() < 1e-12);
    }
    assert!(common::componentwise_close(&join1, &dist(&[(1.5, 0.5), (2.0, 0.5)]), 1e-9));
    assert!(common::componentwise_close(&meet1, &dist(&[(0.0, 0.5), (1.5, 0.5)]), 1e-9));

    // increasing convex join: pointwise max of the transforms on a grid
    let join2 = join_icx(&spread, &mid).unwrap();
    for &s in &common::envelope_grid(&spread, &mid, 1e-3) {
        let hi = spread.icx_at(s).max(mid.icx_at(s));
        assert!((join2.icx_at(s) - hi).abs() < 1e-9);
    }
    assert!(common::componentwise_close(&join2, &dist(&[(1.0, 0.5), (2.0, 0.5)]), 1e-9));

    // increasing convex meet: dense-grid lower hull oracle
    let meet2 = meet_icx(&spread, &mid).unwrap();
    let grid = common::envelope_grid(&spread, &mid, 1e-3);
    let pts: Vec<(f64, f64)> = grid
        .iter()
        .map(|&s| (s, spread.icx_at(s).min(mid.icx_at(s))))
        .collect();
    let hull = common::oracle_lower_hull(&pts);
    for &s in &grid {
        assert!((meet2.icx_at(s) - common::polyline_value(&hull, s)).abs() < 1e-6);
    }
    assert!(common::componentwise_close(
        &meet2,
        &dist(&[(0.0, 1.0 / 3.0), (1.5, 2.0 / 3.0)]),
        1e-9
    ));

    // increasing concave join: dense-grid upper hull oracle
    let join3 = join_icv(&point, &wide).unwrap();
    let grid = common::envelope_grid(&point, &wide, 1e-3);
    let neg: Vec<(f64, f64)> = grid
        .iter()
        .map(|&s| (s, -point.icv_at(s).max(wide.icv_at(s))))
        .collect();
    let hull = common::oracle_lower_hull(&neg);
    for &s in &grid {
        assert!((join3.icv_at(s) + common::polyline_value(&hull, s)).abs() < 1e-6);
    }
    assert!(common::componentwise_close(&join3, &dist(&[(0.0, 0.55), (10.0, 0.45)]), 1e-9));

    // increasing concave meet: pointwise min of the transforms
    let meet3 = meet_icv(&point, &wide).unwrap();
    for &s in &grid {
        let lo = point.icv_at(s).min(wide.icv_at(s));
        assert!((meet3.icv_at(s) - lo).abs() < 1e-9);
    }
    assert!(common::componentwise_close(&meet3, &dist(&[(-1.0, 0.5), (1.0, 0.5)]), 1e-9));

    finish("criterion 3 (exact derived instances)", start, Duration::from_secs(30));
}

#[test]
fn criterion_04_order_implications() {
    let start = suite_start();
    let mut rng = common::rng(404);
    // st implies icv and icx on constructed comparable pairs
    for _ in 0..1000 {
        let a = common::random_dist(&mut rng, 8, -10.0, 10.0);
        let k = common::random_dist(&mut rng, 8, -10.0, 10.0);
        let b = join_st(&a, &k);
        assert!(leq_st(&a, &b).holds);
        assert!(leq_order(&a, &b, Order::Icv).holds, "st implies icv");
        assert!(leq_order(&a, &b, Order::Icx).holds, "st implies icx");
    }
    // cx decomposition and reflection duality on random pairs
    for _ in 0..1000 {
        let a = common::random_dist(&mut rng, 8, -10.0, 10.0);
        let b = common::random_dist(&mut rng, 8, -10.0, 10.0);
        let cx = leq_order(&a, &b, Order::Cx).holds;
        let parts = leq_order(&b, &a, Order::Icv).holds && leq_order(&a, &b, Order::Icx).holds;
        assert_eq!(cx, parts, "cx decomposition");
        let fwd = leq_order(&a, &b, Order::Icx).holds;
        let dual = leq_order(&b.reflect(), &a.reflect(), Order::Icv).holds;
        assert_eq!(fwd, dual, "reflection duality");
        // and equal-mean pairs decompose both ways
        let (a0, b0) = (recentre(&a), recentre(&b));
        assert_eq!(
            leq_order(&b0, &a0, Order::Icv).holds,
            leq_order(&a0, &b0, Order::Icx).holds,
            "equal-mean collapse"
        );
    }
    // Jensen bounds
    for _ in 0..500 {
        let d = common::random_dist(&mut rng, 8, -10.0, 10.0);
        let lift: f64 = rng.gen_range(0.0..5.0);
        assert!(leq_order(&d, &DiscreteDistribution::dirac(d.mean() + lift), Order::Icv).holds);
        assert!(leq_order(&DiscreteDistribution::dirac(d.mean() - lift), &d, Order::Icx).holds);
    }
    finish("criterion 4 (order implications)", start, Duration::from_secs(30));
}

#[test]
fn criterion_05_mean_identities() {
    let start = suite_start();
    let mut rng = common::rng(505);
    for _ in 0..200 {
        let family: Vec<DiscreteDistribution> = (0..rng.gen_range(1..=6))
            .map(|_| common::random_dist(&mut rng, 8, -10.0, 10.0))
            .collect();
        let min_mean = family.iter().map(|d| d.mean()).fold(f64::INFINITY, f64::min);
        let max_mean = family.iter().map(|d| d.mean()).fold(f64::NEG_INFINITY, f64::max);
        let inf = extremum_family(&family, Order::Icv, Direction::Inf).unwrap();
        let sup = extremum_family(&family, Order::Icx, Direction::Sup).unwrap();
        assert!((inf.mean() - min_mean).abs() < 1e-9, "infimum mean identity");
        assert!((sup.mean() - max_mean).abs() < 1e-9, "supremum mean identity");
    }
    finish("criterion 5 (mean identities)", start, Duration::from_secs(30));
}

#[test]
fn criterion_06_envelope_oracle() {
    let start = suite_start();
    let mut rng = common::rng(606);
    for _ in 0..200 {
        let a = common::random_dist(&mut rng, 8, -10.0, 10.0);
        let b = common::random_dist(&mut rng, 8, -10.0, 10.0);
        let grid = common::envelope_grid(&a, &b, 1e-3);

        let meet = meet_icx(&a, &b).unwrap();
        let pts: Vec<(f64, f64)> = grid
            .iter()
            .map(|&s| (s, a.icx_at(s).min(b.icx_at(s))))
            .collect();
        let hull = common::oracle_lower_hull(&pts);
        let worst = grid
            .iter()
            .map(|&s| (meet.icx_at(s) - common::polyline_value(&hull, s)).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-6, "meet_icx envelope sup-norm {worst}");

        let join = join_icv(&a, &b).unwrap();
        let neg: Vec<(f64, f64)> = grid
            .iter()
            .map(|&s| (s, -a.icv_at(s).max(b.icv_at(s))))
            .collect();
        let hull = common::oracle_lower_hull(&neg);
        let worst = grid
            .iter()
            .map(|&s| (join.icv_at(s) + common::polyline_value(&hull, s)).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-6, "join_icv envelope sup-norm {worst}");
    }
    finish("criterion 6 (envelope oracle)", start, Duration::from_secs(60));
}

#[test]
fn criterion_07_metric_oracles_and_axioms() {
    let start = suite_start();
    let mut rng = common::rng(707);
    // sorted-sample oracle on equal-weight empirical pairs
    for _ in 0..200 {
        let n = rng.gen_range(2..=1000);
        let mut xs: Vec<f64> = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
        let mut ys: Vec<f64> = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
        let a = DiscreteDistribution::from_pairs(xs.iter().map(|&x| (x, 1.0))).unwrap();
        let b = DiscreteDistribution::from_pairs(ys.iter().map(|&y| (y, 1.0))).unwrap();
        xs.sort_by(f64::total_cmp);
        ys.sort_by(f64::total_cmp);
        let oracle: f64 = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (x - y).abs())
            .sum::<f64>()
            / n as f64;
        assert!((wasserstein1(&a, &b) - oracle).abs() < 1e-9, "sorted-sample oracle");
    }
    // metric axioms
    for _ in 0..1000 {
        let a = common::random_dist(&mut rng, 8, -10.0, 10.0);
        let b = common::random_dist(&mut rng, 8, -10.0, 10.0);
        let c = common::random_dist(&mut rng, 8, -10.0, 10.0);
        for metric in [wasserstein1, kolmogorov, levy] {
            assert!(metric(&a, &a).abs() < 1e-9, "identity");
            assert!((metric(&a, &b) - metric(&b, &a)).abs() < 1e-9, "symmetry");
            assert!(
                metric(&a, &c) <= metric(&a, &b) + metric(&b, &c) + 1e-9,
                "triangle inequality"
            );
        }
        assert!(levy(&a, &b) <= kolmogorov(&a, &b) + 1e-9, "levy below kolmogorov");
    }
    finish("criterion 7 (metric oracles)", start, Duration::from_secs(60));
}

#[test]
fn criterion_08_convergence() {
    let start = suite_start();
    // Dirac chain: the monotone member sequence approaches the analytic
    // supremum at Lévy rate exactly 1/n
    let members = (1..=100).map(|n| DiscreteDistribution::dirac(1.0 - 1.0 / n as f64));
    let family = DirectedFamily::new(members, |x: &DiscreteDistribution, y: &_| {
        Some(join_st(x, y))
    });
    let run = monotone_sup_approx(family, Order::St, Direction::Sup, 0.0, 100).unwrap();
    assert_eq!(run.sequence.len(), 100);
    let top = DiscreteDistribution::dirac(1.0);
    for (i, x) in run.sequence.iter().enumerate() {
        let expected = 1.0 / (i + 1) as f64;
        assert!((levy(x, &top) - expected).abs() < 1e-9, "levy rate at step {i}");
    }
    // finite truncation converges to the exact fold
    let members: Vec<DiscreteDistribution> = (1..=50)
        .map(|n| DiscreteDistribution::dirac(1.0 - 1.0 / n as f64))
        .collect();
    let family = DirectedFamily::new(members.clone().into_iter(), |x: &DiscreteDistribution, y: &_| {
        Some(join_st(x, y))
    });
    let run = monotone_sup_approx(family, Order::St, Direction::Sup, 1e-12, 1000).unwrap();
    assert!(run.converged);
    assert_eq!(run.limit, sup_st(&members).unwrap());

    // icx-monotone bounded chain reaches its fold limit in Wasserstein-1
    let members = (1..=60).map(|n| {
        dist(&[(0.0, 0.5), (2.0 - 2.0_f64.powi(1 - n), 0.5)])
    });
    let family = DirectedFamily::new(members, |x: &DiscreteDistribution, y: &_| {
        join_icx(x, y).ok()
    });
    let run = monotone_sup_approx(family, Order::Icx, Direction::Sup, 1e-7, 200).unwrap();
    assert!(run.converged, "icx chain converges within the step budget");
    assert!(*run.trace.last().unwrap() < 1e-7);
    let last = run.sequence.last().unwrap();
    assert!(wasserstein1(last, &run.limit) < 1e-6, "within 1e-6 of the fold limit");
    let means: Vec<f64> = run.sequence.iter().map(|d| d.mean()).collect();
    assert!(means.windows(2).all(|w| w[1] >= w[0] - 1e-12), "means nondecreasing");
    assert!(run.limit.mean() >= means[means.len() - 1] - 1e-12);

    finish("criterion 8 (convergence)", start, Duration::from_secs(30));
}

#[test]
fn criterion_09_psi_suites() {
    let start = suite_start();
    let mut rng = common::rng(909);
    let markov_grid: Vec<f64> = (0..40).map(|k| 0.05 + 0.37 * k as f64).collect();
    for case in 0..100 {
        let members: Vec<NonnegMeasure> = (0..rng.gen_range(1..=4))
            .map(|_| {
                let n = rng.gen_range(1..=6);
                let pairs: Vec<(f64, f64)> = (0..n)
                    .map(|_| (rng.gen_range(0.0..10.0), rng.gen_range(0.05..1.0)))
                    .collect();
                NonnegMeasure::from_pairs(pairs).unwrap()
            })
            .collect();
        let family = MeasureFamily::explicit(members.clone()).unwrap();

        // tightness construction: certificate at most one, Markov-consistent
        for continuous in [true, false] {
            let tp = build_psi_tight(&family, 6, continuous).unwrap();
            assert!(tp.certificate <= 1.0 + 1e-9, "tight certificate case {case}");
            for &s in &markov_grid {
                let v = tp.psi.value(s);
                if v > 0.0 {
                    assert!(
                        family.tail_sup(s).unwrap() <= tp.certificate / v + 1e-9,
                        "Markov consistency (tight)"
                    );
                }
            }
            if let PsiFunction::Continuous(f) = &tp.psi {
                assert_eq!(f.value(0.0), 0.0);
            }
        }

        // strictly increasing variant, exact certificate
        let sp = build_psi_strict(&family, 1.0, 6).unwrap();
        for slope in sp.psi.segment_slopes() {
            assert!(slope > 0.0, "strict psi slope");
        }
        for &s in &markov_grid {
            let v = sp.psi.value(s);
            if v > 0.0 {
                assert!(
                    family.tail_sup(s).unwrap() <= sp.certificate / v + 1e-9,
                    "Markov consistency (strict)"
                );
            }
        }

        // De La Vallée Poussin construction at alpha = 1/2
        let dp = build_psi_dlvp(&family, 0.5).unwrap();
        assert!(dp.psi.is_convex(1e-12), "dlvp convexity");
        assert!(dp.eta_moment_bound <= 1.0 + 1e-9, "eta certificate");
        let mut prev_ratio = 0.0;
        for k in 1..=100 {
            let s = k as f64 * 0.12;
            let ratio = dp.psi.value(s) / s;
            assert!(ratio >= prev_ratio - 1e-12, "psi(s)/s nondecreasing");
            prev_ratio = ratio;
        }
        for &s in &markov_grid {
            let bound = dp.ui_bound(s);
            if !bound.is_finite() {
                continue;
            }
            let tail_int = members
                .iter()
                .map(|m| {
                    m.points()
                        .filter(|&(x, _)| x > s)
                        .map(|(x, w)| w * dp.psi.value(x))
                        .sum::<f64>()
                })
                .fold(0.0, f64::max);
            assert!(tail_int <= bound * (1.0 + 1e-9), "Hölder ratio at s = {s}");
        }
        for &s in &markov_grid {
            let v = dp.psi.value(s);
            if v > 0.0 {
                assert!(
                    family.tail_sup(s).unwrap() <= dp.psi_integral_bound / v + 1e-9,
                    "Markov consistency (dlvp)"
                );
            }
        }
    }

    // a family with light tails exercises the Hölder machinery away from the
    // degenerate all-zero case
    {
        let members = vec![
            NonnegMeasure::from_pairs([(0.0, 0.55), (1.0, 0.4), (6.0, 0.05)]).unwrap(),
            NonnegMeasure::from_pairs([(0.5, 0.9), (3.0, 0.1)]).unwrap(),
        ];
        let family = MeasureFamily::explicit(members.clone()).unwrap();
        let dp = build_psi_dlvp(&family, 0.5).unwrap();
        assert!(dp.eta_moment_bound > 0.0 && dp.eta_moment_bound <= 1.0 + 1e-9);
        let mut nontrivial = 0;
        for s in [1.5, 2.0, 3.0, 4.0, 5.0] {
            let bound = dp.ui_bound(s);
            if !bound.is_finite() {
                continue;
            }
            let tail_int = members
                .iter()
                .map(|m| {
                    m.points()
                        .filter(|&(x, _)| x > s)
                        .map(|(x, w)| w * dp.psi.value(x))
                        .sum::<f64>()
                })
                .fold(0.0, f64::max);
            assert!(tail_int <= bound * (1.0 + 1e-9));
            if tail_int > 0.0 {
                nontrivial += 1;
            }
        }
        assert!(nontrivial > 0, "Hölder check must see positive mass");
    }

    // probability families certify the geometric coefficient bound
    for _ in 0..50 {
        let n = rng.gen_range(1..=6);
        let pairs: Vec<(f64, f64)> = (0..n)
            .map(|_| (rng.gen_range(0.0..10.0), rng.gen_range(0.05..1.0)))
            .collect();
        let d = DiscreteDistribution::from_pairs(pairs).unwrap();
        let m = NonnegMeasure::from_pairs(d.points()).unwrap();
        let family = MeasureFamily::explicit(vec![m]).unwrap();
        let sp = build_psi_strict(&family, 2.0, 6).unwrap();
        let weighted: f64 = sp
            .coefficients
            .iter()
            .zip(&sp.bin_tails)
            .map(|(c, a)| c * a)
            .sum();
        assert!(weighted <= 1.0 + 1e-12, "geometric bound on probability family");
    }
    finish("criterion 9 (psi suites)", start, Duration::from_secs(60));
}

#[test]
fn criterion_10_flows() {
    let start = suite_start();
    let mut rng = common::rng(1010);

    // countable selection is exact on finite enumerations
    for _ in 0..100 {
        let atom_count = rng.gen_range(1..=10);
        let weights: Vec<f64> = (0..atom_count)
            .map(|i| if i == 0 { rng.gen_range(0.1..2.0) } else { rng.gen_range(0.0..2.0) })
            .collect();
        let labels = (0..atom_count).map(|i| format!("t{i}")).collect();
        let space = AtomicMeasureSpace::new(labels, weights).unwrap();
        let flow_count = rng.gen_range(1..=20);
        let flows: Vec<Flow> = (0..flow_count)
            .map(|_| {
                let assignment = (0..atom_count)
                    .map(|_| common::random_dist(&mut rng, 5, -10.0, 10.0))
                    .collect();
                Flow::new(space.clone(), assignment).unwrap()
            })
            .collect();
        for order in [Order::St, Order::Icv, Order::Icx] {
            let family = DirectedFamily::new(flows.clone().into_iter(), |x: &Flow, y: &Flow| {
                join_flow(x, y, order).ok()
            });
            let (sup, cert) = ess_sup_countable(family, order, 0.0, 10_000, None).unwrap();
            let exact = ess_extremum_flow(&flows, order, Direction::Sup).unwrap();
            assert_eq!(sup, exact, "countable selection exactness ({order})");
            assert_eq!(cert.elements_consumed, flow_count);
            assert!(cert.functional_trace.windows(2).all(|w| w[1] >= w[0]));
        }
    }

    // functional strict monotonicity on comparable distinct pairs
    for order in [Order::St, Order::Icv, Order::Icx] {
        let mut checked = 0;
        while checked < 1000 {
            let atom_count = rng.gen_range(1..=4);
            let weights: Vec<f64> = (0..atom_count).map(|_| rng.gen_range(0.1..1.0)).collect();
            let labels = (0..atom_count).map(|i| format!("t{i}")).collect();
            let space = AtomicMeasureSpace::new(labels, weights).unwrap();
            let a = Flow::new(
                space.clone(),
                (0..atom_count)
                    .map(|_| common::random_grid_dist(&mut rng, 4))
                    .collect(),
            )
            .unwrap();
            let perturb = Flow::new(
                space.clone(),
                (0..atom_count)
                    .map(|_| common::random_grid_dist(&mut rng, 4))
                    .collect(),
            )
            .unwrap();
            let b = join_flow(&a, &perturb, order).unwrap();
            // genuine difference at a positive-weight atom: grid-valued
            // distributions are either equal or at least 1e-5 apart in W1,
            // so the 1e-6 gate separates real differences from the 1e-12
            // reconstruction noise
            let distinct = (0..atom_count).any(|i| {
                space.weights()[i] > 0.0 && wasserstein1(a.atom(i), b.atom(i)) > 1e-6
            });
            if !distinct {
                continue;
            }
            assert!(leq_flow(&a, &b, order).unwrap().holds);
            let fa = flow_functional(&a, order).unwrap();
            let fb = flow_functional(&b, order).unwrap();
            assert!(fa < fb, "strict monotonicity ({order}): {fa} vs {fb}");
            checked += 1;
        }
    }

    // rescaling the atomic measure changes no verdict and no extremum
    for _ in 0..100 {
        let atom_count = rng.gen_range(1..=6);
        let weights: Vec<f64> = (0..atom_count).map(|_| rng.gen_range(0.05..1.0_f64)).collect();
        let labels = (0..atom_count).map(|i| format!("t{i}")).collect();
        let space = AtomicMeasureSpace::new(labels, weights).unwrap();
        let mk = |rng: &mut _| -> Vec<DiscreteDistribution> {
            (0..atom_count)
                .map(|_| common::random_dist(rng, 5, -10.0, 10.0))
                .collect()
        };
        let a = Flow::new(space.clone(), mk(&mut rng)).unwrap();
        let b = Flow::new(space.clone(), mk(&mut rng)).unwrap();
        let factor = rng.gen_range(0.1..25.0);
        for order in [Order::St, Order::Icv, Order::Icx] {
            let before = leq_flow(&a, &b, order).unwrap();
            let after = leq_flow(
                &a.rescaled(factor).unwrap(),
                &b.rescaled(factor).unwrap(),
                order,
            )
            .unwrap();
            assert_eq!(before, after, "rescaling changed a verdict");
            let sup = ess_extremum_flow(&[a.clone(), b.clone()], order, Direction::Sup).unwrap();
            let sup_scaled = ess_extremum_flow(
                &[a.rescaled(factor).unwrap(), b.rescaled(factor).unwrap()],
                order,
                Direction::Sup,
            )
            .unwrap();
            assert_eq!(sup.assignment(), sup_scaled.assignment());
            let f = flow_functional(&a, order).unwrap();
            let f_scaled = flow_functional(&a.rescaled(factor).unwrap(), order).unwrap();
            assert!((f_scaled - factor * f).abs() < 1e-9 * factor.max(1.0));
        }
    }
    finish("criterion 10 (flows)", start, Duration::from_secs(90));
}

#[test]
fn zz_criterion_11_wall_clock() {
    let start = suite_start();
    // per-criterion budgets are asserted in their own tests; this records the
    // process-level elapsed time as the suite winds down
    assert!(
        start.elapsed() < Duration::from_secs(300),
        "acceptance suite exceeded five minutes"
    );
    println!("acceptance criterion 11: PASS (elapsed {:.2?})", start.elapsed());
}
