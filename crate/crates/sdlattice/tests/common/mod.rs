//! Shared generators and independent oracles for the integration suites.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sdlattice::DiscreteDistribution;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random distribution with up to `max_atoms` atoms, points uniform in
/// [lo, hi], weights uniform in [0.05, 1] before normalization.
pub fn random_dist(rng: &mut ChaCha8Rng, max_atoms: usize, lo: f64, hi: f64) -> DiscreteDistribution {
    let n = rng.gen_range(1..=max_atoms);
    let pairs: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.gen_range(lo..hi), rng.gen_range(0.05..1.0)))
        .collect();
    DiscreteDistribution::from_pairs(pairs).expect("generator satisfies the contract")
}

/// Random distribution on the 0.1-spaced grid in [-4, 4] with weights bounded
/// away from zero: gaps and masses are large enough that the strictly
/// increasing functionals resolve distinct comparable pairs in f64.
pub fn random_grid_dist(rng: &mut ChaCha8Rng, max_atoms: usize) -> DiscreteDistribution {
    let n = rng.gen_range(1..=max_atoms);
    let pairs: Vec<(f64, f64)> = (0..n)
        .map(|_| {
            let tick = rng.gen_range(-40..=40_i32);
            (tick as f64 / 10.0, rng.gen_range(1..=20) as f64 / 20.0)
        })
        .collect();
    DiscreteDistribution::from_pairs(pairs).expect("generator satisfies the contract")
}

/// Scalar closeness of distributions in transport distance.
pub fn w1_close(a: &DiscreteDistribution, b: &DiscreteDistribution, tol: f64) -> bool {
    sdlattice::metrics::wasserstein1(a, b) <= tol
}

/// Componentwise closeness (same atom count, points and weights within tol).
pub fn componentwise_close(a: &DiscreteDistribution, b: &DiscreteDistribution, tol: f64) -> bool {
    a.len() == b.len()
        && a.points()
            .zip(b.points())
            .all(|((x, w), (y, v))| (x - y).abs() <= tol && (w - v).abs() <= tol)
}

/// Independent lower convex hull (Andrew monotone chain) over points with
/// strictly increasing x; used by the dense-grid envelope oracles.
pub fn oracle_lower_hull(pts: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for &p in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Evaluate a polyline (sorted vertices) at `s`, extending the end segments.
pub fn polyline_value(pts: &[(f64, f64)], s: f64) -> f64 {
    let n = pts.len();
    if n == 1 {
        return pts[0].1;
    }
    let seg = if s <= pts[0].0 {
        (pts[0], pts[1])
    } else if s >= pts[n - 1].0 {
        (pts[n - 2], pts[n - 1])
    } else {
        let i = pts.partition_point(|&(x, _)| x <= s) - 1;
        (pts[i], pts[i + 1])
    };
    let ((x0, y0), (x1, y1)) = seg;
    y0 + (y1 - y0) * (s - x0) / (x1 - x0)
}

/// Dense grid over the hull of both supports, padded by one unit, plus the
/// exact support points (where the envelope's contact vertices live).
pub fn envelope_grid(a: &DiscreteDistribution, b: &DiscreteDistribution, step: f64) -> Vec<f64> {
    let (alo, ahi) = a.hull();
    let (blo, bhi) = b.hull();
    let lo = alo.min(blo) - 1.0;
    let hi = ahi.max(bhi) + 1.0;
    let mut grid: Vec<f64> = Vec::with_capacity(((hi - lo) / step) as usize + 8);
    let mut s = lo;
    while s < hi {
        grid.push(s);
        s += step;
    }
    grid.push(hi);
    grid.extend_from_slice(a.support());
    grid.extend_from_slice(b.support());
    grid.sort_by(|x, y| x.total_cmp(y));
    grid.dedup();
    grid
}
