//! Distribution and function carriers: finitely supported probability
//! distributions on the real line, right-continuous step functions (survival
//! functions live here) and continuous piecewise linear functions (integrated
//! transforms live here), plus the exact transforms between them.

use crate::error::{Error, Result};

/// Absolute tolerance for order comparisons and role-invariant checks.
pub const CMP_TOL: f64 = 1e-9;

/// Slope-change threshold below which breakpoints are treated as collinear and
/// crossings are snapped onto existing breakpoints.
pub(crate) const SNAP_TOL: f64 = 1e-12;

/// A finitely supported probability measure on the real line.
///
/// The support is strictly increasing, every weight is strictly positive and
/// the weights sum to one (renormalized at construction). This class is closed
/// under all lattice operations in the crate, so everything downstream stays
/// exact up to floating-point rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    support: Vec<f64>,
    weights: Vec<f64>,
}

impl DiscreteDistribution {
    /// Build a distribution from (point, weight) pairs.
    ///
    /// Duplicate points are merged by summing weights, zero weights are
    /// dropped, points are sorted and weights normalized to sum one.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut pairs: Vec<(f64, f64)> = pairs.into_iter().collect();
        if pairs.is_empty() {
            return Err(Error::EmptyInput("distribution needs at least one point"));
        }
        for &(x, w) in &pairs {
            if !x.is_finite() || !w.is_finite() {
                return Err(Error::InvalidDistribution(format!(
                    "non-finite entry ({x}, {w})"
                )));
            }
            if w < 0.0 {
                return Err(Error::InvalidDistribution(format!(
                    "negative weight {w} at point {x}"
                )));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut support: Vec<f64> = Vec::with_capacity(pairs.len());
        let mut weights: Vec<f64> = Vec::with_capacity(pairs.len());
        for (x, w) in pairs {
            match support.last() {
                Some(&last) if last == x => *weights.last_mut().expect("nonempty") += w,
                _ => {
                    support.push(x);
                    weights.push(w);
                }
            }
        }
        let mut kept_support = Vec::with_capacity(support.len());
        let mut kept_weights = Vec::with_capacity(weights.len());
        for (x, w) in support.into_iter().zip(weights) {
            if w > 0.0 {
                kept_support.push(x);
                kept_weights.push(w);
            }
        }
        let total: f64 = kept_weights.iter().sum();
        if !(total > 0.0) {
            return Err(Error::InvalidDistribution(
                "total weight must be positive".into(),
            ));
        }
        // renormalization is skipped inside the invariant band so that
        // construction is idempotent and emitted files parse back exactly
        if (total - 1.0).abs() > 1e-12 {
            for w in &mut kept_weights {
                *w /= total;
            }
        }
        Ok(Self {
            support: kept_support,
            weights: kept_weights,
        })
    }

    /// Unit mass at `a`. Panics on a non-finite point.
    pub fn dirac(a: f64) -> Self {
        Self::from_pairs([(a, 1.0)]).expect("dirac point must be finite")
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Iterate over (point, weight) pairs.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.support.iter().copied().zip(self.weights.iter().copied())
    }

    /// Smallest and largest support point.
    pub fn hull(&self) -> (f64, f64) {
        (self.support[0], self.support[self.support.len() - 1])
    }

    /// Survival function μ₀(s) = μ((s, ∞)); right-continuous in `s`.
    pub fn survival(&self, s: f64) -> f64 {
        let idx = self.support.partition_point(|&x| x <= s);
        self.weights[idx..].iter().sum()
    }

    /// Cumulative distribution function F(s) = μ((-∞, s]).
    pub fn cdf(&self, s: f64) -> f64 {
        let idx = self.support.partition_point(|&x| x <= s);
        self.weights[..idx].iter().sum()
    }

    /// Left limit F(s⁻) = μ((-∞, s)).
    pub fn cdf_left(&self, s: f64) -> f64 {
        let idx = self.support.partition_point(|&x| x < s);
        self.weights[..idx].iter().sum()
    }

    /// First moment Σ xᵢ·pᵢ.
    pub fn mean(&self) -> f64 {
        self.points().map(|(x, w)| x * w).sum()
    }

    /// Distribution of -X; involution negating the mean.
    pub fn reflect(&self) -> Self {
        let support = self.support.iter().rev().map(|&x| -x).collect();
        let weights = self.weights.iter().rev().copied().collect();
        Self { support, weights }
    }

    /// The survival function as a right-continuous step function
    /// (left limit 1, right limit 0).
    pub fn survival_function(&self) -> StepFunction {
        let n = self.len();
        let mut plateaus = Vec::with_capacity(n + 1);
        let mut remaining = 1.0;
        plateaus.push(remaining);
        for (i, &w) in self.weights.iter().enumerate() {
            remaining -= w;
            if i + 1 == n {
                remaining = 0.0;
            }
            plateaus.push(remaining.max(0.0));
        }
        StepFunction {
            jumps: self.support.clone(),
            plateaus,
        }
    }

    /// Reconstruct a distribution from a survival step function.
    pub fn from_survival(sf: &StepFunction) -> Result<Self> {
        let first = sf.plateaus[0];
        let last = sf.plateaus[sf.plateaus.len() - 1];
        if (first - 1.0).abs() > CMP_TOL || last.abs() > CMP_TOL {
            return Err(Error::InvalidFunction(
                "survival function must run from 1 to 0".into(),
            ));
        }
        let mut pairs = Vec::with_capacity(sf.jumps.len());
        for (i, &x) in sf.jumps.iter().enumerate() {
            let drop = sf.plateaus[i] - sf.plateaus[i + 1];
            if drop < -CMP_TOL {
                return Err(Error::InvalidFunction(
                    "survival function must be nonincreasing".into(),
                ));
            }
            pairs.push((x, drop.max(0.0)));
        }
        Self::from_pairs(pairs)
    }

    /// Pointwise value of the integrated survival function Σ pᵢ (xᵢ - s)⁺.
    pub fn icx_at(&self, s: f64) -> f64 {
        self.points().map(|(x, w)| w * (x - s).max(0.0)).sum()
    }

    /// Pointwise value of the negative integrated distribution function
    /// -Σ pᵢ (s - xᵢ)⁺.
    pub fn icv_at(&self, s: f64) -> f64 {
        -self.points().map(|(x, w)| w * (s - x).max(0.0)).sum::<f64>()
    }

    /// Integrated survival function as a convex piecewise linear function:
    /// breakpoints at the support, left ray slope -1 (intercept = mean),
    /// right ray identically 0.
    pub fn icx_transform(&self) -> PiecewiseLinearFunction {
        let n = self.len();
        let xs = self.support.clone();
        let mut ys = vec![0.0; n];
        let mut tail = 0.0;
        for i in (0..n.saturating_sub(1)).rev() {
            tail += self.weights[i + 1];
            ys[i] = ys[i + 1] + tail * (xs[i + 1] - xs[i]);
        }
        PiecewiseLinearFunction {
            xs,
            ys,
            left_slope: -1.0,
            right_slope: 0.0,
        }
    }

    /// Negative integrated distribution function as a concave piecewise linear
    /// function: left ray identically 0, right ray slope -1 (intercept = mean).
    pub fn icv_transform(&self) -> PiecewiseLinearFunction {
        let n = self.len();
        let xs = self.support.clone();
        let mut ys = vec![0.0; n];
        let mut cum = 0.0;
        for i in 0..n.saturating_sub(1) {
            cum += self.weights[i];
            ys[i + 1] = ys[i] - cum * (xs[i + 1] - xs[i]);
        }
        PiecewiseLinearFunction {
            xs,
            ys,
            left_slope: 0.0,
            right_slope: -1.0,
        }
    }

    /// Invert an integrated survival function: the point mass at each
    /// breakpoint is the slope increment there.
    ///
    /// The input must satisfy the role invariants (convex, left ray slope -1,
    /// right ray slope 0 with value 0), checked to tolerance 1e-9.
    pub fn from_icx_transform(f: &PiecewiseLinearFunction) -> Result<Self> {
        if (f.left_slope + 1.0).abs() > CMP_TOL {
            return Err(Error::InvalidFunction(format!(
                "left ray slope must be -1, got {}",
                f.left_slope
            )));
        }
        if f.right_slope.abs() > CMP_TOL {
            return Err(Error::InvalidFunction(format!(
                "right ray slope must be 0, got {}",
                f.right_slope
            )));
        }
        let last = f.ys[f.ys.len() - 1];
        if last.abs() > CMP_TOL {
            return Err(Error::InvalidFunction(format!(
                "right ray value must be 0, got {last}"
            )));
        }
        let slopes = f.clamped_slopes(-1.0, 0.0, -1.0, 0.0)?;
        let mut pairs = Vec::with_capacity(f.xs.len());
        for (i, &x) in f.xs.iter().enumerate() {
            let inc = slopes[i + 1] - slopes[i];
            if inc < -CMP_TOL {
                return Err(Error::InvalidFunction(format!(
                    "function not convex: slope decreases at breakpoint {x}"
                )));
            }
            if inc > SNAP_TOL {
                pairs.push((x, inc));
            }
        }
        Self::from_pairs(pairs)
    }

    /// Invert a negative integrated distribution function; the CDF is the
    /// negated right derivative.
    pub fn from_icv_transform(f: &PiecewiseLinearFunction) -> Result<Self> {
        if f.left_slope.abs() > CMP_TOL {
            return Err(Error::InvalidFunction(format!(
                "left ray slope must be 0, got {}",
                f.left_slope
            )));
        }
        if (f.right_slope + 1.0).abs() > CMP_TOL {
            return Err(Error::InvalidFunction(format!(
                "right ray slope must be -1, got {}",
                f.right_slope
            )));
        }
        if f.ys[0].abs() > CMP_TOL {
            return Err(Error::InvalidFunction(format!(
                "left ray value must be 0, got {}",
                f.ys[0]
            )));
        }
        let slopes = f.clamped_slopes(-1.0, 0.0, 0.0, -1.0)?;
        let mut pairs = Vec::with_capacity(f.xs.len());
        for (i, &x) in f.xs.iter().enumerate() {
            let dec = slopes[i] - slopes[i + 1];
            if dec < -CMP_TOL {
                return Err(Error::InvalidFunction(format!(
                    "function not concave: slope increases at breakpoint {x}"
                )));
            }
            if dec > SNAP_TOL {
                pairs.push((x, dec));
            }
        }
        Self::from_pairs(pairs)
    }
}

/// A right-continuous step function: the value at a jump point is the
/// right-hand plateau value.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    jumps: Vec<f64>,
    plateaus: Vec<f64>, // one per interval, including both unbounded rays
}

impl StepFunction {
    pub fn new(jumps: Vec<f64>, plateaus: Vec<f64>) -> Result<Self> {
        if plateaus.len() != jumps.len() + 1 {
            return Err(Error::InvalidFunction(
                "need one plateau per interval including both rays".into(),
            ));
        }
        if !strictly_increasing(&jumps) {
            return Err(Error::InvalidFunction(
                "jump points must be strictly increasing and finite".into(),
            ));
        }
        Ok(Self { jumps, plateaus })
    }

    pub fn jumps(&self) -> &[f64] {
        &self.jumps
    }

    pub fn plateaus(&self) -> &[f64] {
        &self.plateaus
    }

    pub fn value(&self, s: f64) -> f64 {
        let idx = self.jumps.partition_point(|&j| j <= s);
        self.plateaus[idx]
    }

    pub fn pointwise_max(&self, other: &Self) -> Self {
        self.combine(other, f64::max)
    }

    pub fn pointwise_min(&self, other: &Self) -> Self {
        self.combine(other, f64::min)
    }

    fn combine(&self, other: &Self, op: impl Fn(f64, f64) -> f64) -> Self {
        let jumps = merge_sorted(&self.jumps, &other.jumps);
        let mut plateaus = Vec::with_capacity(jumps.len() + 1);
        plateaus.push(op(self.plateaus[0], other.plateaus[0]));
        for &j in &jumps {
            plateaus.push(op(self.value(j), other.value(j)));
        }
        Self { jumps, plateaus }.simplify()
    }

    fn simplify(self) -> Self {
        let mut jumps = Vec::with_capacity(self.jumps.len());
        let mut plateaus = vec![self.plateaus[0]];
        for (i, &j) in self.jumps.iter().enumerate() {
            let next = self.plateaus[i + 1];
            if next != *plateaus.last().expect("nonempty") {
                jumps.push(j);
                plateaus.push(next);
            }
        }
        Self { jumps, plateaus }
    }
}

/// A continuous piecewise linear function with two boundary rays.
///
/// Breakpoints are strictly increasing and nonempty; a single breakpoint
/// anchors an affine ray pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearFunction {
    xs: Vec<f64>,
    ys: Vec<f64>,
    left_slope: f64,
    right_slope: f64,
}

impl PiecewiseLinearFunction {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>, left_slope: f64, right_slope: f64) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::InvalidFunction(
                "piecewise linear function needs at least one breakpoint".into(),
            ));
        }
        if xs.len() != ys.len() {
            return Err(Error::InvalidFunction(
                "one value per breakpoint required".into(),
            ));
        }
        if !strictly_increasing(&xs) {
            return Err(Error::InvalidFunction(
                "breakpoints must be strictly increasing and finite".into(),
            ));
        }
        if ys.iter().any(|y| !y.is_finite())
            || !left_slope.is_finite()
            || !right_slope.is_finite()
        {
            return Err(Error::InvalidFunction("values and slopes must be finite".into()));
        }
        Ok(Self {
            xs,
            ys,
            left_slope,
            right_slope,
        })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.ys
    }

    pub fn left_slope(&self) -> f64 {
        self.left_slope
    }

    pub fn right_slope(&self) -> f64 {
        self.right_slope
    }

    pub fn value(&self, s: f64) -> f64 {
        let n = self.xs.len();
        if s <= self.xs[0] {
            return self.ys[0] + self.left_slope * (s - self.xs[0]);
        }
        if s >= self.xs[n - 1] {
            return self.ys[n - 1] + self.right_slope * (s - self.xs[n - 1]);
        }
        let i = self.xs.partition_point(|&x| x <= s) - 1;
        let t = (s - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
        self.ys[i] + t * (self.ys[i + 1] - self.ys[i])
    }

    /// Interior segment slopes, one per consecutive breakpoint pair.
    pub fn segment_slopes(&self) -> Vec<f64> {
        self.xs
            .windows(2)
            .zip(self.ys.windows(2))
            .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
            .collect()
    }

    /// Left ray slope, interior slopes, right ray slope.
    pub fn all_slopes(&self) -> Vec<f64> {
        let mut slopes = Vec::with_capacity(self.xs.len() + 1);
        slopes.push(self.left_slope);
        slopes.extend(self.segment_slopes());
        slopes.push(self.right_slope);
        slopes
    }

    /// Slopes from left ray to right ray, checked to lie in [lo, hi] up to
    /// CMP_TOL and clamped into the interval. The rays are replaced by their
    /// exact role values so the reconstructed weights sum to one.
    fn clamped_slopes(&self, lo: f64, hi: f64, left: f64, right: f64) -> Result<Vec<f64>> {
        let mut slopes = self.all_slopes();
        for m in &mut slopes {
            if *m < lo - CMP_TOL || *m > hi + CMP_TOL {
                return Err(Error::InvalidFunction(format!(
                    "slope {m} outside [{lo}, {hi}]"
                )));
            }
            *m = m.clamp(lo, hi);
        }
        slopes[0] = left;
        let last = slopes.len() - 1;
        slopes[last] = right;
        Ok(slopes)
    }

    pub fn is_convex(&self, tol: f64) -> bool {
        self.all_slopes().windows(2).all(|w| w[1] >= w[0] - tol)
    }

    pub fn is_concave(&self, tol: f64) -> bool {
        self.all_slopes().windows(2).all(|w| w[1] <= w[0] + tol)
    }

    pub fn pointwise_max(&self, other: &Self) -> Self {
        self.extremum(other, true)
    }

    pub fn pointwise_min(&self, other: &Self) -> Self {
        self.extremum(other, false)
    }

    /// Sum of two piecewise linear functions on the common refinement.
    pub fn add(&self, other: &Self) -> Self {
        let xs = merge_sorted(&self.xs, &other.xs);
        let ys = xs.iter().map(|&x| self.value(x) + other.value(x)).collect();
        Self {
            xs,
            ys,
            left_slope: self.left_slope + other.left_slope,
            right_slope: self.right_slope + other.right_slope,
        }
    }

    fn extremum(&self, other: &Self, take_max: bool) -> Self {
        let mut grid = merge_sorted(&self.xs, &other.xs);
        // crossings on the unbounded rays, where both functions are affine
        if let Some(sc) = ray_crossing(self, other, grid[0], true) {
            grid.insert(0, sc);
        }
        if let Some(sc) = ray_crossing(self, other, grid[grid.len() - 1], false) {
            grid.push(sc);
        }
        // at most one crossing per segment of the common refinement
        let mut xs = Vec::with_capacity(2 * grid.len());
        for (i, &a) in grid.iter().enumerate() {
            xs.push(a);
            if i + 1 == grid.len() {
                break;
            }
            let b = grid[i + 1];
            let da = self.value(a) - other.value(a);
            let db = self.value(b) - other.value(b);
            if da * db < 0.0 {
                let sc = a + da * (b - a) / (da - db);
                let snap = SNAP_TOL * a.abs().max(b.abs()).max(1.0);
                if sc - a > snap && b - sc > snap {
                    xs.push(sc);
                }
            }
        }
        let ys = xs
            .iter()
            .map(|&x| {
                let (f, g) = (self.value(x), other.value(x));
                if take_max {
                    f.max(g)
                } else {
                    f.min(g)
                }
            })
            .collect();
        let (left_slope, right_slope) = if take_max {
            (
                self.left_slope.min(other.left_slope),
                self.right_slope.max(other.right_slope),
            )
        } else {
            (
                self.left_slope.max(other.left_slope),
                self.right_slope.min(other.right_slope),
            )
        };
        Self {
            xs,
            ys,
            left_slope,
            right_slope,
        }
    }
}

/// Crossing of the two left (or right) ray extensions strictly outside the
/// breakpoint hull, if any.
fn ray_crossing(
    f: &PiecewiseLinearFunction,
    g: &PiecewiseLinearFunction,
    edge: f64,
    left: bool,
) -> Option<f64> {
    let (mf, mg) = if left {
        (f.left_slope, g.left_slope)
    } else {
        (f.right_slope, g.right_slope)
    };
    if mf == mg {
        return None;
    }
    let d_edge = f.value(edge) - g.value(edge);
    let sc = edge - d_edge / (mf - mg);
    let snap = SNAP_TOL * edge.abs().max(sc.abs()).max(1.0);
    let outside = if left { sc < edge - snap } else { sc > edge + snap };
    outside.then_some(sc)
}

pub(crate) fn strictly_increasing(xs: &[f64]) -> bool {
    xs.iter().all(|x| x.is_finite()) && xs.windows(2).all(|w| w[0] < w[1])
}

/// Merge two sorted slices into a sorted, exactly deduplicated vector.
pub(crate) fn merge_sorted(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x <= y => {
                i += 1;
                if x == y {
                    j += 1;
                }
                x
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (_, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => break,
        };
        if out.last() != Some(&next) {
            out.push(next);
        }
    }
    out
}
