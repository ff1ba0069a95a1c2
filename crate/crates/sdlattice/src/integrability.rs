//! Tightness and uniform-integrability diagnostics for families of measures on
//! the nonnegative half line, with the explicit ψ constructions: the tightness
//! interpolant through the dyadic tail thresholds, the strictly increasing
//! variant, and the De La Vallée Poussin ψ_α = ∫₀^s η(u)^α du.

use std::cell::RefCell;

use crate::error::{Error, Result};
use crate::measure::{PiecewiseLinearFunction, StepFunction, CMP_TOL};

/// Doubling search cap for tail thresholds; beyond this the family is reported
/// as not tight at the requested level.
const HORIZON: f64 = 1.8e19;
/// Internal level count for the η envelope inside the De La Vallée Poussin
/// construction.
const DLVP_ETA_LEVELS: usize = 10;
/// Subdivisions per η segment when sampling ψ_α tangents.
const DLVP_SUBDIVISIONS: usize = 32;

/// A finite measure with finitely many atoms on [0, ∞). Total mass is
/// unconstrained; the zero measure (no atoms) is allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct NonnegMeasure {
    support: Vec<f64>,
    weights: Vec<f64>,
}

impl NonnegMeasure {
    /// Merge duplicate points, drop zero weights and sort. Negative points or
    /// weights and non-finite entries are rejected; an empty result (the zero
    /// measure) is fine.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut pairs: Vec<(f64, f64)> = pairs.into_iter().collect();
        for &(x, w) in &pairs {
            if !x.is_finite() || !w.is_finite() {
                return Err(Error::InvalidDistribution(format!(
                    "non-finite entry ({x}, {w})"
                )));
            }
            if x < 0.0 {
                return Err(Error::InvalidDistribution(format!(
                    "support point {x} below zero"
                )));
            }
            if w < 0.0 {
                return Err(Error::InvalidDistribution(format!("negative weight {w}")));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut support: Vec<f64> = Vec::new();
        let mut weights: Vec<f64> = Vec::new();
        for (x, w) in pairs {
            if w == 0.0 {
                continue;
            }
            match support.last() {
                Some(&last) if last == x => *weights.last_mut().expect("nonempty") += w,
                _ => {
                    support.push(x);
                    weights.push(w);
                }
            }
        }
        Ok(Self { support, weights })
    }

    pub fn zero() -> Self {
        Self {
            support: Vec::new(),
            weights: Vec::new(),
        }
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.support.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Mass strictly above `s`.
    pub fn tail_mass(&self, s: f64) -> f64 {
        self.points().filter(|&(x, _)| x > s).map(|(_, w)| w).sum()
    }

    /// First-moment tail Σ_{x > m} x·w.
    pub fn moment_tail(&self, m: f64) -> f64 {
        self.points()
            .filter(|&(x, _)| x > m)
            .map(|(x, w)| x * w)
            .sum()
    }

    /// ∫ f dν as a finite sum.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.points().map(|(x, w)| w * f(x)).sum()
    }

    /// The moment-weighted measure ν₁(B) = ∫_B u dν(u); atoms at zero vanish.
    pub fn moment_measure(&self) -> Self {
        Self::from_pairs(self.points().map(|(x, w)| (x, x * w)))
            .expect("moment reweighting preserves validity")
    }

    /// Image measure under a nonnegative map.
    pub fn pushforward(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_pairs(self.points().map(|(x, w)| (f(x), w)))
    }
}

/// Abstract tail envelope of a (possibly nonfinite) family: T(s) = sup_ν
/// ν((s,∞)) and optionally the moment tail U(s) = sup_ν ∫_{(s,∞)} u dν(u).
/// Monotonicity of the observed queries is enforced; a violation is an error.
pub struct TailOracle {
    tail: Box<dyn Fn(f64) -> f64>,
    moment: Option<Box<dyn Fn(f64) -> f64>>,
    tail_log: RefCell<Vec<(f64, f64)>>,
    moment_log: RefCell<Vec<(f64, f64)>>,
}

impl TailOracle {
    pub fn new(tail: impl Fn(f64) -> f64 + 'static) -> Self {
        Self {
            tail: Box::new(tail),
            moment: None,
            tail_log: RefCell::new(Vec::new()),
            moment_log: RefCell::new(Vec::new()),
        }
    }

    pub fn with_moment(
        tail: impl Fn(f64) -> f64 + 'static,
        moment: impl Fn(f64) -> f64 + 'static,
    ) -> Self {
        Self {
            moment: Some(Box::new(moment)),
            ..Self::new(tail)
        }
    }

    /// Tabulated oracle with linear interpolation between rows and constant
    /// continuation outside the table. Rows are (s, T, optional U) with
    /// strictly increasing s and nonincreasing T and U.
    pub fn from_table(rows: &[(f64, f64, Option<f64>)]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyInput("tail table needs at least one row"));
        }
        let ss: Vec<f64> = rows.iter().map(|r| r.0).collect();
        if !crate::measure::strictly_increasing(&ss) || ss[0] < 0.0 {
            return Err(Error::InvalidParameter(
                "tail table abscissae must be nonnegative and strictly increasing".into(),
            ));
        }
        let ts: Vec<f64> = rows.iter().map(|r| r.1).collect();
        if ts.windows(2).any(|w| w[1] > w[0]) || ts.iter().any(|t| *t < 0.0 || !t.is_finite()) {
            return Err(Error::InvalidParameter(
                "tail column must be nonnegative and nonincreasing".into(),
            ));
        }
        let us: Option<Vec<f64>> = rows.iter().map(|r| r.2).collect();
        if let Some(us) = &us {
            if us.windows(2).any(|w| w[1] > w[0]) || us.iter().any(|u| *u < 0.0 || !u.is_finite()) {
                return Err(Error::InvalidParameter(
                    "moment column must be nonnegative and nonincreasing".into(),
                ));
            }
        }
        let interp = move |xs: Vec<f64>, ys: Vec<f64>| {
            move |s: f64| -> f64 {
                let n = xs.len();
                if s <= xs[0] {
                    return ys[0];
                }
                if s >= xs[n - 1] {
                    return ys[n - 1];
                }
                let i = xs.partition_point(|&x| x <= s) - 1;
                let t = (s - xs[i]) / (xs[i + 1] - xs[i]);
                ys[i] + t * (ys[i + 1] - ys[i])
            }
        };
        let tail = interp(ss.clone(), ts);
        Ok(match us {
            Some(us) => Self::with_moment(tail, interp(ss, us)),
            None => Self::new(tail),
        })
    }

    pub fn has_moment(&self) -> bool {
        self.moment.is_some()
    }

    pub fn query_tail(&self, s: f64) -> Result<f64> {
        let v = (self.tail)(s);
        Self::check_monotone(&self.tail_log, s, v)?;
        Ok(v)
    }

    pub fn query_moment(&self, s: f64) -> Result<f64> {
        let f = self.moment.as_ref().ok_or(Error::MissingMomentTail)?;
        let v = f(s);
        Self::check_monotone(&self.moment_log, s, v)?;
        Ok(v)
    }

    /// The observation log stays sorted by s; each new value is compared to its
    /// neighbours (transitivity keeps the whole log consistent).
    fn check_monotone(log: &RefCell<Vec<(f64, f64)>>, s: f64, v: f64) -> Result<f64> {
        if v.is_nan() || v < 0.0 {
            return Err(Error::OracleViolation(s));
        }
        let mut log = log.borrow_mut();
        let idx = log.partition_point(|&(x, _)| x < s);
        if idx > 0 && log[idx - 1].1 < v - CMP_TOL {
            return Err(Error::OracleViolation(s));
        }
        if idx < log.len() && log[idx].0 != s && log[idx].1 > v + CMP_TOL {
            return Err(Error::OracleViolation(s));
        }
        if idx < log.len() && log[idx].0 == s {
            if (log[idx].1 - v).abs() > CMP_TOL {
                return Err(Error::OracleViolation(s));
            }
        } else {
            log.insert(idx, (s, v));
        }
        Ok(v)
    }
}

/// A family of measures: either a finite explicit list or a queryable tail
/// envelope.
pub enum MeasureFamily {
    Explicit(Vec<NonnegMeasure>),
    Oracle(TailOracle),
}

impl MeasureFamily {
    pub fn explicit(members: Vec<NonnegMeasure>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyInput("explicit family needs at least one member"));
        }
        Ok(Self::Explicit(members))
    }

    /// sup_ν ν((s,∞)) at a single point s ≥ 0.
    pub fn tail_sup(&self, s: f64) -> Result<f64> {
        if !(s >= 0.0) {
            return Err(Error::InvalidParameter("tail query needs s >= 0".into()));
        }
        match self {
            Self::Explicit(members) => Ok(members
                .iter()
                .map(|m| m.tail_mass(s))
                .fold(0.0, f64::max)),
            Self::Oracle(oracle) => oracle.query_tail(s),
        }
    }

    /// sup_ν ∫_{(m,∞)} u dν(u) at a single horizon m ≥ 0.
    pub fn ui_tail(&self, m: f64) -> Result<f64> {
        if !(m >= 0.0) {
            return Err(Error::InvalidParameter("moment query needs m >= 0".into()));
        }
        match self {
            Self::Explicit(members) => Ok(members
                .iter()
                .map(|mb| mb.moment_tail(m))
                .fold(0.0, f64::max)),
            Self::Oracle(oracle) => oracle.query_moment(m),
        }
    }

    /// The tail map of the moment-weighted family {ν₁}: explicit members are
    /// reweighted, an oracle answers through its moment-tail query.
    fn moment_tail_fn(&self) -> Result<Box<dyn Fn(f64) -> Result<f64> + '_>> {
        match self {
            Self::Explicit(members) => {
                let weighted: Vec<NonnegMeasure> =
                    members.iter().map(NonnegMeasure::moment_measure).collect();
                Ok(Box::new(move |s| {
                    Ok(weighted.iter().map(|m| m.tail_mass(s)).fold(0.0, f64::max))
                }))
            }
            Self::Oracle(oracle) => {
                if !oracle.has_moment() {
                    return Err(Error::MissingMomentTail);
                }
                Ok(Box::new(move |s| oracle.query_moment(s)))
            }
        }
    }

    fn tail_fn(&self) -> Box<dyn Fn(f64) -> Result<f64> + '_> {
        Box::new(move |s| self.tail_sup(s))
    }
}

/// Either of the two ψ shapes produced by the tightness construction.
#[derive(Debug, Clone)]
pub enum PsiFunction {
    Continuous(PiecewiseLinearFunction),
    Step(StepFunction),
}

impl PsiFunction {
    pub fn value(&self, s: f64) -> f64 {
        match self {
            Self::Continuous(f) => f.value(s),
            Self::Step(f) => f.value(s),
        }
    }
}

/// Output of [`build_psi_tight`]: ψ with its dyadic tail thresholds and the
/// certified integral bound sup_ν ∫ ψ dν (exact on explicit families, the
/// envelope sum Σ T(Mⁿ) ≤ 1 on oracle families).
#[derive(Debug, Clone)]
pub struct TightPsi {
    pub psi: PsiFunction,
    pub thresholds: Vec<f64>,
    pub certificate: f64,
}

/// ψ construction certifying tightness: thresholds Mⁿ with tail ≤ 2⁻ⁿ, then
/// either the step sum of indicators of (Mⁿ, ∞) or the linear interpolation
/// through (0,0) and (Mⁿ, n−1). The certificate is at most Σ 2⁻ⁿ ≤ 1.
pub fn build_psi_tight(
    family: &MeasureFamily,
    levels: usize,
    continuous: bool,
) -> Result<TightPsi> {
    if levels == 0 {
        return Err(Error::InvalidParameter("levels must be positive".into()));
    }
    let tail = family.tail_fn();
    let thresholds = dyadic_thresholds(tail.as_ref(), levels)?;
    let psi = if continuous {
        let mut xs = vec![0.0];
        let mut ys = vec![0.0];
        for (n, &m) in thresholds.iter().enumerate() {
            if m > *xs.last().expect("nonempty") {
                xs.push(m);
                ys.push(n as f64);
            }
        }
        // flat before the first threshold and after the last one
        PsiFunction::Continuous(PiecewiseLinearFunction::new(xs, ys, 0.0, 0.0)?)
    } else {
        let mut jumps = Vec::with_capacity(levels);
        let mut plateaus = vec![0.0];
        for &m in &thresholds {
            if Some(&m) != jumps.last() {
                jumps.push(m);
                plateaus.push(plateaus.len() as f64);
            } else {
                *plateaus.last_mut().expect("nonempty") += 1.0;
            }
        }
        PsiFunction::Step(StepFunction::new(jumps, plateaus)?)
    };
    let certificate = match family {
        MeasureFamily::Explicit(members) => members
            .iter()
            .map(|m| m.integrate(|x| psi.value(x)))
            .fold(0.0, f64::max),
        MeasureFamily::Oracle(_) => {
            let mut sum = 0.0;
            for &m in &thresholds {
                sum += tail(m)?;
            }
            sum
        }
    };
    Ok(TightPsi {
        psi,
        thresholds,
        certificate,
    })
}

/// Strictly increasing Mⁿ with tail(Mⁿ) ≤ 2⁻ⁿ, each the nudged infimum of the
/// feasible set found by doubling then bisection.
fn dyadic_thresholds(tail: &dyn Fn(f64) -> Result<f64>, levels: usize) -> Result<Vec<f64>> {
    let mut thresholds = Vec::with_capacity(levels);
    let mut floor = 0.0_f64;
    for n in 1..=levels {
        let target = 0.5_f64.powi(n as i32);
        let m = threshold_above(tail, target, floor).map_err(|e| match e {
            Error::NotTight { .. } => Error::NotTight { level: n },
            other => other,
        })?;
        // keep the chain strictly increasing so interpolation nodes are valid
        let sep = 1e-9 * floor.abs().max(1.0);
        let m = if thresholds.is_empty() { m } else { m.max(floor + sep) };
        thresholds.push(m);
        floor = m;
    }
    Ok(thresholds)
}

/// Smallest point at or above `lo` where the nonincreasing `tail` drops to
/// `target`, nudged up by a relative 1e-12 so the threshold is strictly
/// positive and atoms never sit exactly on it (keeps ψ(0) = 0 and the
/// open-interval certificates exact).
fn threshold_above(
    tail: &dyn Fn(f64) -> Result<f64>,
    target: f64,
    lo: f64,
) -> Result<f64> {
    let nudge = |m: f64| m + 1e-12 * m.abs().max(1.0);
    if tail(lo)? <= target {
        return Ok(nudge(lo));
    }
    let mut hi = lo.abs().max(1.0);
    while tail(hi)? > target {
        hi *= 2.0;
        if hi > HORIZON {
            return Err(Error::NotTight { level: 0 });
        }
    }
    let mut lo = lo;
    for _ in 0..200 {
        if hi - lo <= 1e-13 * hi.abs().max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if tail(mid)? <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(nudge(hi))
}

/// Output of [`build_psi_strict`].
#[derive(Debug, Clone)]
pub struct StrictPsi {
    pub psi: PiecewiseLinearFunction,
    /// Strictly decreasing interpolation coefficients cⁿ.
    pub coefficients: Vec<f64>,
    /// Tail suprema αⁿ of the bins ((m/(n+1), m/n], with α⁰ the tail above m.
    pub bin_tails: Vec<f64>,
    /// Integral bound: exact sup_ν ∫ψ dν on explicit families, the envelope
    /// bound of ∫_{(m/levels, ∞)} ψ dν on oracle families.
    pub certificate: f64,
}

/// ψ strictly increasing on [0, m] and constant beyond: the interpolation of
/// (m/(n+1), cⁿ) with cⁿ = 2⁻ⁿ/(1 + max_{k≤n} α^k), anchored at (0, 0).
///
/// Requires sup_ν ν((s,∞)) < ∞ for every queried s > 0 (automatic on explicit
/// families).
pub fn build_psi_strict(family: &MeasureFamily, m: f64, levels: usize) -> Result<StrictPsi> {
    if !(m > 0.0) {
        return Err(Error::InvalidParameter("horizon m must be positive".into()));
    }
    if levels == 0 {
        return Err(Error::InvalidParameter("levels must be positive".into()));
    }
    let mut bin_tails = Vec::with_capacity(levels);
    // α⁰ = tail above m; αⁿ bounded by the tail at the left bin edge
    for n in 0..levels {
        let alpha = match family {
            MeasureFamily::Explicit(members) => {
                let (lo, hi) = bin_edges(m, n);
                members
                    .iter()
                    .map(|mb| {
                        mb.points()
                            .filter(|&(x, _)| x > lo && (n == 0 || x <= hi))
                            .map(|(_, w)| w)
                            .sum::<f64>()
                    })
                    .fold(0.0, f64::max)
            }
            MeasureFamily::Oracle(_) => {
                let (lo, _) = bin_edges(m, n);
                family.tail_sup(lo)?
            }
        };
        if !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "tail supremum infinite at s = {}: strictly increasing psi unavailable",
                bin_edges(m, n).0
            )));
        }
        bin_tails.push(alpha);
    }
    let mut coefficients = Vec::with_capacity(levels);
    let mut running_max = 0.0_f64;
    for (n, &alpha) in bin_tails.iter().enumerate() {
        running_max = running_max.max(alpha);
        coefficients.push(0.5_f64.powi(n as i32) / (1.0 + running_max));
    }
    // nodes ascend from (0,0) through (m/(n+1), cⁿ) up to (m, c⁰)
    let mut xs = vec![0.0];
    let mut ys = vec![0.0];
    for n in (0..levels).rev() {
        xs.push(m / (n + 1) as f64);
        ys.push(coefficients[n]);
    }
    let psi = PiecewiseLinearFunction::new(xs, ys, 0.0, 0.0)?;
    let certificate = match family {
        MeasureFamily::Explicit(members) => members
            .iter()
            .map(|mb| mb.integrate(|x| psi.value(x)))
            .fold(0.0, f64::max),
        MeasureFamily::Oracle(_) => {
            // ψ ≤ c^{n-1} on bin n ≥ 1 and = c⁰ above m
            let mut sum = coefficients[0] * bin_tails[0];
            for n in 1..levels {
                sum += coefficients[n - 1] * bin_tails[n];
            }
            sum
        }
    };
    Ok(StrictPsi {
        psi,
        coefficients,
        bin_tails,
        certificate,
    })
}

fn bin_edges(m: f64, n: usize) -> (f64, f64) {
    if n == 0 {
        (m, f64::INFINITY)
    } else {
        (m / (n + 1) as f64, m / n as f64)
    }
}

/// Output of [`build_psi_dlvp`]: the convex ψ_α, the tail envelope η it was
/// built from, and the certified bounds backing the Hölder estimate
/// sup_ν ∫_{(s,∞)} ψ_α dν ≤ η(s)^{α−1} · C.
#[derive(Debug, Clone)]
pub struct DlvpPsi {
    pub psi: PiecewiseLinearFunction,
    pub eta: PiecewiseLinearFunction,
    pub alpha: f64,
    /// C = sup_ν ∫ η dν₁ over the moment-weighted family; at most 1.
    pub eta_moment_bound: f64,
    /// sup_ν ∫ ψ_α dν: exact on explicit families, an envelope bound otherwise.
    pub psi_integral_bound: f64,
}

impl DlvpPsi {
    /// Hölder uniform-integrability bound η(s)^{α−1}·C; infinite where η
    /// vanishes.
    pub fn ui_bound(&self, s: f64) -> f64 {
        let e = self.eta.value(s);
        if e > 0.0 {
            e.powf(self.alpha - 1.0) * self.eta_moment_bound
        } else {
            f64::INFINITY
        }
    }
}

/// De La Vallée Poussin construction: η certifies tightness of the
/// moment-weighted family {ν₁}, and ψ_α(s) = ∫₀^s η(u)^α du is convex,
/// continuously differentiable in the limit, with s ↦ ψ_α(s)/s nondecreasing
/// and ψ_α uniformly integrable for the family.
///
/// The returned piecewise linear ψ is the maximum of exact tangents of ψ_α at
/// a refined node grid, hence a pointwise lower approximant: all certified
/// inequalities hold exactly for it.
pub fn build_psi_dlvp(family: &MeasureFamily, alpha: f64) -> Result<DlvpPsi> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(
            "alpha must lie strictly between 0 and 1".into(),
        ));
    }
    let moment_tail = family.moment_tail_fn()?;
    let thresholds = dyadic_thresholds(moment_tail.as_ref(), DLVP_ETA_LEVELS)
        .map_err(|e| match e {
            Error::NotTight { .. } => Error::NotUniformlyIntegrable,
            other => other,
        })?;
    let mut xs = vec![0.0];
    let mut ys = vec![0.0];
    for (n, &m) in thresholds.iter().enumerate() {
        if m > *xs.last().expect("nonempty") {
            xs.push(m);
            ys.push(n as f64);
        }
    }
    let eta = PiecewiseLinearFunction::new(xs, ys, 0.0, 0.0)?;
    // envelope bound for oracle families: η ≤ Σₙ 1_{(Mⁿ,∞)} gives
    // ∫ η dν₁ ≤ Σₙ U(Mⁿ) ≤ Σₙ 2⁻ⁿ ≤ 1
    let oracle_eta_bound = match family {
        MeasureFamily::Explicit(_) => 0.0,
        MeasureFamily::Oracle(_) => {
            let mut sum = 0.0;
            for &m in &thresholds {
                sum += moment_tail(m)?;
            }
            sum
        }
    };
    finish_dlvp(family, alpha, eta, oracle_eta_bound)
}

/// Variant of [`build_psi_dlvp`] with a strictly increasing η (the tightness
/// interpolant plus the strictly increasing ψ of [`build_psi_strict`] applied
/// to the moment-weighted family), making ψ_α strictly convex.
pub fn build_psi_dlvp_strict(family: &MeasureFamily, alpha: f64, m: f64) -> Result<DlvpPsi> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(
            "alpha must lie strictly between 0 and 1".into(),
        ));
    }
    let base = build_psi_dlvp(family, alpha)?;
    let strict = match family {
        MeasureFamily::Explicit(members) => {
            let weighted = members.iter().map(NonnegMeasure::moment_measure).collect();
            build_psi_strict(&MeasureFamily::explicit(weighted)?, m, DLVP_ETA_LEVELS)?
        }
        MeasureFamily::Oracle(_) => {
            return Err(Error::InvalidParameter(
                "strict variant needs an explicit family".into(),
            ))
        }
    };
    let eta = base.eta.add(&strict.psi);
    finish_dlvp(family, alpha, eta, 0.0)
}

fn finish_dlvp(
    family: &MeasureFamily,
    alpha: f64,
    eta: PiecewiseLinearFunction,
    oracle_eta_bound: f64,
) -> Result<DlvpPsi> {
    let eta_moment_bound = match family {
        MeasureFamily::Explicit(members) => members
            .iter()
            .map(|m| m.moment_measure().integrate(|x| eta.value(x)))
            .fold(0.0, f64::max),
        MeasureFamily::Oracle(_) => oracle_eta_bound,
    };
    let psi = tangent_psi_alpha(&eta, alpha)?;
    let psi_integral_bound = match family {
        MeasureFamily::Explicit(members) => members
            .iter()
            .map(|m| m.integrate(|x| psi.value(x)))
            .fold(0.0, f64::max),
        MeasureFamily::Oracle(_) => {
            // ψ_α ≤ s on the region where η < 1 and ψ_α ≤ s·η(s) elsewhere
            let s_star = eta
                .breakpoints()
                .iter()
                .zip(eta.values())
                .find(|(_, &y)| y >= 1.0)
                .map(|(&x, _)| x)
                .unwrap_or_else(|| *eta.breakpoints().last().expect("nonempty"));
            let m1 = eta.breakpoints().get(1).copied().unwrap_or(0.0);
            let below = if m1 > 0.0 {
                s_star * family.tail_sup(m1)?
            } else {
                family.ui_tail(0.0)?
            };
            eta_moment_bound + below
        }
    };
    Ok(DlvpPsi {
        psi,
        eta,
        alpha,
        eta_moment_bound,
        psi_integral_bound,
    })
}

/// Lower tangent envelope of ψ_α = ∫₀^s η^α: node values come from the exact
/// per-segment power-rule integral of η^α, tangent slopes are η(node)^α, and
/// the returned function is max of the tangent lines (≤ ψ_α pointwise, convex,
/// equal to ψ_α at the nodes and exact wherever η is constant).
fn tangent_psi_alpha(eta: &PiecewiseLinearFunction, alpha: f64) -> Result<PiecewiseLinearFunction> {
    let bps = eta.breakpoints();
    let last = *bps.last().expect("nonempty");
    let mut nodes = vec![0.0];
    for w in bps.windows(2) {
        let (a, b) = (w[0], w[1]);
        for k in 1..=DLVP_SUBDIVISIONS {
            nodes.push(a + (b - a) * k as f64 / DLVP_SUBDIVISIONS as f64);
        }
    }
    if nodes.len() == 1 {
        nodes.push(last.max(1.0));
    }
    // cumulative exact integrals of η^α at the nodes
    let mut values = vec![0.0];
    let mut acc = 0.0;
    for w in nodes.windows(2) {
        acc += integral_eta_alpha(eta, alpha, w[0], w[1]);
        values.push(acc);
    }
    // tangents (point, value, slope); max of tangents of a convex function
    let mut tangents: Vec<(f64, f64, f64)> = Vec::with_capacity(nodes.len());
    for (&s, &v) in nodes.iter().zip(&values) {
        let slope = eta.value(s).max(0.0).powf(alpha);
        match tangents.last() {
            Some(&(_, _, prev)) if slope <= prev + 1e-15 => continue,
            _ => tangents.push((s, v, slope)),
        }
    }
    if tangents.len() == 1 {
        let (s, v, m) = tangents[0];
        return PiecewiseLinearFunction::new(vec![s], vec![v], m, m);
    }
    // breakpoints at consecutive tangent crossings
    let mut xs = Vec::with_capacity(tangents.len() - 1);
    let mut ys = Vec::with_capacity(tangents.len() - 1);
    for w in tangents.windows(2) {
        let (s1, v1, m1) = w[0];
        let (s2, v2, m2) = w[1];
        let cross = ((v2 - m2 * s2) - (v1 - m1 * s1)) / (m1 - m2);
        let y = v1 + m1 * (cross - s1);
        if xs.last().map_or(true, |&prev| cross > prev) {
            xs.push(cross);
            ys.push(y);
        }
    }
    let left = tangents[0].2;
    let right = tangents[tangents.len() - 1].2;
    PiecewiseLinearFunction::new(xs, ys, left, right)
}

/// ∫_a^b η(u)^α du with η piecewise affine: power rule on each affine piece.
fn integral_eta_alpha(eta: &PiecewiseLinearFunction, alpha: f64, a: f64, b: f64) -> f64 {
    let ea = eta.value(a).max(0.0);
    let eb = eta.value(b).max(0.0);
    let slope = (eb - ea) / (b - a);
    if slope.abs() < 1e-15 {
        return ea.powf(alpha) * (b - a);
    }
    (eb.powf(alpha + 1.0) - ea.powf(alpha + 1.0)) / (slope * (alpha + 1.0))
}

/// Is sup_ν ∫ (s − m)⁺ dν(s) finite? Explicit families certify it exactly via
/// the moment tail; oracle families answer through U(m). An oracle without a
/// moment-tail query cannot certify integrability and reports `holds = false`
/// with an infinite bound (this operation never errors).
#[derive(Debug, Clone, Copy)]
pub struct ConvexCriterion {
    pub holds: bool,
    pub bound: f64,
}

pub fn check_convex_criterion(family: &MeasureFamily, m: f64) -> ConvexCriterion {
    let m = m.max(0.0);
    let bound = match family {
        MeasureFamily::Explicit(members) => members
            .iter()
            .map(|mb| mb.moment_tail(m))
            .fold(0.0, f64::max),
        MeasureFamily::Oracle(oracle) => match oracle.query_moment(m) {
            Ok(v) => v,
            Err(_) => f64::INFINITY,
        },
    };
    ConvexCriterion {
        holds: bound.is_finite(),
        bound,
    }
}
