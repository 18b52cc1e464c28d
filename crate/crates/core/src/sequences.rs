//! Weight sequences `M = (M_p)_p` in quotient representation.
//!
//! A sequence is stored through `log M_0` and the logarithms of its quotients
//! `μ_p = M_p / M_{p-1}` for `p = 1..P` (default depth `P = 512`), with
//! cached prefix sums so `log(M_p / M_0)` is an O(1) lookup. The quotient
//! representation is canonical because every formula downstream (piecewise
//! associated-weight evaluation, product/quotient algebra, log-convexity) is
//! quotient-driven:
//!
//! * `M` is log-convex (`M_p² ≤ M_{p-1} M_{p+1}`) iff the quotients are
//!   non-decreasing;
//! * pointwise product/quotient of sequences adds/subtracts log-quotients
//!   elementwise, exactly in the log domain;
//! * the limit `M_ι = liminf (M_p/M_0)^{1/p}` equals `lim μ_p` for
//!   log-convex `M`.
//!
//! Beyond depth `P` a sequence carries a [`Tail`]: `Explicit` (data simply
//! ends; asymptotic predicates become finite-evidence estimates),
//! `ClosedForm` (a formula generates `log μ_p` for every `p`, so asymptotic
//! predicates are analytic and evaluation has no truncation horizon), or
//! `ZeroDegenerate` (`M_p = 0` for `p > 0`, the extreme limiting case).

use crate::extreal::{ExtReal, Finite, NegInf, PosInf};
use crate::{Error, Result};
use std::sync::OnceLock;

/// Default truncation depth for the explicit quotient table.
pub const DEFAULT_DEPTH: usize = 512;

/// Margin for strict-inequality probe tests (tail minima must exceed
/// `1 + EPS_MARGIN`, etc.). Fixed and documented for reproducibility.
pub const EPS_MARGIN: f64 = 0.05;

/// Relative threshold under which a decreasing probe ratio is classified as
/// tending to 0.
pub const EPS_REL: f64 = 1e-6;

/// `log p!`, exact by summation for small `p`, Stirling series beyond.
///
/// The Stirling tail `p ln p − p + ½ln(2πp) + 1/(12p) − 1/(360p³) +
/// 1/(1260p⁵)` has relative error below 1e−16 for `p ≥ 256`, far inside the
/// table range, so the two branches agree where they meet.
pub fn ln_factorial(p: u64) -> f64 {
    const TABLE_LEN: usize = 2048;
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = vec![0.0; TABLE_LEN];
        for i in 2..TABLE_LEN {
            t[i] = t[i - 1] + (i as f64).ln();
        }
        t
    });
    if (p as usize) < TABLE_LEN {
        table[p as usize]
    } else {
        let x = p as f64;
        x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + 1.0 / (12.0 * x)
            - 1.0 / (360.0 * x.powi(3))
            + 1.0 / (1260.0 * x.powi(5))
    }
}

/// Closed-form generators for `log μ_p` beyond the explicit table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedFormTail {
    /// Gevrey-type quotients `μ_p = p^s`, i.e. `log μ_p = s·log p`.
    Gevrey {
        /// The Gevrey exponent `s > 0`.
        s: f64,
    },
    /// Affine-in-log quotients `log μ_p = a + b·log p`. Covers constant
    /// quotients (`b = 0`) and products/quotients of Gevrey-type tails.
    AffineLog {
        /// Constant term of `log μ_p`.
        a: f64,
        /// Coefficient of `log p`.
        b: f64,
    },
}

impl ClosedFormTail {
    /// Constant quotients `μ_p ≡ e^c`.
    pub fn constant(log_mu: f64) -> ClosedFormTail {
        ClosedFormTail::AffineLog { a: log_mu, b: 0.0 }
    }

    /// `(a, b)` of the affine-in-log normal form `log μ_p = a + b log p`.
    pub fn as_affine(self) -> (f64, f64) {
        match self {
            ClosedFormTail::Gevrey { s } => (0.0, s),
            ClosedFormTail::AffineLog { a, b } => (a, b),
        }
    }

    /// `log μ_p` for arbitrary `p ≥ 1`.
    pub fn log_mu(self, p: u64) -> f64 {
        let (a, b) = self.as_affine();
        a + b * (p as f64).ln()
    }

    /// `Σ_{i=from..=to} log μ_i` in closed form.
    pub fn log_mu_sum(self, from: u64, to: u64) -> f64 {
        if to < from {
            return 0.0;
        }
        let (a, b) = self.as_affine();
        a * ((to - from + 1) as f64) + b * (ln_factorial(to) - ln_factorial(from - 1))
    }

    /// `lim_{p→∞} μ_p` as an extended real.
    pub fn quotient_limit(self) -> ExtReal {
        let (a, b) = self.as_affine();
        if b > 0.0 {
            PosInf
        } else if b < 0.0 {
            ExtReal::ZERO
        } else {
            Finite(a.exp())
        }
    }
}

/// Continuation of a sequence past the explicit quotient table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// The data ends at depth `P`; asymptotic predicates are probe estimates.
    Explicit,
    /// A formula generates `log μ_p` for all `p`; asymptotics are analytic.
    ClosedForm(ClosedFormTail),
    /// `M_0 > 0`, `M_p = 0` for `p ≥ 1` — the extreme degenerate case.
    ZeroDegenerate,
}

/// The limit data of a sequence: `M_ι = liminf (M_p/M_0)^{1/p}` and
/// `M_inf = inf_{p>0} (M_p/M_0)^{1/p}`, with `M_inf ≤ M_ι`.
///
/// For log-convex `M` the liminf is a genuine limit and equals `lim μ_p`,
/// while `M_inf = μ_1`. `exact` is `true` only when the tail is closed-form
/// (analytic limit); otherwise the value is a finite-depth probe estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IotaValue {
    /// `M_ι ≥ 0` (`+∞` for Gevrey-type growth).
    pub iota: ExtReal,
    /// `M_inf = inf_{p>0} (M_p/M_0)^{1/p}`.
    pub inf_root: ExtReal,
    /// Whether the value is analytic rather than a finite-probe estimate.
    pub exact: bool,
}

/// Outcome of a sequence (or function) comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `M ⪯ N`: `sup_p (M_p/N_p)^{1/p} < ∞` (first is dominated by second).
    Preceq,
    /// `M ◁ N`: `(M_p/N_p)^{1/p} → 0` (strict domination).
    Triangle,
    /// Both `M ⪯ N` and `N ⪯ M`.
    Equivalent,
    /// No forward relation `M ⪯ N` established. In the demonstrated case the
    /// ratio oscillates (observed `min < 0.5` and `max > 2`); otherwise the
    /// evidence merely shows unbounded growth of the ratio.
    NotComparable,
}

/// Comparison verdict with its certifying constants.
///
/// `c_upper` approximates `C_{M⪯N} = sup_p ((M_p/M_0)/(N_p/N_0))^{1/p}` and
/// `c_limsup` the corresponding limsup; `c_limsup = 0` characterizes `M ◁ N`
/// and `c_limsup < ∞` characterizes `M ⪯ N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationVerdict {
    /// The classified relation of the first argument to the second.
    pub relation: Relation,
    /// `sup_p r_p` (refined analytically for closed-form tails).
    pub c_upper: ExtReal,
    /// `limsup_p r_p` (analytic limit for closed-form tails, else the tail
    /// window maximum).
    pub c_limsup: ExtReal,
    /// Depth of the probe that produced the verdict.
    pub probe_depth: usize,
    /// Whether the classification is analytic (closed-form tails) or
    /// finite evidence.
    pub exact: bool,
}

/// Boolean predicate outcome carrying its witnessing constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredicateOutcome {
    /// Whether the predicate holds (on the probed range).
    pub holds: bool,
    /// The witnessing constant (e.g. `sup_p μ_{2p}/μ_p` for moderate growth).
    pub constant: f64,
    /// Analytic (closed-form tail) vs finite-evidence verdict.
    pub exact: bool,
}

/// A weight sequence in quotient representation. Immutable after
/// construction; all operations are pure.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence {
    log_m0: f64,
    /// `log μ_p` for `p = 1..=P` (index `p-1`). Empty for the degenerate case.
    log_quotients: Vec<f64>,
    /// `prefix[p] = log(M_p / M_0)`; `prefix[0] = 0`.
    prefix: Vec<f64>,
    tail: Tail,
    log_convex: bool,
}

impl WeightSequence {
    /// Gevrey sequence `G^s = (p!^s)`: `log M_0 = 0`, `log μ_p = s log p`,
    /// closed-form tail. Log-convex, normalized, `M_ι = +∞`.
    pub fn gevrey(s: f64, depth: usize) -> Result<WeightSequence> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::InvalidSequence(format!(
                "Gevrey exponent must be finite and positive, got {s}"
            )));
        }
        let log_mu: Vec<f64> = (1..=depth).map(|p| s * (p as f64).ln()).collect();
        WeightSequence::from_quotients(0.0, log_mu, Tail::ClosedForm(ClosedFormTail::Gevrey { s }))
    }

    /// Builds a sequence from `log M_0` and the table of `log μ_p`.
    ///
    /// The log-convexity flag is computed (quotients non-decreasing over the
    /// representable range, including the seam into a closed-form tail).
    pub fn from_quotients(log_m0: f64, log_mu: Vec<f64>, tail: Tail) -> Result<WeightSequence> {
        if !log_m0.is_finite() {
            return Err(Error::InvalidSequence(format!(
                "log M_0 must be finite, got {log_m0}"
            )));
        }
        if matches!(tail, Tail::ZeroDegenerate) {
            return Err(Error::InvalidSequence(
                "use WeightSequence::zero_degenerate for the degenerate case".into(),
            ));
        }
        if log_mu.is_empty() {
            return Err(Error::InvalidSequence("empty quotient table".into()));
        }
        if let Some(bad) = log_mu.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidSequence(format!(
                "non-finite log quotient {bad}"
            )));
        }
        let mut prefix = Vec::with_capacity(log_mu.len() + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        for &q in &log_mu {
            acc += q;
            prefix.push(acc);
        }
        let mut log_convex = log_mu.windows(2).all(|w| w[0] <= w[1]);
        if let Tail::ClosedForm(cf) = tail {
            let p_next = log_mu.len() as u64 + 1;
            let (_, b) = cf.as_affine();
            // The tail must not break monotonicity at the seam or beyond.
            log_convex = log_convex && b >= 0.0 && *log_mu.last().unwrap() <= cf.log_mu(p_next);
        }
        Ok(WeightSequence {
            log_m0,
            log_quotients: log_mu,
            prefix,
            tail,
            log_convex,
        })
    }

    /// The degenerate sequence: `M_0 = e^{log_m0} > 0`, `M_p = 0` for `p ≥ 1`.
    pub fn zero_degenerate(log_m0: f64) -> WeightSequence {
        WeightSequence {
            log_m0,
            log_quotients: Vec::new(),
            prefix: vec![0.0],
            tail: Tail::ZeroDegenerate,
            log_convex: false,
        }
    }

    /// The constant sequence `M_p ≡ 1` (quotients all 1), closed-form tail.
    pub fn constant_one(depth: usize) -> WeightSequence {
        WeightSequence::from_quotients(
            0.0,
            vec![0.0; depth],
            Tail::ClosedForm(ClosedFormTail::constant(0.0)),
        )
        .expect("constant sequence is always valid")
    }

    /// Truncation depth `P` of the explicit quotient table.
    pub fn depth(&self) -> usize {
        self.log_quotients.len()
    }

    /// The tail specification.
    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// `log M_0`.
    pub fn log_m0(&self) -> f64 {
        self.log_m0
    }

    /// Whether the quotient sequence is non-decreasing (⟺ log-convexity).
    pub fn is_log_convex(&self) -> bool {
        self.log_convex
    }

    /// Whether this is the degenerate `M_p = 0 (p ≥ 1)` sequence.
    pub fn is_zero_degenerate(&self) -> bool {
        matches!(self.tail, Tail::ZeroDegenerate)
    }

    /// Normalization predicate `1 = M_0 ≤ M_1`.
    pub fn is_normalized(&self) -> bool {
        self.log_m0 == 0.0 && self.log_quotients.first().is_some_and(|&q| q >= 0.0)
    }

    /// Rescales to `M̃_p = M_p / M_0` (so `M̃_0 = 1`).
    pub fn normalize(&self) -> WeightSequence {
        let mut out = self.clone();
        out.log_m0 = 0.0;
        out
    }

    /// Re-truncates the quotient table to `depth`. Closed-form tails may
    /// extend the table; explicit tails can only shrink.
    pub fn truncated(&self, depth: usize) -> Result<WeightSequence> {
        if self.is_zero_degenerate() || depth == self.depth() {
            return Ok(self.clone());
        }
        if depth == 0 {
            return Err(Error::InvalidSequence("depth must be positive".into()));
        }
        let log_mu: Option<Vec<f64>> = (1..=depth as u64).map(|p| self.log_mu(p)).collect();
        let log_mu = log_mu.ok_or_else(|| {
            Error::InvalidSequence(format!(
                "cannot extend an explicit table of length {} to depth {depth}",
                self.depth()
            ))
        })?;
        WeightSequence::from_quotients(self.log_m0, log_mu, self.tail)
    }

    /// `log μ_p` for `p ≥ 1`; closed-form tails extend past the table.
    pub fn log_mu(&self, p: u64) -> Option<f64> {
        if p == 0 {
            return Some(0.0); // μ_0 := 1 by convention.
        }
        if p as usize <= self.log_quotients.len() {
            Some(self.log_quotients[p as usize - 1])
        } else if let Tail::ClosedForm(cf) = self.tail {
            Some(cf.log_mu(p))
        } else {
            None
        }
    }

    /// `μ_p` as `f64` (may overflow to `+∞` for enormous `p`).
    pub fn mu(&self, p: u64) -> Option<f64> {
        self.log_mu(p).map(f64::exp)
    }

    /// `log(M_p / M_0)`; closed-form tails extend past the table.
    /// `None` for `p` past an `Explicit` tail, and for the degenerate case
    /// with `p ≥ 1` (where `M_p = 0`).
    pub fn log_m_rel(&self, p: u64) -> Option<f64> {
        if p as usize <= self.depth() && !(self.is_zero_degenerate() && p > 0) {
            Some(self.prefix[p as usize])
        } else if let Tail::ClosedForm(cf) = self.tail {
            let last = self.depth() as u64;
            Some(self.prefix[self.depth()] + cf.log_mu_sum(last + 1, p))
        } else {
            None
        }
    }

    /// The full quotient table `log μ_1 .. log μ_P`.
    pub fn log_quotients(&self) -> &[f64] {
        &self.log_quotients
    }

    /// Gevrey exponent recognition: returns `s` when the sequence is
    /// (numerically) exactly `G^s` — normalized, quotients `s log p`, tail
    /// of Gevrey/affine form with zero constant term.
    pub fn gevrey_exponent(&self) -> Option<f64> {
        if self.log_m0 != 0.0 || self.is_zero_degenerate() {
            return None;
        }
        let (a, b) = match self.tail {
            Tail::ClosedForm(cf) => cf.as_affine(),
            _ => return None,
        };
        if a != 0.0 || b <= 0.0 {
            return None;
        }
        let ok = self
            .log_quotients
            .iter()
            .enumerate()
            .all(|(i, &q)| (q - b * ((i + 1) as f64).ln()).abs() <= 1e-12 * (1.0 + q.abs()));
        ok.then_some(b)
    }

    /// First index `p₀` from which the quotients are exactly constant through
    /// the end of the table *and* the tail continues that constant. For such
    /// stabilized sequences `M_ι = μ_{p₀}` is attained and the boundary value
    /// `ω_M(M_ι)` has a closed form.
    pub fn stabilization_index(&self) -> Option<u64> {
        let cf = match self.tail {
            Tail::ClosedForm(cf) => cf,
            _ => return None,
        };
        let (a, b) = cf.as_affine();
        if b != 0.0 {
            return None;
        }
        let last = *self.log_quotients.last()?;
        if last != a {
            return None;
        }
        let mut p0 = self.depth();
        while p0 > 1 && self.log_quotients[p0 - 2] == a {
            p0 -= 1;
        }
        Some(p0 as u64)
    }

    /// `M_ι` and `M_inf` (see [`IotaValue`]).
    pub fn iota(&self) -> IotaValue {
        if self.is_zero_degenerate() {
            return IotaValue {
                iota: ExtReal::ZERO,
                inf_root: ExtReal::ZERO,
                exact: true,
            };
        }
        let depth = self.depth();
        let root = |p: usize| (self.prefix[p] / p as f64).exp();
        let mut inf_root = f64::INFINITY;
        for p in 1..=depth {
            inf_root = inf_root.min(root(p));
        }
        match self.tail {
            Tail::ClosedForm(cf) => {
                let limit = cf.quotient_limit();
                // The Cesàro mean of log μ_p converges to lim log μ_p, so
                // M_ι = lim μ_p analytically (log-convex or not, since the
                // closed forms are eventually monotone).
                let inf = match limit {
                    Finite(l) if l < inf_root => Finite(l),
                    _ => Finite(inf_root),
                };
                IotaValue {
                    iota: limit,
                    inf_root: inf,
                    exact: true,
                }
            }
            Tail::Explicit => {
                // Tail-window probe: the mean of the trailing log-quotients
                // tracks lim μ_p far faster than the full-range geometric
                // mean (whose O(log p / p) bias is visible even at p = 512).
                let lo = (3 * depth / 4).max(1);
                let window = &self.log_quotients[lo - 1..];
                let est = (window.iter().sum::<f64>() / window.len() as f64).exp();
                IotaValue {
                    iota: Finite(est),
                    inf_root: Finite(inf_root),
                    exact: false,
                }
            }
            Tail::ZeroDegenerate => unreachable!(),
        }
    }

    /// Pointwise product `(M·N)_p = M_p N_p`: log-quotients add elementwise.
    pub fn pointwise_product(&self, other: &WeightSequence) -> WeightSequence {
        if self.is_zero_degenerate() || other.is_zero_degenerate() {
            return WeightSequence::zero_degenerate(self.log_m0 + other.log_m0);
        }
        self.combine(other, 1.0)
    }

    /// Pointwise quotient `(M/N)_p = M_p / N_p`: log-quotients subtract
    /// elementwise. The divisor must be positive (not degenerate).
    pub fn pointwise_quotient(&self, other: &WeightSequence) -> Result<WeightSequence> {
        if other.is_zero_degenerate() {
            return Err(Error::DegenerateSequence(
                "division by the zero-degenerate sequence".into(),
            ));
        }
        if self.is_zero_degenerate() {
            return Ok(WeightSequence::zero_degenerate(self.log_m0 - other.log_m0));
        }
        Ok(self.combine(other, -1.0))
    }

    fn combine(&self, other: &WeightSequence, sign: f64) -> WeightSequence {
        let depth = self.depth().min(other.depth());
        let log_mu: Vec<f64> = (0..depth)
            .map(|i| self.log_quotients[i] + sign * other.log_quotients[i])
            .collect();
        let tail = match (self.tail, other.tail) {
            (Tail::ClosedForm(a), Tail::ClosedForm(b)) => {
                let (a1, b1) = a.as_affine();
                let (a2, b2) = b.as_affine();
                Tail::ClosedForm(ClosedFormTail::AffineLog {
                    a: a1 + sign * a2,
                    b: b1 + sign * b2,
                })
            }
            _ => Tail::Explicit,
        };
        WeightSequence::from_quotients(self.log_m0 + sign * other.log_m0, log_mu, tail)
            .expect("finite inputs combine to finite outputs")
    }

    /// The log-convex minorant `M^lc`: lower convex hull of `(p, log M_p)`.
    ///
    /// Idempotent; pointwise `≤ M`; output quotients are non-decreasing.
    /// The degenerate sequence is rejected.
    pub fn log_convex_minorant(&self) -> Result<WeightSequence> {
        if self.is_zero_degenerate() {
            return Err(Error::DegenerateSequence(
                "no log-convex minorant of the degenerate sequence".into(),
            ));
        }
        if self.log_convex {
            return Ok(self.clone());
        }
        // Lower convex hull of (p, prefix[p]) by a monotone-chain stack scan
        // (x-coordinates are already sorted).
        let n = self.prefix.len();
        let mut hull: Vec<usize> = Vec::with_capacity(n);
        for p in 0..n {
            while hull.len() >= 2 {
                let (i, j) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                // Keep j only if it lies strictly below the chord i→p.
                let lhs = (self.prefix[j] - self.prefix[i]) * (p - i) as f64;
                let rhs = (self.prefix[p] - self.prefix[i]) * (j - i) as f64;
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        // Interpolate hull values back onto integer indices and take
        // successive differences as the new quotients.
        let mut hull_vals = vec![0.0; n];
        for w in hull.windows(2) {
            let (i, j) = (w[0], w[1]);
            for p in i..=j {
                let th = (p - i) as f64 / (j - i) as f64;
                hull_vals[p] = self.prefix[i] + th * (self.prefix[j] - self.prefix[i]);
            }
        }
        let log_mu: Vec<f64> = (1..n).map(|p| hull_vals[p] - hull_vals[p - 1]).collect();
        // A non-log-convex sequence cannot keep an analytic tail claim: the
        // hull near P depends on data past P that we do not have.
        WeightSequence::from_quotients(self.log_m0, log_mu, Tail::Explicit)
    }

    /// Compares `self` to `other` via `r_p = ((M_p/M_0)/(N_p/N_0))^{1/p}`.
    ///
    /// Closed-form tails classify analytically (the limit of `log r_p` is
    /// computed exactly); explicit tails classify on finite evidence with
    /// `exact = false`, using the last-quartile tail window and requiring
    /// demonstrated oscillation (`min r_p < 0.5` and `max r_p > 2`) before
    /// asserting the not-comparable verdict.
    pub fn compare(&self, other: &WeightSequence) -> Result<RelationVerdict> {
        if self.is_zero_degenerate() || other.is_zero_degenerate() {
            return Err(Error::DegenerateSequence(
                "compare requires positive sequences".into(),
            ));
        }
        let depth = self.depth().min(other.depth());
        let log_r: Vec<f64> = (1..=depth)
            .map(|p| (self.prefix[p] - other.prefix[p]) / p as f64)
            .collect();
        let sup = log_r.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = log_r.iter().cloned().fold(f64::INFINITY, f64::min);
        let tail_lo = 3 * depth / 4;
        let tail_window = &log_r[tail_lo.saturating_sub(1)..];

        let analytic = match (self.tail, other.tail) {
            (Tail::ClosedForm(a), Tail::ClosedForm(b)) => {
                let (a1, b1) = a.as_affine();
                let (a2, b2) = b.as_affine();
                // log r_p → (a1−a2) + (b1−b2)·(log p!)/p + O(1/p); the middle
                // term diverges with the sign of b1−b2.
                Some(if b1 > b2 {
                    PosInf
                } else if b1 < b2 {
                    NegInf
                } else {
                    Finite(a1 - a2)
                })
            }
            _ => None,
        };

        let oscillation = min < (0.5f64).ln() && sup > (2.0f64).ln();
        let verdict = |relation, c_upper, c_limsup, exact| {
            Ok(RelationVerdict {
                relation,
                c_upper,
                c_limsup,
                probe_depth: depth,
                exact,
            })
        };

        if let Some(lim) = analytic {
            let c_limsup = lim.exp();
            let c_upper = match lim {
                PosInf => PosInf,
                _ => Finite(sup.exp()).max(c_limsup),
            };
            return match lim {
                NegInf => verdict(Relation::Triangle, c_upper, ExtReal::ZERO, true),
                PosInf => verdict(Relation::NotComparable, PosInf, PosInf, true),
                Finite(_) => {
                    // Forward bounded; the reverse limit is just the negation.
                    verdict(Relation::Equivalent, c_upper, c_limsup, true)
                }
            };
        }

        // Finite-evidence route: trend of log r_p over the tail window.
        let trend = linear_trend(tail_window);
        let tail_max = tail_window
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        let decreasing = trend < -1e-9;
        let increasing = trend > 1e-6;
        let c_upper = Finite(sup.exp());
        let c_limsup = Finite(tail_max.exp());
        if oscillation {
            return verdict(Relation::NotComparable, c_upper, c_limsup, false);
        }
        if decreasing && tail_window.last().is_some_and(|&v| v.exp() < EPS_REL) {
            return verdict(Relation::Triangle, c_upper, ExtReal::ZERO, false);
        }
        if increasing {
            return verdict(Relation::NotComparable, c_upper, c_limsup, false);
        }
        // Bounded forward; check the reverse direction for equivalence.
        let rev_trend = linear_trend(&tail_window.iter().map(|x| -x).collect::<Vec<_>>());
        if rev_trend > 1e-6 {
            verdict(Relation::Preceq, c_upper, c_limsup, false)
        } else {
            verdict(Relation::Equivalent, c_upper, c_limsup, false)
        }
    }

    /// Builds a log-convex sequence whose ratio against `N` swings across
    /// the band `[1/2, 2]`, so that neither direction of `⪯` is supported by
    /// the evidence: an early sprint (quotients a fixed factor above `N`'s)
    /// pushes `r_p = (M_p/N_p)^{1/p}` above 2, then a long slack phase
    /// (quotients a fixed factor below `N`'s, clamped non-decreasing) drags
    /// it below 1/2 by the end of the table.
    pub fn oscillating_against(n: &WeightSequence) -> Result<WeightSequence> {
        if !n.is_log_convex() {
            return Err(Error::InvalidSequence(
                "oscillation base must be log-convex".into(),
            ));
        }
        if n.iota().iota != PosInf {
            return Err(Error::InvalidSequence(
                "oscillation base must have infinite iota".into(),
            ));
        }
        let depth = n.depth();
        // Sprint offset and slack deficit in log-quotient units. The sprint
        // peaks at r = e^c > 2; the slack slope −d needs roughly
        // 0.7(1 + 1/d)·sprint_end extra indices to cross below 1/2, which
        // fits comfortably inside the table for sprint_end = depth/64.
        let c = 0.9f64;
        let d = 0.9f64;
        let sprint_end = (depth / 64).max(2);
        let mut log_mu = vec![0.0f64; depth];
        let mut prev = f64::NEG_INFINITY;
        for p in 1..=depth {
            let qn = n.log_quotients()[p - 1];
            let candidate = if p <= sprint_end { qn + c } else { qn - d };
            let q = candidate.max(prev);
            log_mu[p - 1] = q;
            prev = q;
        }
        WeightSequence::from_quotients(0.0, log_mu, Tail::Explicit)
    }

    /// Moderate-growth test: `sup_p μ_{2p}/μ_p < ∞`, with the witnessing
    /// constant. Analytic for closed-form tails (the affine forms always
    /// satisfy it with tail constant `2^b`); finite-evidence otherwise.
    pub fn has_mg(&self) -> PredicateOutcome {
        let half = self.depth() / 2;
        let mut sup = f64::NEG_INFINITY;
        for p in 1..=half {
            let d = self.log_quotients[2 * p - 1] - self.log_quotients[p - 1];
            sup = sup.max(d);
        }
        match self.tail {
            Tail::ClosedForm(cf) => {
                let (_, b) = cf.as_affine();
                let tail_const = b * (2.0f64).ln();
                PredicateOutcome {
                    holds: true,
                    constant: sup.max(tail_const).exp(),
                    exact: true,
                }
            }
            _ => {
                // Unbounded growth shows as an increasing ratio over the
                // top half of the probed range.
                let ratios: Vec<f64> = (half / 2..=half)
                    .map(|p| self.log_quotients[2 * p - 1] - self.log_quotients[p - 1])
                    .collect();
                let holds = linear_trend(&ratios) <= 1e-6;
                PredicateOutcome {
                    holds,
                    constant: sup.exp(),
                    exact: false,
                }
            }
        }
    }

    /// Growth criterion: `liminf_p (M_{Qp})^{1/(Qp)} / (M_p)^{1/p} > 1` for
    /// some `Q ∈ {2,4,8,16}` (tail-window minimum above `1 + ε_margin`).
    pub fn has_om1_criterion(&self) -> PredicateOutcome {
        self.om1_scan(false)
    }

    /// Strong variant: the same ratio tends to `+∞` for some `Q` — probed as
    /// the tail window increasing and exceeding every tested bound (32).
    pub fn has_om1_strong(&self) -> PredicateOutcome {
        self.om1_scan(true)
    }

    fn om1_scan(&self, strong: bool) -> PredicateOutcome {
        let depth = self.depth() as u64;
        let closed = matches!(self.tail, Tail::ClosedForm(_));
        let mut best = f64::NEG_INFINITY;
        for q in [2u64, 4, 8, 16] {
            // Probe points over the last quartile (closed-form tails extend
            // past P analytically; explicit tails need Qp ≤ P).
            let p_hi = if closed { depth } else { depth / q };
            let p_lo = (3 * p_hi / 4).max(1);
            if p_hi < p_lo + 4 {
                continue;
            }
            let mut window: Vec<f64> = Vec::new();
            for p in p_lo..=p_hi {
                let a = self.log_m_rel(q * p).unwrap() / (q * p) as f64;
                let b = self.log_m_rel(p).unwrap() / p as f64;
                window.push(a - b);
            }
            let min = window.iter().cloned().fold(f64::INFINITY, f64::min);
            best = best.max(min);
            if strong {
                if min > (32.0f64).ln() && linear_trend(&window) > 1e-9 {
                    return PredicateOutcome {
                        holds: true,
                        constant: min.exp(),
                        exact: false,
                    };
                }
            } else if min > (1.0 + EPS_MARGIN).ln() {
                return PredicateOutcome {
                    holds: true,
                    constant: min.exp(),
                    exact: closed,
                };
            }
        }
        PredicateOutcome {
            holds: false,
            constant: best.exp(),
            exact: false,
        }
    }

    /// Self-test of sequence construction: `(M_p)^c ≤ M_{cp}` for normalized
    /// log-convex sequences.
    pub fn check_power_inequality(&self, c: u64, p: u64) -> bool {
        match (self.log_m_rel(p), self.log_m_rel(c * p)) {
            (Some(lp), Some(lcp)) => c as f64 * lp <= lcp + 1e-12 * (1.0 + lcp.abs()),
            _ => false,
        }
    }
}

/// Least-squares slope of `values` against their indices — the trend test
/// used by the finite-evidence probes.
fn linear_trend(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    if values.len() < 2 {
        return 0.0;
    }
    let mean_x = (n - 1.0) / 2.0;
    let mean_y = values.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, &y) in values.iter().enumerate() {
        let dx = i as f64 - mean_x;
        num += dx * (y - mean_y);
        den += dx * dx;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gevrey_log_m_matches_factorial() {
        let g1 = WeightSequence::gevrey(1.0, 8).unwrap();
        // 3! = 6
        assert!((g1.log_m_rel(3).unwrap() - 6.0f64.ln()).abs() < 1e-12);
        let g2 = WeightSequence::gevrey(2.0, 8).unwrap();
        // μ_4 = 4² = 16
        assert!((g2.mu(4).unwrap() - 16.0).abs() < 1e-12);
    }

    #[test]
    fn gevrey_iota_is_infinite_and_exact() {
        let g1 = WeightSequence::gevrey(1.0, DEFAULT_DEPTH).unwrap();
        let iv = g1.iota();
        assert_eq!(iv.iota, PosInf);
        assert!(iv.exact);
        // For log-convex M, M_inf = μ_1 = 1.
        assert_eq!(iv.inf_root, Finite(1.0));
    }

    #[test]
    fn closed_form_extension_agrees_with_summation() {
        let g = WeightSequence::gevrey(1.5, 64).unwrap();
        let big = WeightSequence::gevrey(1.5, 300).unwrap();
        for p in [65u64, 100, 250] {
            let a = g.log_m_rel(p).unwrap();
            let b = big.log_m_rel(p).unwrap();
            assert!((a - b).abs() < 1e-9, "p={p}: {a} vs {b}");
        }
    }

    #[test]
    fn stabilized_sequence_iota_exact() {
        // μ_p = 2 − 1/p for p < 32, then constant 2.
        let seq = approach_two();
        let iv = seq.iota();
        assert_eq!(iv.iota, Finite(2.0));
        assert!(iv.exact);
        assert!(seq.is_log_convex());
        assert_eq!(seq.stabilization_index(), Some(32));
    }

    fn approach_two() -> WeightSequence {
        let log_mu: Vec<f64> = (1..=DEFAULT_DEPTH)
            .map(|p| {
                if p < 32 {
                    (2.0 - 1.0 / p as f64).ln()
                } else {
                    2.0f64.ln()
                }
            })
            .collect();
        WeightSequence::from_quotients(
            0.0,
            log_mu,
            Tail::ClosedForm(ClosedFormTail::constant(2.0f64.ln())),
        )
        .unwrap()
    }

    #[test]
    fn explicit_probe_iota_close_to_limit() {
        let log_mu: Vec<f64> = (1..=DEFAULT_DEPTH)
            .map(|p| (2.0 - 1.0 / p as f64).ln())
            .collect();
        let seq = WeightSequence::from_quotients(0.0, log_mu, Tail::Explicit).unwrap();
        let iv = seq.iota();
        assert!(!iv.exact);
        let est = iv.iota.finite().unwrap();
        assert!((est - 2.0).abs() < 1e-2, "probe estimate {est}");
    }

    #[test]
    fn constant_sequence_iota_is_one() {
        let seq = WeightSequence::constant_one(DEFAULT_DEPTH);
        assert_eq!(seq.iota().iota, Finite(1.0));
    }

    #[test]
    fn product_and_quotient_are_exact_inverses() {
        let m = WeightSequence::gevrey(1.7, 128).unwrap();
        let n = WeightSequence::gevrey(0.4, 128).unwrap();
        let back = m.pointwise_product(&n).pointwise_quotient(&n).unwrap();
        for (a, b) in back.log_quotients().iter().zip(m.log_quotients()) {
            assert!((a - b).abs() < 1e-12, "round trip drifted: {a} vs {b}");
        }
        assert_eq!(back.log_m0(), m.log_m0());
    }

    #[test]
    fn gevrey_algebra() {
        let g1 = WeightSequence::gevrey(1.0, 64).unwrap();
        let g2 = WeightSequence::gevrey(2.0, 64).unwrap();
        let prod = g1.pointwise_product(&g1);
        assert_eq!(prod.log_quotients(), g2.log_quotients());
        let quot = g2.pointwise_quotient(&g1).unwrap();
        assert!(quot.is_log_convex());
        assert_eq!(quot.gevrey_exponent(), Some(1.0));
        // G^1 / G^2 has decreasing quotients p^{-1}: not log-convex.
        let dec = g1.pointwise_quotient(&g2).unwrap();
        assert!(!dec.is_log_convex());
    }

    #[test]
    fn minorant_of_convex_input_is_identity() {
        let g = WeightSequence::gevrey(1.0, 64).unwrap();
        let lc = g.log_convex_minorant().unwrap();
        assert_eq!(lc.log_quotients(), g.log_quotients());
    }

    #[test]
    fn minorant_interpolates_below_spikes() {
        // log M = (0, log 10, 0, log 10, log 100, ...): spiky, not convex.
        let logs = [0.0, 10.0f64.ln(), 0.0, 10.0f64.ln(), 100.0f64.ln()];
        let mut log_mu: Vec<f64> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        // Continue convexly so the tail does not dominate the hull.
        for p in 5..=64 {
            log_mu.push((p as f64).ln() + 100.0f64.ln());
        }
        let m = WeightSequence::from_quotients(0.0, log_mu, Tail::Explicit).unwrap();
        assert!(!m.is_log_convex());
        let lc = m.log_convex_minorant().unwrap();
        assert!(lc.is_log_convex());
        for p in 0..=64u64 {
            assert!(
                lc.log_m_rel(p).unwrap() <= m.log_m_rel(p).unwrap() + 1e-12,
                "hull must lie below at p={p}"
            );
        }
        // Idempotent.
        let lc2 = lc.log_convex_minorant().unwrap();
        assert_eq!(lc2.log_quotients(), lc.log_quotients());
    }

    #[test]
    fn compare_gevrey_pairs() {
        let g1 = WeightSequence::gevrey(1.0, DEFAULT_DEPTH).unwrap();
        let g2 = WeightSequence::gevrey(2.0, DEFAULT_DEPTH).unwrap();
        let v = g1.compare(&g2).unwrap();
        assert_eq!(v.relation, Relation::Triangle);
        assert_eq!(v.c_limsup, ExtReal::ZERO);
        assert!(v.exact);
        let w = g1.compare(&g1).unwrap();
        assert_eq!(w.relation, Relation::Equivalent);
        assert_eq!(w.c_upper, Finite(1.0));
        let x = g2.compare(&g1).unwrap();
        assert_eq!(x.relation, Relation::NotComparable);
        assert_eq!(x.c_upper, PosInf);
    }

    #[test]
    fn oscillating_sequence_defeats_comparison() {
        let g1 = WeightSequence::gevrey(1.0, DEFAULT_DEPTH).unwrap();
        let m = WeightSequence::oscillating_against(&g1).unwrap();
        assert!(m.is_log_convex());
        // Independent oracle: scan r_p directly.
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for p in 1..=DEFAULT_DEPTH as u64 {
            let r = ((m.log_m_rel(p).unwrap() - g1.log_m_rel(p).unwrap()) / p as f64).exp();
            min = min.min(r);
            max = max.max(r);
        }
        assert!(min < 0.5, "min r_p = {min}");
        assert!(max > 2.0, "max r_p = {max}");
        let v = m.compare(&g1).unwrap();
        assert_eq!(v.relation, Relation::NotComparable);
        // The quotients keep growing alongside the base's (offset by a
        // constant factor), so the sequence is a genuine weight sequence.
        assert!(m.mu(DEFAULT_DEPTH as u64).unwrap() > 1e2);
    }

    #[test]
    fn moderate_growth_constants() {
        let g1 = WeightSequence::gevrey(1.0, DEFAULT_DEPTH).unwrap();
        let mg = g1.has_mg();
        assert!(mg.holds);
        assert!((mg.constant - 2.0).abs() < 1e-9);
        let g11 = g1.pointwise_product(&g1);
        let mg2 = g11.has_mg();
        assert!(mg2.holds);
        assert!((mg2.constant - 4.0).abs() < 1e-9);
        // μ_p = e^p grows too fast for moderate growth.
        let fast = WeightSequence::from_quotients(
            0.0,
            (1..=DEFAULT_DEPTH).map(|p| p as f64).collect(),
            Tail::Explicit,
        )
        .unwrap();
        assert!(!fast.has_mg().holds);
    }

    #[test]
    fn om1_criterion_on_gevrey() {
        let g1 = WeightSequence::gevrey(1.0, DEFAULT_DEPTH).unwrap();
        let c = g1.has_om1_criterion();
        assert!(c.holds);
        // Ratio for Q=2 tends to 2 (Stirling); probe near p=256 within 5%.
        let p = 256u64;
        let ratio = (g1.log_m_rel(2 * p).unwrap() / (2 * p) as f64
            - g1.log_m_rel(p).unwrap() / p as f64)
            .exp();
        assert!((ratio - 2.0).abs() < 0.1, "ratio {ratio}");
        assert!(!g1.has_om1_strong().holds);
        // Constant quotients (M_p = 2^p) fail the criterion: the ratio
        // (M_{Qp})^{1/(Qp)}/(M_p)^{1/p} is identically 1, below the margin.
        let slow =
            WeightSequence::from_quotients(0.0, vec![2.0f64.ln(); DEFAULT_DEPTH], Tail::Explicit)
                .unwrap();
        assert!(!slow.has_om1_criterion().holds);
    }

    #[test]
    fn om1_strong_on_rapid_growth() {
        // μ_p = e^p: (M_{Qp})^{1/(Qp)}/(M_p)^{1/p} ≈ e^{(Q−1)p/2} → ∞.
        let fast = WeightSequence::from_quotients(
            0.0,
            (1..=DEFAULT_DEPTH).map(|p| p as f64).collect(),
            Tail::Explicit,
        )
        .unwrap();
        assert!(fast.has_om1_strong().holds);
    }

    #[test]
    fn power_inequality_spot_checks() {
        let g1 = WeightSequence::gevrey(1.0, 64).unwrap();
        assert!(g1.check_power_inequality(2, 3)); // 36 ≤ 720
        let g2 = WeightSequence::gevrey(2.0, 64).unwrap();
        assert!(g2.check_power_inequality(3, 2));
        let one = WeightSequence::constant_one(64);
        assert!(one.check_power_inequality(4, 5)); // equality
    }

    #[test]
    fn iota_product_superadditive() {
        let a = approach_two();
        let b = WeightSequence::constant_one(DEFAULT_DEPTH);
        let prod = a.pointwise_product(&b);
        let ia = a.iota().iota.to_f64();
        let ib = b.iota().iota.to_f64();
        let ip = prod.iota().iota.to_f64();
        assert!(ip >= ia * ib - 1e-12);
    }

    #[test]
    fn normalize_rescales_m0_only() {
        let mut seq = WeightSequence::gevrey(1.0, 32).unwrap();
        seq.log_m0 = 3.0;
        assert!(!seq.is_normalized());
        let n = seq.normalize();
        assert!(n.is_normalized());
        assert_eq!(n.log_quotients(), seq.log_quotients());
    }
}
