//! Closed expression trees of weight functions.
//!
//! A weight function is non-decreasing on `[0,∞)` with `ω(t) → +∞`; the
//! builtins are the monomial `t^{1/α}`, `log_+ = max{0, log t}`, and
//! associated weights `ω_M`, combined by variable transforms
//! (`ω^{1/α}(t) = ω(t^{1/α})`, `ω^ι(t) = ω(1/t)`), the two generalized
//! Legendre conjugates, positive scaling, constant shift, and a
//! value-at-zero override (weight functions need not be continuous at 0).
//!
//! Trees are immutable and cheap to clone (`Arc` children). Conjugate nodes
//! precompute their exact sequence fast path at construction when both
//! operands are associated weights, so evaluation through the tree uses the
//! piecewise formulas rather than grid search whenever the theory provides
//! an exact route; `ConjOptions::force_grid` disables this for
//! grid-vs-exact cross-checks.

use std::sync::Arc;

use crate::assoc::AssociatedWeight;
use crate::conjugate::{self, ConjOptions, ConjValue, SeqUpperConj};
use crate::extreal::{ExtReal, Finite, PosInf};
use crate::sequences::{Relation, RelationVerdict, EPS_REL};
use crate::{Error, Result};

/// A lower-conjugate node with its precomputed exact path.
#[derive(Debug)]
pub struct LowerConjNode {
    /// Left operand σ.
    pub sigma: WeightFunction,
    /// Right operand τ.
    pub tau: WeightFunction,
    /// Grid options for the fallback evaluator.
    pub opts: ConjOptions,
    /// Exact piecewise route (`ω_{M·N}`) when both operands are associated.
    pub exact: Option<AssociatedWeight>,
}

/// An upper-conjugate node with its precomputed exact path.
#[derive(Debug)]
pub struct UpperConjNode {
    /// Left operand σ.
    pub sigma: WeightFunction,
    /// Right operand τ (the divisor; must vanish at 0).
    pub tau: WeightFunction,
    /// Grid options for the fallback evaluator.
    pub opts: ConjOptions,
    /// Exact sequence route (`ω_{M/N}` and the degenerate tables) when both
    /// operands are associated and the divisor is subordinate.
    pub exact: Option<SeqUpperConj>,
}

/// A weight-function expression.
#[derive(Debug, Clone)]
pub enum WeightFunction {
    /// `t ↦ t^{1/α}` for `α > 0` (written `id^{1/α}`).
    Monomial {
        /// The reciprocal exponent `α`.
        alpha: f64,
    },
    /// `t ↦ max{0, log t}`, with value 0 at 0.
    LogPlus,
    /// An associated weight `ω_M`.
    Associated(Arc<AssociatedWeight>),
    /// `ω^{1/α}(t) = ω(t^{1/α})`.
    PowerSub {
        /// Inner function ω.
        inner: Arc<WeightFunction>,
        /// The substitution exponent `α > 0`.
        alpha: f64,
    },
    /// `ω^ι(t) = ω(1/t)`, defined for `t > 0`. Non-increasing — allowed only
    /// as an intermediate node, not as a weight.
    InvertVar {
        /// Inner function ω.
        inner: Arc<WeightFunction>,
    },
    /// Lower conjugate `σ⋆̌τ(t) = inf_{s>0}{σ(s) + τ(t/s)}`.
    LowerConj(Arc<LowerConjNode>),
    /// Upper conjugate `σ⋆̂τ(t) = sup_{s≥0}{σ(s) − τ(s/t)}`.
    UpperConj(Arc<UpperConjNode>),
    /// `c·ω(t)` for `c > 0`.
    Scale {
        /// The positive factor.
        c: f64,
        /// Inner function ω.
        inner: Arc<WeightFunction>,
    },
    /// `ω(t) + c` for `c ≥ 0`, applied at every `t ≥ 0`.
    Shift {
        /// The nonnegative offset.
        c: f64,
        /// Inner function ω.
        inner: Arc<WeightFunction>,
    },
    /// Overrides the value at `t = 0` (the `σ(0) ≠ lim_{t→0+} σ(t)`
    /// discontinuity scenario is constructed with this node).
    ValueAtZero {
        /// The value at 0.
        c: ExtReal,
        /// Inner function used for `t > 0`.
        inner: Arc<WeightFunction>,
    },
}

/// Probe configuration for sampled relation and property checks.
#[derive(Debug, Clone, Copy)]
pub struct ProbeSpec {
    /// Left end of the geometric probe grid.
    pub t_lo: f64,
    /// Right end of the geometric probe grid.
    pub t_hi: f64,
    /// Number of grid points.
    pub points: usize,
}

impl Default for ProbeSpec {
    /// 200 geometric points on `[1, 1e8]` — fixed and documented so
    /// verdicts are reproducible.
    fn default() -> ProbeSpec {
        ProbeSpec {
            t_lo: 1.0,
            t_hi: 1e8,
            points: 200,
        }
    }
}

/// The sampled property conditions on weight functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightProperty {
    /// Doubling condition: `∃L ≥ 1 ∀t: ω(2t) ≤ L·ω(t) + L`.
    Om1,
    /// Halving condition: `∃H ≥ 1 ∀t: 2ω(t) ≤ ω(Ht) + H`.
    Om6,
}

/// Outcome of a sampled property check with its witnessing constant.
#[derive(Debug, Clone, Copy)]
pub struct PropertyCertificate {
    /// Which condition was probed.
    pub property: WeightProperty,
    /// The accepted constant (`L` or `H`); meaningful when `holds`.
    pub constant: f64,
    /// The probed `t` range.
    pub probe_range: (f64, f64),
    /// Whether some candidate constant satisfied the inequality on the grid.
    pub holds: bool,
    /// Always `false`: finite probing cannot certify a `∀t` statement.
    pub exact: bool,
}

impl WeightFunction {
    /// The monomial `id^{1/α}`.
    pub fn monomial(alpha: f64) -> Result<WeightFunction> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::NotAWeightFunction(format!(
                "monomial exponent must be positive, got {alpha}"
            )));
        }
        Ok(WeightFunction::Monomial { alpha })
    }

    /// Wraps an associated weight.
    pub fn associated(w: AssociatedWeight) -> WeightFunction {
        WeightFunction::Associated(Arc::new(w))
    }

    /// `ω(t^{1/α})`.
    pub fn power_sub(inner: WeightFunction, alpha: f64) -> Result<WeightFunction> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::NotAWeightFunction(format!(
                "substitution exponent must be positive, got {alpha}"
            )));
        }
        Ok(WeightFunction::PowerSub {
            inner: Arc::new(inner),
            alpha,
        })
    }

    /// `ω(1/t)` (intermediate transform, not itself a weight).
    pub fn invert_var(inner: WeightFunction) -> WeightFunction {
        WeightFunction::InvertVar {
            inner: Arc::new(inner),
        }
    }

    /// `c·ω` for `c > 0`.
    pub fn scale(c: f64, inner: WeightFunction) -> Result<WeightFunction> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::NotAWeightFunction(format!(
                "scale factor must be positive, got {c}"
            )));
        }
        Ok(WeightFunction::Scale {
            c,
            inner: Arc::new(inner),
        })
    }

    /// `ω + c` for `c ≥ 0`.
    pub fn shift(c: f64, inner: WeightFunction) -> Result<WeightFunction> {
        if !(c >= 0.0) || !c.is_finite() {
            return Err(Error::NotAWeightFunction(format!(
                "shift must be nonnegative, got {c}"
            )));
        }
        Ok(WeightFunction::Shift {
            c,
            inner: Arc::new(inner),
        })
    }

    /// Overrides the value at 0.
    pub fn value_at_zero(c: ExtReal, inner: WeightFunction) -> WeightFunction {
        WeightFunction::ValueAtZero {
            c,
            inner: Arc::new(inner),
        }
    }

    /// Lower conjugate node; precomputes the exact `ω_{M·N}` route when both
    /// operands are associated weights (unless `opts.force_grid`).
    pub fn lower_conj(
        sigma: WeightFunction,
        tau: WeightFunction,
        opts: ConjOptions,
    ) -> Result<WeightFunction> {
        let exact = if opts.force_grid {
            None
        } else {
            match (sigma.as_associated(), tau.as_associated()) {
                (Some(a), Some(b)) => {
                    Some(conjugate::lower_conj_assoc(a.sequence(), b.sequence())?.weight)
                }
                _ => None,
            }
        };
        Ok(WeightFunction::LowerConj(Arc::new(LowerConjNode {
            sigma,
            tau,
            opts,
            exact,
        })))
    }

    /// Upper conjugate node; precomputes the exact sequence route (quotient
    /// sequence / degenerate tables) when both operands are associated and
    /// the divisor is subordinate. A non-subordinate associated divisor
    /// falls back to the grid evaluator (which diverges, as it must).
    pub fn upper_conj(
        sigma: WeightFunction,
        tau: WeightFunction,
        opts: ConjOptions,
    ) -> Result<WeightFunction> {
        let exact = if opts.force_grid {
            None
        } else {
            match (sigma.as_associated(), tau.as_associated()) {
                (Some(a), Some(b)) => conjugate::upper_conj_assoc_full(a.sequence(), b.sequence())
                    .ok()
                    .filter(|r| !matches!(r, SeqUpperConj::NoForwardRelation)),
                _ => None,
            }
        };
        Ok(WeightFunction::UpperConj(Arc::new(UpperConjNode {
            sigma,
            tau,
            opts,
            exact,
        })))
    }

    /// The associated weight directly wrapped by this node, if any.
    pub fn as_associated(&self) -> Option<&AssociatedWeight> {
        match self {
            WeightFunction::Associated(w) => Some(w),
            _ => None,
        }
    }

    /// Evaluates the function at `t ≥ 0`, collapsing a divergent upper
    /// conjugate to `+∞`. Use [`WeightFunction::eval_conj`] to observe
    /// divergence distinctly.
    pub fn eval(&self, t: ExtReal) -> Result<ExtReal> {
        Ok(match self.eval_conj(t)? {
            ConjValue::Value(v) => v,
            ConjValue::Divergent => PosInf,
        })
    }

    /// Evaluates, reporting grid-detected divergence of a top-level upper
    /// conjugate as [`ConjValue::Divergent`].
    pub fn eval_conj(&self, t: ExtReal) -> Result<ConjValue> {
        if t < ExtReal::ZERO {
            return Err(Error::NegativeArgument(t.to_f64()));
        }
        let value = match self {
            WeightFunction::Monomial { alpha } => match t {
                PosInf => PosInf,
                _ => Finite(t.to_f64().powf(1.0 / alpha)),
            },
            WeightFunction::LogPlus => match t {
                PosInf => PosInf,
                _ => {
                    let x = t.to_f64();
                    if x <= 1.0 {
                        ExtReal::ZERO
                    } else {
                        Finite(x.ln())
                    }
                }
            },
            WeightFunction::Associated(w) => w.eval(t)?,
            WeightFunction::PowerSub { inner, alpha } => {
                let arg = match t {
                    PosInf => PosInf,
                    _ => Finite(t.to_f64().powf(1.0 / alpha)),
                };
                inner.eval(arg)?
            }
            WeightFunction::InvertVar { inner } => {
                if t == ExtReal::ZERO {
                    return Err(Error::RangeExceeded(
                        "inverted variable requires t > 0".into(),
                    ));
                }
                inner.eval(Finite(1.0) / t)?
            }
            WeightFunction::Scale { c, inner } => Finite(*c) * inner.eval(t)?,
            WeightFunction::Shift { c, inner } => inner.eval(t)? + Finite(*c),
            WeightFunction::ValueAtZero { c, inner } => {
                if t == ExtReal::ZERO {
                    *c
                } else {
                    inner.eval(t)?
                }
            }
            WeightFunction::LowerConj(node) => {
                if t == ExtReal::ZERO {
                    // σ⋆̌τ(0) = σ(0) + τ(0) by convention, never a grid
                    // infimum (the limit from the right may differ).
                    node.sigma.eval(ExtReal::ZERO)? + node.tau.eval(ExtReal::ZERO)?
                } else if let Some(exact) = &node.exact {
                    exact.eval(t)?
                } else {
                    conjugate::lower_conj_eval(&node.sigma, &node.tau, t, &node.opts)?
                }
            }
            WeightFunction::UpperConj(node) => {
                if t == ExtReal::ZERO {
                    // σ⋆̂τ(0) = σ(0) − τ(0) by convention.
                    node.sigma.eval(ExtReal::ZERO)? - node.tau.eval(ExtReal::ZERO)?
                } else if let Some(exact) = &node.exact {
                    exact.eval(t)?
                } else {
                    return conjugate::upper_conj_eval(&node.sigma, &node.tau, t, &node.opts);
                }
            }
        };
        Ok(ConjValue::Value(value))
    }

    /// The supremum of the interval on which the function is known to be
    /// finite (`+∞` when no finite blow-up point is known analytically).
    pub fn finite_domain_sup(&self) -> ExtReal {
        match self {
            WeightFunction::Monomial { .. } | WeightFunction::LogPlus => PosInf,
            WeightFunction::Associated(w) => {
                let iv = w.iota();
                if iv.exact {
                    iv.iota
                } else {
                    PosInf // explicit tails report lower bounds, not +∞
                }
            }
            WeightFunction::PowerSub { inner, alpha } => match inner.finite_domain_sup() {
                Finite(d) => Finite(d.powf(*alpha)),
                x => x,
            },
            WeightFunction::InvertVar { .. } => PosInf,
            WeightFunction::Scale { inner, .. }
            | WeightFunction::Shift { inner, .. }
            | WeightFunction::ValueAtZero { inner, .. } => inner.finite_domain_sup(),
            WeightFunction::LowerConj(node) => match &node.exact {
                Some(w) => WeightFunction::Associated(Arc::new(w.clone())).finite_domain_sup(),
                None => node.sigma.finite_domain_sup() * node.tau.finite_domain_sup(),
            },
            WeightFunction::UpperConj(node) => match &node.exact {
                Some(SeqUpperConj::Assoc { domain_hi, .. }) => *domain_hi,
                Some(SeqUpperConj::Zero) => PosInf,
                Some(SeqUpperConj::NoForwardRelation) | None => PosInf,
            },
        }
    }

    /// Largest argument at which the tree can be evaluated without leaving
    /// the representable bracket range of its associated-weight leaves.
    pub fn probe_ceiling(&self) -> f64 {
        const HARD: f64 = 1e300;
        match self {
            WeightFunction::Monomial { .. } | WeightFunction::LogPlus => HARD,
            WeightFunction::Associated(w) => {
                let seq = w.sequence();
                match seq.tail() {
                    crate::sequences::Tail::ClosedForm(_) => {
                        // Bracket search is capped near p = 2^50.
                        seq.mu(1u64 << 50).map_or(HARD, |m| m.min(HARD))
                    }
                    _ => seq.mu(seq.depth() as u64).map_or(HARD, |m| m.min(HARD)),
                }
            }
            WeightFunction::PowerSub { inner, alpha } => {
                inner.probe_ceiling().powf(*alpha).min(HARD)
            }
            WeightFunction::InvertVar { .. } => HARD,
            WeightFunction::Scale { inner, .. }
            | WeightFunction::Shift { inner, .. }
            | WeightFunction::ValueAtZero { inner, .. } => inner.probe_ceiling(),
            WeightFunction::LowerConj(node) => {
                node.sigma.probe_ceiling().min(node.tau.probe_ceiling())
            }
            WeightFunction::UpperConj(node) => {
                node.sigma.probe_ceiling().min(node.tau.probe_ceiling())
            }
        }
    }

    /// Checks the weight-function requirements: not an inverted-variable
    /// transform at top level, non-decreasing on a probe grid, and divergent
    /// at large `t` (bounded non-decreasing functions are rejected).
    pub fn validate_weight(&self) -> Result<()> {
        if matches!(self, WeightFunction::InvertVar { .. }) {
            return Err(Error::NotAWeightFunction(
                "inverted-variable transform is non-increasing; allowed only as an intermediate node".into(),
            ));
        }
        let hi = self.probe_ceiling().min(1e12);
        let grid = [1.0, hi.powf(0.25), hi.powf(0.5), hi.powf(0.75), hi];
        let mut prev = None;
        for &t in &grid {
            let v = self.eval(Finite(t))?;
            if let Some(p) = prev {
                if v < p {
                    return Err(Error::NotAWeightFunction(format!(
                        "decreasing between probes near t = {t}"
                    )));
                }
            }
            prev = Some(v);
        }
        let lo = self.eval(Finite(grid[0]))?;
        let top = self.eval(Finite(hi))?;
        if top != PosInf && !(top > lo) {
            return Err(Error::NotAWeightFunction(
                "does not diverge over the probe range".into(),
            ));
        }
        Ok(())
    }

    /// Classifies the relation of `self` to `other` by sampling the ratio
    /// `other(t)/self(t)` on a geometric grid: `Preceq` when the tail is
    /// bounded (`other = O(self)`), `Triangle` when it decreases below the
    /// relative threshold (`other = o(self)`), `Equivalent` when bounded in
    /// both directions. Always finite evidence (`exact = false`).
    pub fn relate(&self, other: &WeightFunction, probe: &ProbeSpec) -> Result<RelationVerdict> {
        let hi = probe
            .t_hi
            .min(self.probe_ceiling())
            .min(other.probe_ceiling());
        let ts: Vec<f64> = geometric(probe.t_lo, hi, probe.points);
        let mut ratio = Vec::with_capacity(ts.len());
        for &t in &ts {
            let f = self.eval(Finite(t))?;
            let g = other.eval(Finite(t))?;
            ratio.push((g / f).to_f64());
        }
        let tail = &ratio[3 * ratio.len() / 4..];
        let sup = ratio.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let tail_max = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let tail_decreasing = tail.windows(2).all(|w| w[1] <= w[0] + 1e-15);
        let tail_trend_up = {
            let first = tail.first().copied().unwrap_or(0.0);
            let last = tail.last().copied().unwrap_or(0.0);
            last > first * 1.05 + 1e-12
        };
        let verdict = |relation| RelationVerdict {
            relation,
            c_upper: ExtReal::from_f64(sup),
            c_limsup: ExtReal::from_f64(tail_max),
            probe_depth: ts.len(),
            exact: false,
        };
        if tail_decreasing && tail.last().is_some_and(|&v| v < EPS_REL) {
            return Ok(verdict(Relation::Triangle));
        }
        if !tail_max.is_finite() || tail_trend_up {
            return Ok(verdict(Relation::NotComparable));
        }
        // Forward bounded; probe the reverse direction.
        let rev_tail: Vec<f64> = tail.iter().map(|&r| 1.0 / r).collect();
        let rev_max = rev_tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let rev_trend_up = {
            let first = rev_tail.first().copied().unwrap_or(0.0);
            let last = rev_tail.last().copied().unwrap_or(0.0);
            last > first * 1.05 + 1e-12
        };
        if rev_max.is_finite() && !rev_trend_up {
            Ok(verdict(Relation::Equivalent))
        } else {
            Ok(verdict(Relation::Preceq))
        }
    }

    /// Probes the doubling condition `ω(2t) ≤ L·ω(t) + L`, scanning
    /// `L ∈ {2^k}` for the minimal accepted constant.
    pub fn check_om1(&self, probe: &ProbeSpec) -> Result<PropertyCertificate> {
        let hi = probe.t_hi.min(self.probe_ceiling() / 2.0);
        let ts = geometric(probe.t_lo, hi, probe.points);
        let mut vals = Vec::with_capacity(ts.len());
        for &t in &ts {
            vals.push((self.eval(Finite(t))?, self.eval(Finite(2.0 * t))?));
        }
        for k in 0..=20u32 {
            let l = (2.0f64).powi(k as i32);
            let le = Finite(l);
            if vals.iter().all(|&(v, v2)| v2 <= le * v + le) {
                return Ok(PropertyCertificate {
                    property: WeightProperty::Om1,
                    constant: l,
                    probe_range: (probe.t_lo, hi),
                    holds: true,
                    exact: false,
                });
            }
        }
        Ok(PropertyCertificate {
            property: WeightProperty::Om1,
            constant: f64::INFINITY,
            probe_range: (probe.t_lo, hi),
            holds: false,
            exact: false,
        })
    }

    /// Probes the halving condition `2ω(t) ≤ ω(Ht) + H`, scanning
    /// `H ∈ {2^k, k ≤ 9}`. For each candidate the grid is extended far
    /// enough (`t` up to `≈ exp(2(H + log H))`, clipped to the evaluable
    /// range) that slowly varying weights — for which the inequality
    /// eventually fails for every `H` — are rejected rather than passed on
    /// a too-short horizon.
    pub fn check_om6(&self, probe: &ProbeSpec) -> Result<PropertyCertificate> {
        let ceiling = self.probe_ceiling();
        for k in 1..=9u32 {
            let h = (2.0f64).powi(k as i32);
            let needed = (2.0 * (h + h.ln() + 5.0)).exp();
            let hi = probe.t_hi.max(needed).min(ceiling / h).min(1e280);
            let ts = geometric(probe.t_lo, hi, probe.points);
            let he = Finite(h);
            let mut ok = true;
            for &t in &ts {
                let v = self.eval(Finite(t))?;
                let vh = self.eval(Finite(h * t))?;
                if !(Finite(2.0) * v <= vh + he) {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(PropertyCertificate {
                    property: WeightProperty::Om6,
                    constant: h,
                    probe_range: (probe.t_lo, hi),
                    holds: true,
                    exact: false,
                });
            }
        }
        Ok(PropertyCertificate {
            property: WeightProperty::Om6,
            constant: f64::INFINITY,
            probe_range: (probe.t_lo, probe.t_hi),
            holds: false,
            exact: false,
        })
    }
}

/// `points` geometric samples of `[lo, hi]`, endpoints included.
pub(crate) fn geometric(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let n = points.max(2);
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}
