//! Generalized two-function Legendre conjugates.
//!
//! The lower conjugate `σ⋆̌τ(t) = inf_{s>0} {σ(s) + τ(t/s)}` and the upper
//! conjugate `σ⋆̂τ(t) = sup_{s≥0} {σ(s) − τ(s/t)}`, with `t = 0` always the
//! special case `σ(0) ± τ(0)` rather than a grid limit.
//!
//! Two evaluation routes are provided. For associated weights the conjugates
//! have exact sequence formulas: `ω_M ⋆̌ ω_N = ω_{M·N}` (taking log-convex
//! minorants), and — when the divisor is subordinate (`N ⪯ M`) —
//! `ω_M ⋆̂ ω_N = ω_{M/N}` whenever `M/N` is log-convex, extended by explicit
//! degenerate and finite-`ι` tables. For everything else a geometric grid
//! with golden-section refinement approximates the extremum; the grid
//! infimum is always an upper bound on the true infimum and the grid
//! supremum a lower bound on the true supremum, so errors are one-sided.
//!
//! The upper conjugate need not be finite: a divisor that does not
//! eventually dominate makes the supremum `+∞`. The grid route reports this
//! as [`ConjValue::Divergent`] when the tail of the sample trend still grows
//! at the edge of the search range; [`upper_welldef_check`] classifies
//! well-definedness up front, exactly for associated operands and by a
//! two-variable ratio probe otherwise.

use crate::assoc::AssociatedWeight;
use crate::extreal::{ExtReal, Finite, PosInf};
use crate::sequences::{Relation, WeightSequence, EPS_MARGIN};
use crate::weightfn::{geometric, WeightFunction};
use crate::{Error, Result};

/// Grid-search configuration for the fallback conjugate evaluators.
#[derive(Debug, Clone, Copy)]
pub struct ConjOptions {
    /// Geometric grid density over the search interval in `s`.
    pub points_per_decade: usize,
    /// Golden-section refinement budget around the incumbent (≈25
    /// function evaluations per round).
    pub refine_rounds: usize,
    /// Number of trailing samples inspected by the divergence detector.
    pub divergence_window: usize,
    /// Skip the exact sequence route even when it applies (for
    /// grid-vs-exact cross-checks).
    pub force_grid: bool,
    /// Permit an upper-conjugate divisor with `τ(0) ≠ 0` instead of
    /// returning [`Error::NonNormalizedDivisor`].
    pub allow_unnormalized_divisor: bool,
}

impl Default for ConjOptions {
    fn default() -> ConjOptions {
        ConjOptions {
            points_per_decade: 400,
            refine_rounds: 3,
            divergence_window: 32,
            force_grid: false,
            allow_unnormalized_divisor: false,
        }
    }
}

impl ConjOptions {
    /// A cheaper profile for nested grid evaluation (a conjugate of a
    /// conjugate multiplies evaluation counts).
    pub fn nested() -> ConjOptions {
        ConjOptions {
            points_per_decade: 100,
            refine_rounds: 2,
            ..ConjOptions::default()
        }
    }
}

/// Result of an upper-conjugate evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConjValue {
    /// The extremum (which may legitimately be `+∞`, e.g. beyond a finite
    /// domain endpoint).
    Value(ExtReal),
    /// The grid supremum was still growing at the edge of the search range:
    /// the supremum is `+∞` by divergence, not by a domain jump.
    Divergent,
}

impl ConjValue {
    /// The value, with `Divergent` collapsed to `+∞`.
    pub fn collapse(self) -> ExtReal {
        match self {
            ConjValue::Value(v) => v,
            ConjValue::Divergent => PosInf,
        }
    }
}

/// Exact lower-conjugate route for associated weights.
#[derive(Debug, Clone)]
pub struct LowerConjExact {
    /// `ω_{M^lc · N^lc}`, equal to `ω_M ⋆̌ ω_N` everywhere (including the
    /// degenerate and finite-`ι` extensions).
    pub weight: AssociatedWeight,
}

/// `ω_M ⋆̌ ω_N` as an associated weight: the product of the log-convex
/// minorants. Exact for all positive and degenerate inputs.
pub fn lower_conj_assoc(m: &WeightSequence, n: &WeightSequence) -> Result<LowerConjExact> {
    let product = if m.is_zero_degenerate() || n.is_zero_degenerate() {
        WeightSequence::zero_degenerate(m.log_m0() + n.log_m0())
    } else {
        m.log_convex_minorant()?
            .pointwise_product(&n.log_convex_minorant()?)
    };
    Ok(LowerConjExact {
        weight: AssociatedWeight::new(product)?,
    })
}

/// Exact upper-conjugate route for associated weights.
#[derive(Debug, Clone)]
pub enum SeqUpperConj {
    /// `ω_M ⋆̂ ω_N` is the associated weight of the quotient sequence (or a
    /// degenerate-table value expressed as an associated weight).
    Assoc {
        /// The evaluator.
        weight: AssociatedWeight,
        /// `true` when the quotient of minorants is itself log-convex, so
        /// the identity `ω_M ⋆̂ ω_N = ω_{M/N}` is exact; otherwise the
        /// regularized quotient is only the candidate value.
        exact: bool,
        /// Supremum of the finite domain: `(M/N)_ι = M_ι / N_ι`.
        domain_hi: ExtReal,
    },
    /// `ω_M ⋆̂ ω_N ≡ 0` (degenerate divisor `N_ι = 0`).
    Zero,
    /// No forward relation `N ⪯ M` could be certified from finite evidence;
    /// the exact route declines and the caller should fall back to the grid.
    NoForwardRelation,
}

impl SeqUpperConj {
    /// Evaluates the exact route at `t ≥ 0`.
    pub fn eval(&self, t: ExtReal) -> Result<ExtReal> {
        match self {
            SeqUpperConj::Assoc { weight, .. } => weight.eval(t),
            SeqUpperConj::Zero => {
                if t < ExtReal::ZERO {
                    Err(Error::NegativeArgument(t.to_f64()))
                } else {
                    Ok(ExtReal::ZERO)
                }
            }
            SeqUpperConj::NoForwardRelation => Err(Error::NotSubordinate(
                "no forward relation certified; use the grid evaluator".into(),
            )),
        }
    }
}

/// `ω_M ⋆̂ ω_N` as a sequence formula, requiring the divisor to be
/// subordinate. Degenerate divisors and numerators use the explicit tables
/// (`N_ι = 0 ⟹ ≡ 0`; `M_ι = 0 < N_ι ⟹ = ω_M`). A positive pair with no
/// relation `N ⪯ M` is an error: the conjugate is `+∞` on `(0, ∞)` and is
/// not produced by this exact route.
pub fn upper_conj_assoc(m: &WeightSequence, n: &WeightSequence) -> Result<SeqUpperConj> {
    match upper_conj_assoc_full(m, n)? {
        SeqUpperConj::NoForwardRelation => Err(Error::NotSubordinate(
            "divisor is not subordinate to the numerator (N ⪯ M fails)".into(),
        )),
        jump @ SeqUpperConj::Assoc {
            domain_hi: ExtReal::Finite(d),
            ..
        } if d == 0.0 && !m.is_zero_degenerate() => {
            // Certified non-subordinate positive pair: the value exists
            // (+∞ on (0,∞)) but the subordination precondition fails.
            let _ = jump;
            Err(Error::NotSubordinate(
                "divisor grows strictly faster than the numerator; the conjugate jumps to +∞"
                    .into(),
            ))
        }
        other => Ok(other),
    }
}

/// Like [`upper_conj_assoc`], but instead of erroring on a certified
/// non-subordinate positive pair it returns the jump value
/// `0 at t = 0, +∞ for t > 0` (which is what the supremum equals there),
/// and [`SeqUpperConj::NoForwardRelation`] when finite evidence cannot
/// classify the pair.
pub fn upper_conj_assoc_full(m: &WeightSequence, n: &WeightSequence) -> Result<SeqUpperConj> {
    if n.is_zero_degenerate() {
        // The divisor ω_N jumps to +∞ immediately: only the s = 0 term
        // survives in the supremum, giving ω_M(0) − ω_N(0) = 0.
        return Ok(SeqUpperConj::Zero);
    }
    if m.is_zero_degenerate() {
        // ω_M ≡ +∞ on (0,∞) dominates any finite divisor: ⋆̂ = ω_M.
        let weight = AssociatedWeight::new(m.clone())?;
        return Ok(SeqUpperConj::Assoc {
            weight,
            exact: true,
            domain_hi: ExtReal::ZERO,
        });
    }
    let mlc = m.log_convex_minorant()?;
    let nlc = n.log_convex_minorant()?;
    // Forward relation of the divisor to the numerator: N ⪯ M.
    let verdict = nlc.compare(&mlc)?;
    match verdict.relation {
        Relation::Triangle | Relation::Preceq | Relation::Equivalent => {
            let q = mlc.pointwise_quotient(&nlc)?;
            let exact = q.is_log_convex();
            let weight = AssociatedWeight::new(q)?;
            let domain_hi = weight.iota().iota;
            Ok(SeqUpperConj::Assoc {
                weight,
                exact,
                domain_hi,
            })
        }
        Relation::NotComparable if verdict.exact => {
            // Certified (N_p/M_p)^{1/p} → +∞: for every t > 0 the terms
            // p log t − log(N_p/M_p)⁻¹… grow without bound, so the
            // supremum is the jump 0 ↦ 0, t > 0 ↦ +∞.
            let weight = AssociatedWeight::new(WeightSequence::zero_degenerate(0.0))?;
            Ok(SeqUpperConj::Assoc {
                weight,
                exact: true,
                domain_hi: ExtReal::ZERO,
            })
        }
        Relation::NotComparable => Ok(SeqUpperConj::NoForwardRelation),
    }
}

/// Search-interval decades on each side of the natural center.
const SPAN_DECADES: f64 = 6.0;

fn search_bounds(t: f64) -> (f64, f64) {
    let span = 10f64.powf(SPAN_DECADES);
    (t.min(1.0) / span, t.max(1.0) * span)
}

/// Golden-section minimization of `f` on `[a, b]`, returning the best
/// abscissa and value seen (including the endpoints).
fn golden_min<F>(mut f: F, a: f64, b: f64, iters: usize) -> Result<(f64, ExtReal)>
where
    F: FnMut(f64) -> Result<ExtReal>,
{
    const INVPHI: f64 = 0.618_033_988_749_894_8;
    let (mut lo, mut hi) = (a, b);
    let mut best = (lo, f(lo)?);
    let consider = |x: f64, v: ExtReal, best: &mut (f64, ExtReal)| {
        if v < best.1 {
            *best = (x, v);
        }
    };
    let vb = f(hi)?;
    consider(hi, vb, &mut best);
    let mut c = hi - INVPHI * (hi - lo);
    let mut d = lo + INVPHI * (hi - lo);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    consider(c, fc, &mut best);
    consider(d, fd, &mut best);
    for _ in 0..iters {
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INVPHI * (hi - lo);
            fc = f(c)?;
            consider(c, fc, &mut best);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INVPHI * (hi - lo);
            fd = f(d)?;
            consider(d, fd, &mut best);
        }
    }
    Ok(best)
}

/// `σ⋆̌τ(t)` by grid search with golden-section refinement.
pub fn lower_conj_eval(
    sigma: &WeightFunction,
    tau: &WeightFunction,
    t: ExtReal,
    opts: &ConjOptions,
) -> Result<ExtReal> {
    minimizer_witness(sigma, tau, t, opts).map(|(_, v)| v)
}

/// `σ⋆̌τ(t)` together with the (approximate) minimizing `s`.
pub fn minimizer_witness(
    sigma: &WeightFunction,
    tau: &WeightFunction,
    t: ExtReal,
    opts: &ConjOptions,
) -> Result<(f64, ExtReal)> {
    let t = match t {
        PosInf => return Ok((f64::INFINITY, PosInf)),
        Finite(x) if x > 0.0 => x,
        Finite(x) if x == 0.0 => {
            let v = sigma.eval(ExtReal::ZERO)? + tau.eval(ExtReal::ZERO)?;
            return Ok((0.0, v));
        }
        _ => return Err(Error::NegativeArgument(t.to_f64())),
    };
    let value =
        |s: f64| -> Result<ExtReal> { Ok(sigma.eval(Finite(s))? + tau.eval(Finite(t / s))?) };
    let (lo, hi) = search_bounds(t);
    let points = (((hi / lo).log10() * opts.points_per_decade as f64) as usize).max(16);
    let grid = geometric(lo, hi, points);
    let mut best_i = 0usize;
    let mut best = (grid[0], value(grid[0])?);
    for (i, &s) in grid.iter().enumerate().skip(1) {
        let v = value(s)?;
        if v < best.1 {
            best = (s, v);
            best_i = i;
        }
    }
    if opts.refine_rounds > 0 {
        let a = grid[best_i.saturating_sub(1)];
        let b = grid[(best_i + 1).min(grid.len() - 1)];
        let (x, v) = golden_min(
            |x: f64| value(x.exp()),
            a.ln(),
            b.ln(),
            25 * opts.refine_rounds,
        )?;
        if v < best.1 {
            best = (x.exp(), v);
        }
    }
    Ok(best)
}

/// `σ⋆̂τ(t)` by grid search with golden-section refinement and trailing
/// divergence detection. Requires `τ(0) = 0` unless
/// `opts.allow_unnormalized_divisor`.
pub fn upper_conj_eval(
    sigma: &WeightFunction,
    tau: &WeightFunction,
    t: ExtReal,
    opts: &ConjOptions,
) -> Result<ConjValue> {
    let tau0 = tau.eval(ExtReal::ZERO)?;
    if tau0 != ExtReal::ZERO && !opts.allow_unnormalized_divisor {
        return Err(Error::NonNormalizedDivisor(format!(
            "divisor has τ(0) = {tau0}, expected 0"
        )));
    }
    let t = match t {
        PosInf => return Ok(ConjValue::Value(PosInf)),
        Finite(x) if x > 0.0 => x,
        Finite(x) if x == 0.0 => {
            return Ok(ConjValue::Value(sigma.eval(ExtReal::ZERO)? - tau0));
        }
        _ => return Err(Error::NegativeArgument(t.to_f64())),
    };
    // s = 0 term: σ(0) − τ(0).
    let mut best = (0.0f64, sigma.eval(ExtReal::ZERO)? - tau0);
    let mut best_i: Option<usize> = None;
    // Difference with a +∞/+∞ collision skipped: beyond both finite
    // domains the expression carries no information about the supremum.
    let value = |s: f64| -> Result<Option<ExtReal>> {
        let sv = sigma.eval(Finite(s))?;
        let tv = tau.eval(Finite(s / t))?;
        Ok(match (sv, tv) {
            (PosInf, PosInf) => None,
            (PosInf, _) => Some(PosInf),
            (_, PosInf) => None, // −∞ contribution: never the supremum.
            (a, b) => Some(a - b),
        })
    };
    let (lo, mut hi) = search_bounds(t);
    // Cap the search below the divisor's blow-up ray s = N_ι·t: beyond it
    // τ(s/t) = +∞ and the term is −∞.
    if let Finite(d) = tau.finite_domain_sup() {
        hi = hi.min(d * t * (1.0 - 1e-12));
    }
    if !(hi > lo) {
        return Ok(ConjValue::Value(best.1));
    }
    let points = (((hi / lo).log10() * opts.points_per_decade as f64) as usize).max(16);
    let grid = geometric(lo, hi, points);
    let mut finite_tail: Vec<(f64, f64)> = Vec::new();
    for (i, &s) in grid.iter().enumerate() {
        match value(s)? {
            Some(PosInf) => {
                // σ blows up strictly inside the divisor's domain: the
                // supremum is +∞ by a domain jump, exactly.
                return Ok(ConjValue::Value(PosInf));
            }
            Some(v) => {
                if v > best.1 {
                    best = (s, v);
                    best_i = Some(i);
                }
                if let Finite(x) = v {
                    finite_tail.push((s, x));
                    if finite_tail.len() > opts.divergence_window {
                        finite_tail.remove(0);
                    }
                }
            }
            None => {}
        }
    }
    // Divergence: the supremum sits at the very edge of the range and the
    // trailing window still climbs with positive log-slope.
    if finite_tail.len() == opts.divergence_window && opts.divergence_window >= 2 {
        let increasing = finite_tail.windows(2).all(|w| w[1].1 > w[0].1);
        let (s0, v0) = finite_tail[0];
        let (s1, v1) = finite_tail[finite_tail.len() - 1];
        let slope = (v1 - v0) / (s1.ln() - s0.ln());
        let at_edge = best_i.is_some_and(|i| i + 1 == grid.len());
        if increasing && slope > 1e-3 && at_edge {
            return Ok(ConjValue::Divergent);
        }
    }
    if opts.refine_rounds > 0 {
        if let Some(i) = best_i {
            let a = grid[i.saturating_sub(1)];
            let b = grid[(i + 1).min(grid.len() - 1)];
            let neg = |x: f64| -> Result<ExtReal> {
                Ok(match value(x.exp())? {
                    Some(v) => -v,
                    None => PosInf,
                })
            };
            let (x, v) = golden_min(neg, a.ln(), b.ln(), 25 * opts.refine_rounds)?;
            if -v > best.1 {
                best = (x.exp(), -v);
            }
        }
    }
    Ok(ConjValue::Value(best.1))
}

/// Well-definedness classification of `σ⋆̂τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WellDefStatus {
    /// Finite for every `t > 0`.
    WellDefined,
    /// Finite on `(0, t₀)`, `+∞` beyond.
    WellDefinedUpTo(ExtReal),
    /// `+∞` for every probed `t > 0`.
    IllDefined,
    /// The probe evidence is inconclusive.
    Unknown,
}

/// What kind of evidence backs a [`WellDefCert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WellDefEvidence {
    /// Exact or sampled sequence comparison `N ⪯ M` of associated operands.
    SequenceCriterion,
    /// Two-variable ratio probe `σ(tu)/τ(u)` on a log-grid.
    LimsupProbe,
}

/// Certificate produced by [`upper_welldef_check`].
#[derive(Debug, Clone)]
pub struct WellDefCert {
    /// The classification.
    pub status: WellDefStatus,
    /// How it was obtained.
    pub evidence: WellDefEvidence,
    /// Whether the verdict is analytic rather than finite-probe evidence.
    pub exact: bool,
    /// `(t, limsup-estimate of σ(tu)/τ(u))` probe samples (empty for the
    /// sequence route).
    pub samples: Vec<(f64, f64)>,
}

/// Classifies whether `σ⋆̂τ` is finite, and up to which `t`.
///
/// For associated operands the sequence criterion is used: `N ◁ M` gives
/// `WellDefined`, `N ⪯ M` gives finiteness for
/// `t < t₀ = 1 / limsup (N_p/M_p)^{1/p}`, and a certified failure of
/// `N ⪯ M` gives `IllDefined`. Otherwise the ratio `σ(tu)/τ(u)` is probed
/// on a two-variable log-grid: a tail uniformly below `1 − ε` certifies
/// finiteness at that `t`, a tail above `1 + ε` certifies divergence, and
/// mixed evidence yields `Unknown`.
pub fn upper_welldef_check(
    sigma: &WeightFunction,
    tau: &WeightFunction,
    _opts: &ConjOptions,
) -> Result<WellDefCert> {
    if let (Some(a), Some(b)) = (sigma.as_associated(), tau.as_associated()) {
        let verdict = b.sequence().compare(a.sequence())?;
        let status = match verdict.relation {
            Relation::Triangle => WellDefStatus::WellDefined,
            Relation::Preceq | Relation::Equivalent => {
                WellDefStatus::WellDefinedUpTo(Finite(1.0) / verdict.c_limsup)
            }
            Relation::NotComparable if verdict.exact => WellDefStatus::IllDefined,
            Relation::NotComparable => WellDefStatus::Unknown,
        };
        return Ok(WellDefCert {
            status,
            evidence: WellDefEvidence::SequenceCriterion,
            exact: verdict.exact,
            samples: Vec::new(),
        });
    }
    let u_hi = 1e10f64
        .min(tau.probe_ceiling())
        .min(sigma.probe_ceiling() / 1e3);
    let u_lo = 1e4f64.min(u_hi / 1e2);
    let us = geometric(u_lo, u_hi, 60);
    let ts = geometric(1e-3, 1e3, 20);
    let mut samples = Vec::with_capacity(ts.len());
    // Per-t verdict: +1 certified divergent, −1 certified finite, 0 unclear.
    let mut marks = Vec::with_capacity(ts.len());
    for &t in &ts {
        let mut tail: Vec<f64> = Vec::new();
        for &u in &us[us.len() - 16..] {
            let num = sigma.eval(Finite(t * u))?;
            let den = tau.eval(Finite(u))?;
            tail.push((num / den).to_f64());
        }
        let limsup = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let liminf = tail.iter().cloned().fold(f64::INFINITY, f64::min);
        samples.push((t, limsup));
        marks.push(if liminf > 1.0 + EPS_MARGIN {
            1i8
        } else if limsup < 1.0 - EPS_MARGIN {
            -1i8
        } else {
            0i8
        });
    }
    let status = if marks.iter().all(|&m| m == -1) {
        WellDefStatus::WellDefined
    } else if marks.iter().all(|&m| m == 1) {
        WellDefStatus::IllDefined
    } else {
        // Accept a clean split: finite prefix, divergent suffix.
        let first_bad = marks.iter().position(|&m| m == 1);
        match first_bad {
            Some(i)
                if marks[..i].iter().all(|&m| m == -1) && marks[i..].iter().all(|&m| m == 1) =>
            {
                WellDefStatus::WellDefinedUpTo(Finite(ts[i]))
            }
            _ => WellDefStatus::Unknown,
        }
    };
    Ok(WellDefCert {
        status,
        evidence: WellDefEvidence::LimsupProbe,
        exact: false,
        samples,
    })
}

/// Classical lower Legendre envelope `inf_s {σ(s) + (t/s)^{1/α}}` as the
/// lower conjugate against the monomial `id^{1/α}`.
pub fn lower_legendre_envelope(
    sigma: &WeightFunction,
    alpha: f64,
    t: ExtReal,
    opts: &ConjOptions,
) -> Result<ExtReal> {
    let mono = WeightFunction::monomial(alpha)?;
    lower_conj_eval(sigma, &mono, t, opts)
}

/// Classical upper Legendre envelope `sup_s {σ(s) − (s/t)^{1/α}}` as the
/// upper conjugate against the monomial `id^{1/α}`.
pub fn upper_legendre_envelope(
    sigma: &WeightFunction,
    alpha: f64,
    t: ExtReal,
    opts: &ConjOptions,
) -> Result<ConjValue> {
    let mono = WeightFunction::monomial(alpha)?;
    upper_conj_eval(sigma, &mono, t, opts)
}
