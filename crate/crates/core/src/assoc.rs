//! The associated weight function `ω_M(t) = sup_p log(M_0 t^p / M_p)` and
//! its inverse (sequence reconstruction).
//!
//! For log-convex `M`, the supremum has a closed piecewise form with
//! breakpoints at the quotients: `ω_M(t) = 0` on `[0, μ_1]` and
//! `ω_M(t) = p log t − log(M_p/M_0)` on `[μ_p, μ_{p+1}]`, so evaluation is a
//! binary search over the quotient table. Evaluation only depends on the
//! log-convex minorant `M^lc` (`ω_M = ω_{M^lc}`), so construction
//! regularizes internally and keeps the original sequence for reconstruction
//! comparisons.
//!
//! Finiteness trichotomy: when `M_ι = liminf (M_p/M_0)^{1/p}` is finite,
//! `ω_M ≡ +∞` on `(M_ι, ∞)` and the value *at* `M_ι` is the limit from the
//! left — a closed form `log(M_0 μ_{p₀}^{p₀}/M_{p₀})` when the quotients
//! stabilize at index `p₀`, otherwise the supremum of representable
//! piecewise values, flagged as a lower bound. In the degenerate case
//! (`M_p = 0` for `p > 0`): `ω_M(0) = 0` and `ω_M(t) = +∞` for every
//! `t > 0`.

use crate::extreal::{ExtReal, Finite, PosInf};
use crate::sequences::{IotaValue, Tail, WeightSequence};
use crate::{Error, Result};

/// Exactness of an evaluated value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueKind {
    /// The value is exact (up to floating rounding).
    Exact,
    /// Only a lower bound: the argument lies beyond the representable
    /// quotient range of an `Explicit` tail.
    LowerBound,
}

/// An associated weight function, ready for O(log P) evaluation.
#[derive(Debug, Clone)]
pub struct AssociatedWeight {
    /// The original sequence (possibly not log-convex).
    original: WeightSequence,
    /// The log-convex minorant actually evaluated on.
    lc: WeightSequence,
    iota: IotaValue,
    /// `lim_{t→M_ι} ω_M(t)` when `M_ι < +∞`, together with its exactness.
    boundary_value: Option<(ExtReal, ValueKind)>,
}

impl AssociatedWeight {
    /// Builds the evaluator, regularizing to the log-convex minorant.
    pub fn new(seq: WeightSequence) -> Result<AssociatedWeight> {
        if seq.is_zero_degenerate() {
            let iota = seq.iota();
            return Ok(AssociatedWeight {
                original: seq.clone(),
                lc: seq,
                iota,
                boundary_value: Some((ExtReal::ZERO, ValueKind::Exact)),
            });
        }
        let lc = seq.log_convex_minorant()?;
        let iota = lc.iota();
        let boundary_value = match iota.iota {
            Finite(c) => Some(boundary_at_iota(&lc, c)),
            _ => None,
        };
        Ok(AssociatedWeight {
            original: seq,
            lc,
            iota,
            boundary_value,
        })
    }

    /// The sequence this weight was built from (before regularization).
    pub fn original(&self) -> &WeightSequence {
        &self.original
    }

    /// The log-convex minorant used for evaluation.
    pub fn sequence(&self) -> &WeightSequence {
        &self.lc
    }

    /// `M_ι` data of the regularized sequence.
    pub fn iota(&self) -> IotaValue {
        self.iota
    }

    /// `lim_{t→M_ι} ω_M(t)` for finite `M_ι` (closed form when the quotients
    /// stabilize, otherwise a representable-range lower bound).
    pub fn boundary_value(&self) -> Option<(ExtReal, ValueKind)> {
        self.boundary_value
    }

    /// Evaluates `ω_M(t)` for `t ≥ 0`. See [`AssociatedWeight::eval_detailed`]
    /// for the exactness flag.
    pub fn eval(&self, t: ExtReal) -> Result<ExtReal> {
        self.eval_detailed(t).map(|(v, _)| v)
    }

    /// Evaluates `ω_M(t)` and reports whether the value is exact or (past an
    /// explicit tail) only a lower bound.
    pub fn eval_detailed(&self, t: ExtReal) -> Result<(ExtReal, ValueKind)> {
        let t = match t {
            ExtReal::NegInf | Finite(_) if t < ExtReal::ZERO => {
                return Err(Error::NegativeArgument(t.to_f64()))
            }
            PosInf => {
                // ω_M is non-decreasing and unbounded on its domain.
                return Ok((PosInf, ValueKind::Exact));
            }
            _ => t.finite().unwrap(),
        };
        if t == 0.0 {
            return Ok((ExtReal::ZERO, ValueKind::Exact)); // 0^0 := 1.
        }
        if self.lc.is_zero_degenerate() {
            return Ok((PosInf, ValueKind::Exact));
        }
        // Finite-iota trichotomy.
        if let Finite(c) = self.iota.iota {
            if self.iota.exact {
                if t > c {
                    return Ok((PosInf, ValueKind::Exact));
                }
                if t == c {
                    return Ok(self
                        .boundary_value
                        .expect("finite iota has a boundary value"));
                }
            }
        }
        let log_t = t.ln();
        let qs = self.lc.log_quotients();
        let depth = qs.len() as u64;
        // Number of quotients ≤ t: the piece index p with μ_p ≤ t < μ_{p+1}.
        let mut p = qs.partition_point(|&q| q <= log_t) as u64;
        if p == 0 {
            return Ok((ExtReal::ZERO, ValueKind::Exact)); // t ≤ μ_1.
        }
        let mut kind = ValueKind::Exact;
        if p == depth {
            match self.lc.tail() {
                Tail::ClosedForm(_) => {
                    // Extend the bracket search into the closed-form tail by
                    // doubling then bisecting on log μ_p ≤ log t.
                    let mut hi = depth.max(2);
                    while self.lc.log_mu(hi).unwrap() <= log_t {
                        // Finite iota with t < M_ι always brackets at finite
                        // p; unbounded tails bracket once μ_p exceeds t.
                        hi = hi.saturating_mul(2);
                        if hi > (1 << 60) {
                            break;
                        }
                    }
                    let mut lo = depth;
                    while lo + 1 < hi {
                        let mid = lo + (hi - lo) / 2;
                        if self.lc.log_mu(mid).unwrap() <= log_t {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    p = lo;
                }
                Tail::Explicit => {
                    // No data past μ_P: report the p = P branch as a lower
                    // bound rather than extrapolating.
                    kind = ValueKind::LowerBound;
                }
                Tail::ZeroDegenerate => unreachable!(),
            }
        }
        let log_m_rel = self
            .lc
            .log_m_rel(p)
            .expect("bracket index is representable");
        Ok((Finite(p as f64 * log_t - log_m_rel), kind))
    }

    /// Reconstructs `log M_p` from the weight via
    /// `M_p = M_0 sup_{t∈(0,M_ι)} t^p / exp(ω_M(t))`.
    ///
    /// The supremum is evaluated at the known breakpoints `μ_k` (where it is
    /// attained exactly for log-convex `M`) plus a geometric safety grid.
    /// Returns `log M_p^lc` — equal to `log M_p` when `M` is log-convex.
    pub fn reconstruct_log_m(&self, p: u64, grid_points: usize) -> Result<f64> {
        if self.lc.is_zero_degenerate() {
            return Err(Error::DegenerateSequence(
                "cannot reconstruct the degenerate sequence".into(),
            ));
        }
        let pf = p as f64;
        let mut best = f64::NEG_INFINITY;
        let mut probe = |t: f64| -> Result<()> {
            if t <= 0.0 {
                return Ok(());
            }
            if let Finite(c) = self.iota.iota {
                if t >= c {
                    return Ok(());
                }
            }
            if let (Finite(w), ValueKind::Exact) = self.eval_detailed(Finite(t))? {
                best = best.max(pf * t.ln() - w);
            }
            Ok(())
        };
        // p = 0: the supremum of −ω_M(t) is 0, approached as t → 0.
        if p == 0 {
            return Ok(self.lc.log_m0());
        }
        for k in 1..=self.lc.depth() as u64 {
            let mu = self.lc.mu(k).expect("table index");
            probe(mu)?;
        }
        // Geometric grid between μ_1/2 and min(μ_P·2, M_ι) as a safety net
        // for sequences whose optimum sits inside a long flat bracket.
        let lo = (self.lc.mu(1).unwrap() * 0.5).max(1e-300);
        let hi = match self.iota.iota {
            Finite(c) => c,
            _ => self.lc.mu(self.lc.depth() as u64).unwrap() * 2.0,
        };
        if hi > lo {
            let ratio = (hi / lo).ln() / grid_points.max(2) as f64;
            for i in 0..grid_points {
                probe(lo * (ratio * i as f64).exp())?;
            }
        }
        Ok(self.lc.log_m0() + best)
    }
}

/// Brute-force oracle for [`AssociatedWeight::eval`]: the direct supremum
/// `max_{0 ≤ p ≤ p_max} (p log t − log(M_p/M_0))`, with no binary search and
/// no regularization — so for non-log-convex `M` it matches the piecewise
/// evaluator only because `ω_M = ω_{M^lc}`.
pub fn omega_sup_oracle(m: &WeightSequence, t: f64, p_max: u64) -> ExtReal {
    if t == 0.0 {
        return ExtReal::ZERO; // 0^0 := 1 and the p = 0 term is log 1 = 0.
    }
    if m.is_zero_degenerate() && t > 0.0 {
        return PosInf; // log(t^p / 0) = +∞ for every p ≥ 1.
    }
    let mut best = 0.0f64; // p = 0 contributes 0.
    for p in 1..=p_max {
        if let Some(lm) = m.log_m_rel(p) {
            best = best.max(p as f64 * t.ln() - lm);
        }
    }
    Finite(best)
}

/// `lim_{t→C} ω_M(t)` from the left for finite `C = M_ι`.
fn boundary_at_iota(lc: &WeightSequence, c: f64) -> (ExtReal, ValueKind) {
    if let Some(p0) = lc.stabilization_index() {
        // Stabilized tail μ_p = C for p ≥ p₀: closed form
        // ω_M(M_ι) = log(M_0 C^{p₀} / M_{p₀}) relative to M_0.
        let v = p0 as f64 * c.ln() - lc.log_m_rel(p0).expect("stabilization index in range");
        (Finite(v), ValueKind::Exact)
    } else {
        // Non-stabilizing tail: supremum of the representable piecewise
        // values, flagged as a lower bound (no closed form available).
        let mut best = f64::NEG_INFINITY;
        let log_c = c.ln();
        for p in 1..=lc.depth() as u64 {
            if let Some(lm) = lc.log_m_rel(p) {
                best = best.max(p as f64 * log_c - lm);
            }
        }
        (Finite(best), ValueKind::LowerBound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{ClosedFormTail, DEFAULT_DEPTH};

    fn gevrey_weight(s: f64) -> AssociatedWeight {
        AssociatedWeight::new(WeightSequence::gevrey(s, DEFAULT_DEPTH).unwrap()).unwrap()
    }

    #[test]
    fn flat_below_first_quotient() {
        let w = gevrey_weight(1.0);
        assert_eq!(w.eval(Finite(0.5)).unwrap(), ExtReal::ZERO);
        assert_eq!(w.eval(ExtReal::ZERO).unwrap(), ExtReal::ZERO);
        assert_eq!(w.eval(Finite(1.0)).unwrap(), ExtReal::ZERO);
    }

    #[test]
    fn gevrey_values_match_brute_force() {
        let w = gevrey_weight(1.0);
        // ω_{G^1}(2) = log 2 (breakpoint tie at μ_2 = 2).
        let v = w.eval(Finite(2.0)).unwrap().finite().unwrap();
        assert!((v - 2.0f64.ln()).abs() < 1e-12);
        // ω_{G^1}(3) = log(27/6) = log 4.5, attained at p = 2 and p = 3.
        let v3 = w.eval(Finite(3.0)).unwrap().finite().unwrap();
        assert!((v3 - 4.5f64.ln()).abs() < 1e-12);
        let oracle = omega_sup_oracle(w.sequence(), 3.0, 200).finite().unwrap();
        assert!((v3 - oracle).abs() < 1e-12);
    }

    #[test]
    fn oracle_sweep_multiple_gevrey_indices() {
        for s in [0.7, 1.0, 2.0] {
            let w = gevrey_weight(s);
            let t_hi = w.sequence().mu(200).unwrap();
            for i in 0..1000 {
                let t = t_hi * (i as f64 + 0.5) / 1000.0;
                let v = w.eval(Finite(t)).unwrap().to_f64();
                let o = omega_sup_oracle(w.sequence(), t, 256).to_f64();
                assert!(
                    (v - o).abs() <= 1e-10 * (1.0 + o.abs()),
                    "s={s} t={t}: piecewise {v} vs oracle {o}"
                );
            }
        }
    }

    #[test]
    fn finite_iota_trichotomy() {
        // Stabilized μ_p = 2 − 1/p, then constant 2: M_ι = 2 exactly.
        let log_mu: Vec<f64> = (1..=DEFAULT_DEPTH)
            .map(|p| {
                if p < 32 {
                    (2.0 - 1.0 / p as f64).ln()
                } else {
                    2.0f64.ln()
                }
            })
            .collect();
        let seq = WeightSequence::from_quotients(
            0.0,
            log_mu,
            Tail::ClosedForm(ClosedFormTail::constant(2.0f64.ln())),
        )
        .unwrap();
        let w = AssociatedWeight::new(seq).unwrap();
        assert_eq!(w.eval(Finite(3.0)).unwrap(), PosInf);
        assert!(w.eval(Finite(1.9)).unwrap().is_finite());
        // Boundary: closed form log(μ_{p₀}^{p₀}/M_{p₀}) at p₀ = 32.
        let (b, kind) = w.boundary_value().unwrap();
        assert_eq!(kind, ValueKind::Exact);
        let p0 = 32f64;
        let expect = p0 * 2.0f64.ln() - w.sequence().log_m_rel(32).unwrap();
        assert!((b.finite().unwrap() - expect).abs() < 1e-12);
        assert_eq!(w.eval(Finite(2.0)).unwrap(), b);
    }

    #[test]
    fn zero_degenerate_jumps_to_infinity() {
        let w = AssociatedWeight::new(WeightSequence::zero_degenerate(0.0)).unwrap();
        assert_eq!(w.eval(ExtReal::ZERO).unwrap(), ExtReal::ZERO);
        assert_eq!(w.eval(Finite(1e-9)).unwrap(), PosInf);
        assert_eq!(w.eval(Finite(7.0)).unwrap(), PosInf);
    }

    #[test]
    fn explicit_tail_is_lower_bound_past_range() {
        let log_mu: Vec<f64> = (1..=64).map(|p| (p as f64).ln()).collect();
        let seq = WeightSequence::from_quotients(0.0, log_mu, Tail::Explicit).unwrap();
        let w = AssociatedWeight::new(seq).unwrap();
        let (_, kind) = w.eval_detailed(Finite(1000.0)).unwrap();
        assert_eq!(kind, ValueKind::LowerBound);
        let (_, kind_in) = w.eval_detailed(Finite(10.0)).unwrap();
        assert_eq!(kind_in, ValueKind::Exact);
    }

    #[test]
    fn monotone_in_t() {
        let w = gevrey_weight(0.7);
        let mut prev = ExtReal::ZERO;
        for i in 0..500 {
            let t = i as f64 * 0.1;
            let v = w.eval(Finite(t)).unwrap();
            assert!(v >= prev, "not monotone at t={t}");
            prev = v;
        }
    }

    #[test]
    fn breakpoint_continuity() {
        let w = gevrey_weight(1.3);
        for p in 1..100u64 {
            let mu = w.sequence().mu(p).unwrap();
            let left = w.eval(Finite(mu * (1.0 - 1e-12))).unwrap().to_f64();
            let right = w.eval(Finite(mu * (1.0 + 1e-12))).unwrap().to_f64();
            assert!(
                (left - right).abs() < 1e-8 * (1.0 + left.abs()),
                "jump at μ_{p}"
            );
        }
    }

    #[test]
    fn reconstruction_round_trip() {
        let w = gevrey_weight(1.0);
        // log M_3 = log 6, attained at the breakpoint t = μ_3 = 3.
        let r3 = w.reconstruct_log_m(3, 200).unwrap();
        assert!((r3 - 6.0f64.ln()).abs() < 1e-9, "got {r3}");
        assert_eq!(w.reconstruct_log_m(0, 200).unwrap(), 0.0);
        for p in [1u64, 5, 32, 128, 256] {
            let r = w.reconstruct_log_m(p, 200).unwrap();
            let expect = w.sequence().log_m_rel(p).unwrap();
            assert!(
                (r - expect).abs() < 1e-8 * (1.0 + expect.abs()),
                "p={p}: {r} vs {expect}"
            );
        }
    }

    #[test]
    fn reconstruction_yields_minorant_for_spiky_input() {
        // A spike above the hull reconstructs to the hull value, not the spike.
        let mut log_mu: Vec<f64> = (1..=64).map(|p| (p as f64).ln()).collect();
        log_mu[9] += 3.0; // M_10 spikes by e³…
        log_mu[10] -= 3.0; // …and returns.
        let seq = WeightSequence::from_quotients(0.0, log_mu.clone(), Tail::Explicit).unwrap();
        assert!(!seq.is_log_convex());
        let w = AssociatedWeight::new(seq.clone()).unwrap();
        let rec = w.reconstruct_log_m(10, 400).unwrap();
        let lc = seq.log_convex_minorant().unwrap();
        let hull_val = lc.log_m_rel(10).unwrap();
        let spike_val = seq.log_m_rel(10).unwrap();
        assert!(
            rec < spike_val - 1.0,
            "reconstruction must fall below the spike"
        );
        assert!(
            (rec - hull_val).abs() < 1e-6,
            "reconstruction {rec} vs hull {hull_val}"
        );
        // And ω_M = ω_{M^lc} pointwise.
        let w_lc = AssociatedWeight::new(lc).unwrap();
        for i in 1..200 {
            let t = i as f64 * 0.37;
            let a = w.eval(Finite(t)).unwrap().to_f64();
            let b = w_lc.eval(Finite(t)).unwrap().to_f64();
            assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn negative_argument_rejected() {
        let w = gevrey_weight(1.0);
        assert!(w.eval(Finite(-1.0)).is_err());
    }
}
