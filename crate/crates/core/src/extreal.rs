//! Extended real numbers `[−∞, +∞]` with total arithmetic.
//!
//! Every indeterminate form that occurs in the weight-function calculus is
//! given a fixed value, so downstream code never branches on special cases:
//!
//! * `(+∞) − (+∞) = 0` (and additively, `(+∞) + (−∞) = 0`),
//! * `0 · (±∞) = 0`,
//! * `0 / 0 = 0` and `c / 0 = +∞` for `c > 0`,
//! * `c / (±∞) = 0` for finite `c`.
//!
//! NaN is rejected at construction: the conventions above cover every
//! indeterminate form the calculus needs, so a NaN anywhere indicates an
//! implementation bug rather than a value to propagate.
//!
//! The order is total (`−∞ < finite < +∞`), so `ExtReal` implements [`Ord`]
//! and can be used directly in `max`/`min` folds over evaluation grids.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use crate::{Error, Result};

/// An extended real number: `−∞`, a finite (never-NaN) `f64`, or `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    /// Negative infinity.
    NegInf,
    /// A finite value; guaranteed non-NaN by construction.
    Finite(f64),
    /// Positive infinity.
    PosInf,
}

pub use ExtReal::{Finite, NegInf, PosInf};

impl ExtReal {
    /// Zero.
    pub const ZERO: ExtReal = Finite(0.0);

    /// Builds an extended real from an `f64`, mapping IEEE infinities to the
    /// infinite variants and rejecting NaN.
    pub fn new(x: f64) -> Result<ExtReal> {
        if x.is_nan() {
            Err(Error::NanRejected)
        } else if x == f64::INFINITY {
            Ok(PosInf)
        } else if x == f64::NEG_INFINITY {
            Ok(NegInf)
        } else {
            Ok(Finite(x))
        }
    }

    /// Like [`ExtReal::new`] but panics on NaN. Intended for internal
    /// arithmetic whose inputs are already validated.
    pub fn from_f64(x: f64) -> ExtReal {
        ExtReal::new(x).expect("NaN produced by internal arithmetic")
    }

    /// The finite payload, if any.
    pub fn finite(self) -> Option<f64> {
        match self {
            Finite(x) => Some(x),
            _ => None,
        }
    }

    /// `true` for `+∞`.
    pub fn is_pos_inf(self) -> bool {
        self == PosInf
    }

    /// `true` for a finite value.
    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    /// Collapses to `f64`, sending the infinite variants to IEEE infinities.
    pub fn to_f64(self) -> f64 {
        match self {
            NegInf => f64::NEG_INFINITY,
            Finite(x) => x,
            PosInf => f64::INFINITY,
        }
    }

    /// Sign classification: `-1`, `0`, or `1` (finite zero counts as `0`).
    fn signum(self) -> i8 {
        match self {
            NegInf => -1,
            PosInf => 1,
            Finite(x) => {
                if x > 0.0 {
                    1
                } else if x < 0.0 {
                    -1
                } else {
                    0
                }
            }
        }
    }

    /// Natural logarithm with `log 0 = −∞`; negative arguments are a bug.
    pub fn ln(self) -> ExtReal {
        match self {
            NegInf => panic!("ln of negative extended real"),
            PosInf => PosInf,
            Finite(x) => {
                if x < 0.0 {
                    panic!("ln of negative extended real");
                } else if x == 0.0 {
                    NegInf
                } else {
                    Finite(x.ln())
                }
            }
        }
    }

    /// Exponential with `exp(−∞) = 0`, `exp(+∞) = +∞`.
    pub fn exp(self) -> ExtReal {
        match self {
            NegInf => Finite(0.0),
            PosInf => PosInf,
            Finite(x) => ExtReal::from_f64(x.exp()),
        }
    }

    /// Minimum under the total order.
    pub fn min(self, other: ExtReal) -> ExtReal {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Maximum under the total order.
    pub fn max(self, other: ExtReal) -> ExtReal {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            // Finite payloads are never NaN, so total_cmp agrees with the
            // real order (modulo -0.0/+0.0, which compare equal via ==).
            (Finite(a), Finite(b)) => {
                if a == b {
                    Ordering::Equal
                } else {
                    a.total_cmp(b)
                }
            }
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;

    /// Addition with `(+∞) + (−∞) = 0` (the `∞ − ∞ = 0` convention expressed
    /// additively).
    fn add(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (PosInf, NegInf) | (NegInf, PosInf) => Finite(0.0),
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
            (Finite(a), Finite(b)) => ExtReal::from_f64(a + b),
        }
    }
}

impl Sub for ExtReal {
    type Output = ExtReal;

    /// Subtraction with `(+∞) − (+∞) = 0` and `(−∞) − (−∞) = 0`.
    fn sub(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (PosInf, PosInf) | (NegInf, NegInf) => Finite(0.0),
            (PosInf, _) | (_, NegInf) => PosInf,
            (NegInf, _) | (_, PosInf) => NegInf,
            (Finite(a), Finite(b)) => ExtReal::from_f64(a - b),
        }
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;

    fn neg(self) -> ExtReal {
        match self {
            NegInf => PosInf,
            PosInf => NegInf,
            Finite(x) => Finite(-x),
        }
    }
}

impl Mul for ExtReal {
    type Output = ExtReal;

    /// Multiplication with `0 · (±∞) = 0`; otherwise the usual sign rules,
    /// including `(−∞) · (+∞) = −∞` (keeps multiplication sign-monotone).
    fn mul(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (Finite(a), Finite(b)) => ExtReal::from_f64(a * b),
            (a, b) => {
                // At least one operand is infinite.
                match a.signum() * b.signum() {
                    0 => Finite(0.0),
                    1 => PosInf,
                    _ => NegInf,
                }
            }
        }
    }
}

impl Div for ExtReal {
    type Output = ExtReal;

    /// Division with `0 / x = 0` for every `x` (covering `0/0 = 0`),
    /// `c / 0 = ±∞` by the sign of `c ≠ 0`, and `c / (±∞) = 0` for finite
    /// `c`. When both operands are infinite the quotient routes through
    /// `(±∞) · 0 = 0`.
    fn div(self, rhs: ExtReal) -> ExtReal {
        if self.signum() == 0 {
            return Finite(0.0);
        }
        match (self, rhs) {
            (a, Finite(b)) if b == 0.0 => {
                if a.signum() > 0 {
                    PosInf
                } else {
                    NegInf
                }
            }
            (Finite(a), Finite(b)) => ExtReal::from_f64(a / b),
            (Finite(_), _) => Finite(0.0),
            (a, Finite(b)) => {
                // (±∞) / finite nonzero: infinity with the quotient's sign.
                if (a.signum() as f64) * b.signum() > 0.0 {
                    PosInf
                } else {
                    NegInf
                }
            }
            (a, PosInf) | (a, NegInf) => {
                // ±∞ / ±∞ := (±∞) · 0 = 0 by the 0·∞ convention.
                let _ = a;
                Finite(0.0)
            }
        }
    }
}

impl fmt::Display for ExtReal {
    /// Renders `"inf"`, `"-inf"`, or the shortest decimal that round-trips
    /// bit-exactly through [`FromStr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosInf => write!(f, "inf"),
            NegInf => write!(f, "-inf"),
            Finite(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for ExtReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<ExtReal> {
        match s {
            "inf" => Ok(PosInf),
            "-inf" => Ok(NegInf),
            _ => {
                let x: f64 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("not an extended real: {s:?}")))?;
                ExtReal::new(x)
            }
        }
    }
}

impl From<f64> for ExtReal {
    /// Panics on NaN; use [`ExtReal::new`] for fallible conversion.
    fn from(x: f64) -> ExtReal {
        ExtReal::from_f64(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opposite_infinities_add_to_zero() {
        assert_eq!(PosInf + NegInf, ExtReal::ZERO);
        assert_eq!(NegInf + PosInf, ExtReal::ZERO);
    }

    #[test]
    fn infinity_absorbs_finite_addition() {
        assert_eq!(Finite(3.0) + PosInf, PosInf);
        assert_eq!(Finite(1.5) + Finite(2.5), Finite(4.0));
    }

    #[test]
    fn same_infinity_subtracts_to_zero() {
        assert_eq!(PosInf - PosInf, ExtReal::ZERO);
        assert_eq!(NegInf - NegInf, ExtReal::ZERO);
        assert_eq!(Finite(0.0) - PosInf, NegInf);
        assert_eq!(Finite(5.0) - Finite(2.0), Finite(3.0));
    }

    #[test]
    fn zero_annihilates_infinity() {
        assert_eq!(ExtReal::ZERO * PosInf, ExtReal::ZERO);
        assert_eq!(ExtReal::ZERO * NegInf, ExtReal::ZERO);
        assert_eq!(PosInf * ExtReal::ZERO, ExtReal::ZERO);
        assert_eq!(Finite(2.0) * NegInf, NegInf);
        assert_eq!(Finite(3.0) * Finite(4.0), Finite(12.0));
        assert_eq!(NegInf * PosInf, NegInf);
    }

    #[test]
    fn division_conventions() {
        assert_eq!(ExtReal::ZERO / ExtReal::ZERO, ExtReal::ZERO);
        assert_eq!(Finite(7.0) / ExtReal::ZERO, PosInf);
        assert_eq!(Finite(1.0) / PosInf, ExtReal::ZERO);
        assert_eq!(PosInf / PosInf, ExtReal::ZERO);
        assert_eq!(Finite(6.0) / Finite(3.0), Finite(2.0));
    }

    #[test]
    fn nan_rejected() {
        assert!(ExtReal::new(f64::NAN).is_err());
        assert_eq!(ExtReal::new(f64::INFINITY).unwrap(), PosInf);
    }

    #[test]
    fn order_is_total() {
        let vals = [NegInf, Finite(-1.0), Finite(0.0), Finite(2.5), PosInf];
        for (i, a) in vals.iter().enumerate() {
            for (j, b) in vals.iter().enumerate() {
                assert_eq!(a.cmp(b), i.cmp(&j));
            }
        }
    }

    #[test]
    fn x_minus_x_is_zero_everywhere() {
        for x in [NegInf, Finite(-3.25), ExtReal::ZERO, Finite(17.0), PosInf] {
            assert_eq!(x - x, ExtReal::ZERO);
        }
    }

    #[test]
    fn text_round_trip() {
        for x in [
            NegInf,
            PosInf,
            Finite(0.0),
            Finite(1.3862943611198906),
            Finite(-2.5e-17),
            Finite(f64::MAX),
        ] {
            let s = x.to_string();
            let back: ExtReal = s.parse().unwrap();
            assert_eq!(back, x, "round trip through {s:?}");
            if let (Finite(a), Finite(b)) = (x, back) {
                assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }

    #[test]
    fn log_exp_conventions() {
        assert_eq!(ExtReal::ZERO.ln(), NegInf);
        assert_eq!(NegInf.exp(), ExtReal::ZERO);
        assert_eq!(PosInf.ln(), PosInf);
    }
}
