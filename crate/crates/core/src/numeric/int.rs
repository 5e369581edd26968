use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NumericError;
use crate::word::Nat;

/// An integer in canonical form: the class of pairs `(n1, n2)` of positive naturals under
/// `(n1, n2) ~ (n3, n4) ⇔ n1 + n4 = n2 + n3`, represented by the member with `n1 = 1` or `n2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonInt(BigInt);

impl CanonInt {
    pub fn zero() -> CanonInt {
        CanonInt(BigInt::zero())
    }

    pub fn one() -> CanonInt {
        CanonInt(BigInt::one())
    }

    /// Canonical representative of the class of `(n1, n2)`.
    pub fn canon(n1: Nat, n2: Nat) -> CanonInt {
        CanonInt::from_pair(&BigUint::from(n1.get()), &BigUint::from(n2.get()))
    }

    /// Same as [`CanonInt::canon`] over arbitrary-size naturals. Both entries must be at least 1.
    pub fn from_pair(n1: &BigUint, n2: &BigUint) -> CanonInt {
        debug_assert!(!n1.is_zero() && !n2.is_zero(), "pair entries are natural numbers");
        let (pos, neg) = if n1 >= n2 {
            (n1 - n2, BigUint::zero())
        } else {
            (BigUint::zero(), n2 - n1)
        };
        CanonInt(BigInt::from_biguint(Sign::Plus, pos) - BigInt::from_biguint(Sign::Plus, neg))
    }

    /// `max(value, 0)`.
    pub fn pos(&self) -> BigUint {
        if self.0.is_positive() {
            self.0.magnitude().clone()
        } else {
            BigUint::zero()
        }
    }

    /// `max(-value, 0)`.
    pub fn neg_part(&self) -> BigUint {
        if self.0.is_negative() {
            self.0.magnitude().clone()
        } else {
            BigUint::zero()
        }
    }

    /// The canonical pair `(pos + 1, neg + 1)`.
    pub fn pair_view(&self) -> (BigUint, BigUint) {
        (self.pos() + 1u32, self.neg_part() + 1u32)
    }

    /// Pair addition `(n1 + n3, n2 + n4)`.
    pub fn add(&self, other: &CanonInt) -> CanonInt {
        let (n1, n2) = self.pair_view();
        let (n3, n4) = other.pair_view();
        CanonInt::from_pair(&(n1 + n3), &(n2 + n4))
    }

    /// Pair multiplication `(n1·n3 + n2·n4, n1·n4 + n2·n3)`.
    pub fn mul(&self, other: &CanonInt) -> CanonInt {
        let (n1, n2) = self.pair_view();
        let (n3, n4) = other.pair_view();
        CanonInt::from_pair(&(&n1 * &n3 + &n2 * &n4), &(&n1 * &n4 + &n2 * &n3))
    }

    /// Additive inverse: the swapped pair.
    pub fn negate(&self) -> CanonInt {
        let (n1, n2) = self.pair_view();
        CanonInt::from_pair(&n2, &n1)
    }

    pub fn sub(&self, other: &CanonInt) -> CanonInt {
        self.add(&other.negate())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// The integer units are exactly `1` and `-1`.
    pub fn is_unit(&self) -> bool {
        self.0.magnitude().is_one()
    }

    pub fn signum(&self) -> Ordering {
        self.0.sign_cmp_zero()
    }

    pub fn as_bigint(&self) -> &BigInt {
        &self.0
    }

    pub fn into_bigint(self) -> BigInt {
        self.0
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
}

trait SignCmpZero {
    fn sign_cmp_zero(&self) -> Ordering;
}

impl SignCmpZero for BigInt {
    fn sign_cmp_zero(&self) -> Ordering {
        match self.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

/// Integer arithmetic selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntOp {
    Add,
    Neg,
    Mul,
}

/// `Neg` ignores `b`.
pub fn int_arith(op: IntOp, a: &CanonInt, b: &CanonInt) -> CanonInt {
    match op {
        IntOp::Add => a.add(b),
        IntOp::Neg => a.negate(),
        IntOp::Mul => a.mul(b),
    }
}

impl From<i64> for CanonInt {
    fn from(v: i64) -> CanonInt {
        CanonInt(BigInt::from(v))
    }
}

impl From<BigInt> for CanonInt {
    fn from(v: BigInt) -> CanonInt {
        CanonInt(v)
    }
}

impl Add for &CanonInt {
    type Output = CanonInt;
    fn add(self, rhs: &CanonInt) -> CanonInt {
        CanonInt::add(self, rhs)
    }
}

impl Mul for &CanonInt {
    type Output = CanonInt;
    fn mul(self, rhs: &CanonInt) -> CanonInt {
        CanonInt::mul(self, rhs)
    }
}

impl Neg for &CanonInt {
    type Output = CanonInt;
    fn neg(self) -> CanonInt {
        self.negate()
    }
}

impl FromStr for CanonInt {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<CanonInt, NumericError> {
        s.trim()
            .parse::<BigInt>()
            .map(CanonInt)
            .map_err(|_| NumericError::Parse(format!("not a signed decimal integer: {s:?}")))
    }
}

impl fmt::Display for CanonInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(n: u64) -> Nat {
        Nat::new(n).unwrap()
    }

    fn int(v: i64) -> CanonInt {
        CanonInt::from(v)
    }

    #[test]
    fn canon_examples() {
        assert_eq!(CanonInt::canon(nat(3), nat(1)), int(2));
        assert_eq!(CanonInt::canon(nat(1), nat(1)), int(0));
        assert_eq!(CanonInt::canon(nat(2), nat(5)), int(-3));
    }

    #[test]
    fn pair_view_is_canonical() {
        assert_eq!(int(2).pair_view(), (BigUint::from(3u32), BigUint::from(1u32)));
        assert_eq!(int(-3).pair_view(), (BigUint::from(1u32), BigUint::from(4u32)));
        assert_eq!(int(0).pair_view(), (BigUint::from(1u32), BigUint::from(1u32)));
    }

    #[test]
    fn arith_examples() {
        assert_eq!(int_arith(IntOp::Add, &int(2), &int(-1)), int(1));
        assert_eq!(int_arith(IntOp::Mul, &int(2), &int(-3)), int(-6));
        assert_eq!(int_arith(IntOp::Neg, &int(0), &int(0)), int(0));
        assert_eq!(int(5).sub(&int(7)), int(-2));
    }

    #[test]
    fn pair_law_exhaustive() {
        for n1 in 1..=50u64 {
            for n2 in 1..=50u64 {
                for (n3, n4) in [(1u64, 1u64), (7, 3), (3, 7), (50, 1), (1, 50), (n2, n1)] {
                    let same = CanonInt::canon(nat(n1), nat(n2)) == CanonInt::canon(nat(n3), nat(n4));
                    assert_eq!(same, n1 + n4 == n2 + n3, "({n1},{n2}) vs ({n3},{n4})");
                }
            }
        }
    }

    #[test]
    fn units() {
        assert!(int(1).is_unit() && int(-1).is_unit());
        assert!(!int(0).is_unit() && !int(2).is_unit());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("-17".parse::<CanonInt>().unwrap(), int(-17));
        assert_eq!(int(-17).to_string(), "-17");
        assert!("x1".parse::<CanonInt>().is_err());
    }
}
