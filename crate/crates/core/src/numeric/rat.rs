use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::int::CanonInt;
use super::NumericError;

/// A rational in lowest terms with a strictly positive denominator; the sign sits on the numerator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonRat {
    num: BigInt,
    den: BigInt,
}

impl CanonRat {
    /// Lowest-terms form of `z1 / z2`.
    pub fn canon(z1: &CanonInt, z2: &CanonInt) -> Result<CanonRat, NumericError> {
        CanonRat::from_bigints(z1.as_bigint().clone(), z2.as_bigint().clone())
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<CanonRat, NumericError> {
        if den.is_zero() {
            return Err(NumericError::ZeroDenominator);
        }
        Ok(CanonRat::reduce(num, den))
    }

    fn reduce(mut num: BigInt, mut den: BigInt) -> CanonRat {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_one() && !g.is_zero() {
            num /= &g;
            den /= &g;
        }
        if num.is_zero() {
            den = BigInt::one();
        }
        CanonRat { num, den }
    }

    pub fn integer(v: i64) -> CanonRat {
        CanonRat {
            num: BigInt::from(v),
            den: BigInt::one(),
        }
    }

    /// `p / q`; panics when `q == 0`.
    pub fn frac(p: i64, q: i64) -> CanonRat {
        CanonRat::from_bigints(BigInt::from(p), BigInt::from(q)).expect("nonzero denominator")
    }

    pub fn zero() -> CanonRat {
        CanonRat::integer(0)
    }

    pub fn one() -> CanonRat {
        CanonRat::integer(1)
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u32) -> CanonRat {
        CanonRat {
            num: BigInt::one(),
            den: BigInt::one() << k as usize,
        }
    }

    pub fn num(&self) -> CanonInt {
        CanonInt::from(self.num.clone())
    }

    pub fn den(&self) -> CanonInt {
        CanonInt::from(self.den.clone())
    }

    pub fn numer_big(&self) -> &BigInt {
        &self.num
    }

    pub fn denom_big(&self) -> &BigInt {
        &self.den
    }

    /// Numerator `z1·z4 + z2·z3` over denominator `z2·z4`.
    pub fn add(&self, other: &CanonRat) -> CanonRat {
        CanonRat::reduce(&self.num * &other.den + &self.den * &other.num, &self.den * &other.den)
    }

    pub fn neg(&self) -> CanonRat {
        CanonRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &CanonRat) -> CanonRat {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CanonRat) -> CanonRat {
        CanonRat::reduce(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn inv(&self) -> Result<CanonRat, NumericError> {
        if self.num.is_zero() {
            return Err(NumericError::ZeroInverse);
        }
        Ok(CanonRat::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &CanonRat) -> Result<CanonRat, NumericError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Order by cross-multiplication with positive denominators.
    pub fn cmp_rat(&self, other: &CanonRat) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }

    pub fn abs(&self) -> CanonRat {
        CanonRat {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn midpoint(&self, other: &CanonRat) -> CanonRat {
        self.add(other).mul(&CanonRat::frac(1, 2))
    }

    /// `self + (other - self)·t`.
    pub fn lerp(&self, other: &CanonRat, t: &CanonRat) -> CanonRat {
        self.add(&other.sub(self).mul(t))
    }

    pub fn floor(&self) -> BigInt {
        self.num.div_floor(&self.den)
    }

    pub fn ceil(&self) -> BigInt {
        -((-&self.num).div_floor(&self.den))
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn max(self, other: CanonRat) -> CanonRat {
        if self.cmp_rat(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: CanonRat) -> CanonRat {
        if self.cmp_rat(&other) == Ordering::Greater {
            other
        } else {
            self
        }
    }
}

impl PartialOrd for CanonRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonRat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_rat(other)
    }
}

/// Rational arithmetic selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Neg,
    Mul,
    Inv,
}

/// `Neg` and `Inv` ignore `b`.
pub fn rat_arith(op: RatOp, a: &CanonRat, b: &CanonRat) -> Result<CanonRat, NumericError> {
    match op {
        RatOp::Add => Ok(a.add(b)),
        RatOp::Neg => Ok(a.neg()),
        RatOp::Mul => Ok(a.mul(b)),
        RatOp::Inv => a.inv(),
    }
}

pub fn rat_cmp(a: &CanonRat, b: &CanonRat) -> Ordering {
    a.cmp_rat(b)
}

impl FromStr for CanonRat {
    type Err = NumericError;

    /// Accepts `p`, `p/q` with signed decimal `p` and nonzero `q`.
    fn from_str(s: &str) -> Result<CanonRat, NumericError> {
        let bad = || NumericError::Parse(format!("not a rational p/q: {s:?}"));
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p, q),
            None => (s, "1"),
        };
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        CanonRat::from_bigints(p, q)
    }
}

impl fmt::Display for CanonRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
