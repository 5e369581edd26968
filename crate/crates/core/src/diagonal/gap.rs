//! Nested gaps in an enumerated dense order, and the real they pin down.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{DiagError, IndexedFamily, OrderComparator};
use crate::numeric::{real_cmp, CanonRat, CutReal, CutSide, CutSource, NumericError, PRECISION_CAP};
use crate::numbering::canonical_cmp;
use crate::word::Word;

/// Enumeration indices scanned by the default [`EnumeratedOrder::least_between`].
pub const SCAN_BUDGET: u64 = 1 << 16;

/// Binary precision used to order two distinct reals.
const CMP_PRECISION: u32 = 128;

/// Most gap steps a lazily refined gap limit will compute.
const MAX_GAP_STEPS: usize = 4096;

/// Mediant steps before the Stern–Brocot search gives up.
const MAX_DESCENT: usize = 100_000;

/// A total order whose elements are enumerated as `at(1), at(2), ...`.
pub trait EnumeratedOrder {
    type Item: Clone + fmt::Display;

    fn at(&self, n: u64) -> Option<Self::Item>;

    fn compare(&self, a: &Self::Item, b: &Self::Item) -> Result<Ordering, DiagError>;

    /// The element of least index strictly between `lo` and `hi`.
    fn least_between(&self, lo: &Self::Item, hi: &Self::Item) -> Result<Option<Self::Item>, DiagError> {
        for n in 1..=SCAN_BUDGET {
            let Some(e) = self.at(n) else { break };
            if self.compare(lo, &e)? == Ordering::Less && self.compare(&e, hi)? == Ordering::Less {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }
}

/// Runs the nested selection: `f` is the least-index element inside the current gap, then
/// `g` is the least-index element between the new `f` and the old `g`.
pub fn gap_sequences<O: EnumeratedOrder>(
    order: &O,
    x1: &O::Item,
    x2: &O::Item,
    steps: usize,
) -> Result<Vec<(O::Item, O::Item)>, DiagError> {
    if order.compare(x1, x2)? != Ordering::Less {
        return Err(DiagError::Parameter(format!("{x1} is not below {x2}")));
    }
    let mut out = Vec::with_capacity(steps);
    let (mut f, mut g) = (x1.clone(), x2.clone());
    for _ in 0..steps {
        f = between(order, &f, &g)?;
        g = between(order, &f, &g)?;
        out.push((f.clone(), g.clone()));
    }
    Ok(out)
}

fn between<O: EnumeratedOrder>(order: &O, lo: &O::Item, hi: &O::Item) -> Result<O::Item, DiagError> {
    order.least_between(lo, hi)?.ok_or_else(|| DiagError::DensityViolation {
        lo: lo.to_string(),
        hi: hi.to_string(),
        budget: SCAN_BUDGET,
    })
}

/// Words ordered by a comparator and enumerated by a supplied bijection.
#[derive(Clone)]
pub struct WordOrder {
    order: OrderComparator,
    enumeration: Arc<dyn Fn(u64) -> Option<Word> + Send + Sync>,
}

impl WordOrder {
    pub fn new<F>(order: OrderComparator, enumeration: F) -> WordOrder
    where
        F: Fn(u64) -> Option<Word> + Send + Sync + 'static,
    {
        WordOrder {
            order,
            enumeration: Arc::new(enumeration),
        }
    }

    /// A finite carrier enumerated in canonical word order.
    pub fn finite(order: OrderComparator) -> Result<WordOrder, DiagError> {
        let mut items: Vec<Word> = order
            .carrier()
            .extent()
            .ok_or_else(|| DiagError::Unsupported(format!("{order} has an infinite carrier")))?
            .iter()
            .cloned()
            .collect();
        items.sort_by(canonical_cmp);
        Ok(WordOrder::new(order, move |n| items.get(n.checked_sub(1)? as usize).cloned()))
    }
}

impl EnumeratedOrder for WordOrder {
    type Item = Word;

    fn at(&self, n: u64) -> Option<Word> {
        (self.enumeration)(n)
    }

    fn compare(&self, a: &Word, b: &Word) -> Result<Ordering, DiagError> {
        Ok(if a == b {
            Ordering::Equal
        } else if self.order.leq(a, b) {
            Ordering::Less
        } else {
            Ordering::Greater
        })
    }
}

/// The `n`-th rational of `[0, 1]` ordered by denominator, then numerator:
/// `0/1, 1/1, 1/2, 1/3, 2/3, 1/4, 3/4, ...`. `n` starts at 1.
pub fn canonical_rational(n: u64) -> Option<CanonRat> {
    match n {
        0 => None,
        1 => Some(CanonRat::zero()),
        2 => Some(CanonRat::one()),
        _ => {
            let mut left = n - 2;
            for d in 2u64.. {
                for p in 1..d {
                    if p.gcd(&d) == 1 {
                        left -= 1;
                        if left == 0 {
                            return Some(CanonRat::frac(p as i64, d as i64));
                        }
                    }
                }
            }
            unreachable!("denominators are unbounded")
        }
    }
}

fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Inverse of [`canonical_rational`]; `None` outside `[0, 1]` or beyond `u64` denominators.
/// Costs about `den^1.5` steps.
pub fn canonical_rational_index(q: &CanonRat) -> Option<u64> {
    if q.is_negative() || q > &CanonRat::one() {
        return None;
    }
    if q.is_zero() {
        return Some(1);
    }
    if q == &CanonRat::one() {
        return Some(2);
    }
    let num: u64 = q.numer_big().try_into().ok()?;
    let den: u64 = q.denom_big().try_into().ok()?;
    let before: u64 = (2..den).map(totient).sum();
    let rank = (1..=num).filter(|p| p.gcd(&den) == 1).count() as u64;
    Some(2 + before + rank)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Place {
    Below,
    Inside,
    Above,
}

fn rat(p: &BigInt, q: &BigInt) -> CanonRat {
    CanonRat::from_bigints(p.clone(), q.clone()).expect("Stern–Brocot denominators are positive")
}

/// Largest `t ≥ 1` with `holds(t)`, given `holds(1)` and that `holds` flips to false once.
fn gallop<F>(holds: F) -> Result<BigInt, DiagError>
where
    F: Fn(&BigInt) -> Result<bool, DiagError>,
{
    let mut good = BigInt::one();
    let mut bad = BigInt::from(2);
    while holds(&bad)? {
        good = bad.clone();
        bad <<= 1;
    }
    while &bad - &good > BigInt::one() {
        let mid = (&good + &bad) >> 1;
        if holds(&mid)? {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok(good)
}

/// Least-index rational of `[0, 1]` inside an open interval described by `place`, found by a
/// Stern–Brocot descent that gallops through runs of same-direction steps.
fn least_rational_in<P>(place: P) -> Result<Option<CanonRat>, DiagError>
where
    P: Fn(&CanonRat) -> Result<Place, DiagError>,
{
    let zero = place(&CanonRat::zero())?;
    if zero == Place::Inside {
        return Ok(Some(CanonRat::zero()));
    }
    let one = place(&CanonRat::one())?;
    if one == Place::Inside {
        return Ok(Some(CanonRat::one()));
    }
    if zero == Place::Above || one == Place::Below {
        return Ok(None);
    }
    let (mut lp, mut lq) = (BigInt::zero(), BigInt::one());
    let (mut rp, mut rq) = (BigInt::one(), BigInt::one());
    for _ in 0..MAX_DESCENT {
        let m = rat(&(&lp + &rp), &(&lq + &rq));
        match place(&m)? {
            Place::Inside => return Ok(Some(m)),
            Place::Below => {
                let t = gallop(|t| Ok(place(&rat(&(&lp + t * &rp), &(&lq + t * &rq)))? == Place::Below))?;
                lp += &t * &rp;
                lq += &t * &rq;
            }
            Place::Above => {
                let t = gallop(|t| Ok(place(&rat(&(t * &lp + &rp), &(t * &lq + &rq)))? == Place::Above))?;
                rp += &t * &lp;
                rq += &t * &lq;
            }
        }
    }
    Err(DiagError::Unsupported(format!("Stern–Brocot search exceeded {MAX_DESCENT} steps")))
}

/// The least-index rational of `[0, 1]` strictly between `lo` and `hi`: the one with the
/// smallest denominator, then the smallest numerator.
pub fn simplest_between(lo: &CanonRat, hi: &CanonRat) -> Option<CanonRat> {
    least_rational_in(|m| {
        Ok(if m <= lo {
            Place::Below
        } else if m >= hi {
            Place::Above
        } else {
            Place::Inside
        })
    })
    .expect("exact comparisons cannot fail")
}

/// The rationals of `[0, 1]` in [`canonical_rational`] order.
#[derive(Debug, Clone, Copy, Default)]
pub struct CanonicalRationals;

impl EnumeratedOrder for CanonicalRationals {
    type Item = CanonRat;

    fn at(&self, n: u64) -> Option<CanonRat> {
        canonical_rational(n)
    }

    fn compare(&self, a: &CanonRat, b: &CanonRat) -> Result<Ordering, DiagError> {
        Ok(a.cmp(b))
    }

    fn least_between(&self, lo: &CanonRat, hi: &CanonRat) -> Result<Option<CanonRat>, DiagError> {
        Ok(simplest_between(lo, hi))
    }
}

/// An element of the order used by [`missing_real`]: a family member, or a rational of `[0, 1]`.
#[derive(Debug, Clone)]
pub enum GapPoint {
    Member(u64, CutReal),
    Rational(CanonRat),
}

impl fmt::Display for GapPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GapPoint::Member(i, r) => write!(f, "member {i} ({r})"),
            GapPoint::Rational(q) => write!(f, "{q}"),
        }
    }
}

impl GapPoint {
    fn as_real(&self) -> CutReal {
        match self {
            GapPoint::Member(_, r) => r.clone(),
            GapPoint::Rational(q) => CutReal::from_rational(q.clone()),
        }
    }

    /// Orders this point against a rational.
    fn cmp_rat(&self, q: &CanonRat) -> Result<Ordering, DiagError> {
        match self {
            GapPoint::Rational(p) => Ok(p.cmp(q)),
            GapPoint::Member(_, r) => Ok(real_cmp(r, &CutReal::from_rational(q.clone()), CMP_PRECISION)?),
        }
    }

    /// `(a, b)` with `a ≤ self ≤ b`, within `2^-k`.
    fn bounds(&self, k: u32) -> Result<(CanonRat, CanonRat), DiagError> {
        match self {
            GapPoint::Rational(q) => Ok((q.clone(), q.clone())),
            GapPoint::Member(_, r) => Ok(r.enclose(k)?),
        }
    }
}

/// Family members first, then the rationals of `[0, 1]`.
struct MembersThenRationals {
    members: Vec<CutReal>,
}

impl EnumeratedOrder for MembersThenRationals {
    type Item = GapPoint;

    fn at(&self, n: u64) -> Option<GapPoint> {
        let f = self.members.len() as u64;
        if n == 0 {
            None
        } else if n <= f {
            Some(GapPoint::Member(n, self.members[(n - 1) as usize].clone()))
        } else {
            canonical_rational(n - f).map(GapPoint::Rational)
        }
    }

    fn compare(&self, a: &GapPoint, b: &GapPoint) -> Result<Ordering, DiagError> {
        match (a, b) {
            (GapPoint::Member(i, _), GapPoint::Member(j, _)) if i == j => Ok(Ordering::Equal),
            (GapPoint::Rational(p), GapPoint::Rational(q)) => Ok(p.cmp(q)),
            _ => Ok(real_cmp(&a.as_real(), &b.as_real(), CMP_PRECISION)?),
        }
    }

    fn least_between(&self, lo: &GapPoint, hi: &GapPoint) -> Result<Option<GapPoint>, DiagError> {
        for n in 1..=self.members.len() as u64 {
            let e = self.at(n).expect("member index");
            if self.compare(lo, &e)? == Ordering::Less && self.compare(&e, hi)? == Ordering::Less {
                return Ok(Some(e));
            }
        }
        let found = least_rational_in(|m| {
            Ok(if lo.cmp_rat(m)? != Ordering::Less {
                Place::Below
            } else if hi.cmp_rat(m)? != Ordering::Greater {
                Place::Above
            } else {
                Place::Inside
            })
        })?;
        Ok(found.map(GapPoint::Rational))
    }
}

/// The real `sup f_k = inf g_k`, extending the gap steps on demand.
struct GapLimit {
    order: MembersThenRationals,
    steps: Mutex<Vec<(GapPoint, GapPoint)>>,
}

impl GapLimit {
    fn step(&self, n: usize) -> Result<(GapPoint, GapPoint), DiagError> {
        let mut steps = self.steps.lock().expect("gap lock");
        while steps.len() <= n {
            if steps.len() >= MAX_GAP_STEPS {
                return Err(DiagError::Numeric(NumericError::PrecisionExhausted(format!(
                    "gap limit needs more than {MAX_GAP_STEPS} steps"
                ))));
            }
            let (f, g) = steps.last().cloned().expect("at least one step");
            let f2 = between(&self.order, &f, &g)?;
            let g2 = between(&self.order, &f2, &g)?;
            steps.push((f2, g2));
        }
        Ok(steps[n].clone())
    }
}

fn numeric(e: DiagError) -> NumericError {
    match e {
        DiagError::Numeric(n) => n,
        other => NumericError::PrecisionExhausted(other.to_string()),
    }
}

impl CutSource for GapLimit {
    fn enclose(&self, k: u32) -> Result<(CanonRat, CanonRat), NumericError> {
        let eps = CanonRat::pow2_neg(k);
        for n in 0..MAX_GAP_STEPS {
            let (f, g) = self.step(n).map_err(numeric)?;
            // f_n < x ≤ g_n, so any lower bound of f_n is lower and any upper bound of g_n is upper.
            let (lo, _) = f.bounds(k + 1).map_err(numeric)?;
            let (_, hi) = g.bounds(k + 1).map_err(numeric)?;
            if hi.sub(&lo) <= eps {
                return Ok((lo, hi));
            }
        }
        Err(NumericError::PrecisionExhausted(format!("gap limit at 2^-{k}")))
    }

    fn locate(&self, q: &CanonRat) -> Result<CutSide, NumericError> {
        for n in 0..MAX_GAP_STEPS {
            let (f, g) = self.step(n).map_err(numeric)?;
            if f.cmp_rat(q).map_err(numeric)? == Ordering::Greater {
                return Ok(CutSide::Lower);
            }
            if g.cmp_rat(q).map_err(numeric)? != Ordering::Greater {
                return Ok(CutSide::Upper);
            }
        }
        Err(NumericError::PrecisionExhausted(format!(
            "{q} not placed within {MAX_GAP_STEPS} gap steps at 2^-{PRECISION_CAP}"
        )))
    }
}

/// A real outside a finite family of reals.
///
/// Runs the gap construction from `0` and `1` over the family members followed by the
/// rationals of `[0, 1]`, and returns the common limit of the gaps. After as many steps as
/// there are members, every member lies outside the gap or on one of its ends, while the
/// limit lies strictly inside. At least `steps` steps are computed up front.
pub fn missing_real(family: &IndexedFamily<CutReal>, steps: usize) -> Result<CutReal, DiagError> {
    let members = family
        .members()
        .ok_or_else(|| DiagError::Unsupported("the family of reals must be finite".into()))?;
    let eager = steps.max(members.len() + 1);
    let order = MembersThenRationals { members };
    let initial = gap_sequences(
        &order,
        &GapPoint::Rational(CanonRat::zero()),
        &GapPoint::Rational(CanonRat::one()),
        eager,
    )?;
    let limit = GapLimit {
        order,
        steps: Mutex::new(initial),
    };
    Ok(CutReal::from_source(format!("gap limit outside {}", family.description()), limit)?)
}
