//! Reals as rational cuts. A locator sorts every rational into the lower segment `{p < x}` or
//! the upper segment `{p ≥ x}`; enclosures `lo < x ≤ hi` of any width are derived from it.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::rat::CanonRat;
use super::NumericError;

/// Largest binary precision any refinement loop will try.
pub const PRECISION_CAP: u32 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CutSide {
    Lower,
    Upper,
}

/// Something that can be refined into a real.
pub trait CutSource: Send + Sync {
    /// Returns `(lo, hi)` with `lo < x ≤ hi` and `hi - lo ≤ 2^-k`.
    fn enclose(&self, k: u32) -> Result<(CanonRat, CanonRat), NumericError>;

    fn locate(&self, q: &CanonRat) -> Result<CutSide, NumericError> {
        locate_by_enclosure(|k| self.enclose(k), q)
    }
}

fn precisions() -> impl Iterator<Item = u32> {
    std::iter::successors(Some(1u32), |&k| (k < PRECISION_CAP).then(|| (k * 2).min(PRECISION_CAP)))
}

/// `1, 2, 4, ...` below `k`, then `k` itself.
fn precisions_upto(k: u32) -> impl Iterator<Item = u32> {
    let k = k.max(1);
    precisions().take_while(move |&j| j < k).chain(std::iter::once(k))
}

fn locate_by_enclosure<F>(enclose: F, q: &CanonRat) -> Result<CutSide, NumericError>
where
    F: Fn(u32) -> Result<(CanonRat, CanonRat), NumericError>,
{
    for k in precisions() {
        let (lo, hi) = enclose(k)?;
        if q <= &lo {
            return Ok(CutSide::Lower);
        }
        if q >= &hi {
            return Ok(CutSide::Upper);
        }
    }
    Err(NumericError::PrecisionExhausted(format!(
        "{q} is not separated from the real at 2^-{PRECISION_CAP}"
    )))
}

struct Node {
    source: Option<Box<dyn CutSource>>,
    exact: Option<CanonRat>,
    bracket: (CanonRat, CanonRat),
    description: String,
    cache: Mutex<Option<(u32, CanonRat, CanonRat)>>,
}

/// A computable real: a total locator plus an initial bracket. Cheap to clone.
#[derive(Clone)]
pub struct CutReal(Arc<Node>);

impl CutReal {
    /// Wraps a source; the bracket is its `2^0` enclosure.
    pub fn from_source(description: impl Into<String>, source: impl CutSource + 'static) -> Result<CutReal, NumericError> {
        let bracket = source.enclose(0)?;
        Ok(CutReal(Arc::new(Node {
            source: Some(Box::new(source)),
            exact: None,
            bracket,
            description: description.into(),
            cache: Mutex::new(None),
        })))
    }

    /// The real whose upper segment has least element `q`.
    pub fn from_rational(q: CanonRat) -> CutReal {
        let one = CanonRat::one();
        CutReal(Arc::new(Node {
            source: None,
            bracket: (q.sub(&one), q.add(&one)),
            description: q.to_string(),
            exact: Some(q),
            cache: Mutex::new(None),
        }))
    }

    /// A real given directly by its locator; `lo` must land in the lower segment and `hi` in the upper.
    pub fn from_locator<F>(description: impl Into<String>, locate: F, lo: CanonRat, hi: CanonRat) -> Result<CutReal, NumericError>
    where
        F: Fn(&CanonRat) -> CutSide + Send + Sync + 'static,
    {
        if locate(&lo) != CutSide::Lower || locate(&hi) != CutSide::Upper {
            return Err(NumericError::Parameter(format!("bracket ({lo}, {hi}) does not straddle the cut")));
        }
        CutReal::from_source(
            description,
            Bisect {
                locate: Box::new(locate),
                best: Mutex::new((lo, hi)),
            },
        )
    }

    /// `√2`: lower segment `{q : q < 0 or q² < 2}`.
    pub fn sqrt2() -> CutReal {
        let two = CanonRat::integer(2);
        CutReal::from_locator(
            "sqrt2",
            move |q| {
                if q.is_negative() || q.mul(q) < two {
                    CutSide::Lower
                } else {
                    CutSide::Upper
                }
            },
            CanonRat::one(),
            CanonRat::integer(2),
        )
        .expect("1 < sqrt2 <= 2")
    }

    /// `e` as the limit of the partial sums `Σ_{i≤n} 1/i!`.
    pub fn e_partial() -> CutReal {
        let seq = ModulusSequence::of_rationals(
            "e-partial",
            |n| {
                let mut sum = CanonRat::one();
                let mut term = CanonRat::one();
                for i in 1..=n as i64 {
                    term = term.mul(&CanonRat::frac(1, i));
                    sum = sum.add(&term);
                }
                sum
            },
            |k| {
                // Tail beyond m is at most 2/(m+1)!.
                let bound = CanonRat::pow2_neg(k);
                let mut fact = CanonRat::one();
                let mut m = 1u64;
                loop {
                    fact = fact.mul(&CanonRat::integer(m as i64 + 1));
                    if CanonRat::integer(2).div(&fact).expect("factorial is nonzero") <= bound {
                        return m;
                    }
                    m += 1;
                }
            },
        );
        cauchy_limit(&seq).expect("partial sums of e satisfy their modulus")
    }

    pub fn description(&self) -> &str {
        &self.0.description
    }

    pub fn bracket(&self) -> &(CanonRat, CanonRat) {
        &self.0.bracket
    }

    /// The rational value, when the real was built from one.
    pub fn exact(&self) -> Option<&CanonRat> {
        self.0.exact.as_ref()
    }

    pub fn locate(&self, q: &CanonRat) -> Result<CutSide, NumericError> {
        match (&self.0.exact, &self.0.source) {
            (Some(x), _) => Ok(if q < x { CutSide::Lower } else { CutSide::Upper }),
            (None, Some(src)) => src.locate(q),
            (None, None) => unreachable!("a real has a source or an exact value"),
        }
    }

    /// `(lo, hi)` with `lo` lower, `hi` upper and `hi - lo ≤ 2^-k`.
    pub fn enclose(&self, k: u32) -> Result<(CanonRat, CanonRat), NumericError> {
        if let Some(x) = &self.0.exact {
            return Ok((x.sub(&CanonRat::pow2_neg(k)), x.clone()));
        }
        if let Some((ck, lo, hi)) = &*self.0.cache.lock().expect("cache lock") {
            if *ck >= k {
                return Ok((lo.clone(), hi.clone()));
            }
        }
        let src = self.0.source.as_ref().expect("a real has a source or an exact value");
        let (lo, hi) = src.enclose(k)?;
        *self.0.cache.lock().expect("cache lock") = Some((k, lo.clone(), hi.clone()));
        Ok((lo, hi))
    }

    pub fn add(&self, other: &CutReal) -> Result<CutReal, NumericError> {
        if let (Some(a), Some(b)) = (self.exact(), other.exact()) {
            return Ok(CutReal::from_rational(a.add(b)));
        }
        CutReal::from_source(
            format!("({self} + {other})"),
            Add(self.clone(), other.clone()),
        )
    }

    pub fn neg(&self) -> Result<CutReal, NumericError> {
        if let Some(a) = self.exact() {
            return Ok(CutReal::from_rational(a.neg()));
        }
        CutReal::from_source(format!("-{self}"), Neg(self.clone()))
    }

    pub fn abs(&self) -> Result<CutReal, NumericError> {
        if let Some(a) = self.exact() {
            return Ok(CutReal::from_rational(a.abs()));
        }
        CutReal::from_source(format!("|{self}|"), Abs(self.clone()))
    }

    /// Product by sign cases: positive factors multiply upper segments, a negative factor is
    /// negated out, and factors whose sign cannot be settled fall back to interval products.
    pub fn mul(&self, other: &CutReal) -> Result<CutReal, NumericError> {
        if let (Some(a), Some(b)) = (self.exact(), other.exact()) {
            return Ok(CutReal::from_rational(a.mul(b)));
        }
        if self.exact().is_some_and(CanonRat::is_zero) || other.exact().is_some_and(CanonRat::is_zero) {
            return Ok(CutReal::from_rational(CanonRat::zero()));
        }
        use Ordering::{Greater, Less};
        match (self.sign()?, other.sign()?) {
            (Some(Greater), Some(Greater)) => mul_pos(self, other),
            (Some(Less), Some(Greater)) => mul_pos(&self.neg()?, other)?.neg(),
            (Some(Greater), Some(Less)) => mul_pos(self, &other.neg()?)?.neg(),
            (Some(Less), Some(Less)) => mul_pos(&self.neg()?, &other.neg()?),
            _ => CutReal::from_source(
                format!("({self} * {other})"),
                MulInterval(self.clone(), other.clone()),
            ),
        }
    }

    /// Sign if some enclosure up to `2^-64` excludes zero.
    fn sign(&self) -> Result<Option<Ordering>, NumericError> {
        if let Some(x) = self.exact() {
            return Ok(Some(x.cmp(&CanonRat::zero())));
        }
        let zero = CanonRat::zero();
        for k in precisions().take_while(|&k| k <= 64) {
            let (lo, hi) = self.enclose(k)?;
            if lo >= zero {
                return Ok(Some(Ordering::Greater));
            }
            if hi < zero {
                return Ok(Some(Ordering::Less));
            }
        }
        Ok(None)
    }
}

impl fmt::Display for CutReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.description)
    }
}

impl fmt::Debug for CutReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CutReal({})", self.0.description)
    }
}

struct Bisect {
    locate: Box<dyn Fn(&CanonRat) -> CutSide + Send + Sync>,
    best: Mutex<(CanonRat, CanonRat)>,
}

impl CutSource for Bisect {
    fn enclose(&self, k: u32) -> Result<(CanonRat, CanonRat), NumericError> {
        let eps = CanonRat::pow2_neg(k);
        let mut best = self.best.lock().expect("bracket lock");
        while best.1.sub(&best.0) > eps {
            let mid = best.0.midpoint(&best.1);
            match (self.locate)(&mid) {
                CutSide::Lower => best.0 = mid,
                CutSide::Upper => best.1 = mid,
            }
        }
        Ok(best.clone())
    }

    fn locate(&self, q: &CanonRat) -> Result<CutSide, NumericError> {
        Ok((self.locate)(q))
    }
}

struct Add(CutReal, CutReal);

impl CutSource for Add {
    fn enclose(&self, k: u32) -> Result<(CanonRat, CanonRat), NumericError> {
        let (alo, ahi) = self.0.enclose(k + 1)?;
        let (blo, bhi) = self.1.enclose(k + 1)?;
        Ok((alo.add(&blo), ahi.add(&bhi)))
    }
}

struct Neg(CutReal);

impl CutSource for Neg {
    fn enclose(&self, k: u32) -> Result<(CanonRat, CanonRat), NumericError> {
        // -hi ≤ -x < -lo; shift the left end so it stays strictly below.
        let (lo, hi) = self.0.enclose(k + 1)?;
        Ok((hi.neg().sub(&CanonRat::pow2_neg(k + 1)), lo.neg()))
    }
}

struct Abs(CutReal);

impl CutSource for Abs {
    fn enclose(&self, k: u32) -> Result<(CanonRat, CanonRat), NumericError> {
        let (lo, hi) = self.0.enclose(k + 1)?;
        let zero = CanonRat::zero();
        let eps = CanonRat::pow2_neg(k + 1);
        Ok(if lo >= zero {
            (lo, hi)
        } else if hi <= zero {
            (hi.neg().sub(&eps), lo.neg())
        } else {
            (eps.neg(), lo.neg().max(hi))
        })
    }
}

/// Refines both factors until `product(j)` is at most `2^-k` wide.
fn refine_product<F>(a: &CutReal, b: &CutReal, k: u32, product: F) -> Result<(CanonRat, CanonRat), NumericError>
where
    F: Fn(&(CanonRat, CanonRat), &(CanonRat, CanonRat), u32) -> (CanonRat, CanonRat),
{
    let eps = CanonRat::pow2_neg(k);
    let mut j = k + 1;
    loop {
        let (lo, hi) = product(&a.enclose(j)?, &b.enclose(j)?, j);
        if hi.sub(&lo) <= eps {
            return Ok((lo, hi));
        }
        if j >= k + PRECISION_CAP {
            return Err(NumericError::PrecisionExhausted(format!("product of {a} and {b} at 2^-{k}")));
        }
        j += 4;
    }
}

fn mul_pos(a: &CutReal, b: &CutReal) -> Result<CutReal, NumericError> {
    CutReal::from_source(format!("({a} * {b})"), MulPos(a.clone(), b.clone()))
}

/// Both factors positive: the upper segment of the product is generated by products of upper elements.
struct MulPos(CutReal, CutReal);

impl CutSource for MulPos {
    fn enclose(&self, k: u32) -> Result<(CanonRat, CanonRat), NumericError> {
        refine_product(&self.0, &self.1, k, |(alo, ahi), (blo, bhi), _| {
            let zero = CanonRat::zero();
            let lo = alo.clone().max(zero.clone()).mul(&blo.clone().max(zero));
            (lo, ahi.mul(bhi))
        })
    }
}

struct MulInterval(CutReal, CutReal);

impl CutSource for MulInterval {
    fn enclose(&self, k: u32) -> Result<(CanonRat, CanonRat), NumericError> {
        refine_product(&self.0, &self.1, k, |(alo, ahi), (blo, bhi), j| {
            let corners = [alo.mul(blo), alo.mul(bhi), ahi.mul(blo), ahi.mul(bhi)];
            let min = corners.iter().min().expect("four corners").clone();
            let max = corners.iter().max().expect("four corners").clone();
            (min.sub(&CanonRat::pow2_neg(j + 1)), max)
        })
    }
}

type TermFn = Arc<dyn Fn(u64) -> CutReal + Send + Sync>;
type ModulusFn = Arc<dyn Fn(u32) -> u64 + Send + Sync>;

/// A sequence `t_1, t_2, ...` with a dyadic modulus: all terms with index at least
/// `modulus(k)` lie pairwise within `2^-k`.
#[derive(Clone)]
pub struct ModulusSequence {
    terms: TermFn,
    modulus: ModulusFn,
    description: String,
}

/// Number of consecutive terms compared when spot-checking the modulus.
const MODULUS_SPAN: u64 = 4;

/// Modulus levels checked eagerly by [`cauchy_limit`].
const EAGER_LEVELS: u32 = 8;

impl ModulusSequence {
    pub fn new<T, M>(description: impl Into<String>, terms: T, modulus: M) -> ModulusSequence
    where
        T: Fn(u64) -> CutReal + Send + Sync + 'static,
        M: Fn(u32) -> u64 + Send + Sync + 'static,
    {
        ModulusSequence {
            terms: Arc::new(terms),
            modulus: Arc::new(modulus),
            description: description.into(),
        }
    }

    pub fn of_rationals<T, M>(description: impl Into<String>, terms: T, modulus: M) -> ModulusSequence
    where
        T: Fn(u64) -> CanonRat + Send + Sync + 'static,
        M: Fn(u32) -> u64 + Send + Sync + 'static,
    {
        ModulusSequence::new(description, move |n| CutReal::from_rational(terms(n)), modulus)
    }

    /// Converts a reciprocal modulus (terms beyond `g(n)` within `1/n`) to the dyadic one `k ↦ g(2^k)`.
    pub fn from_reciprocal<T, G>(description: impl Into<String>, terms: T, g: G) -> ModulusSequence
    where
        T: Fn(u64) -> CutReal + Send + Sync + 'static,
        G: Fn(u64) -> u64 + Send + Sync + 'static,
    {
        ModulusSequence::new(description, terms, move |k| g(1u64 << k.min(62)))
    }

    pub fn term(&self, n: u64) -> CutReal {
        (self.terms)(n.max(1))
    }

    pub fn modulus(&self, k: u32) -> u64 {
        (self.modulus)(k).max(1)
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Checks that the modulus is nondecreasing and that a few terms past each level agree to `2^-k`.
    pub fn validate(&self, levels: u32) -> Result<(), NumericError> {
        let mut prev = 0;
        for k in 0..=levels {
            let m = self.modulus(k);
            if m < prev {
                return Err(NumericError::InvalidSequence(format!(
                    "{}: modulus decreases at level {k} ({prev} then {m})",
                    self.description
                )));
            }
            prev = m;
            self.check_window(k, m, MODULUS_SPAN)?;
        }
        Ok(())
    }

    fn check_window(&self, k: u32, m: u64, span: u64) -> Result<(), NumericError> {
        let encl: Vec<_> = (m..m + span)
            .map(|n| self.term(n).enclose(k + 4))
            .collect::<Result<_, _>>()?;
        let bound = CanonRat::pow2_neg(k);
        for (i, (ilo, ihi)) in encl.iter().enumerate() {
            for (j, (jlo, jhi)) in encl.iter().enumerate().skip(i + 1) {
                // Strict lower bounds on |t_i - t_j|.
                if jlo.sub(ihi) >= bound || ilo.sub(jhi) >= bound {
                    return Err(NumericError::InvalidSequence(format!(
                        "{}: terms {} and {} differ by more than 2^-{k}",
                        self.description,
                        m + i as u64,
                        m + j as u64
                    )));
                }
            }
        }
        Ok(())
    }
}

struct Limit(ModulusSequence);

impl CutSource for Limit {
    fn enclose(&self, k: u32) -> Result<(CanonRat, CanonRat), NumericError> {
        let seq = &self.0;
        let n = seq.modulus(k + 2);
        seq.check_window(k + 2, n, 2)?;
        let (lo, hi) = seq.term(n).enclose(k + 2)?;
        let slack = CanonRat::pow2_neg(k + 2);
        Ok((lo.sub(&slack), hi.add(&slack)))
    }

    /// `q` is lower iff `q + 2^-j` is lower for the term at `modulus(j)`, for some `j`.
    fn locate(&self, q: &CanonRat) -> Result<CutSide, NumericError> {
        let seq = &self.0;
        for j in precisions() {
            let n = seq.modulus(j);
            let t = seq.term(n);
            let shift = CanonRat::pow2_neg(j);
            match t.locate(&q.add(&shift)) {
                Ok(CutSide::Lower) => return Ok(CutSide::Lower),
                Ok(CutSide::Upper) | Err(NumericError::PrecisionExhausted(_)) => {}
                Err(e) => return Err(e),
            }
            match t.locate(&q.sub(&shift)) {
                Ok(CutSide::Upper) => return Ok(CutSide::Upper),
                Ok(CutSide::Lower) | Err(NumericError::PrecisionExhausted(_)) => {}
                Err(e) => return Err(e),
            }
            seq.check_window(j, n, 2)?;
        }
        Err(NumericError::PrecisionExhausted(format!(
            "{q} is not separated from the limit of {} at 2^-{PRECISION_CAP}",
            seq.description
        )))
    }
}

/// Limit of a sequence with a dyadic modulus; the modulus is spot-checked up front and during refinement.
pub fn cauchy_limit(seq: &ModulusSequence) -> Result<CutReal, NumericError> {
    seq.validate(EAGER_LEVELS)?;
    CutReal::from_source(seq.description.clone(), Limit(seq.clone()))
}

pub fn real_from_rational(q: &CanonRat) -> CutReal {
    CutReal::from_rational(q.clone())
}

/// `(lo, hi)` with `lo` in the lower segment, `hi` in the upper, `hi - lo ≤ 2^-k`.
pub fn real_approx(r: &CutReal, k: u32) -> Result<(CanonRat, CanonRat), NumericError> {
    r.enclose(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealOp {
    Add,
    Neg,
    Mul,
    Abs,
}

/// `Neg` and `Abs` ignore `b`.
pub fn real_arith(op: RealOp, a: &CutReal, b: &CutReal) -> Result<CutReal, NumericError> {
    match op {
        RealOp::Add => a.add(b),
        RealOp::Neg => a.neg(),
        RealOp::Mul => a.mul(b),
        RealOp::Abs => a.abs(),
    }
}

/// Orders two reals once some enclosure up to `2^-k` separates them; two rationals compare exactly.
pub fn real_cmp(a: &CutReal, b: &CutReal, k: u32) -> Result<Ordering, NumericError> {
    if let (Some(x), Some(y)) = (a.exact(), b.exact()) {
        return Ok(x.cmp(y));
    }
    for j in precisions_upto(k) {
        let (alo, ahi) = a.enclose(j)?;
        let (blo, bhi) = b.enclose(j)?;
        if ahi <= blo {
            return Ok(Ordering::Less);
        }
        if bhi <= alo {
            return Ok(Ordering::Greater);
        }
    }
    Err(NumericError::PrecisionExhausted(format!("{a} and {b} agree to 2^-{k}")))
}

pub fn real_cmp_rat(a: &CutReal, q: &CanonRat, k: u32) -> Result<Ordering, NumericError> {
    real_cmp(a, &real_from_rational(q), k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Sup,
    Inf,
}

/// A `2^-k` enclosure of the supremum or infimum of finitely many reals.
pub fn real_extremum(members: &[CutReal], mode: Extremum, k: u32) -> Result<(CanonRat, CanonRat), NumericError> {
    let mut encl = members.iter().map(|m| m.enclose(k));
    let first = encl
        .next()
        .ok_or_else(|| NumericError::EmptyInput("extremum of no reals".into()))??;
    encl.try_fold(first, |(lo, hi), next| {
        let (nlo, nhi) = next?;
        Ok(match mode {
            Extremum::Sup => (lo.max(nlo), hi.max(nhi)),
            Extremum::Inf => (lo.min(nlo), hi.min(nhi)),
        })
    })
}

/// `sqrt2`, `e-partial` or `rational:<p>/<q>`.
pub fn builtin_real(name: &str) -> Result<CutReal, NumericError> {
    match name {
        "sqrt2" => Ok(CutReal::sqrt2()),
        "e-partial" => Ok(CutReal::e_partial()),
        _ => match name.strip_prefix("rational:") {
            Some(q) => Ok(CutReal::from_rational(q.parse()?)),
            None => Err(NumericError::Parameter(format!(
                "unknown real {name:?}; expected sqrt2, e-partial or rational:<p>/<q>"
            ))),
        },
    }
}
