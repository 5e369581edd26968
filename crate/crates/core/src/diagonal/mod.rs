//! Diagonal constructions: given an enumerated family, build an object outside it, then
//! certify finitely many of the differences.

mod gap;
mod order;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::numbering::{index_to_word, word_to_index};
use crate::numeric::{CanonRat, CutReal, CutSide, NumericError, PRECISION_CAP};
use crate::system::System;
use crate::word::Word;

pub use gap::{
    canonical_rational, canonical_rational_index, gap_sequences, missing_real, simplest_between,
    CanonicalRationals, EnumeratedOrder, GapPoint, WordOrder, SCAN_BUDGET,
};
pub use order::{missing_well_order, order_isomorphic, OrderComparator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagError {
    #[error("density violation: nothing strictly between {lo} and {hi} within {budget} probes")]
    DensityViolation { lo: String, hi: String, budget: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("family member {index} is undefined at {point}")]
    Evaluation { index: u64, point: Word },
    #[error("a constructed {constructed} cannot be checked against a family of {family}")]
    KindMismatch { constructed: FamilyKind, family: FamilyKind },
    #[error("construction bug: {0}")]
    ConstructionBug(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("not an order: {0}")]
    NotAnOrder(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Subsets,
    Reals,
    Functions,
    Orders,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Subsets => "subsets",
            FamilyKind::Reals => "reals",
            FamilyKind::Functions => "functions",
            FamilyKind::Orders => "orders",
        })
    }
}

/// A partial function on words; `None` means undefined.
pub type WordFn = Arc<dyn Fn(&Word) -> Option<Word> + Send + Sync>;

/// The function with the given finite graph.
pub fn finite_function(graph: BTreeMap<Word, Word>) -> WordFn {
    Arc::new(move |x| graph.get(x).cloned())
}

pub fn constant_function(y: Word) -> WordFn {
    Arc::new(move |_| Some(y.clone()))
}

/// A family indexed by `1, 2, ...`, either finite or lazily infinite.
#[derive(Clone)]
pub struct IndexedFamily<T> {
    at: Arc<dyn Fn(u64) -> T + Send + Sync>,
    size: Option<u64>,
    description: String,
}

impl<T: Clone + Send + Sync + 'static> IndexedFamily<T> {
    pub fn finite(description: impl Into<String>, items: Vec<T>) -> IndexedFamily<T> {
        let size = items.len() as u64;
        let items = Arc::new(items);
        IndexedFamily {
            at: Arc::new(move |i| items[(i - 1) as usize].clone()),
            size: Some(size),
            description: description.into(),
        }
    }

    pub fn lazy<F>(description: impl Into<String>, at: F) -> IndexedFamily<T>
    where
        F: Fn(u64) -> T + Send + Sync + 'static,
    {
        IndexedFamily {
            at: Arc::new(at),
            size: None,
            description: description.into(),
        }
    }
}

impl<T> IndexedFamily<T> {
    /// The member at 1-based index `i`, if in range.
    pub fn at(&self, i: u64) -> Option<T> {
        let in_range = i >= 1 && self.size.map_or(true, |n| i <= n);
        in_range.then(|| (self.at)(i))
    }

    pub fn size(&self) -> Option<u64> {
        self.size
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// All members of a finite family.
    pub fn members(&self) -> Option<Vec<T>> {
        self.size.map(|n| (1..=n).map(|i| (self.at)(i)).collect())
    }
}

impl<T> fmt::Debug for IndexedFamily<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IndexedFamily")
            .field("description", &self.description)
            .field("size", &self.size)
            .finish()
    }
}

/// A bijection between words and positive integers.
pub trait WordIndexing: Send + Sync {
    fn index(&self, w: &Word) -> Option<u64>;
    fn word(&self, i: u64) -> Option<Word>;
}

/// The length-block bijection of [`crate::numbering`].
#[derive(Debug, Clone, Copy, Default)]
pub struct CanonicalIndexing;

impl WordIndexing for CanonicalIndexing {
    fn index(&self, w: &Word) -> Option<u64> {
        word_to_index(w).ok().map(|i| i.get())
    }

    fn word(&self, i: u64) -> Option<Word> {
        index_to_word(i).ok()
    }
}

/// `b` is a member iff `b` is not a member of the family set at `b`'s own index.
pub fn diagonal_subset(family: &IndexedFamily<System>, indexing: Arc<dyn WordIndexing>) -> System {
    let family = family.clone();
    let description = format!("diagonal of {}", family.description);
    System::comprehension(description, move |b| {
        indexing
            .index(b)
            .and_then(|i| family.at(i))
            .is_some_and(|a| !a.member(b))
    })
}

/// `g(b) = y1` if the member at `b`'s index sends `b` to `y2`, else `y2`.
///
/// Undefined where that member is undefined; `y2` where `b`'s index names no member.
pub fn missing_function(
    family: &IndexedFamily<WordFn>,
    indexing: Arc<dyn WordIndexing>,
    y1: Word,
    y2: Word,
) -> Result<WordFn, DiagError> {
    if y1 == y2 {
        return Err(DiagError::Parameter(format!("the two values must differ, both are {y1}")));
    }
    let family = family.clone();
    Ok(Arc::new(move |b| match indexing.index(b).and_then(|i| family.at(i)) {
        Some(f) => f(b).map(|v| if v == y2 { y1.clone() } else { y2.clone() }),
        None => Some(y2.clone()),
    }))
}

/// An object produced by one of the constructions.
#[derive(Clone)]
pub enum Constructed {
    Subset(System),
    Real(CutReal),
    Function(WordFn),
    Order(OrderComparator),
}

impl Constructed {
    pub fn kind(&self) -> FamilyKind {
        match self {
            Constructed::Subset(_) => FamilyKind::Subsets,
            Constructed::Real(_) => FamilyKind::Reals,
            Constructed::Function(_) => FamilyKind::Functions,
            Constructed::Order(_) => FamilyKind::Orders,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Family {
    Subsets(IndexedFamily<System>),
    Reals(IndexedFamily<CutReal>),
    Functions(IndexedFamily<WordFn>),
    Orders(IndexedFamily<OrderComparator>),
}

impl Family {
    pub fn kind(&self) -> FamilyKind {
        match self {
            Family::Subsets(_) => FamilyKind::Subsets,
            Family::Reals(_) => FamilyKind::Reals,
            Family::Functions(_) => FamilyKind::Functions,
            Family::Orders(_) => FamilyKind::Orders,
        }
    }

    pub fn size(&self) -> Option<u64> {
        match self {
            Family::Subsets(f) => f.size(),
            Family::Reals(f) => f.size(),
            Family::Functions(f) => f.size(),
            Family::Orders(f) => f.size(),
        }
    }
}

/// Evidence that the constructed object differs from one family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The two disagree at this word.
    Point(Word),
    /// The rational lies in different segments of the two reals.
    Separator(CanonRat),
    /// The two orders cannot be isomorphic; carrier sizes attached.
    NonIsomorphic { constructed: usize, member: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Point(w) => write!(f, "{w}"),
            Witness::Separator(q) => write!(f, "{q}"),
            Witness::NonIsomorphic { constructed, member } => {
                write!(f, "not isomorphic ({constructed} vs {member} elements)")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffWitnessReport {
    pub checked: u64,
    pub witnesses: Vec<(u64, Witness)>,
}

/// Re-checks the difference between `constructed` and members `1..=upto` (capped at the family size).
///
/// Any member that fails to differ is a construction bug.
pub fn verify_differs(
    constructed: &Constructed,
    family: &Family,
    upto: u64,
    indexing: &dyn WordIndexing,
) -> Result<DiffWitnessReport, DiagError> {
    let upto = family.size().map_or(upto, |n| upto.min(n));
    let mut witnesses = Vec::with_capacity(upto as usize);
    let point = |i: u64| {
        indexing
            .word(i)
            .ok_or_else(|| DiagError::Unsupported(format!("index {i} names no word")))
    };
    for i in 1..=upto {
        let witness = match (constructed, family) {
            (Constructed::Subset(d), Family::Subsets(fam)) => {
                let b = point(i)?;
                let member = fam.at(i).expect("index within family");
                (d.member(&b) != member.member(&b)).then_some(Witness::Point(b))
            }
            (Constructed::Function(g), Family::Functions(fam)) => {
                let b = point(i)?;
                let f = fam.at(i).expect("index within family");
                let fb = f(&b).ok_or(DiagError::Evaluation { index: i, point: b.clone() })?;
                let gb = g(&b).ok_or_else(|| DiagError::ConstructionBug(format!("constructed function undefined at {b}")))?;
                (fb != gb).then_some(Witness::Point(b))
            }
            (Constructed::Real(x), Family::Reals(fam)) => {
                separator(x, &fam.at(i).expect("index within family"))?.map(Witness::Separator)
            }
            (Constructed::Order(t), Family::Orders(fam)) => {
                let member = fam.at(i).expect("index within family");
                (!order_isomorphic(t, &member)?).then(|| Witness::NonIsomorphic {
                    constructed: t.len().unwrap_or(0),
                    member: member.len().unwrap_or(0),
                })
            }
            _ => {
                return Err(DiagError::KindMismatch {
                    constructed: constructed.kind(),
                    family: family.kind(),
                })
            }
        };
        match witness {
            Some(w) => witnesses.push((i, w)),
            None => return Err(DiagError::ConstructionBug(format!("no difference from family member {i}"))),
        }
    }
    Ok(DiffWitnessReport { checked: upto, witnesses })
}

/// A rational placed on different sides by the two cuts, found from disjoint enclosures.
fn separator(x: &CutReal, y: &CutReal) -> Result<Option<CanonRat>, DiagError> {
    let mut k = 1;
    loop {
        let (xlo, xhi) = x.enclose(k)?;
        let (ylo, yhi) = y.enclose(k)?;
        // x ≤ xhi ≤ ylo < y, so ylo is upper for x and lower for y.
        let candidate = if xhi <= ylo {
            Some(ylo)
        } else if yhi <= xlo {
            Some(xlo)
        } else {
            None
        };
        if let Some(q) = candidate {
            let sides = (x.locate(&q)?, y.locate(&q)?);
            return Ok(matches!(sides, (CutSide::Upper, CutSide::Lower) | (CutSide::Lower, CutSide::Upper)).then_some(q));
        }
        if k >= PRECISION_CAP {
            return Ok(None);
        }
        k = (k * 2).min(PRECISION_CAP);
    }
}
