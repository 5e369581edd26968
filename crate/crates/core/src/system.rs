//! Systems: possibly infinite collections of words given by a total membership predicate.
//!
//! A system never stores its extent unless it is explicitly finite. Enumeration, when
//! available, always follows the canonical length-block order of [`crate::numbering`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::numbering::{self, canonical_cmp, CanonicalWords};
use crate::word::{Bit, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("seed system {0:?} is neither finite nor enumerable")]
    UnsupportedSeed(String),
    #[error("word {word} is not a member of {system:?}")]
    NotMember { word: Word, system: String },
}

pub type Predicate = Arc<dyn Fn(&Word) -> bool + Send + Sync>;

/// Produces a fresh cursor over the members, in canonical order, each exactly once.
pub type EnumeratorFactory = Arc<dyn Fn() -> Box<dyn Iterator<Item = Word> + Send> + Send + Sync>;

#[derive(Clone)]
pub struct System {
    contains: Predicate,
    enumerator: Option<EnumeratorFactory>,
    extent: Option<Arc<BTreeSet<Word>>>,
    description: String,
}

impl fmt::Debug for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("System")
            .field("description", &self.description)
            .field("finite", &self.extent.as_ref().map(|e| e.len()))
            .field("enumerable", &self.enumerator.is_some())
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersection,
    Difference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Closed under appending seed members.
    Right,
    /// Closed under prepending seed members.
    Left,
}

/// Outcome of comparing two systems on an initial segment of the canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedEqualityReport {
    pub depth: u64,
    pub equal_up_to_depth: bool,
    pub witness: Option<Word>,
}

impl System {
    /// The system of all words satisfying `pred`. `pred` must be total and deterministic.
    pub fn comprehension<F>(description: impl Into<String>, pred: F) -> System
    where
        F: Fn(&Word) -> bool + Send + Sync + 'static,
    {
        System {
            contains: Arc::new(pred),
            enumerator: None,
            extent: None,
            description: description.into(),
        }
    }

    /// A finite system with an explicit extent.
    pub fn finite<I>(words: I) -> System
    where
        I: IntoIterator<Item = Word>,
    {
        let set: BTreeSet<Word> = words.into_iter().collect();
        let description = if set.len() <= 8 {
            let items: Vec<String> = set.iter().map(Word::to_string).collect();
            format!("{{{}}}", items.join(","))
        } else {
            format!("finite system of {} words", set.len())
        };
        System::finite_named(description, set)
    }

    fn finite_named(description: String, set: BTreeSet<Word>) -> System {
        let extent = Arc::new(set);
        let mut ordered: Vec<Word> = extent.iter().cloned().collect();
        ordered.sort_by(canonical_cmp);
        let ordered = Arc::new(ordered);
        let lookup = Arc::clone(&extent);
        System {
            contains: Arc::new(move |w| lookup.contains(w)),
            enumerator: Some(Arc::new(move || {
                let ordered = Arc::clone(&ordered);
                Box::new((0..ordered.len()).map(move |i| ordered[i].clone()))
            })),
            extent: Some(extent),
            description,
        }
    }

    pub fn empty() -> System {
        System::finite_named("empty".to_string(), BTreeSet::new())
    }

    pub fn all_words() -> System {
        System::comprehension("all words", |_| true)
            .with_enumerator(|| Box::new(CanonicalWords::new()))
    }

    /// Counting numbers over `1`: the words made of 1-bits only.
    pub fn naturals() -> System {
        System::comprehension("natural numbers", Word::is_unary).with_enumerator(|| {
            Box::new((1u64..).map(|n| Word::run(Bit::One, crate::word::Nat::new(n).expect("n >= 1"))))
        })
    }

    /// Attaches a canonical-order enumerator. The caller guarantees it lists exactly the members.
    pub fn with_enumerator<F>(mut self, factory: F) -> System
    where
        F: Fn() -> Box<dyn Iterator<Item = Word> + Send> + Send + Sync + 'static,
    {
        self.enumerator = Some(Arc::new(factory));
        self
    }

    /// Attaches an enumerator that scans all words in canonical order and keeps the members.
    /// Only fair when the system is infinite; `next` does not return past the last member otherwise.
    pub fn with_scanning_enumerator(self) -> System {
        let pred = Arc::clone(&self.contains);
        self.with_enumerator(move || {
            let pred = Arc::clone(&pred);
            Box::new(CanonicalWords::new().filter(move |w| pred(w)))
        })
    }

    pub fn describe(mut self, description: impl Into<String>) -> System {
        self.description = description.into();
        self
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn member(&self, w: &Word) -> bool {
        (self.contains)(w)
    }

    pub fn predicate(&self) -> Predicate {
        Arc::clone(&self.contains)
    }

    pub fn is_finite(&self) -> bool {
        self.extent.is_some()
    }

    pub fn is_enumerable(&self) -> bool {
        self.enumerator.is_some()
    }

    /// The explicit extent of a finite system.
    pub fn extent(&self) -> Option<&BTreeSet<Word>> {
        self.extent.as_deref()
    }

    /// A fresh enumeration cursor, if the system has one.
    pub fn enumerate(&self) -> Option<Box<dyn Iterator<Item = Word> + Send>> {
        self.enumerator.as_ref().map(|f| f())
    }

    /// Members among the words of canonical index `1..=depth`, in canonical order.
    pub fn members_upto(&self, depth: u64) -> Vec<Word> {
        CanonicalWords::new()
            .take(depth as usize)
            .filter(|w| self.member(w))
            .collect()
    }

    /// Pointwise boolean combination.
    ///
    /// Unions of two enumerable systems are enumerable (ordered merge). Intersections and
    /// differences get an enumerator only when `filter_bound` is given: it then lists the
    /// members of `a`'s enumeration up to that canonical index that pass the filter.
    pub fn combine(op: SetOp, a: &System, b: &System, filter_bound: Option<u64>) -> System {
        let pa = Arc::clone(&a.contains);
        let pb = Arc::clone(&b.contains);
        let (symbol, pred): (&str, Predicate) = match op {
            SetOp::Union => ("∪", Arc::new(move |w: &Word| pa(w) || pb(w))),
            SetOp::Intersection => ("∩", Arc::new(move |w: &Word| pa(w) && pb(w))),
            SetOp::Difference => ("∖", Arc::new(move |w: &Word| pa(w) && !pb(w))),
        };
        let description = format!("({} {} {})", a.description, symbol, b.description);

        if let (Some(ea), Some(eb)) = (&a.extent, &b.extent) {
            let set: BTreeSet<Word> = match op {
                SetOp::Union => ea.union(eb).cloned().collect(),
                SetOp::Intersection => ea.intersection(eb).cloned().collect(),
                SetOp::Difference => ea.difference(eb).cloned().collect(),
            };
            return System::finite_named(description, set);
        }

        let enumerator: Option<EnumeratorFactory> = match op {
            SetOp::Union => match (&a.enumerator, &b.enumerator) {
                (Some(ea), Some(eb)) => {
                    let (ea, eb) = (Arc::clone(ea), Arc::clone(eb));
                    Some(Arc::new(move || Box::new(MergeCanonical::new(ea(), eb()))))
                }
                _ => None,
            },
            SetOp::Intersection | SetOp::Difference => match (&a.enumerator, filter_bound) {
                (Some(ea), Some(bound)) => {
                    let ea = Arc::clone(ea);
                    let filter = Arc::clone(&pred);
                    Some(Arc::new(move || {
                        let filter = Arc::clone(&filter);
                        let last = numbering::index_to_word(bound.max(1)).ok();
                        Box::new(
                            ea().take_while(move |w| match &last {
                                Some(last) => canonical_cmp(w, last).is_le(),
                                None => true,
                            })
                            .filter(move |w| filter(w)),
                        )
                    }))
                }
                _ => None,
            },
        };

        System {
            contains: pred,
            enumerator,
            extent: None,
            description,
        }
    }

    pub fn union(a: &System, b: &System) -> System {
        System::combine(SetOp::Union, a, b, None)
    }

    pub fn intersection(a: &System, b: &System) -> System {
        System::combine(SetOp::Intersection, a, b, None)
    }

    pub fn difference(a: &System, b: &System) -> System {
        System::combine(SetOp::Difference, a, b, None)
    }

    /// The smallest system containing `seed` and closed under appending (`Right`) or
    /// prepending (`Left`) seed members.
    ///
    /// Membership of `w` is decided by factorizing `w` over the seed members no longer than `w`,
    /// scanning left-to-right for `Right` and right-to-left for `Left`.
    pub fn generated_by(seed: &System, side: Side) -> Result<System, SystemError> {
        let source = SeedSource::from_system(seed)?;
        if source.is_empty() {
            return Ok(System::empty().describe(format!("generated by {}", seed.description)));
        }
        let description = match side {
            Side::Right => format!("right-generated by {}", seed.description),
            Side::Left => format!("left-generated by {}", seed.description),
        };
        Ok(System::comprehension(description, move |w| {
            let members = source.members_up_to_len(w.len());
            match side {
                Side::Right => factor_forward(w, &members),
                Side::Left => factor_backward(w, &members),
            }
        })
        .with_scanning_enumerator())
    }

    /// Words that are a prefix of some member of `generated_by(seed, Right)`.
    ///
    /// For infinite seeds the trailing partial factor is matched against seed members of
    /// length at most `len(w) + PREFIX_LOOKAHEAD`.
    pub fn prefix_generated(seed: &System) -> Result<System, SystemError> {
        let source = SeedSource::from_system(seed)?;
        if source.is_empty() {
            return Ok(System::empty().describe(format!("prefix-generated by {}", seed.description)));
        }
        let description = format!("prefix-generated by {}", seed.description);
        Ok(System::comprehension(description, move |w| {
            let n = w.len();
            let members = source.members_up_to_len(n + PREFIX_LOOKAHEAD);
            let reach = forward_reach(w, &members);
            let bits = w.bits();
            (0..n).any(|i| {
                reach[i]
                    && members
                        .iter()
                        .any(|m| m.len() >= n - i && m.bits()[..n - i] == bits[i..])
            }) || reach[n]
        })
        .with_scanning_enumerator())
    }

    /// The shortest prefix of `x` that belongs to `self`.
    pub fn minimal_prefix(&self, x: &Word) -> Result<Word, SystemError> {
        if !self.member(x) {
            return Err(SystemError::NotMember {
                word: x.clone(),
                system: self.description.clone(),
            });
        }
        Ok(x.prefixes()
            .find(|p| self.member(p))
            .expect("x itself is a member"))
    }

    /// Compares membership on the words of canonical index `1..=depth`.
    pub fn bounded_equal(a: &System, b: &System, depth: u64) -> BoundedEqualityReport {
        let witness = CanonicalWords::new()
            .take(depth as usize)
            .find(|w| a.member(w) != b.member(w));
        BoundedEqualityReport {
            depth,
            equal_up_to_depth: witness.is_none(),
            witness,
        }
    }
}

/// Extra bits of seed-member length consulted by [`System::prefix_generated`] for infinite seeds.
pub const PREFIX_LOOKAHEAD: usize = 16;

/// Canonical-order merge of two canonical-order streams, dropping duplicates.
struct MergeCanonical {
    a: std::iter::Peekable<Box<dyn Iterator<Item = Word> + Send>>,
    b: std::iter::Peekable<Box<dyn Iterator<Item = Word> + Send>>,
}

impl MergeCanonical {
    fn new(a: Box<dyn Iterator<Item = Word> + Send>, b: Box<dyn Iterator<Item = Word> + Send>) -> Self {
        MergeCanonical {
            a: a.peekable(),
            b: b.peekable(),
        }
    }
}

impl Iterator for MergeCanonical {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        match (self.a.peek(), self.b.peek()) {
            (None, None) => None,
            (Some(_), None) => self.a.next(),
            (None, Some(_)) => self.b.next(),
            (Some(x), Some(y)) => match canonical_cmp(x, y) {
                std::cmp::Ordering::Less => self.a.next(),
                std::cmp::Ordering::Greater => self.b.next(),
                std::cmp::Ordering::Equal => {
                    self.b.next();
                    self.a.next()
                }
            },
        }
    }
}

/// Seed members, either an explicit list or a canonical-order enumerator.
#[derive(Clone)]
enum SeedSource {
    Finite(Arc<Vec<Word>>),
    Enumerated(EnumeratorFactory),
}

impl SeedSource {
    fn from_system(seed: &System) -> Result<SeedSource, SystemError> {
        if let Some(extent) = &seed.extent {
            Ok(SeedSource::Finite(Arc::new(extent.iter().cloned().collect())))
        } else if let Some(e) = &seed.enumerator {
            Ok(SeedSource::Enumerated(Arc::clone(e)))
        } else {
            Err(SystemError::UnsupportedSeed(seed.description.clone()))
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            SeedSource::Finite(v) => v.is_empty(),
            SeedSource::Enumerated(e) => e().next().is_none(),
        }
    }

    fn members_up_to_len(&self, n: usize) -> Vec<Word> {
        match self {
            SeedSource::Finite(v) => v.iter().filter(|m| m.len() <= n).cloned().collect(),
            SeedSource::Enumerated(e) => e().take_while(|m| m.len() <= n).collect(),
        }
    }
}

/// `reach[i]` is true iff `w[..i]` is empty or a concatenation of members.
fn forward_reach(w: &Word, members: &[Word]) -> Vec<bool> {
    let bits = w.bits();
    let n = bits.len();
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for i in 0..n {
        if !reach[i] {
            continue;
        }
        for m in members {
            let end = i + m.len();
            if end <= n && bits[i..end] == *m.bits() {
                reach[end] = true;
            }
        }
    }
    reach
}

fn factor_forward(w: &Word, members: &[Word]) -> bool {
    forward_reach(w, members)[w.len()]
}

fn factor_backward(w: &Word, members: &[Word]) -> bool {
    let bits = w.bits();
    let n = bits.len();
    // reach[j]: w[j..] is empty or a concatenation of members.
    let mut reach = vec![false; n + 1];
    reach[n] = true;
    for j in (1..=n).rev() {
        if !reach[j] {
            continue;
        }
        for m in members {
            if m.len() <= j && bits[j - m.len()..j] == *m.bits() {
                reach[j - m.len()] = true;
            }
        }
    }
    reach[0]
}
