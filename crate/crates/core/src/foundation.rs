//! Sets as words: a foundation `(e0, S0)` fixes a delimiter `e0` and an expressive alphabet `S0`.
//! A set is a representation word `rep` over `S0` together with a context system `S`;
//! `x` is an element iff `x·e0·rep ∈ S`.
//!
//! Pairs are two-element sets `{x1, x1·x2}`; relations and functions are sets of pair
//! representations living in the same context. Every judgment that would need an infinite
//! scan takes a probe limit and reports whether its scan was exhaustive.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::code::{are_independent, CodeError, FiniteCode};
use crate::numbering::{canonical_cmp, CanonicalWords};
use crate::system::System;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoundationError {
    #[error("foundation alphabet {0} is not expressive")]
    NotExpressive(String),
    #[error("delimiter {e0} is not independent of {s0}")]
    NotIndependent { e0: Word, s0: String },
    #[error("representation {rep} is not a word over {s0}")]
    Representation { rep: Word, s0: String },
    #[error("not a pair: {0}")]
    NotAPair(String),
    #[error("not a function: {witness} maps to both {first} and {second}")]
    NotAFunction { witness: Word, first: Word, second: Word },
    #[error("sets live over different foundations")]
    Mismatch,
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// A delimiter word and an expressive alphabet independent of it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Foundation {
    e0: Word,
    s0: FiniteCode,
}

impl Foundation {
    pub fn new(e0: Word, s0: FiniteCode) -> Result<Foundation, FoundationError> {
        if !s0.analyze().expressive {
            return Err(FoundationError::NotExpressive(s0.to_string()));
        }
        let delimiter = FiniteCode::from_set([e0.clone()].into_iter().collect());
        if !are_independent(&delimiter, &s0)? {
            return Err(FoundationError::NotIndependent {
                e0,
                s0: s0.to_string(),
            });
        }
        Ok(Foundation { e0, s0 })
    }

    pub fn e0(&self) -> &Word {
        &self.e0
    }

    pub fn s0(&self) -> &FiniteCode {
        &self.s0
    }

    pub fn check_rep(&self, rep: &Word) -> Result<(), FoundationError> {
        if self.s0.is_word_over(rep)? {
            Ok(())
        } else {
            Err(FoundationError::Representation {
                rep: rep.clone(),
                s0: self.s0.to_string(),
            })
        }
    }

    /// The `n`-th word over `S0` (n ≥ 1): token sequences in length-then-lexicographic order,
    /// via bijective base-|S0| numeration.
    pub fn rep_word(&self, n: u64) -> Word {
        assert!(n >= 1, "representation numbering starts at 1");
        let tokens: Vec<&Word> = self.s0.words().iter().collect();
        let k = tokens.len() as u64;
        let mut digits = Vec::new();
        let mut m = n;
        while m > 0 {
            let d = (m - 1) % k;
            digits.push(d as usize);
            m = (m - 1) / k;
        }
        digits.reverse();
        crate::word::concat_all(digits.into_iter().map(|d| tokens[d])).expect("at least one token")
    }

    /// `x·e0·rep`: the context word asserting that `x` belongs to the set named `rep`.
    pub fn membership_word(&self, x: &Word, rep: &Word) -> Word {
        x.concat(&self.e0).concat(rep)
    }

    /// Recovers `x` from `x·e0·rep`.
    pub fn split_membership(&self, w: &Word, rep: &Word) -> Option<Word> {
        let tail = self.e0.concat(rep);
        tail.strip_suffix_of(w)
    }
}

/// A set over a foundation.
#[derive(Debug, Clone)]
pub struct EncodedSet {
    rep: Word,
    context: System,
    foundation: Arc<Foundation>,
}

/// Members found by a bounded scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberScan {
    pub members: Vec<Word>,
    /// True when the members are known to be all of them.
    pub exhaustive: bool,
}

impl EncodedSet {
    pub fn new(rep: Word, context: System, foundation: Arc<Foundation>) -> Result<EncodedSet, FoundationError> {
        foundation.check_rep(&rep)?;
        Ok(EncodedSet {
            rep,
            context,
            foundation,
        })
    }

    pub fn rep(&self) -> &Word {
        &self.rep
    }

    pub fn context(&self) -> &System {
        &self.context
    }

    pub fn foundation(&self) -> &Arc<Foundation> {
        &self.foundation
    }

    /// The set named by another representation word in the same context.
    pub fn sibling(&self, rep: Word) -> Result<EncodedSet, FoundationError> {
        EncodedSet::new(rep, self.context.clone(), Arc::clone(&self.foundation))
    }

    /// Lists members. Finite contexts are read exactly; otherwise the first `probe_limit`
    /// canonical words are tested.
    pub fn members(&self, probe_limit: u64) -> MemberScan {
        if let Some(extent) = self.context.extent() {
            let mut members: Vec<Word> = extent
                .iter()
                .filter_map(|w| self.foundation.split_membership(w, &self.rep))
                .collect();
            members.sort_by(canonical_cmp);
            return MemberScan {
                members,
                exhaustive: true,
            };
        }
        MemberScan {
            members: CanonicalWords::new()
                .take(probe_limit as usize)
                .filter(|x| element_of(x, self))
                .collect(),
            exhaustive: false,
        }
    }

    fn same_foundation(&self, other: &EncodedSet) -> Result<(), FoundationError> {
        if self.foundation == other.foundation {
            Ok(())
        } else {
            Err(FoundationError::Mismatch)
        }
    }
}

/// `x·e0·rep ∈ context`.
pub fn element_of(x: &Word, s: &EncodedSet) -> bool {
    s.context.member(&s.foundation.membership_word(x, &s.rep))
}

/// Represents `target` as the set named `rep`: the context holds exactly the words `x·e0·rep`
/// with `x ∈ target`. Finite targets give finite contexts.
pub fn internalize(target: &System, f: &Arc<Foundation>, rep: Word) -> Result<EncodedSet, FoundationError> {
    f.check_rep(&rep)?;
    let context = match target.extent() {
        Some(extent) => System::finite(extent.iter().map(|x| f.membership_word(x, &rep))),
        None => {
            let target = target.clone();
            let foundation = Arc::clone(f);
            let r = rep.clone();
            System::comprehension(format!("internalized {}", target.description()), move |w| {
                foundation
                    .split_membership(w, &r)
                    .is_some_and(|x| target.member(&x))
            })
        }
    };
    EncodedSet::new(rep, context, Arc::clone(f))
}

/// Accumulates several finite sets into one finite context.
#[derive(Debug, Clone)]
pub struct ContextBuilder {
    foundation: Arc<Foundation>,
    words: BTreeSet<Word>,
}

impl ContextBuilder {
    pub fn new(foundation: Arc<Foundation>) -> ContextBuilder {
        ContextBuilder {
            foundation,
            words: BTreeSet::new(),
        }
    }

    pub fn add_set<'a, I>(&mut self, rep: &Word, members: I) -> Result<&mut Self, FoundationError>
    where
        I: IntoIterator<Item = &'a Word>,
    {
        self.foundation.check_rep(rep)?;
        for x in members {
            self.words.insert(self.foundation.membership_word(x, rep));
        }
        Ok(self)
    }

    /// Adds the pair set `{x1, x1·x2}` under `rep`.
    pub fn add_pair(&mut self, rep: &Word, x1: &Word, x2: &Word) -> Result<&mut Self, FoundationError> {
        let members = [x1.clone(), x1.concat(x2)];
        self.add_set(rep, members.iter())
    }

    pub fn build(&self) -> System {
        System::finite(self.words.iter().cloned())
    }

    pub fn set(&self, rep: Word) -> Result<EncodedSet, FoundationError> {
        EncodedSet::new(rep, self.build(), Arc::clone(&self.foundation))
    }
}

/// The pair `(first, second)` together with its set `{first, first·second}`.
#[derive(Debug, Clone)]
pub struct EncodedPair {
    pub first: Word,
    pub second: Word,
    pub as_set: EncodedSet,
}

pub fn encode_pair(x1: &Word, x2: &Word, f: &Arc<Foundation>, rep: Word) -> Result<EncodedPair, FoundationError> {
    let mut builder = ContextBuilder::new(Arc::clone(f));
    builder.add_pair(&rep, x1, x2)?;
    Ok(EncodedPair {
        first: x1.clone(),
        second: x2.clone(),
        as_set: builder.set(rep)?,
    })
}

/// Probe limit used by [`decode_pair`] for sets whose context is not finite.
pub const PAIR_PROBE_LIMIT: u64 = 1 << 12;

pub fn decode_pair(s: &EncodedSet) -> Result<(Word, Word), FoundationError> {
    decode_pair_within(s, PAIR_PROBE_LIMIT)
}

/// Reads `s` as `{x1, x1·x2}` and returns `(x1, x2)`.
pub fn decode_pair_within(s: &EncodedSet, probe_limit: u64) -> Result<(Word, Word), FoundationError> {
    let scan = s.members(probe_limit);
    match scan.members.as_slice() {
        [a, b] => {
            let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
            short
                .strip_prefix_of(long)
                .map(|z| (short.clone(), z))
                .ok_or_else(|| FoundationError::NotAPair(format!("neither of {short}, {long} is a prefix of the other")))
        }
        other => Err(FoundationError::NotAPair(format!(
            "set {} has {} members{}",
            s.rep,
            other.len(),
            if scan.exhaustive { "" } else { " within the probe limit" }
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationViolation {
    /// A member of the relation is not a word over `S0`, so it names no set.
    NotARepresentation { member: Word },
    NotAPair { member: Word, reason: String },
    FirstOutsideDomain { member: Word, first: Word },
    SecondOutsideCodomain { member: Word, second: Word },
    /// Two distinct members encode the same pair.
    DuplicatePair { members: (Word, Word), pair: (Word, Word) },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub checked: usize,
    pub exhaustive: bool,
    pub violations: Vec<RelationViolation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Decodes every probed member of `c` as a pair; each member's pair set lives in `c`'s context.
fn decode_members(c: &EncodedSet, probe_limit: u64) -> (MemberScan, Vec<(Word, Result<(Word, Word), RelationViolation>)>) {
    let scan = c.members(probe_limit);
    let decoded = scan
        .members
        .iter()
        .map(|m| {
            let result = match c.sibling(m.clone()) {
                Err(_) => Err(RelationViolation::NotARepresentation { member: m.clone() }),
                Ok(set) => decode_pair_within(&set, probe_limit).map_err(|e| RelationViolation::NotAPair {
                    member: m.clone(),
                    reason: e.to_string(),
                }),
            };
            (m.clone(), result)
        })
        .collect();
    (scan, decoded)
}

/// Checks that `c` is a relation from `a` to `b` on its probed members.
pub fn relation_check(
    a: &EncodedSet,
    b: &EncodedSet,
    c: &EncodedSet,
    probe_limit: u64,
) -> Result<RelationReport, FoundationError> {
    a.same_foundation(c)?;
    b.same_foundation(c)?;
    let (scan, decoded) = decode_members(c, probe_limit);
    let mut violations = Vec::new();
    let mut seen: BTreeMap<(Word, Word), Word> = BTreeMap::new();
    for (member, result) in decoded {
        match result {
            Err(v) => violations.push(v),
            Ok((x, y)) => {
                if !element_of(&x, a) {
                    violations.push(RelationViolation::FirstOutsideDomain {
                        member: member.clone(),
                        first: x.clone(),
                    });
                }
                if !element_of(&y, b) {
                    violations.push(RelationViolation::SecondOutsideCodomain {
                        member: member.clone(),
                        second: y.clone(),
                    });
                }
                if let Some(previous) = seen.insert((x.clone(), y.clone()), member.clone()) {
                    violations.push(RelationViolation::DuplicatePair {
                        members: (previous, member),
                        pair: (x, y),
                    });
                }
            }
        }
    }
    Ok(RelationReport {
        checked: scan.members.len(),
        exhaustive: scan.exhaustive,
        violations,
    })
}

/// The decoded graph of a function-like set, restricted to its probed members.
#[derive(Debug, Clone)]
pub struct FunctionView {
    graph: BTreeMap<Word, BTreeSet<Word>>,
    exhaustive: bool,
    probe_limit: u64,
}

pub fn function_ops(fset: &EncodedSet, probe_limit: u64) -> Result<FunctionView, FoundationError> {
    let (scan, decoded) = decode_members(fset, probe_limit);
    let mut graph: BTreeMap<Word, BTreeSet<Word>> = BTreeMap::new();
    for (_, result) in decoded {
        match result {
            Ok((x, y)) => {
                graph.entry(x).or_default().insert(y);
            }
            Err(RelationViolation::NotARepresentation { member }) => {
                return Err(FoundationError::NotAPair(format!("{member} does not name a set")))
            }
            Err(RelationViolation::NotAPair { reason, .. }) => return Err(FoundationError::NotAPair(reason)),
            Err(_) => unreachable!("decode_members only reports decoding failures"),
        }
    }
    Ok(FunctionView {
        graph,
        exhaustive: scan.exhaustive,
        probe_limit,
    })
}

impl FunctionView {
    pub fn exhaustive(&self) -> bool {
        self.exhaustive
    }

    /// The first argument with two distinct values, if any.
    pub fn conflict(&self) -> Option<FoundationError> {
        self.graph.iter().find(|(_, ys)| ys.len() > 1).map(|(x, ys)| {
            let mut it = ys.iter();
            FoundationError::NotAFunction {
                witness: x.clone(),
                first: it.next().cloned().expect("two values"),
                second: it.next().cloned().expect("two values"),
            }
        })
    }

    pub fn is_function(&self) -> bool {
        self.conflict().is_none()
    }

    /// The value at `x`, absent when no probed pair starts with `x`.
    pub fn apply(&self, x: &Word) -> Result<Option<Word>, FoundationError> {
        match self.graph.get(x) {
            None => Ok(None),
            Some(ys) if ys.len() == 1 => Ok(ys.iter().next().cloned()),
            Some(ys) => {
                let mut it = ys.iter();
                Err(FoundationError::NotAFunction {
                    witness: x.clone(),
                    first: it.next().cloned().expect("two values"),
                    second: it.next().cloned().expect("two values"),
                })
            }
        }
    }

    pub fn domain_members(&self) -> BTreeSet<Word> {
        self.graph.keys().cloned().collect()
    }

    pub fn image_members(&self) -> BTreeSet<Word> {
        self.graph.values().flatten().cloned().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.is_function() && self.image_members().len() == self.graph.len()
    }

    /// Every probed member of `b` is a value.
    pub fn is_surjective_onto(&self, b: &EncodedSet) -> bool {
        let image = self.image_members();
        b.members(self.probe_limit).members.iter().all(|y| image.contains(y))
    }

    pub fn is_bijective_onto(&self, b: &EncodedSet) -> bool {
        self.is_injective() && self.is_surjective_onto(b)
    }
}

/// Number of members when it can be known exactly.
pub fn cardinality(s: &EncodedSet, probe_limit: u64) -> Option<u64> {
    let scan = s.members(probe_limit);
    scan.exhaustive.then_some(scan.members.len() as u64)
}

/// Every probed member of `a` is a member of `b`.
pub fn subset_upto(a: &EncodedSet, b: &EncodedSet, probe_limit: u64) -> bool {
    a.members(probe_limit).members.iter().all(|x| element_of(x, b))
}

pub fn equal_upto(a: &EncodedSet, b: &EncodedSet, probe_limit: u64) -> bool {
    subset_upto(a, b, probe_limit) && subset_upto(b, a, probe_limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn code(ws: &[&str]) -> FiniteCode {
        FiniteCode::new(ws.iter().map(|s| w(s))).unwrap()
    }

    fn standard() -> Arc<Foundation> {
        Arc::new(Foundation::new(w("00"), code(&["01", "10"])).unwrap())
    }

    #[test]
    fn make_foundation_examples() {
        assert!(Foundation::new(w("00"), code(&["01", "10"])).is_ok());
        assert!(matches!(
            Foundation::new(w("01"), code(&["01", "10"])),
            Err(FoundationError::NotIndependent { .. })
        ));
        assert!(matches!(
            Foundation::new(w("00"), code(&["01"])),
            Err(FoundationError::NotExpressive(_))
        ));
        assert!(matches!(
            Foundation::new(w("0"), code(&["01", "10"])),
            Err(FoundationError::NotIndependent { .. })
        ));
    }

    #[test]
    fn internalize_examples() {
        let f = standard();
        let atoms = System::finite(vec![w("0"), w("1")]);
        let s = internalize(&atoms, &f, w("10")).unwrap();
        assert!(s.context().member(&w("00010")));
        assert!(s.context().member(&w("10010")));
        assert_eq!(s.members(100).members, vec![w("0"), w("1")]);
        for x in crate::numbering::CanonicalWords::new().take(200) {
            assert_eq!(element_of(&x, &s), atoms.member(&x));
        }

        let empty = internalize(&System::empty(), &f, w("01")).unwrap();
        assert_eq!(cardinality(&empty, 10), Some(0));

        let nat = internalize(&System::naturals(), &f, w("1001")).unwrap();
        assert!(element_of(&w("11"), &nat));
        assert!(!element_of(&w("10"), &nat));
        assert_eq!(cardinality(&nat, 100), None);

        assert!(matches!(
            internalize(&atoms, &f, w("11")),
            Err(FoundationError::Representation { .. })
        ));
    }

    #[test]
    fn element_of_worked_example() {
        let f = standard();
        let ctx = System::finite(vec![w("00010")]);
        let s = EncodedSet::new(w("10"), ctx, Arc::clone(&f)).unwrap();
        assert!(element_of(&w("0"), &s));
        assert!(!element_of(&w("1"), &s));
        let empty = EncodedSet::new(w("10"), System::empty(), f).unwrap();
        assert!(!element_of(&w("0"), &empty));
    }

    #[test]
    fn pair_examples() {
        let f = standard();
        let p = encode_pair(&w("0"), &w("1"), &f, w("01")).unwrap();
        assert_eq!(p.as_set.members(10).members, vec![w("0"), w("01")]);
        assert_eq!(decode_pair(&p.as_set).unwrap(), (w("0"), w("1")));

        let mut b = ContextBuilder::new(Arc::clone(&f));
        b.add_set(&w("01"), [w("01"), w("10")].iter()).unwrap();
        b.add_set(&w("10"), [w("0")].iter()).unwrap();
        assert!(matches!(decode_pair(&b.set(w("01")).unwrap()), Err(FoundationError::NotAPair(_))));
        assert!(matches!(decode_pair(&b.set(w("10")).unwrap()), Err(FoundationError::NotAPair(_))));
    }

    #[test]
    fn rep_words_are_over_s0_and_distinct() {
        let f = standard();
        let reps: Vec<Word> = (1..=30).map(|n| f.rep_word(n)).collect();
        assert_eq!(reps[0], w("01"));
        assert_eq!(reps[1], w("10"));
        assert_eq!(reps[2], w("0101"));
        let distinct: BTreeSet<_> = reps.iter().collect();
        assert_eq!(distinct.len(), 30);
        for r in &reps {
            f.check_rep(r).unwrap();
        }
    }

    /// Context with domain `{0,1}` under rep #1, codomain under #2, and a relation under #3
    /// whose pairs use reps #4.. .
    fn relation_fixture(pairs: &[(&str, &str)]) -> (EncodedSet, EncodedSet, EncodedSet) {
        let f = standard();
        let mut b = ContextBuilder::new(Arc::clone(&f));
        let dom = [w("0"), w("1")];
        b.add_set(&f.rep_word(1), dom.iter()).unwrap();
        b.add_set(&f.rep_word(2), dom.iter()).unwrap();
        let pair_reps: Vec<Word> = (0..pairs.len()).map(|i| f.rep_word(4 + i as u64)).collect();
        for ((x, y), rep) in pairs.iter().zip(&pair_reps) {
            b.add_pair(rep, &w(x), &w(y)).unwrap();
        }
        b.add_set(&f.rep_word(3), pair_reps.iter()).unwrap();
        (
            b.set(f.rep_word(1)).unwrap(),
            b.set(f.rep_word(2)).unwrap(),
            b.set(f.rep_word(3)).unwrap(),
        )
    }

    #[test]
    fn relation_check_examples() {
        let (a, b, c) = relation_fixture(&[("0", "1"), ("1", "1")]);
        let report = relation_check(&a, &b, &c, 1000).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.checked, 2);

        let (a, b, c) = relation_fixture(&[("0", "1"), ("0", "1")]);
        let report = relation_check(&a, &b, &c, 1000).unwrap();
        assert!(matches!(report.violations.as_slice(), [RelationViolation::DuplicatePair { .. }]));

        let (a, b, c) = relation_fixture(&[("0", "11")]);
        let report = relation_check(&a, &b, &c, 1000).unwrap();
        assert!(matches!(
            report.violations.as_slice(),
            [RelationViolation::SecondOutsideCodomain { .. }]
        ));
    }

    #[test]
    fn relation_with_non_pair_member() {
        let f = standard();
        let mut b = ContextBuilder::new(Arc::clone(&f));
        let dom = [w("0"), w("1")];
        b.add_set(&f.rep_word(1), dom.iter()).unwrap();
        b.add_set(&f.rep_word(4), [w("0"), w("1"), w("00")].iter()).unwrap();
        b.add_set(&f.rep_word(3), [f.rep_word(4), w("11")].iter()).unwrap();
        let a = b.set(f.rep_word(1)).unwrap();
        let c = b.set(f.rep_word(3)).unwrap();
        let report = relation_check(&a, &a, &c, 1000).unwrap();
        assert!(!report.passed());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, RelationViolation::NotAPair { member, .. } if *member == f.rep_word(4))));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, RelationViolation::NotARepresentation { member } if *member == w("11"))));
    }

    #[test]
    fn function_examples() {
        let (a, _, c) = relation_fixture(&[("0", "1"), ("1", "0")]);
        let view = function_ops(&c, 1000).unwrap();
        assert!(view.is_function());
        assert_eq!(view.apply(&w("0")).unwrap(), Some(w("1")));
        assert_eq!(view.apply(&w("11")).unwrap(), None);
        assert!(view.is_bijective_onto(&a));

        let (_, _, c) = relation_fixture(&[("0", "1"), ("0", "0")]);
        let view = function_ops(&c, 1000).unwrap();
        assert!(!view.is_function());
        match view.apply(&w("0")) {
            Err(FoundationError::NotAFunction { witness, .. }) => assert_eq!(witness, w("0")),
            other => panic!("expected conflict, got {other:?}"),
        }

        let (a, _, c) = relation_fixture(&[("0", "0"), ("1", "1")]);
        let view = function_ops(&c, 1000).unwrap();
        assert!(view.is_injective() && view.is_surjective_onto(&a));

        let (a, _, c) = relation_fixture(&[("0", "0"), ("1", "0")]);
        let view = function_ops(&c, 1000).unwrap();
        assert!(view.is_function() && !view.is_injective() && !view.is_surjective_onto(&a));
    }

    #[test]
    fn cardinality_examples() {
        let f = standard();
        let s = internalize(&System::finite(vec![w("0"), w("1"), w("00")]), &f, w("01")).unwrap();
        assert_eq!(cardinality(&s, 1), Some(3));
    }

    #[test]
    fn subset_relations() {
        let f = standard();
        let small = internalize(&System::finite(vec![w("1")]), &f, w("01")).unwrap();
        let nat = internalize(&System::naturals(), &f, w("10")).unwrap();
        assert!(subset_upto(&small, &nat, 200));
        assert!(!subset_upto(&nat, &small, 200));
        assert!(equal_upto(&nat, &nat, 200));
    }
}
