//! Finite codes: readability, alphabets (fix-free codes), independence and tokenization.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::system::System;
use crate::word::{Bit, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("{name} is not an alphabet: {pair}")]
    NotAnAlphabet { name: String, pair: String },
    #[error("{0} is not expressive (needs an alphabet with at least two words)")]
    NotExpressive(String),
    #[error("not a word over code; {}", match .longest_prefix {
        Some(p) => format!("longest prefix: {p}"),
        None => "no tokenizable prefix".to_string(),
    })]
    NotWordOverCode { longest_prefix: Option<Word> },
    #[error("duplicate word {0} in code")]
    Duplicate(Word),
}

/// A finite, duplicate-free set of words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteCode {
    words: BTreeSet<Word>,
    name: Option<String>,
}

/// Readability flags of a [`FiniteCode`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeAnalysis {
    /// No member is a proper suffix of another.
    pub right_readable: bool,
    /// No member is a proper prefix of another.
    pub left_readable: bool,
    pub alphabet: bool,
    pub expressive: bool,
    /// First `(shorter, longer)` pair in lexicographic order where `shorter` is a proper
    /// prefix or suffix of `longer`.
    pub violating_pair: Option<(Word, Word)>,
}

impl FiniteCode {
    /// Builds a code, rejecting duplicates.
    pub fn new<I>(words: I) -> Result<FiniteCode, CodeError>
    where
        I: IntoIterator<Item = Word>,
    {
        let mut set = BTreeSet::new();
        for w in words {
            if let Some(dup) = set.replace(w) {
                return Err(CodeError::Duplicate(dup));
            }
        }
        Ok(FiniteCode { words: set, name: None })
    }

    /// Builds a code from a set (duplicates already impossible).
    pub fn from_set(words: BTreeSet<Word>) -> FiniteCode {
        FiniteCode { words, name: None }
    }

    pub fn named(mut self, name: impl Into<String>) -> FiniteCode {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.to_string())
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn union(&self, other: &FiniteCode) -> FiniteCode {
        FiniteCode::from_set(self.words.union(&other.words).cloned().collect())
    }

    pub fn is_disjoint(&self, other: &FiniteCode) -> bool {
        self.words.is_disjoint(&other.words)
    }

    pub fn as_system(&self) -> System {
        System::finite(self.words.iter().cloned()).describe(self.name())
    }

    pub fn analyze(&self) -> CodeAnalysis {
        let mut right_readable = true;
        let mut left_readable = true;
        let mut violating_pair = None;
        for x in &self.words {
            for y in &self.words {
                let prefix = x.is_proper_prefix_of(y);
                let suffix = x.is_proper_suffix_of(y);
                left_readable &= !prefix;
                right_readable &= !suffix;
                if (prefix || suffix) && violating_pair.is_none() {
                    violating_pair = Some((x.clone(), y.clone()));
                }
            }
        }
        if self.words.is_empty() {
            right_readable = false;
            left_readable = false;
        }
        let alphabet = right_readable && left_readable;
        CodeAnalysis {
            right_readable,
            left_readable,
            alphabet,
            expressive: alphabet && self.words.len() >= 2,
            violating_pair,
        }
    }

    fn require_alphabet(&self) -> Result<(), CodeError> {
        let analysis = self.analyze();
        if analysis.alphabet {
            return Ok(());
        }
        let pair = match analysis.violating_pair {
            Some((x, y)) if x.is_proper_prefix_of(&y) => format!("{x} is a proper prefix of {y}"),
            Some((x, y)) => format!("{x} is a proper suffix of {y}"),
            None => "empty code".to_string(),
        };
        Err(CodeError::NotAnAlphabet {
            name: self.name(),
            pair,
        })
    }

    /// Splits `w` into code members.
    ///
    /// The code must be an alphabet; prefix-freeness makes the left-to-right match at each
    /// position unique, so the factorization found is the only one.
    pub fn tokenize(&self, w: &Word) -> Result<Vec<Word>, CodeError> {
        self.require_alphabet()?;
        let lengths: BTreeSet<usize> = self.words.iter().map(Word::len).collect();
        let members: HashSet<&[Bit]> = self.words.iter().map(Word::bits).collect();
        let bits = w.bits();
        let mut tokens = Vec::new();
        let mut pos = 0;
        while pos < bits.len() {
            let hit = lengths
                .iter()
                .map(|&l| pos + l)
                .take_while(|&end| end <= bits.len())
                .find(|&end| members.contains(&bits[pos..end]));
            match hit {
                Some(end) => {
                    tokens.push(Word::from_slice(&bits[pos..end]).expect("nonempty"));
                    pos = end;
                }
                None => {
                    return Err(CodeError::NotWordOverCode {
                        longest_prefix: Word::from_slice(&bits[..pos]).ok(),
                    })
                }
            }
        }
        Ok(tokens)
    }

    /// True iff `w` factors over this alphabet.
    pub fn is_word_over(&self, w: &Word) -> Result<bool, CodeError> {
        match self.tokenize(w) {
            Ok(_) => Ok(true),
            Err(CodeError::NotWordOverCode { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

impl fmt::Display for FiniteCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.words.iter().map(Word::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Two alphabets are independent when they are disjoint and their union is still an alphabet.
pub fn are_independent(a: &FiniteCode, b: &FiniteCode) -> Result<bool, CodeError> {
    a.require_alphabet()?;
    b.require_alphabet()?;
    Ok(a.is_disjoint(b) && a.union(b).analyze().alphabet)
}

/// From an expressive alphabet with lexicographically least members `x < y`, builds
/// `{xx, xy}` and `{yx, yy}`: two independent expressive alphabets.
pub fn derive_independent_expressive(a: &FiniteCode) -> Result<(FiniteCode, FiniteCode), CodeError> {
    if !a.analyze().expressive {
        return Err(CodeError::NotExpressive(a.name()));
    }
    let mut it = a.words.iter();
    let x = it.next().expect("expressive codes have two members");
    let y = it.next().expect("expressive codes have two members");
    let b1 = FiniteCode::from_set([x.concat(x), x.concat(y)].into_iter().collect());
    let b2 = FiniteCode::from_set([y.concat(x), y.concat(y)].into_iter().collect());
    Ok((b1, b2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn code(ws: &[&str]) -> FiniteCode {
        FiniteCode::new(ws.iter().map(|s| w(s))).unwrap()
    }

    #[test]
    fn analyze_examples() {
        let a = code(&["00", "01", "10", "11"]).analyze();
        assert!(a.alphabet && a.expressive && a.violating_pair.is_none());

        let a = code(&["0", "01"]).analyze();
        assert!(!a.left_readable && a.right_readable && !a.alphabet);
        assert_eq!(a.violating_pair, Some((w("0"), w("01"))));

        let a = code(&["1", "01"]).analyze();
        assert!(!a.right_readable && a.left_readable);
        assert_eq!(a.violating_pair, Some((w("1"), w("01"))));
    }

    #[test]
    fn empty_code_has_no_flags() {
        let a = FiniteCode::new(vec![]).unwrap().analyze();
        assert_eq!(
            a,
            CodeAnalysis {
                right_readable: false,
                left_readable: false,
                alphabet: false,
                expressive: false,
                violating_pair: None
            }
        );
    }

    #[test]
    fn single_word_is_alphabet_not_expressive() {
        let a = code(&["0110"]).analyze();
        assert!(a.alphabet && !a.expressive);
    }

    #[test]
    fn duplicates_rejected() {
        assert_eq!(
            FiniteCode::new(vec![w("01"), w("01")]),
            Err(CodeError::Duplicate(w("01")))
        );
    }

    #[test]
    fn independence_examples() {
        assert!(are_independent(&code(&["00", "01"]), &code(&["10", "11"])).unwrap());
        assert!(!are_independent(&code(&["01"]), &code(&["01"])).unwrap());
        assert!(!are_independent(&code(&["0"]), &code(&["01"])).unwrap());
        assert!(matches!(
            are_independent(&code(&["0", "01"]), &code(&["1"])),
            Err(CodeError::NotAnAlphabet { .. })
        ));
    }

    #[test]
    fn derive_examples() {
        let (b1, b2) = derive_independent_expressive(&code(&["0", "1"])).unwrap();
        assert_eq!((b1, b2), (code(&["00", "01"]), code(&["10", "11"])));
        let (b1, b2) = derive_independent_expressive(&code(&["01", "10"])).unwrap();
        assert_eq!(b1, code(&["0101", "0110"]));
        assert_eq!(b2, code(&["1001", "1010"]));
        assert!(are_independent(&b1, &b2).unwrap());
        assert!(b1.analyze().expressive && b2.analyze().expressive);
        assert!(matches!(
            derive_independent_expressive(&code(&["1"])),
            Err(CodeError::NotExpressive(_))
        ));
    }

    #[test]
    fn tokenize_examples() {
        let two_bit = code(&["00", "01", "10", "11"]);
        assert_eq!(two_bit.tokenize(&w("0110")).unwrap(), vec![w("01"), w("10")]);
        assert_eq!(
            code(&["01"]).tokenize(&w("010101")).unwrap(),
            vec![w("01"), w("01"), w("01")]
        );
        let err = two_bit.tokenize(&w("011")).unwrap_err();
        assert_eq!(err, CodeError::NotWordOverCode { longest_prefix: Some(w("01")) });
        assert_eq!(err.to_string(), "not a word over code; longest prefix: 01");
        assert_eq!(
            code(&["01"]).tokenize(&w("1")).unwrap_err().to_string(),
            "not a word over code; no tokenizable prefix"
        );
        assert!(matches!(
            code(&["0", "01"]).tokenize(&w("01")),
            Err(CodeError::NotAnAlphabet { .. })
        ));
    }
}
