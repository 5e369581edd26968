//! Nonempty binary words and the structural operations on them.
//!
//! There is no empty word: the atoms are `0` and `1`, and every other word is
//! built from them by concatenation. Every constructor rejects empty input.

use std::fmt;
use std::num::NonZeroU64;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("invalid character {found:?} at position {position} in word")]
    InvalidChar { found: char, position: usize },
    #[error("natural number must be at least 1")]
    ZeroNat,
    #[error("natural number overflow")]
    NatOverflow,
    #[error("word of {bits} bits does not consist of 1-bits only")]
    NotUnary { bits: usize },
}

/// One of the two atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub fn from_char(c: char) -> Option<Bit> {
        match c {
            '0' => Some(Bit::Zero),
            '1' => Some(Bit::One),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Bit::Zero => '0',
            Bit::One => '1',
        }
    }

    pub fn flip(self) -> Bit {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
        }
    }

    /// The atom viewed as a one-bit word.
    pub fn word(self) -> Word {
        Word { bits: vec![self] }
    }
}

/// A nonempty finite sequence of bits; leftmost bit first.
///
/// The derived `Ord` is plain lexicographic order on the text form (so `"0" < "00" < "01" < "1"`).
/// For the length-block enumeration order see [`crate::numbering::canonical_cmp`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    bits: Vec<Bit>,
}

impl Word {
    pub fn zero() -> Word {
        Bit::Zero.word()
    }

    pub fn one() -> Word {
        Bit::One.word()
    }

    pub fn from_bits(bits: Vec<Bit>) -> Result<Word, WordError> {
        if bits.is_empty() {
            return Err(WordError::Empty);
        }
        Ok(Word { bits })
    }

    pub fn from_slice(bits: &[Bit]) -> Result<Word, WordError> {
        Word::from_bits(bits.to_vec())
    }

    /// `bit` repeated `count` times.
    pub fn run(bit: Bit, count: Nat) -> Word {
        Word {
            bits: vec![bit; count.as_usize()],
        }
    }

    pub fn bits(&self) -> &[Bit] {
        &self.bits
    }

    /// Bit count; always at least 1.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> Bit {
        self.bits[0]
    }

    pub fn last(&self) -> Bit {
        self.bits[self.bits.len() - 1]
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&other.bits);
        Word { bits }
    }

    pub fn push(&self, bit: Bit) -> Word {
        let mut bits = self.bits.clone();
        bits.push(bit);
        Word { bits }
    }

    pub fn prepend(&self, bit: Bit) -> Word {
        let mut bits = Vec::with_capacity(self.len() + 1);
        bits.push(bit);
        bits.extend_from_slice(&self.bits);
        Word { bits }
    }

    /// Splits off the last atom. The prefix is absent for atoms.
    pub fn decompose_last(&self) -> (Option<Word>, Bit) {
        let (last, rest) = self.bits.split_last().expect("word is nonempty");
        let prefix = if rest.is_empty() {
            None
        } else {
            Some(Word {
                bits: rest.to_vec(),
            })
        };
        (prefix, *last)
    }

    /// Splits off the first atom. The suffix is absent for atoms.
    pub fn decompose_first(&self) -> (Bit, Option<Word>) {
        let (first, rest) = self.bits.split_first().expect("word is nonempty");
        let suffix = if rest.is_empty() {
            None
        } else {
            Some(Word {
                bits: rest.to_vec(),
            })
        };
        (*first, suffix)
    }

    /// True iff `self == other` or `other = self · z` for some word `z`.
    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.bits.starts_with(&self.bits)
    }

    /// True iff `self == other` or `other = z · self` for some word `z`.
    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.bits.ends_with(&self.bits)
    }

    pub fn is_proper_prefix_of(&self, other: &Word) -> bool {
        self.len() < other.len() && self.is_prefix_of(other)
    }

    pub fn is_proper_suffix_of(&self, other: &Word) -> bool {
        self.len() < other.len() && self.is_suffix_of(other)
    }

    /// The `z` with `other = self · z`, if `self` is a proper prefix of `other`.
    pub fn strip_prefix_of(&self, other: &Word) -> Option<Word> {
        if self.is_proper_prefix_of(other) {
            Some(Word {
                bits: other.bits[self.len()..].to_vec(),
            })
        } else {
            None
        }
    }

    /// The `z` with `other = z · self`, if `self` is a proper suffix of `other`.
    pub fn strip_suffix_of(&self, other: &Word) -> Option<Word> {
        if self.is_proper_suffix_of(other) {
            Some(Word {
                bits: other.bits[..other.len() - self.len()].to_vec(),
            })
        } else {
            None
        }
    }

    /// Word length as a natural number.
    pub fn length(&self) -> Nat {
        Nat::from_usize(self.len()).expect("word length is at least 1")
    }

    /// `self` repeated `n` times.
    pub fn repeat(&self, n: Nat) -> Word {
        Word {
            bits: self.bits.repeat(n.as_usize()),
        }
    }

    /// The nonempty prefixes of `self`, shortest first (the last one is `self`).
    pub fn prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (1..=self.len()).map(move |k| Word {
            bits: self.bits[..k].to_vec(),
        })
    }

    /// The sub-word `bits[start..end]`, if nonempty.
    pub fn slice(&self, start: usize, end: usize) -> Option<Word> {
        if start < end && end <= self.len() {
            Some(Word {
                bits: self.bits[start..end].to_vec(),
            })
        } else {
            None
        }
    }

    pub fn count(&self, bit: Bit) -> usize {
        self.bits.iter().filter(|&&b| b == bit).count()
    }

    pub fn is_unary(&self) -> bool {
        self.bits.iter().all(|&b| b == Bit::One)
    }
}

/// Concatenation of a nonempty sequence of words.
pub fn concat_all<'a, I>(words: I) -> Option<Word>
where
    I: IntoIterator<Item = &'a Word>,
{
    let mut bits = Vec::new();
    for w in words {
        bits.extend_from_slice(w.bits());
    }
    Word::from_bits(bits).ok()
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Word, WordError> {
        let bits = s
            .chars()
            .enumerate()
            .map(|(position, c)| Bit::from_char(c).ok_or(WordError::InvalidChar { found: c, position }))
            .collect::<Result<Vec<_>, _>>()?;
        Word::from_bits(bits)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{}", b.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

/// Parses a word literal known to be valid. Panics otherwise; meant for tests and constants.
pub fn w(s: &str) -> Word {
    s.parse().unwrap_or_else(|e| panic!("bad word literal {s:?}: {e}"))
}

/// A counting number over `1`: a positive integer whose word view is `1` repeated `count` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Nat(NonZeroU64);

impl Nat {
    pub const ONE: Nat = Nat(NonZeroU64::MIN);

    pub fn new(n: u64) -> Result<Nat, WordError> {
        NonZeroU64::new(n).map(Nat).ok_or(WordError::ZeroNat)
    }

    pub fn from_usize(n: usize) -> Result<Nat, WordError> {
        let n = u64::try_from(n).map_err(|_| WordError::NatOverflow)?;
        Nat::new(n)
    }

    pub fn get(self) -> u64 {
        self.0.get()
    }

    pub fn as_usize(self) -> usize {
        usize::try_from(self.get()).expect("natural number exceeds address space")
    }

    pub fn checked_add(self, other: Nat) -> Result<Nat, WordError> {
        self.0.checked_add(other.get()).map(Nat).ok_or(WordError::NatOverflow)
    }

    pub fn checked_mul(self, other: Nat) -> Result<Nat, WordError> {
        self.0.checked_mul(other.0).map(Nat).ok_or(WordError::NatOverflow)
    }

    pub fn successor(self) -> Result<Nat, WordError> {
        self.checked_add(Nat::ONE)
    }

    /// `1` repeated `count` times.
    pub fn to_word(self) -> Word {
        Word::run(Bit::One, self)
    }

    pub fn from_word(w: &Word) -> Result<Nat, WordError> {
        if w.is_unary() {
            Nat::from_usize(w.len())
        } else {
            Err(WordError::NotUnary { bits: w.len() })
        }
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.get())
    }
}
