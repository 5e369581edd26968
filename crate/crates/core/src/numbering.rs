//! Counting numbers, repetition (`n ⊗ b`), tagged words `x·0·1ⁿ`, and the canonical
//! bijection between words and positive integers.
//!
//! The bijection enumerates words by length blocks. Inside the block of length `ℓ`
//! (indices `2^ℓ − 1 ..= 2^(ℓ+1) − 2`) a word's offset is its bits read as a binary
//! number with the *leftmost* bit least significant:
//!
//! ```text
//! 0 → 1   1 → 2   00 → 3   10 → 4   01 → 5   11 → 6   000 → 7 ...
//! ```

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::system::System;
use crate::word::{Bit, Nat, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberingError {
    #[error("index 0 does not name a word")]
    ZeroIndex,
    #[error("word of length {0} has an index beyond 64 bits")]
    IndexOverflow(usize),
    #[error("{word} is not a counting number over {base}")]
    NotCountingNumber { word: Word, base: Word },
    #[error("malformed tagged word {word}: {reason}")]
    MalformedTag { word: Word, reason: &'static str },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Position of a word in the canonical enumeration; always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalIndex(u64);

impl CanonicalIndex {
    pub fn new(value: u64) -> Result<CanonicalIndex, NumberingError> {
        if value == 0 {
            Err(NumberingError::ZeroIndex)
        } else {
            Ok(CanonicalIndex(value))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for CanonicalIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Longest word whose index fits in a `u64`.
pub const MAX_INDEXED_LEN: usize = 63;

pub fn word_to_index(w: &Word) -> Result<CanonicalIndex, NumberingError> {
    let len = w.len();
    if len > MAX_INDEXED_LEN {
        return Err(NumberingError::IndexOverflow(len));
    }
    let block_start = (1u64 << len) - 1;
    let offset = w
        .bits()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b == Bit::One)
        .fold(0u64, |acc, (i, _)| acc | (1u64 << i));
    Ok(CanonicalIndex(block_start + offset))
}

pub fn index_to_word(n: u64) -> Result<Word, NumberingError> {
    if n == 0 {
        return Err(NumberingError::ZeroIndex);
    }
    // Block of length ℓ starts at 2^ℓ − 1, so ℓ = floor(log2(n + 1)).
    let shifted = n as u128 + 1;
    let len = 127 - shifted.leading_zeros() as usize;
    let offset = (shifted - (1u128 << len)) as u64;
    let bits = (0..len)
        .map(|i| if offset >> i & 1 == 1 { Bit::One } else { Bit::Zero })
        .collect();
    Ok(Word::from_bits(bits)?)
}

/// Total order of the canonical enumeration: shorter first, then by block offset.
pub fn canonical_cmp(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        // Offsets compare by their most significant differing bit, i.e. the rightmost one.
        a.bits().iter().rev().cmp(b.bits().iter().rev())
    })
}

/// All words in canonical order: `0, 1, 00, 10, 01, 11, 000, ...`. Unbounded.
#[derive(Debug, Clone)]
pub struct CanonicalWords {
    current: Vec<Bit>,
}

impl CanonicalWords {
    pub fn new() -> CanonicalWords {
        CanonicalWords { current: Vec::new() }
    }
}

impl Default for CanonicalWords {
    fn default() -> Self {
        CanonicalWords::new()
    }
}

impl Iterator for CanonicalWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        // Increment with the leftmost bit least significant; overflow starts the next block.
        let mut carried = true;
        for b in self.current.iter_mut() {
            if *b == Bit::Zero {
                *b = Bit::One;
                carried = false;
                break;
            }
            *b = Bit::Zero;
        }
        if carried {
            self.current = vec![Bit::Zero; self.current.len() + 1];
        }
        Some(Word::from_slice(&self.current).expect("nonempty"))
    }
}

/// `n ⊗ b`: the word `b` repeated `n` times.
pub fn otimes(n: Nat, b: &Word) -> Word {
    b.repeat(n)
}

/// The unique `n` with `n ⊗ b = c`.
pub fn nat_of_counting(c: &Word, b: &Word) -> Result<Nat, NumberingError> {
    let not_counting = || NumberingError::NotCountingNumber {
        word: c.clone(),
        base: b.clone(),
    };
    if c.len() % b.len() != 0 {
        return Err(not_counting());
    }
    if c.bits().chunks(b.len()).all(|chunk| chunk == b.bits()) {
        Ok(Nat::from_usize(c.len() / b.len())?)
    } else {
        Err(not_counting())
    }
}

/// A counting number over `base`: `base` repeated `count` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountingNumber {
    pub base: Word,
    pub count: Nat,
}

impl CountingNumber {
    pub fn word(&self) -> Word {
        otimes(self.count, &self.base)
    }

    pub fn parse(c: &Word, base: &Word) -> Result<CountingNumber, NumberingError> {
        Ok(CountingNumber {
            base: base.clone(),
            count: nat_of_counting(c, base)?,
        })
    }
}

/// `payload · 0 · 1^tag`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TaggedWord {
    pub payload: Word,
    pub tag: Nat,
}

impl TaggedWord {
    pub fn word(&self) -> Word {
        encode_tagged(&self.payload, self.tag)
    }
}

pub fn encode_tagged(x: &Word, n: Nat) -> Word {
    x.push(Bit::Zero).concat(&n.to_word())
}

/// Splits `w` at its last `0`; the payload must be nonempty and the tail a nonempty 1-run.
pub fn decode_tagged(w: &Word) -> Result<TaggedWord, NumberingError> {
    let malformed = |reason| NumberingError::MalformedTag {
        word: w.clone(),
        reason,
    };
    let bits = w.bits();
    let last_zero = bits
        .iter()
        .rposition(|&b| b == Bit::Zero)
        .ok_or_else(|| malformed("no 0 separator"))?;
    let tag = bits.len() - last_zero - 1;
    if tag == 0 {
        return Err(malformed("no trailing 1-run"));
    }
    let payload = Word::from_slice(&bits[..last_zero]).map_err(|_| malformed("empty payload"))?;
    Ok(TaggedWord {
        payload,
        tag: Nat::from_usize(tag)?,
    })
}

/// The inductively defined length system: `001`, `101`, and `x0n ⇒ x00n1, x10n1`.
///
/// Membership is decided by running the induction backwards from `w`.
pub fn length_system() -> System {
    System::comprehension("length system", |w| {
        let Ok(tagged) = decode_tagged(w) else {
            return false;
        };
        let mut payload = tagged.payload;
        let mut tag = tagged.tag.get();
        loop {
            match payload.decompose_last().0 {
                None => return tag == 1,
                Some(prefix) => {
                    if tag == 1 {
                        return false;
                    }
                    payload = prefix;
                    tag -= 1;
                }
            }
        }
    })
}

/// The natural number attached to `w` by the length system.
pub fn word_length(w: &Word) -> Nat {
    let sys = length_system();
    (1..=w.len() as u64)
        .filter_map(|n| Nat::new(n).ok())
        .find(|&n| sys.member(&encode_tagged(w, n)))
        .expect("every word has a length")
}

/// The member of `candidates` with the least canonical index among indices `1..=probe_limit`.
pub fn choose(candidates: &System, probe_limit: u64) -> Option<Word> {
    if let Some(extent) = candidates.extent() {
        return extent
            .iter()
            .filter(|w| matches!(word_to_index(w), Ok(i) if i.get() <= probe_limit))
            .min_by(|a, b| canonical_cmp(a, b))
            .cloned();
    }
    CanonicalWords::new()
        .take(probe_limit as usize)
        .find(|w| candidates.member(w))
}
