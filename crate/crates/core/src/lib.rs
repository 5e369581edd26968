//! Binary words, systems of words, fix-free codes, canonical numbering, set foundations,
//! a numeric tower and diagonal constructions.

pub mod cli;
pub mod code;
pub mod diagonal;
pub mod foundation;
pub mod numbering;
pub mod numeric;
pub mod system;
pub mod text;
pub mod word;

pub use code::{are_independent, derive_independent_expressive, CodeAnalysis, CodeError, FiniteCode};
pub use numbering::{index_to_word, word_to_index, CanonicalIndex, NumberingError};
pub use numeric::{CanonInt, CanonRat, CutReal, NumericError};
pub use system::{SetOp, Side, System, SystemError};
pub use word::{Bit, Nat, Word, WordError};
