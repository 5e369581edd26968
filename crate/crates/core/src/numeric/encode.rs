//! Word encodings `y·(n1⊗x)·(n2⊗y)` for integers and `y·(n1⊗x)·(n2⊗y)·(n3⊗x)·(n4⊗y)` for rationals.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use super::int::CanonInt;
use super::rat::CanonRat;
use super::NumericError;
use crate::code::FiniteCode;
use crate::foundation::Foundation;
use crate::word::{Nat, Word};

fn check_generators(x: &Word, y: &Word) -> Result<FiniteCode, NumericError> {
    if x == y {
        return Err(NumericError::Parameter(format!("generators must differ, both are {x}")));
    }
    let code = FiniteCode::from_set([x.clone(), y.clone()].into_iter().collect());
    if !code.analyze().alphabet {
        return Err(NumericError::Parameter(format!(
            "generators {x} and {y} do not form an alphabet"
        )));
    }
    Ok(code)
}

fn run_length(n: &BigUint) -> Result<Nat, NumericError> {
    n.to_u64()
        .and_then(|v| Nat::new(v).ok())
        .ok_or_else(|| NumericError::TooLarge(format!("run of length {n}")))
}

fn emit(y: &Word, runs: &[(&Word, &BigUint)]) -> Result<Word, NumericError> {
    let mut out = y.clone();
    for (g, n) in runs {
        out = out.concat(&g.repeat(run_length(n)?));
    }
    Ok(out)
}

/// `y·(n1⊗x)·(n2⊗y)` for `(n1, n2)` the canonical pair of `z`; `x` and `y` must be distinct members of `f`'s alphabet.
pub fn int_encode(z: &CanonInt, f: &Foundation, x: &Word, y: &Word) -> Result<Word, NumericError> {
    for g in [x, y] {
        if !f.s0().contains(g) {
            return Err(NumericError::Parameter(format!("{g} is not in {}", f.s0())));
        }
    }
    int_word(z, x, y)
}

/// [`int_encode`] without a foundation: `{x, y}` itself must be a two-word alphabet.
pub fn int_word(z: &CanonInt, x: &Word, y: &Word) -> Result<Word, NumericError> {
    check_generators(x, y)?;
    let (n1, n2) = z.pair_view();
    emit(y, &[(x, &n1), (y, &n2)])
}

pub fn rat_encode(q: &CanonRat, x: &Word, y: &Word) -> Result<Word, NumericError> {
    check_generators(x, y)?;
    let (n1, n2) = q.num().pair_view();
    let (n3, n4) = q.den().pair_view();
    emit(y, &[(x, &n1), (y, &n2), (x, &n3), (y, &n4)])
}

#[derive(Debug)]
struct Run {
    is_x: bool,
    len: u64,
    start: usize,
}

/// Tokenizes over `{x, y}` and groups equal tokens into runs with their starting bit offsets.
fn runs(w: &Word, x: &Word, y: &Word) -> Result<Vec<Run>, NumericError> {
    let code = check_generators(x, y)?;
    let tokens = code.tokenize(w).map_err(|e| {
        let position = match &e {
            crate::code::CodeError::NotWordOverCode { longest_prefix: Some(p) } => p.len(),
            _ => 0,
        };
        NumericError::Decode { position, reason: e.to_string() }
    })?;
    let mut out: Vec<Run> = Vec::new();
    let mut offset = 0;
    for t in tokens {
        let is_x = &t == x;
        match out.last_mut() {
            Some(r) if r.is_x == is_x => r.len += 1,
            _ => out.push(Run { is_x, len: 1, start: offset }),
        }
        offset += t.len();
    }
    Ok(out)
}

/// Checks the run shape `y, x^n1, y^n2, x^n3, ...` and returns `n1, n2, ...`.
fn shape(w: &Word, x: &Word, y: &Word, expected: usize) -> Result<Vec<u64>, NumericError> {
    let runs = runs(w, x, y)?;
    let first = &runs[0];
    if first.is_x {
        return Err(NumericError::Decode { position: 0, reason: "expected leading y".into() });
    }
    if first.len != 1 {
        return Err(NumericError::Decode {
            position: y.len(),
            reason: "expected a single leading y".into(),
        });
    }
    let body = &runs[1..];
    if body.len() != expected {
        let position = body.get(expected).map_or(w.len(), |r| r.start);
        return Err(NumericError::Decode {
            position,
            reason: format!("expected {expected} alternating runs after the leading y, found {}", body.len()),
        });
    }
    // Runs alternate, so after a y-run the body reads x, y, x, ...
    Ok(body.iter().map(|r| r.len).collect())
}

fn from_pair(n1: u64, n2: u64) -> CanonInt {
    CanonInt::from(BigInt::from(n1) - BigInt::from(n2))
}

pub fn int_decode(w: &Word, x: &Word, y: &Word) -> Result<CanonInt, NumericError> {
    let n = shape(w, x, y, 2)?;
    Ok(from_pair(n[0], n[1]))
}

/// Accepts a negative denominator pair and canonicalizes the sign onto the numerator.
pub fn rat_decode(w: &Word, x: &Word, y: &Word) -> Result<CanonRat, NumericError> {
    let n = shape(w, x, y, 4)?;
    let den = from_pair(n[2], n[3]);
    if den.is_zero() {
        let runs = runs(w, x, y)?;
        return Err(NumericError::Decode {
            position: runs[3].start,
            reason: format!("denominator runs are equal (n3 = n4 = {})", n[2]),
        });
    }
    CanonRat::canon(&from_pair(n[0], n[1]), &den)
}
