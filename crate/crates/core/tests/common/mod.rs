//! Oracles and generators shared by the integration tests. Oracles work on plain strings so
//! they share no code with the library.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use wordsys::Word;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn word(s: &str) -> Word {
    s.parse().expect("test words are well formed")
}

pub fn random_bits(rng: &mut ChaCha8Rng, min_len: usize, max_len: usize) -> String {
    let n = rng.gen_range(min_len..=max_len);
    (0..n).map(|_| if rng.gen() { '1' } else { '0' }).collect()
}

/// All words of length `n` as strings, in lexicographic order.
pub fn words_of_len(n: usize) -> Vec<String> {
    (0..1u64 << n).map(|v| format!("{v:0n$b}")).collect()
}

pub fn words_upto_len(n: usize) -> Vec<String> {
    (1..=n).flat_map(words_of_len).collect()
}

/// The index function built level by level from its defining rules:
/// `f(0) = 1`, `f(1) = 2`; `f(0^{k+1}) = f(1^k) + 1`; `f(0^k 1) = f(1^k 0) + 1`; and
/// equal gaps at one length stay equal after appending the same bit.
pub fn rule_index_oracle(max_len: usize) -> HashMap<String, u64> {
    let mut f = HashMap::new();
    f.insert("0".to_string(), 1);
    f.insert("1".to_string(), 2);
    for k in 1..max_len {
        let zeros = "0".repeat(k);
        let ones = "1".repeat(k);
        let base = f[&zeros];
        let level: Vec<(String, u64)> = words_of_len(k).into_iter().map(|w| { let v = f[&w]; (w, v) }).collect();
        let z0 = f[&ones] + 1;
        f.insert(format!("{zeros}0"), z0);
        for (w, v) in &level {
            f.insert(format!("{w}0"), z0 + (v - base));
        }
        let z1 = f[&format!("{ones}0")] + 1;
        f.insert(format!("{zeros}1"), z1);
        for (w, v) in &level {
            f.insert(format!("{w}1"), z1 + (v - base));
        }
    }
    f
}

/// `(left_readable, right_readable)` by an exhaustive proper-prefix and proper-suffix scan.
pub fn brute_readability(code: &[String]) -> (bool, bool) {
    let mut left = true;
    let mut right = true;
    for a in code {
        for b in code {
            if a.len() < b.len() {
                if b.starts_with(a.as_str()) {
                    left = false;
                }
                if b.ends_with(a.as_str()) {
                    right = false;
                }
            }
        }
    }
    (left, right)
}

pub fn random_code(rng: &mut ChaCha8Rng, max_words: usize, max_len: usize) -> Vec<String> {
    let target = rng.gen_range(1..=max_words);
    let mut set = BTreeSet::new();
    for _ in 0..target * 4 {
        if set.len() == target {
            break;
        }
        set.insert(random_bits(rng, 1, max_len));
    }
    set.into_iter().collect()
}

pub fn is_fix_free(code: &[String]) -> bool {
    brute_readability(code) == (true, true) && code.iter().collect::<BTreeSet<_>>().len() == code.len()
}

/// Greedily grows a fix-free code from random candidates.
pub fn random_fix_free(rng: &mut ChaCha8Rng, max_words: usize, max_len: usize) -> Vec<String> {
    let target = rng.gen_range(1..=max_words);
    let mut code: Vec<String> = Vec::new();
    for _ in 0..target * 20 {
        if code.len() == target {
            break;
        }
        let c = random_bits(rng, 1, max_len);
        let clashes = code
            .iter()
            .any(|m| m.starts_with(c.as_str()) || c.starts_with(m.as_str()) || m.ends_with(c.as_str()) || c.ends_with(m.as_str()));
        if !clashes {
            code.push(c);
        }
    }
    code
}

pub fn shuffled<T: Clone>(rng: &mut ChaCha8Rng, items: &[T]) -> Vec<T> {
    let mut v = items.to_vec();
    v.shuffle(rng);
    v
}
