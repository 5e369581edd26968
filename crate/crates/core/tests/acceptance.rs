//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use common::*;
use wordsys::diagonal::{
    canonical_rational, diagonal_subset, gap_sequences, missing_real, missing_well_order, order_isomorphic,
    verify_differs, CanonicalIndexing, CanonicalRationals, Constructed, Family, IndexedFamily, OrderComparator,
    Witness,
};
use wordsys::foundation::{element_of, internalize, EncodedSet, Foundation};
use wordsys::numbering::choose;
use wordsys::numeric::{
    cauchy_limit, int_decode, int_word, rat_decode, rat_encode, real_approx, rat_arith, int_arith, IntOp, ModulusSequence,
    RatOp,
};
use wordsys::{
    are_independent, index_to_word, word_to_index, Bit, CanonInt, CanonRat, CutReal, FiniteCode, Side, System, Word,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 11] = [
        ("word axioms", axioms, Some(Duration::from_secs(5))),
        ("word-index bijection", bijection, Some(Duration::from_secs(10))),
        ("readability characterization", readability, None),
        ("tokenization and independence", tokenization, None),
        ("right/left generation", generation, None),
        ("foundation parsing", foundation_parsing, None),
        ("numeric tower", numeric_tower, None),
        ("cut reals", reals, Some(Duration::from_secs(10))),
        ("diagonalization", diagonalization, None),
        ("choice", choice, None),
        ("cli goldens", cli_goldens, None),
    ];
    let mut failed = 0;
    for (n, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > *limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}; {elapsed:.2?})", n + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({reason}; {elapsed:.2?})", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn w(s: &str) -> Word {
    word(s)
}

fn axioms() -> Outcome {
    let mut rng = rng(1);
    let (zero, one) = (Word::zero(), Word::one());
    for _ in 0..10_000 {
        let x = w(&random_bits(&mut rng, 1, 20));
        let y = w(&random_bits(&mut rng, 1, 20));
        let z = w(&random_bits(&mut rng, 1, 20));
        ensure!(x.concat(&y).concat(&z) == x.concat(&y.concat(&z)), "associativity fails at {x} {y} {z}");
        ensure!(x.concat(&zero) != y.concat(&one), "reading fails at {x} {y}");
        ensure!(one.concat(&x) != zero.concat(&y), "left reading fails at {x} {y}");
        // simplification and its left version, both directions of each implication
        ensure!((x.concat(&z) == y.concat(&z)) == (x == y), "simplification fails at {x} {y} {z}");
        ensure!((z.concat(&x) == z.concat(&y)) == (x == y), "left simplification fails at {x} {y} {z}");
        ensure!(x.concat(&y).strip_suffix_of(&x.concat(&y)).is_none(), "strip of whole word at {x}{y}");
        ensure!(y.strip_suffix_of(&x.concat(&y)) == Some(x.clone()), "suffix removal fails at {x} {y}");
        ensure!(x.strip_prefix_of(&x.concat(&y)) == Some(y.clone()), "prefix removal fails at {x} {y}");
        ensure!(x != x.concat(&y) && x != y.concat(&x), "integrity fails at {x} {y}");
        ensure!(x != y.concat(&x).concat(&z), "two-sided integrity fails at {x} {y} {z}");
        let (init, last) = x.decompose_last();
        ensure!(init.map_or(last.word(), |i| i.push(last)) == x, "last-bit decomposition fails at {x}");
        let (first, rest) = x.decompose_first();
        ensure!(rest.map_or(first.word(), |r| r.prepend(first)) == x, "first-bit decomposition fails at {x}");
    }
    ensure!(zero != one && Bit::Zero.word() == zero, "symbols");
    Ok("10^4 triples, 0 violations".into())
}

fn bijection() -> Outcome {
    let total: u64 = (1 << 17) - 2;
    for n in 1..=total {
        let word = index_to_word(n).map_err(|e| e.to_string())?;
        ensure!(word.len() <= 16, "index {n} gives {word}, longer than 16");
        let back = word_to_index(&word).map_err(|e| e.to_string())?.get();
        ensure!(back == n, "index {n} -> {word} -> {back}");
    }
    let mut seen = 0u64;
    for s in words_upto_len(16) {
        let i = word_to_index(&w(&s)).map_err(|e| e.to_string())?.get();
        ensure!((1..=total).contains(&i), "{s} has index {i}");
        seen += 1;
    }
    ensure!(seen == total, "{seen} words of length <= 16");
    let oracle = rule_index_oracle(10);
    for (s, &v) in &oracle {
        let got = word_to_index(&w(s)).map_err(|e| e.to_string())?.get();
        ensure!(got == v, "{s}: closed form {got}, rule oracle {v}");
    }
    ensure!(oracle["0"] == 1 && oracle["1"] == 2, "base cases");
    ensure!(word_to_index(&w("0")).unwrap().get() == 1 && word_to_index(&w("1")).unwrap().get() == 2, "base cases");
    Ok(format!("{total} round trips, {} oracle values", oracle.len()))
}

fn readability() -> Outcome {
    let mut rng = rng(3);
    for _ in 0..500 {
        let code = random_code(&mut rng, 32, 12);
        let (left, right) = brute_readability(&code);
        let a = FiniteCode::new(code.iter().map(|s| w(s))).map_err(|e| e.to_string())?.analyze();
        ensure!(a.left_readable == left, "left_readable on {code:?}");
        ensure!(a.right_readable == right, "right_readable on {code:?}");
        ensure!(a.alphabet == (left && right), "alphabet on {code:?}");
        ensure!(a.expressive == (left && right && code.len() >= 2), "expressive on {code:?}");
        if let Some((s, l)) = &a.violating_pair {
            let (s, l) = (s.to_string(), l.to_string());
            ensure!(s.len() < l.len() && (l.starts_with(&s) || l.ends_with(&s)), "bad violating pair {s} {l}");
        } else {
            ensure!(left && right, "missing violating pair on {code:?}");
        }
    }
    Ok("500 codes agree with the exhaustive scan".into())
}

fn tokenization() -> Outcome {
    let mut rng = rng(4);
    for _ in 0..1000 {
        let code = random_fix_free(&mut rng, 8, 8);
        let fc = FiniteCode::new(code.iter().map(|s| w(s))).map_err(|e| e.to_string())?;
        let message: Vec<&String> = (0..50).map(|_| &code[rng.gen_range(0..code.len())]).collect();
        let joined: String = message.iter().map(|s| s.as_str()).collect();
        let tokens = fc.tokenize(&w(&joined)).map_err(|e| e.to_string())?;
        let tokens: Vec<String> = tokens.iter().map(Word::to_string).collect();
        ensure!(tokens.iter().eq(message.iter().copied()), "re-tokenization differs for {code:?}");
    }

    // Every split of a fix-free set of at most 4 words of length <= 4 into two nonempty parts.
    let pool = words_upto_len(4);
    let mut unions: Vec<Vec<String>> = Vec::new();
    fix_free_subsets(&pool, 0, &mut Vec::new(), &mut unions);
    let short: Vec<Word> = words_upto_len(3).iter().map(|s| w(s)).collect();
    let mut pairs = 0u64;
    for union in &unions {
        let n = union.len();
        for mask in 1..(1u32 << n) - 1 {
            let part = |bit: u32| -> Vec<Word> { (0..n).filter(|i| mask >> i & 1 == bit).map(|i| w(&union[i])).collect() };
            let (s1, s2) = (part(1), part(0));
            let (c1, c2) = (FiniteCode::new(s1.clone()).unwrap(), FiniteCode::new(s2.clone()).unwrap());
            ensure!(are_independent(&c1, &c2).map_err(|e| e.to_string())?, "{c1} and {c2} should be independent");
            let over = |s: &[Word]| -> Vec<Word> {
                let mut v = s.to_vec();
                for a in s {
                    for b in s {
                        v.push(a.concat(b));
                    }
                }
                v
            };
            let (r1s, r2s) = (over(&s1), over(&s2));
            let mut first: HashMap<Word, (usize, usize)> = HashMap::new();
            for (i, r1) in r1s.iter().enumerate() {
                for (j, r2) in r2s.iter().enumerate() {
                    if let Some(prev) = first.insert(r1.concat(r2), (i, j)) {
                        return Err(format!("{} splits two ways over {c1} | {c2}: {prev:?} {:?}", r1.concat(r2), (i, j)));
                    }
                }
            }
            let mut second: HashMap<(Word, usize), (usize, usize)> = HashMap::new();
            for (i, r1) in r1s.iter().enumerate() {
                for (j, r2) in r2s.iter().enumerate() {
                    for (k, x) in short.iter().enumerate() {
                        if let Some(prev) = second.insert((x.concat(r1).concat(r2), i), (k, j)) {
                            return Err(format!("x r1 r2 cancels two ways over {c1} | {c2}: {prev:?} {:?}", (k, j)));
                        }
                    }
                }
            }
            pairs += 1;
        }
    }
    Ok(format!("1000 messages re-tokenize; {pairs} independent pairs cancel"))
}

/// Fix-free subsets of `pool` with 2 to 4 members.
fn fix_free_subsets(pool: &[String], start: usize, current: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
    if current.len() >= 2 {
        out.push(current.clone());
    }
    if current.len() == 4 {
        return;
    }
    for i in start..pool.len() {
        current.push(pool[i].clone());
        if is_fix_free(current) {
            fix_free_subsets(pool, i + 1, current, out);
        }
        current.pop();
    }
}

fn generation() -> Outcome {
    let mut rng = rng(5);
    for _ in 0..100 {
        let seed = random_code(&mut rng, 4, 4);
        let seed = System::finite(seed.iter().map(|s| w(s)));
        let right = System::generated_by(&seed, Side::Right).map_err(|e| e.to_string())?;
        let left = System::generated_by(&seed, Side::Left).map_err(|e| e.to_string())?;
        let report = System::bounded_equal(&right, &left, 1000);
        ensure!(report.equal_up_to_depth, "{} differs at {:?}", seed.description(), report.witness);
    }
    Ok("100 seeds agree on 1000 words".into())
}

fn random_foundation(rng: &mut rand_chacha::ChaCha8Rng) -> Foundation {
    loop {
        let s0 = random_fix_free(rng, 3, 3);
        let e0 = random_bits(rng, 1, 4);
        if s0.len() < 2 {
            continue;
        }
        let Ok(code) = FiniteCode::new(s0.iter().map(|s| w(s))) else { continue };
        if let Ok(f) = Foundation::new(w(&e0), code) {
            return f;
        }
    }
}

fn foundation_parsing() -> Outcome {
    let mut rng = rng(6);
    let probes: Vec<Word> = (1..=500).map(|i| index_to_word(i).unwrap()).collect();
    for trial in 0..100 {
        let f = Arc::new(random_foundation(&mut rng));
        let tokens: Vec<&Word> = f.s0().words().iter().collect();
        let rep = (0..rng.gen_range(1..=3))
            .map(|_| tokens[rng.gen_range(0..tokens.len())].clone())
            .reduce(|a, b| a.concat(&b))
            .unwrap();
        let target = if trial % 4 == 3 {
            System::comprehension("odd number of ones", |x: &Word| x.count(Bit::One) % 2 == 1)
        } else {
            let n = rng.gen_range(0..=20);
            System::finite((0..n).map(|_| w(&random_bits(&mut rng, 1, 8))))
        };
        let set = internalize(&target, &f, rep.clone()).map_err(|e| e.to_string())?;
        for x in &probes {
            ensure!(element_of(x, &set) == target.member(x), "{x} over ({}, {}) with rep {rep}", f.e0(), f.s0());
        }
    }
    let f = Arc::new(Foundation::new(w("00"), FiniteCode::new([w("01"), w("10")]).unwrap()).map_err(|e| e.to_string())?);
    let s = EncodedSet::new(w("10"), System::finite([w("00010")]), f).map_err(|e| e.to_string())?;
    ensure!(element_of(&w("0"), &s), "0 should be an element of (10)_S over (00, S0)");
    ensure!(!element_of(&w("1"), &s), "1 should not be an element of (10)_S");
    Ok("100 triples over 500 words; worked example reproduces".into())
}

fn big(z: &CanonInt) -> BigInt {
    z.as_bigint().clone()
}

fn same(q: &CanonRat, r: &BigRational) -> bool {
    q.numer_big() == r.numer() && q.denom_big() == r.denom()
}

fn numeric_tower() -> Outcome {
    let mut rng = rng(7);
    for i in 0..10_000 {
        let scale: i64 = if i % 10 == 0 { i64::MAX } else { 1 << 40 };
        let (a, b) = (rng.gen_range(-scale..=scale), rng.gen_range(-scale..=scale));
        let (x, y) = (CanonInt::from(a), CanonInt::from(b));
        let (ox, oy) = (BigInt::from(a), BigInt::from(b));
        ensure!(big(&int_arith(IntOp::Add, &x, &y)) == &ox + &oy, "{a} + {b}");
        ensure!(big(&int_arith(IntOp::Mul, &x, &y)) == &ox * &oy, "{a} * {b}");
        ensure!(big(&int_arith(IntOp::Neg, &x, &y)) == -&ox, "-{a}");

        let (p, q) = (rng.gen_range(-1_000_000i64..=1_000_000), rng.gen_range(-1000i64..=1000));
        let (r, s) = (rng.gen_range(-1_000_000i64..=1_000_000), rng.gen_range(-1000i64..=1000));
        if q == 0 || s == 0 {
            ensure!(CanonRat::from_bigints(BigInt::from(p), BigInt::zero()).is_err(), "zero denominator accepted");
            continue;
        }
        let (u, v) = (
            CanonRat::from_bigints(p.into(), q.into()).map_err(|e| e.to_string())?,
            CanonRat::from_bigints(r.into(), s.into()).map_err(|e| e.to_string())?,
        );
        let (ou, ov) = (BigRational::new(p.into(), q.into()), BigRational::new(r.into(), s.into()));
        ensure!(same(&u, &ou), "{p}/{q} canonicalizes to {u}");
        ensure!(same(&rat_arith(RatOp::Add, &u, &v).unwrap(), &(&ou + &ov)), "{u} + {v}");
        ensure!(same(&rat_arith(RatOp::Mul, &u, &v).unwrap(), &(&ou * &ov)), "{u} * {v}");
        ensure!(same(&rat_arith(RatOp::Neg, &u, &v).unwrap(), &(-&ou)), "-{u}");
        match rat_arith(RatOp::Inv, &u, &v) {
            Ok(inv) => ensure!(!ou.is_zero() && same(&inv, &(BigRational::one() / &ou)), "1/{u}"),
            Err(_) => ensure!(ou.is_zero(), "inverse of {u} refused"),
        }
        ensure!(u.cmp(&v) == ou.cmp(&ov), "{u} vs {v}");
    }

    let (x, y) = (w("01"), w("10"));
    let mut words = BTreeSet::new();
    for z in -30i64..=30 {
        let word = int_word(&CanonInt::from(z), &x, &y).map_err(|e| e.to_string())?;
        ensure!(words.insert(word.clone()), "{z} shares its word");
        let back = int_decode(&word, &x, &y).map_err(|e| e.to_string())?;
        ensure!(back.to_i64() == Some(z), "{z} -> {word} -> {back}");
    }
    let mut rats = 0;
    for p in -30i64..=30 {
        for q in 1i64..=30 {
            let value = CanonRat::frac(p, q);
            let word = rat_encode(&value, &x, &y).map_err(|e| e.to_string())?;
            let back = rat_decode(&word, &x, &y).map_err(|e| e.to_string())?;
            ensure!(same(&back, &BigRational::new(p.into(), q.into())), "{p}/{q} -> {word} -> {back}");
            rats += 1;
        }
    }
    Ok(format!("10^4 pairs match the oracle; 61 integers and {rats} fractions round-trip"))
}

fn reals() -> Outcome {
    let two = CanonRat::integer(2);
    let sqrt2 = CutReal::sqrt2();
    for k in 0..=20 {
        let (lo, hi) = real_approx(&sqrt2, k).map_err(|e| e.to_string())?;
        ensure!(lo.mul(&lo) < two && two <= hi.mul(&hi), "k={k}: ({lo}, {hi}] misses sqrt2");
        ensure!(hi.sub(&lo) <= CanonRat::pow2_neg(k), "k={k}: width {}", hi.sub(&lo));
    }
    let within = |x: &CutReal, target: &CanonRat, k: u32| -> Result<bool, String> {
        let (lo, hi) = real_approx(x, k).map_err(|e| e.to_string())?;
        let eps = CanonRat::pow2_neg(k);
        Ok(lo.sub(target).abs() <= eps && hi.sub(target).abs() <= eps)
    };
    let square = sqrt2.mul(&sqrt2).map_err(|e| e.to_string())?;
    ensure!(within(&square, &two, 10)?, "sqrt2 * sqrt2 is not within 2^-10 of 2");
    let seq = ModulusSequence::of_rationals("1 - 2^-n", |n| CanonRat::one().sub(&CanonRat::pow2_neg(n as u32)), |k| {
        k as u64 + 1
    });
    let limit = cauchy_limit(&seq).map_err(|e| e.to_string())?;
    ensure!(within(&limit, &CanonRat::one(), 12)?, "limit of 1 - 2^-n is not within 2^-12 of 1");
    Ok("sqrt2 brackets for k <= 20; product and limit within tolerance".into())
}

/// Rationals of `[0, 1]` as `(p, q)` in the order 0/1, 1/1, then by denominator and numerator.
fn canonical_order_oracle() -> impl Iterator<Item = (i128, i128)> {
    let gcd = |mut a: i128, mut b: i128| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    [(0, 1), (1, 1)]
        .into_iter()
        .chain((2i128..).flat_map(move |q| (1..q).filter(move |&p| gcd(p, q) == 1).map(move |p| (p, q))))
}

fn less((a, b): (i128, i128), (c, d): (i128, i128)) -> bool {
    a * d < c * b
}

fn same_frac(q: &CanonRat, (p, d): (i128, i128)) -> bool {
    *q.numer_big() == BigInt::from(p) && *q.denom_big() == BigInt::from(d)
}

fn diagonalization() -> Outcome {
    let indexing = Arc::new(CanonicalIndexing);
    let shapes: Vec<IndexedFamily<System>> = vec![
        IndexedFamily::lazy("words no longer than i", |i| {
            System::comprehension(format!("len <= {i}"), move |x: &Word| x.len() as u64 <= i)
        }),
        IndexedFamily::lazy("singleton of the i-th word", |i| System::finite([index_to_word(i).unwrap()])),
        IndexedFamily::lazy("indices divisible by i", |i| {
            System::comprehension(format!("multiples of {i}"), move |x: &Word| {
                word_to_index(x).is_ok_and(|n| n.get() % i == 0)
            })
        }),
    ];
    for fam in &shapes {
        let d = diagonal_subset(fam, indexing.clone());
        let report = verify_differs(&Constructed::Subset(d.clone()), &Family::Subsets(fam.clone()), 100, indexing.as_ref())
            .map_err(|e| e.to_string())?;
        ensure!(report.witnesses.len() == 100, "{}: {} witnesses", fam.description(), report.witnesses.len());
        for i in 1..=100u64 {
            let b = index_to_word(i).unwrap();
            ensure!(d.member(&b) != fam.at(i).unwrap().member(&b), "{}: member {i} not separated", fam.description());
        }
    }

    let steps = gap_sequences(&CanonicalRationals, &CanonRat::zero(), &CanonRat::one(), 50).map_err(|e| e.to_string())?;
    ensure!(steps.len() == 50, "{} gap steps", steps.len());
    let (mut lo, mut hi) = (CanonRat::zero(), CanonRat::one());
    for (k, (f, g)) in steps.iter().enumerate() {
        ensure!(lo < *f && f < g && *g < hi, "step {}: ({f}, {g}) not nested in ({lo}, {hi})", k + 1);
        (lo, hi) = (f.clone(), g.clone());
    }
    let (f50, g50) = steps.last().unwrap();
    for n in 1..=50 {
        let q = canonical_rational(n).unwrap();
        ensure!(q < *f50 || q > *g50, "element {n} ({q}) lies in the closed final gap");
    }
    // Brute-force least-index selection for the first steps.
    let (mut of, mut og) = ((0, 1), (1, 1));
    for (k, (f, g)) in steps.iter().take(6).enumerate() {
        of = canonical_order_oracle().find(|&q| less(of, q) && less(q, og)).unwrap();
        og = canonical_order_oracle().find(|&q| less(of, q) && less(q, og)).unwrap();
        ensure!(same_frac(f, of) && same_frac(g, og), "step {}: ({f}, {g}) but oracle {of:?} {og:?}", k + 1);
    }

    let members: Vec<CutReal> = (1..=50).map(|n| CutReal::from_rational(canonical_rational(n).unwrap())).collect();
    let fam = IndexedFamily::finite("first 50 canonical rationals", members);
    let x = missing_real(&fam, 64).map_err(|e| e.to_string())?;
    let (xlo, xhi) = real_approx(&x, 20).map_err(|e| e.to_string())?;
    for n in 1..=50 {
        let q = canonical_rational(n).unwrap();
        ensure!(q <= xlo || q > xhi, "rational {n} ({q}) inside ({xlo}, {xhi}]");
    }
    let report = verify_differs(&Constructed::Real(x), &Family::Reals(fam), 50, indexing.as_ref()).map_err(|e| e.to_string())?;
    ensure!(
        report.witnesses.len() == 50 && report.witnesses.iter().all(|(_, w)| matches!(w, Witness::Separator(_))),
        "{} separators",
        report.witnesses.len()
    );

    let pool: Vec<Word> = (1..=8).map(|i| index_to_word(i).unwrap()).collect();
    let mut rng = rng(9);
    let mut families = 0;
    for count in 1..=4u32 {
        for code in 0..5u32.pow(count) {
            let sizes: Vec<usize> = (0..count).map(|j| (code / 5u32.pow(j) % 5) as usize).collect();
            let orders: Vec<OrderComparator> = sizes
                .iter()
                .map(|&s| OrderComparator::chain(shuffled(&mut rng, &pool)[..s].to_vec()).unwrap())
                .collect();
            let fam = IndexedFamily::finite("chains", orders.clone());
            let t = missing_well_order(&fam, indexing.clone()).map_err(|e| e.to_string())?;
            t.check_well_order().map_err(|e| e.to_string())?;
            for (i, m) in orders.iter().enumerate() {
                ensure!(!order_isomorphic(&t, m).map_err(|e| e.to_string())?, "sizes {sizes:?}: isomorphic to member {}", i + 1);
            }
            families += 1;
        }
    }
    Ok(format!("3 subset shapes x 100; 50 nested gaps; 50 separations; {families} order families"))
}

fn choice() -> Outcome {
    let oracle = rule_index_oracle(10);
    let mut rng = rng(10);
    for _ in 0..100 {
        let n = rng.gen_range(1..=20);
        let words: Vec<String> = (0..n).map(|_| random_bits(&mut rng, 1, 10)).collect();
        let best = words.iter().min_by_key(|s| oracle[*s]).unwrap();
        for _ in 0..3 {
            let presented = shuffled(&mut rng, &words);
            let got = choose(&System::finite(presented.iter().map(|s| w(s))), 1 << 20);
            ensure!(got.as_ref().map(Word::to_string).as_deref() == Some(best.as_str()), "choose gave {got:?}, oracle {best}");
        }
        let set: BTreeSet<String> = words.iter().cloned().collect();
        let lazy = System::comprehension("listed", move |x: &Word| set.contains(&x.to_string()));
        let got = choose(&lazy, 2046);
        ensure!(got.as_ref().map(Word::to_string).as_deref() == Some(best.as_str()), "lazy choose gave {got:?}, oracle {best}");
    }
    Ok("100 systems, minimal index under 3 presentations each".into())
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wordsys")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn cli_goldens() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance-cli");
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let file = |name: &str, body: &str| -> String {
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p.display().to_string()
    };
    let prefixed = file("prefixed.txt", "0\n01\n");
    let two_bit = file("two_bit.txt", "00\n01\n10\n11\n");
    let broken = file("broken.txt", "0\n0x1\n");
    let missing = dir.join("absent.txt").display().to_string();

    ensure!(run_cli(&["index", "10"]) == (0, "4\n".into(), String::new()), "index 10");
    let (code, out, err) = run_cli(&["analyze-code", &prefixed]);
    ensure!(code == 0 && err.is_empty(), "analyze-code exit {code}");
    ensure!(out.lines().any(|l| l == "left_readable: false"), "analyze-code output {out:?}");
    ensure!(out.lines().any(|l| l == "violating_pair: 0 01"), "analyze-code output {out:?}");
    ensure!(
        run_cli(&["tokenize", &two_bit, "011"]) == (1, String::new(), "not a word over code; longest prefix: 01\n".into()),
        "tokenize 011"
    );

    let domain: [&[&str]; 5] = [
        &["analyze-code", &broken],
        &["analyze-code", &missing],
        &["word", "0"],
        &["decode-int", "--x", "01", "--y", "10", "0110"],
        &["real-approx", "pi", "-k", "3"],
    ];
    let usage: [&[&str]; 5] = [
        &["frobnicate"],
        &["index", "--bogus", "1"],
        &["index", "2"],
        &["word", "-3"],
        &["tokenize", &two_bit],
    ];
    for (expected, cases) in [(1, &domain), (2, &usage)] {
        for args in cases.iter() {
            let (code, out, err) = run_cli(args);
            ensure!(code == expected, "{args:?}: exit {code}, expected {expected}");
            ensure!(out.is_empty(), "{args:?}: wrote {out:?}");
            ensure!(err.lines().count() == 1 && err.ends_with('\n'), "{args:?}: diagnostic {err:?}");
        }
    }
    Ok("3 goldens byte-exact; 10 malformed invocations classified".into())
}
