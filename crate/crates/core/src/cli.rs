//! The `wordsys` command line.
//!
//! Exit status 0 on success, 1 on domain errors, 2 on usage errors. Every failure writes
//! exactly one line to the error stream.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::code::{derive_independent_expressive, FiniteCode};
use crate::diagonal::{
    diagonal_subset, gap_sequences, missing_function, missing_well_order, verify_differs, CanonicalIndexing,
    CanonicalRationals, Constructed, Family,
};
use crate::foundation::{element_of, internalize, Foundation};
use crate::numbering::{choose, index_to_word, word_to_index, CanonicalWords};
use crate::numeric::{builtin_real, int_decode, int_encode, int_word, rat_decode, rat_encode, real_approx};
use crate::numeric::{CanonInt, CanonRat};
use crate::system::System;
use crate::text::{parse_family, parse_word_list};
use crate::word::Word;

const DEFAULT_PROBE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Parser)]
#[command(name = "wordsys", version, about = "Binary words, codes, encodings and diagonal constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Readability flags of a code file
    AnalyzeCode { code: PathBuf },
    /// Split a word into code members
    Tokenize { code: PathBuf, word: Word },
    /// Split a code into two independent expressive codes
    DeriveExpressive { code: PathBuf },
    /// Canonical index of a word
    Index { word: Word },
    /// Word at a canonical index
    Word { index: u64 },
    /// First N words in canonical order
    Enumerate { count: u64 },
    /// Encode a signed integer
    EncodeInt {
        #[arg(long)]
        x: Word,
        #[arg(long)]
        y: Word,
        /// Check x and y against this foundation alphabet (needs --e0)
        #[arg(long, requires = "e0")]
        s0: Option<PathBuf>,
        #[arg(long, requires = "s0")]
        e0: Option<Word>,
        #[arg(allow_hyphen_values = true)]
        value: CanonInt,
    },
    /// Decode an integer word
    DecodeInt {
        #[arg(long)]
        x: Word,
        #[arg(long)]
        y: Word,
        word: Word,
    },
    /// Encode a rational p/q
    EncodeRat {
        #[arg(long)]
        x: Word,
        #[arg(long)]
        y: Word,
        #[arg(allow_hyphen_values = true)]
        value: CanonRat,
    },
    /// Decode a rational word
    DecodeRat {
        #[arg(long)]
        x: Word,
        #[arg(long)]
        y: Word,
        word: Word,
    },
    /// Enclosing interval of width at most 2^-k for sqrt2, e-partial or rational:<p>/<q>
    RealApprox {
        name: String,
        #[arg(short)]
        k: u32,
    },
    /// Build the diagonal object of a family file and list one witness per member
    DiagSubset {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        upto: u64,
        /// Values of the missing function (function families only)
        #[arg(long, default_value = "0")]
        x: Word,
        #[arg(long, default_value = "1")]
        y: Word,
    },
    /// Nested gaps over the canonical rationals of [0, 1]
    Gap {
        #[arg(long)]
        upto: usize,
    },
    /// Least-index member of a word list, or of the set it encodes over a foundation
    Choose {
        words: PathBuf,
        #[arg(long, requires_all = ["e0", "rep"])]
        s0: Option<PathBuf>,
        #[arg(long, requires_all = ["s0", "rep"])]
        e0: Option<Word>,
        #[arg(long, requires_all = ["s0", "e0"])]
        rep: Option<Word>,
        #[arg(long, default_value_t = DEFAULT_PROBE_LIMIT)]
        upto: u64,
    },
}

/// A failed command; always one line.
struct Failure(String);

fn fail<E: fmt::Display>(e: E) -> Failure {
    Failure(e.to_string().lines().next().unwrap_or_default().to_owned())
}

type Outcome = Result<(), Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{}", e.render());
            return 0;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let line = rendered.lines().next().unwrap_or("usage error");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "{msg}");
            1
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_code(path: &Path) -> Result<FiniteCode, Failure> {
    let words = parse_word_list(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    FiniteCode::new(words).map_err(fail)
}

fn foundation(s0: &Path, e0: Word) -> Result<Foundation, Failure> {
    Foundation::new(e0, read_code(s0)?).map_err(fail)
}

fn io(e: io::Error) -> Failure {
    fail(e)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::AnalyzeCode { code } => {
            let a = read_code(&code)?.analyze();
            writeln!(out, "right_readable: {}", a.right_readable).map_err(io)?;
            writeln!(out, "left_readable: {}", a.left_readable).map_err(io)?;
            writeln!(out, "alphabet: {}", a.alphabet).map_err(io)?;
            writeln!(out, "expressive: {}", a.expressive).map_err(io)?;
            match a.violating_pair {
                Some((s, l)) => writeln!(out, "violating_pair: {s} {l}"),
                None => writeln!(out, "violating_pair: none"),
            }
            .map_err(io)
        }
        Command::Tokenize { code, word } => {
            let tokens = read_code(&code)?.tokenize(&word).map_err(fail)?;
            let line: Vec<String> = tokens.iter().map(Word::to_string).collect();
            writeln!(out, "{}", line.join(" ")).map_err(io)
        }
        Command::DeriveExpressive { code } => {
            let (a, b) = derive_independent_expressive(&read_code(&code)?).map_err(fail)?;
            writeln!(out, "{a}").map_err(io)?;
            writeln!(out, "{b}").map_err(io)
        }
        Command::Index { word } => {
            let i = word_to_index(&word).map_err(fail)?;
            writeln!(out, "{}", i.get()).map_err(io)
        }
        Command::Word { index } => {
            let w = index_to_word(index).map_err(fail)?;
            writeln!(out, "{w}").map_err(io)
        }
        Command::Enumerate { count } => {
            for w in CanonicalWords::new().take(count as usize) {
                writeln!(out, "{w}").map_err(io)?;
            }
            Ok(())
        }
        Command::EncodeInt { x, y, s0, e0, value } => {
            let w = match (s0, e0) {
                (Some(s0), Some(e0)) => int_encode(&value, &foundation(&s0, e0)?, &x, &y),
                _ => int_word(&value, &x, &y),
            }
            .map_err(fail)?;
            writeln!(out, "{w}").map_err(io)
        }
        Command::DecodeInt { x, y, word } => {
            let z = int_decode(&word, &x, &y).map_err(fail)?;
            writeln!(out, "{z}").map_err(io)
        }
        Command::EncodeRat { x, y, value } => {
            let w = rat_encode(&value, &x, &y).map_err(fail)?;
            writeln!(out, "{w}").map_err(io)
        }
        Command::DecodeRat { x, y, word } => {
            let q = rat_decode(&word, &x, &y).map_err(fail)?;
            writeln!(out, "{q}").map_err(io)
        }
        Command::RealApprox { name, k } => {
            let r = builtin_real(&name).map_err(fail)?;
            let (lo, hi) = real_approx(&r, k).map_err(fail)?;
            writeln!(out, "lo: {lo}").map_err(io)?;
            writeln!(out, "hi: {hi}").map_err(io)
        }
        Command::DiagSubset { family, upto, x, y } => {
            let parsed = parse_family(&read(&family)?).map_err(|e| Failure(format!("{}: {e}", family.display())))?;
            let family = parsed.into_family(&family.display().to_string());
            let indexing = Arc::new(CanonicalIndexing);
            let constructed = match &family {
                Family::Subsets(f) => Constructed::Subset(diagonal_subset(f, indexing.clone())),
                Family::Functions(f) => Constructed::Function(missing_function(f, indexing.clone(), x, y).map_err(fail)?),
                Family::Orders(f) => {
                    for (i, m) in f.members().unwrap_or_default().iter().enumerate() {
                        m.check_well_order().map_err(|e| Failure(format!("member {}: {e}", i + 1)))?;
                    }
                    Constructed::Order(missing_well_order(f, indexing.clone()).map_err(fail)?)
                }
                Family::Reals(_) => unreachable!("family files hold no reals"),
            };
            let report = verify_differs(&constructed, &family, upto, indexing.as_ref()).map_err(fail)?;
            writeln!(out, "kind: {}", family.kind()).map_err(io)?;
            for (i, witness) in &report.witnesses {
                writeln!(out, "{i}: {witness}").map_err(io)?;
            }
            writeln!(out, "checked: {}", report.checked).map_err(io)
        }
        Command::Gap { upto } => {
            let steps = gap_sequences(&CanonicalRationals, &CanonRat::zero(), &CanonRat::one(), upto).map_err(fail)?;
            for (k, (f, g)) in steps.iter().enumerate() {
                writeln!(out, "{}: {f} {g}", k + 1).map_err(io)?;
            }
            Ok(())
        }
        Command::Choose { words, s0, e0, rep, upto } => {
            let listed = parse_word_list(&read(&words)?).map_err(|e| Failure(format!("{}: {e}", words.display())))?;
            let target = System::finite(listed);
            let candidates = match (s0, e0, rep) {
                (Some(s0), Some(e0), Some(rep)) => {
                    let f = Arc::new(foundation(&s0, e0)?);
                    let set = internalize(&target, &f, rep).map_err(fail)?;
                    System::comprehension(format!("members of {}", set.rep()), move |x| element_of(x, &set))
                }
                _ => target,
            };
            match choose(&candidates, upto) {
                Some(w) => writeln!(out, "{w}").map_err(io),
                None => Err(Failure(format!("no candidate among the first {upto} words"))),
            }
        }
    }
}
