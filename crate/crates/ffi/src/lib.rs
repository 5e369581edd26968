//! C ABI over `wordsys`.
//!
//! Words and codes cross the boundary as opaque handles. Every fallible call returns a
//! [`WsStatus`] and writes its result through an out-pointer; on failure the message is
//! available from [`ws_last_error`] until the next failing call on the same thread.
//! Strings returned to the caller are owned by it and released with [`ws_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wordsys::numeric::{builtin_real, int_decode, int_word, rat_decode, rat_encode, real_approx};
use wordsys::text::parse_word_list;
use wordsys::{index_to_word, word_to_index, CanonInt, CanonRat, FiniteCode, Word};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WsStatus {
    Ok = 0,
    /// A required pointer was null.
    NullArgument = 1,
    /// A string argument was not UTF-8.
    InvalidUtf8 = 2,
    /// A textual argument did not parse.
    Parse = 3,
    /// The operation rejected its arguments.
    Domain = 4,
    /// An internal panic was caught.
    Panic = 5,
}

/// A nonempty binary word.
pub struct WsWord(Word);

/// A finite code.
pub struct WsCode(FiniteCode);

/// Readability flags of a code. `violating_shorter`/`violating_longer` are null when there
/// is no violating pair; otherwise the caller frees them with [`ws_string_free`].
#[repr(C)]
#[derive(Debug)]
pub struct WsCodeAnalysis {
    pub right_readable: bool,
    pub left_readable: bool,
    pub alphabet: bool,
    pub expressive: bool,
    pub violating_shorter: *mut c_char,
    pub violating_longer: *mut c_char,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Fault(WsStatus, String);

impl Fault {
    fn parse(e: impl ToString) -> Fault {
        Fault(WsStatus::Parse, e.to_string())
    }

    fn domain(e: impl ToString) -> Fault {
        Fault(WsStatus::Domain, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(body: impl FnOnce() -> Result<(), Fault>) -> WsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => WsStatus::Ok,
        Ok(Err(Fault(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            WsStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fault> {
    if s.is_null() {
        return Err(Fault(WsStatus::NullArgument, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Fault(WsStatus::InvalidUtf8, e.to_string()))
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, Fault> {
    p.as_ref().ok_or_else(|| Fault(WsStatus::NullArgument, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fault> {
    if out.is_null() {
        return Err(Fault(WsStatus::NullArgument, "null out-pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn owned(s: impl Into<Vec<u8>>) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failing call on this thread; empty if none. Valid until the next
/// failing call on this thread; do not free.
#[no_mangle]
pub extern "C" fn ws_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ws_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a word from its `0`/`1` text form.
///
/// # Safety
/// `s` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ws_word_parse(s: *const c_char, out: *mut *mut WsWord) -> WsStatus {
    guard(|| {
        let w: Word = text(s)?.parse().map_err(Fault::parse)?;
        put(out, Box::into_raw(Box::new(WsWord(w))))
    })
}

/// Releases a word handle. Null is ignored.
///
/// # Safety
/// `w` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ws_word_free(w: *mut WsWord) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Text form of a word; null if `w` is null.
///
/// # Safety
/// `w` is a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ws_word_to_string(w: *const WsWord) -> *mut c_char {
    match w.as_ref() {
        Some(w) => owned(w.0.to_string()),
        None => ptr::null_mut(),
    }
}

/// Length in bits; 0 if `w` is null.
///
/// # Safety
/// `w` is a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ws_word_len(w: *const WsWord) -> usize {
    w.as_ref().map_or(0, |w| w.0.len())
}

/// Canonical index of a word.
///
/// # Safety
/// `w` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ws_word_index(w: *const WsWord, out: *mut u64) -> WsStatus {
    guard(|| {
        let i = word_to_index(&borrow(w)?.0).map_err(Fault::domain)?;
        put(out, i.get())
    })
}

/// Word at a canonical index (at least 1).
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ws_word_from_index(n: u64, out: *mut *mut WsWord) -> WsStatus {
    guard(|| {
        let w = index_to_word(n).map_err(Fault::domain)?;
        put(out, Box::into_raw(Box::new(WsWord(w))))
    })
}

/// Builds a code from a word list: one word per line, `#` comments and blank lines ignored.
///
/// # Safety
/// `words` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ws_code_parse(words: *const c_char, out: *mut *mut WsCode) -> WsStatus {
    guard(|| {
        let list = parse_word_list(text(words)?).map_err(Fault::parse)?;
        let code = FiniteCode::new(list).map_err(Fault::domain)?;
        put(out, Box::into_raw(Box::new(WsCode(code))))
    })
}

/// Releases a code handle. Null is ignored.
///
/// # Safety
/// `c` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ws_code_free(c: *mut WsCode) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ws_code_analyze(c: *const WsCode, out: *mut WsCodeAnalysis) -> WsStatus {
    guard(|| {
        let a = borrow(c)?.0.analyze();
        let (shorter, longer) = match a.violating_pair {
            Some((s, l)) => (owned(s.to_string()), owned(l.to_string())),
            None => (ptr::null_mut(), ptr::null_mut()),
        };
        put(
            out,
            WsCodeAnalysis {
                right_readable: a.right_readable,
                left_readable: a.left_readable,
                alphabet: a.alphabet,
                expressive: a.expressive,
                violating_shorter: shorter,
                violating_longer: longer,
            },
        )
    })
}

/// Splits `w` into code members; the tokens are written space-separated.
///
/// # Safety
/// `c` and `w` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ws_code_tokenize(c: *const WsCode, w: *const WsWord, out: *mut *mut c_char) -> WsStatus {
    guard(|| {
        let tokens = borrow(c)?.0.tokenize(&borrow(w)?.0).map_err(Fault::domain)?;
        let line: Vec<String> = tokens.iter().map(Word::to_string).collect();
        put(out, owned(line.join(" ")))
    })
}

/// Encodes a signed decimal integer over the alphabet `{x, y}`.
///
/// # Safety
/// `z` is a NUL-terminated string; `x`, `y` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ws_int_encode(
    z: *const c_char,
    x: *const WsWord,
    y: *const WsWord,
    out: *mut *mut WsWord,
) -> WsStatus {
    guard(|| {
        let z: CanonInt = text(z)?.parse().map_err(Fault::parse)?;
        let w = int_word(&z, &borrow(x)?.0, &borrow(y)?.0).map_err(Fault::domain)?;
        put(out, Box::into_raw(Box::new(WsWord(w))))
    })
}

/// Decodes an integer word; the result is written in decimal.
///
/// # Safety
/// `w`, `x`, `y` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ws_int_decode(
    w: *const WsWord,
    x: *const WsWord,
    y: *const WsWord,
    out: *mut *mut c_char,
) -> WsStatus {
    guard(|| {
        let z = int_decode(&borrow(w)?.0, &borrow(x)?.0, &borrow(y)?.0).map_err(Fault::domain)?;
        put(out, owned(z.to_string()))
    })
}

/// Encodes a rational given as `p` or `p/q`.
///
/// # Safety
/// `q` is a NUL-terminated string; `x`, `y` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ws_rat_encode(
    q: *const c_char,
    x: *const WsWord,
    y: *const WsWord,
    out: *mut *mut WsWord,
) -> WsStatus {
    guard(|| {
        let q: CanonRat = text(q)?.parse().map_err(Fault::parse)?;
        let w = rat_encode(&q, &borrow(x)?.0, &borrow(y)?.0).map_err(Fault::domain)?;
        put(out, Box::into_raw(Box::new(WsWord(w))))
    })
}

/// Decodes a rational word; the result is written as `p/q` in lowest terms.
///
/// # Safety
/// `w`, `x`, `y` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ws_rat_decode(
    w: *const WsWord,
    x: *const WsWord,
    y: *const WsWord,
    out: *mut *mut c_char,
) -> WsStatus {
    guard(|| {
        let q = rat_decode(&borrow(w)?.0, &borrow(x)?.0, &borrow(y)?.0).map_err(Fault::domain)?;
        put(out, owned(q.to_string()))
    })
}

/// Rational bounds `lo < r <= hi` with `hi - lo <= 2^-k` for a builtin real
/// (`sqrt2`, `e-partial`, `rational:<p>/<q>`). Both bounds are written as `p/q`.
///
/// # Safety
/// `name` is a NUL-terminated string; `lo` and `hi` are writable.
#[no_mangle]
pub unsafe extern "C" fn ws_real_approx(
    name: *const c_char,
    k: u32,
    lo: *mut *mut c_char,
    hi: *mut *mut c_char,
) -> WsStatus {
    guard(|| {
        if lo.is_null() || hi.is_null() {
            return Err(Fault(WsStatus::NullArgument, "null out-pointer".into()));
        }
        let r = builtin_real(text(name)?).map_err(Fault::parse)?;
        let (l, h) = real_approx(&r, k).map_err(Fault::domain)?;
        put(lo, owned(l.to_string()))?;
        put(hi, owned(h.to_string()))
    })
}
