//! C ABI over `treeset`.
//!
//! Every fallible call returns a [`TsStatus`] and writes its result through an
//! out-pointer. Strings returned to the caller are owned by the caller and
//! must be released with [`ts_string_free`]; factor sets with
//! [`ts_factor_set_free`]. The message of the last failure on the calling
//! thread is available from [`ts_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use treeset::codes::{CodeSet, CodingMorphism};
use treeset::decoding::{max_bifix_decode, DecodingJob};
use treeset::freegroup::{fold, is_basis, tame_decompose, Index, SignedWord, TameOutcome};
use treeset::generators::{factor_set_of_fixed_point, FixedPointSpec, Morphism};
use treeset::iet::IntervalExchange;
use treeset::presets::Preset;
use treeset::returns::return_words;
use treeset::words::{is_tree_set, Alphabet, FactorSet};
use treeset::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    Internal = 5,
    Panic = 6,
}

/// Opaque truncated factor set.
pub struct TsFactorSet {
    inner: FactorSet,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TsStatus {
    match e {
        Error::Parse(_)
        | Error::LetterNotInAlphabet(_)
        | Error::EmptyWordInCode
        | Error::LengthsNotNormalized(_)
        | Error::NonPositiveLength(_)
        | Error::MixedRadicand(..) => TsStatus::Parse,
        Error::Invalid(_) => TsStatus::Internal,
        _ => TsStatus::Precondition,
    }
}

enum Failure {
    Status(TsStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            TsStatus::Ok
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_last_error(&msg);
            s
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("panic inside treeset");
            TsStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Status(TsStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Status(TsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn optional_text<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

unsafe fn set_ref<'a>(p: *const TsFactorSet) -> Result<&'a FactorSet, Failure> {
    p.as_ref().map(|s| &s.inner).ok_or_else(|| Failure::Status(TsStatus::NullArgument, "set is null".into()))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Status(TsStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_set(out: *mut *mut TsFactorSet, s: FactorSet) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Status(TsStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(Box::into_raw(Box::new(TsFactorSet { inner: s })));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::Status(TsStatus::Internal, "interior NUL".into()))?;
    write(out, c.into_raw())
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string(v).map_err(|e| Failure::Status(TsStatus::Internal, e.to_string()))
}

fn signed_words(words: &str, alphabet: Option<&str>) -> Result<(Alphabet, Vec<SignedWord>), Failure> {
    let alphabet = match alphabet {
        Some(a) => Alphabet::from_chars(a)?,
        None => {
            let mut letters: Vec<char> = words.chars().filter(|c| c.is_alphabetic()).collect();
            letters.sort_unstable();
            letters.dedup();
            Alphabet::from_chars(&letters.into_iter().collect::<String>())?
        }
    };
    let x = words
        .split(',')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(|w| SignedWord::parse(&alphabet, w))
        .collect::<treeset::Result<Vec<_>>>()?;
    Ok((alphabet, x))
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `set` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ts_factor_set_free(set: *mut TsFactorSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Factors of length at most `depth` of a named preset.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_factor_set_from_preset(
    name: *const c_char,
    depth: usize,
    out: *mut *mut TsFactorSet,
) -> TsStatus {
    guard(|| {
        let s = Preset::by_name(text(name, "name")?)?.factor_set(depth)?;
        write_set(out, s)
    })
}

/// Factors of the fixed point of `rules` (e.g. `a->ab; b->a`) from `seed`,
/// or from the first letter when `seed` is null.
///
/// # Safety
/// `rules` and a non-null `seed` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_factor_set_from_morphism(
    rules: *const c_char,
    seed: *const c_char,
    depth: usize,
    out: *mut *mut TsFactorSet,
) -> TsStatus {
    guard(|| {
        let m = Morphism::parse(text(rules, "rules")?)?;
        let seed = match optional_text(seed, "seed")? {
            Some(s) => s.to_string(),
            None => m.source().symbol(0).to_string(),
        };
        let spec = FixedPointSpec::with_symbol(m, &seed)?;
        write_set(out, factor_set_of_fixed_point(&spec, depth)?)
    })
}

/// Factors of an interval exchange given in the text format of the CLI.
///
/// # Safety
/// `spec` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_factor_set_from_iet(
    spec: *const c_char,
    depth: usize,
    out: *mut *mut TsFactorSet,
) -> TsStatus {
    guard(|| {
        let t = IntervalExchange::parse(text(spec, "spec")?)?;
        write_set(out, t.factor_set(depth)?)
    })
}

/// Rebuilds a set from the JSON written by [`ts_factor_set_to_json`].
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_factor_set_from_json(json: *const c_char, out: *mut *mut TsFactorSet) -> TsStatus {
    guard(|| {
        let parsed = serde_json::from_str(text(json, "json")?).map_err(|e| Error::Parse(e.to_string()))?;
        write_set(out, FactorSet::from_json(&parsed)?)
    })
}

/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_factor_set_depth(set: *const TsFactorSet, out: *mut usize) -> TsStatus {
    guard(|| write(out, set_ref(set)?.depth()))
}

/// Number of words, the empty word included.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_factor_set_len(set: *const TsFactorSet, out: *mut usize) -> TsStatus {
    guard(|| write(out, set_ref(set)?.len()))
}

/// Number of words of length `n`.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_factor_set_complexity(set: *const TsFactorSet, n: usize, out: *mut usize) -> TsStatus {
    guard(|| {
        let p = set_ref(set)?.complexity(n)?;
        write(out, p)
    })
}

/// # Safety
/// `set` must be a live handle; `word` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_factor_set_contains(
    set: *const TsFactorSet,
    word: *const c_char,
    out: *mut bool,
) -> TsStatus {
    guard(|| {
        let s = set_ref(set)?;
        let w = s.parse(text(word, "word")?)?;
        write(out, s.contains(&w))
    })
}

/// Whether every extension graph of a word of length at most `up_to` is a tree.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_factor_set_is_tree(set: *const TsFactorSet, up_to: usize, out: *mut bool) -> TsStatus {
    guard(|| {
        let v = is_tree_set(set_ref(set)?, up_to)?;
        write(out, v.holds())
    })
}

/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_factor_set_to_json(set: *const TsFactorSet, out: *mut *mut c_char) -> TsStatus {
    guard(|| {
        let s = json(&set_ref(set)?.to_json())?;
        write_string(out, s)
    })
}

/// Return words of `word` as JSON.
///
/// # Safety
/// `set` must be a live handle; `word` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_return_words_json(
    set: *const TsFactorSet,
    word: *const c_char,
    out: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        let s = set_ref(set)?;
        let w = s.member(text(word, "word")?)?;
        let rd = return_words(s, &w)?;
        write_string(out, json(&rd.to_json(s.depth()))?)
    })
}

/// Maximal bifix decoding of `set` by `coding` (e.g. `c->aa; d->ab; e->ba`).
///
/// # Safety
/// `set` must be a live handle; `coding` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_decode(
    set: *const TsFactorSet,
    coding: *const c_char,
    out: *mut *mut TsFactorSet,
) -> TsStatus {
    guard(|| {
        let s = set_ref(set)?;
        let f = CodingMorphism::parse(s.alphabet(), text(coding, "coding")?)?;
        let t = max_bifix_decode(&DecodingJob::new(s.clone(), f)?)?;
        write_set(out, t)
    })
}

/// Whether comma-separated `words` form a basis of the free group on
/// `alphabet` (the letters used when null).
///
/// # Safety
/// `words` and a non-null `alphabet` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_fg_is_basis(words: *const c_char, alphabet: *const c_char, out: *mut bool) -> TsStatus {
    guard(|| {
        let (a, x) = signed_words(text(words, "words")?, optional_text(alphabet, "alphabet")?)?;
        write(out, is_basis(&x, &a))
    })
}

/// Index of the subgroup generated by comma-separated `words`; `0` when
/// the index is infinite.
///
/// # Safety
/// `words` and a non-null `alphabet` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_fg_index(words: *const c_char, alphabet: *const c_char, out: *mut usize) -> TsStatus {
    guard(|| {
        let (a, x) = signed_words(text(words, "words")?, optional_text(alphabet, "alphabet")?)?;
        let index = match fold(a.len(), x).index() {
            Index::Finite(n) => n,
            Index::Infinite => 0,
        };
        write(out, index)
    })
}

/// Elementary decomposition of a positive basis as a JSON step list.
/// Fails with `Precondition` when the greedy reduction gets stuck.
///
/// # Safety
/// `words` and a non-null `alphabet` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_tame_decompose_json(
    words: *const c_char,
    alphabet: *const c_char,
    out: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        let (a, x) = signed_words(text(words, "words")?, optional_text(alphabet, "alphabet")?)?;
        let positive = x
            .iter()
            .map(|w| w.as_positive().ok_or_else(|| Error::Parse(format!("`{}` is not positive", w.format(&a)))))
            .collect::<treeset::Result<Vec<_>>>()?;
        match tame_decompose(&CodeSet::new(a.clone(), positive)?)? {
            TameOutcome::Tame(d) => {
                let steps: Vec<_> = d.steps.iter().map(|s| s.to_json(&a)).collect();
                write_string(out, json(&steps)?)
            }
            TameOutcome::NotTame { stuck } | TameOutcome::UndeterminedByGreedy { stuck } => Err(Failure::Status(
                TsStatus::Precondition,
                format!("no elementary step applies to {}", stuck.format_words().join(", ")),
            )),
        }
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ts_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}
