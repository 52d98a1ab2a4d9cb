//! C ABI over `surface-conjugacy`.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free`. Every fallible call returns an [`SgStatus`]
//! and, on failure, stores a message readable with
//! [`sg_last_error_message`] on the same thread. Strings returned through
//! `char **` are freed with [`sg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use surface_conjugacy::oracle::{self, ClOutcome};
use surface_conjugacy::{
    format_word, parse_word, ConjugacyCertificate, Error, SurfaceGroup, Word, WordStyle,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidGenus = 4,
    GenusMismatch = 5,
    InvalidParameter = 6,
    Budget = 7,
    Contract = 8,
    Internal = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgWordStyle {
    /// Space-separated signed integers.
    Int = 0,
    /// `a..z` for generators, upper case for inverses.
    Alpha = 1,
}

impl From<SgWordStyle> for WordStyle {
    fn from(s: SgWordStyle) -> Self {
        match s {
            SgWordStyle::Int => WordStyle::Int,
            SgWordStyle::Alpha => WordStyle::Alpha,
        }
    }
}

pub struct SgGroup {
    inner: SurfaceGroup,
}

pub struct SgWord {
    inner: Word,
}

pub struct SgCertificate {
    inner: ConjugacyCertificate,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SgStatus {
    match e {
        Error::Parse { .. } | Error::InvalidLetter { .. } => SgStatus::Parse,
        Error::InvalidGenus(_) => SgStatus::InvalidGenus,
        Error::GenusMismatch { .. } => SgStatus::GenusMismatch,
        Error::InvalidParameter(_) | Error::OffsetOutOfRange { .. } => SgStatus::InvalidParameter,
        Error::Budget(_) => SgStatus::Budget,
        Error::Contract(_) | Error::InvalidRule(_) => SgStatus::Contract,
        _ => SgStatus::Internal,
    }
}

struct Failure(SgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SgStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics to a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside surface-conjugacy");
            SgStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn store_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|e| Failure(SgStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = value;
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn sg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn sg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_group_new(genus: u32, out: *mut *mut SgGroup) -> SgStatus {
    guard(|| {
        store(
            out,
            SgGroup {
                inner: SurfaceGroup::new(genus)?,
            },
        )
    })
}

/// # Safety
/// `group` must come from [`sg_group_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn sg_group_free(group: *mut SgGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Genus of `group`, or 0 for null.
///
/// # Safety
/// `group` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sg_group_genus(group: *const SgGroup) -> u32 {
    group.as_ref().map_or(0, |g| g.inner.genus().get())
}

/// # Safety
/// `text` must be a NUL-terminated string; pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sg_word_parse(
    group: *const SgGroup,
    text: *const c_char,
    style: SgWordStyle,
    out: *mut *mut SgWord,
) -> SgStatus {
    guard(|| {
        let g = deref(group, "group")?;
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure(SgStatus::InvalidUtf8, e.to_string()))?;
        store(
            out,
            SgWord {
                inner: parse_word(s, g.inner.genus(), style.into())?,
            },
        )
    })
}

/// Builds a word from `len` signed letters (`-i` is the inverse of `c_i`).
///
/// # Safety
/// `letters` must point to `len` readable values (or be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn sg_word_from_letters(
    group: *const SgGroup,
    letters: *const i32,
    len: usize,
    out: *mut *mut SgWord,
) -> SgStatus {
    guard(|| {
        let g = deref(group, "group")?;
        let signed: Vec<i64> = if len == 0 {
            Vec::new()
        } else {
            if letters.is_null() {
                return Err(null("letters"));
            }
            std::slice::from_raw_parts(letters, len)
                .iter()
                .map(|&l| l as i64)
                .collect()
        };
        store(
            out,
            SgWord {
                inner: g.inner.word(&signed)?,
            },
        )
    })
}

/// # Safety
/// `word` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn sg_word_free(word: *mut SgWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Length of `word`, or 0 for null.
///
/// # Safety
/// `word` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sg_word_len(word: *const SgWord) -> usize {
    word.as_ref().map_or(0, |w| w.inner.len())
}

/// Copies up to `cap` signed letters into `buf` and returns the word length.
///
/// # Safety
/// `buf` must have room for `cap` values (or be null when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn sg_word_letters(word: *const SgWord, buf: *mut i32, cap: usize) -> usize {
    let Some(w) = word.as_ref() else { return 0 };
    let signed = w.inner.to_signed();
    if !buf.is_null() {
        let n = cap.min(signed.len());
        ptr::copy_nonoverlapping(signed.as_ptr(), buf, n);
    }
    signed.len()
}

/// # Safety
/// Pointers must be valid; free the result with [`sg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sg_word_format(
    word: *const SgWord,
    style: SgWordStyle,
    out: *mut *mut c_char,
) -> SgStatus {
    guard(|| {
        let w = deref(word, "word")?;
        store_string(out, format_word(&w.inner, style.into())?)
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sg_normal_form(
    group: *const SgGroup,
    word: *const SgWord,
    out: *mut *mut SgWord,
) -> SgStatus {
    guard(|| {
        let g = deref(group, "group")?;
        let w = deref(word, "word")?;
        store(
            out,
            SgWord {
                inner: g.inner.nf(&w.inner)?,
            },
        )
    })
}

/// Conjugacy-class normal form.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sg_class_normal_form(
    group: *const SgGroup,
    word: *const SgWord,
    out: *mut *mut SgWord,
) -> SgStatus {
    guard(|| {
        let g = deref(group, "group")?;
        let w = deref(word, "word")?;
        store(
            out,
            SgWord {
                inner: g.inner.cyclic_normal_form(&w.inner)?.class_nf,
            },
        )
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sg_dehn_equal(
    group: *const SgGroup,
    u: *const SgWord,
    v: *const SgWord,
    out: *mut bool,
) -> SgStatus {
    guard(|| {
        let g = deref(group, "group")?;
        let (u, v) = (deref(u, "u")?, deref(v, "v")?);
        write(out, oracle::dehn_equal(&g.inner, &u.inner, &v.inner)?)
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sg_is_conjugate(
    group: *const SgGroup,
    u: *const SgWord,
    v: *const SgWord,
    out: *mut bool,
) -> SgStatus {
    guard(|| {
        let g = deref(group, "group")?;
        let (u, v) = (deref(u, "u")?, deref(v, "v")?);
        write(out, g.inner.is_conjugate(&u.inner, &v.inner)?)
    })
}

/// Certificate for `w^-1 u w = v`. With `exact`, also runs the exact
/// conjugator-length search under `max_depth` / `max_states`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sg_conjugator(
    group: *const SgGroup,
    u: *const SgWord,
    v: *const SgWord,
    exact: bool,
    max_depth: usize,
    max_states: usize,
    out: *mut *mut SgCertificate,
) -> SgStatus {
    guard(|| {
        let g = deref(group, "group")?;
        let (u, v) = (deref(u, "u")?, deref(v, "v")?);
        let cert = if exact {
            g.inner
                .conjugator_with_exact(&u.inner, &v.inner, max_depth, max_states)?
        } else {
            g.inner.conjugator(&u.inner, &v.inner)?
        };
        store(out, SgCertificate { inner: cert })
    })
}

/// # Safety
/// `cert` must come from [`sg_conjugator`] or be null.
#[no_mangle]
pub unsafe extern "C" fn sg_certificate_free(cert: *mut SgCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// # Safety
/// `cert` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sg_certificate_is_conjugate(cert: *const SgCertificate) -> bool {
    cert.as_ref().is_some_and(|c| c.inner.conjugate)
}

/// The conjugator, or null in `*out` when the words are not conjugate.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sg_certificate_conjugator(
    cert: *const SgCertificate,
    out: *mut *mut SgWord,
) -> SgStatus {
    guard(|| {
        let c = deref(cert, "certificate")?;
        match &c.inner.conjugator {
            Some(w) => store(out, SgWord { inner: w.clone() }),
            None => write(out, ptr::null_mut()),
        }
    })
}

/// Conjugator length, or -1 when not conjugate.
///
/// # Safety
/// `cert` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sg_certificate_conjugator_len(cert: *const SgCertificate) -> i64 {
    cert.as_ref()
        .and_then(|c| c.inner.conjugator_len)
        .map_or(-1, |l| l as i64)
}

/// `floor((|u| + |v|) / 2) + 8g - 1`, or 0 for null.
///
/// # Safety
/// `cert` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sg_certificate_bound(cert: *const SgCertificate) -> usize {
    cert.as_ref().map_or(0, |c| c.inner.bound)
}

/// # Safety
/// `cert` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sg_certificate_r_sum(cert: *const SgCertificate) -> usize {
    cert.as_ref().map_or(0, |c| c.inner.r_sum)
}

/// Exact conjugator length, or -1 when unknown.
///
/// # Safety
/// `cert` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sg_certificate_exact_cl(cert: *const SgCertificate) -> i64 {
    cert.as_ref()
        .and_then(|c| c.inner.exact_cl)
        .map_or(-1, |l| l as i64)
}

/// # Safety
/// Pointers must be valid; free the result with [`sg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sg_certificate_to_json(
    cert: *const SgCertificate,
    out: *mut *mut c_char,
) -> SgStatus {
    guard(|| {
        let c = deref(cert, "certificate")?;
        store_string(out, c.inner.to_json())
    })
}

/// Breadth-first conjugator length; `*out` is -1 when the search is
/// exhausted before reaching `v`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sg_exact_cl(
    group: *const SgGroup,
    u: *const SgWord,
    v: *const SgWord,
    max_depth: usize,
    max_states: usize,
    out: *mut i64,
) -> SgStatus {
    guard(|| {
        let g = deref(group, "group")?;
        let (u, v) = (deref(u, "u")?, deref(v, "v")?);
        let d = match oracle::exact_cl(&g.inner, &u.inner, &v.inner, max_depth, max_states)? {
            ClOutcome::Found(d) => d as i64,
            ClOutcome::Exhausted => -1,
        };
        write(out, d)
    })
}
