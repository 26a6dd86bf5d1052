//! C ABI for the esli toolkit.
//!
//! Every function returns an [`EsliStatus`]. Objects cross the boundary as opaque
//! handles created by a `*_new`/`*_parse` function and released with the matching
//! `*_free`. After a failing call, [`esli_last_error`] copies a message describing the
//! failure for the calling thread. Panics are caught and reported as
//! `ESLI_STATUS_INTERNAL`.

use esli::congruence::{least_inverse_congruence, Congruence};
use esli::constructors::named_small;
use esli::embedding::{ArrowAlgebra, DerivationConfig, PrimeRule};
use esli::io::CayleyFile;
use esli::rewriting::{parse_term, reduce, theta_cs_equal, Alphabet};
use esli::semigroupoid::{DaggerPolicy, ExtensionContext};
use esli::{Error, FiniteSemigroup};
use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EsliStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// The input violates a precondition of the operation.
    Precondition = 4,
    /// A check ran and found a counterexample.
    VerdictFailed = 5,
    /// The output buffer is too small; the required size was written.
    BufferTooSmall = 6,
    OutOfRange = 7,
    Internal = 8,
}

/// Which inverse serves as the distinguished inverse of each element.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EsliDagger {
    Lowest = 0,
    Highest = 1,
}

/// Opaque finite semigroup.
pub struct EsliSemigroup(FiniteSemigroup);

/// Opaque extension context: a semigroup with a congruence and its derived semigroupoid.
pub struct EsliContext(ExtensionContext);

/// Flag bits reported by [`esli_semigroup_flags`].
pub const ESLI_FLAG_REGULAR: u32 = 1;
pub const ESLI_FLAG_INVERSE: u32 = 1 << 1;
pub const ESLI_FLAG_ORTHODOX: u32 = 1 << 2;
pub const ESLI_FLAG_E_SOLID: u32 = 1 << 3;
pub const ESLI_FLAG_LOCALLY_INVERSE: u32 = 1 << 4;
pub const ESLI_FLAG_COMPLETELY_SIMPLE: u32 = 1 << 5;
pub const ESLI_FLAG_GROUP: u32 = 1 << 6;
pub const ESLI_FLAG_BAND: u32 = 1 << 7;

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(e: &Error) -> EsliStatus {
    match e {
        Error::Syntax { .. } | Error::Format(_) | Error::UnknownKind(_) => EsliStatus::Parse,
        Error::OutOfRange { .. } | Error::NoSuchElement(_) => EsliStatus::OutOfRange,
        Error::Io(_) => EsliStatus::Internal,
        _ => EsliStatus::Precondition,
    }
}

fn fail(e: Error) -> EsliStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn guard(f: impl FnOnce() -> EsliStatus) -> EsliStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            EsliStatus::Internal
        }
    }
}

macro_rules! nonnull {
    ($($p:expr),+) => {
        if false $(|| $p.is_null())+ {
            set_error("null pointer argument");
            return EsliStatus::NullPointer;
        }
    };
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, EsliStatus> {
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        EsliStatus::InvalidUtf8
    })
}

/// Copy `s` with a trailing NUL into `buf`. `*len` is the capacity on entry and the
/// required size including the NUL on exit.
unsafe fn write_str(s: &str, buf: *mut c_char, len: *mut usize) -> EsliStatus {
    let need = s.len() + 1;
    let cap = *len;
    *len = need;
    if buf.is_null() || cap < need {
        return EsliStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    *buf.add(s.len()) = 0;
    EsliStatus::Ok
}

fn boxed<T>(v: T, out: *mut *mut T) -> EsliStatus {
    unsafe { *out = Box::into_raw(Box::new(v)) };
    EsliStatus::Ok
}

/// Copy the last error message of this thread into `buf` (see [`esli_term_reduce`] for
/// the buffer convention).
///
/// # Safety
/// `len` must be valid; `buf` must hold `*len` bytes or be null.
#[no_mangle]
pub unsafe extern "C" fn esli_last_error(buf: *mut c_char, len: *mut usize) -> EsliStatus {
    nonnull!(len);
    LAST_ERROR.with(|e| write_str(&e.borrow(), buf, len))
}

/// The library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn esli_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Build a semigroup from a row-major Cayley table of `order * order` entries.
///
/// # Safety
/// `table` must point to `order * order` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn esli_semigroup_from_table(
    order: usize,
    table: *const usize,
    out: *mut *mut EsliSemigroup,
) -> EsliStatus {
    nonnull!(table, out);
    guard(|| {
        let t = std::slice::from_raw_parts(table, order * order);
        match FiniteSemigroup::from_table(order, t) {
            Ok(s) => boxed(EsliSemigroup(s), out),
            Err(e) => fail(e),
        }
    })
}

/// Parse a `cayley-table v1` document.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn esli_semigroup_parse(text: *const c_char, out: *mut *mut EsliSemigroup) -> EsliStatus {
    nonnull!(text, out);
    guard(|| {
        let t = match str_arg(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match CayleyFile::parse(t) {
            Ok(c) => boxed(EsliSemigroup(c.semigroup), out),
            Err(e) => fail(e),
        }
    })
}

/// One of the built-in small semigroups, such as `"B2"` or `"rect2x2"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn esli_semigroup_named(name: *const c_char, out: *mut *mut EsliSemigroup) -> EsliStatus {
    nonnull!(name, out);
    guard(|| {
        let n = match str_arg(name) {
            Ok(n) => n,
            Err(s) => return s,
        };
        match named_small(n) {
            Ok(s) => boxed(EsliSemigroup(s), out),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn esli_semigroup_free(s: *mut EsliSemigroup) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn esli_semigroup_order(s: *const EsliSemigroup, out: *mut usize) -> EsliStatus {
    nonnull!(s, out);
    *out = (*s).0.order();
    EsliStatus::Ok
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn esli_semigroup_mul(
    s: *const EsliSemigroup,
    a: usize,
    b: usize,
    out: *mut usize,
) -> EsliStatus {
    nonnull!(s, out);
    let s = &(*s).0;
    if a >= s.order() || b >= s.order() {
        set_error(format!("element out of range for order {}", s.order()));
        return EsliStatus::OutOfRange;
    }
    *out = s.mul(a, b);
    EsliStatus::Ok
}

/// Structural flags as a bit set of the `ESLI_FLAG_*` constants.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn esli_semigroup_flags(s: *const EsliSemigroup, out: *mut u32) -> EsliStatus {
    nonnull!(s, out);
    guard(|| {
        let s = &(*s).0;
        let bits = [
            (ESLI_FLAG_REGULAR, s.is_regular()),
            (ESLI_FLAG_INVERSE, s.is_inverse()),
            (ESLI_FLAG_ORTHODOX, s.is_orthodox()),
            (ESLI_FLAG_E_SOLID, s.is_e_solid()),
            (ESLI_FLAG_LOCALLY_INVERSE, s.is_locally_inverse()),
            (ESLI_FLAG_COMPLETELY_SIMPLE, s.is_completely_simple()),
            (ESLI_FLAG_GROUP, s.is_group()),
            (ESLI_FLAG_BAND, s.is_band()),
        ];
        *out = bits.iter().filter(|b| b.1).fold(0, |acc, b| acc | b.0);
        EsliStatus::Ok
    })
}

/// Class labels of the least inverse congruence, one per element, written to
/// `labels[0..order]`.
///
/// # Safety
/// `s` must be a live handle and `labels` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn esli_least_inverse(s: *const EsliSemigroup, labels: *mut usize, len: usize) -> EsliStatus {
    nonnull!(s, labels);
    guard(|| {
        let s = &(*s).0;
        if len < s.order() {
            set_error(format!("need {} labels", s.order()));
            return EsliStatus::BufferTooSmall;
        }
        match least_inverse_congruence(s) {
            Ok(r) => {
                std::ptr::copy_nonoverlapping(r.labels().as_ptr(), labels, s.order());
                EsliStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Build an extension context. With `labels` null the least inverse congruence is used;
/// otherwise `labels[0..order]` gives the congruence classes.
///
/// # Safety
/// `s` must be a live handle, `labels` null or holding `order` values, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn esli_context_new(
    s: *const EsliSemigroup,
    labels: *const usize,
    dagger: EsliDagger,
    out: *mut *mut EsliContext,
) -> EsliStatus {
    nonnull!(s, out);
    guard(|| {
        let s = &(*s).0;
        let rho = if labels.is_null() {
            least_inverse_congruence(s)
        } else {
            Congruence::from_labels(s, std::slice::from_raw_parts(labels, s.order()))
        };
        let policy = match dagger {
            EsliDagger::Lowest => DaggerPolicy::Lowest,
            EsliDagger::Highest => DaggerPolicy::Highest,
        };
        match rho.and_then(|r| ExtensionContext::build(s.clone(), r, policy)) {
            Ok(c) => boxed(EsliContext(c), out),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `c` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn esli_context_free(c: *mut EsliContext) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of arrows and of stable arrows of the derived semigroupoid.
///
/// # Safety
/// `c` must be a live handle and the outputs writable.
#[no_mangle]
pub unsafe extern "C" fn esli_context_arrows(
    c: *const EsliContext,
    arrows: *mut usize,
    stable: *mut usize,
) -> EsliStatus {
    nonnull!(c, arrows, stable);
    guard(|| {
        let c = &(*c).0;
        match c.stable_arrows() {
            Ok(st) => {
                *arrows = c.arrows().len();
                *stable = st.len();
                EsliStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Run the structural checks on stable arrows and the hat map. `*failures` receives the
/// number of failing cases; the status is `VerdictFailed` when it is nonzero.
///
/// # Safety
/// `c` must be a live handle and `failures` writable.
#[no_mangle]
pub unsafe extern "C" fn esli_hat_check(c: *const EsliContext, failures: *mut usize) -> EsliStatus {
    nonnull!(c, failures);
    guard(|| {
        let checks = (*c).0.check_lemmas();
        let bad: Vec<String> =
            checks.iter().flat_map(|l| l.failures.iter().map(move |f| format!("{}: {f}", l.name))).collect();
        *failures = bad.len();
        match bad.first() {
            None => EsliStatus::Ok,
            Some(f) => {
                set_error(f.clone());
                EsliStatus::VerdictFailed
            }
        }
    })
}

/// Lift random derivations and check the embedding invariant. `*steps` receives the
/// number of lifted steps. On failure the first witness is available from
/// [`esli_last_error`].
///
/// # Safety
/// `c` must be a live handle and `steps` writable.
#[no_mangle]
pub unsafe extern "C" fn esli_embed_verify(
    c: *const EsliContext,
    seed: u64,
    trials: usize,
    steps_per_trial: usize,
    max_len: usize,
    steps: *mut usize,
) -> EsliStatus {
    nonnull!(c, steps);
    guard(|| {
        let alg = match ArrowAlgebra::new(&(*c).0, PrimeRule::default()) {
            Ok(a) => a,
            Err(e) => return fail(e),
        };
        let cfg = DerivationConfig { trials, steps_per_trial, max_len };
        match alg.verify_embedding(&cfg, seed) {
            Ok(r) => {
                *steps = r.steps_lifted;
                if r.all_pass() {
                    EsliStatus::Ok
                } else {
                    let w = r
                        .lift_failures
                        .first()
                        .cloned()
                        .or_else(|| r.separation_failures.first().map(|p| format!("not separated: {p:?}")))
                        .or_else(|| r.product_failures.first().map(|p| format!("product not respected: {p:?}")))
                        .unwrap_or_default();
                    set_error(w);
                    EsliStatus::VerdictFailed
                }
            }
            Err(e) => fail(e),
        }
    })
}

/// Reduce a term such as `"x(y^x)"` to its normal form. `*len` is the capacity of `buf`
/// on entry and the size needed (including the NUL) on exit; pass a null `buf` to query
/// the size.
///
/// # Safety
/// `term` must be NUL-terminated, `len` valid, and `buf` null or holding `*len` bytes.
#[no_mangle]
pub unsafe extern "C" fn esli_term_reduce(term: *const c_char, buf: *mut c_char, len: *mut usize) -> EsliStatus {
    nonnull!(term, len);
    guard(|| {
        let t = match str_arg(term) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let a = Alphabet::infer(t);
        match parse_term(t, &a) {
            Ok(p) => write_str(&reduce(&p).display(&a).to_string(), buf, len),
            Err(e) => fail(e),
        }
    })
}

/// Decide whether two terms are equal in the free object; `*equal` is 1 or 0.
///
/// # Safety
/// `u`, `v` must be NUL-terminated and `equal` writable.
#[no_mangle]
pub unsafe extern "C" fn esli_term_equal(u: *const c_char, v: *const c_char, equal: *mut i32) -> EsliStatus {
    nonnull!(u, v, equal);
    guard(|| {
        let (u, v) = match (str_arg(u), str_arg(v)) {
            (Ok(u), Ok(v)) => (u, v),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let a = Alphabet::infer(&format!("{u} {v}"));
        match (parse_term(u, &a), parse_term(v, &a)) {
            (Ok(tu), Ok(tv)) => {
                *equal = i32::from(theta_cs_equal(&tu, &tv));
                EsliStatus::Ok
            }
            (Err(e), _) | (_, Err(e)) => fail(e),
        }
    })
}
