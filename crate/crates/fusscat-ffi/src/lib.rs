//! C ABI over the fusscat library.
//!
//! Every function returns an [`FcStatus`]; on failure a message is kept per thread and can be
//! read with [`fc_last_error`]. Handles are opaque and must be released with their `_free`.

use fusscat::cluster::ClusterComplex;
use fusscat::{Braid, CoxeterSystem, FcError, MWeakInterval, NcFrame, SortFrame};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

const CAP: usize = 1 << 21;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    NotSortable = 3,
    TooLarge = 4,
    BufferTooSmall = 5,
    Internal = 6,
}

/// Families that can be counted.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FcObject {
    Weak = 0,
    Nc = 1,
    Sort = 2,
    Asso = 3,
}

/// A finite Coxeter system.
pub struct FcSystem {
    sys: CoxeterSystem,
}

/// A positive braid in Garside normal form, tied to the system it was parsed in.
pub struct FcBraid {
    braid: Braid,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &FcError) -> FcStatus {
    match e {
        FcError::NotSortable => FcStatus::NotSortable,
        FcError::TooLarge { .. } => FcStatus::TooLarge,
        _ => FcStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and turning panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), (FcStatus, String)>) -> FcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            FcStatus::Ok
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal error");
            FcStatus::Internal
        }
    }
}

fn lift(e: FcError) -> (FcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (FcStatus, String) {
    (FcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (FcStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (FcStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn system<'a>(p: *const FcSystem) -> Result<&'a CoxeterSystem, (FcStatus, String)> {
    p.as_ref().map(|s| &s.sys).ok_or_else(|| null("system"))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, (FcStatus, String)> {
    p.as_mut().ok_or_else(|| null("output pointer"))
}

/// Coxeter word from text, or the diagram order when `c` is null.
unsafe fn coxeter_word(sys: &CoxeterSystem, c: *const c_char) -> Result<Vec<usize>, (FcStatus, String)> {
    let w = if c.is_null() { sys.generators() } else { sys.parse_word(text(c, "c")?).map_err(lift)? };
    sys.check_coxeter_word(&w).map_err(lift)?;
    Ok(w)
}

/// Message for the last failing call on this thread; empty after a success. Owned by the library.
#[no_mangle]
pub extern "C" fn fc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a system from a type such as "A3", "I2(5)" or "A1xA1".
///
/// # Safety
/// `name` must be a NUL-terminated string and `out_sys` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_system_new(name: *const c_char, out_sys: *mut *mut FcSystem) -> FcStatus {
    guard(|| {
        let slot = out(out_sys)?;
        *slot = ptr::null_mut();
        let sys = CoxeterSystem::build(text(name, "type")?).map_err(lift)?;
        *slot = Box::into_raw(Box::new(FcSystem { sys }));
        Ok(())
    })
}

/// # Safety
/// `sys` must come from [`fc_system_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fc_system_free(sys: *mut FcSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// # Safety
/// `sys` must be a live handle and `rank` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_system_rank(sys: *const FcSystem, rank: *mut usize) -> FcStatus {
    guard(|| {
        *out(rank)? = system(sys)?.rank();
        Ok(())
    })
}

/// Number of positive roots.
///
/// # Safety
/// `sys` must be a live handle and `n` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_system_n_pos(sys: *const FcSystem, n: *mut usize) -> FcStatus {
    guard(|| {
        *out(n)? = system(sys)?.n_pos();
        Ok(())
    })
}

/// # Safety
/// `sys` must be a live handle and `h` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_system_coxeter_number(sys: *const FcSystem, h: *mut u32) -> FcStatus {
    guard(|| {
        *out(h)? = system(sys)?.coxeter_number();
        Ok(())
    })
}

/// Fuss-Catalan number from the degrees.
///
/// # Safety
/// `sys` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_fuss_catalan(sys: *const FcSystem, m: u32, value: *mut u64) -> FcStatus {
    guard(|| {
        let v = system(sys)?.fuss_catalan(m);
        *out(value)? = u64::try_from(v).map_err(|_| (FcStatus::TooLarge, "value exceeds 64 bits".into()))?;
        Ok(())
    })
}

/// Counts a family by enumeration. `c` is a generator ordering such as "s1 s2 s3"; null means
/// diagram order. `Weak` ignores `c`.
///
/// # Safety
/// `sys` must be a live handle, `c` null or NUL-terminated, `count` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_count(
    sys: *const FcSystem,
    kind: FcObject,
    c: *const c_char,
    m: u32,
    count: *mut u64,
) -> FcStatus {
    guard(|| {
        let w = system(sys)?;
        let c = coxeter_word(w, c)?;
        let m = m as usize;
        let n = match kind {
            FcObject::Weak => MWeakInterval::enumerate(w, m, CAP).map_err(lift)?.len(),
            FcObject::Nc => NcFrame::new(w, &c).map_err(lift)?.deltas(w, m).len(),
            FcObject::Sort => SortFrame::new(w, &c, m).map_err(lift)?.sortables(w).len(),
            FcObject::Asso => ClusterComplex::new(w, &c, m).map_err(lift)?.len(),
        };
        *out(count)? = n as u64;
        Ok(())
    })
}

/// Parses a braid from a word ("s t s t") or a Garside string ("sts.t").
///
/// # Safety
/// `sys` must be a live handle, `word` NUL-terminated, `out_braid` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_braid_parse(sys: *const FcSystem, word: *const c_char, out_braid: *mut *mut FcBraid) -> FcStatus {
    guard(|| {
        let slot = out(out_braid)?;
        *slot = ptr::null_mut();
        let braid = Braid::parse(system(sys)?, text(word, "word")?).map_err(lift)?;
        *slot = Box::into_raw(Box::new(FcBraid { braid }));
        Ok(())
    })
}

/// # Safety
/// `b` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fc_braid_free(b: *mut FcBraid) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Number of Garside factors and total length.
///
/// # Safety
/// `b` must be a live handle; `degree` and `length` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_braid_degree(b: *const FcBraid, degree: *mut usize, length: *mut usize) -> FcStatus {
    guard(|| {
        let b = b.as_ref().ok_or_else(|| null("braid"))?;
        *out(degree)? = b.braid.degree();
        *out(length)? = b.braid.length();
        Ok(())
    })
}

/// Writes the normal form ("sts.t") into `buf`. `needed` receives the size including the NUL,
/// so a call with `cap` = 0 queries the size.
///
/// # Safety
/// `sys` and `b` must be live handles, `buf` writable for `cap` bytes, `needed` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_braid_string(
    sys: *const FcSystem,
    b: *const FcBraid,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> FcStatus {
    guard(|| {
        let w = system(sys)?;
        let b = b.as_ref().ok_or_else(|| null("braid"))?;
        let s = b.braid.to_string(w);
        *out(needed)? = s.len() + 1;
        if cap < s.len() + 1 {
            return Err((FcStatus::BufferTooSmall, format!("need {} bytes", s.len() + 1)));
        }
        if buf.is_null() {
            return Err(null("buffer"));
        }
        ptr::copy_nonoverlapping(s.as_ptr(), buf as *mut u8, s.len());
        *buf.add(s.len()) = 0;
        Ok(())
    })
}

/// Greatest common left divisor (`lcm` = false) or least common right multiple (`lcm` = true).
///
/// # Safety
/// All handles must be live and `out_braid` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_braid_combine(
    sys: *const FcSystem,
    a: *const FcBraid,
    b: *const FcBraid,
    lcm: bool,
    out_braid: *mut *mut FcBraid,
) -> FcStatus {
    guard(|| {
        let w = system(sys)?;
        let slot = out(out_braid)?;
        *slot = ptr::null_mut();
        let a = a.as_ref().ok_or_else(|| null("braid"))?;
        let b = b.as_ref().ok_or_else(|| null("braid"))?;
        let braid = if lcm { a.braid.lcm(w, &b.braid) } else { a.braid.gcd(w, &b.braid) };
        *slot = Box::into_raw(Box::new(FcBraid { braid }));
        Ok(())
    })
}

/// Whether `b` is c-sortable in the interval of degree at most `m`. Fails with `InvalidInput`
/// when `b` lies outside the interval.
///
/// # Safety
/// Handles must be live, `c` null or NUL-terminated, `result` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_is_sortable(
    sys: *const FcSystem,
    c: *const c_char,
    m: u32,
    b: *const FcBraid,
    result: *mut bool,
) -> FcStatus {
    guard(|| {
        let w = system(sys)?;
        let c = coxeter_word(w, c)?;
        let b = b.as_ref().ok_or_else(|| null("braid"))?;
        let f = SortFrame::new(w, &c, m as usize).map_err(lift)?;
        *out(result)? = f.is_sortable(w, &b.braid).map_err(lift)?;
        Ok(())
    })
}
