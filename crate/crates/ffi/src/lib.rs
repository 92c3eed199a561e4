//! C ABI for polylog.
//!
//! Every fallible function returns a `PolylogStatus`. Output pointers are
//! written only on success. Strings returned through `out` parameters are
//! owned by the caller and must be released with `polylog_string_free`;
//! handles with their matching `_free` function. The message of the most
//! recent failure on the calling thread is available from
//! `polylog_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use polylog::cli::{parse, run, Env};
use polylog::coalg::{cobracket, truncated_cobracket, LinComb};
use polylog::field::Ctx;
use polylog::relations::{seed, verify_five_term, RelationDB};
use polylog::Error;

/// Result codes. Negative values are errors.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolylogStatus {
    Ok = 0,
    /// the check ran but produced no certificate
    NotCertified = 1,
    NullPointer = -1,
    InvalidUtf8 = -2,
    Syntax = -3,
    Precondition = -4,
    Unsupported = -5,
    Uncertified = -6,
    Database = -7,
    Io = -8,
    Arithmetic = -9,
    Panic = -10,
}

/// A field context together with its relation database.
pub struct PolylogSession {
    db: RelationDB,
}

/// A normalized combination in the Lie coalgebra.
pub struct PolylogElem {
    e: LinComb,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PolylogStatus {
    match e {
        Error::Syntax { .. } | Error::UnknownIdent(_) | Error::Arity(_) => PolylogStatus::Syntax,
        Error::Precondition(_) => PolylogStatus::Precondition,
        Error::Unsupported(_) => PolylogStatus::Unsupported,
        Error::Uncertified(_) => PolylogStatus::Uncertified,
        Error::Database(_) => PolylogStatus::Database,
        Error::Io(_) => PolylogStatus::Io,
        Error::DivisionByZero | Error::ZeroWord | Error::NegativeValuation(_) => PolylogStatus::Arithmetic,
    }
}

enum Fail {
    Status(PolylogStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail::Lib(e)
    }
}

/// Runs f, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<PolylogStatus, Fail>) -> PolylogStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            PolylogStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Status(PolylogStatus::NullPointer, format!("{name} is null")));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Fail::Status(PolylogStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn obj<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    unsafe { p.as_ref() }.ok_or_else(|| Fail::Status(PolylogStatus::NullPointer, format!("{name} is null")))
}

fn check_out<T>(p: *mut T, name: &str) -> Result<(), Fail> {
    if p.is_null() {
        return Err(Fail::Status(PolylogStatus::NullPointer, format!("{name} is null")));
    }
    Ok(())
}

fn c_string(s: &str) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message of the last failure on this thread. The pointer stays valid
/// until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn polylog_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn polylog_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// A session over Q(zeta_order), with the standard seed relations if
/// `seeded` is nonzero.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn polylog_session_new(order: u32, seeded: c_int, out: *mut *mut PolylogSession) -> PolylogStatus {
    guard(|| {
        check_out(out, "out")?;
        let mut db = RelationDB::new(Ctx::new(order)?);
        if seeded != 0 {
            seed(&mut db)?;
        }
        unsafe { *out = Box::into_raw(Box::new(PolylogSession { db })) };
        Ok(PolylogStatus::Ok)
    })
}

/// Loads a database file; `replay` nonzero re-derives every record.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn polylog_session_load(path: *const c_char, replay: c_int, out: *mut *mut PolylogSession) -> PolylogStatus {
    guard(|| {
        check_out(out, "out")?;
        let src = std::fs::read_to_string(unsafe { str_arg(path, "path") }?).map_err(Error::from)?;
        let db = if replay != 0 { RelationDB::replay(&src)? } else { RelationDB::from_text(&src)? };
        unsafe { *out = Box::into_raw(Box::new(PolylogSession { db })) };
        Ok(PolylogStatus::Ok)
    })
}

/// # Safety
/// `s` and `path` must be valid.
#[no_mangle]
pub unsafe extern "C" fn polylog_session_save(s: *const PolylogSession, path: *const c_char) -> PolylogStatus {
    guard(|| {
        let s = unsafe { obj(s, "session") }?;
        std::fs::write(unsafe { str_arg(path, "path") }?, s.db.to_text()).map_err(Error::from)?;
        Ok(PolylogStatus::Ok)
    })
}

/// Number of stored relations.
///
/// # Safety
/// `s` must be a valid session or null (which gives 0).
#[no_mangle]
pub unsafe extern "C" fn polylog_session_len(s: *const PolylogSession) -> usize {
    unsafe { s.as_ref() }.map_or(0, |s| s.db.len())
}

/// # Safety
/// `s` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn polylog_session_free(s: *mut PolylogSession) {
    if !s.is_null() {
        drop(unsafe { Box::from_raw(s) });
    }
}

/// Parses and normalizes a symbol combination.
///
/// # Safety
/// `s` and `expr` must be valid and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn polylog_elem_parse(s: *const PolylogSession, expr: *const c_char, out: *mut *mut PolylogElem) -> PolylogStatus {
    guard(|| {
        check_out(out, "out")?;
        let s = unsafe { obj(s, "session") }?;
        let e = Env::new(s.db.ctx()).lie(&parse(unsafe { str_arg(expr, "expr") }?)?)?;
        unsafe { *out = Box::into_raw(Box::new(PolylogElem { e })) };
        Ok(PolylogStatus::Ok)
    })
}

/// # Safety
/// `e` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn polylog_elem_free(e: *mut PolylogElem) {
    if !e.is_null() {
        drop(unsafe { Box::from_raw(e) });
    }
}

/// Weight of the combination, or -1 for null.
///
/// # Safety
/// `e` must be a valid element or null.
#[no_mangle]
pub unsafe extern "C" fn polylog_elem_weight(e: *const PolylogElem) -> c_int {
    unsafe { e.as_ref() }.map_or(-1, |e| e.e.weight() as c_int)
}

/// 1 if the combination is zero, 0 if not, -1 for null.
///
/// # Safety
/// `e` must be a valid element or null.
#[no_mangle]
pub unsafe extern "C" fn polylog_elem_is_zero(e: *const PolylogElem) -> c_int {
    unsafe { e.as_ref() }.map_or(-1, |e| c_int::from(e.e.is_zero()))
}

/// Canonical text of the combination.
///
/// # Safety
/// `e` must be valid and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn polylog_elem_to_string(e: *const PolylogElem, out: *mut *mut c_char) -> PolylogStatus {
    guard(|| {
        check_out(out, "out")?;
        let e = unsafe { obj(e, "elem") }?;
        unsafe { *out = c_string(&e.e.to_string()) };
        Ok(PolylogStatus::Ok)
    })
}

/// The cobracket as text; `truncated` nonzero drops the weight-one legs.
///
/// # Safety
/// `s` and `e` must be valid and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn polylog_elem_cobracket(
    s: *const PolylogSession,
    e: *const PolylogElem,
    truncated: c_int,
    out: *mut *mut c_char,
) -> PolylogStatus {
    guard(|| {
        check_out(out, "out")?;
        let (s, e) = unsafe { (obj(s, "session")?, obj(e, "elem")?) };
        let ctx = s.db.ctx();
        let w = if truncated != 0 { truncated_cobracket(ctx, &e.e)? } else { cobracket(ctx, &e.e)? };
        unsafe { *out = c_string(&w.to_string()) };
        Ok(PolylogStatus::Ok)
    })
}

/// The residue of e modulo the database, as a new element.
///
/// # Safety
/// `s` and `e` must be valid and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn polylog_elem_reduce(s: *const PolylogSession, e: *const PolylogElem, out: *mut *mut PolylogElem) -> PolylogStatus {
    guard(|| {
        check_out(out, "out")?;
        let (s, e) = unsafe { (obj(s, "session")?, obj(e, "elem")?) };
        let r = s.db.reduce(&e.e);
        unsafe { *out = Box::into_raw(Box::new(PolylogElem { e: r })) };
        Ok(PolylogStatus::Ok)
    })
}

/// Ok if the cobracket of e vanishes modulo the database, NotCertified
/// otherwise.
///
/// # Safety
/// `s` and `e` must be valid.
#[no_mangle]
pub unsafe extern "C" fn polylog_certify(s: *const PolylogSession, e: *const PolylogElem) -> PolylogStatus {
    guard(|| {
        let (s, e) = unsafe { (obj(s, "session")?, obj(e, "elem")?) };
        Ok(if s.db.certify(&e.e)? { PolylogStatus::Ok } else { PolylogStatus::NotCertified })
    })
}

/// The five-term relation for field elements a and b.
///
/// # Safety
/// `a` and `b` must be NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn polylog_verify_five_term(a: *const c_char, b: *const c_char) -> PolylogStatus {
    guard(|| {
        let ctx = Ctx::rational();
        let env = Env::new(&ctx);
        let a = env.elem(&parse(unsafe { str_arg(a, "a") }?)?)?;
        let b = env.elem(&parse(unsafe { str_arg(b, "b") }?)?)?;
        let c = verify_five_term(&ctx, &a, &b)?;
        Ok(if c.certified { PolylogStatus::Ok } else { PolylogStatus::NotCertified })
    })
}

/// Runs a command line as the `polylog` executable would, without the
/// program name. Writes the process exit code and the captured output.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; `exit_code` and
/// `output` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn polylog_run(
    argc: c_int,
    argv: *const *const c_char,
    exit_code: *mut c_int,
    output: *mut *mut c_char,
) -> PolylogStatus {
    guard(|| {
        check_out(exit_code, "exit_code")?;
        check_out(output, "output")?;
        if argc < 0 || (argc > 0 && argv.is_null()) {
            return Err(Fail::Status(PolylogStatus::NullPointer, "argv is null".into()));
        }
        let mut args = vec!["polylog".to_string()];
        for i in 0..argc as usize {
            args.push(unsafe { str_arg(*argv.add(i), "argv entry") }?.to_string());
        }
        let o = run(args);
        unsafe {
            *exit_code = o.code;
            *output = c_string(&format!("{}{}", o.stdout, o.stderr));
        }
        Ok(PolylogStatus::Ok)
    })
}
