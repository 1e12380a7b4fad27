//! C ABI for the arrkpi library: opaque handles over arrangements and fan
//! complexes, status codes, a thread-local error message, and verification
//! entry points that hand back JSON reports.
//!
//! Conventions, mirrored in the generated `include/arrkpi.h`:
//!
//! * Every fallible function returns an [`ArrkpiStatus`] and writes its
//!   result through out-parameters, which are touched only on success
//!   (except `ARRKPI_STATUS_VIOLATIONS_FOUND`, which still writes the
//!   report so the caller can inspect the counterexamples).
//! * Strings returned through `char **` are owned by the caller and must be
//!   released with [`arrkpi_string_free`]; handles have their own `_free`.
//! * After a non-`OK` status, [`arrkpi_last_error_message`] returns a
//!   human-readable description, valid on the calling thread until the next
//!   failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fmt::Display;

use arrkpi::arrangement::{enumerate_fans, Arrangement, FanComplex};
use arrkpi::artinball::{run_ball_suite, CoxTable, Diagram};
use arrkpi::families::{family_h, family_k, reflection_arrangement, verify_admissible, BlockKind};
use arrkpi::salvetti::salvetti_of;

/// Result of every fallible call in this interface.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrkpiStatus {
    /// The call succeeded and all out-parameters are set.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An argument was out of range, malformed, or not UTF-8.
    InvalidArgument = 2,
    /// A verification ran to completion and found violations; the report
    /// out-parameter is still written.
    ViolationsFound = 3,
    /// An internal invariant failed; report this as a bug.
    Internal = 4,
}

/// Families of reflection arrangements constructible via
/// [`arrkpi_arrangement_reflection`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrkpiFamily {
    /// Braid-style arrangement `{xi = 0} ∪ {xi = xj}`.
    SkewedA = 0,
    /// Full signed arrangement `{xi = 0} ∪ {xi = ±xj}`.
    B = 1,
    /// Difference-sum arrangement `{xi = ±xj}`.
    D = 2,
}

/// Opaque handle to an exact hyperplane arrangement.
pub struct ArrkpiArrangement(Arrangement);

/// Opaque handle to the fan decomposition of an arrangement.
pub struct ArrkpiFanComplex(FanComplex);

thread_local! {
    static LAST_ERROR: RefCell<CString> =
        RefCell::new(CString::new("").expect("the empty message has no interior NUL"));
}

/// Records `message` as the thread's last error and returns `status`.
fn fail(status: ArrkpiStatus, message: impl Display) -> ArrkpiStatus {
    let text = message.to_string().replace('\0', "?");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(text).expect("NUL bytes were replaced");
    });
    status
}

fn null_argument(name: &str) -> ArrkpiStatus {
    fail(
        ArrkpiStatus::NullArgument,
        format!("required argument `{name}` is null"),
    )
}

/// Converts an owned string into a caller-owned C string.
fn give_string(out: *mut *mut c_char, s: String) -> ArrkpiStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            ArrkpiStatus::Ok
        }
        Err(e) => fail(ArrkpiStatus::Internal, e),
    }
}

/// Message describing the most recent failure on this thread, or an empty
/// string if none occurred. The pointer stays valid until the next failing
/// arrkpi call on the same thread; never free it.
#[no_mangle]
pub extern "C" fn arrkpi_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null (a no-op) or a pointer previously returned through a
/// `char **` out-parameter of this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_string_free(s: *mut c_char) {
    if s.is_null() {
        return;
    }
    drop(unsafe { CString::from_raw(s) });
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, ArrkpiStatus> {
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|e| fail(ArrkpiStatus::InvalidArgument, e))
}

fn give_arrangement(
    out: *mut *mut ArrkpiArrangement,
    arr: Arrangement,
) -> ArrkpiStatus {
    unsafe { *out = Box::into_raw(Box::new(ArrkpiArrangement(arr))) };
    ArrkpiStatus::Ok
}

/// Parses an arrangement from its JSON form
/// `{"dim": …, "hyperplanes": [[normal…, offset]…], "region": [[lo, hi]…]}`
/// and writes a new handle to `out`.
///
/// # Safety
/// `json` must point to a NUL-terminated string and `out` to writable
/// storage for one pointer; both must stay valid for the duration of the
/// call.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_arrangement_from_json(
    json: *const c_char,
    out: *mut *mut ArrkpiArrangement,
) -> ArrkpiStatus {
    if json.is_null() {
        return null_argument("json");
    }
    if out.is_null() {
        return null_argument("out");
    }
    let text = match unsafe { read_str(json) } {
        Ok(t) => t,
        Err(status) => return status,
    };
    match Arrangement::from_json_str(text) {
        Ok(arr) => give_arrangement(out, arr),
        Err(e) => fail(ArrkpiStatus::InvalidArgument, e),
    }
}

/// Builds the rank-`n` reflection arrangement of the given family and
/// writes a new handle to `out`.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_arrangement_reflection(
    family: ArrkpiFamily,
    n: usize,
    out: *mut *mut ArrkpiArrangement,
) -> ArrkpiStatus {
    if out.is_null() {
        return null_argument("out");
    }
    let kind = match family {
        ArrkpiFamily::SkewedA => BlockKind::SkewedA,
        ArrkpiFamily::B => BlockKind::B,
        ArrkpiFamily::D => BlockKind::D,
    };
    match reflection_arrangement(kind, n) {
        Ok(arr) => give_arrangement(out, arr),
        Err(e) => fail(ArrkpiStatus::InvalidArgument, e),
    }
}

/// Builds the level-`k` coordinate-and-differences arrangement in rank `n`
/// and writes a new handle to `out`.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_arrangement_family_h(
    k: i64,
    n: usize,
    out: *mut *mut ArrkpiArrangement,
) -> ArrkpiStatus {
    if out.is_null() {
        return null_argument("out");
    }
    if k < 1 || n < 2 {
        return fail(
            ArrkpiStatus::InvalidArgument,
            format!("family H needs k >= 1 and n >= 2, got k = {k}, n = {n}"),
        );
    }
    match family_h(k, n) {
        Ok(arr) => give_arrangement(out, arr),
        Err(e) => fail(ArrkpiStatus::InvalidArgument, e),
    }
}

/// Builds the modular sums-and-differences arrangement of level `k` in rank
/// `n`, restricted to the box `(-half_width, half_width)^n`, and writes a
/// new handle to `out`.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_arrangement_family_k(
    k: i64,
    n: usize,
    half_width: i64,
    out: *mut *mut ArrkpiArrangement,
) -> ArrkpiStatus {
    if out.is_null() {
        return null_argument("out");
    }
    if k < 1 || n < 2 {
        return fail(
            ArrkpiStatus::InvalidArgument,
            format!("family K needs k >= 1 and n >= 2, got k = {k}, n = {n}"),
        );
    }
    match family_k(k, n, half_width) {
        Ok(arr) => give_arrangement(out, arr),
        Err(e) => fail(ArrkpiStatus::InvalidArgument, e),
    }
}

/// Writes the ambient dimension of the arrangement to `out`.
///
/// # Safety
/// `arr` must be a live handle from this library; `out` must point to
/// writable storage for one `uintptr_t`.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_arrangement_dim(
    arr: *const ArrkpiArrangement,
    out: *mut usize,
) -> ArrkpiStatus {
    if arr.is_null() {
        return null_argument("arr");
    }
    if out.is_null() {
        return null_argument("out");
    }
    unsafe { *out = (*arr).0.dim() };
    ArrkpiStatus::Ok
}

/// Writes the number of hyperplanes of the arrangement to `out`.
///
/// # Safety
/// `arr` must be a live handle from this library; `out` must point to
/// writable storage for one `uintptr_t`.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_arrangement_hyperplane_count(
    arr: *const ArrkpiArrangement,
    out: *mut usize,
) -> ArrkpiStatus {
    if arr.is_null() {
        return null_argument("arr");
    }
    if out.is_null() {
        return null_argument("out");
    }
    unsafe { *out = (*arr).0.hyperplanes().len() };
    ArrkpiStatus::Ok
}

/// Serializes the arrangement back to its JSON form; the caller owns the
/// returned string.
///
/// # Safety
/// `arr` must be a live handle from this library; `out` must point to
/// writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_arrangement_to_json(
    arr: *const ArrkpiArrangement,
    out: *mut *mut c_char,
) -> ArrkpiStatus {
    if arr.is_null() {
        return null_argument("arr");
    }
    if out.is_null() {
        return null_argument("out");
    }
    give_string(out, unsafe { &(*arr).0 }.to_json_string())
}

/// Releases an arrangement handle.
///
/// # Safety
/// `arr` must be null (a no-op) or a live handle from this library, not
/// yet freed; no other pointer to it may be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_arrangement_free(arr: *mut ArrkpiArrangement) {
    if arr.is_null() {
        return;
    }
    drop(unsafe { Box::from_raw(arr) });
}

/// Enumerates the fan decomposition of the arrangement and writes a new
/// handle to `out`. The complex is self-contained; the arrangement handle
/// may be freed afterwards.
///
/// # Safety
/// `arr` must be a live handle from this library; `out` must point to
/// writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_fan_complex_new(
    arr: *const ArrkpiArrangement,
    out: *mut *mut ArrkpiFanComplex,
) -> ArrkpiStatus {
    if arr.is_null() {
        return null_argument("arr");
    }
    if out.is_null() {
        return null_argument("out");
    }
    match enumerate_fans(unsafe { &(*arr).0 }) {
        Ok(fc) => {
            unsafe { *out = Box::into_raw(Box::new(ArrkpiFanComplex(fc))) };
            ArrkpiStatus::Ok
        }
        Err(e) => fail(ArrkpiStatus::InvalidArgument, e),
    }
}

/// Writes the total number of fans and the number of chambers.
///
/// # Safety
/// `fc` must be a live handle from this library; `fans` and `chambers`
/// must point to writable storage for one `uintptr_t` each.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_fan_complex_counts(
    fc: *const ArrkpiFanComplex,
    fans: *mut usize,
    chambers: *mut usize,
) -> ArrkpiStatus {
    if fc.is_null() {
        return null_argument("fc");
    }
    if fans.is_null() {
        return null_argument("fans");
    }
    if chambers.is_null() {
        return null_argument("chambers");
    }
    let complex = unsafe { &(*fc).0 };
    unsafe {
        *fans = complex.len();
        *chambers = complex.chambers().len();
    }
    ArrkpiStatus::Ok
}

fn require_chamber(fc: &FanComplex, id: usize, name: &str) -> Result<(), ArrkpiStatus> {
    if !fc.chambers().contains(&id) {
        return Err(fail(
            ArrkpiStatus::InvalidArgument,
            format!("`{name}` = {id} is not a chamber id"),
        ));
    }
    Ok(())
}

/// Writes the id of the chamber of the face `fan` closest to `chamber` in
/// wall-crossing distance (its gate). Fan ids index the enumeration order;
/// chamber ids are the fan ids of top-dimensional fans.
///
/// # Safety
/// `fc` must be a live handle from this library; `out` must point to
/// writable storage for one `uintptr_t`.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_fan_complex_gate(
    fc: *const ArrkpiFanComplex,
    chamber: usize,
    fan: usize,
    out: *mut usize,
) -> ArrkpiStatus {
    if fc.is_null() {
        return null_argument("fc");
    }
    if out.is_null() {
        return null_argument("out");
    }
    let complex = unsafe { &(*fc).0 };
    if fan >= complex.len() {
        return fail(
            ArrkpiStatus::InvalidArgument,
            format!("`fan` = {fan} is out of range ({} fans)", complex.len()),
        );
    }
    if let Err(status) = require_chamber(complex, chamber, "chamber") {
        return status;
    }
    unsafe { *out = complex.gate(chamber, fan) };
    ArrkpiStatus::Ok
}

/// Writes the number of hyperplanes strictly separating two chambers.
///
/// # Safety
/// `fc` must be a live handle from this library; `out` must point to
/// writable storage for one `uintptr_t`.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_fan_complex_separation(
    fc: *const ArrkpiFanComplex,
    chamber_a: usize,
    chamber_b: usize,
    out: *mut usize,
) -> ArrkpiStatus {
    if fc.is_null() {
        return null_argument("fc");
    }
    if out.is_null() {
        return null_argument("out");
    }
    let complex = unsafe { &(*fc).0 };
    for (id, name) in [(chamber_a, "chamber_a"), (chamber_b, "chamber_b")] {
        if let Err(status) = require_chamber(complex, id, name) {
            return status;
        }
    }
    unsafe { *out = complex.separation(chamber_a, chamber_b) };
    ArrkpiStatus::Ok
}

/// Releases a fan complex handle.
///
/// # Safety
/// `fc` must be null (a no-op) or a live handle from this library, not
/// yet freed; no other pointer to it may be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_fan_complex_free(fc: *mut ArrkpiFanComplex) {
    if fc.is_null() {
        return;
    }
    drop(unsafe { Box::from_raw(fc) });
}

/// Writes the per-dimension cell counts of the dual cell complex of the
/// arrangement into `buf` (index = dimension) and the number of entries to
/// `written`. Requires `cap >= dim + 1`.
///
/// # Safety
/// `arr` must be a live handle from this library; `buf` must point to at
/// least `cap` writable `uintptr_t`s; `written` to one.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_salvetti_cell_counts(
    arr: *const ArrkpiArrangement,
    buf: *mut usize,
    cap: usize,
    written: *mut usize,
) -> ArrkpiStatus {
    if arr.is_null() {
        return null_argument("arr");
    }
    if buf.is_null() {
        return null_argument("buf");
    }
    if written.is_null() {
        return null_argument("written");
    }
    let counts = match salvetti_of(unsafe { &(*arr).0 }) {
        Ok(sc) => sc.cell_counts(),
        Err(e) => return fail(ArrkpiStatus::InvalidArgument, e),
    };
    if counts.len() > cap {
        return fail(
            ArrkpiStatus::InvalidArgument,
            format!("`cap` = {cap} is too small; {} entries needed", counts.len()),
        );
    }
    for (i, &c) in counts.iter().enumerate() {
        unsafe { *buf.add(i) = c };
    }
    unsafe { *written = counts.len() };
    ArrkpiStatus::Ok
}

/// Writes the Euler characteristic of the dual cell complex of the
/// arrangement to `out`.
///
/// # Safety
/// `arr` must be a live handle from this library; `out` must point to
/// writable storage for one `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_salvetti_euler(
    arr: *const ArrkpiArrangement,
    out: *mut i64,
) -> ArrkpiStatus {
    if arr.is_null() {
        return null_argument("arr");
    }
    if out.is_null() {
        return null_argument("out");
    }
    match salvetti_of(unsafe { &(*arr).0 }) {
        Ok(sc) => {
            unsafe { *out = sc.euler_characteristic() };
            ArrkpiStatus::Ok
        }
        Err(e) => fail(ArrkpiStatus::InvalidArgument, e),
    }
}

/// Classifies every vertex of the arrangement and writes the JSON report to
/// `out_report` (caller-owned). Returns `ARRKPI_STATUS_VIOLATIONS_FOUND`,
/// with the report still written, when some vertex is not admissible.
///
/// # Safety
/// `arr` must be a live handle from this library; `out_report` must point
/// to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_verify_admissible(
    arr: *const ArrkpiArrangement,
    out_report: *mut *mut c_char,
) -> ArrkpiStatus {
    if arr.is_null() {
        return null_argument("arr");
    }
    if out_report.is_null() {
        return null_argument("out_report");
    }
    let report = verify_admissible(unsafe { &(*arr).0 }, None);
    let all_admissible = report.all_admissible;
    let json = match serde_json::to_string_pretty(&report) {
        Ok(j) => j,
        Err(e) => return fail(ArrkpiStatus::Internal, e),
    };
    let status = give_string(out_report, json);
    if status == ArrkpiStatus::Ok && !all_admissible {
        return ArrkpiStatus::ViolationsFound;
    }
    status
}

/// Runs the full audit suite on the radius-`radius` ball of the rank-`n`
/// braid-like group and writes the JSON report to `out_report`
/// (caller-owned). Returns `ARRKPI_STATUS_VIOLATIONS_FOUND`, with the
/// report still written, when any audit finds a counterexample.
///
/// # Safety
/// `out_report` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_verify_ball_suite(
    n: usize,
    radius: i64,
    margin: i64,
    out_report: *mut *mut c_char,
) -> ArrkpiStatus {
    if out_report.is_null() {
        return null_argument("out_report");
    }
    let run = match run_ball_suite(n, radius, margin) {
        Ok(r) => r,
        Err(e) => return fail(ArrkpiStatus::InvalidArgument, e),
    };
    let passed = run.passed();
    let status = give_string(out_report, run.to_json_string());
    if status == ArrkpiStatus::Ok && !passed {
        return ArrkpiStatus::ViolationsFound;
    }
    status
}

/// Computes the left-greedy canonical form of a word in the braid-like
/// group of the given diagram (`"A2"`, `"B3"`, `"D3"`, …). Letters are
/// `±1 ..= ±rank`: positive for a generator, negative for its inverse. The
/// canonical form is written to `out` (caller-owned) in the textual form
/// `D^k(…)(…)`: the power of the Garside element followed by one
/// parenthesized reduced word per factor, `e` for the identity.
///
/// # Safety
/// `diagram` must point to a NUL-terminated string; `letters` must point to
/// `len` readable `int32_t`s (it may be null only when `len` is 0); `out`
/// must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn arrkpi_braid_normal_form(
    diagram: *const c_char,
    letters: *const i32,
    len: usize,
    out: *mut *mut c_char,
) -> ArrkpiStatus {
    if diagram.is_null() {
        return null_argument("diagram");
    }
    if letters.is_null() && len > 0 {
        return null_argument("letters");
    }
    if out.is_null() {
        return null_argument("out");
    }
    let name = match unsafe { read_str(diagram) } {
        Ok(t) => t,
        Err(status) => return status,
    };
    let d = match Diagram::parse(name) {
        Ok(d) => d,
        Err(e) => return fail(ArrkpiStatus::InvalidArgument, e),
    };
    let table = match CoxTable::build(d) {
        Ok(t) => t,
        Err(e) => return fail(ArrkpiStatus::Internal, e),
    };
    let word: &[i32] = if len == 0 {
        &[]
    } else {
        unsafe { std::slice::from_raw_parts(letters, len) }
    };
    match table.normal_form(word) {
        Ok(g) => give_string(out, table.braid_name(&g)),
        Err(e) => fail(ArrkpiStatus::InvalidArgument, e),
    }
}
