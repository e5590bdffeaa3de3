//! C ABI for the codforge orthogonal-design library.
//!
//! Conventions, uniform across the interface:
//!
//! * Every function returns a [`CodforgeStatus`]; `CODFORGE_STATUS_OK`
//!   means the out-parameters were written, anything else means they
//!   were left untouched.
//! * Handles (`CodforgeMatrix`, `CodforgeParts`) are opaque and owned
//!   by the caller once returned; release them with the matching
//!   `*_free` function. Strings returned through out-parameters are
//!   NUL-terminated, caller-owned, and released with
//!   [`codforge_string_free`].
//! * Rows, columns, and variable ids are 1-based, matching the text
//!   format (`z1` is variable 1).
//! * A description of the most recent failure on the current thread is
//!   available from [`codforge_last_error_message`].
//! * Pointer contract: handle arguments must be NULL (reported as
//!   `CODFORGE_STATUS_NULL_POINTER`) or handles obtained from this
//!   library and not yet freed; string arguments must be NUL-terminated;
//!   out-parameters must point to writable storage. Any other pointer is
//!   undefined behavior — which is why every function is `unsafe` on the
//!   Rust side.
//!
//! The generated header lives in `include/codforge.h` and is refreshed
//! on every build.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use codforge::cod::{CodMatrix, Entry, Sign};
use codforge::generators::{gen_g, gen_gw, gen_h, gen_hm};
use codforge::io::{parse_auto, serialize, MatrixFormat};
use codforge::params::{feasible, max_rate, min_delay, tradeoff_csv, tradeoff_json};
use codforge::structure::{
    canonicalize_atomic, decompose_atomic, equivalent, scramble, signature, AtomicPart,
};
use codforge::CodError;

/// Result of every call. Values other than OK leave out-parameters
/// unwritten; the error text is available from
/// `codforge_last_error_message`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodforgeStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// An argument was outside the documented domain.
    InvalidArgument = 2,
    /// Malformed matrix text.
    ParseError = 3,
    /// The matrix fails the orthogonality identity.
    NotACod = 4,
    /// No atomic class matches the design's parameters.
    Unclassifiable = 5,
    /// Canonicalization could not reach the canonical form.
    NotEquivalent = 6,
    /// The operation is not defined for this input.
    Unsupported = 7,
    /// A built-in size cap was exceeded.
    ResourceLimit = 8,
    /// An unexpected internal failure (caught panic).
    Internal = 9,
}

/// Serialization formats accepted by `codforge_matrix_render`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodforgeFormat {
    /// One row per line, entries like `-z2*` separated by spaces.
    Text = 0,
    /// Self-describing JSON object (also accepted by the parser).
    Json = 1,
    /// One row per line, comma-separated entries.
    Csv = 2,
    /// LaTeX `pmatrix` body.
    Latex = 3,
}

/// Opaque handle to an immutable design matrix.
pub struct CodforgeMatrix(CodMatrix);

/// Opaque handle to a decomposition into atomic parts.
pub struct CodforgeParts(Vec<AtomicPart>);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg.into());
}

fn fail(err: CodError) -> CodforgeStatus {
    let status = match err {
        CodError::InvalidArgument(_) => CodforgeStatus::InvalidArgument,
        CodError::Parse { .. } => CodforgeStatus::ParseError,
        CodError::NotACod(_) => CodforgeStatus::NotACod,
        CodError::Unclassifiable { .. } => CodforgeStatus::Unclassifiable,
        CodError::NotEquivalent(_) => CodforgeStatus::NotEquivalent,
        CodError::Unsupported(_) => CodforgeStatus::Unsupported,
        CodError::ResourceLimit(_) => CodforgeStatus::ResourceLimit,
    };
    set_error(err.to_string());
    status
}

fn null_arg(name: &str) -> CodforgeStatus {
    set_error(format!("{name} must not be NULL"));
    CodforgeStatus::NullPointer
}

/// Catches panics so they never unwind across the C boundary.
fn guard(body: impl FnOnce() -> CodforgeStatus) -> CodforgeStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal error".to_string());
            set_error(msg);
            CodforgeStatus::Internal
        }
    }
}

/// # Safety
/// `out` must be non-null and valid for writes.
unsafe fn write_out<T>(out: *mut T, value: T) -> CodforgeStatus {
    unsafe { std::ptr::write(out, value) };
    CodforgeStatus::Ok
}

unsafe fn export_matrix(out: *mut *mut CodforgeMatrix, m: CodMatrix) -> CodforgeStatus {
    unsafe { write_out(out, Box::into_raw(Box::new(CodforgeMatrix(m)))) }
}

unsafe fn export_string(out: *mut *mut c_char, s: String) -> CodforgeStatus {
    // Library output never contains NUL bytes; scrub defensively anyway.
    let c = CString::new(s)
        .unwrap_or_else(|e| {
            let bytes: Vec<u8> = e.into_vec().into_iter().filter(|&b| b != 0).collect();
            CString::new(bytes).expect("NUL bytes were just removed")
        });
    unsafe { write_out(out, c.into_raw()) }
}

unsafe fn matrix_ref<'a>(m: *const CodforgeMatrix) -> Option<&'a CodMatrix> {
    unsafe { m.as_ref() }.map(|wrapper| &wrapper.0)
}

/// Copies the most recent error message on this thread (empty string if
/// none) into a caller-owned string.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_last_error_message(out: *mut *mut c_char) -> CodforgeStatus {
    if out.is_null() {
        return CodforgeStatus::NullPointer;
    }
    let msg = LAST_ERROR.with(|slot| slot.borrow().clone());
    unsafe { export_string(out, msg) }
}

/// Releases a string returned by this library. NULL is ignored.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Releases a matrix handle. NULL is ignored.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_matrix_free(m: *mut CodforgeMatrix) {
    if !m.is_null() {
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Releases a parts handle. NULL is ignored.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_parts_free(parts: *mut CodforgeParts) {
    if !parts.is_null() {
        drop(unsafe { Box::from_raw(parts) });
    }
}

/// Builds the full basic design on `n` columns: [2^(n+1), n, 2^n].
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_gen_g(n: usize, out: *mut *mut CodforgeMatrix) -> CodforgeStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        match gen_g(n) {
            Ok(m) => unsafe { export_matrix(out, m) },
            Err(e) => fail(e),
        }
    })
}

/// Builds the weight-`w` basic slice on `n` columns, −1 ≤ w ≤ n+1:
/// [C(n,w−1)+C(n,w+1), n, C(n,w)].
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_gen_gw(
    n: usize,
    w: i64,
    out: *mut *mut CodforgeMatrix,
) -> CodforgeStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        match gen_gw(n, w) {
            Ok(m) => unsafe { export_matrix(out, m) },
            Err(e) => fail(e),
        }
    })
}

/// Builds the full padded design on `n` columns (n ≡ 0 mod 4):
/// [2^n, n, 2^(n−1)].
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_gen_h(n: usize, out: *mut *mut CodforgeMatrix) -> CodforgeStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        match gen_h(n) {
            Ok(m) => unsafe { export_matrix(out, m) },
            Err(e) => fail(e),
        }
    })
}

/// Builds the middle padded slice on `n` columns (n ≡ 0 mod 4):
/// [C(n,n/2+1), n, C(n−1,n/2)].
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_gen_hm(n: usize, out: *mut *mut CodforgeMatrix) -> CodforgeStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        match gen_hm(n) {
            Ok(m) => unsafe { export_matrix(out, m) },
            Err(e) => fail(e),
        }
    })
}

/// Parses a matrix from NUL-terminated text (text or JSON format,
/// auto-detected).
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_matrix_parse(
    text: *const c_char,
    out: *mut *mut CodforgeMatrix,
) -> CodforgeStatus {
    guard(|| {
        if text.is_null() {
            return null_arg("text");
        }
        if out.is_null() {
            return null_arg("out");
        }
        let s = match unsafe { CStr::from_ptr(text) }.to_str() {
            Ok(s) => s,
            Err(_) => {
                set_error("input text is not valid UTF-8");
                return CodforgeStatus::InvalidArgument;
            }
        };
        match parse_auto(s) {
            Ok(m) => unsafe { export_matrix(out, m) },
            Err(e) => fail(e),
        }
    })
}

/// Serializes a matrix in the chosen format.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_matrix_render(
    m: *const CodforgeMatrix,
    format: CodforgeFormat,
    out: *mut *mut c_char,
) -> CodforgeStatus {
    guard(|| {
        let Some(m) = (unsafe { matrix_ref(m) }) else {
            return null_arg("m");
        };
        if out.is_null() {
            return null_arg("out");
        }
        let format = match format {
            CodforgeFormat::Text => MatrixFormat::Text,
            CodforgeFormat::Json => MatrixFormat::Json,
            CodforgeFormat::Csv => MatrixFormat::Csv,
            CodforgeFormat::Latex => MatrixFormat::Latex,
        };
        unsafe { export_string(out, serialize(m, format)) }
    })
}

/// Number of rows (the decoding delay p).
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_matrix_rows(
    m: *const CodforgeMatrix,
    out: *mut usize,
) -> CodforgeStatus {
    guard(|| {
        let Some(m) = (unsafe { matrix_ref(m) }) else {
            return null_arg("m");
        };
        if out.is_null() {
            return null_arg("out");
        }
        unsafe { write_out(out, m.p()) }
    })
}

/// Number of columns (antennas n).
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_matrix_cols(
    m: *const CodforgeMatrix,
    out: *mut usize,
) -> CodforgeStatus {
    guard(|| {
        let Some(m) = (unsafe { matrix_ref(m) }) else {
            return null_arg("m");
        };
        if out.is_null() {
            return null_arg("out");
        }
        unsafe { write_out(out, m.n()) }
    })
}

/// Number of variables (symbols k).
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_matrix_vars(
    m: *const CodforgeMatrix,
    out: *mut usize,
) -> CodforgeStatus {
    guard(|| {
        let Some(m) = (unsafe { matrix_ref(m) }) else {
            return null_arg("m");
        };
        if out.is_null() {
            return null_arg("out");
        }
        unsafe { write_out(out, m.k() as usize) }
    })
}

/// Reads one cell. `row` and `col` are 1-based. A zero entry reports
/// id 0; a variable entry reports its 1-based id plus sign and
/// conjugation flags.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_matrix_entry(
    m: *const CodforgeMatrix,
    row: usize,
    col: usize,
    out_id: *mut u32,
    out_negative: *mut bool,
    out_conjugated: *mut bool,
) -> CodforgeStatus {
    guard(|| {
        let Some(m) = (unsafe { matrix_ref(m) }) else {
            return null_arg("m");
        };
        if out_id.is_null() {
            return null_arg("out_id");
        }
        if out_negative.is_null() {
            return null_arg("out_negative");
        }
        if out_conjugated.is_null() {
            return null_arg("out_conjugated");
        }
        if row < 1 || row > m.p() || col < 1 || col > m.n() {
            set_error(format!(
                "cell ({row}, {col}) outside a {}x{} matrix",
                m.p(),
                m.n()
            ));
            return CodforgeStatus::InvalidArgument;
        }
        let (id, negative, conjugated) = match m.cell(row, col) {
            Entry::Zero => (0, false, false),
            Entry::Var { id, sign, conj } => (id, sign == Sign::Minus, conj),
        };
        unsafe {
            std::ptr::write(out_id, id);
            std::ptr::write(out_negative, negative);
            std::ptr::write(out_conjugated, conjugated);
        }
        CodforgeStatus::Ok
    })
}

/// Checks the orthogonality identity by exact symbolic expansion.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_matrix_is_cod(
    m: *const CodforgeMatrix,
    out: *mut bool,
) -> CodforgeStatus {
    guard(|| {
        let Some(m) = (unsafe { matrix_ref(m) }) else {
            return null_arg("m");
        };
        if out.is_null() {
            return null_arg("out");
        }
        unsafe { write_out(out, m.is_cod()) }
    })
}

/// Checks the once-per-column occupancy discipline. Fails with
/// NOT_A_COD if the matrix is not orthogonal in the first place.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_matrix_is_first_type(
    m: *const CodforgeMatrix,
    out: *mut bool,
) -> CodforgeStatus {
    guard(|| {
        let Some(m) = (unsafe { matrix_ref(m) }) else {
            return null_arg("m");
        };
        if out.is_null() {
            return null_arg("out");
        }
        match m.is_first_type() {
            Ok(v) => unsafe { write_out(out, v) },
            Err(e) => fail(e),
        }
    })
}

/// True when no row mixes conjugated and unconjugated variables.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_matrix_is_conjugation_separated(
    m: *const CodforgeMatrix,
    out: *mut bool,
) -> CodforgeStatus {
    guard(|| {
        let Some(m) = (unsafe { matrix_ref(m) }) else {
            return null_arg("m");
        };
        if out.is_null() {
            return null_arg("out");
        }
        unsafe { write_out(out, m.is_conjugation_separated()) }
    })
}

/// Tests equivalence of two first-type designs under the standard
/// operation group (row/column permutations, negations, conjugations,
/// variable renaming).
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_equivalent(
    a: *const CodforgeMatrix,
    b: *const CodforgeMatrix,
    out: *mut bool,
) -> CodforgeStatus {
    guard(|| {
        let Some(a) = (unsafe { matrix_ref(a) }) else {
            return null_arg("a");
        };
        let Some(b) = (unsafe { matrix_ref(b) }) else {
            return null_arg("b");
        };
        if out.is_null() {
            return null_arg("out");
        }
        match equivalent(a, b) {
            Ok(v) => unsafe { write_out(out, v) },
            Err(e) => fail(e),
        }
    })
}

/// Applies `count` seeded random equivalence operations and returns the
/// scrambled matrix.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_scramble(
    m: *const CodforgeMatrix,
    seed: u64,
    count: usize,
    out: *mut *mut CodforgeMatrix,
) -> CodforgeStatus {
    guard(|| {
        let Some(m) = (unsafe { matrix_ref(m) }) else {
            return null_arg("m");
        };
        if out.is_null() {
            return null_arg("out");
        }
        let (scrambled, _ops) = scramble(m, seed, count);
        unsafe { export_matrix(out, scrambled) }
    })
}

/// Canonicalizes an atomic design. On success writes the canonical
/// matrix and, if `out_ops` is non-NULL, a comma-separated list of the
/// applied operations (empty string when none were needed).
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_canonicalize(
    m: *const CodforgeMatrix,
    out: *mut *mut CodforgeMatrix,
    out_ops: *mut *mut c_char,
) -> CodforgeStatus {
    guard(|| {
        let Some(m) = (unsafe { matrix_ref(m) }) else {
            return null_arg("m");
        };
        if out.is_null() {
            return null_arg("out");
        }
        match canonicalize_atomic(m) {
            Ok((canon, ops)) => {
                if !out_ops.is_null() {
                    let rendered = ops
                        .iter()
                        .map(|op| op.to_string())
                        .collect::<Vec<_>>()
                        .join(", ");
                    let status = unsafe { export_string(out_ops, rendered) };
                    if status != CodforgeStatus::Ok {
                        return status;
                    }
                }
                unsafe { export_matrix(out, canon) }
            }
            Err(e) => fail(e),
        }
    })
}

/// Splits a design into its atomic parts (maximal variable-connected
/// row groups).
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_decompose(
    m: *const CodforgeMatrix,
    out: *mut *mut CodforgeParts,
) -> CodforgeStatus {
    guard(|| {
        let Some(m) = (unsafe { matrix_ref(m) }) else {
            return null_arg("m");
        };
        if out.is_null() {
            return null_arg("out");
        }
        match decompose_atomic(m) {
            Ok(parts) => unsafe {
                write_out(out, Box::into_raw(Box::new(CodforgeParts(parts))))
            },
            Err(e) => fail(e),
        }
    })
}

/// Number of atomic parts in a decomposition.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_parts_len(
    parts: *const CodforgeParts,
    out: *mut usize,
) -> CodforgeStatus {
    guard(|| {
        let Some(parts) = (unsafe { parts.as_ref() }) else {
            return null_arg("parts");
        };
        if out.is_null() {
            return null_arg("out");
        }
        unsafe { write_out(out, parts.0.len()) }
    })
}

/// Copies part `index` (0-based) out as a standalone matrix.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_parts_matrix(
    parts: *const CodforgeParts,
    index: usize,
    out: *mut *mut CodforgeMatrix,
) -> CodforgeStatus {
    guard(|| {
        let Some(parts) = (unsafe { parts.as_ref() }) else {
            return null_arg("parts");
        };
        if out.is_null() {
            return null_arg("out");
        }
        let Some(part) = parts.0.get(index) else {
            set_error(format!(
                "part index {index} outside 0..{}",
                parts.0.len()
            ));
            return CodforgeStatus::InvalidArgument;
        };
        unsafe { export_matrix(out, part.matrix.clone()) }
    })
}

/// Class label of part `index` (0-based): `G<w>`, `H`, or `?`.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_parts_class(
    parts: *const CodforgeParts,
    index: usize,
    out: *mut *mut c_char,
) -> CodforgeStatus {
    guard(|| {
        let Some(parts) = (unsafe { parts.as_ref() }) else {
            return null_arg("parts");
        };
        if out.is_null() {
            return null_arg("out");
        }
        let Some(part) = parts.0.get(index) else {
            set_error(format!(
                "part index {index} outside 0..{}",
                parts.0.len()
            ));
            return CodforgeStatus::InvalidArgument;
        };
        unsafe { export_string(out, part.class.to_string()) }
    })
}

/// Computes the design's atomic signature as a JSON object
/// `{"n":…,"t":{…}}` (plus `"t_h"` when defined).
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_signature_json(
    m: *const CodforgeMatrix,
    out: *mut *mut c_char,
) -> CodforgeStatus {
    guard(|| {
        let Some(m) = (unsafe { matrix_ref(m) }) else {
            return null_arg("m");
        };
        if out.is_null() {
            return null_arg("out");
        }
        match signature(m) {
            Ok(sig) => unsafe { export_string(out, sig.to_json()) },
            Err(e) => fail(e),
        }
    })
}

/// Enumerates the atomic multisets realizing delay `p`, `n` columns, and
/// `k` variables, as JSON `{"solutions":[…]}` (empty array when
/// infeasible).
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_feasible_json(
    p: u64,
    n: usize,
    k: u64,
    out: *mut *mut c_char,
) -> CodforgeStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        match feasible(p, n, k) {
            Ok(solutions) => {
                let body = solutions
                    .iter()
                    .map(|s| s.to_json())
                    .collect::<Vec<_>>()
                    .join(",");
                unsafe { export_string(out, format!("{{\"solutions\":[{body}]}}")) }
            }
            Err(e) => fail(e),
        }
    })
}

/// Maximum achievable rate for `n` columns, as a reduced fraction.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_max_rate(
    n: usize,
    out_num: *mut u64,
    out_den: *mut u64,
) -> CodforgeStatus {
    guard(|| {
        if out_num.is_null() {
            return null_arg("out_num");
        }
        if out_den.is_null() {
            return null_arg("out_den");
        }
        match max_rate(n) {
            Ok(rate) => {
                let (Ok(num), Ok(den)) =
                    (u64::try_from(rate.num()), u64::try_from(rate.den()))
                else {
                    set_error("rate does not fit in 64 bits");
                    return CodforgeStatus::ResourceLimit;
                };
                unsafe {
                    std::ptr::write(out_num, num);
                    std::ptr::write(out_den, den);
                }
                CodforgeStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Minimum decoding delay at the maximum rate for `n` columns.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_min_delay(n: usize, out: *mut u64) -> CodforgeStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        match min_delay(n) {
            Ok(delay) => match u64::try_from(delay) {
                Ok(v) => unsafe { write_out(out, v) },
                Err(_) => {
                    set_error("delay does not fit in 64 bits");
                    CodforgeStatus::ResourceLimit
                }
            },
            Err(e) => fail(e),
        }
    })
}

/// Rate/delay trade-off table for `n` columns as CSV with header
/// `w,p,k,rate_num,rate_den,rate_decimal`.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_tradeoff_csv(n: usize, out: *mut *mut c_char) -> CodforgeStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        match tradeoff_csv(n) {
            Ok(table) => unsafe { export_string(out, table) },
            Err(e) => fail(e),
        }
    })
}

/// Rate/delay trade-off table for `n` columns as a JSON array of row
/// objects.
/// # Safety
/// Pointers must satisfy the crate-level pointer contract (module docs).
#[no_mangle]
pub unsafe extern "C" fn codforge_tradeoff_json(n: usize, out: *mut *mut c_char) -> CodforgeStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        match tradeoff_json(n) {
            Ok(table) => unsafe { export_string(out, table) },
            Err(e) => fail(e),
        }
    })
}
