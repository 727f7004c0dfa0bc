//! C ABI over the sc-lab library: opaque DFA handles, status codes, and
//! UTF-8 strings. The header `include/sc_lab.h` is regenerated by the build
//! script.
//!
//! Conventions:
//! * Every fallible call returns an [`ScStatus`]; on failure the message of
//!   the most recent error on the current thread is available through
//!   [`sc_last_error_message`].
//! * `ScDfa*` values returned through out-parameters are owned by the
//!   caller and released with [`sc_dfa_free`].
//! * `char*` values returned through out-parameters are owned by the caller
//!   and released with [`sc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use sc_lab::bounds::{bound, Bound, BoundQuery};
use sc_lab::construct::{bool_product, build_tree_capped, cat_product, BoolOp, OpTree};
use sc_lab::dfa::Dfa;
use sc_lab::harness::verify_capped;
use sc_lab::json;
use sc_lab::tableau::{saturate_union, saturate_xor, Tableau};
use sc_lab::witness::{brzozowski, witness, BrzozowskiSpec, Shape, TransformRole};
use sc_lab::Error;

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed input text: DFA JSON, expression tree, connective name,
    /// shape name, or role codes.
    ParseError = 3,
    /// A structurally invalid automaton, or a state or letter out of range.
    InvalidAutomaton = 4,
    /// Operands over different alphabets were combined.
    AlphabetMismatch = 5,
    /// Invalid witness sizes, role assignment, or bound query.
    InvalidQuery = 6,
    /// The construction exceeded the requested state cap.
    StateCap = 7,
    /// A value did not fit its C representation.
    Overflow = 8,
    /// A file could not be read or written.
    IoError = 9,
}

/// Kind of a closed-form prediction.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScBoundKind {
    /// The formula is exact and attained by the witness family.
    Exact = 0,
    /// The formula only bounds the complexity from above.
    UpperOnly = 1,
    /// No closed form is provided; `value` is meaningless.
    NoClosedForm = 2,
}

/// A closed-form prediction for one combination.
#[repr(C)]
pub struct ScBound {
    pub kind: ScBoundKind,
    pub value: u64,
}

/// Outcome of measuring one witness instance against its prediction.
#[repr(C)]
pub struct ScVerifyResult {
    /// False when the combination has no closed form.
    pub has_predicted: bool,
    pub predicted: u64,
    /// States of the minimized construction.
    pub measured: u64,
    /// States of the construction before minimization.
    pub reachable: u64,
    /// True when `measured` equals the prediction (vacuously true without
    /// one).
    pub matched: bool,
    pub wall_ms: u64,
}

/// Opaque handle to a complete DFA.
pub struct ScDfa {
    inner: Dfa,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: ScStatus, message: &str) -> ScStatus {
    let text = CString::new(message.replace('\0', " "))
        .expect("NUL bytes stripped");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
    status
}

fn fail_from(err: Error) -> ScStatus {
    let status = match err {
        Error::Parse(_) => ScStatus::ParseError,
        Error::InvalidDfa(_)
        | Error::BadState { .. }
        | Error::BadLetter { .. }
        | Error::NotPermutation => ScStatus::InvalidAutomaton,
        Error::AlphabetMismatch { .. } => ScStatus::AlphabetMismatch,
        Error::BadRoles(_)
        | Error::BadWitnessSize { .. }
        | Error::BadQuery(_)
        | Error::BadFinalCount { .. } => ScStatus::InvalidQuery,
        Error::StateCap { .. } => ScStatus::StateCap,
        Error::Io(_) => ScStatus::IoError,
    };
    fail(status, &err.to_string())
}

unsafe fn text_of<'a>(ptr: *const c_char) -> Result<&'a str, ScStatus> {
    if ptr.is_null() {
        return Err(fail(ScStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(ScStatus::InvalidUtf8, "string argument is not valid UTF-8"))
}

unsafe fn dfa_of<'a>(ptr: *const ScDfa) -> Result<&'a Dfa, ScStatus> {
    ptr.as_ref()
        .map(|handle| &handle.inner)
        .ok_or_else(|| fail(ScStatus::NullArgument, "null automaton handle"))
}

fn raw(d: Dfa) -> *mut ScDfa {
    Box::into_raw(Box::new(ScDfa { inner: d }))
}

unsafe fn give(d: Dfa, out: *mut *mut ScDfa) -> ScStatus {
    if out.is_null() {
        return fail(ScStatus::NullArgument, "null output pointer");
    }
    *out = raw(d);
    ScStatus::Ok
}

unsafe fn give_string(text: String, out: *mut *mut c_char) -> ScStatus {
    if out.is_null() {
        return fail(ScStatus::NullArgument, "null output pointer");
    }
    match CString::new(text) {
        Ok(text) => {
            *out = text.into_raw();
            ScStatus::Ok
        }
        Err(_) => fail(ScStatus::Overflow, "output contains a NUL byte"),
    }
}

fn parse_shape(text: &str) -> Result<Shape, ScStatus> {
    Shape::parse(text).map_err(fail_from)
}

fn parse_ops(text: &str) -> Result<Vec<BoolOp>, ScStatus> {
    text.split(',')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(|part| BoolOp::parse(part).map_err(fail_from))
        .collect()
}

/// Version of the library as a static string; never freed.
#[no_mangle]
pub extern "C" fn sc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the most recent failure on this thread, or null if none
/// occurred yet. Owned by the library; valid until the next failing call on
/// the same thread.
#[no_mangle]
pub extern "C" fn sc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |text| text.as_ptr())
    })
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sc_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Releases an automaton handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sc_dfa_free(dfa: *mut ScDfa) {
    if !dfa.is_null() {
        drop(Box::from_raw(dfa));
    }
}

/// Parses an automaton from its JSON representation.
#[no_mangle]
pub unsafe extern "C" fn sc_dfa_from_json(text: *const c_char, out: *mut *mut ScDfa) -> ScStatus {
    let text = match text_of(text) {
        Ok(text) => text,
        Err(status) => return status,
    };
    match json::from_json(text) {
        Ok(d) => give(d, out),
        Err(err) => fail_from(err),
    }
}

/// Serializes an automaton to JSON. The string is released with
/// `sc_string_free`.
#[no_mangle]
pub unsafe extern "C" fn sc_dfa_to_json(dfa: *const ScDfa, out: *mut *mut c_char) -> ScStatus {
    let d = match dfa_of(dfa) {
        Ok(d) => d,
        Err(status) => return status,
    };
    give_string(json::to_json(d), out)
}

/// Reads an automaton from a JSON file.
#[no_mangle]
pub unsafe extern "C" fn sc_dfa_read_file(path: *const c_char, out: *mut *mut ScDfa) -> ScStatus {
    let path = match text_of(path) {
        Ok(path) => path,
        Err(status) => return status,
    };
    match json::read_file(std::path::Path::new(path)) {
        Ok(d) => give(d, out),
        Err(err) => fail_from(err),
    }
}

/// Writes an automaton to a JSON file.
#[no_mangle]
pub unsafe extern "C" fn sc_dfa_write_file(dfa: *const ScDfa, path: *const c_char) -> ScStatus {
    let d = match dfa_of(dfa) {
        Ok(d) => d,
        Err(status) => return status,
    };
    let path = match text_of(path) {
        Ok(path) => path,
        Err(status) => return status,
    };
    match json::write_file(d, std::path::Path::new(path)) {
        Ok(()) => ScStatus::Ok,
        Err(err) => fail_from(err),
    }
}

/// Number of states, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn sc_dfa_state_count(dfa: *const ScDfa) -> usize {
    dfa.as_ref().map_or(0, |handle| handle.inner.state_count())
}

/// Number of letters, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn sc_dfa_alphabet_size(dfa: *const ScDfa) -> usize {
    dfa.as_ref().map_or(0, |handle| handle.inner.alphabet_size())
}

/// The minimal automaton of the same language, canonically numbered.
#[no_mangle]
pub unsafe extern "C" fn sc_dfa_minimize(dfa: *const ScDfa, out: *mut *mut ScDfa) -> ScStatus {
    let d = match dfa_of(dfa) {
        Ok(d) => d,
        Err(status) => return status,
    };
    give(d.minimize(), out)
}

/// Number of states of the minimal automaton.
#[no_mangle]
pub unsafe extern "C" fn sc_dfa_state_complexity(dfa: *const ScDfa, out: *mut usize) -> ScStatus {
    let d = match dfa_of(dfa) {
        Ok(d) => d,
        Err(status) => return status,
    };
    if out.is_null() {
        return fail(ScStatus::NullArgument, "null output pointer");
    }
    *out = d.state_complexity();
    ScStatus::Ok
}

/// Whether two automata are identical up to state renumbering.
#[no_mangle]
pub unsafe extern "C" fn sc_dfa_is_isomorphic(
    a: *const ScDfa,
    b: *const ScDfa,
    out: *mut bool,
) -> ScStatus {
    let (a, b) = match (dfa_of(a), dfa_of(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(status), _) | (_, Err(status)) => return status,
    };
    if out.is_null() {
        return fail(ScStatus::NullArgument, "null output pointer");
    }
    *out = a.is_isomorphic(b);
    ScStatus::Ok
}

/// Whether two automata over the same alphabet accept the same language.
#[no_mangle]
pub unsafe extern "C" fn sc_dfa_equivalent(
    a: *const ScDfa,
    b: *const ScDfa,
    out: *mut bool,
) -> ScStatus {
    let (a, b) = match (dfa_of(a), dfa_of(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(status), _) | (_, Err(status)) => return status,
    };
    if out.is_null() {
        return fail(ScStatus::NullArgument, "null output pointer");
    }
    match a.equivalent(b) {
        Ok(same) => {
            *out = same;
            ScStatus::Ok
        }
        Err(err) => fail_from(err),
    }
}

/// A Brzozowski automaton with `n` states. `roles` assigns one letter per
/// character, `C` cycle, `T` transposition of 0 and 1, `K` contraction of 1
/// to 0, `.` identity; letters are named a, b, c, ... in order.
#[no_mangle]
pub unsafe extern "C" fn sc_brzozowski(
    n: usize,
    roles: *const c_char,
    out: *mut *mut ScDfa,
) -> ScStatus {
    let roles = match text_of(roles) {
        Ok(roles) => roles,
        Err(status) => return status,
    };
    if roles.is_empty() || roles.len() > 26 {
        return fail(ScStatus::ParseError, "role codes carry 1 to 26 letters");
    }
    let mut parsed = Vec::with_capacity(roles.len());
    for code in roles.chars() {
        parsed.push(match code {
            'C' => TransformRole::Cycle,
            'T' => TransformRole::Transposition01,
            'K' => TransformRole::Contraction10,
            '.' => TransformRole::Identity,
            other => {
                return fail(
                    ScStatus::ParseError,
                    &format!("unknown role code '{other}' (expected C, T, K or .)"),
                )
            }
        });
    }
    let alphabet = (0..parsed.len())
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    match brzozowski(&BrzozowskiSpec { n, alphabet, roles: parsed }) {
        Ok(d) => give(d, out),
        Err(err) => fail_from(err),
    }
}

/// The three witness components of a shape at sizes (m,n,p). All three out
/// pointers receive new handles.
#[no_mangle]
pub unsafe extern "C" fn sc_witness(
    shape: *const c_char,
    m: usize,
    n: usize,
    p: usize,
    out_a: *mut *mut ScDfa,
    out_b: *mut *mut ScDfa,
    out_c: *mut *mut ScDfa,
) -> ScStatus {
    let shape = match text_of(shape).and_then(|text| parse_shape(text)) {
        Ok(shape) => shape,
        Err(status) => return status,
    };
    if out_a.is_null() || out_b.is_null() || out_c.is_null() {
        return fail(ScStatus::NullArgument, "null output pointer");
    }
    match witness(shape, m, n, p) {
        Ok([a, b, c]) => {
            *out_a = raw(a);
            *out_b = raw(b);
            *out_c = raw(c);
            ScStatus::Ok
        }
        Err(err) => fail_from(err),
    }
}

/// The catenation product of two automata over the same alphabet.
#[no_mangle]
pub unsafe extern "C" fn sc_cat(
    a: *const ScDfa,
    b: *const ScDfa,
    out: *mut *mut ScDfa,
) -> ScStatus {
    let (a, b) = match (dfa_of(a), dfa_of(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(status), _) | (_, Err(status)) => return status,
    };
    match cat_product(a, b) {
        Ok(built) => give(built.dfa, out),
        Err(err) => fail_from(err),
    }
}

/// The boolean product of two automata under a connective: "or", "and",
/// "xor", or a four-bit truth table such as "0110".
#[no_mangle]
pub unsafe extern "C" fn sc_bool(
    op: *const c_char,
    a: *const ScDfa,
    b: *const ScDfa,
    out: *mut *mut ScDfa,
) -> ScStatus {
    let op = match text_of(op) {
        Ok(text) => match BoolOp::parse(text) {
            Ok(op) => op,
            Err(err) => return fail_from(err),
        },
        Err(status) => return status,
    };
    let (a, b) = match (dfa_of(a), dfa_of(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(status), _) | (_, Err(status)) => return status,
    };
    match bool_product(op, a, b) {
        Ok(built) => give(built.dfa, out),
        Err(err) => fail_from(err),
    }
}

/// Builds a combined automaton from an expression tree such as
/// "cat(0,and(1,2))"; leaves index `operands`. Fails with `SC_STATUS_STATE_CAP`
/// when the construction would exceed `max_states` states.
#[no_mangle]
pub unsafe extern "C" fn sc_build_tree(
    tree: *const c_char,
    operands: *const *const ScDfa,
    count: usize,
    max_states: usize,
    out: *mut *mut ScDfa,
) -> ScStatus {
    let tree = match text_of(tree) {
        Ok(text) => match OpTree::parse(text) {
            Ok(tree) => tree,
            Err(err) => return fail_from(err),
        },
        Err(status) => return status,
    };
    if count > 0 && operands.is_null() {
        return fail(ScStatus::NullArgument, "null operand array");
    }
    let handles = if count == 0 {
        &[]
    } else {
        std::slice::from_raw_parts(operands, count)
    };
    let mut refs = Vec::with_capacity(count);
    for &handle in handles {
        match dfa_of(handle) {
            Ok(d) => refs.push(d),
            Err(status) => return status,
        }
    }
    match build_tree_capped(&tree, &refs, max_states) {
        Ok(built) => give(built.dfa, out),
        Err(err) => fail_from(err),
    }
}

/// The closed-form prediction for a shape, connectives (comma-separated)
/// and sizes.
#[no_mangle]
pub unsafe extern "C" fn sc_bound(
    shape: *const c_char,
    ops: *const c_char,
    m: usize,
    n: usize,
    p: usize,
    out: *mut ScBound,
) -> ScStatus {
    let shape = match text_of(shape).and_then(|text| parse_shape(text)) {
        Ok(shape) => shape,
        Err(status) => return status,
    };
    let ops = match text_of(ops).and_then(|text| parse_ops(text)) {
        Ok(ops) => ops,
        Err(status) => return status,
    };
    if out.is_null() {
        return fail(ScStatus::NullArgument, "null output pointer");
    }
    let query = match BoundQuery::new(shape, ops, m, n, p) {
        Ok(query) => query,
        Err(err) => return fail_from(err),
    };
    let (kind, value) = match bound(&query) {
        Bound::Exact { value, .. } => (ScBoundKind::Exact, value),
        Bound::UpperOnly { value, .. } => (ScBoundKind::UpperOnly, value),
        Bound::NoClosedForm => {
            *out = ScBound { kind: ScBoundKind::NoClosedForm, value: 0 };
            return ScStatus::Ok;
        }
    };
    match u64::try_from(value) {
        Ok(value) => {
            *out = ScBound { kind, value };
            ScStatus::Ok
        }
        Err(_) => fail(ScStatus::Overflow, "bound exceeds 64 bits"),
    }
}

/// Builds the witness instance of a shape at sizes (m,n,p), minimizes it,
/// and compares the measured complexity against the prediction.
#[no_mangle]
pub unsafe extern "C" fn sc_verify(
    shape: *const c_char,
    ops: *const c_char,
    m: usize,
    n: usize,
    p: usize,
    max_states: usize,
    out: *mut ScVerifyResult,
) -> ScStatus {
    let shape = match text_of(shape).and_then(|text| parse_shape(text)) {
        Ok(shape) => shape,
        Err(status) => return status,
    };
    let ops = match text_of(ops).and_then(|text| parse_ops(text)) {
        Ok(ops) => ops,
        Err(status) => return status,
    };
    if out.is_null() {
        return fail(ScStatus::NullArgument, "null output pointer");
    }
    let row = match verify_capped(shape, &ops, m, n, p, max_states) {
        Ok(row) => row,
        Err(err) => return fail_from(err),
    };
    let predicted = match row.predicted {
        Some(value) => match u64::try_from(value) {
            Ok(value) => Some(value),
            Err(_) => return fail(ScStatus::Overflow, "prediction exceeds 64 bits"),
        },
        None => None,
    };
    *out = ScVerifyResult {
        has_predicted: predicted.is_some(),
        predicted: predicted.unwrap_or(0),
        measured: row.measured.unwrap_or(0),
        reachable: row.reachable.unwrap_or(0),
        matched: row.matched,
        wall_ms: row.wall_ms,
    };
    ScStatus::Ok
}

/// Saturates a rows x cols tableau under "union" or "xor". `cells` and
/// `out_cells` are row-major arrays of rows*cols bytes, nonzero meaning
/// marked; they may alias. At most 128 columns are supported.
#[no_mangle]
pub unsafe extern "C" fn sc_saturate(
    op: *const c_char,
    rows: usize,
    cols: usize,
    cells: *const u8,
    out_cells: *mut u8,
) -> ScStatus {
    let op = match text_of(op) {
        Ok(op) => op,
        Err(status) => return status,
    };
    if cells.is_null() || out_cells.is_null() {
        return fail(ScStatus::NullArgument, "null cell array");
    }
    if rows == 0 || cols == 0 {
        return fail(ScStatus::InvalidQuery, "tableau dimensions must be positive");
    }
    if cols > 128 {
        return fail(ScStatus::InvalidQuery, "at most 128 columns are supported");
    }
    let len = match rows.checked_mul(cols) {
        Some(len) => len,
        None => return fail(ScStatus::Overflow, "tableau size overflows"),
    };
    let input = std::slice::from_raw_parts(cells, len);
    let mut t = Tableau::new(rows, cols);
    for (i, &value) in input.iter().enumerate() {
        if value != 0 {
            t.mark(i / cols, i % cols);
        }
    }
    let saturated = match op {
        "union" => saturate_union(&t),
        "xor" => saturate_xor(&t),
        other => {
            return fail(
                ScStatus::ParseError,
                &format!("unknown saturation \"{other}\" (expected union or xor)"),
            )
        }
    };
    let output = std::slice::from_raw_parts_mut(out_cells, len);
    for (i, slot) in output.iter_mut().enumerate() {
        *slot = u8::from(saturated.marked(i / cols, i % cols));
    }
    ScStatus::Ok
}
