//! C ABI for the `lup` list-update library.
//!
//! Every fallible function returns a [`LupStatus`] and reports its results
//! through out-pointers; [`lup_last_error_message`] holds a human-readable
//! description of the most recent failure on the calling thread. Sequences
//! are opaque handles created by [`lup_sequence_parse`] or
//! [`lup_sequence_from_family`] and released by [`lup_sequence_free`].
//! Strings and byte buffers returned through out-pointers are owned by the
//! caller and must be released with [`lup_string_free`] and
//! [`lup_buffer_free`].
//!
//! The C header is generated into `include/lup.h` by the build script.

#![deny(unsafe_op_in_unsafe_fn)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use lup::advice::advice_lower_bound;
use lup::algorithms::{self, AlgorithmId};
use lup::compress::{compress, decompress, CompressorAlg};
use lup::generators::FamilySpec;
use lup::list::{CostLedger, CostModel};
use lup::offline::{lookahead_strategy, opt_dp_with_limit, pair_opt, DEFAULT_MAX_L};
use lup::seqfile::NamedSequence;
use lup::Error;

/// Result of a call into this library.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LupStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Textual input (sequence file, family, algorithm or advice) did not
    /// parse.
    Parse = 3,
    /// The list is longer than the factorial-state limit of the exact
    /// optimum.
    Capacity = 4,
    /// A binary payload (compressed stream) did not decode.
    Format = 5,
    /// A numeric argument was outside its documented domain, or an
    /// operation defined only for two-item lists was given another size.
    Domain = 6,
    /// An invariant inside the library failed; not expected to be
    /// reachable through this interface.
    Internal = 7,
}

/// Whether an access to position `i` costs `i` (full) or `i - 1` (partial).
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LupCostModel {
    Full = 0,
    Partial = 1,
}

impl LupCostModel {
    fn as_model(self) -> CostModel {
        match self {
            LupCostModel::Full => CostModel::Full,
            LupCostModel::Partial => CostModel::Partial,
        }
    }
}

/// Access cost and paid-exchange cost accumulated by a run. The total cost
/// is the sum of the two fields.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LupCost {
    pub access: u64,
    pub paid_exchanges: u64,
}

impl LupCost {
    fn from_ledger(ledger: CostLedger) -> Self {
        LupCost { access: ledger.access, paid_exchanges: ledger.paid_exchanges }
    }
}

/// A request sequence together with its initial list and token names.
/// Opaque: create with [`lup_sequence_parse`] or
/// [`lup_sequence_from_family`], release with [`lup_sequence_free`].
pub struct LupSequence {
    inner: NamedSequence,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn fail(status: LupStatus, message: &str) -> LupStatus {
    let message = CString::new(message)
        .unwrap_or_else(|_| CString::new("error message contained a NUL byte").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
    status
}

fn fail_error(err: Error) -> LupStatus {
    let status = match err {
        Error::UnknownItem { .. } | Error::ItemSetMismatch | Error::BackwardFreeMove { .. } => {
            LupStatus::Internal
        }
        Error::NotTwoItems { .. } | Error::OutOfRange(_) => LupStatus::Domain,
        Error::CapacityExceeded { .. } => LupStatus::Capacity,
        Error::InvalidAdvice(_) | Error::UnknownAlgorithm(_) | Error::Parse(_) => LupStatus::Parse,
        Error::Format(_) => LupStatus::Format,
    };
    fail(status, &err.to_string())
}

/// Reads a caller-supplied C string as UTF-8.
///
/// # Safety
///
/// `ptr` must either be null or point to a NUL-terminated string that stays
/// valid for the duration of the call.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, LupStatus> {
    if ptr.is_null() {
        return Err(fail(LupStatus::NullArgument, &format!("{what} must not be null")));
    }
    // SAFETY: non-null and NUL-terminated per the caller contract.
    let raw = unsafe { CStr::from_ptr(ptr) };
    raw.to_str()
        .map_err(|_| fail(LupStatus::InvalidUtf8, &format!("{what} is not valid UTF-8")))
}

/// Reads a caller-supplied byte buffer. A null pointer is accepted when
/// `len` is zero and denotes the empty buffer.
///
/// # Safety
///
/// Unless null, `ptr` must point to `len` readable bytes that stay valid
/// for the duration of the call.
unsafe fn read_bytes<'a>(
    ptr: *const u8,
    len: usize,
    what: &str,
) -> Result<&'a [u8], LupStatus> {
    if ptr.is_null() {
        if len == 0 {
            return Ok(&[]);
        }
        return Err(fail(LupStatus::NullArgument, &format!("{what} must not be null")));
    }
    // SAFETY: non-null and valid for `len` bytes per the caller contract.
    Ok(unsafe { std::slice::from_raw_parts(ptr, len) })
}

/// Hands a byte vector to the caller through `out_data`/`out_len`. The
/// caller releases it with [`lup_buffer_free`].
///
/// # Safety
///
/// `out_data` and `out_len` must be non-null, writable pointers.
unsafe fn give_buffer(bytes: Vec<u8>, out_data: *mut *mut u8, out_len: *mut usize) {
    let mut boxed = bytes.into_boxed_slice();
    let data = boxed.as_mut_ptr();
    let len = boxed.len();
    std::mem::forget(boxed);
    // SAFETY: both out-pointers are writable per the caller contract.
    unsafe {
        *out_data = data;
        *out_len = len;
    }
}

/// Message describing the most recent failure on the calling thread, or
/// null if the most recent fallible call succeeded. The pointer stays valid
/// until the next call into this library on the same thread; do not free
/// it.
#[no_mangle]
pub extern "C" fn lup_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(message) => message.as_ptr(),
        None => ptr::null(),
    })
}

/// Parses a sequence file: an optional `#list:` header naming the initial
/// list followed by whitespace-separated request tokens. On success stores
/// a new handle in `*out`.
///
/// # Safety
///
/// `text` must point to a NUL-terminated string and `out` must be a valid,
/// writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lup_sequence_parse(
    text: *const c_char,
    out: *mut *mut LupSequence,
) -> LupStatus {
    clear_error();
    if out.is_null() {
        return fail(LupStatus::NullArgument, "out must not be null");
    }
    // SAFETY: `text` is NUL-terminated per the caller contract.
    let text = match unsafe { read_str(text, "text") } {
        Ok(text) => text,
        Err(status) => return status,
    };
    match NamedSequence::parse(text) {
        Ok(inner) => {
            // SAFETY: `out` is writable per the caller contract.
            unsafe { *out = Box::into_raw(Box::new(LupSequence { inner })) };
            LupStatus::Ok
        }
        Err(err) => fail_error(err),
    }
}

/// Generates one of the built-in request families from its compact form,
/// e.g. `"alpha:3"`, `"beta:40,5"`, `"bitstring:0110"` or `"random:3,8,7"`.
/// On success stores a new handle in `*out`.
///
/// # Safety
///
/// `family` must point to a NUL-terminated string and `out` must be a
/// valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lup_sequence_from_family(
    family: *const c_char,
    out: *mut *mut LupSequence,
) -> LupStatus {
    clear_error();
    if out.is_null() {
        return fail(LupStatus::NullArgument, "out must not be null");
    }
    // SAFETY: `family` is NUL-terminated per the caller contract.
    let family = match unsafe { read_str(family, "family") } {
        Ok(family) => family,
        Err(status) => return status,
    };
    let generated = FamilySpec::parse_compact(family).and_then(|spec| spec.generate());
    match generated {
        Ok(inner) => {
            // SAFETY: `out` is writable per the caller contract.
            unsafe { *out = Box::into_raw(Box::new(LupSequence { inner })) };
            LupStatus::Ok
        }
        Err(err) => fail_error(err),
    }
}

/// Releases a sequence handle. Passing null is a no-op.
///
/// # Safety
///
/// `seq` must be null or a handle obtained from this library that has not
/// been freed yet; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lup_sequence_free(seq: *mut LupSequence) {
    if seq.is_null() {
        return;
    }
    // SAFETY: `seq` came from Box::into_raw and is freed exactly once.
    drop(unsafe { Box::from_raw(seq) });
}

/// Number of items in the sequence's initial list, or 0 if `seq` is null.
///
/// # Safety
///
/// `seq` must be null or a live handle obtained from this library.
#[no_mangle]
pub unsafe extern "C" fn lup_sequence_items(seq: *const LupSequence) -> usize {
    if seq.is_null() {
        return 0;
    }
    // SAFETY: `seq` points to a live handle per the caller contract.
    unsafe { &*seq }.inner.seq().l()
}

/// Number of requests in the sequence, or 0 if `seq` is null.
///
/// # Safety
///
/// `seq` must be null or a live handle obtained from this library.
#[no_mangle]
pub unsafe extern "C" fn lup_sequence_requests(seq: *const LupSequence) -> usize {
    if seq.is_null() {
        return 0;
    }
    // SAFETY: `seq` points to a live handle per the caller contract.
    unsafe { &*seq }.inner.seq().n()
}

/// Renders a sequence back to its file form. On success stores a
/// NUL-terminated string in `*out`; release it with [`lup_string_free`].
///
/// # Safety
///
/// `seq` must be a live handle obtained from this library and `out` must
/// be a valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lup_sequence_render(
    seq: *const LupSequence,
    out: *mut *mut c_char,
) -> LupStatus {
    clear_error();
    if seq.is_null() || out.is_null() {
        return fail(LupStatus::NullArgument, "seq and out must not be null");
    }
    // SAFETY: `seq` points to a live handle per the caller contract.
    let rendered = unsafe { &*seq }.inner.render();
    match CString::new(rendered) {
        Ok(text) => {
            // SAFETY: `out` is writable per the caller contract.
            unsafe { *out = text.into_raw() };
            LupStatus::Ok
        }
        Err(_) => fail(LupStatus::Internal, "rendered sequence contained a NUL byte"),
    }
}

/// Serves the whole sequence with an online algorithm and stores its cost
/// in `*out`. Algorithm names: `"mtf"`, `"ts"`, `"mtfo"`, `"mtfe"`,
/// `"mtf2:<bits>"` with one `0`/`1` per item, or `"bit:<seed>"`.
///
/// # Safety
///
/// `seq` must be a live handle obtained from this library, `algorithm`
/// must point to a NUL-terminated string, and `out` must be a valid,
/// writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lup_run(
    seq: *const LupSequence,
    algorithm: *const c_char,
    model: LupCostModel,
    out: *mut LupCost,
) -> LupStatus {
    clear_error();
    if seq.is_null() || out.is_null() {
        return fail(LupStatus::NullArgument, "seq and out must not be null");
    }
    // SAFETY: `algorithm` is NUL-terminated per the caller contract.
    let algorithm = match unsafe { read_str(algorithm, "algorithm") } {
        Ok(algorithm) => algorithm,
        Err(status) => return status,
    };
    // SAFETY: `seq` points to a live handle per the caller contract.
    let sequence = unsafe { &*seq }.inner.seq();
    let ledger = AlgorithmId::parse(algorithm)
        .and_then(|id| algorithms::run(&id, sequence, model.as_model()));
    match ledger {
        Ok(ledger) => {
            // SAFETY: `out` is writable per the caller contract.
            unsafe { *out = LupCost::from_ledger(ledger) };
            LupStatus::Ok
        }
        Err(err) => fail_error(err),
    }
}

/// Exact optimal offline cost of the sequence, by dynamic programming over
/// all permutations of the list. `max_items` caps the list length the
/// search will accept; pass 0 for the built-in default of 6. Fails with
/// [`LupStatus::Capacity`] when the list is longer than the cap.
///
/// # Safety
///
/// `seq` must be a live handle obtained from this library and `out` must
/// be a valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lup_opt_cost(
    seq: *const LupSequence,
    model: LupCostModel,
    max_items: usize,
    out: *mut u64,
) -> LupStatus {
    clear_error();
    if seq.is_null() || out.is_null() {
        return fail(LupStatus::NullArgument, "seq and out must not be null");
    }
    let limit = if max_items == 0 { DEFAULT_MAX_L } else { max_items };
    // SAFETY: `seq` points to a live handle per the caller contract.
    let sequence = unsafe { &*seq }.inner.seq();
    match opt_dp_with_limit(sequence, model.as_model(), limit) {
        Ok(solution) => {
            // SAFETY: `out` is writable per the caller contract.
            unsafe { *out = solution.cost };
            LupStatus::Ok
        }
        Err(err) => fail_error(err),
    }
}

/// Optimal offline cost of a two-item sequence, computed directly. Fails
/// with [`LupStatus::Domain`] when the list does not hold exactly two
/// items.
///
/// # Safety
///
/// `seq` must be a live handle obtained from this library and `out` must
/// be a valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lup_pair_opt_cost(
    seq: *const LupSequence,
    model: LupCostModel,
    out: *mut u64,
) -> LupStatus {
    clear_error();
    if seq.is_null() || out.is_null() {
        return fail(LupStatus::NullArgument, "seq and out must not be null");
    }
    // SAFETY: `seq` points to a live handle per the caller contract.
    let sequence = unsafe { &*seq }.inner.seq();
    match pair_opt(sequence, model.as_model()) {
        Ok(cost) => {
            // SAFETY: `out` is writable per the caller contract.
            unsafe { *out = cost };
            LupStatus::Ok
        }
        Err(err) => fail_error(err),
    }
}

/// Cost of the one-step-lookahead offline strategy, which moves the
/// requested item to the front exactly when the next request repeats it.
///
/// # Safety
///
/// `seq` must be a live handle obtained from this library and `out` must
/// be a valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lup_strategy_cost(
    seq: *const LupSequence,
    model: LupCostModel,
    out: *mut LupCost,
) -> LupStatus {
    clear_error();
    if seq.is_null() || out.is_null() {
        return fail(LupStatus::NullArgument, "seq and out must not be null");
    }
    // SAFETY: `seq` points to a live handle per the caller contract.
    let sequence = unsafe { &*seq }.inner.seq();
    match lookahead_strategy(sequence, model.as_model()) {
        Ok(ledger) => {
            // SAFETY: `out` is writable per the caller contract.
            unsafe { *out = LupCost::from_ledger(ledger) };
            LupStatus::Ok
        }
        Err(err) => fail_error(err),
    }
}

/// Per-request advice lower bound: the minimum advice density (bits per
/// request) below which no online algorithm can be `gamma`-competitive on
/// two-item lists, evaluated for sequences of length `n`. Requires
/// `1 < gamma < 15/14` and `n >= 1`; the result is in bits per request.
///
/// # Safety
///
/// `out` must be a valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lup_advice_lower_bound(
    gamma: f64,
    n: u64,
    out: *mut f64,
) -> LupStatus {
    clear_error();
    if out.is_null() {
        return fail(LupStatus::NullArgument, "out must not be null");
    }
    match advice_lower_bound(gamma, n) {
        Ok(bound) => {
            // SAFETY: `out` is writable per the caller contract.
            unsafe { *out = bound };
            LupStatus::Ok
        }
        Err(err) => fail_error(err),
    }
}

/// Compresses a byte string with a list-update compressor. Algorithm
/// names: `"mtf"`, `"ts"`, `"mtfo"`, `"mtfe"`, or `"best3"` to pick the
/// cheapest of `ts`/`mtfo`/`mtfe` and record the choice in the stream. On
/// success stores a buffer in `*out_data`/`*out_len`; release it with
/// [`lup_buffer_free`]. `out_payload_bits`, if non-null, receives the
/// number of payload bits before byte padding, which equals the
/// algorithm's full-model access cost on the text.
///
/// # Safety
///
/// `data` must point to `len` readable bytes (null is allowed when `len`
/// is 0), `algorithm` must point to a NUL-terminated string, and
/// `out_data`/`out_len` must be valid, writable pointers.
#[no_mangle]
pub unsafe extern "C" fn lup_compress(
    data: *const u8,
    len: usize,
    algorithm: *const c_char,
    out_data: *mut *mut u8,
    out_len: *mut usize,
    out_payload_bits: *mut u64,
) -> LupStatus {
    clear_error();
    if out_data.is_null() || out_len.is_null() {
        return fail(LupStatus::NullArgument, "out_data and out_len must not be null");
    }
    // SAFETY: `data` covers `len` readable bytes per the caller contract.
    let text = match unsafe { read_bytes(data, len, "data") } {
        Ok(text) => text,
        Err(status) => return status,
    };
    // SAFETY: `algorithm` is NUL-terminated per the caller contract.
    let algorithm = match unsafe { read_str(algorithm, "algorithm") } {
        Ok(algorithm) => algorithm,
        Err(status) => return status,
    };
    let compressed =
        CompressorAlg::parse(algorithm).and_then(|alg| compress(text, alg));
    match compressed {
        Ok(compressed) => {
            if !out_payload_bits.is_null() {
                // SAFETY: non-null, and writable per the caller contract.
                unsafe { *out_payload_bits = compressed.payload_bits };
            }
            // SAFETY: both out-pointers are writable per the caller contract.
            unsafe { give_buffer(compressed.bytes, out_data, out_len) };
            LupStatus::Ok
        }
        Err(err) => fail_error(err),
    }
}

/// Decompresses a stream produced by [`lup_compress`]. On success stores
/// the recovered text in `*out_data`/`*out_len`; release it with
/// [`lup_buffer_free`].
///
/// # Safety
///
/// `data` must point to `len` readable bytes (null is allowed when `len`
/// is 0) and `out_data`/`out_len` must be valid, writable pointers.
#[no_mangle]
pub unsafe extern "C" fn lup_decompress(
    data: *const u8,
    len: usize,
    out_data: *mut *mut u8,
    out_len: *mut usize,
) -> LupStatus {
    clear_error();
    if out_data.is_null() || out_len.is_null() {
        return fail(LupStatus::NullArgument, "out_data and out_len must not be null");
    }
    // SAFETY: `data` covers `len` readable bytes per the caller contract.
    let bytes = match unsafe { read_bytes(data, len, "data") } {
        Ok(bytes) => bytes,
        Err(status) => return status,
    };
    match decompress(bytes) {
        Ok(text) => {
            // SAFETY: both out-pointers are writable per the caller contract.
            unsafe { give_buffer(text, out_data, out_len) };
            LupStatus::Ok
        }
        Err(err) => fail_error(err),
    }
}

/// Releases a buffer returned through an out-pointer of this library.
/// `len` must be the length that was stored next to the pointer. Passing
/// null is a no-op.
///
/// # Safety
///
/// `data` must be null or a buffer obtained from this library that has
/// not been freed yet, paired with its original length.
#[no_mangle]
pub unsafe extern "C" fn lup_buffer_free(data: *mut u8, len: usize) {
    if data.is_null() {
        return;
    }
    // SAFETY: the buffer was leaked from a boxed slice of exactly `len`
    // bytes and is freed exactly once.
    drop(unsafe { Vec::from_raw_parts(data, len, len) });
}

/// Releases a string returned through an out-pointer of this library.
/// Passing null is a no-op.
///
/// # Safety
///
/// `text` must be null or a string obtained from this library that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn lup_string_free(text: *mut c_char) {
    if text.is_null() {
        return;
    }
    // SAFETY: the string came from CString::into_raw and is freed exactly
    // once.
    drop(unsafe { CString::from_raw(text) });
}
