//! C ABI over `qcoh`.
//!
//! Every function returns a [`QcohStatus`]. On failure a message is kept in
//! thread-local storage and can be copied out with [`qcoh_last_error`].
//! Output arrays follow one convention: the required length is always written
//! to `*out_len`, and `QCOH_STATUS_BUFFER_TOO_SMALL` is returned when `cap` is
//! smaller than that.
//!
//! Partitions are passed as NUL-terminated strings such as `"3,1"`; `""` and
//! `"0"` both name the empty partition.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use qcoh::peterson::Kind;
use qcoh::ring::{evaluation_tables, structure_constants, EvaluationTables};
use qcoh::spectral::{self, Status};
use qcoh::{Error, StrictPartition};

pub const QCOH_KIND_OG: u32 = 0;
pub const QCOH_KIND_LG: u32 = 1;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcohStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    Precision = 4,
    BufferTooSmall = 5,
    Internal = 6,
}

/// Opaque handle to the cached evaluation tables of one ring.
pub struct QcohRing {
    tables: Arc<EvaluationTables>,
}

/// One term `coeff · (class) · q^q_degree`; `class_index` is a basis position.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QcohTerm {
    pub class_index: u32,
    pub q_degree: u32,
    pub coeff: i64,
}

/// `status`: 0 pass, 1 fail, 2 indeterminate.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QcohConjectureO {
    pub t0: f64,
    pub fano_index: u32,
    pub max_modulus_count: u32,
    pub expected_max_modulus_count: u32,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub status: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(status: QcohStatus, msg: impl Into<String>) -> QcohStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
    status
}

fn from_error(e: Error) -> QcohStatus {
    let status = match e {
        Error::OutOfRange { .. } => QcohStatus::OutOfRange,
        Error::Precision(_) => QcohStatus::Precision,
        Error::Consistency(_) => QcohStatus::Internal,
        _ => QcohStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn guarded(f: impl FnOnce() -> Result<(), QcohStatus>) -> QcohStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| e.borrow_mut().clear());
            QcohStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(QcohStatus::Internal, "panic inside qcoh"),
    }
}

fn kind_from(kind: u32) -> Result<Kind, QcohStatus> {
    match kind {
        QCOH_KIND_OG => Ok(Kind::Og),
        QCOH_KIND_LG => Ok(Kind::Lg),
        k => Err(fail(QcohStatus::InvalidArgument, format!("unknown kind {k}"))),
    }
}

unsafe fn ring_ref<'a>(ring: *const QcohRing) -> Result<&'a QcohRing, QcohStatus> {
    ring.as_ref().ok_or_else(|| fail(QcohStatus::NullPointer, "ring is null"))
}

unsafe fn partition_from(s: *const c_char) -> Result<StrictPartition, QcohStatus> {
    if s.is_null() {
        return Err(fail(QcohStatus::NullPointer, "partition string is null"));
    }
    let text = CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(QcohStatus::InvalidArgument, "partition string is not UTF-8"))?;
    text.parse().map_err(from_error)
}

fn check_out<T>(p: *mut T, name: &str) -> Result<(), QcohStatus> {
    if p.is_null() {
        Err(fail(QcohStatus::NullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

/// Writes `len` to `*out_len`, then copies `items` into `out` if it fits.
unsafe fn copy_out<T: Copy>(items: &[T], out: *mut T, cap: usize, out_len: *mut usize) -> Result<(), QcohStatus> {
    check_out(out_len, "out_len")?;
    *out_len = items.len();
    if items.len() > cap {
        return Err(fail(
            QcohStatus::BufferTooSmall,
            format!("need {} elements, buffer holds {cap}", items.len()),
        ));
    }
    if !items.is_empty() {
        check_out(out, "output buffer")?;
        ptr::copy_nonoverlapping(items.as_ptr(), out, items.len());
    }
    Ok(())
}

/// Copies `s` plus a NUL terminator; `*out_len` excludes the terminator.
unsafe fn copy_str(s: &str, buf: *mut c_char, cap: usize, out_len: *mut usize) -> Result<(), QcohStatus> {
    check_out(out_len, "out_len")?;
    *out_len = s.len();
    if s.len() + 1 > cap {
        return Err(fail(QcohStatus::BufferTooSmall, format!("need {} bytes", s.len() + 1)));
    }
    check_out(buf, "buffer")?;
    ptr::copy_nonoverlapping(s.as_ptr().cast::<c_char>(), buf, s.len());
    *buf.add(s.len()) = 0;
    Ok(())
}

/// Builds (or fetches from the cache) the ring `kind(n)`. Free with [`qcoh_ring_free`].
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qcoh_ring_new(kind: u32, n: u32, out: *mut *mut QcohRing) -> QcohStatus {
    guarded(|| {
        check_out(out, "out")?;
        *out = ptr::null_mut();
        let kind = kind_from(kind)?;
        let tables = evaluation_tables(kind, n as usize).map_err(from_error)?;
        *out = Box::into_raw(Box::new(QcohRing { tables }));
        Ok(())
    })
}

/// # Safety
/// `ring` must come from [`qcoh_ring_new`] and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn qcoh_ring_free(ring: *mut QcohRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Number of Schubert classes, `2^n`.
///
/// # Safety
/// `ring` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_ring_dimension(ring: *const QcohRing, out: *mut usize) -> QcohStatus {
    guarded(|| {
        let ring = ring_ref(ring)?;
        check_out(out, "out")?;
        *out = ring.tables.dimension();
        Ok(())
    })
}

/// The basis class at `index` as a NUL-terminated string like `"3,1"`.
///
/// # Safety
/// `ring` must be a live handle; `buf` must hold `cap` bytes; `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_ring_basis_class(
    ring: *const QcohRing,
    index: usize,
    buf: *mut c_char,
    cap: usize,
    out_len: *mut usize,
) -> QcohStatus {
    guarded(|| {
        let ring = ring_ref(ring)?;
        let basis = ring.tables.basis();
        if index >= basis.len() {
            return Err(fail(QcohStatus::OutOfRange, format!("index {index} >= {}", basis.len())));
        }
        copy_str(&basis.class(index).to_string(), buf, cap, out_len)
    })
}

/// Basis position of a partition.
///
/// # Safety
/// `ring` must be a live handle; `partition` a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_ring_class_index(
    ring: *const QcohRing,
    partition: *const c_char,
    out: *mut usize,
) -> QcohStatus {
    guarded(|| {
        let ring = ring_ref(ring)?;
        let p = partition_from(partition)?;
        check_out(out, "out")?;
        *out = ring.tables.basis().index_of(&p).map_err(from_error)?;
        Ok(())
    })
}

/// Structure constants of `a · b`, sorted by `q`-degree then basis position.
///
/// # Safety
/// `ring` must be a live handle; `a`, `b` NUL-terminated; `out` must hold `cap` terms.
#[no_mangle]
pub unsafe extern "C" fn qcoh_ring_multiply(
    ring: *const QcohRing,
    a: *const c_char,
    b: *const c_char,
    out: *mut QcohTerm,
    cap: usize,
    out_len: *mut usize,
) -> QcohStatus {
    guarded(|| {
        let ring = ring_ref(ring)?;
        let (a, b) = (partition_from(a)?, partition_from(b)?);
        let t = &ring.tables;
        let terms = structure_constants(t.kind(), t.n(), &a, &b).map_err(from_error)?;
        let terms: Vec<QcohTerm> = terms
            .iter()
            .map(|term| {
                Ok(QcohTerm {
                    class_index: t.basis().index_of(&term.class).map_err(from_error)? as u32,
                    q_degree: term.q_degree,
                    coeff: term.coeff,
                })
            })
            .collect::<Result<_, QcohStatus>>()?;
        copy_out(&terms, out, cap, out_len)
    })
}

/// Row-major `dim × dim` matrix of multiplication by `class` at `q = 1`.
///
/// # Safety
/// `ring` must be a live handle; `class` NUL-terminated; `out` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn qcoh_ring_operator_matrix(
    ring: *const QcohRing,
    class: *const c_char,
    out: *mut i64,
    cap: usize,
    out_len: *mut usize,
) -> QcohStatus {
    guarded(|| {
        let ring = ring_ref(ring)?;
        let class = partition_from(class)?;
        let t = &ring.tables;
        let op = spectral::operator_matrix(t.kind(), t.n(), &class).map_err(from_error)?;
        let m = op.entries();
        let flat: Vec<i64> = (0..m.nrows()).flat_map(|r| m.row(r).iter().copied().collect::<Vec<_>>()).collect();
        copy_out(&flat, out, cap, out_len)
    })
}

/// Eigenvalues of `[c₁]`, one per Peterson point.
///
/// # Safety
/// `re` and `im` must each hold `cap` doubles; `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_c1_spectrum(
    kind: u32,
    n: u32,
    re: *mut f64,
    im: *mut f64,
    cap: usize,
    out_len: *mut usize,
) -> QcohStatus {
    guarded(|| {
        let kind = kind_from(kind)?;
        let values = spectral::c1_spectrum(kind, n as usize).map_err(from_error)?;
        let res: Vec<f64> = values.iter().map(|z| z.re).collect();
        let ims: Vec<f64> = values.iter().map(|z| z.im).collect();
        copy_out(&res, re, cap, out_len)?;
        copy_out(&ims, im, cap, out_len)
    })
}

/// Conjecture O verdict for `[c₁]` at relative clustering tolerance `tol`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_conjecture_o(kind: u32, n: u32, tol: f64, out: *mut QcohConjectureO) -> QcohStatus {
    guarded(|| {
        check_out(out, "out")?;
        let kind = kind_from(kind)?;
        let r = spectral::conjecture_o(kind, n as usize, tol).map_err(from_error)?;
        *out = QcohConjectureO {
            t0: r.t0,
            fano_index: r.fano_index as u32,
            max_modulus_count: r.max_modulus_count as u32,
            expected_max_modulus_count: r.expected_max_modulus_count as u32,
            cond1: r.conditions.c1,
            cond2: r.conditions.c2,
            cond3: r.conditions.c3,
            status: match r.status {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::Indeterminate => 2,
            },
        };
        Ok(())
    })
}

/// Copies the message of the last failed call on this thread (empty after a success).
///
/// # Safety
/// `buf` must hold `cap` bytes; `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_last_error(buf: *mut c_char, cap: usize, out_len: *mut usize) -> QcohStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    match copy_str(&msg, buf, cap, out_len) {
        Ok(()) => QcohStatus::Ok,
        Err(s) => {
            // keep the original message rather than the buffer complaint
            LAST_ERROR.with(|e| *e.borrow_mut() = msg);
            s
        }
    }
}
