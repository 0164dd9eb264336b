//! C interface to `schwarzkit`.
//!
//! Maps and fiber reports cross the boundary as opaque handles owned by the
//! caller and released with the matching `*_free`. Every fallible function
//! returns an [`SkStatus`]; on failure [`sk_last_error`] holds a message for
//! the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use schwarzkit::cubic::{cross_ratio, criticality_discriminant, is_regular_tetrahedron, FourPointSet};
use schwarzkit::primitivity::condition_determinant;
use schwarzkit::reconstruction::{catalan, coords_to_map, solve_fiber, FiberSolveReport};
use schwarzkit::schwarzian::schwarzian;
use schwarzkit::{ComplexPolynomial, Error, RationalMap, RiemannPoint, C64};

/// A complex number laid out as two doubles.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SkComplex {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for SkComplex {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<SkComplex> for C64 {
    fn from(z: SkComplex) -> Self {
        C64::new(z.re, z.im)
    }
}

/// Status codes. The nonzero values match the exit codes of the CLI where
/// they overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Degenerate = 3,
    Solver = 4,
    Panic = 5,
}

/// Opaque rational map `num / den`, stored in lowest terms with a monic
/// denominator.
pub struct SkRationalMap(RationalMap);

/// Opaque result of a fiber solve.
pub struct SkFiberReport(FiberSolveReport);

/// Which half of a rational map to read.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkPart {
    Numerator = 0,
    Denominator = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nul bytes were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(SkStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NonConvergence(_) | Error::NoSolutionFound(_) => SkStatus::Solver,
            _ => SkStatus::Degenerate,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SkStatus::NullPointer, format!("{what} is null"))
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure(SkStatus::InvalidArgument, message.into())
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SkStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SkStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SkStatus::Panic
        }
    }
}

/// # Safety
/// `ptr` must be null or point to `len` readable values.
unsafe fn slice<'a, T>(ptr: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

unsafe fn complexes(ptr: *const SkComplex, len: usize, what: &str) -> Result<Vec<C64>, Failure> {
    let v: Vec<C64> = slice(ptr, len, what)?.iter().map(|&z| z.into()).collect();
    if v.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(invalid(format!("{what} has a non-finite entry")));
    }
    Ok(v)
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// The message of the last failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds `num / den` from ascending coefficient arrays.
///
/// # Safety
/// `num` and `den` must point to `num_len` and `den_len` values; `out` must
/// be writable. The handle written to `out` is released by
/// [`sk_rational_free`].
#[no_mangle]
pub unsafe extern "C" fn sk_rational_new(
    num: *const SkComplex,
    num_len: usize,
    den: *const SkComplex,
    den_len: usize,
    out: *mut *mut SkRationalMap,
) -> SkStatus {
    guard(|| {
        let n = ComplexPolynomial::new(complexes(num, num_len, "num")?);
        let d = ComplexPolynomial::new(complexes(den, den_len, "den")?);
        let map = RationalMap::new(n, d)?;
        write(out, boxed(SkRationalMap(map)), "out")
    })
}

/// # Safety
/// `map` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sk_rational_free(map: *mut SkRationalMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Copies the coefficients of one half of `map` into `buf`. `len` receives
/// the coefficient count; when `cap` is too small nothing is copied and the
/// call fails with `SK_STATUS_INVALID_ARGUMENT`, so a first call with
/// `cap = 0` sizes the buffer.
///
/// # Safety
/// `map` must be a live handle, `buf` must hold `cap` values, `len` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn sk_rational_coeffs(
    map: *const SkRationalMap,
    part: SkPart,
    buf: *mut SkComplex,
    cap: usize,
    len: *mut usize,
) -> SkStatus {
    guard(|| {
        let map = map.as_ref().ok_or_else(|| null("map"))?;
        let p = match part {
            SkPart::Numerator => map.0.num(),
            SkPart::Denominator => map.0.den(),
        };
        let coeffs = p.coeffs();
        write(len, coeffs.len(), "len")?;
        if coeffs.len() > cap {
            return Err(invalid(format!("buffer holds {cap} coefficients, need {}", coeffs.len())));
        }
        if !coeffs.is_empty() && buf.is_null() {
            return Err(null("buf"));
        }
        for (i, &c) in coeffs.iter().enumerate() {
            buf.add(i).write(c.into());
        }
        Ok(())
    })
}

/// `map(z)`. A pole gives `SK_STATUS_DEGENERATE`.
///
/// # Safety
/// `map` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_rational_eval(map: *const SkRationalMap, z: SkComplex, out: *mut SkComplex) -> SkStatus {
    guard(|| {
        let map = map.as_ref().ok_or_else(|| null("map"))?;
        match map.0.eval_point(RiemannPoint::Finite(z.into())) {
            RiemannPoint::Finite(w) => write(out, w.into(), "out"),
            RiemannPoint::Infinity => Err(Failure(SkStatus::Degenerate, format!("pole at {}", C64::from(z)))),
        }
    })
}

/// The Schwarzian derivative of `map` as a new rational map.
///
/// # Safety
/// `map` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_schwarzian(map: *const SkRationalMap, out: *mut *mut SkRationalMap) -> SkStatus {
    guard(|| {
        let map = map.as_ref().ok_or_else(|| null("map"))?;
        let s = schwarzian(&map.0)?;
        write(out, boxed(SkRationalMap(s)), "out")
    })
}

/// Determinant of the order-`d` condition matrix built from the Laurent
/// tail `a[0..len]` (`len >= d` unless `d == 0`).
///
/// # Safety
/// `a` must point to `len` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_condition_determinant(
    d: usize,
    a: *const SkComplex,
    len: usize,
    out: *mut SkComplex,
) -> SkStatus {
    guard(|| {
        let a = complexes(a, len, "a")?;
        if len < d {
            return Err(invalid(format!("order {d} needs {d} tail coefficients, got {len}")));
        }
        write(out, condition_determinant(d, &a).into(), "out")
    })
}

/// Solves `p'q - q'p = target` over normalized pairs. `target` is monic of
/// even degree `2 mu`, given by its `2 mu + 1` ascending coefficients.
///
/// # Safety
/// `target` must point to `len` values and `out` must be writable. The
/// report is released by [`sk_fiber_report_free`].
#[no_mangle]
pub unsafe extern "C" fn sk_solve_fiber(
    target: *const SkComplex,
    len: usize,
    attempts: usize,
    seed: u64,
    out: *mut *mut SkFiberReport,
) -> SkStatus {
    guard(|| {
        let target = ComplexPolynomial::new(complexes(target, len, "target")?);
        if attempts == 0 {
            return Err(invalid("attempts must be positive"));
        }
        let report = solve_fiber(&target, attempts, seed)?;
        write(out, boxed(SkFiberReport(report)), "out")
    })
}

/// # Safety
/// `report` must be null or a handle from this library that was not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn sk_fiber_report_free(report: *mut SkFiberReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Number of distinct solutions in `report`, 0 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sk_fiber_report_count(report: *const SkFiberReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.solutions.len())
}

/// Number of warnings attached to `report`, 0 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sk_fiber_report_warning_count(report: *const SkFiberReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.warnings.len())
}

/// Residual of solution `index`.
///
/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_fiber_report_residual(
    report: *const SkFiberReport,
    index: usize,
    out: *mut f64,
) -> SkStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        let v = *r.0.residuals.get(index).ok_or_else(|| invalid(format!("no solution {index}")))?;
        write(out, v, "out")
    })
}

/// Solution `index` as the rational map `p / q`.
///
/// # Safety
/// `report` must be a live handle and `out` writable. The map is released by
/// [`sk_rational_free`].
#[no_mangle]
pub unsafe extern "C" fn sk_fiber_report_map(
    report: *const SkFiberReport,
    index: usize,
    out: *mut *mut SkRationalMap,
) -> SkStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        let coords = r.0.solutions.get(index).ok_or_else(|| invalid(format!("no solution {index}")))?;
        let map = coords_to_map(coords)?;
        write(out, boxed(SkRationalMap(map)), "out")
    })
}

/// Cross ratio `(a, b; c, d)` of four distinct finite points.
///
/// # Safety
/// `points` must point to four values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_cross_ratio(points: *const SkComplex, out: *mut SkComplex) -> SkStatus {
    guard(|| {
        let p = complexes(points, 4, "points")?;
        let r = cross_ratio(p[0].into(), p[1].into(), p[2].into(), p[3].into())?;
        write(out, r.into(), "out")
    })
}

/// Whether four distinct finite points are a Möbius image of the vertices
/// of a regular tetrahedron.
///
/// # Safety
/// `points` must point to four values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_is_regular_tetrahedron(points: *const SkComplex, tol: f64, out: *mut bool) -> SkStatus {
    guard(|| {
        let p = complexes(points, 4, "points")?;
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(invalid("tol must be positive"));
        }
        let set = FourPointSet::finite([p[0], p[1], p[2], p[3]])?;
        write(out, is_regular_tetrahedron(&set, tol), "out")
    })
}

/// `w2^2 + 12 w0 - 3 w1 w3` for the monic quartic `z^4 + w3 z^3 + ... + w0`,
/// given as `w[0..4]`.
///
/// # Safety
/// `w` must point to four values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_criticality_discriminant(w: *const SkComplex, out: *mut SkComplex) -> SkStatus {
    guard(|| {
        let w = complexes(w, 4, "w")?;
        write(out, criticality_discriminant([w[0], w[1], w[2], w[3]]).into(), "out")
    })
}

/// Number of degree-`d` rational maps with `2d - 2` generic prescribed
/// critical points, up to post-composition. Returns 0 for `d == 0` or on
/// overflow.
#[no_mangle]
pub extern "C" fn sk_catalan(d: usize) -> u64 {
    if d == 0 || d > 36 {
        return 0;
    }
    catalan(d)
}
