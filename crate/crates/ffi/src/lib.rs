//! C ABI for the `lde` library.
//!
//! Fallible functions return an [`LdeStatus`] and write results through
//! out-pointers, which are left untouched on failure. The message of the
//! most recent failure on the calling thread is available from
//! [`lde_last_error_message`]. Parameter sets that are validated once are
//! exposed as opaque handles, each released by its `_free` function.
//!
//! Panics never cross the boundary; they are reported as
//! [`LdeStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use lde::oscillators::{self, DuffingParams, PendulumParams};
use lde::wkb::{self, AnharmonicParams, WkbOrder};
use lde::{gr, zeta, Complex64};

/// Result codes. `LDE_STATUS_OK` is zero; everything else is a failure.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LdeStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument lies outside the domain of the operation.
    Domain = 2,
    /// The interpolant gap is non-positive inside the interval.
    NonPositiveGap = 3,
    /// A search bracket is empty, reversed or not finite.
    InvalidBracket = 4,
    /// An iterative scheme stopped before reaching its tolerance.
    NonConvergence = 5,
    /// A root search found no sign change.
    NoBracket = 6,
    /// The output buffer is shorter than the number of values produced.
    BufferTooSmall = 7,
    /// Internal error; the library state is unaffected.
    Panic = 8,
}

/// Which approximation of a closed-form quantity to evaluate.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LdeApprox {
    /// Adaptive quadrature of the exact integral.
    Exact = 0,
    /// First-order delta expansion at the optimal parameter.
    Pms = 1,
    /// Leading post-Newtonian term (weak field).
    Leading = 2,
}

/// Order of the WKB quantization condition.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LdeWkbOrder {
    Leading = 0,
    Second = 1,
    Fourth = 2,
}

impl From<LdeWkbOrder> for WkbOrder {
    fn from(o: LdeWkbOrder) -> Self {
        match o {
            LdeWkbOrder::Leading => WkbOrder::Leading,
            LdeWkbOrder::Second => WkbOrder::Second,
            LdeWkbOrder::Fourth => WkbOrder::Fourth,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LdeComplex {
    pub re: f64,
    pub im: f64,
}

impl From<LdeComplex> for Complex64 {
    fn from(z: LdeComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for LdeComplex {
    fn from(z: Complex64) -> Self {
        LdeComplex { re: z.re, im: z.im }
    }
}

/// Duffing oscillator `x'' = -x - μx³` released from amplitude `A`.
pub struct LdeDuffing {
    params: DuffingParams,
}

/// Quartic anharmonic oscillator `p²/2m + mω²x²/2 + μx⁴/4`.
pub struct LdeAnharmonic {
    params: AnharmonicParams,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

enum Failure {
    Lde(lde::Error),
    Null(&'static str),
    Buffer { need: usize, have: usize },
}

impl From<lde::Error> for Failure {
    fn from(e: lde::Error) -> Self {
        Failure::Lde(e)
    }
}

impl Failure {
    fn status(&self) -> LdeStatus {
        use lde::Error::*;
        match self {
            Failure::Lde(Domain { .. }) => LdeStatus::Domain,
            Failure::Lde(NonPositiveGap { .. }) => LdeStatus::NonPositiveGap,
            Failure::Lde(InvalidBracket { .. }) => LdeStatus::InvalidBracket,
            Failure::Lde(NonConvergence { .. }) => LdeStatus::NonConvergence,
            Failure::Lde(NoBracket { .. }) => LdeStatus::NoBracket,
            Failure::Null(_) => LdeStatus::NullPointer,
            Failure::Buffer { .. } => LdeStatus::BufferTooSmall,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lde(e) => e.to_string(),
            Failure::Null(arg) => format!("argument `{arg}` is null"),
            Failure::Buffer { need, have } => format!("buffer holds {have} values, {need} needed"),
        }
    }
}

fn set_last_error(msg: String) {
    // Interior NULs cannot occur in our messages, but never fail here.
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LdeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LdeStatus::Ok,
        Ok(Err(failure)) => {
            set_last_error(failure.message());
            failure.status()
        }
        Err(_) => {
            set_last_error("internal panic".to_owned());
            LdeStatus::Panic
        }
    }
}

fn check<T>(p: *const T, name: &'static str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure::Null(name))
    } else {
        Ok(())
    }
}

/// # Safety
/// `p` must be null or valid for writes.
unsafe fn write<T>(p: *mut T, v: T, name: &'static str) -> Result<(), Failure> {
    check(p, name)?;
    p.write(v);
    Ok(())
}

/// # Safety
/// `h` must be null or a live handle.
unsafe fn borrow<'a, T>(h: *const T, name: &'static str) -> Result<&'a T, Failure> {
    check(h, name)?;
    Ok(&*h)
}

/// # Safety
/// `buf` must be null or valid for `len` writes.
unsafe fn fill(buf: *mut f64, len: usize, values: &[f64], name: &'static str) -> Result<(), Failure> {
    check(buf, name)?;
    if len < values.len() {
        return Err(Failure::Buffer {
            need: values.len(),
            have: len,
        });
    }
    std::ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lde_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the most recent failure on this thread, or null if none.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lde_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Validate a Duffing parameter set; `*out` receives a new handle.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lde_duffing_new(mu: f64, amplitude: f64, out: *mut *mut LdeDuffing) -> LdeStatus {
    guard(|| {
        check(out, "out")?;
        let params = DuffingParams::new(mu, amplitude)?;
        write(out, Box::into_raw(Box::new(LdeDuffing { params })), "out")
    })
}

/// Release a handle from [`lde_duffing_new`]. Null is ignored.
///
/// # Safety
/// `h` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lde_duffing_free(h: *mut LdeDuffing) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Exact period from the complete elliptic integral.
///
/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lde_duffing_period_exact(h: *const LdeDuffing, out: *mut f64) -> LdeStatus {
    guard(|| write(out, oscillators::duffing_exact(&borrow(h, "h")?.params), "out"))
}

/// First-order period at the optimal `λ`.
///
/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lde_duffing_period_pms(h: *const LdeDuffing, out: *mut f64) -> LdeStatus {
    guard(|| write(out, oscillators::duffing_period_pms(&borrow(h, "h")?.params), "out"))
}

/// The optimal `λ` of the first-order expansion.
///
/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lde_duffing_lambda_pms(h: *const LdeDuffing, out: *mut f64) -> LdeStatus {
    guard(|| write(out, oscillators::duffing_lambda_pms(&borrow(h, "h")?.params), "out"))
}

/// Partial sums of orders `0..=order` at `λ` into `partial_sums`, which
/// must hold `order + 1` values. `*max_abs_delta` receives the convergence
/// certificate: the series converges iff it is below 1.
///
/// # Safety
/// `h` must be a live handle, `partial_sums` valid for `len` writes and
/// `max_abs_delta` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lde_duffing_series(
    h: *const LdeDuffing,
    lambda: f64,
    order: usize,
    partial_sums: *mut f64,
    len: usize,
    max_abs_delta: *mut f64,
) -> LdeStatus {
    guard(|| {
        let p = borrow(h, "h")?.params;
        check(max_abs_delta, "max_abs_delta")?;
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(lde::Error::Domain {
                op: "lde_duffing_series",
                detail: format!("λ = {lambda} must be finite and >= 0"),
            }
            .into());
        }
        let s = oscillators::duffing_series(&p, lambda, order);
        fill(partial_sums, len, &s.partial_sums, "partial_sums")?;
        write(max_abs_delta, s.max_abs_delta, "max_abs_delta")
    })
}

/// Pendulum period for amplitude `theta_max` in `(0, π)`; `approx` is
/// `Exact` or `Pms`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lde_pendulum_period(theta_max: f64, approx: LdeApprox, out: *mut f64) -> LdeStatus {
    guard(|| {
        let p = PendulumParams::new(theta_max)?;
        let v = match approx {
            LdeApprox::Exact => oscillators::pendulum_exact(&p),
            LdeApprox::Pms => oscillators::pendulum_period_pms(&p),
            LdeApprox::Leading => {
                return Err(lde::Error::Domain {
                    op: "lde_pendulum_period",
                    detail: "no leading-order approximation".to_owned(),
                }
                .into())
            }
        };
        write(out, v, "out")
    })
}

/// Light deflection (radians) at closest approach `r0`, with `gm = GM/c²`
/// in the same length unit.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lde_gr_deflection(gm: f64, r0: f64, approx: LdeApprox, out: *mut f64) -> LdeStatus {
    guard(|| {
        let m = gr::MetricParams::new(gm)?;
        let d = gr::DeflectionInput::new(r0)?;
        let v = match approx {
            LdeApprox::Exact => gr::deflection_exact(&m, &d)?,
            LdeApprox::Pms => gr::deflection_pms(&m, &d)?,
            LdeApprox::Leading => gr::deflection_weak_field(&m, &d),
        };
        write(out, v, "out")
    })
}

/// Perihelion shift per orbit (radians) for semi-major axis `a` and
/// eccentricity `ecc`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lde_gr_precession(gm: f64, a: f64, ecc: f64, approx: LdeApprox, out: *mut f64) -> LdeStatus {
    guard(|| {
        let m = gr::MetricParams::new(gm)?;
        let o = gr::orbit_from_kepler(a, ecc)?;
        let v = match approx {
            LdeApprox::Exact => gr::precession_exact(&m, &o)?,
            LdeApprox::Pms => gr::precession_pms(&m, &o)?,
            LdeApprox::Leading => gr::precession_leading(&m, &o),
        };
        write(out, v, "out")
    })
}

/// Validate an anharmonic oscillator; `*out` receives a new handle.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lde_anharmonic_new(
    hbar: f64,
    mass: f64,
    omega: f64,
    mu: f64,
    out: *mut *mut LdeAnharmonic,
) -> LdeStatus {
    guard(|| {
        check(out, "out")?;
        let params = AnharmonicParams::new(hbar, mass, omega, mu)?;
        write(out, Box::into_raw(Box::new(LdeAnharmonic { params })), "out")
    })
}

/// Release a handle from [`lde_anharmonic_new`]. Null is ignored.
///
/// # Safety
/// `h` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lde_anharmonic_free(h: *mut LdeAnharmonic) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Energy of level `n` from the WKB condition of the given order.
///
/// # Safety
/// `h` must be a live handle and `energy` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lde_wkb_level(
    h: *const LdeAnharmonic,
    n: u32,
    order: LdeWkbOrder,
    energy: *mut f64,
) -> LdeStatus {
    guard(|| {
        let p = borrow(h, "h")?.params;
        check(energy, "energy")?;
        let level = wkb::solve_level_at(&p, n, order.into())?;
        write(energy, level.energy, "energy")
    })
}

/// Large-`n` asymptotic formula for level `n`.
///
/// # Safety
/// `h` must be a live handle and `energy` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lde_wkb_asymptotic(h: *const LdeAnharmonic, n: u32, energy: *mut f64) -> LdeStatus {
    guard(|| write(energy, wkb::asymptotic_energy(&borrow(h, "h")?.params, n), "energy"))
}

/// Lowest `len` eigenvalues by matrix diagonalization, for reference.
///
/// # Safety
/// `h` must be a live handle and `levels` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn lde_wkb_exact_levels(h: *const LdeAnharmonic, levels: *mut f64, len: usize) -> LdeStatus {
    guard(|| {
        let p = borrow(h, "h")?.params;
        check(levels, "levels")?;
        if len == 0 {
            return Ok(());
        }
        let values = wkb::exact_spectrum_oracle(&p, len - 1)?;
        fill(levels, len, &values, "levels")
    })
}

/// ζ(s) from the accelerated series with parameter `lambda > 0`, truncated
/// after `terms` outer terms.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lde_zeta(s: LdeComplex, lambda: f64, terms: usize, out: *mut LdeComplex) -> LdeStatus {
    guard(|| {
        check(out, "out")?;
        let p = zeta::ZetaSeriesParams::new(s.into(), lambda, terms)?;
        write(out, zeta::zeta_accelerated(&p).into(), "out")
    })
}

/// Euler–Maclaurin reference value of ζ(s) for `Re s > 0`, with its
/// estimated absolute error in `*error` (which may be null).
///
/// # Safety
/// `out` must be valid for writes; `error` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lde_zeta_reference(s: LdeComplex, out: *mut LdeComplex, error: *mut f64) -> LdeStatus {
    guard(|| {
        check(out, "out")?;
        let r = zeta::zeta_reference(s.into())?;
        if !error.is_null() {
            error.write(r.error);
        }
        write(out, r.value.into(), "out")
    })
}

/// The optimal parameter `2^{-n}` for ζ(n), `n >= 2`.
#[no_mangle]
pub extern "C" fn lde_zeta_lambda_pms(n: u32) -> f64 {
    zeta::zeta_lambda_pms(n)
}
