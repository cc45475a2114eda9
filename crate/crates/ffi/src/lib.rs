//! C ABI over the `bloic` library.
//!
//! Every fallible call returns a [`BloicStatus`] and writes results through
//! out-pointers. On failure the message is kept per thread and can be read
//! with [`bloic_last_error_message`]. Pulses and curves are opaque handles
//! that must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bloic::bounds::{self, BoundCurve, BoundId, BoundParams};
use bloic::pulses::{Excursion, Pulse, PulseKind};
use bloic::{Error, PowerConstraint};

/// Result codes; `BLOIC_STATUS_OK` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BloicStatus {
    Ok = 0,
    NullPointer = 1,
    OutOfRange = 2,
    InvalidRegime = 3,
    InvalidParameter = 4,
    DivergentMetric = 5,
    UnknownName = 6,
    InvalidUtf8 = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BloicPulseFamily {
    Sinc = 0,
    S2 = 1,
    SpectralCosine = 2,
    ParametricLinear = 3,
}

/// Opaque pulse handle.
pub struct BloicPulse(Pulse);

/// Opaque curve handle: a bound on an SNR grid.
pub struct BloicCurve(BoundCurve);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> BloicStatus {
    match err {
        Error::OutOfRange { .. } => BloicStatus::OutOfRange,
        Error::InvalidRegime(_) => BloicStatus::InvalidRegime,
        Error::DivergentMetric(_) => BloicStatus::DivergentMetric,
        Error::UnknownBound(_) | Error::UnknownFigure(_) => BloicStatus::UnknownName,
        _ => BloicStatus::InvalidParameter,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), (BloicStatus, String)>>(f: F) -> BloicStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BloicStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            BloicStatus::Panic
        }
    }
}

fn lib<T>(r: bloic::Result<T>) -> Result<T, (BloicStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (BloicStatus, String) {
    (BloicStatus::NullPointer, format!("{what} is null"))
}

/// Writes through `out` after a null check.
unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), (BloicStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn name_arg<'a>(s: *const c_char) -> Result<&'a str, (BloicStatus, String)> {
    if s.is_null() {
        return Err(null("name"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (BloicStatus::InvalidUtf8, "name is not UTF-8".into()))
}

/// Copies the calling thread's last error message into `buf` (always
/// NUL-terminated when `len > 0`) and returns the full message length.
/// Returns 0 when no error has been recorded.
///
/// # Safety
/// `buf` must be valid for `len` bytes or null.
#[no_mangle]
pub unsafe extern "C" fn bloic_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Creates a pulse; `beta` is read only for the PL family.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bloic_pulse_new(
    family: BloicPulseFamily,
    beta: f64,
    bandwidth: f64,
    out: *mut *mut BloicPulse,
) -> BloicStatus {
    guard(|| {
        let kind = match family {
            BloicPulseFamily::Sinc => PulseKind::Sinc,
            BloicPulseFamily::S2 => PulseKind::S2,
            BloicPulseFamily::SpectralCosine => PulseKind::SpectralCosine,
            BloicPulseFamily::ParametricLinear => PulseKind::ParametricLinear { beta },
        };
        let p = lib(Pulse::new(kind, bandwidth))?;
        put(out, Box::into_raw(Box::new(BloicPulse(p))), "out")
    })
}

/// # Safety
/// `pulse` must come from [`bloic_pulse_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bloic_pulse_free(pulse: *mut BloicPulse) {
    if !pulse.is_null() {
        drop(Box::from_raw(pulse));
    }
}

/// Pulse amplitude at `t` seconds; NaN for a null handle.
///
/// # Safety
/// `pulse` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bloic_pulse_eval_time(pulse: *const BloicPulse, t: f64) -> f64 {
    pulse.as_ref().map_or(f64::NAN, |p| p.0.eval_time(t))
}

/// Spectrum at `f` Hz; NaN for a null handle.
///
/// # Safety
/// `pulse` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bloic_pulse_eval_freq(pulse: *const BloicPulse, f: f64) -> f64 {
    pulse.as_ref().map_or(f64::NAN, |p| p.0.eval_freq(f))
}

/// Nyquist spacing `1/(2W)`, or `(1+β)/(2W)` for PL; NaN for a null handle.
///
/// # Safety
/// `pulse` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bloic_pulse_nyquist_period(pulse: *const BloicPulse) -> f64 {
    pulse.as_ref().map_or(f64::NAN, |p| p.0.nyquist_period())
}

/// Spectral gain metric `exp(mean log G)` over the band.
///
/// # Safety
/// `pulse` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bloic_pulse_gain_metric(pulse: *const BloicPulse, out: *mut f64) -> BloicStatus {
    guard(|| {
        let p = pulse.as_ref().ok_or_else(|| null("pulse"))?;
        put(out, lib(p.0.gain_metric())?, "out")
    })
}

/// Excursion metric at spacing `tau` (`tau <= 0` selects the native spacing).
/// A divergent metric sets `*divergent = 1` and `*out = +inf` with status OK.
///
/// # Safety
/// `pulse` must be a live handle; `out` and `divergent` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bloic_pulse_excursion(
    pulse: *const BloicPulse,
    tau: f64,
    out: *mut f64,
    divergent: *mut i32,
) -> BloicStatus {
    guard(|| {
        let p = pulse.as_ref().ok_or_else(|| null("pulse"))?;
        let e = if tau > 0.0 { lib(p.0.excursion(tau))? } else { lib(p.0.native_excursion())? };
        let (v, d) = match e {
            Excursion::Finite { value, .. } => (value, 0),
            Excursion::Divergent => (f64::INFINITY, 1),
        };
        put(out, v, "out")?;
        put(divergent, d, "divergent")
    })
}

fn params(r: f64, a0: f64) -> BoundParams {
    BoundParams { r, a0, ..BoundParams::default() }
}

/// Evaluates a named bound (e.g. `"ExpS2"`) at linear `snr`. `r` and `a0`
/// are read only by the PAPR and average-and-peak bounds.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bloic_bound_evaluate(
    name: *const c_char,
    snr: f64,
    r: f64,
    a0: f64,
    out: *mut f64,
) -> BloicStatus {
    guard(|| {
        let id: BoundId = lib(name_arg(name)?.parse())?;
        put(out, lib(bounds::evaluate(id, snr, &params(r, a0)))?, "out")
    })
}

/// Evaluates a named bound on the dB grid `start, start+step, …, ≤ stop`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bloic_curve_new(
    name: *const c_char,
    start_db: f64,
    stop_db: f64,
    step_db: f64,
    r: f64,
    a0: f64,
    out: *mut *mut BloicCurve,
) -> BloicStatus {
    guard(|| {
        let id: BoundId = lib(name_arg(name)?.parse())?;
        let grid = lib(bloic::cli::Grid::new(start_db, stop_db, step_db))?;
        let c = lib(bounds::curve(id, &grid.points(), &params(r, a0)))?;
        put(out, Box::into_raw(Box::new(BloicCurve(c))), "out")
    })
}

/// # Safety
/// `curve` must come from [`bloic_curve_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bloic_curve_free(curve: *mut BloicCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Number of grid points; 0 for a null handle.
///
/// # Safety
/// `curve` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bloic_curve_len(curve: *const BloicCurve) -> usize {
    curve.as_ref().map_or(0, |c| c.0.points.len())
}

/// Copies point `i` as `(snr_dB, bit/s/Hz)`.
///
/// # Safety
/// `curve` must be a live handle; `snr_db` and `value` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bloic_curve_point(
    curve: *const BloicCurve,
    i: usize,
    snr_db: *mut f64,
    value: *mut f64,
) -> BloicStatus {
    guard(|| {
        let c = curve.as_ref().ok_or_else(|| null("curve"))?;
        let &(x, y) =
            c.0.points
                .get(i)
                .ok_or_else(|| (BloicStatus::OutOfRange, format!("index {i} beyond {} points", c.0.points.len())))?;
        put(snr_db, x, "snr_db")?;
        put(value, y, "value")
    })
}

/// μ with `1/μ − 1/(e^μ − 1) = target`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bloic_solve_mu(target: f64, out: *mut f64) -> BloicStatus {
    guard(|| put(out, lib(bloic::distributions::solve_mu(target))?.mu, "out"))
}

/// ν for PAPR `r` and excursion `s`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bloic_nu_from_papr(r: f64, s: f64, out: *mut f64) -> BloicStatus {
    guard(|| put(out, lib(bloic::distributions::nu_from_papr(r, s))?, "out"))
}

/// Best geometric spacing at `mean` with unit noise, and its rate in
/// bit/s/Hz.
///
/// # Safety
/// `spacing` and `bits` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bloic_geometric_optimum(mean: f64, spacing: *mut f64, bits: *mut f64) -> BloicStatus {
    guard(|| {
        let o = lib(bloic::mi::optimize_geometric_l(mean, 1.0))?;
        put(spacing, o.spacing, "spacing")?;
        put(bits, o.mi / std::f64::consts::LN_2, "bits")
    })
}

/// Gap between the first upper bound and the exponential lower bound at
/// linear `snr`.
///
/// # Safety
/// `bits` and `db` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bloic_asymptotic_gap(snr: f64, bits: *mut f64, db: *mut f64) -> BloicStatus {
    guard(|| {
        if snr.is_nan() || snr <= 0.0 {
            return Err((BloicStatus::OutOfRange, format!("snr {snr} must be positive")));
        }
        let g = bounds::asymptotic_gap(snr);
        put(bits, g.bits, "bits")?;
        put(db, g.db, "db")
    })
}

/// DC-aided ISI-free bound at its best roll-off under an average limit.
///
/// # Safety
/// `rate` and `beta` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bloic_dc_aided_optimum(snr: f64, rate: *mut f64, beta: *mut f64) -> BloicStatus {
    guard(|| {
        let d = lib(bounds::lb_ifs_dc(bounds::ExcursionTable::shared(), PowerConstraint::Average { mean: snr }))?;
        put(rate, d.rate, "rate")?;
        put(beta, d.beta, "beta")
    })
}
