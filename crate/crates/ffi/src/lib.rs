//! C interface to `ratio-oed`.
//!
//! Every function returns a [`RatioOedStatus`]; on failure the message is
//! available from [`ratio_oed_last_error`] on the same thread. Datasets and
//! error-scale functions are opaque handles created and freed here.
//! Panics are caught at the boundary and reported as
//! `RATIO_OED_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ratio_oed::design::{optimal_design_hetero, optimal_design_homo, rho_star, SearchOptions};
use ratio_oed::inference::{confidence_interval, IntervalRequest, Method, NormalHalfWidth};
use ratio_oed::model::{fit_least_squares, Dataset, ExperimentDomain, HFunction, ModelParams, TabulatedScale};
use ratio_oed::sim::design_bakeoff;
use ratio_oed::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioOedStatus {
    Ok = 0,
    NullPointer = 1,
    /// Invalid argument or data.
    Validation = 2,
    /// Degenerate intercept or other numeric failure.
    Numeric = 3,
    Panic = 4,
    /// The caller's output buffer is too short.
    BufferTooSmall = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioOedMethod {
    NormalHomo = 0,
    NormalHetero = 1,
    BayesianBootstrap = 2,
    ParametricBootstrap = 3,
    ResidualBootstrap = 4,
    WildBootstrap = 5,
}

impl From<RatioOedMethod> for Method {
    fn from(m: RatioOedMethod) -> Self {
        match m {
            RatioOedMethod::NormalHomo => Method::NormalHomo,
            RatioOedMethod::NormalHetero => Method::NormalHetero,
            RatioOedMethod::BayesianBootstrap => Method::BayesianBootstrap,
            RatioOedMethod::ParametricBootstrap => Method::ParametricBootstrap,
            RatioOedMethod::ResidualBootstrap => Method::ResidualBootstrap,
            RatioOedMethod::WildBootstrap => Method::WildBootstrap,
        }
    }
}

/// Opaque dataset handle.
pub struct RatioOedDataset(Dataset);

/// Opaque relative error scale `h(x)`.
pub struct RatioOedH(HFunction);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct RatioOedFit {
    pub b0: f64,
    pub b1: f64,
    pub theta_hat: f64,
    /// Residual variance with divisor n.
    pub s2_e: f64,
    pub n: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct RatioOedInterval {
    pub lower: f64,
    pub theta_hat: f64,
    pub upper: f64,
    pub degenerate_replicates: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct RatioOedBakeoff {
    pub median_a: f64,
    pub median_b: f64,
    pub intercentile_a: f64,
    pub intercentile_b: f64,
    /// a / b.
    pub intercentile_ratio: f64,
    pub stderr_ratio: f64,
    pub variance_ratio: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> RatioOedStatus {
    match e.exit_code() {
        3 => RatioOedStatus::Numeric,
        _ => RatioOedStatus::Validation,
    }
}

enum Failure {
    Null(&'static str),
    Small(usize),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RatioOedStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            RatioOedStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(&format!("null pointer: {what}"));
            RatioOedStatus::NullPointer
        }
        Ok(Err(Failure::Small(need))) => {
            set_last_error(&format!("output buffer too small, need {need}"));
            RatioOedStatus::BufferTooSmall
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic");
            RatioOedStatus::Panic
        }
    }
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn in_slice<'a>(p: *const f64, len: usize, what: &'static str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ratio_oed_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Optimal fraction of runs at `x_min` for a homoskedastic line.
///
/// # Safety
/// `out` must be null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ratio_oed_rho_star(x_min: f64, x_max: f64, theta0: f64, out: *mut f64) -> RatioOedStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let domain = ExperimentDomain::new(x_min, x_max, 2)?;
        *out = rho_star(theta0, &domain)?;
        Ok(())
    })
}

/// Closed-form allocation of `n` runs between the endpoints.
///
/// # Safety
/// `at_min` and `at_max` must be null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ratio_oed_optimal_design_homo(
    x_min: f64,
    x_max: f64,
    n: usize,
    theta0: f64,
    at_min: *mut usize,
    at_max: *mut usize,
) -> RatioOedStatus {
    guard(|| {
        let at_min = out_ref(at_min, "at_min")?;
        let at_max = out_ref(at_max, "at_max")?;
        let alloc = optimal_design_homo(&ExperimentDomain::new(x_min, x_max, n)?, theta0)?;
        *at_min = alloc.count_at(x_min);
        *at_max = alloc.count_at(x_max);
        Ok(())
    })
}

/// Copies `len` pairs into a new dataset handle.
///
/// # Safety
/// `x` and `y` must point to `len` doubles; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ratio_oed_dataset_new(
    x: *const f64,
    y: *const f64,
    len: usize,
    out: *mut *mut RatioOedDataset,
) -> RatioOedStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let x = in_slice(x, len, "x")?.to_vec();
        let y = in_slice(y, len, "y")?.to_vec();
        *out = Box::into_raw(Box::new(RatioOedDataset(Dataset::new(x, y)?)));
        Ok(())
    })
}

/// # Safety
/// `ds` must be null or a handle from [`ratio_oed_dataset_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ratio_oed_dataset_free(ds: *mut RatioOedDataset) {
    if !ds.is_null() {
        drop(Box::from_raw(ds));
    }
}

/// `h(x) = x^gamma`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ratio_oed_h_power(gamma: f64, out: *mut *mut RatioOedH) -> RatioOedStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if !gamma.is_finite() {
            return Err(Error::Validation("power-law exponent must be finite".into()).into());
        }
        *out = Box::into_raw(Box::new(RatioOedH(HFunction::PowerLaw { gamma })));
        Ok(())
    })
}

/// Piecewise-linear `h` through `(x[i], rel_sigma[i])`, flat beyond the ends.
///
/// # Safety
/// `x` and `rel_sigma` must point to `len` doubles; `out` must be valid for
/// a write.
#[no_mangle]
pub unsafe extern "C" fn ratio_oed_h_table(
    x: *const f64,
    rel_sigma: *const f64,
    len: usize,
    out: *mut *mut RatioOedH,
) -> RatioOedStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let x = in_slice(x, len, "x")?;
        let s = in_slice(rel_sigma, len, "rel_sigma")?;
        let table = TabulatedScale::new(x.iter().copied().zip(s.iter().copied()).collect())?;
        *out = Box::into_raw(Box::new(RatioOedH(HFunction::Tabulated(table))));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ratio_oed_h_free(h: *mut RatioOedH) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Numerical design search; writes `n` sorted points to `xs` (capacity
/// `xs_len`) and the attained criterion to `criterion`.
///
/// # Safety
/// `h` must be a live handle; `xs` must be valid for `xs_len` writes;
/// `criterion` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ratio_oed_optimal_design_hetero(
    x_min: f64,
    x_max: f64,
    n: usize,
    theta0: f64,
    h: *const RatioOedH,
    random_starts: usize,
    seed: u64,
    xs: *mut f64,
    xs_len: usize,
    criterion: *mut f64,
) -> RatioOedStatus {
    guard(|| {
        let h = h.as_ref().ok_or(Failure::Null("h"))?;
        let criterion = out_ref(criterion, "criterion")?;
        if xs.is_null() {
            return Err(Failure::Null("xs"));
        }
        if xs_len < n {
            return Err(Failure::Small(n));
        }
        let opts = SearchOptions { random_starts, rng_seed: seed, ..SearchOptions::default() };
        let found = optimal_design_hetero(&ExperimentDomain::new(x_min, x_max, n)?, theta0, &h.0, &opts)?;
        std::slice::from_raw_parts_mut(xs, n).copy_from_slice(&found.xs);
        *criterion = found.criterion;
        Ok(())
    })
}

/// # Safety
/// `ds` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ratio_oed_fit(ds: *const RatioOedDataset, out: *mut RatioOedFit) -> RatioOedStatus {
    guard(|| {
        let ds = ds.as_ref().ok_or(Failure::Null("ds"))?;
        let out = out_ref(out, "out")?;
        let fit = fit_least_squares(&ds.0)?;
        *out = RatioOedFit { b0: fit.b0, b1: fit.b1, theta_hat: fit.theta_hat, s2_e: fit.s2_e, n: fit.n() };
        Ok(())
    })
}

/// Confidence interval for the ratio. `replicates` and `seed` are ignored
/// by the normal methods; `se_width` selects `z * sqrt(v)` instead of
/// `z * v` for them.
///
/// # Safety
/// `ds` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ratio_oed_ci(
    ds: *const RatioOedDataset,
    method: RatioOedMethod,
    alpha: f64,
    replicates: usize,
    seed: u64,
    se_width: bool,
    out: *mut RatioOedInterval,
) -> RatioOedStatus {
    guard(|| {
        let ds = ds.as_ref().ok_or(Failure::Null("ds"))?;
        let out = out_ref(out, "out")?;
        let method = Method::from(method);
        let b = if method.is_bootstrap() { replicates } else { 0 };
        let width = if se_width { NormalHalfWidth::StdError } else { NormalHalfWidth::Variance };
        let req = IntervalRequest::new(method, alpha, b, seed)?.with_half_width(width);
        let ci = confidence_interval(&ds.0, &req)?;
        *out = RatioOedInterval {
            lower: ci.lower,
            theta_hat: ci.theta_hat,
            upper: ci.upper,
            degenerate_replicates: ci.degenerate_replicates,
        };
        Ok(())
    })
}

/// Simulates two designs under a homoskedastic line with the same seed.
///
/// # Safety
/// `a` and `b` must point to `a_len` and `b_len` doubles; `out` must be
/// valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ratio_oed_bakeoff(
    a: *const f64,
    a_len: usize,
    b: *const f64,
    b_len: usize,
    beta0: f64,
    theta: f64,
    sigma: f64,
    n_sim: usize,
    seed: u64,
    out: *mut RatioOedBakeoff,
) -> RatioOedStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let a = in_slice(a, a_len, "a")?;
        let b = in_slice(b, b_len, "b")?;
        let params = ModelParams::homoskedastic(beta0, theta, sigma)?;
        let r = design_bakeoff(a, b, &params, n_sim, seed)?;
        *out = RatioOedBakeoff {
            median_a: r.a.median,
            median_b: r.b.median,
            intercentile_a: r.a.intercentile_range,
            intercentile_b: r.b.intercentile_range,
            intercentile_ratio: r.intercentile_ratio,
            stderr_ratio: r.stderr_ratio,
            variance_ratio: r.variance_ratio,
        };
        Ok(())
    })
}
