use std::ffi::CStr;
use std::process::Command;
use std::ptr;

use ratio_oed_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(ratio_oed_last_error()) }.to_string_lossy().into_owned()
}

fn dataset(x: &[f64], y: &[f64]) -> *mut RatioOedDataset {
    let mut ds = ptr::null_mut();
    let st = unsafe { ratio_oed_dataset_new(x.as_ptr(), y.as_ptr(), x.len(), &mut ds) };
    assert_eq!(st, RatioOedStatus::Ok, "{}", last_error());
    ds
}

#[test]
fn naphthalene_allocation() {
    let (mut lo, mut hi) = (0usize, 0usize);
    let st = unsafe { ratio_oed_optimal_design_homo(1.0 / 3.0, 19.0, 10, 0.053, &mut lo, &mut hi) };
    assert_eq!(st, RatioOedStatus::Ok);
    assert_eq!((lo, hi), (7, 3));
    assert_eq!(last_error(), "");
}

#[test]
fn rho_star_half_at_zero() {
    let mut r = 0.0;
    assert_eq!(unsafe { ratio_oed_rho_star(1.0, 10.0, 0.0, &mut r) }, RatioOedStatus::Ok);
    assert_eq!(r, 0.5);
}

#[test]
fn null_and_invalid_arguments() {
    assert_eq!(unsafe { ratio_oed_rho_star(1.0, 10.0, 0.1, ptr::null_mut()) }, RatioOedStatus::NullPointer);
    assert!(last_error().contains("null"));

    let mut r = 0.0;
    assert_eq!(unsafe { ratio_oed_rho_star(10.0, 1.0, 0.1, &mut r) }, RatioOedStatus::Validation);
    assert!(!last_error().is_empty());

    let mut ds = ptr::null_mut();
    let x = [2.0, 2.0, 2.0];
    let st = unsafe { ratio_oed_dataset_new(x.as_ptr(), x.as_ptr(), 3, &mut ds) };
    assert_eq!(st, RatioOedStatus::Validation);
    assert!(ds.is_null());

    assert_eq!(unsafe { ratio_oed_dataset_new(ptr::null(), x.as_ptr(), 3, &mut ds) }, RatioOedStatus::NullPointer);
}

#[test]
fn fit_and_intervals() {
    let ds = dataset(&[1.0, 2.0, 3.0], &[2.0, 3.0, 5.0]);
    let mut fit = RatioOedFit::default();
    assert_eq!(unsafe { ratio_oed_fit(ds, &mut fit) }, RatioOedStatus::Ok);
    assert!((fit.b0 - 1.0 / 3.0).abs() < 1e-12);
    assert!((fit.b1 - 1.5).abs() < 1e-12);
    assert!((fit.theta_hat - 4.5).abs() < 1e-10);
    assert_eq!(fit.n, 3);

    let mut a = RatioOedInterval::default();
    let mut b = RatioOedInterval::default();
    let m = RatioOedMethod::ParametricBootstrap;
    assert_eq!(unsafe { ratio_oed_ci(ds, m, 0.05, 500, 9, false, &mut a) }, RatioOedStatus::Ok);
    assert_eq!(unsafe { ratio_oed_ci(ds, m, 0.05, 500, 9, false, &mut b) }, RatioOedStatus::Ok);
    assert_eq!((a.lower, a.upper), (b.lower, b.upper));
    assert!(a.lower <= a.upper);

    assert_eq!(
        unsafe { ratio_oed_ci(ds, RatioOedMethod::NormalHomo, 1.5, 0, 0, false, &mut a) },
        RatioOedStatus::Validation
    );
    unsafe { ratio_oed_dataset_free(ds) };
    unsafe { ratio_oed_dataset_free(ptr::null_mut()) };
}

#[test]
fn zero_intercept_is_numeric() {
    let ds = dataset(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]);
    let mut fit = RatioOedFit::default();
    assert_eq!(unsafe { ratio_oed_fit(ds, &mut fit) }, RatioOedStatus::Numeric);
    unsafe { ratio_oed_dataset_free(ds) };
}

#[test]
fn hetero_search_through_handles() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { ratio_oed_h_power(0.0, &mut h) }, RatioOedStatus::Ok);
    let mut xs = [0.0; 10];
    let mut crit = 0.0;
    let st = unsafe {
        ratio_oed_optimal_design_hetero(1.0 / 3.0, 19.0, 10, 0.053, h, 5, 1, xs.as_mut_ptr(), xs.len(), &mut crit)
    };
    assert_eq!(st, RatioOedStatus::Ok, "{}", last_error());
    assert!(crit.is_finite() && crit > 0.0);
    assert!(xs.windows(2).all(|w| w[0] <= w[1]));

    let mut short = [0.0; 4];
    let st = unsafe {
        ratio_oed_optimal_design_hetero(1.0 / 3.0, 19.0, 10, 0.053, h, 0, 1, short.as_mut_ptr(), 4, &mut crit)
    };
    assert_eq!(st, RatioOedStatus::BufferTooSmall);
    unsafe { ratio_oed_h_free(h) };

    let (tx, ts) = ([1.0, 10.0], [1.0, 2.0]);
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { ratio_oed_h_table(tx.as_ptr(), ts.as_ptr(), 2, &mut t) }, RatioOedStatus::Ok);
    unsafe { ratio_oed_h_free(t) };
    let bad = [2.0, 1.0];
    assert_eq!(unsafe { ratio_oed_h_table(bad.as_ptr(), ts.as_ptr(), 2, &mut t) }, RatioOedStatus::Validation);
}

#[test]
fn bakeoff_identity_ratio_is_one() {
    let d: Vec<f64> = (1..=10).map(f64::from).collect();
    let mut out = RatioOedBakeoff::default();
    let st = unsafe { ratio_oed_bakeoff(d.as_ptr(), 10, d.as_ptr(), 10, 1.0, 0.1, 0.05, 200, 3, &mut out) };
    assert_eq!(st, RatioOedStatus::Ok, "{}", last_error());
    assert_eq!(out.intercentile_ratio, 1.0);
    assert_eq!(out.variance_ratio, 1.0);
}

const HEADER: &str = include_str!("../include/ratio_oed.h");

#[test]
fn header_declares_every_export() {
    for name in [
        "ratio_oed_last_error",
        "ratio_oed_rho_star",
        "ratio_oed_optimal_design_homo",
        "ratio_oed_optimal_design_hetero",
        "ratio_oed_dataset_new",
        "ratio_oed_dataset_free",
        "ratio_oed_h_power",
        "ratio_oed_h_table",
        "ratio_oed_h_free",
        "ratio_oed_fit",
        "ratio_oed_ci",
        "ratio_oed_bakeoff",
        "typedef struct RatioOedDataset RatioOedDataset;",
        "RATIO_OED_STATUS_OK = 0",
    ] {
        assert!(HEADER.contains(name), "missing {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(probe) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(probe.status.success());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(
        &src,
        "#include \"ratio_oed.h\"\nint main(void) { size_t a, b; return ratio_oed_optimal_design_homo(1, 10, 4, 0.5, &a, &b); }\n",
    )
    .unwrap();
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
