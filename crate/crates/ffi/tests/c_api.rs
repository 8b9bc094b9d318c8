use heller_ffi::*;
use std::ffi::CStr;
use std::ptr;

fn last_error() -> String {
    let p = heller_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn chebyshev(n: usize) -> *mut HellerModel {
    let mut m = ptr::null_mut();
    assert_eq!(
        heller_chebyshev_new(1.0 / 3.0, 1.0 / 3.0, n, &mut m),
        HellerStatus::Ok
    );
    m
}

#[test]
fn table1_through_the_handle() {
    let m = chebyshev(10);
    assert_eq!(heller_size(m), 10);
    let mut eps = [0.0; 10];
    assert_eq!(
        heller_eigenvalues(m, eps.as_mut_ptr(), eps.len()),
        HellerStatus::Ok
    );
    assert!((eps[4] - -0.053421).abs() < 1e-6);

    let mut w = [0.0; 10];
    for method in [HellerMethod::JmatrixExact, HellerMethod::Oracle] {
        assert_eq!(
            heller_weights(m, method, false, w.as_mut_ptr(), 10),
            HellerStatus::Ok
        );
        assert!((w[4] - 0.286976).abs() < 1e-6);
    }
    assert_eq!(
        heller_weights(m, HellerMethod::Broad, false, w.as_mut_ptr(), 10),
        HellerStatus::Ok
    );
    assert!((w[9] - 0.085524).abs() < 1e-6);
    assert_eq!(
        heller_weights(m, HellerMethod::Broad, true, w.as_mut_ptr(), 10),
        HellerStatus::Ok
    );
    assert!((w[9] - 0.085524).abs() > 1e-3);

    let mut x = 0.0;
    assert_eq!(heller_zeta_inverse(m, eps[3], &mut x), HellerStatus::Ok);
    assert_eq!(x, 3.0);
    heller_free(m);
}

#[test]
fn partial_wave_handle() {
    let mut m = ptr::null_mut();
    assert_eq!(heller_partial_wave_new(1, 1.3, 5, &mut m), HellerStatus::Ok);
    let mut w = [0.0; 5];
    assert_eq!(
        heller_weights(m, HellerMethod::JmatrixExact, false, w.as_mut_ptr(), 5),
        HellerStatus::Ok
    );
    assert!((w[3] - 4.01574624).abs() < 1e-7);
    assert_eq!(
        heller_weights(m, HellerMethod::Broad, false, w.as_mut_ptr(), 5),
        HellerStatus::InvalidArgument
    );
    assert!(last_error().contains("not available"));
    heller_free(m);
}

#[test]
fn error_codes() {
    let mut m = ptr::null_mut();
    assert_eq!(
        heller_chebyshev_new(0.0, 0.0, 10, &mut m),
        HellerStatus::InvalidArgument
    );
    assert!(m.is_null());
    assert!(last_error().contains("B must be nonzero"));
    assert_eq!(
        heller_chebyshev_new(0.0, 0.5, 1, &mut m),
        HellerStatus::InvalidArgument
    );
    assert_eq!(
        heller_chebyshev_new(0.0, 0.5, 4, ptr::null_mut()),
        HellerStatus::NullPointer
    );

    let m = chebyshev(4);
    let mut small = [0.0; 3];
    assert_eq!(
        heller_eigenvalues(m, small.as_mut_ptr(), 3),
        HellerStatus::InvalidArgument
    );
    assert_eq!(
        heller_eigenvalues(m, ptr::null_mut(), 4),
        HellerStatus::NullPointer
    );
    let mut x = 0.0;
    assert_eq!(heller_zeta_inverse(m, 2.0, &mut x), HellerStatus::Numerical);
    assert!(last_error().contains("outside the continuum"));
    heller_free(m);

    assert_eq!(heller_size(ptr::null()), 0);
    assert_eq!(
        heller_eigenvalues(ptr::null(), small.as_mut_ptr(), 3),
        HellerStatus::NullPointer
    );
    heller_free(ptr::null_mut());
}

#[test]
fn header_declares_the_api() {
    let header = include_str!("../include/heller.h");
    for name in [
        "heller_chebyshev_new",
        "heller_partial_wave_new",
        "heller_free",
        "heller_size",
        "heller_eigenvalues",
        "heller_weights",
        "heller_zeta_inverse",
        "heller_last_error",
        "HELLER_STATUS_OK",
        "HELLER_METHOD_JMATRIX_EXACT",
        "typedef struct HellerModel HellerModel",
    ] {
        assert!(header.contains(name), "{name} missing from heller.h");
    }
}
