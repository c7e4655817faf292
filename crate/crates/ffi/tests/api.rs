use nlsp_ffi::*;
use std::ffi::CStr;
use std::f64::consts::PI;
use std::ptr;

const SMALL: NlspMode = NlspMode { regularization: NlspRegularization::SmallComponent, floor_tau: 0.0 };
const UNREG: NlspMode = NlspMode { regularization: NlspRegularization::Unregularized, floor_tau: 0.0 };

fn kind(tag: NlspKindTag) -> NlspKind {
    NlspKind { tag, a0: 0.0, a: [0.0; 3], f2_conjugate_reading: 0 }
}

fn box_state(n: usize, q: u32) -> *mut NlspField {
    let mut out = ptr::null_mut();
    let st = unsafe {
        nlsp_field_eigenstate(NlspFamily::Box, 1, &n, &1.0, NlspBoundary::Dirichlet, 0, &q, &mut out)
    };
    assert_eq!(st, NlspStatus::Ok);
    out
}

fn last_error() -> String {
    let p = nlsp_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn field_round_trip() {
    let n = 5usize;
    let vals: Vec<f64> = (0..20).map(|i| i as f64 * 0.25).collect();
    let mut f = ptr::null_mut();
    let st = unsafe { nlsp_field_new(1, &n, &2.0, NlspBoundary::Periodic, vals.as_ptr(), vals.len(), &mut f) };
    assert_eq!(st, NlspStatus::Ok);
    assert!(nlsp_last_error_message().is_null());
    assert_eq!(unsafe { nlsp_field_len(f) }, 5);
    let mut back = vec![0.0; 20];
    assert_eq!(unsafe { nlsp_field_values(f, back.as_mut_ptr(), back.len()) }, NlspStatus::Ok);
    assert_eq!(back, vals);
    let mut copy = ptr::null_mut();
    assert_eq!(unsafe { nlsp_field_clone(f, &mut copy) }, NlspStatus::Ok);
    let (mut a, mut b) = (0.0, 0.0);
    unsafe {
        nlsp_field_norm_sqr(f, &mut a);
        nlsp_field_norm_sqr(copy, &mut b);
        nlsp_field_free(f);
        nlsp_field_free(copy);
        nlsp_field_free(ptr::null_mut());
    }
    assert_eq!(a, b);
    assert!(a > 0.0);
}

#[test]
fn bad_inputs_report_status_and_message() {
    let n = 5usize;
    let vals = [0.0; 8];
    let mut f = ptr::null_mut();
    let st = unsafe { nlsp_field_new(1, &n, &1.0, NlspBoundary::Periodic, vals.as_ptr(), vals.len(), &mut f) };
    assert_eq!(st, NlspStatus::Config);
    assert!(last_error().contains("expected 20"));
    assert!(f.is_null());
    let st = unsafe { nlsp_field_new(1, ptr::null(), &1.0, NlspBoundary::Periodic, vals.as_ptr(), 20, &mut f) };
    assert_eq!(st, NlspStatus::NullPointer);
    assert!(last_error().contains("points"));
    let mut x = 0.0;
    assert_eq!(unsafe { nlsp_field_norm_sqr(ptr::null(), &mut x) }, NlspStatus::NullPointer);
    let q = 1u32;
    let st = unsafe { nlsp_field_eigenstate(NlspFamily::Box, 1, &n, &1.0, NlspBoundary::Periodic, 0, &q, &mut f) };
    assert_eq!(st, NlspStatus::Config);
}

#[test]
fn eval_marks_singular_points() {
    let f = box_state(1025, 2);
    let mut out = vec![0.0; 2 * 1025];
    let mut flags = vec![9u8; 1025];
    let p = nlsp_params_default();
    let st = unsafe { nlsp_eval_f(f, kind(NlspKindTag::RatioY), p, UNREG, ptr::null(), out.as_mut_ptr(), out.len(), flags.as_mut_ptr()) };
    assert_eq!(st, NlspStatus::Ok);
    let marked: Vec<usize> = flags.iter().enumerate().filter(|(_, &m)| m == 1).map(|(i, _)| i).collect();
    assert_eq!(marked, vec![0, 512, 1024]);
    assert!(out[2 * 512].is_nan());
    let st = unsafe { nlsp_eval_f(f, kind(NlspKindTag::RatioY), p, SMALL, ptr::null(), out.as_mut_ptr(), out.len(), ptr::null_mut()) };
    assert_eq!(st, NlspStatus::Ok);
    assert!((out[2 * 512] + 400.0).abs() < 4.0);
    unsafe { nlsp_field_free(f) };
}

#[test]
fn f2_needs_time_input() {
    let f = box_state(129, 1);
    let mut out = vec![0.0; 2 * 129];
    let p = NlspParams { delta: 1e-3, ..nlsp_params_default() };
    let k = kind(NlspKindTag::F2);
    let st = unsafe { nlsp_eval_f(f, k, p, SMALL, ptr::null(), out.as_mut_ptr(), out.len(), ptr::null_mut()) };
    assert_eq!(st, NlspStatus::MissingInput);
    let e = 0.5 * PI * PI;
    let st = unsafe { nlsp_eval_f(f, k, p, SMALL, &e, out.as_mut_ptr(), out.len(), ptr::null_mut()) };
    assert_eq!(st, NlspStatus::Ok);
    unsafe { nlsp_field_free(f) };
}

#[test]
fn shift_matches_closed_forms() {
    let f = box_state(1025, 3);
    let p = nlsp_params_default();
    let mut r = NlspShift::default();
    let k = NlspKind { a0: 1.0, ..kind(NlspKindTag::F3) };
    assert_eq!(unsafe { nlsp_shift(f, k, p, SMALL, ptr::null(), &mut r) }, NlspStatus::Ok);
    assert!((r.i_re - 1.0).abs() < 1e-10);
    assert!((r.delta_e_re + p.epsilon * p.c).abs() < 1e-12);
    assert_eq!(r.flagged_points, 0);
    let bad = NlspMode { regularization: NlspRegularization::SmallComponentFloored, floor_tau: 0.0 };
    assert_eq!(unsafe { nlsp_shift(f, k, p, bad, ptr::null(), &mut r) }, NlspStatus::Config);
    unsafe { nlsp_field_free(f) };
}

#[test]
fn evolve_in_place_and_abort_on_singularity() {
    let f = box_state(257, 1);
    let p = nlsp_params_default();
    let mut drift = -1.0;
    let st = unsafe { nlsp_evolve(f, kind(NlspKindTag::F1), p, SMALL, NlspScheme::StrangSplit, 1e-4, 50, &mut drift) };
    assert_eq!(st, NlspStatus::Ok);
    assert!((0.0..1e-10).contains(&drift));
    unsafe { nlsp_field_free(f) };

    let g = box_state(1025, 2);
    let mut before = vec![0.0; 4 * 1025];
    unsafe { nlsp_field_values(g, before.as_mut_ptr(), before.len()) };
    let st = unsafe { nlsp_evolve(g, kind(NlspKindTag::F1), p, UNREG, NlspScheme::CrankNicolsonFull, 1e-4, 5, ptr::null_mut()) };
    assert_eq!(st, NlspStatus::Singular);
    assert!(last_error().contains("singular"));
    let mut after = vec![0.0; 4 * 1025];
    unsafe { nlsp_field_values(g, after.as_mut_ptr(), after.len()) };
    assert_eq!(before, after);
    unsafe { nlsp_field_free(g) };
}

#[test]
fn default_params() {
    let p = nlsp_params_default();
    assert_eq!((p.hbar, p.m, p.c, p.e, p.epsilon, p.delta), (1.0, 1.0, 10.0, 0.0, 1e-3, 0.0));
}
