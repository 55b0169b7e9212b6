mod census {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/census.rs"));
}

mod cli_reports {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cli_reports.rs"));
}

mod common_roots {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/common_roots.rs"));
}

mod extremal_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/extremal_sweep.rs"));
}

mod fourier_bounds {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fourier_bounds.rs"));
}

mod gap_structure {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gap_structure.rs"));
}

mod lcd_bounds {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lcd_bounds.rs"));
}

mod least_singular_value {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/least_singular_value.rs"));
}

mod multilinear {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/multilinear.rs"));
}

mod planar_disks {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/planar_disks.rs"));
}

mod quadratic_forms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/quadratic_forms.rs"));
}

mod signed_sums {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/signed_sums.rs"));
}

mod singular_matrices {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/singular_matrices.rs"));
}

use smallball::rational::{int, rat};

#[test]
fn signed_sums_example() {
    let s = signed_sums::run_example().unwrap();
    assert_eq!(s.rho, rat(4, 32));
    assert!(s.ball >= s.rho);
    assert!(s.atoms > 1);
}

#[test]
fn planar_disks_example() {
    let (fixed, best) = planar_disks::run_example().unwrap();
    assert_eq!(fixed, rat(1584, 2048));
    assert_eq!(best, rat(1344, 2048));
}

#[test]
fn extremal_sweep_example() {
    assert_eq!(extremal_sweep::run_example().unwrap(), 923);
}

#[test]
fn fourier_bounds_example() {
    let f = fourier_bounds::run_example().unwrap();
    assert!(f.esseen >= f.rho && f.finite_field >= f.rho);
}

#[test]
fn lcd_bounds_example() {
    let (bound, exact) = lcd_bounds::run_example().unwrap();
    assert!(bound >= exact);
}

#[test]
fn gap_structure_example() {
    assert_eq!(gap_structure::run_example().unwrap(), 15);
}

#[test]
fn census_example() {
    assert!(census::run_example().unwrap() > 0.0);
}

#[test]
fn quadratic_forms_example() {
    assert_eq!(quadratic_forms::run_example().unwrap(), rat(6, 16));
}

#[test]
fn multilinear_example() {
    assert!(multilinear::run_example().unwrap() <= int(0));
}

#[test]
fn singular_matrices_example() {
    let p = singular_matrices::run_example().unwrap();
    assert!((0.0..0.5).contains(&p));
}

#[test]
fn least_singular_value_example() {
    assert!(least_singular_value::run_example().unwrap() < 0.15);
}

#[test]
fn common_roots_example() {
    assert!(common_roots::run_example().unwrap() < 5.0);
}

#[test]
fn cli_reports_example() {
    let body = cli_reports::run_example().unwrap();
    assert!(body.contains("\"schema_version\": \"1.0\""));
}
