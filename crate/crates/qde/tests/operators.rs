use exactnum::{int, rat, BigRational};
use num_traits::Zero;
use qde::*;
use series::TruncatedSeries;

fn p4_operator() -> DiffOperator {
    DiffOperator::from_ints(&[
        &[0, 0, 0, 0, 0, 75000],
        &[0, 0, 0, 0, 0, 156250],
        &[0, 0, 0, 0, 0, 109375],
        &[0, 0, 0, 0, 0, 31250],
        &[-1, 0, 0, 0, 0, 3125],
    ])
    .unwrap()
}

fn q4_operator() -> DiffOperator {
    DiffOperator::from_ints(&[
        &[0, 0, 0, 0, 12288],
        &[0, 0, 0, 0, 28672],
        &[0, 0, 0, 0, 23552],
        &[0, 0, 0, 0, 8192],
        &[-1, 0, 0, 0, 1024],
    ])
    .unwrap()
}

fn regularized(name: &str, order: usize) -> TruncatedSeries {
    periods::period_closed_form(name, order).unwrap().regularize()
}

fn constant(order: usize) -> TruncatedSeries {
    TruncatedSeries::one(order)
}

#[test]
fn apply_basics() {
    let d = DiffOperator::from_ints(&[&[0], &[1]]).unwrap();
    assert!(d.apply(&constant(5)).coeffs().iter().all(Zero::is_zero));
    let t = DiffOperator::from_ints(&[&[0, 1]]).unwrap();
    let out = t.apply(&constant(3));
    assert_eq!(out.coeffs(), &[int(0), int(1), int(0)]);
    assert_eq!(out.truncation_order(), 2);
    // (D + t)(1 + 2t) = 2t + t + 2t^2
    let op = DiffOperator::from_ints(&[&[0, 1], &[1, 0]]).unwrap();
    let f = TruncatedSeries::from_ints(&[1, 2, 0, 0]);
    assert_eq!(op.apply(&f).coeffs(), &[int(0), int(3), int(2)]);
}

#[test]
fn projective_operator_annihilates_its_period() {
    let g = regularized("P4", 100);
    let out = p4_operator().apply(&g);
    assert_eq!(out.truncation_order(), 95);
    assert!(out.coeffs().iter().all(Zero::is_zero));
    assert!(!q4_operator().apply(&g).coeffs().iter().all(Zero::is_zero));
}

#[test]
fn canonical_forms() {
    let d = DiffOperator::from_ints(&[&[0], &[1]]).unwrap();
    let minus_two_d = DiffOperator::from_ints(&[&[0], &[-2]]).unwrap();
    assert_eq!(minus_two_d.canonicalize(), d);
    let scaled = DiffOperator::new(
        p4_operator().rows().iter().map(|r| r.iter().map(|x| x * rat(-3, 14)).collect()).collect(),
    )
    .unwrap();
    assert_eq!(scaled.canonicalize(), p4_operator());
    assert!(p4_operator().is_canonical());
    let padded = DiffOperator::from_ints(&[&[0, 4, 0], &[-1, 0, 0]]).unwrap();
    let c = padded.canonicalize();
    assert_eq!(c.degree(), 1);
    assert_eq!(c, DiffOperator::from_ints(&[&[0, -4], &[1, 0]]).unwrap());
}

#[test]
fn scalar_equality() {
    let l = p4_operator();
    let three = DiffOperator::new(l.rows().iter().map(|r| r.iter().map(|x| x * int(3)).collect()).collect()).unwrap();
    assert!(equal_up_to_scalar(&l, &three));
    assert!(!equal_up_to_scalar(&l, &q4_operator()));
    let mut rows: Vec<Vec<BigRational>> = l.rows().to_vec();
    rows[2][5] += int(1);
    assert!(!equal_up_to_scalar(&l, &DiffOperator::new(rows).unwrap()));
}

#[test]
fn invalid_operators() {
    assert!(DiffOperator::new(vec![]).is_err());
    assert!(DiffOperator::from_ints(&[&[1, 2], &[0]]).is_err());
    assert!(DiffOperator::from_ints(&[&[1, 2], &[0, 0]]).is_err());
}

#[test]
fn reconstruct_small_cases() {
    let p1 = regularized("P1", 80);
    let op = reconstruct(&p1, 4, 6, DEFAULT_MARGIN).unwrap().operator().unwrap();
    assert_eq!(op, DiffOperator::from_ints(&[&[0, 0, 4], &[-1, 0, 4]]).unwrap());
    assert_eq!(op.to_string(), "(4t^2 - 1)D + 4t^2");
    let d = reconstruct(&constant(60), 2, 2, DEFAULT_MARGIN).unwrap().operator().unwrap();
    assert_eq!(d, DiffOperator::from_ints(&[&[0], &[1]]).unwrap());
    assert!(matches!(reconstruct(&TruncatedSeries::from_ints(&[0, 0, 0]), 2, 2, 0), Err(QdeError::ZeroSeries)));
}

#[test]
fn reconstruct_fourfolds() {
    let g = regularized("Q4", 520);
    let op = reconstruct(&g, 8, 30, DEFAULT_MARGIN).unwrap().operator().unwrap();
    assert_eq!(op, q4_operator());
    assert_eq!(modular_nullity(&g, 4, 4), 1);
    assert_eq!(modular_nullity(&g, 4, 3), 0);
    let g = regularized("P4", 520);
    let op = reconstruct(&g, 8, 30, DEFAULT_MARGIN).unwrap().operator().unwrap();
    assert_eq!(op, p4_operator());
    assert!(op.apply(&g).coeffs().iter().all(Zero::is_zero));
}

#[test]
fn too_few_terms_means_no_annihilator() {
    let g = regularized("P4", 40);
    assert_eq!(reconstruct(&g, 4, 5, DEFAULT_MARGIN).unwrap(), Reconstruction::NoAnnihilator);
}

#[test]
fn reconstruction_is_scale_invariant() {
    let g = regularized("V4_4", 200);
    let base = reconstruct(&g, 6, 10, DEFAULT_MARGIN).unwrap().operator().unwrap();
    let scaled = g.scale(&rat(-5, 3));
    let again = reconstruct(&scaled, 6, 10, DEFAULT_MARGIN).unwrap().operator().unwrap();
    assert_eq!(base, again);
}

#[test]
fn operator_files_round_trip() {
    let text = operator_to_toml(&q4_operator());
    assert!(text.starts_with("order = \"4\"\ndegree = \"4\"\n"));
    assert_eq!(operator_from_toml(&text).unwrap(), q4_operator());
    let with_note = format!("provenance = \"hand check\"\n{text}");
    assert_eq!(operator_from_toml(&with_note).unwrap(), q4_operator());
    assert!(operator_from_toml("order = \"1\"\ndegree = \"0\"\ncoefficients = [[\"1\"]]").is_err());
    assert!(operator_from_toml("order = \"0\"\ndegree = \"0\"\ncoefficients = [[\"x\"]]").is_err());
    assert!(operator_from_toml("order = 0").is_err());
}
