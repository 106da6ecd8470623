use exactnum::{int, rat, BigRational};
use periods::*;
use series::TruncatedSeries;

fn alpha(s: &TruncatedSeries, d: usize) -> BigRational {
    s.regularize().coeff(d).clone()
}

fn fact(n: u64) -> BigRational {
    (1..=n).fold(int(1), |a, k| a * int(k as i64))
}

fn toric(rows: &[&[i64]]) -> ToricData {
    ToricData::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

#[test]
fn projective_space_coefficients() {
    let s = period_toric(&toric(&[&[1, 1, 1, 1, 1]]), 25).unwrap();
    for d in 0..=25u64 {
        let want = if d % 5 == 0 { fact(d / 5).pow(5).recip() } else { int(0) };
        assert_eq!(s.coeff(d as usize), &want, "c_{d}");
    }
    assert_eq!(alpha(&s, 5), int(120));
    assert_eq!(alpha(&s, 20), int(305540235000));
    let b = period_closed_form("P4", 25).unwrap();
    assert_eq!(b, s);
}

#[test]
fn toric_examples() {
    let mw15 = period_toric(&toric(&[&[1, 1, 1, 1, 0, -2], &[0, 0, 0, 0, 1, 1]]), 8).unwrap();
    assert_eq!(alpha(&mw15, 2), int(2));
    assert_eq!(alpha(&mw15, 6), int(380));
    let mw17 = period_toric(&toric(&[&[1, 1, 0, 0, 0, 0, 0], &[0, 0, 1, 1, 1, 0, -1], &[0, 0, 0, 0, 0, 1, 1]]), 6).unwrap();
    assert_eq!(alpha(&mw17, 4), int(60));
}

#[test]
fn toric_complete_intersections() {
    let td = toric(&[&[1, 1, 1, 1, 1, 1]]);
    let v44 = period_toric_ci(&td, &BundleData::new(vec![vec![4]], 1).unwrap(), 6).unwrap();
    assert_eq!(v44.coeff(2), &int(24));
    assert_eq!(alpha(&v44, 2), int(48));
    let td = toric(&[&[1, 1, 1, 1, 0, 0, 0, 0], &[0, 0, 0, 0, 1, 1, 1, 1]]);
    let bd = BundleData::new(vec![vec![1, 1], vec![1, 1]], 2).unwrap();
    assert_eq!(alpha(&period_toric_ci(&td, &bd, 4).unwrap(), 2), int(4));
    let td = toric(&[&[1, 1, 1, -1, 0, 0, 0], &[0, 0, 0, 1, 1, 1, 1]]);
    let bd = BundleData::new(vec![vec![0, 2]], 2).unwrap();
    assert_eq!(alpha(&period_toric_ci(&td, &bd, 6).unwrap(), 4), int(84));
}

#[test]
fn weighted_complete_intersections() {
    let fi2 = WpsCiData::new(vec![1, 1, 1, 1, 1, 2], vec![4]).unwrap();
    assert_eq!(fi2.index(), 3);
    assert_eq!(alpha(&period_wps_ci(&fi2, 6).unwrap(), 3), int(72));
    let v2 = WpsCiData::new(vec![1, 1, 1, 1, 1, 3], vec![6]).unwrap();
    assert_eq!(alpha(&period_wps_ci(&v2, 4).unwrap(), 2), int(240));
    let p4 = WpsCiData::new(vec![1; 5], vec![]).unwrap();
    assert_eq!(period_wps_ci(&p4, 30).unwrap(), period_toric(&toric(&[&[1; 5]]), 30).unwrap());
}

#[test]
fn wps_normalization_removes_linear_term() {
    // cubic surface-like data with index 1: the raw sum has a linear term.
    let wd = WpsCiData::new(vec![1, 1, 1, 1], vec![3]).unwrap();
    let s = period_wps_ci(&wd, 6).unwrap();
    let raw = TruncatedSeries::new((0..=6u64).map(|d| fact(3 * d) / fact(d).pow(4)).collect());
    let (want, c) = raw.exp_linear_normalize().unwrap();
    assert_eq!(c, int(6));
    assert_eq!(s, want);
}

#[test]
fn products() {
    let p1 = period_closed_form("P1", 10).unwrap();
    let p3 = period_closed_form("P3", 10).unwrap();
    assert_eq!(alpha(&period_product(&[p1.clone(), p3]), 4), int(30));
    let p1_4 = period_product(&[p1.clone(), p1.clone(), p1.clone(), p1.clone()]);
    assert_eq!(alpha(&p1_4, 2), int(8));
    assert_eq!(alpha(&p1_4, 6), int(5120));
    assert_eq!(resolve(&structural_spec("MW4_18").unwrap(), 8).unwrap(), p1_4.truncate(8));
    let b31 = period_closed_form("B3_1", 10).unwrap();
    assert_eq!(alpha(&period_product(&[p1.clone(), b31]), 2), int(122));
    let p2 = period_closed_form("P2", 10).unwrap();
    assert_eq!(alpha(&period_product(&[p2.clone(), p2]), 3), int(12));
    assert_eq!(period_product(&[p1.clone()]), p1);
    assert_eq!(period_product(&[p1.clone(), TruncatedSeries::one(10)]), p1);
}

#[test]
fn closed_form_examples() {
    assert_eq!(alpha(&period_closed_form("V4_12", 4).unwrap(), 2), int(10));
    let mw11 = period_closed_form("MW4_11", 4).unwrap();
    assert_eq!((alpha(&mw11, 2), alpha(&mw11, 4)), (int(4), int(84)));
    assert_eq!(alpha(&period_closed_form("MW4_9", 4).unwrap(), 2), int(8));
    assert_eq!(alpha(&period_closed_form("FI4_1", 12).unwrap(), 12), int(46381007673000));
    assert_eq!(period_closed_form("FI4_5", 30).unwrap(), period_closed_form("V4_5", 30).unwrap());
    assert!(matches!(period_closed_form("X9_9", 4), Err(PeriodError::UnknownBuiltin(_))));
}

#[test]
fn harmonic_numbers() {
    assert_eq!(harmonic(0), int(0));
    assert_eq!(harmonic(1), int(1));
    assert_eq!(harmonic(3), rat(11, 6));
}

#[test]
fn quadric_against_factorial_formula() {
    let s = period_closed_form("Q4", 40).unwrap();
    for d in 0..=10u64 {
        assert_eq!(alpha(&s, 4 * d as usize), fact(4 * d) * fact(2 * d) / fact(d).pow(6));
    }
    assert_eq!(period_structural("Q4", 40).unwrap().unwrap(), s);
}

#[test]
fn spec_documents() {
    let spec = spec_from_toml("kind = \"toric\"\nweights = [[1, 1, 1, 1, 0, -2], [0, 0, 0, 0, \"1\", 1]]\n").unwrap();
    assert_eq!(spec, structural_spec("MW4_15").unwrap());
    let spec = spec_from_toml("kind = \"toric_ci\"\nweights = [[1,1,1,1,1,1]]\nbundle = [[2]]\n").unwrap();
    assert_eq!(spec, structural_spec("Q4").unwrap());
    let spec = spec_from_toml("kind = \"wps_ci\"\nweights = [1,1,1,1,2,3]\ndegrees = [6]\n").unwrap();
    assert_eq!(spec, structural_spec("FI4_1").unwrap());
    let spec = spec_from_toml(
        "kind = \"product\"\n[[factors]]\nkind = \"builtin\"\nname = \"P1\"\n[[factors]]\nkind = \"toric\"\nweights = [[1,1,1,1]]\n",
    )
    .unwrap();
    assert_eq!(resolve(&spec, 12).unwrap(), period_closed_form("MW4_14", 12).unwrap());
    assert!(spec_from_toml("kind = \"cone\"").is_err());
    assert!(spec_from_toml("weights = [[1,1]]").is_err());
    assert!(spec_from_toml("kind = \"toric\"\nweights = [[1, \"x\"]]").is_err());
}

#[test]
fn invalid_inputs() {
    let p4 = toric(&[&[1, 1, 1, 1, 1]]);
    let quintic = BundleData::new(vec![vec![5]], 1).unwrap();
    assert!(matches!(period_toric_ci(&p4, &quintic, 10), Err(PeriodError::NotFano(_))));
    assert!(matches!(ToricData::new(vec![vec![1, 1], vec![2, 2]]), Err(PeriodError::InvalidToric(_))));
    assert!(matches!(ToricData::new(vec![vec![1, 1, 1], vec![0, 1]]), Err(PeriodError::InvalidToric(_))));
    let td = toric(&[&[1, 1, 1, 0, -1], &[0, 0, 0, 1, 1]]);
    let bd = BundleData::new(vec![vec![1, -1]], 2).unwrap();
    assert!(matches!(period_toric_ci(&td, &bd, 6), Err(PeriodError::BundleNotNef { .. })));
    assert!(matches!(WpsCiData::new(vec![1, 1, 2], vec![3]), Err(PeriodError::InvalidWps(_))));
    assert!(matches!(WpsCiData::new(vec![1, 1], vec![2]), Err(PeriodError::InvalidWps(_))));
    assert!(matches!(WpsCiData::new(vec![0, 1], vec![]), Err(PeriodError::InvalidWps(_))));
}

#[test]
fn beta_enumeration() {
    let p4 = toric(&[&[1, 1, 1, 1, 1]]);
    let pts = enumerate_beta(&p4, 10).unwrap();
    let got: Vec<(Vec<i64>, i64)> = pts.iter().map(|b| (b.beta.clone(), b.degree)).collect();
    assert_eq!(got, vec![(vec![0], 0), (vec![1], 5), (vec![2], 10)]);
    let mw15 = toric(&[&[1, 1, 1, 1, 0, -2], &[0, 0, 0, 0, 1, 1]]);
    let mut got: Vec<Vec<i64>> = enumerate_beta(&mw15, 4).unwrap().into_iter().map(|b| b.beta).collect();
    got.sort();
    // l ≥ 0, m ≥ 2l, degree 2l + 2m: (1, 2) first appears at degree 6.
    assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![0, 2]]);
    let mut got: Vec<Vec<i64>> = enumerate_beta(&mw15, 6).unwrap().into_iter().map(|b| b.beta).collect();
    got.sort();
    assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2]]);
    for b in enumerate_beta(&mw15, 12).unwrap() {
        assert!(b.pairings.iter().all(|&x| x >= 0));
        assert_eq!(b.pairings, mw15.pairings(&b.beta));
        assert_eq!(b.degree, b.pairings.iter().sum::<i64>());
    }
    let only = enumerate_beta(&mw15, 0).unwrap();
    assert_eq!(only.len(), 1);
    assert_eq!(only[0].beta, vec![0, 0]);
}
