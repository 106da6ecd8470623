use exactnum::{int, rat, BigRational};
use num_traits::Zero;
use proptest::prelude::*;
use series::{
    extract_leading_vandermonde, series_from_toml, series_to_toml, vandermonde, MultiPolyTrunc, TruncatedSeries,
};

fn factorial(n: i64) -> i64 {
    (1..=n).product()
}

/// Σ_d t^{kd} / (d!)^e up to `order`.
fn power_family(k: usize, e: u32, order: usize) -> TruncatedSeries {
    let mut c = vec![BigRational::zero(); order + 1];
    for d in 0..=order / k {
        c[k * d] = rat(1, factorial(d as i64).pow(e));
    }
    TruncatedSeries::new(c)
}

#[test]
fn regularize_projective_space() {
    assert_eq!(TruncatedSeries::from_ints(&[1]).regularize(), TruncatedSeries::from_ints(&[1]));
    let g = power_family(5, 5, 10).regularize();
    assert_eq!(g.coeff(5), &int(120));
}

#[test]
fn regularize_quadric() {
    let mut c = vec![BigRational::zero(); 5];
    c[0] = int(1);
    c[4] = int(2);
    let g = TruncatedSeries::new(c).regularize();
    assert_eq!(g.coeff(4), &int(48));
}

#[test]
fn products_of_projective_lines() {
    let p1 = power_family(2, 2, 8);
    let p3 = power_family(4, 4, 8);
    assert_eq!(p1.mul(&p3).regularize().coeff(4), &int(30));
    let four = p1.mul(&p1).mul(&p1).mul(&p1);
    assert_eq!(four.regularize().coeff(2), &int(8));
    assert_eq!(p1.mul(&TruncatedSeries::one(8)), p1);
    assert_eq!(p1.mul(&power_family(2, 2, 3)).truncation_order(), 3);
}

#[test]
fn exponential_normalization() {
    let g = TruncatedSeries::from_ints(&[1, 0, 5]);
    assert_eq!(g.exp_linear_normalize().unwrap(), (g.clone(), BigRational::zero()));
    let (h, c) = TruncatedSeries::from_ints(&[1, 3, 0]).exp_linear_normalize().unwrap();
    assert_eq!(c, int(3));
    // e^{-3t}(1+3t) = 1 + 0 t - 9/2 t^2 + ...
    assert_eq!(h.coeffs(), &[int(1), int(0), rat(-9, 2)]);
    assert!(TruncatedSeries::from_ints(&[2, 1]).exp_linear_normalize().is_err());
}

#[test]
fn series_file_roundtrip() {
    let s = TruncatedSeries::new(vec![int(1), int(0), rat(-9, 2), rat(7, 3)]);
    let text = series_to_toml(&s);
    assert!(text.contains("\"-9/2\""));
    assert_eq!(series_from_toml(&text).unwrap(), s);
    let bad = "truncation_order = \"2\"\ncoefficients = [\"1\", \"x\", \"0\"]\n";
    let err = series_from_toml(bad).unwrap_err().to_string();
    assert!(err.contains("coefficients"), "{err}");
}

#[test]
fn vandermonde_leading_coefficient() {
    let v = vandermonde(3, 3);
    assert_eq!(extract_leading_vandermonde(&v), int(1));
    assert!(v.is_vandermonde_multiple());
    assert_eq!(extract_leading_vandermonde(&MultiPolyTrunc::zero(3, 3)), int(0));
    let w = vandermonde(5, 10);
    assert_eq!(extract_leading_vandermonde(&w.scale(&rat(-2, 7))), rat(-2, 7));
}

#[test]
fn symmetric_factor_times_vandermonde_keeps_leading_coefficient() {
    // (1 + p1 + p2 + p3) * V: low degree part is zero, top part is V itself.
    let s = MultiPolyTrunc::linear(3, 3, int(1), &[int(1), int(1), int(1)]);
    let v = vandermonde(3, 3);
    let prod = s.mul(&v);
    assert!(prod.is_vandermonde_multiple());
    assert_eq!(extract_leading_vandermonde(&prod), int(1));
    // A non-antisymmetric perturbation is detected.
    let bad = prod.add(&MultiPolyTrunc::var(3, 3, 0));
    assert!(!bad.is_vandermonde_multiple());
}

#[test]
fn inverse_power_expansion() {
    // 1/(p+2)^3 = 1/8 - 3/16 p + 3/16 p^2 - 5/32 p^3 + ...
    let p = MultiPolyTrunc::var(1, 3, 0);
    let inv = MultiPolyTrunc::inverse_power(&p, &int(2), 3);
    let expect = [rat(1, 8), rat(-3, 16), rat(3, 16), rat(-5, 32)];
    for (k, c) in expect.iter().enumerate() {
        assert_eq!(&inv.coeff(&[k as u32]), c);
    }
    let cube = MultiPolyTrunc::linear(1, 3, int(2), &[int(1)]);
    let back = inv.mul(&cube).mul(&cube).mul(&cube);
    assert_eq!(back, MultiPolyTrunc::one(1, 3));
}

fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((-30i64..30, 1i64..9), 1..9)
        .prop_map(|v| TruncatedSeries::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
}

proptest! {
    #[test]
    fn mul_commutative_associative(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn regularize_is_inverted(a in series()) {
        prop_assert_eq!(a.regularize().unregularize(), a.clone());
        prop_assert_eq!(a.regularize().truncation_order(), a.truncation_order());
    }

    #[test]
    fn normalization_kills_linear_term(mut v in prop::collection::vec((-30i64..30, 1i64..9), 2..9)) {
        v[0] = (1, 1);
        let a = TruncatedSeries::new(v.into_iter().map(|(n, d)| rat(n, d)).collect());
        let (b, c) = a.exp_linear_normalize().unwrap();
        prop_assert!(b.coeff(1).is_zero());
        prop_assert_eq!(b.mul(&TruncatedSeries::exp_linear(&-c, a.truncation_order())), a);
    }
}
