use exactnum::{factor_over_q, int, rat, rational_roots, BigRational, UniPoly};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn p(cs: &[i64]) -> UniPoly {
    UniPoly::from_ints(cs)
}

#[test]
fn gcd_basic_cases() {
    assert_eq!(UniPoly::gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
    let q = p(&[3, 0, 6]);
    assert_eq!(UniPoly::gcd(&q, &UniPoly::zero()), q.monic());
    assert!(UniPoly::gcd(&UniPoly::zero(), &UniPoly::zero()).is_zero());
}

#[test]
fn gcd_quartic_and_conifold_factor() {
    let quartic = p(&[1, 5, 25, 125, 625]);
    // A linear factor divides the quartic only if the quartic vanishes at its root.
    let at_fifth = quartic.eval(&rat(1, 5));
    assert_eq!(at_fifth, int(5));
    assert_eq!(UniPoly::gcd(&quartic, &p(&[-1, 5])), UniPoly::one());
}

#[test]
fn factor_difference_of_squares() {
    let f = factor_over_q(&p(&[-1, 0, 1])).unwrap();
    assert_eq!(f.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
    assert_eq!(f.expand(), p(&[-1, 0, 1]));
}

#[test]
fn factor_quadric_leading_coefficient() {
    let f = p(&[-1, 0, 0, 0, 1024]);
    let fac = factor_over_q(&f).unwrap();
    let minus = UniPoly::new(vec![rat(-1, 32), BigRational::zero(), BigRational::one()]);
    let plus = UniPoly::new(vec![rat(1, 32), BigRational::zero(), BigRational::one()]);
    assert_eq!(fac.factors, vec![(minus.clone(), 1), (plus.clone(), 1)]);
    // (t^2 - 1/32)(t^2 + 1/32) = t^4 - 1/1024
    assert_eq!(&minus * &plus, f.scale(&rat(1, 1024)));
    assert_eq!(fac.content, int(1024));
}

// Irreducibility oracle: no monic factor of degree <= 3 over F_17 means the sextic
// is irreducible mod 17, hence over Q (17 does not divide the leading coefficient).
fn divides_mod(f: &[i64], g: &[i64], m: i64) -> bool {
    let mut r: Vec<i64> = f.iter().map(|c| c.rem_euclid(m)).collect();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let s = r.len() - 1 - dg;
        for (j, gj) in g.iter().enumerate() {
            r[s + j] = (r[s + j] - c * gj).rem_euclid(m);
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

#[test]
fn sextic_is_irreducible() {
    let f = [-1i64, 0, 0, 297, 0, 0, 729];
    let m = 17;
    for d in 1..=3usize {
        let count = (m as usize).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % m as usize) as i64);
                c /= m as usize;
            }
            g.push(1);
            assert!(!divides_mod(&f, &g, m), "factor {g:?} mod 17");
        }
    }
    let fac = factor_over_q(&p(&f)).unwrap();
    assert_eq!(fac.factors.len(), 1);
    assert_eq!(fac.factors[0].0.degree(), Some(6));
}

#[test]
fn swinnerton_dyer_quartic_needs_recombination() {
    // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime.
    let fac = factor_over_q(&p(&[1, 0, -10, 0, 1])).unwrap();
    assert_eq!(fac.factors.len(), 1);
    let prod = &(&p(&[1, 0, -10, 0, 1]) * &p(&[-2, 0, 0, 3])) * &p(&[1, 1]).pow(3);
    let fac = factor_over_q(&prod).unwrap();
    assert_eq!(fac.expand(), prod);
    let degs: Vec<_> = fac.factors.iter().map(|(f, m)| (f.degree().unwrap(), *m)).collect();
    assert_eq!(degs, vec![(1, 3), (3, 1), (4, 1)]);
}

#[test]
fn zero_has_no_factorization() {
    assert!(factor_over_q(&UniPoly::zero()).is_err());
}

#[test]
fn rational_roots_with_multiplicity() {
    let f = &p(&[-1, 2]).pow(2) * &p(&[6, 1]);
    assert_eq!(rational_roots(&f), vec![(int(-6), 1), (rat(1, 2), 2)]);
}

fn small_poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-6i64..=6, 1..5).prop_map(|mut v| {
        if *v.last().unwrap() == 0 {
            *v.last_mut().unwrap() = 1;
        }
        p(&v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorization_remultiplies(a in small_poly(), b in small_poly(), c in small_poly()) {
        let f = &(&a * &b) * &c;
        let fac = factor_over_q(&f).unwrap();
        prop_assert_eq!(fac.expand(), f);
        for (g, _) in &fac.factors {
            prop_assert_eq!(UniPoly::gcd(g, &g.derivative()), UniPoly::one());
            if g.degree().unwrap() > 1 {
                prop_assert!(rational_roots(g).is_empty());
            }
        }
        for w in fac.factors.windows(2) {
            prop_assert!(w[0].0.canonical_cmp(&w[1].0).is_le());
        }
    }

    #[test]
    fn division_identity(a in small_poly(), b in small_poly()) {
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()));
    }
}
