use std::path::PathBuf;

use exactnum::{int, rat, BigRational, UniPoly};
use monodromy::{
    is_fuchsian, local_log_monodromy, localize, ramification, singular_points, MonodromyError, PointKind,
};
use qde::{read_operator, reconstruct, DiffOperator, DEFAULT_MARGIN};

fn operator(name: &str) -> DiffOperator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../cli/golden/operators/{name}.toml"));
    read_operator(&path).unwrap()
}

#[test]
fn p4_points() {
    let op = operator("P4");
    let pts = singular_points(&op).unwrap();
    let kinds: Vec<PointKind> = pts.iter().map(|p| p.kind).collect();
    assert_eq!(kinds, [PointKind::Origin, PointKind::Finite, PointKind::Finite, PointKind::Infinity]);
    assert_eq!(pts[1].factor.as_ref().unwrap(), &UniPoly::from_ints(&[-1, 5]));
    assert_eq!(pts[2].factor.as_ref().unwrap(), &UniPoly::from_ints(&[1, 5, 25, 125, 625]));
    assert_eq!(pts[2].conjugates(), 4);
    assert_eq!(pts[1].label(), "t=1/5");
}

#[test]
fn q4_points() {
    let op = operator("Q4");
    let pts = singular_points(&op).unwrap();
    assert_eq!(pts.len(), 4);
    let factors: Vec<&UniPoly> = pts[1..3].iter().map(|p| p.factor.as_ref().unwrap()).collect();
    assert!(factors.contains(&&UniPoly::from_ints(&[-1, 0, 32])));
    assert!(factors.contains(&&UniPoly::from_ints(&[1, 0, 32])));
}

#[test]
fn p4_indicial_polynomials() {
    let op = operator("P4");
    let pts = singular_points(&op).unwrap();
    let origin = localize(&op, &pts[0]);
    let f0: Vec<BigRational> = origin.indicial().iter().map(|c| c.as_rational().unwrap().clone()).collect();
    assert_eq!(&f0[..4], &[int(0), int(0), int(0), int(0)]);
    assert_ne!(f0[4], int(0));
    let inf = localize(&op, pts.last().unwrap());
    let f0: Vec<BigRational> = inf.indicial().iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let monic: Vec<BigRational> = f0.iter().map(|c| c / &f0[4]).collect();
    // (λ-1)(λ-2)(λ-3)(λ-4)
    assert_eq!(monic, [int(24), int(-50), int(35), int(-10), int(1)]);
    let m = local_log_monodromy(&op, pts.last().unwrap()).unwrap();
    assert_eq!(m.exponents, (1..=4).map(|e| (int(e), 1)).collect::<Vec<_>>());
    assert!(m.is_trivial());
}

#[test]
fn d_alone() {
    let op = DiffOperator::from_ints(&[&[0], &[1]]).unwrap();
    let pts = singular_points(&op).unwrap();
    assert_eq!(pts.iter().map(|p| p.kind).collect::<Vec<_>>(), [PointKind::Origin, PointKind::Infinity]);
    let f0 = localize(&op, &pts[0]);
    assert_eq!(f0.indicial().len(), 2);
    assert!(f0.indicial()[0].is_zero());
    assert_eq!(f0.indicial()[1].as_rational(), Some(&int(1)));
}

#[test]
fn spot_blocks() {
    let q4 = operator("Q4");
    let s = singular_points(&q4).unwrap().into_iter().find(|p| p.factor == Some(UniPoly::from_ints(&[-1, 0, 32]))).unwrap();
    let m = local_log_monodromy(&q4, &s).unwrap();
    assert_eq!(m.blocks, [(int(0), 2), (int(0), 1), (int(0), 1)]);
    assert_eq!(m.contribution(), 1);

    let fi = operator("FI4_1");
    let inf = singular_points(&fi).unwrap().pop().unwrap();
    let m = local_log_monodromy(&fi, &inf).unwrap();
    assert_eq!(m.blocks, [(int(0), 1), (int(0), 1), (rat(1, 2), 1), (rat(1, 2), 1)]);
    assert_eq!(m.contribution(), 2);

    let p4 = operator("P4");
    let origin = singular_points(&p4).unwrap().remove(0);
    assert_eq!(local_log_monodromy(&p4, &origin).unwrap().blocks, [(int(0), 4)]);
}

#[test]
fn p4_ramification() {
    let r = ramification(&operator("P4")).unwrap();
    let contributions: Vec<(usize, usize)> = r.per_point.iter().map(|p| (p.contribution, p.conjugates)).collect();
    assert_eq!(contributions, [(3, 1), (1, 1), (1, 4), (0, 1)]);
    assert_eq!((r.rf, r.rank, r.defect), (8, 4, 0));
    assert!(r.is_extremal());
    assert_eq!(r.verdict(), "extremal");
}

#[test]
fn defects_of_spot_operators() {
    assert_eq!(ramification(&operator("FI4_5")).unwrap().defect, 1);
    assert_eq!(ramification(&operator("MW4_17")).unwrap().defect, 1);
    for name in ["P4", "Q4", "FI4_1", "V4_2", "V4_12", "MW4_1", "MW4_6"] {
        assert_eq!(ramification(&operator(name)).unwrap().defect, 0, "{name}");
    }
}

#[test]
fn factor_operators_are_extremal() {
    let p1 = DiffOperator::from_ints(&[&[0, 0, 4], &[-1, 0, 4]]).unwrap();
    let r = ramification(&p1).unwrap();
    assert_eq!((r.rf, r.defect), (2, 0));

    let g = periods::period_closed_form("B3_7", 200).unwrap().regularize();
    let op = reconstruct(&g, 8, 30, DEFAULT_MARGIN).unwrap().operator().unwrap().clone();
    let r = ramification(&op).unwrap();
    assert_eq!(r.defect, 0, "{r}");
}

#[test]
fn irregular_operator() {
    // D^2 - t is irregular at infinity.
    let op = DiffOperator::from_ints(&[&[0, -1], &[0, 0], &[1, 0]]).unwrap();
    let report = is_fuchsian(&op).unwrap();
    assert!(!report.is_fuchsian());
    assert_eq!(report.first_irregular().unwrap().kind, PointKind::Infinity);
    let inf = singular_points(&op).unwrap().pop().unwrap();
    assert!(matches!(local_log_monodromy(&op, &inf), Err(MonodromyError::NotFuchsian(_))));
    assert!(matches!(ramification(&op), Err(MonodromyError::NotFuchsian(_))));
}

#[test]
fn corpus_operators_are_fuchsian() {
    for name in ["P4", "FI4_5", "V4_18", "MW4_1", "MW4_9"] {
        assert!(is_fuchsian(&operator(name)).unwrap().is_fuchsian(), "{name}");
    }
}

#[test]
fn irrational_exponents_are_rejected() {
    // (1 - t)D^2 - 2: indicial polynomial λ^2 - 2 at the origin.
    let op = DiffOperator::from_ints(&[&[-2, 0], &[0, 0], &[1, -1]]).unwrap();
    let origin = singular_points(&op).unwrap().remove(0);
    match local_log_monodromy(&op, &origin) {
        Err(MonodromyError::IrrationalExponents { point, indicial }) => {
            assert_eq!(point, "t=0");
            assert!(indicial.contains("λ^2"), "{indicial}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn report_display() {
    let text = ramification(&operator("P4")).unwrap().to_string();
    assert!(text.contains("t=0: exponents {0^4} blocks [(0, 4)]"), "{text}");
    assert!(text.ends_with("rf = 8, rank = 4, defect = 0: extremal"), "{text}");
}
