use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::OnceLock;

use exactnum::{format_rational, BigRational};
use monodromy::{
    frobenius_basis, galois_spot_check, localize, ramification, residual_vanishes, PointKind, RamificationReport,
};
use qde::{read_operator, DiffOperator};
use serde::Deserialize;

#[derive(Deserialize)]
struct Golden {
    record: Vec<Record>,
}

#[derive(Deserialize)]
struct Record {
    name: String,
    order: String,
    defect: String,
    point: Vec<Point>,
}

#[derive(Deserialize)]
struct Point {
    kind: String,
    factor: Option<Vec<String>>,
    blocks: Vec<[String; 2]>,
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/golden")
}

fn golden() -> Vec<Record> {
    let text = std::fs::read_to_string(golden_dir().join("monodromy.toml")).unwrap();
    toml::from_str::<Golden>(&text).unwrap().record
}

fn operator(name: &str) -> DiffOperator {
    read_operator(&golden_dir().join(format!("operators/{name}.toml"))).unwrap()
}

type PointKey = (String, Vec<String>);

struct Entry {
    record: Record,
    op: DiffOperator,
    report: RamificationReport,
}

fn corpus() -> &'static [Entry] {
    static CORPUS: OnceLock<Vec<Entry>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        golden()
            .into_iter()
            .map(|record| {
                let op = operator(&record.name);
                let report = ramification(&op).unwrap();
                Entry { record, op, report }
            })
            .collect()
    })
}

fn table(report: &RamificationReport) -> BTreeMap<PointKey, Vec<(String, String)>> {
    let mut out = BTreeMap::new();
    for p in &report.per_point {
        let m = &p.monodromy;
        if m.is_trivial() {
            continue;
        }
        let kind = match m.point.kind {
            PointKind::Origin => "origin",
            PointKind::Finite => "finite",
            PointKind::Infinity => "infinity",
        };
        let factor = m.point.factor.as_ref().map_or(Vec::new(), |f| f.to_integers().iter().map(|c| c.to_string()).collect());
        let mut blocks: Vec<(String, String)> = m.blocks.iter().map(|(e, k)| (format_rational(e), k.to_string())).collect();
        blocks.sort();
        out.insert((kind.to_string(), factor), blocks);
    }
    out
}

#[test]
fn every_table_matches() {
    for Entry { record: rec, op, report } in corpus() {
        assert_eq!(op.order().to_string(), rec.order, "{}", rec.name);
        let got = table(report);
        let mut want = BTreeMap::new();
        for p in &rec.point {
            let mut blocks: Vec<(String, String)> = p.blocks.iter().map(|[e, k]| (e.clone(), k.clone())).collect();
            blocks.sort();
            want.insert((p.kind.clone(), p.factor.clone().unwrap_or_default()), blocks);
        }
        assert_eq!(got, want, "{}", rec.name);
        assert_eq!(report.defect.to_string(), rec.defect, "{}", rec.name);
        assert!(report.defect >= 0, "{}", rec.name);
        assert_eq!(report.rank, op.order());
    }
}

#[test]
fn census() {
    let defects: Vec<i64> = corpus().iter().map(|e| e.report.defect).collect();
    assert_eq!(defects.len(), 35);
    assert_eq!(defects.iter().filter(|&&d| d == 0).count(), 24);
    assert_eq!(defects.iter().filter(|&&d| d == 1).count(), 11);
}

#[test]
fn origin_is_maximally_unipotent() {
    let zero = BigRational::from_integer(0.into());
    for Entry { record: rec, op, report } in corpus() {
        let origin = &report.per_point[0].monodromy;
        assert_eq!(origin.point.kind, PointKind::Origin);
        assert!(origin.exponents.iter().all(|(e, _)| e.is_integer()), "{}", rec.name);
        assert!(origin.blocks.iter().all(|(e, _)| *e == zero), "{}", rec.name);
        assert_eq!(origin.blocks[0].1, 4, "{}", rec.name);
        assert!(origin.blocks[1..].iter().all(|b| b.1 < 4), "{}", rec.name);
        if op.order() == 4 {
            assert_eq!(origin.exponents, vec![(zero.clone(), 4)], "{}", rec.name);
        }
    }
}

#[test]
fn block_sizes_sum_to_order() {
    for e in corpus() {
        for p in &e.report.per_point {
            assert_eq!(p.monodromy.blocks.iter().map(|b| b.1).sum::<usize>(), e.op.order(), "{}", e.record.name);
            assert_eq!(p.monodromy.exponents.iter().map(|x| x.1).sum::<usize>(), e.op.order(), "{}", e.record.name);
        }
    }
}

#[test]
fn frobenius_solutions_are_annihilated() {
    for name in ["P4", "FI4_1", "MW4_1", "MW4_6", "V4_12"] {
        let op = operator(name);
        for s in monodromy::singular_points(&op).unwrap() {
            let form = localize(&op, &s);
            let sols = frobenius_basis(&form, &s, op.order(), 20).unwrap();
            assert_eq!(sols.len(), op.order());
            for sol in &sols {
                assert_eq!(sol.coeffs.len(), 20);
                assert!(residual_vanishes(&form, sol), "{name} at {}", s.label());
            }
        }
    }
}

#[test]
fn conjugate_roots_agree() {
    let mut checked = 0;
    for name in ["Q4", "MW4_1", "MW4_6"] {
        let op = operator(name);
        for s in monodromy::singular_points(&op).unwrap() {
            if let Some(ok) = galois_spot_check(&op, &s).unwrap() {
                assert!(ok, "{name} at {}", s.label());
                checked += 1;
            }
        }
    }
    assert!(checked >= 2);
}
