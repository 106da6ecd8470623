use periods::TABLE_NAMES;
use qperiod::golden::{golden_operator, monodromy_records, operator_names, period_records, toric_records};
use qperiod::parse_subset;

#[test]
fn corpus_is_complete() {
    assert_eq!(operator_names().count(), 35);
    for name in TABLE_NAMES {
        let p = period_records().iter().filter(|r| r.name == name).count();
        let m = monodromy_records().iter().filter(|r| r.name == name).count();
        assert_eq!((p, m), (1, 1), "{name}");
        let op = golden_operator(name).unwrap();
        let rec = monodromy_records().iter().find(|r| r.name == name).unwrap();
        assert_eq!(op.order(), rec.order, "{name}");
        assert!(op.is_canonical(), "{name}");
    }
    assert_eq!(period_records().len(), 35);
    assert_eq!(monodromy_records().len(), 35);
    assert_eq!(toric_records().len(), 4);
}

#[test]
fn records_cite_provenance() {
    assert!(period_records().iter().all(|r| r.provenance.contains(&r.name)));
    assert!(monodromy_records().iter().all(|r| r.provenance.contains(&r.name)));
    assert!(toric_records().iter().all(|r| r.provenance.contains(&r.name)));
}

#[test]
fn period_rows_start_at_one() {
    for r in period_records() {
        assert_eq!(r.alphas[0].0, 0);
        assert_eq!(r.alphas[0].1, exactnum::int(1), "{}", r.name);
    }
}

#[test]
fn subsets() {
    assert_eq!(parse_subset("").unwrap(), Vec::<String>::new());
    assert_eq!(parse_subset("FI4_1..FI4_6").unwrap().len(), 6);
    assert_eq!(parse_subset("P4, Q4").unwrap(), ["P4", "Q4"]);
    assert_eq!(parse_subset("O4_6..O4_88").unwrap().len(), 4);
    assert!(parse_subset("FI4_6..FI4_1").is_err());
    assert!(parse_subset("X").is_err());
}
