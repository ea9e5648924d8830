mod common;

use common::{nil_resigned, specs};
use nilsymp::chevbasis::build_structure_table;
use nilsymp::nilrad::{build_nilradical, ingest_algebra};
use nilsymp::obstruct::{dim_bound_check, is_table1_member};
use nilsymp::rootsys::build_root_system;
use nilsymp::symp::{decide, extend_trivially, verify_symplectic, DecideOptions, Target};
use nilsymp::Error;

#[test]
fn verdicts_survive_permutation_and_resigning() {
    for spec in specs(5, &[1, 2]) {
        let rs = build_root_system(spec.ty());
        if !is_table1_member(&spec, &rs) {
            continue;
        }
        let n = build_nilradical(&spec, &build_structure_table(&rs));
        if n.dim() > 16 {
            continue;
        }
        let perm: Vec<usize> = (0..n.dim()).rev().collect();
        let variants = [n.permuted(&perm), nil_resigned(&spec, 17)];
        for t in [Target::N, Target::Ext] {
            let base = decide(&n, t, &DecideOptions::for_algebra(&n, t));
            if base.is_symplectic() {
                assert!(dim_bound_check(&n).is_none(), "{}", spec.key());
            }
            for v in &variants {
                let other = decide(v, t, &DecideOptions { samples: 64, seed: 99 });
                assert_eq!(base.kind(), other.kind(), "{} {t}", spec.key());
                if let Some(w) = other.witness() {
                    let tgt = if t == Target::N { v.clone() } else { extend_trivially(v) };
                    assert!(verify_symplectic(&tgt, w).unwrap());
                }
            }
        }
    }
}

const H3: &str = r#"{"labels": ["X", "Y", "Z"], "dim": 3, "k": 2, "grading": [1, 1, 2], "brackets": [[0, 1, "1", 2]]}"#;

#[test]
fn ingest_heisenberg() {
    let n = ingest_algebra(H3).unwrap();
    assert_eq!((n.dim(), n.k()), (3, 2));
}

#[test]
fn ingest_heisenberg_plus_line() {
    let json = r#"{"labels": ["X", "Y", "Z", "T"], "dim": 4, "k": 2, "brackets": [[0, 1, "1", 2], [1, 0, "-1", 2]]}"#;
    let n = ingest_algebra(json).unwrap();
    assert_eq!(n.dim(), 4);
    assert!(decide(&n, Target::N, &DecideOptions::for_algebra(&n, Target::N)).is_symplectic());
}

#[test]
fn ingest_rejects_sl2() {
    let json = r#"{"labels": ["E", "F", "H"], "dim": 3, "k": 1,
        "brackets": [[0, 1, "1", 2], [2, 0, "2", 0], [2, 1, "-2", 1]]}"#;
    assert!(matches!(ingest_algebra(json), Err(Error::NotNilpotent)));
}

#[test]
fn ingest_rejects_jacobi_failure() {
    // [X,Y]=Z, [Y,Z]=W, [X,W]=V gives J(X,Y,Z) = V
    let json = r#"{"labels": ["X", "Y", "Z", "W", "V"], "dim": 5, "k": 4,
        "brackets": [[0, 1, "1", 2], [1, 2, "1", 3], [0, 3, "1", 4]]}"#;
    assert!(matches!(ingest_algebra(json), Err(Error::JacobiFail(..))));
}

#[test]
fn ingest_rejects_bad_schema() {
    let json = r#"{"labels": ["X"], "dim": 2, "k": 1, "brackets": []}"#;
    assert!(matches!(ingest_algebra(json), Err(Error::SchemaError(_))));
    let json = r#"{"labels": ["X", "Y", "Z"], "dim": 3, "k": 2, "brackets": [[0, 1, "1", 2], [1, 0, "1", 2]]}"#;
    assert!(matches!(ingest_algebra(json), Err(Error::SchemaError(_))));
    assert!(ingest_algebra("not json").is_err());
}

#[test]
fn ingest_round_trips_nilradicals() {
    for spec in specs(4, &[1, 2]) {
        let n = build_nilradical(&spec, &build_structure_table(&build_root_system(spec.ty())));
        let back = ingest_algebra(&n.to_json().to_string()).unwrap();
        assert_eq!(back.dim(), n.dim());
        assert_eq!(back.k(), n.k());
        assert_eq!(back.triples(), n.triples(), "{}", spec.key());
    }
}
