mod common;

use common::{nil, specs};
use nilsymp::chevbasis::build_structure_table;
use nilsymp::cohom::{mj_decomposition, Filtration};
use nilsymp::kostant::h2_hwv;
use nilsymp::nilrad::{build_nilradical, is_abelian_nilradical, ParabolicSpec};
use nilsymp::obstruct::{central_hwv_check, dim_bound_check, prop44_classify, pt_obstruction_trivial_g, Obstruction};
use nilsymp::rootsys::build_root_system;
use nilsymp::symp::{decide, DecideOptions, Target};

#[test]
fn three_formulations_agree_up_to_rank_6() {
    let mut nonabelian = 0;
    for spec in specs(6, &[1, 2]) {
        let rs = build_root_system(spec.ty());
        if is_abelian_nilradical(&spec, &rs) {
            continue;
        }
        nonabelian += 1;
        let st = build_structure_table(&rs);
        let n = build_nilradical(&spec, &st);
        let k = n.k() as i32;
        let passes = central_hwv_check(&spec, &rs).unwrap().is_none();
        let matched = prop44_classify(&spec, &rs).unwrap().is_some();
        let top = h2_hwv(&spec, &st).into_iter().filter(|e| e.grade_of_partner == k).collect::<Vec<_>>();
        assert_eq!(passes, matched, "{}", spec.key());
        assert_eq!(passes, !top.is_empty(), "{}", spec.key());
        // a top-grade partner is exactly a representative seen by P_1
        let dec = mj_decomposition(&n, &Filtration::lower_central(&n));
        for e in &top {
            assert!(!dec.project(&e.rep_form, 1).unwrap().is_zero(), "{}", spec.key());
        }
    }
    assert!(nonabelian > 100);
}

#[test]
fn three_simple_roots_always_obstructed() {
    for spec in specs(5, &[3]) {
        let rs = build_root_system(spec.ty());
        assert!(prop44_classify(&spec, &rs).unwrap().is_none(), "{}", spec.key());
        assert!(
            matches!(central_hwv_check(&spec, &rs).unwrap(), Some(Obstruction::NoCentralHwv { .. })),
            "{}",
            spec.key()
        );
    }
}

#[test]
fn three_simple_roots_small_cases_not_symplectic() {
    // independent of the combinatorics: run the full decision
    for spec in specs(4, &[3]) {
        let n = build_nilradical(&spec, &build_structure_table(&build_root_system(spec.ty())));
        if n.dim() > 12 {
            continue;
        }
        for t in [Target::N, Target::Ext] {
            let v = decide(&n, t, &DecideOptions::for_algebra(&n, t));
            assert!(!v.is_symplectic(), "{} {t}", spec.key());
        }
    }
}

#[test]
fn dimension_bound_for_b_and_c_singletons() {
    for r in 2..=8 {
        let b = nil(&format!("B{r}"), &r.to_string());
        assert_eq!(dim_bound_check(&b).is_some(), r >= 4, "B{r}");
    }
    for r in 3..=8 {
        let c = nil(&format!("C{r}"), &(r - 1).to_string());
        assert_eq!(dim_bound_check(&c).is_some(), r >= 5, "C{r}");
    }
}

#[test]
fn dimension_bound_uses_both_series() {
    let n = nil("B4", "4");
    match dim_bound_check(&n).unwrap() {
        Obstruction::DimBound { dim_upper, dim_lower, dim, .. } => {
            assert_eq!((dim_upper + dim_lower, dim), (12, 10));
        }
        o => panic!("{o:?}"),
    }
}

#[test]
fn pt_condition_holds_for_t1() {
    // with t = 1 the dimension condition is automatic, so only vanishing matters
    for (ty, pi0) in [("A2", "1,2"), ("G2", "1"), ("B3", "3"), ("C3", "2"), ("A4", "1,2")] {
        let n = nil(ty, pi0);
        assert!(pt_obstruction_trivial_g(&n, 1).unwrap().is_none(), "{ty}:{pi0}");
    }
    // orthogonal pair: no top-grade class survives P_1
    let n = nil("A4", "1,3");
    assert!(matches!(pt_obstruction_trivial_g(&n, 1).unwrap(), Some(Obstruction::PtVanishes { t: 1, .. })));
    let spec = ParabolicSpec::parse("C3", "2,3").unwrap();
    let n = build_nilradical(&spec, &build_structure_table(&build_root_system(spec.ty())));
    assert!(matches!(
        pt_obstruction_trivial_g(&n, 2).unwrap(),
        Some(Obstruction::PtVanishes { t: 2, dim_sum: 10, dim: 8, .. })
    ));
}
