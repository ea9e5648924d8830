mod common;

use common::{fixtures, nil};
use nilsymp::cohom::{extend_filtration, is_accurate, Filtration};
use nilsymp::fixtures::heisenberg_plus_line;
use nilsymp::linalg::Subspace;
use nilsymp::Error;

#[test]
fn lower_central_series_always_accurate() {
    for (name, n) in fixtures(12) {
        if n.is_abelian() {
            continue;
        }
        assert!(is_accurate(&n, &Filtration::lower_central(&n)).unwrap(), "{name}");
    }
}

#[test]
fn abelian_flags_with_a_line() {
    for (ty, pi0) in [("A2", "1"), ("A3", "2"), ("C3", "3"), ("B3", "1")] {
        let a = nil(ty, pi0);
        let d = a.dim();
        for i in 0..d {
            let chain = vec![Subspace::full(d), Subspace::coordinate(d, &[i]), Subspace::zero(d)];
            assert!(is_accurate(&a, &Filtration::new(&a, chain).unwrap()).unwrap(), "{ty}:{pi0} line {i}");
        }
    }
}

#[test]
fn central_line_chain_on_heisenberg_plus_line() {
    let n = heisenberg_plus_line();
    let z_t = Subspace::coordinate(4, &[2, 3]);
    let t = Subspace::coordinate(4, &[3]);
    let f = Filtration::new(&n, vec![Subspace::full(4), z_t, t, Subspace::zero(4)]).unwrap();
    assert!(is_accurate(&n, &f).unwrap());
}

#[test]
fn extension_rule_output_is_accurate() {
    for (ty, pi0) in [("G2", "1"), ("A2", "1,2"), ("C3", "2,3"), ("B2", "1,2"), ("A4", "2,3"), ("C3", "2")] {
        let n = nil(ty, pi0);
        let f = Filtration::lower_central(&n);
        for t in 1..=f.k().div_ceil(2) {
            let (e, fe) = extend_filtration(&n, &f, t).unwrap();
            assert_eq!(e.dim(), n.dim() + 1);
            assert_eq!(fe.k(), f.k());
            assert!(is_accurate(&e, &fe).unwrap(), "{ty}:{pi0} t={t}");
        }
        let too_big = f.k().div_ceil(2) + 1;
        assert!(matches!(extend_filtration(&n, &f, too_big), Err(Error::BadT { .. })));
    }
}

#[test]
fn extension_rule_rejects_abelian_input() {
    let a = nil("A4", "2");
    assert!(matches!(extend_filtration(&a, &Filtration::lower_central(&a), 1), Err(Error::NotApplicable(_))));
}
