mod common;

use common::{fixtures, nil};
use nilsymp::cohom::{binomial, mj_decomposition, monomials, Complex, ExtForm, Filtration};
use nilsymp::linalg::q;
use nilsymp::symp::extend_trivially;
use proptest::prelude::*;

#[test]
fn d_squared_vanishes() {
    for (name, n) in fixtures(12) {
        let cx = Complex::new(&n);
        for p in 0..n.dim() {
            for m in monomials(n.dim(), p) {
                let dd = cx.d(&cx.d_monomial(&m));
                assert!(dd.is_zero(), "{name}: d(d e^{m:?}) = {}", dd.display(None));
            }
        }
    }
}

#[test]
fn poincare_duality_and_euler_characteristic() {
    for (name, n) in fixtures(12) {
        let b = Complex::new(&n).betti_all().unwrap();
        let d = n.dim();
        assert_eq!(b.len(), d + 1);
        for (p, bp) in b.iter().enumerate() {
            assert_eq!(*bp, b[d - p], "{name}: b{p}");
        }
        let euler: i64 = b.iter().enumerate().map(|(p, &x)| if p % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        assert_eq!(euler, 0, "{name}: betti {b:?}");
        assert_eq!(b[0], 1);
        let c1 = n.lower_central_series()[1].dim();
        assert_eq!(b[1], d - c1, "{name}");
    }
}

#[test]
fn betti_numbers_against_ranks() {
    // b_p = C(d, p) - rank d_p - rank d_{p-1}, computed from the ranks alone
    let n = nil("C3", "2,3");
    let cx = Complex::new(&n);
    let b = cx.betti_all().unwrap();
    for (p, bp) in b.iter().enumerate() {
        let prev = if p == 0 { 0 } else { cx.rank_d(p - 1) };
        assert_eq!(*bp, binomial(n.dim(), p) - cx.rank_d(p) - prev);
    }
    assert_eq!(b, vec![1, 3, 7, 13, 16, 13, 7, 3, 1]);
}

#[test]
fn trivial_extension_adds_b1_to_b2() {
    for (name, n) in fixtures(12) {
        let cx = Complex::new(&n);
        let e = extend_trivially(&n);
        let ce = Complex::new(&e);
        assert_eq!(ce.betti(1), cx.betti(1) + 1, "{name}");
        assert_eq!(ce.betti(2), cx.betti(2) + cx.betti(1), "{name}");
    }
}

#[test]
fn closed_and_exact_forms_sit_in_low_blocks() {
    for (name, n) in fixtures(14) {
        if n.is_abelian() {
            continue;
        }
        let f = Filtration::lower_central(&n);
        let k = f.k();
        let dec = mj_decomposition(&n, &f);
        let cx = Complex::new(&n);
        for w in cx.closed_2form_basis() {
            assert!(dec.block_support(&w).iter().all(|&(i, j)| i + j <= k + 1), "{name}: closed {}", w.display(None));
        }
        for w in cx.exact_2form_basis() {
            assert!(dec.block_support(&w).iter().all(|&(i, j)| i + j <= k), "{name}: exact {}", w.display(None));
        }
    }
}

fn combine(basis: &[ExtForm], coeffs: &[i64], degree: usize) -> ExtForm {
    basis.iter().zip(coeffs).fold(ExtForm::zero(degree), |acc, (b, &c)| acc.add(&b.scale(&q(c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pt_descends_to_cohomology(
        case in prop::sample::select(vec![("C3", "2,3"), ("G2", "1"), ("A3", "1,3"), ("B3", "1,3"), ("A4", "1,2")]),
        a in prop::collection::vec(-9i64..=9, 24),
        f in prop::collection::vec(-9i64..=9, 24),
    ) {
        let n = nil(case.0, case.1);
        let cx = Complex::new(&n);
        let closed = cx.closed_2form_basis();
        let sigma = combine(&closed, &a, 2);
        let f1 = ExtForm::zero(1);
        let f1 = (0..n.dim()).fold(f1, |acc, i| acc.add(&ExtForm::monomial(&[i], q(f[i % f.len()]))));
        let shifted = sigma.add(&cx.d(&f1));
        prop_assert!(cx.d(&shifted).is_zero());
        let filt = Filtration::lower_central(&n);
        let dec = mj_decomposition(&n, &filt);
        for t in 1..=filt.k().div_ceil(2) {
            prop_assert_eq!(dec.project(&sigma, t).unwrap(), dec.project(&shifted, t).unwrap());
        }
    }
}
