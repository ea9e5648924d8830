//! Small algebras given by generators and relations, with the explicit
//! 2-forms quoted for them, for tests and the command line.

use std::collections::BTreeMap;

use crate::cohom::ExtForm;
use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use crate::nilrad::NilAlgebra;
use crate::symp::extend_trivially;

/// How `[X_i, Y_j]` and `[X_j, Y_i]` relate in the `X, Y, Z` families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// `[X_i, Y_j] = [X_j, Y_i] = Z_ij`, `i ≤ j`.
    Symmetric,
    /// `[X_i, Y_j] = -[X_j, Y_i] = Z_ij`, `i < j`.
    Alternating,
    /// `[X_i, Y_j] = Z_ij` for all `i, j`.
    Full,
}

/// Basis `X_1..X_m, Y_1..Y_m` followed by the `Z` elements in
/// lexicographic order of their index pairs.
pub fn xyz_algebra(m: usize, kind: Pairing) -> NilAlgebra {
    let mut labels: Vec<String> = (1..=m).map(|i| format!("X{i}")).collect();
    labels.extend((1..=m).map(|i| format!("Y{i}")));
    let mut z: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for i in 1..=m {
        for j in 1..=m {
            let keep = match kind {
                Pairing::Symmetric => i <= j,
                Pairing::Alternating => i < j,
                Pairing::Full => true,
            };
            if keep {
                z.insert((i, j), labels.len());
                labels.push(format!("Z{i}{j}"));
            }
        }
    }
    let x = |i: usize| i - 1;
    let y = |i: usize| m + i - 1;
    let mut br: Vec<(usize, usize, Q, usize)> = Vec::new();
    for (&(i, j), &k) in &z {
        br.push((x(i), y(j), q(1), k));
        match kind {
            Pairing::Symmetric if i != j => br.push((x(j), y(i), q(1), k)),
            Pairing::Alternating => br.push((x(j), y(i), q(-1), k)),
            _ => {}
        }
    }
    let grading = (0..labels.len()).map(|i| if i < 2 * m { 1 } else { 2 }).collect();
    NilAlgebra::from_parts(labels, Some(grading), &br, None).expect("valid two-step algebra")
}

/// `R U1 ⊕ n` with the new generator labelled `U1`.
pub fn with_u(n: &NilAlgebra) -> NilAlgebra {
    n.extend_trivially_graded("U1", 1)
}

/// `Σ a ∧ b` over labelled pairs of dual basis elements.
pub fn form_from_labels(n: &NilAlgebra, pairs: &[(&str, &str)]) -> Result<ExtForm> {
    let pos = |s: &str| {
        n.labels().iter().position(|l| l == s).ok_or_else(|| Error::SchemaError(format!("no basis element {s}")))
    };
    let mut f = ExtForm::zero(2);
    for (a, b) in pairs {
        f.add_term(&[pos(a)?, pos(b)?], q(1));
    }
    Ok(f)
}

/// Heisenberg algebra `[X, Y] = Z`.
pub fn heisenberg() -> NilAlgebra {
    NilAlgebra::from_parts(vec!["X".into(), "Y".into(), "Z".into()], Some(vec![1, 1, 2]), &[(0, 1, q(1), 2)], None)
        .expect("valid")
}

/// `R T ⊕ <X, Y, Z>` with `[X, Y] = Z`, `T` last.
pub fn heisenberg_plus_line() -> NilAlgebra {
    extend_trivially(&heisenberg())
}

/// A quoted witness: the algebra it lives on and the form as printed.
pub struct QuotedForm {
    pub name: &'static str,
    pub algebra: NilAlgebra,
    pub form: ExtForm,
}

/// `C3`, `Π₀ = {γ2}` on `R ⊕ n`.
pub fn c3_ext_form() -> QuotedForm {
    let a = with_u(&xyz_algebra(2, Pairing::Symmetric));
    let form = form_from_labels(&a, &[("Z12", "X1"), ("Z11", "X2"), ("Z22", "Y2"), ("U1", "Y1")]).unwrap();
    QuotedForm { name: "C3 singleton on R+n", algebra: a, form }
}

/// `C4`, `Π₀ = {γ3}` on `n`, as printed.
pub fn c4_form() -> QuotedForm {
    let a = xyz_algebra(3, Pairing::Symmetric);
    let pairs = [("Z12", "X3"), ("Z13", "X2"), ("Z23", "X1"), ("Z11", "Y1"), ("Z22", "Y3"), ("Z33", "Y2")];
    let form = form_from_labels(&a, &pairs).unwrap();
    QuotedForm { name: "C4 singleton on n", algebra: a, form }
}

/// The `C4` form with the last two `Y` indices matched to their `Z`.
pub fn c4_form_corrected() -> QuotedForm {
    let a = xyz_algebra(3, Pairing::Symmetric);
    let pairs = [("Z12", "X3"), ("Z13", "X2"), ("Z23", "X1"), ("Z11", "Y1"), ("Z22", "Y2"), ("Z33", "Y3")];
    let form = form_from_labels(&a, &pairs).unwrap();
    QuotedForm { name: "C4 singleton on n, Y indices matched", algebra: a, form }
}

/// `D4`, `Π₀ = {γ3, γ4}` on `R ⊕ n`.
pub fn d4_ext_form() -> QuotedForm {
    let a = with_u(&xyz_algebra(3, Pairing::Alternating));
    let pairs = [("Z12", "X3"), ("Z13", "X2"), ("Z23", "X1"), ("Y1", "Y2"), ("Y3", "U1")];
    let form = form_from_labels(&a, &pairs).unwrap();
    QuotedForm { name: "D4 pair on R+n", algebra: a, form }
}

/// `A4`, `Π₀ = {γ2, γ3}` on `n`, as printed.
pub fn a4_pair_form() -> QuotedForm {
    let a = xyz_algebra(2, Pairing::Full);
    let pairs = [("Z11", "X1"), ("Z22", "Y2"), ("Z12", "X1"), ("Z21", "X2")];
    let form = form_from_labels(&a, &pairs).unwrap();
    QuotedForm { name: "A4 pair on n", algebra: a, form }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevbasis::build_structure_table;
    use crate::nilrad::{build_nilradical, ParabolicSpec};
    use crate::rootsys::build_root_system;

    #[test]
    fn shapes() {
        assert_eq!(xyz_algebra(2, Pairing::Symmetric).dim(), 7);
        assert_eq!(xyz_algebra(3, Pairing::Symmetric).dim(), 12);
        assert_eq!(xyz_algebra(3, Pairing::Alternating).dim(), 9);
        assert_eq!(xyz_algebra(2, Pairing::Full).dim(), 8);
        assert_eq!(heisenberg_plus_line().dim(), 4);
    }

    /// Cheap invariants: central series and closed 2-form dimensions.
    fn matches_nilradical(fixture: &NilAlgebra, ty: &str, pi0: &str) -> bool {
        let spec = ParabolicSpec::parse(ty, pi0).unwrap();
        let n = build_nilradical(&spec, &build_structure_table(&build_root_system(spec.ty())));
        if n.dim() != fixture.dim() {
            return false;
        }
        let cx = |a: &NilAlgebra| crate::cohom::Complex::new(a).closed_2forms().dim();
        let ser = |a: &NilAlgebra| a.lower_central_series().iter().map(|s| s.dim()).collect::<Vec<_>>();
        ser(&n) == ser(fixture) && cx(&n) == cx(fixture)
    }

    #[test]
    fn fixtures_resemble_nilradicals() {
        assert!(matches_nilradical(&xyz_algebra(2, Pairing::Symmetric), "C3", "2"));
        assert!(matches_nilradical(&xyz_algebra(3, Pairing::Symmetric), "C4", "3"));
        assert!(matches_nilradical(&xyz_algebra(3, Pairing::Alternating), "D4", "3,4"));
        assert!(matches_nilradical(&xyz_algebra(2, Pairing::Full), "A4", "2,3"));
    }
}
