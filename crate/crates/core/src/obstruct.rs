//! Non-existence criteria for symplectic structures on `n` and `R ⊕ n`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohom::{mj_decomposition, Complex, Filtration};
use crate::error::{Error, Result};
use crate::nilrad::{is_abelian_nilradical, NilAlgebra, ParabolicSpec};
use crate::rootsys::{build_root_system, RootSystem, RootVec, SimpleType};

/// Evidence that neither `n` nor `R ⊕ n` is symplectic. Simple root
/// indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Obstruction {
    /// `dim c_j + dim c^j > dim n`.
    DimBound { j: usize, dim_upper: usize, dim_lower: usize, dim: usize },
    /// `dim c^{k-t} + dim c^{t-1} > dim n` and `P_t` kills every closed form.
    PtVanishes { t: usize, dim_sum: usize, dim: usize, closed_dim: usize },
    /// No `α ∈ Π₀`, `β ∈ Π` with `(β, α) < 0` and `s_α(β)` central.
    NoCentralHwv { pi0: Vec<usize> },
    /// Neither case of the two-root classification holds.
    Prop44Fail { pi0: Vec<usize> },
}

impl Obstruction {
    pub fn kind(&self) -> &'static str {
        match self {
            Obstruction::DimBound { .. } => "DimBound",
            Obstruction::PtVanishes { .. } => "PtVanishes",
            Obstruction::NoCentralHwv { .. } => "NoCentralHwv",
            Obstruction::Prop44Fail { .. } => "Prop44Fail",
        }
    }

    pub fn summary(&self) -> String {
        match self {
            Obstruction::DimBound { j, dim_upper, dim_lower, dim } => {
                format!("dim c_{j} + dim c^{j} = {dim_upper} + {dim_lower} > {dim}")
            }
            Obstruction::PtVanishes { t, dim_sum, dim, .. } => {
                format!("P_{t} vanishes on closed forms (dimension sum {dim_sum} > {dim})")
            }
            Obstruction::NoCentralHwv { pi0 } => {
                format!("no highest weight vector with central partner for pi0 {pi0:?}")
            }
            Obstruction::Prop44Fail { pi0 } => format!("pi0 {pi0:?} fails the coordinate conditions"),
        }
    }
}

/// First `j` with `dim c_j + dim c^j > dim n`.
pub fn dim_bound_check(n: &NilAlgebra) -> Option<Obstruction> {
    let lower = n.lower_central_series();
    let upper = n.upper_central_series();
    let d = n.dim();
    (0..lower.len().min(upper.len())).find_map(|j| {
        let (u, l) = (upper[j].dim(), lower[j].dim());
        (u + l > d).then_some(Obstruction::DimBound { j, dim_upper: u, dim_lower: l, dim: d })
    })
}

/// The `P_t` criterion with trivial reductive part, on the lower central
/// series filtration.
pub fn pt_obstruction_trivial_g(n: &NilAlgebra, t: usize) -> Result<Option<Obstruction>> {
    pt_obstruction_with(n, t, &Complex::new(n).closed_2form_basis())
}

pub(crate) fn pt_obstruction_with(
    n: &NilAlgebra,
    t: usize,
    closed: &[crate::cohom::ExtForm],
) -> Result<Option<Obstruction>> {
    if n.is_abelian() {
        return Err(Error::AbelianInput);
    }
    let f = Filtration::lower_central(n);
    let k = f.k();
    let max = k.div_ceil(2);
    if t == 0 || t > max {
        return Err(Error::BadT { t, max });
    }
    let dim_sum = f.term(k - t).dim() + f.term(t - 1).dim();
    if dim_sum <= n.dim() {
        return Ok(None);
    }
    let dec = mj_decomposition(n, &f);
    for w in closed {
        if !dec.project(w, t)?.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(Obstruction::PtVanishes { t, dim_sum, dim: n.dim(), closed_dim: closed.len() }))
}

fn one_based(pi0: &[usize]) -> Vec<usize> {
    pi0.iter().map(|i| i + 1).collect()
}

/// `α ∈ Π₀` and `β ∈ Π` (0-based) with `(β, α) < 0` and `s_α(β)` in the
/// top grade.
pub fn central_hwv_pair(spec: &ParabolicSpec, rs: &RootSystem) -> Option<(usize, usize)> {
    let top = rs.max_root();
    let n = rs.rank();
    for &a in spec.pi0() {
        for b in 0..n {
            if b == a || rs.cartan()[a][b] >= 0 {
                continue;
            }
            let s = rs.reflect(&RootVec::simple(n, b), a).unwrap();
            if spec.pi0().iter().all(|&x| s.coord(x) == top.coord(x)) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn central_hwv_check(spec: &ParabolicSpec, rs: &RootSystem) -> Result<Option<Obstruction>> {
    if is_abelian_nilradical(spec, rs) {
        return Err(Error::AbelianInput);
    }
    Ok(match central_hwv_pair(spec, rs) {
        Some(_) => None,
        None => Some(Obstruction::NoCentralHwv { pi0: one_based(spec.pi0()) }),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Prop44Case {
    /// `Π₀ = {α}` and `coord_α(γ_max) = -2(β,α)/|α|²`.
    Single,
    /// `Π₀ = {α, β}`, `coord_β(γ_max) = 1` and the same identity.
    Pair,
}

/// A match of the coordinate conditions, 0-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop44Match {
    pub case: Prop44Case,
    pub alpha: usize,
    pub beta: usize,
}

pub fn prop44_classify(spec: &ParabolicSpec, rs: &RootSystem) -> Result<Option<Prop44Match>> {
    if is_abelian_nilradical(spec, rs) {
        return Err(Error::AbelianInput);
    }
    let top = rs.max_root();
    let n = rs.rank();
    // -2(β,α)/|α|² is minus the Cartan integer <β, α^∨>
    let ident = |a: usize, b: usize| top.coord(a) == -rs.cartan()[a][b];
    Ok(match spec.pi0() {
        [a] => (0..n).find(|&b| b != *a && ident(*a, b)).map(|b| Prop44Match {
            case: Prop44Case::Single,
            alpha: *a,
            beta: b,
        }),
        [x, y] => [(*x, *y), (*y, *x)]
            .into_iter()
            .find(|&(a, b)| top.coord(b) == 1 && ident(a, b))
            .map(|(a, b)| Prop44Match { case: Prop44Case::Pair, alpha: a, beta: b }),
        _ => None,
    })
}

/// Abelian, or nonabelian and matching the coordinate conditions.
pub fn is_table1_member(spec: &ParabolicSpec, rs: &RootSystem) -> bool {
    is_abelian_nilradical(spec, rs) || matches!(prop44_classify(spec, rs), Ok(Some(_)))
}

/// Members per type, as 1-based sorted index lists.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub singletons: Vec<Vec<usize>>,
    pub pairs: Vec<Vec<usize>>,
}

pub type Table1 = BTreeMap<String, Table1Row>;

pub fn table1_survey(max_rank: usize) -> Table1 {
    SimpleType::enumerate(max_rank)
        .into_par_iter()
        .map(|ty| {
            let rs = build_root_system(ty);
            let mut row = Table1Row::default();
            for spec in ParabolicSpec::enumerate(ty, &[1, 2]) {
                if is_table1_member(&spec, &rs) {
                    let v = spec.pi0_one_based();
                    if v.len() == 1 {
                        row.singletons.push(v);
                    } else {
                        row.pairs.push(v);
                    }
                }
            }
            (ty.to_string(), row)
        })
        .collect()
}

/// Independent cross-check: a `P_t` value from the generic projection.
pub fn pt_image_dim(n: &NilAlgebra, t: usize) -> Result<usize> {
    let f = Filtration::lower_central(n);
    let dec = mj_decomposition(n, &f);
    let cx = Complex::new(n);
    let mut imgs = Vec::new();
    for w in cx.closed_2form_basis() {
        imgs.push(dec.project(&w, t)?);
    }
    Ok(crate::cohom::forms_to_subspace(n.dim(), &imgs).dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevbasis::build_structure_table;
    use crate::nilrad::build_nilradical;

    fn setup(ty: &str, pi0: &str) -> (ParabolicSpec, RootSystem, NilAlgebra) {
        let spec = ParabolicSpec::parse(ty, pi0).unwrap();
        let rs = build_root_system(spec.ty());
        let n = build_nilradical(&spec, &build_structure_table(&rs));
        (spec, rs, n)
    }

    #[test]
    fn dim_bound_examples() {
        let (_, _, b4) = setup("B4", "4");
        assert!(matches!(
            dim_bound_check(&b4),
            Some(Obstruction::DimBound { dim_upper: 6, dim_lower: 6, dim: 10, .. })
        ));
        let (_, _, c5) = setup("C5", "4");
        assert!(matches!(
            dim_bound_check(&c5),
            Some(Obstruction::DimBound { j: 1, dim_upper: 10, dim_lower: 10, dim: 18 })
        ));
        let (_, _, h) = setup("A2", "1,2");
        assert_eq!(dim_bound_check(&h), None);
    }

    #[test]
    fn pt_examples() {
        let (_, _, h) = setup("A2", "1,2");
        assert_eq!(pt_obstruction_trivial_g(&h, 1).unwrap(), None);
        let (_, _, c3) = setup("C3", "2,3");
        assert!(matches!(
            pt_obstruction_trivial_g(&c3, 2).unwrap(),
            Some(Obstruction::PtVanishes { t: 2, dim_sum: 10, dim: 8, .. })
        ));
        assert!(matches!(pt_obstruction_trivial_g(&c3, 3), Err(Error::BadT { .. })));
        let (_, _, a) = setup("A3", "2");
        assert_eq!(pt_obstruction_trivial_g(&a, 1), Err(Error::AbelianInput));
    }

    #[test]
    fn central_hwv_examples() {
        let (spec, rs, _) = setup("G2", "1");
        assert_eq!(central_hwv_check(&spec, &rs).unwrap(), None);
        for ty in ["F4", "E8"] {
            let rs = build_root_system(ty.parse().unwrap());
            for spec in ParabolicSpec::enumerate(rs.ty(), &[1, 2]) {
                assert!(central_hwv_check(&spec, &rs).unwrap().is_some(), "{}", spec.key());
            }
        }
        let (spec, rs, _) = setup("A3", "2");
        assert_eq!(central_hwv_check(&spec, &rs), Err(Error::AbelianInput));
    }

    #[test]
    fn prop44_examples() {
        let (spec, rs, _) = setup("B2", "2");
        assert_eq!(
            prop44_classify(&spec, &rs).unwrap(),
            Some(Prop44Match { case: Prop44Case::Single, alpha: 1, beta: 0 })
        );
        for n in 3..=6 {
            let ty = format!("C{n}");
            let (spec, rs, _) = setup(&ty, &format!("{},{}", n - 1, n));
            let m = prop44_classify(&spec, &rs).unwrap().unwrap();
            assert_eq!((m.case, m.alpha, m.beta), (Prop44Case::Pair, n - 2, n - 1));
        }
        let (spec, rs, _) = setup("A5", "2,4");
        assert_eq!(prop44_classify(&spec, &rs).unwrap(), None);
        let (spec, rs, _) = setup("A5", "1,2,3");
        assert_eq!(prop44_classify(&spec, &rs).unwrap(), None);
    }

    #[test]
    fn survey_rows() {
        let t = table1_survey(8);
        assert_eq!(t["E7"].singletons, vec![vec![7]]);
        assert!(t["E8"].singletons.is_empty() && t["E8"].pairs.is_empty());
        assert_eq!(t["D6"].singletons, vec![vec![1], vec![5], vec![6]]);
        assert_eq!(t["B2"].pairs, vec![vec![1, 2]]);
        assert!(t["B3"].pairs.is_empty());
    }
}
