use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::{Complex, ExtForm};
use crate::error::{Error, Result};
use crate::linalg::{q, Subspace, Q};
use crate::nilrad::NilAlgebra;

/// A chain `n = n^0 ⊋ n^1 ⊋ ... ⊋ n^k = 0` with `[n^i, n^j] ⊆ n^{i+j+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    chain: Vec<Subspace>,
}

impl Filtration {
    pub fn new(alg: &NilAlgebra, chain: Vec<Subspace>) -> Result<Self> {
        let d = alg.dim();
        let bad = |m: String| Err(Error::NotAFiltration(m));
        if chain.len() < 2 {
            return bad("needs at least n and 0".into());
        }
        if chain[0].dim() != d || chain.last().unwrap().dim() != 0 {
            return bad("must start at n and end at 0".into());
        }
        for (j, w) in chain.windows(2).enumerate() {
            if !w[1].is_subspace_of(&w[0]) || w[1].dim() == w[0].dim() {
                return bad(format!("term {} does not strictly contain term {}", j, j + 1));
            }
        }
        let k = chain.len() - 1;
        for i in 0..k {
            for j in i..k {
                let target = if i + j + 1 >= k { Subspace::zero(d) } else { chain[i + j + 1].clone() };
                if !alg.bracket_spaces(&chain[i], &chain[j]).is_subspace_of(&target) {
                    return bad(format!("[n^{i}, n^{j}] is not inside n^{}", i + j + 1));
                }
            }
        }
        Ok(Filtration { chain })
    }

    pub fn lower_central(alg: &NilAlgebra) -> Self {
        Filtration { chain: alg.lower_central_series() }
    }

    /// Length `k` (number of nonzero terms).
    pub fn k(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn chain(&self) -> &[Subspace] {
        &self.chain
    }

    pub fn term(&self, j: usize) -> Subspace {
        match self.chain.get(j) {
            Some(s) => s.clone(),
            None => Subspace::zero(self.chain[0].ambient()),
        }
    }
}

/// A basis `v_a` of `n` adapted to a filtration, its dual basis `f^a`, and
/// the level `j` with `v_a ∈ n^j \ n^{j+1}`; `f^a` spans part of `m_{j+1}`.
#[derive(Debug, Clone)]
pub struct MjDecomposition {
    pub k: usize,
    pub basis: Vec<Vec<Q>>,
    pub dual: Vec<Vec<Q>>,
    pub level: Vec<usize>,
    standard: bool,
}

/// Splits `n*` as `m_1 ⊕ ... ⊕ m_k` with `m_1 ⊕ ... ⊕ m_j = ann(n^j)`.
/// Standard basis vectors are preferred so that coordinate filtrations give
/// the standard dual basis.
pub fn mj_decomposition(alg: &NilAlgebra, f: &Filtration) -> MjDecomposition {
    let d = alg.dim();
    let k = f.k();
    let mut basis: Vec<Vec<Q>> = Vec::new();
    let mut level = Vec::new();
    let mut span = Subspace::zero(d);
    for j in (0..k).rev() {
        let target = &f.chain[j];
        let units = (0..d).map(|i| {
            let mut e = vec![Q::zero(); d];
            e[i] = Q::one();
            e
        });
        for v in units.chain(target.basis().iter().cloned()) {
            if span.dim() == target.dim() {
                break;
            }
            if target.contains(&v) && !span.contains(&v) {
                span = span.sum(&Subspace::span(d, std::slice::from_ref(&v)));
                basis.push(v);
                level.push(j);
            }
        }
    }
    // order by position of the leading coordinate so the standard case is the identity
    let mut order: Vec<usize> = (0..d).collect();
    let lead = |v: &Vec<Q>| v.iter().position(|x| !x.is_zero()).unwrap();
    order.sort_by_key(|&a| lead(&basis[a]));
    let basis: Vec<Vec<Q>> = order.iter().map(|&a| basis[a].clone()).collect();
    let level: Vec<usize> = order.iter().map(|&a| level[a]).collect();
    let standard = basis
        .iter()
        .enumerate()
        .all(|(a, v)| v.iter().enumerate().all(|(i, x)| if i == a { x.is_one() } else { x.is_zero() }));
    let dual = if standard { basis.clone() } else { invert_columns(&basis) };
    MjDecomposition { k, basis, dual, level, standard }
}

/// Rows of the inverse of the matrix whose columns are `cols`.
fn invert_columns(cols: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let d = cols.len();
    // solve V F^T = I through the augmented rows of V^T
    let mut rows: Vec<Vec<Q>> = (0..d)
        .map(|a| {
            let mut r = cols[a].clone();
            r.extend((0..d).map(|b| if a == b { q(1) } else { Q::zero() }));
            r
        })
        .collect();
    let red = crate::linalg::rref(&rows, 2 * d);
    rows = red.rows;
    assert_eq!(rows.len(), d, "adapted basis is not a basis");
    // rref of [V^T | I] is [I | (V^T)^{-1}]; row a of F is column a of V^{-T}
    (0..d).map(|a| (0..d).map(|i| rows[i][d + a].clone()).collect()).collect()
}

impl MjDecomposition {
    /// `ω(v_a, v_b)` for the adapted basis.
    fn adapted_matrix(&self, form: &ExtForm) -> Vec<Vec<Q>> {
        let d = self.basis.len();
        let m = form.to_matrix(d);
        if self.standard {
            return m;
        }
        let mv: Vec<Vec<Q>> =
            (0..d).map(|i| (0..d).map(|b| (0..d).map(|x| &m[i][x] * &self.basis[b][x]).sum()).collect()).collect();
        (0..d).map(|a| (0..d).map(|b| (0..d).map(|i| &self.basis[a][i] * &mv[i][b]).sum()).collect()).collect()
    }

    /// Blocks `(i, j)`, `i ≤ j`, with `ω` having a nonzero `m_i ∧ m_j`
    /// component.
    pub fn block_support(&self, form: &ExtForm) -> BTreeSet<(usize, usize)> {
        let m = self.adapted_matrix(form);
        let d = m.len();
        let mut out = BTreeSet::new();
        for a in 0..d {
            for b in a + 1..d {
                if !m[a][b].is_zero() {
                    let (i, j) = (self.level[a] + 1, self.level[b] + 1);
                    out.insert((i.min(j), i.max(j)));
                }
            }
        }
        out
    }

    /// Keeps the components of `ω` in the listed blocks.
    pub fn keep_blocks(&self, form: &ExtForm, keep: impl Fn(usize, usize) -> bool) -> ExtForm {
        let m = self.adapted_matrix(form);
        let d = m.len();
        let mut w = vec![vec![Q::zero(); d]; d];
        for a in 0..d {
            for b in 0..d {
                if a != b && keep(self.level[a] + 1, self.level[b] + 1) {
                    w[a][b] = m[a][b].clone();
                }
            }
        }
        if self.standard {
            return ExtForm::from_matrix(&w);
        }
        // back to standard coordinates: F^T W F
        let f = &self.dual;
        let wf: Vec<Vec<Q>> =
            (0..d).map(|a| (0..d).map(|y| (0..d).map(|b| &w[a][b] * &f[b][y]).sum()).collect()).collect();
        let out: Vec<Vec<Q>> =
            (0..d).map(|x| (0..d).map(|y| (0..d).map(|a| &f[a][x] * &wf[a][y]).sum()).collect()).collect();
        ExtForm::from_matrix(&out)
    }

    /// `P_t`: the `m_t ∧ m_{k-t+1}` component.
    pub fn project(&self, form: &ExtForm, t: usize) -> Result<ExtForm> {
        let max = self.k.div_ceil(2);
        if t == 0 || t > max {
            return Err(Error::BadT { t, max });
        }
        let s = self.k - t + 1;
        Ok(self.keep_blocks(form, |i, j| (i == t && j == s) || (i == s && j == t)))
    }
}

pub fn project_pt(dec: &MjDecomposition, form: &ExtForm, t: usize) -> Result<ExtForm> {
    dec.project(form, t)
}

/// Exact forms vanish on `n^i × n^j` for `i + j ≥ k - 1`, closed forms for
/// `i + j ≥ k`.
pub fn is_accurate(alg: &NilAlgebra, f: &Filtration) -> Result<bool> {
    let f = Filtration::new(alg, f.chain.clone())?;
    let cx = Complex::new(alg);
    let k = f.k();
    let vanish = |forms: &[ExtForm], total: usize| -> bool {
        (0..=total).all(|i| {
            let (a, b) = (f.term(i), f.term(total - i));
            forms
                .iter()
                .all(|w| a.basis().iter().all(|u| b.basis().iter().all(|v| w.eval(&[u.clone(), v.clone()]).is_zero())))
        })
    };
    Ok(vanish(&cx.exact_2form_basis(), k.saturating_sub(1)) && vanish(&cx.closed_2form_basis(), k))
}

/// Adjoins a central `T` and the chain `R T ⊕ n^j` (`j ≤ t`), `n^j` (`j > t`).
pub fn extend_filtration(alg: &NilAlgebra, f: &Filtration, t: usize) -> Result<(NilAlgebra, Filtration)> {
    if alg.is_abelian() {
        return Err(Error::NotApplicable("abelian algebra".into()));
    }
    let lcs1 = &alg.lower_central_series()[1];
    if f.term(1) != *lcs1 {
        return Err(Error::NotApplicable("first filtration term is not the derived algebra".into()));
    }
    let k = f.k();
    let max = k.div_ceil(2);
    if t == 0 || t > max {
        return Err(Error::BadT { t, max });
    }
    let ext = alg.extend_trivially_graded("T", t as i32 + 1);
    let d = alg.dim();
    let lift = |v: &Vec<Q>| -> Vec<Q> {
        let mut w = v.clone();
        w.push(Q::zero());
        w
    };
    let mut tvec = vec![Q::zero(); d + 1];
    tvec[d] = Q::one();
    let chain = (0..=k)
        .map(|j| {
            let mut vs: Vec<Vec<Q>> = f.term(j).basis().iter().map(lift).collect();
            if j <= t {
                vs.push(tvec.clone());
            }
            Subspace::span(d + 1, &vs)
        })
        .collect();
    let ft = Filtration::new(&ext, chain)?;
    Ok((ext, ft))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevbasis::build_structure_table;
    use crate::cohom::Complex;
    use crate::nilrad::{build_nilradical, ParabolicSpec};
    use crate::rootsys::build_root_system;

    fn nil(ty: &str, pi0: &str) -> NilAlgebra {
        let spec = ParabolicSpec::parse(ty, pi0).unwrap();
        build_nilradical(&spec, &build_structure_table(&build_root_system(spec.ty())))
    }

    fn heis_plus_t() -> NilAlgebra {
        NilAlgebra::from_parts(
            vec!["X".into(), "Y".into(), "Z".into(), "T".into()],
            Some(vec![1, 1, 2, 1]),
            &[(0, 1, q(1), 2)],
            None,
        )
        .unwrap()
    }

    #[test]
    fn lower_central_series_is_accurate() {
        for (ty, pi0) in [("A2", "1,2"), ("B2", "1,2"), ("G2", "1"), ("C3", "2"), ("B3", "3"), ("A3", "1,3")] {
            let n = nil(ty, pi0);
            assert!(is_accurate(&n, &Filtration::lower_central(&n)).unwrap(), "{ty} {pi0}");
        }
    }

    #[test]
    fn abelian_filtrations() {
        let a = nil("A3", "2");
        let d = a.dim();
        for line in 0..d {
            let chain = vec![Subspace::full(d), Subspace::coordinate(d, &[line]), Subspace::zero(d)];
            assert!(is_accurate(&a, &Filtration::new(&a, chain).unwrap()).unwrap());
        }
        // a plane in the middle is not accurate: some 2-form pairs it with itself
        let chain = vec![Subspace::full(d), Subspace::coordinate(d, &[0, 1]), Subspace::zero(d)];
        assert!(!is_accurate(&a, &Filtration::new(&a, chain).unwrap()).unwrap());
    }

    #[test]
    fn heisenberg_plus_line() {
        let n = heis_plus_t();
        let chain =
            vec![Subspace::full(4), Subspace::coordinate(4, &[2, 3]), Subspace::coordinate(4, &[3]), Subspace::zero(4)];
        let f = Filtration::new(&n, chain).unwrap();
        assert!(is_accurate(&n, &f).unwrap());
    }

    #[test]
    fn not_a_filtration() {
        let n = heis_plus_t();
        let chain = vec![Subspace::full(4), Subspace::coordinate(4, &[0, 3]), Subspace::zero(4)];
        assert!(matches!(Filtration::new(&n, chain), Err(Error::NotAFiltration(_))));
    }

    #[test]
    fn extension_is_accurate() {
        let h = nil("A2", "1,2");
        let (e, f) = extend_filtration(&h, &Filtration::lower_central(&h), 1).unwrap();
        assert_eq!(e.dim(), 4);
        assert_eq!(f.k(), 2);
        assert!(is_accurate(&e, &f).unwrap());
        let g2 = nil("G2", "1");
        for t in 1..=2 {
            let (e, f) = extend_filtration(&g2, &Filtration::lower_central(&g2), t).unwrap();
            assert!(is_accurate(&e, &f).unwrap(), "t = {t}");
        }
        let a = nil("A3", "2");
        assert!(matches!(extend_filtration(&a, &Filtration::lower_central(&a), 1), Err(Error::NotApplicable(_))));
        assert!(matches!(extend_filtration(&g2, &Filtration::lower_central(&g2), 3), Err(Error::BadT { .. })));
    }

    #[test]
    fn projections() {
        let n = nil("C3", "2,3");
        let dec = mj_decomposition(&n, &Filtration::lower_central(&n));
        let cx = Complex::new(&n);
        assert!(matches!(dec.project(&ExtForm::zero(2), 3), Err(Error::BadT { t: 3, max: 2 })));
        // exact forms are killed by every P_t
        for w in cx.exact_2form_basis() {
            for t in 1..=2 {
                assert!(dec.project(&w, t).unwrap().is_zero());
            }
        }
        // P_2 image on all of Λ^2 is m_2 ∧ m_2
        let m2 = n.grading().iter().filter(|&&g| g == 2).count();
        let mut imgs = Vec::new();
        for m in crate::cohom::monomials(n.dim(), 2) {
            let w = ExtForm::monomial(&m, q(1));
            let p = dec.project(&w, 2).unwrap();
            assert_eq!(dec.project(&p, 2).unwrap(), p);
            if !p.is_zero() {
                imgs.push(p);
            }
        }
        assert_eq!(crate::cohom::forms_to_subspace(n.dim(), &imgs).dim(), m2 * (m2 - 1) / 2);
    }

    #[test]
    fn non_standard_adapted_basis() {
        // a filtration whose middle term is not a coordinate subspace
        let a = nil("A2", "1");
        let d = a.dim();
        let v = vec![q(1), q(1)];
        let chain = vec![Subspace::full(d), Subspace::span(d, &[v]), Subspace::zero(d)];
        let f = Filtration::new(&a, chain).unwrap();
        let dec = mj_decomposition(&a, &f);
        let w = ExtForm::monomial(&[0, 1], q(1));
        assert_eq!(dec.block_support(&w), [(1, 2)].into_iter().collect());
        assert_eq!(dec.project(&w, 1).unwrap(), w);
    }
}
