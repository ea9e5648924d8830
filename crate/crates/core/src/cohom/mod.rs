//! The Chevalley–Eilenberg complex of a nilpotent Lie algebra with trivial
//! coefficients.
//!
//! The differential follows
//! `d c(x_1..x_{p+1}) = Σ_{i<j} (-1)^{i+j-1} c([x_i,x_j], x_1..^i..^j..)`,
//! which on the dual basis gives `d e^k = Σ_{a<b} c^k_{ab} e^a ∧ e^b`,
//! extended as a graded derivation. Cochain spaces are split into blocks of
//! constant torus weight, which `d` preserves.

mod filtration;
mod form;

pub use filtration::{extend_filtration, is_accurate, mj_decomposition, project_pt, Filtration, MjDecomposition};
pub use form::{sort_sign, ExtForm};

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{fmt_q, nullspace, rank, rref, Subspace, Q};
use crate::nilrad::NilAlgebra;

/// Full cochain complexes are only built up to this dimension.
pub const FULL_COMPLEX_MAX_DIM: usize = 14;

/// All strictly increasing `p`-tuples from `0..d`, lexicographically.
pub fn monomials(d: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    fn rec(start: usize, d: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            if d - i < p - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, d, p, cur, out);
            cur.pop();
        }
    }
    rec(0, d, p, &mut cur, &mut out);
    out
}

/// Index of the pair `(a, b)`, `a < b`, in the lexicographic list of pairs.
pub fn pair_index(d: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < d);
    a * d - a * (a + 1) / 2 + (b - a - 1)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// The cochain complex of an algebra together with the dual structure
/// constants needed by the differential.
pub struct Complex<'a> {
    alg: &'a NilAlgebra,
    /// `dual[k]` lists `(a, b, c)` with `a < b` and `[e_a, e_b] ∋ c e_k`.
    dual: Vec<Vec<(usize, usize, Q)>>,
}

/// Monomials of one degree grouped by total weight.
type Blocks = BTreeMap<Vec<i32>, Vec<Vec<usize>>>;

impl<'a> Complex<'a> {
    pub fn new(alg: &'a NilAlgebra) -> Self {
        let mut dual = vec![Vec::new(); alg.dim()];
        for (a, b, c, k) in alg.triples() {
            dual[k].push((a, b, c));
        }
        Complex { alg, dual }
    }

    pub fn algebra(&self) -> &NilAlgebra {
        self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    fn weight_of(&self, idx: &[usize]) -> Vec<i32> {
        let w = self.alg.weights();
        let len = w.first().map_or(0, Vec::len);
        let mut s = vec![0; len];
        for &i in idx {
            for (x, y) in s.iter_mut().zip(&w[i]) {
                *x += y;
            }
        }
        s
    }

    fn blocks(&self, p: usize) -> Blocks {
        let mut out: Blocks = BTreeMap::new();
        for m in monomials(self.dim(), p) {
            out.entry(self.weight_of(&m)).or_default().push(m);
        }
        out
    }

    /// `d e^I` for a sorted index tuple.
    pub fn d_monomial(&self, idx: &[usize]) -> ExtForm {
        let mut out = ExtForm::zero(idx.len() + 1);
        for (pos, &k) in idx.iter().enumerate() {
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            for (a, b, c) in &self.dual[k] {
                let mut v = Vec::with_capacity(idx.len() + 1);
                v.extend_from_slice(&idx[..pos]);
                v.push(*a);
                v.push(*b);
                v.extend_from_slice(&idx[pos + 1..]);
                let c = if sign > 0 { c.clone() } else { -c.clone() };
                out.add_term(&v, c);
            }
        }
        out
    }

    pub fn d(&self, form: &ExtForm) -> ExtForm {
        let mut out = ExtForm::zero(form.degree() + 1);
        for (idx, c) in form.terms() {
            out = out.add(&self.d_monomial(idx).scale(c));
        }
        out
    }

    /// The block of `d_p` on weight `w`: rows indexed by the degree-`p+1`
    /// monomials of that weight, columns by the degree-`p` ones.
    fn block_matrix(&self, src: &[Vec<usize>], dst: &[Vec<usize>]) -> Vec<Vec<Q>> {
        let pos: HashMap<&Vec<usize>, usize> = dst.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut a = vec![vec![Q::zero(); src.len()]; dst.len()];
        for (col, m) in src.iter().enumerate() {
            for (j, c) in self.d_monomial(m).terms() {
                a[pos[j]][col] = c.clone();
            }
        }
        a
    }

    /// Rank of `d_p : Λ^p → Λ^{p+1}`.
    pub fn rank_d(&self, p: usize) -> usize {
        if p >= self.dim() {
            return 0;
        }
        let src = self.blocks(p);
        let dst = self.blocks(p + 1);
        src.par_iter()
            .map(|(w, ms)| match dst.get(w) {
                Some(js) => rank(&self.block_matrix(ms, js), ms.len()),
                None => 0,
            })
            .sum()
    }

    /// Basis of `ker d_p` as forms.
    pub fn kernel_d(&self, p: usize) -> Vec<ExtForm> {
        let src = self.blocks(p);
        let dst = if p < self.dim() { self.blocks(p + 1) } else { Blocks::new() };
        let per_block: Vec<Vec<ExtForm>> = src
            .par_iter()
            .map(|(w, ms)| {
                let kernel = match dst.get(w) {
                    Some(js) => nullspace(&self.block_matrix(ms, js), ms.len()),
                    None => Subspace::full(ms.len()).basis().to_vec(),
                };
                kernel.into_iter().map(|v| form_from_coords(p, ms, &v)).collect()
            })
            .collect();
        per_block.into_iter().flatten().collect()
    }

    /// Basis of `image d_{p-1} ⊆ Λ^p` as forms.
    pub fn image_d(&self, p: usize) -> Vec<ExtForm> {
        if p == 0 {
            return Vec::new();
        }
        let src = self.blocks(p - 1);
        let dst = self.blocks(p);
        let per_block: Vec<Vec<ExtForm>> = src
            .par_iter()
            .filter_map(|(w, ms)| dst.get(w).map(|js| (ms, js)))
            .map(|(ms, js)| {
                let pos: HashMap<&Vec<usize>, usize> = js.iter().enumerate().map(|(i, m)| (m, i)).collect();
                let rows: Vec<Vec<Q>> = ms
                    .iter()
                    .map(|m| {
                        let mut v = vec![Q::zero(); js.len()];
                        for (j, c) in self.d_monomial(m).terms() {
                            v[pos[j]] = c.clone();
                        }
                        v
                    })
                    .collect();
                rref(&rows, js.len()).rows.iter().map(|v| form_from_coords(p, js, v)).collect()
            })
            .collect();
        per_block.into_iter().flatten().collect()
    }

    pub fn betti(&self, p: usize) -> usize {
        let d = self.dim();
        if p > d {
            return 0;
        }
        let below = if p == 0 { 0 } else { self.rank_d(p - 1) };
        binomial(d, p) - self.rank_d(p) - below
    }

    /// All Betti numbers `b_0..b_dim`; refuses dimensions above the cap.
    pub fn betti_all(&self) -> Result<Vec<usize>> {
        let d = self.dim();
        if d > FULL_COMPLEX_MAX_DIM {
            return Err(Error::TooLarge { what: "full Betti table", dim: d, limit: FULL_COMPLEX_MAX_DIM });
        }
        let ranks: Vec<usize> = (0..=d).map(|p| self.rank_d(p)).collect();
        Ok((0..=d).map(|p| binomial(d, p) - ranks[p] - if p == 0 { 0 } else { ranks[p - 1] }).collect())
    }

    pub fn closed_2form_basis(&self) -> Vec<ExtForm> {
        self.kernel_d(2)
    }

    pub fn exact_2form_basis(&self) -> Vec<ExtForm> {
        self.image_d(2)
    }

    /// `Z^2` as a subspace of `Λ^2` in lexicographic pair coordinates.
    pub fn closed_2forms(&self) -> Subspace {
        forms_to_subspace(self.dim(), &self.closed_2form_basis())
    }

    /// `B^2` as a subspace of `Λ^2`.
    pub fn exact_2forms(&self) -> Subspace {
        forms_to_subspace(self.dim(), &self.exact_2form_basis())
    }

    /// Sparse triplets `row col value` of `d_p` in the monomial bases.
    pub fn dump_triplets(&self, p: usize) -> String {
        let d = self.dim();
        let rows: HashMap<Vec<usize>, usize> =
            monomials(d, p + 1).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut s = String::new();
        let _ = writeln!(s, "% d_{p}: {} x {}", binomial(d, p + 1), binomial(d, p));
        for (col, m) in monomials(d, p).iter().enumerate() {
            for (j, c) in self.d_monomial(m).terms() {
                let _ = writeln!(s, "{} {} {}", rows[j], col, fmt_q(c));
            }
        }
        s
    }
}

fn form_from_coords(p: usize, ms: &[Vec<usize>], v: &[Q]) -> ExtForm {
    let mut f = ExtForm::zero(p);
    for (m, c) in ms.iter().zip(v) {
        f.add_term(m, c.clone());
    }
    f
}

/// Coordinates of a 2-form in lexicographic pair order.
pub fn two_form_coords(d: usize, f: &ExtForm) -> Vec<Q> {
    let mut v = vec![Q::zero(); binomial(d, 2)];
    for (idx, c) in f.terms() {
        v[pair_index(d, idx[0], idx[1])] = c.clone();
    }
    v
}

pub fn two_form_from_coords(d: usize, v: &[Q]) -> ExtForm {
    let mut f = ExtForm::zero(2);
    let mut n = 0;
    for a in 0..d {
        for b in a + 1..d {
            if !v[n].is_zero() {
                f.add_term(&[a, b], v[n].clone());
            }
            n += 1;
        }
    }
    f
}

pub fn forms_to_subspace(d: usize, forms: &[ExtForm]) -> Subspace {
    let vs: Vec<Vec<Q>> = forms.iter().map(|f| two_form_coords(d, f)).collect();
    Subspace::span(binomial(d, 2), &vs)
}

/// Closedness of a 2-form through `ω([U,V],W) + ω([V,W],U) + ω([W,U],V) = 0`
/// on all basis triples, without building any differential.
pub fn is_closed_by_triples(alg: &NilAlgebra, omega: &ExtForm) -> bool {
    let d = alg.dim();
    let w = |x: &[(usize, Q)], y: usize| -> Q { x.iter().map(|(k, c)| c * omega.coeff(&[*k, y])).sum() };
    for u in 0..d {
        for v in u + 1..d {
            for t in v + 1..d {
                let s = w(alg.bracket_basis(u, v), t) + w(alg.bracket_basis(v, t), u) + w(alg.bracket_basis(t, u), v);
                if !s.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

pub fn betti(alg: &NilAlgebra, p: usize) -> usize {
    Complex::new(alg).betti(p)
}

pub fn closed_2forms(alg: &NilAlgebra) -> Subspace {
    Complex::new(alg).closed_2forms()
}

pub fn exact_2forms(alg: &NilAlgebra) -> Subspace {
    Complex::new(alg).exact_2forms()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevbasis::build_structure_table;
    use crate::linalg::q;
    use crate::nilrad::{build_nilradical, ParabolicSpec};
    use crate::rootsys::build_root_system;

    fn nil(ty: &str, pi0: &str) -> NilAlgebra {
        let spec = ParabolicSpec::parse(ty, pi0).unwrap();
        build_nilradical(&spec, &build_structure_table(&build_root_system(spec.ty())))
    }

    /// Direct evaluation of the defining sum on basis vectors.
    fn d_by_definition(alg: &NilAlgebra, f: &ExtForm) -> ExtForm {
        let d = alg.dim();
        let p = f.degree();
        let mut out = ExtForm::zero(p + 1);
        for j in monomials(d, p + 1) {
            let mut total = Q::zero();
            for a in 0..=p {
                for b in a + 1..=p {
                    let sign = if (a + b + 2 - 1) % 2 == 0 { 1 } else { -1 };
                    let rest: Vec<usize> =
                        j.iter().enumerate().filter(|(i, _)| *i != a && *i != b).map(|(_, &x)| x).collect();
                    for (k, c) in alg.bracket_basis(j[a], j[b]) {
                        let mut idx = vec![*k];
                        idx.extend_from_slice(&rest);
                        let v = c * f.coeff(&idx);
                        total += if sign > 0 { v } else { -v };
                    }
                }
            }
            out.add_term(&j, total);
        }
        out
    }

    #[test]
    fn monomial_indexing() {
        let pairs = monomials(5, 2);
        for (n, m) in pairs.iter().enumerate() {
            assert_eq!(pair_index(5, m[0], m[1]), n);
        }
        assert_eq!(monomials(6, 3).len(), 20);
        assert_eq!(binomial(14, 7), 3432);
    }

    #[test]
    fn derivation_matches_definition() {
        for (ty, pi0) in [("A2", "1,2"), ("B2", "1,2"), ("G2", "1"), ("C3", "2,3")] {
            let n = nil(ty, pi0);
            let cx = Complex::new(&n);
            for p in 1..=3 {
                for m in monomials(n.dim(), p) {
                    let f = ExtForm::monomial(&m, q(1));
                    assert_eq!(cx.d(&f), d_by_definition(&n, &f), "{ty} {pi0} {m:?}");
                }
            }
        }
    }

    #[test]
    fn heisenberg() {
        let h = nil("A2", "1,2");
        let cx = Complex::new(&h);
        assert_eq!(cx.rank_d(1), 1);
        assert_eq!(cx.betti_all().unwrap(), vec![1, 2, 2, 1]);
        assert_eq!(cx.kernel_d(1).len(), 2);
    }

    #[test]
    fn abelian_complex() {
        let a = nil("A4", "2");
        let cx = Complex::new(&a);
        for p in 0..a.dim() {
            assert_eq!(cx.rank_d(p), 0);
        }
        assert_eq!(cx.betti(2), binomial(a.dim(), 2));
    }

    #[test]
    fn d_squared_vanishes() {
        let n = nil("C3", "2");
        let cx = Complex::new(&n);
        for p in 0..n.dim() {
            for m in monomials(n.dim(), p) {
                let f = ExtForm::monomial(&m, q(1));
                assert!(cx.d(&cx.d(&f)).is_zero());
            }
        }
    }

    #[test]
    fn closed_forms_agree_with_triple_test() {
        let n = nil("B3", "3");
        let cx = Complex::new(&n);
        for f in cx.closed_2form_basis() {
            assert!(is_closed_by_triples(&n, &f));
        }
        for m in monomials(n.dim(), 2) {
            let f = ExtForm::monomial(&m, q(1));
            assert_eq!(is_closed_by_triples(&n, &f), cx.d(&f).is_zero());
        }
        assert!(cx.exact_2forms().is_subspace_of(&cx.closed_2forms()));
    }
}
