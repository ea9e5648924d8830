//! Highest weight vectors of `H^2(n)` under the Levi factor, from length-2
//! Weyl group elements, and a brute-force check against the cohomology.
//!
//! The Levi factor acts on `n*` by `(X·f)(v) = -f([X, v])`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::chevbasis::StructureTable;
use crate::cohom::{forms_to_subspace, Complex, ExtForm};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, q, Subspace, Q};
use crate::nilrad::{build_nilradical, NilAlgebra, ParabolicSpec};
use crate::rootsys::{RootSystem, RootVec};

/// Full cohomology checks are limited to this dimension.
pub const HWV_CHECK_MAX_DIM: usize = 14;

/// `w = s_a s_b` with its inversion set `wΔ⁻ ∩ Δ⁺`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct W12Element {
    pub a: usize,
    pub b: usize,
    pub inversions: BTreeSet<RootVec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HwvEntry {
    /// Simple root index in `pi0` (0-based).
    pub alpha: usize,
    pub partner: RootVec,
    pub grade_of_partner: i32,
    /// `X^{-alpha} ∧ X^{-partner}` in the dual basis of the nilradical.
    pub rep_form: ExtForm,
}

impl HwvEntry {
    pub fn roots(&self, rank: usize) -> BTreeSet<RootVec> {
        [RootVec::simple(rank, self.alpha), self.partner.clone()].into_iter().collect()
    }
}

fn apply_word(rs: &RootSystem, word: &[usize], r: &RootVec) -> RootVec {
    word.iter().rev().fold(r.clone(), |acc, &i| rs.reflect(&acc, i).expect("roots stay roots"))
}

/// Length-2 elements whose inversion set lies in `Δ_n⁺`, found by applying
/// every `s_a s_b` to every negative root.
pub fn enumerate_w12(spec: &ParabolicSpec, rs: &RootSystem) -> Vec<W12Element> {
    let n = rs.rank();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let inversions: BTreeSet<RootVec> = rs
                .positive_roots()
                .iter()
                .map(|g| apply_word(rs, &[a, b], &g.neg()))
                .filter(RootVec::is_positive)
                .collect();
            assert_eq!(inversions.len(), 2, "s_a s_b has length 2");
            if inversions.iter().all(|g| g.o_value(spec.pi0()) > 0) && seen.insert(inversions.clone()) {
                out.push(W12Element { a, b, inversions });
            }
        }
    }
    out
}

fn position_map(alg: &NilAlgebra) -> BTreeMap<RootVec, usize> {
    let origin = alg.origin().expect("parabolic algebra");
    origin.roots.iter().enumerate().filter_map(|(i, r)| r.clone().map(|r| (r, i))).collect()
}

/// The two families: orthogonal pairs inside `pi0`, and `(α, s_α(β))` for
/// simple `β` with `(β, α) < 0`.
pub fn h2_hwv(spec: &ParabolicSpec, st: &StructureTable) -> Vec<HwvEntry> {
    let rs = st.rs();
    let alg = build_nilradical(spec, st);
    hwv_entries(spec, rs, &position_map(&alg))
}

fn hwv_entries(spec: &ParabolicSpec, rs: &RootSystem, pos: &BTreeMap<RootVec, usize>) -> Vec<HwvEntry> {
    let n = rs.rank();
    let pi0 = spec.pi0();
    let make = |alpha: usize, partner: RootVec| {
        let a = RootVec::simple(n, alpha);
        HwvEntry {
            alpha,
            grade_of_partner: partner.o_value(pi0),
            rep_form: ExtForm::monomial(&[pos[&a], pos[&partner]], q(1)),
            partner,
        }
    };
    let mut out = Vec::new();
    for (i, &a) in pi0.iter().enumerate() {
        for &b in &pi0[i + 1..] {
            if rs.cartan()[a][b] == 0 {
                out.push(make(a, RootVec::simple(n, b)));
            }
        }
    }
    for &a in pi0 {
        for b in 0..n {
            if b != a && rs.cartan()[a][b] < 0 {
                let partner = rs.reflect(&RootVec::simple(n, b), a).unwrap();
                out.push(make(a, partner));
            }
        }
    }
    out
}

/// `X_γ · ω` for a positive root `γ` of the Levi factor.
pub fn levi_action(alg: &NilAlgebra, st: &StructureTable, gamma: &RootVec, form: &ExtForm) -> ExtForm {
    let origin = alg.origin().expect("parabolic algebra");
    let pos = position_map(alg);
    // X_γ · e^δ = -N_{γ, δ-γ} e^{δ-γ}
    let on_dual = |i: usize| -> Option<(usize, Q)> {
        let delta = origin.roots[i].as_ref()?;
        let eps = delta.sub(gamma);
        let j = *pos.get(&eps)?;
        let c = st.n_roots(gamma, &eps);
        (c != 0).then(|| (j, q(-(c as i64))))
    };
    let mut out = ExtForm::zero(form.degree());
    for (idx, c) in form.terms() {
        for (slot, &i) in idx.iter().enumerate() {
            if let Some((j, a)) = on_dual(i) {
                let mut v = idx.clone();
                v[slot] = j;
                out.add_term(&v, c * &a);
            }
        }
    }
    out
}

/// Dimension of the irreducible Levi module of highest weight `lambda`
/// (given in simple-root coordinates, possibly negative).
pub fn weyl_dimension(rs: &RootSystem, pi0: &[usize], lambda: &RootVec) -> Q {
    let levi: Vec<&RootVec> = rs.positive_roots().iter().filter(|r| r.o_value(pi0) == 0).collect();
    let mut two_delta = RootVec(vec![0; rs.rank()]);
    for r in &levi {
        two_delta = two_delta.add(r);
    }
    let shifted = lambda.scaled(2).add(&two_delta);
    let mut d = q(1);
    for r in levi {
        d = d * rs.inner(&shifted, r) / rs.inner(&two_delta, r);
    }
    d
}

#[derive(Debug, Clone, Serialize)]
pub struct HwvReportEntry {
    pub alpha: usize,
    pub partner: String,
    pub grade_of_partner: i32,
    pub module_dim: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct HwvReport {
    pub case: String,
    pub dim: usize,
    pub b2: usize,
    pub w12: usize,
    pub hwv: Vec<HwvReportEntry>,
    pub verified: bool,
}

/// Weight-block key of a 2-form whose terms share one weight.
fn form_weight(alg: &NilAlgebra, f: &ExtForm) -> Vec<i32> {
    let (idx, _) = f.terms().next().expect("nonzero form");
    let w = alg.weights();
    w[idx[0]].iter().zip(&w[idx[1]]).map(|(a, b)| a + b).collect()
}

/// Within one weight block: forms of `z` sent into `b` by every raising
/// operator, plus the exact forms `b_here` of the block.
fn hwv_space(
    alg: &NilAlgebra,
    st: &StructureTable,
    raising: &[RootVec],
    z: &[ExtForm],
    b: &Subspace,
    b_here: &Subspace,
) -> Subspace {
    let d = alg.dim();
    let np = crate::cohom::binomial(d, 2);
    let bb = b.basis();
    // unknowns: coefficients on z, then one copy of B's basis per operator
    let nz = z.len();
    let ncols = nz + raising.len() * bb.len();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let acted: Vec<Vec<Vec<Q>>> = raising
        .iter()
        .map(|g| z.iter().map(|f| crate::cohom::two_form_coords(d, &levi_action(alg, st, g, f))).collect())
        .collect();
    for (gi, act) in acted.iter().enumerate() {
        for coord in 0..np {
            let mut row = vec![Q::zero(); ncols];
            let mut any = false;
            for (i, v) in act.iter().enumerate() {
                if !v[coord].is_zero() {
                    row[i] = v[coord].clone();
                    any = true;
                }
            }
            for (j, v) in bb.iter().enumerate() {
                if !v[coord].is_zero() {
                    row[nz + gi * bb.len() + j] = -v[coord].clone();
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    let sols = nullspace(&rows, ncols);
    let mut vs: Vec<Vec<Q>> = sols
        .iter()
        .map(|s| {
            let mut acc = vec![Q::zero(); np];
            for (i, f) in z.iter().enumerate() {
                if !s[i].is_zero() {
                    for (k, x) in crate::cohom::two_form_coords(d, f).into_iter().enumerate() {
                        acc[k] += &s[i] * x;
                    }
                }
            }
            acc
        })
        .collect();
    vs.extend(b_here.basis().iter().cloned());
    Subspace::span(np, &vs)
}

/// Compares the listed highest weight vectors with a direct computation
/// inside `H^2(n)`.
pub fn verify_hwv_against_cohomology(spec: &ParabolicSpec, st: &StructureTable) -> Result<HwvReport> {
    let rs = st.rs();
    let alg = build_nilradical(spec, st);
    let d = alg.dim();
    if d > HWV_CHECK_MAX_DIM {
        return Err(Error::TooLarge { what: "highest weight check", dim: d, limit: HWV_CHECK_MAX_DIM });
    }
    let entries = hwv_entries(spec, rs, &position_map(&alg));
    let w12 = enumerate_w12(spec, rs);
    let case = spec.key();
    let fail = |m: String| Err(Error::Mismatch(format!("{case}: {m}")));
    if entries.len() != w12.len() {
        return fail(format!("{} entries but |W^(1,2)| = {}", entries.len(), w12.len()));
    }
    let inv_sets: BTreeSet<_> = w12.iter().map(|w| w.inversions.clone()).collect();
    let entry_sets: BTreeSet<_> = entries.iter().map(|e| e.roots(rs.rank())).collect();
    if inv_sets != entry_sets {
        return fail("entries do not match inversion sets".into());
    }

    let cx = Complex::new(&alg);
    let zb = cx.closed_2form_basis();
    let bb = cx.exact_2form_basis();
    let z = forms_to_subspace(d, &zb);
    let b = forms_to_subspace(d, &bb);
    let b2 = z.dim() - b.dim();
    let raising: Vec<RootVec> =
        (0..rs.rank()).filter(|i| !spec.pi0().contains(i)).map(|i| RootVec::simple(rs.rank(), i)).collect();

    for e in &entries {
        let v = crate::cohom::two_form_coords(d, &e.rep_form);
        if !z.contains(&v) {
            return fail(format!("representative for {} is not closed", e.partner.label()));
        }
        if b.contains(&v) {
            return fail(format!("representative for {} is exact", e.partner.label()));
        }
        for g in &raising {
            let acted = crate::cohom::two_form_coords(d, &levi_action(&alg, st, g, &e.rep_form));
            if !b.contains(&acted) {
                return fail(format!("{} does not kill {} modulo exact forms", g.label(), e.partner.label()));
            }
        }
    }
    let reps: Vec<ExtForm> = entries.iter().map(|e| e.rep_form.clone()).collect();
    if forms_to_subspace(d, &reps).sum(&b).dim() != b.dim() + reps.len() {
        return fail("classes are dependent in H^2".into());
    }

    // per-weight comparison with the brute-force highest weight space
    // closed, exact and hwv representatives of each weight
    type Slot = (Vec<ExtForm>, Vec<ExtForm>, Vec<ExtForm>);
    let mut by_weight: BTreeMap<Vec<i32>, Slot> = BTreeMap::new();
    for f in &zb {
        by_weight.entry(form_weight(&alg, f)).or_default().0.push(f.clone());
    }
    for f in &bb {
        by_weight.entry(form_weight(&alg, f)).or_default().1.push(f.clone());
    }
    for f in &reps {
        by_weight.entry(form_weight(&alg, f)).or_default().2.push(f.clone());
    }
    for (w, (zw, bw, rw)) in &by_weight {
        let bsub = forms_to_subspace(d, bw);
        let brute = hwv_space(&alg, st, &raising, zw, &b, &bsub);
        let listed = forms_to_subspace(d, rw).sum(&bsub);
        if brute != listed {
            return fail(format!("highest weight space differs at weight {w:?}"));
        }
    }

    // the Levi modules generated by the listed vectors fill H^2
    let mut total = Q::zero();
    let mut report = Vec::new();
    for e in &entries {
        let lambda = RootVec::simple(rs.rank(), e.alpha).add(&e.partner).neg();
        for g in &raising {
            if rs.inner(&lambda, g).is_negative() {
                return fail(format!("weight of {} is not dominant", e.partner.label()));
            }
        }
        let m = weyl_dimension(rs, spec.pi0(), &lambda);
        total += &m;
        report.push(HwvReportEntry {
            alpha: e.alpha + 1,
            partner: e.partner.label(),
            grade_of_partner: e.grade_of_partner,
            module_dim: crate::linalg::fmt_q(&m),
        });
    }
    if total != q(b2 as i64) {
        return fail(format!("module dimensions sum to {} but b2 = {b2}", crate::linalg::fmt_q(&total)));
    }
    Ok(HwvReport { case: spec.key(), dim: d, b2, w12: w12.len(), hwv: report, verified: true })
}
