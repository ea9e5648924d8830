//! Nilpotent Lie algebras over the rationals, and the nilradicals of
//! parabolic subalgebras in particular.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chevbasis::StructureTable;
use crate::error::{Error, Result};
use crate::linalg::{fmt_q, parse_q, q, Subspace, Q};
use crate::rootsys::{RootSystem, RootVec, SimpleType};

/// A parabolic subalgebra, given by the simple roots `pi0` (0-based) whose
/// root vectors are removed from the Levi factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicSpec {
    ty: SimpleType,
    pi0: Vec<usize>,
}

impl ParabolicSpec {
    pub fn new(ty: SimpleType, pi0: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = pi0.iter().copied().collect();
        if set.is_empty() {
            return Err(Error::BadParabolic("empty".into()));
        }
        if set.len() != pi0.len() {
            return Err(Error::BadParabolic(format!("repeated index in {pi0:?}")));
        }
        if let Some(&bad) = set.iter().find(|&&i| i >= ty.rank()) {
            return Err(Error::BadParabolic(format!("index {} out of range for {ty}", bad + 1)));
        }
        Ok(ParabolicSpec { ty, pi0: set.into_iter().collect() })
    }

    /// Parses 1-based indices such as `"2,3"`.
    pub fn parse(ty: &str, pi0: &str) -> Result<Self> {
        let ty: SimpleType = ty.parse()?;
        let idx: Vec<usize> = pi0
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| i >= 1)
                    .map(|i| i - 1)
                    .ok_or_else(|| Error::BadParabolic(format!("bad index {s:?}")))
            })
            .collect::<Result<_>>()?;
        ParabolicSpec::new(ty, &idx)
    }

    pub fn ty(&self) -> SimpleType {
        self.ty
    }

    pub fn pi0(&self) -> &[usize] {
        &self.pi0
    }

    /// `pi0` in the 1-based numbering used for display.
    pub fn pi0_one_based(&self) -> Vec<usize> {
        self.pi0.iter().map(|i| i + 1).collect()
    }

    pub fn key(&self) -> String {
        let idx: Vec<String> = self.pi0_one_based().iter().map(ToString::to_string).collect();
        format!("{}:{}", self.ty, idx.join(","))
    }

    /// Every spec of the given type with `|pi0|` in `sizes`.
    pub fn enumerate(ty: SimpleType, sizes: &[usize]) -> Vec<ParabolicSpec> {
        let n = ty.rank();
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            if sizes.contains(&(mask.count_ones() as usize)) {
                let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                out.push(ParabolicSpec { ty, pi0: idx });
            }
        }
        out.sort();
        out
    }
}

/// Where a basis element of a nilradical comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicOrigin {
    pub spec: ParabolicSpec,
    /// Root of each basis element; `None` for trivially adjoined generators.
    pub roots: Vec<Option<RootVec>>,
}

/// A finite-dimensional nilpotent Lie algebra with a chosen ordered basis.
#[derive(Debug, Clone)]
pub struct NilAlgebra {
    labels: Vec<String>,
    grading: Vec<i32>,
    k: usize,
    /// `br[i][j]` is `[e_i, e_j]` as a sparse combination, kept antisymmetric.
    br: Vec<Vec<Vec<(usize, Q)>>>,
    /// A torus weight per basis element, additive on brackets. Used to split
    /// cochain spaces into blocks; all zero when none is known.
    weights: Vec<Vec<i32>>,
    origin: Option<ParabolicOrigin>,
}

impl NilAlgebra {
    /// Assembles an algebra from bracket triples `[e_i, e_j] += c e_k`
    /// (given for `i < j`). Checks antisymmetry, Jacobi and nilpotency.
    pub fn from_parts(
        labels: Vec<String>,
        grading: Option<Vec<i32>>,
        brackets: &[(usize, usize, Q, usize)],
        weights: Option<Vec<Vec<i32>>>,
    ) -> Result<Self> {
        let d = labels.len();
        let mut table: BTreeMap<(usize, usize), BTreeMap<usize, Q>> = BTreeMap::new();
        for (i, j, c, k) in brackets {
            if *i >= d || *j >= d || *k >= d {
                return Err(Error::SchemaError(format!("bracket index out of range in ({i}, {j}, {k})")));
            }
            if i == j {
                if !c.is_zero() {
                    return Err(Error::SchemaError(format!("[e{i}, e{i}] must vanish")));
                }
                continue;
            }
            let (a, b, s) = if i < j { (*i, *j, c.clone()) } else { (*j, *i, -c.clone()) };
            *table.entry((a, b)).or_default().entry(*k).or_insert_with(Q::zero) += s;
        }
        let mut br = vec![vec![Vec::new(); d]; d];
        for ((a, b), comb) in table {
            let v: Vec<(usize, Q)> = comb.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            br[b][a] = v.iter().map(|(k, c)| (*k, -c.clone())).collect();
            br[a][b] = v;
        }
        let weights = weights.unwrap_or_else(|| vec![Vec::new(); d]);
        if weights.len() != d {
            return Err(Error::SchemaError("weights length differs from dimension".into()));
        }
        let mut alg = NilAlgebra { labels, grading: vec![1; d], k: 0, br, weights, origin: None };
        alg.check_jacobi()?;
        let lcs = alg.lower_central_series_checked()?;
        alg.k = lcs.len() - 1;
        match grading {
            Some(g) => {
                if g.len() != d {
                    return Err(Error::SchemaError("grading length differs from dimension".into()));
                }
                alg.grading = g;
                alg.check_grading()?;
            }
            None => alg.grading = depth_grading(&lcs),
        }
        alg.check_weights()?;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn grading(&self) -> &[i32] {
        &self.grading
    }

    /// Nilpotency class (number of nonzero terms in the lower central series).
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn weights(&self) -> &[Vec<i32>] {
        &self.weights
    }

    pub fn origin(&self) -> Option<&ParabolicOrigin> {
        self.origin.as_ref()
    }

    pub fn spec(&self) -> Option<&ParabolicSpec> {
        self.origin.as_ref().map(|o| &o.spec)
    }

    /// `[e_i, e_j]` as a sparse combination.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.br[i][j]
    }

    pub fn bracket(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let d = self.dim();
        let mut out = vec![Q::zero(); d];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (k, c) in &self.br[i][j] {
                    out[*k] += a * b * c;
                }
            }
        }
        out
    }

    /// All nonzero structure constants `[e_i, e_j] = ... + c e_k` with `i < j`.
    pub fn triples(&self) -> Vec<(usize, usize, Q, usize)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                for (k, c) in &self.br[i][j] {
                    out.push((i, j, c.clone(), *k));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.br.iter().all(|row| row.iter().all(Vec::is_empty))
    }

    fn unit(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    fn check_jacobi(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let (ei, ej, ek) = (self.unit(i), self.unit(j), self.unit(k));
                    let mut s = self.bracket(&self.bracket(&ei, &ej), &ek);
                    for (x, y) in s.iter_mut().zip(self.bracket(&self.bracket(&ej, &ek), &ei)) {
                        *x += y;
                    }
                    for (x, y) in s.iter_mut().zip(self.bracket(&self.bracket(&ek, &ei), &ej)) {
                        *x += y;
                    }
                    if s.iter().any(|x| !x.is_zero()) {
                        return Err(Error::JacobiFail(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_grading(&self) -> Result<()> {
        for (i, j, _, k) in self.triples() {
            if self.grading[k] != self.grading[i] + self.grading[j] {
                return Err(Error::SchemaError(format!(
                    "bracket of {} and {} leaves the grading",
                    self.labels[i], self.labels[j]
                )));
            }
        }
        if self.grading.iter().any(|&g| g < 1) {
            return Err(Error::SchemaError("grades must be positive".into()));
        }
        Ok(())
    }

    fn check_weights(&self) -> Result<()> {
        let len = self.weights.first().map_or(0, Vec::len);
        if self.weights.iter().any(|w| w.len() != len) {
            return Err(Error::SchemaError("weights of unequal length".into()));
        }
        for (i, j, _, k) in self.triples() {
            let s: Vec<i32> = self.weights[i].iter().zip(&self.weights[j]).map(|(a, b)| a + b).collect();
            if s != self.weights[k] {
                return Err(Error::SchemaError(format!("weights not additive on [{i}, {j}]")));
            }
        }
        Ok(())
    }

    fn lower_central_series_checked(&self) -> Result<Vec<Subspace>> {
        let d = self.dim();
        let mut out = vec![Subspace::full(d)];
        loop {
            let prev = out.last().unwrap();
            if prev.dim() == 0 {
                return Ok(out);
            }
            let mut gens = Vec::new();
            for i in 0..d {
                let ei = self.unit(i);
                for v in prev.basis() {
                    let w = self.bracket(&ei, v);
                    if w.iter().any(|x| !x.is_zero()) {
                        gens.push(w);
                    }
                }
            }
            let next = Subspace::span(d, &gens);
            if next.dim() == prev.dim() {
                return Err(Error::NotNilpotent);
            }
            out.push(next);
        }
    }

    /// `c^0 = n ⊋ c^1 ⊋ ... ⊋ c^k = 0`.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        self.lower_central_series_checked().expect("constructed algebras are nilpotent")
    }

    /// `c_0 = 0 ⊊ c_1 ⊊ ... ⊊ c_k = n`.
    pub fn upper_central_series(&self) -> Vec<Subspace> {
        let d = self.dim();
        let mut out = vec![Subspace::zero(d)];
        while out.last().unwrap().dim() < d {
            let ann = out.last().unwrap().annihilator();
            // X lies in the next term iff f([X, e_i]) = 0 for every f in ann
            let mut rows = Vec::new();
            for f in ann.basis() {
                for i in 0..d {
                    let row: Vec<Q> = (0..d).map(|a| self.br[a][i].iter().map(|(k, c)| c * &f[*k]).sum()).collect();
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            let next = Subspace::span(d, &crate::linalg::nullspace(&rows, d));
            assert!(next.dim() > out.last().unwrap().dim(), "upper central series stalled");
            out.push(next);
        }
        out
    }

    /// `[A, B]` for subspaces.
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut gens = Vec::new();
        for u in a.basis() {
            for v in b.basis() {
                let w = self.bracket(u, v);
                if w.iter().any(|x| !x.is_zero()) {
                    gens.push(w);
                }
            }
        }
        Subspace::span(self.dim(), &gens)
    }

    /// Basis elements of each grade, `1..=max grade`.
    pub fn grade_blocks(&self) -> BTreeMap<i32, Vec<usize>> {
        let mut out: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, &g) in self.grading.iter().enumerate() {
            out.entry(g).or_default().push(i);
        }
        out
    }

    /// `R T ⊕ n` with `T` central, of grade `grade` and a fresh weight
    /// coordinate.
    pub fn extend_trivially_graded(&self, label: &str, grade: i32) -> NilAlgebra {
        let d = self.dim();
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        let mut grading = self.grading.clone();
        grading.push(grade);
        let mut br: Vec<Vec<Vec<(usize, Q)>>> = self
            .br
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.push(Vec::new());
                r
            })
            .collect();
        br.push(vec![Vec::new(); d + 1]);
        let mut weights: Vec<Vec<i32>> = self
            .weights
            .iter()
            .map(|w| {
                let mut w = w.clone();
                w.push(0);
                w
            })
            .collect();
        let len = weights.first().map_or(1, Vec::len);
        let mut wt = vec![0; len];
        wt[len - 1] = 1;
        weights.push(wt);
        let origin = self.origin.as_ref().map(|o| {
            let mut o = o.clone();
            o.roots.push(None);
            o
        });
        NilAlgebra { labels, grading, k: self.k.max(1), br, weights, origin }
    }

    /// The same algebra in the basis order `perm` (new index `i` is old
    /// index `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> NilAlgebra {
        let d = self.dim();
        let mut inv = vec![0; d];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let br = (0..d)
            .map(|i| {
                (0..d).map(|j| self.br[perm[i]][perm[j]].iter().map(|(k, c)| (inv[*k], c.clone())).collect()).collect()
            })
            .collect();
        NilAlgebra {
            labels: perm.iter().map(|&p| self.labels[p].clone()).collect(),
            grading: perm.iter().map(|&p| self.grading[p]).collect(),
            k: self.k,
            br,
            weights: perm.iter().map(|&p| self.weights[p].clone()).collect(),
            origin: self.origin.as_ref().map(|o| ParabolicOrigin {
                spec: o.spec.clone(),
                roots: perm.iter().map(|&p| o.roots[p].clone()).collect(),
            }),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut doc = AlgebraJson {
            labels: self.labels.clone(),
            dim: self.dim(),
            k: self.k,
            grading: Some(self.grading.clone()),
            brackets: self.triples().into_iter().map(|(i, j, c, k)| (i, j, Coeff(fmt_q(&c)), k)).collect(),
            weights: None,
            source: None,
        };
        if self.weights.iter().any(|w| !w.is_empty()) {
            doc.weights = Some(self.weights.clone());
        }
        if let Some(s) = self.spec() {
            doc.source = Some(s.key());
        }
        serde_json::to_value(doc).expect("serializable")
    }
}

/// Assigns grade `j + 1` to basis elements whose coordinate vector first
/// leaves `c^{j+1}` at step `j`; only meaningful for coordinate series.
fn depth_grading(lcs: &[Subspace]) -> Vec<i32> {
    let d = lcs[0].ambient();
    (0..d)
        .map(|i| {
            let mut e = vec![Q::zero(); d];
            e[i] = Q::one();
            let depth = lcs.iter().take_while(|s| s.contains(&e)).count();
            depth.max(1) as i32
        })
        .collect()
}

/// Builds `n` spanned by the root vectors with `o(γ) > 0`, in the order of
/// `rs.positive_roots()`.
pub fn build_nilradical(spec: &ParabolicSpec, st: &StructureTable) -> NilAlgebra {
    let rs = st.rs();
    assert_eq!(rs.ty(), spec.ty, "structure table of a different type");
    let pos = rs.positive_roots();
    let idx: Vec<usize> = (0..pos.len()).filter(|&i| pos[i].o_value(&spec.pi0) > 0).collect();
    let local: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(l, &g)| (g, l)).collect();
    let d = idx.len();
    let mut br = vec![vec![Vec::new(); d]; d];
    for (a, &ga) in idx.iter().enumerate() {
        for (b, &gb) in idx.iter().enumerate() {
            if let Some((gc, c)) = st.bracket(ga, gb) {
                br[a][b].push((local[&gc], c));
            }
        }
    }
    let k = rs.max_root().o_value(&spec.pi0) as usize;
    NilAlgebra {
        labels: idx.iter().map(|&g| pos[g].label()).collect(),
        grading: idx.iter().map(|&g| pos[g].o_value(&spec.pi0)).collect(),
        k,
        br,
        weights: idx.iter().map(|&g| pos[g].0.clone()).collect(),
        origin: Some(ParabolicOrigin {
            spec: spec.clone(),
            roots: idx.iter().map(|&g| Some(pos[g].clone())).collect(),
        }),
    }
}

/// Remark-level test: `n` is abelian iff `pi0 = {α}` with coordinate 1 in
/// the maximal root.
pub fn is_abelian_nilradical(spec: &ParabolicSpec, rs: &RootSystem) -> bool {
    spec.pi0.len() == 1 && rs.max_root().coord(spec.pi0[0]) == 1
}

/// Grade-`i` subspace dimensions `dim g_(i)`, `i = 1..=k`.
pub fn grade_dims(spec: &ParabolicSpec, rs: &RootSystem) -> Vec<usize> {
    let k = rs.max_root().o_value(&spec.pi0) as usize;
    let mut out = vec![0; k];
    for r in rs.positive_roots() {
        let o = r.o_value(&spec.pi0);
        if o > 0 {
            out[o as usize - 1] += 1;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Coeff(String);

impl Serialize for Coeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.parse::<i64>() {
            Ok(n) => s.serialize_i64(n),
            Err(_) => s.serialize_str(&self.0),
        }
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => Ok(Coeff(n.to_string())),
            serde_json::Value::String(s) => Ok(Coeff(s)),
            other => Err(serde::de::Error::custom(format!("coefficient must be a number or string, got {other}"))),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraJson {
    labels: Vec<String>,
    dim: usize,
    k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grading: Option<Vec<i32>>,
    brackets: Vec<(usize, usize, Coeff, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<Vec<i32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
}

/// Reads the algebra JSON format, validating antisymmetry, Jacobi and
/// nilpotency. A declared `k` must match the computed nilpotency class.
pub fn ingest_algebra(json: &str) -> Result<NilAlgebra> {
    let doc: AlgebraJson = serde_json::from_str(json)?;
    if doc.labels.len() != doc.dim {
        return Err(Error::SchemaError(format!("{} labels for dimension {}", doc.labels.len(), doc.dim)));
    }
    let mut seen = BTreeMap::new();
    let mut triples = Vec::new();
    for (i, j, c, k) in &doc.brackets {
        let c = parse_q(&c.0)?;
        // a pair listed in both orders must be listed antisymmetrically
        if let Some(prev) = seen.get(&(*j, *i, *k)) {
            if *prev != -c.clone() {
                return Err(Error::SchemaError(format!("brackets ({i},{j}) and ({j},{i}) are not antisymmetric")));
            }
            continue;
        }
        seen.insert((*i, *j, *k), c.clone());
        triples.push((*i, *j, c, *k));
    }
    let alg = NilAlgebra::from_parts(doc.labels, doc.grading, &triples, doc.weights)?;
    if alg.k() != doc.k && !(doc.k == 1 && alg.k() == 0) {
        return Err(Error::SchemaError(format!("declared k = {} but the algebra is {}-step", doc.k, alg.k())));
    }
    Ok(alg)
}

/// Looks for a diagonal change of basis `e_i -> c_i e_i` carrying the
/// structure constants of `a` onto those of `b` (same dimension, basis
/// already matched by position). Returns the scalars on success.
pub fn diagonal_isomorphism(a: &NilAlgebra, b: &NilAlgebra) -> Option<Vec<Q>> {
    let d = a.dim();
    if b.dim() != d {
        return None;
    }
    // each relation reads c_i c_j a_{ij}^k = c_k b_{ij}^k; the supports must agree
    let mut eqs: Vec<(usize, usize, usize, Q)> = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let sa: BTreeMap<usize, &Q> = a.br[i][j].iter().map(|(k, c)| (*k, c)).collect();
            let sb: BTreeMap<usize, &Q> = b.br[i][j].iter().map(|(k, c)| (*k, c)).collect();
            if sa.keys().ne(sb.keys()) {
                return None;
            }
            for (k, ca) in sa {
                eqs.push((i, j, k, sb[&k] / ca));
            }
        }
    }
    // unknowns per element: a sign bit and exponents of the primes 2, 3, 5
    let primes = [2i64, 3, 5];
    let factor = |x: &Q| -> Option<(bool, Vec<i64>)> {
        let mut ex = vec![0i64; primes.len()];
        let mut n = x.numer().abs();
        let mut dd = x.denom().clone();
        for (pi, &p) in primes.iter().enumerate() {
            let p = num_bigint::BigInt::from(p);
            while (&n % &p).is_zero() {
                n /= &p;
                ex[pi] += 1;
            }
            while (&dd % &p).is_zero() {
                dd /= &p;
                ex[pi] -= 1;
            }
        }
        (n.is_one() && dd.is_one()).then_some((x.is_negative(), ex))
    };
    // log-linear system: e_k - e_i - e_j = log(ratio)
    let mut sign_rows: Vec<(Vec<usize>, bool)> = Vec::new();
    let mut mag_rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Vec<i64>> = Vec::new();
    for (i, j, k, r) in &eqs {
        let (neg, ex) = factor(r)?;
        sign_rows.push((vec![*i, *j, *k], neg));
        let mut row = vec![Q::zero(); d];
        row[*k] += q(1);
        row[*i] -= q(1);
        row[*j] -= q(1);
        mag_rows.push(row);
        rhs.push(ex);
    }
    let signs = solve_gf2(d, &sign_rows)?;
    let mut exps = vec![vec![0i64; primes.len()]; d];
    for (pi, _) in primes.iter().enumerate() {
        let aug: Vec<Vec<Q>> = mag_rows
            .iter()
            .zip(&rhs)
            .map(|(row, r)| {
                let mut row = row.clone();
                row.push(q(r[pi]));
                row
            })
            .collect();
        let red = crate::linalg::rref(&aug, d + 1);
        if red.pivots.contains(&d) {
            return None;
        }
        for (row, &p) in red.rows.iter().zip(&red.pivots) {
            let v = &row[d];
            if !v.is_integer() {
                return None;
            }
            exps[p][pi] = i64::try_from(v.to_integer()).ok()?;
        }
    }
    let scalars: Vec<Q> = (0..d)
        .map(|i| {
            let mut c = Q::one();
            for (pi, &p) in primes.iter().enumerate() {
                let e = exps[i][pi];
                let pp = q(p);
                for _ in 0..e.abs() {
                    c = if e > 0 { c * &pp } else { c / &pp };
                }
            }
            if signs[i] {
                -c
            } else {
                c
            }
        })
        .collect();
    for (i, j, k, r) in &eqs {
        if &scalars[*i] * &scalars[*j] * r != scalars[*k] {
            return None;
        }
    }
    Some(scalars)
}

/// Solves `x_i + x_j + x_k = b` over GF(2) for each row.
fn solve_gf2(n: usize, rows: &[(Vec<usize>, bool)]) -> Option<Vec<bool>> {
    let mut m: Vec<(Vec<bool>, bool)> = rows
        .iter()
        .map(|(vars, b)| {
            let mut r = vec![false; n];
            for &v in vars {
                r[v] ^= true;
            }
            (r, *b)
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| m[i].0[c]) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i].0[c] {
                let (src, b) = m[r].clone();
                for (x, y) in m[i].0.iter_mut().zip(&src) {
                    *x ^= *y;
                }
                m[i].1 ^= b;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|(_, b)| *b) {
        return None;
    }
    let mut x = vec![false; n];
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = row.1;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevbasis::build_structure_table;
    use crate::rootsys::build_root_system;

    fn nil(ty: &str, pi0: &str) -> NilAlgebra {
        let spec = ParabolicSpec::parse(ty, pi0).unwrap();
        let rs = build_root_system(spec.ty());
        build_nilradical(&spec, &build_structure_table(&rs))
    }

    fn center_dim(n: &NilAlgebra) -> usize {
        n.upper_central_series()[1].dim()
    }

    #[test]
    fn bad_specs() {
        assert!(ParabolicSpec::parse("A3", "").is_err());
        assert!(ParabolicSpec::parse("A3", "4").is_err());
        assert!(ParabolicSpec::parse("A3", "0").is_err());
        assert!(ParabolicSpec::parse("A3", "1,1").is_err());
    }

    #[test]
    fn dimensions_from_the_classification() {
        let b3 = nil("B3", "3");
        assert_eq!((b3.dim(), b3.k()), (6, 2));
        let c3 = nil("C3", "2");
        assert_eq!((c3.dim(), center_dim(&c3)), (7, 3));
        let a4 = nil("A4", "2,3");
        assert_eq!((a4.dim(), center_dim(&a4)), (8, 4));
        let c4 = nil("C4", "3");
        assert_eq!(c4.lower_central_series()[1].dim(), 6);
        let c3p = nil("C3", "2,3");
        assert_eq!(c3p.lower_central_series()[1].dim(), 5);
        assert_eq!((c3p.dim(), c3p.k()), (8, 3));
        let g2 = nil("G2", "1");
        assert_eq!((g2.dim(), g2.k()), (5, 3));
    }

    #[test]
    fn abelian_series() {
        let a = nil("A4", "2");
        assert!(a.is_abelian());
        let lcs = a.lower_central_series();
        assert_eq!(lcs.len(), 2);
        assert_eq!(lcs[1].dim(), 0);
        assert_eq!(a.k(), 1);
    }

    #[test]
    fn abelian_criterion() {
        let a5 = build_root_system("A5".parse().unwrap());
        for i in 0..5 {
            assert!(is_abelian_nilradical(&ParabolicSpec::new(a5.ty(), &[i]).unwrap(), &a5));
        }
        let b3 = build_root_system("B3".parse().unwrap());
        assert!(!is_abelian_nilradical(&ParabolicSpec::new(b3.ty(), &[2]).unwrap(), &b3));
        let e8 = build_root_system("E8".parse().unwrap());
        for i in 0..8 {
            assert!(!is_abelian_nilradical(&ParabolicSpec::new(e8.ty(), &[i]).unwrap(), &e8));
        }
    }

    /// Bracket-computed lower central series equals the grading prediction,
    /// and the upper series is its index reversal.
    #[test]
    fn central_series_match_grading() {
        for t in SimpleType::enumerate(6) {
            if t.rank() > 6 {
                continue;
            }
            let rs = build_root_system(t);
            let st = build_structure_table(&rs);
            for spec in ParabolicSpec::enumerate(t, &[1, 2]) {
                let n = build_nilradical(&spec, &st);
                let lcs = n.lower_central_series();
                assert_eq!(lcs.len() - 1, n.k(), "{}", spec.key());
                assert_eq!(n.is_abelian(), is_abelian_nilradical(&spec, &rs));
                for (j, c) in lcs.iter().enumerate() {
                    let idx: Vec<usize> = (0..n.dim()).filter(|&i| n.grading()[i] > j as i32).collect();
                    assert_eq!(*c, Subspace::coordinate(n.dim(), &idx), "{} c^{j}", spec.key());
                }
                let ucs = n.upper_central_series();
                assert_eq!(ucs.len(), lcs.len());
                for j in 0..=n.k() {
                    assert_eq!(ucs[j], lcs[n.k() - j]);
                }
                let dims = grade_dims(&spec, &rs);
                assert_eq!(dims.iter().sum::<usize>(), n.dim());
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let n = nil("C3", "2,3");
        let text = n.to_json().to_string();
        let m = ingest_algebra(&text).unwrap();
        assert_eq!(m.dim(), n.dim());
        assert_eq!(m.k(), n.k());
        assert_eq!(m.triples(), n.triples());
        assert_eq!(m.weights(), n.weights());
    }

    #[test]
    fn ingest_rejections() {
        let h3 = r#"{"labels":["X","Y","Z"],"dim":3,"k":2,"brackets":[[0,1,1,2]]}"#;
        let a = ingest_algebra(h3).unwrap();
        assert_eq!(a.k(), 2);
        assert_eq!(a.grading(), &[1, 1, 2]);
        let sl2 = r#"{"labels":["E","F","H"],"dim":3,"k":1,"brackets":[[0,1,1,2],[2,0,2,0],[2,1,-2,1]]}"#;
        assert_eq!(ingest_algebra(sl2).unwrap_err(), Error::NotNilpotent);
        let bad = r#"{"labels":["X","Y","Z","W"],"dim":4,"k":2,"brackets":[[0,1,1,2],[1,2,1,3],[0,3,1,3]]}"#;
        assert!(matches!(ingest_algebra(bad), Err(Error::JacobiFail(..)) | Err(Error::NotNilpotent)));
        let asym = r#"{"labels":["X","Y","Z"],"dim":3,"k":2,"brackets":[[0,1,1,2],[1,0,1,2]]}"#;
        assert!(matches!(ingest_algebra(asym), Err(Error::SchemaError(_))));
        assert!(matches!(ingest_algebra("{\"dim\":2}"), Err(Error::SchemaError(_))));
    }

    #[test]
    fn diagonal_isomorphism_rescales() {
        let h =
            NilAlgebra::from_parts(vec!["X".into(), "Y".into(), "Z".into()], None, &[(0, 1, q(1), 2)], None).unwrap();
        let h2 =
            NilAlgebra::from_parts(vec!["X".into(), "Y".into(), "Z".into()], None, &[(0, 1, q(-6), 2)], None).unwrap();
        let c = diagonal_isomorphism(&h, &h2).unwrap();
        assert_eq!(&c[0] * &c[1] * q(-6), c[2]);
    }
}
