//! Chevalley structure constants `N_{a,b}` via extraspecial pairs.
//!
//! Constants are integers; they are kept as `i32` and handed out as
//! rationals where the cohomology code needs them.

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use crate::rootsys::{RootSystem, RootVec};

#[derive(Debug, Clone)]
pub struct StructureTable {
    rs: RootSystem,
    /// `sum[a][b]` is the index of `a + b` among the positive roots.
    sum: Vec<Vec<Option<usize>>>,
    /// `n[(a, b)]` for positive `a`, `b` with `a + b` a root.
    n: HashMap<(usize, usize), i32>,
    /// Extraspecial pair of each non-simple positive root.
    extraspecial: BTreeMap<usize, (usize, usize)>,
}

/// Canonical table: every extraspecial constant is positive.
pub fn build_structure_table(rs: &RootSystem) -> StructureTable {
    build_with_signs(rs, |_| 1)
}

/// Table whose extraspecial signs are drawn from `seed`. Any such choice is
/// again a Chevalley basis.
pub fn build_resigned_table(rs: &RootSystem, seed: u64) -> StructureTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build_with_signs(rs, move |_| if rng.gen::<bool>() { 1 } else { -1 })
}

fn build_with_signs(rs: &RootSystem, mut sign: impl FnMut(usize) -> i32) -> StructureTable {
    let pos = rs.positive_roots();
    let m = pos.len();
    let sum: Vec<Vec<Option<usize>>> =
        (0..m).map(|a| (0..m).map(|b| rs.index_of(&pos[a].add(&pos[b]))).collect()).collect();
    let mut st = StructureTable { rs: rs.clone(), sum, n: HashMap::new(), extraspecial: BTreeMap::new() };

    // positive roots are sorted by height, so every constant a formula needs
    // has already been filled in when xi is reached
    for xi in 0..m {
        let mut pairs: Vec<(usize, usize)> =
            (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).filter(|&(a, b)| st.sum[a][b] == Some(xi)).collect();
        if pairs.is_empty() {
            continue;
        }
        pairs.sort();
        let (r1, s1) = pairs[0];
        st.extraspecial.insert(xi, (r1, s1));
        let p = rs.string_down(&pos[r1], &pos[s1]);
        let v = sign(xi) * (p + 1);
        st.set(r1, s1, v);
        for &(r, s) in &pairs[1..] {
            let v = st.special_from_extraspecial(r, s, r1, s1, xi);
            st.set(r, s, v);
        }
    }
    st
}

impl StructureTable {
    fn set(&mut self, a: usize, b: usize, v: i32) {
        self.n.insert((a, b), v);
        self.n.insert((b, a), -v);
    }

    fn special_from_extraspecial(&self, r: usize, s: usize, r1: usize, s1: usize, xi: usize) -> i32 {
        let pos = self.rs.positive_roots();
        let (rv, sv, r1v, s1v) = (&pos[r], &pos[s], &pos[r1], &pos[s1]);
        let mut acc = Q::zero();
        let d1 = sv.sub(r1v);
        if self.rs.is_root(&d1) {
            let t = q((self.n_roots(sv, &r1v.neg()) * self.n_roots(rv, &s1v.neg())) as i64);
            acc += t / self.rs.norm2(&d1);
        }
        let d2 = rv.sub(r1v);
        if self.rs.is_root(&d2) {
            let t = q((self.n_roots(&r1v.neg(), rv) * self.n_roots(sv, &s1v.neg())) as i64);
            acc += t / self.rs.norm2(&d2);
        }
        let v = self.rs.norm2(&pos[xi]) * acc / q(self.n[&(r1, s1)] as i64);
        assert!(v.is_integer() && !v.is_zero(), "extraspecial propagation produced {v}");
        i32::try_from(v.to_integer()).expect("small constant")
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    pub fn extraspecial_pairs(&self) -> &BTreeMap<usize, (usize, usize)> {
        &self.extraspecial
    }

    /// Index of `a + b` for positive root indices, if it is a root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        self.sum[a][b]
    }

    /// `N_{a,b}` for positive root indices; zero when `a + b` is not a root.
    pub fn n_pos(&self, a: usize, b: usize) -> i32 {
        self.n.get(&(a, b)).copied().unwrap_or(0)
    }

    /// `N_{a,b}` for arbitrary roots, zero unless `a + b` is a root.
    pub fn n_roots(&self, a: &RootVec, b: &RootVec) -> i32 {
        let c = a.add(b);
        if !self.rs.is_root(&c) {
            return 0;
        }
        let (pa, pb) = (a.is_positive(), b.is_positive());
        match (pa, pb) {
            (true, true) => self.n_pos(self.rs.index_of(a).unwrap(), self.rs.index_of(b).unwrap()),
            (false, false) => -self.n_roots(&a.neg(), &b.neg()),
            (false, true) => -self.n_roots(b, a),
            (true, false) => {
                // a, b, -c sum to zero: N_{a,b}/|c|^2 = N_{b,-c}/|a|^2 = N_{-c,a}/|b|^2
                let (ratio, v) = if c.is_positive() {
                    (self.rs.norm2(&c) / self.rs.norm2(a), self.n_roots(&c, &b.neg()))
                } else {
                    (self.rs.norm2(&c) / self.rs.norm2(b), self.n_roots(&c.neg(), a))
                };
                let r = ratio * q(v as i64);
                assert!(r.is_integer());
                i32::try_from(r.to_integer()).unwrap()
            }
        }
    }

    /// `[X_a, X_b]` on positive root vectors as `(index of a+b, N_{a,b})`.
    pub fn bracket(&self, a: usize, b: usize) -> Option<(usize, Q)> {
        let c = self.sum[a][b]?;
        Some((c, q(self.n_pos(a, b) as i64)))
    }

    /// Triples `[a, b, N_{a,b}, a+b]` over positive root indices, `a < b`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut rows: Vec<[i64; 4]> = self
            .n
            .iter()
            .filter(|((a, b), _)| a < b)
            .map(|(&(a, b), &v)| [a as i64, b as i64, v as i64, self.sum[a][b].unwrap() as i64])
            .collect();
        rows.sort();
        serde_json::json!({ "type": self.rs.ty().to_string(), "brackets": rows })
    }

    /// Checks antisymmetry, `|N_{a,b}| = p + 1`, and the Jacobi identity on
    /// the whole split algebra (both root spaces and the Cartan part).
    pub fn validate(&self) -> Result<()> {
        let pos = self.rs.positive_roots();
        for (&(a, b), &v) in &self.n {
            if self.n_pos(b, a) != -v {
                return Err(Error::JacobiFail(a, b, a));
            }
            if v.abs() != self.rs.string_down(&pos[a], &pos[b]) + 1 {
                return Err(Error::JacobiFail(a, b, usize::MAX));
            }
        }
        FullAlgebra::new(self).jacobi()
    }
}

/// The full split algebra in the basis `e_r` (positive then negative roots)
/// followed by the simple coroots.
struct FullAlgebra<'a> {
    st: &'a StructureTable,
    roots: Vec<RootVec>,
    index: HashMap<RootVec, usize>,
    /// Coroot of each root in simple-coroot coordinates.
    coroot: Vec<Vec<i64>>,
}

type Sparse = BTreeMap<usize, i64>;

impl<'a> FullAlgebra<'a> {
    fn new(st: &'a StructureTable) -> Self {
        let rs = &st.rs;
        let mut roots: Vec<RootVec> = rs.positive_roots().to_vec();
        roots.extend(rs.positive_roots().iter().map(RootVec::neg));
        let index = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let coroot = roots
            .iter()
            .map(|r| {
                let n2 = rs.norm2(r);
                (0..rs.rank())
                    .map(|i| {
                        let c = q(r.0[i] as i64) * rs.norm2(&rs.simple_root(i)) / &n2;
                        assert!(c.is_integer());
                        i64::try_from(c.to_integer()).unwrap()
                    })
                    .collect()
            })
            .collect();
        FullAlgebra { st, roots, index, coroot }
    }

    fn dim(&self) -> usize {
        self.roots.len() + self.st.rs.rank()
    }

    fn basis_bracket(&self, x: usize, y: usize, coeff: i64, out: &mut Sparse) {
        let nr = self.roots.len();
        match (x < nr, y < nr) {
            (true, true) => {
                let s = self.roots[x].add(&self.roots[y]);
                if s.0.iter().all(|&c| c == 0) {
                    for (i, &c) in self.coroot[x].iter().enumerate() {
                        *out.entry(nr + i).or_default() += coeff * c;
                    }
                } else if let Some(&k) = self.index.get(&s) {
                    *out.entry(k).or_default() += coeff * self.st.n_roots(&self.roots[x], &self.roots[y]) as i64;
                }
            }
            (false, true) => {
                let c = self.st.rs.pairing(&self.roots[y], x - nr) as i64;
                *out.entry(y).or_default() += coeff * c;
            }
            (true, false) => self.basis_bracket(y, x, -coeff, out),
            (false, false) => {}
        }
    }

    fn bracket(&self, u: &Sparse, v: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&i, &a) in u {
            for (&j, &b) in v {
                if a != 0 && b != 0 {
                    self.basis_bracket(i, j, a * b, &mut out);
                }
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn jacobi(&self) -> Result<()> {
        let d = self.dim();
        let unit = |i: usize| -> Sparse { [(i, 1)].into_iter().collect() };
        let pair: Vec<Vec<Sparse>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut o = Sparse::new();
                        self.basis_bracket(i, j, 1, &mut o);
                        o.retain(|_, c| *c != 0);
                        o
                    })
                    .collect()
            })
            .collect();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let mut tot = self.bracket(&pair[i][j], &unit(k));
                    for (key, v) in self.bracket(&pair[j][k], &unit(i)) {
                        *tot.entry(key).or_default() += v;
                    }
                    for (key, v) in self.bracket(&pair[k][i], &unit(j)) {
                        *tot.entry(key).or_default() += v;
                    }
                    if tot.values().any(|v| *v != 0) {
                        return Err(Error::JacobiFail(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Sign of an integer constant, for callers comparing sign patterns.
pub fn sign_of(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
