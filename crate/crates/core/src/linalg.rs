//! Exact linear algebra over the rationals.
//!
//! Elimination runs on primitive integer rows (fraction-free, content removed
//! after every update); rational reduced row echelon forms are produced only
//! at the end, which keeps canonical forms exact and comparable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-2/5"` or an integer JSON literal rendered as text.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::SchemaError(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Scales a rational row to a primitive integer row with the same span.
fn to_primitive(row: &[Q]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in row {
        if !x.is_zero() {
            l = l.lcm(x.denom());
        }
    }
    let mut out: Vec<BigInt> = row.iter().map(|x| (x * &l).to_integer()).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x /= &g;
        }
    }
}

/// Reduced row echelon form over the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rref {
    pub ncols: usize,
    pub rows: Vec<Vec<Q>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis of the right kernel `{x : A x = 0}` of the reduced matrix.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Q::zero(); self.ncols];
            v[free] = Q::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[free].is_zero() {
                    v[p] = -row[free].clone();
                }
            }
            out.push(v);
        }
        out
    }

    /// Reduces `v` against the rows; returns the residual.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

/// Row reduces a rational matrix given by rows of length `ncols`.
pub fn rref(rows: &[Vec<Q>], ncols: usize) -> Rref {
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| {
            debug_assert_eq!(r.len(), ncols);
            to_primitive(r)
        })
        .collect();
    rref_int(int_rows, ncols)
}

/// Fraction-free reduction of integer rows.
pub fn rref_int(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Rref {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let mut best: Option<usize> = None;
        for i in r..rows.len() {
            if !rows[i][c].is_zero() {
                match best {
                    Some(b) if rows[b][c].abs() <= rows[i][c].abs() => {}
                    _ => best = Some(i),
                }
            }
        }
        let Some(b) = best else { continue };
        rows.swap(r, b);
        let pivot_row = std::mem::take(&mut rows[r]);
        let p = pivot_row[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row.is_empty() || row[c].is_zero() {
                continue;
            }
            let g = p.gcd(&row[c]);
            let mp = &p / &g;
            let ma = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if y.is_zero() {
                    if !x.is_zero() {
                        *x *= &mp;
                    }
                } else {
                    *x = &*x * &mp - &ma * y;
                }
            }
            make_primitive(row);
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    let rows = rows
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let d = row[p].clone();
            row.into_iter().map(|x| Q::new(x, d.clone())).collect()
        })
        .collect();
    Rref { ncols, rows, pivots }
}

pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    rref(rows, ncols).rank()
}

/// Kernel of the linear map `x -> A x` where `A` has the given rows.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    rref(rows, ncols).nullspace()
}

/// A linear subspace of `Q^ambient` in canonical (reduced echelon) form.
/// Two subspaces are equal iff their canonical forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    form: Rref,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { form: Rref { ncols: ambient, rows: Vec::new(), pivots: Vec::new() } }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![Q::zero(); ambient];
                v[i] = Q::one();
                v
            })
            .collect();
        Subspace { form: Rref { ncols: ambient, rows, pivots: (0..ambient).collect() } }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Q>]) -> Self {
        Subspace { form: rref(vectors, ambient) }
    }

    /// Coordinate subspace spanned by the listed standard basis vectors.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vec<Q>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![Q::zero(); ambient];
                v[i] = Q::one();
                v
            })
            .collect();
        Self::span(ambient, &vs)
    }

    pub fn ambient(&self) -> usize {
        self.form.ncols
    }

    pub fn dim(&self) -> usize {
        self.form.rank()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.form.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.form.pivots
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.form.contains(v)
    }

    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        self.form.reduce(v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis().to_vec();
        vs.extend_from_slice(other.basis());
        Subspace::span(self.ambient(), &vs)
    }

    /// The annihilator `{f : f(v) = 0 for all v in self}` in dual coordinates.
    pub fn annihilator(&self) -> Subspace {
        Subspace::span(self.ambient(), &self.form.nullspace())
    }

    /// Is this a span of standard basis vectors?
    pub fn is_coordinate(&self) -> bool {
        self.form.rows.iter().all(|r| r.iter().filter(|x| !x.is_zero()).count() == 1)
    }
}

/// Determinant of a square rational matrix (Bareiss on primitive rows).
pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    if n == 0 {
        return Q::one();
    }
    let mut scale = Q::one();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let mut l = BigInt::one();
            for x in row {
                if !x.is_zero() {
                    l = l.lcm(x.denom());
                }
            }
            scale /= Q::from_integer(l.clone());
            row.iter().map(|x| (x * &l).to_integer()).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Q::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Q::from_integer(sign * &a[n - 1][n - 1]) * scale
}

/// Pfaffian of a skew-symmetric rational matrix by skew Gaussian elimination.
pub fn pfaffian(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    if n % 2 == 1 {
        return Q::zero();
    }
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut pf = Q::one();
    let mut k = 0;
    while k < n {
        // pivot: a nonzero entry in row k to the right of the diagonal
        let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) else {
            return Q::zero();
        };
        if j != k + 1 {
            a.swap(j, k + 1);
            for row in a.iter_mut() {
                row.swap(j, k + 1);
            }
            pf = -pf;
        }
        let piv = a[k][k + 1].clone();
        pf *= &piv;
        // congruence: clear row/column k and k+1 beyond the pivot block
        for i in k + 2..n {
            let f = &a[k][i] / &piv; // eliminates a[k][i] using column k+1
            let g = &a[k + 1][i] / &piv; // eliminates a[k+1][i] using column k
            if f.is_zero() && g.is_zero() {
                continue;
            }
            for r in 0..n {
                let v = &a[r][k + 1] * &f - &a[r][k] * &g;
                a[r][i] -= v;
            }
            for c in 0..n {
                let v = &a[k + 1][c] * &f - &a[k][c] * &g;
                a[i][c] -= v;
            }
        }
        k += 2;
    }
    pf
}
