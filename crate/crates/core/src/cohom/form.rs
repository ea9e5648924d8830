use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{fmt_q, parse_q, Q};

/// An exterior `p`-form on the dual basis `e^0, e^1, ...`, stored on sorted
/// index tuples.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExtForm {
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Q>,
}

/// Sorts `idx` in place and returns the permutation sign, or `None` if an
/// index repeats.
pub fn sort_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && idx[j - 1] == idx[j] {
            return None;
        }
    }
    Some(sign)
}

impl ExtForm {
    pub fn zero(degree: usize) -> Self {
        ExtForm { degree, coeffs: BTreeMap::new() }
    }

    /// `c e^{i_1} ∧ ... ∧ e^{i_p}` for indices in any order.
    pub fn monomial(idx: &[usize], c: Q) -> Self {
        let mut f = ExtForm::zero(idx.len());
        f.add_term(idx, c);
        f
    }

    /// Shorthand for a 2-form `Σ c e^i ∧ e^j`.
    pub fn two_form(terms: &[(usize, usize, Q)]) -> Self {
        let mut f = ExtForm::zero(2);
        for (i, j, c) in terms {
            f.add_term(&[*i, *j], c.clone());
        }
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Q)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, idx: &[usize]) -> Q {
        let mut v = idx.to_vec();
        match sort_sign(&mut v) {
            None => Q::zero(),
            Some(s) => self.coeffs.get(&v).map_or_else(Q::zero, |c| c * Q::from_integer(s.into())),
        }
    }

    pub fn add_term(&mut self, idx: &[usize], c: Q) {
        assert_eq!(idx.len(), self.degree, "degree mismatch");
        if c.is_zero() {
            return;
        }
        let mut v = idx.to_vec();
        let Some(s) = sort_sign(&mut v) else { return };
        let c = if s < 0 { -c } else { c };
        let e = self.coeffs.entry(v.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&v);
        }
    }

    pub fn add(&self, other: &ExtForm) -> ExtForm {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> ExtForm {
        if c.is_zero() {
            return ExtForm::zero(self.degree);
        }
        ExtForm { degree: self.degree, coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn wedge(&self, other: &ExtForm) -> ExtForm {
        let mut out = ExtForm::zero(self.degree + other.degree);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.add_term(&idx, ca * cb);
            }
        }
        out
    }

    /// `ω ∧ ... ∧ ω` (`m` factors).
    pub fn power(&self, m: usize) -> ExtForm {
        let mut out = ExtForm::monomial(&[], Q::one());
        for _ in 0..m {
            out = out.wedge(self);
            if out.is_zero() {
                break;
            }
        }
        out
    }

    /// Evaluates on vectors given in basis coordinates (determinant rule).
    pub fn eval(&self, vs: &[Vec<Q>]) -> Q {
        assert_eq!(vs.len(), self.degree);
        let mut total = Q::zero();
        for (idx, c) in &self.coeffs {
            let m: Vec<Vec<Q>> = idx.iter().map(|&i| vs.iter().map(|v| v[i].clone()).collect()).collect();
            total += c * crate::linalg::det(&m);
        }
        total
    }

    /// Skew-symmetric matrix of a 2-form on a `dim`-dimensional space.
    pub fn to_matrix(&self, dim: usize) -> Vec<Vec<Q>> {
        assert_eq!(self.degree, 2);
        let mut m = vec![vec![Q::zero(); dim]; dim];
        for (idx, c) in &self.coeffs {
            m[idx[0]][idx[1]] += c;
            m[idx[1]][idx[0]] -= c;
        }
        m
    }

    pub fn from_matrix(m: &[Vec<Q>]) -> ExtForm {
        let mut f = ExtForm::zero(2);
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                f.add_term(&[i, j], m[i][j].clone());
            }
        }
        f
    }

    /// Largest index used, plus one.
    pub fn support_dim(&self) -> usize {
        self.coeffs.keys().flat_map(|k| k.iter()).map(|i| i + 1).max().unwrap_or(0)
    }

    /// Substitutes `e^i -> Σ_j map[i][j] e^j` (a linear change of dual basis).
    pub fn pull(&self, map: &[Vec<(usize, Q)>]) -> ExtForm {
        let mut out = ExtForm::zero(self.degree);
        for (idx, c) in &self.coeffs {
            let mut partial: Vec<(Vec<usize>, Q)> = vec![(Vec::new(), c.clone())];
            for &i in idx {
                let mut next = Vec::new();
                for (pre, pc) in &partial {
                    for (j, mc) in &map[i] {
                        if pre.contains(j) {
                            continue;
                        }
                        let mut v = pre.clone();
                        v.push(*j);
                        next.push((v, pc * mc));
                    }
                }
                partial = next;
            }
            for (v, pc) in partial {
                out.add_term(&v, pc);
            }
        }
        out
    }

    /// Text such as `2 e1∧e4 - e2∧e3` with 1-based indices, or with labels.
    pub fn display(&self, labels: Option<&[String]>) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (idx, c)) in self.coeffs.iter().enumerate() {
            let neg = c < &Q::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                let _ = write!(s, "{} ", fmt_q(&a));
            }
            let names: Vec<String> = idx
                .iter()
                .map(|&i| match labels {
                    Some(l) => format!("[{}]", l[i]),
                    None => format!("e{}", i + 1),
                })
                .collect();
            s.push_str(&names.join("∧"));
        }
        s
    }
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    degree: usize,
    terms: Vec<(Vec<usize>, String)>,
}

impl Serialize for ExtForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormJson { degree: self.degree, terms: self.coeffs.iter().map(|(k, v)| (k.clone(), fmt_q(v))).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExtForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FormJson::deserialize(d)?;
        ExtForm::from_json_terms(j.degree, &j.terms).map_err(serde::de::Error::custom)
    }
}

impl ExtForm {
    fn from_json_terms(degree: usize, terms: &[(Vec<usize>, String)]) -> Result<ExtForm> {
        let mut f = ExtForm::zero(degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::SchemaError(format!("term {idx:?} has wrong degree")));
            }
            f.add_term(idx, parse_q(c)?);
        }
        Ok(f)
    }
}
