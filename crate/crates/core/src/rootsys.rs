//! Root systems of the split simple Lie algebras in Bourbaki/Humphreys
//! numbering, realized in simple-root coordinates.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{q, q_frac, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A Dynkin type such as `A5` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(Error::InvalidRank { family: family.letter(), rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All valid types with rank at most `max_rank` in the classical
    /// families, together with every exceptional type.
    pub fn enumerate(max_rank: usize) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for fam in [Family::A, Family::B, Family::C, Family::D] {
            for r in 1..=max_rank {
                if let Ok(t) = SimpleType::new(fam, r) {
                    out.push(t);
                }
            }
        }
        for (fam, r) in [(Family::E, 6), (Family::E, 7), (Family::E, 8), (Family::F, 4), (Family::G, 2)] {
            out.push(SimpleType { family: fam, rank: r });
        }
        out
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = chars.next().and_then(Family::from_letter).ok_or_else(|| Error::BadTypeCode(s.into()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::BadTypeCode(s.into()))?;
        SimpleType::new(fam, rank)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SimpleType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A root written in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVec(pub Vec<i32>);

impl RootVec {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVec(v)
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn coord(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> RootVec {
        RootVec(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i32) -> RootVec {
        RootVec(self.0.iter().map(|c| c * k).collect())
    }

    /// Sum of the coordinates indexed by `pi0` (the grading degree).
    pub fn o_value(&self, pi0: &[usize]) -> i32 {
        pi0.iter().map(|&i| self.0[i]).sum()
    }

    /// Compact text form such as `g1+2g2` (1-based simple roots).
    pub fn label(&self) -> String {
        let mut s = String::new();
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if c.abs() != 1 {
                s.push_str(&c.abs().to_string());
            }
            s.push_str(&format!("g{}", i + 1));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

pub fn o_value(gamma: &RootVec, pi0: &[usize]) -> i32 {
    gamma.o_value(pi0)
}

pub fn coord(gamma: &RootVec, alpha_index: usize) -> i32 {
    gamma.coord(alpha_index)
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    ty: SimpleType,
    positive: Vec<RootVec>,
    index: HashMap<RootVec, usize>,
    cartan: Vec<Vec<i32>>,
    bilinear: Vec<Vec<Q>>,
    max_root: RootVec,
}

/// Squared lengths of the simple roots and the nonzero off-diagonal inner
/// products, long roots normalized to squared length 2.
fn simple_data(t: SimpleType) -> (Vec<Q>, Vec<(usize, usize, Q)>) {
    let n = t.rank;
    let chain =
        |upto: usize, val: Q| -> Vec<(usize, usize, Q)> { (0..upto).map(|i| (i, i + 1, val.clone())).collect() };
    match t.family {
        Family::A => (vec![q(2); n], chain(n - 1, q(-1))),
        Family::B => {
            let mut len = vec![q(2); n];
            len[n - 1] = q(1);
            (len, chain(n - 1, q(-1)))
        }
        Family::C => {
            let mut len = vec![q(1); n];
            len[n - 1] = q(2);
            let mut edges = chain(n - 2, q_frac(-1, 2));
            edges.push((n - 2, n - 1, q(-1)));
            (len, edges)
        }
        Family::D => {
            let mut edges = chain(n - 2, q(-1));
            edges.push((n - 3, n - 1, q(-1)));
            (vec![q(2); n], edges)
        }
        Family::E => {
            let all = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
            let edges = all.iter().filter(|&&(a, b)| a < n && b < n).map(|&(a, b)| (a, b, q(-1))).collect();
            (vec![q(2); n], edges)
        }
        Family::F => (vec![q(2), q(2), q(1), q(1)], vec![(0, 1, q(-1)), (1, 2, q(-1)), (2, 3, q_frac(-1, 2))]),
        Family::G => (vec![q_frac(2, 3), q(2)], vec![(0, 1, q(-1))]),
    }
}

impl RootSystem {
    pub fn ty(&self) -> SimpleType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    /// Positive roots ordered by (height, lexicographic coordinates).
    pub fn positive_roots(&self) -> &[RootVec] {
        &self.positive
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn bilinear(&self) -> &[Vec<Q>] {
        &self.bilinear
    }

    pub fn max_root(&self) -> &RootVec {
        &self.max_root
    }

    pub fn simple_root(&self, i: usize) -> RootVec {
        RootVec::simple(self.rank(), i)
    }

    /// Position of a positive root in `positive_roots`.
    pub fn index_of(&self, r: &RootVec) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, r: &RootVec) -> bool {
        self.index.contains_key(r) || self.index.contains_key(&r.neg())
    }

    pub fn inner(&self, a: &RootVec, b: &RootVec) -> Q {
        let mut s = Q::zero();
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y != 0 && !self.bilinear[i][j].is_zero() {
                    s += &self.bilinear[i][j] * q(x as i64 * y as i64);
                }
            }
        }
        s
    }

    pub fn norm2(&self, a: &RootVec) -> Q {
        self.inner(a, a)
    }

    /// The integer `2 (gamma, alpha_i) / (alpha_i, alpha_i)`.
    pub fn pairing(&self, gamma: &RootVec, i: usize) -> i32 {
        gamma.0.iter().zip(&self.cartan[i]).map(|(g, c)| g * c).sum()
    }

    fn reflect_unchecked(&self, gamma: &RootVec, i: usize) -> RootVec {
        let mut v = gamma.clone();
        v.0[i] -= self.pairing(gamma, i);
        v
    }

    /// Simple reflection `s_{alpha_i}` applied to a root.
    pub fn reflect(&self, target: &RootVec, alpha_index: usize) -> Result<RootVec> {
        if alpha_index >= self.rank() {
            return Err(Error::BadIndex(alpha_index));
        }
        if target.0.len() != self.rank() || !self.is_root(target) {
            return Err(Error::NotARoot(target.0.clone()));
        }
        Ok(self.reflect_unchecked(target, alpha_index))
    }

    /// The largest `p` with `beta - p alpha` a root (or zero).
    pub fn string_down(&self, alpha: &RootVec, beta: &RootVec) -> i32 {
        let mut p = 0;
        let mut cur = beta.sub(alpha);
        while self.is_root(&cur) {
            p += 1;
            cur = cur.sub(alpha);
        }
        p
    }

    /// Roots in ε-coordinates for the classical families.
    pub fn epsilon_coords(&self, r: &RootVec) -> Option<Vec<i32>> {
        let n = self.rank();
        let mut e = vec![0; if self.ty.family == Family::A { n + 1 } else { n }];
        for (i, &c) in r.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            match (self.ty.family, i) {
                (Family::A, _) => {
                    e[i] += c;
                    e[i + 1] -= c;
                }
                (Family::B | Family::C | Family::D, i) if i + 1 < n => {
                    e[i] += c;
                    e[i + 1] -= c;
                }
                (Family::B, _) => e[n - 1] += c,
                (Family::C, _) => e[n - 1] += 2 * c,
                (Family::D, _) => {
                    e[n - 2] += c;
                    e[n - 1] += c;
                }
                _ => return None,
            }
        }
        Some(e)
    }

    /// Label like `e1+e3` or `2e2` for classical roots, else `g`-coordinates.
    pub fn epsilon_label(&self, r: &RootVec) -> String {
        let Some(e) = self.epsilon_coords(r) else { return r.label() };
        let mut s = String::new();
        for (i, &c) in e.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if c.abs() != 1 {
                s.push_str(&c.abs().to_string());
            }
            s.push_str(&format!("e{}", i + 1));
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.ty.to_string(),
            "positive_roots": self.positive.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
            "max_root": self.max_root.0,
        })
    }
}

/// Builds the positive system by closing the simple roots under simple
/// reflections.
pub fn build_root_system(t: SimpleType) -> RootSystem {
    let n = t.rank;
    let (len2, edges) = simple_data(t);
    let mut bilinear = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        bilinear[i][i] = len2[i].clone();
    }
    for (a, b, v) in edges {
        bilinear[a][b] = v.clone();
        bilinear[b][a] = v;
    }
    let cartan: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = q(2) * &bilinear[i][j] / &bilinear[i][i];
                    assert!(v.is_integer(), "non-integral Cartan entry");
                    i32::try_from(v.to_integer()).unwrap()
                })
                .collect()
        })
        .collect();

    let mut rs = RootSystem {
        ty: t,
        positive: Vec::new(),
        index: HashMap::new(),
        cartan,
        bilinear,
        max_root: RootVec(vec![0; n]),
    };

    let mut seen: std::collections::HashSet<RootVec> = std::collections::HashSet::new();
    let mut queue: VecDeque<RootVec> = (0..n).map(|i| RootVec::simple(n, i)).collect();
    for r in &queue {
        seen.insert(r.clone());
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            let s = rs.reflect_unchecked(&r, i);
            if s.is_positive() && seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    let mut positive: Vec<RootVec> = seen.into_iter().collect();
    positive.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    rs.index = positive.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
    rs.max_root = positive.last().cloned().expect("nonempty root system");
    rs.positive = positive;
    rs
}

/// Builds a root system from a type code like `"E7"`.
pub fn parse_and_build(code: &str) -> Result<RootSystem> {
    Ok(build_root_system(code.parse()?))
}

impl RootSystem {
    /// Checks that `max_root` is the unique positive root not raisable by a
    /// simple root.
    pub fn maximal_roots(&self) -> Vec<&RootVec> {
        self.positive.iter().filter(|r| (0..self.rank()).all(|i| !self.is_root(&r.add(&self.simple_root(i))))).collect()
    }

    /// Does `(a, b) < 0` hold for distinct simple roots `a`, `b`?
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.bilinear[i][j].is_negative()
    }
}
