//! Deciding whether `n` or `R ⊕ n` carries a symplectic form.
//!
//! Existence is always certified exactly by a witness. Non-existence is
//! either one of the obstructions or a randomized rank bound: the Pfaffian
//! of a generic closed form is a polynomial of degree `dim/2` in its
//! coefficients, so each full-rank miss over `F_p` has probability at most
//! `(dim/2)/p` if a nondegenerate closed form exists.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cohom::{Complex, ExtForm};
use crate::error::{Error, Result};
use crate::linalg::{fmt_q, pfaffian, q, Q};
use crate::modp;
use crate::nilrad::NilAlgebra;
use crate::obstruct::{central_hwv_check, dim_bound_check, pt_obstruction_with, Obstruction};
use crate::rootsys::build_root_system;

pub const DEFAULT_SAMPLES: usize = 64;
/// Integer coefficients of dense witness lifts lie in `-LIFT_BOUND..=LIFT_BOUND`.
pub const LIFT_BOUND: i64 = 10_000;
const LIFT_ATTEMPTS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "n")]
    N,
    #[serde(rename = "ext")]
    Ext,
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Target::N => "n",
            Target::Ext => "R+n",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome")]
pub enum Outcome {
    SymplecticWitness { form: ExtForm, display: String },
    ObstructedNo { obstruction: Obstruction },
    ProbablyNo { samples: usize, prime: u64, max_rank: usize, failure_bound: String },
    OddDim,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub target: Target,
    pub dim: usize,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl Verdict {
    pub fn is_symplectic(&self) -> bool {
        matches!(self.outcome, Outcome::SymplecticWitness { .. })
    }

    /// `SymplecticWitness`, `ObstructedNo:<kind>`, `ProbablyNo` or `OddDim`.
    pub fn kind(&self) -> String {
        match &self.outcome {
            Outcome::SymplecticWitness { .. } => "SymplecticWitness".into(),
            Outcome::ObstructedNo { obstruction } => format!("ObstructedNo:{}", obstruction.kind()),
            Outcome::ProbablyNo { .. } => "ProbablyNo".into(),
            Outcome::OddDim => "OddDim".into(),
        }
    }

    pub fn witness(&self) -> Option<&ExtForm> {
        match &self.outcome {
            Outcome::SymplecticWitness { form, .. } => Some(form),
            _ => None,
        }
    }

    /// Process exit status for the `decide` command.
    pub fn exit_code(&self) -> i32 {
        match self.outcome {
            Outcome::SymplecticWitness { .. } => 0,
            Outcome::ObstructedNo { .. } => 1,
            Outcome::ProbablyNo { .. } => 2,
            Outcome::OddDim => 3,
        }
    }
}

/// `R T ⊕ n` with `T` central of grade 1.
pub fn extend_trivially(n: &NilAlgebra) -> NilAlgebra {
    n.extend_trivially_graded("T", 1)
}

pub fn is_closed(n: &NilAlgebra, omega: &ExtForm) -> bool {
    Complex::new(n).d(omega).is_zero()
}

/// Closed with `ω^{dim/2} ≠ 0`. The top power is `(dim/2)!` times the
/// Pfaffian of the matrix of `ω`, which is what gets evaluated.
pub fn verify_symplectic(n: &NilAlgebra, omega: &ExtForm) -> Result<bool> {
    let d = n.dim();
    if d % 2 == 1 {
        return Err(Error::OddDim(d));
    }
    if omega.degree() != 2 || omega.support_dim() > d {
        return Err(Error::SchemaError("expected a 2-form on the algebra".into()));
    }
    Ok(is_closed(n, omega) && !pfaffian(&omega.to_matrix(d)).is_zero())
}

/// Result of the randomized rank probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankCertificate {
    pub max_rank: usize,
    pub dim: usize,
    pub samples: usize,
    pub prime: u64,
    /// Probability bound `((dim/2)/p)^samples` that a nondegenerate closed
    /// form exists although none was seen.
    pub failure_bound: Q,
}

/// Primitive integer multiple of a form, reduced mod `p`.
fn reduce_form(f: &ExtForm, p: u64) -> Vec<(usize, usize, u64)> {
    let mut l = BigInt::one();
    for (_, c) in f.terms() {
        l = l.lcm(c.denom());
    }
    let l = Q::from_integer(l);
    f.terms()
        .map(|(idx, c)| {
            let v = modp::reduce(&(c * &l), p).expect("integer entries");
            (idx[0], idx[1], v)
        })
        .collect()
}

fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn modp_rank(reduced: &[Vec<(usize, usize, u64)>], coeffs: &[u64], d: usize, p: u64) -> usize {
    let mut m = vec![vec![0u64; d]; d];
    for (terms, &c) in reduced.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for &(a, b, v) in terms {
            let x = modp::mul(c, v, p);
            m[a][b] = modp::add(m[a][b], x, p);
            m[b][a] = modp::sub(m[b][a], x, p);
        }
    }
    modp::rank(m, p)
}

/// Maximum rank over `samples` random combinations of `closed` in `F_p`.
pub fn max_closed_rank_of(closed: &[ExtForm], d: usize, samples: usize, prime: u64, seed: u64) -> RankCertificate {
    let reduced: Vec<_> = closed.iter().map(|f| reduce_form(f, prime)).collect();
    let max_rank = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = sample_rng(seed, s as u64);
            let coeffs: Vec<u64> = (0..reduced.len()).map(|_| rng.gen_range(0..prime)).collect();
            modp_rank(&reduced, &coeffs, d, prime)
        })
        .max()
        .unwrap_or(0);
    let per = Q::new(BigInt::from(d / 2), BigInt::from(prime));
    let failure_bound = num_traits::pow(per, samples);
    RankCertificate { max_rank, dim: d, samples, prime, failure_bound }
}

pub fn max_closed_rank(n: &NilAlgebra, samples: usize, prime: u64, seed: u64) -> RankCertificate {
    max_closed_rank_of(&Complex::new(n).closed_2form_basis(), n.dim(), samples, prime, seed)
}

/// Prefers forms pairing top-grade duals with grade-1 duals, then sparse
/// ones, accepting each if it raises the rank of the running sum.
fn greedy_witness(n: &NilAlgebra, closed: &[ExtForm]) -> Option<ExtForm> {
    let d = n.dim();
    let g = n.grading();
    let top = g.iter().copied().max().unwrap_or(1);
    let shape = |f: &ExtForm| {
        let paired = f.terms().all(|(idx, _)| {
            let (x, y) = (g[idx[0]], g[idx[1]]);
            (x == 1 && y == top) || (x == top && y == 1)
        });
        (!paired, f.terms().count())
    };
    let mut order: Vec<usize> = (0..closed.len()).collect();
    order.sort_by_key(|&i| shape(&closed[i]));
    let p = modp::PRIME;
    let reduced: Vec<_> = closed.iter().map(|f| reduce_form(f, p)).collect();
    let mut coeffs = vec![0u64; closed.len()];
    let mut rank = 0;
    for i in order {
        coeffs[i] = 1;
        let r = modp_rank(&reduced, &coeffs, d, p);
        if r > rank {
            rank = r;
            if rank == d {
                break;
            }
        } else {
            coeffs[i] = 0;
        }
    }
    if rank < d {
        return None;
    }
    let mut w = ExtForm::zero(2);
    for (f, c) in closed.iter().zip(&coeffs) {
        if *c == 1 {
            w = w.add(f);
        }
    }
    (!pfaffian(&w.to_matrix(d)).is_zero()).then_some(w)
}

fn dense_witness(n: &NilAlgebra, closed: &[ExtForm], seed: u64) -> Option<ExtForm> {
    let d = n.dim();
    let mut rng = sample_rng(seed, u64::MAX);
    for _ in 0..LIFT_ATTEMPTS {
        let mut w = ExtForm::zero(2);
        for f in closed {
            let c = rng.gen_range(-LIFT_BOUND..=LIFT_BOUND);
            w = w.add(&f.scale(&q(c)));
        }
        if !pfaffian(&w.to_matrix(d)).is_zero() {
            return Some(w);
        }
    }
    None
}

/// A closed nondegenerate form built from the closed basis, if the rank
/// probe found one.
pub fn find_witness(n: &NilAlgebra, closed: &[ExtForm], seed: u64) -> Option<ExtForm> {
    greedy_witness(n, closed).or_else(|| dense_witness(n, closed, seed))
}

/// 64-bit seed derived from a case key.
pub fn case_seed(key: &str) -> u64 {
    let h = Sha256::digest(key.as_bytes());
    u64::from_le_bytes(h[..8].try_into().expect("8 bytes"))
}

/// Explicit seed, else `NILSYMP_SEED`, else the hash of the key.
pub fn resolve_seed(explicit: Option<u64>, key: &str) -> u64 {
    explicit
        .or_else(|| std::env::var("NILSYMP_SEED").ok().and_then(|s| s.trim().parse().ok()))
        .unwrap_or_else(|| case_seed(key))
}

/// Key used for seeding: the parabolic spec when known, else the JSON.
pub fn algebra_key(n: &NilAlgebra) -> String {
    match n.spec() {
        Some(s) => s.key(),
        None => n.to_json().to_string(),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DecideOptions {
    pub samples: usize,
    pub seed: u64,
}

impl DecideOptions {
    pub fn for_algebra(n: &NilAlgebra, target: Target) -> Self {
        DecideOptions { samples: DEFAULT_SAMPLES, seed: case_seed(&format!("{}/{}", algebra_key(n), target)) }
    }
}

/// Obstructions on `n` itself; each one rules out both `n` and `R ⊕ n`.
/// Returns the closed 2-forms of `n` when they were computed.
pub fn obstructions(n: &NilAlgebra) -> (Option<Obstruction>, Option<Vec<ExtForm>>) {
    if let Some(o) = dim_bound_check(n) {
        return (Some(o), None);
    }
    if n.is_abelian() {
        return (None, None);
    }
    let closed = Complex::new(n).closed_2form_basis();
    for t in 1..=n.k().div_ceil(2) {
        if let Ok(Some(o)) = pt_obstruction_with(n, t, &closed) {
            return (Some(o), Some(closed));
        }
    }
    if let Some(spec) = n.spec() {
        let rs = build_root_system(spec.ty());
        if let Ok(Some(o)) = central_hwv_check(spec, &rs) {
            return (Some(o), Some(closed));
        }
    }
    (None, Some(closed))
}

pub fn decide(n: &NilAlgebra, target: Target, opts: &DecideOptions) -> Verdict {
    let tgt = match target {
        Target::N => n.clone(),
        Target::Ext => extend_trivially(n),
    };
    let dim = tgt.dim();
    let verdict = |outcome| Verdict { target, dim, outcome };
    if dim % 2 == 1 {
        return verdict(Outcome::OddDim);
    }
    let (obstruction, closed_n) = obstructions(n);
    if let Some(o) = obstruction {
        return verdict(Outcome::ObstructedNo { obstruction: o });
    }
    let closed = match (target, closed_n) {
        (Target::N, Some(c)) => c,
        _ => Complex::new(&tgt).closed_2form_basis(),
    };
    let cert = max_closed_rank_of(&closed, dim, opts.samples, modp::PRIME, opts.seed);
    if cert.max_rank == dim {
        let form = find_witness(&tgt, &closed, opts.seed).expect("full rank over F_p forces a rational witness");
        debug_assert!(is_closed(&tgt, &form));
        let display = form.display(Some(tgt.labels()));
        return verdict(Outcome::SymplecticWitness { form, display });
    }
    verdict(Outcome::ProbablyNo {
        samples: cert.samples,
        prime: cert.prime,
        max_rank: cert.max_rank,
        failure_bound: fmt_q(&cert.failure_bound),
    })
}

/// `2^-40`, the largest failure bound accepted for a `ProbablyNo`.
pub fn failure_bound_limit() -> Q {
    Q::new(BigInt::one(), BigInt::one() << 40)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevbasis::build_structure_table;
    use crate::nilrad::{build_nilradical, ParabolicSpec};

    fn nil(ty: &str, pi0: &str) -> NilAlgebra {
        let spec = ParabolicSpec::parse(ty, pi0).unwrap();
        build_nilradical(&spec, &build_structure_table(&build_root_system(spec.ty())))
    }

    fn run(n: &NilAlgebra, t: Target) -> Verdict {
        decide(n, t, &DecideOptions::for_algebra(n, t))
    }

    #[test]
    fn abelian_plane() {
        let a = nil("A2", "1");
        let c = max_closed_rank(&a, 4, modp::PRIME, 1);
        assert_eq!(c.max_rank, 2);
        let v = run(&a, Target::N);
        assert_eq!(v.witness().unwrap(), &ExtForm::monomial(&[0, 1], q(1)));
    }

    #[test]
    fn odd_dimension() {
        let h = nil("A2", "1,2");
        assert_eq!(verify_symplectic(&h, &ExtForm::zero(2)), Err(Error::OddDim(3)));
        assert_eq!(run(&h, Target::N).outcome, Outcome::OddDim);
        assert!(run(&h, Target::Ext).is_symplectic());
    }

    #[test]
    fn free_two_step_on_three() {
        let n = nil("B3", "3");
        let v = run(&n, Target::N);
        assert!(verify_symplectic(&n, v.witness().unwrap()).unwrap());
    }

    #[test]
    fn quaternionic_pair_is_obstructed() {
        let n = nil("C3", "2,3");
        let v = run(&n, Target::N);
        assert!(matches!(v.outcome, Outcome::ObstructedNo { obstruction: Obstruction::PtVanishes { t: 2, .. } }));
    }

    #[test]
    fn failure_bound_is_small() {
        let n = nil("G2", "1");
        let e = extend_trivially(&n);
        let c = max_closed_rank(&e, DEFAULT_SAMPLES, modp::PRIME, 7);
        assert!(c.max_rank < 6);
        assert!(c.failure_bound <= failure_bound_limit());
    }

    #[test]
    fn extension_cohomology() {
        let h = nil("A2", "1,2");
        let e = extend_trivially(&h);
        assert_eq!(e.dim(), 4);
        assert_eq!(e.lower_central_series()[1].dim(), 1);
        assert_eq!(Complex::new(&e).betti(1), Complex::new(&h).betti(1) + 1);
    }

    #[test]
    fn seeds() {
        assert_eq!(case_seed("B3:3"), case_seed("B3:3"));
        assert_ne!(case_seed("B3:3"), case_seed("B3:2"));
        assert_eq!(resolve_seed(Some(5), "x"), 5);
    }
}
