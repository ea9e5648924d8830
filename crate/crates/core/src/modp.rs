//! Arithmetic in a fixed 62-bit prime field, used for randomized rank probes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::linalg::Q;

/// The largest prime below 2^62.
pub const PRIME: u64 = 4_611_686_018_427_387_847;

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, p - 2, p)
}

fn reduce_int(x: &BigInt, p: u64) -> u64 {
    let m = x.mod_floor(&BigInt::from(p));
    m.to_u64().expect("residue fits")
}

/// Image of a rational in F_p; `None` if the denominator vanishes mod p.
pub fn reduce(x: &Q, p: u64) -> Option<u64> {
    if x.is_zero() {
        return Some(0);
    }
    let n = reduce_int(x.numer(), p);
    if x.denom().is_one() {
        return Some(n);
    }
    let d = reduce_int(x.denom(), p);
    if d == 0 {
        None
    } else {
        Some(mul(n, inv(d, p), p))
    }
}

/// Signed integer into F_p.
pub fn from_i64(x: i64, p: u64) -> u64 {
    let r = x.rem_euclid(p as i64);
    r as u64
}

/// Rank of a dense matrix over F_p (consumes the matrix).
pub fn rank(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv_p = inv(a[r][c], p);
        for i in r + 1..rows {
            if a[i][c] == 0 {
                continue;
            }
            let f = mul(a[i][c], inv_p, p);
            for j in c..cols {
                if a[r][j] != 0 {
                    let v = mul(f, a[r][j], p);
                    a[i][j] = sub(a[i][j], v, p);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
