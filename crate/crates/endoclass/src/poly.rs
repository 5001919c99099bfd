//! Dense univariate polynomial helpers over Z and Q.
//!
//! Coefficient vectors are ascending in degree with no trailing zeros. These
//! routines back the cyclotomic tower (`Phi_n` by iterated exact division) and
//! the small symbolic computations in the curve module; they are not meant to
//! be a general polynomial library.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub type ZPoly = Vec<BigInt>;
pub type QPoly = Vec<BigRational>;

/// Drops trailing zeros in place.
pub fn znormalize(p: &mut ZPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

pub fn qnormalize(p: &mut QPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

pub fn zdegree(p: &ZPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    znormalize(&mut out);
    out
}

/// Exact division of `a` by monic `b`; panics if the division leaves a remainder.
pub fn zdiv_exact_monic(a: &ZPoly, b: &ZPoly) -> ZPoly {
    assert!(!b.is_empty() && b.last().unwrap().is_one(), "divisor must be monic");
    let mut rem = a.clone();
    let db = b.len() - 1;
    if rem.len() <= db {
        assert!(rem.iter().all(|c| c.is_zero()), "non-exact division");
        return Vec::new();
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - db] = c.clone();
        for (j, cb) in b.iter().enumerate() {
            let idx = k - db + j;
            rem[idx] = &rem[idx] - &c * cb;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact division");
    znormalize(&mut quot);
    quot
}

pub fn qadd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    qnormalize(&mut out);
    out
}

pub fn qsub(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    qnormalize(&mut out);
    out
}

pub fn qmul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    qnormalize(&mut out);
    out
}

pub fn qscale(a: &QPoly, s: &BigRational) -> QPoly {
    let mut out: QPoly = a.iter().map(|c| c * s).collect();
    qnormalize(&mut out);
    out
}

pub fn qeval(a: &QPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Rational roots of a nonzero rational polynomial, ascending, by the rational
/// root bound applied to the cleared-denominator integer form.
pub fn rational_roots(p: &QPoly) -> Vec<BigRational> {
    let mut q = p.clone();
    qnormalize(&mut q);
    assert!(!q.is_empty(), "zero polynomial");
    // clear denominators
    let mut denom = BigInt::one();
    for c in &q {
        denom = num::integer::lcm(denom.clone(), c.denom().clone());
    }
    let ints: Vec<BigInt> = q.iter().map(|c| (c * BigRational::from(denom.clone())).to_integer()).collect();
    let lead = ints.last().unwrap().clone();
    let trail = match ints.iter().find(|c| !c.is_zero()) {
        Some(c) => c.clone(),
        None => return Vec::new(),
    };
    let mut roots = Vec::new();
    if ints.first().unwrap().is_zero() {
        roots.push(BigRational::zero());
    }
    for pn in divisors_bigint(&trail) {
        for qd in divisors_bigint(&lead) {
            for sign in [1i64, -1] {
                let cand = BigRational::new(&pn * BigInt::from(sign), qd.clone());
                if qeval(&q, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn divisors_bigint(n: &BigInt) -> Vec<BigInt> {
    let m = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= m {
        if (&m % &d).is_zero() {
            out.push(d.clone());
            let other = &m / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Signed squarefree kernel: writes `n = d * s^2` with `d` squarefree of the
/// same sign and returns `d`.
pub fn squarefree_kernel(n: i64) -> i64 {
    assert!(n != 0);
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut d = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e % 2 == 1 {
                d *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    d *= m;
    sign * d as i64
}

static CYCLOTOMIC_CACHE: OnceLock<Mutex<HashMap<u64, Arc<ZPoly>>>> = OnceLock::new();

/// The n-th cyclotomic polynomial, monic over Z, computed by exact division
/// of `T^n - 1` by the lower levels of the tower. Results are cached.
pub fn cyclotomic_polynomial(n: u64) -> Arc<ZPoly> {
    assert!(n >= 1);
    let cache = CYCLOTOMIC_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // T^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = zdiv_exact_monic(&num, &phi_d);
        }
    }
    let arc = Arc::new(num);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(cs: &[i64]) -> ZPoly {
        let mut v: ZPoly = cs.iter().map(|&c| BigInt::from(c)).collect();
        znormalize(&mut v);
        v
    }

    #[test]
    fn cyclotomic_small() {
        // frozen low-index values of the tower
        assert_eq!(*cyclotomic_polynomial(1), zp(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(2), zp(&[1, 1]));
        assert_eq!(*cyclotomic_polynomial(3), zp(&[1, 1, 1]));
        assert_eq!(*cyclotomic_polynomial(4), zp(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(6), zp(&[1, -1, 1]));
        assert_eq!(*cyclotomic_polynomial(12), zp(&[1, 0, -1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(9), zp(&[1, 0, 0, 1, 0, 0, 1]));
        for n in 1..=120u64 {
            let phi = cyclotomic_polynomial(n);
            assert_eq!(phi.len() as u64 - 1, crate::residue::euler_phi(n), "deg Phi_{n}");
            assert!(phi.last().unwrap().is_one());
        }
        // product over divisors reassembles T^n - 1
        for n in [6u64, 8, 12, 30] {
            let mut prod = zp(&[1]);
            for d in 1..=n {
                if n % d == 0 {
                    prod = zmul(&prod, &cyclotomic_polynomial(d));
                }
            }
            let mut expect = vec![BigInt::zero(); n as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[n as usize] = BigInt::one();
            assert_eq!(prod, expect);
        }
    }

    #[test]
    fn roots_and_kernels() {
        // 27 C'(lambda) for the three-root cubic: -(1+x)(x-2)(2x-1)
        let c = qmul(
            &qmul(
                &vec![BigRational::from(BigInt::from(-1)), BigRational::from(BigInt::from(-1))],
                &vec![BigRational::from(BigInt::from(-2)), BigRational::from(BigInt::from(1))],
            ),
            &vec![BigRational::from(BigInt::from(-1)), BigRational::from(BigInt::from(2))],
        );
        let roots = rational_roots(&c);
        let expect: Vec<BigRational> = vec![
            BigRational::from(BigInt::from(-1)),
            BigRational::new(BigInt::one(), BigInt::from(2)),
            BigRational::from(BigInt::from(2)),
        ];
        assert_eq!(roots, expect);
        assert_eq!(squarefree_kernel(-16), -1);
        assert_eq!(squarefree_kernel(-7), -7);
        assert_eq!(squarefree_kernel(-8), -2);
        assert_eq!(squarefree_kernel(12), 3);
    }
}
