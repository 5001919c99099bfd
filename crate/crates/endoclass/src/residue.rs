//! Arithmetic in the unit group `(Z/NZ)^x`.
//!
//! Residues are kept as canonical representatives in `[0, N)`; units carry
//! their modulus and are validated on construction. Intervals with exact
//! rational endpoints enumerate the coprime integers they contain, which is
//! how index sets like `[1, N/3]_Z` are produced elsewhere in the crate.

use crate::{Error, Result};
use num::rational::Ratio;
use num::Integer;
use std::collections::BTreeSet;

/// A residue modulus, at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(n: u64) -> Result<Modulus> {
        if n == 0 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Modulus(n))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// gcd for u64 operands.
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `a * b mod n` without overflow.
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// `a^e mod n` by square and multiply.
pub fn pow_mod(mut a: u64, mut e: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, n);
        }
        a = mul_mod(a, a, n);
        e >>= 1;
    }
    acc
}

/// Prime factorization by trial division, ascending primes.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler phi via the factorization of `n`.
pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product::<u64>()
        .max(1)
}

/// True when `n` is a power of a single prime (1 is excluded).
pub fn is_prime_power(n: u64) -> bool {
    factor(n).len() == 1
}

/// The prime below a prime power, or an error.
pub fn prime_of(n: u64) -> Result<u64> {
    let f = factor(n);
    if f.len() != 1 {
        return Err(Error::PrimePowerRequired(n));
    }
    Ok(f[0].0)
}

/// Ascending unit representatives in `[1, N)`. For N = 1 this is empty.
pub fn units(n: u64) -> Vec<u64> {
    (1..n).filter(|&a| gcd(a, n) == 1).collect()
}

/// Solves `x = r_i mod m_i` for pairwise coprime moduli; returns `x` modulo
/// the product.
pub fn crt(congruences: &[(u64, u64)]) -> Result<u64> {
    let mut x: u64 = 0;
    let mut modulus: u64 = 1;
    for &(r, m) in congruences {
        if m == 0 || gcd(modulus, m) != 1 {
            return Err(Error::Internal(format!("crt moduli not coprime at {m}")));
        }
        if m == 1 {
            continue;
        }
        // shift x by a multiple of the accumulated modulus to hit r mod m
        let diff = (r % m + m - x % m) % m;
        let inv = UnitResidue::new(modulus % m, m)?.inv().value();
        x += modulus * mul_mod(diff, inv, m);
        modulus *= m;
    }
    Ok(x % modulus)
}

/// Moebius function.
pub fn moebius(n: u64) -> i64 {
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A validated unit residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitResidue {
    value: u64,
    modulus: u64,
}

impl UnitResidue {
    pub fn new(value: u64, modulus: u64) -> Result<UnitResidue> {
        if modulus == 0 {
            return Err(Error::InvalidModulus(modulus));
        }
        let v = value % modulus;
        if modulus > 1 && gcd(v, modulus) != 1 {
            return Err(Error::NotAUnit { value, modulus });
        }
        Ok(UnitResidue { value: v, modulus })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    /// The negation `-a`, again a unit.
    pub fn negate(self) -> UnitResidue {
        UnitResidue {
            value: if self.value == 0 { 0 } else { self.modulus - self.value },
            modulus: self.modulus,
        }
    }

    /// Multiplication by `s`, the map `theta_s` on units.
    pub fn mul(self, s: UnitResidue) -> UnitResidue {
        debug_assert_eq!(self.modulus, s.modulus);
        UnitResidue {
            value: mul_mod(self.value, s.value, self.modulus),
            modulus: self.modulus,
        }
    }

    /// The inverse unit.
    pub fn inv(self) -> UnitResidue {
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (self.modulus as i128, self.value as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        let v = t.rem_euclid(self.modulus as i128) as u64;
        UnitResidue { value: v, modulus: self.modulus }
    }

    pub fn pow(self, e: u64) -> UnitResidue {
        UnitResidue {
            value: pow_mod(self.value, e, self.modulus),
            modulus: self.modulus,
        }
    }
}

/// Multiplicative order of the unit `a` modulo `n`.
pub fn multiplicative_order(a: u64, n: u64) -> Result<u64> {
    let a = UnitResidue::new(a, n)?;
    if n == 1 {
        return Ok(1);
    }
    let mut x = a;
    let mut ord = 1u64;
    while x.value() != 1 {
        x = x.mul(a);
        ord += 1;
        debug_assert!(ord <= n);
    }
    Ok(ord)
}

/// The cyclic subgroup generated by `a`, ascending.
pub fn cyclic_subgroup(a: u64, n: u64) -> Result<Vec<u64>> {
    let a = UnitResidue::new(a, n)?;
    if n == 1 {
        return Ok(vec![0]);
    }
    let mut set = BTreeSet::new();
    let mut x = UnitResidue::new(1, n)?;
    loop {
        if !set.insert(x.value()) {
            break;
        }
        x = x.mul(a);
    }
    Ok(set.into_iter().collect())
}

/// Checks that `subgroup` (arbitrary order, values mod n) is a subgroup of the units.
pub fn validate_subgroup(subgroup: &[u64], n: u64) -> Result<Vec<u64>> {
    let mut set = BTreeSet::new();
    for &h in subgroup {
        let u = UnitResidue::new(h, n)?;
        set.insert(u.value());
    }
    if n > 1 && !set.contains(&1) {
        return Err(Error::NotASubgroup { modulus: n });
    }
    for &a in &set {
        for &b in &set {
            if !set.contains(&mul_mod(a, b, n)) {
                return Err(Error::NotASubgroup { modulus: n });
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// An interval with exact rational endpoints, restricted to integers coprime
/// to a modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoprimeInterval {
    pub lower: Ratio<i64>,
    pub upper: Ratio<i64>,
    pub lower_strict: bool,
    pub upper_strict: bool,
    pub modulus: u64,
}

impl CoprimeInterval {
    pub fn closed(lower: Ratio<i64>, upper: Ratio<i64>, modulus: u64) -> Result<Self> {
        Self::new(lower, upper, false, false, modulus)
    }

    pub fn open(lower: Ratio<i64>, upper: Ratio<i64>, modulus: u64) -> Result<Self> {
        Self::new(lower, upper, true, true, modulus)
    }

    pub fn new(
        lower: Ratio<i64>,
        upper: Ratio<i64>,
        lower_strict: bool,
        upper_strict: bool,
        modulus: u64,
    ) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus(modulus));
        }
        if lower > upper {
            return Err(Error::InvalidInterval(format!("{lower} > {upper}")));
        }
        Ok(CoprimeInterval { lower, upper, lower_strict, upper_strict, modulus })
    }

    /// Ascending integers in the interval that are coprime to the modulus.
    pub fn enumerate(&self) -> Vec<i64> {
        let mut lo = self.lower.ceil().to_integer();
        if self.lower_strict && self.lower == Ratio::from_integer(lo) {
            lo += 1;
        }
        let mut hi = self.upper.floor().to_integer();
        if self.upper_strict && self.upper == Ratio::from_integer(hi) {
            hi -= 1;
        }
        (lo..=hi)
            .filter(|&z| gcd(z.unsigned_abs() % self.modulus, self.modulus) == 1)
            .collect()
    }
}

/// `[x, y]_Z` for nonnegative bounds: coprime integers in the closed interval.
pub fn coprime_interval(lower: Ratio<i64>, upper: Ratio<i64>, modulus: u64) -> Result<Vec<u64>> {
    let iv = CoprimeInterval::closed(lower, upper, modulus)?;
    Ok(iv.enumerate().into_iter().filter(|&z| z >= 0).map(|z| z as u64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn units_and_phi() {
        assert_eq!(units(6), vec![1, 5]);
        assert_eq!(units(1), Vec::<u64>::new());
        assert_eq!(euler_phi(24), 8);
        assert_eq!(euler_phi(1), 1);
        // phi from the factorization agrees with a direct count everywhere small
        for n in 1..=400u64 {
            assert_eq!(euler_phi(n), units(n).len().max(if n == 1 { 1 } else { 0 }) as u64, "n={n}");
        }
    }

    #[test]
    fn orders() {
        // 7^2 = 49 = 48 + 1
        assert_eq!(multiplicative_order(7, 16).unwrap(), 2);
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(1, 5).unwrap(), 1);
        assert!(multiplicative_order(2, 8).is_err());
    }

    #[test]
    fn triadic_unit_relations() {
        // s = q/3 - 1 squares to a unit of order 6 with s^3 = -1 for q = 3^r >= 9
        for q in [9u64, 27, 81, 243] {
            let s = q / 3 - 1;
            let t = 2 * q / 3 - 1;
            assert_eq!(mul_mod(s, t, q), 1, "q={q}");
            assert_eq!(pow_mod(s, 3, q), q - 1, "q={q}");
            assert_eq!(multiplicative_order(s, q).unwrap(), 6, "q={q}");
        }
    }

    #[test]
    fn subgroups() {
        assert_eq!(cyclic_subgroup(2, 7).unwrap(), vec![1, 2, 4]);
        assert_eq!(cyclic_subgroup(5, 8).unwrap(), vec![1, 5]);
        assert!(validate_subgroup(&[1, 2, 4], 7).is_ok());
        assert!(validate_subgroup(&[1, 2], 7).is_err());
        assert!(validate_subgroup(&[2, 4, 1], 7).is_ok());
    }

    #[test]
    fn intervals() {
        // [4/3, 8/3] contains only 2, which is not coprime to 4
        assert_eq!(coprime_interval(r(4, 3), r(8, 3), 4).unwrap(), Vec::<u64>::new());
        assert_eq!(coprime_interval(r(1, 1), r(7, 3), 7).unwrap(), vec![1, 2]);
        assert_eq!(coprime_interval(r(2, 1), r(10, 3), 5).unwrap(), vec![2, 3]);
        // open interval drops an endpoint that is exactly rational-integral
        let open = CoprimeInterval::open(r(1, 1), r(3, 1), 7).unwrap();
        assert_eq!(open.enumerate(), vec![2]);
        // the top endpoint q is never coprime to q
        assert_eq!(coprime_interval(r(6, 1), r(9, 1), 9).unwrap(), vec![7, 8]);
    }

    #[test]
    fn moebius_small() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(12), 0);
    }

    proptest! {
        #[test]
        fn theta_is_a_bijection(n in 2u64..200, s_idx in 0usize..64, a_idx in 0usize..64) {
            let us = units(n);
            let s = UnitResidue::new(us[s_idx % us.len()], n).unwrap();
            let a = UnitResidue::new(us[a_idx % us.len()], n).unwrap();
            // s * s^-1 = 1 and theta_s has theta_{s^-1} as inverse
            prop_assert_eq!(s.mul(s.inv()).value(), 1);
            prop_assert_eq!(a.mul(s).mul(s.inv()), a);
            // negation is an involution
            prop_assert_eq!(a.negate().negate(), a);
        }

        #[test]
        fn order_divides_phi(n in 2u64..150, idx in 0usize..64) {
            let us = units(n);
            let a = us[idx % us.len()];
            let ord = multiplicative_order(a, n).unwrap();
            prop_assert_eq!(euler_phi(n) % ord, 0);
            prop_assert_eq!(cyclic_subgroup(a, n).unwrap().len() as u64, ord);
        }
    }
}
