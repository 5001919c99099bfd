//! The group algebra of `Z/NZ` over exact scalars.
//!
//! Elements are coefficient vectors indexed by the group, multiplied by
//! convolution. Two idempotent systems matter downstream: the rational
//! projectors `eta_D` attached to divisors of the modulus, and the finer
//! cyclotomic projectors `eps_a` attached to characters of `Z/NZ`. Both are
//! constructed here, along with the sparse projectors `eps_tilde_D` onto the
//! subgroup generated by `D`.

use crate::cyclo::CyclotomicElement;
use crate::poly::ZPoly;
use crate::{Error, Result};
use num::{BigInt, BigRational, One, Zero};

/// Scalar rings the group algebra is defined over.
pub trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn is_zero(&self) -> bool;
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Scalar for CyclotomicElement {
    fn zero() -> Self {
        CyclotomicElement::zero(1)
    }
    fn one() -> Self {
        CyclotomicElement::from_int(1)
    }
    fn add(&self, other: &Self) -> Self {
        CyclotomicElement::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        CyclotomicElement::mul(self, other)
    }
    fn neg(&self) -> Self {
        CyclotomicElement::neg(self)
    }
    fn from_rational(r: &BigRational) -> Self {
        CyclotomicElement::from_rational(r.clone())
    }
    fn is_zero(&self) -> bool {
        CyclotomicElement::is_zero(self)
    }
}

/// An element of the group algebra of `Z/nZ`, as a dense coefficient vector.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement<C: Scalar> {
    modulus: u64,
    coeffs: Vec<C>,
}

impl<C: Scalar> GroupAlgebraElement<C> {
    pub fn zero(n: u64) -> Self {
        GroupAlgebraElement { modulus: n, coeffs: vec![C::zero(); n as usize] }
    }

    /// The basis element `delta^i`.
    pub fn delta(n: u64, i: u64) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[(i % n) as usize] = C::one();
        e
    }

    pub fn identity(n: u64) -> Self {
        Self::delta(n, 0)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Coefficient of `delta^i`.
    pub fn coeff(&self, i: u64) -> &C {
        &self.coeffs[(i % self.modulus) as usize]
    }

    pub fn set_coeff(&mut self, i: u64, c: C) {
        let n = self.modulus;
        self.coeffs[(i % n) as usize] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        GroupAlgebraElement {
            modulus: self.modulus,
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        GroupAlgebraElement {
            modulus: self.modulus,
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a.add(&b.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        GroupAlgebraElement {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect(),
        }
    }

    /// Convolution product.
    pub fn convolve(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        let n = self.modulus as usize;
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let k = (i + j) % n;
                    out[k] = out[k].add(&a.mul(b));
                }
            }
        }
        GroupAlgebraElement { modulus: self.modulus, coeffs: out }
    }

    /// Evaluates an integer polynomial at this element.
    pub fn apply_polynomial(&self, p: &ZPoly) -> Self {
        let n = self.modulus;
        let mut acc = Self::zero(n);
        for c in p.iter().rev() {
            let scalar = C::from_rational(&BigRational::from(c.clone()));
            acc = acc.convolve(self).add(&Self::identity(n).scale(&scalar));
        }
        acc
    }

    /// Applies a map to every coefficient, e.g. to widen the scalar ring.
    pub fn map_scalars<D: Scalar>(&self, f: impl Fn(&C) -> D) -> GroupAlgebraElement<D> {
        GroupAlgebraElement { modulus: self.modulus, coeffs: self.coeffs.iter().map(f).collect() }
    }
}

fn require_divisor(n: u64, d: u64) -> Result<()> {
    if d == 0 || n == 0 || n % d != 0 {
        return Err(Error::CoverDividesDegree { degree: n, cover: d });
    }
    Ok(())
}

/// The rational projector `eta_D` in `Q[Z/NZ]`: coefficient of `delta^{N-i}`
/// is `Tr(zeta_D^i) / N`.
pub fn eta(n: u64, d: u64) -> Result<GroupAlgebraElement<BigRational>> {
    require_divisor(n, d)?;
    let inv_n = BigRational::new(BigInt::one(), BigInt::from(n));
    let mut out = GroupAlgebraElement::zero(n);
    for i in 0..n {
        let tr = CyclotomicElement::zeta_pow(d, i as i64).trace_to_q();
        out.set_coeff((n - i) % n, tr * &inv_n);
    }
    Ok(out)
}

/// The sparse projector `eps_tilde_D = (D/N) sum_j delta^{jD}`.
pub fn eps_tilde(n: u64, d: u64) -> Result<GroupAlgebraElement<BigRational>> {
    require_divisor(n, d)?;
    let weight = BigRational::new(BigInt::from(d), BigInt::from(n));
    let mut out = GroupAlgebraElement::zero(n);
    for j in 0..(n / d) {
        out.set_coeff(j * d, weight.clone());
    }
    Ok(out)
}

/// The character projector `eps_a = (1/N) sum_i zeta_N^{ai} delta^{N-i}`.
pub fn eps(n: u64, a: u64) -> GroupAlgebraElement<CyclotomicElement> {
    let inv_n = BigRational::new(BigInt::one(), BigInt::from(n));
    let mut out = GroupAlgebraElement::zero(n);
    for i in 0..n {
        let z = CyclotomicElement::zeta_pow(n, (a as i64) * (i as i64));
        out.set_coeff((n - i) % n, z.scale(&inv_n));
    }
    out
}

/// Widens a rational element to cyclotomic scalars.
pub fn widen(x: &GroupAlgebraElement<BigRational>) -> GroupAlgebraElement<CyclotomicElement> {
    x.map_scalars(|c| CyclotomicElement::from_rational(c.clone()))
}

/// Checks that `eta_D` for `D | N` are pairwise orthogonal idempotents that
/// sum to the identity; returns the divisors checked.
pub fn check_eta_system(n: u64) -> Result<Vec<u64>> {
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut sum = GroupAlgebraElement::<BigRational>::zero(n);
    let etas: Vec<_> = divisors.iter().map(|&d| eta(n, d)).collect::<Result<_>>()?;
    for (i, e) in etas.iter().enumerate() {
        if e.convolve(e) != *e {
            return Err(Error::Internal(format!("eta_{} mod {} is not idempotent", divisors[i], n)));
        }
        for (j, f) in etas.iter().enumerate() {
            if i != j && !e.convolve(f).is_zero() {
                return Err(Error::Internal(format!(
                    "eta_{} eta_{} mod {} is nonzero",
                    divisors[i], divisors[j], n
                )));
            }
        }
        sum = sum.add(e);
    }
    if sum != GroupAlgebraElement::identity(n) {
        return Err(Error::Internal(format!("eta system mod {n} does not sum to 1")));
    }
    Ok(divisors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::cyclotomic_polynomial;
    use crate::residue::{euler_phi, units};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn convolution_follows_group_law() {
        let a = GroupAlgebraElement::<BigRational>::delta(6, 4);
        let b = GroupAlgebraElement::<BigRational>::delta(6, 5);
        assert_eq!(a.convolve(&b), GroupAlgebraElement::delta(6, 3));
        let id = GroupAlgebraElement::<BigRational>::identity(6);
        assert_eq!(a.convolve(&id), a);
    }

    #[test]
    fn eta_frozen_coefficient() {
        // delta^0 coefficient of eta_3 in Q[Z/6Z]
        let e = eta(6, 3).unwrap();
        assert_eq!(e.coeff(0), &rat(1, 3));
    }

    #[test]
    fn eta_systems_small() {
        for n in 1..=12u64 {
            check_eta_system(n).unwrap();
        }
    }

    #[test]
    fn eps_tilde_system() {
        for n in [6u64, 8, 12] {
            let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            let es: Vec<_> = divisors.iter().map(|&d| eps_tilde(n, d).unwrap()).collect();
            for e in &es {
                assert_eq!(e.convolve(e), *e);
            }
            // eta_D is absorbed by the matching sparse projector
            for &d in &divisors {
                let et = eta(n, d).unwrap();
                assert_eq!(et.convolve(&eps_tilde(n, d).unwrap()), et);
            }
        }
    }

    #[test]
    fn cyclotomic_polynomial_kills_eta() {
        for n in [6u64, 8, 10, 12] {
            for d in (1..=n).filter(|d| n % d == 0) {
                let e = eta(n, d).unwrap();
                let delta = GroupAlgebraElement::<BigRational>::delta(n, 1);
                let p = delta.apply_polynomial(&cyclotomic_polynomial(d));
                assert!(p.convolve(&e).is_zero(), "Phi_{d}(delta) eta_{d} != 0 mod {n}");
            }
        }
    }

    #[test]
    fn eps_system_is_a_resolution() {
        for n in [5u64, 6, 8] {
            let id = GroupAlgebraElement::<CyclotomicElement>::identity(n);
            let mut sum = GroupAlgebraElement::<CyclotomicElement>::zero(n);
            let all: Vec<_> = (0..n).map(|a| eps(n, a)).collect();
            for (a, e) in all.iter().enumerate() {
                assert_eq!(e.convolve(e), *e, "eps_{a} mod {n} idempotent");
                for (b, f) in all.iter().enumerate() {
                    if a != b {
                        assert!(e.convolve(f).is_zero(), "eps_{a} eps_{b} mod {n}");
                    }
                }
                sum = sum.add(e);
            }
            assert_eq!(sum, id);
        }
    }

    #[test]
    fn eps_orbits_assemble_eta() {
        for n in [6u64, 8, 12] {
            for d in (1..=n).filter(|d| n % d == 0) {
                let reps = if d == 1 { vec![0] } else { units(d) };
                let mut sum = GroupAlgebraElement::<CyclotomicElement>::zero(n);
                for a in reps {
                    sum = sum.add(&eps(n, a * n / d));
                }
                assert_eq!(sum, widen(&eta(n, d).unwrap()), "divisor {d} of {n}");
            }
        }
    }

    #[test]
    fn eta_rank_matches_phi() {
        // the trace of eta_D acting by convolution equals phi(D)
        for n in [6u64, 12] {
            for d in (1..=n).filter(|d| n % d == 0) {
                let e = eta(n, d).unwrap();
                let mut trace = rat(0, 1);
                for i in 0..n {
                    let col = e.convolve(&GroupAlgebraElement::delta(n, i));
                    trace += col.coeff(i);
                }
                assert_eq!(trace, rat(euler_phi(d) as i64, 1));
            }
        }
    }
}
