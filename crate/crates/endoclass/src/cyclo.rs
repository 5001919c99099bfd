//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! Elements are rational coefficient vectors of length `phi(n)` in the power
//! basis `1, zeta, ..., zeta^{phi(n)-1}`, kept reduced modulo the n-th
//! cyclotomic polynomial, so coefficient-wise comparison is an exact equality
//! test. Mixed conductors coerce to the least common multiple via
//! `zeta_d = zeta_lcm^{lcm/d}`. Galois action, traces, Gauss periods, minimal
//! polynomials and fixed subfields are all computed without leaving exact
//! arithmetic; the complex embedding exists purely as a diagnostic.

use crate::poly::{self, cyclotomic_polynomial, QPoly, ZPoly};
use crate::residue::{euler_phi, gcd, mul_mod, units, validate_subgroup};
use crate::{Error, Result};
use num::complex::Complex64;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Per-conductor reduction data: `T^k mod Phi_n` for every exponent that can
/// arise from products, coercions, or Galois twists.
struct ReductionTable {
    phi: usize,
    /// rows[k] = coefficients of T^{phi + k} modulo Phi_n
    rows: Vec<Vec<BigInt>>,
    units: Vec<u64>,
}

static TABLES: OnceLock<Mutex<HashMap<u64, Arc<ReductionTable>>>> = OnceLock::new();

fn table(n: u64) -> Arc<ReductionTable> {
    let cache = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let phi = euler_phi(n) as usize;
    let cyc = cyclotomic_polynomial(n);
    let max_exp = (n as usize - 1).max(2 * phi - 2).max(phi);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_exp + 1 - phi);
    // T^phi = -(lower part of Phi_n)
    let base: Vec<BigInt> = cyc[..phi].iter().map(|c| -c).collect();
    rows.push(base);
    for _ in phi..max_exp {
        let prev = rows.last().unwrap();
        let mut next = vec![BigInt::zero(); phi];
        let top = prev[phi - 1].clone();
        for i in 1..phi {
            next[i] = prev[i - 1].clone();
        }
        if !top.is_zero() {
            let first = &rows[0];
            for i in 0..phi {
                next[i] += &top * &first[i];
            }
        }
        rows.push(next);
    }
    let t = Arc::new(ReductionTable { phi, rows, units: units(n) });
    cache.lock().unwrap().insert(n, t.clone());
    t
}

/// An element of `Q(zeta_n)` in reduced power-basis form.
#[derive(Clone)]
pub struct CyclotomicElement {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo(n={}, [", self.conductor)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "])")
    }
}

fn reduce(n: u64, mut raw: Vec<BigRational>) -> Vec<BigRational> {
    let t = table(n);
    let phi = t.phi;
    for k in (phi..raw.len()).rev() {
        if raw[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut raw[k], BigRational::zero());
        let row = &t.rows[k - phi];
        for i in 0..phi {
            if !row[i].is_zero() {
                raw[i] += &c * BigRational::from(row[i].clone());
            }
        }
    }
    raw.truncate(phi);
    while raw.len() < phi {
        raw.push(BigRational::zero());
    }
    raw
}

impl CyclotomicElement {
    /// Zero of `Q(zeta_n)`.
    pub fn zero(n: u64) -> Self {
        CyclotomicElement { conductor: n, coeffs: vec![BigRational::zero(); euler_phi(n) as usize] }
    }

    pub fn from_rational(r: BigRational) -> Self {
        CyclotomicElement { conductor: 1, coeffs: vec![r] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(BigRational::from(BigInt::from(k)))
    }

    /// `zeta_n`.
    pub fn zeta(n: u64) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// `zeta_n^k` for any integer exponent.
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        CyclotomicElement { conductor: n, coeffs: reduce(n, raw) }
    }

    /// Builds `sum coeff * zeta_n^exp` from exponent-coefficient pairs.
    pub fn from_exponent_sums(n: u64, terms: &[(u64, BigRational)]) -> Self {
        let mut raw = vec![BigRational::zero(); n as usize];
        for (e, c) in terms {
            raw[(e % n) as usize] += c;
        }
        CyclotomicElement { conductor: n, coeffs: reduce(n, raw) }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Reembeds into `Q(zeta_m)` for `n | m`.
    pub fn coerce_to(&self, m: u64) -> Result<Self> {
        if m % self.conductor != 0 {
            return Err(Error::Internal(format!(
                "cannot coerce conductor {} into {}",
                self.conductor, m
            )));
        }
        if m == self.conductor {
            return Ok(self.clone());
        }
        let step = (m / self.conductor) as usize;
        let mut raw = vec![BigRational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[i * step] += c;
            }
        }
        Ok(CyclotomicElement { conductor: m, coeffs: reduce(m, raw) })
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = num::integer::lcm(self.conductor, other.conductor);
        (self.coerce_to(m).unwrap(), other.coerce_to(m).unwrap())
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.common(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (mut a, b) = self.common(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> Self {
        CyclotomicElement {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let n = a.conductor;
        let phi = a.coeffs.len();
        let mut raw = vec![BigRational::zero(); 2 * phi - 1];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if !cb.is_zero() {
                    raw[i + j] += ca * cb;
                }
            }
        }
        CyclotomicElement { conductor: n, coeffs: reduce(n, raw) }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        CyclotomicElement {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm modulo the
    /// cyclotomic polynomial.
    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.conductor;
        let phi_poly: QPoly = cyclotomic_polynomial(n)
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let mut f: QPoly = self.coeffs.clone();
        poly::qnormalize(&mut f);
        let (mut r0, mut r1) = (phi_poly, f);
        let (mut t0, mut t1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, rem) = qpoly_divmod(&r0, &r1);
            let tn = poly::qsub(&t0, &poly::qmul(&q, &t1));
            r0 = r1;
            r1 = rem;
            t0 = t1;
            t1 = tn;
        }
        // r0 is a nonzero constant because Phi_n is irreducible over Q
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        let inv_coeffs = poly::qscale(&t0, &(BigRational::one() / c));
        Ok(CyclotomicElement { conductor: n, coeffs: reduce(n, inv_coeffs) })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.checked_inv()? } else { self.clone() };
        let mut acc = CyclotomicElement::from_int(1);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            if k > 1 {
                b = b.mul(&b);
            }
            k >>= 1;
        }
        Ok(acc)
    }

    /// The Galois twist `zeta_n -> zeta_n^a` for `a` a unit modulo `n`.
    pub fn galois_apply(&self, a: u64) -> Result<Self> {
        let n = self.conductor;
        if n > 1 && gcd(a % n, n) != 1 {
            return Err(Error::NotAUnit { value: a, modulus: n });
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let mut raw = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[mul_mod(i as u64, a % n, n) as usize] += c;
            }
        }
        Ok(CyclotomicElement { conductor: n, coeffs: reduce(n, raw) })
    }

    /// Complex conjugation.
    pub fn conjugate(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.galois_apply(self.conductor - 1).unwrap()
    }

    /// The absolute trace to `Q`, as the full Galois orbit sum.
    pub fn trace_to_q(&self) -> BigRational {
        let n = self.conductor;
        if n == 1 {
            return self.coeffs[0].clone();
        }
        let t = table(n);
        let mut acc = CyclotomicElement::zero(n);
        for &a in &t.units {
            acc = acc.add(&self.galois_apply(a).unwrap());
        }
        acc.as_rational().expect("orbit sum must be rational")
    }

    /// Monic minimal polynomial over `Q`, by expanding the product of
    /// `T - c` over the distinct Galois conjugates `c`.
    pub fn minimal_polynomial(&self) -> QPoly {
        let n = self.conductor;
        let mut conjugates: Vec<CyclotomicElement> = Vec::new();
        let unit_list = if n == 1 { vec![1] } else { table(n).units.clone() };
        for &a in &unit_list {
            let c = self.galois_apply(a).unwrap();
            if !conjugates.iter().any(|x| x == &c) {
                conjugates.push(c);
            }
        }
        let mut coeffs: Vec<CyclotomicElement> = vec![CyclotomicElement::from_int(1)];
        for r in &conjugates {
            let mut next = vec![CyclotomicElement::zero(n); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c);
                next[i] = next[i].sub(&c.mul(r));
            }
            coeffs = next;
        }
        let out: QPoly = coeffs
            .iter()
            .map(|c| c.as_rational().expect("minimal polynomial coefficients must be rational"))
            .collect();
        debug_assert!(out.last().unwrap().is_one());
        out
    }

    /// Numeric embedding `zeta_n -> exp(2 pi i / n)`, for diagnostics only.
    pub fn embed_complex(&self) -> Complex64 {
        let n = self.conductor as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            let angle = 2.0 * std::f64::consts::PI * (i as f64) / n;
            let val = c.to_f64().unwrap_or(f64::NAN);
            acc += Complex64::new(angle.cos(), angle.sin()) * val;
        }
        acc
    }
}

fn qpoly_divmod(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    assert!(!b.is_empty());
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        let c = &rem[k] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[k - db] = c.clone();
        for (j, cb) in b.iter().enumerate() {
            let v = &c * cb;
            rem[k - db + j] -= v;
        }
    }
    poly::qnormalize(&mut rem);
    poly::qnormalize(&mut quot);
    (quot, rem)
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicElement {}

impl std::ops::Add for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        CyclotomicElement::add(self, rhs)
    }
}

impl std::ops::Sub for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        CyclotomicElement::sub(self, rhs)
    }
}

impl std::ops::Mul for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn mul(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        CyclotomicElement::mul(self, rhs)
    }
}

impl std::ops::Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        CyclotomicElement::neg(self)
    }
}

/// `sum_{h in H} zeta_n^h` for a subgroup `H` of the units modulo `n`.
pub fn gauss_period(n: u64, subgroup: &[u64]) -> Result<CyclotomicElement> {
    let h = validate_subgroup(subgroup, n)?;
    let terms: Vec<(u64, BigRational)> = h.iter().map(|&e| (e, BigRational::one())).collect();
    Ok(CyclotomicElement::from_exponent_sums(n, &terms))
}

/// Description of the fixed subfield of `Q(zeta_n)` under a subgroup of the
/// Galois group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub ambient_conductor: u64,
    pub fixing_subgroup: Vec<u64>,
    pub degree: u64,
    pub generator: CyclotomicElement,
    pub generator_min_poly: ZPoly,
    pub quadratic_discriminant: Option<i64>,
}

impl FieldDescriptor {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ambient_conductor": self.ambient_conductor,
            "fixing_subgroup": self.fixing_subgroup,
            "degree": self.degree,
            "generator_min_poly": self.generator_min_poly.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "quadratic_discriminant": self.quadratic_discriminant,
        })
    }
}

/// Computes the subfield of `Q(zeta_n)` fixed by `subgroup`, searching for a
/// primitive element among scaled orbit sums `sum_h zeta^{c h}`.
pub fn fixed_subfield(n: u64, subgroup: &[u64]) -> Result<FieldDescriptor> {
    let h = validate_subgroup(subgroup, n)?;
    let phi = euler_phi(n);
    if phi % h.len() as u64 != 0 {
        return Err(Error::NotASubgroup { modulus: n });
    }
    let target = phi / h.len() as u64;
    let orbit_sum = |c: u64| -> CyclotomicElement {
        let terms: Vec<(u64, BigRational)> =
            h.iter().map(|&e| (mul_mod(c % n, e, n), BigRational::one())).collect();
        CyclotomicElement::from_exponent_sums(n, &terms)
    };
    let finish = |z: CyclotomicElement, min_poly: QPoly| -> Result<FieldDescriptor> {
        let ints: ZPoly = min_poly
            .iter()
            .map(|c| {
                if c.denom().is_one() {
                    Ok(c.numer().clone())
                } else {
                    Err(Error::Internal("period minimal polynomial is not integral".into()))
                }
            })
            .collect::<Result<_>>()?;
        let quadratic_discriminant = match target {
            1 => Some(1),
            2 => {
                let b = ints[1]
                    .to_i64()
                    .ok_or_else(|| Error::Internal("discriminant overflow".into()))?;
                let c = ints[0]
                    .to_i64()
                    .ok_or_else(|| Error::Internal("discriminant overflow".into()))?;
                let d = poly::squarefree_kernel(b * b - 4 * c);
                Some(if d.rem_euclid(4) == 1 { d } else { 4 * d })
            }
            _ => None,
        };
        Ok(FieldDescriptor {
            ambient_conductor: n,
            fixing_subgroup: h.clone(),
            degree: target,
            generator: z,
            generator_min_poly: ints,
            quadratic_discriminant,
        })
    };
    if target == 1 {
        let z = CyclotomicElement::from_int(1);
        return finish(z.clone(), z.minimal_polynomial());
    }
    for c in 1..n {
        let z = orbit_sum(c);
        if z.is_zero() {
            continue;
        }
        let mp = z.minimal_polynomial();
        if (mp.len() - 1) as u64 == target {
            return finish(z, mp);
        }
    }
    // rare fallback: small integer combinations of two orbit sums
    for c1 in 1..n.min(24) {
        for c2 in (c1 + 1)..n.min(24) {
            for k in 1..=4u64 {
                let z = orbit_sum(c1).add(&orbit_sum(c2).scale(&BigRational::from(BigInt::from(k))));
                if z.is_zero() {
                    continue;
                }
                let mp = z.minimal_polynomial();
                if (mp.len() - 1) as u64 == target {
                    return finish(z, mp);
                }
            }
        }
    }
    Err(Error::GeneratorSearchFailed { ambient: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn basic_identities() {
        let z3 = CyclotomicElement::zeta(3);
        let sum = z3.mul(&z3).add(&z3).add(&CyclotomicElement::from_int(1));
        assert!(sum.is_zero());
        // zeta_6^2 = zeta_3 and zeta_6 = 1 + zeta_3 across conductors
        let z6 = CyclotomicElement::zeta(6);
        assert_eq!(z6.pow(2).unwrap(), z3);
        assert_eq!(z6, CyclotomicElement::from_int(1).add(&z3));
        assert_eq!(CyclotomicElement::zeta_pow(5, 7), CyclotomicElement::zeta_pow(5, 2));
        assert_eq!(CyclotomicElement::zeta_pow(8, -1), CyclotomicElement::zeta_pow(8, 7));
    }

    #[test]
    fn traces() {
        assert_eq!(CyclotomicElement::zeta(5).trace_to_q(), rat(-1, 1));
        assert_eq!(CyclotomicElement::zeta(8).trace_to_q(), rat(0, 1));
        assert_eq!(CyclotomicElement::from_rational(rat(3, 2)).trace_to_q(), rat(3, 2));
        // trace of zeta_n^i against the Moebius closed form
        for n in 2..=36u64 {
            for i in 0..n {
                let g = gcd(i, n);
                let m = n / g;
                let expect = BigRational::from(BigInt::from(crate::residue::moebius(m)))
                    * rat(euler_phi(n) as i64, euler_phi(m) as i64);
                assert_eq!(
                    CyclotomicElement::zeta_pow(n, i as i64).trace_to_q(),
                    expect,
                    "n={n} i={i}"
                );
            }
        }
    }

    #[test]
    fn inverses_and_division() {
        let x = CyclotomicElement::zeta(7)
            .add(&CyclotomicElement::from_int(2))
            .sub(&CyclotomicElement::zeta_pow(7, 3));
        let inv = x.checked_inv().unwrap();
        assert_eq!(x.mul(&inv), CyclotomicElement::from_int(1));
        assert!(CyclotomicElement::zero(5).checked_inv().is_err());
    }

    #[test]
    fn galois_and_conjugation() {
        let x = CyclotomicElement::zeta(12).add(&CyclotomicElement::from_int(1));
        assert_eq!(x.conjugate().conjugate(), x);
        // conjugation fixes real combinations
        let real = CyclotomicElement::zeta(12).add(&CyclotomicElement::zeta_pow(12, -1));
        assert_eq!(real.conjugate(), real);
    }

    #[test]
    fn minimal_polynomials() {
        // zeta_8 + zeta_8^3 squares to -2
        let alpha = CyclotomicElement::zeta(8).add(&CyclotomicElement::zeta_pow(8, 3));
        let mp = alpha.minimal_polynomial();
        assert_eq!(mp, vec![rat(2, 1), rat(0, 1), rat(1, 1)]);
        // golden-ratio relative: zeta_5 + zeta_5^4 has T^2 + T - 1
        let beta = CyclotomicElement::zeta(5).add(&CyclotomicElement::zeta_pow(5, 4));
        assert_eq!(beta.minimal_polynomial(), vec![rat(-1, 1), rat(1, 1), rat(1, 1)]);
        // a primitive root of unity recovers the cyclotomic polynomial
        let mp12 = CyclotomicElement::zeta(12).minimal_polynomial();
        let phi12: QPoly =
            cyclotomic_polynomial(12).iter().map(|c| BigRational::from(c.clone())).collect();
        assert_eq!(mp12, phi12);
    }

    #[test]
    fn periods_and_fixed_subfields() {
        // index-2 subgroup of squares modulo 7: period has T^2 + T + 2
        let p = gauss_period(7, &[1, 2, 4]).unwrap();
        assert_eq!(p.minimal_polynomial(), vec![rat(2, 1), rat(1, 1), rat(1, 1)]);
        let f7 = fixed_subfield(7, &[1, 2, 4]).unwrap();
        assert_eq!(f7.degree, 2);
        assert_eq!(f7.quadratic_discriminant, Some(-7));

        // inside Q(zeta_8): <5> fixes Q(i), <3> fixes Q(sqrt(-2)), <7> fixes the real field
        let f85 = fixed_subfield(8, &[1, 5]).unwrap();
        assert_eq!((f85.degree, f85.quadratic_discriminant), (2, Some(-4)));
        let f83 = fixed_subfield(8, &[1, 3]).unwrap();
        assert_eq!((f83.degree, f83.quadratic_discriminant), (2, Some(-8)));
        let f87 = fixed_subfield(8, &[1, 7]).unwrap();
        assert_eq!((f87.degree, f87.quadratic_discriminant), (2, Some(8)));

        // trivial subgroup leaves the whole field
        let full = fixed_subfield(9, &[1]).unwrap();
        assert_eq!(full.degree, 6);
        assert_eq!(full.quadratic_discriminant, None);

        // degenerate plain period for 8/<5> forces the scaled-orbit fallback
        assert!(gauss_period(8, &[1, 5]).unwrap().is_zero());
    }

    #[test]
    fn power_of_two_relative_quadratic() {
        for q in [16u64, 32] {
            let s = q / 2 - 1;
            let zeta = CyclotomicElement::zeta(q);
            let alpha = zeta.add(&zeta.galois_apply(s).unwrap());
            assert_eq!((alpha.minimal_polynomial().len() - 1) as u64, euler_phi(q) / 2);
            // zeta satisfies T^2 - alpha T - 1 over the fixed field
            let lhs = zeta.mul(&zeta).sub(&alpha.mul(&zeta)).sub(&CyclotomicElement::from_int(1));
            assert!(lhs.is_zero());
            let fd = fixed_subfield(q, &[1, s]).unwrap();
            assert_eq!(fd.degree, euler_phi(q) / 2);
        }
    }

    #[test]
    fn embedding_sanity_band() {
        let zero = CyclotomicElement::zeta(5)
            .add(&CyclotomicElement::zeta_pow(5, 2))
            .add(&CyclotomicElement::zeta_pow(5, 3))
            .add(&CyclotomicElement::zeta_pow(5, 4))
            .add(&CyclotomicElement::from_int(1));
        assert!(zero.is_zero());
        assert!(zero.embed_complex().norm() < 1e-9);
        let one = CyclotomicElement::from_int(1);
        assert!((one.embed_complex().norm() - 1.0).abs() < 1e-9);
        assert!(CyclotomicElement::zeta(7).embed_complex().norm() > 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn galois_is_a_ring_map(n in 2u64..30, a_idx in 0usize..16, e1 in 0u64..30, e2 in 0u64..30, c in -3i64..4) {
            let us = units(n);
            let a = us[a_idx % us.len()];
            let x = CyclotomicElement::zeta_pow(n, e1 as i64).add(&CyclotomicElement::from_int(c));
            let y = CyclotomicElement::zeta_pow(n, e2 as i64).sub(&CyclotomicElement::from_int(1));
            let gx = x.galois_apply(a).unwrap();
            let gy = y.galois_apply(a).unwrap();
            prop_assert_eq!(x.mul(&y).galois_apply(a).unwrap(), gx.mul(&gy));
            prop_assert_eq!(x.add(&y).galois_apply(a).unwrap(), gx.add(&gy));
        }

        #[test]
        fn galois_composes(n in 2u64..30, i in 0usize..16, j in 0usize..16, e in 0u64..30) {
            let us = units(n);
            let (a, b) = (us[i % us.len()], us[j % us.len()]);
            let x = CyclotomicElement::zeta_pow(n, e as i64).add(&CyclotomicElement::from_int(1));
            let lhs = x.galois_apply(a).unwrap().galois_apply(b).unwrap();
            let rhs = x.galois_apply(mul_mod(a, b, n)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn trace_is_galois_invariant(n in 2u64..24, i in 0usize..16, e in 0u64..24) {
            let us = units(n);
            let a = us[i % us.len()];
            let x = CyclotomicElement::zeta_pow(n, e as i64).add(&CyclotomicElement::from_int(2));
            prop_assert_eq!(x.trace_to_q(), x.galois_apply(a).unwrap().trace_to_q());
        }
    }
}
