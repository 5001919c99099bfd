//! Dirichlet characters and generalized Bernoulli numbers.
//!
//! The unit group modulo `N` is presented by explicit generators obtained
//! from the factorization of `N` (a primitive root for each odd prime power,
//! the classes of `-1` and `5` for powers of two), with a full discrete-log
//! table so characters can be evaluated by exponent arithmetic. Characters
//! take values as exact roots of unity, `B_{1,chi}` lands in the cyclotomic
//! field of the character's order, and on top of that sit the odd-character
//! sets, the vanishing-set bounds, and the Fourier expansion of floor-of-
//! multiple functions that drives the primitivity criterion.

use crate::cyclo::CyclotomicElement;
use crate::residue::{
    crt, euler_phi, factor, gcd, mul_mod, multiplicative_order, pow_mod, units,
};
use crate::{Error, Result};
use num::integer::lcm;
use num::{BigInt, BigRational, One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Smallest primitive root modulo an odd prime power.
fn primitive_root(p: u64, e: u32) -> u64 {
    let mut g = 2;
    let prime_divisors: Vec<u64> = factor(p - 1).into_iter().map(|(q, _)| q).collect();
    loop {
        if prime_divisors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1) {
            break;
        }
        g += 1;
    }
    if e >= 2 && pow_mod(g, p - 1, p * p) == 1 {
        g += p;
    }
    g
}

/// The unit group `(Z/NZ)^x` presented by generators with a discrete-log
/// table.
pub struct UnitGroup {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    exponent: u64,
    dlog: HashMap<u64, Vec<u64>>,
}

static GROUPS: OnceLock<Mutex<HashMap<u64, Arc<UnitGroup>>>> = OnceLock::new();

impl UnitGroup {
    pub fn for_modulus(n: u64) -> Result<Arc<UnitGroup>> {
        if n == 0 {
            return Err(Error::InvalidModulus(n));
        }
        let cache = GROUPS.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(g) = cache.lock().unwrap().get(&n) {
            return Ok(g.clone());
        }
        let g = Arc::new(Self::build(n)?);
        cache.lock().unwrap().insert(n, g.clone());
        Ok(g)
    }

    fn build(n: u64) -> Result<UnitGroup> {
        let factors = factor(n);
        let mut local: Vec<(usize, u64, u64)> = Vec::new(); // (factor index, local gen, order)
        for (idx, &(p, e)) in factors.iter().enumerate() {
            let pe = p.pow(e);
            if p == 2 {
                match e {
                    1 => {}
                    2 => local.push((idx, 3, 2)),
                    _ => {
                        local.push((idx, pe - 1, 2));
                        local.push((idx, 5, 1u64 << (e - 2)));
                    }
                }
            } else {
                local.push((idx, primitive_root(p, e) % pe, euler_phi(pe)));
            }
        }
        let mut generators = Vec::with_capacity(local.len());
        let mut orders = Vec::with_capacity(local.len());
        for &(idx, g, ord) in &local {
            let congruences: Vec<(u64, u64)> = factors
                .iter()
                .enumerate()
                .map(|(j, &(p, e))| if j == idx { (g, p.pow(e)) } else { (1, p.pow(e)) })
                .collect();
            generators.push(crt(&congruences)?);
            orders.push(ord);
        }
        let exponent = orders.iter().fold(1u64, |acc, &o| lcm(acc, o));
        let mut table: Vec<(u64, Vec<u64>)> = vec![(1 % n, Vec::new())];
        for (j, &ord) in orders.iter().enumerate() {
            let mut next = Vec::with_capacity(table.len() * ord as usize);
            for (val, tup) in &table {
                let mut v = *val;
                for t in 0..ord {
                    let mut tt = tup.clone();
                    tt.push(t);
                    next.push((v, tt));
                    v = mul_mod(v, generators[j], n);
                }
            }
            table = next;
        }
        debug_assert_eq!(table.len() as u64, euler_phi(n));
        let dlog: HashMap<u64, Vec<u64>> = table.into_iter().collect();
        Ok(UnitGroup { modulus: n, generators, orders, exponent, dlog })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Exponent of the group (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Exponent tuple of a unit with respect to the generators.
    pub fn dlog(&self, a: u64) -> Result<&[u64]> {
        self.dlog
            .get(&(a % self.modulus))
            .map(|v| v.as_slice())
            .ok_or(Error::NotAUnit { value: a, modulus: self.modulus })
    }
}

/// A Dirichlet character, stored as exponents against the group generators.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exponents: Vec<u64>,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.group.modulus == other.group.modulus && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl std::hash::Hash for DirichletCharacter {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.group.modulus.hash(state);
        self.exponents.hash(state);
    }
}

impl std::fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "chi(mod {}; {:?})", self.group.modulus, self.exponents)
    }
}

impl DirichletCharacter {
    pub fn trivial(n: u64) -> Result<Self> {
        let group = UnitGroup::for_modulus(n)?;
        let exponents = vec![0; group.orders.len()];
        Ok(DirichletCharacter { group, exponents })
    }

    pub fn from_exponents(n: u64, exponents: Vec<u64>) -> Result<Self> {
        let group = UnitGroup::for_modulus(n)?;
        if exponents.len() != group.orders.len() {
            return Err(Error::Internal("character exponent arity mismatch".into()));
        }
        let exponents =
            exponents.iter().zip(group.orders.iter()).map(|(&e, &o)| e % o).collect();
        Ok(DirichletCharacter { group, exponents })
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// `chi(a) = zeta_m^t` where `m` is the group exponent; returns `t`.
    pub fn value_exponent(&self, a: u64) -> Result<u64> {
        let tup = self.group.dlog(a)?;
        let m = self.group.exponent;
        let mut t = 0u64;
        for ((&e, &tj), &ord) in self.exponents.iter().zip(tup.iter()).zip(self.group.orders.iter())
        {
            t = (t + mul_mod(e % ord, tj % ord, ord) * (m / ord)) % m;
        }
        Ok(t)
    }

    /// `chi(a)` as an exact root of unity.
    pub fn value(&self, a: u64) -> Result<CyclotomicElement> {
        let t = self.value_exponent(a)?;
        Ok(CyclotomicElement::zeta_pow(self.group.exponent, t as i64))
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(self.group.orders.iter())
            .fold(1u64, |acc, (&e, &o)| lcm(acc, o / gcd(o, e)))
    }

    /// `chi(-1) = -1`.
    pub fn is_odd(&self) -> bool {
        let n = self.group.modulus;
        if n <= 2 {
            return false;
        }
        self.value_exponent(n - 1).unwrap() != 0
    }

    pub fn conjugate(&self) -> Self {
        let exponents = self
            .exponents
            .iter()
            .zip(self.group.orders.iter())
            .map(|(&e, &o)| (o - e) % o)
            .collect();
        DirichletCharacter { group: self.group.clone(), exponents }
    }

    /// Smallest modulus the character factors through.
    pub fn conductor(&self) -> u64 {
        let n = self.group.modulus;
        let mut divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        divisors.sort_unstable();
        'outer: for &d in &divisors {
            for a in units(n) {
                if a % d == 1 % d && self.value_exponent(a).unwrap() != 0 {
                    continue 'outer;
                }
            }
            return d;
        }
        n
    }

    /// The primitive character of conductor `N0` inducing this one, together
    /// with `N0`.
    pub fn primitive_part(&self) -> Result<(DirichletCharacter, u64)> {
        let n = self.group.modulus;
        let n0 = self.conductor();
        if n0 == n {
            return Ok((self.clone(), n0));
        }
        let sub = UnitGroup::for_modulus(n0)?;
        let factors = factor(n);
        let m = self.group.exponent;
        let mut exponents = Vec::with_capacity(sub.orders.len());
        for (&g0, &ord0) in sub.generators.iter().zip(sub.orders.iter()) {
            // lift g0 to a unit mod n congruent to it mod n0
            let congruences: Vec<(u64, u64)> = factors
                .iter()
                .map(|&(p, e)| {
                    let pe = p.pow(e);
                    if n0 % p == 0 {
                        (g0 % pe, pe)
                    } else {
                        (1, pe)
                    }
                })
                .collect();
            let lifted = crt(&congruences)?;
            let t = self.value_exponent(lifted)?;
            // chi(lifted) has order dividing ord0, so this division is exact
            debug_assert_eq!(mul_mod(t, ord0 % m.max(1), m), 0);
            exponents.push(t * ord0 / m);
        }
        Ok((DirichletCharacter { group: sub, exponents }, n0))
    }

    /// `chi(a)` as a power of `zeta_d` where `d` is the character order;
    /// returns the exponent.
    pub fn value_in_order_field(&self, a: u64) -> Result<u64> {
        let t = self.value_exponent(a)?;
        let m = self.group.exponent;
        let d = self.order();
        debug_assert_eq!((t as u128 * d as u128) % m as u128, 0);
        Ok(((t as u128 * d as u128 / m as u128) % d as u128) as u64)
    }
}

/// Every character of modulus `n`, in generator-exponent order.
pub fn all_characters(n: u64) -> Result<Vec<DirichletCharacter>> {
    let group = UnitGroup::for_modulus(n)?;
    let mut tuples: Vec<Vec<u64>> = vec![Vec::new()];
    for &ord in &group.orders {
        let mut next = Vec::with_capacity(tuples.len() * ord as usize);
        for tup in &tuples {
            for e in 0..ord {
                let mut t = tup.clone();
                t.push(e);
                next.push(t);
            }
        }
        tuples = next;
    }
    Ok(tuples
        .into_iter()
        .map(|exponents| DirichletCharacter { group: group.clone(), exponents })
        .collect())
}

/// `B_{1,chi} = (1/N) sum_a a chi(a)`, represented in the cyclotomic field
/// of the character's order.
pub fn bernoulli_b1(chi: &DirichletCharacter) -> CyclotomicElement {
    let n = chi.modulus();
    let d = chi.order();
    let terms: Vec<(u64, BigRational)> = units(n)
        .into_iter()
        .map(|a| {
            let s = chi.value_in_order_field(a).unwrap();
            (s, BigRational::from(BigInt::from(a)))
        })
        .collect();
    let mut acc: HashMap<u64, BigRational> = HashMap::new();
    for (s, c) in terms {
        *acc.entry(s).or_insert_with(BigRational::zero) += c;
    }
    let collected: Vec<(u64, BigRational)> = acc.into_iter().collect();
    CyclotomicElement::from_exponent_sums(d, &collected)
        .scale(&BigRational::new(BigInt::one(), BigInt::from(n)))
}

/// The induced-character product formula for `B_1`: for nontrivial `chi` of
/// primitive part `chi0` mod `N0`,
/// `B_{1,chi} = B_{1,chi0} * prod_{p | N, p coprime to N0} (1 - chi0(p))`.
/// Returns `None` for the trivial character, where the formula fails.
pub fn euler_product_b1(chi: &DirichletCharacter) -> Result<Option<CyclotomicElement>> {
    if chi.is_trivial() {
        return Ok(None);
    }
    let (chi0, n0) = chi.primitive_part()?;
    let mut b = bernoulli_b1(&chi0);
    for (p, _) in factor(chi.modulus()) {
        if n0 % p != 0 {
            let factor_term = CyclotomicElement::from_int(1).sub(&chi0.value(p % n0)?);
            b = b.mul(&factor_term);
        }
    }
    Ok(Some(b))
}

fn s_odd_uncached(n: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(all_characters(n)?.into_iter().filter(|c| c.is_odd()).collect())
}

/// The odd characters of modulus `n`.
pub fn s_odd(n: u64) -> Result<Vec<DirichletCharacter>> {
    s_odd_uncached(n)
}

static S0_CACHE: OnceLock<Mutex<HashMap<u64, Vec<Vec<u64>>>>> = OnceLock::new();

/// The odd characters of modulus `n` with vanishing `B_1`.
pub fn s0_set(n: u64) -> Result<Vec<DirichletCharacter>> {
    let cache = S0_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(exps) = cache.lock().unwrap().get(&n) {
        return exps
            .iter()
            .map(|e| DirichletCharacter::from_exponents(n, e.clone()))
            .collect();
    }
    let out: Vec<DirichletCharacter> =
        s_odd(n)?.into_iter().filter(|c| bernoulli_b1(c).is_zero()).collect();
    cache
        .lock()
        .unwrap()
        .insert(n, out.iter().map(|c| c.exponents.clone()).collect());
    Ok(out)
}

/// The odd characters trivial on `s`.
pub fn t1_set(n: u64, s: u64) -> Result<Vec<DirichletCharacter>> {
    if gcd(s % n, n) != 1 && n > 1 {
        return Err(Error::NotAUnit { value: s, modulus: n });
    }
    Ok(s_odd(n)?
        .into_iter()
        .filter(|c| c.value_exponent(s).unwrap() == 0)
        .collect())
}

/// Per-prime data in the vanishing-ratio bound chain.
#[derive(Clone, Debug)]
pub struct VanishingTerm {
    pub prime: u64,
    pub prime_power: u64,
    /// Modulus with this prime power removed.
    pub cofactor: u64,
    /// Exact count of odd characters mod the cofactor trivial at the prime.
    pub u_count: u64,
    /// Smallest `c` with `p^c = -1` mod the cofactor, if one exists.
    pub minus_one_hit: Option<u64>,
    /// `2 u / phi(N)`.
    pub v: BigRational,
    /// `1 / (phi(p^e) ord(p mod cofactor))`.
    pub w_summand: BigRational,
}

/// The chain `|S0|/|S| <= sum v_p <= sum w_p` over the primes of a modulus
/// with at least two distinct prime factors.
#[derive(Clone, Debug)]
pub struct VanishingBounds {
    pub modulus: u64,
    pub terms: Vec<VanishingTerm>,
    pub s_count: usize,
    pub s0_count: usize,
    pub s_ratio: BigRational,
    pub v_sum: BigRational,
    pub w_sum: BigRational,
}

/// Computes the vanishing-ratio bounds for a modulus with at least two
/// distinct prime factors.
pub fn vanishing_bounds(n: u64) -> Result<VanishingBounds> {
    let factors = factor(n);
    if factors.len() < 2 {
        return Err(Error::TwoPrimeFactorsRequired(n));
    }
    let phi_n = euler_phi(n);
    let mut terms = Vec::with_capacity(factors.len());
    for &(p, e) in &factors {
        let pe = p.pow(e);
        let cof = n / pe;
        let ord = multiplicative_order(p % cof.max(1), cof.max(1)).unwrap_or(1);
        let mut minus_one_hit = None;
        if cof > 2 {
            let mut x = 1u64;
            for c in 1..=ord {
                x = mul_mod(x, p % cof, cof);
                if x == cof - 1 {
                    minus_one_hit = Some(c);
                    break;
                }
            }
        }
        let u_count = if cof <= 2 { 0 } else { t1_set(cof, p % cof)?.len() as u64 };
        // closed form cross-check: obstruction kills the count, otherwise
        // the count is phi(cofactor) / (2 ord)
        let u_closed = if cof <= 2 || minus_one_hit.is_some() {
            0
        } else {
            euler_phi(cof) / (2 * ord)
        };
        debug_assert_eq!(u_count, u_closed, "u mismatch at p={p}, N={n}");
        let v = BigRational::new(BigInt::from(2 * u_count), BigInt::from(phi_n));
        let w_summand =
            BigRational::new(BigInt::one(), BigInt::from(euler_phi(pe) * ord));
        terms.push(VanishingTerm {
            prime: p,
            prime_power: pe,
            cofactor: cof,
            u_count,
            minus_one_hit,
            v,
            w_summand,
        });
    }
    let s_count = s_odd(n)?.len();
    let s0_count = s0_set(n)?.len();
    let s_ratio = if s_count == 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::from(s0_count as u64), BigInt::from(s_count as u64))
    };
    let v_sum = terms.iter().fold(BigRational::zero(), |acc, t| acc + &t.v);
    let w_sum = terms.iter().fold(BigRational::zero(), |acc, t| acc + &t.w_summand);
    Ok(VanishingBounds { modulus: n, terms, s_count, s0_count, s_ratio, v_sum, w_sum })
}

/// Fourier coefficient of the centered floor-of-multiple function against an
/// odd character: `(n - chi(n)) B_{1, conj chi} / phi(N)`.
pub fn fourier_coefficient(chi: &DirichletCharacter, n_mult: u64) -> Result<CyclotomicElement> {
    let modulus = chi.modulus();
    if gcd(n_mult % modulus, modulus) != 1 {
        return Err(Error::GcdObstruction { n: n_mult, modulus });
    }
    let chin = chi.value(n_mult % modulus)?;
    let factor_term = CyclotomicElement::from_int(n_mult as i64).sub(&chin);
    let b = bernoulli_b1(&chi.conjugate());
    let phi_inv = BigRational::new(BigInt::one(), BigInt::from(euler_phi(modulus)));
    Ok(factor_term.mul(&b).scale(&phi_inv))
}

/// Verifies `sum_{chi odd} c_chi chi(a) = floor(n a / N) - (n-1)/2` on every
/// unit `a`.
pub fn fourier_reconstruction_ok(modulus: u64, n_mult: u64) -> Result<bool> {
    if modulus < 3 {
        return Err(Error::InvalidModulus(modulus));
    }
    if gcd(n_mult % modulus, modulus) != 1 {
        return Err(Error::GcdObstruction { n: n_mult, modulus });
    }
    let odd = s_odd(modulus)?;
    let coeffs: Vec<CyclotomicElement> =
        odd.iter().map(|c| fourier_coefficient(c, n_mult)).collect::<Result<_>>()?;
    let half_shift = BigRational::new(BigInt::from(n_mult as i64 - 1), BigInt::from(2));
    for a in units(modulus) {
        let mut lhs = CyclotomicElement::from_int(0);
        for (chi, c) in odd.iter().zip(coeffs.iter()) {
            lhs = lhs.add(&c.mul(&chi.value(a)?));
        }
        let floor_val = BigRational::from(BigInt::from(n_mult * a / modulus));
        let rhs = CyclotomicElement::from_rational(floor_val - &half_shift);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Character-side primitivity data for the multiplication types of a modulus.
#[derive(Clone, Debug)]
pub struct PrimitivityByCharacters {
    pub modulus: u64,
    pub primitive: bool,
    /// Units `s != 1` on which every odd character either vanishes in `B_1`
    /// or is trivial; nonempty exactly when imprimitive.
    pub covering_twists: Vec<u64>,
}

/// Decides primitivity of the floor-of-multiple types mod `N` from character
/// data alone: primitive iff no `s != 1` satisfies `S0 union T1(s) = S`.
pub fn primitivity_by_characters(n: u64) -> Result<PrimitivityByCharacters> {
    if n < 3 {
        return Err(Error::InvalidModulus(n));
    }
    let odd = s_odd(n)?;
    let s0: std::collections::HashSet<Vec<u64>> =
        s0_set(n)?.into_iter().map(|c| c.exponents.clone()).collect();
    let mut covering = Vec::new();
    for s in units(n) {
        if s == 1 {
            continue;
        }
        let covered = odd
            .iter()
            .all(|chi| s0.contains(&chi.exponents) || chi.value_exponent(s).unwrap() == 0);
        if covered {
            covering.push(s);
        }
    }
    Ok(PrimitivityByCharacters { modulus: n, primitive: covering.is_empty(), covering_twists: covering })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::cyclic_subgroup;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn group_presentations() {
        let g7 = UnitGroup::for_modulus(7).unwrap();
        assert_eq!(g7.orders(), &[6]);
        assert_eq!(g7.generators(), &[3]);
        let g8 = UnitGroup::for_modulus(8).unwrap();
        assert_eq!(g8.orders(), &[2, 2]);
        assert_eq!(g8.generators(), &[7, 5]);
        let g1 = UnitGroup::for_modulus(1).unwrap();
        assert!(g1.generators().is_empty());
        assert_eq!(g1.exponent(), 1);
        let g2 = UnitGroup::for_modulus(2).unwrap();
        assert!(g2.generators().is_empty());
    }

    #[test]
    fn dlog_roundtrip() {
        for n in [7u64, 8, 12, 15, 16, 24, 45] {
            let g = UnitGroup::for_modulus(n).unwrap();
            for a in units(n) {
                let tup = g.dlog(a).unwrap();
                let mut v = 1 % n;
                for (&t, &gen) in tup.iter().zip(g.generators().iter()) {
                    v = mul_mod(v, pow_mod(gen, t, n), n);
                }
                assert_eq!(v, a, "dlog roundtrip failed at a={a} mod {n}");
            }
            assert!(g.dlog(0).is_err() || n == 1);
        }
    }

    #[test]
    fn characters_are_homomorphisms() {
        for n in [5u64, 8, 12, 21] {
            let chars = all_characters(n).unwrap();
            assert_eq!(chars.len() as u64, euler_phi(n));
            let distinct: std::collections::HashSet<Vec<u64>> =
                chars.iter().map(|c| c.exponents().to_vec()).collect();
            assert_eq!(distinct.len(), chars.len());
            let m = UnitGroup::for_modulus(n).unwrap().exponent();
            for chi in &chars {
                for &a in units(n).iter().take(4) {
                    for &b in units(n).iter().take(4) {
                        let lhs = chi.value_exponent(mul_mod(a, b, n)).unwrap();
                        let rhs =
                            (chi.value_exponent(a).unwrap() + chi.value_exponent(b).unwrap()) % m;
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn parity_counts() {
        assert!(s_odd(1).unwrap().is_empty());
        assert!(s_odd(2).unwrap().is_empty());
        for n in 3..=40u64 {
            assert_eq!(s_odd(n).unwrap().len() as u64, euler_phi(n) / 2, "modulus {n}");
        }
    }

    #[test]
    fn bernoulli_frozen_values() {
        // quadratic characters of small conductor
        let odd3: Vec<_> = s_odd(3).unwrap();
        assert_eq!(bernoulli_b1(&odd3[0]).as_rational(), Some(rat(-1, 3)));
        let odd4: Vec<_> = s_odd(4).unwrap();
        assert_eq!(bernoulli_b1(&odd4[0]).as_rational(), Some(rat(-1, 2)));
        let odd6: Vec<_> = s_odd(6).unwrap();
        assert_eq!(bernoulli_b1(&odd6[0]).as_rational(), Some(rat(-2, 3)));
        // trivial character: B_1 equals phi(N)/2 for N >= 2
        for n in 2..=10u64 {
            let triv = DirichletCharacter::trivial(n).unwrap();
            assert_eq!(
                bernoulli_b1(&triv).as_rational(),
                Some(rat(euler_phi(n) as i64, 2)),
                "modulus {n}"
            );
        }
        // nontrivial even characters vanish
        for n in 3..=20u64 {
            for chi in all_characters(n).unwrap() {
                if !chi.is_trivial() && !chi.is_odd() {
                    assert!(bernoulli_b1(&chi).is_zero());
                }
            }
        }
    }

    #[test]
    fn bernoulli_conjugation_and_quartic() {
        // the two order-4 characters mod 5 have conjugate B_1 with
        // trace -6/5 and norm 2/5
        let quartics: Vec<_> =
            s_odd(5).unwrap().into_iter().filter(|c| c.order() == 4).collect();
        assert_eq!(quartics.len(), 2);
        let b = bernoulli_b1(&quartics[0]);
        let bc = bernoulli_b1(&quartics[1]);
        assert_eq!(b.conjugate(), bc);
        assert_eq!(b.add(&bc).as_rational(), Some(rat(-6, 5)));
        assert_eq!(b.mul(&bc).as_rational(), Some(rat(2, 5)));
    }

    #[test]
    fn conductors_and_primitive_parts() {
        let odd6 = &s_odd(6).unwrap()[0];
        let (prim, n0) = odd6.primitive_part().unwrap();
        assert_eq!(n0, 3);
        assert_eq!(odd6.conductor(), 3);
        assert_eq!(bernoulli_b1(&prim).as_rational(), Some(rat(-1, 3)));
        let triv12 = DirichletCharacter::trivial(12).unwrap();
        assert_eq!(triv12.conductor(), 1);
        // the odd character mod 8 trivial on 5 is induced from modulus 4
        let lifted: Vec<_> = s_odd(8)
            .unwrap()
            .into_iter()
            .filter(|c| c.value_exponent(5).unwrap() == 0)
            .collect();
        assert_eq!(lifted.len(), 1);
        assert_eq!(lifted[0].conductor(), 4);
    }

    #[test]
    fn euler_product_matches_direct_sum() {
        for n in [6u64, 10, 12, 14, 15, 18] {
            for chi in all_characters(n).unwrap() {
                match euler_product_b1(&chi).unwrap() {
                    Some(product) => {
                        assert_eq!(product, bernoulli_b1(&chi), "modulus {n}, {chi:?}")
                    }
                    None => assert!(chi.is_trivial()),
                }
            }
        }
    }

    #[test]
    fn first_vanishing_modulus_is_fourteen() {
        for n in 3..14u64 {
            assert!(s0_set(n).unwrap().is_empty(), "unexpected vanishing at {n}");
        }
        let s0 = s0_set(14).unwrap();
        assert_eq!(s0.len(), 1);
        // the vanishing character is the quadratic one induced from 7
        assert_eq!(s0[0].order(), 2);
        assert_eq!(s0[0].conductor(), 7);
    }

    #[test]
    fn t1_sizes_follow_quotient_counts() {
        for n in [7u64, 15, 16, 24, 35] {
            let s_len = s_odd(n).unwrap().len() as u64;
            for s in units(n) {
                if s == 1 {
                    continue;
                }
                let t1 = t1_set(n, s).unwrap().len() as u64;
                let sub = cyclic_subgroup(s, n).unwrap();
                if sub.contains(&(n - 1)) {
                    assert_eq!(t1, 0, "s={s} mod {n}");
                } else {
                    assert_eq!(t1, s_len / sub.len() as u64, "s={s} mod {n}");
                }
            }
        }
    }

    #[test]
    fn vanishing_bounds_frozen() {
        let b24 = vanishing_bounds(24).unwrap();
        assert_eq!(b24.terms.len(), 2);
        let t2 = &b24.terms[0];
        assert_eq!((t2.prime, t2.u_count), (2, 0));
        assert_eq!(t2.minus_one_hit, Some(1));
        assert_eq!(t2.w_summand, rat(1, 8));
        let t3 = &b24.terms[1];
        assert_eq!((t3.prime, t3.u_count), (3, 1));
        assert_eq!(t3.v, rat(1, 4));
        assert_eq!(t3.w_summand, rat(1, 4));

        let b30 = vanishing_bounds(30).unwrap();
        let vs: Vec<BigRational> = b30.terms.iter().map(|t| t.v.clone()).collect();
        assert_eq!(vs, vec![rat(1, 4), rat(0, 1), rat(0, 1)]);
        assert_eq!(b30.s0_count, 1);

        let b42 = vanishing_bounds(42).unwrap();
        let vs: Vec<BigRational> = b42.terms.iter().map(|t| t.v.clone()).collect();
        assert_eq!(vs, vec![rat(1, 6), rat(0, 1), rat(1, 6)]);

        assert!(matches!(vanishing_bounds(8), Err(Error::TwoPrimeFactorsRequired(8))));
    }

    #[test]
    fn vanishing_chain_holds() {
        for n in [6u64, 12, 24, 30, 42, 60, 66] {
            let b = vanishing_bounds(n).unwrap();
            assert!(b.s_ratio <= b.v_sum, "s <= v failed at {n}");
            assert!(b.v_sum <= b.w_sum, "v <= w failed at {n}");
            for t in &b.terms {
                assert!(t.v <= t.w_summand, "per-term bound failed at {n}, p={}", t.prime);
            }
        }
    }

    #[test]
    fn fourier_reconstruction_small() {
        for (modulus, n_mult) in [(7u64, 3u64), (5, 3), (8, 3), (12, 5), (9, 4), (15, 7)] {
            assert!(
                fourier_reconstruction_ok(modulus, n_mult).unwrap(),
                "reconstruction failed at N={modulus}, n={n_mult}"
            );
        }
        assert!(fourier_reconstruction_ok(9, 3).is_err());
    }

    #[test]
    fn primitivity_small_moduli() {
        // prime powers have empty S0, so they are always primitive
        for n in [4u64, 5, 7, 8, 9, 16, 25, 27] {
            assert!(primitivity_by_characters(n).unwrap().primitive, "modulus {n}");
        }
        for n in [6u64, 12, 14, 30] {
            assert!(primitivity_by_characters(n).unwrap().primitive, "modulus {n}");
        }
    }
}
