//! CM types and multiplication types on the units of `Z/qZ`.
//!
//! A multiplication type records `floor(n a / q)` on units; the associated
//! CM types are the 0/1 antisymmetric functions vanishing on the low arc
//! `(0, q/3]`. Everything here reduces to a system of binary constraints:
//! forced values on arcs plus parity edges from antisymmetry and twisting,
//! so enumeration of types, twist-fixed members, and decompositions of a
//! multiplication type all share one solver. Functions are stored as dense
//! value vectors over the ascending unit list.

use crate::residue::{units, CoprimeInterval, UnitResidue};
use crate::{Error, Result};
use num::rational::Ratio;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

static UNIT_LISTS: OnceLock<Mutex<HashMap<u64, Arc<Vec<u64>>>>> = OnceLock::new();

/// Shared ascending unit list for a modulus.
pub fn unit_list(q: u64) -> Arc<Vec<u64>> {
    let cache = UNIT_LISTS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(u) = cache.lock().unwrap().get(&q) {
        return u.clone();
    }
    let u = Arc::new(units(q));
    cache.lock().unwrap().insert(q, u.clone());
    u
}

/// A function on the units of `Z/qZ`, stored over the ascending unit list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitFunction {
    modulus: u64,
    values: Vec<u8>,
}

impl std::fmt::Debug for UnitFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UnitFunction(mod {}, {})", self.modulus, self.csv_string())
    }
}

impl UnitFunction {
    pub fn new(modulus: u64, values: Vec<u8>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus(modulus));
        }
        if values.len() != unit_list(modulus).len() {
            return Err(Error::Internal(format!(
                "value vector length {} does not match unit count of {}",
                values.len(),
                modulus
            )));
        }
        Ok(UnitFunction { modulus, values })
    }

    pub fn from_fn(modulus: u64, f: impl Fn(u64) -> u8) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus(modulus));
        }
        let values = unit_list(modulus).iter().map(|&a| f(a)).collect();
        Ok(UnitFunction { modulus, values })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    fn unit_index(&self, a: u64) -> Result<usize> {
        let us = unit_list(self.modulus);
        us.binary_search(&(a % self.modulus))
            .map_err(|_| Error::NotAUnit { value: a, modulus: self.modulus })
    }

    pub fn value(&self, a: u64) -> Result<u8> {
        Ok(self.values[self.unit_index(a)?])
    }

    /// Serialization for 0/1 functions: digits over ascending units, no
    /// separators.
    pub fn bit_string(&self) -> String {
        self.values.iter().map(|v| char::from(b'0' + v)).collect()
    }

    pub fn csv_string(&self) -> String {
        self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }

    /// `g compose theta_s`, the twist `a -> g(s a)`.
    pub fn compose_theta(&self, s: u64) -> Result<Self> {
        let s = UnitResidue::new(s, self.modulus)?;
        let us = unit_list(self.modulus);
        let mut values = Vec::with_capacity(self.values.len());
        for &a in us.iter() {
            let sa = UnitResidue::new(a, self.modulus)?.mul(s).value();
            values.push(self.value(sa)?);
        }
        Ok(UnitFunction { modulus: self.modulus, values })
    }

    /// `g(a) + g(-a) = target` on every unit.
    pub fn is_antisymmetric(&self, target: u8) -> bool {
        let us = unit_list(self.modulus);
        us.iter().all(|&a| {
            let neg = (self.modulus - a) % self.modulus;
            self.value(a).unwrap() + self.value(neg).unwrap() == target
        })
    }

    /// Units `s` with `g compose theta_s = g`; always contains 1.
    pub fn stabilizer(&self) -> Vec<u64> {
        unit_list(self.modulus)
            .iter()
            .copied()
            .filter(|&s| self.compose_theta(s).map(|t| t == *self).unwrap_or(false))
            .collect()
    }

    pub fn is_primitive(&self) -> bool {
        self.stabilizer() == vec![1]
    }

    /// Pointwise sum with another function on the same units.
    pub fn pointwise_add(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::Internal("modulus mismatch in pointwise sum".into()));
        }
        let values =
            self.values.iter().zip(other.values.iter()).map(|(a, b)| a + b).collect();
        Ok(UnitFunction { modulus: self.modulus, values })
    }
}

/// `a -> floor(n a / q)` on units, the convention matching differential
/// bases.
pub fn dual_mult_type(n: u64, q: u64) -> Result<UnitFunction> {
    if q < 2 {
        return Err(Error::InvalidModulus(q));
    }
    if n % q == 0 {
        return Err(Error::GcdObstruction { n, modulus: q });
    }
    if n > 200 {
        return Err(Error::Internal(format!("multiplicity {n} out of supported range")));
    }
    UnitFunction::from_fn(q, |a| (n * a / q) as u8)
}

/// `a -> n - 1 - floor(n a / q)` on units, the tangent-space convention.
pub fn lie_mult_type(n: u64, q: u64) -> Result<UnitFunction> {
    let dual = dual_mult_type(n, q)?;
    let top = (n - 1) as u8;
    UnitFunction::new(q, dual.values().iter().map(|&v| top - v).collect())
}

/// Unit residues in the low arc `(0, q/3]`.
pub fn low_arc(q: u64) -> Vec<u64> {
    let third = Ratio::new(q as i64, 3);
    CoprimeInterval::new(Ratio::from(0), third, true, false, q)
        .map(|iv| iv.enumerate().into_iter().map(|a| a as u64).collect())
        .unwrap_or_default()
}

/// Middle unit pairs `{a, q-a}` with `a` in the open arc `(q/3, q/2)`.
pub fn middle_pairs(q: u64) -> Vec<(u64, u64)> {
    let third = Ratio::new(q as i64, 3);
    let half = Ratio::new(q as i64, 2);
    CoprimeInterval::open(third, half, q)
        .map(|iv| iv.enumerate().into_iter().map(|a| (a as u64, q - a as u64)).collect())
        .unwrap_or_default()
}

/// Moduli up to `max` whose middle arc contains no unit.
pub fn moduli_without_middle_units(max: u64) -> Vec<u64> {
    (4..=max).filter(|&q| middle_pairs(q).is_empty()).collect()
}

/// A system of binary values on units with forced values and parity edges.
struct BinarySystem {
    modulus: u64,
    units: Arc<Vec<u64>>,
    index: HashMap<u64, usize>,
    forced: Vec<Option<u8>>,
    adj: Vec<Vec<(usize, u8)>>,
    inconsistent: bool,
}

/// Solved form: a base assignment plus independent free components that can
/// be flipped wholesale.
struct SolvedSystem {
    base: Vec<u8>,
    /// each component lists (index, parity relative to the representative)
    free_components: Vec<Vec<(usize, u8)>>,
}

impl BinarySystem {
    fn new(modulus: u64) -> Self {
        let units = unit_list(modulus);
        let index: HashMap<u64, usize> =
            units.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let n = units.len();
        BinarySystem {
            modulus,
            units,
            index,
            forced: vec![None; n],
            adj: vec![Vec::new(); n],
            inconsistent: false,
        }
    }

    fn idx(&self, a: u64) -> usize {
        self.index[&(a % self.modulus)]
    }

    fn force(&mut self, a: u64, v: u8) {
        let i = self.idx(a);
        match self.forced[i] {
            None => self.forced[i] = Some(v),
            Some(old) if old == v => {}
            Some(_) => self.inconsistent = true,
        }
    }

    fn add_edge(&mut self, a: u64, b: u64, parity: u8) {
        let (i, j) = (self.idx(a), self.idx(b));
        if i == j {
            if parity == 1 {
                self.inconsistent = true;
            }
            return;
        }
        self.adj[i].push((j, parity));
        self.adj[j].push((i, parity));
    }

    /// Antisymmetry edges `g(a) + g(-a) = 1` on all units.
    fn add_antisymmetry(&mut self) {
        let us = self.units.clone();
        for &a in us.iter() {
            if a < self.modulus - a {
                self.add_edge(a, self.modulus - a, 1);
            } else if a == self.modulus - a {
                self.inconsistent = true;
            }
        }
    }

    fn solve(&self) -> Option<SolvedSystem> {
        if self.inconsistent {
            return None;
        }
        let n = self.units.len();
        let mut value = vec![None::<u8>; n];
        let mut free_components = Vec::new();
        // first propagate from forced seeds, then sweep leftover components
        // as free ones anchored at their smallest unit
        for seeded in [true, false] {
            for start in 0..n {
                if value[start].is_some() {
                    continue;
                }
                let seed = match (seeded, self.forced[start]) {
                    (true, Some(v)) => v,
                    (true, None) => continue,
                    (false, _) => 0,
                };
                let mut stack = vec![start];
                let mut component = vec![(start, 0u8)];
                value[start] = Some(seed);
                while let Some(i) = stack.pop() {
                    let vi = value[i].unwrap();
                    for &(j, parity) in &self.adj[i] {
                        let vj = vi ^ parity;
                        match value[j] {
                            None => {
                                value[j] = Some(vj);
                                component.push((j, vj ^ seed));
                                stack.push(j);
                            }
                            Some(existing) if existing == vj => {}
                            Some(_) => return None,
                        }
                    }
                    if let Some(f) = self.forced[i] {
                        if f != vi {
                            return None;
                        }
                    }
                }
                if !seeded {
                    // no forced vertex can live here: forced seeds all ran
                    free_components.push(component);
                }
            }
        }
        Some(SolvedSystem {
            base: value.into_iter().map(|v| v.unwrap()).collect(),
            free_components,
        })
    }
}

impl SolvedSystem {
    fn count(&self) -> u128 {
        1u128 << self.free_components.len()
    }

    fn canonical(&self) -> Vec<u8> {
        self.base.clone()
    }

    fn enumerate(&self, modulus: u64, cap: u128, context: &'static str) -> Result<Vec<UnitFunction>> {
        if self.count() > cap {
            return Err(Error::SearchSpaceTooLarge { context, size: self.count() });
        }
        let f = self.free_components.len();
        let mut out = Vec::with_capacity(1 << f);
        for mask in 0u64..(1u64 << f) {
            let mut vals = self.base.clone();
            for (c, comp) in self.free_components.iter().enumerate() {
                if mask >> c & 1 == 1 {
                    for &(i, parity) in comp {
                        vals[i] = 1 ^ parity;
                    }
                }
            }
            out.push(UnitFunction { modulus, values: vals });
        }
        out.sort();
        Ok(out)
    }
}

/// Base system for membership in the CM-type set: antisymmetric, zero on the
/// low arc.
fn cm_type_system(q: u64) -> BinarySystem {
    let mut sys = BinarySystem::new(q);
    sys.add_antisymmetry();
    for a in low_arc(q) {
        sys.force(a, 0);
        sys.force(q - a, 1);
    }
    sys
}

/// All antisymmetric 0/1 functions vanishing on the low arc; `2^k` of them
/// for `k` middle pairs.
pub fn enumerate_cm_types(q: u64) -> Result<Vec<UnitFunction>> {
    if q < 3 {
        return Err(Error::InvalidModulus(q));
    }
    let sys = cm_type_system(q);
    let solved = sys
        .solve()
        .ok_or_else(|| Error::Internal(format!("CM type constraints inconsistent at {q}")))?;
    solved.enumerate(q, 1 << 20, "cm type enumeration")
}

/// One admissible twist `s`: the canonical witness whose twist stays a CM
/// type, and whether that witness is unique.
#[derive(Clone, Debug)]
pub struct STwist {
    pub s: u64,
    pub witness: UnitFunction,
    pub unique: bool,
}

/// The twists `s != 1` admitting a CM type `g` with `g compose theta_s` still
/// a CM type. Witnesses resolve free middle pairs to 0 at the smaller unit.
pub fn compute_s(q: u64) -> Result<Vec<STwist>> {
    if q < 3 {
        return Err(Error::InvalidModulus(q));
    }
    let mut out = Vec::new();
    for &s in unit_list(q).iter() {
        if s == 1 {
            continue;
        }
        let s_res = UnitResidue::new(s, q)?;
        let mut sys = cm_type_system(q);
        for a in low_arc(q) {
            // g vanishes on s * low arc so that the twist vanishes on it
            let sa = UnitResidue::new(a, q)?.mul(s_res).value();
            sys.force(sa, 0);
            sys.force(q - sa, 1);
        }
        if let Some(solved) = sys.solve() {
            let witness = UnitFunction { modulus: q, values: solved.canonical() };
            debug_assert!(witness.compose_theta(s).unwrap().value(1).unwrap() == 0);
            out.push(STwist { s, witness, unique: solved.count() == 1 });
        }
    }
    Ok(out)
}

/// Closed-form expectation for the admissible twist set of a prime power.
/// None when the modulus is outside the covered families.
pub fn expected_s_closed_form(q: u64) -> Option<Vec<u64>> {
    let f = crate::residue::factor(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0].0;
    let mut s: Vec<u64> = match p {
        2 if q >= 16 => vec![q / 2 - 1],
        3 if q >= 9 => vec![2, (q + 1) / 2, q / 3 - 1, 2 * q / 3 - 1],
        _ if p >= 5 => vec![2, (q + 1) / 2],
        _ => return None,
    };
    s.sort_unstable();
    s.dedup();
    Some(s)
}

/// All CM types fixed by the twist `theta_s`.
pub fn fixed_members(q: u64, s: u64) -> Result<Vec<UnitFunction>> {
    if q < 3 {
        return Err(Error::InvalidModulus(q));
    }
    let s_res = UnitResidue::new(s, q)?;
    let mut sys = cm_type_system(q);
    for &a in unit_list(q).iter() {
        let sa = UnitResidue::new(a, q)?.mul(s_res).value();
        sys.add_edge(a, sa, 0);
    }
    match sys.solve() {
        None => Ok(Vec::new()),
        Some(solved) => solved.enumerate(q, 1 << 20, "fixed member enumeration"),
    }
}

/// Decompositions of the cubic multiplication type as an unordered sum of two
/// CM types, canonically ordered.
pub fn decompose_dual_type(q: u64) -> Result<Vec<(UnitFunction, UnitFunction)>> {
    let h = dual_mult_type(3, q)?;
    let all_first = {
        let sys = cm_type_system(q);
        let solved = sys
            .solve()
            .ok_or_else(|| Error::Internal(format!("CM type constraints inconsistent at {q}")))?;
        solved.enumerate(q, 1 << 20, "multiplication type decomposition")?
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for g1 in all_first {
        let mut g2_vals = Vec::with_capacity(g1.values.len());
        let mut ok = true;
        for (v1, hv) in g1.values.iter().zip(h.values.iter()) {
            match hv.checked_sub(*v1) {
                Some(v2) if v2 <= 1 => g2_vals.push(v2),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let g2 = UnitFunction { modulus: q, values: g2_vals };
        debug_assert!(g2.is_antisymmetric(1));
        let key = if g1 <= g2 {
            (g1.clone(), g2.clone())
        } else {
            (g2.clone(), g1.clone())
        };
        if seen.insert(key.clone()) {
            out.push(key);
        }
    }
    out.sort();
    Ok(out)
}

/// CM types `g` with `h = g + (g compose theta_s)` for the cubic type `h`.
pub fn decompose_twisted(q: u64, s: u64) -> Result<Vec<UnitFunction>> {
    let h = dual_mult_type(3, q)?;
    let s_res = UnitResidue::new(s, q)?;
    let mut sys = cm_type_system(q);
    for &a in unit_list(q).iter() {
        let sa = UnitResidue::new(a, q)?.mul(s_res).value();
        match h.value(a)? {
            0 => {
                sys.force(a, 0);
                sys.force(sa, 0);
            }
            2 => {
                sys.force(a, 1);
                sys.force(sa, 1);
            }
            _ => sys.add_edge(a, sa, 1),
        }
    }
    let solutions = match sys.solve() {
        None => Vec::new(),
        Some(solved) => solved.enumerate(q, 1 << 20, "twisted decomposition")?,
    };
    // the parity encoding is exact for h in {0,1,2}; keep a full check anyway
    let verified: Vec<UnitFunction> = solutions
        .into_iter()
        .filter(|g| {
            let twisted = g.compose_theta(s).unwrap();
            g.pointwise_add(&twisted).unwrap() == h
        })
        .collect();
    Ok(verified)
}

/// The odd-parity CM type of an odd modulus: middle value 1 exactly at odd
/// units.
pub fn odd_parity_type(q: u64) -> Result<UnitFunction> {
    if q < 5 || q % 2 == 0 {
        return Err(Error::InvalidModulus(q));
    }
    let mut f = base_type(q)?;
    for (a, b) in middle_pairs(q) {
        let (odd_one, even_one) = if a % 2 == 1 { (a, b) } else { (b, a) };
        f.set(odd_one, 1);
        f.set(even_one, 0);
    }
    f.build()
}

/// The step CM type of a power of two: 0 below `q/2`, 1 above.
pub fn dyadic_type(q: u64) -> Result<UnitFunction> {
    if q < 8 || !q.is_power_of_two() {
        return Err(Error::InvalidModulus(q));
    }
    UnitFunction::from_fn(q, |a| u8::from(a > q / 2))
}

/// The residue-class CM type of a power of three: middle value 1 exactly at
/// units congruent to 2 mod 3.
pub fn triadic_type(q: u64) -> Result<UnitFunction> {
    let f = crate::residue::factor(q);
    if f.len() != 1 || f[0].0 != 3 || q < 9 {
        return Err(Error::InvalidModulus(q));
    }
    let mut t = base_type(q)?;
    for (a, b) in middle_pairs(q) {
        let (two_mod_three, other) = if a % 3 == 2 { (a, b) } else { (b, a) };
        t.set(two_mod_three, 1);
        t.set(other, 0);
    }
    t.build()
}

/// Builder for CM types: forced arcs prefilled, middle pairs set by hand.
struct TypeBuilder {
    modulus: u64,
    values: Vec<Option<u8>>,
}

fn base_type(q: u64) -> Result<TypeBuilder> {
    let us = unit_list(q);
    let mut values = vec![None; us.len()];
    let index: HashMap<u64, usize> = us.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    for a in low_arc(q) {
        values[index[&a]] = Some(0);
        values[index[&(q - a)]] = Some(1);
    }
    Ok(TypeBuilder { modulus: q, values })
}

impl TypeBuilder {
    fn set(&mut self, a: u64, v: u8) {
        let us = unit_list(self.modulus);
        let i = us.binary_search(&a).expect("setting a non-unit");
        self.values[i] = Some(v);
    }

    fn build(self) -> Result<UnitFunction> {
        let values: Option<Vec<u8>> = self.values.into_iter().collect();
        values
            .map(|v| UnitFunction { modulus: self.modulus, values: v })
            .ok_or_else(|| Error::Internal("type builder left values unset".into()))
    }
}
