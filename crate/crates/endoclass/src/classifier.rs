//! The endomorphism-algebra decision engine.
//!
//! For the new part of the Jacobian of `y^q = f(x)` (cubic `f`, prime-power
//! level `q`) the algebra is constrained to a short case list. This module
//! derives the split cases structurally from the CM-type combinatorics:
//! decompositions of the multiplication type into conjugate pairs, their
//! stabilizers, and the fixed subfields those stabilizers cut out. A
//! hardcoded copy of the final case table cross-checks the derivation, and
//! an examples engine records the algebras of specific named cubics.

use crate::cm_types::{
    decompose_twisted, dual_mult_type, fixed_members, middle_pairs, UnitFunction,
};
use crate::cyclo::fixed_subfield;
use crate::poly::ZPoly;
use crate::residue::{euler_phi, factor, mul_mod, units};
use crate::{Error, Result};
use serde_json::json;
use std::cmp::Ordering;
use std::collections::BTreeSet;

/// A field occurring in an endomorphism algebra, in normalized symbolic form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgebraField {
    Rational,
    /// Imaginary or real quadratic field, by fundamental discriminant.
    Quadratic { discriminant: i64 },
    /// Full cyclotomic field; the conductor is never 1, 2, or twice odd.
    Cyclotomic { conductor: u64 },
    /// Proper subfield of a cyclotomic field fixed by a Galois subgroup.
    FixedSubfield {
        conductor: u64,
        subgroup: Vec<u64>,
        degree: u64,
        min_poly: ZPoly,
    },
    /// An unspecified quadratic CM extension of a cyclotomic field.
    CmExtension { base_conductor: u64 },
}

impl AlgebraField {
    /// Cyclotomic field with the conductor normalized and small degrees
    /// collapsed to their quadratic or rational form.
    pub fn cyclotomic(conductor: u64) -> Self {
        debug_assert!(conductor >= 1);
        if conductor <= 2 {
            return AlgebraField::Rational;
        }
        if conductor % 4 == 2 {
            return AlgebraField::cyclotomic(conductor / 2);
        }
        match conductor {
            3 => AlgebraField::Quadratic { discriminant: -3 },
            4 => AlgebraField::Quadratic { discriminant: -4 },
            _ => AlgebraField::Cyclotomic { conductor },
        }
    }

    /// The subfield of `Q(zeta_conductor)` fixed by a unit subgroup, in
    /// normalized form.
    pub fn from_fixing_subgroup(conductor: u64, subgroup: &[u64]) -> Result<Self> {
        if subgroup == [1] {
            return Ok(AlgebraField::cyclotomic(conductor));
        }
        let fd = fixed_subfield(conductor, subgroup)?;
        Ok(match fd.degree {
            1 => AlgebraField::Rational,
            2 => AlgebraField::Quadratic {
                discriminant: fd.quadratic_discriminant.ok_or_else(|| {
                    Error::Internal("degree-2 subfield without a discriminant".into())
                })?,
            },
            _ => AlgebraField::FixedSubfield {
                conductor: fd.ambient_conductor,
                subgroup: fd.fixing_subgroup,
                degree: fd.degree,
                min_poly: fd.generator_min_poly,
            },
        })
    }

    pub fn degree(&self) -> u64 {
        match self {
            AlgebraField::Rational => 1,
            AlgebraField::Quadratic { .. } => 2,
            AlgebraField::Cyclotomic { conductor } => euler_phi(*conductor),
            AlgebraField::FixedSubfield { degree, .. } => *degree,
            AlgebraField::CmExtension { base_conductor } => 2 * euler_phi(*base_conductor),
        }
    }

    pub fn render(&self) -> String {
        match self {
            AlgebraField::Rational => "Q".into(),
            AlgebraField::Quadratic { discriminant } => {
                let radicand = if discriminant % 4 == 0 { discriminant / 4 } else { *discriminant };
                format!("Q(sqrt({radicand}))")
            }
            AlgebraField::Cyclotomic { conductor } => format!("Q(zeta_{conductor})"),
            AlgebraField::FixedSubfield { conductor, subgroup, .. } => {
                let gens: Vec<String> = subgroup.iter().map(|s| s.to_string()).collect();
                format!("Q(zeta_{conductor})^{{{}}}", gens.join(","))
            }
            AlgebraField::CmExtension { base_conductor } => {
                format!("CM-ext(Q(zeta_{base_conductor}))")
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            AlgebraField::Rational => json!({"type": "rational"}),
            AlgebraField::Quadratic { discriminant } => {
                json!({"type": "quadratic", "disc": discriminant})
            }
            AlgebraField::Cyclotomic { conductor } => {
                json!({"type": "cyclotomic", "n": conductor})
            }
            AlgebraField::FixedSubfield { conductor, subgroup, degree, min_poly } => json!({
                "type": "period",
                "n": conductor,
                "subgroup": subgroup,
                "degree": degree,
                "minpoly": min_poly.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            }),
            AlgebraField::CmExtension { base_conductor } => {
                json!({"type": "cm_extension", "n": base_conductor, "degree": self.degree()})
            }
        }
    }
}

/// One simple factor `Mat_t(F)` of a semisimple algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSummand {
    pub matrix_size: u64,
    pub field: AlgebraField,
}

impl Ord for AlgebraSummand {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.matrix_size, self.field.degree())
            .cmp(&(other.matrix_size, other.field.degree()))
            .then_with(|| self.field.cmp(&other.field))
    }
}

impl PartialOrd for AlgebraSummand {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl AlgebraSummand {
    pub fn new(matrix_size: u64, field: AlgebraField) -> Self {
        debug_assert!(matrix_size >= 1);
        AlgebraSummand { matrix_size, field }
    }

    pub fn render(&self) -> String {
        if self.matrix_size == 1 {
            self.field.render()
        } else {
            format!("Mat_{}({})", self.matrix_size, self.field.render())
        }
    }
}

/// A semisimple algebra as a sorted sum of matrix algebras over fields.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgebraDescriptor {
    summands: Vec<AlgebraSummand>,
}

impl AlgebraDescriptor {
    pub fn new(mut summands: Vec<AlgebraSummand>) -> Self {
        debug_assert!(!summands.is_empty());
        summands.sort();
        AlgebraDescriptor { summands }
    }

    pub fn simple(field: AlgebraField) -> Self {
        AlgebraDescriptor::new(vec![AlgebraSummand::new(1, field)])
    }

    pub fn matrix(size: u64, field: AlgebraField) -> Self {
        AlgebraDescriptor::new(vec![AlgebraSummand::new(size, field)])
    }

    pub fn summands(&self) -> &[AlgebraSummand] {
        &self.summands
    }

    /// Dimension as a rational vector space: sum of `t^2 [F:Q]`.
    pub fn dimension_over_q(&self) -> u64 {
        self.summands.iter().map(|s| s.matrix_size * s.matrix_size * s.field.degree()).sum()
    }

    /// The reduced degree `sum of t [F:Q]`, the bookkeeping weight that CM
    /// theory pins to twice the abelian-variety dimension.
    pub fn cm_weighted_degree(&self) -> u64 {
        self.summands.iter().map(|s| s.matrix_size * s.field.degree()).sum()
    }

    pub fn is_commutative(&self) -> bool {
        self.summands.iter().all(|s| s.matrix_size == 1)
    }

    pub fn is_simple(&self) -> bool {
        self.summands.len() == 1
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.summands.iter().map(|s| s.render()).collect();
        parts.join(" (+) ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "summands": self.summands.iter().map(|s| json!({
                "t": s.matrix_size,
                "field": s.field.to_json(),
            })).collect::<Vec<_>>(),
            "commutative": self.is_commutative(),
            "simple": self.is_simple(),
            "dimension_over_q": self.dimension_over_q(),
            "text": self.render(),
        })
    }
}

/// The four shapes the centralizer of the cyclotomic action can take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentralizerCase {
    /// The cyclotomic field itself: the new part is simple, no extra symmetry.
    Cyclotomic,
    /// A quadratic CM extension of the cyclotomic field: simple with CM.
    QuadraticExtension,
    /// The new part splits into two conjugate pieces.
    SplitPair,
    /// The new part is a square of one piece: 2x2 matrices over the field.
    DoubledMatrix,
}

impl CentralizerCase {
    pub const ALL: [CentralizerCase; 4] = [
        CentralizerCase::Cyclotomic,
        CentralizerCase::QuadraticExtension,
        CentralizerCase::SplitPair,
        CentralizerCase::DoubledMatrix,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CentralizerCase::Cyclotomic => "cyclotomic",
            CentralizerCase::QuadraticExtension => "quadratic-extension",
            CentralizerCase::SplitPair => "split-pair",
            CentralizerCase::DoubledMatrix => "doubled-matrix",
        }
    }
}

/// Checks the level hypotheses of the classification: a prime power, at
/// least 9 for powers of 3 and at least 4 for powers of 2.
pub fn validate_level(q: u64) -> Result<(u64, u32)> {
    let fs = factor(q);
    if fs.len() != 1 {
        return Err(Error::PrimePowerRequired(q));
    }
    let (p, r) = fs[0];
    let ok = match p {
        2 => q >= 4,
        3 => q >= 9,
        _ => true,
    };
    if !ok {
        return Err(Error::NotCovered(format!(
            "level {q} falls below the classification range for its prime"
        )));
    }
    Ok((p, r))
}

fn simple_row(q: u64) -> AlgebraDescriptor {
    AlgebraDescriptor::simple(AlgebraField::cyclotomic(q))
}

fn cm_extension_row(q: u64) -> AlgebraDescriptor {
    AlgebraDescriptor::simple(AlgebraField::CmExtension { base_conductor: q })
}

fn split_sum_row(q: u64) -> AlgebraDescriptor {
    let e = AlgebraField::cyclotomic(q);
    AlgebraDescriptor::new(vec![
        AlgebraSummand::new(1, e.clone()),
        AlgebraSummand::new(1, e),
    ])
}

fn doubled_row(q: u64) -> AlgebraDescriptor {
    AlgebraDescriptor::matrix(2, AlgebraField::cyclotomic(q))
}

/// The matrix size and coefficient field contributed by one CM type: the
/// stabilizer order and the subfield it fixes.
fn stabilizer_data(q: u64, g: &UnitFunction) -> Result<(u64, AlgebraField)> {
    let stab = g.stabilizer();
    let field = AlgebraField::from_fixing_subgroup(q, &stab)?;
    Ok((stab.len() as u64, field))
}

/// The algebra of a split new part with conjugate pieces of CM types `g1`
/// and `g2`: a single matrix algebra when the types are twists of each
/// other, a two-summand algebra otherwise.
pub fn pair_algebra(q: u64, g1: &UnitFunction, g2: &UnitFunction) -> Result<AlgebraDescriptor> {
    let (t1, f1) = stabilizer_data(q, g1)?;
    if g1 == g2 {
        return Ok(AlgebraDescriptor::matrix(2 * t1, f1));
    }
    let related = units(q)
        .into_iter()
        .filter(|&s| s != 1)
        .any(|s| g1.compose_theta(s).map(|t| &t == g2).unwrap_or(false));
    if related {
        let (t2, f2) = stabilizer_data(q, g2)?;
        debug_assert_eq!(t1, t2);
        debug_assert_eq!(f1, f2);
        Ok(AlgebraDescriptor::matrix(2 * t1, f1))
    } else {
        let (t2, f2) = stabilizer_data(q, g2)?;
        Ok(AlgebraDescriptor::new(vec![
            AlgebraSummand::new(t1, f1),
            AlgebraSummand::new(t2, f2),
        ]))
    }
}

fn ordered_pair(a: UnitFunction, b: UnitFunction) -> (UnitFunction, UnitFunction) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// All algebras a split new part can realize at level `q`, derived without
/// enumerating the full decomposition space: only pairs that are twisted
/// solutions or contain an imprimitive type can differ from the generic
/// two-field sum, and both kinds are found by constraint solving.
pub fn split_outcomes(q: u64) -> Result<Vec<AlgebraDescriptor>> {
    let h = dual_mult_type(3, q)?;
    let k = middle_pairs(q).len();
    if k == 0 {
        // no free middle units: the split-into-conjugates case is vacuous
        return Ok(Vec::new());
    }
    if k - 1 >= 63 {
        return Err(Error::SearchSpaceTooLarge {
            context: "split decomposition count",
            size: 1u128 << (k - 1),
        });
    }
    let total_pairs = 1u64 << (k - 1);
    let mut exceptional: BTreeSet<(UnitFunction, UnitFunction)> = BTreeSet::new();
    for s in units(q) {
        if s == 1 {
            continue;
        }
        for g in decompose_twisted(q, s)? {
            let partner = g.compose_theta(s)?;
            exceptional.insert(ordered_pair(g, partner));
        }
        for g in fixed_members(q, s)? {
            let partner = UnitFunction::from_fn(q, |a| {
                h.value(a).unwrap() - g.value(a).unwrap()
            })?;
            exceptional.insert(ordered_pair(g, partner));
        }
    }
    debug_assert!(exceptional.len() as u64 <= total_pairs);
    let mut out: BTreeSet<AlgebraDescriptor> = BTreeSet::new();
    for (g1, g2) in &exceptional {
        out.insert(pair_algebra(q, g1, g2)?);
    }
    if (exceptional.len() as u64) < total_pairs {
        out.insert(split_sum_row(q));
    }
    Ok(out.into_iter().collect())
}

/// The possible algebras under one centralizer case. The field cases demand
/// a primitive multiplication type; the doubled case is only admissible when
/// no unit sits in the middle band.
pub fn algebras_for_case(q: u64, case: CentralizerCase) -> Result<Vec<AlgebraDescriptor>> {
    validate_level(q)?;
    let h = dual_mult_type(3, q)?;
    match case {
        CentralizerCase::Cyclotomic | CentralizerCase::QuadraticExtension => {
            if !h.is_primitive() {
                return Err(Error::CaseRuledOut {
                    modulus: q,
                    reason: "multiplication type is induced from a proper subfield".into(),
                });
            }
            Ok(vec![match case {
                CentralizerCase::Cyclotomic => simple_row(q),
                _ => cm_extension_row(q),
            }])
        }
        CentralizerCase::SplitPair => split_outcomes(q),
        CentralizerCase::DoubledMatrix => {
            if h.values().contains(&1) {
                return Err(Error::CaseRuledOut {
                    modulus: q,
                    reason: "a unit hits the middle band, so the new part is not a square".into(),
                });
            }
            Ok(vec![doubled_row(q)])
        }
    }
}

/// The full case table at a level: the verbatim classification list, for
/// cross-checking the derived outcomes.
pub fn case_table(q: u64) -> Result<Vec<AlgebraDescriptor>> {
    let (p, _) = validate_level(q)?;
    let mut rows: BTreeSet<AlgebraDescriptor> = BTreeSet::new();
    rows.insert(simple_row(q));
    rows.insert(cm_extension_row(q));
    match q {
        4 => {
            rows.insert(doubled_row(4));
        }
        5 | 9 => {
            rows.insert(doubled_row(q));
        }
        7 => {
            rows.insert(AlgebraDescriptor::new(vec![
                AlgebraSummand::new(3, AlgebraField::Quadratic { discriminant: -7 }),
                AlgebraSummand::new(1, AlgebraField::cyclotomic(7)),
            ]));
        }
        8 => {
            rows.insert(AlgebraDescriptor::new(vec![
                AlgebraSummand::new(2, AlgebraField::Quadratic { discriminant: -4 }),
                AlgebraSummand::new(2, AlgebraField::Quadratic { discriminant: -8 }),
            ]));
        }
        _ if p >= 5 => {
            rows.insert(split_sum_row(q));
        }
        _ if p == 3 => {
            rows.insert(split_sum_row(q));
            rows.insert(doubled_row(q));
        }
        _ => {
            // powers of 2 from 16 up; at 16 itself the two-field sum is
            // vacuous, since the only decomposition pair contains the type
            // constant on each half
            if q > 16 {
                rows.insert(split_sum_row(q));
            }
            rows.insert(AlgebraDescriptor::new(vec![
                AlgebraSummand::new(1, AlgebraField::cyclotomic(q)),
                AlgebraSummand::new(
                    2,
                    AlgebraField::from_fixing_subgroup(q, &[1, q / 2 - 1])?,
                ),
            ]));
        }
    }
    Ok(rows.into_iter().collect())
}

/// The case table under the extra hypothesis that the cubic has full Galois
/// symmetry over a field containing the relevant roots of unity: the split
/// cases are pruned and only the simple rows remain.
pub fn case_table_generic_galois(q: u64) -> Result<Vec<AlgebraDescriptor>> {
    validate_level(q)?;
    let mut rows = vec![simple_row(q), cm_extension_row(q)];
    rows.sort();
    Ok(rows)
}

/// Named cubics with worked-out endomorphism algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubicExample {
    /// `x^3 + 1`
    PlusOne,
    /// `x^3 - x`
    MinusX,
    /// `x^3 + x`
    PlusX,
    /// a cubic in general position (transcendental root cross-ratio)
    Generic,
}

impl CubicExample {
    pub const ALL: [CubicExample; 4] = [
        CubicExample::PlusOne,
        CubicExample::MinusX,
        CubicExample::PlusX,
        CubicExample::Generic,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CubicExample::PlusOne => "x^3+1",
            CubicExample::MinusX => "x^3-x",
            CubicExample::PlusX => "x^3+x",
            CubicExample::Generic => "generic",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        CubicExample::ALL
            .into_iter()
            .find(|f| f.as_str() == text)
            .ok_or_else(|| Error::NotCovered(format!("unknown cubic form {text:?}")))
    }
}

/// The endomorphism algebra of the new part at one level for a named cubic.
/// Combinations with no recorded answer are refused, never guessed.
pub fn classify_example(form: CubicExample, level: u64) -> Result<AlgebraDescriptor> {
    if level < 2 {
        return Err(Error::InvalidModulus(level));
    }
    // the elliptic bottom levels are classical: CM by the obvious field
    if level == 2 {
        return Ok(AlgebraDescriptor::simple(match form {
            CubicExample::PlusOne => AlgebraField::Quadratic { discriminant: -3 },
            CubicExample::MinusX | CubicExample::PlusX => {
                AlgebraField::Quadratic { discriminant: -4 }
            }
            CubicExample::Generic => AlgebraField::Rational,
        }));
    }
    if level == 3 {
        return Ok(AlgebraDescriptor::simple(AlgebraField::cyclotomic(3)));
    }
    if level == 4 {
        return Ok(doubled_row(4));
    }
    let prime = {
        let fs = factor(level);
        if fs.len() == 1 {
            Some(fs[0].0)
        } else {
            None
        }
    };
    match form {
        CubicExample::PlusOne => {
            if level % 3 != 0 && level != 10 {
                return Ok(AlgebraDescriptor::simple(AlgebraField::cyclotomic(3 * level)));
            }
            if prime == Some(3) && level >= 9 {
                return Ok(doubled_row(level));
            }
        }
        CubicExample::MinusX => {
            if level % 2 == 0 && level % 3 != 0 && level != 10 {
                return Ok(AlgebraDescriptor::simple(AlgebraField::cyclotomic(2 * level)));
            }
            match prime {
                Some(p) if p >= 5 => {
                    return Ok(match level {
                        5 => doubled_row(5),
                        7 => AlgebraDescriptor::new(vec![
                            AlgebraSummand::new(3, AlgebraField::Quadratic { discriminant: -7 }),
                            AlgebraSummand::new(1, AlgebraField::cyclotomic(7)),
                        ]),
                        _ => split_sum_row(level),
                    });
                }
                Some(3) => {
                    return Ok(if level == 9 { doubled_row(9) } else { split_sum_row(level) });
                }
                _ => {}
            }
        }
        CubicExample::PlusX => {
            if let Some(p) = prime {
                if p >= 5 && level != 5 && level != 7 {
                    return Ok(split_sum_row(level));
                }
            }
        }
        CubicExample::Generic => {
            if prime.is_some() {
                return Ok(simple_row(level));
            }
        }
    }
    Err(Error::NotCovered(format!(
        "no recorded algebra for {} at level {level}",
        form.as_str()
    )))
}

/// Direct sum of per-level algebras into the algebra of the full Jacobian.
pub fn tower_algebra(parts: &[AlgebraDescriptor]) -> AlgebraDescriptor {
    let mut summands = Vec::new();
    for part in parts {
        summands.extend(part.summands().iter().cloned());
    }
    AlgebraDescriptor::new(summands)
}

/// The levels of the cover tower at a prime power: `p, p^2, ..., q`.
pub fn tower_levels(q: u64) -> Result<Vec<u64>> {
    let fs = factor(q);
    if fs.len() != 1 {
        return Err(Error::PrimePowerRequired(q));
    }
    let (p, r) = fs[0];
    let mut levels = Vec::with_capacity(r as usize);
    let mut level = 1;
    for _ in 0..r {
        level *= p;
        levels.push(level);
    }
    Ok(levels)
}

/// Assembles the full Jacobian algebra of a named cubic at a prime-power
/// level from its per-level new parts.
pub fn example_tower_algebra(form: CubicExample, q: u64) -> Result<AlgebraDescriptor> {
    let mut parts = Vec::new();
    for level in tower_levels(q)? {
        parts.push(classify_example(form, level)?);
    }
    Ok(tower_algebra(&parts))
}

/// Whether multiplying the first residue list by `u` turns it into a
/// permutation of the second, modulo `modulus`.
pub fn carries_to(u: u64, t1: &[u64], t2: &[u64], modulus: u64) -> bool {
    if t1.len() != t2.len() || modulus == 0 {
        return false;
    }
    let mut left: Vec<u64> = t1.iter().map(|&x| mul_mod(u, x % modulus, modulus)).collect();
    let mut right: Vec<u64> = t2.iter().map(|&x| x % modulus).collect();
    left.sort_unstable();
    right.sort_unstable();
    left == right
}

/// The smallest unit carrying one residue list onto a permutation of the
/// other, if any unit does.
pub fn equivalent_under_unit(t1: &[u64], t2: &[u64], modulus: u64) -> Option<u64> {
    units(modulus).into_iter().find(|&u| carries_to(u, t1, t2, modulus))
}

/// Whether a fully identified descriptor instantiates a row whose fields may
/// be stated only up to degree.  Exact summands must match; a CM-extension
/// summand in the row accepts any field of the right degree at the same
/// matrix size.
pub fn refines(concrete: &AlgebraDescriptor, row: &AlgebraDescriptor) -> bool {
    let a = concrete.summands();
    let b = row.summands();
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            x == y
                || (x.matrix_size == y.matrix_size
                    && matches!(y.field, AlgebraField::CmExtension { .. })
                    && x.field.degree() == y.field.degree())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cm_types::decompose_dual_type;

    fn quad(d: i64) -> AlgebraField {
        AlgebraField::Quadratic { discriminant: d }
    }

    #[test]
    fn field_normalization() {
        assert_eq!(AlgebraField::cyclotomic(1), AlgebraField::Rational);
        assert_eq!(AlgebraField::cyclotomic(2), AlgebraField::Rational);
        assert_eq!(AlgebraField::cyclotomic(3), quad(-3));
        assert_eq!(AlgebraField::cyclotomic(4), quad(-4));
        assert_eq!(AlgebraField::cyclotomic(6), quad(-3));
        assert_eq!(AlgebraField::cyclotomic(10), AlgebraField::Cyclotomic { conductor: 5 });
        assert_eq!(AlgebraField::cyclotomic(12).degree(), 4);
        assert_eq!(AlgebraField::CmExtension { base_conductor: 7 }.degree(), 12);
    }

    #[test]
    fn rendering() {
        assert_eq!(quad(-4).render(), "Q(sqrt(-1))");
        assert_eq!(quad(-8).render(), "Q(sqrt(-2))");
        assert_eq!(quad(-7).render(), "Q(sqrt(-7))");
        assert_eq!(quad(8).render(), "Q(sqrt(2))");
        let row = AlgebraDescriptor::new(vec![
            AlgebraSummand::new(3, quad(-7)),
            AlgebraSummand::new(1, AlgebraField::cyclotomic(7)),
        ]);
        assert_eq!(row.render(), "Q(zeta_7) (+) Mat_3(Q(sqrt(-7)))");
        assert_eq!(doubled_row(4).render(), "Mat_2(Q(sqrt(-1)))");
    }

    #[test]
    fn dimension_bookkeeping() {
        let row7 = AlgebraDescriptor::new(vec![
            AlgebraSummand::new(3, quad(-7)),
            AlgebraSummand::new(1, AlgebraField::cyclotomic(7)),
        ]);
        assert_eq!(row7.dimension_over_q(), 9 * 2 + 6);
        assert_eq!(row7.cm_weighted_degree(), 3 * 2 + 6);
        assert!(!row7.is_commutative());
        assert!(!row7.is_simple());
        let simple = simple_row(13);
        assert_eq!(simple.dimension_over_q(), 12);
        assert!(simple.is_commutative() && simple.is_simple());
    }

    #[test]
    fn split_outcomes_frozen() {
        assert_eq!(split_outcomes(4).unwrap(), Vec::<AlgebraDescriptor>::new());
        assert_eq!(split_outcomes(5).unwrap(), vec![doubled_row(5)]);
        assert_eq!(split_outcomes(9).unwrap(), vec![doubled_row(9)]);
        assert_eq!(
            split_outcomes(7).unwrap(),
            vec![AlgebraDescriptor::new(vec![
                AlgebraSummand::new(3, quad(-7)),
                AlgebraSummand::new(1, AlgebraField::cyclotomic(7)),
            ])]
        );
        assert_eq!(
            split_outcomes(8).unwrap(),
            vec![AlgebraDescriptor::new(vec![
                AlgebraSummand::new(2, quad(-4)),
                AlgebraSummand::new(2, quad(-8)),
            ])]
        );
        for q in [11u64, 13, 25, 49] {
            assert_eq!(split_outcomes(q).unwrap(), vec![split_sum_row(q)], "q = {q}");
        }
        // at 16 the single free middle pair leaves one decomposition, so the
        // plain two-field sum never occurs; from 32 on it reappears
        let alpha16 = AlgebraField::from_fixing_subgroup(16, &[1, 7]).unwrap();
        assert_eq!(alpha16.degree(), 4);
        assert_eq!(
            split_outcomes(16).unwrap(),
            vec![AlgebraDescriptor::new(vec![
                AlgebraSummand::new(1, AlgebraField::cyclotomic(16)),
                AlgebraSummand::new(2, alpha16),
            ])]
        );
        let out32 = split_outcomes(32).unwrap();
        assert_eq!(out32.len(), 2);
        assert!(out32.contains(&split_sum_row(32)));
        let out27 = split_outcomes(27).unwrap();
        assert_eq!(out27, vec![split_sum_row(27), doubled_row(27)]);
    }

    #[test]
    fn split_outcomes_match_brute_force() {
        for q in [5u64, 7, 8, 9, 11, 13, 16, 25, 27, 32] {
            let mut brute: BTreeSet<AlgebraDescriptor> = BTreeSet::new();
            for (g1, g2) in decompose_dual_type(q).unwrap() {
                brute.insert(pair_algebra(q, &g1, &g2).unwrap());
            }
            let derived: BTreeSet<AlgebraDescriptor> =
                split_outcomes(q).unwrap().into_iter().collect();
            assert_eq!(brute, derived, "q = {q}");
        }
    }

    #[test]
    fn case_table_rows() {
        let t25 = case_table(25).unwrap();
        assert_eq!(
            t25,
            {
                let mut v = vec![
                    simple_row(25),
                    cm_extension_row(25),
                    split_sum_row(25),
                ];
                v.sort();
                v
            }
        );
        let t7 = case_table(7).unwrap();
        assert_eq!(t7.len(), 3);
        assert!(t7.contains(&simple_row(7)));
        assert!(t7.contains(&cm_extension_row(7)));
        let t4 = case_table(4).unwrap();
        assert_eq!(t4.len(), 3);
        assert!(t4.contains(&doubled_row(4)));
        assert!(case_table(3).is_err());
        assert!(case_table(6).is_err());
        assert!(case_table(2).is_err());
        assert_eq!(case_table_generic_galois(13).unwrap().len(), 2);
    }

    #[test]
    fn union_of_cases_matches_table() {
        for q in [4u64, 5, 7, 8, 9, 16, 25, 27] {
            let mut union: BTreeSet<AlgebraDescriptor> = BTreeSet::new();
            for case in CentralizerCase::ALL {
                match algebras_for_case(q, case) {
                    Ok(rows) => union.extend(rows),
                    Err(Error::CaseRuledOut { .. }) => {}
                    Err(e) => panic!("unexpected error at q = {q}: {e}"),
                }
            }
            let table: BTreeSet<AlgebraDescriptor> =
                case_table(q).unwrap().into_iter().collect();
            assert_eq!(union, table, "q = {q}");
        }
    }

    #[test]
    fn weighted_degree_audit() {
        for q in [4u64, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32] {
            for row in case_table(q).unwrap() {
                let expected = if row == simple_row(q) {
                    euler_phi(q)
                } else {
                    2 * euler_phi(q)
                };
                assert_eq!(row.cm_weighted_degree(), expected, "q = {q}, row {}", row.render());
            }
        }
    }

    #[test]
    fn doubled_case_admissibility() {
        assert!(matches!(
            algebras_for_case(5, CentralizerCase::DoubledMatrix),
            Err(Error::CaseRuledOut { .. })
        ));
        assert_eq!(
            algebras_for_case(4, CentralizerCase::DoubledMatrix).unwrap(),
            vec![doubled_row(4)]
        );
        assert_eq!(
            algebras_for_case(13, CentralizerCase::Cyclotomic).unwrap(),
            vec![simple_row(13)]
        );
        assert_eq!(algebras_for_case(4, CentralizerCase::SplitPair).unwrap(), vec![]);
    }

    #[test]
    fn example_algebras() {
        assert_eq!(
            classify_example(CubicExample::PlusOne, 5).unwrap(),
            AlgebraDescriptor::simple(AlgebraField::Cyclotomic { conductor: 15 })
        );
        assert_eq!(
            classify_example(CubicExample::MinusX, 8).unwrap(),
            AlgebraDescriptor::simple(AlgebraField::Cyclotomic { conductor: 16 })
        );
        assert_eq!(
            classify_example(CubicExample::PlusX, 11).unwrap(),
            split_sum_row(11)
        );
        assert_eq!(
            classify_example(CubicExample::MinusX, 27).unwrap(),
            split_sum_row(27)
        );
        assert_eq!(classify_example(CubicExample::PlusOne, 9).unwrap(), doubled_row(9));
        assert_eq!(classify_example(CubicExample::MinusX, 5).unwrap(), doubled_row(5));
        assert_eq!(classify_example(CubicExample::MinusX, 9).unwrap(), doubled_row(9));
        let seven = classify_example(CubicExample::MinusX, 7).unwrap();
        assert_eq!(seven.render(), "Q(zeta_7) (+) Mat_3(Q(sqrt(-7)))");
        assert_eq!(classify_example(CubicExample::Generic, 13).unwrap(), simple_row(13));
        for form in CubicExample::ALL {
            assert_eq!(classify_example(form, 4).unwrap(), doubled_row(4));
            assert_eq!(
                classify_example(form, 3).unwrap(),
                AlgebraDescriptor::simple(quad(-3))
            );
        }
        assert!(classify_example(CubicExample::PlusX, 6).is_err());
        assert!(classify_example(CubicExample::PlusOne, 10).is_err());
        assert!(classify_example(CubicExample::Generic, 12).is_err());
    }

    #[test]
    fn towers() {
        let t121 = example_tower_algebra(CubicExample::Generic, 121).unwrap();
        assert_eq!(
            t121,
            AlgebraDescriptor::new(vec![
                AlgebraSummand::new(1, AlgebraField::cyclotomic(11)),
                AlgebraSummand::new(1, AlgebraField::cyclotomic(121)),
            ])
        );
        assert!(t121.is_commutative());
        let t9 = example_tower_algebra(CubicExample::PlusOne, 9).unwrap();
        assert_eq!(
            t9,
            AlgebraDescriptor::new(vec![
                AlgebraSummand::new(1, quad(-3)),
                AlgebraSummand::new(2, AlgebraField::cyclotomic(9)),
            ])
        );
        assert!(!t9.is_commutative());
        assert_eq!(tower_levels(8).unwrap(), vec![2, 4, 8]);
        assert!(tower_levels(12).is_err());
        // towers over primes above 7 stay commutative in every case
        for q in [121u64, 169] {
            for row in case_table(q).unwrap() {
                assert!(row.is_commutative(), "q = {q}");
            }
        }
    }

    #[test]
    fn unit_equivalence_of_residue_triples() {
        // exponent triples of the two degree-27 quotient curves
        let t1 = [18u64, 1, 8];
        let t2 = [9u64, 1, 17];
        assert_eq!(equivalent_under_unit(&t1, &t2, 27), Some(17));
        assert!(carries_to(17, &t1, &t2, 27));
        assert!(!carries_to(10, &t1, &t2, 27));
        let s1 = [6u64, 1, 2];
        let s2 = [3u64, 1, 5];
        assert_eq!(equivalent_under_unit(&s1, &s2, 9), Some(5));
        assert_eq!(equivalent_under_unit(&t2, &t2, 27), Some(1));
        assert_eq!(equivalent_under_unit(&[1, 1, 1], &[1, 1, 2], 5), None);
    }

    #[test]
    fn refinement_accepts_degree_matched_extensions() {
        let row = AlgebraDescriptor::simple(AlgebraField::CmExtension { base_conductor: 5 });
        let concrete = AlgebraDescriptor::simple(AlgebraField::cyclotomic(15));
        assert!(refines(&concrete, &row));
        assert!(refines(&row, &row));
        // wrong degree
        let small = AlgebraDescriptor::simple(AlgebraField::cyclotomic(5));
        assert!(!refines(&small, &row));
        // exact rows only accept themselves
        assert!(!refines(&small, &AlgebraDescriptor::simple(AlgebraField::cyclotomic(7))));
        assert!(refines(&small, &small));
        // matrix sizes must agree even over a degree-matched extension
        let doubled = AlgebraDescriptor::matrix(2, AlgebraField::cyclotomic(15));
        assert!(!refines(&doubled, &row));
    }
}
