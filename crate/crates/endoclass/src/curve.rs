//! Geometry of the cyclic covers `y^N = f(x)` for a cubic `f`.
//!
//! Genus bookkeeping via Riemann-Hurwitz, the holomorphic differential basis
//! and the multiplication type it induces, dimensions of the new parts at
//! each level of the cover tower, reduction of a cubic to depressed form,
//! and the classification of the extra automorphisms a depressed cubic
//! admits. All coefficient arithmetic is exact.

use crate::cm_types::UnitFunction;
use crate::poly::{self, QPoly, ZPoly};
use crate::residue::{euler_phi, gcd};
use crate::{Error, Result};
use num::{BigInt, BigRational, One, Zero};

/// Riemann-Hurwitz genus of `y^N = prod (x - e_i)^{m_i}` with distinct
/// `e_i`, including the ramification over infinity.
pub fn genus_from_multiplicities(level: u64, multiplicities: &[u64]) -> Result<u64> {
    if level == 0 || multiplicities.is_empty() {
        return Err(Error::InvalidModulus(level));
    }
    let n: u64 = multiplicities.iter().sum();
    let mut two_g_minus_2: i64 = -2 * level as i64;
    for &m in multiplicities {
        two_g_minus_2 += (level - gcd(level, m)) as i64;
    }
    two_g_minus_2 += (level - gcd(level, n)) as i64;
    let two_g = two_g_minus_2 + 2;
    if two_g < 0 || two_g % 2 != 0 {
        return Err(Error::Internal(format!(
            "branch data gives non-genus value {two_g_minus_2} at level {level}"
        )));
    }
    Ok(two_g as u64 / 2)
}

/// Genus of `y^N = f(x)` for a squarefree cubic.
pub fn genus_squarefree_cubic(level: u64) -> Result<u64> {
    genus_from_multiplicities(level, &[1, 1, 1])
}

/// Dimension of the new part of the Jacobian at one level of the tower:
/// branch points surviving at this level, minus two, times `phi / 2`.
pub fn new_part_dimension(level: u64, multiplicities: &[u64]) -> Result<u64> {
    if level == 0 || multiplicities.is_empty() {
        return Err(Error::InvalidModulus(level));
    }
    let n: u64 = multiplicities.iter().sum();
    let mut r = multiplicities.iter().filter(|&&m| m % level != 0).count() as u64;
    if n % level != 0 {
        r += 1;
    }
    if r <= 2 {
        return Ok(0);
    }
    let product = euler_phi(level) * (r - 2);
    debug_assert_eq!(product % 2, 0);
    Ok(product / 2)
}

/// New-part dimension at a level for the squarefree cubic tower.
pub fn cubic_new_part_dimension(level: u64) -> Result<u64> {
    new_part_dimension(level, &[1, 1, 1])
}

/// Checks that new parts over all levels dividing `N` fill up the genus.
pub fn genus_decomposition_audit(level: u64) -> Result<bool> {
    let genus = genus_squarefree_cubic(level)?;
    let mut total = 0;
    for d in 2..=level {
        if level % d == 0 {
            total += cubic_new_part_dimension(d)?;
        }
    }
    Ok(total == genus)
}

/// Exponent pairs `(a, b)` of the holomorphic differentials
/// `x^{b-1} dx / y^a`, from the valuation inequality at the points over
/// infinity, where the cover has gcd(N, n) branches of ramification index
/// N / gcd(N, n).
pub fn differential_basis(level: u64, n: u64) -> Result<Vec<(u64, u64)>> {
    if level < 2 {
        return Err(Error::InvalidModulus(level));
    }
    let d = gcd(level, n);
    let mut basis = Vec::new();
    for a in 1..level {
        let mut b = 1;
        // order at each point over infinity stays nonnegative while
        // n a - N b >= d
        while n * a >= level * b + d {
            basis.push((a, b));
            b += 1;
        }
    }
    Ok(basis)
}

/// The multiplication type read off the differential basis: the number of
/// basis elements in each unit eigenspace.
pub fn type_from_basis(level: u64, n: u64) -> Result<UnitFunction> {
    let basis = differential_basis(level, n)?;
    UnitFunction::from_fn(level, |a| {
        basis.iter().filter(|&&(x, _)| x == a).count() as u8
    })
}

/// A cubic with the quadratic term removed: `t^3 + p t + q` after
/// `x = t - shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepressedCubic {
    pub shift: BigRational,
    pub linear: BigRational,
    pub constant: BigRational,
}

impl DepressedCubic {
    /// `-4 p^3 - 27 q^2`.
    pub fn discriminant(&self) -> BigRational {
        let four = BigRational::from(BigInt::from(4));
        let twenty_seven = BigRational::from(BigInt::from(27));
        -(&four * &self.linear * &self.linear * &self.linear)
            - twenty_seven * &self.constant * &self.constant
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }
}

/// Depresses `x^3 + A x^2 + B x + C` by the shift `x = t - A/3`.
pub fn depress_cubic(a: &BigRational, b: &BigRational, c: &BigRational) -> DepressedCubic {
    let three = BigRational::from(BigInt::from(3));
    let shift = a / &three;
    let linear = b - a * a / &three;
    let constant = c - a * b / &three
        + BigRational::from(BigInt::from(2)) * a * a * a
            / BigRational::from(BigInt::from(27));
    DepressedCubic { shift, linear, constant }
}

/// The automorphism group of `y^N = t^3 + p t + q` modulo the hyperelliptic-
/// style core, under the hypotheses that make the count clean.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizerQuotient {
    /// Only the cover scaling `(t, y) -> (t, zeta_N y)` survives.
    Cyclic { order: u64 },
    /// `q = 0` adds `(t, y) -> (-t, zeta_{2N} y)`.
    CyclicDouble { order: u64 },
    /// `p = 0` adds `(t, y) -> (omega t, zeta y)` with a cube root of unity.
    CyclicTriple { order: u64 },
}

impl NormalizerQuotient {
    pub fn order(&self) -> u64 {
        match self {
            NormalizerQuotient::Cyclic { order }
            | NormalizerQuotient::CyclicDouble { order }
            | NormalizerQuotient::CyclicTriple { order } => *order,
        }
    }

    pub fn generator_description(&self) -> &'static str {
        match self {
            NormalizerQuotient::Cyclic { .. } => "(t, y) -> (t, zeta y)",
            NormalizerQuotient::CyclicDouble { .. } => "(t, y) -> (-t, zeta y)",
            NormalizerQuotient::CyclicTriple { .. } => "(t, y) -> (omega t, zeta y)",
        }
    }
}

/// Classifies the extra automorphisms of `y^N = t^3 + p t + q`: requires `N`
/// coprime to 3, not 2 or 4, and a smooth cubic.
pub fn normalizer_classification(
    level: u64,
    cubic: &DepressedCubic,
) -> Result<NormalizerQuotient> {
    if level == 2 || level == 4 {
        return Err(Error::NormalizerHypothesis(format!(
            "level {level} admits extra coincidences"
        )));
    }
    if level < 2 || gcd(level, 3) != 1 {
        return Err(Error::NormalizerHypothesis(format!(
            "level {level} is not coprime to 3"
        )));
    }
    if cubic.is_singular() {
        return Err(Error::SingularCubic);
    }
    let p_zero = cubic.linear.is_zero();
    let q_zero = cubic.constant.is_zero();
    debug_assert!(!(p_zero && q_zero), "smooth cubic cannot drop both terms");
    Ok(if p_zero {
        NormalizerQuotient::CyclicTriple { order: 3 * level }
    } else if q_zero {
        NormalizerQuotient::CyclicDouble { order: 2 * level }
    } else {
        NormalizerQuotient::Cyclic { order: level }
    })
}

/// Degenerations of the Legendre-style family `x (x - 1) (x - lambda)` after
/// depression: rational `lambda` killing the constant term, and the minimal
/// polynomial of the irrational values killing the linear term.
#[derive(Clone, Debug)]
pub struct LambdaDegenerations {
    pub constant_term_roots: Vec<BigRational>,
    pub linear_term_min_poly: ZPoly,
    pub linear_term_disc: i64,
}

/// The depressed coefficients of the lambda family as polynomials in lambda,
/// and where they vanish.
pub fn lambda_degenerations() -> LambdaDegenerations {
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    // x (x - 1) (x - lambda) = x^3 - (1 + lambda) x^2 + lambda x
    // as polynomials in lambda: A = -1 - lambda, B = lambda, C = 0
    let a: QPoly = vec![r(-1, 1), r(-1, 1)];
    let b: QPoly = vec![r(0, 1), r(1, 1)];
    let a2 = poly::qmul(&a, &a);
    let a3 = poly::qmul(&a2, &a);
    // B' = B - A^2/3, C' = C - A B / 3 + 2 A^3 / 27
    let b_prime = poly::qsub(&b, &poly::qscale(&a2, &r(1, 3)));
    let c_prime = poly::qsub(
        &poly::qscale(&a3, &r(2, 27)),
        &poly::qscale(&poly::qmul(&a, &b), &r(1, 3)),
    );
    let mut constant_term_roots = poly::rational_roots(&c_prime);
    constant_term_roots.sort();
    // clear the linear-term numerator to an integer polynomial
    let scaled: Vec<BigInt> = b_prime
        .iter()
        .map(|c| {
            let v = c * BigRational::from(BigInt::from(-3));
            debug_assert!(v.denom().is_one());
            v.numer().clone()
        })
        .collect();
    let b0 = i64::try_from(&scaled[1]).unwrap();
    let c0 = i64::try_from(&scaled[0]).unwrap();
    let disc = poly::squarefree_kernel(b0 * b0 - 4 * c0);
    LambdaDegenerations {
        constant_term_roots,
        linear_term_min_poly: scaled,
        linear_term_disc: disc,
    }
}

/// Evaluates the depressed coefficients of the lambda family at a specific
/// rational `lambda`.
pub fn lambda_family_cubic(lambda: &BigRational) -> DepressedCubic {
    let one = BigRational::one();
    let a = -(&one + lambda);
    let c = BigRational::zero();
    depress_cubic(&a, lambda, &c)
}
