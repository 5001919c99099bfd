//! Python extension module over the core library.  Exposes cyclotomic field
//! arithmetic as a class and the main computations as plain functions; values
//! cross the boundary as ints, exact rational strings, and bit strings.

use num::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use endoclass::characters::{all_characters, bernoulli_b1, s0_set, s_odd};
use endoclass::classifier::{case_table, classify_example, CubicExample};
use endoclass::cm_types::{
    compute_s, decompose_dual_type, dual_mult_type, enumerate_cm_types, expected_s_closed_form,
    moduli_without_middle_units,
};
use endoclass::curve::{differential_basis, genus_from_multiplicities, new_part_dimension};
use endoclass::cyclo::{fixed_subfield, CyclotomicElement};
use endoclass::report::render_rows;
use endoclass::verify::run_suite;

fn value_error(e: endoclass::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An element of a cyclotomic field, held as exact rational coordinates in
/// the power basis of a root of unity.
#[pyclass(frozen)]
struct Cyclotomic(CyclotomicElement);

#[pymethods]
impl Cyclotomic {
    /// Primitive n-th root of unity.
    #[staticmethod]
    fn zeta(n: u64) -> Self {
        Cyclotomic(CyclotomicElement::zeta(n))
    }

    /// Rational constant from a string such as "3" or "-2/7".
    #[staticmethod]
    fn rational(text: &str) -> PyResult<Self> {
        let r: BigRational = text
            .trim()
            .parse()
            .map_err(|e| PyValueError::new_err(format!("bad rational {text:?}: {e}")))?;
        Ok(Cyclotomic(CyclotomicElement::from_rational(r)))
    }

    fn conductor(&self) -> u64 {
        self.0.conductor()
    }

    fn coeffs(&self) -> Vec<String> {
        self.0.coeffs().iter().map(|c| c.to_string()).collect()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// The value as a rational string, or None if it is irrational.
    fn as_rational(&self) -> Option<String> {
        self.0.as_rational().map(|r| r.to_string())
    }

    fn __add__(&self, other: &Cyclotomic) -> Cyclotomic {
        Cyclotomic(self.0.add(&other.0))
    }

    fn __sub__(&self, other: &Cyclotomic) -> Cyclotomic {
        Cyclotomic(self.0.sub(&other.0))
    }

    fn __mul__(&self, other: &Cyclotomic) -> Cyclotomic {
        Cyclotomic(self.0.mul(&other.0))
    }

    fn __neg__(&self) -> Cyclotomic {
        Cyclotomic(self.0.neg())
    }

    fn __eq__(&self, other: &Cyclotomic) -> bool {
        self.0.sub(&other.0).is_zero()
    }

    fn __pow__(&self, exponent: i64, modulo: Option<i64>) -> PyResult<Cyclotomic> {
        if modulo.is_some() {
            return Err(PyValueError::new_err("modular exponentiation is not defined here"));
        }
        Ok(Cyclotomic(self.0.pow(exponent).map_err(value_error)?))
    }

    fn inverse(&self) -> PyResult<Cyclotomic> {
        Ok(Cyclotomic(self.0.checked_inv().map_err(value_error)?))
    }

    /// Image under the Galois automorphism sending the root of unity to its
    /// a-th power.
    fn galois(&self, a: u64) -> PyResult<Cyclotomic> {
        Ok(Cyclotomic(self.0.galois_apply(a).map_err(value_error)?))
    }

    fn conjugate(&self) -> Cyclotomic {
        Cyclotomic(self.0.conjugate())
    }

    /// Trace down to the rationals, as a string.
    fn trace(&self) -> String {
        self.0.trace_to_q().to_string()
    }

    /// Coefficients of the monic minimal polynomial, constant term first.
    fn minimal_polynomial(&self) -> Vec<String> {
        self.0.minimal_polynomial().iter().map(|c| c.to_string()).collect()
    }

    /// Floating-point image under the standard complex embedding.
    fn approx(&self) -> (f64, f64) {
        let z = self.0.embed_complex();
        (z.re, z.im)
    }

    fn __repr__(&self) -> String {
        format!("Cyclotomic(conductor={}, coeffs=[{}])", self.0.conductor(), self.coeffs().join(", "))
    }
}

/// Units modulo n in ascending order.
#[pyfunction]
fn units(n: u64) -> Vec<u64> {
    endoclass::residue::units(n)
}

/// Euler's totient.
#[pyfunction]
fn euler_phi(n: u64) -> u64 {
    endoclass::residue::euler_phi(n)
}

/// Multiplicative order of a modulo n.
#[pyfunction]
fn multiplicative_order(a: u64, n: u64) -> PyResult<u64> {
    endoclass::residue::multiplicative_order(a, n).map_err(value_error)
}

/// Values of the degree-n multiplication type on the ascending units mod q.
#[pyfunction]
fn mult_type(n: u64, q: u64) -> PyResult<Vec<u64>> {
    Ok(dual_mult_type(n, q).map_err(value_error)?.values().iter().map(|&v| v as u64).collect())
}

/// All CM types at modulus q, as bit strings over the ascending units.
#[pyfunction]
fn cm_types(q: u64) -> PyResult<Vec<String>> {
    let mut members = enumerate_cm_types(q).map_err(value_error)?;
    members.sort();
    Ok(members.iter().map(|g| g.bit_string()).collect())
}

/// Twists s admitting a twisted decomposition at q: (s, witness, unique).
#[pyfunction]
fn twist_set(q: u64) -> PyResult<Vec<(u64, String, bool)>> {
    Ok(compute_s(q)
        .map_err(value_error)?
        .into_iter()
        .map(|t| (t.s, t.witness.bit_string(), t.unique))
        .collect())
}

/// Closed-form prediction for the twist set, when one is known.
#[pyfunction]
fn twist_closed_form(q: u64) -> Option<Vec<u64>> {
    expected_s_closed_form(q)
}

/// Unordered pairs of CM types summing to the cubic multiplication type.
#[pyfunction]
fn decompose(q: u64) -> PyResult<Vec<(String, String)>> {
    Ok(decompose_dual_type(q)
        .map_err(value_error)?
        .into_iter()
        .map(|(a, b)| (a.bit_string(), b.bit_string()))
        .collect())
}

/// Witnesses g with h = g + (g . theta_s) at modulus q.
#[pyfunction]
fn decompose_twisted(q: u64, s: u64) -> PyResult<Vec<String>> {
    Ok(endoclass::cm_types::decompose_twisted(q, s)
        .map_err(value_error)?
        .into_iter()
        .map(|g| g.bit_string())
        .collect())
}

/// Moduli up to max whose cubic type takes no middle value.
#[pyfunction]
fn middle_unit_exceptions(max: u64) -> Vec<u64> {
    moduli_without_middle_units(max)
}

/// Twisted first Bernoulli data per character mod n:
/// (exponents, odd, conductor, value coefficients, vanishes).
#[pyfunction]
fn bernoulli_numbers(n: u64) -> PyResult<Vec<(Vec<u64>, bool, u64, Vec<String>, bool)>> {
    Ok(all_characters(n)
        .map_err(value_error)?
        .iter()
        .map(|chi| {
            let value = bernoulli_b1(chi);
            (
                chi.exponents().to_vec(),
                chi.is_odd(),
                chi.conductor(),
                value.coeffs().iter().map(|c| c.to_string()).collect(),
                value.is_zero(),
            )
        })
        .collect())
}

/// (number of odd characters with vanishing twisted Bernoulli number,
///  number of odd characters) at modulus n.
#[pyfunction]
fn vanishing_counts(n: u64) -> PyResult<(usize, usize)> {
    let vanishing = s0_set(n).map_err(value_error)?.len();
    let odd = s_odd(n).map_err(value_error)?.len();
    Ok((vanishing, odd))
}

/// Stated endomorphism algebra table at a prime power, rendered.
#[pyfunction]
fn algebra_table(q: u64) -> PyResult<Vec<String>> {
    Ok(case_table(q).map_err(value_error)?.iter().map(|d| d.render()).collect())
}

/// Endomorphism algebra of the new part for a named cubic, rendered.
/// Forms: "x^3+1", "x^3-x", "x^3+x", "generic".
#[pyfunction]
fn classify_cubic(form: &str, level: u64) -> PyResult<String> {
    let form = CubicExample::parse(form).map_err(value_error)?;
    Ok(classify_example(form, level).map_err(value_error)?.render())
}

/// Same as classify_cubic but as a JSON string with the full structure.
#[pyfunction]
fn classify_cubic_json(form: &str, level: u64) -> PyResult<String> {
    let form = CubicExample::parse(form).map_err(value_error)?;
    Ok(classify_example(form, level).map_err(value_error)?.to_json().to_string())
}

/// Genus of y^N = prod (x - e_i)^{m_i} for distinct roots e_i.
#[pyfunction]
fn genus(level: u64, mults: Vec<u64>) -> PyResult<u64> {
    genus_from_multiplicities(level, &mults).map_err(value_error)
}

/// Dimension of the new part of the Jacobian for the same data.
#[pyfunction]
fn new_part(level: u64, mults: Vec<u64>) -> PyResult<u64> {
    new_part_dimension(level, &mults).map_err(value_error)
}

/// Exponent pairs (a, b) of the holomorphic differentials x^{b-1} dx / y^a
/// on y^N = f(x) with deg f = n.
#[pyfunction]
fn basis_exponents(level: u64, n: u64) -> PyResult<Vec<(u64, u64)>> {
    differential_basis(level, n).map_err(value_error)
}

/// Fixed subfield of the n-th cyclotomic field under a unit subgroup,
/// described as a JSON string.
#[pyfunction]
fn subfield(n: u64, subgroup: Vec<u64>) -> PyResult<String> {
    Ok(fixed_subfield(n, &subgroup).map_err(value_error)?.to_json().to_string())
}

/// Run a verification suite; returns (passed, report text).
#[pyfunction]
#[pyo3(signature = (name, max=None, json=false))]
fn verify(name: &str, max: Option<u64>, json: bool) -> PyResult<(bool, String)> {
    let outcome = run_suite(name, max).map_err(value_error)?;
    Ok((outcome.passed, render_rows(&outcome.rows, json)))
}

#[pymodule]
#[pyo3(name = "endoclass")]
fn extension(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Cyclotomic>()?;
    m.add_function(wrap_pyfunction!(units, m)?)?;
    m.add_function(wrap_pyfunction!(euler_phi, m)?)?;
    m.add_function(wrap_pyfunction!(multiplicative_order, m)?)?;
    m.add_function(wrap_pyfunction!(mult_type, m)?)?;
    m.add_function(wrap_pyfunction!(cm_types, m)?)?;
    m.add_function(wrap_pyfunction!(twist_set, m)?)?;
    m.add_function(wrap_pyfunction!(twist_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_twisted, m)?)?;
    m.add_function(wrap_pyfunction!(middle_unit_exceptions, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli_numbers, m)?)?;
    m.add_function(wrap_pyfunction!(vanishing_counts, m)?)?;
    m.add_function(wrap_pyfunction!(algebra_table, m)?)?;
    m.add_function(wrap_pyfunction!(classify_cubic, m)?)?;
    m.add_function(wrap_pyfunction!(classify_cubic_json, m)?)?;
    m.add_function(wrap_pyfunction!(genus, m)?)?;
    m.add_function(wrap_pyfunction!(new_part, m)?)?;
    m.add_function(wrap_pyfunction!(basis_exponents, m)?)?;
    m.add_function(wrap_pyfunction!(subfield, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
