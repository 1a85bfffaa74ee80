//! Python module `permstat`: permutations, their statistics, the bijections
//! between them, generating polynomials and the identity checker.

use std::collections::BTreeMap;

use permstat::bijections::{self, foata_phi, foata_varphi};
use permstat::series::{gamma_decompose, tvar};
use permstat::verify::{self, VerifyConfig};
use permstat::{master, Family, Scheme, StatVector, Which};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn from_json(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(value_err)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "Permutation", module = "permstat", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPermutation(permstat::Permutation);

#[pymethods]
impl PyPermutation {
    /// Accepts a one-line word as a list of letters or a string like "3 1 2".
    #[new]
    fn new(word: &Bound<'_, PyAny>) -> PyResult<Self> {
        let p = if let Ok(s) = word.extract::<String>() {
            permstat::parse(&s)
        } else {
            permstat::Permutation::new(word.extract::<Vec<usize>>()?)
        };
        p.map(PyPermutation).map_err(value_err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        PyPermutation(permstat::Permutation::identity(n))
    }

    fn word(&self) -> Vec<usize> {
        self.0.word().to_vec()
    }

    fn inverse(&self) -> Self {
        PyPermutation(self.0.inverse())
    }

    fn zeta(&self) -> Self {
        PyPermutation(self.0.zeta())
    }

    fn is_derangement(&self) -> bool {
        self.0.is_derangement()
    }

    /// Cycles in standard form (each cycle led by its largest letter) or as found.
    #[pyo3(signature = (standard = true))]
    fn cycles(&self, standard: bool) -> Vec<Vec<usize>> {
        self.0.cycles(standard).cycles.clone()
    }

    fn stats(&self) -> BTreeMap<String, usize> {
        StatVector::of(&self.0).iter().map(|(s, v)| (s.name().to_string(), v)).collect()
    }

    fn ear_set(&self) -> Vec<usize> {
        permstat::stats::ear_set(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?})", self.0.word())
    }
}

/// Applies a named map: foata, foata-c, zeta, phi1, phi1-inv, phisz, phi2.
#[pyfunction]
fn biject(map: &str, perm: &PyPermutation) -> PyResult<PyPermutation> {
    let p = &perm.0;
    let out = match map {
        "foata" => foata_phi(p),
        "foata-c" => foata_varphi(p),
        "zeta" => p.zeta(),
        "phi1" => bijections::phi1(p).map_err(value_err)?,
        "phi1-inv" => bijections::phi1_inverse(p).map_err(value_err)?,
        "phisz" => bijections::phi_sz(p).map_err(value_err)?,
        "phi2" => bijections::phi2(p).map_err(value_err)?,
        other => return Err(PyValueError::new_err(format!("unknown map {other:?}"))),
    };
    Ok(PyPermutation(out))
}

#[pyfunction]
fn valley_hop(perm: &PyPermutation, letters: Vec<usize>) -> PyResult<PyPermutation> {
    if let Some(x) = letters.iter().find(|&&x| x == 0 || x > perm.0.len()) {
        return Err(PyValueError::new_err(format!("letter {x} out of range")));
    }
    Ok(PyPermutation(bijections::valley_hop_set(&perm.0, &letters)))
}

/// Returns (representative, members) of the valley-hopping orbit.
#[pyfunction]
fn orbit(perm: &PyPermutation) -> (PyPermutation, Vec<PyPermutation>) {
    let o = bijections::orbit_of(&perm.0);
    (PyPermutation(o.representative), o.members.into_iter().map(PyPermutation).collect())
}

#[pyclass(name = "Poly", module = "permstat", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly(permstat::Poly);

#[pymethods]
impl PyPoly {
    /// Terms as a list of {"coeff": str, "vars": {name: exponent}}.
    fn terms(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        from_json(py, &self.0.to_json())
    }

    fn variables(&self) -> Vec<String> {
        self.0.variables().into_iter().map(|v| v.name()).collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({})", self.0)
    }
}

/// The n-th polynomial of family A, B, C, D or des2-cyc.
#[pyfunction]
fn family_poly(family: &str, n: usize) -> PyResult<PyPoly> {
    let f: Family = family.parse().map_err(value_err)?;
    f.poly(n).map(PyPoly).map_err(value_err)
}

/// Gamma coefficients of D_n in the basis t^k (1+t)^(n-2k).
#[pyfunction]
fn gamma(n: usize) -> PyResult<Vec<PyPoly>> {
    let d = Family::D.poly(n).map_err(value_err)?;
    let gs = gamma_decompose(&d, n, tvar()).map_err(value_err)?;
    Ok(gs.into_iter().map(PyPoly).collect())
}

/// The master polynomial `which` over S_n under `scheme`.
#[pyfunction]
#[pyo3(signature = (which, n, scheme = "symbolic"))]
fn master_poly(which: &str, n: usize, scheme: &str) -> PyResult<PyPoly> {
    let which: Which = which.parse().map_err(value_err)?;
    let scheme: Scheme = scheme.parse().map_err(value_err)?;
    master::master_with(n, which, scheme).map(PyPoly).map_err(value_err)
}

#[pyfunction]
fn list_checks() -> Vec<(&'static str, &'static str)> {
    verify::all_checks().map(|c| (c.id, c.about)).collect()
}

/// Runs one check (or all of them) and returns the reports as dicts.
#[pyfunction]
#[pyo3(signature = (check = None, n_max = 7, symbolic_cap = 5))]
fn run_verify(py: Python<'_>, check: Option<&str>, n_max: usize, symbolic_cap: usize) -> PyResult<Py<PyAny>> {
    let cfg = VerifyConfig { n_max, symbolic_cap, ..VerifyConfig::default() };
    let reports = py
        .detach(|| match check {
            Some(id) => verify::check(id, &cfg).map(|r| vec![r]),
            None => verify::run_all(&cfg),
        })
        .map_err(value_err)?;
    from_json(py, &serde_json::to_value(&reports).map_err(value_err)?)
}

#[pymodule]
#[pyo3(name = "permstat")]
fn permstat_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyPoly>()?;
    m.add_function(wrap_pyfunction!(biject, m)?)?;
    m.add_function(wrap_pyfunction!(valley_hop, m)?)?;
    m.add_function(wrap_pyfunction!(orbit, m)?)?;
    m.add_function(wrap_pyfunction!(family_poly, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(master_poly, m)?)?;
    m.add_function(wrap_pyfunction!(list_checks, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
