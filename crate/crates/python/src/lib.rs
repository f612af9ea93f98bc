//! Python bindings: the Picard model of either surface, its Galois
//! invariants, arrangement verification and single residues.
//!
//! Results cross the boundary as plain lists and dicts of ints and strings.

use dp2_core::brauer_residue::{residue_report, DivisorialValuation, SymbolClass};
use dp2_core::dp2geom::{GaloisGenerator, PicardModel as CoreModel, SurfaceCase};
use dp2_core::exactalg::IntMatrix;
use dp2_core::galois_lattice::{invariant_report_with, DEFAULT_CLOSURE_BOUND};
use dp2_core::polyring::{parse, Domain};
use dp2_core::refvar::{
    builtin_example, family_member, parse_config_with_prime, verify, ArrangementConfig,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn rows(m: &IntMatrix) -> PyResult<Vec<Vec<i64>>> {
    m.to_i64_rows()
        .ok_or_else(|| runtime_err("matrix entry exceeds 64 bits"))
}

fn case_of(name: &str) -> PyResult<SurfaceCase> {
    SurfaceCase::from_name(name).ok_or_else(|| {
        value_err(format!(
            "unknown case {name:?}; expected nonsquare or square-d"
        ))
    })
}

/// Exceptional curves, intersection data and Galois action of one surface.
#[pyclass(frozen)]
pub struct PicardModel {
    case: SurfaceCase,
    inner: CoreModel,
}

#[pymethods]
impl PicardModel {
    #[new]
    fn new(case: &str) -> PyResult<Self> {
        let case = case_of(case)?;
        let inner = CoreModel::build(case).map_err(runtime_err)?;
        Ok(Self { case, inner })
    }

    #[getter]
    fn case(&self) -> &'static str {
        self.case.name()
    }

    /// `(label, equation, class)` for each of the 56 curves.
    fn curves(&self) -> Vec<(String, String, Vec<i64>)> {
        self.inner
            .curves()
            .iter()
            .zip(self.inner.classes())
            .map(|(c, cls)| {
                (
                    c.label.to_string(),
                    c.equation_string(self.case),
                    cls.to_i64(),
                )
            })
            .collect()
    }

    fn intersection_matrix(&self) -> Vec<Vec<i32>> {
        self.inner.intersection_matrix().to_vec()
    }

    fn gram(&self) -> PyResult<Vec<Vec<i64>>> {
        rows(self.inner.gram())
    }

    fn anticanonical(&self) -> Vec<i64> {
        self.inner.anticanonical().to_i64()
    }

    fn generators(&self) -> Vec<&'static str> {
        self.case.generators().iter().map(|g| g.name()).collect()
    }

    /// Matrix of a generator; column j is the image of the j-th basis class.
    fn galois_matrix(&self, generator: &str) -> PyResult<Vec<Vec<i64>>> {
        let g = GaloisGenerator::from_name(generator)
            .filter(|g| self.case.generators().contains(g))
            .ok_or_else(|| value_err(format!("no generator {generator:?} for {}", self.case)))?;
        rows(&self.inner.galois_matrix(g).map_err(runtime_err)?)
    }

    #[pyo3(signature = (closure_bound = DEFAULT_CLOSURE_BOUND))]
    fn invariants<'py>(
        &self,
        py: Python<'py>,
        closure_bound: usize,
    ) -> PyResult<Bound<'py, PyDict>> {
        let r = invariant_report_with(&self.inner, closure_bound).map_err(runtime_err)?;
        let d = PyDict::new(py);
        let basis: Vec<Vec<i64>> = r
            .invariant
            .basis_vectors()
            .iter()
            .map(|v| v.iter().map(|x| i64::try_from(x).expect("small")).collect())
            .collect();
        d.set_item("group_order", r.group_order)?;
        d.set_item("rank", r.rank)?;
        d.set_item("basis", basis)?;
        d.set_item("kappa", r.kappa.to_i64())?;
        d.set_item("mu", r.mu.as_ref().map(|m| m.to_i64()))?;
        let orbits: Vec<Vec<String>> = r
            .orbits
            .iter()
            .map(|o| o.iter().map(|l| l.to_string()).collect())
            .collect();
        d.set_item("orbits", orbits)?;
        d.set_item("orbit_index", r.orbit_index.as_ref().map(|i| i.to_string()))?;
        d.set_item("mu_in_orbit_sums", r.mu_in_orbit_sums)?;
        d.set_item("warnings", r.warnings.clone())?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("PicardModel({:?})", self.case.name())
    }
}

/// A line arrangement `A = ∏ lᵢ`, `B = ∏ mⱼ` with a form `f`, over 𝔽_p.
#[pyclass(frozen)]
pub struct Arrangement {
    inner: ArrangementConfig,
}

#[pymethods]
impl Arrangement {
    /// The bundled example over 𝔽₁₃.
    #[staticmethod]
    fn example() -> Self {
        Self {
            inner: builtin_example(),
        }
    }

    #[staticmethod]
    #[pyo3(signature = (text, prime = None))]
    fn from_config(text: &str, prime: Option<u64>) -> PyResult<Self> {
        let inner = parse_config_with_prime(text, prime).map_err(value_err)?;
        Ok(Self { inner })
    }

    /// The member of the one-parameter family with `m = 2q − 8`.
    fn family(&self, q: u32) -> PyResult<Self> {
        let inner = family_member(q, &self.inner).map_err(value_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn prime(&self) -> u64 {
        self.inner.field.modulus()
    }

    #[getter]
    fn parameters(&self) -> (u32, u32, u32) {
        (self.inner.g, self.inner.n, self.inner.m)
    }

    fn lines(&self) -> Vec<String> {
        self.inner.lines().map(|l| l.to_string()).collect()
    }

    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let v = verify(&self.inner).map_err(value_err)?;
        let d = PyDict::new(py);
        d.set_item("passed", v.passed())?;
        let conditions = PyDict::new(py);
        for c in &v.conditions.results {
            conditions.set_item(c.condition.roman(), c.passed)?;
        }
        d.set_item("conditions", conditions)?;
        let witnesses: Vec<(String, String)> = v
            .conditions
            .results
            .iter()
            .filter(|c| !c.passed)
            .flat_map(|c| {
                c.witnesses
                    .iter()
                    .map(|w| (c.condition.roman().to_string(), w.to_string()))
            })
            .collect();
        d.set_item("witnesses", witnesses)?;
        d.set_item("equation", v.equation.symbolic.clone())?;
        d.set_item("bidegree", v.equation.bidegree)?;
        d.set_item("bidegree_ok", v.equation.bidegree_ok)?;
        let residues: Vec<(String, String, bool)> = v
            .alpha
            .residues
            .iter()
            .map(|c| (c.line.to_string(), c.residue.to_string(), c.passed()))
            .collect();
        d.set_item("residues", residues)?;
        d.set_item("local_cases_pass", v.local.passed())?;
        d.set_item("d", v.normalization.d.to_string())?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!(
            "Arrangement(p={}, g={}, n={}, m={}, lines={:?}, f={:?})",
            self.prime(),
            self.inner.g,
            self.inner.n,
            self.inner.m,
            self.lines(),
            self.inner.f.to_string()
        )
    }
}

/// Residue of the symbol `(A, B)` along the divisor `at = 0` (`z` means the
/// line at infinity).
#[pyfunction]
#[pyo3(signature = (a, b, at, prime = 13))]
fn residue<'py>(
    py: Python<'py>,
    a: &str,
    b: &str,
    at: &str,
    prime: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let dom = Domain::plane(prime).map_err(value_err)?;
    let p = |s: &str| parse(s, &dom).map_err(value_err);
    let symbol = SymbolClass::new(p(a)?, p(b)?).map_err(value_err)?;
    let v = DivisorialValuation::new(&p(at)?).map_err(value_err)?;
    let r = residue_report(&symbol, &v).map_err(runtime_err)?;
    let d = PyDict::new(py);
    d.set_item("v_a", r.v_a)?;
    d.set_item("v_b", r.v_b)?;
    d.set_item("representative", r.class.representative.to_string())?;
    d.set_item("restricted", r.class.restricted.to_string())?;
    d.set_item("trivial", r.class.is_trivial())?;
    Ok(d)
}

#[pymodule]
pub fn dp2(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PicardModel>()?;
    m.add_class::<Arrangement>()?;
    m.add_function(wrap_pyfunction!(residue, m)?)?;
    Ok(())
}
