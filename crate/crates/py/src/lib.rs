//! Python bindings: `import castelnuovo_py`.

use castelnuovo::betti::koszul;
use castelnuovo::bott::{self, LineBundleOnPn, ProductLineBundle, TwistedDifferential};
use castelnuovo::catalog::{self, VarietySpec};
use castelnuovo::error::Error;
use castelnuovo::liaison::{duality_check, DeficiencyModules};
use castelnuovo::quadric::{self, QuadricDivisorSpec};
use castelnuovo::reg::{self, Setting};
use castelnuovo::table::CohTable;
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_spec(name: &str) -> PyResult<VarietySpec> {
    name.parse().map_err(err)
}

/// A catalog variety together with the cohomology table of its ideal sheaf.
#[pyclass(frozen)]
struct Variety {
    spec: VarietySpec,
    table: CohTable,
}

#[pymethods]
impl Variety {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        let spec = parse_spec(name)?;
        let table = catalog::ideal_table(&spec).map_err(err)?;
        Ok(Variety { spec, table })
    }

    #[getter]
    fn name(&self) -> String {
        self.spec.to_string()
    }

    #[getter]
    fn description(&self) -> String {
        self.spec.description()
    }

    #[getter]
    fn ambient(&self) -> usize {
        self.spec.ambient()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.spec.dim()
    }

    #[getter]
    fn degree(&self) -> BigInt {
        self.spec.declared_degree()
    }

    /// `(lo, hi)` bounds on `h^i(I_X(k))`; `hi` is `None` when unbounded.
    fn h(&self, i: usize, k: i64) -> PyResult<(BigInt, Option<BigInt>)> {
        let r = self.table.h(i, k).map_err(err)?;
        Ok((r.lo().clone(), r.hi().cloned()))
    }

    /// `h^i(I_X(k))`, raising if it is not determined exactly.
    fn h_exact(&self, i: usize, k: i64) -> PyResult<BigInt> {
        self.table.exact(i, k).map_err(err)
    }

    fn regularity<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = reg::regularity_scan(&self.table, self.spec.dim()).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("reg", r.reg)?;
        d.set_item("first_normal_from", r.first_normal_from)?;
        d.set_item("failures", r.failures)?;
        Ok(d)
    }

    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let inv = catalog::invariants(&self.spec).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("degree", inv.degree)?;
        d.set_item("dim", inv.dim)?;
        d.set_item("codim", inv.codim)?;
        d.set_item("reg", inv.reg)?;
        d.set_item("first_normal_from", inv.first_normal_from)?;
        d.set_item("sectional_genus", inv.sectional_genus)?;
        d.set_item("hilbert_polynomial", inv.hilbert_polynomial.to_string())?;
        Ok(d)
    }

    /// Betti table in Macaulay layout, if the variety has a resolution.
    fn betti(&self) -> PyResult<Option<String>> {
        let pres = catalog::presentation(&self.spec).map_err(err)?;
        Ok(pres.betti.map(|b| b.render()))
    }

    fn __repr__(&self) -> String {
        format!("Variety('{}')", self.spec)
    }
}

#[pyfunction]
#[pyo3(signature = (n, k, q, r = 1))]
fn coh_line(n: usize, k: i64, q: usize, r: u64) -> PyResult<BigInt> {
    bott::coh_line(&LineBundleOnPn::new(n, k, r).map_err(err)?, q).map_err(err)
}

#[pyfunction]
fn coh_omega(n: usize, p: usize, k: i64, q: usize) -> PyResult<BigInt> {
    bott::coh_omega(&TwistedDifferential::new(n, p, k).map_err(err)?, q).map_err(err)
}

#[pyfunction]
fn coh_product(n1: usize, n2: usize, a: i64, b: i64, q: usize) -> PyResult<BigInt> {
    bott::coh_product(&ProductLineBundle::new(n1, n2, a, b).map_err(err)?, q).map_err(err)
}

#[pyfunction]
fn koszul_regularity(ambient: usize, degrees: Vec<i64>) -> PyResult<i64> {
    Ok(koszul(ambient, &degrees).map_err(err)?.regularity())
}

/// `h^i(Q, I_{X/Q}(k))` for a divisor on a quadric cone; `cls` is `[a, b]`
/// for rank 4 and `[s]` for rank 3.
#[pyfunction]
fn quadric_series(n: usize, cls: Vec<i64>, i: usize, k: i64) -> PyResult<BigInt> {
    let spec = match cls.as_slice() {
        [a, b] => QuadricDivisorSpec::rank4(n, *a, *b),
        [s] => QuadricDivisorSpec::rank3(n, *s),
        _ => return Err(PyValueError::new_err("class must have one or two entries")),
    }
    .map_err(err)?;
    quadric::series_coh(&spec, i, k).map_err(err)
}

#[pyfunction]
fn palatini_degree(t: i64) -> PyResult<BigInt> {
    let bundle = catalog::palatini_bundle().map_err(err)?;
    Ok(castelnuovo::chow::dependency_locus_degree(&bundle).map_err(err)?.eval_i64(t))
}

/// Symbolic regularity bound with the axioms it rests on.
#[pyfunction]
fn verify_bound<'py>(py: Python<'py>, setting: &str) -> PyResult<Bound<'py, PyDict>> {
    let setting = match setting {
        "threefold-p5" => Setting::ThreefoldP5,
        "surface-p4" => Setting::SurfaceP4,
        other => return Err(PyValueError::new_err(format!("unknown setting '{other}'"))),
    };
    let der = reg::kernel_bundle_bound(setting);
    let d = PyDict::new(py);
    d.set_item("bound", der.bound.to_string())?;
    d.set_item("term", der.term.to_string())?;
    d.set_item("axioms", der.axioms.iter().map(|a| a.name).collect::<Vec<_>>())?;
    Ok(d)
}

/// Duality of deficiency modules for two catalog varieties linked by a
/// complete intersection of total degree `ci_degree`.
#[pyfunction]
fn liaison_check(x1: &str, x2: &str, ci_degree: i64) -> PyResult<(bool, Vec<(usize, i64)>)> {
    let modules = |name: &str| -> PyResult<DeficiencyModules> {
        let spec = parse_spec(name)?;
        let table = catalog::ideal_table(&spec).map_err(err)?;
        DeficiencyModules::from_table(&table, spec.ambient(), spec.dim(), ci_degree).map_err(err)
    };
    let report = duality_check(&modules(x1)?, &modules(x2)?).map_err(err)?;
    Ok((report.holds, report.witnesses))
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    catalog::catalog().iter().map(ToString::to_string).collect()
}

#[pymodule]
fn castelnuovo_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Variety>()?;
    m.add_function(wrap_pyfunction!(coh_line, m)?)?;
    m.add_function(wrap_pyfunction!(coh_omega, m)?)?;
    m.add_function(wrap_pyfunction!(coh_product, m)?)?;
    m.add_function(wrap_pyfunction!(koszul_regularity, m)?)?;
    m.add_function(wrap_pyfunction!(quadric_series, m)?)?;
    m.add_function(wrap_pyfunction!(palatini_degree, m)?)?;
    m.add_function(wrap_pyfunction!(verify_bound, m)?)?;
    m.add_function(wrap_pyfunction!(liaison_check, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    Ok(())
}
