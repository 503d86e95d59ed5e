//! Python bindings: matrices, norms, the numerical radius, inequality checks
//! and the seeded suite runner.

use normineq::harness::{self, parse_dim_range, parse_list, SuiteId, TrialConfig};
use normineq::inequalities::{self as ineq, CheckOptions};
use normineq::linalg::{self, Complex64, PsdMatrix, ScalarFn};
use normineq::norms::{self, NormSpec};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: normineq::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn spec(norm: &str) -> PyResult<NormSpec> {
    norm.parse().map_err(py_err)
}

fn scalar_fn(f: &str) -> PyResult<ScalarFn> {
    f.parse().map_err(py_err)
}

/// Square complex matrix.
#[pyclass(name = "Matrix", module = "normineq_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMatrix(linalg::Matrix);

#[pymethods]
impl PyMatrix {
    /// Builds a matrix from a list of rows of (complex) numbers.
    #[new]
    fn new(rows: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(PyValueError::new_err("rows must form a square matrix"));
        }
        linalg::Matrix::from_vec(n, rows.concat()).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Self(linalg::Matrix::identity(n))
    }

    /// Random PSD matrix of unit spectral norm.
    #[staticmethod]
    fn random_psd(n: usize, seed: u64) -> Self {
        Self(harness::gen_psd(n, seed))
    }

    /// Random PD matrix of unit spectral norm with smallest eigenvalue at
    /// least `floor / (1 + floor)`.
    #[staticmethod]
    #[pyo3(signature = (n, seed, floor = harness::DEFAULT_PD_FLOOR))]
    fn random_pd(n: usize, seed: u64, floor: f64) -> Self {
        Self(harness::gen_pd(n, seed, floor))
    }

    #[staticmethod]
    fn random_general(n: usize, seed: u64) -> Self {
        Self(harness::gen_general(n, seed))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn to_list(&self) -> Vec<Vec<Complex64>> {
        let n = self.0.n();
        (0..n).map(|i| (0..n).map(|j| self.0[(i, j)]).collect()).collect()
    }

    fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    fn hadamard(&self, other: &Self) -> PyResult<Self> {
        self.0.hadamard(&other.0).map(Self).map_err(py_err)
    }

    fn __matmul__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_mul(&other.0).map(Self).map_err(py_err)
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_add(&other.0).map(Self).map_err(py_err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_sub(&other.0).map(Self).map_err(py_err)
    }

    /// Singular values, largest first.
    fn singular_values(&self) -> PyResult<Vec<f64>> {
        Ok(linalg::singular_values(&self.0).map_err(py_err)?.values().to_vec())
    }

    /// Eigenvalues of a Hermitian matrix, largest first.
    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        Ok(linalg::herm_eig_default(&self.0).map_err(py_err)?.eigenvalues)
    }

    /// `A^t` for PSD `A`.
    fn power(&self, t: f64) -> PyResult<Self> {
        linalg::psd_power(&self.0, t).map(Self).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("Matrix(n={})", self.0.n())
    }
}

/// Tolerances shared by the checks.
#[pyclass(name = "Options", module = "normineq_py", skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyOptions(CheckOptions);

#[pymethods]
impl PyOptions {
    #[new]
    #[pyo3(signature = (tol_rel = 1e-8, quad_tol = 1e-9, quad_tol_2d = 1e-8, omega_tol = 1e-8))]
    fn new(tol_rel: f64, quad_tol: f64, quad_tol_2d: f64, omega_tol: f64) -> Self {
        Self(CheckOptions { tol_rel, quad_tol, quad_tol_2d, omega_tol })
    }

    #[getter]
    fn tol_rel(&self) -> f64 {
        self.0.tol_rel
    }

    #[getter]
    fn quad_tol(&self) -> f64 {
        self.0.quad_tol
    }

    #[getter]
    fn quad_tol_2d(&self) -> f64 {
        self.0.quad_tol_2d
    }

    #[getter]
    fn omega_tol(&self) -> f64 {
        self.0.omega_tol
    }
}

fn options(opts: Option<PyRef<'_, PyOptions>>) -> CheckOptions {
    opts.map(|o| o.0).unwrap_or_default()
}

/// Outcome of one inequality chain.
#[pyclass(name = "Verdict", module = "normineq_py", frozen, skip_from_py_object)]
struct PyVerdict(ineq::InequalityVerdict);

#[pymethods]
impl PyVerdict {
    #[getter]
    fn suite_id(&self) -> &str {
        &self.0.suite_id
    }

    /// `(label, value)` pairs, smallest side first.
    #[getter]
    fn links(&self) -> Vec<(String, f64)> {
        self.0.links.iter().map(|l| (l.label.clone(), l.value)).collect()
    }

    #[getter]
    fn slacks(&self) -> Vec<f64> {
        self.0.slacks.clone()
    }

    #[getter]
    fn tol_used(&self) -> f64 {
        self.0.tol_used
    }

    #[getter]
    fn scale(&self) -> f64 {
        self.0.scale
    }

    #[getter]
    fn passed(&self) -> bool {
        self.0.pass
    }

    #[getter]
    fn fingerprint(&self) -> &str {
        &self.0.instance_fingerprint
    }

    fn min_relative_slack(&self) -> f64 {
        self.0.min_relative_slack()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    fn __bool__(&self) -> bool {
        self.0.pass
    }

    fn __repr__(&self) -> String {
        format!("Verdict({}, pass={}, min_relative_slack={:e})", self.0.suite_id, self.0.pass, self.0.min_relative_slack())
    }
}

fn verdict(v: normineq::Result<ineq::InequalityVerdict>) -> PyResult<PyVerdict> {
    v.map(PyVerdict).map_err(py_err)
}

/// `(A, B, X, r, norm)` with PSD `A`, `B`.
#[pyclass(name = "HeinzInstance", module = "normineq_py", frozen, skip_from_py_object)]
struct PyHeinz(ineq::HeinzInstance);

#[pymethods]
impl PyHeinz {
    #[new]
    #[pyo3(signature = (a, b, x, r = 1.0, norm = "trace"))]
    fn new(a: &PyMatrix, b: &PyMatrix, x: &PyMatrix, r: f64, norm: &str) -> PyResult<Self> {
        ineq::HeinzInstance::new(&a.0, &b.0, &x.0, r, spec(norm)?).map(Self).map_err(py_err)
    }

    /// `||| |A^s X B^t|^r |||`.
    fn term(&self, s: f64, t: f64) -> PyResult<f64> {
        self.0.term(s, t).map_err(py_err)
    }

    fn heinz_f(&self, t: f64) -> PyResult<f64> {
        self.0.heinz_f(t).map_err(py_err)
    }

    fn surface_value(&self, s: f64, t: f64) -> PyResult<f64> {
        self.0.surface_value(s, t).map_err(py_err)
    }

    #[pyo3(signature = (mu, opts = None))]
    fn check_cs_basic(&self, mu: f64, opts: Option<PyRef<'_, PyOptions>>) -> PyResult<PyVerdict> {
        verdict(self.0.check_cs_basic(mu, &options(opts)))
    }

    #[pyo3(signature = (mu, opts = None))]
    fn check_hh_chain(&self, mu: f64, opts: Option<PyRef<'_, PyOptions>>) -> PyResult<PyVerdict> {
        verdict(self.0.check_hh_chain(mu, &options(opts)))
    }

    #[pyo3(signature = (s, t, opts = None))]
    fn check_corner_max(&self, s: f64, t: f64, opts: Option<PyRef<'_, PyOptions>>) -> PyResult<PyVerdict> {
        verdict(self.0.check_corner_max(s, t, &options(opts)))
    }

    #[pyo3(signature = (alpha, beta, opts = None))]
    fn check_dragomir_2d(&self, alpha: f64, beta: f64, opts: Option<PyRef<'_, PyOptions>>) -> PyResult<PyVerdict> {
        verdict(self.0.check_dragomir_2d(alpha, beta, &options(opts)))
    }

    #[pyo3(signature = (opts = None))]
    fn check_convexity_f(&self, opts: Option<PyRef<'_, PyOptions>>) -> PyResult<PyVerdict> {
        verdict(ineq::check_convexity_f(&self.0, &options(opts)))
    }

    #[pyo3(signature = (opts = None))]
    fn check_convexity_g(&self, opts: Option<PyRef<'_, PyOptions>>) -> PyResult<PyVerdict> {
        verdict(ineq::check_convexity_g(&self.0, &options(opts)))
    }

    #[pyo3(signature = (p, opts = None))]
    fn check_jensen_phi(&self, p: f64, opts: Option<PyRef<'_, PyOptions>>) -> PyResult<PyVerdict> {
        verdict(ineq::check_jensen_phi(&self.0, p, &options(opts)))
    }

    #[pyo3(signature = (mu, p, opts = None))]
    fn check_thm32(&self, mu: f64, p: f64, opts: Option<PyRef<'_, PyOptions>>) -> PyResult<PyVerdict> {
        verdict(ineq::check_thm32(&self.0, mu, p, &options(opts)))
    }

    #[pyo3(signature = (mu, p, opts = None))]
    fn check_thm33(&self, mu: f64, p: f64, opts: Option<PyRef<'_, PyOptions>>) -> PyResult<PyVerdict> {
        verdict(ineq::check_thm33(&self.0, mu, p, &options(opts)))
    }
}

/// `||| |M|^r |||` for a norm spec such as `trace`, `schatten:3` or `kyfan:2`.
#[pyfunction]
#[pyo3(signature = (m, norm = "trace", r = 1.0))]
fn uinorm(m: &PyMatrix, norm: &str, r: f64) -> PyResult<f64> {
    norms::uinorm_abs_pow(&m.0, r, spec(norm)?).map_err(py_err)
}

/// `(value, upper_bound)` of the numerical radius.
#[pyfunction]
#[pyo3(signature = (m, tol = None))]
fn numerical_radius(m: &PyMatrix, tol: Option<f64>) -> PyResult<(f64, f64)> {
    let tol = tol.unwrap_or_else(|| norms::default_omega_tol(&m.0));
    let w = norms::numerical_radius(&m.0, tol).map_err(py_err)?;
    Ok((w.value, w.upper_bound))
}

#[pyfunction]
#[pyo3(signature = (m, trials = 1000, seed = 0))]
fn numerical_radius_lower_bound(m: &PyMatrix, trials: usize, seed: u64) -> PyResult<f64> {
    if trials == 0 {
        return Err(PyValueError::new_err("trials must be at least 1"));
    }
    Ok(norms::numerical_radius_lower_bound(&m.0, trials, seed))
}

#[pyfunction]
fn schur_norm_omega_psd(a: &PyMatrix) -> PyResult<f64> {
    norms::schur_norm_omega_psd(&a.0).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (a, trials = 50, seed = 0))]
fn schur_norm_omega_search(a: &PyMatrix, trials: usize, seed: u64) -> PyResult<f64> {
    if trials == 0 {
        return Err(PyValueError::new_err("trials must be at least 1"));
    }
    norms::schur_norm_omega_search(&a.0, trials, seed).map_err(py_err)
}

/// Applies a scalar function such as `sqrt`, `log1p` or `pow:0.3` to a PSD
/// matrix through its spectrum.
#[pyfunction]
fn matrix_fn(a: &PyMatrix, f: &str) -> PyResult<PyMatrix> {
    let f = scalar_fn(f)?;
    PsdMatrix::new(&a.0).and_then(|p| p.apply(&f)).map(PyMatrix).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (points, f, tol = ineq::KWONG_TOL))]
fn is_kwong_sample(points: Vec<f64>, f: &str, tol: f64) -> PyResult<bool> {
    ineq::is_kwong_sample(&points, &scalar_fn(f)?, tol).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (a, b, x, r = 1.0, norm = "trace", opts = None))]
fn check_bhatia_davis(
    a: &PyMatrix,
    b: &PyMatrix,
    x: &PyMatrix,
    r: f64,
    norm: &str,
    opts: Option<PyRef<'_, PyOptions>>,
) -> PyResult<PyVerdict> {
    verdict(ineq::check_bhatia_davis(&a.0, &b.0, &x.0, r, spec(norm)?, &options(opts)))
}

#[pyfunction]
#[pyo3(signature = (a, x, f, g, opts = None))]
fn check_thm43(a: &PyMatrix, x: &PyMatrix, f: &str, g: &str, opts: Option<PyRef<'_, PyOptions>>) -> PyResult<PyVerdict> {
    verdict(ineq::check_thm43(&a.0, &x.0, &scalar_fn(f)?, &scalar_fn(g)?, &options(opts)))
}

#[pyfunction]
#[pyo3(signature = (a, x, alpha, opts = None))]
fn check_cor44(a: &PyMatrix, x: &PyMatrix, alpha: f64, opts: Option<PyRef<'_, PyOptions>>) -> PyResult<PyVerdict> {
    verdict(ineq::check_cor44(&a.0, &x.0, alpha, &options(opts)))
}

#[pyfunction]
#[pyo3(signature = (a, x, opts = None))]
fn check_example45(a: &PyMatrix, x: &PyMatrix, opts: Option<PyRef<'_, PyOptions>>) -> PyResult<PyVerdict> {
    verdict(ineq::check_example45(&a.0, &x.0, &options(opts)))
}

fn config(suites: &str, n: &str, r: &str, norms: &str, trials: usize, seed: u64) -> PyResult<TrialConfig> {
    let (n_min, n_max) = parse_dim_range(n).map_err(py_err)?;
    Ok(TrialConfig {
        suites: SuiteId::parse_list(suites).map_err(py_err)?,
        n_min,
        n_max,
        r_values: parse_list(r).map_err(py_err)?,
        norms: parse_list(norms).map_err(py_err)?,
        trials,
        master_seed: seed,
        ..TrialConfig::default()
    })
}

/// Runs seeded suites and returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (suites = "all", n = "1..6", r = "0.5,1,2,3", norms = "trace,frobenius,spectral,schatten:3,kyfan:2", trials = 200, seed = 0))]
fn run_suites(py: Python<'_>, suites: &str, n: &str, r: &str, norms: &str, trials: usize, seed: u64) -> PyResult<String> {
    let config = config(suites, n, r, norms, trials, seed)?;
    let report = py.detach(|| harness::run_suites(&config)).map_err(py_err)?;
    Ok(report.to_json())
}

/// Re-evaluates the instance named by a trial fingerprint under default
/// tolerances.
#[pyfunction]
fn replay(fingerprint: &str) -> PyResult<PyVerdict> {
    verdict(harness::replay(fingerprint, &TrialConfig::default()).map(|o| o.verdict))
}

/// Hill-climbs towards the smallest slack of one suite; returns JSON.
#[pyfunction]
#[pyo3(signature = (suite, budget = 500, seed = 0, n = "1..6"))]
fn search_counterexample(py: Python<'_>, suite: &str, budget: usize, seed: u64, n: &str) -> PyResult<String> {
    let (n_min, n_max) = parse_dim_range(n).map_err(py_err)?;
    let suite: SuiteId = suite.parse().map_err(py_err)?;
    let config = TrialConfig { n_min, n_max, master_seed: seed, ..TrialConfig::default() };
    let result = py.detach(|| harness::search_counterexample(suite, &config, budget, seed)).map_err(py_err)?;
    serde_json::to_string_pretty(&result).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pymodule]
fn normineq_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyOptions>()?;
    m.add_class::<PyVerdict>()?;
    m.add_class::<PyHeinz>()?;
    m.add_function(wrap_pyfunction!(uinorm, m)?)?;
    m.add_function(wrap_pyfunction!(numerical_radius, m)?)?;
    m.add_function(wrap_pyfunction!(numerical_radius_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(schur_norm_omega_psd, m)?)?;
    m.add_function(wrap_pyfunction!(schur_norm_omega_search, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_fn, m)?)?;
    m.add_function(wrap_pyfunction!(is_kwong_sample, m)?)?;
    m.add_function(wrap_pyfunction!(check_bhatia_davis, m)?)?;
    m.add_function(wrap_pyfunction!(check_thm43, m)?)?;
    m.add_function(wrap_pyfunction!(check_cor44, m)?)?;
    m.add_function(wrap_pyfunction!(check_example45, m)?)?;
    m.add_function(wrap_pyfunction!(run_suites, m)?)?;
    m.add_function(wrap_pyfunction!(replay, m)?)?;
    m.add_function(wrap_pyfunction!(search_counterexample, m)?)?;
    Ok(())
}
