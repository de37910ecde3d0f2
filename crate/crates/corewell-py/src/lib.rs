//! Python bindings. The module mirrors the library surface a notebook
//! actually needs: build a well, ask for its exponent branches, solve for
//! levels, sweep the radius, and cross-check against the shooting
//! integration.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use corewell::{
    admissible_branches, aggregate_levels, bound_window, classify_level_curve,
    degeneracy_report, shoot_eigenvalues, sweep_well_width, Error, Matching, Sector,
    ShootingGrid, SweepSettings, WellConfig,
};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::InvalidInput(_) | Error::NegativeDiscriminant { .. } => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn parse_matching(s: &str) -> PyResult<Matching> {
    match s {
        "weighted" => Ok(Matching::Weighted),
        "plain" => Ok(Matching::Plain),
        other => Err(PyValueError::new_err(format!(
            "matching must be 'weighted' or 'plain', got '{other}'"
        ))),
    }
}

fn parse_sector(s: &str) -> PyResult<Sector> {
    match s {
        "particle" => Ok(Sector::Particle),
        "antiparticle" => Ok(Sector::Antiparticle),
        other => Err(PyValueError::new_err(format!(
            "sector must be 'particle' or 'antiparticle', got '{other}'"
        ))),
    }
}

/// Two-mass spherical core/shell well with a Coulomb-type tensor term.
#[pyclass(name = "WellConfig")]
#[derive(Clone)]
struct PyWellConfig {
    inner: WellConfig,
}

#[pymethods]
impl PyWellConfig {
    #[new]
    #[pyo3(signature = (m1, m2, v0, r0, u0 = 0.0, kappa = 0, sigma0 = 0.0, matching = "weighted", sector = "particle"))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        m1: f64,
        m2: f64,
        v0: f64,
        r0: f64,
        u0: f64,
        kappa: i32,
        sigma0: f64,
        matching: &str,
        sector: &str,
    ) -> PyResult<Self> {
        let mut inner = WellConfig::new(m1, m2, v0, r0);
        inner.u0 = u0;
        inner.kappa = kappa;
        inner.sigma0 = sigma0;
        inner.matching = parse_matching(matching)?;
        inner.sector = parse_sector(sector)?;
        inner.validate().map_err(to_py_err)?;
        Ok(PyWellConfig { inner })
    }

    #[getter]
    fn m1(&self) -> f64 {
        self.inner.m1
    }
    #[getter]
    fn m2(&self) -> f64 {
        self.inner.m2
    }
    #[getter]
    fn v0(&self) -> f64 {
        self.inner.v0
    }
    #[getter]
    fn r0(&self) -> f64 {
        self.inner.r0
    }
    #[getter]
    fn u0(&self) -> f64 {
        self.inner.u0
    }
    #[getter]
    fn kappa(&self) -> i32 {
        self.inner.kappa
    }
    #[getter]
    fn sigma0(&self) -> f64 {
        self.inner.sigma0
    }
    #[getter]
    fn matching(&self) -> &'static str {
        match self.inner.matching {
            Matching::Weighted => "weighted",
            Matching::Plain => "plain",
        }
    }
    #[getter]
    fn sector(&self) -> &'static str {
        match self.inner.sector {
            Sector::Particle => "particle",
            Sector::Antiparticle => "antiparticle",
        }
    }

    /// Open energy interval that can hold bound states, (lo, hi) in fm^-1.
    fn bound_window(&self) -> (f64, f64) {
        bound_window(&self.inner)
    }

    /// A copy at a different core radius; everything else is kept.
    fn with_r0(&self, r0: f64) -> PyResult<Self> {
        let mut inner = self.inner;
        inner.r0 = r0;
        inner.validate().map_err(to_py_err)?;
        Ok(PyWellConfig { inner })
    }

    fn __repr__(&self) -> String {
        let w = &self.inner;
        format!(
            "WellConfig(m1={}, m2={}, v0={}, r0={}, u0={}, kappa={}, sigma0={}, matching='{}', sector='{}')",
            w.m1,
            w.m2,
            w.v0,
            w.r0,
            w.u0,
            w.kappa,
            w.sigma0,
            self.matching(),
            self.sector()
        )
    }
}

/// One converged bound state.
#[pyclass(name = "Level", get_all)]
struct PyLevel {
    /// Energy in fm^-1.
    e: f64,
    /// Node count of the lower component; doubles as the level label n.
    n: usize,
    /// "plus" or "minus".
    branch: String,
    /// Small-r exponent of the branch.
    a: f64,
    residual: f64,
}

fn level_from(r: &corewell::EigenResult) -> PyLevel {
    PyLevel {
        e: r.e,
        n: r.n,
        branch: r.branch.branch.to_string(),
        a: r.branch.a,
        residual: r.residual,
    }
}

/// One level traced over a radius grid.
#[pyclass(name = "Curve", get_all)]
struct PyCurve {
    kappa: i32,
    branch: String,
    a: f64,
    n: usize,
    /// (r0, E) samples, ascending r0.
    points: Vec<(f64, f64)>,
    flagged: bool,
    /// "N-EL", "A-EL", "non-monotonic", "unclassified", or "flagged".
    class_tag: String,
}

/// Spectra of two configurations laid side by side.
#[pyclass(name = "DegeneracySummary", get_all)]
struct PyDegeneracySummary {
    predicted_degenerate: bool,
    max_splitting: f64,
    splittings: Vec<f64>,
    levels_a: Vec<Py<PyLevel>>,
    levels_b: Vec<Py<PyLevel>>,
}

/// The two exponent roots (a_plus, a_minus) for a channel.
#[pyfunction]
#[pyo3(name = "radial_exponents")]
fn py_radial_exponents(kappa: i32, u0: f64) -> PyResult<(f64, f64)> {
    corewell::radial_exponents(kappa, u0).map_err(to_py_err)
}

/// Admissible branches as (a, "plus"/"minus") pairs, a > 0 only.
#[pyfunction]
#[pyo3(name = "admissible_branches")]
fn py_admissible_branches(kappa: i32, u0: f64) -> Vec<(f64, String)> {
    admissible_branches(kappa, u0)
        .into_iter()
        .map(|b| (b.a, b.branch.to_string()))
        .collect()
}

/// All bound states of all admissible branches, ascending in energy.
#[pyfunction]
#[pyo3(signature = (cfg, n_max = 8))]
fn solve(cfg: &PyWellConfig, n_max: usize) -> PyResult<Vec<PyLevel>> {
    let levels = aggregate_levels(&cfg.inner, n_max).map_err(to_py_err)?;
    Ok(levels.iter().map(level_from).collect())
}

/// Independent check: the same spectrum from direct numerical integration.
#[pyfunction]
#[pyo3(signature = (cfg, n_max = 8))]
fn oracle_solve(cfg: &PyWellConfig, n_max: usize) -> PyResult<Vec<PyLevel>> {
    let grid = ShootingGrid::for_config(&cfg.inner);
    let mut out = Vec::new();
    for branch in admissible_branches(cfg.inner.kappa, cfg.inner.u0) {
        out.extend(shoot_eigenvalues(&cfg.inner, branch, &grid, n_max).map_err(to_py_err)?);
    }
    out.sort_by(|a, b| a.e.total_cmp(&b.e));
    Ok(out.iter().map(level_from).collect())
}

/// Level curves of all admissible branches over an ascending r0 grid.
#[pyfunction]
#[pyo3(signature = (cfg, r0_values, n_max = 8))]
fn sweep(cfg: &PyWellConfig, r0_values: Vec<f64>, n_max: usize) -> PyResult<Vec<PyCurve>> {
    let settings = SweepSettings { n_max, ..SweepSettings::default() };
    let mut out = Vec::new();
    for branch in admissible_branches(cfg.inner.kappa, cfg.inner.u0) {
        let curves =
            sweep_well_width(&cfg.inner, branch, &r0_values, &settings).map_err(to_py_err)?;
        for c in curves {
            let class_tag = if c.flagged {
                "flagged".to_string()
            } else if c.points.len() >= 3 {
                classify_level_curve(&c).map_err(to_py_err)?.tag.to_string()
            } else {
                "unclassified".to_string()
            };
            out.push(PyCurve {
                kappa: c.kappa,
                branch: c.branch.branch.to_string(),
                a: c.branch.a,
                n: c.n,
                points: c.points,
                flagged: c.flagged,
                class_tag,
            });
        }
    }
    Ok(out)
}

/// Compare the spectra of two configs differing only in kappa and U0.
#[pyfunction]
#[pyo3(signature = (cfg_a, cfg_b, n_max = 8))]
fn degeneracy(
    py: Python<'_>,
    cfg_a: &PyWellConfig,
    cfg_b: &PyWellConfig,
    n_max: usize,
) -> PyResult<PyDegeneracySummary> {
    let rep = degeneracy_report(&cfg_a.inner, &cfg_b.inner, n_max).map_err(to_py_err)?;
    let wrap = |levels: &[corewell::EigenResult]| -> PyResult<Vec<Py<PyLevel>>> {
        levels.iter().map(|r| Py::new(py, level_from(r))).collect()
    };
    Ok(PyDegeneracySummary {
        predicted_degenerate: rep.predicted_degenerate,
        max_splitting: rep.max_splitting,
        splittings: rep.splittings.clone(),
        levels_a: wrap(&rep.levels_a)?,
        levels_b: wrap(&rep.levels_b)?,
    })
}

#[pymodule]
fn corewell_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWellConfig>()?;
    m.add_class::<PyLevel>()?;
    m.add_class::<PyCurve>()?;
    m.add_class::<PyDegeneracySummary>()?;
    m.add_function(wrap_pyfunction!(py_radial_exponents, m)?)?;
    m.add_function(wrap_pyfunction!(py_admissible_branches, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_solve, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(degeneracy, m)?)?;
    Ok(())
}
