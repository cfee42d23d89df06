//! Python bindings: the `ddpoly` extension module.
//!
//! Rationals cross the boundary as `"p/q"` strings and reports as plain dicts.

use std::collections::BTreeMap;

use ddpoly_core::cli::report;
use ddpoly_core::cli::{family_from, CliError, DEFAULT_TOLERANCE};
use ddpoly_core::dde::{
    admits_dde, admits_dde_float, generate, recover_pairs, CoefficientPair, CoefficientSource,
};
use ddpoly_core::families::{freud_demo as run_freud_demo, FamilySpec};
use ddpoly_core::integrating_factor::{boundary_zeros, classify, theorem_case, TheoremCase};
use ddpoly_core::polycore::{format_rational, parse_rational, BigFloat, Poly, DEFAULT_FLOAT_PRECISION};
use ddpoly_core::verify::verify_source;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rug::{Float, Rational};

fn to_py(e: CliError) -> PyErr {
    match e {
        CliError::Input(m) => PyValueError::new_err(m),
        CliError::Numeric(m) => PyArithmeticError::new_err(m),
    }
}

fn input_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn numeric_err(e: impl std::fmt::Display) -> PyErr {
    PyArithmeticError::new_err(e.to_string())
}

fn to_object(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(numeric_err)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn rational_arg(v: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(i) = v.extract::<i64>() {
        return Ok(Rational::from(i));
    }
    if let Ok(s) = v.extract::<String>() {
        return parse_rational(&s).map_err(input_err);
    }
    // fractions.Fraction and friends
    if let (Ok(n), Ok(d)) = (v.getattr("numerator"), v.getattr("denominator")) {
        let (n, d) = (n.str()?.to_string(), d.str()?.to_string());
        return parse_rational(&format!("{}/{}", n, d)).map_err(input_err);
    }
    Err(PyValueError::new_err(format!("expected an int, a 'p/q' string or a Fraction, got {}", v.repr()?)))
}

fn poly_arg(v: &Bound<'_, PyAny>) -> PyResult<Poly<Rational>> {
    let coeffs = v.try_iter()?.map(|c| rational_arg(&c?)).collect::<PyResult<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

fn poly_out(p: &Poly<Rational>) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

fn param_map(params: Option<&Bound<'_, PyDict>>) -> PyResult<BTreeMap<String, String>> {
    let mut m = BTreeMap::new();
    if let Some(d) = params {
        for (k, v) in d.iter() {
            let key: String = k.extract()?;
            let val = match v.extract::<String>() {
                Ok(s) => s,
                Err(_) => v.str()?.to_string(),
            };
            m.insert(key, val);
        }
    }
    Ok(m)
}

/// A built-in family with bound parameters.
#[pyclass(frozen, module = "ddpoly")]
pub struct Family {
    spec: FamilySpec,
}

impl Family {
    fn source(&self) -> PyResult<CoefficientSource> {
        if !self.spec.is_rational() {
            return Err(PyValueError::new_err(format!("{} has no exact coefficient pairs", self.spec.name())));
        }
        Ok(CoefficientSource::Family(self.spec.clone()))
    }
}

#[pymethods]
impl Family {
    #[new]
    #[pyo3(signature = (name, **params))]
    fn new(name: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<Self> {
        let spec = family_from(name, &param_map(params)?).map_err(to_py)?;
        Ok(Family { spec })
    }

    #[staticmethod]
    fn names() -> Vec<&'static str> {
        FamilySpec::NAMES.to_vec()
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.spec.name()
    }

    #[getter]
    fn params(&self) -> BTreeMap<String, String> {
        self.spec.params()
    }

    /// `(A_n, B_n)` as coefficient lists, lowest degree first.
    fn pair(&self, n: usize) -> PyResult<(Vec<String>, Vec<String>)> {
        let p = self.spec.pair(n).map_err(|e| to_py(e.into()))?;
        Ok((poly_out(p.a()), poly_out(p.b())))
    }

    /// `P_0 .. P_n` as coefficient lists.
    fn generate(&self, n: usize) -> PyResult<Vec<Vec<String>>> {
        let seq = generate(&self.source()?, n).map_err(|e| to_py(e.into()))?;
        Ok(seq.polys.iter().map(poly_out).collect())
    }

    #[pyo3(signature = (n, strict_extension = false))]
    fn classify(&self, n: usize, strict_extension: bool) -> PyResult<Report> {
        classify_source(&self.source()?, n, strict_extension)
    }

    #[pyo3(signature = (n, strict_extension = false))]
    fn verify(&self, n: usize, strict_extension: bool) -> PyResult<Report> {
        let src = self.source()?;
        let rep = verify_source(&src, &self.spec.to_string(), n, strict_extension).map_err(|e| to_py(e.into()))?;
        Ok(Report {
            case: rep.decision.case,
            interval: rep.decision.endpoints.last().map(|e| e.to_string()),
            failed_at: rep.decision.failed_at,
            confirmed: Some(rep.confirmed()),
            json: report::verification(&rep),
        })
    }

    fn __repr__(&self) -> String {
        format!("Family('{}')", self.spec)
    }
}

fn classify_source(src: &CoefficientSource, n: usize, strict_extension: bool) -> PyResult<Report> {
    use ddpoly_core::dde::PairSource;
    let b0 = src.pair(0).map_err(|e| to_py(e.into()))?.b().clone();
    if b0.degree() != Some(1) {
        return Err(PyValueError::new_err("B_0 must have degree 1"));
    }
    let gamma11 = (-b0.coeff(0)) / b0.coeff(1);
    let (mut pairs, mut ks, mut bs) = (Vec::new(), Vec::new(), Vec::new());
    for m in 1..=n {
        let pair = src.pair(m).map_err(|e| to_py(e.into()))?;
        let k = classify(&pair).map_err(|e| to_py(e.into()))?;
        bs.push(boundary_zeros(&k));
        ks.push(k);
        pairs.push(pair);
    }
    let d = theorem_case(&bs, &gamma11, strict_extension).map_err(|e| to_py(e.into()))?;
    Ok(Report {
        case: d.case,
        interval: d.endpoints.last().map(|e| e.to_string()),
        failed_at: d.failed_at,
        confirmed: None,
        json: report::classify_report(&pairs, &ks, &bs, &gamma11, &d),
    })
}

/// Outcome of `classify` or `verify`.
#[pyclass(frozen, module = "ddpoly")]
pub struct Report {
    case: TheoremCase,
    interval: Option<String>,
    failed_at: Option<usize>,
    confirmed: Option<bool>,
    json: serde_json::Value,
}

#[pymethods]
impl Report {
    /// `"a"`, `"b"`, `"b-mirror"`, `"c"`, `"c-mirror"`, `"d"` or `"none"`.
    #[getter]
    fn case(&self) -> &'static str {
        self.case.letter()
    }

    #[getter]
    fn interval(&self) -> Option<String> {
        self.interval.clone()
    }

    #[getter]
    fn failed_at(&self) -> Option<usize> {
        self.failed_at
    }

    /// `None` for a bare classification.
    #[getter]
    fn confirmed(&self) -> Option<bool> {
        self.confirmed
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.json).map_err(numeric_err)
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_object(py, &self.json)
    }

    fn __repr__(&self) -> String {
        match (&self.interval, self.case) {
            (Some(iv), c) if c != TheoremCase::None => format!("Report(case='{}', interval='{}')", c.letter(), iv),
            _ => match self.failed_at {
                Some(n) => format!("Report(case='none', failed_at={})", n),
                None => "Report(case='none')".to_string(),
            },
        }
    }
}

/// Coefficient pairs, one `(A, B)` per step, as a table source.
fn table_arg(pairs: &Bound<'_, PyAny>) -> PyResult<CoefficientSource> {
    let mut table = Vec::new();
    for item in pairs.try_iter()? {
        let item = item?;
        let (a, b): (Bound<'_, PyAny>, Bound<'_, PyAny>) = item.extract()?;
        table.push(CoefficientPair::new(poly_arg(&a)?, poly_arg(&b)?).map_err(input_err)?);
    }
    Ok(CoefficientSource::Table(table))
}

/// Theorem case for an explicit table of `(A_n, B_n)` pairs, `n = 0 .. N`.
#[pyfunction]
#[pyo3(signature = (pairs, strict_extension = false))]
fn classify_pairs(pairs: &Bound<'_, PyAny>, strict_extension: bool) -> PyResult<Report> {
    let src = table_arg(pairs)?;
    let CoefficientSource::Table(t) = &src else { unreachable!() };
    let n = t.len().saturating_sub(1);
    if n == 0 {
        return Err(PyValueError::new_err("need pairs for n = 0 and at least n = 1"));
    }
    classify_source(&src, n, strict_extension)
}

/// Integrating factor of a single pair: case tag and closed form.
#[pyfunction]
fn integrating_factor(py: Python<'_>, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
    let pair = CoefficientPair::new(poly_arg(a)?, poly_arg(b)?).map_err(input_err)?;
    let k = classify(&pair).map_err(|e| to_py(e.into()))?;
    let mut v = report::classification(&k);
    v["boundary"] = report::boundary(&boundary_zeros(&k));
    to_object(py, &v)
}

/// Exact admissibility test on a rational sequence, or the least-squares
/// test when `precision` is given.
#[pyfunction]
#[pyo3(signature = (sequence, precision = None, tolerance = None))]
fn admits(py: Python<'_>, sequence: &Bound<'_, PyAny>, precision: Option<u32>, tolerance: Option<f64>) -> PyResult<Py<PyAny>> {
    let rows: Vec<Bound<'_, PyAny>> = sequence.try_iter()?.collect::<PyResult<_>>()?;
    let v = match precision {
        None => {
            let polys = rows.iter().map(poly_arg).collect::<PyResult<Vec<_>>>()?;
            report::admissibility(&admits_dde(&polys).map_err(|e| to_py(e.into()))?)
        }
        Some(prec) => {
            let mut polys = Vec::with_capacity(rows.len());
            for row in &rows {
                let mut coeffs = Vec::new();
                for c in row.try_iter()? {
                    let c = c?;
                    let f = match c.extract::<f64>() {
                        Ok(x) => Float::with_val(prec, x),
                        Err(_) => Float::with_val(prec, &rational_arg(&c)?),
                    };
                    coeffs.push(BigFloat(f));
                }
                polys.push(Poly::new(coeffs));
            }
            let tol = tolerance.unwrap_or(DEFAULT_TOLERANCE);
            report::admissibility(&admits_dde_float(&polys, tol).map_err(|e| to_py(e.into()))?)
        }
    };
    to_object(py, &v)
}

/// Pairs recovered from an admissible rational sequence.
#[pyfunction]
fn recover(sequence: &Bound<'_, PyAny>) -> PyResult<Vec<(Vec<String>, Vec<String>)>> {
    let polys = sequence.try_iter()?.map(|r| poly_arg(&r?)).collect::<PyResult<Vec<_>>>()?;
    match recover_pairs(&polys).map_err(|e| to_py(e.into()))? {
        Ok(pairs) => Ok(pairs.iter().map(|p| (poly_out(p.a()), poly_out(p.b()))).collect()),
        Err(e) => Err(PyValueError::new_err(format!("no recurrence at n = {}: {}", e.n, e.verdict))),
    }
}

/// The Freud demonstration: admissible for `n < 5`, not at `n = 5`.
#[pyfunction]
#[pyo3(signature = (t = "0", precision = DEFAULT_FLOAT_PRECISION, tolerance = DEFAULT_TOLERANCE))]
fn freud_demo(py: Python<'_>, t: &str, precision: u32, tolerance: f64) -> PyResult<Py<PyAny>> {
    let t = parse_rational(t).map_err(input_err)?;
    let demo = run_freud_demo(&t, precision, tolerance).map_err(|e| to_py(e.into()))?;
    let ok = ddpoly_core::cli::freud_reproduced(&demo);
    to_object(py, &report::freud(&demo, ok))
}

#[pymodule]
fn ddpoly(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Family>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(classify_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(integrating_factor, m)?)?;
    m.add_function(wrap_pyfunction!(admits, m)?)?;
    m.add_function(wrap_pyfunction!(recover, m)?)?;
    m.add_function(wrap_pyfunction!(freud_demo, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
