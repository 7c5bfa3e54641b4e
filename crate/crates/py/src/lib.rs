//! Python bindings: every `princ-lab` command, returning the JSON report as a dict.

use clap::Parser;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use princ_cli::report::Report;
use princ_cli::{execute, recheck as recheck_report, Cli, CliError};

create_exception!(princ_lab, InputError, PyValueError, "Malformed input or a failed precondition.");
create_exception!(princ_lab, RecheckError, PyException, "A report failed independent re-verification.");

fn to_py(e: CliError) -> PyErr {
    match e {
        CliError::Recheck(_) => RecheckError::new_err(e.to_string()),
        _ => InputError::new_err(e.to_string()),
    }
}

fn to_dict<'py>(py: Python<'py>, r: &Report) -> PyResult<Bound<'py, PyDict>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (r.to_json(true),))?.cast_into::<PyDict>()?)
}

fn run_args(py: Python<'_>, args: Vec<String>, recheck: bool) -> PyResult<Bound<'_, PyDict>> {
    let mut argv = vec!["princ-lab".to_string()];
    if recheck {
        argv.push("--recheck".into());
    }
    argv.extend(args);
    let cli = Cli::try_parse_from(argv).map_err(|e| InputError::new_err(e.render().to_string()))?;
    let report = py.detach(|| execute(&cli)).map_err(to_py)?;
    to_dict(py, &report)
}

/// Run a command line such as `["comax", "unique", "--ring", "Z[sqrt(-5)]", "21"]`.
#[pyfunction]
#[pyo3(signature = (args, recheck = false))]
fn run(py: Python<'_>, args: Vec<String>, recheck: bool) -> PyResult<Bound<'_, PyDict>> {
    run_args(py, args, recheck)
}

/// Decide and certify an idempotent pair `(a, b)`.
#[pyfunction]
#[pyo3(signature = (a, b, ring = "Z", recheck = true))]
fn idem_check<'py>(py: Python<'py>, a: &str, b: &str, ring: &str, recheck: bool) -> PyResult<Bound<'py, PyDict>> {
    run_args(
        py,
        vec!["idem".into(), "check".into(), "--ring".into(), ring.into(), "--".into(), a.into(), b.into()],
        recheck,
    )
}

/// Principality of the ideal generated by `generators` in `Z[sqrt(d)]`.
#[pyfunction]
#[pyo3(signature = (generators, ring = "Z[sqrt(-5)]", recheck = true))]
fn principal<'py>(py: Python<'py>, generators: Vec<String>, ring: &str, recheck: bool) -> PyResult<Bound<'py, PyDict>> {
    let mut args = vec!["ideal".into(), "principal".into(), "--ring".into(), ring.into(), "--".into()];
    args.extend(generators);
    run_args(py, args, recheck)
}

/// Complete comaximal factorizations and the uniqueness verdict.
#[pyfunction]
#[pyo3(signature = (elements, ring = "Z[sqrt(-5)]", recheck = true))]
fn comax_unique<'py>(py: Python<'py>, elements: Vec<String>, ring: &str, recheck: bool) -> PyResult<Bound<'py, PyDict>> {
    let mut args = vec!["comax".into(), "unique".into(), "--ring".into(), ring.into(), "--".into()];
    args.extend(elements);
    run_args(py, args, recheck)
}

/// Re-verify a report given as a dict or a JSON string.
#[pyfunction]
fn recheck(py: Python<'_>, report: &Bound<'_, PyAny>) -> PyResult<()> {
    let text: String = if let Ok(s) = report.extract::<String>() {
        s
    } else {
        py.import("json")?.call_method1("dumps", (report,))?.extract()?
    };
    let r: Report = parse_report(&text)?;
    py.detach(|| recheck_report::recheck(&r)).map_err(to_py)
}

fn parse_report(text: &str) -> PyResult<Report> {
    Report::from_json(text).map_err(|e| InputError::new_err(format!("not a report: {e}")))
}

#[pymodule]
fn princ_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("InputError", m.py().get_type::<InputError>())?;
    m.add("RecheckError", m.py().get_type::<RecheckError>())?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(idem_check, m)?)?;
    m.add_function(wrap_pyfunction!(principal, m)?)?;
    m.add_function(wrap_pyfunction!(comax_unique, m)?)?;
    m.add_function(wrap_pyfunction!(recheck, m)?)?;
    Ok(())
}
