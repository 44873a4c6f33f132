//! Python bindings. Vectors and matrix rows cross the boundary as strings of
//! 0/1 with coordinate 1 leftmost; erasure positions are 0-based.

use genset::bounds::{self, BoundNumber, BoundReport};
use genset::cli::CodeFamilySpec;
use genset::construct::{self, SetKind};
use genset::erasure::{self, ErasurePattern};
use genset::verify::{self, GenericMethod, GoodMethod};
use genset::{BinMatrix, Error, VectorSet};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: Error) -> PyErr {
    match e {
        Error::Budget(_) | Error::Overflow(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parsed<T: std::str::FromStr>(s: &str) -> PyResult<T>
where
    T::Err: std::fmt::Display,
{
    s.parse()
        .map_err(|e: T::Err| PyValueError::new_err(e.to_string()))
}

fn vector_set(r: usize, rows: &[String]) -> PyResult<VectorSet> {
    if rows.is_empty() {
        return VectorSet::new(r, Vec::new()).map_err(err);
    }
    let a = VectorSet::parse_text(&rows.join("\n")).map_err(err)?;
    if a.ambient() != r {
        return Err(PyValueError::new_err(format!(
            "vectors have length {}, expected {r}",
            a.ambient()
        )));
    }
    Ok(a)
}

fn matrix(rows: &[String]) -> PyResult<BinMatrix> {
    BinMatrix::parse_text(&rows.join("\n")).map_err(err)
}

fn row_strings(text: String) -> Vec<String> {
    text.lines().map(str::to_owned).collect()
}

fn report<'py>(py: Python<'py>, rep: &BoundReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for v in &rep.values {
        match v.value {
            BoundNumber::Integer(x) => d.set_item(&v.name, x)?,
            BoundNumber::Float(x) => d.set_item(&v.name, x)?,
        }
    }
    Ok(d)
}

/// Whether the vectors form an (r,s)-set.
#[pyfunction]
#[pyo3(signature = (r, vectors, s, method = "flats"))]
fn is_good_set(r: usize, vectors: Vec<String>, s: usize, method: &str) -> PyResult<bool> {
    let a = vector_set(r, &vectors)?;
    let m: GoodMethod = parsed(method)?;
    Ok(verify::is_good_set(&a, s, m).map_err(err)?.holds())
}

/// Whether the vectors form a generic (r,s)-set.
#[pyfunction]
#[pyo3(signature = (r, vectors, s, method = "cosets"))]
fn is_generic_set(r: usize, vectors: Vec<String>, s: usize, method: &str) -> PyResult<bool> {
    let a = vector_set(r, &vectors)?;
    let m: GenericMethod = parsed(method)?;
    Ok(verify::is_generic_set(&a, s, m).map_err(err)?.holds())
}

/// Smallest set of the given kind by exhaustive search; returns (vectors, optimal).
#[pyfunction]
#[pyo3(signature = (r, s, kind = "good"))]
fn exact_minimum(r: usize, s: usize, kind: &str) -> PyResult<(Vec<String>, bool)> {
    let out = construct::exact_minimum(r, s, parsed(kind)?).map_err(err)?;
    Ok((row_strings(out.vectors().to_text()), out.optimal))
}

/// Greedy set of the given kind.
#[pyfunction]
#[pyo3(signature = (r, s, kind = "good"))]
fn greedy_set(r: usize, s: usize, kind: &str) -> PyResult<Vec<String>> {
    let out = match parsed::<SetKind>(kind)? {
        SetKind::Good => construct::greedy_good_set(r, s),
        SetKind::Generic => construct::greedy_generic_set(r, s),
    }
    .map_err(err)?;
    Ok(row_strings(out.vectors().to_text()))
}

/// Smallest size at which a random set of the given kind exists by counting.
#[pyfunction]
#[pyo3(signature = (k, s, kind = "good"))]
fn threshold_n(k: usize, s: usize, kind: &str) -> PyResult<u64> {
    Ok(bounds::threshold_n(parsed(kind)?, k, s).map_err(err)?.n)
}

/// Named bounds on the minimum size of an (k,s)-set.
#[pyfunction]
fn bounds_good<'py>(py: Python<'py>, k: usize, s: usize) -> PyResult<Bound<'py, PyDict>> {
    report(py, &bounds::bounds_g1(k, s).map_err(err)?)
}

/// Named bounds on the minimum size of a generic (r,s)-set.
#[pyfunction]
fn bounds_generic<'py>(py: Python<'py>, r: usize, s: usize) -> PyResult<Bound<'py, PyDict>> {
    report(py, &bounds::bounds_f(r, s).map_err(err)?)
}

/// Named bounds on the stopping redundancy of an [n,k,d] code.
#[pyfunction]
fn bounds_stopping_redundancy<'py>(
    py: Python<'py>,
    n: usize,
    k: usize,
    d: usize,
) -> PyResult<Bound<'py, PyDict>> {
    report(
        py,
        &bounds::stopping_redundancy_bounds(n, k, d).map_err(err)?,
    )
}

/// Size of the smallest stopping set of the rows, or None.
#[pyfunction]
fn stopping_distance(rows: Vec<String>) -> PyResult<Option<usize>> {
    erasure::stopping_distance(&matrix(&rows)?).map_err(err)
}

/// Erased positions left after peeling with the given check rows.
#[pyfunction]
fn peel(rows: Vec<String>, erased: Vec<usize>) -> PyResult<Vec<usize>> {
    let h = matrix(&rows)?;
    let e = ErasurePattern::new(h.ncols(), &erased).map_err(err)?;
    Ok(erasure::peel_decode(&h, &e)
        .map_err(err)?
        .residual
        .positions())
}

/// Whether no nonzero codeword is supported on the erased positions.
#[pyfunction]
fn is_correctable(rows: Vec<String>, erased: Vec<usize>) -> PyResult<bool> {
    let h = matrix(&rows)?;
    let e = ErasurePattern::new(h.ncols(), &erased).map_err(err)?;
    erasure::is_correctable(&h, &e).map_err(err)
}

/// Parity-check rows of a code family, e.g. "hamming:3".
#[pyfunction]
fn parity_check(code: &str) -> PyResult<Vec<String>> {
    let c = genset::cli::make_code(&parsed::<CodeFamilySpec>(code)?).map_err(err)?;
    Ok(row_strings(c.parity_check().to_text()))
}

/// Redundant parity-check rows whose stopping distance equals the minimum distance.
#[pyfunction]
fn greedy_parity_check(code: &str) -> PyResult<Vec<String>> {
    let c = genset::cli::make_code(&parsed::<CodeFamilySpec>(code)?).map_err(err)?;
    let out = construct::greedy_parity_check(&c).map_err(err)?;
    Ok(row_strings(out.matrix().to_text()))
}

/// Runs the command-line tool in-process; returns (exit code, stdout, stderr).
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = genset::cli::run(std::iter::once("genset".to_owned()).chain(args));
    (out.exit_code, out.stdout, out.stderr)
}

#[pymodule(name = "genset")]
fn genset_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(is_good_set, m)?)?;
    m.add_function(wrap_pyfunction!(is_generic_set, m)?)?;
    m.add_function(wrap_pyfunction!(exact_minimum, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_set, m)?)?;
    m.add_function(wrap_pyfunction!(threshold_n, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_good, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_generic, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_stopping_redundancy, m)?)?;
    m.add_function(wrap_pyfunction!(stopping_distance, m)?)?;
    m.add_function(wrap_pyfunction!(peel, m)?)?;
    m.add_function(wrap_pyfunction!(is_correctable, m)?)?;
    m.add_function(wrap_pyfunction!(parity_check, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_parity_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
