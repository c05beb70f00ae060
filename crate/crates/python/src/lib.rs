//! Python bindings. Groups are named by catalog entry or by the path of a
//! group file; every failure surfaces as `ValueError`.

use std::collections::HashMap;
use std::path::Path;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::cubicsym::catalog::{self, catalog_entry, GroupSpec, Status};
use ::cubicsym::group::{symplectic_check, LinearCharacter};
use ::cubicsym::invariants::{
    basis_polynomials, molien_series, moduli_report, parse_polynomial, semi_invariant_space,
    MonomialBasis,
};
use ::cubicsym::smooth;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn load(group: &str) -> PyResult<(GroupSpec, Option<usize>)> {
    let path = Path::new(group);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(value_error)?;
        return Ok((GroupSpec::parse(&text).map_err(value_error)?, None));
    }
    let e = catalog_entry(group).map_err(value_error)?;
    Ok((e.spec, e.expect.r_g))
}

/// Names of the bundled catalog entries.
#[pyfunction]
fn catalog_names() -> Vec<String> {
    catalog::catalog_names().into_iter().map(String::from).collect()
}

#[pyfunction]
fn group_order(group: &str) -> PyResult<usize> {
    let (spec, _) = load(group)?;
    Ok(spec.build_group().map_err(value_error)?.order())
}

/// Whether every element matches a symplectic normal form.
#[pyfunction]
fn is_symplectic(group: &str) -> PyResult<bool> {
    let (spec, _) = load(group)?;
    let g = spec.build_group().map_err(value_error)?;
    Ok(symplectic_check(&g).map_err(value_error)?.overall)
}

/// Basis of `V_d(ρ, χ)` as polynomial strings.
#[pyfunction]
#[pyo3(signature = (group, character = "trivial", degree = 3))]
fn invariants(group: &str, character: &str, degree: u32) -> PyResult<Vec<String>> {
    let (spec, _) = load(group)?;
    let g = spec.build_group().map_err(value_error)?;
    let chi = spec.character(&g, character).map_err(value_error)?;
    let space = semi_invariant_space(&g, &chi, degree).map_err(value_error)?;
    let basis = MonomialBasis::new(g.degree(), degree);
    Ok(basis_polynomials(&space, &basis).iter().map(|f| f.to_string()).collect())
}

/// Molien coefficients through `degree`, optionally for the twisted
/// representation.
#[pyfunction]
#[pyo3(signature = (group, character = "trivial", degree = 6, twist = None))]
fn molien(group: &str, character: &str, degree: usize, twist: Option<&str>) -> PyResult<Vec<i64>> {
    let (spec, _) = load(group)?;
    let (g, chi) = match twist {
        Some(t) => {
            if character != "trivial" {
                return Err(value_error("a twist combines only with the trivial character"));
            }
            let g = spec.twisted_group(t).map_err(value_error)?;
            let chi = LinearCharacter::trivial(&g);
            (g, chi)
        }
        None => {
            let g = spec.build_group().map_err(value_error)?;
            let chi = spec.character(&g, character).map_err(value_error)?;
            (g, chi)
        }
    };
    Ok(molien_series(&g, &chi, degree).map_err(value_error)?.integers())
}

/// `(dim V3, dim C, r, identity holds)`; `r` defaults to the catalog value.
#[pyfunction]
#[pyo3(signature = (group, character = "trivial", r = None))]
fn moduli(group: &str, character: &str, r: Option<usize>) -> PyResult<(usize, usize, usize, bool)> {
    let (spec, recorded) = load(group)?;
    let r = r.or(recorded).ok_or_else(|| value_error("no rank recorded; pass r"))?;
    let g = spec.build_group().map_err(value_error)?;
    let chi = spec.character(&g, character).map_err(value_error)?;
    let m = moduli_report(&g, &chi, r).map_err(value_error)?;
    Ok((m.dim_v3, m.dim_c, m.r_g, m.identity_holds))
}

/// Smoothness certificate of a form in `nvars` variables at `prime`:
/// `(verdict, certificate text)` with verdict `smooth`, `singular` or
/// `inconclusive`.
#[pyfunction]
fn certify_smooth(form: &str, nvars: usize, prime: u32) -> PyResult<(String, String)> {
    let f = parse_polynomial(form, nvars, &HashMap::new()).map_err(value_error)?;
    let cert = smooth::certify_smooth(&f, prime).map_err(value_error)?;
    let verdict = match cert.verdict {
        smooth::Verdict::Smooth => "smooth",
        smooth::Verdict::SingularPointFound(_) => "singular",
        smooth::Verdict::Inconclusive => "inconclusive",
    };
    Ok((verdict.to_string(), cert.to_string()))
}

type Row = (String, String, String, String, String);

/// Regression rows `(entry, field, expected, computed, status)`; all
/// entries when `entries` is empty.
#[pyfunction]
#[pyo3(signature = (entries = Vec::new()))]
fn reproduce(entries: Vec<String>) -> PyResult<Vec<Row>> {
    let names: Vec<&str> = entries.iter().map(String::as_str).collect();
    let report = catalog::reproduce(&names, |_, _| {}).map_err(value_error)?;
    Ok(report
        .rows
        .into_iter()
        .map(|r| {
            let status = match r.status {
                Status::Match => "match",
                Status::Mismatch => "mismatch",
                Status::Skipped => "skipped",
            };
            (r.entry, r.field, r.expected, r.computed, status.to_string())
        })
        .collect())
}

#[pymodule]
fn cubicsym(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(group_order, m)?)?;
    m.add_function(wrap_pyfunction!(is_symplectic, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(molien, m)?)?;
    m.add_function(wrap_pyfunction!(moduli, m)?)?;
    m.add_function(wrap_pyfunction!(certify_smooth, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    Ok(())
}
