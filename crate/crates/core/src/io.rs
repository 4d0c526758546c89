//! JSON input formats for matrices, vectors, lattices and F² bases.
//!
//! Rational entries are JSON integers or strings "p/q". Cyclotomic entries
//! may also be objects {"n": conductor, "coeffs": ["p/q", ...]}. Errors
//! carry the serde position or the offending row and column.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactnum::cyclotomic::parse_rational;
use crate::exactnum::{CycMatrix, CycNum, Matrix, QMatrix};
use crate::intlin::{to_z, ZMatrix};
use crate::lattice::{Lattice, StandardLattice};

fn parse_json(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

fn rational_entry(v: &Value, at: &str) -> Result<num_rational::BigRational> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(crate::exactnum::field::rat(i)),
            None => Err(Error::Parse(format!("{at}: expected an integer or a \"p/q\" string, found {n}"))),
        },
        Value::String(s) => parse_rational(s).map_err(|e| Error::Parse(format!("{at}: {e}"))),
        other => Err(Error::Parse(format!("{at}: expected a rational entry, found {other}"))),
    }
}

fn cyc_entry(v: &Value, at: &str) -> Result<CycNum> {
    match v {
        Value::Object(_) => serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("{at}: {e}"))),
        _ => rational_entry(v, at).map(CycNum::from_rational),
    }
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{at}: expected an array")))
}

/// Accept a bare nested array or an object with a "matrix" key.
fn matrix_value(v: &Value) -> &Value {
    v.get("matrix").unwrap_or(v)
}

fn grid<T>(v: &Value, entry: impl Fn(&Value, &str) -> Result<T>) -> Result<Vec<Vec<T>>> {
    array(v, "matrix")?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            array(row, &format!("row {i}"))?
                .iter()
                .enumerate()
                .map(|(j, x)| entry(x, &format!("row {i}, column {j}")))
                .collect()
        })
        .collect()
}

pub fn parse_rational_matrix(s: &str) -> Result<QMatrix> {
    let v = parse_json(s)?;
    Matrix::from_rows(grid(matrix_value(&v), rational_entry)?)
}

pub fn parse_integer_matrix(s: &str) -> Result<ZMatrix> {
    let q = parse_rational_matrix(s)?;
    to_z(&q).ok_or_else(|| Error::Parse("matrix entries must be integers".into()))
}

pub fn parse_cyc_vector(s: &str) -> Result<Vec<CycNum>> {
    let v = parse_json(s)?;
    let v = v.get("omega").unwrap_or(&v);
    array(v, "vector")?.iter().enumerate().map(|(i, x)| cyc_entry(x, &format!("entry {i}"))).collect()
}

/// A list of column vectors, as a bare array or under a "columns" key.
pub fn parse_cyc_columns(s: &str) -> Result<CycMatrix> {
    let v = parse_json(s)?;
    let cols = grid(v.get("columns").unwrap_or(&v), cyc_entry)?;
    if cols.is_empty() {
        return Err(Error::Parse("basis has no columns".into()));
    }
    Ok(Matrix::from_rows(cols)?.transpose())
}

/// A standard lattice name (bare or quoted) or a lattice object.
pub fn parse_lattice(s: &str) -> Result<Lattice> {
    let t = s.trim();
    if let Ok(name) = t.parse::<StandardLattice>() {
        return Ok(Lattice::standard(name));
    }
    match parse_json(t)? {
        Value::String(name) => Ok(Lattice::standard(name.parse()?)),
        v => serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_and_vectors() {
        let m = parse_rational_matrix(r#"[[1, "1/2"], [0, -3]]"#).unwrap();
        assert_eq!(m.get(0, 1), &crate::exactnum::field::rat_frac(1, 2));
        assert!(parse_integer_matrix(r#"{"matrix": [[1, "1/2"]]}"#).is_err());
        let err = parse_rational_matrix(r#"[[1, 2], [3, true]]"#).unwrap_err();
        assert!(err.to_string().contains("row 1, column 1"), "{err}");
        let err = parse_rational_matrix("[[1, 2],\n [3, 4]").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(parse_rational_matrix("[[1, 2], [3]]").is_err());

        let v = parse_cyc_vector(r#"[1, {"n": 3, "coeffs": ["0", "1"]}]"#).unwrap();
        assert_eq!(v[1], CycNum::zeta(3));
        let b = parse_cyc_columns(r#"{"columns": [[1, 0, 0], [0, 1, "2/3"]]}"#).unwrap();
        assert_eq!((b.rows(), b.cols()), (3, 2));
    }

    #[test]
    fn lattices() {
        assert_eq!(parse_lattice("K3\n").unwrap().rank(), 22);
        assert_eq!(parse_lattice("\"U\"").unwrap().rank(), 2);
        let l = parse_lattice(r#"{"rank": 1, "gram": [[2]], "alternating": false}"#).unwrap();
        assert_eq!(l.rank(), 1);
        assert!(parse_lattice("nope").is_err());
    }
}
