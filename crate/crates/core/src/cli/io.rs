//! JSON series files.
//!
//! ```json
//! { "kind": "vector", "dim": 2,
//!   "terms": [ { "alpha": [2, 1], "coeff": [[1.0, 0.0], [0.0, -1.0]] } ] }
//! ```
//!
//! Dirichlet files use `"n": <frequency>` in place of `"alpha"`. A vector
//! coefficient is a length-`d` array of `[re, im]` pairs, an operator
//! coefficient a `d x d` array of arrays of pairs. A file with no terms is
//! read as a power series.

use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coefficient::{Coefficient, CoefficientKind, Operator, Vector};
use crate::dirichlet::DirichletSeries;
use crate::multiindex::MultiIndex;
use crate::series::PowerSeries;
use crate::{Complex, Error, Result};

/// Any of the four series shapes a file can hold.
#[derive(Debug, Clone, PartialEq)]
pub enum AnySeries {
    PowerVector(PowerSeries<Vector>),
    PowerOperator(PowerSeries<Operator>),
    DirichletVector(DirichletSeries<Vector>),
    DirichletOperator(DirichletSeries<Operator>),
}

impl AnySeries {
    pub fn kind(&self) -> CoefficientKind {
        match self {
            AnySeries::PowerVector(_) | AnySeries::DirichletVector(_) => CoefficientKind::Vector,
            AnySeries::PowerOperator(_) | AnySeries::DirichletOperator(_) => {
                CoefficientKind::Operator
            }
        }
    }

    pub fn is_dirichlet(&self) -> bool {
        matches!(
            self,
            AnySeries::DirichletVector(_) | AnySeries::DirichletOperator(_)
        )
    }

    pub fn dim(&self) -> usize {
        match self {
            AnySeries::PowerVector(s) => s.dim(),
            AnySeries::PowerOperator(s) => s.dim(),
            AnySeries::DirichletVector(s) => s.dim(),
            AnySeries::DirichletOperator(s) => s.dim(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnySeries::PowerVector(s) => s.len(),
            AnySeries::PowerOperator(s) => s.len(),
            AnySeries::DirichletVector(s) => s.len(),
            AnySeries::DirichletOperator(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileDoc {
    kind: CoefficientKind,
    dim: usize,
    terms: Vec<FileTerm>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileTerm {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    coeff: Value,
}

enum Key {
    Alpha(MultiIndex),
    Frequency(u64),
}

pub fn parse_series_str(text: &str) -> Result<AnySeries> {
    let doc: FileDoc = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    if doc.dim == 0 {
        return Err(Error::Schema("dim must be at least 1".into()));
    }
    let mut keys = Vec::with_capacity(doc.terms.len());
    for (i, t) in doc.terms.iter().enumerate() {
        keys.push(match (&t.alpha, t.n) {
            (Some(a), None) => Key::Alpha(MultiIndex::new(a.clone())),
            (None, Some(n)) if n >= 1 => Key::Frequency(n),
            (None, Some(_)) => {
                return Err(Error::Schema(format!("term {i}: frequency must be >= 1")))
            }
            (Some(_), Some(_)) => {
                return Err(Error::Schema(format!("term {i}: has both `alpha` and `n`")))
            }
            (None, None) => return Err(Error::Schema(format!("term {i}: needs `alpha` or `n`"))),
        });
    }
    let dirichlet = matches!(keys.first(), Some(Key::Frequency(_)));
    if keys
        .iter()
        .any(|k| matches!(k, Key::Frequency(_)) != dirichlet)
    {
        return Err(Error::Schema("terms mix `alpha` and `n` keys".into()));
    }
    match doc.kind {
        CoefficientKind::Vector => {
            let coeffs = decode_all(&doc, doc.dim, decode_vector)?;
            build(
                keys,
                coeffs,
                doc.dim,
                dirichlet,
                AnySeries::PowerVector,
                AnySeries::DirichletVector,
            )
        }
        CoefficientKind::Operator => {
            let coeffs = decode_all(&doc, doc.dim, decode_operator)?;
            build(
                keys,
                coeffs,
                doc.dim,
                dirichlet,
                AnySeries::PowerOperator,
                AnySeries::DirichletOperator,
            )
        }
    }
}

fn decode_all<C>(
    doc: &FileDoc,
    dim: usize,
    decode: fn(&Value, usize) -> Result<C>,
) -> Result<Vec<C>> {
    doc.terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            decode(&t.coeff, dim).map_err(|e| match e {
                Error::Schema(msg) => Error::Schema(format!("term {i}: {msg}")),
                other => other,
            })
        })
        .collect()
}

fn build<C: Coefficient>(
    keys: Vec<Key>,
    coeffs: Vec<C>,
    dim: usize,
    dirichlet: bool,
    power: fn(PowerSeries<C>) -> AnySeries,
    dseries: fn(DirichletSeries<C>) -> AnySeries,
) -> Result<AnySeries> {
    if dirichlet {
        let mut d = DirichletSeries::zero(dim);
        for (k, c) in keys.into_iter().zip(&coeffs) {
            if let Key::Frequency(n) = k {
                d.add_term(n, c)?;
            }
        }
        Ok(dseries(d))
    } else {
        let mut s = PowerSeries::zero(dim);
        for (k, c) in keys.into_iter().zip(&coeffs) {
            if let Key::Alpha(a) = k {
                s.add_term(a, c)?;
            }
        }
        Ok(power(s))
    }
}

fn decode_complex(v: &Value) -> Result<Complex> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Schema(format!("expected [re, im], found {v}")))?;
    let part = |x: &Value| {
        x.as_f64()
            .ok_or_else(|| Error::Schema(format!("expected a number, found {x}")))
    };
    let z = Complex::new(part(&pair[0])?, part(&pair[1])?);
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(z)
}

fn decode_row(v: &Value, dim: usize) -> Result<Vec<Complex>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Schema(format!("expected an array of {dim} entries")))?;
    if arr.len() != dim {
        return Err(Error::Schema(format!(
            "coefficient has {} entries but dim is {dim}",
            arr.len()
        )));
    }
    arr.iter().map(decode_complex).collect()
}

fn decode_vector(v: &Value, dim: usize) -> Result<Vector> {
    Ok(DVector::from_vec(decode_row(v, dim)?))
}

fn decode_operator(v: &Value, dim: usize) -> Result<Operator> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Schema(format!("expected {dim} rows")))?;
    if rows.len() != dim {
        return Err(Error::Schema(format!(
            "operator has {} rows but dim is {dim}",
            rows.len()
        )));
    }
    let mut m = DMatrix::zeros(dim, dim);
    for (i, row) in rows.iter().enumerate() {
        for (j, z) in decode_row(row, dim)?.into_iter().enumerate() {
            m[(i, j)] = z;
        }
    }
    Ok(m)
}

fn encode_complex(z: &Complex) -> Value {
    Value::Array(vec![z.re.into(), z.im.into()])
}

fn encode<C: Coefficient>(c: &C) -> Value {
    let entries = c.entries();
    match C::KIND {
        CoefficientKind::Vector => Value::Array(entries.iter().map(encode_complex).collect()),
        CoefficientKind::Operator => {
            let d = c.dim();
            Value::Array(
                entries
                    .chunks(d)
                    .map(|row| Value::Array(row.iter().map(encode_complex).collect()))
                    .collect(),
            )
        }
    }
}

fn power_doc<C: Coefficient>(s: &PowerSeries<C>) -> FileDoc {
    FileDoc {
        kind: C::KIND,
        dim: s.dim(),
        terms: s
            .terms()
            .map(|(a, c)| FileTerm {
                alpha: Some(a.exponents().to_vec()),
                n: None,
                coeff: encode(c),
            })
            .collect(),
    }
}

fn dirichlet_doc<C: Coefficient>(d: &DirichletSeries<C>) -> FileDoc {
    FileDoc {
        kind: C::KIND,
        dim: d.dim(),
        terms: d
            .terms()
            .map(|(n, c)| FileTerm {
                alpha: None,
                n: Some(n),
                coeff: encode(c),
            })
            .collect(),
    }
}

pub fn to_json_string(s: &AnySeries) -> String {
    let doc = match s {
        AnySeries::PowerVector(x) => power_doc(x),
        AnySeries::PowerOperator(x) => power_doc(x),
        AnySeries::DirichletVector(x) => dirichlet_doc(x),
        AnySeries::DirichletOperator(x) => dirichlet_doc(x),
    };
    serde_json::to_string_pretty(&doc).expect("series documents always serialize")
}

pub fn parse_series_file(path: impl AsRef<Path>) -> Result<AnySeries> {
    parse_series_str(&fs::read_to_string(path)?)
}

pub fn save_series_file(path: impl AsRef<Path>, s: &AnySeries) -> Result<()> {
    fs::write(path, to_json_string(s) + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficient::real_vector;

    #[test]
    fn one_term_vector_file() {
        let text = r#"{"kind":"vector","dim":2,"terms":[{"alpha":[2,1],"coeff":[[1,0],[0,-1]]}]}"#;
        let s = parse_series_str(text).unwrap();
        let AnySeries::PowerVector(p) = s else {
            panic!("wrong shape")
        };
        assert_eq!(p.len(), 1);
        let c = p.coefficient(&MultiIndex::new(vec![2, 1])).unwrap();
        assert_eq!(c[1], Complex::new(0.0, -1.0));
    }

    #[test]
    fn dirichlet_operator_file() {
        let text = r#"{"kind":"operator","dim":1,"terms":[{"n":6,"coeff":[[[2.5,0]]]}]}"#;
        let AnySeries::DirichletOperator(d) = parse_series_str(text).unwrap() else {
            panic!("wrong shape")
        };
        assert_eq!(d.coefficient(6).unwrap()[(0, 0)], Complex::new(2.5, 0.0));
    }

    #[test]
    fn distinct_error_messages() {
        let malformed = parse_series_str("{\"kind\": \"vector\", ").unwrap_err();
        assert!(matches!(malformed, Error::Malformed(_)));
        let unknown_kind = parse_series_str(r#"{"kind":"tensor","dim":1,"terms":[]}"#).unwrap_err();
        assert!(matches!(unknown_kind, Error::Malformed(_)));
        let mismatch =
            parse_series_str(r#"{"kind":"vector","dim":3,"terms":[{"alpha":[],"coeff":[[1,0]]}]}"#)
                .unwrap_err();
        assert!(
            matches!(mismatch, Error::Schema(ref m) if m.contains("dim is 3")),
            "{mismatch}"
        );
        let huge = parse_series_str(
            r#"{"kind":"vector","dim":1,"terms":[{"alpha":[],"coeff":[[1e400,0]]}]}"#,
        )
        .unwrap_err();
        assert!(
            matches!(huge, Error::Malformed(_) | Error::NonFinite),
            "{huge}"
        );
        let mixed = parse_series_str(
            r#"{"kind":"vector","dim":1,"terms":[{"alpha":[],"coeff":[[1,0]]},{"n":2,"coeff":[[1,0]]}]}"#,
        )
        .unwrap_err();
        assert!(matches!(mixed, Error::Schema(_)));
        let zero_n =
            parse_series_str(r#"{"kind":"vector","dim":1,"terms":[{"n":0,"coeff":[[1,0]]}]}"#)
                .unwrap_err();
        assert!(matches!(zero_n, Error::Schema(_)));
        assert_ne!(malformed.to_string(), mismatch.to_string());
    }

    #[test]
    fn non_finite_is_its_own_error() {
        // JSON cannot carry NaN; the in-memory path still rejects it
        let mut s = PowerSeries::<Vector>::zero(1);
        assert!(matches!(
            s.add_term(MultiIndex::zero(), &real_vector(&[f64::NAN])),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.json");
        let s = AnySeries::PowerVector(
            PowerSeries::from_terms(
                2,
                [(MultiIndex::new(vec![0, 3]), real_vector(&[0.1, -1.0 / 3.0]))],
            )
            .unwrap(),
        );
        save_series_file(&path, &s).unwrap();
        assert_eq!(parse_series_file(&path).unwrap(), s);
        assert!(matches!(
            parse_series_file(dir.path().join("missing.json")),
            Err(Error::Io(_))
        ));
    }
}
