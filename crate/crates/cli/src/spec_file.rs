//! Spec-file ingestion: a JSON tree with rationals written as strings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use fmanifold::algebroid::PoissonBivector;
use fmanifold::duality::AffineField;
use fmanifold::frobenius::FrobeniusSpec;
use fmanifold::linalg::Matrix;
use fmanifold::poly::{format_rational, parse_rational};
use fmanifold::{MultiPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{message} at {path}")]
    Semantic { path: String, message: String },
}

impl SpecError {
    fn semantic(path: impl Into<String>, message: impl Into<String>) -> Self {
        SpecError::Semantic { path: path.into(), message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTerm {
    pub coeff: String,
    pub exps: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAffine {
    pub a: Vec<Vec<String>>,
    pub b: Vec<String>,
}

/// The file layout, before any semantic validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpec {
    pub n: usize,
    pub potential: Vec<RawTerm>,
    pub metric: Vec<Vec<String>>,
    pub euler: RawAffine,
    pub charge: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chain: Vec<RawAffine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poisson: Option<Vec<Vec<Vec<RawTerm>>>>,
}

/// A validated spec: a Frobenius structure with optional chain identities and
/// an optional bivector on the same coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecFile {
    pub frobenius: FrobeniusSpec,
    pub chain: Vec<AffineField>,
    pub poisson: Option<PoissonBivector>,
}

impl SpecFile {
    pub fn n(&self) -> usize {
        self.frobenius.n()
    }

    pub fn to_raw(&self) -> RawSpec {
        let f = &self.frobenius;
        RawSpec {
            n: f.n(),
            potential: raw_terms(f.potential()),
            metric: raw_matrix(f.metric()),
            euler: raw_affine(f.euler_a(), f.euler_b()),
            charge: format_rational(f.charge()),
            chain: self.chain.iter().map(|c| raw_affine(&c.a, &c.b)).collect(),
            poisson: self
                .poisson
                .as_ref()
                .map(|pi| pi.components().iter().map(|row| row.iter().map(raw_terms).collect()).collect()),
        }
    }

    /// Canonical pretty-printed JSON; `parse_spec` inverts it.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_raw()).expect("plain data serializes");
        s.push('\n');
        s
    }
}

pub fn raw_terms(p: &MultiPoly) -> Vec<RawTerm> {
    p.terms().map(|(e, c)| RawTerm { coeff: format_rational(c), exps: e.clone() }).collect()
}

fn raw_matrix(m: &Matrix) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(format_rational).collect()).collect()
}

fn raw_affine(a: &Matrix, b: &[Rational]) -> RawAffine {
    RawAffine { a: raw_matrix(a), b: b.iter().map(format_rational).collect() }
}

pub fn parse_spec(text: &str) -> Result<SpecFile, SpecError> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| SpecError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_raw(&raw)
}

fn rational(s: &str, path: &str) -> Result<Rational, SpecError> {
    match parse_rational(s) {
        Ok(Some(q)) => Ok(q),
        Ok(None) => Err(SpecError::semantic(path, format!("invalid rational {s:?}"))),
        Err(_) => Err(SpecError::semantic(path, "zero denominator")),
    }
}

fn vector(v: &[String], n: usize, path: &str) -> Result<Vec<Rational>, SpecError> {
    if v.len() != n {
        return Err(SpecError::semantic(path, format!("expected {n} entries, found {}", v.len())));
    }
    v.iter().enumerate().map(|(i, s)| rational(s, &format!("{path}[{i}]"))).collect()
}

fn square(m: &[Vec<String>], n: usize, path: &str) -> Result<Matrix, SpecError> {
    if m.len() != n {
        return Err(SpecError::semantic(path, format!("expected {n} rows, found {}", m.len())));
    }
    m.iter().enumerate().map(|(i, r)| vector(r, n, &format!("{path}[{i}]"))).collect()
}

fn polynomial(terms: &[RawTerm], n: usize, path: &str) -> Result<MultiPoly, SpecError> {
    let mut out = MultiPoly::zero(n);
    for (i, t) in terms.iter().enumerate() {
        let c = rational(&t.coeff, &format!("{path}[{i}].coeff"))?;
        if t.exps.len() != n {
            return Err(SpecError::semantic(
                format!("{path}[{i}].exps"),
                format!("expected {n} exponents, found {}", t.exps.len()),
            ));
        }
        out = &out + &MultiPoly::monomial(t.exps.clone(), c);
    }
    Ok(out)
}

fn affine(raw: &RawAffine, n: usize, path: &str) -> Result<AffineField, SpecError> {
    Ok(AffineField { a: square(&raw.a, n, &format!("{path}.a"))?, b: vector(&raw.b, n, &format!("{path}.b"))? })
}

pub fn from_raw(raw: &RawSpec) -> Result<SpecFile, SpecError> {
    let n = raw.n;
    if n == 0 {
        return Err(SpecError::semantic("n", "dimension must be positive"));
    }
    let potential = polynomial(&raw.potential, n, "potential")?;
    let metric = square(&raw.metric, n, "metric")?;
    let euler = affine(&raw.euler, n, "euler")?;
    let charge = rational(&raw.charge, "charge")?;
    let chain = raw
        .chain
        .iter()
        .enumerate()
        .map(|(i, c)| affine(c, n, &format!("chain[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let frobenius = FrobeniusSpec::new(potential, metric, euler.a, euler.b, charge).map_err(|e| match e {
        fmanifold::Error::MetricNotSymmetric { row, col } => {
            SpecError::semantic(format!("metric[{row}][{col}]"), "metric not symmetric")
        }
        fmanifold::Error::SingularMetric => SpecError::semantic("metric", "metric singular"),
        other => SpecError::semantic("spec", other.to_string()),
    })?;
    let poisson = match &raw.poisson {
        None => None,
        Some(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(SpecError::semantic("poisson", format!("expected a {n}x{n} array")));
            }
            let comps = rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter().enumerate().map(|(j, t)| polynomial(t, n, &format!("poisson[{i}][{j}]"))).collect()
                })
                .collect::<Result<Vec<Vec<_>>, _>>()?;
            Some(PoissonBivector::new(comps).map_err(|e| match e {
                fmanifold::Error::NotAntisymmetric { row, col } => {
                    SpecError::semantic(format!("poisson[{row}][{col}]"), "bivector not antisymmetric")
                }
                other => SpecError::semantic("poisson", other.to_string()),
            })?)
        }
    };
    Ok(SpecFile { frobenius, chain, poisson })
}

#[cfg(test)]
mod tests {
    use super::*;

    const N2: &str = r#"{
        "n": 2,
        "potential": [{"coeff": "1/2", "exps": [2, 1]}, {"coeff": "1", "exps": [0, 4]}],
        "metric": [["0", "1"], ["1", "0"]],
        "euler": {"a": [["1", "0"], ["0", "2/3"]], "b": ["0", "0"]},
        "charge": "1/3"
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let s = parse_spec(N2).unwrap();
        assert_eq!(s.n(), 2);
        assert_eq!(parse_spec(&s.to_json()).unwrap(), s);
        assert_eq!(parse_spec(&s.to_json()).unwrap().to_json(), s.to_json());
    }

    #[test]
    fn asymmetric_metric_is_rejected() {
        let text = N2.replace(r#"[["0", "1"], ["1", "0"]]"#, r#"[["0", "1"], ["2", "0"]]"#);
        match parse_spec(&text).unwrap_err() {
            SpecError::Semantic { message, .. } => assert_eq!(message, "metric not symmetric"),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let text = N2.replace(r#""coeff": "1/2""#, r#""coeff": "1/0""#);
        let e = parse_spec(&text).unwrap_err();
        assert_eq!(e, SpecError::semantic("potential[0].coeff", "zero denominator"));
    }

    #[test]
    fn malformed_rational_is_rejected() {
        let text = N2.replace(r#""charge": "1/3""#, r#""charge": "0.33""#);
        assert!(matches!(parse_spec(&text), Err(SpecError::Semantic { .. })));
    }

    #[test]
    fn syntax_error_carries_position() {
        match parse_spec("{\n  \"n\": 2,\n  oops\n}").unwrap_err() {
            SpecError::Syntax { line, .. } => assert_eq!(line, 3),
            e => panic!("{e}"),
        }
    }
}
