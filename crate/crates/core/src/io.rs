//! JSON file formats for polynomials, regions and multivariate polynomials.
//!
//! Quaternions are `[w, x, y, z]` arrays; a bare number is accepted for a
//! real entry. Matrices are lists of rows.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::linalg::QuaternionMatrix;
use crate::matpoly::MatrixPolynomial;
use crate::multivar::{MultiPolynomial, Word};
use crate::quat::Quaternion;
use crate::stability::Region;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot parse {path}: {source}")]
    Parse { path: String, source: serde_json::Error },
    #[error("invalid input: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Quat([f64; 4]),
}

impl From<Entry> for Quaternion {
    fn from(e: Entry) -> Quaternion {
        match e {
            Entry::Real(v) => Quaternion::real(v),
            Entry::Quat(a) => Quaternion::from(a),
        }
    }
}

pub type MatrixRows = Vec<Vec<Entry>>;

fn matrix(rows: MatrixRows) -> Result<QuaternionMatrix, InputError> {
    let rows: Vec<Vec<Quaternion>> = rows.into_iter().map(|r| r.into_iter().map(Quaternion::from).collect()).collect();
    if rows.iter().flatten().any(|q| !q.is_finite()) {
        return Err(InputError::Invalid("matrix entries must be finite".into()));
    }
    QuaternionMatrix::from_rows(rows).map_err(|e| InputError::Invalid(e.to_string()))
}

/// `{"coeffs": [A_0, …, A_m], "blocks": [sizes]?}`
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialFile {
    pub coeffs: Vec<MatrixRows>,
    #[serde(default)]
    pub blocks: Option<Vec<usize>>,
}

/// Parsed polynomial with its optional block partition.
#[derive(Debug, Clone)]
pub struct PolynomialInput {
    pub polynomial: MatrixPolynomial,
    pub blocks: Option<Vec<usize>>,
}

impl PolynomialFile {
    pub fn build(self) -> Result<PolynomialInput, InputError> {
        let coeffs = self.coeffs.into_iter().map(matrix).collect::<Result<Vec<_>, _>>()?;
        let polynomial = MatrixPolynomial::new(coeffs).map_err(|e| InputError::Invalid(e.to_string()))?;
        if let Some(b) = &self.blocks {
            if b.iter().sum::<usize>() != polynomial.size() || b.contains(&0) {
                return Err(InputError::Invalid("block sizes must be positive and sum to n".into()));
            }
        }
        Ok(PolynomialInput { polynomial, blocks: self.blocks })
    }
}

/// `{"kind", "center", "radius", "inner_radius", "outer_radius", "points"}`
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionFile {
    pub kind: String,
    #[serde(default)]
    pub center: Option<Entry>,
    #[serde(default)]
    pub radius: Option<f64>,
    #[serde(default)]
    pub inner_radius: Option<f64>,
    #[serde(default)]
    pub outer_radius: Option<f64>,
    #[serde(default)]
    pub points: Option<Vec<Entry>>,
}

impl RegionFile {
    /// `closed` turns an open ball into a closed one.
    pub fn build(self, closed: bool) -> Result<Region, InputError> {
        let center = self.center.map(Quaternion::from).unwrap_or(Quaternion::ZERO);
        let need = |v: Option<f64>, name: &str| v.ok_or_else(|| InputError::Invalid(format!("region needs {name}")));
        let region = match self.kind.as_str() {
            "open_ball" if closed => Region::closed_ball(center, need(self.radius, "radius")?),
            "open_ball" => Region::open_ball(center, need(self.radius, "radius")?),
            "closed_ball" => Region::closed_ball(center, need(self.radius, "radius")?),
            "complement_closed_ball" => Region::complement_closed_ball(center, need(self.radius, "radius")?),
            "annulus" => Region::annulus(center, need(self.inner_radius, "inner_radius")?, need(self.outer_radius, "outer_radius")?),
            "finite_set" => Region::finite_set(
                self.points.ok_or_else(|| InputError::Invalid("region needs points".into()))?.into_iter().map(Quaternion::from).collect(),
            ),
            other => return Err(InputError::Invalid(format!("unknown region kind {other:?}"))),
        };
        region.map_err(|e| InputError::Invalid(e.to_string()))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub word: Vec<usize>,
    pub coeff: MatrixRows,
}

/// `{"k": 2, "terms": [{"word": [1, 2], "coeff": matrix}]}`
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiPolynomialFile {
    pub k: usize,
    pub terms: Vec<TermFile>,
}

impl MultiPolynomialFile {
    pub fn build(self) -> Result<MultiPolynomial, InputError> {
        let terms = self
            .terms
            .into_iter()
            .map(|t| Ok((Word(t.word), matrix(t.coeff)?)))
            .collect::<Result<Vec<_>, InputError>>()?;
        MultiPolynomial::new(self.k, terms).map_err(|e| InputError::Invalid(e.to_string()))
    }
}

pub fn read_json(path: &Path) -> Result<serde_json::Value, InputError> {
    let text = fs::read_to_string(path).map_err(|source| InputError::Read { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|source| InputError::Parse { path: path.display().to_string(), source })
}

fn decode<T: serde::de::DeserializeOwned>(path: &Path, v: serde_json::Value) -> Result<T, InputError> {
    serde_json::from_value(v).map_err(|source| InputError::Parse { path: path.display().to_string(), source })
}

pub fn load_polynomial(path: &Path) -> Result<PolynomialInput, InputError> {
    decode::<PolynomialFile>(path, read_json(path)?)?.build()
}

pub fn load_region(path: &Path, closed: bool) -> Result<Region, InputError> {
    decode::<RegionFile>(path, read_json(path)?)?.build(closed)
}

/// Either kind of polynomial file, told apart by a `terms` field.
pub enum AnyPolynomial {
    Univariate(PolynomialInput),
    Multivariate(MultiPolynomial),
}

pub fn load_any_polynomial(path: &Path) -> Result<AnyPolynomial, InputError> {
    let v = read_json(path)?;
    if v.get("terms").is_some() {
        Ok(AnyPolynomial::Multivariate(decode::<MultiPolynomialFile>(path, v)?.build()?))
    } else {
        Ok(AnyPolynomial::Univariate(decode::<PolynomialFile>(path, v)?.build()?))
    }
}
