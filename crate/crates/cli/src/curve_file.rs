//! The JSON curve file: `{"truncation": T, "branches": [{"x": "...", "y": "..."}, ...]}`.

use std::fs;
use std::path::Path;

use latnorm::exactalg::parse_poly;
use latnorm::{BranchParametrization, Curve};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchSpec {
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub truncation: u32,
    pub branches: Vec<BranchSpec>,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("branch {branch}, {coordinate}: {source}")]
    Branch {
        branch: usize,
        coordinate: &'static str,
        #[source]
        source: latnorm::Error,
    },

    #[error(transparent)]
    Curve(latnorm::Error),
}

impl LoadError {
    pub fn name(&self) -> &'static str {
        match self {
            LoadError::Io { .. } => "IoError",
            LoadError::Schema { .. } => "SchemaError",
            LoadError::Branch { source, .. } => source.name(),
            LoadError::Curve(e) => e.name(),
        }
    }
}

impl CurveFile {
    pub fn parse(text: &str) -> Result<Self, LoadError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: CurveFile = serde_path_to_error::deserialize(de)
            .map_err(|e| LoadError::Schema { path: e.path().to_string(), message: e.inner().to_string() })?;
        if file.branches.is_empty() {
            return Err(LoadError::Schema { path: "branches".into(), message: "at least one branch is required".into() });
        }
        Ok(file)
    }

    pub fn to_curve(&self) -> Result<Curve, LoadError> {
        let mut branches = Vec::with_capacity(self.branches.len());
        for (i, b) in self.branches.iter().enumerate() {
            let x = parse_poly(&b.x, self.truncation).map_err(|source| LoadError::Branch { branch: i, coordinate: "x", source })?;
            let y = parse_poly(&b.y, self.truncation).map_err(|source| LoadError::Branch { branch: i, coordinate: "y", source })?;
            branches.push(BranchParametrization::new(x, y).map_err(|source| LoadError::Branch { branch: i, coordinate: "x, y", source })?);
        }
        Curve::new(branches).map_err(LoadError::Curve)
    }
}

pub fn parse_curve(text: &str) -> Result<Curve, LoadError> {
    CurveFile::parse(text)?.to_curve()
}

pub fn load_curve(path: &Path) -> Result<Curve, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.display().to_string(), source })?;
    parse_curve(&text)
}

/// The bundled example curves as `(name, file contents)`.
pub const CORPUS: [(&str, &str); 8] = [
    ("smooth", include_str!("../corpus/smooth.json")),
    ("cusp_2_3", include_str!("../corpus/cusp_2_3.json")),
    ("cusp_2_5", include_str!("../corpus/cusp_2_5.json")),
    ("a3", include_str!("../corpus/a3.json")),
    ("a5", include_str!("../corpus/a5.json")),
    ("a7", include_str!("../corpus/a7.json")),
    ("d5", include_str!("../corpus/d5.json")),
    ("triple_point", include_str!("../corpus/triple_point.json")),
];

pub fn corpus_curve(name: &str) -> Option<Curve> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, text)| parse_curve(text).expect("bundled curve parses"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_errors_carry_a_path() {
        let err = CurveFile::parse(r#"{"truncation": 8, "branches": [{"x": "t", "z": "t"}]}"#).unwrap_err();
        match err {
            LoadError::Schema { path, .. } => assert_eq!(path, "branches[0].z"),
            other => panic!("{:?}", other),
        }
        let err = CurveFile::parse(r#"{"truncation": -1, "branches": []}"#).unwrap_err();
        assert!(matches!(err, LoadError::Schema { ref path, .. } if path == "truncation"));
        assert_eq!(CurveFile::parse(r#"{"truncation": 4, "branches": []}"#).unwrap_err().name(), "SchemaError");
    }

    #[test]
    fn corpus_and_invalid_branches() {
        for (name, _) in CORPUS {
            assert!(corpus_curve(name).is_some());
        }
        assert_eq!(corpus_curve("a3").unwrap().r(), 2);
        let err = parse_curve(r#"{"truncation": 4, "branches": [{"x":"t^2","y":"t^4"}]}"#).unwrap_err();
        assert_eq!(err.name(), "InvalidBranch");
    }
}
