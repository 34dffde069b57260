//! Operator file format.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "kind": "unitary",
//!   "matrix": [[[0.0, 0.0], [1.0, 0.0]],
//!              [[1.0, 0.0], [0.0, 0.0]]]
//! }
//! ```
//!
//! `kind` is one of `unitary`, `antiunitary`, `general`. Entries are
//! `[re, im]` pairs, row-major. `conjugate_first` is accepted only for
//! `general` matrices.

use std::fmt;
use std::path::Path;

use serde::Deserialize;
use wigner::{
    general_induced_map, induced_map, Complex64, Matrix64, MatrixOracle64, SymmetryOperator64,
};

use crate::CliError;

/// Maximum `|U^H U - I|` accepted for unitary and antiunitary files.
pub const LOAD_UNITARITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Unitary,
    Antiunitary,
    General,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperatorKind::Unitary => "unitary",
            OperatorKind::Antiunitary => "antiunitary",
            OperatorKind::General => "general",
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOperatorFile {
    dim: i64,
    kind: OperatorKind,
    matrix: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    conjugate_first: Option<bool>,
}

/// A validated operator file.
#[derive(Debug, Clone)]
pub struct OperatorFile {
    pub dim: usize,
    pub kind: OperatorKind,
    pub matrix: Matrix64,
    pub conjugate_first: bool,
}

impl OperatorFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawOperatorFile = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("malformed operator file: {e}")))?;
        if raw.dim < 2 {
            return Err(CliError::Usage("dimension must be at least 2".into()));
        }
        let dim = raw.dim as usize;
        if raw.matrix.len() != dim {
            return Err(CliError::Usage(format!(
                "field `matrix`: expected {dim} rows, found {}",
                raw.matrix.len()
            )));
        }
        let mut rows = Vec::with_capacity(dim);
        for (i, row) in raw.matrix.iter().enumerate() {
            if row.len() != dim {
                return Err(CliError::Usage(format!(
                    "field `matrix`: row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            rows.push(row.iter().map(|&[re, im]| Complex64::new(re, im)).collect());
        }
        let matrix = Matrix64::from_rows(rows)
            .map_err(|e| CliError::Usage(format!("field `matrix`: {e}")))?;
        if raw.conjugate_first.is_some() && raw.kind != OperatorKind::General {
            return Err(CliError::Usage(
                "field `conjugate_first` is only allowed for kind \"general\"".into(),
            ));
        }
        if raw.kind != OperatorKind::General {
            let deviation = matrix.unitarity_deviation();
            if !(deviation <= LOAD_UNITARITY_TOL) {
                return Err(CliError::Usage(format!(
                    "field `matrix`: kind \"{}\" requires a unitary matrix, max |U^H U - I| = {deviation:e}",
                    raw.kind
                )));
            }
        }
        Ok(Self {
            dim,
            kind: raw.kind,
            matrix,
            conjugate_first: raw.conjugate_first.unwrap_or(false),
        })
    }

    /// The generating operator, for unitary and antiunitary files.
    pub fn operator(&self) -> Option<SymmetryOperator64> {
        let antiunitary = match self.kind {
            OperatorKind::Unitary => false,
            OperatorKind::Antiunitary => true,
            OperatorKind::General => return None,
        };
        SymmetryOperator64::new(self.matrix.clone(), antiunitary).ok()
    }

    pub fn oracle(&self) -> Result<MatrixOracle64, CliError> {
        let oracle = match self.operator() {
            Some(op) => induced_map(&op),
            None => general_induced_map(self.matrix.clone(), self.conjugate_first),
        };
        oracle.map_err(|e| CliError::Usage(format!("field `matrix`: {e}")))
    }
}
