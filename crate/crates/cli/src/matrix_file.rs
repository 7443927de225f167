use std::path::Path;

use accretive::{CMatrix, C64};
use serde::{Deserialize, Serialize};

use crate::Failure;

/// On-disk matrix: `{"n": 2, "re": [[..], [..]], "im": [[..], [..]]}`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let rows = m.rows();
        Self {
            n: m.dim(),
            re: rows.iter().map(|r| r.iter().map(|z| z.re).collect()).collect(),
            im: rows.iter().map(|r| r.iter().map(|z| z.im).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix, Failure> {
        let bad = |msg: String| Err(Failure::Input(msg));
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        for (name, part) in [("re", &self.re), ("im", &self.im)] {
            if part.len() != self.n {
                return bad(format!("{name} has {} rows, expected {}", part.len(), self.n));
            }
            if let Some((i, row)) = part.iter().enumerate().find(|(_, r)| r.len() != self.n) {
                return bad(format!("{name} row {i} has {} entries, expected {}", row.len(), self.n));
            }
            if part.iter().flatten().any(|x| !x.is_finite()) {
                return bad(format!("{name} contains a non-finite entry"));
            }
        }
        Ok(CMatrix::from_fn(self.n, |i, j| C64::new(self.re[i][j], self.im[i][j])))
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::Input(format!("malformed matrix file: {e}")))
    }

    pub fn read(path: &Path) -> Result<CMatrix, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)?.to_matrix()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix file serializes")
    }
}
