use std::path::Path;

use eof_core::{BipartiteDensity, BipartiteDims, CMatrix, C64};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, CliResult};

/// JSON form of a bipartite density: row-major `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(rename = "dA")]
    pub d_a: usize,
    #[serde(rename = "dB")]
    pub d_b: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_density(rho: &BipartiteDensity) -> Self {
        let m = rho.matrix();
        let matrix = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect();
        Self { d_a: rho.dims().a(), d_b: rho.dims().b(), matrix }
    }

    pub fn to_density(&self) -> CliResult<BipartiteDensity> {
        let dims = BipartiteDims::new(self.d_a, self.d_b)?;
        let n = dims.total();
        if self.matrix.len() != n {
            return Err(invalid(format!("state file has {} rows, expected dA*dB = {n}", self.matrix.len())));
        }
        if let Some((i, row)) = self.matrix.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(invalid(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        let m = CMatrix::from_fn(n, n, |i, j| C64::new(self.matrix[i][j][0], self.matrix[i][j][1]));
        Ok(BipartiteDensity::new(m, dims)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state entries are finite")
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| invalid(format!("malformed state file: {e}")))
    }

    pub fn read(path: &Path) -> CliResult<BipartiteDensity> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read state file {}: {e}", path.display())))?;
        Self::parse(&text)?.to_density()
    }
}
