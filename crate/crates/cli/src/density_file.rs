//! JSON density files: `{"dims": [d_A, d_B], "matrix": [[{"re": .., "im": ..}, ..], ..], "metadata": {..}}`.
//!
//! Entries are written with 17 significant digits so every `f64` reads back
//! to the same bits.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use qudiscord::linalg::{validate_density, BipartiteDensity};
use qudiscord::{ComplexMatrix, C64};
use serde::Deserialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct DensityFile {
    pub dim_a: usize,
    pub dim_b: usize,
    pub matrix: ComplexMatrix,
    pub metadata: BTreeMap<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    dims: [usize; 2],
    matrix: Vec<Vec<RawEntry>>,
    #[serde(default)]
    metadata: BTreeMap<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    re: f64,
    im: f64,
}

impl DensityFile {
    pub fn new(rho: &BipartiteDensity, metadata: BTreeMap<String, Value>) -> Self {
        Self { dim_a: rho.dim_a(), dim_b: rho.dim_b(), matrix: rho.matrix().clone(), metadata }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| CliError::Format(e.to_string()))?;
        let [dim_a, dim_b] = raw.dims;
        let n = dim_a
            .checked_mul(dim_b)
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Format(format!("bad dims [{dim_a}, {dim_b}]")))?;
        if raw.matrix.len() != n {
            return Err(CliError::Format(format!("expected {n} rows, found {}", raw.matrix.len())));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in raw.matrix.iter().enumerate() {
            if row.len() != n {
                return Err(CliError::Format(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            data.extend(row.iter().map(|e| C64::new(e.re, e.im)));
        }
        let matrix = ComplexMatrix::from_vec(n, n, data)?;
        Ok(Self { dim_a, dim_b, matrix, metadata: raw.metadata })
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        let n = self.matrix.rows();
        let mut out = String::new();
        let _ = writeln!(out, "{{\n  \"dims\": [{}, {}],\n  \"matrix\": [", self.dim_a, self.dim_b);
        for i in 0..n {
            out.push_str("    [");
            for j in 0..n {
                let z = self.matrix[(i, j)];
                if j > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{{\"re\": {:.16e}, \"im\": {:.16e}}}", z.re, z.im);
            }
            out.push_str(if i + 1 < n { "],\n" } else { "]\n" });
        }
        out.push_str("  ],\n  \"metadata\": ");
        out.push_str(&serde_json::to_string(&self.metadata).unwrap_or_else(|_| "{}".into()));
        out.push_str("\n}\n");
        out
    }

    pub fn validate(&self, psd_tolerance: f64) -> CliResult<BipartiteDensity> {
        Ok(validate_density(self.matrix.clone(), self.dim_a, self.dim_b, psd_tolerance)?)
    }
}
