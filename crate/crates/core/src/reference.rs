//! The bundled reference projection `S_{1,8} ⇢ P^5` and the values it is
//! known to produce.

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::algebra::field::{Field, Q};
use crate::error::{Error, Result};
use crate::scroll::{ProjectionMatrix, ScrollSpec};

const ASSET: &str = include_str!("../assets/reference_scroll.json");

#[derive(Deserialize)]
struct SpecAsset {
    u: u32,
    v: u32,
    #[serde(rename = "N")]
    n: u32,
}

#[derive(Deserialize)]
struct ReferenceAsset {
    format_version: u32,
    spec: SpecAsset,
    columns: Vec<Vec<String>>,
    sha256: String,
}

/// Expected outcomes of the full verification of the reference scroll.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expected {
    pub prime: u32,
    pub pair_count: usize,
    pub distinct_points: usize,
    pub cubics: usize,
    pub deformation_unknowns: usize,
    pub deformation_equations: usize,
    pub deformation_rank: usize,
    pub deformation_dim: i64,
    pub selfint: i64,
    pub discriminant: i64,
    pub rho: i64,
    pub h0_upstairs: i64,
    pub h0_scroll: i64,
}

pub const EXPECTED: Expected = Expected {
    prime: 31,
    pair_count: 8,
    distinct_points: 8,
    cubics: 6,
    deformation_unknowns: 66,
    deformation_equations: 58,
    deformation_rank: 53,
    deformation_dim: 2,
    selfint: 41,
    discriminant: 42,
    rho: 13,
    h0_upstairs: 58,
    h0_scroll: 50,
};

/// Hex SHA-256 of the compact JSON encoding of the column list.
pub fn columns_checksum(columns: &[Vec<String>]) -> String {
    let canon = serde_json::to_string(columns).expect("strings serialize");
    hex::encode(Sha256::digest(canon.as_bytes()))
}

/// Loads and checksum-verifies the bundled projection matrix.
pub fn reference_projection() -> Result<ProjectionMatrix<Q>> {
    let asset: ReferenceAsset = serde_json::from_str(ASSET).map_err(|e| Error::Parse(e.to_string()))?;
    if asset.format_version != 1 {
        return Err(Error::Parse(format!("unknown asset version {}", asset.format_version)));
    }
    let sum = columns_checksum(&asset.columns);
    if sum != asset.sha256 {
        return Err(Error::InternalConsistency(format!(
            "reference asset checksum {sum} does not match recorded {}",
            asset.sha256
        )));
    }
    let spec = ScrollSpec::new(asset.spec.u, asset.spec.v, asset.spec.n)?;
    let cols = asset
        .columns
        .iter()
        .map(|c| c.iter().map(|x| Q::parse((), x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    ProjectionMatrix::from_columns(spec, (), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn asset_loads_with_expected_shape() {
        let pm = reference_projection().unwrap();
        assert_eq!(pm.lambda().rows(), 11);
        assert_eq!(pm.lambda().cols(), 6);
        assert_eq!(pm.rank(), 6);
        assert_eq!(pm.lambda().get(3, 1), &Q::int(5184));
        assert_eq!(pm.lambda().get(2, 5), &Q::int(1));
    }

    #[test]
    fn checksum_detects_tampering() {
        let mut cols: Vec<Vec<String>> = vec![vec!["1".into(), "2".into()]];
        let a = columns_checksum(&cols);
        cols[0][1] = "3".into();
        assert_ne!(a, columns_checksum(&cols));
    }
}
