use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ScrollSpec;
use crate::algebra::field::{Fp, Field, Q};
use crate::algebra::matrix::{ExactMatrix, MatrixJson};
use crate::error::{Error, Result};

/// A `(D+2) × (N+1)` matrix `Λ` acting on row vectors, `z = x·Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionMatrix<F: Field> {
    spec: ScrollSpec,
    lambda: ExactMatrix<F>,
}

impl<F: Field> ProjectionMatrix<F> {
    pub fn new(spec: ScrollSpec, lambda: ExactMatrix<F>) -> Result<Self> {
        if lambda.rows() != spec.source_dim() || lambda.cols() != spec.target_dim() {
            return Err(Error::Shape(format!(
                "projection for {:?} must be {}x{}, got {}x{}",
                spec,
                spec.source_dim(),
                spec.target_dim(),
                lambda.rows(),
                lambda.cols()
            )));
        }
        Ok(ProjectionMatrix { spec, lambda })
    }

    /// Builds `Λ` from its columns `v_1, ..., v_{N+1}`.
    pub fn from_columns(spec: ScrollSpec, ctx: F::Ctx, columns: &[Vec<F>]) -> Result<Self> {
        Self::new(spec, ExactMatrix::from_columns(ctx, columns)?)
    }

    pub fn spec(&self) -> &ScrollSpec {
        &self.spec
    }

    pub fn lambda(&self) -> &ExactMatrix<F> {
        &self.lambda
    }

    pub fn ctx(&self) -> F::Ctx {
        self.lambda.ctx()
    }

    pub fn rank(&self) -> usize {
        self.lambda.rank()
    }

    pub fn require_full_rank(&self) -> Result<()> {
        let r = self.rank();
        if r == self.spec.target_dim() {
            Ok(())
        } else {
            Err(Error::InvalidProjection(format!(
                "rank {r} < N+1 = {}",
                self.spec.target_dim()
            )))
        }
    }

    /// `x·Λ` for a row vector upstairs.
    pub fn project(&self, x: &[F]) -> Result<Vec<F>> {
        self.lambda.left_apply(x)
    }

    /// `Λ·G` for a change of target coordinates `G`.
    pub fn transform(&self, g: &ExactMatrix<F>) -> Result<Self> {
        Self::new(self.spec, self.lambda.mul(g)?)
    }

    pub fn to_json(&self) -> ProjectionJson {
        ProjectionJson {
            spec: self.spec,
            lambda: self.lambda.to_json(),
        }
    }

    /// Hex SHA-256 of the canonical JSON encoding.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(&self.to_json()).expect("projection serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

impl ProjectionMatrix<Q> {
    pub fn reduce(&self, p: u32) -> Result<ProjectionMatrix<Fp>> {
        ProjectionMatrix::new(self.spec, self.lambda.reduce(p)?)
    }
}

/// Serialized projection: the scroll type plus `Λ` in the matrix format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionJson {
    pub spec: ScrollSpec,
    pub lambda: MatrixJson,
}

impl ProjectionJson {
    pub fn to_rational(&self) -> Result<ProjectionMatrix<Q>> {
        let spec = ScrollSpec::new(self.spec.u(), self.spec.v(), self.spec.n())?;
        ProjectionMatrix::new(spec, self.lambda.to_rational()?)
    }

    /// Reads `Λ` over `F_p`. Rational entries are reduced; a matrix already
    /// stored modulo `p` is read directly.
    pub fn to_prime(&self, p: u32) -> Result<ProjectionMatrix<Fp>> {
        let spec = ScrollSpec::new(self.spec.u(), self.spec.v(), self.spec.n())?;
        match self.lambda.modulus {
            Some(_) => ProjectionMatrix::new(spec, self.lambda.to_prime(p)?),
            None => ProjectionMatrix::new(spec, self.lambda.to_rational()?.reduce(p)?),
        }
    }
}
