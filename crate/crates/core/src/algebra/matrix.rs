//! Dense exact matrices.

use serde::{Deserialize, Serialize};

use super::field::{Context, Field, Fp, Q};
use crate::error::{Error, Result};

/// Row-major dense matrix whose entries all share one scalar context.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix<F: Field> {
    rows: usize,
    cols: usize,
    ctx: F::Ctx,
    data: Vec<F>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(ctx: F::Ctx, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            ctx,
            data: vec![F::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: F::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, F::one(ctx));
        }
        m
    }

    /// Builds a matrix from rows. All rows must have equal length and every
    /// entry must share `ctx`.
    pub fn from_rows(ctx: F::Ctx, rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            for x in row {
                if x.ctx() != ctx {
                    return Err(Error::ContextMismatch {
                        expected: F::context(ctx),
                        found: F::context(x.ctx()),
                    });
                }
                data.push(x);
            }
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            ctx,
            data,
        })
    }

    pub fn from_i64_rows(ctx: F::Ctx, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            ctx,
            rows.iter()
                .map(|r| r.iter().map(|&x| F::from_i64(ctx, x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ctx: F::Ctx, cols: &[Vec<F>]) -> Result<Self> {
        Ok(Self::from_rows(ctx, cols.to_vec())?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> F::Ctx {
        self.ctx
    }

    pub fn context(&self) -> Context {
        F::context(self.ctx)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        debug_assert!(v.ctx() == self.ctx);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                expected: self.context(),
                found: other.context(),
            });
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `M · w` for a column vector `w`.
    pub fn apply(&self, w: &[F]) -> Result<Vec<F>> {
        if w.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                w.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(w)
                    .fold(F::zero(self.ctx), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    /// `v · M` for a row vector `v`.
    pub fn left_apply(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.rows {
            return Err(Error::Shape(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![F::zero(self.ctx); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.add(&vi.mul(self.get(i, j)));
            }
        }
        Ok(out)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let rows = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Self::from_rows(self.ctx, rows).expect("same context")
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let rows = (0..self.rows)
            .map(|i| idx.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        let mut m = Self::from_rows(self.ctx, rows).expect("same context");
        if self.rows == 0 {
            m.cols = idx.len();
        }
        m
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                expected: self.context(),
                found: other.context(),
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            ctx: self.ctx,
            data,
        })
    }

    pub fn map<G: Field>(&self, ctx: G::Ctx, f: impl Fn(&F) -> G) -> ExactMatrix<G> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            ctx,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        F::matrix_rank(self)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m);
        (m, pivots)
    }

    /// Basis of the right kernel `{w : M w = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut w = vec![F::zero(self.ctx); self.cols];
            w[free] = F::one(self.ctx);
            for (row, &pc) in pivots.iter().enumerate() {
                w[pc] = r.get(row, free).neg();
            }
            basis.push(w);
        }
        basis
    }

    /// Basis of the left kernel `{v : v M = 0}`.
    pub fn left_kernel_basis(&self) -> Vec<Vec<F>> {
        self.transpose().kernel_basis()
    }

    /// Gaussian elimination with a right-to-left column sweep. Exposed so the
    /// rank can be cross-checked against an independent elimination order.
    pub fn rank_reverse_sweep(&self) -> usize {
        let rev: Vec<usize> = (0..self.cols).rev().collect();
        gaussian_rank(&self.select_columns(&rev).transpose())
    }
}

fn rref_in_place<F: Field>(m: &mut ExactMatrix<F>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m.get(r, c).inv().expect("nonzero pivot");
        for j in c..cols {
            let v = m.get(r, j).mul(&inv);
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Row-echelon rank by plain Gaussian elimination.
pub fn gaussian_rank<F: Field>(m: &ExactMatrix<F>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.data.swap(p * cols + j, rank * cols + j);
            }
        }
        let inv = a.get(rank, c).inv().expect("nonzero pivot");
        for i in rank + 1..rows {
            let f = a.get(i, c).mul(&inv);
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = a.get(i, j).sub(&f.mul(a.get(rank, j)));
                a.set(i, j, v);
            }
        }
        rank += 1;
    }
    rank
}

/// JSON exchange form: `{"rows", "cols", "modulus", "entries"}` with decimal
/// string entries (`"a/b"` for rationals).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub modulus: Option<u32>,
    pub entries: Vec<Vec<String>>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            modulus: self.context().modulus(),
            entries: self
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|x| x.to_decimal()).collect())
                .collect(),
        }
    }
}

impl MatrixJson {
    fn check_shape(&self) -> Result<()> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Shape(format!(
                "declared {}x{} does not match entries",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    pub fn to_prime(&self, p: u32) -> Result<ExactMatrix<Fp>> {
        self.check_shape()?;
        if let Some(m) = self.modulus {
            if m != p {
                return Err(Error::ContextMismatch {
                    expected: Context::Prime(p),
                    found: Context::Prime(m),
                });
            }
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|s| Fp::parse(p, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut m = ExactMatrix::from_rows(p, rows)?;
        m.cols = self.cols;
        Ok(m)
    }

    pub fn to_rational(&self) -> Result<ExactMatrix<Q>> {
        self.check_shape()?;
        if let Some(m) = self.modulus {
            return Err(Error::ContextMismatch {
                expected: Context::Rational,
                found: Context::Prime(m),
            });
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|s| Q::parse((), s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut m = ExactMatrix::from_rows((), rows)?;
        m.cols = self.cols;
        Ok(m)
    }
}

impl ExactMatrix<Q> {
    /// Reduction modulo `p`; fails when some denominator vanishes mod `p`.
    pub fn reduce(&self, p: u32) -> Result<ExactMatrix<Fp>> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            data.push(x.reduce(p).ok_or_else(|| Error::BadReduction {
                prime: p,
                detail: format!("entry {x} has denominator divisible by {p}"),
            })?);
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            ctx: p,
            data,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(rows: &[Vec<i64>], p: u32) -> ExactMatrix<Fp> {
        ExactMatrix::from_i64_rows(p, rows).unwrap()
    }

    #[test]
    fn identity_rank() {
        assert_eq!(ExactMatrix::<Fp>::identity(31, 2).rank(), 2);
        assert_eq!(ExactMatrix::<Q>::identity((), 2).rank(), 2);
    }

    #[test]
    fn vandermonde_four_nodes_nine_columns() {
        let rows: Vec<Vec<i64>> = (0..4)
            .map(|s: i64| (0..9).map(|j| s.pow(j)).collect())
            .collect();
        assert_eq!(ExactMatrix::<Q>::from_i64_rows((), &rows).unwrap().rank(), 4);
        assert_eq!(fp(&rows, 31).rank(), 4);
        let k = ExactMatrix::<Q>::from_i64_rows((), &rows).unwrap().kernel_basis();
        assert_eq!(k.len(), 5);
    }

    #[test]
    fn kernel_of_zero_and_full_rank() {
        let z = ExactMatrix::<Fp>::zeros(7, 3, 3);
        assert_eq!(z.kernel_basis().len(), 3);
        let m = fp(&[vec![1, 2], vec![3, 4]], 7);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = ExactMatrix::<Q>::from_i64_rows((), &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]])
            .unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.len(), 4 - m.rank());
        for w in k {
            assert!(m.apply(&w).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn context_mismatch_detected() {
        let err = ExactMatrix::<Fp>::from_rows(31, vec![vec![Fp::new(1, 31), Fp::new(1, 7)]]);
        assert!(matches!(err, Err(Error::ContextMismatch { .. })));
        let a = ExactMatrix::<Fp>::identity(31, 2);
        let b = ExactMatrix::<Fp>::identity(7, 2);
        assert!(matches!(a.mul(&b), Err(Error::ContextMismatch { .. })));
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = ExactMatrix::<Q>::from_i64_rows((), &[vec![1, 2], vec![3]]);
        assert!(matches!(err, Err(Error::Shape(_))));
    }

    #[test]
    fn json_roundtrip_rational_and_prime() {
        let m = ExactMatrix::<Q>::from_rows((), vec![vec![Q::new(1, 2), Q::int(-3)], vec![Q::int(0), Q::new(7, 5)]])
            .unwrap();
        let j = m.to_json();
        assert_eq!(j.entries[0], vec!["1/2".to_string(), "-3".to_string()]);
        let s = serde_json::to_string(&j).unwrap();
        let back: MatrixJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_rational().unwrap(), m);
        let r = back.to_prime(31).unwrap();
        assert_eq!(r, m.reduce(31).unwrap());
        assert_eq!(r.to_json().to_prime(31).unwrap(), r);
        assert!(r.to_json().to_rational().is_err());
    }
}
