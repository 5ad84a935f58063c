//! Column-major dense matrices and vectors, LU with partial pivoting, and
//! desk-scale conditioning diagnostics.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular to machine precision")]
    Singular,
    #[error("matrix is not centrosymmetric within tolerance")]
    NotCentrosymmetric,
    #[error("operation requires a multiquadric kernel, got {0}")]
    UnsupportedKernel(String),
    #[error("derivative order {0} is not supported (0, 1, or 2)")]
    UnsupportedOrder(u32),
    #[error("knot set must be one-dimensional, got dimension {0}")]
    KnotDimension(usize),
}

/// A dense matrix with column-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds from row slices; panics if the rows are ragged.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Self::from_fn(r, c, |i, j| {
            assert_eq!(rows[i].len(), c, "ragged rows");
            rows[i][j]
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Column-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn matvec(&self, x: &DenseVector) -> DenseVector {
        assert_eq!(self.cols, x.len(), "matvec shape mismatch");
        let mut y = vec![0.0; self.rows];
        for j in 0..self.cols {
            let xj = x[j];
            for i in 0..self.rows {
                y[i] += self[(i, j)] * xj;
            }
        }
        DenseVector::from(y)
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            for k in 0..self.cols {
                let b = other[(k, j)];
                if b == 0.0 {
                    continue;
                }
                for i in 0..self.rows {
                    out[(i, j)] += self[(i, k)] * b;
                }
            }
        }
        out
    }

    /// Copy of the block with rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> DenseMatrix {
        DenseMatrix::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[j * self.rows + i]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[j * self.rows + i]
    }
}

/// A dense vector.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseVector {
    data: Vec<f64>,
}

impl DenseVector {
    pub fn zeros(n: usize) -> Self {
        Self { data: vec![0.0; n] }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn norm_inf(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn sub(&self, other: &DenseVector) -> DenseVector {
        assert_eq!(self.len(), other.len());
        DenseVector::from(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        )
    }

    pub fn add(&self, other: &DenseVector) -> DenseVector {
        assert_eq!(self.len(), other.len());
        DenseVector::from(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect::<Vec<_>>(),
        )
    }
}

impl From<Vec<f64>> for DenseVector {
    fn from(data: Vec<f64>) -> Self {
        Self { data }
    }
}

impl std::ops::Index<usize> for DenseVector {
    type Output = f64;

    #[inline]
    fn index(&self, i: usize) -> &f64 {
        &self.data[i]
    }
}

impl std::ops::IndexMut<usize> for DenseVector {
    #[inline]
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.data[i]
    }
}

/// LU factorization with partial pivoting, kept for repeated solves.
pub(crate) struct LuFactors {
    lu: DenseMatrix,
    piv: Vec<usize>,
}

impl LuFactors {
    pub(crate) fn factor(a: &DenseMatrix) -> Result<Self, LinalgError> {
        if !a.is_square() {
            return Err(LinalgError::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut piv: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut p = k;
            let mut max = lu[(k, k)].abs();
            for i in (k + 1)..n {
                let v = lu[(i, k)].abs();
                if v > max {
                    max = v;
                    p = i;
                }
            }
            if max < f64::MIN_POSITIVE {
                return Err(LinalgError::Singular);
            }
            if p != k {
                piv.swap(k, p);
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
            }
            let pivot = lu[(k, k)];
            for i in (k + 1)..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                for j in (k + 1)..n {
                    lu[(i, j)] -= factor * lu[(k, j)];
                }
            }
        }
        Ok(Self { lu, piv })
    }

    pub(crate) fn solve(&self, b: &DenseVector) -> Result<DenseVector, LinalgError> {
        let n = self.lu.rows();
        if b.len() != n {
            return Err(LinalgError::ShapeMismatch(format!(
                "matrix is {n}x{n} but right-hand side has length {}",
                b.len()
            )));
        }
        let mut x = vec![0.0; n];
        for i in 0..n {
            x[i] = b[self.piv[i]];
        }
        // forward substitution (unit lower triangle)
        for i in 1..n {
            for j in 0..i {
                x[i] -= self.lu[(i, j)] * x[j];
            }
        }
        // back substitution
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                x[i] -= self.lu[(i, j)] * x[j];
            }
            x[i] /= self.lu[(i, i)];
        }
        Ok(DenseVector::from(x))
    }
}

/// Solves `A·x = b` by LU decomposition with partial pivoting.
pub fn lu_solve(a: &DenseMatrix, b: &DenseVector) -> Result<DenseVector, LinalgError> {
    LuFactors::factor(a)?.solve(b)
}

/// [`lu_solve`] followed by one step of iterative refinement, which pushes
/// the residual back toward machine scale on moderately conditioned systems.
pub fn lu_solve_refined(a: &DenseMatrix, b: &DenseVector) -> Result<DenseVector, LinalgError> {
    let lu = LuFactors::factor(a)?;
    let x = lu.solve(b)?;
    let r = b.sub(&a.matvec(&x));
    let dx = lu.solve(&r)?;
    Ok(x.add(&dx))
}

/// Explicit inverse via LU; desk scale only.
pub fn inverse(a: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
    let lu = LuFactors::factor(a)?;
    let n = a.rows();
    let mut inv = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut e = DenseVector::zeros(n);
        e[j] = 1.0;
        let col = lu.solve(&e)?;
        for i in 0..n {
            inv[(i, j)] = col[i];
        }
    }
    Ok(inv)
}

/// 1-norm condition number `‖A‖₁·‖A⁻¹‖₁` through the explicit inverse;
/// returns infinity for singular input.
pub fn condition_number(a: &DenseMatrix) -> f64 {
    match inverse(a) {
        Ok(inv) => a.norm1() * inv.norm1(),
        Err(_) => f64::INFINITY,
    }
}

/// The `k = min(10, order)` largest-magnitude entries with their (row, col)
/// positions, sorted by descending magnitude; ties keep row-major order.
pub fn max_entry_report(a: &DenseMatrix) -> Vec<(usize, usize, f64)> {
    let mut entries: Vec<(usize, usize, f64)> = (0..a.rows())
        .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, a[(i, j)]))
        .collect();
    entries.sort_by(|x, y| {
        y.2.abs()
            .partial_cmp(&x.2.abs())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| (x.0, x.1).cmp(&(y.0, y.1)))
    });
    let k = 10.min(a.rows().min(a.cols()));
    entries.truncate(k);
    entries
}
