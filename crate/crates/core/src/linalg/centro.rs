//! Centrosymmetric structure detection, the block preconditioner, and the
//! half-size split solve.
//!
//! On symmetrically spaced nodes the mirrored distances coincide,
//! `r_ij = r_{N+1-i,N+1-j}`, so radial kernel matrices are centrosymmetric
//! (`a_ij = a_{N+1-i,N+1-j}`) for even derivative orders and skew
//! centrosymmetric for odd orders. The transform pair
//!
//! ```text
//! P = [I -J]      Q = [ I  I]
//!     [J  I]          [-J  J]
//! ```
//!
//! (`J` the contra-identity) block-diagonalizes a centrosymmetric matrix:
//! `P·A·Q` has two half-size diagonal blocks and zero off-diagonal blocks,
//! which cuts the solve cost and splits the spectrum. For odd order the pair
//! is bordered with a middle row and column carrying a bare 1. Note
//! `P·Q = diag(2I, 2J)`, so the transform is a similarity only up to that
//! factor; the split solve compensates internally.

use crate::geometry::KnotSet;
use crate::kernels::KernelSpec;

use super::dense::{lu_solve, DenseMatrix, DenseVector, LinalgError};

/// Largest deviation from `a_ij = a_{N+1-i,N+1-j}`.
pub fn centrosymmetric_defect(a: &DenseMatrix) -> f64 {
    let n = a.rows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..a.cols() {
            worst = worst.max((a[(i, j)] - a[(n - 1 - i, a.cols() - 1 - j)]).abs());
        }
    }
    worst
}

/// Largest deviation from `a_ij = -a_{N+1-i,N+1-j}`.
pub fn skew_centrosymmetric_defect(a: &DenseMatrix) -> f64 {
    let n = a.rows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..a.cols() {
            worst = worst.max((a[(i, j)] + a[(n - 1 - i, a.cols() - 1 - j)]).abs());
        }
    }
    worst
}

pub fn is_centrosymmetric(a: &DenseMatrix, tol: f64) -> bool {
    a.is_square() && centrosymmetric_defect(a) <= tol
}

pub fn is_skew_centrosymmetric(a: &DenseMatrix, tol: f64) -> bool {
    a.is_square() && skew_centrosymmetric_defect(a) <= tol
}

/// The transform pair `(P, Q)` of order `n`, bordered when `n` is odd.
pub fn centro_transform_pair(n: usize) -> (DenseMatrix, DenseMatrix) {
    let m = n / 2;
    let mut p = DenseMatrix::zeros(n, n);
    let mut q = DenseMatrix::zeros(n, n);
    for i in 0..m {
        let lo = i;
        let hi = n - m + i;
        // P = [[I, -J], [J, I]], Q = [[I, I], [-J, J]]
        p[(lo, lo)] = 1.0;
        p[(lo, n - 1 - i)] = -1.0;
        p[(hi, hi)] = 1.0;
        p[(hi, m - 1 - i)] = 1.0;
        q[(lo, lo)] = 1.0;
        q[(lo, n - m + i)] = 1.0;
        q[(hi, m - 1 - i)] = -1.0;
        q[(hi, n - 1 - i)] = 1.0;
    }
    if !n.is_multiple_of(2) {
        p[(m, m)] = 1.0;
        q[(m, m)] = 1.0;
    }
    (p, q)
}

/// Applies the block preconditioner: `Â = P·A·Q`.
///
/// For centrosymmetric `A` the result is block diagonal; for general square
/// `A` it still concentrates the action into the diagonal blocks and tends to
/// reduce conditioning.
pub fn centro_precondition(a: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let (p, q) = centro_transform_pair(a.rows());
    Ok(p.matmul(a).matmul(&q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    EvenOrder,
    OddOrder,
}

/// The two diagonal blocks of `P·A·Q`; `block_plus` carries the extra middle
/// row and column when the order is odd.
#[derive(Debug, Clone)]
pub struct CentroSplit {
    pub block_minus: DenseMatrix,
    pub block_plus: DenseMatrix,
    pub parity: Parity,
}

/// Extracts the diagonal blocks of the preconditioned matrix.
pub fn centro_split(a: &DenseMatrix) -> Result<CentroSplit, LinalgError> {
    let ahat = centro_precondition(a)?;
    let n = a.rows();
    let m = n / 2;
    Ok(CentroSplit {
        block_minus: ahat.block(0, m, 0, m),
        block_plus: ahat.block(m, n, m, n),
        parity: if n.is_multiple_of(2) {
            Parity::EvenOrder
        } else {
            Parity::OddOrder
        },
    })
}

/// Solves `A·x = b` for centrosymmetric `A` through the two half-size
/// systems: factor `Â = P·A·Q`, solve the diagonal blocks against `P·b`, and
/// map back `x = Q·y`.
pub fn centro_split_solve(a: &DenseMatrix, b: &DenseVector) -> Result<DenseVector, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if b.len() != n {
        return Err(LinalgError::ShapeMismatch(format!(
            "matrix is {n}x{n} but right-hand side has length {}",
            b.len()
        )));
    }
    if !is_centrosymmetric(a, 1e-10) {
        return Err(LinalgError::NotCentrosymmetric);
    }
    let (p, q) = centro_transform_pair(n);
    let split = centro_split(a)?;
    let pb = p.matvec(b);
    let m = n / 2;
    let b_minus = DenseVector::from(pb.as_slice()[..m].to_vec());
    let b_plus = DenseVector::from(pb.as_slice()[m..].to_vec());
    let y_minus = lu_solve(&split.block_minus, &b_minus)?;
    let y_plus = lu_solve(&split.block_plus, &b_plus)?;
    let mut y = Vec::with_capacity(n);
    y.extend_from_slice(y_minus.as_slice());
    y.extend_from_slice(y_plus.as_slice());
    Ok(q.matvec(&DenseVector::from(y)))
}

/// Interpolation matrix of a radial kernel on a knot set:
/// entry `(i, j) = φ(‖x_i - x_j‖)`.
pub fn rbf_interpolation_matrix(
    kernel: &KernelSpec,
    knots: &KnotSet,
) -> Result<DenseMatrix, LinalgError> {
    if !kernel.is_radial() {
        return Err(LinalgError::UnsupportedKernel(format!("{kernel:?}")));
    }
    let n = knots.len();
    let mut a = DenseMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            let r = crate::distance::euclidean(knots.point(i), knots.point(j))
                .expect("knot set has a fixed dimension");
            a[(i, j)] = kernel
                .eval_radial(r)
                .map_err(|e| LinalgError::UnsupportedKernel(e.to_string()))?;
        }
    }
    Ok(a)
}

/// Multiquadric derivative kernel matrix on 1D knots: entry `(i, j)` is
/// `d^order/dx^order √((x - x_j)² + c²)` at `x = x_i`.
pub fn rbf_derivative_matrix(
    kernel: &KernelSpec,
    knots: &KnotSet,
    order: u32,
) -> Result<DenseMatrix, LinalgError> {
    let c = match kernel {
        KernelSpec::Mq { c } if *c > 0.0 => *c,
        other => return Err(LinalgError::UnsupportedKernel(format!("{other:?}"))),
    };
    if knots.dim() != 1 {
        return Err(LinalgError::KnotDimension(knots.dim()));
    }
    let n = knots.len();
    let entry = |d: f64| -> Result<f64, LinalgError> {
        let s2 = d * d + c * c;
        Ok(match order {
            0 => s2.sqrt(),
            1 => d / s2.sqrt(),
            2 => c * c / (s2 * s2.sqrt()),
            o => return Err(LinalgError::UnsupportedOrder(o)),
        })
    };
    let mut a = DenseMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            a[(i, j)] = entry(knots.scalar(i) - knots.scalar(j))?;
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::symmetric_grid_1d;
    use approx::assert_abs_diff_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn mat2(a: f64, b: f64, c: f64, d: f64) -> DenseMatrix {
        DenseMatrix::from_rows(&[&[a, b], &[c, d]])
    }

    #[test]
    fn structure_detection_small_cases() {
        assert!(is_centrosymmetric(&mat2(1.0, 2.0, 2.0, 1.0), 0.0));
        assert!(!is_centrosymmetric(&mat2(1.0, 2.0, 3.0, 1.0), 1e-12));
        assert!(is_skew_centrosymmetric(&mat2(0.0, 1.0, -1.0, 0.0), 0.0));
        assert!(!is_skew_centrosymmetric(&DenseMatrix::identity(3), 1e-12));
    }

    #[test]
    fn precondition_2x2_example() {
        // [[1,2],[2,1]] maps to [[-2,0],[0,6]] under P·A·Q
        let ahat = centro_precondition(&mat2(1.0, 2.0, 2.0, 1.0)).unwrap();
        assert_abs_diff_eq!(ahat[(0, 0)], -2.0);
        assert_abs_diff_eq!(ahat[(0, 1)], 0.0);
        assert_abs_diff_eq!(ahat[(1, 0)], 0.0);
        assert_abs_diff_eq!(ahat[(1, 1)], 6.0);

        // P·I·Q = P·Q = diag(2, 2) at order 2 (m = 1 makes J = I)
        let ihat = centro_precondition(&DenseMatrix::identity(2)).unwrap();
        assert_eq!(ihat, mat2(2.0, 0.0, 0.0, 2.0));
    }

    fn random_centrosymmetric(n: usize, rng: &mut StdRng) -> DenseMatrix {
        let raw = DenseMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        // (M + J·M·J)/2 is centrosymmetric by construction
        DenseMatrix::from_fn(n, n, |i, j| {
            0.5 * (raw[(i, j)] + raw[(n - 1 - i, n - 1 - j)])
        })
    }

    #[test]
    fn preconditioned_centro_matrix_is_block_diagonal() {
        let mut rng = StdRng::seed_from_u64(7);
        for n in [2usize, 3, 4, 5, 8, 9] {
            let a = random_centrosymmetric(n, &mut rng);
            let ahat = centro_precondition(&a).unwrap();
            let m = n / 2;
            for i in 0..m {
                for j in m..n {
                    assert!(ahat[(i, j)].abs() <= 1e-12, "n={n} upper block");
                    assert!(ahat[(j, i)].abs() <= 1e-12, "n={n} lower block");
                }
            }
        }
    }

    #[test]
    fn split_solve_trivial_cases() {
        // row sums: [[1,2],[2,1]]·(1,1) = (3,3)
        let x = centro_split_solve(
            &mat2(1.0, 2.0, 2.0, 1.0),
            &DenseVector::from(vec![3.0, 3.0]),
        )
        .unwrap();
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], 1.0, epsilon = 1e-12);

        let b = DenseVector::from(vec![0.5, -1.0, 2.0, 4.0]);
        let x = centro_split_solve(&DenseMatrix::identity(4), &b).unwrap();
        for i in 0..4 {
            assert_abs_diff_eq!(x[i], b[i], epsilon = 1e-12);
        }
    }

    #[test]
    fn split_solve_matches_lu_on_random_systems() {
        let mut rng = StdRng::seed_from_u64(99);
        for n in 2..=16 {
            let a = random_centrosymmetric(n, &mut rng);
            if condition_number_ok(&a) {
                let b =
                    DenseVector::from((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<_>>());
                let x_split = centro_split_solve(&a, &b).unwrap();
                let x_lu = lu_solve(&a, &b).unwrap();
                let scale = x_lu.norm_inf().max(1.0);
                let diff = x_split.sub(&x_lu).norm_inf();
                assert!(diff <= 1e-9 * scale, "n={n}, diff={diff}");
            }
        }
    }

    fn condition_number_ok(a: &DenseMatrix) -> bool {
        super::super::dense::condition_number(a) < 1e8
    }

    #[test]
    fn split_solve_rejects_general_matrices() {
        let a = mat2(1.0, 2.0, 3.0, 4.0);
        assert_eq!(
            centro_split_solve(&a, &DenseVector::from(vec![1.0, 1.0])),
            Err(LinalgError::NotCentrosymmetric)
        );
    }

    #[test]
    fn derivative_matrix_diagonals() {
        let mq = KernelSpec::Mq { c: 0.8 };
        let knots = symmetric_grid_1d(7, 0.0, 1.0).unwrap();
        let a0 = rbf_derivative_matrix(&mq, &knots, 0).unwrap();
        let a1 = rbf_derivative_matrix(&mq, &knots, 1).unwrap();
        for i in 0..7 {
            assert_abs_diff_eq!(a0[(i, i)], 0.8); // MQ at r = 0 is c
            assert_eq!(a1[(i, i)], 0.0); // odd derivative at the center
        }
        assert!(matches!(
            rbf_derivative_matrix(&mq, &knots, 3),
            Err(LinalgError::UnsupportedOrder(3))
        ));
        assert!(matches!(
            rbf_derivative_matrix(&KernelSpec::Helmholtz2D, &knots, 0),
            Err(LinalgError::UnsupportedKernel(_))
        ));
    }

    #[test]
    fn derivative_matrices_have_the_mirror_structures() {
        let mq = KernelSpec::Mq { c: 1.0 };
        for n in [7usize, 8, 12] {
            let knots = symmetric_grid_1d(n, 0.0, 1.0).unwrap();
            let a0 = rbf_derivative_matrix(&mq, &knots, 0).unwrap();
            let a1 = rbf_derivative_matrix(&mq, &knots, 1).unwrap();
            let a2 = rbf_derivative_matrix(&mq, &knots, 2).unwrap();
            assert!(is_centrosymmetric(&a0, 1e-12), "n={n} order 0");
            assert!(is_skew_centrosymmetric(&a1, 1e-12), "n={n} order 1");
            assert!(is_centrosymmetric(&a2, 1e-12), "n={n} order 2");
        }
    }

    #[test]
    fn radial_matrices_on_symmetric_knots_are_centrosymmetric() {
        let knots = symmetric_grid_1d(7, 0.0, 1.0).unwrap();
        for kernel in [
            KernelSpec::Mq { c: 1.0 },
            KernelSpec::Helmholtz2D,
            KernelSpec::PrewaveletTps { m: 1, c_j: 0.2 },
        ] {
            let a = rbf_interpolation_matrix(&kernel, &knots).unwrap();
            assert!(is_centrosymmetric(&a, 1e-12), "{kernel:?}");
        }
    }

    #[test]
    fn derivative_map_concentrates_in_edge_rows() {
        // The differentiation map B·A⁻¹ (derivative kernel matrix times
        // inverse interpolation matrix) puts its largest entries in the
        // outermost rows and middle columns, as in polynomial collocation.
        let mq = KernelSpec::Mq { c: 1.0 };
        let n = 12;
        let knots = symmetric_grid_1d(n, 0.0, 1.0).unwrap();
        let a0 = rbf_interpolation_matrix(&mq, &knots).unwrap();
        let a2 = rbf_derivative_matrix(&mq, &knots, 2).unwrap();
        let inv = super::super::dense::inverse(&a0).unwrap();
        let dmap = a2.matmul(&inv);
        let top = super::super::dense::max_entry_report(&dmap);
        let edge_rows = top
            .iter()
            .filter(|(i, _, _)| *i <= 1 || *i >= n - 2)
            .count();
        assert!(
            edge_rows * 2 >= top.len(),
            "only {edge_rows} of {} top entries in the edge rows",
            top.len()
        );
    }
}
