//! Shared oracle machinery for the integration tests: extended-precision
//! Bessel series, a Jacobi eigensolver for small symmetric matrices, and
//! random centrosymmetric matrix generators. Everything here is independent
//! of the library's own evaluation paths.
#![allow(dead_code)]

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive};
use rand::rngs::StdRng;
use rand::Rng;

use rbfkit::linalg::DenseMatrix;

/// `J0(x)` from the defining series in exact rational arithmetic. The only
/// rounding is the final conversion to f64; terms are added until they fall
/// below 1e-25 past the series peak.
pub fn j0_oracle(x: f64) -> f64 {
    bessel_series_oracle(x, true)
}

/// `I0(x)` from the defining series in exact rational arithmetic.
pub fn i0_oracle(x: f64) -> f64 {
    bessel_series_oracle(x, false)
}

fn bessel_series_oracle(x: f64, alternating: bool) -> f64 {
    let x = BigRational::from_float(x).expect("finite argument");
    let q = &x * &x / BigRational::from_integer(BigInt::from(4));
    let q_f64 = q.to_f64().unwrap();
    let peak = q_f64.sqrt().ceil() as usize + 1;
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for m in 1..400 {
        term = &term * &q / BigRational::from_integer(BigInt::from((m * m) as u64));
        if alternating && m % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        if m > peak && term.abs().to_f64().unwrap_or(0.0) < 1e-25 {
            break;
        }
    }
    sum.to_f64().unwrap()
}

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
#[allow(clippy::needless_range_loop)]
pub fn jacobi_eigenvalues(a: &DenseMatrix) -> Vec<f64> {
    assert!(a.is_square());
    let n = a.rows();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| a[(i, j)]).collect())
        .collect();
    for _sweep in 0..200 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m[i][j] * m[i][j];
            }
        }
        if off.sqrt() < 1e-13 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    1.0 / (theta - (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    (0..n).map(|i| m[i][i]).collect()
}

/// Random centrosymmetric matrix `(M + J·M·J)/2`.
pub fn random_centrosymmetric(n: usize, rng: &mut StdRng) -> DenseMatrix {
    let raw = DenseMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    DenseMatrix::from_fn(n, n, |i, j| {
        0.5 * (raw[(i, j)] + raw[(n - 1 - i, n - 1 - j)])
    })
}

/// Random symmetric positive-definite centrosymmetric matrix `CᵀC + I/10`.
pub fn random_spd_centrosymmetric(n: usize, rng: &mut StdRng) -> DenseMatrix {
    let c = random_centrosymmetric(n, rng);
    let ct = DenseMatrix::from_fn(n, n, |i, j| c[(j, i)]);
    let ctc = ct.matmul(&c);
    DenseMatrix::from_fn(n, n, |i, j| ctc[(i, j)] + if i == j { 0.1 } else { 0.0 })
}
