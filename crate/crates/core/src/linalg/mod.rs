//! Dense linear algebra plus the centrosymmetric machinery: structure
//! detection, the block preconditioner, and the half-size split solve.

mod centro;
mod dense;

pub use centro::{
    centro_precondition, centro_split, centro_split_solve, centro_transform_pair,
    centrosymmetric_defect, is_centrosymmetric, is_skew_centrosymmetric, rbf_derivative_matrix,
    rbf_interpolation_matrix, skew_centrosymmetric_defect, CentroSplit, Parity,
};
pub use dense::{
    condition_number, inverse, lu_solve, lu_solve_refined, max_entry_report, DenseMatrix,
    DenseVector, LinalgError,
};
