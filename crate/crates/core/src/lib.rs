//! Exact rank decompositions of the determinant tensor.
//!
//! `det_n` is the order-n tensor `Σ_σ sgn(σ) e_σ(1) ⊗ ... ⊗ e_σ(n)`. This
//! crate builds explicit decompositions of it as sums of decomposable
//! tensors, certifies them by exact expansion, evaluates them on matrices,
//! translates them into products and powers of linear forms, and reads and
//! writes them in a plain-text format.
//!
//! The shortest construction, [`best_known`], uses
//! `C_n = n! / 2^floor((n-2)/2)` terms over any field of characteristic
//! other than 2.

pub mod error;
pub mod evaluate;
pub mod field;
pub mod formulas;
pub mod io;
pub mod poly;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use evaluate::{det_oracle, eval_count_mults, eval_decomposition, Matrix};
pub use field::{field_validate, scalar_half, FieldSpec, Scalar};
pub use formulas::{
    best_known, derksen3, det4, enumerate_pair_indices, even_general, laplace_lift, leibniz,
    DecomposableTerm, Decomposition, Generator, LinearVector, PairIndex, Provenance,
};
pub use io::{read_decomposition, write_decomposition};
pub use poly::{chow_to_waring, expand_poly, poly_equal_det, to_chow, ChowDecomposition, Polynomial, WaringDecomposition};
pub use tensor::{leibniz_tensor, tensor_equal, MultiIndex, Permutation, SparseTensor};
pub use verify::{bell_number, expand, rank_bound_table, verify, VerificationReport};
