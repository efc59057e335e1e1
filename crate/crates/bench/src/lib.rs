//! Fixtures shared by the criterion benches.

use detdecomp_core::evaluate::random_matrices;
use detdecomp_core::{best_known, leibniz, Decomposition, FieldSpec, Matrix};

pub const FIELDS: [FieldSpec; 2] = [FieldSpec::Rationals, FieldSpec::PrimeField(7)];

/// `(label, decomposition)` pairs for order `n`: Leibniz and the shortest one.
pub fn decompositions(n: usize, field: FieldSpec) -> Vec<(&'static str, Decomposition)> {
    vec![
        ("leibniz", leibniz(n, field).expect("valid field")),
        ("best", best_known(n, field).expect("odd characteristic")),
    ]
}

pub fn sample_matrix(n: usize, field: FieldSpec) -> Matrix {
    random_matrices(n, field, 1, 1).pop().expect("one matrix")
}
