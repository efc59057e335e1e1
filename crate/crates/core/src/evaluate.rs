//! Determinants of concrete matrices, computed through a decomposition and
//! independently by Gaussian elimination.
//!
//! Tensor slot `s` acts on column `s`: the covector `Σ c_i e_i` pairs with
//! column `s` of `A` as `Σ c_i A[i][s]`.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::formulas::{Decomposition, LinearVector};

/// Seed for reproducible random test matrices.
pub const DEFAULT_SEED: u64 = 20_240_229;

/// Entries of random test matrices are drawn uniformly from this range.
pub const RANDOM_ENTRY_RANGE: std::ops::RangeInclusive<i64> = -9..=9;

/// A square matrix over a field, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    order: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::InvalidArgument(format!(
                    "matrix row has {} entries, expected {order}",
                    row.len()
                )));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch(field, x.field()));
                }
                entries.push(x);
            }
        }
        Ok(Matrix {
            order,
            field,
            entries,
        })
    }

    pub fn from_fn(order: usize, field: FieldSpec, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for i in 1..=order {
            for j in 1..=order {
                entries.push(f(i, j));
            }
        }
        Matrix {
            order,
            field,
            entries,
        }
    }

    pub fn identity(order: usize, field: FieldSpec) -> Self {
        Matrix::from_fn(order, field, |i, j| field.from_i64((i == j) as i64))
    }

    /// Integer entries drawn uniformly from [`RANDOM_ENTRY_RANGE`].
    pub fn random(order: usize, field: FieldSpec, rng: &mut impl Rng) -> Self {
        Matrix::from_fn(order, field, |_, _| field.from_i64(rng.random_range(RANDOM_ENTRY_RANGE)))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Entry at row `i`, column `j` (1-based).
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[(i - 1) * self.order + (j - 1)]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.entries[(i - 1) * self.order + (j - 1)]
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for i in 1..=self.order {
            let x = self.get(i, a).clone();
            *self.get_mut(i, a) = self.get(i, b).clone();
            *self.get_mut(i, b) = x;
        }
    }

    pub fn scale_column(&mut self, j: usize, s: &Scalar) {
        for i in 1..=self.order {
            *self.get_mut(i, j) *= s;
        }
    }

    /// Copies column `from` over column `to`.
    pub fn copy_column(&mut self, from: usize, to: usize) {
        for i in 1..=self.order {
            *self.get_mut(i, to) = self.get(i, from).clone();
        }
    }

    /// Reads the text format: a line with `n`, then `n` lines of `n`
    /// whitespace-separated scalars. Blank lines are ignored.
    pub fn parse(text: &str, field: FieldSpec) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first, header) = lines.next().ok_or_else(|| Error::parse(1, "empty matrix file"))?;
        let order: usize = header
            .parse()
            .map_err(|_| Error::parse(first, format!("expected matrix order, found `{header}`")))?;
        let mut rows = Vec::with_capacity(order);
        for (line, text) in lines {
            if rows.len() == order {
                return Err(Error::parse(line, "more rows than the declared order"));
            }
            let row = text
                .split_whitespace()
                .map(|tok| field.parse_scalar(tok).map_err(|e| Error::parse(line, e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != order {
                return Err(Error::parse(
                    line,
                    format!("row has {} entries, expected {order}", row.len()),
                ));
            }
            rows.push(row);
        }
        if rows.len() != order {
            return Err(Error::parse(
                text.lines().count().max(1),
                format!("found {} rows, expected {order}", rows.len()),
            ));
        }
        Matrix::from_rows(field, rows)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order)?;
        for row in self.entries.chunks(self.order.max(1)) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `count` seeded random matrices of order `n`.
pub fn random_matrices(n: usize, field: FieldSpec, count: usize, seed: u64) -> Vec<Matrix> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| Matrix::random(n, field, &mut rng)).collect()
}

fn check_shapes(d: &Decomposition, a: &Matrix) -> Result<()> {
    if d.order() != a.order() {
        return Err(Error::OrderMismatch {
            expected: d.order(),
            found: a.order(),
        });
    }
    if d.field() != a.field() {
        return Err(Error::FieldMismatch(d.field(), a.field()));
    }
    Ok(())
}

fn pair_with_column(v: &LinearVector, a: &Matrix, column: usize, mults: &mut u64) -> Scalar {
    let mut acc = a.field().zero();
    for (i, c) in v.iter() {
        let x = a.get(i, column);
        if c.is_one() {
            acc += x;
        } else if c.is_minus_one() {
            acc -= x;
        } else {
            *mults += 1;
            acc += &(c * x);
        }
    }
    acc
}

/// Evaluation that also reports how many scalar products it performed.
///
/// Counting rule: one product per factor coefficient other than ±1 when
/// pairing with a column, `n - 1` products to multiply the `n` pairings of
/// a term, and one more for a term coefficient other than ±1. Additions are
/// free.
pub fn eval_decomposition_counted(d: &Decomposition, a: &Matrix) -> Result<(Scalar, u64)> {
    check_shapes(d, a)?;
    let mut mults = 0u64;
    let mut total = d.field().zero();
    for term in d.terms() {
        let mut product: Option<Scalar> = None;
        for (s, v) in term.factors.iter().enumerate() {
            let value = pair_with_column(v, a, s + 1, &mut mults);
            product = Some(match product {
                None => value,
                Some(p) => {
                    mults += 1;
                    &p * &value
                }
            });
        }
        let product = product.unwrap_or_else(|| d.field().one());
        let value = if term.coeff.is_one() {
            product
        } else if term.coeff.is_minus_one() {
            -product
        } else {
            mults += 1;
            &term.coeff * &product
        };
        total += &value;
    }
    Ok((total, mults))
}

/// `Σ coeff · Π_s ⟨factor_s, column_s(A)⟩`.
pub fn eval_decomposition(d: &Decomposition, a: &Matrix) -> Result<Scalar> {
    eval_decomposition_counted(d, a).map(|(v, _)| v)
}

/// Products performed by [`eval_decomposition`], from the sparsity pattern
/// of `d` alone.
pub fn eval_count_mults(d: &Decomposition) -> u64 {
    d.terms()
        .iter()
        .map(|t| {
            let pairing: u64 = t
                .factors
                .iter()
                .flat_map(|v| v.iter())
                .filter(|(_, c)| !c.is_one() && !c.is_minus_one())
                .count() as u64;
            let chain = t.factors.len().saturating_sub(1) as u64;
            let coeff = u64::from(!t.coeff.is_one() && !t.coeff.is_minus_one());
            pairing + chain + coeff
        })
        .sum()
}

/// Determinant by exact Gaussian elimination, pivoting on the first nonzero
/// entry of each column.
pub fn det_oracle(a: &Matrix) -> Scalar {
    let n = a.order();
    let field = a.field();
    let mut rows: Vec<Vec<Scalar>> = (1..=n)
        .map(|i| (1..=n).map(|j| a.get(i, j).clone()).collect())
        .collect();
    let mut det = field.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return field.zero();
        };
        if pivot != col {
            rows.swap(pivot, col);
            det = -det;
        }
        let inv = rows[col][col].inv().expect("pivot is nonzero");
        det *= &rows[col][col];
        let (upper, lower) = rows.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &inv;
            for j in col..n {
                let delta = &factor * &pivot_row[j];
                row[j] -= &delta;
            }
        }
    }
    det
}
