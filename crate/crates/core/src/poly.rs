//! Decompositions viewed as polynomials in the matrix entries `x[i,j]`.
//!
//! A factor `Σ c_i e_i` in tensor slot `s` becomes the linear form
//! `Σ c_i x[i,s]`, so a decomposition of `det_n` turns into a sum of
//! products of linear forms (a Chow decomposition) of the determinant
//! polynomial. Each product is then rewritten as a signed sum of `n`-th
//! powers by polarization.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::formulas::{write_signed, Decomposition};
use crate::tensor::{Permutation, SparseTensor};

/// The variable `x[row, column]`, both 1-based.
pub type Var = (usize, usize);

/// `Σ c x[i,j]` with no zero coefficients, ordered row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LinearForm {
    coeffs: BTreeMap<Var, Scalar>,
}

impl LinearForm {
    pub fn add(&mut self, var: Var, c: &Scalar) {
        let slot = self.coeffs.entry(var).or_insert_with(|| c.field().zero());
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&var);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &Scalar)> + '_ {
        self.coeffs.iter().map(|(&v, c)| (v, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        for (k, ((i, j), c)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write_signed(f, c, &format!("x[{i},{j}]"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowTerm {
    pub coeff: Scalar,
    pub forms: Vec<LinearForm>,
}

/// `Σ coeff · l_1 ⋯ l_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowDecomposition {
    pub order: usize,
    pub field: FieldSpec,
    pub terms: Vec<ChowTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaringSummand {
    pub coeff: Scalar,
    pub form: LinearForm,
    pub power: u32,
}

/// `Σ coeff · l^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaringDecomposition {
    pub order: usize,
    pub field: FieldSpec,
    pub summands: Vec<WaringSummand>,
}

/// Exponent vector over the `n²` variables, row-major. Ordered by lex
/// monomial order with `x[1,1] > x[1,2] > ... > x[n,n]`, largest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u8>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one(order: usize) -> Self {
        Monomial(vec![0; order * order])
    }

    fn bump(&mut self, order: usize, (i, j): Var, by: u8) {
        self.0[(i - 1) * order + (j - 1)] += by;
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exponent(&self, order: usize, (i, j): Var) -> u8 {
        self.0[(i - 1) * order + (j - 1)]
    }
}

/// A sparse polynomial in `x[1,1], ..., x[n,n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    order: usize,
    field: FieldSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(order: usize, field: FieldSpec) -> Self {
        Polynomial {
            order,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(|| c.field().zero());
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Adds `c · x[1,p(1)] ⋯ x[n,p(n)]`-style monomials given as variable lists.
    pub fn add_product(&mut self, vars: &[Var], c: &Scalar) {
        let mut m = Monomial::one(self.order);
        for &v in vars {
            m.bump(self.order, v, 1);
        }
        self.add_term(m, c);
    }
}

impl fmt::Display for Polynomial {
    /// One term per line: `coeff * x[1,1] * x[2,2]^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, c) in &self.terms {
            write!(f, "{c}")?;
            for (k, &e) in m.0.iter().enumerate() {
                let (i, j) = (k / self.order + 1, k % self.order + 1);
                match e {
                    0 => {}
                    1 => write!(f, " * x[{i},{j}]")?,
                    e => write!(f, " * x[{i},{j}]^{e}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for ChowDecomposition {
    /// One product per line: `coeff * (form) * (form) * ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            let mut line = t.coeff.to_string();
            for form in &t.forms {
                write!(line, " * ({form})")?;
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl fmt::Display for WaringDecomposition {
    /// One power per line: `coeff * (form)^n`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.summands {
            writeln!(f, "{} * ({})^{}", s.coeff, s.form, s.power)?;
        }
        Ok(())
    }
}

/// Term-by-term translation: slot `s` factor `Σ c_i e_i` becomes `Σ c_i x[i,s]`.
pub fn to_chow(d: &Decomposition) -> ChowDecomposition {
    let terms = d
        .terms()
        .iter()
        .map(|t| ChowTerm {
            coeff: t.coeff.clone(),
            forms: t
                .factors
                .iter()
                .enumerate()
                .map(|(s, v)| {
                    let mut form = LinearForm::default();
                    for (i, c) in v.iter() {
                        form.add((i, s + 1), c);
                    }
                    form
                })
                .collect(),
        })
        .collect();
    ChowDecomposition {
        order: d.order(),
        field: d.field(),
        terms,
    }
}

/// Distributes every product of linear forms into monomials.
pub fn expand_poly(c: &ChowDecomposition) -> Polynomial {
    let mut out = Polynomial::zero(c.order, c.field);
    for t in &c.terms {
        let supports: Vec<Vec<(Var, &Scalar)>> = t.forms.iter().map(|l| l.iter().collect()).collect();
        let mut partial = vec![(Monomial::one(c.order), t.coeff.clone())];
        for support in &supports {
            let mut next = Vec::with_capacity(partial.len() * support.len());
            for (m, v) in &partial {
                for &(var, a) in support {
                    let mut m = m.clone();
                    m.bump(c.order, var, 1);
                    next.push((m, v * a));
                }
            }
            partial = next;
        }
        for (m, v) in partial {
            out.add_term(m, &v);
        }
    }
    out
}

/// The polynomial read off a coordinate tensor: entry `v` at
/// `(a_1, ..., a_n)` contributes `v · x[a_1,1] ⋯ x[a_n,n]`.
pub fn tensor_to_poly(t: &SparseTensor) -> Polynomial {
    let n = t.order();
    let mut out = Polynomial::zero(n, t.field());
    for (idx, v) in t.iter() {
        let vars: Vec<Var> = idx.iter().enumerate().map(|(s, a)| (a, s + 1)).collect();
        out.add_product(&vars, v);
    }
    out
}

/// `Σ_σ sgn(σ) x[1,σ(1)] ⋯ x[n,σ(n)]`.
pub fn det_polynomial(n: usize, field: FieldSpec) -> Polynomial {
    let mut out = Polynomial::zero(n, field);
    for p in Permutation::all(n) {
        let vars: Vec<Var> = (1..=n).map(|i| (i, p.apply(i))).collect();
        out.add_product(&vars, &p.sign(field));
    }
    out
}

/// Whether `p` is exactly the `n × n` determinant polynomial.
pub fn poly_equal_det(p: &Polynomial, n: usize) -> bool {
    p.order == n && p.terms == det_polynomial(n, p.field).terms
}

/// Rewrites each product `l_1 ⋯ l_n` as
/// `(1 / (2^(n-1) n!)) Σ_ε (Π ε) (l_1 + ε_2 l_2 + ... + ε_n l_n)^n`
/// over the `2^(n-1)` sign vectors `ε ∈ {±1}^(n-1)`.
///
/// Needs `n!` invertible, so the characteristic must be 0 or exceed `n`.
pub fn chow_to_waring(c: &ChowDecomposition) -> Result<WaringDecomposition> {
    let n = c.order;
    let p = c.field.characteristic();
    if p != 0 && p <= n as u64 {
        return Err(Error::CharTooSmall { field: c.field, n });
    }
    let factorial: BigInt = (1..=n as u64).map(BigInt::from).product();
    let denom = c.field.from_bigint(&(factorial << (n - 1)));
    let scale = denom.inv()?;
    let mut summands = Vec::with_capacity(c.terms.len() << (n - 1));
    for t in &c.terms {
        let base = &t.coeff * &scale;
        for mask in 0u64..(1 << (n - 1)) {
            let mut form = LinearForm::default();
            let mut negative = false;
            for (s, l) in t.forms.iter().enumerate() {
                let minus = s > 0 && mask >> (s - 1) & 1 == 1;
                negative ^= minus;
                for (var, a) in l.iter() {
                    if minus {
                        form.add(var, &-a);
                    } else {
                        form.add(var, a);
                    }
                }
            }
            summands.push(WaringSummand {
                coeff: if negative { -&base } else { base.clone() },
                form,
                power: n as u32,
            });
        }
    }
    Ok(WaringDecomposition {
        order: n,
        field: c.field,
        summands,
    })
}

impl WaringDecomposition {
    /// Expands every power with multinomial coefficients.
    pub fn expand(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.order, self.field);
        for s in &self.summands {
            let support: Vec<(Var, &Scalar)> = s.form.iter().collect();
            let mut exps = vec![0u8; support.len()];
            multinomial_terms(&support, s.power, 0, &mut exps, &mut |exps| {
                let mut coeff = &s.coeff * &self.field.from_bigint(&multinomial(s.power, exps));
                let mut m = Monomial::one(self.order);
                for (&(var, a), &e) in support.iter().zip(exps) {
                    if e > 0 {
                        coeff *= &a.pow(e as u32);
                        m.bump(self.order, var, e);
                    }
                }
                out.add_term(m, &coeff);
            });
        }
        out
    }
}

/// Calls `emit` once per exponent vector of length `support.len()` summing to `remaining`.
fn multinomial_terms(
    support: &[(Var, &Scalar)],
    remaining: u32,
    pos: usize,
    exps: &mut Vec<u8>,
    emit: &mut impl FnMut(&[u8]),
) {
    if pos + 1 == support.len() {
        exps[pos] = remaining as u8;
        emit(exps);
        return;
    }
    if pos == support.len() {
        if remaining == 0 {
            emit(exps);
        }
        return;
    }
    for e in 0..=remaining {
        exps[pos] = e as u8;
        multinomial_terms(support, remaining - e, pos + 1, exps, emit);
    }
}

/// `d! / Π k_i!`.
fn multinomial(d: u32, exps: &[u8]) -> BigInt {
    let fact = |k: u32| -> BigInt { (1..=k as u64).map(BigInt::from).product::<BigInt>().max(BigInt::one()) };
    exps.iter().fold(fact(d), |acc, &k| acc / fact(k as u32))
}
