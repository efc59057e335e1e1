//! Decompositions of `det_n` as sums of decomposable tensors, and the
//! generators that build them.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{field_validate, scalar_half, FieldSpec, Scalar};
use crate::tensor::Permutation;

/// A covector `Σ c_i e_i`, stored sparsely with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearVector {
    coeffs: BTreeMap<usize, Scalar>,
}

impl LinearVector {
    pub fn zero() -> Self {
        LinearVector {
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis covector `e_i`.
    pub fn basis(field: FieldSpec, i: usize) -> Self {
        LinearVector::from_terms([(i, field.one())])
    }

    /// `e_i + e_j` (`plus`) or `e_i - e_j`.
    pub fn pair(field: FieldSpec, i: usize, j: usize, plus: bool) -> Self {
        let c = if plus { field.one() } else { field.from_i64(-1) };
        LinearVector::from_terms([(i, field.one()), (j, c)])
    }

    /// Sums repeated indices and drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = LinearVector::zero();
        for (i, c) in terms {
            v.add(i, &c);
        }
        v
    }

    pub fn add(&mut self, i: usize, c: &Scalar) {
        let slot = self.coeffs.entry(i).or_insert_with(|| c.field().zero());
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn coeff(&self, i: usize) -> Option<&Scalar> {
        self.coeffs.get(&i)
    }

    /// Nonzero `(index, coefficient)` pairs in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn relabel(&self, f: impl Fn(usize) -> usize) -> Self {
        LinearVector {
            coeffs: self.coeffs.iter().map(|(&i, c)| (f(i), c.clone())).collect(),
        }
    }
}

impl fmt::Display for LinearVector {
    /// `+e1 -e3 +2*e4`; the zero covector prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (i, c)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write_signed(f, c, &format!("e{i}"))?;
        }
        Ok(())
    }
}

/// Writes `+name`, `-name`, `+c*name` or `-c*name`.
pub(crate) fn write_signed(f: &mut impl fmt::Write, c: &Scalar, name: &str) -> fmt::Result {
    if c.is_one() {
        write!(f, "+{name}")
    } else if c.is_minus_one() {
        write!(f, "-{name}")
    } else if c.is_negative() {
        write!(f, "-{}*{name}", -c)
    } else {
        write!(f, "+{c}*{name}")
    }
}

/// `coeff · v_1 ⊗ ... ⊗ v_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecomposableTerm {
    pub coeff: Scalar,
    pub factors: Vec<LinearVector>,
}

impl DecomposableTerm {
    pub fn new(coeff: Scalar, factors: Vec<LinearVector>) -> Self {
        DecomposableTerm { coeff, factors }
    }
}

/// The generator that produced a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Leibniz,
    Derksen3,
    Det4,
    EvenGeneral,
    LaplaceLift,
}

impl Generator {
    pub fn tag(self) -> &'static str {
        match self {
            Generator::Leibniz => "leibniz",
            Generator::Derksen3 => "derksen3",
            Generator::Det4 => "det4",
            Generator::EvenGeneral => "even",
            Generator::LaplaceLift => "lift",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Some(match tag {
            "leibniz" => Generator::Leibniz,
            "derksen3" => Generator::Derksen3,
            "det4" => Generator::Det4,
            "even" => Generator::EvenGeneral,
            "lift" => Generator::LaplaceLift,
            _ => return None,
        })
    }
}

/// Where a decomposition came from. Decompositions read back from disk keep
/// the generator named in their header, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Generated(Generator),
    File(Option<Generator>),
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::Generated(g) | Provenance::File(Some(g)) => g.tag(),
            Provenance::File(None) => "file",
        }
    }
}

/// A sum of decomposable terms claimed to equal `det_n`.
///
/// Equality compares order, field and the ordered term list; provenance is
/// metadata and is ignored.
#[derive(Debug, Clone)]
pub struct Decomposition {
    order: usize,
    field: FieldSpec,
    terms: Vec<DecomposableTerm>,
    provenance: Provenance,
}

impl PartialEq for Decomposition {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.field == other.field && self.terms == other.terms
    }
}

impl Eq for Decomposition {}

impl Decomposition {
    /// Checks every term: `order` factors, nonzero coefficient, basis
    /// indices in `[1, order]`, and all scalars in `field`.
    pub fn new(
        order: usize,
        field: FieldSpec,
        terms: Vec<DecomposableTerm>,
        provenance: Provenance,
    ) -> Result<Self> {
        if order == 0 || order > u8::MAX as usize {
            return Err(Error::InvalidArgument(format!("unsupported order {order}")));
        }
        field.check()?;
        for t in &terms {
            if t.factors.len() != order {
                return Err(Error::OrderMismatch {
                    expected: order,
                    found: t.factors.len(),
                });
            }
            if t.coeff.field() != field {
                return Err(Error::FieldMismatch(field, t.coeff.field()));
            }
            if t.coeff.is_zero() {
                return Err(Error::InvalidArgument("term with zero coefficient".into()));
            }
            for v in &t.factors {
                for (i, c) in v.iter() {
                    if i == 0 || i > order {
                        return Err(Error::IndexOutOfRange {
                            index: vec![i],
                            order,
                        });
                    }
                    if c.field() != field {
                        return Err(Error::FieldMismatch(field, c.field()));
                    }
                }
            }
        }
        Ok(Decomposition {
            order,
            field,
            terms,
            provenance,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &[DecomposableTerm] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn into_terms(self) -> Vec<DecomposableTerm> {
        self.terms
    }

    /// The formal sum of two decompositions of the same shape.
    pub fn concat(&self, other: &Decomposition) -> Result<Decomposition> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                expected: self.order,
                found: other.order,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Decomposition {
            terms,
            ..self.clone()
        })
    }
}

/// `(i_1, j_1), ..., (i_k, j_k)`: disjoint pairs covering `[1, 2k]` with
/// `i_p < j_p`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairIndex {
    pairs: Vec<(usize, usize)>,
}

impl PairIndex {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let n = 2 * pairs.len();
        let mut seen = vec![false; n + 1];
        for &(i, j) in &pairs {
            let ok = i < j && i >= 1 && j <= n && !seen[i] && !seen[j];
            if !ok {
                return Err(Error::InvalidArgument(format!("not a pair index: {pairs:?}")));
            }
            seen[i] = true;
            seen[j] = true;
        }
        Ok(PairIndex { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `(i_1, j_1, ..., i_k, j_k)`.
    pub fn flattened(&self) -> Vec<usize> {
        self.pairs.iter().flat_map(|&(i, j)| [i, j]).collect()
    }

    /// Sign of the permutation with bottom row [`Self::flattened`].
    pub fn sign(&self, field: FieldSpec) -> Scalar {
        Permutation::new(self.flattened())
            .expect("pair index is a permutation")
            .sign(field)
    }
}

/// All pair indices on `[1, 2k]` in lexicographic order of the flattened
/// tuple. There are `(2k)! / 2^k` of them.
pub fn enumerate_pair_indices(k: usize) -> Vec<PairIndex> {
    fn extend(used: &mut [bool], current: &mut Vec<(usize, usize)>, out: &mut Vec<PairIndex>) {
        let n = used.len() - 1;
        if 2 * current.len() == n {
            out.push(PairIndex {
                pairs: current.clone(),
            });
            return;
        }
        for i in 1..=n {
            if used[i] {
                continue;
            }
            used[i] = true;
            for j in i + 1..=n {
                if used[j] {
                    continue;
                }
                used[j] = true;
                current.push((i, j));
                extend(used, current, out);
                current.pop();
                used[j] = false;
            }
            used[i] = false;
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    extend(&mut vec![false; 2 * k + 1], &mut Vec::with_capacity(k), &mut out);
    out
}

/// `Σ_σ sgn(σ) e_σ(1) ⊗ ... ⊗ e_σ(n)`, one term per permutation in
/// lexicographic order. Works in every field, including characteristic 2.
pub fn leibniz(n: usize, field: FieldSpec) -> Result<Decomposition> {
    field.check()?;
    if n == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let terms = Permutation::all(n)
        .map(|p| {
            let factors = p.images().iter().map(|&a| LinearVector::basis(field, a)).collect();
            DecomposableTerm::new(p.sign(field), factors)
        })
        .collect();
    Decomposition::new(n, field, terms, Provenance::Generated(Generator::Leibniz))
}

/// The even-order formula for `det_{2k}`.
///
/// For each pair index, a difference-block term
/// `½ S (e_i1 - e_j1) ⊗ ... ⊗ (e_ik - e_jk) ⊗ (e_ik + e_jk) ⊗ ... ⊗ (e_i1 + e_j1)`
/// and the matching sum-block term with the signs of the pairs swapped and
/// coefficient `½ (-1)^k S`, where `S` is the sign of `(i_1, j_1, ..., i_k, j_k)`.
/// All difference-block terms come first.
pub fn even_general(k: usize, field: FieldSpec) -> Result<Decomposition> {
    let half = scalar_half(field)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let indices = enumerate_pair_indices(k);
    let mirrored = |idx: &PairIndex, outer_plus: bool| -> Vec<LinearVector> {
        let pairs = idx.pairs();
        let front = pairs
            .iter()
            .map(|&(i, j)| LinearVector::pair(field, i, j, outer_plus));
        let back = pairs
            .iter()
            .rev()
            .map(|&(i, j)| LinearVector::pair(field, i, j, !outer_plus));
        front.chain(back).collect()
    };
    let parity = if k.is_multiple_of(2) { field.one() } else { field.from_i64(-1) };
    let mut terms = Vec::with_capacity(2 * indices.len());
    for idx in &indices {
        terms.push(DecomposableTerm::new(&half * idx.sign(field), mirrored(idx, false)));
    }
    for idx in &indices {
        let coeff = &half * &parity * idx.sign(field);
        terms.push(DecomposableTerm::new(coeff, mirrored(idx, true)));
    }
    Decomposition::new(2 * k, field, terms, Provenance::Generated(Generator::EvenGeneral))
}

/// Parses `"a"`, `"a+b"` or `"a-b"` into a covector.
fn covector(field: FieldSpec, spec: &str) -> LinearVector {
    let parse = |s: &str| s.parse::<usize>().expect("hardcoded index");
    if let Some((a, b)) = spec.split_once('+') {
        LinearVector::pair(field, parse(a), parse(b), true)
    } else if let Some((a, b)) = spec.split_once('-') {
        LinearVector::pair(field, parse(a), parse(b), false)
    } else {
        LinearVector::basis(field, parse(spec))
    }
}

fn hardcoded<const N: usize>(
    field: FieldSpec,
    rows: &[(i64, [&str; N])],
    generator: Generator,
) -> Result<Decomposition> {
    let half = scalar_half(field)?;
    let terms = rows
        .iter()
        .map(|(c, factors)| {
            DecomposableTerm::new(
                &half * field.from_i64(*c),
                factors.iter().map(|s| covector(field, s)).collect(),
            )
        })
        .collect();
    Decomposition::new(N, field, terms, Provenance::Generated(generator))
}

/// Derksen's five-term decomposition of `det_3`, with the overall ½ folded
/// into each coefficient.
pub fn derksen3(field: FieldSpec) -> Result<Decomposition> {
    const ROWS: [(i64, [&str; 3]); 5] = [
        (1, ["3+2", "1-2", "1+2"]),
        (1, ["1+2", "2-3", "2+3"]),
        (2, ["2", "3-1", "3+1"]),
        (1, ["3-2", "2+1", "2-1"]),
        (1, ["1-2", "3+2", "3-2"]),
    ];
    hardcoded(field, &ROWS, Generator::Derksen3)
}

/// The twelve-term decomposition of `det_4`, transcribed term by term
/// (independently of [`even_general`]).
pub fn det4(field: FieldSpec) -> Result<Decomposition> {
    const ROWS: [(i64, [&str; 4]); 12] = [
        (1, ["1-2", "3-4", "3+4", "1+2"]),
        (-1, ["1-3", "2-4", "2+4", "1+3"]),
        (1, ["1-4", "2-3", "2+3", "1+4"]),
        (1, ["2-3", "1-4", "1+4", "2+3"]),
        (-1, ["2-4", "1-3", "1+3", "2+4"]),
        (1, ["3-4", "1-2", "1+2", "3+4"]),
        (1, ["1+2", "3+4", "3-4", "1-2"]),
        (-1, ["1+3", "2+4", "2-4", "1-3"]),
        (1, ["1+4", "2+3", "2-3", "1-4"]),
        (1, ["2+3", "1+4", "1-4", "2-3"]),
        (-1, ["2+4", "1+3", "1-3", "2-4"]),
        (1, ["3+4", "1+2", "1-2", "3-4"]),
    ];
    hardcoded(field, &ROWS, Generator::Det4)
}

/// Cofactor expansion along the first tensor slot: turns a decomposition of
/// `det_{n-1}` into one of `det_n` with `n` times as many terms.
///
/// For row `i`, each source term gets `e_i` prepended, its coefficient
/// multiplied by `(-1)^(i+1)`, and its basis indices relabelled onto
/// `[1, n] \ {i}` in increasing order.
pub fn laplace_lift(d: &Decomposition) -> Result<Decomposition> {
    let n = d.order() + 1;
    let field = d.field();
    let mut terms = Vec::with_capacity(n * d.term_count());
    for i in 1..=n {
        let sign = field.from_i64(if i % 2 == 1 { 1 } else { -1 });
        let skip = |m: usize| if m < i { m } else { m + 1 };
        for t in d.terms() {
            let mut factors = Vec::with_capacity(n);
            factors.push(LinearVector::basis(field, i));
            factors.extend(t.factors.iter().map(|v| v.relabel(skip)));
            terms.push(DecomposableTerm::new(&sign * &t.coeff, factors));
        }
    }
    Decomposition::new(n, field, terms, Provenance::Generated(Generator::LaplaceLift))
}

/// The shortest decomposition available here: the even formula for even
/// `n`, its Laplace lift for odd `n >= 3`, and `e_1` for `n = 1`.
pub fn best_known(n: usize, field: FieldSpec) -> Result<Decomposition> {
    field_validate(field)?;
    match n {
        0 => Err(Error::InvalidArgument("order must be at least 1".into())),
        1 => leibniz(1, field),
        n if n % 2 == 0 => even_general(n / 2, field),
        n => laplace_lift(&best_known(n - 1, field)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn leibniz_small_cases() {
        let d2 = leibniz(2, Q).unwrap();
        assert_eq!(d2.term_count(), 2);
        assert_eq!(d2.terms()[0].coeff, Q.one());
        assert_eq!(d2.terms()[0].factors, vec![LinearVector::basis(Q, 1), LinearVector::basis(Q, 2)]);
        assert_eq!(d2.terms()[1].coeff, Q.from_i64(-1));
        assert_eq!(d2.terms()[1].factors, vec![LinearVector::basis(Q, 2), LinearVector::basis(Q, 1)]);

        let d1 = leibniz(1, Q).unwrap();
        assert_eq!(d1.term_count(), 1);
        assert_eq!(d1.terms()[0].factors, vec![LinearVector::basis(Q, 1)]);

        let d4 = leibniz(4, Q).unwrap();
        assert_eq!(d4.term_count(), 24);
        assert!(d4.terms().iter().all(|t| t.coeff.is_one() || t.coeff.is_minus_one()));
        let odd = d4.terms().iter().filter(|t| t.coeff.is_minus_one()).count();
        assert_eq!(odd, 12);

        assert!(leibniz(3, FieldSpec::PrimeField(2)).is_ok());
        assert!(leibniz(0, Q).is_err());
        assert_eq!(leibniz(3, FieldSpec::PrimeField(4)).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn pair_index_examples() {
        let flat = |k| -> Vec<Vec<usize>> {
            enumerate_pair_indices(k).iter().map(|p| p.flattened()).collect()
        };
        assert_eq!(flat(1), vec![vec![1, 2]]);
        assert_eq!(
            flat(2),
            vec![
                vec![1, 2, 3, 4],
                vec![1, 3, 2, 4],
                vec![1, 4, 2, 3],
                vec![2, 3, 1, 4],
                vec![2, 4, 1, 3],
                vec![3, 4, 1, 2],
            ]
        );
        assert_eq!(enumerate_pair_indices(3).len(), 90);
        assert!(enumerate_pair_indices(0).is_empty());
    }

    /// Independent count: choose any ordered sequence of 2k distinct values
    /// and keep those with i_p < j_p.
    #[test]
    fn pair_index_counts_match_brute_force() {
        for k in 1..=4 {
            let n = 2 * k;
            let brute = Permutation::all(n)
                .filter(|p| p.images().chunks(2).all(|c| c[0] < c[1]))
                .count();
            let listed = enumerate_pair_indices(k);
            assert_eq!(listed.len(), brute);
            assert_eq!(listed.len(), factorial(n) >> k);
            assert!(listed.windows(2).all(|w| w[0].flattened() < w[1].flattened()));
            for p in &listed {
                assert_eq!(PairIndex::new(p.pairs().to_vec()).as_ref(), Ok(p));
            }
        }
    }

    #[test]
    fn pair_index_rejects_bad_input() {
        assert!(PairIndex::new(vec![(2, 1)]).is_err());
        assert!(PairIndex::new(vec![(1, 2), (2, 3)]).is_err());
        assert!(PairIndex::new(vec![(1, 5), (2, 3)]).is_err());
    }

    #[test]
    fn even_general_k1_shape() {
        let d = even_general(1, Q).unwrap();
        let half = scalar_half(Q).unwrap();
        assert_eq!(d.term_count(), 2);
        assert_eq!(d.terms()[0].coeff, half);
        assert_eq!(
            d.terms()[0].factors,
            vec![LinearVector::pair(Q, 1, 2, false), LinearVector::pair(Q, 1, 2, true)]
        );
        assert_eq!(d.terms()[1].coeff, -&half);
        assert_eq!(
            d.terms()[1].factors,
            vec![LinearVector::pair(Q, 1, 2, true), LinearVector::pair(Q, 1, 2, false)]
        );
    }

    #[test]
    fn even_general_counts() {
        for k in 1..=4 {
            let d = even_general(k, Q).unwrap();
            assert_eq!(d.term_count(), factorial(2 * k) >> (k - 1));
            assert_eq!(d.provenance(), Provenance::Generated(Generator::EvenGeneral));
        }
        assert_eq!(even_general(3, Q).unwrap().term_count(), 180);
    }

    #[test]
    fn even_general_k2_reproduces_hardcoded_rows_in_order() {
        assert_eq!(even_general(2, Q).unwrap(), det4(Q).unwrap());
    }

    #[test]
    fn derksen3_third_term() {
        let d = derksen3(Q).unwrap();
        assert_eq!(d.term_count(), 5);
        let t = &d.terms()[2];
        assert_eq!(t.coeff, Q.one());
        assert_eq!(t.factors[0], LinearVector::basis(Q, 2));
        assert_eq!(t.factors[1].to_string(), "-e1 +e3");
        assert_eq!(t.factors[2].to_string(), "+e1 +e3");
    }

    #[test]
    fn half_requires_odd_characteristic() {
        let f2 = FieldSpec::PrimeField(2);
        for result in [
            derksen3(f2),
            det4(f2),
            even_general(1, f2),
            even_general(2, f2),
            best_known(4, f2),
            best_known(5, f2),
        ] {
            assert_eq!(result.unwrap_err(), Error::CharTwo(f2));
        }
    }

    #[test]
    fn laplace_lift_counts_and_shape() {
        let lifted = laplace_lift(&leibniz(1, Q).unwrap()).unwrap();
        assert_eq!(lifted.term_count(), 2);
        assert_eq!(lifted, leibniz(2, Q).unwrap());

        let d5 = laplace_lift(&even_general(2, Q).unwrap()).unwrap();
        assert_eq!(d5.term_count(), 60);
        assert_eq!(d5.order(), 5);
        // row 2 block: e_2 first, coefficient negated, indices skip 2
        let t = &d5.terms()[12];
        assert_eq!(t.factors[0], LinearVector::basis(Q, 2));
        assert_eq!(t.coeff, -&even_general(2, Q).unwrap().terms()[0].coeff);
        assert_eq!(t.factors[1].to_string(), "+e1 -e3");
        assert_eq!(laplace_lift(&derksen3(Q).unwrap()).unwrap().term_count(), 20);
    }

    #[test]
    fn best_known_counts() {
        let expected = [(1, 1), (2, 2), (3, 6), (4, 12), (5, 60), (6, 180), (7, 1260), (8, 5040)];
        for (n, c) in expected {
            assert_eq!(best_known(n, Q).unwrap().term_count(), c, "n = {n}");
        }
        for n in 2..=8 {
            let c = factorial(n) >> ((n - 2) / 2);
            assert_eq!(best_known(n, Q).unwrap().term_count(), c);
        }
    }

    #[test]
    fn decomposition_validation() {
        let bad_order = Decomposition::new(
            2,
            Q,
            vec![DecomposableTerm::new(Q.one(), vec![LinearVector::basis(Q, 1)])],
            Provenance::File(None),
        );
        assert!(matches!(bad_order, Err(Error::OrderMismatch { .. })));
        let bad_index = Decomposition::new(
            1,
            Q,
            vec![DecomposableTerm::new(Q.one(), vec![LinearVector::basis(Q, 2)])],
            Provenance::File(None),
        );
        assert!(matches!(bad_index, Err(Error::IndexOutOfRange { .. })));
        let bad_field = Decomposition::new(
            1,
            Q,
            vec![DecomposableTerm::new(FieldSpec::PrimeField(3).one(), vec![LinearVector::basis(Q, 1)])],
            Provenance::File(None),
        );
        assert!(matches!(bad_field, Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn linear_vector_cancels() {
        let mut v = LinearVector::pair(Q, 1, 2, true);
        v.add(2, &Q.from_i64(-1));
        assert_eq!(v, LinearVector::basis(Q, 1));
        v.add(1, &Q.from_i64(-1));
        assert!(v.is_zero());
        assert_eq!(v.to_string(), "0");
        let w = LinearVector::from_terms([(3, Q.from_i64(2)), (1, Q.parse_scalar("-1/2").unwrap())]);
        assert_eq!(w.to_string(), "-1/2*e1 +2*e3");
    }
}
