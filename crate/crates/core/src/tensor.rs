//! Sparse coordinate tensors, multi-indices and permutations.
//!
//! All indices are 1-based.

use std::collections::btree_map::{self, BTreeMap, Entry};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A position `(a_1, ..., a_n)` in an order-n tensor over an n-dimensional
/// space. Ordering is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    pub fn new(entries: &[usize], order: usize) -> Result<Self> {
        let out_of_range = || Error::IndexOutOfRange {
            index: entries.to_vec(),
            order,
        };
        if entries.len() != order || order > u8::MAX as usize {
            return Err(out_of_range());
        }
        entries
            .iter()
            .map(|&e| {
                if (1..=order).contains(&e) {
                    Ok(e as u8)
                } else {
                    Err(out_of_range())
                }
            })
            .collect::<Result<Vec<u8>>>()
            .map(MultiIndex)
    }

    /// Callers guarantee every entry lies in `[1, len]`.
    pub(crate) fn from_raw(entries: Vec<u8>) -> Self {
        MultiIndex(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, slot: usize) -> usize {
        self.0[slot] as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&e| e as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// An exact tensor stored as a map from multi-index to nonzero scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseTensor {
    order: usize,
    field: FieldSpec,
    entries: BTreeMap<MultiIndex, Scalar>,
}

impl SparseTensor {
    pub fn new(order: usize, field: FieldSpec) -> Self {
        SparseTensor {
            order,
            field,
            entries: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, idx: &MultiIndex) -> Option<&Scalar> {
        self.entries.get(idx)
    }

    /// Entries in lexicographic order of their multi-index.
    pub fn iter(&self) -> btree_map::Iter<'_, MultiIndex, Scalar> {
        self.entries.iter()
    }

    /// Adds `c` at `idx`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, idx: MultiIndex, c: &Scalar) -> Result<()> {
        if idx.len() != self.order || idx.iter().any(|e| e == 0 || e > self.order) {
            return Err(Error::IndexOutOfRange {
                index: idx.to_vec(),
                order: self.order,
            });
        }
        if c.field() != self.field {
            return Err(Error::FieldMismatch(self.field, c.field()));
        }
        self.accumulate(idx, c);
        Ok(())
    }

    pub(crate) fn accumulate(&mut self, idx: MultiIndex, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds every entry of `other` into `self`. The merge is commutative and
    /// associative, so partial tensors can be combined in any order.
    pub fn merge(&mut self, other: SparseTensor) -> Result<()> {
        self.check_compatible(&other)?;
        if self.entries.len() < other.entries.len() {
            let mine = std::mem::replace(&mut self.entries, other.entries);
            for (idx, c) in mine {
                self.accumulate(idx, &c);
            }
        } else {
            for (idx, c) in other.entries {
                self.accumulate(idx, &c);
            }
        }
        Ok(())
    }

    fn check_compatible(&self, other: &SparseTensor) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                expected: self.order,
                found: other.order,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// The lexicographically smallest index where the tensors differ, with
    /// `self`'s value first. Missing entries read as zero.
    pub fn first_difference(&self, other: &SparseTensor) -> Result<Option<(MultiIndex, Scalar, Scalar)>> {
        self.check_compatible(other)?;
        let zero = self.field.zero();
        let mut a = self.entries.iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            let (idx, x, y) = match (a.peek(), b.peek()) {
                (None, None) => return Ok(None),
                (Some((ia, va)), None) => (*ia, *va, &zero),
                (None, Some((ib, vb))) => (*ib, &zero, *vb),
                (Some((ia, va)), Some((ib, vb))) => match ia.cmp(ib) {
                    std::cmp::Ordering::Less => (*ia, *va, &zero),
                    std::cmp::Ordering::Greater => (*ib, &zero, *vb),
                    std::cmp::Ordering::Equal => {
                        if va != vb {
                            (*ia, *va, *vb)
                        } else {
                            a.next();
                            b.next();
                            continue;
                        }
                    }
                },
            };
            return Ok(Some((idx.clone(), x.clone(), y.clone())));
        }
    }
}

/// Exact equality of two tensors of the same order over the same field.
pub fn tensor_equal(a: &SparseTensor, b: &SparseTensor) -> Result<bool> {
    a.check_compatible(b)?;
    Ok(a.entries == b.entries)
}

/// A permutation of `[1, n]` given by its bottom row `(a_1, ..., a_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &a in &images {
            if a == 0 || a > n || std::mem::replace(&mut seen[a], true) {
                return Err(Error::InvalidPermutation(images));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Swaps `a` and `b` (1-based, distinct).
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(a - 1, b - 1);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `self ∘ other`, i.e. `other` applied first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &a) in self.images.iter().enumerate() {
            images[a - 1] = i + 1;
        }
        Permutation { images }
    }

    pub fn inversions(&self) -> u64 {
        count_inversions(&self.images)
    }

    pub fn is_odd(&self) -> bool {
        self.inversions() % 2 == 1
    }

    /// `+1` or `-1` in `field`.
    pub fn sign(&self, field: FieldSpec) -> Scalar {
        field.from_i64(if self.is_odd() { -1 } else { 1 })
    }

    /// The lexicographically next permutation, if any.
    pub fn next_lex(&self) -> Option<Permutation> {
        let mut images = self.images.clone();
        let i = images.windows(2).rposition(|w| w[0] < w[1])?;
        let j = images.iter().rposition(|&x| x > images[i]).expect("successor exists");
        images.swap(i, j);
        images[i + 1..].reverse();
        Some(Permutation { images })
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        std::iter::successors(Some(Permutation::identity(n)), |p| p.next_lex())
    }
}

/// Sign of the permutation with bottom row `images`.
pub fn sign(images: &[usize], field: FieldSpec) -> Result<Scalar> {
    Ok(Permutation::new(images.to_vec())?.sign(field))
}

/// Mergesort inversion count.
pub fn count_inversions<T: Ord + Copy>(values: &[T]) -> u64 {
    fn sort<T: Ord + Copy>(v: &mut [T], buf: &mut Vec<T>) -> u64 {
        let n = v.len();
        if n < 2 {
            return 0;
        }
        let mid = n / 2;
        let mut count = sort(&mut v[..mid], buf) + sort(&mut v[mid..], buf);
        buf.clear();
        let (mut i, mut j) = (0, mid);
        while i < mid && j < n {
            if v[j] < v[i] {
                count += (mid - i) as u64;
                buf.push(v[j]);
                j += 1;
            } else {
                buf.push(v[i]);
                i += 1;
            }
        }
        buf.extend_from_slice(&v[i..mid]);
        buf.extend_from_slice(&v[j..n]);
        v.copy_from_slice(buf);
        count
    }
    let mut work = values.to_vec();
    sort(&mut work, &mut Vec::with_capacity(values.len()))
}

/// The coordinate tensor of `det_n`: entry `sgn(σ)` at `(σ(1), ..., σ(n))`.
pub fn leibniz_tensor(n: usize, field: FieldSpec) -> SparseTensor {
    let mut t = SparseTensor::new(n, field);
    for p in Permutation::all(n) {
        let sign = p.sign(field);
        let idx = MultiIndex::from_raw(p.images.iter().map(|&a| a as u8).collect());
        t.accumulate(idx, &sign);
    }
    t
}
