//! Multilinear expansion of decompositions, certification against the
//! Leibniz tensor, and the rank bound table.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::formulas::{DecomposableTerm, Decomposition};
use crate::tensor::{leibniz_tensor, MultiIndex, SparseTensor};

/// Default upper limit accepted by [`bell_number`].
pub const BELL_CAP: usize = 25;

fn expand_terms(order: usize, field: FieldSpec, terms: &[DecomposableTerm]) -> SparseTensor {
    let mut out = SparseTensor::new(order, field);
    let mut index = vec![0u8; order];
    // prefix[s] = coefficient times the chosen entries of factors 0..s
    let mut prefix: Vec<Scalar> = vec![field.zero(); order + 1];
    for term in terms {
        let supports: Vec<Vec<(usize, &Scalar)>> =
            term.factors.iter().map(|v| v.iter().collect()).collect();
        if supports.iter().any(|s| s.is_empty()) {
            continue;
        }
        prefix[0] = term.coeff.clone();
        let mut choice = vec![0usize; order];
        let mut slot = 0;
        'odometer: loop {
            while slot < order {
                let (i, c) = supports[slot][choice[slot]];
                index[slot] = i as u8;
                prefix[slot + 1] = &prefix[slot] * c;
                slot += 1;
            }
            out.accumulate(MultiIndex::from_raw(index.clone()), &prefix[order]);
            loop {
                if slot == 0 {
                    break 'odometer;
                }
                slot -= 1;
                choice[slot] += 1;
                if choice[slot] < supports[slot].len() {
                    break;
                }
                choice[slot] = 0;
            }
        }
    }
    out
}

/// The coordinate tensor of a decomposition, with all cancellations applied.
pub fn expand(d: &Decomposition) -> SparseTensor {
    expand_terms(d.order(), d.field(), d.terms())
}

/// [`expand`] split over `jobs` worker threads. The result does not depend
/// on `jobs`.
pub fn expand_parallel(d: &Decomposition, jobs: usize) -> SparseTensor {
    let jobs = jobs.max(1);
    if jobs == 1 || d.term_count() < 2 * jobs {
        return expand(d);
    }
    let chunk = d.term_count().div_ceil(jobs);
    let parts: Vec<SparseTensor> = std::thread::scope(|scope| {
        let handles: Vec<_> = d
            .terms()
            .chunks(chunk)
            .map(|terms| scope.spawn(move || expand_terms(d.order(), d.field(), terms)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("expansion worker panicked"))
            .collect()
    });
    let mut out = SparseTensor::new(d.order(), d.field());
    for part in parts {
        out.merge(part).expect("parts share order and field");
    }
    out
}

/// Where an expansion first disagrees with `det_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: MultiIndex,
    pub expected: Scalar,
    pub found: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub order: usize,
    pub field: FieldSpec,
    pub term_count: usize,
    pub is_exact_match: bool,
    pub mismatch: Option<Mismatch>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} field={} terms={} match={}",
            self.order, self.field, self.term_count, self.is_exact_match
        )?;
        if let Some(m) = &self.mismatch {
            write!(f, " witness={} expected={} found={}", m.index, m.expected, m.found)?;
        }
        Ok(())
    }
}

/// Compares the expansion of `d` with the Leibniz tensor of the same order.
pub fn verify(d: &Decomposition) -> VerificationReport {
    verify_with_jobs(d, 1)
}

pub fn verify_with_jobs(d: &Decomposition, jobs: usize) -> VerificationReport {
    let expected = leibniz_tensor(d.order(), d.field());
    let found = expand_parallel(d, jobs);
    let mismatch = expected
        .first_difference(&found)
        .expect("same order and field")
        .map(|(index, expected, found)| Mismatch {
            index,
            expected,
            found,
        });
    VerificationReport {
        order: d.order(),
        field: d.field(),
        term_count: d.term_count(),
        is_exact_match: mismatch.is_none(),
        mismatch,
    }
}

/// `B_n` via the Bell triangle, for `n <= BELL_CAP`.
pub fn bell_number(n: usize) -> Result<BigUint> {
    bell_number_capped(n, BELL_CAP)
}

pub fn bell_number_capped(n: usize, cap: usize) -> Result<BigUint> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().expect("rows are nonempty").clone());
        for x in &row {
            let v = next.last().expect("just pushed") + x;
            next.push(v);
        }
        row = next;
    }
    Ok(row.swap_remove(0))
}

/// `C_n = n! / 2^floor((n-2)/2)`, the term count of [`crate::best_known`]
/// for `n >= 2`.
pub fn rank_upper_bound(n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("bound defined for n >= 2, got {n}")));
    }
    let factorial: BigUint = (1..=n as u64).map(BigUint::from).product();
    Ok(factorial >> ((n - 2) / 2))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub n: usize,
    pub bell: BigUint,
    pub bound: BigUint,
    /// `C_n <= B_n`.
    pub marked: bool,
}

/// Rows `n = 2..=max_n` comparing Bell numbers with `C_n`.
pub fn rank_bound_table(max_n: usize) -> Result<Vec<BoundRow>> {
    if max_n < 2 {
        return Err(Error::InvalidArgument(format!("max_n must be at least 2, got {max_n}")));
    }
    (2..=max_n)
        .map(|n| {
            let bell = bell_number(n)?;
            let bound = rank_upper_bound(n)?;
            Ok(BoundRow {
                n,
                marked: bound <= bell,
                bell,
                bound,
            })
        })
        .collect()
}

/// Tab-separated rendering; marked bounds carry a trailing `*`.
pub fn format_bound_table(rows: &[BoundRow]) -> String {
    let mut out = String::from("n\tB_n\tC_n\n");
    for r in rows {
        let mark = if r.marked { "*" } else { "" };
        out.push_str(&format!("{}\t{}\t{}{}\n", r.n, r.bell, r.bound, mark));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{derksen3, even_general, leibniz, LinearVector, Provenance};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn idx(e: &[usize]) -> MultiIndex {
        MultiIndex::new(e, e.len()).unwrap()
    }

    #[test]
    fn expand_leibniz3() {
        let t = expand(&leibniz(3, Q).unwrap());
        assert_eq!(t.len(), 6);
        assert!(t.iter().all(|(_, v)| v.is_one() || v.is_minus_one()));
        assert_eq!(t, leibniz_tensor(3, Q));
    }

    #[test]
    fn expand_even_k2_cancels_bad_entries() {
        let t = expand(&even_general(2, Q).unwrap());
        assert_eq!(t.len(), 24);
        assert_eq!(t, leibniz_tensor(4, Q));
    }

    #[test]
    fn single_term_bad_entry() {
        // -½ (e1 - e3) ⊗ (e2 - e4) ⊗ (e2 + e4) ⊗ (e1 + e3)
        let term = DecomposableTerm::new(
            Q.parse_scalar("-1/2").unwrap(),
            vec![
                LinearVector::pair(Q, 1, 3, false),
                LinearVector::pair(Q, 2, 4, false),
                LinearVector::pair(Q, 2, 4, true),
                LinearVector::pair(Q, 1, 3, true),
            ],
        );
        let d = Decomposition::new(4, Q, vec![term], Provenance::File(None)).unwrap();
        let t = expand(&d);
        assert_eq!(t.len(), 16);
        assert_eq!(t.get(&idx(&[1, 2, 4, 1])), Some(&Q.parse_scalar("-1/2").unwrap()));
        assert_eq!(t.get(&idx(&[1, 2, 2, 1])), Some(&Q.parse_scalar("-1/2").unwrap()));
        assert_eq!(t.get(&idx(&[3, 4, 4, 3])), Some(&Q.parse_scalar("-1/2").unwrap()));
    }

    #[test]
    fn verify_k3_and_parallel_agree() {
        let d = even_general(3, Q).unwrap();
        let report = verify(&d);
        assert!(report.is_exact_match);
        assert_eq!(report.term_count, 180);
        assert_eq!(report.to_string(), "n=6 field=Q terms=180 match=true");
        for jobs in [2, 3, 7] {
            assert_eq!(expand_parallel(&d, jobs), expand(&d));
        }
    }

    #[test]
    fn flipped_derksen_witness() {
        let d = derksen3(Q).unwrap();
        let mut terms = d.clone().into_terms();
        terms[0].coeff = -&terms[0].coeff;
        let bad = Decomposition::new(3, Q, terms, Provenance::File(None)).unwrap();
        let report = verify(&bad);
        assert!(!report.is_exact_match);

        // brute force: evaluate the expansion at every multi-index in order
        let expected = leibniz_tensor(3, Q);
        let found = expand(&bad);
        let zero = Q.zero();
        let mut first = None;
        'outer: for a in 1..=3 {
            for b in 1..=3 {
                for c in 1..=3 {
                    let i = idx(&[a, b, c]);
                    let e = expected.get(&i).unwrap_or(&zero);
                    let f = found.get(&i).unwrap_or(&zero);
                    if e != f {
                        first = Some((i, e.clone(), f.clone()));
                        break 'outer;
                    }
                }
            }
        }
        let (i, e, f) = first.unwrap();
        let m = report.mismatch.unwrap();
        assert_eq!((m.index, m.expected, m.found), (i, e, f));
    }

    #[test]
    fn bell_numbers() {
        let expected = [1u64, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
        for (n, b) in expected.iter().enumerate() {
            assert_eq!(bell_number(n).unwrap(), BigUint::from(*b));
        }
        assert_eq!(
            bell_number(25).unwrap().to_string(),
            "4638590332229999353"
        );
        assert_eq!(bell_number(26), Err(Error::CapExceeded { n: 26, cap: 25 }));
        assert_eq!(bell_number_capped(26, 30).unwrap().to_string(), "49631246523618756274");
    }

    #[test]
    fn bound_table_rows() {
        let rows = rank_bound_table(8).unwrap();
        assert_eq!(rows.len(), 7);
        let row = |n: usize| &rows[n - 2];
        assert_eq!((row(6).bell.clone(), row(6).bound.clone(), row(6).marked), (203u32.into(), 180u32.into(), true));
        assert_eq!((row(3).bell.clone(), row(3).bound.clone(), row(3).marked), (5u32.into(), 6u32.into(), false));
        assert_eq!((row(8).bell.clone(), row(8).bound.clone(), row(8).marked), (4140u32.into(), 5040u32.into(), false));
        assert!(rank_bound_table(1).is_err());
        assert!(rank_bound_table(26).is_err());
        let text = format_bound_table(&rows);
        assert!(text.contains("4\t15\t12*\n"));
        assert!(text.contains("6\t203\t180*\n"));
    }
}
