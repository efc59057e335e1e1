//! The `detdecomp` v1 text format.
//!
//! ```text
//! detdecomp 1 n=3 field=Q terms=5 provenance=derksen3
//! 1/2 | +e2 +e3 | +e1 -e2 | +e1 +e2
//! ...
//! 1 | +e2 | -e1 +e3 | +e1 +e3
//! ```
//!
//! One term per line after the header: the coefficient, then the `n`
//! factors separated by ` | `. Factor entries are `+e3`, `-e5` or carry an
//! explicit scalar as in `+2*e2`. Output is UTF-8 with LF line endings and
//! no trailing whitespace, so writing the same decomposition twice gives the
//! same bytes.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{field_validate, FieldSpec, Scalar};
use crate::formulas::{DecomposableTerm, Decomposition, Generator, LinearVector, Provenance};

pub const MAGIC: &str = "detdecomp";
pub const VERSION: u32 = 1;

pub fn write_decomposition(d: &Decomposition) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{MAGIC} {VERSION} n={} field={} terms={} provenance={}",
        d.order(),
        d.field(),
        d.term_count(),
        d.provenance().tag()
    )
    .expect("writing to a String");
    for t in d.terms() {
        out.push_str(&t.coeff.to_string());
        for v in &t.factors {
            out.push_str(" | ");
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}

struct Header {
    order: usize,
    field: FieldSpec,
    terms: usize,
    origin: Option<Generator>,
}

fn parse_header(line: &str) -> Result<Header> {
    let err = |m: String| Error::parse(1, m);
    let mut tokens = line.split(' ');
    if tokens.next() != Some(MAGIC) {
        return Err(err(format!("expected `{MAGIC}` header")));
    }
    match tokens.next() {
        Some(v) if v == VERSION.to_string() => {}
        other => return Err(err(format!("unsupported format version {other:?}"))),
    }
    let mut field_value = |key: &str| -> Result<&str> {
        tokens
            .next()
            .and_then(|t| t.strip_prefix(key))
            .and_then(|t| t.strip_prefix('='))
            .ok_or_else(|| err(format!("expected `{key}=...`")))
    };
    let order = field_value("n")?
        .parse::<usize>()
        .map_err(|e| err(format!("bad order: {e}")))?;
    let field_text = field_value("field")?;
    let field = match field_text {
        "Q" => FieldSpec::Rationals,
        t => match t.strip_prefix("Fp:").map(str::parse::<u64>) {
            Some(Ok(p)) => FieldSpec::PrimeField(p),
            _ => return Err(err(format!("bad field `{t}`"))),
        },
    };
    field_validate(field)?;
    let terms = field_value("terms")?
        .parse::<usize>()
        .map_err(|e| err(format!("bad term count: {e}")))?;
    let tag = field_value("provenance")?;
    let origin = match tag {
        "file" => None,
        t => Some(Generator::from_tag(t).ok_or_else(|| err(format!("unknown provenance `{t}`")))?),
    };
    if tokens.next().is_some() {
        return Err(err("trailing tokens in header".into()));
    }
    Ok(Header {
        order,
        field,
        terms,
        origin,
    })
}

fn parse_entry(token: &str, field: FieldSpec) -> Option<(usize, Scalar)> {
    let (negative, rest) = match token.as_bytes().first()? {
        b'+' => (false, &token[1..]),
        b'-' => (true, &token[1..]),
        _ => return None,
    };
    let (coeff, basis) = match rest.split_once('*') {
        Some((c, b)) => (field.parse_scalar(c).ok()?, b),
        None => (field.one(), rest),
    };
    let digits = basis.strip_prefix('e')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let index = digits.parse().ok()?;
    Some((index, if negative { -coeff } else { coeff }))
}

fn parse_factor(text: &str, field: FieldSpec, line: usize) -> Result<LinearVector> {
    if text == "0" {
        return Ok(LinearVector::zero());
    }
    let entries = text
        .split(' ')
        .map(|tok| parse_entry(tok, field).ok_or_else(|| Error::parse(line, format!("bad factor entry `{tok}`"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearVector::from_terms(entries))
}

/// Parses a `detdecomp` stream. The result records the header's generator
/// as [`Provenance::File`].
pub fn read_decomposition(text: &str) -> Result<Decomposition> {
    let mut lines = text.lines();
    let header = parse_header(lines.next().ok_or_else(|| Error::parse(1, "empty input"))?)?;
    let mut terms = Vec::with_capacity(header.terms);
    for (k, body) in lines.enumerate() {
        let line = k + 2;
        let mut parts = body.split(" | ");
        let coeff_text = parts.next().unwrap_or_default();
        let coeff = header
            .field
            .parse_scalar(coeff_text)
            .map_err(|e| Error::parse(line, e.to_string()))?;
        if coeff.is_zero() {
            return Err(Error::parse(line, "zero coefficient"));
        }
        let factors = parts
            .map(|p| parse_factor(p, header.field, line))
            .collect::<Result<Vec<_>>>()?;
        if factors.len() != header.order {
            return Err(Error::parse(
                line,
                format!("expected {} factors, found {}", header.order, factors.len()),
            ));
        }
        terms.push(DecomposableTerm::new(coeff, factors));
    }
    if terms.len() != header.terms {
        return Err(Error::CountMismatch {
            declared: header.terms,
            found: terms.len(),
        });
    }
    Decomposition::new(header.order, header.field, terms, Provenance::File(header.origin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{best_known, derksen3, even_general, leibniz};
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn det2_lines() {
        let text = write_decomposition(&leibniz(2, Q).unwrap());
        assert_eq!(
            text,
            "detdecomp 1 n=2 field=Q terms=2 provenance=leibniz\n1 | +e1 | +e2\n-1 | +e2 | +e1\n"
        );
    }

    #[test]
    fn derksen_third_line() {
        let text = write_decomposition(&derksen3(Q).unwrap());
        assert_eq!(text.lines().nth(3), Some("1 | +e2 | -e1 +e3 | +e1 +e3"));
        assert_eq!(text.lines().nth(1), Some("1/2 | +e2 +e3 | +e1 -e2 | +e1 +e2"));
    }

    #[test]
    fn even_k1_lines() {
        let text = write_decomposition(&even_general(1, Q).unwrap());
        let body: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(body, vec!["1/2 | +e1 -e2 | +e1 +e2", "-1/2 | +e1 +e2 | +e1 -e2"]);
    }

    #[test]
    fn prime_field_lines() {
        let f7 = FieldSpec::PrimeField(7);
        let text = write_decomposition(&even_general(1, f7).unwrap());
        assert_eq!(
            text,
            "detdecomp 1 n=2 field=Fp:7 terms=2 provenance=even\n4 | +e1 -e2 | +e1 +e2\n3 | +e1 +e2 | +e1 -e2\n"
        );
        assert_eq!(read_decomposition(&text).unwrap(), even_general(1, f7).unwrap());
    }

    #[test]
    fn round_trip_best6() {
        let d = best_known(6, Q).unwrap();
        let text = write_decomposition(&d);
        let back = read_decomposition(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.provenance(), Provenance::File(Some(Generator::EvenGeneral)));
        assert_eq!(write_decomposition(&back), text);
    }

    #[test]
    fn count_mismatch() {
        let text = write_decomposition(&derksen3(Q).unwrap()).replacen("terms=5", "terms=6", 1);
        assert_eq!(
            read_decomposition(&text),
            Err(Error::CountMismatch { declared: 6, found: 5 })
        );
        let text = write_decomposition(&derksen3(Q).unwrap()).replacen("terms=5", "terms=4", 1);
        assert!(matches!(read_decomposition(&text), Err(Error::CountMismatch { .. })));
    }

    #[test]
    fn char_two_rejected() {
        let text = "detdecomp 1 n=1 field=Fp:2 terms=1 provenance=file\n1 | +e1\n";
        assert_eq!(read_decomposition(text), Err(Error::CharTwo(FieldSpec::PrimeField(2))));
        let text = "detdecomp 1 n=1 field=Fp:9 terms=1 provenance=file\n1 | +e1\n";
        assert_eq!(read_decomposition(text), Err(Error::NotPrime(9)));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("detdecomp 2 n=1 field=Q terms=0 provenance=file\n", 1),
            ("detdecomp 1 n=1 field=R terms=0 provenance=file\n", 1),
            ("detdecomp 1 n=1 field=Q terms=0 provenance=magic\n", 1),
            ("detdecomp 1 n=1 field=Q terms=0 provenance=file extra\n", 1),
            ("detdecomp 1 n=2 field=Q terms=1 provenance=file\n1 | +e1\n", 2),
            ("detdecomp 1 n=1 field=Q terms=2 provenance=file\n1 | +e1\n1 | e1\n", 3),
            ("detdecomp 1 n=1 field=Q terms=1 provenance=file\n0 | +e1\n", 2),
            ("detdecomp 1 n=1 field=Q terms=1 provenance=file\nx | +e1\n", 2),
            ("detdecomp 1 n=1 field=Q terms=1 provenance=file\n1 | +2*f1\n", 2),
        ];
        for (text, line) in cases {
            match read_decomposition(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        // index out of range is a validation error, not a parse error
        let text = "detdecomp 1 n=1 field=Q terms=1 provenance=file\n1 | +e2\n";
        assert!(matches!(read_decomposition(text), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn explicit_scalars() {
        let text = "detdecomp 1 n=2 field=Q terms=1 provenance=file\n-3/2 | +2*e1 -1/3*e2 | 0\n";
        let d = read_decomposition(text).unwrap();
        assert_eq!(write_decomposition(&d), text);
        let v = &d.terms()[0].factors[0];
        assert_eq!(v.coeff(2), Some(&Q.parse_scalar("-1/3").unwrap()));
    }

    fn arbitrary_decomposition() -> impl Strategy<Value = Decomposition> {
        let entry = (1usize..=4, -4i64..=4, 1i64..=3);
        let factor = proptest::collection::vec(entry, 0..4);
        let term = ((-5i64..=5).prop_filter("nonzero", |c| *c != 0), proptest::collection::vec(factor, 4));
        (proptest::collection::vec(term, 0..6), prop_oneof![Just(Q), Just(FieldSpec::PrimeField(7))]).prop_map(
            |(terms, field)| {
                let terms = terms
                    .into_iter()
                    .filter_map(|(c, factors)| {
                        let coeff = field.from_i64(c);
                        if coeff.is_zero() {
                            return None;
                        }
                        let factors = factors
                            .into_iter()
                            .map(|es| {
                                LinearVector::from_terms(es.into_iter().map(|(i, a, b)| {
                                    (i, field.from_i64(a) * field.from_i64(b).inv().unwrap())
                                }))
                            })
                            .collect();
                        Some(DecomposableTerm::new(coeff, factors))
                    })
                    .collect();
                Decomposition::new(4, field, terms, Provenance::File(None)).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn read_inverts_write(d in arbitrary_decomposition()) {
            let text = write_decomposition(&d);
            let back = read_decomposition(&text).unwrap();
            prop_assert_eq!(&back, &d);
            prop_assert_eq!(write_decomposition(&back), text);
        }
    }
}
