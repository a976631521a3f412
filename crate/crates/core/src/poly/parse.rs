use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParsePolyError {
    #[error("empty input")]
    Empty,
    #[error("malformed polynomial near position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("non-integer coefficient `{0}`")]
    NonInteger(String),
    #[error("negative exponent in `{0}`")]
    NegativeExponent(String),
}

/// Parses either a symbolic expression in `t` (`4t^6 - 17*t^5 + 4`) or an
/// ascending comma-separated coefficient list (`4,-17,4`). Whitespace is
/// ignored everywhere.
pub fn parse_poly(text: &str) -> Result<IntPoly, ParsePolyError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(ParsePolyError::Empty);
    }
    if s.contains(',') {
        parse_list(&s)
    } else {
        parse_symbolic(&s)
    }
}

fn parse_int(tok: &str, pos: usize) -> Result<BigInt, ParsePolyError> {
    if tok.contains(['.', '/', 'e', 'E']) && tok.chars().any(|c| c.is_ascii_digit()) {
        return Err(ParsePolyError::NonInteger(tok.to_string()));
    }
    tok.parse::<BigInt>().map_err(|_| ParsePolyError::Syntax {
        pos,
        msg: format!("expected an integer, found `{tok}`"),
    })
}

fn parse_list(s: &str) -> Result<IntPoly, ParsePolyError> {
    let mut coeffs = Vec::new();
    let mut pos = 0;
    for tok in s.split(',') {
        if tok.is_empty() {
            return Err(ParsePolyError::Syntax { pos, msg: "empty list entry".into() });
        }
        coeffs.push(parse_int(tok, pos)?);
        pos += tok.len() + 1;
    }
    Ok(IntPoly::new(coeffs))
}

fn parse_symbolic(s: &str) -> Result<IntPoly, ParsePolyError> {
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut first = true;
    while i < bytes.len() {
        let term_start = i;
        let mut negative = false;
        match bytes[i] {
            b'+' => i += 1,
            b'-' => {
                negative = true;
                i += 1
            }
            _ if first => {}
            _ => {
                return Err(ParsePolyError::Syntax { pos: i, msg: "expected `+` or `-` between terms".into() })
            }
        }
        first = false;
        // Coefficient: digits, possibly followed by a rejected fractional part.
        let num_start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || matches!(bytes[i], b'.' | b'/')) {
            i += 1;
        }
        let coeff = if i > num_start {
            parse_int(&s[num_start..i], num_start)?
        } else {
            BigInt::one()
        };
        let had_number = i > num_start;
        if i < bytes.len() && bytes[i] == b'*' {
            if !had_number {
                return Err(ParsePolyError::Syntax { pos: i, msg: "`*` without a coefficient".into() });
            }
            i += 1;
            if i >= bytes.len() || bytes[i] != b't' {
                return Err(ParsePolyError::Syntax { pos: i, msg: "expected `t` after `*`".into() });
            }
        }
        let mut exp = 0usize;
        if i < bytes.len() && bytes[i] == b't' {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let exp_start = i;
                if i < bytes.len() && bytes[i] == b'-' {
                    return Err(ParsePolyError::NegativeExponent(s[term_start..].to_string()));
                }
                if i < bytes.len() && bytes[i] == b'+' {
                    i += 1;
                }
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits_start {
                    return Err(ParsePolyError::Syntax { pos: exp_start, msg: "missing exponent".into() });
                }
                exp = s[digits_start..i].parse().map_err(|_| ParsePolyError::Syntax {
                    pos: digits_start,
                    msg: "exponent too large".into(),
                })?;
            }
        } else if !had_number {
            return Err(ParsePolyError::Syntax { pos: i, msg: "expected a coefficient or `t`".into() });
        }
        if exp > 1 << 24 {
            return Err(ParsePolyError::Syntax { pos: term_start, msg: "exponent too large".into() });
        }
        if acc.len() <= exp {
            acc.resize(exp + 1, BigInt::zero());
        }
        if negative {
            acc[exp] -= coeff;
        } else {
            acc[exp] += coeff;
        }
    }
    Ok(IntPoly::new(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn symbolic_and_list_forms() {
        assert_eq!(parse_poly("t^2 - t + 1").unwrap(), p(&[1, -1, 1]));
        assert_eq!(parse_poly("4,-17,38,-51,38,-17,4").unwrap(), p(&[4, -17, 38, -51, 38, -17, 4]));
        assert_eq!(
            parse_poly("4t^6 - 17t^5 + 38t^4 - 51t^3 + 38t^2 - 17t + 4").unwrap(),
            p(&[4, -17, 38, -51, 38, -17, 4])
        );
        assert!(parse_poly("0").unwrap().is_zero());
        assert_eq!(parse_poly("2*t^3 - t").unwrap(), p(&[0, -1, 0, 2]));
        assert_eq!(parse_poly(" - t ").unwrap(), p(&[0, -1]));
        assert_eq!(parse_poly("t + t").unwrap(), p(&[0, 2]));
        assert_eq!(parse_poly("5").unwrap(), p(&[5]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_poly("1.5t"), Err(ParsePolyError::NonInteger(_))));
        assert!(matches!(parse_poly("1/2,3"), Err(ParsePolyError::NonInteger(_))));
        assert!(matches!(parse_poly("t^-1"), Err(ParsePolyError::NegativeExponent(_))));
        assert!(matches!(parse_poly("t^"), Err(ParsePolyError::Syntax { .. })));
        assert!(matches!(parse_poly("x^2"), Err(ParsePolyError::Syntax { .. })));
        assert!(matches!(parse_poly("1,,2"), Err(ParsePolyError::Syntax { .. })));
        assert!(matches!(parse_poly("t t"), Err(ParsePolyError::Syntax { .. })));
        assert!(matches!(parse_poly(""), Err(ParsePolyError::Empty)));
    }

    proptest! {
        #[test]
        fn format_then_parse_round_trips(coeffs in prop::collection::vec(-1000i64..1000, 0..12)) {
            let poly = p(&coeffs);
            prop_assert_eq!(parse_poly(&poly.to_string()).unwrap(), poly.clone());
            prop_assert_eq!(parse_poly(&poly.to_coeff_list()).unwrap(), poly);
        }
    }
}
