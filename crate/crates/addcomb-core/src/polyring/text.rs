//! Parser for the canonical polynomial text form emitted by `Display`:
//! signed terms like `2*x1*x2^3 - x3 + 5`, variables named `x1..xN`.

use num_bigint::BigInt;
use num_traits::One;
use std::str::FromStr;

use super::{CoefficientRing, Monomial, PolyError, SparsePoly};

/// Parses the canonical text form into a polynomial of the given arity.
pub fn parse_poly(
    input: &str,
    ring: CoefficientRing,
    arity: usize,
) -> Result<SparsePoly, PolyError> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(PolyError::Parse("empty polynomial text".into()));
    }
    if compact == "0" {
        return Ok(SparsePoly::zero(ring, arity));
    }
    let mut terms = Vec::new();
    let mut rest = compact.as_str();
    let mut sign = BigInt::one();
    if let Some(tail) = rest.strip_prefix('-') {
        sign = -sign;
        rest = tail;
    } else if let Some(tail) = rest.strip_prefix('+') {
        rest = tail;
    }
    loop {
        let split = rest.find(['+', '-']);
        let (term_str, remainder) = match split {
            Some(pos) => (&rest[..pos], Some(&rest[pos..])),
            None => (rest, None),
        };
        let (m, c) = parse_term(term_str, arity)?;
        terms.push((m, c * &sign));
        match remainder {
            None => break,
            Some(r) => {
                sign = if r.starts_with('-') {
                    -BigInt::one()
                } else {
                    BigInt::one()
                };
                rest = &r[1..];
                if rest.is_empty() {
                    return Err(PolyError::Parse("dangling sign".into()));
                }
            }
        }
    }
    SparsePoly::from_terms(ring, arity, terms)
}

fn parse_term(term: &str, arity: usize) -> Result<(Monomial, BigInt), PolyError> {
    if term.is_empty() {
        return Err(PolyError::Parse("empty term".into()));
    }
    let mut coeff = BigInt::one();
    let mut exps = vec![0u32; arity];
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(PolyError::Parse(format!("empty factor in `{term}`")));
        }
        if let Some(body) = factor.strip_prefix('x') {
            let (var_str, exp) = match body.split_once('^') {
                Some((v, e)) => {
                    let exp: u32 = e
                        .parse()
                        .map_err(|_| PolyError::Parse(format!("bad exponent in `{factor}`")))?;
                    (v, exp)
                }
                None => (body, 1),
            };
            let var: usize = var_str
                .parse()
                .map_err(|_| PolyError::Parse(format!("bad variable in `{factor}`")))?;
            if var == 0 || var > arity {
                return Err(PolyError::VariableOutOfRange {
                    index: var.saturating_sub(1),
                    arity,
                });
            }
            exps[var - 1] += exp;
        } else {
            let value = BigInt::from_str(factor)
                .map_err(|_| PolyError::Parse(format!("bad integer factor `{factor}`")))?;
            coeff *= value;
        }
    }
    Ok((Monomial::new(exps), coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn parse_simple_forms() {
        let ring = CoefficientRing::integers();
        let p = parse_poly("2*x1*x2 - 1", ring, 2).unwrap();
        assert_eq!(p.coeff(&Monomial::new(vec![1, 1])).unwrap(), int(2));
        assert_eq!(p.coeff(&Monomial::unit()).unwrap(), int(-1));
        assert_eq!(p.to_string(), "2*x1*x2 - 1");

        let q = parse_poly("-x1^3 + 4*x2 + 0", ring, 2).unwrap();
        assert_eq!(q.coeff(&Monomial::new(vec![3, 0])).unwrap(), int(-1));
        assert_eq!(q.coeff(&Monomial::new(vec![0, 1])).unwrap(), int(4));
    }

    #[test]
    fn roundtrip_through_display() {
        let ring = CoefficientRing::integers();
        let p = parse_poly("3*x1^2*x3 - x2 + 5", ring, 3).unwrap();
        let again = parse_poly(&p.to_string(), ring, 3).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn rejects_malformed_input() {
        let ring = CoefficientRing::integers();
        assert!(parse_poly("", ring, 1).is_err());
        assert!(parse_poly("x0", ring, 1).is_err());
        assert!(parse_poly("x2", ring, 1).is_err());
        assert!(parse_poly("2**x1", ring, 1).is_err());
        assert!(parse_poly("x1^", ring, 1).is_err());
        assert!(parse_poly("x1 +", ring, 1).is_err());
        assert!(parse_poly("y1", ring, 1).is_err());
    }

    #[test]
    fn modular_parse_normalizes() {
        let gf5 = CoefficientRing::mod_p(5).unwrap();
        let p = parse_poly("7*x1 - 12", gf5, 1).unwrap();
        assert_eq!(p.coeff(&Monomial::var(0)).unwrap(), int(2));
        assert_eq!(p.coeff(&Monomial::unit()).unwrap(), int(3));
    }
}
