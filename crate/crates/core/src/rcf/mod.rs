//! Exact arithmetic in the field of real algebraic numbers.

mod factor;
mod number;
mod upoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use factor::factor_squarefree;
pub use number::RcfNumber;
pub use upoly::{count_roots_with, product_polynomial, resultant_q, sum_polynomial, IntPoly};

use crate::poly::MPoly;
use crate::scalar::{OrderedField, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RcfError {
    #[error("no root of the polynomial in the interval")]
    NoRootInInterval,
    #[error("more than one root of the polynomial in the interval")]
    MultipleRootsInInterval,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("interval endpoints must satisfy lo < hi")]
    BadInterval,
    #[error("point has {got} coordinates, polynomial has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// Exact sign of `p` at `point`.
pub fn poly_sign<C: OrderedField>(p: &MPoly<C>, point: &[C]) -> Result<Sign, RcfError> {
    if p.nvars() != point.len() {
        return Err(RcfError::ArityMismatch { expected: p.nvars(), got: point.len() });
    }
    Ok(p.sign_at(point))
}

/// Parse `"p/q"` or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational, RcfError> {
    let s = s.trim();
    let err = || RcfError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d == BigInt::from(0) {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

/// Parse a univariate integer polynomial in `x` such as `"x^2-2"` or
/// `"3*x^3 - x + 1"`.
pub fn parse_int_poly(s: &str) -> Result<IntPoly, RcfError> {
    let err = || RcfError::Parse(s.to_string());
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err());
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut coeffs: Vec<BigInt> = Vec::new();
    for t in terms {
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t.strip_prefix('+').unwrap_or(&t)),
        };
        let (coeff, power) = match body.find('x') {
            None => (body.parse::<BigInt>().map_err(|_| err())?, 0usize),
            Some(pos) => {
                let c = body[..pos].trim_end_matches('*');
                let c = if c.is_empty() { BigInt::from(1) } else { c.parse().map_err(|_| err())? };
                let rest = &body[pos + 1..];
                let p = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').ok_or_else(err)?.parse().map_err(|_| err())?
                };
                (c, p)
            }
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigInt::from(0));
        }
        coeffs[power] += if neg { -coeff } else { coeff };
    }
    Ok(IntPoly::new(coeffs))
}

/// Parse the textual number form: `"p/q"`, an integer, or
/// `"alg(<poly>, <lo>, <hi>)"`.
pub fn parse_number(s: &str) -> Result<RcfNumber, RcfError> {
    let t = s.trim();
    if let Some(inner) = t.strip_prefix("alg(").and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = inner.rsplitn(3, ',').collect();
        if parts.len() != 3 {
            return Err(RcfError::Parse(s.to_string()));
        }
        let poly = parse_int_poly(parts[2])?;
        let lo = parse_rational(parts[1])?;
        let hi = parse_rational(parts[0])?;
        return RcfNumber::make_algebraic(&poly, &lo, &hi);
    }
    parse_rational(t).map(RcfNumber::from)
}
