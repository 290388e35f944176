//! Real algebraic numbers: rationals, or an irreducible integer polynomial
//! together with an isolating interval.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::factor::factor_squarefree;
use super::upoly::{product_polynomial, sum_polynomial, IntPoly};
use super::RcfError;
use crate::poly::MPoly;
use crate::scalar::{OrderedField, Sign};

type Q = BigRational;

/// Element of the real closed field of real algebraic numbers.
///
/// The algebraic variant always carries an irreducible polynomial of degree at
/// least two (primitive, positive leading coefficient) with exactly one real
/// root in the open interval `(lo, hi)` and no root at either endpoint.
#[derive(Clone, Debug)]
pub enum RcfNumber {
    Rational(Q),
    Algebraic { minpoly: IntPoly, lo: Q, hi: Q },
}

fn half(a: &Q, b: &Q) -> Q {
    (a + b) / Q::from_integer(BigInt::from(2))
}

impl RcfNumber {
    pub fn rational(r: Q) -> Self {
        RcfNumber::Rational(r)
    }

    /// Isolate the root of `poly` in `(lo, hi)`. The squarefree part is taken
    /// and the result is reduced to its minimal polynomial, so a rational root
    /// comes back as the rational variant.
    pub fn make_algebraic(poly: &IntPoly, lo: &Q, hi: &Q) -> Result<Self, RcfError> {
        if poly.is_zero() {
            return Err(RcfError::ZeroPolynomial);
        }
        if lo >= hi {
            return Err(RcfError::BadInterval);
        }
        let sf = poly.squarefree();
        match sf.count_roots(lo, hi) {
            0 => return Err(RcfError::NoRootInInterval),
            1 => {}
            _ => return Err(RcfError::MultipleRootsInInterval),
        }
        Ok(Self::from_isolated(&sf, lo.clone(), hi.clone()))
    }

    /// `sf` squarefree with exactly one root in `(lo, hi)`.
    fn from_isolated(sf: &IntPoly, lo: Q, hi: Q) -> Self {
        let factors = factor_squarefree(sf);
        let f = factors
            .into_iter()
            .find(|f| f.count_roots(&lo, &hi) == 1)
            .expect("the isolated root belongs to one factor");
        Self::from_irreducible(f, lo, hi)
    }

    fn from_irreducible(f: IntPoly, lo: Q, hi: Q) -> Self {
        if f.degree() == 1 {
            let c = f.coeffs();
            return RcfNumber::Rational(Q::new(-c[0].clone(), c[1].clone()));
        }
        RcfNumber::Algebraic { minpoly: f, lo, hi }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RcfNumber::Rational(_))
    }

    /// Isolating interval; degenerate `(r, r)` for rationals.
    pub fn interval(&self) -> (Q, Q) {
        match self {
            RcfNumber::Rational(r) => (r.clone(), r.clone()),
            RcfNumber::Algebraic { lo, hi, .. } => (lo.clone(), hi.clone()),
        }
    }

    /// Defining polynomial: the minimal polynomial (linear for rationals).
    pub fn minpoly(&self) -> IntPoly {
        match self {
            RcfNumber::Rational(r) => IntPoly::linear_root(r),
            RcfNumber::Algebraic { minpoly, .. } => minpoly.clone(),
        }
    }

    /// Halve the isolating interval once.
    pub fn bisect(&self) -> Self {
        match self {
            RcfNumber::Rational(_) => self.clone(),
            RcfNumber::Algebraic { minpoly, lo, hi } => {
                let mid = half(lo, hi);
                let s_mid = minpoly.sign_at(&mid);
                let s_lo = minpoly.sign_at(lo);
                let (nlo, nhi) = if s_mid == s_lo { (mid, hi.clone()) } else { (lo.clone(), mid) };
                RcfNumber::Algebraic { minpoly: minpoly.clone(), lo: nlo, hi: nhi }
            }
        }
    }

    /// Refine until the interval width is at most `width`.
    pub fn refine_to(&self, width: &Q) -> Self {
        let mut x = self.clone();
        loop {
            let (lo, hi) = x.interval();
            if &(hi - lo) <= width {
                return x;
            }
            x = x.bisect();
        }
    }

    /// Sign of `self − r` for a rational `r`.
    fn cmp_rational(&self, r: &Q) -> Ordering {
        match self {
            RcfNumber::Rational(a) => a.cmp(r),
            RcfNumber::Algebraic { minpoly, lo, hi } => {
                if r <= lo {
                    Ordering::Greater
                } else if r >= hi || minpoly.count_roots(lo, r) == 1 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn compare(&self, other: &Self) -> Ordering {
        match (self, other) {
            (RcfNumber::Rational(a), RcfNumber::Rational(b)) => a.cmp(b),
            (_, RcfNumber::Rational(b)) => self.cmp_rational(b),
            (RcfNumber::Rational(a), _) => other.cmp_rational(a).reverse(),
            (
                RcfNumber::Algebraic { minpoly: p, lo: l1, hi: h1 },
                RcfNumber::Algebraic { minpoly: q, lo: l2, hi: h2 },
            ) => {
                if p == q {
                    let lo = l1.max(l2);
                    let hi = h1.min(h2);
                    if lo < hi && p.count_roots(lo, hi) == 1 {
                        return Ordering::Equal;
                    }
                }
                // distinct irreducibles share no roots, so refinement separates
                let mut a = self.clone();
                let mut b = other.clone();
                loop {
                    let (al, ah) = a.interval();
                    let (bl, bh) = b.interval();
                    if ah <= bl {
                        return Ordering::Less;
                    }
                    if bh <= al {
                        return Ordering::Greater;
                    }
                    a = a.bisect();
                    b = b.bisect();
                }
            }
        }
    }

    pub fn sign(&self) -> Sign {
        Sign::from_ordering(self.cmp_rational(&Q::zero()))
    }

    pub fn negated(&self) -> Self {
        match self {
            RcfNumber::Rational(r) => RcfNumber::Rational(-r),
            RcfNumber::Algebraic { minpoly, lo, hi } => RcfNumber::Algebraic {
                minpoly: minpoly.reflect().primitive(),
                lo: -hi.clone(),
                hi: -lo.clone(),
            },
        }
    }

    pub fn inv(&self) -> Result<Self, RcfError> {
        match self {
            RcfNumber::Rational(r) => {
                if r.is_zero() {
                    Err(RcfError::DivisionByZero)
                } else {
                    Ok(RcfNumber::Rational(r.recip()))
                }
            }
            RcfNumber::Algebraic { .. } => {
                let mut x = self.clone();
                loop {
                    let (lo, hi) = x.interval();
                    if lo.is_positive() || hi.is_negative() {
                        break;
                    }
                    x = x.bisect();
                }
                let (lo, hi) = x.interval();
                Ok(RcfNumber::Algebraic {
                    minpoly: x.minpoly().reverse().primitive(),
                    lo: hi.recip(),
                    hi: lo.recip(),
                })
            }
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        match (self, other) {
            (RcfNumber::Rational(a), RcfNumber::Rational(b)) => RcfNumber::Rational(a + b),
            (RcfNumber::Rational(r), x) | (x, RcfNumber::Rational(r)) => {
                if r.is_zero() {
                    return x.clone();
                }
                let (lo, hi) = x.interval();
                RcfNumber::Algebraic {
                    minpoly: x.minpoly().shift_roots(r),
                    lo: lo + r,
                    hi: hi + r,
                }
            }
            _ => {
                let poly = sum_polynomial(&self.minpoly(), &other.minpoly()).squarefree();
                self.combine(other, &poly, |(al, ah), (bl, bh)| (al + bl, ah + bh))
            }
        }
    }

    pub fn times(&self, other: &Self) -> Self {
        match (self, other) {
            (RcfNumber::Rational(a), RcfNumber::Rational(b)) => RcfNumber::Rational(a * b),
            (RcfNumber::Rational(r), x) | (x, RcfNumber::Rational(r)) => {
                if r.is_zero() {
                    return RcfNumber::Rational(Q::zero());
                }
                if r.is_one() {
                    return x.clone();
                }
                let (lo, hi) = x.interval();
                let (a, b) = (lo * r, hi * r);
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                RcfNumber::Algebraic { minpoly: x.minpoly().scale_roots(r), lo, hi }
            }
            _ => {
                let poly = product_polynomial(&self.minpoly(), &other.minpoly()).squarefree();
                self.combine(other, &poly, |(al, ah), (bl, bh)| {
                    let c = [&al * &bl, &al * &bh, &ah * &bl, &ah * &bh];
                    let lo = c.iter().min().unwrap().clone();
                    let hi = c.iter().max().unwrap().clone();
                    (lo, hi)
                })
            }
        }
    }

    /// Shared tail of algebraic `+` and `×`: refine operands until the
    /// interval image isolates a single root of `poly`.
    fn combine(&self, other: &Self, poly: &IntPoly, hull: impl Fn((Q, Q), (Q, Q)) -> (Q, Q)) -> Self {
        let factors = factor_squarefree(poly);
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            let (lo, hi) = hull(a.interval(), b.interval());
            if lo < hi {
                let counts: Vec<usize> = factors.iter().map(|f| f.count_roots(&lo, &hi)).collect();
                let total: usize = counts.iter().sum();
                let on_edge = factors
                    .iter()
                    .any(|f| f.sign_at(&lo) == Sign::Zero || f.sign_at(&hi) == Sign::Zero);
                if total == 1 && !on_edge {
                    let i = counts.iter().position(|&c| c == 1).unwrap();
                    return Self::from_irreducible(factors[i].clone(), lo, hi);
                }
            }
            a = a.bisect();
            b = b.bisect();
        }
    }

    pub fn to_rational(&self) -> Option<Q> {
        match self {
            RcfNumber::Rational(r) => Some(r.clone()),
            RcfNumber::Algebraic { .. } => None,
        }
    }

    /// Square root of a nonnegative rational, as an exact real number.
    pub fn sqrt_of(r: &Q) -> Result<Self, RcfError> {
        if r.is_negative() {
            return Err(RcfError::NoRootInInterval);
        }
        if r.is_zero() {
            return Ok(RcfNumber::Rational(Q::zero()));
        }
        // x^2·den - num
        let poly = IntPoly::new(vec![-r.numer().clone(), BigInt::zero(), r.denom().clone()]);
        let hi = r + Q::one();
        Self::make_algebraic(&poly, &Q::zero(), &hi)
    }
}

impl PartialEq for RcfNumber {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for RcfNumber {}

impl PartialOrd for RcfNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RcfNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl From<Q> for RcfNumber {
    fn from(r: Q) -> Self {
        RcfNumber::Rational(r)
    }
}

impl Zero for RcfNumber {
    fn zero() -> Self {
        RcfNumber::Rational(Q::zero())
    }

    fn is_zero(&self) -> bool {
        matches!(self, RcfNumber::Rational(r) if r.is_zero())
    }
}

impl One for RcfNumber {
    fn one() -> Self {
        RcfNumber::Rational(Q::one())
    }
}

impl Add for RcfNumber {
    type Output = RcfNumber;
    fn add(self, rhs: Self) -> Self {
        self.plus(&rhs)
    }
}

impl Sub for RcfNumber {
    type Output = RcfNumber;
    fn sub(self, rhs: Self) -> Self {
        self.plus(&rhs.negated())
    }
}

impl Mul for RcfNumber {
    type Output = RcfNumber;
    fn mul(self, rhs: Self) -> Self {
        self.times(&rhs)
    }
}

impl Neg for RcfNumber {
    type Output = RcfNumber;
    fn neg(self) -> Self {
        self.negated()
    }
}

/// Closed rational interval used to certify signs cheaply.
#[derive(Clone, Debug)]
struct Interval {
    lo: Q,
    hi: Q,
}

impl Interval {
    fn point(r: Q) -> Self {
        Interval { lo: r.clone(), hi: r }
    }

    fn add(&self, o: &Self) -> Self {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn mul(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        Interval {
            lo: c.iter().min().unwrap().clone(),
            hi: c.iter().max().unwrap().clone(),
        }
    }

    fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }
}

fn eval_interval(poly: &MPoly<RcfNumber>, point: &[RcfNumber]) -> Interval {
    let boxes: Vec<Interval> = point
        .iter()
        .map(|x| {
            let (lo, hi) = x.interval();
            Interval { lo, hi }
        })
        .collect();
    let mut acc = Interval::point(Q::zero());
    for (e, c) in poly.terms() {
        let (clo, chi) = c.interval();
        let mut t = Interval { lo: clo, hi: chi };
        for (b, &k) in boxes.iter().zip(e) {
            for _ in 0..k {
                t = t.mul(b);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

impl OrderedField for RcfNumber {
    fn sign(&self) -> Sign {
        RcfNumber::sign(self)
    }

    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }

    fn to_rational(&self) -> Option<Q> {
        RcfNumber::to_rational(self)
    }

    fn compare(&self, other: &Self) -> Ordering {
        RcfNumber::compare(self, other)
    }

    /// Interval evaluation on progressively refined isolating intervals; falls
    /// back to exact evaluation when the sign is zero or the intervals do not
    /// separate it from zero.
    fn sign_at(poly: &MPoly<Self>, point: &[Self]) -> Sign {
        if point.iter().all(|x| x.is_rational()) && poly.terms().all(|(_, c)| c.is_rational()) {
            return poly.eval(point).sign();
        }
        let mut pt: Vec<RcfNumber> = point.to_vec();
        let mut coeffs = poly.clone();
        for _ in 0..4 {
            if let Some(s) = eval_interval(&coeffs, &pt).sign() {
                return s;
            }
            pt = pt.iter().map(|x| x.bisect().bisect().bisect().bisect()).collect();
            coeffs = coeffs.map_coeffs(|c| c.bisect().bisect().bisect().bisect());
        }
        poly.eval(point).sign()
    }
}

impl fmt::Display for RcfNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RcfNumber::Rational(r) => write!(f, "{r}"),
            RcfNumber::Algebraic { minpoly, lo, hi } => write!(f, "alg({minpoly}, {lo}, {hi})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    fn sqrt(n: i64) -> RcfNumber {
        RcfNumber::sqrt_of(&qi(n)).unwrap()
    }

    #[test]
    fn isolation_examples() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let r = RcfNumber::make_algebraic(&p, &qi(1), &qi(2)).unwrap();
        assert!(!r.is_rational());
        let p4 = IntPoly::from_i64(&[-4, 0, 1]);
        assert_eq!(RcfNumber::make_algebraic(&p4, &qi(1), &qi(3)).unwrap(), RcfNumber::from(qi(2)));
        assert!(matches!(
            RcfNumber::make_algebraic(&p, &qi(2), &qi(3)),
            Err(RcfError::NoRootInInterval)
        ));
        assert!(matches!(
            RcfNumber::make_algebraic(&p, &qi(-2), &qi(2)),
            Err(RcfError::MultipleRootsInInterval)
        ));
    }

    #[test]
    fn field_arithmetic() {
        let s2 = sqrt(2);
        assert_eq!(s2.times(&s2), RcfNumber::from(qi(2)));
        assert!(s2.times(&s2).is_rational());
        assert_eq!(RcfNumber::from(q(1, 3)).plus(&RcfNumber::from(q(1, 6))), RcfNumber::from(q(1, 2)));
        let s6 = s2.times(&sqrt(3));
        assert_eq!(s6.minpoly(), IntPoly::from_i64(&[-6, 0, 1]));
        assert_eq!(s6.compare(&sqrt(6)), Ordering::Equal);
        assert_eq!(s2.plus(&s2.negated()), RcfNumber::zero());
        assert_eq!(s2.inv().unwrap().times(&s2), RcfNumber::one());
        assert!(matches!(RcfNumber::zero().inv(), Err(RcfError::DivisionByZero)));
    }

    #[test]
    fn ordering() {
        let s2 = sqrt(2);
        assert_eq!(s2.compare(&RcfNumber::from(q(3, 2))), Ordering::Less);
        assert_eq!(RcfNumber::zero().compare(&RcfNumber::zero()), Ordering::Equal);
        assert_eq!(s2.compare(&sqrt(3)), Ordering::Less);
        assert_eq!((s2.clone() - RcfNumber::one()).sign(), Sign::Positive);
        assert_eq!((RcfNumber::one() - s2).sign(), Sign::Negative);
    }

    #[test]
    fn interval_sign_certificate() {
        // x0^2 - 2 at √2 is exactly zero; x0 - 1 at √2 is positive
        let s2 = sqrt(2);
        let x = MPoly::<RcfNumber>::var(1, 0);
        let p = x.mul(&x).sub(&MPoly::constant(1, RcfNumber::from(qi(2))));
        assert_eq!(<RcfNumber as OrderedField>::sign_at(&p, &[s2.clone()]), Sign::Zero);
        let l = x.sub(&MPoly::one(1));
        assert_eq!(<RcfNumber as OrderedField>::sign_at(&l, &[s2]), Sign::Positive);
    }
}
