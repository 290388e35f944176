//! Dense univariate polynomials with integer coefficients: Sturm sequences,
//! gcds, resultants, and the small amount of rational plumbing the real
//! algebraic kernel needs.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Sign;

type Q = BigRational;

/// Integer polynomial, coefficients from the constant term upward, no
/// trailing zeros. The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `den·x − num`, the primitive linear polynomial vanishing at `r`.
    pub fn linear_root(r: &Q) -> Self {
        Self::new(vec![-r.numer().clone(), r.denom().clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn neg(&self) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `p(−x)`.
    pub fn reflect(&self) -> Self {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `x^deg · p(1/x)`.
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    pub fn eval_q(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Q::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of `p(x)` computed by homogenised integer evaluation.
    pub fn sign_at(&self, x: &Q) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        let (num, den) = (x.numer(), x.denom());
        let d = self.degree();
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        // sum a_i num^i den^(d-i), accumulated from the top coefficient down
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if i == d {
                acc = c.clone();
            } else {
                den_pow *= den;
                acc = acc * num + c * &den_pow;
            }
        }
        // den > 0 so the homogenisation does not change the sign
        Sign::of_bigint(&acc)
    }

    /// Polynomial with rational coefficients cleared to a primitive integer
    /// polynomial with the same roots.
    pub fn from_rational_coeffs(coeffs: &[Q]) -> Self {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPoly::new(
            coeffs
                .iter()
                .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
                .collect(),
        )
        .primitive()
    }

    pub fn to_rational_coeffs(&self) -> Vec<Q> {
        self.coeffs.iter().map(|c| Q::from_integer(c.clone())).collect()
    }

    /// `p(x − r)` made primitive: the polynomial whose roots are shifted by `r`.
    pub fn shift_roots(&self, r: &Q) -> Self {
        // Taylor shift by repeated synthetic expansion in rational arithmetic.
        let n = self.coeffs.len();
        let mut out = vec![Q::zero(); n];
        let neg_r = -r.clone();
        // Horner in the polynomial ring: acc = acc * (x - r) + c
        for c in self.coeffs.iter().rev() {
            let mut next = vec![Q::zero(); n];
            for i in 0..n {
                if out[i].is_zero() {
                    continue;
                }
                if i + 1 < n {
                    next[i + 1] += &out[i];
                }
                next[i] += &out[i] * &neg_r;
            }
            next[0] += Q::from_integer(c.clone());
            out = next;
        }
        IntPoly::from_rational_coeffs(&out)
    }

    /// The primitive polynomial whose roots are those of `p` multiplied by
    /// `r ≠ 0`: `p(x / r)` cleared of denominators.
    pub fn scale_roots(&self, r: &Q) -> Self {
        let inv = r.recip();
        let mut pow = Q::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(Q::from_integer(c.clone()) * &pow);
            pow *= &inv;
        }
        IntPoly::from_rational_coeffs(&out)
    }

    /// Division with remainder over the rationals.
    pub fn divrem_q(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
        let b = trim_q(b.to_vec());
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = trim_q(a.to_vec());
        if r.len() < b.len() {
            return (vec![], r);
        }
        let mut quot = vec![Q::zero(); r.len() - b.len() + 1];
        let lb = b.last().unwrap().clone();
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let f = r.last().unwrap() / &lb;
            for (i, bc) in b.iter().enumerate() {
                r[shift + i] -= &f * bc;
            }
            quot[shift] = f;
            r.pop();
            r = trim_q(r);
        }
        (trim_q(quot), r)
    }

    /// Exact quotient in `Z[x]`, if `d` divides `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        let (quot, rem) = Self::divrem_q(&self.to_rational_coeffs(), &d.to_rational_coeffs());
        if !rem.is_empty() {
            return None;
        }
        if quot.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(IntPoly::new(quot.into_iter().map(|c| c.to_integer()).collect()))
    }

    /// Pseudo-remainder `lc(b)^(deg a − deg b + 1) · a mod b`, kept in `Z[x]`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero());
        let mut r = self.clone();
        if r.coeffs.len() < b.coeffs.len() {
            return r;
        }
        let lb = b.lead();
        let mut steps = self.degree() - b.degree() + 1;
        while !r.is_zero() && r.degree() >= b.degree() {
            let shift = r.degree() - b.degree();
            let lr = r.lead();
            let mut next = r.scale(&lb);
            for (i, bc) in b.coeffs.iter().enumerate() {
                next.coeffs[shift + i] -= &lr * bc;
            }
            r = IntPoly::new(next.coeffs);
            steps -= 1;
        }
        for _ in 0..steps {
            r = r.scale(&lb);
        }
        r
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// `p / gcd(p, p')`, primitive.
    pub fn squarefree(&self) -> IntPoly {
        if self.degree() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.primitive()
            .div_exact(&g)
            .expect("gcd divides its argument")
            .primitive()
    }

    /// Sturm sequence of a squarefree polynomial; members are scaled by
    /// positive constants only.
    pub fn sturm_sequence(&self) -> Vec<IntPoly> {
        let mut seq = vec![self.clone()];
        if self.degree() == 0 {
            return seq;
        }
        seq.push(self.derivative());
        loop {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            let mut r = a.pseudo_rem(b);
            let power = a.degree() - b.degree() + 1;
            if b.lead().is_negative() && power % 2 == 1 {
                r = r.neg();
            }
            if r.is_zero() {
                break;
            }
            let c = r.content();
            let next = IntPoly::new(r.coeffs.iter().map(|x| -(x / &c)).collect());
            seq.push(next);
        }
        seq
    }

    /// Distinct real roots in the open interval `(lo, hi)`.
    pub fn count_roots(&self, lo: &Q, hi: &Q) -> usize {
        let seq = self.sturm_sequence();
        count_roots_with(&seq, lo, hi)
    }

    /// Cauchy bound: every real root has absolute value below it.
    pub fn root_bound(&self) -> Q {
        let lead = Q::from_integer(self.lead().abs());
        let max = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| Q::from_integer(c.abs()))
            .max()
            .unwrap_or_else(Q::zero);
        Q::one() + max / lead
    }
}

/// Root count in `(lo, hi)` given a precomputed Sturm sequence.
pub fn count_roots_with(seq: &[IntPoly], lo: &Q, hi: &Q) -> usize {
    let vl = sign_changes(seq, lo);
    let vh = sign_changes(seq, hi);
    let mut n = vl.saturating_sub(vh);
    if seq[0].sign_at(hi) == Sign::Zero {
        n = n.saturating_sub(1);
    }
    n
}

fn sign_changes(seq: &[IntPoly], x: &Q) -> usize {
    let mut prev = Sign::Zero;
    let mut changes = 0;
    for p in seq {
        let s = p.sign_at(x);
        if s == Sign::Zero {
            continue;
        }
        if prev != Sign::Zero && s != prev {
            changes += 1;
        }
        prev = s;
    }
    changes
}

fn trim_q(mut v: Vec<Q>) -> Vec<Q> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Resultant of two univariate rational polynomials (Euclidean recurrence).
pub fn resultant_q(a: &[Q], b: &[Q]) -> Q {
    let a = trim_q(a.to_vec());
    let b = trim_q(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return Q::zero();
    }
    let da = a.len() - 1;
    let db = b.len() - 1;
    if db == 0 {
        return num_traits::pow(b[0].clone(), da);
    }
    if da == 0 {
        return num_traits::pow(a[0].clone(), db);
    }
    if da < db {
        let r = resultant_q(&b, &a);
        return if (da * db) % 2 == 1 { -r } else { r };
    }
    let (_, r) = IntPoly::divrem_q(&a, &b);
    if r.is_empty() {
        return Q::zero();
    }
    let dr = r.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut out = num_traits::pow(lb, da - dr) * resultant_q(&b, &r);
    if (da * db) % 2 == 1 {
        out = -out;
    }
    out
}

/// Interpolate the integer polynomial of degree ≤ `xs.len() − 1` through
/// `(xs[i], ys[i])` (Newton divided differences over the rationals).
fn interpolate(xs: &[Q], ys: &[Q]) -> Vec<Q> {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    // expand Newton form
    let mut poly = vec![Q::zero(); n];
    for i in (0..n).rev() {
        // poly = poly * (x - xs[i]) + coef[i]
        let mut next = vec![Q::zero(); n];
        for k in 0..n {
            if poly[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += &poly[k];
            }
            next[k] -= &poly[k] * &xs[i];
        }
        next[0] += &coef[i];
        poly = next;
    }
    poly
}

/// Resultant in `y` of `p(y)` and a family of polynomials in `y` depending on
/// an integer parameter `x`, as a polynomial in `x` of degree at most `deg`.
fn parametric_resultant(p: &IntPoly, deg: usize, q_at: impl Fn(&Q) -> Vec<Q>) -> IntPoly {
    let pq = p.to_rational_coeffs();
    let xs: Vec<Q> = (0..=deg as i64).map(|i| Q::from_integer(BigInt::from(i))).collect();
    let ys: Vec<Q> = xs.iter().map(|x| resultant_q(&pq, &q_at(x))).collect();
    IntPoly::from_rational_coeffs(&interpolate(&xs, &ys))
}

/// Polynomial vanishing at every `α + β` with `p(α) = 0`, `q(β) = 0`:
/// `Res_y(p(y), q(x − y))`.
pub fn sum_polynomial(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let deg = p.degree() * q.degree();
    let qc = q.to_rational_coeffs();
    parametric_resultant(p, deg, |x| {
        // q(x - y) as a polynomial in y
        let mut out = vec![Q::zero(); qc.len()];
        // (x - y)^i expanded by binomial recurrence
        let mut pow = vec![Q::one()];
        for (i, c) in qc.iter().enumerate() {
            if i > 0 {
                let mut next = vec![Q::zero(); pow.len() + 1];
                for (k, v) in pow.iter().enumerate() {
                    next[k] += v * x;
                    next[k + 1] -= v;
                }
                pow = next;
            }
            for (k, v) in pow.iter().enumerate() {
                out[k] += v * c;
            }
        }
        out
    })
}

/// Polynomial vanishing at every `α · β`: `Res_y(p(y), y^m q(x / y))`.
pub fn product_polynomial(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let deg = p.degree() * q.degree();
    let m = q.degree();
    let qc = q.to_rational_coeffs();
    parametric_resultant(p, deg, |x| {
        let mut out = vec![Q::zero(); m + 1];
        let mut xp = Q::one();
        for (i, c) in qc.iter().enumerate() {
            out[m - i] = c * &xp;
            xp *= x;
        }
        out
    })
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn sturm_counts_roots() {
        // (x-1)(x-2)(x-3)
        let p = IntPoly::from_i64(&[-6, 11, -6, 1]);
        assert_eq!(p.count_roots(&q(0, 1), &q(4, 1)), 3);
        assert_eq!(p.count_roots(&q(3, 2), &q(5, 2)), 1);
        // roots on the endpoints are excluded
        assert_eq!(p.count_roots(&q(1, 1), &q(3, 1)), 1);
        let two = IntPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(two.count_roots(&q(1, 1), &q(2, 1)), 1);
        assert_eq!(two.count_roots(&q(2, 1), &q(3, 1)), 0);
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = IntPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = IntPoly::from_i64(&[1, 2, 1]); // (x+1)^2
        assert_eq!(a.gcd(&b), IntPoly::from_i64(&[1, 1]));
        assert_eq!(b.squarefree(), IntPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn resultant_sum_and_product() {
        let two = IntPoly::from_i64(&[-2, 0, 1]);
        let three = IntPoly::from_i64(&[-3, 0, 1]);
        // roots ±√2 ± √3: x^4 - 10x^2 + 1
        assert_eq!(sum_polynomial(&two, &three), IntPoly::from_i64(&[1, 0, -10, 0, 1]));
        // roots ±√6 twice: (x^2 - 6)^2
        assert_eq!(product_polynomial(&two, &three), IntPoly::from_i64(&[36, 0, -12, 0, 1]));
    }

    #[test]
    fn shift_and_scale_roots() {
        let two = IntPoly::from_i64(&[-2, 0, 1]);
        // roots of x^2-2 shifted by -1: (x+1)^2 - 2 = x^2 + 2x - 1
        assert_eq!(two.shift_roots(&q(-1, 1)), IntPoly::from_i64(&[-1, 2, 1]));
        // roots times 1/2: 4x^2 - 2 → 2x^2 - 1
        assert_eq!(two.scale_roots(&q(1, 2)), IntPoly::from_i64(&[-1, 0, 2]));
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[-2, 0, 1]).to_string(), "x^2-2");
        assert_eq!(IntPoly::from_i64(&[1, -1, 3]).to_string(), "3x^2-x+1");
    }
}
