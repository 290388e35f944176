//! Sparse multivariate polynomials and rational functions over an ordered
//! field.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::scalar::{is_one, OrderedField, Sign};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Sparse polynomial in `nvars` variables. Terms are keyed by exponent
/// vectors; the map order is lexicographic with `x0` most significant, so the
/// last entry is the lex-leading term.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: OrderedField> MPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, C::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent arity");
            p.add_term(e, c);
        }
        p
    }

    /// Affine form `c0 + Σ coeffs[i]·x_i`.
    pub fn affine(c0: C, coeffs: &[C]) -> Self {
        let n = coeffs.len();
        let mut p = Self::constant(n, c0);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> C {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(C::zero)
    }

    fn add_term(&mut self, e: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone() * k.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Exact evaluation. Panics on arity mismatch; see [`MPoly::try_eval`].
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars, "point arity mismatch");
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn try_eval(&self, point: &[C]) -> Option<C> {
        (point.len() == self.nvars).then(|| self.eval(point))
    }

    /// Exact sign at a point, through the scalar's certified sign routine.
    pub fn sign_at(&self, point: &[C]) -> Sign {
        assert_eq!(point.len(), self.nvars, "point arity mismatch");
        C::sign_at(self, point)
    }

    /// Exact quotient, when `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (ed, cd) = d.leading()?;
        let (ed, cd) = (ed.clone(), cd.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((er, cr)) = rem.leading() {
            if er.iter().zip(&ed).any(|(a, b)| a < b) {
                return None;
            }
            let e: Monomial = er.iter().zip(&ed).map(|(a, b)| a - b).collect();
            let c = cr.try_div(&cd)?;
            let mut t = Self::zero(self.nvars);
            t.add_term(e, c);
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Scale so that the lex-leading coefficient is one; returns the scale
    /// that was divided out.
    pub fn monic(&self) -> (C, Self) {
        match self.leading() {
            None => (C::one(), self.clone()),
            Some((_, c)) => {
                let c = c.clone();
                let inv = c.try_inv().expect("nonzero leading coefficient");
                (c, self.scale(&inv))
            }
        }
    }

    pub fn map_coeffs<D: OrderedField>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        MPoly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Re-index into `new_nvars` variables, sending `x_i` to `x_{map[i]}`.
    pub fn embed(&self, new_nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; new_nvars];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Substitute polynomials for the variables.
    pub fn compose(&self, subs: &[MPoly<C>]) -> MPoly<C> {
        assert_eq!(subs.len(), self.nvars);
        let target = subs.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<MPoly<C>>> = subs.iter().map(|s| vec![MPoly::one(s.nvars), s.clone()]).collect();
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while cache[i].len() <= k {
                    let next = cache[i].last().unwrap().mul(&subs[i]);
                    cache[i].push(next);
                }
                if k > 0 {
                    t = t.mul(&cache[i][k]);
                }
            }
            out = out.add(&t);
        }
        out
    }
}

impl<C: OrderedField> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if is_one(c) {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Rational function `num / ∏ factor^exp`. Each denominator factor is a
/// non-constant polynomial with lex-leading coefficient one; constants are
/// folded into the numerator.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction<C> {
    num: MPoly<C>,
    den: Vec<(MPoly<C>, u32)>,
}

impl<C: OrderedField> RationalFunction<C> {
    pub fn from_poly(p: MPoly<C>) -> Self {
        RationalFunction { num: p, den: vec![] }
    }

    /// `num / den`. Returns `None` when `den` is the zero polynomial.
    pub fn new(num: MPoly<C>, den: MPoly<C>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let (lc, phi) = den.monic();
        let num = num.scale(&lc.try_inv()?);
        if phi.is_constant() {
            return Some(Self::from_poly(num));
        }
        let mut r = RationalFunction { num, den: vec![(phi, 1)] };
        r.cancel();
        Some(r)
    }

    pub fn num(&self) -> &MPoly<C> {
        &self.num
    }

    pub fn den_factors(&self) -> &[(MPoly<C>, u32)] {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// Expanded denominator polynomial.
    pub fn den(&self) -> MPoly<C> {
        let n = self.num.nvars();
        self.den
            .iter()
            .fold(MPoly::one(n), |acc, (f, k)| acc.mul(&f.pow(*k)))
    }

    /// Value at a point; `None` where a denominator factor vanishes.
    pub fn eval(&self, point: &[C]) -> Option<C> {
        let mut d = C::one();
        for (f, k) in &self.den {
            let v = f.eval(point);
            if v.is_zero() {
                return None;
            }
            for _ in 0..*k {
                d = d * v.clone();
            }
        }
        self.num.eval(point).try_div(&d)
    }

    fn cancel(&mut self) {
        let mut i = 0;
        while i < self.den.len() {
            while self.den[i].1 > 0 {
                match self.num.div_exact(&self.den[i].0) {
                    Some(q) => {
                        self.num = q;
                        self.den[i].1 -= 1;
                    }
                    None => break,
                }
            }
            if self.den[i].1 == 0 {
                self.den.remove(i);
            } else {
                i += 1;
            }
        }
        if self.num.is_zero() {
            self.den.clear();
        }
    }

    pub fn map_coeffs<D: OrderedField>(&self, f: impl Fn(&C) -> D + Copy) -> RationalFunction<D> {
        RationalFunction {
            num: self.num.map_coeffs(f),
            den: self.den.iter().map(|(p, k)| (p.map_coeffs(f), *k)).collect(),
        }
    }

    pub fn embed(&self, new_nvars: usize, map: &[usize]) -> Self {
        RationalFunction {
            num: self.num.embed(new_nvars, map),
            den: self.den.iter().map(|(p, k)| (p.embed(new_nvars, map), *k)).collect(),
        }
    }

    fn merge_factor(den: &mut Vec<(MPoly<C>, u32)>, f: MPoly<C>, k: u32) {
        match den.iter_mut().find(|(g, _)| *g == f) {
            Some(entry) => entry.1 += k,
            None => den.push((f, k)),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        for (f, k) in &other.den {
            Self::merge_factor(&mut den, f.clone(), *k);
        }
        let mut r = RationalFunction { num: self.num.mul(&other.num), den };
        r.cancel();
        r
    }

    /// `self / other`; `None` if `other` is zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.num.is_zero() {
            return None;
        }
        let (lc, phi) = other.num.monic();
        let mut num = self.num.mul(&other.den()).scale(&lc.try_inv()?);
        let mut den = self.den.clone();
        if phi.is_constant() {
            num = num.scale(&phi.constant_term().try_inv()?);
        } else {
            Self::merge_factor(&mut den, phi, 1);
        }
        let mut r = RationalFunction { num, den };
        r.cancel();
        Some(r)
    }

    /// `self(comps[0], …)`; `None` if a denominator becomes identically zero.
    pub fn compose(&self, comps: &[RationalFunction<C>]) -> Option<Self> {
        let mut out = Self::substitute(&self.num, comps);
        for (f, k) in &self.den {
            let g = Self::substitute(f, comps);
            for _ in 0..*k {
                out = out.div(&g)?;
            }
        }
        Some(out)
    }

    /// Sign-equivalent polynomial of `p ∘ comps`: wherever every denominator
    /// of `comps` is nonzero, `sign(p(comps(x))) = sign(result(x))`.
    pub fn sign_substitute(p: &MPoly<C>, comps: &[RationalFunction<C>]) -> MPoly<C> {
        let r = Self::substitute(p, comps);
        r.den
            .iter()
            .filter(|(_, k)| k % 2 == 1)
            .fold(r.num.clone(), |acc, (f, _)| acc.mul(f))
    }

    /// `p(comps[0], …, comps[n−1])` over a common factored denominator, with
    /// repeated factors cancelled where the numerator is divisible.
    pub fn substitute(p: &MPoly<C>, comps: &[RationalFunction<C>]) -> RationalFunction<C> {
        assert_eq!(p.nvars(), comps.len(), "substitution arity");
        let nv = comps.first().map(|c| c.nvars()).unwrap_or(0);
        // factor basis shared by all components
        let mut basis: Vec<MPoly<C>> = Vec::new();
        let mut exps: Vec<Vec<u32>> = Vec::new();
        for c in comps {
            let mut row = vec![0; basis.len()];
            for (f, k) in &c.den {
                match basis.iter().position(|b| b == f) {
                    Some(j) => row[j] += k,
                    None => {
                        basis.push(f.clone());
                        for r in exps.iter_mut() {
                            r.push(0);
                        }
                        row.push(*k);
                    }
                }
            }
            exps.push(row);
        }
        for r in exps.iter_mut() {
            r.resize(basis.len(), 0);
        }
        let needed = |e: &Monomial, j: usize| -> u32 {
            e.iter().enumerate().map(|(i, &a)| a * exps[i][j]).sum()
        };
        let big_l: Vec<u32> = (0..basis.len())
            .map(|j| p.terms().map(|(e, _)| needed(e, j)).max().unwrap_or(0))
            .collect();
        let mut num_pows: Vec<Vec<MPoly<C>>> =
            comps.iter().map(|c| vec![MPoly::one(nv), c.num.clone()]).collect();
        let mut den_pows: Vec<Vec<MPoly<C>>> =
            basis.iter().map(|f| vec![MPoly::one(nv), f.clone()]).collect();
        fn power<C: OrderedField>(cache: &mut Vec<MPoly<C>>, k: usize) -> MPoly<C> {
            while cache.len() <= k {
                let next = cache.last().unwrap().mul(&cache[1]);
                cache.push(next);
            }
            cache[k].clone()
        }
        let mut num = MPoly::zero(nv);
        for (e, c) in p.terms() {
            let mut t = MPoly::constant(nv, c.clone());
            for (i, &a) in e.iter().enumerate() {
                if a > 0 {
                    t = t.mul(&power(&mut num_pows[i], a as usize));
                }
            }
            for j in 0..basis.len() {
                let k = big_l[j] - needed(e, j);
                if k > 0 {
                    t = t.mul(&power(&mut den_pows[j], k as usize));
                }
            }
            num = num.add(&t);
        }
        let mut r = RationalFunction {
            num,
            den: basis.into_iter().zip(big_l).filter(|(_, k)| *k > 0).collect(),
        };
        r.cancel();
        r
    }
}

impl RationalFunction<BigRational> {
    /// Promote the coefficients into another field containing the rationals.
    pub fn base_change<D: OrderedField>(&self) -> RationalFunction<D> {
        self.map_coeffs(|c| D::from(c.clone()))
    }
}

impl<C: OrderedField> fmt::Display for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        for (i, (p, k)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *k == 1 {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p})^{k}")?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    type P = MPoly<BigRational>;
    type R = RationalFunction<BigRational>;

    #[test]
    fn arithmetic_and_eval() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let p = x.add(&y).sub(&P::one(2));
        assert_eq!(p.eval(&[q(1, 2), q(1, 2)]), qi(0));
        let sq = p.mul(&p);
        assert_eq!(sq.eval(&[qi(1), qi(1)]), qi(1));
        assert_eq!(sq.total_degree(), 2);
    }

    #[test]
    fn exact_division() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let a = x.add(&y);
        let b = x.sub(&y);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.add(&P::one(2)).div_exact(&a), None);
    }

    #[test]
    fn substitution_cancels_common_factors() {
        // t = x / (1 - y); substitute into p(t) = t*(1-y)... done in two
        // variables: p(u, v) = u * v with u = x/(1-y), v = 1 - y
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let one_minus_y = P::one(2).sub(&y);
        let u = R::new(x.clone(), one_minus_y.clone()).unwrap();
        let v = R::from_poly(one_minus_y);
        let p = P::var(2, 0).mul(&P::var(2, 1));
        let r = R::substitute(&p, &[u, v]);
        assert!(r.is_polynomial());
        assert_eq!(r.num(), &x);
    }

    #[test]
    fn sign_substitute_tracks_denominator_sign() {
        // p(u) = u with u = 1 / (x - 1): sign is sign(x - 1)
        let x = P::var(1, 0);
        let u = R::new(P::one(1), x.sub(&P::one(1))).unwrap();
        let s = R::sign_substitute(&P::var(1, 0), &[u]);
        assert_eq!(s.eval(&[qi(0)]).sign(), Sign::Negative);
        assert_eq!(s.eval(&[qi(3)]).sign(), Sign::Positive);
    }
}
