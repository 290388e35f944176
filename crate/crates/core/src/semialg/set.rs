//! Quantifier-free semi-algebraic sets and their rational sample grids.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::SemiAlgError;
use crate::poly::{MPoly, RationalFunction};
use crate::scalar::{OrderedField, Sign};

/// Relation of a polynomial to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl Rel {
    pub fn holds(self, s: Sign) -> bool {
        match self {
            Rel::Lt => s == Sign::Negative,
            Rel::Le => s != Sign::Positive,
            Rel::Eq => s == Sign::Zero,
            Rel::Ne => s != Sign::Zero,
            Rel::Ge => s != Sign::Negative,
            Rel::Gt => s == Sign::Positive,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ne => "!=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Rel> {
        Some(match s {
            "<" => Rel::Lt,
            "<=" => Rel::Le,
            "=" | "==" => Rel::Eq,
            "!=" => Rel::Ne,
            ">=" => Rel::Ge,
            ">" => Rel::Gt,
            _ => return None,
        })
    }
}

/// Boolean combination of sign conditions `p rel 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum Formula<C> {
    True,
    False,
    Atom(MPoly<C>, Rel),
    And(Vec<Formula<C>>),
    Or(Vec<Formula<C>>),
    Not(Box<Formula<C>>),
}

impl<C: OrderedField> Formula<C> {
    pub fn atom(p: MPoly<C>, rel: Rel) -> Self {
        Formula::Atom(p, rel)
    }

    pub fn and(parts: Vec<Formula<C>>) -> Self {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Formula::True => {}
                Formula::And(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Formula::True,
            1 => flat.pop().unwrap(),
            _ => Formula::And(flat),
        }
    }

    pub fn or(parts: Vec<Formula<C>>) -> Self {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Formula::False => {}
                Formula::Or(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Formula::False,
            1 => flat.pop().unwrap(),
            _ => Formula::Or(flat),
        }
    }

    pub fn not(f: Formula<C>) -> Self {
        Formula::Not(Box::new(f))
    }

    /// Exact truth value. Atoms are only evaluated when needed.
    pub fn holds(&self, point: &[C]) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(p, rel) => rel.holds(p.sign_at(point)),
            Formula::And(fs) => fs.iter().all(|f| f.holds(point)),
            Formula::Or(fs) => fs.iter().any(|f| f.holds(point)),
            Formula::Not(f) => !f.holds(point),
        }
    }

    /// Apply `f` to every atom polynomial.
    pub fn map_polys<D: OrderedField>(&self, f: &impl Fn(&MPoly<C>) -> MPoly<D>) -> Formula<D> {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(p, rel) => Formula::Atom(f(p), *rel),
            Formula::And(fs) => Formula::And(fs.iter().map(|g| g.map_polys(f)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|g| g.map_polys(f)).collect()),
            Formula::Not(g) => Formula::Not(Box::new(g.map_polys(f))),
        }
    }

    pub fn atoms(&self) -> Vec<(&MPoly<C>, Rel)> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<(&'a MPoly<C>, Rel)>) {
        match self {
            Formula::Atom(p, r) => out.push((p, *r)),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_atoms(out)),
            Formula::Not(f) => f.collect_atoms(out),
            _ => {}
        }
    }
}

impl<C: OrderedField> fmt::Display for Formula<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Atom(p, r) => write!(f, "{p} {} 0", r.symbol()),
            Formula::And(fs) | Formula::Or(fs) => {
                let op = if matches!(self, Formula::And(_)) { " and " } else { " or " };
                write!(f, "(")?;
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{op}")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ")")
            }
            Formula::Not(g) => write!(f, "not {g}"),
        }
    }
}

/// Where to look for rational sample points. Each block is a union of
/// standard simplices spanned by coordinate axes (one list of axes per
/// facet); the support is the product of the blocks with the unit interval
/// in every `box_coords` coordinate. Other coordinates are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Support {
    pub blocks: Vec<Vec<Vec<usize>>>,
    pub box_coords: Vec<usize>,
}

impl Support {
    pub fn simplex(coords: Vec<usize>) -> Self {
        Support { blocks: vec![vec![coords]], box_coords: vec![] }
    }

    /// Union of the simplices on the given facets.
    pub fn hulls(facets: Vec<Vec<usize>>) -> Self {
        Support { blocks: vec![facets], box_coords: vec![] }
    }

    pub fn unit_box(dim: usize) -> Self {
        Support { blocks: vec![], box_coords: (0..dim).collect() }
    }

    fn shifted(&self, by: usize) -> Self {
        Support {
            blocks: self
                .blocks
                .iter()
                .map(|b| b.iter().map(|f| f.iter().map(|i| i + by).collect()).collect())
                .collect(),
            box_coords: self.box_coords.iter().map(|i| i + by).collect(),
        }
    }

    fn product(&self, other: &Support, shift: usize) -> Self {
        let o = other.shifted(shift);
        let mut blocks = self.blocks.clone();
        blocks.extend(o.blocks);
        let mut box_coords = self.box_coords.clone();
        box_coords.extend(o.box_coords);
        Support { blocks, box_coords }
    }
}

/// Semi-algebraic subset of `K^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiAlgSet<C> {
    pub dim: usize,
    pub formula: Formula<C>,
    pub support: Support,
}

fn compositions(parts: usize, total: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(parts - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub(crate) fn cmp_points<C: OrderedField>(a: &[C], b: &[C]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.compare(y);
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

impl<C: OrderedField> SemiAlgSet<C> {
    pub fn new(dim: usize, formula: Formula<C>, support: Support) -> Self {
        SemiAlgSet { dim, formula, support }
    }

    pub fn contains(&self, point: &[C]) -> Result<bool, SemiAlgError> {
        if point.len() != self.dim {
            return Err(SemiAlgError::ArityMismatch { expected: self.dim, got: point.len() });
        }
        Ok(self.formula.holds(point))
    }

    /// Conjunction with further conditions, keeping this set's support.
    pub fn and(&self, extra: Formula<C>) -> Self {
        SemiAlgSet {
            dim: self.dim,
            formula: Formula::and(vec![self.formula.clone(), extra]),
            support: self.support.clone(),
        }
    }

    pub fn intersect(&self, other: &SemiAlgSet<C>) -> Result<Self, SemiAlgError> {
        if self.dim != other.dim {
            return Err(SemiAlgError::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        Ok(self.and(other.formula.clone()))
    }

    /// Cartesian product; the second factor's variables come after the
    /// first's.
    pub fn product(&self, other: &SemiAlgSet<C>) -> Self {
        let dim = self.dim + other.dim;
        let left: Vec<usize> = (0..self.dim).collect();
        let right: Vec<usize> = (self.dim..dim).collect();
        let f1 = self.formula.map_polys(&|p: &MPoly<C>| p.embed(dim, &left));
        let f2 = other.formula.map_polys(&|p: &MPoly<C>| p.embed(dim, &right));
        SemiAlgSet {
            dim,
            formula: Formula::and(vec![f1, f2]),
            support: self.support.product(&other.support, self.dim),
        }
    }

    /// Preimage under a rational map `K^m → K^dim`, valid where the map's
    /// denominators do not vanish. The support is taken from `support`.
    pub fn pullback(&self, comps: &[RationalFunction<C>], support: Support) -> Self {
        let m = comps.first().map(|c| c.nvars()).unwrap_or(0);
        let formula = self
            .formula
            .map_polys(&|p: &MPoly<C>| RationalFunction::sign_substitute(p, comps));
        SemiAlgSet { dim: m, formula, support }
    }

    pub fn map_coeffs<D: OrderedField>(&self, f: impl Fn(&C) -> D + Copy) -> SemiAlgSet<D> {
        SemiAlgSet {
            dim: self.dim,
            formula: self.formula.map_polys(&|p: &MPoly<C>| p.map_coeffs(f)),
            support: self.support.clone(),
        }
    }

    /// All points `x` of the support with `d·x` integral that lie in the set,
    /// sorted lexicographically, without repetitions.
    pub fn grid_points(&self, d: u32) -> Vec<Vec<C>> {
        assert!(d > 0, "grid denominator must be positive");
        let d = d as usize;
        let value = |k: usize| C::from_ratio(k as i64, d as i64);
        let mut hull_parts: Vec<Vec<C>> = vec![vec![C::zero(); self.dim]];
        for block in &self.support.blocks {
            let mut next = Vec::new();
            for base in &hull_parts {
                for facet in block {
                    for comp in compositions(facet.len(), d) {
                        let mut p = base.clone();
                        for (&i, &k) in facet.iter().zip(&comp) {
                            p[i] = value(k);
                        }
                        next.push(p);
                    }
                }
            }
            hull_parts = next;
        }
        let mut points = Vec::new();
        let nbox = self.support.box_coords.len();
        let grid_box = |base: &Vec<C>, points: &mut Vec<Vec<C>>| {
            let mut idx = vec![0usize; nbox];
            loop {
                let mut p = base.clone();
                for (j, &c) in self.support.box_coords.iter().enumerate() {
                    p[c] = value(idx[j]);
                }
                points.push(p);
                let mut j = 0;
                while j < nbox && idx[j] == d {
                    idx[j] = 0;
                    j += 1;
                }
                if j == nbox {
                    break;
                }
                idx[j] += 1;
            }
        };
        for base in &hull_parts {
            grid_box(base, &mut points);
        }
        points.sort_by(|a, b| cmp_points(a, b));
        points.dedup_by(|a, b| cmp_points(a, b) == Ordering::Equal);
        points.retain(|p| self.formula.holds(p));
        points
    }
}

impl SemiAlgSet<crate::Q> {
    pub fn base_change<D: OrderedField>(&self) -> SemiAlgSet<D> {
        self.map_coeffs(|c| D::from(c.clone()))
    }
}

fn coord<C: OrderedField>(dim: usize, i: usize) -> MPoly<C> {
    MPoly::var(dim, i)
}

fn konst<C: OrderedField>(dim: usize, num: i64, den: i64) -> MPoly<C> {
    MPoly::constant(dim, C::from_ratio(num, den))
}

fn simplex_formula<C: OrderedField>(dim: usize) -> Formula<C> {
    let sum = (0..dim).fold(konst::<C>(dim, -1, 1), |acc, i| acc.add(&coord(dim, i)));
    let mut parts = vec![Formula::atom(sum, Rel::Eq)];
    for i in 0..dim {
        parts.push(Formula::atom(coord(dim, i), Rel::Ge));
    }
    Formula::and(parts)
}

fn cube_formula<C: OrderedField>(dim: usize) -> Formula<C> {
    let mut parts = Vec::new();
    for i in 0..dim {
        parts.push(Formula::atom(coord(dim, i), Rel::Ge));
        parts.push(Formula::atom(coord::<C>(dim, i).sub(&konst(dim, 1, 1)), Rel::Le));
    }
    Formula::and(parts)
}

/// `x_i − x_0/2` and `x_i − 1 + x_0/2`, the lower and upper tent walls.
fn tent_walls<C: OrderedField>(dim: usize, i: usize) -> (MPoly<C>, MPoly<C>) {
    let half_t = coord::<C>(dim, 0).scale(&C::from_ratio(1, 2));
    let xi = coord::<C>(dim, i);
    (xi.sub(&half_t), xi.sub(&konst(dim, 1, 1)).add(&half_t))
}

/// `Δ^n`: points of `K^{n+1}` with nonnegative coordinates summing to one.
pub fn simplex<C: OrderedField>(n: usize) -> SemiAlgSet<C> {
    SemiAlgSet::new(n + 1, simplex_formula(n + 1), Support::simplex((0..=n).collect()))
}

/// `∂Δ^n`: some coordinate vanishes.
pub fn simplex_boundary<C: OrderedField>(n: usize) -> SemiAlgSet<C> {
    let dim = n + 1;
    let zeros = (0..dim).map(|i| Formula::atom(coord(dim, i), Rel::Eq)).collect();
    simplex(n).and(Formula::or(zeros))
}

/// `Λ^n_k`: some coordinate other than the `k`-th vanishes.
pub fn horn<C: OrderedField>(n: usize, k: usize) -> Result<SemiAlgSet<C>, SemiAlgError> {
    if k > n {
        return Err(SemiAlgError::BadIndex { index: k, bound: n });
    }
    let dim = n + 1;
    let zeros = (0..dim)
        .filter(|&i| i != k)
        .map(|i| Formula::atom(coord(dim, i), Rel::Eq))
        .collect();
    Ok(simplex(n).and(Formula::or(zeros)))
}

/// `Δ^n_0`: the facet `x_0 = 0`.
pub fn simplex_base<C: OrderedField>(n: usize) -> SemiAlgSet<C> {
    simplex(n).and(Formula::atom(coord(n + 1, 0), Rel::Eq))
}

/// `I^n`.
pub fn cube<C: OrderedField>(n: usize) -> SemiAlgSet<C> {
    SemiAlgSet::new(n, cube_formula(n), Support::unit_box(n))
}

/// `I = [0, 1]`.
pub fn interval<C: OrderedField>() -> SemiAlgSet<C> {
    cube(1)
}

/// `∂I^n`: some coordinate is 0 or 1.
pub fn cube_boundary<C: OrderedField>(n: usize) -> SemiAlgSet<C> {
    let mut faces = Vec::new();
    for i in 0..n {
        faces.push(Formula::atom(coord(n, i), Rel::Eq));
        faces.push(Formula::atom(coord::<C>(n, i).sub(&konst(n, 1, 1)), Rel::Eq));
    }
    cube(n).and(Formula::or(faces))
}

/// `T^n`: `0 ≤ x_0 ≤ 1` and `x_0/2 ≤ x_i ≤ 1 − x_0/2` for `i ≥ 1`.
pub fn tent<C: OrderedField>(n: usize) -> Result<SemiAlgSet<C>, SemiAlgError> {
    if n == 0 {
        return Err(SemiAlgError::BadIndex { index: 0, bound: 0 });
    }
    let mut parts = vec![
        Formula::atom(coord(n, 0), Rel::Ge),
        Formula::atom(coord::<C>(n, 0).sub(&konst(n, 1, 1)), Rel::Le),
    ];
    for i in 1..n {
        let (lower, upper) = tent_walls::<C>(n, i);
        parts.push(Formula::atom(lower, Rel::Ge));
        parts.push(Formula::atom(upper, Rel::Le));
    }
    Ok(SemiAlgSet::new(n, Formula::and(parts), Support::unit_box(n)))
}

/// `∂T^n`: the product `x_0 (1 − x_0) ∏ (x_i − x_0/2)(x_i − 1 + x_0/2)`
/// vanishes.
pub fn tent_boundary<C: OrderedField>(n: usize) -> Result<SemiAlgSet<C>, SemiAlgError> {
    let t = tent::<C>(n)?;
    let mut prod = coord::<C>(n, 0).mul(&konst::<C>(n, 1, 1).sub(&coord(n, 0)));
    for i in 1..n {
        let (lower, upper) = tent_walls::<C>(n, i);
        prod = prod.mul(&lower).mul(&upper);
    }
    Ok(t.and(Formula::atom(prod, Rel::Eq)))
}

/// `T^n_0`: the base `x_0 = 0` of the tent.
pub fn tent_base<C: OrderedField>(n: usize) -> Result<SemiAlgSet<C>, SemiAlgError> {
    Ok(tent::<C>(n)?.and(Formula::atom(coord(n, 0), Rel::Eq)))
}

/// Names accepted by [`canonical_set`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetKind {
    Simplex,
    SimplexBoundary,
    Horn,
    Cube,
    CubeBoundary,
    Tent,
    TentBoundary,
    SimplexBase,
    Interval,
}

impl SetKind {
    pub fn parse(s: &str) -> Option<SetKind> {
        Some(match s {
            "simplex" => SetKind::Simplex,
            "simplex_boundary" | "simplex-boundary" => SetKind::SimplexBoundary,
            "horn" => SetKind::Horn,
            "cube" => SetKind::Cube,
            "cube_boundary" | "cube-boundary" => SetKind::CubeBoundary,
            "tent" => SetKind::Tent,
            "tent_boundary" | "tent-boundary" => SetKind::TentBoundary,
            "simplex_base" | "simplex-base" => SetKind::SimplexBase,
            "interval" => SetKind::Interval,
            _ => return None,
        })
    }
}

pub fn canonical_set<C: OrderedField>(
    kind: SetKind,
    n: usize,
    k: Option<usize>,
) -> Result<SemiAlgSet<C>, SemiAlgError> {
    Ok(match kind {
        SetKind::Simplex => simplex(n),
        SetKind::SimplexBoundary => simplex_boundary(n),
        SetKind::Horn => horn(n, k.unwrap_or(0))?,
        SetKind::Cube => cube(n),
        SetKind::CubeBoundary => cube_boundary(n),
        SetKind::Tent => tent(n)?,
        SetKind::TentBoundary => tent_boundary(n)?,
        SetKind::SimplexBase => simplex_base(n),
        SetKind::Interval => interval(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};
    use crate::Q;

    #[test]
    fn membership_examples() {
        assert!(simplex::<Q>(1).contains(&[q(1, 2), q(1, 2)]).unwrap());
        assert!(horn::<Q>(2, 1).unwrap().contains(&[qi(0), qi(1), qi(0)]).unwrap());
        assert!(tent::<Q>(2).unwrap().contains(&[qi(1), q(1, 2)]).unwrap());
        assert!(!tent::<Q>(2).unwrap().contains(&[qi(1), q(1, 4)]).unwrap());
        assert!(matches!(
            simplex::<Q>(1).contains(&[qi(1)]),
            Err(SemiAlgError::ArityMismatch { .. })
        ));
        assert!(matches!(horn::<Q>(2, 3), Err(SemiAlgError::BadIndex { .. })));
    }

    #[test]
    fn simplex_formula_is_verbatim() {
        let s = simplex::<Q>(1);
        let atoms = s.formula.atoms();
        assert_eq!(atoms.len(), 3);
        assert_eq!(atoms[0].1, Rel::Eq);
        assert_eq!(atoms[0].0.eval(&[qi(1), qi(0)]), qi(0));
        assert!(atoms[1..].iter().all(|(_, r)| *r == Rel::Ge));
    }

    #[test]
    fn grid_sizes() {
        // C(d + n, n) barycentric points
        assert_eq!(simplex::<Q>(2).grid_points(4).len(), 15);
        assert_eq!(cube::<Q>(2).grid_points(4).len(), 25);
        // horn Λ²_1 on the denominator-2 grid: points of Δ² with x0 = 0 or x2 = 0
        assert_eq!(horn::<Q>(2, 1).unwrap().grid_points(2).len(), 5);
        let pts = simplex::<Q>(1).grid_points(2);
        assert_eq!(pts, vec![vec![qi(0), qi(1)], vec![q(1, 2), q(1, 2)], vec![qi(1), qi(0)]]);
    }

    #[test]
    fn tent_boundary_contains_apex() {
        let b = tent_boundary::<Q>(2).unwrap();
        assert!(b.contains(&[qi(1), q(1, 2)]).unwrap());
        assert!(!b.contains(&[q(1, 2), q(1, 2)]).unwrap());
    }
}
