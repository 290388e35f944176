//! Rational and piecewise-rational maps between semi-algebraic sets.

use super::set::{Formula, SemiAlgSet};
use super::SemiAlgError;
use crate::poly::{MPoly, RationalFunction};
use crate::scalar::OrderedField;
use crate::Q;

/// Componentwise rational map `K^source_dim → K^target_dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap<C> {
    pub source_dim: usize,
    pub components: Vec<RationalFunction<C>>,
}

impl<C: OrderedField> RationalMap<C> {
    pub fn new(source_dim: usize, components: Vec<RationalFunction<C>>) -> Self {
        assert!(components.iter().all(|c| c.nvars() == source_dim), "component arity");
        RationalMap { source_dim, components }
    }

    pub fn polynomial(source_dim: usize, comps: Vec<MPoly<C>>) -> Self {
        Self::new(source_dim, comps.into_iter().map(RationalFunction::from_poly).collect())
    }

    pub fn identity(dim: usize) -> Self {
        Self::polynomial(dim, (0..dim).map(|i| MPoly::var(dim, i)).collect())
    }

    pub fn constant(source_dim: usize, value: &[C]) -> Self {
        Self::polynomial(
            source_dim,
            value.iter().map(|c| MPoly::constant(source_dim, c.clone())).collect(),
        )
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    /// Exact value, or `None` where a denominator vanishes.
    pub fn eval(&self, point: &[C]) -> Option<Vec<C>> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &RationalMap<C>) -> Option<RationalMap<C>> {
        assert_eq!(inner.target_dim(), self.source_dim);
        let comps = self
            .components
            .iter()
            .map(|c| c.compose(&inner.components))
            .collect::<Option<Vec<_>>>()?;
        Some(RationalMap { source_dim: inner.source_dim, components: comps })
    }

    pub fn map_coeffs<D: OrderedField>(&self, f: impl Fn(&C) -> D + Copy) -> RationalMap<D> {
        RationalMap {
            source_dim: self.source_dim,
            components: self.components.iter().map(|c| c.map_coeffs(f)).collect(),
        }
    }
}

/// One cell of a piecewise map with the rational formula used on it.
#[derive(Clone, Debug, PartialEq)]
pub struct Piece<C> {
    pub cell: SemiAlgSet<C>,
    pub map: RationalMap<C>,
}

/// Anything that can be evaluated exactly at points of a semi-algebraic
/// source.
pub trait SemiAlgMap<C: OrderedField>: Sync {
    fn source(&self) -> &SemiAlgSet<C>;
    fn target_dim(&self) -> usize;
    fn eval(&self, point: &[C]) -> Result<Vec<C>, SemiAlgError>;
}

/// Map given by rational formulas on finitely many (possibly overlapping)
/// cells. Evaluation uses the first cell containing the point.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseMap<C> {
    pub source: SemiAlgSet<C>,
    pub target: SemiAlgSet<C>,
    pub pieces: Vec<Piece<C>>,
}

impl<C: OrderedField> PiecewiseMap<C> {
    pub fn new(source: SemiAlgSet<C>, target: SemiAlgSet<C>, pieces: Vec<Piece<C>>) -> Self {
        for p in &pieces {
            assert_eq!(p.cell.dim, source.dim, "cell dimension");
            assert_eq!(p.map.source_dim, source.dim, "piece source dimension");
            assert_eq!(p.map.target_dim(), target.dim, "piece target dimension");
        }
        PiecewiseMap { source, target, pieces }
    }

    /// Single piece defined on the whole source.
    pub fn single(source: SemiAlgSet<C>, target: SemiAlgSet<C>, map: RationalMap<C>) -> Self {
        let cell = source.clone();
        Self::new(source, target, vec![Piece { cell, map }])
    }

    pub fn identity(set: SemiAlgSet<C>) -> Self {
        let d = set.dim;
        Self::single(set.clone(), set, RationalMap::identity(d))
    }

    pub fn constant(source: SemiAlgSet<C>, target: SemiAlgSet<C>, value: &[C]) -> Self {
        let d = source.dim;
        Self::single(source, target, RationalMap::constant(d, value))
    }

    /// Values of every piece whose cell contains the point.
    pub fn eval_all(&self, point: &[C]) -> Result<Vec<(usize, Vec<C>)>, SemiAlgError> {
        if !self.source.contains(point)? {
            return Err(SemiAlgError::PointOutsideSource);
        }
        let mut out = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            if p.cell.contains(point)? {
                let v = p.map.eval(point).ok_or(SemiAlgError::DenominatorVanishes { piece: i })?;
                out.push((i, v));
            }
        }
        Ok(out)
    }

    /// Value of the first piece whose cell contains `point`.
    pub fn eval(&self, point: &[C]) -> Result<Vec<C>, SemiAlgError> {
        let i = self.piece_index(point)?;
        self.pieces[i]
            .map
            .eval(point)
            .ok_or(SemiAlgError::DenominatorVanishes { piece: i })
    }

    /// Index of the piece used for `point`.
    pub fn piece_index(&self, point: &[C]) -> Result<usize, SemiAlgError> {
        if !self.source.contains(point)? {
            return Err(SemiAlgError::PointOutsideSource);
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if p.cell.contains(point)? {
                return Ok(i);
            }
        }
        Err(SemiAlgError::NoPieceContainsPoint)
    }

    /// `second ∘ self`, with cells `cell_f ∧ f⁻¹(cell_g)` for every pair of
    /// pieces.
    pub fn then(&self, second: &PiecewiseMap<C>) -> Result<PiecewiseMap<C>, SemiAlgError> {
        if self.target.dim != second.source.dim {
            return Err(SemiAlgError::DimensionMismatch {
                expected: second.source.dim,
                got: self.target.dim,
            });
        }
        let mut pieces = Vec::new();
        for pf in &self.pieces {
            for pg in &second.pieces {
                // a composite with an identically vanishing denominator has
                // no point where the stepwise evaluation is defined, so the
                // pair contributes nothing
                let Some(map) = pg.map.after(&pf.map) else { continue };
                let pulled = pg.cell.pullback(&pf.map.components, pf.cell.support.clone());
                let cell = pf.cell.and(pulled.formula);
                pieces.push(Piece { cell, map });
            }
        }
        Ok(PiecewiseMap::new(self.source.clone(), second.target.clone(), pieces))
    }

    /// Restriction to `subset ∩ source`.
    pub fn restrict(&self, subset: &SemiAlgSet<C>) -> Result<PiecewiseMap<C>, SemiAlgError> {
        if subset.dim != self.source.dim {
            return Err(SemiAlgError::DimensionMismatch { expected: self.source.dim, got: subset.dim });
        }
        let source = SemiAlgSet {
            dim: self.source.dim,
            formula: Formula::and(vec![self.source.formula.clone(), subset.formula.clone()]),
            support: subset.support.clone(),
        };
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece { cell: p.cell.and(subset.formula.clone()), map: p.map.clone() })
            .collect();
        Ok(PiecewiseMap::new(source, self.target.clone(), pieces))
    }

    /// `id_front × self` on `front × source`, the identity factor first.
    pub fn with_identity_front(&self, front: &SemiAlgSet<C>) -> PiecewiseMap<C> {
        let k = front.dim;
        let n = k + self.source.dim;
        let back: Vec<usize> = (k..n).collect();
        let source = front.product(&self.source);
        let target = front.product(&self.target);
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                let formula = p.cell.formula.map_polys(&|q: &MPoly<C>| q.embed(n, &back));
                let cell = source.and(formula);
                let mut comps: Vec<RationalFunction<C>> =
                    (0..k).map(|i| RationalFunction::from_poly(MPoly::var(n, i))).collect();
                comps.extend(p.map.components.iter().map(|c| c.embed(n, &back)));
                Piece { cell, map: RationalMap::new(n, comps) }
            })
            .collect();
        PiecewiseMap::new(source, target, pieces)
    }

    pub fn map_coeffs<D: OrderedField>(&self, f: impl Fn(&C) -> D + Copy) -> PiecewiseMap<D> {
        PiecewiseMap {
            source: self.source.map_coeffs(f),
            target: self.target.map_coeffs(f),
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece { cell: p.cell.map_coeffs(f), map: p.map.map_coeffs(f) })
                .collect(),
        }
    }

    /// Every sampled point of the source lying in two or more cells on which
    /// the containing pieces disagree.
    pub fn disagreements(&self, points: &[Vec<C>]) -> Vec<Vec<C>> {
        points
            .iter()
            .filter(|p| match self.eval_all(p) {
                Ok(vals) => vals.windows(2).any(|w| w[0].1 != w[1].1),
                Err(_) => true,
            })
            .cloned()
            .collect()
    }
}

impl PiecewiseMap<Q> {
    /// The same formulas read over a larger real closed field.
    pub fn base_change<D: OrderedField>(&self) -> PiecewiseMap<D> {
        self.map_coeffs(|c| D::from(c.clone()))
    }
}

impl<C: OrderedField> SemiAlgMap<C> for PiecewiseMap<C> {
    fn source(&self) -> &SemiAlgSet<C> {
        &self.source
    }

    fn target_dim(&self) -> usize {
        self.target.dim
    }

    fn eval(&self, point: &[C]) -> Result<Vec<C>, SemiAlgError> {
        PiecewiseMap::eval(self, point)
    }
}

/// Composite `maps[last] ∘ … ∘ maps[0]` evaluated stage by stage, without
/// forming the symbolic composite.
pub struct Chain<'a, C> {
    pub maps: Vec<&'a PiecewiseMap<C>>,
}

impl<'a, C: OrderedField> Chain<'a, C> {
    pub fn new(maps: Vec<&'a PiecewiseMap<C>>) -> Self {
        assert!(!maps.is_empty());
        Chain { maps }
    }
}

impl<C: OrderedField> SemiAlgMap<C> for Chain<'_, C> {
    fn source(&self) -> &SemiAlgSet<C> {
        &self.maps[0].source
    }

    fn target_dim(&self) -> usize {
        self.maps.last().unwrap().target.dim
    }

    fn eval(&self, point: &[C]) -> Result<Vec<C>, SemiAlgError> {
        let mut x = point.to_vec();
        for m in &self.maps {
            x = SemiAlgMap::eval(*m, &x)?;
        }
        Ok(x)
    }
}

/// Single affine-per-cell piece helper: `x ↦ A x` given by target rows of
/// source coordinate weights.
pub(crate) fn linear_map<C: OrderedField>(source_dim: usize, rows: &[Vec<(usize, C)>]) -> RationalMap<C> {
    RationalMap::polynomial(
        source_dim,
        rows.iter()
            .map(|row| {
                row.iter().fold(MPoly::zero(source_dim), |acc, (i, c)| {
                    acc.add(&MPoly::var(source_dim, *i).scale(c))
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};
    use crate::semialg::set::{interval, simplex};

    #[test]
    fn identity_eval() {
        let id = PiecewiseMap::identity(simplex::<Q>(1));
        assert_eq!(id.eval(&[q(1, 4), q(3, 4)]).unwrap(), vec![q(1, 4), q(3, 4)]);
        assert!(matches!(id.eval(&[q(1, 4), q(1, 4)]), Err(SemiAlgError::PointOutsideSource)));
    }

    #[test]
    fn composition_checks_dimensions() {
        let a = PiecewiseMap::identity(simplex::<Q>(1));
        let b = PiecewiseMap::identity(simplex::<Q>(2));
        assert!(matches!(a.then(&b), Err(SemiAlgError::DimensionMismatch { .. })));
    }

    #[test]
    fn identity_front_product() {
        // id × (x0, x1) ↦ (x1, x0)
        let swap = PiecewiseMap::single(
            simplex::<Q>(1),
            simplex::<Q>(1),
            linear_map(2, &[vec![(1, qi(1))], vec![(0, qi(1))]]),
        );
        let p = swap.with_identity_front(&interval());
        assert_eq!(p.eval(&[q(1, 3), qi(1), qi(0)]).unwrap(), vec![q(1, 3), qi(0), qi(1)]);
    }
}
