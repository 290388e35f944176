//! Realizations `|A|_K ⊂ K^{A_v}` and piecewise-affine maps between them.

use std::collections::BTreeMap;

use super::{Complex, ComplexError, ComplexMap, VertexId};
use crate::poly::MPoly;
use crate::scalar::OrderedField;
use crate::semialg::{Formula, Piece, PiecewiseMap, RationalMap, Rel, SemiAlgError, SemiAlgSet, Support};

fn standard_simplex<C: OrderedField>(dim: usize) -> Formula<C> {
    let sum = (0..dim).fold(MPoly::constant(dim, -C::one()), |acc, i| acc.add(&MPoly::var(dim, i)));
    let mut parts = vec![Formula::atom(sum, Rel::Eq)];
    parts.extend((0..dim).map(|i| Formula::atom(MPoly::var(dim, i), Rel::Ge)));
    Formula::and(parts)
}

fn vanish_outside<C: OrderedField>(dim: usize, s: &[usize]) -> Formula<C> {
    Formula::and((0..dim).filter(|j| !s.contains(j)).map(|j| Formula::atom(MPoly::var(dim, j), Rel::Eq)).collect())
}

/// The closed simplex `[C]` inside `K^{A_v}`.
pub fn hull<C: OrderedField>(c: &Complex, s: &[usize]) -> SemiAlgSet<C> {
    let dim = c.num_vertices();
    SemiAlgSet::new(dim, Formula::and(vec![standard_simplex(dim), vanish_outside(dim, s)]), Support::simplex(s.to_vec()))
}

/// `|A|_K`: points of the standard simplex in `K^{A_v}` supported on a
/// simplex of `A`.
pub fn realization<C: OrderedField>(c: &Complex) -> SemiAlgSet<C> {
    let dim = c.num_vertices();
    let facets = c.facets();
    let on_facet = Formula::or(facets.iter().map(|f| vanish_outside(dim, f)).collect());
    SemiAlgSet::new(dim, Formula::and(vec![standard_simplex(dim), on_facet]), Support::hulls(facets))
}

fn linear_piece<C: OrderedField>(c: &Complex, s: &[usize], images: &[Vec<C>]) -> Piece<C> {
    let dim = c.num_vertices();
    let tdim = images.first().map_or(0, |v| v.len());
    let comps = (0..tdim)
        .map(|k| {
            s.iter().fold(MPoly::zero(dim), |acc, &j| acc.add(&MPoly::var(dim, j).scale(&images[j][k])))
        })
        .collect();
    Piece { cell: hull(c, s), map: RationalMap::polynomial(dim, comps) }
}

/// `|f|_K(x) = Σ x_j e_{f(v_j)}`, one affine piece per simplex.
pub fn realize_map<C: OrderedField>(f: &ComplexMap) -> PiecewiseMap<C> {
    let n = f.target.num_vertices();
    let images: Vec<Vec<C>> = f
        .vertex_map
        .iter()
        .map(|&w| (0..n).map(|k| if k == w { C::one() } else { C::zero() }).collect())
        .collect();
    let pieces = f.source.simplices().iter().map(|s| linear_piece(&f.source, s, &images)).collect();
    PiecewiseMap::new(realization(&f.source), realization(&f.target), pieces)
}

/// Target points for the vertices of some simplices, listed in the order
/// the simplex lists its vertex ids.
pub type Assignment<C> = Vec<(Vec<VertexId>, Vec<Vec<C>>)>;

/// Glue the affine maps on simplices determined by an assignment of
/// vertex images. Every vertex must receive exactly one image.
pub fn adjunction_decode<C: OrderedField>(
    c: &Complex,
    assignment: &Assignment<C>,
    target: SemiAlgSet<C>,
) -> Result<PiecewiseMap<C>, ComplexError> {
    let mut per_vertex: BTreeMap<usize, Vec<C>> = BTreeMap::new();
    for (ids, pts) in assignment {
        if ids.len() != pts.len() || pts.iter().any(|p| p.len() != target.dim) {
            return Err(ComplexError::Parse("assignment arity".into()));
        }
        let mut s = ids.iter().map(|&v| c.position(v)).collect::<Result<Vec<_>, _>>()?;
        for (&j, p) in s.iter().zip(pts) {
            if let Some(old) = per_vertex.insert(j, p.clone()) {
                if old != *p {
                    return Err(ComplexError::IncompatibleOnFace(c.vertices()[j]));
                }
            }
        }
        s.sort_unstable();
        if !c.contains(&s) {
            return Err(ComplexError::NotSimplicial(ids.clone()));
        }
    }
    let images = (0..c.num_vertices())
        .map(|j| per_vertex.remove(&j).ok_or(ComplexError::Parse(format!("vertex {} unassigned", c.vertices()[j]))))
        .collect::<Result<Vec<_>, _>>()?;
    let pieces = c.simplices().iter().map(|s| linear_piece(c, s, &images)).collect();
    Ok(PiecewiseMap::new(realization(c), target, pieces))
}

/// Values of a map on `|A|_K` at the vertices.
pub fn vertex_images<C: OrderedField>(f: &PiecewiseMap<C>, c: &Complex) -> Result<Vec<Vec<C>>, SemiAlgError> {
    let n = c.num_vertices();
    (0..n)
        .map(|j| {
            let e: Vec<C> = (0..n).map(|k| if k == j { C::one() } else { C::zero() }).collect();
            f.eval(&e)
        })
        .collect()
}
