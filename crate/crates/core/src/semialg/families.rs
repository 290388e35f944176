//! The explicit maps: face/degeneracy maps of simplices, horn retractions,
//! the simplex–cube pair isomorphism, the contraction of a simplex, and
//! concatenation of based spheres.

use super::map::{linear_map, Piece, PiecewiseMap, RationalMap, SemiAlgMap};
use super::set::{
    cube, horn, interval, simplex, simplex_boundary, tent, Formula, Rel, SemiAlgSet,
};
use super::SemiAlgError;
use crate::poly::{MPoly, RationalFunction};
use crate::scalar::OrderedField;

fn var<C: OrderedField>(n: usize, i: usize) -> MPoly<C> {
    MPoly::var(n, i)
}

fn konst<C: OrderedField>(n: usize, num: i64, den: i64) -> MPoly<C> {
    MPoly::constant(n, C::from_ratio(num, den))
}

fn ratio<C: OrderedField>(num: MPoly<C>, den: MPoly<C>) -> RationalFunction<C> {
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// The affine map `Δ^n → Δ^m` induced by an order-preserving
/// `phi: {0..n} → {0..m}`: `s_i = Σ_{φ(j) = i} t_j`.
pub fn delta_map<C: OrderedField>(phi: &[usize], m: usize) -> Result<PiecewiseMap<C>, SemiAlgError> {
    if phi.is_empty() {
        return Err(SemiAlgError::BadIndex { index: 0, bound: 0 });
    }
    if let Some(&bad) = phi.iter().find(|&&v| v > m) {
        return Err(SemiAlgError::BadIndex { index: bad, bound: m });
    }
    if phi.windows(2).any(|w| w[0] > w[1]) {
        return Err(SemiAlgError::NotMonotone);
    }
    let n = phi.len() - 1;
    let rows: Vec<Vec<(usize, C)>> = (0..=m)
        .map(|i| {
            phi.iter()
                .enumerate()
                .filter(|(_, &v)| v == i)
                .map(|(j, _)| (j, C::one()))
                .collect()
        })
        .collect();
    Ok(PiecewiseMap::single(simplex(n), simplex(m), linear_map(n + 1, &rows)))
}

/// The inclusion `Λ^n_k → Δ^n`.
pub fn horn_inclusion<C: OrderedField>(n: usize, k: usize) -> Result<PiecewiseMap<C>, SemiAlgError> {
    Ok(PiecewiseMap::single(horn(n, k)?, simplex(n), RationalMap::identity(n + 1)))
}

/// Retraction `π^n_k: Δ^n → Λ^n_k`, the central projection from the point
/// `c` with `c_k = 2` and `c_i = −1/n` otherwise. On the cell where `x_i` is
/// minimal among the coordinates other than `k` the ray meets the facet
/// `x_i = 0`, giving
/// `y_j = (x_j − x_i)/(n x_i + 1)` for `j ≠ k` and
/// `y_k = (x_k + 2n x_i)/(n x_i + 1)`.
pub fn horn_retraction<C: OrderedField>(n: usize, k: usize) -> Result<PiecewiseMap<C>, SemiAlgError> {
    if n == 0 {
        return Err(SemiAlgError::BadIndex { index: 0, bound: 0 });
    }
    let target = horn::<C>(n, k)?;
    let source = simplex::<C>(n);
    let dim = n + 1;
    let nn = C::from_i64(n as i64);
    let mut pieces = Vec::new();
    for i in (0..dim).filter(|&i| i != k) {
        let xi = var::<C>(dim, i);
        let conds = (0..dim)
            .filter(|&j| j != k && j != i)
            .map(|j| Formula::atom(var::<C>(dim, j).sub(&xi), Rel::Ge))
            .collect();
        let cell = source.and(Formula::and(conds));
        let den = xi.scale(&nn).add(&MPoly::one(dim));
        let comps = (0..dim)
            .map(|j| {
                if j == k {
                    let num = var::<C>(dim, k).add(&xi.scale(&(nn.clone() + nn.clone())));
                    ratio(num, den.clone())
                } else {
                    ratio(var::<C>(dim, j).sub(&xi), den.clone())
                }
            })
            .collect();
        pieces.push(Piece { cell, map: RationalMap::new(dim, comps) });
    }
    Ok(PiecewiseMap::new(source, target, pieces))
}

/// Contraction `H: Δ^n × I → Δ^n` onto the vertex `e_k`:
/// `x_i ↦ (1 − λ) x_i` for `i ≠ k`, `x_k ↦ 1 − (1 − λ)(1 − x_k)`.
pub fn contraction_homotopy<C: OrderedField>(n: usize, k: usize) -> Result<PiecewiseMap<C>, SemiAlgError> {
    if k > n {
        return Err(SemiAlgError::BadIndex { index: k, bound: n });
    }
    let dim = n + 2;
    let one = MPoly::<C>::one(dim);
    let one_minus_l = one.sub(&var(dim, n + 1));
    let comps = (0..=n)
        .map(|i| {
            if i == k {
                one.sub(&one_minus_l.mul(&one.sub(&var(dim, i))))
            } else {
                one_minus_l.mul(&var(dim, i))
            }
        })
        .collect();
    let source = simplex::<C>(n).product(&interval());
    Ok(PiecewiseMap::single(source, simplex(n), RationalMap::polynomial(dim, comps)))
}

/// The pair isomorphism `λ_n: (Δ^n, ∂Δ^n) → (I^n, ∂I^n)` and its inverse.
#[derive(Clone, Debug)]
pub struct PairIso<C> {
    pub forward: PiecewiseMap<C>,
    pub inverse: PiecewiseMap<C>,
    /// `α_n: Δ^n → T^n` and `β_n: T^n → I^n` with inverses, for `n ≥ 2`.
    pub stages: Option<Box<PairStages<C>>>,
}

#[derive(Clone, Debug)]
pub struct PairStages<C> {
    pub alpha: PiecewiseMap<C>,
    pub alpha_inv: PiecewiseMap<C>,
    pub beta: PiecewiseMap<C>,
    pub beta_inv: PiecewiseMap<C>,
}

/// Build `λ_n` recursively: `λ_1(x_0, x_1) = x_0`, and `λ_n = β_n ∘ α_n`
/// where `α_n` is the cone of `λ_{n−1}` from `v = e_0` to `w = (1, ½, …, ½)`
/// and `β_n` blows the tent `T^n` onto the cube from `c = (0, ½, …, ½)`.
pub fn cube_simplex_pair_iso<C: OrderedField>(n: usize) -> Result<PairIso<C>, SemiAlgError> {
    if n == 0 {
        return Err(SemiAlgError::BadIndex { index: 0, bound: 0 });
    }
    if n == 1 {
        let forward = PiecewiseMap::single(simplex(1), cube(1), RationalMap::polynomial(2, vec![var(2, 0)]));
        let inverse = PiecewiseMap::single(
            cube(1),
            simplex(1),
            RationalMap::polynomial(1, vec![var(1, 0), MPoly::one(1).sub(&var(1, 0))]),
        );
        return Ok(PairIso { forward, inverse, stages: None });
    }
    let prev = cube_simplex_pair_iso::<C>(n - 1)?;
    let (alpha, alpha_inv) = alpha_maps(n, &prev)?;
    let (beta, beta_inv) = beta_maps::<C>(n)?;
    let forward = alpha.then(&beta)?;
    let inverse = beta_inv.then(&alpha_inv)?;
    Ok(PairIso {
        forward,
        inverse,
        stages: Some(Box::new(PairStages { alpha, alpha_inv, beta, beta_inv })),
    })
}

fn alpha_maps<C: OrderedField>(
    n: usize,
    prev: &PairIso<C>,
) -> Result<(PiecewiseMap<C>, PiecewiseMap<C>), SemiAlgError> {
    let dim_s = n + 1; // Δ^n coordinates x_0..x_n
    let dim_t = n; // T^n coordinates t_0..t_{n-1}
    let src = simplex::<C>(n);
    let tnt = tent::<C>(n)?;
    let half = C::from_ratio(1, 2);
    let lam = prev.forward.with_identity_front(&interval());
    let lam_inv = prev.inverse.with_identity_front(&interval());

    // apex: v ↦ w
    let mut w = vec![C::one()];
    w.extend((1..n).map(|_| half.clone()));
    let apex_cell = src.and(Formula::atom(var::<C>(dim_s, 0).sub(&MPoly::one(dim_s)), Rel::Eq));
    let apex = Piece { cell: apex_cell, map: RationalMap::constant(dim_s, &w) };

    // x ↦ (x_0, x'/(1 − x_0)): the ray from v through x meets Δ^n_0 at
    // parameter s(x) = 1/(1 − x_0)
    let off_apex = src.and(Formula::atom(var::<C>(dim_s, 0).sub(&MPoly::one(dim_s)), Rel::Ne));
    let one_minus_x0 = MPoly::<C>::one(dim_s).sub(&var(dim_s, 0));
    let mut comps = vec![RationalFunction::from_poly(var(dim_s, 0))];
    comps.extend((1..dim_s).map(|i| ratio(var(dim_s, i), one_minus_x0.clone())));
    let to_base = PiecewiseMap::new(
        src.clone(),
        lam.source.clone(),
        vec![Piece { cell: off_apex, map: RationalMap::new(dim_s, comps) }],
    );
    // (x_0, u) ↦ (x_0, w' + (1 − x_0)(u − w'))
    let one_minus_t0 = MPoly::<C>::one(dim_t).sub(&var(dim_t, 0));
    let mut comps = vec![var::<C>(dim_t, 0)];
    comps.extend((1..dim_t).map(|i| {
        konst::<C>(dim_t, 1, 2).add(&one_minus_t0.mul(&var::<C>(dim_t, i).sub(&konst(dim_t, 1, 2))))
    }));
    let spread = PiecewiseMap::single(lam.target.clone(), tnt.clone(), RationalMap::polynomial(dim_t, comps));
    let cone = to_base.then(&lam)?.then(&spread)?;
    let mut pieces = vec![apex];
    pieces.extend(cone.pieces);
    let alpha = PiecewiseMap::new(src.clone(), tnt.clone(), pieces);

    // inverse: w ↦ v; otherwise u = w' + (t' − w')/(1 − t_0), y = λ⁻¹(u),
    // x = (t_0, (1 − t_0) y)
    let mut v = vec![C::one()];
    v.extend((1..dim_s).map(|_| C::zero()));
    let apex_cell = tnt.and(Formula::atom(var::<C>(dim_t, 0).sub(&MPoly::one(dim_t)), Rel::Eq));
    let apex = Piece { cell: apex_cell, map: RationalMap::constant(dim_t, &v) };
    let off_apex = tnt.and(Formula::atom(var::<C>(dim_t, 0).sub(&MPoly::one(dim_t)), Rel::Ne));
    let mut comps = vec![RationalFunction::from_poly(var(dim_t, 0))];
    comps.extend((1..dim_t).map(|i| {
        let shifted = var::<C>(dim_t, i).sub(&konst(dim_t, 1, 2));
        // ½ + (t_i − ½)/(1 − t_0) = (½(1 − t_0) + t_i − ½)/(1 − t_0)
        let num = one_minus_t0.scale(&half).add(&shifted);
        ratio(num, one_minus_t0.clone())
    }));
    let to_cube = PiecewiseMap::new(
        tnt.clone(),
        lam_inv.source.clone(),
        vec![Piece { cell: off_apex, map: RationalMap::new(dim_t, comps) }],
    );
    let one_minus_y0 = MPoly::<C>::one(dim_s).sub(&var(dim_s, 0));
    let mut comps = vec![var::<C>(dim_s, 0)];
    comps.extend((1..dim_s).map(|i| one_minus_y0.mul(&var(dim_s, i))));
    let shrink = PiecewiseMap::single(lam_inv.target.clone(), src.clone(), RationalMap::polynomial(dim_s, comps));
    let cone_inv = to_cube.then(&lam_inv)?.then(&shrink)?;
    let mut pieces = vec![apex];
    pieces.extend(cone_inv.pieces);
    let alpha_inv = PiecewiseMap::new(tnt, src, pieces);
    Ok((alpha, alpha_inv))
}

/// Cells of the radial blow-up from `c = (0, ½, …, ½)`. With `d_i = t_i − ½`
/// and `M = max |d_i|`, the exit parameters are `s_l = 1/(t_0 + 2M)` for the
/// tent and `s_u = 1/max(t_0, 2M)` for the cube. Cells fix which coordinate
/// `j` and sign `σ` attain `M = σ d_j`, and whether `t_0 ≥ 2M` (mode A) or
/// `2M ≥ t_0` (mode B).
fn blow_up_cells<C: OrderedField>(n: usize, base: &SemiAlgSet<C>) -> Vec<(SemiAlgSet<C>, MPoly<C>, MPoly<C>)> {
    let t0 = var::<C>(n, 0);
    let d = |i: usize| var::<C>(n, i).sub(&konst(n, 1, 2));
    let mut out = Vec::new();
    for j in 1..n {
        for sigma in [1i64, -1] {
            let s = C::from_i64(sigma);
            let m = d(j).scale(&s); // σ d_j
            let two_m = m.scale(&C::from_i64(2));
            let mut conds = vec![Formula::atom(t0.clone(), Rel::Gt), Formula::atom(m.clone(), Rel::Ge)];
            for i in (1..n).filter(|&i| i != j) {
                conds.push(Formula::atom(m.sub(&d(i)), Rel::Ge));
                conds.push(Formula::atom(m.add(&d(i)), Rel::Ge));
            }
            let common = Formula::and(conds);
            let sum = t0.add(&two_m); // t_0 + 2M
            // mode A: t_0 ≥ 2M, tent/cube ratio (t_0 + 2M)/t_0
            let cell_a = base.and(Formula::and(vec![common.clone(), Formula::atom(t0.sub(&two_m), Rel::Ge)]));
            out.push((cell_a, sum.clone(), t0.clone()));
            // mode B: 2M ≥ t_0, ratio (t_0 + 2M)/(2M)
            let cell_b = base.and(Formula::and(vec![common, Formula::atom(two_m.sub(&t0), Rel::Ge)]));
            out.push((cell_b, sum, two_m));
        }
    }
    out
}

/// Radial scaling `z = c + (num/den)·(x − c)`.
fn radial<C: OrderedField>(n: usize, num: &MPoly<C>, den: &MPoly<C>) -> RationalMap<C> {
    let comps = (0..n)
        .map(|i| {
            if i == 0 {
                ratio(num.mul(&var(n, 0)), den.clone())
            } else {
                // ½ + r (t_i − ½) = (½ den + num (t_i − ½))/den
                let d = var::<C>(n, i).sub(&konst(n, 1, 2));
                ratio(den.scale(&C::from_ratio(1, 2)).add(&num.mul(&d)), den.clone())
            }
        })
        .collect();
    RationalMap::new(n, comps)
}

fn beta_maps<C: OrderedField>(n: usize) -> Result<(PiecewiseMap<C>, PiecewiseMap<C>), SemiAlgError> {
    let tnt = tent::<C>(n)?;
    let cb = cube::<C>(n);
    let t0 = var::<C>(n, 0);
    let mut fwd = vec![Piece {
        cell: tnt.and(Formula::atom(t0.clone(), Rel::Eq)),
        map: RationalMap::identity(n),
    }];
    for (cell, num, den) in blow_up_cells(n, &tnt) {
        fwd.push(Piece { cell, map: radial(n, &num, &den) });
    }
    // the ratio is invariant under the radial scaling, so the inverse uses
    // the same cells read in the cube with the reciprocal ratio
    let mut inv = vec![Piece {
        cell: cb.and(Formula::atom(t0, Rel::Eq)),
        map: RationalMap::identity(n),
    }];
    for (cell, num, den) in blow_up_cells(n, &cb) {
        inv.push(Piece { cell, map: radial(n, &den, &num) });
    }
    Ok((PiecewiseMap::new(tnt.clone(), cb.clone(), fwd), PiecewiseMap::new(cb, tnt, inv)))
}

/// `f * g` for based maps `f, g: (Δ^n, ∂Δ^n) → (M, m)`: the inclusion
/// `x ↦ (x, 0)` into `Δ^{n+1}`, then `π^{n+1}_{n+1}`, then
/// `f(y_1, …, y_{n+1})` on `y_0 = 0`, `g(y_0, y_2, …, y_{n+1})` on `y_1 = 0`,
/// and `m` elsewhere on the horn.
///
/// The based condition is checked on the vertices and on the boundary grid
/// with denominator `check_grid`.
pub fn loop_concat<C: OrderedField>(
    f: &PiecewiseMap<C>,
    g: &PiecewiseMap<C>,
    basepoint: &[C],
    check_grid: u32,
) -> Result<PiecewiseMap<C>, SemiAlgError> {
    let dim = f.source.dim;
    if dim < 2 || g.source.dim != dim || f.target.dim != g.target.dim || basepoint.len() != f.target.dim {
        return Err(SemiAlgError::DimensionMismatch { expected: dim, got: g.source.dim });
    }
    let n = dim - 1;
    let boundary = simplex_boundary::<C>(n);
    for p in boundary.grid_points(check_grid.max(1)) {
        for h in [f, g] {
            if SemiAlgMap::eval(h, &p)? != basepoint {
                return Err(SemiAlgError::BoundaryNotBased);
            }
        }
    }
    let big = n + 1;
    let bdim = big + 1;
    let include = PiecewiseMap::single(
        simplex::<C>(n),
        simplex::<C>(big),
        linear_map(dim, &(0..bdim).map(|i| if i < dim { vec![(i, C::one())] } else { vec![] }).collect::<Vec<_>>()),
    );
    let retract = horn_retraction::<C>(big, big)?;
    let lam = horn::<C>(big, big)?;
    let face = |skip: usize| {
        let rows: Vec<Vec<(usize, C)>> = (0..bdim).filter(|&i| i != skip).map(|i| vec![(i, C::one())]).collect();
        let cell = lam.and(Formula::atom(var::<C>(bdim, skip), Rel::Eq));
        PiecewiseMap::new(
            lam.clone(),
            simplex::<C>(n),
            vec![Piece { cell, map: linear_map(bdim, &rows) }],
        )
    };
    let on_f = face(0).then(f)?;
    let on_g = face(1).then(g)?;
    let mut pieces = on_f.pieces;
    pieces.extend(on_g.pieces);
    pieces.push(Piece { cell: lam.clone(), map: RationalMap::constant(bdim, basepoint) });
    let three_case = PiecewiseMap::new(lam, f.target.clone(), pieces);
    include.then(&retract)?.then(&three_case)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};
    use crate::Q;

    #[test]
    fn delta_map_examples() {
        let id = delta_map::<Q>(&[0, 1], 1).unwrap();
        assert_eq!(id.eval(&[q(1, 3), q(2, 3)]).unwrap(), vec![q(1, 3), q(2, 3)]);
        let collapse = delta_map::<Q>(&[0, 0], 0).unwrap();
        assert_eq!(collapse.eval(&[q(1, 3), q(2, 3)]).unwrap(), vec![qi(1)]);
        let face = delta_map::<Q>(&[1], 1).unwrap();
        assert_eq!(face.eval(&[qi(1)]).unwrap(), vec![qi(0), qi(1)]);
        assert!(matches!(delta_map::<Q>(&[1, 0], 1), Err(SemiAlgError::NotMonotone)));
    }

    #[test]
    fn horn_retraction_examples() {
        let p10 = horn_retraction::<Q>(1, 0).unwrap();
        assert_eq!(p10.eval(&[q(1, 3), q(2, 3)]).unwrap(), vec![qi(1), qi(0)]);
        let p21 = horn_retraction::<Q>(2, 1).unwrap();
        let x = vec![qi(0), q(1, 2), q(1, 2)];
        assert_eq!(p21.eval(&x).unwrap(), x);
        assert!(matches!(horn_retraction::<Q>(2, 3), Err(SemiAlgError::BadIndex { .. })));
    }

    #[test]
    fn contraction_example() {
        let h = contraction_homotopy::<Q>(1, 0).unwrap();
        assert_eq!(h.eval(&[q(1, 2), q(1, 2), q(1, 2)]).unwrap(), vec![q(3, 4), q(1, 4)]);
    }

    #[test]
    fn lambda_small_cases() {
        let l1 = cube_simplex_pair_iso::<Q>(1).unwrap();
        assert_eq!(l1.forward.eval(&[qi(1), qi(0)]).unwrap(), vec![qi(1)]);
        let l2 = cube_simplex_pair_iso::<Q>(2).unwrap();
        assert_eq!(l2.forward.pieces.len(), 8);
        let y = l2.forward.eval(&[qi(0), q(1, 2), q(1, 2)]).unwrap();
        assert!(cube::<Q>(2).contains(&y).unwrap());
        assert!(super::super::set::cube_boundary::<Q>(2).contains(&y).unwrap());
    }
}
