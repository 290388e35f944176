use num_traits::{One, Zero};
use proptest::prelude::*;
use realtype::scalar::{q, qi};
use realtype::semialg::*;
use realtype::{OrderedField, RcfNumber, Q};

/// Projection from `c` onto the horn computed directly from the geometry:
/// walk back along the ray from `x` towards `c` and stop at the first facet
/// `x_i = 0` with `i ≠ k`. The facet `x_i = 0` is met at parameter
/// `s_i = −c_i/(x_i − c_i)`; the exit is at the largest such parameter.
fn ray_facet_oracle(x: &[Q], k: usize) -> Vec<Q> {
    let n = x.len() - 1;
    let c: Vec<Q> = (0..=n).map(|i| if i == k { qi(2) } else { q(-1, n as i64) }).collect();
    let s = (0..=n)
        .filter(|&i| i != k)
        .map(|i| -c[i].clone() / (x[i].clone() - c[i].clone()))
        .max()
        .unwrap();
    c.iter().zip(x).map(|(ci, xi)| ci.clone() + s.clone() * (xi.clone() - ci.clone())).collect()
}

#[test]
fn horn_retraction_matches_ray_oracle() {
    for n in 1..=3 {
        for k in 0..=n {
            let pi = horn_retraction::<Q>(n, k).unwrap();
            for x in simplex::<Q>(n).grid_points(6) {
                assert_eq!(pi.eval(&x).unwrap(), ray_facet_oracle(&x, k), "n={n} k={k} x={x:?}");
            }
        }
    }
}

#[test]
fn horn_retraction_example_from_c() {
    let pi = horn_retraction::<Q>(2, 0).unwrap();
    let x = vec![q(1, 3), q(1, 3), q(1, 3)];
    let y = pi.eval(&x).unwrap();
    // c = (2, −1/2, −1/2), y − c is parallel to x − c
    let c = [qi(2), q(-1, 2), q(-1, 2)];
    let t = (y[0].clone() - c[0].clone()) / (x[0].clone() - c[0].clone());
    for i in 0..3 {
        assert_eq!(y[i].clone() - c[i].clone(), t.clone() * (x[i].clone() - c[i].clone()));
    }
    assert!(horn::<Q>(2, 0).unwrap().contains(&y).unwrap());
}

#[test]
fn retraction_fixes_the_horn_and_lands_in_it() {
    for n in 1..=3 {
        for k in 0..=n {
            let lam = horn::<Q>(n, k).unwrap();
            let pi = horn_retraction::<Q>(n, k).unwrap();
            let composite = horn_inclusion::<Q>(n, k).unwrap().then(&pi).unwrap();
            let report = verify_identity(&composite, &PiecewiseMap::identity(lam.clone()), &lam, 6, &[]);
            assert!(report.passed(), "n={n} k={k}: {:?}", report.failures.first());
            for x in simplex::<Q>(n).grid_points(6) {
                assert!(lam.contains(&pi.eval(&x).unwrap()).unwrap());
            }
            let pts = simplex::<Q>(n).grid_points(6);
            assert!(pi.disagreements(&pts).is_empty(), "n={n} k={k}");
        }
    }
}

#[test]
fn retraction_identity_survives_base_change() {
    for n in 1..=3 {
        for k in 0..=n {
            let zero = (0..=n).find(|&i| i != k).unwrap();
            let pts = algebraic_simplex_points(n, Some(zero), 5, 11);
            let pi = horn_retraction::<Q>(n, k).unwrap().base_change::<RcfNumber>();
            let lam = horn::<RcfNumber>(n, k).unwrap();
            let report = verify_identity(&pi, &PiecewiseMap::identity(lam.clone()), &lam, 2, &pts);
            assert!(report.passed());
            assert!(report.checked_points >= 5);
        }
    }
}

fn on_cube_boundary<C: OrderedField>(y: &[C]) -> bool {
    y.iter().any(|c| c.is_zero() || c.is_one())
}

fn on_simplex_boundary<C: OrderedField>(x: &[C]) -> bool {
    x.iter().any(|c| c.is_zero())
}

#[test]
fn pair_iso_round_trips_and_respects_boundaries() {
    for n in 1..=3 {
        let iso = cube_simplex_pair_iso::<Q>(n).unwrap();
        let delta = simplex::<Q>(n);
        let cb = cube::<Q>(n);
        let back = Chain::new(vec![&iso.forward, &iso.inverse]);
        let r = verify_identity(&back, &PiecewiseMap::identity(delta.clone()), &delta, 4, &[]);
        assert!(r.passed(), "n={n} {:?}", r.failures.first());
        let there = Chain::new(vec![&iso.inverse, &iso.forward]);
        let r = verify_identity(&there, &PiecewiseMap::identity(cb.clone()), &cb, 4, &[]);
        assert!(r.passed(), "n={n} {:?}", r.failures.first());
        for x in delta.grid_points(4) {
            let y = iso.forward.eval(&x).unwrap();
            assert!(cb.contains(&y).unwrap());
            assert_eq!(on_simplex_boundary(&x), on_cube_boundary(&y), "n={n} x={x:?} y={y:?}");
        }
        assert!(iso.forward.disagreements(&delta.grid_points(4)).is_empty());
        assert!(iso.inverse.disagreements(&cb.grid_points(4)).is_empty());
    }
}

#[test]
fn pair_iso_examples() {
    let l1 = cube_simplex_pair_iso::<Q>(1).unwrap();
    assert_eq!(l1.forward.eval(&[qi(1), qi(0)]).unwrap(), vec![qi(1)]);
    let back = l1.forward.then(&l1.inverse).unwrap();
    let d1 = simplex::<Q>(1);
    assert!(verify_identity(&back, &PiecewiseMap::identity(d1.clone()), &d1, 8, &[]).passed());

    // α₂ then β₂ by hand at (0, ½, ½): the cone map gives (0, λ₁(½, ½)) =
    // (0, ½) in the tent; t₀ = 0 is fixed by β₂
    let l2 = cube_simplex_pair_iso::<Q>(2).unwrap();
    assert_eq!(l2.forward.eval(&[qi(0), q(1, 2), q(1, 2)]).unwrap(), vec![qi(0), q(1, 2)]);
    // apex v = e₀ ↦ w = (1, ½) ∈ T², then β₂ is mode A with d = 0: fixed
    assert_eq!(l2.forward.eval(&[qi(1), qi(0), qi(0)]).unwrap(), vec![qi(1), q(1, 2)]);
    assert!(tent::<Q>(2).unwrap().contains(&[qi(1), q(1, 2)]).unwrap());
}

#[test]
fn pair_iso_round_trip_at_algebraic_points() {
    let iso = cube_simplex_pair_iso::<Q>(2).unwrap();
    let fwd = iso.forward.base_change::<RcfNumber>();
    let inv = iso.inverse.base_change::<RcfNumber>();
    let delta = simplex::<RcfNumber>(2);
    let a = RcfNumber::sqrt_of(&qi(2)).unwrap() - RcfNumber::one();
    let half_rest = (RcfNumber::one() - a.clone()) * RcfNumber::from(q(1, 2));
    let mut extra = vec![vec![a.clone(), half_rest.clone(), half_rest]];
    extra.extend(algebraic_simplex_points(2, None, 4, 3));
    let round = Chain::new(vec![&fwd, &inv]);
    let r = verify_identity(&round, &PiecewiseMap::identity(delta.clone()), &delta, 3, &extra);
    assert!(r.passed());
    assert_eq!(r.checked_points, delta.grid_points(3).len() + 5);
}

#[test]
fn contraction_endpoints() {
    for n in 0..=3 {
        for k in 0..=n {
            let h = contraction_homotopy::<Q>(n, k).unwrap();
            for x in simplex::<Q>(n).grid_points(6) {
                let mut x0 = x.clone();
                x0.push(qi(0));
                assert_eq!(h.eval(&x0).unwrap(), x);
                let mut x1 = x.clone();
                x1.push(qi(1));
                let e: Vec<Q> = (0..=n).map(|i| if i == k { qi(1) } else { qi(0) }).collect();
                assert_eq!(h.eval(&x1).unwrap(), e);
            }
        }
    }
    let h = contraction_homotopy::<Q>(1, 0).unwrap();
    assert_eq!(h.eval(&[q(1, 2), q(1, 2), q(1, 2)]).unwrap(), vec![q(3, 4), q(1, 4)]);
}

#[test]
fn canonical_sets_are_the_displayed_ones() {
    let d1 = canonical_set::<Q>(SetKind::Simplex, 1, None).unwrap();
    assert_eq!(d1.grid_points(2).len(), 3);
    let h = canonical_set::<Q>(SetKind::Horn, 2, Some(1)).unwrap();
    assert!(h.contains(&[qi(0), qi(1), qi(0)]).unwrap());
    assert!(h.contains(&[qi(1), qi(0), qi(0)]).unwrap());
    assert!(!h.contains(&[q(1, 2), qi(0), q(1, 2)]).unwrap());
    let t = canonical_set::<Q>(SetKind::Tent, 2, None).unwrap();
    assert!(t.contains(&[qi(1), q(1, 2)]).unwrap());
    assert!(!t.contains(&[qi(1), q(3, 4)]).unwrap());
    assert!(matches!(
        canonical_set::<Q>(SetKind::Horn, 2, Some(3)),
        Err(SemiAlgError::BadIndex { .. })
    ));
}

fn all_monotone(n: usize, m: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return (0..=m).map(|v| vec![v]).collect();
    }
    let mut out = Vec::new();
    for p in all_monotone(n - 1, m) {
        for v in *p.last().unwrap()..=m {
            let mut q = p.clone();
            q.push(v);
            out.push(q);
        }
    }
    out
}

#[test]
fn delta_maps_are_functorial() {
    for phi in all_monotone(1, 2) {
        for psi in all_monotone(2, 1) {
            let composite: Vec<usize> = phi.iter().map(|&i| psi[i]).collect();
            let lhs = delta_map::<Q>(&phi, 2).unwrap().then(&delta_map(&psi, 1).unwrap()).unwrap();
            let rhs = delta_map::<Q>(&composite, 1).unwrap();
            let d = simplex::<Q>(1);
            assert!(verify_identity(&lhs, &rhs, &d, 6, &[]).passed());
        }
    }
}

#[test]
fn loop_concat_cases() {
    let n = 1;
    let m = vec![qi(0)];
    let target = cube::<Q>(1);
    let constant = PiecewiseMap::constant(simplex::<Q>(n), target.clone(), &m);
    let cc = loop_concat(&constant, &constant, &m, 4).unwrap();
    for x in simplex::<Q>(n).grid_points(8) {
        assert_eq!(cc.eval(&x).unwrap(), m);
    }

    // f(x₀, x₁) = 4 x₀ x₁ vanishes on ∂Δ¹
    let bump = |scale: i64| {
        let x0 = realtype::MPoly::<Q>::var(2, 0);
        let x1 = realtype::MPoly::<Q>::var(2, 1);
        PiecewiseMap::single(
            simplex::<Q>(1),
            target.clone(),
            RationalMap::polynomial(2, vec![x0.mul(&x1).scale(&q(scale, 1))]),
        )
    };
    let f = bump(4);
    let g = bump(2);
    let fg = loop_concat(&f, &g, &m, 4).unwrap();
    for x in simplex_boundary::<Q>(1).grid_points(4) {
        assert_eq!(fg.eval(&x).unwrap(), m);
    }
    // the composite is f∘π on the part of Δ¹ that π sends to the face x₀ = 0
    let pi = horn_retraction::<Q>(2, 2).unwrap();
    for x in simplex::<Q>(1).grid_points(12) {
        let y = pi.eval(&[x[0].clone(), x[1].clone(), qi(0)]).unwrap();
        let expected = if y[0].is_zero() {
            f.eval(&[y[1].clone(), y[2].clone()]).unwrap()
        } else if y[1].is_zero() {
            g.eval(&[y[0].clone(), y[2].clone()]).unwrap()
        } else {
            m.clone()
        };
        assert_eq!(fg.eval(&x).unwrap(), expected, "x={x:?}");
    }

    let unbased = PiecewiseMap::single(
        simplex::<Q>(1),
        target,
        RationalMap::polynomial(2, vec![realtype::MPoly::var(2, 0)]),
    );
    assert!(matches!(loop_concat(&unbased, &f, &m, 4), Err(SemiAlgError::BoundaryNotBased)));
}

proptest! {
    #[test]
    fn retraction_lands_in_horn(a in 0u32..20, b in 0u32..20, c in 0u32..20, k in 0usize..3) {
        prop_assume!(a + b + c > 0);
        let s = (a + b + c) as i64;
        let x = vec![q(a as i64, s), q(b as i64, s), q(c as i64, s)];
        let pi = horn_retraction::<Q>(2, k).unwrap();
        let y = pi.eval(&x).unwrap();
        prop_assert!(horn::<Q>(2, k).unwrap().contains(&y).unwrap());
        prop_assert_eq!(y, ray_facet_oracle(&x, k));
    }

    #[test]
    fn pair_iso_round_trip_random(a in 0u32..30, b in 0u32..30, c in 0u32..30) {
        prop_assume!(a + b + c > 0);
        let s = (a + b + c) as i64;
        let x = vec![q(a as i64, s), q(b as i64, s), q(c as i64, s)];
        let iso = cube_simplex_pair_iso::<Q>(2).unwrap();
        let y = iso.forward.eval(&x).unwrap();
        prop_assert_eq!(iso.inverse.eval(&y).unwrap(), x);
    }
}
