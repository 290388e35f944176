use num_bigint::BigInt;
use proptest::prelude::*;
use realtype::complex::{
    adjunction_decode, barycentric, circle, cohomology_order_mod, curve, edge_path_group, homology, nerve,
    realize_map, simplex, star_cover, torus, vertex_images, wedge_of_circles, Assignment, Coefficients, Complex,
    ComplexMap, CoverOfComplex,
};
use realtype::group::{count_homs, surface_group, FiniteGroupTable, DEFAULT_BUDGET};
use realtype::kan::FinSimplicialSet;
use realtype::Q;

fn h(c: &Complex) -> realtype::complex::HomologyResult {
    homology(c, Coefficients::Integers).unwrap()
}

#[test]
fn surfaces_and_tori_match_their_abelianized_groups() {
    for g in 0..=3 {
        for d in 0..=3 {
            let c = curve(g, d).unwrap();
            let rank = if d == 0 { 2 * g } else { 2 * g + d - 1 };
            assert_eq!(h(&c).degree(1), vec![0; rank].as_slice(), "curve({g},{d})");
            let ab = surface_group(g, d).abelianization();
            assert_eq!((ab.free_rank, ab.torsion.len()), (rank, 0));
        }
    }
    for n in 0..=2 {
        assert_eq!(h(&torus(n).unwrap()).degree(1), vec![0; 2 * n].as_slice());
    }
}

#[test]
fn hom_counts_match_cohomology_orders() {
    let models = [wedge_of_circles(2), torus(1).unwrap(), curve(2, 0).unwrap()];
    for c in &models {
        let pi1 = edge_path_group(c, c.vertices()[0]).unwrap().presentation.simplify();
        for m in [2u64, 3, 4] {
            let homs = count_homs(&pi1, &FiniteGroupTable::cyclic(m as usize), DEFAULT_BUDGET).unwrap();
            assert_eq!(BigInt::from(homs), cohomology_order_mod(c, 1, m).unwrap());
        }
    }
}

#[test]
fn nerves_of_good_covers() {
    let b = circle();
    let arcs = CoverOfComplex::new(&b, &[vec![vec![0, 1]], vec![vec![1, 2]], vec![vec![0, 2]]]).unwrap();
    assert!(h(&nerve(&arcs).unwrap()).same_groups(&h(&b)));
    let t = torus(1).unwrap();
    let (sd, stars) = star_cover(&t);
    for i in 0..stars.members.len() {
        // every star is a cone, hence acyclic
        let r = h(&stars.member_complex(i));
        assert_eq!(r.betti[0], 1);
        assert!(r.betti[1..].iter().all(|&b| b == 0) && (0..r.factors.len()).all(|n| r.torsion(n).is_empty()));
    }
    assert!(h(&nerve(&stars).unwrap()).same_groups(&h(&sd.complex)));
}

#[test]
fn subdivision_preserves_homology_of_models() {
    for c in [circle(), wedge_of_circles(2), torus(1).unwrap(), curve(1, 1).unwrap()] {
        let sd = barycentric(&c).complex;
        assert!(h(&sd).same_groups(&h(&c)));
        assert_eq!(sd.euler_characteristic(), c.euler_characteristic());
    }
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn fixture_maps() -> Vec<(ComplexMap, ComplexMap)> {
    let b = circle();
    let tri = simplex(2);
    let edge = simplex(1);
    let inc = ComplexMap::from_positions(b.clone(), tri.clone(), vec![0, 1, 2]).unwrap();
    let fold = ComplexMap::from_positions(tri.clone(), edge.clone(), vec![0, 1, 0]).unwrap();
    let rot = ComplexMap::from_positions(b.clone(), b.clone(), vec![1, 2, 0]).unwrap();
    let swap = ComplexMap::from_positions(edge.clone(), edge.clone(), vec![1, 0]).unwrap();
    let collapse = ComplexMap::from_positions(tri.clone(), simplex(0), vec![0, 0, 0]).unwrap();
    vec![
        (inc.clone(), fold.clone()),
        (rot.clone(), inc),
        (fold, swap),
        (rot.clone(), rot),
        (ComplexMap::identity(&tri), collapse),
    ]
}

#[test]
fn realization_is_functorial() {
    for (phi, psi) in fixture_maps() {
        let composite = realize_map::<Q>(&phi.then(&psi).unwrap());
        let (rphi, rpsi) = (realize_map::<Q>(&phi), realize_map::<Q>(&psi));
        let grid = rphi.source.grid_points(6);
        assert!(!grid.is_empty());
        assert!(rphi.disagreements(&grid).is_empty());
        for p in &grid {
            let mid = rphi.eval(p).unwrap();
            assert!(rpsi.disagreements(&[mid.clone()]).is_empty());
            assert_eq!(rpsi.eval(&mid).unwrap(), composite.eval(p).unwrap());
        }
        // the vertex map is read back from the realization
        let images = vertex_images(&composite, &phi.source).unwrap();
        for (j, img) in images.iter().enumerate() {
            let w = phi.then(&psi).unwrap().vertex_map[j];
            assert!(img.iter().enumerate().all(|(k, x)| *x == if k == w { q(1, 1) } else { q(0, 1) }));
        }
    }
}

#[test]
fn collapse_sends_everything_to_the_vertex() {
    let tri = simplex(2);
    let f = ComplexMap::from_positions(tri.clone(), simplex(0), vec![0, 0, 0]).unwrap();
    let r = realize_map::<Q>(&f);
    for p in r.source.grid_points(5) {
        assert_eq!(r.eval(&p).unwrap(), vec![q(1, 1)]);
    }
}

#[test]
fn adjunction_round_trip() {
    let b = circle();
    let target = realtype::semialg::cube::<Q>(2);
    let pts = [vec![q(0, 1), q(0, 1)], vec![q(1, 1), q(1, 3)], vec![q(1, 2), q(1, 1)]];
    let asg: Assignment<Q> = vec![
        (vec![0, 1], vec![pts[0].clone(), pts[1].clone()]),
        (vec![1, 2], vec![pts[1].clone(), pts[2].clone()]),
        (vec![2, 0], vec![pts[2].clone(), pts[0].clone()]),
    ];
    let f = adjunction_decode(&b, &asg, target.clone()).unwrap();
    assert_eq!(vertex_images(&f, &b).unwrap(), pts.to_vec());
    assert!(f.disagreements(&f.source.grid_points(6)).is_empty());
    let constant: Assignment<Q> = vec![(vec![0, 1, 2], vec![pts[1].clone(); 3])];
    let tri = simplex(2);
    let g = adjunction_decode(&tri, &constant, target).unwrap();
    for p in g.source.grid_points(4) {
        assert_eq!(g.eval(&p).unwrap(), pts[1]);
    }
}

#[test]
fn simplicial_sets_of_complexes_are_simplicial() {
    for c in [circle(), simplex(2), wedge_of_circles(2)] {
        let x = FinSimplicialSet::from_complex(&c, 3);
        x.audit().unwrap();
        // level n counts maps [n] → vertices with image a simplex
        let mut expected = 0;
        for s in c.simplices() {
            let k = s.len() as i64;
            // surjections from n+1 points onto k points, by inclusion–exclusion
            let n1 = 3 + 1;
            let mut surj = 0i64;
            for j in 0..=k {
                let binom = (0..j).fold(1i64, |acc, i| acc * (k - i) / (i + 1));
                surj += (-1i64).pow(j as u32) * binom * (k - j).pow(n1);
            }
            expected += surj;
        }
        assert_eq!(x.size(3) as i64, expected);
    }
}

fn random_complex() -> impl Strategy<Value = Complex> {
    proptest::collection::vec(proptest::collection::btree_set(0u64..6, 1..4), 1..7)
        .prop_map(|fs| Complex::new(&fs.into_iter().map(|s| s.into_iter().collect()).collect::<Vec<_>>()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn subdivision_invariants(c in random_complex()) {
        let sd = barycentric(&c).complex;
        prop_assert!(c.is_closed() && sd.is_closed());
        prop_assert_eq!(sd.euler_characteristic(), c.euler_characteristic());
        prop_assert!(h(&sd).same_groups(&h(&c)));
        prop_assert_eq!(h(&c).betti[0], *c.components().iter().max().unwrap() + 1);
    }

    #[test]
    fn euler_characteristic_from_betti_numbers(c in random_complex()) {
        let r = h(&c);
        let alt: i64 = r.betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(alt, c.euler_characteristic());
    }

    #[test]
    fn edge_path_group_abelianizes_to_h1(c in random_complex()) {
        prop_assume!(c.is_connected());
        let ab = edge_path_group(&c, c.vertices()[0]).unwrap().presentation.abelianization();
        prop_assert_eq!(ab.free_rank, h(&c).free_rank(1));
        prop_assert!(ab.torsion.is_empty() && h(&c).torsion(1).is_empty());
    }
}

#[test]
fn cohomology_orders_match_universal_coefficients() {
    // |H^n(X; Z/m)| = |Hom(H_n, Z/m)| · |Ext(H_{n−1}, Z/m)|
    for c in [torus(1).unwrap(), curve(1, 0).unwrap(), realtype::complex::presentation_complex(
        &realtype::group::GroupPresentation::parse(&["a"], &["aaaa"]).unwrap(),
    )] {
        let r = h(&c);
        for m in 2..6u64 {
            for n in 0..=2 {
                let mut order = BigInt::from(1);
                for &d in r.degree(n) {
                    order *= if d == 0 { m } else { num_integer::gcd(d, m) };
                }
                if n > 0 {
                    for d in r.torsion(n - 1) {
                        order *= num_integer::gcd(d, m);
                    }
                }
                assert_eq!(cohomology_order_mod(&c, n, m).unwrap(), order);
            }
        }
    }
}
