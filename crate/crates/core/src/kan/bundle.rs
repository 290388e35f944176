//! Bundles as maps of simplicial sets, and their trivializing covers.

use std::collections::BTreeSet;

use super::{FinSimplicialSet, SSetMap, SubSSet};
use crate::complex::{Complex, ComplexMap};
use crate::cover::{CoverError, PermCover};

/// `B × F → B`.
pub fn product_projection(b: &FinSimplicialSet, f: &FinSimplicialSet) -> SSetMap {
    let e = b.product(f);
    let max_dim = e.max_dim;
    let maps = (0..=max_dim).map(|n| (0..e.size(n)).map(|p| p / f.size(n)).collect()).collect();
    SSetMap { source: e, target: b.clone(), maps }
}

pub fn from_complex_map(f: &ComplexMap, max_dim: usize) -> SSetMap {
    SSetMap::of_complex_map(f, max_dim)
}

/// Covering projection of the total space. The projection is already
/// simplicial on the total complex, so no subdivision is applied.
pub fn from_cover(cover: &PermCover, max_dim: usize) -> Result<SSetMap, CoverError> {
    let total = cover.total_space()?;
    Ok(SSetMap::of_complex_map(&total.projection, max_dim))
}

/// Closed vertex stars of a complex, as simplicial subsets of `A_*`.
pub fn star_subsets(c: &Complex, x: &FinSimplicialSet) -> Vec<SubSSet> {
    (0..c.num_vertices())
        .map(|v| {
            SubSSet::from_predicate(x, |_, t| {
                let s: BTreeSet<usize> = t.iter().copied().chain([v]).collect();
                c.contains(&s.into_iter().collect::<Vec<_>>())
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroupTable;
    use crate::kan::lifting::subordinate_lifting_check;

    #[test]
    fn product_bundles_lift() {
        let b = FinSimplicialSet::nerve_of_group(&FiniteGroupTable::cyclic(2), 2);
        let f = FinSimplicialSet::nerve_of_group(&FiniteGroupTable::cyclic(3), 2);
        let p = product_projection(&b, &f);
        SSetMap::new(p.source.clone(), p.target.clone(), p.maps.clone()).unwrap();
        let r = subordinate_lifting_check(&p, &[SubSSet::whole(&b)], 2).unwrap();
        assert!(r.passed() && r.instances_checked > 0);
    }

    #[test]
    fn point_fiber_is_an_isomorphism() {
        let b = FinSimplicialSet::circle(2);
        let p = product_projection(&b, &FinSimplicialSet::point(2));
        for n in 0..=2 {
            let mut img = p.maps[n].clone();
            img.sort_unstable();
            assert_eq!(img, (0..b.size(n)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn unsubordinate_instances_are_skipped() {
        let c = crate::complex::circle();
        let x = FinSimplicialSet::from_complex(&c, 2);
        let p = product_projection(&x, &FinSimplicialSet::nerve_of_group(&FiniteGroupTable::cyclic(2), 2));
        let one_vertex = SubSSet::from_predicate(&x, |_, t| t.iter().all(|&v| v == 0));
        let r = subordinate_lifting_check(&p, &[one_vertex], 2).unwrap();
        assert!(r.passed() && r.skipped > 0 && r.instances_checked > 0);
    }
}
