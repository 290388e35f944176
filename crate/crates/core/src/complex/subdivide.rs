//! Barycentric subdivision with carriers.

use std::collections::BTreeSet;

use super::{Complex, ComplexError, VertexId};

/// A subdivision of an original complex. Vertex ids are `0..n` and each
/// vertex records its carrier: the smallest original simplex (as original
/// vertex positions) whose interior contains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub complex: Complex,
    pub carrier: Vec<Vec<usize>>,
    pub rounds: usize,
}

impl Subdivision {
    /// Zero rounds: the complex itself with vertices renumbered `0..n`.
    pub fn trivial(c: &Complex) -> Self {
        let ids: Vec<VertexId> = (0..c.num_vertices() as VertexId).collect();
        let complex = Complex::from_positions(ids, c.simplices().iter().cloned());
        Subdivision { complex, carrier: (0..c.num_vertices()).map(|i| vec![i]).collect(), rounds: 0 }
    }

    /// Carrier of a simplex of the subdivision.
    pub fn carrier_of(&self, s: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = s.iter().flat_map(|&i| self.carrier[i].iter().copied()).collect();
        set.into_iter().collect()
    }

    /// One more barycentric round.
    pub fn refine(&self) -> Self {
        let old = &self.complex;
        // canonical order of barycenters: by dimension, then lexicographic
        let mut bary: Vec<&Vec<usize>> = old.simplices().iter().collect();
        bary.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: std::collections::BTreeMap<&Vec<usize>, usize> =
            bary.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut facets = Vec::new();
        for f in old.facets() {
            for order in permutations(&f) {
                let mut prefix = Vec::new();
                let mut chain = Vec::new();
                for v in order {
                    prefix.push(v);
                    let mut s = prefix.clone();
                    s.sort_unstable();
                    chain.push(index[&s]);
                }
                facets.push(chain);
            }
        }
        let ids: Vec<VertexId> = (0..bary.len() as VertexId).collect();
        let carrier = bary.iter().map(|s| self.carrier_of(s)).collect();
        Subdivision { complex: Complex::from_positions(ids, facets), carrier, rounds: self.rounds + 1 }
    }

    /// Every simplex lies in the open star of a single member: some member
    /// meets the carrier of each of its vertices.
    pub fn is_subordinate(&self, members: &[BTreeSet<Vec<usize>>]) -> bool {
        let meets = |m: &BTreeSet<Vec<usize>>, car: &[usize]| car.iter().any(|&v| m.contains(&vec![v]));
        self.complex
            .facets()
            .iter()
            .all(|s| members.iter().any(|m| s.iter().all(|&i| meets(m, &self.carrier[i]))))
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

pub fn barycentric(c: &Complex) -> Subdivision {
    Subdivision::trivial(c).refine()
}

pub fn barycentric_iterated(c: &Complex, rounds: usize) -> Subdivision {
    (0..rounds).fold(Subdivision::trivial(c), |s, _| s.refine())
}

/// Fewest barycentric rounds after which every simplex lies in the open
/// star of one member. Members are subcomplexes given as position sets;
/// their open stars must cover the complex.
pub fn until_subordinate(
    c: &Complex,
    members: &[BTreeSet<Vec<usize>>],
    max_rounds: usize,
) -> Result<Subdivision, ComplexError> {
    if members.is_empty() {
        return Err(ComplexError::EmptyCover);
    }
    for s in c.simplices() {
        if !members.iter().any(|m| s.iter().any(|&v| m.contains(&vec![v]))) {
            return Err(ComplexError::InvalidCover(format!("open stars miss {:?}", c.ids(s))));
        }
    }
    let mut sd = Subdivision::trivial(c);
    loop {
        if sd.is_subordinate(members) {
            return Ok(sd);
        }
        if sd.rounds == max_rounds {
            return Err(ComplexError::SubdivisionBudgetExceeded(max_rounds));
        }
        sd = sd.refine();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vertex_members(c: &Complex) -> Vec<BTreeSet<Vec<usize>>> {
        (0..c.num_vertices()).map(|v| BTreeSet::from([vec![v]])).collect()
    }

    #[test]
    fn counts() {
        let edge = Complex::new(&[vec![0, 1]]).unwrap();
        let sd = barycentric(&edge);
        assert_eq!((sd.complex.num_vertices(), sd.complex.simplices_of_dim(1).len()), (3, 2));
        let tri = Complex::new(&[vec![0, 1, 2]]).unwrap();
        assert_eq!(barycentric(&tri).complex.simplices_of_dim(2).len(), 6);
        assert_eq!(barycentric_iterated(&tri, 2).complex.simplices_of_dim(2).len(), 36);
    }

    #[test]
    fn carriers_are_the_subdivided_simplices() {
        let tri = Complex::new(&[vec![0, 1, 2]]).unwrap();
        let sd = barycentric(&tri);
        assert_eq!(sd.carrier[6], vec![0, 1, 2]);
        assert_eq!(sd.carrier_of(&[0, 3]), vec![0, 1]);
    }

    #[test]
    fn subordinate_rounds() {
        let boundary = Complex::new(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let edges: Vec<_> = [[0, 1], [1, 2], [0, 2]].iter().map(|e| boundary.subcomplex(&[e.to_vec()]).unwrap()).collect();
        let sd = until_subordinate(&boundary, &edges, 3).unwrap();
        assert!(sd.rounds <= 1);
        assert!(barycentric(&boundary).is_subordinate(&edges));
        let tri = Complex::new(&[vec![0, 1, 2]]).unwrap();
        assert_eq!(until_subordinate(&tri, &vertex_members(&tri), 3).unwrap().rounds, 1);
        assert_eq!(
            until_subordinate(&tri, &vertex_members(&tri), 0),
            Err(ComplexError::SubdivisionBudgetExceeded(0))
        );
    }
}
