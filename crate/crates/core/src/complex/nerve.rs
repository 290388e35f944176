//! Nerves of covers by subcomplexes.

use std::collections::BTreeSet;

use super::subdivide::{barycentric, Subdivision};
use super::{Complex, ComplexError, CoverOfComplex, VertexId};

/// Vertices are the members; members span a simplex when they share a
/// simplex. Since members are closed, sharing a simplex means sharing a
/// vertex, so the facets are the sets of members through each vertex.
pub fn nerve(cover: &CoverOfComplex) -> Result<Complex, ComplexError> {
    if cover.members.is_empty() {
        return Err(ComplexError::EmptyCover);
    }
    let ids: Vec<VertexId> = (0..cover.members.len() as VertexId).collect();
    let facets = (0..cover.ambient.num_vertices()).map(|v| {
        let key = vec![v];
        cover.members.iter().enumerate().filter(|(_, m)| m.contains(&key)).map(|(i, _)| i).collect::<Vec<_>>()
    });
    Ok(Complex::from_positions(ids, facets.filter(|f: &Vec<usize>| !f.is_empty())))
}

/// The cover of the barycentric subdivision by closed vertex stars: the
/// member for an original vertex `v` holds the chains of simplices all
/// containing `v`. Its nerve is the original complex.
pub fn star_cover(c: &Complex) -> (Subdivision, CoverOfComplex) {
    let sd = barycentric(c);
    let members = (0..c.num_vertices())
        .map(|v| {
            sd.complex
                .simplices()
                .iter()
                .filter(|s| s.iter().all(|&i| sd.carrier[i].contains(&v)))
                .cloned()
                .collect::<BTreeSet<_>>()
        })
        .collect();
    let cover = CoverOfComplex::from_sets(sd.complex.clone(), members).expect("stars cover the subdivision");
    (sd, cover)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nerve_examples() {
        let boundary = Complex::new(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let arcs = CoverOfComplex::new(&boundary, &[vec![vec![0, 1]], vec![vec![1, 2]], vec![vec![0, 2]]]).unwrap();
        let n = nerve(&arcs).unwrap();
        assert_eq!(n.facets(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let itself = CoverOfComplex::new(&boundary, &[vec![vec![0, 1], vec![1, 2], vec![0, 2]]]).unwrap();
        assert_eq!(nerve(&itself).unwrap().num_simplices(), 1);
        let two = Complex::new(&[vec![0, 1], vec![2, 3]]).unwrap();
        let parts = CoverOfComplex::new(&two, &[vec![vec![0, 1]], vec![vec![2, 3]]]).unwrap();
        assert_eq!(nerve(&parts).unwrap().simplices().len(), 2);
    }

    #[test]
    fn nerve_of_star_cover_is_the_complex() {
        let c = Complex::new(&[vec![0, 1, 2], vec![2, 3], vec![3, 4], vec![2, 4]]).unwrap();
        let (_, cover) = star_cover(&c);
        let n = nerve(&cover).unwrap();
        assert_eq!(n.simplices(), c.simplices());
    }
}
