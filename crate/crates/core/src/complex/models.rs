//! Model complexes: simplices, circles, surfaces, tori and presentation
//! complexes.

use super::{Complex, ComplexError, VertexId};
use crate::group::{letter_gen, GroupPresentation};

pub fn simplex(n: usize) -> Complex {
    Complex::new(&[(0..=n as VertexId).collect()]).expect("simplex")
}

pub fn simplex_boundary(n: usize) -> Complex {
    let full: Vec<VertexId> = (0..=n as VertexId).collect();
    let facets: Vec<Vec<VertexId>> = (0..=n)
        .map(|i| full.iter().copied().filter(|&v| v != i as VertexId).collect())
        .collect();
    Complex::with_vertices(&full, &facets).expect("boundary")
}

/// Boundary of a triangle.
pub fn circle() -> Complex {
    simplex_boundary(2)
}

/// `n` triangle boundaries sharing vertex 0.
pub fn wedge_of_circles(n: usize) -> Complex {
    let mut facets = Vec::new();
    for i in 0..n as VertexId {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        facets.extend([vec![0, a], vec![a, b], vec![0, b]]);
    }
    Complex::with_vertices(&[0], &facets).expect("wedge")
}

/// Disk glued along a closed edge path (`boundary[0] = boundary[last]`):
/// a ring of fresh vertices parallel to the path and a fan to a fresh
/// centre. Fresh ids start at `next`.
fn disk_along(boundary: &[VertexId], next: &mut VertexId, facets: &mut Vec<Vec<VertexId>>) {
    let len = boundary.len() - 1;
    let ring: Vec<VertexId> = (0..len as VertexId).map(|j| *next + j).collect();
    let centre = *next + len as VertexId;
    *next = centre + 1;
    for j in 0..len {
        let (p, q) = (boundary[j], boundary[j + 1]);
        let (r, s) = (ring[j], ring[(j + 1) % len]);
        facets.push(vec![p, q, r]);
        facets.push(vec![q, r, s]);
        facets.push(vec![r, s, centre]);
    }
}

/// Closed orientable surface of genus `g` with `d` open triangles removed.
/// Genus zero is the tetrahedron boundary. For `g ≥ 1` the surface is the
/// `4g`-gon with sides `a₁b₁a₁⁻¹b₁⁻¹⋯`, each side cut into three edges,
/// filled by a disk; the removed triangles are pairwise vertex-disjoint
/// away from the disk centre.
pub fn curve(g: usize, d: usize) -> Result<Complex, ComplexError> {
    if g == 0 {
        if d > 4 {
            return Err(ComplexError::UnsupportedParameters(format!("genus 0 with {d} punctures")));
        }
        let s = simplex_boundary(3);
        let mut facets: Vec<Vec<VertexId>> = s.facets().iter().map(|f| s.ids(f)).collect();
        facets.drain(..d);
        let edges: Vec<Vec<VertexId>> = s.edges().iter().map(|&(u, v)| vec![u as VertexId, v as VertexId]).collect();
        facets.extend(edges);
        return Complex::new(&facets);
    }
    if d > 6 * g {
        return Err(ComplexError::UnsupportedParameters(format!("genus {g} with {d} punctures")));
    }
    // corner 0; generator t has interior side points 1 + 2t, 2 + 2t
    let mut boundary: Vec<VertexId> = Vec::new();
    for h in 0..g as VertexId {
        let (a, b) = (2 * h, 2 * h + 1);
        for (t, forward) in [(a, true), (b, true), (a, false), (b, false)] {
            let (x1, x2) = (1 + 2 * t, 2 + 2 * t);
            boundary.push(0);
            if forward {
                boundary.extend([x1, x2]);
            } else {
                boundary.extend([x2, x1]);
            }
        }
    }
    boundary.push(0);
    let mut next = 1 + 4 * g as VertexId;
    let mut facets = Vec::new();
    disk_along(&boundary, &mut next, &mut facets);
    // the fan triangles are every third facet; drop d of them, two apart
    let mut removed = 0;
    let mut j = 0;
    facets.retain(|_| {
        let keep = !(j % 3 == 2 && (j / 3) % 2 == 0 && removed < d);
        if !keep {
            removed += 1;
        }
        j += 1;
        keep
    });
    Complex::new(&facets)
}

/// Real torus of dimension `2·dim`: the product of `2·dim` triangle
/// boundaries with the staircase triangulation. Vertex ids are
/// lexicographic indices of coordinate tuples in `{0,1,2}`.
pub fn torus(dim: usize) -> Result<Complex, ComplexError> {
    if dim > 2 {
        return Err(ComplexError::UnsupportedParameters(format!("torus of dimension {dim}")));
    }
    let n = 2 * dim;
    if n == 0 {
        return Complex::new(&[vec![0]]);
    }
    let id = |x: &[usize]| x.iter().fold(0, |acc, &c| acc * 3 + c as VertexId);
    let edges = [(0, 1), (1, 2), (0, 2)];
    let perms = crate::group::all_perms(n);
    let mut facets = Vec::new();
    for code in 0..3usize.pow(n as u32) {
        let choice: Vec<(usize, usize)> = (0..n).map(|k| edges[code / 3usize.pow(k as u32) % 3]).collect();
        for p in &perms {
            let mut x: Vec<usize> = choice.iter().map(|e| e.0).collect();
            let mut f = vec![id(&x)];
            for &k in p {
                x[k] = choice[k].1;
                f.push(id(&x));
            }
            facets.push(f);
        }
    }
    facets.sort();
    Complex::new(&facets)
}

/// One vertex `0`; generator `t` is the loop `0, 1+2t, 2+2t`; each nonempty
/// relator bounds a disk glued along its edge path.
pub fn presentation_complex(pres: &GroupPresentation) -> Complex {
    let mut facets = Vec::new();
    for t in 0..pres.ngens() as VertexId {
        let (x1, x2) = (1 + 2 * t, 2 + 2 * t);
        facets.extend([vec![0, x1], vec![x1, x2], vec![0, x2]]);
    }
    let mut next = 1 + 2 * pres.ngens() as VertexId;
    for r in pres.relators.iter().filter(|r| !r.is_empty()) {
        let mut path = vec![0];
        for &l in r {
            let t = letter_gen(l) as VertexId;
            let (x1, x2) = (1 + 2 * t, 2 + 2 * t);
            if l > 0 {
                path.extend([x1, x2, 0]);
            } else {
                path.extend([x2, x1, 0]);
            }
        }
        disk_along(&path, &mut next, &mut facets);
    }
    Complex::with_vertices(&[0], &facets).expect("presentation complex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::homology::{homology, Coefficients};

    fn h1(c: &Complex) -> Vec<u64> {
        homology(c, Coefficients::Integers).unwrap().degree(1).to_vec()
    }

    #[test]
    fn euler_characteristics() {
        for g in 0..=3 {
            for d in 0..=3 {
                let c = curve(g, d).unwrap();
                assert_eq!(c.euler_characteristic(), 2 - 2 * g as i64 - d as i64, "curve({g},{d})");
                assert!(c.is_connected());
            }
        }
        assert_eq!(torus(1).unwrap().euler_characteristic(), 0);
        assert_eq!(torus(1).unwrap().simplices_of_dim(2).len(), 18);
    }

    #[test]
    fn model_homology() {
        assert!(h1(&curve(0, 0).unwrap()).is_empty());
        assert_eq!(h1(&curve(0, 3).unwrap()), vec![0, 0]);
        assert_eq!(h1(&curve(2, 0).unwrap()), vec![0; 4]);
        assert_eq!(h1(&torus(1).unwrap()), vec![0, 0]);
        assert_eq!(h1(&wedge_of_circles(3)), vec![0; 3]);
    }

    #[test]
    fn closed_surfaces_have_fundamental_class() {
        for g in 0..=2 {
            let h = homology(&curve(g, 0).unwrap(), Coefficients::Integers).unwrap();
            assert_eq!(h.degree(2), &[0]);
        }
    }

    #[test]
    fn presentation_complex_of_cyclic_group() {
        let p = GroupPresentation::parse(&["a"], &["aaa"]).unwrap();
        assert_eq!(h1(&presentation_complex(&p)), vec![3]);
        let t = crate::group::surface_group(1, 0);
        assert_eq!(h1(&presentation_complex(&t)), vec![0, 0]);
    }
}
