//! Finite closed simplicial complexes.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

pub mod edge_path;
pub mod homology;
pub mod models;
pub mod nerve;
pub mod realize;
pub mod subdivide;

pub use edge_path::{edge_path_group, EdgePathGroup};
pub use homology::{cohomology_order_mod, format_group, homology, Coefficients, HomologyResult};
pub use models::{
    circle, curve, presentation_complex, simplex, simplex_boundary, torus, wedge_of_circles,
};
pub use nerve::{nerve, star_cover};
pub use realize::{adjunction_decode, realization, realize_map, vertex_images, Assignment};
pub use subdivide::{barycentric, barycentric_iterated, until_subordinate, Subdivision};

pub type VertexId = u64;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("empty facet")]
    EmptyFacet,
    #[error("complex is not connected")]
    NotConnected,
    #[error("vertex map does not send {0:?} to a simplex")]
    NotSimplicial(Vec<VertexId>),
    #[error("assignments disagree at vertex {0}")]
    IncompatibleOnFace(VertexId),
    #[error("coefficient modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("no subordinate subdivision within {0} rounds")]
    SubdivisionBudgetExceeded(usize),
    #[error("cover has no members")]
    EmptyCover,
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A finite closed simplicial complex. Vertices keep their input order;
/// simplices are stored as sorted lists of vertex positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    vertices: Vec<VertexId>,
    simplices: BTreeSet<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    #[serde(default)]
    vertices: Vec<VertexId>,
    facets: Vec<Vec<VertexId>>,
}

fn nonempty_subsets(s: &[usize], out: &mut BTreeSet<Vec<usize>>) {
    if !out.insert(s.to_vec()) || s.len() == 1 {
        return;
    }
    for i in 0..s.len() {
        let mut t = s.to_vec();
        t.remove(i);
        nonempty_subsets(&t, out);
    }
}

impl Complex {
    /// Downward closure of the facets. Vertex order is order of first
    /// appearance.
    pub fn new(facets: &[Vec<VertexId>]) -> Result<Self, ComplexError> {
        Self::with_vertices(&[], facets)
    }

    /// As [`Complex::new`], with `vertices` listed first (isolated vertices
    /// are allowed).
    pub fn with_vertices(vertices: &[VertexId], facets: &[Vec<VertexId>]) -> Result<Self, ComplexError> {
        let mut order = Vec::new();
        let mut pos = BTreeMap::new();
        for &v in vertices.iter().chain(facets.iter().flatten()) {
            pos.entry(v).or_insert_with(|| {
                order.push(v);
                order.len() - 1
            });
        }
        let mut simplices = BTreeSet::new();
        for &v in vertices {
            simplices.insert(vec![pos[&v]]);
        }
        for f in facets {
            if f.is_empty() {
                return Err(ComplexError::EmptyFacet);
            }
            let mut s: Vec<usize> = f.iter().map(|v| pos[v]).collect();
            s.sort_unstable();
            s.dedup();
            nonempty_subsets(&s, &mut simplices);
        }
        Ok(Complex { vertices: order, simplices })
    }

    /// Build directly from position sets; used by constructions that
    /// already know the positions.
    pub(crate) fn from_positions(vertices: Vec<VertexId>, facets: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut simplices: BTreeSet<Vec<usize>> = (0..vertices.len()).map(|i| vec![i]).collect();
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            nonempty_subsets(&f, &mut simplices);
        }
        Complex { vertices, simplices }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn position(&self, v: VertexId) -> Result<usize, ComplexError> {
        self.vertices.iter().position(|&w| w == v).ok_or(ComplexError::UnknownVertex(v))
    }

    /// All simplices as sorted position lists.
    pub fn simplices(&self) -> &BTreeSet<Vec<usize>> {
        &self.simplices
    }

    pub fn num_simplices(&self) -> usize {
        self.simplices.len()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplices.contains(s)
    }

    /// Simplices of dimension `n` in lexicographic order.
    pub fn simplices_of_dim(&self, n: usize) -> Vec<&Vec<usize>> {
        self.simplices.iter().filter(|s| s.len() == n + 1).collect()
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    /// Maximal simplices in lexicographic order.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut covered = BTreeSet::new();
        for s in &self.simplices {
            for i in 0..s.len() {
                if s.len() > 1 {
                    let mut t = s.clone();
                    t.remove(i);
                    covered.insert(t);
                }
            }
        }
        self.simplices.iter().filter(|s| !covered.contains(*s)).cloned().collect()
    }

    pub fn ids(&self, s: &[usize]) -> Vec<VertexId> {
        s.iter().map(|&i| self.vertices[i]).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().map(|s| if s.len() % 2 == 1 { 1 } else { -1 }).sum()
    }

    /// Edges as position pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.simplices_of_dim(1).into_iter().map(|e| (e[0], e[1])).collect()
    }

    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for (u, v) in self.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Component index of each vertex, numbered by first vertex.
    pub fn components(&self) -> Vec<usize> {
        let adj = self.neighbours();
        let mut comp = vec![usize::MAX; self.num_vertices()];
        let mut next = 0;
        for s in 0..self.num_vertices() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// Singletons present and every face of a simplex present.
    pub fn is_closed(&self) -> bool {
        (0..self.num_vertices()).all(|i| self.simplices.contains(&vec![i]))
            && self.simplices.iter().all(|s| {
                s.len() == 1
                    || (0..s.len()).all(|i| {
                        let mut t = s.clone();
                        t.remove(i);
                        self.simplices.contains(&t)
                    })
            })
    }

    /// Subcomplex generated by the given facets (vertex ids), checked to lie
    /// inside `self`, as a set of position lists.
    pub fn subcomplex(&self, facets: &[Vec<VertexId>]) -> Result<BTreeSet<Vec<usize>>, ComplexError> {
        let mut out = BTreeSet::new();
        for f in facets {
            if f.is_empty() {
                return Err(ComplexError::EmptyFacet);
            }
            let mut s = f.iter().map(|&v| self.position(v)).collect::<Result<Vec<_>, _>>()?;
            s.sort_unstable();
            s.dedup();
            if !self.simplices.contains(&s) {
                return Err(ComplexError::InvalidCover(format!("{f:?} is not a simplex")));
            }
            nonempty_subsets(&s, &mut out);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let facets = self.facets().iter().map(|f| self.ids(f)).collect();
        serde_json::to_value(ComplexJson { vertices: self.vertices.clone(), facets }).expect("complex")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ComplexError> {
        let c: ComplexJson = serde_json::from_value(v.clone()).map_err(|e| ComplexError::Parse(e.to_string()))?;
        Self::with_vertices(&c.vertices, &c.facets)
    }
}

/// Simplicial map given on vertex positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMap {
    pub source: Complex,
    pub target: Complex,
    pub vertex_map: Vec<usize>,
}

impl ComplexMap {
    /// `map` sends source vertex ids to target vertex ids.
    pub fn new(source: Complex, target: Complex, map: &BTreeMap<VertexId, VertexId>) -> Result<Self, ComplexError> {
        let vertex_map = source
            .vertices()
            .iter()
            .map(|v| {
                let w = map.get(v).ok_or(ComplexError::UnknownVertex(*v))?;
                target.position(*w)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_positions(source, target, vertex_map)
    }

    pub fn from_positions(source: Complex, target: Complex, vertex_map: Vec<usize>) -> Result<Self, ComplexError> {
        for s in source.simplices() {
            let mut img: Vec<usize> = s.iter().map(|&i| vertex_map[i]).collect();
            img.sort_unstable();
            img.dedup();
            if !target.contains(&img) {
                return Err(ComplexError::NotSimplicial(source.ids(s)));
            }
        }
        Ok(ComplexMap { source, target, vertex_map })
    }

    pub fn identity(c: &Complex) -> Self {
        ComplexMap { source: c.clone(), target: c.clone(), vertex_map: (0..c.num_vertices()).collect() }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ComplexMap) -> Result<Self, ComplexError> {
        if self.target != other.source {
            return Err(ComplexError::Parse("maps are not composable".into()));
        }
        let vm = self.vertex_map.iter().map(|&i| other.vertex_map[i]).collect();
        Ok(ComplexMap { source: self.source.clone(), target: other.target.clone(), vertex_map: vm })
    }

    /// Image of a simplex as a sorted position list.
    pub fn image(&self, s: &[usize]) -> Vec<usize> {
        let mut img: Vec<usize> = s.iter().map(|&i| self.vertex_map[i]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }
}

/// Subcomplexes of a common complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverOfComplex {
    pub ambient: Complex,
    pub members: Vec<BTreeSet<Vec<usize>>>,
}

#[derive(Serialize, Deserialize)]
struct CoverJson {
    members: Vec<Vec<Vec<VertexId>>>,
}

impl CoverOfComplex {
    /// Members given by facet lists. The union must be the whole complex.
    pub fn new(ambient: &Complex, members: &[Vec<Vec<VertexId>>]) -> Result<Self, ComplexError> {
        let sets = members.iter().map(|m| ambient.subcomplex(m)).collect::<Result<Vec<_>, _>>()?;
        Self::from_sets(ambient.clone(), sets)
    }

    pub fn from_sets(ambient: Complex, members: Vec<BTreeSet<Vec<usize>>>) -> Result<Self, ComplexError> {
        if members.is_empty() {
            return Err(ComplexError::EmptyCover);
        }
        if members.iter().any(|m| m.is_empty()) {
            return Err(ComplexError::InvalidCover("empty member".into()));
        }
        let union: BTreeSet<&Vec<usize>> = members.iter().flatten().collect();
        if union.len() != ambient.num_simplices() {
            return Err(ComplexError::InvalidCover("members do not cover every simplex".into()));
        }
        Ok(CoverOfComplex { ambient, members })
    }

    pub fn from_json(ambient: &Complex, v: &serde_json::Value) -> Result<Self, ComplexError> {
        let c: CoverJson = serde_json::from_value(v.clone()).map_err(|e| ComplexError::Parse(e.to_string()))?;
        Self::new(ambient, &c.members)
    }

    /// A member as a complex on its own vertices.
    pub fn member_complex(&self, i: usize) -> Complex {
        let m = &self.members[i];
        let verts: Vec<usize> = m.iter().filter(|s| s.len() == 1).map(|s| s[0]).collect();
        let facets: Vec<Vec<VertexId>> = m.iter().map(|s| self.ambient.ids(s)).collect();
        let ids: Vec<VertexId> = verts.iter().map(|&i| self.ambient.vertices()[i]).collect();
        Complex::with_vertices(&ids, &facets).expect("member")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_complex_examples() {
        assert_eq!(Complex::new(&[vec![0, 1, 2]]).unwrap().num_simplices(), 7);
        assert_eq!(Complex::new(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap().num_simplices(), 6);
        assert_eq!(Complex::new(&[vec![0, 1], vec![0, 1]]).unwrap(), Complex::new(&[vec![0, 1]]).unwrap());
        assert_eq!(Complex::new(&[vec![]]), Err(ComplexError::EmptyFacet));
    }

    #[test]
    fn vertex_order_is_input_order() {
        let c = Complex::new(&[vec![5, 2], vec![2, 9]]).unwrap();
        assert_eq!(c.vertices(), &[5, 2, 9]);
        assert_eq!(c.facets(), vec![vec![0, 1], vec![1, 2]]);
        assert!(c.is_closed());
    }

    #[test]
    fn json_round_trip() {
        let c = Complex::with_vertices(&[7], &[vec![0, 1, 2], vec![2, 3]]).unwrap();
        assert_eq!(Complex::from_json(&c.to_json()).unwrap(), c);
        assert!(!c.is_connected());
    }

    #[test]
    fn non_simplicial_maps_are_rejected() {
        let edge = Complex::new(&[vec![0, 1]]).unwrap();
        let two_points = Complex::with_vertices(&[0, 1], &[]).unwrap();
        assert!(matches!(
            ComplexMap::from_positions(edge, two_points, vec![0, 1]),
            Err(ComplexError::NotSimplicial(_))
        ));
    }
}
