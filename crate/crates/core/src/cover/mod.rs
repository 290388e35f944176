//! Finite connected covers of complexes, described by monodromy.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::complex::{edge_path_group, homology, Coefficients, Complex, ComplexError, ComplexMap, EdgePathGroup, VertexId};
use crate::group::{
    all_perms, class_canonical, low_index_subgroups, perm_id, perm_inv, perm_mul, GroupError, Perm,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("complex is not connected")]
    NotConnected,
    #[error("search exceeded its budget of {budget} nodes")]
    SearchBudgetExceeded { budget: u64 },
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error(transparent)]
    Complex(ComplexError),
    #[error(transparent)]
    Group(GroupError),
}

impl From<ComplexError> for CoverError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::NotConnected => CoverError::NotConnected,
            e => CoverError::Complex(e),
        }
    }
}

impl From<GroupError> for CoverError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::SearchBudgetExceeded { budget } => CoverError::SearchBudgetExceeded { budget },
            e => CoverError::Group(e),
        }
    }
}

/// A degree-`k` cover: a permutation of the sheets for each generator of
/// the edge-path presentation (each edge outside the spanning tree). Sheet
/// `i` over `u` continues to sheet `i·σ` over `v` along `u → v`, `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermCover {
    pub base: Complex,
    pub degree: usize,
    pub edge_path: EdgePathGroup,
    pub perms: Vec<Perm>,
}

/// Total complex with its projection. Vertex `(v, i)` has id `v·k + i`
/// where `v` is the base vertex position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverComplex {
    pub total: Complex,
    pub projection: ComplexMap,
    pub degree: usize,
}

fn base_point(c: &Complex) -> Result<VertexId, CoverError> {
    c.vertices().first().copied().ok_or_else(|| CoverError::InvalidCover("empty base".into()))
}

impl PermCover {
    /// Validate monodromy data against the triangles of the base.
    pub fn new(base: &Complex, degree: usize, perms: Vec<Perm>) -> Result<Self, CoverError> {
        let edge_path = edge_path_group(base, base_point(base)?)?;
        if perms.len() != edge_path.presentation.ngens() {
            return Err(CoverError::InvalidCover(format!(
                "{} permutations for {} generators",
                perms.len(),
                edge_path.presentation.ngens()
            )));
        }
        for p in &perms {
            let mut q = p.clone();
            q.sort_unstable();
            if q != perm_id(degree) {
                return Err(CoverError::InvalidCover(format!("{p:?} is not a permutation of {degree} sheets")));
            }
        }
        let cover = PermCover { base: base.clone(), degree, edge_path, perms };
        for t in base.simplices_of_dim(2) {
            if cover.path_monodromy(&[t[0], t[1], t[2], t[0]]) != perm_id(degree) {
                return Err(CoverError::InvalidCover(format!("monodromy around {:?}", base.ids(t))));
            }
        }
        Ok(cover)
    }

    /// Monodromy along the oriented edge `u → v` (identity off the
    /// generators and for `u = v`).
    pub fn edge_monodromy(&self, u: usize, v: usize) -> Perm {
        match self.edge_path.generator.get(&(u.min(v), u.max(v))) {
            Some(&g) if u < v => self.perms[g].clone(),
            Some(&g) => perm_inv(&self.perms[g]),
            None => perm_id(self.degree),
        }
    }

    pub fn path_monodromy(&self, path: &[usize]) -> Perm {
        path.windows(2).fold(perm_id(self.degree), |acc, w| perm_mul(&acc, &self.edge_monodromy(w[0], w[1])))
    }

    pub fn total_space(&self) -> Result<CoverComplex, CoverError> {
        let k = self.degree;
        let n = self.base.num_vertices();
        let ids: Vec<VertexId> = (0..(n * k) as VertexId).collect();
        let mut facets = Vec::new();
        for f in self.base.facets() {
            for i in 0..k {
                facets.push(f.iter().map(|&v| (v * k + self.edge_monodromy(f[0], v)[i]) as VertexId).collect::<Vec<_>>());
            }
        }
        let total = Complex::with_vertices(&ids, &facets)?;
        let vertex_map = (0..n * k).map(|x| x / k).collect();
        let projection = ComplexMap::from_positions(total.clone(), self.base.clone(), vertex_map)?;
        for s in total.simplices() {
            if projection.image(s).len() != s.len() {
                return Err(CoverError::InvalidCover("projection collapses a simplex".into()));
            }
        }
        Ok(CoverComplex { total, projection, degree: k })
    }

    /// Connected when the total space is.
    pub fn is_connected(&self) -> bool {
        let k = self.degree;
        let mut seen = vec![false; self.base.num_vertices() * k];
        seen[self.edge_path.basepoint * k] = true;
        let mut queue = VecDeque::from([(self.edge_path.basepoint, 0)]);
        let adj = self.base.neighbours();
        while let Some((u, i)) = queue.pop_front() {
            for &v in &adj[u] {
                let j = self.edge_monodromy(u, v)[i];
                if !seen[v * k + j] {
                    seen[v * k + j] = true;
                    queue.push_back((v, j));
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Pullback along a simplicial map into the base.
    pub fn pullback(&self, f: &ComplexMap) -> Result<PermCover, CoverError> {
        if f.target != self.base {
            return Err(CoverError::InvalidCover("map does not land in the base".into()));
        }
        let src = edge_path_group(&f.source, base_point(&f.source)?)?;
        let perms: Vec<Perm> = src
            .generator
            .keys()
            .map(|&(u, v)| {
                let image: Vec<usize> = src.edge_loop(u, v).iter().map(|&x| f.vertex_map[x]).collect();
                self.path_monodromy(&image)
            })
            .collect();
        let gauge = self.path_monodromy(&self.edge_path.tree_path(f.vertex_map[src.basepoint]));
        // relabel sheets so that the source basepoint sees the base labels
        let perms = perms.into_iter().map(|p| perm_mul(&perm_mul(&gauge, &p), &perm_inv(&gauge))).collect();
        PermCover::new(&f.source, self.degree, perms)
    }

    /// Monodromy per generator name, sheets numbered from 1.
    pub fn to_json(&self) -> serde_json::Value {
        let mono: BTreeMap<&String, Vec<usize>> = self
            .edge_path
            .presentation
            .generators
            .iter()
            .zip(&self.perms)
            .map(|(g, p)| (g, p.iter().map(|i| i + 1).collect()))
            .collect();
        serde_json::json!({ "base": self.base.to_json(), "degree": self.degree, "monodromy": mono })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, CoverError> {
        let bad = |m: &str| CoverError::InvalidCover(m.to_string());
        let base = Complex::from_json(v.get("base").ok_or_else(|| bad("missing base"))?)?;
        let degree = v.get("degree").and_then(|d| d.as_u64()).ok_or_else(|| bad("missing degree"))? as usize;
        let mono = v.get("monodromy").and_then(|m| m.as_object()).ok_or_else(|| bad("missing monodromy"))?;
        let epg = edge_path_group(&base, base_point(&base)?)?;
        let perms = epg
            .presentation
            .generators
            .iter()
            .map(|g| {
                let p = mono.get(g).and_then(|p| p.as_array()).ok_or_else(|| bad(&format!("no permutation for {g}")))?;
                p.iter()
                    .map(|i| i.as_u64().filter(|&i| i >= 1).map(|i| i as usize - 1).ok_or_else(|| bad("sheet numbers start at 1")))
                    .collect::<Result<Perm, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        PermCover::new(&base, degree, perms)
    }
}

/// Relabel sheets by every permutation and keep the smallest data.
fn iso_canonical(perms: &[Perm], k: usize) -> Vec<Perm> {
    all_perms(k)
        .iter()
        .map(|t| {
            let ti = perm_inv(t);
            perms.iter().map(|p| perm_mul(&perm_mul(&ti, p), t)).collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default()
}

/// Assignments of permutations to the non-tree edges with trivial monodromy
/// around every triangle, by search with propagation along triangles.
struct TriangleSearch {
    k: usize,
    /// each triangle as three oriented letters `(generator, inverted)`;
    /// tree edges are omitted
    triangles: Vec<Vec<(usize, bool)>>,
    ngens: usize,
    elems: Vec<Perm>,
    nodes: u64,
    budget: u64,
}

impl TriangleSearch {
    fn value(&self, a: &[Option<Perm>], (g, inv): (usize, bool)) -> Option<Perm> {
        a[g].as_ref().map(|p| if inv { perm_inv(p) } else { p.clone() })
    }

    fn propagate(&self, a: &mut [Option<Perm>]) -> bool {
        loop {
            let mut progress = false;
            for t in &self.triangles {
                let unknown: Vec<usize> = (0..t.len()).filter(|&i| a[t[i].0].is_none()).collect();
                match unknown.len() {
                    0 => {
                        let prod = t.iter().fold(perm_id(self.k), |acc, &l| perm_mul(&acc, &self.value(a, l).unwrap()));
                        if prod != perm_id(self.k) {
                            return false;
                        }
                    }
                    1 => {
                        let pos = unknown[0];
                        let before = t[..pos].iter().fold(perm_id(self.k), |acc, &l| perm_mul(&acc, &self.value(a, l).unwrap()));
                        let after = t[pos + 1..].iter().fold(perm_id(self.k), |acc, &l| perm_mul(&acc, &self.value(a, l).unwrap()));
                        let x = perm_mul(&perm_inv(&before), &perm_inv(&after));
                        let (g, inv) = t[pos];
                        a[g] = Some(if inv { perm_inv(&x) } else { x });
                        progress = true;
                    }
                    _ => {}
                }
            }
            if !progress {
                return true;
            }
        }
    }

    fn run(&mut self, mut a: Vec<Option<Perm>>, out: &mut Vec<Vec<Perm>>) -> Result<(), CoverError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(CoverError::SearchBudgetExceeded { budget: self.budget });
        }
        if !self.propagate(&mut a) {
            return Ok(());
        }
        let pick = self
            .triangles
            .iter()
            .filter_map(|t| {
                let u: Vec<usize> = t.iter().map(|l| l.0).filter(|&g| a[g].is_none()).collect();
                u.first().map(|&g| (u.len(), g))
            })
            .min()
            .map(|(_, g)| g)
            .or_else(|| (0..self.ngens).find(|&g| a[g].is_none()));
        match pick {
            None => out.push(a.into_iter().map(Option::unwrap).collect()),
            Some(g) => {
                for e in self.elems.clone() {
                    let mut next = a.clone();
                    next[g] = Some(e);
                    self.run(next, out)?;
                }
            }
        }
        Ok(())
    }
}

/// Connected degree-`k` covers up to isomorphism, enumerated on the complex
/// itself: monodromy assignments trivial around triangles, connected total
/// space, one representative per relabelling class.
pub fn covers_of_degree(a: &Complex, k: usize, budget: u64) -> Result<Vec<PermCover>, CoverError> {
    if k == 0 {
        return Err(CoverError::InvalidCover("degree must be positive".into()));
    }
    let epg = edge_path_group(a, base_point(a)?)?;
    let ngens = epg.presentation.ngens();
    let triangles = a
        .simplices_of_dim(2)
        .into_iter()
        .map(|t| {
            [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])]
                .iter()
                .filter_map(|&(u, v)| epg.generator.get(&(u.min(v), u.max(v))).map(|&g| (g, u > v)))
                .collect()
        })
        .collect();
    let mut search = TriangleSearch { k, triangles, ngens, elems: all_perms(k), nodes: 0, budget };
    let mut found = Vec::new();
    search.run(vec![None; ngens], &mut found)?;
    let mut classes = BTreeSet::new();
    for perms in found {
        let cover = PermCover { base: a.clone(), degree: k, edge_path: epg.clone(), perms };
        if cover.is_connected() {
            classes.insert(iso_canonical(&cover.perms, k));
        }
    }
    Ok(classes
        .into_iter()
        .map(|perms| PermCover { base: a.clone(), degree: k, edge_path: epg.clone(), perms })
        .collect())
}

/// The lift of `f` through the cover sending the source basepoint to
/// `sheet` over its image, if the image of the fundamental group fixes
/// that sheet.
pub fn lifting_criterion(
    f: &ComplexMap,
    source_base: VertexId,
    sheet: usize,
    cover: &PermCover,
) -> Result<Option<ComplexMap>, CoverError> {
    if f.target != cover.base {
        return Err(CoverError::InvalidCover("map does not land in the base".into()));
    }
    if sheet >= cover.degree {
        return Err(CoverError::InvalidCover(format!("no sheet {sheet}")));
    }
    let src = edge_path_group(&f.source, source_base)?;
    for &(u, v) in src.generator.keys() {
        let image: Vec<usize> = src.edge_loop(u, v).iter().map(|&x| f.vertex_map[x]).collect();
        if cover.path_monodromy(&image)[sheet] != sheet {
            return Ok(None);
        }
    }
    let k = cover.degree;
    let mut sheets = vec![usize::MAX; f.source.num_vertices()];
    sheets[src.basepoint] = sheet;
    let adj = f.source.neighbours();
    let mut queue = VecDeque::from([src.basepoint]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if sheets[v] == usize::MAX {
                sheets[v] = cover.edge_monodromy(f.vertex_map[u], f.vertex_map[v])[sheets[u]];
                queue.push_back(v);
            }
        }
    }
    let total = cover.total_space()?;
    let vm = (0..f.source.num_vertices()).map(|x| f.vertex_map[x] * k + sheets[x]).collect();
    Ok(Some(ComplexMap::from_positions(f.source.clone(), total.total, vm)?))
}

/// First connected cover of degree at most `bound` whose total space has
/// vanishing first homology and an edge-path presentation that reduces to
/// the trivial one.
pub fn universal_cover_finite(a: &Complex, bound: usize, budget: u64) -> Result<Option<CoverComplex>, CoverError> {
    if !a.is_connected() {
        return Err(CoverError::NotConnected);
    }
    for k in 1..=bound {
        for cover in covers_of_degree(a, k, budget)? {
            let total = cover.total_space()?;
            let h = homology(&total.total, Coefficients::Integers)?;
            if !h.degree(1).is_empty() {
                continue;
            }
            let pi1 = edge_path_group(&total.total, total.total.vertices()[0])?;
            if pi1.presentation.simplify().ngens() == 0 {
                return Ok(Some(total));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RiemannObject {
    pub cover_h1: Vec<u64>,
    pub subgroup_h1: Vec<u64>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RiemannReport {
    pub degree: usize,
    pub covers: usize,
    pub subgroup_classes: usize,
    /// Every cover's monodromy class is one of the subgroup classes, and
    /// distinct covers give distinct classes.
    pub bijective: bool,
    pub objects: Vec<RiemannObject>,
}

impl RiemannReport {
    pub fn passed(&self) -> bool {
        self.covers == self.subgroup_classes && self.bijective && self.objects.iter().all(|o| o.agree)
    }
}

/// Covers of degree `k` enumerated on the complex against index-`k`
/// subgroup classes of its edge-path group. For `k ≤ 3` each cover's first
/// homology is compared with the abelianized Reidemeister–Schreier
/// presentation of its subgroup.
pub fn riemann_equivalence_check(a: &Complex, k: usize, budget: u64) -> Result<RiemannReport, CoverError> {
    let covers = covers_of_degree(a, k, budget)?;
    let pres = &edge_path_group(a, base_point(a)?)?.presentation;
    let classes = low_index_subgroups(pres, k, budget)?;
    let by_action: BTreeMap<&Vec<Perm>, usize> = classes.iter().enumerate().map(|(i, c)| (&c.action, i)).collect();
    let mut hit = BTreeSet::new();
    let mut bijective = true;
    let mut objects = Vec::new();
    for cover in &covers {
        let Some(&i) = by_action.get(&class_canonical(&cover.perms, k)) else {
            bijective = false;
            continue;
        };
        bijective &= hit.insert(i);
        if k <= 3 {
            let total = cover.total_space()?;
            let cover_h1 = homology(&total.total, Coefficients::Integers)?.degree(1).to_vec();
            let ab = classes[i].presentation(pres).abelianization();
            let mut subgroup_h1 = vec![0u64; ab.free_rank];
            subgroup_h1.extend(ab.torsion.iter().map(|t| u64::try_from(t).expect("small torsion")));
            objects.push(RiemannObject { agree: cover_h1 == subgroup_h1, cover_h1, subgroup_h1 });
        }
    }
    bijective &= hit.len() == classes.len();
    Ok(RiemannReport { degree: k, covers: covers.len(), subgroup_classes: classes.len(), bijective, objects })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{circle, curve, wedge_of_circles};
    use crate::group::DEFAULT_BUDGET;

    #[test]
    fn cover_counts() {
        assert_eq!(covers_of_degree(&wedge_of_circles(2), 2, DEFAULT_BUDGET).unwrap().len(), 3);
        assert_eq!(covers_of_degree(&circle(), 3, DEFAULT_BUDGET).unwrap().len(), 1);
        assert_eq!(covers_of_degree(&curve(0, 0).unwrap(), 2, DEFAULT_BUDGET).unwrap().len(), 0);
    }

    #[test]
    fn double_cover_of_the_circle_is_a_hexagon() {
        let c = &covers_of_degree(&circle(), 2, DEFAULT_BUDGET).unwrap()[0];
        let t = c.total_space().unwrap();
        assert_eq!((t.total.num_vertices(), t.total.edges().len()), (6, 6));
        assert!(t.total.is_connected());
        let h = homology(&t.total, Coefficients::Integers).unwrap();
        assert_eq!(h.degree(1), &[0]);
    }

    #[test]
    fn euler_characteristic_multiplies() {
        for base in [wedge_of_circles(2), crate::complex::torus(1).unwrap()] {
            for k in 1..=3 {
                for c in covers_of_degree(&base, k, DEFAULT_BUDGET).unwrap() {
                    let t = c.total_space().unwrap();
                    assert_eq!(t.total.euler_characteristic(), k as i64 * base.euler_characteristic());
                }
            }
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let c = covers_of_degree(&wedge_of_circles(2), 3, DEFAULT_BUDGET).unwrap().pop().unwrap();
        assert_eq!(PermCover::from_json(&c.to_json()).unwrap(), c);
        let tri = crate::complex::simplex(2);
        assert!(matches!(PermCover::new(&tri, 2, vec![vec![1, 0]]), Err(CoverError::InvalidCover(_))));
    }

    #[test]
    fn pullback_along_the_identity() {
        let base = wedge_of_circles(2);
        for c in covers_of_degree(&base, 3, DEFAULT_BUDGET).unwrap() {
            let back = c.pullback(&ComplexMap::identity(&base)).unwrap();
            assert_eq!(back.total_space().unwrap(), c.total_space().unwrap());
        }
    }
}
