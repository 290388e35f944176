//! Edge-path presentations of fundamental groups.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Complex, ComplexError, VertexId};
use crate::group::{letter, GroupPresentation, Word};

/// Spanning-tree presentation: one generator per edge outside a
/// breadth-first tree, one relator per triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePathGroup {
    pub presentation: GroupPresentation,
    pub basepoint: usize,
    /// Tree edges `(u, v)` with `u < v`.
    pub tree: BTreeSet<(usize, usize)>,
    /// Generator index of each non-tree edge `(u, v)`, `u < v`.
    pub generator: BTreeMap<(usize, usize), usize>,
    /// Tree parent of each vertex; the basepoint is its own parent.
    pub parent: Vec<usize>,
}

impl EdgePathGroup {
    /// Word of the oriented edge `u → v`.
    pub fn edge_word(&self, u: usize, v: usize) -> Word {
        let key = (u.min(v), u.max(v));
        match self.generator.get(&key) {
            Some(&g) => vec![letter(g, u > v)],
            None => Vec::new(),
        }
    }

    /// Word of an edge path given as consecutive vertices.
    pub fn path_word(&self, path: &[usize]) -> Word {
        path.windows(2).flat_map(|w| self.edge_word(w[0], w[1])).collect()
    }

    /// Tree path from the basepoint to `v`.
    pub fn tree_path(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut x = v;
        while self.parent[x] != x {
            x = self.parent[x];
            path.push(x);
        }
        path.reverse();
        path
    }

    /// Loop at the basepoint running out along the tree to `u`, across
    /// `u → v`, and back along the tree.
    pub fn edge_loop(&self, u: usize, v: usize) -> Vec<usize> {
        let mut p = self.tree_path(u);
        let mut back = self.tree_path(v);
        back.reverse();
        p.extend(back);
        p
    }
}

pub fn edge_path_group(c: &Complex, basepoint: VertexId) -> Result<EdgePathGroup, ComplexError> {
    let base = c.position(basepoint)?;
    if !c.is_connected() {
        return Err(ComplexError::NotConnected);
    }
    let mut adj = c.neighbours();
    for a in &mut adj {
        a.sort_unstable();
    }
    let mut parent = vec![usize::MAX; c.num_vertices()];
    parent[base] = base;
    let mut tree = BTreeSet::new();
    let mut queue = VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if parent[v] == usize::MAX {
                parent[v] = u;
                tree.insert((u.min(v), u.max(v)));
                queue.push_back(v);
            }
        }
    }
    let mut generator = BTreeMap::new();
    let mut names = Vec::new();
    for (u, v) in c.edges() {
        if !tree.contains(&(u, v)) {
            generator.insert((u, v), names.len());
            names.push(format!("e{}_{}", c.vertices()[u], c.vertices()[v]));
        }
    }
    let mut epg = EdgePathGroup {
        presentation: GroupPresentation { generators: names, relators: Vec::new() },
        basepoint: base,
        tree,
        generator,
        parent,
    };
    epg.presentation.relators =
        c.simplices_of_dim(2).into_iter().map(|t| epg.path_word(&[t[0], t[1], t[2], t[0]])).collect();
    Ok(epg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let boundary = Complex::new(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let g = edge_path_group(&boundary, 0).unwrap().presentation;
        assert_eq!((g.ngens(), g.relators.len()), (1, 0));
        let wedge = Complex::new(&[vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 3], vec![3, 4], vec![0, 4]]).unwrap();
        let g = edge_path_group(&wedge, 0).unwrap().presentation;
        assert_eq!((g.ngens(), g.relators.len()), (2, 0));
        let tri = Complex::new(&[vec![0, 1, 2]]).unwrap();
        let g = edge_path_group(&tri, 0).unwrap().presentation;
        assert_eq!((g.ngens(), g.relators.len()), (1, 1));
        assert_eq!(g.simplify().ngens(), 0);
        let two = Complex::new(&[vec![0], vec![1]]).unwrap();
        assert_eq!(edge_path_group(&two, 0), Err(ComplexError::NotConnected));
    }

    #[test]
    fn edge_loops_start_at_the_basepoint() {
        let boundary = Complex::new(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let g = edge_path_group(&boundary, 1).unwrap();
        let l = g.edge_loop(0, 2);
        assert_eq!((l[0], *l.last().unwrap()), (g.basepoint, g.basepoint));
        assert_eq!(g.path_word(&l).len(), 1);
    }
}
