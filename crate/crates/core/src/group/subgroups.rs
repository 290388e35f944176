//! Subgroups of finite index as transitive permutation actions.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::finite::{perm_inv, Perm};
use super::homs::{for_each_hom, Symmetric};
use super::presentation::{cyclic_reduce, letter, letter_gen, GroupPresentation, Word};
use super::GroupError;

/// Conjugacy class of a subgroup of index `k`: the action of the generators
/// on the cosets, relabelled canonically. The subgroup itself is the
/// stabilizer of point 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubgroupClass {
    pub index: usize,
    pub action: Vec<Perm>,
}

pub fn is_transitive(perms: &[Perm], k: usize) -> bool {
    let mut seen = vec![false; k];
    if k == 0 {
        return true;
    }
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for p in perms {
            for j in [p[i], perm_inv(p)[i]] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Relabel points in order of discovery from `start`, scanning generators
/// and then their inverses.
fn relabel_from(perms: &[Perm], k: usize, start: usize) -> Vec<Perm> {
    let inverses: Vec<Perm> = perms.iter().map(|p| perm_inv(p)).collect();
    let mut label = vec![usize::MAX; k];
    let mut order = vec![start];
    label[start] = 0;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for p in perms.iter().chain(&inverses) {
            let y = p[x];
            if label[y] == usize::MAX {
                label[y] = order.len();
                order.push(y);
            }
        }
        i += 1;
    }
    perms
        .iter()
        .map(|p| (0..k).map(|new| label[p[order[new]]]).collect())
        .collect()
}

/// Canonical representative of a transitive action with the basepoint kept
/// at 0 (identifies the subgroup).
pub fn based_canonical(perms: &[Perm], k: usize) -> Vec<Perm> {
    relabel_from(perms, k, 0)
}

/// Canonical representative up to arbitrary relabelling (identifies the
/// conjugacy class).
pub fn class_canonical(perms: &[Perm], k: usize) -> Vec<Perm> {
    (0..k).map(|s| relabel_from(perms, k, s)).min().unwrap_or_default()
}

/// All conjugacy classes of subgroups of index exactly `k`, in canonical
/// order.
pub fn low_index_subgroups(
    pres: &GroupPresentation,
    k: usize,
    budget: u64,
) -> Result<Vec<SubgroupClass>, GroupError> {
    if k == 0 {
        return Err(GroupError::Parse("index must be positive".into()));
    }
    let mut classes = BTreeSet::new();
    for_each_hom(pres, &Symmetric(k), budget, &mut |h| {
        if is_transitive(h, k) {
            classes.insert(class_canonical(h, k));
        }
    })?;
    Ok(classes.into_iter().map(|action| SubgroupClass { index: k, action }).collect())
}

/// Subgroups (not classes) of index exactly `k`, as based canonical
/// actions.
pub fn subgroups_of_index(pres: &GroupPresentation, k: usize, budget: u64) -> Result<Vec<Vec<Perm>>, GroupError> {
    let mut out = BTreeSet::new();
    for_each_hom(pres, &Symmetric(k), budget, &mut |h| {
        if is_transitive(h, k) {
            out.insert(based_canonical(h, k));
        }
    })?;
    Ok(out.into_iter().collect())
}

impl SubgroupClass {
    /// Presentation of the stabilizer of 0 by Reidemeister–Schreier: a
    /// Schreier transversal from a breadth-first spanning tree of the coset
    /// graph, one generator per non-tree coset edge, and the conjugates
    /// `t_i r t_i⁻¹` of every relator rewritten.
    pub fn presentation(&self, pres: &GroupPresentation) -> GroupPresentation {
        let k = self.index;
        let n = pres.ngens();
        // tree[(coset, gen)] is true when the edge i --g--> i·g is a tree
        // edge (either direction)
        let mut tree = vec![vec![false; n]; k];
        let mut seen = vec![false; k];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in 0..n {
                let j = self.action[g][i];
                if !seen[j] {
                    seen[j] = true;
                    tree[i][g] = true;
                    queue.push_back(j);
                }
            }
            for g in 0..n {
                let j = perm_inv(&self.action[g])[i];
                if !seen[j] {
                    seen[j] = true;
                    tree[j][g] = true;
                    queue.push_back(j);
                }
            }
        }
        let mut gen_index = vec![vec![None; n]; k];
        let mut names = Vec::new();
        for i in 0..k {
            for g in 0..n {
                if !tree[i][g] {
                    gen_index[i][g] = Some(names.len());
                    names.push(format!("{}_{}", pres.generators[g], i));
                }
            }
        }
        let rewrite = |start: usize, w: &[i32]| -> Word {
            let mut out = Word::new();
            let mut c = start;
            for &l in w {
                let g = letter_gen(l);
                if l > 0 {
                    if let Some(s) = gen_index[c][g] {
                        out.push(letter(s, false));
                    }
                    c = self.action[g][c];
                } else {
                    let prev = perm_inv(&self.action[g])[c];
                    if let Some(s) = gen_index[prev][g] {
                        out.push(letter(s, true));
                    }
                    c = prev;
                }
            }
            cyclic_reduce(&out)
        };
        let relators = (0..k)
            .flat_map(|i| pres.relators.iter().map(move |r| (i, r)))
            .map(|(i, r)| rewrite(i, r))
            .filter(|w| !w.is_empty())
            .collect();
        GroupPresentation { generators: names, relators }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::homs::DEFAULT_BUDGET;
    use crate::group::presentation::surface_group;

    #[test]
    fn small_class_counts() {
        let f2 = GroupPresentation::free(2);
        assert_eq!(low_index_subgroups(&f2, 2, DEFAULT_BUDGET).unwrap().len(), 3);
        let z2 = surface_group(1, 0);
        assert_eq!(low_index_subgroups(&z2, 2, DEFAULT_BUDGET).unwrap().len(), 3);
        let c3 = GroupPresentation::parse(&["a"], &["aaa"]).unwrap();
        assert_eq!(low_index_subgroups(&c3, 3, DEFAULT_BUDGET).unwrap().len(), 1);
    }

    #[test]
    fn schreier_index_formula_for_free_groups() {
        // a subgroup of index k in F_n is free of rank k(n − 1) + 1
        let f2 = GroupPresentation::free(2);
        for k in 1..=3 {
            for c in low_index_subgroups(&f2, k, DEFAULT_BUDGET).unwrap() {
                let sub = c.presentation(&f2);
                assert_eq!(sub.ngens(), k + 1);
                assert!(sub.relators.is_empty());
            }
        }
    }

    #[test]
    fn torus_subgroups_are_tori() {
        let t = surface_group(1, 0);
        for k in 1..=3 {
            for c in low_index_subgroups(&t, k, DEFAULT_BUDGET).unwrap() {
                assert_eq!(c.presentation(&t).abelianization().to_string(), "Z^2");
            }
        }
    }
}
