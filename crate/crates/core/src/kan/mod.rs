//! Finite truncated simplicial sets given by face and degeneracy tables.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, ComplexMap};
use crate::group::FiniteGroupTable;

pub mod bundle;
pub mod lifting;

pub use bundle::{from_complex_map, from_cover, product_projection, star_subsets};
pub use lifting::{
    horn_fill_from_map, horn_fill_search, horn_fillers, kan_check, subordinate_lifting_check, LiftFailure,
    LiftReport,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KanError {
    #[error("index {index} out of range 0..={bound}")]
    BadIndex { index: usize, bound: usize },
    #[error("dimension {requested} exceeds the truncation {max_dim}")]
    DimensionExceeded { requested: usize, max_dim: usize },
    #[error("simplicial identity fails: {0}")]
    IdentityFails(String),
    #[error("not a simplicial map: {0}")]
    NotSimplicialMap(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Simplicial set truncated at `max_dim`. Elements of level `n` are
/// `0..size(n)`; `keys` names each element by a tuple (vertices, group
/// elements, …) used for display and membership tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSimplicialSet {
    pub max_dim: usize,
    /// `face[n][i][x] = d_i x` for `x` in level `n ≥ 1`.
    pub face: Vec<Vec<Vec<usize>>>,
    /// `degen[n][i][x] = s_i x` for `x` in level `n < max_dim`.
    pub degen: Vec<Vec<Vec<usize>>>,
    pub keys: Vec<Vec<Vec<usize>>>,
}

#[derive(Serialize, Deserialize)]
struct SSetJson {
    max_dim: usize,
    levels: Vec<usize>,
    d: Vec<Vec<usize>>,
    s: Vec<Vec<usize>>,
}

fn nondecreasing(len: usize, max: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for mut t in nondecreasing(len - 1, max) {
        let lo = t.last().copied().unwrap_or(0);
        for v in lo..=max {
            t.push(v);
            out.push(t.clone());
            t.pop();
        }
    }
    out
}

fn all_tuples(len: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

fn delete(t: &[usize], i: usize) -> Vec<usize> {
    let mut t = t.to_vec();
    t.remove(i);
    t
}

fn repeat(t: &[usize], i: usize) -> Vec<usize> {
    let mut t = t.to_vec();
    t.insert(i, t[i]);
    t
}

impl FinSimplicialSet {
    /// Tables from levels of keys and key-level face and degeneracy maps.
    pub fn build(
        levels: Vec<Vec<Vec<usize>>>,
        face: impl Fn(usize, usize, &[usize]) -> Vec<usize>,
        degen: impl Fn(usize, usize, &[usize]) -> Vec<usize>,
    ) -> Self {
        let max_dim = levels.len() - 1;
        let index: Vec<BTreeMap<&Vec<usize>, usize>> =
            levels.iter().map(|l| l.iter().enumerate().map(|(i, k)| (k, i)).collect()).collect();
        let look = |n: usize, k: Vec<usize>| -> usize {
            *index[n].get(&k).unwrap_or_else(|| panic!("key {k:?} missing from level {n}"))
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=max_dim {
            faces.push((0..=n).map(|i| levels[n].iter().map(|k| look(n - 1, face(n, i, k))).collect()).collect());
        }
        let degens = (0..max_dim)
            .map(|n| (0..=n).map(|i| levels[n].iter().map(|k| look(n + 1, degen(n, i, k))).collect()).collect())
            .collect();
        FinSimplicialSet { max_dim, face: faces, degen: degens, keys: levels }
    }

    /// Tuples closed under deleting and repeating entries.
    pub fn from_tuples(levels: Vec<Vec<Vec<usize>>>) -> Self {
        Self::build(levels, |_, i, t| delete(t, i), |_, i, t| repeat(t, i))
    }

    pub fn size(&self, n: usize) -> usize {
        self.keys[n].len()
    }

    pub fn d(&self, n: usize, i: usize, x: usize) -> usize {
        self.face[n][i][x]
    }

    pub fn s(&self, n: usize, i: usize, x: usize) -> usize {
        self.degen[n][i][x]
    }

    pub fn label(&self, n: usize, x: usize) -> String {
        let k = &self.keys[n][x];
        if k.is_empty() && n > 0 {
            return "*".into();
        }
        format!("({})", k.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
    }

    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        n > 0 && (0..n).any(|i| self.degen[n - 1][i].contains(&x))
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        (0..self.size(n)).filter(|&x| !self.is_degenerate(n, x)).collect()
    }

    /// `Δ^n` truncated at `max_dim`: nondecreasing tuples in `0..=n`.
    pub fn delta(n: usize, max_dim: usize) -> Self {
        Self::from_tuples((0..=max_dim).map(|m| nondecreasing(m + 1, n)).collect())
    }

    /// `Λ^n_k`: simplices of `Δ^n` missing some vertex other than `k`.
    pub fn horn(n: usize, k: usize, max_dim: usize) -> Result<Self, KanError> {
        if k > n {
            return Err(KanError::BadIndex { index: k, bound: n });
        }
        let keep = |t: &Vec<usize>| (0..=n).any(|v| v != k && !t.contains(&v));
        Ok(Self::from_tuples((0..=max_dim).map(|m| nondecreasing(m + 1, n).into_iter().filter(keep).collect()).collect()))
    }

    /// `∂Δ^n`.
    pub fn boundary(n: usize, max_dim: usize) -> Self {
        let keep = |t: &Vec<usize>| (0..=n).any(|v| !t.contains(&v));
        Self::from_tuples((0..=max_dim).map(|m| nondecreasing(m + 1, n).into_iter().filter(keep).collect()).collect())
    }

    pub fn point(max_dim: usize) -> Self {
        Self::delta(0, max_dim)
    }

    /// `A_*`: level `m` holds every map `[m] → A_v` whose image is a simplex.
    pub fn from_complex(c: &Complex, max_dim: usize) -> Self {
        let levels = (0..=max_dim)
            .map(|m| {
                all_tuples(m + 1, c.num_vertices())
                    .into_iter()
                    .filter(|t| {
                        let s: BTreeSet<usize> = t.iter().copied().collect();
                        c.contains(&s.into_iter().collect::<Vec<_>>())
                    })
                    .collect()
            })
            .collect();
        Self::from_tuples(levels)
    }

    /// Nerve of a finite group: level `n` is `Gⁿ`; outer faces drop an end,
    /// inner faces multiply neighbours, degeneracies insert the identity.
    pub fn nerve_of_group(g: &FiniteGroupTable, max_dim: usize) -> Self {
        let levels = (0..=max_dim).map(|n| all_tuples(n, g.order())).collect();
        let e = g.identity();
        Self::build(
            levels,
            |n, i, t| {
                let mut t = t.to_vec();
                if i == 0 {
                    t.remove(0);
                } else if i == n {
                    t.pop();
                } else {
                    let prod = g.mul(t[i - 1], t[i]);
                    t.splice(i - 1..=i, [prod]);
                }
                t
            },
            |_, i, t| {
                let mut t = t.to_vec();
                t.insert(i, e);
                t
            },
        )
    }

    /// Collapse a simplicial subset to a point.
    pub fn collapse(&self, sub: &SubSSet) -> Result<Self, KanError> {
        sub.check_closed(self)?;
        let mut keys = Vec::new();
        let mut new_index = Vec::new();
        for n in 0..=self.max_dim {
            let mut level = vec![Vec::new()];
            let mut idx = vec![0; self.size(n)];
            for x in 0..self.size(n) {
                if !sub.contains(n, x) {
                    idx[x] = level.len();
                    level.push(self.keys[n][x].clone());
                }
            }
            keys.push(level);
            new_index.push(idx);
        }
        // representative of each surviving element
        let rep: Vec<Vec<Option<usize>>> = (0..=self.max_dim)
            .map(|n| {
                let mut r = vec![None; keys[n].len()];
                for x in 0..self.size(n) {
                    if !sub.contains(n, x) {
                        r[new_index[n][x]] = Some(x);
                    }
                }
                r
            })
            .collect();
        let face = (0..=self.max_dim)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                (0..=n)
                    .map(|i| {
                        rep[n].iter().map(|r| r.map_or(0, |x| new_index[n - 1][self.d(n, i, x)])).collect()
                    })
                    .collect()
            })
            .collect();
        let degen = (0..self.max_dim)
            .map(|n| {
                (0..=n)
                    .map(|i| rep[n].iter().map(|r| r.map_or(0, |x| new_index[n + 1][self.s(n, i, x)])).collect())
                    .collect()
            })
            .collect();
        Ok(FinSimplicialSet { max_dim: self.max_dim, face, degen, keys })
    }

    /// `Δ¹/∂Δ¹`: one vertex and one nondegenerate edge.
    pub fn circle(max_dim: usize) -> Self {
        let d1 = Self::delta(1, max_dim);
        let b = SubSSet::from_predicate(&d1, |_, k| k.iter().all(|&v| v == k[0]));
        d1.collapse(&b).expect("boundary is a simplicial subset")
    }

    /// Levelwise product; keys are concatenated.
    pub fn product(&self, other: &Self) -> Self {
        let max_dim = self.max_dim.min(other.max_dim);
        let m = |n: usize| other.size(n);
        let keys = (0..=max_dim)
            .map(|n| {
                (0..self.size(n) * m(n))
                    .map(|p| {
                        let mut k = self.keys[n][p / m(n)].clone();
                        k.extend(&other.keys[n][p % m(n)]);
                        k
                    })
                    .collect()
            })
            .collect();
        let face = (0..=max_dim)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                (0..=n)
                    .map(|i| {
                        (0..self.size(n) * m(n))
                            .map(|p| self.d(n, i, p / m(n)) * m(n - 1) + other.d(n, i, p % m(n)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let degen = (0..max_dim)
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        (0..self.size(n) * m(n))
                            .map(|p| self.s(n, i, p / m(n)) * m(n + 1) + other.s(n, i, p % m(n)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        FinSimplicialSet { max_dim, face, degen, keys }
    }

    /// Check every simplicial identity on every tabled element.
    pub fn audit(&self) -> Result<(), KanError> {
        let fail = |s: String| Err(KanError::IdentityFails(s));
        for n in 0..=self.max_dim {
            for x in 0..self.size(n) {
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            if self.d(n - 1, i, self.d(n, j, x)) != self.d(n - 1, j - 1, self.d(n, i, x)) {
                                return fail(format!("d{i} d{j} on level {n} element {x}"));
                            }
                        }
                    }
                }
                if n < self.max_dim {
                    for j in 0..=n {
                        let y = self.s(n, j, x);
                        for i in 0..=n + 1 {
                            let lhs = self.d(n + 1, i, y);
                            let ok = if i == j || i == j + 1 {
                                lhs == x
                            } else if n == 0 {
                                true
                            } else if i < j {
                                lhs == self.s(n - 1, j - 1, self.d(n, i, x))
                            } else {
                                lhs == self.s(n - 1, j, self.d(n, i - 1, x))
                            };
                            if !ok {
                                return fail(format!("d{i} s{j} on level {n} element {x}"));
                            }
                        }
                        if n + 1 < self.max_dim {
                            for i in 0..=j {
                                if self.s(n + 1, i, y) != self.s(n + 1, j + 1, self.s(n, i, x)) {
                                    return fail(format!("s{i} s{j} on level {n} element {x}"));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SSetJson {
            max_dim: self.max_dim,
            levels: (0..=self.max_dim).map(|n| self.size(n)).collect(),
            d: self.face.iter().skip(1).flat_map(|l| l.iter().cloned()).collect(),
            s: self.degen.iter().flat_map(|l| l.iter().cloned()).collect(),
        })
        .expect("sset")
    }

    /// Tables are read level by level: `d` lists `d_0..d_n` for each
    /// `n ≥ 1`, `s` lists `s_0..s_n` for each `n < max_dim`. The result is
    /// audited.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, KanError> {
        let j: SSetJson = serde_json::from_value(v.clone()).map_err(|e| KanError::Parse(e.to_string()))?;
        if j.levels.len() != j.max_dim + 1 {
            return Err(KanError::Parse("level count".into()));
        }
        let bad = || KanError::Parse("table shape".into());
        let mut d = j.d.into_iter();
        let mut s = j.s.into_iter();
        let mut face = vec![Vec::new()];
        let mut degen = Vec::new();
        for n in 0..=j.max_dim {
            if n > 0 {
                let l: Vec<Vec<usize>> = (0..=n).map(|_| d.next().ok_or_else(bad)).collect::<Result<_, _>>()?;
                if l.iter().any(|t| t.len() != j.levels[n] || t.iter().any(|&y| y >= j.levels[n - 1])) {
                    return Err(bad());
                }
                face.push(l);
            }
            if n < j.max_dim {
                let l: Vec<Vec<usize>> = (0..=n).map(|_| s.next().ok_or_else(bad)).collect::<Result<_, _>>()?;
                if l.iter().any(|t| t.len() != j.levels[n] || t.iter().any(|&y| y >= j.levels[n + 1])) {
                    return Err(bad());
                }
                degen.push(l);
            }
        }
        let keys = j.levels.iter().enumerate().map(|(n, &c)| (0..c).map(|x| vec![n, x]).collect()).collect();
        let x = FinSimplicialSet { max_dim: j.max_dim, face, degen, keys };
        x.audit()?;
        Ok(x)
    }
}

/// A subset of every level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubSSet {
    pub members: Vec<Vec<bool>>,
}

impl SubSSet {
    pub fn from_predicate(x: &FinSimplicialSet, pred: impl Fn(usize, &[usize]) -> bool) -> Self {
        SubSSet { members: (0..=x.max_dim).map(|n| x.keys[n].iter().map(|k| pred(n, k)).collect()).collect() }
    }

    pub fn whole(x: &FinSimplicialSet) -> Self {
        Self::from_predicate(x, |_, _| true)
    }

    pub fn contains(&self, n: usize, x: usize) -> bool {
        self.members[n][x]
    }

    pub fn check_closed(&self, x: &FinSimplicialSet) -> Result<(), KanError> {
        for n in 0..=x.max_dim {
            for e in (0..x.size(n)).filter(|&e| self.contains(n, e)) {
                let faces_in = n == 0 || (0..=n).all(|i| self.contains(n - 1, x.d(n, i, e)));
                let degens_in = n == x.max_dim || (0..=n).all(|i| self.contains(n + 1, x.s(n, i, e)));
                if !faces_in || !degens_in {
                    return Err(KanError::InvalidCover(format!("not closed at level {n} element {e}")));
                }
            }
        }
        Ok(())
    }
}

/// Levelwise map commuting with all tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSetMap {
    pub source: FinSimplicialSet,
    pub target: FinSimplicialSet,
    pub maps: Vec<Vec<usize>>,
}

impl SSetMap {
    pub fn new(source: FinSimplicialSet, target: FinSimplicialSet, maps: Vec<Vec<usize>>) -> Result<Self, KanError> {
        let top = source.max_dim.min(target.max_dim);
        if maps.len() < top + 1 {
            return Err(KanError::NotSimplicialMap("missing levels".into()));
        }
        for n in 0..=top {
            for x in 0..source.size(n) {
                let fx = maps[n][x];
                if n > 0 {
                    for i in 0..=n {
                        if maps[n - 1][source.d(n, i, x)] != target.d(n, i, fx) {
                            return Err(KanError::NotSimplicialMap(format!("d{i} at level {n} element {x}")));
                        }
                    }
                }
                if n < top {
                    for i in 0..=n {
                        if maps[n + 1][source.s(n, i, x)] != target.s(n, i, fx) {
                            return Err(KanError::NotSimplicialMap(format!("s{i} at level {n} element {x}")));
                        }
                    }
                }
            }
        }
        Ok(SSetMap { source, target, maps })
    }

    pub fn max_dim(&self) -> usize {
        self.source.max_dim.min(self.target.max_dim)
    }

    /// Map induced on `A_*` by a simplicial map of complexes.
    pub fn of_complex_map(f: &ComplexMap, max_dim: usize) -> Self {
        let source = FinSimplicialSet::from_complex(&f.source, max_dim);
        let target = FinSimplicialSet::from_complex(&f.target, max_dim);
        let index: Vec<BTreeMap<&Vec<usize>, usize>> =
            target.keys.iter().map(|l| l.iter().enumerate().map(|(i, k)| (k, i)).collect()).collect();
        let maps = (0..=max_dim)
            .map(|n| {
                source.keys[n]
                    .iter()
                    .map(|t| index[n][&t.iter().map(|&v| f.vertex_map[v]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        SSetMap { source, target, maps }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_examples() {
        let d1 = FinSimplicialSet::delta(1, 3);
        assert_eq!(d1.size(1), 3);
        assert_eq!(d1.nondegenerate(1).len(), 1);
        let h = FinSimplicialSet::horn(2, 1, 2).unwrap();
        assert_eq!(h.nondegenerate(1).len(), 2);
        assert_eq!(h.nondegenerate(2).len(), 0);
        let p = FinSimplicialSet::point(3);
        assert!((0..=3).all(|n| p.size(n) == 1));
        assert_eq!(FinSimplicialSet::horn(2, 3, 2), Err(KanError::BadIndex { index: 3, bound: 2 }));
    }

    #[test]
    fn nerve_levels() {
        let z2 = FinSimplicialSet::nerve_of_group(&FiniteGroupTable::cyclic(2), 3);
        assert_eq!(z2.size(2), 4);
        let z3 = FinSimplicialSet::nerve_of_group(&FiniteGroupTable::cyclic(3), 3);
        assert_eq!(z3.size(1), 3);
        let trivial = FinSimplicialSet::nerve_of_group(&FiniteGroupTable::cyclic(1), 3);
        assert!((0..=3).all(|n| trivial.size(n) == 1));
    }

    #[test]
    fn complex_levels() {
        let b = crate::complex::circle();
        assert_eq!(FinSimplicialSet::from_complex(&b, 2).size(1), 9);
        let edge = Complex::new(&[vec![0, 1]]).unwrap();
        assert_eq!(FinSimplicialSet::from_complex(&edge, 2).size(0), 2);
    }

    #[test]
    fn every_constructor_satisfies_the_identities() {
        let s3 = FiniteGroupTable::symmetric(3);
        let all = [
            FinSimplicialSet::delta(2, 3),
            FinSimplicialSet::horn(3, 1, 3).unwrap(),
            FinSimplicialSet::boundary(2, 3),
            FinSimplicialSet::circle(3),
            FinSimplicialSet::nerve_of_group(&s3, 3),
            FinSimplicialSet::from_complex(&crate::complex::circle(), 3),
            FinSimplicialSet::circle(3).product(&FinSimplicialSet::delta(1, 3)),
        ];
        for x in &all {
            x.audit().unwrap();
            assert_eq!(&FinSimplicialSet::from_json(&x.to_json()).unwrap().face, &x.face);
        }
    }

    #[test]
    fn circle_has_one_vertex_and_one_edge() {
        let c = FinSimplicialSet::circle(2);
        assert_eq!(c.size(0), 1);
        assert_eq!(c.nondegenerate(1).len(), 1);
        assert_eq!(c.nondegenerate(2).len(), 0);
    }

    #[test]
    fn audit_catches_a_broken_table() {
        let mut x = FinSimplicialSet::delta(1, 2);
        x.face[1][0].swap(0, 2);
        assert!(x.audit().is_err());
    }
}
