//! Finite groups by multiplication table, and permutations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// Permutation of `{0, …, k−1}` in one-line notation.
pub type Perm = Vec<usize>;

/// Product acting on the right: `i·(pq) = (i·p)·q`.
pub fn perm_mul(p: &[usize], q: &[usize]) -> Perm {
    p.iter().map(|&i| q[i]).collect()
}

pub fn perm_inv(p: &[usize]) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

pub fn perm_id(k: usize) -> Perm {
    (0..k).collect()
}

/// All permutations of `{0, …, k−1}` in lexicographic order.
pub fn all_perms(k: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p: Perm = perm_id(k);
    loop {
        out.push(p.clone());
        // next permutation
        let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..k).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    pub name: String,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteGroupTable {
    /// Validate a multiplication table: closure, associativity, identity and
    /// inverses.
    pub fn new(table: Vec<Vec<usize>>, name: impl Into<String>) -> Result<Self, GroupError> {
        let n = table.len();
        let bad = |m: &str| GroupError::NotAGroup(m.to_string());
        if n == 0 {
            return Err(bad("empty table"));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(bad("table is not square over its elements"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| bad("no identity"))?;
        let mut inverse = vec![0; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| bad("missing inverse"))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad("not associative"));
                    }
                }
            }
        }
        Ok(FiniteGroupTable { table, identity, inverse, name: name.into() })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Group generated by permutations, elements in lexicographic order.
    pub fn from_permutations(gens: &[Perm], name: impl Into<String>) -> Self {
        let k = gens.first().map_or(0, |g| g.len());
        let mut elems: Vec<Perm> = vec![perm_id(k)];
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p = perm_mul(&elems[i], g);
                if !elems.contains(&p) {
                    elems.push(p);
                }
            }
            i += 1;
        }
        elems.sort();
        let index: BTreeMap<Perm, usize> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&perm_mul(a, b)]).collect())
            .collect();
        Self::new(table, name).expect("permutation groups are groups")
    }

    pub fn cyclic(m: usize) -> Self {
        let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        Self::new(table, format!("Z/{m}")).expect("cyclic group")
    }

    pub fn symmetric(k: usize) -> Self {
        if k < 2 {
            return Self::cyclic(1);
        }
        let mut cycle: Perm = (1..k).collect();
        cycle.push(0);
        let mut swap = perm_id(k);
        swap.swap(0, 1);
        Self::from_permutations(&[cycle, swap], format!("S{k}"))
    }

    /// Dihedral group of order `2m`, the symmetries of an `m`-gon.
    pub fn dihedral(m: usize) -> Self {
        let rot: Perm = (0..m).map(|i| (i + 1) % m).collect();
        let refl: Perm = (0..m).map(|i| (m - i) % m).collect();
        Self::from_permutations(&[rot, refl], format!("D{m}"))
    }

    /// Quaternion group in its regular representation.
    pub fn quaternion() -> Self {
        let i = vec![1, 2, 3, 0, 5, 6, 7, 4];
        let j = vec![4, 7, 6, 5, 2, 1, 0, 3];
        Self::from_permutations(&[i, j], "Q8")
    }

    pub fn direct_product(&self, other: &Self) -> Self {
        let (n, m) = (self.order(), other.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::new(table, format!("{} x {}", self.name, other.name)).expect("product of groups")
    }

    /// `Z/m`, `S<k>`, `D<m>`, `Q8`, and products joined by ` x `.
    pub fn builtin(spec: &str) -> Result<Self, GroupError> {
        let parts: Vec<&str> = spec.split(" x ").map(str::trim).collect();
        if parts.len() > 1 {
            let mut g = Self::builtin(parts[0])?;
            for p in &parts[1..] {
                g = g.direct_product(&Self::builtin(p)?);
            }
            return Ok(g);
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| GroupError::Parse(format!("unknown group {spec:?}")));
        if let Some(m) = spec.strip_prefix("Z/") {
            let m = num(m)?;
            if m == 0 {
                return Err(GroupError::Parse("Z/0 is infinite".into()));
            }
            return Ok(Self::cyclic(m));
        }
        if spec == "Q8" {
            return Ok(Self::quaternion());
        }
        if let Some(k) = spec.strip_prefix('S') {
            return Ok(Self::symmetric(num(k)?));
        }
        if let Some(m) = spec.strip_prefix('D') {
            let m = num(m)?;
            if m < 3 {
                return Err(GroupError::Parse("dihedral groups need m ≥ 3".into()));
            }
            return Ok(Self::dihedral(m));
        }
        Err(GroupError::Parse(format!("unknown group {spec:?}")))
    }

    /// One representative of every isomorphism class of groups of order at
    /// most 8.
    pub fn all_of_order_at_most_8() -> Vec<Self> {
        [
            "Z/1", "Z/2", "Z/3", "Z/4", "Z/2 x Z/2", "Z/5", "Z/6", "S3", "Z/7", "Z/8", "Z/4 x Z/2",
            "Z/2 x Z/2 x Z/2", "D4", "Q8",
        ]
        .iter()
        .map(|s| Self::builtin(s).expect("builtin"))
        .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableJson { order: self.order(), table: self.table.clone() }).expect("table")
    }

    /// Either a builtin name as a JSON string or `{"order", "table"}`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, GroupError> {
        if let Some(s) = v.as_str() {
            return Self::builtin(s);
        }
        let t: TableJson = serde_json::from_value(v.clone()).map_err(|e| GroupError::Parse(e.to_string()))?;
        if t.order != t.table.len() {
            return Err(GroupError::NotAGroup("order does not match table".into()));
        }
        Self::new(t.table, format!("table of order {}", t.order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_have_the_right_orders() {
        let orders: Vec<usize> = FiniteGroupTable::all_of_order_at_most_8().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]);
        assert!(!FiniteGroupTable::builtin("S3").unwrap().is_abelian());
        assert!(!FiniteGroupTable::quaternion().is_abelian());
        assert_eq!(all_perms(3).len(), 6);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = FiniteGroupTable::quaternion();
        let involutions = (0..8).filter(|&x| x != q.identity() && q.mul(x, x) == q.identity()).count();
        assert_eq!(involutions, 1);
        let d4 = FiniteGroupTable::dihedral(4);
        let involutions = (0..8).filter(|&x| x != d4.identity() && d4.mul(x, x) == d4.identity()).count();
        assert_eq!(involutions, 5);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FiniteGroupTable::new(vec![vec![0, 0], vec![0, 0]], "bad").is_err());
        assert!(FiniteGroupTable::new(vec![vec![0, 1], vec![1, 1]], "bad").is_err());
    }
}
