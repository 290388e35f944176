//! Smith normal form of integer matrices, generic over the integer type.
//!
//! Matrices arrive as sparse rows. Unit pivots are eliminated sparsely
//! first (boundary matrices are mostly ±1), and the small remainder is
//! finished densely.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};

pub trait SnfInt: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + std::fmt::Debug {}
impl<T> SnfInt for T where T: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + std::fmt::Debug {}

/// Diagonal data of a Smith normal form: the rank and the invariant
/// factors `d_1 | d_2 | … | d_rank`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith<T> {
    pub rank: usize,
    pub factors: Vec<T>,
}

impl<T: SnfInt> Smith<T> {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<T> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub type SparseRow<T> = Vec<(usize, T)>;

fn axpy<T: SnfInt>(target: &SparseRow<T>, k: &T, src: &SparseRow<T>) -> Option<SparseRow<T>> {
    // target − k·src, both sorted by column
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < src.len() {
        let take_t = j >= src.len() || (i < target.len() && target[i].0 < src[j].0);
        let take_s = i >= target.len() || (j < src.len() && src[j].0 < target[i].0);
        if take_t {
            out.push(target[i].clone());
            i += 1;
        } else if take_s {
            let v = T::zero().checked_sub(&k.checked_mul(&src[j].1)?)?;
            out.push((src[j].0, v));
            j += 1;
        } else {
            let v = target[i].1.checked_sub(&k.checked_mul(&src[j].1)?)?;
            if !v.is_zero() {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Smith form of the matrix with the given sparse rows, or `None` if an
/// intermediate value overflows `T`.
pub fn smith_sparse<T: SnfInt>(rows: Vec<SparseRow<T>>, ncols: usize) -> Option<Smith<T>> {
    let mut rows: Vec<Option<SparseRow<T>>> = rows
        .into_iter()
        .map(|mut r| {
            r.retain(|(_, v)| !v.is_zero());
            r.sort_by_key(|(c, _)| *c);
            Some(r)
        })
        .collect();
    // column → rows having a nonzero entry there
    let mut col_rows: Vec<BTreeMap<usize, ()>> = vec![BTreeMap::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for (c, _) in r.as_ref().unwrap() {
            col_rows[*c].insert(i, ());
        }
    }
    let mut units = 0usize;
    loop {
        let mut pivot = None;
        'search: for (i, r) in rows.iter().enumerate() {
            if let Some(r) = r {
                for (c, v) in r {
                    if v.abs().is_one() {
                        pivot = Some((i, *c));
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pc)) = pivot else { break };
        let prow = rows[pi].take().unwrap();
        for (c, _) in &prow {
            col_rows[*c].remove(&pi);
        }
        let pv = prow.iter().find(|(c, _)| *c == pc).unwrap().1.clone();
        let others: Vec<usize> = col_rows[pc].keys().copied().collect();
        for oi in others {
            let orow = rows[oi].take().unwrap();
            let ov = orow.iter().find(|(c, _)| *c == pc).unwrap().1.clone();
            // pv = ±1, so ov/pv is exact
            let k = ov * pv.clone();
            let new = axpy(&orow, &k, &prow)?;
            for (c, _) in &orow {
                col_rows[*c].remove(&oi);
            }
            for (c, _) in &new {
                col_rows[*c].insert(oi, ());
            }
            rows[oi] = Some(new);
        }
        units += 1;
    }
    // dense remainder on the surviving rows and columns
    let rest: Vec<SparseRow<T>> = rows.into_iter().flatten().filter(|r| !r.is_empty()).collect();
    let mut cols: Vec<usize> = rest.iter().flat_map(|r| r.iter().map(|(c, _)| *c)).collect();
    cols.sort_unstable();
    cols.dedup();
    let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut dense = vec![vec![T::zero(); cols.len()]; rest.len()];
    for (i, r) in rest.iter().enumerate() {
        for (c, v) in r {
            dense[i][col_pos[c]] = v.clone();
        }
    }
    let diag = smith_dense(dense)?;
    let mut factors = vec![T::one(); units];
    factors.extend(diag);
    Some(Smith { rank: factors.len(), factors })
}

/// Nonzero diagonal of the Smith form of a dense matrix, normalized to a
/// divisibility chain.
fn smith_dense<T: SnfInt>(mut m: Vec<Vec<T>>) -> Option<Vec<T>> {
    let nr = m.len();
    let nc = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !m[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..nr {
            if !m[i][t].is_zero() {
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..nc {
                    let v = m[i][j].checked_sub(&q.checked_mul(&m[t][j])?)?;
                    m[i][j] = v;
                }
                clean &= m[i][t].is_zero();
            }
        }
        for j in t + 1..nc {
            if !m[t][j].is_zero() {
                let q = m[t][j].div_floor(&m[t][t]);
                for i in t..nr {
                    let v = m[i][j].checked_sub(&q.checked_mul(&m[i][t])?)?;
                    m[i][j] = v;
                }
                clean &= m[t][j].is_zero();
            }
        }
        if clean {
            diag.push(m[t][t].abs());
            t += 1;
        }
    }
    // (a, b) ↦ (gcd, lcm) until every factor divides the next
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                if !diag[j].is_multiple_of(&diag[i]) {
                    let g = diag[i].gcd(&diag[j]);
                    let l = diag[i].checked_mul(&diag[j])? / g.clone();
                    diag[i] = g;
                    diag[j] = l;
                    changed = true;
                }
            }
        }
    }
    diag.sort();
    Some(diag)
}

/// Smith form with machine integers, redone with big integers on overflow.
pub fn smith(rows: &[SparseRow<i64>], ncols: usize) -> Smith<BigInt> {
    match smith_sparse::<i64>(rows.to_vec(), ncols) {
        Some(s) => Smith { rank: s.rank, factors: s.factors.into_iter().map(BigInt::from).collect() },
        None => {
            let big = rows
                .iter()
                .map(|r| r.iter().map(|(c, v)| (*c, BigInt::from(*v))).collect())
                .collect();
            smith_sparse::<BigInt>(big, ncols).expect("big integers do not overflow")
        }
    }
}

/// Number of solutions of `A x ≡ 0 (mod m)` with `x ∈ (ℤ/m)^ncols`, read
/// off the Smith form: `m^(ncols − rank) · Π gcd(d_i, m)`.
pub fn kernel_size_mod(s: &Smith<BigInt>, ncols: usize, m: u64) -> BigInt {
    let mb = BigInt::from(m);
    let mut out = num_traits::pow(mb.clone(), ncols - s.rank);
    for d in &s.factors {
        out *= d.gcd(&mb);
    }
    out
}

pub fn dense_to_sparse(m: &[Vec<i64>]) -> Vec<SparseRow<i64>> {
    m.iter()
        .map(|r| r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(c, v)| (c, *v)).collect())
        .collect()
}
