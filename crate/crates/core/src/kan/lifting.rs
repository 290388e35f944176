//! Exhaustive horn filling and lifting checks.

use serde::Serialize;

use super::{FinSimplicialSet, KanError, SSetMap, SubSSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftFailure {
    pub n: usize,
    pub k: usize,
    /// Horn faces `d_i` for `i ≠ k`, by label; `None` at `k`.
    pub faces: Vec<Option<String>>,
    pub base: Option<String>,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub instances_checked: u64,
    pub fillers_found: u64,
    pub skipped: u64,
    pub failures: Vec<LiftFailure>,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }
}

fn check_dim(x: &FinSimplicialSet, n: usize, k: usize) -> Result<(), KanError> {
    if n > x.max_dim {
        return Err(KanError::DimensionExceeded { requested: n, max_dim: x.max_dim });
    }
    if n == 0 || k > n {
        return Err(KanError::BadIndex { index: k, bound: n });
    }
    Ok(())
}

/// Every `z` in level `n` with `d_i z = faces[i]` for `i ≠ k`, among the
/// given candidates.
fn matching(x: &FinSimplicialSet, n: usize, k: usize, faces: &[Option<usize>], candidates: &[usize]) -> Vec<usize> {
    candidates
        .iter()
        .copied()
        .filter(|&z| (0..=n).all(|i| i == k || faces[i] == Some(x.d(n, i, z))))
        .collect()
}

/// All fillers of a horn in canonical order.
pub fn horn_fillers(x: &FinSimplicialSet, n: usize, k: usize, faces: &[Option<usize>]) -> Result<Vec<usize>, KanError> {
    check_dim(x, n, k)?;
    let all: Vec<usize> = (0..x.size(n)).collect();
    Ok(matching(x, n, k, faces, &all))
}

/// First filler of the horn `faces` (entry `k` ignored), if any.
pub fn horn_fill_search(
    x: &FinSimplicialSet,
    n: usize,
    k: usize,
    faces: &[Option<usize>],
) -> Result<Option<usize>, KanError> {
    Ok(horn_fillers(x, n, k, faces)?.first().copied())
}

/// Fill a horn given as a map out of `Λ^n_k` (built by
/// [`FinSimplicialSet::horn`]).
pub fn horn_fill_from_map(h: &SSetMap, n: usize, k: usize) -> Result<Option<usize>, KanError> {
    let faces = (0..=n)
        .map(|i| {
            if i == k {
                return Ok(None);
            }
            let key: Vec<usize> = (0..=n).filter(|&v| v != i).collect();
            let e = h.source.keys[n - 1]
                .iter()
                .position(|t| *t == key)
                .ok_or_else(|| KanError::Parse(format!("source lacks face {key:?}")))?;
            Ok(Some(h.maps[n - 1][e]))
        })
        .collect::<Result<Vec<_>, KanError>>()?;
    horn_fill_search(&h.target, n, k, &faces)
}

/// Compatible horn families `(y_i)_{i≠k}` in level `n − 1`, with `y_i`
/// drawn from `candidates[i]`; `d_i y_j = d_{j−1} y_i` for `i < j`.
fn for_each_horn(
    x: &FinSimplicialSet,
    n: usize,
    k: usize,
    candidates: &[Vec<usize>],
    visit: &mut dyn FnMut(&[Option<usize>]),
) {
    fn go(
        x: &FinSimplicialSet,
        n: usize,
        k: usize,
        candidates: &[Vec<usize>],
        j: usize,
        faces: &mut Vec<Option<usize>>,
        visit: &mut dyn FnMut(&[Option<usize>]),
    ) {
        if j > n {
            visit(faces);
            return;
        }
        if j == k {
            faces.push(None);
            go(x, n, k, candidates, j + 1, faces, visit);
            faces.pop();
            return;
        }
        for &y in &candidates[j] {
            let ok = n < 2
                || (0..j).all(|i| match faces[i] {
                    Some(yi) => x.d(n - 1, i, y) == x.d(n - 1, j - 1, yi),
                    None => true,
                });
            if ok {
                faces.push(Some(y));
                go(x, n, k, candidates, j + 1, faces, visit);
                faces.pop();
            }
        }
    }
    go(x, n, k, candidates, 0, &mut Vec::new(), visit);
}

fn labels(x: &FinSimplicialSet, n: usize, faces: &[Option<usize>]) -> Vec<Option<String>> {
    faces.iter().map(|f| f.map(|y| x.label(n - 1, y))).collect()
}

/// Every horn `Λ^n_k → X` for `1 ≤ n ≤ up_to_dim` must have a filler.
pub fn kan_check(x: &FinSimplicialSet, up_to_dim: usize) -> Result<LiftReport, KanError> {
    if up_to_dim > x.max_dim {
        return Err(KanError::DimensionExceeded { requested: up_to_dim, max_dim: x.max_dim });
    }
    let mut report = LiftReport::default();
    for n in 1..=up_to_dim {
        let all: Vec<usize> = (0..x.size(n)).collect();
        let prev: Vec<Vec<usize>> = vec![(0..x.size(n - 1)).collect(); n + 1];
        for k in 0..=n {
            for_each_horn(x, n, k, &prev, &mut |faces| {
                report.instances_checked += 1;
                if matching(x, n, k, faces, &all).is_empty() {
                    report.failures.push(LiftFailure {
                        n,
                        k,
                        faces: labels(x, n, faces),
                        base: None,
                        reason: "no filler".into(),
                    });
                } else {
                    report.fillers_found += 1;
                }
            });
        }
    }
    Ok(report)
}

/// Lifting of horn inclusions against `p: E → B` over base simplices lying
/// in some member of `u`. Instances over other base simplices are skipped.
pub fn subordinate_lifting_check(p: &SSetMap, u: &[SubSSet], up_to_dim: usize) -> Result<LiftReport, KanError> {
    let (e, b) = (&p.source, &p.target);
    if up_to_dim > p.max_dim() {
        return Err(KanError::DimensionExceeded { requested: up_to_dim, max_dim: p.max_dim() });
    }
    for m in u {
        m.check_closed(b)?;
    }
    // fiber[n][y] = simplices of E over y
    let fiber: Vec<Vec<Vec<usize>>> = (0..=up_to_dim)
        .map(|n| {
            let mut f = vec![Vec::new(); b.size(n)];
            for z in 0..e.size(n) {
                f[p.maps[n][z]].push(z);
            }
            f
        })
        .collect();
    let mut report = LiftReport::default();
    for n in 1..=up_to_dim {
        for y in 0..b.size(n) {
            let subordinate = u.iter().any(|m| m.contains(n, y));
            let cands: Vec<Vec<usize>> = (0..=n).map(|i| fiber[n - 1][b.d(n, i, y)].clone()).collect();
            for k in 0..=n {
                for_each_horn(e, n, k, &cands, &mut |faces| {
                    if !subordinate {
                        report.skipped += 1;
                        return;
                    }
                    report.instances_checked += 1;
                    if matching(e, n, k, faces, &fiber[n][y]).is_empty() {
                        report.failures.push(LiftFailure {
                            n,
                            k,
                            faces: labels(e, n, faces),
                            base: Some(b.label(n, y)),
                            reason: "no lift".into(),
                        });
                    } else {
                        report.fillers_found += 1;
                    }
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroupTable;

    #[test]
    fn nerves_fill_inner_horns_uniquely() {
        for g in [FiniteGroupTable::cyclic(2), FiniteGroupTable::symmetric(3)] {
            let x = FinSimplicialSet::nerve_of_group(&g, 3);
            for n in 2..=3 {
                let prev: Vec<Vec<usize>> = vec![(0..x.size(n - 1)).collect(); n + 1];
                for k in 1..n {
                    let mut count = 0;
                    for_each_horn(&x, n, k, &prev, &mut |faces| {
                        assert_eq!(horn_fillers(&x, n, k, faces).unwrap().len(), 1);
                        count += 1;
                    });
                    assert!(count > 0);
                }
            }
        }
    }

    #[test]
    fn kan_examples() {
        let z3 = FinSimplicialSet::nerve_of_group(&FiniteGroupTable::cyclic(3), 3);
        assert!(kan_check(&z3, 3).unwrap().passed());
        assert!(kan_check(&FinSimplicialSet::point(3), 3).unwrap().passed());
        let circle = FinSimplicialSet::circle(2);
        let r = kan_check(&circle, 2).unwrap();
        assert!(!r.passed());
        let e = circle.label(1, circle.nondegenerate(1)[0]);
        assert!(r.failures.iter().any(|f| f.n == 2 && f.k == 1 && f.faces == vec![Some(e.clone()), None, Some(e.clone())]));
        assert!(matches!(kan_check(&circle, 3), Err(KanError::DimensionExceeded { .. })));
    }

    #[test]
    fn horn_map_into_a_point_fills() {
        let h = FinSimplicialSet::horn(2, 0, 2).unwrap();
        let pt = FinSimplicialSet::point(2);
        let maps = (0..=2).map(|n| vec![0; h.size(n)]).collect();
        let f = SSetMap::new(h, pt, maps).unwrap();
        assert_eq!(horn_fill_from_map(&f, 2, 0).unwrap(), Some(0));
    }
}
