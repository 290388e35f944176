//! Exact enumeration of homomorphisms from a finitely presented group into
//! a finite group.

use super::finite::{all_perms, perm_id, perm_inv, perm_mul, FiniteGroupTable, Perm};
use super::presentation::{letter_gen, GroupPresentation};
use super::GroupError;

/// Default cap on search nodes.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A finite group as seen by the enumerator.
pub trait FiniteTarget: Sync {
    type Elem: Clone + PartialEq + Send + Sync;
    fn elements(&self) -> Vec<Self::Elem>;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

impl FiniteTarget for FiniteGroupTable {
    type Elem = usize;
    fn elements(&self) -> Vec<usize> {
        (0..self.order()).collect()
    }
    fn identity(&self) -> usize {
        FiniteGroupTable::identity(self)
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        FiniteGroupTable::mul(self, *a, *b)
    }
    fn inv(&self, a: &usize) -> usize {
        FiniteGroupTable::inv(self, *a)
    }
}

/// The symmetric group on `k` points with permutations as elements.
pub struct Symmetric(pub usize);

impl FiniteTarget for Symmetric {
    type Elem = Perm;
    fn elements(&self) -> Vec<Perm> {
        all_perms(self.0)
    }
    fn identity(&self) -> Perm {
        perm_id(self.0)
    }
    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        perm_mul(a, b)
    }
    fn inv(&self, a: &Perm) -> Perm {
        perm_inv(a)
    }
}

/// Value of a word under a (partial) assignment; `None` if a letter is
/// unassigned.
pub fn eval_word<T: FiniteTarget>(t: &T, w: &[i32], images: &[Option<T::Elem>]) -> Option<T::Elem> {
    let mut acc = t.identity();
    for &l in w {
        let x = images[letter_gen(l)].as_ref()?;
        acc = if l > 0 { t.mul(&acc, x) } else { t.mul(&acc, &t.inv(x)) };
    }
    Some(acc)
}

struct Search<'a, T: FiniteTarget> {
    pres: &'a GroupPresentation,
    target: &'a T,
    elems: Vec<T::Elem>,
    nodes: u64,
    budget: u64,
}

impl<T: FiniteTarget> Search<'_, T> {
    /// Fill forced values and check completed relators. Returns false on a
    /// contradiction.
    fn propagate(&self, images: &mut [Option<T::Elem>]) -> bool {
        loop {
            let mut progress = false;
            for r in &self.pres.relators {
                let unknown: Vec<usize> =
                    r.iter().enumerate().filter(|(_, &l)| images[letter_gen(l)].is_none()).map(|(i, _)| i).collect();
                if unknown.is_empty() {
                    if eval_word(self.target, r, images) != Some(self.target.identity()) {
                        return false;
                    }
                    continue;
                }
                let g = letter_gen(r[unknown[0]]);
                if unknown.iter().all(|&i| letter_gen(r[i]) == g) && unknown.len() == 1 {
                    // r = u x^e v = 1 ⇒ x^e = u⁻¹ v⁻¹
                    let pos = unknown[0];
                    let u = eval_word(self.target, &r[..pos], images).unwrap();
                    let v = eval_word(self.target, &r[pos + 1..], images).unwrap();
                    let xe = self.target.inv(&self.target.mul(&v, &u));
                    let x = if r[pos] > 0 { xe } else { self.target.inv(&xe) };
                    images[g] = Some(x);
                    progress = true;
                }
            }
            if !progress {
                return true;
            }
        }
    }

    fn next_var(&self, images: &[Option<T::Elem>]) -> Option<usize> {
        // the unassigned generator in the relator with fewest unknowns
        let mut best: Option<(usize, usize)> = None;
        for r in &self.pres.relators {
            let unknown: Vec<usize> =
                r.iter().map(|&l| letter_gen(l)).filter(|&g| images[g].is_none()).collect();
            if let Some(&g) = unknown.iter().min() {
                if best.map_or(true, |(n, _)| unknown.len() < n) {
                    best = Some((unknown.len(), g));
                }
            }
        }
        best.map(|(_, g)| g).or_else(|| images.iter().position(Option::is_none))
    }

    fn run(
        &mut self,
        mut images: Vec<Option<T::Elem>>,
        visit: &mut dyn FnMut(&[T::Elem]),
    ) -> Result<(), GroupError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(GroupError::SearchBudgetExceeded { budget: self.budget });
        }
        if !self.propagate(&mut images) {
            return Ok(());
        }
        match self.next_var(&images) {
            None => {
                let full: Vec<T::Elem> = images.into_iter().map(Option::unwrap).collect();
                visit(&full);
                Ok(())
            }
            Some(g) => {
                for e in self.elems.clone() {
                    let mut next = images.clone();
                    next[g] = Some(e);
                    self.run(next, visit)?;
                }
                Ok(())
            }
        }
    }
}

/// Call `visit` on every homomorphism (as the tuple of generator images),
/// in a deterministic order. Relators with a single unknown letter are
/// solved instead of searched.
pub fn for_each_hom<T: FiniteTarget>(
    pres: &GroupPresentation,
    target: &T,
    budget: u64,
    visit: &mut dyn FnMut(&[T::Elem]),
) -> Result<(), GroupError> {
    let mut s = Search { pres, target, elems: target.elements(), nodes: 0, budget };
    s.run(vec![None; pres.ngens()], visit)
}

/// `|Hom(G, T)|`.
pub fn count_homs(pres: &GroupPresentation, target: &FiniteGroupTable, budget: u64) -> Result<u64, GroupError> {
    let mut n = 0u64;
    for_each_hom(pres, target, budget, &mut |_| n += 1)?;
    Ok(n)
}

/// All homomorphisms as generator-image tuples, sorted.
pub fn all_homs(pres: &GroupPresentation, target: &FiniteGroupTable, budget: u64) -> Result<Vec<Vec<usize>>, GroupError> {
    let mut out = Vec::new();
    for_each_hom(pres, target, budget, &mut |h| out.push(h.to_vec()))?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presentation::surface_group;

    /// Brute force over all generator tuples.
    fn naive(pres: &GroupPresentation, t: &FiniteGroupTable) -> u64 {
        let n = pres.ngens();
        let m = t.order();
        let mut count = 0;
        for code in 0..m.pow(n as u32) {
            let images: Vec<Option<usize>> = (0..n).map(|i| Some(code / m.pow(i as u32) % m)).collect();
            if pres.relators.iter().all(|r| eval_word(t, r, &images) == Some(t.identity())) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn known_counts() {
        let s3 = FiniteGroupTable::symmetric(3);
        assert_eq!(count_homs(&GroupPresentation::free(2), &s3, DEFAULT_BUDGET).unwrap(), 36);
        assert_eq!(count_homs(&surface_group(1, 0), &s3, DEFAULT_BUDGET).unwrap(), 18);
        let z2 = FiniteGroupTable::cyclic(2);
        assert_eq!(count_homs(&surface_group(1, 0), &z2, DEFAULT_BUDGET).unwrap(), 4);
    }

    #[test]
    fn agrees_with_naive_enumeration() {
        let pres = [
            surface_group(2, 0),
            GroupPresentation::parse(&["a", "b"], &["aaa", "bb", "abAB"]).unwrap(),
            GroupPresentation::parse(&["a", "b", "c"], &["abC", "aabb"]).unwrap(),
        ];
        for t in FiniteGroupTable::all_of_order_at_most_8() {
            for p in &pres {
                assert_eq!(count_homs(p, &t, DEFAULT_BUDGET).unwrap(), naive(p, &t), "{p} into {}", t.name);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let s3 = FiniteGroupTable::symmetric(3);
        assert!(matches!(
            count_homs(&GroupPresentation::free(8), &s3, 1000),
            Err(GroupError::SearchBudgetExceeded { .. })
        ));
    }
}
