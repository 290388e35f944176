//! Necessary-condition probes phrased through homomorphisms into finite
//! groups.

use std::collections::BTreeSet;

use serde::Serialize;

use super::finite::FiniteGroupTable;
use super::homs::{all_homs, count_homs, eval_word};
use super::presentation::{GroupPresentation, Word};
use super::GroupError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetCounts {
    pub target: String,
    pub left: u64,
    pub right: u64,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfiniteReport {
    pub per_target: Vec<TargetCounts>,
}

impl ProfiniteReport {
    pub fn passed(&self) -> bool {
        self.per_target.iter().all(|t| t.agree)
    }
}

/// Compare `|Hom(g1, T)|` and `|Hom(g2, T)|` for each target.
pub fn profinite_probe(
    g1: &GroupPresentation,
    g2: &GroupPresentation,
    targets: &[FiniteGroupTable],
    budget: u64,
) -> Result<ProfiniteReport, GroupError> {
    let mut per_target = Vec::new();
    for t in targets {
        let left = count_homs(g1, t, budget)?;
        let right = count_homs(g2, t, budget)?;
        per_target.push(TargetCounts { target: t.name.clone(), left, right, agree: left == right });
    }
    Ok(ProfiniteReport { per_target })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactTarget {
    pub target: String,
    /// Homomorphisms of the total group killing every fiber word.
    pub killing_fiber: u64,
    /// Homomorphisms of the base group.
    pub base: u64,
    /// Every `ψ ∘ p` respects the total group's relators.
    pub projection_valid: bool,
    /// The two sets of homomorphisms of the total group coincide.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSequenceReport {
    pub per_target: Vec<ExactTarget>,
}

impl ExactSequenceReport {
    pub fn passed(&self) -> bool {
        self.per_target.iter().all(|t| t.projection_valid && t.exact)
    }
}

/// Exactness of `N → H → G → 1` at the level of `T`-points: the
/// homomorphisms `H → T` that kill `N` are exactly those that factor as
/// `ψ ∘ p` with `ψ: G → T`. `projection[i]` is the image of the `i`-th
/// generator of `total` as a word in `base`.
pub fn exact_sequence_probe(
    total: &GroupPresentation,
    fiber_words: &[Word],
    base: &GroupPresentation,
    projection: &[Word],
    targets: &[FiniteGroupTable],
    budget: u64,
) -> Result<ExactSequenceReport, GroupError> {
    if projection.len() != total.ngens() {
        return Err(GroupError::ProjectionArity { expected: total.ngens(), got: projection.len() });
    }
    let killed = total.with_relators(fiber_words);
    let mut per_target = Vec::new();
    for t in targets {
        let left: BTreeSet<Vec<usize>> = all_homs(&killed, t, budget)?.into_iter().collect();
        let base_homs = all_homs(base, t, budget)?;
        let mut right = BTreeSet::new();
        let mut projection_valid = true;
        for psi in &base_homs {
            let images: Vec<Option<usize>> = psi.iter().map(|&x| Some(x)).collect();
            let phi: Vec<usize> = projection.iter().map(|w| eval_word(t, w, &images).expect("total")).collect();
            let phi_opt: Vec<Option<usize>> = phi.iter().map(|&x| Some(x)).collect();
            if total.relators.iter().any(|r| eval_word(t, r, &phi_opt) != Some(t.identity())) {
                projection_valid = false;
            }
            right.insert(phi);
        }
        per_target.push(ExactTarget {
            target: t.name.clone(),
            killing_fiber: left.len() as u64,
            base: base_homs.len() as u64,
            projection_valid,
            exact: left == right,
        });
    }
    Ok(ExactSequenceReport { per_target })
}
