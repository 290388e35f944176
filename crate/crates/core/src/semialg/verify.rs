//! Exact comparison of two maps on a sample grid.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::map::SemiAlgMap;
use super::set::SemiAlgSet;
use super::SemiAlgError;
use crate::scalar::OrderedField;
use crate::{RcfNumber, Q};

/// One point where the two sides differ or fail to evaluate.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch<C> {
    pub point: Vec<C>,
    pub lhs: Result<Vec<C>, SemiAlgError>,
    pub rhs: Result<Vec<C>, SemiAlgError>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport<C> {
    pub checked_points: usize,
    pub failures: Vec<Mismatch<C>>,
}

impl<C> VerificationReport<C> {
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

/// Evaluate both sides at every grid point of `domain` (denominator
/// `grid`) and at every extra point lying in `domain`. Grid points come
/// first in lexicographic order, then the extra points in the given order.
pub fn verify_identity<C, L, R>(
    lhs: &L,
    rhs: &R,
    domain: &SemiAlgSet<C>,
    grid: u32,
    extra_points: &[Vec<C>],
) -> VerificationReport<C>
where
    C: OrderedField,
    L: SemiAlgMap<C> + ?Sized,
    R: SemiAlgMap<C> + ?Sized,
{
    let mut points = domain.grid_points(grid);
    points.extend(extra_points.iter().filter(|p| domain.contains(p).unwrap_or(false)).cloned());
    let failures: Vec<Mismatch<C>> = points
        .par_iter()
        .filter_map(|p| {
            let l = lhs.eval(p);
            let r = rhs.eval(p);
            match (&l, &r) {
                (Ok(a), Ok(b)) if a == b => None,
                _ => Some(Mismatch { point: p.clone(), lhs: l, rhs: r }),
            }
        })
        .collect();
    VerificationReport { checked_points: points.len(), failures }
}

/// Fractional parts `√m − ⌊√m⌋` of square roots of non-squares, all
/// irrational and in `(0, 1)`.
fn irrational_units() -> Vec<RcfNumber> {
    [2i64, 3, 5, 6, 7, 10, 11]
        .iter()
        .map(|&m| {
            let root = RcfNumber::sqrt_of(&Q::from_integer(BigInt::from(m))).expect("positive");
            let floor = (1..).take_while(|k| k * k <= m).last().unwrap_or(0);
            root - RcfNumber::from_i64(floor)
        })
        .collect()
}

fn random_weight(rng: &mut ChaCha8Rng) -> Q {
    Q::new(BigInt::from(rng.gen_range(1..=9)), BigInt::from(10))
}

/// `count` points of `Δ^n` with irrational coordinates, deterministic in
/// `seed`. Coordinate `zero` (if any) is exactly 0, so the points lie on
/// that facet.
pub fn algebraic_simplex_points(n: usize, zero: Option<usize>, count: usize, seed: u64) -> Vec<Vec<RcfNumber>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let units = irrational_units();
    let free: Vec<usize> = (0..=n).filter(|&i| Some(i) != zero).collect();
    (0..count)
        .map(|j| {
            let mut p = vec![RcfNumber::zero(); n + 1];
            if free.len() == 1 {
                p[free[0]] = RcfNumber::one();
                return p;
            }
            let lead = free[j % free.len()];
            let a = units[j % units.len()].clone() * RcfNumber::from(random_weight(&mut rng));
            let rest = RcfNumber::one() - a.clone();
            let others: Vec<usize> = free.iter().copied().filter(|&i| i != lead).collect();
            let weights: Vec<Q> = others.iter().map(|_| random_weight(&mut rng)).collect();
            let total: Q = weights.iter().cloned().sum();
            p[lead] = a;
            for (&i, w) in others.iter().zip(weights) {
                p[i] = rest.clone() * RcfNumber::from(w / total.clone());
            }
            p
        })
        .collect()
}

/// `count` points of the open cube `(0, 1)^n` with irrational coordinates.
pub fn algebraic_cube_points(n: usize, count: usize, seed: u64) -> Vec<Vec<RcfNumber>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let units = irrational_units();
    (0..count)
        .map(|j| {
            (0..n)
                .map(|i| units[(i + j) % units.len()].clone() * RcfNumber::from(random_weight(&mut rng)))
                .collect()
        })
        .collect()
}
