//! Simplicial homology and cohomology orders via Smith normal form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{Complex, ComplexError};
use crate::snf::{kernel_size_mod, smith, Smith, SparseRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Coefficients {
    Integers,
    Mod(u64),
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Mod(m) => write!(f, "Z/{m}"),
        }
    }
}

/// Homology in degrees `0..=dim`. Each degree is a list of cyclic orders,
/// `0` standing for a copy of ℤ; free factors come first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub coefficients: Coefficients,
    pub factors: Vec<Vec<u64>>,
    /// Over ℤ the free rank; over ℤ/m the number of cyclic summands.
    pub betti: Vec<usize>,
}

impl HomologyResult {
    /// `factors[n]`, empty above the top degree.
    pub fn degree(&self, n: usize) -> &[u64] {
        self.factors.get(n).map_or(&[], |v| v.as_slice())
    }

    pub fn free_rank(&self, n: usize) -> usize {
        self.degree(n).iter().filter(|&&d| d == 0).count()
    }

    pub fn torsion(&self, n: usize) -> Vec<u64> {
        self.degree(n).iter().copied().filter(|&d| d != 0).collect()
    }

    /// Same groups in every degree, trailing zero groups ignored.
    pub fn same_groups(&self, other: &HomologyResult) -> bool {
        let n = self.factors.len().max(other.factors.len());
        self.coefficients == other.coefficients && (0..n).all(|i| self.degree(i) == other.degree(i))
    }

    /// `{"H0": [...], "H1": [...], ...}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, &Vec<u64>> =
            self.factors.iter().enumerate().map(|(i, f)| (format!("H{i}"), f)).collect();
        serde_json::to_value(map).expect("homology")
    }
}

pub fn format_group(factors: &[u64]) -> String {
    let free = factors.iter().filter(|&&d| d == 0).count();
    let mut parts = Vec::new();
    match free {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(factors.iter().filter(|&&d| d != 0).map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.factors.iter().enumerate().map(|(i, g)| format!("H{i} = {}", format_group(g))).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Matrix of `∂_n` with one row per `n`-simplex and one column per
/// `(n−1)`-simplex, oriented by the vertex order.
pub fn boundary_rows(c: &Complex, n: usize) -> (Vec<SparseRow<i64>>, usize) {
    if n == 0 {
        return (vec![Vec::new(); c.simplices_of_dim(0).len()], 0);
    }
    let faces = c.simplices_of_dim(n - 1);
    let index: BTreeMap<&Vec<usize>, usize> = faces.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let rows = c
        .simplices_of_dim(n)
        .into_iter()
        .map(|s| {
            let mut row: SparseRow<i64> = (0..s.len())
                .map(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    (index[&f], if i % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            row.sort_unstable();
            row
        })
        .collect();
    (rows, faces.len())
}

fn boundary_smith(c: &Complex, n: usize) -> Smith<BigInt> {
    let (rows, ncols) = boundary_rows(c, n);
    smith(&rows, ncols)
}

fn small(d: &BigInt) -> u64 {
    d.to_u64().expect("torsion coefficient fits in u64")
}

/// Integral homology.
fn integral(c: &Complex) -> (Vec<usize>, Vec<Vec<u64>>) {
    let top = c.dim().unwrap_or(0);
    let snfs: Vec<Smith<BigInt>> = (0..=top + 1).map(|n| boundary_smith(c, n)).collect();
    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for n in 0..=top {
        let cn = c.simplices_of_dim(n).len();
        free.push(cn - snfs[n].rank - snfs[n + 1].rank);
        torsion.push(snfs[n + 1].torsion().iter().map(small).collect());
    }
    (free, torsion)
}

/// Homology with integer or ℤ/m coefficients. The ℤ/m groups come from
/// the integral ones by universal coefficients.
pub fn homology(c: &Complex, coefficients: Coefficients) -> Result<HomologyResult, ComplexError> {
    let (free, torsion) = integral(c);
    let factors: Vec<Vec<u64>> = match coefficients {
        Coefficients::Integers => free
            .iter()
            .zip(&torsion)
            .map(|(&r, t)| std::iter::repeat(0).take(r).chain(t.iter().copied()).collect())
            .collect(),
        Coefficients::Mod(m) => {
            if m < 2 {
                return Err(ComplexError::BadModulus(m));
            }
            (0..free.len())
                .map(|n| {
                    let mut f: Vec<u64> = vec![m; free[n]];
                    let tor_prev: &[u64] = if n > 0 { &torsion[n - 1] } else { &[] };
                    f.extend(torsion[n].iter().chain(tor_prev).map(|t| t.gcd(&m)).filter(|&g| g > 1));
                    f.sort_unstable_by(|a, b| b.cmp(a));
                    f
                })
                .collect()
        }
    };
    let betti = match coefficients {
        Coefficients::Integers => free,
        Coefficients::Mod(_) => factors.iter().map(Vec::len).collect(),
    };
    Ok(HomologyResult { coefficients, factors, betti })
}

/// `|H^n(X; ℤ/m)|` computed from cochains: `|ker δ^n| · |ker δ^{n−1}| /
/// m^{#C_{n−1}}`, each kernel counted from a Smith form.
pub fn cohomology_order_mod(c: &Complex, n: usize, m: u64) -> Result<BigInt, ComplexError> {
    if m < 2 {
        return Err(ComplexError::BadModulus(m));
    }
    let cochain_kernel = |k: usize| {
        // δ^k x evaluated on (k+1)-simplices is ∂_{k+1} applied to x
        let (rows, ncols) = boundary_rows(c, k + 1);
        kernel_size_mod(&smith(&rows, ncols), ncols, m)
    };
    let ker_n = cochain_kernel(n);
    if n == 0 {
        return Ok(ker_n);
    }
    let ker_prev = cochain_kernel(n - 1);
    let total_prev = num_traits::pow(BigInt::from(m), c.simplices_of_dim(n - 1).len());
    let image = total_prev / ker_prev;
    Ok(ker_n / image)
}
