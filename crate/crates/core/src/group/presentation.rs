//! Finitely presented groups.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::GroupError;
use crate::snf::{smith, SparseRow};

/// A letter is `±(g + 1)` for generator `g`; negative means inverse.
pub type Word = Vec<i32>;

pub fn letter(gen: usize, inverse: bool) -> i32 {
    let l = gen as i32 + 1;
    if inverse {
        -l
    } else {
        l
    }
}

pub fn letter_gen(l: i32) -> usize {
    (l.unsigned_abs() - 1) as usize
}

pub fn invert_word(w: &[i32]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[i32]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

/// Torsion-free rank and torsion invariant factors of an abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<String>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        let n = generators.len();
        for r in &relators {
            if let Some(&l) = r.iter().find(|&&l| l == 0 || letter_gen(l) >= n) {
                return Err(GroupError::UnknownGenerator(format!("letter {l}")));
            }
        }
        for (i, g) in generators.iter().enumerate() {
            if g.is_empty() || !g.starts_with(|c: char| c.is_ascii_lowercase()) {
                return Err(GroupError::Parse(format!("generator name {g:?} must start lowercase")));
            }
            if generators[..i].contains(g) {
                return Err(GroupError::Parse(format!("duplicate generator {g:?}")));
            }
        }
        Ok(GroupPresentation { generators, relators })
    }

    /// Relators in text form: a generator name for the letter, the name
    /// with its first character uppercased for the inverse.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self, GroupError> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let words = relators.iter().map(|r| parse_word(&gens, r)).collect::<Result<Vec<_>, _>>()?;
        Self::new(gens, words)
    }

    pub fn free(rank: usize) -> Self {
        let gens = (1..=rank).map(|i| format!("x{i}")).collect();
        GroupPresentation { generators: gens, relators: vec![] }
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn word_to_string(&self, w: &[i32]) -> String {
        w.iter()
            .map(|&l| {
                let name = &self.generators[letter_gen(l)];
                if l > 0 {
                    name.clone()
                } else {
                    let mut c = name.chars();
                    let first = c.next().unwrap().to_ascii_uppercase();
                    std::iter::once(first).chain(c).collect()
                }
            })
            .collect()
    }

    pub fn parse_word(&self, s: &str) -> Result<Word, GroupError> {
        parse_word(&self.generators, s)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PresentationJson {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(|r| self.word_to_string(r)).collect(),
        })
        .expect("presentation serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, GroupError> {
        let p: PresentationJson =
            serde_json::from_value(v.clone()).map_err(|e| GroupError::Parse(e.to_string()))?;
        let gens: Vec<&str> = p.generators.iter().map(String::as_str).collect();
        let rels: Vec<&str> = p.relators.iter().map(String::as_str).collect();
        Self::parse(&gens, &rels)
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn exponent_sums(&self) -> Vec<SparseRow<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.ngens()];
                for &l in r {
                    row[letter_gen(l)] += l.signum() as i64;
                }
                row.into_iter().enumerate().filter(|(_, v)| *v != 0).collect()
            })
            .collect()
    }

    pub fn abelianization(&self) -> Abelianization {
        let s = smith(&self.exponent_sums(), self.ngens());
        Abelianization { free_rank: self.ngens() - s.rank, torsion: s.torsion() }
    }

    /// Add relators (for instance to kill a normal subgroup).
    pub fn with_relators(&self, extra: &[Word]) -> Self {
        let mut p = self.clone();
        p.relators.extend(extra.iter().cloned());
        p
    }

    /// Tietze reduction: drop trivial and repeated relators and eliminate any
    /// generator occurring exactly once in some relator. The result presents
    /// an isomorphic group.
    pub fn simplify(&self) -> GroupPresentation {
        let mut gens: Vec<Option<String>> = self.generators.iter().cloned().map(Some).collect();
        let mut rels: Vec<Word> = self.relators.iter().map(|r| cyclic_reduce(r)).collect();
        loop {
            rels.retain(|r| !r.is_empty());
            let mut seen: Vec<Word> = Vec::new();
            rels.retain(|r| {
                let inv = cyclic_reduce(&invert_word(r));
                let dup = seen.iter().any(|s| is_cyclic_rotation(s, r) || is_cyclic_rotation(s, &inv));
                if !dup {
                    seen.push(r.clone());
                }
                !dup
            });
            // shortest relator first, then the generator in it used least
            let mut choice: Option<(usize, usize, usize)> = None;
            for (ri, r) in rels.iter().enumerate() {
                for &l in r {
                    let g = letter_gen(l);
                    if r.iter().filter(|&&m| letter_gen(m) == g).count() == 1 {
                        let key = (r.len(), ri, g);
                        if choice.map_or(true, |c| (r.len(), ri) < (c.0, c.1)) {
                            choice = Some(key);
                        }
                        break;
                    }
                }
            }
            let Some((_, ri, g)) = choice else { break };
            let r = rels.remove(ri);
            let pos = r.iter().position(|&l| letter_gen(l) == g).unwrap();
            // r = u x^e v = 1 ⇒ x^e = u⁻¹ v⁻¹ ⇒ x = (v u)^(−e)
            let mut vu: Word = r[pos + 1..].to_vec();
            vu.extend_from_slice(&r[..pos]);
            let x_val = if r[pos] > 0 { invert_word(&vu) } else { vu };
            rels = rels
                .iter()
                .map(|w| {
                    let mut out = Vec::new();
                    for &l in w {
                        if letter_gen(l) == g {
                            if l > 0 {
                                out.extend_from_slice(&x_val);
                            } else {
                                out.extend(invert_word(&x_val));
                            }
                        } else {
                            out.push(l);
                        }
                    }
                    cyclic_reduce(&out)
                })
                .collect();
            gens[g] = None;
        }
        // renumber the surviving generators
        let mut map = vec![0i32; gens.len()];
        let mut names = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if let Some(name) = g {
                names.push(name.clone());
                map[i] = names.len() as i32;
            }
        }
        let relators = rels
            .iter()
            .map(|r| r.iter().map(|&l| map[letter_gen(l)] * l.signum()).collect())
            .collect();
        GroupPresentation { generators: names, relators }
    }
}

fn is_cyclic_rotation(a: &[i32], b: &[i32]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|s| a[s..].iter().chain(&a[..s]).eq(b.iter())))
}

fn parse_word(gens: &[String], s: &str) -> Result<Word, GroupError> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    let inverse_name = |g: &str| {
        let mut c = g.chars();
        let first = c.next().unwrap().to_ascii_uppercase();
        std::iter::once(first).chain(c).collect::<String>()
    };
    while !rest.is_empty() {
        if rest.starts_with(char::is_whitespace) || rest.starts_with('*') || rest == "1" {
            rest = rest[1..].trim_start();
            continue;
        }
        let mut best: Option<(usize, i32)> = None;
        for (i, g) in gens.iter().enumerate() {
            for (name, inv) in [(g.clone(), false), (inverse_name(g), true)] {
                if rest.starts_with(&name) && best.map_or(true, |(len, _)| name.len() > len) {
                    best = Some((name.len(), letter(i, inv)));
                }
            }
        }
        let (len, l) = best.ok_or_else(|| GroupError::UnknownGenerator(rest.to_string()))?;
        out.push(l);
        rest = &rest[len..];
    }
    Ok(out)
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_to_string(r)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

/// `Γ_{g,d}`: for `d = 0` the surface group on `a_i, b_i` with the single
/// relator `[a_1, b_1]⋯[a_g, b_g]`; for `d > 0` the free group of rank
/// `2g + d − 1`.
pub fn surface_group(g: usize, d: usize) -> GroupPresentation {
    let mut gens: Vec<String> = Vec::new();
    for i in 1..=g {
        gens.push(format!("a{i}"));
        gens.push(format!("b{i}"));
    }
    if d == 0 {
        let mut rel = Word::new();
        for i in 0..g {
            let (a, b) = (2 * i, 2 * i + 1);
            rel.extend([letter(a, false), letter(b, false), letter(a, true), letter(b, true)]);
        }
        let relators = if g == 0 { vec![] } else { vec![rel] };
        return GroupPresentation { generators: gens, relators };
    }
    for j in 1..d {
        gens.push(format!("c{j}"));
    }
    GroupPresentation { generators: gens, relators: vec![] }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = GroupPresentation::parse(&["a", "b"], &["abAB"]).unwrap();
        assert_eq!(p.relators, vec![vec![1, 2, -1, -2]]);
        assert_eq!(p.word_to_string(&p.relators[0]), "abAB");
        let s = surface_group(2, 0);
        assert_eq!(s.word_to_string(&s.relators[0]), "a1b1A1B1a2b2A2B2");
        assert_eq!(GroupPresentation::from_json(&s.to_json()).unwrap(), s);
        assert!(GroupPresentation::parse(&["a"], &["ab"]).is_err());
    }

    #[test]
    fn abelianization_examples() {
        let t = GroupPresentation::parse(&["a", "b"], &["abAB"]).unwrap();
        assert_eq!(t.abelianization().to_string(), "Z^2");
        let c3 = GroupPresentation::parse(&["a"], &["aaa"]).unwrap();
        assert_eq!(c3.abelianization().to_string(), "Z/3");
        assert_eq!(surface_group(2, 0).abelianization().free_rank, 4);
        assert_eq!(surface_group(0, 3).abelianization().free_rank, 2);
        assert_eq!(surface_group(0, 0).ngens(), 0);
    }

    #[test]
    fn simplify_eliminates_generators() {
        let p = GroupPresentation::parse(&["a", "b", "c"], &["abC", "cBA"]).unwrap();
        let s = p.simplify();
        assert_eq!(s.ngens(), 2);
        assert!(s.relators.is_empty());
        let trivial = GroupPresentation::parse(&["a", "b"], &["a", "ab"]).unwrap().simplify();
        assert_eq!(trivial.ngens(), 0);
        assert!(trivial.relators.is_empty());
    }
}
