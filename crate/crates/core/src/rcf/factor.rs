//! Factorization of squarefree integer polynomials into irreducibles over `Q`
//! (Zassenhaus: factor modulo a small prime, Hensel-lift, recombine).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::upoly::IntPoly;

/// Polynomial over `Z/p`, coefficients low to high, trimmed.
type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn fp_scale(a: &Fp, k: u64, p: u64) -> Fp {
    trim(a.iter().map(|&x| mulmod(x, k, p)).collect())
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty());
    let mut r = a.clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let inv = invmod(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = mulmod(*r.last().unwrap(), inv, p);
        q[shift] = f;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mulmod(f, bc, p)) % p;
        }
        r = trim(r);
        if r.len() < b.len() {
            break;
        }
    }
    (trim(q), r)
}

fn fp_rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    fp_divrem(a, b, p).1
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => vec![],
        Some(&l) => fp_scale(a, invmod(l, p), p),
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

/// Returns `(s, t)` with `s·a + t·b = 1`, assuming `gcd(a, b) = 1`.
fn fp_ext_gcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], vec![]);
    let (mut t0, mut t1): (Fp, Fp) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    // r0 is a nonzero constant
    let inv = invmod(r0[0], p);
    (fp_scale(&s0, inv, p), fp_scale(&t0, inv, p))
}

fn fp_deriv(a: &Fp, p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % p, p))
            .collect(),
    )
}

fn fp_powmod(base: &Fp, mut e: BigInt, modulus: &Fp, p: u64) -> Fp {
    let mut result: Fp = vec![1];
    let mut b = fp_rem(base, modulus, p);
    let two = BigInt::from(2);
    while e.is_positive() {
        if e.is_odd() {
            result = fp_rem(&fp_mul(&result, &b, p), modulus, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), modulus, p);
        e /= &two;
    }
    result
}

fn reduce(f: &IntPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn ddf(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while f.len() > 1 && 2 * (d + 1) <= f.len() - 1 {
        d += 1;
        h = fp_powmod(&h, BigInt::from(p), &f, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            out.push((g.clone(), d));
            f = fp_divrem(&f, &g, p).0;
            h = fp_rem(&h, &f, p);
        }
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus), `p` odd.
fn edf(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    let e: BigInt = (num_traits::pow(BigInt::from(p), d) - 1) / 2;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() <= 1 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, e.clone(), f, p), &vec![1], p);
        let g = fp_gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = fp_divrem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&fp_monic(&h, p), d, p, rng));
            return out;
        }
    }
}

fn factor_mod_p(f: &Fp, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let mut out = Vec::new();
    for (g, d) in ddf(f, p) {
        out.extend(edf(&g, d, p, rng));
    }
    out.sort();
    out
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn int_from_fp(a: &Fp) -> IntPoly {
    IntPoly::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn poly_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Lift `f ≡ lc(f)·∏ u_i (mod p)` with monic `u_i` to modulus `p^k ≥ bound`.
fn hensel_lift(f: &IntPoly, factors: &[Fp], p: u64, bound: &BigInt) -> (Vec<IntPoly>, BigInt) {
    let r = factors.len();
    let lc = f.lead();
    let lc_inv = invmod(lc.mod_floor(&BigInt::from(p)).to_u64().unwrap(), p);
    // partial-fraction weights: Σ s_i ∏_{j≠i} u_j ≡ 1 (mod p)
    let weights: Vec<Fp> = (0..r)
        .map(|i| {
            let others = factors
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(vec![1u64], |acc, (_, u)| fp_mul(&acc, u, p));
            let (_, t) = fp_ext_gcd(&factors[i], &others, p);
            fp_rem(&t, &factors[i], p)
        })
        .collect();
    let pb = BigInt::from(p);
    let mut lifted: Vec<IntPoly> = factors.iter().map(int_from_fp).collect();
    let mut modulus = pb.clone();
    while &modulus < bound {
        let next = &modulus * &pb;
        let prod = lifted.iter().fold(IntPoly::from_i64(&[1]), |acc, u| acc.mul(u));
        let diff = poly_mod(&f.sub(&prod.scale(&lc)), &next);
        // diff is divisible by the current modulus
        let e: IntPoly = IntPoly::new(diff.coeffs().iter().map(|c| c / &modulus).collect());
        let e = fp_scale(&reduce(&e, p), lc_inv, p);
        for i in 0..r {
            let delta = fp_rem(&fp_mul(&e, &weights[i], p), &factors[i], p);
            let step = int_from_fp(&delta).scale(&modulus);
            lifted[i] = poly_mod(&lifted[i].add(&step), &next);
        }
        modulus = next;
    }
    (lifted, modulus)
}

/// Coefficient bound for factors of `f`, doubled for symmetric residues.
fn factor_bound(f: &IntPoly) -> BigInt {
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    BigInt::from(2) * f.lead().abs() * (BigInt::one() << f.degree()) * norm
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Irreducible factors of a squarefree integer polynomial, each primitive with
/// positive leading coefficient, sorted by degree then coefficients.
pub fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let f = f.primitive();
    if f.degree() <= 1 {
        return if f.degree() == 1 { vec![f] } else { vec![] };
    }
    let mut out = Vec::new();
    // pull out x so that the constant term is nonzero
    let mut f = f;
    if f.coeffs()[0].is_zero() {
        out.push(IntPoly::x());
        f = f.div_exact(&IntPoly::x()).unwrap();
        if f.degree() == 0 {
            return out;
        }
    }
    out.extend(zassenhaus(&f));
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    out
}

fn zassenhaus(f: &IntPoly) -> Vec<IntPoly> {
    if f.degree() <= 1 {
        return vec![f.clone()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let lc = f.lead();
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce(f, p);
        if fp.len() != f.degree() + 1 {
            continue;
        }
        let fpm = fp_monic(&fp, p);
        if fp_gcd(&fpm, &fp_deriv(&fpm, p), p).len() != 1 {
            continue;
        }
        let facs = factor_mod_p(&fpm, p, &mut rng);
        if facs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, facs) = best.expect("some prime keeps f squarefree");
    let bound = factor_bound(f);
    let (mut lifted, modulus) = hensel_lift(f, &facs, p, &bound);

    let mut result = Vec::new();
    let mut rest = f.clone();
    let mut k = 1;
    while 2 * k <= lifted.len() {
        let mut found = None;
        for s in subsets(lifted.len(), k) {
            let lcr = rest.lead();
            let prod = s
                .iter()
                .fold(IntPoly::from_i64(&[1]), |acc, &i| acc.mul(&lifted[i]))
                .scale(&lcr);
            let cand = IntPoly::new(prod.coeffs().iter().map(|c| sym_mod(c, &modulus)).collect())
                .primitive();
            if cand.degree() == 0 {
                continue;
            }
            if let Some(q) = rest.div_exact(&cand) {
                found = Some((s, cand, q));
                break;
            }
        }
        match found {
            Some((s, cand, q)) => {
                result.push(cand);
                rest = q.primitive();
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !s.contains(i))
                    .map(|(_, u)| u)
                    .collect();
            }
            None => k += 1,
        }
    }
    if rest.degree() > 0 {
        result.push(rest);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prod(fs: &[IntPoly]) -> IntPoly {
        fs.iter().fold(IntPoly::from_i64(&[1]), |a, b| a.mul(b))
    }

    #[test]
    fn factors_small_products() {
        let a = IntPoly::from_i64(&[-2, 0, 1]);
        let b = IntPoly::from_i64(&[-3, 0, 1]);
        let c = IntPoly::from_i64(&[1, 1]);
        let f = prod(&[a.clone(), b.clone(), c.clone()]);
        let fs = factor_squarefree(&f);
        assert_eq!(fs, vec![c, b, a]);
    }

    #[test]
    fn irreducible_quartic_stays_whole() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits mod every prime
        let f = IntPoly::from_i64(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree(&f), vec![f]);
    }

    #[test]
    fn non_monic_factors() {
        let a = IntPoly::from_i64(&[-1, 0, 2]); // 2x^2 - 1
        let b = IntPoly::from_i64(&[1, 3]); // 3x + 1
        let c = IntPoly::from_i64(&[-5, 0, 0, 7]); // 7x^3 - 5
        let f = prod(&[a.clone(), b.clone(), c.clone()]);
        let fs = factor_squarefree(&f);
        assert_eq!(fs.len(), 3);
        assert_eq!(prod(&fs), f);
    }

    #[test]
    fn cyclotomic_split() {
        // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
        let f = IntPoly::from_i64(&[-1, 0, 0, 0, 0, 0, 1]);
        let fs = factor_squarefree(&f);
        assert_eq!(fs.len(), 4);
        assert_eq!(prod(&fs), f);
    }
}
