//! Factorization over `F_q`: squarefree decomposition, distinct-degree
//! splitting and Cantor–Zassenhaus equal-degree splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{prime_factors, FieldElement, FieldSpec, Polynomial};
use crate::error::{Error, Result};

const SPLIT_SEED: u64 = 0x5eed_fac7;

/// Rabin's test for a polynomial of degree `n >= 1`:
/// `f | x^{q^n} - x` and `gcd(f, x^{q^{n/r}} - x) = 1` for every prime `r | n`.
pub fn is_irreducible(field: &FieldSpec, f: &Polynomial) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = f.monic(field);
    let x = Polynomial::x();
    for r in prime_factors(n as u64) {
        let h = x.frobenius_mod(field, (n as u64 / r) as u32, &f).sub(field, &x);
        if !f.gcd(field, &h).is_one() {
            return false;
        }
    }
    x.frobenius_mod(field, n as u32, &f).sub(field, &x).rem(field, &f).expect("nonzero").is_zero()
}

/// Monic irreducible factors with multiplicities, sorted by degree then
/// coefficient encoding.
pub fn factor(field: &FieldSpec, f: &Polynomial) -> Result<Vec<(Polynomial, u32)>> {
    Ok(factor_with_unit(field, f)?.1)
}

/// Like [`factor`], also returning the leading coefficient.
pub fn factor_with_unit(field: &FieldSpec, f: &Polynomial) -> Result<(FieldElement, Vec<(Polynomial, u32)>)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.leading();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out = Vec::new();
    for (part, mult) in squarefree(field, &f.monic(field)) {
        for (block, d) in distinct_degree(field, &part) {
            for irr in equal_degree(field, &block, d, &mut rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.encoding_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok((unit, out))
}

/// Squarefree decomposition of a monic polynomial: coprime squarefree parts
/// `a_i` with `f = prod a_i^{m_i}`.
fn squarefree(field: &FieldSpec, f: &Polynomial) -> Vec<(Polynomial, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative(field);
    let mut c = f.gcd(field, &df);
    let mut w = f.div_exact(field, &c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(field, &c);
        let fac = w.div_exact(field, &y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(field, &w);
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power
        let p = field.p() as usize;
        let root = Polynomial::new(
            c.coeffs().iter().step_by(p).map(|&a| field.pth_root(a)).collect(),
        );
        for (g, m) in squarefree(field, &root) {
            out.push((g, m * field.p()));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into blocks whose irreducible factors
/// all share the degree `d`.
fn distinct_degree(field: &FieldSpec, f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = Polynomial::x();
    let mut h = x.rem(field, &rest).expect("nonzero");
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(field, field.q() as u64, &rest);
        let g = rest.gcd(field, &h.sub(field, &x));
        if !g.is_one() {
            rest = rest.div_exact(field, &g);
            h = h.rem(field, &rest).expect("nonzero");
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = rest.degree().filter(|&n| n > 0) {
        out.push((rest, n));
    }
    out
}

fn random_poly(field: &FieldSpec, below: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    Polynomial::new((0..below).map(|_| FieldElement::new(rng.gen_range(0..field.q()))).collect())
}

/// Cantor–Zassenhaus: splits a product of distinct monic irreducibles of
/// degree `d`.
fn equal_degree(field: &FieldSpec, f: &Polynomial, d: usize, rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let n = f.degree().expect("nonzero");
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a = random_poly(field, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut g = a.gcd(field, f);
        if g.is_one() {
            let b = if field.p() == 2 {
                // trace map a + a^2 + ... + a^{2^{m d - 1}}
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..(field.m() as usize * d) {
                    t = t.mul_mod(field, &t, f);
                    acc = acc.add(field, &t);
                }
                acc
            } else {
                // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}
                let mut t = a.rem(field, f).expect("nonzero");
                let mut norm = t.clone();
                for _ in 1..d {
                    t = t.pow_mod(field, field.q() as u64, f);
                    norm = norm.mul_mod(field, &t, f);
                }
                norm.pow_mod(field, ((field.q() - 1) / 2) as u64, f).sub(field, &Polynomial::one())
            };
            g = b.gcd(field, f);
        }
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_exact(field, &g);
            let mut out = equal_degree(field, &g, d, rng);
            out.extend(equal_degree(field, &h, d, rng));
            return out;
        }
    }
}
