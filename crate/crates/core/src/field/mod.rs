//! Small finite fields `F_q`, `q = p^m <= 65536`.
//!
//! Elements are index-coded: the index of `a_0 + a_1 x + ... + a_{m-1} x^{m-1}`
//! is `sum a_i p^i`. Index 0 is zero and index 1 is one. Multiplication goes
//! through exponential/logarithm tables built once per field; addition is
//! digit-wise mod `p`.
//!
//! The defining modulus is canonical: the monic irreducible of degree `m`
//! whose low coefficients `(c_0, ..., c_{m-1})`, read as the base-`p` integer
//! `sum c_i p^i`, are minimal. Prime fields carry the modulus `x`.

mod factor;
mod poly;

pub use factor::{factor, factor_with_unit, is_irreducible};
pub use poly::Polynomial;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: u32 = 65536;

/// An element of some `F_q`, stored as its index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub const fn new(index: u32) -> Self {
        FieldElement(index)
    }

    #[inline]
    pub const fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
struct Tables {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `i < 2(q-1)`, doubled to skip a reduction in `mul`.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
}

/// A finite field together with its arithmetic tables.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone, Serialize, Deserialize)]
#[serde(into = "FieldSpecRepr", try_from = "FieldSpecRepr")]
pub struct FieldSpec {
    tables: Arc<Tables>,
}

#[derive(Serialize, Deserialize)]
struct FieldSpecRepr {
    p: u32,
    m: u32,
    modulus: Vec<u32>,
}

impl From<FieldSpec> for FieldSpecRepr {
    fn from(f: FieldSpec) -> Self {
        FieldSpecRepr { p: f.p(), m: f.m(), modulus: f.modulus().to_vec() }
    }
}

impl TryFrom<FieldSpecRepr> for FieldSpec {
    type Error = Error;

    fn try_from(r: FieldSpecRepr) -> Result<Self> {
        let f = FieldSpec::new(r.p as u64, r.m)?;
        if f.modulus() != r.modulus.as_slice() {
            return Err(Error::Parse(format!(
                "modulus {:?} is not the canonical modulus {:?} of F_{}",
                r.modulus,
                f.modulus(),
                f.q()
            )));
        }
        Ok(f)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.tables, &other.tables)
            || (self.p() == other.p() && self.m() == other.m() && self.modulus() == other.modulus())
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p())
            .field("m", &self.m())
            .field("modulus", &self.modulus())
            .finish()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q = p^m`, or `None` when `q` is not one.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = prime_factors(q)[0];
    let mut m = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

/// Schoolbook multiplication of digit vectors modulo the monic `x^m + sum c_i x^i`.
fn mul_digits(p: u32, modulus: &[u32], a: u32, b: u32) -> u32 {
    let m = modulus.len();
    let da = to_digits(p, m, a);
    let db = to_digits(p, m, b);
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for k in (m..2 * m).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        // x^k = x^{k-m} * x^m = -x^{k-m} * sum c_i x^i
        for (i, &ci) in modulus.iter().enumerate() {
            let sub = c * ci as u64 % p as u64;
            prod[k - m + i] = (prod[k - m + i] + p as u64 - sub) % p as u64;
        }
    }
    from_digits(p, &prod[..m].iter().map(|&d| d as u32).collect::<Vec<_>>())
}

fn to_digits(p: u32, m: usize, mut a: u32) -> Vec<u32> {
    let mut d = vec![0; m];
    for slot in d.iter_mut() {
        *slot = a % p;
        a /= p;
    }
    d
}

fn from_digits(p: u32, digits: &[u32]) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

impl FieldSpec {
    /// Builds the canonical `F_{p^m}`.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidParams("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if q > MAX_FIELD_SIZE as u128 {
            return Err(Error::FieldTooLarge(q));
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = if m == 1 { vec![0] } else { canonical_modulus(p, m)? };
        Ok(Self::from_modulus(p, m, q, modulus))
    }

    fn from_modulus(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> Self {
        let mul = |a: u32, b: u32| {
            if m == 1 {
                ((a as u64 * b as u64) % p as u64) as u32
            } else {
                mul_digits(p, &modulus, a, b)
            }
        };
        let pow = |a: u32, mut e: u64| {
            let (mut base, mut acc) = (a, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(acc, base);
                }
                base = mul(base, base);
                e >>= 1;
            }
            acc
        };
        let order = (q - 1) as u64;
        let cofactors: Vec<u64> = prime_factors(order).into_iter().map(|r| order / r).collect();
        let generator = (1..q)
            .find(|&g| cofactors.iter().all(|&c| pow(g, c) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = mul(x, generator);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        FieldSpec { tables: Arc::new(Tables { p, m, q, modulus, exp, log }) }
    }

    #[inline]
    /// The field with `q` elements; `q` must be a prime power.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or_else(|| Error::InvalidParams(format!("{q} is not a prime power")))?;
        Self::new(p, m)
    }

    pub fn p(&self) -> u32 {
        self.tables.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.tables.m
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.tables.q
    }

    /// Low coefficients `c_0..c_{m-1}` of the monic modulus.
    pub fn modulus(&self) -> &[u32] {
        &self.tables.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.m() == 1
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q()).map(FieldElement)
    }

    /// Checked constructor for an element index.
    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.q() {
            Ok(FieldElement(index))
        } else {
            Err(Error::InvalidParams(format!("{index} is not an element of F_{}", self.q())))
        }
    }

    /// The image of the integer `n` under `Z -> F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p() as i64) as u32)
    }

    /// The class of `x` in `F_p[x]/(modulus)`. For prime fields this is zero.
    pub fn generator_x(&self) -> FieldElement {
        if self.m() == 1 {
            FieldElement::ZERO
        } else {
            FieldElement(self.p())
        }
    }

    /// The primitive element used by the log tables.
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement(self.tables.exp[if self.q() == 2 { 0 } else { 1 }])
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let t = &*self.tables;
        if t.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if t.m == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= t.p { s - t.p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            let d = (x % t.p + y % t.p) % t.p;
            out += d * place;
            place *= t.p;
            x /= t.p;
            y /= t.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let t = &*self.tables;
        if t.p == 2 || a.0 == 0 {
            return a;
        }
        if t.m == 1 {
            return FieldElement(t.p - a.0);
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((t.p - x % t.p) % t.p) * place;
            place *= t.p;
            x /= t.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.tables;
        FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.tables;
        let n = t.q - 1;
        Ok(FieldElement(t.exp[((n - t.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let (mut base, mut acc) = (a, FieldElement::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Signed-exponent power; negative exponents need `a != 0`.
    pub fn pow_signed(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Legendre-type character: 0 at zero, 1 on nonzero squares, -1 otherwise.
    pub fn quadratic_character(&self, a: FieldElement) -> Result<i8> {
        if self.p() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if a.is_zero() {
            return Ok(0);
        }
        let r = self.pow(a, ((self.q() - 1) / 2) as u64);
        Ok(if r == FieldElement::ONE { 1 } else { -1 })
    }

    /// The `p`-th root, i.e. the inverse of Frobenius.
    pub fn pth_root(&self, a: FieldElement) -> FieldElement {
        self.pow(a, (self.q() / self.p()) as u64)
    }

    pub fn is_square(&self, a: FieldElement) -> bool {
        self.p() == 2 || a.is_zero() || self.pow(a, ((self.q() - 1) / 2) as u64) == FieldElement::ONE
    }
}

fn canonical_modulus(p: u32, m: u32) -> Result<Vec<u32>> {
    let prime = FieldSpec::new(p as u64, 1)?;
    let count = p.pow(m);
    for code in 0..count {
        let mut coeffs: Vec<FieldElement> = to_digits(p, m as usize, code).into_iter().map(FieldElement).collect();
        if coeffs[0].is_zero() {
            continue;
        }
        coeffs.push(FieldElement::ONE);
        let f = Polynomial::new(coeffs);
        if is_irreducible(&prime, &f) {
            return Ok(to_digits(p, m as usize, code));
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Ring embedding `F_q -> F_{q^k}` stored as a lookup table.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    pub source: FieldSpec,
    pub target: FieldSpec,
    image: Vec<FieldElement>,
}

impl FieldEmbedding {
    #[inline]
    pub fn map(&self, a: FieldElement) -> FieldElement {
        self.image[a.index() as usize]
    }

    pub fn image(&self) -> &[FieldElement] {
        &self.image
    }
}

/// The degree-`k` extension of `base` with its embedding.
///
/// For a non-prime base, `x` is sent to the smallest-index root of the base
/// modulus in the extension.
pub fn extension_field(base: &FieldSpec, k: u32) -> Result<(FieldSpec, FieldEmbedding)> {
    if k == 0 {
        return Err(Error::InvalidParams("extension degree must be at least 1".into()));
    }
    let big_q = (base.q() as u128).checked_pow(k).unwrap_or(u128::MAX);
    if big_q > MAX_FIELD_SIZE as u128 {
        return Err(Error::FieldTooLarge(big_q));
    }
    let target = FieldSpec::new(base.p() as u64, base.m() * k)?;
    let image = if base.m() == 1 {
        base.elements().collect()
    } else {
        // constant digits embed verbatim: F_p sits inside both fields as indices < p
        let mut coeffs: Vec<FieldElement> = base.modulus().iter().map(|&c| FieldElement(c)).collect();
        coeffs.push(FieldElement::ONE);
        let modulus = Polynomial::new(coeffs);
        let root = target
            .elements()
            .find(|&a| modulus.eval(&target, a).is_zero())
            .expect("the base modulus splits in the extension");
        let p = base.p();
        base.elements()
            .map(|a| {
                let digits = to_digits(p, base.m() as usize, a.index());
                let mut acc = FieldElement::ZERO;
                let mut power = FieldElement::ONE;
                for d in digits {
                    acc = target.add(acc, target.mul(FieldElement(d), power));
                    power = target.mul(power, root);
                }
                acc
            })
            .collect()
    };
    Ok((target.clone(), FieldEmbedding { source: base.clone(), target, image }))
}
