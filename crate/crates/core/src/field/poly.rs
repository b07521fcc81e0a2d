use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FieldElement, FieldSpec};
use crate::error::{Error, Result};

/// Dense univariate polynomial, constant term first.
///
/// The coefficient list never ends in zero; the zero polynomial is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_indices(indices: &[u32]) -> Self {
        Self::new(indices.iter().map(|&i| FieldElement::new(i)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(FieldElement::ONE)
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^n`.
    pub fn monomial(c: FieldElement, n: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(FieldElement::ONE, 1)
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(field: &FieldSpec, roots: &[FieldElement]) -> Self {
        roots.iter().fold(Self::one(), |acc, &r| {
            acc.mul(field, &Self::new(vec![field.neg(r), FieldElement::ONE]))
        })
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FieldElement::ONE]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElement::ONE
    }

    /// Horner evaluation.
    pub fn eval(&self, field: &FieldSpec, a: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| field.add(field.mul(acc, a), c))
    }

    pub fn add(&self, field: &FieldSpec, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| field.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, field: &FieldSpec, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| field.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, field: &FieldSpec, c: FieldElement) -> Self {
        Self::new(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, field: &FieldSpec, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Self::new(out)
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self, field: &FieldSpec) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = field.inv(self.leading()).expect("leading coefficient is nonzero");
        self.scale(field, inv)
    }

    pub fn derivative(&self, field: &FieldSpec) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| field.mul(field.from_int(i as i64), c))
                .collect(),
        )
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, field: &FieldSpec, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let inv = field.inv(divisor.leading())?;
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = field.mul(rem[k], inv);
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] = field.sub(rem[k - dd + j], field.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, field: &FieldSpec, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(field, divisor)?.1)
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn div_exact(&self, field: &FieldSpec, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(field, divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, field: &FieldSpec, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(field, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn mul_mod(&self, field: &FieldSpec, other: &Self, modulus: &Self) -> Self {
        self.mul(field, other).rem(field, modulus).expect("nonzero modulus")
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, field: &FieldSpec, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(field, modulus).expect("nonzero modulus");
        let mut acc = Self::one().rem(field, modulus).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(field, &base, modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(field, &base, modulus);
            }
        }
        acc
    }

    /// `self^(q^k) mod modulus`, by `k` applications of the `q`-power map.
    pub fn frobenius_mod(&self, field: &FieldSpec, k: u32, modulus: &Self) -> Self {
        (0..k).fold(self.rem(field, modulus).expect("nonzero modulus"), |acc, _| {
            acc.pow_mod(field, field.q() as u64, modulus)
        })
    }

    /// Ordering key used for deterministic output: degree first, then the
    /// coefficient vector read from the top (the base-`q` encoding).
    pub fn encoding_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.index()) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "x")?,
                (1, v) => write!(f, "{v}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                (_, v) => write!(f, "{v}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horner() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        let f = Polynomial::from_indices(&[1, 0, 1]);
        assert_eq!(f.eval(&f3, FieldElement::new(1)), FieldElement::new(2));
        assert_eq!(Polynomial::zero().eval(&f3, FieldElement::new(2)), FieldElement::ZERO);
    }

    #[test]
    fn product_of_all_linear_factors_vanishes() {
        let f5 = FieldSpec::new(5, 1).unwrap();
        let roots: Vec<_> = f5.elements().collect();
        let f = Polynomial::from_roots(&f5, &roots);
        // x^5 - x
        assert_eq!(f, Polynomial::from_indices(&[0, 4, 0, 0, 0, 1]));
        for a in f5.elements() {
            assert!(f.eval(&f5, a).is_zero());
        }
    }

    #[test]
    fn division_identity() {
        let f = FieldSpec::new(7, 1).unwrap();
        let a = Polynomial::from_indices(&[3, 1, 4, 1, 5, 2]);
        let b = Polynomial::from_indices(&[2, 6, 1]);
        let (q, r) = a.div_rem(&f, &b).unwrap();
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.mul(&f, &b).add(&f, &r), a);
        assert!(matches!(a.div_rem(&f, &Polynomial::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = FieldSpec::new(5, 1).unwrap();
        let r = |i| FieldElement::new(i);
        let a = Polynomial::from_roots(&f, &[r(1), r(2), r(3)]);
        let b = Polynomial::from_roots(&f, &[r(2), r(3), r(4)]).scale(&f, r(3));
        assert_eq!(a.gcd(&f, &b), Polynomial::from_roots(&f, &[r(2), r(3)]));
    }

    #[test]
    fn display() {
        assert_eq!(Polynomial::from_indices(&[2, 0, 1]).to_string(), "x^2 + 2");
    }
}
