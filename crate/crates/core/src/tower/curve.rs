use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, Polynomial};

/// `y^2 = f(t)` over `F_q`, `q` odd, with `f` squarefree of even degree `2g + 2 >= 6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticCurve {
    field: FieldSpec,
    f: Polynomial,
    genus: usize,
}

impl HyperellipticCurve {
    pub fn new(field: &FieldSpec, f: Polynomial) -> Result<Self> {
        if field.p() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
        if deg % 2 == 1 {
            return Err(Error::OddDegree);
        }
        if deg < 6 {
            return Err(Error::InvalidGenus(format!("degree {deg} gives genus below 2")));
        }
        if !f.gcd(field, &f.derivative(field)).is_one() {
            return Err(Error::NotSquarefree);
        }
        Ok(HyperellipticCurve { field: field.clone(), f, genus: deg / 2 - 1 })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn is_monic(&self) -> bool {
        self.f.is_monic()
    }

    /// Rational points at infinity of the smooth model: 2 or 0.
    fn points_at_infinity(&self) -> u64 {
        if self.field.is_square(self.f.leading()) {
            2
        } else {
            0
        }
    }

    /// `Σ_t (1 + χ(f(t)))` plus the points at infinity.
    pub fn point_count(&self) -> u64 {
        let field = &self.field;
        let affine: i64 = field
            .elements()
            .map(|t| 1 + field.quadratic_character(self.f.eval(field, t)).expect("odd q") as i64)
            .sum();
        affine as u64 + self.points_at_infinity()
    }

    /// Counts pairs `(t, y)` with `y^2 = f(t)` one by one.
    pub fn naive_point_count(&self) -> u64 {
        let field = &self.field;
        let mut count = 0;
        for t in field.elements() {
            let v = self.f.eval(field, t);
            count += field.elements().filter(|&y| field.mul(y, y) == v).count() as u64;
        }
        count + self.points_at_infinity()
    }
}

/// Shape of the factors in a sampled branch polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    Linear,
    Quadratic,
}

fn is_irreducible_quadratic(field: &FieldSpec, b: FieldElement, c: FieldElement) -> bool {
    if field.p() == 2 {
        return field.elements().all(|x| !field.add(field.add(field.mul(x, x), field.mul(b, x)), c).is_zero());
    }
    let disc = field.sub(field.mul(b, b), field.mul(field.from_int(4), c));
    !field.is_square(disc)
}

/// Monic product of `count` distinct factors of the requested kind, chosen
/// from a ChaCha stream seeded with `seed` and multiplied in increasing order.
pub fn sample_branch_poly(field: &FieldSpec, count: usize, kind: FactorKind, seed: u64) -> Result<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(field, count, kind, &mut rng)
}

pub(crate) fn sample_with(field: &FieldSpec, count: usize, kind: FactorKind, rng: &mut ChaCha8Rng) -> Result<Polynomial> {
    let q = field.q() as u128;
    let available = match kind {
        FactorKind::Linear => q,
        FactorKind::Quadratic => (q * q - q) / 2,
    };
    if count as u128 > available {
        return Err(Error::NotEnoughFactors { requested: count, available });
    }
    match kind {
        FactorKind::Linear => {
            let mut roots: Vec<u32> = sample(rng, field.q() as usize, count).into_iter().map(|i| i as u32).collect();
            roots.sort_unstable();
            let roots: Vec<FieldElement> = roots.into_iter().map(FieldElement::new).collect();
            Ok(Polynomial::from_roots(field, &roots))
        }
        FactorKind::Quadratic => {
            let mut chosen = std::collections::BTreeSet::new();
            while chosen.len() < count {
                let (b, c) = (rng.gen_range(0..field.q()), rng.gen_range(0..field.q()));
                if is_irreducible_quadratic(field, FieldElement::new(b), FieldElement::new(c)) {
                    chosen.insert((b, c));
                }
            }
            Ok(chosen.into_iter().fold(Polynomial::one(), |acc, (b, c)| {
                acc.mul(field, &Polynomial::from_indices(&[c, b, 1]))
            }))
        }
    }
}
