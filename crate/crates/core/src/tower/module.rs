//! Frobenius on the 2-torsion of a hyperelliptic Jacobian.
//!
//! For `y^2 = f(t)` with `f` squarefree of degree `n = 2g + 2`, `Jac[2]` is
//! the sum-zero subspace `W` of `F_2^{roots}` modulo the all-ones vector.
//! Frobenius permutes the roots, one cycle per irreducible factor of `f`.
//!
//! Basis of `V = W / <1>`: `b_i = e_i + e_{i+1}` for `i = 0..n-3`. The
//! coordinates of `w ∈ W` along `b_0..b_{n-2}` are its prefix sums; the last
//! one is folded back with `b_{n-2} ≡ Σ_{even i < n-2} b_i`.

use serde::{Deserialize, Serialize};

use super::curve::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::field::{factor, FieldSpec, Polynomial};
use crate::linalg::BitMatrix;

/// Largest module dimension accepted by [`tensor_invariant_dim`].
pub const MAX_MODULE_DIM: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusModule {
    pub genus: usize,
    pub matrix: BitMatrix,
    /// Cycle lengths of Frobenius on the roots, in factor order.
    pub factor_degrees: Vec<usize>,
}

fn f2() -> FieldSpec {
    FieldSpec::new(2, 1).expect("F_2")
}

/// Coordinates in `V` of a sum-zero vector given by its support.
fn quotient_coords(n: usize, support: &[usize]) -> Vec<bool> {
    let mut w = vec![false; n];
    for &i in support {
        w[i] ^= true;
    }
    let mut c = Vec::with_capacity(n - 1);
    let mut acc = false;
    for &x in &w[..n - 1] {
        acc ^= x;
        c.push(acc);
    }
    if c[n - 2] {
        for (i, ci) in c.iter_mut().enumerate().take(n - 2) {
            if i % 2 == 0 {
                *ci ^= true;
            }
        }
    }
    c.truncate(n - 2);
    c
}

impl FrobeniusModule {
    /// Module of the permutation `perm` of `n = perm.len()` roots (`n` even, `n >= 4`).
    pub fn from_permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        if n % 2 == 1 {
            return Err(Error::OddDegree);
        }
        if n < 4 {
            return Err(Error::InvalidParams(format!("need at least 4 roots, got {n}")));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParams("not a permutation".into()));
            }
        }
        let dim = n - 2;
        let mut m = BitMatrix::zeros(dim, dim);
        for j in 0..dim {
            let col = quotient_coords(n, &[perm[j], perm[j + 1]]);
            for (i, &bit) in col.iter().enumerate() {
                m.set(i, j, bit);
            }
        }
        Ok(FrobeniusModule { genus: dim / 2, matrix: m, factor_degrees: cycle_type(perm) })
    }

    /// Module whose roots split into consecutive cycles of the given lengths.
    pub fn from_cycle_type(degrees: &[usize]) -> Result<Self> {
        let mut perm = Vec::new();
        for &d in degrees {
            let start = perm.len();
            perm.extend((0..d).map(|j| start + (j + 1) % d));
        }
        let mut m = Self::from_permutation(&perm)?;
        m.factor_degrees = degrees.to_vec();
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

/// Frobenius on `Jac[2]` of `y^2 = f(t)`: the roots of each irreducible
/// factor (in factorization order) form one cycle.
pub fn two_torsion_frobenius(curve: &HyperellipticCurve) -> Result<FrobeniusModule> {
    let degrees: Vec<usize> = factor(curve.field(), curve.f())?
        .iter()
        .map(|(p, m)| {
            debug_assert_eq!(*m, 1);
            p.degree().expect("nonzero factor")
        })
        .collect();
    FrobeniusModule::from_cycle_type(&degrees)
}

/// `dim ker(M - I)` over `F_2`.
pub fn fixed_space_dim(m: &BitMatrix) -> usize {
    m.add_identity().kernel_dim()
}

fn char_poly_f2(m: &BitMatrix) -> Polynomial {
    m.to_matrix().char_poly(&f2())
}

/// `dim ker p(M)` over `F_2`.
fn kernel_dim_of(m: &BitMatrix, p: &Polynomial) -> usize {
    let f = f2();
    BitMatrix::from_matrix(&m.to_matrix().eval_poly(&f, p)).expect("F_2 entries").kernel_dim()
}

/// For each irreducible factor `p` of the characteristic polynomial, the
/// geometric multiplicity `dim ker p(M) / deg p` shared by its roots.
pub fn eigen_multiplicities(m: &BitMatrix) -> Vec<(Polynomial, usize)> {
    let cp = char_poly_f2(m);
    if cp.degree() == Some(0) {
        return Vec::new();
    }
    factor(&f2(), &cp)
        .expect("nonzero")
        .into_iter()
        .map(|(p, _)| {
            let d = p.degree().expect("nonzero");
            let k = kernel_dim_of(m, &p);
            (p, k / d)
        })
        .collect()
}

/// True iff the minimal polynomial is squarefree, i.e. the radical of the
/// characteristic polynomial already kills `M`.
pub fn is_semisimple(m: &BitMatrix) -> bool {
    let f = f2();
    let cp = char_poly_f2(m);
    let radical = factor(&f, &cp)
        .expect("nonzero")
        .into_iter()
        .fold(Polynomial::one(), |acc, (p, _)| acc.mul(&f, &p));
    kernel_dim_of(m, &radical) == m.cols()
}

/// Monic reciprocal: the minimal polynomial of `λ^{-1}` for a root `λ` of `p`.
fn reciprocal(p: &Polynomial) -> Polynomial {
    let f = f2();
    Polynomial::new(p.coeffs().iter().rev().copied().collect()).monic(&f)
}

/// `Σ_λ m_{λ,C} · m_{λ^{-1},D}` over the eigenvalues in `\bar F_2`.
pub fn eigenvalue_formula(mc: &BitMatrix, md: &BitMatrix) -> usize {
    let md_mult = eigen_multiplicities(md);
    eigen_multiplicities(mc)
        .into_iter()
        .map(|(p, m)| {
            let star = reciprocal(&p);
            let m_d = md_mult.iter().find(|(r, _)| *r == star).map_or(0, |(_, k)| *k);
            p.degree().expect("nonzero") * m * m_d
        })
        .sum()
}

/// `dim ker(MC ⊗ MD - I)` over `F_2`.
pub fn tensor_invariant_dim(mc: &BitMatrix, md: &BitMatrix) -> Result<usize> {
    for m in [mc, md] {
        if !m.is_square() || m.rows() > MAX_MODULE_DIM {
            return Err(Error::TooLarge(m.rows()));
        }
    }
    Ok(mc.kron(md).add_identity().kernel_dim())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KunnethInvariants {
    #[serde(rename = "h1G")]
    pub h1g: usize,
    #[serde(rename = "h2G")]
    pub h2g: usize,
}

/// Invariant dimensions of `H^1` and `H^2` of `C x D` with `F_2` coefficients.
pub fn kunneth_invariants(mc: &BitMatrix, md: &BitMatrix) -> Result<KunnethInvariants> {
    Ok(KunnethInvariants {
        h1g: fixed_space_dim(mc) + fixed_space_dim(md),
        h2g: tensor_invariant_dim(mc, md)? + 2,
    })
}
