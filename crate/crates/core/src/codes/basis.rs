use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::surface::{DivisorClass, SurfaceKind, SurfaceModel};

use super::points::Point;

/// Monomial basis of `H^0(X, G)` as exponent tuples in lexicographic order.
///
/// * `P^2`, `G = (d)`: `(i, j, k)` with `i + j + k = d`.
/// * `P^1 x P^1`, `G = (a, b)`: `(i, a - i, j, b - j)` on `(x0, x1, y0, y1)`.
/// * `Σ_e`, `G = uF + vS`: Cox exponents `(α, β, γ, δ)` on `(t0, t1, x0, x1)`
///   with `γ + δ = v` and `α + β = u - eδ >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    pub kind: SurfaceKind,
    pub divisor: Vec<i64>,
    pub exponents: Vec<Vec<u32>>,
}

impl MonomialBasis {
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }
}

pub fn section_basis(surface: &SurfaceModel, g: &DivisorClass) -> Result<MonomialBasis> {
    if g.kind() != surface.kind() {
        return Err(Error::SurfaceMismatch);
    }
    let c = g.coords();
    let mut exps: Vec<Vec<u32>> = Vec::new();
    match *surface.kind() {
        SurfaceKind::ProjectivePlane => {
            let d = c[0];
            for i in 0..=d {
                for j in 0..=d - i {
                    exps.push(vec![i as u32, j as u32, (d - i - j) as u32]);
                }
            }
        }
        SurfaceKind::QuadricP1xP1 => {
            let (a, b) = (c[0], c[1]);
            if a >= 0 && b >= 0 {
                for i in 0..=a {
                    for j in 0..=b {
                        exps.push(vec![i as u32, (a - i) as u32, j as u32, (b - j) as u32]);
                    }
                }
            }
        }
        SurfaceKind::Hirzebruch { e } => {
            let (u, v) = (c[0], c[1]);
            for delta in 0..=v {
                let gamma = v - delta;
                let top = u - e * delta;
                for alpha in 0..=top {
                    exps.push(vec![alpha as u32, (top - alpha) as u32, gamma as u32, delta as u32]);
                }
            }
        }
        SurfaceKind::CurveProduct { .. } => {
            return Err(Error::UnsupportedSurface("sections on curve products are not modelled".into()))
        }
    }
    if exps.is_empty() {
        return Err(Error::EmptySystem);
    }
    exps.sort();
    Ok(MonomialBasis { kind: surface.kind().clone(), divisor: c.to_vec(), exponents: exps })
}

/// Value of a basis monomial at a point. Grid points use the dehomogenized
/// monomial `t^α x^γ` in the chart `t1 = x1 = 1`.
pub fn eval_monomial(field: &FieldSpec, exps: &[u32], point: &Point) -> FieldElement {
    match point.chart {
        Some([t, x]) => field.mul(field.pow(t, exps[0] as u64), field.pow(x, exps[2] as u64)),
        None => exps
            .iter()
            .zip(&point.coords)
            .fold(FieldElement::ONE, |acc, (&e, &c)| field.mul(acc, field.pow(c, e as u64))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_counts() {
        let q = SurfaceModel::p1xp1();
        assert_eq!(section_basis(&q, &q.divisor(&[1, 1]).unwrap()).unwrap().len(), 4);
        let p = SurfaceModel::projective_plane();
        assert_eq!(section_basis(&p, &p.divisor(&[1]).unwrap()).unwrap().len(), 3);
        assert_eq!(section_basis(&p, &p.divisor(&[4]).unwrap()).unwrap().len(), 15);
        let h = SurfaceModel::hirzebruch(1).unwrap();
        let b = section_basis(&h, &h.divisor(&[1, 1]).unwrap()).unwrap();
        // t1 x0, t0 x0, x1 in lexicographic order
        assert_eq!(b.exponents, vec![vec![0, 0, 0, 1], vec![0, 1, 1, 0], vec![1, 0, 1, 0]]);
    }

    #[test]
    fn hirzebruch_count_matches_riemann_roch_on_nef_classes() {
        for e in 0..4i64 {
            let h = SurfaceModel::hirzebruch(e).unwrap();
            for v in 0..5 {
                for u in e * v..e * v + 6 {
                    let g = h.divisor(&[u, v]).unwrap();
                    let n = section_basis(&h, &g).unwrap().len() as i64;
                    let closed: i64 = (0..=v).map(|d| (u - e * d + 1).max(0)).sum();
                    assert_eq!(n, closed);
                    assert_eq!(n, h.riemann_roch(&g).unwrap(), "e={e} u={u} v={v}");
                }
            }
        }
    }

    #[test]
    fn empty_systems() {
        let p = SurfaceModel::projective_plane();
        assert!(matches!(section_basis(&p, &p.divisor(&[-1]).unwrap()), Err(Error::EmptySystem)));
        let h = SurfaceModel::hirzebruch(2).unwrap();
        assert!(matches!(section_basis(&h, &h.divisor(&[-1, 1]).unwrap()), Err(Error::EmptySystem)));
        // u < ev still has sections from small δ
        assert_eq!(section_basis(&h, &h.divisor(&[1, 1]).unwrap()).unwrap().len(), 2);
    }
}
