use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::surface::{SurfaceKind, SurfaceModel};

/// Which rational points are evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointTag {
    All,
    /// Affine grid `A x B` in the chart `t1 = x1 = 1`, given as element indices.
    Grid { a: Vec<u32>, b: Vec<u32> },
}

impl PointTag {
    pub fn grid(a: &[u32], b: &[u32]) -> Self {
        PointTag::Grid { a: a.to_vec(), b: b.to_vec() }
    }

    /// Grid on the whole of `F_q` in both directions.
    pub fn full_grid(q: u32) -> Self {
        let all: Vec<u32> = (0..q).collect();
        PointTag::Grid { a: all.clone(), b: all }
    }
}

/// A rational point: canonical coordinates plus, for grid points, the chart
/// coordinates `(t, x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub coords: Vec<FieldElement>,
    pub chart: Option<[FieldElement; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointList {
    pub kind: SurfaceKind,
    pub q: u32,
    pub tag: PointTag,
    pub points: Vec<Point>,
}

impl PointList {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Canonical representatives of `P^n(F_q)`: the first nonzero coordinate is 1.
pub fn projective_points(field: &FieldSpec, n: usize) -> Vec<Vec<FieldElement>> {
    let q = field.q();
    let mut out = Vec::new();
    for lead in 0..=n {
        let free = n - lead;
        let total = (q as u64).pow(free as u32);
        for code in 0..total {
            let mut v = vec![FieldElement::ZERO; n + 1];
            v[lead] = FieldElement::ONE;
            let mut c = code;
            for slot in (lead + 1..=n).rev() {
                v[slot] = FieldElement::new((c % q as u64) as u32);
                c /= q as u64;
            }
            out.push(v);
        }
    }
    out.sort();
    out
}

/// Scales `(t0, t1, x0, x1)` so the t-pair and then the x-pair start with 1,
/// using the torus weights `t: λ`, `x0: μ`, `x1: λ^e μ`.
fn hirzebruch_normalize(field: &FieldSpec, e: i64, c: [FieldElement; 4]) -> Vec<FieldElement> {
    let [t0, t1, x0, x1] = c;
    let lead_t = if t0.is_zero() { t1 } else { t0 };
    let lam = field.inv(lead_t).expect("t-pair is nonzero");
    let (t0, t1) = (field.mul(t0, lam), field.mul(t1, lam));
    let x1 = field.mul(x1, field.pow(lam, e as u64));
    let lead_x = if x0.is_zero() { x1 } else { x0 };
    let mu = field.inv(lead_x).expect("x-pair is nonzero");
    vec![t0, t1, field.mul(x0, mu), field.mul(x1, mu)]
}

fn normalize_pair(field: &FieldSpec, a: FieldElement, b: FieldElement) -> [FieldElement; 2] {
    let lead = if a.is_zero() { b } else { a };
    let s = field.inv(lead).expect("pair is nonzero");
    [field.mul(a, s), field.mul(b, s)]
}

fn grid_elements(field: &FieldSpec, idx: &[u32], name: &str) -> Result<Vec<FieldElement>> {
    if idx.is_empty() {
        return Err(Error::UnsupportedSubset(format!("grid factor {name} is empty")));
    }
    let mut seen = std::collections::BTreeSet::new();
    idx.iter()
        .map(|&i| {
            if !seen.insert(i) {
                return Err(Error::UnsupportedSubset(format!("grid factor {name} repeats element {i}")));
            }
            field.element(i).map_err(|_| Error::UnsupportedSubset(format!("{i} is not an element of F_{}", field.q())))
        })
        .collect()
}

/// Rational points of a catalog surface in canonical coordinates, sorted
/// lexicographically by element index.
pub fn rational_points(surface: &SurfaceModel, field: &FieldSpec, tag: &PointTag) -> Result<PointList> {
    let kind = surface.kind().clone();
    let mut points: Vec<Point> = match (&kind, tag) {
        (SurfaceKind::CurveProduct { .. }, _) => {
            return Err(Error::UnsupportedSurface(
                "curve products carry point counts only; no explicit points".into(),
            ))
        }
        (SurfaceKind::ProjectivePlane, PointTag::All) => {
            projective_points(field, 2).into_iter().map(|coords| Point { coords, chart: None }).collect()
        }
        (SurfaceKind::ProjectivePlane, PointTag::Grid { .. }) => {
            return Err(Error::UnsupportedSubset("grids are defined on P1xP1 and Hirzebruch surfaces".into()))
        }
        (SurfaceKind::QuadricP1xP1, PointTag::All) => {
            let line = projective_points(field, 1);
            line.iter()
                .flat_map(|u| line.iter().map(move |v| Point { coords: [&u[..], &v[..]].concat(), chart: None }))
                .collect()
        }
        (SurfaceKind::Hirzebruch { .. }, PointTag::All) => {
            // normalized t-pair, then x-pair: both range over P^1 independently
            let line = projective_points(field, 1);
            line.iter()
                .flat_map(|u| line.iter().map(move |v| Point { coords: [&u[..], &v[..]].concat(), chart: None }))
                .collect()
        }
        (SurfaceKind::QuadricP1xP1 | SurfaceKind::Hirzebruch { .. }, PointTag::Grid { a, b }) => {
            let e = if let SurfaceKind::Hirzebruch { e } = kind { e } else { 0 };
            let ta = grid_elements(field, a, "A")?;
            let xb = grid_elements(field, b, "B")?;
            let mut pts = Vec::with_capacity(ta.len() * xb.len());
            for &t in &ta {
                for &x in &xb {
                    let one = FieldElement::ONE;
                    let coords = if e == 0 {
                        [normalize_pair(field, t, one), normalize_pair(field, x, one)].concat()
                    } else {
                        hirzebruch_normalize(field, e, [t, one, x, one])
                    };
                    pts.push(Point { coords, chart: Some([t, x]) });
                }
            }
            pts
        }
    };
    points.sort_by(|p, q| p.coords.cmp(&q.coords));
    Ok(PointList { kind, q: field.q(), tag: tag.clone(), points })
}
