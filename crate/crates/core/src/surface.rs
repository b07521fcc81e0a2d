//! Catalog surfaces as Néron–Severi lattices.
//!
//! Every surface is described by a rank 1 or 2 integer lattice with its
//! intersection form, the canonical class, `χ(O_X)` and the étale Euler
//! characteristic. Divisor classes are integer vectors in the chosen basis.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The catalog of supported surfaces.
///
/// Bases: `P^2` uses the line class `L`; `P^1 x P^1` uses `(H, V)` where a
/// class `(a, b)` has bidegree `(a, b)`; the Hirzebruch surface `Σ_e` uses the
/// fiber `F` and the negative section `S`; a product of curves `C x D` uses the
/// numerical fiber classes `F_C = [C x pt]`, `F_D = [pt x D]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum SurfaceKind {
    ProjectivePlane,
    #[serde(rename = "p1xp1")]
    QuadricP1xP1,
    Hirzebruch { e: i64 },
    CurveProduct { g_c: i64, g_d: i64, n_c: u64, n_d: u64 },
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::ProjectivePlane => write!(f, "P2"),
            SurfaceKind::QuadricP1xP1 => write!(f, "P1xP1"),
            SurfaceKind::Hirzebruch { e } => write!(f, "Hirzebruch({e})"),
            SurfaceKind::CurveProduct { g_c, g_d, n_c, n_d } => {
                write!(f, "CurveProduct(g_C={g_c}, g_D={g_d}, N_C={n_c}, N_D={n_d})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SurfaceRepr")]
pub struct SurfaceModel {
    #[serde(flatten)]
    kind: SurfaceKind,
    gram: Vec<Vec<i64>>,
    canonical: Vec<i64>,
    #[serde(rename = "chi_O")]
    chi_o: i64,
    chi_et: i64,
}

#[derive(Deserialize)]
struct SurfaceRepr {
    #[serde(flatten)]
    kind: SurfaceKind,
    gram: Option<Vec<Vec<i64>>>,
    canonical: Option<Vec<i64>>,
}

impl TryFrom<SurfaceRepr> for SurfaceModel {
    type Error = Error;

    fn try_from(r: SurfaceRepr) -> Result<Self> {
        let s = SurfaceModel::new(r.kind)?;
        if r.gram.is_some_and(|g| g != s.gram) || r.canonical.is_some_and(|k| k != s.canonical) {
            return Err(Error::InvalidParams("stored lattice data disagrees with the surface kind".into()));
        }
        Ok(s)
    }
}

/// Integer class on a specific catalog surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    kind: SurfaceKind,
    coords: Vec<i64>,
}

impl DivisorClass {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn kind(&self) -> &SurfaceKind {
        &self.kind
    }

    fn same_surface(&self, other: &DivisorClass) -> Result<()> {
        if self.kind == other.kind {
            Ok(())
        } else {
            Err(Error::SurfaceMismatch)
        }
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.same_surface(other)?;
        Ok(DivisorClass {
            kind: self.kind.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> DivisorClass {
        DivisorClass { kind: self.kind.clone(), coords: self.coords.iter().map(|a| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&a| a == 0)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A flag the lattice data cannot always decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Yes,
    No,
    /// Ample, but very-ampleness is not decided for this surface.
    AmpleOnly,
}

impl Decision {
    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AmplenessFlags {
    pub ample: bool,
    pub very_ample: Decision,
    pub base_point_free: bool,
}

impl SurfaceModel {
    pub fn new(kind: SurfaceKind) -> Result<Self> {
        let (gram, canonical, chi_o, chi_et) = match kind {
            SurfaceKind::ProjectivePlane => (vec![vec![1]], vec![-3], 1, 3),
            SurfaceKind::QuadricP1xP1 => (vec![vec![0, 1], vec![1, 0]], vec![-2, -2], 1, 4),
            SurfaceKind::Hirzebruch { e } => {
                if e < 0 {
                    return Err(Error::InvalidParams(format!("Hirzebruch index e = {e} must be >= 0")));
                }
                (vec![vec![0, 1], vec![1, -e]], vec![-(e + 2), -2], 1, 4)
            }
            SurfaceKind::CurveProduct { g_c, g_d, .. } => {
                if g_c < 0 || g_d < 0 {
                    return Err(Error::InvalidParams(format!("genera ({g_c}, {g_d}) must be >= 0")));
                }
                (
                    vec![vec![0, 1], vec![1, 0]],
                    vec![2 * g_d - 2, 2 * g_c - 2],
                    (g_c - 1) * (g_d - 1),
                    (2 - 2 * g_c) * (2 - 2 * g_d),
                )
            }
        };
        Ok(SurfaceModel { kind, gram, canonical, chi_o, chi_et })
    }

    pub fn projective_plane() -> Self {
        Self::new(SurfaceKind::ProjectivePlane).expect("valid")
    }

    pub fn p1xp1() -> Self {
        Self::new(SurfaceKind::QuadricP1xP1).expect("valid")
    }

    pub fn hirzebruch(e: i64) -> Result<Self> {
        Self::new(SurfaceKind::Hirzebruch { e })
    }

    pub fn curve_product(g_c: i64, g_d: i64, n_c: u64, n_d: u64) -> Result<Self> {
        Self::new(SurfaceKind::CurveProduct { g_c, g_d, n_c, n_d })
    }

    pub fn kind(&self) -> &SurfaceKind {
        &self.kind
    }

    pub fn ns_rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn chi_o(&self) -> i64 {
        self.chi_o
    }

    pub fn chi_et(&self) -> i64 {
        self.chi_et
    }

    pub fn canonical(&self) -> DivisorClass {
        DivisorClass { kind: self.kind.clone(), coords: self.canonical.clone() }
    }

    pub fn divisor(&self, coords: &[i64]) -> Result<DivisorClass> {
        if coords.len() != self.ns_rank() {
            return Err(Error::InvalidParams(format!(
                "{} expects {} divisor coordinates, got {}",
                self.kind,
                self.ns_rank(),
                coords.len()
            )));
        }
        Ok(DivisorClass { kind: self.kind.clone(), coords: coords.to_vec() })
    }

    fn owns(&self, d: &DivisorClass) -> Result<()> {
        if d.kind == self.kind {
            Ok(())
        } else {
            Err(Error::SurfaceMismatch)
        }
    }

    /// `D^T · gram · E`.
    pub fn intersect(&self, d: &DivisorClass, e: &DivisorClass) -> Result<i64> {
        self.owns(d)?;
        self.owns(e)?;
        let mut s = 0;
        for (i, row) in self.gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                s += d.coords[i] * g * e.coords[j];
            }
        }
        Ok(s)
    }

    pub fn self_intersection(&self, d: &DivisorClass) -> Result<i64> {
        self.intersect(d, d)
    }

    pub fn ampleness_flags(&self, d: &DivisorClass) -> Result<AmplenessFlags> {
        self.owns(d)?;
        let c = &d.coords;
        let yes_no = |b: bool| if b { Decision::Yes } else { Decision::No };
        Ok(match self.kind {
            SurfaceKind::ProjectivePlane => AmplenessFlags {
                ample: c[0] >= 1,
                very_ample: yes_no(c[0] >= 1),
                base_point_free: c[0] >= 0,
            },
            SurfaceKind::QuadricP1xP1 => {
                let ample = c[0] >= 1 && c[1] >= 1;
                AmplenessFlags { ample, very_ample: yes_no(ample), base_point_free: c[0] >= 0 && c[1] >= 0 }
            }
            SurfaceKind::Hirzebruch { e } => {
                let (u, v) = (c[0], c[1]);
                let ample = v >= 1 && u >= e * v + 1;
                AmplenessFlags { ample, very_ample: yes_no(ample), base_point_free: v >= 0 && u >= e * v }
            }
            SurfaceKind::CurveProduct { g_c, g_d, .. } => {
                let (a, b) = (c[0], c[1]);
                let ample = a >= 1 && b >= 1;
                AmplenessFlags {
                    ample,
                    very_ample: if ample { Decision::AmpleOnly } else { Decision::No },
                    // sufficient condition from the degrees on each factor
                    base_point_free: a >= 2 * g_d && b >= 2 * g_c,
                }
            }
        })
    }

    /// `½ G·(G − K) + χ(O_X)`, a lower bound for `h^0(G)` once `H` is ample
    /// and `G·H > K·H`.
    pub fn riemann_roch_lower(&self, g: &DivisorClass, h: &DivisorClass) -> Result<i64> {
        if !self.ampleness_flags(h)?.ample {
            return Err(Error::PreconditionFailed(format!("H = {h} is not ample")));
        }
        let k = self.canonical();
        let (gh, kh) = (self.intersect(g, h)?, self.intersect(&k, h)?);
        if gh <= kh {
            return Err(Error::PreconditionFailed(format!("G·H = {gh} is not greater than K·H = {kh}")));
        }
        self.riemann_roch(g)
    }

    /// `½ G·(G − K) + χ(O_X)` without preconditions.
    pub fn riemann_roch(&self, g: &DivisorClass) -> Result<i64> {
        let gk = self.intersect(g, &g.sub(&self.canonical())?)?;
        debug_assert_eq!(gk % 2, 0, "G·(G-K) is even on a surface");
        Ok(gk / 2 + self.chi_o)
    }

    /// Number of `F_q`-rational points; stored for curve products.
    pub fn point_count(&self, q: u64) -> u64 {
        match self.kind {
            SurfaceKind::ProjectivePlane => q * q + q + 1,
            SurfaceKind::QuadricP1xP1 | SurfaceKind::Hirzebruch { .. } => (q + 1) * (q + 1),
            SurfaceKind::CurveProduct { n_c, n_d, .. } => n_c * n_d,
        }
    }

    /// `12 χ(O_X) = K^2 + χ_ét`.
    pub fn noether_identity(&self) -> bool {
        let k = self.canonical();
        let k2 = self.intersect(&k, &k).expect("same surface");
        12 * self.chi_o == k2 + self.chi_et
    }

    /// The standard very ample class of each rational surface: the line, the
    /// class `H + V`, and `(e+1)F + S`.
    pub fn default_very_ample(&self) -> Option<DivisorClass> {
        let coords = match self.kind {
            SurfaceKind::ProjectivePlane => vec![1],
            SurfaceKind::QuadricP1xP1 => vec![1, 1],
            SurfaceKind::Hirzebruch { e } => vec![e + 1, 1],
            SurfaceKind::CurveProduct { .. } => return None,
        };
        Some(DivisorClass { kind: self.kind.clone(), coords })
    }

    /// Every class in the box `[-r, r]^rank`, in lexicographic order.
    pub fn classes_in_box(&self, r: i64) -> Vec<DivisorClass> {
        let mk = |coords| DivisorClass { kind: self.kind.clone(), coords };
        match self.ns_rank() {
            1 => (-r..=r).map(|a| mk(vec![a])).collect(),
            _ => (-r..=r).flat_map(|a| (-r..=r).map(move |b| vec![a, b])).map(mk).collect(),
        }
    }
}
