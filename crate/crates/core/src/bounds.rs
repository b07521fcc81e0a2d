//! Minimum-distance and dimension bounds for surface codes.
//!
//! Every bound is an exact integer computed from intersection numbers. The
//! [`BoundReport`] gathers them side by side and marks the ones whose
//! hypotheses fail as inapplicable, with a reason.

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::codes::{build_code, min_distance_with_threads, PointTag};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::surface::{DivisorClass, SurfaceKind, SurfaceModel};

/// `(q+1) L`, or `q L` when the points avoid a member of `|L|`.
pub fn universal_gamma(surface: &SurfaceModel, l: &DivisorClass, q: u64, affine_chart: bool) -> Result<DivisorClass> {
    if !surface.ampleness_flags(l)?.very_ample.is_yes() {
        return Err(Error::NotVeryAmple);
    }
    let t = if affine_chart { q } else { q + 1 };
    Ok(l.scale(t as i64))
}

/// `n - Γ·G`.
pub fn interpolating_bound(surface: &SurfaceModel, n: i64, gamma: &DivisorClass, g: &DivisorClass) -> Result<i64> {
    Ok(n - surface.intersect(gamma, g)?)
}

/// Necessary condition `Γ² >= n` for `Γ` to interpolate `n` points.
pub fn gamma_square_check(surface: &SurfaceModel, gamma: &DivisorClass, n: i64) -> Result<bool> {
    Ok(surface.self_intersection(gamma)? >= n)
}

/// `n - (q+1) D²` for very ample `D`.
pub fn aubry_bound(surface: &SurfaceModel, n: i64, q: u64, d: &DivisorClass) -> Result<i64> {
    if !surface.ampleness_flags(d)?.very_ample.is_yes() {
        return Err(Error::NotVeryAmple);
    }
    Ok(n - (q as i64 + 1) * surface.self_intersection(d)?)
}

/// `n - ℓN - Σ L·C_i` over the curves not contained in the zero locus.
pub fn hansen_curve_bound(n: i64, ell: i64, big_n: i64, lc: &[i64]) -> Result<i64> {
    if let Some(&neg) = lc.iter().find(|&&x| x < 0) {
        return Err(Error::NegativeIntersection(neg));
    }
    Ok(n - ell * big_n - lc.iter().sum::<i64>())
}

/// Uniform variant: `count` curves with `L·C_i = η <= N` gives `n - ℓN - (count - ℓ)η`.
pub fn hansen_curve_bound_uniform(n: i64, ell: i64, big_n: i64, count: i64, eta: i64) -> Result<i64> {
    if eta < 0 {
        return Err(Error::NegativeIntersection(eta));
    }
    if eta > big_n || ell > count {
        return Err(Error::PreconditionFailed(format!(
            "need η <= N and ℓ <= #curves (η={eta}, N={big_n}, ℓ={ell}, #curves={count})"
        )));
    }
    Ok(n - ell * big_n - (count - ell) * eta)
}

/// `floor(n - L²/ε)` for a caller-supplied Seshadri lower bound `ε > 0`.
pub fn hansen_s1(n: i64, l_sq: i64, eps: Rational64) -> Result<i64> {
    if eps <= Rational64::zero() {
        return Err(Error::InvalidEpsilon);
    }
    Ok((Rational64::from_integer(n) - Rational64::from_integer(l_sq) / eps).floor().to_integer())
}

/// `n - ξ L²` for a caller-supplied generation exponent `ξ >= 1`.
pub fn hansen_s2(n: i64, l_sq: i64, xi: i64) -> Result<i64> {
    if xi < 1 {
        return Err(Error::InvalidXi);
    }
    Ok(n - xi * l_sq)
}

/// `Γ·G / n`, an upper bound for the Seshadri constant at the points.
pub fn seshadri_upper(gamma_g: i64, n: i64) -> Result<Rational64> {
    if n < 1 {
        return Err(Error::InvalidParams("need at least one point".into()));
    }
    Ok(Rational64::new(gamma_g, n))
}

/// `n - αb - βa` for an `α x β` grid and bidegree `(a, b)`.
pub fn product_grid_bound(n: i64, alpha: i64, beta: i64, a: i64, b: i64) -> i64 {
    n - alpha * b - beta * a
}

/// Grid `A x B` with `|A| = a`, `|B| = b` on `Σ_e`, divisor `uF + vS`:
/// `ab - (a + be)v - ub + ebv`.
pub fn hirzebruch_grid_bound(a: i64, b: i64, e: i64, u: i64, v: i64) -> i64 {
    a * b - (a + b * e) * v - u * b + e * b * v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: String,
    pub value: i64,
    pub applicable: bool,
    pub reason: String,
}

impl BoundEntry {
    fn new(name: &str, value: i64, applicable: bool, reason: impl Into<String>) -> Self {
        BoundEntry { name: name.into(), value, applicable, reason: reason.into() }
    }

    fn skipped(name: &str, reason: impl Into<String>) -> Self {
        Self::new(name, 0, false, reason)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactParams {
    pub k: u64,
    pub d: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: i64,
    #[serde(serialize_with = "ser_k_lower", deserialize_with = "de_k_lower")]
    pub k_lower: Option<i64>,
    pub entries: Vec<BoundEntry>,
    pub exact: Option<ExactParams>,
}

fn ser_k_lower<S: Serializer>(k: &Option<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match k {
        Some(v) => s.serialize_i64(*v),
        None => s.serialize_str("n/a"),
    }
}

fn de_k_lower<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<i64>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum K {
        Int(i64),
        Text(String),
    }
    match K::deserialize(d)? {
        K::Int(v) => Ok(Some(v)),
        K::Text(t) if t == "n/a" => Ok(None),
        K::Text(t) => Err(serde::de::Error::custom(format!("unexpected k_lower {t:?}"))),
    }
}

impl BoundReport {
    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Value of the named entry when it is applicable.
    pub fn value(&self, name: &str) -> Option<i64> {
        self.entry(name).filter(|e| e.applicable).map(|e| e.value)
    }

    /// Largest applicable lower bound.
    pub fn best(&self) -> Option<i64> {
        self.entries.iter().filter(|e| e.applicable).map(|e| e.value).max()
    }

    /// Exact distance minus the strongest applicable interpolating bound.
    pub fn defect(&self) -> Option<i64> {
        let exact = self.exact?;
        let bound = self
            .entries
            .iter()
            .filter(|e| e.applicable && e.name.starts_with("interpolating"))
            .map(|e| e.value)
            .max()?;
        Some(exact.d as i64 - bound)
    }
}

/// Choice of the interpolating class.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum GammaChoice {
    /// `(q+1) L` for the standard very ample `L`.
    #[default]
    Universal,
    /// `q L`; valid when the points avoid a member of `|L|`, as grids do.
    UniversalAffine,
    /// A caller-supplied class, trusted to be interpolating.
    Custom(Vec<i64>),
}

/// Caller data for the curve-based bound: `ℓ`, `N` and the numbers `L·C_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HansenCurves {
    pub ell: i64,
    pub big_n: i64,
    pub lc: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    pub gamma: GammaChoice,
    pub tag: PointTag,
    /// Enumeration budget for the exact distance; `None` skips it.
    pub exact_budget: Option<u128>,
    pub threads: usize,
    pub epsilon: Option<Rational64>,
    pub xi: Option<i64>,
    pub hansen_curves: Option<HansenCurves>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            gamma: GammaChoice::Universal,
            tag: PointTag::All,
            exact_budget: None,
            threads: 1,
            epsilon: None,
            xi: None,
            hansen_curves: None,
        }
    }
}

/// Box searched for an ample class witnessing the dimension bound.
const AMPLE_SEARCH_RADIUS: i64 = 10;

fn witness_h(surface: &SurfaceModel, g: &DivisorClass) -> Option<DivisorClass> {
    let k = surface.canonical();
    surface.classes_in_box(AMPLE_SEARCH_RADIUS).into_iter().find(|h| {
        surface.ampleness_flags(h).is_ok_and(|f| f.ample)
            && surface.intersect(g, h).unwrap() > surface.intersect(&k, h).unwrap()
    })
}

/// Every bound the catalog supports for `C_L(X, P, G)` over `F_q`.
pub fn parameter_report(surface: &SurfaceModel, g: &DivisorClass, q: u64, opts: &ReportOptions) -> Result<BoundReport> {
    if g.kind() != surface.kind() {
        return Err(Error::SurfaceMismatch);
    }
    let grid = match &opts.tag {
        PointTag::All => None,
        PointTag::Grid { a, b } => Some((a.len() as i64, b.len() as i64)),
    };
    let n = match grid {
        Some((a, b)) => a * b,
        None => surface.point_count(q) as i64,
    };
    let mut entries = Vec::new();
    let ql = q as i64;
    let gc = g.coords();

    // the class-based interpolating bound
    let default_l = surface.default_very_ample();
    let gamma = match (&opts.gamma, &default_l) {
        (GammaChoice::Custom(c), _) => {
            surface.divisor(c).map(|d| (d, "caller-supplied interpolating class".to_string()))
        }
        (_, None) => Err(Error::UnsupportedSurface(format!("{} has no catalog very ample class", surface.kind()))),
        (GammaChoice::Universal, Some(l)) => {
            universal_gamma(surface, l, q, false).map(|d| (d, format!("Γ = (q+1)L with L = {l}")))
        }
        (GammaChoice::UniversalAffine, Some(l)) => {
            if grid.is_none() {
                Err(Error::PreconditionFailed("the full point set meets every member of |L|".into()))
            } else {
                universal_gamma(surface, l, q, true)
                    .map(|d| (d, format!("Γ = qL with L = {l}; the grid chart misses a member of |L|")))
            }
        }
    };
    match gamma {
        Ok((gm, why)) => {
            let v = interpolating_bound(surface, n, &gm, g)?;
            entries.push(BoundEntry::new("interpolating", v, true, format!("{why}, Γ = {gm}")));
        }
        Err(e) => entries.push(BoundEntry::skipped("interpolating", e.to_string())),
    }

    // grid-adapted interpolating class
    let grid_gamma: Option<(DivisorClass, String)> = match (surface.kind(), grid) {
        (SurfaceKind::QuadricP1xP1, Some((a, b))) => {
            let gm = surface.divisor(&[a, b])?;
            debug_assert_eq!(n - surface.intersect(&gm, g)?, product_grid_bound(n, a, b, gc[0], gc[1]));
            Some((gm, format!("union of {a} + {b} rulings through the grid")))
        }
        (SurfaceKind::Hirzebruch { e }, Some((a, b))) => {
            let gm = surface.divisor(&[a + b * e, b])?;
            debug_assert_eq!(n - surface.intersect(&gm, g)?, hirzebruch_grid_bound(a, b, *e, gc[0], gc[1]));
            Some((gm, format!("{a} fibers plus {b} sections of class eF+S")))
        }
        _ => None,
    };
    if let Some((gm, why)) = grid_gamma {
        let v = interpolating_bound(surface, n, &gm, g)?;
        entries.push(BoundEntry::new("interpolating_grid", v, true, format!("{why}, Γ = {gm}")));
    }
    if let SurfaceKind::CurveProduct { g_c, g_d, n_c, n_d } = *surface.kind() {
        let (nc, nd) = (n_c as i64, n_d as i64);
        if nc >= 2 * g_c && nd >= 2 * g_d {
            let gm = surface.divisor(&[nd, nc])?;
            let v = interpolating_bound(surface, n, &gm, g)?;
            debug_assert_eq!(v, product_grid_bound(n, nc, nd, gc[1], gc[0]));
            entries.push(BoundEntry::new(
                "interpolating_grid",
                v,
                true,
                format!("fibers over all rational points of each factor, Γ = {gm}"),
            ));
        } else {
            entries.push(BoundEntry::skipped(
                "interpolating_grid",
                format!("need N_C >= 2g_C and N_D >= 2g_D (N_C={nc}, N_D={nd})"),
            ));
        }
    }

    // Aubry, and Hansen S2 with ξ = q+1, need G very ample
    let l_sq = surface.self_intersection(g)?;
    match aubry_bound(surface, n, q, g) {
        Ok(v) => entries.push(BoundEntry::new("aubry", v, true, "G is very ample")),
        Err(e) => entries.push(BoundEntry::skipped("aubry", e.to_string())),
    }

    // Hansen A with the rulings P^1 x {c} on the full quadric
    if let (SurfaceKind::QuadricP1xP1, None) = (surface.kind(), grid) {
        let (a, b) = (gc[0], gc[1]);
        if a >= 0 && b >= 0 && a <= ql + 1 {
            let ell = b.min(ql + 1);
            let v = hansen_curve_bound_uniform(n, ell, ql + 1, ql + 1, a)?;
            entries.push(BoundEntry::new(
                "hansen_a",
                v,
                true,
                format!("q+1 rulings with N = q+1, at most ℓ = {ell} in a zero locus, η = {a}"),
            ));
        } else {
            entries.push(BoundEntry::skipped("hansen_a", "needs 0 <= a <= q+1 and b >= 0"));
        }
    } else if let Some(h) = &opts.hansen_curves {
        match hansen_curve_bound(n, h.ell, h.big_n, &h.lc) {
            Ok(v) => entries.push(BoundEntry::new("hansen_a", v, true, "caller-supplied curves")),
            Err(e) => entries.push(BoundEntry::skipped("hansen_a", e.to_string())),
        }
    }

    if let Some(eps) = opts.epsilon {
        match hansen_s1(n, l_sq, eps) {
            Ok(v) => entries.push(BoundEntry::new("hansen_s1", v, true, format!("caller-supplied ε = {eps}"))),
            Err(e) => entries.push(BoundEntry::skipped("hansen_s1", e.to_string())),
        }
    }
    let xi_entry = match opts.xi {
        Some(xi) => hansen_s2(n, l_sq, xi).map(|v| (v, format!("caller-supplied ξ = {xi}"))),
        None if surface.ampleness_flags(g)?.very_ample.is_yes() => {
            hansen_s2(n, l_sq, ql + 1).map(|v| (v, "ξ = q+1 on very ample G".to_string()))
        }
        None => Err(Error::NotVeryAmple),
    };
    match xi_entry {
        Ok((v, why)) => entries.push(BoundEntry::new("hansen_s2", v, true, why)),
        Err(e) => entries.push(BoundEntry::skipped("hansen_s2", e.to_string())),
    }

    // dimension: evaluation is injective once some interpolating bound is positive
    let injective = entries.iter().any(|e| e.applicable && e.name.starts_with("interpolating") && e.value > 0);
    let k_lower = if injective {
        witness_h(surface, g).and_then(|h| surface.riemann_roch_lower(g, &h).ok())
    } else {
        None
    };

    let exact = match (opts.exact_budget, surface.kind()) {
        (Some(budget), k) if !matches!(k, SurfaceKind::CurveProduct { .. }) => {
            let field = FieldSpec::with_order(q)?;
            build_code(surface, g, &field, &opts.tag).ok().and_then(|code| {
                min_distance_with_threads(&code, budget, opts.threads)
                    .ok()
                    .map(|d| ExactParams { k: code.k() as u64, d })
            })
        }
        _ => None,
    };
    Ok(BoundReport { n, k_lower, entries, exact })
}

/// Pulls a report back along a totally split étale cover of degree `deg`.
///
/// Points and `Γ·G` both scale by `deg`, so interpolating bounds scale too.
/// Curve-based and Aubry bounds do not survive; the Seshadri variants need
/// new caller inputs on the cover.
pub fn lifted_bound(report: &BoundReport, deg: i64) -> Result<BoundReport> {
    if deg < 1 {
        return Err(Error::InvalidDegree);
    }
    if deg == 1 {
        return Ok(report.clone());
    }
    let entries = report
        .entries
        .iter()
        .map(|e| {
            if e.name.starts_with("interpolating") {
                BoundEntry::new(&e.name, deg * e.value, e.applicable, format!("{}; pulled back, degree {deg}", e.reason))
            } else if e.name.starts_with("hansen_s") {
                BoundEntry::skipped(&e.name, "liftable with caller inputs on the cover")
            } else {
                BoundEntry::skipped(&e.name, "not liftable")
            }
        })
        .collect();
    Ok(BoundReport { n: deg * report.n, k_lower: None, entries, exact: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p1() -> SurfaceModel {
        SurfaceModel::p1xp1()
    }

    #[test]
    fn universal_gamma_examples() {
        let s = p1();
        assert_eq!(universal_gamma(&s, &s.divisor(&[1, 1]).unwrap(), 3, false).unwrap().coords(), &[4, 4]);
        let h = SurfaceModel::hirzebruch(1).unwrap();
        assert_eq!(universal_gamma(&h, &h.divisor(&[2, 1]).unwrap(), 3, false).unwrap().coords(), &[8, 4]);
        let p = SurfaceModel::projective_plane();
        assert_eq!(universal_gamma(&p, &p.divisor(&[1]).unwrap(), 2, true).unwrap().coords(), &[2]);
        assert!(matches!(
            universal_gamma(&h, &h.divisor(&[1, 1]).unwrap(), 3, false),
            Err(Error::NotVeryAmple)
        ));
    }

    #[test]
    fn calculators() {
        let s = p1();
        let g = s.divisor(&[1, 1]).unwrap();
        assert_eq!(interpolating_bound(&s, 16, &s.divisor(&[4, 4]).unwrap(), &g).unwrap(), 8);
        assert_eq!(interpolating_bound(&s, 16, &s.divisor(&[4, 4]).unwrap(), &s.divisor(&[0, 0]).unwrap()).unwrap(), 16);
        assert!(gamma_square_check(&s, &s.divisor(&[4, 4]).unwrap(), 16).unwrap());
        assert!(!gamma_square_check(&s, &s.divisor(&[1, 1]).unwrap(), 16).unwrap());
        let p = SurfaceModel::projective_plane();
        assert!(gamma_square_check(&p, &p.divisor(&[4]).unwrap(), 13).unwrap());
        assert_eq!(aubry_bound(&s, 16, 3, &g).unwrap(), 8);
        assert_eq!(aubry_bound(&p, 7, 2, &p.divisor(&[1]).unwrap()).unwrap(), 4);
        assert_eq!(hansen_curve_bound(16, 1, 4, &[1, 1, 1]).unwrap(), 9);
        assert_eq!(hansen_curve_bound(16, 0, 4, &[2, 3]).unwrap(), 11);
        assert!(matches!(hansen_curve_bound(16, 0, 4, &[2, -3]), Err(Error::NegativeIntersection(-3))));
        assert_eq!(hansen_s2(16, 2, 4).unwrap(), 8);
        assert_eq!(hansen_s1(16, 2, Rational64::from_integer(1)).unwrap(), 14);
        assert_eq!(hansen_s1(16, 2, Rational64::new(3, 1)).unwrap(), 15);
        assert!(matches!(hansen_s1(16, 2, Rational64::zero()), Err(Error::InvalidEpsilon)));
        assert!(matches!(hansen_s2(16, 2, 0), Err(Error::InvalidXi)));
        assert_eq!(seshadri_upper(8, 16).unwrap(), Rational64::new(1, 2));
        assert_eq!(seshadri_upper(0, 5).unwrap(), Rational64::zero());
        assert_eq!(product_grid_bound(9, 3, 3, 1, 1), 3);
        assert_eq!(product_grid_bound(9, 3, 3, 0, 0), 9);
        assert_eq!(hirzebruch_grid_bound(3, 3, 1, 1, 1), 3);
        assert_eq!(hirzebruch_grid_bound(4, 3, 2, 2, 0), 12 - 6);
        assert_eq!(hirzebruch_grid_bound(3, 4, 0, 1, 2), product_grid_bound(12, 3, 4, 1, 2));
    }

    #[test]
    fn hansen_a_matches_the_closed_form_on_the_quadric() {
        for q in [2i64, 3, 4, 5] {
            for a in 0..=q {
                for b in 0..=q {
                    let n = (q + 1) * (q + 1);
                    let v = hansen_curve_bound_uniform(n, b, q + 1, q + 1, a).unwrap();
                    assert_eq!(v, n - (q + 1) * (a + b) + a * b);
                }
            }
        }
    }

    #[test]
    fn quadric_report() {
        let s = p1();
        let opts = ReportOptions { exact_budget: Some(1_000_000), ..Default::default() };
        let r = parameter_report(&s, &s.divisor(&[1, 1]).unwrap(), 3, &opts).unwrap();
        assert_eq!(r.n, 16);
        assert_eq!(r.k_lower, Some(4));
        assert_eq!(r.value("interpolating"), Some(8));
        assert_eq!(r.value("aubry"), Some(8));
        assert_eq!(r.value("hansen_s2"), Some(8));
        assert_eq!(r.value("hansen_a"), Some(9));
        assert_eq!(r.exact, Some(ExactParams { k: 4, d: 9 }));
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["k_lower"], 4);
        assert_eq!(serde_json::from_value::<BoundReport>(j).unwrap(), r);
    }

    #[test]
    fn hirzebruch_report_defect() {
        let h = SurfaceModel::hirzebruch(1).unwrap();
        let opts = ReportOptions { exact_budget: Some(1_000_000), ..Default::default() };
        let r = parameter_report(&h, &h.divisor(&[1, 1]).unwrap(), 3, &opts).unwrap();
        assert_eq!((r.n, r.k_lower, r.value("interpolating")), (16, Some(3), Some(8)));
        assert_eq!(r.exact.unwrap().d, 9);
        assert_eq!(r.defect(), Some(1));
        assert!(!r.entry("aubry").unwrap().applicable);
    }

    #[test]
    fn k_lower_needs_injectivity() {
        let s = p1();
        let r = parameter_report(&s, &s.divisor(&[3, 3]).unwrap(), 2, &ReportOptions::default()).unwrap();
        assert_eq!(r.n, 9);
        assert_eq!(r.value("interpolating"), Some(-9));
        assert_eq!(r.k_lower, None);
        assert_eq!(serde_json::to_value(&r).unwrap()["k_lower"], "n/a");
    }

    #[test]
    fn affine_variant_only_on_grids() {
        let s = p1();
        let g = s.divisor(&[1, 1]).unwrap();
        let mut opts = ReportOptions { gamma: GammaChoice::UniversalAffine, ..Default::default() };
        let r = parameter_report(&s, &g, 3, &opts).unwrap();
        assert!(!r.entry("interpolating").unwrap().applicable);
        opts.tag = PointTag::full_grid(3);
        let r = parameter_report(&s, &g, 3, &opts).unwrap();
        assert_eq!(r.n, 9);
        assert_eq!(r.value("interpolating"), Some(9 - 6));
        assert_eq!(r.value("interpolating_grid"), Some(3));
    }

    #[test]
    fn curve_product_report() {
        let c = SurfaceModel::curve_product(2, 2, 10, 12).unwrap();
        let r = parameter_report(&c, &c.divisor(&[2, 1]).unwrap(), 7, &ReportOptions::default()).unwrap();
        assert_eq!(r.n, 120);
        // Γ = 12 F_C + 10 F_D, so Γ·G = 12·1 + 10·2
        assert_eq!(r.value("interpolating_grid"), Some(120 - 32));
        assert!(!r.entry("interpolating").unwrap().applicable);
        assert!(!r.entry("aubry").unwrap().applicable);
    }

    #[test]
    fn lifting() {
        let s = p1();
        let opts = ReportOptions { exact_budget: Some(1_000_000), ..Default::default() };
        let r = parameter_report(&s, &s.divisor(&[1, 1]).unwrap(), 3, &opts).unwrap();
        assert_eq!(lifted_bound(&r, 1).unwrap(), r);
        let l = lifted_bound(&r, 2).unwrap();
        assert_eq!((l.n, l.value("interpolating")), (32, Some(16)));
        assert!(l.exact.is_none() && l.k_lower.is_none());
        assert_eq!(l.entry("hansen_a").unwrap().reason, "not liftable");
        assert!(l.entry("hansen_s2").unwrap().reason.contains("caller inputs"));
        assert!(matches!(lifted_bound(&r, 0), Err(Error::InvalidDegree)));
    }

    proptest! {
        #[test]
        fn lifting_preserves_relative_bound(n in 1i64..10_000, gg in 0i64..10_000, deg in 1i64..50) {
            let r = BoundReport {
                n,
                k_lower: None,
                entries: vec![BoundEntry::new("interpolating", n - gg, true, "")],
                exact: None,
            };
            let l = lifted_bound(&r, deg).unwrap();
            let rel = |r: &BoundReport| Rational64::new(r.value("interpolating").unwrap(), r.n);
            prop_assert_eq!(rel(&l), rel(&r));
            prop_assert_eq!(rel(&r), Rational64::from_integer(1) - Rational64::new(gg, n));
        }

        #[test]
        fn seshadri_upper_dominates_consistent_epsilon(
            idx in 0usize..3, d in 1i64..6, q in 2u64..9, num in 1i64..200, den in 1i64..200,
        ) {
            let s = [SurfaceModel::projective_plane(), p1(), SurfaceModel::hirzebruch(1).unwrap()][idx].clone();
            let l = s.default_very_ample().unwrap();
            let g = l.scale(d);
            let n = s.point_count(q) as i64;
            let gamma = universal_gamma(&s, &l, q, false).unwrap();
            let gg = s.intersect(&gamma, &g).unwrap();
            let eps = Rational64::new(num, den);
            let g2 = Rational64::from_integer(s.self_intersection(&g).unwrap());
            // ε with n - G²/ε <= n - Γ·G must stay below Γ·G/n
            if Rational64::from_integer(n) - g2 / eps <= Rational64::from_integer(n - gg) {
                prop_assert!(seshadri_upper(gg, n).unwrap() >= eps);
            }
        }
    }
}
