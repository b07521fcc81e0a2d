//! Exact maps from asymptotic surface invariants `(κ, χ)` to code
//! parameters `(δ, R)`.
//!
//! All arithmetic is over arbitrary-precision rationals; square roots are
//! only ever compared after squaring.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Rational formatted as `num/den`.
fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

mod ser_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// A nonnegative rational or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Extended {
    Finite(BigRational),
    Infinite,
}

impl Extended {
    pub fn finite(&self) -> Result<&BigRational> {
        match self {
            Extended::Finite(r) => Ok(r),
            Extended::Infinite => Err(Error::InfiniteInput),
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(r) => write!(f, "{}", fmt_rational(r)),
            Extended::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Extended {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "infinity" => Ok(Extended::Infinite),
            other => parse_rational(other).map(Extended::Finite),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl From<BigRational> for Extended {
    fn from(r: BigRational) -> Self {
        Extended::Finite(r)
    }
}

/// Limit point `(κ, χ)` of `(K²/n, χ(O)/n)` along a family of surfaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AsymptoticPoint {
    pub kappa: Extended,
    pub chi: Extended,
}

impl AsymptoticPoint {
    pub fn new(kappa: BigRational, chi: BigRational) -> Self {
        AsymptoticPoint { kappa: kappa.into(), chi: chi.into() }
    }

    /// Parses `"κ,χ"` with each part `num/den`, an integer or `inf`.
    pub fn parse(s: &str) -> Result<Self> {
        let (k, c) = s.split_once(',').ok_or_else(|| Error::Parse(format!("expected κ,χ in {s:?}")))?;
        Ok(AsymptoticPoint { kappa: k.parse()?, chi: c.parse()? })
    }
}

/// Relative distance and rate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodePoint {
    #[serde(with = "ser_rational")]
    pub delta: BigRational,
    #[serde(rename = "R", with = "ser_rational")]
    pub rate: BigRational,
}

impl CodePoint {
    pub fn new(delta: BigRational, rate: BigRational) -> Self {
        CodePoint { delta, rate }
    }
}

fn check_g(q: u64, g: u64) -> Result<()> {
    if g < 2 || g > q {
        return Err(Error::GOutOfRange(g as i64));
    }
    Ok(())
}

/// `(κ, χ) ↦ (1 - g(q+1)κ, g(g-1)/2 · κ + χ)`.
pub fn phi_g(q: u64, g: u64, pt: &AsymptoticPoint) -> Result<CodePoint> {
    check_g(q, g)?;
    let (k, c) = (pt.kappa.finite()?, pt.chi.finite()?);
    let (q, g) = (q as i64, g as i64);
    Ok(CodePoint {
        delta: int(1) - int(g * (q + 1)) * k,
        rate: rat(g * (g - 1), 2) * k + c,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainFlags {
    pub kappa_lb_ok: bool,
    pub chi_ub_ok: bool,
}

impl DomainFlags {
    pub fn both(self) -> bool {
        self.kappa_lb_ok && self.chi_ub_ok
    }
}

/// The proven outer constraints `κ >= 1/(q+1)²` and `χ <= κ/2`.
pub fn domain_membership(q: u64, pt: &AsymptoticPoint) -> Result<DomainFlags> {
    let (k, c) = (pt.kappa.finite()?, pt.chi.finite()?);
    let q1 = q as i64 + 1;
    Ok(DomainFlags { kappa_lb_ok: *k >= rat(1, q1 * q1), chi_ub_ok: *c <= k / int(2) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeBoundFlags {
    pub singleton_ok: bool,
    pub plotkin_ok: bool,
}

/// Singleton `R + δ <= 1` and Plotkin `R <= 1 - qδ/(q-1)`.
pub fn code_bound_checks(q: u64, cp: &CodePoint) -> CodeBoundFlags {
    let q = q as i64;
    CodeBoundFlags {
        singleton_ok: &cp.rate + &cp.delta <= int(1),
        plotkin_ok: cp.rate <= int(1) - rat(q, q - 1) * &cp.delta,
    }
}

/// Corners of the region `κ ∈ [1/(q+1)², 1/(g(q+1))]`, `0 <= χ <= κ/2` and
/// their images under `φ_g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polygon {
    #[serde(rename = "A1")]
    pub a1: AsymptoticPoint,
    #[serde(rename = "B1")]
    pub b1: AsymptoticPoint,
    #[serde(rename = "C1")]
    pub c1: AsymptoticPoint,
    #[serde(rename = "D1")]
    pub d1: AsymptoticPoint,
    #[serde(rename = "A2")]
    pub a2: CodePoint,
    #[serde(rename = "B2")]
    pub b2: CodePoint,
    #[serde(rename = "C2")]
    pub c2: CodePoint,
    #[serde(rename = "D2")]
    pub d2: CodePoint,
}

impl Polygon {
    pub fn sources(&self) -> [&AsymptoticPoint; 4] {
        [&self.a1, &self.b1, &self.c1, &self.d1]
    }

    pub fn images(&self) -> [&CodePoint; 4] {
        [&self.a2, &self.b2, &self.c2, &self.d2]
    }

    /// Slope of the image edge `C2 D2`.
    pub fn c2d2_slope(&self) -> BigRational {
        (&self.d2.rate - &self.c2.rate) / (&self.d2.delta - &self.c2.delta)
    }
}

pub fn polygon_image(q: u64, g: u64) -> Result<Polygon> {
    check_g(q, g)?;
    let (qi, gi) = (q as i64, g as i64);
    let lo = rat(1, (qi + 1) * (qi + 1));
    let hi = rat(1, gi * (qi + 1));
    let a1 = AsymptoticPoint::new(lo.clone(), int(0));
    let b1 = AsymptoticPoint::new(hi.clone(), int(0));
    let c1 = AsymptoticPoint::new(hi.clone(), hi / int(2));
    let d1 = AsymptoticPoint::new(lo.clone(), lo / int(2));
    Ok(Polygon {
        a2: phi_g(q, g, &a1)?,
        b2: phi_g(q, g, &b1)?,
        c2: phi_g(q, g, &c1)?,
        d2: phi_g(q, g, &d1)?,
        a1,
        b1,
        c1,
        d1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductCurvePoint {
    pub point: AsymptoticPoint,
    /// Whether `κ >= 8/(√q - 1)²`.
    pub dv_floor_ok: bool,
}

/// `κ(√q - 1)² >= 8`, i.e. `κ(q+1) - 8 >= 2κ√q`, decided by squaring.
pub fn dv_floor(kappa: &BigRational, q: u64) -> bool {
    let lhs = kappa * int(q as i64 + 1) - int(8);
    if lhs.is_negative() {
        return false;
    }
    &lhs * &lhs >= int(4) * kappa * kappa * int(q as i64)
}

/// The point of `C1 x C2` with `N1`, `N2` rational points:
/// `κ = 8(g1-1)(g2-1)/(N1 N2)`, `χ = κ/8`.
pub fn product_curve_point(q: u64, g1: u64, g2: u64, n1: u64, n2: u64) -> Result<ProductCurvePoint> {
    if g1 < 3 || g2 < 3 {
        return Err(Error::InvalidGenus(format!("genera ({g1}, {g2}) must be at least 3")));
    }
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidParams("point counts must be positive".into()));
    }
    let prod = BigInt::from(g1 - 1) * BigInt::from(g2 - 1);
    let n = BigInt::from(n1) * BigInt::from(n2);
    let chi = BigRational::new(prod, n);
    let kappa = &chi * int(8);
    Ok(ProductCurvePoint { dv_floor_ok: dv_floor(&kappa, q), point: AsymptoticPoint::new(kappa, chi) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramRow {
    pub source: AsymptoticPoint,
    pub image: CodePoint,
    pub in_domain: bool,
    pub singleton_ok: bool,
    pub plotkin_ok: bool,
}

pub const DIAGRAM_HEADER: &str = "kappa,chi,delta,R,in_domain,singleton_ok,plotkin_ok";

/// `grid_n x grid_n` samples of `[0, 2/(g(q+1))] x [0, 1/(g(q+1))]`, then the
/// corners `A1, B1, C1, D1`.
pub fn diagram_rows(q: u64, g: u64, grid_n: usize) -> Result<Vec<DiagramRow>> {
    check_g(q, g)?;
    if grid_n < 2 {
        return Err(Error::InvalidParams(format!("grid size {grid_n} must be at least 2")));
    }
    let span = rat(1, g as i64 * (q as i64 + 1));
    let steps = int(grid_n as i64 - 1);
    let row = |pt: AsymptoticPoint| -> Result<DiagramRow> {
        let image = phi_g(q, g, &pt)?;
        let flags = code_bound_checks(q, &image);
        Ok(DiagramRow {
            in_domain: domain_membership(q, &pt)?.both(),
            singleton_ok: flags.singleton_ok,
            plotkin_ok: flags.plotkin_ok,
            source: pt,
            image,
        })
    };
    let mut rows = Vec::with_capacity(grid_n * grid_n + 4);
    for i in 0..grid_n {
        let kappa = int(2) * &span * int(i as i64) / &steps;
        for j in 0..grid_n {
            let chi = &span * int(j as i64) / &steps;
            rows.push(row(AsymptoticPoint::new(kappa.clone(), chi))?);
        }
    }
    for corner in polygon_image(q, g)?.sources() {
        rows.push(row(corner.clone())?);
    }
    Ok(rows)
}

pub fn diagram_csv(rows: &[DiagramRow]) -> String {
    let mut s = String::from(DIAGRAM_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.source.kappa,
            r.source.chi,
            fmt_rational(&r.image.delta),
            fmt_rational(&r.image.rate),
            r.in_domain,
            r.singleton_ok,
            r.plotkin_ok
        ));
    }
    s
}

fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Small SVG of the `(δ, R)` unit square with the Singleton and Plotkin
/// lines and the image polygon. Coordinates are only used for drawing.
pub fn diagram_svg(q: u64, g: u64) -> Result<String> {
    let poly = polygon_image(q, g)?;
    let size = 400.0;
    let px = |d: f64, r: f64| (40.0 + d * size, 40.0 + (1.0 - r) * size);
    let mut s = String::new();
    s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\">\n");
    let (x0, y0) = px(0.0, 0.0);
    let (x1, y1) = px(1.0, 1.0);
    s.push_str(&format!(
        "<rect x=\"{x0}\" y=\"{y1}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        x1 - x0,
        y0 - y1
    ));
    let (sx, sy) = px(1.0, 0.0);
    let (tx, ty) = px(0.0, 1.0);
    s.push_str(&format!("<line x1=\"{tx}\" y1=\"{ty}\" x2=\"{sx}\" y2=\"{sy}\" stroke=\"gray\"/>\n"));
    let (px_, py_) = px(1.0 - 1.0 / q as f64, 0.0);
    s.push_str(&format!("<line x1=\"{tx}\" y1=\"{ty}\" x2=\"{px_}\" y2=\"{py_}\" stroke=\"blue\"/>\n"));
    let pts: Vec<String> = poly
        .images()
        .iter()
        .map(|c| {
            let (x, y) = px(to_f64(&c.delta), to_f64(&c.rate));
            format!("{x:.3},{y:.3}")
        })
        .collect();
    s.push_str(&format!("<polygon points=\"{}\" fill=\"orange\" fill-opacity=\"0.5\" stroke=\"red\"/>\n", pts.join(" ")));
    s.push_str("</svg>\n");
    Ok(s)
}

/// Writes the CSV to `path` and, if given, the SVG to `svg_path`.
pub fn emit_diagram(q: u64, g: u64, grid_n: usize, path: &Path, svg_path: Option<&Path>) -> Result<()> {
    let rows = diagram_rows(q, g, grid_n)?;
    let mut f = std::fs::File::create(path)?;
    f.write_all(diagram_csv(&rows).as_bytes())?;
    if let Some(p) = svg_path {
        std::fs::write(p, diagram_svg(q, g)?)?;
    }
    Ok(())
}

/// The affine combination `t·a + (1 - t)·b`.
pub fn lerp(t: &BigRational, a: &BigRational, b: &BigRational) -> BigRational {
    t * a + (BigRational::one() - t) * b
}
