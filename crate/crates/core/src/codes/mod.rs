//! Evaluation codes `C_L(X, P, G)` on catalog surfaces.

mod basis;
mod distance;
mod points;

pub use basis::{eval_monomial, section_basis, MonomialBasis};
pub use distance::{
    exact_min_distance, min_distance_with_threads, projective_message_count, rational_locus, rational_locus_check,
    LocusReport, DEFAULT_DISTANCE_BUDGET,
};
pub use points::{projective_points, rational_points, Point, PointList, PointTag};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::Matrix;
use crate::surface::{DivisorClass, SurfaceModel};

/// A linear code given by a full-rank generator matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CodeRepr", into = "CodeRepr")]
pub struct LinearCode {
    field: FieldSpec,
    generator: Matrix,
    surface: Option<SurfaceModel>,
    divisor: Option<Vec<i64>>,
    point_tag: Option<PointTag>,
    monomial_count: usize,
    distance: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct CodeRepr {
    field: FieldSpec,
    n: usize,
    k: usize,
    surface: Option<SurfaceModel>,
    divisor: Option<Vec<i64>>,
    point_tag: Option<PointTag>,
    #[serde(default)]
    monomial_count: usize,
    generator: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<u64>,
}

impl From<LinearCode> for CodeRepr {
    fn from(c: LinearCode) -> Self {
        CodeRepr {
            n: c.n(),
            k: c.k(),
            generator: c.generator.to_rows().iter().map(|r| r.iter().map(|e| e.index()).collect()).collect(),
            field: c.field,
            surface: c.surface,
            divisor: c.divisor,
            point_tag: c.point_tag,
            monomial_count: c.monomial_count,
            d: c.distance,
        }
    }
}

impl TryFrom<CodeRepr> for LinearCode {
    type Error = Error;

    fn try_from(r: CodeRepr) -> Result<Self> {
        if r.generator.len() != r.k || r.generator.iter().any(|row| row.len() != r.n) {
            return Err(Error::Parse(format!("generator shape does not match [n, k] = [{}, {}]", r.n, r.k)));
        }
        let rows = r
            .generator
            .iter()
            .map(|row| row.iter().map(|&i| r.field.element(i)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let generator = if r.k == 0 { Matrix::zeros(0, r.n) } else { Matrix::from_rows(rows) };
        if generator.rank(&r.field) != r.k {
            return Err(Error::Parse("generator rows are linearly dependent".into()));
        }
        Ok(LinearCode {
            field: r.field,
            generator,
            surface: r.surface,
            divisor: r.divisor,
            point_tag: r.point_tag,
            monomial_count: r.monomial_count.max(r.k),
            distance: r.d,
        })
    }
}

impl LinearCode {
    /// Code spanned by the rows of `m`; dependent rows are dropped greedily.
    pub fn from_matrix(field: &FieldSpec, m: &Matrix) -> Self {
        let keep = m.independent_rows(field);
        LinearCode {
            field: field.clone(),
            generator: if keep.is_empty() { Matrix::zeros(0, m.cols()) } else { m.select_rows(&keep) },
            surface: None,
            divisor: None,
            point_tag: None,
            monomial_count: m.rows(),
            distance: None,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn surface(&self) -> Option<&SurfaceModel> {
        self.surface.as_ref()
    }

    pub fn divisor(&self) -> Option<&[i64]> {
        self.divisor.as_deref()
    }

    pub fn point_tag(&self) -> Option<&PointTag> {
        self.point_tag.as_ref()
    }

    /// Number of monomials evaluated before rank reduction.
    pub fn monomial_count(&self) -> usize {
        self.monomial_count
    }

    pub fn distance(&self) -> Option<u64> {
        self.distance
    }

    pub fn set_distance(&mut self, d: u64) {
        self.distance = Some(d);
    }

    /// Generator matrix as CSV, one row per line.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for row in self.generator.to_rows() {
            let cells: Vec<String> = row.iter().map(|e| e.index().to_string()).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

/// Evaluates the monomial basis of `G` at the chosen points.
pub fn build_code(surface: &SurfaceModel, g: &DivisorClass, field: &FieldSpec, tag: &PointTag) -> Result<LinearCode> {
    let basis = section_basis(surface, g)?;
    let pts = rational_points(surface, field, tag)?;
    if pts.is_empty() {
        return Err(Error::UnsupportedSubset("no points to evaluate".into()));
    }
    let rows: Vec<Vec<FieldElement>> = basis
        .exponents
        .iter()
        .map(|ex| pts.points.iter().map(|p| eval_monomial(field, ex, p)).collect())
        .collect();
    let mut code = LinearCode::from_matrix(field, &Matrix::from_rows(rows));
    code.surface = Some(surface.clone());
    code.divisor = Some(g.coords().to_vec());
    code.point_tag = Some(tag.clone());
    Ok(code)
}
