//! Hermitian matrices and the varieties they define.
//!
//! The form of a Hermitian matrix `H` is `xᵀ H x^(q)`. Congruence reduction
//! brings any `H` to `diag(1,…,1,0,…,0)`; the rank-n case `diag(1,…,1,0)`
//! is the cone P𝒰_{n−1} with vertex `[0:…:0:1]`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::linalg::Matrix;
use crate::proj::{enumerate_points, line_through, pi_count, Hyperplane, ProjPoint};

/// An `(n+1)×(n+1)` matrix with `H ≠ 0` and `h_ij = h_ji^q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianMatrix {
    n: usize,
    m: Matrix,
}

impl HermitianMatrix {
    pub fn new(ctx: &FieldCtx, m: Matrix) -> Result<Self> {
        if m.rows() != m.cols() || m.rows() < 2 {
            return Err(Error::DimensionMismatch {
                expected: m.rows().max(2),
                got: m.cols(),
            });
        }
        if m.is_zero() {
            return Err(Error::ZeroMatrix);
        }
        let dim = m.rows();
        for i in 0..dim {
            for j in 0..dim {
                if m[(i, j)] != ctx.frob(m[(j, i)]) {
                    return Err(Error::NotHermitian);
                }
            }
        }
        Ok(HermitianMatrix { n: dim - 1, m })
    }

    /// `diag(1,…,1,0,…,0)` in ℙⁿ with `ones` leading ones.
    pub fn diagonal(n: usize, ones: usize) -> Self {
        assert!(ones >= 1 && ones <= n + 1, "diagonal rank out of range");
        let mut m = Matrix::zeros(n + 1, n + 1);
        for i in 0..ones {
            m[(i, i)] = FieldElement::ONE;
        }
        HermitianMatrix { n, m }
    }

    pub fn from_codes(ctx: &FieldCtx, rows: &[Vec<u32>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&c| ctx.element(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        HermitianMatrix::new(ctx, Matrix::from_rows(rows)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    /// `Sᵀ H S^(q)`, the Gram matrix of the columns of `S`.
    pub fn congruent(&self, ctx: &FieldCtx, s: &Matrix) -> Result<Matrix> {
        s.transpose().mul(ctx, &self.m)?.mul(ctx, &s.conjugate(ctx))
    }

    /// `xᵀ H y^(q)` for arbitrary representatives.
    pub fn sesquilinear(&self, ctx: &FieldCtx, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let row = self.m.row(i);
            let inner = row
                .iter()
                .zip(y)
                .fold(FieldElement::ZERO, |a, (&h, &yj)| ctx.add(a, ctx.mul(h, ctx.frob(yj))));
            acc = ctx.add(acc, ctx.mul(xi, inner));
        }
        acc
    }
}

/// `xᵀ H x^(q)`; lies in GF(q) and vanishes exactly on the variety.
pub fn evaluate_hermitian_form(ctx: &FieldCtx, h: &HermitianMatrix, x: &ProjPoint) -> Result<FieldElement> {
    if x.dim() != h.n {
        return Err(Error::DimensionMismatch {
            expected: h.n,
            got: x.dim(),
        });
    }
    Ok(h.sesquilinear(ctx, x.coords(), x.coords()))
}

pub fn hermitian_rank(ctx: &FieldCtx, h: &HermitianMatrix) -> usize {
    h.m.rank(ctx)
}

/// Result of congruence reduction: `Sᵀ H S^(q) = diag(1^rank, 0, …)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub s: Matrix,
    pub rank: usize,
}

/// Symmetric elimination for Hermitian forms.
///
/// Pivots on the smallest-index nonzero diagonal entry `a ∈ GF(q)*`, clears
/// its row and column, and rescales the pivot vector by the inverse of the
/// norm preimage of `a`. When every remaining diagonal entry vanishes, the
/// lexicographically first nonzero `h_ij` is used to replace `e_i` by
/// `e_i + λ e_j` with `h_ij λ^q + h_ij^q λ = 1`.
pub fn canonical_congruence(ctx: &FieldCtx, h: &HermitianMatrix) -> Result<Congruence> {
    let dim = h.n + 1;
    let mut s = Matrix::identity(dim);
    let mut k = 0;
    let col_axpy = |s: &mut Matrix, dst: usize, c: FieldElement, src: usize| {
        for r in 0..dim {
            let v = ctx.add(s[(r, dst)], ctx.mul(c, s[(r, src)]));
            s[(r, dst)] = v;
        }
    };
    while k < dim {
        let g = h.congruent(ctx, &s)?;
        if let Some(i) = (k..dim).find(|&i| !g[(i, i)].is_zero()) {
            s.swap_cols(k, i);
            let g = h.congruent(ctx, &s)?;
            let a = g[(k, k)];
            for j in k + 1..dim {
                let c = ctx.div(g[(j, k)], a)?;
                if !c.is_zero() {
                    col_axpy(&mut s, j, ctx.neg(c), k);
                }
            }
            let mu = ctx.inv(ctx.norm_preimage(a)?)?;
            for r in 0..dim {
                s[(r, k)] = ctx.mul(s[(r, k)], mu);
            }
            k += 1;
            continue;
        }
        let off = (k..dim)
            .flat_map(|i| (i + 1..dim).map(move |j| (i, j)))
            .find(|&(i, j)| !g[(i, j)].is_zero());
        let Some((i, j)) = off else { break };
        let hij = g[(i, j)];
        let t = ctx.trace_preimage(FieldElement::ONE)?;
        let lambda = ctx.div(t, ctx.frob(hij))?;
        col_axpy(&mut s, i, lambda, j);
    }
    Ok(Congruence { s, rank: k })
}

/// Rank class used by the point-count formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankCase {
    Nondegenerate,
    RankNCone,
}

/// |𝒰_n(GF(q²))| = (qⁿ − (−1)ⁿ)(q^{n+1} − (−1)^{n+1}) / (q² − 1).
pub fn nondegenerate_count(n: u32, q: u64) -> u64 {
    let q = q as i128;
    let sign = |k: u32| if k.is_multiple_of(2) { 1i128 } else { -1 };
    let num = (q.pow(n) - sign(n)) * (q.pow(n + 1) - sign(n + 1));
    (num / (q * q - 1)) as u64
}

/// Points of a rank-r Hermitian variety in ℙᵐ: a cone with vertex a ℙ^{m−r}
/// over a non-degenerate 𝒰_{r−1}.
pub fn rank_count(m: u32, r: u32, q: u64) -> u64 {
    assert!(r >= 1 && r <= m + 1);
    let s = q * q;
    pi_count(m as i64 - r as i64, s) + s.pow(m + 1 - r) * nondegenerate_count(r - 1, q)
}

pub fn count_points_formula(n: u32, case: RankCase, q: u64) -> u64 {
    match case {
        RankCase::Nondegenerate => nondegenerate_count(n, q),
        RankCase::RankNCone => 1 + q * q * nondegenerate_count(n - 1, q),
    }
}

/// Serializable description of a Hermitian variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyDescriptor {
    pub n: usize,
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
    pub matrix: Vec<Vec<u32>>,
    pub rank: usize,
    pub vertex: Option<Vec<u32>>,
}

/// The zero set of a Hermitian form, with its rank and (for rank-n cones)
/// its vertex. Points are materialized on first use.
#[derive(Debug)]
pub struct HermitianVariety {
    matrix: HermitianMatrix,
    rank: usize,
    vertex: Option<ProjPoint>,
    field: (u32, u32),
    points: OnceLock<Vec<ProjPoint>>,
}

impl Clone for HermitianVariety {
    fn clone(&self) -> Self {
        HermitianVariety {
            matrix: self.matrix.clone(),
            rank: self.rank,
            vertex: self.vertex.clone(),
            field: self.field,
            points: self.points.clone(),
        }
    }
}

impl HermitianVariety {
    pub fn new(ctx: &FieldCtx, matrix: HermitianMatrix) -> Result<Self> {
        let rank = hermitian_rank(ctx, &matrix);
        let vertex = if rank == matrix.n {
            let ker = matrix.m.kernel(ctx);
            debug_assert_eq!(ker.len(), 1);
            // the radical is {x : H x^(q) = 0}
            let v = ker[0].iter().map(|&c| ctx.frob(c)).collect();
            Some(ProjPoint::new(ctx, v)?)
        } else {
            None
        };
        Ok(HermitianVariety {
            matrix,
            rank,
            vertex,
            field: (ctx.p(), ctx.e()),
            points: OnceLock::new(),
        })
    }

    /// 𝒰_n: the identity form on ℙⁿ.
    pub fn nondegenerate(ctx: &FieldCtx, n: usize) -> Self {
        Self::new(ctx, HermitianMatrix::diagonal(n, n + 1)).expect("identity is Hermitian")
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex(&self) -> Option<&ProjPoint> {
        self.vertex.as_ref()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank == self.n() + 1
    }

    pub fn is_rank_n_cone(&self) -> bool {
        self.rank == self.n()
    }

    pub fn contains(&self, ctx: &FieldCtx, x: &ProjPoint) -> bool {
        self.matrix.sesquilinear(ctx, x.coords(), x.coords()).is_zero()
    }

    /// Rational points in canonical order.
    pub fn points(&self, ctx: &FieldCtx) -> Result<&[ProjPoint]> {
        debug_assert_eq!(self.field, (ctx.p(), ctx.e()), "variety used with a foreign field");
        if let Some(p) = self.points.get() {
            return Ok(p);
        }
        let pts: Vec<ProjPoint> = enumerate_points(ctx, self.n())?
            .into_iter()
            .filter(|x| self.contains(ctx, x))
            .collect();
        Ok(self.points.get_or_init(|| pts))
    }

    pub fn descriptor(&self, ctx: &FieldCtx) -> VarietyDescriptor {
        VarietyDescriptor {
            n: self.n(),
            p: ctx.p(),
            e: ctx.e(),
            modulus: ctx.modulus().to_vec(),
            matrix: self
                .matrix
                .m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|c| c.code()).collect())
                .collect(),
            rank: self.rank,
            vertex: self.vertex.as_ref().map(ProjPoint::codes),
        }
    }

    pub fn from_descriptor(ctx: &FieldCtx, d: &VarietyDescriptor) -> Result<Self> {
        if (d.p, d.e) != (ctx.p(), ctx.e()) || d.modulus != ctx.modulus() {
            return Err(Error::Parse("variety descriptor uses a different field".into()));
        }
        let v = Self::new(ctx, HermitianMatrix::from_codes(ctx, &d.matrix)?)?;
        if v.rank != d.rank || v.vertex.as_ref().map(ProjPoint::codes) != d.vertex {
            return Err(Error::Parse("descriptor rank/vertex inconsistent with matrix".into()));
        }
        Ok(v)
    }
}

/// P𝒰_{n−1} = V(x_0^{q+1} + … + x_{n−1}^{q+1}) with vertex `[0:…:0:1]`.
pub fn make_standard_cone(ctx: &FieldCtx, n: usize) -> HermitianVariety {
    assert!(n >= 1, "cone needs n >= 1");
    HermitianVariety::new(ctx, HermitianMatrix::diagonal(n, n)).expect("diagonal is Hermitian")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineClass {
    Tangent,
    Secant,
    Contained,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineIntersection {
    pub class: LineClass,
    pub count: usize,
}

/// Classifies a raw line intersection size.
pub fn classify_count(count: usize, q: u64) -> LineClass {
    let q = q as usize;
    match count {
        1 => LineClass::Tangent,
        c if c == q + 1 => LineClass::Secant,
        c if c == q * q + 1 => LineClass::Contained,
        _ => LineClass::Unknown,
    }
}

pub fn classify_line(
    ctx: &FieldCtx,
    variety: &HermitianVariety,
    a: &ProjPoint,
    b: &ProjPoint,
) -> Result<LineIntersection> {
    let line = line_through(ctx, a, b)?;
    let count = line.iter().filter(|x| variety.contains(ctx, x)).count();
    Ok(LineIntersection {
        class: classify_count(count, ctx.q() as u64),
        count,
    })
}

/// Polar hyperplane `u = H a^(q)` at a smooth point of the variety.
pub fn tangent_hyperplane(ctx: &FieldCtx, variety: &HermitianVariety, a: &ProjPoint) -> Result<Hyperplane> {
    if a.dim() != variety.n() {
        return Err(Error::DimensionMismatch {
            expected: variety.n(),
            got: a.dim(),
        });
    }
    if !variety.contains(ctx, a) {
        return Err(Error::PointNotOnVariety);
    }
    let conj: Vec<FieldElement> = a.coords().iter().map(|&c| ctx.frob(c)).collect();
    let u = variety.matrix.m.mul_vec(ctx, &conj)?;
    if u.iter().all(|c| c.is_zero()) {
        return Err(Error::SingularPoint);
    }
    Hyperplane::new(ctx, u)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SectionKind {
    Tangent,
    NonTangent,
    VertexAvoiding,
    VertexIncident,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectionInfo {
    pub rank: usize,
    pub count: usize,
    pub kind: SectionKind,
}

/// The Hermitian form restricted to a hyperplane, in the basis
/// `e_i − u_i e_j` (i ≠ j) where `j` is the last nonzero dual coordinate.
pub fn restrict_to_hyperplane(ctx: &FieldCtx, h: &HermitianMatrix, plane: &Hyperplane) -> Result<Matrix> {
    let n = h.n;
    if plane.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: plane.dim(),
        });
    }
    let u = plane.coeffs();
    let j = u.iter().rposition(|c| !c.is_zero()).expect("dual is nonzero");
    let mut c = Matrix::zeros(n + 1, n);
    for (col, i) in (0..=n).filter(|&i| i != j).enumerate() {
        c[(i, col)] = FieldElement::ONE;
        c[(j, col)] = ctx.neg(u[i]);
    }
    h.congruent(ctx, &c)
}

pub fn hyperplane_section(ctx: &FieldCtx, variety: &HermitianVariety, plane: &Hyperplane) -> Result<SectionInfo> {
    let restricted = restrict_to_hyperplane(ctx, &variety.matrix, plane)?;
    let rank = restricted.rank(ctx);
    let count = variety
        .points(ctx)?
        .iter()
        .filter(|x| plane.eval(ctx, x.coords()).is_zero())
        .count();
    let n = variety.n();
    let kind = if variety.is_nondegenerate() {
        if rank + 1 == n {
            SectionKind::Tangent
        } else {
            SectionKind::NonTangent
        }
    } else if let (true, Some(v)) = (variety.is_rank_n_cone(), variety.vertex()) {
        if plane.eval(ctx, v.coords()).is_zero() {
            SectionKind::VertexIncident
        } else {
            SectionKind::VertexAvoiding
        }
    } else {
        return Err(Error::UnsupportedVariety(format!(
            "rank {} in P^{}: sections need a non-degenerate variety or a rank-n cone",
            variety.rank(),
            n
        )));
    };
    Ok(SectionInfo { rank, count, kind })
}
