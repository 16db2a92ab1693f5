//! Points, lines and hyperplanes of ℙⁿ(GF(q²)).
//!
//! Points are normalized so that their last nonzero coordinate is 1, and every
//! enumeration is sorted lexicographically on the coordinate codes read left
//! to right. Hyperplanes reuse the same normalization on their dual vectors.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// Cap on `(q²)^(n+1)` for full projective enumerations.
pub const POINT_BUDGET: u128 = 1 << 24;

/// A normalized homogeneous coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint {
    coords: Vec<FieldElement>,
}

impl ProjPoint {
    /// Normalizes `coords` so the last nonzero entry is 1.
    pub fn new(ctx: &FieldCtx, mut coords: Vec<FieldElement>) -> Result<Self> {
        let last = coords.iter().rposition(|c| !c.is_zero()).ok_or(Error::ZeroVector)?;
        let inv = ctx.inv(coords[last])?;
        if inv != FieldElement::ONE {
            for c in coords.iter_mut().take(last + 1) {
                *c = ctx.mul(*c, inv);
            }
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_codes(ctx: &FieldCtx, codes: &[u32]) -> Result<Self> {
        let coords = codes.iter().map(|&c| ctx.element(c)).collect::<Result<Vec<_>>>()?;
        ProjPoint::new(ctx, coords)
    }

    /// The i-th standard basis point.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut coords = vec![FieldElement::ZERO; n + 1];
        coords[i] = FieldElement::ONE;
        ProjPoint { coords }
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn codes(&self) -> Vec<u32> {
        self.coords.iter().map(|c| c.code()).collect()
    }

    /// Ambient dimension n.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }
}

/// A hyperplane `Σ uᵢxᵢ = 0`, stored through its normalized dual vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hyperplane {
    dual: ProjPoint,
}

impl Hyperplane {
    pub fn new(ctx: &FieldCtx, dual: Vec<FieldElement>) -> Result<Self> {
        Ok(Hyperplane {
            dual: ProjPoint::new(ctx, dual)?,
        })
    }

    pub fn from_dual(dual: ProjPoint) -> Self {
        Hyperplane { dual }
    }

    /// The coordinate hyperplane `x_i = 0`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        Hyperplane {
            dual: ProjPoint::unit(n, i),
        }
    }

    pub fn dual(&self) -> &ProjPoint {
        &self.dual
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        self.dual.coords()
    }

    pub fn dim(&self) -> usize {
        self.dual.dim()
    }

    /// Value of the linear form at any representative.
    pub fn eval(&self, ctx: &FieldCtx, x: &[FieldElement]) -> FieldElement {
        dot(ctx, self.coeffs(), x)
    }
}

pub(crate) fn dot(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter()
        .zip(b)
        .fold(FieldElement::ZERO, |acc, (&x, &y)| ctx.add(acc, ctx.mul(x, y)))
}

/// `1 + s + … + s^k`; zero for `k = -1`.
pub fn pi_count(k: i64, s: u64) -> u64 {
    assert!(k >= -1, "pi_count needs k >= -1");
    (0..=k).map(|i| s.pow(i as u32)).sum()
}

fn check_budget(ctx: &FieldCtx, n: usize) -> Result<()> {
    let needed = (ctx.q2() as u128).checked_pow(n as u32 + 1).unwrap_or(u128::MAX);
    if needed > POINT_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "projective enumeration",
            needed,
            budget: POINT_BUDGET as u64,
        });
    }
    Ok(())
}

/// All points of ℙⁿ(GF(q²)) in canonical (lexicographic) order.
pub fn enumerate_points(ctx: &FieldCtx, n: usize) -> Result<Vec<ProjPoint>> {
    check_budget(ctx, n)?;
    let s = ctx.q2();
    let mut out = Vec::with_capacity(pi_count(n as i64, s as u64) as usize);
    let mut digits = vec![0u32; n + 1];
    loop {
        if let Some(last) = digits.iter().rposition(|&d| d != 0) {
            if digits[last] == 1 {
                out.push(ProjPoint {
                    coords: digits.iter().map(|&d| ctx.element(d).unwrap()).collect(),
                });
            }
        }
        // odometer, most significant digit first
        let mut i = n + 1;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < s {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// All hyperplanes of ℙⁿ(GF(q²)), ordered like their dual points.
pub fn enumerate_hyperplanes(ctx: &FieldCtx, n: usize) -> Result<Vec<Hyperplane>> {
    Ok(enumerate_points(ctx, n)?
        .into_iter()
        .map(Hyperplane::from_dual)
        .collect())
}

pub fn incidence(ctx: &FieldCtx, point: &ProjPoint, plane: &Hyperplane) -> Result<bool> {
    if point.dim() != plane.dim() {
        return Err(Error::DimensionMismatch {
            expected: plane.dim(),
            got: point.dim(),
        });
    }
    Ok(plane.eval(ctx, point.coords()).is_zero())
}

/// The q²+1 points of the line AB, sorted.
pub fn line_through(ctx: &FieldCtx, a: &ProjPoint, b: &ProjPoint) -> Result<Vec<ProjPoint>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    if a == b {
        return Err(Error::IdenticalPoints);
    }
    let mut pts = Vec::with_capacity(ctx.q2() as usize + 1);
    pts.push(a.clone());
    for t in ctx.elements() {
        let v = b
            .coords()
            .iter()
            .zip(a.coords())
            .map(|(&y, &x)| ctx.add(y, ctx.mul(t, x)))
            .collect();
        pts.push(ProjPoint::new(ctx, v)?);
    }
    pts.sort();
    pts.dedup();
    Ok(pts)
}

/// Lookup from points to their position in a point list.
#[derive(Debug, Clone, Default)]
pub struct PointIndex {
    map: HashMap<ProjPoint, usize>,
}

impl PointIndex {
    pub fn new(points: &[ProjPoint]) -> Self {
        PointIndex {
            map: points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect(),
        }
    }

    pub fn get(&self, p: &ProjPoint) -> Option<usize> {
        self.map.get(p).copied()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.map.contains_key(p)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Every line of ℙⁿ(GF(q²)) as a sorted point list; lines ordered by their
/// two smallest points.
pub fn enumerate_lines(ctx: &FieldCtx, n: usize) -> Result<Vec<Vec<ProjPoint>>> {
    let points = enumerate_points(ctx, n)?;
    let index = PointIndex::new(&points);
    let mut lines = Vec::new();
    let mut seen = vec![false; points.len()];
    for (i, a) in points.iter().enumerate() {
        seen.iter_mut().for_each(|s| *s = false);
        for j in i + 1..points.len() {
            if seen[j] {
                continue;
            }
            let line = line_through(ctx, a, &points[j])?;
            for p in &line {
                seen[index.get(p).expect("line points are points")] = true;
            }
            if line[0] == *a {
                lines.push(line);
            }
        }
    }
    Ok(lines)
}
