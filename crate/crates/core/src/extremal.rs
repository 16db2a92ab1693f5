//! Explicit extremal configurations and structural checkers for the cone.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{cone_bound, serre_bound, ConjecturePolicy};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::forms::{evaluate_form, intersection_count, product_of_hyperplanes, HomogeneousForm};
use crate::hermitian::{classify_line, make_standard_cone, tangent_hyperplane, HermitianVariety, LineClass};
use crate::proj::{enumerate_points, line_through, Hyperplane, ProjPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// d generator lines of the plane cone.
    GeneratorLines,
    /// Cone over d concurrent secant lines through an external point.
    ConcurrentSecantsCone,
    /// Cone over d tangent planes sharing a secant line.
    TangentPlanesThroughSecantCone,
    /// d hyperplanes through a common codimension-2 flat.
    SerrePencil,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalWitness {
    pub form: HomogeneousForm,
    pub hyperplanes: Vec<Hyperplane>,
    pub predicted_count: usize,
    pub kind: WitnessKind,
}

fn cross(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let m = |x, y| ctx.mul(x, y);
    vec![
        ctx.sub(m(a[1], b[2]), m(a[2], b[1])),
        ctx.sub(m(a[2], b[0]), m(a[0], b[2])),
        ctx.sub(m(a[0], b[1]), m(a[1], b[0])),
    ]
}

/// Hyperplane of ℙⁿ with the same equation as `h` ⊂ ℙ^{n−1}; it contains
/// the vertex `[0:…:0:1]`.
fn cone_over(ctx: &FieldCtx, h: &Hyperplane) -> Result<Hyperplane> {
    let mut u = h.coeffs().to_vec();
    u.push(FieldElement::ZERO);
    Hyperplane::new(ctx, u)
}

fn first_external_point(ctx: &FieldCtx, base: &HermitianVariety) -> Result<ProjPoint> {
    enumerate_points(ctx, base.n())?
        .into_iter()
        .find(|x| !base.contains(ctx, x))
        .ok_or_else(|| Error::ConfigurationNotFound("no point off the Hermitian variety".into()))
}

/// d concurrent secant lines of 𝒰₂ through the first external point.
fn concurrent_secants(ctx: &FieldCtx, d: usize) -> Result<Vec<Hyperplane>> {
    let base = HermitianVariety::nondegenerate(ctx, 2);
    let e = first_external_point(ctx, &base)?;
    let mut lines: Vec<Hyperplane> = Vec::new();
    for y in base.points(ctx)? {
        if lines.len() == d {
            break;
        }
        if classify_line(ctx, &base, &e, y)?.class != LineClass::Secant {
            continue;
        }
        let l = Hyperplane::new(ctx, cross(ctx, e.coords(), y.coords()))?;
        if !lines.contains(&l) {
            lines.push(l);
        }
    }
    if lines.len() < d {
        return Err(Error::ConfigurationNotFound(format!(
            "only {} secants through {:?}",
            lines.len(),
            e.codes()
        )));
    }
    Ok(lines)
}

/// d tangent planes of 𝒰₃ at the points of a secant chord through an
/// external point; they share the polar line of the chord.
fn tangent_planes_through_secant(ctx: &FieldCtx, d: usize) -> Result<Vec<Hyperplane>> {
    let base = HermitianVariety::nondegenerate(ctx, 3);
    let e = first_external_point(ctx, &base)?;
    let pts = base.points(ctx)?;
    for a in pts {
        if classify_line(ctx, &base, &e, a)?.class != LineClass::Secant {
            continue;
        }
        let chord: Vec<ProjPoint> = line_through(ctx, &e, a)?
            .into_iter()
            .filter(|x| base.contains(ctx, x))
            .collect();
        if chord.len() < d {
            continue;
        }
        return chord[..d].iter().map(|r| tangent_hyperplane(ctx, &base, r)).collect();
    }
    Err(Error::ConfigurationNotFound(
        "no secant chord through the external point".into(),
    ))
}

/// A form attaining the intersection bound for the rank-n cone, n ∈ {2,3,4}.
pub fn construct_extremal(ctx: &FieldCtx, n: usize, d: u32) -> Result<ExtremalWitness> {
    let q = ctx.q() as u64;
    if d == 0 || d as u64 > q {
        return Err(Error::DegreeTooLarge { d, q });
    }
    let predicted = cone_bound(n as u32, d, q, ConjecturePolicy::Strict)?
        .value
        .ok_or_else(|| Error::OutOfRange("bound unknown".into()))? as usize;
    let d = d as usize;
    let (base_planes, kind) = match n {
        2 => {
            let u1 = HermitianVariety::nondegenerate(ctx, 1);
            let planes = u1.points(ctx)?[..d]
                .iter()
                .map(|x| {
                    let c = x.coords();
                    Hyperplane::new(ctx, vec![c[1], ctx.neg(c[0])])
                })
                .collect::<Result<Vec<_>>>()?;
            (planes, WitnessKind::GeneratorLines)
        }
        3 => (concurrent_secants(ctx, d)?, WitnessKind::ConcurrentSecantsCone),
        4 => (
            tangent_planes_through_secant(ctx, d)?,
            WitnessKind::TangentPlanesThroughSecantCone,
        ),
        _ => {
            return Err(Error::OutOfRange(format!(
                "extremal constructions cover n = 2, 3, 4; got {n}"
            )))
        }
    };
    let hyperplanes = base_planes
        .iter()
        .map(|h| cone_over(ctx, h))
        .collect::<Result<Vec<_>>>()?;
    let form = product_of_hyperplanes(ctx, &hyperplanes)?;
    let cone = make_standard_cone(ctx, n);
    let got = intersection_count(ctx, &form, cone.points(ctx)?);
    if got != predicted {
        return Err(Error::ConfigurationNotFound(format!(
            "construction meets the cone in {got} points, expected {predicted}"
        )));
    }
    Ok(ExtremalWitness {
        form,
        hyperplanes,
        predicted_count: predicted,
        kind,
    })
}

/// d hyperplanes `x0 + t·x1 = 0` through the flat `x0 = x1 = 0`; their union
/// has exactly Serre's number of rational points.
pub fn serre_construction(ctx: &FieldCtx, n: usize, d: u32) -> Result<ExtremalWitness> {
    let s = ctx.q2() as u64;
    let predicted = serre_bound(n as u32, d, s)? as usize;
    if n < 1 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    let hyperplanes = (0..d)
        .map(|t| {
            let mut u = vec![FieldElement::ZERO; n + 1];
            u[0] = FieldElement::ONE;
            u[1] = ctx.element(t)?;
            Hyperplane::new(ctx, u)
        })
        .collect::<Result<Vec<_>>>()?;
    let form = product_of_hyperplanes(ctx, &hyperplanes)?;
    Ok(ExtremalWitness {
        form,
        hyperplanes,
        predicted_count: predicted,
        kind: WitnessKind::SerrePencil,
    })
}

fn require_cone(variety: &HermitianVariety) -> Result<&ProjPoint> {
    match (variety.is_rank_n_cone(), variety.vertex()) {
        (true, Some(v)) => Ok(v),
        _ => Err(Error::UnsupportedVariety("expected a rank-n cone".into())),
    }
}

/// Whether the zeros of `form` on the cone are exactly a nonempty union of
/// full generator lines, and how many generator lines lie in the zero set.
pub fn check_union_of_cone_lines(
    ctx: &FieldCtx,
    variety: &HermitianVariety,
    form: &HomogeneousForm,
) -> Result<(bool, usize)> {
    let vertex = require_cone(variety)?;
    let zeros: BTreeSet<&ProjPoint> = variety
        .points(ctx)?
        .iter()
        .filter(|x| evaluate_form(ctx, form, x).map(|v| v.is_zero()).unwrap_or(false))
        .collect();
    let mut seen: BTreeSet<Vec<ProjPoint>> = BTreeSet::new();
    let mut contained = 0;
    let mut all_full = zeros.contains(vertex);
    for x in zeros.iter().filter(|x| **x != vertex) {
        let line = line_through(ctx, vertex, x)?;
        if seen.contains(&line) {
            continue;
        }
        if line.iter().all(|y| zeros.contains(y)) {
            contained += 1;
        } else {
            all_full = false;
        }
        seen.insert(line);
    }
    Ok((all_full && contained > 0, contained))
}

/// Whether the rational zero set of `form` in ℙⁿ is a union of lines
/// through `vertex`.
pub fn check_cone_with_vertex(ctx: &FieldCtx, form: &HomogeneousForm, vertex: &ProjPoint) -> Result<bool> {
    if !evaluate_form(ctx, form, vertex)?.is_zero() {
        return Ok(false);
    }
    let all = enumerate_points(ctx, form.n())?;
    let elements: Vec<FieldElement> = ctx.elements().collect();
    for x in &all {
        if x == vertex || !evaluate_form(ctx, form, x)?.is_zero() {
            continue;
        }
        for &t in &elements[1..] {
            let y: Vec<FieldElement> = x
                .coords()
                .iter()
                .zip(vertex.coords())
                .map(|(&a, &b)| ctx.add(a, ctx.mul(t, b)))
                .collect();
            let y = ProjPoint::new(ctx, y)?;
            if !evaluate_form(ctx, form, &y)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Intersection counts of `form` with the cone inside hyperplanes that
/// avoid the vertex `[0:…:0:1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionSample {
    /// Number of vertex-avoiding hyperplanes in ℙⁿ.
    pub population: u128,
    /// Whether every such hyperplane was visited.
    pub exhaustive: bool,
    /// Per-hyperplane counts in visiting order.
    pub counts: Vec<usize>,
}

/// Visits every vertex-avoiding hyperplane when there are at most
/// `samples`, otherwise a seeded uniform sample of that size.
pub fn sample_vertex_avoiding_sections(
    ctx: &FieldCtx,
    variety: &HermitianVariety,
    form: &HomogeneousForm,
    samples: usize,
    seed: u64,
) -> Result<SectionSample> {
    let vertex = require_cone(variety)?;
    if vertex != &ProjPoint::unit(variety.n(), variety.n()) {
        return Err(Error::UnsupportedVariety("vertex must be [0:...:0:1]".into()));
    }
    let n = variety.n();
    let q2 = ctx.q2() as u128;
    let population = q2.pow(n as u32);
    let zeros: Vec<&ProjPoint> = variety
        .points(ctx)?
        .iter()
        .filter(|x| evaluate_form(ctx, form, x).map(|v| v.is_zero()).unwrap_or(false))
        .collect();
    let count_in = |u: Vec<FieldElement>| -> Result<usize> {
        let h = Hyperplane::new(ctx, u)?;
        Ok(zeros.iter().filter(|x| h.eval(ctx, x.coords()).is_zero()).count())
    };
    let exhaustive = population <= samples as u128;
    let mut counts = Vec::new();
    if exhaustive {
        for idx in 0..population {
            let mut u = vec![FieldElement::ONE; n + 1];
            let mut rem = idx;
            for slot in u[..n].iter_mut().rev() {
                *slot = ctx.element((rem % q2) as u32)?;
                rem /= q2;
            }
            counts.push(count_in(u)?);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let mut u: Vec<FieldElement> = (0..n)
                .map(|_| ctx.element(rng.random_range(0..ctx.q2())))
                .collect::<Result<_>>()?;
            u.push(FieldElement::ONE);
            counts.push(count_in(u)?);
        }
    }
    Ok(SectionSample {
        population,
        exhaustive,
        counts,
    })
}
