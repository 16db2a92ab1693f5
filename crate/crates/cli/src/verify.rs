//! Invariant suites behind `verify`.
//!
//! Each suite is a list of named checks. A check passes, fails, or is
//! skipped when the work it needs is over budget; only failures make the
//! command exit nonzero.

use std::collections::{BTreeMap, BTreeSet};

use hermcodes_core::bounds::{
    cone_points, conjectured_M, known_M, rank_n_bound, serre_bound, sorensen_max, ConjecturePolicy, Provenance,
};
use hermcodes_core::codes::{
    build_code, code_dimension, min_distance, theoretical_parameters, weight, weight_distribution, DminKind,
    MinDistanceMode,
};
use hermcodes_core::extremal::{construct_extremal, sample_vertex_avoiding_sections, serre_construction};
use hermcodes_core::forms::{
    binomial, enumerate_forms_projective, evaluate_form, intersection_count, monomial_basis, product_of_hyperplanes,
    projective_form_count,
};
use hermcodes_core::hermitian::{
    count_points_formula, hyperplane_section, nondegenerate_count, rank_count, tangent_hyperplane, LineClass, RankCase,
    SectionKind,
};
use hermcodes_core::oracle::{bruteforce_max_intersection, max_intersection_over, OracleOptions};
use hermcodes_core::proj::{enumerate_hyperplanes, enumerate_lines, enumerate_points, pi_count};
use hermcodes_core::{
    make_field, make_standard_cone, Error, FieldCtx, FieldElement, HermitianMatrix, HermitianVariety, Shard,
};
use serde::Serialize;

use crate::commands::oracle_report;
use crate::config::{RunConfig, Suite, VarietyChoice};
use crate::{CliError, Exit, Outcome, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub command: String,
    pub suite: String,
    pub p: u32,
    pub e: u32,
    pub q: u32,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
    pub checks: Vec<Check>,
}

type Verdict = Result<(bool, String), Error>;

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn record(&mut self, name: impl Into<String>, verdict: Verdict) {
        let (status, detail) = match verdict {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e @ Error::BudgetExceeded { .. }) => (Status::Skipped, e.to_string()),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        self.0.push(Check {
            name: name.into(),
            status,
            detail,
        });
    }

    fn skip(&mut self, name: impl Into<String>, why: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            status: Status::Skipped,
            detail: why.into(),
        });
    }
}

fn eq_detail<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> (bool, String) {
    let ok = got == want;
    (ok, format!("got {got:?}, expected {want:?}"))
}

fn over(needed: u128, budget: u64, what: &'static str) -> Result<(), Error> {
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { what, needed, budget });
    }
    Ok(())
}

pub fn cmd_verify(cfg: &RunConfig, suite: Suite) -> Result<Outcome, CliError> {
    let ctx = make_field(cfg.p, cfg.e)?;
    let mut checks = Checks::default();
    match suite {
        Suite::Field => field_suite(&ctx, &mut checks),
        Suite::Projective => projective_suite(&ctx, cfg, &mut checks),
        Suite::Hermitian => hermitian_suite(&ctx, cfg, &mut checks),
        Suite::Forms => forms_suite(&ctx, cfg, &mut checks),
        Suite::Codes => codes_suite(&ctx, cfg, &mut checks),
        Suite::Bounds => bounds_suite(&ctx, cfg, &mut checks)?,
    }
    let count = |s: Status| checks.0.iter().filter(|c| c.status == s).count();
    let report = VerifyReport {
        schema: SCHEMA,
        command: "verify".into(),
        suite: format!("{suite:?}").to_lowercase(),
        p: cfg.p,
        e: cfg.e,
        q: ctx.q(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
        failures: checks
            .0
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.name.clone())
            .collect(),
        checks: checks.0,
    };
    let exit = if report.failed > 0 { Exit::Failure } else { Exit::Pass };
    Ok(Outcome::json(&report, exit))
}

/// Runs `f` over index pairs, striding when there are more than `limit`.
fn for_pairs(len: u64, limit: u64, mut f: impl FnMut(u64, u64) -> bool) -> (bool, u64) {
    let total = len * len;
    let stride = (total / limit).max(1);
    let mut visited = 0;
    let mut t = 0;
    while t < total {
        if !f(t / len, t % len) {
            return (false, visited);
        }
        visited += 1;
        t += stride;
    }
    (true, visited)
}

fn field_suite(ctx: &FieldCtx, checks: &mut Checks) {
    let els: Vec<FieldElement> = ctx.elements().collect();
    let len = els.len() as u64;
    const PAIRS: u64 = 1 << 20;

    let (ok, seen) = for_pairs(len, PAIRS, |i, j| {
        let (a, b) = (els[i as usize], els[j as usize]);
        let c = els[((i * 7 + j * 13 + 1) % len) as usize];
        ctx.add(a, b) == ctx.add(b, a)
            && ctx.mul(a, b) == ctx.mul(b, a)
            && ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c))
            && ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
            && ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
    });
    checks.record("field-axioms", Ok((ok, format!("{seen} (a, b, c) triples"))));

    let inverses = els.iter().all(|&a| {
        ctx.add(a, ctx.neg(a)).is_zero()
            && ctx.mul(a, FieldElement::ONE) == a
            && (a.is_zero() || ctx.inv(a).map(|i| ctx.mul(a, i)) == Ok(FieldElement::ONE))
    });
    checks.record("inverses-and-identities", Ok((inverses, format!("{len} elements"))));

    let (ok, seen) = for_pairs(len, PAIRS, |i, j| {
        let (a, b) = (els[i as usize], els[j as usize]);
        ctx.frob(ctx.frob(a)) == a
            && ctx.frob(ctx.mul(a, b)) == ctx.mul(ctx.frob(a), ctx.frob(b))
            && ctx.frob(ctx.add(a, b)) == ctx.add(ctx.frob(a), ctx.frob(b))
            && ctx.norm(ctx.mul(a, b)) == ctx.mul(ctx.norm(a), ctx.norm(b))
            && ctx.trace(ctx.add(a, b)) == ctx.add(ctx.trace(a), ctx.trace(b))
    });
    checks.record(
        "conjugation-norm-trace-homomorphisms",
        Ok((ok, format!("{seen} pairs"))),
    );

    let fixed: BTreeSet<u32> = els.iter().filter(|&&a| ctx.frob(a) == a).map(|a| a.code()).collect();
    let base: BTreeSet<u32> = ctx.base_field_codes().iter().copied().collect();
    let ok = fixed == base
        && fixed.len() == ctx.q() as usize
        && els
            .iter()
            .all(|&a| ctx.is_in_base_field(a) == fixed.contains(&a.code()));
    checks.record(
        "conjugation-fixes-base-field",
        Ok((ok, format!("{} fixed elements", fixed.len()))),
    );

    let mut norm_fibers: BTreeMap<u32, usize> = BTreeMap::new();
    let mut trace_fibers: BTreeMap<u32, usize> = BTreeMap::new();
    for &a in &els {
        *norm_fibers.entry(ctx.norm(a).code()).or_default() += 1;
        *trace_fibers.entry(ctx.trace(a).code()).or_default() += 1;
    }
    let q = ctx.q() as usize;
    let ok = norm_fibers.keys().copied().collect::<BTreeSet<_>>() == base
        && norm_fibers.iter().all(|(&b, &c)| c == if b == 0 { 1 } else { q + 1 });
    checks.record("norm-fibers", Ok((ok, format!("{norm_fibers:?}"))));
    let ok = trace_fibers.keys().copied().collect::<BTreeSet<_>>() == base && trace_fibers.values().all(|&c| c == q);
    checks.record(
        "trace-fibers",
        Ok((ok, format!("{} fibers of size {q}", trace_fibers.len()))),
    );
}

fn dims(cfg: &RunConfig, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
    match cfg.n {
        Some(n) => vec![n],
        None => default.collect(),
    }
}

fn projective_suite(ctx: &FieldCtx, cfg: &RunConfig, checks: &mut Checks) {
    let s = ctx.q2() as u64;
    for n in dims(cfg, 1..=3) {
        let pts = enumerate_points(ctx, n);
        checks.record(
            format!("point-count-n{n}"),
            pts.as_ref()
                .map(|p| eq_detail(p.len() as u64, pi_count(n as i64, s)))
                .map_err(Clone::clone),
        );
        let Ok(pts) = pts else { continue };
        let normalized = pts.windows(2).all(|w| w[0] < w[1])
            && pts
                .iter()
                .all(|x| x.coords().iter().rev().find(|c| !c.is_zero()) == Some(&FieldElement::ONE));
        checks.record(
            format!("points-normalized-and-sorted-n{n}"),
            Ok((normalized, format!("{} points", pts.len()))),
        );

        let planes = enumerate_hyperplanes(ctx, n);
        checks.record(
            format!("hyperplane-count-n{n}"),
            planes
                .as_ref()
                .map(|h| eq_detail(h.len() as u64, pi_count(n as i64, s)))
                .map_err(Clone::clone),
        );
        let Ok(planes) = planes else { continue };
        let verdict = over((pts.len() * planes.len()) as u128, cfg.eval_budget, "incidence tests").map(|_| {
            let want = pi_count(n as i64 - 1, s) as usize;
            let mut per_point = vec![0usize; pts.len()];
            let mut ok = true;
            for h in &planes {
                let mut on = 0;
                for (i, x) in pts.iter().enumerate() {
                    if h.eval(ctx, x.coords()).is_zero() {
                        on += 1;
                        per_point[i] += 1;
                    }
                }
                ok &= on == want;
            }
            ok &= per_point.iter().all(|&c| c == want);
            (ok, format!("every hyperplane has and every point lies on {want}"))
        });
        checks.record(format!("incidence-regularity-n{n}"), verdict);

        let n_lines = pi_count(n as i64, s) as u128 * pi_count(n as i64 - 1, s) as u128 / (s as u128 + 1);
        let verdict = over(
            pts.len() as u128 * pts.len() as u128,
            cfg.eval_budget,
            "line enumeration",
        )
        .and_then(|_| {
            let lines = enumerate_lines(ctx, n)?;
            let sizes_ok = lines.iter().all(|l| l.len() as u64 == s + 1);
            Ok((
                sizes_ok && lines.len() as u128 == n_lines,
                format!("{} lines, expected {n_lines}", lines.len()),
            ))
        });
        checks.record(format!("line-count-and-size-n{n}"), verdict);
    }
}

fn hermitian_suite(ctx: &FieldCtx, cfg: &RunConfig, checks: &mut Checks) {
    let q = ctx.q() as u64;
    let ns = dims(cfg, 1..=4);
    for &n in &ns {
        let u = HermitianVariety::nondegenerate(ctx, n);
        checks.record(
            format!("point-count-nondegenerate-n{n}"),
            u.points(ctx).map(|p| {
                eq_detail(
                    p.len() as u64,
                    count_points_formula(n as u32, RankCase::Nondegenerate, q),
                )
            }),
        );
        if n >= 2 {
            let cone = make_standard_cone(ctx, n);
            checks.record(
                format!("point-count-cone-n{n}"),
                cone.points(ctx)
                    .map(|p| eq_detail(p.len() as u64, count_points_formula(n as u32, RankCase::RankNCone, q))),
            );
        }
        let verdict = (1..=n + 1)
            .map(|r| {
                let v = HermitianVariety::new(ctx, HermitianMatrix::diagonal(n, r))?;
                Ok((v.points(ctx)?.len() as u64, rank_count(n as u32, r as u32, q)))
            })
            .collect::<Result<Vec<_>, Error>>()
            .map(|pairs| {
                (
                    pairs.iter().all(|(a, b)| a == b),
                    format!("(enumerated, formula) by rank: {pairs:?}"),
                )
            });
        checks.record(format!("point-count-by-rank-n{n}"), verdict);
    }

    for &n in ns.iter().filter(|&&n| (2..=3).contains(&n)) {
        checks.record(
            format!("line-trichotomy-n{n}"),
            line_trichotomy(ctx, n, cfg.eval_budget),
        );
    }
    for &n in ns.iter().filter(|&&n| n >= 2) {
        checks.record(
            format!("hyperplane-dichotomy-n{n}"),
            hyperplane_dichotomy(ctx, n, cfg.eval_budget),
        );
        checks.record(
            format!("vertex-avoiding-sections-n{n}"),
            cone_sections(ctx, n, cfg.eval_budget, false),
        );
        if n >= 3 {
            checks.record(
                format!("vertex-incident-sections-n{n}"),
                cone_sections(ctx, n, cfg.eval_budget, true),
            );
        }
    }
}

fn line_trichotomy(ctx: &FieldCtx, n: usize, budget: u64) -> Verdict {
    let all = pi_count(n as i64, ctx.q2() as u64) as u128;
    over(all * all, budget, "line enumeration")?;
    let u = HermitianVariety::nondegenerate(ctx, n);
    let mut hist: BTreeMap<String, usize> = BTreeMap::new();
    let mut ok = true;
    for line in enumerate_lines(ctx, n)? {
        let count = line.iter().filter(|x| u.contains(ctx, x)).count();
        let class = hermcodes_core::hermitian::classify_count(count, ctx.q() as u64);
        ok &= class != LineClass::Unknown && (n >= 3 || class != LineClass::Contained || count == 0);
        if count > 0 {
            *hist.entry(format!("{class:?}")).or_default() += 1;
        } else {
            *hist.entry("Missing".into()).or_default() += 1;
            ok = false;
        }
    }
    Ok((ok, format!("{hist:?}")))
}

/// Tangent sections are cones over 𝒰_{n−2}; the others are 𝒰_{n−1}; the
/// tangent hyperplanes are exactly the polars of points of 𝒰_n.
fn hyperplane_dichotomy(ctx: &FieldCtx, n: usize, budget: u64) -> Verdict {
    let q = ctx.q() as u64;
    let u = HermitianVariety::nondegenerate(ctx, n);
    let pts = u.points(ctx)?;
    over(
        pi_count(n as i64, ctx.q2() as u64) as u128 * pts.len() as u128,
        budget,
        "section counts",
    )?;
    let tangent_count = rank_count(n as u32 - 1, n as u32 - 1, q) as usize;
    let secant_count = nondegenerate_count(n as u32 - 1, q) as usize;
    let polars: BTreeSet<_> = pts
        .iter()
        .map(|a| tangent_hyperplane(ctx, &u, a))
        .collect::<Result<_, _>>()?;
    let (mut tangent, mut other, mut ok) = (0, 0, polars.len() == pts.len());
    for h in enumerate_hyperplanes(ctx, n)? {
        let s = hyperplane_section(ctx, &u, &h)?;
        match s.kind {
            SectionKind::Tangent => {
                tangent += 1;
                ok &= s.count == tangent_count && polars.contains(&h);
            }
            _ => {
                other += 1;
                ok &= s.count == secant_count && !polars.contains(&h);
            }
        }
    }
    Ok((
        ok,
        format!("{tangent} tangent sections of size {tangent_count}, {other} of size {secant_count}"),
    ))
}

/// Sections of the rank-n cone by hyperplanes avoiding the vertex, or by
/// those through it.
fn cone_sections(ctx: &FieldCtx, n: usize, budget: u64, through_vertex: bool) -> Verdict {
    let q = ctx.q() as u64;
    let s = q * q;
    let cone = make_standard_cone(ctx, n);
    let pts = cone.points(ctx)?;
    over(
        pi_count(n as i64, s) as u128 * pts.len() as u128,
        budget,
        "section counts",
    )?;
    let expected: BTreeSet<usize> = if through_vertex {
        let nt = 1 + s * nondegenerate_count(n as u32 - 2, q);
        let t = 1 + s * rank_count(n as u32 - 2, n as u32 - 2, q);
        [nt as usize, t as usize].into()
    } else {
        [nondegenerate_count(n as u32 - 1, q) as usize].into()
    };
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut kinds_ok = true;
    for h in enumerate_hyperplanes(ctx, n)? {
        if h.coeffs()[n].is_zero() != through_vertex {
            continue;
        }
        let info = hyperplane_section(ctx, &cone, &h)?;
        let want = if through_vertex {
            SectionKind::VertexIncident
        } else {
            SectionKind::VertexAvoiding
        };
        kinds_ok &= info.kind == want;
        *seen.entry(info.count).or_default() += 1;
    }
    let counts: BTreeSet<usize> = seen.keys().copied().collect();
    Ok((
        kinds_ok && counts == expected,
        format!("count -> hyperplanes {seen:?}, expected counts {expected:?}"),
    ))
}

fn forms_suite(ctx: &FieldCtx, cfg: &RunConfig, checks: &mut Checks) {
    for n in dims(cfg, 1..=4) {
        for d in 1..=3u32 {
            let b = monomial_basis(n, d);
            let ex = b.exponents();
            let ordered = ex.first().map(|e| e[0]) == Some(d)
                && ex.last().map(|e| e[n]) == Some(d)
                && ex.iter().all(|e| e.iter().sum::<u32>() == d)
                && ex.windows(2).all(|w| w[0] > w[1]);
            checks.record(
                format!("monomial-basis-n{n}-d{d}"),
                Ok((
                    b.len() as u128 == binomial((n + d as usize) as u64, d as u64) && ordered,
                    format!("{} monomials", b.len()),
                )),
            );
        }
    }

    for (n, d) in [(1usize, 1u32), (2, 1), (2, 2)] {
        checks.record(
            format!("projective-form-enumeration-n{n}-d{d}"),
            form_enumeration(ctx, n, d, cfg.eval_budget),
        );
    }

    let verdict = (|| -> Verdict {
        let planes = enumerate_hyperplanes(ctx, 2)?;
        let pts = enumerate_points(ctx, 2)?;
        let mut ok = true;
        for pair in planes.windows(2).take(32) {
            let f = product_of_hyperplanes(ctx, pair)?;
            for x in &pts {
                let union = pair.iter().any(|h| h.eval(ctx, x.coords()).is_zero());
                ok &= evaluate_form(ctx, &f, x)?.is_zero() == union;
            }
        }
        Ok((ok, "zero set of a product is the union of the zero sets".into()))
    })();
    checks.record("product-of-hyperplanes-zero-set", verdict);

    let verdict = (|| -> Verdict {
        let pts = enumerate_points(ctx, 2)?;
        let basis = monomial_basis(2, 2);
        let mut ok = true;
        for f in enumerate_forms_projective(ctx, &basis, Shard::FULL, cfg.eval_budget)?.take(200) {
            let g = f.scale(ctx, ctx.generator());
            ok &= intersection_count(ctx, &f, &pts) == intersection_count(ctx, &g, &pts) && g.normalized(ctx)? == f;
        }
        Ok((ok, "200 conics".into()))
    })();
    checks.record("scaling-preserves-zero-set", verdict);

    let verdict = (|| -> Verdict {
        let cone = make_standard_cone(ctx, 2);
        let pts = cone.points(ctx)?;
        let basis = monomial_basis(2, 1);
        let mut direct: BTreeMap<usize, u128> = BTreeMap::new();
        for f in enumerate_forms_projective(ctx, &basis, Shard::FULL, cfg.eval_budget)? {
            *direct.entry(intersection_count(ctx, &f, pts)).or_default() += 1;
        }
        let opts = OracleOptions {
            eval_budget: cfg.eval_budget,
            ..OracleOptions::default()
        };
        let r = bruteforce_max_intersection(ctx, &cone, 1, &opts)?;
        Ok((r.histogram == direct, format!("histogram {direct:?}")))
    })();
    checks.record("incremental-scan-matches-direct-evaluation", verdict);
}

fn form_enumeration(ctx: &FieldCtx, n: usize, d: u32, budget: u64) -> Verdict {
    let basis = monomial_basis(n, d);
    let total = projective_form_count(ctx.q2() as u64, basis.len());
    let mut ok = true;
    let mut all = Vec::new();
    for (i, f) in enumerate_forms_projective(ctx, &basis, Shard::FULL, budget)?.enumerate() {
        ok &= f.coeffs().iter().find(|c| !c.is_zero()) == Some(&FieldElement::ONE);
        ok &= f.projective_index(ctx)? == i as u128;
        all.push(f.codes());
    }
    let mut sharded = Vec::new();
    for i in 0..4 {
        sharded.extend(enumerate_forms_projective(ctx, &basis, Shard::new(i, 4)?, budget)?.map(|f| f.codes()));
    }
    ok &= all.len() as u128 == total && sharded == all;
    Ok((
        ok,
        format!(
            "{} forms, expected {total}; 4 shards reproduce the full list",
            all.len()
        ),
    ))
}

/// Cells (n, d) with n ∈ {2,3,4} and d ≤ min(q, 2), plus d = 3 on the plane when q ≥ 3.
fn code_cells(ctx: &FieldCtx, cfg: &RunConfig) -> Vec<(usize, u32)> {
    if let (Some(n), Some(d)) = (cfg.n, cfg.d) {
        return vec![(n, d)];
    }
    let q = ctx.q();
    let mut cells: Vec<(usize, u32)> = (2..=4).flat_map(|n| (1..=q.min(2)).map(move |d| (n, d))).collect();
    if q >= 3 {
        cells.push((2, 3));
    }
    cells.retain(|&(n, _)| cfg.n.is_none_or(|m| m == n));
    cells
}

fn codes_suite(ctx: &FieldCtx, cfg: &RunConfig, checks: &mut Checks) {
    let q = ctx.q() as u64;
    for (n, d) in code_cells(ctx, cfg) {
        let tag = format!("n{n}-d{d}");
        let code = match build_code(ctx, &make_standard_cone(ctx, n), d) {
            Ok(c) => c,
            Err(e) => {
                checks.record(format!("evaluation-injective-{tag}"), Err(e));
                continue;
            }
        };
        let k = code_dimension(ctx, &code);
        let want = binomial((n + d as usize) as u64, d as u64);
        checks.record(format!("evaluation-injective-{tag}"), Ok(eq_detail(k as u128, want)));

        let theory = match theoretical_parameters(n as u32, d, q, cfg.policy()) {
            Ok(t) => t,
            Err(e) => {
                checks.record(format!("theoretical-parameters-{tag}"), Err(e));
                continue;
            }
        };
        let exhaustive = min_distance(ctx, &code, &MinDistanceMode::ExhaustiveMessages, cfg.class_budget);
        let verdict = exhaustive.as_ref().map_err(Clone::clone).map(|p| {
            let singleton = p.dmin + p.k <= p.m + 1;
            let (ok, detail) = eq_detail(
                (p.m as u128, p.k as u128, theory.dmin),
                (theory.m, theory.k, Some(p.dmin as u128)),
            );
            (
                ok && singleton && theory.kind == DminKind::Exact,
                format!("{detail} over {} classes", p.examined),
            )
        });
        checks.record(format!("exhaustive-dmin-{tag}"), verdict);

        if (2..=4).contains(&n) {
            let verdict = construct_extremal(ctx, n, d).and_then(|w| {
                let wt = weight(&code.codeword(ctx, &w.form)?) as u128;
                Ok(eq_detail(Some(wt), theory.dmin))
            });
            checks.record(format!("witness-weight-{tag}"), verdict);
        }
    }

    let verdict = (|| -> Verdict {
        let code = build_code(ctx, &make_standard_cone(ctx, 2), 1)?;
        let a = min_distance(ctx, &code, &MinDistanceMode::ExhaustiveMessages, cfg.class_budget)?;
        let b = min_distance(ctx, &code, &MinDistanceMode::ExhaustiveForms, cfg.class_budget)?;
        let dist = weight_distribution(ctx, &code, cfg.class_budget)?;
        let classes = projective_form_count(ctx.q2() as u64, a.k);
        let total: u128 = dist.values().sum();
        Ok((
            a.dmin == b.dmin && total == classes && dist.keys().next() == Some(&a.dmin),
            format!("weight distribution {dist:?}"),
        ))
    })();
    checks.record("message-and-form-scans-agree-n2-d1", verdict);
}

fn oracle_cells(ctx: &FieldCtx, cfg: &RunConfig) -> Vec<(usize, u32)> {
    if let (Some(n), Some(d)) = (cfg.n, cfg.d) {
        return vec![(n, d)];
    }
    (2..=4)
        .flat_map(|n| (1..=ctx.q().min(2)).map(move |d| (n, d)))
        .filter(|&(n, d)| cfg.n.is_none_or(|m| m == n) && cfg.d.is_none_or(|e| e == d))
        .collect()
}

fn bounds_suite(ctx: &FieldCtx, cfg: &RunConfig, checks: &mut Checks) -> Result<(), CliError> {
    let q = ctx.q() as u64;
    let s = q * q;
    for (n, d) in oracle_cells(ctx, cfg) {
        let tag = format!("n{n}-d{d}");
        if !(2..=4).contains(&n) {
            checks.skip(format!("oracle-{tag}"), "oracle cells cover n = 2, 3, 4");
            continue;
        }
        let cone = make_standard_cone(ctx, n);
        let opts = OracleOptions {
            shard: Shard::FULL,
            eval_budget: cfg.eval_budget,
            max_retained: cfg.max_retained,
        };
        let report = match bruteforce_max_intersection(ctx, &cone, d, &opts) {
            Ok(r) => oracle_report(ctx, VarietyChoice::Cone, cfg.assume_conjecture, r)?,
            Err(e) => {
                checks.record(format!("oracle-max-equals-bound-{tag}"), Err(e));
                continue;
            }
        };
        let bound = report.bound.as_ref().and_then(|b| b.value);
        checks.record(
            format!("oracle-max-equals-bound-{tag}"),
            Ok(eq_detail(report.max_count.map(|m| m as u128), bound)),
        );
        if let Some(c) = &report.characterization {
            let lines = bound.map(|b| vec![((b - 1) / s as u128) as usize]);
            let detail = format!(
                "{} of {} maximizers checked, generator lines {:?}",
                c.checked, report.n_maximizers, c.generator_lines
            );
            checks.record(
                format!("maximizers-are-unions-of-generator-lines-{tag}"),
                Ok((
                    c.union_of_generator_lines && lines.as_ref() == Some(&c.generator_lines),
                    detail.clone(),
                )),
            );
            checks.record(
                format!("maximizers-are-cones-with-vertex-{tag}"),
                Ok((c.cone_with_vertex, detail)),
            );
        }
        let verdict = hermcodes_core::bounds::unital(n as u32 - 1, q).map(|u| {
            let cap = d as u128 * u;
            let va = report.vertex_avoiding_max.map(|v| v as u128);
            let ok = va.is_some_and(|v| v <= cap && bound.is_some_and(|b| v < b));
            (
                ok,
                format!("vertex-avoiding max {va:?}, cap d|U_(n-1)| = {cap}, bound {bound:?}"),
            )
        });
        checks.record(format!("vertex-avoiding-margin-{tag}"), verdict);
    }

    let witness_ns: Vec<usize> = dims(cfg, 2..=4).into_iter().filter(|n| (2..=4).contains(n)).collect();
    for &n in &witness_ns {
        for d in 1..=ctx.q() {
            if cfg.d.is_some_and(|e| e != d) {
                continue;
            }
            let verdict = construct_extremal(ctx, n, d).map(|w| (true, format!("{} points", w.predicted_count)));
            checks.record(format!("witness-attains-bound-n{n}-d{d}"), verdict);
        }
    }

    if witness_ns.contains(&4) {
        for d in 1..=ctx.q() {
            if cfg.d.is_some_and(|e| e != d) {
                continue;
            }
            let verdict = (|| -> Verdict {
                let cone = make_standard_cone(ctx, 4);
                let w = construct_extremal(ctx, 4, d)?;
                let sample = sample_vertex_avoiding_sections(ctx, &cone, &w.form, cfg.samples, cfg.seed)?;
                let cap = known_M(3, d, q)?.value.expect("n = 3 is known") as usize;
                let seen: BTreeSet<usize> = sample.counts.iter().copied().collect();
                Ok((
                    sample.counts.iter().all(|&c| c <= cap),
                    format!(
                        "{} of {} hyperplanes ({}), counts {seen:?}, cap {cap}",
                        sample.counts.len(),
                        sample.population,
                        if sample.exhaustive { "exhaustive" } else { "sampled" }
                    ),
                ))
            })();
            checks.record(format!("witness-vertex-avoiding-sections-n4-d{d}"), verdict);
        }
    }

    for n in [2usize, 3] {
        for d in 1..=ctx.q().min(2) {
            let verdict = (|| -> Verdict {
                let w = serre_construction(ctx, n, d)?;
                let pts = enumerate_points(ctx, n)?;
                Ok(eq_detail(
                    intersection_count(ctx, &w.form, &pts) as u128,
                    serre_bound(n as u32, d, s)?,
                ))
            })();
            checks.record(format!("serre-pencil-equality-n{n}-d{d}"), verdict);
        }
    }
    for d in 1..=ctx.q().min(2) {
        let verdict = (|| -> Verdict {
            let pts = enumerate_points(ctx, 2)?;
            let opts = OracleOptions {
                eval_budget: cfg.eval_budget,
                max_retained: 0,
                ..OracleOptions::default()
            };
            let r = max_intersection_over(ctx, &pts, None, &monomial_basis(2, d), &opts)?;
            Ok(eq_detail(r.max_count.map(|m| m as u128), Some(serre_bound(2, d, s)?)))
        })();
        checks.record(format!("serre-bound-is-plane-maximum-d{d}"), verdict);
    }

    let verdict = (1..=ctx.q())
        .map(|d| Ok((conjectured_M(3, d, q)?.value, Some(sorensen_max(d, q)?))))
        .collect::<Result<Vec<_>, Error>>()
        .map(|v| (v.iter().all(|(a, b)| a == b), format!("{v:?}")));
    checks.record("conjectured-value-agrees-with-sorensen-n3", verdict);

    let verdict = (1..=ctx.q().min(2))
        .map(|d| {
            let m = cone_points(4, q)?;
            let m3 = known_M(3, d, q)?.value.expect("n = 3 is known");
            let via_m3 = m - (1 + s as u128 * m3);
            let via_bound = m - rank_n_bound(4, d, q, ConjecturePolicy::Strict)?.value.expect("known");
            let theory = theoretical_parameters(4, d, q, ConjecturePolicy::Strict)?.dmin;
            Ok((Some(via_m3), Some(via_bound), theory))
        })
        .collect::<Result<Vec<_>, Error>>()
        .map(|v| (v.iter().all(|(a, b, c)| a == b && b == c), format!("{v:?}")));
    checks.record("cone-dmin-identity-n4", verdict);

    let verdict = (|| -> Verdict {
        let strict = known_M(4, 3, 3)?;
        let assumed = hermcodes_core::bounds::resolve_M(4, 3, 3, ConjecturePolicy::Assume)?;
        Ok((
            strict.is_unknown() && !assumed.is_unknown() && assumed.provenance == Provenance::Conjecture,
            format!(
                "strict {:?}, assumed {:?} ({:?})",
                strict.value, assumed.value, assumed.provenance
            ),
        ))
    })();
    checks.record("unknown-values-need-explicit-opt-in", verdict);
    Ok(())
}
