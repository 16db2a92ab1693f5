//! Exhaustive maximization of intersection counts over projective forms.
//!
//! The form index space is cut into contiguous chunks that are scanned in
//! parallel and reduced in index order, so results do not depend on the
//! thread count or on how the space was sharded.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::forms::{projective_form_count, CoeffOdometer, HomogeneousForm, IncrementalEvaluator, MonomialBasis, Shard};
use crate::hermitian::HermitianVariety;
use crate::proj::ProjPoint;

pub const DEFAULT_MAX_RETAINED: usize = 10_000;

const MIN_CHUNK: u128 = 4096;

/// Scans `[start, end)` of the projective coefficient space in parallel.
///
/// `step` sees each index with the zero count of its combination; chunk
/// states are combined left to right with `merge`.
pub(crate) fn parallel_scan<R, I, S, M>(
    ctx: &FieldCtx,
    evaluator: &IncrementalEvaluator,
    k: usize,
    (start, end): (u128, u128),
    init: I,
    step: S,
    merge: M,
) -> R
where
    R: Send,
    I: Fn() -> R + Sync,
    S: Fn(&mut R, u128, usize, &IncrementalEvaluator) + Sync,
    M: Fn(R, R) -> R,
{
    let len = end.saturating_sub(start);
    let target = (rayon::current_num_threads() as u128 * 8).max(1);
    let chunk = (len / target).max(MIN_CHUNK);
    let chunks = len.div_ceil(chunk).max(1) as usize;
    let parts: Vec<R> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let a = start + c as u128 * chunk;
            let b = (a + chunk).min(end);
            let mut ev = evaluator.clone();
            let mut odo = CoeffOdometer::new(ctx.q2(), k, a, b);
            let mut acc = init();
            while let Some((idx, from)) = odo.advance() {
                let zeros = ev.update(ctx, odo.digits(), from);
                step(&mut acc, idx, zeros, &ev);
            }
            acc
        })
        .collect();
    parts.into_iter().reduce(merge).unwrap_or_else(init)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOptions {
    pub shard: Shard,
    /// Cap on forms × points for one run.
    pub eval_budget: u64,
    /// Maximizers kept (smallest indices first); the exact count is always reported.
    pub max_retained: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            shard: Shard::FULL,
            eval_budget: crate::forms::DEFAULT_EVAL_BUDGET,
            max_retained: DEFAULT_MAX_RETAINED,
        }
    }
}

/// Partial or complete result of an oracle scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub n: usize,
    pub d: u32,
    pub q2: u32,
    pub points: usize,
    pub total_forms: u128,
    /// Disjoint, sorted, coalesced index ranges covered so far.
    pub ranges: Vec<(u128, u128)>,
    pub forms_scanned: u128,
    pub max_count: Option<usize>,
    pub n_maximizers: u128,
    pub maximizers: Vec<u128>,
    pub max_retained: usize,
    /// Intersection count → number of forms.
    pub histogram: BTreeMap<usize, u128>,
    /// Largest count among forms not vanishing at the tracked vertex.
    pub vertex_avoiding_max: Option<usize>,
}

impl OracleResult {
    fn empty(n: usize, d: u32, q2: u32, points: usize, total_forms: u128, max_retained: usize) -> Self {
        OracleResult {
            n,
            d,
            q2,
            points,
            total_forms,
            ranges: Vec::new(),
            forms_scanned: 0,
            max_count: None,
            n_maximizers: 0,
            maximizers: Vec::new(),
            max_retained,
            histogram: BTreeMap::new(),
            vertex_avoiding_max: None,
        }
    }

    fn record(&mut self, idx: u128, count: usize) {
        self.forms_scanned += 1;
        *self.histogram.entry(count).or_insert(0) += 1;
        match self.max_count {
            Some(m) if count < m => {}
            Some(m) if count == m => {
                self.n_maximizers += 1;
                if self.maximizers.len() < self.max_retained {
                    self.maximizers.push(idx);
                }
            }
            _ => {
                self.max_count = Some(count);
                self.n_maximizers = 1;
                self.maximizers.clear();
                if self.max_retained > 0 {
                    self.maximizers.push(idx);
                }
            }
        }
    }

    pub fn is_complete(&self) -> bool {
        self.ranges == [(0, self.total_forms)]
    }

    /// The shard this result corresponds to, if its coverage is one.
    pub fn shard_label(&self) -> String {
        if self.is_complete() {
            return Shard::FULL.to_string();
        }
        self.ranges
            .iter()
            .map(|(a, b)| format!("[{a},{b})"))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Combines results over disjoint ranges of the same problem.
    pub fn merge(mut self, other: OracleResult) -> Result<OracleResult> {
        if (
            self.n,
            self.d,
            self.q2,
            self.points,
            self.total_forms,
            self.max_retained,
        ) != (
            other.n,
            other.d,
            other.q2,
            other.points,
            other.total_forms,
            other.max_retained,
        ) {
            return Err(Error::Parse("oracle results describe different problems".into()));
        }
        let mut ranges = self.ranges.clone();
        ranges.extend(other.ranges.iter().copied());
        ranges.sort();
        let mut coalesced: Vec<(u128, u128)> = Vec::new();
        for (a, b) in ranges {
            if a == b {
                continue;
            }
            match coalesced.last_mut() {
                Some(last) if a < last.1 => {
                    return Err(Error::Parse(format!("overlapping oracle ranges at {a}")));
                }
                Some(last) if a == last.1 => last.1 = b,
                _ => coalesced.push((a, b)),
            }
        }
        self.ranges = coalesced;
        self.forms_scanned += other.forms_scanned;
        for (c, k) in other.histogram {
            *self.histogram.entry(c).or_insert(0) += k;
        }
        self.vertex_avoiding_max = match (self.vertex_avoiding_max, other.vertex_avoiding_max) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        match (self.max_count, other.max_count) {
            (_, None) => {}
            (Some(a), Some(b)) if a > b => {}
            (Some(a), Some(b)) if a == b => {
                self.n_maximizers += other.n_maximizers;
                self.maximizers.extend(other.maximizers);
                self.maximizers.sort_unstable();
                self.maximizers.truncate(self.max_retained);
            }
            _ => {
                self.max_count = other.max_count;
                self.n_maximizers = other.n_maximizers;
                self.maximizers = other.maximizers;
            }
        }
        Ok(self)
    }

    /// The retained maximizers as forms.
    pub fn maximizer_forms(&self, ctx: &FieldCtx, basis: &Arc<MonomialBasis>) -> Result<Vec<HomogeneousForm>> {
        self.maximizers.iter().map(|&i| form_at_index(ctx, basis, i)).collect()
    }
}

/// The projective form with the given enumeration index.
pub fn form_at_index(ctx: &FieldCtx, basis: &Arc<MonomialBasis>, index: u128) -> Result<HomogeneousForm> {
    let total = projective_form_count(ctx.q2() as u64, basis.len());
    if index >= total {
        return Err(Error::OutOfRange(format!("form index {index} >= {total}")));
    }
    let mut odo = CoeffOdometer::new(ctx.q2(), basis.len(), index, index + 1);
    odo.advance();
    HomogeneousForm::from_codes(ctx, basis.clone(), odo.digits())
}

/// Exact maximum of `|pts ∩ V(F)|` over projective forms in the basis,
/// restricted to `opts.shard`. When `vertex` indexes a point of `pts`, the
/// maximum over forms not vanishing there is tracked as well.
pub fn max_intersection_over(
    ctx: &FieldCtx,
    pts: &[ProjPoint],
    vertex: Option<usize>,
    basis: &Arc<MonomialBasis>,
    opts: &OracleOptions,
) -> Result<OracleResult> {
    let k = basis.len();
    let total = projective_form_count(ctx.q2() as u64, k);
    let (start, end) = opts.shard.range(total);
    let evals = (end - start).saturating_mul(pts.len().max(1) as u128);
    if evals > opts.eval_budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "form evaluations",
            needed: evals,
            budget: opts.eval_budget,
        });
    }
    let ev = IncrementalEvaluator::from_points(ctx, basis, pts);
    let blank = OracleResult::empty(basis.n(), basis.d(), ctx.q2(), pts.len(), total, opts.max_retained);
    let init = || blank.clone();
    let mut out = parallel_scan(
        ctx,
        &ev,
        k,
        (start, end),
        init,
        |acc: &mut OracleResult, idx, zeros, ev| {
            acc.record(idx, zeros);
            if let Some(v) = vertex {
                if !ev.is_zero_at(v) {
                    acc.vertex_avoiding_max = Some(acc.vertex_avoiding_max.map_or(zeros, |m| m.max(zeros)));
                }
            }
        },
        |a, b| {
            let mut a = a;
            a.forms_scanned += b.forms_scanned;
            for (c, k) in b.histogram {
                *a.histogram.entry(c).or_insert(0) += k;
            }
            a.vertex_avoiding_max = match (a.vertex_avoiding_max, b.vertex_avoiding_max) {
                (Some(x), Some(y)) => Some(x.max(y)),
                (x, y) => x.or(y),
            };
            match (a.max_count, b.max_count) {
                (_, None) => {}
                (Some(x), Some(y)) if x > y => {}
                (Some(x), Some(y)) if x == y => {
                    a.n_maximizers += b.n_maximizers;
                    let room = a.max_retained - a.maximizers.len();
                    a.maximizers.extend(b.maximizers.into_iter().take(room));
                }
                _ => {
                    a.max_count = b.max_count;
                    a.n_maximizers = b.n_maximizers;
                    a.maximizers = b.maximizers;
                }
            }
            a
        },
    );
    if end > start {
        out.ranges = vec![(start, end)];
    }
    Ok(out)
}

/// Oracle over the rational points of a variety, tracking its vertex if any.
pub fn bruteforce_max_intersection(
    ctx: &FieldCtx,
    variety: &HermitianVariety,
    d: u32,
    opts: &OracleOptions,
) -> Result<OracleResult> {
    let pts = variety.points(ctx)?;
    let vertex = variety.vertex().and_then(|v| pts.binary_search(v).ok());
    let basis = crate::forms::monomial_basis(variety.n(), d);
    max_intersection_over(ctx, pts, vertex, &basis, opts)
}
