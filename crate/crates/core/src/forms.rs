//! Homogeneous forms of degree d in n+1 variables.
//!
//! Monomials are ordered graded-lex, descending: `x0^d, x0^{d-1}x1, …, xn^d`.
//! A projective form has first nonzero coefficient 1. The projective form
//! space is indexed by `(j, tail)` where `j` is the first nonzero position
//! and `tail` holds the later coefficients as base-q² digits, the last
//! coefficient least significant. Blocks are laid out in increasing `j`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::proj::{Hyperplane, ProjPoint};

/// Default cap on form evaluations (forms × points) per command.
pub const DEFAULT_EVAL_BUDGET: u64 = 500_000_000;

pub fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n.saturating_sub(k));
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    n: usize,
    d: u32,
    exponents: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, d: u32) -> Self {
        let mut exponents = Vec::new();
        let mut cur = vec![0u32; n + 1];
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(cur.clone());
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, out);
            }
        }
        rec(0, d, &mut cur, &mut exponents);
        let index = exponents.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        MonomialBasis { n, d, exponents, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn index_of(&self, exponent: &[u32]) -> Option<usize> {
        self.index.get(exponent).copied()
    }

    /// Values of every basis monomial at `x`.
    pub fn eval_monomials(&self, ctx: &FieldCtx, x: &[FieldElement]) -> Vec<FieldElement> {
        let powers: Vec<Vec<FieldElement>> = x
            .iter()
            .map(|&xi| {
                let mut v = Vec::with_capacity(self.d as usize + 1);
                let mut acc = FieldElement::ONE;
                for _ in 0..=self.d {
                    v.push(acc);
                    acc = ctx.mul(acc, xi);
                }
                v
            })
            .collect();
        self.exponents
            .iter()
            .map(|e| {
                e.iter()
                    .enumerate()
                    .fold(FieldElement::ONE, |acc, (i, &k)| ctx.mul(acc, powers[i][k as usize]))
            })
            .collect()
    }
}

pub fn monomial_basis(n: usize, d: u32) -> Arc<MonomialBasis> {
    Arc::new(MonomialBasis::new(n, d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousForm {
    basis: Arc<MonomialBasis>,
    coeffs: Vec<FieldElement>,
}

/// JSON shape of a form: `{n, d, coeffs}` with coefficient codes in basis order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormRecord {
    pub n: usize,
    pub d: u32,
    pub coeffs: Vec<u32>,
}

impl HomogeneousForm {
    pub fn new(basis: Arc<MonomialBasis>, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                got: coeffs.len(),
            });
        }
        Ok(HomogeneousForm { basis, coeffs })
    }

    pub fn from_codes(ctx: &FieldCtx, basis: Arc<MonomialBasis>, codes: &[u32]) -> Result<Self> {
        let coeffs = codes.iter().map(|&c| ctx.element(c)).collect::<Result<Vec<_>>>()?;
        HomogeneousForm::new(basis, coeffs)
    }

    /// The linear form of a hyperplane.
    pub fn linear(plane: &Hyperplane) -> Self {
        let basis = monomial_basis(plane.dim(), 1);
        HomogeneousForm {
            basis,
            coeffs: plane.coeffs().to_vec(),
        }
    }

    pub fn basis(&self) -> &Arc<MonomialBasis> {
        &self.basis
    }

    pub fn n(&self) -> usize {
        self.basis.n
    }

    pub fn d(&self) -> u32 {
        self.basis.d
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn codes(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.code()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, ctx: &FieldCtx, lambda: FieldElement) -> Self {
        HomogeneousForm {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|&c| ctx.mul(c, lambda)).collect(),
        }
    }

    /// Scales so the first nonzero coefficient is 1.
    pub fn normalized(&self, ctx: &FieldCtx) -> Result<Self> {
        let lead = *self.coeffs.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroVector)?;
        Ok(self.scale(ctx, ctx.inv(lead)?))
    }

    pub fn record(&self) -> FormRecord {
        FormRecord {
            n: self.n(),
            d: self.d(),
            coeffs: self.codes(),
        }
    }

    pub fn from_record(ctx: &FieldCtx, rec: &FormRecord) -> Result<Self> {
        HomogeneousForm::from_codes(ctx, monomial_basis(rec.n, rec.d), &rec.coeffs)
    }

    /// Position of this projective form in the enumeration order.
    pub fn projective_index(&self, ctx: &FieldCtx) -> Result<u128> {
        let f = self.normalized(ctx)?;
        let k = f.coeffs.len();
        let q2 = ctx.q2() as u128;
        let j = f
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("normalized form is nonzero");
        let offset: u128 = (0..j).map(|i| q2.pow((k - 1 - i) as u32)).sum();
        let tail = f.coeffs[j + 1..]
            .iter()
            .fold(0u128, |acc, c| acc * q2 + c.code() as u128);
        Ok(offset + tail)
    }
}

pub fn evaluate_form(ctx: &FieldCtx, f: &HomogeneousForm, x: &ProjPoint) -> Result<FieldElement> {
    if x.dim() != f.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            got: x.dim(),
        });
    }
    let vals = f.basis.eval_monomials(ctx, x.coords());
    Ok(dot(ctx, &f.coeffs, &vals))
}

fn dot(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter()
        .zip(b)
        .fold(FieldElement::ZERO, |acc, (&x, &y)| ctx.add(acc, ctx.mul(x, y)))
}

pub fn intersection_count(ctx: &FieldCtx, f: &HomogeneousForm, pts: &[ProjPoint]) -> usize {
    pts.iter()
        .filter(|x| evaluate_form(ctx, f, x).map(|v| v.is_zero()).unwrap_or(false))
        .count()
}

/// Expands `∏ (Σ u_ij x_j)` in the degree-d monomial basis.
pub fn product_of_hyperplanes(ctx: &FieldCtx, duals: &[Hyperplane]) -> Result<HomogeneousForm> {
    let first = duals.first().ok_or(Error::EmptyHyperplaneList)?;
    let n = first.dim();
    let mut poly: HashMap<Vec<u32>, FieldElement> = HashMap::from([(vec![0; n + 1], FieldElement::ONE)]);
    for h in duals {
        if h.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: h.dim(),
            });
        }
        let mut next: HashMap<Vec<u32>, FieldElement> = HashMap::new();
        for (e, &c) in &poly {
            for (j, &u) in h.coeffs().iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                let mut e2 = e.clone();
                e2[j] += 1;
                let slot = next.entry(e2).or_insert(FieldElement::ZERO);
                *slot = ctx.add(*slot, ctx.mul(c, u));
            }
        }
        poly = next;
    }
    let basis = monomial_basis(n, duals.len() as u32);
    let mut coeffs = vec![FieldElement::ZERO; basis.len()];
    for (e, c) in poly {
        coeffs[basis.index_of(&e).expect("degree matches basis")] = c;
    }
    HomogeneousForm::new(basis, coeffs)
}

/// Number of projective forms, `((q²)^k − 1)/(q² − 1)`, saturating at `u128::MAX`.
pub fn projective_form_count(q2: u64, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for i in 0..k {
        if i > 0 {
            term = term.saturating_mul(q2 as u128);
        }
        total = total.saturating_add(term);
    }
    total
}

/// A contiguous block `[index·N/total, (index+1)·N/total)` of an index space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shard {
    pub index: u64,
    pub total: u64,
}

impl Shard {
    pub const FULL: Shard = Shard { index: 0, total: 1 };

    pub fn new(index: u64, total: u64) -> Result<Self> {
        if total == 0 || index >= total {
            return Err(Error::InvalidShard { index, total });
        }
        Ok(Shard { index, total })
    }

    pub fn range(&self, len: u128) -> (u128, u128) {
        let t = self.total as u128;
        let (a, b) = (len / t, len % t);
        // i·len/t without forming i·len.
        let at = |i: u128| i * a + i * b / t;
        (at(self.index as u128), at(self.index as u128 + 1))
    }

    pub fn is_full(&self) -> bool {
        self.total == 1
    }
}

impl std::str::FromStr for Shard {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("shard `{s}` is not of the form i/t")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("shard `{s}`: {e}")))
        };
        Shard::new(parse(a)?, parse(b)?)
    }
}

impl std::fmt::Display for Shard {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.index, self.total)
    }
}

/// Walks coefficient vectors of projective forms over an index range.
///
/// `advance` reports the leftmost position whose digit changed, so callers
/// can refresh only the dependent part of cached partial sums.
#[derive(Debug, Clone)]
pub struct CoeffOdometer {
    q2: u32,
    digits: Vec<u32>,
    lead: usize,
    next_index: u128,
    end: u128,
    started: bool,
}

impl CoeffOdometer {
    pub fn new(q2: u32, k: usize, start: u128, end: u128) -> Self {
        let total = projective_form_count(q2 as u64, k);
        let end = end.min(total);
        let mut digits = vec![0u32; k];
        let mut lead = 0;
        if start < end {
            let mut rem = start;
            while rem >= (q2 as u128).pow((k - 1 - lead) as u32) {
                rem -= (q2 as u128).pow((k - 1 - lead) as u32);
                lead += 1;
            }
            digits[lead] = 1;
            for pos in (lead + 1..k).rev() {
                digits[pos] = (rem % q2 as u128) as u32;
                rem /= q2 as u128;
            }
        }
        CoeffOdometer {
            q2,
            digits,
            lead,
            next_index: start,
            end,
            started: false,
        }
    }

    /// Moves to the next form; returns its index and the first changed position.
    pub fn advance(&mut self) -> Option<(u128, usize)> {
        if self.next_index >= self.end {
            return None;
        }
        let idx = self.next_index;
        self.next_index += 1;
        if !self.started {
            self.started = true;
            return Some((idx, 0));
        }
        let k = self.digits.len();
        let mut pos = k - 1;
        loop {
            if pos == self.lead {
                // tail wrapped: next block
                self.digits[self.lead] = 0;
                self.lead += 1;
                self.digits[self.lead] = 1;
                return Some((idx, self.lead - 1));
            }
            self.digits[pos] += 1;
            if self.digits[pos] < self.q2 {
                return Some((idx, pos));
            }
            self.digits[pos] = 0;
            pos -= 1;
        }
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }
}

/// Zero counts of `Σ c_i v_i(x)` over a fixed point set, maintained with
/// per-point prefix sums so that a change at position `j` costs `k − j`.
#[derive(Debug, Clone)]
pub struct IncrementalEvaluator {
    k: usize,
    values: Vec<FieldElement>,
    prefix: Vec<FieldElement>,
    points: usize,
}

impl IncrementalEvaluator {
    /// `values[p]` holds the k position values at point p.
    pub fn new(values: &[Vec<FieldElement>], k: usize) -> Self {
        let points = values.len();
        let flat = values.iter().flat_map(|v| v.iter().copied()).collect();
        IncrementalEvaluator {
            k,
            values: flat,
            prefix: vec![FieldElement::ZERO; points * (k + 1)],
            points,
        }
    }

    pub fn from_points(ctx: &FieldCtx, basis: &MonomialBasis, pts: &[ProjPoint]) -> Self {
        let vals: Vec<Vec<FieldElement>> = pts.iter().map(|x| basis.eval_monomials(ctx, x.coords())).collect();
        IncrementalEvaluator::new(&vals, basis.len())
    }

    /// Updates prefix sums from position `from` and returns the zero count.
    pub fn update(&mut self, ctx: &FieldCtx, coeffs: &[u32], from: usize) -> usize {
        let k = self.k;
        let mut zeros = 0;
        for p in 0..self.points {
            let vals = &self.values[p * k..(p + 1) * k];
            let pre = &mut self.prefix[p * (k + 1)..(p + 1) * (k + 1)];
            for pos in from..k {
                let c = FieldElement(coeffs[pos]);
                pre[pos + 1] = if c.is_zero() {
                    pre[pos]
                } else {
                    ctx.add(pre[pos], ctx.mul(c, vals[pos]))
                };
            }
            if pre[k].is_zero() {
                zeros += 1;
            }
        }
        zeros
    }

    /// Whether point `p` is a zero of the current combination.
    pub fn is_zero_at(&self, p: usize) -> bool {
        self.prefix[p * (self.k + 1) + self.k].is_zero()
    }

    pub fn points(&self) -> usize {
        self.points
    }
}

/// Iterator over projective forms of one shard.
#[derive(Debug, Clone)]
pub struct FormEnumerator {
    basis: Arc<MonomialBasis>,
    odo: CoeffOdometer,
}

impl Iterator for FormEnumerator {
    type Item = HomogeneousForm;
    fn next(&mut self) -> Option<HomogeneousForm> {
        self.odo.advance()?;
        let coeffs = self.odo.digits().iter().map(|&c| FieldElement(c)).collect();
        Some(HomogeneousForm {
            basis: self.basis.clone(),
            coeffs,
        })
    }
}

/// Every projective form of the basis in the given shard, refusing shards
/// larger than `budget` forms.
pub fn enumerate_forms_projective(
    ctx: &FieldCtx,
    basis: &Arc<MonomialBasis>,
    shard: Shard,
    budget: u64,
) -> Result<FormEnumerator> {
    let total = projective_form_count(ctx.q2() as u64, basis.len());
    let (start, end) = shard.range(total);
    if end - start > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "projective forms",
            needed: end - start,
            budget,
        });
    }
    Ok(FormEnumerator {
        basis: basis.clone(),
        odo: CoeffOdometer::new(ctx.q2(), basis.len(), start, end),
    })
}
