//! Functional codes: evaluations of degree-d forms at the rational points
//! of a Hermitian variety.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bounds::{cone_points, rank_n_bound, ConjecturePolicy, Provenance};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::forms::{binomial, monomial_basis, projective_form_count, HomogeneousForm, IncrementalEvaluator};
use crate::hermitian::{HermitianVariety, VarietyDescriptor};
use crate::linalg::Matrix;
use crate::oracle::parallel_scan;
use crate::proj::ProjPoint;

/// Default cap on scalar classes for exhaustive minimum-distance searches.
pub const DEFAULT_CLASS_BUDGET: u64 = 2_000_000;

/// Generator matrix with one row per monomial and one column per point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalCode {
    pub n: usize,
    pub d: u32,
    pub q: u32,
    pub generator: Matrix,
    pub points: Vec<ProjPoint>,
    pub variety: VarietyDescriptor,
}

impl FunctionalCode {
    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    /// The codeword of a form of matching degree.
    pub fn codeword(&self, ctx: &FieldCtx, form: &HomogeneousForm) -> Result<Vec<FieldElement>> {
        if (form.n(), form.d()) != (self.n, self.d) {
            return Err(Error::DimensionMismatch {
                expected: self.generator.rows(),
                got: form.coeffs().len(),
            });
        }
        self.generator.transpose().mul_vec(ctx, form.coeffs())
    }
}

pub fn build_code(ctx: &FieldCtx, variety: &HermitianVariety, d: u32) -> Result<FunctionalCode> {
    if d == 0 {
        return Err(Error::OutOfRange("degree must be at least 1".into()));
    }
    let points = variety.points(ctx)?.to_vec();
    let basis = monomial_basis(variety.n(), d);
    let mut generator = Matrix::zeros(basis.len(), points.len());
    for (j, x) in points.iter().enumerate() {
        for (i, v) in basis.eval_monomials(ctx, x.coords()).into_iter().enumerate() {
            generator[(i, j)] = v;
        }
    }
    Ok(FunctionalCode {
        n: variety.n(),
        d,
        q: ctx.q(),
        generator,
        points,
        variety: variety.descriptor(ctx),
    })
}

pub fn code_dimension(ctx: &FieldCtx, code: &FunctionalCode) -> usize {
    code.generator.rank(ctx)
}

pub fn weight(word: &[FieldElement]) -> usize {
    word.iter().filter(|c| !c.is_zero()).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DminStatus {
    Exact,
    WitnessUpperBoundOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinDistanceMode {
    /// Scan codewords up to scalars through a reduced basis of the code.
    ExhaustiveMessages,
    /// Scan projective forms and take `m − max |V(F)|`.
    ExhaustiveForms,
    /// Weights of the supplied forms only.
    WitnessOnly(Vec<HomogeneousForm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParameters {
    pub m: usize,
    pub k: usize,
    pub dmin: usize,
    pub dmin_status: DminStatus,
    /// Scalar classes or witnesses examined.
    pub examined: u128,
}

struct WeightScan {
    min: Option<usize>,
    histogram: BTreeMap<usize, u128>,
    examined: u128,
}

/// Scans every nonzero combination of `rows` up to scalars.
fn scan_weights(ctx: &FieldCtx, rows: &Matrix, budget: u64) -> Result<WeightScan> {
    let k = rows.rows();
    let classes = projective_form_count(ctx.q2() as u64, k);
    if classes > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "scalar classes",
            needed: classes,
            budget,
        });
    }
    let m = rows.cols();
    let columns: Vec<Vec<FieldElement>> = (0..m).map(|j| rows.column(j)).collect();
    let ev = IncrementalEvaluator::new(&columns, k);
    let init = || WeightScan {
        min: None,
        histogram: BTreeMap::new(),
        examined: 0,
    };
    Ok(parallel_scan(
        ctx,
        &ev,
        k,
        (0, classes),
        init,
        |acc, _, zeros, _| {
            acc.examined += 1;
            let w = m - zeros;
            if w == 0 {
                return;
            }
            *acc.histogram.entry(w).or_insert(0) += 1;
            acc.min = Some(acc.min.map_or(w, |x| x.min(w)));
        },
        |mut a, b| {
            a.examined += b.examined;
            for (w, c) in b.histogram {
                *a.histogram.entry(w).or_insert(0) += c;
            }
            a.min = match (a.min, b.min) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            };
            a
        },
    ))
}

fn reduced_rows(ctx: &FieldCtx, code: &FunctionalCode) -> Matrix {
    let mut g = code.generator.clone();
    let rank = g.row_reduce(ctx).len();
    Matrix::from_rows(g.to_rows().into_iter().take(rank).collect()).expect("rows share a width")
}

pub fn min_distance(
    ctx: &FieldCtx,
    code: &FunctionalCode,
    mode: &MinDistanceMode,
    budget: u64,
) -> Result<CodeParameters> {
    let m = code.length();
    let k = code_dimension(ctx, code);
    let (scan, status) = match mode {
        MinDistanceMode::ExhaustiveMessages => {
            (scan_weights(ctx, &reduced_rows(ctx, code), budget)?, DminStatus::Exact)
        }
        MinDistanceMode::ExhaustiveForms => (scan_weights(ctx, &code.generator, budget)?, DminStatus::Exact),
        MinDistanceMode::WitnessOnly(forms) => {
            let mut min = None;
            for f in forms {
                let w = weight(&code.codeword(ctx, f)?);
                if w > 0 {
                    min = Some(min.map_or(w, |x: usize| x.min(w)));
                }
            }
            let scan = WeightScan {
                min,
                histogram: BTreeMap::new(),
                examined: forms.len() as u128,
            };
            (scan, DminStatus::WitnessUpperBoundOnly)
        }
    };
    let dmin = scan
        .min
        .ok_or_else(|| Error::OutOfRange("no nonzero codeword was examined".into()))?;
    Ok(CodeParameters {
        m,
        k,
        dmin,
        dmin_status: status,
        examined: scan.examined,
    })
}

/// Number of codewords of each weight, counted up to nonzero scalars.
pub fn weight_distribution(ctx: &FieldCtx, code: &FunctionalCode, budget: u64) -> Result<BTreeMap<usize, u128>> {
    Ok(scan_weights(ctx, &reduced_rows(ctx, code), budget)?.histogram)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DminKind {
    Exact,
    LowerBound,
    Unknown,
}

/// Closed-form parameters of the code of degree-d forms on the rank-n cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoreticalParameters {
    pub m: u128,
    pub k: u128,
    pub dmin: Option<u128>,
    pub kind: DminKind,
    pub provenance: Provenance,
}

pub fn theoretical_parameters(n: u32, d: u32, q: u64, policy: ConjecturePolicy) -> Result<TheoreticalParameters> {
    if d == 0 {
        return Err(Error::OutOfRange("degree must be at least 1".into()));
    }
    if d as u64 > q {
        return Err(Error::DegreeTooLarge { d, q });
    }
    if n < 2 {
        return Err(Error::OutOfRange(format!("code parameters need n >= 2, got {n}")));
    }
    let m = cone_points(n, q)?;
    let k = binomial((n + d) as u64, d as u64);
    let (qq, dd) = (q as u128, d as u128);
    let exact = match n {
        2 => Some(qq.pow(3) - (dd - 1) * qq * qq),
        3 => Some(qq * qq * (qq.pow(3) - dd * qq - (dd - 1))),
        4 => Some(qq.pow(7) - (dd - 1) * qq.pow(3) * (qq * qq + qq - 1)),
        _ => None,
    };
    if let Some(dmin) = exact {
        return Ok(TheoreticalParameters {
            m,
            k,
            dmin: Some(dmin),
            kind: DminKind::Exact,
            provenance: Provenance::Theorem,
        });
    }
    let bound = rank_n_bound(n, d, q, policy)?;
    Ok(TheoreticalParameters {
        m,
        k,
        dmin: bound.value.map(|b| m - b),
        kind: if bound.value.is_some() {
            DminKind::LowerBound
        } else {
            DminKind::Unknown
        },
        provenance: bound.provenance,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoryTriple {
    pub m: u128,
    pub k: u128,
    pub dmin: Option<u128>,
}

/// `{m, k, dmin, dmin_status, theoretical: {m, k, dmin}, match}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParametersReport {
    pub m: usize,
    pub k: usize,
    pub dmin: usize,
    pub dmin_status: DminStatus,
    pub theoretical: TheoryTriple,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl ParametersReport {
    pub fn new(computed: &CodeParameters, theory: &TheoreticalParameters) -> Self {
        let dmin_ok = match (theory.kind, theory.dmin) {
            (DminKind::Exact, Some(t)) => computed.dmin as u128 == t,
            (DminKind::LowerBound, Some(t)) => computed.dmin as u128 >= t,
            _ => false,
        };
        ParametersReport {
            m: computed.m,
            k: computed.k,
            dmin: computed.dmin,
            dmin_status: computed.dmin_status,
            theoretical: TheoryTriple {
                m: theory.m,
                k: theory.k,
                dmin: theory.dmin,
            },
            matches: computed.m as u128 == theory.m && computed.k as u128 == theory.k && dmin_ok,
        }
    }
}
