//! `params`, `oracle`, `merge`, `construct` and `export`.

use std::collections::BTreeSet;
use std::path::PathBuf;

use hermcodes_core::bounds::{cone_bound, nondegenerate_bound, BoundValue, ConjecturePolicy};
use hermcodes_core::codes::{
    build_code, min_distance, theoretical_parameters, weight, weight_distribution, CodeParameters, DminKind,
    DminStatus, MinDistanceMode, TheoreticalParameters,
};
use hermcodes_core::export::{write_generator, write_points_csv, write_weights_csv};
use hermcodes_core::extremal::{check_cone_with_vertex, check_union_of_cone_lines, construct_extremal, WitnessKind};
use hermcodes_core::forms::{evaluate_form, monomial_basis, FormRecord};
use hermcodes_core::oracle::{bruteforce_max_intersection, OracleOptions, OracleResult};
use hermcodes_core::{make_field, make_standard_cone, Error, FieldCtx, HermitianVariety};
use serde::{Deserialize, Serialize};

use crate::config::{ExportKind, RunConfig, VarietyChoice};
use crate::{CliError, Exit, Outcome, SCHEMA};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchFlags {
    pub m: bool,
    pub k: Option<bool>,
    pub dmin: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsReport {
    pub schema: u32,
    pub command: String,
    pub p: u32,
    pub e: u32,
    pub q: u32,
    pub n: usize,
    pub d: u32,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub dmin: Option<usize>,
    pub dmin_status: Option<DminStatus>,
    pub examined: Option<u128>,
    pub theoretical: TheoreticalParameters,
    pub match_flags: MatchFlags,
    #[serde(rename = "match")]
    pub matches: bool,
    pub notes: Vec<String>,
}

struct Computed {
    m: Option<usize>,
    k: Option<usize>,
    params: Option<CodeParameters>,
}

fn compute_params(
    ctx: &FieldCtx,
    n: usize,
    d: u32,
    cfg: &RunConfig,
    notes: &mut Vec<String>,
) -> Result<Computed, CliError> {
    let cone = make_standard_cone(ctx, n);
    let code = match build_code(ctx, &cone, d) {
        Ok(c) => c,
        Err(e @ Error::BudgetExceeded { .. }) => {
            notes.push(format!("code not built: {e}"));
            return Ok(Computed {
                m: None,
                k: None,
                params: None,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let m = code.length();
    let k = hermcodes_core::codes::code_dimension(ctx, &code);
    let params = match min_distance(ctx, &code, &MinDistanceMode::ExhaustiveMessages, cfg.class_budget) {
        Ok(p) => Some(p),
        Err(Error::BudgetExceeded { needed, budget, .. }) => {
            let needed = if needed == u128::MAX {
                "more than 2^128".to_string()
            } else {
                needed.to_string()
            };
            notes.push(format!(
                "exhaustive minimum distance refused: {needed} scalar classes exceed the class budget {budget}"
            ));
            if (2..=4).contains(&n) {
                let w = construct_extremal(ctx, n, d)?;
                notes.push(format!("witness: {}", kind_name(w.kind)));
                Some(min_distance(
                    ctx,
                    &code,
                    &MinDistanceMode::WitnessOnly(vec![w.form]),
                    cfg.class_budget,
                )?)
            } else {
                notes.push("no witness construction for this dimension".into());
                None
            }
        }
        Err(e) => return Err(e.into()),
    };
    Ok(Computed {
        m: Some(m),
        k: Some(k),
        params,
    })
}

fn kind_name(kind: WitnessKind) -> String {
    serde_json::to_value(kind)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn dmin_agrees(computed: &CodeParameters, theory: &TheoreticalParameters) -> Option<bool> {
    let t = theory.dmin?;
    let c = computed.dmin as u128;
    // A witness weight is at least the true dmin, so both statuses compare the same way.
    match theory.kind {
        DminKind::Exact => Some(c == t),
        DminKind::LowerBound => Some(c >= t),
        DminKind::Unknown => None,
    }
}

pub fn cmd_params(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (n, d) = (cfg.require_n()?, cfg.require_d()?);
    let ctx = make_field(cfg.p, cfg.e)?;
    let theory = theoretical_parameters(n as u32, d, ctx.q() as u64, cfg.policy())?;
    let mut notes = Vec::new();
    let computed = compute_params(&ctx, n, d, cfg, &mut notes)?;
    let flags = MatchFlags {
        m: computed.m.is_none_or(|m| m as u128 == theory.m),
        k: computed.k.map(|k| k as u128 == theory.k),
        dmin: computed.params.as_ref().and_then(|p| dmin_agrees(p, &theory)),
    };
    let matches = flags.m && flags.k != Some(false) && flags.dmin != Some(false);
    let exit = if !matches {
        Exit::Failure
    } else if theory.kind == DminKind::Unknown {
        Exit::Unknown
    } else if computed.params.is_none() {
        Exit::Budget
    } else {
        Exit::Pass
    };
    let report = ParamsReport {
        schema: SCHEMA,
        command: "params".into(),
        p: cfg.p,
        e: cfg.e,
        q: ctx.q(),
        n,
        d,
        m: computed.m,
        k: computed.k,
        dmin: computed.params.as_ref().map(|p| p.dmin),
        dmin_status: computed.params.as_ref().map(|p| p.dmin_status),
        examined: computed.params.as_ref().map(|p| p.examined),
        theoretical: theory,
        match_flags: flags,
        matches,
        notes,
    };
    Ok(Outcome::json(&report, exit))
}

/// Structural checks on the retained maximizers of a complete cone scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Characterization {
    pub checked: usize,
    pub all_maximizers_checked: bool,
    pub union_of_generator_lines: bool,
    pub cone_with_vertex: bool,
    /// Distinct numbers of generator lines seen among maximizers.
    pub generator_lines: Vec<usize>,
}

impl Characterization {
    pub fn passed(&self) -> bool {
        self.union_of_generator_lines && self.cone_with_vertex
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub schema: u32,
    pub command: String,
    pub p: u32,
    pub e: u32,
    pub n: usize,
    pub d: u32,
    pub variety: VarietyChoice,
    pub assume_conjecture: bool,
    pub shard: String,
    pub complete: bool,
    pub points: usize,
    pub total_forms: u128,
    pub forms_scanned: u128,
    pub max_count: Option<usize>,
    pub bound: Option<BoundValue>,
    pub attains_bound: Option<bool>,
    pub n_maximizers: u128,
    pub maximizers: Vec<Vec<u32>>,
    pub histogram: Vec<(usize, u128)>,
    pub vertex_avoiding_max: Option<usize>,
    pub characterization: Option<Characterization>,
    pub result: OracleResult,
}

impl OracleReport {
    pub fn exit(&self) -> Exit {
        if !self.complete {
            return Exit::Pass;
        }
        if self.attains_bound == Some(false) || self.characterization.as_ref().is_some_and(|c| !c.passed()) {
            return Exit::Failure;
        }
        match self.bound.as_ref().and_then(|b| b.value) {
            Some(_) => Exit::Pass,
            None => Exit::Unknown,
        }
    }
}

fn variety_for(ctx: &FieldCtx, n: usize, choice: VarietyChoice) -> HermitianVariety {
    match choice {
        VarietyChoice::Cone => make_standard_cone(ctx, n),
        VarietyChoice::Nondegenerate => HermitianVariety::nondegenerate(ctx, n),
    }
}

fn policy(assume: bool) -> ConjecturePolicy {
    if assume {
        ConjecturePolicy::Assume
    } else {
        ConjecturePolicy::Strict
    }
}

fn characterize(
    ctx: &FieldCtx,
    variety: &HermitianVariety,
    result: &OracleResult,
) -> Result<Characterization, CliError> {
    let basis = monomial_basis(result.n, result.d);
    let vertex = variety.vertex().expect("cone has a vertex");
    let mut out = Characterization {
        checked: 0,
        all_maximizers_checked: result.maximizers.len() as u128 == result.n_maximizers,
        union_of_generator_lines: true,
        cone_with_vertex: true,
        generator_lines: Vec::new(),
    };
    let mut lines = BTreeSet::new();
    for form in result.maximizer_forms(ctx, &basis)? {
        let (union, count) = check_union_of_cone_lines(ctx, variety, &form)?;
        out.union_of_generator_lines &= union;
        out.cone_with_vertex &= check_cone_with_vertex(ctx, &form, vertex)?;
        lines.insert(count);
        out.checked += 1;
    }
    out.generator_lines = lines.into_iter().collect();
    Ok(out)
}

/// Builds the report for a result; sharded, merged and unsharded runs over
/// the same forms go through here, so equal results give equal bytes.
pub fn oracle_report(
    ctx: &FieldCtx,
    variety_choice: VarietyChoice,
    assume_conjecture: bool,
    result: OracleResult,
) -> Result<OracleReport, CliError> {
    let (n, d) = (result.n, result.d);
    let q = ctx.q() as u64;
    let variety = variety_for(ctx, n, variety_choice);
    let bound = match variety_choice {
        VarietyChoice::Cone => cone_bound(n as u32, d, q, policy(assume_conjecture)),
        VarietyChoice::Nondegenerate => nondegenerate_bound(n as u32, d, q, policy(assume_conjecture)),
    }
    .ok();
    let complete = result.is_complete();
    let attains_bound = match (complete, result.max_count, bound.as_ref().and_then(|b| b.value)) {
        (true, Some(max), Some(b)) => Some(max as u128 == b),
        _ => None,
    };
    let characterization = if complete && variety_choice == VarietyChoice::Cone && result.max_count.is_some() {
        Some(characterize(ctx, &variety, &result)?)
    } else {
        None
    };
    let basis = monomial_basis(n, d);
    let maximizers = result.maximizer_forms(ctx, &basis)?.iter().map(|f| f.codes()).collect();
    Ok(OracleReport {
        schema: SCHEMA,
        command: "oracle".into(),
        p: ctx.p(),
        e: ctx.e(),
        n,
        d,
        variety: variety_choice,
        assume_conjecture,
        shard: result.shard_label(),
        complete,
        points: result.points,
        total_forms: result.total_forms,
        forms_scanned: result.forms_scanned,
        max_count: result.max_count,
        bound,
        attains_bound,
        n_maximizers: result.n_maximizers,
        maximizers,
        histogram: result.histogram.iter().map(|(&c, &k)| (c, k)).collect(),
        vertex_avoiding_max: result.vertex_avoiding_max,
        characterization,
        result,
    })
}

pub fn cmd_oracle(cfg: &RunConfig, variety_choice: VarietyChoice) -> Result<Outcome, CliError> {
    let (n, d) = (cfg.require_n()?, cfg.require_d()?);
    let ctx = make_field(cfg.p, cfg.e)?;
    let variety = variety_for(&ctx, n, variety_choice);
    let opts = OracleOptions {
        shard: cfg.shard,
        eval_budget: cfg.eval_budget,
        max_retained: cfg.max_retained,
    };
    let result = bruteforce_max_intersection(&ctx, &variety, d, &opts)?;
    let report = oracle_report(&ctx, variety_choice, cfg.assume_conjecture, result)?;
    let exit = report.exit();
    Ok(Outcome::json(&report, exit))
}

pub fn cmd_merge(_cfg: &RunConfig, paths: &[PathBuf]) -> Result<Outcome, CliError> {
    let mut reports = Vec::with_capacity(paths.len());
    for path in paths {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
        let report: OracleReport = serde_json::from_str(&text)
            .map_err(|e| CliError::invalid(format!("{}: not an oracle report: {e}", path.display())))?;
        reports.push(report);
    }
    let first = reports.first().ok_or_else(|| CliError::invalid("nothing to merge"))?;
    let key = |r: &OracleReport| (r.p, r.e, r.n, r.d, r.variety, r.assume_conjecture);
    let header = key(first);
    if let Some(bad) = reports.iter().position(|r| key(r) != header) {
        return Err(CliError::invalid(format!(
            "{} was produced with different settings than {}",
            paths[bad].display(),
            paths[0].display()
        )));
    }
    let (p, e, _, _, variety, assume) = header;
    let ctx = make_field(p, e)?;
    let mut results = reports.into_iter().map(|r| r.result);
    let first = results.next().expect("nonempty");
    let merged = results.try_fold(first, |acc, r| acc.merge(r))?;
    let report = oracle_report(&ctx, variety, assume, merged)?;
    let exit = report.exit();
    Ok(Outcome::json(&report, exit))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructReport {
    pub schema: u32,
    pub command: String,
    pub p: u32,
    pub e: u32,
    pub n: usize,
    pub d: u32,
    pub kind: WitnessKind,
    pub form: FormRecord,
    pub hyperplanes: Vec<Vec<u32>>,
    pub count: usize,
    pub predicted_count: usize,
    pub m: usize,
    pub codeword_weight: usize,
    pub theoretical_dmin: Option<u128>,
    pub weight_matches: Option<bool>,
    /// Indices into the sorted cone points where the codeword vanishes.
    pub zero_positions: Vec<usize>,
}

pub fn cmd_construct(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (n, d) = (cfg.require_n()?, cfg.require_d()?);
    if !(2..=4).contains(&n) {
        return Err(CliError::invalid(format!("construct covers n = 2, 3, 4; got {n}")));
    }
    let ctx = make_field(cfg.p, cfg.e)?;
    let witness = construct_extremal(&ctx, n, d)?;
    let cone = make_standard_cone(&ctx, n);
    let pts = cone.points(&ctx)?;
    let mut zero_positions = Vec::new();
    for (i, x) in pts.iter().enumerate() {
        if evaluate_form(&ctx, &witness.form, x)?.is_zero() {
            zero_positions.push(i);
        }
    }
    let word: Vec<_> = pts
        .iter()
        .map(|x| evaluate_form(&ctx, &witness.form, x))
        .collect::<Result<_, _>>()?;
    let codeword_weight = weight(&word);
    let theory = theoretical_parameters(n as u32, d, ctx.q() as u64, cfg.policy())?;
    let weight_matches = match theory.kind {
        DminKind::Exact => theory.dmin.map(|t| t == codeword_weight as u128),
        _ => None,
    };
    let count = zero_positions.len();
    let exit = if count != witness.predicted_count || weight_matches == Some(false) {
        Exit::Failure
    } else {
        Exit::Pass
    };
    let report = ConstructReport {
        schema: SCHEMA,
        command: "construct".into(),
        p: cfg.p,
        e: cfg.e,
        n,
        d,
        kind: witness.kind,
        form: witness.form.record(),
        hyperplanes: witness.hyperplanes.iter().map(|h| h.dual().codes()).collect(),
        count,
        predicted_count: witness.predicted_count,
        m: pts.len(),
        codeword_weight,
        theoretical_dmin: theory.dmin,
        weight_matches,
        zero_positions,
    };
    Ok(Outcome::json(&report, exit))
}

pub fn cmd_export(cfg: &RunConfig, what: ExportKind) -> Result<Outcome, CliError> {
    let n = cfg.require_n()?;
    let ctx = make_field(cfg.p, cfg.e)?;
    let cone = make_standard_cone(&ctx, n);
    let mut buf = Vec::new();
    match what {
        ExportKind::Points => write_points_csv(&ctx, n, cone.points(&ctx)?, &mut buf)?,
        ExportKind::Generator => {
            let code = build_code(&ctx, &cone, cfg.require_d()?)?;
            write_generator(&ctx, &code, &mut buf)?;
        }
        ExportKind::Weights => {
            let code = build_code(&ctx, &cone, cfg.require_d()?)?;
            write_weights_csv(&weight_distribution(&ctx, &code, cfg.class_budget)?, &mut buf)?;
        }
    }
    let body = String::from_utf8(buf).expect("exports are ASCII");
    Ok(Outcome { exit: Exit::Pass, body })
}
