//! `bounds`: the closed-form volume bounds, for one dimension or a sweep.

use covercert_core::bounds::{
    borsuk_piece_bound, choose_alpha, ln_theorem_lower_bound, main_inequality, proof_pipeline_budget,
    thickening_budget, BorsukReport, BoundReport, ThickeningBudget,
};
use covercert_core::geom_core::jung_radius;
use serde::Serialize;

use crate::args::BoundsArgs;
use crate::output::canonical_json;
use crate::{CliError, CliResult, Outcome};

#[derive(Debug, Serialize)]
pub struct DimensionReport {
    pub config: BoundsArgs,
    pub n: usize,
    pub r_n: f64,
    pub ln_theorem_lower_bound: f64,
    pub theorem_lower_bound: f64,
    pub choose_alpha: BoundReport,
    pub main_inequality: Option<BoundReport>,
    pub pipeline: BoundReport,
    pub borsuk: BorsukReport,
    pub thickening: ThickeningBudget,
}

#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub r_n: f64,
    pub bound_log: f64,
    pub borsuk_log: f64,
    pub borsuk_vacuous: bool,
    pub alpha: f64,
    pub r: f64,
    pub ln_p_lower: Option<f64>,
    pub cos_alpha_ratio: f64,
    pub c1_ratio: f64,
    pub lambda_above_threshold: bool,
    pub ln_diameter_bound: f64,
    pub family_margin: f64,
}

fn report_for(n: usize, args: &BoundsArgs) -> CliResult<DimensionReport> {
    let ln_bound = ln_theorem_lower_bound(n)?;
    let main = match (args.r, args.alpha) {
        (Some(r), Some(a)) => Some(main_inequality(n, r, a)?),
        _ => None,
    };
    Ok(DimensionReport {
        config: args.clone(),
        n,
        r_n: jung_radius(n)?,
        ln_theorem_lower_bound: ln_bound,
        theorem_lower_bound: ln_bound.exp(),
        choose_alpha: choose_alpha(n, args.lambda)?,
        main_inequality: main,
        pipeline: proof_pipeline_budget(n)?,
        borsuk: borsuk_piece_bound(n)?,
        thickening: thickening_budget(n)?,
    })
}

fn row_for(n: usize, lambda: f64) -> CliResult<SweepRow> {
    let c = choose_alpha(n, lambda)?;
    let pipe = proof_pipeline_budget(n)?;
    Ok(SweepRow {
        n,
        r_n: jung_radius(n)?,
        bound_log: ln_theorem_lower_bound(n)?,
        borsuk_log: borsuk_piece_bound(n)?.ln_bound,
        borsuk_vacuous: borsuk_piece_bound(n)?.vacuous,
        alpha: c.alpha.unwrap_or(f64::NAN),
        r: c.r.unwrap_or(f64::NAN),
        ln_p_lower: c.quantities.get("ln_p_lower").copied(),
        cos_alpha_ratio: c.get("cos_alpha_ratio"),
        c1_ratio: c.get("c1_ratio"),
        lambda_above_threshold: c.checks.get("lambda_above_threshold").copied().unwrap_or(false),
        ln_diameter_bound: pipe.get("ln_diameter_bound"),
        family_margin: pipe.get("family_margin"),
    })
}

/// CSV with one row per dimension in `n_min..=n_max`.
pub fn sweep_csv(n_min: usize, n_max: usize, lambda: f64) -> CliResult<String> {
    if n_min < 2 || n_max < n_min {
        return Err(CliError::Config(format!("need 2 <= n_min <= n_max, got {n_min}..{n_max}")));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for n in n_min..=n_max {
        w.serialize(row_for(n, lambda)?)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Config(e.to_string()))
}

pub fn run(args: &BoundsArgs) -> CliResult<Outcome> {
    if !(args.lambda.is_finite() && args.lambda > 0.0) {
        return Err(CliError::Config(format!("lambda must be positive, got {}", args.lambda)));
    }
    let body = match (args.n, args.n_max) {
        (Some(n), _) => canonical_json(&report_for(n, args)?)?,
        (None, Some(n_max)) => sweep_csv(args.n_min, n_max, args.lambda)?,
        (None, None) => return Err(CliError::Config("give --n or --n-max".into())),
    };
    Ok(Outcome { pass: true, body })
}
