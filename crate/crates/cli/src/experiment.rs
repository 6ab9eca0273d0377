//! Desk-scale experiment suites charting the dichotomy functions.
//!
//! A suite is a grid of (n, seed) cells. Every cell generates its instance
//! from a per-cell seed derived from the master seed, runs the suite's
//! algorithm, enforces the row invariants, and (within oracle caps) attaches
//! the exact optimum for cross-checking. Cells run concurrently; rows are
//! buffered and written in (n, seed-ordinal) order, so the CSV is
//! deterministic apart from the ms column.

use std::io::Write;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use mdich_core::approx;
use mdich_core::extraction::{
    equilateral_or_lacunary, extract_k_increasing, greedy_equilateral_or_lacunary, hst_dichotomy,
    DichotomyMode, DichotomyResult,
};
use mdich_core::instances::rng::split_seed;
use mdich_core::instances::{certified_ramsey_graph, composition_power, CompositionBase};
use mdich_core::metric::restrict;
use mdich_core::oracle::{
    max_binary_hst_subset, max_equilateral_subset, max_lacunary_subset, Arith, Caps,
};
use mdich_core::OracleError;
use mdich_core::MetricSpace;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    DkAbove2,
    DkBelow2,
    EkAbove2,
    EkBelow2,
    D1,
}

impl Suite {
    pub fn parse(name: &str) -> Result<Suite, CliError> {
        Ok(match name {
            "d-k-above-2" => Suite::DkAbove2,
            "d-k-below-2" => Suite::DkBelow2,
            "e-k-above-2" => Suite::EkAbove2,
            "e-k-below-2" => Suite::EkBelow2,
            "d-1" => Suite::D1,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown suite {other:?}; expected d-k-above-2, d-k-below-2, e-k-above-2, \
                     e-k-below-2, or d-1"
                )))
            }
        })
    }

    fn algorithm(&self) -> &'static str {
        match self {
            Suite::DkAbove2 => "greedy-lacunary",
            Suite::DkBelow2 | Suite::D1 => "eq-or-lacunary",
            Suite::EkAbove2 => "hst-dichotomy-coarse",
            Suite::EkBelow2 => "hst-dichotomy-fine",
        }
    }

    fn is_e_suite(&self) -> bool {
        matches!(self, Suite::EkAbove2 | Suite::EkBelow2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Random,
    Composition,
}

impl Family {
    pub fn parse(name: &str) -> Result<Family, CliError> {
        Ok(match name {
            "random" => Family::Random,
            "composition" => Family::Composition,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown family {other:?}; expected random or composition"
                )))
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub suite: Suite,
    pub n_list: Vec<usize>,
    pub alpha: f64,
    pub k: f64,
    pub seeds: usize,
    pub master_seed: u64,
    pub family: Family,
    pub base_n: usize,
    pub require_oracle: bool,
    pub verbose: bool,
}

#[derive(Debug, Clone)]
pub struct ExperimentRow {
    pub n: usize,
    pub alpha: f64,
    pub k: f64,
    pub eps: Option<f64>,
    pub algorithm: &'static str,
    pub branch: String,
    pub size: usize,
    pub distortion: f64,
    pub guarantee: f64,
    pub oracle_opt: Option<usize>,
    pub seed: u64,
    pub ms: u64,
    pub result_hash: Option<String>,
}

pub const CSV_HEADER: &str = "n,alpha,k,eps,algorithm,branch,size,distortion,guarantee,oracle_opt,seed,ms";

pub fn write_csv(rows: &[ExperimentRow], verbose: bool, out: &mut dyn Write) -> std::io::Result<()> {
    if verbose {
        writeln!(out, "{CSV_HEADER},result_hash")?;
    } else {
        writeln!(out, "{CSV_HEADER}")?;
    }
    for r in rows {
        let eps = r.eps.map(|e| e.to_string()).unwrap_or_default();
        let opt = r.oracle_opt.map(|o| o.to_string()).unwrap_or_default();
        let base = format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.n,
            r.alpha,
            r.k,
            eps,
            r.algorithm,
            r.branch,
            r.size,
            r.distortion,
            r.guarantee,
            opt,
            r.seed,
            r.ms
        );
        if verbose {
            writeln!(out, "{base},{}", r.result_hash.as_deref().unwrap_or(""))?;
        } else {
            writeln!(out, "{base}")?;
        }
    }
    Ok(())
}

fn instance(family: Family, n: usize, base_n: usize, seed: u64, caps: &Caps) -> Result<MetricSpace, CliError> {
    match family {
        Family::Random => {
            if n < 2 {
                return Err(CliError::Usage("cell size must be >= 2".into()));
            }
            Ok(mdich_core::instances::families::uniform_random_metric(n, seed))
        }
        Family::Composition => {
            if base_n < 3 {
                return Err(CliError::Usage("--base-n must be >= 3 for composition cells".into()));
            }
            let (base, _cert) = certified_ramsey_graph(base_n, seed, 1000, caps.ramsey_exact_n)?;
            let t = ((n as f64).ln() / (base_n as f64).ln()).ceil().max(1.0) as usize;
            let power =
                composition_power(&base, 2.0, t, CompositionBase::CopyOfM, caps.composition_max_points)?;
            if power.len() == n {
                return Ok(power);
            }
            // Evenly spaced restriction down to n points.
            let total = power.len();
            let subset: Vec<usize> = (0..n).map(|i| i * total / n).collect();
            Ok(restrict(&power, &subset)?.induced)
        }
    }
}

/// The per-cell algorithm run. Returns the self-verified result and the eps
/// recorded in the row.
fn run_cell_algorithm(
    suite: Suite,
    m: &MetricSpace,
    alpha: f64,
    k: f64,
) -> Result<(DichotomyResult, Option<f64>), CliError> {
    match suite {
        Suite::DkAbove2 => {
            if !(alpha > 2.0) {
                return Err(CliError::Usage("d-k-above-2 needs --alpha > 2".into()));
            }
            let run = greedy_equilateral_or_lacunary(m, alpha, k, None)?;
            Ok((run.result, None))
        }
        Suite::DkBelow2 => {
            if !(alpha > 1.0 && alpha < 2.0) {
                return Err(CliError::Usage("d-k-below-2 needs 1 < --alpha < 2".into()));
            }
            let eps = alpha - 1.0;
            Ok((equilateral_or_lacunary(m, eps, k)?, Some(eps)))
        }
        Suite::D1 => {
            if !(alpha > 1.0) {
                return Err(CliError::Usage("d-1 needs --alpha > 1".into()));
            }
            let eps = (alpha - 1.0).min(1.0);
            Ok((equilateral_or_lacunary(m, eps, 1.0)?, Some(eps)))
        }
        Suite::EkAbove2 => {
            if !(alpha > 2.0) {
                return Err(CliError::Usage("e-k-above-2 needs --alpha > 2".into()));
            }
            let eps_p = (alpha - 2.0).min(1.0);
            let ex = extract_k_increasing(m, eps_p, k)?;
            let d = dichotomy_on_extraction(m, &ex, eps_p, k, DichotomyMode::Coarse)?;
            Ok((d, Some(eps_p)))
        }
        Suite::EkBelow2 => {
            if !(alpha > 1.0 && alpha < 2.0) {
                return Err(CliError::Usage("e-k-below-2 needs 1 < --alpha < 2".into()));
            }
            let eps = alpha - 1.0;
            let k_fine = k.max(2.0 + 2.0 / eps);
            let eps_p = eps.min(1.0);
            let target_sep = (1.0 + eps_p) * k_fine;
            let ex = extract_k_increasing(m, eps_p, target_sep)?;
            let d = dichotomy_on_extraction(m, &ex, eps, k, DichotomyMode::Fine)?;
            Ok((d, Some(eps)))
        }
    }
}

/// Runs the HST dichotomy on the extraction's witness subspace, then lifts
/// the indices back to the parent space. The lifted result still verifies
/// against the parent because restriction commutes with subsetting.
fn dichotomy_on_extraction(
    m: &MetricSpace,
    ex: &mdich_core::extraction::IncreasingExtraction,
    eps: f64,
    k: f64,
    mode: DichotomyMode,
) -> Result<DichotomyResult, CliError> {
    let w = ex.result.witness(m)?;
    if w.len() < 2 {
        // Degenerate extraction: report the single point as an equilateral
        // witness of size 1.
        return Ok(ex.result.clone());
    }
    let h = ((m.len() as f64).ln().sqrt().exp().floor() as usize).max(2);
    let mut d = hst_dichotomy(&w.induced, ex.tree(), eps, h, k, mode)?;
    d.indices = d.indices.iter().map(|&i| ex.result.indices[i]).collect();
    Ok(d)
}

pub fn run_suite(params: &SuiteParams, caps: &Caps) -> Result<Vec<ExperimentRow>, CliError> {
    if params.n_list.is_empty() {
        return Err(CliError::Usage("empty n-list".into()));
    }
    if params.seeds == 0 {
        return Err(CliError::Usage("--seeds must be >= 1".into()));
    }
    let cells: Vec<(usize, usize, usize)> = params
        .n_list
        .iter()
        .enumerate()
        .flat_map(|(ni, &n)| (0..params.seeds).map(move |s| (ni, n, s)))
        .collect();
    let outcomes: Vec<Result<ExperimentRow, CliError>> = cells
        .par_iter()
        .map(|&(ni, n, s)| run_cell(params, caps, ni, n, s))
        .collect();
    let mut rows = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        rows.push(outcome?);
    }
    // Cells were generated in (n-position, seed-ordinal) order already.
    Ok(rows)
}

fn run_cell(
    params: &SuiteParams,
    caps: &Caps,
    n_index: usize,
    n: usize,
    seed_ordinal: usize,
) -> Result<ExperimentRow, CliError> {
    let lane = (n_index * params.seeds + seed_ordinal) as u64;
    let seed = split_seed(params.master_seed, lane);
    let m = instance(params.family, n, params.base_n, seed, caps)?;
    let start = std::time::Instant::now();
    let (result, eps) = run_cell_algorithm(params.suite, &m, params.alpha, params.k)?;
    let ms = start.elapsed().as_millis() as u64;
    result
        .verify(&m)
        .map_err(|e| CliError::Verification(format!("cell n={n} seed={seed}: {e}")))?;

    let oracle_opt = cell_oracle(params, caps, &m)?;
    let row = ExperimentRow {
        n,
        alpha: params.alpha,
        k: params.k,
        eps,
        algorithm: params.suite.algorithm(),
        branch: result.kind.as_str().to_string(),
        size: result.size(),
        distortion: result.cert.distortion,
        guarantee: result.guarantee.size_bound,
        oracle_opt,
        seed,
        ms,
        result_hash: params.verbose.then(|| {
            let json = serde_json::to_string(&result).expect("result serializes");
            hex_digest(json.as_bytes())
        }),
    };
    validate_row(&row, params.alpha)?;
    Ok(row)
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Row invariants, enforced before writing.
fn validate_row(row: &ExperimentRow, budget: f64) -> Result<(), CliError> {
    if (row.size as f64) < approx::ceil_tol(row.guarantee) {
        return Err(CliError::Verification(format!(
            "row n={} seed={}: size {} below guarantee {}",
            row.n, row.seed, row.size, row.guarantee
        )));
    }
    if !approx::le(row.distortion, budget) {
        return Err(CliError::Verification(format!(
            "row n={} seed={}: distortion {} above budget {budget}",
            row.n, row.seed, row.distortion
        )));
    }
    if let Some(opt) = row.oracle_opt {
        if row.size > opt {
            return Err(CliError::Verification(format!(
                "row n={} seed={}: size {} exceeds oracle optimum {opt}",
                row.n, row.seed, row.size
            )));
        }
    }
    Ok(())
}

/// Exact optimum for the suite's dichotomy class, when the instance is
/// within oracle caps; None (or an error under --require-oracle) otherwise.
fn cell_oracle(params: &SuiteParams, caps: &Caps, m: &MetricSpace) -> Result<Option<usize>, CliError> {
    let run = || -> Result<usize, OracleError> {
        let eq = max_equilateral_subset(m, params.alpha, caps, Arith::Float)?;
        let other = if params.suite.is_e_suite() {
            max_binary_hst_subset(m, params.alpha, params.k, caps, Arith::Float)?.optimum
        } else {
            max_lacunary_subset(m, params.alpha, params.k.max(1.0), caps, Arith::Float)?.optimum
        };
        Ok(eq.optimum.max(other))
    };
    match run() {
        Ok(opt) => Ok(Some(opt)),
        Err(OracleError::CapExceeded { cap_name, cap, got }) => {
            if params.require_oracle {
                Err(CliError::Caps(format!(
                    "cell of size {} needs oracle beyond {cap_name} cap {cap} (got {got})",
                    m.len()
                )))
            } else {
                Ok(None)
            }
        }
        Err(e) => Err(e.into()),
    }
}
