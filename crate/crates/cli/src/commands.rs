//! Implementations of the gen / extract / oracle subcommands, independent of
//! argument parsing.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use mdich_core::extraction::{
    equilateral_or_lacunary, extract_k_increasing, greedy_equilateral_or_lacunary, hst_dichotomy,
    triangle_to_binary_hst, DichotomyKind, DichotomyMode, DichotomyResult, DichotomyStructure,
    Guarantee,
};
use mdich_core::hst::HstTree;
use mdich_core::instances::graphs::GraphJson;
use mdich_core::instances::rng::PRNG_ID;
use mdich_core::instances::{
    certified_ramsey_graph, composition_power, graph_metric, random_graph_metric, CompositionBase,
};
use mdich_core::metric::{MetricFile, Provenance};
use mdich_core::oracle::{
    max_binary_hst_subset, max_equilateral_subset, max_lacunary_subset, Arith, Caps, OracleReport,
};
use mdich_core::MetricSpace;

use crate::error::CliError;

// --- gen -------------------------------------------------------------------

#[derive(Debug, Clone, Default)]
pub struct GenParams {
    pub family: String,
    pub n: Option<usize>,
    pub s: Option<usize>,
    pub p: Option<f64>,
    pub base_n: Option<usize>,
    pub beta: Option<f64>,
    pub t: Option<usize>,
    pub k: Option<f64>,
    pub len: Option<usize>,
    pub leaves: Option<usize>,
    pub degree: Option<usize>,
    pub base: Option<String>,
    pub seed: u64,
    pub max_tries: usize,
    pub graph_in: Option<PathBuf>,
    pub graph_out: Option<PathBuf>,
}

fn need<T: Copy>(opt: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    opt.ok_or_else(|| CliError::Usage(format!("family {family} requires --{flag}")))
}

fn provenance(generator: &str, params: &[(&str, String)], seed: Option<u64>) -> Provenance {
    let mut map = BTreeMap::new();
    for (k, v) in params {
        map.insert(k.to_string(), v.clone());
    }
    Provenance {
        generator: generator.to_string(),
        params: map,
        seed,
        prng: seed.map(|_| PRNG_ID.to_string()),
    }
}

/// Generates an instance and returns its JSON text (metric-v1 or hst-v1).
pub fn cmd_gen(params: &GenParams, caps: &Caps) -> Result<String, CliError> {
    use mdich_core::instances::families;
    let seed = params.seed;
    let (space, prov) = match params.family.as_str() {
        "random" => {
            let n = need(params.n, "n", "random")?;
            if n < 2 {
                return Err(CliError::Usage("--n must be >= 2".into()));
            }
            (
                families::uniform_random_metric(n, seed),
                provenance("random", &[("n", n.to_string())], Some(seed)),
            )
        }
        "equilateral" => {
            let n = need(params.n, "n", "equilateral")?;
            if n < 1 {
                return Err(CliError::Usage("--n must be >= 1".into()));
            }
            (
                families::equilateral_metric(n),
                provenance("equilateral", &[("n", n.to_string())], None),
            )
        }
        "path" => {
            let n = need(params.n, "n", "path")?;
            if n < 2 {
                return Err(CliError::Usage("--n must be >= 2".into()));
            }
            (families::path_metric(n), provenance("path", &[("n", n.to_string())], None))
        }
        "lacunary" => {
            let k = need(params.k, "k", "lacunary")?;
            let len = need(params.len, "len", "lacunary")?;
            if !(k >= 1.0) || len < 1 {
                return Err(CliError::Usage("lacunary needs --k >= 1 and --len >= 1".into()));
            }
            (
                families::geometric_lacunary_metric(k, len),
                provenance(
                    "lacunary",
                    &[("k", k.to_string()), ("len", len.to_string())],
                    None,
                ),
            )
        }
        "graph" => {
            if let Some(path) = &params.graph_in {
                let text = std::fs::read_to_string(path)?;
                let g: GraphJson = serde_json::from_str(&text)?;
                if g.format != "graph-v1" {
                    return Err(CliError::Usage(format!("unsupported graph format {:?}", g.format)));
                }
                (
                    graph_metric(&g.edges, g.s)?,
                    provenance("graph-file", &[("s", g.s.to_string())], None),
                )
            } else {
                let s = need(params.s, "s", "graph")?;
                let p = params.p.unwrap_or(0.5);
                let m = random_graph_metric(s, p, seed)?;
                (
                    m,
                    provenance(
                        "graph",
                        &[("s", s.to_string()), ("p", p.to_string())],
                        Some(seed),
                    ),
                )
            }
        }
        "ramsey-graph" => {
            let s = need(params.s, "s", "ramsey-graph")?;
            let (m, cert) = certified_ramsey_graph(s, seed, params.max_tries, caps.ramsey_exact_n)?;
            if let Some(path) = &params.graph_out {
                let gj = GraphJson::new(cert.s, cert.edges.clone());
                std::fs::write(path, format!("{}\n", serde_json::to_string(&gj)?))?;
            }
            (
                m,
                provenance(
                    "ramsey-graph",
                    &[
                        ("s", s.to_string()),
                        ("diameter", cert.diameter.to_string()),
                        ("max_clique", cert.max_clique.to_string()),
                        ("max_independent_set", cert.max_independent_set.to_string()),
                        ("certification", format!("{:?}", cert.method).to_lowercase()),
                    ],
                    Some(seed),
                ),
            )
        }
        "composition-power" => {
            let base_n = need(params.base_n, "base-n", "composition-power")?;
            let beta = params.beta.unwrap_or(2.0);
            let t = need(params.t, "t", "composition-power")?;
            if base_n < 2 {
                return Err(CliError::Usage("--base-n must be >= 2".into()));
            }
            let base_mode = match params.base.as_deref() {
                None | Some("copy") => CompositionBase::CopyOfM,
                Some("singleton") => CompositionBase::Singleton,
                Some(other) => {
                    return Err(CliError::Usage(format!(
                        "--base must be copy or singleton, got {other:?}"
                    )))
                }
            };
            let base = families::uniform_random_metric(base_n, seed);
            let m = composition_power(&base, beta, t, base_mode, caps.composition_max_points)?;
            (
                m,
                provenance(
                    "composition-power",
                    &[
                        ("base_n", base_n.to_string()),
                        ("beta", beta.to_string()),
                        ("t", t.to_string()),
                        ("base", format!("{base_mode:?}").to_lowercase()),
                    ],
                    Some(seed),
                ),
            )
        }
        "hst" => {
            let leaves = need(params.leaves, "leaves", "hst")?;
            let k = params.k.unwrap_or(2.0);
            let degree = params.degree.unwrap_or(3);
            if leaves < 2 || !(k >= 1.0) || degree < 2 {
                return Err(CliError::Usage(
                    "hst needs --leaves >= 2, --k >= 1, --degree >= 2".into(),
                ));
            }
            let tree = families::random_hst(leaves, k, degree, 1.0, seed);
            let prov = provenance(
                "hst",
                &[
                    ("leaves", leaves.to_string()),
                    ("k", k.to_string()),
                    ("degree", degree.to_string()),
                ],
                Some(seed),
            );
            let mut value = serde_json::to_value(&tree)?;
            value
                .as_object_mut()
                .expect("hst-v1 root is an object")
                .insert("provenance".into(), serde_json::to_value(&prov)?);
            return Ok(format!("{}\n", serde_json::to_string(&value)?));
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown family {other:?}; expected one of random, graph, ramsey-graph, \
                 composition-power, path, equilateral, lacunary, hst"
            )))
        }
    };
    let file = MetricFile { space, provenance: Some(prov) };
    Ok(format!("{}\n", serde_json::to_string(&file)?))
}

// --- extract ----------------------------------------------------------------

#[derive(Debug, Clone, Default)]
pub struct ExtractParams {
    pub algorithm: String,
    pub eps: Option<f64>,
    pub k: Option<f64>,
    pub alpha: Option<f64>,
    pub threshold: Option<usize>,
    pub h: Option<usize>,
    pub mode: Option<String>,
    pub tree: Option<PathBuf>,
}

pub fn read_metric(path: &Path) -> Result<MetricSpace, CliError> {
    let text = std::fs::read_to_string(path)?;
    let file: MetricFile = serde_json::from_str(&text)?;
    Ok(file.space)
}

pub fn read_hst(path: &Path) -> Result<HstTree, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Runs an extraction algorithm, self-verifies the result, and returns it
/// with its one-line summary.
pub fn cmd_extract(
    params: &ExtractParams,
    space: &MetricSpace,
) -> Result<(DichotomyResult, String), CliError> {
    let result = match params.algorithm.as_str() {
        "bfm-increasing" => {
            let eps = need(params.eps, "eps", "bfm-increasing")?;
            let k = need(params.k, "k", "bfm-increasing")?;
            extract_k_increasing(space, eps, k)?.result
        }
        "eq-or-lacunary" => {
            let eps = need(params.eps, "eps", "eq-or-lacunary")?;
            let k = need(params.k, "k", "eq-or-lacunary")?;
            equilateral_or_lacunary(space, eps, k)?
        }
        "greedy-lacunary" => {
            let alpha = need(params.alpha, "alpha", "greedy-lacunary")?;
            let k = need(params.k, "k", "greedy-lacunary")?;
            greedy_equilateral_or_lacunary(space, alpha, k, params.threshold)?.result
        }
        "triangle-hst" => {
            let k = need(params.k, "k", "triangle-hst")?;
            let (tree, cert) = triangle_to_binary_hst(space, k)?;
            let guarantee = Guarantee::new(space.len() as f64, k / (k - 2.0))
                .with("k", k / 2.0)
                .with("input_k", k);
            DichotomyResult {
                kind: DichotomyKind::BinaryHst,
                indices: (0..space.len()).collect(),
                structure: Some(DichotomyStructure::Hst(tree)),
                cert,
                guarantee,
            }
        }
        "hst-dichotomy" => {
            let eps = need(params.eps, "eps", "hst-dichotomy")?;
            let k = need(params.k, "k", "hst-dichotomy")?;
            let h = need(params.h, "h", "hst-dichotomy")?;
            let tree_path = params
                .tree
                .as_ref()
                .ok_or_else(|| CliError::Usage("hst-dichotomy requires --tree".into()))?;
            let tree = read_hst(tree_path)?;
            let mode = match params.mode.as_deref() {
                None | Some("coarse") => DichotomyMode::Coarse,
                Some("fine") => DichotomyMode::Fine,
                Some(other) => {
                    return Err(CliError::Usage(format!(
                        "--mode must be coarse or fine, got {other:?}"
                    )))
                }
            };
            hst_dichotomy(space, &tree, eps, h, k, mode)?
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown algorithm {other:?}; expected one of bfm-increasing, eq-or-lacunary, \
                 greedy-lacunary, triangle-hst, hst-dichotomy"
            )))
        }
    };
    result
        .verify(space)
        .map_err(|e| CliError::Verification(format!("result failed self-verification: {e}")))?;
    let summary = format!(
        "branch={} size={} distortion={:.6}",
        result.kind.as_str(),
        result.size(),
        result.cert.distortion
    );
    Ok((result, summary))
}

// --- oracle ------------------------------------------------------------------

pub fn cmd_oracle(
    query: &str,
    alpha: f64,
    k: Option<f64>,
    space: &MetricSpace,
    caps: &Caps,
    arith: Arith,
) -> Result<OracleReport, CliError> {
    let report = match query {
        "equilateral" => max_equilateral_subset(space, alpha, caps, arith)?,
        "lacunary" => {
            let k = k.ok_or_else(|| CliError::Usage("lacunary query requires --k".into()))?;
            max_lacunary_subset(space, alpha, k, caps, arith)?
        }
        "binary-hst" => {
            let k = k.ok_or_else(|| CliError::Usage("binary-hst query requires --k".into()))?;
            max_binary_hst_subset(space, alpha, k, caps, arith)?
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown query {other:?}; expected equilateral, lacunary, or binary-hst"
            )))
        }
    };
    report
        .verify(space)
        .map_err(|e| CliError::Verification(format!("oracle witness failed re-verification: {e}")))?;
    Ok(report)
}
