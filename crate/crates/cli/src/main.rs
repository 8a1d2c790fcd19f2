//! `hypersc`: hyperbolicity, cone-off and small-cancellation calculations on
//! finite models, with deterministic JSON reports.
//!
//! Exit codes: 0 computed, 1 a requested check failed, 2 input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use hypersc_core::cone::{mu_bounds_check, sample_cone_space, ConeSpec, BOLD_DELTA};
use hypersc_core::coneoff::ConeOffSpace;
use hypersc_core::convexity::{quasi_convexity_constant, strong_quasi_convexity_check};
use hypersc_core::delta::{hyperbolicity_delta_with, local_delta_profile, DeltaOptions};
use hypersc_core::group_actions::{
    axis_on_ball, cylinder_on_ball, invariant_a_free, rinj_words, stable_length_word,
    translation_length_word,
};
use hypersc_core::length::{Dist, Length};
use hypersc_core::rotation::{
    enumerate_k_ball, fundamental_theorem_check, stabilizer_check, verify_rotation_axioms,
    RotationFamilySpec,
};
use hypersc_core::small_cancellation::{
    check_small_cancellation, critical_exponent_search, gm_embedding_bounds, graph_girth,
    graph_max_piece, q_family_from_relators, GraphPieceResult, LabelledGraph, Presentation,
    ScVariant,
};
use hypersc_core::space::{FiniteLengthSpace, SubsetHandle};
use hypersc_core::words::{cayley_ball, Word};

const SCHEMA_VERSION: &str = "1";

#[derive(Parser)]
#[command(name = "hypersc", version, about = "geometric small-cancellation calculations on finite models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for any sampling the command performs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Four-point hyperbolicity constants of a space file.
    Delta {
        file: PathBuf,
        /// Require exact arithmetic (error when weights are floats).
        #[arg(long)]
        exact: bool,
        /// Sample size above the exact quadruple cap.
        #[arg(long)]
        sample: Option<u64>,
    },
    /// Gromov product ⟨x,y⟩_z of three points.
    Gromov {
        file: PathBuf,
        x: String,
        y: String,
        z: String,
    },
    /// Quasi-convexity constant and strong quasi-convexity report.
    Qc {
        file: PathBuf,
        /// Subset as comma-separated vertex ids.
        #[arg(long, conflicts_with = "subset_file")]
        subset: Option<String>,
        /// Subset from a JSON file of the form {"subset": [...]}.
        #[arg(long)]
        subset_file: Option<PathBuf>,
        /// δ for the strong quasi-convexity verdict (default: computed
        /// delta_product of the space).
        #[arg(long)]
        delta: Option<String>,
    },
    /// Sample the cone over a base space and validate its metric.
    Cone {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        /// Also measure the sampled four-point constant against 2·𝛅.
        #[arg(long)]
        delta_check: bool,
    },
    /// Cone-off metric queries on a cone-off file.
    Coneoff {
        file: PathBuf,
        /// Report the dot distance between two base vertices.
        #[arg(long, num_args = 2)]
        query: Option<Vec<String>>,
        /// Verify μ(d_X) ≤ dot ≤ d_X on all pairs.
        #[arg(long)]
        sandwich_check: bool,
        /// Four-point constants of the dot metric.
        #[arg(long)]
        delta: bool,
    },
    /// Axis, cylinder and lengths of a word on a free-group Cayley ball.
    Axes {
        #[arg(long)]
        rank: u8,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "0")]
        delta: String,
    },
    /// Overlap invariant A of a word pool on the (rescaled) Cayley tree.
    InvariantA {
        /// Comma-separated cyclic words.
        #[arg(long)]
        pool: String,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value = "1")]
        weight: String,
    },
    /// Small-cancellation check of a presentation file.
    ScCheck {
        file: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Variant::Cprime)]
        variant: Variant,
    },
    /// Girth and pieces of a labelled graph.
    GraphSc {
        file: PathBuf,
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
    /// Rotation-family axioms, K-ball enumeration and theorem checks.
    Rotation {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        budget_words: u32,
        #[arg(long, default_value_t = 1e9)]
        budget_displacement: f64,
        /// Interior rings per cone when the family file embeds a cone-off.
        #[arg(long, default_value_t = 2)]
        rings: usize,
    },
    /// Critical exponent arithmetic of the iterated construction.
    BurnsideParams {
        #[arg(long)]
        rho0: f64,
        #[arg(long)]
        delta0: f64,
        #[arg(long = "Delta0", alias = "big-delta0")]
        big_delta0: f64,
        #[arg(long, default_value_t = BOLD_DELTA)]
        bold_delta: f64,
    },
    /// Embedding radius and distortion bounds of the graphical theorem.
    GmBounds {
        #[arg(long)]
        rho: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        #[arg(long, default_value_t = 0.0)]
        l: f64,
        #[arg(long)]
        diam_theta: f64,
    },
    /// Local-vs-global δ profile and the globalization prediction.
    CartanHadamard {
        file: PathBuf,
        #[arg(long)]
        sigma: String,
    },
    /// Comparison-map bounds on a grid.
    Mu {
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Variant {
    Cprime,
    Cdouble,
}

#[derive(Serialize)]
struct Report {
    schema_version: &'static str,
    command: String,
    inputs_digest: String,
    results: Value,
    warnings: Vec<String>,
    certified: Option<bool>,
}

struct Outcome {
    results: Value,
    warnings: Vec<String>,
    certified: Option<bool>,
    /// A requested check failed (exit 1).
    check_failed: bool,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut hasher = Sha256::new();
    let command_name = command_name(&cli.command);
    let run = build(&cli, &mut hasher);
    match run {
        Ok(out) => {
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: command_name.to_string(),
                inputs_digest: format!("{:x}", hasher.finalize()),
                results: out.results,
                warnings: out.warnings,
                certified: out.certified,
            };
            match cli.format {
                Format::Json => {
                    println!("{}", canonical_json(&serde_json::to_value(&report).unwrap()))
                }
                Format::Text => println!("{}", out.text),
            }
            if out.check_failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Delta { .. } => "delta",
        Command::Gromov { .. } => "gromov",
        Command::Qc { .. } => "qc",
        Command::Cone { .. } => "cone",
        Command::Coneoff { .. } => "coneoff",
        Command::Axes { .. } => "axes",
        Command::InvariantA { .. } => "invariant-a",
        Command::ScCheck { .. } => "sc-check",
        Command::GraphSc { .. } => "graph-sc",
        Command::Rotation { .. } => "rotation",
        Command::BurnsideParams { .. } => "burnside-params",
        Command::GmBounds { .. } => "gm-bounds",
        Command::CartanHadamard { .. } => "cartan-hadamard",
        Command::Mu { .. } => "mu",
    }
}

/// JSON with recursively sorted object keys, for byte-identical reports.
fn canonical_json(v: &Value) -> String {
    fn sort(v: &Value) -> Value {
        match v {
            Value::Object(map) => {
                let mut entries: Vec<(&String, &Value)> = map.iter().collect();
                entries.sort_by_key(|(k, _)| (*k).clone());
                Value::Object(entries.into_iter().map(|(k, x)| (k.clone(), sort(x))).collect())
            }
            Value::Array(items) => Value::Array(items.iter().map(sort).collect()),
            other => other.clone(),
        }
    }
    serde_json::to_string_pretty(&sort(v)).expect("serializable")
}

fn read_input(path: &PathBuf, hasher: &mut Sha256) -> anyhow::Result<String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    hasher.update(text.as_bytes());
    Ok(text)
}

fn parse_length(text: &str) -> anyhow::Result<Length> {
    Ok(Length::parse(text)?)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn dist_json(d: &Dist) -> Value {
    match d {
        Dist::Infinite => json!("inf"),
        Dist::Finite(l) => to_value(l),
    }
}

fn build(cli: &Cli, hasher: &mut Sha256) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Delta { file, exact, sample } => {
            let text = read_input(file, hasher)?;
            let space = FiniteLengthSpace::load(&text)?;
            if *exact && !space.is_exact() {
                anyhow::bail!("--exact requested but the space has float weights");
            }
            let mut opts = DeltaOptions { seed: cli.seed, ..DeltaOptions::default() };
            if let Some(s) = sample {
                opts.samples = *s;
            }
            let rep = hyperbolicity_delta_with(&space, &opts);
            let text_out = format!(
                "delta_four_point = {}\ndelta_product = {}\nwitness = {:?}",
                rep.delta_four_point, rep.delta_product, rep.witness_ids
            );
            Ok(Outcome {
                results: to_value(&rep),
                warnings: vec![],
                certified: Some(rep.sample_count.is_none()),
                check_failed: false,
                text: text_out,
            })
        }
        Command::Gromov { file, x, y, z } => {
            let text = read_input(file, hasher)?;
            let space = FiniteLengthSpace::load(&text)?;
            let (xi, yi, zi) = (space.index_of(x)?, space.index_of(y)?, space.index_of(z)?);
            let g = space.gromov_product(xi, yi, zi);
            Ok(Outcome {
                results: json!({ "gromov_product": to_value(&g) }),
                warnings: vec![],
                certified: None,
                check_failed: false,
                text: format!("({x},{y})_{z} = {g}"),
            })
        }
        Command::Qc { file, subset, subset_file, delta } => {
            let text = read_input(file, hasher)?;
            let space = FiniteLengthSpace::load(&text)?;
            let ids: Vec<String> = match (subset, subset_file) {
                (Some(list), _) => list.split(',').map(|s| s.trim().to_string()).collect(),
                (None, Some(path)) => {
                    #[derive(serde::Deserialize)]
                    struct SubsetDoc {
                        subset: Vec<String>,
                    }
                    let doc: SubsetDoc = serde_json::from_str(&read_input(path, hasher)?)
                        .map_err(|e| anyhow::anyhow!("malformed subset file: {e}"))?;
                    doc.subset
                }
                (None, None) => anyhow::bail!("need --subset or --subset-file"),
            };
            let handle = SubsetHandle::from_ids(&space, &ids)?;
            let delta = match delta {
                Some(d) => parse_length(d)?,
                None => hypersc_core::delta::hyperbolicity_delta(&space).delta_product,
            };
            let alpha = quasi_convexity_constant(&space, &handle);
            let strong = strong_quasi_convexity_check(&space, &handle, delta);
            let text_out = format!(
                "alpha = {alpha}\nstrongly_quasi_convex = {} (delta = {delta})",
                strong.verdict
            );
            Ok(Outcome {
                results: json!({
                    "alpha": to_value(&alpha),
                    "delta": to_value(&delta),
                    "strong": to_value(&strong),
                }),
                warnings: vec![],
                certified: None,
                check_failed: false,
                text: text_out,
            })
        }
        Command::Cone { base, rho, levels, delta_check } => {
            let text = read_input(base, hasher)?;
            let base_space = FiniteLengthSpace::load(&text)?;
            let spec = ConeSpec::new(base_space, *rho)?;
            let sampled = sample_cone_space(&spec, *levels)?;
            sampled.validate_triangle()?;
            let mut results = json!({
                "points": sampled.len(),
                "rho": rho,
                "levels": levels,
                "triangle_inequality": "validated",
            });
            let mut text_out = format!("sampled cone: {} points, metric validated", sampled.len());
            let mut check_failed = false;
            if *delta_check {
                let rep = hypersc_core::delta::hyperbolicity_delta(&sampled);
                let measured = rep.delta_four_point.to_f64();
                let bound = 2.0 * BOLD_DELTA + 0.05;
                results["delta_four_point"] = json!(measured);
                results["bound_2_bold_delta"] = json!(bound);
                results["delta_within_bound"] = json!(measured <= bound);
                check_failed = measured > bound;
                text_out = format!("{text_out}\ndelta = {measured} (bound {bound})");
            }
            Ok(Outcome {
                results,
                warnings: vec![],
                certified: None,
                check_failed,
                text: text_out,
            })
        }
        Command::Coneoff { file, query, sandwich_check, delta } => {
            let text = read_input(file, hasher)?;
            let doc: ConeOffDoc = serde_json::from_str(&text)
                .map_err(|e| anyhow::anyhow!("malformed cone-off file: {e}"))?;
            let base = FiniteLengthSpace::from_doc(&doc.base)?;
            let mut subsets = Vec::new();
            for att in &doc.attachments {
                subsets.push(SubsetHandle::from_ids(&base, &att.subset)?);
            }
            let co = ConeOffSpace::build(base, doc.rho, subsets)?;
            let mut results = json!({
                "rho": doc.rho,
                "attachments": doc.attachments.len(),
            });
            let mut lines = Vec::new();
            if let Some(pair) = query {
                let u = co.base().index_of(&pair[0])?;
                let v = co.base().index_of(&pair[1])?;
                let d = co.dot_dist(u, v);
                results["query"] = json!({ "u": pair[0], "v": pair[1], "dot_dist": d });
                lines.push(format!("dot({}, {}) = {d}", pair[0], pair[1]));
            }
            if *sandwich_check {
                co.validate_sandwich()?;
                results["sandwich"] = json!("mu(d_X) <= dot <= d_X verified");
                lines.push("sandwich verified".to_string());
            }
            if *delta {
                let n = co.base().len();
                let ids = co.base().ids().to_vec();
                let mut matrix = vec![0.0; n * n];
                for i in 0..n {
                    for j in 0..n {
                        matrix[i * n + j] = co.dot_dist(i, j);
                    }
                }
                let dot_space = FiniteLengthSpace::from_metric(ids, matrix)?;
                let rep = hypersc_core::delta::hyperbolicity_delta(&dot_space);
                results["delta_four_point"] = to_value(&rep.delta_four_point);
                lines.push(format!("delta(dot) = {}", rep.delta_four_point));
            }
            Ok(Outcome {
                results,
                warnings: vec![],
                certified: None,
                check_failed: false,
                text: lines.join("\n"),
            })
        }
        Command::Axes { rank, radius, word, delta } => {
            let w = Word::parse(word)?;
            let delta = parse_length(delta)?;
            let one = Length::from_int(1);
            let ball = cayley_ball(*rank, *radius, one)?;
            let axis = axis_on_ball(&ball, &w, delta, one)?;
            let ell = translation_length_word(&w, one);
            let stable = stable_length_word(&w, one);
            let cylinder = cylinder_on_ball(&ball, &w, delta, one);
            let axis_ids: Vec<&str> = axis.indices().iter().map(|&i| ball.id(i)).collect();
            let mut results = json!({
                "word": word,
                "translation_length": to_value(&ell),
                "stable_length": to_value(&stable),
                "axis": axis_ids,
            });
            let mut lines = vec![format!("l({word}) = {ell}, axis has {} vertices", axis_ids.len())];
            match cylinder {
                Ok(c) => {
                    let ids: Vec<&str> = c.vertices.iter().map(|&i| ball.id(i)).collect();
                    lines.push(format!("cylinder has {} vertices", ids.len()));
                    results["cylinder"] = json!(ids);
                    results["cylinder_boundary_margin"] =
                        c.boundary_margin.map(|m| to_value(&m)).unwrap_or(Value::Null);
                }
                Err(e) => {
                    results["cylinder_error"] = json!(e.to_string());
                    lines.push(format!("cylinder: {e}"));
                }
            }
            Ok(Outcome {
                results,
                warnings: vec![],
                certified: None,
                check_failed: false,
                text: lines.join("\n"),
            })
        }
        Command::InvariantA { pool, delta, weight } => {
            let words: Vec<Word> = pool
                .split(',')
                .map(|t| Word::parse(t.trim()))
                .collect::<Result<_, _>>()?;
            let delta = parse_length(delta)?;
            let weight = parse_length(weight)?;
            let rep = invariant_a_free(&words, delta, weight)?;
            let rinj = rinj_words(&words, weight);
            let text_out = format!(
                "A = {} over {} admissible pairs{}\nrinj = {}",
                rep.value,
                rep.admissible_pairs,
                if rep.empty_pair_set { " (empty pair set: 0 by convention)" } else { "" },
                rinj
            );
            Ok(Outcome {
                results: json!({ "invariant_a": to_value(&rep), "rinj": dist_json(&rinj) }),
                warnings: vec![],
                certified: None,
                check_failed: false,
                text: text_out,
            })
        }
        Command::ScCheck { file, lambda, variant } => {
            let text = read_input(file, hasher)?;
            let pres = Presentation::parse(&text)?;
            let lambda = parse_length(lambda)?;
            let variant = match variant {
                Variant::Cprime => ScVariant::CPrime,
                Variant::Cdouble => ScVariant::CDoublePrime,
            };
            let rep = check_small_cancellation(&pres, lambda, variant);
            let fam = q_family_from_relators(&pres);
            let text_out = format!(
                "{:?}({lambda}) {}\nmax_piece = {}, min_relator = {}\nDelta(Q) = {}, T(Q) = {}",
                variant,
                if rep.holds { "holds" } else { "FAILS" },
                rep.max_piece,
                rep.min_relator,
                fam.delta_q,
                fam.t_q
            );
            Ok(Outcome {
                check_failed: !rep.holds,
                results: json!({
                    "check": to_value(&rep),
                    "family": to_value(&fam),
                }),
                warnings: vec![],
                certified: None,
                text: text_out,
            })
        }
        Command::GraphSc { file, cap } => {
            let text = read_input(file, hasher)?;
            let graph = LabelledGraph::load(&text)?;
            let girth = graph_girth(&graph);
            let pieces = graph_max_piece(&graph, *cap);
            let text_out = match &pieces {
                GraphPieceResult::Exact { length, witness } => {
                    format!("girth = {girth}, max piece = {length} ({witness:?})")
                }
                GraphPieceResult::IndeterminateAtCap { cap } => {
                    format!("girth = {girth}, max piece indeterminate >= {cap}")
                }
            };
            Ok(Outcome {
                results: json!({ "girth": dist_json(&girth), "pieces": to_value(&pieces) }),
                warnings: vec![],
                certified: Some(matches!(pieces, GraphPieceResult::Exact { .. })),
                check_failed: false,
                text: text_out,
            })
        }
        Command::Rotation { file, budget_words, budget_displacement, rings } => {
            let text = read_input(file, hasher)?;
            let doc: RotationDoc = serde_json::from_str(&text)
                .map_err(|e| anyhow::anyhow!("malformed rotation family file: {e}"))?;
            // the ambient space is either a plain space document or a
            // cone-off document, which is materialized with interior rings
            let space = match &doc.space {
                RotationSpaceDoc::ConeOff(co_doc) => {
                    let base = FiniteLengthSpace::from_doc(&co_doc.base)?;
                    let mut subsets = Vec::new();
                    for att in &co_doc.attachments {
                        subsets.push(SubsetHandle::from_ids(&base, &att.subset)?);
                    }
                    let co = ConeOffSpace::build(base, co_doc.rho, subsets)?;
                    hypersc_core::coneoff::materialize(&co, *rings)?.space
                }
                RotationSpaceDoc::Plain(space_doc) => FiniteLengthSpace::from_doc(space_doc)?,
            };
            let parse_perm = |m: &std::collections::BTreeMap<String, String>| -> anyhow::Result<Vec<usize>> {
                let mut p = vec![usize::MAX; space.len()];
                for (from, to) in m {
                    p[space.index_of(from)?] = space.index_of(to)?;
                }
                if p.iter().any(|&v| v == usize::MAX) {
                    anyhow::bail!("permutation does not cover every vertex");
                }
                Ok(p)
            };
            let mut pairs = Vec::new();
            for p in &doc.pairs {
                let apex = space.index_of(&p.apex)?;
                let subgroup: Vec<Vec<usize>> =
                    p.subgroup.iter().map(&parse_perm).collect::<Result<_, _>>()?;
                pairs.push((subgroup, apex));
            }
            let conjugators: Vec<Vec<usize>> =
                doc.conjugators.iter().map(&parse_perm).collect::<Result<_, _>>()?;
            let spec = RotationFamilySpec::new(space, pairs, doc.sigma, conjugators)?;
            let axioms = verify_rotation_axioms(&spec);
            let enumeration = enumerate_k_ball(&spec, *budget_words, *budget_displacement);
            let ft = fundamental_theorem_check(&spec, &enumeration);
            let mut stabilizers = Vec::new();
            for i in 0..spec.pairs.len() {
                stabilizers.push(stabilizer_check(&spec, &enumeration, i)?);
            }
            let all_ok = axioms.r1_holds
                && axioms.r2_holds
                && axioms.r3_holds
                && ft.holds
                && stabilizers.iter().all(|s| s.fixers_contained);
            let text_out = format!(
                "axioms: R1 {} R2 {} R3 {}\nK-ball: {} elements (complete: {})\nfundamental theorem: {} (scanned {}, vacuous {})\nstabilizers contained: {}",
                axioms.r1_holds,
                axioms.r2_holds,
                axioms.r3_holds,
                enumeration.elements.len(),
                enumeration.complete,
                ft.holds,
                ft.scanned,
                ft.vacuous,
                stabilizers.iter().all(|s| s.fixers_contained)
            );
            Ok(Outcome {
                check_failed: !all_ok,
                certified: Some(enumeration.complete),
                results: json!({
                    "axioms": to_value(&axioms),
                    "k_ball": {
                        "elements": enumeration.elements.len(),
                        "complete": enumeration.complete,
                        "pruned": enumeration.pruned,
                        "horizon_cut": enumeration.horizon_cut,
                    },
                    "fundamental_theorem": to_value(&ft),
                    "stabilizers": to_value(&stabilizers),
                }),
                warnings: vec![],
                text: text_out,
            })
        }
        Command::BurnsideParams { rho0, delta0, big_delta0, bold_delta } => {
            let rep = critical_exponent_search(*rho0, *delta0, *big_delta0, *bold_delta)?;
            let text_out = format!("n0 = {:?}\nln C^2 = {}", rep.n0, rep.ln_c_squared);
            Ok(Outcome {
                results: to_value(&rep),
                warnings: vec![],
                certified: None,
                check_failed: false,
                text: text_out,
            })
        }
        Command::GmBounds { rho, t, k, l, diam_theta } => {
            let rep = gm_embedding_bounds(*rho, *t, *k, *l, *diam_theta)?;
            let text_out = format!(
                "R = {} (ln {}), distortion coefficient = {}",
                rep.r_embed, rep.ln_r_embed, rep.distortion_coefficient
            );
            Ok(Outcome {
                results: to_value(&rep),
                warnings: vec![],
                certified: None,
                check_failed: false,
                text: text_out,
            })
        }
        Command::CartanHadamard { file, sigma } => {
            let text = read_input(file, hasher)?;
            let space = FiniteLengthSpace::load(&text)?;
            let sigma = parse_length(sigma)?;
            let prof = local_delta_profile(&space, sigma)?;
            let text_out = format!(
                "local delta = {}, global delta = {}\nprediction global <= 300 local: {}\n{}",
                prof.local_delta,
                prof.global.delta_four_point,
                prof.prediction_holds,
                prof.note
            );
            Ok(Outcome {
                results: to_value(&prof),
                warnings: vec![],
                certified: None,
                check_failed: false,
                text: text_out,
            })
        }
        Command::Mu { rho, grid } => {
            let rep = mu_bounds_check(*rho, *grid)?;
            let ok = rep.worst_lower_slack >= -1e-9
                && rep.worst_upper_slack >= -1e-9
                && rep.worst_arcsinh_slack >= -1e-9;
            let text_out = format!(
                "mu bounds on {} points: lower {}, upper {}, arcsinh {}",
                grid, rep.worst_lower_slack, rep.worst_upper_slack, rep.worst_arcsinh_slack
            );
            Ok(Outcome {
                check_failed: !ok,
                results: to_value(&rep),
                warnings: vec![],
                certified: None,
                text: text_out,
            })
        }
    }
}

#[derive(serde::Deserialize)]
struct ConeOffDoc {
    base: hypersc_core::space::SpaceDoc,
    rho: f64,
    attachments: Vec<AttachmentDoc>,
}

#[derive(serde::Deserialize)]
struct AttachmentDoc {
    subset: Vec<String>,
}

#[derive(serde::Deserialize)]
struct RotationDoc {
    space: RotationSpaceDoc,
    sigma: f64,
    pairs: Vec<RotationPairDoc>,
    #[serde(default)]
    conjugators: Vec<std::collections::BTreeMap<String, String>>,
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum RotationSpaceDoc {
    ConeOff(ConeOffDoc),
    Plain(hypersc_core::space::SpaceDoc),
}

#[derive(serde::Deserialize)]
struct RotationPairDoc {
    apex: String,
    subgroup: Vec<std::collections::BTreeMap<String, String>>,
}
