//! Command-line surface of the blob algebra engine.
//!
//! Every command produces a JSON report (schema version [`SCHEMA`]) and a
//! short human-readable rendering of it. A report carries an `ok` flag; the
//! binary exits with status 1 when it is false, and clap exits with status 2
//! on malformed flags.

pub mod cache;
pub mod render;
pub mod verify;

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use blobalg::bgg::{restriction_check, SignConvention};
use blobalg::cellmod::{
    cell_report, decomposition_column, decomposition_graded_dim, decomposition_row, simple_graded_dim, CellModule,
    ModuleStore,
};
use blobalg::combinatorics::{AlgebraConfig, Bipartition, Tableau};
use blobalg::geometry::{simple_basis_paths, GeometryContext, Path};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cache::MemoCache;
use crate::verify::{verify_config, VerifyOptions};

/// Version of every JSON report.
pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "blob", version, about = "Exact computations in graded blob algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags fixing the algebra.
#[derive(Debug, Clone, Args)]
pub struct AlgebraArgs {
    /// Number of strands.
    #[arg(long)]
    pub d: usize,
    /// Quantum characteristic.
    #[arg(long)]
    pub e: i64,
    /// Bicharge as `k1,k2` with `k1 < k2`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub kappa: (i64, i64),
}

/// Output flags shared by every command.
#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Print the JSON report instead of the table.
    #[arg(long)]
    pub json: bool,
    /// Write the output to a file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Persistent memo cache file.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignsArg {
    Displayed,
    Alternating,
}

impl From<SignsArg> for SignConvention {
    fn from(s: SignsArg) -> Self {
        match s {
            SignsArg::Displayed => SignConvention::Displayed,
            SignsArg::Alternating => SignConvention::Alternating,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderFormat {
    Svg,
    Ascii,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Standard tableaux of a shape with residues, degrees and reduced words.
    Std {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        lambda: Bipartition,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Basis paths and graded dimension of the simple module.
    Simple {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        lambda: Bipartition,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Gram matrix rank and radical of a cell module.
    Gram {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        lambda: Bipartition,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// BGG complex (alcove shapes) or two-term complex (wall shapes).
    Bgg {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        lambda: Bipartition,
        /// Sign pattern of the differentials.
        #[arg(long, value_enum, default_value = "displayed")]
        signs: SignsArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Restriction of the simple module to one strand fewer.
    Branch {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        lambda: Bipartition,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Graded decomposition numbers involving a shape.
    Decomp {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        lambda: Bipartition,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Runs every check for all shapes within the bounds.
    Verify {
        /// Largest number of strands.
        #[arg(long, default_value_t = 9)]
        d_max: usize,
        /// Quantum characteristics, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4, 5])]
        e: Vec<i64>,
        /// Bicharges `k1,k2`; all admissible ones when omitted.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        kappa: Vec<(i64, i64)>,
        /// Sign pattern of the BGG differentials.
        #[arg(long, value_enum, default_value = "displayed")]
        signs: SignsArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Draws a path in the Pascal triangle.
    Render {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Draw the initial path of this shape.
        #[arg(long, conflicts_with = "path")]
        lambda: Option<Bipartition>,
        /// Draw this path, given as a string of steps `1`/`2`.
        #[arg(long)]
        path: Option<String>,
        #[arg(long, value_enum, default_value = "svg")]
        format: RenderFormat,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let a = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((a, b))
}

/// What a command produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    /// Whether every invariant checked by the command held.
    pub ok: bool,
    pub report: Value,
    pub text: String,
    /// Where the rendered output should go, if not standard output.
    pub out: Option<PathBuf>,
    /// Print the JSON report rather than `text`.
    pub json: bool,
}

impl Outcome {
    /// The bytes the command writes.
    pub fn rendered(&self) -> String {
        if self.json {
            let mut s = serde_json::to_string_pretty(&self.report).expect("reports serialize");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }

    /// Writes the output to `--out` or returns it for standard output.
    pub fn emit(&self) -> Result<Option<String>> {
        let s = self.rendered();
        match &self.out {
            Some(p) => {
                fs::write(p, s).with_context(|| format!("writing {}", p.display()))?;
                Ok(None)
            }
            None => Ok(Some(s)),
        }
    }
}

fn config(alg: &AlgebraArgs) -> Result<AlgebraConfig> {
    Ok(AlgebraConfig::new(alg.d, alg.e, alg.kappa)?)
}

fn shape(cfg: &AlgebraConfig, lambda: &Bipartition) -> Result<Bipartition> {
    lambda.check_size(cfg)?;
    Ok(*lambda)
}

fn header(command: &str, cfg: &AlgebraConfig, lambda: Option<&Bipartition>) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("d".into(), json!(cfg.d()));
    m.insert("e".into(), json!(cfg.e()));
    m.insert("kappa".into(), json!([cfg.kappa().0, cfg.kappa().1]));
    if let Some(l) = lambda {
        m.insert("lambda".into(), json!(l.to_string()));
    }
    m
}

fn steps_string(p: &Path) -> String {
    p.steps().iter().map(|s| char::from(b'0' + s)).collect()
}

/// Runs `f` on a store seeded from, and written back to, the optional cache.
fn with_store<T>(
    cfg: AlgebraConfig,
    cache: &Option<PathBuf>,
    f: impl FnOnce(&mut ModuleStore) -> Result<T>,
) -> Result<T> {
    let mut store = ModuleStore::new(cfg);
    let mut cache = cache.as_deref().map(MemoCache::open).transpose()?;
    if let Some(c) = &cache {
        c.seed(&mut store)?;
    }
    let out = f(&mut store)?;
    if let Some(c) = &mut cache {
        c.absorb(&store);
        c.save()?;
    }
    Ok(out)
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Std { alg, lambda, output } => cmd_std(&alg, &lambda, output),
        Command::Simple { alg, lambda, output } => cmd_simple(&alg, &lambda, output),
        Command::Gram { alg, lambda, output } => cmd_gram(&alg, &lambda, output),
        Command::Bgg { alg, lambda, signs, output } => cmd_bgg(&alg, &lambda, signs.into(), output),
        Command::Branch { alg, lambda, output } => cmd_branch(&alg, &lambda, output),
        Command::Decomp { alg, lambda, output } => cmd_decomp(&alg, &lambda, output),
        Command::Verify { d_max, e, kappa, signs, output } => cmd_verify(d_max, &e, &kappa, signs.into(), output),
        Command::Render { alg, lambda, path, format, out } => cmd_render(&alg, lambda, path, format, out),
    }
}

pub fn cmd_std(alg: &AlgebraArgs, lambda: &Bipartition, output: OutputArgs) -> Result<Outcome> {
    let cfg = config(alg)?;
    let lambda = shape(&cfg, lambda)?;
    let mut text = format!("standard tableaux of {lambda} (d={}, e={}, κ={:?})\n", cfg.d(), cfg.e(), cfg.kappa());
    let mut rows = Vec::new();
    for t in Tableau::enumerate(lambda) {
        let (c1, c2) = t.columns();
        let res = t.residue_sequence(&cfg);
        let deg = t.degree(&cfg);
        let word = t.reduced_word();
        text += &format!("  {t}  res {res:?}  deg {deg:+}  word {:?}\n", word.letters());
        rows.push(json!({
            "tableau": [c1, c2],
            "path": steps_string(&Path::from(t)),
            "residues": res,
            "degree": deg,
            "reduced_word": word.letters(),
        }));
    }
    let module = CellModule::new(&cfg, lambda)?;
    let mut report = header("std", &cfg, Some(&lambda));
    report.insert("dim".into(), json!(module.dim()));
    report.insert("dim_t".into(), serde_json::to_value(module.graded_dim())?);
    report.insert("tableaux".into(), json!(rows));
    report.insert("ok".into(), json!(true));
    Ok(Outcome { ok: true, report: Value::Object(report), text, out: output.out, json: output.json })
}

pub fn cmd_simple(alg: &AlgebraArgs, lambda: &Bipartition, output: OutputArgs) -> Result<Outcome> {
    let cfg = config(alg)?;
    let lambda = shape(&cfg, lambda)?;
    let ctx = GeometryContext::new(cfg);
    let paths = simple_basis_paths(&ctx, &lambda);
    let dim_t = simple_graded_dim(&ctx, &lambda);
    let ok = dim_t.is_bar_invariant() && dim_t.eval_at_1() == paths.len() as i64;
    let mut text = format!("L({lambda}): dim {}  dim_t {dim_t}  length {}\n", paths.len(), ctx.length(&lambda));
    for p in &paths {
        text += &format!("  {}  deg {:+}\n", steps_string(p), p.degree(&ctx));
    }
    let mut report = header("simple", &cfg, Some(&lambda));
    report.insert("length".into(), json!(ctx.length(&lambda).to_string()));
    report.insert("dim".into(), json!(paths.len()));
    report.insert("dim_t".into(), serde_json::to_value(&dim_t)?);
    report.insert("basis".into(), json!(paths.iter().map(steps_string).collect::<Vec<_>>()));
    report.insert("ok".into(), json!(ok));
    Ok(Outcome { ok, report: Value::Object(report), text, out: output.out, json: output.json })
}

pub fn cmd_gram(alg: &AlgebraArgs, lambda: &Bipartition, output: OutputArgs) -> Result<Outcome> {
    let cfg = config(alg)?;
    let lambda = shape(&cfg, lambda)?;
    let (dim, rank, radical, paths) = with_store(cfg, &output.cache, |store| {
        let dim = store.module(lambda)?.dim();
        let rank = store.gram_rank(&lambda)?;
        let radical = store.radical_dim(&lambda)?;
        let paths = simple_basis_paths(store.ctx(), &lambda).len();
        Ok((dim, rank, radical, paths))
    })?;
    let ok = rank == paths;
    let text = format!("Δ({lambda}): dim {dim}  gram rank {rank}  radical {radical}  simple paths {paths}\n");
    let mut report = header("gram", &cfg, Some(&lambda));
    report.insert("dim".into(), json!(dim));
    report.insert("rank".into(), json!(rank));
    report.insert("radical_dim".into(), json!(radical));
    report.insert("simple_paths".into(), json!(paths));
    report.insert("ok".into(), json!(ok));
    if !ok {
        report.insert("witness".into(), json!(format!("gram rank {rank} differs from path count {paths}")));
    }
    Ok(Outcome { ok, report: Value::Object(report), text, out: output.out, json: output.json })
}

pub fn cmd_bgg(alg: &AlgebraArgs, lambda: &Bipartition, signs: SignConvention, output: OutputArgs) -> Result<Outcome> {
    let cfg = config(alg)?;
    let lambda = shape(&cfg, lambda)?;
    let (body, checks) = with_store(cfg, &output.cache, |store| {
        let checks = verify::check_bgg(store, &lambda, signs)?;
        let body = if store.ctx().length(&lambda).is_wall() {
            serde_json::to_value(store.build_wall_complex(&lambda)?)?
        } else {
            serde_json::to_value(store.build_complex_with(&lambda, signs)?.summary()?)?
        };
        Ok((body, checks))
    })?;
    let ok = checks.iter().all(|c| c.ok);
    let mut text = format!("complex of {lambda}:\n{}\n", serde_json::to_string(&body)?);
    for c in &checks {
        text += &format!(
            "  [{}] {}{}\n",
            if c.ok { "ok" } else { "FAIL" },
            c.name,
            c.witness.as_ref().map(|w| format!(": {w}")).unwrap_or_default()
        );
    }
    let mut report = header("bgg", &cfg, Some(&lambda));
    report.insert("complex".into(), body);
    report.insert("checks".into(), serde_json::to_value(&checks)?);
    report.insert("ok".into(), json!(ok));
    Ok(Outcome { ok, report: Value::Object(report), text, out: output.out, json: output.json })
}

pub fn cmd_branch(alg: &AlgebraArgs, lambda: &Bipartition, output: OutputArgs) -> Result<Outcome> {
    let cfg = config(alg)?;
    let lambda = shape(&cfg, lambda)?;
    if cfg.d() < 2 {
        bail!("branching needs d ≥ 2");
    }
    let b = restriction_check(&cfg, &lambda)?;
    let ok = b.holds();
    let text = format!(
        "L({lambda}): dim {}  Σ over removable nodes {}  Σ without outer-wall removals {}\n",
        b.dim, b.restricted_sum, b.refined_sum
    );
    let mut report = header("branch", &cfg, Some(&lambda));
    report.insert("branching".into(), serde_json::to_value(&b)?);
    report.insert("ok".into(), json!(ok));
    Ok(Outcome { ok, report: Value::Object(report), text, out: output.out, json: output.json })
}

pub fn cmd_decomp(alg: &AlgebraArgs, lambda: &Bipartition, output: OutputArgs) -> Result<Outcome> {
    let cfg = config(alg)?;
    let lambda = shape(&cfg, lambda)?;
    let ctx = GeometryContext::new(cfg);
    let column = decomposition_column(&ctx, &lambda);
    let row = decomposition_row(&ctx, &lambda);
    let cell_t = CellModule::new(&cfg, lambda)?.graded_dim();
    let sum_t = decomposition_graded_dim(&ctx, &lambda);
    let ok = cell_t == sum_t;
    let fmt = |v: &[(Bipartition, exactla::LaurentPoly)]| {
        v.iter().map(|(s, p)| format!("[{s}] {p}")).collect::<Vec<_>>().join(", ")
    };
    let text = format!(
        "[Δ(μ) : L({lambda})] over μ ⊵ {lambda}: {}\n[Δ({lambda}) : L(ν)] over ν ⊴ {lambda}: {}\n",
        fmt(&column),
        fmt(&row)
    );
    let entries = |v: &[(Bipartition, exactla::LaurentPoly)]| -> Result<Value> {
        Ok(Value::Array(
            v.iter()
                .map(|(s, p)| Ok(json!({"shape": s.to_string(), "length": ctx.length(s).to_string(), "value": serde_json::to_value(p)?})))
                .collect::<Result<Vec<_>>>()?,
        ))
    };
    let mut report = header("decomp", &cfg, Some(&lambda));
    report.insert("column".into(), entries(&column)?);
    report.insert("row".into(), entries(&row)?);
    report.insert("ok".into(), json!(ok));
    Ok(Outcome { ok, report: Value::Object(report), text, out: output.out, json: output.json })
}

pub fn cmd_verify(
    d_max: usize,
    es: &[i64],
    kappas: &[(i64, i64)],
    signs: SignConvention,
    output: OutputArgs,
) -> Result<Outcome> {
    let opts = VerifyOptions { signs, ..VerifyOptions::default() };
    let mut cache = output.cache.as_deref().map(MemoCache::open).transpose()?;
    let mut verdicts = Vec::new();
    for &e in es {
        let ks: Vec<(i64, i64)> = if kappas.is_empty() { AlgebraConfig::standard_kappas(e) } else { kappas.to_vec() };
        for &kappa in &ks {
            for d in 1..=d_max {
                let cfg = AlgebraConfig::new(d, e, kappa)?;
                let mut store = ModuleStore::new(cfg);
                if let Some(c) = &cache {
                    c.seed(&mut store)?;
                }
                verdicts.extend(verify_config(&mut store, &opts)?);
                if let Some(c) = &mut cache {
                    c.absorb(&store);
                }
            }
        }
    }
    if let Some(c) = &mut cache {
        c.save()?;
    }
    let ok = verdicts.iter().all(|v| v.ok());
    let mut text = String::new();
    for v in &verdicts {
        let failed: Vec<&verify::Check> = v.checks.iter().filter(|c| !c.ok).collect();
        text += &format!(
            "{} d={} e={} κ=({},{}) {}: {} checks",
            if failed.is_empty() { "PASS" } else { "FAIL" },
            v.d,
            v.e,
            v.kappa.0,
            v.kappa.1,
            v.lambda,
            v.checks.len()
        );
        if let Some(c) = failed.first() {
            text += &format!("; {} failed, first: {}: {}", failed.len(), c.name, c.witness.clone().unwrap_or_default());
        }
        text.push('\n');
    }
    let first_failure = verdicts.iter().find_map(|v| {
        v.checks.iter().find(|c| !c.ok).map(|c| {
            json!({"d": v.d, "e": v.e, "kappa": [v.kappa.0, v.kappa.1], "lambda": v.lambda, "check": c.name, "witness": c.witness})
        })
    });
    text += &format!("overall: {}\n", if ok { "PASS" } else { "FAIL" });
    let report = json!({
        "schema": SCHEMA,
        "command": "verify",
        "d_max": d_max,
        "e": es,
        "signs": signs,
        "shapes": verdicts.len(),
        "failed_shapes": verdicts.iter().filter(|v| !v.ok()).count(),
        "first_failure": first_failure,
        "results": verdicts,
        "ok": ok,
    });
    Ok(Outcome { ok, report, text, out: output.out, json: output.json })
}

pub fn cmd_render(
    alg: &AlgebraArgs,
    lambda: Option<Bipartition>,
    path: Option<String>,
    format: RenderFormat,
    out: Option<PathBuf>,
) -> Result<Outcome> {
    let cfg = config(alg)?;
    let ctx = GeometryContext::new(cfg);
    let p = match (lambda, path) {
        (Some(l), None) => Path::from(Tableau::initial(shape(&cfg, &l)?)),
        (None, Some(s)) => {
            let steps: Vec<u8> = s
                .chars()
                .map(|c| match c {
                    '1' => Ok(1),
                    '2' => Ok(2),
                    _ => Err(anyhow!("path steps must be 1 or 2, got `{c}`")),
                })
                .collect::<Result<_>>()?;
            if steps.len() != cfg.d() {
                bail!("path has {} steps but d = {}", steps.len(), cfg.d());
            }
            Path::from_steps(&steps)?
        }
        _ => bail!("give exactly one of --lambda and --path"),
    };
    let text = match format {
        RenderFormat::Svg => render::svg(&ctx, &p),
        RenderFormat::Ascii => render::ascii(&ctx, &p),
    };
    let mut report = header("render", &cfg, Some(&p.end()));
    report.insert("path".into(), json!(steps_string(&p)));
    report.insert("ok".into(), json!(true));
    Ok(Outcome { ok: true, report: Value::Object(report), text, out, json: false })
}

/// The JSON report of `cell_report`, used by library callers that want the
/// per-shape summary without going through a subcommand.
pub fn shape_summary(cfg: &AlgebraConfig, lambda: &Bipartition) -> Result<Value> {
    let ctx = GeometryContext::new(*cfg);
    let mut m = header("summary", cfg, Some(lambda));
    m.insert("report".into(), serde_json::to_value(cell_report(&ctx, lambda)?)?);
    Ok(Value::Object(m))
}
