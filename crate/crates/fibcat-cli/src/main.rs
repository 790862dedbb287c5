//! Command-line surface: validate category and functor files, run builders,
//! classify candidates, replay the built-in example suite, and search for
//! separating counterexamples.
//!
//! Exit codes: 0 success, 1 input error, 2 internal audit violation,
//! 3 suite failure.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use fibcat::builders::{build, build_category, build_fibration, Artifact, FibrationArtifact};
use fibcat::classify::report::{classify_object, ClassifyError, ClassifyOptions, GenericReport};
use fibcat::classify::search::{counterexample_search, SearchBounds, MAX_SEARCH_BOUND};
use fibcat::fibration::{CoverClass, MonoClass};
use fibcat::fincat::{FinCat, FinFunctor};
use fibcat::io::{CategoryFile, CategoryRef, FunctorFile};
use fibcat::suite;

#[derive(Parser)]
#[command(name = "fibcat", about = "Finite fibered categories and their generic objects")]
struct Cli {
    /// Emit machine-readable JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Workspace file mapping artifact names to builder expressions.
    #[arg(long, global = true)]
    workspace: Option<PathBuf>,
    /// Worker threads for classification and search (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a category or functor file, or a builder expression.
    Validate { input: String },
    /// Materialize a builder expression and print its size summary.
    Build {
        expr: String,
        /// Store the expression under this name in the workspace file.
        #[arg(long)]
        name: Option<String>,
    },
    /// Classify an object of a fibration against every applicable notion.
    Classify {
        /// Builder expression or workspace artifact name.
        fibration: String,
        /// Object index in the total category; defaults to the builder's
        /// distinguished object.
        object: Option<usize>,
        /// Drop the canonical cleavage even when the builder provides one.
        #[arg(long)]
        no_cleavage: bool,
        /// Mono class for the acyclicity flag: all | none.
        #[arg(long, default_value = "all")]
        monos: String,
        /// Cover class for the weak-generic flag: regular | epis | none.
        #[arg(long, default_value = "regular")]
        covers: String,
    },
    /// Run the built-in example suite and print a pass/fail matrix.
    PaperExamples,
    /// Search builder fibrations for separating counterexamples.
    Search {
        /// Skip fiber categories with more morphisms than this.
        #[arg(long, default_value_t = 6)]
        max_cat_morphisms: usize,
        /// Leave out the fixed base builders (arrow fragment, subfib/stack
        /// over finite sets and group actions).
        #[arg(long)]
        no_base_builders: bool,
    },
}

/// Artifact names persisted across invocations.
#[derive(Default, serde::Serialize, serde::Deserialize)]
struct Workspace {
    artifacts: BTreeMap<String, String>,
}

impl Workspace {
    fn load(path: &Path) -> Result<Workspace> {
        if !path.exists() {
            return Ok(Workspace::default());
        }
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading workspace {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing workspace {}", path.display()))
    }

    fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)
            .with_context(|| format!("writing workspace {}", path.display()))
    }
}

fn resolve_expr(cli: &Cli, token: &str) -> Result<String> {
    if let Some(ws_path) = &cli.workspace {
        let ws = Workspace::load(ws_path)?;
        if let Some(expr) = ws.artifacts.get(token) {
            return Ok(expr.clone());
        }
    }
    Ok(token.to_string())
}

fn category_summary(cat: &FinCat) -> String {
    format!(
        "category ({} objects, {} morphisms)",
        cat.n_objects(),
        cat.n_morphisms()
    )
}

fn fibration_summary(f: &FibrationArtifact) -> String {
    let fib = &f.fib;
    let mut s = format!(
        "fibration (total {} objects / {} morphisms over {} objects / {} morphisms)",
        fib.total().n_objects(),
        fib.total().n_morphisms(),
        fib.base().n_objects(),
        fib.base().n_morphisms()
    );
    if !fib.is_total_fibration() {
        s.push_str("; cartesian lifts incomplete");
    }
    if f.canonical.is_some() {
        s.push_str("; canonical cleavage");
    }
    if let Some(t) = f.distinguished {
        s.push_str(&format!("; distinguished object {t}"));
    }
    s
}

fn load_category_ref(cli: &Cli, r: &CategoryRef) -> Result<std::sync::Arc<FinCat>> {
    match r {
        CategoryRef::Named(expr) => Ok(build_category(&resolve_expr(cli, expr)?)?),
        CategoryRef::Inline(file) => {
            let raw = file.to_raw()?;
            Ok(fibcat::fincat::validate_category(&raw)?)
        }
    }
}

fn cmd_validate(cli: &Cli, input: &str) -> Result<String> {
    let path = Path::new(input);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if value.get("objMap").is_some() || value.get("dom").is_some() {
            let file: FunctorFile = serde_json::from_value(value)?;
            let dom = load_category_ref(cli, &file.dom)?;
            let cod = load_category_ref(cli, &file.cod)?;
            let f = FinFunctor::validate(dom, cod, file.obj_map, file.mor_map)?;
            return Ok(format!(
                "OK: functor ({} objects, {} morphisms mapped)",
                f.dom().n_objects(),
                f.dom().n_morphisms()
            ));
        }
        let file: CategoryFile = serde_json::from_value(value)?;
        let cat = fibcat::fincat::validate_category(&file.to_raw()?)?;
        return Ok(format!("OK: {}", category_summary(&cat)));
    }
    match build(&resolve_expr(cli, input)?)? {
        Artifact::Category(cat) => Ok(format!("OK: {}", category_summary(&cat))),
        Artifact::Fibration(f) => Ok(format!("OK: {}", fibration_summary(&f))),
    }
}

fn cmd_build(cli: &Cli, expr: &str, name: Option<&str>) -> Result<String> {
    let resolved = resolve_expr(cli, expr)?;
    let summary = match build(&resolved)? {
        Artifact::Category(cat) => category_summary(&cat),
        Artifact::Fibration(f) => fibration_summary(&f),
    };
    if let Some(name) = name {
        let ws_path = cli
            .workspace
            .as_ref()
            .ok_or_else(|| anyhow!("--name requires --workspace"))?;
        let mut ws = Workspace::load(ws_path)?;
        ws.artifacts.insert(name.to_string(), resolved.clone());
        ws.save(ws_path)?;
    }
    Ok(format!("{resolved}: {summary}"))
}

/// How the candidate's verdicts line up with the terminology used elsewhere.
const ROSETTA: [(&str, &str); 6] = [
    ("generic", "Jacobs: weak generic; Phoa: generic; Hermida: generic; Streicher: generic"),
    ("skeletal generic", "Jacobs: generic"),
    (
        "gaunt generic",
        "Jacobs: strong generic; Phoa: skeletal generic; Hermida: strong generic; Streicher: classifying",
    ),
    ("split generic", "relative to the supplied splitting"),
    ("acyclic generic", "realignment along the mono class"),
    ("weak generic", "Streicher: weak generic; cover-cartesian descent"),
];

fn render_report(expr: &str, report: &GenericReport, elapsed_ms: u128, as_json: bool) -> String {
    if as_json {
        let flag = |f: &Option<&fibcat::classify::predicates::FlagResult>| match f {
            Some(r) => json!(r.holds),
            None => serde_json::Value::Null,
        };
        let witness = |f: &Option<&fibcat::classify::predicates::FlagResult>| match f {
            Some(r) => serde_json::to_value(&r.witness).unwrap_or(serde_json::Value::Null),
            None => serde_json::Value::Null,
        };
        let fields = [
            ("generic", Some(&report.generic)),
            ("skeletal", Some(&report.skeletal)),
            ("gaunt", Some(&report.gaunt)),
            ("split", report.split.as_ref()),
            ("acyclic", report.acyclic.as_ref()),
            ("weakStack", report.weak_stack.as_ref()),
        ];
        let flags: serde_json::Map<String, serde_json::Value> = fields
            .iter()
            .map(|(name, f)| (name.to_string(), flag(f)))
            .collect();
        let witnesses: serde_json::Map<String, serde_json::Value> = fields
            .iter()
            .map(|(name, f)| (name.to_string(), witness(f)))
            .collect();
        return serde_json::to_string_pretty(&json!({
            "fibration": expr,
            "candidate": report.candidate,
            "flags": flags,
            "witnesses": witnesses,
            "timingMs": elapsed_ms,
        }))
        .expect("report serializes");
    }
    let mut out = format!("candidate object {} of {}\n", report.candidate, expr);
    let rows: [(usize, Option<&fibcat::classify::predicates::FlagResult>); 6] = [
        (0, Some(&report.generic)),
        (1, Some(&report.skeletal)),
        (2, Some(&report.gaunt)),
        (3, report.split.as_ref()),
        (4, report.acyclic.as_ref()),
        (5, report.weak_stack.as_ref()),
    ];
    for (idx, f) in rows {
        let (name, synonyms) = ROSETTA[idx];
        match f {
            Some(r) => {
                let verdict = if r.holds { "yes" } else { "no " };
                out.push_str(&format!("  {name:<17} {verdict}  (= {synonyms})\n"));
                if let Some(w) = &r.witness {
                    out.push_str(&format!("    witness: {}\n", serde_json::to_string(w).unwrap()));
                }
            }
            None => out.push_str(&format!("  {name:<17} -    (not evaluated)\n")),
        }
    }
    out.push_str(&format!("  checked in {elapsed_ms} ms"));
    out
}

fn cmd_classify(
    cli: &Cli,
    fibration: &str,
    object: Option<usize>,
    no_cleavage: bool,
    monos: &str,
    covers: &str,
) -> Result<std::result::Result<String, String>> {
    let expr = resolve_expr(cli, fibration)?;
    let artifact = build_fibration(&expr)?;
    let candidate = object
        .or(artifact.distinguished)
        .ok_or_else(|| anyhow!("no object given and the builder has no distinguished object"))?;
    if candidate >= artifact.fib.total().n_objects() {
        bail!(
            "object index {candidate} out of range ({} objects)",
            artifact.fib.total().n_objects()
        );
    }
    let mono_class = match monos {
        "all" => Some(MonoClass::all_monos(artifact.fib.base())),
        "none" => None,
        other => bail!("unknown mono class `{other}` (expected all | none)"),
    };
    let cover_class = match covers {
        "regular" => Some(CoverClass::regular_epis(artifact.fib.base())),
        "epis" => Some(CoverClass::all_epis(artifact.fib.base())),
        "none" => None,
        other => bail!("unknown cover class `{other}` (expected regular | epis | none)"),
    };
    let start = std::time::Instant::now();
    let opts = ClassifyOptions {
        cleavage: if no_cleavage { None } else { artifact.canonical.as_ref() },
        monos: mono_class.as_ref(),
        covers: cover_class.as_ref(),
    };
    match classify_object(&artifact.fib, candidate, opts) {
        Ok(report) => Ok(Ok(render_report(
            &expr,
            &report,
            start.elapsed().as_millis(),
            cli.json,
        ))),
        Err(ClassifyError::ImplicationViolated(v)) => Ok(Err(format!("audit violation: {v}"))),
        Err(ClassifyError::NotSplitCleavage(e)) => Err(e.into()),
    }
}

fn cmd_paper_examples(as_json: bool) -> (String, bool) {
    let outcomes = suite::run_all();
    let all_pass = outcomes.iter().all(|o| o.pass);
    if as_json {
        (
            serde_json::to_string_pretty(&outcomes).expect("outcomes serialize"),
            all_pass,
        )
    } else {
        let mut out = String::new();
        for o in &outcomes {
            let verdict = if o.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{verdict} [{}] ({} ms)\n      {}\n",
                o.anchor, o.millis, o.details
            ));
        }
        out.push_str(if all_pass {
            "all checks passed"
        } else {
            "SUITE FAILURE"
        });
        (out, all_pass)
    }
}

fn cmd_search(
    as_json: bool,
    max_cat_morphisms: usize,
    no_base_builders: bool,
) -> Result<std::result::Result<String, String>> {
    if max_cat_morphisms > MAX_SEARCH_BOUND {
        bail!("bounds too large: max_cat_morphisms {max_cat_morphisms} exceeds {MAX_SEARCH_BOUND}");
    }
    let catalogue = match counterexample_search(SearchBounds {
        max_fiber_morphisms: max_cat_morphisms,
        base_builders: !no_base_builders,
    }) {
        Ok(c) => c,
        Err(ClassifyError::ImplicationViolated(v)) => {
            return Ok(Err(format!("audit violation: {v}")))
        }
        Err(e) => return Err(e.into()),
    };
    if as_json {
        return Ok(Ok(serde_json::to_string_pretty(&catalogue)?));
    }
    let mut out = format!(
        "searched {} fibrations, {} objects classified\n",
        catalogue.fibrations_searched.len(),
        catalogue.objects_classified
    );
    for entry in &catalogue.entries {
        match &entry.example {
            Some(ex) => out.push_str(&format!(
                "{:<9} without {:<9} : {} object {}\n",
                entry.have.name(),
                entry.lack.name(),
                ex.fibration,
                ex.object
            )),
            None => out.push_str(&format!(
                "{:<9} without {:<9} : none within bounds\n",
                entry.have.name(),
                entry.lack.name()
            )),
        }
    }
    Ok(Ok(out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let result: Result<(String, u8)> = match &cli.command {
        Command::Validate { input } => cmd_validate(&cli, input).map(|s| (s, 0)),
        Command::Build { expr, name } => cmd_build(&cli, expr, name.as_deref()).map(|s| (s, 0)),
        Command::Classify {
            fibration,
            object,
            no_cleavage,
            monos,
            covers,
        } => cmd_classify(&cli, fibration, *object, *no_cleavage, monos, covers).map(|r| match r {
            Ok(s) => (s, 0),
            Err(audit) => (audit, 2),
        }),
        Command::PaperExamples => {
            let (out, all_pass) = cmd_paper_examples(cli.json);
            Ok((out, if all_pass { 0 } else { 3 }))
        }
        Command::Search {
            max_cat_morphisms,
            no_base_builders,
        } => cmd_search(cli.json, *max_cat_morphisms, *no_base_builders).map(|r| match r {
            Ok(s) => (s, 0),
            Err(audit) => (audit, 2),
        }),
    };
    match result {
        Ok((out, code)) => {
            println!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
