use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rtl_core::batch::{run_batch, Formula, Job};
use rtl_core::ccs::DEFAULT_MAX_STATES;
use rtl_core::checker::{oracle_check, Verdict};
use rtl_core::criteria::{BlockSet, CompletenessCriterion, TaskSet};
use rtl_core::dot::to_dot;
use rtl_core::json::LtsFile;
use rtl_core::logic::{parse_ctl, parse_ltl, read_formula_file};
use rtl_core::lts::{validate_ltsc, Ltsc};
use rtl_core::model::{ModelKind, Source};
use rtl_core::petri::validate_structural_conflict;
use serde_json::{json, Value};

/// `println!` that exits quietly when stdout is closed, e.g. by `| head`.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(141);
            }
            return Err(e.into());
        }
    }};
}

#[derive(Parser)]
#[command(name = "rtl", version, about = "Reactive LTL/CTL model checking under progress, justness and fairness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a judgement for one formula or every formula of a file.
    Check(CheckArgs),
    /// Explore a model and write it as explicit LTS JSON and/or DOT.
    Explore(ExploreArgs),
    /// Check the structural-conflict condition (nets) or the LTSC axioms.
    Validate(ValidateArgs),
    /// Bounded brute-force judgement by path enumeration.
    Oracle(OracleArgs),
}

#[derive(Copy, Clone, ValueEnum)]
enum Kind {
    Ccs,
    Net,
    Lts,
}

impl From<Kind> for ModelKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Ccs => ModelKind::Ccs,
            Kind::Net => ModelKind::Net,
            Kind::Lts => ModelKind::Lts,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Logic {
    Ltl,
    Ctl,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_name = "FILE")]
    model: PathBuf,
    /// Model type; guessed from the extension when absent.
    #[arg(long = "type", value_enum)]
    kind: Option<Kind>,
    #[arg(long, value_name = "INT", default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
}

impl ModelArgs {
    fn source(&self) -> Result<Source> {
        Source::read(&self.model, self.kind.map(Into::into)).with_context(|| format!("loading {}", self.model.display()))
    }

    fn load(&self) -> Result<Ltsc> {
        Ok(self.source()?.explore(self.max_states)?)
    }
}

#[derive(Args)]
struct JudgementArgs {
    /// top, progress, justness, wf or sf.
    #[arg(long, default_value = "progress")]
    cc: String,
    /// Blockable actions, comma separated.
    #[arg(long, value_delimiter = ',')]
    block: Vec<String>,
    /// Task file for wf/sf.
    #[arg(long, value_name = "FILE", conflicts_with = "tasks_by_label")]
    tasks: Option<PathBuf>,
    /// One task per visible label.
    #[arg(long)]
    tasks_by_label: bool,
}

impl JudgementArgs {
    fn resolve(&self, ltsc: &Ltsc) -> Result<(CompletenessCriterion, BlockSet)> {
        let tasks = if let Some(path) = &self.tasks {
            let text = read(path)?;
            Some(TaskSet::from_json(&text, ltsc)?)
        } else if self.tasks_by_label {
            Some(TaskSet::by_label(ltsc))
        } else {
            None
        };
        let cc = CompletenessCriterion::from_name(&self.cc, tasks)?;
        let block = BlockSet::new(self.block.iter().filter(|b| !b.is_empty()).cloned())?;
        Ok((cc, block))
    }
}

#[derive(Args)]
struct FormulaArgs {
    #[arg(long, conflicts_with = "formula_file")]
    formula: Option<String>,
    /// One formula per line, optionally `NAME: formula`; `#` starts a comment.
    #[arg(long, value_name = "FILE")]
    formula_file: Option<PathBuf>,
}

impl FormulaArgs {
    /// `(name, text)` pairs.
    fn formulas(&self) -> Result<Vec<(Option<String>, String)>> {
        match (&self.formula, &self.formula_file) {
            (Some(f), _) => Ok(vec![(None, f.clone())]),
            (None, Some(path)) => {
                let lines = read_formula_file(&read(path)?);
                if lines.is_empty() {
                    bail!("{} contains no formulas", path.display());
                }
                Ok(lines.into_iter().map(|l| (l.name, l.text)).collect())
            }
            (None, None) => bail!("pass --formula or --formula-file"),
        }
    }
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    formula: FormulaArgs,
    #[arg(long, value_enum, default_value = "ltl")]
    logic: Logic,
    #[command(flatten)]
    judgement: JudgementArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExploreArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Explicit LTS JSON output; stdout when neither this nor --dot is given.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Path length for the LTSC closure check.
    #[arg(long, value_name = "INT", default_value_t = 3)]
    depth: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    formula: String,
    #[command(flatten)]
    judgement: JudgementArgs,
    /// Prefix and cycle bounds.
    #[arg(long, value_name = "P,C", default_value = "4,4")]
    bounds: String,
    #[arg(long)]
    json: bool,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn check(args: &CheckArgs) -> Result<bool> {
    let ltsc = args.model.load()?;
    let (cc, block) = args.judgement.resolve(&ltsc)?;
    let formulas = args.formula.formulas()?;
    let mut jobs = Vec::new();
    for (_, text) in &formulas {
        let formula = match args.logic {
            Logic::Ltl => Formula::Ltl(parse_ltl(text).with_context(|| format!("in formula {text:?}"))?),
            Logic::Ctl => Formula::Ctl(parse_ctl(text).with_context(|| format!("in formula {text:?}"))?),
        };
        jobs.push(Job {
            formula,
            cc: cc.clone(),
            block: block.clone(),
        });
    }
    let verdicts = run_batch(&ltsc, &jobs).into_iter().collect::<Result<Vec<Verdict>, _>>()?;
    let all_hold = verdicts.iter().all(|v| v.holds);
    if args.json {
        let mut out: Vec<Value> = formulas
            .iter()
            .zip(&verdicts)
            .map(|((name, text), v)| {
                let mut j = v.to_json(&ltsc, &cc, &block);
                j["formula"] = json!(text);
                if let Some(n) = name {
                    j["name"] = json!(n);
                }
                j
            })
            .collect();
        let doc = if out.len() == 1 { out.pop().unwrap() } else { Value::Array(out) };
        out!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        for ((name, text), v) in formulas.iter().zip(&verdicts) {
            let label = name.as_deref().map_or_else(|| text.clone(), |n| format!("{n}: {text}"));
            let verdict = if v.holds { "holds" } else { "fails" };
            out!("{label}: {verdict} ({cc}, B={block})");
            if let Some(w) = &v.counterexample {
                for line in w.render(&ltsc).lines() {
                    out!("  {line}");
                }
            }
        }
    }
    Ok(all_hold)
}

fn explore(args: &ExploreArgs) -> Result<bool> {
    let ltsc = args.model.load()?;
    let text = serde_json::to_string_pretty(&LtsFile::from_ltsc(&ltsc))?;
    match &args.out {
        Some(path) => std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
        None if args.dot.is_none() => out!("{text}"),
        None => {}
    }
    if let Some(path) = &args.dot {
        std::fs::write(path, to_dot(&ltsc)).with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!("{} states, {} transitions", ltsc.num_states(), ltsc.num_transitions());
    Ok(true)
}

fn validate(args: &ValidateArgs) -> Result<bool> {
    let source = args.model.source()?;
    if let Source::Net(net) = &source {
        let report = validate_structural_conflict(net, args.model.max_states)?;
        for v in &report.violations {
            out!("conflict: {v}");
        }
        out!("{} reachable markings, {} violations", report.markings, report.violations.len());
        if !report.is_ok() {
            return Ok(false);
        }
    }
    let ltsc = source.explore(args.model.max_states)?;
    let report = validate_ltsc(&ltsc, args.depth);
    for t in &report.irreflexivity {
        out!("transition {} is concurrent with itself", t.0);
    }
    for v in &report.closure {
        let path: Vec<String> = v.path.iter().map(|t| t.0.to_string()).collect();
        out!("closure: transition {} has no variant after [{}]", v.transition.0, path.join(", "));
    }
    out!(
        "{} states, {} transitions, {} LTSC violations",
        ltsc.num_states(),
        ltsc.num_transitions(),
        report.irreflexivity.len() + report.closure.len()
    );
    Ok(report.is_ok())
}

fn oracle(args: &OracleArgs) -> Result<bool> {
    let (p, c) = args
        .bounds
        .split_once(',')
        .context("--bounds expects PREFIX,CYCLE")?;
    let (prefix_bound, cycle_bound): (usize, usize) = (p.trim().parse()?, c.trim().parse()?);
    if cycle_bound == 0 {
        bail!("the cycle bound must be at least 1");
    }
    let ltsc = args.model.load()?;
    let (cc, block) = args.judgement.resolve(&ltsc)?;
    if let Some(tasks) = cc.tasks() {
        tasks.validate(&ltsc)?;
    }
    let phi = parse_ltl(&args.formula)?;
    let r = oracle_check(&ltsc, &phi, &cc, &block, prefix_bound, cycle_bound);
    if args.json {
        let doc = json!({
            "verdict": if r.holds_within_bound { "holds-within-bound" } else { "fails" },
            "criterion": cc.name(),
            "block": block.names().collect::<Vec<_>>(),
            "bounds": [prefix_bound, cycle_bound],
            "runs": r.runs,
            "counterexample": r.witness.as_ref().map(|w| w.to_json(&ltsc)),
        });
        out!("{}", serde_json::to_string_pretty(&doc)?);
    } else if let Some(w) = &r.witness {
        out!("{}: fails ({cc}, B={block}) after {} runs", args.formula, r.runs);
        for line in w.render(&ltsc).lines() {
            out!("  {line}");
        }
    } else {
        out!(
            "{}: holds within bounds {prefix_bound},{cycle_bound} ({cc}, B={block}, {} runs)",
            args.formula, r.runs
        );
    }
    Ok(r.holds_within_bound)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(a) => check(a),
        Command::Explore(a) => explore(a),
        Command::Validate(a) => validate(a),
        Command::Oracle(a) => oracle(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
