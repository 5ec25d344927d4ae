//! Command-line front end for `fpcl`.
//!
//! [`run`] takes the argument vector and returns the exit code together with
//! everything that would be written to stdout and stderr, so the binary is a
//! thin wrapper and tests can drive the CLI in-process.
//!
//! Exit codes: 0 for success or an equivalent verdict, 1 for a well-formed
//! negative verdict, 2 for usage, parse, input and resource errors.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fpcl::algebra::{check_laws, Law, DEFAULT_FUZZY_GRID};
use fpcl::archlib::{master_slave_formula, p2p_formula, uncertainty, ArchTemplate};
use fpcl::equivalence::{
    cross_check, decide_equiv, oracle_equiv, oracle_equiv_fuzzy, DiscrepancyKind, EquivVerdict,
    DEFAULT_BOUNDED_SIZE, DEFAULT_CHECK_GRID,
};
use fpcl::normalize::{to_set_rep, NormalizationMode, Normalizer, PclNF};
use fpcl::semantics::{configuration_from_json, configuration_to_json, eval_closure, eval_pcl};
use fpcl::syntax::{parse_pcl, parse_port_list};
use fpcl::{AlgebraDescriptor, Configuration, PclFormula, Port};
use serde_json::{json, Value};

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(name = "fpcl", version, about = "Fuzzy interaction and configuration logics over De Morgan algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a formula file and print it in canonical form.
    Check {
        /// Path to a file holding one formula (a leading `@` is accepted, `-` reads stdin).
        file: String,
    },
    /// Evaluate a formula on a configuration.
    Eval(EvalArgs),
    /// Evaluate the closure of a formula (its best value over sub-configurations).
    Closure(EvalArgs),
    /// Print the normal form of a formula.
    Normalize(NormalizeArgs),
    /// Decide equivalence of two formulas through their normal forms.
    Equiv(EquivArgs),
    /// Brute-force equivalence check over one algebra.
    Oracle(OracleArgs),
    /// Generate an architecture-style formula.
    #[command(subcommand)]
    Template(TemplateCommand),
    /// Print the value and the uncertainty of a formula on a configuration.
    Analyze(EvalArgs),
    /// Check the De Morgan axioms and classify an algebra.
    Laws(LawsArgs),
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Formula text, or `@path` to read it from a file.
    #[arg(long)]
    formula: String,
    /// Configuration JSON: inline (starting with `{`), `@path`, or a path.
    #[arg(long)]
    config: String,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct NormalizeArgs {
    #[arg(long)]
    formula: String,
    /// Comma-separated ports; defaults to the ports of the formula.
    #[arg(long)]
    ports: Option<String>,
    #[arg(long, default_value = "demorgan")]
    mode: NormalizationMode,
    /// Also print the nested-set representation.
    #[arg(long)]
    sets: bool,
    #[arg(long)]
    json: bool,
    /// Report the number of normalization steps on stderr.
    #[arg(long)]
    stats: bool,
}

#[derive(Debug, Args)]
struct EquivArgs {
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
    #[arg(long)]
    ports: Option<String>,
    #[arg(long, default_value = "demorgan")]
    mode: NormalizationMode,
    /// Target algebra; rejected when the mode is not valid for it.
    #[arg(long)]
    algebra: Option<AlgebraDescriptor>,
    /// Run the brute-force oracles of the mode as well and report witnesses.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
    #[arg(long)]
    ports: Option<String>,
    #[arg(long)]
    algebra: AlgebraDescriptor,
    /// Largest configuration size to check.
    #[arg(long)]
    max_size: Option<usize>,
    /// Grid denominator for the fuzzy algebra.
    #[arg(long)]
    grid: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum TemplateCommand {
    /// Peer-to-Peer with `n` components.
    P2p {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Master/Slave where each master picks one slave.
    MasterSlave {
        #[arg(long)]
        masters: usize,
        #[arg(long)]
        slaves: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct LawsArgs {
    #[arg(long)]
    algebra: AlgebraDescriptor,
    /// Sample grid for the fuzzy algebra.
    #[arg(long)]
    grid: Option<u64>,
    #[arg(long)]
    json: bool,
}

/// Runs the CLI on `args`, where `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = Output::default();
    match execute(cli.command, &mut out) {
        Ok(code) => Outcome { code, stdout: out.stdout, stderr: out.stderr },
        Err(e) => {
            let _ = writeln!(out.stderr, "error: {e:#}");
            Outcome { code: 2, stdout: out.stdout, stderr: out.stderr }
        }
    }
}

#[derive(Default)]
struct Output {
    stdout: String,
    stderr: String,
}

impl Output {
    fn line(&mut self, text: impl AsRef<str>) {
        self.stdout.push_str(text.as_ref());
        self.stdout.push('\n');
    }

    fn json(&mut self, value: &Value) {
        self.line(serde_json::to_string_pretty(value).expect("values serialize"));
    }

    fn note(&mut self, text: impl AsRef<str>) {
        self.stderr.push_str(text.as_ref());
        self.stderr.push('\n');
    }
}

fn execute(command: Command, out: &mut Output) -> Result<u8> {
    match command {
        Command::Check { file } => check(&file, out),
        Command::Eval(a) => evaluate(&a, false, out),
        Command::Closure(a) => evaluate(&a, true, out),
        Command::Normalize(a) => normalize(&a, out),
        Command::Equiv(a) => equiv(&a, out),
        Command::Oracle(a) => oracle(&a, out),
        Command::Template(t) => template(t, out),
        Command::Analyze(a) => analyze(&a, out),
        Command::Laws(a) => laws(&a, out),
    }
}

fn read_file(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
        return Ok(text);
    }
    std::fs::read_to_string(path).with_context(|| format!("cannot read `{path}`"))
}

fn formula_arg(flag: &str, text: &str) -> Result<PclFormula> {
    let source = match text.strip_prefix('@') {
        Some(path) => read_file(path).context(flag.to_string())?,
        None => text.to_string(),
    };
    parse_pcl(source.trim()).with_context(|| format!("{flag} `{text}`"))
}

fn config_arg(text: &str) -> Result<Configuration> {
    let trimmed = text.trim_start();
    let source = if trimmed.starts_with('{') {
        text.to_string()
    } else {
        read_file(text.strip_prefix('@').unwrap_or(text)).context("--config")?
    };
    configuration_from_json(&source).with_context(|| format!("--config `{text}`"))
}

fn ports_arg(given: Option<&str>, formulas: &[&PclFormula]) -> Result<Vec<Port>> {
    let ports = match given {
        Some(text) => parse_port_list(text).with_context(|| format!("--ports `{text}`"))?,
        None => {
            let all: BTreeSet<Port> = formulas.iter().flat_map(|z| z.ports()).collect();
            all.into_iter().collect()
        }
    };
    for z in formulas {
        z.check_ports(&ports).with_context(|| format!("formula `{z}`"))?;
    }
    Ok(ports)
}

fn check(file: &str, out: &mut Output) -> Result<u8> {
    let path = file.strip_prefix('@').unwrap_or(file);
    let text = read_file(path)?;
    let z = parse_pcl(text.trim()).with_context(|| format!("`{path}`"))?;
    out.line(z.to_string());
    Ok(0)
}

fn evaluate(a: &EvalArgs, closure: bool, out: &mut Output) -> Result<u8> {
    let z = formula_arg("--formula", &a.formula)?;
    let g = config_arg(&a.config)?;
    let value = if closure { eval_closure(&z, &g) } else { eval_pcl(&z, &g) }
        .with_context(|| format!("evaluating `{z}`"))?;
    if a.json {
        out.json(&json!({ "value": value.to_string() }));
    } else {
        out.line(value.to_string());
    }
    Ok(0)
}

fn analyze(a: &EvalArgs, out: &mut Output) -> Result<u8> {
    let z = formula_arg("--formula", &a.formula)?;
    let g = config_arg(&a.config)?;
    let value = eval_pcl(&z, &g).with_context(|| format!("evaluating `{z}`"))?;
    let worst = uncertainty(&z, &g).with_context(|| format!("evaluating `{z}`"))?;
    if a.json {
        out.json(&json!({ "value": value.to_string(), "uncertainty": worst.to_string() }));
    } else {
        out.line(format!("value: {value}"));
        out.line(format!("uncertainty: {worst}"));
    }
    Ok(0)
}

/// `{"kind": "sum"|"true"|"false", "groups": [[member, …], …]}` with members
/// printed as fPIL formulas.
pub fn normal_form_json(nf: &PclNF) -> Value {
    let kind = match nf {
        PclNF::True => "true",
        PclNF::False => "false",
        PclNF::Sum(_) => "sum",
    };
    let groups: Vec<Vec<String>> = nf
        .groups()
        .map(|g| g.members().iter().map(|m| m.to_string()).collect())
        .collect();
    json!({ "kind": kind, "groups": groups })
}

fn normalize(a: &NormalizeArgs, out: &mut Output) -> Result<u8> {
    let z = formula_arg("--formula", &a.formula)?;
    let ports = ports_arg(a.ports.as_deref(), &[&z])?;
    let mut normalizer = Normalizer::new(&ports, a.mode);
    let nf = normalizer.pcl(&z).with_context(|| format!("normalizing `{z}`"))?;
    let sets = to_set_rep(&nf).to_json();
    if a.json {
        let mut value = normal_form_json(&nf);
        if a.sets {
            value["sets"] = sets;
        }
        out.json(&value);
    } else {
        out.line(nf.to_string());
        if a.sets {
            out.line(sets.to_string());
        }
    }
    if a.stats {
        out.note(format!("steps: {}", normalizer.steps()));
    }
    Ok(0)
}

/// `{"equivalent": bool, "mode": str, "witness": configuration | null}`.
pub fn verdict_json(equivalent: bool, mode: NormalizationMode, witness: Option<&Configuration>) -> Value {
    json!({
        "equivalent": equivalent,
        "mode": mode.name(),
        "witness": witness.map(configuration_to_json),
    })
}

fn equiv(a: &EquivArgs, out: &mut Output) -> Result<u8> {
    if let Some(d) = a.algebra {
        if !a.mode.supports(d) {
            bail!("--mode {} is not valid for --algebra {d}", a.mode);
        }
    }
    let left = formula_arg("--left", &a.left)?;
    let right = formula_arg("--right", &a.right)?;
    let ports = ports_arg(a.ports.as_deref(), &[&left, &right])?;
    let (equivalent, witness) = if a.oracle {
        let report = cross_check(&left, &right, &ports, a.mode)?;
        for d in &report.discrepancies {
            let what = match d.kind {
                DiscrepancyKind::Soundness => "normal forms agree but the oracle found a difference",
                DiscrepancyKind::Completeness => "normal forms differ but the exhaustive oracle found no difference",
            };
            out.note(format!("warning: over {}: {what}", d.algebra));
        }
        let witness = report.witness().map(|(run, w)| (run.clone(), w.clone()));
        (report.decided, witness)
    } else {
        (decide_equiv(&left, &right, &ports, a.mode)?, None)
    };
    let witness = witness.filter(|_| !equivalent);
    if a.json {
        out.json(&verdict_json(equivalent, a.mode, witness.as_ref().map(|(_, w)| w)));
    } else {
        let verdict = if equivalent { "equivalent" } else { "not equivalent" };
        out.line(format!("{verdict} ({} mode)", a.mode));
        if let Some((run, _)) = &witness {
            out.line(format!("witness over {}: {}", run.algebra, run.verdict));
        }
    }
    Ok(if equivalent { 0 } else { 1 })
}

fn oracle(a: &OracleArgs, out: &mut Output) -> Result<u8> {
    let left = formula_arg("--left", &a.left)?;
    let right = formula_arg("--right", &a.right)?;
    let ports = ports_arg(a.ports.as_deref(), &[&left, &right])?;
    if ports.is_empty() {
        bail!("no ports to enumerate; pass --ports");
    }
    let verdict = if a.algebra == AlgebraDescriptor::FuzzyRational {
        let grid = a.grid.unwrap_or(DEFAULT_CHECK_GRID);
        let max = a.max_size.unwrap_or(DEFAULT_BOUNDED_SIZE);
        oracle_equiv_fuzzy(&left, &right, &ports, grid, max)?
    } else {
        if a.grid.is_some() {
            bail!("--grid only applies to --algebra fuzzy");
        }
        oracle_equiv(&left, &right, &ports, a.algebra, a.max_size)?
    };
    if a.json {
        let (equivalent, samples) = match &verdict {
            EquivVerdict::Equivalent => (Some(true), None),
            EquivVerdict::NotEquivalent { .. } => (Some(false), None),
            EquivVerdict::NoCounterexampleFound { samples_checked } => (None, Some(*samples_checked)),
        };
        let values = match &verdict {
            EquivVerdict::NotEquivalent { values: Some((x, y)), .. } => json!([x.to_string(), y.to_string()]),
            _ => Value::Null,
        };
        out.json(&json!({
            "equivalent": equivalent,
            "algebra": a.algebra.name(),
            "witness": verdict.witness().map(configuration_to_json),
            "values": values,
            "samples_checked": samples,
        }));
    } else {
        out.line(verdict.to_string());
    }
    Ok(if verdict.is_refuted() { 1 } else { 0 })
}

fn template(t: TemplateCommand, out: &mut Output) -> Result<u8> {
    let (arch, json) = match t {
        TemplateCommand::P2p { n, json } => (p2p_formula(n)?, json),
        TemplateCommand::MasterSlave { masters, slaves, json } => (master_slave_formula(masters, slaves)?, json),
    };
    let ports = join_ports(&arch);
    if json {
        out.json(&json!({
            "style": arch.style.to_string(),
            "ports": arch.ports.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "formula": arch.formula.to_string(),
            "summands": arch.summands.len(),
        }));
    } else {
        out.line(format!("ports: {ports}"));
        out.line(arch.formula.to_string());
    }
    Ok(0)
}

fn join_ports(arch: &ArchTemplate) -> String {
    arch.ports.iter().map(Port::as_str).collect::<Vec<_>>().join(",")
}

fn laws(a: &LawsArgs, out: &mut Output) -> Result<u8> {
    let grid = match (a.algebra, a.grid) {
        (AlgebraDescriptor::FuzzyRational, g) => Some(g.unwrap_or(DEFAULT_FUZZY_GRID)),
        (_, None) => None,
        (_, Some(_)) => bail!("--grid only applies to --algebra fuzzy"),
    };
    let report = check_laws(a.algebra, grid)?;
    let witness = |w: &Option<Vec<fpcl::AlgebraElement>>| {
        w.as_ref().map(|args| args.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    };
    let classification = report.is_de_morgan().then(|| report.classification());
    if a.json {
        let outcomes: Vec<Value> = report
            .outcomes
            .iter()
            .map(|o| json!({ "law": o.law.name(), "holds": o.holds, "witness": witness(&o.witness) }))
            .collect();
        out.json(&json!({
            "algebra": a.algebra.name(),
            "carrier_size": report.carrier_size,
            "grid": report.grid,
            "de_morgan": report.is_de_morgan(),
            "classification": classification.map(|c| c.to_string()),
            "laws": outcomes,
        }));
    } else {
        let mut header = format!("{}: {} elements", a.algebra, report.carrier_size);
        if let Some(d) = report.grid {
            let _ = write!(header, " (grid 1/{d})");
        }
        out.line(header);
        for o in &report.outcomes {
            let status = match witness(&o.witness) {
                None => "holds".to_string(),
                Some(args) => format!("fails at ({})", args.join(", ")),
            };
            let kind = if Law::AXIOMS.contains(&o.law) { "axiom" } else { "condition" };
            out.line(format!("  {kind} {}: {status}", o.law.name()));
        }
        match classification {
            Some(c) => out.line(format!("classification: {c}")),
            None => out.line("classification: not a De Morgan algebra"),
        }
    }
    Ok(0)
}
