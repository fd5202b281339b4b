mod literal;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hfkit::acceptance;
use hfkit::hf::{self, AckCode, HfError, OrdOp};
use hfkit::hierarchy::classify;
use hfkit::interp::{self, compose, obligations, translate, translate_graded, InterpError};
use hfkit::logic::{parse, print, Signature};
use hfkit::model::{
    check_axiom, check_stage_props, roundtrip_check, Axiom, CheckReport, Compiled, EvalError,
    ModelError, Roundtrip, Value,
};
use serde_json::json;

use literal::{parse_code, parse_set};

#[derive(Parser)]
#[command(name = "hfkit", version, about = "Ackermann-coded hereditarily finite sets and their arithmetic")]
struct Cli {
    /// Print a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Code of a set literal.
    Encode { set: String },
    /// Brace literal of a code.
    Decode { code: String },
    /// Apply a set or ordinal operation to codes or literals.
    Op {
        #[arg(value_enum)]
        name: OpName,
        args: Vec<String>,
    },
    /// Translate a formula along an interpretation.
    Translate {
        formula: String,
        #[arg(long, value_enum)]
        interp: InterpName,
        /// Apply this interpretation first, then `--interp`.
        #[arg(long, value_enum)]
        compose: Option<InterpName>,
        /// Prenex the translated atoms so the complexity level is preserved.
        #[arg(long)]
        graded: bool,
        #[arg(long, value_enum)]
        sig: Option<SigName>,
    },
    /// Least E/U levels of a formula.
    Classify {
        formula: String,
        #[arg(long, value_enum, default_value = "set")]
        sig: SigName,
    },
    /// Evaluate a formula in the standard model of its signature.
    Eval {
        formula: String,
        /// Assignments `var=value`; values are `#N`, `N`, `v(N)` or brace literals.
        assignments: Vec<String>,
        #[arg(long, value_enum, default_value = "set")]
        sig: SigName,
        #[arg(long, default_value_t = 4096)]
        budget: u64,
        #[arg(long, value_enum, default_value = "on")]
        oracle: Switch,
    },
    /// Structural properties of the stage D_n.
    Stage {
        #[arg(long)]
        n: u32,
    },
    /// Check an axiom (or `all`) in D_n with witnesses in D_{n+bump}.
    AxiomCheck {
        axiom: String,
        #[command(flatten)]
        stage: StageArgs,
    },
    /// Check a double-translation identity.
    Roundtrip {
        kind: String,
        #[arg(long)]
        range: u64,
    },
    /// Run the acceptance suite, or the listed criteria.
    Selftest { ids: Vec<u32> },
}

#[derive(Args)]
struct StageArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    bump: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpName {
    Eps,
    Pair,
    OrderedPair,
    Binunion,
    Bininter,
    Setunion,
    Adjoin,
    Sigma,
    Tc,
    Rank,
    V,
    IsVonNeumann,
    Add,
    Mul,
    Exp,
}

#[derive(Clone, Copy, ValueEnum)]
enum InterpName {
    A,
    O,
    B,
    Identity,
}

#[derive(Clone, Copy, ValueEnum)]
enum SigName {
    Arith,
    #[value(name = "arith+")]
    ArithPlus,
    Set,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

impl SigName {
    fn signature(self) -> Signature {
        match self {
            SigName::Arith => Signature::arith(),
            SigName::ArithPlus => Signature::arith_plus(),
            SigName::Set => Signature::set(),
        }
    }
}

impl InterpName {
    fn name(self) -> &'static str {
        match self {
            InterpName::A => "a",
            InterpName::O => "o",
            InterpName::B => "b",
            InterpName::Identity => "identity",
        }
    }
}

enum Failure {
    Usage(String),
    Guard(String),
}

impl From<HfError> for Failure {
    fn from(e: HfError) -> Self {
        match e {
            HfError::NotOrdinal => Failure::Usage(e.to_string()),
            _ => Failure::Guard(e.to_string()),
        }
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::StageRange(_) | ModelError::SizeGuard { .. } => Failure::Guard(e.to_string()),
            ModelError::Eval(_) | ModelError::Interp(_) => Failure::Usage(e.to_string()),
        }
    }
}

impl From<InterpError> for Failure {
    fn from(e: InterpError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// What a verb produced: a text rendering, a JSON rendering, and whether it passed.
struct Output {
    text: String,
    json: serde_json::Value,
    ok: bool,
}

impl Output {
    fn plain(text: impl Into<String>, json: serde_json::Value) -> Self {
        Output {
            text: text.into(),
            json,
            ok: true,
        }
    }

    fn report(r: &CheckReport) -> Self {
        let mut text = format!("{} n={} bump={}: {:?}, {} cases, {} ms", r.subject, r.n, r.bump, r.result, r.cases, r.elapsed_ms);
        if let Some(c) = &r.counterexample {
            text += &format!("\ncounterexample: {c:?}");
        }
        if let Some(note) = &r.note {
            text += &format!("\nnote: {note}");
        }
        Output {
            text,
            json: serde_json::to_value(r).expect("report serializes"),
            ok: r.passed(),
        }
    }
}

fn code_arg(args: &[String], i: usize) -> Result<AckCode, Failure> {
    let a = args.get(i).ok_or_else(|| Failure::Usage(format!("missing argument {}", i + 1)))?;
    parse_code(a).map_err(Failure::Usage)
}

fn arity(args: &[String], n: usize) -> Result<(), Failure> {
    if args.len() == n {
        Ok(())
    } else {
        Err(Failure::Usage(format!("expected {n} arguments, got {}", args.len())))
    }
}

fn int_arg(args: &[String], i: usize) -> Result<u64, Failure> {
    let c = code_arg(args, i)?;
    c.to_u64().ok_or_else(|| Failure::Guard(format!("argument {c:?} too large")))
}

fn op(name: OpName, args: &[String]) -> Result<Output, Failure> {
    let code = |c: AckCode| Output::plain(c.to_string(), json!({ "code": c.to_string() }));
    let int = |n: u64| Output::plain(n.to_string(), json!({ "value": n }));
    let unary = matches!(
        name,
        OpName::Setunion | OpName::Sigma | OpName::Tc | OpName::Rank | OpName::V | OpName::IsVonNeumann
    );
    arity(args, if unary { 1 } else { 2 })?;
    Ok(match name {
        OpName::Eps => {
            let b = hf::eps(&code_arg(args, 0)?, &code_arg(args, 1)?)?;
            Output::plain(b.to_string(), json!({ "value": b }))
        }
        OpName::Pair => code(hf::pair(&code_arg(args, 0)?, &code_arg(args, 1)?)?),
        OpName::OrderedPair => code(hf::ordered_pair(&code_arg(args, 0)?, &code_arg(args, 1)?)?),
        OpName::Binunion => code(hf::binunion(&code_arg(args, 0)?, &code_arg(args, 1)?)),
        OpName::Bininter => code(hf::bininter(&code_arg(args, 0)?, &code_arg(args, 1)?)),
        OpName::Setunion => code(hf::setunion(&code_arg(args, 0)?)),
        OpName::Adjoin => code(hf::adjoin(&code_arg(args, 0)?, &code_arg(args, 1)?)?),
        OpName::Sigma => int(hf::sigma(&code_arg(args, 0)?)),
        OpName::Tc => code(hf::tc(&code_arg(args, 0)?)?),
        OpName::Rank => int(hf::rank(&code_arg(args, 0)?)),
        OpName::V => code(hf::v(int_arg(args, 0)?)?),
        OpName::IsVonNeumann => {
            let n = hf::is_von_neumann(&code_arg(args, 0)?);
            let text = n.map_or("no".to_string(), |n| n.to_string());
            Output::plain(text, json!({ "value": n }))
        }
        OpName::Add | OpName::Mul | OpName::Exp => {
            let kind = match name {
                OpName::Add => OrdOp::Add,
                OpName::Mul => OrdOp::Mul,
                _ => OrdOp::Exp,
            };
            let x = parse_set(&args[0]).map_err(Failure::Usage)?;
            let y = parse_set(&args[1]).map_err(Failure::Usage)?;
            let r = hf::ord_arith(kind, &x, &y)?;
            code(hf::encode(&r)?)
        }
    })
}

fn parse_formula(text: &str, sig: &Signature) -> Result<hfkit::logic::Formula, Failure> {
    parse(text, sig).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_value(text: &str) -> Result<Value, Failure> {
    let t = text.trim();
    if let Some(n) = t.strip_prefix("v(").and_then(|r| r.strip_suffix(')')) {
        let n: u128 = n.trim().parse().map_err(|_| Failure::Usage(format!("bad numeral {t:?}")))?;
        return Ok(Value::numeral(n));
    }
    Ok(Value::Code(parse_code(t).map_err(Failure::Usage)?.into_value()))
}

fn run(cmd: Cmd) -> Result<Output, Failure> {
    match cmd {
        Cmd::Encode { set } => {
            let c = hf::encode(&parse_set(&set).map_err(Failure::Usage)?)?;
            Ok(Output::plain(c.to_string(), json!({ "code": c.to_string() })))
        }
        Cmd::Decode { code } => {
            let s = hf::decode(&parse_code(&code).map_err(Failure::Usage)?);
            Ok(Output::plain(s.to_string(), json!({ "set": s.to_string() })))
        }
        Cmd::Op { name, args } => op(name, &args),
        Cmd::Translate {
            formula,
            interp,
            compose: inner,
            graded,
            sig,
        } => {
            let pick = |n: InterpName, sig: &Signature| {
                interp::by_name(n.name(), sig).expect("known interpretation")
            };
            let start_sig = match (sig, inner.unwrap_or(interp)) {
                (Some(s), _) => s.signature(),
                (None, InterpName::Identity) => Signature::set(),
                (None, n) => pick(n, &Signature::set()).source,
            };
            let outer_sig = match inner {
                Some(i) => pick(i, &start_sig).target,
                None => start_sig.clone(),
            };
            let mut spec = pick(interp, &outer_sig);
            if let Some(i) = inner {
                spec = compose(&spec, &pick(i, &start_sig))?;
            }
            let f = parse_formula(&formula, &spec.source)?;
            let t = if graded { translate_graded(&spec, &f)? } else { translate(&spec, &f)? };
            let (ls, lt) = (classify(&f), classify(&t));
            let obs: Vec<_> = obligations(&spec)
                .into_iter()
                .map(|o| json!({ "label": o.label, "formula": print(&o.formula) }))
                .collect();
            let text = print(&t);
            Ok(Output::plain(
                text.clone(),
                json!({
                    "interpretation": spec.name,
                    "source_signature": spec.source.name,
                    "target_signature": spec.target.name,
                    "target": text,
                    "source_level": ls,
                    "target_level": lt,
                    "obligations": obs,
                }),
            ))
        }
        Cmd::Classify { formula, sig } => {
            let c = classify(&parse_formula(&formula, &sig.signature())?);
            Ok(Output::plain(c.to_string(), json!({ "e": c.e, "u": c.u })))
        }
        Cmd::Eval {
            formula,
            assignments,
            sig,
            budget,
            oracle,
        } => {
            let f = parse_formula(&formula, &sig.signature())?;
            let mut names = Vec::new();
            let mut values = Vec::new();
            for a in &assignments {
                let (k, v) = a
                    .split_once('=')
                    .ok_or_else(|| Failure::Usage(format!("assignment {a:?} is not var=value")))?;
                names.push(k.trim().to_string());
                values.push(parse_value(v)?);
            }
            let free: Vec<&str> = names.iter().map(String::as_str).collect();
            let c = Compiled::new(&f, &free, oracle == Switch::On)?;
            let started = Instant::now();
            let t = c.eval(&values, budget);
            Ok(Output::plain(
                t.to_string(),
                json!({ "result": t, "budget": budget, "elapsed_ms": started.elapsed().as_millis() as u64 }),
            ))
        }
        Cmd::Stage { n } => Ok(Output::report(&check_stage_props(n)?)),
        Cmd::AxiomCheck { axiom, stage } => {
            let axioms: Vec<Axiom> = if axiom == "all" {
                Axiom::ALL.to_vec()
            } else {
                vec![Axiom::from_name(&axiom).ok_or_else(|| Failure::Usage(format!("unknown axiom {axiom:?}")))?]
            };
            let reports = axioms
                .into_iter()
                .map(|a| check_axiom(a, stage.n, stage.bump, stage.seed))
                .collect::<Result<Vec<_>, _>>()?;
            if let [r] = reports.as_slice() {
                return Ok(Output::report(r));
            }
            let outs: Vec<Output> = reports.iter().map(Output::report).collect();
            Ok(Output {
                text: outs.iter().map(|o| o.text.as_str()).collect::<Vec<_>>().join("\n"),
                ok: outs.iter().all(|o| o.ok),
                json: serde_json::Value::Array(outs.into_iter().map(|o| o.json).collect()),
            })
        }
        Cmd::Roundtrip { kind, range } => {
            let k = Roundtrip::from_name(&kind).ok_or_else(|| Failure::Usage(format!("unknown round-trip {kind:?}")))?;
            Ok(Output::report(&roundtrip_check(k, range)?))
        }
        Cmd::Selftest { ids } => {
            if let Some(bad) = ids.iter().find(|i| !(1..=12).contains(*i)) {
                return Err(Failure::Usage(format!("no criterion {bad}")));
            }
            let ids = if ids.is_empty() { (1..=12).collect() } else { ids };
            let results: Vec<_> = ids.into_iter().map(acceptance::run).collect();
            Ok(Output {
                text: results.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n"),
                ok: results.iter().all(|r| r.passed),
                json: serde_json::to_value(&results).expect("results serialize"),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("json")
            } else {
                out.text
            };
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(m)) => {
            eprintln!("resource guard: {m}");
            ExitCode::from(3)
        }
    }
}
