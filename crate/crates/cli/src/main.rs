//! `tormod`: pp-definable subgroups, purity, chains, pp-types, Ulm
//! invariants, limit-model templates and cardinal arithmetic from the shell.
//!
//! Exit codes: 0 success, 1 domain error (or a failing suite), 2 usage error.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use tormod::cardinal::{self, CardinalExpr};
use tormod::chain::{consecutive_indices, evaluate_chain, stabilization_index, witness_chain, FormulaChain};
use tormod::formula::PpFormula;
use tormod::group::{CyclicSum, FgGroup};
use tormod::ppsolve::{count_types, evaluate};
use tormod::purity::{complement, purity_witness, torsion_radical};
use tormod::subgroup::Subgroup;
use tormod::symbolic::{limit_model_template, CofinalityClass, Variant};
use tormod::ulm::ulm_invariants;
use tormod::verify::run_suite;
use tormod::Error;

/// Version of the JSON output document (see docs/cli-output.schema.json).
const SCHEMA_VERSION: &str = "1";

#[derive(Parser)]
#[command(name = "tormod", version, about = "Computations with pp-definable subgroups of abelian groups")]
struct Cli {
    /// Emit one JSON document instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Whether a unary pp-formula defines 0 in Z.
    Low { formula: String },
    /// The subgroup φ[M] of M^n defined by a formula.
    Eval { formula: String, group: String },
    /// Purity of a subgroup, with a witness when impure.
    Pure { subgroup: String, group: String },
    /// The torsion subgroup t(M).
    Torsion { group: String },
    /// A complement of a subgroup, if one exists.
    Complement { subgroup: String, group: String },
    /// A descending chain of formulas evaluated on a group.
    Chain {
        /// The witness chain `p·x = 0 ∧ ∃y. x = p^n·y` on ⊕_{m≤M0} (Z/p^m)^k.
        #[arg(long, num_args = 3, value_names = ["P", "M0", "K"], conflicts_with_all = ["template", "group"])]
        witness: Option<Vec<u64>>,
        /// A formula template with `{n}` for the level.
        #[arg(long, requires = "group")]
        template: Option<String>,
        #[arg(long)]
        group: Option<String>,
        /// Last level evaluated (default M0 + 1 for witness chains, else 8).
        #[arg(long)]
        max: Option<u64>,
        /// Also print [φ_n : φ_{n+1}] for consecutive levels.
        #[arg(long)]
        indices: bool,
    },
    /// Number of pp-types over M realized in pure extensions of order ≤ N.
    Types {
        group: String,
        #[arg(long)]
        bound: u64,
    },
    /// Ulm invariants α_{p,n} of a finite group.
    Ulm { group: String },
    /// Symbolic limit model at a cardinal.
    LimitModel {
        cardinal: String,
        #[arg(long, value_enum)]
        cof: Cof,
        /// Restrict to abelian p-groups.
        #[arg(long)]
        p: Option<u64>,
        /// Plain ASCII rendering.
        #[arg(long)]
        ascii: bool,
    },
    /// Cardinal arithmetic.
    Card {
        #[command(subcommand)]
        op: CardOp,
    },
    /// Run an acceptance suite (`all` runs every one).
    Verify {
        #[arg(long)]
        suite: String,
    },
}

#[derive(Subcommand)]
enum CardOp {
    /// Decide λ^ℵ0 = λ.
    Stable { cardinal: String },
    /// Decide <, = and ≤.
    Compare { a: String, b: String },
    /// Normal form with the rewrite trace.
    Normalize { cardinal: String },
    /// Cofinality, when determined.
    Cof { cardinal: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Cof {
    /// Countable cofinality.
    W,
    /// Uncountable cofinality.
    W1,
}

#[derive(Serialize)]
struct Output {
    version: &'static str,
    command: String,
    input: Value,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<String>>,
    #[serde(skip)]
    plain: String,
    #[serde(skip)]
    warnings: Vec<String>,
    #[serde(skip)]
    failed: bool,
}

impl Output {
    fn new(command: &str, input: Value, result: Value, plain: String) -> Output {
        Output {
            version: SCHEMA_VERSION,
            command: command.to_string(),
            input,
            result,
            trace: None,
            plain,
            warnings: Vec::new(),
            failed: false,
        }
    }

    fn with_trace(mut self, trace: Vec<String>) -> Output {
        self.trace = Some(trace);
        self
    }
}

enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if is_usage(&e) {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e)
        }
    }
}

/// Errors from malformed arguments, reported as usage errors.
fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Syntax { .. }
            | Error::MalformedInteger(_)
            | Error::UnboundCoefficient(_)
            | Error::NonHomogeneous(_)
            | Error::VariableClash(_)
            | Error::UnknownSuite(_)
    )
}

fn group(text: &str) -> tormod::Result<CyclicSum> {
    CyclicSum::parse(text)
}

fn order_str(h: &Subgroup) -> String {
    h.order().map_or("infinite".into(), |o| o.to_string())
}

fn run(cmd: Command) -> Result<Output, Failure> {
    Ok(match cmd {
        Command::Low { formula } => {
            let f = PpFormula::parse(&formula)?;
            let d = f.integer_solution_generator()?;
            let low = f.is_low()?;
            Output::new("low", json!({ "formula": formula }), json!(low), low.to_string())
                .with_trace(vec![format!("{f} defines {d}Z in Z")])
        }
        Command::Eval { formula, group: g } => {
            let f = PpFormula::parse(&formula)?;
            let m = group(&g)?;
            let h = evaluate(&f, &m);
            let plain = format!("{h}\norder {}", order_str(&h));
            Output::new(
                "eval",
                json!({ "formula": formula, "group": g }),
                json!({ "subgroup": h.to_string(), "order": order_str(&h), "ambient": h.ambient().to_string() }),
                plain,
            )
        }
        Command::Pure { subgroup, group: g } => {
            let m = group(&g)?;
            let h = Subgroup::parse(&subgroup, &m)?;
            let w = purity_witness(&h)?;
            let plain = match &w {
                None => "true".to_string(),
                Some(w) => format!("false\nwitness: {w}"),
            };
            let out = Output::new(
                "pure",
                json!({ "subgroup": subgroup, "group": g }),
                json!(w.is_none()),
                plain,
            );
            match w {
                Some(w) => out.with_trace(vec![format!("witness: {w}")]),
                None => out,
            }
        }
        Command::Torsion { group: g } => {
            let m = group(&g)?;
            let t = torsion_radical(&m);
            let (structure, _) = t.structure();
            Output::new(
                "torsion",
                json!({ "group": g }),
                json!({ "subgroup": t.to_string(), "structure": structure.to_string() }),
                format!("{t}\nstructure {structure}"),
            )
        }
        Command::Complement { subgroup, group: g } => {
            let m = group(&g)?;
            let h = Subgroup::parse(&subgroup, &m)?;
            let k = complement(&h)?;
            let out = Output::new(
                "complement",
                json!({ "subgroup": subgroup, "group": g }),
                k.as_ref().map_or(Value::Null, |k| json!(k.to_string())),
                k.as_ref().map_or("none".into(), |k| k.to_string()),
            );
            match purity_witness(&h)? {
                Some(w) if k.is_none() => out.with_trace(vec![format!("not pure, witness: {w}")]),
                _ => out,
            }
        }
        Command::Chain {
            witness,
            template,
            group: g,
            max,
            indices,
        } => {
            let (chain, b, n_max, input) = match (witness, template) {
                (Some(w), _) => {
                    let (p, m0, k) = (w[0], w[1], w[2]);
                    if m0 == 0 || k == 0 || m0 > u32::MAX as u64 {
                        return Err(Failure::Usage(format!("--witness {p} {m0} {k}: M0 and k must be at least 1")));
                    }
                    let (chain, b) = witness_chain(p, m0 as u32, k as usize)?;
                    (chain, b, max.unwrap_or(m0 + 1), json!({ "witness": [p, m0, k] }))
                }
                (None, Some(t)) => {
                    let g = g.expect("clap enforces --group");
                    let chain = FormulaChain::new(&t)?;
                    let input = json!({ "template": t, "group": g });
                    (chain, group(&g)?, max.unwrap_or(8), input)
                }
                (None, None) => return Err(Failure::Usage("give --witness P M0 K or --template T --group G".into())),
            };
            let ev = evaluate_chain(&chain, &b, n_max)?;
            let stab = stabilization_index(&chain, &b, n_max)?;
            let orders: Vec<String> = ev.levels.iter().map(order_str).collect();
            let mut plain = vec![
                format!("chain {}", chain.template()),
                format!("group {b}"),
                format!("low head {}", chain.low_head()),
                format!("orders {}", orders.join(" ")),
                format!("descending {}", ev.is_descending()),
                format!("stabilizes at {}", stab.map_or("not observed".into(), |n| n.to_string())),
            ];
            let mut result = json!({
                "template": chain.template(),
                "group": b.to_string(),
                "low_head": chain.low_head(),
                "orders": orders,
                "first_non_descent": ev.first_non_descent,
                "stabilization_index": stab,
            });
            if indices {
                let idx: Vec<String> = consecutive_indices(&ev.levels)?
                    .into_iter()
                    .map(|i| i.map_or("infinite".into(), |i| i.to_string()))
                    .collect();
                plain.push(format!("indices {}", idx.join(" ")));
                result["indices"] = json!(idx);
            }
            Output::new("chain", input, result, plain.join("\n"))
        }
        Command::Types { group: g, bound } => {
            let m = group(&g)?;
            let n = count_types(&m, bound)?;
            Output::new("types", json!({ "group": g, "bound": bound }), json!(n), n.to_string())
        }
        Command::Ulm { group: g } => {
            let inv = ulm_invariants(&FgGroup::parse(&g)?)?;
            let alpha: Vec<Value> = inv
                .alpha
                .iter()
                .map(|((p, n), v)| json!({ "p": p, "n": n, "value": v.to_string() }))
                .collect();
            Output::new(
                "ulm",
                json!({ "group": g }),
                json!({ "alpha": alpha, "gamma": [] }),
                inv.to_string(),
            )
        }
        Command::LimitModel { cardinal: c, cof, p, ascii } => {
            let lambda = CardinalExpr::parse(&c)?;
            let class = match cof {
                Cof::W => CofinalityClass::Countable,
                Cof::W1 => CofinalityClass::Uncountable,
            };
            let variant = p.map_or(Variant::Torsion, Variant::PGroup);
            let model = limit_model_template(&lambda, class, variant)?;
            let text = if ascii { model.group.ascii() } else { model.group.unicode() };
            let mut out = Output::new(
                "limit-model",
                json!({ "cardinal": c, "cof": match cof { Cof::W => "w", Cof::W1 => "w1" }, "p": p }),
                json!(text),
                text.clone(),
            );
            if let Some(w) = model.warning {
                out.warnings.push(w.clone());
                out = out.with_trace(vec![format!("warning: {w}")]);
            }
            out
        }
        Command::Card { op } => card(op)?,
        Command::Verify { suite } => {
            let reports = run_suite(&suite)?;
            let failed = reports.iter().any(|r| !r.passed());
            let result: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "criterion": r.criterion,
                        "suite": r.name,
                        "passed": r.passed(),
                        "checks": r.checks,
                        "failures": r.failure_count,
                        "summary": r.summary,
                        "examples": r.failures,
                    })
                })
                .collect();
            let plain = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
            let mut out = Output::new("verify", json!({ "suite": suite }), json!(result), plain);
            out.failed = failed;
            out
        }
    })
}

fn card(op: CardOp) -> tormod::Result<Output> {
    Ok(match op {
        CardOp::Stable { cardinal: c } => {
            let s = cardinal::stability_predicate(&CardinalExpr::parse(&c)?)?;
            Output::new(
                "card stable",
                json!({ "cardinal": c }),
                json!({ "verdict": s.verdict.as_str(), "summary": s.summary(), "reason": s.reason }),
                s.summary(),
            )
            .with_trace(s.trace)
        }
        CardOp::Compare { a, b } => {
            let (x, y) = (CardinalExpr::parse(&a)?, CardinalExpr::parse(&b)?);
            let c = cardinal::compare(&x, &y);
            let plain = format!("{x} < {y}: {}\n{x} = {y}: {}\n{x} ≤ {y}: {}", c.lt, c.eq, c.le);
            Output::new(
                "card compare",
                json!({ "a": a, "b": b }),
                json!({ "lt": c.lt.as_str(), "eq": c.eq.as_str(), "le": c.le.as_str() }),
                plain,
            )
            .with_trace(c.trace)
        }
        CardOp::Normalize { cardinal: c } => {
            let (n, steps) = cardinal::normalize_traced(&CardinalExpr::parse(&c)?);
            Output::new(
                "card normalize",
                json!({ "cardinal": c }),
                json!({ "unicode": n.unicode(), "ascii": n.ascii() }),
                n.unicode(),
            )
            .with_trace(steps.iter().map(|s| s.to_string()).collect())
        }
        CardOp::Cof { cardinal: c } => {
            let cf = cardinal::cofinality(&CardinalExpr::parse(&c)?);
            let text = cf.map_or("unknown".into(), |e| e.unicode());
            Output::new("card cof", json!({ "cardinal": c }), json!(text), text)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            } else {
                println!("{}", out.plain);
            }
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
    }
}
