use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sylowlab::actions::{coset_action, fpr_element, min_fpr_p_element};
use sylowlab::catalog::CATALOG;
use sylowlab::covering::sigma_p;
use sylowlab::graphs::{n_pi, pr_pi, Graph};
use sylowlab::report::{point_stabilizer, run_check, CheckId, CheckOptions, GroupInput};
use sylowlab::sylow::nu_p;
use sylowlab::{Caps, Error, ExactRatio, Permutation};

#[derive(Parser)]
#[command(name = "sylowlab", version, about = "Check Sylow-number, fixed point ratio and covering bounds on permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named check and report whether its bound holds.
    Verify {
        /// One of the ids printed by `sylowlab list`.
        check: String,
        #[command(flatten)]
        input: Input,
        /// Ratio threshold for `conjecture-d`, e.g. 1/2.
        #[arg(long)]
        f: Option<String>,
        /// Run per-prime items in parallel.
        #[arg(long)]
        parallel: bool,
    },
    /// Compute a single invariant.
    Compute {
        #[command(subcommand)]
        what: Quantity,
    },
    /// List the checks and the built-in catalog.
    List,
}

#[derive(Subcommand)]
enum Quantity {
    /// Fixed point ratio on the cosets of --sub (point stabilizer by default).
    /// Give --element for one element, or -p for the minimum over p-elements.
    Fpr {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        element: Option<String>,
    },
    /// Number of Sylow p-subgroups.
    Nu {
        #[command(flatten)]
        input: Input,
    },
    /// Fewest maximal subgroups covering the p-elements.
    Sigma {
        #[command(flatten)]
        input: Input,
    },
    /// Clique number of the noncommuting pi-graph, or of --edge-list.
    Clique {
        #[command(flatten)]
        input: Input,
    },
    /// Probability that two random pi-elements commute.
    Pr {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args)]
struct Input {
    /// Group expression such as "A5", "S3 x C2" or "C3 wr C3".
    #[arg(long, conflicts_with = "group_file")]
    group: Option<String>,
    /// File with one generator per line in cycle notation.
    #[arg(long)]
    group_file: Option<PathBuf>,
    /// Subgroup expression, acting on the first points of the group's domain.
    #[arg(long, conflicts_with = "sub_file")]
    sub: Option<String>,
    #[arg(long)]
    sub_file: Option<PathBuf>,
    /// Primes, comma separated. Defaults to the prime divisors of |G|.
    #[arg(short = 'p', long = "prime", value_delimiter = ',')]
    primes: Vec<u64>,
    /// A set of primes taken together, comma separated.
    #[arg(long, value_delimiter = ',')]
    pi: Vec<u64>,
    /// Graph as an edge list (`# vertices: N` then `u v` per line).
    #[arg(long)]
    edge_list: Option<PathBuf>,
    /// Write JSON to this path, or `-` for stdout.
    #[arg(long)]
    json: Option<String>,
    /// Cap overrides: a bare element cap, or elements=N,lattice=N,biclique=N.
    #[arg(long)]
    cap: Option<String>,
}

/// Input problems map to exit code 2, failed bounds and failed computations to 1.
enum Failure {
    Input(String),
    Bound,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify {
            check,
            input,
            f,
            parallel,
        } => verify(&check, &input, f.as_deref(), parallel),
        Command::Compute { what } => compute(what),
        Command::List => {
            list();
            Ok(())
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Bound) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

impl Input {
    fn caps(&self) -> Result<Caps, Failure> {
        match &self.cap {
            Some(text) => Ok(Caps::from_env().with_overrides(text)?),
            None => Ok(Caps::from_env()),
        }
    }

    fn load(expr: &Option<String>, file: &Option<PathBuf>, caps: Caps) -> Result<Option<GroupInput>, Failure> {
        match (expr, file) {
            (Some(text), _) => Ok(Some(GroupInput::from_expr(text, caps)?)),
            (None, Some(path)) => {
                let text = read(path)?;
                let label = path.display().to_string();
                Ok(Some(GroupInput::from_generator_file(&label, &text, caps)?))
            }
            (None, None) => Ok(None),
        }
    }

    fn options(&self) -> Result<CheckOptions, Failure> {
        let caps = self.caps()?;
        let graph = match &self.edge_list {
            Some(path) => Some(Graph::parse_edge_list(&read(path)?)?),
            None => None,
        };
        Ok(CheckOptions {
            group: Self::load(&self.group, &self.group_file, caps)?,
            sub: Self::load(&self.sub, &self.sub_file, caps)?,
            primes: self.primes.clone(),
            pi: self.pi.clone(),
            graph,
            caps,
            ..CheckOptions::default()
        })
    }

    fn emit(&self, value: &Value, text: &str) -> Result<(), Failure> {
        let shown = match self.json.as_deref() {
            Some("-") => serde_json::to_string_pretty(value).expect("json values print") + "\n",
            Some(path) => {
                let body = serde_json::to_string_pretty(value).expect("json values print");
                fs::write(path, body + "\n").map_err(|e| Failure::Input(format!("{path}: {e}")))?;
                text.to_string()
            }
            None => text.to_string(),
        };
        // a closed pipe is not an error worth reporting here
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(shown.as_bytes()).and_then(|()| out.flush());
        Ok(())
    }

    /// Like `emit`, but a row that could not be computed gives exit code 1.
    fn emit_rows(&self, value: &Value, text: &str) -> Result<(), Failure> {
        self.emit(value, text)?;
        let rows = value["values"].as_array().map(Vec::as_slice).unwrap_or_default();
        if rows.iter().any(|row| row.get("error").is_some()) {
            return Err(Failure::Bound);
        }
        Ok(())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn verify(check: &str, input: &Input, f: Option<&str>, parallel: bool) -> Result<(), Failure> {
    let id: CheckId = check.parse()?;
    let mut options = input.options()?;
    options.parallel = parallel;
    options.f = f.map(str::parse::<ExactRatio>).transpose()?;
    let report = run_check(id, &options)?;

    let mut text = String::new();
    for item in &report.items {
        let status = match (item.applicable, item.holds) {
            (false, _) => "skipped",
            (true, true) => "holds",
            (true, false) => "FAILS",
        };
        let detail = match (&item.error, &item.values) {
            (Some(e), _) => e.clone(),
            (None, Some(v)) => summarize(v),
            (None, None) => String::new(),
        };
        text.push_str(&format!("{} {}: {status}  {detail}\n", report.check, item.label));
    }
    for notice in &report.notices {
        text.push_str(&format!("note: {notice}\n"));
    }
    text.push_str(&format!(
        "{}: {} ({} ms)\n",
        report.check,
        if !report.items.iter().any(|i| i.applicable) {
            "nothing to check"
        } else if report.holds {
            "all bounds hold"
        } else {
            "bound violated"
        },
        report.runtime_ms
    ));
    let value = serde_json::to_value(&report).expect("reports serialize");
    input.emit(&value, &text)?;
    if !report.items.iter().any(|i| i.applicable) {
        Err(Failure::Input("no instance satisfies the hypotheses of this check".into()))
    } else if report.holds {
        Ok(())
    } else {
        Err(Failure::Bound)
    }
}

/// One line of `key=value` pairs for the scalar fields of a report.
fn summarize(v: &Value) -> String {
    let Value::Object(map) = v else {
        return v.to_string();
    };
    map.iter()
        .filter_map(|(k, v)| {
            let shown = match v {
                Value::Number(n) => n.to_string(),
                Value::String(s) => s.clone(),
                Value::Bool(b) => b.to_string(),
                Value::Array(a) => format!("[{}]", a.len()),
                Value::Object(o) if o.contains_key("num") && o.contains_key("den") => {
                    let num = scalar(&o["num"]);
                    let den = scalar(&o["den"]);
                    if den == "1" {
                        num
                    } else {
                        format!("{num}/{den}")
                    }
                }
                Value::Object(o) if o.contains_key("size") => scalar(&o["size"]),
                _ => return None,
            };
            Some(format!("{k}={shown}"))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn primes_of(input: &Input, group: &GroupInput) -> Vec<u64> {
    if input.primes.is_empty() {
        sylowlab::arith::prime_divisors(&group.group.order())
    } else {
        input.primes.clone()
    }
}

fn require_group(options: &CheckOptions) -> Result<&GroupInput, Failure> {
    options
        .group
        .as_ref()
        .ok_or_else(|| Failure::Input("--group or --group-file is required".into()))
}

fn check_primes(primes: &[u64]) -> Result<(), Failure> {
    for &p in primes {
        if !sylowlab::arith::is_prime(p) {
            return Err(Error::NotPrime(p).into());
        }
    }
    Ok(())
}

fn compute(what: Quantity) -> Result<(), Failure> {
    match what {
        Quantity::Fpr { input, element } => {
            let options = input.options()?;
            let g = require_group(&options)?;
            let stabilizer = match &options.sub {
                Some(h) => h.embedded(g.group.degree())?,
                None => point_stabilizer(&g.group)?,
            };
            let action = coset_action(&g.group, &stabilizer)?;
            let mut rows = Vec::new();
            let mut text = String::new();
            if let Some(element) = element {
                let x = Permutation::parse(&element, g.group.degree())?;
                let r = fpr_element(&action, &x)?;
                text.push_str(&format!("fpr({x}) = {r}\n"));
                rows.push(json!({ "element": x.to_string(), "fpr": r }));
            } else {
                let primes = primes_of(&input, g);
                check_primes(&primes)?;
                for p in primes {
                    match min_fpr_p_element(&action, p) {
                        Ok((x, r)) => {
                            text.push_str(&format!("p={p}: min fpr = {r} at {x}\n"));
                            rows.push(json!({ "p": p, "element": x.to_string(), "fpr": r }));
                        }
                        Err(e) => {
                            text.push_str(&format!("p={p}: {e}\n"));
                            rows.push(json!({ "p": p, "error": e.to_string() }));
                        }
                    }
                }
            }
            let value = json!({ "quantity": "fpr", "group": g.label, "degree": action.degree(), "values": rows });
            input.emit_rows(&value, &text)
        }
        Quantity::Nu { input } => per_prime(input, "nu", |g, p| {
            let nu = nu_p(g, p)?;
            Ok((nu.to_string(), json!(sylowlab::ratio::bigint_json(&nu.into()))))
        }),
        Quantity::Sigma { input } => per_prime(input, "sigma", |g, p| {
            let cover = sigma_p(g, p)?;
            Ok((cover.size.to_string(), serde_json::to_value(&cover).expect("covers serialize")))
        }),
        Quantity::Clique { input } => {
            let options = input.options()?;
            if let Some(graph) = &options.graph {
                let clique = graph.max_clique();
                let text = format!("clique number = {}\n", clique.len());
                let witness: Vec<usize> = clique.iter().map(|v| v + 1).collect();
                let value = json!({ "quantity": "clique", "clique_number": clique.len(), "witness": witness });
                return input.emit(&value, &text);
            }
            per_pi(input, "clique", |g, pi| {
                let (n, witness) = n_pi(g, pi)?;
                let witness: Vec<String> = witness.iter().map(ToString::to_string).collect();
                Ok((n.to_string(), json!({ "clique_number": n, "witness": witness })))
            })
        }
        Quantity::Pr { input } => per_pi(input, "pr", |g, pi| {
            let r = pr_pi(g, pi)?;
            Ok((r.to_string(), json!(r)))
        }),
    }
}

type Row = (String, Value);

fn per_prime(
    input: Input,
    name: &str,
    f: impl Fn(&sylowlab::PermGroup, u64) -> sylowlab::Result<Row>,
) -> Result<(), Failure> {
    let options = input.options()?;
    let g = require_group(&options)?;
    let primes = primes_of(&input, g);
    check_primes(&primes)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for p in primes {
        match f(&g.group, p) {
            Ok((shown, value)) => {
                text.push_str(&format!("{name}_{p}({}) = {shown}\n", g.label));
                rows.push(json!({ "p": p, "value": value }));
            }
            Err(e) => {
                text.push_str(&format!("{name}_{p}({}): {e}\n", g.label));
                rows.push(json!({ "p": p, "error": e.to_string() }));
            }
        }
    }
    let value = json!({ "quantity": name, "group": g.label, "values": rows });
    input.emit_rows(&value, &text)
}

fn per_pi(
    input: Input,
    name: &str,
    f: impl Fn(&sylowlab::PermGroup, &[u64]) -> sylowlab::Result<Row>,
) -> Result<(), Failure> {
    let options = input.options()?;
    let g = require_group(&options)?;
    let sets: Vec<Vec<u64>> = if input.pi.is_empty() {
        primes_of(&input, g).into_iter().map(|p| vec![p]).collect()
    } else {
        vec![input.pi.clone()]
    };
    for pi in &sets {
        check_primes(pi)?;
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    for pi in sets {
        let tag = pi.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match f(&g.group, &pi) {
            Ok((shown, value)) => {
                text.push_str(&format!("{name}[{tag}]({}) = {shown}\n", g.label));
                rows.push(json!({ "pi": pi, "value": value }));
            }
            Err(e) => {
                text.push_str(&format!("{name}[{tag}]({}): {e}\n", g.label));
                rows.push(json!({ "pi": pi, "error": e.to_string() }));
            }
        }
    }
    let value = json!({ "quantity": name, "group": g.label, "values": rows });
    input.emit_rows(&value, &text)
}

fn list() {
    let mut out = std::io::stdout().lock();
    let mut lines = vec!["checks:".to_string()];
    lines.extend(CheckId::ALL.iter().map(|id| format!("  {:<24} {}", id.name(), id.summary())));
    lines.push("catalog:".into());
    lines.extend(CATALOG.iter().map(|(name, expr)| format!("  {name:<16} {expr}")));
    for line in lines {
        // a closed pipe is not an error worth reporting here
        if writeln!(out, "{line}").is_err() {
            return;
        }
    }
}
