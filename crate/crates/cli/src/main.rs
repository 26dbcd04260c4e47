//! `netprod` — exact cooperative game analysis on complete bipartite
//! networks, from the command line.
//!
//! Every computation is delegated to the `netprod` library and carried out
//! in arbitrary-precision rational arithmetic; this binary only parses
//! arguments, picks renderings, and maps library errors to exit codes:
//!
//! - `0` success (including a "diverges" verdict from `converge`),
//! - `1` reference-table mismatch from `paper-tables`,
//! - `2` input error (bad literals, unknown labels, missing arguments),
//! - `3` domain error (a requested limit does not exist at this weight),
//! - `4` capacity error (an enumeration larger than this build allows).

mod render;
mod tables;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use netprod::scalar::{self, Scalar};
use netprod::{
    an_table, an_value, convergence_check, core_check, convexity_check,
    difference_distribution, difference_table, difference_value, fan_table, fan_value,
    independence_suite, individual_productivity, limit_productivity, lrp,
    lrp_series_oracle, productivity_allocation, shapley_closed, shapley_oracle,
    Allocation, AttenuationParams, AxiomReport, BipartiteNetwork, Coalition,
    ProductivityMatrix,
};

use render::{align, csv_string, envelope, json_scalar, side_name, ScalarStyle};
use tables::{all_tables, compare, default_dir, TableStatus};

#[derive(Parser)]
#[command(
    name = "netprod",
    version,
    about = "Exact cooperative game analysis on complete bipartite networks",
    long_about = "Exact cooperative game analysis on complete bipartite networks: \
                  truncated (FAN) and limit (AN) game values, node productivities, \
                  difference games and their distributions, Shapley and LRP allocation \
                  rules, and verification tools (core, convexity, axioms). All \
                  arithmetic is exact; decimals only appear at output."
)]
struct Cli {
    /// Number of left-side nodes (labeled K1..Kk); requires --m.
    #[arg(long, global = true)]
    k: Option<usize>,

    /// Number of right-side nodes (labeled M1..Mm); requires --k.
    #[arg(long, global = true)]
    m: Option<usize>,

    /// Network file: a JSON document {"K": ["..."], "M": ["..."]}.
    #[arg(long, global = true, value_name = "FILE", conflicts_with_all = ["k", "m"])]
    network: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,

    /// Render scalars exactly (integers and p/q) in text and CSV output.
    /// JSON always carries exact forms.
    #[arg(long, global = true)]
    exact: bool,

    /// Fixed decimal places (banker's rounding) in text and CSV output;
    /// default is 6 significant digits.
    #[arg(long, global = true, value_name = "N", conflicts_with = "exact")]
    places: Option<usize>,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether the walk series converges at the given weight.
    Converge {
        /// Attenuation weight: p/q, integer, or finite decimal.
        #[arg(long)]
        delta: String,
    },
    /// Truncated (FAN) game values at horizon t.
    Fan {
        #[arg(long)]
        delta: String,
        /// Walk-length horizon.
        #[arg(long)]
        t: usize,
        /// Coalition: `N` for the grand coalition or comma-separated labels;
        /// omit for the full table over coalition shapes.
        #[arg(long)]
        coalition: Option<String>,
    },
    /// Limit (AN) game values.
    An {
        #[arg(long)]
        delta: String,
        /// Coalition: `N` or comma-separated labels; omit for the full table.
        #[arg(long)]
        coalition: Option<String>,
    },
    /// One-step difference game d^t, or its distribution x^t with --x.
    Diff {
        #[arg(long)]
        delta: String,
        /// Horizon (t >= 1).
        #[arg(long)]
        t: usize,
        /// Coalition: `N` or comma-separated labels; omit for the full table.
        #[arg(long, conflicts_with = "x")]
        coalition: Option<String>,
        /// Emit the per-node distribution x^t instead of game values.
        #[arg(long)]
        x: bool,
    },
    /// Per-node productivities: truncated at --t, limit otherwise.
    Productivity {
        #[arg(long)]
        delta: String,
        /// Horizon; omit for limit productivities.
        #[arg(long)]
        t: Option<usize>,
        /// Coalition: `N` or comma-separated labels; defaults to `N`.
        #[arg(long)]
        coalition: Option<String>,
        /// Recompute through the truncated walk matrix (needs --t).
        #[arg(long)]
        oracle: bool,
    },
    /// Shapley value of the limit game.
    Shapley {
        #[arg(long)]
        delta: String,
        /// Recompute by counting enumeration instead of the closed form.
        #[arg(long)]
        oracle: bool,
    },
    /// Link ratio productivity (LRP) distribution of the limit game.
    Lrp {
        #[arg(long)]
        delta: String,
        /// Approximate through the partial series up to this horizon
        /// instead of the closed form.
        #[arg(long, value_name = "T_MAX")]
        series: Option<usize>,
    },
    /// Core membership of an allocation against its game.
    CoreCheck {
        #[arg(long)]
        delta: String,
        /// Allocation under test; `xt` plays against the difference game
        /// at --t, everything else against the limit game.
        #[arg(long, value_enum, default_value_t = RuleArg::Lrp)]
        rule: RuleArg,
        /// Horizon for rule `xt`.
        #[arg(long)]
        t: Option<usize>,
        /// Comma-separated payoffs in node order (K block first); implies
        /// rule `custom`.
        #[arg(long)]
        payoffs: Option<String>,
    },
    /// Convexity of the limit game, or of the truncated game at --t.
    Convexity {
        #[arg(long)]
        delta: String,
        /// Check the truncated game at this horizon instead of the limit.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Efficiency, bipartition equality, and link balance of an allocation;
    /// or the three axiom-independence counterexamples with --independence.
    Axioms {
        /// Required unless --independence is given.
        #[arg(long)]
        delta: Option<String>,
        /// Allocation under test.
        #[arg(long, value_enum, default_value_t = RuleArg::Lrp)]
        rule: RuleArg,
        /// Horizon for rule `xt`.
        #[arg(long)]
        t: Option<usize>,
        /// Comma-separated payoffs in node order; implies rule `custom`.
        #[arg(long)]
        payoffs: Option<String>,
        /// Run the bundled counterexamples showing the axioms independent.
        #[arg(long)]
        independence: bool,
    },
    /// Regenerate the bundled reference tables and diff against goldens.
    PaperTables {
        /// Golden directory (defaults to the crate's `goldens/`).
        #[arg(long, value_name = "DIR")]
        dir: Option<PathBuf>,
        /// Rewrite the golden files instead of diffing.
        #[arg(long)]
        write: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Converge { .. } => "converge",
            Command::Fan { .. } => "fan",
            Command::An { .. } => "an",
            Command::Diff { .. } => "diff",
            Command::Productivity { .. } => "productivity",
            Command::Shapley { .. } => "shapley",
            Command::Lrp { .. } => "lrp",
            Command::CoreCheck { .. } => "core-check",
            Command::Convexity { .. } => "convexity",
            Command::Axioms { .. } => "axioms",
            Command::PaperTables { .. } => "paper-tables",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum RuleArg {
    /// Limit productivity in the grand coalition.
    Productivity,
    /// Shapley value (closed form).
    Shapley,
    /// Link ratio productivity distribution.
    Lrp,
    /// Distribution x^t of the difference game (needs --t).
    Xt,
    /// User-supplied payoffs (needs --payoffs).
    Custom,
}

impl Cli {
    fn style(&self) -> ScalarStyle {
        ScalarStyle { exact: self.exact, places: self.places }
    }
}

/// A command failure carrying its exit code and a machine-readable kind.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

fn input_failure(message: impl Into<String>) -> Failure {
    Failure { code: 2, kind: "input", message: message.into() }
}

impl From<netprod::Error> for Failure {
    fn from(err: netprod::Error) -> Self {
        let (code, kind) = match &err {
            netprod::Error::Input(_) => (2, "input"),
            netprod::Error::Divergent { .. } => (3, "domain"),
            netprod::Error::Capacity(_) => (4, "capacity"),
        };
        Failure { code, kind, message: err.to_string() }
    }
}

/// Rendered output plus the exit status to finish with.
struct Rendered {
    body: String,
    exit: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rendered) => {
            if let Some(path) = &cli.out {
                if let Err(err) = fs::write(path, &rendered.body) {
                    eprintln!("error: cannot write {}: {err}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", rendered.body);
            }
            ExitCode::from(rendered.exit)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            if cli.output == OutputFormat::Json {
                let doc = json!({
                    "command": cli.command.name(),
                    "error": {
                        "exit": failure.code,
                        "kind": failure.kind,
                        "message": failure.message,
                    },
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("valid JSON"));
            }
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: &Cli) -> Result<Rendered, Failure> {
    match &cli.command {
        Command::Converge { delta } => cmd_converge(cli, delta),
        Command::Fan { delta, t, coalition } => {
            let network = load_network(cli)?;
            let delta = parse_delta(delta)?;
            let params = AttenuationParams::new(delta.clone(), *t)?;
            value_output(cli, "fan", &network, &delta, Some(*t), coalition, &|c| {
                Ok(fan_value(c, &params))
            })
        }
        Command::An { delta, coalition } => {
            let network = load_network(cli)?;
            let delta = parse_delta(delta)?;
            value_output(cli, "an", &network, &delta, None, coalition, &|c| {
                an_value(c, &delta)
            })
        }
        Command::Diff { delta, t, coalition, x } => {
            let network = load_network(cli)?;
            let delta = parse_delta(delta)?;
            if *x {
                let allocation = difference_distribution(&network, &delta, *t)?;
                allocation_output(cli, "diff", &network, &delta, Some(*t), &allocation)
            } else {
                value_output(cli, "diff", &network, &delta, Some(*t), coalition, &|c| {
                    difference_value(c, &delta, *t)
                })
            }
        }
        Command::Productivity { delta, t, coalition, oracle } => {
            cmd_productivity(cli, delta, *t, coalition, *oracle)
        }
        Command::Shapley { delta, oracle } => {
            let network = load_network(cli)?;
            let delta = parse_delta(delta)?;
            let allocation = if *oracle {
                shapley_oracle(&an_table(&network, &delta)?)?
            } else {
                shapley_closed(&network, &delta)?
            };
            allocation_output(cli, "shapley", &network, &delta, None, &allocation)
        }
        Command::Lrp { delta, series } => {
            let network = load_network(cli)?;
            let delta = parse_delta(delta)?;
            let allocation = match series {
                Some(0) => return Err(input_failure("--series needs a horizon of at least 1")),
                Some(t_max) => {
                    // Validates the weight before the series helper asserts it.
                    AttenuationParams::new(delta.clone(), *t_max)?;
                    lrp_series_oracle(&network, &delta, *t_max)
                }
                None => lrp(&network, &delta)?,
            };
            allocation_output(cli, "lrp", &network, &delta, *series, &allocation)
        }
        Command::CoreCheck { delta, rule, t, payoffs } => {
            cmd_core_check(cli, delta, *rule, *t, payoffs)
        }
        Command::Convexity { delta, t } => cmd_convexity(cli, delta, *t),
        Command::Axioms { delta, rule, t, payoffs, independence } => {
            if *independence {
                cmd_independence(cli)
            } else {
                cmd_axioms(cli, delta.as_deref(), *rule, *t, payoffs)
            }
        }
        Command::PaperTables { dir, write } => cmd_paper_tables(cli, dir, *write),
    }
}

// ---------------------------------------------------------------- plumbing

fn load_network(cli: &Cli) -> Result<BipartiteNetwork, Failure> {
    match (&cli.network, cli.k, cli.m) {
        (Some(path), None, None) => {
            let text = fs::read_to_string(path).map_err(|err| {
                input_failure(format!("cannot read {}: {err}", path.display()))
            })?;
            parse_network_file(&text)
        }
        (None, Some(k), Some(m)) => Ok(BipartiteNetwork::from_sizes(k, m)?),
        (None, None, None) => Err(input_failure(
            "no network given: use --k and --m, or --network <file>",
        )),
        _ => Err(input_failure("give both --k and --m")),
    }
}

fn parse_network_file(text: &str) -> Result<BipartiteNetwork, Failure> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|err| input_failure(format!("network file is not valid JSON: {err}")))?;
    let side = |key: &str| -> Result<Vec<String>, Failure> {
        doc.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| {
                input_failure(format!("network file needs an array of labels under \"{key}\""))
            })?
            .iter()
            .map(|v| {
                v.as_str().map(str::to_owned).ok_or_else(|| {
                    input_failure(format!("labels under \"{key}\" must be strings"))
                })
            })
            .collect()
    };
    Ok(BipartiteNetwork::new(side("K")?, side("M")?)?)
}

fn parse_delta(text: &str) -> Result<Scalar, Failure> {
    Ok(scalar::parse(text)?)
}

fn resolve_coalition(network: &BipartiteNetwork, spec: &str) -> Result<Coalition, Failure> {
    if spec.trim() == "N" {
        return Ok(network.grand());
    }
    let members = spec.split(',').map(str::trim).filter(|s| !s.is_empty());
    Ok(network.coalition(members)?)
}

/// A coalition with the first `k` left-side and first `m` right-side nodes;
/// any game value here depends on the shape only.
fn representative(network: &BipartiteNetwork, k: usize, m: usize) -> Coalition {
    let members = network.k_labels()[..k]
        .iter()
        .chain(network.m_labels()[..m].iter())
        .map(String::as_str);
    network.coalition(members).expect("labels come from the network")
}

/// What a command produced, before the output format is applied.
struct Payload {
    text: String,
    csv: Vec<Vec<String>>,
    result: Value,
}

fn finish(
    cli: &Cli,
    command: &str,
    network: Option<&BipartiteNetwork>,
    delta: Option<&Scalar>,
    t: Option<usize>,
    payload: Payload,
) -> Result<Rendered, Failure> {
    let body = match cli.output {
        OutputFormat::Text => payload.text,
        OutputFormat::Csv => csv_string(&payload.csv),
        OutputFormat::Json => {
            let doc = envelope(command, network, delta, t, cli.exact, payload.result);
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("valid JSON"))
        }
    };
    Ok(Rendered { body, exit: 0 })
}

/// Single-value or full-table output for the three game-value commands.
fn value_output(
    cli: &Cli,
    command: &str,
    network: &BipartiteNetwork,
    delta: &Scalar,
    t: Option<usize>,
    coalition: &Option<String>,
    eval: &dyn Fn(&Coalition) -> netprod::Result<Scalar>,
) -> Result<Rendered, Failure> {
    let style = cli.style();
    match coalition {
        Some(spec) => {
            let coalition = resolve_coalition(network, spec)?;
            let value = eval(&coalition)?;
            let members: Vec<&str> = coalition.members().map(|(label, _)| label).collect();
            let text = format!("{}\n", style.render(&value));
            let csv_rows = vec![
                vec!["k".into(), "m".into(), "value".into()],
                vec![
                    coalition.k_count().to_string(),
                    coalition.m_count().to_string(),
                    style.render(&value),
                ],
            ];
            let result = json!({
                "coalition": {
                    "k": coalition.k_count(),
                    "m": coalition.m_count(),
                    "members": members,
                },
                "value": json_scalar(&value),
            });
            finish(cli, command, Some(network), Some(delta), t, Payload { text, csv: csv_rows, result })
        }
        None => {
            let mut csv_rows = vec![vec!["k".into(), "m".into(), "value".into()]];
            let mut entries = Vec::new();
            for k in 0..=network.k_size() {
                for m in 0..=network.m_size() {
                    let value = eval(&representative(network, k, m))?;
                    csv_rows.push(vec![k.to_string(), m.to_string(), style.render(&value)]);
                    entries.push(json!({"k": k, "m": m, "value": json_scalar(&value)}));
                }
            }
            let text = align(&csv_rows);
            let result = json!({ "table": entries });
            finish(cli, command, Some(network), Some(delta), t, Payload { text, csv: csv_rows, result })
        }
    }
}

/// Per-node payoff output shared by the allocation commands.
fn allocation_output(
    cli: &Cli,
    command: &str,
    network: &BipartiteNetwork,
    delta: &Scalar,
    t: Option<usize>,
    allocation: &Allocation,
) -> Result<Rendered, Failure> {
    let style = cli.style();
    let mut csv_rows = vec![vec!["node".into(), "side".into(), "value".into()]];
    let mut entries = Vec::new();
    for (label, side, value) in allocation.entries() {
        csv_rows.push(vec![label.clone(), side_name(*side).into(), style.render(value)]);
        entries.push(json!({
            "node": label,
            "side": side_name(*side),
            "value": json_scalar(value),
        }));
    }
    let text = align(&csv_rows);
    let result = json!({
        "allocation": entries,
        "rule": allocation.tag(),
        "total": json_scalar(&allocation.total()),
    });
    finish(cli, command, Some(network), Some(delta), t, Payload { text, csv: csv_rows, result })
}

fn allocation_for_rule(
    network: &BipartiteNetwork,
    delta: &Scalar,
    rule: RuleArg,
    t: Option<usize>,
    payoffs: &Option<String>,
) -> Result<Allocation, Failure> {
    let rule = if payoffs.is_some() { RuleArg::Custom } else { rule };
    match rule {
        RuleArg::Productivity => Ok(productivity_allocation(network, delta)?),
        RuleArg::Shapley => Ok(shapley_closed(network, delta)?),
        RuleArg::Lrp => Ok(lrp(network, delta)?),
        RuleArg::Xt => {
            let t = t.ok_or_else(|| input_failure("rule `xt` needs --t"))?;
            Ok(difference_distribution(network, delta, t)?)
        }
        RuleArg::Custom => {
            let spec = payoffs
                .as_ref()
                .ok_or_else(|| input_failure("rule `custom` needs --payoffs v1,v2,..."))?;
            let values = spec
                .split(',')
                .map(|s| scalar::parse(s.trim()))
                .collect::<netprod::Result<Vec<_>>>()?;
            Ok(Allocation::custom_ordered(network, "cli_payoffs", values)?)
        }
    }
}

// ---------------------------------------------------------------- commands

fn cmd_converge(cli: &Cli, delta: &str) -> Result<Rendered, Failure> {
    let style = cli.style();
    let network = load_network(cli)?;
    let delta = parse_delta(delta)?;
    let verdict = convergence_check(&network, &delta)?;
    let word = if verdict.converges { "converges" } else { "diverges" };
    let text = format!(
        "{word}\nthreshold_radicand: {}\nmargin: {}\n",
        verdict.threshold_radicand,
        style.render(&verdict.margin),
    );
    let csv_rows = vec![
        vec!["field".into(), "value".into()],
        vec!["converges".into(), verdict.converges.to_string()],
        vec!["threshold_radicand".into(), verdict.threshold_radicand.to_string()],
        vec!["margin".into(), style.render(&verdict.margin)],
    ];
    let result = json!({
        "converges": verdict.converges,
        "margin": json_scalar(&verdict.margin),
        "threshold_radicand": verdict.threshold_radicand,
    });
    finish(cli, "converge", Some(&network), Some(&delta), None, Payload { text, csv: csv_rows, result })
}

fn cmd_productivity(
    cli: &Cli,
    delta: &str,
    t: Option<usize>,
    coalition: &Option<String>,
    oracle: bool,
) -> Result<Rendered, Failure> {
    let style = cli.style();
    let network = load_network(cli)?;
    let delta = parse_delta(delta)?;
    let coalition = match coalition {
        Some(spec) => resolve_coalition(&network, spec)?,
        None => network.grand(),
    };
    let mut pairs: Vec<(String, netprod::Side, Scalar)> = Vec::new();
    match t {
        Some(t) => {
            let params = AttenuationParams::new(delta.clone(), t)?;
            if oracle {
                let matrix = ProductivityMatrix::compute(&coalition, &params);
                for (label, side) in coalition.members() {
                    let value = matrix.node_row_sum(label).expect("member of the coalition");
                    pairs.push((label.to_owned(), side, value));
                }
            } else {
                for (label, side) in coalition.members() {
                    let value = individual_productivity(&coalition, label, &params);
                    pairs.push((label.to_owned(), side, value));
                }
            }
        }
        None => {
            if oracle {
                return Err(input_failure(
                    "--oracle recomputes the truncated walk matrix and needs --t; \
                     the limit has no matrix form",
                ));
            }
            for (label, side) in coalition.members() {
                let value = limit_productivity(&coalition, label, &delta)?;
                pairs.push((label.to_owned(), side, value));
            }
        }
    }
    let total: Scalar = pairs.iter().map(|(_, _, v)| v.clone()).sum();
    let mut csv_rows = vec![vec!["node".into(), "side".into(), "value".into()]];
    let mut entries = Vec::new();
    for (label, side, value) in &pairs {
        csv_rows.push(vec![label.clone(), side_name(*side).into(), style.render(value)]);
        entries.push(json!({
            "node": label,
            "side": side_name(*side),
            "value": json_scalar(value),
        }));
    }
    let text = align(&csv_rows);
    let result = json!({
        "coalition": {
            "k": coalition.k_count(),
            "m": coalition.m_count(),
            "members": coalition.members().map(|(l, _)| l).collect::<Vec<_>>(),
        },
        "oracle": oracle,
        "productivities": entries,
        "total": json_scalar(&total),
    });
    finish(cli, "productivity", Some(&network), Some(&delta), t, Payload { text, csv: csv_rows, result })
}

fn cmd_core_check(
    cli: &Cli,
    delta: &str,
    rule: RuleArg,
    t: Option<usize>,
    payoffs: &Option<String>,
) -> Result<Rendered, Failure> {
    let style = cli.style();
    let network = load_network(cli)?;
    let delta = parse_delta(delta)?;
    let allocation = allocation_for_rule(&network, &delta, rule, t, payoffs)?;
    let game = match (payoffs.is_none(), rule) {
        (true, RuleArg::Xt) => {
            let t = t.ok_or_else(|| input_failure("rule `xt` needs --t"))?;
            difference_table(&network, &delta, t)?
        }
        _ => an_table(&network, &delta)?,
    };
    let report = core_check(&game, &allocation)?;
    let mut text = format!(
        "in_core: {}\nefficient: {}\nviolations: {}\n",
        report.in_core,
        report.efficient,
        report.violations.len(),
    );
    let mut csv_rows = vec![vec!["k".into(), "m".into(), "shortfall".into()]];
    let mut violation_entries = Vec::new();
    for (sig, shortfall) in &report.violations {
        let (k, m) = (sig.count(netprod::Side::K), sig.count(netprod::Side::M));
        csv_rows.push(vec![k.to_string(), m.to_string(), style.render(shortfall)]);
        violation_entries.push(json!({"k": k, "m": m, "shortfall": json_scalar(shortfall)}));
    }
    if !report.violations.is_empty() {
        text.push_str(&align(&csv_rows));
    }
    let result = json!({
        "efficient": report.efficient,
        "in_core": report.in_core,
        "rule": allocation.tag(),
        "violations": violation_entries,
    });
    finish(cli, "core-check", Some(&network), Some(&delta), t, Payload { text, csv: csv_rows, result })
}

fn cmd_convexity(
    cli: &Cli,
    delta: &str,
    t: Option<usize>,
) -> Result<Rendered, Failure> {
    let style = cli.style();
    let network = load_network(cli)?;
    let delta = parse_delta(delta)?;
    let game = match t {
        Some(t) => fan_table(&network, &AttenuationParams::new(delta.clone(), t)?),
        None => an_table(&network, &delta)?,
    };
    let report = convexity_check(&game)?;
    let mut text = format!("convex: {}\n", report.convex);
    let mut csv_row = vec![report.convex.to_string()];
    let violation_json = match &report.violation {
        Some(v) => {
            let smaller = (v.smaller.count(netprod::Side::K), v.smaller.count(netprod::Side::M));
            let larger = (v.larger.count(netprod::Side::K), v.larger.count(netprod::Side::M));
            text.push_str(&format!(
                "side: {}\nsmaller: ({},{}) marginal {}\nlarger: ({},{}) marginal {}\n",
                side_name(v.side),
                smaller.0,
                smaller.1,
                style.render(&v.smaller_marginal),
                larger.0,
                larger.1,
                style.render(&v.larger_marginal),
            ));
            csv_row.extend([
                side_name(v.side).to_string(),
                smaller.0.to_string(),
                smaller.1.to_string(),
                larger.0.to_string(),
                larger.1.to_string(),
                style.render(&v.smaller_marginal),
                style.render(&v.larger_marginal),
            ]);
            json!({
                "larger": {"k": larger.0, "m": larger.1},
                "larger_marginal": json_scalar(&v.larger_marginal),
                "side": side_name(v.side),
                "smaller": {"k": smaller.0, "m": smaller.1},
                "smaller_marginal": json_scalar(&v.smaller_marginal),
            })
        }
        None => {
            csv_row.extend(std::iter::repeat_n(String::new(), 7));
            Value::Null
        }
    };
    let csv_rows = vec![
        vec![
            "convex".into(),
            "side".into(),
            "smaller_k".into(),
            "smaller_m".into(),
            "larger_k".into(),
            "larger_m".into(),
            "smaller_marginal".into(),
            "larger_marginal".into(),
        ],
        csv_row,
    ];
    let result = json!({ "convex": report.convex, "violation": violation_json });
    finish(cli, "convexity", Some(&network), Some(&delta), t, Payload { text, csv: csv_rows, result })
}

fn axiom_witness_text(report: &AxiomReport) -> Vec<String> {
    let mut lines = Vec::new();
    if let Some((total, grand)) = &report.ef_witness {
        lines.push(format!(
            "witness(ef): payoffs total {} but the grand value is {}",
            scalar::to_exact(total),
            scalar::to_exact(grand),
        ));
    }
    if let Some((a, pay_a, b, pay_b)) = &report.eb_witness {
        lines.push(format!(
            "witness(eb): {a} gets {} but {b} gets {}",
            scalar::to_exact(pay_a),
            scalar::to_exact(pay_b),
        ));
    }
    if let Some((k_rate, m_rate)) = &report.lbp_witness {
        lines.push(format!(
            "witness(lbp): per-link surplus rates {} vs {}",
            scalar::to_exact(k_rate),
            scalar::to_exact(m_rate),
        ));
    }
    lines
}

fn axiom_witness_json(report: &AxiomReport) -> (Value, Value, Value) {
    let ef = match &report.ef_witness {
        Some((total, grand)) => json!({
            "grand": json_scalar(grand),
            "total": json_scalar(total),
        }),
        None => Value::Null,
    };
    let eb = match &report.eb_witness {
        Some((a, pay_a, b, pay_b)) => json!({
            "node_a": a,
            "node_b": b,
            "payoff_a": json_scalar(pay_a),
            "payoff_b": json_scalar(pay_b),
        }),
        None => Value::Null,
    };
    let lbp = match &report.lbp_witness {
        Some((k_rate, m_rate)) => json!({
            "k_rate": json_scalar(k_rate),
            "m_rate": json_scalar(m_rate),
        }),
        None => Value::Null,
    };
    (ef, eb, lbp)
}

fn cmd_axioms(
    cli: &Cli,
    delta: Option<&str>,
    rule: RuleArg,
    t: Option<usize>,
    payoffs: &Option<String>,
) -> Result<Rendered, Failure> {
    let delta_text =
        delta.ok_or_else(|| input_failure("--delta is required without --independence"))?;
    let network = load_network(cli)?;
    let delta = parse_delta(delta_text)?;
    let allocation = allocation_for_rule(&network, &delta, rule, t, payoffs)?;
    let report = netprod::axiom_check(&network, &delta, &allocation)?;
    let mut text = format!("ef: {}\neb: {}\nlbp: {}\n", report.ef, report.eb, report.lbp);
    for line in axiom_witness_text(&report) {
        text.push_str(&line);
        text.push('\n');
    }
    let witness_for = |axiom: &str, report: &AxiomReport| -> String {
        axiom_witness_text(report)
            .into_iter()
            .find(|line| line.starts_with(&format!("witness({axiom})")))
            .map(|line| line.split_once(": ").expect("formatted above").1.to_string())
            .unwrap_or_default()
    };
    let csv_rows = vec![
        vec!["axiom".into(), "holds".into(), "witness".into()],
        vec!["ef".into(), report.ef.to_string(), witness_for("ef", &report)],
        vec!["eb".into(), report.eb.to_string(), witness_for("eb", &report)],
        vec!["lbp".into(), report.lbp.to_string(), witness_for("lbp", &report)],
    ];
    let (ef_witness, eb_witness, lbp_witness) = axiom_witness_json(&report);
    let result = json!({
        "eb": report.eb,
        "eb_witness": eb_witness,
        "ef": report.ef,
        "ef_witness": ef_witness,
        "lbp": report.lbp,
        "lbp_witness": lbp_witness,
        "rule": allocation.tag(),
    });
    finish(cli, "axioms", Some(&network), Some(&delta), t, Payload { text, csv: csv_rows, result })
}

fn cmd_independence(cli: &Cli) -> Result<Rendered, Failure> {
    let cases = independence_suite();
    let mut text = String::new();
    let mut csv_rows = vec![vec![
        "case".into(),
        "ef".into(),
        "eb".into(),
        "lbp".into(),
        "as_claimed".into(),
    ]];
    let mut case_entries = Vec::new();
    for case in &cases {
        let (ef, eb, lbp) = case.report.flags();
        text.push_str(&format!(
            "case: {} (K={}, M={}, delta={})\n  expected: ef={} eb={} lbp={}\n  \
             observed: ef={ef} eb={eb} lbp={lbp}\n  as_claimed: {}\n",
            case.name,
            case.network.k_size(),
            case.network.m_size(),
            scalar::to_exact(&case.delta),
            case.expected.0,
            case.expected.1,
            case.expected.2,
            case.as_claimed,
        ));
        for line in axiom_witness_text(&case.report) {
            text.push_str("  ");
            text.push_str(&line);
            text.push('\n');
        }
        csv_rows.push(vec![
            case.name.to_string(),
            ef.to_string(),
            eb.to_string(),
            lbp.to_string(),
            case.as_claimed.to_string(),
        ]);
        let (ef_witness, eb_witness, lbp_witness) = axiom_witness_json(&case.report);
        case_entries.push(json!({
            "as_claimed": case.as_claimed,
            "delta": json_scalar(&case.delta),
            "eb": eb,
            "eb_witness": eb_witness,
            "ef": ef,
            "ef_witness": ef_witness,
            "expected": {
                "eb": case.expected.1,
                "ef": case.expected.0,
                "lbp": case.expected.2,
            },
            "k": case.network.k_size(),
            "lbp": lbp,
            "lbp_witness": lbp_witness,
            "m": case.network.m_size(),
            "name": case.name,
        }));
    }
    let result = json!({ "cases": case_entries });
    finish(cli, "axioms", None, None, None, Payload { text, csv: csv_rows, result })
}

fn cmd_paper_tables(
    cli: &Cli,
    dir: &Option<PathBuf>,
    write: bool,
) -> Result<Rendered, Failure> {
    let dir = dir.clone().unwrap_or_else(default_dir);
    let tables = all_tables();
    if write {
        fs::create_dir_all(&dir).map_err(|err| {
            input_failure(format!("cannot create {}: {err}", dir.display()))
        })?;
        let mut text = String::new();
        let mut csv_rows = vec![vec!["table".into(), "status".into()]];
        let mut names = Vec::new();
        for table in &tables {
            let path = dir.join(format!("{}.txt", table.name));
            fs::write(&path, &table.content).map_err(|err| {
                input_failure(format!("cannot write {}: {err}", path.display()))
            })?;
            text.push_str(&format!("wrote {}\n", path.display()));
            csv_rows.push(vec![table.name.to_string(), "written".into()]);
            names.push(table.name);
        }
        let result = json!({
            "dir": dir.display().to_string(),
            "tables": names,
            "wrote": true,
        });
        return finish(cli, "paper-tables", None, None, None, Payload { text, csv: csv_rows, result });
    }
    let mut text = String::new();
    let mut csv_rows = vec![vec!["table".into(), "status".into()]];
    let mut entries = Vec::new();
    let mut clean = true;
    for table in &tables {
        let path = dir.join(format!("{}.txt", table.name));
        let golden = fs::read_to_string(&path).ok();
        let status = compare(&table.content, golden.as_deref());
        match &status {
            TableStatus::Ok => text.push_str(&format!("{}  ok\n", table.name)),
            TableStatus::Missing => {
                clean = false;
                text.push_str(&format!(
                    "{}  missing golden {} (bootstrap with --write)\n",
                    table.name,
                    path.display(),
                ));
            }
            TableStatus::Mismatch { diff } => {
                clean = false;
                text.push_str(&format!("{}  mismatch\n", table.name));
                for line in diff.lines() {
                    text.push_str(&format!("  {line}\n"));
                }
            }
        }
        csv_rows.push(vec![table.name.to_string(), status.label().to_string()]);
        entries.push(json!({"name": table.name, "status": status.label()}));
    }
    text.push_str(&format!(
        "{} tables, {}\n",
        tables.len(),
        if clean { "all match".to_string() } else { "with differences".to_string() },
    ));
    let result = json!({
        "dir": dir.display().to_string(),
        "tables": entries,
        "wrote": false,
    });
    let mut rendered = finish(cli, "paper-tables", None, None, None, Payload { text, csv: csv_rows, result })?;
    rendered.exit = if clean { 0 } else { 1 };
    Ok(rendered)
}
