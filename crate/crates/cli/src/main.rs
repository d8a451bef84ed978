use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use overdet::io::{parse_pde_file, parse_point_json, parse_poly_file, PolyFile, ProlongedDump};
use overdet::jet::{minimal_orders, prolong_with, Counts, Flavor, PdeSystem};
use overdet::oracle::{gcd_univariate, rational_root_search, sylvester_resultant};
use overdet::pipeline::solve_prolonged;
use overdet::rank::{certify, RankError};
use overdet::reduction::{eliminate_variable, reduce_chain, solve_overdetermined, Status};
use overdet::{Error, Execution, Polynomial};

mod render;

#[derive(Parser)]
#[command(name = "overdet", version, about = "Prolong, reduce and solve overdetermined systems exactly")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include every reduction step in text output.
    #[arg(long, global = true)]
    trace: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Run batch loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Equation and unknown counts for given orders, or the smallest feasible orders.
    Counts {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        /// Number of independent variables; defaults to the length of --orders.
        #[arg(long)]
        m: Option<usize>,
        /// Comma-separated N_1,...,N_m.
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = clap::value_parser!(u32).range(1..))]
        orders: Option<Vec<u32>>,
        /// Search for orders minimizing N_H subject to N_H >= N_S.
        #[arg(long)]
        minimize: bool,
        /// Largest N_l tried by --minimize.
        #[arg(long, default_value_t = 20)]
        cap: u32,
    },
    /// Prolong a .pde system.
    Prolong {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = clap::value_parser!(u32).range(1..))]
        orders: Vec<u32>,
        #[arg(long)]
        extended: bool,
    },
    /// Reduce a pair of univariate polynomials to a linear pair.
    Reduce {
        input: PathBuf,
        #[arg(long)]
        var: Option<String>,
    },
    /// Eliminate one variable from a .poly system.
    Eliminate {
        input: PathBuf,
        #[arg(long)]
        var: String,
    },
    /// Solve a .poly system, or a .pde system prolonged to --orders.
    Solve {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = clap::value_parser!(u32).range(1..))]
        orders: Option<Vec<u32>>,
    },
    /// Jacobian rank of a prolonged .pde system at a point.
    Rank {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = clap::value_parser!(u32).range(1..))]
        orders: Vec<u32>,
        /// JSON object mapping jets and base variables to rationals.
        #[arg(long)]
        point: PathBuf,
        #[arg(long)]
        extended: bool,
    },
    /// Reference computations for cross-checking.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Monic gcd of the first two equations.
    Gcd {
        input: PathBuf,
        #[arg(long)]
        var: Option<String>,
    },
    /// Sylvester resultant of two equations.
    Resultant {
        input: PathBuf,
        #[arg(long)]
        var: String,
        /// 1-based equation numbers.
        #[arg(long, value_parser = parse_pair, default_value = "1,2")]
        pair: (usize, usize),
    },
    /// Common rational zeros with |numerator|, denominator <= bound.
    Roots {
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        bound: u32,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected two comma-separated equation numbers")?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("`{t}` is not an equation number"));
    Ok((num(a)?, num(b)?))
}

/// Rendered output plus the process exit code.
struct Report {
    json: Value,
    text: String,
    code: u8,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_poly(path: &Path) -> Result<PolyFile> {
    parse_poly_file(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn read_pde(path: &Path) -> Result<PdeSystem> {
    parse_pde_file(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn is_pde(path: &Path, text: &str) -> bool {
    match path.extension().and_then(|e| e.to_str()) {
        Some("pde") => true,
        Some("poly") => false,
        _ => text.lines().any(|l| l.trim_start().starts_with("unknowns")),
    }
}

fn status_code(status: Status) -> u8 {
    match status {
        Status::Solved => 0,
        Status::Inconsistent => 2,
        Status::Residual | Status::Degenerate => 3,
    }
}

fn single_var(file: &PolyFile, var: Option<String>) -> Result<String> {
    if let Some(v) = var {
        return Ok(v);
    }
    let used: Vec<&str> =
        file.vars.names().iter().map(String::as_str).filter(|n| file.equations.iter().any(|f| f.involves(n))).collect();
    match used.as_slice() {
        [v] => Ok(v.to_string()),
        _ => bail!("several variables occur; choose one with --var"),
    }
}

fn first_two(file: &PolyFile) -> Result<(&Polynomial, &Polynomial)> {
    match file.equations.as_slice() {
        [f, g, ..] => Ok((f, g)),
        _ => bail!("need at least two equations"),
    }
}

fn exec(cli: &Cli) -> Execution {
    if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let mode = exec(cli);
    match &cli.command {
        Command::Counts { p, n, m, orders, minimize, cap } => {
            let mut json = json!({});
            let mut text = String::new();
            if let Some(orders) = orders {
                if m.is_some_and(|m| m != orders.len()) {
                    bail!("--orders has {} entries but --m is {}", orders.len(), m.unwrap());
                }
                let c = Counts::new(*p, *n, orders);
                let bound = Counts::active_bound(*p, *n, orders);
                json = json!({
                    "orders": orders,
                    "N_H": c.n_h, "N_S": c.n_s, "N_H_w": c.n_h_w, "N_S_w": c.n_s_w,
                    "active_bound": bound.to_string(),
                    "nh_ge_ns": c.n_h >= c.n_s,
                });
                text += &render::counts(&c, &bound);
            } else if !minimize {
                bail!("give --orders, --minimize, or both");
            }
            if *minimize {
                let m = m.or(orders.as_ref().map(Vec::len)).ok_or_else(|| anyhow!("--minimize needs --m"))?;
                let r = minimal_orders(*p, *n, m, *cap).map_err(Error::from)?;
                text += &render::minimal(&r);
                json["minimal"] = serde_json::to_value(&r)?;
            }
            Ok(Report { json, text, code: 0 })
        }
        Command::Prolong { input, orders, extended } => {
            let sys = read_pde(input)?;
            let flavor = if *extended { Flavor::Extended } else { Flavor::Plain };
            let ps = prolong_with(&sys, orders, flavor, mode).map_err(Error::from)?;
            let dump = ProlongedDump::new(&ps);
            Ok(Report { text: render::prolonged(&dump), json: serde_json::to_value(&dump)?, code: 0 })
        }
        Command::Reduce { input, var } => {
            let file = read_poly(input)?;
            let var = single_var(&file, var.clone())?;
            let (f, g) = first_two(&file)?;
            let out = reduce_chain(f, g, &var).map_err(Error::from)?;
            Ok(Report { text: render::outcome(&out, cli.trace), json: out.to_json(), code: status_code(out.status) })
        }
        Command::Eliminate { input, var } => {
            let file = read_poly(input)?;
            let e = eliminate_variable(&file.equations, var).map_err(Error::from)?;
            let strs = |v: &[Polynomial]| v.iter().map(|f| f.to_string()).collect::<Vec<_>>();
            let json = json!({
                "variable": e.variable,
                "pivot": e.pivot.to_string(),
                "pivot_index": e.pivot_index + 1,
                "reduced": strs(&e.reduced),
                "linear_forms": e.linear_forms.iter().map(|lf| json!({
                    "lead": lf.lead.to_string(),
                    "constant": lf.constant.to_string(),
                })).collect::<Vec<_>>(),
                "unresolved": strs(&e.unresolved),
                "degenerate": e.degenerate,
                "conditions": serde_json::to_value(&e.conditions)?,
                "steps": serde_json::to_value(&e.trace)?,
            });
            Ok(Report { text: render::elimination(&e, cli.trace), json, code: 0 })
        }
        Command::Solve { input, orders } => {
            let text = read(input)?;
            if is_pde(input, &text) {
                let sys = parse_pde_file(&text).with_context(|| format!("in {}", input.display()))?;
                let orders = orders.as_ref().ok_or_else(|| anyhow!("solving a .pde system needs --orders"))?;
                let ps = prolong_with(&sys, orders, Flavor::Plain, mode).map_err(Error::from)?;
                let out = solve_prolonged(&ps)?;
                let code = status_code(out.outcome.status);
                let text = render::jet_outcome(&out, cli.trace);
                Ok(Report { json: serde_json::to_value(&out)?, text, code })
            } else {
                let file = parse_poly_file(&text).with_context(|| format!("in {}", input.display()))?;
                let out = solve_overdetermined(&file.equations).map_err(Error::from)?;
                Ok(Report {
                    text: render::outcome(&out, cli.trace),
                    json: out.to_json(),
                    code: status_code(out.status),
                })
            }
        }
        Command::Rank { input, orders, point, extended } => {
            let sys = read_pde(input)?;
            let flavor = if *extended { Flavor::Extended } else { Flavor::Plain };
            let ps = prolong_with(&sys, orders, flavor, mode).map_err(Error::from)?;
            let pt = parse_point_json(&read(point)?, sys.m()).with_context(|| format!("in {}", point.display()))?;
            let r = certify(&ps, &pt).map_err(Error::from)?;
            let code = if r.certified { 0 } else { 4 };
            Ok(Report { text: render::rank(&r), json: serde_json::to_value(&r)?, code })
        }
        Command::Oracle { which } => match which {
            OracleCommand::Gcd { input, var } => {
                let file = read_poly(input)?;
                let var = single_var(&file, var.clone())?;
                let (f, g) = first_two(&file)?;
                let h = gcd_univariate(f, g, &var).map_err(Error::from)?;
                Ok(Report { text: format!("gcd = {h}\n"), json: json!({ "gcd": h.to_string() }), code: 0 })
            }
            OracleCommand::Resultant { input, var, pair } => {
                let file = read_poly(input)?;
                let get = |i: usize| file.equations.get(i.wrapping_sub(1)).ok_or_else(|| anyhow!("no equation {i}"));
                let r = sylvester_resultant(get(pair.0)?, get(pair.1)?, var).map_err(Error::from)?;
                Ok(Report { text: format!("resultant = {r}\n"), json: json!({ "resultant": r.to_string() }), code: 0 })
            }
            OracleCommand::Roots { input, bound } => {
                let file = read_poly(input)?;
                let rs = rational_root_search(&file.equations, *bound, mode).map_err(Error::from)?;
                Ok(Report { text: render::roots(&rs), json: serde_json::to_value(&rs)?, code: 0 })
            }
        },
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report.json)? + "\n",
        Format::Text => report.text.clone(),
    };
    match &cli.output {
        Some(path) => fs::write(path, body).with_context(|| format!("cannot write {}", path.display())),
        None => Ok(std::io::stdout().write_all(body.as_bytes())?),
    }
}

fn main() -> ExitCode {
    // Usage errors exit with 1; 2 is reserved for inconsistent systems.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = run(&cli).and_then(|r| emit(&cli, &r).map(|_| r.code));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let not_solution = matches!(e.downcast_ref::<Error>(), Some(Error::Rank(RankError::NotASolution { .. })));
            ExitCode::from(if not_solution { 5 } else { 1 })
        }
    }
}
