use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use seifert_core::dedekind::{dr_sum_direct, dr_sum_fast, DRInput};
use seifert_core::eta::{
    eta_dirac_levicivita, eta_series, eta_zero_flat, eta_zero_pullback, froyshov_f, signature_constant,
    EtaContext,
};
use seifert_core::lattice::{hnk_split_diagonalize, plumbing_form, theta_invariant_with};
use seifert_core::numkernel::DEFAULT_DIGITS;
use seifert_core::orbifold::VLineBundle;
use seifert_core::par::Execution;
use seifert_core::report::{parse_range, parse_triple, Family, Report};
use seifert_core::seifert::SeifertData;
use seifert_core::swfloer::{froyshov_row, Brieskorn};
use seifert_core::verify::{run_suite, Suite, VerifyOptions};
use seifert_core::{BigFloat, Error, ExactRational};

#[derive(Parser)]
#[command(name = "seifert", version, about = "Exact invariants of Seifert fibered 3-manifolds")]
struct Cli {
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dedekind–Rademacher sum s(β, α; x, y).
    Dedekind(DedekindArgs),
    /// Eta invariants of a line bundle's Dirac operator.
    Eta(EtaArgs),
    /// Seiberg–Witten–Floer Poincaré polynomial of Σ(a,b,c).
    Swf(SwfArgs),
    /// The Froyshov bound Z = 8m + F.
    Froyshov(BrieskornArg),
    /// Star plumbing of Σ(a,b,c) and its lattice invariants.
    Plumbing(PlumbingArgs),
    /// Table of (F, 8m, Z, P) rows.
    Table(TableArgs),
    /// Run a self-check suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct BrieskornArg {
    /// Pairwise coprime triple a,b,c.
    #[arg(long, value_parser = triple)]
    brieskorn: (i64, i64, i64),
}

#[derive(Args)]
struct DedekindArgs {
    #[arg(long, allow_hyphen_values = true)]
    beta: i64,
    #[arg(long)]
    alpha: i64,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    x: ExactRational,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    y: ExactRational,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    method: Method,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Fast,
    Direct,
    Both,
}

#[derive(Args)]
struct EtaArgs {
    #[arg(long, value_parser = triple, conflicts_with = "seifert", required_unless_present = "seifert")]
    brieskorn: Option<(i64, i64, i64)>,
    /// General form g:b:a1/b1,a2/b2,...
    #[arg(long, allow_hyphen_values = true)]
    seifert: Option<SeifertData>,
    /// Isotropy weights of the bundle, one per cone point.
    #[arg(long, value_delimiter = ',')]
    gammas: Option<Vec<i64>>,
    /// Smooth degree of the bundle.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    degree: i64,
    /// Expected holonomy parameter; a mismatch exits with status 1.
    #[arg(long)]
    rho: Option<ExactRational>,
    /// Also evaluate the eta series at s.
    #[arg(long, allow_hyphen_values = true)]
    at: Option<String>,
    #[arg(long, default_value_t = DEFAULT_DIGITS)]
    digits: usize,
    /// Levi-Civita adiabatic parameter r in (0, 1].
    #[arg(long)]
    r: Option<ExactRational>,
}

#[derive(Args)]
struct SwfArgs {
    #[arg(long, value_parser = triple)]
    brieskorn: (i64, i64, i64),
    #[arg(long, conflicts_with = "latex")]
    json: bool,
    #[arg(long)]
    latex: bool,
}

#[derive(Args)]
struct PlumbingArgs {
    #[arg(long, value_parser = triple)]
    brieskorn: (i64, i64, i64),
    #[arg(long)]
    theta: bool,
    #[arg(long)]
    diagonalize: bool,
    #[arg(long)]
    matrix: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_parser = triple, num_args = 0.., conflicts_with = "family")]
    triples: Vec<(i64, i64, i64)>,
    /// One of 2,3,6k+1 / 2,3,6k-1 / 2,4k+1,4k+3 / 3,3k+1,3k+2.
    #[arg(long, requires = "k")]
    family: Option<Family>,
    /// Inclusive index range such as 1..50.
    #[arg(long, value_parser = range)]
    k: Option<std::ops::RangeInclusive<i64>>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_parser = suite)]
    suite: Suite,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 500)]
    cases: usize,
    #[arg(long, default_value_t = 50)]
    k_max: i64,
    #[arg(long, default_value_t = DEFAULT_DIGITS)]
    digits: usize,
}

fn triple(s: &str) -> Result<(i64, i64, i64), String> {
    parse_triple(s).map_err(|e| e.to_string())
}

fn range(s: &str) -> Result<std::ops::RangeInclusive<i64>, String> {
    parse_range(s).map_err(|e| e.to_string())
}

fn suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn dedekind(args: &DedekindArgs) -> Outcome {
    let input = DRInput::new(args.beta, args.alpha, args.x.clone(), args.y.clone())?;
    let mut out = json!({ "beta": args.beta, "alpha": args.alpha, "x": args.x, "y": args.y });
    let (fast, direct) = match args.method {
        Method::Fast => (Some(dr_sum_fast(&input)), None),
        Method::Direct => (None, Some(dr_sum_direct(&input))),
        Method::Both => (Some(dr_sum_fast(&input)), Some(dr_sum_direct(&input))),
    };
    if let Some(v) = &fast {
        out["fast"] = json!(v);
    }
    if let Some(v) = &direct {
        out["direct"] = json!(v);
    }
    print_json(&out);
    match (fast, direct) {
        (Some(a), Some(b)) if a != b => Err(Failure::Mismatch(format!("fast {a} and direct {b} disagree"))),
        _ => Ok(()),
    }
}

fn eta(args: &EtaArgs) -> Outcome {
    let n = match (&args.brieskorn, &args.seifert) {
        (Some((a, b, c)), _) => SeifertData::brieskorn(*a, *b, *c)?,
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(Failure::Usage("give --brieskorn or --seifert".into())),
    };
    let gammas = args.gammas.clone().unwrap_or_else(|| vec![0; n.alphas().len()]);
    if gammas.len() != n.alphas().len() {
        return Err(Failure::Usage(format!(
            "{} weights for {} cone points",
            gammas.len(),
            n.alphas().len()
        )));
    }
    let bundle = VLineBundle::new(n.base().clone(), args.degree, gammas)?;
    let flat = EtaContext::flat(n.clone(), &bundle)?;
    let pull = EtaContext::pullback(n.clone(), bundle)?;
    let mut out = json!({
        "seifert": n.to_string(),
        "ell": n.ell(),
        "rho": flat.rho(),
        "canonical_bundle": flat.bundle(),
        "eta0": eta_zero_flat(&flat)?,
        "eta0_pullback": eta_zero_pullback(&pull)?,
    });
    if n.is_homology_sphere() {
        out["F"] = json!(froyshov_f(&n)?);
        out["signature_constant"] = json!(signature_constant(&n)?);
    }
    if let Some(r) = &args.r {
        let trivial = EtaContext::trivial_class(n.clone())?;
        out["eta_levi_civita"] = json!(eta_dirac_levicivita(&trivial, r)?);
    }
    if let Some(s) = &args.at {
        let s: BigFloat = format!("{s}@{}", args.digits)
            .parse()
            .map_err(|e: seifert_core::ParseError| Failure::Usage(e.to_string()))?;
        out["series"] = json!({ "s": s, "value": eta_series(&flat, &s, args.digits)? });
    }
    print_json(&out);
    match &args.rho {
        Some(expected) if expected != flat.rho() => Err(Failure::Mismatch(format!(
            "expected rho = {expected}, computed {}",
            flat.rho()
        ))),
        _ => Ok(()),
    }
}

fn swf(args: &SwfArgs, exec: Execution) -> Outcome {
    let (a, b, c) = args.brieskorn;
    let row = froyshov_row(a, b, c, exec)?;
    let data = Brieskorn::new(a, b, c)?;
    if args.json {
        let delta: Vec<_> = data.delta().iter().map(|p| [p.x, p.y, p.z]).collect();
        print_json(&json!({
            "triple": [a, b, c],
            "P": row.p,
            "P_minus": data.poincare_polynomial_minus()?,
            "kappa": data.kappa(),
            "delta": delta,
        }));
    } else if args.latex {
        print!("{}", Report { rows: vec![row] }.to_latex_polynomials());
    } else {
        println!("P = {}", row.p);
    }
    Ok(())
}

fn froyshov(args: &BrieskornArg, exec: Execution) -> Outcome {
    let (a, b, c) = args.brieskorn;
    let row = froyshov_row(a, b, c, exec)?;
    print_json(&serde_json::to_value(&row).expect("rows serialize"));
    Ok(())
}

fn plumbing(args: &PlumbingArgs, exec: Execution) -> Outcome {
    let (a, b, c) = args.brieskorn;
    let q = plumbing_form(a, b, c)?;
    let mut out = json!({ "triple": [a, b, c], "rank": q.rank(), "determinant": q.determinant().to_string() });
    if args.matrix {
        out["matrix"] = json!(q);
        out["inverse"] = json!(q.integer_inverse()?);
    }
    if args.theta {
        out["theta"] = json!(theta_invariant_with(&q, exec)?);
    }
    if args.diagonalize {
        let split = hnk_split_diagonalize(&q)?;
        out["diagonal_rank"] = json!(split.diagonal_rank);
        out["residual"] = json!(split.residual);
        out["residual_is_negative_e8"] = json!(split.residual_is_negative_e8()?);
    }
    print_json(&out);
    Ok(())
}

fn table(args: &TableArgs, exec: Execution) -> Outcome {
    let report = match (&args.family, &args.k) {
        (Some(fam), Some(ks)) => Report::from_family(*fam, ks.clone(), exec)?,
        (None, Some(_)) => return Err(Failure::Usage("--k needs --family".into())),
        _ => Report::from_triples(&args.triples, exec)?,
    };
    let text = match args.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Latex => report.to_latex(),
    };
    match &args.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn verify(args: &VerifyArgs, exec: Execution) -> Outcome {
    let opts = VerifyOptions {
        seed: args.seed,
        cases: args.cases,
        k_max: args.k_max,
        digits: args.digits,
        exec,
    };
    let out = run_suite(args.suite, &opts)?;
    match out.mismatch {
        None => {
            println!("{}: {} checks passed", out.suite, out.checks);
            Ok(())
        }
        Some(m) => Err(Failure::Mismatch(format!("{}: counterexample: {m}", out.suite))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Execution::Sequential } else { Execution::best() };
    let result = match &cli.command {
        Command::Dedekind(a) => dedekind(a),
        Command::Eta(a) => eta(a),
        Command::Swf(a) => swf(a, exec),
        Command::Froyshov(a) => froyshov(a, exec),
        Command::Plumbing(a) => plumbing(a, exec),
        Command::Table(a) => table(a, exec),
        Command::Verify(a) => verify(a, exec),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(m)) => {
            eprintln!("mismatch: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
