use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use simplicial_forms::contraction::{dupont_h, h_path, k_path, manetti_k};
use simplicial_forms::derham::{
    elementary_projection, integrate, pullback, whitney_basis, whitney_form,
};
use simplicial_forms::verify::{run_suite, Suite, SuiteConfig};
use simplicial_forms::{parse_form, DifferentialForm, SimplicialMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Verb {
    Eval,
    D,
    Wedge,
    Pullback,
    Integrate,
    Whitney,
    Pi,
    H,
    K,
    Hpath,
    Kpath,
    Basis,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exact polynomial differential forms on standard simplices and the simplicial contraction
/// onto Whitney forms.
#[derive(Debug, Parser)]
#[command(name = "contract", version)]
struct Args {
    verb: Verb,
    /// Dimension of the standard simplex.
    #[arg(short = 'm')]
    m: Option<usize>,
    /// A form, e.g. "1/2*x1^2*dx1^dx2". `wedge` takes it twice.
    #[arg(long)]
    input: Vec<String>,
    /// Values of a monotone map, e.g. "0,2".
    #[arg(long)]
    map: Option<String>,
    /// Source ordinal of --map.
    #[arg(long)]
    from: Option<usize>,
    /// Target ordinal of --map (defaults to -m).
    #[arg(long)]
    to: Option<usize>,
    /// Suite name or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 2)]
    max_degree: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Defects,
}

impl From<simplicial_forms::Error> for Failure {
    fn from(e: simplicial_forms::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome<T> = Result<T, Failure>;

fn require_m(args: &Args) -> Outcome<usize> {
    args.m
        .ok_or_else(|| Failure::Usage(format!("{:?} needs -m", args.verb).to_lowercase()))
}

fn single_input(args: &Args, m: usize) -> Outcome<DifferentialForm> {
    match args.input.as_slice() {
        [text] => Ok(parse_form(text, m)?),
        _ => Err(Failure::Usage("expected exactly one --input".into())),
    }
}

fn parse_map(args: &Args) -> Outcome<SimplicialMap> {
    let text = args
        .map
        .as_deref()
        .ok_or_else(|| Failure::Usage("missing --map".into()))?;
    let values = text
        .split(',')
        .map(|v| v.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("bad --map {text:?}: {e}")))?;
    let to = args
        .to
        .or(args.m)
        .ok_or_else(|| Failure::Usage("--map needs --to".into()))?;
    let from = args.from.unwrap_or(values.len().saturating_sub(1));
    Ok(SimplicialMap::new(values, from, to)?)
}

fn form_output(format: Format, form: &DifferentialForm) -> String {
    match format {
        Format::Text => form.to_string(),
        Format::Json => json!({ "form": form.to_string() }).to_string(),
    }
}

fn run(args: &Args) -> Outcome<String> {
    let format = args.format;
    let form_result = |form: DifferentialForm| Ok(form_output(format, &form));
    match args.verb {
        Verb::Eval => form_result(single_input(args, require_m(args)?)?),
        Verb::D => form_result(single_input(args, require_m(args)?)?.differential()),
        Verb::Wedge => {
            let m = require_m(args)?;
            let [a, b] = args.input.as_slice() else {
                return Err(Failure::Usage("wedge expects --input twice".into()));
            };
            form_result(parse_form(a, m)?.wedge(&parse_form(b, m)?)?)
        }
        Verb::Pullback => {
            let f = parse_map(args)?;
            form_result(pullback(&f, &single_input(args, f.codomain())?)?)
        }
        Verb::Integrate => {
            let value = integrate(&single_input(args, require_m(args)?)?)?;
            Ok(match format {
                Format::Text => value.to_string(),
                Format::Json => json!({ "value": value.to_string() }).to_string(),
            })
        }
        Verb::Whitney => form_result(whitney_form(&parse_map(args)?)),
        Verb::Pi => {
            let m = require_m(args)?;
            form_result(elementary_projection(m, &single_input(args, m)?)?)
        }
        Verb::H => {
            let m = require_m(args)?;
            form_result(dupont_h(m, &single_input(args, m)?)?)
        }
        Verb::K => {
            let m = require_m(args)?;
            form_result(manetti_k(m, &single_input(args, m)?)?)
        }
        Verb::Hpath => {
            let f = parse_map(args)?;
            form_result(h_path(&f, &single_input(args, f.codomain())?)?)
        }
        Verb::Kpath => {
            let f = parse_map(args)?;
            form_result(k_path(&f, &single_input(args, f.codomain())?)?)
        }
        Verb::Basis => {
            let m = require_m(args)?;
            let basis = whitney_basis(m);
            Ok(match format {
                Format::Text => basis
                    .iter()
                    .map(|(f, w)| format!("{f}: {w}"))
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Json => {
                    let entries: Vec<Value> = basis
                        .iter()
                        .map(|(f, w)| json!({ "map": f.values(), "form": w.to_string() }))
                        .collect();
                    json!({ "m": m, "basis": entries }).to_string()
                }
            })
        }
        Verb::Verify => verify(args),
    }
}

fn verify(args: &Args) -> Outcome<String> {
    let m = require_m(args)?;
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![args.suite.parse().map_err(Failure::Usage)?]
    };
    let config = SuiteConfig::new(m, args.max_degree);
    let reports = suites
        .into_iter()
        .map(|suite| run_suite(suite, &config))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.passed());
    let out = match args.format {
        Format::Text => reports
            .iter()
            .map(|r| r.to_string().trim_end().to_string())
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json if reports.len() == 1 => {
            serde_json::to_string(&reports[0]).expect("serializable")
        }
        Format::Json => serde_json::to_string(&reports).expect("serializable"),
    };
    if passed {
        Ok(out)
    } else {
        println!("{out}");
        Err(Failure::Defects)
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Defects) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
