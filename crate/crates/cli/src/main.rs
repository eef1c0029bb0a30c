use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::SystemTime;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cotensor_core::bundle::Bundle;
use cotensor_core::connection::compose_connection;
use cotensor_core::parse::{parse_element, Space};
use cotensor_core::presets::{bundled, BUNDLED};
use cotensor_core::suites::{run_suites, Suite, SuiteConfig};
use cotensor_core::{CheckResult, Report, Strategy};

#[derive(Parser)]
#[command(
    name = "cotensor",
    version,
    about = "Exact verification of strong connections on cotensor products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Source {
    /// Bundled preset (matsumoto-ex1, matsumoto-ex2).
    #[arg(long, conflicts_with = "file")]
    preset: Option<String>,
    /// Preset or presentation document.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Connection override document merged into the bundle; repeatable.
    #[arg(long = "connection")]
    connections: Vec<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Suites to run (comma separated or repeated); all when omitted.
        #[arg(long = "suite", value_delimiter = ',')]
        suites: Option<Vec<String>>,
        /// Bound N on |n| for connection values.
        #[arg(long, default_value_t = 4)]
        n_bound: u32,
        /// Bound D on monomial degrees.
        #[arg(long, default_value_t = 6)]
        degree_bound: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Run sweeps on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Print the normal form of an expression.
    Nf {
        #[command(flatten)]
        source: Source,
        /// Algebra to work in; `cotensor` for the cotensor product.
        #[arg(long)]
        algebra: Option<String>,
        #[arg(allow_hyphen_values = true)]
        expression: String,
    },
    /// Print the composed strong connection ℓ(u^n) of the cotensor product.
    Compose {
        #[command(flatten)]
        source: Source,
        #[arg(short, allow_negative_numbers = true)]
        n: i64,
    },
    /// Print a basis of the coinvariants up to a degree.
    Coinv {
        #[command(flatten)]
        source: Source,
        /// Algebra to use; the cotensor product when omitted and present.
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
}

fn load(source: &Source) -> Result<Bundle> {
    let (label, text) = match (&source.preset, &source.file) {
        (Some(p), _) => {
            let Some(text) = bundled(p) else {
                let known: Vec<&str> = BUNDLED.iter().map(|(n, _)| *n).collect();
                bail!("unknown preset `{p}` (bundled: {})", known.join(", "));
            };
            (p.clone(), text.to_string())
        }
        (None, Some(f)) => {
            let text = std::fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
            (f.display().to_string(), text)
        }
        (None, None) => bail!("give --preset or --file"),
    };
    let mut bundle = Bundle::parse(&text).with_context(|| format!("in {label}"))?;
    for c in &source.connections {
        let text = std::fs::read_to_string(c).with_context(|| format!("reading {}", c.display()))?;
        bundle
            .merge_connections(&text)
            .with_context(|| format!("in {}", c.display()))?;
    }
    Ok(bundle)
}

#[derive(Serialize)]
struct JsonReport<'a> {
    bundle: &'a str,
    generated_at: String,
    suites: Vec<&'static str>,
    n_bound: u32,
    degree_bound: u32,
    passed: usize,
    failed: usize,
    results: &'a [CheckResult],
}

fn print_text(out: &mut impl Write, report: &Report) -> std::io::Result<()> {
    for r in &report.results {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{status} {:<10} {} [{}] {}",
            r.suite, r.check_id, r.paper_anchor, r.detail
        )?;
    }
    writeln!(out, "{} passed, {} failed", report.passed(), report.failed())
}

fn verify(
    source: &Source,
    suites: &Option<Vec<String>>,
    n_bound: u32,
    degree_bound: u32,
    format: Format,
    sequential: bool,
) -> Result<ExitCode> {
    let suites: Vec<Suite> = match suites {
        None => Suite::ALL.to_vec(),
        Some(v) => v
            .iter()
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<Suite>())
            .collect::<Result<_, _>>()?,
    };
    let config = SuiteConfig {
        suites,
        n_bound,
        degree_bound,
        strategy: if sequential {
            Strategy::Sequential
        } else {
            Strategy::default()
        },
    };
    config.validate()?;
    let bundle = load(source)?;
    if config.suites.is_empty() {
        eprintln!("warning: no suites selected; nothing to verify");
    }
    let report = run_suites(&bundle, &config)?;
    let mut out = std::io::stdout().lock();
    match format {
        Format::Text => print_text(&mut out, &report)?,
        Format::Json => {
            let mut suites: Vec<Suite> = config.suites.clone();
            suites.sort();
            suites.dedup();
            let doc = JsonReport {
                bundle: &bundle.name,
                generated_at: humantime::format_rfc3339_seconds(SystemTime::now()).to_string(),
                suites: suites.iter().map(|s| s.as_str()).collect(),
                n_bound,
                degree_bound,
                passed: report.passed(),
                failed: report.failed(),
                results: &report.results,
            };
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
        }
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn nf(source: &Source, algebra: Option<&str>, expression: &str) -> Result<()> {
    let bundle = load(source)?;
    let text = match algebra {
        Some("cotensor") => {
            let cot = bundle
                .cotensor_algebra()?
                .context("the document declares no cotensor product")?;
            let names = bundle.names(&cot)?;
            let x = parse_element(
                Space::Cotensor {
                    cot: &cot,
                    names: Some(&names),
                },
                expression,
            )?;
            cot.render(&x)
        }
        name => {
            let alg = bundle.pick_algebra(name)?;
            let p = &alg.presentation;
            p.render(&parse_element(Space::algebra(p), expression)?)
        }
    };
    println!("{text}");
    Ok(())
}

fn compose(source: &Source, n: i64) -> Result<()> {
    let bundle = load(source)?;
    let cot = Arc::new(
        bundle
            .cotensor_algebra()?
            .context("the document declares no cotensor product")?,
    );
    let decl = bundle
        .cotensor
        .as_ref()
        .expect("cotensor algebra implies a declaration");
    let form = compose_connection(
        &bundle.connection(&decl.left)?,
        &bundle.connection(&decl.right)?,
        cot.clone(),
    )?;
    println!("{}", cot.render_tensor(&form.eval(n)?));
    Ok(())
}

fn coinv(source: &Source, algebra: Option<&str>, degree: u32) -> Result<()> {
    let bundle = load(source)?;
    let mut out = std::io::stdout().lock();
    match (algebra, bundle.cotensor_algebra()?) {
        (None | Some("cotensor"), Some(cot)) => {
            for x in cot.coinvariants_basis(degree) {
                writeln!(out, "{}", cot.render(&x))?;
            }
        }
        (Some("cotensor"), None) => bail!("the document declares no cotensor product"),
        (name, _) => {
            let alg = bundle.pick_algebra(name)?;
            let right = alg.spec.right()?;
            for x in cotensor_core::comodule::coinvariants_basis(&alg.presentation, right, degree) {
                writeln!(out, "{}", alg.presentation.render(&x))?;
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Verify {
            source,
            suites,
            n_bound,
            degree_bound,
            format,
            sequential,
        } => verify(source, suites, *n_bound, *degree_bound, *format, *sequential),
        Command::Nf {
            source,
            algebra,
            expression,
        } => nf(source, algebra.as_deref(), expression).map(|_| ExitCode::SUCCESS),
        Command::Compose { source, n } => compose(source, *n).map(|_| ExitCode::SUCCESS),
        Command::Coinv {
            source,
            algebra,
            degree,
        } => coinv(source, algebra.as_deref(), *degree).map(|_| ExitCode::SUCCESS),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
