use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use overmass::cli_io::{
    exit, load_document, paper_examples, render_csv, render_table, run_with, CliError, Scenario,
};
use overmass::regime::{assess, assess_fusion, assess_sources};
use overmass::{MassRange, Order, RuleId};

#[derive(Parser)]
#[command(
    name = "overmass",
    version,
    about = "Combine bodies of evidence, including over/under/off masses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fuse all sources of a scenario and print the combined mass.
    Fuse {
        /// Scenario JSON document.
        #[arg(long)]
        input: PathBuf,
        /// Override the pipeline rule.
        #[arg(long, value_parser = parse_rule)]
        rule: Option<RuleId>,
        /// `normalize-first` or `redistribute-first`.
        #[arg(long, value_parser = parse_order)]
        order: Option<Order>,
        /// Target range as `lo,hi`.
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        target: Option<MassRange>,
        /// Skip OverNormalization.
        #[arg(long)]
        no_normalize: bool,
        /// Decimal places, rounded half to even.
        #[arg(long, default_value_t = 3)]
        precision: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print range class, sum class and advisory for each source.
    Classify {
        /// Scenario JSON document.
        #[arg(long)]
        input: PathBuf,
    },
    /// Belief and plausibility of a set for each source and the fused result.
    Belpl {
        /// Scenario JSON document.
        #[arg(long)]
        input: PathBuf,
        /// Set in `A|B` notation.
        #[arg(long)]
        set: String,
        /// Decimal places, rounded half to even.
        #[arg(long, default_value_t = 3)]
        precision: usize,
    },
    /// Reproduce the bundled worked examples against their reference values.
    PaperExamples,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
}

fn parse_rule(s: &str) -> Result<RuleId, String> {
    s.parse()
}

fn parse_order(s: &str) -> Result<Order, String> {
    s.parse()
}

fn parse_range(s: &str) -> Result<MassRange, String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `lo,hi`, got `{s}`"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("bad lo: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("bad hi: {e}"))?;
    MassRange::new(lo, hi).map_err(|e| e.to_string())
}

fn load(path: &Path) -> Result<Scenario, CliError> {
    let bytes = std::fs::read(path).map_err(|error| CliError::Io {
        path: path.display().to_string(),
        error,
    })?;
    Ok(load_document(&bytes)?)
}

fn num(x: f64, precision: usize) -> String {
    overmass::cli_io::format_value(x, precision)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fuse {
            input,
            rule,
            order,
            target,
            no_normalize,
            precision,
            format,
        } => {
            let scenario = load(&input)?;
            let mut spec = scenario.pipeline();
            if let Some(rule) = rule {
                spec.rule = rule;
                spec.normalize = None;
            }
            if let Some(order) = order {
                spec.order = order;
            }
            if target.is_some() {
                spec.target = target;
            }
            if no_normalize {
                spec.normalize = Some(false);
            }
            let report = run_with(&scenario, &spec)?;
            match format {
                Format::Csv => print!("{}", render_csv(&report, precision)),
                Format::Table => {
                    print!("{}", render_table(&report, precision));
                    println!();
                    println!(
                        "conflict k = {} ({} at result scale), divisor = {}",
                        num(report.conflict, precision),
                        num(report.scaled_conflict(), precision),
                        num(report.divisor, precision)
                    );
                    if report.skipped_fractions > 0 {
                        println!(
                            "skipped zero-denominator fractions: {}",
                            report.skipped_fractions
                        );
                    }
                    let advisory = assess_fusion(&report);
                    println!("advisory: {} ({})", advisory.kind, advisory.rationale);
                }
            }
        }
        Command::Classify { input } => {
            let scenario = load(&input)?;
            for source in &scenario.sources {
                let m = &source.mass;
                let advisory = assess(m);
                println!(
                    "{}: range {} {}, sum {} {}, advisory {} ({})",
                    source.name,
                    m.range(),
                    m.classify_range(),
                    num(m.total(), 6)
                        .trim_end_matches('0')
                        .trim_end_matches('.'),
                    m.classify_sum(),
                    advisory.kind,
                    advisory.rationale
                );
            }
            if scenario.sources.len() > 1 {
                let pooled = assess_sources(&scenario.masses());
                println!("pooled: advisory {} ({})", pooled.kind, pooled.rationale);
            }
        }
        Command::Belpl {
            input,
            set,
            precision,
        } => {
            let scenario = load(&input)?;
            let query = scenario.frame.parse_focal(&set)?;
            let label = scenario.frame.render(query);
            for source in &scenario.sources {
                let bi = source.mass.belief_interval(query)?;
                println!(
                    "{}: Bel({label}) = {}, Pl({label}) = {}{}",
                    source.name,
                    num(bi.bel, precision),
                    num(bi.pl, precision),
                    if bi.signed { " [signed weights]" } else { "" }
                );
            }
            if scenario.sources.len() > 1 {
                let spec = scenario.pipeline();
                let report = run_with(&scenario, &spec)?;
                let bi = report.result.belief_interval(query)?;
                println!(
                    "fused ({}): Bel({label}) = {}, Pl({label}) = {}{}",
                    spec.rule,
                    num(bi.bel, precision),
                    num(bi.pl, precision),
                    if bi.signed { " [signed weights]" } else { "" }
                );
            }
        }
        Command::PaperExamples => {
            let report = paper_examples();
            print!("{}", report.render());
            if !report.passed() {
                return Err(CliError::GoldenMismatch);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(exit::SUCCESS as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
