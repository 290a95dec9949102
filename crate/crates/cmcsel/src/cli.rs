//! Argument definitions and subcommand drivers for the `cmcsel` binary.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::thread;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cmcsel_core::{best_per_size, build_report, CriterionSpec, Family};

use crate::csv_load::{load_csv, CsvSpec};
use crate::report::{render_table, ReportDoc};
use crate::scenario_file::{builtin_scenarios, parse_scenarios, NamedScenario};
use crate::simulate::{run_scenario_parallel, SimulationDoc};

#[derive(Debug, Parser)]
#[command(
    name = "cmcsel",
    version,
    about = "Best-subset regression selection by AIC, BIC and CMC"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit every subset of a CSV dataset and report the per-size best models.
    Select(SelectArgs),
    /// Run simulation scenarios and tabulate mean (FIR, FAR) per criterion.
    Simulate(SimulateArgs),
    /// Re-render a JSON selection report as a table.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Gaussian,
    Binomial,
    Poisson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimFormat {
    Tsv,
    Json,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub response: String,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Binomial trials per observation.
    #[arg(long, default_value_t = 1)]
    pub trials: u32,
    /// aic, bic or cmc:ALPHA; comma separated and/or repeated.
    #[arg(long, value_delimiter = ',', default_value = "cmc:0.5")]
    pub criteria: Vec<String>,
    /// Encode a text column, e.g. `famhist=Present:1,Absent:0`.
    #[arg(long = "map", value_name = "COL=LEVEL:V[,LEVEL:V]")]
    pub maps: Vec<String>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Scenario file, or `builtin:NAME` for a bundled grid (table1, table1_p30, table2, table3).
    #[arg(long)]
    pub scenarios: String,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "aic,bic,cmc:0.9,cmc:0.5,cmc:0.1"
    )]
    pub criteria: Vec<String>,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SimFormat::Tsv)]
    pub format: SimFormat,
    /// Override the replication count of every stanza.
    #[arg(long)]
    pub replications: Option<usize>,
    /// Override the seed of every stanza.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// JSON report written by `select --format json`.
    pub json: PathBuf,
}

pub fn parse_criteria(items: &[String]) -> Result<Vec<CriterionSpec>> {
    let mut specs = Vec::new();
    for item in items.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        let spec: CriterionSpec = item
            .parse()
            .map_err(|e| anyhow!("criterion `{item}`: {e}"))?;
        if !specs.contains(&spec) {
            specs.push(spec);
        }
    }
    if specs.is_empty() {
        bail!("no criteria given");
    }
    Ok(specs)
}

/// Parses `COL=LEVEL:V[,LEVEL:V...]`.
pub fn parse_map(text: &str) -> Result<(String, Vec<(String, f64)>)> {
    let (col, levels) = text
        .split_once('=')
        .ok_or_else(|| anyhow!("--map `{text}`: expected COL=LEVEL:V"))?;
    let mut out = Vec::new();
    for pair in levels.split(',') {
        let (level, value) = pair
            .rsplit_once(':')
            .ok_or_else(|| anyhow!("--map `{text}`: expected LEVEL:V, got `{pair}`"))?;
        let value: f64 = value
            .trim()
            .parse()
            .with_context(|| format!("--map `{text}`: bad value in `{pair}`"))?;
        out.push((level.trim().to_string(), value));
    }
    Ok((col.trim().to_string(), out))
}

pub fn select(args: &SelectArgs, stdout: &mut dyn Write) -> Result<()> {
    let family = match args.family {
        FamilyArg::Gaussian => Family::Gaussian,
        FamilyArg::Poisson => Family::Poisson,
        FamilyArg::Binomial => Family::binomial(args.trials)?,
    };
    let specs = parse_criteria(&args.criteria)?;
    let mut spec = CsvSpec::new(&args.data, &args.response, family);
    for m in &args.maps {
        spec.categorical_map.push(parse_map(m)?);
    }
    let data = load_csv(&spec).with_context(|| format!("loading {}", args.data.display()))?;
    let bests = best_per_size(&data)?;
    let report = build_report(&bests, &specs);
    let doc = ReportDoc::from_report(&report, data.names());
    match args.format {
        ReportFormat::Table => stdout.write_all(render_table(&doc).as_bytes())?,
        ReportFormat::Json => writeln!(stdout, "{}", doc.to_json())?,
    }
    Ok(())
}

pub fn render(args: &RenderArgs, stdout: &mut dyn Write) -> Result<()> {
    let text = fs::read_to_string(&args.json)
        .with_context(|| format!("reading {}", args.json.display()))?;
    let doc =
        ReportDoc::from_json(&text).with_context(|| format!("parsing {}", args.json.display()))?;
    stdout.write_all(render_table(&doc).as_bytes())?;
    Ok(())
}

fn load_scenarios(source: &str) -> Result<Vec<NamedScenario>> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return Ok(builtin_scenarios(name)?);
    }
    let text = fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
    parse_scenarios(&text).with_context(|| format!("parsing {source}"))
}

/// Runs every stanza, reporting failures on `stderr` and carrying on. Returns
/// the number of failed stanzas.
pub fn simulate(
    args: &SimulateArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<usize> {
    let specs = parse_criteria(&args.criteria)?;
    let mut scenarios = load_scenarios(&args.scenarios)?;
    for s in &mut scenarios {
        if let Some(r) = args.replications {
            s.scenario.replications = r;
        }
        if let Some(seed) = args.seed {
            s.scenario.seed = seed;
        }
    }
    let workers = args
        .workers
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get()));

    let mut doc = SimulationDoc::default();
    let mut failures = 0;
    for (k, named) in scenarios.iter().enumerate() {
        match run_scenario_parallel(&named.scenario, &specs, workers) {
            Ok(summary) => doc.push(named, &summary),
            Err(e) => {
                failures += 1;
                writeln!(
                    stderr,
                    "error: scenario {} (stanza {}): {e}",
                    named.id,
                    k + 1
                )?;
            }
        }
    }
    let text = match args.format {
        SimFormat::Tsv => doc.to_tsv(),
        SimFormat::Json => doc.to_json() + "\n",
    };
    match &args.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(failures)
}

/// Process exit status: 0 iff nothing was reported on stderr.
pub fn run(cli: Cli) -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let result = match &cli.command {
        Command::Select(a) => select(a, &mut out).map(|_| 0),
        Command::Render(a) => render(a, &mut out).map(|_| 0),
        Command::Simulate(a) => simulate(a, &mut out, &mut err),
    };
    match result {
        Ok(0) => 0,
        Ok(_) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}
