//! Command-line front end: `validate`, `analyze` and `serve`.
//!
//! Exit codes are stable: 0 success, 1 input error, 2 internal error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::corpus::{self, Corpus, CorpusError};
use crate::layout::LayoutParams;
use crate::pipeline::{self, AnalyzeOptions, PipelineError};
use crate::serve::{ServeError, Server};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "coauthnet", version, about = "Co-authorship graph analysis and explorer datasets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse the input files and report counts and warnings.
    Validate(RunConfig),
    /// Build graphs, communities, layouts and statistics for every cumulative range.
    Analyze(RunConfig),
    /// Serve an output directory over local HTTP.
    Serve(RunConfig),
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Members table (`id,name`).
    #[arg(long)]
    pub members: Option<PathBuf>,
    /// Publications table (`paper_id,year,title,author_ids`).
    #[arg(long)]
    pub papers: Option<PathBuf>,
    /// First year of the cumulative ranges (default: earliest publication).
    #[arg(long)]
    pub from: Option<i32>,
    /// Last year of the cumulative ranges (default: latest publication).
    #[arg(long)]
    pub to: Option<i32>,
    #[arg(long, env = "COAUTHNET_OUT", default_value = "out")]
    pub out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub iterations: usize,
    /// Attraction coefficient.
    #[arg(long, default_value_t = 1.0)]
    pub ka: f64,
    /// Repulsion coefficient.
    #[arg(long, default_value_t = 1.0)]
    pub kr: f64,
    #[arg(long, default_value_t = 8080, value_parser = clap::value_parser!(u16).range(1..))]
    pub port: u16,
}

impl RunConfig {
    /// Configuration with every optional field unset and defaults elsewhere.
    pub fn new(out: impl Into<PathBuf>) -> Self {
        Self {
            members: None,
            papers: None,
            from: None,
            to: None,
            out: out.into(),
            seed: DEFAULT_SEED,
            iterations: 1000,
            ka: 1.0,
            kr: 1.0,
            port: 8080,
        }
    }

    pub fn layout_params(&self) -> LayoutParams {
        LayoutParams {
            attraction: self.ka,
            repulsion: self.kr,
            iterations: self.iterations,
            seed: self.seed,
            ..LayoutParams::default()
        }
    }

    fn inputs(&self) -> Result<(&Path, &Path), CliError> {
        let members = self
            .members
            .as_deref()
            .ok_or_else(|| CliError::Input("--members is required".into()))?;
        let papers = self
            .papers
            .as_deref()
            .ok_or_else(|| CliError::Input("--papers is required".into()))?;
        Ok((members, papers))
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Report(crate::report::ReportError::InvertedBounds { .. }) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<ServeError> for CliError {
    fn from(e: ServeError) -> Self {
        match e {
            ServeError::MissingManifest(_) => CliError::Input(e.to_string()),
            ServeError::Bind { .. } => CliError::Internal(e.to_string()),
        }
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Internal(e.to_string())
}

pub fn cmd_validate(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let (members_path, papers_path) = config.inputs()?;
    let members = corpus::parse_members(members_path)?;
    let pubs = corpus::parse_publications(papers_path, &members)?;

    writeln!(out, "members: {}", members.len()).map_err(io_err)?;
    writeln!(out, "papers: {}", pubs.len()).map_err(io_err)?;
    if let Some((lo, hi)) = pubs.year_span() {
        writeln!(out, "years: {lo}-{hi}").map_err(io_err)?;
    }
    writeln!(out, "warnings: {}", pubs.warnings.len()).map_err(io_err)?;
    for w in &pubs.warnings {
        writeln!(out, "  warning: {}: {w}", papers_path.display()).map_err(io_err)?;
    }
    Ok(())
}

pub fn cmd_analyze(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let (members_path, papers_path) = config.inputs()?;
    let corpus = Corpus::load(members_path, papers_path)?;

    let span = corpus.publications.year_span();
    let first = config.from.or(span.map(|s| s.0));
    let last = config.to.or(span.map(|s| s.1));
    let (Some(first), Some(last)) = (first, last) else {
        return Err(CliError::Input(
            "no publications; pass --from and --to explicitly".into(),
        ));
    };

    let params = config.layout_params();
    params
        .validate()
        .map_err(|e| CliError::Input(e.to_string()))?;
    let output = pipeline::run(
        &corpus,
        &AnalyzeOptions {
            first,
            last,
            layout: params,
        },
    )?;
    let manifest = output.write(&config.out)?;

    out.write_all(output.report.render_text().as_bytes())
        .map_err(io_err)?;
    writeln!(
        out,
        "wrote {} datasets, manifest and report to {}",
        manifest.ranges.len(),
        config.out.display()
    )
    .map_err(io_err)?;
    Ok(())
}

pub fn cmd_serve(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let server = Server::bind(&config.out, ("127.0.0.1", config.port))?;
    let addr = server
        .local_addr()
        .map_or_else(|| format!("port {}", config.port), |a| a.to_string());
    writeln!(out, "serving {} at http://{addr}/", config.out.display()).map_err(io_err)?;
    out.flush().map_err(io_err)?;
    server.run(4);
    Ok(())
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Validate(c) => cmd_validate(c, out),
        Command::Analyze(c) => cmd_analyze(c, out),
        Command::Serve(c) => cmd_serve(c, out),
    }
}

/// Parses `args`, runs the command, prints errors to stderr and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match execute(&cli, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
