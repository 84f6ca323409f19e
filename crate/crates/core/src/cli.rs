//! Command-line front end.
//!
//! One verb per construct: `shell check` and `shell find` run the residual
//! criterion, `oracle verify` replays the definition only, `leaf` and
//! `tree-check` test leaf structure, `gallai graph|complex|shell` build the
//! Gallai constructions, `ideal facet|nonface` export ideals.
//!
//! Exit-code contract: 0 affirmative verdict or construction, 1 negative
//! verdict, 2 usage or input error, 3 budget or capacity exceeded.

use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::complex::{ComplexError, Face};
use crate::gallai::{gallai_complex, gallai_graph, tree_shelling, GallaiError, Graph};
use crate::ideal::{
    facet_ideal, minimal_nonfaces_with_limit, monomial_string, IdealError,
    NONFACE_ENUMERATION_LIMIT,
};
use crate::io::{
    parse_complex, parse_graph, render_complex, render_gallai_graph, render_ideal,
    render_monomials, ComplexDocument, ParseError,
};
use crate::report::{
    derived_flags, ComplexSummary, GraphSummary, IdealSummary, Report, SearchStats, Verdict,
};
use crate::shelling::{
    check_order_definition, check_order_residuals, find_shelling_with, is_leaf,
    is_simplicial_tree_with_limit, OrderVerdict, SearchError, SearchOptions, SearchOutcome,
    ShellingError, SIMPLICIAL_TREE_FACET_LIMIT,
};

#[derive(Parser)]
#[command(
    name = "shellres",
    version,
    about = "Shellability, leaves and Gallai simplicial complexes, decided through facet ideals"
)]
struct Cli {
    /// Emit the report as JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shelling queries on a complex document
    #[command(subcommand)]
    Shell(ShellCommand),
    /// Leaf test for one facet of a complex
    Leaf {
        file: PathBuf,
        /// 1-based facet position in the canonical facet order
        #[arg(long)]
        facet: usize,
    },
    /// Simplicial-tree test: connected and every facet subset has a leaf
    TreeCheck {
        file: PathBuf,
        /// Facet-count cap for the subset enumeration
        #[arg(long, default_value_t = SIMPLICIAL_TREE_FACET_LIMIT)]
        limit: usize,
    },
    /// Gallai constructions from a graph document
    #[command(subcommand)]
    Gallai(GallaiCommand),
    /// Ideal exports from a complex document
    #[command(subcommand)]
    Ideal(IdealCommand),
    /// Definitional-oracle checks, independent of the residual machinery
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum ShellCommand {
    /// Check one explicit facet order through the residual criterion
    Check {
        file: PathBuf,
        /// Comma-separated 1-based facet positions, e.g. 1,3,2
        #[arg(long, value_delimiter = ',', required = true)]
        order: Vec<usize>,
    },
    /// Search for a shelling order
    Find {
        file: PathBuf,
        /// Abort after expanding this many search nodes
        #[arg(long)]
        budget: Option<u64>,
        /// Explore first-facet branches concurrently
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Subcommand)]
enum GallaiCommand {
    /// Print the Gallai graph with its vertex-to-edge labeling
    Graph { file: PathBuf },
    /// Print the Gallai simplicial complex as a complex document
    Complex { file: PathBuf },
    /// Construct a shelling of the Gallai complex of a tree
    Shell { file: PathBuf },
}

#[derive(Subcommand)]
enum IdealCommand {
    /// Export the facet ideal
    Facet { file: PathBuf },
    /// Export the minimal non-faces (the Stanley-Reisner generators)
    Nonface {
        file: PathBuf,
        /// Cap on n for the subset enumeration
        #[arg(long, default_value_t = NONFACE_ENUMERATION_LIMIT)]
        limit: u32,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Replay an explicit facet order through the shelling definition
    Verify {
        file: PathBuf,
        /// Comma-separated 1-based facet positions
        #[arg(long, value_delimiter = ',', required = true)]
        order: Vec<usize>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Shelling(#[from] ShellingError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Gallai(#[from] GallaiError),
}

fn complex_error_code(e: &ComplexError) -> i32 {
    match e {
        ComplexError::AmbientTooLarge { .. } | ComplexError::UnrepresentableVertex { .. } => 3,
        _ => 2,
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 2,
            CliError::Parse(ParseError::Complex(e)) => complex_error_code(e),
            CliError::Parse(_) => 2,
            CliError::Complex(e) => complex_error_code(e),
            CliError::Ideal(IdealError::EnumerationCapExceeded { .. })
            | CliError::Ideal(IdealError::RingTooLarge { .. }) => 3,
            CliError::Ideal(_) => 2,
            CliError::Shelling(ShellingError::FacetLimitExceeded { .. }) => 3,
            CliError::Shelling(_) => 2,
            CliError::Search(_) => 3,
            CliError::Gallai(GallaiError::Complex(e)) => complex_error_code(e),
            CliError::Gallai(GallaiError::Graph(_)) => 2,
        }
    }
}

/// Result of one CLI invocation; the binary prints the streams and exits
/// with the code.
#[derive(Debug)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct QueryOutput {
    report: Report,
    /// Construction queries print a machine-readable document in text mode
    /// instead of the report rendering.
    text_document: Option<String>,
}

impl QueryOutput {
    fn report(report: Report) -> Self {
        Self {
            report,
            text_document: None,
        }
    }
}

/// Runs the CLI on explicit arguments (the first one names the binary) and
/// captures the outcome instead of printing or exiting.
pub fn run_cli<I>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render().to_string();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliOutcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => CliOutcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };

    match dispatch(&cli.command) {
        Ok(output) => {
            let mut stderr = String::new();
            let stdout = if cli.json {
                output.report.to_json()
            } else if let Some(document) = output.text_document {
                // keep the document machine-readable; notes go to stderr
                for note in &output.report.notes {
                    stderr.push_str(&format!("note: {note}\n"));
                }
                document
            } else {
                output.report.to_text()
            };
            CliOutcome {
                code: output.report.verdict.exit_code(),
                stdout,
                stderr,
            }
        }
        Err(err) => CliOutcome {
            code: err.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        },
    }
}

fn dispatch(command: &Command) -> Result<QueryOutput, CliError> {
    match command {
        Command::Shell(ShellCommand::Check { file, order }) => shell_check(file, order),
        Command::Shell(ShellCommand::Find {
            file,
            budget,
            parallel,
        }) => shell_find(file, *budget, *parallel),
        Command::Leaf { file, facet } => leaf_query(file, *facet),
        Command::TreeCheck { file, limit } => tree_check(file, *limit),
        Command::Gallai(GallaiCommand::Graph { file }) => gallai_graph_query(file),
        Command::Gallai(GallaiCommand::Complex { file }) => gallai_complex_query(file),
        Command::Gallai(GallaiCommand::Shell { file }) => gallai_shell_query(file),
        Command::Ideal(IdealCommand::Facet { file }) => ideal_facet_query(file),
        Command::Ideal(IdealCommand::Nonface { file, limit }) => ideal_nonface_query(file, *limit),
        Command::Oracle(OracleCommand::Verify { file, order }) => oracle_verify(file, order),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_complex(path: &Path) -> Result<ComplexDocument, CliError> {
    Ok(parse_complex(&read_file(path)?)?)
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    Ok(parse_graph(&read_file(path)?)?)
}

fn base_report(query: &str, verdict: Verdict, path: &Path) -> Report {
    let mut report = Report::new(query, verdict);
    report.input = Some(path.display().to_string());
    report
}

fn shell_check(path: &Path, order: &[usize]) -> Result<QueryOutput, CliError> {
    let doc = load_complex(path)?;
    let pure = doc.complex.is_pure();
    let verdict = check_order_residuals(&doc.complex, order)?;
    let mut report = match verdict {
        OrderVerdict::Shelling(cert) => {
            let mut report = base_report("shell check", Verdict::ShellingOrder, path);
            report.certificate = Some(cert);
            // a witnessed order settles shellability of the whole complex
            report.flags = derived_flags(pure, Some(true));
            report
        }
        OrderVerdict::FailsAt { step } => {
            let mut report = base_report("shell check", Verdict::NotAShellingOrder, path);
            report.failed_step = Some(step);
            report.notes.push(
                "one failing order does not settle shellability; try `shell find`".to_string(),
            );
            report
        }
    };
    report.complex = Some(ComplexSummary::of(&doc.complex));
    report.notes.extend(doc.notices);
    Ok(QueryOutput::report(report))
}

fn shell_find(path: &Path, budget: Option<u64>, parallel: bool) -> Result<QueryOutput, CliError> {
    let doc = load_complex(path)?;
    let options = SearchOptions {
        budget,
        parallel,
        ..SearchOptions::default()
    };
    let search = find_shelling_with(&doc.complex, &options)?;
    let pure = doc.complex.is_pure();
    let mut report = match &search.outcome {
        SearchOutcome::Shelling(cert) => {
            let mut report = base_report("shell find", Verdict::Shellable, path);
            report.certificate = Some(cert.clone());
            report.flags = derived_flags(pure, Some(true));
            report
        }
        SearchOutcome::Exhausted => {
            let mut report = base_report("shell find", Verdict::NotShellable, path);
            report.flags = derived_flags(pure, Some(false));
            report
                .notes
                .push("exhausted: no facet order is a shelling".to_string());
            report
        }
    };
    report.complex = Some(ComplexSummary::of(&doc.complex));
    report.search = Some(SearchStats::of(&search));
    report.notes.extend(doc.notices);
    Ok(QueryOutput::report(report))
}

fn leaf_query(path: &Path, facet: usize) -> Result<QueryOutput, CliError> {
    let doc = load_complex(path)?;
    let verdict = if is_leaf(&doc.complex, facet)? {
        Verdict::Leaf
    } else {
        Verdict::NotALeaf
    };
    let mut report = base_report("leaf", verdict, path);
    report.facet = Some(facet);
    report.complex = Some(ComplexSummary::of(&doc.complex));
    report.notes.extend(doc.notices);
    Ok(QueryOutput::report(report))
}

fn tree_check(path: &Path, limit: usize) -> Result<QueryOutput, CliError> {
    let doc = load_complex(path)?;
    let verdict = if is_simplicial_tree_with_limit(&doc.complex, limit)? {
        Verdict::SimplicialTree
    } else {
        Verdict::NotASimplicialTree
    };
    let mut report = base_report("tree-check", verdict, path);
    report.complex = Some(ComplexSummary::of(&doc.complex));
    report.notes.extend(doc.notices);
    Ok(QueryOutput::report(report))
}

fn gallai_graph_query(path: &Path) -> Result<QueryOutput, CliError> {
    let graph = load_graph(path)?;
    let gallai = gallai_graph(&graph);
    let mut report = base_report("gallai graph", Verdict::Constructed, path);
    report.graph = Some(GraphSummary::of_gallai(&gallai));
    Ok(QueryOutput {
        text_document: Some(render_gallai_graph(&gallai)),
        report,
    })
}

fn gallai_complex_query(path: &Path) -> Result<QueryOutput, CliError> {
    let graph = load_graph(path)?;
    let complex = gallai_complex(&graph)?;
    let mut report = base_report("gallai complex", Verdict::Constructed, path);
    report.complex = Some(ComplexSummary::of(&complex));
    Ok(QueryOutput {
        text_document: Some(render_complex(&complex, None)),
        report,
    })
}

fn gallai_shell_query(path: &Path) -> Result<QueryOutput, CliError> {
    let graph = load_graph(path)?;
    if !graph.is_tree() {
        let mut report = base_report("gallai shell", Verdict::NotATree, path);
        report.graph = Some(GraphSummary::of(&graph));
        report
            .notes
            .push("the constructive shelling applies to trees only".to_string());
        return Ok(QueryOutput::report(report));
    }
    let shelling = tree_shelling(&graph)?;
    let mut report = base_report("gallai shell", Verdict::Shellable, path);
    report.flags = derived_flags(shelling.complex.is_pure(), Some(true));
    report.complex = Some(ComplexSummary::of(&shelling.complex));
    report.certificate = Some(shelling.certificate);
    Ok(QueryOutput::report(report))
}

fn ideal_facet_query(path: &Path) -> Result<QueryOutput, CliError> {
    let doc = load_complex(path)?;
    let ideal = facet_ideal(&doc.complex);
    let mut report = base_report("ideal facet", Verdict::Constructed, path);
    report.ideal = Some(IdealSummary {
        ring: ideal.n(),
        generators: ideal.gens().iter().map(|&m| monomial_string(m)).collect(),
    });
    if ideal.is_pure_squarefree() {
        report.notes.push(format!(
            "pure squarefree of degree {}",
            ideal.gens()[0].size()
        ));
    } else {
        let support = doc.complex.vertex_support();
        let missing = Face::full(ideal.n()).difference(support);
        if !missing.is_empty() {
            report.notes.push(format!(
                "not pure against the declared ring 1..={}: variables {} divide no generator",
                ideal.n(),
                missing
            ));
        } else {
            report
                .notes
                .push("not pure: generator degrees are mixed".to_string());
        }
    }
    report.notes.extend(doc.notices);
    Ok(QueryOutput {
        text_document: Some(render_ideal(&ideal)),
        report,
    })
}

fn ideal_nonface_query(path: &Path, limit: u32) -> Result<QueryOutput, CliError> {
    let doc = load_complex(path)?;
    let nonfaces = minimal_nonfaces_with_limit(&doc.complex, limit)?;
    let mut report = base_report("ideal nonface", Verdict::Constructed, path);
    report.ideal = Some(IdealSummary {
        ring: doc.complex.n(),
        generators: nonfaces.iter().map(|&m| monomial_string(m)).collect(),
    });
    if nonfaces.is_empty() {
        report
            .notes
            .push("the complex is a full simplex; no non-faces".to_string());
    }
    report.notes.extend(doc.notices);
    Ok(QueryOutput {
        text_document: Some(render_monomials(doc.complex.n(), &nonfaces)),
        report,
    })
}

fn oracle_verify(path: &Path, order: &[usize]) -> Result<QueryOutput, CliError> {
    let doc = load_complex(path)?;
    let ok = check_order_definition(&doc.complex, order)?;
    let verdict = if ok {
        Verdict::ShellingOrder
    } else {
        Verdict::NotAShellingOrder
    };
    let mut report = base_report("oracle verify", verdict, path);
    report.complex = Some(ComplexSummary::of(&doc.complex));
    report.flags = derived_flags(doc.complex.is_pure(), ok.then_some(true));
    report
        .notes
        .push("definitional replay only; no residuals were computed".to_string());
    report.notes.extend(doc.notices);
    Ok(QueryOutput::report(report))
}
