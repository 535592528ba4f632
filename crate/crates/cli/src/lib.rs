//! Command implementations behind the `asmlab` binary. Every command returns
//! its output as a string so that it can be tested without a process.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use asmlab::asm::{coxeter_length, Asm};
use asmlab::asm::{dominant_part, essential_set, rank_matrix, rothe_diagram, validate_asm};
use asmlab::census::{parse_checks, tabulate, CensusConfig, Check, EntryFilter, CSV_HEADER};
use asmlab::cm::{cm_verdict, init_complex, Backend, BettiWitness, CmOptions};
use asmlab::complex::{km_vertex_decomposable, DecompositionTrace};
use asmlab::diagram::render_diagram;
use asmlab::homology::Field;
use asmlab::ideal::{fulton_minor_specs, init_ideal, MinorSpec, SquarefreeIdeal};
use asmlab::pattern::{
    badblock_match, check_containment_constraints, find_pattern, ContainmentReport,
};
use asmlab::pipe_dream::perm_set_via_primes;
use asmlab::verify::{verify_statement, Statement, ALL_STATEMENTS};
use asmlab::{Cell, Permutation};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Error with a stable code, printed as `error[CODE]: message`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    fn io(path: &Path, e: std::io::Error) -> CliError {
        CliError {
            code: "E_IO",
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.code, self.message)
    }
}

impl From<asmlab::Error> for CliError {
    fn from(e: asmlab::Error) -> Self {
        CliError {
            code: e.code(),
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "asmlab",
    version,
    about = "Exact computations for alternating sign matrix varieties"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report for one ASM.
    Analyze(AnalyzeArgs),
    /// Census of ASM(n).
    Enumerate(EnumerateArgs),
    /// Check a structural statement over ASM(n).
    Verify(VerifyArgs),
    /// Pattern containment between two ASMs.
    Pattern(PatternArgs),
    /// ASCII drawing of an ASM with its diagram.
    Diagram(DiagramArgs),
}

#[derive(Debug, Clone, Args)]
pub struct EngineArgs {
    /// `rational` or `p=<prime>`.
    #[arg(long, default_value = "rational")]
    pub field: String,
    #[arg(long, default_value = "reisner")]
    pub backend: String,
    /// Read badblock condition (4) literally.
    #[arg(long)]
    pub strict_badblock: bool,
}

impl EngineArgs {
    fn cm_options(&self) -> CliResult<CmOptions> {
        Ok(CmOptions {
            field: self.field.parse::<Field>()?,
            backend: self.backend.parse::<Backend>()?,
            ..CmOptions::default()
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// ASM as JSON: `{"n": .., "matrix": [[..]]}` or a bare matrix.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "cm,km_vd")]
    pub checks: String,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(long, default_value = "cm")]
    pub checks: String,
    /// Keep only ASMs with a given entry, e.g. `a11=1`.
    #[arg(long)]
    pub filter: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Cache directory; `ASMLAB_CACHE` takes precedence.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Statement name, or `all`.
    #[arg(long, default_value = "all")]
    pub statement: String,
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PatternArgs {
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long)]
    pub target: PathBuf,
    #[arg(long)]
    pub strict_badblock: bool,
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    #[arg(long)]
    pub input: PathBuf,
}

/// Reads an ASM from JSON, either `{"n", "matrix"}` or a bare matrix.
pub fn read_asm(path: &Path) -> CliResult<Asm> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_asm(&text)
}

pub fn parse_asm(text: &str) -> CliResult<Asm> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError {
        code: "E_PARSE",
        message: e.to_string(),
    })?;
    let matrix = value.get("matrix").unwrap_or(&value);
    let rows: Vec<Vec<i64>> = serde_json::from_value(matrix.clone()).map_err(|e| CliError {
        code: "E_PARSE",
        message: format!("matrix: {e}"),
    })?;
    if let Some(n) = value.get("n").and_then(|v| v.as_u64()) {
        if n as usize != rows.len() {
            return Err(asmlab::Error::SizeMismatch(n as usize, rows.len()).into());
        }
    }
    Ok(validate_asm(&rows)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct PermEntry {
    pub perm: Permutation,
    pub length: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeOutput {
    pub asm: Asm,
    pub rank_matrix: Vec<Vec<u32>>,
    pub diagram: Vec<Cell>,
    pub essential_set: Vec<Cell>,
    pub dominant_part: Vec<Cell>,
    pub fulton_generators: Vec<MinorSpec>,
    pub init_ideal: SquarefreeIdeal,
    pub perm_set: Vec<PermEntry>,
    pub codim: usize,
    pub equidimensional: bool,
    pub badblock: Option<(usize, usize)>,
    pub field: Field,
    pub backend: Backend,
    pub cm: Option<bool>,
    pub cm_witness: Option<BettiWitness>,
    pub km_vd: Option<bool>,
    pub km_trace: Option<DecompositionTrace>,
    pub ascii: String,
}

pub fn cmd_analyze(a: &Asm, checks: &str, engine: &EngineArgs) -> CliResult<AnalyzeOutput> {
    let checks = parse_checks(checks)?;
    let opts = engine.cm_options()?;
    let perms = perm_set_via_primes(a)?;
    let verdict = if checks.contains(&Check::Cm) {
        Some(cm_verdict(a, &opts)?)
    } else {
        None
    };
    let trace = checks
        .contains(&Check::KmVd)
        .then(|| km_vertex_decomposable(&init_complex(a)));
    Ok(AnalyzeOutput {
        asm: a.clone(),
        rank_matrix: rank_matrix(a).rows(),
        diagram: rothe_diagram(a).to_vec(),
        essential_set: essential_set(a).to_vec(),
        dominant_part: dominant_part(a).to_vec(),
        fulton_generators: fulton_minor_specs(a),
        init_ideal: init_ideal(a),
        perm_set: perms
            .perms
            .iter()
            .map(|w| PermEntry {
                perm: w.clone(),
                length: coxeter_length(w),
            })
            .collect(),
        codim: perms.codim,
        equidimensional: perms.equidimensional,
        badblock: badblock_match(a, engine.strict_badblock),
        field: opts.field,
        backend: opts.backend,
        cm: verdict.as_ref().map(|v| v.cm),
        cm_witness: verdict.and_then(|v| v.witness),
        km_vd: trace.as_ref().map(|t| t.result),
        km_trace: trace,
        ascii: render_diagram(a),
    })
}

fn cells_text(cells: &[Cell]) -> String {
    let parts: Vec<String> = cells.iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn yes_no(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

fn analyze_text(r: &AnalyzeOutput) -> String {
    let perms: Vec<String> = r
        .perm_set
        .iter()
        .map(|p| format!("{} (length {})", p.perm, p.length))
        .collect();
    let mut s = String::new();
    s.push_str(&r.ascii);
    s.push_str(&format!("diagram: {}\n", cells_text(&r.diagram)));
    s.push_str(&format!(
        "essential set: {}\n",
        cells_text(&r.essential_set)
    ));
    s.push_str(&format!(
        "dominant part: {}\n",
        cells_text(&r.dominant_part)
    ));
    s.push_str(&format!(
        "fulton generators: {}\n",
        r.fulton_generators.len()
    ));
    s.push_str(&format!("init ideal: {}\n", r.init_ideal));
    s.push_str(&format!("perm set: {}\n", perms.join(", ")));
    s.push_str(&format!("codim: {}\n", r.codim));
    s.push_str(&format!(
        "equidimensional: {}\n",
        yes_no(Some(r.equidimensional))
    ));
    s.push_str(&format!("cohen-macaulay ({}): {}\n", r.field, yes_no(r.cm)));
    s.push_str(&format!("km vertex decomposable: {}\n", yes_no(r.km_vd)));
    if let Some(v) = r.km_trace.as_ref().and_then(|t| t.failure_vertex) {
        s.push_str(&format!("km failure vertex: {}\n", v.label()));
    }
    s
}

fn census_config(args: &EnumerateArgs, env_cache: Option<PathBuf>) -> CliResult<CensusConfig> {
    let opts = args.engine.cm_options()?;
    let mut cfg = CensusConfig::new(args.n);
    cfg.checks = parse_checks(&args.checks)?;
    cfg.filter = args
        .filter
        .as_deref()
        .map(str::parse::<EntryFilter>)
        .transpose()?;
    cfg.jobs = args.jobs.max(1);
    cfg.field = opts.field;
    cfg.backend = opts.backend;
    cfg.cache_dir = env_cache.or_else(|| args.cache.clone());
    Ok(cfg)
}

/// The census as CSV (header and one row) or JSON. `env_cache` is the value
/// of `ASMLAB_CACHE`, which overrides `--cache`.
pub fn cmd_enumerate(args: &EnumerateArgs, env_cache: Option<PathBuf>) -> CliResult<String> {
    let cfg = census_config(args, env_cache)?;
    let outcome = tabulate(&cfg)?;
    Ok(match args.format {
        Format::Json => json(&outcome.row)?,
        _ => format!("{CSV_HEADER}\n{}\n", outcome.row.to_csv_line()),
    })
}

pub fn cmd_verify(args: &VerifyArgs) -> CliResult<String> {
    let statements: Vec<Statement> = if args.statement == "all" {
        ALL_STATEMENTS.to_vec()
    } else {
        vec![args.statement.parse()?]
    };
    let reports = statements
        .iter()
        .map(|&st| verify_statement(st, args.n))
        .collect::<Result<Vec<_>, _>>()?;
    if args.format == Format::Json {
        return json(&reports);
    }
    let lines: Vec<String> = if reports.len() == 1 {
        vec![reports[0].to_string()]
    } else {
        reports
            .iter()
            .map(|r| format!("{} {r}", r.statement))
            .collect()
    };
    Ok(lines.join("\n") + "\n")
}

#[derive(Debug, Clone, Serialize)]
pub struct PatternOutput {
    pub contains: bool,
    pub kept_rows: Vec<usize>,
    pub kept_cols: Vec<usize>,
    pub deleted_rows: Vec<usize>,
    pub deleted_cols: Vec<usize>,
    pub constraints: Option<ContainmentReport>,
    pub target_badblock: Option<(usize, usize)>,
}

pub fn cmd_pattern(pattern: &Asm, target: &Asm, strict_badblock: bool) -> CliResult<PatternOutput> {
    let n = target.n();
    let witness = find_pattern(target, pattern);
    let constraints = witness
        .as_ref()
        .map(|w| check_containment_constraints(target, pattern, w))
        .transpose()?;
    let w = witness.unwrap_or(asmlab::pattern::ContainmentWitness {
        kept_rows: Vec::new(),
        kept_cols: Vec::new(),
    });
    Ok(PatternOutput {
        contains: constraints.is_some(),
        deleted_rows: if constraints.is_some() {
            w.deleted_rows(n)
        } else {
            Vec::new()
        },
        deleted_cols: if constraints.is_some() {
            w.deleted_cols(n)
        } else {
            Vec::new()
        },
        kept_rows: w.kept_rows,
        kept_cols: w.kept_cols,
        constraints,
        target_badblock: badblock_match(target, strict_badblock),
    })
}

pub fn cmd_diagram(a: &Asm) -> String {
    render_diagram(a)
}

fn json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError {
            code: "E_SERIALIZE",
            message: e.to_string(),
        })
}

/// Runs a parsed command line and returns what should be printed.
pub fn run(cli: &Cli, env_cache: Option<PathBuf>) -> CliResult<String> {
    match &cli.command {
        Command::Analyze(args) => {
            let report = cmd_analyze(&read_asm(&args.input)?, &args.checks, &args.engine)?;
            match args.format {
                Format::Text => Ok(analyze_text(&report)),
                _ => json(&report),
            }
        }
        Command::Enumerate(args) => cmd_enumerate(args, env_cache),
        Command::Verify(args) => cmd_verify(args),
        Command::Pattern(args) => {
            let out = cmd_pattern(
                &read_asm(&args.pattern)?,
                &read_asm(&args.target)?,
                args.strict_badblock,
            )?;
            json(&out)
        }
        Command::Diagram(args) => Ok(cmd_diagram(&read_asm(&args.input)?)),
    }
}

/// Writes `output` to `--out` if given, else returns it for stdout.
pub fn emit(cli: &Cli, output: String) -> CliResult<Option<String>> {
    match &cli.out {
        Some(path) => {
            fs::write(path, output).map_err(|e| CliError::io(path, e))?;
            Ok(None)
        }
        None => Ok(Some(output)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_input_shapes() {
        let bare = parse_asm("[[0,1],[1,0]]").unwrap();
        let wrapped = parse_asm(r#"{"n": 2, "matrix": [[0,1],[1,0]]}"#).unwrap();
        assert_eq!(bare, wrapped);
    }

    #[test]
    fn rejects_inconsistent_size() {
        let err = parse_asm(r#"{"n": 3, "matrix": [[0,1],[1,0]]}"#).unwrap_err();
        assert_eq!(err.code, "E_SIZE_MISMATCH");
    }

    #[test]
    fn rejects_non_square() {
        let err = parse_asm("[[1,0,0],[0,1,0],[0,0,1],[0,0,0]]").unwrap_err();
        assert_eq!(err.code, "E_NON_SQUARE");
    }

    #[test]
    fn error_display_is_machine_parsable() {
        let e = CliError {
            code: "E_IO",
            message: "x".into(),
        };
        assert_eq!(e.to_string(), "error[E_IO]: x");
    }
}
