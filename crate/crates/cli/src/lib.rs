//! Command-line front end: argument parsing, input loading and report emission.

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod commands;
mod input;
pub mod report;

pub use input::{max_dim, CliError, MAX_DIM_VAR};
pub use report::{Report, Table, SCHEMA};

#[derive(Parser, Debug)]
#[command(name = "hopfweil", version, about = "Exact Cartan calculus for operations of finite-dimensional Hopf algebras")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub group: Group,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Group {
    /// Hopf algebras: axiom checks and the built-in catalog.
    #[command(subcommand)]
    Hopf(HopfCmd),
    /// The algebra C(H) of multilinear forms.
    #[command(subcommand)]
    Cforms(CformsCmd),
    /// Operations of H: axioms and spectral sequence terms.
    #[command(subcommand)]
    Operation(OperationCmd),
    /// Algebraic connections on C(H) and W(H).
    #[command(subcommand)]
    Connection(ConnectionCmd),
    /// The Weil algebra W(H).
    #[command(subcommand)]
    Weil(WeilCmd),
    /// Lie algebra operations: Koszul complex, classical Weil algebra, Cartan map.
    #[command(subcommand)]
    Classical(ClassicalCmd),
    /// The differential envelope of an algebra with a Lie action.
    #[command(subcommand)]
    Envelope(EnvelopeCmd),
}

/// Where the Hopf algebra comes from; the catalog name wins when both are absent.
#[derive(Args, Debug, Clone, Serialize)]
pub struct HopfInput {
    /// Catalog algebra: z2, z3, s3, sweedler4, taft2, taft3.
    #[arg(long, conflicts_with = "file")]
    pub catalog: Option<String>,
    /// Definition file of kind hopf.
    #[arg(long)]
    pub file: Option<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct LieInput {
    /// Catalog Lie algebra: sl2, aff2, so3 or abelian(n).
    #[arg(long, conflicts_with = "lie_file")]
    pub lie: Option<String>,
    /// Definition file of kind lie.
    #[arg(long)]
    pub lie_file: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DifferentialArg {
    D0,
    Hochschild,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Cforms,
    Weil,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BarArg {
    Symmetrized,
    LeftIterated,
}

#[derive(Subcommand, Debug)]
pub enum HopfCmd {
    /// Checks the five axiom families; without an input, every catalog algebra.
    Check(HopfInput),
    /// Prints a catalog algebra as a definition file, with its axiom checks.
    Catalog(CatalogArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct CatalogArgs {
    pub name: String,
    /// Print only the canonical definition file instead of a report.
    #[arg(long)]
    pub definition_only: bool,
}

#[derive(Subcommand, Debug)]
pub enum CformsCmd {
    /// Checks d^2 = 0 and tabulates full, invariant and basic cohomology.
    Cohomology(CformsCohomologyArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct CformsCohomologyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: HopfInput,
    #[arg(long, value_enum, default_value_t = DifferentialArg::Hochschild)]
    pub differential: DifferentialArg,
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
}

#[derive(Subcommand, Debug)]
pub enum OperationCmd {
    /// Checks the operation axioms on C(H) or W(H).
    Verify(OperationArgs),
    /// Dimensions of E_r^{p,q} of the filtration by contractions.
    Spectral(SpectralArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct OperationArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: HopfInput,
    #[arg(long, value_enum, default_value_t = Model::Cforms)]
    pub model: Model,
    /// Differential of C(H); ignored for the Weil model.
    #[arg(long, value_enum, default_value_t = DifferentialArg::Hochschild)]
    pub differential: DifferentialArg,
    /// Degree cutoff; 4 for C(H), the size-dependent default for W(H).
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Replace i_h by zero for the basis element with this label.
    #[arg(long)]
    pub zero_contraction: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct SpectralArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: HopfInput,
    #[arg(long, value_enum, default_value_t = Model::Cforms)]
    pub model: Model,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    /// Degree cutoff; 4 for C(H), the size-dependent default for W(H).
    #[arg(long)]
    pub cutoff: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum ConnectionCmd {
    /// Solves for the affine space of connections C(H) -> C(H).
    Solve(ConnectionArgs),
    /// Verifies the canonical flat connection on C(H) or the universal one on W(H).
    Verify(ConnectionArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct ConnectionArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: HopfInput,
    #[arg(long, value_enum, default_value_t = Model::Cforms)]
    pub model: Model,
    /// Degree cutoff; 4 for C(H), the size-dependent default for W(H).
    #[arg(long)]
    pub cutoff: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum WeilCmd {
    /// Dimensions, axioms, homotopy and section identities of W(H).
    Build(WeilArgs),
    /// Full and invariant cohomology of W(H).
    Cohomology(WeilArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct WeilArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: HopfInput,
    /// Defaults to 5 when dim H <= 2 and 4 otherwise.
    #[arg(long)]
    pub cutoff: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum ClassicalCmd {
    /// The Koszul complex of g as an operation, with the U(g) extension checks.
    Koszul(KoszulArgs),
    /// The classical Weil algebra: acyclicity, basic cohomology and invariant polynomials.
    Weil(ClassicalWeilArgs),
    /// The Cartan map on invariant polynomials.
    Cartan(CartanArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct KoszulArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub lie: LieInput,
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Longest word for the extension, shuffle and bar checks; 0 skips them.
    #[arg(long, default_value_t = 0)]
    pub max_word: usize,
    #[arg(long, value_enum, default_value_t = BarArg::Symmetrized)]
    pub bar: BarArg,
}

#[derive(Args, Debug, Serialize)]
pub struct ClassicalWeilArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub lie: LieInput,
    #[arg(long, default_value_t = 6)]
    pub cutoff: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct CartanArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub lie: LieInput,
    /// Polynomial degree k; the image has degree 2k - 1.
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
}

#[derive(Subcommand, Debug)]
pub enum EnvelopeCmd {
    /// The induced operation on Omega(A), its U(g) extension, the quotient map and the obstruction.
    Check(EnvelopeArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct EnvelopeArgs {
    /// m2-sl2, upper2-aff2, upper2-abelian or qz2-zero.
    #[arg(long, default_value = "m2-sl2")]
    pub action: String,
    #[arg(long, default_value_t = 3)]
    pub cutoff: usize,
    #[arg(long, default_value_t = 3)]
    pub max_word: usize,
}

/// Exit status and the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Serialized arguments, rendered as strings and keyed by flag name.
fn parameters<T: Serialize>(args: &T) -> BTreeMap<String, String> {
    let value = serde_json::to_value(args).expect("arguments serialize");
    let mut out = BTreeMap::new();
    if let serde_json::Value::Object(map) = value {
        for (k, v) in map {
            let s = match v {
                serde_json::Value::Null => continue,
                serde_json::Value::String(s) => s,
                other => other.to_string(),
            };
            out.insert(k.replace('_', "-"), s);
        }
    }
    out
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    if let Group::Hopf(HopfCmd::Catalog(args)) = &cli.group {
        if args.definition_only {
            return match commands::catalog_definition(&args.name) {
                Ok(text) => Outcome { code: 0, stdout: text, stderr: String::new() },
                Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
            };
        }
    }
    let report = execute(&cli.group);
    let stdout = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    Outcome { code: if report.pass { 0 } else { 1 }, stdout, stderr: String::new() }
}

/// Runs a parsed command; module errors become the report's `error` entry.
pub fn execute(group: &Group) -> Report {
    macro_rules! dispatch {
        ($name:expr, $args:expr, $inputs:expr, $f:path) => {{
            let mut report = Report::new($name, parameters($args), &$inputs);
            if let Err(e) = $f($args, &mut report) {
                report.fail(e.to_string());
            }
            report.finish()
        }};
    }
    let bytes = |h: &HopfInput| input::input_bytes(h.file.as_deref());
    let lie_bytes = |l: &LieInput| input::input_bytes(l.lie_file.as_deref());
    match group {
        Group::Hopf(HopfCmd::Check(a)) => dispatch!("hopf check", a, bytes(a), commands::hopf_check),
        Group::Hopf(HopfCmd::Catalog(a)) => dispatch!("hopf catalog", a, Vec::<u8>::new(), commands::hopf_catalog),
        Group::Cforms(CformsCmd::Cohomology(a)) => {
            dispatch!("cforms cohomology", a, bytes(&a.input), commands::cforms_cohomology)
        }
        Group::Operation(OperationCmd::Verify(a)) => {
            dispatch!("operation verify", a, bytes(&a.input), commands::operation_verify)
        }
        Group::Operation(OperationCmd::Spectral(a)) => {
            dispatch!("operation spectral", a, bytes(&a.input), commands::operation_spectral)
        }
        Group::Connection(ConnectionCmd::Solve(a)) => {
            dispatch!("connection solve", a, bytes(&a.input), commands::connection_solve)
        }
        Group::Connection(ConnectionCmd::Verify(a)) => {
            dispatch!("connection verify", a, bytes(&a.input), commands::connection_verify)
        }
        Group::Weil(WeilCmd::Build(a)) => dispatch!("weil build", a, bytes(&a.input), commands::weil_build),
        Group::Weil(WeilCmd::Cohomology(a)) => dispatch!("weil cohomology", a, bytes(&a.input), commands::weil_cohomology),
        Group::Classical(ClassicalCmd::Koszul(a)) => {
            dispatch!("classical koszul", a, lie_bytes(&a.lie), commands::classical_koszul)
        }
        Group::Classical(ClassicalCmd::Weil(a)) => dispatch!("classical weil", a, lie_bytes(&a.lie), commands::classical_weil),
        Group::Classical(ClassicalCmd::Cartan(a)) => {
            dispatch!("classical cartan", a, lie_bytes(&a.lie), commands::classical_cartan)
        }
        Group::Envelope(EnvelopeCmd::Check(a)) => dispatch!("envelope check", a, Vec::<u8>::new(), commands::envelope_check),
    }
}
