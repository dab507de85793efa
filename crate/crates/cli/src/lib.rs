//! Command-line front end for `bettibound`.
//!
//! Every command is a pure function from parsed arguments to an [`Outcome`]
//! holding the full standard output and the exit code, so runs can be
//! compared byte for byte in-process.

pub mod parse;
pub mod render;

use std::fs;
use std::path::{Path, PathBuf};

use bettibound::boij_soederberg::{convex_bounds_check, decompose, DecomposeOutcome};
use bettibound::bounds::{evaluate_report, Assumptions, BoundFamily, BoundsReport};
use bettibound::diagram::{
    classify, hilbert_multiplicity, multiplicity_conjecture_check, peskine_szpiro_check, shifts,
};
use bettibound::resolution::{
    ek_betti, homology_betti_with_cap, is_componentwise_linear, koszul_betti,
    DEFAULT_MAX_GENERATORS,
};
use bettibound::{ring_invariants, GradedBettiTable, Monomial, MonomialIdeal, RingInvariants};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use render::{joined, rational, Block, Document, Format};

pub const MAX_GENS_VAR: &str = "BETTIBOUND_MAX_GENS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Inapplicable(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io { .. } => 2,
            CliError::Inapplicable(_) => 3,
        }
    }
}

impl From<bettibound::Error> for CliError {
    fn from(e: bettibound::Error) -> Self {
        CliError::Inapplicable(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub max_generators: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            max_generators: DEFAULT_MAX_GENERATORS,
        }
    }
}

impl Config {
    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var(MAX_GENS_VAR) {
            Ok(v) => v
                .trim()
                .parse()
                .map(|max_generators| Self { max_generators })
                .map_err(|_| CliError::Parse(format!("{MAX_GENS_VAR}={v} is not a count"))),
            Err(_) => Ok(Self::default()),
        }
    }
}

/// Full standard output of a command and its exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

#[derive(Debug, Parser)]
#[command(
    name = "bettibound",
    version,
    about = "Graded Betti tables and bounds on their totals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the graded Betti table of S/I.
    Betti(BettiArgs),
    /// Evaluate every bound family at every homological degree.
    Bounds(BoundsArgs),
    /// Decompose a Betti diagram into pure diagrams.
    Decompose(DecomposeArgs),
    /// Run the whole pipeline on an ideal.
    Report(ReportArgs),
}

#[derive(Clone, Debug, Default, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Monomial ideal file (`ring <n>` then one monomial per line).
    #[arg(long, value_name = "FILE")]
    pub ideal: Option<PathBuf>,
    /// Betti table file (`betti <n>` then `i j value` lines).
    #[arg(long, value_name = "FILE")]
    pub table: Option<PathBuf>,
    /// Complete intersection x1^d1, ..., xp^dp.
    #[arg(long, value_name = "D1,D2,...", value_delimiter = ',')]
    pub ci: Option<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Eliahou-Kervaire; strongly stable ideals only.
    Ek,
    /// Simplicial homology over the lcm lattice.
    Homology,
    /// Eliahou-Kervaire when strongly stable, homology otherwise.
    #[default]
    Auto,
}

#[derive(Clone, Debug, Args)]
pub struct BettiArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, value_enum, default_value_t)]
    pub method: Method,
}

#[derive(Clone, Debug, Default, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, value_enum, default_value_t)]
    pub method: Method,
    #[arg(long)]
    pub assume_cm: bool,
    #[arg(long)]
    pub assume_gorenstein: bool,
    #[arg(long)]
    pub assume_ci: bool,
    #[arg(long)]
    pub assume_cwl: bool,
    #[arg(long, value_name = "N")]
    pub codim: Option<usize>,
    /// Exit with status 1 when a guaranteed bound is violated.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Clone, Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, value_enum, default_value_t)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Clone, Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, value_enum, default_value_t)]
    pub method: Method,
    /// Exit with status 1 on a guaranteed-bound violation or when a
    /// Cohen-Macaulay table fails to decompose.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

pub fn run(cli: &Cli, config: &Config) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Betti(a) => cmd_betti(a, config),
        Command::Bounds(a) => cmd_bounds(a, config),
        Command::Decompose(a) => cmd_decompose(a, config),
        Command::Report(a) => cmd_report(a, config),
    }
}

enum Loaded {
    Ideal {
        ideal: MonomialIdeal,
        ci: Option<Vec<u32>>,
    },
    Table(GradedBettiTable),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn complete_intersection(degrees: &[u32]) -> Result<MonomialIdeal, CliError> {
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(CliError::Parse("--ci needs positive degrees".into()));
    }
    let n = degrees.len();
    let gens = degrees.iter().enumerate().map(|(k, d)| {
        let mut e = vec![0; n];
        e[k] = *d;
        Monomial::new(e)
    });
    MonomialIdeal::minimalize(gens, n).map_err(|e| CliError::Parse(e.to_string()))
}

fn load(input: &Input) -> Result<Loaded, CliError> {
    if let Some(path) = &input.ideal {
        let ideal = parse::parse_ideal(&read(path)?)?;
        return Ok(Loaded::Ideal { ideal, ci: None });
    }
    if let Some(path) = &input.table {
        return Ok(Loaded::Table(parse::parse_betti(&read(path)?)?));
    }
    if let Some(degrees) = &input.ci {
        let ideal = complete_intersection(degrees)?;
        return Ok(Loaded::Ideal {
            ideal,
            ci: Some(degrees.clone()),
        });
    }
    Err(CliError::Parse(
        "one of --ideal, --table, --ci is required".into(),
    ))
}

fn resolve(
    ideal: &MonomialIdeal,
    ci: Option<&[u32]>,
    method: Method,
    config: &Config,
) -> Result<(GradedBettiTable, &'static str), CliError> {
    Ok(match (method, ci) {
        (Method::Auto, Some(degrees)) => (koszul_betti(degrees)?, "koszul"),
        (Method::Ek, _) => (ek_betti(ideal)?, "eliahou-kervaire"),
        (Method::Homology, _) => (
            homology_betti_with_cap(ideal, config.max_generators)?,
            "homology",
        ),
        (Method::Auto, None) if ideal.is_strongly_stable() => {
            (ek_betti(ideal)?, "eliahou-kervaire")
        }
        (Method::Auto, None) => (
            homology_betti_with_cap(ideal, config.max_generators)?,
            "homology",
        ),
    })
}

/// Properties of `S/I` read off the ideal and its table.
struct Facts {
    invariants: RingInvariants,
    strongly_stable: bool,
    complete_intersection: bool,
    /// `None` when the component ideals exceed the generator cap.
    componentwise_linear: Option<bool>,
    gorenstein: bool,
}

fn facts(
    ideal: &MonomialIdeal,
    table: &GradedBettiTable,
    config: &Config,
) -> Result<Facts, CliError> {
    let invariants = ring_invariants(ideal, table)?;
    let p = table.projdim();
    Ok(Facts {
        strongly_stable: ideal.is_strongly_stable(),
        complete_intersection: ideal.is_monomial_regular_sequence(),
        componentwise_linear: is_componentwise_linear(ideal, config.max_generators).ok(),
        gorenstein: invariants.is_cohen_macaulay && (p == 0 || table.total(p) == 1),
        invariants,
    })
}

pub fn cmd_betti(args: &BettiArgs, config: &Config) -> Result<Outcome, CliError> {
    let table = match load(&args.input)? {
        Loaded::Ideal { ideal, ci } => resolve(&ideal, ci.as_deref(), args.method, config)?.0,
        Loaded::Table(t) => t,
    };
    Ok(Outcome {
        stdout: parse::write_betti(&table),
        code: 0,
    })
}

fn bounds_block(report: &BoundsReport) -> Block {
    let mut rows = Vec::new();
    for ix in &report.indices {
        for r in &ix.bounds {
            let (value, satisfied, equality, note) = match &r.value {
                Ok(v) => (
                    rational(v),
                    json!(r.satisfied),
                    json!(r.equality),
                    Value::Null,
                ),
                Err(e) => (Value::Null, Value::Null, Value::Null, json!(e.reason)),
            };
            rows.push(vec![
                json!(ix.i),
                json!(r.family.name()),
                json!(ix.beta),
                value,
                satisfied,
                equality,
                json!(r.applicable()),
                json!(r.guaranteed),
                note,
            ]);
        }
    }
    Block::Table {
        section: "bounds",
        columns: vec![
            "i",
            "family",
            "beta",
            "value",
            "satisfied",
            "equality",
            "applicable",
            "guaranteed",
            "note",
        ],
        rows,
    }
}

fn guarantees_block(report: &BoundsReport) -> Block {
    let guarantees: Vec<&str> = report.guarantees.iter().map(|g| g.name()).collect();
    let violations: Vec<String> = report
        .guaranteed_violations()
        .into_iter()
        .map(|(i, f)| format!("{i}:{}", f.name()))
        .collect();
    let equal_everywhere: Vec<&str> = BoundFamily::ALL
        .iter()
        .filter(|f| report.all_equal(**f))
        .map(|f| f.name())
        .collect();
    let a = &report.assumptions;
    Block::Fields {
        section: "guarantees",
        fields: vec![
            ("p", json!(report.p)),
            ("codim", json!(report.codim)),
            ("assume_cm", json!(a.cohen_macaulay)),
            ("assume_gorenstein", json!(a.gorenstein)),
            ("assume_ci", json!(a.complete_intersection)),
            ("assume_cwl", json!(a.componentwise_linear)),
            ("guaranteed", joined(&guarantees)),
            ("violations", joined(&violations)),
            ("equal_at_all_i", joined(&equal_everywhere)),
        ],
    }
}

fn shape_blocks(table: &GradedBettiTable) -> Vec<Block> {
    let s = shifts(table);
    let c = classify(table);
    let ps = peskine_szpiro_check(table);
    vec![
        Block::Fields {
            section: "shape",
            fields: vec![
                ("m", joined(&s.min)),
                ("M", joined(&s.max)),
                ("totals", joined(&table.totals())),
                ("pure", json!(c.is_pure)),
                ("linear", json!(c.is_linear)),
                ("quasi_pure", json!(c.is_quasi_pure)),
                ("strictly_quasi_pure", json!(c.is_strictly_quasi_pure)),
            ],
        },
        Block::Fields {
            section: "peskine_szpiro",
            fields: vec![
                ("residuals", joined(&ps.residuals)),
                ("all_zero", json!(ps.all_zero())),
            ],
        },
    ]
}

/// Multiplicity from the Hilbert numerator, plus the conjectured window when
/// `p = codim`. Returns exit code 3 when the codimension does not fit the
/// table.
fn multiplicity_block(table: &GradedBettiTable, codim: Option<usize>) -> (Block, u8) {
    let mut fields = vec![("codim", json!(codim))];
    let mut code = 0;
    match codim.map(|c| hilbert_multiplicity(table, c)) {
        None => fields.push(("e", Value::Null)),
        Some(Err(e)) => {
            fields.push(("e", Value::Null));
            fields.push(("error", json!(e.to_string())));
            code = 3;
        }
        Some(Ok(h)) => {
            fields.push(("e", rational(&h.multiplicity)));
            let c = h.codim;
            if let Ok(w) = multiplicity_conjecture_check(table, c) {
                fields.extend([
                    ("window_lower", rational(&w.lower)),
                    ("window_upper", rational(&w.upper)),
                    ("lower_holds", json!(w.lower_holds)),
                    ("upper_holds", json!(w.upper_holds)),
                    ("lower_equality", json!(w.lower_equality)),
                    ("upper_equality", json!(w.upper_equality)),
                ]);
            }
        }
    }
    (
        Block::Fields {
            section: "multiplicity",
            fields,
        },
        code,
    )
}

fn assumptions_for(args: &BoundsArgs, facts: Option<&Facts>) -> Result<Assumptions, CliError> {
    let mut a = Assumptions {
        cohen_macaulay: args.assume_cm,
        gorenstein: args.assume_gorenstein,
        complete_intersection: args.assume_ci,
        componentwise_linear: args.assume_cwl,
        codim: args.codim,
    };
    if let Some(f) = facts {
        let codim = f.invariants.codim;
        if args.codim.is_some_and(|c| c != codim) {
            return Err(CliError::Inapplicable(format!(
                "--codim {} conflicts with the ideal's codimension {codim}",
                args.codim.unwrap()
            )));
        }
        a.codim = Some(codim);
        a.cohen_macaulay |= f.invariants.is_cohen_macaulay;
        a.gorenstein |= f.gorenstein;
        a.complete_intersection |= f.complete_intersection;
        a.componentwise_linear |= f.componentwise_linear == Some(true);
    }
    Ok(a)
}

pub fn cmd_bounds(args: &BoundsArgs, config: &Config) -> Result<Outcome, CliError> {
    let (table, facts) = match load(&args.input)? {
        Loaded::Ideal { ideal, ci } => {
            let (t, _) = resolve(&ideal, ci.as_deref(), args.method, config)?;
            let f = facts(&ideal, &t, config)?;
            (t, Some(f))
        }
        Loaded::Table(t) => (t, None),
    };
    let assumptions = assumptions_for(args, facts.as_ref())?;
    let report = evaluate_report(&table, &assumptions)?;
    let mut doc = Document::default();
    doc.push(bounds_block(&report));
    doc.push(guarantees_block(&report));
    doc.blocks.extend(shape_blocks(&table));
    let (block, mut code) = multiplicity_block(&table, report.codim);
    doc.push(block);
    if args.strict && !report.guaranteed_violations().is_empty() {
        code = code.max(1);
    }
    Ok(Outcome {
        stdout: doc.render(args.format),
        code,
    })
}

/// Decomposition blocks and whether the decomposition succeeded.
fn decomposition_blocks(table: &GradedBettiTable) -> Result<(Vec<Block>, bool), CliError> {
    Ok(match decompose(table)? {
        DecomposeOutcome::Success(dec) => {
            let terms = dec
                .terms
                .iter()
                .map(|t| vec![rational(&t.lambda), joined(t.diagram.shifts())])
                .collect();
            let check = convex_bounds_check(&dec);
            let rows = check
                .rows
                .iter()
                .map(|r| {
                    vec![
                        json!(r.i),
                        rational(&r.beta),
                        rational(&r.lower),
                        rational(&r.upper),
                        json!(r.lower_holds),
                        json!(r.upper_holds),
                        json!(r.lower_equality),
                        json!(r.upper_equality),
                    ]
                })
                .collect();
            let blocks = vec![
                Block::Table {
                    section: "decomposition",
                    columns: vec!["lambda", "shifts"],
                    rows: terms,
                },
                Block::Table {
                    section: "convex_bounds",
                    columns: vec![
                        "i",
                        "beta",
                        "lower",
                        "upper",
                        "lower_holds",
                        "upper_holds",
                        "lower_equality",
                        "upper_equality",
                    ],
                    rows,
                },
            ];
            (blocks, true)
        }
        DecomposeOutcome::Failure(f) => {
            let steps = f
                .terms
                .iter()
                .map(|t| vec![rational(&t.lambda), joined(t.diagram.shifts())])
                .collect();
            let remainder = f
                .remainder
                .entries()
                .map(|(i, j, v)| vec![json!(i), json!(j), rational(v)])
                .collect();
            let blocks = vec![
                Block::Fields {
                    section: "decomposition_failure",
                    fields: vec![("reason", json!(f.reason))],
                },
                Block::Table {
                    section: "partial_terms",
                    columns: vec!["lambda", "shifts"],
                    rows: steps,
                },
                Block::Table {
                    section: "remainder",
                    columns: vec!["i", "j", "value"],
                    rows: remainder,
                },
            ];
            (blocks, false)
        }
    })
}

pub fn cmd_decompose(args: &DecomposeArgs, config: &Config) -> Result<Outcome, CliError> {
    let table = match load(&args.input)? {
        Loaded::Ideal { ideal, ci } => resolve(&ideal, ci.as_deref(), args.method, config)?.0,
        Loaded::Table(t) => t,
    };
    let (blocks, ok) = decomposition_blocks(&table)?;
    Ok(Outcome {
        stdout: Document { blocks }.render(args.format),
        code: if ok { 0 } else { 1 },
    })
}

pub fn cmd_report(args: &ReportArgs, config: &Config) -> Result<Outcome, CliError> {
    let (ideal, ci) = match load(&args.input)? {
        Loaded::Ideal { ideal, ci } => (ideal, ci),
        Loaded::Table(_) => {
            return Err(CliError::Parse(
                "report needs --ideal or --ci; use bounds or decompose for tables".into(),
            ))
        }
    };
    let (table, method) = resolve(&ideal, ci.as_deref(), args.method, config)?;
    let f = facts(&ideal, &table, config)?;
    let inv = &f.invariants;
    let mut doc = Document::default();
    let mut code = 0;

    doc.push(Block::Fields {
        section: "input",
        fields: vec![
            ("ideal", json!(ideal.to_string())),
            ("n", json!(ideal.n())),
            ("method", json!(method)),
        ],
    });
    doc.push(Block::Table {
        section: "betti",
        columns: vec!["i", "j", "value"],
        rows: table
            .entries()
            .map(|(i, j, v)| vec![json!(i), json!(j), json!(v)])
            .collect(),
    });
    doc.push(Block::Fields {
        section: "invariants",
        fields: vec![
            ("dim", json!(inv.dim)),
            ("codim", json!(inv.codim)),
            ("depth", json!(inv.depth)),
            ("projdim", json!(inv.projdim)),
            ("cm", json!(inv.is_cohen_macaulay)),
            ("gorenstein", json!(f.gorenstein)),
            ("complete_intersection", json!(f.complete_intersection)),
            ("componentwise_linear", json!(f.componentwise_linear)),
            ("strongly_stable", json!(f.strongly_stable)),
        ],
    });
    doc.blocks.extend(shape_blocks(&table));
    let (block, c) = multiplicity_block(&table, Some(inv.codim));
    doc.push(block);
    code = code.max(c);

    let assumptions = assumptions_for(&BoundsArgs::default(), Some(&f))?;
    let report = evaluate_report(&table, &assumptions)?;
    doc.push(bounds_block(&report));
    doc.push(guarantees_block(&report));
    if args.strict && !report.guaranteed_violations().is_empty() {
        code = code.max(1);
    }

    if table.projdim() == 0 {
        doc.push(Block::Fields {
            section: "decomposition_failure",
            fields: vec![("reason", json!("projective dimension 0"))],
        });
    } else {
        let (blocks, ok) = decomposition_blocks(&table)?;
        doc.blocks.extend(blocks);
        if args.strict && !ok && inv.is_cohen_macaulay {
            code = code.max(1);
        }
    }
    Ok(Outcome {
        stdout: doc.render(args.format),
        code,
    })
}
