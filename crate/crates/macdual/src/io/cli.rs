//! Command-line front end.
//!
//! Every subcommand reads a problem file, runs one computation, and writes
//! results to stdout (diagnostics go to stderr).  Exit codes: 0 on success,
//! 1 on parse or validation failure, 2 when `--verify` finds a mismatch
//! between the dual-space engine and the brute-force oracle.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::Polynomial;
use crate::dual::{DegreeRegion, DualTable, Functional};
use crate::grading::{Grading, MultiDegree};
use crate::idealops::{self, DualPresentation, Membership};
use crate::io::{emit, parse, ProblemFile, QuotientBy};
use crate::oracle;
use crate::Result;

#[derive(Parser)]
#[command(
    name = "macdual",
    version,
    about = "Multi-graded Macaulay dual spaces over the rationals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Cross-check every reported value against a brute-force oracle.
    #[arg(long, global = true)]
    verify: bool,
    /// Suppress result output (diagnostics still go to stderr).
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a problem file and check that every ideal is well formed.
    Validate { file: PathBuf },
    /// Tabulate the Hilbert function on the region below a degree.
    Hilbert {
        file: PathBuf,
        /// Ideal declared in the file.
        #[arg(long)]
        ideal: String,
        /// Largest degree, e.g. `4` or `(4,4)`.
        #[arg(long = "max-degree")]
        max_degree: String,
    },
    /// Print a basis of the dual space at one degree.
    DualBasis {
        file: PathBuf,
        /// Ideal declared in the file.
        #[arg(long)]
        ideal: String,
        /// Degree of the dual space, e.g. `2` or `(1,1)`.
        #[arg(long)]
        degree: String,
    },
    /// Decide whether a polynomial lies in an ideal.
    Member {
        file: PathBuf,
        /// Ideal declared in the file.
        #[arg(long)]
        ideal: String,
        /// Polynomial expression to test.
        #[arg(long)]
        poly: String,
    },
    /// Tabulate the Hilbert function of a colon ideal.
    Quotient {
        file: PathBuf,
        /// Ideal declared in the file.
        #[arg(long)]
        ideal: String,
        /// Divisor: a declared ideal name or a polynomial expression.
        #[arg(long)]
        by: String,
        /// Largest degree of the table.
        #[arg(long = "max-degree")]
        max_degree: String,
    },
    /// Saturate by an ideal and report when the quotient chain stabilizes.
    Saturate {
        file: PathBuf,
        /// Ideal declared in the file.
        #[arg(long)]
        ideal: String,
        /// Declared ideal to saturate by.
        #[arg(long)]
        by: String,
        /// Degree bounding the window on which stabilization is judged.
        #[arg(long)]
        window: String,
    },
    /// Sum the Hilbert function below a bound and report completeness.
    Multiplicity {
        file: PathBuf,
        /// Ideal declared in the file.
        #[arg(long)]
        ideal: String,
        /// Degree bounding the summation region.
        #[arg(long)]
        bound: String,
    },
}

pub(crate) struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn ok(stdout: String) -> Self {
        RunOutput { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        RunOutput { code, stdout: String::new(), stderr }
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let out = run_captured(args);
    if !out.stdout.is_empty() {
        print!("{}", out.stdout);
    }
    if !out.stderr.is_empty() {
        eprint!("{}", out.stderr);
    }
    out.code
}

pub(crate) fn run_captured<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    RunOutput { code: 0, stdout: rendered, stderr: String::new() }
                }
                _ => RunOutput::fail(1, rendered),
            };
        }
    };
    let mut out = match dispatch(&cli) {
        Ok(out) => out,
        Err(e) => RunOutput::fail(1, format!("error: {e}\n")),
    };
    if cli.quiet {
        out.stdout.clear();
    }
    out
}

fn dispatch(cli: &Cli) -> Result<RunOutput> {
    let file = match &cli.command {
        Command::Validate { file }
        | Command::Hilbert { file, .. }
        | Command::DualBasis { file, .. }
        | Command::Member { file, .. }
        | Command::Quotient { file, .. }
        | Command::Saturate { file, .. }
        | Command::Multiplicity { file, .. } => file,
    };
    let text = match fs::read_to_string(file) {
        Ok(text) => text,
        Err(e) => {
            return Ok(RunOutput::fail(
                1,
                format!("error: cannot read `{}`: {e}\n", file.display()),
            ))
        }
    };
    let problem = ProblemFile::parse(&text)?;
    match &cli.command {
        Command::Validate { .. } => validate(cli, &problem),
        Command::Hilbert { ideal, max_degree, .. } => hilbert(cli, &problem, ideal, max_degree),
        Command::DualBasis { ideal, degree, .. } => dual_basis(cli, &problem, ideal, degree),
        Command::Member { ideal, poly, .. } => member(cli, &problem, ideal, poly),
        Command::Quotient { ideal, by, max_degree, .. } => {
            quotient(cli, &problem, ideal, by, max_degree)
        }
        Command::Saturate { ideal, by, window, .. } => saturate(cli, &problem, ideal, by, window),
        Command::Multiplicity { ideal, bound, .. } => multiplicity(cli, &problem, ideal, bound),
    }
}

fn validate(cli: &Cli, problem: &ProblemFile) -> Result<RunOutput> {
    for (name, _) in &problem.ideals {
        problem.graded_ideal(name)?;
    }
    let grading = problem.grading.as_ref();
    let stdout = match cli.format {
        Format::Table => {
            let mut s = format!(
                "ok: {} variables, rank-{} grading, {} ideals, {} queries\n",
                grading.nvars(),
                grading.k(),
                problem.ideals.len(),
                problem.queries.len()
            );
            for (name, gens) in &problem.ideals {
                s.push_str(&format!("ideal {name}: {} generators\n", gens.len()));
            }
            s
        }
        Format::Json => {
            let ideals: Vec<Value> = problem
                .ideals
                .iter()
                .map(|(name, gens)| json!({"name": name, "generators": gens.len()}))
                .collect();
            let meta = json!({"ideals": ideals, "queries": problem.queries.len()});
            pretty(&emit::json_envelope(grading, &BTreeMap::new(), meta))
        }
        Format::Csv => {
            let mut s = String::from("ideal,generators\n");
            for (name, gens) in &problem.ideals {
                s.push_str(&format!("{name},{}\n", gens.len()));
            }
            s
        }
    };
    Ok(RunOutput::ok(stdout))
}

fn hilbert(
    cli: &Cli,
    problem: &ProblemFile,
    ideal: &str,
    max_degree: &str,
) -> Result<RunOutput> {
    let grading = &problem.grading;
    let bound = parse::degree(grading.k(), max_degree)?;
    let graded = problem.graded_ideal(ideal)?;
    let mut table = DualTable::new(graded);
    let values = table.hilbert_table(&DegreeRegion::Below(bound.clone()))?;
    let stdout = tabular(cli.format, grading, &values, &bound, json!({}))?;
    let mut out = RunOutput::ok(stdout);
    if cli.verify {
        let gens = problem.ideal_generators(ideal).unwrap();
        report_mismatches(&mut out, verify_against_oracle(grading, gens, None, &values));
    }
    Ok(out)
}

fn dual_basis(
    cli: &Cli,
    problem: &ProblemFile,
    ideal: &str,
    degree: &str,
) -> Result<RunOutput> {
    let grading = &problem.grading;
    let target = parse::degree(grading.k(), degree)?;
    let graded = problem.graded_ideal(ideal)?;
    let mut table = DualTable::new(graded);
    let basis = table.dual_space(&target)?.basis_functionals(&target);
    let mut values = BTreeMap::new();
    values.insert(target.clone(), basis.len());
    let stdout = match cli.format {
        Format::Table => {
            let mut s = format!("degree {target}  dim {}\n", basis.len());
            for f in &basis {
                s.push_str(&format!("{f}\n"));
            }
            s
        }
        Format::Json => {
            let strings: Vec<String> = basis.iter().map(|f| f.to_string()).collect();
            pretty(&emit::json_envelope(grading, &values, json!({"basis": strings})))
        }
        Format::Csv => {
            let mut s = String::from("index,functional\n");
            for (i, f) in basis.iter().enumerate() {
                s.push_str(&format!("{i},\"{f}\"\n"));
            }
            s
        }
    };
    let mut out = RunOutput::ok(stdout);
    if cli.verify {
        let gens = problem.ideal_generators(ideal).unwrap();
        report_mismatches(&mut out, verify_basis(grading, gens, &target, &basis));
    }
    Ok(out)
}

fn member(cli: &Cli, problem: &ProblemFile, ideal: &str, poly: &str) -> Result<RunOutput> {
    let grading = &problem.grading;
    let g = parse::polynomial(grading, poly, 0)?;
    let graded = problem.graded_ideal(ideal)?;
    let mut pres = DualPresentation::of_ideal(graded);
    let result = idealops::membership(&mut pres, &g)?;
    let (is_member, witness) = match &result {
        Membership::Member => (true, None),
        Membership::NotMember { witness } => (false, Some(witness.to_string())),
    };
    let stdout = match cli.format {
        Format::Table => match &witness {
            None => "member\n".to_string(),
            Some(w) => format!("not a member\nwitness: {w}\n"),
        },
        Format::Json => {
            let meta = json!({"member": is_member, "witness": witness});
            pretty(&emit::json_envelope(grading, &BTreeMap::new(), meta))
        }
        Format::Csv => match &witness {
            None => "member,witness\ntrue,\n".to_string(),
            Some(w) => format!("member,witness\nfalse,\"{w}\"\n"),
        },
    };
    let mut out = RunOutput::ok(stdout);
    if cli.verify {
        let gens = problem.ideal_generators(ideal).unwrap();
        let oracle_says = oracle::oracle_membership(grading, gens, &g)?;
        if oracle_says != is_member {
            report_mismatches(
                &mut out,
                vec![format!(
                    "membership disagrees: engine says {is_member}, oracle says {oracle_says}"
                )],
            );
        }
    }
    Ok(out)
}

fn resolve_divisor(problem: &ProblemFile, by: &str) -> Result<QuotientBy> {
    if problem.ideal_generators(by.trim()).is_some() {
        return Ok(QuotientBy::Ideal(by.trim().to_string()));
    }
    Ok(QuotientBy::Poly(parse::polynomial(&problem.grading, by, 0)?))
}

fn quotient(
    cli: &Cli,
    problem: &ProblemFile,
    ideal: &str,
    by: &str,
    max_degree: &str,
) -> Result<RunOutput> {
    let grading = &problem.grading;
    let bound = parse::degree(grading.k(), max_degree)?;
    let graded = problem.graded_ideal(ideal)?;
    let base = DualPresentation::of_ideal(graded);
    let divisor = resolve_divisor(problem, by)?;
    let by_gens: Vec<Polynomial> = match &divisor {
        QuotientBy::Ideal(name) => {
            problem.graded_ideal(name)?;
            problem.ideal_generators(name).unwrap().to_vec()
        }
        QuotientBy::Poly(p) => vec![p.clone()],
    };
    let mut pres = match &divisor {
        QuotientBy::Ideal(_) => DualPresentation::quotient_by_ideal(base, by_gens.clone())?,
        QuotientBy::Poly(p) => DualPresentation::quotient_by_poly(base, p.clone())?,
    };
    let values = pres.hilbert_table(&DegreeRegion::Below(bound.clone()))?;
    let stdout = tabular(cli.format, grading, &values, &bound, json!({}))?;
    let mut out = RunOutput::ok(stdout);
    if cli.verify {
        let gens = problem.ideal_generators(ideal).unwrap();
        report_mismatches(
            &mut out,
            verify_against_oracle(grading, gens, Some((&by_gens, 1)), &values),
        );
    }
    Ok(out)
}

fn saturate(
    cli: &Cli,
    problem: &ProblemFile,
    ideal: &str,
    by: &str,
    window: &str,
) -> Result<RunOutput> {
    let grading = &problem.grading;
    let bound = parse::degree(grading.k(), window)?;
    let graded = problem.graded_ideal(ideal)?;
    problem.graded_ideal(by)?;
    let by_gens = problem.ideal_generators(by).unwrap().to_vec();
    let base = DualPresentation::of_ideal(graded);
    let region = DegreeRegion::Below(bound.clone());
    let (mut saturated, steps) = idealops::saturate(base, by_gens.clone(), &region)?;
    let values = saturated.hilbert_table(&region)?;
    let meta = json!({"stabilized_at": steps});
    let stdout = match cli.format {
        Format::Table => {
            let mut s = emit::render_hilbert_table(grading, &values, &bound)?;
            s.push_str(&format!("stabilized after {steps} quotient steps\n"));
            s
        }
        Format::Json => pretty(&emit::json_envelope(grading, &values, meta)),
        Format::Csv => {
            let mut s = emit::csv_output(grading, &values);
            s.push_str(&format!("stabilized_at,{steps}\n"));
            s
        }
    };
    let mut out = RunOutput::ok(stdout);
    if cli.verify {
        let gens = problem.ideal_generators(ideal).unwrap();
        let power = if steps == 0 { None } else { Some((by_gens.as_slice(), steps)) };
        report_mismatches(&mut out, verify_against_oracle(grading, gens, power, &values));
    }
    Ok(out)
}

fn multiplicity(
    cli: &Cli,
    problem: &ProblemFile,
    ideal: &str,
    bound: &str,
) -> Result<RunOutput> {
    let grading = &problem.grading;
    let bound = parse::degree(grading.k(), bound)?;
    let graded = problem.graded_ideal(ideal)?;
    let mut pres = DualPresentation::of_ideal(graded);
    let (total, complete) = idealops::multiplicity(&mut pres, &bound)?;
    let values = pres.hilbert_table(&DegreeRegion::Below(bound.clone()))?;
    let meta = json!({"multiplicity": total, "complete": complete});
    let stdout = match cli.format {
        Format::Table => {
            let mut s = emit::render_hilbert_table(grading, &values, &bound)?;
            if complete {
                s.push_str(&format!("multiplicity {total} (complete below {bound})\n"));
            } else {
                s.push_str(&format!(
                    "multiplicity {total} (support escapes the bound {bound}; a larger bound may add more)\n"
                ));
            }
            s
        }
        Format::Json => pretty(&emit::json_envelope(grading, &values, meta)),
        Format::Csv => {
            let mut s = emit::csv_output(grading, &values);
            s.push_str(&format!("multiplicity,{total}\ncomplete,{complete}\n"));
            s
        }
    };
    let mut out = RunOutput::ok(stdout);
    if cli.verify {
        let gens = problem.ideal_generators(ideal).unwrap();
        report_mismatches(&mut out, verify_against_oracle(grading, gens, None, &values));
    }
    Ok(out)
}

fn tabular(
    format: Format,
    grading: &Grading,
    values: &BTreeMap<MultiDegree, usize>,
    bound: &MultiDegree,
    meta: Value,
) -> Result<String> {
    Ok(match format {
        Format::Table => emit::render_hilbert_table(grading, values, bound)?,
        Format::Json => pretty(&emit::json_envelope(grading, values, meta)),
        Format::Csv => emit::csv_output(grading, values),
    })
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON serialization cannot fail");
    s.push('\n');
    s
}

fn report_mismatches(out: &mut RunOutput, mismatches: Vec<String>) {
    if mismatches.is_empty() {
        return;
    }
    out.code = 2;
    for m in mismatches {
        out.stderr.push_str(&format!("verify: {m}\n"));
    }
}

/// Recomputes every table entry with the oracle.  `quotient` carries the
/// divisor generators and the power when the values describe a colon ideal.
fn verify_against_oracle(
    grading: &Grading,
    gens: &[Polynomial],
    quotient: Option<(&[Polynomial], u32)>,
    values: &BTreeMap<MultiDegree, usize>,
) -> Vec<String> {
    let mut mismatches = Vec::new();
    for (m, &dim) in values {
        let expected = match quotient {
            None => oracle::oracle_hilbert(grading, gens, m),
            Some((by, _)) if by.is_empty() => Ok(0),
            Some((by, power)) => oracle::oracle_quotient_hilbert(grading, gens, by, power, m),
        };
        match expected {
            Ok(expected) if expected == dim => {}
            Ok(expected) => mismatches.push(format!(
                "degree {m}: reported dimension {dim}, oracle says {expected}"
            )),
            Err(e) => mismatches.push(format!("degree {m}: oracle failed: {e}")),
        }
    }
    mismatches
}

/// Checks that each basis functional annihilates every generator multiple
/// of the right degree and that the count matches the oracle dimension.
fn verify_basis(
    grading: &Grading,
    gens: &[Polynomial],
    target: &MultiDegree,
    basis: &[Functional],
) -> Vec<String> {
    let mut mismatches = Vec::new();
    match oracle::oracle_hilbert(grading, gens, target) {
        Ok(expected) if expected == basis.len() => {}
        Ok(expected) => mismatches.push(format!(
            "degree {target}: basis has {} functionals, oracle dimension is {expected}",
            basis.len()
        )),
        Err(e) => mismatches.push(format!("degree {target}: oracle failed: {e}")),
    }
    for (gi, gen) in gens.iter().enumerate() {
        let degree = gen
            .homogeneous_degree()
            .expect("generators were validated on construction");
        let shift_degree = target - &degree;
        if !grading.in_weight_semigroup(&shift_degree) {
            continue;
        }
        for beta in grading.monomials_of_degree(&shift_degree) {
            let shift =
                Polynomial::monomial(gen.grading().clone(), beta, crate::algebra::Rat::one());
            let product = &shift * gen;
            for (fi, f) in basis.iter().enumerate() {
                if !f.eval(&product).is_zero() {
                    mismatches.push(format!(
                        "functional {fi} does not annihilate a degree-{target} multiple of generator {gi}"
                    ));
                }
            }
        }
    }
    mismatches
}
