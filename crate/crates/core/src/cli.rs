//! Command-line front end. Exit codes: 0 success, 1 a verification check
//! failed, 2 a hypothesis on the input failed, 3 internal error.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{build_family, FamilyDescriptor, FamilyKind, FamilySpec};
use crate::fq::build_field;
use crate::strata::enumerate_strata;
use crate::strata::oracle::{centralizer_checks, CentralizerCheck};
use crate::stringy::{mass_report, stringy_point_count, truncated_sum, MassReport, Mode, StringyReport};
use crate::symq::rational_to_string;
use crate::verify::{all_passed, run_checks, CheckResult, Level, Status};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_PRECONDITION: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "wmk", version, about = "Exact stringy point counts of A^3/G in characteristic 3")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    None,
    Fast,
    Full,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Level {
        match l {
            LevelArg::None => Level::None,
            LevelArg::Fast => Level::Fast,
            LevelArg::Full => Level::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    CyclicL,
    CyclicLl,
    #[value(name = "sym-2")]
    Sym2,
    SymLl,
}

impl From<FamilyArg> for FamilyKind {
    fn from(f: FamilyArg) -> FamilyKind {
        match f {
            FamilyArg::CyclicL => FamilyKind::CyclicL,
            FamilyArg::CyclicLl => FamilyKind::CyclicLL,
            FamilyArg::Sym2 => FamilyKind::Sym2,
            FamilyArg::SymLl => FamilyKind::SymLL,
        }
    }
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// The prime l (defaults to 2 for sym-2).
    #[arg(long)]
    pub l: Option<u32>,
    /// Field degree; q = 3^r.
    #[arg(long)]
    pub r: u32,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

impl FamilyArgs {
    pub fn spec(&self) -> Result<FamilySpec> {
        let kind = FamilyKind::from(self.family);
        let l = match (self.l, kind) {
            (Some(l), _) => l,
            (None, FamilyKind::Sym2) => 2,
            (None, _) => return Err(Error::InvalidArgument(format!("--l is required for {kind}"))),
        };
        FamilySpec::new(kind, l, self.r)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, conjugacy classes, smallness and stabilizer centralizers.
    Group(FamilyArgs),
    /// The stringy point count.
    Stringy {
        #[command(flatten)]
        family: FamilyArgs,
        /// Report the polynomial only, without evaluating at q.
        #[arg(long)]
        symbolic: bool,
        /// Also sum the infinite strata up to index J.
        #[arg(long, value_name = "J")]
        truncate: Option<u32>,
        #[arg(long, value_enum, default_value = "none")]
        level: LevelArg,
    },
    /// Runs the oracle suite.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value = "fast")]
        level: LevelArg,
    },
    /// Euler characteristic of a crepant resolution.
    Euler(FamilyArgs),
    /// The mass formula for degree-n etale algebras.
    Mass {
        #[arg(long)]
        n: u32,
        /// Evaluate at q = 3^r (and enumerate the left side when n = 2).
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub representative_order: u64,
    pub size: usize,
    pub centralizer: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub family: FamilyDescriptor,
    pub order: usize,
    pub conjugacy_classes: usize,
    pub small: bool,
    pub classes: Vec<ClassSummary>,
    pub stabilizer_centralizers: Vec<CentralizerCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    pub family: FamilyDescriptor,
    pub euler_characteristic: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub family: FamilyDescriptor,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

pub fn group_summary(spec: &FamilySpec) -> Result<GroupSummary> {
    let fam = build_family(spec)?;
    let group = &fam.group;
    let classes = group.conjugacy_classes();
    let summaries = classes
        .iter()
        .map(|c| {
            Ok(ClassSummary {
                representative_order: c
                    .representative
                    .order(group.field(), group.order() as u64)
                    .ok_or_else(|| Error::Internal("order does not divide |G|".into()))?,
                size: c.size,
                centralizer: group.centralizer(&[c.representative])?.order(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupSummary {
        family: spec.descriptor(),
        order: group.order(),
        conjugacy_classes: classes.len(),
        small: group.is_small(),
        classes: summaries,
        stabilizer_centralizers: centralizer_checks(&fam, &enumerate_strata(spec)?)?,
    })
}

fn describe(f: &FamilyDescriptor) -> String {
    format!("{} (l = {}, q = 3^{} = {})", f.kind, f.l, f.r, f.q)
}

fn approx(x: &num_rational::BigRational) -> String {
    format!("{:.12e}", x.to_f64().unwrap_or(f64::NAN))
}

fn render_checks(out: &mut String, checks: &[CheckResult]) {
    for c in checks {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let _ = write!(out, "{status} {}: expected {} actual {}", c.name, c.expected, c.actual);
        if let Some(r) = &c.residual {
            let _ = write!(out, " residual {r}");
        }
        out.push('\n');
    }
}

pub fn render_group(s: &GroupSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "family: {}", describe(&s.family));
    let _ = writeln!(out, "order: {}", s.order);
    let _ = writeln!(out, "conjugacy classes: {}", s.conjugacy_classes);
    let _ = writeln!(out, "small: {}", s.small);
    let _ = writeln!(out, "classes (element order, size, centralizer):");
    for c in &s.classes {
        let _ = writeln!(out, "  {} {} {}", c.representative_order, c.size, c.centralizer);
    }
    let _ = writeln!(out, "stabilizer centralizers (stratum, table, computed):");
    for c in &s.stabilizer_centralizers {
        let _ = writeln!(out, "  {} {} {}", c.stratum, c.expected, c.actual);
    }
    out
}

pub fn render_stringy(r: &StringyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "family: {}", describe(&r.family));
    let _ = writeln!(out, "polynomial: {}", r.polynomial);
    if let Some(v) = &r.numeric_value {
        let _ = writeln!(out, "value at q = {}: {}", r.family.q, rational_to_string(v));
    }
    let _ = writeln!(out, "euler characteristic: {}", r.euler_characteristic);
    if let Some(t) = &r.truncated {
        let _ = writeln!(out, "partial sum (r <= {}): {}", t.truncation, rational_to_string(&t.partial));
        let _ = writeln!(out, "  approx {}", approx(&t.partial));
        let _ = writeln!(out, "tail bound: {}", rational_to_string(&t.tail_bound));
        let _ = writeln!(out, "  approx {}", approx(&t.tail_bound));
    }
    render_checks(&mut out, &r.verification);
    out
}

pub fn render_mass(m: &MassReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n: {}", m.n);
    let _ = writeln!(out, "rhs: {}", m.rhs);
    if let (Some(q), Some(v)) = (m.q, &m.rhs_value) {
        let _ = writeln!(out, "rhs at q = {q}: {}", rational_to_string(v));
    }
    if let Some(lhs) = &m.lhs_enumerated {
        let _ = writeln!(out, "lhs (weighted {}): {}", m.weighting, rational_to_string(lhs));
    }
    if let Some(ok) = m.matches {
        let _ = writeln!(out, "match: {ok}");
    }
    out
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl Fn(&T) -> String) -> Result<String> {
    match format {
        Format::Text => Ok(text(value)),
        Format::Json => serde_json::to_string_pretty(value)
            .map(|s| s + "\n")
            .map_err(|e| Error::Internal(e.to_string())),
    }
}

/// Runs a parsed command, returning its output and exit code.
pub fn execute(cli: &Cli) -> Result<(String, u8)> {
    match &cli.command {
        Command::Group(args) => {
            let summary = group_summary(&args.spec()?)?;
            Ok((emit(args.format, &summary, render_group)?, EXIT_OK))
        }
        Command::Stringy { family, symbolic, truncate, level } => {
            let spec = family.spec()?;
            let mode = if *symbolic { Mode::Symbolic } else { Mode::Numeric };
            let mut report = stringy_point_count(&spec, mode)?;
            if let Some(j) = truncate {
                report.truncated =
                    Some(truncated_sum(&enumerate_strata(&spec)?, u64::from(spec.q()), *j)?);
            }
            report.verification = run_checks(&spec, (*level).into())?;
            let code = if all_passed(&report.verification) { EXIT_OK } else { EXIT_VERIFICATION };
            Ok((emit(family.format, &report, render_stringy)?, code))
        }
        Command::Verify { family, level } => {
            let spec = family.spec()?;
            let checks = run_checks(&spec, (*level).into())?;
            let passed = all_passed(&checks);
            let report = VerifyReport { family: spec.descriptor(), checks, passed };
            let text = |r: &VerifyReport| {
                let mut out = format!("family: {}\n", describe(&r.family));
                render_checks(&mut out, &r.checks);
                out.push_str(if r.passed { "all checks passed\n" } else { "some checks FAILED\n" });
                out
            };
            let code = if passed { EXIT_OK } else { EXIT_VERIFICATION };
            Ok((emit(family.format, &report, text)?, code))
        }
        Command::Euler(args) => {
            let spec = args.spec()?;
            let report = stringy_point_count(&spec, Mode::Symbolic)?;
            let euler = EulerReport {
                family: report.family,
                euler_characteristic: report.euler_characteristic,
            };
            let text = |e: &EulerReport| format!("{}\n", e.euler_characteristic);
            Ok((emit(args.format, &euler, text)?, EXIT_OK))
        }
        Command::Mass { n, r, format } => {
            let field = r.map(build_field).transpose()?;
            let report = mass_report(*n, field.as_deref())?;
            let code = if report.matches == Some(false) { EXIT_VERIFICATION } else { EXIT_OK };
            Ok((emit(*format, &report, render_mass)?, code))
        }
    }
}

/// Exit code for an error: 2 for hypothesis failures, 3 otherwise.
pub fn exit_code_for(err: &Error) -> u8 {
    if err.is_precondition() {
        EXIT_PRECONDITION
    } else {
        EXIT_INTERNAL
    }
}

/// Parses `args`, runs the command and writes to stdout/stderr.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PRECONDITION } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
