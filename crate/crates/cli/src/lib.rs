//! Command-line front end: tables, field queries, claim verification.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use charfields::arith::prime_power;
use charfields::config::{bounds, set_bounds};
use charfields::galois::FieldDescriptor;
use charfields::glm::{k_ellr_glm, k_glm};
use charfields::selftest;
use charfields::tables::{CharTable, Group};
use charfields::theorems::{sweep, verify_with_generator, Claim, Params, Status, Summary, SweepRange, VerificationResult};
use charfields::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

const ENV_HELP: &str = "\
Bounds can also be set through the environment:
  CHARFIELDS_MAX_LEVEL       largest cyclotomic level n of Q(zeta_n)
  CHARFIELDS_MAX_FIELD_SIZE  largest finite field order p^n
  CHARFIELDS_MAX_TABLE_Q     largest q for GL2/SL2 tables
  CHARFIELDS_MAX_M           largest rank m for GL_m
  CHARFIELDS_MAX_ELLR        largest prime power l^r for GL_m order queries

Exit status: 0 all checks pass, 1 a verification failed, 2 usage error,
3 a bound was exceeded.";

#[derive(Parser, Debug)]
#[command(name = "charfields", version, about = "Exact character tables of GL2/SL2 over F_q and the fields of their values", after_help = ENV_HELP)]
struct Cli {
    #[command(flatten)]
    bounds: BoundArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[arg(long, global = true, env = "CHARFIELDS_MAX_LEVEL")]
    max_level: Option<u64>,
    #[arg(long, global = true, env = "CHARFIELDS_MAX_FIELD_SIZE")]
    max_field_size: Option<u64>,
    #[arg(long, global = true, env = "CHARFIELDS_MAX_TABLE_Q")]
    max_table_q: Option<u64>,
    #[arg(long, global = true, env = "CHARFIELDS_MAX_M")]
    max_m: Option<u64>,
    #[arg(long, global = true, env = "CHARFIELDS_MAX_ELLR")]
    max_ellr: Option<u64>,
}

/// `--q Q` or `--p P --n N`.
#[derive(Args, Debug)]
struct FieldOrder {
    /// Field size, a prime power
    #[arg(long, conflicts_with_all = ["p", "n"])]
    q: Option<u64>,
    /// Characteristic, with --n
    #[arg(long, requires = "n")]
    p: Option<u64>,
    /// Extension degree, with --p
    #[arg(long, requires = "p")]
    n: Option<u32>,
}

impl FieldOrder {
    fn resolve(&self) -> Result<(u64, u64, u32), CliError> {
        let q = match (self.q, self.p, self.n) {
            (Some(q), _, _) => q,
            (None, Some(p), Some(n)) => {
                if !charfields::arith::is_prime(p) {
                    return Err(Error::NotPrime(p).into());
                }
                p.checked_pow(n).ok_or_else(|| CliError::Usage(format!("{p}^{n} does not fit in 64 bits")))?
            }
            _ => return Err(CliError::Usage("give --q or both --p and --n".into())),
        };
        let (p, n) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Ok((q, p, n))
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupArg {
    Gl2,
    Sl2,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Gl2 => Group::Gl2,
            GroupArg::Sl2 => Group::Sl2,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FieldGroup {
    Gl2,
    Sl2,
    Glm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump the classes and the full character table
    Table {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[command(flatten)]
        size: FieldOrder,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Which primitive element generates F_{q^2} (0 = the first)
        #[arg(long, default_value_t = 0)]
        generator: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Field generated by character values, optionally at one element order
    Field {
        #[arg(long, value_enum)]
        group: FieldGroup,
        #[command(flatten)]
        size: FieldOrder,
        /// Rank for --group glm
        #[arg(long)]
        m: Option<u32>,
        /// Element order; for glm a prime power l^r
        #[arg(long)]
        order: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Verify one claim at one parameter set
    Verify {
        /// Claim id, e.g. Thm4, L2, K8-table, 2r-remark, Lemma3.1
        #[arg(long)]
        claim: String,
        #[command(flatten)]
        size: FieldOrder,
        #[arg(long, requires = "r")]
        ell: Option<u64>,
        #[arg(long, requires = "ell")]
        r: Option<u32>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 0)]
        generator: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Verify every listed claim over parameter ranges
    Sweep {
        /// Comma-separated claim ids, or ALL
        #[arg(long, default_value = "ALL")]
        claims: String,
        #[arg(long, default_value_t = 13)]
        q_max: u64,
        #[arg(long, default_value_t = 27)]
        ellr_max: u64,
        #[arg(long, default_value_t = 3)]
        m_max: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the invariant suites
    Selftest {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Lib(e) if e.is_bound() => EXIT_BOUND,
            CliError::Lib(
                Error::InvalidArgument(_)
                | Error::NotPrime(_)
                | Error::NotPrimePower(_)
                | Error::NotSquarefree(_)
                | Error::NotAUnit { .. }
                | Error::DegreeDoesNotDivide { .. }
                | Error::NoElementOfOrder { .. }
                | Error::Indeterminate(_),
            ) => EXIT_USAGE,
            CliError::Lib(_) | CliError::Io(_) => EXIT_FAIL,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Lib(e) => e.to_string(),
            CliError::Io(e) => e.to_string(),
        }
    }
}

/// Pretty JSON with keys sorted (serde_json's default map is ordered).
fn to_json<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("serializable");
    serde_json::to_string_pretty(&value).expect("serializable") + "\n"
}

fn q_line(q: u64, p: u64, n: u32) -> String {
    if n == 1 {
        format!("q = {q}")
    } else {
        format!("q = {q} = {p}^{n}")
    }
}

fn field_text(f: &FieldDescriptor) -> String {
    let names = f.names();
    let mut s = format!("{}\n  conductor {}, degree {}, fixing subgroup {:?}\n", names[0], f.conductor(), f.degree(), f.fixing_residues());
    if names.len() > 1 {
        s += &format!("  also {}\n", names[1..].join(", "));
    }
    s
}

fn emit(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => File::create(p)?.write_all(text.as_bytes())?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn apply_bounds(b: &BoundArgs) {
    let mut cur = bounds();
    let pairs = [
        (b.max_level, &mut cur.max_level),
        (b.max_field_size, &mut cur.max_field_size),
        (b.max_table_q, &mut cur.max_table_q),
        (b.max_m, &mut cur.max_m),
        (b.max_ellr, &mut cur.max_ellr),
    ];
    for (v, slot) in pairs {
        if let Some(v) = v {
            *slot = v;
        }
    }
    set_bounds(cur);
}

fn table_text(t: &CharTable, q_echo: &str) -> String {
    let dump = t.dump();
    let mut s = format!(
        "{}(F_{})  {}  |G| = {}  level {}\n\nclasses ({}):\n",
        t.group(),
        t.q(),
        q_echo,
        t.group_order(),
        t.level(),
        dump.classes.len()
    );
    for c in &dump.classes {
        s += &format!("  {:<12} size {:<8} order {}\n", c.label, c.size, c.order);
    }
    s += &format!("\ncharacters ({}):\n", dump.characters.len());
    for (ch, row) in dump.characters.iter().zip(&dump.values) {
        s += &format!("  {} (degree {}):\n", ch.id.label, ch.degree);
        for (c, v) in dump.classes.iter().zip(row) {
            s += &format!("    {:<12} {}\n", c.label, v.pretty);
        }
    }
    if !dump.notes.is_empty() {
        s += "\nnotes:\n";
        for n in &dump.notes {
            s += &format!("  {n}\n");
        }
    }
    s
}

fn result_text(r: &VerificationResult) -> String {
    let status = match r.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIP",
    };
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut s = format!("{status}  {:<10} {}", r.claim.id(), params.join(" "));
    if let Some(c) = &r.computed {
        s += &format!("  computed {c}");
    }
    if let Some(p) = &r.predicted {
        s += &format!("  predicted {p}");
    }
    s += "\n";
    for n in &r.notes {
        s += &format!("      {n}\n");
    }
    s
}

#[derive(Serialize)]
struct SweepReport<'a> {
    results: &'a [VerificationResult],
    summary: Summary,
}

fn parse_claims(s: &str) -> Result<Vec<Claim>, CliError> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(Claim::ALL.to_vec());
    }
    s.split(',').map(|c| c.trim().parse::<Claim>().map_err(CliError::from)).collect()
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    apply_bounds(&cli.bounds);
    match cli.command {
        Command::Table { group, size, format, generator, output } => {
            let (q, p, n) = size.resolve()?;
            let t = CharTable::build_with_generator(group.into(), q, generator)?;
            let text = match format {
                Format::Json => {
                    writeln!(err, "{}", q_line(q, p, n))?;
                    to_json(&t.dump())
                }
                Format::Text => table_text(&t, &q_line(q, p, n)),
            };
            emit(out, &output, &text)?;
            Ok(EXIT_OK)
        }
        Command::Field { group, size, m, order, format } => {
            let (q, p, n) = size.resolve()?;
            let f = match group {
                FieldGroup::Gl2 | FieldGroup::Sl2 => {
                    let g = if matches!(group, FieldGroup::Gl2) { Group::Gl2 } else { Group::Sl2 };
                    CharTable::build(g, q)?.field_generated(order)?
                }
                FieldGroup::Glm => {
                    let m = m.unwrap_or(2);
                    match order {
                        None => k_glm(m, q)?,
                        Some(d) => {
                            let (l, r) = prime_power(d)
                                .ok_or_else(|| CliError::Usage(format!("glm order queries need a prime power, got {d}")))?;
                            k_ellr_glm(m, q, l, r)?
                        }
                    }
                }
            };
            match format {
                Format::Json => {
                    writeln!(err, "{}", q_line(q, p, n))?;
                    out.write_all(to_json(&f).as_bytes())?;
                }
                Format::Text => {
                    writeln!(out, "{}", q_line(q, p, n))?;
                    out.write_all(field_text(&f).as_bytes())?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { claim, size, ell, r, d, m, generator, format } => {
            let claim: Claim = claim.parse()?;
            let (q, p, n) = size.resolve()?;
            let params = Params { q, l: ell, r, d, m };
            let res = verify_with_generator(claim, &params, generator)?;
            match format {
                Format::Json => {
                    writeln!(err, "{}", q_line(q, p, n))?;
                    out.write_all(to_json(&res).as_bytes())?;
                }
                Format::Text => {
                    writeln!(out, "{}", q_line(q, p, n))?;
                    out.write_all(result_text(&res).as_bytes())?;
                }
            }
            Ok(if res.status == Status::Fail { EXIT_FAIL } else { EXIT_OK })
        }
        Command::Sweep { claims, q_max, ellr_max, m_max, format, output } => {
            let claims = parse_claims(&claims)?;
            let results = sweep(&claims, &SweepRange { q_max, ellr_max, m_max })?;
            let summary = Summary::of(&results);
            let text = match format {
                Format::Json => to_json(&SweepReport { results: &results, summary }),
                Format::Text => {
                    let mut s: String = results.iter().map(result_text).collect();
                    s += &format!("pass {}, fail {}, skipped {}\n", summary.pass, summary.fail, summary.skipped);
                    s
                }
            };
            emit(out, &output, &text)?;
            Ok(if summary.fail > 0 { EXIT_FAIL } else { EXIT_OK })
        }
        Command::Selftest { format } => {
            let report = selftest::run();
            match format {
                Format::Json => out.write_all(to_json(&report).as_bytes())?,
                Format::Text => {
                    for c in &report.checks {
                        let status = if c.passed { "PASS" } else { "FAIL" };
                        writeln!(out, "{status}  {} ({} cases)", c.name, c.cases)?;
                        if let Some(d) = &c.detail {
                            writeln!(out, "      {d}")?;
                        }
                    }
                }
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            } else {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            };
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}
