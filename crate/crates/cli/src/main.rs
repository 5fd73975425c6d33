//! `rperm`: count, list and cross-check pattern-avoiding permutations.
//!
//! Exit status: 0 success, 1 usage error, 2 verification failure,
//! 3 domain or constraint rejection.

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use restricted_perms::bijections::{
    check_bijection, perm_to_tiling, themed_bijection_inverse, themed_filling, tiling_filling,
    BijectionError, Filling, Theorem, Tiling,
};
use restricted_perms::constructions::family_gf;
use restricted_perms::perm::{count_avoiders, enumerate_avoiders, Permutation};
use restricted_perms::registry::{registry, FormulaId};
use restricted_perms::verify::{verify_all, VerifyOptions, VerifyReport};
use restricted_perms::{FamilySpec, Gf, PatternSet};

#[derive(Parser)]
#[command(name = "rperm", version, about = "Exact enumeration of pattern-avoiding permutations")]
struct Cli {
    /// One JSON object per line instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print only summaries.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print |S_n(R)|. R is a pattern list (`123,132`) or a family (`gamma:0,2,2`).
    Count { n: usize, patterns: String },
    /// List S_n(R) in lexicographic order.
    Enum { n: usize, patterns: String },
    /// Print the generating function of a family's class and its first coefficients.
    Gf {
        family: String,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Compare brute force, closed form and generating function for a formula id, or `all`.
    Verify {
        id: String,
        #[arg(long, default_value_t = 60)]
        nmax: usize,
        #[arg(long, default_value_t = 9)]
        oracle_max: usize,
    },
    /// Run a bijection: F (the basic pair), T44, T47, T410, T54 or T58.
    Bij(BijArgs),
    /// Print the patterns of a family and the class they belong to.
    Family { spec: String },
    /// List every formula id.
    Registry,
}

#[derive(Args)]
struct BijArgs {
    theorem: String,
    /// Parameter b for T44, T47 and T410.
    #[arg(long)]
    b: Option<u32>,
    /// Permutation length for --roundtrip.
    #[arg(long)]
    n: Option<usize>,
    /// Map a tiling such as `1,2,1` to its permutation.
    #[arg(long, conflicts_with_all = ["invert", "roundtrip"])]
    apply: Option<String>,
    /// Map a permutation back to its tiling.
    #[arg(long, conflicts_with = "roundtrip")]
    invert: Option<String>,
    /// Check the bijection exhaustively at length --n.
    #[arg(long)]
    roundtrip: bool,
}

/// Failure kinds, each with its exit status.
enum Failure {
    /// The reader went away; not an error.
    Closed,
    Usage(String),
    Verify(String),
    Rejected(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Closed => 0,
            Failure::Usage(_) => 1,
            Failure::Verify(_) => 2,
            Failure::Rejected(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Closed => "",
            Failure::Usage(m) | Failure::Verify(m) | Failure::Rejected(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Usage(format!("write failed: {e}"))
    }
}

impl From<BijectionError> for Failure {
    fn from(e: BijectionError) -> Self {
        match e {
            BijectionError::ParseTiling(_)
            | BijectionError::UnknownTheorem(_)
            | BijectionError::MissingB(_) => Failure::Usage(e.to_string()),
            _ => Failure::Rejected(e.to_string()),
        }
    }
}

type Out<'a> = BufWriter<io::StdoutLock<'a>>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = out.flush();
            eprintln!("rperm: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    match &cli.command {
        Command::Count { n, patterns } => {
            let class = parse_class(patterns)?;
            let value = count_avoiders(*n, &class);
            if cli.json {
                writeln!(out, "{}", json!({"cmd": "count", "params": patterns, "n": n, "value": value.to_string()}))?;
            } else {
                writeln!(out, "{value}")?;
            }
        }
        Command::Enum { n, patterns } => {
            let class = parse_class(patterns)?;
            for pi in enumerate_avoiders(*n, &class) {
                if cli.json {
                    writeln!(out, "{}", json!({"cmd": "enum", "params": patterns, "n": n, "value": pi.to_pattern_token()}))?;
                } else {
                    writeln!(out, "{}", pi.to_pattern_token())?;
                }
            }
        }
        Command::Gf { family, order } => {
            let spec: FamilySpec = family.parse().map_err(usage)?;
            let gf: Gf = family_gf(&spec).map_err(usage)?;
            let coeffs = gf.series_coeffs(*order).map_err(usage)?;
            if cli.json {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "cmd": "gf",
                        "params": family,
                        "numerator": gf.numerator().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "denominator": gf.denominator().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    })
                )?;
                for (n, c) in coeffs.iter().enumerate() {
                    writeln!(out, "{}", json!({"cmd": "gf", "params": family, "n": n, "value": c.to_string()}))?;
                }
            } else {
                writeln!(out, "class: {}", spec.class().map_err(usage)?)?;
                writeln!(out, "gf: {gf}")?;
                let list: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                writeln!(out, "coefficients: {}", list.join(", "))?;
            }
        }
        Command::Verify { id, nmax, oracle_max } => {
            let ids = if id == "all" {
                registry()
            } else {
                vec![id.parse::<FormulaId>().map_err(usage)?]
            };
            let opts = VerifyOptions {
                oracle_max: *oracle_max,
                nmax: *nmax,
            };
            let reports = verify_all(&ids, opts).map_err(|e| Failure::Rejected(e.to_string()))?;
            for report in &reports {
                print_report(cli, out, report)?;
            }
            let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.id.as_str()).collect();
            if !failed.is_empty() {
                return Err(Failure::Verify(format!("verification failed for {}", failed.join(", "))));
            }
        }
        Command::Bij(args) => run_bij(cli, out, args)?,
        Command::Family { spec } => {
            let parsed: FamilySpec = spec.parse().map_err(usage)?;
            let patterns = parsed.patterns().map_err(usage)?;
            let class = parsed.class().map_err(usage)?;
            if cli.json {
                let list = |s: &PatternSet| s.iter().map(Permutation::to_pattern_token).collect::<Vec<_>>();
                writeln!(
                    out,
                    "{}",
                    json!({"cmd": "family", "params": spec, "patterns": list(&patterns), "class": list(&class)})
                )?;
            } else {
                writeln!(out, "patterns: {patterns}")?;
                writeln!(out, "class: {class}")?;
            }
        }
        Command::Registry => {
            for id in registry() {
                if cli.json {
                    writeln!(
                        out,
                        "{}",
                        json!({
                            "id": id.to_string(),
                            "valid_from": id.valid_from(),
                            "patterns": id.patterns().to_string(),
                            "statement": id.citation(),
                        })
                    )?;
                } else {
                    writeln!(out, "{id}\tn >= {}\t{}", id.valid_from(), id.citation())?;
                }
            }
        }
    }
    Ok(())
}

fn parse_class(text: &str) -> Result<PatternSet, Failure> {
    let spec: FamilySpec = text.parse().map_err(usage)?;
    spec.class().map_err(usage)
}

fn print_report(cli: &Cli, out: &mut Out, report: &VerifyReport) -> io::Result<()> {
    let show = |v: &Option<restricted_perms::Count>| v.as_ref().map(|x| x.to_string());
    if !cli.quiet {
        for row in &report.rows {
            if cli.json {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "id": row.id,
                        "n": row.n,
                        "oracle": show(&row.oracle),
                        "closed": show(&row.closed),
                        "gf": show(&row.gf),
                        "ok": row.ok,
                    })
                )?;
            } else {
                let cell = |v: &Option<restricted_perms::Count>| show(v).unwrap_or_else(|| "-".into());
                writeln!(
                    out,
                    "{}\tn={}\toracle={}\tclosed={}\tgf={}\t{}",
                    row.id,
                    row.n,
                    cell(&row.oracle),
                    cell(&row.closed),
                    cell(&row.gf),
                    if row.ok { "ok" } else { "MISMATCH" }
                )?;
            }
        }
    }
    if cli.json {
        return Ok(());
    }
    let last = report.rows.last().map_or(0, |r| r.n);
    match (report.passed, report.display_mismatch, report.first_discrepancy()) {
        (true, _, _) => writeln!(out, "PASS {} (n = 1..{last})", report.id),
        (false, Some(i), _) => writeln!(out, "FAIL {}: displayed generating function {i} differs", report.id),
        (false, None, Some(row)) => writeln!(out, "FAIL {}: first discrepancy at n = {}", report.id, row.n),
        (false, None, None) => writeln!(out, "FAIL {}", report.id),
    }
}

/// The basic pair is addressed as `F`; everything else is a [`Theorem`].
enum BijKind {
    Basic,
    Themed(Theorem),
}

fn run_bij(cli: &Cli, out: &mut Out, args: &BijArgs) -> Result<(), Failure> {
    let kind = if args.theorem.eq_ignore_ascii_case("F") {
        BijKind::Basic
    } else {
        BijKind::Themed(Theorem::parse(&args.theorem, args.b)?)
    };
    let label = match &kind {
        BijKind::Basic => "F".to_string(),
        BijKind::Themed(t) => t.to_string(),
    };
    if let Some(text) = &args.apply {
        let tiling: Tiling = text.parse()?;
        let filling = match &kind {
            BijKind::Basic => tiling_filling(&tiling),
            BijKind::Themed(t) => themed_filling(*t, &tiling)?,
        };
        return show_pair(cli, out, &label, &filling);
    }
    if let Some(text) = &args.invert {
        let pi: Permutation = text.parse().map_err(usage)?;
        let filling = match &kind {
            BijKind::Basic => tiling_filling(&perm_to_tiling(&pi)?),
            BijKind::Themed(t) => themed_filling(*t, &themed_bijection_inverse(*t, &pi)?)?,
        };
        return show_pair(cli, out, &label, &filling);
    }
    if args.roundtrip {
        let n = args.n.ok_or_else(|| usage("--roundtrip needs --n"))?;
        let theorem = match &kind {
            BijKind::Basic => None,
            BijKind::Themed(t) => Some(*t),
        };
        let checked = check_bijection(theorem, n);
        return match checked {
            Ok(count) => {
                if cli.json {
                    writeln!(out, "{}", json!({"cmd": "bij", "params": label, "n": n, "value": count, "ok": true}))?;
                } else {
                    writeln!(out, "pass, {count} objects checked ({label}, n = {n})")?;
                }
                Ok(())
            }
            Err(why) => Err(Failure::Verify(format!("{label} roundtrip at n = {n}: {why}"))),
        };
    }
    Err(usage("bij needs one of --apply, --invert or --roundtrip"))
}

fn show_pair(cli: &Cli, out: &mut Out, label: &str, filling: &Filling) -> Result<(), Failure> {
    let pi = filling.permutation();
    if cli.json {
        writeln!(
            out,
            "{}",
            json!({"cmd": "bij", "params": label, "tiling": filling.tiling.to_string(), "value": pi.to_pattern_token()})
        )?;
    } else {
        writeln!(out, "{} <-> {}", filling.tiling, pi.to_pattern_token())?;
        if !cli.quiet {
            writeln!(out, "{}", filling.picture())?;
        }
    }
    Ok(())
}
