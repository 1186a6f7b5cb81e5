use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lensstring::{
    bialgebra_check, classify_pair, cobracket_k_family, cobracket_pi_y, coproduct_rho,
    correction_term, count_nonzero, count_nonzero_coproduct, dennis_dlog, search_smallest,
    transform_check, Convention, EqClass, Error, LensMap, LensPair, Notation, RhoClass,
    TorsionExpr,
};
use serde::Serialize;
use serde_json::json;

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "lensstring",
    version,
    about = "String coproduct and cobracket computations on lens spaces L(n;k)"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Render with α, β, superscripts and subscripts.
    #[arg(long, global = true, conflicts_with = "ascii")]
    unicode: bool,
    /// Render as a3*b1 and t^3t2^7 (default).
    #[arg(long, global = true)]
    ascii: bool,
    /// Exit 0 when a check fails and 3 when it passes.
    #[arg(long, global = true)]
    expect_fail: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    GeneratorSum,
    ComponentUnion,
    PiFamily,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::GeneratorSum => Convention::GeneratorSum,
            ConventionArg::ComponentUnion => Convention::ComponentUnion,
            ConventionArg::PiFamily => Convention::PiFamily,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Coproduct,
    CobracketPi,
    CobracketK,
}

#[derive(Clone, Copy, ValueEnum)]
enum Operation {
    Cobracket,
    Coproduct,
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
}

impl SpaceArgs {
    fn space(&self) -> Result<LensPair, Error> {
        LensPair::new(self.n, self.k)
    }
}

#[derive(Args)]
struct MapArgs {
    /// Order of the fundamental group; with no map flags, the shipped
    /// L(9;1) → L(9;4) map is used.
    #[arg(long, requires_all = ["k", "k2", "s", "expr"])]
    n: Option<u32>,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    k2: Option<i64>,
    /// Component multiplier: l ↦ s l.
    #[arg(long)]
    s: Option<i64>,
    /// Torsion unit, e.g. "(t^7-1)(t^1-1)/((t^1-1)(t^1-1))".
    #[arg(long)]
    expr: Option<String>,
    /// Restrict to one component.
    #[arg(long)]
    l: Option<i64>,
}

impl MapArgs {
    fn map(&self) -> Result<LensMap, Error> {
        match (self.n, self.k, self.k2, self.s, &self.expr) {
            (Some(n), Some(k), Some(k2), Some(s), Some(expr)) => LensMap::new(
                LensPair::new(n, k)?,
                LensPair::new(n, k2)?,
                s,
                expr.parse::<TorsionExpr>()?,
            ),
            _ => Ok(LensMap::nine_one_to_nine_four()),
        }
    }

    fn components(&self, map: &LensMap) -> Result<Vec<i64>, Error> {
        match self.l {
            Some(l) => Ok(vec![map.source().component(l)? as i64]),
            None => Ok((1..map.source().n() as i64).collect()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Coproduct of [ρ_{l,m}].
    Coproduct {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        l: i64,
        #[arg(long, default_value_t = 0)]
        m: i64,
    },
    /// One value per component l = 1..n-1.
    Tables {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = 0)]
        m: i64,
    },
    /// Number of nonzero components.
    Counts {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum, default_value_t = ConventionArg::GeneratorSum)]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value_t = Operation::Cobracket)]
        of: Operation,
    },
    /// Homotopy-equivalent, non-homeomorphic pairs whose coproduct counts
    /// agree and cobracket counts differ.
    Search {
        #[arg(long)]
        max_n: u32,
        #[arg(long, value_enum, default_value_t = ConventionArg::GeneratorSum)]
        convention: ConventionArg,
    },
    /// Homotopy and homeomorphism verdict for L(n;k), L(n;k2).
    Classify {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, allow_negative_numbers = true)]
        k2: i64,
    },
    /// Torsion unit, its inverse, d log and the correction terms of a map.
    Torsion {
        #[command(flatten)]
        map: MapArgs,
    },
    /// Compares both sides of the cobracket transformation formula.
    TransformCheck {
        #[command(flatten)]
        map: MapArgs,
    },
    /// Drinfeld compatibility for X = π_*y_x, Y = π_*y_y.
    BialgebraCheck {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        x: i64,
        #[arg(long)]
        y: i64,
        #[arg(long, default_value_t = 0)]
        mx: i64,
        #[arg(long, default_value_t = 0)]
        my: i64,
    },
}

enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

struct Outcome {
    output: String,
    check_passed: Option<bool>,
}

impl Outcome {
    fn plain(output: String) -> Self {
        Self {
            output,
            check_passed: None,
        }
    }

    fn check(output: String, passed: bool) -> Self {
        Self {
            output,
            check_passed: Some(passed),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialisable") + "\n"
}

struct Ctx {
    format: Format,
    notation: Notation,
}

fn table_title(which: Which, space: &LensPair) -> String {
    match which {
        Which::Coproduct => format!("String coproduct for {space}"),
        Which::CobracketPi => format!("String cobracket of pi_*y_l for {space}"),
        Which::CobracketK => format!("String cobracket of K for {space}"),
    }
}

fn run_tables(ctx: &Ctx, space: LensPair, which: Which, m: i64) -> Result<String, Failure> {
    let mut rows = Vec::new();
    for l in 1..space.n() {
        let (text, value) = match which {
            Which::Coproduct => {
                let b = coproduct_rho(&space, RhoClass::new(l, m))?;
                (b.render(ctx.notation), serde_json::to_value(&b).unwrap())
            }
            Which::CobracketPi => {
                let t = cobracket_pi_y(&space, l as i64, m)?.left;
                (t.render(ctx.notation), serde_json::to_value(&t).unwrap())
            }
            Which::CobracketK => {
                let t = cobracket_k_family(&space, l as i64)?.left;
                (t.render(ctx.notation), serde_json::to_value(&t).unwrap())
            }
        };
        rows.push((l, text, value));
    }
    let title = table_title(which, &space);
    Ok(match ctx.format {
        Format::Text => {
            let mut out = format!("{title}\n");
            for (l, text, _) in &rows {
                writeln!(out, "{l} | {text}").unwrap();
            }
            out
        }
        Format::Csv => {
            let mut out = "l,value\n".to_string();
            for (l, text, _) in &rows {
                writeln!(out, "{l},{text}").unwrap();
            }
            out
        }
        Format::Json => to_json(&json!({
            "title": title,
            "n": space.n(),
            "k": space.k(),
            "rows": rows.iter().map(|(l, text, value)| json!({"l": l, "text": text, "value": value})).collect::<Vec<_>>(),
        })),
    })
}

fn run_search(ctx: &Ctx, max_n: u32, convention: Convention) -> Result<String, Failure> {
    let report = search_smallest(max_n, convention)?;
    Ok(match ctx.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut out = String::from("n,k,k2");
            for c in Convention::ALL {
                write!(out, ",coproduct_{c}_k,coproduct_{c}_k2,cobracket_{c}_k,cobracket_{c}_k2,qualifies_{c}").unwrap();
            }
            out.push('\n');
            for r in &report.rows {
                write!(out, "{},{},{}", r.n, r.k, r.k2).unwrap();
                for c in Convention::ALL {
                    let (a, b) = r.coproduct_counts(c);
                    let (x, y) = r.cobracket_counts(c);
                    write!(out, ",{a},{b},{x},{y},{}", r.qualifies(c)).unwrap();
                }
                out.push('\n');
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for c in Convention::ALL {
                let marker = if c == convention { "*" } else { " " };
                match &report.smallest[&c] {
                    Some(r) => {
                        let (a, b) = r.coproduct_counts(c);
                        let (x, y) = r.cobracket_counts(c);
                        writeln!(
                            out,
                            "{marker} {c}: smallest n = {} with pair ({},{}); coproduct counts ({a},{b}), cobracket counts ({x},{y})",
                            r.n, r.k, r.k2
                        )
                        .unwrap();
                    }
                    None => {
                        writeln!(out, "{marker} {c}: no qualifying pair for n <= {max_n}").unwrap()
                    }
                }
            }
            writeln!(out, "{} candidate pairs examined", report.rows.len()).unwrap();
            out
        }
    })
}

fn run_torsion(ctx: &Ctx, args: &MapArgs) -> Result<String, Failure> {
    let f = args.map()?;
    let unit = f.torsion_unit()?;
    let inverse = unit.inverse()?;
    let dlog = dennis_dlog(&unit.unit)?;
    let mut corrections = Vec::new();
    for l in args.components(&f)? {
        corrections.push((l, correction_term(&f, l)?));
    }
    Ok(match ctx.format {
        Format::Json => to_json(&json!({
            "source": {"n": f.source().n(), "k": f.source().k()},
            "target": {"n": f.target().n(), "k": f.target().k()},
            "s": f.s(),
            "unit": unit,
            "inverse": inverse,
            "dlog": dlog,
            "corrections": corrections.iter().map(|(l, c)| json!({"l": l, "value": c})).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = "l,correction\n".to_string();
            for (l, c) in &corrections {
                writeln!(out, "{l},{}", c.render(ctx.notation)).unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "map {} -> {}, l -> {}l", f.source(), f.target(), f.s()).unwrap();
            writeln!(
                out,
                "torsion {} = {} (mod {})",
                unit.provenance,
                unit.unit.render(ctx.notation),
                unit.unit.modulus()
            )
            .unwrap();
            writeln!(out, "inverse {}", inverse.render(ctx.notation)).unwrap();
            writeln!(out, "dlog {}", dlog.render_dt(ctx.notation)).unwrap();
            for (l, c) in &corrections {
                writeln!(out, "correction l={l}: {}", c.render(ctx.notation)).unwrap();
            }
            out
        }
    })
}

fn run_transform(ctx: &Ctx, args: &MapArgs) -> Result<Outcome, Failure> {
    let f = args.map()?;
    let mut reports = Vec::new();
    for l in args.components(&f)? {
        reports.push(transform_check(&f, l)?);
    }
    let agreed = reports.iter().filter(|r| r.agrees).count();
    let passed = agreed == reports.len();
    let r = |t: &lensstring::EqTensor| t.render(ctx.notation);
    let output = match ctx.format {
        Format::Json => to_json(&reports),
        Format::Csv => {
            let mut out = "l,target_l,lhs,pushed,correction,rhs,agrees\n".to_string();
            for x in &reports {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    x.l,
                    x.target_l,
                    r(&x.lhs),
                    r(&x.pushed),
                    r(&x.correction),
                    r(&x.rhs),
                    x.agrees
                )
                .unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for x in &reports {
                let verdict = if x.agrees { "agrees" } else { "differs" };
                writeln!(
                    out,
                    "l={} -> {}: {verdict}; lhs {}, rhs {} = {} + {}",
                    x.l,
                    x.target_l,
                    r(&x.lhs),
                    r(&x.rhs),
                    r(&x.pushed),
                    r(&x.correction)
                )
                .unwrap();
            }
            writeln!(out, "{agreed}/{} components agree", reports.len()).unwrap();
            out
        }
    };
    Ok(Outcome::check(output, passed))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let ctx = Ctx {
        format: cli.format,
        notation: if cli.unicode {
            Notation::Unicode
        } else {
            Notation::Ascii
        },
    };
    match &cli.command {
        Command::Coproduct { space, l, m } => {
            let space = space.space()?;
            let l = space.component(*l)?;
            let b = coproduct_rho(&space, RhoClass::new(l, *m))?;
            Ok(Outcome::plain(match ctx.format {
                Format::Text => b.render(ctx.notation) + "\n",
                Format::Json => to_json(&b),
                Format::Csv => {
                    let mut out = "i,j,c\n".to_string();
                    for ((i, j), c) in b.terms() {
                        writeln!(out, "{i},{j},{c}").unwrap();
                    }
                    out
                }
            }))
        }
        Command::Tables { space, which, m } => Ok(Outcome::plain(run_tables(
            &ctx,
            space.space()?,
            *which,
            *m,
        )?)),
        Command::Counts {
            space,
            convention,
            of,
        } => {
            let space = space.space()?;
            let convention = Convention::from(*convention);
            let report = match of {
                Operation::Cobracket => count_nonzero(&space, convention),
                Operation::Coproduct => count_nonzero_coproduct(&space, convention),
            };
            Ok(Outcome::plain(match ctx.format {
                Format::Text => format!("{}\n", report.count()),
                Format::Json => to_json(&report),
                Format::Csv => format!(
                    "n,k,convention,count\n{},{},{},{}\n",
                    report.n,
                    report.k,
                    convention,
                    report.count()
                ),
            }))
        }
        Command::Search { max_n, convention } => {
            if *max_n < 2 {
                return Err(Failure::Usage("--max-n must be at least 2".into()));
            }
            Ok(Outcome::plain(run_search(
                &ctx,
                *max_n,
                (*convention).into(),
            )?))
        }
        Command::Classify { space, k2 } => {
            let v = classify_pair(space.n, space.k, *k2)?;
            Ok(Outcome::plain(match ctx.format {
                Format::Json => to_json(&v),
                Format::Csv => format!(
                    "n,k,k2,homotopy_equivalent,homeomorphic\n{},{},{},{},{}\n",
                    v.n, v.k, v.k2, v.homotopy_equivalent, v.homeomorphic
                ),
                Format::Text => {
                    let he = match v.square_witness {
                        Some(w) => format!(
                            "homotopy equivalent (k k2 = {}{}^2)",
                            if w.sign < 0 { "-" } else { "" },
                            w.q
                        ),
                        None => "not homotopy equivalent".into(),
                    };
                    let ho = if v.homeomorphic {
                        "homeomorphic"
                    } else {
                        "not homeomorphic"
                    };
                    format!("L({};{}), L({};{}): {he}, {ho}\n", v.n, v.k, v.n, v.k2)
                }
            }))
        }
        Command::Torsion { map } => Ok(Outcome::plain(run_torsion(&ctx, map)?)),
        Command::TransformCheck { map } => run_transform(&ctx, map),
        Command::BialgebraCheck {
            space,
            x,
            y,
            mx,
            my,
        } => {
            let space = space.space()?;
            let xc = EqClass::pi_y(&space, *x, *mx)?;
            let yc = EqClass::pi_y(&space, *y, *my)?;
            let v = bialgebra_check(&space, &xc, &yc)?;
            let verdict = if v.compatible {
                "compatible"
            } else {
                "incompatible"
            };
            let output = match ctx.format {
                Format::Json => to_json(&v),
                Format::Csv => format!(
                    "lhs,rhs,verdict\n{},{},{verdict}\n",
                    v.lhs.render(ctx.notation),
                    v.rhs.render(ctx.notation)
                ),
                Format::Text => format!(
                    "lhs {}\nrhs {}\n{verdict}\n",
                    v.lhs.render(ctx.notation),
                    v.rhs.render(ctx.notation)
                ),
            };
            Ok(Outcome::check(output, v.compatible))
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("LENSSTRING_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("LENSSTRING_THREADS must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            let failed = outcome.check_passed == Some(false);
            let code = match (failed, cli.expect_fail && outcome.check_passed.is_some()) {
                (true, false) => EXIT_CHECK_FAILED,
                (false, true) => EXIT_CHECK_FAILED,
                _ => 0,
            };
            ExitCode::from(code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}
