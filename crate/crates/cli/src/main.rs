use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use poplab::banded::{self, BandedError, BandedSpec};
use poplab::enumerator::{self, AvoiderQuery, EnumOptions};
use poplab::gfseries::{self, GfError, MultiPoly, XSeries};
use poplab::patterns::{parse_pop_list, Pop};
use poplab::perm::PermError;
use poplab::verify::{self, ClaimReport, VerifyOptions, CLAIMS};

#[derive(Parser)]
#[command(name = "poplab", version, about = "Exact enumeration of permutations avoiding flat POPs")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Worker threads for enumeration (1 = sequential reference path)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Raise the enumeration cap; needs --allow-large-n
    #[arg(long, global = true, requires = "allow_large_n")]
    max_n: Option<usize>,
    /// Acknowledge that enumeration beyond the default cap may be slow
    #[arg(long, global = true)]
    allow_large_n: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct Class {
    /// Comma-separated POPs, e.g. `Pj:4,Pt:4` or `classical:2413`
    #[arg(long)]
    pops: Option<String>,
    /// Restrict to separable permutations
    #[arg(long)]
    separable: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count the permutations of length n in a class or a window
    Count {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        class: Class,
        /// Window (a,b): -a < p_i - i < b
        #[arg(long, value_parser = pair, conflicts_with_all = ["pops", "separable"])]
        banded: Option<(usize, usize)>,
    },
    /// Joint distribution of (asc, des, lmax, rmax, lmin, rmin)
    Distribution {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        class: Class,
    },
    /// Counts for n = 0 .. terms-1
    Sequence {
        #[command(flatten)]
        class: Class,
        #[arg(long, value_parser = pair, conflicts_with_all = ["pops", "separable"])]
        banded: Option<(usize, usize)>,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Multivariate series through x^order
    Series {
        /// Solve the functional-equation system for (j,l)
        #[arg(long, value_parser = pair, group = "source")]
        system: Option<(usize, usize)>,
        /// Expand the transcribed rational g.f. for (j,l)
        #[arg(long, value_parser = pair, group = "source")]
        explicit: Option<(usize, usize)>,
        #[command(flatten)]
        class: Class,
        #[arg(long, default_value_t = gfseries::DEFAULT_ORDER)]
        order: usize,
    },
    /// Minimal linear recurrence, printed as its denominator 1 - c_1 x - ...
    Recurrence {
        #[arg(long, value_parser = pair, group = "source")]
        banded: Option<(usize, usize)>,
        #[arg(long, value_parser = pair, group = "source")]
        system: Option<(usize, usize)>,
        /// Explicit comma-separated integer sequence
        #[arg(long, group = "source", allow_hyphen_values = true)]
        seq: Option<String>,
        #[command(flatten)]
        class: Class,
        /// Number of sequence terms (n = 0 .. terms-1)
        #[arg(long, default_value_t = 16)]
        terms: usize,
    },
    /// Check registered claims against their oracles
    Verify {
        #[arg(long, conflicts_with = "claim")]
        all: bool,
        /// Claim identifier (repeatable)
        #[arg(long)]
        claim: Vec<String>,
        /// Largest length enumerated by brute-force oracles
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        /// List claim identifiers and exit
        #[arg(long)]
        list: bool,
    },
    /// k-Fibonacci number F^(k)_n
    Kfib {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
}

fn pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad integer `{t}`"));
    Ok((parse(a)?, parse(b)?))
}

enum Failure {
    Cap(String),
    Usage(String),
    Math(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Cap(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Math(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Cap(m) | Failure::Usage(m) | Failure::Math(m) => m,
        }
    }
}

impl From<PermError> for Failure {
    fn from(e: PermError) -> Self {
        match e {
            PermError::CapExceeded { .. } => Failure::Cap(format!(
                "{e}; pass --max-n with --allow-large-n or set POPLAB_MAX_N to raise it"
            )),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<GfError> for Failure {
    fn from(e: GfError) -> Self {
        match e {
            GfError::NonInvertible => Failure::Math(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<BandedError> for Failure {
    fn from(e: BandedError) -> Self {
        match e {
            BandedError::NoRecurrence { .. } => Failure::Math(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Ctx {
    format: Format,
    opts: EnumOptions,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((out, f)) => {
            print!("{out}");
            eprintln!("poplab: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn cap_override(cli: &Cli) -> Result<Option<usize>, Failure> {
    if let Some(n) = cli.max_n {
        return Ok(Some(n));
    }
    match std::env::var("POPLAB_MAX_N") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("POPLAB_MAX_N must be an integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<String, (String, Failure)> {
    let cap = cap_override(&cli).map_err(|f| (String::new(), f))?;
    if cli.jobs == Some(0) {
        return Err((String::new(), Failure::Usage("--jobs must be positive".into())));
    }
    let ctx = Ctx { format: cli.format, opts: EnumOptions { cap, jobs: cli.jobs } };
    match cli.cmd {
        Cmd::Verify { all, claim, n_max, list } => cmd_verify(&ctx, all, &claim, n_max, list),
        cmd => dispatch(&ctx, cmd).map_err(|f| (String::new(), f)),
    }
}

fn dispatch(ctx: &Ctx, cmd: Cmd) -> Result<String, Failure> {
    match cmd {
        Cmd::Count { n, class, banded } => cmd_count(ctx, n, &class, banded),
        Cmd::Distribution { n, class } => cmd_distribution(ctx, n, &class),
        Cmd::Sequence { class, banded, terms } => cmd_sequence(ctx, &class, banded, terms),
        Cmd::Series { system, explicit, class, order } => {
            cmd_series(ctx, system, explicit, &class, order)
        }
        Cmd::Recurrence { banded, system, seq, class, terms } => {
            cmd_recurrence(ctx, banded, system, seq.as_deref(), &class, terms)
        }
        Cmd::Kfib { k, n } => cmd_kfib(ctx, k, n),
        Cmd::Verify { .. } => unreachable!("handled by run"),
    }
}

fn pops_of(class: &Class) -> Result<Vec<Pop>, Failure> {
    match class.pops.as_deref() {
        None => Ok(Vec::new()),
        Some(s) if s.trim().is_empty() => Ok(Vec::new()),
        Some(s) => parse_pop_list(s).map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn spec_of((a, b): (usize, usize)) -> Result<BandedSpec, Failure> {
    Ok(BandedSpec::new(a, b)?)
}

fn cmd_count(
    ctx: &Ctx,
    n: usize,
    class: &Class,
    banded: Option<(usize, usize)>,
) -> Result<String, Failure> {
    let count = match banded {
        Some(ab) => banded::banded_count(n, spec_of(ab)?),
        None => {
            let q = AvoiderQuery::new(n, pops_of(class)?, class.separable);
            enumerator::count_avoiders(&q, &ctx.opts)?
        }
    };
    Ok(match ctx.format {
        Format::Plain => format!("{count}\n"),
        Format::Json => format!("{}\n", serde_json::json!({ "n": n, "count": count.to_string() })),
        Format::Csv => format!("n,count\n{n},{count}\n"),
    })
}

fn poly_csv(out: &mut String, prefix: &str, p: &MultiPoly) {
    for (m, c) in p.terms() {
        let e = m.0;
        let _ = writeln!(out, "{prefix}{},{},{},{},{},{},{c}", e[0], e[1], e[2], e[3], e[4], e[5]);
    }
}

fn cmd_distribution(ctx: &Ctx, n: usize, class: &Class) -> Result<String, Failure> {
    let q = AvoiderQuery::new(n, pops_of(class)?, class.separable);
    let d = enumerator::distribution(&q, &ctx.opts)?;
    Ok(match ctx.format {
        Format::Plain => format!("{d}\n"),
        Format::Json => format!("{}\n", serde_json::to_string(&d).expect("serializable")),
        Format::Csv => {
            let mut out = String::from("p,q,u,v,s,t,coefficient\n");
            poly_csv(&mut out, "", &d);
            out
        }
    })
}

fn counts(
    ctx: &Ctx,
    class: &Class,
    banded: Option<(usize, usize)>,
    terms: usize,
) -> Result<Vec<BigUint>, Failure> {
    if let Some(ab) = banded {
        let spec = spec_of(ab)?;
        return Ok((0..terms).map(|n| banded::banded_count(n, spec)).collect());
    }
    let pops = pops_of(class)?;
    (0..terms)
        .map(|n| {
            let q = AvoiderQuery::new(n, pops.clone(), class.separable);
            enumerator::count_avoiders(&q, &ctx.opts).map_err(Failure::from)
        })
        .collect()
}

fn cmd_sequence(
    ctx: &Ctx,
    class: &Class,
    banded: Option<(usize, usize)>,
    terms: usize,
) -> Result<String, Failure> {
    let seq = counts(ctx, class, banded, terms)?;
    Ok(format_sequence(ctx.format, &seq))
}

fn format_sequence(format: Format, seq: &[BigUint]) -> String {
    match format {
        Format::Plain => {
            let s: Vec<String> = seq.iter().map(|v| v.to_string()).collect();
            format!("{}\n", s.join(","))
        }
        Format::Json => format!("{}\n", banded::sequence_to_json(seq)),
        Format::Csv => banded::sequence_to_csv(seq),
    }
}

fn cmd_series(
    ctx: &Ctx,
    system: Option<(usize, usize)>,
    explicit: Option<(usize, usize)>,
    class: &Class,
    order: usize,
) -> Result<String, Failure> {
    let series: XSeries = match (system, explicit) {
        (Some((j, l)), _) => gfseries::solve_system(j, l, order)?,
        (_, Some((j, l))) => gfseries::theorem_gf(j, l)?.expand(order)?,
        _ => enumerator::series_bruteforce(&pops_of(class)?, class.separable, order, &ctx.opts)?,
    };
    Ok(match ctx.format {
        Format::Plain => format!("{series}\n"),
        Format::Json => format!("{}\n", serde_json::to_string(&series).expect("serializable")),
        Format::Csv => {
            let mut out = String::from("n,p,q,u,v,s,t,coefficient\n");
            for (n, c) in series.coeffs().iter().enumerate() {
                poly_csv(&mut out, &format!("{n},"), c);
            }
            out
        }
    })
}

fn cmd_recurrence(
    ctx: &Ctx,
    banded: Option<(usize, usize)>,
    system: Option<(usize, usize)>,
    seq: Option<&str>,
    class: &Class,
    terms: usize,
) -> Result<String, Failure> {
    let values: Vec<BigInt> = if let Some(text) = seq {
        text.split(',')
            .map(|t| t.trim().parse::<BigInt>())
            .collect::<Result<_, _>>()
            .map_err(|_| Failure::Usage(format!("bad sequence `{text}`")))?
    } else if let Some((j, l)) = system {
        if terms == 0 {
            return Err(Failure::Usage("--terms must be positive".into()));
        }
        gfseries::solve_system(j, l, terms - 1)?.eval_ones()
    } else {
        counts(ctx, class, banded, terms)?.into_iter().map(BigInt::from).collect()
    };
    let rec = banded::find_recurrence(&values)?;
    let den = rec.to_string();
    Ok(match ctx.format {
        Format::Plain => format!("{den}\n"),
        Format::Json => {
            let coeffs: Vec<String> = rec.coeffs().iter().map(|c| c.to_string()).collect();
            let v = serde_json::json!({
                "order": rec.order(),
                "coefficients": coeffs,
                "denominator": den,
            });
            format!("{v}\n")
        }
        Format::Csv => {
            let mut out = String::from("i,c\n");
            for (i, c) in rec.coeffs().iter().enumerate() {
                let _ = writeln!(out, "{},{c}", i + 1);
            }
            out
        }
    })
}

fn cmd_kfib(ctx: &Ctx, k: i64, n: i64) -> Result<String, Failure> {
    let v = banded::kfib(k, n)?;
    Ok(match ctx.format {
        Format::Plain => format!("{v}\n"),
        Format::Json => format!("{}\n", serde_json::json!({ "k": k, "n": n, "value": v.to_string() })),
        Format::Csv => format!("k,n,value\n{k},{n},{v}\n"),
    })
}

fn cmd_verify(
    ctx: &Ctx,
    all: bool,
    claims: &[String],
    n_max: usize,
    list: bool,
) -> Result<String, (String, Failure)> {
    if list {
        let mut out = String::new();
        for c in CLAIMS {
            let _ = writeln!(out, "{:<24} {}", c.id, c.title);
        }
        return Ok(out);
    }
    let opts = VerifyOptions { n_max, enumeration: ctx.opts };
    let reports: Vec<ClaimReport> = if all || claims.is_empty() {
        verify::verify_all(&opts)
    } else {
        let mut out = Vec::new();
        for name in claims {
            let r = verify::verify_theorem(name, &opts).ok_or_else(|| {
                (String::new(), Failure::Usage(format!("unknown claim `{name}` (see --list)")))
            })?;
            out.push(r);
        }
        out
    };
    let passed = reports.iter().filter(|r| r.pass).count();
    let text = match ctx.format {
        Format::Plain => {
            let mut out: String = reports.iter().map(|r| r.to_string()).collect();
            let _ = writeln!(out, "{passed}/{} claims pass", reports.len());
            out
        }
        Format::Json => format!("{}\n", serde_json::to_string(&reports).expect("serializable")),
        Format::Csv => {
            let mut out = String::from("claim,check,pass\n");
            for r in &reports {
                for c in &r.checks {
                    let _ = writeln!(out, "{},\"{}\",{}", r.id, c.label, c.pass);
                }
            }
            out
        }
    };
    if passed == reports.len() {
        Ok(text)
    } else {
        let failed: Vec<&str> =
            reports.iter().filter(|r| !r.pass).map(|r| r.id.as_str()).collect();
        Err((text, Failure::Math(format!("failing claims: {}", failed.join(", ")))))
    }
}
