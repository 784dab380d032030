use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Result};
use bogocert::certifier::{
    certify, places_of_polynomial, scan_recipe, Assertion, Assertions, Certificate, CertifyRequest, NewformFile,
    NewformRecord, PlaceClass, Proposition, RegularityTable, ScanOptions, ScanOutcome, ScanReport, Verdict,
};
use bogocert::heights::{kummer_sequence, lambda_bound, log_mahler_measure, weil_height, AlgebraicNumber, Height};
use bogocert::herbrand::{
    fmt_rational, indexbound_tn, parse_rational, verify_bound1, LowerFiltration, TowerData,
};
use bogocert::matgroup::{find_check, group_checks, GroupContext, GroupFile};
use bogocert::padic::IntPolynomial;
use clap::{Args, Parser, Subcommand};

use crate::config::Config;
use crate::fetch::{read_newform_file, Fetcher};
use crate::store::CertStore;
use crate::{clock, fixtures};

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;

/// A bad argument, input file or label; exits 64.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Parser, Debug)]
#[command(name = "bogocert", version, about = "Certificates for property (B) of p-adic Galois representations")]
pub struct Cli {
    /// TOML configuration file (default: $BOGOCERT_CONFIG, then ./bogocert.toml if present).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Use bundled fixtures and the cache only.
    #[arg(long, global = true)]
    pub offline: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify one (newform, prime) pair.
    Certify(CertifyArgs),
    /// Run the supersingular / split / regular scan over fixture levels.
    Scan(ScanArgs),
    /// p-adic places of Q[x]/(f).
    Places(PlacesArgs),
    /// Finite-level matrix group checks.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Herbrand functions and jump bounds.
    Herbrand(HerbrandArgs),
    /// Weil heights.
    Height(HeightArgs),
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long)]
    pub label: String,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub precision: Option<u32>,
    /// MODHASB1, RHOP1, RHOP3, SERRE_B or DETFINITE.
    #[arg(long, default_value = "MODHASB1")]
    pub proposition: String,
    /// External hypothesis, NAME=true|false (repeatable), e.g. residually_reducible=true.
    #[arg(long = "assert", value_name = "NAME=BOOL")]
    pub assertions: Vec<String>,
    /// Certificate store (default from the configuration).
    #[arg(long)]
    pub store: Option<PathBuf>,
    #[arg(long)]
    pub no_store: bool,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub levels: Vec<u64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub primes: Vec<u64>,
    /// Level -> regular primes table (default: configuration, then the bundled table).
    #[arg(long)]
    pub regularity_table: Option<PathBuf>,
    /// Newform file to scan instead of the bundled fixtures.
    #[arg(long)]
    pub forms: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub max_field_degree: usize,
    #[arg(long)]
    pub precision: Option<u32>,
    /// Also list excluded pairs.
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub store: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PlacesArgs {
    #[arg(long)]
    pub poly: String,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 20)]
    pub precision: u32,
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum GroupCommand {
    /// Run the selected checks on a group file (all applicable checks when none is selected).
    Analyze(GroupArgs),
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long)]
    pub classify: bool,
    #[arg(long)]
    pub slgl: bool,
    #[arg(long)]
    pub nc: bool,
    #[arg(long)]
    pub ce: bool,
    #[arg(long)]
    pub riehm: bool,
    /// Element budget for enumeration (default from the configuration).
    #[arg(long)]
    pub budget: Option<usize>,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["tower", "cyclotomic"])))]
pub struct HerbrandArgs {
    /// Tower JSON file.
    #[arg(long)]
    pub tower: Option<PathBuf>,
    /// The cyclotomic extension Q_p(μ_{p^n}) given as "p,n".
    #[arg(long, value_name = "P,N")]
    pub cyclotomic: Option<String>,
    /// Sen constant for the cyclotomic tower.
    #[arg(long, default_value = "1")]
    pub c: String,
    #[arg(long)]
    pub phi: Option<String>,
    #[arg(long)]
    pub psi: Option<String>,
    #[arg(long, value_name = "J0")]
    pub bound1: Option<u64>,
    #[arg(long, value_name = "N")]
    pub indexbound: Option<u32>,
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
pub struct HeightArgs {
    #[command(subcommand)]
    pub command: Option<HeightCommand>,
    /// Minimal polynomial, e.g. "x^2-x-1".
    #[arg(long)]
    pub minpoly: Option<String>,
    #[arg(long, default_value_t = bogocert::heights::DEFAULT_TOLERANCE)]
    pub tol: f64,
    /// Print log M(f) instead of h.
    #[arg(long)]
    pub mahler: bool,
}

#[derive(Subcommand, Debug)]
pub enum HeightCommand {
    /// Heights of b^{1/p^n}.
    Kummer {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        /// Compare against log(p/2)/(2 p^λ).
        #[arg(long)]
        lambda: Option<u32>,
    },
    /// The lower bound log(p/2)/(2 p^λ).
    Bound {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        lambda: u32,
    },
}

fn load_config(cli: &Cli) -> Result<Config> {
    let env: Vec<(String, String)> = std::env::vars().collect();
    let path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os("BOGOCERT_CONFIG").map(PathBuf::from))
        .or_else(|| Some(PathBuf::from("bogocert.toml")).filter(|p| p.exists()));
    let mut cfg = Config::load(path.as_deref(), env).map_err(|e| usage(e.to_string()))?;
    cfg.offline |= cli.offline;
    Ok(cfg)
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_poly(s: &str) -> Result<IntPolynomial> {
    s.parse().map_err(|e| usage(format!("bad polynomial {s:?}: {e}")))
}

fn parse_assertions(items: &[String]) -> Result<Assertions> {
    let mut a = Assertions::default();
    for item in items {
        let (name, value) = item.split_once('=').ok_or_else(|| usage(format!("expected NAME=BOOL, got {item:?}")))?;
        let holds = match value {
            "true" => true,
            "false" => false,
            _ => return Err(usage(format!("expected true or false in {item:?}"))),
        };
        let x = Some(Assertion::new(holds, "command line"));
        match name {
            "absolutely_irreducible" => a.absolutely_irreducible = x,
            "residually_reducible" => a.residually_reducible = x,
            "not_induced_nor_finite_twist" => a.not_induced_nor_finite_twist = x,
            "strongly_absolutely_irreducible" => a.strongly_absolutely_irreducible = x,
            "inertia_full" => a.inertia_full = x,
            _ => return Err(usage(format!("unknown hypothesis {name:?}"))),
        }
    }
    Ok(a)
}

fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::BCertified => 0,
        Verdict::Inconclusive => 2,
        Verdict::Inapplicable => 3,
    }
}

fn store_all(path: &Path, certs: &[&Certificate], err: &mut dyn Write) -> Result<()> {
    let mut store = CertStore::open(path)?;
    let mut written = 0;
    for c in certs {
        if store.append(c)? {
            written += 1;
        }
    }
    writeln!(err, "stored {written} new certificate(s) in {}", path.display())?;
    Ok(())
}

fn cmd_certify(cfg: &Config, a: &CertifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let prop = Proposition::from_code(&a.proposition).ok_or_else(|| usage(format!("unknown proposition {:?}", a.proposition)))?;
    let fetcher = Fetcher::new(cfg.clone(), fixtures::newforms()?);
    let (form, source) = fetcher.fetch_newform(&a.label).map_err(|e| match e {
        crate::fetch::FetchError::NotFound(_) => usage(e.to_string()),
        e => anyhow!(e),
    })?;
    let precision = a.precision.unwrap_or(cfg.default_precision);
    if precision == 0 {
        return Err(usage("precision must be positive"));
    }
    let mut req = CertifyRequest::new(&form, a.p, precision);
    req.assertions = parse_assertions(&a.assertions)?;
    let mut cert = certify(&req, prop);
    cert.timestamp = Some(clock::timestamp());
    writeln!(out, "{}", serde_json::to_string_pretty(&cert)?)?;
    writeln!(err, "{} {} at p = {} ({source:?})", cert.verdict.code(), cert.label, cert.p)?;
    if !a.no_store {
        let path = a.store.clone().unwrap_or_else(|| cfg.store_path());
        store_all(&path, &[&cert], err)?;
    }
    Ok(exit_code(cert.verdict))
}

fn regularity(cfg: &Config, explicit: Option<&Path>) -> Result<RegularityTable> {
    match explicit.or(cfg.regularity_table_path.as_deref()) {
        Some(p) => RegularityTable::from_json(&read_file(p)?).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => Ok(fixtures::regularity_table()?),
    }
}

/// Scans forms in parallel chunks; entries come back in input order.
pub fn parallel_scan(forms: &[NewformRecord], primes: &[u64], table: &RegularityTable, opts: &ScanOptions) -> ScanReport {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(forms.len().max(1));
    let chunk = forms.len().div_ceil(workers).max(1);
    let parts: Vec<ScanReport> = std::thread::scope(|s| {
        let handles: Vec<_> =
            forms.chunks(chunk).map(|c| s.spawn(move || scan_recipe(c, primes, table, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    });
    ScanReport { entries: parts.into_iter().flat_map(|r| r.entries).collect() }
}

fn cmd_scan(cfg: &Config, a: &ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let file: NewformFile = match &a.forms {
        Some(p) => read_newform_file(p).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => fixtures::newforms()?,
    };
    let table = regularity(cfg, a.regularity_table.as_deref())?;
    let forms: Vec<NewformRecord> = file.records.into_iter().filter(|f| a.levels.contains(&f.level)).collect();
    let opts = ScanOptions { max_field_degree: a.max_field_degree, precision: a.precision.unwrap_or(cfg.default_precision) };
    let report = parallel_scan(&forms, &a.primes, &table, &opts);
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    } else {
        for e in &report.entries {
            match &e.outcome {
                ScanOutcome::Certified { certificate } => {
                    let v = certificate.place.as_ref().and_then(|pl| pl.ap_valuation).map_or("?".into(), |v| v.to_string());
                    writeln!(out, "{:<10} p={:<3} {} v(a_p)={v}", e.label, e.p, certificate.verdict.code())?;
                }
                ScanOutcome::Excluded { reason } if a.all => writeln!(out, "{:<10} p={:<3} excluded: {reason}", e.label, e.p)?,
                ScanOutcome::Skipped { notice } => writeln!(out, "{:<10} p={:<3} skipped: {notice}", e.label, e.p)?,
                ScanOutcome::Excluded { .. } => {}
            }
        }
        writeln!(out, "{} certificate(s) from {} pair(s)", report.certificates().count(), report.entries.len())?;
    }
    if let Some(path) = &a.store {
        let certs: Vec<&Certificate> = report.certificates().collect();
        store_all(path, &certs, err)?;
    }
    Ok(0)
}

fn cmd_places(a: &PlacesArgs, out: &mut dyn Write) -> Result<i32> {
    let f = parse_poly(&a.poly)?;
    bogocert::padic::check_prime(a.p).map_err(|e| usage(e.to_string()))?;
    let places = places_of_polynomial(&f, a.p, a.precision)?;
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&places)?)?;
        return Ok(0);
    }
    writeln!(out, "places of Q[x]/({f}) above {}:", a.p)?;
    for pl in &places {
        let mut line = format!("  e={} f={}", pl.ramification_index, pl.residue_degree);
        if let Some(r) = pl.root_mod_p {
            line += &format!(" root={r} mod {}", a.p);
        }
        if let Some(v) = pl.ap_valuation {
            line += &format!(" v(x)={v}");
        }
        let class = match pl.classification {
            PlaceClass::Ordinary => "unit",
            PlaceClass::Supersingular => "positive valuation",
            PlaceClass::ApZero => "zero",
            PlaceClass::NotDegreeOne => "not degree one",
            PlaceClass::Unresolved => "unresolved",
        };
        writeln!(out, "{line} [{class}]")?;
    }
    Ok(0)
}

fn cmd_group(cfg: &Config, a: &GroupArgs, out: &mut dyn Write) -> Result<i32> {
    let file = GroupFile::from_json(&read_file(&a.file)?).map_err(|e| usage(format!("{}: {e}", a.file.display())))?;
    let group = file.group()?.enumerate(a.budget.unwrap_or(cfg.element_budget))?;
    let local = file.local_generators()?;
    let sub = file.subgroup_generators()?;
    let ctx = GroupContext {
        group: &group,
        local_generators: local.as_deref(),
        subgroup_generators: sub.as_deref(),
        nc_depth: file.nc_depth.unwrap_or(1),
    };
    let selected: Vec<&str> = [("classify", a.classify), ("slgl", a.slgl), ("nc", a.nc), ("ce", a.ce), ("riehm", a.riehm)]
        .into_iter()
        .filter_map(|(n, on)| on.then_some(n))
        .collect();
    let checks = if selected.is_empty() {
        // everything whose inputs are present
        group_checks()
            .into_iter()
            .filter(|c| match c.name() {
                "nc" => ctx.local_generators.is_some(),
                "riehm" => ctx.subgroup_generators.is_some(),
                "ce" => group.character().is_some(),
                _ => true,
            })
            .collect()
    } else {
        selected.iter().map(|n| find_check(n).expect("registered")).collect::<Vec<_>>()
    };
    writeln!(out, "group of order {} mod {}^{}", group.order()?, file.p, file.n)?;
    for c in checks {
        let r = c.run(&ctx)?;
        writeln!(out, "{}: {}", r.check, r.verdict)?;
        writeln!(out, "  {}", serde_json::to_string(&r.detail)?)?;
    }
    Ok(0)
}

fn rational_arg(s: &str) -> Result<num_rational::BigRational> {
    parse_rational(s).map_err(|e| usage(e.to_string()))
}

fn herbrand_functions(f: &LowerFiltration, a: &HerbrandArgs, out: &mut dyn Write) -> Result<bool> {
    let mut printed = false;
    if let Some(u) = &a.phi {
        writeln!(out, "{}", fmt_rational(&f.phi(&rational_arg(u)?)?))?;
        printed = true;
    }
    if let Some(v) = &a.psi {
        writeln!(out, "{}", fmt_rational(&f.psi(&rational_arg(v)?)?))?;
        printed = true;
    }
    Ok(printed)
}

fn print_bound1(t: &TowerData, j0: u64, out: &mut dyn Write) -> Result<()> {
    let r = verify_bound1(t, j0)?;
    writeln!(out, "C = {} (j0 = {}, k0 = {})", fmt_rational(&r.bound.c_bound), r.bound.j0, r.bound.k0)?;
    for l in &r.levels {
        writeln!(out, "  n={} s={} r={} e_n={} ratio={} {:?}", l.n, l.jumps, l.jump, l.e_n, fmt_rational(&l.ratio), l.status)?;
    }
    let margin = r.margin.as_ref().map_or("none".into(), fmt_rational);
    writeln!(out, "verdict: {:?} (margin {margin})", r.verdict)?;
    Ok(())
}

fn cmd_herbrand(a: &HerbrandArgs, out: &mut dyn Write) -> Result<i32> {
    let tower = match (&a.tower, &a.cyclotomic) {
        (Some(path), _) => TowerData::from_json(&read_file(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        (None, Some(arg)) => {
            let (p, n) = arg
                .split_once(',')
                .and_then(|(p, n)| Some((p.trim().parse::<u64>().ok()?, n.trim().parse::<u32>().ok()?)))
                .ok_or_else(|| usage(format!("expected --cyclotomic P,N, got {arg:?}")))?;
            bogocert::padic::check_prime(p).map_err(|e| usage(e.to_string()))?;
            let j0 = a.bound1.unwrap_or(0) as u32;
            // levels with more than j0 jumps
            TowerData::cyclotomic(p, (j0 + 1).min(n)..=n, rational_arg(&a.c)?)?
        }
        (None, None) => unreachable!("clap enforces the source group"),
    };
    let top = tower.levels.last().ok_or_else(|| usage("tower has no levels"))?;
    let mut printed = herbrand_functions(&top.filtration, a, out)?;
    if let Some(j0) = a.bound1 {
        print_bound1(&tower, j0, out)?;
        printed = true;
    }
    if let Some(n) = a.indexbound {
        let b = indexbound_tn(&tower, n)?;
        let ratio = b.ratio.as_ref().map_or("undefined".into(), fmt_rational);
        writeln!(out, "n={} j0={} t_n={} e_n={} e_n/t_n={ratio}", b.n, b.j0, b.t_n, b.e_n)?;
        printed = true;
    }
    if !printed {
        let f = &top.filtration;
        let lower: Vec<String> = f.lower_jumps().iter().map(|j| j.to_string()).collect();
        let upper: Vec<String> = f.upper_jumps().iter().map(fmt_rational).collect();
        writeln!(out, "order {}", f.order())?;
        writeln!(out, "lower jumps: {}", lower.join(" "))?;
        writeln!(out, "upper jumps: {}", upper.join(" "))?;
    }
    Ok(0)
}

fn print_height(h: &Height, out: &mut dyn Write) -> Result<()> {
    match h {
        Height::Zero => writeln!(out, "0\nexact (Kronecker)")?,
        Height::Interval { lo, hi } => writeln!(out, "{:.12}\ninterval [{lo:.15}, {hi:.15}]", h.midpoint())?,
    }
    Ok(())
}

fn cmd_height(a: &HeightArgs, out: &mut dyn Write) -> Result<i32> {
    match &a.command {
        Some(HeightCommand::Kummer { b, p, n, lambda }) => {
            let terms = kummer_sequence(*b, *p, *n).map_err(|e| usage(e.to_string()))?;
            let bound = lambda.map(|l| lambda_bound(*p, l)).transpose()?;
            for t in &terms {
                let coeff = fmt_rational(&t.coefficient);
                let mut line = format!("n={} h=log({b})*{coeff} = {:.12}", t.n, t.value);
                if let Some(lb) = &bound {
                    line += if t.value < lb.value { " below bound" } else { " above bound" };
                }
                writeln!(out, "{line}")?;
            }
            if let Some(lb) = bound {
                writeln!(out, "bound {lb}")?;
            }
        }
        Some(HeightCommand::Bound { p, lambda }) => {
            writeln!(out, "{}", lambda_bound(*p, *lambda).map_err(|e| usage(e.to_string()))?)?;
        }
        None => {
            let s = a.minpoly.as_deref().ok_or_else(|| usage("height needs --minpoly or a subcommand"))?;
            let alpha = AlgebraicNumber::new(&parse_poly(s)?).map_err(|e| usage(e.to_string()))?;
            let h = if a.mahler { log_mahler_measure(&alpha, a.tol)? } else { weil_height(&alpha, a.tol)? };
            print_height(&h, out)?;
        }
    }
    Ok(0)
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let cfg = load_config(cli)?;
    match &cli.command {
        Command::Certify(a) => cmd_certify(&cfg, a, out, err),
        Command::Scan(a) => cmd_scan(&cfg, a, out, err),
        Command::Places(a) => cmd_places(a, out),
        Command::Group { command: GroupCommand::Analyze(a) } => cmd_group(&cfg, a, out),
        Command::Herbrand(a) => cmd_herbrand(a, out),
        Command::Height(a) => cmd_height(a, out),
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) if e.is::<UsageError>() => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        // reader went away, e.g. `| head`
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => 0,
        Err(e) => {
            let _ = writeln!(err, "internal error: {e:#}");
            EXIT_INTERNAL
        }
    }
}
