mod emit;
mod figures;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use alphacf::algebra::decimal;
use alphacf::dynamics::{alpha0_suite, alpha1_suite, AlphaParam};
use alphacf::relations::{identity_suite, Grid};
use alphacf::report::Report;
use alphacf::sync::{
    digit_certificates, endpoints, enumerate_intervals, interior_samples, measure_report,
    partition_suite, verify_sync, Regime, SyncInterval, SyncWitness,
};
use alphacf::words::{derived, enumerate_tree, frak_f, frak_f_closed, word_suite};
use alphacf::{FieldElement, Group, RealAlgebraic, Tower, TreeWord};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use emit::{Format, Sink};
use parse::Alpha;

#[derive(Parser)]
#[command(
    name = "alphacf",
    version,
    about = "Exact alpha-continued fractions for triangle groups"
)]
struct Cli {
    /// Order of the elliptic generator B.
    #[arg(long, global = true, default_value_t = 3)]
    n: u64,
    /// Order of C = AB.
    #[arg(long, global = true, default_value_t = 3)]
    m: u64,
    /// Working precision for decimal renderings (at least 64).
    #[arg(long, global = true, default_value_t = 64)]
    precision_bits: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List tree words with their derived quantities.
    Tree {
        #[arg(long, default_value_t = 7)]
        len_max: usize,
        #[arg(long, default_value_t = 3)]
        q_cap: i64,
    },
    /// Synchronization interval table.
    Intervals {
        #[arg(long, default_value = "small")]
        regime: RegimeArg,
        #[arg(long, default_value_t = 3)]
        k_max: i64,
        #[arg(long, default_value_t = 5)]
        len_max: usize,
        #[arg(long, default_value_t = 2)]
        q_cap: i64,
        /// Decimal digits (defaults to the precision).
        #[arg(long)]
        digits: Option<usize>,
    },
    /// Orbit scan for one parameter against the interval of (k, v).
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        /// Word letters, e.g. 313 (comma separated if a letter exceeds 9).
        #[arg(long, default_value = "1")]
        v: String,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 500)]
        cap: usize,
    },
    /// Orbit of an endpoint or of a point.
    Orbit {
        /// p/q, decimal, or gamma | epsilon | delta | zeta:k:v | eta:k:v | omega:k:v.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// l0, r0, or a rational point.
        #[arg(long, default_value = "r0", allow_hyphen_values = true)]
        start: String,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
    /// Coverage of a regime by enumerated intervals.
    Measure {
        #[arg(long, default_value = "small")]
        regime: RegimeArg,
        /// Semicolon separated k,len,q triples.
        #[arg(long, default_value = "5,3,2;10,5,4;20,7,6")]
        caps: String,
    },
    /// Matrix identity suite.
    Identities {
        #[arg(long, default_value_t = 8)]
        n_max: u64,
        #[arg(long, default_value_t = 5)]
        k_max: i64,
        #[arg(long, default_value_t = 3)]
        vec_len: usize,
        #[arg(long, default_value_t = 4)]
        entry_max: u32,
    },
    /// All verification suites at moderate caps for the chosen group.
    Suite,
    /// Data behind the endpoint-image and cylinder plots.
    FigureData {
        #[arg(long, value_enum)]
        figure: Figure,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Window on x = alpha t (endpoint curves only).
        #[arg(long, allow_hyphen_values = true)]
        x_min: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        x_max: Option<String>,
        /// Largest |k| listed (cylinders only).
        #[arg(long, default_value_t = 6)]
        k_bound: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Small,
    Mid,
    Large,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Regime {
        match r {
            RegimeArg::Small => Regime::Small,
            RegimeArg::Mid => Regime::Mid,
            RegimeArg::Large => Regime::Large,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Figure {
    EndpointCurves,
    Cylinders,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<alphacf::Error> for Failure {
    fn from(e: alphacf::Error) -> Self {
        Failure::Verification(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Verification(format!("output: {e}"))
    }
}

/// Validated settings shared by all subcommands.
struct Config {
    group: Group,
    digits: usize,
    sink: Sink,
}

impl Config {
    fn from_cli(cli: &Cli) -> Result<Config, Failure> {
        if cli.precision_bits < 64 {
            return Err(Failure::Usage(
                "--precision-bits must be at least 64".into(),
            ));
        }
        let group = Group::new(cli.m, cli.n).map_err(|e| Failure::Usage(e.to_string()))?;
        let digits = (cli.precision_bits as f64 * std::f64::consts::LOG10_2).floor() as usize;
        Ok(Config {
            group,
            digits,
            sink: Sink {
                format: cli.format,
                out: cli.out.clone(),
            },
        })
    }

    fn require_m3(&self) -> Result<(), Failure> {
        if self.group.m != 3 {
            return Err(Failure::Usage(
                "synchronization intervals are implemented for m = 3".into(),
            ));
        }
        Ok(())
    }
}

fn usage<T>(r: Result<T, String>) -> Result<T, Failure> {
    r.map_err(Failure::Usage)
}

fn positive(name: &str, x: i64) -> Result<(), Failure> {
    if x < 1 {
        return Err(Failure::Usage(format!("{name} must be positive")));
    }
    Ok(())
}

#[derive(Serialize)]
struct TreeRow {
    v: String,
    path: String,
    parent: String,
    prime: String,
    double_prime: String,
    derived: String,
    branched_prefix: String,
    closed_form_agrees: String,
    palindrome: bool,
}

fn tree(cfg: &Config, len_max: usize, q_cap: i64) -> Result<(), Failure> {
    positive("--len-max", len_max as i64)?;
    positive("--q-cap", q_cap)?;
    let rows: Vec<TreeRow> = enumerate_tree(len_max, q_cap)
        .iter()
        .map(|v| {
            let f = frak_f(&v.word());
            TreeRow {
                v: v.to_string(),
                path: join(v.path()),
                parent: v.parent().map(|p| p.to_string()).unwrap_or_default(),
                prime: v.prime().to_string(),
                double_prime: v.double_prime().map(|w| w.to_string()).unwrap_or_default(),
                derived: derived(v).map(|w| w.to_string()).unwrap_or_default(),
                closed_form_agrees: frak_f_closed(v)
                    .map(|c| (c == f).to_string())
                    .unwrap_or_default(),
                branched_prefix: f.to_string(),
                palindrome: v.word().is_palindrome(),
            }
        })
        .collect();
    Ok(cfg.sink.emit(&rows, &rows)?)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Serialize)]
struct IntervalCsv {
    regime: Regime,
    k: i64,
    v: String,
    path: String,
    zeta_exact: String,
    zeta_dec: String,
    eta_exact: String,
    eta_dec: String,
    omega_exact: String,
    omega_dec: String,
    i: usize,
    j: usize,
    length_dec: String,
}

fn interval_csv(iv: &SyncInterval, digits: usize) -> IntervalCsv {
    let r = iv.row(digits);
    IntervalCsv {
        regime: r.regime,
        k: r.k,
        v: r.v,
        path: join(&r.path),
        zeta_exact: iv.zeta.to_string(),
        zeta_dec: r.zeta_dec,
        eta_exact: iv.eta.to_string(),
        eta_dec: r.eta_dec,
        omega_exact: iv.omega.to_string(),
        omega_dec: r.omega_dec,
        i: r.i,
        j: r.j,
        length_dec: r.length_dec,
    }
}

fn intervals(
    cfg: &Config,
    regime: Regime,
    k_max: i64,
    len_max: usize,
    q_cap: i64,
    digits: Option<usize>,
) -> Result<(), Failure> {
    cfg.require_m3()?;
    positive("--k-max", k_max)?;
    positive("--len-max", len_max as i64)?;
    positive("--q-cap", q_cap)?;
    let digits = digits.unwrap_or(cfg.digits);
    let ivs = enumerate_intervals(&cfg.group, regime, k_max, len_max, q_cap)?;
    let rows: Vec<_> = ivs.iter().map(|iv| iv.row(digits)).collect();
    let csv: Vec<_> = ivs.iter().map(|iv| interval_csv(iv, digits)).collect();
    Ok(cfg.sink.emit(&rows, &csv)?)
}

#[derive(Serialize)]
struct VerifyOut {
    interval: alphacf::sync::IntervalRow,
    witness: SyncWitness,
}

#[derive(Serialize)]
struct WitnessCsv {
    k: i64,
    v: String,
    alpha: String,
    i: usize,
    j: usize,
    expected_i: usize,
    expected_j: String,
    indices_match: bool,
    pre_relation: bool,
    point: String,
}

fn verify(cfg: &Config, k: i64, v: &str, alpha: &str, cap: usize) -> Result<(), Failure> {
    cfg.require_m3()?;
    if k == 0 {
        return Err(Failure::Usage("--k must be nonzero".into()));
    }
    let g = &cfg.group;
    let v = usage(parse::tree_word(v))?;
    let iv = endpoints(g, k, &v).map_err(|e| Failure::Usage(e.to_string()))?;
    let witness = match usage(parse::alpha(g, alpha))? {
        Alpha::Rational(r) => verify_sync(g, &iv, FieldElement::from_rational(g.field(), r), cap)?,
        Alpha::Algebraic(a) => verify_sync(g, &iv, a, cap)?,
    };
    let ok = witness.indices_match && witness.pre_relation;
    let csv = [WitnessCsv {
        k,
        v: v.to_string(),
        alpha: witness.alpha.clone(),
        i: witness.i,
        j: witness.j,
        expected_i: witness.expected_i,
        expected_j: join(&witness.expected_j),
        indices_match: witness.indices_match,
        pre_relation: witness.pre_relation,
        point: witness.point.clone(),
    }];
    cfg.sink.emit(
        &VerifyOut {
            interval: iv.row(cfg.digits),
            witness,
        },
        &csv,
    )?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification(
            "synchronization indices or pre-step relation do not match".into(),
        ))
    }
}

#[derive(Serialize)]
struct OrbitRow {
    index: usize,
    k: Option<i64>,
    l: Option<u32>,
    point_decimal: String,
    point_exact: String,
}

fn orbit_rows<T: Tower + std::fmt::Display>(
    g: &Group,
    alpha: T,
    start: &str,
    steps: usize,
    digits: usize,
) -> Result<(Vec<OrbitRow>, Option<usize>), Failure> {
    let p = AlphaParam::new(g, alpha).map_err(|e| Failure::Usage(e.to_string()))?;
    let x = match start {
        "l0" => p.left().clone(),
        "r0" => p.right().clone(),
        s => p.value().rational(usage(parse::rational(s))?),
    };
    if !p.contains_closed(&x) {
        return Err(Failure::Usage("--start lies outside the interval".into()));
    }
    let rec = p.orbit_through(&x, steps)?;
    let mut rows = vec![OrbitRow {
        index: 0,
        k: None,
        l: None,
        point_decimal: decimal(&x, digits),
        point_exact: x.to_string(),
    }];
    for (i, (d, y)) in rec.steps.iter().enumerate() {
        rows.push(OrbitRow {
            index: i + 1,
            k: Some(d.k),
            l: Some(d.l),
            point_decimal: decimal(y, digits),
            point_exact: y.to_string(),
        });
    }
    Ok((rows, rec.pole))
}

fn orbit(cfg: &Config, alpha: &str, start: &str, steps: usize) -> Result<(), Failure> {
    let g = &cfg.group;
    let (rows, pole) = match usage(parse::alpha(g, alpha))? {
        Alpha::Rational(r) => orbit_rows(
            g,
            FieldElement::from_rational(g.field(), r),
            start,
            steps,
            cfg.digits,
        )?,
        Alpha::Algebraic(a) => orbit_rows::<RealAlgebraic>(g, a, start, steps, cfg.digits)?,
    };
    cfg.sink.emit(&rows, &rows)?;
    if let Some(l) = pole {
        eprintln!(
            "orbit stopped at a pole of C^{l} after {} steps",
            rows.len() - 1
        );
    }
    Ok(())
}

fn measure(cfg: &Config, regime: Regime, caps: &str) -> Result<(), Failure> {
    cfg.require_m3()?;
    let caps = usage(parse::caps(caps))?;
    for &(k, l, q) in &caps {
        positive("cap k", k)?;
        positive("cap len", l as i64)?;
        positive("cap q", q)?;
    }
    let rows = measure_report(&cfg.group, regime, &caps)?;
    Ok(cfg.sink.emit(&rows, &rows)?)
}

fn report_out(cfg: &Config, rep: &Report) -> Result<(), Failure> {
    cfg.sink.emit(rep, &rep.checks)?;
    let bad = rep.failures().count();
    if bad == 0 {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{bad} of {} checks failed",
            rep.checks.len()
        )))
    }
}

fn identities(cfg: &Config, grid: Grid) -> Result<(), Failure> {
    if grid.n_max < 3 || grid.k_max < 1 || grid.vec_len < 1 || grid.entry_max < 1 {
        return Err(Failure::Usage(
            "identity grid bounds must be positive (n-max at least 3)".into(),
        ));
    }
    let rep = identity_suite(&grid)?;
    report_out(cfg, &rep)
}

fn suite(cfg: &Config) -> Result<(), Failure> {
    let g = &cfg.group;
    let mut rep = Report::new(format!("suite m={} n={}", g.m, g.n));
    rep.extend(alpha0_suite(g)?);
    rep.extend(alpha1_suite(g, 4)?);
    if g.m == 3 {
        rep.extend(identity_suite(&Grid {
            n_max: g.n.max(3),
            k_max: 3,
            vec_len: 2,
            entry_max: 3,
        })?);
        rep.extend(word_suite(9, 3));
        rep.extend(partition_suite(g, 3, 5, 2)?);
        let words: Vec<TreeWord> = enumerate_tree(5, 1).into_iter().take(3).collect();
        for k in [1i64, 2, -2] {
            for v in &words {
                let iv = endpoints(g, k, v)?;
                rep.extend(digit_certificates(g, &iv, 2)?);
                let (lo, hi) = iv.sync_bounds();
                for a in interior_samples(lo, hi, 2) {
                    let w = verify_sync(
                        g,
                        &iv,
                        FieldElement::from_rational(g.field(), a.clone()),
                        500,
                    )?;
                    rep.push(
                        format!("synchronization k={k} v={v} alpha={a}"),
                        w.indices_match && w.pre_relation,
                        format!("r_{} = l_{}", w.j, w.i),
                    );
                }
            }
        }
    }
    report_out(cfg, &rep)
}

fn figure_data(
    cfg: &Config,
    figure: Figure,
    samples: usize,
    x_min: Option<String>,
    x_max: Option<String>,
    k_bound: i64,
) -> Result<(), Failure> {
    positive("--samples", samples as i64)?;
    match figure {
        Figure::EndpointCurves => {
            let window = match (x_min, x_max) {
                (Some(a), Some(b)) => {
                    let (a, b) = (usage(parse::rational(&a))?, usage(parse::rational(&b))?);
                    if a >= b {
                        return Err(Failure::Usage("--x-min must be below --x-max".into()));
                    }
                    Some((a, b))
                }
                (None, None) => None,
                _ => return Err(Failure::Usage("give both --x-min and --x-max".into())),
            };
            let rows = figures::endpoint_curves(&cfg.group, samples, window, cfg.digits)?;
            Ok(cfg.sink.emit(&rows, &rows)?)
        }
        Figure::Cylinders => {
            positive("--k-bound", k_bound)?;
            let rows = figures::cylinders(&cfg.group, samples, k_bound, cfg.digits)?;
            Ok(cfg.sink.emit(&rows, &rows)?)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = Config::from_cli(&cli)?;
    match cli.cmd {
        Cmd::Tree { len_max, q_cap } => tree(&cfg, len_max, q_cap),
        Cmd::Intervals {
            regime,
            k_max,
            len_max,
            q_cap,
            digits,
        } => intervals(&cfg, regime.into(), k_max, len_max, q_cap, digits),
        Cmd::Verify { k, v, alpha, cap } => verify(&cfg, k, &v, &alpha, cap),
        Cmd::Orbit {
            alpha,
            start,
            steps,
        } => orbit(&cfg, &alpha, &start, steps),
        Cmd::Measure { regime, caps } => measure(&cfg, regime.into(), &caps),
        Cmd::Identities {
            n_max,
            k_max,
            vec_len,
            entry_max,
        } => identities(
            &cfg,
            Grid {
                n_max,
                k_max,
                vec_len,
                entry_max,
            },
        ),
        Cmd::Suite => suite(&cfg),
        Cmd::FigureData {
            figure,
            samples,
            x_min,
            x_max,
            k_bound,
        } => figure_data(&cfg, figure, samples, x_min, x_max, k_bound),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
    }
}
