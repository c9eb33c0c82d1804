use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use nipreg::mine::{mine, GapPair, MineConfig};
use nipreg::report::{write_csv, Count, SCHEMA_VERSION};
use nipreg::spec::{load_group, parse_rational, parse_subset};
use nipreg::sweep::{resolve_seed, sweep, Grid, Row};
use nipreg::verify::{verify, SuiteConfig};
use nipreg_core::decompose::Mode;
use nipreg_core::group::DEFAULT_ORDER_CAP;
use nipreg_core::stabilizer::{st_eps, stabilizer};
use nipreg_core::vc::{vc_variant, Base, Variant, DEFAULT_VC_CAP};
use nipreg_core::{Epsilon, GroupSubset, Side, Threshold};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "nipreg", version, about = "Arithmetic regularity workbench for finite groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Subgroup,
    Bohr,
    Progression,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Subgroup => Mode::Subgroup,
            ModeArg::Bohr => Mode::Bohr,
            ModeArg::Progression => Mode::Progression,
        }
    }
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    max_order: usize,
    /// Output file (stdout if absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// VC dimensions of the translate systems of A
    Vc {
        #[arg(long)]
        group: String,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = DEFAULT_VC_CAP)]
        cap: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Left and right stabilizers St_eps(A), or Stab_N(A) with --n
    Stab {
        #[arg(long)]
        group: String,
        #[arg(long)]
        set: String,
        #[arg(long, required_unless_present = "n")]
        eps: Option<String>,
        #[arg(long, conflicts_with = "eps")]
        n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Structured decomposition A ≈ FP with bound checks
    Decompose {
        #[arg(long)]
        group: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        eps: String,
        #[arg(long, value_enum, default_value = "subgroup")]
        mode: ModeArg,
        /// Override nu (p/q)
        #[arg(long)]
        nu: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Leave timings out of the report
        #[arg(long)]
        no_timings: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite
    Verify {
        /// stabilizers, vc-duality, covering, regularity, structure, afz, bohr, d0, tupling or all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Decompose every cell of a grid
    Sweep {
        #[arg(long)]
        group: Vec<String>,
        #[arg(long)]
        set: Vec<String>,
        #[arg(long)]
        eps: Vec<String>,
        #[arg(long, value_enum)]
        mode: Vec<ModeArg>,
        /// JSON grid {"groups": [...], "sets": [...], "eps": [...], "modes": [...]}, merged with the flags
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Search for gaps between VC variants
    Mine {
        /// vcl-vcr, va-vg or vg-dual
        #[arg(long)]
        pair: String,
        #[arg(long, default_value_t = 2000)]
        budget: usize,
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[command(flatten)]
        common: Common,
    },
}

enum Outcome {
    Pass,
    Falsified,
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(bytes)?;
            so.flush()?;
            Ok(())
        }
    }
}

fn json<T: Serialize>(v: &T) -> Result<Vec<u8>> {
    let mut s = serde_json::to_vec_pretty(v)?;
    s.push(b'\n');
    Ok(s)
}

#[derive(Serialize)]
struct VcReport {
    schema_version: u32,
    group_spec: String,
    set_spec: String,
    values: Vec<(String, Count)>,
}

#[derive(Serialize)]
struct StabSide {
    size: usize,
    elements: Vec<usize>,
}

#[derive(Serialize)]
struct StabReport {
    schema_version: u32,
    group_spec: String,
    set_spec: String,
    threshold: String,
    left: StabSide,
    right: StabSide,
}

fn run(cmd: Cmd) -> Result<Outcome> {
    match cmd {
        Cmd::Vc { group, set, cap, common } => {
            let set = resolve_seed(&set, common.seed);
            let g = load_group(&group, common.max_order)?;
            let a = parse_subset(&g, &set)?;
            let ainv = a.inverse();
            let rows: [(&str, Base<'_, '_>, Side, Variant); 10] = [
                ("VC^l_A(A)", Base::Set(&a), Side::Left, Variant::Translate),
                ("VC^r_A(A)", Base::Set(&a), Side::Right, Variant::Translate),
                ("VC^l_G(A)", Base::Whole, Side::Left, Variant::Translate),
                ("VC^r_G(A)", Base::Whole, Side::Right, Variant::Translate),
                ("VC^l_{A^-1}(A)", Base::Set(&ainv), Side::Left, Variant::Translate),
                ("VC^r_{A^-1}(A)", Base::Set(&ainv), Side::Right, Variant::Translate),
                ("dim_lVC(A)", Base::Set(&a), Side::Left, Variant::Sisask),
                ("dim_rVC(A)", Base::Set(&a), Side::Right, Variant::Sisask),
                ("VC*(F^l_G(A))", Base::Whole, Side::Left, Variant::DualOfTranslate),
                ("VC*(F^r_G(A))", Base::Whole, Side::Right, Variant::DualOfTranslate),
            ];
            let mut values = Vec::new();
            for (name, base, side, variant) in rows {
                values.push((name.to_string(), vc_variant(&a, base, side, variant, cap)?.into()));
            }
            emit(&common.out, &json(&VcReport { schema_version: SCHEMA_VERSION, group_spec: group, set_spec: set, values })?)?;
            Ok(Outcome::Pass)
        }
        Cmd::Stab { group, set, eps, n, common } => {
            let set = resolve_seed(&set, common.seed);
            let g = load_group(&group, common.max_order)?;
            let a = parse_subset(&g, &set)?;
            let (threshold, left, right) = match (eps, n) {
                (Some(e), _) => {
                    let e = Epsilon::new(parse_rational(&e)?)?;
                    (format!("eps={}", e.value()), st_eps(&a, e, Side::Left), st_eps(&a, e, Side::Right))
                }
                (None, Some(n)) => (
                    format!("N={n}"),
                    stabilizer(&a, Threshold::integer(n), Side::Left),
                    stabilizer(&a, Threshold::integer(n), Side::Right),
                ),
                (None, None) => unreachable!("clap requires one of --eps and --n"),
            };
            let side = |s: GroupSubset<'_>| StabSide { size: s.size(), elements: s.elements() };
            let r = StabReport { schema_version: SCHEMA_VERSION, group_spec: group, set_spec: set, threshold, left: side(left), right: side(right) };
            emit(&common.out, &json(&r)?)?;
            Ok(Outcome::Pass)
        }
        Cmd::Decompose { group, set, eps, mode, nu, format, no_timings, common } => {
            let set = resolve_seed(&set, common.seed);
            let nu = nu.map(|v| parse_rational(&v)).transpose()?;
            let r = nipreg::run_decompose(&group, &set, parse_rational(&eps)?, mode.into(), nu, common.max_order, !no_timings)?;
            let bytes = match format {
                Format::Json => json(&r)?,
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_csv(&mut buf, &[Row::Report(Box::new(r.clone())).csv()])?;
                    buf
                }
            };
            emit(&common.out, &bytes)?;
            Ok(if r.failed_checks() > 0 { Outcome::Falsified } else { Outcome::Pass })
        }
        Cmd::Verify { suite, trials, common } => {
            let cfg = SuiteConfig { trials, seed: common.seed, max_order: common.max_order };
            let r = verify(&suite, &cfg)?;
            emit(&common.out, &json(&r)?)?;
            for s in &r.suites {
                eprintln!(
                    "{:<12} {} instances={} skipped={} violations={}",
                    s.suite,
                    if s.pass() { "PASS" } else { "FAIL" },
                    s.instances(),
                    s.skipped,
                    s.violations
                );
            }
            Ok(if r.pass { Outcome::Pass } else { Outcome::Falsified })
        }
        Cmd::Sweep { group, set, eps, mode, grid, format, threads, common } => {
            let mut g = match grid {
                Some(p) => {
                    let text = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                    serde_json::from_str::<Grid>(&text).with_context(|| format!("parsing grid {}", p.display()))?
                }
                None => Grid::default(),
            };
            g.groups.extend(group);
            g.sets.extend(set);
            g.eps.extend(eps);
            g.modes.extend(mode.into_iter().map(|m| Mode::from(m).name().to_string()));
            let threads = threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let rows = sweep(&g, common.seed, common.max_order, threads)?;
            let bytes = match format {
                Format::Json => json(&rows)?,
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_csv(&mut buf, &rows.iter().map(Row::csv).collect::<Vec<_>>())?;
                    buf
                }
            };
            emit(&common.out, &bytes)?;
            let failed = rows.iter().any(|r| matches!(r, Row::Report(r) if r.failed_checks() > 0));
            Ok(if failed { Outcome::Falsified } else { Outcome::Pass })
        }
        Cmd::Mine { pair, budget, top, common } => {
            let cfg = MineConfig { pair: GapPair::parse(&pair)?, budget, seed: common.seed, max_order: common.max_order.min(64), top };
            let r = mine(&cfg)?;
            emit(&common.out, &json(&r)?)?;
            Ok(if r.violations.is_empty() { Outcome::Pass } else { Outcome::Falsified })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Falsified) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
