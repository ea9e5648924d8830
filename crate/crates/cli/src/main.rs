use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nilsymp::chevbasis::{build_resigned_table, build_structure_table, StructureTable};
use nilsymp::cohom::{Complex, FULL_COMPLEX_MAX_DIM};
use nilsymp::kostant::{enumerate_w12, h2_hwv, verify_hwv_against_cohomology, HWV_CHECK_MAX_DIM};
use nilsymp::nilrad::{build_nilradical, ingest_algebra, NilAlgebra, ParabolicSpec};
use nilsymp::obstruct::{central_hwv_check, dim_bound_check, prop44_classify, pt_obstruction_trivial_g};
use nilsymp::rootsys::{build_root_system, RootSystem};
use nilsymp::survey::{
    compare_golden, load_golden, run_survey_rows, table1_from_rows, theorem45_from_rows, write_csv, SurveyOptions,
};
use nilsymp::symp::{algebra_key, decide, resolve_seed, DecideOptions, Target, Verdict, DEFAULT_SAMPLES};

#[derive(Parser)]
#[command(name = "nilsymp", version, about = "Symplectic structures on nilradicals of parabolic subalgebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Random seed (falls back to NILSYMP_SEED, then to a hash of the case).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Random samples for the rank probe.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Use a structure table with randomly re-signed extraspecial pairs.
    #[arg(long, global = true)]
    resign: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    N,
    Ext,
    Both,
}

#[derive(clap::Args)]
struct Input {
    /// Case such as `C3:2,3` (1-based simple roots).
    case: Option<String>,
    /// Algebra JSON file instead of a case.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Positive roots, Cartan matrix and maximal root of a type.
    Rootsys { ty: String },
    /// Nilradical of a parabolic as algebra JSON.
    Build { case: String },
    /// Betti numbers and differential dumps.
    Cohom {
        #[command(flatten)]
        input: Input,
        /// Print `d_p` as sparse triplets.
        #[arg(long)]
        triplets: Option<usize>,
    },
    /// Highest weight vectors of H^2 and their cohomological check.
    Hwv { case: String },
    /// Every obstruction criterion on a case.
    Obstruct { case: String },
    /// Decide symplectic existence on n and/or R+n.
    Decide {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = TargetArg::Both)]
        target: TargetArg,
    },
    /// Survey all |pi0| <= 2 cases and compare with the golden tables.
    Survey {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        /// Directory for survey.csv and survey.json.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory holding table1.json and theorem45.json.
        #[arg(long, default_value = concat!(env!("CARGO_MANIFEST_DIR"), "/../../golden"))]
        golden: PathBuf,
        /// Overwrite the golden files with this run's results.
        #[arg(long)]
        bless: bool,
    },
    /// Human-readable report on one case.
    Explain { case: String },
    /// Validate an algebra JSON file.
    Ingest { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(64)
        }
    }
}

fn parse_case(s: &str) -> Result<ParabolicSpec> {
    let (ty, pi0) = s.split_once(':').with_context(|| format!("case {s:?} must look like C3:2,3"))?;
    Ok(ParabolicSpec::parse(ty, pi0)?)
}

fn table(rs: &RootSystem, cli: &Cli) -> StructureTable {
    match cli.resign {
        Some(s) => build_resigned_table(rs, s),
        None => build_structure_table(rs),
    }
}

fn load(input: &Input, cli: &Cli) -> Result<NilAlgebra> {
    match (&input.case, &input.json) {
        (Some(c), None) => {
            let spec = parse_case(c)?;
            Ok(build_nilradical(&spec, &table(&build_root_system(spec.ty()), cli)))
        }
        (None, Some(p)) => Ok(ingest_algebra(&std::fs::read_to_string(p)?)?),
        _ => bail!("give exactly one of a case or --json FILE"),
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.cmd {
        Cmd::Rootsys { ty } => {
            let rs = nilsymp::rootsys::parse_and_build(ty)?;
            if cli.format == Format::Json {
                print_json(&rs.to_json());
            } else {
                println!("type {}  rank {}  positive roots {}", rs.ty(), rs.rank(), rs.positive_roots().len());
                println!("max root {}", rs.max_root().label());
                for row in rs.cartan() {
                    println!("  {row:?}");
                }
                for r in rs.positive_roots() {
                    println!("  {:<24} {}", r.label(), rs.epsilon_label(r));
                }
            }
            Ok(0)
        }
        Cmd::Build { case } => {
            let spec = parse_case(case)?;
            let n = build_nilradical(&spec, &table(&build_root_system(spec.ty()), cli));
            print_json(&n.to_json());
            Ok(0)
        }
        Cmd::Cohom { input, triplets } => {
            let n = load(input, cli)?;
            let cx = Complex::new(&n);
            if let Some(p) = triplets {
                print!("{}", cx.dump_triplets(*p));
                return Ok(0);
            }
            let betti: Vec<usize> = match cx.betti_all() {
                Ok(b) => b,
                Err(_) => (0..=3.min(n.dim())).map(|p| cx.betti(p)).collect(),
            };
            match cli.format {
                Format::Json => print_json(&json!({"dim": n.dim(), "k": n.k(), "betti": betti})),
                Format::Csv => {
                    println!("p,betti");
                    for (p, b) in betti.iter().enumerate() {
                        println!("{p},{b}");
                    }
                }
                Format::Text => {
                    println!("dim {}  k {}", n.dim(), n.k());
                    if n.dim() > FULL_COMPLEX_MAX_DIM {
                        println!("dimension above {FULL_COMPLEX_MAX_DIM}: degrees 0..=3 only");
                    }
                    for (p, b) in betti.iter().enumerate() {
                        println!("b{p} = {b}");
                    }
                }
            }
            Ok(0)
        }
        Cmd::Hwv { case } => {
            let spec = parse_case(case)?;
            let rs = build_root_system(spec.ty());
            let st = table(&rs, cli);
            let dim = build_nilradical(&spec, &st).dim();
            let report = if dim <= HWV_CHECK_MAX_DIM {
                serde_json::to_value(verify_hwv_against_cohomology(&spec, &st)?)?
            } else {
                let entries: Vec<_> = h2_hwv(&spec, &st)
                    .iter()
                    .map(|e| json!({"alpha": e.alpha + 1, "partner": e.partner.label(), "grade_of_partner": e.grade_of_partner}))
                    .collect();
                json!({"case": spec.key(), "dim": dim, "w12": enumerate_w12(&spec, &rs).len(), "hwv": entries, "verified": false})
            };
            print_json(&report);
            Ok(0)
        }
        Cmd::Obstruct { case } => {
            let spec = parse_case(case)?;
            let rs = build_root_system(spec.ty());
            let n = build_nilradical(&spec, &table(&rs, cli));
            let mut out = json!({"case": spec.key(), "dim": n.dim(), "k": n.k(), "dim_bound": dim_bound_check(&n)});
            if !n.is_abelian() {
                let pt: BTreeMap<usize, _> =
                    (1..=n.k().div_ceil(2)).map(|t| (t, pt_obstruction_trivial_g(&n, t).ok().flatten())).collect();
                out["pt"] = serde_json::to_value(pt)?;
                out["central_hwv"] = serde_json::to_value(central_hwv_check(&spec, &rs)?)?;
                out["prop44"] = match prop44_classify(&spec, &rs)? {
                    Some(m) => json!({"case": m.case, "alpha": m.alpha + 1, "beta": m.beta + 1}),
                    None => serde_json::Value::Null,
                };
            }
            print_json(&out);
            Ok(0)
        }
        Cmd::Decide { input, target } => {
            let n = load(input, cli)?;
            let targets = match target {
                TargetArg::N => vec![Target::N],
                TargetArg::Ext => vec![Target::Ext],
                TargetArg::Both => vec![Target::N, Target::Ext],
            };
            let verdicts: Vec<Verdict> = targets
                .iter()
                .map(|&t| {
                    let seed = resolve_seed(cli.seed, &format!("{}/{t}", algebra_key(&n)));
                    decide(&n, t, &DecideOptions { samples: cli.samples, seed })
                })
                .collect();
            if cli.format == Format::Text {
                for v in &verdicts {
                    println!("{}: {}", v.target, v.kind());
                    if let Some(w) = v.witness() {
                        println!("  {}", w.display(None));
                    }
                }
            } else {
                print_json(&serde_json::to_value(&verdicts)?);
            }
            let code = verdicts.iter().map(Verdict::exit_code).min().unwrap_or(0);
            Ok(code as u8)
        }
        Cmd::Survey { max_rank, out, golden, bless } => survey(cli, *max_rank, out.as_ref(), golden, *bless),
        Cmd::Explain { case } => {
            print!("{}", explain(&parse_case(case)?, cli)?);
            Ok(0)
        }
        Cmd::Ingest { file } => {
            let n = ingest_algebra(&std::fs::read_to_string(file)?)?;
            if cli.format == Format::Json {
                print_json(&n.to_json());
            } else {
                println!("accepted: dim {}  k {}  abelian {}", n.dim(), n.k(), n.is_abelian());
            }
            Ok(0)
        }
    }
}

fn survey(cli: &Cli, max_rank: usize, out: Option<&PathBuf>, golden: &Path, bless: bool) -> Result<u8> {
    if max_rank < 2 {
        bail!("--max-rank must be at least 2");
    }
    let seed = cli.seed.or_else(|| std::env::var("NILSYMP_SEED").ok().and_then(|s| s.parse().ok()));
    let opts = SurveyOptions { max_rank, samples: cli.samples, seed, resign: cli.resign };
    let rows = run_survey_rows(&opts);
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        write_csv(&rows, std::fs::File::create(dir.join("survey.csv"))?)?;
        std::fs::write(dir.join("survey.json"), serde_json::to_string_pretty(&rows)?)?;
    }
    match cli.format {
        Format::Json => print_json(&serde_json::to_value(&rows)?),
        Format::Csv => write_csv(&rows, std::io::stdout())?,
        Format::Text => {
            for (ty, row) in table1_from_rows(&rows) {
                println!("{ty:<4} singletons {:?}  pairs {:?}", row.singletons, row.pairs);
            }
        }
    }
    let (g1, g45) = load_golden(golden).with_context(|| format!("reading golden files in {}", golden.display()))?;
    let diffs = compare_golden(&rows, &g1, &g45);
    for d in &diffs {
        eprintln!("diff: {d}");
    }
    if bless {
        std::fs::write(golden.join("table1.json"), serde_json::to_string_pretty(&table1_from_rows(&rows))?)?;
        std::fs::write(golden.join("theorem45.json"), serde_json::to_string_pretty(&theorem45_from_rows(&rows))?)?;
        eprintln!("golden files rewritten ({} differences above)", diffs.len());
        return Ok(0);
    }
    Ok(if diffs.is_empty() { 0 } else { 1 })
}

/// Graded dimensions of the free nilpotent Lie algebra on `g` generators.
fn witt(g: usize, j: usize) -> usize {
    let mobius = |n: usize| -> i64 {
        let (mut n, mut k, mut sign) = (n, 2, 1);
        while k * k <= n {
            if n % k == 0 {
                n /= k;
                if n % k == 0 {
                    return 0;
                }
                sign = -sign;
            }
            k += 1;
        }
        if n > 1 {
            -sign
        } else {
            sign
        }
    };
    let s: i64 = (1..=j).filter(|d| j.is_multiple_of(*d)).map(|d| mobius(d) * (g as i64).pow((j / d) as u32)).sum();
    (s / j as i64) as usize
}

fn explain(spec: &ParabolicSpec, cli: &Cli) -> Result<String> {
    let rs = build_root_system(spec.ty());
    let st = table(&rs, cli);
    let n = build_nilradical(spec, &st);
    let mut s = String::new();
    let grades = n.grade_blocks();
    let dims: Vec<usize> = grades.values().map(Vec::len).collect();
    writeln!(s, "case {}  dim {}  k {}", spec.key(), n.dim(), n.k())?;
    writeln!(s, "grade dimensions {dims:?}")?;
    let lcs: Vec<usize> = n.lower_central_series().iter().map(|x| x.dim()).collect();
    let ucs: Vec<usize> = n.upper_central_series().iter().map(|x| x.dim()).collect();
    writeln!(s, "lower central series dims {lcs:?}")?;
    writeln!(s, "upper central series dims {ucs:?}")?;
    let g = dims[0];
    if n.is_abelian() {
        writeln!(s, "abelian: H^2 = Λ^2 n*, dimension {}", g * g.saturating_sub(1) / 2)?;
    } else if dims.iter().enumerate().all(|(i, &d)| d == witt(g, i + 1)) {
        writeln!(s, "shape: free {}-step nilpotent on {g} generators", n.k())?;
    }
    let cx = Complex::new(&n);
    match cx.betti_all() {
        Ok(b) => writeln!(s, "betti {b:?}")?,
        Err(_) => writeln!(s, "b1 {}  b2 {}", cx.betti(1), cx.betti(2))?,
    }
    writeln!(s, "highest weight vectors of H^2:")?;
    for e in h2_hwv(spec, &st) {
        writeln!(s, "  g{} ^ {}  (partner grade {})", e.alpha + 1, e.partner.label(), e.grade_of_partner)?;
    }
    if let Some(o) = dim_bound_check(&n) {
        writeln!(s, "obstruction: {}", o.summary())?;
    }
    if !n.is_abelian() {
        if let Some(o) = central_hwv_check(spec, &rs)? {
            writeln!(s, "obstruction: {}", o.summary())?;
        }
        for t in 1..=n.k().div_ceil(2) {
            if let Some(o) = pt_obstruction_trivial_g(&n, t)? {
                writeln!(s, "obstruction: {}", o.summary())?;
            }
        }
    }
    for t in [Target::N, Target::Ext] {
        let seed = resolve_seed(cli.seed, &format!("{}/{t}", spec.key()));
        let v = decide(&n, t, &DecideOptions { samples: cli.samples, seed });
        writeln!(s, "verdict on {t}: {}", v.kind())?;
        if let Some(w) = v.witness() {
            let tgt = if t == Target::N { n.clone() } else { nilsymp::symp::extend_trivially(&n) };
            writeln!(s, "  witness {}", w.display(Some(tgt.labels())))?;
        }
    }
    Ok(s)
}
