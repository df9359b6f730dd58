use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use reflect_core::branch::{
    branch_space, build_matrix_c, dimension_identity, invariant_subspace_probe, matrix_c_from_oracle, run_suite,
    OracleKind,
};
use reflect_core::dump::{parse_rational, MatrixDump, Report};
use reflect_core::rep::CoidealParams;
use reflect_core::rk::{build_k_closed, build_k_solved, build_r, q0_limit, verify_re, verify_ybe, RKind, YbeKind};
use reflect_core::{Error, Rf, SparseVec};

const OUTPUT_DIR_VAR: &str = "REFLECT_OUTPUT_DIR";

#[derive(Parser)]
#[command(name = "reflect", version, about = "Exact R and K matrices over Q(q) and their verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file. Defaults to `$REFLECT_OUTPUT_DIR/<command>.<format>`, or stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for extra random rational test points.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RKindArg {
    R,
    Rstar,
    Rstarstar,
}

impl From<RKindArg> for RKind {
    fn from(k: RKindArg) -> Self {
        match k {
            RKindArg::R => RKind::R,
            RKindArg::Rstar => RKind::Rstar,
            RKindArg::Rstarstar => RKind::Rstarstar,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Bw,
    BfwMinus,
    BfwPlus,
    BfwZero,
    Bffw,
    RankC,
    Dimension,
    All,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    l: u32,
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    x: String,
}

#[derive(Args, Clone)]
struct Coideal {
    #[arg(long, default_value_t = 0)]
    eps: u8,
    /// One value for every white node, or a comma-separated list.
    #[arg(long, default_value = "-q", allow_hyphen_values = true)]
    gamma: String,
}

#[derive(Subcommand)]
enum Command {
    /// R matrix V_{l,x} ⊗ V_{m,y} -> V_{m,y} ⊗ V_{l,x} (or a dual variant).
    BuildR {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value = "3", allow_hyphen_values = true)]
        y: String,
        #[arg(long, value_enum, default_value_t = RKindArg::R)]
        kind: RKindArg,
    },
    /// K matrix V_{l,x} -> V*_{l,1/x}.
    BuildK {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        coideal: Coideal,
        /// Solve the intertwining equations instead of using the closed form.
        #[arg(long)]
        solve: bool,
    },
    /// Yang-Baxter equation for three modules.
    VerifyYbe {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value = "rrr")]
        kind: String,
        #[arg(long, default_value = "1,1,1")]
        levels: String,
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value = "3", allow_hyphen_values = true)]
        y: String,
        /// Extra random (x, y) points; needs --seed.
        #[arg(long, default_value_t = 0)]
        random_points: usize,
    },
    /// Reflection equation.
    VerifyRe {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        coideal: Coideal,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value = "3", allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 0)]
        random_points: usize,
    },
    /// Branching identities for the coideal generators.
    VerifyProps {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        lmax: u32,
    },
    /// Invariant subspace generated by every basis vector of V_l ⊗ V_m (x = y = 1).
    ProbeIrreducible {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        l: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[command(flatten)]
        coideal: Coideal,
    },
    /// q -> 0 limit of the closed-form K matrix.
    Q0 {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        coideal: Coideal,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::BuildR { .. } => "build-r",
            Command::BuildK { .. } => "build-k",
            Command::VerifyYbe { .. } => "verify-ybe",
            Command::VerifyRe { .. } => "verify-re",
            Command::VerifyProps { .. } => "verify-props",
            Command::ProbeIrreducible { .. } => "probe-irreducible",
            Command::Q0 { .. } => "q0",
        }
    }
}

enum Failure {
    Verification(String),
    Core(Error),
    Config(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Core(Error::NonGenericParameters(_) | Error::NoIntertwiner) => 2,
            Failure::Core(
                Error::Domain(_) | Error::Parse(_) | Error::ExistenceConditionViolated { .. } | Error::SpaceMismatch(_),
            ) => 3,
            Failure::Core(_) => 1,
            Failure::Config(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Verification(s) | Failure::Config(s) => s.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn rat(s: &str) -> Outcome<BigRational> {
    let r = parse_rational(s)?;
    if r == BigRational::from_integer(0.into()) {
        return Err(Failure::Config(format!("spectral parameter must be nonzero, got {s:?}")));
    }
    Ok(r)
}

fn coideal_params(n: usize, c: &Coideal) -> Outcome<CoidealParams> {
    if c.eps > 1 {
        return Err(Failure::Config(format!("--eps must be 0 or 1, got {}", c.eps)));
    }
    let mut gammas = c.gamma.split(',').map(Rf::parse).collect::<Result<Vec<_>, _>>()?;
    if gammas.len() == 1 {
        gammas = vec![gammas[0].clone(); n];
    }
    Ok(CoidealParams::new(n, c.eps, gammas)?)
}

fn check_n(n: usize) -> Outcome<()> {
    if n < 2 {
        return Err(Failure::Config(format!("--n must be at least 2, got {n}")));
    }
    Ok(())
}

fn random_points(seed: Option<u64>, count: usize) -> Outcome<Vec<(BigRational, BigRational)>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let seed = seed.ok_or_else(|| Failure::Config("--random-points needs an explicit --seed".into()))?;
    let mut rng = StdRng::seed_from_u64(seed);
    let draw = |rng: &mut StdRng| {
        let num: i64 = rng.random_range(1..=12) * if rng.random_bool(0.5) { 1 } else { -1 };
        BigRational::new(num.into(), rng.random_range(1..=12i64).into())
    };
    Ok((0..count).map(|_| (draw(&mut rng), draw(&mut rng))).collect())
}

/// What a command produced: a matrix dump, or verification reports.
enum Artifact {
    Matrix(MatrixDump),
    Reports(Vec<Report>),
}

fn reports_csv(reports: &[Report]) -> String {
    let mut out = String::from("proposition,context,expected,computed,pass\n");
    let field = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
    for r in reports {
        let ctx = serde_json::to_string(&r.context).expect("context serializes");
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            field(&r.proposition),
            field(&ctx),
            field(&r.expected),
            field(&r.computed),
            r.pass
        ));
    }
    out
}

fn render(a: &Artifact, format: Format) -> String {
    match (a, format) {
        (Artifact::Matrix(m), Format::Json) => m.to_json() + "\n",
        (Artifact::Matrix(m), Format::Csv) => m.to_csv(),
        (Artifact::Reports(r), Format::Json) => serde_json::to_string_pretty(r).expect("reports serialize") + "\n",
        (Artifact::Reports(r), Format::Csv) => reports_csv(r),
    }
}

fn report_re(
    n: usize,
    l: u32,
    m: u32,
    points: &[(BigRational, BigRational)],
    params: &CoidealParams,
) -> Outcome<Vec<Report>> {
    let mut out = Vec::new();
    for (x, y) in points {
        let r = verify_re(n, l, m, x, y, params)?;
        let scalar = r.report.scalar.as_ref().map(|s| s.to_string()).unwrap_or_else(|| "none".into());
        out.push(
            Report::new("reflection_equation")
                .with("n", n)
                .with("eps", params.eps)
                .with("l", l)
                .with("m", m)
                .with("x", x.to_string())
                .with("y", y.to_string())
                .with("scalar", &scalar)
                .with("equal", r.report.equal)
                .outcome("lhs proportional to rhs", format!("scalar {scalar}"), r.report.holds_up_to_scalar),
        );
    }
    Ok(out)
}

fn rank_c_reports(n: usize, lmax: u32) -> Outcome<Vec<Report>> {
    let mut out = Vec::new();
    for l in 1..=lmax {
        for m in 1..=lmax {
            for j in 0.. {
                let c = build_matrix_c(n, l, m, j)?;
                if c.cols.is_empty() {
                    break;
                }
                let rank = c.rank();
                let agrees = c.matrix == matrix_c_from_oracle(n, l, m, j).matrix;
                out.push(
                    Report::new("rank_c")
                        .with("n", n)
                        .with("l", l)
                        .with("m", m)
                        .with("j", j)
                        .with("rows", c.rows.len())
                        .with("closed_form_agrees", agrees)
                        .outcome(c.cols.len(), rank, rank == c.cols.len() && agrees),
                );
            }
        }
    }
    Ok(out)
}

fn dimension_reports(n: usize, lmax: u32) -> Vec<Report> {
    let mut out = Vec::new();
    for l in 0..=lmax {
        for m in 0..=lmax {
            let (sum, dim) = dimension_identity(n, l, m);
            out.push(Report::new("dimension").with("n", n).with("l", l).with("m", m).outcome(dim, sum, sum == dim));
        }
    }
    out
}

fn run(cmd: &Command, seed: Option<u64>) -> Outcome<Artifact> {
    match cmd {
        Command::BuildR { common, m, y, kind } => {
            check_n(common.n)?;
            let r = build_r((*kind).into(), common.n, common.l, *m, rat(&common.x)?, rat(y)?)?;
            Ok(Artifact::Matrix(MatrixDump::from_operator(&r.op)))
        }
        Command::BuildK { common, coideal, solve } => {
            check_n(common.n)?;
            let p = coideal_params(common.n, coideal)?;
            let x = rat(&common.x)?;
            let op = if *solve {
                let s = build_k_solved(&p, common.l, x)?;
                match s.k {
                    Some(k) => k.op,
                    None if s.dimension == 0 => return Err(Error::NoIntertwiner.into()),
                    None => return Err(Error::NonGenericParameters(s.dimension).into()),
                }
            } else {
                build_k_closed(&p, common.l, x)?.op
            };
            Ok(Artifact::Matrix(MatrixDump::from_operator(&op)))
        }
        Command::Q0 { common, coideal } => {
            check_n(common.n)?;
            let p = coideal_params(common.n, coideal)?;
            let k = build_k_closed(&p, common.l, rat(&common.x)?)?;
            let lim = q0_limit(&k.op).map_err(|e| Failure::Verification(e.to_string()))?;
            Ok(Artifact::Matrix(MatrixDump::from_operator(&lim)))
        }
        Command::VerifyYbe { n, kind, levels, x, y, random_points: extra } => {
            check_n(*n)?;
            let kind: YbeKind = kind.parse()?;
            let lv: Vec<u32> = levels
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::Config(format!("bad --levels {levels:?}")))?;
            let lv: [u32; 3] = lv
                .try_into()
                .map_err(|_| Failure::Config("--levels needs three values".into()))?;
            let mut points = vec![(rat(x)?, rat(y)?)];
            points.extend(random_points(seed, *extra)?);
            let mut out = Vec::new();
            for (x, y) in &points {
                let r = verify_ybe(kind, *n, lv, x, y)?;
                let scalar = r.report.scalar.as_ref().map(|s| s.to_string()).unwrap_or_else(|| "none".into());
                out.push(
                    Report::new("yang_baxter")
                        .with("kind", kind.to_string())
                        .with("n", n)
                        .with("levels", lv)
                        .with("x", x.to_string())
                        .with("y", y.to_string())
                        .with("scalar", &scalar)
                        .with("equal", r.report.equal)
                        .outcome("lhs proportional to rhs", format!("scalar {scalar}"), r.report.holds_up_to_scalar),
                );
            }
            Ok(Artifact::Reports(out))
        }
        Command::VerifyRe { common, coideal, m, y, random_points: extra } => {
            check_n(common.n)?;
            let p = coideal_params(common.n, coideal)?;
            let mut points = vec![(rat(&common.x)?, rat(y)?)];
            points.extend(random_points(seed, *extra)?);
            Ok(Artifact::Reports(report_re(common.n, common.l, *m, &points, &p)?))
        }
        Command::VerifyProps { suite, n, lmax } => {
            check_n(*n)?;
            let kinds: Vec<OracleKind> = match suite {
                Suite::Bw => vec![OracleKind::Bw],
                Suite::BfwMinus => vec![OracleKind::BfwMinus],
                Suite::BfwPlus => vec![OracleKind::BfwPlus],
                Suite::BfwZero => vec![OracleKind::BfwZero],
                Suite::Bffw => vec![OracleKind::Bffw],
                Suite::All => OracleKind::ALL.to_vec(),
                Suite::RankC | Suite::Dimension => vec![],
            };
            let mut out = Vec::new();
            for k in kinds {
                out.extend(run_suite(k, *n, *lmax)?);
            }
            if matches!(suite, Suite::RankC | Suite::All) {
                out.extend(rank_c_reports(*n, *lmax)?);
            }
            if matches!(suite, Suite::Dimension | Suite::All) {
                out.extend(dimension_reports(*n, *lmax));
            }
            Ok(Artifact::Reports(out))
        }
        Command::ProbeIrreducible { n, l, m, coideal } => {
            check_n(*n)?;
            let p = coideal_params(*n, coideal)?;
            let space = branch_space(*n, *l, *m)?;
            let seeds: Vec<SparseVec> = (0..space.dim()).map(|i| [(i, Rf::one())].into_iter().collect()).collect();
            let r = invariant_subspace_probe(&space, &p, &seeds)?;
            let out = r
                .dims
                .iter()
                .enumerate()
                .map(|(i, &d)| {
                    let label: Vec<String> = space.label(i).iter().map(|a| a.to_string()).collect();
                    Report::new("invariant_subspace")
                        .with("n", n)
                        .with("eps", coideal.eps)
                        .with("l", l)
                        .with("m", m)
                        .with("seed", label.join("⊗"))
                        .outcome(r.space_dim, d, d == r.space_dim)
                })
                .collect();
            Ok(Artifact::Reports(out))
        }
    }
}

fn destination(out: &OutputArgs, cmd: &Command) -> Option<PathBuf> {
    out.output.clone().or_else(|| {
        std::env::var_os(OUTPUT_DIR_VAR)
            .filter(|d| !d.is_empty())
            .map(|d| PathBuf::from(d).join(format!("{}.{}", cmd.name(), out.format.ext())))
    })
}

fn execute(cli: &Cli) -> Outcome<()> {
    if let Some(t) = cli.out.threads {
        if t == 0 {
            return Err(Failure::Config("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Config(e.to_string()))?;
    }
    let artifact = run(&cli.command, cli.out.seed)?;
    let text = render(&artifact, cli.out.format);
    let dest = destination(&cli.out, &cli.command);
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match (&artifact, &dest) {
        (_, Some(path)) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent).map_err(|e| Failure::Config(format!("{}: {e}", parent.display())))?;
            }
            fs::write(path, &text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
        }
        (Artifact::Matrix(_), None) => {
            let _ = lock.write_all(text.as_bytes());
        }
        (Artifact::Reports(_), None) => {}
    }
    if let Artifact::Reports(reports) = &artifact {
        for r in reports {
            let _ = writeln!(lock, "{}", r.line());
        }
        let failed = reports.iter().filter(|r| !r.pass).count();
        if failed > 0 {
            return Err(Failure::Verification(format!("{failed} of {} checks failed", reports.len())));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
