//! Command-line front end: reproducible experiment runs with machine-readable
//! JSON/CSV reports. Identical flags and seed produce byte-identical output.

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use mmtensor::bounds::{
    divergence_experiment, sandwich, uniqueness_verdict, DivergenceCase,
    GrothendieckConstantConfig, VerdictKind,
};
use mmtensor::io::{
    self, estimate_json, int_matrix_to_csv, norm_result_json, parse_matrix_csv, parse_matrix_json,
    MatrixData,
};
use mmtensor::matnorm::{pq_norm_exact, pq_norm_lower_heuristic};
use mmtensor::strassen::{strassen_recursive, verify_rank_decomposition, RankDecomposition};
use mmtensor::tensornorm::{kg_lower_bound, AscentConfig};
use mmtensor::witness::{make_witness, sharpness_check, identity_quotient_closed_form, identity_quotient_direct, WitnessKind};
use mmtensor::{Error as CoreError, Exponent, ExponentTriple, Matrix};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "mmtensor",
    about = "Operator norms, matrix-multiplication-tensor norms, sandwich bounds and Strassen checks",
    version
)]
struct Cli {
    /// RNG seed for every randomized search
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Random restarts for ascent searches
    #[arg(long, global = true, default_value_t = 100)]
    restarts: u32,

    /// Relative convergence tolerance for ascent searches
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,

    /// Output format (tabular commands default to csv, reports to json)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Upper bound used for the Grothendieck constant in sandwich formulas
    #[arg(long, global = true)]
    kg_upper: Option<f64>,

    /// Enumeration cap for exact (inf,1) norms
    #[arg(long, global = true, default_value_t = 20)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute ||M||_{p,q} for a matrix read from CSV or JSON
    Norm {
        file: PathBuf,
        p: String,
        q: String,
        /// Force the lower-bound heuristic even when an exact path exists
        #[arg(long)]
        heuristic: bool,
    },
    /// Sandwich report for ||mu_{l,m,n}||_{p,q,r}
    Tnorm {
        l: usize,
        m: usize,
        n: usize,
        p: String,
        q: String,
        r: String,
    },
    /// Lower bound on the order-l Grothendieck constant from matrix files
    Kg {
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 2)]
        l: usize,
        /// Where to write the best certificate
        #[arg(long, default_value = "kg-certificate.json")]
        cert_out: PathBuf,
    },
    /// Check the sharp witness equalities on a dims x exponents grid
    Sharpness {
        #[arg(long, default_value_t = 4)]
        dims_max: usize,
        #[arg(long, default_value = "1,3/2,2,3,inf")]
        exponents: String,
    },
    /// Identity-triple quotients: closed form vs direct evaluation
    Identity {
        #[arg(long, default_value_t = 4)]
        dims_max: usize,
    },
    /// Divergence sequence for one explicit Hadamard/identity case
    Diverge {
        /// i | i-conj | ii | ii-conj | ii-r2
        #[arg(long)]
        case: String,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        r: Option<String>,
        #[arg(long, default_value = "2,4,8,16,32")]
        sizes: String,
    },
    /// Boundedness verdict for an exponent triple
    Unique {
        p: String,
        q: String,
        r: String,
        #[arg(long, default_value = "2,4,8,16,32")]
        sizes: String,
    },
    /// Fast-multiplication checks
    Strassen {
        #[command(subcommand)]
        cmd: StrassenCmd,
    },
    /// Emit a witness matrix as CSV
    Witness {
        /// e | c | r | j | ipad | hadamard
        kind: String,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Sandwich sweep over a dims grid and a list of exponent triples
    Sweep {
        #[arg(long, default_value_t = 3)]
        dims_max: usize,
        /// Semicolon-separated triples, e.g. "1,2,inf;2,2,2"
        #[arg(long, default_value = "1,2,inf;2,2,2;1,1,1")]
        triples: String,
    },
}

#[derive(Subcommand, Debug)]
enum StrassenCmd {
    /// Multiplication counts and accuracy of recursive block multiplication
    Bench {
        #[arg(long, default_value_t = 128)]
        max_n: usize,
        #[arg(long, default_value_t = 16)]
        cutoff: usize,
    },
    /// Verify a rank decomposition of mu_{l,m,n} from JSON
    Verify {
        file: PathBuf,
        #[arg(long, num_args = 3, value_names = ["L", "M", "N"])]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            // parse failures exit 2, everything else 1
            let parse = err
                .downcast_ref::<CoreError>()
                .map(|e| matches!(e, CoreError::Parse { .. } | CoreError::ExponentDomain(_)))
                .unwrap_or(false);
            if parse {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn parse_exponent(s: &str) -> anyhow::Result<Exponent> {
    Ok(s.parse::<Exponent>()?)
}

fn parse_triple(p: &str, q: &str, r: &str) -> anyhow::Result<ExponentTriple> {
    Ok(ExponentTriple::new(
        parse_exponent(p)?,
        parse_exponent(q)?,
        parse_exponent(r)?,
    ))
}

fn parse_sizes(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| anyhow!("bad size {t:?}"))
        })
        .collect()
}

fn load_matrix(path: &Path) -> anyhow::Result<MatrixData> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let data = if path.extension().is_some_and(|e| e == "json") {
        parse_matrix_json(&text)?
    } else {
        MatrixData::Real(parse_matrix_csv(&text)?)
    };
    Ok(data)
}

fn ascent_config(cli: &Cli) -> AscentConfig {
    AscentConfig {
        restarts: cli.restarts,
        max_sweeps: 500,
        tol: cli.tol,
        seed: cli.seed,
        cap: cli.cap,
    }
}

fn kg_config(cli: &Cli) -> GrothendieckConstantConfig {
    let base = GrothendieckConstantConfig::real();
    match cli.kg_upper {
        Some(v) => base.with_upper(v),
        None => base,
    }
}

fn config_json(cli: &Cli, command: &str) -> Value {
    json!({
        "command": command,
        "seed": cli.seed,
        "restarts": cli.restarts,
        "tol": cli.tol,
        "cap": cli.cap,
        "kg_upper": kg_config(cli).kg_upper,
    })
}

fn config_comment(cli: &Cli, command: &str) -> String {
    format!(
        "# config: command={command} seed={} restarts={} tol={} cap={} kg_upper={}\n",
        cli.seed,
        cli.restarts,
        cli.tol,
        cli.cap,
        kg_config(cli).kg_upper
    )
}

fn emit(cli: &Cli, content: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn format_for(cli: &Cli, tabular_default: bool) -> Format {
    cli.format.unwrap_or(if tabular_default {
        Format::Csv
    } else {
        Format::Json
    })
}

fn json_report(config: Value, body: Value) -> String {
    let mut root = serde_json::Map::new();
    root.insert("config".into(), config);
    if let Value::Object(map) = body {
        for (k, v) in map {
            root.insert(k, v);
        }
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Norm { file, p, q, heuristic } => cmd_norm(cli, file, p, q, *heuristic),
        Command::Tnorm { l, m, n, p, q, r } => cmd_tnorm(cli, *l, *m, *n, p, q, r),
        Command::Kg { files, l, cert_out } => cmd_kg(cli, files, *l, cert_out),
        Command::Sharpness { dims_max, exponents } => cmd_sharpness(cli, *dims_max, exponents),
        Command::Identity { dims_max } => cmd_identity(cli, *dims_max),
        Command::Diverge { case, q, r, sizes } => cmd_diverge(cli, case, q.as_deref(), r.as_deref(), sizes),
        Command::Unique { p, q, r, sizes } => cmd_unique(cli, p, q, r, sizes),
        Command::Strassen { cmd } => match cmd {
            StrassenCmd::Bench { max_n, cutoff } => cmd_strassen_bench(cli, *max_n, *cutoff),
            StrassenCmd::Verify { file, dims, tolerance } => {
                cmd_strassen_verify(cli, file, dims, *tolerance)
            }
        },
        Command::Witness { kind, rows, cols, n } => cmd_witness(cli, kind, *rows, *cols, *n),
        Command::Sweep { dims_max, triples } => cmd_sweep(cli, *dims_max, triples),
    }
}

fn cmd_norm(cli: &Cli, file: &Path, p: &str, q: &str, heuristic: bool) -> anyhow::Result<ExitCode> {
    let p = parse_exponent(p)?;
    let q = parse_exponent(q)?;
    let data = load_matrix(file)?;
    let result_json = match &data {
        MatrixData::Real(m) => {
            let r = if heuristic {
                pq_norm_lower_heuristic(m, p, q, cli.restarts, cli.seed)?
            } else {
                match pq_norm_exact(m, p, q, cli.cap) {
                    Ok(r) => r,
                    Err(e @ CoreError::UnsupportedPair { .. })
                    | Err(e @ CoreError::EnumerationCap { .. }) => {
                        return Err(anyhow!("{e}; rerun with --heuristic for a certified lower bound"));
                    }
                    Err(e) => return Err(e.into()),
                }
            };
            norm_result_json(&r, p, q)
        }
        MatrixData::Complex(m) => {
            let r = if heuristic {
                pq_norm_lower_heuristic(m, p, q, cli.restarts, cli.seed)?
            } else {
                pq_norm_exact(m, p, q, cli.cap)?
            };
            io::complex_norm_result_json(&r, p, q)
        }
    };
    match format_for(cli, false) {
        Format::Json => emit(cli, &json_report(config_json(cli, "norm"), result_json))?,
        Format::Csv => {
            let mut s = config_comment(cli, "norm");
            s.push_str("value,kind,p,q\n");
            writeln!(
                s,
                "{},{},{},{}",
                result_json["value"], result_json["kind"].as_str().unwrap(), p, q
            )?;
            emit(cli, &s)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_tnorm(cli: &Cli, l: usize, m: usize, n: usize, p: &str, q: &str, r: &str) -> anyhow::Result<ExitCode> {
    let e = parse_triple(p, q, r)?;
    let rep = sandwich(l, m, n, e, &kg_config(cli), &ascent_config(cli))?;
    match format_for(cli, false) {
        Format::Json => {
            let body = json!({
                "dims": [l, m, n],
                "triple": [e.p.to_string(), e.q.to_string(), e.r.to_string()],
                "lower": rep.lower,
                "estimate": estimate_json(&rep.estimate),
                "upper": rep.upper,
            });
            emit(cli, &json_report(config_json(cli, "tnorm"), body))?;
        }
        Format::Csv => {
            let mut s = config_comment(cli, "tnorm");
            s.push_str("l,m,n,p,q,r,lower,estimate,upper\n");
            writeln!(
                s,
                "{l},{m},{n},{},{},{},{},{},{}",
                e.p, e.q, e.r, rep.lower, rep.estimate.value, rep.upper
            )?;
            emit(cli, &s)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_kg(cli: &Cli, files: &[PathBuf], l: usize, cert_out: &Path) -> anyhow::Result<ExitCode> {
    if files.is_empty() {
        return Err(anyhow!("kg needs at least one matrix file"));
    }
    let mut matrices: Vec<Matrix<f64>> = Vec::new();
    for f in files {
        match load_matrix(f)? {
            MatrixData::Real(m) => matrices.push(m),
            MatrixData::Complex(_) => {
                return Err(CoreError::ComplexUnsupported.into());
            }
        }
    }
    let est = kg_lower_bound(&matrices, l, &ascent_config(cli))?;
    let cert = serde_json::to_string_pretty(&json!({
        "value": est.value,
        "estimate": estimate_json(&est),
    }))?;
    std::fs::write(cert_out, cert.as_bytes())
        .with_context(|| format!("writing {}", cert_out.display()))?;
    let body = json!({
        "l": l,
        "lower_bound": est.value,
        "certificate_path": cert_out.display().to_string(),
        "matrices": files.iter().map(|f| f.display().to_string()).collect::<Vec<_>>(),
    });
    emit(cli, &json_report(config_json(cli, "kg"), body))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_sharpness(cli: &Cli, dims_max: usize, exponents: &str) -> anyhow::Result<ExitCode> {
    let exps: Vec<Exponent> = exponents
        .split(',')
        .map(|s| parse_exponent(s.trim()))
        .collect::<anyhow::Result<_>>()?;
    let mut rows = Vec::new();
    let mut all_equal = true;
    for l in 1..=dims_max {
        for m in 1..=dims_max {
            for n in 1..=dims_max {
                for &p in &exps {
                    for &q in &exps {
                        for &r in &exps {
                            let rep = sharpness_check(l, m, n, ExponentTriple::new(p, q, r))?;
                            all_equal &= rep.equal;
                            rows.push(rep);
                        }
                    }
                }
            }
        }
    }
    match format_for(cli, false) {
        Format::Json => {
            let body = json!({
                "rows": rows.iter().map(|rep| json!({
                    "dims": [rep.dims.0, rep.dims.1, rep.dims.2],
                    "triple": [rep.triple.p.to_string(), rep.triple.q.to_string(), rep.triple.r.to_string()],
                    "lhs": rep.lhs,
                    "rhs": rep.rhs,
                    "relerr": rep.rel_err,
                    "equal": rep.equal,
                })).collect::<Vec<_>>(),
                "all_equal": all_equal,
            });
            emit(cli, &json_report(config_json(cli, "sharpness"), body))?;
        }
        Format::Csv => {
            let mut s = config_comment(cli, "sharpness");
            s.push_str("l,m,n,p,q,r,lhs,rhs,relerr,equal\n");
            for rep in &rows {
                writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{}",
                    rep.dims.0, rep.dims.1, rep.dims.2, rep.triple.p, rep.triple.q, rep.triple.r,
                    rep.lhs, rep.rhs, rep.rel_err, rep.equal
                )?;
            }
            emit(cli, &s)?;
        }
    }
    Ok(if all_equal { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_identity(cli: &Cli, dims_max: usize) -> anyhow::Result<ExitCode> {
    let branch_triples = [
        ("1", "2", "3"),
        ("1", "3", "2"),
        ("2", "1", "3"),
        ("3", "1", "2"),
        ("2", "3", "1"),
        ("3", "2", "1"),
    ];
    let mut s = config_comment(cli, "identity");
    s.push_str("l,m,n,p,q,r,closed_form,direct,relerr\n");
    let mut rows = Vec::new();
    let mut ok = true;
    for l in 1..=dims_max {
        for m in 1..=dims_max {
            for n in 1..=dims_max {
                for (p, q, r) in branch_triples {
                    let t = parse_triple(p, q, r)?;
                    let cf = identity_quotient_closed_form(l, m, n, t);
                    let direct = identity_quotient_direct(l, m, n, t)?;
                    let rel = (cf - direct).abs() / cf.abs().max(1.0);
                    ok &= rel <= 1e-12;
                    writeln!(s, "{l},{m},{n},{p},{q},{r},{cf},{direct},{rel}")?;
                    rows.push(json!({
                        "dims": [l, m, n],
                        "triple": [p, q, r],
                        "closed_form": cf,
                        "direct": direct,
                        "relerr": rel,
                    }));
                }
            }
        }
    }
    match format_for(cli, true) {
        Format::Csv => emit(cli, &s)?,
        Format::Json => emit(
            cli,
            &json_report(config_json(cli, "identity"), json!({ "rows": rows, "all_equal": ok })),
        )?,
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn parse_case(case: &str, q: Option<&str>, r: Option<&str>) -> anyhow::Result<DivergenceCase> {
    let need = |opt: Option<&str>, name: &str| {
        opt.map(parse_exponent)
            .transpose()?
            .ok_or_else(|| anyhow!("case {case:?} needs --{name}"))
    };
    let parsed = match case.to_ascii_lowercase().as_str() {
        "i" => DivergenceCase::IQ { q: need(q, "q")? },
        "i-conj" => DivergenceCase::IQConjugate { q: need(q, "q")? },
        "ii" => DivergenceCase::IIR { r: need(r, "r")? },
        "ii-conj" => DivergenceCase::IIRConjugate { r: need(r, "r")? },
        "ii-r2" => DivergenceCase::IIRTwo,
        other => return Err(anyhow!("unknown case {other:?}; use i, i-conj, ii, ii-conj or ii-r2")),
    };
    parsed.validate()?;
    Ok(parsed)
}

fn cmd_diverge(cli: &Cli, case: &str, q: Option<&str>, r: Option<&str>, sizes: &str) -> anyhow::Result<ExitCode> {
    let case = parse_case(case, q, r)?;
    let sizes = parse_sizes(sizes)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for &n in &sizes {
        let pt = divergence_experiment(case, n, cli.cap)?;
        ok &= pt.quotient >= pt.predicted_floor - 1e-9 * pt.predicted_floor;
        rows.push(pt);
    }
    match format_for(cli, true) {
        Format::Csv => {
            let mut s = config_comment(cli, "diverge");
            s.push_str("case,n,quotient,predicted_floor\n");
            for pt in &rows {
                writeln!(s, "{},{},{},{}", pt.case, pt.n, pt.quotient, pt.predicted_floor)?;
            }
            emit(cli, &s)?;
        }
        Format::Json => {
            let body = json!({ "rows": rows });
            emit(cli, &json_report(config_json(cli, "diverge"), body))?;
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_unique(cli: &Cli, p: &str, q: &str, r: &str, sizes: &str) -> anyhow::Result<ExitCode> {
    let e = parse_triple(p, q, r)?;
    let sizes = parse_sizes(sizes)?;
    let v = uniqueness_verdict(e, &sizes, cli.cap)?;
    let ok = v.slope_ok.unwrap_or(true);
    match format_for(cli, false) {
        Format::Json => {
            let body = serde_json::to_value(&v)?;
            emit(cli, &json_report(config_json(cli, "unique"), body))?;
        }
        Format::Csv => {
            let mut s = config_comment(cli, "unique");
            s.push_str("p,q,r,verdict,case,g,slope,slope_ok\n");
            let verdict = match v.kind {
                VerdictKind::BoundedCandidate => "bounded-candidate",
                VerdictKind::Diverges => "diverges",
            };
            writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                e.p,
                e.q,
                e.r,
                verdict,
                v.case.as_deref().unwrap_or(""),
                v.g.map(|x| x.to_string()).unwrap_or_default(),
                v.slope.map(|x| x.to_string()).unwrap_or_default(),
                v.slope_ok.map(|x| x.to_string()).unwrap_or_default(),
            )?;
            emit(cli, &s)?;
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_strassen_bench(cli: &Cli, max_n: usize, cutoff: usize) -> anyhow::Result<ExitCode> {
    let mut s = config_comment(cli, "strassen bench");
    s.push_str("n,cutoff,mult_count_strassen,mult_count_naive,max_rel_err\n");
    let mut rows = Vec::new();
    let mut ok = true;
    let mut n = 2usize;
    while n <= max_n {
        let mut rng = mmtensor::seeding::rng_for(cli.seed, n as u64);
        let mut draw = |count: usize| -> Vec<f64> {
            (0..count)
                .map(|_| mmtensor::seeding::standard_normal(&mut rng))
                .collect()
        };
        let a = Matrix::new(n, n, draw(n * n))?;
        let b = Matrix::new(n, n, draw(n * n))?;
        let (c, count) = strassen_recursive(&a, &b, cutoff)?;
        let exact = a.matmul(&b)?;
        let mut num = 0.0f64;
        let mut den = 0.0f64;
        for (x, y) in c.as_slice().iter().zip(exact.as_slice()) {
            num += (x - y) * (x - y);
            den += y * y;
        }
        let rel = if den > 0.0 { (num / den).sqrt() } else { 0.0 };
        ok &= rel <= 1e-8;
        let naive = (n * n * n) as u64;
        writeln!(s, "{n},{cutoff},{count},{naive},{rel}")?;
        rows.push(json!({
            "n": n, "cutoff": cutoff,
            "mult_count_strassen": count,
            "mult_count_naive": naive,
            "max_rel_err": rel,
        }));
        n *= 2;
    }
    match format_for(cli, true) {
        Format::Csv => emit(cli, &s)?,
        Format::Json => emit(cli, &json_report(config_json(cli, "strassen bench"), json!({ "rows": rows })))?,
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_strassen_verify(cli: &Cli, file: &Path, dims: &[usize], tolerance: f64) -> anyhow::Result<ExitCode> {
    if dims.len() != 3 {
        return Err(anyhow!("--dims needs exactly three values"));
    }
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("reading {}", file.display()))?;
    let d: RankDecomposition<f64> = serde_json::from_str(&text).map_err(|e| {
        CoreError::Parse {
            line: e.line(),
            msg: e.to_string(),
        }
    })?;
    let rep = verify_rank_decomposition(&d, dims[0], dims[1], dims[2], tolerance)?;
    let body = json!({
        "dims": dims,
        "terms": d.terms.len(),
        "valid": rep.valid,
        "max_abs_error": rep.max_abs_error,
        "tolerance": tolerance,
    });
    emit(cli, &json_report(config_json(cli, "strassen verify"), body))?;
    Ok(if rep.valid { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_witness(
    cli: &Cli,
    kind: &str,
    rows: Option<usize>,
    cols: Option<usize>,
    n: Option<usize>,
) -> anyhow::Result<ExitCode> {
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| anyhow!("witness {kind:?} needs --{name}"));
    let w = match kind.to_ascii_lowercase().as_str() {
        "e" => WitnessKind::E { rows: need(rows, "rows")?, cols: need(cols, "cols")? },
        "c" => WitnessKind::C { rows: need(rows, "rows")?, cols: need(cols, "cols")? },
        "r" => WitnessKind::R { rows: need(rows, "rows")?, cols: need(cols, "cols")? },
        "j" => WitnessKind::J { rows: need(rows, "rows")?, cols: need(cols, "cols")? },
        "ipad" => WitnessKind::IPad { rows: need(rows, "rows")?, cols: need(cols, "cols")? },
        "hadamard" => WitnessKind::Hadamard { n: need(n, "n")? },
        other => return Err(anyhow!("unknown witness kind {other:?}")),
    };
    let m = make_witness(w)?;
    match format_for(cli, true) {
        Format::Csv => emit(cli, &int_matrix_to_csv(&m))?,
        Format::Json => {
            let mj = io::matrix_to_json(&MatrixData::Real(m.to_entry::<f64>()));
            let mut s = serde_json::to_string_pretty(&mj)?;
            s.push('\n');
            emit(cli, &s)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(cli: &Cli, dims_max: usize, triples: &str) -> anyhow::Result<ExitCode> {
    let triple_list: Vec<ExponentTriple> = triples
        .split(';')
        .map(|t| {
            let parts: Vec<&str> = t.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(anyhow!("triple {t:?} must have three components"));
            }
            parse_triple(parts[0], parts[1], parts[2])
        })
        .collect::<anyhow::Result<_>>()?;
    let kg = kg_config(cli);
    let ascent = ascent_config(cli);
    let mut s = config_comment(cli, "sweep");
    s.push_str("l,m,n,p,q,r,lower,estimate,upper\n");
    let mut rows = Vec::new();
    for l in 1..=dims_max {
        for m in 1..=dims_max {
            for n in 1..=dims_max {
                for &t in &triple_list {
                    let rep = sandwich(l, m, n, t, &kg, &ascent)?;
                    writeln!(
                        s,
                        "{l},{m},{n},{},{},{},{},{},{}",
                        t.p, t.q, t.r, rep.lower, rep.estimate.value, rep.upper
                    )?;
                    rows.push(json!({
                        "dims": [l, m, n],
                        "triple": [t.p.to_string(), t.q.to_string(), t.r.to_string()],
                        "lower": rep.lower,
                        "estimate": rep.estimate.value,
                        "upper": rep.upper,
                    }));
                }
            }
        }
    }
    match format_for(cli, true) {
        Format::Csv => emit(cli, &s)?,
        Format::Json => emit(cli, &json_report(config_json(cli, "sweep"), json!({ "rows": rows })))?,
    }
    Ok(ExitCode::SUCCESS)
}
