use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use g2kit::composition;
use g2kit::exactlinalg::Subspace;
use g2kit::jordan::JordanAlgebra;
use g2kit::liealg::{derivations, JacobiMode, SCAlgebra};
use g2kit::magicsquare::{self, VerifyPolicy, SQUARE_ALGEBRAS, SQUARE_DIMS, SQUARE_NAMES};
use g2kit::rootdata::{self, build_root_system, parse_type};
use g2kit::suite::{self, SuiteOptions};
use g2kit::threeform;
use g2kit::{clifford, Error, KForm, Scalar};

#[derive(Parser)]
#[command(name = "g2kit", version, about = "Exact computations for G2, octonions, three-forms and the magic square")]
struct Cli {
    /// Output format; JSON is stable, text is for reading.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Full,
    Sampled,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum JordanOp {
    Det,
    Adj,
    Rank,
    ChCheck,
}

#[derive(Subcommand)]
enum Cmd {
    /// Orbit label and invariants of a three-form.
    ClassifyForm {
        #[arg(long)]
        n: usize,
        /// Text like "e[1,2,5]+2*e[1,3,6]", JSON, or a path to either.
        #[arg(long)]
        form: String,
    },
    /// Multiplication table of a named algebra.
    MulTable {
        /// R, C, H, O, split-C, split-H, split-O, sedenion or sextonion.
        #[arg(long)]
        algebra: String,
    },
    /// Derivation algebra of a named composition algebra (or H3(A)).
    Derive {
        #[arg(long)]
        algebra: String,
    },
    /// The 4×4 square, or one entry built and verified.
    MagicSquare {
        #[arg(long, conflicts_with = "build")]
        table: bool,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        build: Option<Vec<String>>,
        #[arg(long, value_enum, default_value = "sampled")]
        verify: VerifyMode,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow FULL Jacobi above dimension 133.
        #[arg(long)]
        deep: bool,
        /// Write structure constants to this file.
        #[arg(long)]
        export: Option<String>,
    },
    /// Per-degree dimensions of a ℤ- or ℤ_m-grading.
    Grading {
        #[arg(long = "type")]
        ty: String,
        /// 1-based node; with --affine, 0 is the affine node.
        #[arg(long)]
        node: usize,
        #[arg(long)]
        affine: bool,
    },
    /// The dimension record for the row indexed by a ∈ {0,1,2,4,6,8}.
    Dims {
        #[arg(long)]
        a: usize,
    },
    /// Cubic Jordan operations on a 3×3 Hermitian matrix.
    Jordan {
        #[arg(long)]
        a: usize,
        #[arg(value_enum)]
        op: JordanOp,
        /// JSON {a, diag, off} inline or as a file path.
        #[arg(long)]
        input: String,
    },
    /// Spinor constructions in dimension seven.
    Spinor {
        #[arg(long)]
        omega_chi: bool,
        /// "1+f123" style or eight coordinates.
        #[arg(long)]
        chi: String,
    },
    /// Run the verification suite, or check a structure-constant file.
    Verify {
        /// `all` for the suite.
        target: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        deep: bool,
        /// Comma-separated criterion numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
        #[arg(long, conflicts_with = "target")]
        algebra: Option<String>,
        #[arg(long, value_enum, default_value = "full")]
        mode: VerifyMode,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
}

/// How a command ended, short of an input error.
enum Outcome {
    Ok(Value, String),
    Failed(Value, String),
}

enum CliError {
    Input(String),
    Math(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidType(_) | Error::Dimension(_) | Error::DegreeOverflow(_) => {
                CliError::Input(e.to_string())
            }
            other => CliError::Math(other.to_string()),
        }
    }
}

type CmdResult = std::result::Result<Outcome, CliError>;

fn read_payload(s: &str) -> std::result::Result<String, CliError> {
    let t = s.trim_start();
    if t.starts_with('{') || t.starts_with('[') || t.contains("e[") || !std::path::Path::new(s).is_file() {
        return Ok(s.to_string());
    }
    fs::read_to_string(s).map_err(|e| CliError::Input(format!("{s}: {e}")))
}

fn parse_json(s: &str) -> std::result::Result<Value, CliError> {
    serde_json::from_str(s).map_err(|e| CliError::Input(format!("invalid JSON: {e}")))
}

fn classify_form(n: usize, form: &str) -> CmdResult {
    let text = read_payload(form)?;
    let w = if text.trim_start().starts_with('{') { KForm::from_json(&parse_json(&text)?)? } else { KForm::parse(n, &text)? };
    if w.n() != n {
        return Err(CliError::Input(format!("form lives in {} variables, --n is {n}", w.n())));
    }
    let l = threeform::classify(&w)?;
    let mut inv = json!({ "lambda_nonzero": l.lambda_nonzero, "i7_nonzero": l.i7_nonzero });
    if n == 7 {
        inv["i7"] = json!(threeform::degree7_invariant(&w)?);
        inv["q_det"] = json!(threeform::q_of(&w)?.det());
    }
    if n == 6 {
        inv["lambda"] = json!(threeform::lambda_quartic(&w)?);
    }
    let out = json!({
        "form": w.to_string(),
        "label": l.label,
        "support_rank": l.support_rank,
        "q_rank": l.q_rank,
        "stab_dim": l.stab_dim,
        "invariants": inv,
    });
    let text = format!("{}  support {}  stabilizer {}", l.label.as_str(), l.support_rank, l.stab_dim);
    Ok(Outcome::Ok(out, text))
}

fn table_output(name: &str, dim: usize, table: Vec<Vec<Vec<Scalar>>>) -> Outcome {
    let mut text = String::new();
    for (i, row) in table.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| element_text(v)).collect();
        text.push_str(&format!("e{i}: {}\n", cells.join(" | ")));
    }
    Outcome::Ok(json!({ "algebra": name, "dim": dim, "table": table }), text.trim_end().to_string())
}

fn element_text(v: &[Scalar]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| if c.is_one() { format!("e{k}") } else { format!("({c})e{k}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn mul_table(name: &str) -> CmdResult {
    if name == "sextonion" {
        let o = composition::canonical_octonions();
        let mut a = o.zero();
        a[4] = Scalar::one();
        a[5] = Scalar::i();
        let mut b = o.zero();
        b[6] = Scalar::one();
        b[7] = -Scalar::i();
        let s = composition::sextonions(&o, &Subspace::from_spanning(8, vec![a, b]))?;
        let mut out = table_output("sextonion", 6, s.table.clone());
        if let Outcome::Ok(v, _) = &mut out {
            v["basis_in_octonions"] = json!(s.basis);
            v["q_rank"] = json!(s.q_rank);
        }
        return Ok(out);
    }
    let alg = composition::by_name(name)?;
    Ok(table_output(alg.name(), alg.dim(), alg.table()))
}

fn derive(name: &str) -> CmdResult {
    let sc = match name.strip_prefix("H3(").and_then(|r| r.strip_suffix(')')) {
        Some(inner) => {
            let a = composition::by_name(inner)?.dim();
            JordanAlgebra::new(a)?.product_table()
        }
        None => SCAlgebra::from_comp(&composition::by_name(name)?),
    };
    let der = derivations(&sc);
    let out = json!({ "algebra": name, "dim": der.dim(), "structure_constants": der.sc.to_json() });
    Ok(Outcome::Ok(out, format!("Der({name}) has dimension {}", der.dim())))
}

fn square_table() -> CmdResult {
    let mut rows = Vec::new();
    let mut text = format!("{:>4}", "");
    for b in SQUARE_ALGEBRAS {
        text.push_str(&format!("{b:>12}"));
    }
    for (i, a) in SQUARE_ALGEBRAS.iter().enumerate() {
        text.push_str(&format!("\n{a:>4}"));
        let mut row = Vec::new();
        for j in 0..4 {
            row.push(json!({ "name": SQUARE_NAMES[i][j], "dim": SQUARE_DIMS[i][j] }));
            text.push_str(&format!("{:>12}", format!("{} {}", SQUARE_NAMES[i][j], SQUARE_DIMS[i][j])));
        }
        rows.push(json!({ "a": a, "entries": row }));
    }
    Ok(Outcome::Ok(json!({ "rows": SQUARE_ALGEBRAS, "cols": SQUARE_ALGEBRAS, "table": rows }), text))
}

#[allow(clippy::too_many_arguments)]
fn square_build(a: &str, b: &str, verify: VerifyMode, samples: usize, seed: u64, deep: bool, export: Option<&str>) -> CmdResult {
    let policy = match verify {
        VerifyMode::Full => VerifyPolicy::Full,
        VerifyMode::Sampled => VerifyPolicy::Sampled { count: samples, seed },
        VerifyMode::None => VerifyPolicy::None,
    };
    if matches!(verify, VerifyMode::Full) && !deep {
        let i = SQUARE_ALGEBRAS.iter().position(|x| x == &a).ok_or_else(|| CliError::Input(format!("unknown algebra '{a}'")))?;
        let j = SQUARE_ALGEBRAS.iter().position(|x| x == &b).ok_or_else(|| CliError::Input(format!("unknown algebra '{b}'")))?;
        if SQUARE_DIMS[i][j] > 133 {
            return Err(CliError::Input("FULL Jacobi above dimension 133 needs --deep".into()));
        }
    }
    let g = magicsquare::vinberg_build_named(a, b, policy)?;
    if let Some(path) = export {
        let s = serde_json::to_string_pretty(&g.sc.to_json()).expect("serializable");
        fs::write(path, s + "\n").map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    }
    let killing = g2kit::liealg::killing_rank(&g.sc);
    let out = json!({
        "a": a,
        "b": b,
        "dim": g.dim(),
        "tri_a_dim": g.tri_a_dim,
        "tri_b_dim": g.tri_b_dim,
        "slot_dim": g.slot_dim,
        "calibration": { "c": g.calibration.c, "alpha": g.calibration.alpha, "beta": g.calibration.beta },
        "jacobi": g.jacobi,
        "killing_rank": killing,
    });
    let ok = g.jacobi.as_ref().is_none_or(|j| j.passed) && killing == g.dim();
    let text = format!(
        "g({a},{b}): dim {}, Jacobi {}, Killing rank {killing}",
        g.dim(),
        g.jacobi.as_ref().map_or("not checked".to_string(), |j| format!("{} {}", j.mode, if j.passed { "ok" } else { "FAILED" }))
    );
    Ok(if ok { Outcome::Ok(out, text) } else { Outcome::Failed(out, text) })
}

fn grading(ty: &str, node: usize, affine: bool) -> CmdResult {
    let (letter, rank) = parse_type(ty)?;
    let rs = build_root_system(letter, rank)?;
    let r = if affine { rootdata::zm_grading(&rs, node)? } else { rootdata::z_grading(&rs, node)? };
    let text = r.dims.iter().map(|(d, n)| format!("{d}: {n}")).collect::<Vec<_>>().join(", ");
    Ok(Outcome::Ok(json!(r), format!("{} ({}), degree-0 type {}", text, r.kind, r.degree_zero_type)))
}

fn dims(a: usize) -> CmdResult {
    if ![0, 1, 2, 4, 6, 8].contains(&a) {
        return Err(CliError::Input(format!("--a must be one of 0, 1, 2, 4, 6, 8; got {a}")));
    }
    let d = rootdata::magic_dimension_formulas(a)?;
    let text = format!("X1..X4 = {} {} {} {}, V1..V4 = {} {} {} {}", d.x1, d.x2, d.x3, d.x4, d.v1, d.v2, d.v3, d.v4);
    Ok(Outcome::Ok(json!(d), text))
}

fn jordan(a: usize, op: JordanOp, input: &str) -> CmdResult {
    let j = JordanAlgebra::new(a)?;
    let v = parse_json(&read_payload(input)?)?;
    if let Some(given) = v.get("a").and_then(Value::as_u64) {
        if given as usize != a {
            return Err(CliError::Input(format!("element has a = {given}, --a is {a}")));
        }
    }
    let m = j.element_from_json(&v)?;
    Ok(match op {
        JordanOp::Det => {
            let d = j.det(&m);
            Outcome::Ok(json!({ "det": d }), d.to_string())
        }
        JordanOp::Adj => {
            let adj = j.adjugate(&m);
            Outcome::Ok(json!({ "adj": j.element_to_json(&adj) }), j.element_to_json(&adj).to_string())
        }
        JordanOp::Rank => {
            let r = j.rank(&m);
            Outcome::Ok(json!({ "rank": r }), r.to_string())
        }
        JordanOp::ChCheck => {
            let res = j.cayley_hamilton_residual(&m);
            let out = json!({ "residual": j.element_to_json(&res), "passed": j.is_zero(&res) });
            if j.is_zero(&res) {
                Outcome::Ok(out, "Cayley–Hamilton holds".into())
            } else {
                Outcome::Failed(out, "Cayley–Hamilton residual is nonzero".into())
            }
        }
    })
}

fn spinor(omega_chi: bool, chi: &str) -> CmdResult {
    let s = clifford::Spinor::parse(chi)?;
    if !omega_chi {
        let k = clifford::pure_spinor_kernel(&s)?;
        let out = json!({ "chi": s.0, "kernel_dim": k.dim(), "kernel": k.basis(), "pure": k.dim() == 3 });
        return Ok(Outcome::Ok(out, format!("Clifford kernel of dimension {}", k.dim())));
    }
    let w = clifford::omega_chi(&s);
    let l = threeform::classify(&w)?;
    let out = json!({ "chi": s.0, "form": w.to_string(), "label": l.label, "stab_dim": l.stab_dim });
    Ok(Outcome::Ok(out, format!("{}  {}  stabilizer {}", w, l.label.as_str(), l.stab_dim)))
}

fn verify_all(seed: u64, deep: bool, only: &[usize]) -> CmdResult {
    let opts = SuiteOptions { seed, deep };
    let ids: Vec<usize> = if only.is_empty() { (1..=16).collect() } else { only.to_vec() };
    if let Some(bad) = ids.iter().find(|&&i| !(1..=16).contains(&i)) {
        return Err(CliError::Input(format!("no criterion {bad}")));
    }
    let results: Vec<_> = ids.iter().map(|&i| suite::run_criterion(i, opts)).collect();
    let text = results
        .iter()
        .map(|r| format!("[{:>2}] {} {}: {}", r.id, if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail))
        .collect::<Vec<_>>()
        .join("\n");
    // Timings vary run to run and stay out of the JSON.
    let rows: Vec<Value> =
        results.iter().map(|r| json!({ "id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail })).collect();
    let all = results.iter().all(|r| r.passed);
    let out = json!({ "seed": seed, "deep": deep, "passed": all, "criteria": rows });
    Ok(if all { Outcome::Ok(out, text) } else { Outcome::Failed(out, text) })
}

fn verify_algebra(path: &str, mode: VerifyMode, samples: usize, seed: u64) -> CmdResult {
    let v = parse_json(&read_payload(path)?)?;
    let mode = match mode {
        VerifyMode::Full => JacobiMode::Full,
        VerifyMode::Sampled => JacobiMode::Sampled { count: samples, seed },
        VerifyMode::None => return Err(CliError::Input("--mode must be full or sampled".into())),
    };
    let r = suite::verify_algebra_json(&v, mode)?;
    let text = match r.witness {
        Some((i, j, k)) => format!("Jacobi fails at basis triple ({i}, {j}, {k})"),
        None if !r.skew => "bracket is not antisymmetric".into(),
        None => format!("Jacobi holds ({}, {} triples)", r.mode, r.checked),
    };
    Ok(if r.passed { Outcome::Ok(json!(r), text) } else { Outcome::Failed(json!(r), text) })
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.cmd {
        Cmd::ClassifyForm { n, form } => classify_form(*n, form),
        Cmd::MulTable { algebra } => mul_table(algebra),
        Cmd::Derive { algebra } => derive(algebra),
        Cmd::MagicSquare { table, build, verify, samples, seed, deep, export } => match build {
            Some(ab) => square_build(&ab[0], &ab[1], *verify, *samples, *seed, *deep, export.as_deref()),
            None if *table => square_table(),
            None => Err(CliError::Input("magic-square needs --table or --build A B".into())),
        },
        Cmd::Grading { ty, node, affine } => grading(ty, *node, *affine),
        Cmd::Dims { a } => dims(*a),
        Cmd::Jordan { a, op, input } => jordan(*a, *op, input),
        Cmd::Spinor { omega_chi, chi } => spinor(*omega_chi, chi),
        Cmd::Verify { target, seed, deep, only, algebra, mode, samples } => match (target.as_deref(), algebra) {
            (_, Some(path)) => verify_algebra(path, *mode, *samples, *seed),
            (Some("all"), None) => verify_all(*seed, *deep, only),
            (Some(t), None) => Err(CliError::Input(format!("unknown verify target '{t}'"))),
            (None, None) => Err(CliError::Input("verify needs `all` or --algebra FILE".into())),
        },
    }
}

fn emit(format: Format, v: &Value, text: &str) {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable"),
        Format::Text => text.to_string(),
    };
    // A closed pipe (e.g. `| head`) is not an error worth a panic.
    let _ = writeln!(std::io::stdout().lock(), "{body}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok(v, t)) => {
            emit(cli.format, &v, &t);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(v, t)) => {
            emit(cli.format, &v, &t);
            ExitCode::from(1)
        }
        Err(CliError::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Math(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
    }
}
