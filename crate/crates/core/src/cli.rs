//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed verification or other runtime error, 2 usage or parse error,
//! 3 closure with more than one component, 4 tensor dimension over the cap.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alexander::{Alexander, AlexanderOptions};
use crate::braiding::check_yang_baxter;
use crate::center::kauffman;
use crate::center::{colored_jones, CentralDecomposition, Decomposer, DecomposerOptions, EngineKind, Extraction};
use crate::error::{Error, Result};
use crate::repn::{build_irreducible, build_projective, build_x_lambda, build_y_glued};
use crate::scalar::{ComplexScalar, CyclotomicNumber, Exact, Numeric, DEFAULT_PRECISION};
use crate::tangle::{preset, random_knot_braid, random_word, FramedBraidWord, DEFAULT_CAP, PRESETS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MULTI_COMPONENT: i32 = 3;
pub const EXIT_CAP: i32 = 4;

/// JSON schema version.
pub const SCHEMA: u32 = 1;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidParameter(_) => EXIT_PARSE,
        Error::MultiComponent { .. } => EXIT_MULTI_COMPONENT,
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_FAILURE,
    }
}

#[derive(Parser, Debug)]
#[command(name = "logknot", version, about = "Logarithmic knot invariants at q = exp(πi/p)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose the universal invariant: a_s, b_s^+, b_s^-.
    Compute(ComputeArgs),
    /// Colored Jones value a_s, with the Kauffman bracket value for s = 2.
    Jones(JonesArgs),
    /// Colored Alexander value O_λ and its derivative.
    Alexander(AlexanderArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// List preset knots.
    Presets(PresetArgs),
}

#[derive(Args, Debug, Clone)]
pub struct KnotArgs {
    /// Preset knot name (see `presets`).
    #[arg(long, conflicts_with_all = ["braid", "strands"])]
    pub knot: Option<String>,
    /// Braid word, e.g. "s1 S2 s1 S2".
    #[arg(long, requires = "strands")]
    pub braid: Option<String>,
    /// Number of strands of --braid.
    #[arg(long, requires = "braid")]
    pub strands: Option<usize>,
}

impl KnotArgs {
    fn resolve(&self, fallback: Option<&str>) -> Result<FramedBraidWord> {
        match (&self.knot, &self.braid, self.strands) {
            (Some(k), _, _) => preset(k),
            (None, Some(b), Some(n)) => FramedBraidWord::parse(b, n),
            _ => match fallback {
                Some(k) => preset(k),
                None => Err(Error::Parse("give either --knot or --braid with --strands".into())),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Block,
    Dense,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=64))]
    pub p: u32,
    #[command(flatten)]
    pub knot: KnotArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Divide out the framing with the ribbon element.
    #[arg(long)]
    pub framing_correct: bool,
    #[arg(long, env = "LOGKNOT_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[arg(long, value_enum, default_value_t = Engine::Block)]
    pub engine: Engine,
}

#[derive(Args, Debug)]
pub struct JonesArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=64))]
    pub p: u32,
    #[command(flatten)]
    pub knot: KnotArgs,
    /// Color, 1 <= s <= p.
    #[arg(long, default_value_t = 2)]
    pub s: u32,
    /// Keep the framing factor instead of dividing it out.
    #[arg(long)]
    pub framed: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, env = "LOGKNOT_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Args, Debug)]
pub struct AlexanderArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=64))]
    pub p: u32,
    #[command(flatten)]
    pub knot: KnotArgs,
    /// Real part of λ.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    /// Imaginary part of λ.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub lambda_im: f64,
    /// Also compute dO/dλ.
    #[arg(long)]
    pub derivative: bool,
    /// Also check the off-diagonal identity on Y(λ, s) for this s.
    #[arg(long)]
    pub glued: Option<u32>,
    #[arg(long, env = "LOGKNOT_PRECISION", default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, env = "LOGKNOT_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Relations,
    YangBaxter,
    Markov,
    ConnectedSum,
    DerivativeFormula,
    Symmetry,
    Offdiagonal,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=64))]
    pub p: u32,
    #[arg(long, value_enum, required = true)]
    pub suite: Vec<Suite>,
    /// Knot for knot-dependent suites (default: trefoil).
    #[command(flatten)]
    pub knot: KnotArgs,
    /// Second summand for the connected-sum suite.
    #[arg(long, default_value = "figure8")]
    pub other: String,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub cases: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[arg(long, env = "LOGKNOT_PRECISION", default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
    #[arg(long, env = "LOGKNOT_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct PresetArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Approx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Approx {
    fn from(z: Complex64) -> Self {
        Approx { re: z.re, im: z.im }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Coefficient {
    pub s: u32,
    pub exact: String,
    pub approx: Approx,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct KnotInfo {
    pub braid: String,
    pub strands: usize,
    pub framing: i64,
}

impl KnotInfo {
    fn of(w: &FramedBraidWord) -> Self {
        KnotInfo { braid: w.to_string(), strands: w.strands(), framing: w.framing() }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct DecompositionOutput {
    pub schema: u32,
    pub p: u32,
    pub knot: KnotInfo,
    pub framing_corrected: bool,
    pub a: Vec<Coefficient>,
    pub b_plus: Vec<Coefficient>,
    pub b_minus: Vec<Coefficient>,
}

fn coefficient(s: u32, x: &CyclotomicNumber) -> Coefficient {
    Coefficient { s, exact: x.to_string(), approx: x.to_c64().into() }
}

impl DecompositionOutput {
    pub fn new(word: &FramedBraidWord, d: &CentralDecomposition<CyclotomicNumber>) -> Self {
        DecompositionOutput {
            schema: SCHEMA,
            p: d.p,
            knot: KnotInfo::of(word),
            framing_corrected: d.framing_corrected,
            a: d.a.iter().enumerate().map(|(s, x)| coefficient(s as u32, x)).collect(),
            b_plus: d.b_plus.iter().enumerate().map(|(k, x)| coefficient(k as u32 + 1, x)).collect(),
            b_minus: d.b_minus.iter().enumerate().map(|(k, x)| coefficient(k as u32 + 1, x)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    fn rows(&self) -> impl Iterator<Item = (&'static str, &Coefficient)> {
        self.a
            .iter()
            .map(|c| ("a", c))
            .chain(self.b_plus.iter().map(|c| ("b_plus", c)))
            .chain(self.b_minus.iter().map(|c| ("b_minus", c)))
    }
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.12}{:+.12}i", z.re, z.im)
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Compute(a) => cmd_compute(a, out),
        Command::Jones(a) => cmd_jones(a, out),
        Command::Alexander(a) => cmd_alexander(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Presets(a) => cmd_presets(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::InvalidParameter(format!("output error: {e}"))
}

fn json_line<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(v).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    writeln!(out, "{text}").map_err(io)
}

pub fn cmd_compute(a: &ComputeArgs, out: &mut dyn Write) -> Result<i32> {
    let word = a.knot.resolve(None)?;
    word.ensure_knot()?;
    let opts = DecomposerOptions {
        engine: match a.engine {
            Engine::Block => EngineKind::Block,
            Engine::Dense => EngineKind::Dense,
        },
        extraction: Extraction::Full,
        cap: a.cap,
        framing_correct: a.framing_correct,
    };
    let d = Decomposer::new(&Exact::new(a.p)?, opts)?.decompose(&word)?;
    let o = DecompositionOutput::new(&word, &d);
    match a.format {
        Format::Json => json_line(out, &o)?,
        Format::Csv => {
            writeln!(out, "coefficient,s,exact,re,im").map_err(io)?;
            for (name, c) in o.rows() {
                writeln!(out, "{name},{},\"{}\",{},{}", c.s, c.exact, c.approx.re, c.approx.im).map_err(io)?;
            }
        }
        Format::Table => {
            writeln!(
                out,
                "p = {}  braid = \"{}\"  strands = {}  framing = {}{}",
                o.p,
                o.knot.braid,
                o.knot.strands,
                o.knot.framing,
                if o.framing_corrected { " (corrected)" } else { "" }
            )
            .map_err(io)?;
            writeln!(out, "{:<8} {:>3}  {:<34} exact", "coeff", "s", "approx").map_err(io)?;
            for (name, c) in o.rows() {
                let z = Complex64::new(c.approx.re, c.approx.im);
                writeln!(out, "{:<8} {:>3}  {:<34} {}", name, c.s, fmt_c(z), c.exact).map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct JonesOutput {
    schema: u32,
    p: u32,
    s: u32,
    knot: KnotInfo,
    framing_corrected: bool,
    value: Coefficient,
    /// Kauffman bracket evaluation, only for `s = 2` with the framing divided out.
    oracle: Option<Approx>,
    jones_polynomial_t: Option<String>,
}

pub fn cmd_jones(a: &JonesArgs, out: &mut dyn Write) -> Result<i32> {
    let word = a.knot.resolve(None)?;
    word.ensure_knot()?;
    if a.s < 1 || a.s > a.p {
        return Err(Error::InvalidParameter(format!("color s={} outside 1..={}", a.s, a.p)));
    }
    let v = colored_jones(&Exact::new(a.p)?, &word, a.s, !a.framed, a.cap)?;
    let oracle = if a.s == 2 && !a.framed { Some(kauffman::jones_at_root(&word, a.p)?) } else { None };
    let poly = kauffman::jones_in_t(&word).ok().map(|l| l.to_string().replace('x', "t"));
    let o = JonesOutput {
        schema: SCHEMA,
        p: a.p,
        s: a.s,
        knot: KnotInfo::of(&word),
        framing_corrected: !a.framed,
        value: coefficient(a.s, &v),
        oracle: oracle.map(Into::into),
        jones_polynomial_t: poly.clone(),
    };
    match a.format {
        Format::Json => json_line(out, &o)?,
        Format::Csv => {
            writeln!(out, "s,exact,re,im,oracle_re,oracle_im").map_err(io)?;
            let (ore, oim) = oracle.map(|z| (z.re.to_string(), z.im.to_string())).unwrap_or_default();
            writeln!(out, "{},\"{}\",{},{},{ore},{oim}", a.s, o.value.exact, o.value.approx.re, o.value.approx.im)
                .map_err(io)?;
        }
        Format::Table => {
            writeln!(out, "J_{}  = {}", a.s, fmt_c(v.to_c64())).map_err(io)?;
            writeln!(out, "exact = {}", o.value.exact).map_err(io)?;
            if let Some(z) = oracle {
                writeln!(out, "Kauffman bracket = {}  (|diff| = {:.3e})", fmt_c(z), (z - v.to_c64()).norm())
                    .map_err(io)?;
            }
            if let Some(p) = poly {
                writeln!(out, "V(t) = {p}").map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct AlexanderOutput {
    schema: u32,
    p: u32,
    knot: KnotInfo,
    lambda: Approx,
    value: Approx,
    value_decimal: (String, String),
    derivative: Option<Approx>,
    derivative_error: Option<f64>,
    ill_conditioned: bool,
    glued: Option<GluedOutput>,
}

#[derive(Serialize)]
struct GluedOutput {
    s: u32,
    offdiagonal: Approx,
    lhs: Approx,
    rhs: Approx,
    residual: f64,
}

pub fn cmd_alexander(a: &AlexanderArgs, out: &mut dyn Write) -> Result<i32> {
    let word = a.knot.resolve(None)?;
    word.ensure_knot()?;
    let opts = AlexanderOptions { precision: a.precision, step: a.step, cap: a.cap, ..Default::default() };
    let alex = Alexander::new(a.p, opts)?;
    let lambda = Complex64::new(a.lambda, a.lambda_im);
    let ev = alex.evaluate(&word, lambda, a.derivative)?;
    let glued = match a.glued {
        Some(s) => {
            let c = alex.offdiagonal_check(&word, lambda, s)?;
            Some(GluedOutput {
                s,
                offdiagonal: c.offdiagonal.into(),
                lhs: c.lhs.into(),
                rhs: c.rhs.into(),
                residual: c.residual,
            })
        }
        None => None,
    };
    let o = AlexanderOutput {
        schema: SCHEMA,
        p: a.p,
        knot: KnotInfo::of(&word),
        lambda: lambda.into(),
        value: ev.value.to_c64().into(),
        value_decimal: ev.value.to_decimal_strings(),
        derivative: ev.derivative.as_ref().map(|d| d.value.to_c64().into()),
        derivative_error: ev.derivative.as_ref().map(|d| d.error_estimate),
        ill_conditioned: ev.ill_conditioned,
        glued,
    };
    match a.format {
        Format::Json => json_line(out, &o)?,
        Format::Csv => {
            writeln!(out, "quantity,re,im").map_err(io)?;
            writeln!(out, "value,{},{}", o.value.re, o.value.im).map_err(io)?;
            if let Some(d) = &o.derivative {
                writeln!(out, "derivative,{},{}", d.re, d.im).map_err(io)?;
            }
            if let Some(g) = &o.glued {
                writeln!(out, "offdiagonal,{},{}", g.offdiagonal.re, g.offdiagonal.im).map_err(io)?;
            }
        }
        Format::Table => {
            writeln!(out, "O_λ at λ = {}:  {}", fmt_c(lambda), fmt_c(ev.value.to_c64())).map_err(io)?;
            if let Some(d) = &ev.derivative {
                writeln!(out, "dO/dλ = {}  (Richardson gap {:.3e})", fmt_c(d.value.to_c64()), d.error_estimate)
                    .map_err(io)?;
            }
            if ev.ill_conditioned {
                writeln!(out, "warning: λ+1 is close to an integer; X(λ+1) is nearly reducible").map_err(io)?;
            }
            if let Some(g) = &o.glued {
                writeln!(
                    out,
                    "Y(λ,{}) off-diagonal x = {}; O_(λ-2s-1) = {}, O_(λ-1) - [s][λ-s]x = {}; residual {:.3e}",
                    g.s,
                    fmt_c(Complex64::new(g.offdiagonal.re, g.offdiagonal.im)),
                    fmt_c(Complex64::new(g.lhs.re, g.lhs.im)),
                    fmt_c(Complex64::new(g.rhs.re, g.rhs.im)),
                    g.residual
                )
                .map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Outcome of one suite.
#[derive(Serialize, Debug, Clone)]
pub struct SuiteResult {
    pub suite: String,
    pub passed: bool,
    pub residual: f64,
    pub detail: String,
}

fn suite_result(suite: &str, passed: bool, residual: f64, detail: String) -> SuiteResult {
    SuiteResult { suite: suite.to_string(), passed, residual, detail }
}

/// Module relations for every module at `p`.
pub fn suite_relations(p: u32, precision: usize) -> Result<SuiteResult> {
    let e = Exact::new(p)?;
    let mut reports = Vec::new();
    for s in 1..=p {
        for alpha in [1, -1] {
            reports.push(build_irreducible(&e, alpha, s)?.check_relations());
        }
    }
    for t in 1..p {
        for alpha in [1, -1] {
            reports.push(build_projective(&e, alpha, t)?.check_relations());
        }
    }
    let n = Numeric::new(p, precision)?;
    for l in [Complex64::new(0.37, 0.0), Complex64::new(1.61, 0.2)] {
        let lam = ComplexScalar::from_c64(l, precision);
        reports.push(build_x_lambda(&n, &lam).check_relations());
        // Y(λ, p) has E^p d_{p-1} = Π[n][λ-2p-n] c_{p-1} ≠ 0, so it is not a module
        for s in 1..p {
            reports.push(build_y_glued(&n, &lam, s)?.check_relations());
        }
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.module.as_str()).collect();
    let residual = reports.iter().flat_map(|r| r.checks.iter().map(|c| c.residual)).fold(0.0, f64::max);
    Ok(suite_result(
        "relations",
        failed.is_empty(),
        residual,
        format!("{} modules checked (Y(λ,s) for s < p); failing: {:?}", reports.len(), failed),
    ))
}

pub fn suite_yang_baxter(p: u32) -> Result<SuiteResult> {
    let e = Exact::new(p)?;
    let mut modules = vec![build_irreducible(&e, 1, 2)?];
    if p <= 3 {
        modules.push(build_projective(&e, 1, 1)?);
    }
    let mut passed = true;
    let mut names = Vec::new();
    let mut residual: f64 = 0.0;
    for m in &modules {
        let r = check_yang_baxter(m)?;
        passed &= r.passed;
        residual = residual.max(r.residual);
        names.push(r.module);
    }
    Ok(suite_result("yang-baxter", passed, residual, format!("modules {names:?}")))
}

pub fn suite_markov(p: u32, seed: u64, cases: usize, cap: usize) -> Result<SuiteResult> {
    let d = Decomposer::new(&Exact::new(p)?, DecomposerOptions { cap, ..Default::default() })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..cases {
        let b = random_knot_braid(&mut rng, 3, 8);
        let g = random_word(&mut rng, b.strands(), 8);
        let r = d.verify_markov(&b, &g)?;
        if !r.passed() {
            failures.push(format!("{b} (strands {}) / {g}", b.strands()));
        }
    }
    Ok(suite_result(
        "markov",
        failures.is_empty(),
        0.0,
        format!("{cases} braids, seed {seed}; failing: {failures:?}"),
    ))
}

pub fn suite_connected_sum(p: u32, k1: &FramedBraidWord, k2: &FramedBraidWord, cap: usize) -> Result<SuiteResult> {
    let d = Decomposer::new(&Exact::new(p)?, DecomposerOptions { cap, ..Default::default() })?;
    let r = d.verify_connected_sum(k1, k2)?;
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    Ok(suite_result("connected-sum", r.passed(), 0.0, format!("failing: {failed:?}")))
}

fn exact_decomposition(p: u32, word: &FramedBraidWord, cap: usize) -> Result<CentralDecomposition<CyclotomicNumber>> {
    Decomposer::new(&Exact::new(p)?, DecomposerOptions { cap, ..Default::default() })?.decompose(word)
}

pub fn suite_derivative_formula(p: u32, word: &FramedBraidWord, tol: f64, precision: usize, cap: usize) -> Result<SuiteResult> {
    let exact = exact_decomposition(p, word, cap)?;
    let alex = Alexander::new(p, AlexanderOptions { precision, cap, ..Default::default() })?;
    let r = alex.verify_derivative_formula(word, &exact, tol, tol.min(1e-8))?;
    Ok(suite_result(
        "derivative-formula",
        r.passed(),
        r.worst_b_residual(),
        format!("worst |b - formula| {:.3e}, worst |a_s - O_(s-1)| {:.3e}", r.worst_b_residual(), r.worst_a_residual()),
    ))
}

pub fn suite_symmetry(p: u32, word: &FramedBraidWord, tol: f64, precision: usize, cap: usize) -> Result<SuiteResult> {
    let exact = exact_decomposition(p, word, cap)?;
    let alex = Alexander::new(p, AlexanderOptions { precision, cap, ..Default::default() })?;
    let r = alex.verify_symmetry(word, &exact, tol)?;
    Ok(suite_result("symmetry", r.passed(), r.worst_residual(), format!("s = 1..={p}")))
}

pub fn suite_offdiagonal(p: u32, word: &FramedBraidWord, seed: u64, precision: usize, cap: usize) -> Result<SuiteResult> {
    use rand::Rng;
    let alex = Alexander::new(p, AlexanderOptions { precision, cap, ..Default::default() })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let l = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-0.5..0.5));
        for s in 1..p {
            worst = worst.max(alex.offdiagonal_check(word, l, s)?.residual);
            worst = worst.max(alex.highest_weight_residual(word, l, s)?);
        }
    }
    Ok(suite_result("offdiagonal", worst < 1e-8, worst, format!("5 random λ, s = 1..={}", p - 1)))
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let mut suites: Vec<Suite> = a.suite.clone();
    if suites.contains(&Suite::All) {
        suites = vec![
            Suite::Relations,
            Suite::YangBaxter,
            Suite::Markov,
            Suite::ConnectedSum,
            Suite::DerivativeFormula,
            Suite::Symmetry,
            Suite::Offdiagonal,
        ];
    }
    let knot = a.knot.resolve(Some("trefoil"))?;
    let mut results = Vec::new();
    for s in suites {
        let r = match s {
            Suite::Relations => suite_relations(a.p, a.precision)?,
            Suite::YangBaxter => suite_yang_baxter(a.p)?,
            Suite::Markov => suite_markov(a.p, a.seed, a.cases, a.cap)?,
            Suite::ConnectedSum => suite_connected_sum(a.p, &knot, &preset(&a.other)?, a.cap)?,
            Suite::DerivativeFormula => suite_derivative_formula(a.p, &knot, a.tolerance, a.precision, a.cap)?,
            Suite::Symmetry => suite_symmetry(a.p, &knot, a.tolerance, a.precision, a.cap)?,
            Suite::Offdiagonal => suite_offdiagonal(a.p, &knot, a.seed, a.precision, a.cap)?,
            Suite::All => unreachable!("expanded above"),
        };
        results.push(r);
    }
    match a.format {
        Format::Json => json_line(out, &serde_json::json!({"schema": SCHEMA, "p": a.p, "results": results}))?,
        Format::Csv => {
            writeln!(out, "suite,passed,residual,detail").map_err(io)?;
            for r in &results {
                writeln!(out, "{},{},{:e},\"{}\"", r.suite, r.passed, r.residual, r.detail.replace('"', "'")).map_err(io)?;
            }
        }
        Format::Table => {
            for r in &results {
                writeln!(
                    out,
                    "{} {:<14} residual {:.3e}  {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.suite,
                    r.residual,
                    r.detail
                )
                .map_err(io)?;
            }
        }
    }
    Ok(if results.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_FAILURE })
}

#[derive(Serialize)]
struct PresetOutput {
    name: &'static str,
    braid: &'static str,
    strands: usize,
    writhe: i64,
}

pub fn cmd_presets(a: &PresetArgs, out: &mut dyn Write) -> Result<i32> {
    let rows: Vec<PresetOutput> = PRESETS
        .iter()
        .map(|p| PresetOutput { name: p.name, braid: p.braid, strands: p.strands, writhe: p.word().writhe() })
        .collect();
    match a.format {
        Format::Json => json_line(out, &rows)?,
        Format::Csv => {
            writeln!(out, "name,braid,strands,writhe").map_err(io)?;
            for r in &rows {
                writeln!(out, "{},\"{}\",{},{}", r.name, r.braid, r.strands, r.writhe).map_err(io)?;
            }
        }
        Format::Table => {
            writeln!(out, "{:<12} {:<18} {:>7} {:>6}", "name", "braid", "strands", "writhe").map_err(io)?;
            for r in &rows {
                writeln!(out, "{:<12} {:<18} {:>7} {:>6}", r.name, format!("\"{}\"", r.braid), r.strands, r.writhe)
                    .map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["logknot"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn compute_unknot() {
        let (code, out, _) = call(&["compute", "--p", "3", "--knot", "unknot", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().filter(|l| l.starts_with("a,")).count(), 4);
        assert!(out.lines().filter(|l| l.starts_with("a,")).all(|l| l.contains("\"1*z^0\"")));
        assert!(out.lines().filter(|l| l.starts_with("b_")).all(|l| l.contains("\"0\"")));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["compute", "--p", "3", "--braid", "s1 s1", "--strands", "2"]).0, 3);
        assert_eq!(call(&["compute", "--p", "3", "--braid", "s3", "--strands", "2"]).0, 2);
        assert_eq!(call(&["compute", "--p", "3", "--knot", "nope"]).0, 2);
        assert_eq!(call(&["compute", "--p", "1", "--knot", "unknot"]).0, 2);
        assert_eq!(call(&["compute", "--p", "3", "--knot", "figure8", "--cap", "100"]).0, 4);
        assert_eq!(call(&["compute", "--p", "3"]).0, 2);
    }

    #[test]
    fn json_round_trips() {
        let (code, out, _) = call(&["compute", "--p", "2", "--braid", "s1 s1 s1", "--strands", "2", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["knot"]["framing"], 3);
        let field = crate::scalar::CyclotomicField::get(2).unwrap();
        let d = exact_decomposition(2, &preset("trefoil").unwrap(), DEFAULT_CAP).unwrap();
        for (k, c) in v["a"].as_array().unwrap().iter().enumerate() {
            assert_eq!(field.parse(c["exact"].as_str().unwrap()).unwrap(), d.a[k]);
        }
        for (k, c) in v["b_plus"].as_array().unwrap().iter().enumerate() {
            assert_eq!(field.parse(c["exact"].as_str().unwrap()).unwrap(), d.b_plus[k]);
        }
    }

    #[test]
    fn verify_and_presets() {
        assert_eq!(call(&["verify", "--p", "2", "--suite", "relations"]).0, 0);
        let (code, out, _) = call(&["verify", "--p", "2", "--suite", "markov", "--cases", "3"]);
        assert_eq!(code, 0, "{out}");
        let (code, out, _) = call(&["presets"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"s1 S2 s1 S2\""));
        assert_eq!(call(&["--help"]).0, 0);
    }
}
