//! The `qschub` command-line front end.
//!
//! Words are comma-separated 1-based simple indices (`--u 1,2,1`; the empty
//! word is `""` or `id`); `q`-exponents are comma-separated integers over the
//! simple coroots. A parabolic is either an ordered index list
//! (`--parabolic 1,2`) or a preset `TAG:r` (`--parabolic C9:2`), in which
//! case the ambient system is relabelled so that `Δ_P = {α_1, …, α_r}` and
//! `--type/--rank` default to the smallest ambient of the case.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or configuration error,
//! 3 resource cap exceeded. JSON output is deterministic: identical
//! arguments give byte-identical output.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grading::{grade_table, GradePrime, Grader};
use crate::parabolic::{minimal_ambient, CaseTag, ParabolicSetup};
use crate::qh::{qhp_mul, QhEngine, DEFAULT_PRODUCT_CAP};
use crate::rootsys::{build_root_system, DynkinType, RootSystem};
use crate::verify::{reproduce_table, run_suite, suite_names, Engines, SuiteReport, TableId, VerifyConfig};
use crate::weyl::{bruhat_leq, format_word, parse_word, WeylElement, DEFAULT_GROUP_CAP};

#[derive(Debug, Parser)]
#[command(name = "qschub", version, about = "Quantum Schubert calculus on G/B and G/P with graded-filtration checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cartan matrix, simple-root norms and positive roots.
    Roots,
    /// Reduced word, length and inverse of `--u`; Bruhat comparison with
    /// `--v`; coset decomposition for a parabolic.
    Weyl,
    /// `σ^u ⋆ σ^v` in `QH^*(G/B)`.
    Qmul,
    /// `σ^u ⋆_P σ^v` in `QH^*(G/P)` for minimal coset representatives.
    Qpmul,
    /// Peterson–Woodward lift of `q_λ` and its image under `ψ`.
    Pwlift,
    /// Grades of the simple coroots; with `--u`/`--lambda`, `gr` and `gr′`.
    Grade,
    /// Reproduce the case tables (all, or one with `--which`).
    Tables,
    /// Run a verification suite.
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Opts {
    /// Dynkin type letter (A–G).
    #[arg(long = "type", global = true)]
    pub letter: Option<String>,
    /// Rank of the ambient root system.
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// Ordered `Δ_P` as 1-based indices (`1,2`) or a preset `TAG:r`.
    #[arg(long, global = true)]
    pub parabolic: Option<String>,
    /// First Weyl word.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub u: Option<String>,
    /// Second Weyl word.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub v: Option<String>,
    /// Coroot coordinates over the simple coroots.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Suite for `verify` (see `verify --suite list`).
    #[arg(long, global = true, default_value = "all")]
    pub suite: String,
    /// One table, by name or number 2–7.
    #[arg(long, global = true)]
    pub which: Option<String>,
    /// Largest Weyl group to enumerate.
    #[arg(long = "cap-group", global = true, default_value_t = DEFAULT_GROUP_CAP)]
    pub cap_group: u128,
    /// Largest Weyl group for quantum products.
    #[arg(long = "cap-product", global = true, default_value_t = DEFAULT_PRODUCT_CAP)]
    pub cap_product: u128,
    /// Degree bound for the surjectivity search.
    #[arg(long = "cap-degree", global = true, default_value_t = 8)]
    pub cap_degree: i64,
    /// Radius of the coset box for ψ checks.
    #[arg(long = "box", global = true)]
    pub box_radius: Option<i64>,
    /// Seed for randomized samples.
    #[arg(long, global = true, default_value_t = VerifyConfig::default().seed)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// How `Δ_P` was specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParabolicSpec {
    /// 0-based ordered indices.
    Indices(Vec<usize>),
    Preset(CaseTag, usize),
}

/// Validated configuration of one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub ambient: Option<(DynkinType, usize)>,
    pub parabolic: Option<ParabolicSpec>,
    pub u: Option<Vec<usize>>,
    pub v: Option<Vec<usize>>,
    pub lambda: Option<Vec<i64>>,
    pub suite: String,
    pub which: Option<TableId>,
    pub verify: VerifyConfig,
    pub format: Format,
    pub out: Option<PathBuf>,
}

fn parse_coroot(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Usage(format!("bad coordinate {t:?}"))))
        .collect()
}

fn parse_parabolic(s: &str) -> Result<ParabolicSpec> {
    if let Some((tag, r)) = s.split_once(':') {
        let r = r.trim().parse().map_err(|_| Error::Usage(format!("bad preset rank in {s:?}")))?;
        return Ok(ParabolicSpec::Preset(tag.parse()?, r));
    }
    Ok(ParabolicSpec::Indices(parse_word(s)?))
}

impl RunConfig {
    /// Validates the raw options; no computation happens here.
    pub fn from_opts(o: &Opts) -> Result<RunConfig> {
        let ambient = match (&o.letter, o.rank) {
            (Some(l), Some(n)) => Some((l.parse::<DynkinType>()?, n)),
            (None, None) => None,
            _ => return Err(Error::Usage("--type and --rank go together".into())),
        };
        let parabolic = o.parabolic.as_deref().map(parse_parabolic).transpose()?;
        if let Some((letter, n)) = ambient {
            crate::rootsys::validate_type(letter, n)?;
        }
        if let Some(b) = o.box_radius {
            if b < 0 {
                return Err(Error::Usage("--box must be nonnegative".into()));
            }
        }
        let which = o.which.as_deref().map(str::parse).transpose()?;
        let verify = VerifyConfig {
            group_cap: o.cap_group,
            product_cap: o.cap_product,
            degree_bound: o.cap_degree,
            box_radius: o.box_radius,
            seed: o.seed,
            ..VerifyConfig::default()
        };
        Ok(RunConfig {
            ambient,
            parabolic,
            u: o.u.as_deref().map(parse_word).transpose()?,
            v: o.v.as_deref().map(parse_word).transpose()?,
            lambda: o.lambda.as_deref().map(parse_coroot).transpose()?,
            suite: o.suite.clone(),
            which,
            verify,
            format: o.format,
            out: o.out.clone(),
        })
    }

    fn root_system(&self) -> Result<RootSystem> {
        if let Some(setup) = self.setup_opt()? {
            return Ok(setup.root_system().clone());
        }
        let (letter, n) = self.ambient.ok_or_else(|| Error::Usage("--type and --rank are required".into()))?;
        build_root_system(letter, n)
    }

    fn setup_opt(&self) -> Result<Option<ParabolicSetup>> {
        Ok(match &self.parabolic {
            None => None,
            Some(ParabolicSpec::Preset(tag, r)) => {
                let amb = match self.ambient {
                    Some(a) => a,
                    None => minimal_ambient(*tag, *r)?,
                };
                Some(ParabolicSetup::preset(*tag, *r, Some(amb))?)
            }
            Some(ParabolicSpec::Indices(order)) => {
                let (letter, n) = self.ambient.ok_or_else(|| Error::Usage("--type and --rank are required".into()))?;
                Some(ParabolicSetup::standard(letter, n, order)?)
            }
        })
    }

    fn setup(&self) -> Result<ParabolicSetup> {
        self.setup_opt()?.ok_or_else(|| Error::Usage("--parabolic is required".into()))
    }

    fn element(&self, rs: &RootSystem, word: &Option<Vec<usize>>, flag: &str) -> Result<WeylElement> {
        let w = word.as_ref().ok_or_else(|| Error::Usage(format!("--{flag} is required")))?;
        WeylElement::from_word(rs, w)
    }

    fn coroot(&self, rs: &RootSystem) -> Result<Vec<i64>> {
        let l = self.lambda.clone().ok_or_else(|| Error::Usage("--lambda is required".into()))?;
        if l.len() != rs.rank() {
            return Err(Error::Usage(format!("--lambda needs {} coordinates", rs.rank())));
        }
        Ok(l)
    }
}

/// Output of one command: a JSON value, its text rendering, and whether
/// every check passed.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub pass: bool,
}

fn ok(json: Value, text: String) -> Output {
    Output { json, text, pass: true }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn word_of(rs: &RootSystem, w: &WeylElement) -> Vec<usize> {
    w.reduced_word(rs).iter().map(|i| i + 1).collect()
}

fn show(rs: &RootSystem, w: &WeylElement) -> String {
    format!("σ[{}]", format_word(&w.reduced_word(rs)))
}

pub fn cmd_roots(cfg: &RunConfig) -> Result<Output> {
    let rs = cfg.root_system()?;
    let roots = rs.positive_roots();
    let mut text = format!("{}: {} positive roots\ncartan:\n", rs.name(), roots.len());
    for row in rs.cartan() {
        writeln!(text, "  {row:?}").unwrap();
    }
    writeln!(text, "norms: {:?}", rs.norms()).unwrap();
    for (b, c) in roots.iter().zip(rs.positive_coroots()) {
        writeln!(text, "  {b:?}  coroot {c:?}").unwrap();
    }
    let json = json!({
        "type": rs.name(),
        "rank": rs.rank(),
        "cartan": rs.cartan(),
        "norms": rs.norms(),
        "positive_root_count": roots.len(),
        "positive_roots": roots,
        "positive_coroots": rs.positive_coroots(),
    });
    Ok(ok(json, text.trim_end().to_string()))
}

pub fn cmd_weyl(cfg: &RunConfig) -> Result<Output> {
    let rs = cfg.root_system()?;
    let u = cfg.element(&rs, &cfg.u, "u")?;
    let inv = u.inverse(&rs);
    let mut json = json!({
        "word": word_of(&rs, &u),
        "length": u.length(&rs),
        "inverse": word_of(&rs, &inv),
    });
    let mut text = format!("{} has length {}; inverse {}", show(&rs, &u), u.length(&rs), show(&rs, &inv));
    if let Some(v) = &cfg.v {
        let v = WeylElement::from_word(&rs, v)?;
        let leq = bruhat_leq(&rs, &u, &v);
        json["bruhat_leq_v"] = json!(leq);
        write!(text, "\n{} ≤ {}: {leq}", show(&rs, &u), show(&rs, &v)).unwrap();
    }
    if let Some(setup) = cfg.setup_opt()? {
        let (rep, rest) = u.coset_decompose(setup.root_system(), setup.order());
        json["coset_representative"] = json!(word_of(&rs, &rep));
        json["levi_part"] = json!(word_of(&rs, &rest));
        write!(text, "\n= {} · {} with the first factor in W^P", show(&rs, &rep), show(&rs, &rest)).unwrap();
    }
    Ok(ok(json, text))
}

pub fn cmd_qmul(cfg: &RunConfig) -> Result<Output> {
    let rs = cfg.root_system()?;
    let (u, v) = (cfg.element(&rs, &cfg.u, "u")?, cfg.element(&rs, &cfg.v, "v")?);
    let engine = QhEngine::full(&rs, cfg.verify.product_cap)?;
    let prod = engine.mul_basis(&u, &v)?;
    let setup = cfg.setup_opt()?;
    let grader = setup.as_ref().map(Grader::new);
    let mut json = to_value(&prod.to_json(&rs, grader.as_ref()));
    if let Some(g) = &grader {
        let grades: Vec<Value> = prod
            .to_json(&rs, Some(g))
            .terms
            .iter()
            .map(|t| {
                let w = WeylElement::from_word(&rs, &t.word.iter().map(|i| i - 1).collect::<Vec<_>>()).expect("valid word");
                to_value(&g.gr(&w, &t.q))
            })
            .collect();
        json["grades"] = Value::Array(grades);
    }
    let text = format!("{} ⋆ {} = {}", show(&rs, &u), show(&rs, &v), prod.display(&rs));
    Ok(ok(json, text))
}

pub fn cmd_qpmul(cfg: &RunConfig) -> Result<Output> {
    let setup = cfg.setup()?;
    let rs = setup.root_system();
    let (u, v) = (cfg.element(rs, &cfg.u, "u")?, cfg.element(rs, &cfg.v, "v")?);
    let engine = QhEngine::full(rs, cfg.verify.product_cap)?;
    let prod = qhp_mul(&setup, &engine, &u, &v)?;
    let outside: Vec<usize> = setup.outside().iter().map(|i| i + 1).collect();
    let terms: Vec<Value> = prod
        .iter()
        .map(|((key, w), c)| json!({"word": word_of(rs, w), "q": key, "coeff": crate::lattice::rational_string(c)}))
        .collect();
    let shown: Vec<String> = prod
        .iter()
        .map(|((key, w), c)| {
            let q = if key.iter().all(|&x| x == 0) { String::new() } else { format!("q{key:?}") };
            format!("{}·{q}{}", crate::lattice::rational_string(c).trim_end_matches("/1"), show(rs, w))
        })
        .collect();
    let json = json!({"setup": setup.label(), "q_coordinates": outside, "terms": terms});
    let rhs = if shown.is_empty() { "0".to_string() } else { shown.join(" + ") };
    let text = format!("{} ⋆_P {} = {rhs}\n(q exponents over the simple coroots {outside:?})", show(rs, &u), show(rs, &v));
    Ok(ok(json, text))
}

pub fn cmd_pwlift(cfg: &RunConfig) -> Result<Output> {
    let setup = cfg.setup()?;
    let rs = setup.root_system();
    let lam = cfg.coroot(rs)?;
    let lift = setup.pw_lift(&lam)?;
    let (lb, u) = setup.psi(&lam, &WeylElement::identity(rs.rank()))?;
    let p_prime: Vec<usize> = lift.p_prime.iter().map(|i| i + 1).collect();
    let null = setup.is_virtual_null(&lift.lambda_b);
    let json = json!({
        "setup": setup.label(),
        "lambda": lam,
        "lambda_b": lift.lambda_b,
        "pairings": lift.pairings,
        "delta_p_prime": p_prime,
        "virtual_null": null,
        "psi": {"q": lb, "word": word_of(rs, &u)},
    });
    let text = format!(
        "λ = {lam:?}\nλ_B = {:?} (⟨α, λ_B⟩ over Δ_P: {:?})\nΔ_P' = {p_prime:?}\nψ(q_λ) = q{lb:?}{}\nvirtual null: {null}",
        lift.lambda_b,
        lift.pairings,
        show(rs, &u)
    );
    Ok(ok(json, text))
}

pub fn cmd_grade(cfg: &RunConfig) -> Result<Output> {
    let setup = cfg.setup()?;
    let rs = setup.root_system();
    let table = grade_table(&setup);
    let mut text = format!("{}\n", setup.label());
    for e in &table {
        writeln!(text, "  gr(α_{}^∨) = {}  (level {})", e.index, e.formula, e.level).unwrap();
    }
    let mut json = json!({"setup": setup.label(), "coroot_grades": table});
    if cfg.u.is_some() || cfg.lambda.is_some() {
        let w = match &cfg.u {
            Some(word) => WeylElement::from_word(rs, word)?,
            None => WeylElement::identity(rs.rank()),
        };
        let lam = match &cfg.lambda {
            Some(_) => cfg.coroot(rs)?,
            None => vec![0; rs.rank()],
        };
        let g = Grader::new(&setup).gr(&w, &lam);
        let gp = GradePrime::new(&setup)?.gr(&w, &lam)?;
        writeln!(text, "gr(q{lam:?}{}) = {}; gr′ = {}", show(rs, &w), g.formula(), gp.formula()).unwrap();
        json["gr"] = to_value(&g);
        json["gr_prime"] = to_value(&gp);
    }
    Ok(ok(json, text.trim_end().to_string()))
}

fn suite_output(report: SuiteReport) -> Output {
    Output { pass: report.pass, text: report.to_string(), json: to_value(&report) }
}

pub fn cmd_tables(cfg: &RunConfig) -> Result<Output> {
    let engines = Engines::new(cfg.verify.product_cap);
    let ids = match cfg.which {
        Some(t) => vec![t],
        None => TableId::ALL.to_vec(),
    };
    let reports = ids.into_iter().map(|t| reproduce_table(t, &cfg.verify, &engines)).collect::<Result<_>>()?;
    Ok(suite_output(SuiteReport::new("tables", reports)))
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Output> {
    if cfg.suite == "list" {
        let mut text = String::new();
        for (name, about) in suite_names() {
            writeln!(text, "{name:18} {about}").unwrap();
        }
        let json = json!(suite_names().iter().map(|(n, a)| json!({"suite": n, "about": a})).collect::<Vec<_>>());
        return Ok(ok(json, text.trim_end().to_string()));
    }
    let engines = Engines::new(cfg.verify.product_cap);
    Ok(suite_output(run_suite(&cfg.suite, cfg.which, &cfg.verify, &engines)?))
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = RunConfig::from_opts(&cli.opts).and_then(|cfg| {
        let out = match cli.command {
            Command::Roots => cmd_roots(&cfg),
            Command::Weyl => cmd_weyl(&cfg),
            Command::Qmul => cmd_qmul(&cfg),
            Command::Qpmul => cmd_qpmul(&cfg),
            Command::Pwlift => cmd_pwlift(&cfg),
            Command::Grade => cmd_grade(&cfg),
            Command::Tables => cmd_tables(&cfg),
            Command::Verify => cmd_verify(&cfg),
        }?;
        Ok((cfg, out))
    });
    match result {
        Ok((cfg, out)) => {
            let body = match cfg.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable"),
                Format::Text => out.text,
            };
            match &cfg.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, body + "\n") {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 2;
                    }
                }
                None => {
                    use std::io::Write;
                    // a closed pipe (e.g. `| head`) is not an error
                    let _ = writeln!(std::io::stdout().lock(), "{body}");
                }
            }
            if out.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
