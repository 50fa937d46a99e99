//! Command-line configuration, report assembly and rendering.
//!
//! Reports carry no timings or other run-dependent data, so a fixed
//! configuration and seed always produce the same bytes.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grpoisson::{format_poly, format_zhu};
use crate::pbw::VacuumModule;
use crate::rational::{fmt_q, frac, int, parse_rational, Q};
use crate::rootsys::LieAlgebra;
use crate::selftest::{self, SuiteResult};
use crate::singular::{
    critical_counterexample, default_delta_max, find_singular, gorelik_kac_not_simple,
    is_admissible, verify_nonvanishing, SingularReport, Witness,
};
use crate::slodowy::{complete_triple, rho_tilde, slice, submersion_certificate, NilpotentSpec};
use crate::sugawara::central_charge;
use crate::syntax::{format_lie_element, format_va_element};

pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Debug, Parser)]
#[command(
    name = "vacuum",
    version,
    about = "Exact computations in universal affine vertex algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    SimpleCheck,
    FindSingular,
    Critical,
    Slodowy,
    Selftest,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simplicity and admissibility verdicts, plus the singular-vector check.
    SimpleCheck(CommonArgs),
    /// Singular vectors degree by degree.
    FindSingular(CommonArgs),
    /// Critical-level witnesses with vanishing image.
    Critical(CommonArgs),
    /// sl2-triple, centralizer and slice certificate for a nilpotent.
    Slodowy(CommonArgs),
    /// Seeded property suites.
    Selftest(CommonArgs),
}

impl Command {
    pub fn split(self) -> (CommandKind, CommonArgs) {
        match self {
            Command::SimpleCheck(a) => (CommandKind::SimpleCheck, a),
            Command::FindSingular(a) => (CommandKind::FindSingular, a),
            Command::Critical(a) => (CommandKind::Critical, a),
            Command::Slodowy(a) => (CommandKind::Slodowy, a),
            Command::Selftest(a) => (CommandKind::Selftest, a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args, Default)]
pub struct CommonArgs {
    /// Cartan type, e.g. A1, B2, G2.
    #[arg(value_name = "ALGEBRA")]
    pub algebra_pos: Option<String>,
    #[arg(long)]
    pub algebra: Option<String>,
    /// Level as an integer or p/q.
    #[arg(long, allow_hyphen_values = true)]
    pub level: Option<String>,
    #[arg(long)]
    pub delta_max: Option<i64>,
    /// `regular`, `minimal`, or an element such as "f[1](-1) + f[2](-1)".
    #[arg(long, default_value = "regular")]
    pub nilpotent: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub algebra: Option<Arc<LieAlgebra>>,
    pub level: Option<Q>,
    pub delta_max: Option<i64>,
    pub nilpotent: NilpotentSpec,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

fn config_error(flag: &str, e: Error) -> Error {
    Error::Config(format!("{flag}: {e}"))
}

impl RunConfig {
    pub fn new(command: CommandKind, args: CommonArgs) -> Result<Self> {
        let algebra_text = match (args.algebra_pos, args.algebra) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::Config(format!(
                    "algebra given twice: `{a}` and `{b}`"
                )));
            }
            (a, b) => a.or(b),
        };
        let algebra = match algebra_text {
            Some(t) => Some(Arc::new(
                LieAlgebra::from_str_spec(&t).map_err(|e| config_error("--algebra", e))?,
            )),
            None if command == CommandKind::Selftest => None,
            None => return Err(Error::Config("--algebra is required".into())),
        };
        let level = args
            .level
            .as_deref()
            .map(parse_rational)
            .transpose()
            .map_err(|e| config_error("--level", e))?;
        if level.is_none()
            && matches!(
                command,
                CommandKind::SimpleCheck | CommandKind::FindSingular
            )
        {
            return Err(Error::Config("--level is required".into()));
        }
        if let Some(d) = args.delta_max {
            if d < 1 {
                return Err(Error::Config(format!(
                    "--delta-max must be at least 1, got {d}"
                )));
            }
        }
        Ok(RunConfig {
            command,
            algebra,
            level,
            delta_max: args.delta_max,
            nilpotent: NilpotentSpec::parse(&args.nilpotent),
            seed: args.seed,
            out: args.out,
            format: args.format,
        })
    }

    fn alg(&self) -> &Arc<LieAlgebra> {
        self.algebra.as_ref().expect("validated")
    }

    fn delta_max(&self) -> i64 {
        self.delta_max
            .unwrap_or_else(|| default_delta_max(self.alg()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VectorReport {
    pub vector: String,
    pub min_depth: i64,
    pub zhu_image: String,
    pub zhu_nonzero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeReport {
    pub delta: i64,
    pub kernel_dim: usize,
    pub vectors: Vec<VectorReport>,
}

fn degree_reports(alg: &LieAlgebra, reports: &[SingularReport]) -> Vec<DegreeReport> {
    reports
        .iter()
        .map(|r| DegreeReport {
            delta: r.delta,
            kernel_dim: r.kernel_dim,
            vectors: r
                .vectors
                .iter()
                .map(|v| VectorReport {
                    vector: format_va_element(alg, &v.vector),
                    min_depth: v.min_depth,
                    zhu_image: format_zhu(alg, &v.zhu_image),
                    zhu_nonzero: v.zhu_nonzero,
                })
                .collect(),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SimpleCheckBody {
    pub critical: bool,
    pub simple: bool,
    pub admissible: bool,
    pub central_charge: Option<String>,
    pub delta_max: i64,
    pub verdict: String,
    pub degrees: Vec<DegreeReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FindSingularBody {
    pub delta_max: i64,
    pub degrees: Vec<DegreeReport>,
    /// Whether every vector found has a nonzero image; absent at the critical level.
    pub nonvanishing: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub vector: String,
    pub singular: bool,
    pub min_depth: i64,
    pub zhu_image: String,
}

impl WitnessReport {
    fn new(alg: &LieAlgebra, w: &Witness) -> Self {
        WitnessReport {
            vector: format_va_element(alg, &w.vector),
            singular: w.singular,
            min_depth: w.min_depth,
            zhu_image: format_zhu(alg, &w.zhu_image),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedReport {
    pub j: usize,
    pub polynomial: String,
    pub depth: i64,
    pub singular: bool,
    pub zhu_zero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalBody {
    pub graded_max: usize,
    pub sugawara: WitnessReport,
    pub translated: WitnessReport,
    pub graded: Vec<GradedReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CentralizerEntry {
    pub eigenvalue: i64,
    pub vector: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub dim: usize,
    pub centralizer_dim: usize,
    pub image_rank: usize,
    pub rank: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SlodowyBody {
    pub nilpotent: String,
    pub e: String,
    pub h: String,
    pub f: String,
    pub relations_hold: bool,
    pub centralizer: Vec<CentralizerEntry>,
    pub contraction_exponents: Vec<i64>,
    pub rho_fixes_f: bool,
    pub certificate: CertificateReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestBody {
    pub suites: Vec<SuiteResult>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Body {
    SimpleCheck(SimpleCheckBody),
    FindSingular(FindSingularBody),
    Critical(CriticalBody),
    Slodowy(SlodowyBody),
    Selftest(SelftestBody),
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub algebra: Option<String>,
    pub level: Option<String>,
    pub seed: u64,
    pub pass: bool,
    #[serde(flatten)]
    pub body: Body,
}

fn command_name(c: CommandKind) -> &'static str {
    match c {
        CommandKind::SimpleCheck => "simple-check",
        CommandKind::FindSingular => "find-singular",
        CommandKind::Critical => "critical",
        CommandKind::Slodowy => "slodowy",
        CommandKind::Selftest => "selftest",
    }
}

fn is_critical(alg: &LieAlgebra, k: &Q) -> bool {
    *k == -int(alg.dual_coxeter)
}

fn simple_check(cfg: &RunConfig) -> Result<(bool, Body)> {
    let alg = cfg.alg();
    let k = cfg.level.clone().expect("validated");
    let delta_max = cfg.delta_max();
    let critical = is_critical(alg, &k);
    let simple = !gorelik_kac_not_simple(alg, &k);
    let admissible = is_admissible(alg, &k);
    let module = VacuumModule::new(alg.clone(), k.clone());
    let (pass, verdict, degrees) = if critical {
        (
            true,
            "not simple (critical level); run the `critical` command for the vanishing witnesses"
                .to_string(),
            Vec::new(),
        )
    } else if simple {
        let reports = find_singular(&module, delta_max)?;
        let found: usize = reports.iter().map(|r| r.kernel_dim).sum();
        let verdict = if found == 0 {
            format!("simple; no singular vectors up to degree {delta_max}")
        } else {
            format!("simple by the level criterion, yet {found} singular vectors were found")
        };
        (found == 0, verdict, degree_reports(alg, &reports))
    } else {
        let v = verify_nonvanishing(&module, delta_max)?;
        let found: usize = v.reports.iter().map(|r| r.kernel_dim).sum();
        let verdict = match (&v.counterexample, found) {
            (Some((d, _)), _) => format!("not simple; FAIL: a singular vector at degree {d} has zero image"),
            (None, 0) => format!("not simple; no singular vectors up to degree {delta_max}"),
            (None, n) => format!("not simple; PASS: all {n} singular vectors up to degree {delta_max} have nonzero image"),
        };
        (v.pass, verdict, degree_reports(alg, &v.reports))
    };
    let body = SimpleCheckBody {
        critical,
        simple: simple && !critical,
        admissible,
        central_charge: central_charge(alg, &k).ok().map(|c| fmt_q(&c)),
        delta_max,
        verdict,
        degrees,
    };
    Ok((pass, Body::SimpleCheck(body)))
}

fn find(cfg: &RunConfig) -> Result<(bool, Body)> {
    let alg = cfg.alg();
    let k = cfg.level.clone().expect("validated");
    let delta_max = cfg.delta_max();
    let module = VacuumModule::new(alg.clone(), k.clone());
    let reports = find_singular(&module, delta_max)?;
    let nonvanishing = (!is_critical(alg, &k)).then(|| {
        reports
            .iter()
            .flat_map(|r| &r.vectors)
            .all(|v| v.min_depth == 0 && v.zhu_nonzero)
    });
    let body = FindSingularBody {
        delta_max,
        degrees: degree_reports(alg, &reports),
        nonvanishing,
    };
    Ok((nonvanishing.unwrap_or(true), Body::FindSingular(body)))
}

fn critical(cfg: &RunConfig) -> Result<(bool, Body)> {
    let alg = cfg.alg();
    let k = cfg.level.clone().unwrap_or_else(|| -int(alg.dual_coxeter));
    if !is_critical(alg, &k) {
        return Err(Error::Config(format!(
            "--level: {} is not the critical level {}",
            fmt_q(&k),
            -alg.dual_coxeter
        )));
    }
    let graded_max = cfg.delta_max.unwrap_or(4) as usize;
    let module = VacuumModule::new(alg.clone(), k);
    let r = critical_counterexample(&module, graded_max)?;
    let body = CriticalBody {
        graded_max,
        sugawara: WitnessReport::new(alg, &r.sugawara),
        translated: WitnessReport::new(alg, &r.translated),
        graded: r
            .graded
            .iter()
            .map(|g| GradedReport {
                j: g.j,
                polynomial: format_poly(alg, &g.polynomial),
                depth: g.depth,
                singular: g.singular,
                zhu_zero: g.zhu_zero,
            })
            .collect(),
    };
    Ok((r.pass, Body::Critical(body)))
}

fn slodowy(cfg: &RunConfig) -> Result<(bool, Body)> {
    let alg = cfg.alg();
    let f = cfg
        .nilpotent
        .element(alg)
        .map_err(|e| config_error("--nilpotent", e))?;
    let triple = complete_triple(alg, &f)?;
    let data = slice(alg, &triple)?;
    let cert = submersion_certificate(alg, &data);
    let rho_fixes_f = [int(2), frac(-1, 3)]
        .iter()
        .map(|t| rho_tilde(alg, &data, t, &triple.f))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|x| *x == triple.f);
    let exps = data.contraction_exponents();
    let relations_hold = triple.relations_hold(alg);
    let pass = relations_hold && cert.pass && rho_fixes_f && exps.iter().all(|e| *e > 0);
    let body = SlodowyBody {
        nilpotent: cfg.nilpotent.label().to_string(),
        e: format_lie_element(alg, &triple.e),
        h: format_lie_element(alg, &triple.h),
        f: format_lie_element(alg, &triple.f),
        relations_hold,
        centralizer: data
            .centralizer_basis
            .iter()
            .map(|(j, x)| CentralizerEntry {
                eigenvalue: *j,
                vector: format_lie_element(alg, x),
            })
            .collect(),
        contraction_exponents: exps,
        rho_fixes_f,
        certificate: CertificateReport {
            dim: cert.dim,
            centralizer_dim: cert.centralizer_dim,
            image_rank: cert.image_rank,
            rank: cert.rank,
            pass: cert.pass,
        },
    };
    Ok((pass, Body::Slodowy(body)))
}

/// Runs a validated configuration.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    let (pass, body) = match cfg.command {
        CommandKind::SimpleCheck => simple_check(cfg)?,
        CommandKind::FindSingular => find(cfg)?,
        CommandKind::Critical => critical(cfg)?,
        CommandKind::Slodowy => slodowy(cfg)?,
        CommandKind::Selftest => {
            let r = selftest::run(cfg.seed);
            (r.pass, Body::Selftest(SelftestBody { suites: r.suites }))
        }
    };
    let level = match (&cfg.level, cfg.command, &cfg.algebra) {
        (Some(k), _, _) => Some(fmt_q(k)),
        (None, CommandKind::Critical, Some(a)) => Some(fmt_q(&-int(a.dual_coxeter))),
        _ => None,
    };
    Ok(Report {
        command: command_name(cfg.command),
        algebra: cfg.algebra.as_ref().map(|a| a.spec.to_string()),
        level,
        seed: cfg.seed,
        pass,
        body,
    })
}

/// Renders a report; the output always ends with a newline.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(report),
        Format::Text => render_text(report),
    }
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn degree_rows(seed: u64, degrees: &[DegreeReport]) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for d in degrees {
        if d.vectors.is_empty() {
            rows.push(vec![
                seed.to_string(),
                d.delta.to_string(),
                "0".into(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
            ]);
        }
        for v in &d.vectors {
            rows.push(vec![
                seed.to_string(),
                d.delta.to_string(),
                d.kernel_dim.to_string(),
                v.min_depth.to_string(),
                v.zhu_nonzero.to_string(),
                v.vector.clone(),
                v.zhu_image.clone(),
            ]);
        }
    }
    rows
}

const DEGREE_HEADER: [&str; 7] = [
    "seed",
    "delta",
    "kernel_dim",
    "min_depth",
    "zhu_nonzero",
    "vector",
    "zhu_image",
];

fn render_csv(report: &Report) -> String {
    let seed = report.seed;
    match &report.body {
        Body::SimpleCheck(b) => csv_string(&DEGREE_HEADER, degree_rows(seed, &b.degrees)),
        Body::FindSingular(b) => csv_string(&DEGREE_HEADER, degree_rows(seed, &b.degrees)),
        Body::Critical(b) => {
            let mut rows = Vec::new();
            for (name, w) in [("sugawara", &b.sugawara), ("translated", &b.translated)] {
                rows.push(vec![
                    seed.to_string(),
                    name.into(),
                    String::new(),
                    w.singular.to_string(),
                    w.min_depth.to_string(),
                    (w.zhu_image == "0").to_string(),
                    w.vector.clone(),
                ]);
            }
            for g in &b.graded {
                rows.push(vec![
                    seed.to_string(),
                    "graded".into(),
                    g.j.to_string(),
                    g.singular.to_string(),
                    g.depth.to_string(),
                    g.zhu_zero.to_string(),
                    g.polynomial.clone(),
                ]);
            }
            csv_string(
                &[
                    "seed", "kind", "j", "singular", "depth", "zhu_zero", "element",
                ],
                rows,
            )
        }
        Body::Slodowy(b) => {
            let mut rows = vec![
                vec![seed.to_string(), "e".into(), String::new(), b.e.clone()],
                vec![seed.to_string(), "h".into(), String::new(), b.h.clone()],
                vec![seed.to_string(), "f".into(), String::new(), b.f.clone()],
            ];
            for c in &b.centralizer {
                rows.push(vec![
                    seed.to_string(),
                    "centralizer".into(),
                    c.eigenvalue.to_string(),
                    c.vector.clone(),
                ]);
            }
            rows.push(vec![
                seed.to_string(),
                "certificate_rank".into(),
                String::new(),
                b.certificate.rank.to_string(),
            ]);
            csv_string(&["seed", "kind", "eigenvalue", "value"], rows)
        }
        Body::Selftest(b) => csv_string(
            &["seed", "suite", "cases", "pass", "detail"],
            b.suites
                .iter()
                .map(|s| {
                    vec![
                        seed.to_string(),
                        s.name.clone(),
                        s.cases.to_string(),
                        s.pass.to_string(),
                        s.detail.clone().unwrap_or_default(),
                    ]
                })
                .collect(),
        ),
    }
}

fn pass_word(p: bool) -> &'static str {
    if p {
        "PASS"
    } else {
        "FAIL"
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    let mut head = report.command.to_string();
    if let Some(a) = &report.algebra {
        head += &format!(" {a}");
    }
    if let Some(k) = &report.level {
        head += &format!(" k={k}");
    }
    line(format!("{head} seed={}", report.seed));
    let degrees = |line: &mut dyn FnMut(String), ds: &[DegreeReport]| {
        for d in ds {
            line(format!("  degree {}: {} singular", d.delta, d.kernel_dim));
            for v in &d.vectors {
                line(format!("    {}", v.vector));
                line(format!(
                    "      depth {}, image {}",
                    v.min_depth, v.zhu_image
                ));
            }
        }
    };
    match &report.body {
        Body::SimpleCheck(b) => {
            line(format!(
                "  simple: {}, admissible: {}, critical: {}",
                b.simple, b.admissible, b.critical
            ));
            if let Some(c) = &b.central_charge {
                line(format!("  central charge: {c}"));
            }
            degrees(&mut line, &b.degrees);
            line(format!("  {}", b.verdict));
        }
        Body::FindSingular(b) => degrees(&mut line, &b.degrees),
        Body::Critical(b) => {
            for (name, w) in [("S", &b.sugawara), ("T S", &b.translated)] {
                line(format!(
                    "  {name}: singular {}, depth {}, image {}",
                    w.singular, w.min_depth, w.zhu_image
                ));
            }
            for g in &b.graded {
                line(format!(
                    "  T^{} p1: depth {}, singular {}, image zero {}",
                    g.j, g.depth, g.singular, g.zhu_zero
                ));
            }
        }
        Body::Slodowy(b) => {
            line(format!("  nilpotent: {}", b.nilpotent));
            line(format!("  e = {}", b.e));
            line(format!("  h = {}", b.h));
            line(format!("  f = {}", b.f));
            for c in &b.centralizer {
                line(format!("  centralizer [{}] {}", c.eigenvalue, c.vector));
            }
            line(format!(
                "  certificate rank {} of {}: {}",
                b.certificate.rank,
                b.certificate.dim,
                pass_word(b.certificate.pass)
            ));
        }
        Body::Selftest(b) => {
            for s in &b.suites {
                line(format!(
                    "  {} {} ({} cases)",
                    pass_word(s.pass),
                    s.name,
                    s.cases
                ));
                if let Some(d) = &s.detail {
                    line(format!("    {d}"));
                }
            }
        }
    }
    line(pass_word(report.pass).to_string());
    out
}

/// Exit code: 0 on PASS, 1 on FAIL or a failed internal check, 2 on
/// configuration or input errors.
pub fn exit_code(result: &Result<Report>) -> i32 {
    match result {
        Ok(r) if r.pass => 0,
        Ok(_) | Err(Error::Inconsistent(_)) => 1,
        Err(_) => 2,
    }
}
