//! Report assembly behind the `rootform` binary. Everything here is
//! deterministic in `(config, seed)`; reports carry no timestamps.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use rootform_core::mat::Mat;
use rootform_core::scalar::Q;
use rootform_core::{CartanDatum, CheckReport, Error, LieAlgebra, RootCategory, RootSystem};
use rootform_groups::{ChevalleyGroup, CompactForm};
use rootform_reps::hwmodules::{xh_injectivity_probe, DEFAULT_DIM_CAP};
use rootform_reps::peterweyl::{
    a3_counterexample, char_orthonormality_check, integral_lattice_k, q_plus_enumerate, schur_report,
    su2_convolution_error, ThetaRule, Truncation,
};
use rootform_reps::{weyl_dimension, WeightModule};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const REPORT_SCHEMA: u32 = 1;
/// Environment variable holding the worker count for `verify all`.
pub const THREADS_ENV: &str = "ROOTFORM_THREADS";
pub const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

pub const SCHUR_TOL: f64 = 1e-6;
pub const VOLUME_TOL: f64 = 1e-8;
pub const CHAR_TOL: f64 = 1e-4;
pub const CONV_TOL: f64 = 1e-5;
pub const UNITARY_TOL: f64 = 1e-10;

/// Modules above this dimension are skipped by the hwmodules suite.
pub const SUITE_MODULE_DIM: u64 = 64;

#[derive(Debug)]
pub enum CliError {
    /// Bad input; exit code 2.
    Usage(String),
    /// Anything else that stopped the run; exit code 1.
    Runtime(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Runtime(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidType(_) | Error::NotDominant(_) | Error::DimensionCap { .. } | Error::Shape(_) | Error::Pair(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Flat key-value run configuration. Read from a TOML file, then
/// overridden by flags.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub type_label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exp_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad_tol: Option<f64>,
    /// Truncation weights, `;`-separated, each a `,`-separated list.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> CliResult<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    /// Fields set in `flags` win.
    pub fn overlay(self, flags: RunConfig) -> RunConfig {
        RunConfig {
            type_label: flags.type_label.or(self.type_label),
            field: flags.field.or(self.field),
            seed: flags.seed.or(self.seed),
            exp_tol: flags.exp_tol.or(self.exp_tol),
            gram_tol: flags.gram_tol.or(self.gram_tol),
            quad_tol: flags.quad_tol.or(self.quad_tol),
            trunc: flags.trunc.or(self.trunc),
            output: flags.output.or(self.output),
        }
    }

    pub fn datum(&self) -> CliResult<CartanDatum> {
        let t = self.type_label.as_deref().ok_or_else(|| CliError::Usage("--type is required".into()))?;
        Ok(t.parse::<CartanDatum>()?)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn truncation_weights(&self, datum: &CartanDatum) -> CliResult<Vec<Vec<i64>>> {
        match &self.trunc {
            Some(s) => s.split(';').map(|w| parse_weight(w, datum.rank)).collect(),
            None => Ok(default_truncation(datum)),
        }
    }
}

pub fn parse_weight(s: &str, rank: usize) -> CliResult<Vec<i64>> {
    let w: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad weight `{s}`"))))
        .collect::<CliResult<_>>()?;
    if w.len() != rank {
        return Err(CliError::Usage(format!("weight `{s}` needs {rank} entries")));
    }
    Ok(w)
}

/// Zero plus the fundamental weights; for A1, `0, ω, 2ω`.
pub fn default_truncation(datum: &CartanDatum) -> Vec<Vec<i64>> {
    let r = datum.rank;
    let mut out = vec![vec![0; r]];
    for i in 0..r {
        let mut w = vec![0; r];
        w[i] = 1;
        out.push(w);
    }
    if r == 1 {
        out.push(vec![2]);
    }
    out
}

/// A check as it appears in a report.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckEntry {
    pub suite: String,
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckEntry {
    pub fn new(suite: &str, r: &CheckReport) -> CheckEntry {
        CheckEntry {
            suite: suite.into(),
            name: r.name.clone(),
            cases: r.cases,
            failures: r.failures,
            passed: r.passed(),
            worst: None,
            tolerance: None,
            witness: r.witness.clone(),
        }
    }

    pub fn numeric(mut self, worst: f64, tol: f64) -> CheckEntry {
        self.worst = Some(worst);
        self.tolerance = Some(tol);
        self
    }
}

fn single(name: &str, ok: bool, witness: impl FnOnce() -> String) -> CheckReport {
    let mut r = CheckReport::new(name);
    r.record(ok, witness);
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub config: RunConfig,
    pub passed: bool,
    pub checks: Vec<CheckEntry>,
    pub data: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: &str, config: &RunConfig) -> Report {
        Report {
            schema: REPORT_SCHEMA,
            command: command.into(),
            config: config.clone(),
            passed: true,
            checks: Vec::new(),
            data: BTreeMap::new(),
        }
    }

    pub fn extend(&mut self, out: SuiteOutput) {
        self.checks.extend(out.checks);
        self.data.extend(out.data);
        self.passed = self.checks.iter().all(|c| c.passed);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// One row per check.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "name", "cases", "failures", "passed", "worst", "tolerance", "witness"])
            .unwrap();
        for c in &self.checks {
            let opt = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
            w.write_record([
                c.suite.clone(),
                c.name.clone(),
                c.cases.to_string(),
                c.failures.to_string(),
                c.passed.to_string(),
                opt(c.worst),
                opt(c.tolerance),
                c.witness.clone().unwrap_or_default(),
            ])
            .unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOutput {
    pub checks: Vec<CheckEntry>,
    pub data: BTreeMap<String, Value>,
}

impl SuiteOutput {
    fn push(&mut self, suite: &str, r: &CheckReport) {
        self.checks.push(CheckEntry::new(suite, r));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    LieAlg,
    ChevGroup,
    Compact,
    HwModules,
    PeterWeyl,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::LieAlg, Suite::ChevGroup, Suite::Compact, Suite::HwModules, Suite::PeterWeyl];

    pub fn parse(s: &str) -> CliResult<Vec<Suite>> {
        Ok(match s {
            "all" => Suite::ALL.to_vec(),
            "liealg" => vec![Suite::LieAlg],
            "chevgroup" => vec![Suite::ChevGroup],
            "compact" => vec![Suite::Compact],
            "hwmodules" | "irrep" => vec![Suite::HwModules],
            "peterweyl" => vec![Suite::PeterWeyl],
            _ => return Err(CliError::Usage(format!("unknown suite `{s}`"))),
        })
    }
}

/// Field choice for the group relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    Prime(u64),
    /// ℚ and every prime in `PRIMES`.
    All,
}

impl FieldChoice {
    pub fn parse(s: Option<&str>) -> CliResult<FieldChoice> {
        let Some(s) = s else { return Ok(FieldChoice::All) };
        let t = s.trim_start_matches(['F', 'f']);
        match s {
            "rational" | "Q" => Ok(FieldChoice::Rational),
            "all" => Ok(FieldChoice::All),
            _ => match t.parse::<u64>() {
                Ok(p) if PRIMES.contains(&p) => Ok(FieldChoice::Prime(p)),
                _ => Err(CliError::Usage(format!("field must be rational, all or F_p with p in {PRIMES:?}; got `{s}`"))),
            },
        }
    }
}

pub fn liealg_suite(lie: &LieAlgebra) -> SuiteOutput {
    let mut out = SuiteOutput::default();
    out.push("liealg", &lie.jacobi_check());
    let kd = lie.killing_def36();
    let tg = lie.trace_gram();
    let mut eq = CheckReport::new("killing_equals_trace_form");
    for a in 0..lie.dim() {
        for b in 0..lie.dim() {
            eq.record(kd[a][b] == tg[a][b], || {
                format!("({}, {}): {} vs {}", lie.basis_name(a), lie.basis_name(b), kd[a][b], tg[a][b])
            });
        }
    }
    out.push("liealg", &eq);
    out.push("liealg", &lie.invariance_check(&kd));
    out.push("liealg", &lie.gamma_product_check());
    out.push("liealg", &lie.triangle_law_check());
    out.data.insert("lie_dim".into(), json!(lie.dim()));
    out
}

macro_rules! fp_steinberg {
    ($g:expr, $p:expr, $seed:expr) => {
        match $p {
            2 => $g.verify_steinberg_fp::<2>($seed),
            3 => $g.verify_steinberg_fp::<3>($seed),
            5 => $g.verify_steinberg_fp::<5>($seed),
            7 => $g.verify_steinberg_fp::<7>($seed),
            11 => $g.verify_steinberg_fp::<11>($seed),
            13 => $g.verify_steinberg_fp::<13>($seed),
            _ => unreachable!("primes are validated on parse"),
        }
    };
}

pub fn chevgroup_suite(g: &ChevalleyGroup, field: FieldChoice, seed: u64) -> CliResult<SuiteOutput> {
    let mut out = SuiteOutput::default();
    let rank = g.lie.rank();
    if matches!(field, FieldChoice::Rational | FieldChoice::All) {
        let conj = g.verify_conjugation_relations(seed);
        for r in &conj.relations {
            out.push("chevgroup", r);
        }
        let signs_ok = conj.eta.iter().flatten().all(|&e| e == 1 || e == -1) && conj.eta_shift_consistent;
        out.push("chevgroup", &single("eta_signs", signs_ok, || "η outside {±1} or not shift invariant".into()));
        let st = g.verify_steinberg_rational(seed)?;
        for r in &st.relations {
            out.push("chevgroup_rational", r);
        }
        out.push("chevgroup", &g.verify_bracket_preservation(3, 6, seed));
    }
    let primes: Vec<u64> = match field {
        FieldChoice::Rational => vec![],
        FieldChoice::Prime(p) => vec![p],
        // the exhaustive sweep is kept to rank ≤ 2
        FieldChoice::All if rank <= 2 => PRIMES.to_vec(),
        FieldChoice::All => vec![],
    };
    for p in primes {
        let st = fp_steinberg!(g, p, seed)?;
        for r in &st.relations {
            out.push(&format!("chevgroup_F{p}"), r);
        }
    }
    let center_primes: Vec<u64> = match field {
        FieldChoice::Rational => vec![],
        FieldChoice::Prime(p) => vec![p],
        FieldChoice::All if rank <= 3 => PRIMES.to_vec(),
        FieldChoice::All => vec![],
    };
    let mut centers = CheckReport::new("center_count");
    let mut counts = BTreeMap::new();
    for p in center_primes {
        let c = g.center_solutions(p)?;
        centers.record(c.passed(), || {
            format!("p={p}: formula {} solutions {} brute force {}", c.formula_count, c.solutions.len(), c.brute_force.len())
        });
        counts.insert(p.to_string(), c.formula_count);
    }
    if centers.cases > 0 {
        out.push("chevgroup", &centers);
        out.data.insert("center_counts".into(), json!(counts));
    }
    Ok(out)
}

pub fn compact_suite(cf: &CompactForm, cfg: &RunConfig) -> CliResult<SuiteOutput> {
    use rootform_groups::compactform::{EXP_TOL, GRAM_TOL};
    let exp_tol = cfg.exp_tol.unwrap_or(EXP_TOL);
    let gram_tol = cfg.gram_tol.unwrap_or(GRAM_TOL);
    let rep = cf.verify_all_with(cfg.seed(), exp_tol, gram_tol)?;
    let mut out = SuiteOutput::default();
    for c in &rep.checks {
        let e = CheckEntry::new("compact", c);
        let e = match c.name.as_str() {
            "closed_form_exponentials" => e.numeric(rep.exp_worst, exp_tol),
            "gram_preservation" => e.numeric(rep.gram_worst, gram_tol),
            "expbeta_numeric" => e.numeric(rep.expbeta_worst, exp_tol),
            _ => e,
        };
        out.checks.push(e);
    }
    out.push(
        "compact",
        &single("generators_span", rep.generated_rank == rep.dim, || {
            format!("rank {} of {}", rep.generated_rank, rep.dim)
        }),
    );
    out.data.insert("negative_definite_minors".into(), json!(rep.minors));
    Ok(out)
}

pub fn hwmodules_suite(datum: &CartanDatum, seed: u64) -> CliResult<SuiteOutput> {
    let mut out = SuiteOutput::default();
    let names = [
        "serre_relations",
        "contravariance",
        "gram_positive_definite",
        "weyl_freudenthal_oracles",
        "binomial_norm_step",
        "generator_identities",
        "adjoint_law",
        "unitary_one_parameter_subgroups",
    ];
    let mut merged: Vec<CheckReport> = names.iter().map(|n| CheckReport::new(n)).collect();
    let mut worst: f64 = 0.0;
    let mut built = Vec::new();
    let mut skipped = Vec::new();
    for i in 0..datum.rank {
        let mut w = vec![0; datum.rank];
        w[i] = 1;
        let dim = weyl_dimension(datum, &w);
        if dim > SUITE_MODULE_DIM {
            skipped.push(json!({"weight": w, "dim": dim}));
            continue;
        }
        let m = WeightModule::build(datum, &w)?;
        let (unit, wst) = m.unitarity_numeric(5, UNITARY_TOL, seed);
        worst = worst.max(wst);
        let reps = [
            m.serre_check(),
            m.contravariance_check(),
            m.positivity_check(),
            m.multiplicity_check(),
            m.binomial_step_check(10),
            m.generator_identities_check(),
            m.adjoint_check(),
            unit,
        ];
        for (acc, r) in merged.iter_mut().zip(&reps) {
            acc.merge(r);
        }
        built.push(json!({"weight": w, "dim": dim}));
    }
    for r in &merged {
        let e = CheckEntry::new("hwmodules", r);
        out.checks.push(if r.name == "unitary_one_parameter_subgroups" { e.numeric(worst, UNITARY_TOL) } else { e });
    }
    if datum.rank <= 3 {
        out.push("hwmodules", &xh_injectivity_probe(datum, 100, seed)?);
    }
    out.data.insert("modules".into(), json!(built));
    if !skipped.is_empty() {
        out.data.insert("modules_skipped".into(), json!(skipped));
    }
    Ok(out)
}

pub fn peterweyl_suite(datum: &CartanDatum, cfg: &RunConfig) -> CliResult<SuiteOutput> {
    let mut out = SuiteOutput::default();
    let seed = cfg.seed();
    let lat = integral_lattice_k(datum)?;
    let mut r = CheckReport::new("integral_forms_are_root_lattice");
    r.record(lat.kernel_verified, || "kernel generator fails exp(ad H) = 1".into());
    r.record(lat.roots_integral, || "a root is not analytically integral".into());
    r.record(lat.analytic_in_root_lattice, || "analytic lattice not inside Q".into());
    r.record(lat.root_lattice_in_analytic, || "Q not inside analytic lattice".into());
    out.push("peterweyl", &r);
    out.data.insert("fundamental_group_order".into(), json!(lat.fundamental_group_order));
    if datum.label() == "A3" {
        let a3 = a3_counterexample()?;
        out.push("peterweyl", &single("a3_remark", a3.reproduced, || format!("{:?}", a3.statement)));
        out.data.insert("a3_remark".into(), json!(a3.statement));
    }
    let weights = cfg.truncation_weights(datum)?;
    let tr = Truncation::new(datum, &weights)?;
    let (checks, worst) = tr.plancherel_checks(seed, 8);
    for c in &checks {
        let e = CheckEntry::new("peterweyl", c);
        out.checks.push(if c.name == "orthonormal_route_agrees" { e.numeric(worst, 1e-9) } else { e });
    }
    if datum.rank <= 2 {
        let n = if datum.rank == 1 { 16 } else { 24 };
        let (c, w) = char_orthonormality_check(datum, &weights, n, CHAR_TOL)?;
        out.checks.push(CheckEntry::new("peterweyl", &c).numeric(w, CHAR_TOL));
    }
    if datum.label() == "A1" {
        let tol = cfg.quad_tol.unwrap_or(SCHUR_TOL);
        for (l1, l2) in [(1, 1), (1, 2), (2, 2), (0, 4)] {
            let s = schur_report(l1, l2, 64, ThetaRule::GaussLegendre, 3, seed)?;
            let c = single(&format!("schur_quadrature_{l1}_{l2}"), s.worst <= tol, || format!("worst {:e}", s.worst));
            out.checks.push(CheckEntry::new("peterweyl", &c).numeric(s.worst, tol));
            let v = single("haar_volume", s.volume_error <= VOLUME_TOL, || format!("{:e}", s.volume_error));
            if l1 == 1 && l2 == 1 {
                out.checks.push(CheckEntry::new("peterweyl", &v).numeric(s.volume_error, VOLUME_TOL));
            }
        }
        let conv = su2_convolution_error(1, 64, 3, seed)?;
        let c = single("su2_convolution_quadrature", conv <= CONV_TOL, || format!("{conv:e}"));
        out.checks.push(CheckEntry::new("peterweyl", &c).numeric(conv, CONV_TOL));
    }
    Ok(out)
}

fn run_one(suite: Suite, datum: &CartanDatum, cfg: &RunConfig) -> CliResult<SuiteOutput> {
    let seed = cfg.seed();
    match suite {
        Suite::LieAlg => Ok(liealg_suite(&LieAlgebra::new(datum)?)),
        Suite::ChevGroup => {
            let field = FieldChoice::parse(cfg.field.as_deref())?;
            chevgroup_suite(&ChevalleyGroup::new(datum)?, field, seed)
        }
        Suite::Compact => compact_suite(&CompactForm::new(datum)?, cfg),
        Suite::HwModules => hwmodules_suite(datum, seed),
        Suite::PeterWeyl => peterweyl_suite(datum, cfg),
    }
}

fn thread_count() -> usize {
    std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()).filter(|&n| n > 0).unwrap_or(1)
}

/// Run the suites, in parallel over `ROOTFORM_THREADS` workers; the report
/// order is fixed regardless.
pub fn run_verify(suites: &[Suite], cfg: &RunConfig) -> CliResult<Report> {
    let datum = cfg.datum()?;
    FieldChoice::parse(cfg.field.as_deref())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count())
        .build()
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let outs: Vec<CliResult<SuiteOutput>> = pool.install(|| suites.par_iter().map(|s| run_one(*s, &datum, cfg)).collect());
    let mut report = Report::new("verify", cfg);
    for o in outs {
        report.extend(o?);
    }
    Ok(report)
}

/// Flip the sign of one structure constant and run the Lie-algebra checks.
pub fn run_mutated_gamma(cfg: &RunConfig) -> CliResult<Report> {
    let datum = cfg.datum()?;
    let mut lie = LieAlgebra::new(&datum)?;
    let (s0, s1) = (lie.rc.simple(0), if lie.rank() > 1 { lie.rc.simple(1) } else { lie.rc.simple(0) });
    if lie.gamma_entry(s0, s1).is_none() {
        return Err(CliError::Usage(format!("{} has no structure constant to mutate", datum.label())));
    }
    lie.flip_gamma_sign(s0, s1);
    let mut report = Report::new("verify", cfg);
    report.data.insert(
        "fixture".into(),
        json!({"mutated_gamma": [lie.rc.name(s0), lie.rc.name(s1)]}),
    );
    report.extend(liealg_suite(&lie));
    Ok(report)
}

// ---------------------------------------------------------------------------
// Tables

/// All roots, positive then negative, as integer vectors in the simple basis.
pub fn roots_table(datum: &CartanDatum) -> Vec<Vec<i64>> {
    let rs = RootSystem::generate(datum);
    let mut out: Vec<Vec<i64>> = rs.positive.iter().map(|r| r.coeffs.clone()).collect();
    out.extend(rs.positive.iter().map(|r| r.coeffs.iter().map(|c| -c).collect()));
    out
}

pub fn roots_csv(datum: &CartanDatum) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<String> = (1..=datum.rank).map(|i| format!("c{i}")).collect();
    w.write_record(&header).unwrap();
    for r in roots_table(datum) {
        w.write_record(r.iter().map(|c| c.to_string())).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

pub fn rootcat_json(datum: &CartanDatum) -> Value {
    let rc = RootCategory::new(datum);
    let objects: Vec<Value> = (0..rc.len())
        .map(|x| {
            let o = &rc.objects[x];
            json!({"id": x, "name": rc.name(x), "class": o.class, "parity": o.parity, "d": o.d})
        })
        .collect();
    let shift: Vec<usize> = (0..rc.len()).map(|x| rc.shift(x)).collect();
    let a: Vec<Vec<i64>> = (0..rc.len()).map(|x| (0..rc.len()).map(|y| rc.a(x, y)).collect()).collect();
    json!({"type": datum.label(), "objects": objects, "shift": shift, "a_matrix": a})
}

pub fn liealg_gamma_json(datum: &CartanDatum) -> CliResult<Value> {
    let lie = LieAlgebra::new(datum)?;
    let mut table = BTreeMap::new();
    for x in 0..lie.n_obj() {
        for y in 0..lie.n_obj() {
            if let Some((l, g)) = lie.gamma_entry(x, y) {
                table.insert(
                    format!("{x},{y}"),
                    json!({"x": lie.rc.name(x), "y": lie.rc.name(y), "l": l, "l_name": lie.rc.name(l), "gamma": g}),
                );
            }
        }
    }
    Ok(json!({"type": datum.label(), "gamma": table}))
}

pub fn liealg_killing_json(datum: &CartanDatum) -> CliResult<Value> {
    let lie = LieAlgebra::new(datum)?;
    let kd = lie.killing_def36();
    let tg = lie.trace_gram();
    let basis: Vec<String> = (0..lie.dim()).map(|b| lie.basis_name(b)).collect();
    Ok(json!({"type": datum.label(), "basis": basis, "killing": kd, "trace_form": tg, "equal": kd == tg}))
}

pub fn compact_exp_json(datum: &CartanDatum, gen: &str, obj: usize, t: f64) -> CliResult<Value> {
    let cf = CompactForm::new(datum)?;
    if obj >= cf.lie().n_obj() {
        return Err(CliError::Usage(format!("object id {obj} out of range 0..{}", cf.lie().n_obj())));
    }
    let m = match gen {
        "alpha" => cf.exp_alpha(obj, t),
        "beta" => cf.exp_beta(obj, t)?,
        "xi" => cf.exp_xi(obj, t)?,
        _ => return Err(CliError::Usage(format!("unknown generator `{gen}`"))),
    };
    let rows: Vec<Vec<f64>> = (0..m.nrows()).map(|r| m.row(r).iter().copied().collect()).collect();
    let basis: Vec<String> = (0..cf.dim()).map(|b| cf.basis_name(b)).collect();
    Ok(json!({"type": datum.label(), "gen": gen, "obj": obj, "obj_name": cf.lie().rc.name(obj), "t": t, "basis": basis, "matrix": rows}))
}

fn qmat(m: &Mat<Q>) -> Vec<Vec<String>> {
    (0..m.rows).map(|r| (0..m.cols).map(|c| m.get(r, c).to_string()).collect()).collect()
}

pub fn irrep_json(datum: &CartanDatum, weight: &[i64], emit: &str, cap: Option<u64>) -> CliResult<Value> {
    let m = WeightModule::build_with_cap(datum, weight, cap.unwrap_or(DEFAULT_DIM_CAP))?;
    let head = json!({"type": datum.label(), "weight": weight, "dim": m.dim()});
    let body = match emit {
        "dims" => {
            let mults: Vec<Value> = m.multiplicities().into_iter().map(|(w, k)| json!({"weight": w, "mult": k})).collect();
            json!({"weyl_dim": weyl_dimension(datum, weight), "multiplicities": mults, "basis_weights": m.basis_weights()})
        }
        "gram" => json!({"gram": qmat(&m.gram())}),
        "actions" => {
            let e: Vec<_> = (0..m.rank()).map(|i| qmat(&m.e(i))).collect();
            let f: Vec<_> = (0..m.rank()).map(|i| qmat(&m.f(i))).collect();
            json!({"basis_weights": m.basis_weights(), "E": e, "F": f})
        }
        _ => return Err(CliError::Usage(format!("unknown irrep table `{emit}`"))),
    };
    let mut v = head;
    v.as_object_mut().unwrap().extend(body.as_object().unwrap().clone());
    Ok(v)
}

/// `j` as `a/2`, an integer, or a decimal multiple of 1/2; returns `2j`.
pub fn parse_spin(s: &str) -> CliResult<i64> {
    let bad = || CliError::Usage(format!("spin `{s}` is not a nonnegative half-integer"));
    let two_j = if let Some((a, b)) = s.split_once('/') {
        let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        match b {
            1 => 2 * a,
            2 => a,
            _ => return Err(bad()),
        }
    } else {
        let x: f64 = s.trim().parse().map_err(|_| bad())?;
        let t = 2.0 * x;
        if (t - t.round()).abs() > 1e-12 {
            return Err(bad());
        }
        t.round() as i64
    };
    if !(0..=8).contains(&two_j) {
        return Err(bad());
    }
    Ok(two_j)
}

pub fn schur_command(j1: &str, j2: &str, grid: usize, rule: ThetaRule, cfg: &RunConfig) -> CliResult<Report> {
    let (l1, l2) = (parse_spin(j1)?, parse_spin(j2)?);
    if grid == 0 {
        return Err(CliError::Usage("grid must be positive".into()));
    }
    let tol = cfg.quad_tol.unwrap_or(SCHUR_TOL);
    let s = schur_report(l1, l2, grid, rule, 3, cfg.seed())?;
    let mut rep = Report::new("peterweyl schur", cfg);
    let c = single("schur_quadrature", s.worst <= tol, || format!("worst {:e}", s.worst));
    let v = single("haar_volume", s.volume_error <= VOLUME_TOL, || format!("{:e}", s.volume_error));
    let mut out = SuiteOutput::default();
    out.checks.push(CheckEntry::new("peterweyl", &c).numeric(s.worst, tol));
    out.checks.push(CheckEntry::new("peterweyl", &v).numeric(s.volume_error, VOLUME_TOL));
    out.data.insert("schur".into(), serde_json::to_value(&s).unwrap());
    rep.extend(out);
    Ok(rep)
}

pub fn plancherel_command(cfg: &RunConfig) -> CliResult<Report> {
    let datum = cfg.datum()?;
    let weights = cfg.truncation_weights(&datum)?;
    let tr = Truncation::new(&datum, &weights)?;
    let (checks, worst) = tr.plancherel_checks(cfg.seed(), 12);
    let mut out = SuiteOutput::default();
    for c in &checks {
        let e = CheckEntry::new("peterweyl", c);
        out.checks.push(if c.name == "orthonormal_route_agrees" { e.numeric(worst, 1e-9) } else { e });
    }
    let blocks: Vec<Value> = tr.blocks.iter().map(|(k, b)| json!({"weight": k, "dim": b.dim()})).collect();
    out.data.insert("blocks".into(), json!(blocks));
    let mut rep = Report::new("peterweyl plancherel", cfg);
    rep.extend(out);
    Ok(rep)
}

pub fn lattice_command(cfg: &RunConfig) -> CliResult<Report> {
    let datum = cfg.datum()?;
    let lat = integral_lattice_k(&datum)?;
    let mut out = SuiteOutput::default();
    out.push(
        "peterweyl",
        &single("integral_forms_are_root_lattice", lat.passed(), || format!("{lat:?}")),
    );
    out.data.insert("lattice".into(), serde_json::to_value(&lat).unwrap());
    if datum.label() == "A3" {
        let a3 = a3_counterexample()?;
        out.push("peterweyl", &single("a3_remark", a3.reproduced, || format!("{:?}", a3.statement)));
        out.data.insert("a3_remark".into(), serde_json::to_value(&a3).unwrap());
    }
    let mut rep = Report::new("peterweyl lattice", cfg);
    rep.extend(out);
    Ok(rep)
}

pub fn qplus_json(datum: &CartanDatum, bound: i64) -> CliResult<Value> {
    if bound < 0 {
        return Err(CliError::Usage("bound must be nonnegative".into()));
    }
    let list: Vec<Value> = q_plus_enumerate(datum, bound)
        .into_iter()
        .map(|w| json!({"weight": w, "dim": weyl_dimension(datum, &w)}))
        .collect();
    Ok(json!({"type": datum.label(), "bound": bound, "q_plus": list}))
}
