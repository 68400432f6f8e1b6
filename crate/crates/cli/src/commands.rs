//! Command implementations. Each returns a [`Report`]; nothing here prints.

use std::path::{Path, PathBuf};

use catcross_core::algebra::{CheckMode, DEFAULT_ENUMERATION_CAP};
use catcross_core::category::Mor;
use catcross_core::checklist::Checklist;
use catcross_core::ideals::{
    equivalence_check, maximal_commutativity_converse, normal_subgroupoid_ideal,
    quotient_kernel_ideal, skew_congruence_ideal, verify_intersection_theorem, IdealError,
    QuotientIdealReport, FALLBACK_SAMPLES,
};
use catcross_core::ring::HomViolation;
use catcross_core::structure::{
    annihilator_form_holds, center_bruteforce, center_by_conditions, center_skew_abelian,
    center_twisted, classify_commutativity, commutant_bruteforce, commutant_is_commutative,
    commutant_of_coefficients, is_maximal_commutative, StructureError,
};
use catcross_core::system::{CrossedSystem, SystemError, Violation};
use serde_json::{json, Value};

use crate::format::{FormatError, Loaded, SystemDescription};
use crate::gallery;
use crate::report::{Report, Status};

/// Violations listed in full in a validation report; the rest are counted.
const LISTED_VIOLATIONS: usize = 20;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Settings {
    /// Overrides both the enumeration cap and the closure cap.
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Analysis {
    Center,
    Commutant,
    MaxComm,
    Commutative,
    Strong,
}

impl Analysis {
    pub fn name(self) -> &'static str {
        match self {
            Analysis::Center => "center",
            Analysis::Commutant => "commutant",
            Analysis::MaxComm => "maxcomm",
            Analysis::Commutative => "commutative",
            Analysis::Strong => "strong",
        }
    }

    pub const ALL: [Analysis; 5] = [
        Analysis::Center,
        Analysis::Commutant,
        Analysis::MaxComm,
        Analysis::Commutative,
        Analysis::Strong,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealsTask {
    Theorem,
    Quotient,
    Normal,
    Converse,
    Equivalence,
}

impl IdealsTask {
    pub fn name(self) -> &'static str {
        match self {
            IdealsTask::Theorem => "theorem",
            IdealsTask::Quotient => "quotient",
            IdealsTask::Normal => "normal",
            IdealsTask::Converse => "converse",
            IdealsTask::Equivalence => "equivalence",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ScanChoice {
    /// Exhaustive when the carrier fits under the cap, sampled otherwise.
    #[default]
    Auto,
    Exhaustive,
    Sample(usize),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DemoOptions {
    pub n: Option<usize>,
    pub ring: Option<String>,
    pub group: Option<String>,
    pub out: Option<PathBuf>,
}

struct Context {
    loaded: Loaded,
    enumeration_cap: usize,
    closure_cap: usize,
    seed: u64,
}

fn format_status(e: &FormatError) -> Status {
    match e {
        FormatError::Syntax { .. } | FormatError::Semantic { .. } => Status::ParseFailure,
        FormatError::Ring(_) | FormatError::Category(_) | FormatError::System(_) => Status::Invalid,
    }
}

/// Reads `source` as a file when one exists at that path, and as a bundled
/// system name otherwise.
pub fn load_description(source: &str) -> Result<SystemDescription, (Status, String)> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| (Status::ParseFailure, format!("{source}: {e}")))?;
        return SystemDescription::parse(&text).map_err(|e| (format_status(&e), e.to_string()));
    }
    gallery::get(source).ok_or_else(|| {
        (
            Status::ParseFailure,
            format!("{source}: no such file or bundled system"),
        )
    })
}

fn load(source: &str, settings: Settings, command: &str) -> Result<Context, Box<Report>> {
    let description =
        load_description(source).map_err(|(status, msg)| Box::new(Report::failed(command, status, msg)))?;
    let loaded = description.build().map_err(|e| {
        let mut r = Report::failed(command, format_status(&e), e.to_string());
        r.system = Some(description.name().to_string());
        Box::new(r)
    })?;
    let meta = &loaded.description.metadata;
    Ok(Context {
        enumeration_cap: settings
            .cap
            .or(meta.enumeration_cap)
            .unwrap_or(DEFAULT_ENUMERATION_CAP),
        closure_cap: settings
            .cap
            .or(meta.closure_cap)
            .unwrap_or(DEFAULT_ENUMERATION_CAP),
        seed: meta.seed.unwrap_or(0),
        loaded,
    })
}

fn start(ctx: &Context, command: String) -> Report {
    let mut r = Report::new(command);
    r.system = Some(ctx.loaded.description.name().to_string());
    r
}

/// Stops with status 2 and the first violation when the system is unlawful.
fn require_valid(ctx: &Context, report: &mut Report) -> bool {
    let sys = &ctx.loaded.system;
    match sys.validate().violations.first() {
        None => true,
        Some(v) => {
            report.status = Status::Invalid;
            report.set("error", "crossed system is invalid");
            report.set("witness", witness(sys, v));
            false
        }
    }
}

fn names(sys: &CrossedSystem, ms: impl IntoIterator<Item = Mor>) -> Vec<String> {
    ms.into_iter().map(|s| sys.category().name(s).to_string()).collect()
}

/// The violated axiom with its tuple in morphism and element names and
/// both sides of the failing equation.
pub fn witness(sys: &CrossedSystem, v: &Violation) -> Value {
    let g = sys.category();
    let m = |s: Mor| g.name(s).to_string();
    let (left, right) = v.sides(sys);
    let (tuple, ring) = match *v {
        Violation::SigmaNotHom { s, ref law } => {
            let d = sys.ring(g.dom(s));
            let law = match *law {
                HomViolation::Unit => json!({"law": "unit"}),
                HomViolation::Additive(x, y) => {
                    json!({"law": "additive", "x": d.name_of(x), "y": d.name_of(y)})
                }
                HomViolation::Multiplicative(x, y) => {
                    json!({"law": "multiplicative", "x": d.name_of(x), "y": d.name_of(y)})
                }
            };
            (json!({"s": m(s), "law": law}), sys.ring(g.cod(s)))
        }
        Violation::SigmaIdentity { object, a } => (
            json!({"object": g.object_name(object), "a": sys.ring(object).name_of(a)}),
            sys.ring(object),
        ),
        Violation::RightUnit { s } => (json!({"s": m(s)}), sys.ring(g.cod(s))),
        Violation::LeftUnit { t } => (json!({"t": m(t)}), sys.ring(g.cod(t))),
        Violation::Cocycle { s, t, r } => {
            (json!({"s": m(s), "t": m(t), "r": m(r)}), sys.ring(g.cod(s)))
        }
        Violation::Twisting { s, t, a } => (
            json!({"s": m(s), "t": m(t), "a": sys.ring(g.dom(t)).name_of(a)}),
            sys.ring(g.cod(s)),
        ),
    };
    json!({
        "axiom": v.axiom_name(),
        "tuple": tuple,
        "left": ring.name_of(left),
        "right": ring.name_of(right),
    })
}

pub fn validate(source: &str, settings: Settings) -> Report {
    let command = format!("validate {source}");
    let ctx = match load(source, settings, &command) {
        Ok(c) => c,
        Err(r) => return *r,
    };
    let mut report = start(&ctx, command);
    let sys = &ctx.loaded.system;
    let g = sys.category();
    let validation = sys.validate();
    report.set("valid", validation.is_valid());
    report.set("objects", g.object_count());
    report.set("morphisms", g.morphism_count());
    report.set("carrier_size", sys.enumeration_size(|_| true).to_string());
    if !validation.is_valid() {
        report.status = Status::Invalid;
        report.set("failing_axioms", validation.failing_axioms());
        report.set("violation_count", validation.violations.len());
        let listed: Vec<Value> = validation
            .violations
            .iter()
            .take(LISTED_VIOLATIONS)
            .map(|v| witness(sys, v))
            .collect();
        report.set("violations", listed);
        return report;
    }
    report.set("groupoid", g.is_groupoid());
    report.set("twisted", sys.is_twisted().unwrap_or(false));
    report.set("skew", sys.is_skew().unwrap_or(false));
    report.set("strongly_graded", sys.is_strongly_graded());
    report.set("coefficients_commutative", sys.coefficients_commutative());
    if let Ok(check) = sys.sigma_is_functor() {
        report.set("sigma_is_functor", check.composes());
    }
    report
}

fn structure_failure(report: &mut Report, e: StructureError) {
    match e {
        StructureError::Hypotheses(c) => {
            report.add_hypotheses(&c);
            report.escalate(Status::HypothesisRejected);
        }
        StructureError::NotCommutative(e) => {
            let mut c = Checklist::new();
            c.check_with("every A_e commutative", false, format!("object {}", e.0));
            report.add_hypotheses(&c);
            report.escalate(Status::HypothesisRejected);
        }
        StructureError::System(SystemError::Invalid(_)) => report.escalate(Status::Invalid),
        e if e.is_cap_exceeded() => {
            report.escalate(Status::CapExceeded);
            report.set("error", e.to_string());
        }
        e => {
            report.escalate(Status::Invalid);
            report.set("error", e.to_string());
        }
    }
}

pub fn analyze(source: &str, what: Analysis, settings: Settings) -> Report {
    let command = format!("analyze {source} --what {}", what.name());
    let ctx = match load(source, settings, &command) {
        Ok(c) => c,
        Err(r) => return *r,
    };
    let mut report = start(&ctx, command);
    if !require_valid(&ctx, &mut report) {
        return report;
    }
    if let Err(e) = run_analysis(&ctx, what, &mut report) {
        structure_failure(&mut report, e);
    }
    report
}

fn run_analysis(ctx: &Context, what: Analysis, report: &mut Report) -> Result<(), StructureError> {
    let sys = &ctx.loaded.system;
    let cap = ctx.enumeration_cap;
    match what {
        Analysis::Center => {
            let center = center_by_conditions(sys, cap)?;
            report.set("size", center.len());
            report.set("elements", center.render(sys));
            match center_bruteforce(sys, cap) {
                Ok(brute) => {
                    let agrees = brute.elements() == center.elements();
                    report.set("oracle", if agrees { "agrees" } else { "disagrees" });
                    if !agrees {
                        report.escalate(Status::VerificationFailed);
                        report.set("oracle_elements", brute.render(sys));
                    }
                }
                Err(e) if e.is_cap_exceeded() => {
                    report.set("oracle", "skipped");
                    report.warn(format!(
                        "carrier exceeds the cap {cap}; downgraded to conditions-only"
                    ));
                }
                Err(e) => return Err(e),
            }
            let mut corollaries = serde_json::Map::new();
            for (label, result) in [
                ("twisted", center_twisted(sys, cap)),
                ("skew_abelian", center_skew_abelian(sys, cap)),
            ] {
                match result {
                    Ok(set) => {
                        let agrees = set.elements() == center.elements();
                        if !agrees {
                            report.escalate(Status::VerificationFailed);
                        }
                        corollaries.insert(
                            label.into(),
                            Value::String(if agrees { "agrees" } else { "disagrees" }.into()),
                        );
                    }
                    Err(StructureError::Hypotheses(_)) => {
                        corollaries.insert(label.into(), Value::String("not applicable".into()));
                    }
                    Err(e) if e.is_cap_exceeded() => {
                        corollaries.insert(label.into(), Value::String("skipped".into()));
                    }
                    Err(e) => return Err(e),
                }
            }
            report.set("corollaries", corollaries);
        }
        Analysis::Commutant => {
            let commutant = commutant_of_coefficients(sys)?;
            let per_loop: serde_json::Map<String, Value> = commutant
                .coefficients()
                .iter()
                .map(|(s, codes)| {
                    let ring = sys.coeff_ring(*s);
                    let names: Vec<&str> = codes.iter().map(|&c| ring.name_of(c)).collect();
                    (sys.category().name(*s).to_string(), json!(names))
                })
                .collect();
            report.set("coefficients", per_loop);
            report.set("cardinality", commutant.cardinality().to_string());
            let g = sys.category();
            let equals_a = commutant.coefficients().iter().all(|(s, codes)| {
                if g.is_identity(*s) {
                    codes.len() == sys.coeff_ring(*s).size()
                } else {
                    codes.len() == 1
                }
            });
            report.set("equals_A", equals_a);
            report.set("annihilator_form", annihilator_form_holds(sys)?);
            match commutant_bruteforce(sys, cap) {
                Ok(brute) => {
                    let ours = commutant.elements(sys, cap)?;
                    let agrees = brute.elements() == ours.elements();
                    report.set("oracle", if agrees { "agrees" } else { "disagrees" });
                    if !agrees {
                        report.escalate(Status::VerificationFailed);
                    }
                }
                Err(e) if e.is_cap_exceeded() => {
                    report.set("oracle", "skipped");
                    report.warn(format!("carrier exceeds the cap {cap}; oracle skipped"));
                }
                Err(e) => return Err(e),
            }
        }
        Analysis::MaxComm => {
            let m = is_maximal_commutative(sys)?;
            report.set("maximal_commutative", m.maximal);
            if let Some((s, b)) = m.witness {
                report.set(
                    "witness",
                    json!({"loop": sys.category().name(s), "b": sys.coeff_ring(s).name_of(b)}),
                );
            }
            if let Some(loops) = &m.nontrivial_loops {
                report.set("nontrivial_loops", names(sys, loops.iter().copied()));
            }
            if let Some(agrees) = m.shortcut_agrees {
                report.set("domain_shortcut", if agrees { "agrees" } else { "disagrees" });
                if !agrees {
                    report.escalate(Status::VerificationFailed);
                }
            }
            match commutant_is_commutative(sys, cap) {
                Ok(c) => report.set("commutant_commutative", c),
                Err(e) if e.is_cap_exceeded() => report.warn("commutant too large to test for commutativity"),
                Err(e) => return Err(e),
            }
        }
        Analysis::Commutative => {
            let c = classify_commutativity(sys)?;
            report.set("commutative", c.commutative);
            report.set(
                "conditions",
                json!({
                    "0_alpha_nonzero": c.alpha_nonzero,
                    "i_commutative": c.commutative,
                    "ii_abelian_monoids": c.abelian_monoids,
                    "iii_loops_twisted": c.loops_twisted,
                    "iv_coefficients_commutative": c.coefficients_commutative,
                    "v_alpha_symmetric": c.alpha_symmetric,
                }),
            );
            if let Some((x, y)) = &c.noncommuting_pair {
                report.set("noncommuting_pair", [x, y]);
            }
            report.set("implication_a", c.implication_a);
            report.set("implication_b", c.implication_b);
            if !c.consistent() {
                report.escalate(Status::VerificationFailed);
            }
        }
        Analysis::Strong => {
            let g = sys.category();
            let failing: Vec<String> = g
                .composable_pairs()
                .into_iter()
                .filter(|&(s, t)| sys.coeff_ring(s).left_inverse_code(sys.alpha(s, t)).is_none())
                .map(|(s, t)| format!("({},{})", g.name(s), g.name(t)))
                .collect();
            report.set("strongly_graded", sys.is_strongly_graded());
            report.set("non_invertible_alpha", failing);
        }
    }
    Ok(())
}

fn ideal_failure(report: &mut Report, e: IdealError) {
    match e {
        IdealError::Hypotheses(c) => {
            report.add_hypotheses(&c);
            report.escalate(Status::HypothesisRejected);
        }
        IdealError::Structure(s) => structure_failure(report, s),
        e if e.is_cap_exceeded() => {
            report.escalate(Status::CapExceeded);
            report.set("error", e.to_string());
        }
        e => {
            report.escalate(Status::Invalid);
            report.set("error", e.to_string());
        }
    }
}

fn scan_mode(ctx: &Context, choice: ScanChoice, report: &mut Report) -> CheckMode {
    let size = ctx.loaded.system.enumeration_size(|_| true);
    match choice {
        ScanChoice::Exhaustive => CheckMode::Exhaustive {
            cap: ctx.enumeration_cap,
        },
        ScanChoice::Sample(count) => {
            report.seed = Some(ctx.seed);
            CheckMode::Sample {
                count,
                seed: ctx.seed,
            }
        }
        ScanChoice::Auto if size <= ctx.enumeration_cap as u128 => CheckMode::Exhaustive {
            cap: ctx.enumeration_cap,
        },
        ScanChoice::Auto => {
            report.seed = Some(ctx.seed);
            report.warn(format!(
                "carrier of {size} elements exceeds the cap; sampling {FALLBACK_SAMPLES} elements"
            ));
            CheckMode::Sample {
                count: FALLBACK_SAMPLES,
                seed: ctx.seed,
            }
        }
    }
}

fn mode_json(mode: CheckMode) -> Value {
    match mode {
        CheckMode::Exhaustive { .. } => json!("exhaustive"),
        CheckMode::Sample { count, seed } => json!({"sample": count, "seed": seed}),
    }
}

fn missing(report: &mut Report, what: &str) {
    let mut c = Checklist::new();
    c.check(&format!("metadata supplies {what}"), false);
    report.add_hypotheses(&c);
    report.escalate(Status::HypothesisRejected);
}

fn quotient_json(q: &QuotientIdealReport) -> Value {
    json!({
        "generator": q.generator,
        "quotient_morphisms": q.quotient_morphisms,
        "ideal_size": q.ideal_size,
        "coefficient_intersection": q.coefficient_intersection,
        "projected_generator_zero": q.projected_generator_zero,
        "passed": q.passed(),
    })
}

pub fn ideals(source: &str, task: IdealsTask, scan: ScanChoice, seed: Option<u64>, settings: Settings) -> Report {
    let mut command = format!("ideals {source} --sub {}", task.name());
    match scan {
        ScanChoice::Auto => {}
        ScanChoice::Exhaustive => command.push_str(" --exhaustive"),
        ScanChoice::Sample(n) => command.push_str(&format!(" --sample {n}")),
    }
    if let Some(s) = seed {
        command.push_str(&format!(" --seed {s}"));
    }
    let mut ctx = match load(source, settings, &command) {
        Ok(c) => c,
        Err(r) => return *r,
    };
    if let Some(s) = seed {
        ctx.seed = s;
    }
    let mut report = start(&ctx, command);
    if !require_valid(&ctx, &mut report) {
        return report;
    }
    if let Err(e) = run_ideals(&ctx, task, scan, &mut report) {
        ideal_failure(&mut report, e);
    }
    report
}

fn resolve<T>(report: &mut Report, value: Result<Option<T>, FormatError>, what: &str) -> Option<T> {
    match value {
        Ok(Some(v)) => Some(v),
        Ok(None) => {
            missing(report, what);
            None
        }
        Err(e) => {
            report.escalate(format_status(&e));
            report.set("error", e.to_string());
            None
        }
    }
}

fn run_ideals(ctx: &Context, task: IdealsTask, scan: ScanChoice, report: &mut Report) -> Result<(), IdealError> {
    let sys = &ctx.loaded.system;
    let loaded = &ctx.loaded;
    match task {
        IdealsTask::Theorem => {
            let mode = scan_mode(ctx, scan, report);
            let t = verify_intersection_theorem(sys, mode, ctx.closure_cap)?;
            report.add_hypotheses(&t.hypotheses);
            report.set("mode", mode_json(mode));
            report.set("checked", t.scan.checked);
            report.set("passed", t.scan.passed);
            report.set("counterexamples", &t.scan.counterexamples);
            if !t.scan.all_passed() {
                report.escalate(Status::VerificationFailed);
            }
        }
        IdealsTask::Quotient => {
            let Some(congruence) = resolve(report, loaded.congruence(), "a congruence") else {
                return Ok(());
            };
            let Some(generator) = resolve(report, loaded.generator(), "a generator") else {
                return Ok(());
            };
            let mut ran = 0;
            let mut rejected = Checklist::new();
            for (label, result) in [
                ("kernel", quotient_kernel_ideal(sys, &congruence, &generator, ctx.closure_cap)),
                ("skew_congruence", skew_congruence_ideal(sys, &congruence, &generator, ctx.closure_cap)),
            ] {
                match result {
                    Ok(q) => {
                        ran += 1;
                        for h in q.hypotheses.iter() {
                            let mut h = h.clone();
                            h.name = format!("{label}: {}", h.name);
                            report.hypotheses.push(h);
                        }
                        if !q.passed() {
                            report.escalate(Status::VerificationFailed);
                        }
                        report.set(label, quotient_json(&q));
                    }
                    Err(IdealError::Hypotheses(c)) => {
                        report.set(label, "not applicable");
                        rejected.0.extend(c.0.into_iter().map(|mut h| {
                            h.name = format!("{label}: {}", h.name);
                            h
                        }));
                    }
                    Err(e) => return Err(e),
                }
            }
            if ran == 0 {
                return Err(IdealError::Hypotheses(rejected));
            }
        }
        IdealsTask::Normal => {
            let Some(normal) = resolve(report, loaded.normal(), "a normal subgroupoid") else {
                return Ok(());
            };
            let Some(generator) = resolve(report, loaded.generator(), "a generator") else {
                return Ok(());
            };
            let q = normal_subgroupoid_ideal(sys, &normal, &generator, ctx.closure_cap)?;
            report.add_hypotheses(&q.hypotheses);
            if !q.passed() {
                report.escalate(Status::VerificationFailed);
            }
            report.set("construction", quotient_json(&q));
        }
        IdealsTask::Converse => {
            let c = maximal_commutativity_converse(sys, ctx.closure_cap)?;
            report.add_hypotheses(&c.hypotheses);
            if !c.passed() {
                report.escalate(Status::VerificationFailed);
            }
            match &c.outcome {
                catcross_core::ideals::ConverseOutcome::Witness {
                    loop_morphism,
                    subgroups,
                    well_defined,
                    ideal,
                } => {
                    report.set("outcome", "witness");
                    report.set("loop", loop_morphism);
                    report.set("subgroups", subgroups);
                    report.set("well_defined", well_defined);
                    report.set("ideal", quotient_json(ideal));
                }
                catcross_core::ideals::ConverseOutcome::Maximal { nontrivial_loops } => {
                    report.set("outcome", "maximal");
                    report.set("nontrivial_loops", nontrivial_loops);
                }
            }
        }
        IdealsTask::Equivalence => {
            let mode = scan_mode(ctx, scan, report);
            let e = equivalence_check(sys, mode, ctx.closure_cap, ctx.seed)?;
            report.add_hypotheses(&e.hypotheses);
            if e.fell_back_to_sampling {
                report.seed = Some(ctx.seed);
                report.warn(format!(
                    "exhaustive scan above the cap; sampled {FALLBACK_SAMPLES} elements"
                ));
            }
            report.set("mode", mode_json(e.scan.mode));
            report.set("maximal_commutative", e.maximal_commutative);
            report.set("ideals_meet_A", e.ideals_meet_a);
            report.set("checked", e.scan.checked);
            report.set("counterexamples", &e.scan.counterexamples);
            report.set("agree", e.agree());
            if !e.agree() {
                report.escalate(Status::VerificationFailed);
            }
        }
    }
    Ok(())
}

/// Resolves a demo name and its options to a description.
pub fn demo_description(name: &str, opts: &DemoOptions) -> Result<SystemDescription, String> {
    let ring = opts.ring.as_deref();
    match name {
        "matrix" => {
            let n = opts.n.unwrap_or(2);
            let ring = ring.unwrap_or("z2");
            gallery::matrix(n, ring).ok_or_else(|| format!("no matrix demo for n={n}, ring={ring}"))
        }
        "groupalgebra" => {
            let group = opts.group.as_deref().unwrap_or("c2");
            let ring = ring.unwrap_or("z2");
            gallery::group_algebra(group, ring)
                .ok_or_else(|| format!("no group algebra demo for group={group}, ring={ring}"))
        }
        "skew-swap" => Ok(gallery::get("swap_skew").expect("bundled")),
        other => gallery::get(other).ok_or_else(|| format!("unknown demo name {other}")),
    }
}

pub fn demo(name: &str, opts: &DemoOptions, settings: Settings) -> Report {
    let mut command = format!("demo {name}");
    if let Some(n) = opts.n {
        command.push_str(&format!(" --n {n}"));
    }
    if let Some(r) = &opts.ring {
        command.push_str(&format!(" --ring {r}"));
    }
    if let Some(g) = &opts.group {
        command.push_str(&format!(" --group {g}"));
    }
    let description = match demo_description(name, opts) {
        Ok(d) => d,
        Err(msg) => return Report::failed(command, Status::ParseFailure, msg),
    };
    let path = opts
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.json", description.name())));
    let text = description.to_json();
    if let Err(e) = std::fs::write(&path, &text) {
        return Report::failed(command, Status::ParseFailure, format!("{}: {e}", path.display()));
    }
    let Some(path_str) = path.to_str() else {
        return Report::failed(command, Status::ParseFailure, "output path is not UTF-8");
    };
    let mut report = Report::new(command);
    report.system = Some(description.name().to_string());
    report.set("written", path.file_name().and_then(|f| f.to_str()).unwrap_or(path_str));

    let round_trip = std::fs::read_to_string(&path)
        .ok()
        .and_then(|t| SystemDescription::parse(&t).ok())
        .filter(|d| *d == description)
        .and_then(|d| d.build().ok())
        .zip(description.build().ok())
        .is_some_and(|(a, b)| a.system == b.system);
    report.set("round_trip", round_trip);
    if !round_trip {
        report.escalate(Status::VerificationFailed);
    }

    let validation = validate(path_str, settings);
    report.set("valid", validation.get("valid").cloned().unwrap_or(Value::Null));
    report.escalate(validation.status);
    if validation.status != Status::Pass {
        return report;
    }
    let mut suite = serde_json::Map::new();
    for what in Analysis::ALL {
        let r = analyze(path_str, what, settings);
        report.escalate(match r.status {
            Status::HypothesisRejected => Status::Pass,
            s => s,
        });
        report.warnings.extend(r.warnings.iter().map(|w| format!("{}: {w}", what.name())));
        let mut section = r.result.clone();
        if let Value::Object(m) = &mut section {
            if r.status != Status::Pass {
                m.insert("status".into(), json!(r.status.label()));
            }
        }
        suite.insert(what.name().into(), section);
    }
    report.set("analysis", suite);
    report
}

pub fn list() -> Report {
    let mut report = Report::new("list");
    let entries: Vec<Value> = gallery::all()
        .iter()
        .map(|d| {
            json!({
                "name": d.name(),
                "notes": d.metadata.notes.clone().unwrap_or_default(),
            })
        })
        .collect();
    report.set("systems", entries);
    report
}
