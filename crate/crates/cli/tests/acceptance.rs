//! Acceptance suite. Prints one PASS or FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use catcross_cli::gallery;
use catcross_core::algebra::{AlgebraElement, CheckMode};
use catcross_core::category::{FiniteCategory, Mor};
use catcross_core::ideals::{
    equivalence_check, ideal_closure, maximal_commutativity_converse, normal_subgroupoid_ideal,
    quotient_kernel_ideal, skew_congruence_ideal, verify_intersection_theorem, ConverseOutcome,
    IdealError, QuotientIdealReport,
};
use catcross_core::ring::{Code, FiniteRing, HomViolation};
use catcross_core::structure::{
    center_bruteforce, center_by_conditions, classify_commutativity, commutant_bruteforce,
    commutant_of_coefficients, ElementSet,
};
use catcross_core::system::{CrossedSystem, Violation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn bundled(name: &str) -> CrossedSystem {
    gallery::get(name)
        .unwrap_or_else(|| panic!("{name} is bundled"))
        .build()
        .unwrap()
        .system
}

fn all_bundled() -> Vec<(String, CrossedSystem)> {
    gallery::NAMES
        .iter()
        .map(|n| (n.to_string(), bundled(n)))
        .collect()
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let elapsed = start.elapsed();
    if elapsed > budget {
        Err(format!("{what} took {elapsed:.2?}, budget {budget:?}"))
    } else {
        Ok(())
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut compared = 0;
    for ring in ["z2", "z3", "z4"] {
        for n in [2, 3] {
            let sys = gallery::matrix(n, ring).unwrap().build().unwrap().system;
            let d = sys.ring(catcross_core::category::Obj(0)).clone();
            let ids = sys.category().identities().to_vec();
            let expected = ElementSet::new(
                &sys,
                d.center_codes().into_iter().map(|c| {
                    let terms: Vec<(Mor, Code)> = ids.iter().map(|&e| (e, c)).collect();
                    sys.element(&terms).unwrap()
                }),
                false,
                &[],
            )
            .map_err(|e| e.to_string())?;
            let by_conditions = center_by_conditions(&sys, 1 << 16).map_err(|e| e.to_string())?;
            if by_conditions.elements() != expected.elements() {
                return Err(format!("M{n}({ring}): conditions center differs from scalars"));
            }
            if n == 2 {
                let brute = center_bruteforce(&sys, 1 << 16).map_err(|e| e.to_string())?;
                if brute.elements() != expected.elements() {
                    return Err(format!("M{n}({ring}): brute-force center differs"));
                }
                compared += 1;
            }
        }
    }
    within(start, Duration::from_secs(5), "matrix centers")?;
    Ok(format!(
        "6 matrix rings equal scalar multiples of the identity, {compared} confirmed by brute force, {:.2?}",
        start.elapsed()
    ))
}

/// `Z_m[C_n]` twisted by the coboundary of `f(s^i) = g^i` for a unit `g`.
fn coboundary_twist(m: usize, n: usize, g: Code) -> CrossedSystem {
    let ring = FiniteRing::cyclic(m).unwrap();
    let cat = Arc::new(FiniteCategory::cyclic_group(n).unwrap());
    let pow = |k: usize| (0..k).fold(ring.one(), |acc, _| ring.mul_code(acc, g));
    let f: Vec<Code> = (0..n).map(pow).collect();
    let entries: Vec<((Mor, Mor), Code)> = cat
        .composable_pairs()
        .into_iter()
        .map(|(s, t)| {
            let st = cat.compose(s, t).unwrap();
            let inv = ring.left_inverse_code(f[st.0]).unwrap();
            ((s, t), ring.mul_code(ring.mul_code(f[s.0], f[t.0]), inv))
        })
        .collect();
    CrossedSystem::twisted(cat, ring, &entries).unwrap()
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let cap = 4096;
    let mut systems: Vec<(String, CrossedSystem)> = all_bundled()
        .into_iter()
        .filter(|(_, s)| s.enumeration_size(|_| true) <= cap as u128)
        .collect();
    for (m, n, g) in [(5, 3, 2), (7, 2, 3), (3, 4, 2), (5, 4, 3)] {
        systems.push((format!("generated Z{m}[C{n}] twist"), coboundary_twist(m, n, g)));
    }
    let mut centers = 0;
    let mut commutants = 0;
    for (name, sys) in &systems {
        let fast = center_by_conditions(sys, cap).map_err(|e| format!("{name}: {e}"))?;
        let slow = center_bruteforce(sys, cap).map_err(|e| format!("{name}: {e}"))?;
        if fast.elements() != slow.elements() {
            return Err(format!("{name}: center mismatch"));
        }
        centers += 1;
        if sys.coefficients_commutative() {
            let c = commutant_of_coefficients(sys).map_err(|e| format!("{name}: {e}"))?;
            let ours = c.elements(sys, cap).map_err(|e| format!("{name}: {e}"))?;
            let brute = commutant_bruteforce(sys, cap).map_err(|e| format!("{name}: {e}"))?;
            if ours.elements() != brute.elements() {
                return Err(format!("{name}: commutant mismatch"));
            }
            commutants += 1;
        }
    }
    if centers < 20 || commutants < 20 {
        return Err(format!("only {centers} centers and {commutants} commutants compared"));
    }
    within(start, Duration::from_secs(60), "oracle suite")?;
    Ok(format!(
        "{centers} centers and {commutants} commutants equal their brute-force oracles, {:.2?}",
        start.elapsed()
    ))
}

fn basis_pairs_commute(sys: &CrossedSystem) -> bool {
    let basis = sys.basis_elements();
    basis.iter().all(|x| {
        basis
            .iter()
            .all(|y| sys.mul(x, y).unwrap() == sys.mul(y, x).unwrap())
    })
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    let mut violations = Vec::new();
    for (name, sys) in all_bundled() {
        let report = match classify_commutativity(&sys) {
            Ok(r) => r,
            Err(e) => return Err(format!("{name}: {e}")),
        };
        let commutative = basis_pairs_commute(&sys);
        if commutative != report.commutative {
            violations.push(format!("{name}: scan and report disagree on (i)"));
        }
        if report.conditions_ii_to_v() && !commutative {
            violations.push(format!("{name}: (ii)-(v) hold but the scan fails"));
        }
        if report.alpha_nonzero && commutative && !report.conditions_ii_to_v() {
            violations.push(format!("{name}: (0) and (i) hold but (ii)-(v) fail"));
        }
        checked += 1;
    }
    if violations.is_empty() {
        Ok(format!("{checked} bundled systems, zero violations"))
    } else {
        Err(violations.join("; "))
    }
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (name, expected) in [
        ("m2_z2_pairgroupoid", 15),
        ("swap_skew", 15),
        ("z2_c2_groupalgebra", 3),
        ("z3_c3_groupalgebra", 26),
    ] {
        let sys = bundled(name);
        let report = verify_intersection_theorem(&sys, CheckMode::Exhaustive { cap: 1 << 16 }, 1 << 16)
            .map_err(|e| format!("{name}: {e}"))?;
        if report.scan.checked != expected || !report.scan.all_passed() {
            return Err(format!(
                "{name}: {} checked, counterexamples {:?}",
                report.scan.checked, report.scan.counterexamples
            ));
        }
        parts.push(format!("{name} {}/{}", report.scan.passed, report.scan.checked));
    }
    within(start, Duration::from_secs(30), "intersection theorem")?;
    Ok(format!("{}, {:.2?}", parts.join(", "), start.elapsed()))
}

/// Recomputes the principal ideal and looks for a nonzero element
/// supported on identities.
fn meets_coefficients(sys: &CrossedSystem, generator: &AlgebraElement) -> Result<bool, String> {
    let closure = ideal_closure(sys, std::slice::from_ref(generator), 1 << 16).map_err(|e| e.to_string())?;
    let g = sys.category();
    Ok(closure
        .carrier()
        .iter()
        .any(|x| !x.is_zero() && x.terms().iter().all(|&(s, _)| g.is_identity(s))))
}

fn criterion_5() -> Outcome {
    let mut ran = [0usize; 3];
    let mut violations = Vec::new();
    for name in gallery::NAMES {
        let loaded = gallery::get(name).unwrap().build().unwrap();
        let sys = &loaded.system;
        let Some(generator) = loaded.generator().map_err(|e| e.to_string())? else {
            continue;
        };
        if generator.is_zero() {
            continue;
        }
        let congruence = loaded.congruence().map_err(|e| e.to_string())?;
        let normal = loaded.normal().map_err(|e| e.to_string())?;
        let mut results: Vec<(usize, Result<QuotientIdealReport, IdealError>)> = Vec::new();
        if let Some(r) = &congruence {
            results.push((0, quotient_kernel_ideal(sys, r, &generator, 1 << 16)));
            results.push((2, skew_congruence_ideal(sys, r, &generator, 1 << 16)));
        }
        if let Some(n) = &normal {
            results.push((1, normal_subgroupoid_ideal(sys, n, &generator, 1 << 16)));
        }
        for (kind, result) in results {
            match result {
                Ok(q) => {
                    ran[kind] += 1;
                    if !q.projected_generator_zero {
                        violations.push(format!("{name}: projected generator is nonzero"));
                    }
                    if !q.coefficient_intersection.is_empty() || meets_coefficients(sys, &generator)? {
                        violations.push(format!("{name}: A meets I"));
                    }
                }
                Err(IdealError::Hypotheses(_)) => {}
                Err(e) => violations.push(format!("{name}: {e}")),
            }
        }
    }
    if ran.contains(&0) {
        violations.push(format!("a construction never ran: {ran:?}"));
    }
    if violations.is_empty() {
        Ok(format!(
            "{} kernel, {} normal-subgroupoid, {} skew-congruence instances with nonzero generators, A and I meeting only in 0",
            ran[0], ran[1], ran[2]
        ))
    } else {
        Err(violations.join("; "))
    }
}

fn criterion_6() -> Outcome {
    let cap = 1 << 16;
    for name in ["z2_c2_groupalgebra", "z3_c3_groupalgebra"] {
        let sys = bundled(name);
        let report = maximal_commutativity_converse(&sys, cap).map_err(|e| format!("{name}: {e}"))?;
        match &report.outcome {
            ConverseOutcome::Witness { ideal, .. }
                if report.passed() && ideal.ideal_size > 1 && ideal.coefficient_intersection.is_empty() => {}
            other => return Err(format!("{name}: expected a witness ideal, got {other:?}")),
        }
    }
    for name in ["gf4_c2_frobenius", "gf2_pair2_skew"] {
        let sys = bundled(name);
        let report = maximal_commutativity_converse(&sys, cap).map_err(|e| format!("{name}: {e}"))?;
        if !matches!(report.outcome, ConverseOutcome::Maximal { .. }) {
            return Err(format!("{name}: expected a maximality certificate"));
        }
        let eq = equivalence_check(&sys, CheckMode::Exhaustive { cap }, cap, 0)
            .map_err(|e| format!("{name}: {e}"))?;
        if !(eq.maximal_commutative && eq.ideals_meet_a && eq.scan.all_passed()) {
            return Err(format!("{name}: ideal side fails"));
        }
    }
    let mut applicable = 0;
    for (name, sys) in all_bundled() {
        let mode = CheckMode::Exhaustive { cap: 4096 };
        match equivalence_check(&sys, mode, cap, 0) {
            Ok(eq) if eq.agree() => applicable += 1,
            Ok(_) => return Err(format!("{name}: the two sides disagree")),
            Err(e) if matches!(e, IdealError::Hypotheses(_)) || e.is_cap_exceeded() => {}
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    Ok(format!(
        "witness ideals for Z2[C2] and Z3[C3], maximality for GF(4) Frobenius and pair groupoid over GF(2), equivalence agrees on {applicable} applicable systems"
    ))
}

/// Both sides of an axiom at a tuple, computed from the raw tables.
fn raw_sides(sys: &CrossedSystem, v: &Violation) -> (Code, Code) {
    let g = sys.category();
    let sigma = |s: Mor, x: Code| sys.sigma(s).table()[x];
    match *v {
        Violation::SigmaNotHom { s, ref law } => {
            let d = sys.ring(g.dom(s));
            let c = sys.ring(g.cod(s));
            match *law {
                HomViolation::Unit => (sigma(s, d.one()), c.one()),
                HomViolation::Additive(x, y) => (sigma(s, d.add_code(x, y)), c.add_code(sigma(s, x), sigma(s, y))),
                HomViolation::Multiplicative(x, y) => {
                    (sigma(s, d.mul_code(x, y)), c.mul_code(sigma(s, x), sigma(s, y)))
                }
            }
        }
        Violation::SigmaIdentity { object, a } => (sigma(g.identity(object), a), a),
        Violation::RightUnit { s } => (sys.alpha(s, g.identity(g.dom(s))), sys.ring(g.cod(s)).one()),
        Violation::LeftUnit { t } => (sys.alpha(g.identity(g.cod(t)), t), sys.ring(g.cod(t)).one()),
        Violation::Cocycle { s, t, r } => {
            let ring = sys.ring(g.cod(s));
            let st = g.compose(s, t).unwrap();
            let tr = g.compose(t, r).unwrap();
            (
                ring.mul_code(sys.alpha(s, t), sys.alpha(st, r)),
                ring.mul_code(sigma(s, sys.alpha(t, r)), sys.alpha(s, tr)),
            )
        }
        Violation::Twisting { s, t, a } => {
            let ring = sys.ring(g.cod(s));
            let st = g.compose(s, t).unwrap();
            (
                ring.mul_code(sigma(s, sigma(t, a)), sys.alpha(s, t)),
                ring.mul_code(sys.alpha(s, t), sigma(st, a)),
            )
        }
    }
}

/// Every axiom checked directly from the definitions.
fn raw_lawful(sys: &CrossedSystem) -> bool {
    let g = sys.category();
    let homs = g.morphism_ids().all(|s| {
        let (d, c) = (sys.ring(g.dom(s)), sys.ring(g.cod(s)));
        let t = sys.sigma(s).table();
        t[d.one()] == c.one()
            && d.codes().all(|x| {
                d.codes().all(|y| {
                    t[d.add_code(x, y)] == c.add_code(t[x], t[y]) && t[d.mul_code(x, y)] == c.mul_code(t[x], t[y])
                })
            })
    });
    let identities = g
        .object_ids()
        .all(|e| sys.ring(e).codes().all(|a| sys.sigma(g.identity(e)).table()[a] == a));
    let units = g.morphism_ids().all(|s| {
        sys.alpha(s, g.identity(g.dom(s))) == sys.ring(g.cod(s)).one()
            && sys.alpha(g.identity(g.cod(s)), s) == sys.ring(g.cod(s)).one()
    });
    let sigma = |s: Mor, x: Code| sys.sigma(s).table()[x];
    let cocycle = g.composable_triples().into_iter().all(|(s, t, r)| {
        let ring = sys.ring(g.cod(s));
        let st = g.compose(s, t).unwrap();
        let tr = g.compose(t, r).unwrap();
        ring.mul_code(sys.alpha(s, t), sys.alpha(st, r)) == ring.mul_code(sigma(s, sys.alpha(t, r)), sys.alpha(s, tr))
    });
    let twisting = g.composable_pairs().into_iter().all(|(s, t)| {
        let ring = sys.ring(g.cod(s));
        let st = g.compose(s, t).unwrap();
        sys.ring(g.dom(t)).codes().all(|a| {
            ring.mul_code(sigma(s, sigma(t, a)), sys.alpha(s, t)) == ring.mul_code(sys.alpha(s, t), sigma(st, a))
        })
    });
    homs && identities && units && cocycle && twisting
}

fn mutants(sys: &CrossedSystem) -> Vec<CrossedSystem> {
    let g = sys.category();
    let mut out = Vec::new();
    for (s, t) in g.composable_pairs() {
        let ring = sys.coeff_ring(s);
        for v in ring.codes().filter(|&v| v != sys.alpha(s, t)) {
            out.push(sys.with_alpha(s, t, v).unwrap());
        }
    }
    for s in g.morphism_ids() {
        let hom = sys.sigma(s);
        for x in hom.domain().codes() {
            for y in hom.codomain().codes().filter(|&y| y != hom.table()[x]) {
                out.push(sys.with_sigma(s, hom.with_entry(x, y).unwrap()).unwrap());
            }
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let mut total = 0;
    let mut rejected = 0;
    let mut accepted = 0;
    for name in ["swap_skew", "z4_c2_twisted3", "gf4_c2_frobenius"] {
        let base = bundled(name);
        if !(base.is_valid() && raw_lawful(&base)) {
            return Err(format!("{name}: base system is not lawful"));
        }
        for m in mutants(&base) {
            total += 1;
            let report = m.validate();
            if report.is_valid() != raw_lawful(&m) {
                return Err(format!("{name}: validator and re-derivation disagree on a mutant"));
            }
            if report.is_valid() {
                accepted += 1;
                continue;
            }
            rejected += 1;
            for v in &report.violations {
                let (l, r) = raw_sides(&m, v);
                if l == r {
                    return Err(format!("{name}: witness {v} has equal sides"));
                }
            }
        }
    }
    if total < 50 {
        return Err(format!("only {total} mutations"));
    }
    Ok(format!(
        "{total} mutations over 3 systems, {rejected} rejected with confirmed witnesses, {accepted} still lawful, verdicts match re-derivation"
    ))
}

fn run_suite(workers: &str, dir: &std::path::Path) -> Vec<u8> {
    let mut out = Vec::new();
    let mut commands: Vec<Vec<String>> = Vec::new();
    for name in gallery::NAMES {
        commands.push(vec!["validate".into(), name.to_string()]);
        for what in ["center", "commutant", "maxcomm", "commutative", "strong"] {
            commands.push(vec!["analyze".into(), name.to_string(), "--what".into(), what.into()]);
        }
        if bundled(name).enumeration_size(|_| true) <= 4096 {
            for sub in ["theorem", "quotient", "normal", "converse", "equivalence"] {
                commands.push(vec!["ideals".into(), name.to_string(), "--sub".into(), sub.into()]);
            }
            commands.push(vec![
                "ideals".into(),
                name.to_string(),
                "--sub".into(),
                "equivalence".into(),
                "--sample".into(),
                "16".into(),
                "--seed".into(),
                "11".into(),
            ]);
        }
    }
    commands.push(vec!["list".into()]);
    let sub = dir.join(format!("workers-{workers}"));
    std::fs::create_dir_all(&sub).unwrap();
    let demo = sub.join("demo.json");
    commands.push(vec![
        "demo".into(),
        "matrix".into(),
        "--n".into(),
        "3".into(),
        "--ring".into(),
        "z3".into(),
        "--out".into(),
        demo.to_str().unwrap().into(),
    ]);
    for json in [false, true] {
        for c in &commands {
            let mut cmd = Command::new(env!("CARGO_BIN_EXE_catcross"));
            cmd.args(["--workers", workers]);
            if json {
                cmd.arg("--json");
            }
            let o = cmd.args(c).output().expect("binary runs");
            out.extend(o.status.code().unwrap_or(-1).to_string().bytes());
            out.extend(o.stdout);
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let one = run_suite("1", dir.path());
    let eight = run_suite("8", dir.path());
    let again = run_suite("8", dir.path());
    if one != eight || eight != again {
        return Err("reports differ between runs".into());
    }
    Ok(format!("{} report bytes identical across 3 runs with 1 and 8 workers", one.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("matrix-ring center", criterion_1),
        ("oracle equality suite", criterion_2),
        ("commutativity classification", criterion_3),
        ("intersection theorem", criterion_4),
        ("zero-intersection constructions", criterion_5),
        ("converse and equivalence", criterion_6),
        ("metamorphic validation", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {} ({title}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({title}): {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
