//! Two-sided ideals: closure, the ideal-commutant intersection theorem,
//! algebra maps induced by functors, and the quotient constructions of
//! ideals that miss the coefficient ring.

use std::collections::{HashSet, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError, CheckMode};
use crate::category::{CategoryError, CategoryFunctor, Congruence, Mor, NormalSubgroupoid, Obj};
use crate::checklist::Checklist;
use crate::structure::{commutant_of_coefficients, is_maximal_commutative, ElementSet, StructureError};
use crate::system::{CrossedSystem, SystemError, SystemId};

/// Sample size used when an exhaustive scan is requested above its cap.
pub const FALLBACK_SAMPLES: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("ideal closure reached {size} elements, above the cap {cap}")]
    ClosureCap { size: u128, cap: usize },
    #[error("hypotheses not satisfied: {0}")]
    Hypotheses(Checklist),
}

impl IdealError {
    pub fn is_cap_exceeded(&self) -> bool {
        match self {
            IdealError::ClosureCap { .. } | IdealError::Algebra(AlgebraError::CapExceeded { .. }) => true,
            IdealError::Structure(e) => e.is_cap_exceeded(),
            _ => false,
        }
    }
}

/// Worklist discipline for [`ideal_closure_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    Fifo,
    Lifo,
}

/// The two-sided ideal generated by a finite set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealClosure {
    system: SystemId,
    generators: Vec<AlgebraElement>,
    carrier: Vec<AlgebraElement>,
}

impl IdealClosure {
    pub fn generators(&self) -> &[AlgebraElement] {
        &self.generators
    }

    pub fn carrier(&self) -> &[AlgebraElement] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.carrier.iter().all(|x| x.is_zero())
    }

    pub fn contains(&self, x: &AlgebraElement) -> bool {
        self.carrier.binary_search(x).is_ok()
    }

    pub fn to_set(&self, sys: &CrossedSystem) -> Result<ElementSet, AlgebraError> {
        ElementSet::new(sys, self.carrier.iter().cloned(), false, &["ideal closure"])
    }

    /// Nonzero elements of the ideal supported on identity morphisms.
    pub fn coefficient_part(&self, sys: &CrossedSystem) -> Vec<AlgebraElement> {
        let g = sys.category();
        self.carrier
            .iter()
            .filter(|x| !x.is_zero() && x.support().all(|s| g.is_identity(s)))
            .cloned()
            .collect()
    }
}

pub fn ideal_closure(
    sys: &CrossedSystem,
    generators: &[AlgebraElement],
    cap: usize,
) -> Result<IdealClosure, IdealError> {
    ideal_closure_with(sys, generators, cap, Schedule::Fifo)
}

/// Saturates under addition and under left and right multiplication by the
/// elements `a u_s`. Since those additively generate the algebra, the
/// result is closed under multiplication by arbitrary elements.
///
/// The carrier is kept as an additive subgroup `H`. A popped element `g`
/// outside `H` replaces `H` by `H + ⟨g⟩`, and its products with every
/// multiplier are queued. Elements already in `H` are sums of accepted
/// elements, so their products need no separate treatment.
pub fn ideal_closure_with(
    sys: &CrossedSystem,
    generators: &[AlgebraElement],
    cap: usize,
    schedule: Schedule,
) -> Result<IdealClosure, IdealError> {
    for x in generators {
        if x.system() != sys.id() {
            return Err(AlgebraError::SystemMismatch.into());
        }
    }
    let multipliers = sys.basis_elements();
    let zero = sys.zero_element();
    let mut members: HashSet<AlgebraElement> = HashSet::from([zero.clone()]);
    let mut carrier = vec![zero];
    let mut work: VecDeque<AlgebraElement> = generators.iter().cloned().collect();
    loop {
        let next = match schedule {
            Schedule::Fifo => work.pop_front(),
            Schedule::Lifo => work.pop_back(),
        };
        let Some(g) = next else { break };
        if members.contains(&g) {
            continue;
        }
        let mut multiples = vec![g.clone()];
        loop {
            let m = sys.add_unchecked(multiples.last().unwrap(), &g);
            if members.contains(&m) {
                break;
            }
            multiples.push(m);
        }
        let size = carrier.len() as u128 * (multiples.len() as u128 + 1);
        if size > cap as u128 {
            return Err(IdealError::ClosureCap { size, cap });
        }
        let mut added = Vec::with_capacity(carrier.len() * multiples.len());
        for h in &carrier {
            for m in &multiples {
                added.push(sys.add_unchecked(h, m));
            }
        }
        for x in &added {
            members.insert(x.clone());
        }
        carrier.extend(added);
        for b in &multipliers {
            work.push_back(sys.mul_unchecked(b, &g));
            work.push_back(sys.mul_unchecked(&g, b));
        }
    }
    carrier.sort();
    Ok(IdealClosure {
        system: sys.id(),
        generators: generators.to_vec(),
        carrier,
    })
}

pub fn intersect_with(ideal: &IdealClosure, set: &ElementSet) -> Result<ElementSet, AlgebraError> {
    if ideal.system != set.system() {
        return Err(AlgebraError::SystemMismatch);
    }
    let common = set.elements().iter().filter(|x| ideal.contains(x)).cloned();
    Ok(ElementSet::with_system(ideal.system, common, &["ideal intersection"]))
}

/// Nonzero elements to scan: all of them, or a seeded sample.
fn scan_elements(sys: &CrossedSystem, mode: CheckMode) -> Result<Vec<AlgebraElement>, AlgebraError> {
    match mode {
        CheckMode::Exhaustive { cap } => Ok(sys.enumerate_all(cap)?.filter(|x| !x.is_zero()).collect()),
        CheckMode::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if sys.enumeration_size(|_| true) <= 1 {
                return Ok(Vec::new());
            }
            let mut out = Vec::with_capacity(count);
            while out.len() < count {
                let x = sys.random_element(&mut rng, |_| true);
                if !x.is_zero() {
                    out.push(x);
                }
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub mode: CheckMode,
    pub checked: usize,
    pub passed: usize,
    /// Elements whose principal ideal fails the property, in scan order.
    pub counterexamples: Vec<String>,
}

impl ScanSummary {
    pub fn all_passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Runs `holds` on the principal ideal of every scanned element. Work is
/// split across the rayon pool; results are gathered in scan order.
fn principal_scan(
    sys: &CrossedSystem,
    mode: CheckMode,
    closure_cap: usize,
    holds: impl Fn(&IdealClosure) -> bool + Sync,
) -> Result<ScanSummary, IdealError> {
    let xs = scan_elements(sys, mode)?;
    let verdicts: Vec<Result<bool, IdealError>> = xs
        .par_iter()
        .map(|x| ideal_closure(sys, std::slice::from_ref(x), closure_cap).map(|i| holds(&i)))
        .collect();
    let mut summary = ScanSummary {
        mode,
        checked: xs.len(),
        passed: 0,
        counterexamples: Vec::new(),
    };
    for (x, v) in xs.iter().zip(verdicts) {
        if v? {
            summary.passed += 1;
        } else {
            summary.counterexamples.push(sys.render(x));
        }
    }
    Ok(summary)
}

fn ensure(checklist: Checklist) -> Result<Checklist, IdealError> {
    if checklist.all_hold() {
        Ok(checklist)
    } else {
        Err(IdealError::Hypotheses(checklist))
    }
}

fn pair_names(sys: &CrossedSystem, pairs: &[(Mor, Mor)]) -> String {
    let g = sys.category();
    pairs
        .iter()
        .map(|&(s, t)| format!("({},{})", g.name(s), g.name(t)))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub hypotheses: Checklist,
    pub scan: ScanSummary,
}

/// For a groupoid with commutative coefficients and no `α(s, s⁻¹)` a zero
/// divisor: every principal ideal of a nonzero element meets the commutant
/// of `A` in a nonzero element.
pub fn verify_intersection_theorem(
    sys: &CrossedSystem,
    mode: CheckMode,
    closure_cap: usize,
) -> Result<TheoremReport, IdealError> {
    sys.ensure_valid()?;
    let g = sys.category();
    let mut checklist = Checklist::new();
    let inverses = g.inverses();
    checklist.check("G is a groupoid", inverses.is_some());
    let noncommutative: Vec<String> = g
        .object_ids()
        .filter(|&e| !sys.ring(e).is_commutative())
        .map(|e| g.object_name(e).to_string())
        .collect();
    checklist.check_with(
        "every A_e commutative",
        noncommutative.is_empty(),
        noncommutative.join(" "),
    );
    if let Some(inv) = &inverses {
        let bad: Vec<(Mor, Mor)> = g
            .morphism_ids()
            .map(|s| (s, inv[s.0]))
            .filter(|&(s, t)| sys.coeff_ring(s).is_zero_divisor_code(sys.alpha(s, t)))
            .collect();
        checklist.check_with(
            "no alpha(s, s^-1) is a zero divisor",
            bad.is_empty(),
            pair_names(sys, &bad),
        );
    }
    let hypotheses = ensure(checklist)?;
    let commutant = commutant_of_coefficients(sys)?;
    let scan = principal_scan(sys, mode, closure_cap, |ideal| {
        ideal
            .carrier()
            .iter()
            .any(|y| !y.is_zero() && commutant.contains(sys, y))
    })?;
    Ok(TheoremReport { hypotheses, scan })
}

/// The map `Σ a_s u_s ↦ Σ a_s u_F(s)` induced by a functor.
#[derive(Debug, Clone)]
pub struct InducedHom {
    source: CrossedSystem,
    target: CrossedSystem,
    functor: CategoryFunctor,
}

impl InducedHom {
    pub fn source(&self) -> &CrossedSystem {
        &self.source
    }

    pub fn target(&self) -> &CrossedSystem {
        &self.target
    }

    pub fn functor(&self) -> &CategoryFunctor {
        &self.functor
    }

    pub fn apply(&self, x: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if x.system() != self.source.id() {
            return Err(AlgebraError::SystemMismatch);
        }
        Ok(self.apply_unchecked(x))
    }

    fn apply_unchecked(&self, x: &AlgebraElement) -> AlgebraElement {
        x.terms().iter().fold(self.target.zero_element(), |acc, &(s, a)| {
            let image = self.target.basis_unchecked(self.functor.on_morphism(s), a);
            self.target.add_unchecked(&acc, &image)
        })
    }
}

/// Builds the induced homomorphism after checking that `F` is the identity
/// on objects, `τ_F(s) = σ_s` and `β(F(s),F(t)) = α(s,t)`, then verifies
/// multiplicativity on all basis pairs and that `A` is fixed.
pub fn induced_hom(
    source: &CrossedSystem,
    target: &CrossedSystem,
    functor: &CategoryFunctor,
) -> Result<InducedHom, IdealError> {
    source.ensure_valid()?;
    target.ensure_valid()?;
    if functor.source() != source.category() || functor.target() != target.category() {
        return Err(CategoryError::CategoryMismatch.into());
    }
    let g = source.category();
    let mut checklist = Checklist::new();
    checklist.check("F is the identity on objects", functor.is_identity_on_objects());
    let same_rings = functor.is_identity_on_objects()
        && g.object_ids().all(|e| source.ring(e) == target.ring(e));
    checklist.check("same coefficient rings", same_rings);
    if !checklist.all_hold() {
        return Err(IdealError::Hypotheses(checklist));
    }
    let bad_sigma: Vec<String> = g
        .morphism_ids()
        .filter(|&s| target.sigma(functor.on_morphism(s)).table() != source.sigma(s).table())
        .map(|s| g.name(s).to_string())
        .collect();
    checklist.check_with("tau_F(s) = sigma_s", bad_sigma.is_empty(), bad_sigma.join(" "));
    let bad_alpha: Vec<(Mor, Mor)> = g
        .composable_pairs()
        .into_iter()
        .filter(|&(s, t)| {
            target.alpha(functor.on_morphism(s), functor.on_morphism(t)) != source.alpha(s, t)
        })
        .collect();
    checklist.check_with(
        "beta(F(s),F(t)) = alpha(s,t)",
        bad_alpha.is_empty(),
        pair_names(source, &bad_alpha),
    );
    ensure(checklist)?;
    let hom = InducedHom {
        source: source.clone(),
        target: target.clone(),
        functor: functor.clone(),
    };
    let basis = source.basis_elements();
    let multiplicative = basis.par_iter().all(|x| {
        basis.iter().all(|y| {
            hom.apply_unchecked(&source.mul_unchecked(x, y))
                == target.mul_unchecked(&hom.apply_unchecked(x), &hom.apply_unchecked(y))
        })
    });
    let fixes_a = g.object_ids().all(|e| {
        let (from, to) = (g.identity(e), target.category().identity(e));
        source.ring(e).codes().all(|a| {
            hom.apply_unchecked(&source.basis_unchecked(from, a)) == target.basis_unchecked(to, a)
        })
    });
    let mut post = Checklist::new();
    post.check("multiplicative on basis pairs", multiplicative);
    post.check("identity on A", fixes_a);
    ensure(post)?;
    Ok(hom)
}

/// The quadruple `{A, G/R, σ([·]), α([·],[·])}` and the projection functor.
/// Returns the failed checks when σ or α is not constant on classes or the
/// quotient fails an axiom.
pub fn quotient_system(
    sys: &CrossedSystem,
    congruence: &Congruence,
) -> Result<(CrossedSystem, CategoryFunctor), IdealError> {
    let mut checklist = Checklist::new();
    let result = quotient_system_checked(sys, congruence, &mut checklist)?;
    match result {
        Some(q) => Ok(q),
        None => Err(IdealError::Hypotheses(checklist)),
    }
}

fn quotient_system_checked(
    sys: &CrossedSystem,
    congruence: &Congruence,
    checklist: &mut Checklist,
) -> Result<Option<(CrossedSystem, CategoryFunctor)>, IdealError> {
    let g = sys.category();
    if congruence.category() != g {
        return Err(CategoryError::CategoryMismatch.into());
    }
    let sigma_witness = congruence.classes().iter().find_map(|class| {
        class[1..]
            .iter()
            .find(|&&t| sys.sigma(t).table() != sys.sigma(class[0]).table())
            .map(|&t| (class[0], t))
    });
    checklist.check_with(
        "sigma constant on classes",
        sigma_witness.is_none(),
        sigma_witness.map(|w| pair_names(sys, &[w])).unwrap_or_default(),
    );
    let (quotient, projection) = congruence.quotient()?;
    let mut alpha: Vec<((Mor, Mor), (Mor, Mor))> = Vec::new();
    let mut alpha_witness = None;
    for (s, t) in g.composable_pairs() {
        let key = (projection.on_morphism(s), projection.on_morphism(t));
        match alpha.iter().find(|(k, _)| *k == key) {
            Some(&(_, (s0, t0))) => {
                if alpha_witness.is_none() && sys.alpha(s0, t0) != sys.alpha(s, t) {
                    alpha_witness = Some(((s0, t0), (s, t)));
                }
            }
            None => alpha.push((key, (s, t))),
        }
    }
    checklist.check_with(
        "alpha constant on classes",
        alpha_witness.is_none(),
        alpha_witness
            .map(|(a, b)| format!("{} vs {}", pair_names(sys, &[a]), pair_names(sys, &[b])))
            .unwrap_or_default(),
    );
    if sigma_witness.is_some() || alpha_witness.is_some() {
        return Ok(None);
    }
    let sigma = congruence
        .classes()
        .iter()
        .map(|class| sys.sigma(class[0]).clone())
        .collect();
    let entries: Vec<((Mor, Mor), usize)> = alpha
        .iter()
        .map(|&(key, (s, t))| (key, sys.alpha(s, t)))
        .collect();
    let q = CrossedSystem::new(quotient, sys.rings().to_vec(), sigma, &entries)?;
    let first = q.validate().violations.first().cloned();
    let valid = checklist.check_with(
        "quotient is a crossed system",
        first.is_none(),
        first.map(|v| v.to_string()).unwrap_or_default(),
    );
    if !valid {
        return Ok(None);
    }
    Ok(Some((q, projection)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientIdealReport {
    pub hypotheses: Checklist,
    pub generator: String,
    pub quotient_morphisms: usize,
    pub ideal_size: usize,
    /// Nonzero elements of `A ∩ I`; empty when the construction works.
    pub coefficient_intersection: Vec<String>,
    pub projected_generator_zero: bool,
}

impl QuotientIdealReport {
    pub fn passed(&self) -> bool {
        self.coefficient_intersection.is_empty() && self.projected_generator_zero
    }
}

/// `I` generated by an element supported on the classes `[e]` of the
/// identities whose coefficients sum to zero class by class; then `A ∩ I`
/// is zero because the projection to the quotient algebra kills `I` and
/// fixes `A`.
pub fn quotient_kernel_ideal(
    sys: &CrossedSystem,
    congruence: &Congruence,
    generator: &AlgebraElement,
    cap: usize,
) -> Result<QuotientIdealReport, IdealError> {
    quotient_kernel_inner(sys, congruence, generator, cap, Checklist::new())
}

fn quotient_kernel_inner(
    sys: &CrossedSystem,
    congruence: &Congruence,
    generator: &AlgebraElement,
    cap: usize,
    mut checklist: Checklist,
) -> Result<QuotientIdealReport, IdealError> {
    sys.ensure_valid()?;
    if generator.system() != sys.id() {
        return Err(AlgebraError::SystemMismatch.into());
    }
    let g = sys.category();
    let functor = sys.sigma_is_functor()?;
    checklist.check_with(
        "sigma is a functor",
        functor.composes(),
        pair_names(sys, &functor.composition_failures),
    );
    let quotient = quotient_system_checked(sys, congruence, &mut checklist)?;
    let stray: Vec<String> = generator
        .support()
        .filter(|&s| !congruence.relates(s, g.identity(g.cod(s))) || !g.is_loop(s))
        .map(|s| g.name(s).to_string())
        .collect();
    checklist.check_with(
        "generator supported on identity classes",
        stray.is_empty(),
        stray.join(" "),
    );
    let nonzero_sums: Vec<String> = g
        .object_ids()
        .filter(|&e| {
            let ring = sys.ring(e);
            let sum = congruence
                .class_of(g.identity(e))
                .iter()
                .filter_map(|&s| generator.coefficient(s))
                .fold(ring.zero(), |acc, a| ring.add_code(acc, a));
            sum != ring.zero()
        })
        .map(|e| g.object_name(e).to_string())
        .collect();
    checklist.check_with(
        "class sums of the generator vanish",
        nonzero_sums.is_empty(),
        nonzero_sums.join(" "),
    );
    let checklist = ensure(checklist)?;
    let (q, projection) = quotient.expect("hypotheses hold");
    let hom = induced_hom(sys, &q, &projection)?;
    let projected_generator_zero = hom.apply_unchecked(generator).is_zero();
    let ideal = ideal_closure(sys, std::slice::from_ref(generator), cap)?;
    Ok(QuotientIdealReport {
        hypotheses: checklist,
        generator: sys.render(generator),
        quotient_morphisms: q.category().morphism_count(),
        ideal_size: ideal.len(),
        coefficient_intersection: ideal
            .coefficient_part(sys)
            .iter()
            .map(|x| sys.render(x))
            .collect(),
        projected_generator_zero,
    })
}

/// The construction for a normal subgroupoid `N` with `σ_n = id` and `α`
/// trivial on `N`. The derived congruence identifies `s` with `n s`.
pub fn normal_subgroupoid_ideal(
    sys: &CrossedSystem,
    normal: &NormalSubgroupoid,
    generator: &AlgebraElement,
    cap: usize,
) -> Result<QuotientIdealReport, IdealError> {
    sys.ensure_valid()?;
    let g = sys.category();
    if normal.groupoid() != g {
        return Err(CategoryError::CategoryMismatch.into());
    }
    let mut checklist = Checklist::new();
    checklist.check("G is a groupoid", g.is_groupoid());
    let pairs = g.composable_pairs();
    let non_central: Vec<(Mor, Mor)> = pairs
        .iter()
        .copied()
        .filter(|&(s, t)| !sys.coeff_ring(s).is_central_code(sys.alpha(s, t)))
        .collect();
    checklist.check_with("alpha central", non_central.is_empty(), pair_names(sys, &non_central));
    let divisors: Vec<(Mor, Mor)> = pairs
        .iter()
        .copied()
        .filter(|&(s, t)| sys.coeff_ring(s).is_zero_divisor_code(sys.alpha(s, t)))
        .collect();
    checklist.check_with(
        "no alpha value is a zero divisor",
        divisors.is_empty(),
        pair_names(sys, &divisors),
    );
    let moving: Vec<String> = g
        .morphism_ids()
        .filter(|&n| normal.contains(n) && !sys.sigma(n).is_identity())
        .map(|n| g.name(n).to_string())
        .collect();
    checklist.check_with("sigma_n = id on N", moving.is_empty(), moving.join(" "));
    let nontrivial: Vec<(Mor, Mor)> = pairs
        .iter()
        .copied()
        .filter(|&(s, t)| {
            (normal.contains(s) || normal.contains(t)) && sys.alpha(s, t) != sys.coeff_ring(s).one()
        })
        .collect();
    checklist.check_with(
        "alpha(s,t) = 1 when s or t lies in N",
        nontrivial.is_empty(),
        pair_names(sys, &nontrivial),
    );
    // the two identities the well-definedness argument relies on
    let mut left_steps = Vec::new();
    let mut right_steps = Vec::new();
    for &(t, r) in &pairs {
        for &n in normal.subgroup(g.cod(t)) {
            let nt = g.compose(n, t).unwrap();
            if sys.alpha(nt, r) != sys.alpha(t, r) {
                left_steps.push((t, r));
            }
        }
        for &n in normal.subgroup(g.dom(r)) {
            let rn = g.compose(r, n).unwrap();
            if sys.alpha(t, r) != sys.alpha(t, rn) {
                right_steps.push((t, r));
            }
        }
    }
    checklist.check_with(
        "alpha(nt,r) = alpha(t,r)",
        left_steps.is_empty(),
        pair_names(sys, &left_steps),
    );
    checklist.check_with(
        "alpha(s,t) = alpha(s,tn)",
        right_steps.is_empty(),
        pair_names(sys, &right_steps),
    );
    let checklist = ensure(checklist)?;
    let congruence = normal.congruence()?;
    quotient_kernel_inner(sys, &congruence, generator, cap, checklist)
}

/// The construction for a skew system and a congruence contained in
/// `ker(σ)`.
pub fn skew_congruence_ideal(
    sys: &CrossedSystem,
    congruence: &Congruence,
    generator: &AlgebraElement,
    cap: usize,
) -> Result<QuotientIdealReport, IdealError> {
    sys.ensure_valid()?;
    let mut checklist = Checklist::new();
    checklist.check("skew (alpha identically 1)", sys.alpha_trivial());
    let witness = congruence.classes().iter().find_map(|class| {
        class[1..]
            .iter()
            .find(|&&t| sys.sigma(t).table() != sys.sigma(class[0]).table())
            .map(|&t| (class[0], t))
    });
    checklist.check_with(
        "R contained in ker(sigma)",
        witness.is_none(),
        witness.map(|w| pair_names(sys, &[w])).unwrap_or_default(),
    );
    let checklist = ensure(checklist)?;
    quotient_kernel_inner(sys, congruence, generator, cap, checklist)
}

/// Hypotheses shared by the converse and the equivalence: a skew groupoid
/// ring whose coefficient rings are one integral domain and whose loop
/// groups are abelian.
fn skew_groupoid_domain_hypotheses(sys: &CrossedSystem) -> Checklist {
    let g = sys.category();
    let mut checklist = Checklist::new();
    checklist.check("skew (alpha identically 1)", sys.alpha_trivial());
    checklist.check("G is a groupoid", g.is_groupoid());
    let first = sys.ring(Obj(0));
    checklist.check(
        "all A_e equal",
        g.object_ids().all(|e| sys.ring(e) == first),
    );
    checklist.check("A_e an integral domain", first.is_integral_domain());
    let non_abelian: Vec<String> = g
        .object_ids()
        .filter(|&e| !g.is_loop_monoid_abelian(e))
        .map(|e| g.object_name(e).to_string())
        .collect();
    checklist.check_with(
        "every G_e abelian",
        non_abelian.is_empty(),
        non_abelian.join(" "),
    );
    checklist
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ConverseOutcome {
    /// A nonidentity loop with trivial σ, the normal subgroupoid it
    /// generates, and the ideal built from `u_e - u_s`.
    Witness {
        loop_morphism: String,
        subgroups: Vec<Vec<String>>,
        /// Every connecting morphism produced the same conjugate subgroup.
        well_defined: bool,
        ideal: QuotientIdealReport,
    },
    /// No nonidentity loop acts trivially, so `A` is maximal commutative.
    Maximal { nontrivial_loops: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConverseReport {
    pub hypotheses: Checklist,
    #[serde(flatten)]
    pub outcome: ConverseOutcome,
}

impl ConverseReport {
    pub fn passed(&self) -> bool {
        match &self.outcome {
            ConverseOutcome::Witness {
                well_defined, ideal, ..
            } => *well_defined && ideal.passed() && ideal.ideal_size > 1,
            ConverseOutcome::Maximal { .. } => true,
        }
    }
}

pub fn maximal_commutativity_converse(
    sys: &CrossedSystem,
    cap: usize,
) -> Result<ConverseReport, IdealError> {
    sys.ensure_valid()?;
    let hypotheses = ensure(skew_groupoid_domain_hypotheses(sys))?;
    let g = sys.category();
    let trivial_loop = g
        .loops()
        .into_iter()
        .find(|&s| !g.is_identity(s) && sys.sigma(s).is_identity());
    let Some(s) = trivial_loop else {
        let verdict = is_maximal_commutative(sys)?;
        let names = verdict
            .nontrivial_loops
            .unwrap_or_default()
            .into_iter()
            .map(|t| g.name(t).to_string())
            .collect();
        return Ok(ConverseReport {
            hypotheses,
            outcome: ConverseOutcome::Maximal {
                nontrivial_loops: names,
            },
        });
    };
    let inverses = g.inverses().expect("groupoid checked");
    let e = g.cod(s);
    let id_e = g.identity(e);
    let mut cyclic = vec![id_e];
    let mut power = s;
    while power != id_e {
        cyclic.push(power);
        power = g.compose(s, power).unwrap();
    }
    cyclic.sort();
    // N_f = t N_e t⁻¹ for t : e → f, tried for every t
    let mut well_defined = true;
    let mut subgroups = Vec::with_capacity(g.object_count());
    for f in g.object_ids() {
        let mut candidates = g.hom_set(f, e)?.into_iter().map(|t| {
            let mut conj: Vec<Mor> = cyclic
                .iter()
                .map(|&n| g.compose(g.compose(t, n).unwrap(), inverses[t.0]).unwrap())
                .collect();
            conj.sort();
            conj
        });
        let subgroup = match candidates.next() {
            Some(first) => {
                for other in candidates {
                    well_defined &= other == first;
                }
                first
            }
            None => vec![g.identity(f)],
        };
        subgroups.push(subgroup);
    }
    let normal = NormalSubgroupoid::new(g.clone(), subgroups)?;
    let generator = sys.add_unchecked(&sys.unit_basis(id_e), &sys.neg_unchecked(&sys.unit_basis(s)));
    let ideal = normal_subgroupoid_ideal(sys, &normal, &generator, cap)?;
    Ok(ConverseReport {
        hypotheses,
        outcome: ConverseOutcome::Witness {
            loop_morphism: g.name(s).to_string(),
            subgroups: normal
                .subgroups()
                .iter()
                .map(|n| n.iter().map(|&m| g.name(m).to_string()).collect())
                .collect(),
            well_defined,
            ideal,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub hypotheses: Checklist,
    pub maximal_commutative: bool,
    pub ideals_meet_a: bool,
    /// Set when an exhaustive scan was requested above its cap.
    pub fell_back_to_sampling: bool,
    pub scan: ScanSummary,
}

impl EquivalenceReport {
    pub fn agree(&self) -> bool {
        self.maximal_commutative == self.ideals_meet_a
    }
}

/// Evaluates maximal commutativity of `A` and, independently, whether every
/// nonzero ideal meets `A`. Every nonzero ideal contains a nonzero
/// principal ideal, so scanning principal ideals decides the second side.
pub fn equivalence_check(
    sys: &CrossedSystem,
    mode: CheckMode,
    closure_cap: usize,
    fallback_seed: u64,
) -> Result<EquivalenceReport, IdealError> {
    sys.ensure_valid()?;
    let hypotheses = ensure(skew_groupoid_domain_hypotheses(sys))?;
    let maximal = is_maximal_commutative(sys)?.maximal;
    let (mode, fell_back) = match mode {
        CheckMode::Exhaustive { cap } if sys.enumeration_size(|_| true) > cap as u128 => (
            CheckMode::Sample {
                count: FALLBACK_SAMPLES,
                seed: fallback_seed,
            },
            true,
        ),
        m => (m, false),
    };
    let scan = principal_scan(sys, mode, closure_cap, |ideal| {
        !ideal.coefficient_part(sys).is_empty()
    })?;
    Ok(EquivalenceReport {
        hypotheses,
        maximal_commutative: maximal,
        ideals_meet_a: scan.all_passed(),
        fell_back_to_sampling: fell_back,
        scan,
    })
}
