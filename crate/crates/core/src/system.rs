//! Crossed systems `{A, G, σ, α}` and their axiom validation.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::category::{CategoryError, FiniteCategory, Mor, Obj};
use crate::ring::{Code, FiniteRing, HomViolation, RingError, RingHom};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("expected {expected} coefficient rings, got {got}")]
    RingCount { expected: usize, got: usize },
    #[error("expected {expected} sigma maps, got {got}")]
    SigmaCount { expected: usize, got: usize },
    #[error("sigma of morphism {0} has the wrong domain or codomain ring")]
    SigmaPlacement(Mor),
    #[error("alpha given for non-composable pair ({0}, {1})")]
    AlphaNotComposable(Mor, Mor),
    #[error("alpha({0}, {1}) = {2} is outside its ring")]
    AlphaOutOfRange(Mor, Mor, Code),
    #[error("crossed system is invalid: {0}")]
    Invalid(Violation),
    #[error("system is not one-object")]
    NotOneObject,
}

/// A failed axiom with the tuple that exhibits it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    /// `σ_s` is not a unital ring homomorphism.
    SigmaNotHom { s: Mor, law: HomViolation },
    /// `σ_e(a) ≠ a`.
    SigmaIdentity { object: Obj, a: Code },
    /// `α(s, d(s)) ≠ 1`.
    RightUnit { s: Mor },
    /// `α(c(t), t) ≠ 1`.
    LeftUnit { t: Mor },
    /// `α(s,t) α(st,r) ≠ σ_s(α(t,r)) α(s,tr)`.
    Cocycle { s: Mor, t: Mor, r: Mor },
    /// `σ_s(σ_t(a)) α(s,t) ≠ α(s,t) σ_st(a)`.
    Twisting { s: Mor, t: Mor, a: Code },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::SigmaNotHom { s, law } => write!(f, "sigma {s} is not a homomorphism ({law:?})"),
            Violation::SigmaIdentity { object, a } => write!(f, "sigma at object {object} moves {a}"),
            Violation::RightUnit { s } => write!(f, "right unit axiom at s={s}"),
            Violation::LeftUnit { t } => write!(f, "left unit axiom at t={t}"),
            Violation::Cocycle { s, t, r } => write!(f, "cocycle axiom at (s,t,r)=({s},{t},{r})"),
            Violation::Twisting { s, t, a } => write!(f, "twisting axiom at (s,t,a)=({s},{t},{a})"),
        }
    }
}

impl Violation {
    pub fn axiom_name(&self) -> &'static str {
        match self {
            Violation::SigmaNotHom { .. } => "sigma_homomorphism",
            Violation::SigmaIdentity { .. } => "sigma_identity",
            Violation::RightUnit { .. } => "right_unit",
            Violation::LeftUnit { .. } => "left_unit",
            Violation::Cocycle { .. } => "cocycle",
            Violation::Twisting { .. } => "twisting",
        }
    }

    /// Recomputes both sides of the violated equation in `system`, as codes
    /// of the ring they live in.
    pub fn sides(&self, system: &CrossedSystem) -> (Code, Code) {
        let g = system.category();
        match *self {
            Violation::SigmaNotHom { s, ref law } => {
                let h = system.sigma(s);
                let (d, c) = (h.domain(), h.codomain());
                match *law {
                    HomViolation::Unit => (h.apply_code(d.one()), c.one()),
                    HomViolation::Additive(x, y) => (
                        h.apply_code(d.add_code(x, y)),
                        c.add_code(h.apply_code(x), h.apply_code(y)),
                    ),
                    HomViolation::Multiplicative(x, y) => (
                        h.apply_code(d.mul_code(x, y)),
                        c.mul_code(h.apply_code(x), h.apply_code(y)),
                    ),
                }
            }
            Violation::SigmaIdentity { object, a } => {
                (system.sigma(g.identity(object)).apply_code(a), a)
            }
            Violation::RightUnit { s } => (
                system.alpha(s, g.identity(g.dom(s))),
                system.ring(g.cod(s)).one(),
            ),
            Violation::LeftUnit { t } => (
                system.alpha(g.identity(g.cod(t)), t),
                system.ring(g.cod(t)).one(),
            ),
            Violation::Cocycle { s, t, r } => system.cocycle_sides(s, t, r),
            Violation::Twisting { s, t, a } => system.twisting_sides(s, t, a),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Names of the axioms that fail, in checking order, without repeats.
    pub fn failing_axioms(&self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = Vec::new();
        for v in &self.violations {
            if !out.contains(&v.axiom_name()) {
                out.push(v.axiom_name());
            }
        }
        out
    }
}

/// Result of testing whether `σ` is a functor into the category of the
/// coefficient rings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctorCheck {
    /// Pairs where `α(s,t)` is not central in `A_{c(s)}`.
    pub non_central: Vec<(Mor, Mor)>,
    /// Pairs where `α(s,t)` is a zero divisor.
    pub zero_divisors: Vec<(Mor, Mor)>,
    /// Pairs where `σ_s ∘ σ_t ≠ σ_st`.
    pub composition_failures: Vec<(Mor, Mor)>,
}

impl FunctorCheck {
    /// Both sufficient conditions hold (α central and never a zero divisor).
    pub fn holds(&self) -> bool {
        self.non_central.is_empty() && self.zero_divisors.is_empty()
    }

    /// `σ_s ∘ σ_t = σ_st` on every composable pair.
    pub fn composes(&self) -> bool {
        self.composition_failures.is_empty()
    }
}

static NEXT_SYSTEM_ID: AtomicU64 = AtomicU64::new(1);

/// Identity used to reject arithmetic between elements of different systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SystemId(u64);

impl SystemId {
    fn fresh() -> Self {
        SystemId(NEXT_SYSTEM_ID.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Debug)]
pub struct CrossedSystem {
    id: SystemId,
    category: Arc<FiniteCategory>,
    rings: Vec<Arc<FiniteRing>>,
    sigma: Vec<RingHom>,
    alpha: Vec<Code>,
    report: OnceLock<ValidationReport>,
}

impl Clone for CrossedSystem {
    fn clone(&self) -> Self {
        CrossedSystem {
            id: self.id,
            category: self.category.clone(),
            rings: self.rings.clone(),
            sigma: self.sigma.clone(),
            alpha: self.alpha.clone(),
            report: self.report.clone(),
        }
    }
}

/// Structural equality; the system identity is ignored.
impl PartialEq for CrossedSystem {
    fn eq(&self, other: &Self) -> bool {
        self.category == other.category
            && self.rings == other.rings
            && self.sigma == other.sigma
            && self.alpha == other.alpha
    }
}

impl Eq for CrossedSystem {}

impl CrossedSystem {
    /// Assembles a system, checking that every σ and α value sits in the
    /// right ring. The five axioms are not checked here; see [`validate`].
    /// α entries not listed default to the identity of `A_{c(s)}`.
    ///
    /// [`validate`]: CrossedSystem::validate
    pub fn new(
        category: Arc<FiniteCategory>,
        rings: Vec<Arc<FiniteRing>>,
        sigma: Vec<RingHom>,
        alpha_entries: &[((Mor, Mor), Code)],
    ) -> Result<Self, SystemError> {
        let g = &category;
        if rings.len() != g.object_count() {
            return Err(SystemError::RingCount {
                expected: g.object_count(),
                got: rings.len(),
            });
        }
        if sigma.len() != g.morphism_count() {
            return Err(SystemError::SigmaCount {
                expected: g.morphism_count(),
                got: sigma.len(),
            });
        }
        for s in g.morphism_ids() {
            let h = &sigma[s.0];
            if h.domain() != &rings[g.dom(s).0] || h.codomain() != &rings[g.cod(s).0] {
                return Err(SystemError::SigmaPlacement(s));
            }
        }
        let m = g.morphism_count();
        let mut alpha = vec![0; m * m];
        for (s, t) in g.composable_pairs() {
            alpha[s.0 * m + t.0] = rings[g.cod(s).0].one();
        }
        for &((s, t), code) in alpha_entries {
            g.check_morphism(s)?;
            g.check_morphism(t)?;
            if g.dom(s) != g.cod(t) {
                return Err(SystemError::AlphaNotComposable(s, t));
            }
            if code >= rings[g.cod(s).0].size() {
                return Err(SystemError::AlphaOutOfRange(s, t, code));
            }
            alpha[s.0 * m + t.0] = code;
        }
        Ok(CrossedSystem {
            id: SystemId::fresh(),
            category,
            rings,
            sigma,
            alpha,
            report: OnceLock::new(),
        })
    }

    /// The category algebra `DG`: every `A_e = D`, σ identities, α ≡ 1.
    pub fn category_algebra(
        category: Arc<FiniteCategory>,
        ring: Arc<FiniteRing>,
    ) -> Result<Self, SystemError> {
        let rings = vec![ring.clone(); category.object_count()];
        let sigma = vec![RingHom::identity(ring); category.morphism_count()];
        Self::new(category, rings, sigma, &[])
    }

    /// Skew system: given σ, α ≡ 1.
    pub fn skew(
        category: Arc<FiniteCategory>,
        rings: Vec<Arc<FiniteRing>>,
        sigma: Vec<RingHom>,
    ) -> Result<Self, SystemError> {
        Self::new(category, rings, sigma, &[])
    }

    /// Twisted system over a single ring: σ identities, the given α entries.
    pub fn twisted(
        category: Arc<FiniteCategory>,
        ring: Arc<FiniteRing>,
        alpha_entries: &[((Mor, Mor), Code)],
    ) -> Result<Self, SystemError> {
        let rings = vec![ring.clone(); category.object_count()];
        let sigma = vec![RingHom::identity(ring); category.morphism_count()];
        Self::new(category, rings, sigma, alpha_entries)
    }

    pub fn id(&self) -> SystemId {
        self.id
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    pub fn rings(&self) -> &[Arc<FiniteRing>] {
        &self.rings
    }

    /// `A_e`.
    pub fn ring(&self, e: Obj) -> &Arc<FiniteRing> {
        &self.rings[e.0]
    }

    /// The ring holding coefficients of `u_s`, namely `A_{c(s)}`.
    pub fn coeff_ring(&self, s: Mor) -> &Arc<FiniteRing> {
        &self.rings[self.category.cod(s).0]
    }

    pub fn sigma(&self, s: Mor) -> &RingHom {
        &self.sigma[s.0]
    }

    pub fn sigmas(&self) -> &[RingHom] {
        &self.sigma
    }

    /// `α(s,t)`; only meaningful for composable pairs.
    #[inline]
    pub fn alpha(&self, s: Mor, t: Mor) -> Code {
        self.alpha[s.0 * self.category.morphism_count() + t.0]
    }

    /// All `((s, t), α(s,t))` over composable pairs, canonical order.
    pub fn alpha_entries(&self) -> Vec<((Mor, Mor), Code)> {
        self.category
            .composable_pairs()
            .into_iter()
            .map(|(s, t)| ((s, t), self.alpha(s, t)))
            .collect()
    }

    /// A copy with `σ_s` replaced; the copy is a distinct system.
    pub fn with_sigma(&self, s: Mor, hom: RingHom) -> Result<Self, SystemError> {
        let mut sigma = self.sigma.clone();
        self.category.check_morphism(s)?;
        sigma[s.0] = hom;
        Self::new(
            self.category.clone(),
            self.rings.clone(),
            sigma,
            &self.alpha_entries(),
        )
    }

    /// A copy with `α(s,t)` replaced; the copy is a distinct system.
    pub fn with_alpha(&self, s: Mor, t: Mor, code: Code) -> Result<Self, SystemError> {
        let mut entries = self.alpha_entries();
        entries.push(((s, t), code));
        Self::new(
            self.category.clone(),
            self.rings.clone(),
            self.sigma.clone(),
            &entries,
        )
    }

    fn cocycle_sides(&self, s: Mor, t: Mor, r: Mor) -> (Code, Code) {
        let g = &self.category;
        let ring = self.coeff_ring(s);
        let st = g.compose(s, t).expect("composable");
        let tr = g.compose(t, r).expect("composable");
        let lhs = ring.mul_code(self.alpha(s, t), self.alpha(st, r));
        let rhs = ring.mul_code(self.sigma(s).apply_code(self.alpha(t, r)), self.alpha(s, tr));
        (lhs, rhs)
    }

    fn twisting_sides(&self, s: Mor, t: Mor, a: Code) -> (Code, Code) {
        let g = &self.category;
        let ring = self.coeff_ring(s);
        let st = g.compose(s, t).expect("composable");
        let alpha = self.alpha(s, t);
        let lhs = ring.mul_code(self.sigma(s).apply_code(self.sigma(t).apply_code(a)), alpha);
        let rhs = ring.mul_code(alpha, self.sigma(st).apply_code(a));
        (lhs, rhs)
    }

    /// Exhaustive check of the homomorphism property of every `σ_s` and of
    /// the five crossed-system axioms, listing every failure.
    pub fn validate(&self) -> &ValidationReport {
        self.report.get_or_init(|| self.compute_report())
    }

    fn compute_report(&self) -> ValidationReport {
        let g = &self.category;
        let mut violations = Vec::new();
        for s in g.morphism_ids() {
            for law in self.sigma(s).validate().violations {
                violations.push(Violation::SigmaNotHom { s, law });
            }
        }
        for e in g.object_ids() {
            let h = self.sigma(g.identity(e));
            for a in self.ring(e).codes() {
                if h.apply_code(a) != a {
                    violations.push(Violation::SigmaIdentity { object: e, a });
                }
            }
        }
        for s in g.morphism_ids() {
            if self.alpha(s, g.identity(g.dom(s))) != self.coeff_ring(s).one() {
                violations.push(Violation::RightUnit { s });
            }
        }
        for t in g.morphism_ids() {
            if self.alpha(g.identity(g.cod(t)), t) != self.coeff_ring(t).one() {
                violations.push(Violation::LeftUnit { t });
            }
        }
        let triples = g.composable_triples();
        let cocycle: Vec<Violation> = triples
            .par_iter()
            .filter_map(|&(s, t, r)| {
                let (l, r2) = self.cocycle_sides(s, t, r);
                (l != r2).then_some(Violation::Cocycle { s, t, r })
            })
            .collect();
        violations.extend(cocycle);
        let pairs = g.composable_pairs();
        let twisting: Vec<Violation> = pairs
            .par_iter()
            .flat_map_iter(|&(s, t)| {
                self.ring(g.dom(t)).codes().filter_map(move |a| {
                    let (l, r) = self.twisting_sides(s, t, a);
                    (l != r).then_some(Violation::Twisting { s, t, a })
                })
            })
            .collect();
        violations.extend(twisting);
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Errors with the first violation when the system is not lawful.
    pub fn ensure_valid(&self) -> Result<(), SystemError> {
        match self.validate().violations.first() {
            None => Ok(()),
            Some(v) => Err(SystemError::Invalid(v.clone())),
        }
    }

    /// σ is the identity on every loop.
    pub fn is_twisted(&self) -> Result<bool, SystemError> {
        self.ensure_valid()?;
        Ok(self.loop_sigmas_trivial())
    }

    pub(crate) fn loop_sigmas_trivial(&self) -> bool {
        self.category
            .loops()
            .into_iter()
            .all(|s| self.sigma(s).is_identity())
    }

    /// α is identically one.
    pub fn is_skew(&self) -> Result<bool, SystemError> {
        self.ensure_valid()?;
        Ok(self.alpha_trivial())
    }

    pub(crate) fn alpha_trivial(&self) -> bool {
        self.category
            .composable_pairs()
            .into_iter()
            .all(|(s, t)| self.alpha(s, t) == self.coeff_ring(s).one())
    }

    /// `α(s,t) = α(t,s)` for all loops `s, t` at a common object.
    pub fn is_alpha_symmetric(&self) -> Result<bool, SystemError> {
        self.ensure_valid()?;
        Ok(self.alpha_symmetric())
    }

    pub(crate) fn alpha_symmetric(&self) -> bool {
        let g = &self.category;
        g.object_ids().all(|e| {
            let loops = g.loops_at(e);
            loops
                .iter()
                .all(|&s| loops.iter().all(|&t| self.alpha(s, t) == self.alpha(t, s)))
        })
    }

    /// Checks the two sufficient conditions for σ to be a functor, and
    /// directly checks `σ_s ∘ σ_t = σ_st` on every composable pair.
    pub fn sigma_is_functor(&self) -> Result<FunctorCheck, SystemError> {
        self.ensure_valid()?;
        let g = &self.category;
        let mut check = FunctorCheck {
            non_central: Vec::new(),
            zero_divisors: Vec::new(),
            composition_failures: Vec::new(),
        };
        for (s, t) in g.composable_pairs() {
            let ring = self.coeff_ring(s);
            let a = self.alpha(s, t);
            if !ring.is_central_code(a) {
                check.non_central.push((s, t));
            }
            if ring.is_zero_divisor_code(a) {
                check.zero_divisors.push((s, t));
            }
            let st = g.compose(s, t).unwrap();
            let composed = self.sigma(s).compose(self.sigma(t))?;
            if composed.table() != self.sigma(st).table() {
                check.composition_failures.push((s, t));
            }
        }
        Ok(check)
    }

    /// The monoid system `{A_e, G_e, σ_e, α_e}` at object `e`.
    pub fn restrict_to_loop(&self, e: Obj) -> Result<CrossedSystem, SystemError> {
        self.ensure_valid()?;
        self.restrict_unchecked(e)
    }

    pub(crate) fn restrict_unchecked(&self, e: Obj) -> Result<CrossedSystem, SystemError> {
        let (cat, embed) = self.category.loop_category(e)?;
        let sigma = embed.iter().map(|&s| self.sigma(s).clone()).collect();
        let mut alpha = Vec::new();
        for (i, &s) in embed.iter().enumerate() {
            for (j, &t) in embed.iter().enumerate() {
                alpha.push(((Mor(i), Mor(j)), self.alpha(s, t)));
            }
        }
        Self::new(Arc::new(cat), vec![self.ring(e).clone()], sigma, &alpha)
    }

    pub fn is_one_object(&self) -> bool {
        self.category.object_count() == 1
    }

    /// Every `A_e` is commutative.
    pub fn coefficients_commutative(&self) -> bool {
        self.rings.iter().all(|r| r.is_commutative())
    }

    /// Size of the full algebra carrier, saturating at `usize::MAX`.
    pub fn algebra_size(&self) -> usize {
        self.category
            .morphism_ids()
            .try_fold(1usize, |acc, s| acc.checked_mul(self.coeff_ring(s).size()))
            .unwrap_or(usize::MAX)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Arc<FiniteCategory> {
        Arc::new(FiniteCategory::cyclic_group(2).unwrap())
    }

    fn swap_system() -> CrossedSystem {
        let z2 = FiniteRing::cyclic(2).unwrap();
        let a = FiniteRing::product(&[z2.clone(), z2]).unwrap();
        let sigma = vec![RingHom::identity(a.clone()), RingHom::swap(a.clone()).unwrap()];
        CrossedSystem::skew(c2(), vec![a], sigma).unwrap()
    }

    fn z4_twisted(alpha: Code) -> CrossedSystem {
        let z4 = FiniteRing::cyclic(4).unwrap();
        CrossedSystem::twisted(c2(), z4, &[((Mor(1), Mor(1)), alpha)]).unwrap()
    }

    #[test]
    fn valid_systems() {
        assert!(swap_system().is_valid());
        assert!(z4_twisted(3).is_valid());
        assert!(z4_twisted(2).is_valid());
    }

    #[test]
    fn cocycle_mutation_in_swap_system() {
        // (1,0) has code 2 and is not fixed by the swap
        let bad = swap_system().with_alpha(Mor(1), Mor(1), 2).unwrap();
        let report = bad.validate();
        assert!(report.violations.contains(&Violation::Cocycle {
            s: Mor(1),
            t: Mor(1),
            r: Mor(1)
        }));
        for v in &report.violations {
            let (l, r) = v.sides(&bad);
            assert_ne!(l, r, "{v}");
        }
    }

    #[test]
    fn classification_flags() {
        let tw = z4_twisted(3);
        assert!(tw.is_twisted().unwrap());
        assert!(!tw.is_skew().unwrap());
        assert!(tw.is_alpha_symmetric().unwrap());
        let sw = swap_system();
        assert!(!sw.is_twisted().unwrap());
        assert!(sw.is_skew().unwrap());
        assert!(sw.is_alpha_symmetric().unwrap());
        let z2 = FiniteRing::cyclic(2).unwrap();
        let ga = CrossedSystem::category_algebra(c2(), z2).unwrap();
        assert!(ga.is_skew().unwrap() && ga.is_twisted().unwrap());
    }

    #[test]
    fn invalid_systems_refuse_classification() {
        let bad = swap_system().with_alpha(Mor(1), Mor(1), 2).unwrap();
        assert!(matches!(bad.is_twisted(), Err(SystemError::Invalid(_))));
        assert!(bad.sigma_is_functor().is_err());
    }

    #[test]
    fn functor_conditions() {
        let f = z4_twisted(3).sigma_is_functor().unwrap();
        assert!(f.holds() && f.composes());
        let f = z4_twisted(2).sigma_is_functor().unwrap();
        assert!(!f.holds());
        assert_eq!(f.zero_divisors, vec![(Mor(1), Mor(1))]);
        assert!(f.composes());
        assert!(swap_system().sigma_is_functor().unwrap().holds());
    }

    #[test]
    fn restriction_to_loops() {
        let z3 = FiniteRing::cyclic(3).unwrap();
        let d2 = Arc::new(FiniteCategory::pair_groupoid(2).unwrap());
        let sys = CrossedSystem::category_algebra(d2, z3).unwrap();
        let r = sys.restrict_to_loop(Obj(0)).unwrap();
        assert_eq!(r.category().morphism_count(), 1);
        assert!(r.is_valid());
        let sw = swap_system();
        assert_eq!(sw.restrict_to_loop(Obj(0)).unwrap(), sw);
        assert!(sw.restrict_to_loop(Obj(3)).is_err());
    }

    #[test]
    fn placement_errors() {
        let z2 = FiniteRing::cyclic(2).unwrap();
        let z3 = FiniteRing::cyclic(3).unwrap();
        let err = CrossedSystem::new(
            c2(),
            vec![z2.clone()],
            vec![RingHom::identity(z2.clone()), RingHom::identity(z3)],
            &[],
        )
        .unwrap_err();
        assert_eq!(err, SystemError::SigmaPlacement(Mor(1)));
        let err = CrossedSystem::twisted(c2(), z2, &[((Mor(1), Mor(1)), 5)]).unwrap_err();
        assert_eq!(err, SystemError::AlphaOutOfRange(Mor(1), Mor(1), 5));
    }
}
