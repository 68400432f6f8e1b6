//! Centers, commutants and commutativity of crossed products.
//!
//! Every test of the form "x commutes with the whole algebra" is reduced to
//! "x commutes with every `a u_t`". Multiplication is biadditive and the
//! elements `a u_t` additively generate the algebra, so the two agree.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError};
use crate::category::{Mor, Obj};
use crate::checklist::Checklist;
use crate::ring::{fixed_elements, Code};
use crate::system::{CrossedSystem, SystemError, SystemId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("hypotheses not satisfied: {0}")]
    Hypotheses(Checklist),
    #[error("coefficient ring at object {0} is not commutative")]
    NotCommutative(Obj),
}

impl StructureError {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, StructureError::Algebra(AlgebraError::CapExceeded { .. }))
    }
}

/// A finite set of algebra elements in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSet {
    system: SystemId,
    elements: Vec<AlgebraElement>,
    subring: bool,
    conditions: Vec<String>,
}

impl ElementSet {
    pub fn new(
        system: &CrossedSystem,
        elements: impl IntoIterator<Item = AlgebraElement>,
        subring: bool,
        conditions: &[&str],
    ) -> Result<Self, AlgebraError> {
        let mut elements: Vec<AlgebraElement> = elements.into_iter().collect();
        if elements.iter().any(|x| x.system() != system.id()) {
            return Err(AlgebraError::SystemMismatch);
        }
        elements.sort();
        elements.dedup();
        Ok(ElementSet {
            system: system.id(),
            elements,
            subring,
            conditions: conditions.iter().map(|c| c.to_string()).collect(),
        })
    }

    /// A set of elements already known to belong to `system`; not a
    /// subring in general.
    pub(crate) fn with_system(
        system: SystemId,
        elements: impl IntoIterator<Item = AlgebraElement>,
        conditions: &[&str],
    ) -> Self {
        let mut elements: Vec<AlgebraElement> = elements.into_iter().collect();
        elements.sort();
        elements.dedup();
        ElementSet {
            system,
            elements,
            subring: false,
            conditions: conditions.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn system(&self) -> SystemId {
        self.system
    }

    pub fn elements(&self) -> &[AlgebraElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &AlgebraElement) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn is_subring(&self) -> bool {
        self.subring
    }

    pub fn conditions(&self) -> &[String] {
        &self.conditions
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }

    /// Elements of `self` that also lie in `other`.
    pub fn intersection(&self, other: &ElementSet) -> Result<ElementSet, AlgebraError> {
        if self.system != other.system {
            return Err(AlgebraError::SystemMismatch);
        }
        Ok(ElementSet {
            system: self.system,
            elements: self
                .elements
                .iter()
                .filter(|x| other.contains(x))
                .cloned()
                .collect(),
            subring: false,
            conditions: vec!["intersection".into()],
        })
    }

    /// Directly checks closure under addition, negation and multiplication
    /// and membership of the identity.
    pub fn is_closed_subring(&self, system: &CrossedSystem) -> bool {
        if self.system != system.id() || !self.contains(&system.identity_element()) {
            return false;
        }
        self.elements.par_iter().all(|x| {
            self.contains(&system.neg_unchecked(x))
                && self.elements.iter().all(|y| {
                    self.contains(&system.add_unchecked(x, y))
                        && self.contains(&system.mul_unchecked(x, y))
                })
        })
    }

    pub fn render(&self, system: &CrossedSystem) -> Vec<String> {
        self.elements.iter().map(|x| system.render(x)).collect()
    }
}

fn commutes(sys: &CrossedSystem, x: &AlgebraElement, y: &AlgebraElement) -> bool {
    sys.mul_unchecked(x, y) == sys.mul_unchecked(y, x)
}

fn commutes_with_all(sys: &CrossedSystem, x: &AlgebraElement, gens: &[AlgebraElement]) -> bool {
    gens.iter().all(|g| commutes(sys, x, g))
}

/// Every element whose coefficient at each listed morphism ranges over the
/// given codes; morphisms not listed carry zero.
fn product_candidates(
    sys: &CrossedSystem,
    choices: &[(Mor, Vec<Code>)],
    cap: usize,
) -> Result<Vec<AlgebraElement>, AlgebraError> {
    let cardinality = choices
        .iter()
        .fold(1u128, |acc, (_, c)| acc.saturating_mul(c.len() as u128));
    if cardinality > cap as u128 {
        return Err(AlgebraError::CapExceeded { cardinality, cap });
    }
    let mut out = vec![sys.zero_element()];
    for (s, codes) in choices {
        let mut next = Vec::with_capacity(out.len() * codes.len());
        for x in &out {
            for &c in codes {
                next.push(sys.add_unchecked(x, &sys.basis_unchecked(*s, c)));
            }
        }
        out = next;
    }
    Ok(out)
}

fn coefficient(sys: &CrossedSystem, x: &AlgebraElement, s: Mor) -> Code {
    x.coefficient(s).unwrap_or_else(|| sys.coeff_ring(s).zero())
}

/// All `x` commuting with every `a u_t`, found by scanning the whole
/// carrier.
pub fn center_bruteforce(sys: &CrossedSystem, cap: usize) -> Result<ElementSet, StructureError> {
    sys.ensure_valid()?;
    let candidates: Vec<AlgebraElement> = sys.enumerate_all(cap)?.collect();
    let gens = sys.basis_elements();
    let center: Vec<AlgebraElement> = candidates
        .into_par_iter()
        .filter(|x| commutes_with_all(sys, x, &gens))
        .collect();
    Ok(ElementSet::new(sys, center, true, &["commutes with every a u_t"])?)
}

/// Condition (i) at object `e`: `a_s σ_s(a) = a a_s` for loops `s` at `e`
/// and all `a ∈ A_e`.
fn loop_condition_i(sys: &CrossedSystem, x: &AlgebraElement, e: Obj) -> bool {
    let ring = sys.ring(e);
    x.terms()
        .iter()
        .filter(|&&(s, _)| sys.category().dom(s) == e)
        .all(|&(s, b)| {
            let sigma = sys.sigma(s);
            ring.codes()
                .all(|a| ring.mul_code(b, sigma.apply_code(a)) == ring.mul_code(a, b))
        })
}

/// Condition (ii) at object `e`: for all loops `t, r`,
/// `Σ_{st=r} a_s α(s,t) = Σ_{ts=r} σ_t(a_s) α(t,s)`.
fn loop_condition_ii(sys: &CrossedSystem, x: &AlgebraElement, e: Obj) -> bool {
    let g = sys.category();
    let ring = sys.ring(e);
    let loops = g.loops_at(e);
    loops.iter().all(|&t| {
        loops.iter().all(|&r| {
            let mut left = ring.zero();
            let mut right = ring.zero();
            for &s in &loops {
                let a_s = coefficient(sys, x, s);
                if g.compose(s, t) == Some(r) {
                    left = ring.add_code(left, ring.mul_code(a_s, sys.alpha(s, t)));
                }
                if g.compose(t, s) == Some(r) {
                    let term = ring.mul_code(sys.sigma(t).apply_code(a_s), sys.alpha(t, s));
                    right = ring.add_code(right, term);
                }
            }
            left == right
        })
    })
}

/// For `e ≠ f` and `r, g : e → f`:
/// `Σ_{s ∈ G_e, rs=g} σ_r(a_s) α(r,s) = Σ_{t ∈ G_f, tr=g} a_t α(t,r)`.
fn cross_object_condition(sys: &CrossedSystem, x: &AlgebraElement) -> bool {
    let g = sys.category();
    for e in g.object_ids() {
        let loops_e = g.loops_at(e);
        for f in g.object_ids().filter(|&f| f != e) {
            let loops_f = g.loops_at(f);
            let hom = g.hom_set(f, e).expect("objects in range");
            let ring = sys.ring(f);
            for &r in &hom {
                for &target in &hom {
                    let mut left = ring.zero();
                    for &s in &loops_e {
                        if g.compose(r, s) == Some(target) {
                            let a_s = sys.sigma(r).apply_code(coefficient(sys, x, s));
                            left = ring.add_code(left, ring.mul_code(a_s, sys.alpha(r, s)));
                        }
                    }
                    let mut right = ring.zero();
                    for &t in &loops_f {
                        if g.compose(t, r) == Some(target) {
                            let a_t = coefficient(sys, x, t);
                            right = ring.add_code(right, ring.mul_code(a_t, sys.alpha(t, r)));
                        }
                    }
                    if left != right {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The center from the closed-form conditions: loop support, membership of
/// each per-object part in the center of the loop crossed product, and the
/// cross-object condition. For a one-object category only the monoid
/// conditions apply.
pub fn center_by_conditions(sys: &CrossedSystem, cap: usize) -> Result<ElementSet, StructureError> {
    sys.ensure_valid()?;
    let g = sys.category();
    let cardinality = sys.enumeration_size(|s| g.is_loop(s));
    if cardinality > cap as u128 {
        return Err(AlgebraError::CapExceeded { cardinality, cap }.into());
    }
    let mut combined = vec![sys.zero_element()];
    for e in g.object_ids() {
        let local: Vec<AlgebraElement> = sys
            .enumerate(|s| g.dom(s) == e && g.cod(s) == e, cap)?
            .collect();
        let local: Vec<AlgebraElement> = local
            .into_par_iter()
            .filter(|x| loop_condition_i(sys, x, e) && loop_condition_ii(sys, x, e))
            .collect();
        combined = combined
            .iter()
            .flat_map(|x| local.iter().map(move |y| sys.add_unchecked(x, y)))
            .collect();
    }
    let mut conditions = vec!["loop support", "monoid condition (i)", "monoid condition (ii)"];
    if g.object_count() > 1 {
        conditions.push("cross-object condition");
        combined = combined
            .into_par_iter()
            .filter(|x| cross_object_condition(sys, x))
            .collect();
    }
    Ok(ElementSet::new(sys, combined, true, &conditions)?)
}

/// The center of a twisted monoid ring: every coefficient central, and
/// `Σ_{st=r} a_s α(s,t) = Σ_{ts=r} a_s α(t,s)`.
pub fn center_twisted(sys: &CrossedSystem, cap: usize) -> Result<ElementSet, StructureError> {
    sys.ensure_valid()?;
    let mut checklist = Checklist::new();
    checklist.check("one-object category", sys.is_one_object());
    checklist.check("twisted (sigma trivial on loops)", sys.loop_sigmas_trivial());
    if !checklist.all_hold() {
        return Err(StructureError::Hypotheses(checklist));
    }
    let g = sys.category();
    let ring = sys.ring(Obj(0));
    let central = ring.center_codes();
    let choices: Vec<(Mor, Vec<Code>)> = g.morphism_ids().map(|s| (s, central.clone())).collect();
    let candidates = product_candidates(sys, &choices, cap)?;
    let morphisms: Vec<Mor> = g.morphism_ids().collect();
    let keep: Vec<AlgebraElement> = candidates
        .into_par_iter()
        .filter(|x| {
            morphisms.iter().all(|&t| {
                morphisms.iter().all(|&r| {
                    let mut left = ring.zero();
                    let mut right = ring.zero();
                    for &s in &morphisms {
                        let a_s = coefficient(sys, x, s);
                        if g.compose(s, t) == Some(r) {
                            left = ring.add_code(left, ring.mul_code(a_s, sys.alpha(s, t)));
                        }
                        if g.compose(t, s) == Some(r) {
                            right = ring.add_code(right, ring.mul_code(a_s, sys.alpha(t, s)));
                        }
                    }
                    left == right
                })
            })
        })
        .collect();
    Ok(ElementSet::new(
        sys,
        keep,
        true,
        &["coefficients central", "twisted convolution symmetry"],
    )?)
}

/// The center when `G` is an abelian cancellable monoid and α is symmetric
/// with no zero divisors: condition (i) together with `a_s ∈ A^G`.
pub fn center_skew_abelian(sys: &CrossedSystem, cap: usize) -> Result<ElementSet, StructureError> {
    sys.ensure_valid()?;
    let g = sys.category();
    let mut checklist = Checklist::new();
    if !checklist.check("one-object category", sys.is_one_object()) {
        return Err(StructureError::Hypotheses(checklist));
    }
    checklist.check("G abelian", g.is_loop_monoid_abelian(Obj(0)));
    checklist.check("G cancellable", g.is_cancellable());
    checklist.check("alpha symmetric", sys.alpha_symmetric());
    let ring = sys.ring(Obj(0));
    let zero_divisors: Vec<String> = g
        .composable_pairs()
        .into_iter()
        .filter(|&(s, t)| ring.is_zero_divisor_code(sys.alpha(s, t)))
        .map(|(s, t)| format!("({},{})", g.name(s), g.name(t)))
        .collect();
    checklist.check_with(
        "no alpha value is a zero divisor",
        zero_divisors.is_empty(),
        zero_divisors.join(" "),
    );
    if !checklist.all_hold() {
        return Err(StructureError::Hypotheses(checklist));
    }
    let fixed: Vec<Code> = fixed_elements(ring, sys.sigmas())
        .map_err(SystemError::from)?
        .into_iter()
        .map(|x| x.code)
        .collect();
    let choices: Vec<(Mor, Vec<Code>)> = g.morphism_ids().map(|s| (s, fixed.clone())).collect();
    let candidates = product_candidates(sys, &choices, cap)?;
    let keep: Vec<AlgebraElement> = candidates
        .into_par_iter()
        .filter(|x| loop_condition_i(sys, x, Obj(0)))
        .collect();
    Ok(ElementSet::new(
        sys,
        keep,
        true,
        &["condition (i)", "coefficients fixed by every sigma"],
    )?)
}

/// The commutant of `A`, described morphism by morphism: zero off loops and
/// `C_s = {b : b σ_s(a) = a b for all a}` on each loop `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Commutant {
    system: SystemId,
    coefficients: Vec<(Mor, Vec<Code>)>,
}

impl Commutant {
    /// `(s, C_s)` for every loop `s`.
    pub fn coefficients(&self) -> &[(Mor, Vec<Code>)] {
        &self.coefficients
    }

    pub fn coefficient_set(&self, s: Mor) -> Option<&[Code]> {
        self.coefficients
            .iter()
            .find(|(t, _)| *t == s)
            .map(|(_, c)| c.as_slice())
    }

    pub fn cardinality(&self) -> u128 {
        self.coefficients
            .iter()
            .fold(1u128, |acc, (_, c)| acc.saturating_mul(c.len() as u128))
    }

    pub fn contains(&self, sys: &CrossedSystem, x: &AlgebraElement) -> bool {
        x.system() == self.system
            && x.terms()
                .iter()
                .all(|&(s, b)| self.coefficient_set(s).is_some_and(|c| c.contains(&b)))
            && sys.id() == self.system
    }

    /// Nonzero homogeneous elements `b u_s` with `b ∈ C_s`.
    pub fn generators(&self, sys: &CrossedSystem) -> Vec<AlgebraElement> {
        self.coefficients
            .iter()
            .flat_map(|(s, codes)| {
                codes
                    .iter()
                    .filter(move |&&b| b != sys.coeff_ring(*s).zero())
                    .map(move |&b| sys.basis_unchecked(*s, b))
            })
            .collect()
    }

    /// The direct sum `⊕ C_s u_s` as an explicit set.
    pub fn elements(&self, sys: &CrossedSystem, cap: usize) -> Result<ElementSet, AlgebraError> {
        if sys.id() != self.system {
            return Err(AlgebraError::SystemMismatch);
        }
        let all = product_candidates(sys, &self.coefficients, cap)?;
        ElementSet::new(sys, all, true, &["loop support", "b sigma_s(a) = a b"])
    }
}

pub fn commutant_of_coefficients(sys: &CrossedSystem) -> Result<Commutant, StructureError> {
    sys.ensure_valid()?;
    let coefficients = sys
        .category()
        .loops()
        .into_iter()
        .map(|s| {
            let ring = sys.coeff_ring(s);
            let sigma = sys.sigma(s);
            let c_s = ring
                .codes()
                .filter(|&b| {
                    ring.codes()
                        .all(|a| ring.mul_code(b, sigma.apply_code(a)) == ring.mul_code(a, b))
                })
                .collect();
            (s, c_s)
        })
        .collect();
    Ok(Commutant {
        system: sys.id(),
        coefficients,
    })
}

/// All `x` commuting with every `a u_e`, by scanning the whole carrier.
pub fn commutant_bruteforce(sys: &CrossedSystem, cap: usize) -> Result<ElementSet, StructureError> {
    sys.ensure_valid()?;
    let candidates: Vec<AlgebraElement> = sys.enumerate_all(cap)?.collect();
    let gens = sys.coefficient_basis();
    let keep: Vec<AlgebraElement> = candidates
        .into_par_iter()
        .filter(|x| commutes_with_all(sys, x, &gens))
        .collect();
    Ok(ElementSet::new(sys, keep, true, &["commutes with every a u_e"])?)
}

/// For commutative `A`: `b ∈ C_s` iff `σ_s(a) - a ∈ ann(b)` for every `a`,
/// checked on every loop and every `b`.
pub fn annihilator_form_holds(sys: &CrossedSystem) -> Result<bool, StructureError> {
    let commutant = commutant_of_coefficients(sys)?;
    for e in sys.category().object_ids() {
        if !sys.ring(e).is_commutative() {
            return Err(StructureError::NotCommutative(e));
        }
    }
    Ok(commutant.coefficients.iter().all(|(s, c_s)| {
        let ring = sys.coeff_ring(*s);
        let sigma = sys.sigma(*s);
        ring.codes().all(|b| {
            let annihilates = ring.codes().all(|a| {
                let diff = ring.sub_code(sigma.apply_code(a), a);
                ring.annihilator_codes(b).contains(&diff)
            });
            annihilates == c_s.contains(&b)
        })
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Maximality {
    pub maximal: bool,
    /// A nonidentity loop `s` and a nonzero `b ∈ C_s`.
    pub witness: Option<(Mor, Code)>,
    /// When every `A_e` is an integral domain: the nonidentity loops with
    /// `σ_s ≠ id`.
    pub nontrivial_loops: Option<Vec<Mor>>,
    /// When every `A_e` is an integral domain: whether the shortcut
    /// "every nonidentity loop acts nontrivially" gives the same verdict.
    pub shortcut_agrees: Option<bool>,
}

pub fn is_maximal_commutative(sys: &CrossedSystem) -> Result<Maximality, StructureError> {
    sys.ensure_valid()?;
    let g = sys.category();
    for e in g.object_ids() {
        if !sys.ring(e).is_commutative() {
            return Err(StructureError::NotCommutative(e));
        }
    }
    let commutant = commutant_of_coefficients(sys)?;
    let witness = commutant
        .coefficients
        .iter()
        .filter(|(s, _)| !g.is_identity(*s))
        .find_map(|(s, c)| {
            let zero = sys.coeff_ring(*s).zero();
            c.iter().find(|&&b| b != zero).map(|&b| (*s, b))
        });
    let maximal = witness.is_none();
    let domains = g.object_ids().all(|e| sys.ring(e).is_integral_domain());
    let (nontrivial_loops, shortcut_agrees) = if domains {
        let nonidentity: Vec<Mor> = g.loops().into_iter().filter(|&s| !g.is_identity(s)).collect();
        let nontrivial: Vec<Mor> = nonidentity
            .iter()
            .copied()
            .filter(|&s| !sys.sigma(s).is_identity())
            .collect();
        let agrees = (nontrivial.len() == nonidentity.len()) == maximal;
        (Some(nontrivial), Some(agrees))
    } else {
        (None, None)
    };
    Ok(Maximality {
        maximal,
        witness,
        nontrivial_loops,
        shortcut_agrees,
    })
}

/// Pairwise commutation of the homogeneous generators `b u_s` of the
/// commutant, which decides commutativity of the whole commutant.
pub fn commutant_is_commutative(sys: &CrossedSystem, cap: usize) -> Result<bool, StructureError> {
    let commutant = commutant_of_coefficients(sys)?;
    let gens = commutant.generators(sys);
    let pairs = (gens.len() as u128) * (gens.len() as u128);
    if pairs > cap as u128 {
        return Err(AlgebraError::CapExceeded {
            cardinality: pairs,
            cap,
        }
        .into());
    }
    Ok(gens
        .par_iter()
        .enumerate()
        .all(|(i, x)| gens[i + 1..].iter().all(|y| commutes(sys, x, y))))
}

/// Conditions (0) and (i)-(v) of the commutativity classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutativityReport {
    /// (0) no α value is zero.
    pub alpha_nonzero: bool,
    /// (i) the algebra is commutative.
    pub commutative: bool,
    /// (ii) G is a disjoint union of abelian monoids.
    pub abelian_monoids: bool,
    /// (iii) every loop system is twisted.
    pub loops_twisted: bool,
    /// (iv) every `A_e` is commutative.
    pub coefficients_commutative: bool,
    /// (v) α is symmetric.
    pub alpha_symmetric: bool,
    /// Two basis elements that fail to commute.
    pub noncommuting_pair: Option<(String, String)>,
    /// (0) and (i) imply (ii)-(v).
    pub implication_a: bool,
    /// (ii)-(v) imply (i).
    pub implication_b: bool,
}

impl CommutativityReport {
    pub fn conditions_ii_to_v(&self) -> bool {
        self.abelian_monoids && self.loops_twisted && self.coefficients_commutative && self.alpha_symmetric
    }

    pub fn consistent(&self) -> bool {
        self.implication_a && self.implication_b
    }
}

pub fn classify_commutativity(sys: &CrossedSystem) -> Result<CommutativityReport, StructureError> {
    sys.ensure_valid()?;
    let g = sys.category();
    let alpha_nonzero = g
        .composable_pairs()
        .into_iter()
        .all(|(s, t)| sys.alpha(s, t) != sys.coeff_ring(s).zero());
    let basis = sys.basis_elements();
    let noncommuting = basis
        .par_iter()
        .enumerate()
        .find_first(|(i, x)| basis[i + 1..].iter().any(|y| !commutes(sys, x, y)))
        .map(|(i, x)| {
            let y = basis[i + 1..]
                .iter()
                .find(|y| !commutes(sys, x, y))
                .expect("found above");
            (sys.render(x), sys.render(y))
        });
    let mut report = CommutativityReport {
        alpha_nonzero,
        commutative: noncommuting.is_none(),
        abelian_monoids: g.is_disjoint_union_of_abelian_monoids(),
        loops_twisted: sys.loop_sigmas_trivial(),
        coefficients_commutative: sys.coefficients_commutative(),
        alpha_symmetric: sys.alpha_symmetric(),
        noncommuting_pair: noncommuting,
        implication_a: true,
        implication_b: true,
    };
    report.implication_a = !(report.alpha_nonzero && report.commutative) || report.conditions_ii_to_v();
    report.implication_b = !report.conditions_ii_to_v() || report.commutative;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::DEFAULT_ENUMERATION_CAP as CAP;
    use crate::category::FiniteCategory;
    use crate::ring::{FiniteRing, RingHom};

    fn group_algebra(n: usize, m: usize) -> CrossedSystem {
        CrossedSystem::category_algebra(
            Arc::new(FiniteCategory::cyclic_group(n).unwrap()),
            FiniteRing::cyclic(m).unwrap(),
        )
        .unwrap()
    }

    fn swap() -> CrossedSystem {
        let z2 = FiniteRing::cyclic(2).unwrap();
        let a = FiniteRing::product(&[z2.clone(), z2]).unwrap();
        CrossedSystem::skew(
            Arc::new(FiniteCategory::cyclic_group(2).unwrap()),
            vec![a.clone()],
            vec![RingHom::identity(a.clone()), RingHom::swap(a).unwrap()],
        )
        .unwrap()
    }

    fn frobenius() -> CrossedSystem {
        let f = FiniteRing::gf4();
        CrossedSystem::skew(
            Arc::new(FiniteCategory::cyclic_group(2).unwrap()),
            vec![f.clone()],
            vec![RingHom::identity(f.clone()), RingHom::frobenius(f)],
        )
        .unwrap()
    }

    fn matrix(n: usize, m: usize) -> CrossedSystem {
        CrossedSystem::category_algebra(
            Arc::new(FiniteCategory::pair_groupoid(n).unwrap()),
            FiniteRing::cyclic(m).unwrap(),
        )
        .unwrap()
    }

    fn z4_twisted() -> CrossedSystem {
        CrossedSystem::twisted(
            Arc::new(FiniteCategory::cyclic_group(2).unwrap()),
            FiniteRing::cyclic(4).unwrap(),
            &[((Mor(1), Mor(1)), 3)],
        )
        .unwrap()
    }

    #[test]
    fn bruteforce_centers() {
        let g = group_algebra(2, 2);
        assert_eq!(center_bruteforce(&g, CAP).unwrap().len(), 4);
        let s = swap();
        let z = center_bruteforce(&s, CAP).unwrap();
        assert_eq!(z.render(&s), vec!["0", "u_e"]);
        let d = matrix(2, 3);
        let z = center_bruteforce(&d, CAP).unwrap();
        assert_eq!(
            z.render(&d),
            vec!["0", "u_(1,1) + u_(2,2)", "2 u_(1,1) + 2 u_(2,2)"]
        );
        assert!(z.is_closed_subring(&d));
    }

    #[test]
    fn conditions_match_bruteforce() {
        for sys in [group_algebra(2, 2), group_algebra(3, 3), swap(), frobenius(), matrix(2, 2), matrix(2, 3), z4_twisted()] {
            assert_eq!(
                center_by_conditions(&sys, CAP).unwrap().elements(),
                center_bruteforce(&sys, CAP).unwrap().elements()
            );
        }
    }

    #[test]
    fn matrix_center_three_by_three() {
        let d = matrix(3, 4);
        let z = center_by_conditions(&d, CAP).unwrap();
        assert_eq!(z.len(), 4);
        assert_eq!(z.render(&d)[1], "u_(1,1) + u_(2,2) + u_(3,3)");
        assert!(center_bruteforce(&d, CAP).unwrap_err().is_cap_exceeded());
    }

    #[test]
    fn specialized_centers() {
        let t = z4_twisted();
        assert_eq!(
            center_twisted(&t, CAP).unwrap().elements(),
            center_bruteforce(&t, CAP).unwrap().elements()
        );
        assert_eq!(center_twisted(&group_algebra(2, 2), CAP).unwrap().len(), 4);
        assert!(matches!(center_twisted(&swap(), CAP), Err(StructureError::Hypotheses(_))));

        let f = frobenius();
        let z = center_skew_abelian(&f, CAP).unwrap();
        assert_eq!(z.render(&f), vec!["0", "u_e"]);
        let s = swap();
        assert_eq!(center_skew_abelian(&s, CAP).unwrap().render(&s), vec!["0", "u_e"]);
        // α(s,s) = 2 in Z4 is a zero divisor
        let zd = CrossedSystem::twisted(
            Arc::new(FiniteCategory::cyclic_group(2).unwrap()),
            FiniteRing::cyclic(4).unwrap(),
            &[((Mor(1), Mor(1)), 2)],
        )
        .unwrap();
        let Err(StructureError::Hypotheses(list)) = center_skew_abelian(&zd, CAP) else {
            panic!("expected rejection")
        };
        let failed: Vec<&str> = list.failures().map(|h| h.name.as_str()).collect();
        assert_eq!(failed, vec!["no alpha value is a zero divisor"]);
        let Err(StructureError::Hypotheses(list)) = center_skew_abelian(&matrix(2, 2), CAP) else {
            panic!("expected rejection")
        };
        assert_eq!(list.failures().count(), 1);
    }

    #[test]
    fn commutants() {
        let g = group_algebra(2, 2);
        let c = commutant_of_coefficients(&g).unwrap();
        assert_eq!(c.elements(&g, CAP).unwrap().len(), 4);
        let s = swap();
        let c = commutant_of_coefficients(&s).unwrap();
        assert_eq!(c.coefficient_set(Mor(1)), Some(&[0][..]));
        assert_eq!(c.elements(&s, CAP).unwrap().len(), 4);
        let f = frobenius();
        assert_eq!(commutant_of_coefficients(&f).unwrap().cardinality(), 4);
        for sys in [g, s, f, matrix(2, 2), z4_twisted()] {
            let c = commutant_of_coefficients(&sys).unwrap().elements(&sys, CAP).unwrap();
            assert_eq!(c.elements(), commutant_bruteforce(&sys, CAP).unwrap().elements());
            assert!(center_bruteforce(&sys, CAP).unwrap().is_subset_of(&c));
            assert!(c.is_closed_subring(&sys));
        }
    }

    #[test]
    fn annihilator_form() {
        for sys in [group_algebra(2, 2), swap(), frobenius(), z4_twisted(), matrix(2, 3)] {
            assert!(annihilator_form_holds(&sys).unwrap());
        }
    }

    #[test]
    fn maximal_commutativity() {
        assert!(is_maximal_commutative(&swap()).unwrap().maximal);
        let m = is_maximal_commutative(&group_algebra(2, 2)).unwrap();
        assert!(!m.maximal);
        assert_eq!(m.witness, Some((Mor(1), 1)));
        let f = is_maximal_commutative(&frobenius()).unwrap();
        assert!(f.maximal);
        assert_eq!(f.nontrivial_loops, Some(vec![Mor(1)]));
        assert_eq!(f.shortcut_agrees, Some(true));
        let m2 = CrossedSystem::category_algebra(
            Arc::new(FiniteCategory::cyclic_group(2).unwrap()),
            FiniteRing::matrix(2, 2).unwrap(),
        )
        .unwrap();
        assert_eq!(is_maximal_commutative(&m2), Err(StructureError::NotCommutative(Obj(0))));
    }

    #[test]
    fn commutant_commutativity() {
        assert!(commutant_is_commutative(&group_algebra(2, 2), CAP).unwrap());
        assert!(commutant_is_commutative(&z4_twisted(), CAP).unwrap());
        assert!(commutant_is_commutative(&swap(), CAP).unwrap());
    }

    #[test]
    fn classification() {
        let r = classify_commutativity(&group_algebra(2, 2)).unwrap();
        assert!(r.conditions_ii_to_v() && r.commutative && r.consistent());
        let r = classify_commutativity(&swap()).unwrap();
        assert!(!r.loops_twisted && !r.commutative && r.consistent());
        assert!(r.noncommuting_pair.is_some());
        let u = CrossedSystem::category_algebra(
            Arc::new(
                FiniteCategory::disjoint_union(&[
                    FiniteCategory::cyclic_group(3).unwrap(),
                    FiniteCategory::cyclic_group(2).unwrap(),
                ])
                .unwrap(),
            ),
            FiniteRing::cyclic(3).unwrap(),
        )
        .unwrap();
        let r = classify_commutativity(&u).unwrap();
        assert!(r.conditions_ii_to_v() && r.commutative);
        let r = classify_commutativity(&matrix(2, 2)).unwrap();
        assert!(!r.abelian_monoids && !r.commutative && r.consistent());
    }
}
