//! Arithmetic in the crossed product `A ⋊ G` of a crossed system.
//!
//! Elements are finite sums `Σ a_s u_s` with `a_s ∈ A_{c(s)}`, kept in
//! canonical form: terms sorted by morphism, zero coefficients dropped.

use std::fmt::Write as _;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::category::{Mor, Obj};
use crate::ring::{Code, RingElement};
use crate::system::{CrossedSystem, SystemError, SystemId};

/// Default bound on the number of elements any enumeration may visit.
pub const DEFAULT_ENUMERATION_CAP: usize = 65536;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("elements belong to different crossed systems")]
    SystemMismatch,
    #[error("coefficient for {morphism} must lie in ring `{expected}`, got `{got}`")]
    Placement {
        morphism: Mor,
        expected: String,
        got: String,
    },
    #[error("code {code} is outside the coefficient ring of {morphism}")]
    CodeOutOfRange { morphism: Mor, code: Code },
    #[error("enumeration of {cardinality} elements exceeds the cap {cap}")]
    CapExceeded { cardinality: u128, cap: usize },
    #[error(transparent)]
    System(#[from] SystemError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElement {
    system: SystemId,
    terms: Vec<(Mor, Code)>,
}

impl AlgebraElement {
    pub fn system(&self) -> SystemId {
        self.system
    }

    /// Nonzero terms `(s, a_s)` in morphism order.
    pub fn terms(&self) -> &[(Mor, Code)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = Mor> + '_ {
        self.terms.iter().map(|&(s, _)| s)
    }

    pub fn coefficient(&self, s: Mor) -> Option<Code> {
        self.terms
            .binary_search_by_key(&s, |&(m, _)| m)
            .ok()
            .map(|i| self.terms[i].1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Exhaustive or seeded random checking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive { cap: usize },
    Sample { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityReport {
    pub checked: usize,
    /// A basis triple `(x, y, z)` with `(xy)z ≠ x(yz)`.
    pub witness: Option<(AlgebraElement, AlgebraElement, AlgebraElement)>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

impl CrossedSystem {
    fn same_system(&self, x: &AlgebraElement) -> Result<(), AlgebraError> {
        if x.system == self.id() {
            Ok(())
        } else {
            Err(AlgebraError::SystemMismatch)
        }
    }

    fn check_code(&self, s: Mor, code: Code) -> Result<(), AlgebraError> {
        self.category().check_morphism(s).map_err(SystemError::from)?;
        if code >= self.coeff_ring(s).size() {
            return Err(AlgebraError::CodeOutOfRange { morphism: s, code });
        }
        Ok(())
    }

    pub fn zero_element(&self) -> AlgebraElement {
        AlgebraElement {
            system: self.id(),
            terms: Vec::new(),
        }
    }

    /// `a u_s` for a ring element `a ∈ A_{c(s)}`.
    pub fn basis_element(&self, s: Mor, a: &RingElement) -> Result<AlgebraElement, AlgebraError> {
        self.category().check_morphism(s).map_err(SystemError::from)?;
        let ring = self.coeff_ring(s);
        if &a.ring != ring.id() {
            return Err(AlgebraError::Placement {
                morphism: s,
                expected: ring.id().to_string(),
                got: a.ring.to_string(),
            });
        }
        self.basis(s, a.code)
    }

    /// `a u_s` given the code of `a` in `A_{c(s)}`.
    pub fn basis(&self, s: Mor, code: Code) -> Result<AlgebraElement, AlgebraError> {
        self.check_code(s, code)?;
        Ok(self.basis_unchecked(s, code))
    }

    pub(crate) fn basis_unchecked(&self, s: Mor, code: Code) -> AlgebraElement {
        let terms = if code == self.coeff_ring(s).zero() {
            Vec::new()
        } else {
            vec![(s, code)]
        };
        AlgebraElement {
            system: self.id(),
            terms,
        }
    }

    /// `u_s`.
    pub fn unit_basis(&self, s: Mor) -> AlgebraElement {
        self.basis_unchecked(s, self.coeff_ring(s).one())
    }

    /// Sums arbitrary `(s, code)` pairs into a canonical element.
    pub fn element(&self, pairs: &[(Mor, Code)]) -> Result<AlgebraElement, AlgebraError> {
        let mut dense = self.dense_zero();
        for &(s, code) in pairs {
            self.check_code(s, code)?;
            dense[s.0] = self.coeff_ring(s).add_code(dense[s.0], code);
        }
        Ok(self.sparse_from_dense(&dense))
    }

    fn dense_zero(&self) -> Vec<Code> {
        self.category()
            .morphism_ids()
            .map(|s| self.coeff_ring(s).zero())
            .collect()
    }

    fn sparse_from_dense(&self, dense: &[Code]) -> AlgebraElement {
        let terms = dense
            .iter()
            .enumerate()
            .filter(|&(i, &c)| c != self.coeff_ring(Mor(i)).zero())
            .map(|(i, &c)| (Mor(i), c))
            .collect();
        AlgebraElement {
            system: self.id(),
            terms,
        }
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.same_system(x)?;
        self.same_system(y)?;
        Ok(self.add_unchecked(x, y))
    }

    pub(crate) fn add_unchecked(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut terms = Vec::with_capacity(x.terms.len() + y.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < x.terms.len() || j < y.terms.len() {
            let next = match (x.terms.get(i), y.terms.get(j)) {
                (Some(&(s, a)), Some(&(t, _))) if s < t => {
                    i += 1;
                    Some((s, a))
                }
                (Some(&(s, _)), Some(&(t, b))) if t < s => {
                    j += 1;
                    Some((t, b))
                }
                (Some(&(s, a)), Some(&(_, b))) => {
                    i += 1;
                    j += 1;
                    let ring = self.coeff_ring(s);
                    let c = ring.add_code(a, b);
                    (c != ring.zero()).then_some((s, c))
                }
                (Some(&p), None) => {
                    i += 1;
                    Some(p)
                }
                (None, Some(&p)) => {
                    j += 1;
                    Some(p)
                }
                (None, None) => unreachable!(),
            };
            terms.extend(next);
        }
        AlgebraElement {
            system: self.id(),
            terms,
        }
    }

    pub fn neg(&self, x: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.same_system(x)?;
        Ok(self.neg_unchecked(x))
    }

    pub(crate) fn neg_unchecked(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            system: self.id(),
            terms: x
                .terms
                .iter()
                .map(|&(s, a)| (s, self.coeff_ring(s).neg_code(a)))
                .collect(),
        }
    }

    pub fn sub(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.same_system(x)?;
        self.same_system(y)?;
        Ok(self.add_unchecked(x, &self.neg_unchecked(y)))
    }

    /// Bilinear extension of `(a u_s)(b u_t) = a σ_s(b) α(s,t) u_st` when
    /// `d(s) = c(t)`, and zero otherwise.
    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.same_system(x)?;
        self.same_system(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        if x.is_zero() || y.is_zero() {
            return self.zero_element();
        }
        let g = self.category();
        let mut dense = self.dense_zero();
        for &(s, a) in &x.terms {
            let ring = self.coeff_ring(s);
            let sigma = self.sigma(s);
            for &(t, b) in &y.terms {
                let Some(st) = g.compose(s, t) else { continue };
                let c = ring.mul_code(ring.mul_code(a, sigma.apply_code(b)), self.alpha(s, t));
                dense[st.0] = ring.add_code(dense[st.0], c);
            }
        }
        self.sparse_from_dense(&dense)
    }

    /// `Σ_e u_e`.
    pub fn identity_element(&self) -> AlgebraElement {
        let mut terms: Vec<(Mor, Code)> = self
            .category()
            .identities()
            .iter()
            .map(|&id| (id, self.coeff_ring(id).one()))
            .filter(|&(id, c)| c != self.coeff_ring(id).zero())
            .collect();
        terms.sort();
        AlgebraElement {
            system: self.id(),
            terms,
        }
    }

    /// Left or right action of `a ∈ A_e` on `x`.
    ///
    /// Left: `a (b u_s) = (ab) u_s` if `c(s) = e`, else `0`.
    /// Right: `(b u_s) a = (b σ_s(a)) u_s` if `d(s) = e`, else `0`.
    pub fn act(
        &self,
        e: Obj,
        a: &RingElement,
        x: &AlgebraElement,
        side: Side,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.same_system(x)?;
        self.category().check_object(e).map_err(SystemError::from)?;
        let ring = self.ring(e);
        if &a.ring != ring.id() || a.code >= ring.size() {
            return Err(AlgebraError::Placement {
                morphism: self.category().identity(e),
                expected: ring.id().to_string(),
                got: a.ring.to_string(),
            });
        }
        let g = self.category();
        let mut terms = Vec::new();
        for &(s, b) in &x.terms {
            let coeff = self.coeff_ring(s);
            let c = match side {
                Side::Left if g.cod(s) == e => coeff.mul_code(a.code, b),
                Side::Right if g.dom(s) == e => coeff.mul_code(b, self.sigma(s).apply_code(a.code)),
                _ => continue,
            };
            if c != coeff.zero() {
                terms.push((s, c));
            }
        }
        Ok(AlgebraElement {
            system: self.id(),
            terms,
        })
    }

    /// Every `α(s,t)` has a left inverse in `A_{c(s)}`.
    pub fn is_strongly_graded(&self) -> bool {
        self.category()
            .composable_pairs()
            .into_iter()
            .all(|(s, t)| self.coeff_ring(s).left_inverse_code(self.alpha(s, t)).is_some())
    }

    /// Number of elements supported on the morphisms accepted by `filter`.
    pub fn enumeration_size(&self, filter: impl Fn(Mor) -> bool) -> u128 {
        self.category()
            .morphism_ids()
            .filter(|&s| filter(s))
            .map(|s| self.coeff_ring(s).size() as u128)
            .fold(1u128, |acc, n| acc.saturating_mul(n))
    }

    /// Every element whose support lies in the filtered morphisms, in
    /// lexicographic order of the dense coefficient vector.
    pub fn enumerate(
        &self,
        filter: impl Fn(Mor) -> bool,
        cap: usize,
    ) -> Result<ElementIter<'_>, AlgebraError> {
        let cardinality = self.enumeration_size(&filter);
        if cardinality > cap as u128 {
            return Err(AlgebraError::CapExceeded { cardinality, cap });
        }
        let morphisms: Vec<Mor> = self.category().morphism_ids().filter(|&s| filter(s)).collect();
        Ok(ElementIter {
            system: self,
            counter: vec![0; morphisms.len()],
            morphisms,
            done: false,
        })
    }

    /// All elements, under `cap`.
    pub fn enumerate_all(&self, cap: usize) -> Result<ElementIter<'_>, AlgebraError> {
        self.enumerate(|_| true, cap)
    }

    /// Uniformly random element supported on the filtered morphisms.
    pub fn random_element(&self, rng: &mut impl Rng, filter: impl Fn(Mor) -> bool) -> AlgebraElement {
        let mut dense = self.dense_zero();
        for s in self.category().morphism_ids().filter(|&s| filter(s)) {
            dense[s.0] = rng.gen_range(0..self.coeff_ring(s).size());
        }
        self.sparse_from_dense(&dense)
    }

    /// Elements `a u_s` over every morphism and every coefficient, the
    /// additive generators of the algebra.
    pub fn basis_elements(&self) -> Vec<AlgebraElement> {
        self.category()
            .morphism_ids()
            .flat_map(|s| {
                let ring = self.coeff_ring(s);
                ring.codes()
                    .filter(move |&c| c != ring.zero())
                    .map(move |c| self.basis_unchecked(s, c))
            })
            .collect()
    }

    /// Coefficient-ring elements `a u_e`, the additive generators of `A`.
    pub fn coefficient_basis(&self) -> Vec<AlgebraElement> {
        self.category()
            .object_ids()
            .flat_map(|e| {
                let id = self.category().identity(e);
                let ring = self.ring(e);
                ring.codes()
                    .filter(move |&c| c != ring.zero())
                    .map(move |c| self.basis_unchecked(id, c))
            })
            .collect()
    }

    /// Number of basis triples `(a u_s, b u_t, c u_r)` over `G^(3)`.
    pub fn basis_triple_count(&self) -> u128 {
        self.category()
            .composable_triples()
            .into_iter()
            .map(|(s, t, r)| {
                self.coeff_ring(s).size() as u128
                    * self.coeff_ring(t).size() as u128
                    * self.coeff_ring(r).size() as u128
            })
            .sum()
    }

    /// Checks `(xy)z = x(yz)` on basis triples over `G^(3)`. Triples that
    /// are not composable give zero on both sides, so by bilinearity this
    /// decides associativity of the whole algebra.
    pub fn check_associativity(&self, mode: CheckMode) -> Result<AssociativityReport, AlgebraError> {
        let triples = self.category().composable_triples();
        let check = |s: Mor, a: Code, t: Mor, b: Code, r: Mor, c: Code| {
            let x = self.basis_unchecked(s, a);
            let y = self.basis_unchecked(t, b);
            let z = self.basis_unchecked(r, c);
            let left = self.mul_unchecked(&self.mul_unchecked(&x, &y), &z);
            let right = self.mul_unchecked(&x, &self.mul_unchecked(&y, &z));
            (left != right).then_some((x, y, z))
        };
        match mode {
            CheckMode::Exhaustive { cap } => {
                let count = self.basis_triple_count();
                if count > cap as u128 {
                    return Err(AlgebraError::CapExceeded {
                        cardinality: count,
                        cap,
                    });
                }
                let mut checked = 0;
                for (s, t, r) in triples {
                    for a in self.coeff_ring(s).codes() {
                        for b in self.coeff_ring(t).codes() {
                            for c in self.coeff_ring(r).codes() {
                                checked += 1;
                                if let Some(w) = check(s, a, t, b, r, c) {
                                    return Ok(AssociativityReport {
                                        checked,
                                        witness: Some(w),
                                    });
                                }
                            }
                        }
                    }
                }
                Ok(AssociativityReport {
                    checked,
                    witness: None,
                })
            }
            CheckMode::Sample { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for i in 0..count {
                    if triples.is_empty() {
                        break;
                    }
                    let (s, t, r) = triples[rng.gen_range(0..triples.len())];
                    let a = rng.gen_range(0..self.coeff_ring(s).size());
                    let b = rng.gen_range(0..self.coeff_ring(t).size());
                    let c = rng.gen_range(0..self.coeff_ring(r).size());
                    if let Some(w) = check(s, a, t, b, r, c) {
                        return Ok(AssociativityReport {
                            checked: i + 1,
                            witness: Some(w),
                        });
                    }
                }
                Ok(AssociativityReport {
                    checked: count,
                    witness: None,
                })
            }
        }
    }

    /// A basis element on which `Σ u_e` fails to act as a two-sided
    /// identity, if any.
    pub fn unit_law_witness(&self) -> Option<AlgebraElement> {
        let one = self.identity_element();
        self.basis_elements().into_iter().find(|x| {
            self.mul_unchecked(&one, x) != *x || self.mul_unchecked(x, &one) != *x
        })
    }

    /// Renders `Σ a_s u_s` in canonical order with ring element names.
    pub fn render(&self, x: &AlgebraElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, &(s, a)) in x.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let ring = self.coeff_ring(s);
            let name = self.category().name(s);
            if a == ring.one() {
                let _ = write!(out, "u_{name}");
            } else {
                let _ = write!(out, "{} u_{name}", ring.name_of(a));
            }
        }
        out
    }
}

/// Odometer over dense coefficient vectors; the last morphism varies
/// fastest.
pub struct ElementIter<'a> {
    system: &'a CrossedSystem,
    morphisms: Vec<Mor>,
    counter: Vec<Code>,
    done: bool,
}

impl Iterator for ElementIter<'_> {
    type Item = AlgebraElement;

    fn next(&mut self) -> Option<AlgebraElement> {
        if self.done {
            return None;
        }
        let sys = self.system;
        let terms = self
            .morphisms
            .iter()
            .zip(&self.counter)
            .filter(|&(&s, &c)| c != sys.coeff_ring(s).zero())
            .map(|(&s, &c)| (s, c))
            .collect();
        let item = AlgebraElement {
            system: sys.id(),
            terms,
        };
        self.done = true;
        for i in (0..self.morphisms.len()).rev() {
            self.counter[i] += 1;
            if self.counter[i] < sys.coeff_ring(self.morphisms[i]).size() {
                self.done = false;
                break;
            }
            self.counter[i] = 0;
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::category::FiniteCategory;
    use crate::ring::{FiniteRing, RingHom};

    fn d2_z2() -> CrossedSystem {
        CrossedSystem::category_algebra(
            Arc::new(FiniteCategory::pair_groupoid(2).unwrap()),
            FiniteRing::cyclic(2).unwrap(),
        )
        .unwrap()
    }

    fn z4_c2_twisted(alpha: Code) -> CrossedSystem {
        CrossedSystem::twisted(
            Arc::new(FiniteCategory::cyclic_group(2).unwrap()),
            FiniteRing::cyclic(4).unwrap(),
            &[((Mor(1), Mor(1)), alpha)],
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

    #[test]
    fn basis_elements() {
        let s = d2_z2();
        let z2 = s.ring(Obj(0));
        let u12 = s.basis_element(Mor(1), &z2.element(1).unwrap()).unwrap();
        assert_eq!(s.render(&u12), "u_(1,2)");
        assert!(s.basis_element(Mor(1), &z2.element(0).unwrap()).unwrap().is_zero());
        let z4 = FiniteRing::cyclic(4).unwrap();
        assert!(matches!(
            s.basis_element(Mor(1), &z4.element(1).unwrap()),
            Err(AlgebraError::Placement { .. })
        ));
        let t = z4_c2_twisted(3);
        assert_eq!(t.render(&t.basis(Mor(1), 3).unwrap()), "3 u_s");
    }

    #[test]
    fn addition() {
        let g = CrossedSystem::category_algebra(
            Arc::new(FiniteCategory::cyclic_group(2).unwrap()),
            FiniteRing::cyclic(2).unwrap(),
        )
        .unwrap();
        let ue = g.unit_basis(Mor(0));
        let us = g.unit_basis(Mor(1));
        assert!(g.add(&ue, &ue).unwrap().is_zero());
        let sum = g.add(&ue, &us).unwrap();
        assert_eq!(sum.support().collect::<Vec<_>>(), vec![Mor(0), Mor(1)]);
        assert_eq!(g.add(&sum, &g.zero_element()).unwrap(), sum);
        let other = d2_z2();
        assert_eq!(other.add(&ue, &ue), Err(AlgebraError::SystemMismatch));
    }

    #[test]
    fn multiplication() {
        let s = d2_z2();
        let (u11, u12, u21) = (s.unit_basis(Mor(0)), s.unit_basis(Mor(1)), s.unit_basis(Mor(2)));
        assert_eq!(s.mul(&u12, &u21).unwrap(), u11);
        assert!(s.mul(&u12, &u12).unwrap().is_zero());
        let t = z4_c2_twisted(3);
        let us = t.unit_basis(Mor(1));
        assert_eq!(t.mul(&us, &us).unwrap(), t.basis(Mor(0), 3).unwrap());
    }

    #[test]
    fn identity_elements() {
        let s = d2_z2();
        assert_eq!(s.render(&s.identity_element()), "u_(1,1) + u_(2,2)");
        assert!(s.unit_law_witness().is_none());
        let u = CrossedSystem::category_algebra(
            Arc::new(
                FiniteCategory::disjoint_union(&[
                    FiniteCategory::cyclic_group(2).unwrap(),
                    FiniteCategory::cyclic_group(3).unwrap(),
                ])
                .unwrap(),
            ),
            FiniteRing::cyclic(3).unwrap(),
        )
        .unwrap();
        assert_eq!(u.identity_element().terms(), &[(Mor(0), 1), (Mor(2), 1)]);
    }

    #[test]
    fn module_actions() {
        let s = d2_z2();
        let one = s.ring(Obj(0)).element(1).unwrap();
        let u12 = s.unit_basis(Mor(1));
        let u21 = s.unit_basis(Mor(2));
        assert_eq!(s.act(Obj(0), &one, &u12, Side::Left).unwrap(), u12);
        assert!(s.act(Obj(0), &one, &u21, Side::Left).unwrap().is_zero());
        let sw = swap();
        let a = sw.ring(Obj(0)).element(2).unwrap(); // (1,0)
        let us = sw.unit_basis(Mor(1));
        let got = sw.act(Obj(0), &a, &us, Side::Right).unwrap();
        assert_eq!(sw.render(&got), "(0,1) u_s");
    }

    #[test]
    fn strong_grading() {
        assert!(swap().is_strongly_graded());
        assert!(z4_c2_twisted(3).is_strongly_graded());
        assert!(!z4_c2_twisted(2).is_strongly_graded());
    }

    #[test]
    fn enumeration_sizes() {
        let g = CrossedSystem::category_algebra(
            Arc::new(FiniteCategory::cyclic_group(2).unwrap()),
            FiniteRing::cyclic(2).unwrap(),
        )
        .unwrap();
        assert_eq!(g.enumerate_all(100).unwrap().count(), 4);
        let s = d2_z2();
        let all: Vec<_> = s.enumerate_all(100).unwrap().collect();
        assert_eq!(all.len(), 16);
        let distinct: std::collections::BTreeSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 16);
        let g2 = s.category().clone();
        assert_eq!(s.enumerate(|m| g2.is_loop(m), 100).unwrap().count(), 4);
        assert_eq!(
            s.enumerate_all(15).err(),
            Some(AlgebraError::CapExceeded {
                cardinality: 16,
                cap: 15
            })
        );
    }

    #[test]
    fn associativity_checks() {
        let cap = DEFAULT_ENUMERATION_CAP;
        assert!(swap().check_associativity(CheckMode::Exhaustive { cap }).unwrap().passed());
        assert!(z4_c2_twisted(3)
            .check_associativity(CheckMode::Exhaustive { cap })
            .unwrap()
            .passed());
        let bad = swap().with_alpha(Mor(1), Mor(1), 2).unwrap();
        let report = bad.check_associativity(CheckMode::Exhaustive { cap }).unwrap();
        let (x, y, z) = report.witness.expect("corrupted cocycle breaks associativity");
        let l = bad.mul(&bad.mul(&x, &y).unwrap(), &z).unwrap();
        let r = bad.mul(&x, &bad.mul(&y, &z).unwrap()).unwrap();
        assert_ne!(l, r);
        assert!(bad
            .check_associativity(CheckMode::Sample { count: 500, seed: 7 })
            .unwrap()
            .witness
            .is_some());
    }
}
