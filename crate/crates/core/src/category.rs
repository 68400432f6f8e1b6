//! Finite small categories given by explicit composition tables.
//!
//! Composition follows the orientation `st` defined exactly when
//! `d(s) = c(t)`, with `c(st) = c(s)` and `d(st) = d(t)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

/// Default upper bound on the number of morphisms.
pub const DEFAULT_MORPHISM_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Obj(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Mor(pub usize);

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("unknown object {0}")]
    UnknownObject(usize),
    #[error("unknown morphism {0}")]
    UnknownMorphism(usize),
    #[error("{count} morphisms exceed the cap {cap}")]
    MorphismCap { count: usize, cap: usize },
    #[error("size parameter must be at least 1")]
    ZeroSize,
    #[error("declared identity {0} of object {1} is not a loop at it")]
    IdentityNotLoop(Mor, Obj),
    #[error("composite given for non-composable pair ({0}, {1})")]
    NotComposable(Mor, Mor),
    #[error("no composite given for composable pair ({0}, {1})")]
    MissingComposite(Mor, Mor),
    #[error("conflicting composites for pair ({0}, {1})")]
    DuplicateComposite(Mor, Mor),
    #[error("composite of ({0}, {1}) has the wrong domain or codomain")]
    CompositeEndpoints(Mor, Mor),
    #[error("identity law fails for morphism {0}")]
    IdentityLaw(Mor),
    #[error("associativity fails on ({0}, {1}, {2})")]
    Associativity(Mor, Mor, Mor),
    #[error("monoid table has no two-sided identity")]
    NoIdentity,
    #[error("class containing {0} and {1} crosses hom-sets")]
    ClassCrossesHomSets(Mor, Mor),
    #[error("morphism {0} appears in more than one class")]
    OverlappingClasses(Mor),
    #[error("congruence is not compatible: {s}~{s2} and {t}~{t2} but composites are unrelated")]
    Incompatible { s: Mor, s2: Mor, t: Mor, t2: Mor },
    #[error("categories differ")]
    CategoryMismatch,
    #[error("functor does not preserve {0}")]
    InvalidFunctor(String),
    #[error("functor is not the identity on objects")]
    NotIdentityOnObjects,
    #[error("congruence is not contained in the kernel: {0} ~ {1} but their images differ")]
    NotContained(Mor, Mor),
    #[error("category is not a groupoid")]
    NotGroupoid,
    #[error("invalid normal subgroupoid: {0}")]
    InvalidNormal(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismInfo {
    pub name: String,
    pub dom: Obj,
    pub cod: Obj,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<MorphismInfo>,
    identities: Vec<Mor>,
    compose: Vec<Option<Mor>>,
}

impl FiniteCategory {
    /// Builds and exhaustively validates a category from explicit data.
    ///
    /// `composites` must contain exactly one triple `(s, t, st)` for every
    /// pair with `d(s) = c(t)` and none for other pairs.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<MorphismInfo>,
        identities: Vec<Mor>,
        composites: &[(Mor, Mor, Mor)],
        cap: usize,
    ) -> Result<Self, CategoryError> {
        let m = morphisms.len();
        if m > cap {
            return Err(CategoryError::MorphismCap { count: m, cap });
        }
        for info in &morphisms {
            for o in [info.dom, info.cod] {
                if o.0 >= objects.len() {
                    return Err(CategoryError::UnknownObject(o.0));
                }
            }
        }
        if identities.len() != objects.len() {
            return Err(CategoryError::UnknownObject(identities.len()));
        }
        for (e, &id) in identities.iter().enumerate() {
            let info = morphisms
                .get(id.0)
                .ok_or(CategoryError::UnknownMorphism(id.0))?;
            if info.dom != Obj(e) || info.cod != Obj(e) {
                return Err(CategoryError::IdentityNotLoop(id, Obj(e)));
            }
        }
        let mut compose = vec![None; m * m];
        for &(s, t, st) in composites {
            for x in [s, t, st] {
                if x.0 >= m {
                    return Err(CategoryError::UnknownMorphism(x.0));
                }
            }
            if morphisms[s.0].dom != morphisms[t.0].cod {
                return Err(CategoryError::NotComposable(s, t));
            }
            let slot = &mut compose[s.0 * m + t.0];
            match slot {
                Some(prev) if *prev != st => return Err(CategoryError::DuplicateComposite(s, t)),
                _ => *slot = Some(st),
            }
        }
        let cat = FiniteCategory {
            objects,
            morphisms,
            identities,
            compose,
        };
        cat.check_laws()?;
        Ok(cat)
    }

    fn check_laws(&self) -> Result<(), CategoryError> {
        for s in self.morphism_ids() {
            for t in self.morphism_ids() {
                let composable = self.dom(s) == self.cod(t);
                match (composable, self.compose(s, t)) {
                    (true, None) => return Err(CategoryError::MissingComposite(s, t)),
                    (true, Some(st)) if self.cod(st) != self.cod(s) || self.dom(st) != self.dom(t) => {
                        return Err(CategoryError::CompositeEndpoints(s, t));
                    }
                    _ => {}
                }
            }
        }
        for s in self.morphism_ids() {
            if self.compose(s, self.identity(self.dom(s))) != Some(s)
                || self.compose(self.identity(self.cod(s)), s) != Some(s)
            {
                return Err(CategoryError::IdentityLaw(s));
            }
        }
        for (s, t, r) in self.composable_triples() {
            let left = self.compose(self.compose(s, t).unwrap(), r);
            let right = self.compose(s, self.compose(t, r).unwrap());
            if left != right {
                return Err(CategoryError::Associativity(s, t, r));
            }
        }
        Ok(())
    }

    /// A one-object category from a monoid multiplication table, where
    /// `table[i][j]` is the product `ij`.
    pub fn monoid(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, CategoryError> {
        let n = names.len();
        if n == 0 {
            return Err(CategoryError::ZeroSize);
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(CategoryError::UnknownMorphism(table.len()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(CategoryError::NoIdentity)?;
        let morphisms = names
            .into_iter()
            .map(|name| MorphismInfo {
                name,
                dom: Obj(0),
                cod: Obj(0),
            })
            .collect();
        let mut triples = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            for (j, &k) in row.iter().enumerate() {
                triples.push((Mor(i), Mor(j), Mor(k)));
            }
        }
        Self::new(
            vec!["*".into()],
            morphisms,
            vec![Mor(identity)],
            &triples,
            DEFAULT_MORPHISM_CAP,
        )
    }

    /// The cyclic group `C_n` as a one-object category; morphism `i` is `s^i`.
    pub fn cyclic_group(n: usize) -> Result<Self, CategoryError> {
        if n == 0 {
            return Err(CategoryError::ZeroSize);
        }
        let names = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "s".to_string(),
                _ => format!("s^{i}"),
            })
            .collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::monoid(names, table)
    }

    /// The symmetric group on three letters, permutations in lexicographic
    /// order, composed as functions (`(pq)(i) = p(q(i))`).
    pub fn symmetric_group_3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        let names = perms
            .iter()
            .map(|p| format!("[{}{}{}]", p[0] + 1, p[1] + 1, p[2] + 1))
            .collect();
        Self::monoid(names, table).expect("S3 is a group")
    }

    /// Objects `1..n`, morphisms all pairs `(i,j)` from `j` to `i`, with
    /// `(i,j)(j,l) = (i,l)`. Morphisms are ordered row-major.
    pub fn pair_groupoid(n: usize) -> Result<Self, CategoryError> {
        if n == 0 {
            return Err(CategoryError::ZeroSize);
        }
        let idx = |i: usize, j: usize| Mor(i * n + j);
        let mut morphisms = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                morphisms.push(MorphismInfo {
                    name: format!("({},{})", i + 1, j + 1),
                    dom: Obj(j),
                    cod: Obj(i),
                });
            }
        }
        let mut triples = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    triples.push((idx(i, j), idx(j, l), idx(i, l)));
                }
            }
        }
        Self::new(
            (1..=n).map(|i| i.to_string()).collect(),
            morphisms,
            (0..n).map(|i| idx(i, i)).collect(),
            &triples,
            DEFAULT_MORPHISM_CAP.max(n * n),
        )
    }

    /// `n` objects with identity morphisms only.
    pub fn discrete(n: usize) -> Result<Self, CategoryError> {
        if n == 0 {
            return Err(CategoryError::ZeroSize);
        }
        let morphisms = (0..n)
            .map(|i| MorphismInfo {
                name: format!("id{}", i + 1),
                dom: Obj(i),
                cod: Obj(i),
            })
            .collect();
        let triples: Vec<_> = (0..n).map(|i| (Mor(i), Mor(i), Mor(i))).collect();
        Self::new(
            (1..=n).map(|i| i.to_string()).collect(),
            morphisms,
            (0..n).map(Mor).collect(),
            &triples,
            DEFAULT_MORPHISM_CAP,
        )
    }

    /// Disjoint union; names from part `k` (1-based) get the suffix `_k`.
    pub fn disjoint_union(parts: &[FiniteCategory]) -> Result<Self, CategoryError> {
        Self::disjoint_union_with_cap(parts, DEFAULT_MORPHISM_CAP)
    }

    pub fn disjoint_union_with_cap(
        parts: &[FiniteCategory],
        cap: usize,
    ) -> Result<Self, CategoryError> {
        if parts.is_empty() {
            return Err(CategoryError::ZeroSize);
        }
        let mut objects = Vec::new();
        let mut morphisms = Vec::new();
        let mut identities = Vec::new();
        let mut triples = Vec::new();
        for (k, part) in parts.iter().enumerate() {
            let (o_off, m_off) = (objects.len(), morphisms.len());
            objects.extend(part.objects.iter().map(|o| format!("{o}_{}", k + 1)));
            morphisms.extend(part.morphisms.iter().map(|info| MorphismInfo {
                name: format!("{}_{}", info.name, k + 1),
                dom: Obj(info.dom.0 + o_off),
                cod: Obj(info.cod.0 + o_off),
            }));
            identities.extend(part.identities.iter().map(|m| Mor(m.0 + m_off)));
            for (s, t) in part.composable_pairs() {
                let st = part.compose(s, t).unwrap();
                triples.push((Mor(s.0 + m_off), Mor(t.0 + m_off), Mor(st.0 + m_off)));
            }
        }
        Self::new(objects, morphisms, identities, &triples, cap)
    }

    /// Product category with componentwise composition; pairs are ordered
    /// with the first factor most significant.
    pub fn product(left: &FiniteCategory, right: &FiniteCategory) -> Result<Self, CategoryError> {
        let (lo, ro) = (left.object_count(), right.object_count());
        let (lm, rm) = (left.morphism_count(), right.morphism_count());
        let obj = |a: Obj, b: Obj| Obj(a.0 * ro + b.0);
        let mor = |a: Mor, b: Mor| Mor(a.0 * rm + b.0);
        let mut objects = Vec::with_capacity(lo * ro);
        for a in &left.objects {
            for b in &right.objects {
                objects.push(format!("({a},{b})"));
            }
        }
        let mut morphisms = Vec::with_capacity(lm * rm);
        for a in &left.morphisms {
            for b in &right.morphisms {
                morphisms.push(MorphismInfo {
                    name: format!("({},{})", a.name, b.name),
                    dom: obj(a.dom, b.dom),
                    cod: obj(a.cod, b.cod),
                });
            }
        }
        let mut identities = Vec::with_capacity(lo * ro);
        for a in left.object_ids() {
            for b in right.object_ids() {
                identities.push(mor(left.identity(a), right.identity(b)));
            }
        }
        let mut triples = Vec::new();
        for (s1, t1) in left.composable_pairs() {
            for (s2, t2) in right.composable_pairs() {
                triples.push((
                    mor(s1, s2),
                    mor(t1, t2),
                    mor(left.compose(s1, t1).unwrap(), right.compose(s2, t2).unwrap()),
                ));
            }
        }
        Self::new(objects, morphisms, identities, &triples, DEFAULT_MORPHISM_CAP)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_ids(&self) -> impl Iterator<Item = Obj> {
        (0..self.objects.len()).map(Obj)
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = Mor> {
        (0..self.morphisms.len()).map(Mor)
    }

    pub fn object_name(&self, e: Obj) -> &str {
        &self.objects[e.0]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, s: Mor) -> &MorphismInfo {
        &self.morphisms[s.0]
    }

    pub fn morphisms(&self) -> &[MorphismInfo] {
        &self.morphisms
    }

    pub fn identities(&self) -> &[Mor] {
        &self.identities
    }

    pub fn name(&self, s: Mor) -> &str {
        &self.morphisms[s.0].name
    }

    #[inline]
    pub fn dom(&self, s: Mor) -> Obj {
        self.morphisms[s.0].dom
    }

    #[inline]
    pub fn cod(&self, s: Mor) -> Obj {
        self.morphisms[s.0].cod
    }

    #[inline]
    pub fn identity(&self, e: Obj) -> Mor {
        self.identities[e.0]
    }

    pub fn is_identity(&self, s: Mor) -> bool {
        self.identities[self.dom(s).0] == s
    }

    #[inline]
    pub fn is_loop(&self, s: Mor) -> bool {
        self.dom(s) == self.cod(s)
    }

    /// The composite `st`, defined exactly when `d(s) = c(t)`.
    #[inline]
    pub fn compose(&self, s: Mor, t: Mor) -> Option<Mor> {
        self.compose[s.0 * self.morphisms.len() + t.0]
    }

    pub fn check_object(&self, e: Obj) -> Result<(), CategoryError> {
        if e.0 < self.objects.len() {
            Ok(())
        } else {
            Err(CategoryError::UnknownObject(e.0))
        }
    }

    pub fn check_morphism(&self, s: Mor) -> Result<(), CategoryError> {
        if s.0 < self.morphisms.len() {
            Ok(())
        } else {
            Err(CategoryError::UnknownMorphism(s.0))
        }
    }

    /// All `(s, t)` with `d(s) = c(t)`, ordered by `s` then `t`.
    pub fn composable_pairs(&self) -> Vec<(Mor, Mor)> {
        self.morphism_ids()
            .flat_map(|s| {
                self.morphism_ids()
                    .filter(move |&t| self.dom(s) == self.cod(t))
                    .map(move |t| (s, t))
            })
            .collect()
    }

    pub fn composable_triples(&self) -> Vec<(Mor, Mor, Mor)> {
        let pairs = self.composable_pairs();
        let mut out = Vec::new();
        for &(s, t) in &pairs {
            for r in self.morphism_ids() {
                if self.dom(t) == self.cod(r) {
                    out.push((s, t, r));
                }
            }
        }
        out
    }

    /// Morphisms `s` with `c(s) = f` and `d(s) = e`.
    pub fn hom_set(&self, f: Obj, e: Obj) -> Result<Vec<Mor>, CategoryError> {
        self.check_object(f)?;
        self.check_object(e)?;
        Ok(self
            .morphism_ids()
            .filter(|&s| self.cod(s) == f && self.dom(s) == e)
            .collect())
    }

    /// The loop monoid at `e`.
    pub fn loops_at(&self, e: Obj) -> Vec<Mor> {
        self.morphism_ids()
            .filter(|&s| self.dom(s) == e && self.cod(s) == e)
            .collect()
    }

    pub fn loops(&self) -> Vec<Mor> {
        self.morphism_ids().filter(|&s| self.is_loop(s)).collect()
    }

    /// Inverse table when every morphism has a two-sided inverse.
    pub fn inverses(&self) -> Option<Vec<Mor>> {
        self.morphism_ids()
            .map(|s| {
                self.hom_set(self.dom(s), self.cod(s))
                    .ok()?
                    .into_iter()
                    .find(|&t| {
                        self.compose(s, t) == Some(self.identity(self.cod(s)))
                            && self.compose(t, s) == Some(self.identity(self.dom(s)))
                    })
            })
            .collect()
    }

    pub fn is_groupoid(&self) -> bool {
        self.inverses().is_some()
    }

    pub fn is_cancellable(&self) -> bool {
        let pairs = self.composable_pairs();
        for (i, &(s1, t1)) in pairs.iter().enumerate() {
            let c1 = self.compose(s1, t1);
            for &(s2, t2) in &pairs[i + 1..] {
                if c1 != self.compose(s2, t2) {
                    continue;
                }
                if (s1 == s2 && t1 != t2) || (t1 == t2 && s1 != s2) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_loop_monoid_abelian(&self, e: Obj) -> bool {
        let loops = self.loops_at(e);
        loops
            .iter()
            .all(|&s| loops.iter().all(|&t| self.compose(s, t) == self.compose(t, s)))
    }

    /// Every morphism is a loop and every loop monoid is commutative.
    pub fn is_disjoint_union_of_abelian_monoids(&self) -> bool {
        self.morphism_ids().all(|s| self.is_loop(s))
            && self.object_ids().all(|e| self.is_loop_monoid_abelian(e))
    }

    /// Every morphism is a loop and every loop monoid is an abelian group.
    pub fn is_disjoint_union_of_abelian_groups(&self) -> bool {
        self.is_disjoint_union_of_abelian_monoids() && self.is_groupoid()
    }

    /// The loop monoid at `e` as a one-object category, together with the
    /// embedding of its morphisms into `self`.
    pub fn loop_category(&self, e: Obj) -> Result<(FiniteCategory, Vec<Mor>), CategoryError> {
        self.check_object(e)?;
        let loops = self.loops_at(e);
        let local: BTreeMap<Mor, Mor> = loops
            .iter()
            .enumerate()
            .map(|(i, &s)| (s, Mor(i)))
            .collect();
        let morphisms = loops
            .iter()
            .map(|&s| MorphismInfo {
                name: self.name(s).to_string(),
                dom: Obj(0),
                cod: Obj(0),
            })
            .collect();
        let mut triples = Vec::new();
        for &s in &loops {
            for &t in &loops {
                let st = self.compose(s, t).unwrap();
                triples.push((local[&s], local[&t], local[&st]));
            }
        }
        let cat = FiniteCategory::new(
            vec![self.objects[e.0].clone()],
            morphisms,
            vec![local[&self.identity(e)]],
            &triples,
            self.morphism_count().max(DEFAULT_MORPHISM_CAP),
        )?;
        Ok((cat, loops))
    }

    /// Composition table as `(s, t, st)` triples in canonical order.
    pub fn composition_triples(&self) -> Vec<(Mor, Mor, Mor)> {
        self.composable_pairs()
            .into_iter()
            .map(|(s, t)| (s, t, self.compose(s, t).unwrap()))
            .collect()
    }
}

/// A congruence: a partition of each hom-set, compatible with composition.
///
/// Classes are stored globally, each one inside a single hom-set, ordered
/// by their least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    category: Arc<FiniteCategory>,
    class_of: Vec<usize>,
    classes: Vec<Vec<Mor>>,
}

impl Congruence {
    /// Builds a congruence from listed classes; unlisted morphisms form
    /// singleton classes. Compatibility is checked exhaustively.
    pub fn from_classes(
        category: Arc<FiniteCategory>,
        classes: &[Vec<Mor>],
    ) -> Result<Self, CategoryError> {
        let m = category.morphism_count();
        let mut label: Vec<Option<usize>> = vec![None; m];
        for (k, class) in classes.iter().enumerate() {
            for &s in class {
                category.check_morphism(s)?;
                if label[s.0].is_some() {
                    return Err(CategoryError::OverlappingClasses(s));
                }
                label[s.0] = Some(k);
            }
        }
        let mut next = classes.len();
        let labels: Vec<usize> = label
            .into_iter()
            .map(|l| {
                l.unwrap_or_else(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        Self::from_labels(category, &labels)
    }

    /// Morphisms with equal labels share a class.
    pub fn from_labels(
        category: Arc<FiniteCategory>,
        labels: &[usize],
    ) -> Result<Self, CategoryError> {
        Self::from_key(category, |s| labels[s.0])
    }

    /// Morphisms in the same hom-set with equal keys share a class.
    pub fn from_key<K: Ord>(
        category: Arc<FiniteCategory>,
        key: impl Fn(Mor) -> K,
    ) -> Result<Self, CategoryError> {
        let mut groups: BTreeMap<K, Vec<Mor>> = BTreeMap::new();
        for s in category.morphism_ids() {
            groups.entry(key(s)).or_default().push(s);
        }
        let mut classes: Vec<Vec<Mor>> = Vec::new();
        for group in groups.into_values() {
            let first = group[0];
            if let Some(&bad) = group.iter().find(|&&s| {
                category.dom(s) != category.dom(first) || category.cod(s) != category.cod(first)
            }) {
                return Err(CategoryError::ClassCrossesHomSets(first, bad));
            }
            classes.push(group);
        }
        classes.sort();
        let mut class_of = vec![0; category.morphism_count()];
        for (k, class) in classes.iter().enumerate() {
            for s in class {
                class_of[s.0] = k;
            }
        }
        let cong = Congruence {
            category,
            class_of,
            classes,
        };
        cong.check_compatible()?;
        Ok(cong)
    }

    /// Singleton classes.
    pub fn trivial(category: Arc<FiniteCategory>) -> Self {
        Self::from_key(category, |s| s.0).expect("the discrete partition is a congruence")
    }

    /// Each hom-set is a single class.
    pub fn total(category: Arc<FiniteCategory>) -> Self {
        let c = category.clone();
        Self::from_key(category, move |s| (c.cod(s), c.dom(s)))
            .expect("the total partition is a congruence")
    }

    fn check_compatible(&self) -> Result<(), CategoryError> {
        let g = &self.category;
        for (s, t) in g.composable_pairs() {
            let st = g.compose(s, t).unwrap();
            for &s2 in &self.classes[self.class_of[s.0]] {
                for &t2 in &self.classes[self.class_of[t.0]] {
                    let s2t2 = g.compose(s2, t2).expect("related morphisms share endpoints");
                    if self.class_of[st.0] != self.class_of[s2t2.0] {
                        return Err(CategoryError::Incompatible { s, s2, t, t2 });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    pub fn classes(&self) -> &[Vec<Mor>] {
        &self.classes
    }

    pub fn class_index(&self, s: Mor) -> usize {
        self.class_of[s.0]
    }

    pub fn class_of(&self, s: Mor) -> &[Mor] {
        &self.classes[self.class_of[s.0]]
    }

    pub fn relates(&self, s: Mor, t: Mor) -> bool {
        self.class_of[s.0] == self.class_of[t.0]
    }

    /// `None` when `self ⊆ other`, otherwise a related pair that `other`
    /// separates.
    pub fn containment_witness(&self, other: &Congruence) -> Option<(Mor, Mor)> {
        for class in &self.classes {
            for &t in &class[1..] {
                if !other.relates(class[0], t) {
                    return Some((class[0], t));
                }
            }
        }
        None
    }

    /// The quotient category `G/R` and the projection functor.
    pub fn quotient(&self) -> Result<(Arc<FiniteCategory>, CategoryFunctor), CategoryError> {
        let g = &self.category;
        let morphisms = self
            .classes
            .iter()
            .map(|class| MorphismInfo {
                name: format!("[{}]", g.name(class[0])),
                dom: g.dom(class[0]),
                cod: g.cod(class[0]),
            })
            .collect();
        let identities = g.identities.iter().map(|&id| Mor(self.class_of[id.0])).collect();
        let mut triples: BTreeSet<(Mor, Mor, Mor)> = BTreeSet::new();
        for (s, t) in g.composable_pairs() {
            let st = g.compose(s, t).unwrap();
            triples.insert((
                Mor(self.class_of[s.0]),
                Mor(self.class_of[t.0]),
                Mor(self.class_of[st.0]),
            ));
        }
        let triples: Vec<_> = triples.into_iter().collect();
        let quotient = Arc::new(FiniteCategory::new(
            g.objects.clone(),
            morphisms,
            identities,
            &triples,
            g.morphism_count().max(DEFAULT_MORPHISM_CAP),
        )?);
        let projection = CategoryFunctor::new(
            g.clone(),
            quotient.clone(),
            g.object_ids().collect(),
            self.class_of.iter().map(|&k| Mor(k)).collect(),
        )?;
        Ok((quotient, projection))
    }
}

/// A functor between finite categories, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryFunctor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    object_map: Vec<Obj>,
    morphism_map: Vec<Mor>,
}

impl CategoryFunctor {
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        object_map: Vec<Obj>,
        morphism_map: Vec<Mor>,
    ) -> Result<Self, CategoryError> {
        if object_map.len() != source.object_count() {
            return Err(CategoryError::InvalidFunctor("object map length".into()));
        }
        if morphism_map.len() != source.morphism_count() {
            return Err(CategoryError::InvalidFunctor("morphism map length".into()));
        }
        for &o in &object_map {
            target.check_object(o)?;
        }
        for &s in &morphism_map {
            target.check_morphism(s)?;
        }
        for s in source.morphism_ids() {
            let fs = morphism_map[s.0];
            if target.dom(fs) != object_map[source.dom(s).0]
                || target.cod(fs) != object_map[source.cod(s).0]
            {
                return Err(CategoryError::InvalidFunctor(format!(
                    "endpoints of {}",
                    source.name(s)
                )));
            }
        }
        for e in source.object_ids() {
            if morphism_map[source.identity(e).0] != target.identity(object_map[e.0]) {
                return Err(CategoryError::InvalidFunctor(format!(
                    "identity of {}",
                    source.object_name(e)
                )));
            }
        }
        for (s, t) in source.composable_pairs() {
            let st = source.compose(s, t).unwrap();
            if target.compose(morphism_map[s.0], morphism_map[t.0]) != Some(morphism_map[st.0]) {
                return Err(CategoryError::InvalidFunctor(format!(
                    "composite of ({}, {})",
                    source.name(s),
                    source.name(t)
                )));
            }
        }
        Ok(CategoryFunctor {
            source,
            target,
            object_map,
            morphism_map,
        })
    }

    pub fn identity(category: Arc<FiniteCategory>) -> Self {
        let objects = category.object_ids().collect();
        let morphisms = category.morphism_ids().collect();
        CategoryFunctor {
            source: category.clone(),
            target: category,
            object_map: objects,
            morphism_map: morphisms,
        }
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn object_map(&self) -> &[Obj] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[Mor] {
        &self.morphism_map
    }

    pub fn on_object(&self, e: Obj) -> Obj {
        self.object_map[e.0]
    }

    pub fn on_morphism(&self, s: Mor) -> Mor {
        self.morphism_map[s.0]
    }

    /// Identity on objects in the strict sense: same object count and the
    /// identity map on object indices.
    pub fn is_identity_on_objects(&self) -> bool {
        self.source.object_count() == self.target.object_count()
            && self.object_map.iter().enumerate().all(|(i, o)| o.0 == i)
    }

    pub fn is_bijective(&self) -> bool {
        let objs: BTreeSet<_> = self.object_map.iter().collect();
        let mors: BTreeSet<_> = self.morphism_map.iter().collect();
        objs.len() == self.target.object_count()
            && self.object_map.len() == objs.len()
            && mors.len() == self.target.morphism_count()
            && self.morphism_map.len() == mors.len()
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &CategoryFunctor) -> Result<CategoryFunctor, CategoryError> {
        if inner.target != self.source {
            return Err(CategoryError::CategoryMismatch);
        }
        CategoryFunctor::new(
            inner.source.clone(),
            self.target.clone(),
            inner.object_map.iter().map(|o| self.object_map[o.0]).collect(),
            inner.morphism_map.iter().map(|s| self.morphism_map[s.0]).collect(),
        )
    }

    /// `ker(F)`: same endpoints and equal images.
    pub fn kernel(&self) -> Result<Congruence, CategoryError> {
        if !self.is_identity_on_objects() {
            return Err(CategoryError::NotIdentityOnObjects);
        }
        let src = self.source.clone();
        Congruence::from_key(self.source.clone(), |s| {
            (src.cod(s), src.dom(s), self.morphism_map[s.0])
        })
    }
}

/// The canonical factorization `F = P_F ∘ N ∘ Q_R`.
#[derive(Debug, Clone)]
pub struct CanonicalFactorization {
    /// `Q_R : G -> G/R`
    pub quotient: CategoryFunctor,
    /// `N : G/R -> G/ker(F)`
    pub comparison: CategoryFunctor,
    /// `P_F : G/ker(F) -> H`
    pub induced: CategoryFunctor,
    /// `Q_ker(F) : G -> G/ker(F)`
    pub kernel_quotient: CategoryFunctor,
}

pub fn canonical_factorization(
    functor: &CategoryFunctor,
    congruence: &Congruence,
) -> Result<CanonicalFactorization, CategoryError> {
    if functor.source() != congruence.category() {
        return Err(CategoryError::CategoryMismatch);
    }
    let kernel = functor.kernel()?;
    if let Some((s, t)) = congruence.containment_witness(&kernel) {
        return Err(CategoryError::NotContained(s, t));
    }
    let (g_r, q_r) = congruence.quotient()?;
    let (g_k, q_k) = kernel.quotient()?;
    let g = functor.source();
    let comparison = CategoryFunctor::new(
        g_r.clone(),
        g_k.clone(),
        g_r.object_ids().collect(),
        congruence
            .classes()
            .iter()
            .map(|class| Mor(kernel.class_index(class[0])))
            .collect(),
    )?;
    let induced = CategoryFunctor::new(
        g_k,
        functor.target().clone(),
        functor.object_map().to_vec(),
        kernel
            .classes()
            .iter()
            .map(|class| functor.on_morphism(class[0]))
            .collect(),
    )?;
    let through = comparison.after(&q_r)?;
    let full = induced.after(&through)?;
    for s in g.morphism_ids() {
        if through.on_morphism(s) != q_k.on_morphism(s)
            || induced.on_morphism(q_k.on_morphism(s)) != functor.on_morphism(s)
            || full.on_morphism(s) != functor.on_morphism(s)
        {
            return Err(CategoryError::InvalidFunctor(format!(
                "factorization at {}",
                g.name(s)
            )));
        }
    }
    Ok(CanonicalFactorization {
        quotient: q_r,
        comparison,
        induced,
        kernel_quotient: q_k,
    })
}

/// Loop subgroups `N_e ⊆ G_e` with `s N_{d(s)} = N_{c(s)} s` for all `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSubgroupoid {
    groupoid: Arc<FiniteCategory>,
    subgroups: Vec<Vec<Mor>>,
}

impl NormalSubgroupoid {
    pub fn new(
        groupoid: Arc<FiniteCategory>,
        subgroups: Vec<Vec<Mor>>,
    ) -> Result<Self, CategoryError> {
        let inverses = groupoid.inverses().ok_or(CategoryError::NotGroupoid)?;
        if subgroups.len() != groupoid.object_count() {
            return Err(CategoryError::InvalidNormal(format!(
                "{} subgroups for {} objects",
                subgroups.len(),
                groupoid.object_count()
            )));
        }
        let mut sets: Vec<BTreeSet<Mor>> = Vec::with_capacity(subgroups.len());
        for (e, subgroup) in subgroups.iter().enumerate() {
            let e = Obj(e);
            let set: BTreeSet<Mor> = subgroup.iter().copied().collect();
            for &n in &set {
                groupoid.check_morphism(n)?;
                if groupoid.dom(n) != e || groupoid.cod(n) != e {
                    return Err(CategoryError::InvalidNormal(format!(
                        "{} is not a loop at {}",
                        groupoid.name(n),
                        groupoid.object_name(e)
                    )));
                }
                if !set.contains(&inverses[n.0]) {
                    return Err(CategoryError::InvalidNormal(format!(
                        "inverse of {} missing",
                        groupoid.name(n)
                    )));
                }
                for &m in &set {
                    if !set.contains(&groupoid.compose(n, m).unwrap()) {
                        return Err(CategoryError::InvalidNormal(format!(
                            "not closed under {} {}",
                            groupoid.name(n),
                            groupoid.name(m)
                        )));
                    }
                }
            }
            if !set.contains(&groupoid.identity(e)) {
                return Err(CategoryError::InvalidNormal(format!(
                    "identity missing at {}",
                    groupoid.object_name(e)
                )));
            }
            sets.push(set);
        }
        for s in groupoid.morphism_ids() {
            let left: BTreeSet<Mor> = sets[groupoid.dom(s).0]
                .iter()
                .map(|&n| groupoid.compose(s, n).unwrap())
                .collect();
            let right: BTreeSet<Mor> = sets[groupoid.cod(s).0]
                .iter()
                .map(|&n| groupoid.compose(n, s).unwrap())
                .collect();
            if left != right {
                return Err(CategoryError::InvalidNormal(format!(
                    "conjugation stability fails at {}",
                    groupoid.name(s)
                )));
            }
        }
        Ok(NormalSubgroupoid {
            groupoid,
            subgroups: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn trivial(groupoid: Arc<FiniteCategory>) -> Result<Self, CategoryError> {
        let subgroups = groupoid.identities().iter().map(|&id| vec![id]).collect();
        Self::new(groupoid, subgroups)
    }

    pub fn groupoid(&self) -> &Arc<FiniteCategory> {
        &self.groupoid
    }

    pub fn subgroup(&self, e: Obj) -> &[Mor] {
        &self.subgroups[e.0]
    }

    pub fn subgroups(&self) -> &[Vec<Mor>] {
        &self.subgroups
    }

    pub fn contains(&self, s: Mor) -> bool {
        self.subgroups[self.groupoid.cod(s).0].contains(&s)
    }

    /// `s ~ t` iff `s = n t` for some `n ∈ N_{c(t)}`.
    pub fn congruence(&self) -> Result<Congruence, CategoryError> {
        let g = &self.groupoid;
        let mut label: Vec<Option<usize>> = vec![None; g.morphism_count()];
        let mut classes: Vec<Vec<Mor>> = Vec::new();
        for t in g.morphism_ids() {
            if label[t.0].is_some() {
                continue;
            }
            let class: BTreeSet<Mor> = self.subgroups[g.cod(t).0]
                .iter()
                .map(|&n| g.compose(n, t).unwrap())
                .collect();
            for s in &class {
                label[s.0] = Some(classes.len());
            }
            classes.push(class.into_iter().collect());
        }
        Congruence::from_classes(g.clone(), &classes)
    }
}
