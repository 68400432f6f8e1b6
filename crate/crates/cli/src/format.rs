//! The JSON description format for crossed systems.
//!
//! Morphisms are referenced by name and ring elements by name or code.
//! Builders keep files short; `describe` writes any system in explicit form.

use std::collections::BTreeMap;
use std::sync::Arc;

use catcross_core::category::{
    CategoryError, Congruence, FiniteCategory, Mor, MorphismInfo, NormalSubgroupoid, Obj,
    DEFAULT_MORPHISM_CAP,
};
use catcross_core::ring::{Code, FiniteRing, HomRecipe, RingError, RingHom, RingKind};
use catcross_core::system::{CrossedSystem, SystemError};
use catcross_core::algebra::AlgebraElement;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{context}: {message}")]
    Semantic { context: String, message: String },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    System(#[from] SystemError),
}

fn semantic(context: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Semantic {
        context: context.into(),
        message: message.into(),
    }
}

/// A ring element written either as its display name or its code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Code(usize),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    Cyclic {
        modulus: usize,
    },
    Gf4,
    Matrix {
        n: usize,
        modulus: usize,
    },
    /// Factors refer to other ring definitions.
    Product {
        factors: Vec<String>,
    },
    Table {
        names: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingAssign {
    All(String),
    PerObject(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingsSpec {
    pub defs: BTreeMap<String, RingSpec>,
    pub assign: RingAssign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CategorySpec {
    CyclicGroup {
        n: usize,
    },
    SymmetricGroup3,
    PairGroupoid {
        n: usize,
    },
    Discrete {
        n: usize,
    },
    /// A one-object category; `table[i][j]` names the product of
    /// elements `i` and `j`, and the first element is the identity.
    Monoid {
        elements: Vec<String>,
        table: Vec<Vec<String>>,
    },
    DisjointUnion {
        parts: Vec<CategorySpec>,
    },
    Product {
        left: Box<CategorySpec>,
        right: Box<CategorySpec>,
    },
    Explicit {
        objects: Vec<String>,
        morphisms: Vec<MorphismSpec>,
        /// Identity morphism of each object, in object order.
        identities: Vec<String>,
        /// Triples `[s, t, st]` for every composable pair.
        compose: Vec<[String; 3]>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HomSpec {
    /// `"identity"`, `"swap"` or `"frobenius"`.
    Recipe(String),
    Table { table: Vec<ElementRef> },
}

impl Default for HomSpec {
    fn default() -> Self {
        HomSpec::Recipe("identity".into())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaSpec {
    #[serde(default)]
    pub default: HomSpec,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub entries: BTreeMap<String, HomSpec>,
}

/// `[s, t, value]`; pairs not listed take the value 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaEntry(pub String, pub String, pub ElementRef);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CongruenceSpec {
    /// `"total"` or `"trivial"`.
    Named(String),
    /// Nontrivial classes by morphism name; the rest are singletons.
    Classes(Vec<Vec<String>>),
}

/// Bundled inputs for the quotient constructions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub congruence: Option<CongruenceSpec>,
    /// One list of loop names per object.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<Vec<Vec<String>>>,
    /// Terms `[morphism, coefficient]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<(String, ElementRef)>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideals: Option<IdealsSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDescription {
    pub version: u32,
    pub rings: RingsSpec,
    pub category: CategorySpec,
    #[serde(default)]
    pub sigma: SigmaSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alpha: Vec<AlphaEntry>,
    #[serde(default)]
    pub metadata: Metadata,
}

impl SystemDescription {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let desc: SystemDescription = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if desc.version != FORMAT_VERSION {
            return Err(semantic(
                "version",
                format!("unsupported version {}, expected {FORMAT_VERSION}", desc.version),
            ));
        }
        Ok(desc)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("descriptions always serialize");
        text.push('\n');
        text
    }

    pub fn name(&self) -> &str {
        self.metadata.name.as_deref().unwrap_or("unnamed")
    }

    /// Resolves rings, category, σ and α. The axioms are not checked here.
    pub fn build(&self) -> Result<Loaded, FormatError> {
        let category = Arc::new(build_category(&self.category)?);
        let names = NameIndex::new(&category)?;
        let mut cache = BTreeMap::new();
        let rings: Vec<Arc<FiniteRing>> = match &self.rings.assign {
            RingAssign::All(name) => {
                let ring = resolve_ring(&self.rings.defs, name, &mut cache, 0)?;
                vec![ring; category.object_count()]
            }
            RingAssign::PerObject(list) => {
                if list.len() != category.object_count() {
                    return Err(semantic(
                        "rings.assign",
                        format!("{} rings for {} objects", list.len(), category.object_count()),
                    ));
                }
                list.iter()
                    .map(|name| resolve_ring(&self.rings.defs, name, &mut cache, 0))
                    .collect::<Result<_, _>>()?
            }
        };
        for key in self.sigma.entries.keys() {
            names.morphism(key, "sigma.entries")?;
        }
        let sigma = category
            .morphism_ids()
            .map(|s| {
                let spec = self
                    .sigma
                    .entries
                    .get(category.name(s))
                    .unwrap_or(&self.sigma.default);
                let context = format!("sigma[{}]", category.name(s));
                build_hom(
                    spec,
                    rings[category.dom(s).0].clone(),
                    rings[category.cod(s).0].clone(),
                    &context,
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut alpha = Vec::with_capacity(self.alpha.len());
        for AlphaEntry(s, t, value) in &self.alpha {
            let context = format!("alpha[{s},{t}]");
            let s = names.morphism(s, &context)?;
            let t = names.morphism(t, &context)?;
            let code = element_code(&rings[category.cod(s).0], value, &context)?;
            alpha.push(((s, t), code));
        }
        let system = CrossedSystem::new(category, rings, sigma, &alpha)?;
        Ok(Loaded {
            description: self.clone(),
            system,
            names,
        })
    }
}

/// Morphism lookup by name; names must be unique.
#[derive(Debug, Clone)]
pub struct NameIndex {
    by_name: BTreeMap<String, Mor>,
}

impl NameIndex {
    fn new(category: &FiniteCategory) -> Result<Self, FormatError> {
        let mut by_name = BTreeMap::new();
        for s in category.morphism_ids() {
            if by_name.insert(category.name(s).to_string(), s).is_some() {
                return Err(semantic(
                    "category",
                    format!("morphism name `{}` is not unique", category.name(s)),
                ));
            }
        }
        Ok(NameIndex { by_name })
    }

    pub fn morphism(&self, name: &str, context: &str) -> Result<Mor, FormatError> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| semantic(context, format!("unknown morphism `{name}`")))
    }
}

/// A parsed system together with its description.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub description: SystemDescription,
    pub system: CrossedSystem,
    pub names: NameIndex,
}

impl Loaded {
    pub fn ideals(&self) -> Option<&IdealsSpec> {
        self.description.metadata.ideals.as_ref()
    }

    pub fn congruence(&self) -> Result<Option<Congruence>, FormatError> {
        let category = self.system.category().clone();
        let Some(spec) = self.ideals().and_then(|i| i.congruence.as_ref()) else {
            return Ok(None);
        };
        let congruence = match spec {
            CongruenceSpec::Named(name) if name == "total" => Congruence::total(category),
            CongruenceSpec::Named(name) if name == "trivial" => Congruence::trivial(category),
            CongruenceSpec::Named(other) => {
                return Err(semantic(
                    "metadata.ideals.congruence",
                    format!("unknown congruence `{other}`"),
                ))
            }
            CongruenceSpec::Classes(classes) => {
                let classes = classes
                    .iter()
                    .map(|class| {
                        class
                            .iter()
                            .map(|n| self.names.morphism(n, "metadata.ideals.congruence"))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Congruence::from_classes(category, &classes)?
            }
        };
        Ok(Some(congruence))
    }

    pub fn normal(&self) -> Result<Option<NormalSubgroupoid>, FormatError> {
        let Some(spec) = self.ideals().and_then(|i| i.normal.as_ref()) else {
            return Ok(None);
        };
        let subgroups = spec
            .iter()
            .map(|list| {
                list.iter()
                    .map(|n| self.names.morphism(n, "metadata.ideals.normal"))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Some(NormalSubgroupoid::new(
            self.system.category().clone(),
            subgroups,
        )?))
    }

    pub fn generator(&self) -> Result<Option<AlgebraElement>, FormatError> {
        let Some(terms) = self.ideals().and_then(|i| i.generator.as_ref()) else {
            return Ok(None);
        };
        let mut pairs = Vec::with_capacity(terms.len());
        for (name, value) in terms {
            let context = "metadata.ideals.generator";
            let s = self.names.morphism(name, context)?;
            pairs.push((s, element_code(self.system.coeff_ring(s), value, context)?));
        }
        self.system
            .element(&pairs)
            .map_err(|e| semantic("metadata.ideals.generator", e.to_string()))
            .map(Some)
    }
}

fn element_code(ring: &FiniteRing, value: &ElementRef, context: &str) -> Result<Code, FormatError> {
    match value {
        ElementRef::Code(c) if *c < ring.size() => Ok(*c),
        ElementRef::Code(c) => Err(semantic(
            context,
            format!("code {c} outside ring {} of size {}", ring.id(), ring.size()),
        )),
        ElementRef::Name(name) => ring
            .codes()
            .find(|&c| ring.name_of(c) == name)
            .ok_or_else(|| semantic(context, format!("no element `{name}` in ring {}", ring.id()))),
    }
}

fn resolve_ring(
    defs: &BTreeMap<String, RingSpec>,
    name: &str,
    cache: &mut BTreeMap<String, Arc<FiniteRing>>,
    depth: usize,
) -> Result<Arc<FiniteRing>, FormatError> {
    if let Some(ring) = cache.get(name) {
        return Ok(ring.clone());
    }
    let context = format!("rings.defs[{name}]");
    if depth > defs.len() {
        return Err(semantic(context, "ring definitions are cyclic"));
    }
    let spec = defs
        .get(name)
        .ok_or_else(|| semantic("rings", format!("unknown ring `{name}`")))?;
    let ring = match spec {
        RingSpec::Cyclic { modulus } => FiniteRing::cyclic(*modulus)?,
        RingSpec::Gf4 => FiniteRing::gf4(),
        RingSpec::Matrix { n, modulus } => FiniteRing::matrix(*n, *modulus)?,
        RingSpec::Product { factors } => {
            let factors = factors
                .iter()
                .map(|f| resolve_ring(defs, f, cache, depth + 1))
                .collect::<Result<Vec<_>, _>>()?;
            FiniteRing::product(&factors)?
        }
        RingSpec::Table {
            names,
            add,
            mul,
            zero,
            one,
        } => {
            FiniteRing::from_tables(name, Some(names.clone()), add.clone(), mul.clone(), *zero, *one)?
        }
    };
    cache.insert(name.to_string(), ring.clone());
    Ok(ring)
}

fn build_hom(
    spec: &HomSpec,
    domain: Arc<FiniteRing>,
    codomain: Arc<FiniteRing>,
    context: &str,
) -> Result<RingHom, FormatError> {
    let endo = |recipe: &str| -> Result<Arc<FiniteRing>, FormatError> {
        if domain == codomain {
            Ok(domain.clone())
        } else {
            Err(semantic(
                context,
                format!("`{recipe}` needs equal domain and codomain rings"),
            ))
        }
    };
    Ok(match spec {
        HomSpec::Recipe(r) if r == "identity" => RingHom::identity(endo(r)?),
        HomSpec::Recipe(r) if r == "swap" => RingHom::swap(endo(r)?)?,
        HomSpec::Recipe(r) if r == "frobenius" => RingHom::frobenius(endo(r)?),
        HomSpec::Recipe(r) => return Err(semantic(context, format!("unknown recipe `{r}`"))),
        HomSpec::Table { table } => {
            let codes = table
                .iter()
                .map(|v| element_code(&codomain, v, context))
                .collect::<Result<Vec<_>, _>>()?;
            RingHom::from_table(domain, codomain, codes)?
        }
    })
}

fn build_category(spec: &CategorySpec) -> Result<FiniteCategory, FormatError> {
    Ok(match spec {
        CategorySpec::CyclicGroup { n } => FiniteCategory::cyclic_group(*n)?,
        CategorySpec::SymmetricGroup3 => FiniteCategory::symmetric_group_3(),
        CategorySpec::PairGroupoid { n } => FiniteCategory::pair_groupoid(*n)?,
        CategorySpec::Discrete { n } => FiniteCategory::discrete(*n)?,
        CategorySpec::Monoid { elements, table } => {
            let index = |name: &String| {
                elements
                    .iter()
                    .position(|e| e == name)
                    .ok_or_else(|| semantic("category.table", format!("unknown element `{name}`")))
            };
            let table = table
                .iter()
                .map(|row| row.iter().map(index).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            FiniteCategory::monoid(elements.clone(), table)?
        }
        CategorySpec::DisjointUnion { parts } => {
            let parts = parts.iter().map(build_category).collect::<Result<Vec<_>, _>>()?;
            FiniteCategory::disjoint_union(&parts)?
        }
        CategorySpec::Product { left, right } => {
            FiniteCategory::product(&build_category(left)?, &build_category(right)?)?
        }
        CategorySpec::Explicit {
            objects,
            morphisms,
            identities,
            compose,
        } => {
            let object = |name: &String| {
                objects
                    .iter()
                    .position(|o| o == name)
                    .map(Obj)
                    .ok_or_else(|| semantic("category.morphisms", format!("unknown object `{name}`")))
            };
            let infos = morphisms
                .iter()
                .map(|m| {
                    Ok(MorphismInfo {
                        name: m.name.clone(),
                        dom: object(&m.dom)?,
                        cod: object(&m.cod)?,
                    })
                })
                .collect::<Result<Vec<_>, FormatError>>()?;
            let morphism = |name: &String| {
                morphisms
                    .iter()
                    .position(|m| &m.name == name)
                    .map(Mor)
                    .ok_or_else(|| semantic("category", format!("unknown morphism `{name}`")))
            };
            let identities = identities.iter().map(morphism).collect::<Result<Vec<_>, _>>()?;
            let triples = compose
                .iter()
                .map(|[s, t, st]| Ok((morphism(s)?, morphism(t)?, morphism(st)?)))
                .collect::<Result<Vec<_>, FormatError>>()?;
            FiniteCategory::new(
                objects.clone(),
                infos,
                identities,
                &triples,
                morphisms.len().max(DEFAULT_MORPHISM_CAP),
            )?
        }
    })
}

fn ring_name(ring: &FiniteRing) -> String {
    ring.id().as_str().to_string()
}

fn describe_ring(ring: &Arc<FiniteRing>, defs: &mut BTreeMap<String, RingSpec>) -> String {
    let name = ring_name(ring);
    let spec = match ring.kind() {
        RingKind::Cyclic { modulus } => RingSpec::Cyclic { modulus: *modulus },
        RingKind::Gf4 => RingSpec::Gf4,
        RingKind::Matrix { n, modulus } => RingSpec::Matrix {
            n: *n,
            modulus: *modulus,
        },
        RingKind::Product(factors) => RingSpec::Product {
            factors: factors.iter().map(|f| describe_ring(f, defs)).collect(),
        },
        RingKind::Table => RingSpec::Table {
            names: ring.names().to_vec(),
            add: ring.add_table(),
            mul: ring.mul_table(),
            zero: ring.zero(),
            one: ring.one(),
        },
    };
    defs.insert(name.clone(), spec);
    name
}

/// Writes any system in explicit form. Fails when morphism names repeat or
/// two different rings share an id.
pub fn describe(system: &CrossedSystem, metadata: Metadata) -> Result<SystemDescription, FormatError> {
    let g = system.category();
    NameIndex::new(g)?;
    let mut defs = BTreeMap::new();
    let assigned: Vec<String> = system
        .rings()
        .iter()
        .map(|r| describe_ring(r, &mut defs))
        .collect();
    for ring in system.rings() {
        let mut check = BTreeMap::new();
        describe_ring(ring, &mut check);
        if check.iter().any(|(k, v)| defs.get(k) != Some(v)) {
            return Err(semantic("rings", format!("ring id `{}` is ambiguous", ring.id())));
        }
    }
    let assign = if assigned.windows(2).all(|w| w[0] == w[1]) && !assigned.is_empty() {
        RingAssign::All(assigned[0].clone())
    } else {
        RingAssign::PerObject(assigned)
    };
    let object = |e: Obj| g.object_name(e).to_string();
    let category = CategorySpec::Explicit {
        objects: g.object_names().to_vec(),
        morphisms: g
            .morphism_ids()
            .map(|s| MorphismSpec {
                name: g.name(s).to_string(),
                dom: object(g.dom(s)),
                cod: object(g.cod(s)),
            })
            .collect(),
        identities: g.identities().iter().map(|&s| g.name(s).to_string()).collect(),
        compose: g
            .composition_triples()
            .into_iter()
            .map(|(s, t, st)| [g.name(s).to_string(), g.name(t).to_string(), g.name(st).to_string()])
            .collect(),
    };
    let mut entries = BTreeMap::new();
    for s in g.morphism_ids() {
        let hom = system.sigma(s);
        let spec = match hom.recipe() {
            HomRecipe::Identity => continue,
            HomRecipe::Swap => HomSpec::Recipe("swap".into()),
            HomRecipe::Frobenius => HomSpec::Recipe("frobenius".into()),
            HomRecipe::Table => HomSpec::Table {
                table: hom
                    .table()
                    .iter()
                    .map(|&c| ElementRef::Name(hom.codomain().name_of(c).to_string()))
                    .collect(),
            },
        };
        entries.insert(g.name(s).to_string(), spec);
    }
    let alpha = system
        .alpha_entries()
        .into_iter()
        .filter(|&((s, _), c)| c != system.coeff_ring(s).one())
        .map(|((s, t), c)| {
            AlphaEntry(
                g.name(s).to_string(),
                g.name(t).to_string(),
                ElementRef::Name(system.coeff_ring(s).name_of(c).to_string()),
            )
        })
        .collect();
    Ok(SystemDescription {
        version: FORMAT_VERSION,
        rings: RingsSpec { defs, assign },
        category,
        sigma: SigmaSpec {
            default: HomSpec::default(),
            entries,
        },
        alpha,
        metadata,
    })
}
