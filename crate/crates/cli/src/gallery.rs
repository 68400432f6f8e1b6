//! Bundled crossed systems, addressable by name from the command line.

use std::collections::BTreeMap;

use catcross_core::ring::FiniteRing;

use crate::format::{
    AlphaEntry, CategorySpec, CongruenceSpec, ElementRef, HomSpec, IdealsSpec, Metadata,
    RingAssign, RingSpec, RingsSpec, SigmaSpec, SystemDescription, FORMAT_VERSION,
};

/// Every bundled name, in listing order.
pub const NAMES: &[&str] = &[
    "m2_z2_pairgroupoid",
    "m2_z3_pairgroupoid",
    "m2_z4_pairgroupoid",
    "m3_z2_pairgroupoid",
    "m3_z3_pairgroupoid",
    "m3_z4_pairgroupoid",
    "z2_c2_groupalgebra",
    "z3_c2_groupalgebra",
    "z3_c3_groupalgebra",
    "z2_c4_groupalgebra",
    "z2_klein_groupalgebra",
    "z2_s3_groupalgebra",
    "z4_c2_twisted3",
    "z4_c2_twisted2",
    "z6_c2_twisted5",
    "z5_klein_twisted",
    "swap_skew",
    "gf4_c2_frobenius",
    "z2cube_c3_shift",
    "m2z2_trivial",
    "m2z2_c2_conjugation",
    "z3_c3_c2_disjoint",
    "z2_c2_c2_disjoint",
    "z2_monoid_ez",
    "z2_z3_discrete",
    "z2z2_pair_swap",
    "z3_pair_c2",
    "gf2_pair2_skew",
];

fn cyclic(n: usize) -> (String, RingSpec) {
    (format!("Z{n}"), RingSpec::Cyclic { modulus: n })
}

fn name(s: &str) -> ElementRef {
    ElementRef::Name(s.to_string())
}

fn group(key: &str) -> Option<CategorySpec> {
    Some(match key {
        "trivial" => CategorySpec::CyclicGroup { n: 1 },
        "klein" => CategorySpec::Product {
            left: Box::new(CategorySpec::CyclicGroup { n: 2 }),
            right: Box::new(CategorySpec::CyclicGroup { n: 2 }),
        },
        "s3" => CategorySpec::SymmetricGroup3,
        _ => {
            let n: usize = key.strip_prefix('c')?.parse().ok()?;
            if n == 0 {
                return None;
            }
            CategorySpec::CyclicGroup { n }
        }
    })
}

/// Ring definitions for a command-line ring key such as `z3`, `gf4`,
/// `z2xz2` or `m2z2`; returns the definitions and the assigned name.
pub fn ring(key: &str) -> Option<(BTreeMap<String, RingSpec>, String)> {
    let mut defs = BTreeMap::new();
    let assigned = match key {
        "gf4" | "GF4" => {
            defs.insert("GF4".into(), RingSpec::Gf4);
            "GF4".to_string()
        }
        "z2xz2" => {
            let (z, spec) = cyclic(2);
            defs.insert(z.clone(), spec);
            defs.insert(
                "Z2xZ2".into(),
                RingSpec::Product {
                    factors: vec![z.clone(), z],
                },
            );
            "Z2xZ2".to_string()
        }
        "m2z2" => {
            defs.insert("M2(Z2)".into(), RingSpec::Matrix { n: 2, modulus: 2 });
            "M2(Z2)".to_string()
        }
        _ => {
            let n: usize = key.strip_prefix(['z', 'Z'])?.parse().ok()?;
            if n < 2 {
                return None;
            }
            let (z, spec) = cyclic(n);
            defs.insert(z.clone(), spec);
            z
        }
    };
    Some((defs, assigned))
}

fn base(name: &str, ring_key: &str, category: CategorySpec, notes: &str) -> SystemDescription {
    let (defs, assigned) = ring(ring_key).expect("bundled ring keys are valid");
    SystemDescription {
        version: FORMAT_VERSION,
        rings: RingsSpec {
            defs,
            assign: RingAssign::All(assigned),
        },
        category,
        sigma: SigmaSpec::default(),
        alpha: Vec::new(),
        metadata: Metadata {
            name: Some(name.to_string()),
            notes: Some(notes.to_string()),
            ..Metadata::default()
        },
    }
}

/// The matrix ring `M_n(D)` as the pair-groupoid algebra over `D`.
pub fn matrix(n: usize, ring_key: &str) -> Option<SystemDescription> {
    ring(ring_key)?;
    if n == 0 {
        return None;
    }
    let mut d = base(
        &format!("m{n}_{ring_key}_pairgroupoid"),
        ring_key,
        CategorySpec::PairGroupoid { n },
        "matrix ring as the pair-groupoid algebra",
    );
    // the diagonal idempotents generate the trivial normal subgroupoid
    d.metadata.ideals = Some(IdealsSpec {
        congruence: Some(CongruenceSpec::Named("trivial".into())),
        normal: Some((1..=n).map(|i| vec![format!("({i},{i})")]).collect()),
        generator: Some(Vec::new()),
    });
    Some(d)
}

/// The group algebra `D[G]` for a group key such as `c3`, `klein`, `s3`.
pub fn group_algebra(group_key: &str, ring_key: &str) -> Option<SystemDescription> {
    ring(ring_key)?;
    let category = group(group_key)?;
    Some(base(
        &format!("{ring_key}_{group_key}_groupalgebra"),
        ring_key,
        category,
        "group algebra",
    ))
}

fn cyclic_ideals(n: usize, generator: Vec<(&str, &str)>) -> IdealsSpec {
    let names: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "s".to_string(),
            _ => format!("s^{i}"),
        })
        .collect();
    IdealsSpec {
        congruence: Some(CongruenceSpec::Named("total".into())),
        normal: Some(vec![names]),
        generator: Some(
            generator
                .into_iter()
                .map(|(s, c)| (s.to_string(), name(c)))
                .collect(),
        ),
    }
}

fn twisted_c2(name_: &str, modulus: usize, value: usize) -> SystemDescription {
    let mut d = base(
        name_,
        &format!("z{modulus}"),
        CategorySpec::CyclicGroup { n: 2 },
        "twisted group ring with a nontrivial alpha(s,s)",
    );
    d.alpha = vec![AlphaEntry("s".into(), "s".into(), ElementRef::Code(value))];
    d
}

fn table_of(ring: &FiniteRing, f: impl Fn(usize) -> usize) -> HomSpec {
    HomSpec::Table {
        table: ring.codes().map(|c| name(ring.name_of(f(c)))).collect(),
    }
}

pub fn get(key: &str) -> Option<SystemDescription> {
    let mut d = match key {
        "m2_z2_pairgroupoid" => matrix(2, "z2")?,
        "m2_z3_pairgroupoid" => matrix(2, "z3")?,
        "m2_z4_pairgroupoid" => matrix(2, "z4")?,
        "m3_z2_pairgroupoid" => matrix(3, "z2")?,
        "m3_z3_pairgroupoid" => matrix(3, "z3")?,
        "m3_z4_pairgroupoid" => matrix(3, "z4")?,
        "z2_c2_groupalgebra" => {
            let mut d = group_algebra("c2", "z2")?;
            d.metadata.ideals = Some(cyclic_ideals(2, vec![("e", "1"), ("s", "1")]));
            d
        }
        "z3_c2_groupalgebra" => {
            let mut d = group_algebra("c2", "z3")?;
            d.metadata.ideals = Some(cyclic_ideals(2, vec![("e", "1"), ("s", "2")]));
            d
        }
        "z3_c3_groupalgebra" => {
            let mut d = group_algebra("c3", "z3")?;
            d.metadata.ideals = Some(cyclic_ideals(3, vec![("e", "1"), ("s", "2")]));
            d
        }
        "z2_c4_groupalgebra" => {
            let mut d = group_algebra("c4", "z2")?;
            d.metadata.ideals = Some(IdealsSpec {
                congruence: Some(CongruenceSpec::Classes(vec![
                    vec!["e".into(), "s^2".into()],
                    vec!["s".into(), "s^3".into()],
                ])),
                normal: Some(vec![vec!["e".into(), "s^2".into()]]),
                generator: Some(vec![("e".into(), name("1")), ("s^2".into(), name("1"))]),
            });
            d
        }
        "z2_klein_groupalgebra" => group_algebra("klein", "z2")?,
        "z2_s3_groupalgebra" => group_algebra("s3", "z2")?,
        "z4_c2_twisted3" => twisted_c2(key, 4, 3),
        "z4_c2_twisted2" => twisted_c2(key, 4, 2),
        "z6_c2_twisted5" => twisted_c2(key, 6, 5),
        "z5_klein_twisted" => {
            let mut d = base(
                key,
                "z5",
                group("klein")?,
                "twisted Klein group ring with a non-symmetric cocycle",
            );
            let (a, b, c) = ("(s,e)", "(e,s)", "(s,s)");
            let entries = [
                (a, a, 1),
                (a, b, 2),
                (a, c, 3),
                (b, a, 3),
                (b, b, 1),
                (b, c, 2),
                (c, a, 2),
                (c, b, 3),
                (c, c, 1),
            ];
            d.alpha = entries
                .iter()
                .filter(|e| e.2 != 1)
                .map(|&(s, t, v)| AlphaEntry(s.into(), t.into(), ElementRef::Code(v)))
                .collect();
            d
        }
        "swap_skew" => {
            let mut d = base(
                key,
                "z2xz2",
                CategorySpec::CyclicGroup { n: 2 },
                "skew group ring of C2 acting on Z2xZ2 by swapping factors",
            );
            d.sigma.entries.insert("s".into(), HomSpec::Recipe("swap".into()));
            d
        }
        "gf4_c2_frobenius" => {
            let mut d = base(
                key,
                "gf4",
                CategorySpec::CyclicGroup { n: 2 },
                "skew group ring of C2 acting on GF(4) by the Frobenius map",
            );
            d.sigma.entries.insert("s".into(), HomSpec::Recipe("frobenius".into()));
            d
        }
        "z2cube_c3_shift" => {
            let z2 = FiniteRing::cyclic(2).ok()?;
            let cube = FiniteRing::product(&[z2.clone(), z2.clone(), z2]).ok()?;
            // codes are 4a + 2b + c for (a, b, c); the shift sends it to (c, a, b)
            let shift = |x: usize| 4 * (x & 1) + 2 * (x >> 2) + ((x >> 1) & 1);
            let mut defs = BTreeMap::new();
            defs.insert("Z2".to_string(), RingSpec::Cyclic { modulus: 2 });
            defs.insert(
                cube.id().as_str().to_string(),
                RingSpec::Product {
                    factors: vec!["Z2".into(), "Z2".into(), "Z2".into()],
                },
            );
            let mut d = base(
                key,
                "z2",
                CategorySpec::CyclicGroup { n: 3 },
                "skew group ring of C3 cyclically permuting the factors of Z2^3",
            );
            d.rings = RingsSpec {
                defs,
                assign: RingAssign::All(cube.id().as_str().to_string()),
            };
            d.sigma.entries.insert("s".into(), table_of(&cube, shift));
            d.sigma
                .entries
                .insert("s^2".into(), table_of(&cube, |x| shift(shift(x))));
            d
        }
        "m2z2_trivial" => base(
            key,
            "m2z2",
            CategorySpec::CyclicGroup { n: 1 },
            "noncommutative coefficients over the trivial group",
        ),
        "m2z2_c2_conjugation" => {
            let m = FiniteRing::matrix(2, 2).ok()?;
            let p = m.codes().find(|&c| m.name_of(c) == "[[0,1],[1,0]]")?;
            let mut d = base(
                key,
                "m2z2",
                CategorySpec::CyclicGroup { n: 2 },
                "skew group ring of C2 acting on M2(Z2) by conjugation",
            );
            d.sigma
                .entries
                .insert("s".into(), table_of(&m, |x| m.mul_code(m.mul_code(p, x), p)));
            d
        }
        "z3_c3_c2_disjoint" => base(
            key,
            "z3",
            CategorySpec::DisjointUnion {
                parts: vec![
                    CategorySpec::CyclicGroup { n: 3 },
                    CategorySpec::CyclicGroup { n: 2 },
                ],
            },
            "category algebra of the disjoint union of C3 and C2",
        ),
        "z2_c2_c2_disjoint" => {
            let mut d = base(
                key,
                "z2",
                CategorySpec::DisjointUnion {
                    parts: vec![
                        CategorySpec::CyclicGroup { n: 2 },
                        CategorySpec::CyclicGroup { n: 2 },
                    ],
                },
                "category algebra of two disjoint copies of C2",
            );
            d.metadata.ideals = Some(IdealsSpec {
                congruence: Some(CongruenceSpec::Named("total".into())),
                normal: Some(vec![
                    vec!["e_1".into(), "s_1".into()],
                    vec!["e_2".into(), "s_2".into()],
                ]),
                generator: Some(vec![("e_1".into(), name("1")), ("s_1".into(), name("1"))]),
            });
            d
        }
        "z2_monoid_ez" => {
            let mut d = base(
                key,
                "z2",
                CategorySpec::Monoid {
                    elements: vec!["e".into(), "z".into()],
                    table: vec![
                        vec!["e".into(), "z".into()],
                        vec!["z".into(), "z".into()],
                    ],
                },
                "monoid algebra of {e, z} with z idempotent",
            );
            d.metadata.ideals = Some(IdealsSpec {
                congruence: Some(CongruenceSpec::Named("total".into())),
                normal: None,
                generator: Some(vec![("e".into(), name("1")), ("z".into(), name("1"))]),
            });
            d
        }
        "z2_z3_discrete" => {
            let mut d = base(
                key,
                "z2",
                CategorySpec::Discrete { n: 2 },
                "two objects with coefficient rings Z2 and Z3",
            );
            let (z3, spec) = cyclic(3);
            d.rings.defs.insert(z3.clone(), spec);
            d.rings.assign = RingAssign::PerObject(vec!["Z2".into(), z3]);
            d
        }
        "z2z2_pair_swap" => {
            let mut d = base(
                key,
                "z2xz2",
                CategorySpec::PairGroupoid { n: 2 },
                "pair groupoid over Z2xZ2, off-diagonal morphisms swap the factors",
            );
            for s in ["(1,2)", "(2,1)"] {
                d.sigma.entries.insert(s.into(), HomSpec::Recipe("swap".into()));
            }
            d
        }
        "z3_pair_c2" => {
            let mut d = base(
                key,
                "z3",
                CategorySpec::Product {
                    left: Box::new(CategorySpec::PairGroupoid { n: 2 }),
                    right: Box::new(CategorySpec::CyclicGroup { n: 2 }),
                },
                "connected groupoid with loop groups C2 over Z3",
            );
            let pairs = ["(1,1)", "(1,2)", "(2,1)", "(2,2)"];
            d.metadata.ideals = Some(IdealsSpec {
                congruence: Some(CongruenceSpec::Classes(
                    pairs
                        .iter()
                        .map(|p| vec![format!("({p},e)"), format!("({p},s)")])
                        .collect(),
                )),
                normal: Some(
                    ["(1,1)", "(2,2)"]
                        .iter()
                        .map(|p| vec![format!("({p},e)"), format!("({p},s)")])
                        .collect(),
                ),
                generator: Some(vec![
                    ("((1,1),e)".into(), name("1")),
                    ("((1,1),s)".into(), name("2")),
                ]),
            });
            d
        }
        "gf2_pair2_skew" => base(
            key,
            "z2",
            CategorySpec::PairGroupoid { n: 2 },
            "skew groupoid ring over GF(2) with trivial loop groups",
        ),
        _ => return None,
    };
    d.metadata.name = Some(key.to_string());
    Some(d)
}

pub fn all() -> Vec<SystemDescription> {
    NAMES.iter().map(|n| get(n).expect("listed names resolve")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundled_system_is_valid() {
        for d in all() {
            let loaded = d.build().unwrap_or_else(|e| panic!("{}: {e}", d.name()));
            let report = loaded.system.validate();
            assert!(report.is_valid(), "{}: {:?}", d.name(), report.violations.first());
        }
    }

    #[test]
    fn bundled_ideal_instances_resolve() {
        for d in all() {
            let loaded = d.build().unwrap();
            loaded.congruence().unwrap();
            loaded.normal().unwrap();
            loaded.generator().unwrap();
        }
    }

    #[test]
    fn descriptions_round_trip() {
        for d in all() {
            let text = d.to_json();
            let parsed = SystemDescription::parse(&text).unwrap();
            assert_eq!(parsed, d);
            assert_eq!(parsed.build().unwrap().system, d.build().unwrap().system);
        }
    }

    #[test]
    fn klein_cocycle_is_lawful_and_not_symmetric() {
        let sys = get("z5_klein_twisted").unwrap().build().unwrap().system;
        assert!(sys.is_valid());
        assert!(!sys.is_alpha_symmetric().unwrap());
        assert!(!sys.is_skew().unwrap());
    }

    #[test]
    fn builders_reject_unknown_keys() {
        assert!(ring("q7").is_none());
        assert!(group("c0").is_none());
        assert!(get("nope").is_none());
        assert!(matrix(2, "z1").is_none());
    }
}
