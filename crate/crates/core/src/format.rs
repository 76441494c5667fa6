//! JSON file formats: structures, morphisms, actions and named bundles.
//!
//! A structure is `{"kind", "order", "table", "name"}` with the table omitted
//! for pointed sets. Anywhere a structure is expected, a string naming a
//! built-in structure (`"S3"`, `"Z2xZ2"`, `"ab:Z4"`, `"P3"`) is accepted too.
//!
//! A bundle is a diagram: named structures, named morphisms whose source and
//! target refer to those names, a `type` tag and an optional verdict line.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::actions::{GroupAction, PreCrossedModule};
use crate::additive::TwoChain;
use crate::corpus::{self, Corpus, Provenance};
use crate::error::{IcatError, Result};
use crate::graphs::{Precategory, ReflexiveGraph};
use crate::morphism::Morphism;
use crate::points::{A2Witness, PointMorphism, SplitEpi};
use crate::structure::{Kind, Obj, Structure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub kind: String,
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl StructureFile {
    pub fn of(s: &Structure) -> StructureFile {
        StructureFile {
            kind: s.kind().as_str().to_string(),
            order: s.order(),
            table: s.rows(),
            name: s.name().map(str::to_string),
        }
    }

    /// Validates the table against the kind's axioms.
    pub fn to_structure(&self) -> Result<Obj> {
        let kind = Kind::parse(&self.kind)?;
        let s = match (&self.table, kind) {
            (None, Kind::PointedSet) if self.order > 0 => Structure::pointed_set(self.order),
            (None, Kind::PointedSet) => {
                return Err(IcatError::Format("a pointed set needs order >= 1".into()))
            }
            (Some(_), Kind::PointedSet) => {
                return Err(IcatError::Format("pointed sets carry no table".into()))
            }
            (None, _) => return Err(IcatError::Format(format!("{kind} needs a table"))),
            (Some(rows), _) => {
                if rows.len() != self.order {
                    return Err(IcatError::Format(format!(
                        "order {} but {} table rows",
                        self.order,
                        rows.len()
                    )));
                }
                Structure::from_table(kind, rows.clone())?
            }
        };
        Ok(Arc::new(match &self.name {
            Some(n) => s.with_name(n.clone()),
            None => s,
        }))
    }
}

/// A structure given inline or by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StructureRef {
    Name(String),
    Inline(StructureFile),
}

impl StructureRef {
    /// Names are looked up in `scope` first, then among the built-ins.
    pub fn resolve(&self, scope: &BTreeMap<String, Obj>) -> Result<Obj> {
        match self {
            StructureRef::Name(n) => match scope.get(n) {
                Some(o) => Ok(o.clone()),
                None => corpus::by_name(n),
            },
            StructureRef::Inline(f) => f.to_structure(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismFile {
    pub source: StructureRef,
    pub target: StructureRef,
    pub map: Vec<usize>,
}

impl MorphismFile {
    pub fn inline(m: &Morphism) -> MorphismFile {
        MorphismFile {
            source: StructureRef::Inline(StructureFile::of(m.source())),
            target: StructureRef::Inline(StructureFile::of(m.target())),
            map: m.map().to_vec(),
        }
    }

    pub fn to_morphism(&self, scope: &BTreeMap<String, Obj>) -> Result<Morphism> {
        let s = self.source.resolve(scope)?;
        let t = self.target.resolve(scope)?;
        Morphism::new(&s, &t, self.map.clone())
    }
}

/// `{"X", "B", "act"}` with `act[b][x] = b·x`; with `"h"` it is a
/// precrossed module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionFile {
    #[serde(rename = "X")]
    pub x: StructureRef,
    #[serde(rename = "B")]
    pub b: StructureRef,
    pub act: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<usize>>,
}

impl ActionFile {
    pub fn of(a: &GroupAction) -> ActionFile {
        ActionFile {
            x: StructureRef::Inline(StructureFile::of(a.x())),
            b: StructureRef::Inline(StructureFile::of(a.b())),
            act: a.rows(),
            h: None,
        }
    }

    pub fn of_pxm(p: &PreCrossedModule) -> ActionFile {
        ActionFile {
            h: Some(p.h.map().to_vec()),
            ..ActionFile::of(&p.action)
        }
    }

    pub fn to_action(&self) -> Result<GroupAction> {
        let scope = BTreeMap::new();
        let x = self.x.resolve(&scope)?;
        let b = self.b.resolve(&scope)?;
        GroupAction::new(&x, &b, self.act.clone())
    }

    pub fn to_pxm(&self) -> Result<PreCrossedModule> {
        let action = self.to_action()?;
        let h = self
            .h
            .clone()
            .ok_or_else(|| IcatError::Format("a precrossed module needs \"h\"".into()))?;
        let h = Morphism::new(action.x(), action.b(), h)?;
        PreCrossedModule::new(action, h)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    #[serde(rename = "type")]
    pub kind: String,
    pub structures: BTreeMap<String, StructureFile>,
    pub morphisms: BTreeMap<String, MorphismFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
}

impl Bundle {
    pub fn new(kind: &str) -> Bundle {
        Bundle {
            kind: kind.to_string(),
            ..Bundle::default()
        }
    }

    pub fn with_verdict(mut self, verdict: impl Into<String>) -> Bundle {
        self.verdict = Some(verdict.into());
        self
    }

    pub fn add_structure(&mut self, key: &str, s: &Structure) {
        self.structures.insert(key.to_string(), StructureFile::of(s));
    }

    pub fn add_morphism(&mut self, key: &str, m: &Morphism, source: &str, target: &str) {
        self.morphisms.insert(
            key.to_string(),
            MorphismFile {
                source: StructureRef::Name(source.to_string()),
                target: StructureRef::Name(target.to_string()),
                map: m.map().to_vec(),
            },
        );
    }

    /// All structures, validated.
    pub fn scope(&self) -> Result<BTreeMap<String, Obj>> {
        self.structures
            .iter()
            .map(|(k, f)| Ok((k.clone(), f.to_structure()?)))
            .collect()
    }

    pub fn morphism(&self, scope: &BTreeMap<String, Obj>, key: &str) -> Result<Morphism> {
        self.morphisms
            .get(key)
            .ok_or_else(|| IcatError::Format(format!("bundle has no morphism {key:?}")))?
            .to_morphism(scope)
    }

    fn expect_type(&self, kinds: &[&str]) -> Result<()> {
        if kinds.contains(&self.kind.as_str()) {
            Ok(())
        } else {
            Err(IcatError::Format(format!(
                "expected a bundle of type {}, found {:?}",
                kinds.join(" or "),
                self.kind
            )))
        }
    }

    pub fn from_morphism(h: &Morphism) -> Bundle {
        let mut b = Bundle::new("morphism");
        b.add_structure("X", h.source());
        b.add_structure("B", h.target());
        b.add_morphism("h", h, "X", "B");
        b
    }

    pub fn to_morphism(&self) -> Result<Morphism> {
        self.expect_type(&["morphism"])?;
        self.morphism(&self.scope()?, "h")
    }

    pub fn from_graph(g: &ReflexiveGraph) -> Bundle {
        let mut b = Bundle::new("reflexive-graph");
        b.add_graph(g);
        b
    }

    fn add_graph(&mut self, g: &ReflexiveGraph) {
        self.add_structure("C0", g.c0());
        self.add_structure("C1", g.c1());
        self.add_morphism("d", &g.d, "C1", "C0");
        self.add_morphism("c", &g.c, "C1", "C0");
        self.add_morphism("e", &g.e, "C0", "C1");
    }

    /// Arrows with mismatched ends are rejected; the graph laws are not
    /// checked.
    pub fn to_graph(&self) -> Result<ReflexiveGraph> {
        self.expect_type(&["reflexive-graph", "precategory"])?;
        let s = self.scope()?;
        ReflexiveGraph::from_parts(
            self.morphism(&s, "d")?,
            self.morphism(&s, "c")?,
            self.morphism(&s, "e")?,
        )
    }

    pub fn from_precategory(p: &Precategory) -> Bundle {
        let mut b = Bundle::new("precategory");
        b.add_graph(&p.graph);
        b.add_structure("C2", p.c2());
        for (key, m) in [("p1", &p.p1), ("p2", &p.p2), ("m", &p.m)] {
            b.add_morphism(key, m, "C2", "C1");
        }
        for (key, m) in [("e1", &p.e1), ("e2", &p.e2)] {
            b.add_morphism(key, m, "C1", "C2");
        }
        b
    }

    /// Arrows with mismatched ends are rejected; the precategory laws are not
    /// checked.
    pub fn to_precategory(&self) -> Result<Precategory> {
        self.expect_type(&["precategory"])?;
        let s = self.scope()?;
        let g = ReflexiveGraph::from_parts(
            self.morphism(&s, "d")?,
            self.morphism(&s, "c")?,
            self.morphism(&s, "e")?,
        )?;
        Precategory::from_parts(
            g,
            self.morphism(&s, "p1")?,
            self.morphism(&s, "p2")?,
            self.morphism(&s, "e1")?,
            self.morphism(&s, "e2")?,
            self.morphism(&s, "m")?,
        )
    }

    pub fn from_split_epi(p: &SplitEpi) -> Bundle {
        let mut b = Bundle::new("split-epi");
        b.add_structure("A", p.a());
        b.add_structure("B", p.b());
        b.add_morphism("alpha", p.alpha(), "A", "B");
        b.add_morphism("beta", p.beta(), "B", "A");
        b
    }

    pub fn to_split_epi(&self) -> Result<SplitEpi> {
        self.expect_type(&["split-epi"])?;
        let s = self.scope()?;
        SplitEpi::new(self.morphism(&s, "alpha")?, self.morphism(&s, "beta")?)
    }

    /// Six structures (both kernels included for inspection) and the six
    /// morphisms `α, β, α', β'`, the middle component `h` and the base
    /// component `g`.
    pub fn from_a2_witness(w: &A2Witness) -> Bundle {
        let m = &w.morphism;
        let mut b = Bundle::new("a2-witness");
        for (tag, p) in [("", &m.src), ("'", &m.dst)] {
            b.add_structure(&format!("A{tag}"), p.a());
            b.add_structure(&format!("B{tag}"), p.b());
            b.add_structure(&format!("K{tag}"), p.kernel());
            b.add_morphism(&format!("alpha{tag}"), p.alpha(), &format!("A{tag}"), &format!("B{tag}"));
            b.add_morphism(&format!("beta{tag}"), p.beta(), &format!("B{tag}"), &format!("A{tag}"));
        }
        b.add_morphism("h", &m.top, "A", "A'");
        b.add_morphism("g", &m.bottom, "B", "B'");
        b.with_verdict("FAIL: kernel and base components are isomorphisms, the middle component is not")
    }

    pub fn to_a2_witness(&self) -> Result<A2Witness> {
        self.expect_type(&["a2-witness"])?;
        let s = self.scope()?;
        let src = SplitEpi::new(self.morphism(&s, "alpha")?, self.morphism(&s, "beta")?)?;
        let dst = SplitEpi::new(self.morphism(&s, "alpha'")?, self.morphism(&s, "beta'")?)?;
        let morphism = PointMorphism::new(src, dst, self.morphism(&s, "h")?, self.morphism(&s, "g")?)?;
        Ok(A2Witness { morphism })
    }

    pub fn from_chain(ch: &TwoChain) -> Bundle {
        let mut b = Bundle::new("two-chain");
        b.add_structure("Z", ch.z());
        b.add_structure("X", ch.x());
        b.add_structure("B", ch.b());
        b.add_morphism("t", &ch.t, "Z", "X");
        b.add_morphism("h", &ch.h, "X", "B");
        b
    }

    pub fn to_chain(&self) -> Result<TwoChain> {
        self.expect_type(&["two-chain"])?;
        let s = self.scope()?;
        TwoChain::new(self.morphism(&s, "t")?, self.morphism(&s, "h")?)
    }
}

/// An enumerated corpus, structures inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusFile {
    pub kind: String,
    pub max_size: usize,
    pub provenance: Provenance,
    pub items: Vec<StructureFile>,
}

impl CorpusFile {
    pub fn of(c: &Corpus) -> CorpusFile {
        CorpusFile {
            kind: c.kind.as_str().to_string(),
            max_size: c.max_size,
            provenance: c.provenance.clone(),
            items: c.items.iter().map(|s| StructureFile::of(s)).collect(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("in-memory values serialize")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| IcatError::Format(e.to_string()))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| IcatError::Format(format!("{}: {e}", path.display())))?;
    from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::named;

    #[test]
    fn structure_file_round_trip() {
        let s3 = named::s3();
        let f = StructureFile::of(&s3);
        let back = f.to_structure().unwrap();
        assert_eq!(*back, s3);
        assert_eq!(back.name(), Some("S3"));
        let p = StructureFile::of(&Structure::pointed_set(3));
        assert!(p.table.is_none());
        assert!(!to_json(&p).contains("table"));
    }

    #[test]
    fn structure_refs_accept_names() {
        let text = r#"{"source": "Z4", "target": {"kind": "group", "order": 2, "table": [[0,1],[1,0]]}, "map": [0,1,0,1]}"#;
        let m: MorphismFile = from_json(text).unwrap();
        let h = m.to_morphism(&BTreeMap::new()).unwrap();
        assert_eq!(h.source().order(), 4);
        let bad = r#"{"source": "Z4", "target": "Z2", "map": [0,1,1,1]}"#;
        let m: MorphismFile = from_json(bad).unwrap();
        assert!(m.to_morphism(&BTreeMap::new()).is_err());
    }

    #[test]
    fn invalid_tables_are_rejected() {
        let f = StructureFile {
            kind: "group".into(),
            order: 2,
            table: Some(vec![vec![0, 1], vec![1, 1]]),
            name: None,
        };
        assert!(f.to_structure().is_err());
    }

    #[test]
    fn action_file_field_names() {
        let text = r#"{"X": "Z3", "B": "Z2", "act": [[0,1,2],[0,2,1]]}"#;
        let a: ActionFile = from_json(text).unwrap();
        let act = a.to_action().unwrap();
        assert_eq!(act.apply(1, 1), 2);
        let back = to_json(&ActionFile::of(&act));
        assert!(back.contains("\"X\"") && back.contains("\"act\""));
    }
}
