//! Quiver-with-relations input format and its validation.
//!
//! The JSON shape is fixed:
//!
//! ```json
//! {
//!   "field": {"kind": "prime", "p": 2},
//!   "vertices": ["1", "2"],
//!   "arrows": [{"name": "a", "from": "1", "to": "2"}],
//!   "relations": [[{"coeff": "1", "path": ["a", "b"]}]],
//!   "nilpotency_bound": 4
//! }
//! ```
//!
//! A path `["a", "b"]` traverses `a` first. Coefficients are decimal
//! integers or `a/b` fractions. `name` and `universe` are optional
//! metadata used for reporting and for enumeration defaults.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverPresentation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<RelationTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotency_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universe: Option<UniverseSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationTerm {
    pub coeff: String,
    pub path: Vec<String>,
}

/// Universe metadata shipped with a fixture: the per-vertex dimension
/// bound used for indecomposable enumeration and whether that bound is
/// known to capture every indecomposable (representation-finite case).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniverseSpec {
    pub certified: bool,
    pub bound: Vec<usize>,
}

/// Name-resolved quiver data: vertices and arrows by index, relation
/// terms as (coefficient, arrow-index word in traversal order).
#[derive(Clone, Debug)]
pub struct ResolvedQuiver {
    pub name: String,
    pub field: FieldSpec,
    pub vertex_names: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<(Scalar, Vec<usize>)>>,
    pub nilpotency_bound: usize,
    pub universe: Option<UniverseSpec>,
}

#[derive(Clone, Debug)]
pub struct Arrow {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

pub fn parse_quiver_json(text: &str) -> Result<QuiverPresentation> {
    let pres: QuiverPresentation =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad quiver JSON: {e}")))?;
    Ok(pres)
}

impl QuiverPresentation {
    pub fn resolve(&self) -> Result<ResolvedQuiver> {
        self.field.validate()?;
        if self.vertices.is_empty() {
            return Err(Error::invalid("quiver needs at least one vertex"));
        }
        let mut vertex_index: HashMap<&str, usize> = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if vertex_index.insert(v.as_str(), i).is_some() {
                return Err(Error::invalid(format!("duplicate vertex {v:?}")));
            }
        }
        let mut arrow_index: HashMap<&str, usize> = HashMap::new();
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for (i, a) in self.arrows.iter().enumerate() {
            if arrow_index.insert(a.name.as_str(), i).is_some() {
                return Err(Error::invalid(format!("duplicate arrow {:?}", a.name)));
            }
            let from = *vertex_index
                .get(a.from.as_str())
                .ok_or_else(|| Error::invalid(format!("arrow {:?}: unknown vertex {:?}", a.name, a.from)))?;
            let to = *vertex_index
                .get(a.to.as_str())
                .ok_or_else(|| Error::invalid(format!("arrow {:?}: unknown vertex {:?}", a.name, a.to)))?;
            arrows.push(Arrow {
                name: a.name.clone(),
                from,
                to,
            });
        }

        let mut relations = Vec::with_capacity(self.relations.len());
        for (ri, rel) in self.relations.iter().enumerate() {
            if rel.is_empty() {
                return Err(Error::invalid(format!("relation {ri} has no terms")));
            }
            let mut terms = Vec::with_capacity(rel.len());
            let mut endpoints: Option<(usize, usize)> = None;
            for term in rel {
                let coeff = self.field.parse_scalar(&term.coeff)?;
                if term.path.len() < 2 {
                    return Err(Error::invalid(format!(
                        "relation {ri}: term path {:?} shorter than 2 (admissibility)",
                        term.path
                    )));
                }
                let mut word = Vec::with_capacity(term.path.len());
                for name in &term.path {
                    let idx = *arrow_index.get(name.as_str()).ok_or_else(|| {
                        Error::invalid(format!("relation {ri}: unknown arrow {name:?}"))
                    })?;
                    word.push(idx);
                }
                for pair in word.windows(2) {
                    if arrows[pair[0]].to != arrows[pair[1]].from {
                        return Err(Error::invalid(format!(
                            "relation {ri}: arrows {:?} then {:?} do not compose",
                            arrows[pair[0]].name, arrows[pair[1]].name
                        )));
                    }
                }
                let span = (arrows[word[0]].from, arrows[*word.last().unwrap()].to);
                match endpoints {
                    None => endpoints = Some(span),
                    Some(e) if e == span => {}
                    Some(_) => {
                        return Err(Error::invalid(format!(
                            "relation {ri}: terms are not parallel paths"
                        )))
                    }
                }
                terms.push((coeff, word));
            }
            relations.push(terms);
        }

        if let Some(u) = &self.universe {
            if u.bound.len() != self.vertices.len() {
                return Err(Error::invalid(format!(
                    "universe bound has {} entries for {} vertices",
                    u.bound.len(),
                    self.vertices.len()
                )));
            }
        }

        let bound = match self.nilpotency_bound {
            Some(b) if b >= 1 => b as usize,
            Some(b) => {
                return Err(Error::invalid(format!("nilpotency_bound {b} must be >= 1")))
            }
            None => (self.arrows.len() * 10).max(1),
        };

        Ok(ResolvedQuiver {
            name: self.name.clone().unwrap_or_else(|| "unnamed".into()),
            field: self.field,
            vertex_names: self.vertices.clone(),
            arrows,
            relations,
            nilpotency_bound: bound,
            universe: self.universe.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const A2_JSON: &str = r#"{
        "name": "a2",
        "field": {"kind": "prime", "p": 2},
        "vertices": ["1", "2"],
        "arrows": [{"name": "a", "from": "1", "to": "2"}],
        "relations": []
    }"#;

    #[test]
    fn parses_a2() {
        let q = parse_quiver_json(A2_JSON).unwrap().resolve().unwrap();
        assert_eq!(q.vertex_names, vec!["1", "2"]);
        assert_eq!(q.arrows.len(), 1);
        assert_eq!((q.arrows[0].from, q.arrows[0].to), (0, 1));
        assert_eq!(q.nilpotency_bound, 10);
    }

    #[test]
    fn parses_loop_with_relation() {
        let text = r#"{
            "field": {"kind": "rational"},
            "vertices": ["v"],
            "arrows": [{"name": "x", "from": "v", "to": "v"}],
            "relations": [[{"coeff": "1", "path": ["x", "x"]}]],
            "nilpotency_bound": 2
        }"#;
        let q = parse_quiver_json(text).unwrap().resolve().unwrap();
        assert_eq!(q.relations.len(), 1);
        assert_eq!(q.relations[0][0].1, vec![0, 0]);
        assert_eq!(q.nilpotency_bound, 2);
    }

    #[test]
    fn rejects_short_relation_path() {
        let text = r#"{
            "field": {"kind": "prime", "p": 2},
            "vertices": ["v"],
            "arrows": [{"name": "x", "from": "v", "to": "v"}],
            "relations": [[{"coeff": "1", "path": ["x"]}]]
        }"#;
        let err = parse_quiver_json(text).unwrap().resolve().unwrap_err();
        assert!(err.to_string().contains("admissibility"));
    }

    #[test]
    fn rejects_non_composable_and_non_parallel() {
        let base = r#"{
            "field": {"kind": "prime", "p": 2},
            "vertices": ["1", "2", "3"],
            "arrows": [
                {"name": "a", "from": "1", "to": "2"},
                {"name": "b", "from": "2", "to": "3"},
                {"name": "c", "from": "1", "to": "3"}
            ],
            "relations": [REL]
        }"#;
        let bad_compose = base.replace("REL", r#"[{"coeff": "1", "path": ["b", "a"]}]"#);
        assert!(parse_quiver_json(&bad_compose).unwrap().resolve().is_err());

        let bad_parallel =
            base.replace("REL", r#"[{"coeff": "1", "path": ["a", "b"]}, {"coeff": "1", "path": ["b", "b"]}]"#);
        assert!(parse_quiver_json(&bad_parallel).unwrap().resolve().is_err());

        let good = base.replace("REL", r#"[{"coeff": "1", "path": ["a", "b"]}, {"coeff": "-1", "path": ["c", "c"]}]"#);
        // c*c does not compose (3 != 1), so this must still fail.
        assert!(parse_quiver_json(&good).unwrap().resolve().is_err());

        let really_good = base.replace("REL", r#"[{"coeff": "1", "path": ["a", "b"]}]"#);
        assert!(parse_quiver_json(&really_good).unwrap().resolve().is_ok());
    }

    #[test]
    fn rejects_unknown_fields_and_bad_schema() {
        assert!(parse_quiver_json(r#"{"field": {"kind": "prime", "p": 2}}"#).is_err());
        assert!(parse_quiver_json(r#"{"field": {"kind":"prime","p":2}, "vertices": ["1"], "arrows": [], "bogus": 1}"#).is_err());
        assert!(parse_quiver_json("not json at all").is_err());
    }

    #[test]
    fn rejects_duplicate_names_and_unknown_endpoints() {
        let dup = r#"{
            "field": {"kind": "prime", "p": 2},
            "vertices": ["1", "1"],
            "arrows": []
        }"#;
        assert!(parse_quiver_json(dup).unwrap().resolve().is_err());
        let bad_endpoint = r#"{
            "field": {"kind": "prime", "p": 2},
            "vertices": ["1"],
            "arrows": [{"name": "a", "from": "1", "to": "2"}]
        }"#;
        assert!(parse_quiver_json(bad_endpoint).unwrap().resolve().is_err());
    }
}
