//! JSON graph documents and DIMACS CNF.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::drawing::Planarization;
use crate::error::{Error, Result};
use crate::graph::{AnchoredInstance, Color, CnfFormula, Edge, PPInstance, VertexId, WeightedMultigraph};
use crate::poly::OmegaPoly;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<Color>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: String,
    pub v: String,
    pub w: OmegaPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub forbidden: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartsRecord {
    pub p1: Vec<String>,
    pub p2: Vec<String>,
}

/// Named vertex and edge groups attached to generated instances.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Features {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vertices: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub edges: BTreeMap<String, Vec<usize>>,
}

impl Features {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default)]
    pub anchors: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<PartsRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub features: Option<Features>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planarization: Option<Planarization>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

/// A parsed graph document with ids resolved.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub graph: WeightedMultigraph,
    pub anchors: Vec<VertexId>,
    pub parts: Option<(BTreeSet<VertexId>, BTreeSet<VertexId>)>,
    pub features: Features,
    pub planarization: Option<Planarization>,
    pub meta: Option<serde_json::Value>,
}

impl Document {
    pub fn from_graph(graph: WeightedMultigraph) -> Self {
        Document { graph, ..Default::default() }
    }

    pub fn from_anchored(a: &AnchoredInstance) -> Self {
        Document { graph: a.graph.clone(), anchors: a.anchors.clone(), ..Default::default() }
    }

    pub fn from_pp(p: &PPInstance) -> Self {
        Document {
            graph: p.base.graph.clone(),
            anchors: p.base.anchors.clone(),
            parts: Some((p.part1.clone(), p.part2.clone())),
            ..Default::default()
        }
    }

    pub fn anchored(&self) -> Result<AnchoredInstance> {
        AnchoredInstance::new(self.graph.clone(), self.anchors.clone())
    }

    pub fn pp(&self) -> Result<PPInstance> {
        let (p1, p2) = self
            .parts
            .clone()
            .ok_or_else(|| Error::Invalid("document has no `parts` block".into()))?;
        Ok(PPInstance { base: self.anchored()?, part1: p1, part2: p2 })
    }

    pub fn to_file(&self) -> GraphFile {
        let g = &self.graph;
        let names = |set: &BTreeSet<VertexId>| set.iter().map(|&v| g.name(v).to_string()).collect();
        GraphFile {
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexRecord {
                    id: v.name.clone(),
                    label: v.label.clone(),
                    color: (v.color != Color::None).then_some(v.color),
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    u: g.name(e.u).to_string(),
                    v: g.name(e.v).to_string(),
                    w: e.weight.clone(),
                    label: e.label.clone(),
                    forbidden: e.forbidden,
                })
                .collect(),
            anchors: self.anchors.iter().map(|&a| g.name(a).to_string()).collect(),
            parts: self.parts.as_ref().map(|(a, b)| PartsRecord { p1: names(a), p2: names(b) }),
            features: (!self.features.is_empty()).then(|| self.features.clone()),
            planarization: self.planarization.clone(),
            meta: self.meta.clone(),
        }
    }

    pub fn from_file(file: GraphFile) -> Result<Self> {
        let mut g = WeightedMultigraph::new();
        for (i, v) in file.vertices.iter().enumerate() {
            g.add_vertex_with(v.id.clone(), v.label.clone(), v.color.unwrap_or_default())
                .map_err(|e| Error::parse(format!("vertices[{i}].id"), e.to_string()))?;
        }
        let lookup = |field: String, id: &str, g: &WeightedMultigraph| {
            g.id(id).ok_or_else(|| Error::parse(field, format!("unknown vertex `{id}`")))
        };
        for (i, e) in file.edges.iter().enumerate() {
            let u = lookup(format!("edges[{i}].u"), &e.u, &g)?;
            let v = lookup(format!("edges[{i}].v"), &e.v, &g)?;
            g.push_edge(Edge { u, v, weight: e.w.clone(), label: e.label.clone(), forbidden: e.forbidden })
                .map_err(|err| Error::parse(format!("edges[{i}]"), err.to_string()))?;
        }
        let mut anchors = Vec::new();
        for (i, a) in file.anchors.iter().enumerate() {
            anchors.push(lookup(format!("anchors[{i}]"), a, &g)?);
        }
        let parts = match &file.parts {
            None => None,
            Some(p) => {
                let mut sets = [BTreeSet::new(), BTreeSet::new()];
                for (k, list) in [&p.p1, &p.p2].into_iter().enumerate() {
                    for (i, id) in list.iter().enumerate() {
                        sets[k].insert(lookup(format!("parts.p{}[{i}]", k + 1), id, &g)?);
                    }
                }
                let [a, b] = sets;
                Some((a, b))
            }
        };
        if let Some(p) = &file.planarization {
            if p.crossings.len() != g.edge_count() {
                return Err(Error::parse(
                    "planarization.crossings",
                    format!("expected {} lists, found {}", g.edge_count(), p.crossings.len()),
                ));
            }
        }
        AnchoredInstance::new(g.clone(), anchors.clone()).map_err(|e| Error::parse("anchors", e.to_string()))?;
        Ok(Document {
            graph: g,
            anchors,
            parts,
            features: file.features.unwrap_or_default(),
            planarization: file.planarization,
            meta: file.meta,
        })
    }

    pub fn feature_edges(&self, name: &str) -> Result<&[usize]> {
        self.features
            .edges
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Invalid(format!("no edge feature `{name}`")))
    }

    pub fn feature_vertices(&self, name: &str) -> Result<Vec<VertexId>> {
        let list = self
            .features
            .vertices
            .get(name)
            .ok_or_else(|| Error::Invalid(format!("no vertex feature `{name}`")))?;
        list.iter()
            .map(|n| self.graph.id(n).ok_or_else(|| Error::Invalid(format!("unknown vertex `{n}`"))))
            .collect()
    }
}

pub fn parse_graph(text: &str) -> Result<Document> {
    let file: GraphFile = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    Document::from_file(file)
}

pub fn serialize_graph(doc: &Document) -> String {
    serde_json::to_string_pretty(&doc.to_file()).expect("graph documents serialize")
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let loc = || format!("line {}", lineno + 1);
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if header.is_some() {
                return Err(Error::parse(loc(), "duplicate problem line"));
            }
            if fields.len() != 3 || fields[0] != "cnf" {
                return Err(Error::parse(loc(), "expected `p cnf <vars> <clauses>`"));
            }
            let vars = fields[1].parse().map_err(|_| Error::parse(loc(), "bad variable count"))?;
            let count = fields[2].parse().map_err(|_| Error::parse(loc(), "bad clause count"))?;
            header = Some((vars, count));
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(Error::parse(loc(), "clause before problem line"));
        };
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| Error::parse(loc(), format!("bad literal `{tok}`")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(Error::parse(loc(), "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() as usize > vars {
                    return Err(Error::parse(loc(), format!("literal {lit} exceeds {vars} variables")));
                }
                current.push(lit);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| Error::parse("end of input", "missing problem line"))?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(Error::parse("end of input", format!("header declares {count} clauses, found {}", clauses.len())));
    }
    CnfFormula::new(vars, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph() {
        let doc = parse_graph(r#"{"vertices":[],"edges":[]}"#).unwrap();
        assert_eq!(doc.graph.vertex_count(), 0);
        assert!(doc.anchors.is_empty());
    }

    #[test]
    fn round_trip() {
        let text = r#"{"vertices":[{"id":"a","color":"red"},{"id":"b"}],
            "edges":[{"u":"a","v":"b","w":{"terms":[[2,3,2],[0,-1,1]]},"label":"x"}],
            "anchors":["b","a"],"parts":{"p1":["a","b"],"p2":[]}}"#;
        let doc = parse_graph(text).unwrap();
        assert_eq!(doc.graph.edge(0).weight, OmegaPoly::term(3, 2, 2) - OmegaPoly::one());
        let again = parse_graph(&serialize_graph(&doc)).unwrap();
        assert_eq!(serialize_graph(&again), serialize_graph(&doc));
    }

    #[test]
    fn errors_name_the_field() {
        let err = parse_graph(r#"{"vertices":[{"id":"a"}],"edges":[{"u":"a","v":"q","w":{"terms":[[0,1,1]]}}]}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("edges[0].v"), "{err}");
        let err = parse_graph("{\n  \"vertices\": [}").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn dimacs() {
        let f = parse_dimacs("c demo\np cnf 2 1\n1 -2 0\n").unwrap();
        assert_eq!(f.num_vars, 2);
        assert_eq!(f.clauses, vec![vec![1, -2]]);
        assert!(parse_dimacs("p cnf 2 1\n3 0\n").is_err());
        assert!(parse_dimacs("1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 0\n").is_err());
    }
}
