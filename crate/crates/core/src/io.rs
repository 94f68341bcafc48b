//! JSON, DOT and plain-text renderings of graphs and paths.
//!
//! Weyl group elements are written as 1-based reduced words and times as
//! exact fraction strings.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::crystal::CrystalGraph;
use crate::error::{Error, Result};
use crate::qbg::{EdgeKind, Qbg};
use crate::qls::{RationalPath, ShapeData};
use crate::rational::Rational;
use crate::rootsys::{CartanType, RootSystem, RootVec};
use crate::weyl::{ParabolicJ, WeylElem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPathJson {
    pub cosets: Vec<Vec<usize>>,
    pub times: Vec<Rational>,
}

impl RationalPathJson {
    pub fn from_path(eta: &RationalPath) -> Self {
        RationalPathJson {
            cosets: eta.cosets().iter().map(WeylElem::reduced_word).collect(),
            times: eta.times().to_vec(),
        }
    }

    pub fn to_path(&self, rs: &Arc<RootSystem>) -> Result<RationalPath> {
        let cosets = self
            .cosets
            .iter()
            .map(|w| WeylElem::from_word(rs, w))
            .collect::<Result<Vec<_>>>()?;
        RationalPath::new(cosets, self.times.clone())
    }
}

pub fn path_to_json(eta: &RationalPath) -> String {
    serde_json::to_string(&RationalPathJson::from_path(eta)).expect("serializable")
}

pub fn path_from_json(rs: &Arc<RootSystem>, s: &str) -> Result<RationalPath> {
    let dto: RationalPathJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    dto.to_path(rs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QbgEdgeJson {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub label: RootVec,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QbgJson {
    pub cartan_type: String,
    pub parabolic: Vec<usize>,
    pub vertices: Vec<Vec<usize>>,
    pub edges: Vec<QbgEdgeJson>,
    /// `dist[x][y]`: shortest directed path from vertex `y` to vertex `x`.
    pub dist: Vec<Vec<Option<usize>>>,
}

impl QbgJson {
    pub fn from_qbg(g: &Qbg) -> Self {
        let word = |i: usize| g.vertices()[i].reduced_word();
        QbgJson {
            cartan_type: g.root_system().cartan().to_string(),
            parabolic: g.parabolic().to_vec(),
            vertices: g.vertices().iter().map(WeylElem::reduced_word).collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| QbgEdgeJson {
                    source: word(e.source),
                    target: word(e.target),
                    label: e.label.clone(),
                    kind: e.kind,
                })
                .collect(),
            dist: g.dist_matrix().clone(),
        }
    }

    /// Rebuild the graph from its type and parabolic set, rejecting JSON
    /// whose recorded content disagrees.
    pub fn to_qbg(&self) -> Result<Qbg> {
        let cartan: CartanType = self.cartan_type.parse()?;
        let rs = Arc::new(RootSystem::new(cartan)?);
        let j = ParabolicJ::new(rs.rank(), self.parabolic.iter().copied())?;
        let g = Qbg::build(&rs, &j)?;
        if QbgJson::from_qbg(&g) != *self {
            return Err(Error::Parse("graph content does not match its type and parabolic set".into()));
        }
        Ok(g)
    }
}

pub fn qbg_to_json(g: &Qbg) -> String {
    serde_json::to_string_pretty(&QbgJson::from_qbg(g)).expect("serializable")
}

pub fn qbg_from_json(s: &str) -> Result<Qbg> {
    let dto: QbgJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    dto.to_qbg()
}

pub fn qbg_to_dot(g: &Qbg) -> String {
    let mut out = String::from("digraph qbg {\n");
    for (i, w) in g.vertices().iter().enumerate() {
        writeln!(out, "  v{i} [label=\"{w}\"];").unwrap();
    }
    for e in g.edges() {
        let style = match e.kind {
            EdgeKind::Bruhat => "solid",
            EdgeKind::Quantum => "dashed",
        };
        writeln!(out, "  v{} -> v{} [label=\"{}\", style={style}];", e.source, e.target, e.label).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn qbg_to_text(g: &Qbg) -> String {
    let mut out = String::new();
    for e in g.edges() {
        let kind = match e.kind {
            EdgeKind::Bruhat => "bruhat",
            EdgeKind::Quantum => "quantum",
        };
        writeln!(out, "{} -> {} {} {kind}", g.vertices()[e.source], g.vertices()[e.target], e.label).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeJson {
    pub cartan_type: String,
    pub weight: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub source: usize,
    pub index: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalJson {
    pub shape: ShapeJson,
    pub seed: usize,
    pub nodes: Vec<RationalPathJson>,
    pub arrows: Vec<ArrowJson>,
}

impl CrystalJson {
    pub fn from_graph(shape: &ShapeData, g: &CrystalGraph) -> Self {
        CrystalJson {
            shape: shape_json(shape),
            seed: g.seed,
            nodes: g.nodes.iter().map(RationalPathJson::from_path).collect(),
            arrows: g
                .arrows
                .iter()
                .map(|&(source, index, target)| ArrowJson { source, index, target })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<(ShapeData, CrystalGraph)> {
        let cartan: CartanType = self.shape.cartan_type.parse()?;
        let shape = ShapeData::from_type(cartan, &self.shape.weight)?;
        let nodes = self
            .nodes
            .iter()
            .map(|n| n.to_path(shape.root_system()))
            .collect::<Result<Vec<_>>>()?;
        let n = nodes.len();
        if self.seed >= n || self.arrows.iter().any(|a| a.source >= n || a.target >= n) {
            return Err(Error::Parse("node index out of range".into()));
        }
        let g = CrystalGraph {
            nodes,
            arrows: self.arrows.iter().map(|a| (a.source, a.index, a.target)).collect(),
            seed: self.seed,
        };
        Ok((shape, g))
    }
}

fn shape_json(shape: &ShapeData) -> ShapeJson {
    ShapeJson {
        cartan_type: shape.root_system().cartan().to_string(),
        weight: shape
            .lambda()
            .0
            .iter()
            .map(|c| c.to_integer().expect("integral shape"))
            .collect(),
    }
}

pub fn crystal_to_json(shape: &ShapeData, g: &CrystalGraph) -> String {
    serde_json::to_string_pretty(&CrystalJson::from_graph(shape, g)).expect("serializable")
}

pub fn crystal_from_json(s: &str) -> Result<(ShapeData, CrystalGraph)> {
    let dto: CrystalJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    dto.to_graph()
}

pub fn crystal_to_dot(g: &CrystalGraph) -> String {
    let mut out = String::from("digraph crystal {\n");
    for (i, n) in g.nodes.iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{n}\"];").unwrap();
    }
    for &(s, j, t) in &g.arrows {
        writeln!(out, "  n{s} -> n{t} [label=\"{j}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn crystal_to_text(g: &CrystalGraph) -> String {
    let mut out = String::new();
    for &(s, j, t) in &g.arrows {
        writeln!(out, "{} -{j}-> {}", g.nodes[s], g.nodes[t]).unwrap();
    }
    out
}

pub fn paths_to_json(paths: &[RationalPath]) -> String {
    let dtos: Vec<RationalPathJson> = paths.iter().map(RationalPathJson::from_path).collect();
    serde_json::to_string_pretty(&dtos).expect("serializable")
}
