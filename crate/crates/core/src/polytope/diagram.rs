//! Coxeter diagrams: one node per facet, `m - 2` edges for an angle `pi/m`,
//! a dashed edge for angle 0 and a dotted edge for divergent facets.

use std::fmt::Write;

use petgraph::algo::is_isomorphic_matching;
use petgraph::graph::UnGraph;
use serde::Serialize;

use super::angle::{classify_angle, AngleTag, OffendingPair};
use super::ConePolytope;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    /// `m - 2` parallel edges for angle `pi/m`, `m >= 3`.
    Multi(u32),
    Dashed,
    Dotted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramEdge {
    pub a: usize,
    pub b: usize,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoxeterDiagram {
    pub nodes: usize,
    pub edges: Vec<DiagramEdge>,
}

impl CoxeterDiagram {
    pub fn from_edges(nodes: usize, edges: &[(usize, usize, EdgeKind)]) -> Self {
        Self {
            nodes,
            edges: edges
                .iter()
                .map(|&(a, b, kind)| DiagramEdge { a, b, kind })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> UnGraph<(), EdgeKind> {
        let mut g = UnGraph::with_capacity(self.nodes, self.edges.len());
        let idx: Vec<_> = (0..self.nodes).map(|_| g.add_node(())).collect();
        for e in &self.edges {
            g.add_edge(idx[e.a], idx[e.b], e.kind);
        }
        g
    }

    /// Isomorphism of edge-labelled graphs.
    pub fn is_isomorphic_to(&self, other: &CoxeterDiagram) -> bool {
        is_isomorphic_matching(
            &self.to_graph(),
            &other.to_graph(),
            |_, _| true,
            |a, b| a == b,
        )
    }

    pub fn count(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.a == node || e.b == node)
            .count()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph coxeter {\n  node [shape=circle];\n");
        for i in 0..self.nodes {
            let _ = writeln!(s, "  v{i};");
        }
        for e in &self.edges {
            match e.kind {
                EdgeKind::Multi(k) => {
                    for _ in 0..k {
                        let _ = writeln!(s, "  v{} -- v{};", e.a, e.b);
                    }
                }
                EdgeKind::Dashed => {
                    let _ = writeln!(s, "  v{} -- v{} [style=dashed];", e.a, e.b);
                }
                EdgeKind::Dotted => {
                    let _ = writeln!(s, "  v{} -- v{} [style=dotted];", e.a, e.b);
                }
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_ascii(&self) -> String {
        let mut s = format!("{} nodes, {} edges\n", self.nodes, self.edges.len());
        for e in &self.edges {
            let desc = match e.kind {
                EdgeKind::Multi(1) => "single (pi/3)".to_string(),
                EdgeKind::Multi(k) => format!("{k}-fold (pi/{})", k + 2),
                EdgeKind::Dashed => "dashed (angle 0)".to_string(),
                EdgeKind::Dotted => "dotted (divergent)".to_string(),
            };
            let _ = writeln!(s, "v{} -- v{}  {desc}", e.a, e.b);
        }
        s
    }
}

/// Fails with [`Error::NotCoxeter`] when some pair has an angle that is not
/// `0` or a submultiple of `pi` and does not diverge.
pub fn coxeter_diagram(p: &ConePolytope) -> Result<CoxeterDiagram> {
    let hs = p.halfspaces();
    let mut edges = Vec::new();
    let mut bad: Vec<OffendingPair> = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            let angle = classify_angle(&hs[i], &hs[j])?;
            let kind = match angle.tag {
                AngleTag::PiOver(2) => continue,
                AngleTag::PiOver(m) => EdgeKind::Multi(m - 2),
                AngleTag::ZeroAngle => EdgeKind::Dashed,
                AngleTag::Divergent => EdgeKind::Dotted,
                AngleTag::NonSubmultiple => {
                    bad.push(OffendingPair { i, j, angle });
                    continue;
                }
            };
            edges.push(DiagramEdge { a: i, b: j, kind });
        }
    }
    if !bad.is_empty() {
        return Err(Error::NotCoxeter(bad.iter().map(|o| (o.i, o.j)).collect()));
    }
    Ok(CoxeterDiagram {
        nodes: hs.len(),
        edges,
    })
}
