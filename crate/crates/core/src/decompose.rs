//! Bamboo decomposition of minimal graphs into A_m pieces.
//!
//! Given vertices `x ≠ y` of a minimal graph `G`, the unique path from `x`
//! to `y` is prolonged on both sides to leaves `z_1` (past `x`) and `z_2`
//! (past `y`). Weight-1 vertices are then attached: `w(z_1) - γ(z_1) - 1`
//! of them at `z_1` when positive, and `w(z) - γ(z)` at every other vertex.
//! The resulting supergraph blows down to nothing, and every path from `z_1`
//! to an attached vertex is an A_m piece; one of them carries both `x` and
//! `y`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::classify::is_minimal;
use crate::contraction::{contracts_to_empty, replay, ContractionTrace};
use crate::error::{Error, Result};
use crate::graph::WeightedDualGraph;
use crate::order::escape;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub vertex: String,
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Piece {
    /// The attached weight-1 vertex ending the piece.
    pub weight_one: String,
    /// Supergraph ids from `z_1` to `weight_one`.
    pub path: Vec<String>,
    /// Number of original vertices on the path.
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Designated {
    pub piece: usize,
    pub m: usize,
    /// 1-based positions of `x` and `y` among the piece's original vertices.
    pub x_position: usize,
    pub y_position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionCertificate {
    pub x: String,
    pub y: String,
    pub supergraph: WeightedDualGraph,
    /// Original vertices from `z_1` to `z_2`.
    pub bamboo: Vec<String>,
    pub attached: Vec<Attachment>,
    pub pieces: Vec<Piece>,
    pub designated: Designated,
    pub contraction: ContractionTrace,
}

/// Number of weight-1 vertices attached at `v` when `z_1` is `first`.
fn attach_count(g: &WeightedDualGraph, v: usize, first: usize) -> u32 {
    let w = g.weight(v) as i64;
    let gamma = g.valence(v) as i64;
    let r = if v == first { (w - gamma - 1).max(0) } else { w - gamma };
    debug_assert!(r >= 0, "minimal graphs satisfy w >= γ");
    r.max(0) as u32
}

/// Smallest-index leaf reachable from `end` without crossing `toward`; `end`
/// itself when it is already a leaf on that side.
fn prolong(g: &WeightedDualGraph, end: usize, toward: usize) -> usize {
    let mut seen = vec![false; g.len()];
    seen[end] = true;
    seen[toward] = true;
    let mut queue = VecDeque::from([end]);
    let mut best: Option<usize> = None;
    while let Some(v) = queue.pop_front() {
        if v != end && g.valence(v) == 1 {
            best = Some(best.map_or(v, |b| b.min(v)));
        }
        for &nb in g.neighbors(v) {
            if !seen[nb] {
                seen[nb] = true;
                queue.push_back(nb);
            }
        }
    }
    best.unwrap_or(end)
}

fn fresh_id(taken: &mut BTreeSet<String>, base: &str, k: u32) -> String {
    let mut id = format!("{base}#{k}");
    while taken.contains(&id) {
        id.push('\'');
    }
    taken.insert(id.clone());
    id
}

pub fn decompose_minimal(g: &WeightedDualGraph, x: usize, y: usize) -> Result<DecompositionCertificate> {
    for v in [x, y] {
        if v >= g.len() {
            return Err(Error::UnknownVertex(format!("index {v}")));
        }
    }
    if x == y {
        return Err(Error::SameVertex(x));
    }
    if !is_minimal(g) {
        return Err(Error::NotMinimal);
    }

    let core = g.path(x, y);
    let z1 = prolong(g, x, core[1]);
    let z2 = prolong(g, y, core[core.len() - 2]);
    let bamboo = g.path(z1, z2);
    if !(bamboo.contains(&x) && bamboo.contains(&y)) {
        return Err(Error::NoBambooExtension);
    }

    let n = g.len();
    let counts: Vec<u32> = (0..n).map(|v| attach_count(g, v, z1)).collect();
    let mut taken: BTreeSet<String> = g.ids().iter().cloned().collect();
    let mut ids = g.ids().to_vec();
    let mut weights: Vec<i64> = g.weights().iter().map(|&w| w as i64).collect();
    let mut edges = g.edges().to_vec();
    let mut anchors = Vec::new();
    for (v, &count) in counts.iter().enumerate() {
        for k in 1..=count {
            let new = ids.len();
            ids.push(fresh_id(&mut taken, g.id(v), k));
            weights.push(1);
            edges.push((v, new));
            anchors.push(new);
        }
    }
    let supergraph = WeightedDualGraph::new(ids, weights, &edges, true)?;

    let pieces: Vec<Piece> = anchors
        .iter()
        .map(|&p| {
            let path = supergraph.path(z1, p);
            Piece {
                weight_one: supergraph.id(p).to_string(),
                m: path.iter().filter(|&&v| v < n).count(),
                path: path.iter().map(|&v| supergraph.id(v).to_string()).collect(),
            }
        })
        .collect();

    let designated = pieces
        .iter()
        .enumerate()
        .find_map(|(idx, piece)| {
            let pos = |v: usize| piece.path.iter().position(|id| id == g.id(v)).map(|p| p + 1);
            match (pos(x), pos(y)) {
                (Some(i), Some(j)) => Some(Designated { piece: idx, m: piece.m, x_position: i, y_position: j }),
                _ => None,
            }
        })
        .ok_or(Error::NoBambooExtension)?;

    let contraction = contracts_to_empty(&supergraph);
    if !contraction.is_empty_terminal() {
        return Err(Error::PreconditionViolated(format!(
            "supergraph for ({}, {}) does not blow down to nothing",
            g.id(x),
            g.id(y)
        )));
    }

    Ok(DecompositionCertificate {
        x: g.id(x).to_string(),
        y: g.id(y).to_string(),
        supergraph,
        bamboo: bamboo.iter().map(|&v| g.id(v).to_string()).collect(),
        attached: (0..n).map(|v| Attachment { vertex: g.id(v).to_string(), count: counts[v] }).collect(),
        pieces,
        designated,
        contraction,
    })
}

impl DecompositionCertificate {
    pub fn designated_piece(&self) -> &Piece {
        &self.pieces[self.designated.piece]
    }

    /// Original-graph vertices of the designated piece in order from `z_1`:
    /// position `k` of the quotient A_m maps to entry `k`.
    pub fn quotient_mapping(&self, g: &WeightedDualGraph) -> Vec<usize> {
        self.designated_piece().path.iter().filter_map(|id| g.index_of(id).ok()).collect()
    }

    pub fn total_attached(&self) -> u32 {
        self.attached.iter().map(|a| a.count).sum()
    }

    /// Re-derives every recorded fact from `g` and the supergraph alone.
    pub fn verify(&self, g: &WeightedDualGraph) -> bool {
        self.check(g).is_some()
    }

    fn check(&self, g: &WeightedDualGraph) -> Option<()> {
        let n = g.len();
        let sup = &self.supergraph;
        let x = g.index_of(&self.x).ok()?;
        let y = g.index_of(&self.y).ok()?;
        // g sits inside the supergraph on its first n vertices.
        (sup.is_auxiliary() && sup.len() >= n).then_some(())?;
        (sup.ids()[..n] == *g.ids() && sup.weights()[..n] == *g.weights()).then_some(())?;
        let original_edges: Vec<_> = sup.edges().iter().filter(|&&(a, b)| a < n && b < n).copied().collect();
        (original_edges == g.edges()).then_some(())?;

        // Bamboo: a leaf-to-leaf path of g through x and y.
        let bamboo: Vec<usize> = self.bamboo.iter().map(|id| g.index_of(id).ok()).collect::<Option<_>>()?;
        let (z1, z2) = (*bamboo.first()?, *bamboo.last()?);
        (g.path(z1, z2) == bamboo).then_some(())?;
        (g.valence(z1) <= 1 && g.valence(z2) <= 1).then_some(())?;
        let (px, py) = (bamboo.iter().position(|&v| v == x)?, bamboo.iter().position(|&v| v == y)?);
        (px < py).then_some(())?;

        // Attached vertices: weight 1, leaves, counts as the rule prescribes.
        (self.attached.len() == n).then_some(())?;
        let mut per_vertex = vec![0u32; n];
        for v in n..sup.len() {
            (sup.weight(v) == 1 && sup.valence(v) == 1 && sup.neighbors(v)[0] < n).then_some(())?;
            per_vertex[sup.neighbors(v)[0]] += 1;
        }
        for (v, a) in self.attached.iter().enumerate() {
            (a.vertex == g.id(v) && a.count == per_vertex[v] && a.count == attach_count(g, v, z1)).then_some(())?;
        }

        // One piece per attached vertex, each the path from z_1.
        (self.pieces.len() == sup.len() - n).then_some(())?;
        for piece in &self.pieces {
            let end = sup.index_of(&piece.weight_one).ok()?;
            let path: Vec<String> = sup.path(z1, end).iter().map(|&v| sup.id(v).to_string()).collect();
            (path == piece.path && piece.m == path.len() - 1).then_some(())?;
        }
        let d = &self.designated;
        let piece = self.pieces.get(d.piece)?;
        (d.m == piece.m && d.x_position < d.y_position && d.y_position <= d.m).then_some(())?;
        (piece.path[d.x_position - 1] == self.x && piece.path[d.y_position - 1] == self.y).then_some(())?;

        (self.contraction.is_empty_terminal() && replay(sup, &self.contraction)).then_some(())
    }

    /// Graphviz text of the supergraph; attached vertices are shaded and the
    /// designated piece is drawn bold.
    pub fn to_dot(&self) -> String {
        let sup = &self.supergraph;
        let n = sup.len() - self.pieces.len();
        let piece: BTreeSet<&str> = self.designated_piece().path.iter().map(String::as_str).collect();
        let mut out = String::from("graph decomposition {\n");
        for v in 0..sup.len() {
            let id = escape(sup.id(v));
            let style = if v >= n { ", style=filled, fillcolor=lightgrey, shape=box" } else { "" };
            let _ = writeln!(out, "  \"{id}\" [label=\"{id} ({})\"{style}];", sup.weight(v));
        }
        for &(a, b) in sup.edges() {
            let bold = piece.contains(sup.id(a)) && piece.contains(sup.id(b));
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\"{};",
                escape(sup.id(a)),
                escape(sup.id(b)),
                if bold { " [penwidth=3]" } else { "" }
            );
        }
        out.push_str("}\n");
        out
    }
}
