//! Weighted dual resolution graphs.
//!
//! A vertex stands for an exceptional curve, an edge for a transverse
//! intersection, and the weight of a vertex is minus its self-intersection.
//! Vertex ids are user strings; everything else in the crate indexes
//! vertices densely in document order.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedDualGraph {
    ids: Vec<String>,
    weights: Vec<u32>,
    /// Normalized `(a, b)` with `a < b`, sorted.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    auxiliary: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct VertexDoc {
    id: String,
    w: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<VertexDoc>,
    edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    auxiliary: bool,
}

impl WeightedDualGraph {
    /// Builds and validates a graph.
    ///
    /// Weight 1 is only accepted when `auxiliary` is set: minimal resolutions
    /// never carry (-1)-curves, but the supergraphs used for blow-down checks do.
    pub fn new(
        ids: Vec<String>,
        weights: Vec<i64>,
        edges: &[(usize, usize)],
        auxiliary: bool,
    ) -> Result<Self> {
        let n = ids.len();
        if n == 0 {
            return Err(Error::MalformedDocument("graph has no vertices".into()));
        }
        if weights.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: weights.len() });
        }
        let mut seen = BTreeSet::new();
        for id in &ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::MalformedDocument(format!("duplicate vertex id {id}")));
            }
        }
        let min_weight = if auxiliary { 1 } else { 2 };
        let mut w = Vec::with_capacity(n);
        for (id, &weight) in ids.iter().zip(&weights) {
            if weight < min_weight || weight > u32::MAX as i64 {
                return Err(Error::BadWeight { vertex: id.clone(), weight });
            }
            w.push(weight as u32);
        }

        let mut normalized = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::MalformedDocument(format!("edge ({a}, {b}) out of range")));
            }
            if a == b {
                return Err(Error::MalformedDocument(format!("self-loop at {}", ids[a])));
            }
            if !normalized.insert((a.min(b), a.max(b))) {
                return Err(Error::MalformedDocument(format!(
                    "multi-edge between {} and {}",
                    ids[a], ids[b]
                )));
            }
        }
        let edges: Vec<(usize, usize)> = normalized.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        if edges.len() + 1 != n {
            return Err(Error::NotATree(format!(
                "{} vertices but {} edges",
                n,
                edges.len()
            )));
        }
        let reached = bfs_order(&adjacency, 0).len();
        if reached != n {
            return Err(Error::NotATree(format!("only {reached} of {n} vertices connected")));
        }

        Ok(Self { ids, weights: w, edges, adjacency, auxiliary })
    }

    /// Graph with ids `E1..En`.
    pub fn from_weights(weights: &[i64], edges: &[(usize, usize)]) -> Result<Self> {
        let ids = (1..=weights.len()).map(|k| format!("E{k}")).collect();
        Self::new(ids, weights.to_vec(), edges, false)
    }

    /// Auxiliary graph with ids `E1..En`; weight 1 allowed.
    pub fn auxiliary_from_weights(weights: &[i64], edges: &[(usize, usize)]) -> Result<Self> {
        let ids = (1..=weights.len()).map(|k| format!("E{k}")).collect();
        Self::new(ids, weights.to_vec(), edges, true)
    }

    /// Path-shaped graph with the given weights.
    pub fn bamboo(weights: &[i64]) -> Result<Self> {
        let edges: Vec<_> = (1..weights.len()).map(|k| (k - 1, k)).collect();
        Self::from_weights(weights, &edges)
    }

    /// The A_n graph: a path of n weight-2 vertices `E1..En`.
    pub fn a_n(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::PreconditionViolated("A_n needs n >= 1".into()));
        }
        Self::bamboo(&vec![2; n])
    }

    /// E_6 in the canonical labeling: chain v1-v2-v3-v4-v5 with v6 on v3.
    pub fn e6() -> Self {
        let ids = (1..=6).map(|k| format!("v{k}")).collect();
        Self::new(ids, vec![2; 6], &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)], false)
            .expect("E_6 is a valid tree")
    }

    /// D_n-shaped graph (n >= 4) with the given weights: chain `E1..E(n-1)`
    /// and `En` attached to `E(n-2)`.
    pub fn d_shape(weights: &[i64]) -> Result<Self> {
        let n = weights.len();
        if n < 4 {
            return Err(Error::PreconditionViolated("D_n needs n >= 4".into()));
        }
        let mut edges: Vec<_> = (1..n - 1).map(|k| (k - 1, k)).collect();
        edges.push((n - 3, n - 1));
        Self::from_weights(weights, &edges)
    }

    /// The D_n rational double point graph (all weights 2).
    pub fn d_n(n: usize) -> Result<Self> {
        Self::d_shape(&vec![2; n])
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.ids
            .iter()
            .position(|x| x == id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.weights[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Number of edges at `v` (the valence).
    pub fn valence(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_auxiliary(&self) -> bool {
        self.auxiliary
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.valence(v) <= 1).collect()
    }

    /// Intersection matrix: `-w(i)` on the diagonal, 1 between adjacent vertices.
    pub fn intersection_matrix(&self) -> RationalMatrix {
        let n = self.len();
        let mut entries = vec![vec![0i64; n]; n];
        for (v, row) in entries.iter_mut().enumerate() {
            row[v] = -(self.weights[v] as i64);
        }
        for &(a, b) in &self.edges {
            entries[a][b] = 1;
            entries[b][a] = 1;
        }
        RationalMatrix::from_integers(&entries).expect("square by construction")
    }

    /// `(M z)_k` for an integer vector `z`, computed exactly.
    pub(crate) fn apply_intersection(&self, z: &[i64]) -> Vec<i128> {
        (0..self.len())
            .map(|k| {
                let mut acc = -(self.weights[k] as i128) * z[k] as i128;
                for &nb in &self.adjacency[k] {
                    acc += z[nb] as i128;
                }
                acc
            })
            .collect()
    }

    /// Unique path between two vertices, both ends included.
    pub fn path(&self, from: usize, to: usize) -> Vec<usize> {
        let n = self.len();
        let mut parent = vec![usize::MAX; n];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &nb in &self.adjacency[v] {
                if parent[nb] == usize::MAX {
                    parent[nb] = v;
                    queue.push_back(nb);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Parses the JSON graph document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDoc =
            serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
        Self::from_doc(doc)
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self> {
        let doc = GraphDoc::deserialize(value).map_err(|e| Error::MalformedDocument(e.to_string()))?;
        Self::from_doc(doc)
    }

    fn from_doc(doc: GraphDoc) -> Result<Self> {
        let mut index = HashMap::new();
        for (k, v) in doc.vertices.iter().enumerate() {
            if index.insert(v.id.clone(), k).is_some() {
                return Err(Error::MalformedDocument(format!("duplicate vertex id {}", v.id)));
            }
        }
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::MalformedDocument(format!("edge mentions unknown vertex {id}")))
        };
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (a, b) in &doc.edges {
            edges.push((lookup(a)?, lookup(b)?));
        }
        let ids = doc.vertices.iter().map(|v| v.id.clone()).collect();
        let weights = doc.vertices.iter().map(|v| v.w).collect();
        Self::new(ids, weights, &edges, doc.auxiliary)
    }

    fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            vertices: self
                .ids
                .iter()
                .zip(&self.weights)
                .map(|(id, &w)| VertexDoc { id: id.clone(), w: w as i64 })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| (self.ids[a].clone(), self.ids[b].clone()))
                .collect(),
            auxiliary: self.auxiliary,
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_doc()).expect("graph documents always serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("graph documents always serialize")
    }
}

impl Serialize for WeightedDualGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightedDualGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = GraphDoc::deserialize(deserializer)?;
        Self::from_doc(doc).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn bfs_order(adjacency: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut seen = vec![false; adjacency.len()];
    seen[start] = true;
    let mut order = vec![start];
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &nb in &adjacency[v] {
            if !seen[nb] {
                seen[nb] = true;
                order.push(nb);
            }
        }
    }
    order
}
