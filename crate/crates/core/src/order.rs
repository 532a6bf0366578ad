//! The order relation between exceptional divisors.
//!
//! For vertices `i ≠ j`, an anti-nef cycle with `m_i < m_j` stands for a
//! function whose order along `E_i` is below its order along `E_j`, which
//! rules out `N̄_i ⊂ N̄_j`. Whether such a cycle exists is decided on the ray
//! basis alone.

use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::cycle::{is_anti_nef, Cycle, RayBasis};
use crate::error::{Error, Result};
use crate::graph::WeightedDualGraph;

/// Header attached to every relation table and certificate.
pub const SCOPE_NOTE: &str = "orders are decided on negative-definite intersection matrices only; \
anti-nef cycles stand for functions through Artin's realization theorem (rational case)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    /// Witnesses both ways: neither closure contains the other.
    Incomparable,
    /// `E_i < E_j`: only `m_i < m_j` is realizable.
    Less,
    /// `E_j < E_i`.
    Greater,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NashRelation {
    pub i: usize,
    pub j: usize,
    pub verdict: Verdict,
    /// Anti-nef cycle with `m_i < m_j`.
    pub witness_ij: Option<Cycle>,
    /// Anti-nef cycle with `m_j < m_i`.
    pub witness_ji: Option<Cycle>,
}

impl NashRelation {
    pub fn from_witnesses(
        i: usize,
        j: usize,
        witness_ij: Option<Cycle>,
        witness_ji: Option<Cycle>,
    ) -> Result<Self> {
        let verdict = match (&witness_ij, &witness_ji) {
            (Some(_), Some(_)) => Verdict::Incomparable,
            (Some(_), None) => Verdict::Less,
            (None, Some(_)) => Verdict::Greater,
            (None, None) => return Err(Error::EqualityDetected(i, j)),
        };
        Ok(Self { i, j, verdict, witness_ij, witness_ji })
    }

    /// `N̄_i ⊄ N̄_j` follows from the order criterion.
    pub fn proves_i_not_in_j(&self) -> bool {
        self.witness_ij.is_some()
    }

    pub fn proves_j_not_in_i(&self) -> bool {
        self.witness_ji.is_some()
    }

    /// Recomputes the verdict from the witnesses alone.
    pub fn verify(&self, g: &WeightedDualGraph) -> Result<bool> {
        let check = |w: &Option<Cycle>, small: usize, large: usize| -> Result<bool> {
            match w {
                None => Ok(true),
                Some(z) => Ok(is_anti_nef(g, z)? && z.0[small] < z.0[large]),
            }
        };
        if !check(&self.witness_ij, self.i, self.j)? || !check(&self.witness_ji, self.j, self.i)? {
            return Ok(false);
        }
        let recomputed =
            Self::from_witnesses(self.i, self.j, self.witness_ij.clone(), self.witness_ji.clone())?;
        Ok(recomputed.verdict == self.verdict)
    }

    pub fn reversed(&self) -> Self {
        let verdict = match self.verdict {
            Verdict::Incomparable => Verdict::Incomparable,
            Verdict::Less => Verdict::Greater,
            Verdict::Greater => Verdict::Less,
        };
        Self {
            i: self.j,
            j: self.i,
            verdict,
            witness_ij: self.witness_ji.clone(),
            witness_ji: self.witness_ij.clone(),
        }
    }
}

/// Ray basis of one graph, reused across pairs.
#[derive(Debug, Clone)]
pub struct OrderEngine {
    basis: RayBasis,
}

impl OrderEngine {
    pub fn new(g: &WeightedDualGraph) -> Result<Self> {
        Ok(Self { basis: RayBasis::new(g)? })
    }

    pub fn basis(&self) -> &RayBasis {
        &self.basis
    }

    pub fn relate(&self, i: usize, j: usize) -> Result<NashRelation> {
        let witness_ij = self.basis.witness(i, j)?;
        let witness_ji = self.basis.witness(j, i)?;
        NashRelation::from_witnesses(i, j, witness_ij, witness_ji)
    }
}

pub fn relate(g: &WeightedDualGraph, i: usize, j: usize) -> Result<NashRelation> {
    if i == j {
        return Err(Error::SameVertex(i));
    }
    OrderEngine::new(g)?.relate(i, j)
}

/// Canonical A_n witnesses: the order cycles of `x` and `y` on
/// `z^{n+1} = xy`, namely `(1, 2, …, n)` and `(n, …, 2, 1)`.
pub fn a_n_coordinate_cycles(n: usize) -> (Cycle, Cycle) {
    let x = Cycle((1..=n as i64).collect());
    let y = Cycle((1..=n as i64).rev().collect());
    (x, y)
}

/// Closed-form relation on A_n (0-based vertex indices).
pub fn a_n_relation(n: usize, i: usize, j: usize) -> Result<NashRelation> {
    if i >= n || j >= n {
        return Err(Error::DimensionMismatch { expected: n, got: i.max(j) + 1 });
    }
    if i == j {
        return Err(Error::SameVertex(i));
    }
    let (x, y) = a_n_coordinate_cycles(n);
    let (witness_ij, witness_ji) = if i < j { (x, y) } else { (y, x) };
    NashRelation::from_witnesses(i, j, Some(witness_ij), Some(witness_ji))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationMatrix {
    ids: Vec<String>,
    /// Row-major over ordered pairs; `None` on the diagonal.
    table: Vec<Option<NashRelation>>,
}

impl RelationMatrix {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&NashRelation> {
        self.table[i * self.len() + j].as_ref()
    }

    pub fn relations(&self) -> impl Iterator<Item = &NashRelation> {
        self.table.iter().flatten()
    }

    /// `E_i < E_j`.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.get(i, j).is_some_and(|r| r.verdict == Verdict::Less)
    }

    /// Ordered pairs `(α, β)` with `N̄_α ⊄ N̄_β` proven.
    pub fn non_inclusions(&self) -> Vec<(usize, usize)> {
        self.relations().filter(|r| r.proves_i_not_in_j()).map(|r| (r.i, r.j)).collect()
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.relations().filter(|r| r.verdict == verdict).count()
    }

    pub fn open_pairs(&self) -> Vec<(usize, usize)> {
        self.relations().filter(|r| !r.proves_i_not_in_j()).map(|r| (r.i, r.j)).collect()
    }

    fn check_transitive(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                if !self.less(i, j) {
                    continue;
                }
                for k in 0..n {
                    if self.less(j, k) && !self.less(i, k) {
                        return Err(Error::IntransitiveOrder(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Edges of the transitive reduction of `<`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.less(i, j) && !(0..n).any(|k| self.less(i, k) && self.less(k, j)) {
                    edges.push((i, j));
                }
            }
        }
        edges
    }
}

pub fn relation_matrix(g: &WeightedDualGraph) -> Result<RelationMatrix> {
    let engine = OrderEngine::new(g)?;
    let n = g.len();
    let mut table = vec![None; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let rel = engine.relate(i, j)?;
            table[j * n + i] = Some(rel.reversed());
            table[i * n + j] = Some(rel);
        }
    }
    let m = RelationMatrix { ids: g.ids().to_vec(), table };
    m.check_transitive()?;
    Ok(m)
}

/// Graphviz text: an arrow `i -> j` for each covering relation `E_i < E_j`.
pub fn hasse_export(m: &RelationMatrix) -> String {
    let mut out = String::from("digraph nash_order {\n  rankdir=LR;\n");
    for id in m.ids() {
        let _ = writeln!(out, "  \"{}\";", escape(id));
    }
    for (i, j) in m.hasse_edges() {
        let _ = writeln!(out, "  \"{}\" -> \"{}\";", escape(&m.ids()[i]), escape(&m.ids()[j]));
    }
    out.push_str("}\n");
    out
}

pub(crate) fn escape(id: &str) -> String {
    id.replace('\\', "\\\\").replace('"', "\\\"")
}

#[derive(Serialize)]
struct PairDoc<'a> {
    i: &'a str,
    j: &'a str,
    verdict: Verdict,
    witness_ij: &'a Option<Cycle>,
    witness_ji: &'a Option<Cycle>,
}

#[derive(Serialize)]
struct RelationDoc<'a> {
    scope: &'static str,
    vertices: &'a [String],
    pairs: Vec<PairDoc<'a>>,
    non_inclusions: Vec<(&'a str, &'a str)>,
}

impl Serialize for RelationMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let id = |k: usize| self.ids[k].as_str();
        RelationDoc {
            scope: SCOPE_NOTE,
            vertices: &self.ids,
            pairs: self
                .relations()
                .map(|r| PairDoc {
                    i: id(r.i),
                    j: id(r.j),
                    verdict: r.verdict,
                    witness_ij: &r.witness_ij,
                    witness_ji: &r.witness_ji,
                })
                .collect(),
            non_inclusions: self.non_inclusions().into_iter().map(|(a, b)| (id(a), id(b))).collect(),
        }
        .serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::negative_definite_corpus;
    use crate::matrix::RationalMatrix;
    use num_rational::BigRational;

    #[test]
    fn a_n_pairs_are_incomparable() {
        for n in 2..=8 {
            let g = WeightedDualGraph::a_n(n).unwrap();
            let m = relation_matrix(&g).unwrap();
            assert_eq!(m.count(Verdict::Incomparable), n * (n - 1));
            for r in m.relations() {
                assert!(r.verify(&g).unwrap());
                assert!(r.reversed().verify(&g).unwrap());
                let closed = a_n_relation(n, r.i, r.j).unwrap();
                assert_eq!(closed.verdict, r.verdict);
                assert!(closed.verify(&g).unwrap());
            }
        }
    }

    #[test]
    fn a1_has_an_empty_table() {
        let m = relation_matrix(&WeightedDualGraph::a_n(1).unwrap()).unwrap();
        assert_eq!(m.relations().count(), 0);
        assert!(m.non_inclusions().is_empty());
    }

    #[test]
    fn a3_proves_all_six_pairs() {
        let m = relation_matrix(&WeightedDualGraph::a_n(3).unwrap()).unwrap();
        assert_eq!(m.non_inclusions().len(), 6);
        let dot = hasse_export(&m);
        assert_eq!(dot.matches("->").count(), 0);
        assert_eq!(dot.matches(";\n").count(), 4);
    }

    #[test]
    fn two_vertex_edge_with_weights_2_3() {
        let g = WeightedDualGraph::bamboo(&[2, 3]).unwrap();
        // Oracle: (-M)^{-1} = (1/5)[[3,1],[1,2]].
        let q = |p: i64| BigRational::new(p.into(), 5.into());
        let inverse = (-g.intersection_matrix()).inverse().unwrap();
        assert_eq!(inverse, RationalMatrix::from_rows(vec![vec![q(3), q(1)], vec![q(1), q(2)]]).unwrap());
        // Column 1 has m_1 > m_2, column 2 has m_1 < m_2, so both directions
        // are witnessed.
        let rel = relate(&g, 0, 1).unwrap();
        assert_eq!(rel.verdict, Verdict::Incomparable);
        assert_eq!(rel.witness_ij, Some(Cycle(vec![1, 2])));
        assert_eq!(rel.witness_ji, Some(Cycle(vec![3, 1])));
        let m = relation_matrix(&g).unwrap();
        assert_eq!(m.non_inclusions().len(), 2);
        assert!(m.hasse_edges().is_empty());
    }

    #[test]
    fn e6_verdict_table() {
        let g = WeightedDualGraph::e6();
        let m = relation_matrix(&g).unwrap();
        let less: Vec<(usize, usize)> =
            (0..6).flat_map(|i| (0..6).map(move |j| (i, j))).filter(|&(i, j)| m.less(i, j)).collect();
        // From the rows of the inverse Cartan matrix of E_6.
        let expected = vec![
            (0, 1), (0, 2), (0, 3),
            (1, 2),
            (3, 2),
            (4, 1), (4, 2), (4, 3),
            (5, 1), (5, 2), (5, 3),
        ];
        assert_eq!(less, expected);
        assert_eq!(m.count(Verdict::Incomparable), 8);
        assert_eq!(
            m.hasse_edges(),
            vec![(0, 1), (0, 3), (1, 2), (3, 2), (4, 1), (4, 3), (5, 1), (5, 3)]
        );
        assert_eq!(m.non_inclusions().len(), 11 + 8);
        let dot = hasse_export(&m);
        assert!(dot.contains("\"v2\" -> \"v3\";"));
        assert_eq!(dot.matches("->").count(), 8);
    }

    #[test]
    fn same_vertex_and_equality_errors() {
        let g = WeightedDualGraph::a_n(3).unwrap();
        assert_eq!(relate(&g, 1, 1), Err(Error::SameVertex(1)));
        assert_eq!(NashRelation::from_witnesses(0, 1, None, None), Err(Error::EqualityDetected(0, 1)));
    }

    #[test]
    fn corpus_invariants() {
        for g in negative_definite_corpus(17, 60, 9, 2..=5) {
            let m = relation_matrix(&g).unwrap();
            for r in m.relations() {
                assert!(r.verify(&g).unwrap());
                // Scaling invariance.
                let scaled = NashRelation {
                    witness_ij: r.witness_ij.as_ref().map(|z| z.scaled(3).unwrap()),
                    witness_ji: r.witness_ji.as_ref().map(|z| z.scaled(7).unwrap()),
                    ..r.clone()
                };
                assert!(scaled.verify(&g).unwrap());
                // Antisymmetry.
                let back = m.get(r.j, r.i).unwrap();
                assert_eq!(back, &r.reversed());
            }
        }
    }

    #[test]
    fn serialized_table_shape() {
        let m = relation_matrix(&WeightedDualGraph::a_n(2).unwrap()).unwrap();
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(v["pairs"].as_array().unwrap().len(), 2);
        assert_eq!(v["pairs"][0]["verdict"], "Incomparable");
        assert_eq!(v["pairs"][0]["witness_ij"], serde_json::json!([1, 2]));
        assert_eq!(v["non_inclusions"], serde_json::json!([["E1", "E2"], ["E2", "E1"]]));
    }
}
