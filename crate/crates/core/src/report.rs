//! One-document summary of everything the crate can say about a graph.

use serde::{Deserialize, Serialize};

use crate::certificate::{certify, ProofStatus};
use crate::classify::{d_shape_order, is_an, is_minimal, satisfies_weight_condition};
use crate::cycle::{fundamental_cycle, is_negative_definite, is_rational, Cycle};
use crate::error::{Error, Result};
use crate::graph::WeightedDualGraph;
use crate::order::{relation_matrix, Verdict, SCOPE_NOTE};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub leaves: usize,
    pub max_valence: usize,
    pub auxiliary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDigest {
    /// Ordered pairs, so every incomparable pair counts twice.
    pub incomparable: usize,
    pub less: usize,
    pub proven_non_inclusions: usize,
    pub hasse_edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDigest {
    pub proven: usize,
    pub conditional: usize,
    pub open: usize,
    pub open_pairs: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool: String,
    pub scope: String,
    pub graph: serde_json::Value,
    pub summary: GraphSummary,
    pub negative_definite: bool,
    /// Absent when the matrix is not negative definite.
    pub rational: Option<bool>,
    pub weight_condition: bool,
    pub minimal: bool,
    pub a_n: Option<usize>,
    pub d_shape: Option<usize>,
    pub fundamental_cycle: Option<Cycle>,
    pub fundamental_cycle_reduced: Option<bool>,
    pub relation: Option<RelationDigest>,
    pub certificate: CertificateDigest,
}

impl AnalysisReport {
    pub fn build(g: &WeightedDualGraph) -> Result<Self> {
        let negative_definite = is_negative_definite(g);
        let (rational, fundamental, relation) = if negative_definite {
            let z = fundamental_cycle(g)?;
            let m = relation_matrix(g)?;
            let id = |k: usize| g.id(k).to_string();
            let digest = RelationDigest {
                incomparable: m.count(Verdict::Incomparable),
                less: m.count(Verdict::Less),
                proven_non_inclusions: m.non_inclusions().len(),
                hasse_edges: m.hasse_edges().into_iter().map(|(a, b)| (id(a), id(b))).collect(),
            };
            (Some(is_rational(g)?), Some(z), Some(digest))
        } else {
            (None, None, None)
        };
        let cert = certify(g)?;
        let certificate = CertificateDigest {
            proven: cert.count(ProofStatus::Proven),
            conditional: cert.count(ProofStatus::Conditional),
            open: cert.count(ProofStatus::Open),
            open_pairs: cert.open_pairs().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        };
        Ok(Self {
            tool: format!("nash {}", env!("CARGO_PKG_VERSION")),
            scope: SCOPE_NOTE.to_string(),
            graph: g.to_json_value(),
            summary: GraphSummary {
                vertices: g.len(),
                edges: g.edges().len(),
                leaves: g.leaves().len(),
                max_valence: (0..g.len()).map(|v| g.valence(v)).max().unwrap_or(0),
                auxiliary: g.is_auxiliary(),
            },
            negative_definite,
            rational,
            weight_condition: satisfies_weight_condition(g),
            minimal: is_minimal(g),
            a_n: is_an(g),
            d_shape: d_shape_order(g),
            fundamental_cycle_reduced: fundamental.as_ref().map(Cycle::is_reduced),
            fundamental_cycle: fundamental,
            relation,
            certificate,
        })
    }

    pub fn embedded_graph(&self) -> Result<WeightedDualGraph> {
        WeightedDualGraph::from_json_value(&self.graph)
    }

    pub fn has_open_pairs(&self) -> bool {
        self.certificate.open > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a3_report() {
        let r = AnalysisReport::build(&WeightedDualGraph::a_n(3).unwrap()).unwrap();
        assert!(r.negative_definite && r.minimal);
        assert_eq!(r.rational, Some(true));
        assert_eq!(r.a_n, Some(3));
        assert_eq!(r.fundamental_cycle, Some(Cycle(vec![1, 1, 1])));
        let rel = r.relation.as_ref().unwrap();
        assert_eq!((rel.incomparable, rel.less, rel.proven_non_inclusions), (6, 0, 6));
        assert!(rel.hasse_edges.is_empty());
        assert_eq!(r.certificate.proven, 6);
        assert!(!r.has_open_pairs());
    }

    #[test]
    fn e6_report() {
        let r = AnalysisReport::build(&WeightedDualGraph::e6()).unwrap();
        assert!(!r.minimal && !r.weight_condition);
        assert_eq!(r.fundamental_cycle, Some(Cycle(vec![1, 2, 3, 2, 1, 2])));
        assert_eq!(r.fundamental_cycle_reduced, Some(false));
        assert_eq!(r.certificate.open, 11);
        assert_eq!(r.relation.as_ref().unwrap().hasse_edges.len(), 8);
    }

    #[test]
    fn indefinite_report() {
        let star = WeightedDualGraph::from_weights(&[2; 6], &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let r = AnalysisReport::build(&star).unwrap();
        assert!(!r.negative_definite);
        assert_eq!((r.rational, r.relation.clone(), r.fundamental_cycle.clone()), (None, None, None));
        assert_eq!(r.certificate.open, 30);
    }

    #[test]
    fn round_trip_is_exact() {
        for g in [WeightedDualGraph::e6(), WeightedDualGraph::bamboo(&[3, 2, 2]).unwrap()] {
            let text = AnalysisReport::build(&g).unwrap().to_json();
            let parsed = AnalysisReport::from_json(&text).unwrap();
            let again = AnalysisReport::build(&parsed.embedded_graph().unwrap()).unwrap().to_json();
            assert_eq!(text, again);
        }
    }
}
