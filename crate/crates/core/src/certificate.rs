//! Non-inclusion certificates.
//!
//! Each ordered pair `(α, β)` gets a status for the claim `N̄_α ⊄ N̄_β` and
//! the evidence behind it. Three rules feed the table:
//!
//! * `OrderCriterion`: an anti-nef cycle with `m_α < m_β` on the graph itself;
//! * `Propagation`: the claim holds on an A_m quotient of a bamboo
//!   decomposition and is pulled back along the dominant birational map;
//! * `ShapeConditional`: the graph has the configuration of some D_n; the
//!   claim then holds provided it holds for the D_n double point.

use serde::Serialize;

use crate::classify::{d_shape_order, is_minimal, same_configuration};
use crate::cycle::{is_anti_nef, is_negative_definite, is_rational, Cycle};
use crate::decompose::{decompose_minimal, DecompositionCertificate};
use crate::error::{Error, Result};
use crate::graph::WeightedDualGraph;
use crate::order::{a_n_relation, OrderEngine, SCOPE_NOTE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ProofStatus {
    Proven,
    Open,
    Conditional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    OrderCriterion,
    Propagation,
    ShapeConditional,
}

pub const D_N_HYPOTHESIS: &str = "Nash families of the D_n rational double point are pairwise non-nested";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule")]
pub enum Evidence {
    OrderCriterion {
        /// Anti-nef cycle with a smaller coefficient at `α` than at `β`.
        witness: Cycle,
    },
    Propagation {
        /// Length of the A_m quotient.
        m: usize,
        alpha_position: usize,
        beta_position: usize,
        /// Anti-nef cycle on A_m separating the two positions.
        quotient_witness: Cycle,
        decomposition: Box<DecompositionCertificate>,
    },
    ShapeConditional {
        reference: String,
        hypothesis: &'static str,
    },
}

impl Evidence {
    pub fn rule(&self) -> Rule {
        match self {
            Evidence::OrderCriterion { .. } => Rule::OrderCriterion,
            Evidence::Propagation { .. } => Rule::Propagation,
            Evidence::ShapeConditional { .. } => Rule::ShapeConditional,
        }
    }

    fn check(&self, g: &WeightedDualGraph, alpha: usize, beta: usize) -> bool {
        match self {
            Evidence::OrderCriterion { witness } => {
                witness.len() == g.len()
                    && is_anti_nef(g, witness).unwrap_or(false)
                    && witness.0[alpha] < witness.0[beta]
            }
            Evidence::Propagation { m, alpha_position, beta_position, quotient_witness, decomposition } => {
                let Ok(quotient) = WeightedDualGraph::a_n(*m) else {
                    return false;
                };
                let (a, b) = (*alpha_position, *beta_position);
                let mapping = decomposition.quotient_mapping(g);
                decomposition.verify(g)
                    && decomposition.x == g.id(alpha)
                    && decomposition.y == g.id(beta)
                    && decomposition.designated.m == *m
                    && mapping.len() == *m
                    && (1..=*m).contains(&a)
                    && (1..=*m).contains(&b)
                    && mapping[a - 1] == alpha
                    && mapping[b - 1] == beta
                    && quotient_witness.len() == *m
                    && is_anti_nef(&quotient, quotient_witness).unwrap_or(false)
                    && quotient_witness.0[a - 1] < quotient_witness.0[b - 1]
                    && is_rational(g).unwrap_or(false)
            }
            Evidence::ShapeConditional { reference, .. } => {
                d_shape_order(g).is_some_and(|n| *reference == format!("D_{n}"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateEntry {
    pub alpha: String,
    pub beta: String,
    pub status: ProofStatus,
    pub evidence: Vec<Evidence>,
}

impl CertificateEntry {
    pub fn rules(&self) -> Vec<Rule> {
        self.evidence.iter().map(Evidence::rule).collect()
    }

    pub fn has_rule(&self, rule: Rule) -> bool {
        self.evidence.iter().any(|e| e.rule() == rule)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub scope: &'static str,
    pub vertices: Vec<String>,
    pub entries: Vec<CertificateEntry>,
}

impl Certificate {
    pub fn count(&self, status: ProofStatus) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn open_pairs(&self) -> Vec<(&str, &str)> {
        self.entries
            .iter()
            .filter(|e| e.status == ProofStatus::Open)
            .map(|e| (e.alpha.as_str(), e.beta.as_str()))
            .collect()
    }

    pub fn entry(&self, alpha: &str, beta: &str) -> Option<&CertificateEntry> {
        self.entries.iter().find(|e| e.alpha == alpha && e.beta == beta)
    }

    /// Rechecks every recorded piece of evidence against `g`. Proven entries
    /// need at least one proving rule, Conditional entries a shape match, and
    /// Open entries no proof at all.
    pub fn verify(&self, g: &WeightedDualGraph) -> bool {
        if self.vertices != g.ids() || self.entries.len() != g.len() * g.len().saturating_sub(1) {
            return false;
        }
        self.entries.iter().all(|e| {
            let (Ok(alpha), Ok(beta)) = (g.index_of(&e.alpha), g.index_of(&e.beta)) else {
                return false;
            };
            if alpha == beta || !e.evidence.iter().all(|ev| ev.check(g, alpha, beta)) {
                return false;
            }
            let proving = e.has_rule(Rule::OrderCriterion) || e.has_rule(Rule::Propagation);
            match e.status {
                ProofStatus::Proven => proving,
                ProofStatus::Conditional => !proving && e.has_rule(Rule::ShapeConditional),
                ProofStatus::Open => e.evidence.is_empty(),
            }
        })
    }
}

/// Injective map from quotient vertices to source vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    images: Vec<Option<usize>>,
}

impl VertexMap {
    pub fn new(images: Vec<Option<usize>>) -> Result<Self> {
        for a in 0..images.len() {
            for b in a + 1..images.len() {
                if images[a].is_some() && images[a] == images[b] {
                    return Err(Error::NotInjective(a, b));
                }
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).map(Some).collect() }
    }

    pub fn image(&self, quotient_vertex: usize) -> Result<usize> {
        self.images
            .get(quotient_vertex)
            .copied()
            .flatten()
            .ok_or(Error::NotInImage(quotient_vertex))
    }
}

fn require_rational(g: &WeightedDualGraph, which: &str) -> Result<()> {
    if is_negative_definite(g) && is_rational(g)? {
        Ok(())
    } else {
        Err(Error::NotRational(which.to_string()))
    }
}

/// Pulls non-inclusions proven on `quotient` back to `source`: if
/// `N̄_i ⊄ N̄_j` on the quotient, then `N̄_δ(i) ⊄ N̄_δ(j)` on the source.
pub fn propagate(
    source: &WeightedDualGraph,
    quotient: &WeightedDualGraph,
    quotient_pairs: &[(usize, usize)],
    mapping: &VertexMap,
) -> Result<Vec<(usize, usize)>> {
    require_rational(source, "source")?;
    require_rational(quotient, "quotient")?;
    quotient_pairs
        .iter()
        .map(|&(i, j)| Ok((mapping.image(i)?, mapping.image(j)?)))
        .collect()
}

/// Proof of `N̄_α ⊄ N̄_β` through the bamboo decomposition for `(α, β)`.
pub fn propagation_evidence(g: &WeightedDualGraph, alpha: usize, beta: usize) -> Result<Evidence> {
    let decomposition = decompose_minimal(g, alpha, beta)?;
    let d = decomposition.designated.clone();
    let quotient = WeightedDualGraph::a_n(d.m)?;
    let relation = a_n_relation(d.m, d.x_position - 1, d.y_position - 1)?;
    let quotient_witness = relation.witness_ij.clone().ok_or(Error::EqualityDetected(alpha, beta))?;

    let mapping = VertexMap::new(decomposition.quotient_mapping(g).into_iter().map(Some).collect())?;
    let pulled = propagate(g, &quotient, &[(relation.i, relation.j)], &mapping)?;
    debug_assert_eq!(pulled, vec![(alpha, beta)]);

    Ok(Evidence::Propagation {
        m: d.m,
        alpha_position: d.x_position,
        beta_position: d.y_position,
        quotient_witness,
        decomposition: Box::new(decomposition),
    })
}

/// Certificate for any graph: the order criterion wherever the matrix is
/// negative definite, propagation on minimal graphs, and shape-conditional
/// entries on D_n-shaped graphs for whatever is still open.
pub fn certify(g: &WeightedDualGraph) -> Result<Certificate> {
    let n = g.len();
    let engine = if is_negative_definite(g) { Some(OrderEngine::new(g)?) } else { None };
    let minimal = engine.is_some() && is_minimal(g);
    let shape = if engine.is_some() { d_shape_order(g) } else { None };

    let mut entries = Vec::with_capacity(n * n.saturating_sub(1));
    for alpha in 0..n {
        for beta in 0..n {
            if alpha == beta {
                continue;
            }
            let mut evidence = Vec::new();
            if let Some(engine) = &engine {
                if let Some(witness) = engine.basis().witness(alpha, beta)? {
                    evidence.push(Evidence::OrderCriterion { witness });
                }
            }
            if minimal {
                evidence.push(propagation_evidence(g, alpha, beta)?);
            }
            let status = if !evidence.is_empty() {
                ProofStatus::Proven
            } else if let Some(order) = shape {
                debug_assert!(same_configuration(g, &WeightedDualGraph::d_n(order)?));
                evidence.push(Evidence::ShapeConditional {
                    reference: format!("D_{order}"),
                    hypothesis: D_N_HYPOTHESIS,
                });
                ProofStatus::Conditional
            } else {
                ProofStatus::Open
            };
            entries.push(CertificateEntry {
                alpha: g.id(alpha).to_string(),
                beta: g.id(beta).to_string(),
                status,
                evidence,
            });
        }
    }
    Ok(Certificate { scope: SCOPE_NOTE, vertices: g.ids().to_vec(), entries })
}

/// Full certificate for a minimal graph; every pair is proven by
/// propagation, and order-criterion witnesses are added where they exist.
pub fn certify_minimal(g: &WeightedDualGraph) -> Result<Certificate> {
    if !is_minimal(g) {
        return Err(Error::NotMinimal);
    }
    certify(g)
}
