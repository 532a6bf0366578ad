use nash_core::certificate::{certify, certify_minimal, propagate, ProofStatus, Rule, VertexMap};
use nash_core::decompose::decompose_minimal;
use nash_core::generate::{minimal_corpus, random_negative_definite, rng_from_seed};
use nash_core::order::hasse_export;
use nash_core::{is_anti_nef, relate, relation_matrix, Cycle, Verdict, WeightedDualGraph};
use proptest::prelude::*;

#[test]
fn two_vertex_edge_is_incomparable() {
    // (-M)^{-1} = (1/5)[[3,1],[1,2]]: the first column has m_1 > m_2, the
    // second has m_1 < m_2, so both directions are separated.
    let g = WeightedDualGraph::from_weights(&[2, 3], &[(0, 1)]).unwrap();
    let r = relate(&g, 0, 1).unwrap();
    assert_eq!(r.verdict, Verdict::Incomparable);
    assert_eq!(r.witness_ij, Some(Cycle(vec![1, 2])));
    assert_eq!(r.witness_ji, Some(Cycle(vec![3, 1])));
    let m = relation_matrix(&g).unwrap();
    assert_eq!(m.non_inclusions().len(), 2);
    assert!(!hasse_export(&m).contains("->"));
}

#[test]
fn json_documents() {
    let g = WeightedDualGraph::bamboo(&[3, 2, 2]).unwrap();
    let cert = serde_json::to_value(certify_minimal(&g).unwrap()).unwrap();
    assert!(cert["scope"].as_str().unwrap().contains("negative-definite"));
    let first = &cert["entries"][0];
    assert_eq!(first["alpha"], "E1");
    assert_eq!(first["beta"], "E2");
    assert_eq!(first["status"], "Proven");
    let rules: Vec<&str> = first["evidence"].as_array().unwrap().iter().map(|e| e["rule"].as_str().unwrap()).collect();
    assert_eq!(rules, ["OrderCriterion", "Propagation"]);
    assert_eq!(first["evidence"][1]["decomposition"]["contraction"]["terminal"]["state"], "Empty");

    let m = serde_json::to_value(relation_matrix(&g).unwrap()).unwrap();
    assert_eq!(m["pairs"].as_array().unwrap().len(), 6);
    assert_eq!(m["pairs"][0]["verdict"], "Incomparable");
}

#[test]
fn propagation_covers_order_criterion() {
    for g in minimal_corpus(31, 25, 10) {
        let cert = certify_minimal(&g).unwrap();
        for e in &cert.entries {
            if e.has_rule(Rule::OrderCriterion) {
                assert!(e.has_rule(Rule::Propagation));
            }
        }
        let direct = relation_matrix(&g).unwrap().non_inclusions().len();
        let annotated = cert.entries.iter().filter(|e| e.has_rule(Rule::OrderCriterion)).count();
        assert_eq!(direct, annotated);
    }
}

#[test]
fn decomposition_pulls_back_both_directions() {
    let g = WeightedDualGraph::from_weights(&[4, 2, 3, 2, 2], &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
    for (x, y) in [(1, 4), (2, 1), (4, 0)] {
        let d = decompose_minimal(&g, x, y).unwrap();
        assert!(d.verify(&g));
        let m = d.designated.m;
        let quotient = WeightedDualGraph::a_n(m).unwrap();
        let pairs = relation_matrix(&quotient).unwrap().non_inclusions();
        let mapping = VertexMap::new(d.quotient_mapping(&g).into_iter().map(Some).collect()).unwrap();
        let pulled = propagate(&g, &quotient, &pairs, &mapping).unwrap();
        assert!(pulled.contains(&(x, y)) && pulled.contains(&(y, x)));
        assert_eq!(pulled.len(), m * (m - 1));
    }
}

#[test]
fn certify_reports_gaps_honestly() {
    let e6 = certify(&WeightedDualGraph::e6()).unwrap();
    assert_eq!(e6.count(ProofStatus::Proven) + e6.count(ProofStatus::Open), 30);
    assert_eq!(e6.count(ProofStatus::Conditional), 0);
    assert!(e6.verify(&WeightedDualGraph::e6()));
    let heavy_d = WeightedDualGraph::d_shape(&[2, 2, 2, 2, 2, 2]).unwrap();
    let cert = certify(&heavy_d).unwrap();
    assert_eq!(cert.count(ProofStatus::Open), 0);
    assert!(cert.count(ProofStatus::Conditional) > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witnesses_survive_scaling(seed in any::<u64>(), factor in 1i64..7) {
        let g = random_negative_definite(&mut rng_from_seed(seed), 8, 2..=4);
        let m = relation_matrix(&g).unwrap();
        for r in m.relations() {
            if let Some(w) = &r.witness_ij {
                let scaled = w.scaled(factor).unwrap();
                prop_assert!(is_anti_nef(&g, &scaled).unwrap());
                prop_assert!(scaled.0[r.i] < scaled.0[r.j]);
            }
            prop_assert!(r.verify(&g).unwrap());
        }
    }

    #[test]
    fn order_is_transitive(seed in any::<u64>()) {
        let g = random_negative_definite(&mut rng_from_seed(seed), 9, 2..=3);
        let m = relation_matrix(&g).unwrap();
        let n = g.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if m.less(i, j) && m.less(j, k) {
                        prop_assert!(m.less(i, k));
                    }
                }
            }
        }
        for (a, b) in m.hasse_edges() {
            prop_assert!(m.less(a, b));
        }
    }
}
