//! Shape and weight classification of dual graphs.

use crate::cycle::{is_negative_definite, is_rational};
use crate::graph::WeightedDualGraph;

/// `w(x) ≥ γ(x)` at every vertex.
pub fn satisfies_weight_condition(g: &WeightedDualGraph) -> bool {
    (0..g.len()).all(|v| g.weight(v) as usize >= g.valence(v))
}

/// Weight condition together with rationality.
pub fn is_minimal(g: &WeightedDualGraph) -> bool {
    satisfies_weight_condition(g) && is_negative_definite(g) && is_rational(g).unwrap_or(false)
}

pub fn is_path(g: &WeightedDualGraph) -> bool {
    (0..g.len()).all(|v| g.valence(v) <= 2)
}

/// `Some(n)` when `g` is a weight-2 bamboo on `n` vertices.
pub fn is_an(g: &WeightedDualGraph) -> Option<usize> {
    (is_path(g) && g.weights().iter().all(|&w| w == 2)).then_some(g.len())
}

/// Underlying unweighted trees are isomorphic.
pub fn same_configuration(g: &WeightedDualGraph, reference: &WeightedDualGraph) -> bool {
    g.len() == reference.len() && canonical_form(g) == canonical_form(reference)
}

/// D_n configuration (n ≥ 4): one branch vertex carrying two single leaves.
pub fn d_shape_order(g: &WeightedDualGraph) -> Option<usize> {
    let n = g.len();
    if n < 4 {
        return None;
    }
    let reference = WeightedDualGraph::d_n(n).ok()?;
    same_configuration(g, &reference).then_some(n)
}

/// AHU encoding rooted at the tree's center; the smaller encoding wins when
/// there are two centers.
pub fn canonical_form(g: &WeightedDualGraph) -> String {
    centers(g).into_iter().map(|c| encode(g, c, usize::MAX)).min().expect("trees have a center")
}

fn encode(g: &WeightedDualGraph, v: usize, parent: usize) -> String {
    let mut children: Vec<String> =
        g.neighbors(v).iter().filter(|&&c| c != parent).map(|&c| encode(g, c, v)).collect();
    children.sort();
    format!("({})", children.concat())
}

fn centers(g: &WeightedDualGraph) -> Vec<usize> {
    let n = g.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.valence(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            degree[leaf] = 0;
            for &nb in g.neighbors(leaf) {
                if degree[nb] > 0 {
                    degree[nb] -= 1;
                    if degree[nb] == 1 {
                        next.push(nb);
                    }
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimality() {
        for n in 1..8 {
            assert!(is_minimal(&WeightedDualGraph::a_n(n).unwrap()));
        }
        assert!(!is_minimal(&WeightedDualGraph::e6()));
        assert!(is_minimal(&WeightedDualGraph::bamboo(&[3, 2, 2]).unwrap()));
        let star = WeightedDualGraph::from_weights(&[3, 2, 2, 2], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(is_minimal(&star));
    }

    #[test]
    fn a_n_detection() {
        assert_eq!(is_an(&WeightedDualGraph::a_n(5).unwrap()), Some(5));
        assert_eq!(is_an(&WeightedDualGraph::bamboo(&[2, 3, 2]).unwrap()), None);
        assert_eq!(is_an(&WeightedDualGraph::d_n(4).unwrap()), None);
    }

    #[test]
    fn configurations() {
        let heavy_d5 = WeightedDualGraph::d_shape(&[3, 4, 2, 5, 2]).unwrap();
        let d5 = WeightedDualGraph::d_n(5).unwrap();
        assert!(same_configuration(&heavy_d5, &d5));
        assert_eq!(d_shape_order(&heavy_d5), Some(5));
        assert!(!same_configuration(&WeightedDualGraph::a_n(4).unwrap(), &WeightedDualGraph::d_n(4).unwrap()));
        let e6 = WeightedDualGraph::e6();
        assert!(same_configuration(&e6, &e6));
        assert!(!same_configuration(&e6, &WeightedDualGraph::d_n(6).unwrap()));
        assert_eq!(d_shape_order(&e6), None);
        // Relabeling does not matter.
        let relabeled = WeightedDualGraph::from_weights(&[2; 5], &[(4, 3), (3, 2), (2, 0), (2, 1)]).unwrap();
        assert!(same_configuration(&relabeled, &d5));
    }

    #[test]
    fn relabeled_trees() {
        let a = WeightedDualGraph::from_weights(&[2; 6], &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)]).unwrap();
        let b = WeightedDualGraph::from_weights(&[2; 6], &[(5, 4), (4, 3), (3, 2), (2, 1), (4, 0)]).unwrap();
        assert!(same_configuration(&a, &b));
        // Even paths have two centers.
        let p = WeightedDualGraph::from_weights(&[2; 4], &[(0, 2), (2, 3), (3, 1)]).unwrap();
        assert!(same_configuration(&p, &WeightedDualGraph::a_n(4).unwrap()));
    }
}
