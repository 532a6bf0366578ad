//! Blow-down calculus on weighted trees.
//!
//! A weight-1 vertex of valence at most two can be blown down: each
//! neighbor loses one unit of weight, and two neighbors become adjacent. A
//! graph is non-singular when repeated blow-downs empty it.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::WeightedDualGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowDown {
    pub vertex: String,
    /// Neighbors whose weight dropped by one.
    pub decremented: Vec<String>,
    /// New edge between the two former neighbors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub joined: Option<(String, String)>,
}

/// What is left when no vertex can be blown down. Weights may have dropped
/// to zero or below.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualGraph {
    pub vertices: Vec<(String, i64)>,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "state", content = "remaining")]
pub enum Terminal {
    Empty,
    Stuck(ResidualGraph),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractionTrace {
    pub steps: Vec<BlowDown>,
    pub terminal: Terminal,
}

impl ContractionTrace {
    pub fn is_empty_terminal(&self) -> bool {
        self.terminal == Terminal::Empty
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct State {
    weights: Vec<i64>,
    alive: Vec<bool>,
    adjacency: Vec<BTreeSet<usize>>,
}

impl State {
    pub(crate) fn new(g: &WeightedDualGraph) -> Self {
        Self {
            weights: g.weights().iter().map(|&w| w as i64).collect(),
            alive: vec![true; g.len()],
            adjacency: (0..g.len()).map(|v| g.neighbors(v).iter().copied().collect()).collect(),
        }
    }

    pub(crate) fn is_empty(&self) -> bool {
        !self.alive.iter().any(|&a| a)
    }

    pub(crate) fn eligible(&self) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&v| self.alive[v] && self.weights[v] == 1 && self.adjacency[v].len() <= 2)
            .collect()
    }

    /// Removes `v`; returns the decremented neighbors and the joined pair.
    pub(crate) fn blow_down(&mut self, v: usize) -> (Vec<usize>, Option<(usize, usize)>) {
        let neighbors: Vec<usize> = self.adjacency[v].iter().copied().collect();
        self.alive[v] = false;
        self.adjacency[v].clear();
        for &nb in &neighbors {
            self.adjacency[nb].remove(&v);
            self.weights[nb] -= 1;
        }
        let joined = match neighbors[..] {
            [a, b] => {
                self.adjacency[a].insert(b);
                self.adjacency[b].insert(a);
                Some((a, b))
            }
            _ => None,
        };
        (neighbors, joined)
    }
}

/// Blow-downs in the order chosen by `pick`, which receives the eligible
/// vertices (ascending) and returns a position into that slice.
pub fn contract_with<F: FnMut(&[usize]) -> usize>(g: &WeightedDualGraph, mut pick: F) -> ContractionTrace {
    let id = |v: usize| g.id(v).to_string();
    let mut state = State::new(g);
    let mut steps = Vec::new();
    loop {
        let eligible = state.eligible();
        if eligible.is_empty() {
            break;
        }
        let v = eligible[pick(&eligible)];
        let (decremented, joined) = state.blow_down(v);
        steps.push(BlowDown {
            vertex: id(v),
            decremented: decremented.into_iter().map(id).collect(),
            joined: joined.map(|(a, b)| (id(a), id(b))),
        });
    }
    let terminal = if state.is_empty() {
        Terminal::Empty
    } else {
        let vertices = (0..g.len())
            .filter(|&v| state.alive[v])
            .map(|v| (id(v), state.weights[v]))
            .collect();
        let edges = (0..g.len())
            .filter(|&v| state.alive[v])
            .flat_map(|a| state.adjacency[a].iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .map(|(a, b)| (id(a), id(b)))
            .collect();
        Terminal::Stuck(ResidualGraph { vertices, edges })
    };
    ContractionTrace { steps, terminal }
}

/// Greedy blow-down, smallest eligible index first.
pub fn contracts_to_empty(g: &WeightedDualGraph) -> ContractionTrace {
    contract_with(g, |_| 0)
}

/// Replays a trace on `g` and checks that every step was a legal blow-down
/// and that the trace ends in the recorded terminal state.
pub fn replay(g: &WeightedDualGraph, trace: &ContractionTrace) -> bool {
    let mut state = State::new(g);
    for step in &trace.steps {
        let Ok(v) = g.index_of(&step.vertex) else {
            return false;
        };
        if !state.eligible().contains(&v) {
            return false;
        }
        let (decremented, _) = state.blow_down(v);
        let names: Vec<&str> = decremented.iter().map(|&d| g.id(d)).collect();
        if names != step.decremented.iter().map(String::as_str).collect::<Vec<_>>() {
            return false;
        }
    }
    match &trace.terminal {
        Terminal::Empty => state.is_empty(),
        Terminal::Stuck(_) => !state.is_empty() && state.eligible().is_empty(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{random_auxiliary, rng_from_seed};
    use rand::Rng;
    use std::collections::HashSet;

    /// Explores every blow-down order.
    fn some_order_empties(g: &WeightedDualGraph) -> bool {
        fn go(state: State, seen: &mut HashSet<State>) -> bool {
            if state.is_empty() {
                return true;
            }
            if !seen.insert(state.clone()) {
                return false;
            }
            state.eligible().into_iter().any(|v| {
                let mut next = state.clone();
                next.blow_down(v);
                go(next, seen)
            })
        }
        go(State::new(g), &mut HashSet::new())
    }

    fn chain_with_minus_one_end(n: usize) -> WeightedDualGraph {
        let mut weights = vec![2i64; n];
        weights.push(1);
        let edges: Vec<_> = (1..=n).map(|k| (k - 1, k)).collect();
        WeightedDualGraph::auxiliary_from_weights(&weights, &edges).unwrap()
    }

    #[test]
    fn single_vertices() {
        let one = WeightedDualGraph::auxiliary_from_weights(&[1], &[]).unwrap();
        let trace = contracts_to_empty(&one);
        assert!(trace.is_empty_terminal());
        assert_eq!(trace.steps.len(), 1);
        let two = WeightedDualGraph::a_n(1).unwrap();
        let trace = contracts_to_empty(&two);
        assert_eq!(
            trace.terminal,
            Terminal::Stuck(ResidualGraph { vertices: vec![("E1".into(), 2)], edges: vec![] })
        );
    }

    #[test]
    fn a_n_plus_minus_one_cascade() {
        for n in 1..=12 {
            let g = chain_with_minus_one_end(n);
            let trace = contracts_to_empty(&g);
            assert!(trace.is_empty_terminal(), "n = {n}");
            // The (-1)-curve goes first, then E_n, E_{n-1}, ..., E_1.
            let order: Vec<&str> = trace.steps.iter().map(|s| s.vertex.as_str()).collect();
            let mut expected = vec![format!("E{}", n + 1)];
            expected.extend((1..=n).rev().map(|k| format!("E{k}")));
            assert_eq!(order, expected);
            assert!(replay(&g, &trace));
        }
    }

    #[test]
    fn middle_blow_down_joins_neighbors() {
        let g = WeightedDualGraph::auxiliary_from_weights(&[2, 1, 3], &[(0, 1), (1, 2)]).unwrap();
        let trace = contracts_to_empty(&g);
        assert_eq!(trace.steps[0].joined, Some(("E1".into(), "E3".into())));
        // 1 - 2 remains and then collapses: E1 weight 1, E3 weight 2 -> 1.
        assert!(trace.is_empty_terminal());
    }

    #[test]
    fn adjacent_minus_one_curves_get_stuck() {
        let g = WeightedDualGraph::auxiliary_from_weights(&[1, 1], &[(0, 1)]).unwrap();
        let trace = contracts_to_empty(&g);
        assert!(!trace.is_empty_terminal());
        assert!(replay(&g, &trace));
    }

    #[test]
    fn greedy_matches_exhaustive_search() {
        let mut rng = rng_from_seed(2024);
        let mut empties = 0;
        for _ in 0..400 {
            let g = random_auxiliary(&mut rng, 10, 1..=3);
            let greedy = contracts_to_empty(&g).is_empty_terminal();
            assert_eq!(greedy, some_order_empties(&g), "{}", g.to_json());
            let random = contract_with(&g, |e| rng.gen_range(0..e.len())).is_empty_terminal();
            assert_eq!(greedy, random);
            empties += greedy as usize;
        }
        assert!(empties > 10, "corpus should contain contractible graphs, got {empties}");
    }

    #[test]
    fn replay_rejects_tampering() {
        let g = chain_with_minus_one_end(3);
        let mut trace = contracts_to_empty(&g);
        trace.steps.swap(0, 1);
        assert!(!replay(&g, &trace));
    }
}
