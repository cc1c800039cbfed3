//! Strong connectivity of the interaction network.
//!
//! Edge i→j exists when i beat j at least once; a tie is an edge in both
//! directions. The maximum-likelihood estimate exists only when this digraph
//! is strongly connected.

use crate::model::ComparisonData;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractionDigraph {
    out: Vec<Vec<usize>>,
}

impl InteractionDigraph {
    pub fn from_data(data: &ComparisonData) -> Self {
        let out = (0..data.n_players())
            .map(|i| {
                data.pairings(i)
                    .iter()
                    .filter(|p| p.won > 0.0 || p.tied > 0.0)
                    .map(|p| p.opponent)
                    .collect()
            })
            .collect();
        InteractionDigraph { out }
    }

    pub fn n_nodes(&self) -> usize {
        self.out.len()
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.out[i]
    }

    /// Tarjan's algorithm with an explicit call stack. Each component is
    /// sorted; components are ordered by their smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        const UNSEEN: usize = usize::MAX;
        let n = self.n_nodes();
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut next_index = 0;
        let mut comps = Vec::new();
        // (node, position in its successor list)
        let mut calls: Vec<(usize, usize)> = Vec::new();

        for root in 0..n {
            if index[root] != UNSEEN {
                continue;
            }
            calls.push((root, 0));
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut pos)) = calls.last_mut() {
                if let Some(&w) = self.out[v].get(*pos) {
                    *pos += 1;
                    if index[w] == UNSEEN {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        calls.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                calls.pop();
                if let Some(&(parent, _)) = calls.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
        comps.sort_by_key(|c| c[0]);
        comps
    }
}

/// Partition of the players into strongly connected components.
pub fn strongly_connected_components(data: &ComparisonData) -> Vec<Vec<usize>> {
    InteractionDigraph::from_data(data).components()
}

pub fn is_strongly_connected(data: &ComparisonData) -> bool {
    strongly_connected_components(data).len() == 1
}

/// Restricts the data to its largest strongly connected component (ties in
/// size go to the component with the smallest member). Returns the removed
/// player ids in index order.
pub fn restrict_to_largest_scc(data: &ComparisonData) -> (ComparisonData, Vec<String>) {
    let comps = strongly_connected_components(data);
    if comps.len() <= 1 {
        return (data.clone(), Vec::new());
    }
    // components are ordered by smallest member, so the first maximum wins
    let mut best = 0;
    for (k, c) in comps.iter().enumerate() {
        if c.len() > comps[best].len() {
            best = k;
        }
    }
    let keep = &comps[best];
    let mut kept = vec![false; data.n_players()];
    for &k in keep {
        kept[k] = true;
    }
    let removed = (0..data.n_players())
        .filter(|&k| !kept[k])
        .map(|k| data.ids()[k].clone())
        .collect();
    (data.restrict(keep), removed)
}
