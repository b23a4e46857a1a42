use std::collections::VecDeque;

use super::SparseGraph;

/// Output of [`connected_components`].
#[derive(Clone, Debug)]
pub struct ComponentLabeling {
    pub n_components: usize,
    /// Component id per vertex, contiguous from 0 in order of discovery.
    pub labels: Vec<usize>,
}

/// BFS labeling of connected components.
pub fn connected_components(g: &SparseGraph) -> ComponentLabeling {
    let n = g.n_vertices();
    let mut labels = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    let mut comp = 0;
    for start in 0..n {
        if labels[start] != usize::MAX {
            continue;
        }
        labels[start] = comp;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for (v, _) in g.neighbors(u) {
                if labels[v] == usize::MAX {
                    labels[v] = comp;
                    queue.push_back(v);
                }
            }
        }
        comp += 1;
    }
    ComponentLabeling {
        n_components: comp,
        labels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_disjoint_edges() {
        let g = SparseGraph::from_undirected_edges(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        let c = connected_components(&g);
        assert_eq!(c.n_components, 2);
        assert_eq!(c.labels, vec![0, 0, 1, 1]);
    }

    #[test]
    fn path_is_one_component() {
        let g = SparseGraph::from_undirected_edges(
            5,
            (0..4).map(|i| (i, i + 1, 1.0)),
        )
        .unwrap();
        assert_eq!(connected_components(&g).n_components, 1);
    }

    #[test]
    fn edgeless_vertices_are_singletons() {
        let g = SparseGraph::from_undirected_edges(3, []).unwrap();
        let c = connected_components(&g);
        assert_eq!(c.n_components, 3);
        assert_eq!(c.labels, vec![0, 1, 2]);
    }
}
