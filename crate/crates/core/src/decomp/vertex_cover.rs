use crate::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCoverResult {
    /// Cover vertices, ascending.
    pub cover: Vec<usize>,
    pub k: usize,
}

/// Minimum vertex cover by max-degree branching (take the vertex, or take all
/// of its neighbors) with degree-0/1 kernelization at every node.
pub fn min_vertex_cover(graph: &Graph) -> VertexCoverResult {
    let n = graph.n();
    let mut search = Search {
        graph,
        alive: vec![true; n],
        degree: (0..n).map(|v| graph.degree(v)).collect(),
        edges_left: graph.m(),
        chosen: Vec::new(),
        best: None,
    };
    search.run();
    let mut cover = search.best.unwrap_or_default();
    cover.sort_unstable();
    VertexCoverResult {
        k: cover.len(),
        cover,
    }
}

struct Search<'a> {
    graph: &'a Graph,
    alive: Vec<bool>,
    degree: Vec<usize>,
    edges_left: usize,
    chosen: Vec<usize>,
    best: Option<Vec<usize>>,
}

impl Search<'_> {
    fn remove(&mut self, v: usize, trail: &mut Vec<usize>) {
        debug_assert!(self.alive[v]);
        self.alive[v] = false;
        for &u in self.graph.neighbors(v) {
            if self.alive[u] {
                self.degree[u] -= 1;
                self.edges_left -= 1;
            }
        }
        trail.push(v);
    }

    fn restore(&mut self, trail: &mut Vec<usize>, mark: usize) {
        while trail.len() > mark {
            let v = trail.pop().unwrap();
            for &u in self.graph.neighbors(v) {
                if self.alive[u] {
                    self.degree[u] += 1;
                    self.edges_left += 1;
                }
            }
            self.alive[v] = true;
        }
    }

    fn take(&mut self, v: usize, trail: &mut Vec<usize>) {
        self.chosen.push(v);
        self.remove(v, trail);
    }

    fn best_len(&self) -> usize {
        self.best.as_ref().map_or(usize::MAX, Vec::len)
    }

    fn run(&mut self) {
        let mut trail = Vec::new();
        self.branch(&mut trail);
    }

    fn branch(&mut self, trail: &mut Vec<usize>) {
        let mark = trail.len();
        let chosen_mark = self.chosen.len();
        // kernelize: drop isolated vertices, take the neighbor of every pendant vertex
        loop {
            let mut changed = false;
            for v in 0..self.alive.len() {
                if !self.alive[v] {
                    continue;
                }
                match self.degree[v] {
                    0 => {
                        self.remove(v, trail);
                        changed = true;
                    }
                    1 => {
                        let u = *self
                            .graph
                            .neighbors(v)
                            .iter()
                            .find(|&&u| self.alive[u])
                            .unwrap();
                        self.take(u, trail);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        if self.edges_left == 0 {
            if self.chosen.len() < self.best_len() {
                self.best = Some(self.chosen.clone());
            }
        } else {
            let (v, maxdeg) = (0..self.alive.len())
                .filter(|&v| self.alive[v])
                .map(|v| (v, self.degree[v]))
                .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
                .unwrap();
            let lower = self.chosen.len() + self.edges_left.div_ceil(maxdeg);
            if lower < self.best_len() {
                let inner = trail.len();
                let inner_chosen = self.chosen.len();
                self.take(v, trail);
                self.branch(trail);
                self.restore(trail, inner);
                self.chosen.truncate(inner_chosen);

                let nbrs: Vec<usize> = self
                    .graph
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&u| self.alive[u])
                    .collect();
                if self.chosen.len() + nbrs.len() < self.best_len() {
                    for u in nbrs {
                        self.take(u, trail);
                    }
                    self.branch(trail);
                    self.restore(trail, inner);
                    self.chosen.truncate(inner_chosen);
                }
            }
        }
        self.restore(trail, mark);
        self.chosen.truncate(chosen_mark);
    }
}

pub fn is_vertex_cover(graph: &Graph, cover: &[usize]) -> bool {
    let mut inside = vec![false; graph.n()];
    for &v in cover {
        inside[v] = true;
    }
    graph.edges().all(|(u, v)| inside[u] || inside[v])
}
