use super::{FairletVector, Graph};
use crate::{Error, Result};

/// The problem input: a graph, a vertex coloring with colors `0..kappa`, and an
/// optional budget.
///
/// Construction enforces `n >= 1` and that every color in `0..kappa` is used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredInstance {
    graph: Graph,
    colors: Vec<usize>,
    kappa: usize,
    budget: Option<u64>,
}

impl ColoredInstance {
    pub fn new(graph: Graph, colors: Vec<usize>, budget: Option<u64>) -> Result<Self> {
        let n = graph.n();
        if n == 0 {
            return Err(Error::InvalidInstance("instance has no vertices".into()));
        }
        if colors.len() != n {
            return Err(Error::InvalidInstance(format!(
                "{} colors given for {n} vertices",
                colors.len()
            )));
        }
        let kappa = colors.iter().max().map_or(0, |&c| c + 1);
        let mut used = vec![false; kappa];
        for &c in &colors {
            used[c] = true;
        }
        if let Some(c) = used.iter().position(|&u| !u) {
            return Err(Error::InvalidInstance(format!("color {c} is never used")));
        }
        Ok(Self {
            graph,
            colors,
            kappa,
            budget,
        })
    }

    /// Convenience constructor from an edge list.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        colors: Vec<usize>,
    ) -> Result<Self> {
        Self::new(Graph::new(n, edges)?, colors, None)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    /// Same coloring and budget on a different graph over the same vertex set.
    pub fn with_graph(&self, graph: Graph) -> Self {
        assert_eq!(graph.n(), self.n());
        Self {
            graph,
            colors: self.colors.clone(),
            kappa: self.kappa,
            budget: self.budget,
        }
    }

    /// Number of vertices of each color.
    pub fn color_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.kappa];
        for &c in &self.colors {
            counts[c] += 1;
        }
        counts
    }

    pub fn fairlet(&self) -> FairletVector {
        FairletVector::from_color_counts(&self.color_counts())
    }
}
