//! Solver parameterized by treedepth and fairlet size.
//!
//! Vertices with many identical sibling subtrees cannot keep all of them in
//! their cluster, so all but `gamma` such subtrees per type are cut off. The
//! remaining components are small; they are grouped into isomorphism classes
//! and an integer program chooses how each class is split and how the parts
//! are combined into fair clusters.

mod classes;
mod program;
mod reduce;
mod types;

pub use classes::{canonical_form, component_classes, CanonicalCode, ComponentClass};
pub use program::{
    build_program, cluster_cost, cut_options, fair_shapes, CutOption, Shape, TdProgram, TypeVector,
};
pub use reduce::{reduce_by_types, ReducedInstance};
pub use types::{vertex_types, VertexType};

use crate::decomp::{treedepth_forest, TreedepthForest, TreedepthMode};
use crate::{
    clustering_cost, max_cluster_size_bound, Clustering, ColoredInstance, Cost, Error, Result,
    Solution,
};

#[derive(Debug, Clone)]
pub struct TdConfig {
    /// Overrides `max(24 * forest height, fairlet size)`.
    pub gamma: Option<usize>,
    /// Largest component the program accepts.
    pub component_cap: usize,
    /// Forest to use; computed when absent.
    pub forest: Option<TreedepthForest>,
}

impl TdConfig {
    pub const DEFAULT_COMPONENT_CAP: usize = 10;
}

impl Default for TdConfig {
    fn default() -> Self {
        Self {
            gamma: None,
            component_cap: Self::DEFAULT_COMPONENT_CAP,
            forest: None,
        }
    }
}

/// Forest, cap and reduction shared by optimization and decision.
#[derive(Debug, Clone)]
pub struct TdPipeline {
    pub forest: TreedepthForest,
    pub gamma: usize,
    pub reduced: ReducedInstance,
}

pub fn prepare(instance: &ColoredInstance, config: &TdConfig) -> Result<TdPipeline> {
    let forest = match &config.forest {
        Some(f) => treedepth_forest(instance.graph(), TreedepthMode::Given(f.clone()))?,
        None if instance.n() <= TreedepthMode::DEFAULT_EXACT_LIMIT => {
            treedepth_forest(instance.graph(), TreedepthMode::exact())?
        }
        None => treedepth_forest(instance.graph(), TreedepthMode::Heuristic)?,
    };
    let c = instance.fairlet().size();
    let gamma = config
        .gamma
        .unwrap_or_else(|| max_cluster_size_bound(forest.height(), c));
    if gamma < c {
        return Err(Error::Parameter(format!(
            "cluster-size cap {gamma} is below the fairlet size {c}"
        )));
    }
    let reduced = reduce_by_types(instance, &forest, gamma);
    Ok(TdPipeline {
        forest,
        gamma,
        reduced,
    })
}

/// Minimum cost on the reduced graph over fair clusterings with clusters of
/// at most `gamma` vertices.
pub fn solve_reduced(
    instance: &ColoredInstance,
    reduced: &ReducedInstance,
    gamma: usize,
    component_cap: usize,
) -> Result<(Cost, Clustering)> {
    let classes = component_classes(&reduced.graph, instance.colors(), component_cap)?;
    let program = build_program(&classes, &instance.fairlet(), gamma.min(instance.n()));
    let solution = program
        .solve()
        .ok_or_else(|| Error::Parameter("no fair clustering within the cluster-size cap".into()))?;
    let clusters = program.realize(&classes, &solution.values);
    let clustering = Clustering::new(instance.n(), clusters)?;
    Ok((solution.objective as Cost, clustering))
}

/// Optimum of the instance. The reduced optimum plus the number of removed
/// edges is reported through the cost of the realized clustering on the
/// original graph.
pub fn solve_td(instance: &ColoredInstance, config: &TdConfig) -> Result<Solution> {
    let pipeline = prepare(instance, config)?;
    let (reduced_cost, clustering) = solve_reduced(
        instance,
        &pipeline.reduced,
        pipeline.gamma,
        config.component_cap,
    )?;
    let cost = clustering_cost(instance, &clustering)?;
    debug_assert!(cost <= reduced_cost + pipeline.reduced.removed.len() as Cost);
    Ok(Solution { cost, clustering })
}

/// A fair clustering of cost at most `budget`, if the decision procedure
/// finds one.
pub fn decide_td(
    instance: &ColoredInstance,
    budget: Cost,
    config: &TdConfig,
) -> Result<Option<Clustering>> {
    let instance = instance.clone().with_budget(Some(budget));
    let pipeline = prepare(&instance, config)?;
    if pipeline.reduced.rejected() {
        return Ok(None);
    }
    let (reduced_cost, clustering) = solve_reduced(
        &instance,
        &pipeline.reduced,
        pipeline.gamma,
        config.component_cap,
    )?;
    Ok((reduced_cost as i64 <= pipeline.reduced.budget.unwrap()).then_some(clustering))
}
