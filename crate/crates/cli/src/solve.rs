//! Solver dispatch.

use std::fmt;
use std::time::Instant;

use fcc_core::decomp::{
    min_vertex_cover, to_nice, tree_decomposition, TreeDecomposition, TreeDecompositionMode,
    TreedepthForest,
};
use fcc_core::oracle::{brute_force_optimum, OracleConfig};
use fcc_core::solver::td::{decide_td, prepare, solve_td, TdConfig};
use fcc_core::solver::tw::{solve_tw_fpt2, solve_tw_xp};
use fcc_core::solver::vc::solve_vc_with_cover;
use fcc_core::{clustering_cost, is_fair, max_cluster_size_bound, ColoredInstance, Solution};

use crate::report::{one_based, Parameters, SolutionReport};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Algo {
    Oracle,
    Vc,
    TwXp,
    TwFpt2,
    Td,
}

impl Algo {
    pub const ALL: [Algo; 5] = [Algo::Oracle, Algo::Vc, Algo::TwXp, Algo::TwFpt2, Algo::Td];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Oracle => "oracle",
            Algo::Vc => "vc",
            Algo::TwXp => "tw-xp",
            Algo::TwFpt2 => "tw-fpt2",
            Algo::Td => "td",
        }
    }

    fn hint(self) -> &'static str {
        match self {
            Algo::Oracle => "raise --oracle-cap or pick another --algo",
            Algo::Vc => "pick another --algo",
            Algo::TwXp => "supply a narrower --td-file or pick another --algo",
            Algo::TwFpt2 => "use --algo tw-xp for fairlets larger than 2",
            Algo::Td => "raise --gamma to at least the fairlet size, or pick another --algo",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Largest instance for which decompositions are computed exactly.
pub const EXACT_DECOMPOSITION_LIMIT: usize = 20;

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub algo: Algo,
    pub budget: Option<u64>,
    pub tree_decomposition: Option<TreeDecomposition>,
    pub forest: Option<TreedepthForest>,
    pub gamma: Option<usize>,
    pub oracle_cap: usize,
    /// Recorded in the report; the solvers are deterministic.
    pub seed: Option<u64>,
}

impl SolveOptions {
    pub fn new(algo: Algo) -> Self {
        Self {
            algo,
            budget: None,
            tree_decomposition: None,
            forest: None,
            gamma: None,
            oracle_cap: OracleConfig::DEFAULT_CAP,
            seed: None,
        }
    }
}

pub fn tree_decomposition_for(
    instance: &ColoredInstance,
    given: Option<&TreeDecomposition>,
) -> Result<TreeDecomposition, CliError> {
    let mode = match given {
        Some(td) => TreeDecompositionMode::Given(td.clone()),
        None if instance.n() <= EXACT_DECOMPOSITION_LIMIT => TreeDecompositionMode::exact(),
        None => TreeDecompositionMode::Heuristic,
    };
    Ok(tree_decomposition(instance.graph(), mode)?)
}

/// Runs the chosen solver. With a budget the report carries the decision;
/// a NO decision is still a successful solve.
pub fn solve(
    instance: &ColoredInstance,
    options: &SolveOptions,
) -> Result<SolutionReport, CliError> {
    let start = Instant::now();
    let algo = options.algo;
    let precondition = |e: fcc_core::Error| match e {
        fcc_core::Error::SizeLimit { .. } | fcc_core::Error::Parameter(_) => {
            CliError::Precondition(format!("{e}; {}", algo.hint()))
        }
        e => e.into(),
    };
    let mut params = Parameters::of(instance);
    let c = instance.fairlet().size();
    let solved: Option<Solution> = match algo {
        Algo::Oracle => {
            let cfg = OracleConfig {
                cap: options.oracle_cap,
                max_cluster_size: None,
            };
            Some(brute_force_optimum(instance, &cfg).map_err(precondition)?)
        }
        Algo::Vc => {
            let cover = min_vertex_cover(instance.graph());
            params.vertex_cover = Some(cover.k);
            Some(solve_vc_with_cover(instance, &cover.cover))
        }
        Algo::TwXp | Algo::TwFpt2 => {
            let td = tree_decomposition_for(instance, options.tree_decomposition.as_ref())?;
            let nice = to_nice(&td, instance.graph())?;
            params.width = Some(td.width());
            params.gamma = Some(max_cluster_size_bound(td.width(), c).min(instance.n()));
            let sol = if algo == Algo::TwXp {
                solve_tw_xp(instance, &nice)
            } else {
                solve_tw_fpt2(instance, &nice)
            };
            Some(sol.map_err(precondition)?)
        }
        Algo::Td => {
            let cfg = TdConfig {
                gamma: options.gamma,
                forest: options.forest.clone(),
                ..TdConfig::default()
            };
            let pipeline = prepare(instance, &cfg).map_err(precondition)?;
            params.height = Some(pipeline.forest.height());
            params.gamma = Some(pipeline.gamma);
            params.removed_edges = Some(pipeline.reduced.removed.len());
            let cfg = TdConfig {
                forest: Some(pipeline.forest),
                ..cfg
            };
            match options.budget {
                Some(b) => match decide_td(instance, b, &cfg).map_err(precondition)? {
                    Some(clustering) => Some(Solution {
                        cost: clustering_cost(instance, &clustering)?,
                        clustering,
                    }),
                    None => None,
                },
                None => Some(solve_td(instance, &cfg).map_err(precondition)?),
            }
        }
    };
    let decision = options
        .budget
        .map(|b| solved.as_ref().is_some_and(|s| s.cost <= b));
    let fair = solved
        .as_ref()
        .is_some_and(|s| is_fair(&s.clustering, &instance.fairlet(), instance.colors()));
    Ok(SolutionReport {
        solver: algo.name().to_string(),
        parameters: params,
        budget: options.budget,
        decision,
        cost: solved.as_ref().map(|s| s.cost),
        clusters: solved
            .as_ref()
            .map_or(Vec::new(), |s| one_based(&s.clustering)),
        fair,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        seed: options.seed,
    })
}
