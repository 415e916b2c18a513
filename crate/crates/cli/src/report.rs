use std::fmt;

use serde::{Deserialize, Serialize};

use fcc_core::oracle::verify_solution;
use fcc_core::{clustering_cost, is_fair, Clustering, ColoredInstance};

use crate::CliError;

/// Structural parameters of the solve; fields that the solver did not use
/// are absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub n: usize,
    pub m: usize,
    pub kappa: usize,
    pub fairlet: Vec<usize>,
    pub fairlet_size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_cover: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub removed_edges: Option<usize>,
}

impl Parameters {
    pub fn of(instance: &ColoredInstance) -> Self {
        let fairlet = instance.fairlet();
        Self {
            n: instance.n(),
            m: instance.graph().m(),
            kappa: instance.kappa(),
            fairlet: fairlet.counts().to_vec(),
            fairlet_size: fairlet.size(),
            vertex_cover: None,
            width: None,
            height: None,
            gamma: None,
            removed_edges: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub solver: String,
    pub parameters: Parameters,
    #[serde(default)]
    pub budget: Option<u64>,
    /// Present in decision mode.
    #[serde(default)]
    pub decision: Option<bool>,
    /// Cost of `clusters`; absent when a decision found no clustering.
    pub cost: Option<u64>,
    /// 1-based vertex ids.
    pub clusters: Vec<Vec<usize>>,
    pub fair: bool,
    pub wall_time_ms: f64,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl SolutionReport {
    /// The clustering with 0-based ids, if the report carries one.
    pub fn clustering(&self, n: usize) -> Result<Option<Clustering>, CliError> {
        if self.clusters.is_empty() {
            return Ok(None);
        }
        let mut clusters = Vec::with_capacity(self.clusters.len());
        for c in &self.clusters {
            let mut out = Vec::with_capacity(c.len());
            for &v in c {
                if v == 0 || v > n {
                    return Err(CliError::Verify(format!("vertex {v} out of range 1..={n}")));
                }
                out.push(v - 1);
            }
            clusters.push(out);
        }
        Clustering::new(n, clusters)
            .map(Some)
            .map_err(|e| CliError::Verify(e.to_string()))
    }
}

pub fn one_based(clustering: &Clustering) -> Vec<Vec<usize>> {
    clustering
        .clusters()
        .iter()
        .map(|c| c.iter().map(|v| v + 1).collect())
        .collect()
}

/// Rechecks a report against its instance: partition, fairness, the stated
/// cost, and the budget when one is given (explicitly or in the report).
pub fn verify_report(
    instance: &ColoredInstance,
    report: &SolutionReport,
    budget: Option<u64>,
) -> Result<u64, CliError> {
    let Some(clustering) = report.clustering(instance.n())? else {
        return Err(CliError::Verify("report carries no clustering".into()));
    };
    if !is_fair(&clustering, &instance.fairlet(), instance.colors()) {
        return Err(CliError::Verify("a cluster is not fair".into()));
    }
    let cost = clustering_cost(instance, &clustering)?;
    if report.cost != Some(cost) {
        return Err(CliError::Verify(format!(
            "report states cost {:?}, clustering costs {cost}",
            report.cost
        )));
    }
    if let Some(b) = budget.or(report.budget) {
        if !verify_solution(instance, &clustering, b) {
            return Err(CliError::Verify(format!("cost {cost} exceeds budget {b}")));
        }
    }
    Ok(cost)
}

impl fmt::Display for SolutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.parameters;
        writeln!(f, "solver        {}", self.solver)?;
        writeln!(f, "vertices      {}", p.n)?;
        writeln!(f, "edges         {}", p.m)?;
        writeln!(f, "colors        {}", p.kappa)?;
        let fl: Vec<String> = p.fairlet.iter().map(usize::to_string).collect();
        writeln!(
            f,
            "fairlet       ({}) size {}",
            fl.join(","),
            p.fairlet_size
        )?;
        let optional = [
            ("vertex cover", p.vertex_cover),
            ("width", p.width),
            ("height", p.height),
            ("gamma", p.gamma),
            ("removed edges", p.removed_edges),
        ];
        for (name, value) in optional {
            if let Some(v) = value {
                writeln!(f, "{name:<13} {v}")?;
            }
        }
        if let Some(b) = self.budget {
            writeln!(f, "budget        {b}")?;
        }
        if let Some(d) = self.decision {
            writeln!(f, "decision      {}", if d { "YES" } else { "NO" })?;
        }
        match self.cost {
            Some(c) => writeln!(f, "cost          {c}")?,
            None => writeln!(f, "cost          -")?,
        }
        let clusters: Vec<String> = self
            .clusters
            .iter()
            .map(|c| {
                let ids: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("{{{}}}", ids.join(","))
            })
            .collect();
        writeln!(f, "clusters      {}", clusters.join(" "))?;
        writeln!(f, "fair          {}", if self.fair { "yes" } else { "no" })?;
        write!(f, "time          {:.3} ms", self.wall_time_ms)
    }
}
