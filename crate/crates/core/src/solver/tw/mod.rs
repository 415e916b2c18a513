//! Dynamic programs over a nice tree decomposition.
//!
//! A record describes how the vertices seen so far are split into clusters:
//! clusters that still meet the bag are *current*, clusters that do not yet
//! have all their members but no longer meet the bag are *open*. Both carry
//! the final cluster size and per-color counts of forgotten members. Costs are
//! charged when a vertex is forgotten: missing edges to co-clustered bag
//! vertices and to members not yet seen, and edges to bag vertices in other
//! clusters.

mod record;
mod transitions;

pub use record::{CurrentEntry, OpenEntry, Record, RecordKey, Table, Witness};
pub use transitions::{
    empty_table, leaf_table, process_forget, process_introduce, process_join, TwContext, Variant,
};

use crate::decomp::{NiceTreeDecomposition, NodeKind};
use crate::{Clustering, ColoredInstance, Error, Result, Solution};

/// Exact optimum for any fairlet size.
pub fn solve_tw_xp(instance: &ColoredInstance, nice: &NiceTreeDecomposition) -> Result<Solution> {
    solve_tw(instance, nice, Variant::Xp)
}

/// Exact optimum for fairlet size at most 2, keeping far fewer open clusters.
pub fn solve_tw_fpt2(instance: &ColoredInstance, nice: &NiceTreeDecomposition) -> Result<Solution> {
    let size = instance.fairlet().size();
    if size > 2 {
        return Err(Error::Parameter(format!(
            "this dynamic program requires fairlet size at most 2, got {size}"
        )));
    }
    solve_tw(instance, nice, Variant::Small)
}

pub fn solve_tw(
    instance: &ColoredInstance,
    nice: &NiceTreeDecomposition,
    variant: Variant,
) -> Result<Solution> {
    nice.validate(instance.graph())?;
    let ctx = TwContext::new(instance, nice.width(), variant);
    let kappa = instance.kappa();
    let totals = instance.color_counts();
    let mut past = vec![vec![0usize; kappa]; nice.nodes.len()];
    let mut tables: Vec<Option<Table>> = vec![None; nice.nodes.len()];
    for (i, node) in nice.nodes.iter().enumerate() {
        for &c in &node.children {
            let below = past[c].clone();
            past[i].iter_mut().zip(below).for_each(|(p, b)| *p += b);
        }
        let mut table = match node.kind {
            NodeKind::Leaf => leaf_table(&ctx, node.bag[0]),
            NodeKind::Introduce(v) => {
                let child = tables[node.children[0]].take().expect("child table");
                process_introduce(&ctx, &child, v)
            }
            NodeKind::Forget(v) => {
                past[i][instance.color(v)] += 1;
                let child = tables[node.children[0]].take().expect("child table");
                process_forget(&ctx, &child, v)
            }
            NodeKind::Join => {
                let l = tables[node.children[0]].take().expect("child table");
                let r = tables[node.children[1]].take().expect("child table");
                process_join(&ctx, &l, &r)
            }
        };
        let mut unseen: Vec<usize> = (0..kappa).map(|k| totals[k] - past[i][k]).collect();
        for &u in &node.bag {
            unseen[instance.color(u)] -= 1;
        }
        table.retain(|key| ctx.satisfiable(key, &unseen));
        if variant == Variant::Small && ctx.fairlet().size() == 2 {
            debug_assert!(table.iter().all(|(k, _)| k
                .open
                .iter()
                .all(|e| e.size == 2 && e.past.iter().sum::<usize>() == 1)));
        }
        tables[i] = Some(table);
    }
    let root = tables[nice.root()].take().expect("root table");
    debug_assert!(root.iter().all(|(k, _)| k.current.is_empty()));
    let empty = RecordKey {
        open: Vec::new(),
        current: Vec::new(),
    };
    let rec = root
        .get(&empty)
        .expect("the single all-vertex cluster always survives to the root");
    let clustering = Clustering::new(instance.n(), rec.witness.finished_clusters())?;
    Ok(Solution {
        cost: rec.cost,
        clustering,
    })
}
