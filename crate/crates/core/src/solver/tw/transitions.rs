use std::collections::HashMap;
use std::rc::Rc;

use super::record::{CurrentEntry, OpenEntry, Record, RecordKey, Rope, Table, Tree, Witness};
use crate::{max_cluster_size_bound, ColoredInstance, Cost, FairletVector};

/// Which records survive a forget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Every open cluster is kept.
    Xp,
    /// Fairlet size 2: only open clusters of size 2 with one forgotten
    /// member. Fairlet size 1: no open clusters.
    Small,
}

/// Instance data shared by all transitions.
#[derive(Debug, Clone)]
pub struct TwContext<'a> {
    instance: &'a ColoredInstance,
    fairlet: FairletVector,
    sizes: Vec<usize>,
    variant: Variant,
}

impl<'a> TwContext<'a> {
    /// Cluster sizes are the multiples of the fairlet size up to
    /// `min(n, max(24 * width, fairlet size))`.
    pub fn new(instance: &'a ColoredInstance, width: usize, variant: Variant) -> Self {
        let fairlet = instance.fairlet();
        let c = fairlet.size();
        let cap = max_cluster_size_bound(width, c).min(instance.n());
        let sizes = (1..=cap / c).map(|d| d * c).collect();
        Self {
            instance,
            fairlet,
            sizes,
            variant,
        }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn fairlet(&self) -> &FairletVector {
        &self.fairlet
    }

    fn capacity(&self, size: usize, color: usize) -> usize {
        self.fairlet.count(color) * (size / self.fairlet.size())
    }

    fn bag_count(&self, bag: &[usize], color: usize) -> usize {
        bag.iter()
            .filter(|&&u| self.instance.color(u) == color)
            .count()
    }

    fn is_full(&self, size: usize, counts: &[usize]) -> bool {
        counts
            .iter()
            .enumerate()
            .all(|(i, &x)| x == self.capacity(size, i))
    }

    fn keeps_open(&self, entry: &OpenEntry) -> bool {
        match (self.variant, self.fairlet.size()) {
            (Variant::Xp, _) => true,
            (Variant::Small, 2) => entry.size == 2 && entry.past.iter().sum::<usize>() == 1,
            (Variant::Small, _) => false,
        }
    }

    /// Vertices still to be placed into each entry do not exceed the
    /// unseen vertices of their color.
    pub fn satisfiable(&self, key: &RecordKey, unseen: &[usize]) -> bool {
        (0..self.fairlet.kappa()).all(|i| {
            let open: usize = key
                .open
                .iter()
                .map(|e| self.capacity(e.size, i) - e.past[i])
                .sum();
            let current: usize = key
                .current
                .iter()
                .map(|e| self.capacity(e.size, i) - e.past[i] - self.bag_count(&e.bag, i))
                .sum();
            open + current <= unseen[i]
        })
    }
}

fn parts(
    key: &RecordKey,
    w: &Witness,
) -> (Vec<(OpenEntry, Rc<Rope>)>, Vec<(CurrentEntry, Rc<Rope>)>) {
    (
        key.open
            .iter()
            .cloned()
            .zip(w.open.iter().cloned())
            .collect(),
        key.current
            .iter()
            .cloned()
            .zip(w.current.iter().cloned())
            .collect(),
    )
}

pub fn leaf_table(ctx: &TwContext, v: usize) -> Table {
    process_introduce(ctx, &empty_table(), v)
}

/// The table of an empty bag with nothing below it.
pub fn empty_table() -> Table {
    let mut t = Table::default();
    t.offer(
        RecordKey {
            open: Vec::new(),
            current: Vec::new(),
        },
        Record {
            cost: 0,
            witness: Witness::empty(),
        },
    );
    t
}

pub fn process_introduce(ctx: &TwContext, table: &Table, v: usize) -> Table {
    let kappa = ctx.fairlet.kappa();
    let cv = ctx.instance.color(v);
    let mut out = Table::default();
    for (key, rec) in table.iter() {
        let w = &rec.witness;
        let (open, current) = parts(key, w);
        for &size in &ctx.sizes {
            let mut cur = current.clone();
            cur.push((
                CurrentEntry {
                    size,
                    past: vec![0; kappa],
                    bag: vec![v],
                },
                Tree::nil(),
            ));
            out.offer_parts(open.clone(), cur, w.done.clone(), rec.cost);
        }
        for (j, e) in key.current.iter().enumerate() {
            if ctx.bag_count(&e.bag, cv) + e.past[cv] >= ctx.capacity(e.size, cv) {
                continue;
            }
            let mut cur = current.clone();
            let bag = &mut cur[j].0.bag;
            bag.push(v);
            bag.sort_unstable();
            out.offer_parts(open.clone(), cur, w.done.clone(), rec.cost);
        }
        for (j, e) in key.open.iter().enumerate() {
            if j > 0 && key.open[j - 1] == *e {
                continue;
            }
            if e.past[cv] >= ctx.capacity(e.size, cv) {
                continue;
            }
            let mut op = open.clone();
            let (entry, rope) = op.remove(j);
            let mut cur = current.clone();
            cur.push((
                CurrentEntry {
                    size: entry.size,
                    past: entry.past,
                    bag: vec![v],
                },
                rope,
            ));
            out.offer_parts(op, cur, w.done.clone(), rec.cost);
        }
    }
    out
}

pub fn process_forget(ctx: &TwContext, table: &Table, v: usize) -> Table {
    let g = ctx.instance.graph();
    let cv = ctx.instance.color(v);
    let mut out = Table::default();
    for (key, rec) in table.iter() {
        let w = &rec.witness;
        let (mut open, mut current) = parts(key, w);
        let j = key
            .current
            .iter()
            .position(|e| e.bag.binary_search(&v).is_ok())
            .expect("forgotten vertex lies in the bag");
        let e = &key.current[j];
        let missing_inside = e
            .bag
            .iter()
            .filter(|&&u| u != v && !g.has_edge(u, v))
            .count();
        let cut = key
            .current
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .flat_map(|(_, o)| o.bag.iter())
            .filter(|&&u| g.has_edge(u, v))
            .count();
        let unseen_members = e.size - e.bag.len() - e.past_total();
        let cost = rec.cost + (missing_inside + cut + unseen_members) as Cost;

        let (mut entry, rope) = current.remove(j);
        let rope = Tree::cat(&rope, &Tree::leaf(v));
        entry.past[cv] += 1;
        entry.bag.retain(|&u| u != v);
        let mut done = w.done.clone();
        if !entry.bag.is_empty() {
            current.push((entry, rope));
        } else if ctx.is_full(entry.size, &entry.past) {
            done = Tree::cat(&done, &Tree::leaf(rope));
        } else {
            let entry = OpenEntry {
                size: entry.size,
                past: entry.past,
            };
            if !ctx.keeps_open(&entry) {
                continue;
            }
            open.push((entry, rope));
        }
        out.offer_parts(open, current, done, cost);
    }
    out
}

fn current_shape(key: &RecordKey) -> Vec<(usize, &[usize])> {
    key.current
        .iter()
        .map(|e| (e.size, e.bag.as_slice()))
        .collect()
}

/// Open entries grouped by value: (entry, indices into the key).
fn grouped(open: &[OpenEntry]) -> Vec<(&OpenEntry, Vec<usize>)> {
    let mut out: Vec<(&OpenEntry, Vec<usize>)> = Vec::new();
    for (i, e) in open.iter().enumerate() {
        match out.last_mut() {
            Some((last, idx)) if *last == e => idx.push(i),
            _ => out.push((e, vec![i])),
        }
    }
    out
}

struct JoinSide<'k> {
    key: &'k RecordKey,
    rec: &'k Record,
    groups: Vec<(&'k OpenEntry, Vec<usize>)>,
}

pub fn process_join(ctx: &TwContext, left: &Table, right: &Table) -> Table {
    let mut by_shape: HashMap<Vec<(usize, &[usize])>, Vec<JoinSide>> = HashMap::new();
    for (key, rec) in right.iter() {
        by_shape
            .entry(current_shape(key))
            .or_default()
            .push(JoinSide {
                key,
                rec,
                groups: grouped(&key.open),
            });
    }
    let mut out = Table::default();
    for (pkey, prec) in left.iter() {
        let Some(partners) = by_shape.get(&current_shape(pkey)) else {
            continue;
        };
        let p = JoinSide {
            key: pkey,
            rec: prec,
            groups: grouped(&pkey.open),
        };
        for q in partners {
            join_pair(ctx, &p, q, &mut out);
        }
    }
    out
}

fn join_pair(ctx: &TwContext, p: &JoinSide, q: &JoinSide, out: &mut Table) {
    let kappa = ctx.fairlet.kappa();
    let mut current = Vec::with_capacity(p.key.current.len());
    let mut overlap: Cost = 0;
    for (j, (a, b)) in p.key.current.iter().zip(&q.key.current).enumerate() {
        let mut past = vec![0; kappa];
        for i in 0..kappa {
            past[i] = a.past[i] + b.past[i];
            if past[i] + ctx.bag_count(&a.bag, i) > ctx.capacity(a.size, i) {
                return;
            }
        }
        overlap += (a.past_total() * b.past_total()) as Cost;
        let rope = Tree::cat(&p.rec.witness.current[j], &q.rec.witness.current[j]);
        current.push((
            CurrentEntry {
                size: a.size,
                past,
                bag: a.bag.clone(),
            },
            rope,
        ));
    }
    let base = p.rec.cost + q.rec.cost - overlap;
    let done = Tree::cat(&p.rec.witness.done, &q.rec.witness.done);
    // merges[a][b]: how many left entries of group a pair with right group b
    let mut merges = vec![vec![0usize; q.groups.len()]; p.groups.len()];
    let mut q_used = vec![0usize; q.groups.len()];
    merge_opens(
        ctx,
        p,
        q,
        0,
        0,
        0,
        &mut merges,
        &mut q_used,
        &mut |merges| {
            emit_join(ctx, p, q, merges, &current, &done, base, out);
        },
    );
}

#[allow(clippy::too_many_arguments)]
fn merge_opens(
    ctx: &TwContext,
    p: &JoinSide,
    q: &JoinSide,
    a: usize,
    b: usize,
    p_used: usize,
    merges: &mut Vec<Vec<usize>>,
    q_used: &mut Vec<usize>,
    emit: &mut impl FnMut(&[Vec<usize>]),
) {
    if a == p.groups.len() {
        emit(merges);
        return;
    }
    if b == q.groups.len() {
        merge_opens(ctx, p, q, a + 1, 0, 0, merges, q_used, emit);
        return;
    }
    let (pe, pidx) = &p.groups[a];
    let (qe, qidx) = &q.groups[b];
    let fits = pe.size == qe.size
        && (0..ctx.fairlet.kappa()).all(|i| pe.past[i] + qe.past[i] <= ctx.capacity(pe.size, i));
    let most = if fits {
        (pidx.len() - p_used).min(qidx.len() - q_used[b])
    } else {
        0
    };
    for k in 0..=most {
        merges[a][b] = k;
        q_used[b] += k;
        merge_opens(ctx, p, q, a, b + 1, p_used + k, merges, q_used, emit);
        q_used[b] -= k;
    }
    merges[a][b] = 0;
}

#[allow(clippy::too_many_arguments)]
fn emit_join(
    ctx: &TwContext,
    p: &JoinSide,
    q: &JoinSide,
    merges: &[Vec<usize>],
    current: &[(CurrentEntry, Rc<Rope>)],
    done: &Rc<Tree<Rc<Rope>>>,
    base: Cost,
    out: &mut Table,
) {
    let mut cost = base;
    let mut done = done.clone();
    let mut open = Vec::new();
    let mut q_next = vec![0usize; q.groups.len()];
    for (a, (pe, pidx)) in p.groups.iter().enumerate() {
        let mut p_next = 0;
        for (b, (qe, qidx)) in q.groups.iter().enumerate() {
            for _ in 0..merges[a][b] {
                let pr = &p.rec.witness.open[pidx[p_next]];
                let qr = &q.rec.witness.open[qidx[q_next[b]]];
                p_next += 1;
                q_next[b] += 1;
                let past: Vec<usize> = pe.past.iter().zip(&qe.past).map(|(x, y)| x + y).collect();
                cost -= (pe.past.iter().sum::<usize>() * qe.past.iter().sum::<usize>()) as Cost;
                let rope = Tree::cat(pr, qr);
                if ctx.is_full(pe.size, &past) {
                    done = Tree::cat(&done, &Tree::leaf(rope));
                } else {
                    open.push((
                        OpenEntry {
                            size: pe.size,
                            past,
                        },
                        rope,
                    ));
                }
            }
        }
        for &i in &pidx[p_next..] {
            open.push(((*pe).clone(), p.rec.witness.open[i].clone()));
        }
    }
    for (b, (qe, qidx)) in q.groups.iter().enumerate() {
        for &i in &qidx[q_next[b]..] {
            open.push(((*qe).clone(), q.rec.witness.open[i].clone()));
        }
    }
    out.offer_parts(open, current.to_vec(), done, cost);
}
