//! Branch and bound for small integer programs over bounded nonnegative
//! variables.
//!
//! Every node propagates variable intervals through the linear constraints
//! until nothing changes, then solves the linear relaxation for a bound and a
//! branching variable. Once an incumbent is known, the objective itself is
//! propagated as the constraint `objective <= incumbent - 1`.

use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    /// Sparse `(variable, coefficient)` pairs.
    pub terms: Vec<(usize, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program {
    upper: Vec<i64>,
    objective: Vec<i64>,
    constraints: Vec<Constraint>,
}

impl Program {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a variable with domain `[0, upper]` and returns its index.
    pub fn add_variable(&mut self, upper: i64, objective: i64) -> usize {
        assert!(upper >= 0, "upper bound must be nonnegative");
        self.upper.push(upper);
        self.objective.push(objective);
        self.upper.len() - 1
    }

    pub fn add_constraint(&mut self, terms: Vec<(usize, i64)>, relation: Relation, rhs: i64) {
        assert!(terms.iter().all(|&(v, _)| v < self.upper.len()));
        self.constraints.push(Constraint {
            terms,
            relation,
            rhs,
        });
    }

    pub fn num_variables(&self) -> usize {
        self.upper.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn upper(&self, var: usize) -> i64 {
        self.upper[var]
    }

    pub fn objective_value(&self, x: &[i64]) -> i64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn is_feasible(&self, x: &[i64]) -> bool {
        x.len() == self.upper.len()
            && x.iter()
                .zip(&self.upper)
                .all(|(&v, &u)| (0..=u).contains(&v))
            && self.constraints.iter().all(|c| {
                let lhs: i64 = c.terms.iter().map(|&(v, a)| a * x[v]).sum();
                match c.relation {
                    Relation::Eq => lhs == c.rhs,
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                }
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipSolution {
    pub objective: i64,
    pub values: Vec<i64>,
}

/// One `sum <= rhs` row; equalities and `>=` rows are split and negated.
struct Row {
    terms: Vec<(usize, i64)>,
    rhs: i64,
}

struct Search<'p> {
    program: &'p Program,
    rows: Vec<Row>,
    /// Rows containing each variable.
    occurs: Vec<Vec<usize>>,
    lo: Vec<i64>,
    hi: Vec<i64>,
    trail: Vec<(usize, i64, i64)>,
    queued: Vec<bool>,
}

impl<'p> Search<'p> {
    fn new(program: &'p Program) -> Self {
        let n = program.num_variables();
        let mut rows = Vec::new();
        for c in &program.constraints {
            let neg = || Row {
                terms: c.terms.iter().map(|&(v, a)| (v, -a)).collect(),
                rhs: -c.rhs,
            };
            let pos = || Row {
                terms: c.terms.clone(),
                rhs: c.rhs,
            };
            match c.relation {
                Relation::Le => rows.push(pos()),
                Relation::Ge => rows.push(neg()),
                Relation::Eq => {
                    rows.push(pos());
                    rows.push(neg());
                }
            }
        }
        // last row is the objective cutoff, inactive until an incumbent exists
        rows.push(Row {
            terms: program
                .objective
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != 0)
                .map(|(v, &c)| (v, c))
                .collect(),
            rhs: i64::MAX,
        });
        let mut occurs = vec![Vec::new(); n];
        for (r, row) in rows.iter().enumerate() {
            for &(v, _) in &row.terms {
                occurs[v].push(r);
            }
        }
        let queued = vec![false; rows.len()];
        Self {
            program,
            rows,
            occurs,
            lo: vec![0; n],
            hi: program.upper.clone(),
            trail: Vec::new(),
            queued,
        }
    }

    fn set(&mut self, v: usize, lo: i64, hi: i64) {
        self.trail.push((v, self.lo[v], self.hi[v]));
        self.lo[v] = lo;
        self.hi[v] = hi;
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, lo, hi) = self.trail.pop().unwrap();
            self.lo[v] = lo;
            self.hi[v] = hi;
        }
    }

    /// Tightens bounds until a fixpoint; false on an empty domain.
    fn propagate(&mut self, seeds: impl IntoIterator<Item = usize>) -> bool {
        let mut queue: VecDeque<usize> = VecDeque::new();
        for r in seeds {
            if !self.queued[r] {
                self.queued[r] = true;
                queue.push_back(r);
            }
        }
        let mut ok = true;
        while let Some(r) = queue.pop_front() {
            self.queued[r] = false;
            if !ok {
                continue;
            }
            let rhs = self.rows[r].rhs;
            if rhs == i64::MAX {
                continue;
            }
            let min_act: i64 = self.rows[r]
                .terms
                .iter()
                .map(|&(v, a)| {
                    if a > 0 {
                        a * self.lo[v]
                    } else {
                        a * self.hi[v]
                    }
                })
                .sum();
            if min_act > rhs {
                ok = false;
                continue;
            }
            let slack = rhs - min_act;
            for k in 0..self.rows[r].terms.len() {
                let (v, a) = self.rows[r].terms[k];
                let (lo, hi) = (self.lo[v], self.hi[v]);
                let (nlo, nhi) = if a > 0 {
                    (lo, hi.min(lo + slack / a))
                } else {
                    (lo.max(hi - slack / -a), hi)
                };
                if (nlo, nhi) == (lo, hi) {
                    continue;
                }
                if nlo > nhi {
                    ok = false;
                    break;
                }
                self.set(v, nlo, nhi);
                for &o in &self.occurs[v] {
                    if o != r && !self.queued[o] {
                        self.queued[o] = true;
                        queue.push_back(o);
                    }
                }
            }
        }
        ok
    }

    fn bound(&self) -> i64 {
        self.program
            .objective
            .iter()
            .enumerate()
            .map(|(v, &c)| {
                if c > 0 {
                    c * self.lo[v]
                } else {
                    c * self.hi[v]
                }
            })
            .sum()
    }

    /// Unfixed variable with the smallest domain, lowest index first.
    fn branch_variable(&self) -> Option<usize> {
        (0..self.lo.len())
            .filter(|&v| self.lo[v] < self.hi[v])
            .min_by_key(|&v| (self.hi[v] - self.lo[v], v))
    }
}

/// Integrality tolerance for relaxation values.
const EPS: f64 = 1e-6;

enum Relaxation {
    Infeasible,
    /// Optimum of the linear relaxation and its values.
    Bound(f64, Vec<f64>),
    /// The linear solver gave no answer; only propagation bounds are used.
    Unknown,
}

impl Search<'_> {
    /// Linear relaxation under the current intervals.
    fn relax(&self) -> Relaxation {
        use microlp::{ComparisonOp, OptimizationDirection, Problem};
        let p = self.program;
        let mut lp = Problem::new(OptimizationDirection::Minimize);
        let vars: Vec<_> = (0..p.num_variables())
            .map(|v| lp.add_var(p.objective[v] as f64, (self.lo[v] as f64, self.hi[v] as f64)))
            .collect();
        for c in &p.constraints {
            if c.terms.is_empty() {
                continue;
            }
            let op = match c.relation {
                Relation::Eq => ComparisonOp::Eq,
                Relation::Le => ComparisonOp::Le,
                Relation::Ge => ComparisonOp::Ge,
            };
            let expr: Vec<_> = c.terms.iter().map(|&(v, a)| (vars[v], a as f64)).collect();
            lp.add_constraint(expr, op, c.rhs as f64);
        }
        match lp.solve() {
            Ok(out) => match out.solution() {
                Some(sol) => Relaxation::Bound(
                    sol.objective(),
                    vars.iter().map(|&v| sol.var_value(v)).collect(),
                ),
                None => Relaxation::Unknown,
            },
            Err(microlp::Error::Infeasible) => Relaxation::Infeasible,
            Err(_) => Relaxation::Unknown,
        }
    }

    fn offer(&mut self, values: Vec<i64>, best: &mut Option<BipSolution>) {
        if !self.program.is_feasible(&values) {
            return;
        }
        let objective = self.program.objective_value(&values);
        if best.as_ref().is_none_or(|b| objective < b.objective) {
            let cutoff = self.rows.len() - 1;
            self.rows[cutoff].rhs = objective - 1;
            *best = Some(BipSolution { objective, values });
        }
    }

    /// Depth-first search below a propagated node.
    fn explore(&mut self, best: &mut Option<BipSolution>) {
        let mut bound = self.bound();
        let mut split = None;
        match self.relax() {
            Relaxation::Infeasible => return,
            Relaxation::Unknown => {}
            Relaxation::Bound(objective, x) => {
                bound = bound.max((objective - EPS).ceil() as i64);
                if best.as_ref().is_some_and(|b| bound >= b.objective) {
                    return;
                }
                let fractional = (0..x.len())
                    .filter(|&v| self.lo[v] < self.hi[v])
                    .map(|v| (v, (x[v] - x[v].round()).abs()))
                    .filter(|&(_, f)| f > EPS)
                    .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)));
                match fractional {
                    Some((v, _)) => split = Some((v, x[v])),
                    None => {
                        let rounded: Vec<i64> = x
                            .iter()
                            .enumerate()
                            .map(|(v, &f)| (f.round() as i64).clamp(self.lo[v], self.hi[v]))
                            .collect();
                        self.offer(rounded, best);
                        if best.as_ref().is_some_and(|b| bound >= b.objective) {
                            return;
                        }
                    }
                }
            }
        }
        if best.as_ref().is_some_and(|b| bound >= b.objective) {
            return;
        }
        let children = match split {
            Some((v, f)) => {
                let (down, up) = ((self.lo[v], f.floor() as i64), (f.ceil() as i64, self.hi[v]));
                let order = if f - f.floor() < 0.5 { [down, up] } else { [up, down] };
                (v, order)
            }
            None => match self.branch_variable() {
                Some(v) => (v, [(self.lo[v], self.lo[v]), (self.lo[v] + 1, self.hi[v])]),
                None => {
                    let values = self.lo.clone();
                    self.offer(values, best);
                    return;
                }
            },
        };
        let (var, ranges) = children;
        let cutoff = self.rows.len() - 1;
        for (lo, hi) in ranges {
            let mark = self.trail.len();
            self.set(var, lo, hi);
            let mut seeds = self.occurs[var].clone();
            seeds.push(cutoff);
            if self.propagate(seeds) {
                self.explore(best);
            }
            self.undo(mark);
        }
    }
}

/// Minimizes the objective; `None` when the program is infeasible.
pub fn solve(program: &Program) -> Option<BipSolution> {
    let mut s = Search::new(program);
    let mut best: Option<BipSolution> = None;
    let all: Vec<usize> = (0..s.rows.len()).collect();
    if s.propagate(all) {
        s.explore(&mut best);
    }
    best
}
