use std::rc::Rc;

use indexmap::IndexMap;

use crate::Cost;

/// A cluster with no vertex in the current bag: its final size and the
/// per-color counts of its already forgotten members.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpenEntry {
    pub size: usize,
    pub past: Vec<usize>,
}

/// A cluster meeting the current bag in `bag`, with `past` counting its
/// forgotten members per color.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurrentEntry {
    pub size: usize,
    pub past: Vec<usize>,
    /// Sorted, nonempty.
    pub bag: Vec<usize>,
}

impl CurrentEntry {
    pub(crate) fn past_total(&self) -> usize {
        self.past.iter().sum()
    }
}

/// Table key. `open` is a sorted multiset, `current` is sorted by smallest
/// bag vertex and partitions the bag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RecordKey {
    pub open: Vec<OpenEntry>,
    pub current: Vec<CurrentEntry>,
}

/// Persistent concatenation tree.
#[derive(Debug)]
pub(crate) enum Tree<T> {
    Nil,
    Leaf(T),
    Cat(Rc<Tree<T>>, Rc<Tree<T>>),
}

impl<T: Clone> Tree<T> {
    pub(crate) fn nil() -> Rc<Self> {
        Rc::new(Tree::Nil)
    }

    pub(crate) fn leaf(x: T) -> Rc<Self> {
        Rc::new(Tree::Leaf(x))
    }

    pub(crate) fn cat(a: &Rc<Self>, b: &Rc<Self>) -> Rc<Self> {
        match (a.as_ref(), b.as_ref()) {
            (Tree::Nil, _) => b.clone(),
            (_, Tree::Nil) => a.clone(),
            _ => Rc::new(Tree::Cat(a.clone(), b.clone())),
        }
    }

    pub(crate) fn to_vec(&self) -> Vec<T> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                Tree::Nil => {}
                Tree::Leaf(x) => out.push(x.clone()),
                Tree::Cat(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        out
    }
}

pub(crate) type Rope = Tree<usize>;

/// Vertices behind each entry of a key, aligned with its vectors, plus the
/// clusters already completed.
#[derive(Debug, Clone)]
pub struct Witness {
    pub(crate) open: Vec<Rc<Rope>>,
    pub(crate) current: Vec<Rc<Rope>>,
    pub(crate) done: Rc<Tree<Rc<Rope>>>,
}

impl Witness {
    pub(crate) fn empty() -> Self {
        Self {
            open: Vec::new(),
            current: Vec::new(),
            done: Tree::nil(),
        }
    }

    /// Finished clusters, each as its member list.
    pub fn finished_clusters(&self) -> Vec<Vec<usize>> {
        self.done.to_vec().iter().map(|r| r.to_vec()).collect()
    }
}

#[derive(Debug, Clone)]
pub struct Record {
    pub cost: Cost,
    pub witness: Witness,
}

/// Minimum cost per key; on ties the first inserted record stays.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub(crate) records: IndexMap<RecordKey, Record>,
}

impl Table {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RecordKey, &Record)> {
        self.records.iter()
    }

    pub fn get(&self, key: &RecordKey) -> Option<&Record> {
        self.records.get(key)
    }

    pub(crate) fn offer(&mut self, key: RecordKey, record: Record) {
        match self.records.entry(key) {
            indexmap::map::Entry::Occupied(mut e) => {
                if record.cost < e.get().cost {
                    e.insert(record);
                }
            }
            indexmap::map::Entry::Vacant(e) => {
                e.insert(record);
            }
        }
    }

    /// Builds the canonical key for unsorted entries and offers the record.
    pub(crate) fn offer_parts(
        &mut self,
        mut open: Vec<(OpenEntry, Rc<Rope>)>,
        mut current: Vec<(CurrentEntry, Rc<Rope>)>,
        done: Rc<Tree<Rc<Rope>>>,
        cost: Cost,
    ) {
        open.sort_by(|a, b| a.0.cmp(&b.0));
        current.sort_by(|a, b| a.0.bag[0].cmp(&b.0.bag[0]));
        let (open, open_w): (Vec<_>, Vec<_>) = open.into_iter().unzip();
        let (current, current_w): (Vec<_>, Vec<_>) = current.into_iter().unzip();
        self.offer(
            RecordKey { open, current },
            Record {
                cost,
                witness: Witness {
                    open: open_w,
                    current: current_w,
                    done,
                },
            },
        );
    }

    pub(crate) fn retain(&mut self, keep: impl FnMut(&RecordKey) -> bool) {
        let mut keep = keep;
        self.records.retain(|k, _| keep(k));
    }
}
