//! Equivalence relations on a finite carrier, kept in canonical form.

use crate::set::{Element, ElementSet};

/// Disjoint-set forest with path compression and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; returns whether they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Merges every member of `s` into one class.
    pub fn union_set(&mut self, s: ElementSet) {
        let mut it = s.iter();
        if let Some(first) = it.next() {
            for x in it {
                self.union(first, x);
            }
        }
    }

    pub fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        Partition::from_labels(&roots)
    }
}

/// An equivalence relation given by its classes.
///
/// Class ids are assigned in order of least member, so two partitions are
/// equal exactly when they relate the same pairs.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<ElementSet>,
}

impl Partition {
    /// Canonicalizes an arbitrary labelling `x ↦ label`.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let n = labels.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<ElementSet> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = ElementSet::EMPTY;
            for y in x..n {
                if class_of[y] == usize::MAX && labels[y] == labels[x] {
                    class_of[y] = id;
                    members.insert(y);
                }
            }
            classes.push(members);
        }
        Partition { class_of, classes }
    }

    /// Partition with the given classes; they must be disjoint, nonempty and
    /// cover `0..n`.
    pub fn from_classes(n: usize, classes: &[ElementSet]) -> Option<Self> {
        let mut label = vec![usize::MAX; n];
        for (i, c) in classes.iter().enumerate() {
            if c.is_empty() || !c.within(n) {
                return None;
            }
            for x in *c {
                if label[x] != usize::MAX {
                    return None;
                }
                label[x] = i;
            }
        }
        if label.contains(&usize::MAX) {
            return None;
        }
        Some(Partition::from_labels(&label))
    }

    pub fn discrete(n: usize) -> Self {
        Partition {
            class_of: (0..n).collect(),
            classes: (0..n).map(ElementSet::singleton).collect(),
        }
    }

    pub fn full(n: usize) -> Self {
        if n == 0 {
            return Partition {
                class_of: vec![],
                classes: vec![],
            };
        }
        Partition {
            class_of: vec![0; n],
            classes: vec![ElementSet::full(n)],
        }
    }

    /// Size of the carrier.
    pub fn n(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_id(&self, x: Element) -> usize {
        self.class_of[x]
    }

    /// The class of `x`.
    pub fn class_of(&self, x: Element) -> ElementSet {
        self.classes[self.class_of[x]]
    }

    pub fn classes(&self) -> &[ElementSet] {
        &self.classes
    }

    /// The restricted growth string `x ↦ class id`.
    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    /// Least member of class `id`.
    pub fn representative(&self, id: usize) -> Element {
        self.classes[id].first().expect("classes are nonempty")
    }

    pub fn related(&self, a: Element, b: Element) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Set of class ids met by `s`, as a set over class ids.
    pub fn classes_met(&self, s: ElementSet) -> ElementSet {
        s.iter().map(|x| self.class_of[x]).collect()
    }

    /// Union of the classes met by `s`.
    pub fn saturate(&self, s: ElementSet) -> ElementSet {
        self.classes_met(s)
            .iter()
            .fold(ElementSet::EMPTY, |acc, c| acc | self.classes[c])
    }

    /// Every pair related here is related in `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.n() == coarser.n()
            && self
                .classes
                .iter()
                .all(|c| coarser.classes_met(*c).len() == 1)
    }
}
