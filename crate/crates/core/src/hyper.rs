//! Finite hypergroupoids given by Cayley tables of element sets, their axiom
//! checks, and the structural predicates on subsets.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::groups::GroupTable;
use crate::set::{Element, ElementSet, MAX_CARRIER};

/// A finite hypergroupoid: an `n × n` table whose cells are nonempty subsets
/// of the carrier.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HyperTable {
    names: Vec<String>,
    cells: Vec<ElementSet>,
}

impl HyperTable {
    /// Builds a table from labels and row-major cells.
    pub fn new(names: Vec<String>, cells: Vec<ElementSet>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty carrier".into()));
        }
        if n > MAX_CARRIER {
            return Err(Error::CarrierTooLarge(n));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::MalformedTable(format!("duplicate label {name:?}")));
            }
        }
        if cells.len() != n * n {
            return Err(Error::MalformedTable(format!(
                "expected {} cells, got {}",
                n * n,
                cells.len()
            )));
        }
        for (i, c) in cells.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::MalformedTable(format!(
                    "cell ({}, {}) is empty",
                    names[i / n],
                    names[i % n]
                )));
            }
            if !c.within(n) {
                return Err(Error::MalformedTable(format!(
                    "cell ({}, {}) references an element outside the carrier",
                    names[i / n],
                    names[i % n]
                )));
            }
        }
        Ok(HyperTable { names, cells })
    }

    /// Builds a table from labels and rows of comma-separated cell labels,
    /// e.g. `["b,c", "e,a"]`.
    pub fn from_labels(names: &[&str], rows: &[&[&str]]) -> Result<Self> {
        let n = names.len();
        if rows.len() != n {
            return Err(Error::MalformedTable(format!("expected {n} rows")));
        }
        let mut cells = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::MalformedTable(format!("expected {n} cells per row")));
            }
            for cell in row.iter() {
                let mut set = ElementSet::EMPTY;
                for label in cell.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let idx = names.iter().position(|&l| l == label).ok_or_else(|| {
                        Error::MalformedTable(format!("unknown label {label:?}"))
                    })?;
                    set.insert(idx);
                }
                cells.push(set);
            }
        }
        HyperTable::new(names.iter().map(|s| s.to_string()).collect(), cells)
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Element) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, label: &str) -> Option<Element> {
        self.names.iter().position(|n| n == label)
    }

    /// Parses a set of labels into an [`ElementSet`].
    pub fn set_of<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Option<ElementSet> {
        labels
            .into_iter()
            .map(|l| self.index_of(l))
            .collect::<Option<Vec<_>>>()
            .map(|v| v.into_iter().collect())
    }

    pub fn labels_of(&self, s: ElementSet) -> Vec<&str> {
        s.iter().map(|x| self.name(x)).collect()
    }

    pub fn carrier(&self) -> ElementSet {
        ElementSet::full(self.n())
    }

    /// The cell `a ∘ b`.
    pub fn cell(&self, a: Element, b: Element) -> ElementSet {
        self.cells[a * self.n() + b]
    }

    pub fn cells(&self) -> &[ElementSet] {
        &self.cells
    }

    /// Returns a copy with new labels.
    pub fn relabeled(&self, names: Vec<String>) -> Result<Self> {
        HyperTable::new(names, self.cells.clone())
    }

    /// `A ∘ B` without the emptiness check; empty operands give the empty set.
    pub fn product(&self, a: ElementSet, b: ElementSet) -> ElementSet {
        let mut out = ElementSet::EMPTY;
        for x in a {
            for y in b {
                out |= self.cell(x, y);
            }
        }
        out
    }

    /// `A ∘ B`, the union of the cells `a ∘ b` over `A × B`.
    pub fn hyperproduct(&self, a: ElementSet, b: ElementSet) -> Result<ElementSet> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptyOperand);
        }
        Ok(self.product(a, b))
    }

    /// `A ∘ {x}`.
    pub fn right_mul(&self, a: ElementSet, x: Element) -> ElementSet {
        a.iter().fold(ElementSet::EMPTY, |acc, y| acc | self.cell(y, x))
    }

    /// `{x} ∘ A`.
    pub fn left_mul(&self, x: Element, a: ElementSet) -> ElementSet {
        a.iter().fold(ElementSet::EMPTY, |acc, y| acc | self.cell(x, y))
    }

    /// `b / c = {w : b ∈ w ∘ c}`.
    pub fn right_division(&self, b: Element, c: Element) -> ElementSet {
        (0..self.n()).filter(|&w| self.cell(w, c).contains(b)).collect()
    }

    /// `c \ b = {w : b ∈ c ∘ w}`.
    pub fn left_division(&self, b: Element, c: Element) -> ElementSet {
        (0..self.n()).filter(|&w| self.cell(c, w).contains(b)).collect()
    }

    /// Lexicographically least triple with `(a∘b)∘c ≠ a∘(b∘c)`.
    pub fn associativity_witness(&self) -> Option<[Element; 3]> {
        let n = self.n();
        for a in 0..n {
            for b in 0..n {
                let ab = self.cell(a, b);
                for c in 0..n {
                    let left = self.right_mul(ab, c);
                    let right = self.left_mul(a, self.cell(b, c));
                    if left != right {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    pub fn is_semihypergroup(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// Least `a` with `a∘H ≠ H` or `H∘a ≠ H`.
    pub fn reproduction_witness(&self) -> Option<Element> {
        let n = self.n();
        let full = self.carrier();
        (0..n).find(|&a| {
            let row = (0..n).fold(ElementSet::EMPTY, |acc, x| acc | self.cell(a, x));
            let col = (0..n).fold(ElementSet::EMPTY, |acc, x| acc | self.cell(x, a));
            row != full || col != full
        })
    }

    pub fn is_quasihypergroup(&self) -> bool {
        self.reproduction_witness().is_none()
    }

    pub fn is_hypergroup(&self) -> bool {
        self.is_quasihypergroup() && self.is_semihypergroup()
    }

    /// Least pair with `a∘b ≠ b∘a`.
    pub fn commutativity_witness(&self) -> Option<[Element; 2]> {
        let n = self.n();
        for a in 0..n {
            for b in a + 1..n {
                if self.cell(a, b) != self.cell(b, a) {
                    return Some([a, b]);
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_witness().is_none()
    }

    /// `E_H = {e : x ∈ e∘x ∩ x∘e for all x}`.
    pub fn identities(&self) -> ElementSet {
        let n = self.n();
        (0..n)
            .filter(|&e| (0..n).all(|x| self.cell(e, x).contains(x) && self.cell(x, e).contains(x)))
            .collect()
    }

    /// Returns `(C_L(x), C_R(x), C(x))`.
    pub fn inverse_candidates(&self, x: Element) -> (ElementSet, ElementSet, ElementSet) {
        let e = self.identities();
        let n = self.n();
        let left: ElementSet = (0..n).filter(|&y| self.cell(y, x).intersects(e)).collect();
        let right: ElementSet = (0..n).filter(|&y| self.cell(x, y).intersects(e)).collect();
        (left, right, left & right)
    }

    /// `E_H ≠ ∅` and `C(x) ≠ ∅` for every `x`.
    pub fn is_regular_hg(&self) -> Result<bool> {
        if !self.is_hypergroup() {
            return Err(Error::NotAHypergroup);
        }
        Ok(!self.identities().is_empty()
            && (0..self.n()).all(|x| !self.inverse_candidates(x).2.is_empty()))
    }

    /// `E_H ≠ ∅` and `|C(x)| = 1` for every `x`.
    pub fn is_strongly_regular_hg(&self) -> Result<bool> {
        if !self.is_hypergroup() {
            return Err(Error::NotAHypergroup);
        }
        Ok(!self.identities().is_empty()
            && (0..self.n()).all(|x| self.inverse_candidates(x).2.len() == 1))
    }

    /// The element `e` with `e∘x = x∘e = {x}` for all `x`, if there is one.
    pub fn scalar_identity(&self) -> Option<Element> {
        let n = self.n();
        (0..n).find(|&e| {
            (0..n).all(|x| {
                let s = ElementSet::singleton(x);
                self.cell(e, x) == s && self.cell(x, e) == s
            })
        })
    }

    /// Identity and inverse map when `H` is a polygroup: a hypergroup with a
    /// scalar identity, unique two-sided inverses and the reversibility law
    /// `x ∈ y∘z ⟹ y ∈ x∘z⁻¹ and z ∈ y⁻¹∘x`.
    pub fn polygroup_structure(&self) -> Option<(Element, Vec<Element>)> {
        self.polygroup_failure().err()
    }

    fn polygroup_failure(&self) -> std::result::Result<Witness, (Element, Vec<Element>)> {
        if let Some(w) = self.associativity_witness() {
            return Ok(Witness::Associativity(w));
        }
        if let Some(a) = self.reproduction_witness() {
            return Ok(Witness::Reproduction(a));
        }
        let Some(e) = self.scalar_identity() else {
            return Ok(Witness::NoScalarIdentity);
        };
        let n = self.n();
        let mut inv = Vec::with_capacity(n);
        for x in 0..n {
            let (l, r, _) = self.inverse_candidates(x);
            match (l.single(), r.single()) {
                (Some(a), Some(b)) if a == b => inv.push(a),
                _ => {
                    return Ok(Witness::InverseCount {
                        x,
                        count: (l & r).len(),
                    })
                }
            }
        }
        for y in 0..n {
            for z in 0..n {
                for x in self.cell(y, z) {
                    if !self.cell(x, inv[z]).contains(y) || !self.cell(inv[y], x).contains(z) {
                        return Ok(Witness::Reversibility([x, y, z]));
                    }
                }
            }
        }
        Err((e, inv))
    }

    pub fn is_polygroup(&self) -> bool {
        self.polygroup_structure().is_some()
    }

    /// Commutative polygroup: commutative hypergroup with scalar identity,
    /// unique inverses and reversibility.
    pub fn is_canonical(&self) -> bool {
        self.is_commutative() && self.is_polygroup()
    }

    /// `k∘K = K∘k = K` for every `k ∈ K`.
    pub fn is_subhypergroup(&self, k: ElementSet) -> bool {
        !k.is_empty()
            && k.within(self.n())
            && k.iter()
                .all(|x| self.left_mul(x, k) == k && self.right_mul(k, x) == k)
    }

    /// For `a, b ∈ K` and `x ∈ H`, `b ∈ a∘x` or `b ∈ x∘a` forces `x ∈ K`.
    pub fn is_closed(&self, k: ElementSet) -> bool {
        (0..self.n()).filter(|&x| !k.contains(x)).all(|x| {
            k.iter()
                .all(|a| !self.cell(a, x).intersects(k) && !self.cell(x, a).intersects(k))
        })
    }

    /// Least `x` with `x∘K ≠ K∘x`.
    pub fn normality_witness(&self, k: ElementSet) -> Option<Element> {
        (0..self.n()).find(|&x| self.left_mul(x, k) != self.right_mul(k, x))
    }

    pub fn is_normal(&self, k: ElementSet) -> bool {
        self.normality_witness(k).is_none()
    }

    /// Closed on both sides, and every `x` has some `x'` with `x'∘x ⊆ K` and
    /// some `x''` with `x∘x'' ⊆ K`.
    pub fn is_conjugable(&self, k: ElementSet) -> bool {
        let n = self.n();
        self.is_closed(k)
            && (0..n).all(|x| {
                (0..n).any(|y| self.cell(y, x).is_subset(k))
                    && (0..n).any(|y| self.cell(x, y).is_subset(k))
            })
    }

    /// Aggregated axiom and structure report.
    pub fn structure_report(&self) -> StructureReport {
        let mut failures = Vec::new();
        let assoc = self.associativity_witness();
        if let Some(w) = assoc {
            failures.push(Failure::new(Property::Semihypergroup, Witness::Associativity(w)));
        }
        let repro = self.reproduction_witness();
        if let Some(a) = repro {
            failures.push(Failure::new(Property::Quasihypergroup, Witness::Reproduction(a)));
        }
        let is_hypergroup = assoc.is_none() && repro.is_none();
        if !is_hypergroup {
            let w = assoc
                .map(Witness::Associativity)
                .unwrap_or_else(|| Witness::Reproduction(repro.unwrap()));
            failures.push(Failure::new(Property::Hypergroup, w));
        }
        let comm = self.commutativity_witness();
        if let Some(w) = comm {
            failures.push(Failure::new(Property::Commutative, Witness::Commutativity(w)));
        }
        let identities = self.identities();
        let mut is_regular_hg = false;
        let mut is_strongly_regular_hg = false;
        if !is_hypergroup {
            failures.push(Failure::new(Property::RegularHypergroup, Witness::NotAHypergroup));
            failures.push(Failure::new(
                Property::StronglyRegularHypergroup,
                Witness::NotAHypergroup,
            ));
        } else if identities.is_empty() {
            failures.push(Failure::new(Property::RegularHypergroup, Witness::NoIdentity));
            failures.push(Failure::new(Property::StronglyRegularHypergroup, Witness::NoIdentity));
        } else {
            let counts: Vec<usize> = (0..self.n())
                .map(|x| self.inverse_candidates(x).2.len())
                .collect();
            match counts.iter().position(|&c| c == 0) {
                Some(x) => failures.push(Failure::new(
                    Property::RegularHypergroup,
                    Witness::InverseCount { x, count: 0 },
                )),
                None => is_regular_hg = true,
            }
            match counts.iter().position(|&c| c != 1) {
                Some(x) => failures.push(Failure::new(
                    Property::StronglyRegularHypergroup,
                    Witness::InverseCount { x, count: counts[x] },
                )),
                None => is_strongly_regular_hg = true,
            }
        }
        let poly = self.polygroup_failure();
        let is_polygroup = poly.is_err();
        if let Ok(w) = &poly {
            failures.push(Failure::new(Property::Polygroup, w.clone()));
        }
        let is_canonical = is_polygroup && comm.is_none();
        if !is_canonical {
            let w = match (&poly, comm) {
                (Ok(w), _) => w.clone(),
                (Err(_), Some(c)) => Witness::Commutativity(c),
                (Err(_), None) => unreachable!(),
            };
            failures.push(Failure::new(Property::Canonical, w));
        }
        StructureReport {
            is_semihypergroup: assoc.is_none(),
            is_quasihypergroup: repro.is_none(),
            is_hypergroup,
            is_commutative: comm.is_none(),
            is_canonical,
            is_regular_hg,
            is_strongly_regular_hg,
            is_polygroup,
            identities,
            failures,
        }
    }

    /// Lifts a group to the hypergroup with singleton cells.
    pub fn from_group(g: &GroupTable) -> HyperTable {
        let n = g.n();
        let cells = (0..n * n)
            .map(|i| ElementSet::singleton(g.mul(i / n, i % n)))
            .collect();
        HyperTable {
            names: g.names().to_vec(),
            cells,
        }
    }

    /// The total hypergroup `T_n`: every cell is the whole carrier. Labels
    /// are `0..n`.
    pub fn total(n: usize) -> Result<HyperTable> {
        let names = (0..n).map(|i| i.to_string()).collect();
        HyperTable::new(names, vec![ElementSet::full(n); n * n])
    }

    /// Componentwise product on the carrier `H₁ × H₂`; the pair `(i₁, i₂)`
    /// has index `i₁·n₂ + i₂` and label `a.b`.
    pub fn direct_product(h1: &HyperTable, h2: &HyperTable) -> Result<HyperTable> {
        let (n1, n2) = (h1.n(), h2.n());
        let n = n1 * n2;
        if n > MAX_CARRIER {
            return Err(Error::CarrierTooLarge(n));
        }
        let names = (0..n)
            .map(|i| format!("{}.{}", h1.name(i / n2), h2.name(i % n2)))
            .collect();
        let mut cells = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let c1 = h1.cell(a / n2, b / n2);
                let c2 = h2.cell(a % n2, b % n2);
                cells.push(pair_set(c1, c2, n2));
            }
        }
        HyperTable::new(names, cells)
    }
}

/// `A × B` inside a row-major product carrier with second factor size `n2`.
pub fn pair_set(a: ElementSet, b: ElementSet, n2: usize) -> ElementSet {
    let mut out = ElementSet::EMPTY;
    for x in a {
        for y in b {
            out.insert(x * n2 + y);
        }
    }
    out
}

/// A property recorded in a [`StructureReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Semihypergroup,
    Quasihypergroup,
    Hypergroup,
    Commutative,
    Canonical,
    RegularHypergroup,
    StronglyRegularHypergroup,
    Polygroup,
}

impl Property {
    pub fn as_str(self) -> &'static str {
        match self {
            Property::Semihypergroup => "semihypergroup",
            Property::Quasihypergroup => "quasihypergroup",
            Property::Hypergroup => "hypergroup",
            Property::Commutative => "commutative",
            Property::Canonical => "canonical",
            Property::RegularHypergroup => "regular_hypergroup",
            Property::StronglyRegularHypergroup => "strongly_regular_hypergroup",
            Property::Polygroup => "polygroup",
        }
    }
}

/// Concrete evidence that a property fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `(a∘b)∘c ≠ a∘(b∘c)`
    Associativity([Element; 3]),
    /// `a∘H ≠ H` or `H∘a ≠ H`
    Reproduction(Element),
    /// `a∘b ≠ b∘a`
    Commutativity([Element; 2]),
    NotAHypergroup,
    NoIdentity,
    NoScalarIdentity,
    /// `x` has `count` inverse candidates where exactly one was required.
    InverseCount { x: Element, count: usize },
    /// `x ∈ y∘z` without the matching reverse memberships.
    Reversibility([Element; 3]),
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Associativity(_) => "associativity",
            Witness::Reproduction(_) => "reproduction",
            Witness::Commutativity(_) => "commutativity",
            Witness::NotAHypergroup => "not_a_hypergroup",
            Witness::NoIdentity => "no_identity",
            Witness::NoScalarIdentity => "no_scalar_identity",
            Witness::InverseCount { .. } => "inverse_count",
            Witness::Reversibility(_) => "reversibility",
        }
    }

    /// Elements named by the witness.
    pub fn elements(&self) -> Vec<Element> {
        match self {
            Witness::Associativity(w) | Witness::Reversibility(w) => w.to_vec(),
            Witness::Commutativity(w) => w.to_vec(),
            Witness::Reproduction(a) => vec![*a],
            Witness::InverseCount { x, .. } => vec![*x],
            Witness::NotAHypergroup | Witness::NoIdentity | Witness::NoScalarIdentity => vec![],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub property: Property,
    pub witness: Witness,
}

impl Failure {
    fn new(property: Property, witness: Witness) -> Self {
        Failure { property, witness }
    }
}

/// Axiom flags of a table together with a witness for every failed flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub is_semihypergroup: bool,
    pub is_quasihypergroup: bool,
    pub is_hypergroup: bool,
    pub is_commutative: bool,
    pub is_canonical: bool,
    pub is_regular_hg: bool,
    pub is_strongly_regular_hg: bool,
    pub is_polygroup: bool,
    pub identities: ElementSet,
    pub failures: Vec<Failure>,
}

impl StructureReport {
    pub fn flags(&self) -> [(Property, bool); 8] {
        [
            (Property::Semihypergroup, self.is_semihypergroup),
            (Property::Quasihypergroup, self.is_quasihypergroup),
            (Property::Hypergroup, self.is_hypergroup),
            (Property::Commutative, self.is_commutative),
            (Property::Canonical, self.is_canonical),
            (Property::RegularHypergroup, self.is_regular_hg),
            (Property::StronglyRegularHypergroup, self.is_strongly_regular_hg),
            (Property::Polygroup, self.is_polygroup),
        ]
    }

    pub fn witness_for(&self, p: Property) -> Option<&Witness> {
        self.failures
            .iter()
            .find(|f| f.property == p)
            .map(|f| &f.witness)
    }
}
