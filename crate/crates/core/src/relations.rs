//! Fundamental relations, regularity, quotients by relations, and the
//! lattice operations used to compare strongly regular relations.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::groups::GroupTable;
use crate::hyper::HyperTable;
use crate::partition::{Partition, UnionFind};
use crate::set::{Element, ElementSet};

/// Caps on the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of distinct product sets in a census.
    pub census_cap: usize,
    /// Maximum number of tuple products evaluated by [`gamma_oracle`].
    pub oracle_budget: u128,
    /// Maximum number of partitions scanned by [`enumerate_strongly_regular`].
    pub partition_budget: u128,
    /// Maximum number of subsets scanned for subhypergroups.
    pub subset_budget: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            census_cap: 100_000,
            oracle_budget: 10_000_000,
            partition_budget: 30_000,
            subset_budget: 1 << 20,
        }
    }
}

/// All product sets `x₁∘x₂∘…∘xₙ` with `n ≥ 2`, in order of discovery.
#[derive(Clone, Debug)]
pub struct ProductCensus {
    sets: Vec<ElementSet>,
    complete: bool,
    cap: usize,
}

impl ProductCensus {
    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    /// False when the census was truncated at its cap.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn contains(&self, s: ElementSet) -> bool {
        self.sets.contains(&s)
    }
}

/// Breadth-first closure of the singletons under right multiplication by
/// each element. Every product of a tuple is a left-nested product, so this
/// reaches exactly the product sets of length at least two.
pub fn product_census(h: &HyperTable, cap: usize) -> Result<ProductCensus> {
    let c = census_inner(h, cap);
    if c.complete {
        Ok(c)
    } else {
        Err(Error::CapExceeded(cap))
    }
}

/// Like [`product_census`], but returns the truncated census instead of an
/// error when the cap is hit.
pub fn product_census_truncated(h: &HyperTable, cap: usize) -> ProductCensus {
    census_inner(h, cap)
}

fn census_inner(h: &HyperTable, cap: usize) -> ProductCensus {
    let n = h.n();
    let mut explored: HashSet<ElementSet> = HashSet::new();
    let mut in_census: HashSet<ElementSet> = HashSet::new();
    let mut sets = Vec::new();
    let mut queue: VecDeque<ElementSet> = VecDeque::new();
    for x in 0..n {
        let s = ElementSet::singleton(x);
        explored.insert(s);
        queue.push_back(s);
    }
    while let Some(s) = queue.pop_front() {
        for g in 0..n {
            let t = h.right_mul(s, g);
            if in_census.insert(t) {
                if sets.len() == cap {
                    return ProductCensus {
                        sets,
                        complete: false,
                        cap,
                    };
                }
                sets.push(t);
            }
            if explored.insert(t) {
                queue.push_back(t);
            }
        }
    }
    ProductCensus {
        sets,
        complete: true,
        cap,
    }
}

/// `β*`, the transitive closure of "lies in a common product".
pub fn beta(h: &HyperTable) -> Result<Partition> {
    beta_with(h, &Limits::default())
}

pub fn beta_with(h: &HyperTable, limits: &Limits) -> Result<Partition> {
    let census = product_census(h, limits.census_cap)?;
    Ok(beta_from_census(h.n(), &census))
}

pub fn beta_from_census(n: usize, census: &ProductCensus) -> Partition {
    let mut uf = UnionFind::new(n);
    for &s in census.sets() {
        uf.union_set(s);
    }
    uf.into_partition()
}

/// Brute-force `γ*`: over every tuple of length `2..=nmax` and every
/// permutation of it, relates all members of the two products, then takes
/// the transitive closure. Independent of [`gamma`].
pub fn gamma_oracle(h: &HyperTable, nmax: usize, budget: u128) -> Result<Partition> {
    let n = h.n();
    let mut needed: u128 = 0;
    for len in 2..=nmax {
        let tuples = (n as u128).checked_pow(len as u32);
        let perms: u128 = (1..=len as u128).product();
        needed = tuples
            .and_then(|t| t.checked_mul(perms))
            .and_then(|p| p.checked_add(needed))
            .unwrap_or(u128::MAX);
    }
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut uf = UnionFind::new(n);
    for len in 2..=nmax {
        let perms = permutations(len);
        let mut tuple = vec![0usize; len];
        loop {
            let base = tuple_product(h, &tuple);
            let mut related = base;
            let mut permuted = vec![0usize; len];
            for p in &perms {
                for (slot, &i) in permuted.iter_mut().zip(p) {
                    *slot = tuple[i];
                }
                related |= tuple_product(h, &permuted);
            }
            uf.union_set(related);
            if !advance(&mut tuple, n) {
                break;
            }
        }
    }
    Ok(uf.into_partition())
}

fn tuple_product(h: &HyperTable, t: &[Element]) -> ElementSet {
    let mut acc = ElementSet::singleton(t[0]);
    for &x in &t[1..] {
        acc = h.right_mul(acc, x);
    }
    acc
}

/// Odometer increment; false once every tuple has been visited.
fn advance(t: &mut [usize], n: usize) -> bool {
    for slot in t.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return true;
        }
        *slot = 0;
    }
    false
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// `γ = δ∗β`: the β-quotient group modulo its commutator subgroup, pulled
/// back to `H`.
pub fn gamma(h: &HyperTable) -> Result<Partition> {
    gamma_with(h, &Limits::default())
}

pub fn gamma_with(h: &HyperTable, limits: &Limits) -> Result<Partition> {
    let b = beta_with(h, limits)?;
    gamma_from_beta(h, &b)
}

pub fn gamma_from_beta(h: &HyperTable, beta: &Partition) -> Result<Partition> {
    let g = quotient_group_of(h, beta)?;
    let delta = g.cosets(g.commutator_subgroup())?;
    pullback(&delta, beta)
}

/// First triple `(a, b, x)` with `a R b` for which one of the regularity
/// conditions fails.
fn regularity_witness(h: &HyperTable, r: &Partition, strong: bool) -> Option<(Element, Element, Element)> {
    let n = h.n();
    for a in 0..n {
        for b in r.class_of(a).iter().filter(|&b| b >= a) {
            for x in 0..n {
                let (ax, bx) = (h.cell(a, x), h.cell(b, x));
                let (xa, xb) = (h.cell(x, a), h.cell(x, b));
                let ok = if strong {
                    r.classes_met(ax | bx).len() == 1 && r.classes_met(xa | xb).len() == 1
                } else {
                    r.classes_met(ax) == r.classes_met(bx) && r.classes_met(xa) == r.classes_met(xb)
                };
                if !ok {
                    return Some((a, b, x));
                }
            }
        }
    }
    None
}

/// `a R b ⟹ (a∘x) R̄ (b∘x)` and `(x∘a) R̄ (x∘b)` for all `x`.
pub fn is_regular(h: &HyperTable, r: &Partition) -> bool {
    r.n() == h.n() && regularity_witness(h, r, false).is_none()
}

/// `a R b ⟹` every member of `a∘x ∪ b∘x` is related to every other (and on
/// the left).
pub fn is_strongly_regular(h: &HyperTable, r: &Partition) -> bool {
    r.n() == h.n() && regularity_witness(h, r, true).is_none()
}

/// `H/R` with a well-defined class-level hyperoperation.
#[derive(Clone, Debug)]
pub struct QuotientStructure {
    pub relation: Partition,
    /// Classes labelled by their least member.
    pub table: HyperTable,
    /// Present when every cell is a singleton and the group axioms hold.
    pub group: Option<GroupTable>,
}

impl QuotientStructure {
    pub fn is_group(&self) -> bool {
        self.group.is_some()
    }
}

/// `R(x) ⊗ R(y) = {R(z) : z ∈ x∘y}`.
pub fn quotient_by(h: &HyperTable, r: &Partition) -> Result<QuotientStructure> {
    if r.n() != h.n() {
        return Err(Error::ShapeMismatch {
            expected: h.n(),
            got: r.n(),
        });
    }
    if let Some((a, b, x)) = regularity_witness(h, r, false) {
        return Err(Error::NotRegular { a, b, x });
    }
    let m = r.num_classes();
    let names = (0..m).map(|c| h.name(r.representative(c)).to_string()).collect();
    let mut cells = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            cells.push(r.classes_met(h.cell(r.representative(i), r.representative(j))));
        }
    }
    let table = HyperTable::new(names, cells)?;
    let group = GroupTable::from_hyper(&table).ok();
    Ok(QuotientStructure {
        relation: r.clone(),
        table,
        group,
    })
}

fn quotient_group_of(h: &HyperTable, r: &Partition) -> Result<GroupTable> {
    if let Some((a, b, x)) = regularity_witness(h, r, true) {
        return Err(Error::NotStronglyRegular { a, b, x });
    }
    let q = quotient_by(h, r)?;
    // a strongly regular quotient of a hypergroup is a group
    q.group.ok_or(Error::NotAHypergroup)
}

/// The quotient group `H/R` for a strongly regular `R`.
pub fn quotient_group_by(h: &HyperTable, r: &Partition) -> Result<GroupTable> {
    quotient_group_of(h, r)
}

/// `S_R`: the class that is the identity of the quotient group.
pub fn kernel_s(h: &HyperTable, r: &Partition) -> Result<ElementSet> {
    let g = quotient_group_of(h, r)?;
    Ok(r.classes()[g.identity()])
}

/// `x ≡ y ⟺ x∘K = y∘K`.
pub fn congruence_mod(h: &HyperTable, k: ElementSet) -> Result<Partition> {
    if !h.is_subhypergroup(k) {
        return Err(Error::NotASubhypergroup);
    }
    Ok(coset_partition(h, k))
}

/// Groups elements by their left coset `x∘K`, with no precondition on `K`.
pub fn coset_partition(h: &HyperTable, k: ElementSet) -> Partition {
    let cosets: Vec<ElementSet> = (0..h.n()).map(|x| h.left_mul(x, k)).collect();
    Partition::from_labels(&cosets)
}

/// `σ∗ρ`: `a` and `b` are related when their ρ-classes are σ-related.
pub fn pullback(sigma: &Partition, rho: &Partition) -> Result<Partition> {
    if sigma.n() != rho.num_classes() {
        return Err(Error::ShapeMismatch {
            expected: rho.num_classes(),
            got: sigma.n(),
        });
    }
    let labels: Vec<usize> = (0..rho.n())
        .map(|x| sigma.class_id(rho.class_id(x)))
        .collect();
    Ok(Partition::from_labels(&labels))
}

/// Smallest equivalence containing both.
pub fn join(r1: &Partition, r2: &Partition) -> Result<Partition> {
    if r1.n() != r2.n() {
        return Err(Error::ShapeMismatch {
            expected: r1.n(),
            got: r2.n(),
        });
    }
    let mut uf = UnionFind::new(r1.n());
    for c in r1.classes().iter().chain(r2.classes()) {
        uf.union_set(*c);
    }
    Ok(uf.into_partition())
}

/// Bell numbers `B(n)` (saturating).
pub fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let v = next.last().unwrap().saturating_add(x);
            next.push(v);
        }
        row = next;
    }
    row[0]
}

/// Calls `f` on every partition of `0..n` as a restricted growth string, in
/// lexicographic order.
pub fn for_each_partition(n: usize, mut f: impl FnMut(&[usize])) {
    if n == 0 {
        f(&[]);
        return;
    }
    let mut rgs = vec![0usize; n];
    let mut max = vec![0usize; n];
    loop {
        f(&rgs);
        // find the rightmost position that can be incremented
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if rgs[i] <= max[i - 1] {
                break;
            }
            i -= 1;
        }
        rgs[i] += 1;
        max[i] = max[i - 1].max(rgs[i]);
        for j in i + 1..n {
            rgs[j] = 0;
            max[j] = max[i];
        }
    }
}

/// `SR(H)`: every strongly regular partition, in restricted-growth order.
pub fn enumerate_strongly_regular(h: &HyperTable, budget: u128) -> Result<Vec<Partition>> {
    let needed = bell(h.n());
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut out = Vec::new();
    for_each_partition(h.n(), |rgs| {
        let p = Partition::from_labels(rgs);
        if is_strongly_regular(h, &p) {
            out.push(p);
        }
    });
    Ok(out)
}

/// Every regular partition, in restricted-growth order.
pub fn enumerate_regular(h: &HyperTable, budget: u128) -> Result<Vec<Partition>> {
    let needed = bell(h.n());
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut out = Vec::new();
    for_each_partition(h.n(), |rgs| {
        let p = Partition::from_labels(rgs);
        if is_regular(h, &p) {
            out.push(p);
        }
    });
    Ok(out)
}
