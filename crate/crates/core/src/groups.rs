//! Finite groups given by Cayley tables: the arithmetic behind the
//! commutator side of `γ = δ∗β`.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::set::{Element, ElementSet, MAX_CARRIER};

/// A validated finite group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupTable {
    names: Vec<String>,
    table: Vec<Element>,
    identity: Element,
    inverse: Vec<Element>,
}

impl GroupTable {
    /// Validates a square single-valued table and derives identity and
    /// inverses. Associativity is checked first so that a corrupted cell is
    /// reported with a witnessing triple.
    pub fn new(names: Vec<String>, table: Vec<Element>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGroupTable("empty carrier".into()));
        }
        if n > MAX_CARRIER {
            return Err(Error::CarrierTooLarge(n));
        }
        if table.len() != n * n {
            return Err(Error::InvalidGroupTable(format!(
                "expected {} cells, got {}",
                n * n,
                table.len()
            )));
        }
        if let Some(i) = table.iter().position(|&c| c >= n) {
            return Err(Error::InvalidGroupTable(format!(
                "cell ({}, {}) is outside the carrier",
                i / n,
                i % n
            )));
        }
        let mul = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or(Error::NoIdentity)?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| mul(x, y) == identity && mul(y, x) == identity)
                .ok_or(Error::NoInverse(x))?;
            inverse.push(inv);
        }
        Ok(GroupTable {
            names,
            table,
            identity,
            inverse,
        })
    }

    /// Reads a group off a hypertable whose cells are all singletons.
    pub fn from_hyper(h: &crate::hyper::HyperTable) -> Result<Self> {
        let table = h
            .cells()
            .iter()
            .map(|c| {
                c.single()
                    .ok_or_else(|| Error::InvalidGroupTable("multi-valued cell".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        GroupTable::new(h.names().to_vec(), table)
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

    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.n() + b]
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn inverse(&self, x: Element) -> Element {
        self.inverse[x]
    }

    pub fn commutator(&self, a: Element, b: Element) -> Element {
        let ab = self.mul(a, b);
        self.mul(self.mul(ab, self.inverse(a)), self.inverse(b))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.n();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn order_of(&self, x: Element) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Smallest subgroup containing `s`.
    pub fn subgroup_generated(&self, s: ElementSet) -> ElementSet {
        let mut sub = ElementSet::singleton(self.identity) | s;
        let mut queue: VecDeque<Element> = sub.iter().collect();
        while let Some(x) = queue.pop_front() {
            for g in s {
                let y = self.mul(x, g);
                if !sub.contains(y) {
                    sub.insert(y);
                    queue.push_back(y);
                }
            }
        }
        sub
    }

    pub fn is_subgroup(&self, s: ElementSet) -> bool {
        s.contains(self.identity)
            && s.within(self.n())
            && s.iter()
                .all(|a| s.iter().all(|b| s.contains(self.mul(a, self.inverse(b)))))
    }

    pub fn is_normal_subgroup(&self, s: ElementSet) -> bool {
        self.is_subgroup(s)
            && (0..self.n()).all(|g| {
                s.iter()
                    .all(|k| s.contains(self.mul(self.mul(g, k), self.inverse(g))))
            })
    }

    /// `G′`, generated by all `aba⁻¹b⁻¹`.
    pub fn commutator_subgroup(&self) -> ElementSet {
        let n = self.n();
        let comms: ElementSet = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.subgroup_generated(comms)
    }

    /// Left cosets `gN`, as a partition of the carrier.
    pub fn cosets(&self, normal: ElementSet) -> Result<Partition> {
        if !self.is_subgroup(normal) {
            return Err(Error::NotASubgroup);
        }
        let labels: Vec<ElementSet> = (0..self.n())
            .map(|g| normal.iter().map(|k| self.mul(g, k)).collect())
            .collect();
        Ok(Partition::from_labels(&labels))
    }

    /// `G/N` on least-index coset representatives. Also returns the coset
    /// partition, whose class ids are the elements of the quotient.
    pub fn quotient_group(&self, normal: ElementSet) -> Result<(GroupTable, Partition)> {
        if !self.is_subgroup(normal) {
            return Err(Error::NotASubgroup);
        }
        if !self.is_normal_subgroup(normal) {
            let witness = (0..self.n())
                .find(|&g| {
                    normal
                        .iter()
                        .any(|k| !normal.contains(self.mul(self.mul(g, k), self.inverse(g))))
                })
                .unwrap();
            return Err(Error::NotNormal { witness });
        }
        let cosets = self.cosets(normal)?;
        let m = cosets.num_classes();
        let names = (0..m)
            .map(|c| self.name(cosets.representative(c)).to_string())
            .collect();
        let mut table = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                let p = self.mul(cosets.representative(a), cosets.representative(b));
                table.push(cosets.class_id(p));
            }
        }
        Ok((GroupTable::new(names, table)?, cosets))
    }

    /// `G/G′` together with the map `g ↦ gG′` (as a partition).
    pub fn abelianization(&self) -> (GroupTable, Partition) {
        self.quotient_group(self.commutator_subgroup())
            .expect("the commutator subgroup is normal")
    }

    /// `G₁ × G₂` with row-major carrier.
    pub fn direct_product(g1: &GroupTable, g2: &GroupTable) -> Result<GroupTable> {
        let (n1, n2) = (g1.n(), g2.n());
        let n = n1 * n2;
        if n > MAX_CARRIER {
            return Err(Error::CarrierTooLarge(n));
        }
        let names = (0..n)
            .map(|i| format!("{}.{}", g1.name(i / n2), g2.name(i % n2)))
            .collect();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(g1.mul(a / n2, b / n2) * n2 + g2.mul(a % n2, b % n2));
            }
        }
        GroupTable::new(names, table)
    }

    /// Element orders with multiplicity, sorted.
    fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.n()).map(|x| self.order_of(x)).collect();
        v.sort_unstable();
        v
    }

    /// Greedy generating set: repeatedly adds the least element outside the
    /// subgroup generated so far.
    fn generators(&self) -> Vec<Element> {
        let mut gens = Vec::new();
        let mut sub = ElementSet::singleton(self.identity);
        for x in 0..self.n() {
            if !sub.contains(x) {
                gens.push(x);
                sub = self.subgroup_generated(gens.iter().collect());
            }
        }
        gens
    }
}

/// Searches for an isomorphism `G₁ → G₂`. Returns the bijection as the image
/// of each element of `G₁`, or `None` when the groups are not isomorphic.
pub fn isomorphism(g1: &GroupTable, g2: &GroupTable) -> Result<Option<Vec<Element>>> {
    for g in [g1, g2] {
        if g.n() > 16 {
            return Err(Error::SizeExceeded(g.n()));
        }
    }
    if g1.n() != g2.n() || g1.order_profile() != g2.order_profile() {
        return Ok(None);
    }
    let gens = g1.generators();
    let candidates: Vec<Vec<Element>> = gens
        .iter()
        .map(|&g| {
            let k = g1.order_of(g);
            (0..g2.n()).filter(|&y| g2.order_of(y) == k).collect()
        })
        .collect();
    let mut images = vec![0; gens.len()];
    Ok(search(g1, g2, &gens, &candidates, &mut images, 0))
}

fn search(
    g1: &GroupTable,
    g2: &GroupTable,
    gens: &[Element],
    candidates: &[Vec<Element>],
    images: &mut Vec<Element>,
    depth: usize,
) -> Option<Vec<Element>> {
    if depth == gens.len() {
        return extend(g1, g2, gens, images);
    }
    for &y in &candidates[depth] {
        images[depth] = y;
        if let Some(map) = search(g1, g2, gens, candidates, images, depth + 1) {
            return Some(map);
        }
    }
    None
}

/// Extends generator images along the Cayley graph and checks that the
/// result is a well-defined bijective homomorphism.
fn extend(g1: &GroupTable, g2: &GroupTable, gens: &[Element], images: &[Element]) -> Option<Vec<Element>> {
    let n = g1.n();
    let mut map = vec![usize::MAX; n];
    map[g1.identity()] = g2.identity();
    let mut queue = VecDeque::from([g1.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let y = g1.mul(x, g);
            let fy = g2.mul(map[x], img);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    let hit: ElementSet = map.iter().collect();
    if map.contains(&usize::MAX) || hit.len() != n {
        return None;
    }
    let hom = (0..n).all(|a| (0..n).all(|b| map[g1.mul(a, b)] == g2.mul(map[a], map[b])));
    hom.then_some(map)
}

pub fn isomorphic(g1: &GroupTable, g2: &GroupTable) -> Result<bool> {
    isomorphism(g1, g2).map(|m| m.is_some())
}

/// The abelianizations `Gᵢ/Gᵢ′` of a registered family of groups, indexed by
/// factor.
#[derive(Clone, Debug)]
pub struct DirectSumFamily {
    quotients: Vec<GroupTable>,
}

impl DirectSumFamily {
    /// Family of the abelianized groups `Gᵢ/Gᵢ′`.
    pub fn new(abelian: Vec<GroupTable>) -> Self {
        DirectSumFamily { quotients: abelian }
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    pub fn factor(&self, i: usize) -> &GroupTable {
        &self.quotients[i]
    }

    fn check(&self, a: &DirectSumElement) -> Result<()> {
        for (&i, &x) in &a.support {
            let g = self.quotients.get(i).ok_or(Error::FamilyMismatch)?;
            if x >= g.n() || x == g.identity() {
                return Err(Error::FamilyMismatch);
            }
        }
        Ok(())
    }

    /// The element `tᵢ(x)`: `x` in component `i`, zero elsewhere.
    pub fn component(&self, i: usize, x: Element) -> Result<DirectSumElement> {
        let g = self.quotients.get(i).ok_or(Error::FamilyMismatch)?;
        if x >= g.n() {
            return Err(Error::FamilyMismatch);
        }
        let mut support = BTreeMap::new();
        if x != g.identity() {
            support.insert(i, x);
        }
        Ok(DirectSumElement { support })
    }

    /// Componentwise sum; components that become zero leave the support.
    pub fn add(&self, a: &DirectSumElement, b: &DirectSumElement) -> Result<DirectSumElement> {
        self.check(a)?;
        self.check(b)?;
        let mut support = a.support.clone();
        for (&i, &y) in &b.support {
            let g = &self.quotients[i];
            let x = support.get(&i).copied().unwrap_or(g.identity());
            let s = g.mul(x, y);
            if s == g.identity() {
                support.remove(&i);
            } else {
                support.insert(i, s);
            }
        }
        Ok(DirectSumElement { support })
    }

    pub fn neg(&self, a: &DirectSumElement) -> Result<DirectSumElement> {
        self.check(a)?;
        Ok(DirectSumElement {
            support: a
                .support
                .iter()
                .map(|(&i, &x)| (i, self.quotients[i].inverse(x)))
                .collect(),
        })
    }
}

/// A finitely supported element of `Σ Gᵢ/Gᵢ′`. Only non-identity components
/// are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectSumElement {
    support: BTreeMap<usize, Element>,
}

impl DirectSumElement {
    pub fn zero() -> Self {
        DirectSumElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> &BTreeMap<usize, Element> {
        &self.support
    }
}

/// Small groups used throughout the tests and as CLI fixtures.
pub mod fixtures {
    use super::GroupTable;

    /// `Z_n` with elements `0..n`.
    pub fn cyclic(n: usize) -> GroupTable {
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        GroupTable::new(names, table).expect("cyclic group")
    }

    /// Klein four-group `{e, p, q, r}`.
    pub fn v4() -> GroupTable {
        let names = ["e", "p", "q", "r"].iter().map(|s| s.to_string()).collect();
        let table = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
        GroupTable::new(names, table).expect("Klein four-group")
    }

    /// `S₃` as permutations of `{0,1,2}`: identity, the two 3-cycles, then
    /// the three transpositions. Composition is `(στ)(i) = σ(τ(i))`.
    pub fn s3() -> GroupTable {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
        ];
        let names = ["e", "r", "rr", "s01", "s02", "s12"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let mut table = Vec::with_capacity(36);
        for s in &perms {
            for t in &perms {
                let c = [s[t[0]], s[t[1]], s[t[2]]];
                table.push(perms.iter().position(|p| *p == c).unwrap());
            }
        }
        GroupTable::new(names, table).expect("symmetric group")
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn brute_commutators(g: &GroupTable) -> ElementSet {
        // independent closure: keep multiplying commutators until stable
        let n = g.n();
        let mut set = ElementSet::EMPTY;
        for a in 0..n {
            for b in 0..n {
                let c = g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b)));
                set.insert(c);
            }
        }
        loop {
            let next = set
                .iter()
                .flat_map(|a| set.iter().map(move |b| (a, b)))
                .fold(set, |acc, (a, b)| {
                    let mut acc = acc;
                    acc.insert(g.mul(a, b));
                    acc
                });
            if next == set {
                return set;
            }
            set = next;
        }
    }

    #[test]
    fn validation_derives_identity() {
        let v = v4();
        assert_eq!(v.identity(), 0);
        assert_eq!(v.name(v.identity()), "e");
        for x in 0..4 {
            assert_eq!(v.inverse(x), x);
        }
    }

    #[test]
    fn corrupted_cell_is_not_associative() {
        let z3 = cyclic(3);
        let mut table: Vec<usize> = (0..9).map(|i| z3.mul(i / 3, i % 3)).collect();
        table[4] = 0; // 1 + 1 = 0
        let err = GroupTable::new(z3.names().to_vec(), table.clone()).unwrap_err();
        let Error::NotAssociative(a, b, c) = err else {
            panic!("expected NotAssociative, got {err:?}");
        };
        let m = |x: usize, y: usize| table[x * 3 + y];
        assert_ne!(m(m(a, b), c), m(a, m(b, c)));
    }

    #[test]
    fn missing_identity_and_inverse() {
        // constant table 0: associative, no identity
        let names: Vec<String> = vec!["a".into(), "b".into()];
        assert_eq!(GroupTable::new(names.clone(), vec![0; 4]), Err(Error::NoIdentity));
        // monoid {1, 0} under multiplication: 0 has no inverse
        assert_eq!(
            GroupTable::new(names, vec![0, 0, 0, 1]),
            Err(Error::NoInverse(0))
        );
    }

    #[test]
    fn generated_subgroups() {
        let s3 = s3();
        assert_eq!(s3.subgroup_generated(ElementSet::singleton(0)), ElementSet::singleton(0));
        assert_eq!(s3.subgroup_generated(ElementSet::singleton(3)).len(), 2);
        let both: ElementSet = [1, 3].iter().collect();
        assert_eq!(s3.subgroup_generated(both), ElementSet::full(6));
    }

    #[test]
    fn commutator_subgroups() {
        assert_eq!(v4().commutator_subgroup(), ElementSet::singleton(0));
        let s3 = s3();
        let a3: ElementSet = [0, 1, 2].iter().collect();
        assert_eq!(brute_commutators(&s3), a3);
        assert_eq!(s3.commutator_subgroup(), a3);
        assert!(s3.is_normal_subgroup(a3));

        let p = GroupTable::direct_product(&s3, &cyclic(2)).unwrap();
        let expected = crate::hyper::pair_set(a3, ElementSet::singleton(0), 2);
        assert_eq!(p.commutator_subgroup(), expected);
        let q = GroupTable::direct_product(&s3, &s3).unwrap();
        assert_eq!(q.commutator_subgroup(), crate::hyper::pair_set(a3, a3, 6));
    }

    #[test]
    fn abelianizations() {
        let (ab, map) = s3().abelianization();
        assert_eq!(ab.n(), 2);
        assert!(isomorphic(&ab, &cyclic(2)).unwrap());
        assert_eq!(map.num_classes(), 2);
        let (ab4, _) = v4().abelianization();
        assert!(isomorphic(&ab4, &v4()).unwrap());
        let (z, _) = cyclic(5).abelianization();
        assert!(isomorphic(&z, &cyclic(5)).unwrap());
    }

    #[test]
    fn quotients_and_cosets() {
        let v = v4();
        let (g, _) = v.quotient_group(ElementSet::singleton(0)).unwrap();
        assert!(isomorphic(&g, &v).unwrap());
        let (t, _) = v.quotient_group(ElementSet::full(4)).unwrap();
        assert_eq!(t.n(), 1);
        for k in 1..4 {
            let n: ElementSet = [0, k].iter().collect();
            let (q, cosets) = v.quotient_group(n).unwrap();
            assert!(isomorphic(&q, &cyclic(2)).unwrap());
            assert_eq!(cosets.num_classes() * n.len(), 4);
        }
        let s3 = s3();
        let t: ElementSet = [0, 3].iter().collect();
        assert!(matches!(s3.quotient_group(t), Err(Error::NotNormal { .. })));
        assert_eq!(s3.cosets(t).unwrap().num_classes(), 3);
        assert_eq!(s3.quotient_group([0, 1].iter().collect()), Err(Error::NotASubgroup));
    }

    #[test]
    fn isomorphism_search() {
        assert!(!isomorphic(&v4(), &cyclic(4)).unwrap());
        let s3 = s3();
        assert_eq!(isomorphism(&s3, &s3).unwrap(), Some((0..6).collect()));
        assert!(!isomorphic(&s3, &cyclic(6)).unwrap());
        let z6 = GroupTable::direct_product(&cyclic(2), &cyclic(3)).unwrap();
        let map = isomorphism(&z6, &cyclic(6)).unwrap().unwrap();
        let z = cyclic(6);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(map[z6.mul(a, b)], z.mul(map[a], map[b]));
            }
        }
        let v4v4 = GroupTable::direct_product(&v4(), &v4()).unwrap();
        assert!(isomorphic(&v4v4, &v4v4).unwrap());
        let big = GroupTable::direct_product(&s3, &cyclic(3)).unwrap();
        assert_eq!(isomorphic(&big, &big), Err(Error::SizeExceeded(18)));
    }

    #[test]
    fn isomorphism_is_an_equivalence_on_small_groups() {
        let z2z2 = GroupTable::direct_product(&cyclic(2), &cyclic(2)).unwrap();
        let z4 = cyclic(4);
        let gs = [v4(), z2z2, z4];
        for a in &gs {
            assert!(isomorphic(a, a).unwrap());
            for b in &gs {
                assert_eq!(isomorphic(a, b).unwrap(), isomorphic(b, a).unwrap());
                for c in &gs {
                    if isomorphic(a, b).unwrap() && isomorphic(b, c).unwrap() {
                        assert!(isomorphic(a, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn abelianization_of_products() {
        let pairs = [(s3(), cyclic(2)), (s3(), s3()), (v4(), cyclic(3))];
        for (g1, g2) in &pairs {
            let (lhs, _) = GroupTable::direct_product(g1, g2).unwrap().abelianization();
            let rhs = GroupTable::direct_product(&g1.abelianization().0, &g2.abelianization().0).unwrap();
            assert!(isomorphic(&lhs, &rhs).unwrap());
        }
    }

    #[test]
    fn direct_sum_arithmetic() {
        let fam = DirectSumFamily::new(vec![cyclic(2), cyclic(3)]);
        let a = fam.component(1, 2).unwrap();
        let zero = DirectSumElement::zero();
        assert_eq!(fam.add(&a, &zero).unwrap(), a);
        assert!(fam.add(&a, &fam.neg(&a).unwrap()).unwrap().is_zero());
        let b = fam.component(0, 1).unwrap();
        let s = fam.add(&b, &a).unwrap();
        assert_eq!(s.support().iter().map(|(&i, &x)| (i, x)).collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert!(fam.component(0, 0).unwrap().is_zero());
        assert_eq!(fam.component(2, 0), Err(Error::FamilyMismatch));
        let other = DirectSumFamily::new(vec![cyclic(2), cyclic(3), cyclic(5)]);
        let foreign = other.component(2, 1).unwrap();
        assert_eq!(fam.add(&a, &foreign), Err(Error::FamilyMismatch));
    }
}
