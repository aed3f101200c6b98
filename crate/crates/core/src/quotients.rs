//! Subhypergroups and the quotients `H/K`: complete parts, the heart, the
//! derived subhypergroup, the group-quotient theorems and the correspondence
//! between strongly regular relations of `H` and of `H/K`.

use crate::error::{Error, Result};
use crate::groups::{isomorphic, GroupTable};
use crate::hyper::{pair_set, HyperTable};
use crate::partition::Partition;
use crate::relations::{
    beta_from_census, beta_with, coset_partition, gamma_from_beta, gamma_with, join, kernel_s,
    product_census, pullback, quotient_group_by, Limits, ProductCensus,
};
use crate::set::{Element, ElementSet};

/// `C` meets a product set only if it contains it.
pub fn is_complete_part(c: ElementSet, census: &ProductCensus) -> Result<bool> {
    if !census.is_complete() {
        return Err(Error::CensusIncomplete);
    }
    Ok(census
        .sets()
        .iter()
        .all(|&s| !s.intersects(c) || s.is_subset(c)))
}

/// One subhypergroup with its classification flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubEntry {
    pub set: ElementSet,
    pub closed: bool,
    pub normal: bool,
    pub complete_part: bool,
    pub conjugable: bool,
    pub contains_s_beta: bool,
    pub contains_s_gamma: bool,
}

/// Every subhypergroup of a hypergroup, ordered by size and then by members.
#[derive(Clone, Debug)]
pub struct SubLattice {
    pub entries: Vec<SubEntry>,
    pub s_beta: ElementSet,
    pub s_gamma: ElementSet,
}

impl SubLattice {
    pub fn sets(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.entries.iter().map(|e| e.set)
    }

    pub fn get(&self, set: ElementSet) -> Option<&SubEntry> {
        self.entries.iter().find(|e| e.set == set)
    }
}

/// Powerset scan for subhypergroups, without classification.
pub fn list_subhypergroups(h: &HyperTable, budget: u128) -> Result<Vec<ElementSet>> {
    let n = h.n();
    let needed = 1u128.checked_shl(n as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut out: Vec<ElementSet> = (1..needed)
        .map(ElementSet::from_bits)
        .filter(|&k| h.is_subhypergroup(k))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    Ok(out)
}

pub fn subhypergroups(h: &HyperTable) -> Result<SubLattice> {
    subhypergroups_with(h, &Limits::default())
}

pub fn subhypergroups_with(h: &HyperTable, limits: &Limits) -> Result<SubLattice> {
    if !h.is_hypergroup() {
        return Err(Error::NotAHypergroup);
    }
    let census = product_census(h, limits.census_cap)?;
    let beta = beta_from_census(h.n(), &census);
    let gamma = gamma_from_beta(h, &beta)?;
    let s_beta = kernel_s(h, &beta)?;
    let s_gamma = kernel_s(h, &gamma)?;
    let entries = list_subhypergroups(h, limits.subset_budget)?
        .into_iter()
        .map(|k| {
            Ok(SubEntry {
                set: k,
                closed: h.is_closed(k),
                normal: h.is_normal(k),
                complete_part: is_complete_part(k, &census)?,
                conjugable: h.is_conjugable(k),
                contains_s_beta: s_beta.is_subset(k),
                contains_s_gamma: s_gamma.is_subset(k),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubLattice {
        entries,
        s_beta,
        s_gamma,
    })
}

fn intersect_all(h: &HyperTable, sets: impl Iterator<Item = ElementSet>) -> ElementSet {
    sets.fold(h.carrier(), |acc, s| acc & s)
}

/// The heart `ω_H`: the intersection of all complete-part subhypergroups,
/// cross-checked against the identity class of `β`.
pub fn heart(h: &HyperTable) -> Result<ElementSet> {
    heart_with(h, &Limits::default())
}

pub fn heart_with(h: &HyperTable, limits: &Limits) -> Result<ElementSet> {
    let lattice = subhypergroups_with(h, limits)?;
    let by_parts = intersect_all(h, lattice.entries.iter().filter(|e| e.complete_part).map(|e| e.set));
    if by_parts != lattice.s_beta {
        return Err(Error::InconsistentHeart {
            complete_parts: by_parts.to_vec(),
            kernel: lattice.s_beta.to_vec(),
        });
    }
    Ok(by_parts)
}

/// `D = D₁ ∪ D₂` with `D₁ = ⋃ xy/yx` and `D₂ = ⋃ xy\yx`, where the set
/// divisions are taken elementwise over `z ∈ x∘y`, `w ∈ y∘x`.
pub fn commutator_set(h: &HyperTable) -> ElementSet {
    let n = h.n();
    let mut d = ElementSet::EMPTY;
    for x in 0..n {
        for y in 0..n {
            for z in h.cell(x, y) {
                for w in h.cell(y, x) {
                    // z / w = {t : z ∈ t∘w},  z \ w = {t : w ∈ z∘t}
                    d |= h.right_division(z, w);
                    d |= h.left_division(w, z);
                }
            }
        }
    }
    d
}

/// The derived subhypergroup `H′`: the intersection of the complete-part
/// subhypergroups containing [`commutator_set`], cross-checked against the
/// identity class of `γ`.
pub fn derived(h: &HyperTable) -> Result<ElementSet> {
    derived_with(h, &Limits::default())
}

pub fn derived_with(h: &HyperTable, limits: &Limits) -> Result<ElementSet> {
    let lattice = subhypergroups_with(h, limits)?;
    let d = commutator_set(h);
    let by_parts = intersect_all(
        h,
        lattice
            .entries
            .iter()
            .filter(|e| e.complete_part && d.is_subset(e.set))
            .map(|e| e.set),
    );
    if by_parts != lattice.s_gamma {
        return Err(Error::InconsistentDerived {
            construction: by_parts.to_vec(),
            kernel: lattice.s_gamma.to_vec(),
        });
    }
    Ok(by_parts)
}

/// `H/K` as a hypertable over the distinct cosets `x∘K`.
#[derive(Clone, Debug)]
pub struct CosetQuotient {
    /// `x ≡ y ⟺ x∘K = y∘K`; class ids are the elements of `table`.
    pub cosets: Partition,
    pub table: HyperTable,
}

impl CosetQuotient {
    /// The quotient as a group, when it is one.
    pub fn group(&self) -> Option<GroupTable> {
        GroupTable::from_hyper(&self.table).ok()
    }

    /// Elements of the quotient met by `s`.
    pub fn image(&self, s: ElementSet) -> ElementSet {
        self.cosets.classes_met(s)
    }
}

/// The coset space `{x∘K}` with `(x∘K)(y∘K) = {t∘K : t ∈ (x∘y)∘K}`, provided
/// this does not depend on the chosen representatives.
pub fn coset_space(h: &HyperTable, k: ElementSet) -> Result<CosetQuotient> {
    let cosets = coset_partition(h, k);
    let m = cosets.num_classes();
    let names = (0..m)
        .map(|c| {
            let rep = cosets.representative(c);
            if h.left_mul(rep, k) == k {
                "K".to_string()
            } else {
                format!("{}∘K", h.name(rep))
            }
        })
        .collect();
    let mut cells = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let class = |x: Element, y: Element| cosets.classes_met(h.product(h.cell(x, y), k));
            let (ri, rj) = (cosets.representative(i), cosets.representative(j));
            let cell = class(ri, rj);
            for x in cosets.classes()[i] {
                for y in cosets.classes()[j] {
                    if class(x, y) != cell {
                        let (a, b, z) = if class(x, rj) != cell { (ri, x, rj) } else { (rj, y, x) };
                        return Err(Error::NotRegular { a, b, x: z });
                    }
                }
            }
            cells.push(cell);
        }
    }
    Ok(CosetQuotient {
        cosets,
        table: HyperTable::new(names, cells)?,
    })
}

/// `H/K` for a normal subhypergroup `K`.
pub fn quotient_hypergroup(h: &HyperTable, k: ElementSet) -> Result<CosetQuotient> {
    if !h.is_subhypergroup(k) {
        return Err(Error::NotASubhypergroup);
    }
    if let Some(witness) = h.normality_witness(k) {
        return Err(Error::NotNormal { witness });
    }
    coset_space(h, k)
}

fn require_closed(h: &HyperTable, k: ElementSet) -> Result<()> {
    if !h.is_subhypergroup(k) {
        return Err(Error::NotASubhypergroup);
    }
    if !h.is_closed(k) {
        return Err(Error::NotClosed);
    }
    Ok(())
}

/// Whether `H/K` is a group, for a closed subhypergroup `K`. An ill-defined
/// coset product counts as "not a group".
pub fn check_group_quotient(h: &HyperTable, k: ElementSet) -> Result<bool> {
    require_closed(h, k)?;
    match coset_space(h, k) {
        Ok(q) => Ok(q.group().is_some()),
        Err(Error::NotRegular { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Whether `H/K` is an abelian group, for a closed subhypergroup `K`.
pub fn check_abelian_quotient(h: &HyperTable, k: ElementSet) -> Result<bool> {
    require_closed(h, k)?;
    match coset_space(h, k) {
        Ok(q) => Ok(q.group().is_some_and(|g| g.is_abelian())),
        Err(Error::NotRegular { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Which fundamental relation a check is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fundamental {
    Beta,
    Gamma,
}

impl Fundamental {
    pub fn as_str(self) -> &'static str {
        match self {
            Fundamental::Beta => "beta",
            Fundamental::Gamma => "gamma",
        }
    }

    pub fn compute(self, h: &HyperTable, limits: &Limits) -> Result<Partition> {
        match self {
            Fundamental::Beta => beta_with(h, limits),
            Fundamental::Gamma => gamma_with(h, limits),
        }
    }
}

/// Both sides of the quotient identities for one relation `ρ`.
#[derive(Clone, Debug)]
pub struct CorrespondenceEntry {
    pub relation: Fundamental,
    /// `S_ρ` in `H`.
    pub kernel: ElementSet,
    /// `S_ρ∘K` in `H`.
    pub kernel_times_k: ElementSet,
    /// Kernel of the relation recomputed on `H/K`, as elements of `H/K`.
    pub quotient_kernel: ElementSet,
    /// `(S_ρ∘K)/K` as elements of `H/K`.
    pub expected_quotient_kernel: ElementSet,
    pub kernel_ok: bool,
    /// `𝛒(H/K) ≅ H/(S_ρ∘K)`.
    pub isomorphism_ok: bool,
    /// `𝛒∗σ = ρ∨σ = σ′∗ρ`.
    pub join_ok: bool,
}

impl CorrespondenceEntry {
    pub fn passed(&self) -> bool {
        self.kernel_ok && self.isomorphism_ok && self.join_ok
    }
}

#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub quotient: CosetQuotient,
    pub entries: Vec<CorrespondenceEntry>,
    /// `H′` by the D-construction equals `S_γ`, on `H` and on `H/K`.
    pub derived_ok: bool,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.derived_ok && self.entries.iter().all(CorrespondenceEntry::passed)
    }
}

/// Evaluates both sides of the quotient identities on a canonical
/// hypergroup `H` and a canonical subhypergroup `K`. The relations on `H/K`
/// are recomputed from its table, not derived from those on `H`.
pub fn correspondence_check(h: &HyperTable, k: ElementSet) -> Result<CorrespondenceReport> {
    correspondence_check_with(h, k, &Limits::default())
}

pub fn correspondence_check_with(
    h: &HyperTable,
    k: ElementSet,
    limits: &Limits,
) -> Result<CorrespondenceReport> {
    let Some((e, _)) = h.polygroup_structure().filter(|_| h.is_commutative()) else {
        return Err(Error::NotCanonical("hypergroup is not canonical".into()));
    };
    if !h.is_subhypergroup(k) || !k.contains(e) {
        return Err(Error::NotCanonical(
            "subset is not a subhypergroup containing the identity".into(),
        ));
    }
    let quotient = quotient_hypergroup(h, k)?;
    let sigma = &quotient.cosets;
    let q = &quotient.table;
    let mut entries = Vec::new();
    for rho in [Fundamental::Beta, Fundamental::Gamma] {
        let rho_h = rho.compute(h, limits)?;
        let kernel = kernel_s(h, &rho_h)?;
        let sk = h.product(kernel, k);
        let rho_q = rho.compute(q, limits)?;
        let quotient_kernel = kernel_s(q, &rho_q)?;
        let expected_quotient_kernel = sigma.classes_met(sk);
        let kernel_ok = quotient_kernel == expected_quotient_kernel && sigma.saturate(sk) == sk;

        let lhs_group = quotient_group_by(q, &rho_q)?;
        let isomorphism_ok = match quotient_hypergroup(h, sk).ok().and_then(|c| c.group()) {
            Some(rhs_group) => isomorphic(&lhs_group, &rhs_group)?,
            None => false,
        };

        let lifted = pullback(&rho_q, sigma)?;
        let joined = join(&rho_h, sigma)?;
        let g = quotient_group_by(h, &rho_h)?;
        let n_sub = rho_h.classes_met(sk);
        let via_group = g
            .cosets(n_sub)
            .ok()
            .map(|sigma2| pullback(&sigma2, &rho_h))
            .transpose()?;
        let join_ok = lifted == joined && via_group.as_ref() == Some(&joined);

        entries.push(CorrespondenceEntry {
            relation: rho,
            kernel,
            kernel_times_k: sk,
            quotient_kernel,
            expected_quotient_kernel,
            kernel_ok,
            isomorphism_ok,
            join_ok,
        });
    }
    let s_gamma = entries[1].kernel;
    let s_gamma_q = entries[1].quotient_kernel;
    let derived_ok = derived_with(h, limits)? == s_gamma && derived_with(q, limits)? == s_gamma_q;
    Ok(CorrespondenceReport {
        quotient,
        entries,
        derived_ok,
    })
}

/// Both sides of the direct-product identities.
#[derive(Clone, Debug)]
pub struct ProductReport {
    pub product: HyperTable,
    /// `S_β(H₁×H₂)`.
    pub kernel: ElementSet,
    /// `S_β(H₁) × S_β(H₂)`.
    pub expected_kernel: ElementSet,
    pub kernel_ok: bool,
    /// `γ(H₁×H₂) = γ(H₁)×γ(H₂)` as relations on the product carrier.
    pub gamma_relation_ok: bool,
    /// `γ`-quotient of the product is isomorphic to the product of the
    /// `γ`-quotients.
    pub gamma_quotient_ok: bool,
    /// Same for `β`, when the groups are small enough to compare.
    pub beta_quotient_ok: Option<bool>,
}

impl ProductReport {
    pub fn passed(&self) -> bool {
        self.kernel_ok && self.gamma_relation_ok && self.gamma_quotient_ok && self.beta_quotient_ok != Some(false)
    }
}

pub fn product_identities_check(h1: &HyperTable, h2: &HyperTable) -> Result<ProductReport> {
    product_identities_check_with(h1, h2, &Limits::default())
}

pub fn product_identities_check_with(
    h1: &HyperTable,
    h2: &HyperTable,
    limits: &Limits,
) -> Result<ProductReport> {
    for h in [h1, h2] {
        if !h.is_hypergroup() {
            return Err(Error::NotAHypergroup);
        }
    }
    let product = HyperTable::direct_product(h1, h2)?;
    let n2 = h2.n();
    let (b1, b2, bp) = (beta_with(h1, limits)?, beta_with(h2, limits)?, beta_with(&product, limits)?);
    let kernel = kernel_s(&product, &bp)?;
    let expected_kernel = pair_set(kernel_s(h1, &b1)?, kernel_s(h2, &b2)?, n2);

    let (g1, g2) = (gamma_from_beta(h1, &b1)?, gamma_from_beta(h2, &b2)?);
    let gp = gamma_from_beta(&product, &bp)?;
    let pair_labels: Vec<(usize, usize)> = (0..product.n())
        .map(|x| (g1.class_id(x / n2), g2.class_id(x % n2)))
        .collect();
    let gamma_relation_ok = gp == Partition::from_labels(&pair_labels);

    let lhs = quotient_group_by(&product, &gp)?;
    let rhs = GroupTable::direct_product(&quotient_group_by(h1, &g1)?, &quotient_group_by(h2, &g2)?)?;
    let gamma_quotient_ok = isomorphic(&lhs, &rhs)?;

    let lhs = quotient_group_by(&product, &bp)?;
    let rhs = GroupTable::direct_product(&quotient_group_by(h1, &b1)?, &quotient_group_by(h2, &b2)?)?;
    let beta_quotient_ok = match isomorphic(&lhs, &rhs) {
        Ok(b) => Some(b),
        Err(Error::SizeExceeded(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(ProductReport {
        kernel_ok: kernel == expected_kernel,
        product,
        kernel,
        expected_kernel,
        gamma_relation_ok,
        gamma_quotient_ok,
        beta_quotient_ok,
    })
}
