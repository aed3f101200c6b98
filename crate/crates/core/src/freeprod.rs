//! Reduced-word arithmetic in the free product `∏*Hᵢ` of finitely many
//! strongly regular hypergroups, with the maps `φ` into the free product of
//! the fundamental groups and `ψ` into the direct sum of abelianizations.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::groups::{DirectSumElement, DirectSumFamily, GroupTable};
use crate::hyper::HyperTable;
use crate::partition::Partition;
use crate::relations::{beta, gamma_from_beta, kernel_s, quotient_group_by};
use crate::set::{Element, ElementSet};

/// One registered factor with its precomputed invariants.
#[derive(Clone, Debug)]
pub struct Factor {
    pub table: HyperTable,
    pub identity: Element,
    pub inverse: Vec<Element>,
    pub beta: Partition,
    pub gamma: Partition,
    /// `S_β`.
    pub kernel: ElementSet,
    /// `Hᵢ/S_β`, elements indexed by `β`-class id.
    pub beta_group: GroupTable,
    /// The table as a group, if it is one.
    pub group: Option<GroupTable>,
    /// Abelianization of `group`, with the projection as a partition.
    pub abelian: Option<(GroupTable, Partition)>,
}

impl Factor {
    fn new(index: usize, table: HyperTable) -> Result<Self> {
        let not_sr = Error::FactorNotStronglyRegular { factor: index };
        if !table.is_strongly_regular_hg().map_err(|_| not_sr.clone())? {
            return Err(not_sr);
        }
        let identity = table.identities().single().ok_or_else(|| not_sr.clone())?;
        let inverse = (0..table.n())
            .map(|x| table.inverse_candidates(x).2.single().expect("strongly regular"))
            .collect();
        let beta = beta(&table)?;
        let gamma = gamma_from_beta(&table, &beta)?;
        let kernel = kernel_s(&table, &beta)?;
        let beta_group = quotient_group_by(&table, &beta)?;
        let group = GroupTable::from_hyper(&table).ok();
        let abelian = group.as_ref().map(GroupTable::abelianization);
        Ok(Factor {
            table,
            identity,
            inverse,
            beta,
            gamma,
            kernel,
            beta_group,
            group,
            abelian,
        })
    }

    /// Non-identity elements, the letters this factor contributes.
    fn letters(&self) -> Vec<Element> {
        (0..self.table.n()).filter(|&x| x != self.identity).collect()
    }
}

/// An ordered family of strongly regular hypergroups.
#[derive(Clone, Debug)]
pub struct FactorRegistry {
    factors: Vec<Factor>,
}

/// A letter `elem@factor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub factor: usize,
    pub elem: Element,
}

impl Letter {
    pub fn new(factor: usize, elem: Element) -> Self {
        Letter { factor, elem }
    }
}

/// A reduced word; the empty word is the identity `1`.
///
/// Words are ordered by length, then by factor indices, then by elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    letters: Vec<Letter>,
}

impl ReducedWord {
    pub fn empty() -> Self {
        ReducedWord::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn from_vec(letters: Vec<Letter>) -> Self {
        ReducedWord { letters }
    }
}

impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| {
                let f = |w: &ReducedWord| w.letters.iter().map(|l| l.factor).collect::<Vec<_>>();
                f(self).cmp(&f(other))
            })
            .then_with(|| {
                let e = |w: &ReducedWord| w.letters.iter().map(|l| l.elem).collect::<Vec<_>>();
                e(self).cmp(&e(other))
            })
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type WordSet = BTreeSet<ReducedWord>;

/// The set of letters occurring in `w`.
pub fn support(w: &ReducedWord) -> BTreeSet<Letter> {
    w.letters.iter().copied().collect()
}

impl FactorRegistry {
    pub fn new(tables: Vec<HyperTable>) -> Result<Self> {
        let factors = tables
            .into_iter()
            .enumerate()
            .map(|(i, t)| Factor::new(i, t))
            .collect::<Result<_>>()?;
        Ok(FactorRegistry { factors })
    }

    pub fn from_groups(groups: &[GroupTable]) -> Result<Self> {
        FactorRegistry::new(groups.iter().map(HyperTable::from_group).collect())
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor(&self, i: usize) -> &Factor {
        &self.factors[i]
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// The registry of the fundamental groups `Hᵢ/Sᵢ`, the target of `φ`.
    pub fn quotient_registry(&self) -> FactorRegistry {
        FactorRegistry::from_groups(
            &self.factors.iter().map(|f| f.beta_group.clone()).collect::<Vec<_>>(),
        )
        .expect("groups are strongly regular")
    }

    /// The family `Gᵢ/Gᵢ′`, the target of `ψ`; only for group factors.
    pub fn abelian_family(&self) -> Result<DirectSumFamily> {
        self.factors
            .iter()
            .map(|f| f.abelian.as_ref().map(|(g, _)| g.clone()))
            .collect::<Option<Vec<_>>>()
            .map(DirectSumFamily::new)
            .ok_or(Error::FamilyMismatch)
    }

    fn check_letter(&self, l: Letter) -> Result<()> {
        let f = self.factors.get(l.factor).ok_or(Error::UnknownLetter {
            factor: l.factor,
            elem: l.elem,
        })?;
        if l.elem >= f.table.n() {
            return Err(Error::UnknownLetter {
                factor: l.factor,
                elem: l.elem,
            });
        }
        if l.elem == f.identity {
            return Err(Error::IdentityLetter {
                factor: l.factor,
                elem: l.elem,
            });
        }
        Ok(())
    }

    /// Validates a letter sequence as a reduced word; nothing is reduced.
    pub fn make_word(&self, letters: &[Letter]) -> Result<ReducedWord> {
        for (i, &l) in letters.iter().enumerate() {
            self.check_letter(l)?;
            if i > 0 && letters[i - 1].factor == l.factor {
                return Err(Error::AdjacentSameFactor { position: i - 1 });
            }
        }
        Ok(ReducedWord::from_vec(letters.to_vec()))
    }

    /// `tᵢ(x)`: the one-letter word, or `1` for the identity.
    pub fn embed(&self, i: usize, x: Element) -> ReducedWord {
        if x == self.factors[i].identity {
            ReducedWord::empty()
        } else {
            ReducedWord::from_vec(vec![Letter::new(i, x)])
        }
    }

    pub fn inverse_word(&self, w: &ReducedWord) -> ReducedWord {
        ReducedWord::from_vec(
            w.letters
                .iter()
                .rev()
                .map(|l| Letter::new(l.factor, self.factors[l.factor].inverse[l.elem]))
                .collect(),
        )
    }

    /// `w₁·w₂`. Boundary letters from different factors concatenate. When
    /// they share a factor, each non-identity `x ∈ aₙ∘b₁` gives the word
    /// `a₁…aₙ₋₁ x b₂…bₘ`, and the identity, if present, cancels the boundary
    /// and the product recurses on `a₁…aₙ₋₁ · b₂…bₘ`.
    pub fn multiply(&self, w1: &ReducedWord, w2: &ReducedWord) -> WordSet {
        let mut out = WordSet::new();
        self.multiply_into(&w1.letters, &w2.letters, &mut out);
        out
    }

    fn multiply_into(&self, a: &[Letter], b: &[Letter], out: &mut WordSet) {
        let (Some(&last), Some(&first)) = (a.last(), b.first()) else {
            out.insert(ReducedWord::from_vec([a, b].concat()));
            return;
        };
        if last.factor != first.factor {
            out.insert(ReducedWord::from_vec([a, b].concat()));
            return;
        }
        let f = &self.factors[last.factor];
        let (prefix, suffix) = (&a[..a.len() - 1], &b[1..]);
        for x in f.table.cell(last.elem, first.elem) {
            if x == f.identity {
                self.multiply_into(prefix, suffix, out);
            } else {
                // neighbours of the middle letter come from other factors
                debug_assert!(prefix.last().is_none_or(|l| l.factor != last.factor));
                debug_assert!(suffix.first().is_none_or(|l| l.factor != last.factor));
                let mut letters = Vec::with_capacity(a.len() + b.len() - 1);
                letters.extend_from_slice(prefix);
                letters.push(Letter::new(last.factor, x));
                letters.extend_from_slice(suffix);
                out.insert(ReducedWord::from_vec(letters));
            }
        }
    }

    /// `U·V = ⋃ u·v`.
    pub fn multiply_sets(&self, u: &WordSet, v: &WordSet) -> WordSet {
        let mut out = WordSet::new();
        for a in u {
            for b in v {
                self.multiply_into(&a.letters, &b.letters, &mut out);
            }
        }
        out
    }

    /// Product of several words, left to right.
    pub fn multiply_all(&self, words: &[ReducedWord]) -> WordSet {
        words.iter().fold(WordSet::from([ReducedWord::empty()]), |acc, w| {
            self.multiply_sets(&acc, &WordSet::from([w.clone()]))
        })
    }

    /// `φ`: each letter goes to its `β`-class in `Hᵢ/Sᵢ` and the result is
    /// reduced in the free product of those groups.
    pub fn phi(&self, w: &ReducedWord) -> ReducedWord {
        let mut out: Vec<Letter> = Vec::new();
        for l in &w.letters {
            let f = &self.factors[l.factor];
            let g = &f.beta_group;
            let c = f.beta.class_id(l.elem);
            if c == g.identity() {
                continue;
            }
            match out.last_mut() {
                Some(top) if top.factor == l.factor => {
                    let p = g.mul(top.elem, c);
                    if p == g.identity() {
                        out.pop();
                    } else {
                        top.elem = p;
                    }
                }
                _ => out.push(Letter::new(l.factor, c)),
            }
        }
        ReducedWord::from_vec(out)
    }

    /// `ψ`: the sum of the abelianization images of the letters. Every
    /// factor must be a group.
    pub fn psi(&self, w: &ReducedWord) -> Result<DirectSumElement> {
        let family = self.abelian_family()?;
        w.letters.iter().try_fold(DirectSumElement::zero(), |acc, l| {
            let f = self.factors.get(l.factor).ok_or(Error::FamilyMismatch)?;
            let (_, proj) = f.abelian.as_ref().ok_or(Error::FamilyMismatch)?;
            if l.elem >= proj.n() {
                return Err(Error::FamilyMismatch);
            }
            let t = family.component(l.factor, proj.class_id(l.elem))?;
            family.add(&acc, &t)
        })
    }

    /// `ψ∘φ`, defined for any registry.
    pub fn psi_phi(&self, w: &ReducedWord) -> DirectSumElement {
        self.quotient_registry()
            .psi(&self.phi(w))
            .expect("the quotient registry consists of groups")
    }

    /// Number of reduced words of each length `0..=max_len`.
    pub fn count_words(&self, max_len: usize) -> Vec<u128> {
        let k: Vec<u128> = self.factors.iter().map(|f| f.table.n() as u128 - 1).collect();
        let mut ending = k.clone();
        let mut out = vec![1u128];
        for len in 1..=max_len {
            if len > 1 {
                let total: u128 = ending.iter().fold(0u128, |a, &b| a.saturating_add(b));
                ending = k
                    .iter()
                    .zip(&ending)
                    .map(|(&ki, &ei)| ki.saturating_mul(total - ei))
                    .collect();
            }
            out.push(ending.iter().fold(0u128, |a, &b| a.saturating_add(b)));
        }
        out
    }

    /// All reduced words of length at most `max_len`, in canonical order.
    pub fn enumerate_words(&self, max_len: usize, budget: u128) -> Result<Vec<ReducedWord>> {
        let needed = self
            .count_words(max_len)
            .iter()
            .fold(0u128, |a, &b| a.saturating_add(b));
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let letters: Vec<Vec<Element>> = self.factors.iter().map(Factor::letters).collect();
        let mut out = vec![ReducedWord::empty()];
        let mut frontier = vec![ReducedWord::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                let prev = w.letters.last().map(|l| l.factor);
                for (i, elems) in letters.iter().enumerate() {
                    if Some(i) == prev {
                        continue;
                    }
                    for &x in elems {
                        let mut v = w.letters.clone();
                        v.push(Letter::new(i, x));
                        next.push(ReducedWord::from_vec(v));
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort();
        Ok(out)
    }

    /// Among all words of length at most `max_len`, exactly one `v` has
    /// `1 ∈ w·v ∩ v·w`, and it is [`Self::inverse_word`]`(w)`.
    pub fn word_inverse_unique(&self, w: &ReducedWord, max_len: usize, budget: u128) -> Result<bool> {
        let one = ReducedWord::empty();
        let mut found = Vec::new();
        for v in self.enumerate_words(max_len, budget)? {
            if self.multiply(w, &v).contains(&one) && self.multiply(&v, w).contains(&one) {
                found.push(v);
                if found.len() > 1 {
                    return Ok(false);
                }
            }
        }
        Ok(found == [self.inverse_word(w)])
    }

    /// A random reduced word of length at most `max_len`.
    pub fn random_word<R: Rng + ?Sized>(&self, rng: &mut R, max_len: usize) -> ReducedWord {
        let letters: Vec<Vec<Element>> = self.factors.iter().map(Factor::letters).collect();
        let len = rng.gen_range(0..=max_len);
        let mut out: Vec<Letter> = Vec::with_capacity(len);
        for _ in 0..len {
            let prev = out.last().map(|l| l.factor);
            let choices: Vec<usize> = (0..letters.len())
                .filter(|&i| Some(i) != prev && !letters[i].is_empty())
                .collect();
            if choices.is_empty() {
                break;
            }
            let i = choices[rng.gen_range(0..choices.len())];
            out.push(Letter::new(i, letters[i][rng.gen_range(0..letters[i].len())]));
        }
        ReducedWord::from_vec(out)
    }

    /// Samples `w₁ ∈ w₂·w₃` and checks `w₂ ∈ w₁·w₃⁻¹` and `w₃ ∈ w₂⁻¹·w₁`.
    pub fn polygroup_closure_check<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        max_len: usize,
        samples: usize,
    ) -> Result<ClosureReport> {
        if let Some(i) = self.factors.iter().position(|f| !f.table.is_polygroup()) {
            return Err(Error::FactorsNotPolygroups { factor: i });
        }
        let mut failures = Vec::new();
        for _ in 0..samples {
            let w2 = self.random_word(rng, max_len);
            let w3 = self.random_word(rng, max_len);
            let prod: Vec<ReducedWord> = self.multiply(&w2, &w3).into_iter().collect();
            let w1 = prod[rng.gen_range(0..prod.len())].clone();
            let ok = self.multiply(&w1, &self.inverse_word(&w3)).contains(&w2)
                && self.multiply(&self.inverse_word(&w2), &w1).contains(&w3);
            if !ok {
                failures.push([w1, w2, w3]);
            }
        }
        Ok(ClosureReport {
            checked: samples,
            failures,
        })
    }

    /// Seeded spot checks of the free-product axioms and of `φ` and `ψ∘φ`
    /// on `pairs` random word pairs and `commutators` random commutators.
    pub fn sample_check<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        max_len: usize,
        pairs: usize,
        commutators: usize,
    ) -> SampleReport {
        let q = self.quotient_registry();
        let one = ReducedWord::empty();
        let mut report = SampleReport::default();
        for _ in 0..pairs {
            let w1 = self.random_word(rng, max_len);
            let w2 = self.random_word(rng, max_len);
            let w3 = self.random_word(rng, max_len);
            report.pairs += 1;

            let s12 = self.multiply(&w1, &w2);
            let left = self.multiply_sets(&s12, &WordSet::from([w3.clone()]));
            let right = self.multiply_sets(&WordSet::from([w1.clone()]), &self.multiply(&w2, &w3));
            if left != right {
                report.associativity.push([w1.clone(), w2.clone(), w3.clone()]);
            }

            let inv = self.inverse_word(&w1);
            let unique = self.multiply(&w1, &inv).contains(&one)
                && self.multiply(&inv, &w1).contains(&one)
                && self.inverse_word(&inv) == w1;
            if !unique {
                report.inverse.push(w1.clone());
            }

            let images: BTreeSet<ReducedWord> = s12.iter().map(|u| self.phi(u)).collect();
            let expected = q.multiply(&self.phi(&w1), &self.phi(&w2));
            if images != expected {
                report.phi.push([w1.clone(), w2.clone()]);
            }

            let sum = q
                .abelian_family()
                .and_then(|fam| fam.add(&self.psi_phi(&w1), &self.psi_phi(&w2)))
                .expect("quotient registry is a family of groups");
            if s12.iter().any(|u| self.psi_phi(u) != sum) {
                report.psi.push([w1, w2]);
            }
        }
        for _ in 0..commutators {
            let w1 = self.random_word(rng, max_len);
            let w2 = self.random_word(rng, max_len);
            let c = self.multiply_all(&[
                w1.clone(),
                w2.clone(),
                self.inverse_word(&w1),
                self.inverse_word(&w2),
            ]);
            report.commutator_count += 1;
            if c.iter().any(|u| !self.psi_phi(u).is_zero()) {
                report.commutator.push([w1, w2]);
            }
        }
        report
    }

    /// Reads `name@factor` letters separated by whitespace; `1` is the empty
    /// word.
    pub fn parse_word(&self, text: &str) -> Result<ReducedWord, WordParseError> {
        let text = text.trim();
        if text == "1" {
            return Ok(ReducedWord::empty());
        }
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (name, factor) = token
                .rsplit_once('@')
                .ok_or_else(|| WordParseError::Syntax(token.to_string()))?;
            let factor: usize = factor
                .parse()
                .map_err(|_| WordParseError::Syntax(token.to_string()))?;
            let elem = self
                .factors
                .get(factor)
                .and_then(|f| f.table.index_of(name))
                .ok_or_else(|| WordParseError::UnknownName(token.to_string()))?;
            letters.push(Letter::new(factor, elem));
        }
        Ok(self.make_word(&letters)?)
    }

    pub fn display<'a>(&'a self, w: &'a ReducedWord) -> WordDisplay<'a> {
        WordDisplay { registry: self, word: w }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WordParseError {
    #[error("malformed letter `{0}`, expected name@factor")]
    Syntax(String),
    #[error("unknown letter `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Invalid(#[from] Error),
}

/// Formats a word as `name@factor` letters, or `1`.
pub struct WordDisplay<'a> {
    registry: &'a FactorRegistry,
    word: &'a ReducedWord,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = self.registry.factors[l.factor].table.name(l.elem);
            write!(f, "{name}@{}", l.factor)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub checked: usize,
    pub failures: Vec<[ReducedWord; 3]>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Counterexamples found by [`FactorRegistry::sample_check`].
#[derive(Clone, Debug, Default)]
pub struct SampleReport {
    pub pairs: usize,
    pub commutator_count: usize,
    pub associativity: Vec<[ReducedWord; 3]>,
    pub inverse: Vec<ReducedWord>,
    pub phi: Vec<[ReducedWord; 2]>,
    pub psi: Vec<[ReducedWord; 2]>,
    pub commutator: Vec<[ReducedWord; 2]>,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.associativity.is_empty()
            && self.inverse.is_empty()
            && self.phi.is_empty()
            && self.psi.is_empty()
            && self.commutator.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::h9;
    use crate::groups::fixtures::{cyclic, s3, v4};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn h9_v4() -> FactorRegistry {
        FactorRegistry::new(vec![h9(), HyperTable::from_group(&v4())]).unwrap()
    }

    fn w(r: &FactorRegistry, s: &str) -> ReducedWord {
        r.parse_word(s).unwrap()
    }

    fn set(r: &FactorRegistry, words: &[&str]) -> WordSet {
        words.iter().map(|s| w(r, s)).collect()
    }

    #[test]
    fn registry_rejects_non_strongly_regular() {
        let t = HyperTable::total(3).unwrap();
        assert_eq!(
            FactorRegistry::new(vec![h9(), t]).unwrap_err(),
            Error::FactorNotStronglyRegular { factor: 1 }
        );
    }

    #[test]
    fn word_validation() {
        let r = h9_v4();
        assert!(r.make_word(&[]).unwrap().is_empty());
        assert_eq!(r.make_word(&[Letter::new(0, 4), Letter::new(1, 1)]).unwrap().len(), 2);
        assert_eq!(
            r.make_word(&[Letter::new(0, 4), Letter::new(0, 5)]),
            Err(Error::AdjacentSameFactor { position: 0 })
        );
        assert_eq!(
            r.make_word(&[Letter::new(1, 0)]),
            Err(Error::IdentityLetter { factor: 1, elem: 0 })
        );
        assert!(matches!(r.make_word(&[Letter::new(2, 1)]), Err(Error::UnknownLetter { .. })));
        assert!(matches!(r.parse_word("x@0 y@0"), Err(WordParseError::Invalid(_))));
        assert!(matches!(r.parse_word("x"), Err(WordParseError::Syntax(_))));
        assert!(matches!(r.parse_word("q@0"), Err(WordParseError::UnknownName(_))));
    }

    #[test]
    fn inverses() {
        let r = h9_v4();
        assert_eq!(r.inverse_word(&ReducedWord::empty()), ReducedWord::empty());
        assert_eq!(r.inverse_word(&w(&r, "x@0")), w(&r, "y@0"));
        assert_eq!(r.inverse_word(&w(&r, "z@0 p@1")), w(&r, "p@1 u@0"));
        assert_eq!(r.display(&r.inverse_word(&w(&r, "z@0 p@1"))).to_string(), "p@1 u@0");
    }

    #[test]
    fn multiplication_cases() {
        let r = h9_v4();
        let one = ReducedWord::empty();
        let a = w(&r, "z@0 p@1");
        assert_eq!(r.multiply(&one, &a), WordSet::from([a.clone()]));
        assert_eq!(r.multiply(&a, &one), WordSet::from([a.clone()]));
        assert_eq!(r.multiply(&w(&r, "x@0"), &w(&r, "p@1")), set(&r, &["x@0 p@1"]));
        assert_eq!(r.multiply(&w(&r, "x@0"), &w(&r, "x@0")), set(&r, &["b@0", "c@0"]));
        assert_eq!(r.multiply(&w(&r, "b@0"), &w(&r, "b@0")), set(&r, &["1"]));
        // x∘y = {e, a}: the identity cancels, a stays
        assert_eq!(r.multiply(&w(&r, "x@0"), &w(&r, "y@0")), set(&r, &["1", "a@0"]));
        // cascading cancellation through both factors
        assert_eq!(
            r.multiply(&w(&r, "b@0 p@1"), &w(&r, "p@1 b@0")),
            set(&r, &["1"])
        );
        assert_eq!(
            r.multiply(&w(&r, "p@1 x@0"), &w(&r, "y@0 p@1")),
            set(&r, &["1", "p@1 a@0 p@1"])
        );
        let g = FactorRegistry::from_groups(&[s3(), cyclic(3)]).unwrap();
        let a = w(&g, "r@0 1@1 s01@0");
        assert_eq!(g.multiply(&a, &g.inverse_word(&a)), set(&g, &["1"]));
    }

    #[test]
    fn embeddings_are_homomorphisms() {
        let r = h9_v4();
        let h = h9();
        assert!(r.embed(0, 0).is_empty());
        assert_eq!(r.embed(1, 2), w(&r, "q@1"));
        for x in 0..9 {
            for y in 0..9 {
                let expected: WordSet = h.cell(x, y).iter().map(|z| r.embed(0, z)).collect();
                assert_eq!(r.multiply(&r.embed(0, x), &r.embed(0, y)), expected);
            }
        }
    }

    #[test]
    fn support_drops_duplicates() {
        let r = h9_v4();
        assert!(support(&ReducedWord::empty()).is_empty());
        let s = support(&w(&r, "x@0 p@1 x@0"));
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![Letter::new(0, 4), Letter::new(1, 1)]);
    }

    #[test]
    fn enumeration_counts() {
        let r = FactorRegistry::from_groups(&[cyclic(3), cyclic(3)]).unwrap();
        assert_eq!(r.enumerate_words(0, 10).unwrap(), vec![ReducedWord::empty()]);
        assert_eq!(r.enumerate_words(2, 100).unwrap().len(), 1 + 4 + 8);
        assert_eq!(r.count_words(3), vec![1, 4, 8, 16]);
        assert!(matches!(r.enumerate_words(2, 12), Err(Error::BudgetExceeded { needed: 13, .. })));
        let words = r.enumerate_words(3, 1000).unwrap();
        assert!(words.windows(2).all(|p| p[0] < p[1]));
        let single = FactorRegistry::from_groups(&[cyclic(5)]).unwrap();
        assert_eq!(single.enumerate_words(1, 10).unwrap().len(), 5);
    }

    #[test]
    fn unique_inverses() {
        let r = h9_v4();
        for s in ["1", "x@0", "p@1", "z@0 q@1", "v@0 r@1 x@0"] {
            assert!(r.word_inverse_unique(&w(&r, s), 3, 1 << 20).unwrap(), "{s}");
        }
    }

    #[test]
    fn phi_examples() {
        let r = h9_v4();
        let q = r.quotient_registry();
        assert!(r.phi(&ReducedWord::empty()).is_empty());
        let img = r.phi(&w(&r, "b@0 p@1"));
        assert_eq!(img.letters(), &[Letter::new(1, 1)]);
        assert_eq!(q.display(&img).to_string(), "p@1");
        // every letter in its kernel
        assert!(r.phi(&w(&r, "a@0 p@1 c@0")).letters().iter().all(|l| l.factor == 1));
        assert!(r.phi(&w(&r, "a@0")).is_empty());
        // the converse direction only holds for words without kernel letters
        let rr = FactorRegistry::new(vec![h9(), h9()]).unwrap();
        assert!(rr.phi(&w(&rr, "x@0 b@1 y@0")).is_empty());
    }

    #[test]
    fn psi_worked_example() {
        // X = S3, Y = Z4, Z = V4, W = Z3
        let r = FactorRegistry::from_groups(&[s3(), cyclic(4), v4(), cyclic(3)]).unwrap();
        let w1 = w(&r, "s01@0 1@1");
        let w2 = w(&r, "p@2 1@3");
        let w3 = w(&r, "2@1 q@2 r@0");
        let w4 = w(&r, "3@1 r@0 2@3");
        assert_eq!(r.multiply(&w1, &w2), set(&r, &["s01@0 1@1 p@2 1@3"]));
        assert_eq!(r.multiply(&w1, &w3), set(&r, &["s01@0 3@1 q@2 r@0"]));
        let w14 = r.multiply(&w1, &w4);
        assert_eq!(w14.len(), 1);
        let w14 = w14.into_iter().next().unwrap();
        assert_eq!(w14.len(), 2);
        let fam = r.abelian_family().unwrap();
        let psi12 = r.psi(&r.multiply(&w1, &w2).into_iter().next().unwrap()).unwrap();
        assert_eq!(psi12.support().len(), 4);
        assert_eq!(psi12, fam.add(&r.psi(&w1).unwrap(), &r.psi(&w2).unwrap()).unwrap());
        let psi14 = r.psi(&w14).unwrap();
        assert_eq!(psi14.support().keys().copied().collect::<Vec<_>>(), vec![0, 3]);
        let c = r.multiply_all(&[w1.clone(), w2.clone(), r.inverse_word(&w1), r.inverse_word(&w2)]);
        assert_eq!(c.len(), 1);
        let c = c.into_iter().next().unwrap();
        assert_eq!(c.len(), 8);
        assert!(r.psi(&c).unwrap().is_zero());
        assert!(r.psi(&ReducedWord::empty()).unwrap().is_zero());
        assert_eq!(h9_v4().psi(&ReducedWord::empty()), Err(Error::FamilyMismatch));
    }

    #[test]
    fn sampled_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = FactorRegistry::new(vec![h9(), HyperTable::from_group(&s3())]).unwrap();
        let report = r.sample_check(&mut rng, 4, 150, 50);
        assert!(report.passed(), "{report:?}");
        let closure = r.polygroup_closure_check(&mut rng, 4, 150).unwrap();
        assert!(closure.passed());
    }

    #[test]
    fn closure_requires_polygroups() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let complete = crate::fixtures::complete(&cyclic(2), &[1, 2]);
        assert_eq!(
            FactorRegistry::new(vec![complete]).unwrap_err(),
            Error::FactorNotStronglyRegular { factor: 0 }
        );
        // strongly regular, but 1 ∈ 1∘1 and 1 ∉ 1∘1⁻¹ fails reversibility
        let t = HyperTable::from_labels(
            &["0", "1", "2"],
            &[&["0", "1", "2"], &["1", "1", "0,1,2"], &["2", "0,1,2", "1,2"]],
        )
        .unwrap();
        assert!(!t.is_polygroup());
        let r = FactorRegistry::new(vec![HyperTable::from_group(&v4()), t]).unwrap();
        assert!(matches!(
            r.polygroup_closure_check(&mut rng, 2, 1),
            Err(Error::FactorsNotPolygroups { factor: 1 })
        ));
    }
}
