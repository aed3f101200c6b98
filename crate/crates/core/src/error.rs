use thiserror::Error;

use crate::set::Element;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty operand in hyperproduct")]
    EmptyOperand,
    #[error("carrier of size {0} exceeds the supported maximum of 128")]
    CarrierTooLarge(usize),
    #[error("table is malformed: {0}")]
    MalformedTable(String),
    #[error("structure is not a hypergroup")]
    NotAHypergroup,
    #[error("subset is not a subhypergroup")]
    NotASubhypergroup,
    #[error("subhypergroup is not closed")]
    NotClosed,
    #[error("subhypergroup is not normal (x = {witness})")]
    NotNormal { witness: Element },
    #[error("hypergroup or subhypergroup is not canonical: {0}")]
    NotCanonical(String),
    #[error("relation is not regular (a = {a}, b = {b}, x = {x})")]
    NotRegular { a: Element, b: Element, x: Element },
    #[error("relation is not strongly regular (a = {a}, b = {b}, x = {x})")]
    NotStronglyRegular { a: Element, b: Element, x: Element },
    #[error("factor {factor} is not a strongly regular hypergroup")]
    FactorNotStronglyRegular { factor: usize },
    #[error("factors are not all polygroups (factor {factor})")]
    FactorsNotPolygroups { factor: usize },
    #[error("product census exceeded the cap of {0} sets")]
    CapExceeded(usize),
    #[error("product census is incomplete")]
    CensusIncomplete,
    #[error("enumeration of {needed} items exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("partition shapes do not match: expected {expected} points, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("not a group table: not associative at ({0}, {1}, {2})")]
    NotAssociative(Element, Element, Element),
    #[error("not a group table: no identity element")]
    NoIdentity,
    #[error("not a group table: element {0} has no inverse")]
    NoInverse(Element),
    #[error("not a group table: {0}")]
    InvalidGroupTable(String),
    #[error("subset is not a subgroup")]
    NotASubgroup,
    #[error("group of order {0} is beyond the isomorphism search bound of 16")]
    SizeExceeded(usize),
    #[error("direct-sum element does not belong to the family")]
    FamilyMismatch,
    #[error("letter {elem}@{factor} is the identity of its factor")]
    IdentityLetter { factor: usize, elem: Element },
    #[error("letters {position} and {next} come from the same factor", next = position + 1)]
    AdjacentSameFactor { position: usize },
    #[error("letter references unknown factor {factor} or element {elem}")]
    UnknownLetter { factor: usize, elem: Element },
    #[error("heart routes disagree: complete parts give {complete_parts:?}, beta kernel gives {kernel:?}")]
    InconsistentHeart {
        complete_parts: Vec<Element>,
        kernel: Vec<Element>,
    },
    #[error("derived routes disagree: D-construction gives {construction:?}, gamma kernel gives {kernel:?}")]
    InconsistentDerived {
        construction: Vec<Element>,
        kernel: Vec<Element>,
    },
}

impl Error {
    /// Budget and cap exhaustion, as opposed to a mathematical failure.
    pub fn is_exhaustion(&self) -> bool {
        matches!(self, Error::CapExceeded(_) | Error::BudgetExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
