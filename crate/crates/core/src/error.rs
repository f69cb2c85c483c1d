use std::fmt;

use thiserror::Error;

/// One violated law, with the tuple that witnesses it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateIdentifier(String),
    UnknownIdentifier(String),
    DanglingEndpoint { morphism: String, endpoint: String },
    MissingIdentity(String),
    IdentityViolation(String),
    MissingComposite { g: String, f: String },
    CompositeTyping { g: String, f: String, h: String },
    SpuriousComposite { g: String, f: String },
    AssociativityViolation { h: String, g: String, f: String },
    NotTransitive { x: String, y: String, z: String },
    IncompleteMap(String),
    EndpointMismatch(String),
    IdentityNotPreserved(String),
    CompositionNotPreserved { g: String, f: String },
    OrderNotPreserved { lo: String, hi: String },
    ComponentEndpoint(String),
    NaturalityViolation(String),
    MonotonicityViolation { left: String, right: String },
    UnitLawViolation(String),
    AssocLawViolation(String),
    CompatibilityViolation(String),
    Other(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DuplicateIdentifier(x) => write!(f, "duplicate identifier `{x}`"),
            UnknownIdentifier(x) => write!(f, "unknown identifier `{x}`"),
            DanglingEndpoint { morphism, endpoint } => {
                write!(f, "dangling endpoint `{endpoint}` of morphism `{morphism}`")
            }
            MissingIdentity(x) => write!(f, "missing identity for object `{x}`"),
            IdentityViolation(x) => write!(f, "identity-violation({x})"),
            MissingComposite { g, f: ff } => write!(f, "missing-composite({g}, {ff})"),
            CompositeTyping { g, f: ff, h } => {
                write!(f, "composite {g}.{ff} = {h} has the wrong source or target")
            }
            SpuriousComposite { g, f: ff } => {
                write!(f, "composite given for non-composable pair ({g}, {ff})")
            }
            AssociativityViolation { h, g, f: ff } => {
                write!(f, "associativity-violation({h}, {g}, {ff})")
            }
            NotTransitive { x, y, z } => {
                write!(f, "not transitive: {x}<={y} and {y}<={z} but not {x}<={z}")
            }
            IncompleteMap(x) => write!(f, "no image given for `{x}`"),
            EndpointMismatch(x) => write!(f, "endpoint-mismatch({x})"),
            IdentityNotPreserved(x) => write!(f, "identity-not-preserved({x})"),
            CompositionNotPreserved { g, f: ff } => {
                write!(f, "composition-not-preserved({g}, {ff})")
            }
            OrderNotPreserved { lo, hi } => write!(f, "order-not-preserved({lo} <= {hi})"),
            ComponentEndpoint(x) => write!(f, "component-endpoint-error({x})"),
            NaturalityViolation(x) => write!(f, "naturality-violation({x})"),
            MonotonicityViolation { left, right } => {
                write!(f, "monotonicity-violation({left}, {right})")
            }
            UnitLawViolation(x) => write!(f, "unit-law-violation({x})"),
            AssocLawViolation(x) => write!(f, "assoc-violation({x})"),
            CompatibilityViolation(x) => write!(f, "compatibility-violation({x})"),
            Other(x) => f.write_str(x),
        }
    }
}

/// Every violation found by a full scan, in scan order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result<T>(self, kind: &'static str, value: T) -> Result<T, Error> {
        if self.is_empty() {
            Ok(value)
        } else {
            Err(Error::Invalid { kind, report: self })
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid {kind}: {report}")]
    Invalid { kind: &'static str, report: Report },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("non-strict input: {0}")]
    NonStrictInput(String),
    #[error("no factorization: {0}")]
    NoFactorization(String),
    #[error("factorization not unique ({0} candidates)")]
    NonUnique(usize),
    #[error("search budget of {0} nodes exhausted (raise LAXCOMMA_MAX_SEARCH)")]
    BudgetExhausted(u64),
    #[error("bound too small: {0}")]
    BoundTooSmall(String),
    #[error("bounds too large: {0}")]
    BoundsTooLarge(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("construction failure: {0}")]
    Construction(String),
}

impl Error {
    pub(crate) fn invalid(kind: &'static str, v: Violation) -> Error {
        Error::Invalid { kind, report: Report { violations: vec![v] } }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
