use thiserror::Error;

/// A violated category law, naming the offending morphisms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawViolation {
    #[error("object `{object}` has no identity")]
    MissingIdentity { object: String },
    #[error("identity `{identity}` is not an endomorphism of `{object}`")]
    MisplacedIdentity { object: String, identity: String },
    #[error("unit law fails for `{morphism}` on the {side} side")]
    BrokenUnit { morphism: String, side: &'static str },
    #[error("associativity fails for ({h} ∘ {g}) ∘ {f}")]
    BrokenAssociativity { h: String, g: String, f: String },
    #[error("composition of `{g}` after `{f}` is not closed: {reason}")]
    NonClosedComposition {
        g: String,
        f: String,
        reason: String,
    },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("unresolved reference `{0}`")]
    UnresolvedReference(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("category law violated: {0}")]
    Law(#[from] LawViolation),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid set functor: {0}")]
    InvalidSetFunctor(String),
    #[error("invalid profunctor: {0}")]
    InvalidProfunctor(String),
    #[error("invalid monoidal structure: {0}")]
    InvalidMonoidal(String),
    #[error("not natural: {0}")]
    NotNatural(String),
    #[error("base categories differ")]
    BaseMismatch,
    #[error("variances differ")]
    VarianceMismatch,
    #[error("enumeration exceeded the size cap of {cap} states")]
    SizeExceeded { cap: u64 },
    #[error("invalid wedge: {0}")]
    InvalidWedge(String),
    #[error("no mediating transformation exists")]
    NoMediator,
    #[error("mediating transformation is not unique ({0} candidates)")]
    NonUniqueMediator(usize),
    #[error("internal disagreement: {0}")]
    InternalDisagreement(String),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
