//! Error type shared by every module in the crate.

use thiserror::Error;

/// One reportable defect in a labeled graph. Collected into a list so a
/// single validation pass can name every violation at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphViolation {
    /// Edge endpoints do not have opposite colors (covers self-loops).
    NotBipartite { edge: usize },
    /// The graph is not connected.
    Disconnected,
    /// Two half-edges at `vertex` carry the same label.
    InjectivityFailure { vertex: usize, label: usize },
    /// A label index is not an element of the labeling group.
    LabelOutOfRange {
        edge: usize,
        vertex: usize,
        label: usize,
    },
    /// More half-edges at `vertex` than group elements.
    ValenceTooLarge {
        vertex: usize,
        valence: usize,
        group_order: usize,
    },
    /// An edge mentions a vertex id that does not exist.
    VertexOutOfRange { edge: usize, vertex: usize },
}

impl std::fmt::Display for GraphViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphViolation::NotBipartite { edge } => {
                write!(f, "edge {edge} does not join a + vertex to a - vertex")
            }
            GraphViolation::Disconnected => write!(f, "graph is not connected"),
            GraphViolation::InjectivityFailure { vertex, label } => {
                write!(f, "vertex {vertex} carries label {label} on two half-edges")
            }
            GraphViolation::LabelOutOfRange {
                edge,
                vertex,
                label,
            } => {
                write!(
                    f,
                    "edge {edge} at vertex {vertex} uses label {label} outside the group"
                )
            }
            GraphViolation::ValenceTooLarge {
                vertex,
                valence,
                group_order,
            } => {
                write!(
                    f,
                    "vertex {vertex} has valence {valence} > group order {group_order}"
                )
            }
            GraphViolation::VertexOutOfRange { edge, vertex } => {
                write!(f, "edge {edge} refers to missing vertex {vertex}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("group order {order} does not divide genus - 1 = {genus_minus_one}")]
    NonIntegralQuotient {
        order: usize,
        genus_minus_one: usize,
    },
    #[error("quotient genus {quotient} is below 2")]
    QuotientGenusTooSmall { quotient: usize },
    #[error("free-action homology data rejected: {0}")]
    BadActionData(String),
    #[error("surface genus {genus} is below the standing hypothesis genus >= 2")]
    GenusTooSmall { genus: usize },

    #[error("covering relation violated: the permutations do not satisfy the surface relation")]
    RelationViolated,
    #[error("covering is not transitive: sheets {0:?} are unreachable from sheet 0")]
    NotTransitive(Vec<usize>),
    #[error("homology has torsion {0:?}; impossible for an orientable surface complex")]
    TorsionFound(Vec<i64>),
    #[error("permutation does not commute with the covering: not a deck transformation")]
    NotDeckTransformation,

    #[error("labeled graph invalid: {}", format_violations(.0))]
    GraphInvalid(Vec<GraphViolation>),
    #[error("Euler characteristics disagree between two routes: {lhs} vs {rhs}")]
    EulerMismatch { lhs: i64, rhs: i64 },
    #[error("enumeration guard: {vertices} vertices exceed the limit of {limit}")]
    TooManyVertices { vertices: usize, limit: usize },
    #[error("chi(E) = {total} is not divisible by chi(base) = {base}")]
    NonIntegralFiberChi { total: i64, base: i64 },
    #[error("covering at vertex {vertex} has total genus {actual} but the common cover has genus {expected}")]
    CoverMismatch {
        vertex: usize,
        expected: usize,
        actual: usize,
    },

    #[error("fiberings {0} and {1} are the same assignment")]
    NoDifferingVertex(String, String),
    #[error("every candidate witness class mapped to zero; invalid construction data")]
    WitnessVanishes,
    #[error("unknown fibering id {0}")]
    UnknownFibering(String),

    #[error("monodromy is unsupported on this graph: {0}")]
    UnsupportedGraph(String),
    #[error("word refers to generator {index} but the base surface has {count} generators")]
    InvalidWord { index: usize, count: usize },
    #[error("group element {element} has no homology action data")]
    MissingActionData { element: usize },
    #[error("produced homology action failed validation: {0}")]
    ActionNotSymplectic(String),
    #[error("Lagrangian invariance could not be verified: {0}")]
    LagrangianNotVerified(String),
}

fn format_violations(v: &[GraphViolation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    /// Internal-invariant failures get a distinct exit code in the CLI:
    /// they signal a bug or corrupted data, not a user mistake.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::EulerMismatch { .. }
                | Error::TorsionFound(_)
                | Error::WitnessVanishes
                | Error::ActionNotSymplectic(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
