use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("edge references unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge ({u}, {v}) listed more than once")]
    DuplicateEdge { u: String, v: String },
    #[error("edge from `{0}` to itself; record self-intersections in `self_nodes`")]
    SelfEdge(String),
    #[error("multiplicity table is not symmetric at ({i}, {j})")]
    AsymmetricMultiplicity { i: usize, j: usize },
    #[error("multiplicity table has nonzero diagonal entry at {0}")]
    NonzeroDiagonal(usize),
    #[error("multiplicity table has {rows} rows for {vertices} vertices")]
    TableShape { rows: usize, vertices: usize },
    #[error("graph is disconnected: `{0}` is unreachable from `{1}`")]
    Disconnected(String, String),
    #[error("vertex `{id}` has pa = {pa} < self_nodes = {self_nodes}: geometric genus would be negative")]
    NegativeGeometricGenus { id: String, pa: u32, self_nodes: u32 },
    #[error("graph has {n} vertices, more than the limit of {limit} for subset enumeration")]
    TooManyVertices { n: usize, limit: usize },

    #[error("subcurve is empty")]
    EmptySubcurve,
    #[error("subcurve references vertex index {0} outside the graph")]
    SubcurveOutOfRange(usize),
    #[error("arithmetic genus {0} is too small: the bound m_Y needs g >= 2")]
    GenusTooSmall(i64),
    #[error("multidegree has {got} entries for {expected} vertices")]
    MultidegreeLength { expected: usize, got: usize },

    #[error("blow-up count {count} for nodes between `{u}` and `{v}` exceeds k = {max}")]
    BlowupPairOutOfRange { u: String, v: String, count: u32, max: u32 },
    #[error("blow-up count {count} for self-nodes of `{id}` exceeds self_nodes = {max}")]
    BlowupSelfOutOfRange { id: String, count: u32, max: u32 },
    #[error("blow-up table is not symmetric at ({i}, {j})")]
    AsymmetricBlowup { i: usize, j: usize },
    #[error("generated exceptional vertex id `{0}` collides with an existing vertex")]
    IdCollision(String),
    #[error("exceptional vertex `{0}` does not meet the rest of the curve in exactly two points")]
    MalformedExceptional(String),
    #[error("vertex `{id}` has odd k~ = {ktilde}: no spin structure on this blow-up")]
    ParityViolation { id: String, ktilde: i64 },
    #[error("structural and direct evaluations of the boundary case disagree on subcurve {0}")]
    BoundaryMismatch(String),

    #[error("t = {t} is below the supported minimum {min}")]
    TwistTooSmall { t: i64, min: i64 },
    #[error("spin witness violates its constraints: {0}")]
    InvalidWitness(String),
    #[error("multidegree is not a fiber component: Basic Inequality fails on {0} subcurve(s)")]
    NotAFiberComponent(usize),
    #[error("sigma solvers disagree for s = {0:?}")]
    SolverDisagreement(Vec<u32>),
    #[error("closed form is not integral for g = {g}, s = {s}")]
    NonIntegralBidegree { g: i64, s: i64 },

    #[error("genus {0} is below 3")]
    GenusBelowThree(i64),
}
