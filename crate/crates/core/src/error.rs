use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("point is not a finite nonzero vector")]
    InvalidPoint,
    #[error("chord endpoints coincide")]
    CoincidentEndpoints,
    #[error("chord endpoints are antipodal")]
    AntipodalEndpoints,
    #[error("point is antipodal to a chord endpoint")]
    AmbiguousAntipodal,
    #[error("triangle has antipodal vertices")]
    AntipodalVertices,
    #[error("cusp angle {0} outside [0, pi]")]
    ThetaOutOfRange(f64),
    #[error("curve segments do not join at segment {0}")]
    Disconnected(usize),
    #[error("curve is not closed")]
    NotClosed,
    #[error("curve is empty")]
    EmptyCurve,
    #[error("sample count must be at least 2")]
    TooFewSamples,
    #[error(transparent)]
    Quadrature(#[from] QuadratureFailure),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("quadrature did not reach {target:e} within {panels} panels (estimate {estimate:e})")]
pub struct QuadratureFailure {
    pub target: f64,
    pub panels: usize,
    pub estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LensError {
    #[error("{name} = {value} outside its domain")]
    Domain { name: &'static str, value: f64 },
    #[error("quotient and expanded forms disagree: {quotient} vs {expanded}")]
    InternalMismatch { quotient: f64, expanded: f64 },
}

impl LensError {
    pub(crate) fn domain(name: &'static str, value: f64) -> Self {
        LensError::Domain { name, value }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LedgerError {
    #[error("boundary length is zero")]
    ZeroPerimeter,
    #[error("sewing length {gamma} exceeds a perimeter ({l1}, {l2})")]
    LedgerViolation { gamma: f64, l1: f64, l2: f64 },
    #[error("ledgers belong to different point counts ({0} vs {1})")]
    MixedConfigurations(usize, usize),
    #[error("branch data sum to {sum}, expected {expected}")]
    RHViolation { sum: usize, expected: usize },
    #[error("slit endpoint hits must be 0, 1 or 2 (got {0})")]
    EndpointHits(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("degenerate triangle at fan position {0}")]
    DegenerateConfiguration(usize),
    #[error("partition is not in the admissible family: {0}")]
    Invalid(String),
    #[error("R mismatch: fan formula {formula} vs ledger {ledger}")]
    InternalMismatch { formula: f64, ledger: f64 },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Lens(#[from] LensError),
    #[error(transparent)]
    Ledger(#[from] LedgerError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("every curvature in the admissible range puts a point on an arc")]
    NoFeasibleCurvature,
    #[error("closed form needs q = 3, got {0}")]
    WrongQ(usize),
    #[error("invalid search range {0}..={1}")]
    BadRange(usize, usize),
    #[error("no admissible tuple")]
    NoCandidates,
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Lens(#[from] LensError),
}
