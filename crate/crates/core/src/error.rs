use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown preset name `{0}`")]
    UnknownPreset(String),
    #[error("unknown lattice `{0}` (expected `root` or `standard`)")]
    UnknownLattice(String),
    #[error("point is not in the closed positive chamber")]
    PointNotDominant,
    #[error("operation requires a semisimple root datum")]
    NotSemisimple,
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("element is not in the affine Weyl group W^aff")]
    NotInAffineWeylGroup,
    #[error("given group is not a subgroup")]
    NotASubgroup,
    #[error("character value lift failed: {0}")]
    LiftFailure(String),
    #[error("element is not elliptic")]
    NotElliptic,
    #[error("linear system has no solution: {0}")]
    NoSolution(String),
    #[error("pinned contraction chain is invalid: {0}")]
    PinInvalid(String),
    #[error("polysimplex decomposition failed: {0}")]
    DecompositionFailure(String),
    #[error("point has an infinite stabilizer (non-semisimple direction)")]
    InfiniteStabilizer,
    #[error("value is not rational")]
    NotRational,
    #[error("cyclotomic conductor {0} exceeds the supported bound")]
    ConductorTooLarge(i64),
    #[error("operation requires a rank-2 datum, got rank {0}")]
    RankNot2(usize),
    #[error("{0}")]
    Invalid(String),
}
