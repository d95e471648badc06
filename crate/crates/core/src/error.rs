use alloc::string::String;

/// Errors raised by the core algebra.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid deck group: {0}")]
    InvalidDeckGroup(String),
    #[error("labels do not generate the deck group (cover is disconnected)")]
    DisconnectedCover,
    #[error("paths are not composable: first ends at {target}, second starts at {start}")]
    NotComposable { target: usize, start: usize },
    #[error("not liftable: generator g{generator} changes its deck label")]
    NotLiftable { generator: usize },
    #[error("not liftable: star image {star} is not in the kernel")]
    StarNotInKernel { star: usize },
    #[error("expected {expected} base boundary components, found {found}")]
    WrongBoundaryCount { expected: usize, found: usize },
    #[error("resource limit exceeded after {steps} rewrite steps")]
    ResourceLimit { steps: usize },
    #[error("word is not in the kernel of the labeling")]
    NotInKernel,
    #[error("peripheral classes are not invariant under the map")]
    PeripheralNotInvariant,
    #[error("torsion in the filled homology quotient")]
    Torsion,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("step {step}: {reason}")]
    Step { step: usize, reason: String },
}

pub type Result<T> = core::result::Result<T, Error>;
