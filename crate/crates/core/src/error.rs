use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("generation {generation} exceeds capacity for this variant ({limit})")]
    GenerationOverflow { generation: usize, limit: usize },
    #[error("value {0} outside the unit interval")]
    OutOfUnitInterval(String),
    #[error("operation not supported for this variant: {0}")]
    UnsupportedVariant(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("no plateau: {0}")]
    NoPlateau(String),
    #[error("inverse image is a single point (denominator is not a power of two)")]
    NotDyadic,
    #[error("numeric overflow in {0}")]
    Overflow(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("raster capacity exceeded: side {side} > {limit}")]
    RasterCap { side: usize, limit: usize },
    #[error("resolution {resolution} undersamples depth {depth} (needs >= {needed})")]
    Undersampled {
        resolution: usize,
        depth: usize,
        needed: usize,
    },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("no interior fixed point in (0, 1)")]
    NoFixedPoint,
    #[error("fixed point is not relevant (R'(p_c) = {0} <= 1)")]
    IrrelevantFixedPoint(f64),
    #[error("grid has no enclosed holes")]
    NoHoles,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
