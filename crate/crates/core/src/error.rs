use thiserror::Error;

/// Errors produced by the encryption pipeline and its stages.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty key")]
    EmptyKey,
    #[error("invalid image dimensions {width}x{height}")]
    InvalidDimensions { width: usize, height: usize },
    #[error("pixel buffer length {actual} does not match {width}x{height}")]
    PixelCount {
        width: usize,
        height: usize,
        actual: usize,
    },
    #[error("unaligned image: {width}x{height} is not a multiple of {block}")]
    UnalignedImage {
        width: usize,
        height: usize,
        block: usize,
    },
    #[error("invalid FAPS record")]
    InvalidFapsRecord,
    #[error("bad magic")]
    BadMagic,
    #[error("unsupported version {0}")]
    UnsupportedVersion(u8),
    #[error("truncated container: expected {expected} bytes, found {actual}")]
    Truncated { expected: usize, actual: usize },
    #[error("trailing bytes after container body: expected {expected} bytes, found {actual}")]
    TrailingBytes { expected: usize, actual: usize },
    #[error("invalid container: {0}")]
    InvalidContainer(&'static str),
    #[error("wrong key or corrupted container")]
    WrongKey,
    #[error("degenerate image: need at least two pixels along the {0} direction")]
    DegenerateSize(&'static str),
    #[error("pixel ({row}, {col}) is outside a {width}x{height} image")]
    OutOfBounds {
        row: usize,
        col: usize,
        width: usize,
        height: usize,
    },
    #[error("image dimensions differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
