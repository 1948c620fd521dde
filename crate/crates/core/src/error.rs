use thiserror::Error;

/// Errors raised while building or analysing S-boxes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SboxError {
    #[error("empty S-box description")]
    Empty,
    #[error("token {position}: {token:?} is not a valid entry")]
    MalformedToken { position: usize, token: String },
    #[error("entry {position}: value {value} is out of range for a {m}-bit S-box")]
    ValueOutOfRange { position: usize, value: u64, m: u32 },
    #[error("length {0} is not a power-of-two table of supported dimension (4 to 256 entries)")]
    BadLength(usize),
    #[error("hex form needs exactly 16 digits (4-bit S-boxes only), got {0}")]
    BadHexLength(usize),
    #[error("dimension {0} is outside the supported range 2..=8")]
    UnsupportedDimension(u32),
    #[error("input difference must be nonzero")]
    ZeroDifference,
    #[error("output mask must be nonzero")]
    ZeroMask,
    #[error("value {value} does not fit in {m} bits")]
    OutOfDomain { value: usize, m: u32 },
    #[error("S-box is not a permutation")]
    NotBijective,
    #[error("S-box is not normalized: f(0) = {0}")]
    NotNormalized(u8),
    #[error("expected a {expected}-bit S-box, got a {found}-bit one")]
    WrongDimension { expected: u32, found: u32 },
    #[error("anti-invariance level {level} is outside 1..={m}")]
    InvalidLevel { level: u32, m: u32 },
    #[error("invalid shard configuration: shard {shard_id} of {shards}")]
    InvalidShard { shards: u32, shard_id: u32 },
    #[error("invalid search prefix: {0}")]
    InvalidPrefix(String),
    #[error("invalid dimension list: {0}")]
    InvalidDims(String),
}
