use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("inconsistent precision: exponent {exponent} is not below the window {prec}")]
    InconsistentPrecision { exponent: i64, prec: i64 },
    #[error("insufficient precision: divisor has no determinable leading term")]
    InsufficientPrecision,
    #[error("order undetermined: series is zero within its window (prec {prec})")]
    OrderUndetermined { prec: i64 },
    #[error(
        "window shortfall: need exponents below {needed}, series only known below {available}"
    )]
    WindowShortfall { needed: i64, available: i64 },
    #[error("invalid base denominator {0}")]
    InvalidBaseDen(u64),
    #[error("unsupported weight parity: k = {0} is odd")]
    OddWeight(i64),
    #[error("weight k = {0} is outside the supported range (need k >= 4)")]
    WeightTooSmall(i64),
    #[error("invalid vertex order {0} (need n >= 2 or a cusp)")]
    InvalidOrder(u64),
    #[error("basis index j = {j} outside [0, {d})")]
    IndexOutOfRange { j: i64, d: i64 },
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("group `{0}` has genus {1}; bases are only built for genus 0")]
    NonZeroGenus(String, u32),
    #[error("degenerate Moebius map: determinant is zero")]
    DegenerateMap,
    #[error("matrix determinant is {0}, expected 1")]
    NotUnimodular(String),
    #[error("eta quotient leading power {num}/{den} is not a multiple of 1/{base_den}")]
    FractionalLeadingPower { num: i64, den: i64, base_den: u64 },
    #[error("series accuracy not guaranteed: Im(tau) = {imag} is below {min_imag}")]
    BelowAdmissibleImag { imag: f64, min_imag: f64 },
    #[error("point is not in the upper half-plane: Im(tau) = {0}")]
    NotInUpperHalfPlane(f64),
    #[error("vertex {0} has no stored location")]
    NoLocation(usize),
    #[error("bases have different dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("malformed series JSON: {0}")]
    Json(String),
}
