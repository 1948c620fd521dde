//! Security measures for small S-boxes `f: F_2^m -> F_2^m`.
//!
//! The crate computes differential and weak differential uniformity,
//! Walsh-based linearity (`Lin`, `Lin1`), the single-bit differential
//! measure `Diff1`, component degrees and the degree spectrum `n_i`, the
//! constant-derivative-component count `n_hat`, and strong `l`-anti-invariance.
//! On top of these it classifies 4-bit permutations as optimal, strong or
//! very strong, exhaustively enumerates the strong ones, and machine-checks
//! a catalogue of known facts about weakly APN 4-bit S-boxes.
//!
//! Vectors of `F_2^m` are encoded as the `m` low bits of an integer and the
//! group operation is XOR.
//!
//! ```
//! use sbox_core::{parse_sbox, predicates::analyze};
//!
//! let f = parse_sbox("0,1,2,13,4,15,14,7,8,3,5,9,10,6,12,11").unwrap();
//! let report = analyze(&f);
//! assert!(report.weakly_apn);
//! assert_eq!(report.n_hat, 1);
//! ```

pub mod affine;
pub mod cli;
pub mod differential;
pub mod enumeration;
mod error;
pub mod invariance;
pub mod oracle;
pub mod predicates;
mod sbox;
pub mod spectral;
pub mod verification;

pub use differential::{
    ddt, derivative_image_size, diff1, differential_uniformity, is_weakly_apn,
    is_weakly_delta_uniform, Ddt, DerivativeImage,
};
pub use error::SboxError;
pub use sbox::{parse_sbox, SBox, MAX_DIMENSION, MIN_DIMENSION};
pub use spectral::{
    algebraic_degree, anf, component_degree, degree_spectrum, lin, lin1, n_hat, walsh_spectrum,
    Anf, BooleanComponent, DegreeSpectrum, WalshSpectrum, NEG_INFINITY_DEGREE,
};

pub type Result<T, E = SboxError> = std::result::Result<T, E>;

#[inline]
pub(crate) fn parity(x: u32) -> u32 {
    x.count_ones() & 1
}

#[inline]
pub(crate) fn is_weight_one(x: usize) -> bool {
    x.is_power_of_two()
}
