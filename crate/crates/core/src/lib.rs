//! Sampled time-frequency analysis: Grossmann-Royer, short-time Fourier and
//! Wigner representations on periodic grids, modulation-space norms, and
//! localization and Weyl operators.
//!
//! Signals live on centered grids `t_i = (i - n/2) dx`. Frequency axes are
//! centered too, with spacing `dω = 1/(n dx)`. All integrals are Riemann sums.

pub mod dft;
pub mod error;
pub mod fixtures;
pub mod grid;
pub mod hermite;
pub mod io;
pub mod modspaces;
pub mod operators;
pub mod tfr;
pub mod verify;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use grid::{
    fourier, inner, inverse_fourier, inverse_fourier_onto, modulate, reflect, translate, Grid1D,
    PhaseGrid, PhaseLattice, SampledSignal,
};
pub use hermite::{hermite_ft_eigen, hermite_function, hermite_tensor2, HermiteSpec};
pub use modspaces::{
    convolve, convolve2d, gaussian_decay_estimate, mixed_norm, modulation_norm, stft_adjoint,
    symbol_modulation_norm, weight_eval, weighted_lp_norm, young_functional, Exponent,
    MixedNormParams, WeightSpec,
};
pub use num_complex::Complex64;
pub use operators::{
    antiwick_to_weyl, daubechies_spectrum, localization_apply_grt, localization_apply_stft,
    localization_matrix, schatten_norm, singular_values, weyl_apply, weyl_matrix, OperatorMatrix,
    Provenance, SingularSpectrum, Symbol2D,
};
pub use tfr::{
    ambiguity, cross_wigner, freq_marginal, gr_operator_apply, grossmann_royer, hw_operator_apply,
    stft, symplectic_fourier, time_marginal, TfrKind, TfrMatrix,
};
