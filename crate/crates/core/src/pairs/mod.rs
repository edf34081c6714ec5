//! Stable-pairs side: closed formulas and the independent brute-force sum.

pub mod bruteforce;
pub mod closed;
pub mod gamma;
pub mod geometry;
pub mod mixed;
pub mod taut;

pub use bruteforce::{answerint_term, b_constant, vertical_bruteforce};
pub use closed::{
    q_symmetry_check, vertical_closed, vertical_closed_descendents, vertical_closed_upper,
    ClosedForm,
};
pub use gamma::{gamma_coefficients, gamma_resummation_check, gamma_telescoped, GammaTable};
pub use geometry::{parse_insertions, total_alpha, ChiParity, Insertion, SurfaceGeometry};
pub use mixed::{
    chern_integral, mixed_dual_path, mixed_insertion_series, mixed_insertion_series_direct,
    MixedOptions, PushforwardRule,
};
pub use taut::{symmetric_product_integral, TautPoly};
