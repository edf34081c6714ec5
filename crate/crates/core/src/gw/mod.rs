//! Gromov-Witten side: the `q = −e^{iu}` substitution, the trigonometric
//! closed forms, and the leading-term surface invariants.

pub mod invariants;
pub mod matrices;
pub mod substitution;
pub mod vertical;

pub use invariants::{
    mp_consistency, mp_invariant, pipeline_invariant, spin_hurwitz_vertical,
    vertical_descendent_invariant,
};
pub use matrices::{k_matrix, l_entry, l_matrix, GaussTriangularMatrix};
pub use substitution::{substitute_q_exponential, substitute_scalar, t_free};
pub use vertical::{
    extract_surface_invariant, gw_descendent_factor, gw_vertical, gw_vertical_substituted,
    gw_vertical_trig, leading_exponent, leading_order_check,
};
