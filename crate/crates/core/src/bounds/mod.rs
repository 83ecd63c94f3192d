//! Growth recurrences, their transfer matrices and polynomials, and the
//! explicit bounds built from them.

pub mod cases;
pub mod claims;
pub mod expansions;
pub mod gtable;
pub mod matrix;
pub mod poly;
pub mod refined;

pub use cases::{
    case_matrix, char_poly_check, growth_polynomial, largest_root, matrix_chain, spectral_pair, CaseMatrix,
    CasePolynomial, MatrixSource, PolyCase, SpectralResult,
};
pub use claims::{
    arbitrary_bound_growth, base_three_bound, dyadic_chain_bound, growth_bound, interval_chain, iteration_depth,
    method_ceiling_odd, method_ceiling_s2, method_ceiling_s4, method_ceiling_s4_tabulated, refined_chain,
    refined_six_bound, refined_vs_plain, BoundReport, Direction, Oracle, OracleKind, OracleValue, Verdict,
};
pub use expansions::{minimal_root_threshold, root_expansion_check, RootExpansion, Threshold};
pub use gtable::GTable;
pub use refined::{refined_matrix, refined_radius, refinement_gap, GapReport};
