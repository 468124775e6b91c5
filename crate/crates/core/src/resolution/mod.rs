//! Ground-truth Betti numbers of monomial ideals via upper Koszul complexes.

mod betti;
mod field;
mod simplicial;

pub use betti::{
    betti_table, depth_profile, depth_quotient_oracle, has_linear_resolution, linear_projdim,
    upper_koszul, BettiDocument, BettiEntry, BettiTable, DepthProfile, GradedEntry, Oracle,
};
pub use field::{rank_mod_p, rank_rational, Field};
pub use simplicial::SimplicialComplex;
