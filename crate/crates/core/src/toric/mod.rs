//! Toric ideals of Rees algebras of monomial ideals via binomial Gröbner bases.

mod groebner;
mod order;
mod rees;

pub use groebner::{buchberger, Binomial, GroebnerBasis, DEFAULT_BUCHBERGER_CAP};
pub use order::{TermOrder, YOrder};
pub use rees::{
    analytic_spread, burch_brodmann_check, depth_lower_bounds, rees_groebner, rees_kernel, rho,
    thm25_generator_order, write_groebner, x_condition, BoundAtK, BurchBrodmannReport, DepthBounds,
    LimitBound, ReesConfig, ReesRing, DEFAULT_BOUNDS_CAP,
};
