//! Exact projective duality and discriminants of generic linear
//! projections, with a numeric braid-monodromy layer for plane-curve
//! covers.
//!
//! The exact side is generic over the coefficient field ([`field::Scalar`]):
//! ℚ with arbitrary-precision rationals, or a runtime 31-bit prime field.
//! The numeric side is generic over [`num_traits::Float`] and is used at
//! `f64`.

pub mod braid;
pub mod catalog;
pub mod discriminant;
pub mod duality;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod invariants;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod resultant;
pub mod variety;

pub use braid::{
    aberth_roots, braid_monodromy, branch_points, free_reduce, loop_system,
    restrict_to_line_and_monodromy, surjectivity_certificate, transport_fiber, Certificate,
    LoopKind, LoopMonodromy, LoopPath, LoopSystem, MonodromyData, PlaneCover, Transported,
};
pub use discriminant::{
    hypersurface_branch_discriminant, polar_critical_ideal, projection_chain, purity_classify,
    smooth_discriminant, verify_duality, Classification, DiscriminantResult, DualityReport,
};
pub use duality::{bidual, check_biduality, conormal, dual_variety, Conormal};
pub use error::{Error, Result};
pub use field::{Fp, Rat, Scalar};
pub use groebner::{buchberger, normal_form, Budget, DEFAULT_BUDGET};
pub use hilbert::{dim_and_degree, DimDeg};
pub use invariants::{
    defect, plucker_dual, polar_degree, segre_check, shioda_tate_rank, solve_nodes_cusps,
    surface_branch_invariants, PluckerInvariants, SurfaceInvariants,
};
pub use monomial::{Monomial, Order};
pub use parse::VarSet;
pub use poly::Poly;
pub use variety::{Projection, Variety};

/// Polynomial over ℚ.
pub type QPoly = Poly<Rat>;
/// Polynomial over a runtime prime field.
pub type FpPoly = Poly<Fp>;
