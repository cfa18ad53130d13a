//! Closed-form invariant calculus for plane curves and projected surfaces:
//! degree/genus bookkeeping for dual curves, node/cusp solving, branch-curve
//! invariants of surface projections, polar degrees with their two
//! independent computations cross-checked, dual defect, and the
//! Mordell–Weil rank bookkeeping for elliptic fibrations. Everything here
//! is exact integer arithmetic except the seeded projections inside the
//! polar-degree routines.

use crate::duality::dual_variety;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groebner::Budget;
use crate::hilbert::dim_and_degree;
use crate::variety::{random_linear_forms, Projection, Variety};

/// Offset between consecutive retry seeds, shared with the other seeded
/// operations in the crate.
const RESEED: u64 = 0x9E37_79B9_7F4A_7C15;

/// Classical numerical invariants of a plane curve with only nodes and
/// ordinary cusps: degree, degree of the dual curve, geometric genus, node
/// count, cusp count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PluckerInvariants {
    pub d: u64,
    pub d_dual: u64,
    pub g: u64,
    pub delta: u64,
    pub kappa: u64,
}

impl PluckerInvariants {
    /// Build from degree and singularity counts, deriving the dual degree
    /// and genus; fails when the counts are impossible for the degree.
    pub fn from_singularities(d: u64, delta: u64, kappa: u64) -> Result<Self> {
        let (d_dual, g) = plucker_dual(d, delta, kappa)?;
        Ok(PluckerInvariants { d, d_dual, g, delta, kappa })
    }

    /// Do the five numbers satisfy both degree–genus relations?
    pub fn consistent(&self) -> bool {
        matches!(plucker_dual(self.d, self.delta, self.kappa),
                 Ok((dd, g)) if dd == self.d_dual && g == self.g)
    }
}

/// Numerical invariants of a projective surface needed for its generic
/// branch curve: degree, the intersection number K·H, K², and the second
/// Chern number c₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub deg_s: i64,
    pub kh: i64,
    pub k2: i64,
    pub c2: i64,
}

/// Degree of the dual curve and geometric genus of a plane curve of degree
/// `d` with `delta` nodes and `kappa` cusps:
/// `d' = d(d-1) - 2δ - 3κ`, `g = (d-1)(d-2)/2 - δ - κ`.
pub fn plucker_dual(d: u64, delta: u64, kappa: u64) -> Result<(u64, u64)> {
    if d < 1 {
        return Err(Error::Invalid("curve degree must be at least 1".into()));
    }
    let dd = d as i64 * (d as i64 - 1) - 2 * delta as i64 - 3 * kappa as i64;
    let g = (d as i64 - 1) * (d as i64 - 2) / 2 - delta as i64 - kappa as i64;
    if dd < 0 || g < 0 {
        return Err(Error::Invalid(format!(
            "invalid singularity data: degree {d} cannot carry {delta} nodes and {kappa} cusps"
        )));
    }
    Ok((dd as u64, g as u64))
}

/// Recover node and cusp counts of a node/cusp-only plane curve from its
/// degree, its dual degree, and the total colength of its Jacobian ideal
/// (nodes count 1, cusps count 2): the linear system
/// `{ d' = d(d-1) - 2δ - 3κ, t = δ + 2κ }`.
pub fn solve_nodes_cusps(d: u64, d_dual: u64, tjurina_total: u64) -> Result<(u64, u64)> {
    if d < 1 {
        return Err(Error::Invalid("curve degree must be at least 1".into()));
    }
    let a = d as i64 * (d as i64 - 1) - d_dual as i64; // = 2δ + 3κ
    let t = tjurina_total as i64;
    let kappa = 2 * t - a;
    let delta = 2 * a - 3 * t;
    if kappa < 0 || delta < 0 {
        return Err(Error::Invalid(format!(
            "singularities beyond nodes and cusps: degree {d}, dual degree {d_dual}, \
             colength {tjurina_total} admit no non-negative solution"
        )));
    }
    Ok((delta as u64, kappa as u64))
}

/// Degree, node count, and cusp count of the branch curve of a generic
/// projection of a smooth surface to the plane, from the surface's
/// numerical invariants:
/// `deg Δ = 3·deg S + K·H`,
/// `δ = ½(deg Δ)² - 15·deg Δ - 3K² + 24·deg S + c₂`,
/// `κ = 9·deg Δ + 2K² - 15·deg S - c₂`.
pub fn surface_branch_invariants(s: SurfaceInvariants) -> Result<(u64, u64, u64)> {
    let deg_d = 3 * s.deg_s + s.kh;
    if deg_d < 0 {
        return Err(Error::Invalid(format!(
            "hypotheses violated: branch degree 3·{} + {} is negative",
            s.deg_s, s.kh
        )));
    }
    if (deg_d * deg_d) % 2 != 0 {
        return Err(Error::Invalid(format!(
            "hypotheses violated: odd branch degree {deg_d} makes the node count fractional"
        )));
    }
    let delta = deg_d * deg_d / 2 - 15 * deg_d - 3 * s.k2 + 24 * s.deg_s + s.c2;
    let kappa = 9 * deg_d + 2 * s.k2 - 15 * s.deg_s - s.c2;
    if delta < 0 || kappa < 0 {
        return Err(Error::Invalid(format!(
            "hypotheses violated: negative singularity count (δ = {delta}, κ = {kappa})"
        )));
    }
    Ok((deg_d as u64, delta as u64, kappa as u64))
}

/// The `i`-th polar degree of `x`: the degree of the critical locus of a
/// seeded generic projection to `P^{i+1}`, which is `i`-dimensional for
/// `i ≤ dim x`. Cross-checked against the degree of the branch locus when
/// the projection dominates (the two must agree; a mismatch is an error,
/// not a report). By convention the result is 0 for `i > dim x` and the
/// degree of `x` for `i = dim x`.
pub fn polar_degree<F: Scalar>(
    x: &Variety<F>,
    i: usize,
    seed: u64,
    budget: &mut Budget,
) -> Result<u64> {
    if i + 1 > x.ambient {
        return Err(Error::Invalid(format!(
            "polar index {i} needs a projection to P^{}, ambient is P^{}",
            i + 1,
            x.ambient
        )));
    }
    let dd = x.dim_deg(budget)?;
    if dd.dim < 0 {
        return Err(Error::Degenerate(format!("{}: empty variety", x.name)));
    }
    let n = dd.dim as usize;
    if i > n {
        return Ok(0);
    }

    let mut last: Option<Error> = None;
    for attempt in 0..3u64 {
        let s = seed.wrapping_add(attempt.wrapping_mul(RESEED));
        let pi = Projection::random(x.ambient, i + 1, s, &x.ctx)?;
        let crit = match crate::discriminant::polar_critical_ideal(x, &pi, budget) {
            Ok(c) => c,
            Err(e @ Error::Degenerate(_)) => {
                last = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        let cdd = dim_and_degree(&crit, x.nvars(), budget)?;
        if cdd.dim != i as i64 {
            last = Some(Error::Degenerate(format!(
                "{}: polar locus has dimension {}, expected {i}",
                x.name, cdd.dim
            )));
            continue;
        }
        if i < n {
            // dominant case: the branch locus must have the same degree
            let disc = match crate::discriminant::smooth_discriminant(x, &pi, budget) {
                Ok(d) => d,
                Err(e @ Error::Degenerate(_)) => {
                    last = Some(e);
                    continue;
                }
                Err(e) => return Err(e),
            };
            let bdd = disc.discriminant.dim_deg(budget)?;
            if bdd.degree != cdd.degree {
                return Err(Error::Invalid(format!(
                    "{}: polar locus degree {} disagrees with branch locus degree {}",
                    x.name, cdd.degree, bdd.degree
                )));
            }
        }
        return Ok(cdd.degree);
    }
    Err(last.unwrap())
}

/// Check that the `i`-th polar degree of `x` equals the 0-th polar degree
/// of a seeded generic codimension-`i` linear section of `x`.
pub fn segre_check<F: Scalar>(
    x: &Variety<F>,
    i: usize,
    seed: u64,
    budget: &mut Budget,
) -> Result<bool> {
    let dd = x.dim_deg(budget)?;
    if (i as i64) > dd.dim {
        return Err(Error::Invalid(format!(
            "section codimension {i} exceeds dim = {}",
            dd.dim
        )));
    }
    let ri = polar_degree(x, i, seed, budget)?;
    if i == 0 {
        return Ok(true);
    }
    let mut last: Option<Error> = None;
    for attempt in 0..3u64 {
        let s = seed
            .wrapping_add(0xC2B2_AE35)
            .wrapping_add(attempt.wrapping_mul(RESEED));
        let forms = random_linear_forms::<F>(x.nvars(), i, s, &x.ctx);
        let sliced = match x.section_intrinsic(&forms) {
            Ok(v) => v,
            Err(e @ Error::Degenerate(_)) => {
                last = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        match polar_degree(&sliced, 0, s, budget) {
            Ok(r0) => return Ok(r0 == ri),
            Err(e @ Error::Degenerate(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap())
}

/// Dual defect of `x`: how far the dual variety falls short of being a
/// hypersurface, `N - 1 - dim(x^⊥)`. Zero exactly when the dual is a
/// hypersurface.
pub fn defect<F: Scalar>(x: &Variety<F>, budget: &mut Budget) -> Result<i64> {
    let dual = dual_variety(x, budget)?;
    let dd = dual.dim_deg(budget)?;
    if dd.dim < 0 {
        return Err(Error::Degenerate(format!("{}: empty dual", x.name)));
    }
    Ok(x.ambient as i64 - 1 - dd.dim)
}

/// Mordell–Weil rank of an elliptic fibration from Picard-rank bookkeeping:
/// `rank = ρ_total - 1 - ρ_base - (number of extra fibral divisor classes)`.
pub fn shioda_tate_rank(rho_total: i64, rho_base: i64, fibral: i64) -> Result<i64> {
    let r = rho_total - 1 - rho_base - fibral;
    if r < 0 {
        return Err(Error::Invalid(format!(
            "rank bookkeeping gives {r}: total {rho_total} cannot cover base {rho_base} \
             plus {fibral} fibral classes"
        )));
    }
    Ok(r)
}
