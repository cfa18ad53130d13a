//! Branch loci of generic linear projections. A projection `P^N ⇢ P^k`
//! restricted to a subvariety has a critical locus (where the differential
//! drops rank on the smooth part), and the closure of its image is the
//! discriminant of the cover. This module computes that locus and image
//! exactly, classifies the result (irreducible hypersurface / union of
//! hyperplanes / empty / non-dominant image), checks it against the linear
//! section of the dual variety, walks iterated one-step projection chains,
//! and handles the hypersurface-from-a-point case by resultants.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::duality::dual_variety;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groebner::{buchberger, is_unit_basis, normal_form, Budget};
use crate::hilbert::dim_and_degree;
use crate::ideal::{linear_image, same_zero_set, saturate};
use crate::matrix::{kernel_basis, mat_inverse, mat_mul, minors};
use crate::monomial::Order;
use crate::poly::Poly;
use crate::resultant::{div_exact, resultant, uni_gcd};
use crate::variety::{random_combination, Projection, Variety};

/// Offset between consecutive retry seeds, shared with the other seeded
/// operations in the crate.
const RESEED: u64 = 0x9E37_79B9_7F4A_7C15;

/// Fixed seed for the singular-locus saturation witness, so critical ideals
/// are deterministic.
const SING_SEED: u64 = 0x514E_4721;

/// Fixed seed for squarefree-part line restrictions and directional
/// derivatives.
const SQF_SEED: u64 = 0x5155_4652_4545;

/// How a computed branch locus sits inside its target projective space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// A hypersurface of the target that is not a union of hyperplanes.
    IrreducibleHypersurface,
    /// A finite union of hyperplanes of the target.
    UnionOfHyperplanes,
    /// Empty: the cover is unramified over the smooth part.
    Empty,
    /// The projection does not dominate the target; the recorded variety is
    /// the closure of the image itself.
    NonDominantImage,
}

/// Outcome of a branch-locus computation for one projection.
#[derive(Clone, Debug)]
pub struct DiscriminantResult<F: Scalar> {
    pub projection: Projection<F>,
    pub discriminant: Variety<F>,
    pub classification: Classification,
    pub dominant: bool,
}

/// Outcome of the projection–section duality check: the dual of the branch
/// locus against the matching linear section of the dual variety, both in
/// the dual coordinates of the target space.
#[derive(Clone, Debug)]
pub struct DualityReport<F: Scalar> {
    pub left: Vec<Poly<F>>,
    pub right: Vec<Poly<F>>,
    pub equal: bool,
    pub seeds: Vec<u64>,
}

/// Ideal of the critical locus of `pi` restricted to the smooth part of
/// `x`: the equations of `x` plus the rank-dropping minors of the Jacobian
/// stacked on the projection matrix, saturated by the singular locus'
/// minor ideal (represented by a seeded generic combination, which is
/// nonvanishing on every component not contained in the singular locus).
/// Returns a Gröbner basis in the source variables.
pub fn polar_critical_ideal<F: Scalar>(
    x: &Variety<F>,
    pi: &Projection<F>,
    budget: &mut Budget,
) -> Result<Vec<Poly<F>>> {
    let n = x.nvars();
    if pi.source_dim() != x.ambient {
        return Err(Error::Invalid(format!(
            "projection expects P^{}, variety lives in P^{}",
            pi.source_dim(),
            x.ambient
        )));
    }
    let dd = x.dim_deg(budget)?;
    if dd.dim < 0 {
        return Err(Error::Degenerate(format!("{}: empty variety", x.name)));
    }
    let c = (x.ambient as i64 - dd.dim) as usize;
    let k = pi.target_dim();

    let gbx = buchberger(&x.gens, Order::DegRevLex, budget)?;

    // [Jacobian; projection matrix]: the differential of pi|x drops rank
    // exactly where all (c + k + 1)-minors vanish.
    let mut aug = x.jacobian();
    for row in &pi.rows {
        aug.push(
            row.iter()
                .map(|e| Poly::constant(e.clone(), n, Order::DegRevLex))
                .collect(),
        );
    }
    let mut crit = x.gens.clone();
    for m in minors(&aug, c + k + 1) {
        let nf = normal_form(&m, &gbx);
        if !nf.is_zero() {
            crit.push(nf);
        }
    }

    // Witness for the singular locus: the critical scheme carries junk
    // components where the Jacobian itself is rank-deficient; remove
    // everything on which every full-rank minor vanishes.
    let survivors: Vec<Poly<F>> = minors(&x.jacobian(), c)
        .into_iter()
        .map(|m| normal_form(&m, &gbx))
        .filter(|m| !m.is_zero())
        .collect();
    if survivors.is_empty() {
        return Err(Error::Degenerate(format!(
            "{}: jacobian rank is deficient along the whole variety",
            x.name
        )));
    }
    if survivors.iter().any(|m| m.is_constant()) {
        return buchberger(&crit, Order::DegRevLex, budget);
    }
    let witness = if survivors.len() == 1 {
        survivors.into_iter().next().unwrap()
    } else {
        let mut pick = None;
        for attempt in 0..3u64 {
            let w = random_combination(
                &survivors,
                SING_SEED.wrapping_add(attempt.wrapping_mul(RESEED)),
                &x.ctx,
            );
            let w = normal_form(&w, &gbx);
            if !w.is_zero() {
                pick = Some(w);
                break;
            }
        }
        pick.ok_or_else(|| {
            Error::Degenerate(format!(
                "{}: every witness combination vanished on the variety",
                x.name
            ))
        })?
    };
    saturate(&crit, n, &witness, budget)
}

/// Branch locus of `pi` restricted to `x`, with its classification. For a
/// dominant restriction this is the closure of the image of the smooth
/// critical locus; when `dim x < k` the projection cannot dominate and the
/// closure of the image of `x` itself is returned instead.
pub fn smooth_discriminant<F: Scalar>(
    x: &Variety<F>,
    pi: &Projection<F>,
    budget: &mut Budget,
) -> Result<DiscriminantResult<F>> {
    let n = x.nvars();
    let k = pi.target_dim();
    if pi.source_dim() != x.ambient {
        return Err(Error::Invalid(format!(
            "projection expects P^{}, variety lives in P^{}",
            pi.source_dim(),
            x.ambient
        )));
    }
    let dd = x.dim_deg(budget)?;
    if dd.dim < 0 {
        return Err(Error::Degenerate(format!("{}: empty variety", x.name)));
    }

    if dd.dim < k as i64 {
        // Too small to dominate: the branch locus convention for a
        // non-dominant map is the closure of the image.
        let img = linear_image(&x.gens, n, &pi.forms(), budget)?;
        let disc = Variety::new(format!("{}-image", x.name), k, img, x.ctx.clone())?;
        let idd = disc.dim_deg(budget)?;
        if idd.dim != dd.dim {
            return Err(Error::Degenerate(format!(
                "{}: image dimension {} does not match source dimension {}",
                x.name, idd.dim, dd.dim
            )));
        }
        return Ok(DiscriminantResult {
            projection: pi.clone(),
            discriminant: disc,
            classification: Classification::NonDominantImage,
            dominant: false,
        });
    }

    let crit = polar_critical_ideal(x, pi, budget)?;
    let gens = if is_unit_basis(&crit) {
        // Critical locus empty even as a cone: the branch locus is cut out
        // by the irrelevant ideal of the target.
        (0..=k)
            .map(|i| Poly::var_in(i, k + 1, Order::DegRevLex, &x.ctx))
            .collect()
    } else {
        linear_image(&crit, n, &pi.forms(), budget)?
    };
    let mut disc = Variety::new(format!("{}-branch", x.name), k, gens, x.ctx.clone())?;
    let ddd = disc.dim_deg(budget)?;

    let classification = if ddd.dim < 0 {
        Classification::Empty
    } else if ddd.dim == k as i64 - 1 {
        // A hypersurface: reduce a principal ideal to its squarefree part
        // (the locus is set-theoretic by contract), then decide whether it
        // splits into hyperplanes by checking whether its dual is a finite
        // set of points.
        if disc.gens.len() == 1 {
            disc.gens = vec![squarefree_part(&disc.gens[0], &x.ctx, budget)?];
        }
        if k == 1 {
            // Points of a line are hyperplanes of it.
            Classification::UnionOfHyperplanes
        } else {
            let dual_d = dual_variety(&disc, budget)?;
            if dual_d.dim_deg(budget)?.dim == 0 {
                Classification::UnionOfHyperplanes
            } else {
                Classification::IrreducibleHypersurface
            }
        }
    } else {
        return Err(Error::Degenerate(format!(
            "{}: branch locus has dimension {} in P^{k}, expected {} or empty",
            x.name,
            ddd.dim,
            k as i64 - 1
        )));
    };

    Ok(DiscriminantResult {
        projection: pi.clone(),
        discriminant: disc,
        classification,
        dominant: true,
    })
}

/// Check, for a seeded generic projection to `P^k`, that the dual of the
/// branch locus equals the linear section of the dual of `x` by the span of
/// the projection's forms, both written in the dual coordinates of the
/// target. Reseeds up to three times on degenerate draws; every seed tried
/// is recorded in the report.
pub fn verify_duality<F: Scalar>(
    x: &Variety<F>,
    k: usize,
    seed: u64,
    budget: &mut Budget,
) -> Result<DualityReport<F>> {
    if k == 0 || k >= x.ambient {
        return Err(Error::Invalid(format!(
            "target dimension must lie strictly between 0 and {}",
            x.ambient
        )));
    }
    let dualx = dual_variety(x, budget)?;
    let mut seeds = Vec::new();
    let mut last: Option<Error> = None;
    for attempt in 0..3u64 {
        let s = seed.wrapping_add(attempt.wrapping_mul(RESEED));
        seeds.push(s);
        match duality_once(x, &dualx, k, s, budget) {
            Ok((left, right, equal)) => {
                return Ok(DualityReport { left, right, equal, seeds })
            }
            Err(e @ Error::Degenerate(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap())
}

fn duality_once<F: Scalar>(
    x: &Variety<F>,
    dualx: &Variety<F>,
    k: usize,
    seed: u64,
    budget: &mut Budget,
) -> Result<(Vec<Poly<F>>, Vec<Poly<F>>, bool)> {
    let pi = Projection::random(x.ambient, k, seed, &x.ctx)?;
    let disc = smooth_discriminant(x, &pi, budget)?;

    // Right side: hyperplane coordinates `b` of the target pull back to
    // `L^T b`; substituting that into the dual's equations cuts the dual by
    // the span of the projection's forms, expressed intrinsically in `b`.
    let images = pi.transpose_images(Order::DegRevLex);
    let right: Vec<Poly<F>> = dualx
        .gens
        .iter()
        .map(|g| g.compose(&images))
        .filter(|g| !g.is_zero())
        .collect();

    if matches!(disc.classification, Classification::Empty) {
        // Dual of the empty locus is empty; the sides agree exactly when
        // the section misses the dual entirely.
        let left: Vec<Poly<F>> = (0..=k)
            .map(|i| Poly::var_in(i, k + 1, Order::DegRevLex, &x.ctx))
            .collect();
        let equal = if right.is_empty() {
            false
        } else {
            dim_and_degree(&right, k + 1, budget)?.dim < 0
        };
        return Ok((left, right, equal));
    }

    let dual_d = dual_variety(&disc.discriminant, budget)?;
    let equal = same_zero_set(&dual_d.gens, &right, k + 1, budget)?;
    Ok((dual_d.gens, right, equal))
}

/// Predict the branch-locus class of a generic projection to `P^k` from the
/// codimension of the dual variety, then compute the branch locus
/// independently and insist the two agree. A mismatch is a hard error, not
/// a report entry.
pub fn purity_classify<F: Scalar>(
    x: &Variety<F>,
    k: usize,
    seed: u64,
    budget: &mut Budget,
) -> Result<Classification> {
    if k == 0 || k >= x.ambient {
        return Err(Error::Invalid(format!(
            "target dimension must lie strictly between 0 and {}",
            x.ambient
        )));
    }
    let dd = x.dim_deg(budget)?;
    if dd.dim < k as i64 {
        return Err(Error::Invalid(format!(
            "{}: needs dim >= {k} to dominate P^{k}, has {}",
            x.name, dd.dim
        )));
    }
    let dualx = dual_variety(x, budget)?;
    let perp_codim = x.ambient as i64 - dualx.dim_deg(budget)?.dim;
    let predicted = if perp_codim > k as i64 {
        Classification::Empty
    } else if perp_codim == k as i64 {
        Classification::UnionOfHyperplanes
    } else {
        Classification::IrreducibleHypersurface
    };

    let mut last: Option<Error> = None;
    for attempt in 0..3u64 {
        let s = seed.wrapping_add(attempt.wrapping_mul(RESEED));
        let pi = Projection::random(x.ambient, k, s, &x.ctx)?;
        match smooth_discriminant(x, &pi, budget) {
            Ok(disc) => {
                return if disc.classification == predicted {
                    Ok(predicted)
                } else {
                    Err(Error::Invalid(format!(
                        "{}: branch locus of the projection to P^{k} classified as \
                         {:?}, but the dual codimension {perp_codim} predicts {:?}",
                        x.name, disc.classification, predicted
                    )))
                };
            }
            Err(e @ Error::Degenerate(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap())
}

/// Project step by step, `P^N → P^{N-1} → … → P^k`, taking the branch locus
/// (or image closure) at each step and feeding it to the next. Each step
/// reseeds independently on degenerate draws. The composite of the step
/// matrices is available through [`chain_composite`] for consistency checks
/// against the single-shot branch locus.
pub fn projection_chain<F: Scalar>(
    x: &Variety<F>,
    k: usize,
    seed: u64,
    budget: &mut Budget,
) -> Result<Vec<DiscriminantResult<F>>> {
    if k == 0 || k >= x.ambient {
        return Err(Error::Invalid(format!(
            "target dimension must lie strictly between 0 and {}",
            x.ambient
        )));
    }
    let mut cur = x.clone();
    let mut out: Vec<DiscriminantResult<F>> = Vec::new();
    for l in (k..x.ambient).rev() {
        let base = seed.wrapping_add(((l as u64) + 1).wrapping_mul(RESEED));
        let mut stepped = false;
        let mut last: Option<Error> = None;
        for attempt in 0..3u64 {
            let s = base.wrapping_add(attempt.wrapping_mul(0x6A09_E667_F3BC_C909));
            let pi = Projection::random(cur.ambient, l, s, &x.ctx)?;
            match smooth_discriminant(&cur, &pi, budget) {
                Ok(step) => {
                    cur = step.discriminant.clone();
                    out.push(step);
                    stepped = true;
                    break;
                }
                Err(e @ Error::Degenerate(_)) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
        if !stepped {
            return Err(last.unwrap());
        }
    }
    Ok(out)
}

/// The single projection equal to a chain's steps composed in order.
pub fn chain_composite<F: Scalar>(chain: &[DiscriminantResult<F>]) -> Result<Projection<F>> {
    let mut iter = chain.iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::Invalid("empty projection chain".into()))?;
    let mut acc = first.projection.rows.clone();
    for step in iter {
        acc = mat_mul(&step.projection.rows, &acc);
    }
    Projection::from_rows(acc)
}

/// Raw branch resultant of the projection of the hypersurface `V(f) ⊂
/// P^{N+1}` from the point center of `pi` onto `P^N`: after a coordinate
/// change moving the center to the last coordinate point, the resultant of
/// `f` and its last partial derivative, re-expressed in the target's own
/// coordinates. Multiplicities are kept (for a smooth hypersurface of
/// degree `m` the total degree is `m(m-1)`).
pub fn branch_resultant<F: Scalar>(
    f: &Poly<F>,
    pi: &Projection<F>,
    ctx: &F::Ctx,
) -> Result<Poly<F>> {
    let n2 = f.nvars();
    if !matches!(f.homogeneous_degree(), Some(d) if d >= 1) {
        return Err(Error::Invalid(
            "branch resultant needs a homogeneous polynomial of positive degree".into(),
        ));
    }
    if pi.source_dim() + 1 != n2 || pi.target_dim() + 2 != n2 {
        return Err(Error::Invalid(
            "projection must drop exactly one dimension (point center)".into(),
        ));
    }
    let kern = kernel_basis(&pi.rows);
    if kern.len() != 1 {
        return Err(Error::Degenerate("projection center is not a single point".into()));
    }
    let one = F::from_i64(1, ctx);
    let v: Vec<F> = kern[0].iter().map(|e| e.clone() * one.clone()).collect();
    if f.eval(&v).is_zero() {
        return Err(Error::Degenerate(
            "projection center lies on the hypersurface".into(),
        ));
    }

    // x = M u with the center as the last column of M and standard basis
    // vectors (skipping the center's pivot coordinate) as the others.
    let pivot = v.iter().position(|e| !e.is_zero()).unwrap();
    let others: Vec<usize> = (0..n2).filter(|&i| i != pivot).collect();
    let mut mat = vec![vec![F::zero(); n2]; n2];
    for (j, &i) in others.iter().enumerate() {
        mat[i][j] = one.clone();
    }
    for i in 0..n2 {
        mat[i][n2 - 1] = v[i].clone();
    }
    let fu = crate::ideal::substitute_linear(&[f.clone()], &mat)
        .pop()
        .expect("invertible substitution keeps the polynomial nonzero");

    let r = resultant(&fu, &fu.derivative(n2 - 1), n2 - 1);
    if r.is_zero() {
        return Err(Error::Degenerate(
            "branch resultant vanished identically (multiple components through the center's fibers)".into(),
        ));
    }
    // The last variable no longer occurs; shrink the context.
    let r_small = Poly::from_terms(
        n2 - 1,
        Order::DegRevLex,
        r.terms()
            .iter()
            .map(|(mo, c)| {
                (
                    crate::monomial::Monomial(mo.0[..n2 - 1].iter().copied().collect()),
                    c.clone(),
                )
            })
            .collect(),
    );

    // Express the result in the target's coordinates: y = (L·M) u with the
    // zero last column dropped, so u = B^{-1} y.
    let b_full = mat_mul(&pi.rows, &mat);
    let b: Vec<Vec<F>> = b_full.iter().map(|row| row[..n2 - 1].to_vec()).collect();
    let binv = mat_inverse(&b).ok_or_else(|| {
        Error::Degenerate("projection matrix restricted to the complement of the center is singular".into())
    })?;
    Ok(crate::ideal::substitute_linear(&[r_small], &binv)
        .pop()
        .expect("invertible substitution keeps the polynomial nonzero"))
}

/// Set-theoretic branch locus of the projection of a hypersurface from a
/// point: the squarefree part of [`branch_resultant`].
pub fn hypersurface_branch_discriminant<F: Scalar>(
    f: &Poly<F>,
    pi: &Projection<F>,
    ctx: &F::Ctx,
    budget: &mut Budget,
) -> Result<Poly<F>> {
    let raw = branch_resultant(f, pi, ctx)?;
    squarefree_part(&raw, ctx, budget)
}

/// Squarefree part of a homogeneous polynomial, monic. First certifies
/// squarefreeness on a seeded line restriction (a univariate gcd with the
/// derivative); when that fails, extracts exactly: with `d` a seeded
/// directional derivative of `f`, the saturation `(d) : f^∞` is principal
/// with generator the factor of `d` coprime to `f`, the cofactor is the
/// product of all repeated factors of `f` with exponents lowered by one,
/// and dividing `f` by it leaves each factor exactly once.
pub fn squarefree_part<F: Scalar>(
    f: &Poly<F>,
    ctx: &F::Ctx,
    budget: &mut Budget,
) -> Result<Poly<F>> {
    if f.is_zero() || f.is_constant() {
        return Ok(f.clone());
    }
    if f.degree() == Some(1) {
        return Ok(f.monic());
    }
    let n = f.nvars();
    let deg = f.degree().unwrap();

    for attempt in 0..3u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(
            SQF_SEED.wrapping_add(attempt.wrapping_mul(RESEED)),
        );
        let images: Vec<Poly<F>> = (0..n)
            .map(|_| {
                Poly::from_terms(
                    1,
                    Order::DegRevLex,
                    vec![
                        (
                            crate::monomial::Monomial::var(0, 1),
                            F::from_i64(rng.gen_range(-50..=50), ctx),
                        ),
                        (
                            crate::monomial::Monomial::one(1),
                            F::from_i64(rng.gen_range(-50..=50), ctx),
                        ),
                    ],
                )
            })
            .collect();
        let fl = f.compose(&images);
        if fl.degree() != Some(deg) {
            continue; // the line met the locus at infinity of its chart
        }
        let g = uni_gcd(&fl, &fl.derivative(0), 0);
        if g.degree() == Some(0) {
            return Ok(f.monic());
        }
        break; // a genuine repeated factor shows on every full-degree line
    }

    for attempt in 0..3u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(
            SQF_SEED.wrapping_add(0xD1FF).wrapping_add(attempt.wrapping_mul(RESEED)),
        );
        let mut d = Poly::zero(n, f.order());
        for i in 0..n {
            let c = F::from_i64(rng.gen_range(1..=50), ctx);
            d = d.add(&f.derivative(i).scale(&c));
        }
        if d.is_zero() {
            continue;
        }
        let sat = saturate(&[d.clone()], n, f, budget)?;
        if sat.len() != 1 {
            continue;
        }
        let Some(w) = div_exact(&d, &sat[0]) else { continue };
        let Some(sf) = div_exact(f, &w) else { continue };
        return Ok(sf.monic());
    }
    Err(Error::Degenerate(
        "squarefree reduction failed after reseeding".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rat};
    use crate::parse::{parse_poly, VarSet};

    const P: u64 = 2_147_483_629;

    fn cat<F: Scalar>(name: &str, ctx: &F::Ctx) -> Variety<F> {
        crate::catalog::find(name).unwrap().realize::<F>(ctx).unwrap()
    }

    fn q(src: &str, nvars: usize) -> Poly<Rat> {
        parse_poly(src, &VarSet::xs(nvars), Order::DegRevLex, &()).unwrap()
    }

    #[test]
    fn conic_branch_locus_is_two_points() {
        let x = cat::<Rat>("conic", &());
        let pi = Projection::random(2, 1, 7, &()).unwrap();
        let mut b = Budget::default();
        let crit = polar_critical_ideal(&x, &pi, &mut b).unwrap();
        let cdd = dim_and_degree(&crit, 3, &mut b).unwrap();
        assert_eq!((cdd.dim, cdd.degree), (0, 2), "critical locus");
        let disc = smooth_discriminant(&x, &pi, &mut b).unwrap();
        assert!(disc.dominant);
        assert_eq!(disc.classification, Classification::UnionOfHyperplanes);
        let ddd = disc.discriminant.dim_deg(&mut b).unwrap();
        assert_eq!((ddd.dim, ddd.degree), (0, 2), "branch locus");
    }

    #[test]
    fn quadric_surface_branch_curve_is_a_smooth_conic() {
        let x = cat::<Rat>("quadric-surface", &());
        let pi = Projection::random(3, 2, 11, &()).unwrap();
        let mut b = Budget::default();
        let disc = smooth_discriminant(&x, &pi, &mut b).unwrap();
        assert!(disc.dominant);
        assert_eq!(disc.classification, Classification::IrreducibleHypersurface);
        let ddd = disc.discriminant.dim_deg(&mut b).unwrap();
        assert_eq!((ddd.dim, ddd.degree), (1, 2));
        assert!(disc.discriminant.is_smooth(&mut b).unwrap());
    }

    #[test]
    fn curve_projected_to_a_surface_reports_its_image() {
        let x = cat::<Rat>("twisted-cubic", &());
        let pi = Projection::random(3, 2, 5, &()).unwrap();
        let mut b = Budget::default();
        let disc = smooth_discriminant(&x, &pi, &mut b).unwrap();
        assert!(!disc.dominant);
        assert_eq!(disc.classification, Classification::NonDominantImage);
        let ddd = disc.discriminant.dim_deg(&mut b).unwrap();
        assert_eq!((ddd.dim, ddd.degree), (1, 3), "generic plane image of a space cubic");
    }

    #[test]
    fn dual_surface_of_the_space_cubic_is_unramified_over_a_line() {
        // The tangent developable of the twisted cubic has dual of
        // codimension 2, so its branch locus over P^1 is empty.
        let x = cat::<Fp>("twisted-cubic-tangent-quartic", &P);
        let pi = Projection::random(3, 1, 3, &P).unwrap();
        let mut b = Budget::default();
        let disc = smooth_discriminant(&x, &pi, &mut b).unwrap();
        assert_eq!(disc.classification, Classification::Empty);
    }

    #[test]
    fn dual_surface_of_the_space_cubic_branches_over_three_lines() {
        let x = cat::<Fp>("twisted-cubic-tangent-quartic", &P);
        let pi = Projection::random(3, 2, 3, &P).unwrap();
        let mut b = Budget::default();
        let disc = smooth_discriminant(&x, &pi, &mut b).unwrap();
        assert_eq!(disc.classification, Classification::UnionOfHyperplanes);
        let ddd = disc.discriminant.dim_deg(&mut b).unwrap();
        assert_eq!((ddd.dim, ddd.degree), (1, 3), "one line per point of the dual curve");
    }

    #[test]
    fn branch_resultant_degree_is_m_times_m_minus_one() {
        let mut b = Budget::default();
        for (name, n, want) in [("conic", 2usize, 2u32), ("plane-cubic", 2, 6), ("quartic-surface", 3, 12)] {
            let x = cat::<Rat>(name, &());
            let pi = Projection::random(n, n - 1, 17, &()).unwrap();
            let raw = branch_resultant(&x.gens[0], &pi, &()).unwrap();
            assert_eq!(raw.degree(), Some(want), "{name}");
            // smooth input: already squarefree, so the reduction is identity
            let sf = hypersurface_branch_discriminant(&x.gens[0], &pi, &(), &mut b).unwrap();
            assert_eq!(sf, raw.monic(), "{name}");
        }
    }

    #[test]
    fn center_on_the_hypersurface_is_rejected() {
        let x = cat::<Rat>("conic", &());
        // kernel (1, 0, 1) lies on x0^2 + x1^2 - x2^2
        let pi = Projection::from_rows(vec![
            vec![Scalar::from_i64(1, &()), Scalar::from_i64(0, &()), Scalar::from_i64(-1, &())],
            vec![Scalar::from_i64(0, &()), Scalar::from_i64(1, &()), Scalar::from_i64(0, &())],
        ])
        .unwrap();
        let err = branch_resultant(&x.gens[0], &pi, &()).unwrap_err();
        assert!(matches!(err, Error::Degenerate(msg) if msg.contains("center")));
    }

    #[test]
    fn resultant_and_elimination_branch_loci_agree() {
        let x = cat::<Rat>("conic", &());
        let pi = Projection::random(2, 1, 23, &()).unwrap();
        let mut b = Budget::default();
        let from_res = branch_resultant(&x.gens[0], &pi, &()).unwrap();
        let from_elim = smooth_discriminant(&x, &pi, &mut b).unwrap();
        assert!(same_zero_set(&[from_res], &from_elim.discriminant.gens, 2, &mut b).unwrap());
    }

    #[test]
    fn duality_check_for_the_conic() {
        let mut b = Budget::default();
        let x = cat::<Rat>("conic", &());
        let rep = verify_duality(&x, 1, 2024, &mut b).unwrap();
        assert!(rep.equal, "left {:?} right {:?}", rep.left, rep.right);
        assert_eq!(rep.seeds.len(), 1);
    }

    #[test]
    fn duality_check_for_the_plane_cubic() {
        let mut b = Budget::default();
        let x = cat::<Fp>("plane-cubic", &P);
        let rep = verify_duality(&x, 1, 9, &mut b).unwrap();
        assert!(rep.equal);
    }

    #[test]
    fn purity_classifications_match_their_predictions() {
        let mut b = Budget::default();
        let conic = cat::<Rat>("conic", &());
        assert_eq!(
            purity_classify(&conic, 1, 31, &mut b).unwrap(),
            Classification::UnionOfHyperplanes
        );
        let quadric = cat::<Rat>("quadric-surface", &());
        assert_eq!(
            purity_classify(&quadric, 1, 31, &mut b).unwrap(),
            Classification::UnionOfHyperplanes
        );
        assert_eq!(
            purity_classify(&quadric, 2, 31, &mut b).unwrap(),
            Classification::IrreducibleHypersurface
        );
        let dual_surface = cat::<Fp>("twisted-cubic-tangent-quartic", &P);
        assert_eq!(
            purity_classify(&dual_surface, 1, 31, &mut b).unwrap(),
            Classification::Empty
        );
    }

    #[test]
    fn chain_to_a_line_matches_the_single_shot_branch_locus() {
        let mut b = Budget::default();
        let x = cat::<Fp>("twisted-cubic", &P);
        let chain = projection_chain(&x, 1, 77, &mut b).unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(chain[0].classification, Classification::NonDominantImage);
        assert_eq!(chain[1].classification, Classification::UnionOfHyperplanes);
        let composite = chain_composite(&chain).unwrap();
        let direct = smooth_discriminant(&x, &composite, &mut b).unwrap();
        assert!(same_zero_set(
            &chain[1].discriminant.gens,
            &direct.discriminant.gens,
            2,
            &mut b
        )
        .unwrap());
        // four simple branch points for a degree-3 cover of the line
        let ddd = direct.discriminant.dim_deg(&mut b).unwrap();
        assert_eq!((ddd.dim, ddd.degree), (0, 4));
    }

    #[test]
    fn squarefree_extraction_for_a_planted_square() {
        let mut b = Budget::default();
        let f = q("x0^2 * (x1*x2 - x0^2)", 3);
        let sf = squarefree_part(&f, &(), &mut b).unwrap();
        assert_eq!(sf, q("x0 * (x1*x2 - x0^2)", 3).monic());
        // squarefree input passes through untouched (up to normalization)
        let g = q("x0 * x1", 3);
        assert_eq!(squarefree_part(&g, &(), &mut b).unwrap(), g.monic());
    }
}
