//! Conormal varieties, projective duals, and biduality verification.
//!
//! The conormal variety of `X ⊂ P^N` lives in `P^N × P^N` (point block
//! first, hyperplane block second). It is cut out by the equations of `X`,
//! the incidence pairing, and the rank condition forcing the hyperplane to
//! contain the embedded tangent space; a saturation by a witness minor of
//! the Jacobian removes the junk supported on the singular locus and on the
//! vertex of the affine cone. The dual variety is its image under the
//! second projection, obtained by block elimination.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groebner::{buchberger, normal_form, Budget};
use crate::hilbert::dim_and_degree;
use crate::ideal::{eliminate, same_zero_set};
use crate::matrix::minors;
use crate::monomial::{Monomial, Order};
use crate::poly::Poly;
use crate::variety::Variety;

/// Conormal variety generators in `2(N+1)` variables; indices `0..block`
/// are the point coordinates, `block..2*block` the hyperplane coordinates.
#[derive(Clone, Debug)]
pub struct Conormal<F: Scalar> {
    pub gens: Vec<Poly<F>>,
    pub block: usize,
}

/// Shared assembly: the raw conormal system in `2(N+1)` variables plus the
/// witness minor (mapped into the doubled context) to saturate by. The
/// witness is `None` when it is a nonzero constant and saturation is a
/// no-op.
fn conormal_system<F: Scalar>(
    x: &Variety<F>,
    budget: &mut Budget,
) -> Result<(Vec<Poly<F>>, Option<Poly<F>>)> {
    let n = x.nvars();
    let total = 2 * n;
    let dd = x.dim_deg(budget)?;
    if dd.dim < 0 || dd.dim == x.ambient as i64 {
        return Err(Error::Degenerate(format!(
            "{}: dual variety needs a proper nonempty subvariety",
            x.name
        )));
    }
    let c = (x.ambient as i64 - dd.dim) as usize;

    let embed: Vec<usize> = (0..n).collect();
    let xgens: Vec<Poly<F>> = x.gens.iter().map(|g| g.map_vars(total, &embed)).collect();
    let gbx = buchberger(&xgens, Order::DegRevLex, budget)?;

    let jac = x.jacobian();
    let mut aug: Vec<Vec<Poly<F>>> = jac
        .iter()
        .map(|row| row.iter().map(|e| e.map_vars(total, &embed)).collect())
        .collect();
    aug.push(
        (0..n)
            .map(|i| Poly::var_in(n + i, total, Order::DegRevLex, &x.ctx))
            .collect(),
    );

    let mut incidence = Poly::zero(total, Order::DegRevLex);
    for i in 0..n {
        let xi = Poly::var_in(i, total, Order::DegRevLex, &x.ctx);
        let ai = Poly::var(n + i, total, Order::DegRevLex);
        incidence = incidence.add(&xi.mul(&ai));
    }

    let mut raw = xgens;
    raw.push(incidence);
    for m in minors(&aug, c + 1) {
        // reduce against X's equations: minors that vanish on X identically
        // are redundant, the rest shrink
        let nf = normal_form(&m, &gbx);
        if !nf.is_zero() {
            raw.push(nf);
        }
    }

    // Saturation witness: a seeded combination of the full-rank Jacobian
    // minors that survive reduction mod X. A combination (rather than any
    // single minor) stays nonzero on every component of a reducible input,
    // so the saturation removes only the genuinely rank-deficient locus.
    let gbx_small = buchberger(&x.gens, Order::DegRevLex, budget)?;
    let survivors: Vec<Poly<F>> = minors(&x.jacobian(), c)
        .into_iter()
        .map(|m| normal_form(&m, &gbx_small))
        .filter(|m| !m.is_zero())
        .collect();
    if survivors.is_empty() {
        return Err(Error::Degenerate(format!(
            "{}: jacobian rank is deficient along the whole variety",
            x.name
        )));
    }
    let witness = if let Some(konst) = survivors.iter().find(|m| m.is_constant()) {
        konst.clone()
    } else if survivors.len() == 1 {
        survivors.into_iter().next().unwrap()
    } else {
        let mut pick = None;
        for attempt in 0..3u64 {
            let w = crate::variety::random_combination(
                &survivors,
                WITNESS_SEED.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15)),
                &x.ctx,
            );
            let w = normal_form(&w, &gbx_small);
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
    if witness.is_constant() {
        Ok((raw, None))
    } else {
        Ok((raw, Some(witness.map_vars(total, &embed))))
    }
}

/// Fixed seed for the saturation-witness combination, so duals are
/// deterministic across runs.
pub(crate) const WITNESS_SEED: u64 = 0x57D1_4E55;

/// The conormal variety of `x`, saturated and Gröbner-reduced.
pub fn conormal<F: Scalar>(x: &Variety<F>, budget: &mut Budget) -> Result<Conormal<F>> {
    let n = x.nvars();
    let (raw, witness) = conormal_system(x, budget)?;
    let gens = match witness {
        None => buchberger(&raw, Order::DegRevLex, budget)?,
        Some(w) => crate::ideal::saturate(&raw, 2 * n, &w, budget)?,
    };
    Ok(Conormal { gens, block: n })
}

impl<F: Scalar> Conormal<F> {
    /// Affine dimension of the cone over the conormal variety in
    /// `A^{2(N+1)}`; always `N + 1` when the construction is healthy
    /// (the biprojective conormal has dimension `N - 1`).
    pub fn affine_dim(&self, budget: &mut Budget) -> Result<usize> {
        Ok(dim_and_degree(&self.gens, 2 * self.block, budget)?.affine_dim)
    }

    /// The same subvariety of `P^N × P^N` with the two blocks swapped.
    pub fn swapped(&self) -> Conormal<F> {
        let n = self.block;
        let perm: Vec<usize> = (0..2 * n).map(|i| (i + n) % (2 * n)).collect();
        Conormal {
            gens: self.gens.iter().map(|g| g.map_vars(2 * n, &perm)).collect(),
            block: n,
        }
    }
}

/// The projective dual of `x`: its generators live in the hyperplane
/// coordinates (positionally the same `N + 1` variables).
pub fn dual_variety<F: Scalar>(x: &Variety<F>, budget: &mut Budget) -> Result<Variety<F>> {
    let n = x.nvars();
    let (raw, witness) = conormal_system(x, budget)?;
    let agens = match witness {
        None => eliminate(&raw, 2 * n, &(0..n).collect::<Vec<_>>(), budget)?,
        Some(w) => {
            // saturate and project in a single block elimination: the
            // inverse variable and the whole point block drop together
            let shift: Vec<usize> = (1..=2 * n).collect();
            let mut ext: Vec<Poly<F>> =
                raw.iter().map(|g| g.map_vars(2 * n + 1, &shift)).collect();
            let wv = Poly::var(0, 2 * n + 1, Order::DegRevLex);
            let one = Poly::constant(
                F::from_i64(1, &x.ctx),
                2 * n + 1,
                Order::DegRevLex,
            );
            ext.push(one.sub(&wv.mul(&w.map_vars(2 * n + 1, &shift))));
            let drop: Vec<usize> = (0..=n).collect();
            eliminate(&ext, 2 * n + 1, &drop, budget)?
        }
    };
    Variety::new(
        format!("{}-dual", x.name),
        x.ambient,
        agens,
        x.ctx.clone(),
    )
}

/// Dual of the dual.
pub fn bidual<F: Scalar>(x: &Variety<F>, budget: &mut Budget) -> Result<Variety<F>> {
    let first = dual_variety(x, budget)?;
    dual_variety(&first, budget)
}

/// Does dualizing twice return the original zero set?
pub fn check_biduality<F: Scalar>(x: &Variety<F>, budget: &mut Budget) -> Result<bool> {
    let back = bidual(x, budget)?;
    same_zero_set(&x.gens, &back.gens, x.nvars(), budget)
}

/// The sharper symmetry: the conormal of the dual is the conormal of `x`
/// with the two blocks swapped.
pub fn check_conormal_symmetry<F: Scalar>(x: &Variety<F>, budget: &mut Budget) -> Result<bool> {
    let cx = conormal(x, budget)?;
    let xd = dual_variety(x, budget)?;
    let cd = conormal(&xd, budget)?.swapped();
    same_zero_set(&cx.gens, &cd.gens, 2 * cx.block, budget)
}

/// Incidence pairing helper used by callers composing their own systems.
pub fn incidence_form<F: Scalar>(n: usize) -> Poly<F> {
    let total = 2 * n;
    let mut s = Poly::zero(total, Order::DegRevLex);
    for i in 0..n {
        let m = {
            let mut e = Monomial::one(total);
            e.0[i] = 1;
            e.0[n + i] = 1;
            e
        };
        s = s.add(&Poly::from_terms(total, Order::DegRevLex, vec![(m, F::one())]));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rat};
    use crate::parse::{parse_poly, VarSet};

    fn q_variety(name: &str, ambient: usize, eqs: &[&str]) -> Variety<Rat> {
        Variety::from_strings(name, ambient, eqs, &()).unwrap()
    }

    fn q_polys(srcs: &[&str], n: usize) -> Vec<Poly<Rat>> {
        let v = VarSet::xs(n);
        srcs.iter()
            .map(|s| parse_poly(s, &v, Order::DegRevLex, &()).unwrap())
            .collect()
    }

    #[test]
    fn the_standard_conic_is_self_dual() {
        let x = q_variety("conic", 2, &["x0^2 + x1^2 - x2^2"]);
        let d = dual_variety(&x, &mut Budget::default()).unwrap();
        assert_eq!(d.gens, q_polys(&["x0^2 + x1^2 - x2^2"], 3));
    }

    #[test]
    fn dual_of_a_diagonal_quadric_is_the_adjugate_quadric() {
        let x = q_variety("quadric", 3, &["x0^2 + 2*x1^2 + 3*x2^2 - x3^2"]);
        let d = dual_variety(&x, &mut Budget::default()).unwrap();
        assert_eq!(
            d.gens,
            q_polys(&["x0^2 + 1/2*x1^2 + 1/3*x2^2 - x3^2"], 4)
        );
    }

    #[test]
    fn dual_of_a_point_is_a_hyperplane() {
        let x = q_variety("point", 2, &["x0", "x1"]);
        let d = dual_variety(&x, &mut Budget::default()).unwrap();
        assert_eq!(d.gens, q_polys(&["x2"], 3));
    }

    #[test]
    fn dual_of_the_twisted_cubic_is_the_binary_discriminant_quartic() {
        let x = q_variety(
            "twisted-cubic",
            3,
            &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"],
        );
        let d = dual_variety(&x, &mut Budget::default()).unwrap();
        let want = crate::catalog::find("twisted-cubic-tangent-quartic")
            .unwrap()
            .realize::<Rat>(&())
            .unwrap();
        assert_eq!(d.gens, want.gens);
    }

    #[test]
    fn nodal_cubic_dual_drops_to_degree_four() {
        let x = q_variety("nodal-cubic", 2, &["x1^2*x2 - x0^3 - x0^2*x2"]);
        let d = dual_variety(&x, &mut Budget::default()).unwrap();
        let dd = d.dim_deg(&mut Budget::default()).unwrap();
        assert_eq!((dd.dim, dd.degree), (1, 4));
    }

    #[test]
    fn cuspidal_cubic_dual_drops_to_degree_three() {
        let x = q_variety("cuspidal-cubic", 2, &["x1^2*x2 - x0^3"]);
        let d = dual_variety(&x, &mut Budget::default()).unwrap();
        let dd = d.dim_deg(&mut Budget::default()).unwrap();
        assert_eq!((dd.dim, dd.degree), (1, 3));
    }

    #[test]
    fn conormal_cones_have_the_expected_dimension() {
        for (name, ambient, eqs) in [
            ("conic", 2, vec!["x0^2 + x1^2 - x2^2"]),
            (
                "twisted-cubic",
                3,
                vec!["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"],
            ),
        ] {
            let x = q_variety(name, ambient, &eqs);
            let cn = conormal(&x, &mut Budget::default()).unwrap();
            assert_eq!(
                cn.affine_dim(&mut Budget::default()).unwrap(),
                ambient + 1,
                "{name}"
            );
        }
    }

    #[test]
    fn biduality_on_the_conic_and_a_singular_cubic() {
        let conic = q_variety("conic", 2, &["x0^2 + x1^2 - x2^2"]);
        assert!(check_biduality(&conic, &mut Budget::default()).unwrap());
        // over a prime field for speed: the cuspidal cubic round-trips too
        let p: u64 = 2_147_483_629;
        let cusp =
            Variety::<Fp>::from_strings("cuspidal-cubic", 2, &["x1^2*x2 - x0^3"], &p).unwrap();
        assert!(check_biduality(&cusp, &mut Budget::default()).unwrap());
    }

    #[test]
    fn conormal_symmetry_on_the_conic() {
        let conic = q_variety("conic", 2, &["x0^2 + x1^2 - x2^2"]);
        assert!(check_conormal_symmetry(&conic, &mut Budget::default()).unwrap());
    }

    #[test]
    fn incidence_form_shape() {
        let s = incidence_form::<Rat>(3);
        assert_eq!(s.terms().len(), 3);
        assert_eq!(s.homogeneous_degree(), Some(2));
    }
}
