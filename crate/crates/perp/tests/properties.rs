//! Randomized property suites: algebraic identities that must hold on
//! whole families of inputs, not just the bundled examples.

use proptest::prelude::*;

use perp::field::{Fp, Rat, Scalar};
use perp::groebner::{buchberger, normal_form, Budget};
use perp::hilbert::dim_and_degree;
use perp::ideal::saturate;
use perp::monomial::{Exps, Monomial, Order};
use perp::poly::Poly;
use perp::{braid_monodromy, plucker_dual, solve_nodes_cusps, Projection};

const P: u64 = 2_147_483_629;

fn budget() -> Budget {
    Budget::new(500_000)
}

/// All exponent vectors of length `nvars` with entries summing to `d`.
fn monomials_of_degree(nvars: usize, d: u16) -> Vec<Monomial> {
    fn rec(nvars: usize, left: u16, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            let mut e = prefix.clone();
            e.push(left);
            out.push(Monomial(Exps::from_vec(e)));
            return;
        }
        for take in 0..=left {
            prefix.push(take);
            rec(nvars, left - take, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, d, &mut Vec::new(), &mut out);
    out
}

/// A random homogeneous polynomial of the given degree over F_p, with
/// small integer coefficients (zeros allowed, so sparsity varies).
fn fp_homogeneous(nvars: usize, d: u16) -> impl Strategy<Value = Poly<Fp>> {
    let monos = monomials_of_degree(nvars, d);
    let len = monos.len();
    proptest::collection::vec(-5i64..=5, len).prop_map(move |coeffs| {
        let terms: Vec<(Monomial, Fp)> = monos
            .iter()
            .cloned()
            .zip(coeffs.iter())
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m, Fp::new(c, P)))
            .collect();
        Poly::from_terms(nvars, Order::DegRevLex, terms)
    })
}

/// A small homogeneous ideal: two generators of degree 1 or 2 in 3 vars.
fn small_ideal() -> impl Strategy<Value = Vec<Poly<Fp>>> {
    proptest::collection::vec((1u16..=2).prop_flat_map(|d| fp_homogeneous(3, d)), 2)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 128,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    /// Buchberger's criterion, checked against the basis the library
    /// itself computed: every S-polynomial of basis pairs reduces to zero.
    #[test]
    fn s_polynomials_of_a_computed_basis_reduce_to_zero(gens in small_ideal()) {
        let gb = buchberger(&gens, Order::DegRevLex, &mut budget()).unwrap();
        for i in 0..gb.len() {
            for j in (i + 1)..gb.len() {
                let (mi, ci) = gb[i].leading().unwrap();
                let (mj, cj) = gb[j].leading().unwrap();
                let lcm = mi.lcm(mj);
                let s = gb[i]
                    .mul_term(&mi.div(&lcm).unwrap(), cj)
                    .sub(&gb[j].mul_term(&mj.div(&lcm).unwrap(), ci));
                prop_assert!(
                    normal_form(&s, &gb).is_zero(),
                    "S({i},{j}) does not reduce to zero"
                );
            }
        }
    }

    /// Reducing twice is the same as reducing once.
    #[test]
    fn normal_form_is_idempotent(
        gens in small_ideal(),
        p in (1u16..=3).prop_flat_map(|d| fp_homogeneous(3, d)),
    ) {
        let gb = buchberger(&gens, Order::DegRevLex, &mut budget()).unwrap();
        let once = normal_form(&p, &gb);
        let twice = normal_form(&once, &gb);
        prop_assert_eq!(&twice, &once);
    }

    /// Saturating an already saturated ideal changes nothing.
    #[test]
    fn saturation_is_idempotent(
        gens in small_ideal(),
        f in (1u16..=2).prop_flat_map(|d| fp_homogeneous(3, d)),
    ) {
        prop_assume!(!f.is_zero());
        let s1 = saturate(&gens, 3, &f, &mut budget()).unwrap();
        let s2 = saturate(&s1, 3, &f, &mut budget()).unwrap();
        let g1 = buchberger(&s1, Order::DegRevLex, &mut budget()).unwrap();
        let g2 = buchberger(&s2, Order::DegRevLex, &mut budget()).unwrap();
        for a in &g2 {
            prop_assert!(normal_form(a, &g1).is_zero(), "saturation grew: {a}");
        }
        for b in &g1 {
            prop_assert!(normal_form(b, &g2).is_zero(), "saturation shrank: {b}");
        }
    }

    /// The Hilbert-series degree of a principal ideal is the generator's
    /// total degree (counted with multiplicity, reducible or not), and a
    /// hypersurface in P^{n-1} has projective dimension n - 2.
    #[test]
    fn principal_ideal_degree_is_the_generator_degree(
        (nvars, f) in (3usize..=4).prop_flat_map(|n| {
            (1u16..=4).prop_flat_map(move |d| fp_homogeneous(n, d)).prop_map(move |f| (n, f))
        }),
    ) {
        prop_assume!(!f.is_zero() && !f.is_constant());
        let dd = dim_and_degree(std::slice::from_ref(&f), nvars, &mut budget()).unwrap();
        prop_assert_eq!(u64::from(f.homogeneous_degree().unwrap()), dd.degree);
        prop_assert_eq!(dd.dim, nvars as i64 - 2);
    }

    /// Dualizing the invariants twice returns the original degree and
    /// genus, and the node/cusp solver regenerates the singularity counts
    /// from the numbers the formulas produce.
    #[test]
    fn plucker_invariants_involute(d in 4u64..=9, delta in 0u64..=3, kappa in 0u64..=2) {
        let first = plucker_dual(d, delta, kappa);
        prop_assume!(first.is_ok());
        let (dd, g) = first.unwrap();

        // genus and class of the dual curve, from the same closed forms
        let a_dual = dd * (dd - 1) - d;
        let g_dual = (dd - 1) * (dd - 2) / 2 - g;
        prop_assume!(a_dual >= 2 * g_dual && 3 * g_dual >= a_dual);
        let kappa_dual = a_dual - 2 * g_dual;
        let delta_dual = 3 * g_dual - a_dual;

        let back = plucker_dual(dd, delta_dual, kappa_dual);
        prop_assume!(back.is_ok());
        prop_assert_eq!(back.unwrap(), (d, g));

        // node/cusp counts regenerate from (degree, dual degree, tjurina)
        let d_dual = d * (d - 1) - 2 * delta - 3 * kappa;
        let tjurina = delta + 2 * kappa;
        prop_assert_eq!(solve_nodes_cusps(d, d_dual, tjurina).unwrap(), (delta, kappa));
    }

    /// The same seed always produces the same monodromy data — branch
    /// points, base, fibers, words, permutations — or the same error.
    #[test]
    fn monodromy_is_deterministic(seed in proptest::num::u64::ANY) {
        let entry = perp::catalog::find("conic").unwrap();
        let x: perp::Variety<Rat> = entry.realize(&()).unwrap();
        let pi = Projection::<Rat>::random(2, 1, seed, &()).unwrap();
        let a = braid_monodromy(&x.gens[0], &pi, seed, 1e-10f64);
        let b = braid_monodromy(&x.gens[0], &pi, seed, 1e-10f64);
        match (a, b) {
            (Ok(da), Ok(db)) => prop_assert_eq!(da, db),
            (Err(ea), Err(eb)) => prop_assert_eq!(ea.to_string(), eb.to_string()),
            (a, b) => prop_assert!(false, "outcomes diverged: {:?} vs {:?}", a.is_ok(), b.is_ok()),
        }
    }
}
