//! Dimension and degree of homogeneous ideals from the Hilbert series of
//! the leading-term ideal (Macaulay's recursion on monomial ideals).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groebner::{buchberger, is_unit_basis, Budget};
use crate::monomial::{Monomial, Order};
use crate::poly::Poly;

/// Dimension/degree data of a homogeneous ideal `I ⊆ k[x_0..x_{n-1}]`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DimDeg {
    /// Krull dimension of the affine cone.
    pub affine_dim: usize,
    /// Dimension of the projective zero set; `-1` when it is empty.
    pub dim: i64,
    /// Degree of the projective scheme (1 for the empty ideal's P^{n-1};
    /// the count-with-multiplicity when the set is finite).
    pub degree: u64,
}

/// Compute dimension and degree via a degrevlex basis of `I` and the
/// Hilbert series of its leading-term ideal. Errors on the unit ideal and
/// on non-homogeneous generators.
pub fn dim_and_degree<F: Scalar>(gens: &[Poly<F>], nvars: usize, budget: &mut Budget) -> Result<DimDeg> {
    for g in gens {
        if !g.is_zero() && g.homogeneous_degree().is_none() {
            return Err(Error::NotHomogeneous(
                "dimension/degree needs homogeneous generators".into(),
            ));
        }
    }
    let basis = buchberger(gens, Order::DegRevLex, budget)?;
    if is_unit_basis(&basis) {
        return Err(Error::UnitIdeal(
            "dimension/degree of the unit ideal is undefined".into(),
        ));
    }
    let lms: Vec<Monomial> = basis
        .iter()
        .filter_map(|g| g.leading_monomial().cloned())
        .collect();
    Ok(monomial_dim_deg(&lms, nvars))
}

/// Dimension/degree of `k[x]/M` for a monomial ideal `M`.
pub fn monomial_dim_deg(gens: &[Monomial], nvars: usize) -> DimDeg {
    let mut memo = HashMap::new();
    let hn = numerator(&minimalize(gens.to_vec()), &mut memo);
    // factor out (1 - t)^v
    let mut q = hn;
    let mut v = 0usize;
    loop {
        if q.iter().sum::<i64>() != 0 || q.iter().all(|&c| c == 0) {
            break;
        }
        // q / (1 - t) by prefix sums
        let mut acc = 0i64;
        let mut next = Vec::with_capacity(q.len());
        for &c in &q {
            acc += c;
            next.push(acc);
        }
        debug_assert_eq!(next.last().copied(), Some(0));
        next.pop();
        q = next;
        v += 1;
    }
    let degree = q.iter().sum::<i64>();
    debug_assert!(degree > 0, "Hilbert numerator must evaluate positive at 1");
    let affine_dim = nvars - v;
    DimDeg {
        affine_dim,
        dim: affine_dim as i64 - 1,
        degree: degree as u64,
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), m.0.to_vec()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the Hilbert series of `k[x]/M` over the full denominator
/// `(1-t)^n`, as coefficients in `t`. Macaulay recursion: split on a
/// variable occurring in a mixed generator, `HN(M) = HN(M + x) + t*HN(M:x)`.
fn numerator(gens: &[Monomial], memo: &mut HashMap<Vec<Exp>, Vec<i64>>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    // pure powers of distinct variables: product of (1 - t^d)
    if gens.iter().all(|m| m.0.iter().filter(|&&e| e > 0).count() == 1) {
        let mut acc = vec![1i64];
        for m in gens {
            let d = m.degree() as usize;
            acc = poly_mul(&acc, &one_minus_power(d));
        }
        return acc;
    }
    let key: Vec<Exp> = {
        let mut k: Vec<Exp> = gens.iter().map(|m| m.0.to_vec()).collect();
        k.sort();
        k
    };
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    // pivot: the variable hit by the most generators
    let nv = gens[0].nvars();
    let pivot = (0..nv)
        .max_by_key(|&i| gens.iter().filter(|m| m.0[i] > 0).count())
        .unwrap();
    // M + <x_pivot>
    let plus: Vec<Monomial> = gens
        .iter()
        .filter(|m| m.0[pivot] == 0)
        .cloned()
        .chain(std::iter::once(Monomial::var(pivot, nv)))
        .collect();
    // M : x_pivot
    let quot: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let mut e = m.0.clone();
            if e[pivot] > 0 {
                e[pivot] -= 1;
            }
            Monomial(e)
        })
        .collect();
    let a = numerator(&minimalize(plus), memo);
    let b = numerator(&minimalize(quot), memo);
    let mut shifted = vec![0i64];
    shifted.extend_from_slice(&b);
    let out = poly_add(&a, &shifted);
    memo.insert(key, out.clone());
    out
}

type Exp = Vec<u16>;

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] += c;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus_power(d: usize) -> Vec<i64> {
    let mut v = vec![0i64; d + 1];
    v[0] = 1;
    v[d] = -1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::parse::{parse_poly, VarSet};

    fn dd(srcs: &[&str], vars: &VarSet) -> DimDeg {
        let gens: Vec<Poly<Rat>> = srcs
            .iter()
            .map(|s| parse_poly(s, vars, Order::DegRevLex, &()).unwrap())
            .collect();
        dim_and_degree(&gens, vars.len(), &mut Budget::default()).unwrap()
    }

    #[test]
    fn hypersurface_dimension_and_degree() {
        // smooth conic in P^2: dimension 1, degree 2
        let v = VarSet::xs(3);
        let r = dd(&["x0^2 + x1^2 - x2^2"], &v);
        assert_eq!((r.dim, r.degree), (1, 2));
    }

    #[test]
    fn twisted_cubic_dimension_and_degree() {
        let v = VarSet::xs(4);
        let r = dd(&["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"], &v);
        assert_eq!((r.dim, r.degree), (1, 3));
    }

    #[test]
    fn point_in_p2() {
        let v = VarSet::xs(3);
        let r = dd(&["x0", "x1"], &v);
        assert_eq!((r.dim, r.degree), (0, 1));
    }

    #[test]
    fn empty_projective_set() {
        let v = VarSet::xs(3);
        let r = dd(&["x0", "x1", "x2"], &v);
        assert_eq!((r.dim, r.degree, r.affine_dim), (-1, 1, 0));
    }

    #[test]
    fn zero_ideal_is_whole_space() {
        let v = VarSet::xs(4);
        let r = dd(&[], &v);
        assert_eq!((r.dim, r.degree), (3, 1));
    }

    #[test]
    fn veronese_surface_degree_four() {
        // v2(P^2) in P^5 has dimension 2 and degree 4
        let v = VarSet::xs(6);
        let r = dd(
            &[
                "x0*x3 - x1^2",
                "x0*x4 - x1*x2",
                "x1*x4 - x2*x3",
                "x0*x5 - x2^2",
                "x1*x5 - x2*x4",
                "x3*x5 - x4^2",
            ],
            &v,
        );
        assert_eq!((r.dim, r.degree), (2, 4));
    }

    #[test]
    fn unit_ideal_is_an_error() {
        let v = VarSet::xs(2);
        let gens = vec![parse_poly::<Rat>("3", &v, Order::DegRevLex, &()).unwrap()];
        assert!(matches!(
            dim_and_degree(&gens, 2, &mut Budget::default()),
            Err(Error::UnitIdeal(_))
        ));
    }

    #[test]
    fn rejects_inhomogeneous_input() {
        let v = VarSet::xs(2);
        let gens = vec![parse_poly::<Rat>("x0^2 - x1", &v, Order::DegRevLex, &()).unwrap()];
        assert!(matches!(
            dim_and_degree(&gens, 2, &mut Budget::default()),
            Err(Error::NotHomogeneous(_))
        ));
    }
}
