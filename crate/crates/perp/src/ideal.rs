//! Ideal-level geometry primitives on generator lists: elimination,
//! saturation, radical membership, set-theoretic equality, images under
//! linear maps, and linear substitution.
//!
//! Polynomials here are positional (no names); callers keep track of what
//! each variable index means.

use crate::error::Result;
use crate::field::Scalar;
use crate::groebner::{buchberger, is_unit_basis, normal_form, Budget};
use crate::monomial::Order;
use crate::poly::Poly;

/// Eliminate the variables listed in `drop` (indices into the current
/// context). The result lives in the remaining variables, in their original
/// relative order, under degrevlex.
pub fn eliminate<F: Scalar>(
    gens: &[Poly<F>],
    nvars: usize,
    drop: &[usize],
    budget: &mut Budget,
) -> Result<Vec<Poly<F>>> {
    let mut drop: Vec<usize> = drop.to_vec();
    drop.sort_unstable();
    drop.dedup();
    let k = drop.len();
    if k == 0 {
        return buchberger(gens, Order::DegRevLex, budget);
    }
    let kept: Vec<usize> = (0..nvars).filter(|i| !drop.contains(i)).collect();
    // permutation old index -> new index with dropped block in front
    let mut perm = vec![0usize; nvars];
    for (new, &old) in drop.iter().enumerate() {
        perm[old] = new;
    }
    for (offset, &old) in kept.iter().enumerate() {
        perm[old] = k + offset;
    }
    let moved: Vec<Poly<F>> = gens.iter().map(|g| g.map_vars(nvars, &perm)).collect();
    let basis = buchberger(&moved, Order::Elim(k), budget)?;
    // keep generators not involving the dropped block, shrink the context
    let back: Vec<usize> = (0..kept.len()).collect();
    let out: Vec<Poly<F>> = basis
        .into_iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.0[..k].iter().all(|&e| e == 0)))
        .map(|g| {
            let shrink: Vec<(crate::monomial::Monomial, F)> = g
                .terms()
                .iter()
                .map(|(m, c)| {
                    (
                        crate::monomial::Monomial(m.0[k..].iter().copied().collect()),
                        c.clone(),
                    )
                })
                .collect();
            Poly::from_terms(back.len(), Order::DegRevLex, shrink)
        })
        .collect();
    Ok(out)
}

/// Saturation `I : f^∞` via one fresh inverse variable and elimination.
pub fn saturate<F: Scalar>(
    gens: &[Poly<F>],
    nvars: usize,
    f: &Poly<F>,
    budget: &mut Budget,
) -> Result<Vec<Poly<F>>> {
    if f.is_zero() {
        return buchberger(gens, Order::DegRevLex, budget);
    }
    let embed: Vec<usize> = (1..=nvars).collect();
    let mut ext: Vec<Poly<F>> = gens
        .iter()
        .map(|g| g.map_vars(nvars + 1, &embed))
        .collect();
    let unit = f.leading().unwrap().1.unit_like();
    let w = Poly::var(0, nvars + 1, Order::DegRevLex);
    let one = Poly::constant(unit, nvars + 1, Order::DegRevLex);
    ext.push(one.sub(&w.mul(&f.map_vars(nvars + 1, &embed))));
    eliminate(&ext, nvars + 1, &[0], budget)
}

/// Does some power of `f` lie in the ideal? (Radical membership via the
/// inverse-variable trick: yes iff `I + <1 - w*f>` is the unit ideal.)
pub fn radical_contains<F: Scalar>(
    gens: &[Poly<F>],
    nvars: usize,
    f: &Poly<F>,
    budget: &mut Budget,
) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let embed: Vec<usize> = (1..=nvars).collect();
    let mut ext: Vec<Poly<F>> = gens
        .iter()
        .map(|g| g.map_vars(nvars + 1, &embed))
        .collect();
    let unit = f.leading().unwrap().1.unit_like();
    let w = Poly::var(0, nvars + 1, Order::DegRevLex);
    let one = Poly::constant(unit, nvars + 1, Order::DegRevLex);
    ext.push(one.sub(&w.mul(&f.map_vars(nvars + 1, &embed))));
    let basis = buchberger(&ext, Order::DegRevLex, budget)?;
    Ok(is_unit_basis(&basis))
}

/// Set-theoretic equality of zero sets: every generator of each ideal has
/// a power inside the other.
pub fn same_zero_set<F: Scalar>(
    a: &[Poly<F>],
    b: &[Poly<F>],
    nvars: usize,
    budget: &mut Budget,
) -> Result<bool> {
    for g in b {
        if !radical_contains(a, nvars, g, budget)? {
            return Ok(false);
        }
    }
    for g in a {
        if !radical_contains(b, nvars, g, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ideal membership of `f` (not just its radical) against a Gröbner basis.
pub fn contains<F: Scalar>(basis: &[Poly<F>], f: &Poly<F>) -> bool {
    normal_form(f, basis).is_zero()
}

/// Closure of the image of `V(gens) ⊆ P^{n-1}` under the linear map given
/// by `forms` (each a linear polynomial in the same `nvars` context). The
/// result lives in `forms.len()` fresh target variables.
pub fn linear_image<F: Scalar>(
    gens: &[Poly<F>],
    nvars: usize,
    forms: &[Poly<F>],
    budget: &mut Budget,
) -> Result<Vec<Poly<F>>> {
    let m = forms.len();
    let total = nvars + m;
    let embed: Vec<usize> = (0..nvars).collect();
    let mut sys: Vec<Poly<F>> = gens.iter().map(|g| g.map_vars(total, &embed)).collect();
    for (j, l) in forms.iter().enumerate() {
        let y = match l.leading() {
            Some((_, c)) => Poly::constant(c.unit_like(), total, Order::DegRevLex)
                .mul(&Poly::var(nvars + j, total, Order::DegRevLex)),
            None => Poly::var(nvars + j, total, Order::DegRevLex),
        };
        sys.push(y.sub(&l.map_vars(total, &embed)));
    }
    eliminate(&sys, total, &embed, budget)
}

/// Substitute `x_i = sum_j mat[i][j] * u_j`, mapping into a fresh context
/// with `mat[0].len()` variables. Exact, no Gröbner step.
pub fn substitute_linear<F: Scalar>(gens: &[Poly<F>], mat: &[Vec<F>]) -> Vec<Poly<F>> {
    let new_n = mat[0].len();
    let images: Vec<Poly<F>> = mat
        .iter()
        .map(|row| {
            let terms = row
                .iter()
                .enumerate()
                .map(|(j, c)| (crate::monomial::Monomial::var(j, new_n), c.clone()))
                .collect();
            Poly::from_terms(new_n, Order::DegRevLex, terms)
        })
        .collect();
    gens.iter()
        .map(|g| {
            assert_eq!(g.nvars(), mat.len());
            g.compose(&images)
        })
        .filter(|g| !g.is_zero())
        .collect()
}
