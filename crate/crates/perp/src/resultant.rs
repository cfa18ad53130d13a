//! Univariate resultants (Sylvester determinant) with the remaining
//! variables carried along as polynomial entries, plus the discriminant
//! convenience and exact division / squarefree helpers built on them.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::det;
use crate::poly::Poly;

/// Coefficients of `f` seen as a univariate polynomial in variable `var`;
/// entry `i` is the coefficient of `var^i`, still living in the full
/// variable context (with `var`-exponent zero).
pub fn coeffs_in<F: Scalar>(f: &Poly<F>, var: usize) -> Vec<Poly<F>> {
    let d = f
        .terms()
        .iter()
        .map(|(m, _)| m.0[var] as usize)
        .max()
        .unwrap_or(0);
    let mut out = vec![Poly::zero(f.nvars(), f.order()); d + 1];
    for (m, c) in f.terms() {
        let e = m.0[var] as usize;
        let mut stripped = m.clone();
        stripped.0[var] = 0;
        out[e] = out[e].add(&Poly::from_terms(
            f.nvars(),
            f.order(),
            vec![(stripped, c.clone())],
        ));
    }
    out
}

/// Sylvester resultant of `f` and `g` with respect to `var`. The result does
/// not involve `var`. Degenerate degrees follow the classical conventions:
/// both constants give 1 (empty matrix), a zero input gives 0.
pub fn resultant<F: Scalar>(f: &Poly<F>, g: &Poly<F>, var: usize) -> Poly<F> {
    let (nv, ord) = (f.nvars(), f.order());
    if f.is_zero() || g.is_zero() {
        return Poly::zero(nv, ord);
    }
    let fc = coeffs_in(f, var);
    let gc = coeffs_in(g, var);
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    if m == 0 && n == 0 {
        let unit = fc[0].leading().unwrap().1.unit_like();
        return Poly::constant(unit, nv, ord);
    }
    if m == 0 {
        return fc[0].pow(n as u32);
    }
    if n == 0 {
        return gc[0].pow(m as u32);
    }
    let size = m + n;
    let zero = Poly::zero(nv, ord);
    let mut mat = vec![vec![zero; size]; size];
    for r in 0..n {
        for (i, c) in fc.iter().enumerate() {
            mat[r][r + m - i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in gc.iter().enumerate() {
            mat[n + r][r + n - i] = c.clone();
        }
    }
    det(&mat)
}

/// Discriminant of `f` in `var`: `(-1)^(d(d-1)/2) * Res(f, f') / lc(f)`.
pub fn discriminant<F: Scalar>(f: &Poly<F>, var: usize) -> Result<Poly<F>> {
    let fc = coeffs_in(f, var);
    let d = fc.len().saturating_sub(1);
    if d < 1 {
        return Err(Error::Invalid(
            "discriminant needs positive degree in the chosen variable".into(),
        ));
    }
    let res = resultant(f, &f.derivative(var), var);
    let lc = fc.last().unwrap();
    let q = div_exact(&res, lc).ok_or_else(|| {
        Error::Invalid("leading coefficient does not divide the resultant".into())
    })?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { q.neg() } else { q })
}

/// Exact multivariate division: `Some(q)` with `f = q*d` when `d` divides
/// `f`, `None` otherwise.
pub fn div_exact<F: Scalar>(f: &Poly<F>, d: &Poly<F>) -> Option<Poly<F>> {
    if d.is_zero() {
        return None;
    }
    let mut rem = f.clone();
    let mut q = Poly::zero(f.nvars(), f.order());
    let (dm, dc) = d.leading().unwrap();
    let (dm, dc) = (dm.clone(), dc.clone());
    let dinv = dc.inv()?;
    while let Some((rm, rc)) = rem.leading() {
        let m = dm.div(rm)?;
        let c = rc.clone() * dinv.clone();
        let t = Poly::from_terms(f.nvars(), f.order(), vec![(m, c)]);
        q = q.add(&t);
        rem = rem.sub(&t.mul(d));
    }
    Some(q)
}

/// Degree and scalar leading coefficient of a polynomial that involves only
/// variable `var`. Panics on zero input.
fn uni_lead<F: Scalar>(f: &Poly<F>, var: usize) -> (usize, F) {
    f.terms()
        .iter()
        .map(|(m, c)| (m.0[var] as usize, c.clone()))
        .max_by_key(|(d, _)| *d)
        .expect("uni_lead of zero polynomial")
}

/// Monic gcd of two polynomials each involving only variable `var`, by the
/// Euclidean algorithm. Returns zero only when both inputs are zero.
pub fn uni_gcd<F: Scalar>(a: &Poly<F>, b: &Poly<F>, var: usize) -> Poly<F> {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let (db, cb) = uni_lead(&b, var);
        let cbinv = cb.inv().expect("leading coefficient must be invertible");
        loop {
            if a.is_zero() {
                break;
            }
            let (da, ca) = uni_lead(&a, var);
            if da < db {
                break;
            }
            let mut exps = crate::monomial::Monomial::one(a.nvars());
            exps.0[var] = (da - db) as u16;
            let t = Poly::from_terms(
                a.nvars(),
                a.order(),
                vec![(exps, ca * cbinv.clone())],
            );
            a = a.sub(&t.mul(&b));
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.monic()
}
