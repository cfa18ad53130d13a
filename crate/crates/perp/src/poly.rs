//! Sparse multivariate polynomials over a [`Scalar`] field.
//!
//! Terms are stored sorted strictly descending under the polynomial's own
//! [`Order`]; the order is part of the computation context and binary
//! operations insist both sides agree on it (and on the variable count).

use std::collections::HashMap;

use crate::field::Scalar;
use crate::monomial::{Exps, Monomial, Order};

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F: Scalar> {
    nvars: usize,
    order: Order,
    /// Nonzero terms, strictly descending under `order`.
    terms: Vec<(Monomial, F)>,
}

impl<F: Scalar> Poly<F> {
    pub fn zero(nvars: usize, order: Order) -> Self {
        Poly {
            nvars,
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(c: F, nvars: usize, order: Order) -> Self {
        let mut p = Self::zero(nvars, order);
        if !c.is_zero() {
            p.terms.push((Monomial::one(nvars), c));
        }
        p
    }

    pub fn var(i: usize, nvars: usize, order: Order) -> Self {
        assert!(i < nvars);
        Poly {
            nvars,
            order,
            terms: vec![(Monomial::var(i, nvars), F::one())],
        }
    }

    /// Variable with a unit coefficient bound to the given context. Prefer
    /// this over [`Poly::var`] whenever the polynomial may be negated or
    /// inverted before meeting a context-bound operand.
    pub fn var_in(i: usize, nvars: usize, order: Order, ctx: &F::Ctx) -> Self {
        assert!(i < nvars);
        Poly {
            nvars,
            order,
            terms: vec![(Monomial::var(i, nvars), F::from_i64(1, ctx))],
        }
    }

    /// Build from arbitrary (monomial, coefficient) pairs: sorts, merges
    /// duplicates, drops zeros.
    pub fn from_terms(nvars: usize, order: Order, terms: Vec<(Monomial, F)>) -> Self {
        let mut map: HashMap<Exps, F> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars);
            match map.entry(m.0) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let v = e.get().clone() + c;
                    if v.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = v;
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> =
            map.into_iter().map(|(e, c)| (Monomial(e), c)).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly {
            nvars,
            order,
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// `Some(d)` iff nonzero and every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms
            .iter()
            .all(|(m, _)| m.degree() == d)
            .then_some(d)
    }

    pub fn with_order(&self, order: Order) -> Self {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly {
            nvars: self.nvars,
            order,
            terms,
        }
    }

    /// Re-embed into a context with `new_nvars` variables, variable `i`
    /// becoming `map[i]` (injective).
    pub fn map_vars(&self, new_nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Exps::from_elem(0, new_nvars);
                for (i, &ex) in m.0.iter().enumerate() {
                    e[map[i]] = ex;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Poly::from_terms(new_nvars, self.order, terms)
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_ctx(rhs);
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match self.order.cmp(&self.terms[i].0, &rhs.terms[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = self.terms[i].1.clone() + rhs.terms[j].1.clone();
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        Poly {
            nvars: self.nvars,
            order: self.order,
            terms: out,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.order);
        }
        Poly {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.order);
        }
        Poly {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), k.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_ctx(rhs);
        let mut acc: Vec<(Monomial, F)> = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (m, c) in &self.terms {
            for (mm, cc) in &rhs.terms {
                acc.push((m.mul(mm), c.clone() * cc.clone()));
            }
        }
        Poly::from_terms(self.nvars, self.order, acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Poly::constant(F::one(), self.nvars, self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Self {
        assert!(i < self.nvars);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .map(|(m, c)| {
                let mut e = m.0.clone();
                let k = e[i];
                e[i] -= 1;
                // exponents fit in u16, so this i64 cast is exact
                (
                    Monomial(e),
                    c.clone() * Self::small_int(k as i64),
                )
            })
            .collect();
        Poly::from_terms(self.nvars, self.order, terms)
    }

    /// `k` as a field element built from repeated `one()` (context-free).
    fn small_int(k: i64) -> F {
        let mut acc = F::zero();
        for _ in 0..k.unsigned_abs() {
            acc = acc + F::one();
        }
        if k < 0 {
            F::zero() - acc
        } else {
            acc
        }
    }

    /// Substitute `vars[i]` for variable `i`; the images must share a
    /// context, which becomes the context of the result.
    pub fn compose(&self, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.nvars);
        let (n2, o2) = (images[0].nvars, images[0].order);
        let mut out = Poly::zero(n2, o2);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone(), n2, o2);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e as u32));
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t * point[i].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Divide every coefficient by the leading one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.inv().expect("leading coefficient not invertible");
                self.scale(&inv)
            }
        }
    }

    fn check_ctx(&self, rhs: &Self) {
        assert_eq!(self.nvars, rhs.nvars, "mixed variable contexts");
        assert_eq!(self.order, rhs.order, "mixed monomial orders");
    }
}

/// Renders in the same `x0..xN` syntax the parser accepts, terms in the
/// polynomial's own monomial order, so `parse(format!("{p}"))` round-trips.
impl<F: Scalar + std::fmt::Display> std::fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
                .collect::<Vec<_>>()
                .join("*");
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    fn x(i: usize) -> Poly<Rat> {
        Poly::var(i, 3, Order::DegRevLex)
    }

    fn int(n: i64) -> Poly<Rat> {
        Poly::constant(Scalar::from_i64(n, &()), 3, Order::DegRevLex)
    }

    #[test]
    fn ring_identities_small() {
        let f = x(0).mul(&x(0)).add(&x(1).scale(&Scalar::from_i64(3, &())));
        let g = x(2).sub(&int(1));
        assert_eq!(f.mul(&g), g.mul(&f));
        assert_eq!(f.add(&g).sub(&g), f);
        assert_eq!(f.sub(&f), Poly::zero(3, Order::DegRevLex));
        assert_eq!(f.mul(&int(0)), Poly::zero(3, Order::DegRevLex));
    }

    #[test]
    fn binomial_cube() {
        // (x0 + x1)^3 has coefficients 1 3 3 1
        let p = x(0).add(&x(1)).pow(3);
        assert_eq!(p.terms().len(), 4);
        let c: Vec<String> = p.terms().iter().map(|(_, c)| c.to_string()).collect();
        assert_eq!(c, ["1", "3", "3", "1"]);
    }

    #[test]
    fn derivative_and_euler() {
        // Euler: sum x_i d_i f = deg(f) * f for homogeneous f
        let f = x(0).pow(3).add(&x(1).mul(&x(2)).mul(&x(0)));
        let mut acc = Poly::zero(3, Order::DegRevLex);
        for i in 0..3 {
            acc = acc.add(&f.derivative(i).mul(&x(i)));
        }
        assert_eq!(acc, f.scale(&Scalar::from_i64(3, &())));
        assert_eq!(f.homogeneous_degree(), Some(3));
    }

    #[test]
    fn compose_is_substitution() {
        // f(x0,x1,x2) = x0*x2 - x1^2 vanishes on the rational normal curve
        let f = x(0).mul(&x(2)).sub(&x(1).mul(&x(1)));
        let two = Order::DegRevLex;
        let ss = Poly::var(0, 2, two);
        let tt = Poly::var(1, 2, two);
        let images = vec![ss.pow(2), ss.mul(&tt), tt.pow(2)];
        assert!(f.compose(&images).is_zero());
    }

    #[test]
    fn display_round_trips_through_the_parser() {
        let vars = crate::parse::VarSet::xs(3);
        for src in [
            "x0^2 + x1*x2",
            "x1^2*x2 - x0^3 - x0^2*x2",
            "-x0 + 1/2*x1 - 3",
            "0",
        ] {
            let p: Poly<Rat> = crate::parse::parse_poly(src, &vars, Order::DegRevLex, &()).unwrap();
            let back = crate::parse::parse_poly(&p.to_string(), &vars, Order::DegRevLex, &()).unwrap();
            assert_eq!(p, back, "{src} -> {p}");
        }
    }
}
