//! Polynomial text grammar and printer.
//!
//! Variables are whatever the active [`VarSet`] declares (the catalog uses
//! `x0..x9`, dual coordinates are `a0..a9`, parameters `t` and `s`).
//! Literals are integers and `p/q` rationals; operators are `+ - * ^` with
//! parentheses. Multiplication is always explicit (`2*x0`, never `2x0`) and
//! whitespace is insignificant. Printing emits terms in descending degrevlex
//! with coefficients in lowest terms, so parse∘print is the identity.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::monomial::{Monomial, Order};
use crate::poly::Poly;

/// Ordered list of variable names defining a polynomial context.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        assert!(!names.is_empty());
        VarSet { names }
    }

    /// `x0..x{n-1}`.
    pub fn xs(n: usize) -> Self {
        assert!(n <= 10, "the grammar stops at x9");
        VarSet::new((0..n).map(|i| format!("x{i}")).collect())
    }

    /// `a0..a{n-1}` (dual coordinates).
    pub fn dual(n: usize) -> Self {
        assert!(n <= 10, "the grammar stops at a9");
        VarSet::new((0..n).map(|i| format!("a{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn concat(&self, other: &VarSet) -> VarSet {
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        VarSet { names }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .or_else(|_| self.err("integer literal out of range"))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn expr<F: Scalar>(&mut self, vars: &VarSet, order: Order, ctx: &F::Ctx) -> Result<Poly<F>> {
        let mut neg = false;
        if self.eat(b'-') {
            neg = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term(vars, order, ctx)?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                let t = self.term(vars, order, ctx)?;
                acc = acc.add(&t);
            } else if self.eat(b'-') {
                let t: Poly<F> = self.term(vars, order, ctx)?;
                acc = acc.sub(&t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<F: Scalar>(&mut self, vars: &VarSet, order: Order, ctx: &F::Ctx) -> Result<Poly<F>> {
        let mut acc = self.factor(vars, order, ctx)?;
        while self.eat(b'*') {
            let f = self.factor(vars, order, ctx)?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor<F: Scalar>(&mut self, vars: &VarSet, order: Order, ctx: &F::Ctx) -> Result<Poly<F>> {
        let base = self.primary(vars, order, ctx)?;
        if self.eat(b'^') {
            let e = self.integer()?;
            if !(0..=u16::MAX as i64).contains(&e) {
                return self.err("exponent out of range");
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn primary<F: Scalar>(&mut self, vars: &VarSet, order: Order, ctx: &F::Ctx) -> Result<Poly<F>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr(vars, order, ctx)?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let coeff = if self.eat(b'/') {
                    let den = self.integer()?;
                    F::from_ratio(num, den, ctx)?
                } else {
                    F::from_i64(num, ctx)
                };
                // reject implicit multiplication like `2x0`
                if let Some(c) = self.src.get(self.pos) {
                    if c.is_ascii_alphabetic() {
                        return self.err("implicit multiplication is not allowed (write 2*x0)");
                    }
                }
                Ok(Poly::constant(coeff, vars.len(), order))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.pos;
                let name = self.ident();
                match vars.index_of(&name) {
                    // bind the coefficient to the context right away so that
                    // later negation/inversion is well-defined in every field
                    Some(i) => Ok(Poly::from_terms(
                        vars.len(),
                        order,
                        vec![(crate::monomial::Monomial::var(i, vars.len()), F::from_i64(1, ctx))],
                    )),
                    None => Err(Error::Parse {
                        pos: at,
                        msg: format!("unknown variable `{name}`"),
                    }),
                }
            }
            _ => self.err("expected a literal, variable, or '('"),
        }
    }
}

/// Parse one polynomial in the given variable context.
pub fn parse_poly<F: Scalar>(
    src: &str,
    vars: &VarSet,
    order: Order,
    ctx: &F::Ctx,
) -> Result<Poly<F>> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let poly = p.expr(vars, order, ctx)?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err("trailing input after polynomial");
    }
    Ok(poly)
}

fn monomial_to_string(m: &Monomial, vars: &VarSet) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.name(i).to_string()),
            _ => parts.push(format!("{}^{}", vars.name(i), e)),
        }
    }
    parts.join("*")
}

/// Print with terms in descending degrevlex, coefficients in lowest terms.
pub fn poly_to_string<F: Scalar>(p: &Poly<F>, vars: &VarSet) -> String {
    assert_eq!(p.nvars(), vars.len());
    if p.is_zero() {
        return "0".into();
    }
    let canon = p.with_order(Order::DegRevLex);
    let mut out = String::new();
    for (k, (m, c)) in canon.terms().iter().enumerate() {
        let (neg, mag) = if c.display_negative() {
            (true, (F::zero() - c.clone()).to_string())
        } else {
            (false, c.to_string())
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let ms = monomial_to_string(m, vars);
        if ms.is_empty() {
            out.push_str(&mag);
        } else if mag == "1" {
            out.push_str(&ms);
        } else {
            out.push_str(&mag);
            out.push('*');
            out.push_str(&ms);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rat};

    fn p(src: &str, n: usize) -> Poly<Rat> {
        parse_poly(src, &VarSet::xs(n), Order::DegRevLex, &()).unwrap()
    }

    #[test]
    fn round_trip_catalog_generators() {
        for src in [
            "x0*x2 - x1^2",
            "x0^3 + x1^3 + x2^3",
            "x1^2*x2 - x0^3 - x0^2*x2",
            "-x0 + 1/2*x1",
            "0",
            "3",
            "-7/3",
        ] {
            let f = p(src, 3);
            let printed = poly_to_string(&f, &VarSet::xs(3));
            assert_eq!(p(&printed, 3), f, "round-trip of `{src}` via `{printed}`");
        }
    }

    #[test]
    fn printing_is_descending_degrevlex() {
        assert_eq!(
            poly_to_string(&p("x0*x2 - x1^2", 3), &VarSet::xs(3)),
            "-x1^2 + x0*x2"
        );
        assert_eq!(
            poly_to_string(&p("1 + x0 + 3*x0^2", 3), &VarSet::xs(3)),
            "3*x0^2 + x0 + 1"
        );
    }

    #[test]
    fn rational_literals_reduce() {
        assert_eq!(poly_to_string(&p("4/6", 3), &VarSet::xs(3)), "2/3");
        assert_eq!(
            poly_to_string(&p("x0 - 2/2*x1", 3), &VarSet::xs(3)),
            "x0 - x1"
        );
    }

    #[test]
    fn prime_field_literals() {
        let f: Poly<Fp> = parse_poly("1/2*x0 + 6", &VarSet::xs(2), Order::DegRevLex, &7).unwrap();
        assert_eq!(poly_to_string(&f, &VarSet::xs(2)), "4*x0 + 6");
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["2x0", "x0 x1", "y0 + 1", "x0 +", "(x0", "x0^-2", "1/0"] {
            assert!(
                parse_poly::<Rat>(bad, &VarSet::xs(3), Order::DegRevLex, &()).is_err(),
                "`{bad}` should fail"
            );
        }
    }

    #[test]
    fn parameters_t_and_s() {
        let vars = VarSet::new(vec!["t", "s"]);
        let f: Poly<Rat> = parse_poly("t^2*s - 3*t + s", &vars, Order::DegRevLex, &()).unwrap();
        assert_eq!(poly_to_string(&f, &vars), "t^2*s - 3*t + s");
    }
}
