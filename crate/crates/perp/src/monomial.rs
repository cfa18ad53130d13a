//! Monomials (overflow-checked `u16` exponent vectors) and the three
//! monomial orders the engine uses: degrevlex, lex, and block elimination
//! orders (eliminated block in front, degrevlex inside each block).

use smallvec::SmallVec;
use std::cmp::Ordering;

pub type Exps = SmallVec<[u16; 8]>;

/// A power product in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Exps);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product; panics on `u16` exponent overflow (the exact layer is not
    /// meant for degrees anywhere near 2^16).
    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), rhs.nvars());
        Monomial(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(&a, &b)| a.checked_add(b).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(&a, &b)| a <= b)
    }

    /// `rhs / self` when `self` divides `rhs`.
    pub fn div(&self, rhs: &Monomial) -> Option<Monomial> {
        if self.divides(rhs) {
            Some(Monomial(
                rhs.0.iter().zip(&self.0).map(|(&b, &a)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(&a, &b)| a == 0 || b == 0)
    }
}

/// Monomial order, part of every polynomial's computation context.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Order {
    /// Graded reverse lexicographic (the workhorse).
    DegRevLex,
    /// Pure lexicographic, `x0 > x1 > ...`.
    Lex,
    /// Elimination order: exponents of the first `k` variables compared by
    /// degrevlex first, remaining variables degrevlex as tie-break. A
    /// Gröbner basis in this order intersects down to the kept block.
    Elim(usize),
}

fn degrevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    // equal degree: the one with the larger exponent at the last
    // differing position is the smaller monomial
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

fn lex(a: &[u16], b: &[u16]) -> Ordering {
    for i in 0..a.len() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

impl Order {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match *self {
            Order::DegRevLex => degrevlex(&a.0, &b.0),
            Order::Lex => lex(&a.0, &b.0),
            Order::Elim(k) => {
                degrevlex(&a.0[..k], &b.0[..k]).then_with(|| degrevlex(&a.0[k..], &b.0[k..]))
            }
        }
    }
}
