//! Coefficient fields for the exact layer: ℚ (arbitrary precision) and
//! word-sized prime fields 𝔽_p.
//!
//! Everything downstream (polynomials, Gröbner bases, elimination) is generic
//! over [`Scalar`]. ℚ is `num_rational::BigRational` used directly; 𝔽_p is
//! [`Fp`], a u64 residue tagged with its modulus so the prime can be chosen
//! at runtime.

use num_traits::{One, Zero};
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// An exact field the symbolic layer can compute over.
///
/// `Ctx` carries what is needed to turn integer literals into field elements:
/// `()` for ℚ, the modulus for 𝔽_p. All other arithmetic is element-wise and
/// context-free.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
    type Ctx: Clone + PartialEq + Debug + Send + Sync;

    fn from_i64(n: i64, ctx: &Self::Ctx) -> Self;

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Whether the printer should pull a minus sign out of this
    /// coefficient. 𝔽_p keeps the default (representatives are
    /// non-negative).
    fn display_negative(&self) -> bool {
        false
    }

    /// The literal `num/den`. Fails when `den` maps to zero (always for
    /// `den == 0`, and in 𝔽_p also when `p | den`).
    fn from_ratio(num: i64, den: i64, ctx: &Self::Ctx) -> Result<Self> {
        let d = Self::from_i64(den, ctx);
        let inv = d.inv().ok_or(Error::DivisionByZero)?;
        Ok(Self::from_i64(num, ctx) * inv)
    }

    /// Rescale a coefficient vector by a common unit to keep growth down
    /// (used on ideal generators, where scaling is harmless). ℚ clears
    /// denominators and divides out the integer content; 𝔽_p has nothing
    /// to do.
    fn strip_content(_coeffs: &mut [Self]) {}

    /// A multiplicative identity carrying the same context as `self`
    /// (in 𝔽_p: bound to the same modulus). Use it when building literals
    /// next to an existing element and no context is in scope.
    fn unit_like(&self) -> Self {
        Self::one()
    }
}

/// ℚ with arbitrary-precision integers, printed in lowest terms as `p/q`.
pub type Rat = num_rational::BigRational;

impl Scalar for Rat {
    type Ctx = ();

    fn from_i64(n: i64, _ctx: &()) -> Self {
        Rat::from_integer(n.into())
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn display_negative(&self) -> bool {
        self < &Rat::from_integer(0.into())
    }

    fn strip_content(coeffs: &mut [Self]) {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if coeffs.is_empty() {
            return;
        }
        let mut den_lcm = BigInt::from(1);
        let mut num_gcd = BigInt::from(0);
        for c in coeffs.iter() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        if num_gcd.is_zero() {
            return;
        }
        let scale = Rat::new(den_lcm, num_gcd);
        for c in coeffs.iter_mut() {
            *c = &*c * &scale;
        }
    }
}

/// An element of 𝔽_p for a runtime prime p < 2^31, stored as a reduced
/// residue together with its modulus.
///
/// `Zero::zero()` and `One::one()` cannot know a modulus, so they carry the
/// sentinel `m == 0` ("unbound literal") and bind to the other operand's
/// modulus on first arithmetic contact. Unbound values only ever hold small
/// non-negative integers produced by `zero()`/`one()` accumulation; negating
/// or inverting a non-trivial unbound value is a programming error and
/// panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    m: u64,
}

impl Fp {
    pub fn new(n: i64, modulus: u64) -> Self {
        assert!(
            (2..1 << 31).contains(&modulus),
            "modulus must be a prime in [2, 2^31)"
        );
        let m = modulus as i64;
        Fp {
            v: n.rem_euclid(m) as u64,
            m: modulus,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Canonical representative in `[0, p)`; meaningless for unbound
    /// sentinels (which only occur mid-expression).
    pub fn rep(&self) -> u64 {
        self.v
    }

    fn join(a: u64, b: u64) -> u64 {
        if a == 0 {
            b
        } else {
            debug_assert!(b == 0 || a == b, "mixed moduli {a} and {b}");
            a
        }
    }

    fn bind(&self, m: u64) -> u64 {
        if m == 0 {
            self.v
        } else {
            self.v % m
        }
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.v, self.m)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let m = Fp::join(self.m, rhs.m);
        let s = self.bind(m) as u128 + rhs.bind(m) as u128;
        let v = if m == 0 { s } else { s % m as u128 };
        Fp {
            v: u64::try_from(v).expect("unbound prime-field literal overflow"),
            m,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let m = Fp::join(self.m, rhs.m);
        if m == 0 {
            // only zero()/one() accumulations live here
            let v = self
                .v
                .checked_sub(rhs.v)
                .expect("negation of unbound prime-field literal");
            return Fp { v, m };
        }
        let (a, b) = (self.bind(m), rhs.bind(m));
        Fp {
            v: if a >= b { a - b } else { a + m - b },
            m,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let m = Fp::join(self.m, rhs.m);
        let p = self.bind(m) as u128 * rhs.bind(m) as u128;
        let v = if m == 0 { p } else { p % m as u128 };
        Fp {
            v: u64::try_from(v).expect("unbound prime-field literal overflow"),
            m,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.m == 0 {
            assert!(self.v == 0, "negation of unbound prime-field literal");
            return self;
        }
        Fp {
            v: if self.v == 0 { 0 } else { self.m - self.v },
            m: self.m,
        }
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        let inv = Scalar::inv(&rhs).expect("division by zero in F_p");
        self * inv
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { v: 0, m: 0 }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { v: 1, m: 0 }
    }
    fn is_one(&self) -> bool {
        self.v == 1 || (self.m != 0 && self.v % self.m == 1)
    }
}

impl Scalar for Fp {
    type Ctx = u64;

    fn from_i64(n: i64, modulus: &u64) -> Self {
        Fp::new(n, *modulus)
    }

    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        if self.m == 0 {
            assert!(self.v == 1, "inverse of unbound prime-field literal");
            return Some(*self);
        }
        // extended Euclid on (v, m)
        let (mut r0, mut r1) = (self.v as i128, self.m as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert!(r0 == 1, "modulus is not prime or operand not reduced");
        Some(Fp {
            v: s0.rem_euclid(self.m as i128) as u64,
            m: self.m,
        })
    }

    fn unit_like(&self) -> Self {
        Fp { v: 1, m: self.m }
    }
}

/// Two fixed 31-bit primes used when a prime-field result is promoted to a
/// statement about ℚ: the claim must hold under both.
pub const VERIFY_PRIMES: [u64; 2] = [2_147_483_629, 2_147_483_587];
