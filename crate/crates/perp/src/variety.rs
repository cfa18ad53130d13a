//! Projective varieties over an exact field: dimension and degree,
//! smoothness via the Jacobian criterion, generic hyperplane sections, and
//! seeded random linear projections.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groebner::Budget;
use crate::hilbert::{dim_and_degree, DimDeg};
use crate::matrix::{kernel_basis, minors, scalar_rank};
use crate::monomial::Order;
use crate::poly::Poly;

/// A closed subscheme of `P^ambient`, cut out by homogeneous generators in
/// `ambient + 1` positional variables.
#[derive(Clone, Debug)]
pub struct Variety<F: Scalar> {
    pub name: String,
    pub ambient: usize,
    pub gens: Vec<Poly<F>>,
    pub ctx: F::Ctx,
}

impl<F: Scalar> Variety<F> {
    pub fn new(
        name: impl Into<String>,
        ambient: usize,
        gens: Vec<Poly<F>>,
        ctx: F::Ctx,
    ) -> Result<Self> {
        let name = name.into();
        let gens: Vec<Poly<F>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            if g.nvars() != ambient + 1 {
                return Err(Error::Invalid(format!(
                    "{name}: generator has {} variables, ambient space needs {}",
                    g.nvars(),
                    ambient + 1
                )));
            }
            if g.homogeneous_degree().is_none() {
                return Err(Error::NotHomogeneous(name));
            }
        }
        Ok(Variety { name, ambient, gens, ctx })
    }

    /// Convenience constructor from equation strings in `x0..xN`.
    pub fn from_strings(
        name: impl Into<String>,
        ambient: usize,
        eqs: &[&str],
        ctx: &F::Ctx,
    ) -> Result<Self> {
        let vars = crate::parse::VarSet::xs(ambient + 1);
        let gens = eqs
            .iter()
            .map(|s| crate::parse::parse_poly(s, &vars, Order::DegRevLex, ctx))
            .collect::<Result<Vec<_>>>()?;
        Variety::new(name, ambient, gens, ctx.clone())
    }

    pub fn nvars(&self) -> usize {
        self.ambient + 1
    }

    /// Projective dimension and degree (dimension `-1` means empty).
    pub fn dim_deg(&self, budget: &mut Budget) -> Result<DimDeg> {
        dim_and_degree(&self.gens, self.nvars(), budget)
    }

    /// Jacobian matrix: one row per generator, one column per variable.
    pub fn jacobian(&self) -> Vec<Vec<Poly<F>>> {
        self.gens
            .iter()
            .map(|g| (0..self.nvars()).map(|j| g.derivative(j)).collect())
            .collect()
    }

    /// Generators of the singular subscheme: the variety's equations
    /// together with the rank-dropping minors of its Jacobian.
    pub fn singular_scheme(&self, budget: &mut Budget) -> Result<Vec<Poly<F>>> {
        let dd = self.dim_deg(budget)?;
        let codim = self.ambient as i64 - dd.dim;
        let mut sing = self.gens.clone();
        sing.extend(minors(&self.jacobian(), codim as usize));
        Ok(sing)
    }

    /// Jacobian smoothness test. The empty scheme and the full space count
    /// as smooth.
    pub fn is_smooth(&self, budget: &mut Budget) -> Result<bool> {
        if self.gens.is_empty() {
            return Ok(true);
        }
        let dd = self.dim_deg(budget)?;
        if dd.dim < 0 || dd.dim == self.ambient as i64 {
            return Ok(true);
        }
        let sing = self.singular_scheme(budget)?;
        match dim_and_degree(&sing, self.nvars(), budget) {
            Ok(s) => Ok(s.dim < 0),
            Err(Error::UnitIdeal(_)) => Ok(true),
            Err(e) => Err(e),
        }
    }

    /// Degree measured as the length of the intersection with a seeded
    /// random linear subspace of complementary dimension. Retries a few
    /// reseedings if the cut is not zero-dimensional.
    pub fn degree_by_section(&self, seed: u64, budget: &mut Budget) -> Result<u64> {
        let dd = self.dim_deg(budget)?;
        if dd.dim < 0 {
            return Err(Error::Degenerate(format!("{}: empty", self.name)));
        }
        if dd.dim == 0 {
            return Ok(dd.degree);
        }
        for attempt in 0..3u64 {
            let s = seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let forms = random_linear_forms::<F>(self.nvars(), dd.dim as usize, s, &self.ctx);
            let mut cut = self.gens.clone();
            cut.extend(forms);
            let sliced = dim_and_degree(&cut, self.nvars(), budget)?;
            if sliced.dim == 0 {
                return Ok(sliced.degree);
            }
        }
        Err(Error::Degenerate(format!(
            "{}: no zero-dimensional section after 3 seeds",
            self.name
        )))
    }

    /// The subvariety cut by extra hyperplanes, kept in the same ambient
    /// space.
    pub fn section(&self, forms: &[Poly<F>]) -> Result<Self> {
        let mut gens = self.gens.clone();
        gens.extend(forms.iter().cloned());
        Variety::new(
            format!("{}-section", self.name),
            self.ambient,
            gens,
            self.ctx.clone(),
        )
    }

    /// Intersect with the common zero locus of independent linear forms and
    /// re-express the result inside that smaller projective space, using a
    /// kernel parametrization of the subspace.
    pub fn section_intrinsic(&self, forms: &[Poly<F>]) -> Result<Self> {
        let n = self.nvars();
        let mut coeffs: Vec<Vec<F>> = Vec::new();
        for f in forms {
            if f.homogeneous_degree() != Some(1) {
                return Err(Error::Invalid("section forms must be linear".into()));
            }
            let mut row = vec![F::zero(); n];
            for (m, c) in f.terms() {
                let i = m.0.iter().position(|&e| e > 0).unwrap();
                row[i] = c.clone();
            }
            coeffs.push(row);
        }
        let r = scalar_rank(&coeffs);
        if r != forms.len() {
            return Err(Error::Degenerate("section forms are dependent".into()));
        }
        let kernel = kernel_basis(&coeffs);
        // columns of the substitution are the kernel vectors
        let mat: Vec<Vec<F>> = (0..n)
            .map(|i| kernel.iter().map(|v| v[i].clone()).collect())
            .collect();
        let gens = crate::ideal::substitute_linear(&self.gens, &mat);
        Variety::new(
            format!("{}-slice", self.name),
            n - forms.len() - 1,
            gens,
            self.ctx.clone(),
        )
    }
}

/// A linear projection `P^N ⇢ P^k`, stored as the `(k+1) x (N+1)` matrix of
/// its coordinate forms.
#[derive(Clone, Debug)]
pub struct Projection<F: Scalar> {
    pub rows: Vec<Vec<F>>,
}

impl<F: Scalar> Projection<F> {
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(Error::Invalid("projection matrix must be rectangular".into()));
        }
        if scalar_rank(&rows) != rows.len() {
            return Err(Error::Degenerate("projection matrix is rank-deficient".into()));
        }
        Ok(Projection { rows })
    }

    /// Seeded random projection with small integer entries, guaranteed full
    /// rank (reseeds a few times if necessary).
    pub fn random(source_dim: usize, target_dim: usize, seed: u64, ctx: &F::Ctx) -> Result<Self> {
        let (rows, cols) = (target_dim + 1, source_dim + 1);
        for attempt in 0..3u64 {
            let s = seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let m: Vec<Vec<F>> = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| F::from_i64(rng.gen_range(-50..=50), ctx))
                        .collect()
                })
                .collect();
            if scalar_rank(&m) == rows {
                return Ok(Projection { rows: m });
            }
        }
        Err(Error::Degenerate("no full-rank projection after 3 seeds".into()))
    }

    pub fn source_dim(&self) -> usize {
        self.rows[0].len() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.rows.len() - 1
    }

    /// The coordinate linear forms, as polynomials in the source variables.
    pub fn forms(&self) -> Vec<Poly<F>> {
        let n = self.rows[0].len();
        self.rows
            .iter()
            .map(|row| {
                let terms = row
                    .iter()
                    .enumerate()
                    .map(|(j, c)| (crate::monomial::Monomial::var(j, n), c.clone()))
                    .collect();
                Poly::from_terms(n, Order::DegRevLex, terms)
            })
            .collect()
    }

    /// Transpose-apply to dual coordinates: row `b` of the target's dual
    /// space pulls back to `L^T b` in the source's dual space. Returns, for
    /// each source coordinate, its expression in `target_dim + 1` fresh
    /// variables.
    pub fn transpose_images(&self, order: Order) -> Vec<Poly<F>> {
        let k1 = self.rows.len();
        let n1 = self.rows[0].len();
        (0..n1)
            .map(|i| {
                let terms = (0..k1)
                    .map(|j| {
                        (
                            crate::monomial::Monomial::var(j, k1),
                            self.rows[j][i].clone(),
                        )
                    })
                    .collect();
                Poly::from_terms(k1, order, terms)
            })
            .collect()
    }
}

/// Seeded random combination `sum c_i * polys[i]` with small nonzero integer
/// coefficients. Used wherever a single generic element must represent an
/// ideal set-theoretically (saturation witnesses and the like).
pub fn random_combination<F: Scalar>(polys: &[Poly<F>], seed: u64, ctx: &F::Ctx) -> Poly<F> {
    assert!(!polys.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = Poly::zero(polys[0].nvars(), polys[0].order());
    for p in polys {
        let c = F::from_i64(rng.gen_range(1..=50), ctx);
        acc = acc.add(&p.scale(&c));
    }
    acc
}

/// `count` random linear forms in `nvars` variables with small integer
/// coefficients, linearly independent by construction (reseeds internally).
pub fn random_linear_forms<F: Scalar>(
    nvars: usize,
    count: usize,
    seed: u64,
    ctx: &F::Ctx,
) -> Vec<Poly<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows: Vec<Vec<F>> = (0..count)
            .map(|_| {
                (0..nvars)
                    .map(|_| F::from_i64(rng.gen_range(-50..=50), ctx))
                    .collect()
            })
            .collect();
        if count == 0 || scalar_rank(&rows) == count {
            return rows
                .iter()
                .map(|row| {
                    let terms = row
                        .iter()
                        .enumerate()
                        .map(|(j, c)| (crate::monomial::Monomial::var(j, nvars), c.clone()))
                        .collect();
                    Poly::from_terms(nvars, Order::DegRevLex, terms)
                })
                .collect();
        }
    }
}
