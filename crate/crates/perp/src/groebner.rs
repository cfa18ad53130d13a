//! Buchberger's algorithm with the degree-normal selection strategy, the
//! coprime-leading-term and chain criteria (Gebauer–Möller pair pruning),
//! auto-reduced monic output, and a hard budget on S-polynomial reductions.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::monomial::{Monomial, Order};
use crate::poly::Poly;

/// Default ceiling on S-polynomial reductions per Gröbner run.
pub const DEFAULT_BUDGET: u64 = 200_000;

/// Remaining S-polynomial reductions; shared across the eliminations and
/// saturations that make up one geometric operation.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    spent: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, spent: 0 }
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    fn tick(&mut self) -> Result<()> {
        if self.spent >= self.limit {
            return Err(Error::Budget {
                budget: self.limit,
                spent: self.spent,
            });
        }
        self.spent += 1;
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

/// Fully reduce `f` modulo `basis` (every term, not just the leading one).
/// With a reduced Gröbner basis this is the canonical normal form.
pub fn normal_form<F: Scalar>(f: &Poly<F>, basis: &[Poly<F>]) -> Poly<F> {
    let order = f.order();
    let mut work = f.clone();
    let mut rem: Vec<(Monomial, F)> = Vec::new();
    'outer: while let Some((wm, wc)) = work.leading() {
        for b in basis {
            if let Some((bm, bc)) = b.leading() {
                if let Some(q) = bm.div(wm) {
                    let c = wc.clone() * bc.inv().expect("zero leading coefficient");
                    work = work.sub(&b.mul_term(&q, &c));
                    continue 'outer;
                }
            }
        }
        // leading term irreducible: move it to the remainder
        rem.push((wm.clone(), wc.clone()));
        let lt = Poly::from_terms(f.nvars(), order, vec![rem.last().unwrap().clone()]);
        work = work.sub(&lt);
    }
    Poly::from_terms(f.nvars(), order, rem)
}

fn strip<F: Scalar>(p: Poly<F>) -> Poly<F> {
    let mut coeffs: Vec<F> = p.terms().iter().map(|(_, c)| c.clone()).collect();
    F::strip_content(&mut coeffs);
    Poly::from_terms(
        p.nvars(),
        p.order(),
        p.terms()
            .iter()
            .zip(coeffs)
            .map(|((m, _), c)| (m.clone(), c))
            .collect(),
    )
}

fn spoly<F: Scalar>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.div(&l).unwrap(), gc);
    let b = g.mul_term(&gm.div(&l).unwrap(), fc);
    a.sub(&b)
}

/// Pair queue entry; `BinaryHeap` is a max-heap, so comparisons are flipped
/// to pop the smallest lcm degree first (normal selection), with the lcm
/// exponents and the index pair as deterministic tie-breaks.
#[derive(PartialEq, Eq)]
struct Pair {
    deg: u32,
    lcm: Vec<u16>,
    i: usize,
    j: usize,
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .deg
            .cmp(&self.deg)
            .then_with(|| other.lcm.cmp(&self.lcm))
            .then_with(|| (other.i, other.j).cmp(&(self.i, self.j)))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`:
/// monic generators, no term of one divisible by the leading monomial of
/// another, sorted ascending by leading monomial. The unit ideal comes back
/// as `[1]`.
pub fn buchberger<F: Scalar>(
    gens: &[Poly<F>],
    order: Order,
    budget: &mut Budget,
) -> Result<Vec<Poly<F>>> {
    let nvars = gens.iter().map(|g| g.nvars()).max().unwrap_or(0);
    let mut basis: Vec<Poly<F>> = Vec::new();
    let mut pairs: BinaryHeap<Pair> = BinaryHeap::new();

    let add = |basis: &mut Vec<Poly<F>>, pairs: &mut BinaryHeap<Pair>, g: Poly<F>| {
        let t = basis.len();
        let gm = g.leading_monomial().unwrap().clone();
        // Gebauer–Möller update of the pending pair set
        let mut fresh: Vec<Pair> = Vec::new();
        for (i, b) in basis.iter().enumerate() {
            let bm = b.leading_monomial().unwrap();
            let l = bm.lcm(&gm);
            fresh.push(Pair {
                deg: l.degree(),
                lcm: l.0.to_vec(),
                i,
                j: t,
            });
        }
        // M: drop (i,t) when another new pair's lcm strictly divides its lcm
        let keep_m: Vec<bool> = fresh
            .iter()
            .map(|p| {
                !fresh.iter().any(|q| {
                    q.lcm != p.lcm
                        && Monomial(q.lcm.iter().copied().collect())
                            .divides(&Monomial(p.lcm.iter().copied().collect()))
                })
            })
            .collect();
        let mut filtered: Vec<Pair> = fresh
            .into_iter()
            .zip(keep_m)
            .filter_map(|(p, k)| k.then_some(p))
            .collect();
        // F: keep a single pair per lcm value
        filtered.sort_by(|a, b| a.lcm.cmp(&b.lcm).then((a.i, a.j).cmp(&(b.i, b.j))));
        filtered.dedup_by(|a, b| a.lcm == b.lcm);
        // coprime criterion
        filtered.retain(|p| {
            let bm = basis[p.i].leading_monomial().unwrap();
            !bm.coprime(&gm)
        });
        // B: prune old pairs whose lcm is a multiple of the new leading
        // monomial unless it coincides with one of the mixed lcms
        let old: Vec<Pair> = std::mem::take(pairs).into_vec();
        for p in old {
            let l = Monomial(p.lcm.iter().copied().collect());
            let li = basis[p.i].leading_monomial().unwrap().lcm(&gm);
            let lj = basis[p.j].leading_monomial().unwrap().lcm(&gm);
            if gm.divides(&l) && li != l && lj != l {
                continue;
            }
            pairs.push(p);
        }
        for p in filtered {
            pairs.push(p);
        }
        basis.push(g);
    };

    for g in gens {
        let g = g.with_order(order);
        if g.is_zero() {
            continue;
        }
        if g.is_constant() {
            let unit = g.leading().expect("constant poly has a leading term").1.unit_like();
            return Ok(vec![Poly::constant(unit, nvars, order)]);
        }
        add(&mut basis, &mut pairs, strip(g));
    }

    while let Some(p) = pairs.pop() {
        budget.tick()?;
        let s = spoly(&basis[p.i], &basis[p.j]);
        let r = normal_form(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            let unit = r.leading().expect("constant poly has a leading term").1.unit_like();
            return Ok(vec![Poly::constant(unit, nvars, order)]);
        }
        add(&mut basis, &mut pairs, strip(r));
    }

    Ok(autoreduce(basis))
}

/// Inter-reduce a basis: drop generators whose leading monomial is a
/// multiple of another's, fully reduce each against the rest, make monic,
/// sort ascending by leading monomial.
fn autoreduce<F: Scalar>(mut basis: Vec<Poly<F>>) -> Vec<Poly<F>> {
    // drop redundant leading monomials
    let mut keep: Vec<Poly<F>> = Vec::new();
    basis.sort_by(|a, b| {
        a.order()
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    for (i, g) in basis.iter().enumerate() {
        let gm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && {
                let hm = h.leading_monomial().unwrap();
                hm.divides(gm) && (hm != gm || j < i)
            }
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // tail-reduce every survivor against the others until stable
    loop {
        let mut changed = false;
        for i in 0..keep.len() {
            let others: Vec<Poly<F>> = keep
                .iter()
                .enumerate()
                .filter_map(|(j, h)| (j != i).then(|| h.clone()))
                .collect();
            let r = normal_form(&keep[i], &others);
            if r != keep[i] {
                keep[i] = strip(r);
                changed = true;
            }
        }
        keep.retain(|g| !g.is_zero());
        if !changed {
            break;
        }
    }
    let mut out: Vec<Poly<F>> = keep.into_iter().map(|g| g.monic()).collect();
    out.sort_by(|a, b| {
        a.order()
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    out
}

/// True when the reduced basis is the unit ideal.
pub fn is_unit_basis<F: Scalar>(basis: &[Poly<F>]) -> bool {
    basis.iter().any(|g| g.is_constant() && !g.is_zero())
}
