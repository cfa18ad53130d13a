//! Numerical braid monodromy of plane-curve covers: branch points of a
//! linear projection, certified fiber transport along loops, braid words
//! in Artin generators with their permutation images, and a one-sided
//! surjectivity certificate for the induced map onto the braid group.
//!
//! The pipeline is exact until the last moment: the fiber polynomial and
//! its discriminant are computed over ℚ, and only root finding and path
//! tracking run in floating point (generic over [`Float`], `f64` in
//! practice). Loops are a bouquet of circles around the branch points,
//! joined to a base point on a large circle; all randomness is seeded.

use num_complex::Complex;
use num_traits::{Float, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{kernel_basis, mat_inverse, solve};
use crate::monomial::Order;
use crate::poly::Poly;
use crate::field::{Rat, Scalar};
use crate::resultant::resultant;
use crate::variety::{Projection, Variety};

/// Offset between consecutive retry seeds, shared across the crate.
const RESEED: u64 = 0x9E37_79B9_7F4A_7C15;
/// Two distinct branch points closer than this (relative to scale) mean
/// the projection is too special and should be reseeded by the caller.
const SEPARATION: f64 = 1e-6;
/// Two numerical roots closer than this (relative) are one branch point.
const DEDUPE: f64 = 1e-5;
/// Default Newton/rootfinder tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

fn t<T: Float>(x: f64) -> T {
    T::from(x).unwrap()
}

// ---------------------------------------------------------------------
// dense univariate complex polynomials (ascending coefficients)

fn cpoly_eval<T: Float>(c: &[Complex<T>], z: Complex<T>) -> Complex<T> {
    let mut acc = Complex::new(T::zero(), T::zero());
    for a in c.iter().rev() {
        acc = acc * z + a;
    }
    acc
}

fn cpoly_derivative<T: Float>(c: &[Complex<T>]) -> Vec<Complex<T>> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| a.scale(t::<T>(i as f64)))
        .collect()
}

/// All complex roots of the polynomial with the given ascending
/// coefficients, by simultaneous (Aberth-style) iteration from seeded
/// starting points on a circle. Converges for the moderate degrees used
/// here, including clustered roots, which are reported as tight clusters.
pub fn aberth_roots<T: Float>(
    coeffs: &[Complex<T>],
    seed: u64,
    tol: T,
) -> Result<Vec<Complex<T>>> {
    let mut c: Vec<Complex<T>> = coeffs.to_vec();
    while let Some(last) = c.last() {
        if last.norm() > T::zero() {
            break;
        }
        c.pop();
    }
    if c.len() <= 1 {
        return Ok(Vec::new());
    }
    let lead = *c.last().unwrap();
    for a in c.iter_mut() {
        *a = *a / lead;
    }
    let n = c.len() - 1;
    let d = cpoly_derivative(&c);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phase: f64 = rng.gen_range(0.0..1.0);
    let radius = c[..n]
        .iter()
        .fold(T::one(), |m, a| m.max(a.norm()))
        + T::one();
    let mut z: Vec<Complex<T>> = (0..n)
        .map(|k| {
            let ang = t::<T>(2.0 * std::f64::consts::PI * (k as f64 + phase) / n as f64);
            Complex::from_polar(radius, ang)
        })
        .collect();

    // Backward-error acceptance: z is good once |p(z)| is a small multiple
    // of eps * sum |a_i| |z|^i, i.e. z is an exact root of a polynomial
    // whose coefficients differ by a few ulps.
    let backward = |zk: Complex<T>| {
        let az = zk.norm();
        let mut bound = T::zero();
        let mut pw = T::one();
        for a in &c {
            bound = bound + a.norm() * pw;
            pw = pw * az;
        }
        t::<T>(1e3) * T::epsilon() * bound
    };
    for _ in 0..400 {
        let mut settled = true;
        for k in 0..n {
            let p = cpoly_eval(&c, z[k]);
            if p.norm() <= backward(z[k]) {
                continue;
            }
            let pd = cpoly_eval(&d, z[k]);
            let ratio = if pd.norm() > T::zero() {
                p / pd
            } else {
                // sitting exactly on a critical point: nudge off it
                z[k] = z[k] + Complex::new(tol, tol);
                settled = false;
                continue;
            };
            let mut sum = Complex::new(T::zero(), T::zero());
            for j in 0..n {
                if j != k {
                    let diff = z[k] - z[j];
                    if diff.norm() > T::zero() {
                        sum = sum + diff.inv();
                    }
                }
            }
            let denom = Complex::new(T::one(), T::zero()) - ratio * sum;
            let w = if denom.norm() > T::zero() { ratio / denom } else { ratio };
            z[k] = z[k] - w;
            if w.norm() > tol * T::one().max(z[k].norm()) {
                settled = false;
            }
        }
        if settled {
            return Ok(z);
        }
    }
    Err(Error::Numeric(format!(
        "root finder did not converge on a degree-{n} polynomial"
    )))
}

// ---------------------------------------------------------------------
// the fiber polynomial of a plane-curve cover

/// A degree-`m` cover of the line induced by a linear projection of a
/// plane curve: the exact bivariate fiber polynomial `F(s, y)` (base
/// coordinate `s`, fiber coordinate `y`, monic of degree `m` in `y`)
/// together with its floating-point coefficient table.
pub struct PlaneCover<T: Float> {
    /// Degree of the cover = degree of the curve.
    pub m: usize,
    /// Exact fiber polynomial, variables `(s, y)`.
    pub fiber_poly: Poly<Rat>,
    /// `ys[j]` = ascending coefficients in `s` of the `y^j` coefficient.
    ys: Vec<Vec<Complex<T>>>,
}

impl<T: Float> PlaneCover<T> {
    /// Set up the cover for a plane curve `f` (homogeneous, 3 variables)
    /// under a 2-row projection. Fails when the center of projection lies
    /// on the curve, which is exactly when the fiber polynomial cannot be
    /// made monic.
    pub fn new(f: &Poly<Rat>, pi: &Projection<Rat>) -> Result<Self> {
        let m = match f.homogeneous_degree() {
            Some(d) if d >= 1 && f.nvars() == 3 => d as usize,
            _ => {
                return Err(Error::Invalid(
                    "cover input must be a homogeneous curve in the plane".into(),
                ))
            }
        };
        if pi.rows.len() != 2 || pi.rows[0].len() != 3 {
            return Err(Error::Invalid("projection must map the plane to a line".into()));
        }
        // complete the projection to a coordinate change u = M x, with the
        // base coordinate s = u0/u1 and the fiber coordinate y = u2/u1
        let mut chosen: Option<Vec<Vec<Rat>>> = None;
        for third in [[0i64, 0, 1], [0, 1, 0], [1, 0, 0], [1, 1, 1]] {
            let mut m3 = vec![pi.rows[0].clone(), pi.rows[1].clone()];
            m3.push(third.iter().map(|&v| Rat::from_i64(v, &())).collect());
            if let Some(inv) = mat_inverse(&m3) {
                chosen = Some(inv);
                break;
            }
        }
        let minv = chosen
            .ok_or_else(|| Error::Degenerate("projection rows are dependent".into()))?;
        // center of projection = preimage of u = (0,0,1), i.e. the third
        // column of M^{-1}
        let center: Vec<Rat> = (0..3).map(|i| minv[i][2].clone()).collect();
        if f.eval(&center).is_zero() {
            return Err(Error::Degenerate(
                "projection center lies on the curve".into(),
            ));
        }
        let g = crate::ideal::substitute_linear(std::slice::from_ref(f), &minv)
            .pop()
            .unwrap();
        // dehomogenize u1 = 1: the term s^a u1^b y^e becomes s^a y^e
        let mut fiber_poly = Poly::<Rat>::zero(2, Order::Lex);
        let mut terms = Vec::new();
        for (mono, coeff) in g.terms() {
            let mut e = crate::monomial::Monomial::one(2);
            e.0[0] = mono.0[0];
            e.0[1] = mono.0[2];
            terms.push((e, coeff.clone()));
        }
        fiber_poly = fiber_poly.add(&Poly::from_terms(2, Order::Lex, terms));
        // float table, normalized monic in y
        let lead = f.eval(&center);
        let mut ys: Vec<Vec<Complex<T>>> = vec![Vec::new(); m + 1];
        for (mono, coeff) in fiber_poly.terms() {
            let (a, e) = (mono.0[0] as usize, mono.0[1] as usize);
            let v = (coeff.clone() / lead.clone())
                .to_f64()
                .ok_or_else(|| Error::Numeric("coefficient out of float range".into()))?;
            if ys[e].len() < a + 1 {
                ys[e].resize(a + 1, Complex::new(T::zero(), T::zero()));
            }
            ys[e][a] = ys[e][a] + Complex::new(t::<T>(v), T::zero());
        }
        Ok(PlaneCover { m, fiber_poly, ys })
    }

    /// Ascending `y`-coefficients of the fiber polynomial at base point `s`.
    pub fn coeffs_at(&self, s: Complex<T>) -> Vec<Complex<T>> {
        self.ys.iter().map(|cj| cpoly_eval(cj, s)).collect()
    }

    fn eval(&self, coeffs: &[Complex<T>], y: Complex<T>) -> Complex<T> {
        cpoly_eval(coeffs, y)
    }

    fn eval_dy(&self, coeffs: &[Complex<T>], y: Complex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (j, a) in coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * y + a.scale(t::<T>(j as f64));
        }
        acc
    }

    fn eval_ds(&self, s: Complex<T>, y: Complex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        let mut yj = Complex::new(T::one(), T::zero());
        for cj in &self.ys {
            let d = cpoly_derivative(cj);
            acc = acc + cpoly_eval(&d, s) * yj;
            yj = yj * y;
        }
        acc
    }
}

/// Branch points of the cover of the line cut out by `f` under `pi`: the
/// complex roots of the exact fiber discriminant (a resultant over ℚ),
/// deduplicated at tolerance and sorted deterministically. Fails when two
/// distinct branch points fall below the separation threshold.
pub fn branch_points<T: Float>(
    f: &Poly<Rat>,
    pi: &Projection<Rat>,
    seed: u64,
    tol: T,
) -> Result<Vec<Complex<T>>> {
    let cover: PlaneCover<T> = PlaneCover::new(f, pi)?;
    branch_points_of(&cover, seed, tol)
}

fn branch_points_of<T: Float>(
    cover: &PlaneCover<T>,
    seed: u64,
    tol: T,
) -> Result<Vec<Complex<T>>> {
    let fp = &cover.fiber_poly;
    let dfp = fp.derivative(1);
    if dfp.is_zero() {
        return Ok(Vec::new());
    }
    let disc = resultant(fp, &dfp, 1);
    if disc.is_zero() {
        return Err(Error::Degenerate(
            "fiber discriminant vanishes identically: the curve is not reduced".into(),
        ));
    }
    // exact squarefree reduction: multiple roots (images of nodes and
    // cusps) collapse before any floating point is involved
    let disc = {
        let ddisc = disc.derivative(0);
        if ddisc.is_zero() {
            disc
        } else {
            let g = crate::resultant::uni_gcd(&disc, &ddisc, 0);
            match crate::resultant::div_exact(&disc, &g) {
                Some(q) => q,
                None => disc,
            }
        }
    };
    let mut dense: Vec<Complex<T>> = Vec::new();
    for (mono, coeff) in disc.terms() {
        let a = mono.0[0] as usize;
        if dense.len() < a + 1 {
            dense.resize(a + 1, Complex::new(T::zero(), T::zero()));
        }
        let v = coeff
            .to_f64()
            .ok_or_else(|| Error::Numeric("discriminant coefficient out of float range".into()))?;
        dense[a] = Complex::new(t::<T>(v), T::zero());
    }
    // scale down to keep the rootfinder's residual test well-conditioned
    let maxc = dense.iter().fold(T::zero(), |m, a| m.max(a.norm()));
    if maxc > T::zero() {
        for a in dense.iter_mut() {
            *a = a.unscale(maxc);
        }
    }
    let roots = aberth_roots(&dense, seed, tol)?;
    // cluster numerically coincident roots (images of nodes and cusps are
    // multiple roots of the discriminant)
    let mut points: Vec<Complex<T>> = Vec::new();
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut cluster = vec![roots[i]];
        used[i] = true;
        for j in i + 1..roots.len() {
            if !used[j]
                && (roots[j] - roots[i]).norm()
                    <= t::<T>(DEDUPE) * T::one().max(roots[i].norm())
            {
                used[j] = true;
                cluster.push(roots[j]);
            }
        }
        let k = t::<T>(cluster.len() as f64);
        let sum = cluster
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |s, z| s + z);
        points.push(sum.unscale(k));
    }
    points.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    let scale = points.iter().fold(T::one(), |m, z| m.max(z.norm()));
    for w in points.windows(2) {
        if (w[1] - w[0]).norm() < t::<T>(SEPARATION) * scale {
            return Err(Error::Degenerate(
                "near-coincident branch points: reseed the projection".into(),
            ));
        }
    }
    Ok(points)
}

// ---------------------------------------------------------------------
// loop systems

/// One loop of a bouquet: out from the base point to a circle around one
/// branch point, once around counterclockwise, and back. `nodes` is the
/// closed polyline realizing it.
#[derive(Clone, Debug)]
pub struct LoopPath<T: Float> {
    pub center: Complex<T>,
    pub radius: T,
    pub nodes: Vec<Complex<T>>,
}

/// A bouquet of loops around all branch points, based at a point on a
/// large circle, ordered by argument as seen from the base point. The
/// loops are pairwise non-crossing by the clearance checks performed at
/// construction, and their ordered product is the boundary of a disk
/// containing every branch point.
#[derive(Clone, Debug)]
pub struct LoopSystem<T: Float> {
    pub base: Complex<T>,
    pub loops: Vec<LoopPath<T>>,
}

const CIRCLE_NODES: usize = 24;

/// Build the bouquet for the given branch points with a seeded base-point
/// phase, scanning a deterministic sequence of candidate phases until the
/// straight spokes clear every foreign branch disk; if no phase works the
/// radii are halved (tight clusters obstruct less with smaller disks) and
/// the scan repeats. Fails (`Degenerate`) only when no combination yields
/// an embedded bouquet.
pub fn loop_system<T: Float>(branch: &[Complex<T>], seed: u64) -> Result<LoopSystem<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u: f64 = rng.gen_range(0.0..1.0);
    let scale = branch.iter().fold(T::one(), |m, z| m.max(z.norm()));
    let full_radii: Vec<T> = branch
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let nearest = branch
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &c)| (c - b).norm())
                .fold(T::infinity(), T::min);
            if nearest.is_finite() {
                nearest / t::<T>(3.0)
            } else {
                T::one().max(b.norm()) / t::<T>(4.0)
            }
        })
        .collect();

    const GOLDEN: f64 = 0.618_033_988_749_894_9;
    for shrink in 0..4u32 {
        let factor = t::<T>(0.5).powi(shrink as i32);
        let radii: Vec<T> = full_radii.iter().map(|&r| r * factor).collect();
        'phases: for attempt in 0..40u32 {
            let phase = 2.0 * std::f64::consts::PI * (u + attempt as f64 * GOLDEN).fract();
            let base = Complex::from_polar(scale * t::<T>(2.5), t::<T>(phase));
            let mut loops: Vec<LoopPath<T>> = Vec::new();
            for (i, &b) in branch.iter().enumerate() {
                let radius = radii[i];
                let dir = (base - b).unscale((base - b).norm());
                let approach = b + dir.scale(radius);
                // the spoke must stay outside every other loop's disk
                for (j, &c) in branch.iter().enumerate() {
                    if j != i && segment_distance(base, approach, c) < radii[j] * t::<T>(1.05) {
                        continue 'phases;
                    }
                }
                let theta0 = (approach - b).arg();
                let mut nodes = vec![base, approach];
                for k in 1..=CIRCLE_NODES {
                    let ang = theta0
                        + t::<T>(2.0 * std::f64::consts::PI * k as f64 / CIRCLE_NODES as f64);
                    nodes.push(b + Complex::from_polar(radius, ang));
                }
                nodes.push(base);
                loops.push(LoopPath { center: b, radius, nodes });
            }
            loops.sort_by(|p, q| {
                let ap = (p.center - base).arg();
                let aq = (q.center - base).arg();
                ap.partial_cmp(&aq)
                    .unwrap()
                    .then((p.center - base).norm().partial_cmp(&(q.center - base).norm()).unwrap())
            });
            return Ok(LoopSystem { base, loops });
        }
    }
    Err(Error::Degenerate(
        "no base phase keeps every loop spoke clear of foreign branch disks".into(),
    ))
}

fn segment_distance<T: Float>(a: Complex<T>, b: Complex<T>, p: Complex<T>) -> T {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == T::zero() {
        return (p - a).norm();
    }
    let tt = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    let tt = tt.max(T::zero()).min(T::one());
    (a + ab.scale(tt) - p).norm()
}

// ---------------------------------------------------------------------
// fiber transport

/// Result of transporting a fiber along a path: the final fiber (indexed
/// by starting strand) and the braid letters emitted along the way
/// (`+k`/`-k` for the Artin generator `σ_k` and its inverse, 1-based).
#[derive(Clone, Debug, PartialEq)]
pub struct Transported<T: Float> {
    pub fiber: Vec<Complex<T>>,
    pub word: Vec<i32>,
}

/// Continue all `m` roots of the fiber polynomial along the polyline
/// `nodes` by a first-order predictor and Newton corrector with adaptive
/// step halving, emitting a braid letter whenever two strands cross in
/// the phase-rotated real order. The strand order is re-derived after
/// every accepted step; a step that would change it by more than one
/// adjacent swap is halved until each crossing is resolved individually.
pub fn transport_fiber<T: Float>(
    cover: &PlaneCover<T>,
    nodes: &[Complex<T>],
    start_fiber: &[Complex<T>],
    phase: T,
    tol: T,
) -> Result<Transported<T>> {
    let m = cover.m;
    if start_fiber.len() != m {
        return Err(Error::Invalid(format!(
            "start fiber has {} points, cover degree is {m}",
            start_fiber.len()
        )));
    }
    let rot = Complex::from_polar(T::one(), phase);
    let key = |z: Complex<T>| {
        let w = rot * z;
        (w.re, w.im)
    };
    let sorted_order = |fiber: &[Complex<T>]| {
        let mut idx: Vec<usize> = (0..m).collect();
        idx.sort_by(|&a, &b| {
            let (ra, ia) = key(fiber[a]);
            let (rb, ib) = key(fiber[b]);
            ra.partial_cmp(&rb).unwrap().then(ia.partial_cmp(&ib).unwrap())
        });
        idx
    };

    let mut fiber: Vec<Complex<T>> = start_fiber.to_vec();
    // polish the start fiber onto the curve
    let c0 = cover.coeffs_at(nodes[0]);
    for z in fiber.iter_mut() {
        *z = newton(cover, &c0, *z, tol)
            .ok_or_else(|| Error::Numeric("start fiber does not solve the fiber equation".into()))?;
    }
    let mut order = sorted_order(&fiber);
    let mut word: Vec<i32> = Vec::new();

    for seg in nodes.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        if (b - a).norm() == T::zero() {
            continue;
        }
        let mut tcur = T::zero();
        let mut h = T::one();
        let mut scur = a;
        while tcur < T::one() {
            h = h.min(T::one() - tcur);
            let tnew = tcur + h;
            let snew = a + (b - a).scale(tnew);
            let made = try_step(cover, &fiber, scur, snew, tol);
            let accept = match made {
                Some(next) => {
                    let new_order = sorted_order(&next);
                    match swap_kind(&order, &new_order) {
                        SwapKind::None => Some((next, new_order, None)),
                        SwapKind::Adjacent(k) => {
                            let left = order[k];
                            let right = order[k + 1];
                            let (_, il) = key(fiber[left]);
                            let (_, ir) = key(fiber[right]);
                            let sign = if ir > il { 1 } else { -1 };
                            Some((next, new_order, Some(sign * (k as i32 + 1))))
                        }
                        SwapKind::Tangled => None,
                    }
                }
                None => None,
            };
            match accept {
                Some((next, new_order, letter)) => {
                    fiber = next;
                    order = new_order;
                    if let Some(l) = letter {
                        word.push(l);
                    }
                    tcur = tnew;
                    scur = snew;
                    h = (h * t::<T>(1.4)).min(T::one());
                }
                None => {
                    h = h * t::<T>(0.5);
                    if h < t::<T>(1e-9) {
                        return Err(Error::Numeric(format!(
                            "step size underflow near base point ({:e}, {:e}): \
                             path too close to a branch point or strand collision",
                            snew.re.to_f64().unwrap_or(f64::NAN),
                            snew.im.to_f64().unwrap_or(f64::NAN)
                        )));
                    }
                }
            }
        }
    }
    Ok(Transported { fiber, word })
}

fn newton<T: Float>(
    cover: &PlaneCover<T>,
    coeffs: &[Complex<T>],
    start: Complex<T>,
    tol: T,
) -> Option<Complex<T>> {
    let mut z = start;
    for _ in 0..40 {
        let p = cover.eval(coeffs, z);
        let pd = cover.eval_dy(coeffs, z);
        if pd.norm() == T::zero() {
            return None;
        }
        let dz = p / pd;
        z = z - dz;
        if !z.re.is_finite() || !z.im.is_finite() || z.norm() > t::<T>(1e12) {
            return None;
        }
        if dz.norm() <= t::<T>(0.1) * tol * T::one().max(z.norm()) {
            return Some(z);
        }
    }
    None
}

fn try_step<T: Float>(
    cover: &PlaneCover<T>,
    fiber: &[Complex<T>],
    scur: Complex<T>,
    snew: Complex<T>,
    tol: T,
) -> Option<Vec<Complex<T>>> {
    let dmin_old = min_pairwise(fiber);
    let ccur = cover.coeffs_at(scur);
    let cnew = cover.coeffs_at(snew);
    let ds = snew - scur;
    let mut next = Vec::with_capacity(fiber.len());
    for &z in fiber {
        let fy = cover.eval_dy(&ccur, z);
        if fy.norm() == T::zero() {
            return None;
        }
        let fs = cover.eval_ds(scur, z);
        let pred = z - (fs / fy) * ds;
        if (pred - z).norm() > t::<T>(0.25) * dmin_old {
            return None; // motion cap: a step may not cover strand gaps
        }
        let corr = newton(cover, &cnew, pred, tol)?;
        if (corr - pred).norm() > t::<T>(0.3) * dmin_old {
            return None; // likely jumped to a different strand
        }
        next.push(corr);
    }
    if min_pairwise(&next) <= t::<T>(10.0) * tol {
        return None; // two strands collapsed onto one root: retry smaller
    }
    Some(next)
}

fn min_pairwise<T: Float>(fiber: &[Complex<T>]) -> T {
    let mut d = T::infinity();
    for i in 0..fiber.len() {
        for j in i + 1..fiber.len() {
            d = d.min((fiber[i] - fiber[j]).norm());
        }
    }
    d
}

enum SwapKind {
    None,
    Adjacent(usize),
    Tangled,
}

fn swap_kind(old: &[usize], new: &[usize]) -> SwapKind {
    let diffs: Vec<usize> = (0..old.len()).filter(|&i| old[i] != new[i]).collect();
    match diffs.len() {
        0 => SwapKind::None,
        2 if diffs[1] == diffs[0] + 1
            && old[diffs[0]] == new[diffs[1]]
            && old[diffs[1]] == new[diffs[0]] =>
        {
            SwapKind::Adjacent(diffs[0])
        }
        _ => SwapKind::Tangled,
    }
}

/// Cancel adjacent inverse letters until no `σ_k σ_k^{-1}` pair remains.
pub fn free_reduce(word: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

// ---------------------------------------------------------------------
// monodromy data

/// What a single loop does to the fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopMonodromy {
    /// Braid word in Artin letters (`+k`/`-k` = `σ_k^{±1}`, 1-based).
    pub word: Vec<i32>,
    /// Image in the symmetric group, one-line notation on strand
    /// positions: the strand starting at position `p` ends at
    /// `permutation[p]`.
    pub permutation: Vec<usize>,
    pub kind: LoopKind,
}

/// Local type of a loop, read off from its word and permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoopKind {
    /// Conjugate of a single Artin letter: a simple branch point.
    HalfTwist,
    /// Conjugate of a squared letter with trivial permutation: the image
    /// of a node.
    NodeType,
    Other,
}

/// The full braid monodromy of a plane-curve cover: branch points, base
/// fiber (ordered by the phase-rotated real order used for crossings),
/// one `LoopMonodromy` per branch point in bouquet order, and the
/// numerical return error of the composite loop.
#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyData<T: Float> {
    pub m: usize,
    pub branch_points: Vec<Complex<T>>,
    pub base: Complex<T>,
    pub base_fiber: Vec<Complex<T>>,
    pub loops: Vec<LoopMonodromy>,
    /// max distance between the composite-loop transport of a base-fiber
    /// point and its start.
    pub return_error: T,
    pub seed: u64,
}

impl<T: Float> MonodromyData<T> {
    /// Product of the loop permutations in loop order (the permutation of
    /// the composite loop).
    pub fn permutation_product(&self) -> Vec<usize> {
        let mut cur: Vec<usize> = (0..self.m).collect();
        for lp in &self.loops {
            cur = cur.iter().map(|&p| lp.permutation[p]).collect();
        }
        cur
    }

    /// Does the ordered product of all loops act trivially on the fiber?
    pub fn sphere_relation(&self) -> bool {
        self.permutation_product() == (0..self.m).collect::<Vec<_>>()
    }
}

fn word_permutation(m: usize, word: &[i32]) -> Vec<usize> {
    let mut pos: Vec<usize> = (0..m).collect(); // pos[strand-start-position] = current position
    for &l in word {
        let k = l.unsigned_abs() as usize - 1;
        for p in pos.iter_mut() {
            if *p == k {
                *p = k + 1;
            } else if *p == k + 1 {
                *p = k;
            }
        }
    }
    pos
}

fn classify_loop(m: usize, word: &[i32], perm: &[usize]) -> LoopKind {
    let exp: i32 = word.iter().map(|&l| l.signum()).sum();
    let fixed = perm.iter().enumerate().filter(|&(i, &p)| i == p).count();
    let is_transposition = fixed == m - 2 && {
        let moved: Vec<usize> = (0..m).filter(|&i| perm[i] != i).collect();
        moved.len() == 2 && perm[moved[0]] == moved[1] && perm[moved[1]] == moved[0]
    };
    if is_transposition && exp.abs() == 1 {
        LoopKind::HalfTwist
    } else if fixed == m && exp.abs() == 2 {
        LoopKind::NodeType
    } else {
        LoopKind::Other
    }
}

/// Compute the braid monodromy of the cover of the line defined by the
/// plane curve `f` and the projection `pi`: seeded bouquet construction,
/// fiber transport along every loop, and a composite-loop transport whose
/// return error certifies the run numerically. The base-point phase is
/// reseeded up to 3 times on geometric failures. Fixed inputs reproduce
/// the output exactly.
pub fn braid_monodromy<T: Float>(
    f: &Poly<Rat>,
    pi: &Projection<Rat>,
    seed: u64,
    tol: T,
) -> Result<MonodromyData<T>> {
    let cover: PlaneCover<T> = PlaneCover::new(f, pi)?;
    let branch = branch_points_of(&cover, seed, tol)?;
    let mut last: Option<Error> = None;
    for attempt in 0..3u64 {
        let s = seed.wrapping_add(attempt.wrapping_mul(RESEED));
        match monodromy_once(&cover, &branch, s, tol) {
            Ok(data) => return Ok(data),
            Err(e @ (Error::Degenerate(_) | Error::Numeric(_))) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap())
}

fn monodromy_once<T: Float>(
    cover: &PlaneCover<T>,
    branch: &[Complex<T>],
    seed: u64,
    tol: T,
) -> Result<MonodromyData<T>> {
    let m = cover.m;
    let system = loop_system(branch, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9D2C_5680);
    let phase: T = t::<T>(0.05 + 0.2 * rng.gen_range(0.0..1.0f64));
    let rot = Complex::from_polar(T::one(), phase);

    let mut base_fiber = aberth_roots(&cover.coeffs_at(system.base), seed, tol)?;
    if base_fiber.len() != m {
        return Err(Error::Degenerate("base fiber is deficient".into()));
    }
    base_fiber.sort_by(|a, b| {
        let (wa, wb) = (rot * a, rot * b);
        wa.re.partial_cmp(&wb.re).unwrap().then(wa.im.partial_cmp(&wb.im).unwrap())
    });
    if min_pairwise(&base_fiber) <= t::<T>(100.0) * tol {
        return Err(Error::Degenerate("base fiber points nearly collide".into()));
    }

    let match_to_base = |fiber: &[Complex<T>]| -> Result<(Vec<usize>, T)> {
        let mut perm = vec![usize::MAX; m];
        let mut taken = vec![false; m];
        let mut worst = T::zero();
        for (p, z) in fiber.iter().enumerate() {
            let mut best = usize::MAX;
            let mut bd = T::infinity();
            for (q, w) in base_fiber.iter().enumerate() {
                let d = (z - w).norm();
                if d < bd {
                    bd = d;
                    best = q;
                }
            }
            if taken[best] {
                return Err(Error::Numeric("fiber matching is not a bijection".into()));
            }
            taken[best] = true;
            perm[p] = best;
            worst = worst.max(bd);
        }
        Ok((perm, worst))
    };

    let mut loops = Vec::with_capacity(system.loops.len());
    for lp in &system.loops {
        let tr = transport_fiber(cover, &lp.nodes, &base_fiber, phase, tol)?;
        let (perm, err) = match_to_base(&tr.fiber)?;
        if err > t::<T>(10.0) * tol * T::one().max(system.base.norm()) {
            return Err(Error::Numeric(
                "loop transport does not return to the base fiber".into(),
            ));
        }
        if word_permutation(m, &tr.word) != perm {
            return Err(Error::Numeric(
                "braid word and endpoint permutation disagree".into(),
            ));
        }
        let kind = classify_loop(m, &tr.word, &perm);
        loops.push(LoopMonodromy { word: tr.word, permutation: perm, kind });
    }

    // composite loop: concatenate all loops and require a pointwise return
    let mut composite: Vec<Complex<T>> = vec![system.base];
    for lp in &system.loops {
        composite.extend_from_slice(&lp.nodes[1..]);
    }
    let tr = transport_fiber(cover, &composite, &base_fiber, phase, tol)?;
    let return_error = base_fiber
        .iter()
        .zip(tr.fiber.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(T::zero(), T::max);

    Ok(MonodromyData {
        m,
        branch_points: branch.to_vec(),
        base: system.base,
        base_fiber,
        loops,
        return_error,
        seed,
    })
}

// ---------------------------------------------------------------------
// surjectivity certificate

/// One-sided verdict on whether the monodromy hits a full braid group:
/// `Certified` is a proof sketch the checker validated; `Inconclusive`
/// carries the first reason the certificate could not be assembled and
/// never claims a refutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Certified,
    Inconclusive(String),
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::Certified)
    }
}

/// Certify surjectivity of the monodromy representation onto the braid
/// group of the fiber: every loop must be a half-twist (simple
/// branching), the transpositions must act transitively — which already
/// forces the full symmetric group as permutation image — and some
/// subset of them must form a consecutive chain
/// `(z_0 z_1), (z_1 z_2), …` after relabeling the strands, i.e. the
/// transposition graph must contain a Hamiltonian path of half-twists.
pub fn surjectivity_certificate<T: Float>(data: &MonodromyData<T>) -> Certificate {
    let m = data.m;
    if m <= 1 {
        return Certificate::Certified;
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, lp) in data.loops.iter().enumerate() {
        match lp.kind {
            LoopKind::HalfTwist => {
                let moved: Vec<usize> = (0..m).filter(|&p| lp.permutation[p] != p).collect();
                edges.push((moved[0], moved[1]));
            }
            _ => {
                return Certificate::Inconclusive(format!(
                    "loop {i} is not a single half-twist: branching is not simple"
                ));
            }
        }
    }
    // transitivity via union-find over the half-twist edges
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for &(a, b) in &edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    if (1..m).any(|v| find(&mut parent, v) != root) {
        return Certificate::Inconclusive(
            "permutation image is not transitive on the strands".into(),
        );
    }
    // Hamiltonian path in the transposition graph
    let mut adj = vec![vec![false; m]; m];
    for &(a, b) in &edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    fn dfs(adj: &[Vec<bool>], cur: usize, visited: u32, m: usize) -> bool {
        if visited.count_ones() as usize == m {
            return true;
        }
        for nxt in 0..m {
            if adj[cur][nxt] && visited & (1 << nxt) == 0 && dfs(adj, nxt, visited | (1 << nxt), m)
            {
                return true;
            }
        }
        false
    }
    if (0..m).any(|s| dfs(&adj, s, 1 << s, m)) {
        Certificate::Certified
    } else {
        Certificate::Inconclusive(
            "half-twists contain no consecutive chain through all strands".into(),
        )
    }
}

// ---------------------------------------------------------------------
// line restriction for hypersurface covers

/// Restrict a finite projection of a hypersurface to a seeded general
/// line in the target: the preimage plane cuts the hypersurface in a
/// plane curve, and the projection becomes the coordinate projection
/// from the original center, so the braid monodromy machinery applies
/// verbatim. Reseeds the line up to 3 times.
pub fn restrict_to_line_and_monodromy<T: Float>(
    y: &Variety<Rat>,
    pi: &Projection<Rat>,
    seed: u64,
    tol: T,
) -> Result<MonodromyData<T>> {
    if y.gens.len() != 1 {
        return Err(Error::Invalid(format!(
            "{}: line restriction needs a hypersurface",
            y.name
        )));
    }
    let f = &y.gens[0];
    let n2 = y.nvars();
    if pi.rows.len() + 1 != n2 {
        return Err(Error::Invalid(
            "projection must have a zero-dimensional center".into(),
        ));
    }
    let center = {
        let mut ker = kernel_basis(&pi.rows);
        if ker.len() != 1 {
            return Err(Error::Degenerate("projection center is not a point".into()));
        }
        let v = ker.pop().unwrap();
        // bind any free-column sentinels to honest field elements
        v.into_iter()
            .map(|c| c * Rat::from_i64(1, &()))
            .collect::<Vec<Rat>>()
    };
    if f.eval(&center).is_zero() {
        return Err(Error::Degenerate(
            "projection center lies on the hypersurface".into(),
        ));
    }
    let mut last: Option<Error> = None;
    for attempt in 0..3u64 {
        let s = seed.wrapping_add(attempt.wrapping_mul(RESEED));
        let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0x1F83_D9AB);
        let rand_target_point = |rng: &mut ChaCha8Rng| -> Vec<Rat> {
            (0..n2 - 1)
                .map(|_| Rat::from_i64(rng.gen_range(-50..=50), &()))
                .collect()
        };
        let (p, q) = (rand_target_point(&mut rng), rand_target_point(&mut rng));
        let (Some(phat), Some(qhat)) = (solve(&pi.rows, &p), solve(&pi.rows, &q)) else {
            last = Some(Error::Degenerate("line does not lift through the projection".into()));
            continue;
        };
        // parametrize the preimage plane by (a, b, c) -> a·p̂ + b·q̂ + c·z
        let mat: Vec<Vec<Rat>> = (0..n2)
            .map(|i| vec![phat[i].clone(), qhat[i].clone(), center[i].clone()])
            .collect();
        let g = crate::ideal::substitute_linear(std::slice::from_ref(f), &mat)
            .pop()
            .unwrap();
        let m = f.homogeneous_degree().unwrap_or(0);
        if g.degree() != Some(m) || !matches!(g.homogeneous_degree(), Some(d) if d == m) {
            last = Some(Error::Degenerate("degenerate plane section".into()));
            continue;
        }
        let one = Rat::from_i64(1, &());
        let zero = Rat::from_i64(0, &());
        let pi2 = Projection::from_rows(vec![
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), one, zero],
        ])?;
        match braid_monodromy(&g, &pi2, s, tol) {
            Ok(data) => return Ok(data),
            Err(e @ (Error::Degenerate(_) | Error::Numeric(_))) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::VarSet;

    type C64 = Complex<f64>;

    fn q(src: &str, nvars: usize) -> Poly<Rat> {
        crate::parse::parse_poly::<Rat>(src, &VarSet::xs(nvars), Order::DegRevLex, &()).unwrap()
    }

    fn qpi(rows: &[&[i64]]) -> Projection<Rat> {
        Projection::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_i64(v, &())).collect())
                .collect(),
        )
        .unwrap()
    }

    fn cat(name: &str) -> Poly<Rat> {
        crate::catalog::find(name)
            .unwrap()
            .realize::<Rat>(&())
            .unwrap()
            .gens[0]
            .clone()
    }

    #[test]
    fn aberth_finds_known_roots() {
        // (z^2 + 1)(z - 2) = z^3 - 2z^2 + z - 2
        let c: Vec<C64> = [-2.0, 1.0, -2.0, 1.0]
            .iter()
            .map(|&x| Complex::new(x, 0.0))
            .collect();
        let mut roots = aberth_roots(&c, 7, 1e-12).unwrap();
        roots.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((roots[0] - Complex::new(0.0, -1.0)).norm() < 1e-9);
        assert!((roots[1] - Complex::new(2.0, 0.0)).norm() < 1e-9);
        assert!((roots[2] - Complex::new(0.0, 1.0)).norm() < 1e-9);
    }

    #[test]
    fn branch_point_counts_for_smooth_curves() {
        let pi = qpi(&[&[1, 0, 0], &[0, 0, 1]]);
        let conic = branch_points::<f64>(&cat("conic"), &pi, 5, 1e-10).unwrap();
        assert_eq!(conic.len(), 2);
        let gen = Projection::<Rat>::random(2, 1, 8, &()).unwrap();
        let cubic = branch_points::<f64>(&cat("plane-cubic"), &gen, 5, 1e-10).unwrap();
        assert_eq!(cubic.len(), 6);
    }

    #[test]
    fn single_loop_around_a_simple_branch_point_is_a_positive_half_twist() {
        // y^2 = s: branch point at the origin, counterclockwise circle
        let f = q("x1^2 - x0*x2", 3);
        let pi = qpi(&[&[1, 0, 0], &[0, 0, 1]]);
        let cover: PlaneCover<f64> = PlaneCover::new(&f, &pi).unwrap();
        assert_eq!(cover.m, 2);
        let n = 24usize;
        let nodes: Vec<C64> = (0..=n)
            .map(|k| Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect();
        let start = aberth_roots(&cover.coeffs_at(nodes[0]), 3, 1e-12).unwrap();
        let mut start = start;
        start.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        let tr = transport_fiber(&cover, &nodes, &start, 0.03, 1e-12).unwrap();
        assert_eq!(tr.word, vec![1]);
        // the two roots exchange
        assert!((tr.fiber[0] - start[1]).norm() < 1e-9);
        assert!((tr.fiber[1] - start[0]).norm() < 1e-9);
    }

    #[test]
    fn constant_and_reversed_paths_are_trivial() {
        let f = q("x1^2 - x0*x2", 3);
        let pi = qpi(&[&[1, 0, 0], &[0, 0, 1]]);
        let cover: PlaneCover<f64> = PlaneCover::new(&f, &pi).unwrap();
        let s0 = Complex::new(1.0, 0.0);
        let start = aberth_roots(&cover.coeffs_at(s0), 3, 1e-12).unwrap();

        let tr = transport_fiber(&cover, &[s0, s0], &start, 0.03, 1e-12).unwrap();
        assert!(tr.word.is_empty());
        for (a, b) in tr.fiber.iter().zip(start.iter()) {
            assert!((a - b).norm() < 1e-10);
        }

        // out and back along a path that does induce crossings
        let far = Complex::new(-1.3, 0.4);
        let mid = Complex::new(0.2, -0.9);
        let path = [s0, mid, far, mid, s0];
        let tr = transport_fiber(&cover, &path, &start, 0.03, 1e-12).unwrap();
        assert!(!tr.word.is_empty());
        assert!(free_reduce(&tr.word).is_empty());
        for (a, b) in tr.fiber.iter().zip(start.iter()) {
            assert!((a - b).norm() < 1e-9);
        }
    }

    #[test]
    fn conic_monodromy_is_two_half_twists() {
        let pi = qpi(&[&[1, 0, 0], &[0, 0, 1]]);
        let data = braid_monodromy::<f64>(&cat("conic"), &pi, 11, 1e-10).unwrap();
        assert_eq!(data.m, 2);
        assert_eq!(data.loops.len(), 2);
        for lp in &data.loops {
            assert_eq!(lp.kind, LoopKind::HalfTwist);
            assert_eq!(lp.permutation, vec![1, 0]);
        }
        assert!(data.sphere_relation());
        assert!(data.return_error < 1e-9);
        assert!(surjectivity_certificate(&data).is_certified());
    }

    #[test]
    fn cubic_monodromy_is_six_transpositions_and_certified() {
        let pi = Projection::<Rat>::random(2, 1, 8, &()).unwrap();
        let data = braid_monodromy::<f64>(&cat("plane-cubic"), &pi, 11, 1e-10).unwrap();
        assert_eq!(data.m, 3);
        assert_eq!(data.loops.len(), 6);
        for lp in &data.loops {
            assert_eq!(lp.kind, LoopKind::HalfTwist);
        }
        assert!(data.sphere_relation());
        assert!(data.return_error < 1e-9);
        assert!(surjectivity_certificate(&data).is_certified());
    }

    #[test]
    fn monodromy_is_deterministic() {
        let pi = Projection::<Rat>::random(2, 1, 42, &()).unwrap();
        let a = braid_monodromy::<f64>(&cat("plane-cubic"), &pi, 42, 1e-10).unwrap();
        let b = braid_monodromy::<f64>(&cat("plane-cubic"), &pi, 42, 1e-10).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn nodal_curve_shows_a_node_type_loop() {
        let pi = Projection::<Rat>::random(2, 1, 23, &()).unwrap();
        let data = braid_monodromy::<f64>(&cat("nodal-cubic"), &pi, 23, 1e-10).unwrap();
        assert_eq!(data.m, 3);
        // 4 simple branch points + the image of the node
        assert_eq!(data.loops.len(), 5);
        let nodes = data
            .loops
            .iter()
            .filter(|l| l.kind == LoopKind::NodeType)
            .count();
        let twists = data
            .loops
            .iter()
            .filter(|l| l.kind == LoopKind::HalfTwist)
            .count();
        assert_eq!(nodes, 1);
        assert_eq!(twists, 4);
        assert!(data.sphere_relation());
        assert!(matches!(
            surjectivity_certificate(&data),
            Certificate::Inconclusive(msg) if msg.contains("simple")
        ));
    }

    #[test]
    fn reducible_cover_is_inconclusive() {
        // two lines through a point: the sheets never exchange
        let f = q("x0*x1", 3);
        let pi = Projection::<Rat>::random(2, 1, 31, &()).unwrap();
        let data = braid_monodromy::<f64>(&f, &pi, 31, 1e-10).unwrap();
        assert_eq!(data.m, 2);
        assert!(!surjectivity_certificate(&data).is_certified());
        assert!(data.sphere_relation());
    }

    #[test]
    fn line_restriction_of_a_quadric_and_a_cubic_surface() {
        let quadric = crate::catalog::find("quadric-surface")
            .unwrap()
            .realize::<Rat>(&())
            .unwrap();
        let pi = Projection::<Rat>::random(3, 2, 17, &()).unwrap();
        let data = restrict_to_line_and_monodromy::<f64>(&quadric, &pi, 17, 1e-10).unwrap();
        assert_eq!(data.m, 2);
        assert_eq!(data.branch_points.len(), 2);
        assert!(surjectivity_certificate(&data).is_certified());

        let cubic = crate::catalog::find("cubic-surface")
            .unwrap()
            .realize::<Rat>(&())
            .unwrap();
        let pi = Projection::<Rat>::random(3, 2, 19, &()).unwrap();
        let data = restrict_to_line_and_monodromy::<f64>(&cubic, &pi, 19, 1e-10).unwrap();
        assert_eq!(data.m, 3);
        assert_eq!(data.branch_points.len(), 6);
        assert!(data.sphere_relation());
        assert!(surjectivity_certificate(&data).is_certified());
    }
}
