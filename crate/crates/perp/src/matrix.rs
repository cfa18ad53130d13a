//! Determinants and minors of matrices with polynomial entries, used for
//! Sylvester resultants, Jacobian rank conditions, and tangency loci.

use std::collections::HashMap;

use crate::field::Scalar;
use crate::monomial::Order;
use crate::poly::Poly;

/// Determinant of a square matrix of polynomials (expansion along rows with
/// memoization over column subsets; fine for the small sizes we meet).
pub fn det<F: Scalar>(m: &[Vec<Poly<F>>]) -> Poly<F> {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix");
    assert!(n <= 16, "determinant size out of scope");
    let (nv, ord) = (m[0][0].nvars(), m[0][0].order());
    let full: u32 = (1 << n) - 1;
    let mut memo: HashMap<u32, Poly<F>> = HashMap::new();
    det_rec(m, full, &mut memo, nv, ord)
}

fn det_rec<F: Scalar>(
    m: &[Vec<Poly<F>>],
    cols: u32,
    memo: &mut HashMap<u32, Poly<F>>,
    nv: usize,
    ord: Order,
) -> Poly<F> {
    let n = m.len();
    let k = cols.count_ones() as usize; // rows n-k..n remain
    if k == 0 {
        return Poly::constant(F::one(), nv, ord);
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let row = n - k;
    let mut acc = Poly::zero(nv, ord);
    let mut sign_neg = false;
    for j in 0..n {
        if cols & (1 << j) == 0 {
            continue;
        }
        if !m[row][j].is_zero() {
            let sub = det_rec(m, cols & !(1 << j), memo, nv, ord);
            let prod = m[row][j].mul(&sub);
            acc = if sign_neg {
                acc.sub(&prod)
            } else {
                acc.add(&prod)
            };
        }
        sign_neg = !sign_neg;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// All `size`×`size` minors of a rectangular polynomial matrix, enumerated
/// in lexicographic order of (row subset, column subset) so downstream
/// choices are deterministic.
pub fn minors<F: Scalar>(m: &[Vec<Poly<F>>], size: usize) -> Vec<Poly<F>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    if size == 0 || size > rows || size > cols {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rsub in subsets(rows, size) {
        for csub in subsets(cols, size) {
            let sub: Vec<Vec<Poly<F>>> = rsub
                .iter()
                .map(|&r| csub.iter().map(|&c| m[r][c].clone()).collect())
                .collect();
            out.push(det(&sub));
        }
    }
    out
}

/// k-subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Reduced row echelon form of a scalar matrix, in place. Returns the
/// pivot column of each nonzero row, in order.
pub fn rref<F: Scalar>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot must be invertible");
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = m[r][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a scalar matrix.
pub fn scalar_rank<F: Scalar>(m: &[Vec<F>]) -> usize {
    let mut work: Vec<Vec<F>> = m.to_vec();
    rref(&mut work).len()
}

/// One solution of `a·x = b` (free variables set to 0), or `None` when
/// the system is inconsistent.
pub fn solve<F: Scalar>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    assert_eq!(a.len(), b.len(), "matrix/vector shape mismatch");
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None; // a pivot in the constants column: inconsistent
    }
    let mut x = vec![F::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// Product of two scalar matrices. Panics on shape mismatch.
pub fn mat_mul<F: Scalar>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let inner = b.len();
    assert!(a.iter().all(|row| row.len() == inner), "matrix shape mismatch");
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .map(|t| row[t].clone() * b[t][j].clone())
                        .fold(F::zero(), |acc, v| acc + v)
                })
                .collect()
        })
        .collect()
}

/// Inverse of a square scalar matrix, or `None` if singular.
pub fn mat_inverse<F: Scalar>(m: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return None;
    }
    // A unit with the same field context as the entries, so the augmented
    // identity works in prime fields whose elements carry their modulus.
    let unit = m
        .iter()
        .flatten()
        .find(|x| !x.is_zero())
        .map(|x| x.unit_like())?;
    let mut work: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { unit.clone() } else { F::zero() });
            }
            r
        })
        .collect();
    let pivots = rref(&mut work);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Basis of the right kernel of a scalar matrix, one vector per free
/// column, ordered by that column's index.
pub fn kernel_basis<F: Scalar>(m: &[Vec<F>]) -> Vec<Vec<F>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut work: Vec<Vec<F>> = m.to_vec();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![F::zero(); cols];
            v[fc] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = F::zero() - work[row][fc].clone();
            }
            v
        })
        .collect()
}
