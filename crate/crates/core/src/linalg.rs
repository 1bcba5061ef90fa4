//! Exact linear algebra over Q and Z.
//!
//! Rational matrices are cleared to integer rows and reduced fraction-free
//! with first-nonzero pivoting, so rank and kernel computations never need a
//! tolerance. Integer routines (saturated kernels, Hermite and Smith forms)
//! work with unimodular operations only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::num::{primitive_integral, Q};

fn row_content(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

fn to_integer_row(row: &[Q]) -> Vec<BigInt> {
    let den = crate::num::common_denominator(row);
    row.iter()
        .map(|x| (x * Q::from_integer(den.clone())).to_integer())
        .collect()
}

/// Reduced echelon form of an integer matrix: every pivot column is zero
/// outside its pivot row.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the right kernel, one primitive integral vector per free
    /// column (free columns in increasing order).
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Q::zero(); self.ncols];
                x[f] = Q::one();
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    x[pc] = -Q::new(row[f].clone(), row[pc].clone());
                }
                primitive_integral(&x)
            })
            .collect()
    }
}

pub fn echelon_int(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(i) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, i);
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            let (pivot_row, target) = if i < r {
                let (lo, hi) = m.split_at_mut(r);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = m.split_at_mut(i);
                (&lo[r], &mut hi[0])
            };
            for (t, pr) in target.iter_mut().zip(pivot_row.iter()) {
                *t = &a * &*t - &b * pr;
            }
            let g = row_content(target);
            if !g.is_zero() && !g.is_one() {
                for t in target.iter_mut() {
                    *t = &*t / &g;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Echelon { rows: m, pivots, ncols }
}

pub fn echelon_q(m: &[Vec<Q>], ncols: usize) -> Echelon {
    let rows = m.iter().map(|r| to_integer_row(r)).collect();
    echelon_int(rows, ncols)
}

pub fn rank_q(m: &[Vec<Q>], ncols: usize) -> usize {
    echelon_q(m, ncols).rank()
}

/// Right kernel `{x : m x = 0}` as primitive integral vectors.
pub fn kernel_q(m: &[Vec<Q>], ncols: usize) -> Vec<Vec<BigInt>> {
    echelon_q(m, ncols).kernel()
}

/// Unique solution of `a x = b` over Q, or `None` if the system is
/// inconsistent or underdetermined.
pub fn solve_q(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, x)| row.iter().cloned().chain(std::iter::once(x.clone())).collect())
        .collect();
    let e = echelon_q(&aug, ncols + 1);
    if e.pivots.contains(&ncols) || e.rank() != ncols {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (row, &pc) in e.rows.iter().zip(&e.pivots) {
        x[pc] = Q::new(row[ncols].clone(), row[pc].clone());
    }
    Some(x)
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Fraction-free (Bareiss) determinant. The empty matrix has determinant 1.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

pub fn det_q(m: &[Vec<Q>]) -> Q {
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| {
            let den = crate::num::common_denominator(r);
            scale *= &den;
            r.iter()
                .map(|x| (x * Q::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    Q::new(det_bareiss(rows), scale)
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

/// Row Hermite normal form: non-zero rows only, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hnf_rows(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        loop {
            let candidate = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()));
            let Some(i) = candidate else { break };
            m.swap(r, i);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let pivot_row = m[r].clone();
                for (t, p) in m[i].iter_mut().zip(pivot_row.iter()) {
                    *t -= &q * p;
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pivot_row = m[r].clone();
            for i in 0..r {
                let q = m[i][c].div_floor(&pivot_row[c]);
                if q.is_zero() {
                    continue;
                }
                for (t, p) in m[i].iter_mut().zip(pivot_row.iter()) {
                    *t -= &q * p;
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    m
}

/// Basis of the integer kernel `{x ∈ Z^d : a x = 0}`. The returned basis spans
/// the full (saturated) kernel lattice and is in row Hermite normal form.
pub fn integer_kernel(a: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    // columns of `work` are columns of a; `u` records the column operations
    let mut work: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let col_op = |m: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for row in m.iter_mut() {
            let s = row[src].clone();
            row[dst] -= q * s;
        }
    };
    let col_swap = |m: &mut Vec<Vec<BigInt>>, x: usize, y: usize| {
        for row in m.iter_mut() {
            row.swap(x, y);
        }
    };
    let mut c = 0;
    for i in 0..work.len() {
        if c == ncols {
            break;
        }
        loop {
            let candidate = (c..ncols)
                .filter(|&j| !work[i][j].is_zero())
                .min_by(|&x, &y| work[i][x].abs().cmp(&work[i][y].abs()));
            let Some(j) = candidate else { break };
            col_swap(&mut work, c, j);
            col_swap(&mut u, c, j);
            let mut done = true;
            for j in c + 1..ncols {
                if work[i][j].is_zero() {
                    continue;
                }
                let q = work[i][j].div_floor(&work[i][c]);
                col_op(&mut work, j, c, &q);
                col_op(&mut u, j, c, &q);
                if !work[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                c += 1;
                break;
            }
        }
    }
    let basis: Vec<Vec<BigInt>> = (c..ncols)
        .map(|j| u.iter().map(|row| row[j].clone()).collect())
        .collect();
    hnf_rows(basis, ncols)
}

/// Non-zero invariant factors of an integer matrix, each dividing the next.
pub fn smith_invariants(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest non-zero entry in the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = m[i][t].div_floor(&m[t][t]);
            let pr = m[t].clone();
            for (x, p) in m[i].iter_mut().zip(pr.iter()) {
                *x -= &q * p;
            }
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = m[t][j].div_floor(&m[t][t]);
            for row in m.iter_mut() {
                let s = row[t].clone();
                row[j] -= &q * s;
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold any offending entry into the pivot row
        let offender = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
        if let Some((i, _)) = offender {
            let src = m[i].clone();
            for (x, s) in m[t].iter_mut().zip(src.iter()) {
                *x += s;
            }
            continue;
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Solve `x` in `cols · x = b` over Z, where `cols` lists column vectors of a
/// full-column-rank matrix. Returns `None` if no (integral) solution exists.
pub fn solve_columns_integral(cols: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let d = b.len();
    let k = cols.len();
    let aug: Vec<Vec<BigInt>> = (0..d)
        .map(|i| {
            let mut row: Vec<BigInt> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let e = echelon_int(aug, k + 1);
    if e.pivots.contains(&k) || e.rank() != k {
        return None;
    }
    let mut x = vec![BigInt::zero(); k];
    for (row, &pc) in e.rows.iter().zip(&e.pivots) {
        let (quo, rem) = row[k].div_rem(&row[pc]);
        if !rem.is_zero() {
            return None;
        }
        x[pc] = quo;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{q, qf};

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    /// Cofactor expansion, independent of the Bareiss path.
    fn det_cofactor(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][j] * det_cofactor(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = bi(&[&[2, 0, 2, 2], &[0, 2, 0, 2], &[2, 0, 4, 4], &[2, 2, 4, 10]]);
        assert_eq!(det_cofactor(&m), BigInt::from(32));
        assert_eq!(det_bareiss(m), BigInt::from(32));
        let z = bi(&[&[0, 1], &[1, 0]]);
        assert_eq!(det_bareiss(z), BigInt::from(-1));
        assert_eq!(det_bareiss(Vec::new()), BigInt::one());
        let sing = bi(&[&[1, 2], &[2, 4]]);
        assert_eq!(det_bareiss(sing), BigInt::zero());
    }

    #[test]
    fn rational_kernel_and_rank() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(1), q(0), qf(1, 2)]];
        assert_eq!(rank_q(&m, 3), 2);
        let k = kernel_q(&m, 3);
        assert_eq!(k.len(), 1);
        for row in &m {
            let s = row.iter().zip(&k[0]).fold(Q::zero(), |acc, (a, b)| acc + a * Q::from_integer(b.clone()));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn saturated_integer_kernel() {
        // x - y = 0 over Z^3 ... kernel generated by (1,1,0), (0,0,1)
        let a = bi(&[&[2, -2, 0]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k, bi(&[&[1, 1, 0], &[0, 0, 1]]));
        let full = integer_kernel(&bi(&[&[0, 0]]), 2);
        assert_eq!(full.len(), 2);
    }

    #[test]
    fn smith_form() {
        let a = bi(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_invariants(&a);
        assert_eq!(s, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let b = bi(&[&[2, 0], &[0, 3]]);
        assert_eq!(smith_invariants(&b), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn integral_solve() {
        let cols = bi(&[&[1, 1, 0], &[0, 0, 1]]);
        let b: Vec<BigInt> = [3, 3, -2].iter().map(|&x| BigInt::from(x)).collect();
        let x = solve_columns_integral(&cols, &b).unwrap();
        assert_eq!(x, vec![BigInt::from(3), BigInt::from(-2)]);
        let bad: Vec<BigInt> = [1, 2, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert!(solve_columns_integral(&cols, &bad).is_none());
    }

    #[test]
    fn rational_solve() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve_q(&a, &[q(1), q(2)]).unwrap();
        assert_eq!(x, vec![qf(1, 5), qf(3, 5)]);
        let singular = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve_q(&singular, &[q(1), q(3)]).is_none());
        assert!(solve_q(&singular, &[q(1), q(2)]).is_none());
    }
}
