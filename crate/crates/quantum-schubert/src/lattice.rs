//! Integer lattice utilities: Hermite normal form, integer kernels, Smith
//! invariant factors and exact rational linear solves.
//!
//! Matrices are small (at most 8 columns for the lattices that occur), so
//! everything is dense and uses `i128` intermediates with overflow checks.

#![allow(clippy::needless_range_loop)] // row operations index two rows of one matrix

use num::{BigRational, One, Zero};

fn to_i64(x: i128) -> i64 {
    i64::try_from(x).expect("lattice entry overflowed i64")
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns the nonzero rows of the echelon form. Pivots are positive and the
/// entries above each pivot are reduced into `[0, pivot)`. Two generating sets
/// span the same lattice iff their HNFs are equal.
pub fn hnf(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut prow = 0;
    for c in 0..ncols {
        if prow >= m.len() {
            break;
        }
        loop {
            // pick the row (from prow) with the smallest nonzero |entry| in column c
            let mut best: Option<usize> = None;
            for i in prow..m.len() {
                if m[i][c] != 0 && best.is_none_or(|b| m[i][c].abs() < m[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(prow, b);
            let mut done = true;
            for i in prow + 1..m.len() {
                if m[i][c] != 0 {
                    let q = m[i][c].div_euclid(m[prow][c]);
                    for k in 0..ncols {
                        let t = m[prow][k].checked_mul(q).expect("hnf overflow");
                        m[i][k] -= t;
                    }
                    if m[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if prow < m.len() && m[prow][c] != 0 {
            if m[prow][c] < 0 {
                for k in 0..ncols {
                    m[prow][k] = -m[prow][k];
                }
            }
            let p = m[prow][c];
            for i in 0..prow {
                let q = m[i][c].div_euclid(p);
                if q != 0 {
                    for k in 0..ncols {
                        m[i][k] -= q * m[prow][k];
                    }
                }
            }
            prow += 1;
        }
    }
    m.truncate(prow);
    m.into_iter()
        .map(|r| r.into_iter().map(to_i64).collect())
        .collect()
}

/// A basis (in Hermite normal form) of the integer kernel `{x : A x = 0}` of
/// the `r × n` matrix `a`.
pub fn integer_kernel(a: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let r = a.len();
    // Augmented rows [A^T | I_n]; row-reduce the first r columns.
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|j| {
            let mut row: Vec<i128> = (0..r).map(|i| a[i][j] as i128).collect();
            row.extend((0..n).map(|k| i128::from(k == j)));
            row
        })
        .collect();
    let width = r + n;
    let mut prow = 0;
    for c in 0..r {
        loop {
            let mut best: Option<usize> = None;
            for i in prow..n {
                if m[i][c] != 0 && best.is_none_or(|b| m[i][c].abs() < m[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(prow, b);
            let mut done = true;
            for i in prow + 1..n {
                if m[i][c] != 0 {
                    let q = m[i][c].div_euclid(m[prow][c]);
                    for k in 0..width {
                        m[i][k] -= q * m[prow][k];
                    }
                    if m[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                prow += 1;
                break;
            }
        }
    }
    let kernel: Vec<Vec<i64>> = m[prow..]
        .iter()
        .map(|row| row[r..].iter().map(|&x| to_i64(x)).collect())
        .collect();
    hnf(&kernel)
}

/// Invariant factors (the nonzero diagonal of the Smith normal form, each
/// positive, each dividing the next) of an integer matrix.
pub fn smith_invariants(mat: &[Vec<i64>]) -> Vec<i64> {
    let mut m: Vec<Vec<i128>> = mat
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // locate the smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        let p = m[t][t];
        let mut clean = true;
        for i in t + 1..rows {
            let q = m[i][t].div_euclid(p);
            if q != 0 {
                for k in t..cols {
                    m[i][k] -= q * m[t][k];
                }
            }
            if m[i][t] != 0 {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = m[t][j].div_euclid(p);
            if q != 0 {
                for k in t..rows {
                    m[k][j] -= q * m[k][t];
                }
            }
            if m[t][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold any row with an entry not divisible by p into row t
        let mut fold = None;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if m[i][j] % p != 0 {
                    fold = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = fold {
            for k in t..cols {
                m[t][k] += m[i][k];
            }
            continue;
        }
        diag.push(to_i64(p.abs()));
        t += 1;
    }
    diag
}

/// Solves the square rational system `a x = b` exactly.
/// Returns `None` when `a` is singular.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for k in c..=n {
            m[c][k] = &m[c][k] * &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=n {
                    let t = &f * &m[c][k];
                    m[i][k] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inverse of a square rational matrix, or `None` if singular.
pub fn invert_rational(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for k in 0..2 * n {
            if !m[c][k].is_zero() {
                m[c][k] = &m[c][k] * &inv;
            }
        }
        let pivot_row = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for k in 0..2 * n {
                    if !pivot_row[k].is_zero() {
                        row[k] -= &f * &pivot_row[k];
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Formats a rational as `"p/q"` (always with an explicit denominator).
pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: num::BigInt = p.trim().parse().ok()?;
            let q: num::BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_equivalent_generators_agree() {
        let a = hnf(&[vec![2, 0], vec![0, 3]]);
        let b = hnf(&[vec![2, 3], vec![4, 3], vec![0, 6]]);
        assert_eq!(a, b);
        assert_eq!(a, vec![vec![2, 0], vec![0, 3]]);
    }

    #[test]
    fn kernel_of_a2_pairing_row() {
        // <alpha_1, lambda> = 2 l1 - l2 in A2
        let k = integer_kernel(&[vec![2, -1]], 2);
        assert_eq!(k, vec![vec![1, 2]]);
    }

    #[test]
    fn smith_invariants_small() {
        assert_eq!(smith_invariants(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_invariants(&[vec![4]]), vec![4]);
    }

    #[test]
    fn rational_solve_and_invert() {
        let r = |x: i64| BigRational::from_integer(x.into());
        let a = vec![vec![r(2), r(-1)], vec![r(-1), r(2)]];
        let x = solve_rational(&a, &[r(1), r(0)]).unwrap();
        assert_eq!(x, vec![BigRational::new(2.into(), 3.into()), BigRational::new(1.into(), 3.into())]);
        let inv = invert_rational(&a).unwrap();
        assert_eq!(inv[0][0], BigRational::new(2.into(), 3.into()));
        assert!(invert_rational(&[vec![r(1), r(2)], vec![r(2), r(4)]]).is_none());
    }

    #[test]
    fn rational_round_trip() {
        let x = parse_rational("-3/6").unwrap();
        assert_eq!(rational_string(&x), "-1/2");
        assert_eq!(parse_rational("5").unwrap(), BigRational::from_integer(5.into()));
        assert!(parse_rational("1/0").is_none());
    }
}
