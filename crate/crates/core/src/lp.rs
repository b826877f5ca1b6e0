//! Exact rational feasibility for systems `A x = b, x >= 0`.
//!
//! Dense phase-one simplex with Bland's rule, so it always terminates. Sizes in
//! this crate are tiny (a handful of rows and columns), so no attempt is made
//! at sparsity or numerical cleverness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Returns some `x >= 0` with `A x = b`, or `None` when the system is
/// infeasible. `a` is given row by row; every row must have the same length.
pub fn nonnegative_solution(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![BigRational::zero(); n]);
    }
    let width = n + m + 1;
    let rhs = width - 1;

    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), n, "ragged constraint matrix");
        let flip = bi.is_negative();
        let mut t = vec![BigRational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            t[j] = if flip { -v.clone() } else { v.clone() };
        }
        t[n + i] = BigRational::one();
        t[rhs] = if flip { -bi.clone() } else { bi.clone() };
        rows.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost = vec![BigRational::zero(); width];
    for row in &rows {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[rhs] -= &row[rhs];
    }

    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in rows.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[rhs] / &row[enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((pivot_row, _)) = leave else {
            // The phase-one objective is bounded below by zero.
            unreachable!("phase-one simplex cannot be unbounded");
        };
        pivot(&mut rows, &mut cost, pivot_row, enter);
        basis[pivot_row] = enter;
    }

    if !cost[rhs].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = rows[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(rows: &mut [Vec<BigRational>], cost: &mut [BigRational], r: usize, c: usize) {
    let p = rows[r][c].clone();
    for v in rows[r].iter_mut() {
        *v /= &p;
    }
    let pivot_row = rows[r].clone();
    for (i, row) in rows.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (v, pv) in row.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}

/// Smallest positive integer multiple of `v` with coprime entries. Signs are
/// preserved; the zero vector maps to zeros.
pub fn primitive_integer_multiple(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return scaled;
    }
    scaled.into_iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| q(v)).collect())
            .collect()
    }

    #[test]
    fn finds_feasible_point() {
        // x + y = 3, x - y = 1  ->  (2, 1)
        let a = mat(&[&[1, 1], &[1, -1]]);
        let x = nonnegative_solution(&a, &[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
    }

    #[test]
    fn detects_infeasibility() {
        // x + y = -1 has no nonnegative solution.
        let a = mat(&[&[1, 1]]);
        assert!(nonnegative_solution(&a, &[q(-1)]).is_none());
        // x = 1 and x = 2.
        let a = mat(&[&[1], &[1]]);
        assert!(nonnegative_solution(&a, &[q(1), q(2)]).is_none());
    }

    #[test]
    fn handles_fractional_vertices() {
        // -n + 60 m = 0, n = 1  ->  m = 1/60
        let a = mat(&[&[-1, 60], &[1, 0]]);
        let x = nonnegative_solution(&a, &[q(0), q(1)]).unwrap();
        assert_eq!(x[1], BigRational::new(1.into(), 60.into()));
        assert_eq!(
            primitive_integer_multiple(&x),
            vec![BigInt::from(60), BigInt::from(1)]
        );
    }

    #[test]
    fn degenerate_redundant_rows() {
        let a = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let x = nonnegative_solution(&a, &[q(6), q(12), q(2)]).unwrap();
        let lhs: Vec<BigRational> = a
            .iter()
            .map(|r| r.iter().zip(&x).map(|(c, v)| c * v).sum())
            .collect();
        assert_eq!(lhs, vec![q(6), q(12), q(2)]);
        assert!(x.iter().all(|v| !v.is_negative()));
    }
}
