//! Column Hermite normal form of integer matrices with three rows.
//!
//! Convention: the result is a square upper-triangular matrix whose columns
//! span the same lattice as the input columns, with positive diagonal and
//! every entry to the right of a diagonal entry reduced into `[0, diag)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub const ROWS: usize = 3;

/// A `3 x 3` integer matrix, row-major.
pub type Square = [[BigInt; ROWS]; ROWS];

/// Column HNF of `columns` (each a vector of length 3).
pub fn hnf(columns: &[[BigInt; ROWS]]) -> Result<Square> {
    hnf_with_transform(columns).map(|(h, _)| h)
}

/// Column HNF together with the unimodular bookkeeping: `h[..][k]` equals
/// `sum_i columns[i] * transform[k][i]`.
pub fn hnf_with_transform(columns: &[[BigInt; ROWS]]) -> Result<(Square, Vec<Vec<BigInt>>)> {
    let n = columns.len();
    // Each working column carries its coordinates followed by its expression
    // in terms of the input columns.
    let mut cols: Vec<Vec<BigInt>> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut v: Vec<BigInt> = c.to_vec();
            v.extend((0..n).map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            v
        })
        .collect();

    let mut pivots: Vec<Vec<BigInt>> = Vec::with_capacity(ROWS);
    for row in (0..ROWS).rev() {
        // Euclid on the entries of this row, by column operations.
        loop {
            let nonzero: Vec<usize> = (0..cols.len())
                .filter(|&i| !cols[i][row].is_zero())
                .collect();
            if nonzero.len() <= 1 {
                break;
            }
            let smallest = *nonzero
                .iter()
                .min_by(|&&a, &&b| cols[a][row].abs().cmp(&cols[b][row].abs()))
                .expect("nonempty");
            let pivot = cols[smallest].clone();
            for &i in &nonzero {
                if i == smallest {
                    continue;
                }
                let q = cols[i][row].div_floor(&pivot[row]);
                for (v, p) in cols[i].iter_mut().zip(&pivot) {
                    *v -= &q * p;
                }
            }
        }
        let Some(idx) = (0..cols.len()).find(|&i| !cols[i][row].is_zero()) else {
            return Err(Error::RankDeficient);
        };
        let mut pivot = cols.swap_remove(idx);
        if pivot[row].is_negative() {
            for v in pivot.iter_mut() {
                *v = -&*v;
            }
        }
        pivots.push(pivot);
    }
    pivots.reverse();

    // Reduce entries right of the diagonal, nearest rows first.
    for j in 0..ROWS {
        for i in (0..j).rev() {
            let q = pivots[j][i].div_floor(&pivots[i][i]);
            if q.is_zero() {
                continue;
            }
            let col_i = pivots[i].clone();
            for (v, p) in pivots[j].iter_mut().zip(&col_i) {
                *v -= &q * p;
            }
        }
    }

    let h: Square = std::array::from_fn(|r| std::array::from_fn(|c| pivots[c][r].clone()));
    let transform = pivots.into_iter().map(|c| c[ROWS..].to_vec()).collect();
    Ok((h, transform))
}

/// Solves `h c = v` for integer `c` by back substitution.
pub fn solve_upper(h: &Square, v: &[BigInt; ROWS]) -> Option<[BigInt; ROWS]> {
    let mut c: [BigInt; ROWS] = Default::default();
    for i in (0..ROWS).rev() {
        let mut rhs = v[i].clone();
        for j in i + 1..ROWS {
            rhs -= &h[i][j] * &c[j];
        }
        let (q, r) = rhs.div_rem(&h[i][i]);
        if !r.is_zero() {
            return None;
        }
        c[i] = q;
    }
    Some(c)
}

pub fn is_hnf(h: &Square) -> bool {
    (0..ROWS).all(|i| {
        h[i][i].is_positive()
            && (0..i).all(|j| h[i][j].is_zero())
            && (i + 1..ROWS).all(|j| !h[i][j].is_negative() && h[i][j] < h[i][i])
    })
}

pub fn columns_of(h: &Square) -> Vec<[BigInt; ROWS]> {
    (0..ROWS)
        .map(|c| std::array::from_fn(|r| h[r][c].clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(v: [i64; 3]) -> [BigInt; 3] {
        v.map(BigInt::from)
    }

    fn square(rows: [[i64; 3]; 3]) -> Square {
        rows.map(|r| r.map(BigInt::from))
    }

    fn spans(h: &Square, columns: &[[BigInt; 3]]) -> bool {
        columns.iter().all(|c| solve_upper(h, c).is_some())
    }

    #[test]
    fn identity_is_fixed() {
        let id = square([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(hnf(&columns_of(&id)).unwrap(), id);
    }

    #[test]
    fn appended_column_keeps_the_lattice() {
        let cols = [
            col([2, 0, 0]),
            col([0, 2, 0]),
            col([0, 0, 2]),
            col([1, 1, 1]),
        ];
        let h = hnf(&cols).unwrap();
        assert!(is_hnf(&h));
        assert!(spans(&h, &cols));
        // Conversely each HNF column is an integer combination of the inputs:
        // the lattice 2Z^3 + Z(1,1,1) has index 4 in Z^3.
        let det = &h[0][0] * &h[1][1] * &h[2][2];
        assert_eq!(det, BigInt::from(4));
        assert_eq!(hnf(&columns_of(&h)).unwrap(), h);
    }

    #[test]
    fn transform_reproduces_columns() {
        let cols = [
            col([3, -4, 7]),
            col([5, 1, 0]),
            col([-2, 6, 9]),
            col([1, 1, 1]),
        ];
        let (h, u) = hnf_with_transform(&cols).unwrap();
        for k in 0..3 {
            for r in 0..3 {
                let v: BigInt = cols.iter().zip(&u[k]).map(|(c, x)| &c[r] * x).sum();
                assert_eq!(v, h[r][k]);
            }
        }
    }

    #[test]
    fn rank_deficient_input() {
        let cols = [col([1, 2, 3]), col([2, 4, 6])];
        assert_eq!(hnf(&cols), Err(Error::RankDeficient));
    }
}
