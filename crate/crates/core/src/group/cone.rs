//! Integer membership in the monoid generated by finitely many vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ZdElement;
use crate::error::{Error, Result};
use crate::lp;

/// Coefficient cap for the fallback search on cones that are neither
/// linearly independent nor pointed.
pub const UNBOUNDED_COEFFICIENT_CAP: u32 = 64;

#[derive(Clone, Debug)]
pub(crate) enum ConeSolver {
    /// Linearly independent generators: the rational solution is unique.
    /// For a square system the inverse matrix is kept.
    Independent {
        inverse: Option<Vec<Vec<BigRational>>>,
    },
    /// Some integer functional is `>= 1` on every generator, which bounds
    /// every coefficient.
    Pointed { functional: Vec<BigInt> },
    /// Dependent and not pointed (the cone contains a line).
    Unbounded,
}

impl ConeSolver {
    pub(crate) fn new(rank: usize, generators: &[ZdElement]) -> Self {
        if matrix_rank(generators, rank) == generators.len() {
            let inverse = (generators.len() == rank)
                .then(|| invert(&system(generators, &ZdElement::zero(rank)).0));
            return ConeSolver::Independent { inverse };
        }
        match positive_functional(rank, generators) {
            Some(functional) => ConeSolver::Pointed { functional },
            None => ConeSolver::Unbounded,
        }
    }

    pub(crate) fn solve(&self, generators: &[ZdElement], v: &ZdElement) -> Option<Vec<BigInt>> {
        match self {
            ConeSolver::Independent { inverse } => {
                let x = match inverse {
                    Some(inv) => {
                        let x: Vec<BigRational> = inv
                            .iter()
                            .map(|row| {
                                row.iter()
                                    .zip(v.coords())
                                    .map(|(c, vi)| c * BigRational::from_integer(vi.clone()))
                                    .sum()
                            })
                            .collect();
                        if x.iter().any(Signed::is_negative) {
                            return None;
                        }
                        x
                    }
                    None => {
                        let (a, b) = system(generators, v);
                        lp::nonnegative_solution(&a, &b)?
                    }
                };
                if x.iter().all(|q| q.is_integer()) {
                    Some(x.into_iter().map(|q| q.to_integer()).collect())
                } else {
                    None
                }
            }
            ConeSolver::Pointed { functional } => {
                let weights: Vec<BigInt> = generators.iter().map(|p| p.dot(functional)).collect();
                let mut m = vec![BigInt::zero(); generators.len()];
                search(
                    generators,
                    &mut m,
                    0,
                    v.clone(),
                    &|rem: &ZdElement, j: usize| {
                        let budget = rem.dot(functional);
                        if budget.is_negative() {
                            None
                        } else {
                            Some(budget.div_floor(&weights[j]))
                        }
                    },
                )
                .then_some(m)
            }
            ConeSolver::Unbounded => {
                // Rational infeasibility rules out integer solutions outright.
                let (a, b) = system(generators, v);
                lp::nonnegative_solution(&a, &b)?;
                let mut m = vec![BigInt::zero(); generators.len()];
                let cap = BigInt::from(UNBOUNDED_COEFFICIENT_CAP);
                search(generators, &mut m, 0, v.clone(), &|_: &ZdElement, _| {
                    Some(cap.clone())
                })
                .then_some(m)
            }
        }
    }
}

/// Depth-first search over coefficient vectors; `bound(rem, j)` gives the
/// largest coefficient worth trying for generator `j`, or `None` to prune.
fn search(
    generators: &[ZdElement],
    m: &mut [BigInt],
    j: usize,
    rem: ZdElement,
    bound: &dyn Fn(&ZdElement, usize) -> Option<BigInt>,
) -> bool {
    if j == generators.len() {
        return rem.is_zero();
    }
    let Some(hi) = bound(&rem, j) else {
        return false;
    };
    let mut c = BigInt::zero();
    let mut cur = rem;
    while c <= hi {
        if search(generators, m, j + 1, cur.clone(), bound) {
            m[j] = c;
            return true;
        }
        cur = cur.sub(&generators[j]);
        c += 1;
    }
    false
}

fn system(generators: &[ZdElement], v: &ZdElement) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let rank = v.rank();
    let a = (0..rank)
        .map(|i| {
            generators
                .iter()
                .map(|p| BigRational::from_integer(p.coords()[i].clone()))
                .collect()
        })
        .collect();
    let b = v
        .coords()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    (a, b)
}

fn matrix_rank(vectors: &[ZdElement], rank: usize) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|p| {
            p.coords()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        })
        .collect();
    let mut r = 0;
    for col in 0..rank {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot_row[col];
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
        r += 1;
    }
    r
}

/// Inverse of an invertible square matrix by Gauss-Jordan elimination.
fn invert(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut aug: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&i| !aug[i][col].is_zero())
            .expect("invertible matrix");
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for v in aug[col].iter_mut() {
            *v /= &p;
        }
        let pivot_row = aug[col].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
    }
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// An integer `lambda` with `lambda . p >= 1` for every generator, if any.
fn positive_functional(rank: usize, generators: &[ZdElement]) -> Option<Vec<BigInt>> {
    // Variables: lambda+ (rank), lambda- (rank), one slack per generator.
    let n = generators.len();
    let width = 2 * rank + n;
    let mut a = Vec::with_capacity(n);
    for (j, p) in generators.iter().enumerate() {
        let mut row = vec![BigRational::zero(); width];
        for (i, c) in p.coords().iter().enumerate() {
            row[i] = BigRational::from_integer(c.clone());
            row[rank + i] = -BigRational::from_integer(c.clone());
        }
        row[2 * rank + j] = -BigRational::one();
        a.push(row);
    }
    let b = vec![BigRational::one(); n];
    let x = lp::nonnegative_solution(&a, &b)?;
    let lambda: Vec<BigRational> = (0..rank).map(|i| &x[i] - &x[rank + i]).collect();
    Some(lp::primitive_integer_multiple(&lambda))
}

/// Nonnegative integer coefficients `m` with `sum m_j p_j = v`, or `None`.
///
/// Exact for linearly independent or pointed generator sets. Other sets fall
/// back to a search with every coefficient at most
/// [`UNBOUNDED_COEFFICIENT_CAP`], after an exact rational feasibility test.
pub fn cone_membership(generators: &[ZdElement], v: &ZdElement) -> Result<Option<Vec<BigInt>>> {
    if generators.is_empty() {
        return Err(Error::NoGenerators);
    }
    for p in generators {
        if p.rank() != v.rank() {
            return Err(Error::DimensionMismatch {
                expected: v.rank(),
                found: p.rank(),
            });
        }
    }
    Ok(ConeSolver::new(v.rank(), generators).solve(generators, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(c: &[i64]) -> ZdElement {
        ZdElement::from_i64s(c)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn multiples_of_sixty() {
        let p = [e(&[60])];
        assert_eq!(cone_membership(&p, &e(&[120])).unwrap(), Some(ints(&[2])));
        assert_eq!(cone_membership(&p, &e(&[127])).unwrap(), None);
        assert_eq!(cone_membership(&p, &e(&[-60])).unwrap(), None);
        assert_eq!(cone_membership(&p, &e(&[0])).unwrap(), Some(ints(&[0])));
    }

    #[test]
    fn standard_basis() {
        let p = [e(&[1, 0]), e(&[0, 1])];
        assert_eq!(
            cone_membership(&p, &e(&[2, 3])).unwrap(),
            Some(ints(&[2, 3]))
        );
        assert_eq!(cone_membership(&p, &e(&[2, -3])).unwrap(), None);
    }

    #[test]
    fn lattice_index_matters() {
        // (1,0),(1,2) span an index-2 sublattice of Z^2.
        let p = [e(&[1, 0]), e(&[1, 2])];
        assert_eq!(
            cone_membership(&p, &e(&[3, 2])).unwrap(),
            Some(ints(&[2, 1]))
        );
        assert_eq!(cone_membership(&p, &e(&[3, 1])).unwrap(), None);
        assert_eq!(cone_membership(&p, &e(&[0, 2])).unwrap(), None);
    }

    #[test]
    fn dependent_pointed_generators() {
        // Numerical semigroup <6, 10, 15>: 29 is its largest gap.
        let p = [e(&[6]), e(&[10]), e(&[15])];
        assert!(matches!(ConeSolver::new(1, &p), ConeSolver::Pointed { .. }));
        assert_eq!(cone_membership(&p, &e(&[29])).unwrap(), None);
        for v in 30..90 {
            let m = cone_membership(&p, &e(&[v]))
                .unwrap()
                .expect("above the gap");
            let total: i64 = m
                .iter()
                .zip([6, 10, 15])
                .map(|(c, g)| i64::try_from(c).unwrap() * g)
                .sum();
            assert_eq!(total, v);
        }
    }

    #[test]
    fn cone_containing_a_line() {
        let p = [e(&[1]), e(&[-1])];
        assert!(matches!(ConeSolver::new(1, &p), ConeSolver::Unbounded));
        let m = cone_membership(&p, &e(&[-5])).unwrap().unwrap();
        assert_eq!(&m[0] - &m[1], BigInt::from(-5));
    }

    #[test]
    fn bad_input() {
        assert_eq!(cone_membership(&[], &e(&[1])), Err(Error::NoGenerators));
        assert!(matches!(
            cone_membership(&[e(&[1, 0])], &e(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
