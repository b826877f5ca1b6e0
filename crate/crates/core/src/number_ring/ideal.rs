use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::field::{CubicField, FieldElement};
use super::hnf::{self, Square, ROWS};
use crate::error::{Error, Result};

/// A finitely generated `O`-submodule `I` of the field, stored as the lattice
/// `D * I` in column Hermite normal form (coordinates `1, t, t^2`).
///
/// `D` and the matrix entries share no common factor, so two ideals are equal
/// exactly when their stored forms are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FractionalIdeal {
    denominator: BigInt,
    basis: Square,
}

impl FractionalIdeal {
    pub fn from_generators(field: &CubicField, gens: &[FieldElement]) -> Result<Self> {
        let columns = generator_columns(field, gens)?;
        let denominator = columns.denominator;
        let basis = hnf::hnf(&columns.columns)?;
        let content = basis
            .iter()
            .flatten()
            .fold(denominator.clone(), |acc, x| acc.gcd(x));
        let basis = basis.map(|r| r.map(|x| x / &content));
        Ok(FractionalIdeal {
            denominator: denominator / &content,
            basis,
        })
    }

    /// `O` itself.
    pub fn unit() -> Self {
        FractionalIdeal {
            denominator: BigInt::one(),
            basis: std::array::from_fn(|r| {
                std::array::from_fn(|c| {
                    if r == c {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
            }),
        }
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// HNF matrix of `D * I`, row-major.
    pub fn basis(&self) -> &Square {
        &self.basis
    }

    /// The `j`-th basis element of `I` (column `j` divided by `D`).
    pub fn basis_element(&self, j: usize) -> FieldElement {
        FieldElement::new(std::array::from_fn(|r| {
            BigRational::new(self.basis[r][j].clone(), self.denominator.clone())
        }))
    }

    /// Integer coordinates of `D * a` in the HNF basis, when `a` lies in `I`.
    pub fn contains(&self, a: &FieldElement) -> Option<[BigInt; ROWS]> {
        let scaled: Vec<BigRational> = a.coords().iter().map(|q| q * &self.denominator).collect();
        if !scaled.iter().all(|q| q.is_integer()) {
            return None;
        }
        let v: [BigInt; ROWS] = std::array::from_fn(|i| scaled[i].to_integer());
        hnf::solve_upper(&self.basis, &v)
    }

    /// Replays a membership certificate: `sum c_j column_j == D * a`.
    pub fn replays(&self, a: &FieldElement, coords: &[BigInt; ROWS]) -> bool {
        (0..ROWS).all(|r| {
            let lhs: BigInt = (0..ROWS).map(|j| &self.basis[r][j] * &coords[j]).sum();
            BigRational::from_integer(lhs) == &a.coords()[r] * &self.denominator
        })
    }

    /// Closure under multiplication by `t`.
    pub fn is_t_stable(&self, field: &CubicField) -> bool {
        let t = field.t();
        (0..ROWS).all(|j| {
            self.contains(&field.mul(&self.basis_element(j), &t))
                .is_some()
        })
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        (0..ROWS).all(|j| other.contains(&self.basis_element(j)).is_some())
    }

    /// `(D, 9 entries row-major)`.
    pub fn to_serial(&self) -> IdealSerial {
        IdealSerial {
            denominator: self.denominator.to_string(),
            entries: self
                .basis
                .iter()
                .flatten()
                .map(ToString::to_string)
                .collect(),
        }
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{} * [", self.denominator)?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} {} {}", row[0], row[1], row[2])?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FractionalIdeal({self})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSerial {
    pub denominator: String,
    pub entries: Vec<String>,
}

struct GeneratorColumns {
    denominator: BigInt,
    columns: Vec<[BigInt; ROWS]>,
}

/// Columns `D * g * t^j` for every generator `g` and `j = 0, 1, 2`, ordered
/// generator by generator.
fn generator_columns(field: &CubicField, gens: &[FieldElement]) -> Result<GeneratorColumns> {
    if gens.is_empty() {
        return Err(Error::EmptySubset);
    }
    if gens.iter().any(FieldElement::is_zero) {
        return Err(Error::DivisionByZero);
    }
    let t = field.t();
    let mut shifted = Vec::with_capacity(gens.len() * ROWS);
    for g in gens {
        let mut cur = g.clone();
        for _ in 0..ROWS {
            let next = field.mul(&cur, &t);
            shifted.push(cur);
            cur = next;
        }
    }
    let denominator = shifted
        .iter()
        .fold(BigInt::one(), |acc, e| acc.lcm(&e.denominator()));
    let columns = shifted
        .iter()
        .map(|e| std::array::from_fn(|r| (&e.coords()[r] * &denominator).to_integer()))
        .collect();
    Ok(GeneratorColumns {
        denominator,
        columns,
    })
}

/// Elements `o_i` of `O` with `sum o_i g_i = a`, when `a` lies in the ideal
/// generated by `gens`.
pub fn membership_witness(
    field: &CubicField,
    gens: &[FieldElement],
    a: &FieldElement,
) -> Result<Option<Vec<FieldElement>>> {
    let cols = generator_columns(field, gens)?;
    let (h, transform) = hnf::hnf_with_transform(&cols.columns)?;
    let scaled: Vec<BigRational> = a.coords().iter().map(|q| q * &cols.denominator).collect();
    if !scaled.iter().all(|q| q.is_integer()) {
        return Ok(None);
    }
    let v: [BigInt; ROWS] = std::array::from_fn(|i| scaled[i].to_integer());
    let Some(c) = hnf::solve_upper(&h, &v) else {
        return Ok(None);
    };
    // Coefficient of input column (i, j) = g_i t^j.
    let n = cols.columns.len();
    let coeff: Vec<BigInt> = (0..n)
        .map(|col| (0..ROWS).map(|k| &transform[k][col] * &c[k]).sum())
        .collect();
    let witness = (0..gens.len())
        .map(|i| {
            FieldElement::new(std::array::from_fn(|j| {
                BigRational::from_integer(coeff[i * ROWS + j].clone())
            }))
        })
        .collect();
    Ok(Some(witness))
}

/// Checks `sum o_i g_i == a` with every `o_i` in `O`.
pub fn replay_witness(
    field: &CubicField,
    gens: &[FieldElement],
    witness: &[FieldElement],
    a: &FieldElement,
) -> bool {
    witness.len() == gens.len()
        && witness.iter().all(FieldElement::is_integral)
        && gens.iter().zip(witness).fold(field.zero(), |acc, (g, o)| {
            field.add(&acc, &field.mul(g, o))
        }) == *a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn yz(k: &CubicField) -> (FieldElement, FieldElement) {
        let y = FieldElement::new([q(1, 2), q(0, 1), q(1, 2)]);
        let z = k.inv(&y).unwrap();
        (y, z)
    }

    #[test]
    fn unit_ideal() {
        let k = CubicField::shipped();
        let o = FractionalIdeal::from_generators(&k, &[k.one()]).unwrap();
        assert_eq!(o, FractionalIdeal::unit());
        assert!(o.contains(&k.t()).is_some());
        assert!(o
            .contains(&FieldElement::new([q(1, 2), q(0, 1), q(0, 1)]))
            .is_none());
        assert!(o.is_t_stable(&k));
    }

    #[test]
    fn three_powers_of_z_contain_one() {
        let k = CubicField::shipped();
        let (_, z) = yz(&k);
        let z2 = k.mul(&z, &z);
        let z3 = k.mul(&z2, &z);
        let gens = [z.clone(), z2.clone(), z3.clone()];
        let i = FractionalIdeal::from_generators(&k, &gens).unwrap();
        let c = i.contains(&k.one()).expect("1 is in (z, z^2, z^3)");
        assert!(i.replays(&k.one(), &c));
        assert!(i.is_t_stable(&k));
        let w = membership_witness(&k, &gens, &k.one()).unwrap().unwrap();
        assert!(replay_witness(&k, &gens, &w, &k.one()));
    }

    #[test]
    fn two_powers_of_z_already_contain_one() {
        let k = CubicField::shipped();
        let (_, z) = yz(&k);
        let z3 = k.pow(&z, 3).unwrap();
        // 1 = z + (6 - 2t^2) z^3, from y^3 = y^2 - 4y + 8.
        let coeff = FieldElement::from_integers(&[6, 0, -2]);
        assert_eq!(k.add(&z, &k.mul(&coeff, &z3)), k.one());
        let gens = [z.clone(), z3];
        let i = FractionalIdeal::from_generators(&k, &gens).unwrap();
        assert!(i.contains(&k.one()).is_some());
        let w = membership_witness(&k, &gens, &k.one()).unwrap().unwrap();
        assert!(replay_witness(&k, &gens, &w, &k.one()));
        // z alone is not a unit of the order.
        assert!(membership_witness(&k, &[z], &k.one()).unwrap().is_none());
    }

    #[test]
    fn ideal_equality_is_canonical() {
        let k = CubicField::shipped();
        let t = k.t();
        let a =
            FractionalIdeal::from_generators(&k, &[t.clone(), k.add(&t, &k.mul(&t, &t))]).unwrap();
        let b = FractionalIdeal::from_generators(&k, &[t]).unwrap();
        assert_eq!(a, b);
        let half = FieldElement::new([q(1, 2), q(0, 1), q(0, 1)]);
        let h = FractionalIdeal::from_generators(&k, &[half]).unwrap();
        assert_eq!(h.denominator(), &BigInt::from(2));
        assert!(FractionalIdeal::unit().is_subset_of(&h));
        assert!(!h.is_subset_of(&FractionalIdeal::unit()));
    }

    #[test]
    fn bad_generators() {
        let k = CubicField::shipped();
        assert_eq!(
            FractionalIdeal::from_generators(&k, &[]),
            Err(Error::EmptySubset)
        );
        assert_eq!(
            FractionalIdeal::from_generators(&k, &[k.zero()]),
            Err(Error::DivisionByZero)
        );
    }
}
