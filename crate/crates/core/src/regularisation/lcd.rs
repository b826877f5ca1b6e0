//! Exact decision of the regularised minimal system on cone-preordered `Z^d`.
//!
//! `R(c_1, ..., c_k)` holds iff some `n_i >= 0`, not all zero, give
//! `sum n_i c_i <= 0`. By homogeneity this is rational feasibility of
//! `sum n_i c_i + sum m_j p_j = 0`, `sum n_i = 1`, `n, m >= 0`; a rational
//! solution scales to an integer one. Otherwise Farkas' lemma provides a
//! functional `lambda` with `lambda(p_j) >= 0` and `lambda(c_i) > 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::group::{FinSubset, ZdElement, ZdGroup};
use crate::lp;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ConeDecision {
    /// `sum n_i c_i + sum m_j p_j = 0` with `n, m >= 0`, `n != 0`.
    Positive {
        #[serde(with = "crate::json::int_vec")]
        n: Vec<BigInt>,
        #[serde(with = "crate::json::int_vec")]
        m: Vec<BigInt>,
    },
    /// `lambda(p_j) >= 0` for every generator and `lambda(c_i) > 0` for every
    /// element.
    Negative {
        #[serde(with = "crate::json::int_vec")]
        lambda: Vec<BigInt>,
    },
}

impl ConeDecision {
    pub fn is_positive(&self) -> bool {
        matches!(self, ConeDecision::Positive { .. })
    }

    /// Exact integer replay against `c` (elements in sorted order).
    pub fn replays(&self, g: &ZdGroup, c: &FinSubset<ZdElement>) -> bool {
        match self {
            ConeDecision::Positive { n, m } => replay_positive(g, c, n, m),
            ConeDecision::Negative { lambda } => replay_separator(g, c, lambda),
        }
    }
}

pub fn replay_positive(g: &ZdGroup, c: &FinSubset<ZdElement>, n: &[BigInt], m: &[BigInt]) -> bool {
    n.len() == c.len()
        && n.iter().all(|x| !x.is_negative())
        && n.iter().any(Signed::is_positive)
        && g.replays_nonpositive(&g.combination(n, c.elements()), m)
}

pub fn replay_separator(g: &ZdGroup, c: &FinSubset<ZdElement>, lambda: &[BigInt]) -> bool {
    lambda.len() == g.rank()
        && g.generators().iter().all(|p| !p.dot(lambda).is_negative())
        && c.iter().all(|x| x.dot(lambda).is_positive())
}

fn q(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// Decides `R(C)` for the regularised minimal system on a cone group
/// (including the discrete order, which has no generators).
pub fn lcd_decide(g: &ZdGroup, c: &FinSubset<ZdElement>) -> ConeDecision {
    let d = g.rank();
    let k = c.len();
    let gens = g.generators();
    let r = gens.len();

    // Rows: d coordinates of sum n_i c_i + sum m_j p_j = 0, then sum n_i = 1.
    let mut a = Vec::with_capacity(d + 1);
    for coord in 0..d {
        let mut row: Vec<BigRational> = c.iter().map(|x| q(&x.coords()[coord])).collect();
        row.extend(gens.iter().map(|p| q(&p.coords()[coord])));
        a.push(row);
    }
    let mut norm = vec![BigRational::one(); k];
    norm.extend(std::iter::repeat_n(BigRational::zero(), r));
    a.push(norm);
    let mut b = vec![BigRational::zero(); d];
    b.push(BigRational::one());

    if let Some(x) = lp::nonnegative_solution(&a, &b) {
        let ints = lp::primitive_integer_multiple(&x);
        let (n, m) = ints.split_at(k);
        return ConeDecision::Positive {
            n: n.to_vec(),
            m: m.to_vec(),
        };
    }

    // Variables: lambda+ (d), lambda- (d), slack per element, slack per
    // generator. lambda(c_i) - s_i = 1, lambda(p_j) - t_j = 0.
    let width = 2 * d + k + r;
    let mut a = Vec::with_capacity(k + r);
    let mut b = Vec::with_capacity(k + r);
    for (i, v) in c.iter().chain(gens.iter()).enumerate() {
        let mut row = vec![BigRational::zero(); width];
        for (j, x) in v.coords().iter().enumerate() {
            row[j] = q(x);
            row[d + j] = -q(x);
        }
        row[2 * d + i] = -BigRational::one();
        a.push(row);
        b.push(if i < k {
            BigRational::one()
        } else {
            BigRational::zero()
        });
    }
    let x = lp::nonnegative_solution(&a, &b)
        .expect("Farkas alternative: one of the two systems is feasible");
    let lambda: Vec<BigRational> = (0..d).map(|j| &x[j] - &x[d + j]).collect();
    ConeDecision::Negative {
        lambda: lp::primitive_integer_multiple(&lambda),
    }
}

/// `A |- B` in the regularisation of the minimal system: `R(A - B)`.
pub fn regular_entails_decidable(
    g: &ZdGroup,
    a: &FinSubset<ZdElement>,
    b: &FinSubset<ZdElement>,
) -> bool {
    lcd_decide(g, &a.differences(g, b)).is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ZdElement {
        ZdElement::scalar(v)
    }

    fn set(v: &[i64]) -> FinSubset<ZdElement> {
        FinSubset::new(v.iter().map(|&x| int(x))).unwrap()
    }

    fn exa1() -> ZdGroup {
        ZdGroup::cone(1, vec![int(60)]).unwrap()
    }

    #[test]
    fn minus_one_needs_sixty() {
        let g = exa1();
        let c = set(&[-1]);
        let d = lcd_decide(&g, &c);
        assert_eq!(
            d,
            ConeDecision::Positive {
                n: vec![60.into()],
                m: vec![1.into()]
            }
        );
        assert!(d.replays(&g, &c));
    }

    #[test]
    fn zero_and_positive() {
        let g = exa1();
        assert!(
            matches!(lcd_decide(&g, &set(&[0])), ConeDecision::Positive { ref n, .. } if n == &vec![BigInt::one()])
        );
        let c = set(&[1]);
        let d = lcd_decide(&g, &c);
        assert!(!d.is_positive());
        assert!(d.replays(&g, &c));
    }

    #[test]
    fn usual_order_on_z() {
        let g = exa1();
        assert!(regular_entails_decidable(&g, &set(&[0]), &set(&[1])));
        assert!(!regular_entails_decidable(&g, &set(&[1]), &set(&[0])));
        assert!(regular_entails_decidable(&g, &set(&[0]), &set(&[20])));
        assert!(!regular_entails_decidable(&g, &set(&[20]), &set(&[0])));
    }

    #[test]
    fn discrete_order_needs_a_zero_sum() {
        let g = ZdGroup::discrete();
        let c = set(&[-2, 3]);
        let d = lcd_decide(&g, &c);
        assert_eq!(
            d,
            ConeDecision::Positive {
                n: vec![3.into(), 2.into()],
                m: vec![]
            }
        );
        assert!(d.replays(&g, &c));
        assert!(!lcd_decide(&g, &set(&[1, 3])).is_positive());
    }

    #[test]
    fn plane_cone() {
        let g = ZdGroup::cone(
            2,
            vec![ZdElement::from_i64s(&[1, 0]), ZdElement::from_i64s(&[1, 2])],
        )
        .unwrap();
        // (-1, -1) is not <= 0 but 2 * (-1, -1) = -(1,0) - (1,2) is.
        let c = FinSubset::singleton(ZdElement::from_i64s(&[-1, -1]));
        let d = lcd_decide(&g, &c);
        assert!(d.replays(&g, &c));
        assert!(d.is_positive());
        let c = FinSubset::singleton(ZdElement::from_i64s(&[0, 1]));
        let d = lcd_decide(&g, &c);
        assert!(!d.is_positive() && d.replays(&g, &c));
    }
}
