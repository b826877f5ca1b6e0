//! Seeded generators of group elements and subsets for the law checkers.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{DivisibilityGroup, Elem, FinSubset, PreorderedGroup, ZdElement, ZdGroup};
use crate::number_ring::FieldElement;

pub const DEFAULT_SEED: u64 = 0x5eed;

pub trait Sampler<G: PreorderedGroup> {
    fn group(&self) -> &G;

    fn element(&mut self) -> Elem<G>;

    /// An element `p` with `0 <= p`.
    fn nonnegative(&mut self) -> Elem<G>;

    /// A uniform size in `1..=max`.
    fn size(&mut self, max: usize) -> usize;

    fn seed(&self) -> u64;

    /// Coin flip, used to mix biased and unbiased instances.
    fn coin(&mut self) -> bool;

    fn subset(&mut self, max: usize) -> FinSubset<Elem<G>> {
        let n = self.size(max);
        FinSubset::new((0..n).map(|_| self.element()).collect::<Vec<_>>()).expect("n >= 1")
    }

    /// An element `a` with `a <= b`.
    fn below(&mut self, b: &Elem<G>) -> Elem<G> {
        let p = self.nonnegative();
        self.group().sub(b, &p)
    }

    /// An element `c` with `b <= c`.
    fn above(&mut self, b: &Elem<G>) -> Elem<G> {
        let p = self.nonnegative();
        self.group().add(b, &p)
    }

    /// A uniformly chosen member of `set`.
    fn pick(&mut self, set: &FinSubset<Elem<G>>) -> Elem<G> {
        let i = self.size(set.len()) - 1;
        set.elements()[i].clone()
    }

    /// An element above some member of `set`.
    fn above_member(&mut self, set: &FinSubset<Elem<G>>) -> Elem<G> {
        let p = self.pick(set);
        self.above(&p)
    }
}

/// Uniform coordinates in `[-range, range]`; nonnegative elements are small
/// nonnegative combinations of the generators (zero on the discrete order).
#[derive(Clone, Debug)]
pub struct ZdSampler {
    group: ZdGroup,
    range: i64,
    seed: u64,
    rng: ChaCha8Rng,
}

impl ZdSampler {
    pub fn new(group: ZdGroup, range: i64, seed: u64) -> Self {
        ZdSampler {
            group,
            range,
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

impl Sampler<ZdGroup> for ZdSampler {
    fn group(&self) -> &ZdGroup {
        &self.group
    }

    fn element(&mut self) -> ZdElement {
        let r = self.range;
        let coords = (0..self.group.rank())
            .map(|_| self.rng.random_range(-r..=r))
            .collect::<Vec<_>>();
        ZdElement::from_i64s(&coords)
    }

    fn nonnegative(&mut self) -> ZdElement {
        let mut acc = self.group.zero();
        for p in self.group.generators().to_vec() {
            let m: i64 = self.rng.random_range(0..=2);
            acc = acc.add(&p.scale(&BigInt::from(m)));
        }
        acc
    }

    fn size(&mut self, max: usize) -> usize {
        self.rng.random_range(1..=max.max(1))
    }

    fn seed(&self) -> u64 {
        self.seed
    }

    fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }
}

/// Elements of the divisibility group built as short products of small
/// factors and their inverses, so that ideals stay small.
#[derive(Clone, Debug)]
pub struct FieldSampler {
    group: DivisibilityGroup,
    factors: Vec<FieldElement>,
    seed: u64,
    rng: ChaCha8Rng,
}

impl FieldSampler {
    pub fn new(group: DivisibilityGroup, seed: u64) -> Self {
        let k = group.field();
        let half = BigRational::new(1.into(), 2.into());
        let zero = BigRational::from_integer(0.into());
        let y = FieldElement::new([half.clone(), zero, half]);
        let factors = vec![
            k.t(),
            FieldElement::from_integers(&[2, 0, 0]),
            FieldElement::from_integers(&[3, 0, 0]),
            FieldElement::from_integers(&[1, 1, 0]),
            FieldElement::from_integers(&[1, -1, 0]),
            FieldElement::from_integers(&[0, 1, 1]),
            y,
        ];
        FieldSampler {
            group,
            factors,
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Sampler<DivisibilityGroup> for FieldSampler {
    fn group(&self) -> &DivisibilityGroup {
        &self.group
    }

    fn element(&mut self) -> FieldElement {
        let n = self.rng.random_range(0..=2);
        let mut acc = self.group.zero();
        for _ in 0..n {
            let f = &self.factors[self.rng.random_range(0..self.factors.len())];
            acc = if self.rng.random_bool(0.5) {
                self.group.add(&acc, f)
            } else {
                self.group.sub(&acc, f)
            };
        }
        acc
    }

    fn nonnegative(&mut self) -> FieldElement {
        loop {
            let c: [i64; 3] = std::array::from_fn(|_| self.rng.random_range(-2..=2));
            let e = FieldElement::from_integers(&c);
            if !e.is_zero() {
                return e;
            }
        }
    }

    fn size(&mut self, max: usize) -> usize {
        self.rng.random_range(1..=max.max(1))
    }

    fn seed(&self) -> u64 {
        self.seed
    }

    fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let g = ZdGroup::cone(1, vec![ZdElement::scalar(60)]).unwrap();
        let mut a = ZdSampler::new(g.clone(), 50, 9);
        let mut b = ZdSampler::new(g.clone(), 50, 9);
        for _ in 0..20 {
            assert_eq!(a.subset(4), b.subset(4));
        }
        for _ in 0..20 {
            let p = a.nonnegative();
            assert!(g.leq(&g.zero(), &p));
        }
    }

    #[test]
    fn field_samples_are_valid() {
        let g = DivisibilityGroup::shipped();
        let mut s = FieldSampler::new(g.clone(), 3);
        for _ in 0..30 {
            let e = s.element();
            assert!(g.validate(&e).is_ok());
            let below = s.below(&e);
            assert!(g.leq(&below, &e));
        }
    }
}
