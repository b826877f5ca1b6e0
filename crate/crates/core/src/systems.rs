//! Equivariant systems of ideals `A |> b` and the meet-monoid they generate.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::group::{DivisibilityGroup, Elem, FinSubset, PreorderedGroup};
use crate::number_ring::FractionalIdeal;
use crate::report::{equivalence, implication, AxiomReport, Truth};
use crate::sampling::Sampler;

/// A decidable relation `A |> b` between nonempty finite subsets and elements
/// of a preordered group, expected to satisfy weakening, cut, `a <= b => a |> b`
/// and translation invariance.
pub trait SystemOfIdeals: Send + Sync {
    type Group: PreorderedGroup;

    fn group(&self) -> &Self::Group;

    fn name(&self) -> &str;

    fn holds(&self, a: &FinSubset<Elem<Self::Group>>, b: &Elem<Self::Group>) -> bool;

    /// The predicate form `S(A) = A |> 0`.
    fn holds_at_zero(&self, a: &FinSubset<Elem<Self::Group>>) -> bool {
        self.holds(a, &self.group().zero())
    }
}

impl<S: SystemOfIdeals + ?Sized> SystemOfIdeals for &S {
    type Group = S::Group;

    fn group(&self) -> &Self::Group {
        (**self).group()
    }

    fn name(&self) -> &str {
        (**self).name()
    }

    fn holds(&self, a: &FinSubset<Elem<Self::Group>>, b: &Elem<Self::Group>) -> bool {
        (**self).holds(a, b)
    }
}

/// `A <=_S B`: `A |> b` for every `b` in `B`.
pub fn meet_leq<S: SystemOfIdeals + ?Sized>(
    s: &S,
    a: &FinSubset<Elem<S::Group>>,
    b: &FinSubset<Elem<S::Group>>,
) -> bool {
    b.iter().all(|x| s.holds(a, x))
}

/// The least equivariant system: `A |> b` iff some `a` in `A` has `a <= b`.
#[derive(Clone, Debug)]
pub struct MinimalSystem<G> {
    group: G,
}

impl<G: PreorderedGroup> MinimalSystem<G> {
    pub fn new(group: G) -> Self {
        MinimalSystem { group }
    }
}

impl<G: PreorderedGroup> SystemOfIdeals for MinimalSystem<G> {
    type Group = G;

    fn group(&self) -> &G {
        &self.group
    }

    fn name(&self) -> &str {
        "sm"
    }

    fn holds(&self, a: &FinSubset<Elem<G>>, b: &Elem<G>) -> bool {
        a.iter().any(|x| self.group.leq(x, b))
    }
}

/// `a_1, ..., a_k |> b` iff `b` lies in the fractional ideal `(a_1, ..., a_k) O`.
#[derive(Debug)]
pub struct DedekindSystem {
    group: DivisibilityGroup,
    ideals: RwLock<HashMap<FinSubset<Elem<DivisibilityGroup>>, FractionalIdeal>>,
}

impl DedekindSystem {
    pub fn new(group: DivisibilityGroup) -> Self {
        DedekindSystem {
            group,
            ideals: RwLock::new(HashMap::new()),
        }
    }

    /// The ideal generated by `a`, cached.
    pub fn ideal(&self, a: &FinSubset<Elem<DivisibilityGroup>>) -> FractionalIdeal {
        if let Some(i) = self.ideals.read().expect("ideal cache poisoned").get(a) {
            return i.clone();
        }
        let ideal = FractionalIdeal::from_generators(self.group.field(), a.elements())
            .expect("group elements are nonzero and the field has rank 3");
        self.ideals
            .write()
            .expect("ideal cache poisoned")
            .insert(a.clone(), ideal.clone());
        ideal
    }
}

impl Clone for DedekindSystem {
    fn clone(&self) -> Self {
        DedekindSystem::new(self.group.clone())
    }
}

impl SystemOfIdeals for DedekindSystem {
    type Group = DivisibilityGroup;

    fn group(&self) -> &DivisibilityGroup {
        &self.group
    }

    fn name(&self) -> &str {
        "dedekind"
    }

    fn holds(&self, a: &FinSubset<Elem<DivisibilityGroup>>, b: &Elem<DivisibilityGroup>) -> bool {
        self.ideal(a).contains(b).is_some()
    }
}

/// Caches `holds(A, b)` of the wrapped system by canonical `(A, b)`.
pub struct Memoized<S: SystemOfIdeals> {
    inner: S,
    cache: HoldsCache<Elem<S::Group>>,
}

type HoldsCache<E> = RwLock<HashMap<(FinSubset<E>, E), bool>>;

impl<S: SystemOfIdeals> Memoized<S> {
    pub fn new(inner: S) -> Self {
        Memoized {
            inner,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn inner(&self) -> &S {
        &self.inner
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.read().expect("cache poisoned").len()
    }
}

impl<S: SystemOfIdeals> SystemOfIdeals for Memoized<S> {
    type Group = S::Group;

    fn group(&self) -> &Self::Group {
        self.inner.group()
    }

    fn name(&self) -> &str {
        self.inner.name()
    }

    fn holds(&self, a: &FinSubset<Elem<S::Group>>, b: &Elem<S::Group>) -> bool {
        let key = (a.clone(), b.clone());
        if let Some(&v) = self.cache.read().expect("cache poisoned").get(&key) {
            return v;
        }
        let v = self.inner.holds(a, b);
        self.cache.write().expect("cache poisoned").insert(key, v);
        v
    }
}

/// `S ∩ S'`.
pub struct Intersection<S, T> {
    left: S,
    right: T,
    name: String,
}

impl<S: SystemOfIdeals, T: SystemOfIdeals<Group = S::Group>> Intersection<S, T> {
    pub fn new(left: S, right: T) -> Self {
        let name = format!("{} ∩ {}", left.name(), right.name());
        Intersection { left, right, name }
    }
}

impl<S: SystemOfIdeals, T: SystemOfIdeals<Group = S::Group>> SystemOfIdeals for Intersection<S, T> {
    type Group = S::Group;

    fn group(&self) -> &Self::Group {
        self.left.group()
    }

    fn name(&self) -> &str {
        &self.name
    }

    fn holds(&self, a: &FinSubset<Elem<S::Group>>, b: &Elem<S::Group>) -> bool {
        self.left.holds(a, b) && self.right.holds(a, b)
    }
}

/// Samples instances of weakening, cut, `a <= x => a |> x`, translation, the
/// predicate forms with `S(A) = A |> 0`, and leastness of the minimal
/// system. Roughly half the instances are biased so that premises hold.
pub fn check_system_axioms<S, R>(s: &S, sampler: &mut R, n: usize) -> AxiomReport
where
    S: SystemOfIdeals + ?Sized,
    R: Sampler<S::Group>,
{
    let g = s.group().clone();
    let zero = g.zero();
    let minimal = MinimalSystem::new(g.clone());
    let mut report = AxiomReport::new(s.name(), sampler.seed(), n);
    let holds = |a: &FinSubset<Elem<S::Group>>, b: &Elem<S::Group>| Truth::known(s.holds(a, b));

    for _ in 0..n {
        // S1: A' |> b and A ⊇ A' give A |> b.
        let a1 = sampler.subset(3);
        let extra = sampler.subset(3);
        let b = if sampler.coin() {
            sampler.above_member(&a1)
        } else {
            sampler.element()
        };
        let a = a1.union(&extra);
        let outcome = implication(&[holds(&a1, &b)], holds(&a, &b), || {
            format!("A' = {a1}, A = {a}, b = {b}")
        });
        report.law_mut("S1 weakening").record(outcome);

        // S2: A, y |> x and A |> y give A |> x.
        let a = sampler.subset(3);
        let y = if sampler.coin() {
            sampler.above_member(&a)
        } else {
            sampler.element()
        };
        let x = if sampler.coin() {
            sampler.above(&y)
        } else {
            sampler.element()
        };
        let ay = a.with(y.clone());
        let outcome = implication(&[holds(&ay, &x), holds(&a, &y)], holds(&a, &x), || {
            format!("A = {a}, y = {y}, x = {x}")
        });
        report.law_mut("S2 cut").record(outcome);

        // S3: a <= x gives a |> x.
        let a = sampler.element();
        let x = if sampler.coin() {
            sampler.above(&a)
        } else {
            sampler.element()
        };
        let outcome = implication(
            &[Truth::known(g.leq(&a, &x))],
            holds(&FinSubset::singleton(a.clone()), &x),
            || format!("a = {a}, x = {x}"),
        );
        report.law_mut("S3 order").record(outcome);

        // S4: A |> b iff A + y |> b + y.
        let a = sampler.subset(3);
        let b = if sampler.coin() {
            sampler.above_member(&a)
        } else {
            sampler.element()
        };
        let y = sampler.element();
        let ay = a.translate(&g, &y);
        let by = g.add(&b, &y);
        let outcome = equivalence(holds(&a, &b), holds(&ay, &by), || {
            format!("A = {a}, b = {b}, y = {y}")
        });
        report.law_mut("S4 translation").record(outcome);

        // P1: S(A') and A' ⊆ A give S(A).
        let a1 = if sampler.coin() {
            sampler.subset(2).with(sampler.below(&zero))
        } else {
            sampler.subset(3)
        };
        let a = a1.union(&sampler.subset(2));
        let outcome = implication(&[holds(&a1, &zero)], holds(&a, &zero), || {
            format!("A' = {a1}, A = {a}")
        });
        report.law_mut("P1 monotone").record(outcome);

        // P'2: S(A, u) and S(A - u) give S(A).
        let a = sampler.subset(3);
        let u = if sampler.coin() {
            sampler.above_member(&a)
        } else {
            sampler.element()
        };
        let a = if sampler.coin() {
            a.with(sampler.below(&u))
        } else {
            a
        };
        let au = a.with(u.clone());
        let shifted = a.map(|x| g.sub(x, &u));
        let outcome = implication(
            &[holds(&au, &zero), holds(&shifted, &zero)],
            holds(&a, &zero),
            || format!("A = {a}, u = {u}"),
        );
        report.law_mut("P'2 cut").record(outcome);

        // P3: a <= 0 gives S(a).
        let a = if sampler.coin() {
            sampler.below(&zero)
        } else {
            sampler.element()
        };
        let outcome = implication(
            &[Truth::known(g.leq(&a, &zero))],
            holds(&FinSubset::singleton(a.clone()), &zero),
            || format!("a = {a}"),
        );
        report.law_mut("P3 order").record(outcome);

        // The minimal system is contained in every system.
        let a = sampler.subset(3);
        let b = if sampler.coin() {
            sampler.above_member(&a)
        } else {
            sampler.element()
        };
        let outcome = implication(
            &[Truth::known(minimal.holds(&a, &b))],
            holds(&a, &b),
            || format!("A = {a}, b = {b}"),
        );
        report.law_mut("contains minimal").record(outcome);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ZdElement, ZdGroup};
    use crate::number_ring::FieldElement;
    use crate::sampling::{FieldSampler, ZdSampler};

    fn exa1() -> MinimalSystem<ZdGroup> {
        MinimalSystem::new(ZdGroup::cone(1, vec![ZdElement::scalar(60)]).unwrap())
    }

    fn set(g: &ZdGroup, v: &[i64]) -> FinSubset<ZdElement> {
        FinSubset::new(v.iter().map(|&x| g.int(x))).unwrap()
    }

    #[test]
    fn minimal_system_examples() {
        let s = exa1();
        let g = s.group().clone();
        assert!(s.holds(&set(&g, &[10, 24]), &g.int(130)));
        assert!(!s.holds(&set(&g, &[3, 24]), &g.int(130)));
        assert!(s.holds(&set(&g, &[7]), &g.int(7)));
        assert!(meet_leq(&s, &set(&g, &[10, 24]), &set(&g, &[130, 84])));
        assert!(!meet_leq(&s, &set(&g, &[3, 24]), &set(&g, &[130, 84])));
    }

    #[test]
    fn minimal_system_axioms() {
        let s = exa1();
        let mut sampler = ZdSampler::new(s.group().clone(), 150, 11);
        let report = check_system_axioms(&s, &mut sampler, 300);
        assert!(report.passed(), "{report}");
        assert!(report.law("S2 cut").unwrap().checked > 30, "{report}");
    }

    #[test]
    fn dedekind_axioms() {
        let s = DedekindSystem::new(DivisibilityGroup::shipped());
        let mut sampler = FieldSampler::new(s.group().clone(), 5);
        let report = check_system_axioms(&s, &mut sampler, 60);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn memoization_is_transparent() {
        let s = Memoized::new(exa1());
        let g = s.group().clone();
        let a = set(&g, &[10, 24]);
        assert!(s.holds(&a, &g.int(130)));
        assert!(s.holds(&a, &g.int(130)));
        assert_eq!(s.cached_entries(), 1);
    }

    #[test]
    fn dedekind_contains_one() {
        let g = DivisibilityGroup::shipped();
        let s = DedekindSystem::new(g.clone());
        let a = g.field().t();
        assert!(s.holds(&FinSubset::singleton(a.clone()), &a));
        let two = FieldElement::from_integers(&[2, 0, 0]);
        assert!(!s.holds(&FinSubset::singleton(two), &g.zero()));
    }
}
