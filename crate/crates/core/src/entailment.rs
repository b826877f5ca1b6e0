//! Regular entailment relations `A |- B := R(A - B)` over interchangeable
//! backends, with sampled checks of the axioms and of their consequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::forcing::{chain, Verdict};
use crate::group::{Elem, FinSubset, PreorderedGroup, ZdElement, ZdGroup};
use crate::regularisation::{lcd_decide, ConeDecision, Regulariser};
use crate::report::{equivalence, implication, AxiomReport, Truth};
use crate::sampling::Sampler;
use crate::systems::SystemOfIdeals;

pub type EntailmentVerdict<E> = Verdict<Certificate<E>>;

/// A source of verdicts for the predicate `R(C) = C |- 0`.
pub trait EntailmentBackend: Send + Sync {
    type Group: PreorderedGroup;

    fn group(&self) -> &Self::Group;

    fn name(&self) -> &str;

    fn holds_at_zero(
        &self,
        c: &FinSubset<Elem<Self::Group>>,
    ) -> EntailmentVerdict<Elem<Self::Group>>;

    /// `A |- B` iff `R(A - B)`.
    fn entails(
        &self,
        a: &FinSubset<Elem<Self::Group>>,
        b: &FinSubset<Elem<Self::Group>>,
    ) -> EntailmentVerdict<Elem<Self::Group>> {
        self.holds_at_zero(&a.differences(self.group(), b))
    }
}

impl<B: EntailmentBackend + ?Sized> EntailmentBackend for &B {
    type Group = B::Group;

    fn group(&self) -> &Self::Group {
        (**self).group()
    }

    fn name(&self) -> &str {
        (**self).name()
    }

    fn holds_at_zero(
        &self,
        c: &FinSubset<Elem<Self::Group>>,
    ) -> EntailmentVerdict<Elem<Self::Group>> {
        (**self).holds_at_zero(c)
    }
}

/// The exact decision for the regularised minimal system on a cone group.
#[derive(Clone, Debug)]
pub struct ConeBackend {
    group: ZdGroup,
}

impl ConeBackend {
    pub fn new(group: ZdGroup) -> Self {
        ConeBackend { group }
    }
}

impl EntailmentBackend for ConeBackend {
    type Group = ZdGroup;

    fn group(&self) -> &ZdGroup {
        &self.group
    }

    fn name(&self) -> &str {
        "lcd"
    }

    fn holds_at_zero(&self, c: &FinSubset<ZdElement>) -> EntailmentVerdict<ZdElement> {
        match lcd_decide(&self.group, c) {
            ConeDecision::Positive { n, m } => Verdict::Holds(Certificate::Cone { n, m }),
            ConeDecision::Negative { .. } => Verdict::Refuted,
        }
    }
}

/// Intervals of `Z` under inclusion: `R(C)` iff `min C <= 0 <= max C`.
#[derive(Clone, Debug)]
pub struct IntervalBackend {
    group: ZdGroup,
}

impl IntervalBackend {
    pub fn new() -> Self {
        IntervalBackend {
            group: ZdGroup::discrete(),
        }
    }
}

impl Default for IntervalBackend {
    fn default() -> Self {
        Self::new()
    }
}

impl EntailmentBackend for IntervalBackend {
    type Group = ZdGroup;

    fn group(&self) -> &ZdGroup {
        &self.group
    }

    fn name(&self) -> &str {
        "interval"
    }

    /// Positive answers carry a zero-sum certificate: `1 * 0` when `0` is
    /// present, otherwise `max * min + (-min) * max = 0` reduced by the gcd.
    fn holds_at_zero(&self, c: &FinSubset<ZdElement>) -> EntailmentVerdict<ZdElement> {
        let lo = &c.min().coords()[0];
        let hi = &c.max().coords()[0];
        if lo.is_positive() || hi.is_negative() {
            return Verdict::Refuted;
        }
        let mut n = vec![BigInt::zero(); c.len()];
        if let Some(i) = c.iter().position(ZdElement::is_zero) {
            n[i] = BigInt::one();
        } else {
            let g = lo.gcd(hi);
            n[0] = hi / &g;
            *n.last_mut().expect("nonempty") = -lo / &g;
        }
        Verdict::Holds(Certificate::Cone { n, m: vec![] })
    }
}

/// `L(S)` by bounded sign-vector search: semi-decision, never refutes.
pub struct RegularisedBackend<S: SystemOfIdeals> {
    reg: Regulariser<S>,
}

impl<S: SystemOfIdeals> RegularisedBackend<S> {
    pub fn new(reg: Regulariser<S>) -> Self {
        RegularisedBackend { reg }
    }

    pub fn regulariser(&self) -> &Regulariser<S> {
        &self.reg
    }
}

impl<S: SystemOfIdeals> EntailmentBackend for RegularisedBackend<S> {
    type Group = S::Group;

    fn group(&self) -> &S::Group {
        self.reg.group()
    }

    fn name(&self) -> &str {
        self.reg.name()
    }

    fn holds_at_zero(&self, c: &FinSubset<Elem<S::Group>>) -> EntailmentVerdict<Elem<S::Group>> {
        let zero = FinSubset::singleton(self.group().zero());
        self.reg.query(c, &zero).map(Certificate::Lorenzen)
    }
}

/// `R(C) = S(C)` for a system that has not been regularised. Decidable, but
/// in general not regular; used as a negative control.
pub struct RawBackend<S: SystemOfIdeals> {
    system: S,
    name: String,
}

impl<S: SystemOfIdeals> RawBackend<S> {
    pub fn new(system: S) -> Self {
        let name = format!("raw({})", system.name());
        RawBackend { system, name }
    }
}

impl<S: SystemOfIdeals> EntailmentBackend for RawBackend<S> {
    type Group = S::Group;

    fn group(&self) -> &S::Group {
        self.system.group()
    }

    fn name(&self) -> &str {
        &self.name
    }

    fn holds_at_zero(&self, c: &FinSubset<Elem<S::Group>>) -> EntailmentVerdict<Elem<S::Group>> {
        if self.system.holds_at_zero(c) {
            Verdict::Holds(Certificate::Base {
                base_system: self.system.name().to_string(),
            })
        } else {
            Verdict::Refuted
        }
    }
}

/// `min A <= max B` and `max A >= min B`, on integers.
pub fn interval_oracle(a: &FinSubset<ZdElement>, b: &FinSubset<ZdElement>) -> bool {
    a.min() <= b.max() && a.max() >= b.min()
}

/// Errors unless the backend lives on the discrete order of `Z`.
pub fn require_discrete_z<B: EntailmentBackend<Group = ZdGroup> + ?Sized>(e: &B) -> Result<()> {
    if e.group().is_discrete() && e.group().rank() == 1 {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "backend `{}` is not on the discrete order of Z",
            e.name()
        )))
    }
}

fn truth<B: EntailmentBackend + ?Sized>(
    e: &B,
    a: &FinSubset<Elem<B::Group>>,
    b: &FinSubset<Elem<B::Group>>,
) -> Truth {
    e.entails(a, b).truth()
}

fn r<B: EntailmentBackend + ?Sized>(e: &B, c: &FinSubset<Elem<B::Group>>) -> Truth {
    e.holds_at_zero(c).truth()
}

/// `A |-_x B`: some `p <= p_max` has `A, A + x, ..., A + px |- B`. By the
/// convexity lemma this agrees with the two-point form `A, A + px |- B`.
pub fn entails_forced<B: EntailmentBackend + ?Sized>(
    e: &B,
    x: &Elem<B::Group>,
    a: &FinSubset<Elem<B::Group>>,
    b: &FinSubset<Elem<B::Group>>,
    p_max: usize,
) -> Truth {
    let g = e.group();
    let minus_x = g.neg(x);
    let mut unknown = false;
    for p in 0..=p_max {
        match truth(e, &chain(g, a, &minus_x, p), b) {
            Truth::True => return Truth::True,
            Truth::Unknown => unknown = true,
            Truth::False => {}
        }
    }
    if unknown {
        Truth::Unknown
    } else {
        Truth::False
    }
}

fn set<E: Ord + Clone>(items: &[E]) -> FinSubset<E> {
    FinSubset::new(items.to_vec()).expect("nonempty")
}

/// Samples the axioms R1-R5 of a regular entailment relation and the
/// predicate forms P1, P2, P3, P5.
pub fn check_regular_axioms<B, R>(e: &B, sampler: &mut R, n: usize) -> AxiomReport
where
    B: EntailmentBackend + ?Sized,
    R: Sampler<B::Group>,
{
    let g = e.group().clone();
    let zero = g.zero();
    let mut report = AxiomReport::new(e.name(), sampler.seed(), n);
    for _ in 0..n {
        // R1: A' |- B' gives A', X |- B', Y.
        let a1 = sampler.subset(3);
        let b1 = sampler.subset(3);
        let a = a1.union(&sampler.subset(2));
        let b = b1.union(&sampler.subset(2));
        let outcome = implication(&[truth(e, &a1, &b1)], truth(e, &a, &b), || {
            format!("A' = {a1}, B' = {b1}, A = {a}, B = {b}")
        });
        report.law_mut("R1 weakening").record(outcome);

        // R2: A, x |- B and A |- B, x give A |- B.
        let a = sampler.subset(3);
        let b = sampler.subset(3);
        let x = if sampler.coin() {
            sampler.pick(&a.union(&b))
        } else {
            sampler.element()
        };
        let outcome = implication(
            &[
                truth(e, &a.with(x.clone()), &b),
                truth(e, &a, &b.with(x.clone())),
            ],
            truth(e, &a, &b),
            || format!("A = {a}, B = {b}, x = {x}"),
        );
        report.law_mut("R2 cut").record(outcome);

        // R3: a <= b gives a |- b.
        let a = sampler.element();
        let b = if sampler.coin() {
            sampler.above(&a)
        } else {
            sampler.element()
        };
        let outcome = implication(
            &[Truth::known(g.leq(&a, &b))],
            truth(
                e,
                &set(std::slice::from_ref(&a)),
                &set(std::slice::from_ref(&b)),
            ),
            || format!("a = {a}, b = {b}"),
        );
        report.law_mut("R3 order").record(outcome);

        // R4: A |- B iff A + x |- B + x.
        let a = sampler.subset(3);
        let b = sampler.subset(3);
        let x = sampler.element();
        let outcome = equivalence(
            truth(e, &a, &b),
            truth(e, &a.translate(&g, &x), &b.translate(&g, &x)),
            || format!("A = {a}, B = {b}, x = {x}"),
        );
        report.law_mut("R4 translation").record(outcome);

        // R5: a + x, b + y |- a + b, x + y.
        let (a, b, x, y) = (
            sampler.element(),
            sampler.element(),
            sampler.element(),
            sampler.element(),
        );
        let lhs = set(&[g.add(&a, &x), g.add(&b, &y)]);
        let rhs = set(&[g.add(&a, &b), g.add(&x, &y)]);
        let outcome = implication(&[], truth(e, &lhs, &rhs), || {
            format!("a = {a}, b = {b}, x = {x}, y = {y}")
        });
        report.law_mut("R5 regularity").record(outcome);

        // P1: R(A') gives R(A', X).
        let a1 = if sampler.coin() {
            sampler.subset(2).with(sampler.below(&zero))
        } else {
            sampler.subset(3)
        };
        let a = a1.union(&sampler.subset(2));
        let outcome = implication(&[r(e, &a1)], r(e, &a), || format!("A' = {a1}, A = {a}"));
        report.law_mut("P1 monotone").record(outcome);

        // P2: R(A + B, A) and R(A + B, B) give R(A + B).
        let a = sampler.subset(2);
        let b = sampler.subset(2);
        let ab = a.sum(&g, &b);
        let outcome = implication(
            &[r(e, &ab.union(&a)), r(e, &ab.union(&b))],
            r(e, &ab),
            || format!("A = {a}, B = {b}"),
        );
        report.law_mut("P2 cut").record(outcome);

        // P3: a <= 0 gives R(a).
        let a = if sampler.coin() {
            sampler.below(&zero)
        } else {
            sampler.element()
        };
        let outcome = implication(
            &[Truth::known(g.leq(&a, &zero))],
            r(e, &set(std::slice::from_ref(&a))),
            || format!("a = {a}"),
        );
        report.law_mut("P3 order").record(outcome);

        // P5: R(x, -x).
        let x = sampler.element();
        let outcome = implication(&[], r(e, &set(&[x.clone(), g.neg(&x)])), || {
            format!("x = {x}")
        });
        report.law_mut("P5 regularity").record(outcome);
    }
    report
}

/// Samples consequences of the axioms: the regularity identities, the
/// case-split lemmas, convexity, `|-_x` elimination, the reduction to `0`,
/// cancellation and the zero-sum corollaries.
pub fn check_derived_lemmas<B, R>(e: &B, sampler: &mut R, n: usize, p_max: usize) -> AxiomReport
where
    B: EntailmentBackend + ?Sized,
    R: Sampler<B::Group>,
{
    let g = e.group().clone();
    let zero = g.zero();
    let zero_set = set(std::slice::from_ref(&zero));
    let mut report = AxiomReport::new(e.name(), sampler.seed(), n);
    for _ in 0..n {
        // a, b |- a + x, b - x and the converse.
        let (a, b, x) = (sampler.element(), sampler.element(), sampler.element());
        let left = set(&[a.clone(), b.clone()]);
        let right = set(&[g.add(&a, &x), g.sub(&b, &x)]);
        let describe = || format!("a = {a}, b = {b}, x = {x}");
        report
            .law_mut("main1 forward")
            .record(implication(&[], truth(e, &left, &right), describe));
        report.law_mut("main1 backward").record(implication(
            &[],
            truth(e, &right, &left),
            describe,
        ));

        // A, A + x |- B and A, A - x |- B give A |- B.
        let a = sampler.subset(2);
        let b = sampler.subset(2);
        let x = sampler.element();
        let plus = a.union(&a.translate(&g, &x));
        let minus = a.union(&a.translate(&g, &g.neg(&x)));
        let outcome = implication(
            &[truth(e, &plus, &b), truth(e, &minus, &b)],
            truth(e, &a, &b),
            || format!("A = {a}, B = {b}, x = {x}"),
        );
        report.law_mut("case split").record(outcome);

        // A, A + x |- B iff A |- B, B - x.
        let b_shift = b.union(&b.translate(&g, &g.neg(&x)));
        let outcome = equivalence(truth(e, &plus, &b), truth(e, &a, &b_shift), || {
            format!("A = {a}, B = {b}, x = {x}")
        });
        report.law_mut("shift across").record(outcome);

        // 0 <= p <= q gives a, a + qx |- a + px.
        let a = sampler.element();
        let x = sampler.element();
        let q = sampler.size(6) as u64 - 1;
        let p = sampler.size(q as usize + 1) as u64 - 1;
        let lhs = set(&[a.clone(), g.add(&a, &g.times(&x, q))]);
        let rhs = set(&[g.add(&a, &g.times(&x, p))]);
        let outcome = implication(&[], truth(e, &lhs, &rhs), || {
            format!("a = {a}, x = {x}, p = {p}, q = {q}")
        });
        report.law_mut("convexity").record(outcome);

        // A |-_x B and A |-_{-x} B give A |- B.
        let a = sampler.subset(2);
        let b = sampler.subset(2);
        let x = sampler.element();
        let premises = [
            entails_forced(e, &x, &a, &b, p_max),
            entails_forced(e, &g.neg(&x), &a, &b, p_max),
        ];
        let outcome = implication(&premises, truth(e, &a, &b), || {
            format!("A = {a}, B = {b}, x = {x}")
        });
        report.law_mut("forced elimination").record(outcome);

        // A |- b_1, ..., b_m iff A - b_1, ..., A - b_m |- 0 iff 0 |- B - A.
        let a = sampler.subset(3);
        let b = sampler.subset(3);
        let direct = truth(e, &a, &b);
        let describe = || format!("A = {a}, B = {b}");
        report.law_mut("reduce to zero").record(equivalence(
            direct,
            truth(e, &a.differences(&g, &b), &zero_set),
            describe,
        ));
        report.law_mut("reduce from zero").record(equivalence(
            direct,
            truth(e, &zero_set, &b.differences(&g, &a)),
            describe,
        ));

        // A + b_1, ..., A + b_m |- b_j for all j gives A |- 0.
        let a = if sampler.coin() {
            sampler.subset(2).with(sampler.below(&zero))
        } else {
            sampler.subset(3)
        };
        let b = sampler.subset(3);
        let ab = a.sum(&g, &b);
        let premises: Vec<Truth> = b
            .iter()
            .map(|bj| truth(e, &ab, &set(std::slice::from_ref(bj))))
            .collect();
        let outcome = implication(&premises, truth(e, &a, &zero_set), || {
            format!("A = {a}, B = {b}")
        });
        report.law_mut("cancel").record(outcome);

        // a_1 + ... + a_n = 0 gives a_1, ..., a_n |- 0.
        let k = sampler.size(4);
        let mut items: Vec<_> = (0..k).map(|_| sampler.element()).collect();
        let total = items.iter().fold(zero.clone(), |acc, x| g.add(&acc, x));
        items.push(g.neg(&total));
        let zs = set(&items);
        report
            .law_mut("zero sum")
            .record(implication(&[], truth(e, &zs, &zero_set), || {
                format!("elements {zs}")
            }));

        // a_1 + ... + a_n = b_1 + ... + b_n gives a_1, ..., a_n |- b_1, ..., b_n.
        let k = sampler.size(3);
        let mut xs: Vec<_> = (0..k + 1).map(|_| sampler.element()).collect();
        let ys: Vec<_> = (0..k + 1).map(|_| sampler.element()).collect();
        let sx = xs[..k].iter().fold(zero.clone(), |acc, x| g.add(&acc, x));
        let sy = ys.iter().fold(zero.clone(), |acc, x| g.add(&acc, x));
        xs[k] = g.sub(&sy, &sx);
        let (xa, yb) = (set(&xs), set(&ys));
        report
            .law_mut("equal sums")
            .record(implication(&[], truth(e, &xa, &yb), || {
                format!("A = {xa}, B = {yb}")
            }));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::Budget;
    use crate::sampling::ZdSampler;
    use crate::systems::MinimalSystem;

    fn int(v: i64) -> ZdElement {
        ZdElement::scalar(v)
    }

    fn ints(v: &[i64]) -> FinSubset<ZdElement> {
        FinSubset::new(v.iter().map(|&x| int(x))).unwrap()
    }

    fn exa1() -> ZdGroup {
        ZdGroup::cone(1, vec![int(60)]).unwrap()
    }

    #[test]
    fn interval_examples() {
        let e = IntervalBackend::new();
        assert!(e.entails(&ints(&[2, 5]), &ints(&[3])).is_holds());
        assert!(e.entails(&ints(&[2, 5]), &ints(&[6])).is_refuted());
        assert!(e.entails(&ints(&[4, -4]), &ints(&[0])).is_holds());
        let Verdict::Holds(Certificate::Cone { n, .. }) = e.holds_at_zero(&ints(&[-2, 3])) else {
            panic!("holds");
        };
        assert_eq!(n, vec![BigInt::from(3), BigInt::from(2)]);
    }

    #[test]
    fn interval_certificates_replay() {
        let e = IntervalBackend::new();
        let g = e.group().clone();
        for c in [ints(&[-6, 4]), ints(&[-3, 0, 5]), ints(&[0])] {
            let Verdict::Holds(Certificate::Cone { n, m }) = e.holds_at_zero(&c) else {
                panic!("holds")
            };
            assert!(
                crate::regularisation::replay_positive(&g, &c, &n, &m),
                "{c}"
            );
        }
    }

    #[test]
    fn cone_backend_is_the_usual_order() {
        let e = ConeBackend::new(exa1());
        assert!(e.entails(&ints(&[0]), &ints(&[1])).is_holds());
        assert!(e.entails(&ints(&[1]), &ints(&[0])).is_refuted());
        assert!(e.entails(&ints(&[10, 24]), &ints(&[10])).is_holds());
    }

    #[test]
    fn forced_relation() {
        let e = IntervalBackend::new();
        // 0 |-_1 1 by a chain reaching 1.
        assert_eq!(
            entails_forced(&e, &int(1), &ints(&[0]), &ints(&[1]), 2),
            Truth::True
        );
        assert_eq!(
            entails_forced(&e, &int(0), &ints(&[0]), &ints(&[1]), 4),
            Truth::False
        );
    }

    #[test]
    fn axioms_on_decidable_backends() {
        let e = ConeBackend::new(exa1());
        let mut s = ZdSampler::new(exa1(), 100, 1);
        let r = check_regular_axioms(&e, &mut s, 100);
        assert!(r.passed(), "{r}");
        let e = IntervalBackend::new();
        let mut s = ZdSampler::new(ZdGroup::discrete(), 10, 2);
        let r = check_regular_axioms(&e, &mut s, 100);
        assert!(r.passed(), "{r}");
        let r = check_derived_lemmas(&e, &mut s, 100, 8);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn raw_minimal_system_is_not_regular() {
        let e = RawBackend::new(MinimalSystem::new(exa1()));
        let mut s = ZdSampler::new(exa1(), 100, 3);
        let r = check_regular_axioms(&e, &mut s, 200);
        assert!(r.law("R5 regularity").unwrap().violations > 0);
    }

    #[test]
    fn regularised_backend_agrees_on_small_claims() {
        let reg = Regulariser::new(
            MinimalSystem::new(ZdGroup::discrete()),
            vec![],
            Budget::new(8, 2),
        );
        let e = RegularisedBackend::new(reg);
        assert!(e.entails(&ints(&[2, 5]), &ints(&[3])).is_holds());
        assert!(e.entails(&ints(&[2, 5]), &ints(&[6])).is_unknown());
    }
}
