//! Formal meets `/\A` and the Grothendieck l-group of a regular entailment
//! relation, modelled by formal differences `/\A - /\B`.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::entailment::{require_discrete_z, EntailmentBackend};
use crate::error::Result;
use crate::group::{Elem, FinSubset, PreorderedGroup, ZdElement, ZdGroup};
use crate::report::{equivalence, implication, AxiomReport, Truth};
use crate::sampling::Sampler;

/// `/\A <= /\B` iff `A |- b` for every `b` in `B`.
pub fn meet_monoid_leq<B: EntailmentBackend + ?Sized>(
    e: &B,
    a: &FinSubset<Elem<B::Group>>,
    b: &FinSubset<Elem<B::Group>>,
) -> Truth {
    b.iter()
        .map(|x| e.entails(a, &FinSubset::singleton(x.clone())).truth())
        .fold(Truth::True, Truth::and)
}

/// `/\A - /\B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(bound(serialize = "E: Serialize"))]
pub struct LGroupElement<E> {
    #[serde(rename = "A")]
    pub plus: FinSubset<E>,
    #[serde(rename = "B")]
    pub minus: FinSubset<E>,
}

impl<E: fmt::Display> fmt::Display for LGroupElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "/\\{} - /\\{}", self.plus, self.minus)
    }
}

/// Operations of the l-group over a fixed backend.
pub struct LGroup<B> {
    backend: B,
}

impl<B: EntailmentBackend> LGroup<B> {
    pub fn new(backend: B) -> Self {
        LGroup { backend }
    }

    pub fn backend(&self) -> &B {
        &self.backend
    }

    fn g(&self) -> &B::Group {
        self.backend.group()
    }

    pub fn element(
        &self,
        plus: FinSubset<Elem<B::Group>>,
        minus: FinSubset<Elem<B::Group>>,
    ) -> LGroupElement<Elem<B::Group>> {
        LGroupElement { plus, minus }
    }

    /// `phi(a) = /\{a} - /\{0}`.
    pub fn phi(&self, a: &Elem<B::Group>) -> LGroupElement<Elem<B::Group>> {
        self.element(
            FinSubset::singleton(a.clone()),
            FinSubset::singleton(self.g().zero()),
        )
    }

    pub fn zero(&self) -> LGroupElement<Elem<B::Group>> {
        self.phi(&self.g().zero())
    }

    pub fn add(
        &self,
        x: &LGroupElement<Elem<B::Group>>,
        y: &LGroupElement<Elem<B::Group>>,
    ) -> LGroupElement<Elem<B::Group>> {
        let g = self.g();
        self.element(x.plus.sum(g, &y.plus), x.minus.sum(g, &y.minus))
    }

    pub fn neg(&self, x: &LGroupElement<Elem<B::Group>>) -> LGroupElement<Elem<B::Group>> {
        self.element(x.minus.clone(), x.plus.clone())
    }

    pub fn sub(
        &self,
        x: &LGroupElement<Elem<B::Group>>,
        y: &LGroupElement<Elem<B::Group>>,
    ) -> LGroupElement<Elem<B::Group>> {
        self.add(x, &self.neg(y))
    }

    /// `(A, B) /\ (C, D) = ((A + D) ∪ (C + B), B + D)`.
    pub fn meet(
        &self,
        x: &LGroupElement<Elem<B::Group>>,
        y: &LGroupElement<Elem<B::Group>>,
    ) -> LGroupElement<Elem<B::Group>> {
        let g = self.g();
        let plus = x.plus.sum(g, &y.minus).union(&y.plus.sum(g, &x.minus));
        self.element(plus, x.minus.sum(g, &y.minus))
    }

    /// `x \/ y = -((-x) /\ (-y))`.
    pub fn join(
        &self,
        x: &LGroupElement<Elem<B::Group>>,
        y: &LGroupElement<Elem<B::Group>>,
    ) -> LGroupElement<Elem<B::Group>> {
        self.neg(&self.meet(&self.neg(x), &self.neg(y)))
    }

    /// `(A, B) <= (C, D)` iff `/\(A + D) <= /\(C + B)`.
    pub fn leq(
        &self,
        x: &LGroupElement<Elem<B::Group>>,
        y: &LGroupElement<Elem<B::Group>>,
    ) -> Truth {
        let g = self.g();
        meet_monoid_leq(
            &self.backend,
            &x.plus.sum(g, &y.minus),
            &y.plus.sum(g, &x.minus),
        )
    }

    /// Equality in the l-group: mutual `<=`.
    pub fn equiv(
        &self,
        x: &LGroupElement<Elem<B::Group>>,
        y: &LGroupElement<Elem<B::Group>>,
    ) -> Truth {
        self.leq(x, y).and(self.leq(y, x))
    }
}

impl<B: EntailmentBackend<Group = ZdGroup>> LGroup<B> {
    /// The normal form on intervals of `Z`: `(min A - min B, max A - max B)`.
    pub fn to_pair(&self, x: &LGroupElement<ZdElement>) -> Result<(BigInt, BigInt)> {
        require_discrete_z(&self.backend)?;
        let c = |e: &ZdElement| e.coords()[0].clone();
        Ok((
            c(FinSubset::min(&x.plus)) - c(FinSubset::min(&x.minus)),
            c(FinSubset::max(&x.plus)) - c(FinSubset::max(&x.minus)),
        ))
    }
}

fn sample_element<B, R>(lg: &LGroup<B>, sampler: &mut R) -> LGroupElement<Elem<B::Group>>
where
    B: EntailmentBackend,
    R: Sampler<B::Group>,
{
    lg.element(sampler.subset(2), sampler.subset(2))
}

/// Samples `X + A <= X + B => A <= B` in the meet-monoid. Besides random
/// triples, some instances take `X` an arithmetic progression with step `d`
/// and `B = A + d`, where a non-cancellative monoid tends to absorb the
/// shift.
pub fn check_cancellative<B, R>(e: &B, sampler: &mut R, n: usize) -> AxiomReport
where
    B: EntailmentBackend + ?Sized,
    R: Sampler<B::Group>,
{
    let g = e.group().clone();
    let mut report = AxiomReport::new(e.name(), sampler.seed(), n);
    for _ in 0..n {
        let a = sampler.subset(2);
        let (x, b) = if sampler.coin() {
            let start = sampler.element();
            let d = sampler.element();
            let len = sampler.size(4);
            let steps: Vec<_> = (0..len as u64)
                .map(|i| g.add(&start, &g.times(&d, i)))
                .collect();
            (
                FinSubset::new(steps).expect("len >= 1"),
                a.translate(&g, &d),
            )
        } else {
            (sampler.subset(3), sampler.subset(2))
        };
        let outcome = implication(
            &[meet_monoid_leq(e, &x.sum(&g, &a), &x.sum(&g, &b))],
            meet_monoid_leq(e, &a, &b),
            || format!("X = {x}, A = {a}, B = {b}"),
        );
        report.law_mut("cancellative").record(outcome);
    }
    report
}

/// Samples group, lattice and compatibility laws together with the
/// properties of `phi`.
pub fn check_lgroup_laws<B, R>(lg: &LGroup<B>, sampler: &mut R, n: usize) -> AxiomReport
where
    B: EntailmentBackend,
    R: Sampler<B::Group>,
{
    let g = lg.backend().group().clone();
    let mut report = AxiomReport::new(lg.backend().name(), sampler.seed(), n);
    let eq = |law: &str,
              report: &mut AxiomReport,
              l: &LGroupElement<Elem<B::Group>>,
              r: &LGroupElement<Elem<B::Group>>,
              ctx: &dyn Fn() -> String| {
        report
            .law_mut(law)
            .record(implication(&[], lg.equiv(l, r), || {
                format!("{ctx}: {l} vs {r}", ctx = ctx())
            }));
    };
    for _ in 0..n {
        let x = sample_element(lg, sampler);
        let y = sample_element(lg, sampler);
        let z = sample_element(lg, sampler);
        let ctx = || format!("x = {x}, y = {y}, z = {z}");

        eq(
            "add associative",
            &mut report,
            &lg.add(&lg.add(&x, &y), &z),
            &lg.add(&x, &lg.add(&y, &z)),
            &ctx,
        );
        eq(
            "add commutative",
            &mut report,
            &lg.add(&x, &y),
            &lg.add(&y, &x),
            &ctx,
        );
        eq("add zero", &mut report, &lg.add(&x, &lg.zero()), &x, &ctx);
        eq(
            "add inverse",
            &mut report,
            &lg.add(&x, &lg.neg(&x)),
            &lg.zero(),
            &ctx,
        );
        eq(
            "meet commutative",
            &mut report,
            &lg.meet(&x, &y),
            &lg.meet(&y, &x),
            &ctx,
        );
        eq(
            "meet associative",
            &mut report,
            &lg.meet(&lg.meet(&x, &y), &z),
            &lg.meet(&x, &lg.meet(&y, &z)),
            &ctx,
        );
        eq(
            "absorption",
            &mut report,
            &lg.meet(&x, &lg.join(&x, &y)),
            &x,
            &ctx,
        );
        eq(
            "absorption dual",
            &mut report,
            &lg.join(&x, &lg.meet(&x, &y)),
            &x,
            &ctx,
        );
        eq(
            "distributive",
            &mut report,
            &lg.meet(&x, &lg.join(&y, &z)),
            &lg.join(&lg.meet(&x, &y), &lg.meet(&x, &z)),
            &ctx,
        );
        eq(
            "translate meet",
            &mut report,
            &lg.add(&lg.meet(&x, &y), &z),
            &lg.meet(&lg.add(&x, &z), &lg.add(&y, &z)),
            &ctx,
        );

        let m = lg.meet(&x, &y);
        report.law_mut("meet below").record(implication(
            &[],
            lg.leq(&m, &x).and(lg.leq(&m, &y)),
            ctx,
        ));
        report.law_mut("meet greatest").record(implication(
            &[lg.leq(&z, &x), lg.leq(&z, &y)],
            lg.leq(&z, &m),
            ctx,
        ));
        report.law_mut("compatible").record(equivalence(
            lg.leq(&x, &y),
            lg.leq(&lg.add(&x, &z), &lg.add(&y, &z)),
            ctx,
        ));

        // A representative change (A + u, B + u) must not change anything.
        let u = sampler.element();
        let x2 = lg.element(x.plus.translate(&g, &u), x.minus.translate(&g, &u));
        eq("representative", &mut report, &x, &x2, &ctx);
        eq(
            "congruence add",
            &mut report,
            &lg.add(&x, &y),
            &lg.add(&x2, &y),
            &ctx,
        );
        eq(
            "congruence meet",
            &mut report,
            &lg.meet(&x, &y),
            &lg.meet(&x2, &y),
            &ctx,
        );
        report
            .law_mut("congruence leq")
            .record(equivalence(lg.leq(&x, &y), lg.leq(&x2, &y), ctx));

        let (a, b) = (sampler.element(), sampler.element());
        let pa = lg.phi(&a);
        let pb = lg.phi(&b);
        let pctx = || format!("a = {a}, b = {b}");
        eq(
            "phi additive",
            &mut report,
            &lg.add(&pa, &pb),
            &lg.phi(&g.add(&a, &b)),
            &pctx,
        );
        let direct = lg
            .backend()
            .entails(
                &FinSubset::singleton(a.clone()),
                &FinSubset::singleton(b.clone()),
            )
            .truth();
        report
            .law_mut("phi reflects")
            .record(equivalence(lg.leq(&pa, &pb), direct, pctx));
    }
    report
}
