//! Forcing `x <= 0` on a system of ideals.
//!
//! `T_x(S)` proves `A |> b` exactly when `S` proves it from some finite chain
//! `A, A - x, ..., A - kx`; nesting several `T`s expands `A` over a box of
//! multiples. All searches here ascend in `k` and stop at a budget.

use serde::{Deserialize, Serialize};

use crate::certificate::ForceCertificate;
use crate::group::{Elem, FinSubset, PreorderedGroup};
use crate::report::Truth;
use crate::systems::{meet_leq, SystemOfIdeals};

pub const DEFAULT_K_MAX: usize = 128;
pub const DEFAULT_N_MAX: usize = 2;

/// Search limits: chain depth per forcing level and number of forcing
/// elements in a regularisation search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Budget {
    pub k_max: usize,
    pub n_max: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            k_max: DEFAULT_K_MAX,
            n_max: DEFAULT_N_MAX,
        }
    }
}

impl Budget {
    pub fn new(k_max: usize, n_max: usize) -> Self {
        Budget { k_max, n_max }
    }
}

/// Outcome of a query that may be only semi-decidable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "certificate", rename_all = "lowercase")]
pub enum Verdict<C> {
    Holds(C),
    /// Decided false. Only produced where a decision procedure exists.
    Refuted,
    /// The budget ran out; nothing is claimed.
    Unknown,
}

impl<C> Verdict<C> {
    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown)
    }

    pub fn truth(&self) -> Truth {
        match self {
            Verdict::Holds(_) => Truth::True,
            Verdict::Refuted => Truth::False,
            Verdict::Unknown => Truth::Unknown,
        }
    }

    pub fn certificate(&self) -> Option<&C> {
        match self {
            Verdict::Holds(c) => Some(c),
            _ => None,
        }
    }

    pub fn map<D>(self, f: impl FnOnce(C) -> D) -> Verdict<D> {
        match self {
            Verdict::Holds(c) => Verdict::Holds(f(c)),
            Verdict::Refuted => Verdict::Refuted,
            Verdict::Unknown => Verdict::Unknown,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds(_) => "holds",
            Verdict::Refuted => "refuted",
            Verdict::Unknown => "unknown",
        }
    }
}

/// `A, A - x, ..., A - kx`.
pub fn chain<G: PreorderedGroup>(
    g: &G,
    a: &FinSubset<Elem<G>>,
    x: &Elem<G>,
    k: usize,
) -> FinSubset<Elem<G>> {
    box_expansion(g, a, std::slice::from_ref(x), &[k])
}

/// `{a - i_1 x_1 - ... - i_n x_n : a in A, 0 <= i_l <= k_l}`.
pub fn box_expansion<G: PreorderedGroup>(
    g: &G,
    a: &FinSubset<Elem<G>>,
    steps: &[Elem<G>],
    ks: &[usize],
) -> FinSubset<Elem<G>> {
    assert_eq!(steps.len(), ks.len(), "one depth per forcing element");
    let mut current: Vec<Elem<G>> = a.elements().to_vec();
    for (x, &k) in steps.iter().zip(ks) {
        let mut layer = Vec::with_capacity(current.len() * (k + 1));
        for e in &current {
            let mut cur = e.clone();
            for _ in 0..k {
                let next = g.sub(&cur, x);
                layer.push(cur);
                cur = next;
            }
            layer.push(cur);
        }
        layer.sort_unstable();
        layer.dedup();
        current = layer;
    }
    FinSubset::new(current).expect("A is nonempty")
}

/// Nested forcing `T_{x_1} ... T_{x_n}(S)` proves `A |> b` for all targets.
///
/// Returns per-level depths: first the least uniform depth `K` (every level
/// at `K`) found by doubling then bisection, then each level in turn lowered
/// to its least value with the others fixed. With one level this is the
/// least `k`. Success is monotone in every depth, so bisection is sound.
pub fn nested_search<S: SystemOfIdeals + ?Sized>(
    s: &S,
    a: &FinSubset<Elem<S::Group>>,
    targets: &FinSubset<Elem<S::Group>>,
    steps: &[Elem<S::Group>],
    k_max: usize,
) -> Option<Vec<usize>> {
    let g = s.group();
    let n = steps.len();
    let proves = |ks: &[usize]| meet_leq(s, &box_expansion(g, a, steps, ks), targets);
    if proves(&vec![0; n]) {
        return Some(vec![0; n]);
    }
    if n == 0 || !proves(&vec![k_max; n]) {
        return None;
    }
    // Least uniform depth in (lo, hi].
    let mut lo = 0;
    let mut hi = None;
    let mut probe = 1;
    loop {
        let k = probe.min(k_max);
        if proves(&vec![k; n]) {
            hi = Some(k);
            break;
        }
        lo = k;
        if k == k_max {
            break;
        }
        probe = probe * 2 + 1;
    }
    let mut hi = hi?;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if proves(&vec![mid; n]) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut ks = vec![hi; n];
    for l in 0..n {
        let mut hi = ks[l];
        let mut trial = ks.clone();
        trial[l] = 0;
        if proves(&trial) {
            ks[l] = 0;
            continue;
        }
        let mut low = 0;
        while hi - low > 1 {
            let mid = low + (hi - low) / 2;
            trial[l] = mid;
            if proves(&trial) {
                hi = mid;
            } else {
                low = mid;
            }
        }
        ks[l] = hi;
    }
    Some(ks)
}

/// `T_x(S)` proves `A |> b` for every target `b`; minimal depth reported.
pub fn t_force<S: SystemOfIdeals + ?Sized>(
    s: &S,
    x: &Elem<S::Group>,
    a: &FinSubset<Elem<S::Group>>,
    targets: &FinSubset<Elem<S::Group>>,
    budget: &Budget,
) -> Verdict<ForceCertificate<Elem<S::Group>>> {
    t_compose(s, std::slice::from_ref(x), a, targets, budget)
}

/// `T_{x_1}(... T_{x_n}(S) ...)` proves `A |> b` for every target `b`.
pub fn t_compose<S: SystemOfIdeals + ?Sized>(
    s: &S,
    xs: &[Elem<S::Group>],
    a: &FinSubset<Elem<S::Group>>,
    targets: &FinSubset<Elem<S::Group>>,
    budget: &Budget,
) -> Verdict<ForceCertificate<Elem<S::Group>>> {
    match nested_search(s, a, targets, xs, budget.k_max) {
        Some(k) => Verdict::Holds(ForceCertificate::T {
            chain: box_expansion(s.group(), a, xs, &k),
            x: xs.to_vec(),
            k,
            base_system: s.name().to_string(),
        }),
        None => Verdict::Unknown,
    }
}

/// `U_x(S) = T_x(S) ∩ T_{-x}(S)`.
pub fn u_force<S: SystemOfIdeals + ?Sized>(
    s: &S,
    x: &Elem<S::Group>,
    a: &FinSubset<Elem<S::Group>>,
    targets: &FinSubset<Elem<S::Group>>,
    budget: &Budget,
) -> Verdict<ForceCertificate<Elem<S::Group>>> {
    let g = s.group();
    let neg = g.neg(x);
    let Some(plus) = nested_search(s, a, targets, std::slice::from_ref(x), budget.k_max) else {
        return Verdict::Unknown;
    };
    let Some(minus) = nested_search(s, a, targets, std::slice::from_ref(&neg), budget.k_max) else {
        return Verdict::Unknown;
    };
    Verdict::Holds(ForceCertificate::U {
        x: x.clone(),
        k: [plus[0], minus[0]],
        chain: [chain(g, a, x, plus[0]), chain(g, a, &neg, minus[0])],
        base_system: s.name().to_string(),
    })
}

/// Least full-chain depth, with whether the two-point set `A, A - kx` at that
/// depth would already suffice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChainDepth {
    pub k: usize,
    pub two_point_holds: bool,
}

pub fn min_chain_depth<S: SystemOfIdeals + ?Sized>(
    s: &S,
    x: &Elem<S::Group>,
    a: &FinSubset<Elem<S::Group>>,
    targets: &FinSubset<Elem<S::Group>>,
    k_max: usize,
) -> Option<ChainDepth> {
    let g = s.group();
    let k = nested_search(s, a, targets, std::slice::from_ref(x), k_max)?[0];
    Some(ChainDepth {
        k,
        two_point_holds: meet_leq(s, &two_point(g, a, x, k), targets),
    })
}

/// `A, A - kx`.
pub fn two_point<G: PreorderedGroup>(
    g: &G,
    a: &FinSubset<Elem<G>>,
    x: &Elem<G>,
    k: usize,
) -> FinSubset<Elem<G>> {
    let kx = g.times(x, k as u64);
    a.union(&a.map(|e| g.sub(e, &kx)))
}

/// Nested forcing of a base system, answering `holds` by bounded search.
pub struct ForcedSystem<S: SystemOfIdeals> {
    inner: S,
    xs: Vec<Elem<S::Group>>,
    name: String,
    k_max: usize,
}

impl<S: SystemOfIdeals> ForcedSystem<S> {
    pub fn new(inner: S, xs: Vec<Elem<S::Group>>, k_max: usize) -> Self {
        let name = format!(
            "T[{}]({})",
            xs.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(","),
            inner.name()
        );
        ForcedSystem {
            inner,
            xs,
            name,
            k_max,
        }
    }
}

impl<S: SystemOfIdeals> SystemOfIdeals for ForcedSystem<S> {
    type Group = S::Group;

    fn group(&self) -> &Self::Group {
        self.inner.group()
    }

    fn name(&self) -> &str {
        &self.name
    }

    fn holds(&self, a: &FinSubset<Elem<S::Group>>, b: &Elem<S::Group>) -> bool {
        nested_search(
            &self.inner,
            a,
            &FinSubset::singleton(b.clone()),
            &self.xs,
            self.k_max,
        )
        .is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ZdElement, ZdGroup};
    use crate::systems::MinimalSystem;

    fn exa1() -> MinimalSystem<ZdGroup> {
        MinimalSystem::new(ZdGroup::cone(1, vec![ZdElement::scalar(60)]).unwrap())
    }

    fn set(v: &[i64]) -> FinSubset<ZdElement> {
        FinSubset::new(v.iter().map(|&x| ZdElement::scalar(x))).unwrap()
    }

    fn int(v: i64) -> ZdElement {
        ZdElement::scalar(v)
    }

    #[test]
    fn chain_of_sevens() {
        let g = exa1().group().clone();
        assert_eq!(chain(&g, &set(&[3]), &int(-7), 3), set(&[3, 10, 17, 24]));
        assert_eq!(two_point(&g, &set(&[3]), &int(-7), 3), set(&[3, 24]));
        assert_eq!(
            box_expansion(&g, &set(&[0]), &[int(1), int(10)], &[1, 1]),
            set(&[0, -1, -10, -11])
        );
    }

    #[test]
    fn forcing_minus_seven() {
        let s = exa1();
        let v = t_force(
            &s,
            &int(-7),
            &set(&[3]),
            &set(&[130, 84]),
            &Budget::new(10, 1),
        );
        match v {
            Verdict::Holds(ForceCertificate::T { k, chain, .. }) => {
                assert_eq!(k, vec![3]);
                assert_eq!(chain, set(&[3, 10, 17, 24]));
            }
            other => panic!("unexpected {other:?}"),
        }
        let d = min_chain_depth(&s, &int(-7), &set(&[3]), &set(&[130]), 10).unwrap();
        assert_eq!(
            d,
            ChainDepth {
                k: 1,
                two_point_holds: true
            }
        );
        let d = min_chain_depth(&s, &int(-7), &set(&[3]), &set(&[130, 84]), 10).unwrap();
        assert_eq!(
            d,
            ChainDepth {
                k: 3,
                two_point_holds: false
            }
        );
    }

    #[test]
    fn k_zero_when_base_holds() {
        let s = exa1();
        let v = t_force(
            &s,
            &int(5),
            &set(&[10, 24]),
            &set(&[130]),
            &Budget::default(),
        );
        assert!(matches!(v, Verdict::Holds(ForceCertificate::T { ref k, .. }) if k == &vec![0]));
    }

    #[test]
    fn u_one_on_minus_one() {
        let s = exa1();
        let v = u_force(&s, &int(1), &set(&[-1]), &set(&[0]), &Budget::new(64, 1));
        match v {
            Verdict::Holds(ForceCertificate::U { k, .. }) => assert_eq!(k, [59, 1]),
            other => panic!("unexpected {other:?}"),
        }
        // Depth 58 on the positive side is one short of -60.
        assert!(u_force(&s, &int(1), &set(&[-1]), &set(&[0]), &Budget::new(58, 1)).is_unknown());
    }

    #[test]
    fn composition_matches_nested_chains() {
        let s = exa1();
        let v = t_compose(
            &s,
            &[int(1), int(-1)],
            &set(&[-1]),
            &set(&[0]),
            &Budget::new(64, 2),
        );
        assert!(v.is_holds());
        let w = t_compose(
            &s,
            &[int(-1), int(1)],
            &set(&[-1]),
            &set(&[0]),
            &Budget::new(64, 2),
        );
        assert!(w.is_holds());
    }

    #[test]
    fn forced_system_contains_base() {
        let s = ForcedSystem::new(exa1(), vec![int(-7)], 16);
        assert!(s.holds(&set(&[3]), &int(24)));
        assert!(s.holds(&set(&[10]), &int(130)));
        assert!(!s.holds(&set(&[3]), &int(2)));
    }
}
