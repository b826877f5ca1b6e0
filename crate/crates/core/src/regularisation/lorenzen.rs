//! Semi-decision of the regularisation `L(S)` by sign-vector expansion.
//!
//! `L(S)` proves `A |> b` when for some forcing elements `x_1, ..., x_n` every
//! sign choice `e_1, ..., e_n` admits depths `k_1, ..., k_n` such that `S`
//! proves `A |> b` from the box `A - sum i_l e_l x_l`, `0 <= i_l <= k_l`.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::certificate::{LorenzenBranch, LorenzenCertificate};
use crate::forcing::{box_expansion, nested_search, Budget, Verdict};
use crate::group::{Elem, FinSubset, PreorderedGroup};
use crate::systems::{meet_leq, SystemOfIdeals};

/// Pairwise differences `s_j - s_i` (`i < j`) of `A` together with the
/// targets, in sorted order, followed by `extras`.
pub fn default_pool<G: PreorderedGroup>(
    g: &G,
    a: &FinSubset<Elem<G>>,
    targets: &FinSubset<Elem<G>>,
    extras: &[Elem<G>],
) -> Vec<Elem<G>> {
    let all = a.union(targets);
    let items = all.elements();
    let mut pool = Vec::new();
    for (i, si) in items.iter().enumerate() {
        for sj in &items[i + 1..] {
            pool.push(g.sub(sj, si));
        }
    }
    pool.extend_from_slice(extras);
    pool
}

/// Drops zero and any element equal to an earlier element or its negation,
/// keeping the first occurrence. `U_x` and `U_{-x}` coincide and `U_0` is
/// the identity, so nothing is lost.
pub fn normalize_pool<G: PreorderedGroup>(g: &G, pool: &[Elem<G>]) -> Vec<Elem<G>> {
    let zero = g.zero();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for x in pool {
        if *x == zero || seen.contains(x) {
            continue;
        }
        seen.insert(x.clone());
        seen.insert(g.neg(x));
        out.push(x.clone());
    }
    out
}

/// Sign vectors of length `n` in lexicographic order with `+1` before `-1`.
pub fn sign_vectors(n: usize) -> Vec<Vec<i8>> {
    (0..1usize << n)
        .map(|mask| {
            (0..n)
                .map(|l| if mask >> (n - 1 - l) & 1 == 0 { 1 } else { -1 })
                .collect()
        })
        .collect()
}

/// `k`-element index subsets of `0..m` in lexicographic order.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

pub fn signed_steps<G: PreorderedGroup>(g: &G, xs: &[Elem<G>], signs: &[i8]) -> Vec<Elem<G>> {
    xs.iter()
        .zip(signs)
        .map(|(x, &e)| if e > 0 { x.clone() } else { g.neg(x) })
        .collect()
}

/// Searches forcing sets drawn from `pool` by increasing size (at most
/// `budget.n_max`), index subsets in lexicographic order. For each set every
/// sign branch is first probed at the full depth `budget.k_max`; only when
/// all succeed are the depths minimised. The first success is returned.
pub fn l_holds<S: SystemOfIdeals + ?Sized>(
    s: &S,
    a: &FinSubset<Elem<S::Group>>,
    targets: &FinSubset<Elem<S::Group>>,
    pool: &[Elem<S::Group>],
    budget: &Budget,
) -> Verdict<LorenzenCertificate<Elem<S::Group>>> {
    let g = s.group();
    let pool = normalize_pool(g, pool);
    for n in 0..=budget.n_max.min(pool.len()) {
        let signs = sign_vectors(n);
        'subsets: for combo in combinations(pool.len(), n) {
            let xs: Vec<Elem<S::Group>> = combo.iter().map(|&i| pool[i].clone()).collect();
            let full = vec![budget.k_max; n];
            for eps in &signs {
                let steps = signed_steps(g, &xs, eps);
                if !meet_leq(s, &box_expansion(g, a, &steps, &full), targets) {
                    continue 'subsets;
                }
            }
            let mut branches = Vec::with_capacity(signs.len());
            for eps in &signs {
                let steps = signed_steps(g, &xs, eps);
                let ks = nested_search(s, a, targets, &steps, budget.k_max)
                    .expect("the full-depth probe succeeded");
                branches.push(LorenzenBranch {
                    signs: eps.clone(),
                    ks,
                });
            }
            return Verdict::Holds(LorenzenCertificate {
                xs,
                branches,
                base_system: s.name().to_string(),
            });
        }
    }
    Verdict::Unknown
}

/// A regularised system with fixed pool extras and budget, caching verdicts
/// by `(A, targets)`.
pub struct Regulariser<S: SystemOfIdeals> {
    base: S,
    extras: Vec<Elem<S::Group>>,
    budget: Budget,
    name: String,
    cache: VerdictCache<Elem<S::Group>>,
}

type VerdictCache<E> =
    RwLock<HashMap<(FinSubset<E>, FinSubset<E>), Verdict<LorenzenCertificate<E>>>>;

impl<S: SystemOfIdeals> Regulariser<S> {
    pub fn new(base: S, extras: Vec<Elem<S::Group>>, budget: Budget) -> Self {
        let name = format!("L({})", base.name());
        Regulariser {
            base,
            extras,
            budget,
            name,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn base(&self) -> &S {
        &self.base
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn extras(&self) -> &[Elem<S::Group>] {
        &self.extras
    }

    /// `L(S)` proves `A |> t` for every target `t`, using the default pool.
    pub fn query(
        &self,
        a: &FinSubset<Elem<S::Group>>,
        targets: &FinSubset<Elem<S::Group>>,
    ) -> Verdict<LorenzenCertificate<Elem<S::Group>>> {
        let key = (a.clone(), targets.clone());
        if let Some(v) = self.cache.read().expect("cache poisoned").get(&key) {
            return v.clone();
        }
        let pool = default_pool(self.base.group(), a, targets, &self.extras);
        let v = l_holds(&self.base, a, targets, &pool, &self.budget);
        self.cache
            .write()
            .expect("cache poisoned")
            .insert(key, v.clone());
        v
    }
}

/// Budgeted `L(S)` as a system of ideals; unresolved queries count as false.
impl<S: SystemOfIdeals> SystemOfIdeals for Regulariser<S> {
    type Group = S::Group;

    fn group(&self) -> &Self::Group {
        self.base.group()
    }

    fn name(&self) -> &str {
        &self.name
    }

    fn holds(&self, a: &FinSubset<Elem<S::Group>>, b: &Elem<S::Group>) -> bool {
        self.query(a, &FinSubset::singleton(b.clone())).is_holds()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ZdElement, ZdGroup};
    use crate::systems::MinimalSystem;

    fn int(v: i64) -> ZdElement {
        ZdElement::scalar(v)
    }

    fn set(v: &[i64]) -> FinSubset<ZdElement> {
        FinSubset::new(v.iter().map(|&x| int(x))).unwrap()
    }

    #[test]
    fn enumeration_orders() {
        assert_eq!(
            sign_vectors(2),
            vec![vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]
        );
        assert_eq!(sign_vectors(0), vec![Vec::<i8>::new()]);
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn pool_normalization() {
        let g = ZdGroup::discrete();
        let pool = normalize_pool(&g, &[int(0), int(3), int(-3), int(2), int(3)]);
        assert_eq!(pool, vec![int(3), int(2)]);
        assert_eq!(default_pool(&g, &set(&[-1]), &set(&[0]), &[]), vec![int(1)]);
    }

    #[test]
    fn zero_entails_one_in_the_regularisation() {
        let s = MinimalSystem::new(ZdGroup::cone(1, vec![int(60)]).unwrap());
        let v = l_holds(&s, &set(&[-1]), &set(&[0]), &[int(1)], &Budget::new(64, 1));
        let cert = v.certificate().expect("holds");
        assert_eq!(cert.xs, vec![int(1)]);
        assert_eq!(cert.branches[0].ks, vec![59]);
        assert_eq!(cert.branches[1].ks, vec![1]);
        // Already in S: no forcing needed.
        let v = l_holds(&s, &set(&[10, 24]), &set(&[130]), &[], &Budget::default());
        assert!(v.certificate().unwrap().xs.is_empty());
    }

    #[test]
    fn discrete_intervals() {
        let s = MinimalSystem::new(ZdGroup::discrete());
        let r = Regulariser::new(s, vec![], Budget::new(8, 2));
        // 0 lies between -2 and 3.
        assert!(r.holds(&set(&[-2, 3]), &int(0)));
        assert!(!r.holds(&set(&[1, 3]), &int(0)));
    }
}
