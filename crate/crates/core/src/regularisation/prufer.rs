//! The regularisation through witness sets: `R(A)` iff `A + B <=_S B` for
//! some nonempty finite `B`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Elem, FinSubset, PreorderedGroup};
use crate::systems::{meet_leq, SystemOfIdeals};

/// `A + B <=_S B`.
pub fn prufer_check<S: SystemOfIdeals + ?Sized>(
    s: &S,
    a: &FinSubset<Elem<S::Group>>,
    b: &FinSubset<Elem<S::Group>>,
) -> bool {
    meet_leq(s, &a.sum(s.group(), b), b)
}

/// `(A - t) + B <=_S B` for every target `t`, i.e. `B` witnesses `A |> t`
/// in the regularisation for each `t`.
pub fn prufer_check_targets<S: SystemOfIdeals + ?Sized>(
    s: &S,
    a: &FinSubset<Elem<S::Group>>,
    targets: &FinSubset<Elem<S::Group>>,
    b: &FinSubset<Elem<S::Group>>,
) -> bool {
    let g = s.group();
    targets
        .iter()
        .all(|t| prufer_check(s, &a.map(|x| g.sub(x, t)), b))
}

/// The largest `B` inside `candidates` with `A + B <=_S B`, if nonempty.
///
/// Computed as a greatest fixpoint: repeatedly drop every `b` that
/// `A + X` fails to reach. Weakening makes any valid `B ⊆ X` survive each
/// round, so an empty result means no valid witness exists among the
/// candidates.
pub fn prufer_closure<S: SystemOfIdeals + ?Sized>(
    s: &S,
    a: &FinSubset<Elem<S::Group>>,
    candidates: &[Elem<S::Group>],
) -> Option<FinSubset<Elem<S::Group>>> {
    let g = s.group();
    let mut x = FinSubset::new(candidates.to_vec()).ok()?;
    loop {
        let ax = a.sum(g, &x);
        let kept: Vec<_> = x.iter().filter(|b| s.holds(&ax, b)).cloned().collect();
        if kept.len() == x.len() {
            return Some(x);
        }
        x = FinSubset::new(kept).ok()?;
    }
}

/// Finds a witness `B` among `candidates` (given in priority order), or
/// `None` when none exists there. The closure is shrunk greedily: elements
/// are tried for removal from the lowest priority up, each removal followed
/// by re-closing. Gives `None` if the result has more than `size_cap`
/// elements.
pub fn prufer_search<S: SystemOfIdeals + ?Sized>(
    s: &S,
    a: &FinSubset<Elem<S::Group>>,
    candidates: &[Elem<S::Group>],
    size_cap: usize,
) -> Option<FinSubset<Elem<S::Group>>> {
    let mut best = prufer_closure(s, a, candidates)?;
    for c in candidates.iter().rev() {
        if !best.contains(c) || best.len() == 1 {
            continue;
        }
        let rest: Vec<_> = best.iter().filter(|e| *e != c).cloned().collect();
        if let Some(smaller) = prufer_closure(s, a, &rest) {
            best = smaller;
        }
    }
    (best.len() <= size_cap).then_some(best)
}

/// A cycle `a + b_2 <= b_1, ..., a + b_1 <= b_n` inside a witness set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle<E> {
    pub n: usize,
    pub cycle: Vec<E>,
}

/// Walks `b -> first b' in B with a + b' <= b` until an element repeats.
/// The cycle found has length `n` with `n * a <= 0`, which is verified.
pub fn cycle_extract<G: PreorderedGroup>(
    g: &G,
    a: &Elem<G>,
    b: &FinSubset<Elem<G>>,
) -> Result<Cycle<Elem<G>>> {
    let next = |x: &Elem<G>| b.iter().find(|y| g.leq(&g.add(a, y), x)).cloned();
    let mut path: Vec<Elem<G>> = vec![b.min().clone()];
    loop {
        let cur = path.last().expect("nonempty path");
        let Some(n) = next(cur) else {
            return Err(Error::Precondition(format!(
                "{} + B does not reach {cur}",
                a
            )));
        };
        if let Some(pos) = path.iter().position(|p| *p == n) {
            let cycle = path.split_off(pos);
            let len = cycle.len();
            if !g.leq(&g.times(a, len as u64), &g.zero()) {
                return Err(Error::Precondition(format!(
                    "cycle of length {len} but {len}·{a} is not <= 0"
                )));
            }
            return Ok(Cycle { n: len, cycle });
        }
        path.push(n);
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

    fn set(v: impl IntoIterator<Item = i64>) -> FinSubset<ZdElement> {
        FinSubset::new(v.into_iter().map(int)).unwrap()
    }

    /// `0, -1, 1, -2, 2, ...` up to `r`.
    fn by_size(r: i64) -> Vec<ZdElement> {
        std::iter::once(0)
            .chain((1..=r).flat_map(|i| [-i, i]))
            .map(int)
            .collect()
    }

    fn exa1() -> MinimalSystem<ZdGroup> {
        MinimalSystem::new(ZdGroup::cone(1, vec![int(60)]).unwrap())
    }

    #[test]
    fn sixty_consecutive_witnesses() {
        let s = exa1();
        assert!(prufer_check(&s, &set([-1]), &set(-59..=0)));
        assert!(!prufer_check(&s, &set([-1]), &set(-58..=0)));
        assert!(prufer_check(&s, &set([0]), &set([0])));
    }

    #[test]
    fn search_finds_witness_for_minus_one() {
        let s = exa1();
        let b = prufer_search(&s, &set([-1]), &by_size(60), 128).unwrap();
        assert!(prufer_check(&s, &set([-1]), &b));
        let c = cycle_extract(s.group(), &int(-1), &b).unwrap();
        assert_eq!(c.n % 60, 0);
        assert_eq!(prufer_search(&s, &set([0]), &by_size(5), 4), Some(set([0])));
    }

    #[test]
    fn no_witness_for_positive_element() {
        let s = exa1();
        assert!(prufer_closure(&s, &set([1]), &by_size(60)).is_none());
        let d = MinimalSystem::new(ZdGroup::discrete());
        assert!(prufer_closure(&d, &set([1]), &by_size(20)).is_none());
    }

    #[test]
    fn three_cycle() {
        let g = ZdGroup::cone(1, vec![int(60)]).unwrap();
        let c = cycle_extract(&g, &int(-20), &set([0, -20, -40])).unwrap();
        assert_eq!(c.n, 3);
        assert!(cycle_extract(&g, &int(1), &set([0])).is_err());
        assert_eq!(cycle_extract(&g, &int(0), &set([0])).unwrap().n, 1);
    }
}
