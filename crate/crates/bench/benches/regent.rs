use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;

use regent_core::entailment::{EntailmentBackend, RegularisedBackend};
use regent_core::forcing::{t_force, u_force};
use regent_core::group::{FinSubset, ZdElement, ZdGroup};
use regent_core::instances;
use regent_core::number_ring::hnf::hnf;
use regent_core::regularisation::{lcd_decide, Regulariser};
use regent_core::{Budget, SystemOfIdeals};

fn ints(g: &ZdGroup, xs: &[i64]) -> FinSubset<ZdElement> {
    FinSubset::new(xs.iter().map(|&x| g.int(x)).collect::<Vec<_>>()).unwrap()
}

fn forcing(c: &mut Criterion) {
    let s = instances::exa1_system();
    let g = s.group().clone();
    let (a, b) = (ints(&g, &[3]), ints(&g, &[130, 84]));
    c.bench_function("t_force exa1 -7", |bench| {
        bench.iter(|| t_force(&s, black_box(&g.int(-7)), &a, &b, &Budget::default()))
    });
    let (a, b) = (ints(&g, &[-1]), ints(&g, &[0]));
    c.bench_function("u_force exa1 1", |bench| {
        bench.iter(|| u_force(&s, black_box(&g.int(1)), &a, &b, &Budget::default()))
    });
}

fn lcd(c: &mut Criterion) {
    let g = ZdGroup::cone(
        2,
        vec![ZdElement::from_i64s(&[1, 0]), ZdElement::from_i64s(&[1, 2])],
    )
    .unwrap();
    let set = FinSubset::new(vec![
        ZdElement::from_i64s(&[3, -7]),
        ZdElement::from_i64s(&[-5, 2]),
        ZdElement::from_i64s(&[1, 1]),
    ])
    .unwrap();
    c.bench_function("lcd_decide Z^2 three elements", |bench| {
        bench.iter(|| lcd_decide(&g, black_box(&set)))
    });
}

fn hnf_bench(c: &mut Criterion) {
    let cols: Vec<[BigInt; 3]> = [[7, -1, 3], [2, 9, -4], [-6, 5, 11], [1, 1, 8], [12, -3, 0]]
        .iter()
        .map(|c| c.map(BigInt::from))
        .collect();
    c.bench_function("hnf 3x5", |bench| bench.iter(|| hnf(black_box(&cols))));
}

fn lorenzen_exa3(c: &mut Criterion) {
    let g = instances::exa3_group();
    let (a, b) = (ints(&g, &[-2, 5]), ints(&g, &[3, 9]));
    c.bench_function("lorenzen exa3 uncached", |bench| {
        bench.iter(|| {
            let e = RegularisedBackend::new(Regulariser::new(
                instances::exa3_system(),
                vec![],
                Budget::new(8, 2),
            ));
            e.entails(black_box(&a), &b)
        })
    });
}

criterion_group!(benches, forcing, lcd, hnf_bench, lorenzen_exa3);
criterion_main!(benches);
