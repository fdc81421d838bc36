use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use genusgauge_core::dedekind::{big_g_with, big_n, g_def, g_sign, p_poly, RootTable, ScanMode};
use genusgauge_core::exact::gcd;
use genusgauge_core::obstruct::{decide, min_genus};
use genusgauge_core::verify::{run_family, Family, ScanBounds};
use genusgauge_core::{Context, EmbedQuery, PhiRestriction, Rat};

fn g_max(c: &mut Criterion) {
    let mut group = c.benchmark_group("G max");
    for k in [50i64, 500, 5000] {
        let q = (k / 3) * 2 + 1;
        let q = (q..).find(|q| gcd(*q, 2 * k) == 1).unwrap();
        group.bench_with_input(BenchmarkId::new("fast", k), &k, |b, &k| {
            b.iter(|| big_g_with(black_box(k), black_box(q), ScanMode::Fast).unwrap())
        });
        if k <= 500 {
            group.bench_with_input(BenchmarkId::new("brute", k), &k, |b, &k| {
                b.iter(|| big_g_with(black_box(k), black_box(q), ScanMode::Brute).unwrap())
            });
        }
        group.bench_with_input(BenchmarkId::new("N recursion", k), &k, |b, &k| {
            b.iter(|| big_n(black_box(k), black_box(q)).unwrap())
        });
    }
    group.finish();
}

fn g_single(c: &mut Criterion) {
    let (k, q) = (200i64, 77i64);
    c.bench_function("g residue sum k=200", |b| {
        b.iter(|| g_def(black_box(k), q, black_box(13)).unwrap())
    });
    c.bench_function("g sign sum k=200", |b| {
        b.iter(|| g_sign(black_box(k), q, black_box(13)).unwrap())
    });
    let table = RootTable::new(k).unwrap();
    c.bench_function("g roots k=200", |b| {
        b.iter(|| table.g(black_box(q), black_box(13)).unwrap())
    });
    c.bench_function("g roots k=200, 400 indices", |b| {
        b.iter(|| table.g_many(black_box(q), 0..400).unwrap())
    });
    c.bench_function("P polynomial k=200", |b| {
        b.iter(|| p_poly(black_box(k), q, black_box(13)).unwrap())
    });
}

fn obstructions(c: &mut Criterion) {
    let lens = EmbedQuery::new(7, 2, Context::LensCobordism { k: 500, q: 333 }).unwrap();
    c.bench_function("decide lens k=500", |b| {
        b.iter(|| decide(black_box(&lens)).unwrap())
    });
    let spin = EmbedQuery::new(
        6,
        4,
        Context::ClosedSpin {
            sigma: 8,
            b_plus: 10,
            b_minus: 2,
        },
    )
    .unwrap();
    c.bench_function("decide spin", |b| {
        b.iter(|| decide(black_box(&spin)).unwrap())
    });
    let generic = Context::GenericCobordism {
        delta: None,
        phi: PhiRestriction::Unknown,
        k_c: Some(1),
        rho_tau_abs: Some(Rat::from_int(4)),
    };
    c.bench_function("min genus rho=4", |b| {
        b.iter(|| min_genus(black_box(&generic), Some(0), 20, 64).unwrap())
    });
}

fn scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    let bounds = ScanBounds {
        max_p: 200,
        brute_max_p: 0,
        m_max: 20,
        ..Default::default()
    };
    group.bench_function("two_g_equals_n 2k<=200", |b| {
        b.iter(|| run_family(Family::TwoGEqualsN, &bounds).unwrap())
    });
    group.bench_function("carlitz m<=20", |b| {
        let small = ScanBounds {
            max_p: 40,
            ..bounds
        };
        b.iter(|| run_family(Family::Carlitz, &small).unwrap())
    });
    group.finish();
}

criterion_group!(benches, g_max, g_single, obstructions, scans);
criterion_main!(benches);
