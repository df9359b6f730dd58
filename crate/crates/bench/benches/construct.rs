use criterion::{criterion_group, criterion_main, Criterion};
use reflect_bench::r_system;
use reflect_core::branch::{run_suite, OracleKind};
use reflect_core::rep::{rational, CoidealParams};
use reflect_core::rk::{build_k_closed, build_k_solved};

fn r_matrix(c: &mut Criterion) {
    let mut g = c.benchmark_group("r_nullspace");
    g.sample_size(10);
    for (l, m) in [(1, 1), (2, 1), (2, 2)] {
        let sys = r_system(2, l, m, 2, 3).unwrap();
        g.bench_function(format!("n2_l{l}_m{m}"), |b| b.iter(|| sys.nullspace()));
    }
    g.bench_function("assemble_n2_l2_m2", |b| b.iter(|| r_system(2, 2, 2, 2, 3).unwrap()));
    g.finish();
}

fn k_matrix(c: &mut Criterion) {
    let mut g = c.benchmark_group("k_matrix");
    for n in [2, 3] {
        let p = CoidealParams::standard(n, 1).unwrap();
        g.bench_function(format!("closed_n{n}_l3"), |b| b.iter(|| build_k_closed(&p, 3, rational(2, 1)).unwrap()));
        g.bench_function(format!("solved_n{n}_l2"), |b| b.iter(|| build_k_solved(&p, 2, rational(2, 1)).unwrap()));
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("branching");
    g.sample_size(10);
    g.bench_function("bffw_n2_lmax2", |b| b.iter(|| run_suite(OracleKind::Bffw, 2, 2).unwrap()));
    g.finish();
}

criterion_group!(benches, r_matrix, k_matrix, oracle);
criterion_main!(benches);
