use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use icat::campaign::{run_campaign, Manifest};
use icat::par::Exec;
use icat::points::{five_lemma_census, split_epis};
use icat::Kind;

fn modes() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn split_epi_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("split_epis");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::new(name, 12), &exec, |b, &exec| {
            b.iter(|| split_epis(Kind::Group, 12, exec).unwrap().len())
        });
    }
    group.finish();
}

fn five_lemma_scan(c: &mut Criterion) {
    let points = split_epis(Kind::Group, 8, Exec::Parallel).unwrap();
    let pairs: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|i| (0..points.len()).map(move |j| (i, j)))
        .collect();
    let mut group = c.benchmark_group("five_lemma_census");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::new(name, 8), &exec, |b, &exec| {
            b.iter(|| {
                exec.map(&pairs, |&(i, j)| five_lemma_census(&points[i], &points[j]))
                    .into_iter()
                    .map(|c| c.0)
                    .sum::<usize>()
            })
        });
    }
    group.finish();
}

fn campaign(c: &mut Criterion) {
    let mut group = c.benchmark_group("campaign");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::new(name, "chaincomp"), &exec, |b, &exec| {
            let m = Manifest::default();
            b.iter(|| run_campaign("chaincomp", &m, Some(6), exec).unwrap().passed())
        });
    }
    group.finish();
}

criterion_group!(benches, split_epi_enumeration, five_lemma_scan, campaign);
criterion_main!(benches);
