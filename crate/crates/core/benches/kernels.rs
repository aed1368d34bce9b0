use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fourfold_core::exec::{set_exec, Exec};
use fourfold_core::groebner::groebner_basis;
use fourfold_core::linalg::Matrix;
use fourfold_core::linsys::multiplicity_basis_oracle;
use fourfold_core::random::{random_vector, seeded};
use fourfold_core::ratmap::RationalMap;
use fourfold_core::surfaces::{build_surface, random_cubic_through, SurfaceTag};
use fourfold_core::Fp;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn rref(c: &mut Criterion) {
    let f = Fp::new(32003).unwrap();
    let mut rng = seeded(1);
    let rows: Vec<Vec<u32>> = (0..400).map(|_| random_vector(f.p(), 600, &mut rng)).collect();
    let m = Matrix::from_rows(rows, 600);
    let mut g = c.benchmark_group("rref_400x600");
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            set_exec(mode);
            b.iter(|| m.clone().rref(&f).unwrap())
        });
    }
    g.finish();
}

fn surface_ideal(c: &mut Criterion) {
    let f = Fp::new(32003).unwrap();
    let s = build_surface(SurfaceTag::S14, f, &mut seeded(1)).unwrap();
    let quintics = multiplicity_basis_oracle(&s.ideal, 2, 5).unwrap();
    let mut g = c.benchmark_group("groebner_s14_quintics");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            set_exec(mode);
            b.iter(|| groebner_basis(&s.ring, &quintics).unwrap())
        });
    }
    g.finish();
}

fn projective_degrees(c: &mut Criterion) {
    let f = Fp::new(32003).unwrap();
    let mut rng = seeded(2);
    let s = build_surface(SurfaceTag::S14, f, &mut rng).unwrap();
    let q = multiplicity_basis_oracle(&s.ideal, 2, 5).unwrap();
    let x = random_cubic_through(&s, &mut rng).unwrap();
    let map = RationalMap::new(&s.ring, &[], q).unwrap().restrict_to_hypersurface(&x).unwrap();
    let mut g = c.benchmark_group("multidegree_s14");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            set_exec(mode);
            b.iter(|| map.projective_degrees(&mut seeded(3)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(kernels, rref, surface_ideal, projective_degrees);
criterion_main!(kernels);
