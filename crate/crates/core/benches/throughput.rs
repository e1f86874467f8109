use criterion::{black_box, criterion_group, criterion_main, Criterion, Throughput};

use cirng::{BitState, CiPrng, CiPrngParams, Isaac, SeedKey, Xorshift};

const BYTES: usize = 64 * 1024;

fn key() -> SeedKey {
    SeedKey::new(
        BitState::from_word(0xFACE, 32).unwrap(),
        b"bench".to_vec(),
        2_463_534_242,
    )
    .unwrap()
}

fn generators(c: &mut Criterion) {
    let mut group = c.benchmark_group("generator_bytes");
    group.throughput(Throughput::Bytes(BYTES as u64));

    let mut ci = CiPrng::new(&key(), CiPrngParams::default()).unwrap();
    let mut buf = vec![0u8; BYTES];
    group.bench_function("ci_isaac_xorshift", |b| {
        b.iter(|| {
            ci.fill_bytes(&mut buf);
            black_box(&buf);
        })
    });

    let mut ci_words = CiPrng::new(&key(), CiPrngParams::default()).unwrap();
    group.bench_function("ci_words", |b| {
        b.iter(|| {
            let mut acc = 0u64;
            for _ in 0..BYTES / 4 {
                acc ^= ci_words.next_word();
            }
            black_box(acc)
        })
    });

    let mut isaac = Isaac::from_key_bytes(b"bench").unwrap();
    group.bench_function("isaac", |b| {
        b.iter(|| {
            let mut acc = 0u32;
            for _ in 0..BYTES / 4 {
                acc ^= isaac.next();
            }
            black_box(acc)
        })
    });

    let mut xorshift = Xorshift::new(2_463_534_242).unwrap();
    group.bench_function("xorshift", |b| {
        b.iter(|| {
            let mut acc = 0u32;
            for _ in 0..BYTES / 4 {
                acc ^= xorshift.next();
            }
            black_box(acc)
        })
    });
    group.finish();
}

criterion_group!(benches, generators);
criterion_main!(benches);
