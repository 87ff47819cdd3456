use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use excel_core::batch::{metrics_batch, scan_batch_sequential, SourceInput};

fn corpus(files: usize) -> Vec<SourceInput> {
    let body = "/* header\n * for while\n */\n#include <stdio.h>\n\nint main(void) {\n    \
                for (int i = 0; i < 10; i++) { puts(\"for /* not */\"); } // loop\n    \
                while (x--) c = '\\'';\n    return 0;\n}\n";
    (0..files).map(|i| SourceInput::new(format!("f{i}.c"), body.repeat(200))).collect()
}

fn scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan_batch");
    for files in [8, 64, 256] {
        let inputs = corpus(files);
        let bytes: usize = inputs.iter().map(|i| i.bytes.len()).sum();
        group.throughput(Throughput::Bytes(bytes as u64));
        group.bench_with_input(BenchmarkId::new("sequential", files), &inputs, |b, inputs| {
            b.iter(|| scan_batch_sequential(inputs))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", files), &inputs, |b, inputs| {
            b.iter(|| excel_core::batch::scan_batch_parallel(inputs))
        });
    }
    group.finish();
}

fn metrics(c: &mut Criterion) {
    let pairs: Vec<(u64, u64)> = (1..100_000u64).map(|i| (i % 37, i)).collect();
    c.bench_function("metrics_batch/100k", |b| b.iter(|| metrics_batch(&pairs)));
}

criterion_group!(benches, scan, metrics);
criterion_main!(benches);
