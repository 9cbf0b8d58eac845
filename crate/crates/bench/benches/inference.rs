use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use nfel_bench::{inverse_structure, synthetic_dataset};
use nfel_core::control::{ControllerConfig, FelController};
use nfel_core::fuzzy::Scratch;
use nfel_core::learning::{cluster_init, gradient_step_with, train_epochs, TrainConfig};
use nfel_core::plant::{Plant, PlantParams};

fn inference(c: &mut Criterion) {
    let data = synthetic_dataset(2_000);
    let rb = cluster_init(&inverse_structure(), &data).unwrap();
    let x = [0.12, 0.09, 0.03];
    let mut scratch = Scratch::default();
    c.bench_function("infer_7x11x7", |b| {
        b.iter(|| rb.infer_with(black_box(&x), &mut scratch).unwrap())
    });
}

fn learning(c: &mut Criterion) {
    let data = synthetic_dataset(2_000);
    let structure = inverse_structure();
    c.bench_function("cluster_init_2000", |b| {
        b.iter(|| cluster_init(black_box(&structure), black_box(&data)).unwrap())
    });

    let rb = cluster_init(&structure, &data).unwrap();
    let mut scratch = Scratch::default();
    c.bench_function("gradient_step", |b| {
        b.iter_batched_ref(
            || rb.clone(),
            |m| gradient_step_with(m, &data.samples[700], 0.8, &mut scratch).unwrap(),
            BatchSize::SmallInput,
        )
    });

    let cfg = TrainConfig {
        alpha: 0.8,
        epochs: 1,
        ..TrainConfig::default()
    };
    c.bench_function("train_epoch_2000", |b| {
        b.iter(|| train_epochs(&rb, &data, &cfg).unwrap())
    });
}

fn control(c: &mut Criterion) {
    let rb = cluster_init(&inverse_structure(), &synthetic_dataset(2_000)).unwrap();
    let cfg = ControllerConfig {
        alpha: 0.02,
        learning_enabled: true,
        compensation_enabled: true,
        ..ControllerConfig::default()
    };
    c.bench_function("control_step_learning", |b| {
        b.iter_batched_ref(
            || {
                (
                    Plant::new(PlantParams::default()).unwrap(),
                    FelController::new(cfg, rb.clone()).unwrap(),
                )
            },
            |(plant, ctl)| ctl.step(plant, 0.15).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, inference, learning, control);
criterion_main!(benches);
