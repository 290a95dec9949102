use cmcsel_core::search::{best_per_size_exhaustive, enumerate_range, PerSizeAccumulator};
use cmcsel_core::simulation::replication_rng;
use cmcsel_core::{best_per_size, fit, generate, Dataset, Family, FitResult, Scenario, SubsetMask};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn data(family: Family, n: usize, p: usize, seed: u64) -> Dataset {
    let coef = if family == Family::Gaussian { 1.0 } else { 0.5 };
    generate(
        &Scenario::new(family, n, p, coef),
        &mut replication_rng(seed, 0),
    )
    .unwrap()
    .0
}

/// Fits every subset in a random order and keeps the best per size by hand.
fn shuffled_bests(data: &Dataset, seed: u64) -> Vec<FitResult> {
    let p = data.p();
    let mut masks: Vec<u32> = (0..1u32 << p).collect();
    masks.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut best: Vec<Option<FitResult>> = vec![None; p + 1];
    for bits in masks {
        let f = fit(data, SubsetMask::new(bits)).unwrap();
        let slot = &mut best[f.mask.size()];
        let better = match slot {
            None => true,
            Some(b) => f.loglik > b.loglik || (f.loglik == b.loglik && f.mask < b.mask),
        };
        if better {
            *slot = Some(f);
        }
    }
    best.into_iter().map(Option::unwrap).collect()
}

#[test]
fn shuffled_enumeration_agrees() {
    for seed in 0..10 {
        for family in [
            Family::Gaussian,
            Family::Poisson,
            Family::Binomial { trials: 2 },
        ] {
            let d = data(family, 12 + 2 * seed as usize, 4, seed);
            let oracle = shuffled_bests(&d, seed);
            let got = best_per_size(&d).unwrap();
            assert_eq!(got.visited, 16);
            for (a, b) in got.entries.iter().zip(&oracle) {
                assert_eq!(a.mask, b.mask, "{family} seed {seed}");
                assert!((a.loglik - b.loglik).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn gaussian_fast_path_matches_exhaustive_fits() {
    for seed in 0..5 {
        let d = data(Family::Gaussian, 30, 9, seed);
        let fast = best_per_size(&d).unwrap();
        let slow = best_per_size_exhaustive(&d).unwrap();
        for (a, b) in fast.entries.iter().zip(&slow.entries) {
            assert_eq!(a.mask, b.mask);
            assert!((a.loglik - b.loglik).abs() < 1e-8);
        }
    }
}

#[test]
fn accumulator_partition_independent() {
    let d = data(Family::Poisson, 40, 6, 9);
    let whole = best_per_size_exhaustive(&d).unwrap();
    for cuts in [
        vec![0u32, 64],
        vec![0, 1, 63, 64],
        vec![0, 17, 30, 31, 50, 64],
    ] {
        let mut parts: Vec<PerSizeAccumulator> = Vec::new();
        for w in cuts.windows(2) {
            let mut acc = PerSizeAccumulator::new(6);
            enumerate_range(&d, w[0]..w[1], &mut acc).unwrap();
            parts.push(acc);
        }
        // merge in reverse to make order independence visible
        let mut merged = PerSizeAccumulator::new(6);
        for part in parts.into_iter().rev() {
            merged.merge(part);
        }
        let merged = merged.finish(d.n()).unwrap();
        assert_eq!(merged, whole);
    }
}
