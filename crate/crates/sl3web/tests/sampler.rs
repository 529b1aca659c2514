use proptest::prelude::*;
use sl3web::rng::stream_rng;
use sl3web::sampler::{enumerate_paths, PathSampler};
use sl3web::{count_webs, path_to_tableau, LatticePath};
use statrs::distribution::{ChiSquared, ContinuousCDF};
use std::collections::HashMap;

/// Pearson χ² p-value of `draws` samples against the uniform law on all
/// paths of length 3n.
fn uniformity_p_value(n: usize, draws: u64, seed: u64) -> f64 {
    let all = enumerate_paths(n);
    assert_eq!(num_traits::ToPrimitive::to_u64(&count_webs(n)), Some(all.len() as u64));
    let index: HashMap<LatticePath, usize> = all.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let sampler = PathSampler::new(n);
    let mut rng = stream_rng(seed, 0);
    let mut counts = vec![0u64; all.len()];
    for _ in 0..draws {
        counts[index[&sampler.sample(&mut rng)]] += 1;
    }
    let expected = draws as f64 / all.len() as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let dist = ChiSquared::new((all.len() - 1) as f64).unwrap();
    1.0 - dist.cdf(stat)
}

#[test]
fn uniform_n2() {
    let p = uniformity_p_value(2, 50_000, 1);
    assert!(p > 1e-3, "p = {p}");
}

#[test]
fn uniform_n3() {
    let p = uniformity_p_value(3, 200_000, 2);
    assert!(p > 1e-3, "p = {p}");
}

#[test]
fn uniform_n4() {
    let p = uniformity_p_value(4, 400_000, 3);
    assert!(p > 1e-3, "p = {p}");
}

#[test]
fn step_frequencies_by_position() {
    let n = 3;
    let all = enumerate_paths(n);
    let sampler = PathSampler::new(n);
    let mut rng = stream_rng(9, 0);
    let draws = 100_000u64;
    let mut hits = vec![[0u64; 3]; 3 * n];
    for _ in 0..draws {
        for (i, s) in sampler.sample(&mut rng).steps().iter().enumerate() {
            hits[i][s.row() - 1] += 1;
        }
    }
    for i in 0..3 * n {
        for r in 0..3 {
            let exact = all.iter().filter(|p| p.steps()[i].row() == r + 1).count() as f64 / all.len() as f64;
            let freq = hits[i][r] as f64 / draws as f64;
            let sd = (exact * (1.0 - exact) / draws as f64).sqrt();
            assert!((freq - exact).abs() <= 5.0 * sd + 1e-12, "position {i} row {}: {freq} vs {exact}", r + 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn samples_are_valid_tableaux(n in 1usize..60, seed in any::<u64>()) {
        let p = PathSampler::new(n).sample(&mut stream_rng(seed, 0));
        prop_assert_eq!(p.n(), n);
        let t = path_to_tableau(&p).unwrap();
        prop_assert_eq!(t.to_path(), p.clone());
        prop_assert_eq!(LatticePath::from_digits(&p.to_digits()).unwrap(), p);
    }
}
