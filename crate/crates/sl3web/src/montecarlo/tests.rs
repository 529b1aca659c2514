use super::*;
use crate::exactmath::pt;

#[test]
fn boundary_start_is_absorbed_at_once() {
    let w = walk_oracle(pt(0, 5), 0, 1000, 1).unwrap();
    assert_eq!(w.counts.len(), 1);
    assert_eq!(w.frequency(pt(0, 5)), 1.0);
    assert!(walk_oracle(pt(1, 1), 3, 10, 1).is_err());
}

#[test]
fn walks_are_reproducible_and_censored_at_the_cap() {
    let a = walk_oracle(pt(2, 2), 1, 200_000, 9).unwrap();
    let b = walk_oracle(pt(2, 2), 1, 200_000, 9).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.counts.values().sum::<u64>() + a.censored, a.trials);
    let short = walk_oracle_capped(pt(5, 5), 0, 1000, 2, 3).unwrap();
    assert_eq!(short.censored, 1000);
}

#[test]
fn window_bounds() {
    let mut cfg = CensusConfig::new(10, 1, 0);
    assert_eq!(cfg.window(), (4, 27));
    cfg.epsilon = 0.0;
    assert_eq!(cfg.window(), (1, 30));
    cfg.epsilon = 0.5;
    assert!(cfg.validate().is_err());
}

#[test]
fn census_is_independent_of_thread_count() {
    let cfg = CensusConfig::new(30, 24, 5);
    let run = |threads| rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| census(&cfg).unwrap());
    assert_eq!(run(1), run(3));
}

#[test]
fn null_comparison_has_zero_scores() {
    let c = census(&CensusConfig::new(40, 30, 2)).unwrap();
    let rep = compare(&c, &Prediction::from_census(&c));
    assert!(rep.cells.iter().all(|x| x.z == Some(0.0) && !x.flagged));
    let bent: Vec<Prediction> = Prediction::from_census(&c).into_iter().map(|p| Prediction { density: p.density * 1.5, ..p }).collect();
    let rep = compare_with(&c, &bent, 3.0, 0.0);
    assert!(rep.flagged().count() > 0);
}
