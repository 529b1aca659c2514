//! Uniform sampling of 3×n standard Young tableaux, encoded as lattice paths.
//!
//! A tableau is read in the order 1, 2, ..., 3n. An entry in row 1 is the step
//! `S1 = (1,0)`, row 2 is `S2 = (-1,1)` and row 3 is `S3 = (0,-1)`. Standard
//! tableaux correspond exactly to paths of length 3n from the origin back to
//! the origin that never leave the quadrant `x, y >= 0`.
//!
//! Two exact samplers are provided.
//!
//! * [`CompletionTable`] memoizes the big-integer number of completions of
//!   every state and walks the CDF of successor counts. Memory is `O(n^3)` big
//!   integers, so it is meant for small `n` and as an audit oracle.
//! * [`PathSampler`] draws each step with probability proportional to the
//!   successor completion count as well, but obtains the ratios in closed form
//!   from the hook length formula. The weights are exact machine integers, so
//!   the two samplers define the same distribution while `PathSampler` runs in
//!   `O(n)` time and memory.

use std::fmt;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::stream_rng;

/// One of the three lattice steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    S1,
    S2,
    S3,
}

impl Step {
    pub const ALL: [Step; 3] = [Step::S1, Step::S2, Step::S3];

    /// Displacement `(dx, dy)` of the step.
    pub fn vector(self) -> (i64, i64) {
        match self {
            Step::S1 => (1, 0),
            Step::S2 => (-1, 1),
            Step::S3 => (0, -1),
        }
    }

    /// Tableau row (1, 2 or 3) this step records.
    pub fn row(self) -> usize {
        match self {
            Step::S1 => 1,
            Step::S2 => 2,
            Step::S3 => 3,
        }
    }

    pub fn from_row(row: usize) -> Option<Step> {
        match row {
            1 => Some(Step::S1),
            2 => Some(Step::S2),
            3 => Some(Step::S3),
            _ => None,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", self.row())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("a path needs a positive multiple of 3 steps, got {0}")]
    BadLength(usize),
    #[error("path leaves the quadrant at step {step}")]
    LeavesQuadrant { step: usize },
    #[error("path ends at ({0}, {1}) instead of the origin")]
    OpenEnd(u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("rows must have equal positive length")]
    Shape,
    #[error("entries must be exactly 1..=3n")]
    NotAPartition,
    #[error("row {0} is not increasing")]
    Row(usize),
    #[error("column {0} is not increasing")]
    Column(usize),
}

/// A quadrant excursion of length 3n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Step>", into = "Vec<Step>")]
pub struct LatticePath {
    n: usize,
    steps: Vec<Step>,
    coords: Vec<(u32, u32)>,
}

impl LatticePath {
    /// Validates `steps` and records the visited coordinates.
    pub fn new(steps: Vec<Step>) -> Result<Self, PathError> {
        let coords = walk_coords(&steps)?;
        let n = steps.len() / 3;
        Ok(LatticePath { n, steps, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// The 3n+1 positions `(A_t, B_t)`, starting and ending at the origin.
    pub fn coords(&self) -> &[(u32, u32)] {
        &self.coords
    }

    /// Compact digit string, one character per step: "123" for n = 1.
    pub fn to_digits(&self) -> String {
        self.steps.iter().map(|s| char::from(b'0' + s.row() as u8)).collect()
    }

    pub fn from_digits(digits: &str) -> Result<Self, PathError> {
        let steps = digits
            .chars()
            .map(|c| c.to_digit(10).and_then(|d| Step::from_row(d as usize)))
            .collect::<Option<Vec<_>>>()
            .ok_or(PathError::BadLength(digits.len()))?;
        LatticePath::new(steps)
    }
}

impl TryFrom<Vec<Step>> for LatticePath {
    type Error = PathError;
    fn try_from(steps: Vec<Step>) -> Result<Self, PathError> {
        LatticePath::new(steps)
    }
}

impl From<LatticePath> for Vec<Step> {
    fn from(p: LatticePath) -> Vec<Step> {
        p.steps
    }
}

fn walk_coords(steps: &[Step]) -> Result<Vec<(u32, u32)>, PathError> {
    if steps.is_empty() || steps.len() % 3 != 0 {
        return Err(PathError::BadLength(steps.len()));
    }
    let mut coords = Vec::with_capacity(steps.len() + 1);
    let (mut x, mut y) = (0i64, 0i64);
    coords.push((0, 0));
    for (t, s) in steps.iter().enumerate() {
        let (dx, dy) = s.vector();
        x += dx;
        y += dy;
        if x < 0 || y < 0 {
            return Err(PathError::LeavesQuadrant { step: t + 1 });
        }
        coords.push((x as u32, y as u32));
    }
    if (x, y) != (0, 0) {
        return Err(PathError::OpenEnd(x as u32, y as u32));
    }
    Ok(coords)
}

/// A standard Young tableau of shape 3×n, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau3xN {
    rows: [Vec<u32>; 3],
}

impl Tableau3xN {
    pub fn new(rows: [Vec<u32>; 3]) -> Result<Self, TableauError> {
        let n = rows[0].len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(TableauError::Shape);
        }
        let mut seen = vec![false; 3 * n + 1];
        for &v in rows.iter().flatten() {
            let v = v as usize;
            if v == 0 || v > 3 * n || seen[v] {
                return Err(TableauError::NotAPartition);
            }
            seen[v] = true;
        }
        for (i, r) in rows.iter().enumerate() {
            if r.windows(2).any(|w| w[0] >= w[1]) {
                return Err(TableauError::Row(i + 1));
            }
        }
        for c in 0..n {
            if rows[0][c] >= rows[1][c] || rows[1][c] >= rows[2][c] {
                return Err(TableauError::Column(c + 1));
            }
        }
        Ok(Tableau3xN { rows })
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<u32>; 3] {
        &self.rows
    }

    /// The step sequence obtained by scanning 1..=3n.
    pub fn to_path(&self) -> LatticePath {
        let n = self.n();
        let mut steps = vec![Step::S1; 3 * n];
        for (i, row) in self.rows.iter().enumerate() {
            for &v in row {
                steps[v as usize - 1] = Step::ALL[i];
            }
        }
        LatticePath::new(steps).expect("standard tableaux give quadrant excursions")
    }
}

impl fmt::Display for Tableau3xN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Reads a step sequence as a tableau, rejecting sequences that leave the
/// quadrant or fail to close up.
pub fn tableau_from_steps(steps: &[Step]) -> Result<Tableau3xN, PathError> {
    walk_coords(steps)?;
    let mut rows: [Vec<u32>; 3] = Default::default();
    for (t, s) in steps.iter().enumerate() {
        rows[s.row() - 1].push(t as u32 + 1);
    }
    Ok(Tableau3xN { rows })
}

pub fn path_to_tableau(p: &LatticePath) -> Result<Tableau3xN, PathError> {
    tableau_from_steps(p.steps())
}

/// Closed form `2 (3n)! / ((n+2)! (n+1)! n!)`.
pub fn catalan_3d(n: usize) -> BigUint {
    let fact = |k: usize| -> BigUint { (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i)) };
    BigUint::from(2u32) * fact(3 * n) / (fact(n + 2) * fact(n + 1) * fact(n))
}

/// Number of reduced webs with 3n boundary points, counted by dynamic
/// programming over quadrant paths.
pub fn count_webs(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    CompletionTable::new(n).total().clone()
}

/// Number of ways to return to the origin from `(x, y)` in exactly `r` steps,
/// by the hook length formula.
///
/// Reversing such a path and swapping coordinates gives a standard filling of
/// the three-row shape μ with `μ1 - μ2 = y`, `μ2 - μ3 = x` and `|μ| = r`.
pub fn completion_count(x: u64, y: u64, r: u64) -> BigUint {
    let Some(l) = shifted_shape(x, y, r) else {
        return BigUint::zero();
    };
    let fact = |k: u64| -> BigUint { (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i)) };
    let vander = BigUint::from((l[0] - l[1]) as u128 * (l[0] - l[2]) as u128 * (l[1] - l[2]) as u128);
    fact(r) * vander / (fact(l[0]) * fact(l[1]) * fact(l[2]))
}

/// `(μ1 + 2, μ2 + 1, μ3)` for the shape attached to state `(x, y, r)`.
fn shifted_shape(x: u64, y: u64, r: u64) -> Option<[u64; 3]> {
    let need = 2 * x + y;
    if need > r || (r - need) % 3 != 0 {
        return None;
    }
    let m3 = (r - need) / 3;
    let m2 = m3 + x;
    let m1 = m2 + y;
    Some([m1 + 2, m2 + 1, m3])
}

fn vandermonde(l: [i128; 3]) -> i128 {
    (l[0] - l[1]) * (l[0] - l[2]) * (l[1] - l[2])
}

/// Unnormalized transition weights `[w(S1), w(S2), w(S3)]` out of `(x, y)`
/// with `r` steps remaining.
///
/// The weights are proportional to the completion counts of the successor
/// states and sum to `r` times the Vandermonde product of the shifted shape.
pub fn step_weights(x: u64, y: u64, r: u64) -> [u128; 3] {
    let Some(l) = shifted_shape(x, y, r) else {
        return [0; 3];
    };
    let l = l.map(|v| v as i128);
    // S1 removes a box from row 3, S2 from row 2, S3 from row 1.
    let row_of = [2usize, 1, 0];
    let mut w = [0u128; 3];
    for (k, &row) in row_of.iter().enumerate() {
        let mut m = l;
        m[row] -= 1;
        let v = l[row] * vandermonde(m);
        w[k] = v.max(0) as u128;
    }
    w
}

/// Exact uniform sampler of quadrant excursions of length 3n.
#[derive(Clone, Copy, Debug)]
pub struct PathSampler {
    n: usize,
}

impl PathSampler {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "n must be positive");
        PathSampler { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> LatticePath {
        let len = 3 * self.n;
        let mut steps = Vec::with_capacity(len);
        let (mut x, mut y) = (0u64, 0u64);
        for t in 0..len {
            let w = step_weights(x, y, (len - t) as u64);
            let total = w[0] + w[1] + w[2];
            let mut u = rng.gen_range(0..total);
            let mut k = 0;
            while u >= w[k] {
                u -= w[k];
                k += 1;
            }
            let s = Step::ALL[k];
            let (dx, dy) = s.vector();
            x = (x as i64 + dx) as u64;
            y = (y as i64 + dy) as u64;
            steps.push(s);
        }
        LatticePath::new(steps).expect("sampler only takes steps with completions")
    }
}

/// Samples a uniform path of length 3n from stream 0 of `seed`.
pub fn sample_path(n: usize, seed: u64) -> LatticePath {
    PathSampler::new(n).sample(&mut stream_rng(seed, 0))
}

/// Memoized big-integer completion counts for every state of a fixed `n`.
#[derive(Clone, Debug)]
pub struct CompletionTable {
    n: usize,
    // layers[r][x * (r + 1) + y]
    layers: Vec<Vec<BigUint>>,
}

impl CompletionTable {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "n must be positive");
        let len = 3 * n;
        let mut layers: Vec<Vec<BigUint>> = Vec::with_capacity(len + 1);
        layers.push(vec![BigUint::one()]);
        for r in 1..=len {
            let side = r + 1;
            let mut layer = vec![BigUint::zero(); side * side];
            let prev = &layers[r - 1];
            let prev_side = r;
            let get = |x: i64, y: i64| -> Option<&BigUint> {
                if x < 0 || y < 0 || x as usize >= prev_side || y as usize >= prev_side {
                    None
                } else {
                    Some(&prev[x as usize * prev_side + y as usize])
                }
            };
            for x in 0..side {
                for y in 0..side {
                    let mut acc = BigUint::zero();
                    for s in Step::ALL {
                        let (dx, dy) = s.vector();
                        if let Some(c) = get(x as i64 + dx, y as i64 + dy) {
                            acc += c;
                        }
                    }
                    layer[x * side + y] = acc;
                }
            }
            layers.push(layer);
        }
        CompletionTable { n, layers }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Completions of `(x, y)` in exactly `r` steps; zero outside the table.
    pub fn count(&self, x: u64, y: u64, r: usize) -> BigUint {
        let Some(layer) = self.layers.get(r) else {
            return BigUint::zero();
        };
        let side = (r + 1) as u64;
        if x >= side || y >= side {
            return BigUint::zero();
        }
        layer[(x * side + y) as usize].clone()
    }

    /// Number of full paths, equal to `count(0, 0, 3n)`.
    pub fn total(&self) -> &BigUint {
        &self.layers[3 * self.n][0]
    }

    /// Draws a uniform integer below the completion count of the current
    /// state and walks the CDF of successor counts.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> LatticePath {
        let len = 3 * self.n;
        let mut steps = Vec::with_capacity(len);
        let (mut x, mut y) = (0i64, 0i64);
        for t in 0..len {
            let r = len - t;
            let here = self.count(x as u64, y as u64, r);
            let mut u = rng.gen_biguint_below(&here);
            for s in Step::ALL {
                let (dx, dy) = s.vector();
                let (nx, ny) = (x + dx, y + dy);
                if nx < 0 || ny < 0 {
                    continue;
                }
                let c = self.count(nx as u64, ny as u64, r - 1);
                if u < c {
                    steps.push(s);
                    x = nx;
                    y = ny;
                    break;
                }
                u -= c;
            }
        }
        LatticePath::new(steps).expect("table sampler only takes steps with completions")
    }
}

/// All quadrant excursions of length 3n in lexicographic step order.
pub fn enumerate_paths(n: usize) -> Vec<LatticePath> {
    fn rec(len: usize, x: u64, y: u64, steps: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
        let r = (len - steps.len()) as u64;
        if r == 0 {
            out.push(LatticePath::new(steps.clone()).expect("enumerated path is valid"));
            return;
        }
        for s in Step::ALL {
            let (dx, dy) = s.vector();
            let (nx, ny) = (x as i64 + dx, y as i64 + dy);
            if nx < 0 || ny < 0 || shifted_shape(nx as u64, ny as u64, r - 1).is_none() {
                continue;
            }
            steps.push(s);
            rec(len, nx as u64, ny as u64, steps, out);
            steps.pop();
        }
    }
    assert!(n >= 1, "n must be positive");
    let mut out = Vec::new();
    rec(3 * n, 0, 0, &mut Vec::with_capacity(3 * n), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path(rows: &[usize]) -> LatticePath {
        LatticePath::new(rows.iter().map(|&r| Step::from_row(r).unwrap()).collect()).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_webs(0), BigUint::one());
        assert_eq!(count_webs(1), BigUint::from(1u32));
        assert_eq!(count_webs(2), BigUint::from(5u32));
        assert_eq!(count_webs(3), BigUint::from(42u32));
    }

    #[test]
    fn closed_form_agrees_with_dp() {
        for n in 1..=10 {
            assert_eq!(count_webs(n), catalan_3d(n), "n = {n}");
        }
    }

    #[test]
    fn hook_counts_match_table() {
        let table = CompletionTable::new(6);
        for r in 0..=18usize {
            for x in 0..=r as u64 {
                for y in 0..=r as u64 {
                    assert_eq!(table.count(x, y, r), completion_count(x, y, r as u64), "({x},{y},{r})");
                }
            }
        }
    }

    #[test]
    fn weights_are_proportional_to_successor_counts() {
        let table = CompletionTable::new(7);
        for r in 1..=21usize {
            for x in 0..=r as u64 {
                for y in 0..=r as u64 {
                    let w = step_weights(x, y, r as u64);
                    let here = table.count(x, y, r);
                    for (k, s) in Step::ALL.iter().enumerate() {
                        let (dx, dy) = s.vector();
                        let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                        let succ = if nx < 0 || ny < 0 {
                            BigUint::zero()
                        } else {
                            table.count(nx as u64, ny as u64, r - 1)
                        };
                        // w_k / (r Δ) = succ / here
                        let l = shifted_shape(x, y, r as u64);
                        match l {
                            None => assert_eq!(w[k], 0),
                            Some(l) => {
                                let delta = vandermonde(l.map(|v| v as i128)) as u128;
                                assert_eq!(
                                    BigUint::from(w[k]) * &here,
                                    succ * BigUint::from(r as u128 * delta),
                                    "({x},{y},{r}) step {s}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_sizes() {
        for n in 1..=5 {
            assert_eq!(BigUint::from(enumerate_paths(n).len()), catalan_3d(n));
        }
    }

    #[test]
    fn unique_path_at_n1() {
        for seed in 0..20 {
            assert_eq!(sample_path(1, seed).steps(), &[Step::S1, Step::S2, Step::S3]);
        }
    }

    #[test]
    fn tableau_examples() {
        let t = path_to_tableau(&path(&[1, 2, 3])).unwrap();
        assert_eq!(t.rows(), &[vec![1], vec![2], vec![3]]);
        let t = path_to_tableau(&path(&[1, 1, 2, 1, 2, 3, 2, 3, 3])).unwrap();
        assert_eq!(t.rows(), &[vec![1, 2, 4], vec![3, 5, 7], vec![6, 8, 9]]);
        let t = Tableau3xN::new([vec![1, 2, 3], vec![4, 5, 7], vec![6, 8, 9]]).unwrap();
        assert_eq!(path_to_tableau(&t.to_path()).unwrap(), t);
    }

    #[test]
    fn malformed_steps_are_reported() {
        assert_eq!(
            tableau_from_steps(&[Step::S2, Step::S1, Step::S3]),
            Err(PathError::LeavesQuadrant { step: 1 })
        );
        assert_eq!(tableau_from_steps(&[Step::S1, Step::S1, Step::S2]), Err(PathError::OpenEnd(1, 1)));
        assert_eq!(tableau_from_steps(&[Step::S1]), Err(PathError::BadLength(1)));
    }

    #[test]
    fn tableau_validation() {
        assert_eq!(Tableau3xN::new([vec![1, 3], vec![2, 4], vec![5, 6]]).unwrap().n(), 2);
        assert_eq!(Tableau3xN::new([vec![1, 5], vec![2, 3], vec![4, 6]]), Err(TableauError::Column(2)));
        assert_eq!(Tableau3xN::new([vec![3, 1], vec![2, 4], vec![5, 6]]), Err(TableauError::Row(1)));
        assert_eq!(Tableau3xN::new([vec![1, 1], vec![2, 4], vec![5, 6]]), Err(TableauError::NotAPartition));
    }

    #[test]
    fn round_trip_exhaustive() {
        for n in 1..=3 {
            for p in enumerate_paths(n) {
                let t = path_to_tableau(&p).unwrap();
                assert!(Tableau3xN::new(t.rows().clone()).is_ok());
                assert_eq!(t.to_path(), p);
            }
        }
    }

    #[test]
    fn digits_round_trip() {
        let p = path(&[1, 1, 2, 1, 2, 3, 2, 3, 3]);
        assert_eq!(p.to_digits(), "112123233");
        assert_eq!(LatticePath::from_digits("112123233").unwrap(), p);
        assert!(LatticePath::from_digits("132").is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = sample_path(5, 11);
        let s = serde_json::to_string(&p).unwrap();
        let q: LatticePath = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        assert!(serde_json::from_str::<LatticePath>(r#"["S2","S1","S3"]"#).is_err());
    }

    proptest! {
        #[test]
        fn sampled_paths_are_valid(n in 1usize..60, seed: u64) {
            let p = sample_path(n, seed);
            prop_assert_eq!(p.steps().len(), 3 * n);
            prop_assert_eq!(p.coords()[0], (0, 0));
            prop_assert_eq!(*p.coords().last().unwrap(), (0, 0));
            let t = path_to_tableau(&p).unwrap();
            prop_assert!(Tableau3xN::new(t.rows().clone()).is_ok());
        }

        #[test]
        fn weights_sum_to_r_delta(x in 0u64..200, y in 0u64..200, k in 0u64..200) {
            let r = 2 * x + y + 3 * k;
            let l = shifted_shape(x, y, r).unwrap().map(|v| v as i128);
            let w = step_weights(x, y, r);
            prop_assert_eq!(w.iter().sum::<u128>(), r as u128 * vandermonde(l) as u128);
        }
    }
}
