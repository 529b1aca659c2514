use super::MonteCarloError;
use crate::arrangement::{build_arrangement, FaceType};
use crate::mdiagram::{build_mdiagram, Color};
use crate::rng::stream_rng;
use crate::sampler::{enumerate_paths, LatticePath, PathSampler};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusConfig {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    /// Faces count only when their first step lies in the middle of the
    /// boundary, at least `epsilon·3n` steps from either end.
    pub epsilon: f64,
    /// Depths above this are pooled into one bucket.
    pub depth_max: u32,
    /// Types with more entries are not tallied.
    pub type_max_len: usize,
}

impl CensusConfig {
    pub fn new(n: usize, samples: u64, seed: u64) -> Self {
        CensusConfig { n, samples, seed, epsilon: 0.1, depth_max: 16, type_max_len: 6 }
    }

    pub fn validate(&self) -> Result<(), MonteCarloError> {
        if self.n == 0 {
            return Err(MonteCarloError::Config("n must be positive".into()));
        }
        if self.samples == 0 {
            return Err(MonteCarloError::Config("sample count must be positive".into()));
        }
        if !(0.0..0.5).contains(&self.epsilon) {
            return Err(MonteCarloError::Config(format!("epsilon {} outside [0, 1/2)", self.epsilon)));
        }
        Ok(())
    }

    /// Inclusive range of first steps (1-based) that count.
    pub fn window(&self) -> (u32, u32) {
        let len = 3 * self.n as u32;
        let cut = (self.epsilon * len as f64).floor() as u32;
        (cut + 1, len - cut)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorCounts {
    pub red: u64,
    pub blue: u64,
}

impl ColorCounts {
    pub fn get(&self, c: Color) -> u64 {
        match c {
            Color::Red => self.red,
            Color::Blue => self.blue,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeDepthCell {
    pub size: u32,
    /// `depth_max` stands for that depth or more.
    pub depth: u32,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCell {
    pub face_type: FaceType,
    pub count: u64,
    /// Sum over samples of the squared per-sample count.
    pub sum_sq: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusResult {
    pub config: CensusConfig,
    pub exhaustive: bool,
    pub samples: u64,
    pub window: (u32, u32),
    /// Boundary steps inside the window over all samples.
    pub boundary_steps: u64,
    /// Arcs opening inside the window, by color.
    pub arcs: ColorCounts,
    /// All interior faces.
    pub faces: u64,
    pub faces_in_window: u64,
    pub undersized: u64,
    pub ambiguous: u64,
    pub size_depth: Vec<SizeDepthCell>,
    pub types: Vec<TypeCell>,
}

#[derive(Default)]
struct Tally {
    samples: u64,
    arcs: ColorCounts,
    faces: u64,
    faces_in_window: u64,
    undersized: u64,
    ambiguous: u64,
    size_depth: BTreeMap<(u32, u32), u64>,
    types: HashMap<FaceType, (u64, u64)>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.samples += other.samples;
        self.arcs.red += other.arcs.red;
        self.arcs.blue += other.arcs.blue;
        self.faces += other.faces;
        self.faces_in_window += other.faces_in_window;
        self.undersized += other.undersized;
        self.ambiguous += other.ambiguous;
        for (k, v) in other.size_depth {
            *self.size_depth.entry(k).or_insert(0) += v;
        }
        for (k, (c, s)) in other.types {
            let e = self.types.entry(k).or_insert((0, 0));
            e.0 += c;
            e.1 += s;
        }
        self
    }

    fn observe(cfg: &CensusConfig, path: &LatticePath) -> Tally {
        let (lo, hi) = cfg.window();
        let inside = |s: u32| lo <= s && s <= hi;
        let diagram = build_mdiagram(path);
        let arrangement = build_arrangement(&diagram);
        let mut t = Tally { samples: 1, ..Tally::default() };
        for arc in diagram.arcs() {
            if inside(arc.start) {
                match arc.color {
                    Color::Red => t.arcs.red += 1,
                    Color::Blue => t.arcs.blue += 1,
                }
            }
        }
        let mut per_type: HashMap<FaceType, u64> = HashMap::new();
        for rec in arrangement.classify_faces() {
            t.faces += 1;
            if rec.web_size < 6 {
                t.undersized += 1;
            }
            if !inside(rec.first_step) {
                continue;
            }
            t.faces_in_window += 1;
            t.ambiguous += rec.ambiguous as u64;
            *t.size_depth.entry((rec.web_size, rec.depth.min(cfg.depth_max))).or_insert(0) += 1;
            if rec.face_type.tau.len() <= cfg.type_max_len {
                *per_type.entry(rec.face_type).or_insert(0) += 1;
            }
        }
        for (k, c) in per_type {
            t.types.insert(k, (c, c * c));
        }
        t
    }

    fn finish(self, cfg: &CensusConfig, exhaustive: bool) -> CensusResult {
        let window = cfg.window();
        let mut types: Vec<TypeCell> = self.types.into_iter().map(|(face_type, (count, sum_sq))| TypeCell { face_type, count, sum_sq }).collect();
        types.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.face_type.cmp(&b.face_type)));
        CensusResult {
            config: cfg.clone(),
            exhaustive,
            samples: self.samples,
            window,
            boundary_steps: self.samples * (window.1 + 1 - window.0) as u64,
            arcs: self.arcs,
            faces: self.faces,
            faces_in_window: self.faces_in_window,
            undersized: self.undersized,
            ambiguous: self.ambiguous,
            size_depth: self.size_depth.into_iter().map(|((size, depth), count)| SizeDepthCell { size, depth, count }).collect(),
            types,
        }
    }
}

/// Face census over `cfg.samples` uniform webs. Sample `i` uses stream `i`
/// of `cfg.seed`, and the merge is integer addition, so the result does not
/// depend on the number of worker threads.
pub fn census(cfg: &CensusConfig) -> Result<CensusResult, MonteCarloError> {
    cfg.validate()?;
    let sampler = PathSampler::new(cfg.n);
    let tally = (0..cfg.samples)
        .into_par_iter()
        .map(|i| Tally::observe(cfg, &sampler.sample(&mut stream_rng(cfg.seed, i))))
        .reduce(Tally::default, Tally::merge);
    Ok(tally.finish(cfg, false))
}

/// Census over every web of size `cfg.n`, each with weight one.
/// `cfg.samples` and `cfg.seed` are ignored.
pub fn census_exhaustive(cfg: &CensusConfig) -> Result<CensusResult, MonteCarloError> {
    let cfg = CensusConfig { samples: 1, seed: 0, ..cfg.clone() };
    cfg.validate()?;
    if cfg.n > 6 {
        return Err(MonteCarloError::Config(format!("exhaustive census limited to n <= 6, got {}", cfg.n)));
    }
    census_paths(&cfg, &enumerate_paths(cfg.n))
}

/// Census over an explicit list of paths.
pub fn census_paths(cfg: &CensusConfig, paths: &[LatticePath]) -> Result<CensusResult, MonteCarloError> {
    let tally = paths.par_iter().map(|p| Tally::observe(cfg, p)).reduce(Tally::default, Tally::merge);
    let cfg = CensusConfig { samples: paths.len() as u64, ..cfg.clone() };
    Ok(tally.finish(&cfg, true))
}

impl CensusResult {
    pub fn type_cell(&self, t: &FaceType) -> Option<&TypeCell> {
        self.types.iter().find(|c| &c.face_type == t)
    }

    /// Faces of type `t` per arc of its starting color, with the standard
    /// error from the spread of per-sample counts.
    pub fn type_density(&self, t: &FaceType) -> (f64, f64) {
        let arcs = self.arcs.get(t.color) as f64;
        let (count, sum_sq) = self.type_cell(t).map_or((0, 0), |c| (c.count, c.sum_sq));
        let n = self.samples as f64;
        let mean = count as f64 / n;
        let var = (sum_sq as f64 / n - mean * mean).max(0.0);
        let se_total = if self.samples > 1 { (n * var * n / (n - 1.0)).sqrt() } else { 0.0 };
        (count as f64 / arcs, se_total / arcs)
    }

    /// Faces in the window with the given size and depth at least `d`, and
    /// all faces in the window with depth at least `d`.
    pub fn size_at_depth(&self, size: u32, d: u32) -> (u64, u64) {
        let deep = self.size_depth.iter().filter(|c| c.depth >= d);
        let total: u64 = deep.clone().map(|c| c.count).sum();
        let hits: u64 = deep.filter(|c| c.size == size).map(|c| c.count).sum();
        (hits, total)
    }

    /// `P(size | depth ≥ d)` with its binomial standard error, `None` when no
    /// face is that deep.
    pub fn size_fraction(&self, size: u32, d: u32) -> Option<(f64, f64)> {
        let (hits, total) = self.size_at_depth(size, d);
        (total > 0).then(|| {
            let p = hits as f64 / total as f64;
            (p, (p * (1.0 - p) / total as f64).sqrt())
        })
    }
}
