//! m-diagrams: arc diagrams of 3×n standard tableaux.
//!
//! Each column of the tableau, after the matching below, becomes an "m": a red
//! arc from a row-1 entry `i` to a row-2 entry `j` followed by a blue arc from
//! `j` to a row-3 entry `k`. The matching is produced by scanning the path and
//! keeping the open arcs on a stack:
//!
//! * `S1` at step `t` opens a red arc at `t`;
//! * `S2` closes the most recently opened red arc and opens a blue arc at `t`;
//! * `S3` closes the most recently opened blue arc.
//!
//! Arcs of the same color are therefore nested or disjoint.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{crossing_abscissa, interleave};
use crate::sampler::{LatticePath, Step, Tableau3xN};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "R")]
    Red,
    #[serde(rename = "B")]
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "R",
            Color::Blue => "B",
        })
    }
}

impl std::str::FromStr for Color {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "R" | "r" | "red" | "Red" => Ok(Color::Red),
            "B" | "b" | "blue" | "Blue" => Ok(Color::Blue),
            _ => Err(format!("unknown color {s:?}, expected R or B")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub start: u32,
    pub end: u32,
    pub color: Color,
}

impl Arc {
    pub fn red(start: u32, end: u32) -> Arc {
        Arc { start, end, color: Color::Red }
    }

    pub fn blue(start: u32, end: u32) -> Arc {
        Arc { start, end, color: Color::Blue }
    }

    pub fn crosses(&self, other: &Arc) -> bool {
        interleave(self.start as i64, self.end as i64, other.start as i64, other.end as i64)
    }
}

/// The three boundary points of one m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MTriple {
    pub start: u32,
    pub middle: u32,
    pub end: u32,
}

/// An entry of the open-arc stack.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenArc {
    pub start: u32,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MDiagramError {
    #[error("step {step} closes a {color} arc but none is open")]
    EmptyPop { step: u32, color: Color },
    #[error("{red} red and {blue} blue arcs are still open at the end")]
    Unclosed { red: usize, blue: usize },
    #[error("step index {t} is outside 0..={len}")]
    OutOfRange { t: usize, len: usize },
    #[error("triple ({0}, {1}, {2}) is not increasing")]
    BadTriple(u32, u32, u32),
    #[error("boundary point {0} is used {1} times")]
    Coverage(u32, usize),
}

/// A breach of the structural conditions every m-diagram satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    SameColorCrossing { first: usize, second: usize },
    /// Three or more arcs pass through one point.
    ConcurrentCrossings { arc: usize, others: Vec<usize> },
    /// Two m's cross more than once.
    MultipleMCrossings { first: usize, second: usize, count: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SameColorCrossing { first, second } => {
                write!(f, "same-color-crossing: arcs {first} and {second}")
            }
            Violation::ConcurrentCrossings { arc, others } => {
                write!(f, "concurrent-crossings: arc {arc} with {others:?}")
            }
            Violation::MultipleMCrossings { first, second, count } => {
                write!(f, "multiple-m-crossings: m {first} and m {second} cross {count} times")
            }
        }
    }
}

/// Arcs and m-triples of a diagram with 3n boundary points.
///
/// When built from a path, triple `m` owns arcs `2m` (red) and `2m + 1`
/// (blue), and triples are ordered by their middle point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MDiagram {
    n: usize,
    arcs: Vec<Arc>,
    triples: Vec<MTriple>,
}

impl MDiagram {
    /// Builds the diagram of a path with the stack rules.
    pub fn from_path(p: &LatticePath) -> MDiagram {
        Self::from_steps(p.steps()).expect("valid paths never pop an empty stack")
    }

    pub fn from_steps(steps: &[Step]) -> Result<MDiagram, MDiagramError> {
        let mut reds: Vec<u32> = Vec::new();
        let mut blues: Vec<usize> = Vec::new();
        let mut triples: Vec<MTriple> = Vec::with_capacity(steps.len() / 3);
        for (idx, s) in steps.iter().enumerate() {
            let t = idx as u32 + 1;
            match s {
                Step::S1 => reds.push(t),
                Step::S2 => {
                    let i = reds.pop().ok_or(MDiagramError::EmptyPop { step: t, color: Color::Red })?;
                    blues.push(triples.len());
                    triples.push(MTriple { start: i, middle: t, end: 0 });
                }
                Step::S3 => {
                    let m = blues.pop().ok_or(MDiagramError::EmptyPop { step: t, color: Color::Blue })?;
                    triples[m].end = t;
                }
            }
        }
        if !reds.is_empty() || !blues.is_empty() {
            return Err(MDiagramError::Unclosed { red: reds.len(), blue: blues.len() });
        }
        Ok(Self::assemble(steps.len() / 3, triples))
    }

    /// Builds a diagram from explicit triples, checking that they partition
    /// `1..=3n`. Triples are reordered by middle point.
    pub fn from_triples(mut triples: Vec<MTriple>) -> Result<MDiagram, MDiagramError> {
        let n = triples.len();
        let mut used = vec![0usize; 3 * n + 1];
        for tr in &triples {
            if !(tr.start < tr.middle && tr.middle < tr.end) {
                return Err(MDiagramError::BadTriple(tr.start, tr.middle, tr.end));
            }
            for p in [tr.start, tr.middle, tr.end] {
                if p == 0 || p as usize > 3 * n {
                    return Err(MDiagramError::Coverage(p, 1));
                }
                used[p as usize] += 1;
            }
        }
        if let Some(p) = (1..=3 * n).find(|&p| used[p] != 1) {
            return Err(MDiagramError::Coverage(p as u32, used[p]));
        }
        triples.sort_by_key(|t| t.middle);
        Ok(Self::assemble(n, triples))
    }

    /// A bare collection of arcs, for exercising [`validate`] on inputs that
    /// are not m-diagrams. The result has no triples.
    pub fn from_arcs(n: usize, arcs: Vec<Arc>) -> MDiagram {
        MDiagram { n, arcs, triples: Vec::new() }
    }

    fn assemble(n: usize, triples: Vec<MTriple>) -> MDiagram {
        let arcs = triples
            .iter()
            .flat_map(|t| [Arc::red(t.start, t.middle), Arc::blue(t.middle, t.end)])
            .collect();
        MDiagram { n, arcs, triples }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn triples(&self) -> &[MTriple] {
        &self.triples
    }

    /// Index of the m owning arc `arc`, when the diagram has triples.
    pub fn triple_of(&self, arc: usize) -> Option<usize> {
        (!self.triples.is_empty()).then_some(arc / 2)
    }

    pub fn red_arcs(&self) -> impl Iterator<Item = &Arc> {
        self.arcs.iter().filter(|a| a.color == Color::Red)
    }

    pub fn blue_arcs(&self) -> impl Iterator<Item = &Arc> {
        self.arcs.iter().filter(|a| a.color == Color::Blue)
    }

    /// Recovers the step sequence: starts are `S1`, middles `S2`, ends `S3`.
    pub fn to_steps(&self) -> Vec<Step> {
        let mut steps = vec![Step::S1; 3 * self.n];
        for t in &self.triples {
            steps[t.middle as usize - 1] = Step::S2;
            steps[t.end as usize - 1] = Step::S3;
        }
        steps
    }

    /// The reverse map: scans the boundary and files each point by how arcs
    /// meet it. A point that only starts an arc is in row 1, one that ends an
    /// arc and starts another is in row 2, one that only ends an arc is in
    /// row 3.
    pub fn to_tableau(&self) -> Result<Tableau3xN, crate::sampler::TableauError> {
        let len = 3 * self.n;
        let mut starts = vec![0u8; len + 1];
        let mut ends = vec![0u8; len + 1];
        for a in &self.arcs {
            starts[a.start as usize] += 1;
            ends[a.end as usize] += 1;
        }
        let mut rows: [Vec<u32>; 3] = Default::default();
        for t in 1..=len {
            let row = match (starts[t], ends[t]) {
                (1, 0) => 0,
                (1, 1) => 1,
                (0, 1) => 2,
                _ => return Err(crate::sampler::TableauError::NotAPartition),
            };
            rows[row].push(t as u32);
        }
        Tableau3xN::new(rows)
    }

    /// Contents of the mixed open-arc stack after each step, oldest entry
    /// first. Entry `t - 1` is the state after step `t`.
    pub fn stack_trace(&self) -> Vec<Vec<OpenArc>> {
        stack_trace(&self.to_steps()).expect("diagram steps form a valid path")
    }
}

/// Builds the m-diagram of `p`.
pub fn build_mdiagram(p: &LatticePath) -> MDiagram {
    MDiagram::from_path(p)
}

/// The single mixed stack of open arcs after each step, oldest entry first.
/// `S2` removes the newest red entry and pushes a blue one; `S3` removes the
/// newest blue entry.
pub fn stack_trace(steps: &[Step]) -> Result<Vec<Vec<OpenArc>>, MDiagramError> {
    let mut stack: Vec<OpenArc> = Vec::new();
    let mut trace = Vec::with_capacity(steps.len());
    for (idx, s) in steps.iter().enumerate() {
        let t = idx as u32 + 1;
        let pop = |stack: &mut Vec<OpenArc>, color: Color| -> Result<(), MDiagramError> {
            let pos = stack
                .iter()
                .rposition(|o| o.color == color)
                .ok_or(MDiagramError::EmptyPop { step: t, color })?;
            stack.remove(pos);
            Ok(())
        };
        match s {
            Step::S1 => stack.push(OpenArc { start: t, color: Color::Red }),
            Step::S2 => {
                pop(&mut stack, Color::Red)?;
                stack.push(OpenArc { start: t, color: Color::Blue });
            }
            Step::S3 => pop(&mut stack, Color::Blue)?,
        }
        trace.push(stack.clone());
    }
    Ok(trace)
}

/// Numbers `(R_t, B_t)` of open red and blue arcs after `t` steps.
pub fn open_arc_profile(p: &LatticePath, t: usize) -> Result<(u32, u32), MDiagramError> {
    let len = p.steps().len();
    if t > len {
        return Err(MDiagramError::OutOfRange { t, len });
    }
    let (mut r, mut b) = (0u32, 0u32);
    for s in &p.steps()[..t] {
        match s {
            Step::S1 => r += 1,
            Step::S2 => {
                r -= 1;
                b += 1;
            }
            Step::S3 => b -= 1,
        }
    }
    Ok((r, b))
}

/// Checks the three structural conditions: crossing arcs have different
/// colors, no point lies on three arcs, and two m's cross at most once.
pub fn validate(d: &MDiagram) -> Vec<Violation> {
    let arcs = d.arcs();
    let mut out = Vec::new();
    let mut hits: Vec<Vec<(num_rational::Rational64, usize)>> = vec![Vec::new(); arcs.len()];
    let mut m_pairs: HashMap<(usize, usize), usize> = HashMap::new();
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            let (a, b) = (&arcs[i], &arcs[j]);
            if !a.crosses(b) {
                continue;
            }
            if a.color == b.color {
                out.push(Violation::SameColorCrossing { first: i, second: j });
            }
            let x = crossing_abscissa(a.start as i64, a.end as i64, b.start as i64, b.end as i64);
            hits[i].push((x, j));
            hits[j].push((x, i));
            if let (Some(mi), Some(mj)) = (d.triple_of(i), d.triple_of(j)) {
                if mi != mj {
                    *m_pairs.entry((mi.min(mj), mi.max(mj))).or_default() += 1;
                }
            }
        }
    }
    for (i, h) in hits.iter_mut().enumerate() {
        h.sort();
        let mut k = 0;
        while k < h.len() {
            let mut e = k + 1;
            while e < h.len() && h[e].0 == h[k].0 {
                e += 1;
            }
            if e - k >= 2 && h[k..e].iter().all(|&(_, o)| o > i) {
                out.push(Violation::ConcurrentCrossings { arc: i, others: h[k..e].iter().map(|p| p.1).collect() });
            }
            k = e;
        }
    }
    let mut pairs: Vec<_> = m_pairs.into_iter().filter(|&(_, c)| c > 1).collect();
    pairs.sort();
    out.extend(pairs.into_iter().map(|((first, second), count)| Violation::MultipleMCrossings { first, second, count }));
    out
}
