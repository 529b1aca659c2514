//! The planar arrangement of an m-diagram and the faces of its web.
//!
//! Boundary points sit on the real axis and every arc is a true semicircle,
//! so crossings are found exactly and ordered along each arc by their
//! rational abscissae. The plane graph is stored as half-edges. Besides the
//! arc segments it contains the baseline segments between consecutive
//! boundary points and one closure edge from the last boundary point back to
//! the first below the axis, which makes the graph connected and leaves one
//! bounded face under the axis.
//!
//! Faces are traversed with the face on the left of each half-edge, so
//! bounded faces are walked counterclockwise. An interior face then reads as
//! a lower chain of half-edges moving right followed by an upper chain moving
//! left.

mod web;

use std::collections::VecDeque;
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::geometry::{crossing_abscissa, descending_at};
use crate::mdiagram::{Arc, Color, MDiagram};

pub use web::{to_web, Web, WebColor, WebEdge, WebFace, WebVertex, WebViolation};

/// Intersection of a red and a blue arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingPoint {
    pub red_arc: usize,
    pub blue_arc: usize,
    /// Exact abscissa, serialized as `[numerator, denominator]`.
    #[serde(with = "ratio_pair")]
    pub x: Rational64,
}

mod ratio_pair {
    use num_rational::Rational64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        [*x.numer(), *x.denom()].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let [n, m] = <[i64; 2]>::deserialize(d)?;
        if m == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational64::new(n, m))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Crossing {
    /// The arc with the smaller left endpoint.
    left: u32,
    right: u32,
    x: Rational64,
    /// Position of the crossing in the sorted crossing list of each arc.
    pos_left: u32,
    pos_right: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EdgeKind {
    Segment { arc: u32, index: u32 },
    Baseline,
    Closure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FaceKind {
    /// Bounded by arc segments only.
    Interior,
    /// Touches the baseline from above.
    Boundary,
    /// The outer face, reached across the closure edge.
    Unbounded,
    /// The auxiliary face below the baseline; not part of the web.
    Lower,
}

/// Crossing counts along the lower chain of a face plus its starting color.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceType {
    pub tau: Vec<u32>,
    pub color: Color,
}

impl fmt::Display for FaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tau.iter().map(|c| c.to_string()).collect();
        write!(f, "({}),{}", parts.join(","), self.color)
    }
}

impl std::str::FromStr for FaceType {
    type Err = String;

    /// Parses `"(1,1,2,1),B"`, also accepting `"1,1,2,1 B"`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let cut = s
            .rfind(|c: char| c == ',' || c == ' ' || c == ')')
            .ok_or_else(|| format!("cannot read face type {s:?}"))?;
        let (head, color) = if s[cut..].starts_with(')') {
            let rest = s[cut + 1..].trim_start_matches([',', ' ']);
            (&s[..=cut], rest)
        } else {
            (&s[..cut], &s[cut + 1..])
        };
        let color: Color = color.trim().parse()?;
        let body = head.trim().trim_start_matches('(').trim_end_matches(')');
        let tau = body
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| format!("bad entry {p:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        if tau.is_empty() || tau.contains(&0) {
            return Err("face type entries must be positive".into());
        }
        Ok(FaceType { tau, color })
    }
}

/// Measurements of one interior face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub face: usize,
    /// Number of web edges around the face.
    pub web_size: u32,
    /// Number of arc segments around the face.
    pub mdiagram_segments: u32,
    pub upper_segments: u32,
    /// Vertices strictly inside the lower chain, left to right.
    pub lower_points: u32,
    pub face_type: FaceType,
    pub depth: u32,
    /// Opening step of the first arc of the lower chain, the arc of the
    /// starting color.
    pub first_step: u32,
    /// Set when the descending-branch rule at some lower crossing does not
    /// single out the arc followed by the face type.
    pub ambiguous: bool,
}

/// Planar arrangement of the arcs of an m-diagram.
#[derive(Clone, Debug)]
pub struct Arrangement {
    diagram: MDiagram,
    positions: Vec<i64>,
    crossings: Vec<Crossing>,
    arc_crossings: Vec<Vec<u32>>,
    arc_first_edge: Vec<u32>,
    edges: Vec<EdgeKind>,
    origin: Vec<u32>,
    face_of: Vec<u32>,
    faces: Vec<FaceInfo>,
    cycles: Vec<u32>,
    crossing_out: Vec<[u32; 4]>,
}

#[derive(Clone, Copy, Debug)]
struct FaceInfo {
    offset: u32,
    len: u32,
    kind: FaceKind,
}

/// Builds the arrangement with boundary point `t` at abscissa `t`.
pub fn build_arrangement(d: &MDiagram) -> Arrangement {
    Arrangement::new(d)
}

impl Arrangement {
    pub fn new(d: &MDiagram) -> Arrangement {
        let positions = (0..=3 * d.n() as i64).collect();
        Self::with_positions(d, positions)
    }

    /// Builds the arrangement with boundary point `t` at `positions[t]`.
    /// Positions must be strictly increasing; index 0 is ignored.
    pub fn with_positions(d: &MDiagram, positions: Vec<i64>) -> Arrangement {
        let n = d.n();
        let len = 3 * n;
        assert_eq!(positions.len(), len + 1, "one position per boundary point");
        assert!(positions[1..].windows(2).all(|w| w[0] < w[1]), "positions must increase");
        let arcs = d.arcs();

        let pairs = crossing_pairs(d);
        let mut crossings: Vec<Crossing> = pairs
            .iter()
            .map(|&(i, j)| {
                let (l, r) = if arcs[i as usize].start < arcs[j as usize].start { (i, j) } else { (j, i) };
                let (a, b) = (&arcs[l as usize], &arcs[r as usize]);
                let p = |t: u32| positions[t as usize];
                Crossing {
                    left: l,
                    right: r,
                    x: crossing_abscissa(p(a.start), p(a.end), p(b.start), p(b.end)),
                    pos_left: 0,
                    pos_right: 0,
                }
            })
            .collect();

        let mut arc_crossings: Vec<Vec<u32>> = vec![Vec::new(); arcs.len()];
        for (c, cr) in crossings.iter().enumerate() {
            arc_crossings[cr.left as usize].push(c as u32);
            arc_crossings[cr.right as usize].push(c as u32);
        }
        for (a, list) in arc_crossings.iter_mut().enumerate() {
            list.sort_by(|&u, &v| crossings[u as usize].x.cmp(&crossings[v as usize].x));
            for (k, &c) in list.iter().enumerate() {
                let cr = &mut crossings[c as usize];
                if cr.left as usize == a {
                    cr.pos_left = k as u32;
                } else {
                    cr.pos_right = k as u32;
                }
            }
        }

        let mut edges = Vec::new();
        let mut arc_first_edge = Vec::with_capacity(arcs.len());
        for (a, list) in arc_crossings.iter().enumerate() {
            arc_first_edge.push(edges.len() as u32);
            for k in 0..=list.len() {
                edges.push(EdgeKind::Segment { arc: a as u32, index: k as u32 });
            }
        }
        let base0 = edges.len() as u32;
        for _ in 1..len {
            edges.push(EdgeKind::Baseline);
        }
        let closure = edges.len() as u32;
        edges.push(EdgeKind::Closure);

        let vertex_count = len + crossings.len();
        let mut origin = vec![0u32; 2 * edges.len()];
        let mut rot_prev = vec![0u32; 2 * edges.len()];
        let set_rotation = |rot: &[u32], v: u32, origin: &mut Vec<u32>, rot_prev: &mut Vec<u32>| {
            for (k, &h) in rot.iter().enumerate() {
                origin[h as usize] = v;
                rot_prev[h as usize] = rot[(k + rot.len() - 1) % rot.len()];
            }
        };

        let mut start_arc = vec![u32::MAX; len + 1];
        let mut end_arc = vec![u32::MAX; len + 1];
        for (a, arc) in arcs.iter().enumerate() {
            start_arc[arc.start as usize] = a as u32;
            end_arc[arc.end as usize] = a as u32;
        }
        let last_seg = |a: u32| arc_first_edge[a as usize] + arc_crossings[a as usize].len() as u32;
        let mut rot = Vec::with_capacity(5);
        for t in 1..=len {
            rot.clear();
            if t < len {
                rot.push(2 * (base0 + t as u32 - 1));
            }
            if start_arc[t] != u32::MAX {
                rot.push(2 * arc_first_edge[start_arc[t] as usize]);
            }
            if end_arc[t] != u32::MAX {
                rot.push(2 * last_seg(end_arc[t]) + 1);
            }
            if t > 1 {
                rot.push(2 * (base0 + t as u32 - 2) + 1);
            }
            if t == 1 {
                rot.push(2 * closure + 1);
            }
            if t == len {
                rot.push(2 * closure);
            }
            set_rotation(&rot, t as u32 - 1, &mut origin, &mut rot_prev);
        }

        let mut crossing_out = Vec::with_capacity(crossings.len());
        for (c, cr) in crossings.iter().enumerate() {
            let el = arc_first_edge[cr.left as usize] + cr.pos_left;
            let er = arc_first_edge[cr.right as usize] + cr.pos_right;
            // Counterclockwise: left arc going right, right arc going right,
            // left arc going left, right arc going left.
            let out = [2 * (el + 1), 2 * (er + 1), 2 * el + 1, 2 * er + 1];
            set_rotation(&out, (len + c) as u32, &mut origin, &mut rot_prev);
            crossing_out.push(out);
        }

        let half = 2 * edges.len();
        let mut face_of = vec![u32::MAX; half];
        let mut faces = Vec::new();
        let mut cycles = Vec::with_capacity(half);
        for h0 in 0..half {
            if face_of[h0] != u32::MAX {
                continue;
            }
            let f = faces.len() as u32;
            let offset = cycles.len() as u32;
            let mut kind = FaceKind::Interior;
            let mut h = h0 as u32;
            loop {
                face_of[h as usize] = f;
                cycles.push(h);
                match edges[(h / 2) as usize] {
                    EdgeKind::Closure if h % 2 == 0 => kind = FaceKind::Unbounded,
                    EdgeKind::Closure => kind = FaceKind::Lower,
                    EdgeKind::Baseline if h % 2 == 0 && kind == FaceKind::Interior => kind = FaceKind::Boundary,
                    _ => {}
                }
                h = rot_prev[(h ^ 1) as usize];
                if h as usize == h0 {
                    break;
                }
            }
            faces.push(FaceInfo { offset, len: cycles.len() as u32 - offset, kind });
        }
        debug_assert_eq!(vertex_count as i64 - edges.len() as i64 + faces.len() as i64, 2);

        Arrangement {
            diagram: d.clone(),
            positions,
            crossings,
            arc_crossings,
            arc_first_edge,
            edges,
            origin,
            face_of,
            faces,
            cycles,
            crossing_out,
        }
    }

    pub fn diagram(&self) -> &MDiagram {
        &self.diagram
    }

    pub fn arcs(&self) -> &[Arc] {
        self.diagram.arcs()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> Vec<CrossingPoint> {
        let arcs = self.arcs();
        self.crossings
            .iter()
            .map(|c| {
                let (red, blue) = if arcs[c.left as usize].color == Color::Red { (c.left, c.right) } else { (c.right, c.left) };
                CrossingPoint { red_arc: red as usize, blue_arc: blue as usize, x: c.x }
            })
            .collect()
    }

    /// Crossing ids along `arc`, ordered by abscissa.
    pub fn crossings_on(&self, arc: usize) -> &[u32] {
        &self.arc_crossings[arc]
    }

    pub fn vertex_count(&self) -> usize {
        3 * self.diagram.n() + self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// `V - E + F`, which is 2 for a connected plane graph.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn face_kind(&self, f: usize) -> FaceKind {
        self.faces[f].kind
    }

    pub fn interior_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(|&f| self.faces[f].kind == FaceKind::Interior)
    }

    fn cycle(&self, f: usize) -> &[u32] {
        let info = self.faces[f];
        &self.cycles[info.offset as usize..(info.offset + info.len) as usize]
    }

    /// Number of arc segments around face `f`.
    pub fn segment_count(&self, f: usize) -> usize {
        self.cycle(f).iter().filter(|&&h| matches!(self.edges[(h / 2) as usize], EdgeKind::Segment { .. })).count()
    }

    fn segment(&self, h: u32) -> Option<(u32, u32)> {
        match self.edges[(h / 2) as usize] {
            EdgeKind::Segment { arc, index } => Some((arc, index)),
            _ => None,
        }
    }

    fn vertex_crossing(&self, v: u32) -> Option<usize> {
        let len = 3 * self.diagram.n() as u32;
        (v >= len).then(|| (v - len) as usize)
    }

    /// Face pairs joined across the short green edge that replaces each
    /// crossing in the web: the sectors left and right of the crossing.
    fn green_pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.crossing_out.iter().map(|out| (self.face_of[out[0] as usize], self.face_of[out[2] as usize]))
    }

    /// Dual graph distance from each face to the nearest face touching the
    /// boundary. The lower face gets `None`.
    pub fn face_depths(&self) -> Vec<Option<u32>> {
        let nf = self.faces.len();
        let mut adj_count = vec![0u32; nf + 1];
        let add = |a: u32, b: u32, adj_count: &mut Vec<u32>| {
            adj_count[a as usize] += 1;
            adj_count[b as usize] += 1;
        };
        for (e, kind) in self.edges.iter().enumerate() {
            if let EdgeKind::Segment { .. } = kind {
                add(self.face_of[2 * e], self.face_of[2 * e + 1], &mut adj_count);
            }
        }
        for (a, b) in self.green_pairs() {
            add(a, b, &mut adj_count);
        }
        let mut start = vec![0u32; nf + 1];
        for f in 0..nf {
            start[f + 1] = start[f] + adj_count[f];
        }
        let mut fill = start.clone();
        let mut adj = vec![0u32; start[nf] as usize];
        let mut push = |a: u32, b: u32| {
            adj[fill[a as usize] as usize] = b;
            fill[a as usize] += 1;
            adj[fill[b as usize] as usize] = a;
            fill[b as usize] += 1;
        };
        for (e, kind) in self.edges.iter().enumerate() {
            if let EdgeKind::Segment { .. } = kind {
                push(self.face_of[2 * e], self.face_of[2 * e + 1]);
            }
        }
        for (a, b) in self.green_pairs() {
            push(a, b);
        }

        let mut depth = vec![None; nf];
        let mut queue = VecDeque::new();
        for (f, info) in self.faces.iter().enumerate() {
            if matches!(info.kind, FaceKind::Boundary | FaceKind::Unbounded) {
                depth[f] = Some(0);
                queue.push_back(f);
            }
        }
        while let Some(f) = queue.pop_front() {
            let d = depth[f].expect("queued faces have a depth");
            for &g in &adj[start[f] as usize..start[f + 1] as usize] {
                let g = g as usize;
                if depth[g].is_none() && self.faces[g].kind != FaceKind::Lower {
                    depth[g] = Some(d + 1);
                    queue.push_back(g);
                }
            }
        }
        depth
    }

    /// Number of green web edges on the boundary of each face.
    fn green_incidence(&self) -> Vec<u32> {
        let mut count = vec![0u32; self.faces.len()];
        for (a, b) in self.green_pairs() {
            count[a as usize] += 1;
            count[b as usize] += 1;
        }
        count
    }

    /// Records for all interior faces, in face id order.
    pub fn classify_faces(&self) -> Vec<FaceRecord> {
        let depths = self.face_depths();
        let green = self.green_incidence();
        self.interior_faces()
            .map(|f| self.classify_face(f, depths[f].unwrap_or(u32::MAX), green[f]))
            .collect()
    }

    fn classify_face(&self, f: usize, depth: u32, green: u32) -> FaceRecord {
        let arcs = self.arcs();
        let cycle = self.cycle(f);
        let k = cycle.len();
        let rightward = |h: u32| h % 2 == 0;
        let begin = (0..k)
            .find(|&i| rightward(cycle[i]) && !rightward(cycle[(i + k - 1) % k]))
            .expect("interior faces have a lower chain");
        let lower_len = (0..k).take_while(|&i| rightward(cycle[(begin + i) % k])).count();
        let upper = k - lower_len;
        let mut ambiguous = (0..k).filter(|&i| rightward(cycle[i]) && !rightward(cycle[(i + k - 1) % k])).count() != 1;

        let lower: Vec<u32> = (0..lower_len).map(|i| cycle[(begin + i) % k]).collect();
        let (first_arc, _) = self.segment(lower[0]).expect("interior faces are bounded by arcs");
        let color = arcs[first_arc as usize].color;
        let mut tau = Vec::with_capacity(lower_len.saturating_sub(1));
        for w in lower.windows(2) {
            let (arc_in, seg_in) = self.segment(w[0]).expect("arc segment");
            let (arc_out, _) = self.segment(w[1]).expect("arc segment");
            let v = self.origin[w[1] as usize];
            match self.vertex_crossing(v) {
                None => tau.push(1),
                Some(c) => {
                    let on_arc = self.arc_crossings[arc_in as usize].len() as u32;
                    // seg_in ends at the crossing with position seg_in.
                    tau.push(on_arc - seg_in);
                    let x = self.crossings[c].x;
                    let desc = |a: u32| {
                        let arc = &arcs[a as usize];
                        descending_at(self.positions[arc.start as usize], self.positions[arc.end as usize], x)
                    };
                    if !desc(arc_in) || desc(arc_out) {
                        ambiguous = true;
                    }
                }
            }
        }
        let first_step = arcs[first_arc as usize].start;
        FaceRecord {
            face: f,
            web_size: k as u32 + green,
            mdiagram_segments: k as u32,
            upper_segments: upper as u32,
            lower_points: tau.len() as u32,
            face_type: FaceType { tau, color },
            depth,
            first_step,
            ambiguous,
        }
    }
}

/// All crossing arc pairs, found while sweeping the boundary: when an arc
/// closes it crosses exactly the open arcs of the other color that were
/// opened after it.
pub fn crossing_pairs(d: &MDiagram) -> Vec<(u32, u32)> {
    let len = 3 * d.n();
    let mut opening = vec![Vec::new(); len + 2];
    let mut closing = vec![Vec::new(); len + 2];
    for (a, arc) in d.arcs().iter().enumerate() {
        opening[arc.start as usize].push(a as u32);
        closing[arc.end as usize].push(a as u32);
    }
    let arcs = d.arcs();
    let mut open: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
    let slot = |c: Color| match c {
        Color::Red => 0,
        Color::Blue => 1,
    };
    let mut out = Vec::new();
    for t in 1..=len {
        for &a in &closing[t] {
            let arc = &arcs[a as usize];
            let other = &open[1 - slot(arc.color)];
            for &b in other.iter().rev() {
                if arcs[b as usize].start <= arc.start {
                    break;
                }
                out.push((a, b));
            }
            let own = &mut open[slot(arc.color)];
            let pos = own.iter().rposition(|&b| b == a).expect("closing arc is open");
            own.remove(pos);
        }
        for &a in &opening[t] {
            open[slot(arcs[a as usize].color)].push(a);
        }
    }
    out
}

#[cfg(test)]
mod tests;
