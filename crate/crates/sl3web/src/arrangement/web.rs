//! The reduced web of an m-diagram.
//!
//! The middle point of every m becomes a trivalent sink joined to the
//! boundary by a green edge; every crossing becomes a sink and a source joined
//! by a short green edge. Red arcs run from their start toward the sink at
//! their middle, blue arcs from their end toward the same sink.
//!
//! The web keeps its own rotation system and face traversal so that its faces
//! can be checked against the arrangement independently.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Arrangement, EdgeKind};
use crate::mdiagram::{Color, MDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "id", rename_all = "kebab-case")]
pub enum WebVertex {
    /// Boundary point `t`, numbered from 1.
    Boundary(u32),
    /// Sink replacing the middle of m-triple `m`.
    Y(usize),
    /// Sink of crossing `c`.
    Sink(usize),
    /// Source of crossing `c`.
    Source(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WebColor {
    Red,
    Blue,
    Green,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebEdge {
    pub from: u32,
    pub to: u32,
    pub color: WebColor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebFace {
    /// Number of web edges on the face boundary.
    pub size: u32,
    /// Touches the boundary circle of the disk.
    pub boundary: bool,
    pub depth: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WebViolation {
    Degree { vertex: u32, degree: usize },
    MixedOrientation { vertex: u32 },
    RepeatedColor { vertex: u32 },
    InwardBoundaryEdge { vertex: u32 },
    SmallFace { face: usize, size: u32 },
    Euler { characteristic: i64 },
}

/// A directed trivalent plane graph in a disk.
#[derive(Clone, Debug)]
pub struct Web {
    n: usize,
    vertices: Vec<WebVertex>,
    /// Web edges followed by the frame: baseline pieces and the closure.
    edges: Vec<WebEdge>,
    web_edges: usize,
    origin: Vec<u32>,
    rot_prev: Vec<u32>,
    faces: Vec<WebFace>,
    lower_face: usize,
}

/// Builds the web of `d`.
pub fn to_web(d: &MDiagram) -> Web {
    Web::from_arrangement(&Arrangement::new(d))
}

impl Web {
    pub fn from_arrangement(a: &Arrangement) -> Web {
        let d = a.diagram();
        let n = d.n();
        let len = 3 * n;
        let arcs = d.arcs();
        assert_eq!(d.triples().len(), n, "webs are built from m-triples");

        let mut vertices: Vec<WebVertex> = (1..=len as u32).map(WebVertex::Boundary).collect();
        vertices.extend((0..n).map(WebVertex::Y));
        for c in 0..a.crossings.len() {
            vertices.push(WebVertex::Sink(c));
            vertices.push(WebVertex::Source(c));
        }
        let y = |m: usize| (len + m) as u32;
        let sink = |c: u32| (4 * n) as u32 + 2 * c;
        let source = |c: u32| (4 * n) as u32 + 2 * c + 1;

        let mut edges = Vec::new();
        for kind in &a.edges {
            let EdgeKind::Segment { arc, index } = *kind else { break };
            let arc_id = arc as usize;
            let list = &a.arc_crossings[arc_id];
            let m = arc_id / 2;
            let arc = &arcs[arc_id];
            let k = index as usize;
            let (left, right) = match arc.color {
                Color::Red => (
                    if k == 0 { arc.start - 1 } else { source(list[k - 1]) },
                    if k == list.len() { y(m) } else { sink(list[k]) },
                ),
                Color::Blue => (
                    if k == 0 { y(m) } else { sink(list[k - 1]) },
                    if k == list.len() { arc.end - 1 } else { source(list[k]) },
                ),
            };
            edges.push(match arc.color {
                Color::Red => WebEdge { from: left, to: right, color: WebColor::Red },
                Color::Blue => WebEdge { from: right, to: left, color: WebColor::Blue },
            });
        }
        let green_cross0 = edges.len() as u32;
        for c in 0..a.crossings.len() as u32 {
            edges.push(WebEdge { from: source(c), to: sink(c), color: WebColor::Green });
        }
        let green_mid0 = edges.len() as u32;
        for (m, t) in d.triples().iter().enumerate() {
            edges.push(WebEdge { from: t.middle - 1, to: y(m), color: WebColor::Green });
        }
        let web_edges = edges.len();
        let frame0 = edges.len() as u32;
        for t in 1..len as u32 {
            edges.push(WebEdge { from: t - 1, to: t, color: WebColor::Green });
        }
        let closure = edges.len() as u32;
        edges.push(WebEdge { from: len as u32 - 1, to: 0, color: WebColor::Green });

        let at = |w: u32, v: u32, edges: &Vec<WebEdge>| if edges[w as usize].from == v { 2 * w } else { 2 * w + 1 };
        let mut origin = vec![0u32; 2 * edges.len()];
        let mut rot_prev = vec![0u32; 2 * edges.len()];
        let mut set = |v: u32, ws: &[u32], edges: &Vec<WebEdge>| {
            let hs: Vec<u32> = ws.iter().map(|&w| at(w, v, edges)).collect();
            for (k, &h) in hs.iter().enumerate() {
                origin[h as usize] = v;
                rot_prev[h as usize] = hs[(k + hs.len() - 1) % hs.len()];
            }
        };

        let first = |arc: usize| a.arc_first_edge[arc];
        let last = |arc: usize| a.arc_first_edge[arc] + a.arc_crossings[arc].len() as u32;
        let mut up = vec![u32::MAX; len + 1];
        for (m, t) in d.triples().iter().enumerate() {
            up[t.start as usize] = first(2 * m);
            up[t.end as usize] = last(2 * m + 1);
            up[t.middle as usize] = green_mid0 + m as u32;
        }
        for t in 1..=len {
            let mut ws = Vec::with_capacity(4);
            if t < len {
                ws.push(frame0 + t as u32 - 1);
            }
            ws.push(up[t]);
            if t > 1 {
                ws.push(frame0 + t as u32 - 2);
            }
            if t == 1 || t == len {
                ws.push(closure);
            }
            set(t as u32 - 1, &ws, &edges);
        }
        for m in 0..n {
            set(y(m), &[first(2 * m + 1), last(2 * m), green_mid0 + m as u32], &edges);
        }
        for (c, cr) in a.crossings.iter().enumerate() {
            let c32 = c as u32;
            let l = cr.left as usize;
            let r = cr.right as usize;
            let a_right = first(l) + cr.pos_left + 1;
            let a_left = first(l) + cr.pos_left;
            let b_right = first(r) + cr.pos_right + 1;
            let b_left = first(r) + cr.pos_right;
            let green = green_cross0 + c32;
            if arcs[l].color == Color::Red {
                set(sink(c32), &[b_right, a_left, green], &edges);
                set(source(c32), &[b_left, a_right, green], &edges);
            } else {
                set(sink(c32), &[b_left, a_right, green], &edges);
                set(source(c32), &[b_right, a_left, green], &edges);
            }
        }

        let half = 2 * edges.len();
        let mut face_of = vec![u32::MAX; half];
        let mut faces = Vec::new();
        let mut lower_face = usize::MAX;
        for h0 in 0..half {
            if face_of[h0] != u32::MAX {
                continue;
            }
            let f = faces.len();
            let (mut size, mut boundary) = (0u32, false);
            let mut h = h0 as u32;
            loop {
                face_of[h as usize] = f as u32;
                if (h / 2) as usize >= web_edges {
                    boundary = true;
                    if h == 2 * closure + 1 {
                        lower_face = f;
                    }
                } else {
                    size += 1;
                }
                h = rot_prev[(h ^ 1) as usize];
                if h as usize == h0 {
                    break;
                }
            }
            faces.push(WebFace { size, boundary, depth: u32::MAX });
        }

        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); faces.len()];
        for w in 0..web_edges {
            let (f, g) = (face_of[2 * w], face_of[2 * w + 1]);
            adj[f as usize].push(g);
            adj[g as usize].push(f);
        }
        let mut queue = VecDeque::new();
        for (f, face) in faces.iter_mut().enumerate() {
            if face.boundary && f != lower_face {
                face.depth = 0;
                queue.push_back(f);
            }
        }
        while let Some(f) = queue.pop_front() {
            let d = faces[f].depth;
            for &g in &adj[f] {
                let g = g as usize;
                if faces[g].depth == u32::MAX && g != lower_face {
                    faces[g].depth = d + 1;
                    queue.push_back(g);
                }
            }
        }

        Web { n, vertices, edges, web_edges, origin, rot_prev, faces, lower_face }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[WebVertex] {
        &self.vertices
    }

    /// The edges of the web proper, without the frame used for embedding.
    pub fn edges(&self) -> &[WebEdge] {
        &self.edges[..self.web_edges]
    }

    pub fn y_count(&self) -> usize {
        self.vertices.iter().filter(|v| matches!(v, WebVertex::Y(_))).count()
    }

    /// Green edges that replace crossings.
    pub fn crossing_edge_count(&self) -> usize {
        self.edges()
            .iter()
            .filter(|e| e.color == WebColor::Green && matches!(self.vertices[e.to as usize], WebVertex::Sink(_)))
            .count()
    }

    /// All faces of the disk except the auxiliary one outside it.
    pub fn faces(&self) -> Vec<WebFace> {
        self.faces.iter().enumerate().filter(|&(f, _)| f != self.lower_face).map(|(_, x)| *x).collect()
    }

    pub fn interior_faces(&self) -> Vec<WebFace> {
        self.faces.iter().filter(|f| !f.boundary).copied().collect()
    }

    /// Checks trivalence, orientation, coloring, reducedness and Euler's
    /// formula.
    pub fn check_invariants(&self) -> Vec<WebViolation> {
        let mut out = Vec::new();
        let mut incident: Vec<Vec<(bool, WebColor)>> = vec![Vec::new(); self.vertices.len()];
        for e in self.edges() {
            incident[e.from as usize].push((true, e.color));
            incident[e.to as usize].push((false, e.color));
        }
        for (v, inc) in incident.iter().enumerate() {
            let v32 = v as u32;
            match self.vertices[v] {
                WebVertex::Boundary(_) => {
                    if inc.len() != 1 {
                        out.push(WebViolation::Degree { vertex: v32, degree: inc.len() });
                    } else if !inc[0].0 {
                        out.push(WebViolation::InwardBoundaryEdge { vertex: v32 });
                    }
                }
                _ => {
                    if inc.len() != 3 {
                        out.push(WebViolation::Degree { vertex: v32, degree: inc.len() });
                        continue;
                    }
                    if inc.iter().any(|x| x.0 != inc[0].0) {
                        out.push(WebViolation::MixedOrientation { vertex: v32 });
                    }
                    let (c0, c1, c2) = (inc[0].1, inc[1].1, inc[2].1);
                    if c0 == c1 || c1 == c2 || c0 == c2 {
                        out.push(WebViolation::RepeatedColor { vertex: v32 });
                    }
                }
            }
        }
        for (f, face) in self.faces.iter().enumerate() {
            if !face.boundary && face.size < 6 {
                out.push(WebViolation::SmallFace { face: f, size: face.size });
            }
        }
        let chi = self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64;
        if chi != 2 {
            out.push(WebViolation::Euler { characteristic: chi });
        }
        out
    }

    /// Origin vertex of half-edge `h`; half-edge `2w` runs along edge `w`.
    pub fn half_edge_origin(&self, h: usize) -> u32 {
        self.origin[h]
    }

    /// Next half-edge clockwise around the origin of `h`.
    pub fn rotate_clockwise(&self, h: usize) -> u32 {
        self.rot_prev[h]
    }
}
