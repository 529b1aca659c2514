use super::{DirichletError, QdDomain, QdSolver};
use crate::exactmath::{pt, LatticePointEZ};
use crate::mdiagram::Color;
use serde::{Deserialize, Serialize};

/// Start points after a crossing: `(1, previous count)` after a blue arc
/// lands on the `y` axis, `(previous count, 1)` after a red arc lands on the
/// `x` axis.
pub const CROSSING_CONVENTION: &str = "restart at (1, t-1) after (0, t) and at (s-1, 1) after (s, 0)";

/// Default truncation of both sums is `d + DEFAULT_TRUNC_EXTRA`.
pub const DEFAULT_TRUNC_EXTRA: u32 = 200;
/// Default cap is the truncation plus this margin.
pub const DEFAULT_CAP_MARGIN: u32 = 100;

/// The four size-6 face diagrams, by the color of the arc at `s` and the
/// number of upper segments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseDiagram {
    RedOne,
    RedTwo,
    BlueOne,
    BlueTwo,
}

impl BaseDiagram {
    pub const ALL: [BaseDiagram; 4] = [BaseDiagram::RedOne, BaseDiagram::RedTwo, BaseDiagram::BlueOne, BaseDiagram::BlueTwo];

    pub fn start_color(self) -> Color {
        match self {
            BaseDiagram::RedOne | BaseDiagram::RedTwo => Color::Red,
            BaseDiagram::BlueOne | BaseDiagram::BlueTwo => Color::Blue,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtensionRatio {
    pub d: u32,
    pub fa: u32,
    pub fb: u32,
    pub color: Color,
    pub trunc: u32,
    pub cap: u32,
    pub ratio: f64,
    /// Mass beyond `trunc`, extrapolated from the last row and column
    /// assuming at least quadratic decay.
    pub tail_bound: f64,
    /// Cap-escape probability from the start of the original face.
    pub residual: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub convention: String,
}

fn mirror(p: LatticePointEZ, color: Color) -> LatticePointEZ {
    match color {
        Color::Blue => p,
        Color::Red => pt(p.y, p.x),
    }
}

/// `L²_d / L¹_d` for crossing data `(F_a, F_b)`, with both sums cut at
/// `trunc` and the domain cut at `cap`.
pub fn extension_ratio(d: u32, fa: u32, fb: u32, color: Color, trunc: u32, cap: u32) -> Result<ExtensionRatio, DirichletError> {
    let solver = QdSolver::new(QdDomain::new(d, cap)?)?;
    extension_ratio_in(&solver, fa, fb, color, trunc)
}

pub fn extension_ratio_for(base: BaseDiagram, d: u32, fa: u32, fb: u32, trunc: u32, cap: u32) -> Result<ExtensionRatio, DirichletError> {
    extension_ratio(d, fa, fb, base.start_color(), trunc, cap)
}

/// Blue start: `Σ h_{(0,t)}(F_a,1) · h_{(s,0)}(1,t−1) · h_{(0,F_b+1)}(s−1,1) / h_{(0,F_b+1)}(F_a,1)`.
/// The red start swaps the coordinates of every point.
pub fn extension_ratio_in(solver: &QdSolver, fa: u32, fb: u32, color: Color, trunc: u32) -> Result<ExtensionRatio, DirichletError> {
    let dom = solver.domain().clone();
    let d = dom.d;
    let m = |x: i64, y: i64| mirror(pt(x, y), color);
    let start = m(fa as i64, 1);
    let last = m(0, fb as i64 + 1);
    let trunc = trunc.min(dom.cap - 1);
    if fa == 0 || fb == 0 {
        return Err(DirichletError::NotInterior(start, d));
    }

    let first = solver.exit_distribution(start)?;
    let closing = solver.hitting(last)?;
    let denominator = closing.get(start);
    if denominator < 1e-12 {
        return Err(DirichletError::Degenerate(denominator));
    }
    let escape = solver.cap_escape();
    let residual = escape.get(start);

    let lo = d as i64 + 1;
    let hi = trunc as i64;
    let mut numerator = 0.0;
    let mut last_row = 0.0;
    let mut last_col = 0.0;
    for t in lo..=hi {
        let a_t = first.at(m(0, t));
        if a_t == 0.0 {
            continue;
        }
        let middle = solver.exit_distribution(m(1, t - 1))?;
        for s in lo..=hi {
            let term = a_t * middle.at(m(s, 0)) * closing.get(m(s - 1, 1));
            numerator += term;
            if t == hi {
                last_row += term;
            }
            if s == hi {
                last_col += term;
            }
        }
    }
    let tail_bound = hi as f64 * (last_row + last_col) / denominator;
    Ok(ExtensionRatio {
        d,
        fa,
        fb,
        color,
        trunc,
        cap: dom.cap,
        ratio: numerator / denominator,
        tail_bound,
        residual,
        numerator,
        denominator,
        convention: CROSSING_CONVENTION.to_string(),
    })
}

/// Least-squares slope of `ln ratio` against `ln d`.
pub fn decay_fit(points: &[(f64, f64)]) -> Result<f64, DirichletError> {
    if points.len() < 4 {
        return Err(DirichletError::TooFewPoints { need: 4, got: points.len() });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}
