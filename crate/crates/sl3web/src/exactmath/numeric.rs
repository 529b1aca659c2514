//! Floating-point evaluation of `h_a` and `g` through the one-dimensional
//! integral representation of `𝒢∞`.
//!
//! For a wedge point `(x, y)`, with `t = (1+s²)/4`, `α = √t·e^{iθ}` and
//! `θ = atan2((1−t)s, 3t−1)`,
//!
//! `𝒢∞(x,y) = (3/2π) ∫_0^{√3} (Re(α^x)·t^y − 1)/(1−t) ds`.
//!
//! Signed sums over the dihedral orbit cancel the `−1`, so each term is
//! evaluated as `Re(α^x t^y) − 1` with `expm1`, which keeps full relative
//! accuracy as `t → 1`.

use super::green::boundary_source;
use super::lattice::{pt, LatticePointEZ};
use super::ExactError;
use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::OnceLock;

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Clone, Copy, Debug)]
struct Node {
    weight: f64,
    /// `1 − t`
    eps: f64,
    ln_t: f64,
    theta: f64,
}

impl Node {
    /// `½ln t + iθ`, so that `α^x t^y = exp(x·log_alpha + y·ln t)`.
    fn log_alpha(&self) -> Complex64 {
        Complex64::new(0.5 * self.ln_t, self.theta)
    }
}

/// Gauss–Legendre panels in `σ = √3 − s`, halving toward `σ = 0`.
fn nodes() -> &'static [Node] {
    static NODES: OnceLock<Vec<Node>> = OnceLock::new();
    NODES.get_or_init(|| {
        let rule = GaussLegendre::new(24).unwrap();
        let mut out = Vec::new();
        let panels = 46;
        for k in 0..panels {
            let hi = SQRT3 * 0.5f64.powi(k);
            let lo = if k + 1 == panels { 0.0 } else { hi * 0.5 };
            let (mid, half) = ((hi + lo) / 2.0, (hi - lo) / 2.0);
            for &(x, w) in rule.as_node_weight_pairs() {
                let sigma = mid + half * x;
                let s = SQRT3 - sigma;
                let eps = sigma * (2.0 * SQRT3 - sigma) / 4.0;
                out.push(Node {
                    weight: w * half,
                    eps,
                    ln_t: (-eps).ln_1p(),
                    theta: (eps * s).atan2(2.0 - 3.0 * eps),
                });
            }
        }
        out
    })
}

fn complex_expm1(z: Complex64) -> Complex64 {
    let (sin_half, _) = (z.im / 2.0).sin_cos();
    let e = z.re.exp_m1();
    Complex64::new(e * z.im.cos() - 2.0 * sin_half * sin_half, (e + 1.0) * z.im.sin())
}

/// `Re(α^x t^y) − 1` at a node, for a point already in the wedge.
fn term(n: &Node, w: LatticePointEZ) -> f64 {
    complex_expm1(n.log_alpha() * w.x as f64 + n.ln_t * w.y as f64).re
}

/// `G_W(z, z0)` by quadrature.
pub fn green_wedge_f64(z: LatticePointEZ, z0: LatticePointEZ) -> f64 {
    let reps = z0.d3_orbit().map(|(img, sgn)| ((z - img).to_wedge(), sgn as f64));
    let mut acc = 0.0;
    for n in nodes() {
        let mut s = 0.0;
        for &(w, sgn) in &reps {
            s += sgn * term(n, w);
        }
        acc += n.weight * s / n.eps;
    }
    3.0 * acc / (2.0 * PI)
}

/// `𝒢∞(p)` by quadrature, an independent check on the exact reduction.
pub fn green_infinity_f64(p: LatticePointEZ) -> f64 {
    let w = p.to_wedge();
    let acc: f64 = nodes().iter().map(|n| n.weight * term(n, w) / n.eps).sum();
    3.0 * acc / (2.0 * PI)
}

/// `h_a(z)` by quadrature.
pub fn h_point_f64(a: LatticePointEZ, z: LatticePointEZ) -> Result<f64, ExactError> {
    let z0 = boundary_source(a)?;
    if !z.in_open_wedge() {
        return Err(ExactError::NotInterior(z));
    }
    Ok(green_wedge_f64(z, z0) / 3.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GMode {
    Series,
    Quadrature,
}

/// A numerical value of `g` with its error estimate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GValue {
    pub value: f64,
    pub error: f64,
    /// Terms summed (series) or Abel levels used (quadrature).
    pub terms: usize,
    /// `1 − g − Σ_t h_{(0,t)}` with the same summation scheme.
    pub residual: Option<f64>,
}

pub const G_TOLERANCE: f64 = 1e-8;
pub const G_MAX_TERMS: usize = 10_000;
/// Floor on the quadrature-mode tolerance; the Abel extrapolation leaves a
/// `δ³ log δ` remainder.
pub const QUADRATURE_TOLERANCE: f64 = 1e-6;

/// Sums `f(1) + f(2) + …` for a summand decaying like `m^{-4}`: partial sums
/// at doubling cutoffs, one Richardson step against the `M^{-3}` tail.
fn tail_corrected_sum(f: impl Fn(usize) -> f64, tol: f64, cap: usize) -> Result<(f64, f64, usize), ExactError> {
    let mut partial = 0.0;
    let mut m = 0;
    let mut cut = 32;
    let mut sums = Vec::new();
    let mut prev: Option<f64> = None;
    loop {
        while m < cut {
            m += 1;
            partial += f(m);
        }
        sums.push(partial);
        if sums.len() >= 2 {
            let k = sums.len();
            let r = (8.0 * sums[k - 1] - sums[k - 2]) / 7.0;
            if let Some(p) = prev {
                let err = (r - p).abs();
                if err < tol {
                    return Ok((r, err, m));
                }
                if 2 * cut > cap {
                    return Err(ExactError::Tolerance { tolerance: tol, terms: m, estimate: r, error: err });
                }
            }
            prev = Some(r);
        }
        cut *= 2;
    }
}

fn g_series(z: LatticePointEZ, tol: f64) -> Result<GValue, ExactError> {
    let row = |m: usize| green_wedge_f64(z, pt(m as i64, 1)) / 3.0;
    let (g, err, terms) = tail_corrected_sum(row, tol, G_MAX_TERMS)?;
    // the other ray: targets (0,t) with t >= 2, sources (1, t-1)
    let col = |k: usize| green_wedge_f64(z, pt(1, k as i64)) / 3.0;
    let residual = tail_corrected_sum(col, tol, G_MAX_TERMS).ok().map(|(h, _, _)| 1.0 - g - h);
    Ok(GValue { value: g, error: err, terms, residual })
}

/// Direction and start of the eventually linear wedge representative of
/// `z − γ(m,1)`.
struct Ray {
    sign: f64,
    start: LatticePointEZ,
    step: LatticePointEZ,
}

/// `Σ_m r^m h_{(m,0)}(z)` with each dihedral image summed in closed form as a
/// geometric series from `m0` on.
fn g_abel(z: LatticePointEZ, r: f64) -> f64 {
    let m0 = (z.x.abs() + z.y.abs() + 4) as usize;
    let rays: Vec<Ray> = (0..6)
        .map(|g| {
            let rep = |m: i64| (z - pt(m, 1).d3_orbit()[g].0).to_wedge();
            let a = rep(m0 as i64);
            let b = rep(m0 as i64 + 1);
            let step = b - a;
            debug_assert!((2..6).all(|k| rep(m0 as i64 + k) == a + pt(step.x * k, step.y * k)));
            Ray { sign: pt(0, 1).d3_orbit()[g].1 as f64, start: a, step }
        })
        .collect();
    let orbits: Vec<_> =
        (1..m0).map(|m| pt(m as i64, 1).d3_orbit().map(|(img, sgn)| ((z - img).to_wedge(), sgn as f64))).collect();
    let one_minus_r = 1.0 - r;
    let r_m0 = r.powi(m0 as i32);
    let mut acc = 0.0;
    for n in nodes() {
        let la = n.log_alpha();
        let mut s = 0.0;
        let mut rm = 1.0;
        for orbit in &orbits {
            rm *= r;
            let mut inner = 0.0;
            for &(w, sgn) in orbit {
                inner += sgn * term(n, w);
            }
            s += rm * inner;
        }
        // Σ_k r^k (Cρ^k − 1) = [(C−1)(1−r) + r(ρ−1)] / [(1−rρ)(1−r)]
        let mut tail = 0.0;
        for ray in &rays {
            let c1 = complex_expm1(la * ray.start.x as f64 + n.ln_t * ray.start.y as f64);
            let rho1 = complex_expm1(la * ray.step.x as f64 + n.ln_t * ray.step.y as f64);
            let num = c1 * one_minus_r + rho1 * r;
            let den = (Complex64::new(one_minus_r, 0.0) - rho1 * r) * one_minus_r;
            tail += ray.sign * (num / den).re;
        }
        s += r_m0 * tail;
        acc += n.weight * s / n.eps;
    }
    acc / (2.0 * PI)
}

/// Abel means at `r = e^{-δ}` for halving `δ`, extrapolated to `δ → 0` by
/// repeated Richardson steps against the `δ` and `δ²` terms.
fn g_quadrature(z: LatticePointEZ, tol: f64) -> Result<GValue, ExactError> {
    let deltas = [1e-3, 5e-4, 2.5e-4, 1.25e-4];
    let vals: Vec<f64> = deltas.iter().map(|&d: &f64| g_abel(z, (-d).exp())).collect();
    let r1: Vec<f64> = vals.windows(2).map(|w| 2.0 * w[1] - w[0]).collect();
    let r2: Vec<f64> = r1.windows(2).map(|w| (4.0 * w[1] - w[0]) / 3.0).collect();
    let value = r2[1];
    let error = (r2[1] - r2[0]).abs();
    if error > tol.max(QUADRATURE_TOLERANCE) {
        return Err(ExactError::Tolerance { tolerance: tol, terms: deltas.len(), estimate: value, error });
    }
    Ok(GValue { value, error, terms: deltas.len(), residual: None })
}

/// `g(z)`: the probability that the walk from `z` leaves the wedge through
/// the `e₁` ray.
pub fn g_value(z: LatticePointEZ, mode: GMode) -> Result<GValue, ExactError> {
    g_value_tol(z, mode, G_TOLERANCE)
}

pub fn g_value_tol(z: LatticePointEZ, mode: GMode, tol: f64) -> Result<GValue, ExactError> {
    if z.on_wedge_boundary() {
        let v = if z.y == 0 && z.x > 0 { 1.0 } else { 0.0 };
        return Ok(GValue { value: v, error: 0.0, terms: 0, residual: Some(0.0) });
    }
    if !z.in_wedge() {
        return Err(ExactError::OutsideWedge(z));
    }
    match mode {
        GMode::Series => g_series(z, tol),
        GMode::Quadrature => g_quadrature(z, tol),
    }
}
