//! Hitting probabilities of the walk with steps `(1,0)`, `(−1,1)`, `(0,−1)`
//! on the truncated quadrant `Q_d = {x, y ≥ 0, x + y ≥ d}`, cut off at the
//! level `x + y = L`.
//!
//! Interior points are grouped by level `ℓ = x + y`. A step changes the level
//! by `+1`, `0` or `−1`, so the linear system is block tridiagonal and is
//! solved by block elimination; the factorization is reused for every
//! target and every start.

mod ratio;

pub use ratio::{
    decay_fit, extension_ratio, extension_ratio_for, extension_ratio_in, BaseDiagram, ExtensionRatio, CROSSING_CONVENTION,
    DEFAULT_CAP_MARGIN, DEFAULT_TRUNC_EXTRA,
};

use crate::exactmath::{pt, LatticePointEZ};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DirichletError {
    #[error("{0} is not a boundary point of Q_{1}")]
    NotBoundary(LatticePointEZ, u32),
    #[error("{0} is not an interior point of Q_{1} below the cap")]
    NotInterior(LatticePointEZ, u32),
    #[error("cap L = {cap} must exceed d + 2 = {}", d + 2)]
    CapTooLow { cap: u32, d: u32 },
    #[error("cap residual {residual:e} above tolerance {tolerance:e} at L = {cap}; try L >= {suggested}")]
    CapTooSmall { cap: u32, residual: f64, tolerance: f64, suggested: u32 },
    #[error("singular block at level {0}")]
    Singular(u32),
    #[error("sweeps did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("degenerate configuration: denominator {0:e}")]
    Degenerate(f64),
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },
}

/// Where a point sits relative to `Q_d` truncated at level `cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Site {
    Interior,
    /// On an axis or on the diagonal `x + y = d`.
    Boundary,
    Cap,
    Outside,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QdDomain {
    pub d: u32,
    pub cap: u32,
}

impl QdDomain {
    pub fn new(d: u32, cap: u32) -> Result<Self, DirichletError> {
        if cap < d + 3 || cap < 3 {
            return Err(DirichletError::CapTooLow { cap, d });
        }
        Ok(QdDomain { d, cap })
    }

    pub fn site(&self, p: LatticePointEZ) -> Site {
        let (x, y) = (p.x, p.y);
        let level = x + y;
        if x < 0 || y < 0 || level < self.d as i64 {
            Site::Outside
        } else if level >= self.cap as i64 {
            if level == self.cap as i64 {
                Site::Cap
            } else {
                Site::Outside
            }
        } else if x == 0 || y == 0 || level == self.d as i64 {
            Site::Boundary
        } else {
            Site::Interior
        }
    }

    pub fn first_level(&self) -> u32 {
        (self.d + 1).max(2)
    }

    pub fn last_level(&self) -> u32 {
        self.cap - 1
    }

    fn levels(&self) -> std::ops::RangeInclusive<u32> {
        self.first_level()..=self.last_level()
    }

    pub fn interior_count(&self) -> usize {
        self.levels().map(|l| l as usize - 1).sum()
    }

    /// `(level, index)` of an interior point; index is `x − 1`.
    fn slot(&self, p: LatticePointEZ) -> Option<(usize, usize)> {
        (self.site(p) == Site::Interior).then(|| ((p.x + p.y) as usize - self.first_level() as usize, p.x as usize - 1))
    }

    fn point(&self, level_slot: usize, i: usize) -> LatticePointEZ {
        let l = level_slot as i64 + self.first_level() as i64;
        let x = i as i64 + 1;
        pt(x, l - x)
    }

    /// Boundary points reachable in one step from the interior.
    pub fn boundary_points(&self) -> Vec<LatticePointEZ> {
        let mut out = std::collections::BTreeSet::new();
        for l in self.levels() {
            for x in 1..l as i64 {
                let z = pt(x, l as i64 - x);
                for v in LatticePointEZ::STEPS {
                    if self.site(z + v) == Site::Boundary {
                        out.insert(z + v);
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// Right-hand side `b_z = (1/3)·#{j : z + v_j = a}` over interior `z`.
    fn rhs_for(&self, is_source: impl Fn(LatticePointEZ) -> bool) -> Vec<DVector<f64>> {
        self.levels()
            .map(|l| {
                DVector::from_iterator(
                    l as usize - 1,
                    (1..l as i64).map(|x| {
                        let z = pt(x, l as i64 - x);
                        LatticePointEZ::STEPS.iter().filter(|v| is_source(z + **v)).count() as f64 / 3.0
                    }),
                )
            })
            .collect()
    }
}

/// Block elimination of `(I − P)h = b` over the interior levels. Row block
/// `ℓ` reads `A_ℓ h_ℓ − (1/3)U h_{ℓ+1} − (1/3)D h_{ℓ−1} = b_ℓ` where `U`
/// shifts the index up by one and `D` keeps it.
pub struct QdSolver {
    domain: QdDomain,
    /// Inverses of the Schur complements `S_ℓ`.
    inv: Vec<DMatrix<f64>>,
}

impl QdSolver {
    pub fn new(domain: QdDomain) -> Result<Self, DirichletError> {
        let mut inv: Vec<DMatrix<f64>> = Vec::new();
        for l in domain.levels() {
            let n = l as usize - 1;
            let mut s = DMatrix::<f64>::identity(n, n);
            for i in 1..n {
                s[(i, i - 1)] = -1.0 / 3.0;
            }
            if let Some(prev) = inv.last() {
                // S_ℓ[i][j] −= (1/9) S_{ℓ−1}^{-1}[i][j−1]
                let m = prev.nrows();
                for i in 0..m {
                    for j in 1..=m {
                        s[(i, j)] -= prev[(i, j - 1)] / 9.0;
                    }
                }
            }
            inv.push(s.try_inverse().ok_or(DirichletError::Singular(l))?);
        }
        Ok(QdSolver { domain, inv })
    }

    pub fn domain(&self) -> &QdDomain {
        &self.domain
    }

    /// Solves `(I − P)h = b`.
    fn solve(&self, mut b: Vec<DVector<f64>>) -> Vec<DVector<f64>> {
        let k = self.inv.len();
        let mut u: Vec<DVector<f64>> = Vec::with_capacity(k);
        for l in 0..k {
            if l > 0 {
                let prev = &u[l - 1];
                for i in 0..prev.len() {
                    b[l][i] += prev[i] / 3.0;
                }
            }
            u.push(&self.inv[l] * &b[l]);
        }
        for l in (0..k - 1).rev() {
            let up = &u[l + 1];
            let shifted = DVector::from_iterator(u[l].len(), (0..u[l].len()).map(|i| up[i + 1] / 3.0));
            let corr = &self.inv[l] * shifted;
            u[l] += corr;
        }
        u
    }

    /// Solves `(I − P)ᵀ w = r`.
    fn solve_transposed(&self, mut r: Vec<DVector<f64>>) -> Vec<DVector<f64>> {
        let k = self.inv.len();
        let mut u: Vec<DVector<f64>> = Vec::with_capacity(k);
        for l in 0..k {
            if l > 0 {
                let prev = &u[l - 1];
                for j in 1..=prev.len() {
                    r[l][j] += prev[j - 1] / 3.0;
                }
            }
            u.push(self.inv[l].tr_mul(&r[l]));
        }
        for l in (0..k - 1).rev() {
            let n = u[l].len();
            let down = DVector::from_iterator(n, (0..n).map(|i| u[l + 1][i] / 3.0));
            let corr = self.inv[l].tr_mul(&down);
            u[l] += corr;
        }
        u
    }

    /// `h_a(·; d)` on the whole truncated domain.
    pub fn hitting(&self, a: LatticePointEZ) -> Result<HittingTable, DirichletError> {
        if self.domain.site(a) != Site::Boundary {
            return Err(DirichletError::NotBoundary(a, self.domain.d));
        }
        let values = self.solve(self.domain.rhs_for(|p| p == a));
        Ok(HittingTable { domain: self.domain.clone(), target: Some(a), values, residual: None })
    }

    /// Probability of reaching the cap before the true boundary.
    pub fn cap_escape(&self) -> HittingTable {
        let dom = &self.domain;
        let values = self.solve(dom.rhs_for(|p| dom.site(p) == Site::Cap));
        HittingTable { domain: dom.clone(), target: None, values, residual: None }
    }

    /// Exit distribution from one interior start over all boundary points,
    /// by a single transposed solve.
    pub fn exit_distribution(&self, start: LatticePointEZ) -> Result<ExitDistribution, DirichletError> {
        let dom = &self.domain;
        let (ls, is) = dom.slot(start).ok_or(DirichletError::NotInterior(start, dom.d))?;
        let mut r: Vec<DVector<f64>> = dom.levels().map(|l| DVector::zeros(l as usize - 1)).collect();
        r[ls][is] = 1.0;
        let green = self.solve_transposed(r);
        let mut mass: BTreeMap<LatticePointEZ, f64> = BTreeMap::new();
        let mut cap = 0.0;
        for (l, row) in green.iter().enumerate() {
            for (i, &w) in row.iter().enumerate() {
                let z = dom.point(l, i);
                for v in LatticePointEZ::STEPS {
                    match dom.site(z + v) {
                        Site::Boundary => *mass.entry(z + v).or_insert(0.0) += w / 3.0,
                        Site::Cap => cap += w / 3.0,
                        _ => {}
                    }
                }
            }
        }
        Ok(ExitDistribution { start, mass, cap })
    }
}

/// `h_a(·; d)` tabulated on the interior of the truncated domain.
#[derive(Clone, Debug)]
pub struct HittingTable {
    pub domain: QdDomain,
    /// `None` for the cap-escape table.
    pub target: Option<LatticePointEZ>,
    values: Vec<DVector<f64>>,
    /// Cap-escape probability at the start points of interest.
    pub residual: Option<f64>,
}

impl HittingTable {
    /// Value at any lattice point: the solution inside, the boundary data on
    /// `∂Q_d`, zero on the cap and outside.
    pub fn get(&self, p: LatticePointEZ) -> f64 {
        match self.domain.site(p) {
            Site::Interior => {
                let (l, i) = self.domain.slot(p).unwrap();
                self.values[l][i]
            }
            Site::Boundary => match self.target {
                Some(a) if a == p => 1.0,
                _ => 0.0,
            },
            Site::Cap => {
                if self.target.is_none() {
                    1.0
                } else {
                    0.0
                }
            }
            Site::Outside => 0.0,
        }
    }

    /// Largest `|Δh|` over the interior.
    pub fn max_laplacian(&self) -> f64 {
        let mut worst = 0.0f64;
        for l in self.domain.levels() {
            for x in 1..l as i64 {
                let z = pt(x, l as i64 - x);
                let lap = LatticePointEZ::STEPS.iter().map(|v| self.get(z + *v)).sum::<f64>() / 3.0 - self.get(z);
                worst = worst.max(lap.abs());
            }
        }
        worst
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.values.iter().flat_map(|r| r.iter()).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExitDistribution {
    pub start: LatticePointEZ,
    pub mass: BTreeMap<LatticePointEZ, f64>,
    /// Mass absorbed at the artificial cap.
    pub cap: f64,
}

impl ExitDistribution {
    pub fn at(&self, a: LatticePointEZ) -> f64 {
        self.mass.get(&a).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.mass.values().sum::<f64>() + self.cap
    }
}

pub const CAP_TOLERANCE: f64 = 1e-4;

/// `h_a(·; d)` with the cap-escape residual taken over `starts`.
pub fn solve_hitting(d: u32, cap: u32, a: LatticePointEZ, starts: &[LatticePointEZ]) -> Result<HittingTable, DirichletError> {
    let solver = QdSolver::new(QdDomain::new(d, cap)?)?;
    let mut table = solver.hitting(a)?;
    let escape = solver.cap_escape();
    table.residual = Some(starts.iter().map(|s| escape.get(*s)).fold(0.0, f64::max));
    Ok(table)
}

impl HittingTable {
    /// Fails when the recorded residual exceeds `tolerance`, suggesting a cap
    /// from the cubic decay of the escape probability in a 60° wedge.
    pub fn check_residual(&self, tolerance: f64) -> Result<&Self, DirichletError> {
        match self.residual {
            Some(r) if r > tolerance => {
                let grow = (r / tolerance).cbrt();
                Err(DirichletError::CapTooSmall {
                    cap: self.domain.cap,
                    residual: r,
                    tolerance,
                    suggested: (self.domain.cap as f64 * grow).ceil() as u32 + 1,
                })
            }
            _ => Ok(self),
        }
    }
}

/// Gauss–Seidel sweeps on the same system, the slow independent route.
pub fn sweep_hitting(domain: &QdDomain, a: LatticePointEZ, tol: f64, budget: usize) -> Result<HittingTable, DirichletError> {
    if domain.site(a) != Site::Boundary {
        return Err(DirichletError::NotBoundary(a, domain.d));
    }
    let mut values: Vec<DVector<f64>> = domain.levels().map(|l| DVector::zeros(l as usize - 1)).collect();
    let b = domain.rhs_for(|p| p == a);
    for _ in 0..budget {
        let mut change = 0.0f64;
        for l in 0..values.len() {
            let n = values[l].len();
            for i in 0..n {
                let mut s = b[l][i];
                // (x+1, y): level up, index i+1
                if l + 1 < values.len() {
                    s += values[l + 1][i + 1] / 3.0;
                }
                // (x−1, y+1): same level, index i−1
                if i > 0 {
                    s += values[l][i - 1] / 3.0;
                }
                // (x, y−1): level down, index i
                if l > 0 && i < values[l - 1].len() {
                    s += values[l - 1][i] / 3.0;
                }
                change = change.max((s - values[l][i]).abs());
                values[l][i] = s;
            }
        }
        if change < tol {
            return Ok(HittingTable { domain: domain.clone(), target: Some(a), values, residual: None });
        }
    }
    Err(DirichletError::NoConvergence(budget))
}
