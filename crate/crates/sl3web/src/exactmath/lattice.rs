use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

/// A triangular-lattice point `x·e₁ + y·e₂` with `e₁ = (1,0)` and
/// `e₂ = (1/2, √3/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePointEZ {
    pub x: i64,
    pub y: i64,
}

pub const fn pt(x: i64, y: i64) -> LatticePointEZ {
    LatticePointEZ { x, y }
}

impl LatticePointEZ {
    pub const ORIGIN: Self = pt(0, 0);
    pub const E1: Self = pt(1, 0);
    pub const E2: Self = pt(0, 1);
    /// The three walk steps `1`, `e^{2πi/3}`, `e^{-2πi/3}`.
    pub const V1: Self = pt(1, 0);
    pub const V2: Self = pt(-1, 1);
    pub const V3: Self = pt(0, -1);
    pub const STEPS: [Self; 3] = [Self::V1, Self::V2, Self::V3];

    /// Rotation by 120°.
    pub fn rotate(self) -> Self {
        pt(-self.x - self.y, self.x)
    }

    /// Reflection in the `e₁` axis.
    pub fn reflect(self) -> Self {
        pt(self.x + self.y, -self.y)
    }

    /// The six images `γ(p)` with `sgn(γ)`: three rotations (+1) then three
    /// reflections (−1).
    pub fn d3_orbit(self) -> [(Self, i32); 6] {
        let r1 = self.rotate();
        let r2 = r1.rotate();
        let f = self.reflect();
        let f1 = f.rotate();
        let f2 = f1.rotate();
        [(self, 1), (r1, 1), (r2, 1), (f, -1), (f1, -1), (f2, -1)]
    }

    /// The image of `self` in the closed wedge `x, y ≥ 0`.
    pub fn to_wedge(self) -> Self {
        self.d3_orbit().into_iter().map(|(p, _)| p).find(|p| p.in_wedge()).expect("the six wedges cover the plane")
    }

    pub fn in_wedge(self) -> bool {
        self.x >= 0 && self.y >= 0
    }

    pub fn in_open_wedge(self) -> bool {
        self.x > 0 && self.y > 0
    }

    pub fn on_wedge_boundary(self) -> bool {
        self.in_wedge() && !self.in_open_wedge()
    }
}

impl Add for LatticePointEZ {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        pt(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticePointEZ {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        pt(self.x - o.x, self.y - o.y)
    }
}

impl fmt::Display for LatticePointEZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl FromStr for LatticePointEZ {
    type Err = String;

    /// Accepts `(x,y)`, `x,y` or `x y`.
    fn from_str(s: &str) -> Result<Self, String> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty()).collect();
        match parts.as_slice() {
            [x, y] => Ok(pt(
                x.parse().map_err(|_| format!("bad coordinate {x:?}"))?,
                y.parse().map_err(|_| format!("bad coordinate {y:?}"))?,
            )),
            _ => Err(format!("expected a point like (1,2), got {s:?}")),
        }
    }
}
