use super::green::h_point;
use super::lattice::{pt, LatticePointEZ};
use super::numeric::{g_value, GMode};
use super::value::ExactValue;
use super::ExactError;
use crate::mdiagram::Color;
use serde::{Deserialize, Serialize};

/// One factor of a face-type product.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Factor {
    /// `h_a(z)`, exact.
    H { target: LatticePointEZ, start: LatticePointEZ, value: ExactValue },
    /// `g(z)` or `1 − g(z)`, numeric.
    G { start: LatticePointEZ, complement: bool, value: f64, error: f64 },
}

impl Factor {
    pub fn value(&self) -> f64 {
        match self {
            Factor::H { value, .. } => value.to_f64(),
            Factor::G { value, complement, .. } => {
                if *complement {
                    1.0 - value
                } else {
                    *value
                }
            }
        }
    }

    pub fn h(target: LatticePointEZ, start: LatticePointEZ) -> Result<Factor, ExactError> {
        Ok(Factor::H { target, start, value: h_point(target, start)? })
    }

    pub fn g(start: LatticePointEZ, complement: bool) -> Result<Factor, ExactError> {
        let g = g_value(start, GMode::Series)?;
        Ok(Factor::G { start, complement, value: g.value, error: g.error })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceProbability {
    pub value: f64,
    /// Propagated from the numerical error of `g`.
    pub error: f64,
    pub factors: Vec<Factor>,
}

impl FaceProbability {
    pub fn from_factors(factors: Vec<Factor>) -> Self {
        let value = factors.iter().map(Factor::value).product();
        let error = factors
            .iter()
            .map(|f| match f {
                Factor::G { error, .. } => {
                    let others: f64 = factors.iter().filter(|o| *o != f).map(Factor::value).product();
                    error * others.abs()
                }
                Factor::H { .. } => 0.0,
            })
            .sum();
        FaceProbability { value, error, factors }
    }
}

/// Limiting per-step density of faces of type `(τ, C)`.
///
/// A red start contributes `h_{(0,τ₁+3)}(1,1)`, a blue start
/// `h_{(τ₁+2,0)}(1,1)`. Later entries alternate colors: a blue arc gives
/// `h_{(τᵢ+1,0)}(1,τᵢ₋₁)`, a red arc `h_{(0,τᵢ+2)}(τᵢ₋₁,1)`. The last factor
/// is `g(τ_k,1)` or its complement, by the parity of `k` and the start color.
pub fn face_type_probability(tau: &[u32], color: Color) -> Result<FaceProbability, ExactError> {
    if tau.is_empty() || tau.contains(&0) {
        return Err(ExactError::InvalidType(format!("{tau:?}")));
    }
    let t = |i: usize| tau[i - 1] as i64;
    let k = tau.len();
    let mut factors = Vec::with_capacity(k + 1);
    factors.push(match color {
        Color::Red => Factor::h(pt(0, t(1) + 3), pt(1, 1))?,
        Color::Blue => Factor::h(pt(t(1) + 2, 0), pt(1, 1))?,
    });
    for i in 2..=k {
        // arc i has the start color when i is odd
        let red = (i % 2 == 1) == (color == Color::Red);
        factors.push(if red {
            Factor::h(pt(0, t(i) + 2), pt(t(i - 1), 1))?
        } else {
            Factor::h(pt(t(i) + 1, 0), pt(1, t(i - 1)))?
        });
    }
    let complement = (k % 2 == 1) == (color == Color::Red);
    factors.push(Factor::g(pt(t(k), 1), complement)?);
    Ok(FaceProbability::from_factors(factors))
}
