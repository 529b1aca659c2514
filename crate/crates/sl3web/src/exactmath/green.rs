use super::lattice::{pt, LatticePointEZ};
use super::value::{rat, ExactValue, IntegralValue, Rational};
use super::ExactError;
use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

/// `I_m = ∫_{1/4}^{1} t^m / √(4t−1) dt`.
pub fn integral_i(m: i64) -> IntegralValue {
    static CACHE: OnceLock<RwLock<HashMap<i64, IntegralValue>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().unwrap().get(&m) {
        return v.clone();
    }
    let v = if m >= 0 {
        // √3/2^{2m+1} Σ_k C(m,k) 3^k/(2k+1)
        let mut s = Rational::zero();
        let mut three = BigInt::one();
        for k in 0..=m {
            s += Rational::new(binomial(BigInt::from(m), BigInt::from(k)) * &three, BigInt::from(2 * k + 1));
            three *= 3;
        }
        let c = s / Rational::from_integer(BigInt::from(2).pow(2 * m as u32 + 1));
        IntegralValue::new(c, Rational::zero())
    } else if m == -1 {
        IntegralValue::new(Rational::zero(), rat(2, 3))
    } else {
        let q = -m;
        let next = integral_i(m + 1);
        let k = rat(2 * (2 * q - 3), q - 1);
        IntegralValue::new(rat(1, q - 1), Rational::zero()) + next.scale(&k)
    };
    cache.write().unwrap().insert(m, v.clone());
    v
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Renormalized lattice Green's function `𝒢∞(p) = G∞(p) − G∞(0)`.
pub fn green_infinity(p: LatticePointEZ) -> ExactValue {
    static CACHE: OnceLock<RwLock<HashMap<LatticePointEZ, ExactValue>>> = OnceLock::new();
    let w = p.to_wedge();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().unwrap().get(&w) {
        return v.clone();
    }
    let v = green_wedge_point(w.x, w.y);
    cache.write().unwrap().insert(w, v.clone());
    v
}

/// The integral representation for `x, y ≥ 0`, reduced to `Σ q_m I_m`.
///
/// With `s² = 4t−1`, `(−1+is)^j = P_j(t) + i·s·Q_j(t)` and
/// `Re u^j = P_j/(2t)^j`. Everything is scaled by `2^x` to stay integral.
fn green_wedge_point(x: i64, y: i64) -> ExactValue {
    let xu = x as usize;
    let mut coef: HashMap<i64, BigInt> = HashMap::new();
    let mut p = vec![BigInt::from(-1)];
    let mut q = vec![BigInt::one()];
    let mut one_minus_t_pow = vec![BigInt::one()];
    for j in 1..=xu {
        let scale = binomial(BigInt::from(x), BigInt::from(j)) * BigInt::from(2).pow((xu - j) as u32);
        let term = poly_mul(&one_minus_t_pow, &p);
        let shift = y - j as i64;
        for (d, c) in term.into_iter().enumerate() {
            if !c.is_zero() {
                *coef.entry(d as i64 + shift).or_insert_with(BigInt::zero) += c * &scale;
            }
        }
        // P' = −P − (4t−1)Q, Q' = P − Q
        let four_t_minus_one = [BigInt::from(-1), BigInt::from(4)];
        let pq = poly_mul(&four_t_minus_one, &q);
        let n = pq.len().max(p.len());
        let mut p2 = vec![BigInt::zero(); n];
        for (i, c) in p.iter().enumerate() {
            p2[i] -= c;
        }
        for (i, c) in pq.iter().enumerate() {
            p2[i] -= c;
        }
        let n = p.len().max(q.len());
        let mut q2 = vec![BigInt::zero(); n];
        for (i, c) in p.iter().enumerate() {
            q2[i] += c;
        }
        for (i, c) in q.iter().enumerate() {
            q2[i] -= c;
        }
        p = p2;
        q = q2;
        one_minus_t_pow = poly_mul(&one_minus_t_pow, &[BigInt::one(), BigInt::from(-1)]);
    }
    let two_x = BigInt::from(2).pow(xu as u32);
    for l in 0..y {
        *coef.entry(l).or_insert_with(BigInt::zero) -= &two_x;
    }
    let mut total = IntegralValue::default();
    for (m, c) in coef {
        if !c.is_zero() {
            total = total + integral_i(m).scale(&Rational::new(c, two_x.clone()));
        }
    }
    total.times_three_over_pi()
}

/// Dirichlet Green's function of the 60° wedge, `Σ_γ sgn(γ)·𝒢∞(z − γ z0)`.
pub fn green_wedge(z: LatticePointEZ, z0: LatticePointEZ) -> Result<ExactValue, ExactError> {
    for p in [z, z0] {
        if !p.in_wedge() {
            return Err(ExactError::OutsideWedge(p));
        }
    }
    Ok(green_wedge_unchecked(z, z0))
}

pub(crate) fn green_wedge_unchecked(z: LatticePointEZ, z0: LatticePointEZ) -> ExactValue {
    let mut acc = ExactValue::zero();
    for (img, sgn) in z0.d3_orbit() {
        let g = green_infinity(z - img);
        acc = if sgn > 0 { acc + g } else { acc - g };
    }
    acc
}

/// The interior point `a − v_j` adjacent to a boundary point `a`.
pub fn boundary_source(a: LatticePointEZ) -> Result<LatticePointEZ, ExactError> {
    if a == LatticePointEZ::ORIGIN {
        return Err(ExactError::Corner);
    }
    let z0 = if a.y == 0 && a.x > 0 {
        a - LatticePointEZ::V3
    } else if a.x == 0 && a.y > 0 {
        a - LatticePointEZ::V2
    } else {
        return Err(ExactError::NotBoundary(a));
    };
    if !z0.in_open_wedge() {
        return Err(ExactError::Unreachable(a));
    }
    Ok(z0)
}

/// Probability that the walk from the interior point `z` leaves the wedge
/// at the boundary point `a`.
pub fn h_point(a: LatticePointEZ, z: LatticePointEZ) -> Result<ExactValue, ExactError> {
    let z0 = boundary_source(a)?;
    if !z.in_open_wedge() {
        return Err(ExactError::NotInterior(z));
    }
    Ok(green_wedge_unchecked(z, z0).scale(&rat(1, 3)))
}

/// `h_a` extended to the boundary by `δ_a`.
pub fn h_extended(a: LatticePointEZ, z: LatticePointEZ) -> Result<ExactValue, ExactError> {
    boundary_source(a)?;
    if z.on_wedge_boundary() {
        let v = if z == a { 1 } else { 0 };
        return Ok(ExactValue::from_ints((v, 1), (0, 1)));
    }
    h_point(a, z)
}

/// `(1/3)Σ_j f(z+v_j) − f(z)`.
pub fn laplacian(f: impl Fn(LatticePointEZ) -> ExactValue, z: LatticePointEZ) -> ExactValue {
    let mut acc = ExactValue::zero();
    for v in LatticePointEZ::STEPS {
        acc = acc + f(z + v);
    }
    acc.scale(&rat(1, 3)) - f(z)
}

/// Table of `𝒢∞` on the wedge `x + y ≤ radius`.
pub fn green_table(radius: i64) -> Vec<(LatticePointEZ, ExactValue)> {
    let mut out = Vec::new();
    for s in 0..=radius {
        for y in 0..=s {
            let p = pt(s - y, y);
            out.push((p, green_infinity(p)));
        }
    }
    out
}
