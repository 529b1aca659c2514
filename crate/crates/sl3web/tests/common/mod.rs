#![allow(dead_code)]

use sl3web::exactmath::{pt, ExactValue, LatticePointEZ};

/// The 21 wedge values `x + y ≤ 5` of the renormalized Green's function, as
/// printed: `(x, y, rational part, coefficient of √3/π)`.
pub const WEDGE_VALUES: [(i64, i64, (i64, i64), (i64, i64)); 21] = [
    (0, 0, (0, 1), (0, 1)),
    (0, 1, (0, 1), (-3, 2)),
    (1, 0, (-1, 1), (0, 1)),
    (1, 1, (0, 1), (-9, 4)),
    (2, 0, (-3, 1), (3, 1)),
    (0, 2, (0, 1), (-9, 4)),
    (3, 0, (-9, 1), (27, 2)),
    (2, 1, (1, 1), (-9, 2)),
    (1, 2, (0, 1), (-21, 8)),
    (0, 3, (0, 1), (-27, 10)),
    (4, 0, (-29, 1), (99, 2)),
    (3, 1, (6, 1), (-111, 8)),
    (2, 2, (0, 1), (-117, 40)),
    (1, 3, (0, 1), (-117, 40)),
    (0, 4, (0, 1), (-843, 280)),
    (5, 0, (-99, 1), (705, 4)),
    (4, 1, (27, 1), (-261, 5)),
    (3, 2, (-1, 1), (-27, 20)),
    (2, 3, (0, 1), (-879, 280)),
    (1, 4, (0, 1), (-1773, 560)),
    (0, 5, (0, 1), (-909, 280)),
];

pub fn wedge_values() -> Vec<(LatticePointEZ, ExactValue)> {
    WEDGE_VALUES.iter().map(|&(x, y, a, b)| (pt(x, y), ExactValue::from_ints(a, b))).collect()
}

/// All lattice points with `|x| + |y| ≤ r`.
pub fn diamond(r: i64) -> impl Iterator<Item = LatticePointEZ> {
    (-r..=r).flat_map(move |x| (-r..=r).filter(move |y| x.abs() + y.abs() <= r).map(move |y| pt(x, y)))
}
