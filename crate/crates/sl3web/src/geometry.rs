//! Exact predicates for semicircles standing on the real axis.
//!
//! An arc with endpoints `a < b` is the upper half of the circle centered at
//! `(a+b)/2` through `a` and `b`. Two such circles meet above the axis iff
//! their endpoints interleave, and the intersection abscissa is rational:
//! subtracting the circle equations `(x-a)(x-b) + y^2 = 0` leaves a linear
//! equation in `x`.

use num_rational::Rational64;

/// `a < c < b < d` or `c < a < d < b`, with strict inequalities so that arcs
/// sharing an endpoint do not cross.
pub fn interleave(a: i64, b: i64, c: i64, d: i64) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Abscissa `(ab - cd) / ((a+b) - (c+d))` where the semicircles over `[a,b]`
/// and `[c,d]` meet. Only meaningful when the arcs interleave, which also
/// guarantees the denominator is nonzero.
pub fn crossing_abscissa(a: i64, b: i64, c: i64, d: i64) -> Rational64 {
    let num = a * b - c * d;
    let den = (a + b) - (c + d);
    debug_assert!(den != 0, "interleaving arcs have distinct centers");
    Rational64::new(num, den)
}

/// True when the arc over `[a,b]` is descending at abscissa `x`, i.e. `x` lies
/// right of its center.
pub fn descending_at(a: i64, b: i64, x: Rational64) -> bool {
    x * 2 > Rational64::from_integer(a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn crossing_positions() {
        assert!(interleave(1, 7, 4, 9));
        assert!(interleave(2, 5, 4, 9));
        assert!(!interleave(3, 4, 4, 9));
        assert!(!interleave(1, 7, 5, 6));
        assert_eq!(crossing_abscissa(2, 5, 3, 13), Rational64::new(29, 9));
    }

    proptest! {
        #[test]
        fn abscissa_lies_on_both_circles(a in 0i64..500, w1 in 1i64..500, o in 1i64..500, w2 in 1i64..500) {
            let b = a + w1;
            let c = a + o;
            let d = c + w2;
            prop_assume!(interleave(a, b, c, d));
            let x = crossing_abscissa(a, b, c, d);
            // (x-a)(x-b) is the same on both circles
            let p1 = (x - a) * (x - b);
            let p2 = (x - c) * (x - d);
            prop_assert_eq!(p1, p2);
            prop_assert!(p1 < Rational64::from_integer(0));
            prop_assert!(x > Rational64::from_integer(c.max(a)));
            prop_assert!(x < Rational64::from_integer(b.min(d)));
            prop_assert_eq!(x, crossing_abscissa(c, d, a, b));
        }
    }
}
