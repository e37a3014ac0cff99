//! The rank-two lattice with its standard antisymmetric pairing.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rat::gcd_i64;

/// An element of `Z^2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeVec {
    pub a: i64,
    pub b: i64,
}

impl LatticeVec {
    pub const ZERO: LatticeVec = LatticeVec { a: 0, b: 0 };
    pub const X: LatticeVec = LatticeVec { a: 1, b: 0 };
    pub const Y: LatticeVec = LatticeVec { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    /// Standard antisymmetric form `<(a,b),(a',b')> = a b' - a' b`.
    pub fn pairing(&self, other: &Self) -> i64 {
        self.a * other.b - other.a * self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Both components nonnegative and not both zero.
    pub fn is_positive(&self) -> bool {
        self.a >= 0 && self.b >= 0 && !self.is_zero()
    }

    pub fn is_primitive(&self) -> bool {
        gcd_i64(self.a, self.b) == 1
    }

    /// Primitive direction and the positive multiplier.
    pub fn primitive_part(&self) -> (LatticeVec, i64) {
        assert!(!self.is_zero());
        let g = gcd_i64(self.a, self.b);
        (LatticeVec::new(self.a / g, self.b / g), g)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.a + other.a, self.b + other.b)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.a, -self.b)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.a * k, self.b * k)
    }
}

impl fmt::Debug for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Compare two positive directions by slope `b/a`, so that sorting ascending
/// by this key lists directions clockwise: `(0,1)` first, `(1,0)` last.
///
/// Distinct primitive positive vectors never tie.
pub fn cmp_slope_descending(x: &LatticeVec, y: &LatticeVec) -> Ordering {
    debug_assert!(x.is_positive() && y.is_positive());
    // slope(x) > slope(y)  <=>  b_x a_y > b_y a_x  <=>  pairing(y, x) > 0
    (y.b * x.a).cmp(&(x.b * y.a))
}

/// Key wrapper ordering positive directions by decreasing slope.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SlopeDescending(pub LatticeVec);

impl Ord for SlopeDescending {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_slope_descending(&self.0, &other.0).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for SlopeDescending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_and_primitivity() {
        let x = LatticeVec::X;
        let y = LatticeVec::Y;
        assert_eq!(x.pairing(&y), 1);
        assert_eq!(y.pairing(&x), -1);
        assert!(LatticeVec::new(2, 3).is_primitive());
        assert!(!LatticeVec::new(2, 4).is_primitive());
        assert_eq!(
            LatticeVec::new(4, 6).primitive_part(),
            (LatticeVec::new(2, 3), 2)
        );
    }

    #[test]
    fn clockwise_ordering() {
        let mut dirs = vec![
            LatticeVec::new(1, 0),
            LatticeVec::new(1, 2),
            LatticeVec::new(0, 1),
            LatticeVec::new(1, 1),
            LatticeVec::new(2, 1),
        ];
        dirs.sort_by(cmp_slope_descending);
        assert_eq!(
            dirs,
            vec![
                LatticeVec::new(0, 1),
                LatticeVec::new(1, 2),
                LatticeVec::new(1, 1),
                LatticeVec::new(2, 1),
                LatticeVec::new(1, 0),
            ]
        );
    }
}
