//! Exact rational plane geometry for scattering diagrams.
//!
//! Supports are lines or rays with rational base points and integer
//! directions; every incidence test is exact, so genericity of a perturbation
//! is decidable rather than assumed.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::lattice::LatticeVec;
use crate::rat::{rat_int, Rat};

/// A point of the rational plane.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QPoint {
    pub x: Rat,
    pub y: Rat,
}

impl QPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(rat_int(x), rat_int(y))
    }

    pub fn origin() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn add_dir(&self, d: &LatticeVec, t: &Rat) -> Self {
        Self::new(
            self.x.clone() + rat_int(d.a) * t,
            self.y.clone() + rat_int(d.b) * t,
        )
    }
}

impl fmt::Debug for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SupportKind {
    Line,
    Ray,
}

/// A line `base + R dir` or ray `base + R_(>=0) dir`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Support {
    pub base: QPoint,
    pub dir: LatticeVec,
    pub kind: SupportKind,
}

impl Support {
    pub fn line(base: QPoint, dir: LatticeVec) -> Self {
        Self {
            base,
            dir,
            kind: SupportKind::Line,
        }
    }

    pub fn ray(base: QPoint, dir: LatticeVec) -> Self {
        Self {
            base,
            dir,
            kind: SupportKind::Ray,
        }
    }

    /// Parameter of `p` along the support, if `p` lies on it.
    pub fn param_of(&self, p: &QPoint) -> Option<Rat> {
        let dx = p.x.clone() - self.base.x.clone();
        let dy = p.y.clone() - self.base.y.clone();
        if dx.clone() * rat_int(self.dir.b) != dy.clone() * rat_int(self.dir.a) {
            return None;
        }
        let t = if self.dir.a != 0 {
            dx / rat_int(self.dir.a)
        } else {
            dy / rat_int(self.dir.b)
        };
        match self.kind {
            SupportKind::Line => Some(t),
            SupportKind::Ray => (!t.is_negative()).then_some(t),
        }
    }

    pub fn contains(&self, p: &QPoint) -> bool {
        self.param_of(p).is_some()
    }

    /// Transversal intersection point of two supports, when it exists and
    /// lies on both (rays only extend forward). Parallel supports give none.
    pub fn intersect(&self, other: &Support) -> Option<QPoint> {
        let det = self.dir.pairing(&other.dir);
        if det == 0 {
            return None;
        }
        let bx = other.base.x.clone() - self.base.x.clone();
        let by = other.base.y.clone() - self.base.y.clone();
        let s = (bx.clone() * rat_int(other.dir.b) - by.clone() * rat_int(other.dir.a))
            / rat_int(det);
        let t = (bx * rat_int(self.dir.b) - by * rat_int(self.dir.a)) / rat_int(det);
        if self.kind == SupportKind::Ray && s.is_negative() {
            return None;
        }
        if other.kind == SupportKind::Ray && t.is_negative() {
            return None;
        }
        Some(self.base.add_dir(&self.dir, &s))
    }
}

/// Intersection of the open segment `p -> q` with a support; returns the
/// segment parameter in `(0, 1)` and the point. Parallel contact gives none.
pub fn segment_crossing(p: &QPoint, q: &QPoint, support: &Support) -> Option<(Rat, QPoint)> {
    let sx = q.x.clone() - p.x.clone();
    let sy = q.y.clone() - p.y.clone();
    // det = seg x dir
    let det = sx.clone() * rat_int(support.dir.b) - sy.clone() * rat_int(support.dir.a);
    if det.is_zero() {
        return None;
    }
    let bx = support.base.x.clone() - p.x.clone();
    let by = support.base.y.clone() - p.y.clone();
    let u = (bx.clone() * rat_int(support.dir.b) - by.clone() * rat_int(support.dir.a))
        / det.clone();
    let t = (bx * sy.clone() - by * sx.clone()) / det;
    let zero = Rat::zero();
    let one = rat_int(1);
    if u <= zero || u >= one {
        return None;
    }
    if support.kind == SupportKind::Ray && t.is_negative() {
        return None;
    }
    let point = QPoint::new(p.x.clone() + sx * u.clone(), p.y.clone() + sy * u.clone());
    Some((u, point))
}

/// Clockwise angular comparison of nonzero vectors as seen from a point:
/// sorts by angle swept clockwise starting just after `start`; vectors
/// parallel to `start` sort last, antiparallel in the middle.
pub fn clockwise_from(start: &LatticeVec, u: &LatticeVec, w: &LatticeVec) -> std::cmp::Ordering {
    clockwise_class(start, u)
        .cmp(&clockwise_class(start, w))
        .then_with(|| u.pairing(w).cmp(&0))
}

fn clockwise_class(start: &LatticeVec, u: &LatticeVec) -> u8 {
    let cross = start.pairing(u);
    if cross < 0 {
        0 // first half-turn clockwise of start
    } else if cross > 0 {
        2 // second half-turn
    } else if start.a * u.a + start.b * u.b < 0 {
        1 // antiparallel: exactly half a turn
    } else {
        3 // parallel to start: a full turn away
    }
}
