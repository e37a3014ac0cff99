//! Truncated multivariate scalar monomials: central deformation variables
//! with per-variable truncation orders, plus square-zero nilpotent variables.
//!
//! A [`Multidegree`] is the exponent data of one scalar monomial
//! `t_1^(d_1) ... t_n^(d_n) * u_I`; the nilpotent part is a bitmask because
//! the `u` variables square to zero, so a monomial either contains a given
//! `u_(i,j)` once or not at all. Truncation is enforced at multiplication
//! time: products exceeding any central order (or the optional total-degree
//! cap, or reusing a nilpotent variable) vanish.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub const MAX_CENTRAL_VARS: usize = 8;
pub const MAX_NILPOTENT_VARS: usize = 64;

/// A central deformation variable with its truncation order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralVar {
    pub name: String,
    pub order: u8,
}

/// Shared description of the scalar coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesContext {
    central: Vec<CentralVar>,
    /// Nilpotent variables `u_(line, level)`, indexed by bit position.
    nilpotent: Vec<(u32, u32)>,
    /// Optional cap on the total central degree.
    total_order: Option<u16>,
}

impl SeriesContext {
    pub fn new(
        central: Vec<CentralVar>,
        nilpotent: Vec<(u32, u32)>,
        total_order: Option<u16>,
    ) -> Arc<Self> {
        assert!(central.len() <= MAX_CENTRAL_VARS, "too many central variables");
        assert!(
            nilpotent.len() <= MAX_NILPOTENT_VARS,
            "too many nilpotent variables"
        );
        assert!(central.iter().all(|c| c.order >= 1), "order must be >= 1");
        let mut tags = nilpotent.clone();
        tags.sort_unstable();
        tags.dedup();
        assert_eq!(tags.len(), nilpotent.len(), "duplicate nilpotent variables");
        Arc::new(Self {
            central,
            nilpotent,
            total_order,
        })
    }

    /// Context with the named central variables, all truncated at `order`.
    pub fn central_only(names: &[&str], order: u8) -> Arc<Self> {
        Self::new(
            names
                .iter()
                .map(|n| CentralVar {
                    name: (*n).to_string(),
                    order,
                })
                .collect(),
            Vec::new(),
            None,
        )
    }

    /// Context with only nilpotent variables tagged `(line, level)`.
    pub fn nilpotent_only(tags: Vec<(u32, u32)>) -> Arc<Self> {
        Self::new(Vec::new(), tags, None)
    }

    pub fn n_central(&self) -> usize {
        self.central.len()
    }

    pub fn n_nilpotent(&self) -> usize {
        self.nilpotent.len()
    }

    pub fn central_vars(&self) -> &[CentralVar] {
        &self.central
    }

    pub fn nilpotent_tags(&self) -> &[(u32, u32)] {
        &self.nilpotent
    }

    pub fn total_order(&self) -> Option<u16> {
        self.total_order
    }

    pub fn nilpotent_bit(&self, tag: (u32, u32)) -> Option<usize> {
        self.nilpotent.iter().position(|t| *t == tag)
    }

    /// Largest meaningful total central degree.
    pub fn max_total_degree(&self) -> u16 {
        let sum: u16 = self.central.iter().map(|c| c.order as u16).sum();
        match self.total_order {
            Some(cap) => cap.min(sum),
            None => sum,
        }
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

/// Packed exponent vector: one byte per central variable plus the nilpotent
/// bitmask. `Copy` so it can serve as a cheap ordered map key.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multidegree {
    central: u64,
    nilpotent: u64,
}

impl Multidegree {
    pub const UNIT: Multidegree = Multidegree {
        central: 0,
        nilpotent: 0,
    };

    pub fn unit() -> Self {
        Self::UNIT
    }

    pub fn is_unit(&self) -> bool {
        self.central == 0 && self.nilpotent == 0
    }

    /// Positive central degree or nonempty nilpotent part.
    pub fn in_max_ideal(&self) -> bool {
        !self.is_unit()
    }

    pub fn central_exp(&self, var: usize) -> u8 {
        debug_assert!(var < MAX_CENTRAL_VARS);
        ((self.central >> (8 * var)) & 0xff) as u8
    }

    pub fn with_central_exp(mut self, var: usize, exp: u8) -> Self {
        debug_assert!(var < MAX_CENTRAL_VARS);
        self.central &= !(0xffu64 << (8 * var));
        self.central |= (exp as u64) << (8 * var);
        self
    }

    /// `t_var` as a monomial.
    pub fn central_var(var: usize) -> Self {
        Self::UNIT.with_central_exp(var, 1)
    }

    /// `u` monomial from a bitmask.
    pub fn nilpotent_mask(mask: u64) -> Self {
        Multidegree {
            central: 0,
            nilpotent: mask,
        }
    }

    pub fn nilpotent(&self) -> u64 {
        self.nilpotent
    }

    pub fn total_central_degree(&self, ctx: &SeriesContext) -> u16 {
        (0..ctx.n_central()).map(|i| self.central_exp(i) as u16).sum()
    }

    /// Total degree counting each nilpotent variable once.
    pub fn total_degree(&self, ctx: &SeriesContext) -> u16 {
        self.total_central_degree(ctx) + self.nilpotent.count_ones() as u16
    }

    fn within(&self, ctx: &SeriesContext) -> bool {
        for (i, var) in ctx.central.iter().enumerate() {
            if self.central_exp(i) > var.order {
                return false;
            }
        }
        if let Some(cap) = ctx.total_order {
            if self.total_central_degree(ctx) > cap {
                return false;
            }
        }
        true
    }

    /// Truncated product; `None` when the result falls out of the ring
    /// (order overflow or repeated nilpotent variable).
    pub fn mul(&self, other: &Self, ctx: &SeriesContext) -> Option<Self> {
        if self.nilpotent & other.nilpotent != 0 {
            return None;
        }
        let out = Multidegree {
            // per-lane byte addition; orders are <= 255 so lanes cannot carry
            // within the tested ranges, and `within` rejects overflowing lanes
            central: self.checked_central_add(other)?,
            nilpotent: self.nilpotent | other.nilpotent,
        };
        out.within(ctx).then_some(out)
    }

    fn checked_central_add(&self, other: &Self) -> Option<u64> {
        let mut acc = 0u64;
        for i in 0..MAX_CENTRAL_VARS {
            let s = self.central_exp(i) as u16 + other.central_exp(i) as u16;
            if s > 0xff {
                return None;
            }
            acc |= (s as u64) << (8 * i);
        }
        Some(acc)
    }

    /// Truncated power.
    pub fn pow(&self, n: u32, ctx: &SeriesContext) -> Option<Self> {
        let mut acc = Self::UNIT;
        for _ in 0..n {
            acc = acc.mul(self, ctx)?;
        }
        Some(acc)
    }

    pub fn render(&self, ctx: &SeriesContext) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, var) in ctx.central.iter().enumerate() {
            match self.central_exp(i) {
                0 => {}
                1 => parts.push(var.name.clone()),
                e => parts.push(format!("{}^{}", var.name, e)),
            }
        }
        for (bit, tag) in ctx.nilpotent.iter().enumerate() {
            if self.nilpotent & (1 << bit) != 0 {
                parts.push(format!("u_{}_{}", tag.0, tag.1));
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "md({:#x},{:#b})", self.central, self.nilpotent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_at_multiplication() {
        let ctx = SeriesContext::central_only(&["t1", "t2"], 2);
        let t1 = Multidegree::central_var(0);
        let t2 = Multidegree::central_var(1);
        let t1t2 = t1.mul(&t2, &ctx).unwrap();
        assert_eq!(t1t2.central_exp(0), 1);
        assert_eq!(t1t2.central_exp(1), 1);
        let t1sq = t1.mul(&t1, &ctx).unwrap();
        assert!(t1sq.mul(&t1, &ctx).is_none());
        assert_eq!(t1sq.total_central_degree(&ctx), 2);
    }

    #[test]
    fn total_order_cap() {
        let ctx = SeriesContext::new(
            vec![
                CentralVar { name: "s".into(), order: 3 },
                CentralVar { name: "t".into(), order: 3 },
            ],
            Vec::new(),
            Some(3),
        );
        let s = Multidegree::central_var(0);
        let t = Multidegree::central_var(1);
        let st = s.mul(&t, &ctx).unwrap();
        let sst = st.mul(&s, &ctx).unwrap();
        assert!(sst.mul(&t, &ctx).is_none(), "degree 4 exceeds the cap");
    }

    #[test]
    fn nilpotents_square_to_zero() {
        let ctx = SeriesContext::nilpotent_only(vec![(1, 1), (1, 2), (2, 1)]);
        let u11 = Multidegree::nilpotent_mask(0b001);
        let u12 = Multidegree::nilpotent_mask(0b010);
        assert!(u11.mul(&u11, &ctx).is_none());
        let m = u11.mul(&u12, &ctx).unwrap();
        assert_eq!(m.nilpotent(), 0b011);
        assert!(m.in_max_ideal());
        assert_eq!(m.render(&ctx), "u_1_1*u_1_2");
    }
}
