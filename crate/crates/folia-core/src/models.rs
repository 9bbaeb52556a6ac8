//! Closed-form calculators for Riccati local-model bookkeeping: orbifold
//! base characteristic, direct-image degree, and the Kodaira trichotomy.

use alloc::vec::Vec;
use core::fmt;

use crate::algebra::rat::Rat;

/// Fiber bookkeeping of a Riccati foliation over an orbifold base.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RiccatiModel {
    /// Topological Euler characteristic of the base curve.
    pub chi_top: i64,
    /// Orders k_j >= 2 of the fibers carrying two quotient singularities of
    /// the same order.
    pub b_orders: Vec<u64>,
    /// Count of fibers invariant with a single saddle-node pair.
    pub c_count: u64,
    /// Multiplicities m_j >= 1 of the fibers with saddle-node multiplicity
    /// data.
    pub d_multiplicities: Vec<u64>,
    /// Multiplicities l_j >= 1 of the half-integral fibers.
    pub e_multiplicities: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RiccatiError {
    /// Some k_j is below 2.
    OrderBelowTwo(u64),
    /// Some multiplicity is zero.
    ZeroMultiplicity,
}

impl fmt::Display for RiccatiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RiccatiError::OrderBelowTwo(k) => write!(f, "fiber order {k} is below 2"),
            RiccatiError::ZeroMultiplicity => write!(f, "fiber multiplicity must be positive"),
        }
    }
}

impl RiccatiModel {
    pub fn validate(&self) -> Result<(), RiccatiError> {
        if let Some(&k) = self.b_orders.iter().find(|&&k| k < 2) {
            return Err(RiccatiError::OrderBelowTwo(k));
        }
        if self
            .d_multiplicities
            .iter()
            .chain(self.e_multiplicities.iter())
            .any(|&m| m == 0)
        {
            return Err(RiccatiError::ZeroMultiplicity);
        }
        Ok(())
    }
}

/// chi_orb(B) = chi_top(B) - sum (k_j - 1)/k_j - sum 1/2.
pub fn base_chi_orb(model: &RiccatiModel) -> Rat {
    let mut chi = Rat::from_int(model.chi_top);
    for &k in &model.b_orders {
        chi -= Rat::new(k as i64 - 1, k as i64);
    }
    for _ in &model.e_multiplicities {
        chi -= Rat::new(1, 2);
    }
    chi
}

/// deg(pushforward of K_F) = -chi_orb(B) + #(c) + sum m_j + sum l_j / 2.
pub fn pushforward_degree(model: &RiccatiModel) -> Rat {
    let mut deg = -&base_chi_orb(model);
    deg += Rat::from_int(model.c_count as i64);
    for &m in &model.d_multiplicities {
        deg += Rat::from_int(m as i64);
    }
    for &l in &model.e_multiplicities {
        deg += Rat::new(l as i64, 2);
    }
    deg
}

/// Kodaira dimension from the direct-image degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kodaira {
    One,
    Zero,
    MinusInfinity,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::One => write!(f, "1"),
            Kodaira::Zero => write!(f, "0"),
            Kodaira::MinusInfinity => write!(f, "-infinity"),
        }
    }
}

pub fn kodaira_from_degree(deg: &Rat) -> Kodaira {
    if deg.is_positive() {
        Kodaira::One
    } else if deg.is_zero() {
        Kodaira::Zero
    } else {
        Kodaira::MinusInfinity
    }
}

/// Generic contribution-list evaluator for fibered models whose per-fiber
/// degree contributions are supplied by the caller (no closed formula is
/// assumed): `-chi_orb + sum of contributions`.
///
/// Used for turbulent-style bookkeeping where the per-fiber tangency
/// contributions are input data, not derived.
pub fn degree_from_contributions(base_chi_orb: &Rat, contributions: &[Rat]) -> Rat {
    let mut deg = -base_chi_orb;
    for c in contributions {
        deg += c.clone();
    }
    deg
}
