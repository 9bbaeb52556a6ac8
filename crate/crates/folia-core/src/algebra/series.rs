//! Truncated power series in one variable over the rationals.
//!
//! A series knows the order up to which its coefficients are valid. An exact
//! series came from a polynomial with no truncation loss, so coefficients
//! beyond the stored ones are genuinely zero. Reading past the valid order of
//! an inexact series is an error, never silent garbage.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::bipoly::BiPoly;
use super::rat::Rat;
use super::unipoly::UniPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesError {
    /// The requested quantity is not determined by the stored coefficients;
    /// the caller should re-expand at higher order.
    InsufficientTruncation,
    /// Division by a series that is identically zero.
    DivisionByZero,
    /// The quotient would have a pole (numerator valuation below denominator's)
    /// where a power series was required.
    PoleInQuotient,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::InsufficientTruncation => write!(f, "insufficient truncation order"),
            SeriesError::DivisionByZero => write!(f, "division by the zero series"),
            SeriesError::PoleInQuotient => write!(f, "quotient has a pole"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    /// Coefficients for exponents `0..=order`; `coeffs.len() == order + 1`
    /// unless the series is exact, in which case trailing zeros are dropped.
    coeffs: Vec<Rat>,
    order: usize,
    exact: bool,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: Vec::new(),
            order,
            exact: false,
        }
    }

    /// The zero series, known exactly.
    pub fn zero_exact() -> Self {
        TruncSeries {
            coeffs: Vec::new(),
            order: 0,
            exact: true,
        }
    }

    pub fn constant(c: Rat) -> Self {
        TruncSeries {
            coeffs: vec![c],
            order: 0,
            exact: true,
        }
    }

    /// Exact series from a polynomial.
    pub fn from_unipoly(p: &UniPoly) -> Self {
        TruncSeries {
            coeffs: p.coeffs().to_vec(),
            order: p.coeffs().len().saturating_sub(1),
            exact: true,
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>, order: usize, exact: bool) -> Self {
        let mut s = TruncSeries {
            coeffs,
            order,
            exact,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.coeffs.len() > self.order + 1 && !self.exact {
            self.coeffs.truncate(self.order + 1);
        }
        while self.coeffs.last().is_some_and(Rat::is_zero) {
            self.coeffs.pop();
        }
        if self.exact {
            self.order = self.coeffs.len().saturating_sub(1);
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// `None` means valid to every order (exact series).
    pub fn effective_order(&self) -> Option<usize> {
        if self.exact {
            None
        } else {
            Some(self.order)
        }
    }

    /// Coefficient of `z^k`; an error beyond the valid order.
    pub fn coeff(&self, k: usize) -> Result<Rat, SeriesError> {
        if !self.exact && k > self.order {
            return Err(SeriesError::InsufficientTruncation);
        }
        Ok(self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero))
    }

    fn coeff_raw(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// True when every stored coefficient is zero.
    pub fn is_zero_to_order(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Identically zero, certified (exact and no nonzero coefficients).
    pub fn is_zero_exact(&self) -> bool {
        self.exact && self.coeffs.is_empty()
    }

    /// Valuation: the exponent of the first nonzero coefficient, if one is
    /// visible within the valid order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncated(&self, order: usize) -> TruncSeries {
        if self.exact {
            return self.clone();
        }
        let order = order.min(self.order);
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        TruncSeries::from_coeffs(coeffs, order, false)
    }

    pub fn scale(&self, c: &Rat) -> TruncSeries {
        TruncSeries::from_coeffs(
            self.coeffs.iter().map(|a| a * c).collect(),
            self.order,
            self.exact,
        )
    }

    pub fn derivative(&self) -> TruncSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Rat::from_int(i as i64) * c.clone())
            .collect();
        let order = if self.exact {
            self.order
        } else {
            self.order.saturating_sub(1)
        };
        TruncSeries::from_coeffs(coeffs, order, self.exact)
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: usize) -> TruncSeries {
        if self.coeffs.is_empty() {
            let mut s = self.clone();
            s.order += k;
            return s;
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncSeries::from_coeffs(coeffs, self.order + k, self.exact)
    }

    /// Exact division by `z^k`; requires valuation at least `k`.
    pub fn shift_down(&self, k: usize) -> Result<TruncSeries, SeriesError> {
        if let Some(v) = self.valuation() {
            if v < k {
                return Err(SeriesError::PoleInQuotient);
            }
        } else if !self.exact && self.order + 1 < k {
            return Err(SeriesError::InsufficientTruncation);
        }
        let coeffs = if self.coeffs.len() > k {
            self.coeffs[k..].to_vec()
        } else {
            Vec::new()
        };
        let order = if self.exact {
            self.order.saturating_sub(k)
        } else {
            self.order - k.min(self.order)
        };
        Ok(TruncSeries::from_coeffs(coeffs, order, self.exact))
    }

    pub fn add(&self, rhs: &TruncSeries) -> TruncSeries {
        let (order, exact) = combine_orders(self, rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff_raw(i) + rhs.coeff_raw(i))
            .collect();
        TruncSeries::from_coeffs(coeffs, order, exact)
    }

    pub fn sub(&self, rhs: &TruncSeries) -> TruncSeries {
        self.add(&rhs.scale(&Rat::from_int(-1)))
    }

    pub fn mul(&self, rhs: &TruncSeries) -> TruncSeries {
        let (order, exact) = combine_orders(self, rhs);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return TruncSeries::from_coeffs(Vec::new(), order, exact);
        }
        let cap = if exact {
            self.coeffs.len() + rhs.coeffs.len() - 1
        } else {
            (order + 1).min(self.coeffs.len() + rhs.coeffs.len() - 1)
        };
        let mut coeffs = vec![Rat::zero(); cap];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= cap {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= cap {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        TruncSeries::from_coeffs(coeffs, order, exact)
    }

    /// Inverse of a unit series (nonzero constant term), to the given order.
    pub fn invert_unit(&self, order: usize) -> Result<TruncSeries, SeriesError> {
        let a0 = self.coeff_raw(0);
        if a0.is_zero() {
            return Err(if self.is_zero_exact() {
                SeriesError::DivisionByZero
            } else if self.coeffs.is_empty() {
                SeriesError::InsufficientTruncation
            } else {
                SeriesError::PoleInQuotient
            });
        }
        if !self.exact && self.order < order {
            return Err(SeriesError::InsufficientTruncation);
        }
        let inv0 = a0.recip();
        let mut out = vec![Rat::zero(); order + 1];
        out[0] = inv0.clone();
        for n in 1..=order {
            let mut acc = Rat::zero();
            for k in 1..=n {
                let ak = self.coeff_raw(k);
                if !ak.is_zero() {
                    acc += ak * out[n - k].clone();
                }
            }
            out[n] = -(acc * inv0.clone());
        }
        Ok(TruncSeries::from_coeffs(out, order, false))
    }

    /// Power-series quotient `self / rhs`, requiring `val(self) >= val(rhs)`.
    pub fn div(&self, rhs: &TruncSeries) -> Result<TruncSeries, SeriesError> {
        let v = match rhs.valuation() {
            Some(v) => v,
            None => {
                return Err(if rhs.is_zero_exact() {
                    SeriesError::DivisionByZero
                } else {
                    SeriesError::InsufficientTruncation
                })
            }
        };
        let num = self.shift_down(v)?;
        let den = rhs.shift_down(v)?;
        let (order, _) = combine_orders(&num, &den);
        let inv = den.invert_unit(order)?;
        Ok(num.mul(&inv))
    }
}

fn combine_orders(a: &TruncSeries, b: &TruncSeries) -> (usize, bool) {
    match (a.effective_order(), b.effective_order()) {
        (None, None) => (a.order.max(b.order), true),
        (None, Some(o)) | (Some(o), None) => (o, false),
        (Some(x), Some(y)) => (x.min(y), false),
    }
}

/// Coefficient of the degree −1 term of the Laurent expansion of `num/den`.
pub fn series_residue(num: &TruncSeries, den: &TruncSeries) -> Result<Rat, SeriesError> {
    let v = match den.valuation() {
        Some(v) => v,
        None => {
            return Err(if den.is_zero_exact() {
                SeriesError::DivisionByZero
            } else {
                SeriesError::InsufficientTruncation
            })
        }
    };
    if v == 0 {
        return Ok(Rat::zero());
    }
    let unit = den.shift_down(v)?;
    // The residue is the z^(v-1) coefficient of num / unit.
    let inv = unit.invert_unit(v - 1)?;
    let prod = num.mul(&inv);
    prod.coeff(v - 1)
}

/// Evaluate a bivariate polynomial at a pair of series.
pub fn eval_bipoly(f: &BiPoly, sz: &TruncSeries, sw: &TruncSeries) -> TruncSeries {
    let mut zpows: Vec<TruncSeries> = vec![TruncSeries::constant(Rat::one())];
    let mut wpows: Vec<TruncSeries> = vec![TruncSeries::constant(Rat::one())];
    let mut acc: Option<TruncSeries> = None;
    for (&(i, j), c) in f.terms() {
        while zpows.len() <= i as usize {
            let next = zpows.last().unwrap().mul(sz);
            zpows.push(next);
        }
        while wpows.len() <= j as usize {
            let next = wpows.last().unwrap().mul(sw);
            wpows.push(next);
        }
        let t = zpows[i as usize].mul(&wpows[j as usize]).scale(c);
        acc = Some(match acc {
            Some(a) => a.add(&t),
            None => t,
        });
    }
    match acc {
        Some(a) => a,
        None => {
            // Zero polynomial: as exact a zero as the inputs allow.
            let (order, exact) = combine_orders(sz, sw);
            TruncSeries::from_coeffs(Vec::new(), order, exact)
        }
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (i, c) in self.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                match i {
                    0 => write!(f, "{c}")?,
                    1 => write!(f, "({c})*t")?,
                    _ => write!(f, "({c})*t^{i}")?,
                }
            }
        }
        if self.exact {
            write!(f, " (exact)")
        } else {
            write!(f, " + O(t^{})", self.order + 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(coeffs: &[i64], order: usize) -> TruncSeries {
        TruncSeries::from_coeffs(
            coeffs.iter().map(|&c| Rat::from_int(c)).collect(),
            order,
            false,
        )
    }

    #[test]
    fn residue_simple_pole() {
        // lambda / z -> lambda
        let num = TruncSeries::constant(Rat::new(-5, 3));
        let den = s(&[0, 1], 4);
        assert_eq!(series_residue(&num, &den), Ok(Rat::new(-5, 3)));
    }

    #[test]
    fn residue_no_pole_term() {
        // 1 / z^2 -> 0
        let num = TruncSeries::constant(Rat::one());
        let den = s(&[0, 0, 1], 4);
        assert_eq!(series_residue(&num, &den), Ok(Rat::zero()));
        // (z + z^2) / z^2 -> 1
        let num2 = s(&[0, 1, 1], 4);
        assert_eq!(series_residue(&num2, &den), Ok(Rat::one()));
    }

    #[test]
    fn residue_insufficient_truncation() {
        let num = TruncSeries::constant(Rat::one());
        let den = TruncSeries::zero(3);
        assert_eq!(
            series_residue(&num, &den),
            Err(SeriesError::InsufficientTruncation)
        );
        let den_exact = TruncSeries::zero_exact();
        assert_eq!(
            series_residue(&num, &den_exact),
            Err(SeriesError::DivisionByZero)
        );
    }

    #[test]
    fn unit_inverse() {
        // 1/(1 - z) = 1 + z + z^2 + ...
        let u = s(&[1, -1], 5);
        let inv = u.invert_unit(3).unwrap();
        for k in 0..=3 {
            assert_eq!(inv.coeff(k), Ok(Rat::one()));
        }
        assert!(inv.coeff(4).is_err());
    }

    #[test]
    fn division_with_valuation() {
        // (z + z^2) / z = 1 + z
        let num = s(&[0, 1, 1], 4);
        let den = s(&[0, 1], 4);
        let q = num.div(&den).unwrap();
        assert_eq!(q.coeff(0), Ok(Rat::one()));
        assert_eq!(q.coeff(1), Ok(Rat::one()));
        // 1 / z has a pole
        assert_eq!(
            TruncSeries::constant(Rat::one()).div(&den),
            Err(SeriesError::PoleInQuotient)
        );
    }

    #[test]
    fn min_order_propagation() {
        let a = s(&[1, 1, 1, 1], 3);
        let b = s(&[1, 2], 6);
        let p = a.mul(&b);
        assert_eq!(p.effective_order(), Some(3));
        assert!(p.coeff(4).is_err());
    }

    #[test]
    fn residue_invariant_under_units() {
        // residue(num*u, den*u) == residue(num, den) for a unit u.
        let num = s(&[3, 1, 4], 6);
        let den = s(&[0, 0, 2, 5], 6);
        let u = s(&[1, 7, -2], 6);
        let r1 = series_residue(&num, &den).unwrap();
        let r2 = series_residue(&num.mul(&u), &den.mul(&u)).unwrap();
        assert_eq!(r1, r2);
    }
}
