//! Dense univariate polynomials over the rationals.
//!
//! Used for resultants, eliminants and rational root extraction; the core
//! bivariate type lives in [`super::bipoly`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::Rat;

/// Univariate polynomial; `coeffs[i]` is the coefficient of degree `i`.
/// No trailing zeros are stored; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn identity() -> Self {
        UniPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// Vanishing order at 0; `None` for the zero polynomial.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Rat::from_int(i as i64) * c.clone())
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Monic associate (leading coefficient 1); zero stays zero.
    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        self.scale(&self.leading_coeff().recip())
    }

    pub fn mul_xpow(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Quotient and remainder; panics if `div` is zero.
    pub fn div_rem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let lc = div.leading_coeff();
        let n = self.coeffs.len();
        if n <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            let q = c / lc.clone();
            for (i, dc) in div.coeffs.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
            quot[k] = q;
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Exact division; `None` if the remainder is nonzero.
    pub fn div_exact(&self, div: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(div);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// All rational roots, each repeated to its multiplicity, together with
    /// the root-free cofactor (monic).
    pub fn rational_roots(&self) -> (Vec<Rat>, UniPoly) {
        if self.is_zero() || self.is_constant() {
            return (Vec::new(), self.monic());
        }
        let mut roots = Vec::new();
        let mut p = self.clone();
        // x = 0 roots first.
        if let Some(k) = p.order_at_zero() {
            if k > 0 {
                for _ in 0..k {
                    roots.push(Rat::zero());
                }
                p = UniPoly::from_coeffs(p.coeffs[k..].to_vec());
            }
        }
        // Clear denominators to an integer polynomial.
        let mut den = BigInt::one();
        for c in p.coeffs.iter() {
            den = den.lcm(c.denom());
        }
        let int_coeffs: Vec<BigInt> = p
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        if let (Some(a0), Some(an)) = (int_coeffs.first(), int_coeffs.last()) {
            let num_divs = divisors(&a0.abs());
            let den_divs = divisors(&an.abs());
            let mut candidates: Vec<Rat> = Vec::new();
            for n in &num_divs {
                for d in &den_divs {
                    let r = Rat::from_big(n.clone(), d.clone());
                    if !candidates.contains(&r) {
                        candidates.push(r.clone());
                        candidates.push(-r);
                    }
                }
            }
            candidates.sort();
            for cand in candidates {
                loop {
                    if p.is_constant() {
                        break;
                    }
                    if !p.eval(&cand).is_zero() {
                        break;
                    }
                    let lin = UniPoly::from_coeffs(vec![-cand.clone(), Rat::one()]);
                    p = p.div_exact(&lin).expect("root must divide");
                    roots.push(cand.clone());
                }
            }
        }
        roots.sort();
        (roots, p.monic())
    }
}

/// Positive divisors of `n` (which must be positive), by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::one();
    loop {
        let dd = &d * &d;
        if &dd > n {
            break;
        }
        if (n % &d).is_zero() {
            out.push(d.clone());
            let q = n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += BigInt::one();
    }
    out
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&c| Rat::from_int(c)).collect())
    }

    #[test]
    fn div_rem_basic() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let f = poly(&[-1, 0, 0, 1]);
        let g = poly(&[-1, 1]);
        let (q, r) = f.div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(q, poly(&[1, 1, 1]));
        let (q2, r2) = f.div_rem(&poly(&[0, 0, 1]));
        assert_eq!(q2, poly(&[0, 1]));
        assert_eq!(r2, poly(&[-1]));
    }

    #[test]
    fn gcd_basic() {
        let f = poly(&[-1, 0, 1]); // x^2 - 1
        let g = poly(&[1, 2, 1]); // (x+1)^2
        assert_eq!(f.gcd(&g), poly(&[1, 1]));
        assert_eq!(poly(&[1]).gcd(&f), poly(&[1]));
        assert_eq!(UniPoly::zero().gcd(&f), f.monic());
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // 2x^4 - x^3 - x^2 = x^2 (2x + 1)(x - 1)
        let f = poly(&[0, 0, -1, -1, 2]);
        let (roots, rest) = f.rational_roots();
        assert_eq!(
            roots,
            vec![Rat::new(-1, 2), Rat::zero(), Rat::zero(), Rat::one()]
        );
        assert_eq!(rest, poly(&[1]));
    }

    #[test]
    fn rational_roots_residual() {
        // (x^2 - 2)(x - 3)
        let f = &poly(&[-2, 0, 1]) * &poly(&[-3, 1]);
        let (roots, rest) = f.rational_roots();
        assert_eq!(roots, vec![Rat::from_int(3)]);
        assert_eq!(rest, poly(&[-2, 0, 1]));
    }
}
