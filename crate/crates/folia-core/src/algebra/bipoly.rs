//! Bivariate polynomials over the rationals, in the variables `z` and `w`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::rat::Rat;
use super::unipoly::UniPoly;

/// Bivariate polynomial; a finite map from exponent pairs `(i, j)` (for
/// `z^i w^j`) to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        BiPoly::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        BiPoly::constant(Rat::one())
    }

    pub fn var_z() -> Self {
        BiPoly::monomial(1, 0, Rat::one())
    }

    pub fn var_w() -> Self {
        BiPoly::monomial(0, 1, Rat::one())
    }

    pub fn monomial(i: u32, j: u32, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rat)>>(it: I) -> Self {
        let mut p = BiPoly::zero();
        for ((i, j), c) in it {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    /// Terms in graded lexicographic order (z before w), highest first.
    pub fn terms_graded_lex(&self) -> Vec<((u32, u32), Rat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c.clone())).collect();
        v.sort_by(|a, b| {
            let da = a.0 .0 + a.0 .1;
            let db = b.0 .0 + b.0 .1;
            db.cmp(&da).then(b.0 .0.cmp(&a.0 .0))
        });
        v
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_z(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_w(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Vanishing order at the origin (minimal total degree of a term).
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    /// The homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j == d)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, z: &Rat, w: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * &(z.pow(i) * w.pow(j));
        }
        acc
    }

    pub fn partial_z(&self) -> BiPoly {
        let mut p = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                p.add_term(i - 1, j, Rat::from_int(i as i64) * c.clone());
            }
        }
        p
    }

    pub fn partial_w(&self) -> BiPoly {
        let mut p = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                p.add_term(i, j - 1, Rat::from_int(j as i64) * c.clone());
            }
        }
        p
    }

    pub fn scale(&self, c: &Rat) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    pub fn swap_vars(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `z -> sz`, `w -> sw`.
    pub fn substitute(&self, sz: &BiPoly, sw: &BiPoly) -> BiPoly {
        let mut zpows: Vec<BiPoly> = vec![BiPoly::one()];
        let mut wpows: Vec<BiPoly> = vec![BiPoly::one()];
        let mut acc = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            while zpows.len() <= i as usize {
                let next = zpows.last().unwrap() * sz;
                zpows.push(next);
            }
            while wpows.len() <= j as usize {
                let next = wpows.last().unwrap() * sw;
                wpows.push(next);
            }
            let t = &zpows[i as usize] * &wpows[j as usize];
            acc = &acc + &t.scale(c);
        }
        acc
    }

    /// Recentre at `(a, b)`: returns `f(z + a, w + b)`.
    pub fn translate(&self, a: &Rat, b: &Rat) -> BiPoly {
        if a.is_zero() && b.is_zero() {
            return self.clone();
        }
        let sz = &BiPoly::var_z() + &BiPoly::constant(a.clone());
        let sw = &BiPoly::var_w() + &BiPoly::constant(b.clone());
        self.substitute(&sz, &sw)
    }

    /// Restriction `f(z, 0)` as a univariate polynomial in `z`.
    pub fn restrict_w0(&self) -> UniPoly {
        let deg = self.degree_z().map(|d| d as usize + 1).unwrap_or(0);
        let mut coeffs = vec![Rat::zero(); deg];
        for (&(i, j), c) in &self.terms {
            if j == 0 {
                coeffs[i as usize] = c.clone();
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Restriction `f(0, w)` as a univariate polynomial in `w`.
    pub fn restrict_z0(&self) -> UniPoly {
        self.swap_vars().restrict_w0()
    }

    /// `f(x)` promoted to a bivariate polynomial in `z`.
    pub fn from_uni_z(p: &UniPoly) -> BiPoly {
        BiPoly::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u32, 0), c.clone())),
        )
    }

    /// `f(x)` promoted to a bivariate polynomial in `w`.
    pub fn from_uni_w(p: &UniPoly) -> BiPoly {
        BiPoly::from_uni_z(p).swap_vars()
    }

    /// View as a polynomial in `w` with coefficients in `Q[z]`; index = w-degree.
    pub fn as_uni_in_w(&self) -> Vec<UniPoly> {
        let degw = match self.degree_w() {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut rows: Vec<Vec<Rat>> = vec![Vec::new(); degw + 1];
        for (&(i, j), c) in &self.terms {
            let row = &mut rows[j as usize];
            if row.len() <= i as usize {
                row.resize(i as usize + 1, Rat::zero());
            }
            row[i as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::from_coeffs).collect()
    }

    pub fn from_uni_in_w(coeffs: &[UniPoly]) -> BiPoly {
        let mut p = BiPoly::zero();
        for (j, cj) in coeffs.iter().enumerate() {
            for (i, c) in cj.coeffs().iter().enumerate() {
                p.add_term(i as u32, j as u32, c.clone());
            }
        }
        p
    }

    /// Exact division by `z^k`; `None` if some term has z-degree below `k`.
    pub fn div_zpow(&self, k: u32) -> Option<BiPoly> {
        let mut p = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            if i < k {
                return None;
            }
            p.add_term(i - k, j, c.clone());
        }
        Some(p)
    }

    pub fn div_wpow(&self, k: u32) -> Option<BiPoly> {
        self.swap_vars().div_zpow(k).map(|p| p.swap_vars())
    }

    /// Exact polynomial division; `None` if `div` does not divide `self`.
    pub fn div_exact(&self, div: &BiPoly) -> Option<BiPoly> {
        if div.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        let dw = div.degree_w().unwrap() as usize;
        if dw == 0 {
            // Divisor lives in Q[z]: divide every w-coefficient exactly.
            let dz = div.restrict_w0();
            let rows = self.as_uni_in_w();
            let mut out = Vec::with_capacity(rows.len());
            for r in rows {
                out.push(r.div_exact(&dz)?);
            }
            return Some(BiPoly::from_uni_in_w(&out));
        }
        // Long division in (Q[z])[w] with exact leading-coefficient division.
        let dcoeffs = div.as_uni_in_w();
        let dlead = dcoeffs.last().unwrap().clone();
        let mut rem = self.as_uni_in_w();
        let mut quot: Vec<UniPoly> = Vec::new();
        loop {
            while rem.last().is_some_and(UniPoly::is_zero) {
                rem.pop();
            }
            if rem.is_empty() {
                break;
            }
            let rdeg = rem.len() - 1;
            if rdeg < dw {
                return None;
            }
            let q = rem[rdeg].div_exact(&dlead)?;
            let shift = rdeg - dw;
            if quot.len() <= shift {
                quot.resize(shift + 1, UniPoly::zero());
            }
            for (i, dc) in dcoeffs.iter().enumerate() {
                let t = &q * dc;
                rem[shift + i] = &rem[shift + i] - &t;
            }
            quot[shift] = q;
        }
        Some(BiPoly::from_uni_in_w(&quot))
    }

    /// Normalize so the graded-lex leading coefficient is 1.
    pub fn normalized(&self) -> BiPoly {
        match self.terms_graded_lex().first() {
            Some((_, lead)) => self.scale(&lead.recip()),
            None => BiPoly::zero(),
        }
    }

    /// Greatest common divisor, normalized to leading coefficient 1.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        gcd_impl(self, other).normalized()
    }

    /// Resultant with respect to `w`, a polynomial in `z`.
    pub fn resultant_w(&self, other: &BiPoly) -> UniPoly {
        let a = self.as_uni_in_w();
        let b = other.as_uni_in_w();
        if a.is_empty() || b.is_empty() {
            return UniPoly::zero();
        }
        let m = a.len() - 1;
        let n = b.len() - 1;
        if m == 0 && n == 0 {
            return UniPoly::constant(Rat::one());
        }
        if m == 0 {
            return pow_uni(&a[0], n);
        }
        if n == 0 {
            return pow_uni(&b[0], m);
        }
        // Sylvester matrix over Q[z], determinant by fraction-free elimination.
        let size = m + n;
        let mut mat = vec![vec![UniPoly::zero(); size]; size];
        for r in 0..n {
            for (i, c) in a.iter().enumerate() {
                mat[r][r + (m - i)] = c.clone();
            }
        }
        for r in 0..m {
            for (i, c) in b.iter().enumerate() {
                mat[n + r][r + (n - i)] = c.clone();
            }
        }
        bareiss_det(mat)
    }

    /// Resultant with respect to `z`, a polynomial in `w`.
    pub fn resultant_z(&self, other: &BiPoly) -> UniPoly {
        self.swap_vars().resultant_w(&other.swap_vars())
    }
}

fn pow_uni(p: &UniPoly, e: usize) -> UniPoly {
    let mut acc = UniPoly::constant(Rat::one());
    for _ in 0..e {
        acc = &acc * p;
    }
    acc
}

/// Fraction-free determinant of a square matrix over Q[z] (Bareiss).
fn bareiss_det(mut mat: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = mat.len();
    if n == 0 {
        return UniPoly::constant(Rat::one());
    }
    let mut sign = false;
    let mut prev = UniPoly::constant(Rat::one());
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            let pivot = (k + 1..n).find(|&i| !mat[i][k].is_zero());
            match pivot {
                Some(i) => {
                    mat.swap(k, i);
                    sign = !sign;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&mat[k][k] * &mat[i][j]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss division must be exact");
            }
            mat[i][k] = UniPoly::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

/// Content of `f` in (Q[z])[w]: monic gcd of the w-coefficients.
fn content_w(rows: &[UniPoly]) -> UniPoly {
    let mut g = UniPoly::zero();
    for r in rows {
        g = g.gcd(r);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

fn primitive_part_w(rows: &[UniPoly]) -> Vec<UniPoly> {
    let c = content_w(rows);
    if c.is_zero() || (c.is_constant()) {
        return rows.to_vec();
    }
    rows.iter()
        .map(|r| r.div_exact(&c).expect("content divides"))
        .collect()
}

/// Pseudo-remainder of `a` by `b` in (Q[z])[w]; both nonzero, deg a >= deg b.
fn pseudo_rem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r: Vec<UniPoly> = a.to_vec();
    loop {
        while r.last().is_some_and(UniPoly::is_zero) {
            r.pop();
        }
        if r.len() <= db {
            return r;
        }
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        let shift = dr - db;
        // r := lb * r - lr * w^shift * b
        let mut next = vec![UniPoly::zero(); dr + 1];
        for (i, c) in r.iter().enumerate() {
            next[i] = c * &lb;
        }
        for (i, c) in b.iter().enumerate() {
            next[shift + i] = &next[shift + i] - &(c * &lr);
        }
        r = next;
    }
}

fn gcd_impl(f: &BiPoly, g: &BiPoly) -> BiPoly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let fw = f.as_uni_in_w();
    let gw = g.as_uni_in_w();
    let df = fw.len() - 1;
    let dg = gw.len() - 1;
    if df == 0 && dg == 0 {
        return BiPoly::from_uni_z(&fw[0].gcd(&gw[0]));
    }
    if df == 0 {
        return BiPoly::from_uni_z(&fw[0].gcd(&content_w(&gw)));
    }
    if dg == 0 {
        return BiPoly::from_uni_z(&gw[0].gcd(&content_w(&fw)));
    }
    let cf = content_w(&fw);
    let cg = content_w(&gw);
    let cont = cf.gcd(&cg);
    let mut a = primitive_part_w(&fw);
    let mut b = primitive_part_w(&gw);
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b);
        if r.iter().all(UniPoly::is_zero) {
            break;
        }
        a = b;
        b = primitive_part_w(&r);
    }
    let pp = primitive_part_w(&b);
    &BiPoly::from_uni_in_w(&pp) * &BiPoly::from_uni_z(&cont)
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, ((i, j), c)) in self.terms_graded_lex().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut wrote_factor = false;
            if !mag.is_one() || (i == 0 && j == 0) {
                write!(f, "{mag}")?;
                wrote_factor = true;
            }
            for (var, e) in [("z", i), ("w", j)] {
                if e == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(f, "*")?;
                }
                wrote_factor = true;
                if e == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error from parsing a polynomial in `z`, `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsePolyError {
    pub offset: usize,
    pub message: &'static str,
}

impl fmt::Display for ParsePolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.message, self.offset)
    }
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn err(&self, message: &'static str) -> ParsePolyError {
        ParsePolyError {
            offset: self.pos,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<BiPoly, ParsePolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op) = self.peek() {
            match op {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiPoly, ParsePolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                // Implicit multiplication before a variable or '('.
                Some(b'z') | Some(b'w') | Some(b'(') => {
                    acc = &acc * &self.factor()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly, ParsePolyError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.nat()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BiPoly, ParsePolyError> {
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                Ok(BiPoly::var_z())
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(BiPoly::var_w())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.nat()? as i64;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.nat()? as i64;
                    if den == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    Ok(BiPoly::constant(Rat::new(num, den)))
                } else {
                    Ok(BiPoly::constant(Rat::from_int(num)))
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }

    fn nat(&mut self) -> Result<u32, ParsePolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse().map_err(|_| ParsePolyError {
            offset: start,
            message: "number too large",
        })
    }
}

impl core::str::FromStr for BiPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = PolyParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(out)
    }
}
