//! Local intersection multiplicity of two plane curves at a point, by the
//! classical recursive procedure: reduce one restriction to the axis against
//! the other, split off axis factors, recurse.

use super::bipoly::BiPoly;
use super::rat::Rat;

/// Intersection multiplicity value; infinite exactly when the curves share
/// a component through the point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(usize),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<usize> {
        match self {
            Multiplicity::Finite(m) => Some(m),
            Multiplicity::Infinite => None,
        }
    }
}

/// dim of the local quotient algebra at `p` by the ideal `(f, g)`.
pub fn local_intersection_multiplicity(f: &BiPoly, g: &BiPoly, p: &(Rat, Rat)) -> Multiplicity {
    let mut f = f.translate(&p.0, &p.1);
    let mut g = g.translate(&p.0, &p.1);
    if !f.coeff(0, 0).is_zero() || !g.coeff(0, 0).is_zero() {
        return Multiplicity::Finite(0);
    }
    if f.is_zero() || g.is_zero() {
        return Multiplicity::Infinite;
    }
    let d = f.gcd(&g);
    if !d.is_constant() {
        if d.coeff(0, 0).is_zero() {
            // A shared component through the origin.
            return Multiplicity::Infinite;
        }
        // The shared factor is a unit at the origin and contributes nothing.
        f = f.div_exact(&d).expect("gcd divides");
        g = g.div_exact(&d).expect("gcd divides");
    }
    Multiplicity::Finite(mult_at_origin(f, g))
}

/// Both vanish at the origin and share no component through it.
fn mult_at_origin(mut f: BiPoly, mut g: BiPoly) -> usize {
    let mut total = 0usize;
    loop {
        if !f.coeff(0, 0).is_zero() || !g.coeff(0, 0).is_zero() {
            return total;
        }
        let fr = f.restrict_w0();
        let gr = g.restrict_w0();
        match (fr.is_zero(), gr.is_zero()) {
            (true, true) => unreachable!("common factor w was excluded"),
            (true, false) => {
                // w divides f: I(f, g) = I(w, g) + I(f/w, g).
                total += gr.order_at_zero().expect("nonzero restriction");
                f = f.div_wpow(1).expect("w divides f");
            }
            (false, true) => {
                total += fr.order_at_zero().expect("nonzero restriction");
                g = g.div_wpow(1).expect("w divides g");
            }
            (false, false) => {
                // Cancel leading terms of the restrictions to lower one degree.
                let (df, dg) = (fr.degree().unwrap(), gr.degree().unwrap());
                if df <= dg {
                    let q = gr.leading_coeff() / fr.leading_coeff();
                    let shift = BiPoly::monomial((dg - df) as u32, 0, q);
                    g = &g - &(&shift * &f);
                } else {
                    let q = fr.leading_coeff() / gr.leading_coeff();
                    let shift = BiPoly::monomial((df - dg) as u32, 0, q);
                    f = &f - &(&shift * &g);
                }
            }
        }
    }
}

/// Independent linear-algebra oracle: dimension of the monomial quotient
/// truncated at total degree `cutoff`.
///
/// The dimension stabilizes once the cutoff passes the true multiplicity;
/// [`quotient_dim_stable`] raises the cutoff until it does. Kept separate
/// from the recursive procedure above so the two can check each other.
pub fn quotient_dim_truncated(f: &BiPoly, g: &BiPoly, cutoff: usize) -> usize {
    // Basis: monomials z^i w^j with i + j < cutoff.
    let monos: alloc::vec::Vec<(u32, u32)> = (0..cutoff as u32)
        .flat_map(|d| (0..=d).map(move |i| (i, d - i)))
        .collect();
    let index = |i: u32, j: u32| -> Option<usize> {
        let d = (i + j) as usize;
        if d >= cutoff {
            return None;
        }
        Some(d * (d + 1) / 2 + i as usize)
    };
    let mut rows: alloc::vec::Vec<alloc::vec::Vec<Rat>> = alloc::vec::Vec::new();
    for gen in [f, g] {
        if gen.is_zero() {
            continue;
        }
        for &(a, b) in &monos {
            let mut row = alloc::vec![Rat::zero(); monos.len()];
            let mut nonzero = false;
            for (&(i, j), c) in gen.terms() {
                if let Some(k) = index(i + a, j + b) {
                    row[k] = c.clone();
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    monos.len() - row_rank(&mut rows)
}

/// Oracle with the cutoff raised (doubling) until the dimension is stable
/// across two consecutive cutoffs, up to `cap`; `None` if never stable
/// (which indicates an infinite multiplicity).
pub fn quotient_dim_stable(f: &BiPoly, g: &BiPoly, cap: usize) -> Option<usize> {
    let mut cutoff = 4usize;
    let mut prev = quotient_dim_truncated(f, g, cutoff);
    while cutoff < cap {
        cutoff *= 2;
        let next = quotient_dim_truncated(f, g, cutoff.min(cap));
        if next == prev {
            return Some(next);
        }
        prev = next;
    }
    None
}

/// Rank over the rationals by Gaussian elimination.
fn row_rank(rows: &mut alloc::vec::Vec<alloc::vec::Vec<Rat>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(pr) = pivot else { continue };
        rows.swap(rank, pr);
        let inv = rows[rank][col].recip();
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] * &inv;
            for c in col..ncols {
                let t = &factor * &rows[rank][c];
                rows[r][c] -= t;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly;

    fn origin() -> (Rat, Rat) {
        (Rat::zero(), Rat::zero())
    }

    fn mult(f: &str, g: &str) -> Multiplicity {
        local_intersection_multiplicity(&poly(f), &poly(g), &origin())
    }

    #[test]
    fn coordinate_ideal() {
        assert_eq!(mult("z", "w"), Multiplicity::Finite(1));
    }

    #[test]
    fn parabola_and_axis() {
        assert_eq!(mult("w - z^2", "w"), Multiplicity::Finite(2));
    }

    #[test]
    fn cusp_pair() {
        // Frozen from the monomial linear-algebra oracle.
        assert_eq!(
            quotient_dim_stable(&poly("w^2 - z^3"), &poly("w^2 + z^3"), 64),
            Some(6)
        );
        assert_eq!(mult("w^2 - z^3", "w^2 + z^3"), Multiplicity::Finite(6));
    }

    #[test]
    fn shared_component_is_infinite() {
        assert_eq!(mult("z*w", "z*(w - z)"), Multiplicity::Infinite);
        // Shared component away from the origin is harmless.
        assert_eq!(mult("z*(w - 1)", "w*(w - 1)"), Multiplicity::Finite(1));
    }

    #[test]
    fn away_from_curves() {
        assert_eq!(mult("z - 1", "w"), Multiplicity::Finite(0));
    }

    #[test]
    fn off_origin_point() {
        // The parabola w = 2z^2 meets the line w = 2 transversally at (1, 2).
        let p = (Rat::one(), Rat::from_int(2));
        let m = local_intersection_multiplicity(&poly("w - 2*z^2"), &poly("w - 2"), &p);
        assert_eq!(m, Multiplicity::Finite(1));
        // Recentring to the origin gives the same answer.
        let p2 = (Rat::zero(), Rat::zero());
        let f = poly("w - 2*z^2").translate(&Rat::one(), &Rat::from_int(2));
        let g = poly("w - 2").translate(&Rat::one(), &Rat::from_int(2));
        let shifted = local_intersection_multiplicity(&f, &g, &p2);
        assert_eq!(shifted, m);
    }

    #[test]
    fn matches_oracle_on_samples() {
        let samples = [
            ("z", "w"),
            ("w - z^2", "w"),
            ("w^2 - z^3", "w"),
            ("w^2 - z^3", "z"),
            ("w^2 - z^3", "w^2 + z^3"),
            ("z^2 - w^2", "z^2 + w^2"),
            ("w^3 - z^2", "w^2 - z^3"),
            ("z*w", "z + w"),
        ];
        for (fs, gs) in samples {
            let f = poly(fs);
            let g = poly(gs);
            let rec = local_intersection_multiplicity(&f, &g, &origin());
            let ora = quotient_dim_stable(&f, &g, 64).map(Multiplicity::Finite);
            assert_eq!(Some(rec), ora, "mismatch on ({fs}, {gs})");
            // Symmetry.
            assert_eq!(rec, local_intersection_multiplicity(&g, &f, &origin()));
        }
    }

    #[test]
    fn product_of_orders_lower_bound() {
        let f = poly("w^2 - z^3");
        let g = poly("w - z^2");
        let m = local_intersection_multiplicity(&f, &g, &origin())
            .finite()
            .unwrap();
        let bound =
            f.order_at_origin().unwrap() as usize * g.order_at_origin().unwrap() as usize;
        assert!(m >= bound);
    }
}
