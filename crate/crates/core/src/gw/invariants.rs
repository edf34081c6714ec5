//! Closed values for the surface invariants read off the leading term:
//! unramified spin Hurwitz numbers and the divisor-descendent formulas for
//! degrees one and two.

use crate::algebra::binomial::factorial_rational;
use crate::algebra::ring::{int, rational_powi, Rational};
use crate::error::{Error, Result};
use crate::pairs::bruteforce::pairing_product;
use crate::pairs::geometry::{check_degree, Insertion, SurfaceGeometry};

use super::matrices::l_matrix;
use super::vertical::{extract_surface_invariant, gw_descendent_factor, gw_vertical};

/// `(−1)^{χ(O_S)} 2^{(d−1)(1−h)} (d!)^{2h−2}`.
pub fn spin_hurwitz_vertical(geom: &SurfaceGeometry, d: i64) -> Result<Rational> {
    check_degree(d)?;
    let k2 = geom.kappa_sq();
    Ok(int(geom.sign())
        * rational_powi(&int(2), -(d - 1) * k2)?
        * rational_powi(&factorial_rational(d as u64), 2 * k2)?)
}

/// `α!/(2α+1)!`.
fn descendent_weight(alpha: u32) -> Rational {
    factorial_rational(u64::from(alpha)) / factorial_rational(2 * u64::from(alpha) + 1)
}

/// The degree-one and degree-two formulas for divisor descendents.
pub fn mp_invariant(geom: &SurfaceGeometry, d: i64, insertions: &[Insertion]) -> Result<Rational> {
    let mut acc = int(geom.sign());
    match d {
        1 => {
            for ins in insertions {
                acc *= &ins.pairing
                    * descendent_weight(ins.alpha)
                    * rational_powi(&int(-2), -i64::from(ins.alpha))?;
            }
        }
        2 => {
            acc *= rational_powi(&int(2), geom.kappa_sq())?;
            for ins in insertions {
                acc *= int(2)
                    * &ins.pairing
                    * descendent_weight(ins.alpha)
                    * rational_powi(&int(-2), i64::from(ins.alpha))?;
            }
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "closed formula known only for d = 1, 2, got {d}"
            )));
        }
    }
    Ok(acc)
}

/// The vertical contribution for any `d`:
/// spin Hurwitz number times `Π_j (dκ·D_j) α_j!/(2α_j+1)! (−2)^{−α_j} d^{2α_j}`.
pub fn vertical_descendent_invariant(
    geom: &SurfaceGeometry,
    d: i64,
    insertions: &[Insertion],
) -> Result<Rational> {
    let mut acc = spin_hurwitz_vertical(geom, d)?;
    for ins in insertions {
        let a = i64::from(ins.alpha);
        acc *= int(d)
            * &ins.pairing
            * descendent_weight(ins.alpha)
            * rational_powi(&int(-2), -a)?
            * rational_powi(&int(d), 2 * a)?;
    }
    Ok(acc)
}

/// Runs the full pipeline (vertical series × descendent factor × pairings),
/// extracts the leading coefficient and returns it.
pub fn pipeline_invariant(
    geom: &SurfaceGeometry,
    d: i64,
    insertions: &[Insertion],
    order: i64,
) -> Result<Rational> {
    let size = insertions
        .iter()
        .map(|i| i.alpha as usize + 1)
        .max()
        .unwrap_or(1);
    let base = gw_vertical(geom, d, order)?;
    let (_, factor) = gw_descendent_factor(d, insertions, order, &l_matrix(size))?;
    let scale = pairing_product(insertions) * rational_powi(&int(d), insertions.len() as i64)?;
    let series = base.mul_capped(&factor, Some(order)).scale_rational(&scale);
    extract_surface_invariant(geom, d, insertions, &series)
}

/// Does the pipeline reproduce the closed degree-one/two formula?
pub fn mp_consistency(
    geom: &SurfaceGeometry,
    d: i64,
    insertions: &[Insertion],
    order: i64,
) -> Result<bool> {
    let want = mp_invariant(geom, d, insertions)?;
    Ok(pipeline_invariant(geom, d, insertions, order)? == want)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rat;
    use crate::gw::vertical::leading_exponent;
    use crate::pairs::geometry::ChiParity;

    fn geom(h: i64, parity: ChiParity) -> SurfaceGeometry {
        SurfaceGeometry::new(h, parity).unwrap()
    }

    #[test]
    fn spin_hurwitz_examples() {
        for h in 1..4 {
            assert_eq!(
                spin_hurwitz_vertical(&geom(h, ChiParity::Odd), 1).unwrap(),
                int(-1)
            );
        }
        assert_eq!(
            spin_hurwitz_vertical(&geom(2, ChiParity::Even), 2).unwrap(),
            int(2)
        );
        assert_eq!(
            spin_hurwitz_vertical(&geom(2, ChiParity::Even), 3).unwrap(),
            int(9)
        );
    }

    #[test]
    fn mp_examples() {
        let one = [Insertion::new(2, int(1))];
        assert_eq!(
            mp_invariant(&geom(2, ChiParity::Odd), 1, &one).unwrap(),
            rat(-1, 240)
        );
        assert_eq!(
            mp_invariant(&geom(2, ChiParity::Even), 2, &[]).unwrap(),
            int(2)
        );
        assert_eq!(
            mp_invariant(
                &geom(3, ChiParity::Even),
                1,
                &[Insertion::new(0, rat(5, 2))]
            )
            .unwrap(),
            rat(5, 2)
        );
        assert!(mp_invariant(&geom(2, ChiParity::Even), 3, &[]).is_err());
    }

    #[test]
    fn pipeline_examples() {
        let g = geom(2, ChiParity::Odd);
        let ins = [Insertion::new(1, int(1))];
        assert!(mp_consistency(&g, 1, &ins, leading_exponent(&g, 1, &ins) + 2).unwrap());
        let g = geom(3, ChiParity::Even);
        let ins = [Insertion::new(0, int(1)), Insertion::new(2, int(1))];
        assert!(mp_consistency(&g, 2, &ins, leading_exponent(&g, 2, &ins) + 2).unwrap());
        for h in 1..4 {
            let g = geom(h, ChiParity::Even);
            assert!(mp_consistency(&g, 1, &[], leading_exponent(&g, 1, &[]) + 1).unwrap());
        }
    }

    #[test]
    fn general_degree_formula_matches_pipeline() {
        for d in 1..=4 {
            for h in 1..=3 {
                let g = geom(h, ChiParity::Odd);
                let ins = [Insertion::new(1, rat(2, 3)), Insertion::new(3, int(-1))];
                let order = leading_exponent(&g, d, &ins) + 1;
                assert_eq!(
                    pipeline_invariant(&g, d, &ins, order).unwrap(),
                    vertical_descendent_invariant(&g, d, &ins).unwrap(),
                    "d={d} h={h}"
                );
            }
        }
    }

    #[test]
    fn low_order_is_reported() {
        let g = geom(2, ChiParity::Odd);
        assert!(matches!(
            pipeline_invariant(&g, 1, &[], 2),
            Err(Error::TruncationTooSmall { .. })
        ));
    }
}
