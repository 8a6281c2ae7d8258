//! Rational common zeros of bivariate systems, with a proof that none are
//! missing.
//!
//! Candidates come from a resultant in `x` and, for each rational root, a
//! univariate gcd in `y`. The local multiplicities of the candidates must add
//! up to the dimension of the global quotient ring; otherwise some solution
//! has irrational coordinates.

use num_traits::Zero;

use crate::coeff::{rat_int, uni_gcd, Rat, UniPoly};
use crate::localstd::{global_quotient_dimension, local_quotient_dimension};
use crate::multipoly::{resultant_eliminate, MPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum ZeroSetError {
    NotZeroDimensional,
    /// The rational solutions account for `found` of `expected` solutions
    /// counted with multiplicity.
    Irrational { found: u64, expected: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RationalZero {
    pub point: (Rat, Rat),
    pub multiplicity: u64,
}

pub(crate) fn to_uni(p: &MPoly<Rat>) -> UniPoly {
    assert_eq!(p.nvars(), 1);
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![Rat::zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.exponents()[0] as usize] = c.clone();
    }
    UniPoly::new(coeffs)
}

pub(crate) fn translate(p: &MPoly<Rat>, point: &[Rat]) -> MPoly<Rat> {
    let n = p.nvars();
    let shifted: Vec<MPoly<Rat>> = (0..n)
        .map(|i| &MPoly::var(n, i) + &MPoly::constant(n, point[i].clone()))
        .collect();
    p.substitute(&shifted).expect("matching arity")
}

/// Monic gcd of the nonzero entries; zero when all are zero.
pub(crate) fn gcd_all(polys: &[UniPoly]) -> UniPoly {
    polys
        .iter()
        .filter(|p| !p.is_zero())
        .fold(UniPoly::zero(), |g, p| if g.is_zero() { p.monic() } else { uni_gcd(&g, p) })
}

/// Number of distinct complex roots that are not rational.
pub(crate) fn irrational_root_count(p: &UniPoly) -> usize {
    if p.is_constant() {
        return 0;
    }
    let sqf = p.squarefree_part().expect("nonzero");
    sqf.degree().unwrap_or(0) - sqf.rational_roots().expect("nonzero").len()
}

// a nonzero polynomial in x vanishing at the x-coordinate of every common
// zero; tries fixed linear combinations until the resultant is nonzero
fn eliminant(polys: &[MPoly<Rat>]) -> Option<UniPoly> {
    for k in 1..=24i64 {
        let combo = |base: i64| {
            polys
                .iter()
                .enumerate()
                .fold(MPoly::zero(2), |acc, (i, p)| &acc + &p.scale(&rat_int(base.pow(i as u32))))
        };
        let (g1, g2) = if polys.len() == 2 && k == 1 {
            (polys[0].clone(), polys[1].clone())
        } else {
            (combo(k), combo(-k - 1))
        };
        if g1.is_zero() || g2.is_zero() {
            continue;
        }
        let r = resultant_eliminate(&g1, &g2, 1).expect("bivariate");
        if !r.is_zero() {
            return Some(r);
        }
    }
    None
}

pub(crate) fn rational_zeros(polys: &[MPoly<Rat>]) -> Result<Vec<RationalZero>, ZeroSetError> {
    let polys: Vec<MPoly<Rat>> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if polys.is_empty() {
        return Err(ZeroSetError::NotZeroDimensional);
    }
    let expected = global_quotient_dimension(&polys)
        .finite()
        .ok_or(ZeroSetError::NotZeroDimensional)?;
    if expected == 0 {
        return Ok(Vec::new());
    }
    let r = eliminant(&polys).ok_or(ZeroSetError::NotZeroDimensional)?;
    let mut out = Vec::new();
    for a in r.rational_roots().expect("nonzero") {
        let fibre: Vec<UniPoly> = polys.iter().map(|p| to_uni(&p.restrict(0, &a))).collect();
        let g = gcd_all(&fibre);
        if g.is_zero() {
            return Err(ZeroSetError::NotZeroDimensional);
        }
        if g.is_constant() {
            continue;
        }
        for b in g.rational_roots().expect("nonzero") {
            let point = [a.clone(), b.clone()];
            let local: Vec<MPoly<Rat>> = polys.iter().map(|p| translate(p, &point)).collect();
            let multiplicity = local_quotient_dimension(&local)
                .finite()
                .expect("isolated in a zero-dimensional system");
            out.push(RationalZero {
                point: (a.clone(), b),
                multiplicity,
            });
        }
    }
    let found: u64 = out.iter().map(|z| z.multiplicity).sum();
    if found != expected {
        return Err(ZeroSetError::Irrational { found, expected });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn p(terms: &[(i64, u32, u32)]) -> MPoly<Rat> {
        MPoly::from_terms(2, terms.iter().map(|&(c, i, j)| (vec![i, j], rat_int(c))))
    }

    #[test]
    fn finds_rational_points_with_multiplicity() {
        // y = x^2 and y = 0 meet at the origin with multiplicity 2
        let z = rational_zeros(&[p(&[(1, 0, 1), (-1, 2, 0)]), p(&[(1, 0, 1)])]).unwrap();
        assert_eq!(z, vec![RationalZero { point: (rat(0, 1), rat(0, 1)), multiplicity: 2 }]);
        // the circle x^2 + y^2 = 25 and the line y = x + 1
        let z = rational_zeros(&[p(&[(1, 2, 0), (1, 0, 2), (-25, 0, 0)]), p(&[(1, 0, 1), (-1, 1, 0), (-1, 0, 0)])])
            .unwrap();
        let pts: Vec<_> = z.iter().map(|z| z.point.clone()).collect();
        assert_eq!(pts, vec![(rat(-4, 1), rat(-3, 1)), (rat(3, 1), rat(4, 1))]);
    }

    #[test]
    fn reports_irrational_and_positive_dimensional_sets() {
        // x^2 = 2, y = 0
        let err = rational_zeros(&[p(&[(1, 2, 0), (-2, 0, 0)]), p(&[(1, 0, 1)])]).unwrap_err();
        assert_eq!(err, ZeroSetError::Irrational { found: 0, expected: 2 });
        // x^2 = 2 or x = 1, y = 0: one rational point of three
        let err = rational_zeros(&[p(&[(1, 3, 0), (-1, 2, 0), (-2, 1, 0), (2, 0, 0)]), p(&[(1, 0, 1)])]).unwrap_err();
        assert_eq!(err, ZeroSetError::Irrational { found: 1, expected: 3 });
        let err = rational_zeros(&[p(&[(1, 1, 1)]), p(&[(2, 1, 1)])]).unwrap_err();
        assert_eq!(err, ZeroSetError::NotZeroDimensional);
    }

    #[test]
    fn three_pairwise_dependent_generators() {
        // xy, x(y - 1), y(y - 1): every pair shares a factor
        let a = p(&[(1, 1, 1)]);
        let b = p(&[(1, 1, 1), (-1, 1, 0)]);
        let c = p(&[(1, 0, 2), (-1, 0, 1)]);
        let z = rational_zeros(&[a, b, c]).unwrap();
        let pts: Vec<_> = z.iter().map(|z| (z.point.clone(), z.multiplicity)).collect();
        assert_eq!(pts, vec![((rat(0, 1), rat(0, 1)), 1), ((rat(0, 1), rat(1, 1)), 1)]);
    }
}
