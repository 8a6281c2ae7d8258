//! Gcd and resultants of bivariate polynomials, computed over `Q[u][v]` with
//! subresultant remainder sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MPoly, Monomial, MonomialOrder, PolyError};
use crate::coeff::{uni_gcd, Rat, UniPoly};

/// Dense polynomial in the main variable with coefficients in `Q[u]`,
/// trimmed so the last entry is nonzero.
type RecPoly = Vec<UniPoly>;

/// Views `p` as a polynomial in variable `var` whose coefficients are
/// univariate polynomials in the other variable.
pub fn to_recursive(p: &MPoly<Rat>, var: usize) -> Result<Vec<UniPoly>, PolyError> {
    check_bivariate(p)?;
    let other = 1 - var;
    let deg = p.degree_in(var).map_or(0, |d| d as usize + 1);
    let mut parts: Vec<Vec<Rat>> = vec![Vec::new(); deg];
    for (m, c) in p.terms() {
        let (i, j) = (m.exponents()[var] as usize, m.exponents()[other] as usize);
        if parts[i].len() <= j {
            parts[i].resize(j + 1, Rat::zero());
        }
        parts[i][j] = c.clone();
    }
    Ok(trim(parts.into_iter().map(UniPoly::new).collect()))
}

pub fn from_recursive(coeffs: &[UniPoly], var: usize) -> MPoly<Rat> {
    let mut out = MPoly::zero(2);
    for (i, c) in coeffs.iter().enumerate() {
        for (j, a) in c.coeffs().iter().enumerate() {
            let mut e = vec![0u32; 2];
            e[var] = i as u32;
            e[1 - var] = j as u32;
            out.add_term(Monomial::new(e), a.clone());
        }
    }
    out
}

fn check_bivariate(p: &MPoly<Rat>) -> Result<(), PolyError> {
    if p.nvars() != 2 {
        return Err(PolyError::WrongArity {
            expected: 2,
            actual: p.nvars(),
        });
    }
    Ok(())
}

fn trim(mut p: RecPoly) -> RecPoly {
    while p.last().is_some_and(UniPoly::is_zero) {
        p.pop();
    }
    p
}

fn deg(p: &RecPoly) -> usize {
    p.len() - 1
}

fn lc(p: &RecPoly) -> &UniPoly {
    p.last().expect("nonzero polynomial")
}

fn scale(p: &RecPoly, c: &UniPoly) -> RecPoly {
    trim(p.iter().map(|a| a * c).collect())
}

fn exact_div_scalar(p: &RecPoly, d: &UniPoly) -> RecPoly {
    p.iter()
        .map(|a| a.exact_div(d).expect("inexact division in remainder sequence"))
        .collect()
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`.
fn pseudo_rem(a: &RecPoly, b: &RecPoly) -> RecPoly {
    let (da, db) = (deg(a), deg(b));
    let lb = lc(b);
    let mut r = a.clone();
    let mut steps = da + 1 - db;
    while !r.is_empty() && r.len() > db {
        let shift = deg(&r) - db;
        let lr = lc(&r).clone();
        let mut next = scale(&r, lb);
        next.resize(next.len().max(r.len()), UniPoly::zero());
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = &next[i + shift] - &(bc * &lr);
        }
        r = trim(next);
        steps -= 1;
    }
    let mult = lb.pow(steps as u32);
    scale(&r, &mult)
}

fn content(p: &RecPoly) -> UniPoly {
    p.iter().fold(UniPoly::zero(), |g, c| uni_gcd(&g, c))
}

/// Gcd in `Q[u][v]` of two nonzero polynomials, up to a rational scalar.
fn rec_gcd(a: &RecPoly, b: &RecPoly) -> RecPoly {
    let (ca, cb) = (content(a), content(b));
    let d = uni_gcd(&ca, &cb);
    let mut a = exact_div_scalar(a, &ca);
    let mut b = exact_div_scalar(b, &cb);
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = UniPoly::one();
    let mut h = UniPoly::one();
    loop {
        let delta = deg(&a) - deg(&b);
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            let cb = content(&b);
            return scale(&exact_div_scalar(&b, &cb), &d);
        }
        if deg(&r) == 0 {
            return vec![d];
        }
        a = b;
        b = exact_div_scalar(&r, &(&g * &h.pow(delta as u32)));
        g = lc(&a).clone();
        h = next_h(&h, &g, delta);
    }
}

// h^(1 - delta) * g^delta
fn next_h(h: &UniPoly, g: &UniPoly, delta: usize) -> UniPoly {
    if delta == 0 {
        return h.clone();
    }
    g.pow(delta as u32)
        .exact_div(&h.pow(delta as u32 - 1))
        .expect("inexact division in remainder sequence")
}

/// Resultant of two polynomials over `Q[u]` by the subresultant algorithm.
fn rec_resultant(a: &RecPoly, b: &RecPoly) -> UniPoly {
    if a.is_empty() || b.is_empty() {
        return UniPoly::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = false;
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = !sign;
        }
    }
    if deg(&b) == 0 {
        return apply_sign(lc(&b).pow(deg(&a) as u32), sign);
    }
    let mut g = UniPoly::one();
    let mut h = UniPoly::one();
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = !sign;
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return UniPoly::zero();
        }
        a = b;
        b = exact_div_scalar(&r, &(&g * &h.pow(delta as u32)));
        g = lc(&a).clone();
        h = next_h(&h, &g, delta);
        if deg(&b) == 0 {
            let da = deg(&a) as u32;
            let res = lc(&b)
                .pow(da)
                .exact_div(&h.pow(da - 1))
                .expect("inexact division in remainder sequence");
            return apply_sign(res, sign);
        }
    }
}

fn apply_sign(p: UniPoly, negate: bool) -> UniPoly {
    if negate {
        -p
    } else {
        p
    }
}

/// Greatest common divisor of two nonzero bivariate polynomials.
///
/// The result has integer coefficients with content one, and its lead term
/// under the local order has a positive coefficient.
pub fn bivariate_gcd(p: &MPoly<Rat>, q: &MPoly<Rat>) -> Result<MPoly<Rat>, PolyError> {
    check_bivariate(p)?;
    check_bivariate(q)?;
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let g = rec_gcd(&to_recursive(p, 1)?, &to_recursive(q, 1)?);
    Ok(normalize_integral(&from_recursive(&g, 1)))
}

/// Scales a nonzero polynomial to integer coefficients with content one and
/// positive lead coefficient under the local order.
pub fn normalize_integral(p: &MPoly<Rat>) -> MPoly<Rat> {
    let Some((_, lead)) = p.lead_term(MonomialOrder::Local) else {
        return p.clone();
    };
    let den = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let num = p
        .terms()
        .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(&(c * Rat::from_integer(den.clone())).to_integer()));
    let mut factor = Rat::new(den, num);
    if lead.is_negative() {
        factor = -factor;
    }
    p.scale(&factor)
}

/// Resultant of `p` and `q` with respect to variable `var_index`, returned as
/// a polynomial in the remaining variable.
pub fn resultant_eliminate(
    p: &MPoly<Rat>,
    q: &MPoly<Rat>,
    var_index: usize,
) -> Result<UniPoly, PolyError> {
    check_bivariate(p)?;
    check_bivariate(q)?;
    if var_index > 1 {
        return Err(PolyError::IndexOutOfRange {
            index: var_index,
            nvars: 2,
        });
    }
    Ok(rec_resultant(
        &to_recursive(p, var_index)?,
        &to_recursive(q, var_index)?,
    ))
}
