//! Standard bases in the local ring at the origin and Milnor numbers.
//!
//! The engine is Mora's tangent cone algorithm: Buchberger pair completion
//! where every reduction is a weak normal form that may divide by a unit of
//! the local ring. With [`MonomialOrder::Global`] every ecart is zero and the
//! same code computes an ordinary Groebner basis, which the plane curve
//! module uses to count the solutions of zero-dimensional systems.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use num_traits::One;

use crate::coeff::{rat, uni_gcd, Coeff, ParamRat, Rat, UniPoly};
use crate::multipoly::{MPoly, Monomial, MonomialOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("the critical point at the origin is not isolated")]
    NonIsolated,
    #[error("the germ does not vanish at the origin")]
    NotVanishingAtOrigin,
    #[error("sampled specializations never agreed on a Milnor number")]
    SamplingDisagreement,
}

/// Dimension of a quotient ring, which may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuotientDim {
    Finite(u64),
    Infinite,
}

impl QuotientDim {
    pub fn finite(self) -> Option<u64> {
        match self {
            QuotientDim::Finite(n) => Some(n),
            QuotientDim::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardBasisResult<C> {
    pub basis: Vec<MPoly<C>>,
    /// Minimal generators of the lead ideal, sorted.
    pub lead_staircase: Vec<Monomial>,
    pub quotient_dimension: QuotientDim,
    /// Parameter values where a lead coefficient used during the run vanishes
    /// or has a pole. Sorted, without repeats; empty over `Rat`.
    pub bad_specializations: Vec<Rat>,
    /// Monic squarefree polynomial whose roots are the remaining such values,
    /// none of them rational. One when there are none.
    pub irrational_locus: UniPoly,
}

#[derive(Clone)]
struct Reducer<C> {
    poly: MPoly<C>,
    lm: Monomial,
    lc_inv: C,
    ecart: u32,
}

impl<C: Coeff> Reducer<C> {
    fn new(poly: MPoly<C>, order: MonomialOrder) -> Self {
        let (lm, lc) = poly.lead_term(order).expect("reducer is nonzero");
        let lm = lm.clone();
        let lc_inv = lc.inv().expect("lead coefficient is nonzero");
        let ecart = poly.ecart(order);
        Reducer {
            poly,
            lm,
            lc_inv,
            ecart,
        }
    }
}

/// Collects the coefficients whose vanishing would change the run.
struct Witness {
    values: BTreeSet<Rat>,
    irrational: UniPoly,
    seen: HashSet<String>,
}

impl Witness {
    fn new() -> Self {
        Witness {
            values: BTreeSet::new(),
            irrational: UniPoly::one(),
            seen: HashSet::new(),
        }
    }

    fn note<C: Coeff>(&mut self, c: &C) {
        if c.as_rat().is_some() || !self.seen.insert(c.to_string()) {
            return;
        }
        let poly = c.critical_polynomial();
        let roots = c.critical_values();
        let mut rest = poly.squarefree_part().expect("nonzero coefficient");
        for r in &roots {
            let linear = UniPoly::new(vec![-r.clone(), Rat::one()]);
            rest = rest.exact_div(&linear).unwrap_or(rest);
        }
        if !rest.is_constant() {
            let g = uni_gcd(&self.irrational, &rest);
            self.irrational = (&self.irrational * &rest).exact_div(&g).expect("gcd divides");
        }
        self.values.extend(roots);
    }
}

/// Weak normal form of `g` with respect to `gens` (Mora's algorithm).
///
/// The result `r` satisfies `u*g = sum q_i*gens_i + r` for a unit `u` of the
/// local ring, and the lead monomial of `r` is not divisible by any lead
/// monomial of `gens`. Among applicable reducers the one of least ecart wins,
/// ties going to the earliest.
pub fn mora_normal_form<C: Coeff>(g: &MPoly<C>, gens: &[MPoly<C>], order: MonomialOrder) -> MPoly<C> {
    let reducers: Vec<Reducer<C>> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| Reducer::new(p.clone(), order))
        .collect();
    normal_form(g, &reducers, order, &mut Witness::new())
}

fn normal_form<C: Coeff>(
    g: &MPoly<C>,
    basis: &[Reducer<C>],
    order: MonomialOrder,
    witness: &mut Witness,
) -> MPoly<C> {
    let mut h = g.clone();
    let mut extra: Vec<Reducer<C>> = Vec::new();
    loop {
        let Some((lm, lc)) = h.lead_term(order).map(|(m, c)| (m.clone(), c.clone())) else {
            return h;
        };
        witness.note(&lc);
        let best = basis
            .iter()
            .chain(extra.iter())
            .enumerate()
            .filter(|(_, r)| r.lm.divides(&lm))
            .min_by_key(|(_, r)| r.ecart)
            .map(|(i, _)| i);
        let Some(i) = best else {
            return h;
        };
        let red = if i < basis.len() {
            &basis[i]
        } else {
            &extra[i - basis.len()]
        };
        let h_ecart = h.ecart(order);
        let saved = (red.ecart > h_ecart).then(|| h.clone());
        let qm = red.lm.quotient_of(&lm);
        let qc = lc * red.lc_inv.clone();
        h.sub_scaled(&qm, &qc, &red.poly);
        if let Some(old) = saved {
            extra.push(Reducer::new(old, order));
        }
    }
}

/// Standard basis of the ideal generated by `gens` under `order`.
///
/// Pairs are processed by increasing degree of their lcm, then by creation
/// order; pairs with coprime lead monomials are skipped. Panics when `gens`
/// is empty.
pub fn standard_basis<C: Coeff>(gens: &[MPoly<C>], order: MonomialOrder) -> StandardBasisResult<C> {
    let nvars = gens.first().expect("at least one generator").nvars();
    let mut witness = Witness::new();
    let mut basis: Vec<Reducer<C>> = Vec::new();
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();

    let add = |p: MPoly<C>, basis: &mut Vec<Reducer<C>>, pairs: &mut BTreeSet<_>, w: &mut Witness| {
        let r = Reducer::new(p, order);
        w.note(&r.lc_inv);
        let k = basis.len();
        for (i, s) in basis.iter().enumerate() {
            pairs.insert((s.lm.lcm(&r.lm).degree(), k, i));
        }
        let unit = r.lm.is_one();
        basis.push(r);
        unit
    };

    let mut unit = false;
    for g in gens.iter().filter(|g| !g.is_zero()) {
        unit |= add(g.clone(), &mut basis, &mut pairs, &mut witness);
    }

    while !unit {
        let Some((_, j, i)) = pairs.pop_first() else {
            break;
        };
        let (a, b) = (&basis[i], &basis[j]);
        if a.lm.is_coprime(&b.lm) {
            continue;
        }
        let l = a.lm.lcm(&b.lm);
        let mut s = a.poly.mul_term(&a.lm.quotient_of(&l), &a.lc_inv);
        s.sub_scaled(&b.lm.quotient_of(&l), &b.lc_inv, &b.poly);
        let h = normal_form(&s, &basis, order, &mut witness);
        if !h.is_zero() {
            unit |= add(h, &mut basis, &mut pairs, &mut witness);
        }
    }

    let mut polys: Vec<MPoly<C>> = basis.into_iter().map(|r| r.poly).collect();
    if unit {
        polys.retain(|p| p.lead_monomial(order).is_some_and(Monomial::is_one));
        polys.truncate(1);
    }
    for p in &polys {
        for (_, c) in p.terms() {
            witness.note(c);
        }
    }
    let staircase = minimal_monomials(polys.iter().filter_map(|p| p.lead_monomial(order).cloned()));
    let quotient_dimension = count_standard_monomials(&staircase, nvars);
    StandardBasisResult {
        basis: polys,
        lead_staircase: staircase,
        quotient_dimension,
        bad_specializations: witness.values.into_iter().collect(),
        irrational_locus: witness.irrational,
    }
}

fn minimal_monomials(ms: impl Iterator<Item = Monomial>) -> Vec<Monomial> {
    let all: BTreeSet<Monomial> = ms.collect();
    all.iter()
        .filter(|m| !all.iter().any(|n| n != *m && n.divides(m)))
        .cloned()
        .collect()
}

/// Number of monomials outside the ideal generated by `staircase`.
pub fn count_standard_monomials(staircase: &[Monomial], nvars: usize) -> QuotientDim {
    if staircase.iter().any(Monomial::is_one) {
        return QuotientDim::Finite(0);
    }
    let mut bounds = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let b = staircase
            .iter()
            .filter(|m| m.pure_power_var() == Some(i))
            .map(|m| m.exponents()[i])
            .min();
        match b {
            Some(b) => bounds.push(b),
            None => return QuotientDim::Infinite,
        }
    }
    let mut count = 0u64;
    let mut e = vec![0u32; nvars];
    loop {
        let m = Monomial::new(e.clone());
        if !staircase.iter().any(|s| s.divides(&m)) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == nvars {
                return QuotientDim::Finite(count);
            }
            e[k] += 1;
            if e[k] < bounds[k] {
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

/// Dimension of the local ring at the origin modulo the given ideal.
pub fn local_quotient_dimension<C: Coeff>(gens: &[MPoly<C>]) -> QuotientDim {
    standard_basis(gens, MonomialOrder::Local).quotient_dimension
}

/// Dimension of the polynomial ring modulo the given ideal, which is the
/// number of solutions counted with multiplicity when it is finite.
pub fn global_quotient_dimension<C: Coeff>(gens: &[MPoly<C>]) -> QuotientDim {
    standard_basis(gens, MonomialOrder::Global).quotient_dimension
}

/// Milnor number of `g` at the origin: the local algebra modulo the Jacobian
/// ideal. Zero when `g` is nonsingular at the origin.
pub fn milnor_number<C: Coeff>(g: &MPoly<C>) -> Result<u64, MilnorError> {
    if g.is_zero() {
        return Err(MilnorError::NonIsolated);
    }
    if !g.vanishes_at_origin() {
        return Err(MilnorError::NotVanishingAtOrigin);
    }
    jacobian_result(g).quotient_dimension.finite().ok_or(MilnorError::NonIsolated)
}

fn jacobian_result<C: Coeff>(g: &MPoly<C>) -> StandardBasisResult<C> {
    standard_basis(&g.gradient(), MonomialOrder::Local)
}

/// How the generic member of the pencil `P + tQ` is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GenericMode {
    /// Exact computation over the parameter field `Q(t)`.
    #[default]
    Parametric,
    /// Pseudo-random rational values of `t` that must agree.
    Sampled { seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericMilnor {
    pub mu: u64,
    /// Superset of the values of `t` where the specialized Milnor number may
    /// differ. Empty in sampled mode.
    pub bad_specializations: Vec<Rat>,
    /// Irrational values of `t` of the same kind, as a polynomial.
    pub irrational_locus: UniPoly,
    /// The values of `t` tried in sampled mode.
    pub samples: Vec<Rat>,
}

/// Milnor number of `P + tQ` at the origin for generic `t`, computed over
/// `Q(t)`.
pub fn milnor_number_generic(p: &MPoly<Rat>, q: &MPoly<Rat>) -> Result<GenericMilnor, MilnorError> {
    milnor_number_generic_with(p, q, GenericMode::Parametric)
}

pub fn milnor_number_generic_with(
    p: &MPoly<Rat>,
    q: &MPoly<Rat>,
    mode: GenericMode,
) -> Result<GenericMilnor, MilnorError> {
    if !p.vanishes_at_origin() || !q.vanishes_at_origin() {
        return Err(MilnorError::NotVanishingAtOrigin);
    }
    match mode {
        GenericMode::Parametric => {
            let g = &p.to_param() + &q.to_param().scale(&ParamRat::param());
            if g.is_zero() {
                return Err(MilnorError::NonIsolated);
            }
            let sb = jacobian_result(&g);
            let mu = sb.quotient_dimension.finite().ok_or(MilnorError::NonIsolated)?;
            Ok(GenericMilnor {
                mu,
                bad_specializations: sb.bad_specializations,
                irrational_locus: sb.irrational_locus,
                samples: Vec::new(),
            })
        }
        GenericMode::Sampled { seed } => sampled_generic(p, q, seed),
    }
}

const MAX_SAMPLES: usize = 8;

// Upper semicontinuity makes every specialization at least the generic value,
// so the smallest value seen twice is accepted.
fn sampled_generic(p: &MPoly<Rat>, q: &MPoly<Rat>, seed: u64) -> Result<GenericMilnor, MilnorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples: Vec<Rat> = Vec::new();
    let mut values: Vec<Option<u64>> = Vec::new();
    while samples.len() < MAX_SAMPLES {
        let t = rat(rng.gen_range(-97..=97), rng.gen_range(1..=13));
        if samples.contains(&t) {
            continue;
        }
        let g = p + &q.scale(&t);
        let mu = match milnor_number(&g) {
            Ok(m) => Some(m),
            Err(MilnorError::NonIsolated) => None,
            Err(e) => return Err(e),
        };
        samples.push(t);
        values.push(mu);
        if values.len() < 2 {
            continue;
        }
        let finite: Vec<u64> = values.iter().flatten().copied().collect();
        if let Some(&min) = finite.iter().min() {
            if finite.iter().filter(|&&m| m == min).count() >= 2 {
                return Ok(GenericMilnor {
                    mu: min,
                    bad_specializations: Vec::new(),
                    irrational_locus: UniPoly::one(),
                    samples,
                });
            }
        } else if values.len() >= 2 {
            return Err(MilnorError::NonIsolated);
        }
    }
    Err(MilnorError::SamplingDisagreement)
}
