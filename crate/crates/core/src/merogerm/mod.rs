//! Meromorphic germs `f = P/Q` at the origin and the Euler characteristics
//! of their Milnor fibres.
//!
//! The fibre over `c` of `P/Q` is the fibre over `0` of `(P - cQ)/Q`, and the
//! fibre over infinity is the fibre over `0` of `Q/P`. For the zero fibre
//! the Euler characteristic is `(-1)^(nvars-1) * (mu(P) - mu(P + tQ))` with
//! `t` generic.

use std::fmt;

use thiserror::Error;

use crate::coeff::{format_rat, rat_int, ParamRat, Rat, UniPoly};
use crate::localstd::{milnor_number, milnor_number_generic_with, standard_basis, GenericMode, MilnorError};
use crate::multipoly::{bivariate_gcd, MPoly, MonomialOrder};

const TYPICALITY_NOTE: &str = "; the chi = 0 test for typical values needs an isolated critical point \
     (compare x^2*y^2/(x^4 + y^4) at 0, whose numerator is non-isolated)";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeroError {
    #[error("numerator {numerator} has a non-isolated critical point at the origin{note}")]
    NonIsolatedNumerator { numerator: String, note: &'static str },
    #[error("numerator and denominator share the component {0} through the origin")]
    CommonComponent(String),
    #[error("numerator and denominator must both vanish at the origin")]
    IndeterminacyMissingAtOrigin,
    #[error("P/Q is constant")]
    ConstantGerm,
    #[error("P - cQ vanishes identically for c = {0}")]
    ValueIsConstantGerm(String),
    #[error("P - cQ has a non-isolated critical point at the origin for generic c")]
    GenericallyNonIsolated,
    #[error("numerator has {numerator} variables, denominator {denominator}")]
    ArityMismatch { numerator: usize, denominator: usize },
    #[error("sampled values of t never agreed on a Milnor number")]
    SamplingDisagreement,
}

impl MeroError {
    fn non_isolated(numerator: &MPoly<Rat>) -> Self {
        MeroError::NonIsolatedNumerator {
            numerator: numerator.to_string(),
            note: "",
        }
    }
}

/// The germ `P/Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeroGerm {
    p: MPoly<Rat>,
    q: MPoly<Rat>,
}

impl MeroGerm {
    /// Rejects zero parts and proportional pairs.
    pub fn new(p: MPoly<Rat>, q: MPoly<Rat>) -> Result<Self, MeroError> {
        if p.nvars() != q.nvars() {
            return Err(MeroError::ArityMismatch {
                numerator: p.nvars(),
                denominator: q.nvars(),
            });
        }
        if p.is_zero() || q.is_zero() {
            return Err(MeroError::ConstantGerm);
        }
        let (_, lp) = p.lead_term(MonomialOrder::Global).expect("nonzero");
        let (_, lq) = q.lead_term(MonomialOrder::Global).expect("nonzero");
        if p.scale(lq) == q.scale(lp) {
            return Err(MeroError::ConstantGerm);
        }
        Ok(MeroGerm { p, q })
    }

    pub fn numerator(&self) -> &MPoly<Rat> {
        &self.p
    }

    pub fn denominator(&self) -> &MPoly<Rat> {
        &self.q
    }

    pub fn nvars(&self) -> usize {
        self.p.nvars()
    }
}

impl fmt::Display for MeroGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.p, self.q)
    }
}

/// A value of `f`: a rational number or infinity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FibreValue {
    Finite(Rat),
    Infinity,
}

impl fmt::Display for FibreValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FibreValue::Finite(c) => f.write_str(&format_rat(c)),
            FibreValue::Infinity => f.write_str("inf"),
        }
    }
}

impl From<Rat> for FibreValue {
    fn from(c: Rat) -> Self {
        FibreValue::Finite(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Typicality {
    Typical,
    Atypical,
    NotDecided,
}

impl fmt::Display for Typicality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Typicality::Typical => "typical",
            Typicality::Atypical => "atypical",
            Typicality::NotDecided => "not decided",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibreReport {
    pub value: FibreValue,
    pub chi: i64,
    /// Milnor number of the numerator of the reduced germ.
    pub mu_special: u64,
    pub mu_generic: u64,
    pub typical: Typicality,
}

fn sign(nvars: usize) -> i64 {
    if nvars % 2 == 1 {
        1
    } else {
        -1
    }
}

// the zero fibre of num/den, reported under the label `value`
fn zero_fibre_of(
    num: &MPoly<Rat>,
    den: &MPoly<Rat>,
    value: FibreValue,
    mode: GenericMode,
) -> Result<FibreReport, MeroError> {
    if !num.vanishes_at_origin() || !den.vanishes_at_origin() {
        return Err(MeroError::IndeterminacyMissingAtOrigin);
    }
    if num.nvars() == 2 {
        let g = bivariate_gcd(num, den).expect("nonzero inputs");
        if !g.is_constant() && g.vanishes_at_origin() {
            return Err(MeroError::CommonComponent(g.to_string()));
        }
    }
    let mu_special = milnor_number(num).map_err(|_| MeroError::non_isolated(num))?;
    let generic = milnor_number_generic_with(num, den, mode).map_err(|e| match e {
        MilnorError::SamplingDisagreement => MeroError::SamplingDisagreement,
        _ => MeroError::GenericallyNonIsolated,
    })?;
    let mu_generic = generic.mu;
    let chi = sign(num.nvars()) * (mu_special as i64 - mu_generic as i64);
    let typical = if chi == 0 {
        Typicality::Typical
    } else {
        Typicality::Atypical
    };
    Ok(FibreReport {
        value,
        chi,
        mu_special,
        mu_generic,
        typical,
    })
}

pub fn chi_zero_fibre(f: &MeroGerm) -> Result<FibreReport, MeroError> {
    chi_c_fibre(f, &FibreValue::Finite(rat_int(0)))
}

pub fn chi_c_fibre(f: &MeroGerm, c: &FibreValue) -> Result<FibreReport, MeroError> {
    chi_c_fibre_with(f, c, GenericMode::Parametric)
}

pub fn chi_c_fibre_with(f: &MeroGerm, c: &FibreValue, mode: GenericMode) -> Result<FibreReport, MeroError> {
    match c {
        FibreValue::Finite(v) => {
            let num = &f.p - &f.q.scale(v);
            if num.is_zero() {
                return Err(MeroError::ValueIsConstantGerm(format_rat(v)));
            }
            zero_fibre_of(&num, &f.q, c.clone(), mode)
        }
        FibreValue::Infinity => zero_fibre_of(&f.q, &f.p, c.clone(), mode),
    }
}

/// Whether `c` is a typical value of `f`, decided by `chi = 0`.
pub fn is_typical(f: &MeroGerm, c: &FibreValue) -> Result<bool, MeroError> {
    is_typical_with(f, c, GenericMode::Parametric)
}

pub fn is_typical_with(f: &MeroGerm, c: &FibreValue, mode: GenericMode) -> Result<bool, MeroError> {
    match chi_c_fibre_with(f, c, mode) {
        Ok(r) => Ok(r.chi == 0),
        Err(MeroError::NonIsolatedNumerator { numerator, .. }) => Err(MeroError::NonIsolatedNumerator {
            numerator,
            note: TYPICALITY_NOTE,
        }),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub value: FibreValue,
    pub verdict: Typicality,
    pub report: Option<FibreReport>,
    /// Why the verdict is [`Typicality::NotDecided`].
    pub reason: Option<MeroError>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialValues {
    /// Milnor number of `P - cQ` for generic `c`.
    pub mu_generic: u64,
    /// Every rational value of `f` that can be atypical, plus `0` and
    /// infinity, each verified. Finite values come first, sorted.
    pub candidates: Vec<Candidate>,
    /// Monic squarefree polynomial in `c` whose roots are further candidates
    /// that are not rational and were not examined; one when there are none.
    pub irrational_locus: UniPoly,
}

impl SpecialValues {
    pub fn atypical(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates.iter().filter(|c| c.verdict == Typicality::Atypical)
    }
}

pub fn special_values(f: &MeroGerm) -> Result<SpecialValues, MeroError> {
    special_values_with(f, GenericMode::Parametric)
}

/// Candidate atypical values: the values of `c` where the standard basis of
/// the Jacobian ideal of `P - cQ` over `Q(c)` may fail to specialize, with
/// `0` and infinity added. Each candidate is then examined exactly.
pub fn special_values_with(f: &MeroGerm, mode: GenericMode) -> Result<SpecialValues, MeroError> {
    if !f.p.vanishes_at_origin() || !f.q.vanishes_at_origin() {
        return Err(MeroError::IndeterminacyMissingAtOrigin);
    }
    let c = ParamRat::param();
    let pencil = &f.p.to_param() - &f.q.to_param().scale(&c);
    let sb = standard_basis(&pencil.gradient(), MonomialOrder::Local);
    let mu_generic = sb.quotient_dimension.finite().ok_or(MeroError::GenericallyNonIsolated)?;

    let mut values: Vec<FibreValue> = sb
        .bad_specializations
        .iter()
        .cloned()
        .map(FibreValue::Finite)
        .collect();
    let zero = FibreValue::Finite(rat_int(0));
    if !values.contains(&zero) {
        values.push(zero);
    }
    values.sort();
    values.push(FibreValue::Infinity);

    let candidates = values
        .into_iter()
        .map(|value| match chi_c_fibre_with(f, &value, mode) {
            Ok(r) => Candidate {
                value,
                verdict: r.typical,
                report: Some(r),
                reason: None,
            },
            Err(e) => Candidate {
                value,
                verdict: Typicality::NotDecided,
                report: None,
                reason: Some(e),
            },
        })
        .collect();
    Ok(SpecialValues {
        mu_generic,
        candidates,
        irrational_locus: sb.irrational_locus,
    })
}

/// Euler characteristic of the fibre over a value outside every candidate.
pub fn chi_generic_fibre(f: &MeroGerm) -> Result<i64, MeroError> {
    let sv = special_values(f)?;
    let c = generic_value(&sv);
    Ok(chi_c_fibre(f, &c)?.chi)
}

/// Smallest positive integer that is not a candidate.
pub fn generic_value(sv: &SpecialValues) -> FibreValue {
    (1..)
        .map(|k| FibreValue::Finite(rat_int(k)))
        .find(|v| sv.candidates.iter().all(|c| c.value != *v))
        .expect("finitely many candidates")
}

#[cfg(test)]
mod tests;
