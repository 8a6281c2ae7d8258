//! Integration with respect to the Euler characteristic over finite
//! stratifications.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EulerError {
    #[error("stratum label {0:?} appears twice")]
    DuplicateLabel(String),
    #[error("function and stratification have different domains: {0}")]
    DomainMismatch(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Finitely many labelled strata with their Euler characteristics.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Stratification {
    strata: BTreeMap<String, i64>,
}

impl Stratification {
    pub fn new<I, S>(strata: I) -> Result<Self, EulerError>
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        let mut out = BTreeMap::new();
        for (label, chi) in strata {
            let label = label.into();
            if out.insert(label.clone(), chi).is_some() {
                return Err(EulerError::DuplicateLabel(label));
            }
        }
        Ok(Stratification { strata: out })
    }

    pub fn strata(&self) -> impl Iterator<Item = (&str, i64)> {
        self.strata.iter().map(|(l, &c)| (l.as_str(), c))
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    /// Disjoint union; labels must not collide.
    pub fn union(&self, other: &Stratification) -> Result<Self, EulerError> {
        Self::new(self.strata().chain(other.strata()))
    }
}

/// An integer-valued function constant on each stratum.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstructibleFn {
    values: BTreeMap<String, i64>,
}

impl ConstructibleFn {
    pub fn new<I, S>(values: I) -> Result<Self, EulerError>
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        let mut out = BTreeMap::new();
        for (label, v) in values {
            let label = label.into();
            if out.insert(label.clone(), v).is_some() {
                return Err(EulerError::DuplicateLabel(label));
            }
        }
        Ok(ConstructibleFn { values: out })
    }

    pub fn value(&self, label: &str) -> Option<i64> {
        self.values.get(label).copied()
    }

    /// `a*self + b*other`; the domains must agree.
    pub fn combine(&self, a: i64, other: &ConstructibleFn, b: i64) -> Result<Self, EulerError> {
        if self.values.keys().ne(other.values.keys()) {
            return Err(EulerError::DomainMismatch("the two functions".into()));
        }
        let values = self
            .values
            .iter()
            .map(|(l, &v)| (l.clone(), a * v + b * other.values[l]))
            .collect();
        Ok(ConstructibleFn { values })
    }

    /// Function on a disjoint union.
    pub fn union(&self, other: &ConstructibleFn) -> Result<Self, EulerError> {
        Self::new(
            self.values
                .iter()
                .chain(other.values.iter())
                .map(|(l, &v)| (l.clone(), v)),
        )
    }
}

/// `sum over strata of value * chi`.
pub fn integrate(f: &ConstructibleFn, s: &Stratification) -> Result<i64, EulerError> {
    if let Some(l) = s.strata.keys().find(|l| !f.values.contains_key(*l)) {
        return Err(EulerError::DomainMismatch(format!("no value on stratum {l:?}")));
    }
    if let Some(l) = f.values.keys().find(|l| !s.strata.contains_key(*l)) {
        return Err(EulerError::DomainMismatch(format!("value on unknown stratum {l:?}")));
    }
    Ok(s.strata.iter().map(|(l, chi)| chi * f.values[l]).sum())
}

/// Right-hand side of the generalized formula: `sum (chi_x - 1)` over the
/// isolated singular points of `Z` off `Z'`, plus the sum of `chi0` over
/// `Z ∩ Z'`. Points count with Euler characteristic one.
pub fn rhs_theorem4(singular_chis: &[i64], intersection_chi0: &[i64]) -> i64 {
    rhs_formula2(singular_chis) + intersection_chi0.iter().sum::<i64>()
}

/// Right-hand side when `Z'` is transversal: `sum (chi_x - 1)`.
pub fn rhs_formula2(singular_chis: &[i64]) -> i64 {
    singular_chis.iter().map(|c| c - 1).sum()
}

/// Reads `label chi value` lines; `#` starts a comment.
pub fn parse_strata(text: &str) -> Result<(Stratification, ConstructibleFn), EulerError> {
    let mut strata = Vec::new();
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| EulerError::Parse { line: i + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [label, chi, value] = fields[..] else {
            return Err(parse_err(format!("expected `label chi value`, got {line:?}")));
        };
        let chi: i64 = chi.parse().map_err(|_| parse_err(format!("bad Euler characteristic {chi:?}")))?;
        let value: i64 = value.parse().map_err(|_| parse_err(format!("bad value {value:?}")))?;
        strata.push((label.to_string(), chi));
        values.push((label.to_string(), value));
    }
    Ok((Stratification::new(strata)?, ConstructibleFn::new(values)?))
}
