//! Sparse multivariate polynomials over an exact coefficient field.

mod bivariate;
mod order;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use thiserror::Error;

use crate::coeff::{Coeff, CoeffError, ParamRat, Rat};

pub use bivariate::{bivariate_gcd, from_recursive, resultant_eliminate, to_recursive};
pub use order::MonomialOrder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("substitution arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("expected a polynomial in {expected} variables, got {actual}")]
    WrongArity { expected: usize, actual: usize },
    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,
}

/// Exponent vector of a monomial; the length is the number of variables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` when this is a pure power `x_i^k`, `k >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut nonzero = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        let first = nonzero.next()?;
        nonzero.next().is_none().then_some(first.0)
    }
}

/// A polynomial in `nvars` variables stored as a map from monomials to
/// nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> MPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::term(Monomial::var(nvars, index), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { nvars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree of a term (the order of vanishing at the origin).
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn lead_term(&self, order: MonomialOrder) -> Option<(&Monomial, &C)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn lead_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.lead_term(order).map(|(m, _)| m)
    }

    /// Degree spread beyond the lead term: `max deg - deg LM`.
    pub fn ecart(&self, order: MonomialOrder) -> u32 {
        match (self.total_degree(), self.lead_monomial(order)) {
            (Some(d), Some(m)) => d - m.degree(),
            _ => 0,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.clone() * c.clone()))
                .collect(),
        }
    }

    /// `self - c * m * other`, in place.
    pub fn sub_scaled(&mut self, m: &Monomial, c: &C, other: &Self) {
        for (n, a) in &other.terms {
            self.add_term(n.mul(m), -(a.clone() * c.clone()));
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars);
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    v = v * x.clone();
                }
            }
            acc = acc + v;
        }
        acc
    }

    pub fn partial_derivative(&self, var_index: usize) -> Result<Self, PolyError> {
        if var_index >= self.nvars {
            return Err(PolyError::IndexOutOfRange {
                index: var_index,
                nvars: self.nvars,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var_index];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[var_index] -= 1;
            out.add_term(dm, c.clone() * C::from_rat(Rat::from_integer(e.into())));
        }
        Ok(out)
    }

    /// All first partial derivatives.
    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars)
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// Composition `self(assignment[0], ..., assignment[n-1])`.
    pub fn substitute(&self, assignment: &[Self]) -> Result<Self, PolyError> {
        if assignment.len() != self.nvars {
            return Err(PolyError::ArityMismatch(format!(
                "{} polynomials for {} variables",
                assignment.len(),
                self.nvars
            )));
        }
        let Some(target) = assignment.first().map(MPoly::nvars) else {
            return Ok(self.clone());
        };
        if assignment.iter().any(|a| a.nvars != target) {
            return Err(PolyError::ArityMismatch(
                "assignment polynomials have different variable counts".into(),
            ));
        }
        let mut powers: Vec<Vec<Self>> = assignment.iter().map(|a| vec![Self::one(target), a.clone()]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &assignment[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Multiplies each term by a power of a new last variable so that every
    /// term has total degree `degree`. Panics if some term exceeds it.
    pub fn homogenize(&self, degree: u32) -> Self {
        let mut out = Self::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let d = m.degree();
            assert!(d <= degree, "term of degree {d} exceeds {degree}");
            let mut e = m.0.clone();
            e.push(degree - d);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Sets variable `var` to the constant `value` and drops it.
    pub fn restrict(&self, var: usize, value: &C) -> Self {
        let mut out = Self::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for _ in 0..m.0[var] {
                v = v * value.clone();
            }
            let mut e = m.0.clone();
            e.remove(var);
            out.add_term(Monomial(e), v);
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Scales so the lead coefficient under `order` is one.
    pub fn make_monic(&self, order: MonomialOrder) -> Self {
        match self.lead_term(order) {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero lead coefficient")),
            None => self.clone(),
        }
    }

    /// Renders the polynomial with the given variable names. Terms are listed
    /// by decreasing degree (graded reverse lexicographic).
    pub fn display_with(&self, names: &[&str]) -> String {
        assert!(names.len() >= self.nvars);
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| MonomialOrder::Global.cmp(b.0, a.0));
        let mut out = String::new();
        for (m, c) in terms {
            let (neg, mag) = match c.as_rat() {
                Some(r) if r < Rat::zero() => (true, C::from_rat(-r)),
                _ => (false, c.clone()),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].to_string()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

/// Conventional names for small variable counts: `x, y, z`, else `x1..xn`.
pub fn default_var_names(nvars: usize) -> Vec<String> {
    if nvars <= 3 {
        ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl<C: Coeff> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&refs))
    }
}

impl MPoly<Rat> {
    /// Embeds into polynomials over `Q(t)`.
    pub fn to_param(&self) -> MPoly<ParamRat> {
        self.map_coeffs(|c| ParamRat::constant(c.clone()))
    }
}

impl MPoly<ParamRat> {
    /// Substitutes the value `v` for the parameter in every coefficient.
    pub fn specialize(&self, v: &Rat) -> Result<MPoly<Rat>, CoeffError> {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.specialize(v)?);
        }
        Ok(out)
    }
}

impl<C: Coeff> Add for &MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, rhs: &MPoly<C>) -> MPoly<C> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, rhs: &MPoly<C>) -> MPoly<C> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, rhs: &MPoly<C>) -> MPoly<C> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MPoly::zero(self.nvars);
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a.clone() * b.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for MPoly<C> {
            type Output = MPoly<C>;
            fn $m(self, rhs: MPoly<C>) -> MPoly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Neg for MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        -&self
    }
}
