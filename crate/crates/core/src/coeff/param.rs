use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{uni_gcd, Coeff, CoeffError, Rat, UniPoly};

/// Element of the rational function field `Q(t)`.
///
/// Kept canonical: numerator and denominator coprime, denominator monic, so
/// structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParamRat {
    num: UniPoly,
    den: UniPoly,
}

impl ParamRat {
    /// Panics if `den` is zero.
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in rational function");
        if num.is_zero() {
            return Self::zero();
        }
        let g = uni_gcd(&num, &den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let lc = den.leading_coeff().unwrap().recip();
        ParamRat {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        ParamRat {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// The parameter itself.
    pub fn param() -> Self {
        Self::from_poly(UniPoly::var())
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Value at `t = v`.
    pub fn specialize(&self, v: &Rat) -> Result<Rat, CoeffError> {
        let d = self.den.eval(v);
        if d.is_zero() {
            return Err(CoeffError::PoleAtValue(v.clone()));
        }
        Ok(self.num.eval(v) / d)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.den.is_one() {
            if self.num.is_constant() {
                return self.num.display_in(var);
            }
            return format!("({})", self.num.display_in(var));
        }
        format!("({})/({})", self.num.display_in(var), self.den.display_in(var))
    }
}

/// `(t^2/(t+1), 1) -> 1/2`; fails with `PoleAtValue` when the chosen value is
/// not generic for `r`.
pub fn param_specialize(r: &ParamRat, v: &Rat) -> Result<Rat, CoeffError> {
    r.specialize(v)
}

impl fmt::Display for ParamRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl Zero for ParamRat {
    fn zero() -> Self {
        ParamRat {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for ParamRat {
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
}

impl Add for ParamRat {
    type Output = ParamRat;
    fn add(self, rhs: ParamRat) -> ParamRat {
        if self.den == rhs.den {
            return ParamRat::new(&self.num + &rhs.num, self.den);
        }
        ParamRat::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for ParamRat {
    type Output = ParamRat;
    fn sub(self, rhs: ParamRat) -> ParamRat {
        self + (-rhs)
    }
}

impl Mul for ParamRat {
    type Output = ParamRat;
    fn mul(self, rhs: ParamRat) -> ParamRat {
        if self.is_zero() || rhs.is_zero() {
            return ParamRat::zero();
        }
        ParamRat::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for ParamRat {
    type Output = ParamRat;
    /// Panics when dividing by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: ParamRat) -> ParamRat {
        self * rhs.inv().expect("division by zero in Q(t)")
    }
}

impl Neg for ParamRat {
    type Output = ParamRat;
    fn neg(self) -> ParamRat {
        ParamRat {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Coeff for ParamRat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(ParamRat::new(self.den.clone(), self.num.clone()))
        }
    }

    fn from_rat(r: Rat) -> Self {
        Self::constant(r)
    }

    fn critical_values(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        for p in [&self.num, &self.den] {
            if !p.is_constant() {
                out.extend(p.rational_roots().expect("nonzero polynomial"));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    fn critical_polynomial(&self) -> UniPoly {
        &self.num * &self.den
    }

    fn as_rat(&self) -> Option<Rat> {
        self.is_constant()
            .then(|| self.num.coeff(0) / self.den.coeff(0))
    }
}
