use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{format_rat, CoeffError, Rat};

/// Dense univariate polynomial over the rationals, coefficients stored from
/// the constant term upwards. The leading coefficient is never zero; the zero
/// polynomial has no coefficients and degree `None`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn var() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Scales to leading coefficient one. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![Rat::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Quotient of an exact division; `None` when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::ZeroInput);
        }
        let g = uni_gcd(self, &self.derivative());
        Ok(self.div_rem(&g).0.monic())
    }

    /// Integer coefficients with content one and positive leading coefficient,
    /// proportional to `self`.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return ints;
        }
        let sign = if ints.last().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// All rational roots, each listed once, in increasing order.
    ///
    /// Real roots of the squarefree part are isolated with a Sturm sequence
    /// until every isolating interval is shorter than `1/|lc|`; a rational
    /// root `p/q` of a primitive integer polynomial has `q | lc`, so each
    /// interval holds at most one candidate `k/|lc|`, which is then checked by
    /// exact evaluation.
    pub fn rational_roots(&self) -> Result<Vec<Rat>, CoeffError> {
        let sf = self.squarefree_part()?;
        let mut found = BTreeSet::new();
        let mut ints = sf.primitive_integer_coeffs();
        if ints.first().is_some_and(Zero::is_zero) {
            found.insert(Rat::zero());
            ints.remove(0);
        }
        if ints.len() <= 1 {
            return Ok(found.into_iter().collect());
        }
        let poly = UniPoly::new(ints.iter().cloned().map(Rat::from_integer).collect());
        let lc = Rat::from_integer(ints.last().unwrap().abs());
        let bound = Rat::one()
            + ints[..ints.len() - 1]
                .iter()
                .map(|c| Rat::from_integer(c.abs()) / &lc)
                .max()
                .unwrap_or_else(Rat::zero);
        let sturm = sturm_sequence(&poly);
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let count = sign_variations(&sturm, &lo) - sign_variations(&sturm, &hi);
            if count == 0 {
                continue;
            }
            if count == 1 && (&hi - &lo) * &lc < Rat::one() {
                let k = (&hi * &lc).floor();
                let candidate = &k / &lc;
                if candidate > lo && poly.eval(&candidate).is_zero() {
                    found.insert(candidate);
                }
                continue;
            }
            let mut mid = (&lo + &hi) / Rat::from_integer(2.into());
            if poly.eval(&mid).is_zero() {
                found.insert(mid.clone());
                // shift the split point off the root
                let mut step = (&hi - &lo) / Rat::from_integer(8.into());
                while poly.eval(&(&mid + &step)).is_zero() {
                    step /= Rat::from_integer(2.into());
                }
                mid += step;
            }
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        Ok(found.into_iter().collect())
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&format_rat(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", format_rat(&a), mono));
            }
        }
        out
    }
}

fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    seq
}

fn sign_variations(seq: &[UniPoly], x: &Rat) -> i64 {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Monic greatest common divisor; `uni_gcd(a, 0) = monic(a)`.
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        // x^2-1, x^2-2x+1 -> x-1
        assert_eq!(uni_gcd(&p(&[-1, 0, 1]), &p(&[1, -2, 1])), p(&[-1, 1]));
        assert_eq!(uni_gcd(&p(&[0, 0, 0, 1]), &p(&[0, 0, 1])), p(&[0, 0, 1]));
        assert_eq!(uni_gcd(&p(&[1, 0, 1]), &p(&[-1, 0, 1])), UniPoly::one());
        assert_eq!(uni_gcd(&p(&[2, 4]), &UniPoly::zero()), p(&[1, 2]).monic());
    }

    #[test]
    fn squarefree_examples() {
        // x(x-1)^2 = x^3 - 2x^2 + x
        assert_eq!(p(&[0, 1, -2, 1]).squarefree_part().unwrap(), p(&[0, -1, 1]));
        assert_eq!(p(&[0, 0, 0, 1]).squarefree_part().unwrap(), p(&[0, 1]));
        assert_eq!(p(&[1, 0, 1]).squarefree_part().unwrap(), p(&[1, 0, 1]));
        assert_eq!(UniPoly::zero().squarefree_part(), Err(CoeffError::ZeroInput));
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!(
            p(&[-1, -1, 2]).rational_roots().unwrap(),
            vec![rat(-1, 2), rat(1, 1)]
        );
        assert!(p(&[1, 0, 1]).rational_roots().unwrap().is_empty());
        assert_eq!(
            p(&[0, -1, 0, 1]).rational_roots().unwrap(),
            vec![rat(-1, 1), rat(0, 1), rat(1, 1)]
        );
        assert_eq!(UniPoly::zero().rational_roots(), Err(CoeffError::ZeroInput));
    }

    #[test]
    fn rational_roots_close_together_and_repeated() {
        // (6x - 1)(7x - 1)(x - 1000)^3 (x^2 - 2)
        let f = &(&(&p(&[-1, 6]) * &p(&[-1, 7])) * &p(&[-1000, 1]).pow(3)) * &p(&[-2, 0, 1]);
        assert_eq!(
            f.rational_roots().unwrap(),
            vec![rat(1, 7), rat(1, 6), rat(1000, 1)]
        );
    }

    #[test]
    fn rational_roots_with_large_coefficients() {
        // (123456789 x - 987654321)(x + 3/5)
        let f = &p(&[-987654321, 123456789]) * &UniPoly::new(vec![rat(3, 5), rat(1, 1)]);
        assert_eq!(
            f.rational_roots().unwrap(),
            vec![rat(-3, 5), rat(987654321, 123456789)]
        );
    }

    #[test]
    fn division_identity() {
        let a = p(&[3, -1, 4, 1, -5]);
        let b = p(&[2, 0, 7]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 2]).display_in("x"), "2*x^2 - 1");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_poly() -> impl Strategy<Value = UniPoly> {
            proptest::collection::vec(-6i64..6, 1..6).prop_map(|c| UniPoly::from_ints(&c))
        }

        proptest! {
            #![proptest_config(ProptestConfig { cases: 96, rng_seed: proptest::test_runner::RngSeed::Fixed(3), ..ProptestConfig::default() })]

            #[test]
            fn gcd_divides_both(a in small_poly(), b in small_poly(), c in small_poly()) {
                prop_assume!(!a.is_zero() && !b.is_zero());
                let (a, b) = (&a * &c, &b * &c);
                prop_assume!(!a.is_zero());
                let g = uni_gcd(&a, &b);
                prop_assert!(a.exact_div(&g).is_some());
                prop_assert!(b.exact_div(&g).is_some());
                if !c.is_zero() {
                    prop_assert!(g.exact_div(&c.monic()).is_some());
                }
            }

            #[test]
            fn squarefree_part_has_simple_roots(a in small_poly(), b in small_poly()) {
                let f = &(&a * &a) * &b;
                prop_assume!(!f.is_zero());
                let s = f.squarefree_part().unwrap();
                prop_assert!(f.exact_div(&s).is_some());
                prop_assert!(uni_gcd(&s, &s.derivative()).is_one());
            }

            #[test]
            fn rational_roots_are_roots(a in small_poly(), r in (-9i64..9, 1i64..5)) {
                let root = rat(r.0, r.1);
                let f = &a * &UniPoly::new(vec![-root.clone(), Rat::one()]);
                prop_assume!(!f.is_zero());
                let roots = f.rational_roots().unwrap();
                prop_assert!(roots.contains(&root));
                for x in &roots {
                    prop_assert!(f.eval(x).is_zero());
                }
            }
        }
    }
}
