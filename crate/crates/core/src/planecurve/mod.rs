//! Plane curves: singular points, Euler characteristics of projective
//! closures, and two global checks. One compares level sets of a polynomial
//! in two variables; the other compares a curve with a smooth curve of the
//! same degree.
//!
//! Projective points are written `[x:y:z]` and scaled so that the last
//! nonzero coordinate is one; that coordinate also selects the affine chart.

mod zeros;

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::coeff::{format_rat, rat_int, Rat, UniPoly};
use crate::eulerint::{rhs_formula2, rhs_theorem4};
use crate::localstd::{local_quotient_dimension, milnor_number, milnor_number_generic, MilnorError};
use crate::merogerm::{chi_zero_fibre, MeroError, MeroGerm};
use crate::multipoly::{bivariate_gcd, MPoly};

use zeros::{gcd_all, irrational_root_count, rational_zeros, to_uni, translate, ZeroSetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("the point {0} is not on the curve")]
    PointNotOnCurve(String),
    #[error("expected {expected}")]
    BadInput { expected: &'static str },
    #[error("the level set {0} = 0 is not reduced")]
    NonReducedLevel(String),
    #[error("the curve {0} = 0 is not reduced")]
    NonReduced(String),
    #[error("singular points with irrational coordinates: {0}")]
    IrrationalSingularityDetected(String),
    #[error("the reference curve {0} = 0 is singular")]
    NonSmoothReference(String),
    #[error("intersection points with irrational coordinates: {0}")]
    IrrationalIntersection(String),
    #[error("the curves share a component")]
    InfiniteIntersection,
    #[error("no level with a verified generic closure among the values tried")]
    NoGenericLevel,
    #[error(transparent)]
    Germ(#[from] MeroError),
}

/// A projective point with rational coordinates, last nonzero coordinate one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint(pub [Rat; 3]);

impl ProjPoint {
    /// Scales so the last nonzero coordinate is one. Panics on `[0:0:0]`.
    pub fn new(coords: [Rat; 3]) -> Self {
        let k = (0..3).rev().find(|&i| !coords[i].is_zero()).expect("nonzero point");
        let s = coords[k].clone();
        ProjPoint(coords.map(|c| c / s.clone()))
    }

    pub fn affine(x: Rat, y: Rat) -> Self {
        ProjPoint([x, y, Rat::one()])
    }

    pub fn is_at_infinity(&self) -> bool {
        self.0[2].is_zero()
    }

    /// Index of the coordinate set to one in the chart around this point.
    pub fn chart(&self) -> usize {
        (0..3).rev().find(|&i| !self.0[i].is_zero()).expect("nonzero point")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.0;
        write!(f, "[{}:{}:{}]", format_rat(x), format_rat(y), format_rat(z))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSingularity {
    pub location: ProjPoint,
    pub mu: u64,
    pub at_infinity: bool,
}

fn check_form(f: &MPoly<Rat>) -> Result<u32, CurveError> {
    if f.nvars() != 3 || f.is_zero() || !f.is_homogeneous() {
        return Err(CurveError::BadInput {
            expected: "a nonzero homogeneous polynomial in x, y, z",
        });
    }
    Ok(f.total_degree().expect("nonzero"))
}

/// The germ of `{f = 0}` at `point`: set the chart coordinate to one, then
/// move the point to the origin. The remaining variables keep their order.
pub fn chart_germ(f: &MPoly<Rat>, point: &ProjPoint) -> Result<MPoly<Rat>, CurveError> {
    check_form(f)?;
    if !f.eval(&point.0).is_zero() {
        return Err(CurveError::PointNotOnCurve(point.to_string()));
    }
    let k = point.chart();
    let affine = f.restrict(k, &Rat::one());
    let rest: Vec<Rat> = (0..3).filter(|&i| i != k).map(|i| point.0[i].clone()).collect();
    Ok(translate(&affine, &rest))
}

/// Whether a bivariate polynomial has no repeated factor: `g` and its two
/// partial derivatives have no common factor.
pub fn is_squarefree_bivariate(g: &MPoly<Rat>) -> bool {
    if g.is_zero() {
        return false;
    }
    if g.is_constant() {
        return true;
    }
    let mut acc = g.clone();
    for d in g.gradient() {
        if !d.is_zero() {
            acc = bivariate_gcd(&acc, &d).expect("nonzero bivariate");
        }
    }
    acc.is_constant()
}

/// Whether a ternary form has no repeated factor.
pub fn is_squarefree_form(f: &MPoly<Rat>) -> bool {
    let Ok(d) = check_form(f) else {
        return false;
    };
    let z_power = f.terms().map(|(m, _)| m.exponents()[2]).min().unwrap_or(0);
    let affine = f.restrict(2, &Rat::one());
    if affine.is_constant() {
        return d <= 1;
    }
    z_power <= 1 && is_squarefree_bivariate(&affine)
}

fn irrational(found: u64, expected: u64) -> String {
    format!("{found} of {expected} solutions counted with multiplicity are rational")
}

// singular points of the affine curve g = 0 with their Milnor numbers
fn affine_singularities(g: &MPoly<Rat>) -> Result<Vec<CurveSingularity>, CurveError> {
    if g.is_constant() {
        return Ok(Vec::new());
    }
    let mut system = vec![g.clone()];
    system.extend(g.gradient());
    let pts = rational_zeros(&system).map_err(|e| match e {
        ZeroSetError::Irrational { found, expected } => {
            CurveError::IrrationalSingularityDetected(irrational(found, expected))
        }
        ZeroSetError::NotZeroDimensional => CurveError::NonReduced(g.to_string()),
    })?;
    pts.into_iter()
        .map(|z| {
            let (a, b) = z.point;
            let germ = translate(g, &[a.clone(), b.clone()]);
            let mu = milnor_number(&germ).expect("isolated singular point");
            Ok(CurveSingularity {
                location: ProjPoint::affine(a, b),
                mu,
                at_infinity: false,
            })
        })
        .collect()
}

/// Singular points of the affine level set `P = t0`.
pub fn singular_points(p: &MPoly<Rat>, t0: &Rat) -> Result<Vec<CurveSingularity>, CurveError> {
    if p.nvars() != 2 {
        return Err(CurveError::BadInput {
            expected: "a polynomial in x, y",
        });
    }
    let g = p - &MPoly::constant(2, t0.clone());
    if !is_squarefree_bivariate(&g) {
        return Err(CurveError::NonReducedLevel(g.to_string()));
    }
    affine_singularities(&g)
}

/// Points of `{f = 0}` on the line `z = 0` (with `f` a form).
fn infinity_roots(f: &MPoly<Rat>) -> (UniPoly, bool) {
    let at_y1 = to_uni(&f.restrict(2, &Rat::zero()).restrict(1, &Rat::one()));
    let through_x_axis = f.eval(&[Rat::one(), Rat::zero(), Rat::zero()]).is_zero();
    (at_y1, through_x_axis)
}

/// All singular points of the projective curve `{f = 0}`.
pub fn projective_singular_points(f: &MPoly<Rat>) -> Result<Vec<CurveSingularity>, CurveError> {
    check_form(f)?;
    if !is_squarefree_form(f) {
        return Err(CurveError::NonReduced(f.to_string()));
    }
    let mut out = affine_singularities(&f.restrict(2, &Rat::one()))?;

    // the chart y = 1 near z = 0: points [a:1:0]
    let h = f.restrict(1, &Rat::one());
    let mut on_line: Vec<UniPoly> = vec![to_uni(&h.restrict(1, &Rat::zero()))];
    on_line.extend(h.gradient().iter().map(|d| to_uni(&d.restrict(1, &Rat::zero()))));
    let g = gcd_all(&on_line);
    if g.is_zero() {
        return Err(CurveError::NonReduced(f.to_string()));
    }
    let hidden = irrational_root_count(&g);
    if hidden > 0 {
        return Err(CurveError::IrrationalSingularityDetected(format!(
            "{hidden} singular points at infinity"
        )));
    }
    let mut at_inf: Vec<ProjPoint> = g
        .rational_roots()
        .expect("nonzero")
        .into_iter()
        .map(|a| ProjPoint([a, Rat::one(), Rat::zero()]))
        .collect();
    if infinity_roots(f).1 {
        at_inf.push(ProjPoint([Rat::one(), Rat::zero(), Rat::zero()]));
    }
    for pt in at_inf {
        let mu = milnor_number(&chart_germ(f, &pt)?).expect("isolated singular point");
        if mu > 0 {
            out.push(CurveSingularity {
                location: pt,
                mu,
                at_infinity: true,
            });
        }
    }
    Ok(out)
}

/// Number of distinct points on the line at infinity.
pub fn points_at_infinity(f: &MPoly<Rat>) -> Result<usize, CurveError> {
    check_form(f)?;
    let (u, through_x) = infinity_roots(f);
    if u.is_zero() {
        return Err(CurveError::BadInput {
            expected: "a curve not containing the line at infinity",
        });
    }
    let finite = if u.is_constant() {
        0
    } else {
        u.squarefree_part().expect("nonzero").degree().unwrap_or(0)
    };
    Ok(finite + usize::from(through_x))
}

/// `3d - d^2 + sum of Milnor numbers` for a reduced curve of degree `d`.
pub fn chi_projective_curve(f: &MPoly<Rat>, sings: &[CurveSingularity]) -> Result<i64, CurveError> {
    let d = i64::from(check_form(f)?);
    if !is_squarefree_form(f) {
        return Err(CurveError::NonReduced(f.to_string()));
    }
    Ok(3 * d - d * d + sings.iter().map(|s| s.mu as i64).sum::<i64>())
}

/// Euler characteristic of `{f = 0}` with its singular points found here.
pub fn curve_euler_characteristic(f: &MPoly<Rat>) -> Result<i64, CurveError> {
    chi_projective_curve(f, &projective_singular_points(f)?)
}

/// The levels `P = t` of a polynomial in two variables and their closures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCurveFamily {
    p: MPoly<Rat>,
    degree: u32,
}

impl PlaneCurveFamily {
    pub fn new(p: MPoly<Rat>) -> Result<Self, CurveError> {
        if p.nvars() != 2 || p.is_constant() {
            return Err(CurveError::BadInput {
                expected: "a nonconstant polynomial in x, y",
            });
        }
        let degree = p.total_degree().expect("nonzero");
        Ok(PlaneCurveFamily { p, degree })
    }

    pub fn polynomial(&self) -> &MPoly<Rat> {
        &self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The form of the closure of `P = t`.
    pub fn closure(&self, t: &Rat) -> MPoly<Rat> {
        (&self.p - &MPoly::constant(2, t.clone())).homogenize(self.degree)
    }

    /// Euler characteristic of the affine level `P = t`.
    pub fn chi_level(&self, t: &Rat) -> Result<i64, CurveError> {
        let f = self.closure(t);
        let sings = projective_singular_points(&f).map_err(|e| level_error(e, &f))?;
        Ok(chi_projective_curve(&f, &sings)? - points_at_infinity(&f)? as i64)
    }
}

fn level_error(e: CurveError, f: &MPoly<Rat>) -> CurveError {
    match e {
        CurveError::NonReduced(_) => CurveError::NonReducedLevel(f.restrict(2, &Rat::one()).to_string()),
        other => other,
    }
}

/// Which power of `-1` reconciles the two sides of the level-set formula
/// `chi(V_t) - chi(V_t0) = (-1)^k * S` with `n = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignExponent {
    /// `k = n`.
    N,
    /// `k = n + 1`.
    NPlusOne,
    /// Both sides vanish.
    Either,
    Neither,
}

impl fmt::Display for SignExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignExponent::N => "n",
            SignExponent::NPlusOne => "n+1",
            SignExponent::Either => "either",
            SignExponent::Neither => "none",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfinityJump {
    pub point: ProjPoint,
    pub mu_special: u64,
    pub mu_generic: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula1Report {
    /// `chi(V_t) - chi(V_t0)` for generic `t`.
    pub lhs: i64,
    /// Affine Milnor numbers of `V_t0` plus the jumps at infinity.
    pub rhs_signed: i64,
    pub rhs_abs: i64,
    pub matching_sign_exponent: SignExponent,
    pub chi_special: i64,
    pub chi_generic: i64,
    /// The rational level used as generic, verified to have the generic
    /// Milnor numbers at infinity and no affine singular points.
    pub t_generic: Rat,
    pub affine_singularities: Vec<CurveSingularity>,
    pub infinity: Vec<InfinityJump>,
    pub points_at_infinity: usize,
}

const GENERIC_TRIES: i64 = 64;

/// Both sides of the level-set formula for `P` at the level `t0`.
pub fn verify_formula1(p: &MPoly<Rat>, t0: &Rat) -> Result<Formula1Report, CurveError> {
    let fam = PlaneCurveFamily::new(p.clone())?;
    let d = fam.degree();
    let f0 = fam.closure(t0);
    let sings0 = projective_singular_points(&f0).map_err(|e| level_error(e, &f0))?;
    let affine: Vec<CurveSingularity> = sings0.iter().filter(|s| !s.at_infinity).cloned().collect();

    // in the chart around a point at infinity the closure of P = t is the
    // closure of P = t0 minus (t - t0) z^d, z being the second chart variable
    let z_power = MPoly::from_terms(2, [(vec![0, d], -Rat::one())]);
    let mut infinity = Vec::new();
    let mut bad: Vec<Rat> = Vec::new();
    for s in sings0.iter().filter(|s| s.at_infinity) {
        let germ = chart_germ(&f0, &s.location)?;
        let generic = milnor_number_generic(&germ, &z_power).map_err(|e| match e {
            MilnorError::NonIsolated => CurveError::NonReducedLevel(fam.polynomial().to_string()),
            _ => CurveError::BadInput {
                expected: "a germ vanishing at the point",
            },
        })?;
        bad.extend(generic.bad_specializations.iter().map(|b| b + t0));
        infinity.push(InfinityJump {
            point: s.location.clone(),
            mu_special: s.mu,
            mu_generic: generic.mu,
        });
    }

    let (t_generic, chi_generic) = generic_level(&fam, t0, &infinity, &bad)?;
    let npts = points_at_infinity(&f0)?;
    let chi_special = chi_projective_curve(&f0, &sings0)? - npts as i64;
    let lhs = chi_generic - chi_special;
    let rhs_signed = affine.iter().map(|s| s.mu as i64).sum::<i64>()
        + infinity
            .iter()
            .map(|j| j.mu_special as i64 - j.mu_generic as i64)
            .sum::<i64>();
    let matching_sign_exponent = match (lhs == -rhs_signed, lhs == rhs_signed) {
        (true, true) => SignExponent::Either,
        (true, false) => SignExponent::N,
        (false, true) => SignExponent::NPlusOne,
        (false, false) => SignExponent::Neither,
    };
    Ok(Formula1Report {
        lhs,
        rhs_signed,
        rhs_abs: rhs_signed.abs(),
        matching_sign_exponent,
        chi_special,
        chi_generic,
        t_generic,
        affine_singularities: affine,
        infinity,
        points_at_infinity: npts,
    })
}

// first level t0 + k whose closure is smooth in the affine part and has the
// generic Milnor numbers at infinity
fn generic_level(
    fam: &PlaneCurveFamily,
    t0: &Rat,
    infinity: &[InfinityJump],
    bad: &[Rat],
) -> Result<(Rat, i64), CurveError> {
    for k in 1..=GENERIC_TRIES {
        let t = t0 + rat_int(k);
        if bad.contains(&t) {
            continue;
        }
        let f = fam.closure(&t);
        let Ok(sings) = projective_singular_points(&f) else {
            continue;
        };
        let generic = sings.iter().all(|s| {
            s.at_infinity
                && infinity
                    .iter()
                    .any(|j| j.point == s.location && j.mu_generic == s.mu)
        }) && infinity
            .iter()
            .all(|j| j.mu_generic == 0 || sings.iter().any(|s| s.location == j.point));
        if generic {
            let chi = chi_projective_curve(&f, &sings)? - points_at_infinity(&f)? as i64;
            return Ok((t, chi));
        }
    }
    Err(CurveError::NoGenericLevel)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub point: ProjPoint,
    pub multiplicity: u64,
    /// Whether both curves are smooth there and meet transversally.
    pub transversal: bool,
    /// Euler characteristic of the zero fibre of `s/s'` at the point.
    pub chi0: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem4Report {
    /// `chi(Z') - chi(Z)`.
    pub lhs: i64,
    pub rhs: i64,
    pub agree: bool,
    pub chi_z: i64,
    pub chi_z_prime: i64,
    /// Singular points of `Z` off `Z'`, with the Euler characteristic
    /// `1 - mu` of their Milnor fibres.
    pub singular_off: Vec<(CurveSingularity, i64)>,
    pub intersections: Vec<IntersectionPoint>,
    /// The right-hand side with the intersection terms dropped.
    pub rhs_transversal: i64,
}

fn intersection_points(s: &MPoly<Rat>, sp: &MPoly<Rat>) -> Result<Vec<ProjPoint>, CurveError> {
    let affine = rational_zeros(&[s.restrict(2, &Rat::one()), sp.restrict(2, &Rat::one())]).map_err(|e| match e {
        ZeroSetError::Irrational { found, expected } => CurveError::IrrationalIntersection(irrational(found, expected)),
        ZeroSetError::NotZeroDimensional => CurveError::InfiniteIntersection,
    })?;
    let mut out: Vec<ProjPoint> = affine.into_iter().map(|z| ProjPoint::affine(z.point.0, z.point.1)).collect();
    let (u, ux) = infinity_roots(s);
    let (v, vx) = infinity_roots(sp);
    let g = gcd_all(&[u, v]);
    if g.is_zero() {
        return Err(CurveError::InfiniteIntersection);
    }
    let hidden = irrational_root_count(&g);
    if hidden > 0 {
        return Err(CurveError::IrrationalIntersection(format!("{hidden} points at infinity")));
    }
    out.extend(
        g.rational_roots()
            .expect("nonzero")
            .into_iter()
            .map(|a| ProjPoint([a, Rat::one(), Rat::zero()])),
    );
    if ux && vx {
        out.push(ProjPoint([Rat::one(), Rat::zero(), Rat::zero()]));
    }
    Ok(out)
}

/// Both sides of `chi(Z') - chi(Z) = sum over Sing(Z) off Z' of (chi_x - 1)
/// + sum over Z ∩ Z' of chi0` for curves `Z = {s = 0}`, `Z' = {s' = 0}` of
/// equal degree with `Z'` smooth.
pub fn verify_theorem4_curves(s: &MPoly<Rat>, s_prime: &MPoly<Rat>) -> Result<Theorem4Report, CurveError> {
    let d = check_form(s)?;
    if check_form(s_prime)? != d {
        return Err(CurveError::BadInput {
            expected: "two forms of the same degree",
        });
    }
    let sp_sings = projective_singular_points(s_prime).map_err(|e| match e {
        CurveError::NonReduced(_) | CurveError::IrrationalSingularityDetected(_) => {
            CurveError::NonSmoothReference(s_prime.to_string())
        }
        other => other,
    })?;
    if !sp_sings.is_empty() {
        return Err(CurveError::NonSmoothReference(s_prime.to_string()));
    }
    let sings = projective_singular_points(s)?;
    let chi_z = chi_projective_curve(s, &sings)?;
    let chi_z_prime = chi_projective_curve(s_prime, &sp_sings)?;

    let singular_off: Vec<(CurveSingularity, i64)> = sings
        .into_iter()
        .filter(|x| !s_prime.eval(&x.location.0).is_zero())
        .map(|x| {
            let chi = 1 - x.mu as i64;
            (x, chi)
        })
        .collect();

    let mut intersections = Vec::new();
    let mut total = 0;
    for pt in intersection_points(s, s_prime)? {
        let a = chart_germ(s, &pt)?;
        let b = chart_germ(s_prime, &pt)?;
        let multiplicity = local_quotient_dimension(&[a.clone(), b.clone()])
            .finite()
            .ok_or(CurveError::InfiniteIntersection)?;
        total += multiplicity;
        let chi0 = chi_zero_fibre(&MeroGerm::new(a, b)?)?.chi;
        intersections.push(IntersectionPoint {
            point: pt,
            multiplicity,
            transversal: multiplicity == 1,
            chi0,
        });
    }
    if total != u64::from(d * d) {
        return Err(CurveError::IrrationalIntersection(irrational(total, u64::from(d * d))));
    }

    let chis: Vec<i64> = singular_off.iter().map(|(_, c)| *c).collect();
    let chi0s: Vec<i64> = intersections.iter().map(|p| p.chi0).collect();
    let lhs = chi_z_prime - chi_z;
    let rhs = rhs_theorem4(&chis, &chi0s);
    Ok(Theorem4Report {
        lhs,
        rhs,
        agree: lhs == rhs,
        chi_z,
        chi_z_prime,
        singular_off,
        intersections,
        rhs_transversal: rhs_formula2(&chis),
    })
}
