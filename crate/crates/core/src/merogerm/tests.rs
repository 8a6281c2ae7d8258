use super::*;
use crate::coeff::rat;
use crate::newton::{newton_number, NewtonDiagram};

fn p(nvars: usize, terms: &[(i64, &[u32])]) -> MPoly<Rat> {
    MPoly::from_terms(nvars, terms.iter().map(|&(c, e)| (e.to_vec(), rat_int(c))))
}

fn germ(num: MPoly<Rat>, den: MPoly<Rat>) -> MeroGerm {
    MeroGerm::new(num, den).unwrap()
}

fn at(c: i64) -> FibreValue {
    FibreValue::Finite(rat_int(c))
}

fn circle_over_x() -> MeroGerm {
    germ(p(2, &[(1, &[2, 0]), (1, &[0, 2])]), p(2, &[(1, &[1, 0])]))
}

fn cusp_over_y() -> MeroGerm {
    germ(p(2, &[(1, &[2, 0]), (1, &[0, 3])]), p(2, &[(1, &[0, 1])]))
}

fn x_over_y() -> MeroGerm {
    germ(p(2, &[(1, &[1, 0])]), p(2, &[(1, &[0, 1])]))
}

#[test]
fn constant_germs_are_rejected() {
    let x = p(2, &[(1, &[1, 0])]);
    assert_eq!(MeroGerm::new(x.clone(), x.scale(&rat(-3, 2))), Err(MeroError::ConstantGerm));
    assert_eq!(MeroGerm::new(MPoly::zero(2), x.clone()), Err(MeroError::ConstantGerm));
    assert!(matches!(MeroGerm::new(x, p(3, &[(1, &[1, 0, 0])])), Err(MeroError::ArityMismatch { .. })));
}

// For a plane curve germ P with isolated singularity and a transversal line
// Q, the zero fibre is the Milnor fibre of P (Euler characteristic 1 - mu)
// with the cone point {P = Q = 0} removed. mu comes from the Newton number.
fn plane_oracle(num: &MPoly<Rat>) -> i64 {
    let mu = newton_number(&NewtonDiagram::of_poly(num)).unwrap();
    (1 - mu) - 1
}

#[test]
fn zero_fibre_examples() {
    let r = chi_zero_fibre(&circle_over_x()).unwrap();
    assert_eq!((r.chi, r.mu_special, r.mu_generic), (-1, 1, 0));
    assert_eq!(r.chi, plane_oracle(circle_over_x().numerator()));
    assert_eq!(r.typical, Typicality::Atypical);

    let r = chi_zero_fibre(&cusp_over_y()).unwrap();
    assert_eq!((r.chi, r.mu_special, r.mu_generic), (-2, 2, 0));
    assert_eq!(r.chi, plane_oracle(cusp_over_y().numerator()));
}

#[test]
fn zero_fibre_errors() {
    // P = xy, Q = x share the line x = 0
    let f = germ(p(2, &[(1, &[1, 1])]), p(2, &[(1, &[1, 0])]));
    assert_eq!(chi_zero_fibre(&f), Err(MeroError::CommonComponent("x".into())));
    // (x^2 + z^2 y)/z^2: the numerator is singular along the y axis
    let f = germ(p(3, &[(1, &[2, 0, 0]), (1, &[0, 1, 2])]), p(3, &[(1, &[0, 0, 2])]));
    assert!(matches!(chi_zero_fibre(&f), Err(MeroError::NonIsolatedNumerator { .. })));
    // no point of indeterminacy at the origin
    let f = germ(p(2, &[(1, &[1, 0])]), p(2, &[(1, &[0, 0]), (1, &[0, 1])]));
    assert_eq!(chi_zero_fibre(&f), Err(MeroError::IndeterminacyMissingAtOrigin));
}

#[test]
fn c_fibre_examples() {
    let f = circle_over_x();
    assert_eq!(chi_c_fibre(&f, &at(0)), chi_zero_fibre(&f));
    let r = chi_c_fibre(&f, &FibreValue::Infinity).unwrap();
    assert_eq!((r.chi, r.mu_special, r.mu_generic), (0, 0, 0));
    assert_eq!(r.value, FibreValue::Infinity);

    let r = chi_c_fibre(&cusp_over_y(), &at(1)).unwrap();
    assert_eq!((r.chi, r.mu_special, r.mu_generic), (0, 0, 0));
}

#[test]
fn typicality_examples() {
    assert_eq!(is_typical(&circle_over_x(), &at(0)), Ok(false));
    assert_eq!(is_typical(&x_over_y(), &at(0)), Ok(true));
    let f = germ(p(2, &[(1, &[2, 2])]), p(2, &[(1, &[4, 0]), (1, &[0, 4])]));
    let err = is_typical(&f, &at(0)).unwrap_err();
    assert!(matches!(err, MeroError::NonIsolatedNumerator { .. }));
    assert!(err.to_string().contains("x^2*y^2/(x^4 + y^4)"));
}

#[test]
fn special_value_examples() {
    let sv = special_values(&circle_over_x()).unwrap();
    let atypical: Vec<_> = sv.atypical().map(|c| (c.value.clone(), c.report.as_ref().unwrap().chi)).collect();
    assert_eq!(atypical, vec![(at(0), -1)]);
    let inf = sv.candidates.iter().find(|c| c.value == FibreValue::Infinity).unwrap();
    assert_eq!(inf.verdict, Typicality::Typical);
    assert_eq!(inf.report.as_ref().unwrap().chi, 0);

    let sv = special_values(&x_over_y()).unwrap();
    assert!(sv.candidates.iter().all(|c| c.verdict == Typicality::Typical));

    let sv = special_values(&cusp_over_y()).unwrap();
    let atypical: Vec<_> = sv.atypical().map(|c| (c.value.clone(), c.report.as_ref().unwrap().chi)).collect();
    assert_eq!(atypical, vec![(at(0), -2)]);
}

#[test]
fn special_values_find_a_nonzero_atypical_value() {
    // P = x^2 + y^2, Q = x^2 - y^2 + x^3: P - Q = 2y^2 - x^3 is a cusp and
    // P + Q = 2x^2 + x^3 is singular along the y axis
    let f = germ(p(2, &[(1, &[2, 0]), (1, &[0, 2])]), p(2, &[(1, &[2, 0]), (-1, &[0, 2]), (1, &[3, 0])]));
    let sv = special_values(&f).unwrap();
    let atypical: Vec<_> = sv.atypical().map(|c| c.value.clone()).collect();
    assert_eq!(atypical, vec![at(1)]);
    let r = sv.atypical().next().unwrap().report.as_ref().unwrap();
    assert_eq!((r.mu_special, r.mu_generic, r.chi), (2, 1, -1));
    let minus_one = sv.candidates.iter().find(|c| c.value == at(-1)).unwrap();
    assert_eq!(minus_one.verdict, Typicality::NotDecided);
    assert!(matches!(minus_one.reason, Some(MeroError::NonIsolatedNumerator { .. })));
}

#[test]
fn irrational_candidates_are_reported() {
    // x^2 - c*x*y + 2y^2 is degenerate for c^2 = 8
    let f = germ(p(2, &[(1, &[2, 0]), (2, &[0, 2])]), p(2, &[(1, &[1, 1])]));
    let sv = special_values(&f).unwrap();
    assert_eq!(sv.irrational_locus, UniPoly::from_ints(&[-8, 0, 1]));
    assert_eq!(sv.atypical().count(), 0);
    assert!(special_values(&circle_over_x()).unwrap().irrational_locus.is_one());
}

fn suite() -> Vec<MeroGerm> {
    let mut out = vec![circle_over_x(), cusp_over_y(), x_over_y()];
    let pairs: Vec<(MPoly<Rat>, MPoly<Rat>)> = vec![
        (p(2, &[(1, &[3, 0]), (1, &[0, 4])]), p(2, &[(1, &[1, 1])])),
        (p(2, &[(1, &[2, 0]), (1, &[0, 5])]), p(2, &[(1, &[0, 2])])),
        (p(2, &[(1, &[2, 1]), (1, &[0, 4])]), p(2, &[(1, &[1, 0]), (1, &[0, 2])])),
        (p(2, &[(1, &[1, 1])]), p(2, &[(1, &[2, 0]), (1, &[0, 2])])),
        (p(2, &[(1, &[2, 0]), (1, &[0, 2])]), p(2, &[(1, &[2, 0]), (-1, &[0, 2]), (1, &[3, 0])])),
        (p(3, &[(1, &[2, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2])]), p(3, &[(1, &[1, 0, 0])])),
        (p(3, &[(1, &[2, 0, 0]), (1, &[0, 3, 0]), (1, &[0, 0, 2])]), p(3, &[(1, &[0, 0, 1])])),
        (p(3, &[(1, &[1, 1, 0]), (1, &[0, 0, 2])]), p(3, &[(1, &[2, 0, 0]), (1, &[0, 2, 0])])),
        (p(1, &[(1, &[2])]), p(1, &[(1, &[3])])),
    ];
    out.extend(pairs.into_iter().map(|(a, b)| germ(a, b)));
    out
}

#[test]
fn generic_fibre_has_zero_euler_characteristic() {
    assert_eq!(chi_generic_fibre(&circle_over_x()), Ok(0));
    assert_eq!(chi_generic_fibre(&cusp_over_y()), Ok(0));
    assert_eq!(chi_generic_fibre(&x_over_y()), Ok(0));
    let suite = suite();
    assert!(suite.len() >= 10);
    for f in suite {
        let sv = special_values(&f).unwrap();
        let mut checked = 0;
        for k in 1i64.. {
            let c = FibreValue::Finite(rat(k * 7 - 3, 5));
            if sv.candidates.iter().any(|cand| cand.value == c) {
                continue;
            }
            assert_eq!(chi_c_fibre(&f, &c).unwrap().chi, 0, "{f} at {c}");
            checked += 1;
            if checked == 3 {
                break;
            }
        }
    }
}

#[test]
fn scalar_multiples_give_the_same_reports() {
    for f in suite() {
        for l in [rat(-2, 1), rat(3, 7)] {
            let g = germ(f.numerator().scale(&l), f.denominator().scale(&l));
            for c in [at(0), at(2), FibreValue::Infinity] {
                // error messages quote the scaled numerator, so compare kinds
                let kind = |r: Result<FibreReport, MeroError>| r.map_err(|e| std::mem::discriminant(&e));
                assert_eq!(kind(chi_c_fibre(&f, &c)), kind(chi_c_fibre(&g, &c)), "{f} at {c}");
            }
        }
    }
}

#[test]
fn value_shift_matches_reduced_germ() {
    for f in suite() {
        for c in [rat(1, 1), rat(-5, 2)] {
            let reduced = MeroGerm::new(f.numerator() - &f.denominator().scale(&c), f.denominator().clone()).unwrap();
            let a = chi_c_fibre(&f, &FibreValue::Finite(c.clone())).map(|r| r.chi);
            let b = chi_zero_fibre(&reduced).map(|r| r.chi);
            assert_eq!(a, b, "{f} at {c}");
        }
    }
}

#[test]
fn typicality_three_way_agreement() {
    for f in suite() {
        let sv = special_values(&f).unwrap();
        for cand in &sv.candidates {
            let Some(r) = &cand.report else { continue };
            let typical = is_typical(&f, &cand.value).unwrap();
            assert_eq!(typical, r.mu_special == r.mu_generic);
            assert_eq!(typical, r.chi == 0);
            assert_eq!(typical, cand.verdict == Typicality::Typical);
        }
    }
}

#[test]
fn two_samples_agree_with_parametric_chi() {
    for f in suite() {
        for c in [at(0), FibreValue::Infinity] {
            let exact = chi_c_fibre(&f, &c);
            let a = chi_c_fibre_with(&f, &c, GenericMode::Sampled { seed: 1 });
            let b = chi_c_fibre_with(&f, &c, GenericMode::Sampled { seed: 99 });
            assert_eq!(exact.clone().map(|r| r.chi), a.map(|r| r.chi), "{f} at {c}");
            assert_eq!(exact.map(|r| r.chi), b.map(|r| r.chi), "{f} at {c}");
        }
    }
}

#[test]
fn candidate_list_is_finite_and_includes_distinguished_values() {
    for f in suite() {
        let sv = special_values(&f).unwrap();
        assert!(sv.candidates.iter().any(|c| c.value == at(0)));
        assert_eq!(sv.candidates.last().unwrap().value, FibreValue::Infinity);
        // every atypical value is a candidate: scan small rationals
        for k in -6i64..=6 {
            let c = FibreValue::Finite(rat(k, 2));
            if let Ok(r) = chi_c_fibre(&f, &c) {
                if r.chi != 0 {
                    assert!(sv.candidates.iter().any(|cand| cand.value == c), "{f} at {c}");
                }
            }
        }
        assert!(!sv.irrational_locus.is_zero());
    }
}
