use std::cmp::Ordering;

use super::Monomial;

/// Monomial orders used by the standard basis engine.
///
/// `Local` is the anti-graded reverse lexicographic order: lower total degree
/// is larger, so `1` is the largest monomial and the order computes in the
/// local ring at the origin. `Global` is graded reverse lexicographic and is
/// used only to count solutions of zero-dimensional systems.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    Local,
    Global,
}

impl MonomialOrder {
    /// `Ordering::Greater` means `a` is the larger monomial.
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        let by_degree = a.degree().cmp(&b.degree());
        let by_degree = match self {
            MonomialOrder::Local => by_degree.reverse(),
            MonomialOrder::Global => by_degree,
        };
        by_degree.then_with(|| revlex(a, b))
    }

    pub fn is_local(self) -> bool {
        self == MonomialOrder::Local
    }
}

// larger iff the last nonzero entry of a - b is negative
fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}
