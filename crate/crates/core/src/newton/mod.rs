//! Newton diagrams and the Kouchnirenko number.
//!
//! For a convenient germ with Newton nondegenerate principal part the Milnor
//! number equals the Newton number, which gives an oracle for
//! [`crate::localstd`] that shares no code with it.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::coeff::Coeff;
use crate::multipoly::MPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewtonError {
    #[error("the support is empty")]
    EmptySupport,
    #[error("the diagram is not convenient: variable {0} has no pure power")]
    NotConvenient(usize),
    #[error("Newton numbers are implemented for at most 3 variables, got {0}")]
    TooManyVariables(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonDiagram {
    support: BTreeSet<Vec<u32>>,
    nvars: usize,
    axis_intercepts: Vec<Option<u32>>,
}

impl NewtonDiagram {
    /// Diagram of the exponent vectors in `support`. The origin is ignored.
    pub fn new(nvars: usize, support: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let support: BTreeSet<Vec<u32>> = support
            .into_iter()
            .inspect(|e| assert_eq!(e.len(), nvars, "exponent vector length"))
            .filter(|e| e.iter().any(|&k| k > 0))
            .collect();
        let axis_intercepts = (0..nvars)
            .map(|i| {
                support
                    .iter()
                    .filter(|e| e.iter().enumerate().all(|(j, &k)| (j == i) == (k > 0)))
                    .map(|e| e[i])
                    .min()
            })
            .collect();
        NewtonDiagram {
            support,
            nvars,
            axis_intercepts,
        }
    }

    pub fn of_poly<C: Coeff>(p: &MPoly<C>) -> Self {
        Self::new(p.nvars(), p.terms().map(|(m, _)| m.exponents().to_vec()))
    }

    pub fn support(&self) -> &BTreeSet<Vec<u32>> {
        &self.support
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn axis_intercepts(&self) -> &[Option<u32>] {
        &self.axis_intercepts
    }
}

pub fn is_convenient(d: &NewtonDiagram) -> Result<bool, NewtonError> {
    if d.support.is_empty() {
        return Err(NewtonError::EmptySupport);
    }
    Ok(d.axis_intercepts.iter().all(Option::is_some))
}

/// Kouchnirenko's alternating sum `sum_k (-1)^(n-k) k! V_k` over all
/// coordinate subspaces, `V_0 = 1`.
pub fn newton_number(d: &NewtonDiagram) -> Result<i64, NewtonError> {
    if !is_convenient(d)? {
        let i = d.axis_intercepts.iter().position(Option::is_none).unwrap_or(0);
        return Err(NewtonError::NotConvenient(i));
    }
    let n = d.nvars;
    if n > 3 {
        return Err(NewtonError::TooManyVariables(n));
    }
    let mut total: i64 = if n.is_multiple_of(2) { 1 } else { -1 };
    for mask in 1u32..(1 << n) {
        let vars: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let k = vars.len();
        let points: Vec<Vec<i64>> = d
            .support
            .iter()
            .filter(|e| (0..n).all(|i| vars.contains(&i) || e[i] == 0))
            .map(|e| vars.iter().map(|&i| i64::from(e[i])).collect())
            .collect();
        let vol = normalized_volume_under(&points, k);
        let sign = if (n - k).is_multiple_of(2) { 1 } else { -1 };
        total += sign * vol;
    }
    Ok(total)
}

/// `k!` times the volume of the region between the origin and the Newton
/// boundary of a convenient support in `k` dimensions.
pub fn normalized_volume_under(points: &[Vec<i64>], k: usize) -> i64 {
    match k {
        1 => points.iter().map(|p| p[0]).min().expect("convenient"),
        2 => {
            let chain = boundary_chain(points);
            chain.windows(2).map(|w| (w[0].0 * w[1].1 - w[1].0 * w[0].1).abs()).sum()
        }
        3 => compact_facets(points)
            .iter()
            .map(|facet| {
                (1..facet.len() - 1)
                    .map(|i| det3(&facet[0], &facet[i], &facet[i + 1]).abs())
                    .sum::<i64>()
            })
            .sum(),
        _ => unreachable!("dimension {k}"),
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Vertices of the compact part of a convenient Newton polygon, from the
/// point on the second axis to the point on the first.
pub fn boundary_chain(points: &[Vec<i64>]) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = points.iter().map(|p| (p[0], p[1])).collect();
    pts.sort();
    pts.dedup();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        if hull.last().is_some_and(|q| q.0 == p.0) {
            continue;
        }
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let end = hull.iter().position(|p| p.1 == 0).expect("convenient");
    hull.truncate(end + 1);
    hull
}

fn det3(a: &[i64], b: &[i64], c: &[i64]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Compact facets of a convenient Newton polyhedron in three variables, each
/// as its vertices in cyclic order.
pub fn compact_facets(points: &[Vec<i64>]) -> Vec<Vec<Vec<i64>>> {
    let pts: Vec<Vec<i64>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let mut planes: BTreeSet<(Vec<i64>, i64)> = BTreeSet::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let u: Vec<i64> = (0..3).map(|r| pts[j][r] - pts[i][r]).collect();
                let v: Vec<i64> = (0..3).map(|r| pts[k][r] - pts[i][r]).collect();
                let mut n = vec![
                    u[1] * v[2] - u[2] * v[1],
                    u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0],
                ];
                if n.iter().all(|&c| c < 0) {
                    n.iter_mut().for_each(|c| *c = -*c);
                }
                if !n.iter().all(|&c| c > 0) {
                    continue;
                }
                let g = n.iter().fold(0, |g, &c| num_integer::gcd(g, c));
                n.iter_mut().for_each(|c| *c /= g);
                let level: i64 = dot(&n, &pts[i]);
                if pts.iter().all(|p| dot(&n, p) >= level) {
                    planes.insert((n, level));
                }
            }
        }
    }
    planes
        .into_iter()
        .map(|(n, level)| {
            let on: Vec<Vec<i64>> = pts.iter().filter(|p| dot(&n, p) == level).cloned().collect();
            // n[2] > 0, so dropping the last coordinate is a bijection on the plane
            let flat: Vec<(i64, i64)> = on.iter().map(|p| (p[0], p[1])).collect();
            convex_hull(&flat)
                .into_iter()
                .map(|q| on[flat.iter().position(|f| *f == q).expect("hull vertex")].clone())
                .collect()
        })
        .collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// Andrew's monotone chain; vertices only, counterclockwise.
fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
