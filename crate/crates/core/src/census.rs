//! Counts of points of exact Frobenius degree and of generic points, both as
//! polynomials in the base-field size `q` and by exhaustive enumeration.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::field::{FieldContext, FieldElement, FieldError};
use crate::plane::{Genericity, Plane};
use crate::poly::QPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("generic counts are defined for degrees 3 through 6, got {0}")]
    GenericDegree(u32),
    #[error("generic counts need the plane or its dual")]
    GenericOnLine,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("enumeration of {needed} elements exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Space {
    P1,
    P2,
    P2Dual,
}

impl Space {
    fn dimension(self) -> usize {
        match self {
            Space::P1 => 1,
            Space::P2 | Space::P2Dual => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    ExactDegree,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusRequest {
    pub space: Space,
    pub degree: u32,
    pub flavor: Flavor,
}

/// `|P^N(F_{q^k})| = 1 + q^k + ... + q^{Nk}`.
pub fn space_size(space: Space, k: u32) -> QPolynomial {
    (0..=space.dimension())
        .map(|i| QPolynomial::monomial(crate::poly::rat(1), i * k as usize))
        .fold(QPolynomial::zero(), |acc, m| acc + m)
}

/// Number of points of `P^N` with Frobenius orbit of size exactly `n`.
pub fn count_exact_degree(space: Space, n: u32) -> QPolynomial {
    arith::divisors(n)
        .into_iter()
        .filter(|&k| k < n)
        .fold(space_size(space, n), |acc, k| acc - count_exact_degree(space, k))
}

/// Number of generic points (equivalently generic lines) of orbit size `n`, `3 <= n <= 6`.
///
/// Points on a line defined over `F_q` are removed line by line; for `n = 6` the
/// points on lines of orbit size 2 are removed as well, counted as the points of
/// exact degree 3 over `F_{q^2}` on each such line.
pub fn count_generic(n: u32) -> Result<QPolynomial, CensusError> {
    if !(3..=6).contains(&n) {
        return Err(CensusError::GenericDegree(n));
    }
    let rational_lines = space_size(Space::P2Dual, 1);
    let mut out = count_exact_degree(Space::P2, n)
        - &rational_lines * &count_exact_degree(Space::P1, n);
    if n == 6 {
        let quadratic_lines = count_exact_degree(Space::P2Dual, 2);
        let cubic_over_q2 = count_exact_degree(Space::P1, 3).substitute_power(2);
        out = out - &quadratic_lines * &cubic_over_q2;
    }
    Ok(out)
}

pub fn count(req: CensusRequest) -> Result<QPolynomial, CensusError> {
    match req.flavor {
        Flavor::ExactDegree => Ok(count_exact_degree(req.space, req.degree)),
        Flavor::Generic if req.space == Space::P1 => Err(CensusError::GenericOnLine),
        Flavor::Generic => count_generic(req.degree),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub total: u64,
    /// Present for degrees at least 3 when genericity was requested.
    pub generic: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusTable {
    pub q: u64,
    pub ambient_degree: u32,
    pub space: Space,
    pub rows: BTreeMap<u32, CensusRow>,
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    /// Degrees whose generic members are also counted.
    pub generic_degrees: Vec<u32>,
    /// Largest number of projective points to visit.
    pub budget: u128,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            generic_degrees: vec![3, 4, 5, 6],
            budget: 400_000_000,
        }
    }
}

/// Classifies every point of `P^N(F_{q^L})` (or line, for the dual plane) by
/// exact Frobenius degree and, where requested, genericity.
pub fn census_by_enumeration(
    space: Space,
    q: u64,
    ambient_degree: u32,
    opts: &CensusOptions,
) -> Result<CensusTable, CensusError> {
    let (p, m) = arith::prime_power(q).ok_or(CensusError::NotPrimePower(q))?;
    let big_q = (q as u128).pow(ambient_degree);
    let needed = big_q.pow(space.dimension() as u32);
    if needed > opts.budget {
        return Err(CensusError::BudgetExceeded { needed, budget: opts.budget });
    }
    let field = FieldContext::new(p, m * ambient_degree, m)?;
    let plane = Plane::new(&field);
    let divs = arith::divisors(ambient_degree);
    let wants_generic =
        |k: u32| k >= 3 && space != Space::P1 && opts.generic_degrees.contains(&k);
    let slots = ambient_degree as usize + 1;
    // counters indexed by degree: (total, generic)
    let mut counts = vec![(0u64, 0u64); slots];
    let mut lcm = vec![0u32; slots * slots];
    for &a in &divs {
        for &b in &divs {
            lcm[a as usize * slots + b as usize] = arith::lcm_all(&[a, b]);
        }
    }

    match space {
        Space::P1 => {
            for [_, y] in plane.projective_line_points(ambient_degree) {
                counts[field.subfield_degree(y) as usize].0 += 1;
            }
        }
        Space::P2 | Space::P2Dual => {
            let dual = space == Space::P2Dual;
            let elements: Vec<FieldElement> = field.elements().collect();
            let classify = |coords: [FieldElement; 3], acc: &mut [(u64, u64)]| {
                let a = field.subfield_degree(coords[1]) as usize;
                let b = field.subfield_degree(coords[2]) as usize;
                let k = lcm[a * slots + b];
                let row = &mut acc[k as usize];
                row.0 += 1;
                if wants_generic(k) {
                    let level = if dual {
                        plane.line_genericity_level(&plane.line(coords).expect("normalized"))
                    } else {
                        plane.genericity_level(&plane.point(coords).expect("normalized"))
                    };
                    if level.expect("degree at least 3") == Genericity::Generic {
                        row.1 += 1;
                    }
                }
            };
            let merge = |mut a: Vec<(u64, u64)>, b: Vec<(u64, u64)>| {
                for (x, y) in a.iter_mut().zip(b) {
                    x.0 += y.0;
                    x.1 += y.1;
                }
                a
            };
            let partial = elements
                .par_iter()
                .map(|&y| {
                    let mut acc = vec![(0u64, 0u64); slots];
                    for &z in &elements {
                        classify([FieldElement::ONE, y, z], &mut acc);
                    }
                    acc
                })
                .reduce(|| vec![(0u64, 0u64); slots], merge);
            let mut rest = vec![(0u64, 0u64); slots];
            for &z in &elements {
                classify([FieldElement::ZERO, FieldElement::ONE, z], &mut rest);
            }
            classify([FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE], &mut rest);
            counts = merge(partial, rest);
        }
    }
    let rows = divs
        .iter()
        .map(|&k| {
            let (total, generic) = counts[k as usize];
            (k, CensusRow { total, generic: wants_generic(k).then_some(generic) })
        })
        .collect();
    Ok(CensusTable { q, ambient_degree, space, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn at(p: &QPolynomial, q: i64) -> i64 {
        p.evaluate_integer(q).unwrap().try_into().unwrap()
    }

    #[test]
    fn exact_degree_closed_forms() {
        assert_eq!(count_exact_degree(Space::P2, 2), QPolynomial::from_ints(&[0, -1, 0, 0, 1]));
        assert_eq!(at(&count_exact_degree(Space::P2, 2), 2), 14);
        assert_eq!(
            count_exact_degree(Space::P1, 6),
            QPolynomial::from_ints(&[0, 1, -1, -1, 0, 0, 1])
        );
        assert_eq!(at(&count_exact_degree(Space::P1, 6), 2), 54);
        assert_eq!(count_exact_degree(Space::P2, 1), QPolynomial::from_ints(&[1, 1, 1]));
        assert_eq!(
            count_exact_degree(Space::P2, 6),
            QPolynomial::from_ints(&[0, 1, 0, -1, -1, 0, 0, 0, 0, 0, 0, 0, 1])
        );
    }

    #[test]
    fn exact_degrees_sum_to_space_size() {
        for space in [Space::P1, Space::P2, Space::P2Dual] {
            for n in 1..=6 {
                let total = arith::divisors(n)
                    .into_iter()
                    .fold(QPolynomial::zero(), |acc, k| acc + count_exact_degree(space, k));
                assert_eq!(total, space_size(space, n));
            }
        }
    }

    #[test]
    fn generic_closed_forms() {
        let q = QPolynomial::var();
        let one = QPolynomial::from(1);
        let g3 = count_generic(3).unwrap();
        assert_eq!(
            g3,
            QPolynomial::product(&[(&q - &one).pow(2), q.pow(3), &q + &one])
        );
        assert_eq!(at(&g3, 2), 24);
        let g5 = count_generic(5).unwrap();
        let expected5 = QPolynomial::product(&[
            (&q - &one).pow(2),
            q.pow(3),
            &q + &one,
            QPolynomial::from_ints(&[1, 0, 1]),
            QPolynomial::from_ints(&[1, 1, 1]),
        ]);
        assert_eq!(g5, expected5);
        assert_eq!(at(&count_generic(6).unwrap(), 2), 2856);
        assert_eq!(count_generic(2), Err(CensusError::GenericDegree(2)));
        assert_eq!(count_generic(7), Err(CensusError::GenericDegree(7)));
        assert_eq!(
            count(CensusRequest { space: Space::P1, degree: 3, flavor: Flavor::Generic }),
            Err(CensusError::GenericOnLine)
        );
    }

    #[test]
    fn sextic_generic_count_needs_quadratic_base_reading() {
        // reading the last factor over F_q instead of F_{q^2} overshoots at q = 2
        let naive = count_exact_degree(Space::P2, 6)
            - &space_size(Space::P2Dual, 1) * &count_exact_degree(Space::P1, 6)
            - &count_exact_degree(Space::P2Dual, 2) * &count_exact_degree(Space::P1, 3);
        assert_eq!(at(&naive, 2), 3612);
        let table = census_by_enumeration(Space::P2, 2, 6, &CensusOptions::default()).unwrap();
        assert_eq!(table.rows[&6].generic, Some(2856));
        assert_eq!(count_generic(6).unwrap().evaluate_int(2), rat(2856));
    }

    #[test]
    fn enumeration_small_cases() {
        let opts = CensusOptions::default();
        let t = census_by_enumeration(Space::P2, 2, 6, &opts).unwrap();
        assert_eq!(t.rows[&6].total, 4074);
        assert_eq!(t.rows[&1].total, 7);
        let t = census_by_enumeration(Space::P2, 3, 2, &opts).unwrap();
        assert_eq!(t.rows[&2].total, 78);
        let t = census_by_enumeration(Space::P2, 2, 1, &opts).unwrap();
        assert_eq!(t.rows[&1].total, 7);
        let tight = CensusOptions { budget: 100, ..CensusOptions::default() };
        assert!(matches!(
            census_by_enumeration(Space::P2, 2, 6, &tight),
            Err(CensusError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn enumeration_matches_closed_forms_small() {
        let opts = CensusOptions::default();
        for space in [Space::P1, Space::P2, Space::P2Dual] {
            for &(q, l) in &[(2u64, 6u32), (3, 4), (4, 3), (2, 5)] {
                let t = census_by_enumeration(space, q, l, &opts).unwrap();
                for (&k, row) in &t.rows {
                    assert_eq!(row.total as i64, at(&count_exact_degree(space, k), q as i64));
                    if let Some(g) = row.generic {
                        assert_eq!(g as i64, at(&count_generic(k).unwrap(), q as i64), "{space:?} q={q} k={k}");
                    }
                }
            }
        }
    }
}
