//! Recovers the equivariant Betti numbers of `X_n` from the twisted counts
//! `p_{n,C}(q)`, then assembles the tables for `F_n = PGL_3 x X_n` and the
//! unordered quotient `B_n`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::arith;
use crate::characters::{character_table, representation_name, CharacterError, ClassFunction};
use crate::formulas::{build_count_formula, pgl3_polynomial, published_count, FormulaError};
use crate::partition::{CycleType, Partition};
use crate::poly::{rat, QPolynomial};

/// `(degree, weight)` of the cohomology generators of `PGL_3`, including the unit.
pub const PGL_TERMS: [(usize, usize); 4] = [(0, 0), (3, 2), (5, 3), (8, 5)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("no count supplied for class {0}")]
    MissingClass(String),
    #[error("count for class {class} has degree {degree} above {limit}")]
    DegreeTooHigh { class: String, degree: usize, limit: usize },
    #[error(transparent)]
    Characters(#[from] CharacterError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    NonIntegralCoefficient,
    NonIntegralMultiplicity,
    NegativeMultiplicity,
    BeyondDimension,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub label: Partition,
    /// Cohomological degree `j`, or the exponent of `q` for coefficient failures.
    pub degree: usize,
    pub value: BigRational,
}

/// Multiplicities `m_{lambda,k}` of each irreducible in `H^k(X_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepDecomposition {
    pub n: u32,
    pub multiplicities: BTreeMap<(Partition, usize), u64>,
}

impl RepDecomposition {
    /// `2(n - 4)`, the dimension of `X_n`.
    pub fn top_degree(&self) -> usize {
        2 * (self.n as usize).saturating_sub(4)
    }

    pub fn degree(&self, k: usize) -> BTreeMap<Partition, u64> {
        self.multiplicities
            .iter()
            .filter(|((_, d), m)| *d == k && **m > 0)
            .map(|((l, _), m)| (l.clone(), *m))
            .collect()
    }

    pub fn betti(&self) -> Vec<u64> {
        let table = character_table(self.n).expect("solved tables exist");
        (0..=self.top_degree())
            .map(|k| {
                self.degree(k)
                    .iter()
                    .map(|(l, m)| m * table.character(l).expect("label").dimension())
                    .sum()
            })
            .collect()
    }
}

/// Outcome of [`solve_characters`]: either a clean decomposition or every
/// violated condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(RepDecomposition),
    Rejected(Vec<Violation>),
}

impl SolveOutcome {
    pub fn solved(self) -> Option<RepDecomposition> {
        match self {
            SolveOutcome::Solved(d) => Some(d),
            SolveOutcome::Rejected(_) => None,
        }
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            SolveOutcome::Solved(_) => &[],
            SolveOutcome::Rejected(v) => v,
        }
    }
}

pub type Counts = BTreeMap<CycleType, QPolynomial>;

/// `L_lambda(q) = sum_C chi_lambda(C) p_{n,C}(q)`.
pub fn character_sum(n: u32, label: &Partition, counts: &Counts) -> Result<QPolynomial, SolverError> {
    let table = character_table(n)?;
    let chi = table.character(label).ok_or_else(|| SolverError::MissingClass(label.to_string()))?;
    let mut total = QPolynomial::zero();
    for (idx, class) in table.classes.classes.iter().enumerate() {
        let p = counts.get(class).ok_or_else(|| SolverError::MissingClass(class.cycle_notation()))?;
        total = total + p.scale(chi.values.value(idx));
    }
    Ok(total)
}

/// Inverts `c_j = m_j - m_{j-2} + m_{j-3} - m_{j-5}`, the effect of the
/// `PGL_3` factor, on the signed top-down coefficients of each `L_lambda`.
pub fn solve_characters(n: u32, counts: &Counts) -> Result<SolveOutcome, SolverError> {
    let table = character_table(n)?;
    let top = 2 * n as usize;
    for class in &table.classes.classes {
        let p = counts.get(class).ok_or_else(|| SolverError::MissingClass(class.cycle_notation()))?;
        if let Some(d) = p.degree().filter(|&d| d > top) {
            return Err(SolverError::DegreeTooHigh { class: class.cycle_notation(), degree: d, limit: top });
        }
    }
    let dim_x = 2 * (n as usize).saturating_sub(4);
    let mut violations = Vec::new();
    let mut multiplicities = BTreeMap::new();
    for chi in &table.irreducibles {
        let l = character_sum(n, &chi.label, counts)?;
        for (e, c) in l.coefficients().iter().enumerate() {
            if !c.is_integer() {
                violations.push(Violation {
                    kind: ViolationKind::NonIntegralCoefficient,
                    label: chi.label.clone(),
                    degree: e,
                    value: c.clone(),
                });
            }
        }
        let mut m: Vec<BigRational> = Vec::with_capacity(top + 1);
        let get = |m: &[BigRational], j: usize, back: usize| -> BigRational {
            j.checked_sub(back).map_or_else(BigRational::zero, |i| m[i].clone())
        };
        for j in 0..=top {
            let a = l.coeff(top - j);
            let signed = if j % 2 == 0 { a } else { -a };
            let mj = signed + get(&m, j, 2) - get(&m, j, 3) + get(&m, j, 5);
            m.push(mj);
        }
        for (j, mj) in m.iter().enumerate() {
            let kind = if !mj.is_integer() {
                Some(ViolationKind::NonIntegralMultiplicity)
            } else if mj.is_negative() {
                Some(ViolationKind::NegativeMultiplicity)
            } else if j > dim_x && !mj.is_zero() {
                Some(ViolationKind::BeyondDimension)
            } else {
                None
            };
            match kind {
                Some(kind) => violations.push(Violation { kind, label: chi.label.clone(), degree: j, value: mj.clone() }),
                None if j <= dim_x => {
                    let v = u64::try_from(mj.to_integer()).expect("small multiplicity");
                    multiplicities.insert((chi.label.clone(), j), v);
                }
                None => {}
            }
        }
    }
    Ok(if violations.is_empty() {
        SolveOutcome::Solved(RepDecomposition { n, multiplicities })
    } else {
        SolveOutcome::Rejected(violations)
    })
}

/// The closed-form count polynomials for every class.
pub fn formula_counts(n: u32) -> Result<Counts, SolverError> {
    Partition::all(n)
        .into_iter()
        .map(|c| Ok((c.clone(), build_count_formula(n, &c)?.expand())))
        .collect()
}

/// The count polynomials exactly as tabulated.
pub fn published_counts(n: u32) -> Result<Counts, SolverError> {
    Partition::all(n)
        .into_iter()
        .map(|c| Ok((c.clone(), published_count(n, &c)?)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SpaceKind {
    /// Configurations modulo `PGL_3`.
    X,
    /// Ordered configurations.
    F,
    /// Unordered configurations.
    B,
}

/// One `(degree, weight)` piece of a cohomology table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub degree: usize,
    pub weight: usize,
    pub decomposition: BTreeMap<Partition, u64>,
}

/// `P_X(x, t)`: class functions keyed by `(degree, weight)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepPolynomial {
    pub n: u32,
    pub terms: BTreeMap<(usize, usize), ClassFunction>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    pub space: SpaceKind,
    pub n: u32,
    pub betti: Vec<u64>,
    pub cells: Vec<Cell>,
}

impl CohomologyTable {
    pub fn label(&self) -> String {
        format!("{:?}{}", self.space, self.n)
    }

    /// Irreducible content of one degree, summed over weights.
    pub fn degree(&self, k: usize) -> BTreeMap<Partition, u64> {
        let mut out = BTreeMap::new();
        for cell in self.cells.iter().filter(|c| c.degree == k) {
            for (l, m) in &cell.decomposition {
                *out.entry(l.clone()).or_insert(0) += m;
            }
        }
        out
    }

    pub fn weights(&self, k: usize) -> Vec<usize> {
        let mut w: Vec<usize> = self.cells.iter().filter(|c| c.degree == k).map(|c| c.weight).collect();
        w.dedup();
        w
    }

    pub fn pure(&self) -> bool {
        self.cells.iter().all(|c| c.degree == c.weight)
    }

    pub fn poincare(&self) -> QPolynomial {
        QPolynomial::from_coeffs(self.betti.iter().map(|&b| rat(b as i64)).collect())
    }

    pub fn rep_polynomial(&self) -> Result<RepPolynomial, SolverError> {
        let table = character_table(self.n)?;
        let mut terms = BTreeMap::new();
        for cell in &self.cells {
            let mut f = ClassFunction::zero(self.n);
            for (l, m) in &cell.decomposition {
                let chi = table.character(l).expect("label");
                f = f.add(&chi.values.scale(&rat(*m as i64)))?;
            }
            terms.insert((cell.degree, cell.weight), f);
        }
        Ok(RepPolynomial { n: self.n, terms })
    }

    /// `sum_{i,w} (-1)^i b_{i,w} q^{dim - w}` for a space of complex dimension `dim`.
    pub fn point_count(&self, dim: usize) -> QPolynomial {
        let table = character_table(self.n).expect("table");
        let mut coeffs = vec![BigRational::zero(); dim + 1];
        for cell in &self.cells {
            let dims: u64 = cell
                .decomposition
                .iter()
                .map(|(l, m)| m * if self.space == SpaceKind::B { 1 } else { table.character(l).expect("label").dimension() })
                .sum();
            let sign = if cell.degree % 2 == 0 { 1 } else { -1 };
            coeffs[dim - cell.weight] += rat(sign * dims as i64);
        }
        QPolynomial::from_coeffs(coeffs)
    }

    pub fn to_json(&self) -> Value {
        let mut decomposition = Map::new();
        for k in 0..self.betti.len() {
            let d = self.degree(k);
            if d.is_empty() {
                continue;
            }
            let inner: Map<String, Value> = d.iter().map(|(l, m)| (l.to_string(), json!(m))).collect();
            decomposition.insert(k.to_string(), Value::Object(inner));
        }
        let weights = if self.pure() {
            json!("w=i")
        } else {
            let m: Map<String, Value> = (0..self.betti.len())
                .filter(|&k| !self.weights(k).is_empty())
                .map(|k| (k.to_string(), json!(self.weights(k))))
                .collect();
            Value::Object(m)
        };
        json!({
            "space": self.label(),
            "betti": self.betti,
            "decomposition": decomposition,
            "weights": weights,
        })
    }

    /// One line per nonzero degree, irreducibles by conventional name.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, b) in self.betti.iter().enumerate() {
            if *b == 0 {
                continue;
            }
            let body = if self.space == SpaceKind::B {
                format!("Q^{b}")
            } else {
                render_sum(&self.degree(k))
            };
            let w = self.weights(k).iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            let _ = writeln!(out, "H^{k}({}) = {body}    [dim {b}, weight {w}]", self.label());
        }
        out
    }
}

fn name_rank(l: &Partition) -> (usize, std::cmp::Reverse<Partition>) {
    let order = ["U", "U'", "V", "V'", "Λ²V", "Λ³V"];
    let name = representation_name(l);
    let rank = order.iter().position(|o| *o == name).unwrap_or(order.len());
    (rank, std::cmp::Reverse(l.clone()))
}

/// `V ⊕ Λ²V^{⊕2} ⊕ ...`
pub fn render_sum(d: &BTreeMap<Partition, u64>) -> String {
    let mut items: Vec<(&Partition, &u64)> = d.iter().filter(|(_, m)| **m > 0).collect();
    items.sort_by_key(|(l, _)| name_rank(l));
    if items.is_empty() {
        return "0".into();
    }
    items
        .iter()
        .map(|(l, m)| {
            let name = representation_name(l);
            if **m == 1 {
                name
            } else {
                format!("{name}^{{⊕{m}}}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

/// `X_n`, `F_n = PGL_3 x X_n` with trivial action on the first factor, and
/// `B_n` via the invariants of `F_n`.
pub fn assemble_tables(dec: &RepDecomposition) -> [CohomologyTable; 3] {
    let n = dec.n;
    let top = dec.top_degree();
    let x_cells: Vec<Cell> = (0..=top)
        .map(|k| Cell { degree: k, weight: k, decomposition: dec.degree(k) })
        .filter(|c| !c.decomposition.is_empty())
        .collect();
    let x = CohomologyTable { space: SpaceKind::X, n, betti: dec.betti(), cells: x_cells.clone() };

    let mut f_cells: BTreeMap<(usize, usize), BTreeMap<Partition, u64>> = BTreeMap::new();
    for &(a, wa) in &PGL_TERMS {
        for cell in &x_cells {
            let slot = f_cells.entry((a + cell.degree, wa + cell.weight)).or_default();
            for (l, m) in &cell.decomposition {
                *slot.entry(l.clone()).or_insert(0) += m;
            }
        }
    }
    let f_top = top + 8;
    let table = character_table(n).expect("table");
    let cells: Vec<Cell> =
        f_cells.into_iter().map(|((degree, weight), decomposition)| Cell { degree, weight, decomposition }).collect();
    let mut f_betti = vec![0u64; f_top + 1];
    for c in &cells {
        f_betti[c.degree] += c.decomposition.iter().map(|(l, m)| m * table.character(l).expect("label").dimension()).sum::<u64>();
    }
    let f = CohomologyTable { space: SpaceKind::F, n, betti: f_betti, cells: cells.clone() };

    let trivial = Partition::cycle(n);
    let b_cells: Vec<Cell> = cells
        .iter()
        .filter_map(|c| {
            let m = *c.decomposition.get(&trivial)?;
            Some(Cell { degree: c.degree, weight: c.weight, decomposition: BTreeMap::from([(trivial.clone(), m)]) })
        })
        .collect();
    let mut b_betti = vec![0u64; f_top + 1];
    for c in &b_cells {
        b_betti[c.degree] += c.decomposition[&trivial];
    }
    let b = CohomologyTable { space: SpaceKind::B, n, betti: b_betti, cells: b_cells };
    [x, f, b]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    /// `sum_C p_{n,C}` from the inputs.
    pub class_sum: QPolynomial,
    /// The same count rebuilt from the `B_n` table.
    pub from_table: QPolynomial,
    /// `n! p_{n,e}`.
    pub ordered_identity_count: QPolynomial,
    /// `|PGL_3| |X_n|` with `|X_n|` rebuilt from the `X_n` table.
    pub frame_product: QPolynomial,
}

impl ConsistencyReport {
    pub fn sum_matches(&self) -> bool {
        self.class_sum == self.from_table
    }

    pub fn frame_matches(&self) -> bool {
        self.ordered_identity_count == self.frame_product
    }

    pub fn ok(&self) -> bool {
        self.sum_matches() && self.frame_matches()
    }
}

pub fn untwisted_consistency(dec: &RepDecomposition, counts: &Counts) -> Result<ConsistencyReport, SolverError> {
    let n = dec.n;
    let [x, _, b] = assemble_tables(dec);
    let class_sum = counts.values().fold(QPolynomial::zero(), |acc, p| acc + p);
    let from_table = b.point_count(2 * n as usize);
    let identity = Partition::identity(n);
    let e = counts.get(&identity).ok_or_else(|| SolverError::MissingClass("e".into()))?;
    let ordered_identity_count = e.scale(&rat(arith::factorial(n) as i64));
    let frame_product = pgl3_polynomial() * x.point_count(dec.top_degree());
    Ok(ConsistencyReport { class_sum, from_table, ordered_identity_count, frame_product })
}

/// `sum_k (-1)^k b_k`.
pub fn euler_characteristic(betti: &[u64]) -> BigInt {
    betti
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { BigInt::from(b) } else { -BigInt::from(b) })
        .sum()
}

/// Value of `|X_n(F_q)|` at `q = 1` from the table, for the Euler check.
pub fn x_count_at_one(table: &CohomologyTable) -> BigRational {
    table.point_count(table.betti.len() - 1).evaluate(&BigRational::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts.to_vec()).unwrap()
    }

    #[test]
    fn five_points() {
        let counts = formula_counts(5).unwrap();
        let dec = solve_characters(5, &counts).unwrap().solved().unwrap();
        assert_eq!(dec.degree(0), BTreeMap::from([(p(&[5]), 1)]));
        assert_eq!(dec.degree(1), BTreeMap::from([(p(&[3, 2]), 1)]));
        assert_eq!(dec.degree(2), BTreeMap::from([(p(&[3, 1, 1]), 1)]));
        assert_eq!(dec.betti(), vec![1, 5, 6]);
        let [x, f, b] = assemble_tables(&dec);
        assert!(x.pure());
        assert_eq!(f.poincare(), QPolynomial::from_ints(&[1, 0, 0, 1, 0, 1, 0, 0, 1]) * QPolynomial::from_ints(&[1, 5, 6]));
        assert_eq!(b.betti, vec![1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0]);
        assert!(untwisted_consistency(&dec, &counts).unwrap().ok());
    }

    #[test]
    fn six_points() {
        let counts = formula_counts(6).unwrap();
        let dec = solve_characters(6, &counts).unwrap().solved().unwrap();
        assert_eq!(dec.betti(), vec![1, 14, 72, 159, 126]);
        assert_eq!(dec.degree(1), BTreeMap::from([(p(&[3, 3]), 1), (p(&[4, 2]), 1)]));
        let [x, _, b] = assemble_tables(&dec);
        let nonzero: Vec<usize> = b.betti.iter().enumerate().filter(|(_, &v)| v > 0).map(|(k, _)| k).collect();
        assert_eq!(nonzero, vec![0, 3, 4, 5, 7, 8, 9, 12]);
        assert!(b.betti.iter().all(|&v| v <= 1));
        assert_eq!(euler_characteristic(&x.betti), BigInt::from(26));
        assert_eq!(x_count_at_one(&x), rat(26));
        assert!(untwisted_consistency(&dec, &counts).unwrap().ok());
    }

    #[test]
    fn printed_six_point_table_is_rejected() {
        let out = solve_characters(6, &published_counts(6).unwrap()).unwrap();
        assert!(!out.violations().is_empty());
        let five = solve_characters(5, &published_counts(5).unwrap()).unwrap();
        assert!(five.violations().is_empty());
    }

    #[test]
    fn missing_or_oversized_inputs() {
        let mut counts = formula_counts(5).unwrap();
        counts.remove(&Partition::cycle(5));
        assert!(matches!(solve_characters(5, &counts), Err(SolverError::MissingClass(_))));
        let mut counts = formula_counts(5).unwrap();
        counts.insert(Partition::cycle(5), QPolynomial::monomial(rat(1), 11));
        assert!(matches!(solve_characters(5, &counts), Err(SolverError::DegreeTooHigh { .. })));
    }

    #[test]
    fn rendering_and_json() {
        let dec = solve_characters(5, &formula_counts(5).unwrap()).unwrap().solved().unwrap();
        let [x, _, b] = assemble_tables(&dec);
        let text = x.render();
        assert!(text.contains("H^1(X5) = S_{3,2}"), "{text}");
        assert!(text.contains("H^2(X5) = Λ²V"), "{text}");
        let j = x.to_json();
        assert_eq!(j["betti"], json!([1, 5, 6]));
        assert_eq!(j["weights"], json!("w=i"));
        assert_eq!(j["decomposition"]["1"]["(3,2)"], json!(1));
        assert_eq!(b.to_json()["space"], json!("B5"));
        let mut d = BTreeMap::new();
        d.insert(p(&[3, 2, 1]), 2);
        d.insert(p(&[5, 1]), 1);
        assert_eq!(render_sum(&d), "V ⊕ S_{3,2,1}^{⊕2}");
    }
}
