//! Closed-form twisted counts `p_{n,C}(q)` for `n = 5, 6`, kept as products of
//! annotated factors, next to the polynomials as they appear in the published
//! tables.

use std::io::Write;

use num_rational::BigRational;
use thiserror::Error;

use crate::census::{count_exact_degree, count_generic, space_size, Space};
use crate::partition::{CycleType, Partition};
use crate::poly::{rat, ratio, QPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("no count formula for n = {n}, class {class}")]
    Unknown { n: u32, class: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Factor {
    pub poly: QPolynomial,
    pub note: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountFormula {
    pub n: u32,
    pub cycle_type: CycleType,
    pub prefactor: BigRational,
    pub factors: Vec<Factor>,
}

impl CountFormula {
    pub fn expand(&self) -> QPolynomial {
        QPolynomial::product(self.factors.iter().map(|f| &f.poly)).scale(&self.prefactor)
    }

    pub fn evaluate(&self, q: i64) -> BigRational {
        self.expand().evaluate_int(q)
    }
}

fn q() -> QPolynomial {
    QPolynomial::var()
}

fn c(v: i64) -> QPolynomial {
    QPolynomial::from(v)
}

/// `|PGL_3(F_q)| = q^3 (q^3 - 1)(q^2 - 1)`.
pub fn pgl3_polynomial() -> QPolynomial {
    QPolynomial::from_ints(&[0, 0, 0, 1]) * QPolynomial::from_ints(&[-1, 0, 0, 1]) * QPolynomial::from_ints(&[-1, 0, 1])
}

struct Pieces {
    plane: QPolynomial,
    line: QPolynomial,
    quadratic: QPolynomial,
    quadratic_on_line: QPolynomial,
    generic: [QPolynomial; 4],
}

impl Pieces {
    fn new() -> Self {
        let generic = [3, 4, 5, 6].map(|k| count_generic(k).expect("3..=6"));
        Pieces {
            plane: space_size(Space::P2, 1),
            line: space_size(Space::P1, 1),
            quadratic: count_exact_degree(Space::P2, 2),
            quadratic_on_line: count_exact_degree(Space::P1, 2),
            generic,
        }
    }

    fn g(&self, k: usize) -> QPolynomial {
        self.generic[k - 3].clone()
    }
}

fn f(poly: QPolynomial, note: &'static str) -> Factor {
    Factor { poly, note }
}

fn five_point_factors(parts: &[u32], s: &Pieces) -> Option<Vec<Factor>> {
    let (p2, p1, e2) = (&s.plane, &s.line, &s.quadratic);
    Some(match parts {
        [1, 1, 1, 1, 1] => vec![
            f(pgl3_polynomial(), "ordered frames |PGL_3(F_q)|"),
            f(p2 - p1.scale(&rat(6)) + c(11), "|P^2(F_q)| - 6(q + 1) + 11 off the six frame lines"),
        ],
        [2, 1, 1, 1] => vec![
            f(e2.clone(), "quadratic points"),
            f(p2 - p1, "off the rational line through the pair"),
            f(p2 - p1 - c(1), "off that line and the first rational point"),
            f(p2 - p1.scale(&rat(2)) + c(1), "off the two rational lines"),
        ],
        [2, 2, 1] => vec![
            f(e2.clone(), "quadratic points"),
            f(e2 - &s.quadratic_on_line, "quadratic points off the first pair's line"),
            f(p2 - p1.scale(&rat(2)) - c(1), "rational point off both lines and their meet"),
        ],
        [3, 1, 1] => vec![
            f(s.g(3), "generic cubic points"),
            f(p2.clone(), "first rational point"),
            f(p2 - c(1), "second rational point"),
        ],
        [3, 2] => vec![f(s.g(3), "generic cubic points"), f(e2.clone(), "quadratic points")],
        [4, 1] => vec![f(s.g(4), "generic quartic points"), f(p2 - c(1), "rational point off the diagonal meet")],
        [5] => vec![f(s.g(5), "generic quintic points")],
        _ => return None,
    })
}

fn six_point_factors(parts: &[u32], s: &Pieces) -> Option<Vec<Factor>> {
    let (p2, e2, g3) = (&s.plane, &s.quadratic, s.g(3));
    let q = q();
    let extend = |five: &[u32], extra: Factor| {
        let mut fs = five_point_factors(five, s).expect("five-point class");
        fs.push(extra);
        fs
    };
    Some(match parts {
        [1, 1, 1, 1, 1, 1] => extend(
            &[1, 1, 1, 1, 1],
            f(p2 - (q.scale(&rat(10)) - c(20)), "|P^2(F_q)| - (10q - 20)"),
        ),
        [2, 1, 1, 1, 1] => extend(&[2, 1, 1, 1], f(p2 - (q.scale(&rat(4)) - c(2)), "|P^2(F_q)| - (4q - 2)")),
        [2, 2, 1, 1] => extend(&[2, 2, 1], f(p2 - (q.scale(&rat(2)) + c(4)), "|P^2(F_q)| - (2q + 4)")),
        [2, 2, 2] => vec![
            f(e2.clone(), "quadratic points"),
            f(e2 - &s.quadratic_on_line, "quadratic points off the first pair's line"),
            f(
                e2 - QPolynomial::from_ints(&[-8, -2, 6]),
                "quadratic points minus (6q^2 - 2q - 8)",
            ),
        ],
        [3, 1, 1, 1] => extend(&[3, 1, 1], f(p2 - (&q + c(1)), "|P^2(F_q)| - (q + 1)")),
        [3, 2, 1] => extend(&[3, 2], f(p2 - (&q + c(1)), "|P^2(F_q)| - (q + 1)")),
        [3, 3] => vec![
            f(g3.clone(), "generic cubic points"),
            f(
                &g3 - QPolynomial::from_ints(&[-9, -6, -6, 6]),
                "generic cubic points minus (6q^3 - 6q^2 - 6q - 9)",
            ),
        ],
        [4, 1, 1] => extend(&[4, 1], f(p2 - c(2), "|P^2(F_q)| - 2")),
        [4, 2] => vec![
            f(s.g(4), "generic quartic points"),
            f(e2 - QPolynomial::from_ints(&[2, 0, 2]), "quadratic points minus (2q^2 + 2)"),
        ],
        [5, 1] => extend(&[5], f(p2.clone(), "any rational point")),
        [6] => vec![f(s.g(6), "generic sextic points")],
        _ => return None,
    })
}

/// Factored closed form with prefactor `1 / |Z(C)|`.
pub fn build_count_formula(n: u32, class: &CycleType) -> Result<CountFormula, FormulaError> {
    let unknown = || FormulaError::Unknown { n, class: class.to_string() };
    if class.size() != n {
        return Err(unknown());
    }
    let pieces = Pieces::new();
    let factors = match n {
        5 => five_point_factors(class.parts(), &pieces),
        6 => six_point_factors(class.parts(), &pieces),
        _ => None,
    }
    .ok_or_else(unknown)?;
    Ok(CountFormula {
        n,
        cycle_type: class.clone(),
        prefactor: ratio(1, class.centralizer_order() as i64),
        factors,
    })
}

/// All formulas for `n`, in class order.
pub fn count_formulas(n: u32) -> Result<Vec<CountFormula>, FormulaError> {
    Partition::all(n).iter().map(|c| build_count_formula(n, c)).collect()
}

/// Rows of the published tables, verbatim: prefactor numerator and denominator,
/// then `(coefficients, exponent)` factors.
type PrintedRow = ((i64, i64), &'static [(&'static [i64], u32)]);

const M3: &[i64] = &[-3, 1];
const M2: &[i64] = &[-2, 1];
const M1: &[i64] = &[-1, 1];
const Q: &[i64] = &[0, 1];
const P1: &[i64] = &[1, 1];
const P2: &[i64] = &[1, 1, 1];
const Q2P1: &[i64] = &[1, 0, 1];

const PRINTED_5: [PrintedRow; 7] = [
    ((1, 120), &[(M3, 1), (M2, 1), (M1, 2), (Q, 3), (P1, 1), (P2, 1)]),
    ((1, 12), &[(M1, 3), (Q, 4), (P1, 1), (P2, 1)]),
    ((1, 8), &[(M2, 1), (M1, 2), (Q, 3), (P1, 2), (P2, 1)]),
    ((1, 6), &[(M1, 2), (Q, 4), (P1, 2), (P2, 1)]),
    ((1, 6), &[(M1, 3), (Q, 4), (P1, 1), (P2, 1)]),
    ((1, 4), &[(M1, 2), (Q, 4), (P1, 2), (P2, 1)]),
    ((1, 5), &[(M1, 2), (Q, 3), (P1, 1), (Q2P1, 1), (P2, 1)]),
];

const PRINTED_6: [PrintedRow; 11] = [
    ((1, 720), &[(M3, 1), (M2, 1), (M1, 2), (Q, 3), (P1, 1), (P2, 1), (&[21, -9, 1], 1)]),
    ((1, 48), &[(M1, 3), (Q, 4), (P1, 1), (P2, 1), (&[3, -3, 1], 1)]),
    ((1, 6), &[(M2, 1), (M1, 2), (Q, 3), (P1, 2), (P2, 1), (&[-3, -1, 1], 1)]),
    ((1, 48), &[(M1, 2), (Q, 3), (P1, 1), (P2, 1), (&[8, 1, -6, 0, 1], 1)]),
    ((1, 18), &[(M1, 2), (Q, 6), (P1, 2), (P2, 1)]),
    ((1, 6), &[(M1, 3), (Q, 6), (P1, 1), (P2, 1)]),
    ((1, 18), &[(M1, 2), (Q, 3), (P1, 1), (P2, 1), (&[9, -3, 0, -2, 1], 1)]),
    ((1, 8), &[(M1, 2), (Q, 4), (P1, 2), (P2, 1), (&[-1, 1, 1], 1)]),
    ((1, 8), &[(M1, 2), (Q, 3), (P1, 1), (P2, 1), (&[-2, -1, -2, 0, 1], 1)]),
    ((1, 5), &[(M1, 2), (Q, 3), (P1, 1), (Q2P1, 1), (P2, 2)]),
    ((1, 6), &[(M1, 2), (Q, 3), (P1, 1), (P2, 1), (&[-1, 1, 0, 0, 1], 1)]),
];

/// The count polynomial exactly as tabulated in the source, misprints included.
pub fn published_count(n: u32, class: &CycleType) -> Result<QPolynomial, FormulaError> {
    let unknown = || FormulaError::Unknown { n, class: class.to_string() };
    let rows: &[PrintedRow] = match n {
        5 => &PRINTED_5,
        6 => &PRINTED_6,
        _ => return Err(unknown()),
    };
    let idx = Partition::all(n).iter().position(|c| c == class).ok_or_else(unknown)?;
    let ((num, den), factors) = rows[idx];
    let polys: Vec<QPolynomial> =
        factors.iter().map(|(coeffs, e)| QPolynomial::from_ints(coeffs).pow(*e)).collect();
    Ok(QPolynomial::product(&polys).scale(&ratio(num, den)))
}

/// One CSV record per polynomial: `n`, class in cycle notation, then the
/// coefficients from degree 0 up as `num/den`.
pub fn write_csv<W: Write>(rows: &[(u32, CycleType, QPolynomial)], out: W) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
    for (n, class, poly) in rows {
        let mut record = vec![n.to_string(), class.cycle_notation()];
        record.extend(poly.coefficients().iter().map(|c| format!("{}/{}", c.numer(), c.denom())));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}
