//! Discrepancies between the printed count formulas and cohomology and what
//! the enumeration and the solver actually produce, each with live evidence.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::census::{census_by_enumeration, count_exact_degree, count_generic, space_size, CensusError, CensusOptions, Space};
use crate::characters::{character_table, CharacterError};
use crate::enumerate::{count_twisted, EnumError, EnumOptions};
use crate::formulas::{build_count_formula, published_count, FormulaError};
use crate::partition::Partition;
use crate::poly::{ratio, QPolynomial};
use crate::solver::{formula_counts, published_counts, render_sum, solve_characters, SolverError};

#[derive(Debug, Error)]
pub enum ErrataError {
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Characters(#[from] CharacterError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    /// The derived value replaces the printed one throughout.
    Corrected,
    /// Recorded only.
    Noted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub id: &'static str,
    pub subject: String,
    pub printed: String,
    pub resolved: String,
    pub evidence: Vec<String>,
    pub action: Action,
}

#[derive(Debug, Clone)]
pub struct ErrataOptions {
    /// Fields at which the disputed six-point class is enumerated.
    pub oracle_qs: Vec<u64>,
    pub enum_options: EnumOptions,
}

impl Default for ErrataOptions {
    fn default() -> Self {
        ErrataOptions { oracle_qs: vec![3, 4], enum_options: EnumOptions::default() }
    }
}

fn int(p: &QPolynomial, q: u64) -> String {
    p.evaluate_int(q as i64).to_string()
}

fn double_transposition(opts: &ErrataOptions) -> Result<Erratum, ErrataError> {
    let class = Partition::parse("(12)(34)", 6).expect("valid class");
    let derived = build_count_formula(6, &class)?.expand();
    let printed = published_count(6, &class)?;
    let mut evidence = Vec::new();
    let mut agrees = true;
    for &q in &opts.oracle_qs {
        let oracle = count_twisted(6, &class, q, &opts.enum_options)?.count;
        agrees &= oracle.to_string() == int(&derived, q);
        evidence.push(format!(
            "q={q}: enumeration {oracle}, prefactor 1/16 gives {}, prefactor 1/6 gives {}",
            int(&derived, q),
            int(&printed, q)
        ));
    }
    let rejected = solve_characters(6, &published_counts(6)?)?;
    evidence.push(format!(
        "solver on the printed list: {} violated conditions",
        rejected.violations().len()
    ));
    let accepted = solve_characters(6, &formula_counts(6)?)?;
    evidence.push(format!(
        "solver on the derived list: {} violated conditions",
        accepted.violations().len()
    ));
    Ok(Erratum {
        id: "six-point-(12)(34)-prefactor",
        subject: "count of six-point configurations with Frobenius of type (12)(34)".into(),
        printed: format!("prefactor 1/6: {printed}"),
        resolved: if agrees {
            format!("prefactor 1/16, the centralizer order of (12)(34) in S_6: {derived}")
        } else {
            "unresolved: enumeration agrees with neither prefactor".into()
        },
        evidence,
        action: if agrees { Action::Corrected } else { Action::Noted },
    })
}

fn degree_four_line() -> Result<Erratum, ErrataError> {
    let table = character_table(6)?;
    let p = |parts: &[u32]| Partition::from_parts(parts.to_vec()).expect("valid");
    let printed: BTreeMap<Partition, u64> = [
        (p(&[6]), 1),
        (p(&[1, 1, 1, 1, 1, 1]), 1),
        (p(&[5, 1]), 1),
        (p(&[2, 1, 1, 1, 1]), 1),
        (p(&[4, 1, 1]), 1),
        (p(&[3, 1, 1, 1]), 2),
        (p(&[3, 3]), 2),
        (p(&[2, 2, 2]), 3),
        (p(&[4, 2]), 2),
        (p(&[2, 2, 1, 1]), 1),
        (p(&[3, 2, 1]), 3),
    ]
    .into_iter()
    .collect();
    let dim = |d: &BTreeMap<Partition, u64>| -> u64 {
        d.iter().map(|(l, m)| m * table.character(l).expect("label").dimension()).sum()
    };
    let solved = solve_characters(6, &formula_counts(6)?)?;
    let (resolved, evidence, action) = match solved.solved() {
        Some(dec) => {
            let got = dec.degree(4);
            let diffs: Vec<String> = printed
                .keys()
                .chain(got.keys())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .filter(|l| printed.get(l) != got.get(l))
                .map(|l| {
                    format!(
                        "{l}: printed multiplicity {}, solved {}",
                        printed.get(l).copied().unwrap_or(0),
                        got.get(l).copied().unwrap_or(0)
                    )
                })
                .collect();
            let mut ev = vec![format!("printed dimensions sum to {}", dim(&printed)), format!("solved dimensions sum to {}", dim(&got))];
            ev.extend(diffs);
            (format!("{} (dimension {})", render_sum(&got), dim(&got)), ev, Action::Corrected)
        }
        None => ("unresolved: solver rejected the derived counts".into(), vec![], Action::Noted),
    };
    Ok(Erratum {
        id: "x6-degree-4",
        subject: "degree-4 cohomology of X_6 as an S_6 representation".into(),
        printed: format!("{} (dimension {})", render_sum(&printed), dim(&printed)),
        resolved,
        evidence,
        action,
    })
}

fn sextic_base_field() -> Result<Erratum, ErrataError> {
    let over_q = count_exact_degree(Space::P2, 6)
        - &space_size(Space::P2Dual, 1) * &count_exact_degree(Space::P1, 6)
        - &count_exact_degree(Space::P2Dual, 2) * &count_exact_degree(Space::P1, 3);
    let over_q2 = count_generic(6).expect("degree 6");
    let table = census_by_enumeration(Space::P2, 2, 6, &CensusOptions { generic_degrees: vec![6], ..Default::default() })?;
    let enumerated = table.rows.get(&6).and_then(|r| r.generic).unwrap_or(0);
    Ok(Erratum {
        id: "generic-sextic-base-field",
        subject: "last correction term in the generic sextic point count".into(),
        printed: format!("cubic points of P^1 left implicit; read over F_q the count is {over_q}, {} at q=2", int(&over_q, 2)),
        resolved: format!("cubic points of P^1 over F_(q^2): {over_q2}, {} at q=2", int(&over_q2, 2)),
        evidence: vec![format!("enumeration of P^2(F_64): {enumerated} generic sextic points")],
        action: Action::Corrected,
    })
}

fn identity_label() -> Result<Erratum, ErrataError> {
    let e6 = build_count_formula(6, &Partition::identity(6))?.expand();
    Ok(Erratum {
        id: "six-point-identity-label",
        subject: "name of the untwisted six-point count in its derivation".into(),
        printed: "p_{5,e}".into(),
        resolved: "p_{6,e}".into(),
        evidence: vec![format!("the displayed polynomial has degree {}, the dimension of F_6", e6.degree().unwrap_or(0))],
        action: Action::Corrected,
    })
}

fn cubic_pair_deficit() -> Result<Erratum, ErrataError> {
    let class = Partition::parse("(123)(456)", 6).expect("valid class");
    let g3 = count_generic(3).expect("degree 3");
    let printed_d = QPolynomial::from_ints(&[-9, 6, -6, 6]);
    let derived_d = QPolynomial::from_ints(&[-9, -6, -6, 6]);
    let with = |d: &QPolynomial| (&g3 * &(&g3 - d)).scale(&ratio(1, 18));
    let row = published_count(6, &class)?;
    let oracle = count_twisted(6, &class, 3, &EnumOptions::default())?.count;
    Ok(Erratum {
        id: "(123)(456)-deficit",
        subject: "points excluded for the second cubic orbit in type (123)(456)".into(),
        printed: format!("{printed_d}"),
        resolved: format!("{derived_d}"),
        evidence: vec![
            format!("printed constant reproduces the tabulated row: {}", with(&printed_d) == row),
            format!("corrected constant reproduces the tabulated row: {}", with(&derived_d) == row),
            format!(
                "q=3: enumeration {oracle}, corrected {}, printed {}",
                int(&with(&derived_d), 3),
                int(&with(&printed_d), 3)
            ),
        ],
        action: Action::Corrected,
    })
}

fn two_dimensional_w() -> Result<Erratum, ErrataError> {
    let dims: Vec<String> = character_table(5)?.irreducibles.iter().map(|c| c.dimension().to_string()).collect();
    Ok(Erratum {
        id: "s5-character-w",
        subject: "character W, described as a 2-dimensional irreducible of S_5".into(),
        printed: "W".into(),
        resolved: "no action; W is not used in any decomposition".into(),
        evidence: vec![format!("irreducible dimensions of S_5: {}", dims.join(", "))],
        action: Action::Noted,
    })
}

/// All known discrepancies, in a fixed order.
pub fn errata_report(opts: &ErrataOptions) -> Result<Vec<Erratum>, ErrataError> {
    Ok(vec![
        double_transposition(opts)?,
        degree_four_line()?,
        sextic_base_field()?,
        identity_label()?,
        cubic_pair_deficit()?,
        two_dimensional_w()?,
    ])
}

pub fn render_text(errata: &[Erratum]) -> String {
    let mut out = String::new();
    for e in errata {
        let action = match e.action {
            Action::Corrected => "corrected",
            Action::Noted => "noted",
        };
        let _ = writeln!(out, "[{}] {} ({action})", e.id, e.subject);
        let _ = writeln!(out, "  printed:  {}", e.printed);
        let _ = writeln!(out, "  resolved: {}", e.resolved);
        for line in &e.evidence {
            let _ = writeln!(out, "  - {line}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_entries() {
        let opts = ErrataOptions { oracle_qs: vec![3], ..Default::default() };
        let report = errata_report(&opts).unwrap();
        let ids: Vec<&str> = report.iter().map(|e| e.id).collect();
        assert_eq!(
            ids,
            [
                "six-point-(12)(34)-prefactor",
                "x6-degree-4",
                "generic-sextic-base-field",
                "six-point-identity-label",
                "(123)(456)-deficit",
                "s5-character-w"
            ]
        );
        let first = &report[0];
        assert_eq!(first.action, Action::Corrected);
        assert!(first.evidence[0].contains("enumeration 4212"), "{:?}", first.evidence);
        assert!(report[1].printed.ends_with("(dimension 142)"));
        assert!(report[1].resolved.ends_with("(dimension 126)"));
        assert!(report[2].printed.contains("3612"));
        assert!(report[2].evidence[0].contains("2856"));
        assert!(report[4].evidence[0].ends_with("false"));
        assert!(report[4].evidence[1].ends_with("true"));
        assert!(render_text(&report).contains("[s5-character-w]"));
    }
}
