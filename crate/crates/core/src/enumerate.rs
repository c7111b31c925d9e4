//! Exhaustive twisted point counts: Frobenius-stable noncollinear `n`-sets of
//! `P^2(F_q-bar)` whose Frobenius permutation has a given cycle type.
//!
//! A configuration with orbit sizes `k_1 >= k_2 >= ...` is enumerated as a tuple
//! of orbit representatives `x_i` of exact degree `k_i`; each set arises
//! `|Z(C)|` times, once per choice of representatives and ordering of equal
//! parts.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::census::{count_exact_degree, count_generic, space_size, Space};
use crate::field::{FieldContext, FieldElement, FieldError};
use crate::partition::{CycleType, Partition};
use crate::plane::NormalizedTriples;

pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("estimated {estimate} candidate tuples exceeds the budget of {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("configurations of {0} points are not supported")]
    UnsupportedSize(u32),
    #[error("cycle type {class} does not partition {n}")]
    ClassMismatch { n: u32, class: String },
    #[error("frame fixing only applies to the identity class")]
    FrameNeedsIdentity,
    #[error("raw count {raw} is not divisible by the centralizer order {centralizer}")]
    NotDivisible { raw: u128, centralizer: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Brute,
    FrameFixedBrute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Frame fixing for the identity class, plain backtracking otherwise.
    #[default]
    Auto,
    Brute,
    FrameFixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PartOrder {
    #[default]
    Descending,
    Ascending,
}

#[derive(Debug, Clone)]
pub struct EnumOptions {
    /// Largest admissible a-priori candidate estimate.
    pub budget: u128,
    pub method: Method,
    pub part_order: PartOrder,
    /// Walk every stored candidate list backwards.
    pub reverse: bool,
    /// Recheck all triples of every accepted configuration.
    pub verify_complete: bool,
    /// Record wall-clock time in the result.
    pub timing: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            budget: DEFAULT_BUDGET,
            method: Method::Auto,
            part_order: PartOrder::Descending,
            reverse: false,
            verify_complete: false,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedCountResult {
    pub n: u32,
    pub q: u64,
    #[serde(with = "parts_serde")]
    pub cycle_type: CycleType,
    #[serde(rename = "raw")]
    pub raw_tuple_count: u128,
    pub count: u128,
    pub method: CountMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

mod parts_serde {
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    use crate::partition::Partition;

    pub fn serialize<S: Serializer>(p: &Partition, s: S) -> Result<S::Ok, S::Error> {
        p.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Partition, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::from_parts(parts).map_err(D::Error::custom)
    }
}

/// `q^3 (q^3 - 1)(q^2 - 1)`.
pub fn pgl3_order(q: u64) -> u128 {
    let q = q as u128;
    q.pow(3) * (q.pow(3) - 1) * (q * q - 1)
}

fn check_class(n: u32, class: &CycleType) -> Result<(), EnumError> {
    if !(3..=8).contains(&n) {
        return Err(EnumError::UnsupportedSize(n));
    }
    if class.size() != n {
        return Err(EnumError::ClassMismatch { n, class: class.to_string() });
    }
    Ok(())
}

fn resolve(method: Method, class: &CycleType) -> Result<CountMethod, EnumError> {
    let identity = class.parts().iter().all(|&p| p == 1);
    match method {
        Method::Auto if identity => Ok(CountMethod::FrameFixedBrute),
        Method::Auto | Method::Brute => Ok(CountMethod::Brute),
        Method::FrameFixed if identity => Ok(CountMethod::FrameFixedBrute),
        Method::FrameFixed => Err(EnumError::FrameNeedsIdentity),
    }
}

/// Number of representatives of exact degree `k` that can start an orbit:
/// all rational or quadratic points, generic points otherwise.
fn candidates_per_part(k: u32, q: i64) -> u128 {
    let poly = match k {
        1 => space_size(Space::P2, 1),
        2 => count_exact_degree(Space::P2, 2),
        3..=6 => count_generic(k).expect("3..=6"),
        _ => count_exact_degree(Space::P2, k),
    };
    let v = poly.evaluate_integer(q).expect("integral census");
    u128::try_from(v).unwrap_or(u128::MAX)
}

/// Product of per-part candidate counts for the chosen method.
pub fn candidate_estimate(n: u32, class: &CycleType, q: u64, method: Method) -> Result<u128, EnumError> {
    check_class(n, class)?;
    arith::prime_power(q).ok_or(EnumError::NotPrimePower(q))?;
    let parts: Vec<u32> = match resolve(method, class)? {
        CountMethod::FrameFixedBrute => vec![1; n.saturating_sub(4) as usize],
        CountMethod::Brute => class.parts().to_vec(),
    };
    Ok(parts
        .iter()
        .map(|&k| candidates_per_part(k, q as i64))
        .fold(1u128, |a, b| a.saturating_mul(b)))
}

type Pt = [FieldElement; 3];

/// Points placed so far together with the lines through each pair of them.
struct State<'f> {
    field: &'f FieldContext,
    points: Vec<Pt>,
    lines: Vec<Pt>,
}

impl<'f> State<'f> {
    fn new(field: &'f FieldContext) -> Self {
        State { field, points: Vec::with_capacity(8), lines: Vec::with_capacity(28) }
    }

    #[inline]
    fn dot(&self, a: &Pt, b: &Pt) -> FieldElement {
        let f = self.field;
        f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]))
    }

    #[inline]
    fn cross(&self, a: &Pt, b: &Pt) -> Pt {
        let f = self.field;
        [
            f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
            f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
            f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
        ]
    }

    fn mark(&self) -> (usize, usize) {
        (self.points.len(), self.lines.len())
    }

    fn restore(&mut self, (p, l): (usize, usize)) {
        self.points.truncate(p);
        self.lines.truncate(l);
    }

    /// Adds `y` unless it lies on a line through two placed points. A repeated
    /// point contributes a zero line, which rejects every later point.
    #[inline]
    fn push(&mut self, y: &Pt) -> bool {
        if self.lines.iter().any(|l| self.dot(l, y).is_zero()) {
            return false;
        }
        for i in 0..self.points.len() {
            let l = self.cross(&self.points[i], y);
            self.lines.push(l);
        }
        self.points.push(*y);
        true
    }

    fn push_all(&mut self, orbit: &[Pt]) -> bool {
        let mark = self.mark();
        for y in orbit {
            if !self.push(y) {
                self.restore(mark);
                return false;
            }
        }
        true
    }

    fn no_collinear_triple(&self) -> bool {
        let pts = &self.points;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let l = self.cross(&pts[i], &pts[j]);
                if l.iter().all(|c| c.is_zero()) {
                    return false;
                }
                if pts[j + 1..].iter().any(|z| self.dot(&l, z).is_zero()) {
                    return false;
                }
            }
        }
        true
    }
}

fn frob(field: &FieldContext, p: &Pt) -> Pt {
    [field.frobenius(p[0]), field.frobenius(p[1]), field.frobenius(p[2])]
}

fn degree(field: &FieldContext, p: &Pt) -> u32 {
    arith::lcm_all(&[field.subfield_degree(p[0]), field.subfield_degree(p[1]), field.subfield_degree(p[2])])
}

/// The orbit of `p` when it has exact degree `k` and no three of its
/// conjugates are collinear.
fn admissible_orbit(field: &FieldContext, p: &Pt, k: u32, scratch: &mut State<'_>) -> Option<Vec<Pt>> {
    if degree(field, p) != k {
        return None;
    }
    let mut orbit = Vec::with_capacity(k as usize);
    let mut cur = *p;
    for _ in 0..k {
        orbit.push(cur);
        cur = frob(field, &cur);
    }
    scratch.restore((0, 0));
    scratch.push_all(&orbit).then_some(orbit)
}

struct Level {
    part: usize,
    /// Concatenated orbits, `part` points each.
    orbits: Vec<Pt>,
}

struct Search {
    levels: Vec<Level>,
    verify_complete: bool,
}

impl Search {
    fn dfs(&self, st: &mut State<'_>, level: usize) -> u128 {
        let Some(lv) = self.levels.get(level) else {
            if self.verify_complete {
                assert!(st.no_collinear_triple(), "accepted configuration has a collinear triple");
            }
            return 1;
        };
        let mut total = 0;
        for orbit in lv.orbits.chunks_exact(lv.part) {
            let mark = st.mark();
            if st.push_all(orbit) {
                total += self.dfs(st, level + 1);
            }
            st.restore(mark);
        }
        total
    }
}

fn subplane_points(field: &FieldContext, k: u32) -> NormalizedTriples {
    NormalizedTriples::new(field.subfield_elements(k))
}

fn stored_level(field: &FieldContext, k: u32, reverse: bool) -> Level {
    let mut scratch = State::new(field);
    let mut orbits = Vec::new();
    for p in subplane_points(field, k) {
        if let Some(orbit) = admissible_orbit(field, &p, k, &mut scratch) {
            orbits.extend(orbit);
        }
    }
    if reverse {
        let part = k as usize;
        let chunks: Vec<&[Pt]> = orbits.chunks_exact(part).rev().collect();
        orbits = chunks.concat();
    }
    Level { part: k as usize, orbits }
}

/// Ordered tuples of orbit representatives forming a noncollinear set.
fn raw_brute(field: &FieldContext, parts: &[u32], opts: &EnumOptions) -> u128 {
    let (&outer, inner) = parts.split_first().expect("nonempty class");
    let search = Search {
        levels: inner.iter().map(|&k| stored_level(field, k, opts.reverse)).collect(),
        verify_complete: opts.verify_complete,
    };
    let scalars = field.subfield_elements(outer);
    let start = |p: &Pt, st: &mut State<'_>| -> u128 {
        match admissible_orbit(field, p, outer, st) {
            Some(_) => search.dfs(st, 0),
            None => 0,
        }
    };
    let affine: u128 = scalars
        .par_iter()
        .map(|&y| {
            let mut st = State::new(field);
            scalars.iter().map(|&z| start(&[FieldElement::ONE, y, z], &mut st)).sum::<u128>()
        })
        .sum();
    let mut st = State::new(field);
    let at_infinity: u128 = scalars
        .iter()
        .map(|&z| [FieldElement::ZERO, FieldElement::ONE, z])
        .chain(std::iter::once([FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE]))
        .map(|p| start(&p, &mut st))
        .sum();
    affine + at_infinity
}

fn standard_frame() -> [Pt; 4] {
    let (o, i) = (FieldElement::ZERO, FieldElement::ONE);
    [[i, o, o], [o, i, o], [o, o, i], [i, i, i]]
}

/// Ordered `(n - 4)`-tuples of rational points completing the standard frame
/// to a noncollinear configuration; this is `|X_n(F_q)|`.
pub fn count_x_n_rational(n: u32, q: u64) -> Result<u128, EnumError> {
    if !(4..=8).contains(&n) {
        return Err(EnumError::UnsupportedSize(n));
    }
    let (p, m) = arith::prime_power(q).ok_or(EnumError::NotPrimePower(q))?;
    let field = FieldContext::new(p, m, m)?;
    Ok(frame_fixed(&field, n, false))
}

fn frame_fixed(field: &FieldContext, n: u32, reverse: bool) -> u128 {
    let mut st = State::new(field);
    assert!(st.push_all(&standard_frame()));
    let search = Search {
        levels: (4..n).map(|_| stored_level(field, 1, reverse)).collect(),
        verify_complete: false,
    };
    search.dfs(&mut st, 0)
}

/// Exact `p_{n,C}(q)` by exhaustive search.
pub fn count_twisted(n: u32, class: &CycleType, q: u64, opts: &EnumOptions) -> Result<TwistedCountResult, EnumError> {
    let started = Instant::now();
    let method = resolve(opts.method, class)?;
    let estimate = candidate_estimate(n, class, q, opts.method)?;
    if estimate > opts.budget {
        return Err(EnumError::BudgetExceeded { estimate, budget: opts.budget });
    }
    let (p, m) = arith::prime_power(q).ok_or(EnumError::NotPrimePower(q))?;
    let raw = match method {
        CountMethod::FrameFixedBrute => {
            let field = FieldContext::new(p, m, m)?;
            pgl3_order(q) * frame_fixed(&field, n, opts.reverse)
        }
        CountMethod::Brute => {
            let mut parts = class.parts().to_vec();
            if opts.part_order == PartOrder::Ascending {
                parts.reverse();
            }
            let field = FieldContext::new(p, m * class.lcm(), m)?;
            raw_brute(&field, &parts, opts)
        }
    };
    let centralizer = class.centralizer_order();
    if raw % centralizer as u128 != 0 {
        return Err(EnumError::NotDivisible { raw, centralizer });
    }
    Ok(TwistedCountResult {
        n,
        q,
        cycle_type: class.clone(),
        raw_tuple_count: raw,
        count: raw / centralizer as u128,
        method,
        elapsed_ms: opts.timing.then(|| started.elapsed().as_millis() as u64),
    })
}

/// Convenience wrapper over the classes of `S_n`.
pub fn classes(n: u32) -> Vec<CycleType> {
    Partition::all(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: u32, c: &str, q: u64) -> u128 {
        count_twisted(n, &Partition::parse(c, n).unwrap(), q, &EnumOptions::default()).unwrap().count
    }

    #[test]
    fn small_spot_values() {
        assert_eq!(count(5, "e", 2), 0);
        assert_eq!(count(5, "(123)", 2), 168);
        assert_eq!(count(5, "(12)", 3), 2808);
        assert_eq!(count(5, "(12)(34)", 2), 0);
    }

    #[test]
    fn group_orders() {
        assert_eq!(pgl3_order(2), 168);
        assert_eq!(pgl3_order(3), 5616);
        assert_eq!(pgl3_order(5), 372000);
    }

    #[test]
    fn frame_fixed_counts() {
        assert_eq!(count_x_n_rational(5, 5).unwrap(), 6);
        assert_eq!(count_x_n_rational(5, 2).unwrap(), 0);
        assert_eq!(count_x_n_rational(6, 7).unwrap(), 140);
        assert_eq!(count_x_n_rational(4, 3).unwrap(), 1);
    }

    #[test]
    fn frame_fixing_agrees_with_plain_search() {
        for q in [2, 3, 4] {
            let c = Partition::identity(5);
            let brute = count_twisted(5, &c, q, &EnumOptions { method: Method::Brute, ..Default::default() }).unwrap();
            let framed = count_twisted(5, &c, q, &EnumOptions::default()).unwrap();
            assert_eq!(brute.raw_tuple_count, framed.raw_tuple_count);
            assert_eq!(brute.method, CountMethod::Brute);
            assert_eq!(framed.method, CountMethod::FrameFixedBrute);
        }
    }

    #[test]
    fn stored_candidates_match_census() {
        let field = FieldContext::new(2, 6, 1).unwrap();
        for k in 1..=6u32 {
            if 6 % k != 0 {
                continue;
            }
            let level = stored_level(&field, k, false);
            assert_eq!(
                (level.orbits.len() / k as usize) as u128,
                candidates_per_part(k, 2),
                "degree {k}"
            );
        }
    }

    #[test]
    fn order_and_direction_do_not_matter() {
        let c = Partition::parse("2,1,1", 5).unwrap();
        let base = count_twisted(5, &c, 3, &EnumOptions::default()).unwrap();
        for (order, reverse) in [(PartOrder::Ascending, false), (PartOrder::Descending, true), (PartOrder::Ascending, true)] {
            let opts = EnumOptions { part_order: order, reverse, verify_complete: true, ..Default::default() };
            assert_eq!(count_twisted(5, &c, 3, &opts).unwrap().raw_tuple_count, base.raw_tuple_count);
        }
    }

    #[test]
    fn errors() {
        let e5 = Partition::identity(5);
        assert!(matches!(count_twisted(5, &e5, 6, &EnumOptions::default()), Err(EnumError::NotPrimePower(6))));
        assert!(matches!(
            count_twisted(6, &e5, 2, &EnumOptions::default()),
            Err(EnumError::ClassMismatch { .. })
        ));
        let c = Partition::cycle(5);
        let tight = EnumOptions { budget: 10, ..Default::default() };
        assert!(matches!(count_twisted(5, &c, 2, &tight), Err(EnumError::BudgetExceeded { .. })));
        let framed = EnumOptions { method: Method::FrameFixed, ..Default::default() };
        assert_eq!(count_twisted(5, &c, 2, &framed), Err(EnumError::FrameNeedsIdentity));
    }

    #[test]
    fn result_json_shape() {
        let r = count_twisted(6, &Partition::parse("2,2", 6).unwrap(), 2, &EnumOptions::default()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"n":6,"q":2,"cycle_type":[2,2,1,1],"raw":0,"count":0,"method":"brute"}"#);
        let back: TwistedCountResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
