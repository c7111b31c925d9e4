//! Points and lines of `P^2(F_{q^L})`, incidence, and the Frobenius action.
//!
//! Points and lines are both homogeneous triples normalized so the first
//! nonzero coordinate is 1. The Frobenius maps 0 to 0 and 1 to 1, so applying
//! it coordinate-wise keeps a triple normalized.

use std::fmt;

use thiserror::Error;

use crate::arith;
use crate::field::{FieldContext, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("homogeneous coordinates are all zero")]
    ZeroVector,
    #[error("join or meet of coincident arguments")]
    Coincident,
    #[error("genericity needs a Frobenius orbit of size at least 3, got {0}")]
    OrbitTooSmall(u32),
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
}

pub type Coords = [FieldElement; 3];

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Coords);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine(Coords);

impl ProjPoint {
    pub fn coords(&self) -> Coords {
        self.0
    }
}

impl ProjLine {
    pub fn coeffs(&self) -> Coords {
        self.0
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.0[0].value(), self.0[1].value(), self.0[2].value())
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}:{}:{}>", self.0[0].value(), self.0[1].value(), self.0[2].value())
    }
}

/// The Frobenius orbit `p, f(p), ..., f^{n-1}(p)` of a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobOrbit {
    members: Vec<ProjPoint>,
}

impl FrobOrbit {
    pub fn representative(&self) -> ProjPoint {
        self.members[0]
    }

    pub fn size(&self) -> u32 {
        self.members.len() as u32
    }

    pub fn members(&self) -> &[ProjPoint] {
        &self.members
    }
}

/// Outcome of the genericity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Genericity {
    Generic,
    /// The point lies on a line whose Frobenius orbit has size `r`, the least such `r`.
    NonGeneric { r: u32 },
}

/// `r` values that disqualify a point of orbit size `n`.
fn forbidden_orbit_sizes(n: u32) -> impl Iterator<Item = u32> {
    let bound = if n % 2 == 0 { n / 2 } else { n };
    1..bound
}

/// `P^2` over a finite field, viewed over the field's base `F_q`.
#[derive(Clone, Copy)]
pub struct Plane<'f> {
    field: &'f FieldContext,
}

impl<'f> Plane<'f> {
    pub fn new(field: &'f FieldContext) -> Self {
        Plane { field }
    }

    pub fn field(&self) -> &'f FieldContext {
        self.field
    }

    fn normalize(&self, c: Coords) -> Option<Coords> {
        let f = self.field;
        let lead = c.iter().copied().find(|x| !x.is_zero())?;
        if lead == FieldElement::ONE {
            return Some(c);
        }
        let inv = f.inv(lead).expect("nonzero");
        Some([f.mul(c[0], inv), f.mul(c[1], inv), f.mul(c[2], inv)])
    }

    pub fn point(&self, coords: Coords) -> Result<ProjPoint, PlaneError> {
        for c in coords {
            self.field.element(c.value())?;
        }
        self.normalize(coords).map(ProjPoint).ok_or(PlaneError::ZeroVector)
    }

    pub fn line(&self, coeffs: Coords) -> Result<ProjLine, PlaneError> {
        for c in coeffs {
            self.field.element(c.value())?;
        }
        self.normalize(coeffs).map(ProjLine).ok_or(PlaneError::ZeroVector)
    }

    /// Point from packed coordinate values.
    pub fn point_from_values(&self, v: [u32; 3]) -> Result<ProjPoint, PlaneError> {
        self.point([
            self.field.element(v[0])?,
            self.field.element(v[1])?,
            self.field.element(v[2])?,
        ])
    }

    pub fn line_from_values(&self, v: [u32; 3]) -> Result<ProjLine, PlaneError> {
        self.line([
            self.field.element(v[0])?,
            self.field.element(v[1])?,
            self.field.element(v[2])?,
        ])
    }

    #[inline]
    pub fn cross(&self, a: &Coords, b: &Coords) -> Coords {
        let f = self.field;
        [
            f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
            f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
            f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
        ]
    }

    #[inline]
    pub fn dot(&self, a: &Coords, b: &Coords) -> FieldElement {
        let f = self.field;
        f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]))
    }

    /// Determinant of the coordinate matrix vanishes; coincident inputs count as collinear.
    pub fn collinear(&self, a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
        self.dot(&self.cross(&a.0, &b.0), &c.0).is_zero()
    }

    /// Three lines through a common point.
    pub fn concurrent(&self, a: &ProjLine, b: &ProjLine, c: &ProjLine) -> bool {
        self.dot(&self.cross(&a.0, &b.0), &c.0).is_zero()
    }

    pub fn incident(&self, p: &ProjPoint, l: &ProjLine) -> bool {
        self.dot(&p.0, &l.0).is_zero()
    }

    pub fn join(&self, a: &ProjPoint, b: &ProjPoint) -> Result<ProjLine, PlaneError> {
        self.normalize(self.cross(&a.0, &b.0))
            .map(ProjLine)
            .ok_or(PlaneError::Coincident)
    }

    pub fn meet(&self, l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint, PlaneError> {
        self.normalize(self.cross(&l1.0, &l2.0))
            .map(ProjPoint)
            .ok_or(PlaneError::Coincident)
    }

    fn frob_coords(&self, c: &Coords) -> Coords {
        let f = self.field;
        [f.frobenius(c[0]), f.frobenius(c[1]), f.frobenius(c[2])]
    }

    pub fn point_frobenius(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint(self.frob_coords(&p.0))
    }

    pub fn line_frobenius(&self, l: &ProjLine) -> ProjLine {
        ProjLine(self.frob_coords(&l.0))
    }

    pub fn point_frobenius_iter(&self, p: &ProjPoint, k: u32) -> ProjPoint {
        (0..k).fold(*p, |acc, _| self.point_frobenius(&acc))
    }

    fn coords_degree(&self, c: &Coords) -> u32 {
        let f = self.field;
        arith::lcm_all(&[
            f.subfield_degree(c[0]),
            f.subfield_degree(c[1]),
            f.subfield_degree(c[2]),
        ])
    }

    /// Frobenius orbit size `n(p)`, the least `k` with `p` defined over `F_{q^k}`.
    pub fn point_degree(&self, p: &ProjPoint) -> u32 {
        self.coords_degree(&p.0)
    }

    pub fn line_degree(&self, l: &ProjLine) -> u32 {
        self.coords_degree(&l.0)
    }

    pub fn orbit(&self, p: &ProjPoint) -> FrobOrbit {
        let mut members = vec![*p];
        let mut cur = self.point_frobenius(p);
        while cur != *p {
            members.push(cur);
            cur = self.point_frobenius(&cur);
        }
        FrobOrbit { members }
    }

    pub fn line_orbit(&self, l: &ProjLine) -> Vec<ProjLine> {
        let mut members = vec![*l];
        let mut cur = self.line_frobenius(l);
        while cur != *l {
            members.push(cur);
            cur = self.line_frobenius(&cur);
        }
        members
    }

    /// Least disqualifying line orbit size through `p`, testing only the joins
    /// `<p, f^a(p)>`: a line of orbit size `r < n(p)` through `p` also passes
    /// through `f^r(p) != p`.
    pub fn genericity_level(&self, p: &ProjPoint) -> Result<Genericity, PlaneError> {
        let n = self.point_degree(p);
        if n < 3 {
            return Err(PlaneError::OrbitTooSmall(n));
        }
        Ok(self.genericity_unchecked(&p.0, n))
    }

    /// Dual of [`genericity_level`](Self::genericity_level): the least orbit size of a
    /// disqualifying point on `l`, via the meets `l ∩ f^a(l)`.
    pub fn line_genericity_level(&self, l: &ProjLine) -> Result<Genericity, PlaneError> {
        let n = self.line_degree(l);
        if n < 3 {
            return Err(PlaneError::OrbitTooSmall(n));
        }
        Ok(self.genericity_unchecked(&l.0, n))
    }

    pub(crate) fn genericity_unchecked(&self, c: &Coords, n: u32) -> Genericity {
        let mut worst: Option<u32> = None;
        let mut image = *c;
        for _ in 1..n {
            image = self.frob_coords(&image);
            let through = self.normalize(self.cross(c, &image)).expect("distinct conjugates");
            let k = self.coords_degree(&through);
            if k < n && forbidden_orbit_sizes(n).any(|r| r == k) {
                worst = Some(worst.map_or(k, |w| w.min(k)));
            }
        }
        match worst {
            Some(r) => Genericity::NonGeneric { r },
            None => Genericity::Generic,
        }
    }

    /// Slow genericity test against every line of each disqualifying orbit size.
    pub fn genericity_level_brute(&self, p: &ProjPoint) -> Result<Genericity, PlaneError> {
        let n = self.point_degree(p);
        if n < 3 {
            return Err(PlaneError::OrbitTooSmall(n));
        }
        let rel = self.field.relative_degree();
        for r in forbidden_orbit_sizes(n).filter(|r| rel % r == 0) {
            let hit = self.lines_over(r).any(|l| {
                self.line_degree(&l) == r && self.incident(p, &l)
            });
            if hit {
                return Ok(Genericity::NonGeneric { r });
            }
        }
        Ok(Genericity::Generic)
    }

    /// Slow dual genericity test against every point of each disqualifying orbit size.
    pub fn line_genericity_level_brute(&self, l: &ProjLine) -> Result<Genericity, PlaneError> {
        let n = self.line_degree(l);
        if n < 3 {
            return Err(PlaneError::OrbitTooSmall(n));
        }
        let rel = self.field.relative_degree();
        for r in forbidden_orbit_sizes(n).filter(|r| rel % r == 0) {
            let hit = self.points_over(r).any(|p| {
                self.point_degree(&p) == r && self.incident(&p, l)
            });
            if hit {
                return Ok(Genericity::NonGeneric { r });
            }
        }
        Ok(Genericity::Generic)
    }

    /// All points of `P^2(F_{q^k})`; `k` must divide the relative degree of the field.
    pub fn points_over(&self, k: u32) -> impl Iterator<Item = ProjPoint> {
        NormalizedTriples::new(self.field.subfield_elements(k)).map(ProjPoint)
    }

    /// All lines defined over `F_{q^k}`.
    pub fn lines_over(&self, k: u32) -> impl Iterator<Item = ProjLine> {
        NormalizedTriples::new(self.field.subfield_elements(k)).map(ProjLine)
    }

    /// All points of `P^1(F_{q^k})` as pairs `[1:y]`, `[0:1]`.
    pub fn projective_line_points(&self, k: u32) -> Vec<[FieldElement; 2]> {
        let sub = self.field.subfield_elements(k);
        let mut out: Vec<[FieldElement; 2]> =
            sub.iter().map(|&y| [FieldElement::ONE, y]).collect();
        out.push([FieldElement::ZERO, FieldElement::ONE]);
        out
    }
}

/// Normalized triples `[1:y:z]`, `[0:1:z]`, `[0:0:1]` over a list of scalars.
pub(crate) struct NormalizedTriples {
    scalars: Vec<FieldElement>,
    stage: u8,
    i: usize,
    j: usize,
}

impl NormalizedTriples {
    pub(crate) fn new(scalars: Vec<FieldElement>) -> Self {
        NormalizedTriples { scalars, stage: 0, i: 0, j: 0 }
    }
}

impl Iterator for NormalizedTriples {
    type Item = Coords;

    fn next(&mut self) -> Option<Coords> {
        let s = self.scalars.len();
        loop {
            match self.stage {
                0 => {
                    if self.i < s {
                        let out = [FieldElement::ONE, self.scalars[self.i], self.scalars[self.j]];
                        self.j += 1;
                        if self.j == s {
                            self.j = 0;
                            self.i += 1;
                        }
                        return Some(out);
                    }
                    self.stage = 1;
                    self.j = 0;
                }
                1 => {
                    if self.j < s {
                        let out = [FieldElement::ZERO, FieldElement::ONE, self.scalars[self.j]];
                        self.j += 1;
                        return Some(out);
                    }
                    self.stage = 2;
                }
                2 => {
                    self.stage = 3;
                    return Some([FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE]);
                }
                _ => return None,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(plane: &Plane, v: [u32; 3]) -> ProjPoint {
        plane.point_from_values(v).unwrap()
    }

    #[test]
    fn collinearity_examples() {
        let f = FieldContext::new(5, 1, 1).unwrap();
        let plane = Plane::new(&f);
        let (a, b) = (pt(&plane, [1, 0, 0]), pt(&plane, [0, 1, 0]));
        assert!(plane.collinear(&a, &b, &pt(&plane, [1, 1, 0])));
        assert!(!plane.collinear(&a, &b, &pt(&plane, [0, 0, 1])));
        assert!(plane.collinear(&a, &a, &b));

        let f2 = FieldContext::new(2, 1, 1).unwrap();
        let fano = Plane::new(&f2);
        assert!(fano.collinear(&pt(&fano, [1, 1, 0]), &pt(&fano, [1, 0, 1]), &pt(&fano, [0, 1, 1])));
    }

    #[test]
    fn join_and_meet() {
        let f = FieldContext::new(3, 1, 1).unwrap();
        let plane = Plane::new(&f);
        let (a, b) = (pt(&plane, [1, 0, 0]), pt(&plane, [0, 1, 0]));
        assert_eq!(plane.join(&a, &b).unwrap(), plane.line_from_values([0, 0, 1]).unwrap());
        assert_eq!(plane.join(&a, &a), Err(PlaneError::Coincident));
        let l = plane.join(&a, &b).unwrap();
        assert_eq!(plane.meet(&l, &l), Err(PlaneError::Coincident));

        // over F_4: [1:α:0] and [1:α²:0] span z = 0
        let f4 = FieldContext::new(2, 2, 1).unwrap();
        let plane = Plane::new(&f4);
        let alpha = f4.variable();
        let alpha2 = f4.mul(alpha, alpha);
        let p1 = plane.point([FieldElement::ONE, alpha, FieldElement::ZERO]).unwrap();
        let p2 = plane.point([FieldElement::ONE, alpha2, FieldElement::ZERO]).unwrap();
        assert_eq!(plane.join(&p1, &p2).unwrap(), plane.line_from_values([0, 0, 1]).unwrap());
    }

    #[test]
    fn normalization_and_errors() {
        let f = FieldContext::new(5, 1, 1).unwrap();
        let plane = Plane::new(&f);
        assert_eq!(pt(&plane, [2, 4, 1]), pt(&plane, [1, 2, 3]));
        assert_eq!(plane.point_from_values([0, 0, 0]), Err(PlaneError::ZeroVector));
        assert!(plane.point_from_values([0, 7, 0]).is_err());
    }

    #[test]
    fn orbit_in_f4() {
        let f4 = FieldContext::new(2, 2, 1).unwrap();
        let plane = Plane::new(&f4);
        let alpha = f4.variable();
        let p = plane.point([FieldElement::ONE, alpha, FieldElement::ZERO]).unwrap();
        let orbit = plane.orbit(&p);
        assert_eq!(orbit.size(), 2);
        let q = plane
            .point([FieldElement::ONE, f4.add(alpha, FieldElement::ONE), FieldElement::ZERO])
            .unwrap();
        assert_eq!(orbit.members(), &[p, q]);
        assert_eq!(plane.orbit(&pt(&plane, [1, 1, 0])).size(), 1);
    }

    #[test]
    fn plane_and_line_sizes() {
        for &(p, m) in &[(2u64, 1u32), (3, 1), (2, 2), (5, 1), (2, 3)] {
            let f = FieldContext::new(p, m, m).unwrap();
            let plane = Plane::new(&f);
            let q = f.base_order() as usize;
            assert_eq!(plane.points_over(1).count(), q * q + q + 1);
            assert_eq!(plane.projective_line_points(1).len(), q + 1);
            let l = plane.lines_over(1).next().unwrap();
            assert_eq!(plane.points_over(1).filter(|x| plane.incident(x, &l)).count(), q + 1);
        }
    }

    #[test]
    fn generic_cubic_points_over_f2() {
        let f = FieldContext::new(2, 3, 1).unwrap();
        let plane = Plane::new(&f);
        let cubic: Vec<ProjPoint> =
            plane.points_over(3).filter(|p| plane.point_degree(p) == 3).collect();
        assert_eq!(cubic.len(), 73 - 7);
        let generic = cubic
            .iter()
            .filter(|p| plane.genericity_level(p).unwrap() == Genericity::Generic)
            .count();
        assert_eq!(generic, 24);
        for p in &cubic {
            assert_eq!(plane.genericity_level(p), plane.genericity_level_brute(p));
        }
        let low = plane.points_over(1).next().unwrap();
        assert_eq!(plane.genericity_level(&low), Err(PlaneError::OrbitTooSmall(1)));
    }

    #[test]
    fn fast_and_brute_genericity_agree_over_f_2_6() {
        let f = FieldContext::new(2, 6, 1).unwrap();
        let plane = Plane::new(&f);
        for p in plane.points_over(6).step_by(37) {
            if plane.point_degree(&p) >= 3 {
                assert_eq!(plane.genericity_level(&p), plane.genericity_level_brute(&p), "{p:?}");
            }
        }
        for l in plane.lines_over(6).step_by(41) {
            if plane.line_degree(&l) >= 3 {
                assert_eq!(
                    plane.line_genericity_level(&l),
                    plane.line_genericity_level_brute(&l),
                    "{l:?}"
                );
            }
        }
    }

    #[test]
    fn generic_sextic_points_over_f2() {
        let f = FieldContext::new(2, 6, 1).unwrap();
        let plane = Plane::new(&f);
        let generic = plane
            .points_over(6)
            .filter(|p| plane.point_degree(p) == 6)
            .filter(|p| plane.genericity_level(p).unwrap() == Genericity::Generic)
            .count();
        assert_eq!(generic, 2856);
    }

    proptest! {
        #[test]
        fn join_meet_duality_and_frobenius_naturality(a in any::<[u32; 3]>(), b in any::<[u32; 3]>(), c in any::<[u32; 3]>()) {
            let f = FieldContext::new(3, 4, 1).unwrap();
            let plane = Plane::new(&f);
            let n = f.order();
            let mk = |v: [u32; 3]| plane.point_from_values([v[0] % n, v[1] % n, v[2] % n]);
            let (Ok(a), Ok(b), Ok(c)) = (mk(a), mk(b), mk(c)) else { return Ok(()); };
            prop_assume!(!plane.collinear(&a, &b, &c));
            let ab = plane.join(&a, &b).unwrap();
            let ac = plane.join(&a, &c).unwrap();
            prop_assert!(plane.incident(&a, &ab) && plane.incident(&b, &ab));
            prop_assert_eq!(plane.meet(&ab, &ac).unwrap(), a);
            prop_assert_eq!(
                plane.line_frobenius(&ab),
                plane.join(&plane.point_frobenius(&a), &plane.point_frobenius(&b)).unwrap()
            );
            let orbit = plane.orbit(&a);
            prop_assert_eq!(orbit.size(), plane.point_degree(&a));
            prop_assert_eq!(f.relative_degree() % orbit.size(), 0);
            let m = orbit.members();
            for i in 0..m.len() {
                prop_assert_eq!(plane.point_frobenius(&m[i]), m[(i + 1) % m.len()]);
            }
        }
    }
}
