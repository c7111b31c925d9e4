//! Character tables of symmetric groups via the Murnaghan–Nakayama rule,
//! class functions and their decomposition into irreducibles.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith;
use crate::partition::{CycleType, Partition};
use crate::poly::rat;

pub const MAX_DEGREE: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("character tables are available for 1 <= n <= {MAX_DEGREE}, got {0}")]
    Unsupported(u32),
    #[error("class functions of S_{left} and S_{right} cannot be paired")]
    SizeMismatch { left: u32, right: u32 },
    #[error("{0} is not a class of S_{1}")]
    UnknownClass(Partition, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClassTable {
    pub n: u32,
    /// Lexicographically increasing, identity first.
    pub classes: Vec<CycleType>,
    pub sizes: Vec<u64>,
}

impl ConjugacyClassTable {
    pub fn new(n: u32) -> Self {
        let classes = Partition::all(n);
        let sizes = classes.iter().map(Partition::class_size).collect();
        ConjugacyClassTable { n, classes, sizes }
    }

    pub fn index_of(&self, class: &CycleType) -> Option<usize> {
        self.classes.iter().position(|c| c == class)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Rational values indexed like [`ConjugacyClassTable::classes`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    pub n: u32,
    pub values: Vec<BigRational>,
}

impl ClassFunction {
    pub fn zero(n: u32) -> Self {
        ClassFunction { n, values: vec![BigRational::zero(); Partition::all(n).len()] }
    }

    pub fn from_ints(n: u32, values: &[i64]) -> Self {
        ClassFunction { n, values: values.iter().map(|&v| rat(v)).collect() }
    }

    /// `1_C`, the indicator of one class.
    pub fn indicator(class: &CycleType) -> Self {
        let n = class.size();
        let mut out = ClassFunction::zero(n);
        let idx = Partition::all(n).iter().position(|c| c == class).expect("class of its own size");
        out.values[idx] = rat(1);
        out
    }

    pub fn value(&self, idx: usize) -> &BigRational {
        &self.values[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction, CharacterError> {
        self.check(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(ClassFunction { n: self.n, values })
    }

    pub fn scale(&self, c: &BigRational) -> ClassFunction {
        ClassFunction { n: self.n, values: self.values.iter().map(|v| v * c).collect() }
    }

    fn check(&self, other: &ClassFunction) -> Result<(), CharacterError> {
        if self.n != other.n || self.values.len() != other.values.len() {
            return Err(CharacterError::SizeMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }
}

/// `(1/n!) sum_C |C| phi(C) psi(C)`; symmetric group characters are real.
pub fn inner_product(phi: &ClassFunction, psi: &ClassFunction) -> Result<BigRational, CharacterError> {
    phi.check(psi)?;
    let classes = ConjugacyClassTable::new(phi.n);
    if classes.len() != phi.values.len() {
        return Err(CharacterError::SizeMismatch { left: phi.n, right: psi.n });
    }
    let total: BigRational = classes
        .sizes
        .iter()
        .zip(phi.values.iter().zip(&psi.values))
        .map(|(&size, (a, b))| rat(size as i64) * a * b)
        .sum();
    Ok(total / rat(arith::factorial(phi.n) as i64))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleCharacter {
    pub label: Partition,
    pub values: ClassFunction,
}

impl IrreducibleCharacter {
    /// `chi(e)`.
    pub fn dimension(&self) -> u64 {
        self.int_value(0) as u64
    }

    pub fn int_value(&self, idx: usize) -> i64 {
        let v = &self.values.values[idx];
        i64::try_from(v.to_integer()).expect("character values are small integers")
    }

    /// Conventional name: `U`, `U'`, `V`, `V'`, `Λ²V`, `Λ³V`, else `S_{3,2,1}`.
    pub fn name(&self) -> String {
        representation_name(&self.label)
    }
}

pub fn representation_name(label: &Partition) -> String {
    let n = label.size();
    let parts = label.parts();
    let hook = |k: u32| n > k + 1 && parts.len() == k as usize + 1 && parts[0] == n - k;
    if parts == [n] {
        "U".into()
    } else if parts.iter().all(|&p| p == 1) {
        "U'".into()
    } else if hook(1) {
        "V".into()
    } else if n >= 4 && parts[0] == 2 && parts[1..].iter().all(|&p| p == 1) {
        "V'".into()
    } else if hook(2) {
        "Λ²V".into()
    } else if hook(3) {
        "Λ³V".into()
    } else {
        let body: Vec<String> = parts.iter().map(u32::to_string).collect();
        format!("S_{{{}}}", body.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub classes: ConjugacyClassTable,
    /// One per partition of n, lexicographically decreasing: `(n)` first.
    pub irreducibles: Vec<IrreducibleCharacter>,
}

impl CharacterTable {
    pub fn n(&self) -> u32 {
        self.classes.n
    }

    pub fn character(&self, label: &Partition) -> Option<&IrreducibleCharacter> {
        self.irreducibles.iter().find(|c| &c.label == label)
    }

    pub fn value(&self, label: &Partition, class: &CycleType) -> Option<i64> {
        let idx = self.classes.index_of(class)?;
        Some(self.character(label)?.int_value(idx))
    }

    /// Multiplicities of every irreducible in `phi`.
    pub fn decompose(&self, phi: &ClassFunction) -> Result<Decomposition, CharacterError> {
        let mut terms = Vec::with_capacity(self.irreducibles.len());
        for chi in &self.irreducibles {
            terms.push((chi.label.clone(), inner_product(phi, &chi.values)?));
        }
        Ok(Decomposition { terms })
    }
}

/// Result of [`CharacterTable::decompose`]; non-integral or negative entries are
/// kept rather than rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub terms: Vec<(Partition, BigRational)>,
}

impl Decomposition {
    pub fn failures(&self) -> Vec<(Partition, BigRational)> {
        self.terms
            .iter()
            .filter(|(_, m)| !m.is_integer() || m.is_negative())
            .cloned()
            .collect()
    }

    pub fn is_genuine(&self) -> bool {
        self.failures().is_empty()
    }

    /// Nonzero multiplicities, when all are nonnegative integers.
    pub fn multiset(&self) -> Option<BTreeMap<Partition, u64>> {
        if !self.is_genuine() {
            return None;
        }
        Some(
            self.terms
                .iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(l, m)| (l.clone(), u64::try_from(m.to_integer()).expect("small")))
                .collect(),
        )
    }
}

/// Memoized table for `S_n`.
pub fn character_table(n: u32) -> Result<&'static CharacterTable, CharacterError> {
    static TABLES: [OnceLock<CharacterTable>; MAX_DEGREE as usize + 1] =
        [const { OnceLock::new() }; MAX_DEGREE as usize + 1];
    if n == 0 || n > MAX_DEGREE {
        return Err(CharacterError::Unsupported(n));
    }
    Ok(TABLES[n as usize].get_or_init(|| build_table(n)))
}

fn build_table(n: u32) -> CharacterTable {
    let classes = ConjugacyClassTable::new(n);
    let mut memo = HashMap::new();
    let irreducibles = Partition::all(n)
        .into_iter()
        .rev()
        .map(|label| {
            let values = classes
                .classes
                .iter()
                .map(|c| {
                    let beta = beta_set(label.parts());
                    let v = mn_value(beta, c.parts(), &mut memo);
                    BigRational::from_integer(BigInt::from(v))
                })
                .collect();
            IrreducibleCharacter { label, values: ClassFunction { n, values } }
        })
        .collect();
    CharacterTable { classes, irreducibles }
}

/// First-column hook lengths `lambda_i + (k - i)`, strictly decreasing.
fn beta_set(parts: &[u32]) -> Vec<u32> {
    let k = parts.len() as u32;
    parts.iter().enumerate().map(|(i, &p)| p + k - 1 - i as u32).collect()
}

/// Removing a rim hook of length `r` moves one bead from `b` to `b - r`; the
/// sign counts beads jumped over.
fn mn_value(beta: Vec<u32>, mu: &[u32], memo: &mut HashMap<(Vec<u32>, Vec<u32>), i64>) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let key = (beta.clone(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let v = mn_value(next, rest, memo);
        total += if jumped % 2 == 0 { v } else { -v };
    }
    memo.insert(key, total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(chi: &IrreducibleCharacter) -> Vec<i64> {
        (0..chi.values.values.len()).map(|i| chi.int_value(i)).collect()
    }

    #[test]
    fn frozen_s5_table() {
        // rows (5),(4,1),(3,2),(3,1,1),(2,2,1),(2,1,1,1),(1^5); columns e,(12),(12)(34),(123),(123)(45),(1234),(12345)
        let expected: [[i64; 7]; 7] = [
            [1, 1, 1, 1, 1, 1, 1],
            [4, 2, 0, 1, -1, 0, -1],
            [5, 1, 1, -1, 1, -1, 0],
            [6, 0, -2, 0, 0, 0, 1],
            [5, -1, 1, -1, -1, 1, 0],
            [4, -2, 0, 1, 1, 0, -1],
            [1, -1, 1, 1, -1, -1, 1],
        ];
        let table = character_table(5).unwrap();
        for (chi, row) in table.irreducibles.iter().zip(expected) {
            assert_eq!(ints(chi), row, "{}", chi.label);
        }
    }

    #[test]
    fn orthogonality_up_to_8() {
        for n in 1..=MAX_DEGREE {
            let t = character_table(n).unwrap();
            for (i, a) in t.irreducibles.iter().enumerate() {
                for (j, b) in t.irreducibles.iter().enumerate() {
                    let ip = inner_product(&a.values, &b.values).unwrap();
                    assert_eq!(ip, rat((i == j) as i64), "n={n} {} {}", a.label, b.label);
                }
            }
            let dims: u64 = t.irreducibles.iter().map(|c| c.dimension().pow(2)).sum();
            assert_eq!(dims, arith::factorial(n));
            for (ci, size) in t.classes.sizes.iter().enumerate() {
                for cj in 0..t.classes.len() {
                    let s: i64 = t.irreducibles.iter().map(|c| c.int_value(ci) * c.int_value(cj)).sum();
                    let want = if ci == cj { (arith::factorial(n) / size) as i64 } else { 0 };
                    assert_eq!(s, want);
                }
            }
        }
    }

    #[test]
    fn trivial_and_sign() {
        for n in 2..=7 {
            let t = character_table(n).unwrap();
            let triv = t.character(&Partition::cycle(n)).unwrap();
            assert!(ints(triv).iter().all(|&v| v == 1));
            let sign = t.character(&Partition::identity(n)).unwrap();
            let signs: Vec<i64> = t.classes.classes.iter().map(Partition::sign).collect();
            assert_eq!(ints(sign), signs);
        }
    }

    #[test]
    fn hook_length_dimension() {
        let t = character_table(5).unwrap();
        let lambda = Partition::from_parts(vec![3, 2]).unwrap();
        assert_eq!(t.character(&lambda).unwrap().dimension(), 5);
    }

    #[test]
    fn s6_names_and_dimensions() {
        let t = character_table(6).unwrap();
        let dims: BTreeMap<String, u64> =
            t.irreducibles.iter().map(|c| (c.name(), c.dimension())).collect();
        let expected = [
            ("U", 1), ("U'", 1), ("V", 5), ("V'", 5), ("Λ²V", 10), ("Λ³V", 10),
            ("S_{3,3}", 5), ("S_{2,2,2}", 5), ("S_{4,2}", 9), ("S_{2,2,1,1}", 9), ("S_{3,2,1}", 16),
        ];
        assert_eq!(dims.len(), 11);
        for (name, d) in expected {
            assert_eq!(dims[name], d, "{name}");
        }
    }

    #[test]
    fn permutation_character_is_u_plus_v() {
        let t = character_table(6).unwrap();
        let fixed: Vec<i64> = t
            .classes
            .classes
            .iter()
            .map(|c| c.parts().iter().filter(|&&p| p == 1).count() as i64)
            .collect();
        let dec = t.decompose(&ClassFunction::from_ints(6, &fixed)).unwrap();
        let ms = dec.multiset().unwrap();
        let names: Vec<String> = ms.keys().map(representation_name).collect();
        assert_eq!(ms.values().copied().collect::<Vec<_>>(), vec![1, 1]);
        assert!(names.contains(&"U".to_string()) && names.contains(&"V".to_string()));
    }

    #[test]
    fn regular_and_linear_decompositions() {
        let t = character_table(5).unwrap();
        let mut regular = ClassFunction::zero(5);
        regular.values[0] = rat(120);
        for (label, m) in t.decompose(&regular).unwrap().terms {
            assert_eq!(m, rat(t.character(&label).unwrap().dimension() as i64));
        }
        let a = Partition::from_parts(vec![4, 1]).unwrap();
        let b = Partition::from_parts(vec![3, 2]).unwrap();
        let phi = t.character(&a).unwrap().values.add(&t.character(&b).unwrap().values.scale(&rat(2))).unwrap();
        let ms = t.decompose(&phi).unwrap().multiset().unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[&a], 1);
        assert_eq!(ms[&b], 2);
    }

    #[test]
    fn indicator_pairing_and_failures() {
        let t = character_table(5).unwrap();
        let e = ClassFunction::indicator(&Partition::identity(5));
        for chi in &t.irreducibles {
            let ip = inner_product(&e, &chi.values).unwrap();
            assert_eq!(ip, rat(chi.dimension() as i64) / rat(120));
        }
        let dec = t.decompose(&e).unwrap();
        assert!(!dec.is_genuine());
        assert!(dec.multiset().is_none());
        let other = ClassFunction::zero(6);
        assert!(inner_product(&e, &other).is_err());
        assert!(character_table(9).is_err());
    }
}
