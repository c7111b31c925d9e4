//! Integer partitions, used both as cycle types of permutations and as labels
//! of irreducible characters of the symmetric group.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("cannot parse cycle type {0:?}")]
    Syntax(String),
    #[error("cycle type {text:?} does not describe a permutation of {n} points")]
    WrongSize { text: String, n: u32 },
}

/// Weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

pub type CycleType = Partition;

impl Partition {
    pub fn from_parts(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// The one-part partition `(n)`.
    pub fn cycle(n: u32) -> Self {
        Partition(vec![n])
    }

    /// `(1^n)`, the cycle type of the identity.
    pub fn identity(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(j, m_j)` for each distinct part `j`, largest first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &part in &self.0 {
            match out.last_mut() {
                Some((j, m)) if *j == part => *m += 1,
                _ => out.push((part, 1)),
            }
        }
        out
    }

    /// `prod_j j^{m_j} m_j!`.
    pub fn centralizer_order(&self) -> u64 {
        self.multiplicities()
            .into_iter()
            .map(|(j, m)| (j as u64).pow(m) * arith::factorial(m))
            .product()
    }

    /// Number of permutations with this cycle type.
    pub fn class_size(&self) -> u64 {
        arith::factorial(self.size()) / self.centralizer_order()
    }

    /// Product of the parts' signs.
    pub fn sign(&self) -> i64 {
        if self.0.iter().filter(|&&j| j % 2 == 0).count() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn lcm(&self) -> u32 {
        arith::lcm_all(&self.0)
    }

    pub fn conjugate(&self) -> Self {
        let longest = self.0.first().copied().unwrap_or(0);
        Partition((1..=longest).map(|i| self.0.iter().filter(|&&p| p >= i).count() as u32).collect())
    }

    /// All partitions of `n`, lexicographically increasing: `(1^n)` first, `(n)` last.
    pub fn all(n: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for part in (1..=max.min(rest)).rev() {
                prefix.push(part);
                rec(rest - part, part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out.reverse();
        out
    }

    /// Disjoint-cycle representative with fixed points dropped, e.g. `(123)(45)`;
    /// the identity prints as `e`.
    pub fn cycle_notation(&self) -> String {
        let mut next = 1u32;
        let mut out = String::new();
        for &part in &self.0 {
            if part == 1 {
                break;
            }
            out.push('(');
            for _ in 0..part {
                out.push_str(&symbol(next));
                next += 1;
            }
            out.push(')');
        }
        if out.is_empty() {
            "e".to_string()
        } else {
            out
        }
    }

    /// Accepts `3,2,1`, `(123)(45)`, `123` (a single cycle), or `e`; fixed
    /// points are filled in up to `n`.
    pub fn parse(text: &str, n: u32) -> Result<Self, PartitionError> {
        let t = text.trim();
        let syntax = || PartitionError::Syntax(text.to_string());
        let mut parts: Vec<u32> = if t == "e" || t == "id" || t == "1" && n == 1 {
            Vec::new()
        } else if t.starts_with('(') {
            let mut parts = Vec::new();
            for chunk in t.split(')') {
                if chunk.is_empty() {
                    continue;
                }
                let body = chunk.strip_prefix('(').ok_or_else(syntax)?;
                if body.is_empty() || !body.chars().all(|c| c.is_ascii_alphanumeric()) {
                    return Err(syntax());
                }
                parts.push(body.chars().count() as u32);
            }
            if !t.ends_with(')') {
                return Err(syntax());
            }
            parts
        } else if t.contains(',') {
            t.split(',')
                .map(|s| s.trim().parse::<u32>().map_err(|_| syntax()))
                .collect::<Result<_, _>>()?
        } else if t.len() >= 2 && t.chars().all(|c| c.is_ascii_digit()) {
            vec![t.len() as u32]
        } else {
            vec![t.parse::<u32>().map_err(|_| syntax())?]
        };
        if parts.contains(&0) {
            return Err(syntax());
        }
        let used: u32 = parts.iter().sum();
        if used > n {
            return Err(PartitionError::WrongSize { text: text.to_string(), n });
        }
        parts.extend(std::iter::repeat(1).take((n - used) as usize));
        Partition::from_parts(parts)
    }
}

fn symbol(i: u32) -> String {
    if i < 10 {
        i.to_string()
    } else {
        char::from(b'a' + (i - 10) as u8).to_string()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the parts.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.cmp(&other.0)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}
