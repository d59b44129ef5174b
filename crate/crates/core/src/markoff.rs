//! Markoff triples and their tree.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A positive solution of `x^2 + y^2 + z^2 = 3xyz` with `y` the largest entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[String; 3]", into = "[String; 3]")]
pub struct MarkoffTriple {
    x: BigUint,
    y: BigUint,
    z: BigUint,
}

impl MarkoffTriple {
    /// Accepts any ordering with the maximum in the middle; anything else,
    /// or a non-solution, is rejected.
    pub fn new(x: BigUint, y: BigUint, z: BigUint) -> Result<Self> {
        let invalid = || Error::InvalidTriple {
            x: x.to_string(),
            y: y.to_string(),
            z: z.to_string(),
        };
        if x.is_zero() || y.is_zero() || z.is_zero() || y < x || y < z {
            return Err(invalid());
        }
        if &x * &x + &y * &y + &z * &z != BigUint::from(3u8) * &x * &y * &z {
            return Err(invalid());
        }
        Ok(MarkoffTriple { x, y, z })
    }

    pub fn from_u64(x: u64, y: u64, z: u64) -> Result<Self> {
        Self::new(x.into(), y.into(), z.into())
    }

    pub fn root() -> Self {
        MarkoffTriple {
            x: BigUint::one(),
            y: BigUint::one(),
            z: BigUint::one(),
        }
    }

    pub fn x(&self) -> &BigUint {
        &self.x
    }

    pub fn y(&self) -> &BigUint {
        &self.y
    }

    pub fn z(&self) -> &BigUint {
        &self.z
    }

    pub fn components(&self) -> [&BigUint; 3] {
        [&self.x, &self.y, &self.z]
    }
}

impl fmt::Display for MarkoffTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl TryFrom<[String; 3]> for MarkoffTriple {
    type Error = String;

    fn try_from([x, y, z]: [String; 3]) -> std::result::Result<Self, String> {
        let parse = |s: &str| s.parse::<BigUint>().map_err(|e| format!("{s:?}: {e}"));
        MarkoffTriple::new(parse(&x)?, parse(&y)?, parse(&z)?).map_err(|e| e.to_string())
    }
}

impl From<MarkoffTriple> for [String; 3] {
    fn from(t: MarkoffTriple) -> Self {
        [t.x.to_string(), t.y.to_string(), t.z.to_string()]
    }
}

/// `(x, 3xy - z, y)` and `(y, 3yz - x, z)`.
pub fn triple_children(t: &MarkoffTriple) -> (MarkoffTriple, MarkoffTriple) {
    let three = BigUint::from(3u8);
    let left = &three * &t.x * &t.y - &t.z;
    let right = &three * &t.y * &t.z - &t.x;
    (
        MarkoffTriple {
            x: t.x.clone(),
            y: left,
            z: t.y.clone(),
        },
        MarkoffTriple {
            x: t.y.clone(),
            y: right,
            z: t.z.clone(),
        },
    )
}

fn walk(mut keep: impl FnMut(&MarkoffTriple, usize) -> bool) -> BTreeSet<BigUint> {
    let mut numbers = BTreeSet::new();
    let mut seen = HashSet::new();
    let mut frontier = vec![MarkoffTriple::root()];
    let mut depth = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for t in frontier {
            if !keep(&t, depth) || !seen.insert(t.clone()) {
                continue;
            }
            numbers.extend(t.components().into_iter().cloned());
            let (l, r) = triple_children(&t);
            next.push(l);
            next.push(r);
        }
        frontier = next;
        depth += 1;
    }
    numbers
}

/// Every entry of every triple within `depth` steps of `(1, 1, 1)`.
pub fn markoff_numbers(depth: usize) -> BTreeSet<BigUint> {
    walk(|_, d| d <= depth)
}

/// Every Markoff number `<= bound`. The middle entry only grows along the
/// tree, so branches are cut once it passes the bound.
pub fn markoff_numbers_up_to(bound: &BigUint) -> BTreeSet<BigUint> {
    let mut out = walk(|t, _| t.y() <= bound);
    out.retain(|n| n <= bound);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nums(set: &BTreeSet<BigUint>) -> Vec<u64> {
        set.iter().map(|n| n.try_into().unwrap()).collect()
    }

    #[test]
    fn validation() {
        assert!(MarkoffTriple::from_u64(1, 1, 1).is_ok());
        assert!(MarkoffTriple::from_u64(1, 5, 2).is_ok());
        assert!(MarkoffTriple::from_u64(5, 2, 1).is_err());
        assert!(MarkoffTriple::from_u64(1, 4, 2).is_err());
        assert!(MarkoffTriple::from_u64(0, 0, 0).is_err());
    }

    #[test]
    fn children() {
        let (l, r) = triple_children(&MarkoffTriple::from_u64(1, 2, 1).unwrap());
        assert_eq!(l, MarkoffTriple::from_u64(1, 5, 2).unwrap());
        assert_eq!(r, MarkoffTriple::from_u64(2, 5, 1).unwrap());
        let (l, r) = triple_children(&MarkoffTriple::from_u64(1, 5, 2).unwrap());
        assert_eq!(l, MarkoffTriple::from_u64(1, 13, 5).unwrap());
        assert_eq!(r, MarkoffTriple::from_u64(5, 29, 2).unwrap());
    }

    #[test]
    fn children_stay_valid() {
        let mut frontier = vec![MarkoffTriple::root()];
        for _ in 0..8 {
            frontier = frontier
                .iter()
                .flat_map(|t| {
                    let (l, r) = triple_children(t);
                    [l, r]
                })
                .collect();
            for t in &frontier {
                MarkoffTriple::new(t.x().clone(), t.y().clone(), t.z().clone()).unwrap();
            }
        }
    }

    #[test]
    fn number_lists() {
        assert_eq!(nums(&markoff_numbers(0)), vec![1]);
        let first: Vec<u64> = markoff_numbers(8)
            .iter()
            .take(13)
            .map(|n| n.try_into().unwrap())
            .collect();
        assert_eq!(first, &[1, 2, 5, 13, 29, 34, 89, 169, 194, 233, 433, 610, 985]);
        let upto = nums(&markoff_numbers_up_to(&BigUint::from(1000u32)));
        assert_eq!(upto, vec![1, 2, 5, 13, 29, 34, 89, 169, 194, 233, 433, 610, 985]);
    }

    #[test]
    fn serde_as_strings() {
        let t = MarkoffTriple::from_u64(5, 29, 2).unwrap();
        let j = serde_json::to_string(&t).unwrap();
        assert_eq!(j, r#"["5","29","2"]"#);
        assert_eq!(serde_json::from_str::<MarkoffTriple>(&j).unwrap(), t);
        assert!(serde_json::from_str::<MarkoffTriple>(r#"["5","28","2"]"#).is_err());
    }
}
