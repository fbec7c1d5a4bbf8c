//! Numerical semigroups in canonical "small elements + conductor" form.
//!
//! A numerical semigroup `S` is stored as the membership table of
//! `[0, conductor)` together with the implicit tail `{conductor, conductor + 1, …}`.
//! It stands for the one-branch ring `k[[S]]`, whose integral closure is
//! `k[[t]]`, i.e. the semigroup `ℕ`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the membership window scanned by [`NumericalSemigroup::from_generators`].
pub const DEFAULT_MAX_BOUND: i64 = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SemigroupRepr", into = "SemigroupRepr")]
pub struct NumericalSemigroup {
    /// `member[i]` for `0 <= i < conductor`.
    member: Arc<[bool]>,
    small_elements: Arc<[i64]>,
    minimal_generators: Arc<[i64]>,
}

/// Summary numbers of a semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupStats {
    pub multiplicity: i64,
    pub conductor: i64,
    pub frobenius: i64,
    pub genus: i64,
    pub embedding_dimension: usize,
    pub minimal_generators: Vec<i64>,
}

impl NumericalSemigroup {
    /// The semigroup `ℕ` of the DVR `k[[t]]`.
    pub fn naturals() -> Self {
        Self::from_table(Vec::new()).expect("ℕ is a numerical semigroup")
    }

    pub fn from_generators(gens: &[i64]) -> Result<Self> {
        Self::from_generators_bounded(gens, DEFAULT_MAX_BOUND)
    }

    /// Builds `⟨gens⟩`, refusing inputs whose membership window exceeds `max_bound`.
    pub fn from_generators_bounded(gens: &[i64], max_bound: i64) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(&g) = gens.iter().find(|&&g| g < 1) {
            return Err(Error::NonPositiveGenerator(g));
        }
        let g = gens.iter().copied().fold(0, gcd);
        if g != 1 {
            return Err(Error::NonCoprime { gcd: g });
        }
        let min = *gens.iter().min().unwrap();
        let max = *gens.iter().max().unwrap();
        // Schur: frobenius <= (min - 1)(max - 1) - 1, so this window always
        // contains the conductor plus a full run of `min` members.
        let bound = max
            .checked_mul(min)
            .and_then(|p| p.checked_add(max))
            .unwrap_or(i64::MAX);
        if bound > max_bound {
            return Err(Error::BoundExceeded {
                needed: bound,
                limit: max_bound,
            });
        }
        let len = bound as usize + 1;
        let mut reach = vec![false; len];
        reach[0] = true;
        for n in 1..len {
            reach[n] = gens
                .iter()
                .any(|&g| g as usize <= n && reach[n - g as usize]);
        }
        let conductor = reach.iter().rposition(|&b| !b).map_or(0, |gap| gap + 1);
        if len - conductor < min as usize {
            return Err(Error::Internal(format!(
                "membership window {bound} too small for generators {gens:?}"
            )));
        }
        reach.truncate(conductor);
        Self::from_table(reach)
    }

    /// Builds a semigroup from its elements below `conductor`, validating
    /// every invariant of the canonical form.
    pub fn from_small_elements(small_elements: &[i64], conductor: i64) -> Result<Self> {
        if conductor < 0 {
            return Err(Error::InvalidSemigroup(format!("negative conductor {conductor}")));
        }
        if conductor == 0 && small_elements == [0] {
            return Self::from_table(Vec::new());
        }
        let mut table = vec![false; conductor as usize];
        let mut prev = None;
        for &s in small_elements {
            if s < 0 || s >= conductor {
                return Err(Error::InvalidSemigroup(format!(
                    "element {s} outside [0, {conductor})"
                )));
            }
            if prev.is_some_and(|p| p >= s) {
                return Err(Error::InvalidSemigroup("elements not strictly increasing".into()));
            }
            prev = Some(s);
            table[s as usize] = true;
        }
        Self::from_table(table)
    }

    /// Canonicalizes a membership predicate, given that every `n >= tail`
    /// is a member. Fails if the resulting set is not a numerical semigroup.
    pub fn from_predicate(tail: i64, member: impl Fn(i64) -> bool) -> Result<Self> {
        let tail = tail.max(0);
        let mut table: Vec<bool> = (0..tail).map(&member).collect();
        let conductor = table.iter().rposition(|&b| !b).map_or(0, |gap| gap + 1);
        table.truncate(conductor);
        Self::from_table(table)
    }

    /// `table` is the membership of `[0, table.len())`; its last entry must
    /// be a gap (or the table empty).
    fn from_table(table: Vec<bool>) -> Result<Self> {
        let conductor = table.len();
        if conductor > 0 {
            if !table[0] {
                return Err(Error::InvalidSemigroup("0 is missing".into()));
            }
            if table[conductor - 1] {
                return Err(Error::InvalidSemigroup("conductor is not minimal".into()));
            }
        }
        // ℕ keeps 0 as its only listed element.
        let small_elements: Vec<i64> = if conductor == 0 {
            vec![0]
        } else {
            (0..conductor).filter(|&i| table[i]).map(|i| i as i64).collect()
        };
        for (i, &x) in small_elements.iter().enumerate() {
            for &y in &small_elements[i..] {
                let sum = (x + y) as usize;
                if sum >= conductor {
                    break;
                }
                if !table[sum] {
                    return Err(Error::InvalidSemigroup(format!(
                        "{x} + {y} = {sum} is missing"
                    )));
                }
            }
        }
        let mut s = NumericalSemigroup {
            member: table.into(),
            small_elements: small_elements.into(),
            minimal_generators: Arc::new([]),
        };
        s.minimal_generators = s.compute_minimal_generators().into();
        Ok(s)
    }

    fn compute_minimal_generators(&self) -> Vec<i64> {
        let m = self.multiplicity();
        (1..=self.conductor() + m)
            .filter(|&s| self.contains(s))
            .filter(|&s| !(m..=s - m).any(|x| self.contains(x) && self.contains(s - x)))
            .collect()
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            false
        } else if n >= self.conductor() {
            true
        } else {
            self.member[n as usize]
        }
    }

    pub fn conductor(&self) -> i64 {
        self.member.len() as i64
    }

    /// Elements strictly below the conductor, ascending; always starts with 0
    /// (for `ℕ` the list is just `[0]`).
    pub fn small_elements(&self) -> &[i64] {
        &self.small_elements
    }

    pub fn minimal_generators(&self) -> &[i64] {
        &self.minimal_generators
    }

    /// Least nonzero element; 1 for `ℕ`.
    pub fn multiplicity(&self) -> i64 {
        self.small_elements.get(1).copied().unwrap_or(self.conductor().max(1))
    }

    pub fn frobenius(&self) -> i64 {
        self.conductor() - 1
    }

    pub fn genus(&self) -> i64 {
        self.member.iter().filter(|&&b| !b).count() as i64
    }

    pub fn embedding_dimension(&self) -> usize {
        self.minimal_generators.len()
    }

    pub fn is_naturals(&self) -> bool {
        self.member.is_empty()
    }

    pub fn gaps(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.conductor()).filter(|&n| !self.contains(n))
    }

    /// Elements of `S` in `[0, bound]`.
    pub fn elements_up_to(&self, bound: i64) -> impl Iterator<Item = i64> + '_ {
        (0..=bound).filter(|&n| self.contains(n))
    }

    /// Set inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &NumericalSemigroup) -> bool {
        self.small_elements.iter().all(|&s| other.contains(s))
            && (self.conductor()..other.conductor()).all(|n| other.contains(n))
    }

    pub fn stats(&self) -> SemigroupStats {
        SemigroupStats {
            multiplicity: self.multiplicity(),
            conductor: self.conductor(),
            frobenius: self.frobenius(),
            genus: self.genus(),
            embedding_dimension: self.embedding_dimension(),
            minimal_generators: self.minimal_generators.to_vec(),
        }
    }

    /// Children of `self` in the tree of numerical semigroups: remove one
    /// minimal generator larger than the Frobenius number.
    fn children(&self, max_conductor: i64) -> impl Iterator<Item = NumericalSemigroup> + '_ {
        let frob = self.frobenius();
        self.minimal_generators
            .iter()
            .copied()
            .filter(move |&g| g > frob && g < max_conductor)
            .map(move |g| {
                let mut table = self.member.to_vec();
                table.resize(g as usize + 1, true);
                table[g as usize] = false;
                Self::from_table(table).expect("removing a generator above F keeps a semigroup")
            })
    }
}

/// Every numerical semigroup with conductor at most `max_conductor`,
/// ordered by conductor and then by element list.
pub fn enumerate_by_conductor(max_conductor: i64) -> Vec<NumericalSemigroup> {
    let mut out = Vec::new();
    let mut stack = vec![NumericalSemigroup::naturals()];
    while let Some(s) = stack.pop() {
        stack.extend(s.children(max_conductor));
        out.push(s);
    }
    out.sort_by(|a, b| {
        (a.conductor(), &a.small_elements).cmp(&(b.conductor(), &b.small_elements))
    });
    out
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.minimal_generators.iter().map(i64::to_string).collect();
        write!(f, "⟨{}⟩", gens.join(","))
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Wire form: `{"generators":[…],"small_elements":[…],"conductor":c}`.
#[derive(Serialize, Deserialize)]
struct SemigroupRepr {
    generators: Vec<i64>,
    small_elements: Vec<i64>,
    conductor: i64,
}

impl From<NumericalSemigroup> for SemigroupRepr {
    fn from(s: NumericalSemigroup) -> Self {
        SemigroupRepr {
            conductor: s.conductor(),
            generators: s.minimal_generators.to_vec(),
            small_elements: s.small_elements.to_vec(),
        }
    }
}

impl TryFrom<SemigroupRepr> for NumericalSemigroup {
    type Error = Error;

    fn try_from(r: SemigroupRepr) -> Result<Self> {
        let s = NumericalSemigroup::from_small_elements(&r.small_elements, r.conductor)?;
        if *s.minimal_generators != *r.generators {
            return Err(Error::InvalidSemigroup(format!(
                "generators {:?} do not match the element list (expected {:?})",
                r.generators, s.minimal_generators
            )));
        }
        Ok(s)
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_semigroup() -> impl Strategy<Value = NumericalSemigroup> {
        prop::collection::vec(2i64..25, 1..5).prop_filter_map("coprime", |mut gens| {
            gens.push(23);
            gens.push(29);
            NumericalSemigroup::from_generators(&gens).ok()
        })
    }

    proptest! {
        #[test]
        fn round_trip_and_canonical(s in arb_semigroup()) {
            let again = NumericalSemigroup::from_generators(s.minimal_generators()).unwrap();
            prop_assert_eq!(&again, &s);
            let recanon = NumericalSemigroup::from_small_elements(s.small_elements(), s.conductor()).unwrap();
            prop_assert_eq!(&recanon, &s);
            prop_assert_eq!(s.multiplicity(), s.minimal_generators()[0]);
        }

        #[test]
        fn closed_under_addition(s in arb_semigroup()) {
            let top = s.conductor() + s.minimal_generators().last().unwrap();
            for x in s.elements_up_to(top) {
                for y in s.elements_up_to(top) {
                    prop_assert!(s.contains(x + y));
                }
            }
        }
    }
}
