//! Brute-force reference implementations over bounded windows.
//!
//! A [`BoundedSet`] models a value set of a nonzero fractional ideal (or a
//! numerical semigroup) by its membership table on `[-bound, bound]`, with
//! the convention that every integer above `bound` is a member and none
//! below `-bound` is. Every operation here computes membership by direct
//! search under that convention and then certifies that its result obeys the
//! same convention, failing with [`OracleError::TailNotCertified`] when the
//! window is too small. Nothing in this module reads the exact layer.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("bounded sets use different windows ({0} vs {1})")]
    BoundMismatch(i64, i64),
    #[error("result is not full above the window bound {bound} (missing {missing})")]
    TailNotCertified { bound: i64, missing: i64 },
}

#[derive(Clone, Debug)]
pub struct BoundedSet {
    /// Half-width of the window `[-bound, bound]`.
    pub bound: i64,
    /// Width of the region above `bound` that was searched to certify the
    /// cofinite tail of this set; 0 for sets built directly.
    pub margin: i64,
    members: Vec<bool>,
}

impl BoundedSet {
    pub fn from_fn(bound: i64, f: impl Fn(i64) -> bool) -> Self {
        BoundedSet {
            bound,
            margin: 0,
            members: (-bound..=bound).map(f).collect(),
        }
    }

    /// The semigroup generated by `gens`, by repeated addition inside the window.
    pub fn semigroup(bound: i64, gens: &[i64]) -> Self {
        let mut reach = vec![false; bound as usize + 1];
        reach[0] = true;
        for n in 1..=bound as usize {
            reach[n] = gens.iter().any(|&g| g as usize <= n && reach[n - g as usize]);
        }
        Self::from_fn(bound, |n| n >= 0 && reach[n as usize])
    }

    pub fn contains(&self, n: i64) -> bool {
        if n > self.bound {
            true
        } else if n < -self.bound {
            false
        } else {
            self.members[(n + self.bound) as usize]
        }
    }

    pub fn min(&self) -> i64 {
        (-self.bound..=self.bound)
            .find(|&n| self.contains(n))
            .unwrap_or(self.bound + 1)
    }

    /// Members in `[lo, hi]`.
    pub fn members_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&n| self.contains(n)).collect()
    }

    /// Whether every member of `self` inside its window is a member of `other`.
    pub fn is_subset_of(&self, other: &BoundedSet) -> bool {
        (-self.bound..=self.bound).all(|n| !self.contains(n) || other.contains(n))
    }

    fn certify(bound: i64, margin: i64, f: impl Fn(i64) -> bool) -> Result<Self, OracleError> {
        if let Some(missing) = (bound + 1..=bound + margin).find(|&n| !f(n)) {
            return Err(OracleError::TailNotCertified { bound, missing });
        }
        let mut set = Self::from_fn(bound, f);
        set.margin = margin;
        Ok(set)
    }
}

impl PartialEq for BoundedSet {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.members == other.members
    }
}

impl Eq for BoundedSet {}

fn same_bound(a: &BoundedSet, b: &BoundedSet) -> Result<i64, OracleError> {
    if a.bound == b.bound {
        Ok(a.bound)
    } else {
        Err(OracleError::BoundMismatch(a.bound, b.bound))
    }
}

/// `{x + y : x ∈ A, y ∈ B}`.
pub fn oracle_sumset(a: &BoundedSet, b: &BoundedSet) -> Result<BoundedSet, OracleError> {
    let bound = same_bound(a, b)?;
    let (min_a, min_b) = (a.min(), b.min());
    let member = |z: i64| (min_a..=z - min_b).any(|x| a.contains(x) && b.contains(z - x));
    // Above bound + min(B), z - min(B) lies in A's tail.
    BoundedSet::certify(bound, min_b.max(0), member)
}

/// `{z : z + B ⊆ A}`.
pub fn oracle_colon(a: &BoundedSet, b: &BoundedSet) -> Result<BoundedSet, OracleError> {
    let bound = same_bound(a, b)?;
    let min_b = b.min();
    // z + y only needs checking while it stays inside A's window.
    let member = |z: i64| (min_b..=bound - z).all(|y| !b.contains(y) || a.contains(z + y));
    // Above bound - min(B), every z + y lands in A's tail.
    BoundedSet::certify(bound, (-min_b).max(0), member)
}

/// Closes a semigroup window under `b + c - a` for `a <= b`, `a <= c`.
pub fn oracle_pattern_saturate(s: &BoundedSet) -> BoundedSet {
    let bound = s.bound;
    let mut members: Vec<bool> = (0..=bound).map(|n| s.contains(n)).collect();
    loop {
        let current: Vec<i64> = (0..=bound).filter(|&n| members[n as usize]).collect();
        let mut added = false;
        for &a in &current {
            for &b in current.iter().filter(|&&b| b >= a) {
                for &c in current.iter().filter(|&&c| c >= a) {
                    let n = b + c - a;
                    if n <= bound && !members[n as usize] {
                        members[n as usize] = true;
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    BoundedSet::from_fn(bound, |n| n >= 0 && (n > bound || members[n as usize]))
}

/// `x + y - z ∈ S` for all `x >= y >= z` in the window.
pub fn oracle_is_arf(s: &BoundedSet) -> bool {
    oracle_pattern_saturate(s) == *s
}
