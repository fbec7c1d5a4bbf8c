//! Arf semigroups: two independent membership criteria, the Arf closure,
//! the tower of blow-ups at maximal ideals, and multiplicity sequences.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{IntegrallyClosedIdeal, ValueIdeal};
use crate::semigroup::NumericalSemigroup;

/// Certificate that a semigroup is not Arf.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArfWitness {
    /// `x, y, z ∈ S` with `x >= y >= z` but `x + y - z ∉ S`.
    PatternTriple { x: i64, y: i64, z: i64 },
    /// `{s ∈ S : s >= a}` is integrally closed but not stable.
    UnstableIdeal { a: i64 },
}

impl ArfWitness {
    /// Re-checks the certificate against `s`.
    pub fn refutes(&self, s: &NumericalSemigroup) -> bool {
        match *self {
            ArfWitness::PatternTriple { x, y, z } => {
                x >= y
                    && y >= z
                    && [x, y, z].iter().all(|&v| s.contains(v))
                    && !s.contains(x + y - z)
            }
            ArfWitness::UnstableIdeal { a } => {
                IntegrallyClosedIdeal::principal_closure(s, a)
                    .is_ok_and(|i| !i.to_ideal().is_stable().unwrap_or(true))
            }
        }
    }
}

impl fmt::Display for ArfWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ArfWitness::PatternTriple { x, y, z } => {
                write!(f, "witness x={x} y={y} z={z}, x+y−z={} ∉ S", x + y - z)
            }
            ArfWitness::UnstableIdeal { a } => {
                write!(f, "witness a={a}: the integrally closed ideal with minimum {a} is not stable")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArfVerdict {
    Arf,
    NotArf(ArfWitness),
}

impl ArfVerdict {
    pub fn is_arf(&self) -> bool {
        matches!(self, ArfVerdict::Arf)
    }

    pub fn witness(&self) -> Option<&ArfWitness> {
        match self {
            ArfVerdict::Arf => None,
            ArfVerdict::NotArf(w) => Some(w),
        }
    }
}

/// Arf test through stability: every integrally closed ideal
/// `{s ∈ S : s >= a}` must satisfy `E + E = a + E`.
///
/// Only `a <= conductor` needs checking; above it the ideal is `[a, ∞)`,
/// which is always stable. Reports the least failing `a`.
pub fn is_arf_stability(s: &NumericalSemigroup) -> ArfVerdict {
    for a in s.elements_up_to(s.conductor()) {
        let ideal = IntegrallyClosedIdeal::principal_closure(s, a)
            .expect("a enumerated from S")
            .to_ideal();
        if !ideal.is_stable().expect("closure is integral") {
            return ArfVerdict::NotArf(ArfWitness::UnstableIdeal { a });
        }
    }
    ArfVerdict::Arf
}

/// Arf test through the element pattern: `b + c - a ∈ S` whenever
/// `a <= b` and `a <= c` are in `S`.
///
/// Only triples below the conductor can fail, since `x + y - z >= x`.
/// Triples are tried in order of `z`, then `x`, then `y`.
pub fn is_arf_pattern(s: &NumericalSemigroup) -> ArfVerdict {
    let c = s.conductor();
    let elems: Vec<i64> = s.small_elements().iter().copied().filter(|&n| n < c).collect();
    for (i, &z) in elems.iter().enumerate() {
        for (j, &x) in elems.iter().enumerate().skip(i) {
            for &y in &elems[i..=j] {
                if x + y - z >= c {
                    break;
                }
                if !s.contains(x + y - z) {
                    return ArfVerdict::NotArf(ArfWitness::PatternTriple { x, y, z });
                }
            }
        }
    }
    ArfVerdict::Arf
}

pub fn is_arf(s: &NumericalSemigroup) -> bool {
    is_arf_pattern(s).is_arf()
}

fn require_arf(s: &NumericalSemigroup) -> Result<()> {
    match is_arf_pattern(s) {
        ArfVerdict::Arf => Ok(()),
        ArfVerdict::NotArf(witness) => Err(Error::NotArf {
            semigroup: s.to_string(),
            witness,
        }),
    }
}

/// The maximal ideal is stable, i.e. `v(R) = e(R)`.
pub fn has_minimal_multiplicity(s: &NumericalSemigroup) -> bool {
    ValueIdeal::maximal(s)
        .is_stable()
        .expect("the maximal ideal is integral")
}

/// `{s - e : s ∈ S, s >= e}` for `e = multiplicity(S)`, and whether that set
/// was already a semigroup. If not, the semigroup it generates is returned.
fn blow_up(s: &NumericalSemigroup) -> (NumericalSemigroup, bool) {
    let e = s.multiplicity();
    let tail = (s.conductor() - e).max(0);
    match NumericalSemigroup::from_predicate(tail, |n| s.contains(n + e)) {
        Ok(t) => (t, true),
        Err(_) => {
            let gens: Vec<i64> = (1..=tail + e).filter(|&n| s.contains(n + e)).collect();
            let t = NumericalSemigroup::from_generators(&gens)
                .expect("shifted set contains a run of consecutive integers");
            (t, false)
        }
    }
}

/// Multiplicities `e₀, e₁, …` of a tower of blow-ups, with the trailing 1s
/// left implicit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct MultiplicitySequence {
    entries: Vec<i64>,
}

impl MultiplicitySequence {
    /// Validates that the partial sums form an Arf semigroup; trailing 1s
    /// are trimmed.
    pub fn new(mut entries: Vec<i64>) -> Result<Self> {
        while entries.last() == Some(&1) {
            entries.pop();
        }
        let s = from_multiplicity_sequence(&entries)?;
        require_arf(&s)?;
        Ok(MultiplicitySequence { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry `i`, continuing with the implicit 1s.
    pub fn get(&self, i: usize) -> i64 {
        self.entries.get(i).copied().unwrap_or(1)
    }

    /// `e₀ + … + e_{k-1}`.
    pub fn prefix_sum(&self, k: usize) -> i64 {
        (0..k).map(|i| self.get(i)).sum()
    }

    pub fn semigroup(&self) -> NumericalSemigroup {
        from_multiplicity_sequence(&self.entries).expect("validated at construction")
    }
}

impl TryFrom<Vec<i64>> for MultiplicitySequence {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        MultiplicitySequence::new(v)
    }
}

impl From<MultiplicitySequence> for Vec<i64> {
    fn from(m: MultiplicitySequence) -> Self {
        m.entries
    }
}

/// The semigroup `{0, e₀, e₀+e₁, …}` continued by steps of 1.
///
/// Fails with the first partial sum `p` for which some `p + q` (with `q` an
/// earlier or equal partial sum) is missing.
pub fn from_multiplicity_sequence(entries: &[i64]) -> Result<NumericalSemigroup> {
    if let Some(&e) = entries.iter().find(|&&e| e < 1) {
        return Err(Error::NonPositiveEntry(e));
    }
    let sums: Vec<i64> = std::iter::once(0)
        .chain(entries.iter().scan(0, |acc, &e| {
            *acc += e;
            Some(*acc)
        }))
        .collect();
    let tail = *sums.last().unwrap();
    let member = |n: i64| n >= tail || sums.binary_search(&n).is_ok();
    for (i, &p) in sums.iter().enumerate() {
        if sums[..=i].iter().any(|&q| !member(p + q)) {
            return Err(Error::InvalidSequence { partial_sum: p });
        }
    }
    NumericalSemigroup::from_predicate(tail, member)
}

/// Multiplicity sequence of the (re-closed) blow-up chain of `s`, ending at `ℕ`.
fn closure_sequence(s: &NumericalSemigroup) -> Vec<i64> {
    let mut entries = Vec::new();
    let mut current = s.clone();
    while !current.is_naturals() {
        entries.push(current.multiplicity());
        current = blow_up(&current).0;
    }
    entries
}

/// The smallest Arf semigroup containing `s`.
pub fn arf_closure(s: &NumericalSemigroup) -> NumericalSemigroup {
    from_multiplicity_sequence(&closure_sequence(s))
        .expect("blow-up multiplicities always form an Arf semigroup")
}

/// `A₀ = S ⊊ A₁ ⊊ … ⊊ A_N = ℕ`, each ring the blow-up of the previous one
/// at its maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LipmanTower {
    pub rings: Vec<NumericalSemigroup>,
    pub multiplicity_sequence: MultiplicitySequence,
}

impl LipmanTower {
    /// Number of blow-ups needed to reach `ℕ`.
    pub fn len(&self) -> usize {
        self.rings.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `A_i`, which is `ℕ` from index `N` on.
    pub fn ring(&self, i: usize) -> &NumericalSemigroup {
        &self.rings[i.min(self.rings.len() - 1)]
    }
}

pub fn lipman_tower(s: &NumericalSemigroup) -> Result<LipmanTower> {
    require_arf(s)?;
    let mut rings = vec![s.clone()];
    let mut entries = Vec::new();
    let mut current = s.clone();
    while !current.is_naturals() {
        let next = ValueIdeal::maximal(&current)
            .endo_ring()
            .map_err(|e| Error::Internal(format!("blow-up of {current}: {e}")))?;
        let (shifted, already_closed) = blow_up(&current);
        if !already_closed || shifted != next {
            return Err(Error::Internal(format!(
                "blow-up of Arf semigroup {current} needed re-closure"
            )));
        }
        entries.push(current.multiplicity());
        rings.push(next.clone());
        current = next;
    }
    Ok(LipmanTower {
        rings,
        multiplicity_sequence: MultiplicitySequence { entries },
    })
}

/// Every Arf semigroup with conductor at most `max_conductor`, built by
/// prepending multiplicities: `{0} ∪ (e + T)` is Arf exactly when `T` is
/// Arf and `e ∈ T`. Ordered by conductor, then by element list.
pub fn enumerate_arf(max_conductor: i64) -> Vec<NumericalSemigroup> {
    fn extend(seq: &mut Vec<i64>, tail: &NumericalSemigroup, budget: i64, out: &mut Vec<Vec<i64>>) {
        // Prepend e >= 2 with e ∈ tail; conductor grows to e + conductor(tail).
        for e in 2..=budget {
            let conductor = if tail.is_naturals() { e } else { e + tail.conductor() };
            if conductor > budget || !tail.contains(e) {
                continue;
            }
            seq.insert(0, e);
            out.push(seq.clone());
            let s = from_multiplicity_sequence(seq).expect("prepended multiplicity is valid");
            extend(seq, &s, budget, out);
            seq.remove(0);
        }
    }
    let mut seqs = vec![Vec::new()];
    extend(&mut Vec::new(), &NumericalSemigroup::naturals(), max_conductor, &mut seqs);
    let mut out: Vec<NumericalSemigroup> = seqs
        .iter()
        .map(|seq| from_multiplicity_sequence(seq).expect("valid by construction"))
        .collect();
    out.sort_by(|a, b| {
        (a.conductor(), a.small_elements()).cmp(&(b.conductor(), b.small_elements()))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::enumerate_by_conductor;

    fn sg(gens: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(gens).unwrap()
    }

    #[test]
    fn stability_checker() {
        assert_eq!(is_arf_stability(&sg(&[3, 11, 13])), ArfVerdict::Arf);
        let v = is_arf_stability(&sg(&[4, 6, 7]));
        assert_eq!(v, ArfVerdict::NotArf(ArfWitness::UnstableIdeal { a: 4 }));
        assert!(v.witness().unwrap().refutes(&sg(&[4, 6, 7])));
        assert!(is_arf_stability(&NumericalSemigroup::naturals()).is_arf());
    }

    #[test]
    fn pattern_checker() {
        let t = sg(&[4, 6, 7]);
        let v = is_arf_pattern(&t);
        let w = ArfWitness::PatternTriple { x: 7, y: 6, z: 4 };
        assert_eq!(v, ArfVerdict::NotArf(w.clone()));
        assert!(w.refutes(&t));
        assert_eq!(w.to_string(), "witness x=7 y=6 z=4, x+y−z=9 ∉ S");
        assert!(is_arf_pattern(&sg(&[2, 3])).is_arf());
        assert!(is_arf_pattern(&NumericalSemigroup::naturals()).is_arf());
        assert!(is_arf_pattern(&sg(&[3, 11, 13])).is_arf());
    }

    #[test]
    fn witnesses_that_do_not_refute() {
        let s = sg(&[3, 11, 13]);
        assert!(!ArfWitness::PatternTriple { x: 9, y: 6, z: 3 }.refutes(&s));
        assert!(!ArfWitness::UnstableIdeal { a: 6 }.refutes(&s));
        assert!(!ArfWitness::UnstableIdeal { a: 5 }.refutes(&s));
    }

    #[test]
    fn minimal_multiplicity() {
        assert!(has_minimal_multiplicity(&sg(&[3, 11, 13])));
        assert!(!has_minimal_multiplicity(&sg(&[4, 6, 7])));
        assert!(has_minimal_multiplicity(&NumericalSemigroup::naturals()));
        // v = e exactly when the maximal ideal is stable
        for s in enumerate_by_conductor(12) {
            assert_eq!(
                has_minimal_multiplicity(&s),
                s.embedding_dimension() as i64 == s.multiplicity(),
                "{s}"
            );
        }
    }

    #[test]
    fn closure_examples() {
        let c = arf_closure(&sg(&[4, 6, 7]));
        assert_eq!(c.small_elements(), &[0, 4]);
        assert_eq!(c.conductor(), 6);
        assert_eq!(c, sg(&[4, 6, 7, 9]));
        assert_eq!(arf_closure(&sg(&[3, 11, 13])), sg(&[3, 11, 13]));
        assert_eq!(arf_closure(&NumericalSemigroup::naturals()), NumericalSemigroup::naturals());
    }

    #[test]
    fn tower_examples() {
        let t = lipman_tower(&sg(&[3, 11, 13])).unwrap();
        assert_eq!(
            t.rings,
            vec![sg(&[3, 11, 13]), sg(&[3, 8, 10]), sg(&[3, 5, 7]), sg(&[2, 3]), sg(&[1])]
        );
        assert_eq!(t.multiplicity_sequence.entries(), &[3, 3, 3, 2]);
        assert_eq!(t.len(), 4);

        let n = lipman_tower(&NumericalSemigroup::naturals()).unwrap();
        assert_eq!(n.rings, vec![NumericalSemigroup::naturals()]);
        assert!(n.multiplicity_sequence.is_empty());

        let c = lipman_tower(&sg(&[2, 3])).unwrap();
        assert_eq!(c.rings, vec![sg(&[2, 3]), NumericalSemigroup::naturals()]);
        assert_eq!(c.multiplicity_sequence.entries(), &[2]);

        assert!(matches!(lipman_tower(&sg(&[4, 6, 7])), Err(Error::NotArf { .. })));
    }

    #[test]
    fn sequence_examples() {
        assert_eq!(from_multiplicity_sequence(&[3, 3, 3, 2]).unwrap(), sg(&[3, 11, 13]));
        assert_eq!(from_multiplicity_sequence(&[2]).unwrap(), sg(&[2, 3]));
        assert_eq!(from_multiplicity_sequence(&[1]).unwrap(), NumericalSemigroup::naturals());
        assert_eq!(from_multiplicity_sequence(&[]).unwrap(), NumericalSemigroup::naturals());
        // 2 + 2 = 4 is not a partial sum of (2, 3)
        assert_eq!(
            from_multiplicity_sequence(&[2, 3]),
            Err(Error::InvalidSequence { partial_sum: 2 })
        );
        assert_eq!(from_multiplicity_sequence(&[3, 0]), Err(Error::NonPositiveEntry(0)));
        let m = MultiplicitySequence::new(vec![3, 3, 3, 2, 1, 1]).unwrap();
        assert_eq!(m.entries(), &[3, 3, 3, 2]);
        assert_eq!(m.prefix_sum(6), 13);
        assert_eq!(serde_json::to_string(&m).unwrap(), "[3,3,3,2]");
    }

    #[test]
    fn arf_enumeration_matches_filter() {
        let mut brute: Vec<_> = enumerate_by_conductor(18).into_iter().filter(is_arf).collect();
        brute.sort_by(|a, b| {
            (a.conductor(), a.small_elements()).cmp(&(b.conductor(), b.small_elements()))
        });
        assert_eq!(enumerate_arf(18), brute);
    }

    #[test]
    fn tower_inverts_sequence() {
        for s in enumerate_arf(20) {
            let t = lipman_tower(&s).unwrap();
            assert_eq!(t.multiplicity_sequence.semigroup(), s);
            let again = MultiplicitySequence::new(t.multiplicity_sequence.entries().to_vec()).unwrap();
            assert_eq!(lipman_tower(&again.semigroup()).unwrap().multiplicity_sequence, again);
        }
    }
}
