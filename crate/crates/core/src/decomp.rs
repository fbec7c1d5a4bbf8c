//! Decomposition of integrally closed ideals of an Arf semigroup ring into
//! products of maximal ideals along the blow-up tower.
//!
//! Starting from `R₀ = R` and `I₀ = I`, each step replaces the ring by
//! `√Iₙ : √Iₙ` and the ideal by `Iₙ : √Iₙ`. The recursion stops once the
//! ideal becomes the whole ring; the radicals collected on the way multiply
//! back to `I`.
//!
//! [`decompose`] runs that recursion literally with colon and radical
//! operations. [`decompose_fast`] reads the same data off the multiplicity
//! sequence: `I` is cut out by a prefix sum `a = e₀ + … + e_q`, and step `n`
//! lives in the `n`-th ring of the tower. The two must agree exactly.

use serde::{Deserialize, Serialize};

use crate::arf::{is_arf_pattern, lipman_tower, ArfVerdict};
use crate::error::{Error, Result};
use crate::ideal::{principal_closure, IntegrallyClosedIdeal, ValueIdeal};
use crate::semigroup::NumericalSemigroup;

/// One level of the recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerStep {
    /// Value semigroup of the ring at this level.
    pub ring: NumericalSemigroup,
    /// The ideal at this level, equal to `I` shifted down by `shift`.
    pub ideal: ValueIdeal,
    /// Its radical, the maximal ideal of `ring`; `None` once the ideal is the unit ideal.
    pub radical: Option<ValueIdeal>,
    /// Sum of the multiplicities of the rings below this level.
    pub shift: i64,
}

/// A maximal ideal together with the ring it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub ring: NumericalSemigroup,
    pub values: ValueIdeal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub semigroup: NumericalSemigroup,
    pub a: i64,
    /// Last level whose ideal is proper; `-1` for the unit ideal.
    pub q: i64,
    pub tower: Vec<TowerStep>,
    pub factors: Vec<Factor>,
    /// Value semigroup of `I : I`.
    #[serde(rename = "endpoint_B")]
    pub endpoint_b: NumericalSemigroup,
    pub verified: bool,
}

impl DecompositionResult {
    /// Sumset of all factors; the empty product is the ring itself.
    pub fn factor_product(&self) -> ValueIdeal {
        let unit = ValueIdeal::unit(&self.semigroup);
        self.factors
            .iter()
            .fold(unit, |acc, f| acc.sumset(&f.values))
    }
}

fn check_input(s: &NumericalSemigroup, a: i64) -> Result<ValueIdeal> {
    if let ArfVerdict::NotArf(witness) = is_arf_pattern(s) {
        return Err(Error::NotArf {
            semigroup: s.to_string(),
            witness,
        });
    }
    principal_closure(s, a)
}

fn finish(
    s: &NumericalSemigroup,
    a: i64,
    target: &ValueIdeal,
    tower: Vec<TowerStep>,
) -> DecompositionResult {
    let factors: Vec<Factor> = tower
        .iter()
        .filter_map(|step| {
            step.radical.as_ref().map(|m| Factor {
                ring: step.ring.clone(),
                values: m.clone(),
            })
        })
        .collect();
    let endpoint_b = tower.last().expect("tower is never empty").ring.clone();
    let mut result = DecompositionResult {
        semigroup: s.clone(),
        a,
        q: factors.len() as i64 - 1,
        tower,
        factors,
        endpoint_b,
        verified: false,
    };
    result.verified = result.factor_product() == *target;
    result
}

/// The literal recursion `R_{n+1} = √Iₙ : √Iₙ`, `I_{n+1} = Iₙ : √Iₙ`.
pub fn decompose(s: &NumericalSemigroup, a: i64) -> Result<DecompositionResult> {
    let target = check_input(s, a)?;
    // Past the conductor every extra unit of `a` adds one level over ℕ.
    let max_steps = s.genus() + 2 + (a - s.conductor()).max(0);
    let mut tower = Vec::new();
    let mut ring = s.clone();
    let mut ideal = target.clone();
    let mut shift = 0;
    loop {
        if ideal.min() == 0 {
            tower.push(TowerStep {
                ring,
                ideal,
                radical: None,
                shift,
            });
            break;
        }
        if tower.len() as i64 > max_steps {
            return Err(Error::Internal(format!(
                "recursion for a={a} over {s} did not stop within {max_steps} steps"
            )));
        }
        let radical = ideal.radical()?.to_ideal();
        let next_ring = radical.endo_ring()?;
        let next_ideal = ideal
            .colon(&radical)?
            .over(&next_ring)
            .map_err(|e| Error::Internal(format!("Iₙ : √Iₙ is not a module over the blow-up: {e}")))?;
        let next_shift = shift + ring.multiplicity();
        tower.push(TowerStep {
            ring,
            ideal,
            radical: Some(radical),
            shift,
        });
        ring = next_ring;
        ideal = next_ideal;
        shift = next_shift;
    }
    Ok(finish(s, a, &target, tower))
}

/// The same decomposition read off the blow-up tower and its multiplicity
/// sequence.
pub fn decompose_fast(s: &NumericalSemigroup, a: i64) -> Result<DecompositionResult> {
    let target = check_input(s, a)?;
    let tower_rings = lipman_tower(s)?;
    let seq = &tower_rings.multiplicity_sequence;
    let mut levels = 0;
    while seq.prefix_sum(levels) < a {
        levels += 1;
    }
    if seq.prefix_sum(levels) != a {
        return Err(Error::Internal(format!(
            "{a} ∈ {s} is not a prefix sum of the multiplicity sequence {:?}",
            seq.entries()
        )));
    }
    let tower = (0..=levels)
        .map(|n| {
            let ring = tower_rings.ring(n).clone();
            let shift = seq.prefix_sum(n);
            let ideal = IntegrallyClosedIdeal::principal_closure(&ring, a - shift)
                .map_err(|e| Error::Internal(format!("level {n}: {e}")))?
                .to_ideal();
            let radical = (n < levels).then(|| ValueIdeal::maximal(&ring));
            Ok(TowerStep {
                ring,
                ideal,
                radical,
                shift,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(s, a, &target, tower))
}

/// Checks `I = √I₀ · √I₁ ⋯ √Iₙ · I_{n+1}` for every `0 <= n <= q`.
pub fn partial_products_check(result: &DecompositionResult, target: &ValueIdeal) -> bool {
    let mut prefix = ValueIdeal::unit(target.ambient());
    for n in 0..result.factors.len() {
        prefix = prefix.sumset(&result.factors[n].values);
        let Some(next) = result.tower.get(n + 1) else {
            return false;
        };
        if prefix.sumset(&next.ideal) != *target {
            return false;
        }
    }
    true
}

/// Integrally closed ideals that are not ideals of `k[[t]]`: those with
/// minimum below the conductor (including the unit ideal when `S ≠ ℕ`).
pub fn enumerate_non_normal_ideals(s: &NumericalSemigroup) -> Result<Vec<IntegrallyClosedIdeal>> {
    if let ArfVerdict::NotArf(witness) = is_arf_pattern(s) {
        return Err(Error::NotArf {
            semigroup: s.to_string(),
            witness,
        });
    }
    let c = s.conductor();
    s.small_elements()
        .iter()
        .filter(|&&a| a < c)
        .map(|&a| {
            let ideal = IntegrallyClosedIdeal::principal_closure(s, a)?;
            let values = ideal.to_ideal();
            if !(a..c).any(|n| !values.contains(n)) {
                return Err(Error::Internal(format!(
                    "ideal with minimum {a} over {s} is already an ideal of ℕ"
                )));
            }
            Ok(ideal)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Principality {
    pub ideal_principal: bool,
    pub radical_principal: bool,
    pub ring_is_dvr: bool,
}

/// For a proper integrally closed ideal: `I` principal ⇔ `√I` principal ⇔
/// `S = ℕ`.
pub fn principality_triple(s: &NumericalSemigroup, a: i64) -> Result<Principality> {
    let ideal = principal_closure(s, a)?;
    if a == 0 {
        return Err(Error::UnitIdeal);
    }
    let radical = ValueIdeal::maximal(s);
    let unit = ValueIdeal::unit(s);
    let triple = Principality {
        ideal_principal: ideal == unit.shift(a),
        radical_principal: radical == unit.shift(s.multiplicity()),
        ring_is_dvr: s.is_naturals(),
    };
    if triple.ideal_principal != triple.radical_principal
        || triple.radical_principal != triple.ring_is_dvr
    {
        return Err(Error::Internal(format!(
            "principality statements disagree for a={a} over {s}: {triple:?}"
        )));
    }
    Ok(triple)
}
