//! Property battery: each structural fact about integrally closed ideals,
//! Arf semigroups and the blow-up decomposition, phrased as a check over one
//! semigroup. `arfkit verify` and the acceptance tests drive these over
//! families of semigroups and collect per-property pass counts.
//!
//! Sweep bounds: ideal-level properties range over `a ∈ S` with
//! `a <= conductor + multiplicity`; decomposition properties over
//! `a <= conductor + 2·multiplicity`. Beyond the conductor every
//! integrally closed ideal is `[a, ∞)` and each step in `a` only appends
//! another factor of `ℕ`'s maximal ideal.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arf::{
    arf_closure, from_multiplicity_sequence, has_minimal_multiplicity, is_arf_pattern,
    is_arf_stability, lipman_tower, LipmanTower,
};
use crate::decomp::{
    decompose, decompose_fast, enumerate_non_normal_ideals, partial_products_check,
    principality_triple, DecompositionResult,
};
use crate::ideal::{principal_closure, ValueIdeal};
use crate::oracle::{self, BoundedSet};
use crate::semigroup::NumericalSemigroup;

/// Conductor up to which the Arf closure is compared with pattern saturation.
pub const SATURATION_MAX_CONDUCTOR: i64 = 25;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyTally {
    pub name: String,
    pub checked: u64,
    pub passed: u64,
    /// First failure in sweep order.
    pub counterexample: Option<Value>,
}

impl PropertyTally {
    pub fn ok(&self) -> bool {
        self.checked == self.passed
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub semigroups: u64,
    pub properties: Vec<PropertyTally>,
    pub ok: bool,
}

/// Collects tallies in a fixed property order.
#[derive(Debug, Default)]
pub struct Battery {
    semigroups: u64,
    tallies: Vec<PropertyTally>,
}

impl Battery {
    pub fn new() -> Self {
        Self::default()
    }

    fn tally(&mut self, name: &str) -> &mut PropertyTally {
        let pos = match self.tallies.iter().position(|t| t.name == name) {
            Some(pos) => pos,
            None => {
                self.tallies.push(PropertyTally {
                    name: name.to_string(),
                    checked: 0,
                    passed: 0,
                    counterexample: None,
                });
                self.tallies.len() - 1
            }
        };
        &mut self.tallies[pos]
    }

    /// Records one check of `name`; `detail` is only built on failure.
    pub fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> Value) {
        let t = self.tally(name);
        t.checked += 1;
        if ok {
            t.passed += 1;
        } else if t.counterexample.is_none() {
            t.counterexample = Some(detail());
        }
    }

    pub fn get(&self, name: &str) -> Option<&PropertyTally> {
        self.tallies.iter().find(|t| t.name == name)
    }

    pub fn report(&self) -> Report {
        Report {
            semigroups: self.semigroups,
            properties: self.tallies.clone(),
            ok: self.tallies.iter().all(PropertyTally::ok),
        }
    }

    /// Runs every applicable property on `s`.
    pub fn run_all(&mut self, s: &NumericalSemigroup) {
        self.semigroups += 1;
        arf_checkers_agree(s, self);
        small_multiplicity_is_arf(s, self);
        stability_trichotomy(s, self);
        endo_ring_is_dual_trace(s, self);
        endo_rings_reverse_inclusion(s, self);
        colon_of_closed_ideals(s, self);
        stable_ideal_bijection(s, self);
        principality_equivalence(s, self);
        arf_closure_is_closure(s, self);
        oracle_agreement(s, self);
        if is_arf_pattern(s).is_arf() {
            tower_facts(s, self);
            decomposition_properties(s, self);
            non_normal_ideal_count(s, self);
        }
        worked_example(self);
    }
}

fn closed(s: &NumericalSemigroup, a: i64) -> ValueIdeal {
    principal_closure(s, a).expect("a taken from S")
}

fn ideal_sweep(s: &NumericalSemigroup) -> Vec<i64> {
    s.elements_up_to(s.conductor() + s.multiplicity()).collect()
}

fn decomposition_sweep(s: &NumericalSemigroup) -> Vec<i64> {
    s.elements_up_to(s.conductor() + 2 * s.multiplicity()).collect()
}

/// `is_arf_pattern` and `is_arf_stability` agree, and their witnesses refute.
pub fn arf_checkers_agree(s: &NumericalSemigroup, b: &mut Battery) {
    let pattern = is_arf_pattern(s);
    let stability = is_arf_stability(s);
    let witnesses_ok = [&pattern, &stability]
        .iter()
        .all(|v| v.witness().is_none_or(|w| w.refutes(s)));
    b.check("arf_checkers_agree", pattern.is_arf() == stability.is_arf() && witnesses_ok, || {
        json!({"semigroup": s, "pattern": pattern.witness(), "stability": stability.witness()})
    });
}

/// Multiplicity at most 2 forces the Arf property.
pub fn small_multiplicity_is_arf(s: &NumericalSemigroup, b: &mut Battery) {
    if s.multiplicity() <= 2 {
        b.check(
            "small_multiplicity_is_arf",
            is_arf_pattern(s).is_arf() && is_arf_stability(s).is_arf(),
            || json!({"semigroup": s}),
        );
    }
}

/// For integrally closed `E` with minimum `a`: `E` stable ⇔ `R^E = E : E`
/// ⇔ `E : E = E - a`.
pub fn stability_trichotomy(s: &NumericalSemigroup, b: &mut Battery) {
    for a in ideal_sweep(s) {
        let e = closed(s, a);
        let stable = e.is_stable().unwrap();
        let same_ring = e.ring_ri().unwrap() == e.endo_ring().unwrap();
        let colon_is_shift = e.colon(&e).unwrap() == e.shift(-a);
        b.check(
            "stability_trichotomy",
            stable == same_ring && same_ring == colon_is_shift,
            || json!({"semigroup": s, "a": a, "stable": stable, "ring_ri_is_endo": same_ring, "colon_is_shift": colon_is_shift}),
        );
    }
}

/// `E : E = (S : E) ∩ ℕ` for integrally closed `E`.
pub fn endo_ring_is_dual_trace(s: &NumericalSemigroup, b: &mut Battery) {
    for a in ideal_sweep(s) {
        let e = closed(s, a);
        let endo = e.endo_ring().unwrap();
        let trace = e.dual().nonnegative_part();
        b.check("endo_ring_is_dual_trace", trace.as_ref() == Ok(&endo), || {
            json!({"semigroup": s, "a": a, "endo_ring": endo, "dual": e.dual()})
        });
    }
}

/// `E ⊆ F` integrally closed ⇒ `E : E ⊇ F : F` and `E` is an `F : F`-ideal.
pub fn endo_rings_reverse_inclusion(s: &NumericalSemigroup, b: &mut Battery) {
    let sweep = ideal_sweep(s);
    for &f_min in &sweep {
        let f = closed(s, f_min);
        let f_ring = f.endo_ring().unwrap();
        for &e_min in sweep.iter().filter(|&&x| x >= f_min) {
            let e = closed(s, e_min);
            let e_ring = e.endo_ring().unwrap();
            let ok = f_ring.is_subset_of(&e_ring) && e.over(&f_ring).is_ok();
            b.check("endo_rings_reverse_inclusion", ok, || {
                json!({"semigroup": s, "inner": e_min, "outer": f_min})
            });
        }
    }
}

/// `E ⊆ F` integrally closed, `B = F : F`: `E : F` is an integrally closed
/// ideal of `B`; if `F` is stable with minimum `b`, `E : F = E - b` and
/// `F · (E : F) = E`.
pub fn colon_of_closed_ideals(s: &NumericalSemigroup, b: &mut Battery) {
    let sweep = ideal_sweep(s);
    for &f_min in &sweep {
        let f = closed(s, f_min);
        let ring = f.endo_ring().unwrap();
        let f_stable = f.is_stable().unwrap();
        for &e_min in sweep.iter().filter(|&&x| x >= f_min) {
            let e = closed(s, e_min);
            let quotient = e.colon(&f).unwrap();
            let closed_over_ring = quotient
                .over(&ring)
                .is_ok_and(|q| q.is_integral() && q.is_integrally_closed());
            b.check("colon_is_closed_over_endo_ring", closed_over_ring, || {
                json!({"semigroup": s, "inner": e_min, "outer": f_min, "colon": quotient})
            });
            if f_stable {
                let ok = quotient == e.shift(-f_min) && f.sumset(&quotient) == e;
                b.check("stable_colon_factorization", ok, || {
                    json!({"semigroup": s, "inner": e_min, "outer": f_min, "colon": quotient})
                });
            }
        }
    }
}

/// For stable integrally closed `I` with minimum `a` and `A = I : I`,
/// `E ↦ E - a` maps the integrally closed ideals of `S` inside `I` onto the
/// integrally closed ideals of `A`, with inverse `E ↦ E + a`.
pub fn stable_ideal_bijection(s: &NumericalSemigroup, b: &mut Battery) {
    let sweep = ideal_sweep(s);
    let top = *sweep.last().unwrap();
    for &a in &sweep {
        let i = closed(s, a);
        if !i.is_stable().unwrap() {
            continue;
        }
        let ring = i.endo_ring().unwrap();
        let forward_ok = sweep.iter().filter(|&&x| x >= a).all(|&x| {
            closed(s, x)
                .shift(-a)
                .over(&ring)
                .is_ok_and(|moved| moved == closed(&ring, x - a))
        });
        let backward_ok = ring.elements_up_to(top - a).all(|y| {
            s.contains(a + y) && closed(&ring, y).shift(a).over(s).is_ok_and(|back| back == closed(s, a + y))
        });
        b.check("stable_ideal_bijection", forward_ok && backward_ok, || {
            json!({"semigroup": s, "a": a, "forward": forward_ok, "backward": backward_ok})
        });
    }
}

/// For proper integrally closed `E`: `E` principal ⇔ `√E` principal ⇔ `S = ℕ`.
pub fn principality_equivalence(s: &NumericalSemigroup, b: &mut Battery) {
    for a in ideal_sweep(s).into_iter().filter(|&a| a > 0) {
        let result = principality_triple(s, a);
        b.check(
            "principality_equivalence",
            result.as_ref().is_ok_and(|t| t.ring_is_dvr == s.is_naturals()),
            || json!({"semigroup": s, "a": a, "result": format!("{result:?}")}),
        );
    }
}

/// The Arf closure is extensive, idempotent and Arf, and agrees with the
/// brute-force pattern saturation for small conductors.
pub fn arf_closure_is_closure(s: &NumericalSemigroup, b: &mut Battery) {
    let closure = arf_closure(s);
    let ok = s.is_subset_of(&closure)
        && arf_closure(&closure) == closure
        && is_arf_pattern(&closure).is_arf()
        && is_arf_stability(&closure).is_arf();
    b.check("arf_closure_is_closure", ok, || json!({"semigroup": s, "closure": closure}));
    if s.conductor() <= SATURATION_MAX_CONDUCTOR {
        let bound = s.conductor() + 1;
        let window = BoundedSet::from_fn(bound, |n| s.contains(n));
        let saturated = oracle::oracle_pattern_saturate(&window);
        let ours = BoundedSet::from_fn(bound, |n| closure.contains(n));
        b.check("arf_closure_matches_saturation", saturated == ours, || {
            json!({"semigroup": s, "closure": closure, "saturated": saturated.members_in(0, bound)})
        });
    }
}

fn window_of(e: &ValueIdeal, bound: i64) -> BoundedSet {
    BoundedSet::from_fn(bound, |n| e.contains(n))
}

/// Exact products, colons, duals and stability agree with the brute-force
/// oracle on the full window, for the integrally closed ideals of the sweep.
pub fn oracle_agreement(s: &NumericalSemigroup, b: &mut Battery) {
    let sweep = ideal_sweep(s);
    let bound = 4 * (s.conductor() + 2 * s.multiplicity()) + 8;
    let semigroup_window = BoundedSet::semigroup(bound, s.minimal_generators());
    b.check(
        "oracle_semigroup",
        semigroup_window == BoundedSet::from_fn(bound, |n| s.contains(n)),
        || json!({"semigroup": s}),
    );
    let mut ideals: Vec<ValueIdeal> = sweep.iter().map(|&a| closed(s, a)).collect();
    ideals.push(ValueIdeal::maximal(s));
    ideals.push(ValueIdeal::from_values(s, &[-s.multiplicity(), s.conductor()]).unwrap());
    let windows: Vec<BoundedSet> = ideals.iter().map(|e| window_of(e, bound)).collect();
    for (e, we) in ideals.iter().zip(&windows) {
        for (f, wf) in ideals.iter().zip(&windows) {
            let sum = oracle::oracle_sumset(we, wf).map(|w| w == window_of(&e.sumset(f), bound));
            b.check("oracle_product", sum == Ok(true), || {
                json!({"semigroup": s, "left": e, "right": f, "oracle": format!("{sum:?}")})
            });
            let colon = oracle::oracle_colon(we, wf).map(|w| w == window_of(&e.colon_set(f), bound));
            b.check("oracle_colon", colon == Ok(true), || {
                json!({"semigroup": s, "left": e, "right": f, "oracle": format!("{colon:?}")})
            });
        }
        if e.is_integral() {
            let square = oracle::oracle_sumset(we, we).unwrap();
            let shifted = BoundedSet::from_fn(bound, |n| we.contains(n - e.min()));
            b.check("oracle_stability", (square == shifted) == e.is_stable().unwrap(), || {
                json!({"semigroup": s, "ideal": e})
            });
        }
        let unit = window_of(&ValueIdeal::unit(s), bound);
        let dual = oracle::oracle_colon(&unit, we).map(|w| w == window_of(&e.dual(), bound));
        b.check("oracle_dual", dual == Ok(true), || json!({"semigroup": s, "ideal": e}));
    }
}

/// Every ring of the blow-up tower is Arf with minimal multiplicity, the
/// tower reaches `ℕ` within `genus + 1` steps, and it is inverse to reading
/// a semigroup off its multiplicity sequence.
pub fn tower_facts(s: &NumericalSemigroup, b: &mut Battery) {
    let tower = match lipman_tower(s) {
        Ok(t) => t,
        Err(e) => {
            b.check("tower_rings_arf", false, || json!({"semigroup": s, "error": e.to_string()}));
            return;
        }
    };
    for ring in &tower.rings {
        b.check(
            "tower_rings_arf",
            is_arf_pattern(ring).is_arf() && is_arf_stability(ring).is_arf() && has_minimal_multiplicity(ring),
            || json!({"semigroup": s, "ring": ring}),
        );
    }
    b.check(
        "tower_reaches_naturals",
        tower.rings.last().is_some_and(NumericalSemigroup::is_naturals)
            && tower.len() as i64 <= s.genus() + 1,
        || json!({"semigroup": s, "length": tower.len(), "genus": s.genus()}),
    );
    let back = from_multiplicity_sequence(tower.multiplicity_sequence.entries());
    b.check("tower_sequence_round_trip", back.as_ref() == Ok(s), || {
        json!({"semigroup": s, "sequence": tower.multiplicity_sequence})
    });
}

/// The decomposition of every integrally closed ideal in the sweep.
pub fn decomposition_properties(s: &NumericalSemigroup, b: &mut Battery) {
    let tower = lipman_tower(s).expect("caller checked the Arf property");
    for a in decomposition_sweep(s) {
        let target = closed(s, a);
        let literal = match decompose(s, a) {
            Ok(r) => r,
            Err(e) => {
                b.check("factor_product_recovers_ideal", false, || {
                    json!({"semigroup": s, "a": a, "error": e.to_string()})
                });
                continue;
            }
        };
        check_decomposition(s, a, &target, &literal, &tower, b);
        let fast = decompose_fast(s, a);
        b.check("literal_matches_tower_formula", fast.as_ref() == Ok(&literal), || {
            json!({"semigroup": s, "a": a, "literal": literal, "fast": format!("{fast:?}")})
        });
    }
}

fn check_decomposition(
    s: &NumericalSemigroup,
    a: i64,
    target: &ValueIdeal,
    r: &DecompositionResult,
    tower: &LipmanTower,
    b: &mut Battery,
) {
    let ctx = || json!({"semigroup": s, "a": a, "result": r});
    // Independent re-multiplication, not the stored flag alone.
    let product = r
        .factors
        .iter()
        .fold(ValueIdeal::unit(s), |acc, f| acc.sumset(&f.values));
    b.check("factor_product_recovers_ideal", r.verified && product == *target, ctx);
    b.check("partial_products", partial_products_check(r, target), ctx);

    let steps = &r.tower;
    let q = r.q;
    let proper: Vec<bool> = steps.iter().map(|t| t.ideal.min() > 0).collect();
    let initial_segment = proper.iter().take_while(|&&p| p).count() as i64 == q + 1
        && proper.iter().filter(|&&p| p).count() as i64 == q + 1;
    b.check("proper_levels_initial_segment", initial_segment, ctx);

    let endo = target.endo_ring().unwrap();
    let constant_endo = steps
        .iter()
        .all(|t| t.ideal.colon_set(&t.ideal).nonnegative_part().as_ref() == Ok(&endo));
    let bounded = steps.iter().all(|t| t.ring.is_subset_of(&r.endpoint_b));
    b.check(
        "endo_ring_constant_and_bounds_tower",
        constant_endo && bounded && r.endpoint_b == endo,
        ctx,
    );

    // First level where the ring stops growing; past the last computed
    // level the ring is constant.
    let first_fixed = (0..steps.len())
        .find(|&n| steps.get(n + 1).is_none_or(|next| next.ring == steps[n].ring))
        .unwrap();
    let at = &steps[first_fixed];
    let principal = at.ideal == ValueIdeal::unit(&at.ring).shift(at.ideal.min());
    let settled = steps[first_fixed..].iter().all(|t| t.ring == r.endpoint_b);
    b.check("stabilization_at_endpoint", principal && settled, ctx);

    let matches_tower = steps
        .iter()
        .take((q + 1) as usize)
        .enumerate()
        .all(|(i, t)| t.ring == *tower.ring(i));
    b.check("levels_follow_blow_up_tower", matches_tower, ctx);

    let limit = tower.len() as i64 + 1 + (a - s.conductor()).max(0);
    b.check("termination_bound", steps.len() as i64 <= limit, ctx);

    let shifts_ok = steps.iter().all(|t| {
        target.shift(-t.shift).over(&t.ring).is_ok_and(|e| e == t.ideal)
            && t.ideal.is_integrally_closed()
    });
    let nested = steps.windows(2).all(|w| {
        w[0].ideal.is_subset_of(&w[1].ideal) && w[0].ideal.over(&w[1].ring).is_ok()
    });
    b.check("levels_are_shifted_closed_ideals", shifts_ok && nested, ctx);

    if s.is_naturals() {
        let maximal = ValueIdeal::maximal(s);
        b.check(
            "dvr_powers_of_maximal_ideal",
            r.factors.len() as i64 == a && r.factors.iter().all(|f| f.values == maximal),
            ctx,
        );
    }
}

/// Integrally closed ideals that are not ideals of `ℕ` are exactly the
/// elements of `S` below the conductor; above it every closure is `[a, ∞)`.
pub fn non_normal_ideal_count(s: &NumericalSemigroup, b: &mut Battery) {
    let found = enumerate_non_normal_ideals(s);
    let expected = s.small_elements().iter().filter(|&&x| x < s.conductor()).count();
    let tail_ok = (s.conductor()..=s.conductor() + 2 * s.multiplicity())
        .all(|a| closed(s, a) == ValueIdeal::from_values(&NumericalSemigroup::naturals(), &[a]).unwrap().over(s).unwrap());
    b.check(
        "non_normal_ideal_count",
        found.as_ref().is_ok_and(|v| v.len() == expected) && tail_ok,
        || json!({"semigroup": s, "found": format!("{found:?}"), "expected": expected}),
    );
}

/// The blow-up tower of `⟨3,11,13⟩` and the decomposition of `(t⁶, t¹¹, t¹³)`.
pub fn worked_example(b: &mut Battery) {
    let sg = |g: &[i64]| NumericalSemigroup::from_generators(g).unwrap();
    let s = sg(&[3, 11, 13]);
    let expected_tower = vec![sg(&[3, 11, 13]), sg(&[3, 8, 10]), sg(&[3, 5, 7]), sg(&[2, 3]), sg(&[1])];
    let tower_ok = lipman_tower(&s).is_ok_and(|t| t.rings == expected_tower);
    let i = closed(&s, 6);
    let m0 = ValueIdeal::maximal(&s);
    let m1 = ValueIdeal::maximal(&sg(&[3, 8, 10]));
    let decomposition_ok = decompose(&s, 6).is_ok_and(|r| {
        r.q == 1
            && r.verified
            && r.tower[0].radical.as_ref() == Some(&m0)
            && r.tower[1].ideal == m1
            && r.factors.iter().map(|f| &f.values).eq([&m0, &m1])
            && r.endpoint_b == sg(&[3, 5, 7])
            && r.factor_product() == i
    });
    let values_ok = i.small_elements() == [6, 9] && i.threshold() == 11;
    b.check("worked_example", tower_ok && decomposition_ok && values_ok, || {
        json!({"tower": tower_ok, "decomposition": decomposition_ok, "values": values_ok})
    });
}

/// `count` numerical semigroups with conductor at most `max_conductor`,
/// drawn deterministically from `seed`.
pub fn random_semigroups(seed: u64, count: usize, max_conductor: i64) -> Vec<NumericalSemigroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = rng.gen_range(2..=max_conductor.clamp(2, 12));
        let extra = rng.gen_range(1..=4);
        let mut gens = vec![m];
        gens.extend((0..extra).map(|_| rng.gen_range(m + 1..=m + max_conductor)));
        if let Ok(s) = NumericalSemigroup::from_generators(&gens) {
            if s.conductor() <= max_conductor {
                out.push(s);
            }
        }
    }
    out
}
