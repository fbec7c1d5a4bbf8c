//! Monomial (value) ideals of `k[[S]]`.
//!
//! A nonzero fractional monomial ideal is determined by its value set
//! `E ⊆ ℤ`, which is bounded below, cofinite and satisfies `E + S ⊆ E`.
//! Products become sumsets and colons become `{z : z + F ⊆ E}`; both are
//! computed exactly from the finite part below the threshold.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

/// Value set of a nonzero fractional monomial ideal over `ambient`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IdealRepr", into = "IdealRepr")]
pub struct ValueIdeal {
    ambient: NumericalSemigroup,
    /// `min(E)`.
    start: i64,
    /// Least `T` with `[T, ∞) ⊆ E`.
    threshold: i64,
    /// Membership of `[start, threshold)`.
    member: Vec<bool>,
}

impl ValueIdeal {
    /// Canonical form of the set `{n >= lo : member(n)} ∪ [tail, ∞)`.
    ///
    /// Fails unless the set is an `ambient`-module.
    pub fn from_predicate(
        ambient: &NumericalSemigroup,
        lo: i64,
        tail: i64,
        member: impl Fn(i64) -> bool,
    ) -> Result<Self> {
        let ideal = Self::canonical(ambient.clone(), lo, tail, member);
        ideal.check_module(ambient)?;
        Ok(ideal)
    }

    fn canonical(
        ambient: NumericalSemigroup,
        lo: i64,
        tail: i64,
        member: impl Fn(i64) -> bool,
    ) -> Self {
        let tail = tail.max(lo);
        let table: Vec<bool> = (lo..tail).map(&member).collect();
        let start = table.iter().position(|&b| b).map_or(tail, |i| lo + i as i64);
        let threshold = table.iter().rposition(|&b| !b).map_or(lo, |i| lo + i as i64 + 1);
        let threshold = threshold.max(start);
        let member = table[(start - lo) as usize..(threshold - lo) as usize].to_vec();
        ValueIdeal {
            ambient,
            start,
            threshold,
            member,
        }
    }

    fn check_module(&self, over: &NumericalSemigroup) -> Result<()> {
        for x in self.small_elements() {
            for &g in over.minimal_generators() {
                if !self.contains(x + g) {
                    return Err(Error::NotAModule {
                        semigroup: over.to_string(),
                        detail: format!("{x} + {g} is missing"),
                    });
                }
            }
        }
        Ok(())
    }

    /// `gens + S`.
    pub fn from_values(ambient: &NumericalSemigroup, gens: &[i64]) -> Result<Self> {
        let lo = *gens.iter().min().ok_or(Error::EmptyGenerators)?;
        let tail = lo + ambient.conductor();
        Ok(Self::canonical(ambient.clone(), lo, tail, |n| {
            gens.iter().any(|&g| ambient.contains(n - g))
        }))
    }

    /// The ring itself, as an ideal.
    pub fn unit(ambient: &NumericalSemigroup) -> Self {
        Self::canonical(ambient.clone(), 0, ambient.conductor(), |n| ambient.contains(n))
    }

    /// The maximal ideal `S \ {0}`.
    pub fn maximal(ambient: &NumericalSemigroup) -> Self {
        Self::canonical(ambient.clone(), 1, ambient.conductor().max(1), |n| {
            ambient.contains(n)
        })
    }

    pub fn ambient(&self) -> &NumericalSemigroup {
        &self.ambient
    }

    pub fn min(&self) -> i64 {
        self.start
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < self.start {
            false
        } else if n >= self.threshold {
            true
        } else {
            self.member[(n - self.start) as usize]
        }
    }

    /// Members below the threshold, ascending.
    pub fn small_elements(&self) -> Vec<i64> {
        (self.start..self.threshold).filter(|&n| self.contains(n)).collect()
    }

    /// `E ⊆ S` (with `min(E) >= 0` implied).
    pub fn is_integral(&self) -> bool {
        self.start >= 0
            && self.small_elements().iter().all(|&n| self.ambient.contains(n))
            && (self.threshold..self.ambient.conductor()).all(|n| self.ambient.contains(n))
    }

    fn require_integral(&self) -> Result<()> {
        if self.is_integral() {
            Ok(())
        } else {
            Err(Error::FractionalInput { min: self.start })
        }
    }

    pub fn is_subset_of(&self, other: &ValueIdeal) -> bool {
        self.start >= other.start
            && self.small_elements().iter().all(|&n| other.contains(n))
            && (self.threshold..other.threshold).all(|n| other.contains(n))
    }

    /// Same set, viewed as a module over `ambient`.
    pub fn over(&self, ambient: &NumericalSemigroup) -> Result<Self> {
        self.check_module(ambient)?;
        Ok(ValueIdeal {
            ambient: ambient.clone(),
            ..self.clone()
        })
    }

    /// `E + k`, i.e. the ideal `t^k · I`.
    pub fn shift(&self, k: i64) -> Self {
        ValueIdeal {
            ambient: self.ambient.clone(),
            start: self.start + k,
            threshold: self.threshold + k,
            member: self.member.clone(),
        }
    }

    /// `E ∩ ℕ` as a numerical semigroup, when it is one.
    pub fn nonnegative_part(&self) -> Result<NumericalSemigroup> {
        NumericalSemigroup::from_predicate(self.threshold, |n| self.contains(n))
    }

    fn require_same_ambient(&self, other: &ValueIdeal) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                left: self.ambient.to_string(),
                right: other.ambient.to_string(),
            })
        }
    }

    /// Minkowski sum `E + F`, kept over `self`'s ambient.
    ///
    /// This is the product of monomial submodules of the fraction field,
    /// regardless of which ring each factor was formed in.
    pub fn sumset(&self, other: &ValueIdeal) -> ValueIdeal {
        let lo = self.start + other.start;
        let tail = self.threshold + other.threshold;
        let mine = self.small_elements();
        Self::canonical(self.ambient.clone(), lo, tail, |z| {
            // Elements of E at or above its threshold pair with F's minimum.
            z - other.start >= self.threshold
                || mine.iter().any(|&x| other.contains(z - x))
        })
    }

    /// Ideal product; both factors must live over the same semigroup.
    pub fn product(&self, other: &ValueIdeal) -> Result<ValueIdeal> {
        self.require_same_ambient(other)?;
        Ok(self.sumset(other))
    }

    pub fn power(&self, n: u32) -> ValueIdeal {
        if n == 0 {
            return ValueIdeal::unit(&self.ambient);
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.sumset(self);
        }
        acc
    }

    /// `{z ∈ ℤ : z + F ⊆ E}` without an ambient check; the result is a
    /// module over `self`'s ambient.
    pub fn colon_set(&self, other: &ValueIdeal) -> ValueIdeal {
        // z + [T_F, ∞) ⊆ E forces z >= T_E - T_F because T_E - 1 ∉ E;
        // z >= T_E - min(F) puts all of z + F above T_E.
        let lo = (self.start - other.start).min(self.threshold - other.start);
        let tail = self.threshold - other.start;
        let floor = self.threshold - other.threshold;
        let theirs = other.small_elements();
        Self::canonical(self.ambient.clone(), lo, tail, |z| {
            z >= floor && theirs.iter().all(|&f| self.contains(z + f))
        })
    }

    /// `E : F`; both must live over the same semigroup.
    pub fn colon(&self, other: &ValueIdeal) -> Result<ValueIdeal> {
        self.require_same_ambient(other)?;
        Ok(self.colon_set(other))
    }

    /// The integral closure `{s ∈ S : s >= min(E)}`.
    pub fn integral_closure(&self) -> Result<IntegrallyClosedIdeal> {
        self.require_integral()?;
        Ok(IntegrallyClosedIdeal {
            ambient: self.ambient.clone(),
            min_value: self.start,
        })
    }

    pub fn is_integrally_closed(&self) -> bool {
        self.integral_closure()
            .is_ok_and(|closure| closure.to_ideal() == *self)
    }

    /// `√I`: the ring for the unit ideal, the maximal ideal otherwise
    /// (`k[[S]]` is local).
    pub fn radical(&self) -> Result<IntegrallyClosedIdeal> {
        self.require_integral()?;
        let min_value = if self.start == 0 {
            0
        } else {
            self.ambient.multiplicity()
        };
        Ok(IntegrallyClosedIdeal {
            ambient: self.ambient.clone(),
            min_value,
        })
    }

    /// `I² = aI` with `a = t^{min(E)}`, in value form `E + E = min(E) + E`.
    pub fn is_stable(&self) -> Result<bool> {
        self.require_integral()?;
        Ok(self.sumset(self) == self.shift(self.start))
    }

    /// Value semigroup of the blow-up ring `I : I`.
    pub fn endo_ring(&self) -> Result<NumericalSemigroup> {
        self.require_integral()?;
        self.colon_set(self).nonnegative_part()
    }

    /// Value semigroup of `R^I = ⋃ Iⁿ : Iⁿ`.
    pub fn ring_ri(&self) -> Result<NumericalSemigroup> {
        // Iⁿ : Iⁿ grows with n and is constant from the first stable power on.
        let mut power = self.clone();
        loop {
            if power.sumset(&power) == power.shift(power.min()) {
                return power.endo_ring();
            }
            power = power.sumset(self);
        }
    }

    /// The fractional ideal `S : E`.
    pub fn dual(&self) -> ValueIdeal {
        ValueIdeal::unit(&self.ambient).colon_set(self)
    }

    /// Minimal module generators over the ambient semigroup.
    pub fn generators(&self) -> Vec<i64> {
        let m = self.ambient.multiplicity();
        (self.start..self.threshold + m)
            .filter(|&x| self.contains(x))
            .filter(|&x| {
                !self
                    .ambient
                    .elements_up_to(x - self.start)
                    .skip(1)
                    .any(|s| self.contains(x - s))
            })
            .collect()
    }
}

impl fmt::Display for ValueIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(|g| format!("t^{g}")).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl fmt::Debug for ValueIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}{:?}+[{},∞) over {}",
            self.start,
            self.small_elements(),
            self.threshold,
            self.ambient
        )
    }
}

/// Wire form: `{"ambient":…, "elements":[…], "threshold":T}`.
#[derive(Serialize, Deserialize)]
struct IdealRepr {
    ambient: NumericalSemigroup,
    elements: Vec<i64>,
    threshold: i64,
}

impl From<ValueIdeal> for IdealRepr {
    fn from(e: ValueIdeal) -> Self {
        IdealRepr {
            elements: e.small_elements(),
            threshold: e.threshold,
            ambient: e.ambient,
        }
    }
}

impl TryFrom<IdealRepr> for ValueIdeal {
    type Error = Error;

    fn try_from(r: IdealRepr) -> Result<Self> {
        let lo = r.elements.first().copied().unwrap_or(r.threshold);
        if r.elements.iter().any(|&n| n >= r.threshold) {
            return Err(Error::InvalidSemigroup("ideal element above threshold".into()));
        }
        let ideal = ValueIdeal::from_predicate(&r.ambient, lo, r.threshold, |n| {
            r.elements.binary_search(&n).is_ok()
        })?;
        if ideal.threshold != r.threshold || ideal.small_elements() != r.elements {
            return Err(Error::InvalidSemigroup("ideal is not in canonical form".into()));
        }
        Ok(ideal)
    }
}

/// An integrally closed monomial ideal `I = \overline{t^a R} = {s ∈ S : s >= a}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegrallyClosedIdeal {
    pub ambient: NumericalSemigroup,
    pub min_value: i64,
}

impl IntegrallyClosedIdeal {
    pub fn principal_closure(ambient: &NumericalSemigroup, a: i64) -> Result<Self> {
        if !ambient.contains(a) {
            return Err(Error::NotInSemigroup {
                value: a,
                semigroup: ambient.to_string(),
            });
        }
        Ok(IntegrallyClosedIdeal {
            ambient: ambient.clone(),
            min_value: a,
        })
    }

    pub fn to_ideal(&self) -> ValueIdeal {
        let a = self.min_value;
        let s = &self.ambient;
        ValueIdeal::canonical(s.clone(), a, a.max(s.conductor()), |n| s.contains(n))
    }

    pub fn is_unit(&self) -> bool {
        self.min_value == 0
    }

    pub fn threshold(&self) -> i64 {
        self.min_value.max(self.ambient.conductor())
    }
}

impl fmt::Display for IntegrallyClosedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_ideal(), f)
    }
}

/// `{s ∈ S : s >= a}` as a value ideal.
pub fn principal_closure(ambient: &NumericalSemigroup, a: i64) -> Result<ValueIdeal> {
    Ok(IntegrallyClosedIdeal::principal_closure(ambient, a)?.to_ideal())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(gens).unwrap()
    }

    fn ideal(s: &NumericalSemigroup, gens: &[i64]) -> ValueIdeal {
        ValueIdeal::from_values(s, gens).unwrap()
    }

    /// Members of `e` in `[lo, hi]`.
    fn window(e: &ValueIdeal, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&n| e.contains(n)).collect()
    }

    fn tail_from(e: &ValueIdeal, lo: i64, hi: i64) -> bool {
        (lo..=hi).all(|n| e.contains(n))
    }

    #[test]
    fn principal_closure_examples() {
        let s = sg(&[3, 11, 13]);
        let i = principal_closure(&s, 6).unwrap();
        assert_eq!(i.small_elements(), vec![6, 9]);
        assert_eq!(i.threshold(), 11);
        assert_eq!(i.to_string(), "(t^6, t^11, t^13)");
        assert_eq!(principal_closure(&s, 0).unwrap(), ValueIdeal::unit(&s));
        assert_eq!(
            principal_closure(&s, 5),
            Err(Error::NotInSemigroup {
                value: 5,
                semigroup: "⟨3,11,13⟩".into()
            })
        );
        let big = IntegrallyClosedIdeal::principal_closure(&s, 20).unwrap();
        assert_eq!(big.threshold(), 20);
        assert_eq!(big.to_ideal().threshold(), 20);
    }

    #[test]
    fn from_values_examples() {
        let s = sg(&[3, 11, 13]);
        assert_eq!(ideal(&s, &[6, 11, 13]), principal_closure(&s, 6).unwrap());
        let n = NumericalSemigroup::naturals();
        let e = ideal(&n, &[4]);
        assert_eq!((e.min(), e.threshold()), (4, 4));
        let c = sg(&[2, 3]);
        let frac = ideal(&c, &[-2]);
        assert_eq!(window(&frac, -5, 5), vec![-2, 0, 1, 2, 3, 4, 5]);
        assert_eq!(frac.threshold(), 0);
        assert!(!frac.is_integral());
    }

    #[test]
    fn product_examples() {
        let s = sg(&[3, 11, 13]);
        let m0 = ValueIdeal::maximal(&s);
        let m1 = ValueIdeal::maximal(&sg(&[3, 8, 10]));
        assert_eq!(window(&m1, 0, 11), vec![3, 6, 8, 9, 10, 11]);
        let prod = m0.sumset(&m1);
        assert_eq!(prod, principal_closure(&s, 6).unwrap());
        assert_eq!(
            m0.product(&m1),
            Err(Error::AmbientMismatch {
                left: "⟨3,11,13⟩".into(),
                right: "⟨3,8,10⟩".into()
            })
        );
        let e = principal_closure(&s, 9).unwrap();
        assert_eq!(e.product(&ValueIdeal::unit(&s)).unwrap(), e);
        let c = sg(&[2, 3]);
        let m = ValueIdeal::maximal(&c);
        let sq = m.product(&m).unwrap();
        assert_eq!((sq.min(), sq.threshold()), (4, 4));
    }

    #[test]
    fn colon_examples() {
        let s = sg(&[3, 11, 13]);
        let i = principal_closure(&s, 6).unwrap();
        let m = ValueIdeal::maximal(&s);
        let i1 = i.colon(&m).unwrap();
        assert_eq!(i1.small_elements(), vec![3, 6]);
        assert_eq!(i1.threshold(), 8);
        assert_eq!(i1, i.shift(-3));

        let n = NumericalSemigroup::naturals();
        let e = ideal(&n, &[7]);
        assert_eq!(e.colon(&e).unwrap(), ValueIdeal::unit(&n));

        let mm = m.colon(&m).unwrap();
        assert_eq!(mm.small_elements(), vec![0, 3, 6]);
        assert_eq!(mm.threshold(), 8);
        assert_eq!(mm.nonnegative_part().unwrap(), sg(&[3, 8, 10]));
    }

    #[test]
    fn integral_closure_examples() {
        let s = sg(&[3, 11, 13]);
        let e = ideal(&s, &[6, 11, 13]);
        let closure = e.integral_closure().unwrap();
        assert_eq!(closure.min_value, 6);
        assert_eq!(closure.to_ideal(), principal_closure(&s, 6).unwrap());
        assert!(e.is_integrally_closed());

        let t = sg(&[4, 6, 7]);
        let m = ideal(&t, &[4, 6, 7]);
        assert_eq!(m, ValueIdeal::maximal(&t));
        assert_eq!(window(&m, 0, 12), vec![4, 6, 7, 8, 10, 11, 12]);
        assert_eq!(m.integral_closure().unwrap().to_ideal(), m);

        // (t^8) over ⟨4,6,7⟩ misses 10 and 11, which its closure has.
        let p = ideal(&t, &[8]);
        assert!(!p.is_integrally_closed());
        assert_eq!(p.integral_closure().unwrap().min_value, 8);

        let frac = ideal(&t, &[-1]);
        assert_eq!(frac.integral_closure(), Err(Error::FractionalInput { min: -1 }));
        // inside ℕ but not inside S
        let odd = ideal(&t, &[5]);
        assert_eq!(odd.integral_closure(), Err(Error::FractionalInput { min: 5 }));
    }

    #[test]
    fn radical_examples() {
        let s = sg(&[3, 11, 13]);
        let r = principal_closure(&s, 6).unwrap().radical().unwrap();
        assert_eq!(r.to_ideal(), ValueIdeal::maximal(&s));
        assert_eq!(r.to_ideal().to_string(), "(t^3, t^11, t^13)");
        let unit = ValueIdeal::unit(&s).radical().unwrap();
        assert!(unit.is_unit());
        let n = NumericalSemigroup::naturals();
        let r = ideal(&n, &[5]).radical().unwrap();
        assert_eq!(r.to_ideal(), ideal(&n, &[1]));
    }

    #[test]
    fn stability_examples() {
        let s = sg(&[3, 11, 13]);
        let m = ValueIdeal::maximal(&s);
        assert!(m.is_stable().unwrap());
        let sq = m.sumset(&m);
        assert_eq!(window(&sq, 0, 16), vec![6, 9, 12, 14, 15, 16]);
        assert!(tail_from(&sq, 14, 40));

        let t = sg(&[4, 6, 7]);
        let m = ValueIdeal::maximal(&t);
        assert!(!m.is_stable().unwrap());
        assert!(m.sumset(&m).contains(13));
        assert!(!m.shift(4).contains(13));

        let n = NumericalSemigroup::naturals();
        assert!(ideal(&n, &[3]).is_stable().unwrap());
    }

    #[test]
    fn endo_ring_examples() {
        let s = sg(&[3, 11, 13]);
        let i = principal_closure(&s, 6).unwrap();
        assert_eq!(i.endo_ring().unwrap(), sg(&[3, 5, 7]));
        assert_eq!(ValueIdeal::maximal(&s).endo_ring().unwrap(), sg(&[3, 8, 10]));
        let n = NumericalSemigroup::naturals();
        assert_eq!(ideal(&n, &[4]).endo_ring().unwrap(), n);
    }

    #[test]
    fn ring_ri_examples() {
        let s = sg(&[3, 11, 13]);
        let i = principal_closure(&s, 6).unwrap();
        assert_eq!(i.ring_ri().unwrap(), i.endo_ring().unwrap());

        let t = sg(&[4, 6, 7]);
        let m = ValueIdeal::maximal(&t);
        let m2 = m.power(2);
        assert_eq!(window(&m2, 0, 13), vec![8, 10, 11, 12, 13]);
        assert!(tail_from(&m2, 10, 40));
        assert_eq!(m.ring_ri().unwrap(), sg(&[2, 3]));
        assert_ne!(m.endo_ring().unwrap(), sg(&[2, 3]));

        let n = NumericalSemigroup::naturals();
        assert_eq!(ideal(&n, &[2]).ring_ri().unwrap(), n);

        // E : E = E² : E², yet E³ = [12, ∞) is stable with E³ : E³ = ℕ.
        let u = sg(&[4, 5, 11]);
        let e = principal_closure(&u, 4).unwrap();
        assert_eq!(e.endo_ring().unwrap(), sg(&[4, 5, 6, 7]));
        assert_eq!(e.power(2).endo_ring().unwrap(), sg(&[4, 5, 6, 7]));
        assert_eq!(e.ring_ri().unwrap(), n);
    }

    #[test]
    fn dual_examples() {
        let s = sg(&[3, 11, 13]);
        assert_eq!(ValueIdeal::unit(&s).dual(), ValueIdeal::unit(&s));
        let m = ValueIdeal::maximal(&s);
        let d = m.dual();
        assert_eq!(d.nonnegative_part().unwrap(), sg(&[3, 8, 10]));
        let n = NumericalSemigroup::naturals();
        assert_eq!(ideal(&n, &[5]).dual(), ideal(&n, &[-5]));
    }

    #[test]
    fn over_checks_module_property() {
        let s = sg(&[3, 11, 13]);
        let i1 = principal_closure(&s, 6).unwrap().shift(-3);
        let a1 = sg(&[3, 8, 10]);
        let moved = i1.over(&a1).unwrap();
        assert_eq!(moved, ValueIdeal::maximal(&a1));
        // I itself is not an ⟨2,3⟩-module: 6 + 2 = 8 ∉ I.
        assert!(principal_closure(&s, 6).unwrap().over(&sg(&[2, 3])).is_err());
    }

    #[test]
    fn json_schema() {
        let s = sg(&[2, 3]);
        let e = ideal(&s, &[-2]);
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(
            json,
            r#"{"ambient":{"generators":[2,3],"small_elements":[0],"conductor":2},"elements":[-2],"threshold":0}"#
        );
        assert_eq!(serde_json::from_str::<ValueIdeal>(&json).unwrap(), e);
        let bad = r#"{"ambient":{"generators":[2,3],"small_elements":[0],"conductor":2},"elements":[-2],"threshold":1}"#;
        assert!(serde_json::from_str::<ValueIdeal>(bad).is_err());
    }
}
