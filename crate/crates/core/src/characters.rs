//! Dirichlet characters mod d with exact arithmetic.
//!
//! A character is stored as an exponent vector against a fixed canonical
//! generating set of `(Z/dZ)^*` built by CRT: each odd prime power factor is
//! cyclic on its smallest primitive root, `(Z/4Z)^*` is cyclic on -1, and
//! `(Z/2^kZ)^*` for k >= 3 splits as `<-1> x <5>`. Values are exact rational
//! phases (roots of unity), materialized to complex doubles on demand, so long
//! character sums accumulate no phase drift beyond one rounding per term.

use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, factorize, gcd, primitive_root_odd_prime_power, totient, umod};
use crate::error::{Error, Result};
use crate::{e2pi, C64};

/// Rational phase q, meaning the root of unity exp(2 pi i q).
pub type Phase = Ratio<i64>;

/// One cyclic factor of `(Z/dZ)^*`: a generator, its order, and a discrete
/// logarithm table for the component modulus.
#[derive(Debug)]
struct Component {
    /// Prime-power modulus this component lives in.
    modulus: u64,
    /// Order of the generator.
    order: u64,
    /// `dlog[x]` = exponent vector entry of x for this component, or
    /// `u64::MAX` when `gcd(x, modulus) > 1`.
    dlog: Vec<u64>,
}

/// The unit group `(Z/dZ)^*` presented as a product of cyclic components.
#[derive(Debug)]
pub struct UnitGroup {
    modulus: u64,
    components: Vec<Component>,
}

impl UnitGroup {
    pub fn new(d: u64) -> Result<Arc<Self>> {
        if d == 0 {
            return Err(Error::domain("modulus 0"));
        }
        let mut components = Vec::new();
        for (p, k) in factorize(d) {
            let pk = p.pow(k);
            if p == 2 {
                match k {
                    1 => {} // trivial group
                    2 => components.push(Component::cyclic(pk, pk - 1, 2)),
                    _ => {
                        // <-1> of order 2 and <5> of order 2^(k-2)
                        components.push(Component::two_part_sign(pk));
                        components.push(Component::cyclic(pk, 5, pk / 4));
                    }
                }
            } else {
                let g = primitive_root_odd_prime_power(p, k);
                components.push(Component::cyclic(pk, g, totient(pk)?));
            }
        }
        Ok(Arc::new(UnitGroup {
            modulus: d,
            components,
        }))
    }

    /// Component orders, in canonical order.
    pub fn orders(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.order).collect()
    }

    /// Discrete logarithm of n against all components; `None` when
    /// `gcd(n, d) > 1`.
    fn dlogs(&self, n: u64) -> Option<Vec<u64>> {
        if gcd(n as i64, self.modulus as i64) != 1 {
            return None;
        }
        let mut out = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let t = c.dlog[(n % c.modulus) as usize];
            if t == u64::MAX {
                return None;
            }
            out.push(t);
        }
        Some(out)
    }
}

impl Component {
    fn cyclic(modulus: u64, generator: u64, order: u64) -> Self {
        let mut dlog = vec![u64::MAX; modulus as usize];
        let mut x = 1u64 % modulus;
        for t in 0..order {
            // For 2^k (k>=3) the powers of 5 cover only half the odd
            // residues; -5^t gets the same <5>-exponent, filled below.
            if dlog[x as usize] == u64::MAX {
                dlog[x as usize] = t;
            }
            x = x * generator % modulus;
        }
        if modulus % 8 == 0 && generator == 5 {
            let mut x = 1u64;
            for t in 0..order {
                let y = (modulus - x) % modulus;
                if dlog[y as usize] == u64::MAX {
                    dlog[y as usize] = t;
                }
                x = x * 5 % modulus;
            }
        }
        Component {
            modulus,
            order,
            dlog,
        }
    }

    /// The `<-1>` factor of `(Z/2^kZ)^*`, k >= 3: exponent 0 on `+5^t`,
    /// exponent 1 on `-5^t`.
    fn two_part_sign(modulus: u64) -> Self {
        let mut dlog = vec![u64::MAX; modulus as usize];
        let mut x = 1u64;
        for _ in 0..modulus / 4 {
            dlog[x as usize] = 0;
            dlog[((modulus - x) % modulus) as usize] = 1;
            x = x * 5 % modulus;
        }
        Component {
            modulus,
            order: 2,
            dlog,
        }
    }
}

/// A Dirichlet character mod d, with conductor and parity precomputed.
#[derive(Clone)]
pub struct DirichletCharacter {
    modulus: u64,
    exponents: Vec<u64>,
    conductor: u64,
    parity: i8,
    group: Arc<UnitGroup>,
}

/// Serialization record for a character.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CharacterRecord {
    pub modulus: u64,
    pub exponents: Vec<u64>,
    pub conductor: u64,
    pub parity: i8,
}

impl std::fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "chi(mod {}){:?} cond {} parity {}",
            self.modulus, self.exponents, self.conductor, self.parity
        )
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.exponents == other.exponents
    }
}
impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    fn from_exponents(group: Arc<UnitGroup>, exponents: Vec<u64>) -> Self {
        let mut chi = DirichletCharacter {
            modulus: group.modulus,
            exponents,
            conductor: 0,
            parity: 0,
            group,
        };
        chi.conductor = chi.compute_conductor();
        chi.parity = {
            let v = chi.phase(-1).expect("-1 is a unit");
            if v == Ratio::new(0, 1) {
                1
            } else {
                -1
            }
        };
        chi
    }

    /// The principal character mod d.
    pub fn principal(d: u64) -> Result<Self> {
        let group = UnitGroup::new(d)?;
        let n = group.components.len();
        Ok(Self::from_exponents(group, vec![0; n]))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn conductor(&self) -> u64 {
        self.conductor
    }
    /// chi(-1), either +1 or -1.
    pub fn parity(&self) -> i8 {
        self.parity
    }
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }
    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn record(&self) -> CharacterRecord {
        CharacterRecord {
            modulus: self.modulus,
            exponents: self.exponents.clone(),
            conductor: self.conductor,
            parity: self.parity,
        }
    }

    /// Exact phase of chi(n): `Some(q)` with chi(n) = exp(2 pi i q), or
    /// `None` when chi(n) = 0.
    pub fn phase(&self, n: i64) -> Option<Phase> {
        let r = umod(n, self.modulus);
        let dlogs = self.group.dlogs(r)?;
        let mut acc = Ratio::new(0, 1);
        for ((&e, &t), c) in self
            .exponents
            .iter()
            .zip(dlogs.iter())
            .zip(self.group.components.iter())
        {
            // e t / order, all small integers
            acc += Ratio::new((e * t % c.order) as i64, c.order as i64);
        }
        Some(acc - acc.floor())
    }

    /// chi(n) as a complex double (0 when n shares a factor with d).
    pub fn value(&self, n: i64) -> C64 {
        match self.phase(n) {
            Some(q) => phase_to_complex(q),
            None => C64::new(0.0, 0.0),
        }
    }

    /// chi(r) for rational r = num/den, with chi(r) = 0 when r is not an
    /// integer.
    pub fn value_rational(&self, num: i64, den: i64) -> C64 {
        assert!(den != 0, "rational with zero denominator");
        if num % den != 0 {
            return C64::new(0.0, 0.0);
        }
        self.value(num / den)
    }

    /// The complex-conjugate character.
    pub fn conjugate(&self) -> Self {
        let exps = self
            .exponents
            .iter()
            .zip(self.group.components.iter())
            .map(|(&e, c)| if e == 0 { 0 } else { c.order - e })
            .collect();
        Self::from_exponents(self.group.clone(), exps)
    }

    /// Smallest f | d such that chi is constant on units agreeing mod f.
    fn compute_conductor(&self) -> u64 {
        let d = self.modulus;
        'next: for f in divisors(d) {
            // chi is induced mod f iff chi(n) = 1 for all units n = 1 mod f.
            let mut n = 1 + f;
            while n < 1 + d {
                if gcd(n as i64, d as i64) == 1
                    && self.phase(n as i64) != Some(Ratio::new(0, 1))
                {
                    continue 'next;
                }
                n += f;
            }
            return f;
        }
        d
    }

    /// The primitive character mod conductor(chi) inducing chi.
    pub fn primitive_core(&self) -> Result<(DirichletCharacter, u64)> {
        let e = self.conductor;
        let d = self.modulus;
        for cand in enumerate_characters(e)? {
            let ok = (1..=d).filter(|&n| gcd(n as i64, d as i64) == 1).all(|n| {
                cand.phase(n as i64) == self.phase(n as i64)
            });
            if ok {
                return Ok((cand, e));
            }
        }
        unreachable!("conductor test guarantees an inducing character exists")
    }

    /// Restriction of chi (mod e) to a multiple modulus d: equal to chi on
    /// units of d, zero elsewhere. The conductor is unchanged.
    pub fn restrict(&self, d: u64) -> Result<DirichletCharacter> {
        if d == 0 || d % self.modulus != 0 {
            return Err(Error::domain(format!(
                "restrict: {} does not divide {}",
                self.modulus, d
            )));
        }
        if d == self.modulus {
            return Ok(self.clone());
        }
        let group = UnitGroup::new(d)?;
        // Solve for the exponent on each generator of (Z/dZ)^* from the exact
        // phase of chi at that generator.
        let mut exps = Vec::with_capacity(group.components.len());
        {
            // Generators: reconstruct them per component as the element with
            // dlog vector e_i = delta_i. Scan residues once.
            let ncomp = group.components.len();
            let mut gens = vec![0u64; ncomp];
            'scan: for n in 1..d {
                if gcd(n as i64, d as i64) != 1 {
                    continue;
                }
                if let Some(dl) = group.dlogs(n) {
                    for i in 0..ncomp {
                        if gens[i] == 0
                            && dl[i] == 1
                            && dl.iter().enumerate().all(|(j, &t)| j == i || t == 0)
                        {
                            gens[i] = n;
                            if gens.iter().all(|&g| g != 0) {
                                break 'scan;
                            }
                        }
                    }
                }
            }
            for (i, c) in group.components.iter().enumerate() {
                let g = gens[i];
                debug_assert!(g != 0, "generator not found");
                let q = self
                    .phase(g as i64)
                    .expect("generator is a unit of d, hence of e");
                // chi|_d(g) = exp(2 pi i q) must be an order-dividing root.
                let scaled = q * Ratio::new(c.order as i64, 1);
                debug_assert!(scaled.is_integer(), "restriction phase not a root of unity");
                exps.push(umod(scaled.to_integer(), c.order));
            }
        }
        Ok(DirichletCharacter::from_exponents(group, exps))
    }
}

/// exp(2 pi i q) for an exact rational phase.
pub fn phase_to_complex(q: Phase) -> C64 {
    let q = q - q.floor();
    e2pi(*q.numer() as f64 / *q.denom() as f64)
}

/// All phi(d) Dirichlet characters mod d, in canonical exponent-vector order
/// (mixed-radix counting, first component most significant).
pub fn enumerate_characters(d: u64) -> Result<Vec<DirichletCharacter>> {
    let group = UnitGroup::new(d)?;
    let orders = group.orders();
    let total: u64 = orders.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let mut rem = idx;
        let mut exps = vec![0u64; orders.len()];
        for i in (0..orders.len()).rev() {
            exps[i] = rem % orders[i];
            rem /= orders[i];
        }
        out.push(DirichletCharacter::from_exponents(group.clone(), exps));
    }
    Ok(out)
}

/// Canonical index of a character within `enumerate_characters(d)`.
pub fn character_index(chi: &DirichletCharacter) -> u64 {
    let orders = chi.group.orders();
    let mut idx = 0u64;
    for (e, o) in chi.exponents.iter().zip(orders.iter()) {
        idx = idx * o + e;
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn d1_trivial_group() {
        let chars = enumerate_characters(1).unwrap();
        assert_eq!(chars.len(), 1);
        assert!(chars[0].is_principal());
        assert_eq!(chars[0].conductor(), 1);
        // mod 1 everything is a unit, including 0
        assert!(close(chars[0].value(0), C64::new(1.0, 0.0)));
        assert!(close(chars[0].value(7), C64::new(1.0, 0.0)));
    }

    #[test]
    fn d4_two_characters() {
        let chars = enumerate_characters(4).unwrap();
        assert_eq!(chars.len(), 2);
        let principal: Vec<_> = chars.iter().filter(|c| c.is_principal()).collect();
        assert_eq!(principal.len(), 1);
        let nontriv = chars.iter().find(|c| !c.is_principal()).unwrap();
        assert!(close(nontriv.value(3), C64::new(-1.0, 0.0)));
        assert_eq!(nontriv.conductor(), 4);
    }

    #[test]
    fn d8_conductors() {
        let chars = enumerate_characters(8).unwrap();
        assert_eq!(chars.len(), 4);
        let mut conds: Vec<u64> = chars.iter().map(|c| c.conductor()).collect();
        conds.sort_unstable();
        assert_eq!(conds, vec![1, 4, 8, 8]);
    }

    #[test]
    fn character_axioms_small_moduli() {
        for d in 1..=24u64 {
            let chars = enumerate_characters(d).unwrap();
            assert_eq!(chars.len() as u64, totient(d).unwrap(), "count at d={d}");
            for chi in &chars {
                for n in 0..d as i64 {
                    let v = chi.value(n);
                    if gcd(n, d as i64) > 1 {
                        assert_eq!(v, C64::new(0.0, 0.0));
                    } else {
                        assert!((v.norm() - 1.0).abs() < 1e-12);
                    }
                    // periodicity
                    assert!(close(v, chi.value(n + d as i64)));
                }
                // multiplicativity on units
                for m in 1..d.max(2) as i64 {
                    for n in 1..d.max(2) as i64 {
                        if gcd(m, d as i64) == 1 && gcd(n, d as i64) == 1 {
                            assert!(close(
                                chi.value(m * n),
                                chi.value(m) * chi.value(n)
                            ));
                        }
                    }
                }
                // non-principal characters sum to zero over a period
                if !chi.is_principal() {
                    let s: C64 = (0..d as i64).map(|n| chi.value(n)).sum();
                    assert!(s.norm() < 1e-10, "sum at d={d}");
                }
            }
            // closed under conjugation, principal self-conjugate
            for chi in &chars {
                let cj = chi.conjugate();
                assert!(chars.iter().any(|c| *c == cj));
                if chi.is_principal() {
                    assert_eq!(*chi, cj);
                }
            }
        }
    }

    #[test]
    fn nontrivial_mod3_value() {
        let chars = enumerate_characters(3).unwrap();
        let chi = chars.iter().find(|c| !c.is_principal()).unwrap();
        assert!(close(chi.value(2), C64::new(-1.0, 0.0)));
    }

    #[test]
    fn rational_argument_is_zero_off_integers() {
        for chi in enumerate_characters(6).unwrap() {
            assert_eq!(chi.value_rational(5, 2), C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn primitive_core_examples() {
        // principal mod 12 -> principal mod 1
        let p12 = DirichletCharacter::principal(12).unwrap();
        let (core, e) = p12.primitive_core().unwrap();
        assert_eq!(e, 1);
        assert!(core.is_principal());

        // the character mod 8 agreeing with the nontrivial character mod 4
        let chars8 = enumerate_characters(8).unwrap();
        let chi8 = chars8.iter().find(|c| c.conductor() == 4).unwrap();
        let (core, e) = chi8.primitive_core().unwrap();
        assert_eq!(e, 4);
        assert!(close(core.value(3), C64::new(-1.0, 0.0)));

        // a primitive character mod 5 is its own core
        let chars5 = enumerate_characters(5).unwrap();
        let chi5 = chars5.iter().find(|c| !c.is_principal()).unwrap();
        let (core, e) = chi5.primitive_core().unwrap();
        assert_eq!(e, 5);
        assert_eq!(core, *chi5);
    }

    #[test]
    fn restrict_examples() {
        let p1 = DirichletCharacter::principal(1).unwrap();
        let r = p1.restrict(6).unwrap();
        assert!(r.is_principal());
        assert_eq!(r.modulus(), 6);

        let chi3 = enumerate_characters(3)
            .unwrap()
            .into_iter()
            .find(|c| !c.is_principal())
            .unwrap();
        let r = chi3.restrict(6).unwrap();
        assert!(close(r.value(1), C64::new(1.0, 0.0)));
        assert!(close(r.value(5), C64::new(-1.0, 0.0)));
        assert_eq!(r.conductor(), 3);

        // restrict then primitive_core round-trips
        let (core, e) = r.primitive_core().unwrap();
        assert_eq!(e, 3);
        assert_eq!(core, chi3);

        // e must divide d
        assert!(chi3.restrict(7).is_err());
    }

    #[test]
    fn enumeration_order_is_stable() {
        let a = enumerate_characters(12).unwrap();
        let b = enumerate_characters(12).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x, y);
        }
        for (i, chi) in a.iter().enumerate() {
            assert_eq!(character_index(chi), i as u64);
        }
    }
}
