//! The quiver I with its automorphism i -> i^+, the weight lattice spanned by
//! fundamental weights, simple roots, pairings, and the sign functions
//! sigma_i(lambda) with cocycle sigma_i(lambda) sigma_i(lambda + alpha_j) =
//! (-1)^{delta_{i, j^+}}.
//!
//! Vertices are stored symbolically as (orbit, offset) so that distinct
//! Z-orbits over Q never collide; the ambient orbit is infinite in A-infinity
//! mode and wraps modulo the period on cyclic components.

use std::collections::BTreeMap;
use std::sync::Mutex;

use crate::error::{AlgebraError, Result};
use crate::scalars::{FieldElem, QuantumParam};

/// A vertex of the quiver: position `offset` along the orbit `orbit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub orbit: usize,
    pub offset: i64,
}

/// Registry of orbit base points; translates between field values and
/// symbolic vertices. Built once, immutable afterwards.
#[derive(Debug, Clone)]
pub struct OrbitRegistry {
    param: QuantumParam,
    bases: Vec<FieldElem>,
    /// None for A-infinity components, Some(p) for cyclic period p.
    period: Option<u64>,
}

const ORBIT_SEARCH_BOUND: i64 = 256;

impl OrbitRegistry {
    pub fn new(param: QuantumParam) -> OrbitRegistry {
        let period = if param.is_degenerate() {
            // i -> i + 1 has order p over F_p, infinite order over Q
            match param.z().field() {
                crate::scalars::BaseField::Prime(p) => Some(p),
                crate::scalars::BaseField::Rational => None,
            }
        } else {
            let qc = param.quantum_characteristic();
            (qc != 0).then_some(qc)
        };
        OrbitRegistry {
            param,
            bases: vec![],
            period,
        }
    }

    pub fn param(&self) -> &QuantumParam {
        &self.param
    }

    /// Cyclic period of each component, None in A-infinity mode.
    pub fn period(&self) -> Option<u64> {
        self.period
    }

    pub fn bases(&self) -> &[FieldElem] {
        &self.bases
    }

    /// Register a field value, creating a new orbit when it lies on none of
    /// the known ones. Zero is rejected in the quantum case.
    pub fn register(&mut self, value: &FieldElem) -> Result<Vertex> {
        if !self.param.is_degenerate() && value.is_zero() {
            return Err(AlgebraError::config("0 is not a vertex in the quantum case"));
        }
        if let Some(v) = self.vertex_of(value) {
            return Ok(v);
        }
        self.bases.push(value.clone());
        Ok(Vertex {
            orbit: self.bases.len() - 1,
            offset: 0,
        })
    }

    /// Locate a value on a known orbit.
    pub fn vertex_of(&self, value: &FieldElem) -> Option<Vertex> {
        for (orbit, base) in self.bases.iter().enumerate() {
            if let Some(offset) = self.offset_from(base, value) {
                return Some(Vertex { orbit, offset });
            }
        }
        None
    }

    fn offset_from(&self, base: &FieldElem, value: &FieldElem) -> Option<i64> {
        if self.param.is_degenerate() {
            // value = base + n
            let diff = value - base;
            match diff {
                FieldElem::Q(ref q) => {
                    use num_traits::ToPrimitive;
                    if q.is_integer() {
                        let n = q.numer().to_i64()?;
                        (n.abs() <= ORBIT_SEARCH_BOUND).then_some(n)
                    } else {
                        None
                    }
                }
                FieldElem::Fp { v, .. } => Some(v as i64),
            }
        } else {
            // value = base * q^{2n}
            let q = self.param.q().expect("quantum registry");
            let q2 = q * q;
            let q2_inv = q2.inv().ok()?;
            let mut up = base.clone();
            let mut down = base.clone();
            if &up == value {
                return Some(0);
            }
            let bound = self.period.map(|p| p as i64).unwrap_or(ORBIT_SEARCH_BOUND);
            for n in 1..=bound {
                up = &up * &q2;
                if &up == value {
                    return Some(self.normalize_offset(n));
                }
                down = &down * &q2_inv;
                if &down == value {
                    return Some(self.normalize_offset(-n));
                }
            }
            None
        }
    }

    fn normalize_offset(&self, n: i64) -> i64 {
        match self.period {
            Some(p) => n.rem_euclid(p as i64),
            None => n,
        }
    }

    pub fn value_of(&self, v: Vertex) -> FieldElem {
        let base = &self.bases[v.orbit];
        if self.param.is_degenerate() {
            let field = base.field();
            &FieldElem::from_int(field, v.offset) + base
        } else {
            let q = self.param.q().expect("quantum registry");
            let q2 = q * q;
            let mut val = base.clone();
            let pow = q2.pow(v.offset).expect("q invertible");
            val = &val * &pow;
            val
        }
    }

    pub fn succ(&self, v: Vertex) -> Vertex {
        Vertex {
            orbit: v.orbit,
            offset: self.normalize_offset(v.offset + 1),
        }
    }

    pub fn pred(&self, v: Vertex) -> Vertex {
        Vertex {
            orbit: v.orbit,
            offset: self.normalize_offset(v.offset - 1),
        }
    }

    /// The simple root alpha_i = 2 Lambda_i - Lambda_{i^+} - Lambda_{i^-}.
    pub fn alpha(&self, i: Vertex) -> Weight {
        let mut w = Weight::zero();
        w.add_term(i, 2);
        w.add_term(self.succ(i), -1);
        w.add_term(self.pred(i), -1);
        w
    }
}

/// Finitely supported Lambda-coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Weight {
    support: BTreeMap<Vertex, i64>,
}

impl Weight {
    pub fn zero() -> Weight {
        Weight::default()
    }

    pub fn fundamental(i: Vertex) -> Weight {
        let mut w = Weight::zero();
        w.add_term(i, 1);
        w
    }

    pub fn add_term(&mut self, i: Vertex, c: i64) {
        let v = self.support.get(&i).copied().unwrap_or(0) + c;
        if v == 0 {
            self.support.remove(&i);
        } else {
            self.support.insert(i, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = (&Vertex, &i64)> {
        self.support.iter()
    }

    /// <h_i, lambda>: the Lambda_i coefficient.
    pub fn pairing(&self, i: Vertex) -> i64 {
        self.support.get(&i).copied().unwrap_or(0)
    }

    pub fn add(&self, rhs: &Weight) -> Weight {
        let mut out = self.clone();
        for (v, c) in &rhs.support {
            out.add_term(*v, *c);
        }
        out
    }

    pub fn sub(&self, rhs: &Weight) -> Weight {
        let mut out = self.clone();
        for (v, c) in &rhs.support {
            out.add_term(*v, -*c);
        }
        out
    }

    pub fn neg(&self) -> Weight {
        Weight::zero().sub(self)
    }

    /// Central charge: sum_i <h_i, lambda>, a finite sum.
    pub fn central_charge(&self) -> i64 {
        self.support.values().sum()
    }
}

/// A letter of an EF-word, applied right to left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenLetter {
    E(Vertex),
    F(Vertex),
}

/// wt(G) = sum of wt(letter), with wt(E_i) = alpha_i and wt(F_i) = -alpha_i.
pub fn word_weight(reg: &OrbitRegistry, word: &[GenLetter]) -> Weight {
    let mut w = Weight::zero();
    for letter in word {
        match letter {
            GenLetter::E(i) => w = w.add(&reg.alpha(*i)),
            GenLetter::F(i) => w = w.sub(&reg.alpha(*i)),
        }
    }
    w
}

/// Sign table for sigma_i(lambda); memoized, safe under concurrent reads.
///
/// The canonical X/Y-coset representative of lambda is pinned per orbit by
/// its two Y-invariants (a, b) = (sum of coefficients, offset-weighted sum)
/// as rep = (a - b) Lambda_{(orbit, 0)} + b Lambda_{(orbit, 1)}; sigma is the
/// parity of the alpha_{i^-} coefficient in lambda - rep. On cyclic
/// components the cocycle has no consistent solution and the table reports
/// SignAmbiguity.
#[derive(Debug, Default)]
pub struct SignTable {
    memo: Mutex<BTreeMap<(Vertex, Weight), i8>>,
}

impl SignTable {
    pub fn new() -> SignTable {
        SignTable::default()
    }

    pub fn sigma(&self, reg: &OrbitRegistry, i: Vertex, lambda: &Weight) -> Result<i8> {
        if reg.period().is_some() {
            return Err(AlgebraError::SignAmbiguity);
        }
        if let Some(v) = self.memo.lock().unwrap().get(&(i, lambda.clone())) {
            return Ok(*v);
        }
        // restrict to i's orbit
        let deltas: Vec<(i64, i64)> = {
            // lambda - rep on this orbit: rep has invariants matching lambda
            let coeffs: Vec<(i64, i64)> = lambda
                .support()
                .filter(|(v, _)| v.orbit == i.orbit)
                .map(|(v, c)| (v.offset, *c))
                .collect();
            let a: i64 = coeffs.iter().map(|(_, c)| c).sum();
            let b: i64 = coeffs.iter().map(|(o, c)| o * c).sum();
            let mut d: BTreeMap<i64, i64> = coeffs.into_iter().collect();
            *d.entry(0).or_insert(0) -= a - b;
            *d.entry(1).or_insert(0) -= b;
            d.into_iter().filter(|(_, c)| *c != 0).collect()
        };
        // coefficient of alpha_n in the unique decomposition:
        // c_n = -sum_{l <= n-1} (n - l) delta_l
        let n = i.offset - 1;
        let mut c = 0i64;
        for (l, dl) in &deltas {
            if *l <= n - 1 {
                c -= (n - l) * dl;
            }
        }
        let sign = if c.rem_euclid(2) == 0 { 1 } else { -1 };
        self.memo
            .lock()
            .unwrap()
            .insert((i, lambda.clone()), sign);
        Ok(sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::BaseField;

    fn deg_registry() -> OrbitRegistry {
        OrbitRegistry::new(QuantumParam::degenerate(BaseField::Rational))
    }

    fn q(n: i64) -> FieldElem {
        FieldElem::from_int(BaseField::Rational, n)
    }

    #[test]
    fn orbits_degenerate() {
        let mut reg = deg_registry();
        let v0 = reg.register(&q(0)).unwrap();
        let v3 = reg.register(&q(-3)).unwrap();
        // same Z-orbit
        assert_eq!(v0.orbit, v3.orbit);
        assert_eq!(v3.offset - v0.offset, -3);
        // a different orbit
        let vh = reg.register(&FieldElem::from_ratio(BaseField::Rational, 1, 2).unwrap());
        assert_eq!(vh.unwrap().orbit, 1);
        assert_eq!(reg.value_of(reg.succ(v0)), q(1));
    }

    #[test]
    fn orbits_quantum() {
        let qp = QuantumParam::quantum(q(2)).unwrap();
        let mut reg = OrbitRegistry::new(qp);
        let v1 = reg.register(&q(1)).unwrap();
        let v4 = reg.register(&q(4)).unwrap();
        assert_eq!(v1.orbit, v4.orbit);
        assert_eq!(v4.offset, 1); // 4 = 1 * q^2
        assert!(reg.register(&q(0)).is_err());
        assert_eq!(reg.value_of(reg.succ(v4)), q(16));
        assert_eq!(reg.period(), None);
    }

    #[test]
    fn pairings_and_roots() {
        let mut reg = deg_registry();
        let i = reg.register(&q(0)).unwrap();
        let ip = reg.succ(i);
        // <h_i, Lambda_i> = 1
        assert_eq!(Weight::fundamental(i).pairing(i), 1);
        // <h_i, alpha_i> = 2, <h_i, alpha_{i+}> = -1
        assert_eq!(reg.alpha(i).pairing(i), 2);
        assert_eq!(reg.alpha(ip).pairing(i), -1);
        // central charge of alpha_i is 0, of Lambda_i is 1
        assert_eq!(reg.alpha(i).central_charge(), 0);
        assert_eq!(Weight::fundamental(i).central_charge(), 1);
    }

    #[test]
    fn word_weights() {
        let mut reg = deg_registry();
        let i = reg.register(&q(0)).unwrap();
        let ip = reg.succ(i);
        // wt(E_i F_i) = 0
        let w = word_weight(&reg, &[GenLetter::E(i), GenLetter::F(i)]);
        assert!(w.is_zero());
        // <h_{i+}, wt(E_{i+} E_i)> = 2 - 1 = 1
        let w2 = word_weight(&reg, &[GenLetter::E(ip), GenLetter::E(i)]);
        assert_eq!(w2.pairing(ip), 1);
        // invariance under permuting letters
        let w3 = word_weight(&reg, &[GenLetter::E(i), GenLetter::E(ip)]);
        assert_eq!(w2, w3);
    }

    #[test]
    fn sigma_examples() {
        let mut reg = deg_registry();
        let i = reg.register(&q(0)).unwrap();
        let table = SignTable::new();
        // sigma on a coset representative is 1: the zero weight is its own rep
        assert_eq!(table.sigma(&reg, i, &Weight::zero()).unwrap(), 1);
        // one alpha_{i^-} step flips the sign
        let lam = reg.alpha(reg.pred(i));
        assert_eq!(table.sigma(&reg, i, &lam).unwrap(), -1);
        // an alpha_i step does not
        let lam2 = reg.alpha(i);
        assert_eq!(table.sigma(&reg, i, &lam2).unwrap(), 1);
    }

    #[test]
    fn sigma_cocycle_property() {
        // sigma_i(lambda) sigma_i(lambda + alpha_j) = (-1)^{delta_{i, j+}}
        let mut reg = deg_registry();
        let i = reg.register(&q(0)).unwrap();
        let table = SignTable::new();
        let test_weights = [
            Weight::zero(),
            Weight::fundamental(i),
            reg.alpha(i),
            reg.alpha(reg.pred(i)).add(&Weight::fundamental(reg.succ(i))),
        ];
        for lam in &test_weights {
            for j_off in -2..=2 {
                let j = Vertex {
                    orbit: i.orbit,
                    offset: j_off,
                };
                let s1 = table.sigma(&reg, i, lam).unwrap();
                let s2 = table.sigma(&reg, i, &lam.add(&reg.alpha(j))).unwrap();
                let expected = if reg.succ(j) == i { -1 } else { 1 };
                assert_eq!(s1 * s2, expected, "cocycle at offset {j_off}");
            }
        }
    }

    #[test]
    fn sigma_cyclic_is_ambiguous() {
        let mut reg = OrbitRegistry::new(QuantumParam::degenerate(BaseField::Prime(3)));
        let i = reg
            .register(&FieldElem::from_int(BaseField::Prime(3), 0))
            .unwrap();
        assert_eq!(reg.period(), Some(3));
        let table = SignTable::new();
        assert_eq!(
            table.sigma(&reg, i, &Weight::zero()),
            Err(AlgebraError::SignAmbiguity)
        );
    }
}
