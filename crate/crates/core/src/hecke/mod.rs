//! Degenerate and quantum affine Hecke algebras AH_d over Z = k[t]/(t^N) and
//! their cyclotomic quotients H_d^m(Z), in the normal form x^a T_w with all
//! dots to the left of all crossings.
//!
//! Strands are numbered 1..d from the right; x_r is the dot on strand r and
//! s_r (resp. the positive crossing tau_r) crosses strands r and r+1. The
//! defining slide relations are
//!
//!   degenerate:  s_r x_{r+1} = x_r s_r + 1,          s_r^2 = 1,
//!   quantum:     tau_r X_r tau_r = X_{r+1},          tau_r - tau_r^{-1} = z,
//!
//! plus braid relations and distant commutativity. Straightening moves all
//! dots left of all crossings; termination is by the total crossing count
//! and the dot weight |a_r| + |a_{r+1}| local to each slide. Exponents in
//! the cyclotomic normal form are renormalized into [0, ell) using
//! m(x_1) = 0 and the conjugation x_{r+1} = s_r x_r s_r + s_r (resp.
//! X_{r+1} = tau_r X_r tau_r), peeling excess from position r to r-1.

pub mod perm;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use crate::error::{AlgebraError, Result};
use crate::linalg::{annihilator_poly, Matrix};
use crate::localpoly::{MonicPoly, Poly};
use crate::scalars::{FieldElem, LocalRing, LocalScalar, QuantumParam};
pub use perm::Permutation;

/// Degenerate or quantum case marker carried by elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseKind {
    Degenerate,
    Quantum,
}

/// Element tag: case, number of strands, affine vs cyclotomic normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgebraTag {
    pub case: CaseKind,
    pub d: usize,
    pub cyclotomic: bool,
}

/// Basis label: dot exponents (one per strand) and the permutation part.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub exps: Vec<i32>,
    pub perm: Permutation,
}

impl Mono {
    fn identity(d: usize) -> Mono {
        Mono {
            exps: vec![0; d],
            perm: Permutation::identity(d),
        }
    }
}

/// Sparse element: normal-form monomials with LocalScalar coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeElem {
    pub tag: AlgebraTag,
    terms: BTreeMap<Mono, LocalScalar>,
}

impl HeckeElem {
    pub fn zero(tag: AlgebraTag) -> HeckeElem {
        HeckeElem {
            tag,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &LocalScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, mono: Mono, c: LocalScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = &*e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &HeckeElem) -> HeckeElem {
        assert_eq!(self.tag, rhs.tag, "algebra tag mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &HeckeElem) -> HeckeElem {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> HeckeElem {
        HeckeElem {
            tag: self.tag,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, a: &LocalScalar) -> HeckeElem {
        if a.is_zero() {
            return HeckeElem::zero(self.tag);
        }
        let mut out = HeckeElem::zero(self.tag);
        for (m, c) in &self.terms {
            out.insert(m.clone(), c * a);
        }
        out
    }
}

impl fmt::Display for HeckeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})*x^{:?}*T{}", m.exps, m.perm))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Context for one algebra: AH_d over Z, optionally with the cyclotomic
/// level m(u). Immutable after construction apart from internal caches.
pub struct HeckeAlgebra {
    param: QuantumParam,
    d: usize,
    ring: LocalRing,
    level: Option<MonicPoly>,
    /// basis labels in canonical order (cyclotomic only)
    basis: Vec<Mono>,
    basis_index: BTreeMap<Mono, usize>,
    /// reduction cache for excess dot powers, keyed by (position, exponent)
    power_cache: Mutex<BTreeMap<(usize, i32), HeckeElem>>,
    /// straightening cache: T_v x^b in normal form, keyed by (v, b)
    slide_cache: Mutex<BTreeMap<(Permutation, Vec<i32>), Vec<(LocalScalar, Vec<i32>, Permutation)>>>,
}

impl HeckeAlgebra {
    pub fn affine(param: QuantumParam, d: usize, ring: LocalRing) -> HeckeAlgebra {
        HeckeAlgebra {
            param,
            d,
            ring,
            level: None,
            basis: vec![],
            basis_index: BTreeMap::new(),
            power_cache: Mutex::new(BTreeMap::new()),
            slide_cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn cyclotomic(
        param: QuantumParam,
        d: usize,
        ring: LocalRing,
        level: MonicPoly,
    ) -> Result<HeckeAlgebra> {
        if level.ring() != ring {
            return Err(AlgebraError::config("level polynomial over wrong ring"));
        }
        if level.degree() == 0 {
            return Err(AlgebraError::InvalidLevelData("level m = 1 kills the algebra for d > 0".into()));
        }
        if !param.is_degenerate() && !level.constant_term().is_unit() {
            return Err(AlgebraError::InvalidLevelData(
                "quantum case requires m(0) to be a unit".into(),
            ));
        }
        let mut alg = HeckeAlgebra {
            param,
            d,
            ring,
            level: Some(level),
            basis: vec![],
            basis_index: BTreeMap::new(),
            power_cache: Mutex::new(BTreeMap::new()),
            slide_cache: Mutex::new(BTreeMap::new()),
        };
        alg.basis = alg.enumerate_basis();
        alg.basis_index = alg
            .basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        Ok(alg)
    }

    pub fn tag(&self) -> AlgebraTag {
        AlgebraTag {
            case: if self.param.is_degenerate() {
                CaseKind::Degenerate
            } else {
                CaseKind::Quantum
            },
            d: self.d,
            cyclotomic: self.level.is_some(),
        }
    }

    pub fn param(&self) -> &QuantumParam {
        &self.param
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ring(&self) -> LocalRing {
        self.ring
    }

    pub fn level(&self) -> Option<&MonicPoly> {
        self.level.as_ref()
    }

    pub fn ell(&self) -> usize {
        self.level.as_ref().map(MonicPoly::degree).unwrap_or(0)
    }

    /// k-dimension of the cyclotomic algebra: ell^d * d! * dim_k Z.
    pub fn dim_k(&self) -> usize {
        self.basis.len() * self.ring.dim()
    }

    pub fn zero(&self) -> HeckeElem {
        HeckeElem::zero(self.tag())
    }

    pub fn one(&self) -> HeckeElem {
        self.scalar(self.ring.one())
    }

    pub fn scalar(&self, c: LocalScalar) -> HeckeElem {
        let mut e = self.zero();
        e.insert(Mono::identity(self.d), c);
        e
    }

    /// The dot x_r (degenerate) or X_r (quantum), 1 <= r <= d.
    pub fn dot(&self, r: usize) -> HeckeElem {
        assert!(r >= 1 && r <= self.d, "dot index out of range");
        let mut m = Mono::identity(self.d);
        m.exps[r - 1] = 1;
        let mut e = self.zero();
        e.insert(m, self.ring.one());
        e
    }

    /// The crossing s_r (degenerate) or positive crossing tau_r (quantum).
    pub fn crossing(&self, r: usize) -> HeckeElem {
        assert!(r >= 1 && r < self.d, "crossing index out of range");
        let mut e = self.zero();
        e.insert(
            Mono {
                exps: vec![0; self.d],
                perm: Permutation::simple(self.d, r),
            },
            self.ring.one(),
        );
        e
    }

    /// tau_r^{-1} = tau_r - z in the quantum case; s_r itself when degenerate.
    pub fn crossing_inv(&self, r: usize) -> HeckeElem {
        let c = self.crossing(r);
        if self.param.is_degenerate() {
            c
        } else {
            let z = self.ring.from_field(self.param.z().clone());
            c.sub(&self.one().scale(&z))
        }
    }

    /// Monomial x^a T_w as an element.
    pub fn monomial(&self, exps: Vec<i32>, perm: Permutation) -> HeckeElem {
        assert_eq!(exps.len(), self.d);
        assert_eq!(perm.degree(), self.d);
        let mut e = self.zero();
        e.insert(Mono { exps, perm }, self.ring.one());
        e
    }

    /// Evaluate a polynomial at the dot x_r.
    pub fn poly_at_dot(&self, p: &Poly, r: usize) -> HeckeElem {
        let mut out = self.zero();
        for (j, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut m = Mono::identity(self.d);
            m.exps[r - 1] = j as i32;
            out.insert(m, c.clone());
        }
        if self.level.is_some() {
            self.reduce(&out).expect("dot polynomial reduces")
        } else {
            out
        }
    }

    /// Product, in normal form; cyclotomic elements are reduced.
    pub fn mul(&self, a: &HeckeElem, b: &HeckeElem) -> HeckeElem {
        assert_eq!(a.tag, b.tag, "algebra tag mismatch");
        assert_eq!(a.tag, self.tag(), "element from another algebra");
        let affine = self.affine_mul(a, b);
        if self.level.is_some() {
            self.reduce_affine_terms(affine).expect("product reduces")
        } else {
            affine
        }
    }

    /// Product of several elements left to right.
    pub fn product(&self, xs: &[&HeckeElem]) -> HeckeElem {
        let mut acc = self.one();
        for x in xs {
            acc = self.mul(&acc, x);
        }
        acc
    }

    // ----- affine straightening -----

    fn affine_mul(&self, a: &HeckeElem, b: &HeckeElem) -> HeckeElem {
        let mut out = HeckeElem::zero(a.tag);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let c = ca * cb;
                for (c1, exps, u) in self.perm_past_mono(&ma.perm, &mb.exps) {
                    let mut new_exps = exps;
                    for (e, ae) in new_exps.iter_mut().zip(ma.exps.iter()) {
                        *e += ae;
                    }
                    for (c2, w) in self.perm_mul(&u, &mb.perm) {
                        out.insert(
                            Mono {
                                exps: new_exps.clone(),
                                perm: w,
                            },
                            &(&c * &c1) * &c2,
                        );
                    }
                }
            }
        }
        out
    }

    /// T_v x^b = sum c * x^{b'} T_u: slide the permutation past the dots.
    fn perm_past_mono(
        &self,
        v: &Permutation,
        b: &[i32],
    ) -> Vec<(LocalScalar, Vec<i32>, Permutation)> {
        if v.is_identity() || b.iter().all(|&e| e == 0) {
            return vec![(self.ring.one(), b.to_vec(), v.clone())];
        }
        let key = (v.clone(), b.to_vec());
        if let Some(hit) = self.slide_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let out = self.perm_past_mono_uncached(v, b);
        self.slide_cache.lock().unwrap().insert(key, out.clone());
        out
    }

    fn perm_past_mono_uncached(
        &self,
        v: &Permutation,
        b: &[i32],
    ) -> Vec<(LocalScalar, Vec<i32>, Permutation)> {
        let word = v.reduced_word();
        let j = *word.last().unwrap();
        let v_prefix = v.compose(&Permutation::simple(self.d, j));
        let mut acc: BTreeMap<(Vec<i32>, Permutation), LocalScalar> = BTreeMap::new();
        let mut push = |c: LocalScalar, b: Vec<i32>, u: Permutation| {
            if c.is_zero() {
                return;
            }
            match acc.entry((b, u)) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = &*e.get() + &c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        };
        for (c1, b1, has_crossing) in self.slide_gen(j, b) {
            if has_crossing {
                // T_{v'} x^{b1} tau_j
                for (c2, b2, u) in self.perm_past_mono(&v_prefix, &b1) {
                    for (c3, w) in self.right_mul_gen(&u, j) {
                        push(&(&c1 * &c2) * &c3, b2.clone(), w);
                    }
                }
            } else {
                for (c2, b2, u) in self.perm_past_mono(&v_prefix, &b1) {
                    push(&c1 * &c2, b2, u);
                }
            }
        }
        acc.into_iter().map(|((b, u), c)| (c, b, u)).collect()
    }

    /// tau_j x^b = sum c * x^{b'} * (tau_j or 1), touching only positions
    /// j, j+1. The boolean marks whether the crossing survives.
    fn slide_gen(&self, j: usize, b: &[i32]) -> Vec<(LocalScalar, Vec<i32>, bool)> {
        let p = b[j - 1];
        let q = b[j];
        if p == 0 && q == 0 {
            return vec![(self.ring.one(), b.to_vec(), true)];
        }
        let one = self.ring.one();
        let mut out = vec![];
        let bump = |b: &[i32], pos: usize, delta: i32| {
            let mut nb = b.to_vec();
            nb[pos - 1] += delta;
            nb
        };
        match (self.param.is_degenerate(), p, q) {
            (true, p, _) if p > 0 => {
                // s x_j = x_{j+1} s - 1
                let rec = self.slide_gen(j, &bump(b, j, -1));
                for (c, nb, hc) in rec {
                    out.push((c, bump(&nb, j + 1, 1), hc));
                }
                out.push((-&one, bump(b, j, -1), false));
            }
            (true, _, q) if q > 0 => {
                // s x_{j+1} = x_j s + 1
                let rec = self.slide_gen(j, &bump(b, j + 1, -1));
                for (c, nb, hc) in rec {
                    out.push((c, bump(&nb, j, 1), hc));
                }
                out.push((one.clone(), bump(b, j + 1, -1), false));
            }
            (true, ..) => panic!("negative dot exponent in the degenerate case"),
            (false, p, _) if p > 0 => {
                // tau X_j = X_{j+1} tau - z X_{j+1}
                let z = self.ring.from_field(self.param.z().clone());
                let rec = self.slide_gen(j, &bump(b, j, -1));
                for (c, nb, hc) in rec {
                    out.push((c, bump(&nb, j + 1, 1), hc));
                }
                out.push((-&z, bump(&bump(b, j, -1), j + 1, 1), false));
            }
            (false, _, q) if q > 0 => {
                // tau X_{j+1} = X_j tau + z X_{j+1}
                let z = self.ring.from_field(self.param.z().clone());
                let rec = self.slide_gen(j, &bump(b, j + 1, -1));
                for (c, nb, hc) in rec {
                    out.push((c, bump(&nb, j, 1), hc));
                }
                out.push((z, b.to_vec(), false));
            }
            (false, p, _) if p < 0 => {
                // tau X_j^{-1} = X_{j+1}^{-1} tau + z X_j^{-1}
                let z = self.ring.from_field(self.param.z().clone());
                let rec = self.slide_gen(j, &bump(b, j, 1));
                for (c, nb, hc) in rec {
                    out.push((c, bump(&nb, j + 1, -1), hc));
                }
                out.push((z, b.to_vec(), false));
            }
            (false, _, q) if q < 0 => {
                // tau X_{j+1}^{-1} = X_j^{-1} tau - z X_j^{-1}
                let z = self.ring.from_field(self.param.z().clone());
                let rec = self.slide_gen(j, &bump(b, j + 1, 1));
                for (c, nb, hc) in rec {
                    out.push((c, bump(&nb, j, -1), hc));
                }
                out.push((-&z, bump(&bump(b, j + 1, 1), j, -1), false));
            }
            _ => unreachable!(),
        }
        out
    }

    /// T_u * tau_j as a sum of T's.
    fn right_mul_gen(&self, u: &Permutation, j: usize) -> Vec<(LocalScalar, Permutation)> {
        let us = u.compose(&Permutation::simple(self.d, j));
        if self.param.is_degenerate() || us.length() > u.length() {
            vec![(self.ring.one(), us)]
        } else {
            let z = self.ring.from_field(self.param.z().clone());
            vec![(self.ring.one(), us), (z, u.clone())]
        }
    }

    /// T_u * T_w: fold over a reduced word of w.
    fn perm_mul(&self, u: &Permutation, w: &Permutation) -> Vec<(LocalScalar, Permutation)> {
        if self.param.is_degenerate() {
            return vec![(self.ring.one(), u.compose(w))];
        }
        let mut acc = vec![(self.ring.one(), u.clone())];
        for j in w.reduced_word() {
            let mut next: BTreeMap<Permutation, LocalScalar> = BTreeMap::new();
            for (c, p) in acc {
                for (c2, p2) in self.right_mul_gen(&p, j) {
                    let v = &c * &c2;
                    match next.entry(p2) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(v);
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            let s = &*e.get() + &v;
                            *e.get_mut() = s;
                        }
                    }
                }
            }
            acc = next.into_iter().map(|(p, c)| (c, p)).collect();
        }
        acc
    }

    // ----- cyclotomic reduction -----

    /// Reduce an affine element into the cyclotomic normal form (all
    /// exponents in [0, ell)); a ring homomorphism AH_d -> H_d^m.
    pub fn cyclotomic_reduce(&self, a: &HeckeElem) -> Result<HeckeElem> {
        if self.level.is_none() {
            return Err(AlgebraError::config("not a cyclotomic algebra"));
        }
        if a.tag.case != self.tag().case || a.tag.d != self.d {
            return Err(AlgebraError::config("element from a different algebra"));
        }
        let mut affine = HeckeElem::zero(self.tag());
        for (m, c) in &a.terms {
            affine.insert(m.clone(), c.clone());
        }
        self.reduce_affine_terms(affine)
    }

    /// Alias used internally where the input is already tagged for this
    /// algebra.
    pub fn reduce(&self, a: &HeckeElem) -> Result<HeckeElem> {
        self.reduce_affine_terms(a.clone())
    }

    fn reduce_affine_terms(&self, a: HeckeElem) -> Result<HeckeElem> {
        let level = self
            .level
            .as_ref()
            .ok_or_else(|| AlgebraError::config("not a cyclotomic algebra"))?;
        let ell = level.degree() as i32;
        let mut out = HeckeElem::zero(self.tag());
        let mut work: Vec<(Mono, LocalScalar)> = a.terms.into_iter().collect();
        while let Some((mono, c)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            let Some(r) = mono
                .exps
                .iter()
                .position(|&e| e < 0 || e >= ell)
                .map(|i| i + 1)
            else {
                out.insert(mono, c);
                continue;
            };
            let e = mono.exps[r - 1];
            if r == 1 {
                if e >= ell {
                    // x_1^e = x_1^{e-ell} (x_1^ell - m(x_1))
                    for j in 0..level.degree() {
                        let mj = level.coeff(j);
                        if mj.is_zero() {
                            continue;
                        }
                        let mut m2 = mono.clone();
                        m2.exps[0] = e - ell + j as i32;
                        work.push((m2, -&(&c * &mj)));
                    }
                } else {
                    // X_1^{-1} = -m(0)^{-1} (X_1^{ell-1} + m_{ell-1} X_1^{ell-2} + ... + m_1)
                    let m0_inv = level
                        .constant_term()
                        .inv_unit()
                        .map_err(|_| AlgebraError::InvalidLevelData("m(0) not a unit".into()))?;
                    for j in 1..=level.degree() {
                        let mj = if j == level.degree() {
                            self.ring.one()
                        } else {
                            level.coeff(j)
                        };
                        if mj.is_zero() {
                            continue;
                        }
                        let mut m2 = mono.clone();
                        m2.exps[0] = e + j as i32;
                        work.push((m2, -&(&(&c * &m0_inv) * &mj)));
                    }
                }
            } else {
                // move the excess from position r to position r-1
                let expansion = if e >= ell {
                    self.excess_power_expansion(r, e)?
                } else {
                    self.inverse_dot_expansion(r)?
                };
                let mut rest_mono = mono.clone();
                if e >= ell {
                    rest_mono.exps[r - 1] = 0;
                } else {
                    rest_mono.exps[r - 1] = e + 1;
                }
                let rest = self.monomial(rest_mono.exps.clone(), Permutation::identity(self.d));
                let tw = self.monomial(vec![0; self.d], rest_mono.perm.clone());
                let assembled = self.affine_mul(&self.affine_mul(&rest, &expansion), &tw);
                for (m2, c2) in assembled.terms {
                    work.push((m2, &c2 * &c));
                }
            }
        }
        Ok(out)
    }

    /// x_r^n in terms of strictly smaller data: conjugate down to strand r-1
    /// and reduce there first, so re-straightening cannot regenerate x_r^n.
    fn excess_power_expansion(&self, r: usize, n: i32) -> Result<HeckeElem> {
        if let Some(hit) = self.power_cache.lock().unwrap().get(&(r, n)) {
            return Ok(hit.clone());
        }
        let mut inner_mono = vec![0; self.d];
        inner_mono[r - 2] = n;
        let inner = self.monomial(inner_mono, Permutation::identity(self.d));
        let inner_red = self.reduce_affine_terms(inner)?;
        let s = self.crossing(r - 1);
        let mut e = self.affine_mul(&self.affine_mul(&s, &inner_red), &s);
        if self.param.is_degenerate() {
            // + sum_{b+c=n-1} x_r^b x_{r-1}^c s_{r-1}
            for b in 0..n {
                let cexp = n - 1 - b;
                let mut exps = vec![0; self.d];
                exps[r - 1] = b;
                exps[r - 2] = cexp;
                e = e.add(&self.monomial(exps, Permutation::simple(self.d, r - 1)));
            }
        } else {
            // + z sum_{j=1}^{n-1} X_r^{n-j} X_{r-1}^j tau_{r-1}
            let z = self.ring.from_field(self.param.z().clone());
            for j in 1..n {
                let mut exps = vec![0; self.d];
                exps[r - 1] = n - j;
                exps[r - 2] = j;
                e = e.add(
                    &self
                        .monomial(exps, Permutation::simple(self.d, r - 1))
                        .scale(&z),
                );
            }
        }
        self.power_cache.lock().unwrap().insert((r, n), e.clone());
        Ok(e)
    }

    /// X_r^{-1} = tau_{r-1}^{-1} X_{r-1}^{-1} tau_{r-1}^{-1}, with the inner
    /// inverse already reduced to non-negative exponents.
    fn inverse_dot_expansion(&self, r: usize) -> Result<HeckeElem> {
        if self.param.is_degenerate() {
            return Err(AlgebraError::config(
                "negative dot exponents only exist in the quantum case",
            ));
        }
        if let Some(hit) = self.power_cache.lock().unwrap().get(&(r, -1)) {
            return Ok(hit.clone());
        }
        let mut inner_mono = vec![0; self.d];
        inner_mono[r - 2] = -1;
        let inner = self.monomial(inner_mono, Permutation::identity(self.d));
        let inner_red = self.reduce_affine_terms(inner)?;
        let ti = self.crossing_inv(r - 1);
        let e = self.affine_mul(&self.affine_mul(&ti, &inner_red), &ti);
        self.power_cache.lock().unwrap().insert((r, -1), e.clone());
        Ok(e)
    }

    // ----- basis, coordinates, representations -----

    fn enumerate_basis(&self) -> Vec<Mono> {
        let ell = self.ell() as i32;
        let mut out = vec![];
        let mut exps = vec![0i32; self.d];
        let perms = all_permutations(self.d);
        loop {
            for p in &perms {
                out.push(Mono {
                    exps: exps.clone(),
                    perm: p.clone(),
                });
            }
            // increment exps in base ell
            let mut i = 0;
            loop {
                if i == self.d {
                    out.sort();
                    return out;
                }
                exps[i] += 1;
                if exps[i] < ell {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    pub fn basis(&self) -> &[Mono] {
        assert!(self.level.is_some(), "basis requires a cyclotomic level");
        &self.basis
    }

    /// k-coordinates over the basis {b * t^j}: index = basis_idx * N + j.
    pub fn coords(&self, a: &HeckeElem) -> Vec<FieldElem> {
        let n = self.ring.dim();
        let mut v = vec![FieldElem::zero(self.ring.field); self.basis.len() * n];
        for (m, c) in &a.terms {
            let idx = *self
                .basis_index
                .get(m)
                .expect("element not in cyclotomic normal form");
            for j in 0..n {
                v[idx * n + j] = c.coeff(j);
            }
        }
        v
    }

    pub fn sparse_coords(&self, a: &HeckeElem) -> Vec<(usize, FieldElem)> {
        let n = self.ring.dim();
        let mut v = vec![];
        for (m, c) in &a.terms {
            let idx = *self
                .basis_index
                .get(m)
                .expect("element not in cyclotomic normal form");
            for j in 0..n {
                let a = c.coeff(j);
                if !a.is_zero() {
                    v.push((idx * n + j, a));
                }
            }
        }
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn elem_from_coords(&self, v: &[FieldElem]) -> HeckeElem {
        let n = self.ring.dim();
        let mut out = self.zero();
        for (idx, m) in self.basis.iter().enumerate() {
            let coeffs: Vec<FieldElem> = (0..n).map(|j| v[idx * n + j].clone()).collect();
            if coeffs.iter().all(FieldElem::is_zero) {
                continue;
            }
            out.insert(m.clone(), self.ring.from_coeffs(coeffs).expect("valid coeffs"));
        }
        out
    }

    /// Matrix of left multiplication by `a` on the k-basis; a faithful
    /// algebra homomorphism.
    pub fn regular_rep(&self, a: &HeckeElem) -> Matrix {
        let n = self.ring.dim();
        let dim = self.dim_k();
        let mut m = Matrix::zero(self.ring.field, dim, dim);
        for (bi, b) in self.basis.iter().enumerate() {
            let be = self.monomial(b.exps.clone(), b.perm.clone());
            let prod = self.mul(a, &be);
            for (pm, pc) in &prod.terms {
                let pi = *self.basis_index.get(pm).expect("reduced product");
                for j in 0..n {
                    // column b*t^j picks up pc * t^j
                    let shifted = pc.mul_t_pow(j);
                    for jj in 0..n {
                        let val = shifted.coeff(jj);
                        if !val.is_zero() {
                            *m.at_mut(pi * n + jj, bi * n + j) = val;
                        }
                    }
                }
            }
        }
        m
    }

    /// Least-degree monic annihilator of the element over k, computed from
    /// the Krylov orbit of the identity under left multiplication.
    pub fn min_poly(&self, a: &HeckeElem) -> MonicPoly {
        let v0 = self.coords(&self.one());
        let coeffs = annihilator_poly(self.ring.field, v0, |v| {
            let e = self.elem_from_coords(v);
            self.coords(&self.mul(a, &e))
        });
        let rring = self.ring.residue_ring();
        MonicPoly::new(Poly::new(
            rring,
            coeffs.into_iter().map(|c| rring.from_field(c)).collect(),
        ))
        .expect("annihilator is monic")
    }
}

fn all_permutations(d: usize) -> Vec<Permutation> {
    let mut out = vec![];
    let mut cur: Vec<u8> = (0..d as u8).collect();
    loop {
        out.push(Permutation::from_images(cur.clone()));
        // next lexicographic permutation
        if d < 2 {
            break;
        }
        let Some(i) = (0..d - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..d).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::BaseField;

    fn qring(n: usize) -> LocalRing {
        LocalRing::new(BaseField::Rational, n).unwrap()
    }

    fn degenerate_affine(d: usize) -> HeckeAlgebra {
        HeckeAlgebra::affine(QuantumParam::degenerate(BaseField::Rational), d, qring(1))
    }

    fn quantum_affine(d: usize) -> HeckeAlgebra {
        let q = FieldElem::from_int(BaseField::Rational, 2);
        HeckeAlgebra::affine(QuantumParam::quantum(q).unwrap(), d, qring(1))
    }

    #[test]
    fn degenerate_defining_relations() {
        let alg = degenerate_affine(3);
        let s1 = alg.crossing(1);
        let s2 = alg.crossing(2);
        let x1 = alg.dot(1);
        let x2 = alg.dot(2);
        let x3 = alg.dot(3);
        // involutions and braid
        assert_eq!(alg.mul(&s1, &s1), alg.one());
        assert_eq!(
            alg.product(&[&s1, &s2, &s1]),
            alg.product(&[&s2, &s1, &s2])
        );
        // dot slide: s1 x2 = x1 s1 + 1
        let lhs = alg.mul(&s1, &x2);
        let rhs = alg.mul(&x1, &s1).add(&alg.one());
        assert_eq!(lhs, rhs);
        // [x1 + x2, s1] = 0
        let sum = x1.add(&x2);
        assert_eq!(alg.mul(&sum, &s1), alg.mul(&s1, &sum));
        // distant commutation
        assert_eq!(alg.mul(&s1, &x3), alg.mul(&x3, &s1));
        // Jucys-Murphy commutativity
        assert_eq!(alg.mul(&x1, &x2), alg.mul(&x2, &x1));
    }

    #[test]
    fn quantum_defining_relations() {
        let alg = quantum_affine(3);
        let t1 = alg.crossing(1);
        let t2 = alg.crossing(2);
        let x1 = alg.dot(1);
        let x2 = alg.dot(2);
        let z = alg.ring().from_field(alg.param().z().clone());
        // tau - tau^{-1} = z  <=>  tau^2 = z tau + 1
        let lhs = alg.mul(&t1, &t1);
        let rhs = t1.scale(&z).add(&alg.one());
        assert_eq!(lhs, rhs);
        // braid
        assert_eq!(
            alg.product(&[&t1, &t2, &t1]),
            alg.product(&[&t2, &t1, &t2])
        );
        // tau X_1 tau = X_2
        assert_eq!(alg.product(&[&t1, &x1, &t1]), x2);
        // X X^{-1} = 1 (affine level, negative exponent monomial)
        let x1_inv = alg.monomial(vec![-1, 0, 0], Permutation::identity(3));
        assert_eq!(alg.mul(&x1, &x1_inv), alg.one());
        assert_eq!(alg.mul(&x1_inv, &x1), alg.one());
        // slide through the inverse dot: tau X_2^{-1} tau^{-1} ... consistency
        let x2_inv = alg.monomial(vec![0, -1, 0], Permutation::identity(3));
        assert_eq!(alg.mul(&x2, &x2_inv), alg.one());
    }

    #[test]
    fn cyclotomic_reduction_examples() {
        // H_2^{u}(Q): x_1 = 0, x_2 = s_1, x_2^2 = 1
        let ring = qring(1);
        let m = MonicPoly::monomial(ring, 1);
        let alg = HeckeAlgebra::cyclotomic(
            QuantumParam::degenerate(BaseField::Rational),
            2,
            ring,
            m,
        )
        .unwrap();
        assert_eq!(alg.cyclotomic_reduce(&alg.dot(1)).unwrap(), alg.zero());
        let x2sq = alg.monomial(vec![0, 2], Permutation::identity(2));
        assert_eq!(alg.cyclotomic_reduce(&x2sq).unwrap(), alg.one());
        assert_eq!(alg.cyclotomic_reduce(&alg.one()).unwrap(), alg.one());
        // basis count: ell^d d! = 1*2
        assert_eq!(alg.basis().len(), 2);
        assert_eq!(alg.dim_k(), 2);
    }

    #[test]
    fn basis_counts() {
        let ring = qring(1);
        // d = 2, ell = 2 -> 8 labels
        let m = MonicPoly::from_coeffs(
            ring,
            vec![ring.zero(), -&ring.one(), ring.one()],
        )
        .unwrap(); // u^2 - u
        let alg = HeckeAlgebra::cyclotomic(
            QuantumParam::degenerate(BaseField::Rational),
            2,
            ring,
            m,
        )
        .unwrap();
        assert_eq!(alg.basis().len(), 8);
        // d = 1, ell = 3 -> 3 labels
        let m3 = MonicPoly::monomial(ring, 3);
        let alg3 = HeckeAlgebra::cyclotomic(
            QuantumParam::degenerate(BaseField::Rational),
            1,
            ring,
            m3,
        )
        .unwrap();
        assert_eq!(alg3.basis().len(), 3);
    }

    #[test]
    fn regular_rep_and_min_poly() {
        let ring = qring(1);
        let m = MonicPoly::monomial(ring, 2); // u^2
        let alg = HeckeAlgebra::cyclotomic(
            QuantumParam::degenerate(BaseField::Rational),
            1,
            ring,
            m.clone(),
        )
        .unwrap();
        // regular_rep(1) = identity
        let id = alg.regular_rep(&alg.one());
        assert_eq!(id, Matrix::identity(BaseField::Rational, 2));
        // x_1 is 2x2 nilpotent with square zero
        let rx = alg.regular_rep(&alg.dot(1));
        assert!(rx.mul(&rx).is_zero());
        // min_poly(x_1) = residue of m; min_poly(1) = u - 1
        assert_eq!(alg.min_poly(&alg.dot(1)), m.residue());
        let mp1 = alg.min_poly(&alg.one());
        assert_eq!(mp1.degree(), 1);
        assert_eq!(mp1.coeff(0), -&ring.one());
    }

    #[test]
    fn trace_of_x2_in_h2u() {
        let ring = qring(1);
        let m = MonicPoly::monomial(ring, 1);
        let alg = HeckeAlgebra::cyclotomic(
            QuantumParam::degenerate(BaseField::Rational),
            2,
            ring,
            m,
        )
        .unwrap();
        let rho = alg.regular_rep(&alg.dot(2));
        assert!(rho.trace().is_zero());
        // min_poly(x_2) = u^2 - 1
        let mp = alg.min_poly(&alg.dot(2));
        assert_eq!(mp.degree(), 2);
        assert_eq!(mp.coeff(0), -&ring.one());
        assert!(mp.coeff(1).is_zero());
    }

    #[test]
    fn quantum_cyclotomic_x1_inverse() {
        let ring = qring(1);
        // m = (u-1)(u-4) = u^2 - 5u + 4, m(0) = 4 unit
        let m = MonicPoly::from_coeffs(
            ring,
            vec![ring.from_int(4), ring.from_int(-5), ring.one()],
        )
        .unwrap();
        let q = FieldElem::from_int(BaseField::Rational, 2);
        let alg =
            HeckeAlgebra::cyclotomic(QuantumParam::quantum(q).unwrap(), 2, ring, m).unwrap();
        let x1_inv = alg
            .cyclotomic_reduce(&alg.monomial(vec![-1, 0], Permutation::identity(2)))
            .unwrap();
        assert_eq!(alg.mul(&alg.dot(1), &x1_inv), alg.one());
        let x2_inv = alg
            .cyclotomic_reduce(&alg.monomial(vec![0, -1], Permutation::identity(2)))
            .unwrap();
        assert_eq!(alg.mul(&alg.dot(2), &x2_inv), alg.one());
        assert_eq!(alg.mul(&x2_inv, &alg.dot(2)), alg.one());
    }
}
