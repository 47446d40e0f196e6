//! Exact arithmetic in the base field k (Q or F_p), the quantum parameters
//! (z, q) and the local coefficient algebra Z = k[t]/(t^N).
//!
//! Every value is immutable after construction. A `LocalScalar` stores its
//! coefficient vector of length N; the maximal ideal J is generated by t and
//! the residue map k[t]/(t^N) -> k drops all t-terms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};

/// The base field k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum BaseField {
    /// The rational numbers.
    Rational,
    /// The prime field F_p.
    Prime(u64),
}

impl BaseField {
    pub fn validate(&self) -> Result<()> {
        match self {
            BaseField::Rational => Ok(()),
            BaseField::Prime(p) => {
                if is_prime(*p) {
                    Ok(())
                } else {
                    Err(AlgebraError::config(format!("{p} is not prime")))
                }
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rational => 0,
            BaseField::Prime(p) => *p,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the base field k.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl FieldElem {
    pub fn zero(field: BaseField) -> Self {
        match field {
            BaseField::Rational => FieldElem::Q(BigRational::zero()),
            BaseField::Prime(p) => FieldElem::Fp { v: 0, p },
        }
    }

    pub fn one(field: BaseField) -> Self {
        match field {
            BaseField::Rational => FieldElem::Q(BigRational::one()),
            BaseField::Prime(p) => FieldElem::Fp { v: 1 % p, p },
        }
    }

    pub fn from_int(field: BaseField, n: i64) -> Self {
        match field {
            BaseField::Rational => FieldElem::Q(BigRational::from(BigInt::from(n))),
            BaseField::Prime(p) => {
                let m = n.rem_euclid(p as i64) as u64;
                FieldElem::Fp { v: m, p }
            }
        }
    }

    pub fn from_ratio(field: BaseField, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(AlgebraError::config("zero denominator"));
        }
        match field {
            BaseField::Rational => Ok(FieldElem::Q(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            BaseField::Prime(_) => {
                let d = FieldElem::from_int(field, den);
                let n = FieldElem::from_int(field, num);
                Ok(&n * &d.inv()?)
            }
        }
    }

    pub fn field(&self) -> BaseField {
        match self {
            FieldElem::Q(_) => BaseField::Rational,
            FieldElem::Fp { p, .. } => BaseField::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Q(q) => q.is_zero(),
            FieldElem::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Q(q) => q.is_one(),
            FieldElem::Fp { v, p } => *v == 1 % *p,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::NotAUnit);
        }
        Ok(match self {
            FieldElem::Q(q) => FieldElem::Q(q.recip()),
            FieldElem::Fp { v, p } => FieldElem::Fp {
                v: mod_inv(*v, *p),
                p: *p,
            },
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = FieldElem::one(self.field());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Distinguished square root: principal positive root over Q, smallest
    /// canonical representative over F_p. A per-run override table may
    /// replace individual choices.
    pub fn sqrt(&self) -> Result<Self> {
        match self {
            FieldElem::Q(q) => {
                if q.is_negative() {
                    return Err(AlgebraError::NoSquareRoot);
                }
                let n = int_sqrt(q.numer())?;
                let d = int_sqrt(q.denom())?;
                Ok(FieldElem::Q(BigRational::new(n, d)))
            }
            FieldElem::Fp { v, p } => {
                for r in 0..*p {
                    if (r as u128 * r as u128) % *p as u128 == *v as u128 {
                        return Ok(FieldElem::Fp { v: r, p: *p });
                    }
                }
                Err(AlgebraError::NoSquareRoot)
            }
        }
    }
}

fn int_sqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(AlgebraError::NoSquareRoot);
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Ok(r)
    } else {
        Err(AlgebraError::NoSquareRoot)
    }
}

fn mod_inv(v: u64, p: u64) -> u64 {
    // extended Euclid on (v, p), p prime and v != 0 mod p
    let (mut r0, mut r1) = (p as i128, v as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i128) as u64
}

fn check_same_field(a: &FieldElem, b: &FieldElem) {
    assert_eq!(
        a.field(),
        b.field(),
        "field mismatch in scalar arithmetic"
    );
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        check_same_field(self, rhs);
        match (self, rhs) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a + b),
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, .. }) => FieldElem::Fp {
                v: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        check_same_field(self, rhs);
        match (self, rhs) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a * b),
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, .. }) => FieldElem::Fp {
                v: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Q(a) => FieldElem::Q(-a),
            FieldElem::Fp { v, p } => FieldElem::Fp {
                v: (*p - *v) % *p,
                p: *p,
            },
        }
    }
}

// Canonical total order, used only for deterministic sorting of reports
// and orbit bases.
impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FieldElem::Q(a), FieldElem::Q(b)) => a.cmp(b),
            (FieldElem::Fp { v: a, .. }, FieldElem::Fp { v: b, .. }) => a.cmp(b),
            (FieldElem::Q(_), FieldElem::Fp { .. }) => Ordering::Less,
            (FieldElem::Fp { .. }, FieldElem::Q(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

/// Parse a field element from the report encoding: rationals as "p/q" or
/// integers, F_p elements as integers.
pub fn parse_field_elem(field: BaseField, s: &str) -> Result<FieldElem> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let n: i64 = num
        .parse()
        .map_err(|_| AlgebraError::config(format!("bad scalar literal {s:?}")))?;
    match den {
        None => Ok(FieldElem::from_int(field, n)),
        Some(d) => {
            let d: i64 = d
                .parse()
                .map_err(|_| AlgebraError::config(format!("bad scalar literal {s:?}")))?;
            FieldElem::from_ratio(field, n, d)
        }
    }
}

/// Per-run square-root convention: a default rule plus explicit overrides.
///
/// The paper only demands a compatible system of distinguished roots with
/// sqrt(1/c) = 1/sqrt(c); overrides let a run pin different choices while the
/// constructor enforces that an override squares to its key.
#[derive(Debug, Clone, Default)]
pub struct SqrtConvention {
    overrides: std::collections::BTreeMap<FieldElem, FieldElem>,
}

impl SqrtConvention {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_override(mut self, value: FieldElem, root: FieldElem) -> Result<Self> {
        if &(&root * &root) != &value {
            return Err(AlgebraError::config("square-root override does not square to its key"));
        }
        self.overrides.insert(value, root);
        Ok(self)
    }

    pub fn sqrt(&self, a: &FieldElem) -> Result<FieldElem> {
        if let Some(r) = self.overrides.get(a) {
            return Ok(r.clone());
        }
        a.sqrt()
    }
}

/// Degenerate (z = 0) or quantum (z = q - q^{-1} != 0) parameter data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumParam {
    z: FieldElem,
    q: Option<FieldElem>,
}

impl QuantumParam {
    pub fn degenerate(field: BaseField) -> Self {
        QuantumParam {
            z: FieldElem::zero(field),
            q: None,
        }
    }

    pub fn quantum(q: FieldElem) -> Result<Self> {
        if q.is_zero() {
            return Err(AlgebraError::config("quantum parameter q must be nonzero"));
        }
        let z = &q - &q.inv()?;
        if z.is_zero() {
            return Err(AlgebraError::config(
                "q - q^{-1} = 0: q = ±1 is not a valid quantum parameter",
            ));
        }
        Ok(QuantumParam { z, q: Some(q) })
    }

    pub fn is_degenerate(&self) -> bool {
        self.q.is_none()
    }

    pub fn z(&self) -> &FieldElem {
        &self.z
    }

    pub fn q(&self) -> Option<&FieldElem> {
        self.q.as_ref()
    }

    /// Quantum characteristic: smallest n > 0 with [n]_q = 0 (equivalently
    /// q^{2n} = 1), or 0 if none. Bounded search; exact arithmetic.
    pub fn quantum_characteristic(&self) -> u64 {
        let Some(q) = &self.q else { return 0 };
        let q2 = q * q;
        let one = FieldElem::one(q.field());
        let mut pow = q2.clone();
        for n in 1..=512u64 {
            if pow == one {
                return n;
            }
            pow = &pow * &q2;
        }
        0
    }
}

/// The coefficient ring Z = k[t]/(t^N) with maximal ideal J = (t).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalRing {
    pub field: BaseField,
    pub n: usize,
}

impl LocalRing {
    pub fn new(field: BaseField, n: usize) -> Result<Self> {
        field.validate()?;
        if n == 0 {
            return Err(AlgebraError::config("truncation order N must be >= 1"));
        }
        Ok(LocalRing { field, n })
    }

    pub fn zero(&self) -> LocalScalar {
        LocalScalar {
            c: vec![FieldElem::zero(self.field); self.n],
        }
    }

    pub fn one(&self) -> LocalScalar {
        self.from_field(FieldElem::one(self.field))
    }

    pub fn t(&self) -> LocalScalar {
        let mut z = self.zero();
        if self.n > 1 {
            z.c[1] = FieldElem::one(self.field);
        }
        z
    }

    pub fn from_field(&self, a: FieldElem) -> LocalScalar {
        assert_eq!(a.field(), self.field, "field mismatch");
        let mut z = self.zero();
        z.c[0] = a;
        z
    }

    pub fn from_int(&self, n: i64) -> LocalScalar {
        self.from_field(FieldElem::from_int(self.field, n))
    }

    pub fn from_coeffs(&self, coeffs: Vec<FieldElem>) -> Result<LocalScalar> {
        if coeffs.len() > self.n {
            return Err(AlgebraError::config("more coefficients than truncation order"));
        }
        let mut z = self.zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            if c.field() != self.field {
                return Err(AlgebraError::config("coefficient from wrong field"));
            }
            z.c[i] = c;
        }
        Ok(z)
    }

    /// The residue field viewed as a local ring with N = 1; used where
    /// polynomials over k are represented with the same machinery.
    pub fn residue_ring(&self) -> LocalRing {
        LocalRing {
            field: self.field,
            n: 1,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

/// An element of Z = k[t]/(t^N): coefficient of t^j at index j.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalScalar {
    c: Vec<FieldElem>,
}

impl LocalScalar {
    pub fn truncation(&self) -> usize {
        self.c.len()
    }

    pub fn field(&self) -> BaseField {
        self.c[0].field()
    }

    pub fn ring(&self) -> LocalRing {
        LocalRing {
            field: self.field(),
            n: self.c.len(),
        }
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.c
    }

    pub fn coeff(&self, j: usize) -> FieldElem {
        self.c
            .get(j)
            .cloned()
            .unwrap_or_else(|| FieldElem::zero(self.field()))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(FieldElem::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(FieldElem::is_zero)
    }

    pub fn is_unit(&self) -> bool {
        !self.c[0].is_zero()
    }

    /// Lies in J = (t), i.e. the residue vanishes.
    pub fn is_nilpotent(&self) -> bool {
        self.c[0].is_zero()
    }

    pub fn residue(&self) -> FieldElem {
        self.c[0].clone()
    }

    /// Least m >= 1 with a^m = 0; errors on units and other non-nilpotents.
    pub fn nilpotency_degree(&self) -> Result<usize> {
        if !self.is_nilpotent() {
            return Err(AlgebraError::NotNilpotent);
        }
        if self.is_zero() {
            return Ok(1);
        }
        let mut pow = self.clone();
        for m in 2..=self.truncation() + 1 {
            pow = &pow * self;
            if pow.is_zero() {
                return Ok(m);
            }
        }
        unreachable!("t-adic element of k[t]/(t^N) has nilpotency degree <= N")
    }

    pub fn inv_unit(&self) -> Result<LocalScalar> {
        if !self.is_unit() {
            return Err(AlgebraError::NotAUnit);
        }
        // (u(1 + s))^{-1} = u^{-1} (1 - s + s^2 - ...) with s nilpotent
        let u_inv = self.c[0].inv()?;
        let ring = self.ring();
        let mut nil = self.clone();
        nil.c[0] = FieldElem::zero(self.field());
        let s = nil.scale(&u_inv);
        let mut result = ring.one();
        let mut term = ring.one();
        for _ in 1..ring.n {
            term = &term * &s;
            term = term.neg_ref();
            result = &result + &term;
        }
        Ok(result.scale(&u_inv))
    }

    /// Distinguished square root under the given convention; Newton lifting
    /// along the t-filtration.
    pub fn sqrt_unit(&self, conv: &SqrtConvention) -> Result<LocalScalar> {
        if !self.is_unit() {
            return Err(AlgebraError::NotAUnit);
        }
        let r0 = conv.sqrt(&self.residue())?;
        let ring = self.ring();
        if ring.n > 1 && ring.field.characteristic() == 2 {
            return Err(AlgebraError::config(
                "square-root lifting over characteristic 2 with N > 1 is unsupported",
            ));
        }
        let mut x = ring.from_field(r0);
        // x_{s+1} = (x_s + a/x_s) / 2 doubles the t-adic precision each step
        let half = FieldElem::from_ratio(ring.field, 1, 2).map_err(|_| AlgebraError::NoSquareRoot)?;
        let mut prec = 1;
        while prec < ring.n {
            let corr = self * &x.inv_unit()?;
            x = (&x + &corr).scale(&half);
            prec *= 2;
        }
        debug_assert_eq!(&(&x * &x), self);
        Ok(x)
    }

    pub fn scale(&self, k: &FieldElem) -> LocalScalar {
        LocalScalar {
            c: self.c.iter().map(|a| a * k).collect(),
        }
    }

    fn neg_ref(&self) -> LocalScalar {
        LocalScalar {
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    /// Multiplication by t^j (truncating shift).
    pub fn mul_t_pow(&self, j: usize) -> LocalScalar {
        let n = self.c.len();
        let mut c = vec![FieldElem::zero(self.field()); n];
        for (i, a) in self.c.iter().enumerate() {
            if i + j < n {
                c[i + j] = a.clone();
            }
        }
        LocalScalar { c }
    }
}

fn check_compat(a: &LocalScalar, b: &LocalScalar) {
    assert_eq!(
        a.c.len(),
        b.c.len(),
        "truncation order mismatch in local-ring arithmetic"
    );
    assert_eq!(a.field(), b.field(), "field mismatch in local-ring arithmetic");
}

impl Add for &LocalScalar {
    type Output = LocalScalar;
    fn add(self, rhs: &LocalScalar) -> LocalScalar {
        check_compat(self, rhs);
        LocalScalar {
            c: self
                .c
                .iter()
                .zip(rhs.c.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &LocalScalar {
    type Output = LocalScalar;
    fn sub(self, rhs: &LocalScalar) -> LocalScalar {
        check_compat(self, rhs);
        LocalScalar {
            c: self
                .c
                .iter()
                .zip(rhs.c.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &LocalScalar {
    type Output = LocalScalar;
    fn mul(self, rhs: &LocalScalar) -> LocalScalar {
        check_compat(self, rhs);
        let n = self.c.len();
        let field = self.field();
        let mut c = vec![FieldElem::zero(field); n];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        LocalScalar { c }
    }
}

impl Neg for &LocalScalar {
    type Output = LocalScalar;
    fn neg(self) -> LocalScalar {
        self.neg_ref()
    }
}

impl PartialOrd for LocalScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LocalScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.cmp(&other.c)
    }
}

impl fmt::Display for LocalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // "c0 + c1*t + c2*t^2 + ..." with zero terms dropped (but "0" for zero)
        let mut first = true;
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match j {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*t")?,
                _ => write!(f, "{a}*t^{j}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Parse the report encoding "c0 + c1*t + c2*t^2"; also accepts "-" signs.
pub fn parse_local_scalar(ring: &LocalRing, s: &str) -> Result<LocalScalar> {
    let mut out = ring.zero();
    let normalized = s.replace('-', "+-").replace(' ', "");
    for part in normalized.split('+') {
        if part.is_empty() {
            continue;
        }
        let (coeff_str, pow) = match part.split_once("*t") {
            None => {
                if let Some(rest) = part.strip_prefix('t') {
                    // bare t or t^k
                    ("1", parse_t_power(rest)?)
                } else if let Some(rest) = part.strip_prefix("-t") {
                    ("-1", parse_t_power(rest)?)
                } else {
                    (part, 0usize)
                }
            }
            Some((c, rest)) => (c, parse_t_power(rest)?),
        };
        let c = parse_field_elem(ring.field, coeff_str)?;
        if pow >= ring.n {
            continue;
        }
        let mut term = ring.zero();
        term.c[pow] = c;
        out = &out + &term;
    }
    Ok(out)
}

fn parse_t_power(rest: &str) -> Result<usize> {
    if rest.is_empty() {
        return Ok(1);
    }
    rest.strip_prefix('^')
        .and_then(|e| e.parse().ok())
        .ok_or_else(|| AlgebraError::config(format!("bad t-power suffix {rest:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq(n: i64, d: i64) -> FieldElem {
        FieldElem::from_ratio(BaseField::Rational, n, d).unwrap()
    }

    #[test]
    fn mul_truncates() {
        // (1+t)(1-t) = 1 - t^2 in Q[t]/(t^3)
        let ring = LocalRing::new(BaseField::Rational, 3).unwrap();
        let a = &ring.one() + &ring.t();
        let b = &ring.one() - &ring.t();
        let prod = &a * &b;
        let expected = &ring.one() - &(&ring.t() * &ring.t());
        assert_eq!(prod, expected);
        // t^{N-1} * t = 0
        let t2 = &ring.t() * &ring.t();
        assert!((&t2 * &ring.t()).is_zero());
        // absorbing zero
        assert!((&a * &ring.zero()).is_zero());
    }

    #[test]
    fn inv_unit_geometric() {
        // inv(1+t) = 1 - t + t^2 in Q[t]/(t^3)
        let ring = LocalRing::new(BaseField::Rational, 3).unwrap();
        let a = &ring.one() + &ring.t();
        let inv = a.inv_unit().unwrap();
        let expected = ring
            .from_coeffs(vec![qq(1, 1), qq(-1, 1), qq(1, 1)])
            .unwrap();
        assert_eq!(inv, expected);
        assert!((&a * &inv).is_one());
        assert!(ring.one().inv_unit().unwrap().is_one());
        assert_eq!(ring.t().inv_unit(), Err(AlgebraError::NotAUnit));
    }

    #[test]
    fn sqrt_newton() {
        // sqrt(1+t) = 1 + t/2 in Q[t]/(t^2)
        let ring = LocalRing::new(BaseField::Rational, 2).unwrap();
        let conv = SqrtConvention::new();
        let a = &ring.one() + &ring.t();
        let r = a.sqrt_unit(&conv).unwrap();
        let expected = ring.from_coeffs(vec![qq(1, 1), qq(1, 2)]).unwrap();
        assert_eq!(r, expected);
        assert!(ring.one().sqrt_unit(&conv).unwrap().is_one());
        let two = ring.from_int(2);
        assert_eq!(two.sqrt_unit(&conv), Err(AlgebraError::NoSquareRoot));
    }

    #[test]
    fn residue_and_nilpotency() {
        let ring = LocalRing::new(BaseField::Rational, 3).unwrap();
        let a = &ring.from_int(2) + &ring.t().scale(&qq(3, 1));
        assert_eq!(a.residue(), qq(2, 1));
        assert_eq!(ring.t().nilpotency_degree().unwrap(), 3);
        let u = &ring.one() + &ring.t();
        assert_eq!(u.nilpotency_degree(), Err(AlgebraError::NotNilpotent));
    }

    #[test]
    fn quantum_param_consistency() {
        let q = qq(2, 1);
        let qp = QuantumParam::quantum(q.clone()).unwrap();
        assert_eq!(qp.z(), &qq(3, 2));
        assert_eq!(qp.quantum_characteristic(), 0);
        let deg = QuantumParam::degenerate(BaseField::Rational);
        assert!(deg.z().is_zero());
        // q = 1 rejected
        assert!(QuantumParam::quantum(qq(1, 1)).is_err());
        // over F_5, q = 2: q^2 = 4, order of 4 mod 5 is 2 -> qc = 2
        let q5 = FieldElem::from_int(BaseField::Prime(5), 2);
        let qp5 = QuantumParam::quantum(q5).unwrap();
        assert_eq!(qp5.quantum_characteristic(), 2);
    }

    #[test]
    fn fp_arithmetic_and_sqrt() {
        let f = BaseField::Prime(7);
        let a = FieldElem::from_int(f, 3);
        let b = FieldElem::from_int(f, 5);
        assert_eq!(&a * &b, FieldElem::from_int(f, 1));
        assert_eq!(a.inv().unwrap(), FieldElem::from_int(f, 5));
        // 2 = 3^2 = 16 mod 7 -> sqrt(2) = 3 (smallest rep is 3 since 4^2=2 too)
        let two = FieldElem::from_int(f, 2);
        assert_eq!(two.sqrt().unwrap(), FieldElem::from_int(f, 3));
        let three = FieldElem::from_int(f, 3);
        assert_eq!(three.sqrt(), Err(AlgebraError::NoSquareRoot));
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let ring = LocalRing::new(BaseField::Rational, 3).unwrap();
        let a = ring
            .from_coeffs(vec![qq(1, 2), qq(-3, 1), qq(0, 1)])
            .unwrap();
        let s = a.to_string();
        assert_eq!(s, "1/2 + -3*t");
        let b = parse_local_scalar(&ring, &s).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_local_scalar(&ring, "0").unwrap(), ring.zero());
    }
}
