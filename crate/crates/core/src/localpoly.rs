//! Monic polynomial arithmetic over Z = k[t]/(t^N) and the constructive
//! Hensel machinery: coprime factor lifting along the t-filtration and the
//! clustering f(u) = prod_i f_i(u - i) at the roots of the residue.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::scalars::{BaseField, FieldElem, LocalRing, LocalScalar};

/// Dense polynomial over Z, lowest-degree coefficient first, trailing zeros
/// trimmed. The zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    ring: LocalRing,
    c: Vec<LocalScalar>,
}

impl Poly {
    pub fn new(ring: LocalRing, mut coeffs: Vec<LocalScalar>) -> Poly {
        while coeffs.last().is_some_and(LocalScalar::is_zero) {
            coeffs.pop();
        }
        Poly { ring, c: coeffs }
    }

    pub fn zero(ring: LocalRing) -> Poly {
        Poly { ring, c: vec![] }
    }

    pub fn constant(ring: LocalRing, a: LocalScalar) -> Poly {
        Poly::new(ring, vec![a])
    }

    pub fn monomial(ring: LocalRing, deg: usize) -> Poly {
        let mut c = vec![ring.zero(); deg + 1];
        c[deg] = ring.one();
        Poly { ring, c }
    }

    /// u - a
    pub fn linear(ring: LocalRing, a: &LocalScalar) -> Poly {
        Poly::new(ring, vec![-a, ring.one()])
    }

    pub fn ring(&self) -> LocalRing {
        self.ring
    }

    pub fn coeffs(&self) -> &[LocalScalar] {
        &self.c
    }

    pub fn coeff(&self, j: usize) -> LocalScalar {
        self.c.get(j).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree of the zero polynomial is reported as None.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&LocalScalar> {
        self.c.last()
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.c.len().max(rhs.c.len());
        let mut c = Vec::with_capacity(n);
        for j in 0..n {
            c.push(&self.coeff(j) + &rhs.coeff(j));
        }
        Poly::new(self.ring, c)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring,
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.ring);
        }
        let mut c = vec![self.ring.zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Poly::new(self.ring, c)
    }

    pub fn scale(&self, a: &LocalScalar) -> Poly {
        Poly::new(self.ring, self.c.iter().map(|b| b * a).collect())
    }

    pub fn evaluate(&self, x: &LocalScalar) -> LocalScalar {
        let mut acc = self.ring.zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    /// Composition with u -> u + a.
    pub fn shift(&self, a: &LocalScalar) -> Poly {
        // Horner in the shifted variable
        let mut acc = Poly::zero(self.ring);
        let lin = Poly::new(self.ring, vec![a.clone(), self.ring.one()]);
        for c in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(self.ring, c.clone()));
        }
        acc
    }

    /// Composition with u -> a*u.
    pub fn scale_var(&self, a: &LocalScalar) -> Poly {
        let mut pow = self.ring.one();
        let mut c = Vec::with_capacity(self.c.len());
        for b in &self.c {
            c.push(b * &pow);
            pow = &pow * a;
        }
        Poly::new(self.ring, c)
    }

    /// Reduction modulo J: the image in k[u] represented over k[t]/(t^1).
    pub fn residue(&self) -> Poly {
        let rring = self.ring.residue_ring();
        Poly::new(
            rring,
            self.c
                .iter()
                .map(|a| rring.from_field(a.residue()))
                .collect(),
        )
    }

    /// Inclusion k[u] -> Z[u] for a polynomial over the residue ring.
    pub fn lift_to(&self, ring: LocalRing) -> Poly {
        Poly::new(
            ring,
            self.c
                .iter()
                .map(|a| ring.from_field(a.residue()))
                .collect(),
        )
    }

    /// All non-leading coefficients lie in J.
    pub fn lower_coeffs_nilpotent(&self) -> bool {
        let Some(d) = self.degree() else { return true };
        self.c[..d].iter().all(LocalScalar::is_nilpotent)
    }

    /// Division with remainder by a monic divisor: exact over any ring.
    pub fn divmod(&self, p: &MonicPoly) -> (Poly, Poly) {
        let d = p.degree();
        let mut rem = self.clone();
        let mut quo = vec![self.ring.zero(); self.c.len().saturating_sub(d)];
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let lead = rem.c[rd].clone();
            let shift = rd - d;
            quo[shift] = lead.clone();
            // rem -= lead * u^shift * p
            let mut sub = vec![self.ring.zero(); shift];
            sub.extend(p.poly().c.iter().map(|a| a * &lead));
            rem = rem.sub(&Poly::new(self.ring, sub));
            if rem.degree().is_some_and(|nd| nd >= rd) {
                // monic divisor guarantees strict degree drop
                unreachable!("division by monic polynomial must reduce degree");
            }
        }
        (Poly::new(self.ring, quo), rem)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, a)| match j {
                0 => format!("({a})"),
                1 => format!("({a})*u"),
                _ => format!("({a})*u^{j}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Monic polynomial over Z; leading coefficient exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonicPoly(Poly);

impl MonicPoly {
    pub fn new(p: Poly) -> Result<MonicPoly> {
        match p.leading() {
            Some(l) if l.is_one() => Ok(MonicPoly(p)),
            _ => Err(AlgebraError::config("polynomial is not monic")),
        }
    }

    pub fn one(ring: LocalRing) -> MonicPoly {
        MonicPoly(Poly::constant(ring, ring.one()))
    }

    /// u - a
    pub fn linear(ring: LocalRing, a: &LocalScalar) -> MonicPoly {
        MonicPoly(Poly::linear(ring, a))
    }

    pub fn monomial(ring: LocalRing, deg: usize) -> MonicPoly {
        MonicPoly(Poly::monomial(ring, deg))
    }

    pub fn from_coeffs(ring: LocalRing, coeffs: Vec<LocalScalar>) -> Result<MonicPoly> {
        MonicPoly::new(Poly::new(ring, coeffs))
    }

    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn ring(&self) -> LocalRing {
        self.0.ring
    }

    pub fn degree(&self) -> usize {
        self.0.degree().expect("monic polynomial is nonzero")
    }

    pub fn coeff(&self, j: usize) -> LocalScalar {
        self.0.coeff(j)
    }

    pub fn constant_term(&self) -> LocalScalar {
        self.0.coeff(0)
    }

    pub fn evaluate(&self, x: &LocalScalar) -> LocalScalar {
        self.0.evaluate(x)
    }

    pub fn mul(&self, rhs: &MonicPoly) -> MonicPoly {
        MonicPoly(self.0.mul(&rhs.0))
    }

    pub fn residue(&self) -> MonicPoly {
        MonicPoly(self.0.residue())
    }

    pub fn lift_to(&self, ring: LocalRing) -> MonicPoly {
        MonicPoly(self.0.lift_to(ring))
    }

    pub fn shift(&self, a: &LocalScalar) -> MonicPoly {
        MonicPoly(self.0.shift(a))
    }

    /// a^{-deg} * f(a*u) for a unit a: monic again.
    pub fn scale_var_normalized(&self, a: &LocalScalar) -> Result<MonicPoly> {
        let a_inv = a.inv_unit()?;
        let mut scale = self.ring().one();
        for _ in 0..self.degree() {
            scale = &scale * &a_inv;
        }
        MonicPoly::new(self.0.scale_var(a).scale(&scale))
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Extended Euclid over k[u] (polynomials over a residue ring with N = 1):
/// returns (a, b) with a*g + b*h = 1, lifted to Z by inclusion by callers.
/// Errors with NotCoprime when gcd(g, h) is not constant.
pub fn bezout(g: &Poly, h: &Poly) -> Result<(Poly, Poly)> {
    let ring = g.ring();
    assert_eq!(ring.n, 1, "bezout operates over the residue field");
    if g.is_zero() && h.is_zero() {
        return Err(AlgebraError::NotCoprime);
    }
    let (mut r0, mut r1) = (g.clone(), h.clone());
    let (mut a0, mut a1) = (
        Poly::constant(ring, ring.one()),
        Poly::zero(ring),
    );
    let (mut b0, mut b1) = (
        Poly::zero(ring),
        Poly::constant(ring, ring.one()),
    );
    while !r1.is_zero() {
        let lead = r1.leading().unwrap().clone();
        let lead_inv = lead.inv_unit().expect("nonzero field element");
        let monic_r1 = MonicPoly::new(r1.scale(&lead_inv)).unwrap();
        let (q, r) = r0.divmod(&monic_r1);
        let q = q.scale(&lead_inv);
        let new_a = a0.sub(&q.mul(&a1));
        let new_b = b0.sub(&q.mul(&b1));
        (r0, r1) = (r1, r);
        (a0, a1) = (a1, new_a);
        (b0, b1) = (b1, new_b);
    }
    if r0.degree() != Some(0) {
        return Err(AlgebraError::NotCoprime);
    }
    let d_inv = r0.coeff(0).inv_unit()?;
    Ok((a0.scale(&d_inv), b0.scale(&d_inv)))
}

/// Unique monic lifts (g, h) of a coprime residue factorization
/// residue(f) = gbar * hbar, with f = g*h exactly over Z.
///
/// One linear correction per t-layer: with a*gbar + b*hbar = 1 over k and
/// e = f - g_s h_s = t^s ebar, the updates dg = (b ebar mod gbar) and
/// dh = (ebar - hbar dg)/gbar restore the product to the next layer.
pub fn coprime_factor_lift(
    f: &MonicPoly,
    gbar: &MonicPoly,
    hbar: &MonicPoly,
) -> Result<(MonicPoly, MonicPoly)> {
    let ring = f.ring();
    if gbar.ring().n != 1 || hbar.ring().n != 1 {
        return Err(AlgebraError::config("residue factors must live over k"));
    }
    if f.residue() != gbar.mul(hbar) {
        return Err(AlgebraError::FactorizationMismatch);
    }
    let (_a, b) = bezout(gbar.poly(), hbar.poly())?;
    let mut g = gbar.lift_to(ring);
    let mut h = hbar.lift_to(ring);
    for _layer in 1..ring.n {
        let e = f.poly().sub(&g.poly().mul(h.poly()));
        if e.is_zero() {
            break;
        }
        // e has all coefficients in t^layer; correct one layer at a time
        // using residue-field arithmetic on the cofactor of the lowest layer.
        let layer = lowest_t_layer(&e).expect("nonzero error term");
        let ebar = t_layer_slice(&e, layer);
        let (_, dg_bar) = b.mul(&ebar).divmod(gbar);
        let num = ebar.sub(&hbar.poly().mul(&dg_bar));
        let (dh_bar, rem) = num.divmod(gbar);
        debug_assert!(rem.is_zero(), "layer correction must divide exactly");
        g = MonicPoly::new(g.poly().add(&raise_t_layer(&dg_bar, layer, ring)))?;
        h = MonicPoly::new(h.poly().add(&raise_t_layer(&dh_bar, layer, ring)))?;
    }
    debug_assert_eq!(&g.mul(&h), f);
    Ok((g, h))
}

fn lowest_t_layer(p: &Poly) -> Option<usize> {
    let mut best: Option<usize> = None;
    for c in p.coeffs() {
        for (j, a) in c.coeffs().iter().enumerate() {
            if !a.is_zero() {
                best = Some(best.map_or(j, |b| b.min(j)));
            }
        }
    }
    best
}

/// Coefficient of t^layer in each u-coefficient, as a polynomial over k.
fn t_layer_slice(p: &Poly, layer: usize) -> Poly {
    let rring = p.ring().residue_ring();
    Poly::new(
        rring,
        p.coeffs()
            .iter()
            .map(|c| rring.from_field(c.coeff(layer)))
            .collect(),
    )
}

/// t^layer * (inclusion of a k-polynomial).
fn raise_t_layer(p: &Poly, layer: usize, ring: LocalRing) -> Poly {
    Poly::new(
        ring,
        p.coeffs()
            .iter()
            .map(|c| ring.from_field(c.residue()).mul_t_pow(layer))
            .collect(),
    )
}

/// Roots with multiplicities of a monic polynomial over k; NotSplit if it
/// does not factor into linear factors. Rational-root search over Q,
/// exhaustive evaluation over F_p.
pub fn split_roots(p: &MonicPoly) -> Result<BTreeMap<FieldElem, usize>> {
    assert_eq!(p.ring().n, 1, "split_roots operates over the residue field");
    let mut out = BTreeMap::new();
    let mut cur = p.clone();
    while cur.degree() > 0 {
        let root = find_root(&cur)?;
        let lin = MonicPoly::linear(cur.ring(), &cur.ring().from_field(root.clone()));
        let (q, r) = cur.poly().divmod(&lin);
        if !r.is_zero() {
            return Err(AlgebraError::NotSplit);
        }
        cur = MonicPoly::new(q)?;
        *out.entry(root).or_insert(0) += 1;
    }
    Ok(out)
}

fn find_root(p: &MonicPoly) -> Result<FieldElem> {
    let field = p.ring().field;
    match field {
        BaseField::Prime(q) => {
            for v in 0..q {
                let x = FieldElem::from_int(field, v as i64);
                if p.evaluate(&p.ring().from_field(x.clone())).is_zero() {
                    return Ok(x);
                }
            }
            Err(AlgebraError::NotSplit)
        }
        BaseField::Rational => {
            // clear denominators, then candidate roots are sign * (divisor of
            // the constant term) / (divisor of the leading coefficient); the
            // polynomial is monic after scaling so denominators divide lcm^?
            rational_root(p)
        }
    }
}

fn rational_root(p: &MonicPoly) -> Result<FieldElem> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};

    // scale to integer coefficients: c_j = n_j / d_j, L = lcm(d_j)
    let mut lcm = BigInt::one();
    for c in p.poly().coeffs() {
        let FieldElem::Q(q) = c.residue() else {
            unreachable!()
        };
        lcm = num_integer::lcm(lcm, q.denom().clone());
    }
    let ints: Vec<BigInt> = p
        .poly()
        .coeffs()
        .iter()
        .map(|c| {
            let FieldElem::Q(q) = c.residue() else {
                unreachable!()
            };
            (q * BigRational::from(lcm.clone())).to_integer()
        })
        .collect();
    // root a/b in lowest terms: a | ints[0], b | leading
    let lead = ints.last().unwrap().clone();
    let constant = ints[0].clone();
    if constant.is_zero() {
        return Ok(FieldElem::Q(BigRational::zero()));
    }
    let num_divs = divisors(&constant.abs());
    let den_divs = divisors(&lead.abs());
    for a in &num_divs {
        for b in &den_divs {
            for sign in [1i64, -1] {
                let cand = BigRational::new(a * BigInt::from(sign), b.clone());
                let x = FieldElem::Q(cand);
                if p.evaluate(&p.ring().from_field(x.clone())).is_zero() {
                    return Ok(x);
                }
            }
        }
    }
    Err(AlgebraError::NotSplit)
}

fn divisors(n: &num_bigint::BigInt) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let mut out = vec![];
    let mut d = BigInt::from(1);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let q = n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Hensel clustering: unique monic f_i in u^{p_i} + J[u] with
/// f(u) = prod_i f_i(u - i), keyed by the root i of the residue.
///
/// Lifts are peeled off one root at a time with coprime_factor_lift; the
/// uniqueness statement makes the peeling order irrelevant.
pub fn cluster_factor(f: &MonicPoly) -> Result<BTreeMap<FieldElem, MonicPoly>> {
    let roots = split_roots(&f.residue())?;
    let ring = f.ring();
    let rring = ring.residue_ring();
    let mut out = BTreeMap::new();
    let mut rest = f.clone();
    let root_list: Vec<(FieldElem, usize)> = roots.into_iter().collect();
    for (idx, (root, mult)) in root_list.iter().enumerate() {
        let factor = if idx + 1 == root_list.len() {
            rest.clone()
        } else {
            let gbar = MonicPoly::new(
                Poly::linear(rring, &rring.from_field(root.clone()))
                    .pow(*mult),
            )?;
            let hbar = {
                let mut h = Poly::constant(rring, rring.one());
                for (r2, m2) in root_list[idx + 1..].iter() {
                    h = h.mul(&Poly::linear(rring, &rring.from_field(r2.clone())).pow(*m2));
                }
                MonicPoly::new(h)?
            };
            let (g, h) = coprime_factor_lift(&rest, &gbar, &hbar)?;
            rest = h;
            g
        };
        // rewrite in the shifted variable v = u - i: f_i(v) := factor(v + i)
        let shifted = factor.shift(&ring.from_field(root.clone()));
        debug_assert!(shifted.poly().lower_coeffs_nilpotent());
        out.insert(root.clone(), shifted);
    }
    Ok(out)
}

impl Poly {
    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::constant(self.ring, self.ring.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Reassemble prod_i f_i(u - i) from a cluster family.
pub fn cluster_product(ring: LocalRing, parts: &BTreeMap<FieldElem, MonicPoly>) -> MonicPoly {
    let mut acc = MonicPoly::one(ring);
    for (root, fi) in parts {
        let shifted = fi.shift(&(-&ring.from_field(root.clone())));
        acc = acc.mul(&shifted);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::BaseField;

    fn qring(n: usize) -> LocalRing {
        LocalRing::new(BaseField::Rational, n).unwrap()
    }

    fn upoly(ring: LocalRing, ints: &[i64]) -> Poly {
        Poly::new(ring, ints.iter().map(|&v| ring.from_int(v)).collect())
    }

    #[test]
    fn divmod_examples() {
        // (u^2 - u + t) / (u - t) = (u + t - 1, 0) over Q[t]/(t^2)
        let ring = qring(2);
        let t = ring.t();
        let f = Poly::new(
            ring,
            vec![t.clone(), -&ring.one(), ring.one()],
        );
        let p = MonicPoly::linear(ring, &t);
        let (q, r) = f.divmod(&p);
        assert!(r.is_zero());
        let expected_q = Poly::new(ring, vec![&t - &ring.one(), ring.one()]);
        assert_eq!(q, expected_q);
        assert_eq!(q.mul(p.poly()), f);

        // f / f = (1, 0)
        let fm = MonicPoly::new(f.clone()).unwrap();
        let (q2, r2) = f.divmod(&fm);
        assert_eq!(q2, Poly::constant(ring, ring.one()));
        assert!(r2.is_zero());

        // u / (u - i) = (1, i): remainder theorem
        let i = ring.from_int(5);
        let (q3, r3) = Poly::monomial(ring, 1).divmod(&MonicPoly::linear(ring, &i));
        assert_eq!(q3, Poly::constant(ring, ring.one()));
        assert_eq!(r3, Poly::constant(ring, i));
    }

    #[test]
    fn bezout_examples() {
        let ring = qring(1);
        // u - (u - 1) = 1
        let g = upoly(ring, &[0, 1]);
        let h = upoly(ring, &[-1, 1]);
        let (a, b) = bezout(&g, &h).unwrap();
        assert_eq!(a.mul(&g).add(&b.mul(&h)), Poly::constant(ring, ring.one()));
        assert_eq!(a, Poly::constant(ring, ring.one()));
        assert_eq!(b, Poly::constant(ring, -&ring.one()));

        // g = 1 -> (1, 0)
        let one = Poly::constant(ring, ring.one());
        let (a2, b2) = bezout(&one, &h).unwrap();
        assert_eq!(a2.mul(&one).add(&b2.mul(&h)), one);

        // g = h = u -> NotCoprime
        assert_eq!(bezout(&g, &g), Err(AlgebraError::NotCoprime));
    }

    #[test]
    fn coprime_lift_example() {
        // f = u^2 - u + t over Q[t]/(t^2), gbar = u, hbar = u - 1
        // expected unique lift (u - t, u - 1 + t); oracle: product check
        let ring = qring(2);
        let rring = ring.residue_ring();
        let f = MonicPoly::new(Poly::new(
            ring,
            vec![ring.t(), -&ring.one(), ring.one()],
        ))
        .unwrap();
        let gbar = MonicPoly::new(upoly(rring, &[0, 1])).unwrap();
        let hbar = MonicPoly::new(upoly(rring, &[-1, 1])).unwrap();
        let (g, h) = coprime_factor_lift(&f, &gbar, &hbar).unwrap();
        assert_eq!(g.mul(&h), f);
        let exp_g = MonicPoly::new(Poly::new(ring, vec![-&ring.t(), ring.one()])).unwrap();
        let exp_h =
            MonicPoly::new(Poly::new(ring, vec![&ring.t() - &ring.one(), ring.one()])).unwrap();
        assert_eq!(g, exp_g);
        assert_eq!(h, exp_h);

        // N = 1: nothing to lift
        let f1 = MonicPoly::new(upoly(rring, &[0, -1, 1])).unwrap();
        let (g1, h1) = coprime_factor_lift(&f1, &gbar, &hbar).unwrap();
        assert_eq!(g1, gbar);
        assert_eq!(h1, hbar);

        // f = u^2, gbar = hbar = u -> NotCoprime
        let f2 = MonicPoly::new(upoly(ring, &[0, 0, 1])).unwrap();
        assert_eq!(
            coprime_factor_lift(&f2, &gbar, &gbar),
            Err(AlgebraError::NotCoprime)
        );
    }

    #[test]
    fn cluster_examples() {
        // f = u^2 (u-1) over k: {0: v^2, 1: v}
        let ring = qring(1);
        let f = MonicPoly::new(upoly(ring, &[0, 1, -2, 1])).unwrap(); // u(u-1)^2
        let parts = cluster_factor(&f).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&FieldElem::from_int(BaseField::Rational, 0)].degree(), 1);
        assert_eq!(parts[&FieldElem::from_int(BaseField::Rational, 1)].degree(), 2);
        assert_eq!(cluster_product(ring, &parts), f);

        // f = u^2 - u + t over Q[t]/(t^2): {0: v - t, 1: v + t}
        let ring2 = qring(2);
        let f2 = MonicPoly::new(Poly::new(
            ring2,
            vec![ring2.t(), -&ring2.one(), ring2.one()],
        ))
        .unwrap();
        let parts2 = cluster_factor(&f2).unwrap();
        let zero = FieldElem::from_int(BaseField::Rational, 0);
        let one = FieldElem::from_int(BaseField::Rational, 1);
        assert_eq!(
            parts2[&zero],
            MonicPoly::new(Poly::new(ring2, vec![-&ring2.t(), ring2.one()])).unwrap()
        );
        assert_eq!(
            parts2[&one],
            MonicPoly::new(Poly::new(ring2, vec![ring2.t(), ring2.one()])).unwrap()
        );
        assert_eq!(cluster_product(ring2, &parts2), f2);

        // residue u^2 + 1 does not split over Q
        let f3 = MonicPoly::new(upoly(ring, &[1, 0, 1])).unwrap();
        assert_eq!(cluster_factor(&f3), Err(AlgebraError::NotSplit));
    }
}
