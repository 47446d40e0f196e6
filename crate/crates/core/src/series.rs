//! Truncated Laurent series in descending powers of u, the determinantal
//! inversion formula g_r = det(-f_{s-t+1}) and the elementary/complete
//! symmetric function identity e(u) h(-u) = 1.
//!
//! A series knows the coefficients of u^{lead_exp - j} for j < precision;
//! arithmetic truncates to the precision actually surviving the operation.

use crate::error::{AlgebraError, Result};
use crate::localpoly::MonicPoly;
use crate::scalars::{FieldElem, LocalRing, LocalScalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    ring: LocalRing,
    lead_exp: i64,
    /// c[j] is the coefficient of u^{lead_exp - j}.
    c: Vec<LocalScalar>,
}

impl LaurentSeries {
    pub fn new(ring: LocalRing, lead_exp: i64, coeffs: Vec<LocalScalar>) -> LaurentSeries {
        assert!(!coeffs.is_empty(), "series needs at least one known coefficient");
        LaurentSeries {
            ring,
            lead_exp,
            c: coeffs,
        }
    }

    pub fn one(ring: LocalRing, precision: usize) -> LaurentSeries {
        let mut c = vec![ring.zero(); precision];
        c[0] = ring.one();
        LaurentSeries {
            ring,
            lead_exp: 0,
            c,
        }
    }

    pub fn ring(&self) -> LocalRing {
        self.ring
    }

    pub fn lead_exp(&self) -> i64 {
        self.lead_exp
    }

    pub fn precision(&self) -> usize {
        self.c.len()
    }

    pub fn coeffs(&self) -> &[LocalScalar] {
        &self.c
    }

    /// Coefficient of u^e; zero above the leading exponent, panics below the
    /// known window.
    pub fn coeff_at(&self, e: i64) -> LocalScalar {
        if e > self.lead_exp {
            return self.ring.zero();
        }
        let j = (self.lead_exp - e) as usize;
        assert!(j < self.c.len(), "coefficient below known precision");
        self.c[j].clone()
    }

    pub fn truncate(&self, precision: usize) -> LaurentSeries {
        let p = precision.min(self.c.len());
        LaurentSeries {
            ring: self.ring,
            lead_exp: self.lead_exp,
            c: self.c[..p].to_vec(),
        }
    }

    pub fn mul(&self, rhs: &LaurentSeries) -> LaurentSeries {
        assert_eq!(self.ring, rhs.ring, "coefficient ring mismatch");
        let prec = self.c.len().min(rhs.c.len());
        let mut c = vec![self.ring.zero(); prec];
        for (i, a) in self.c.iter().enumerate().take(prec) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if i + j >= prec {
                    break;
                }
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        LaurentSeries {
            ring: self.ring,
            lead_exp: self.lead_exp + rhs.lead_exp,
            c,
        }
    }

    pub fn add(&self, rhs: &LaurentSeries) -> LaurentSeries {
        assert_eq!(self.ring, rhs.ring, "coefficient ring mismatch");
        let lead = self.lead_exp.max(rhs.lead_exp);
        // precision window: lowest exponent known to both
        let low = (self.lead_exp - self.c.len() as i64 + 1)
            .max(rhs.lead_exp - rhs.c.len() as i64 + 1);
        let prec = (lead - low + 1).max(1) as usize;
        let mut c = Vec::with_capacity(prec);
        for j in 0..prec {
            let e = lead - j as i64;
            let a = if e <= self.lead_exp {
                self.coeff_at(e)
            } else {
                self.ring.zero()
            };
            let b = if e <= rhs.lead_exp {
                rhs.coeff_at(e)
            } else {
                self.ring.zero()
            };
            c.push(&a + &b);
        }
        LaurentSeries {
            ring: self.ring,
            lead_exp: lead,
            c,
        }
    }

    pub fn scale(&self, a: &LocalScalar) -> LaurentSeries {
        LaurentSeries {
            ring: self.ring,
            lead_exp: self.lead_exp,
            c: self.c.iter().map(|b| b * a).collect(),
        }
    }

    /// Multiplicative inverse to the surviving precision; the leading
    /// coefficient must be a unit.
    pub fn invert(&self) -> Result<LaurentSeries> {
        let lead = &self.c[0];
        if !lead.is_unit() {
            return Err(AlgebraError::NotInvertible);
        }
        let lead_inv = lead.inv_unit()?;
        let prec = self.c.len();
        let mut c = vec![self.ring.zero(); prec];
        c[0] = lead_inv.clone();
        // recursively: (sum a_i) (sum b_j) = 1, b_j = -a_0^{-1} sum_{i>0} a_i b_{j-i}
        for j in 1..prec {
            let mut acc = self.ring.zero();
            for i in 1..=j {
                acc = &acc + &(&self.c[i] * &c[j - i]);
            }
            c[j] = -&(&acc * &lead_inv);
        }
        Ok(LaurentSeries {
            ring: self.ring,
            lead_exp: -self.lead_exp,
            c,
        })
    }

    pub fn is_one_to_precision(&self) -> bool {
        if self.lead_exp != 0 || !self.c[0].is_one() {
            return false;
        }
        self.c[1..].iter().all(LocalScalar::is_zero)
    }
}

/// The r-th coefficient of the inverse of f(u) = u^k + f_1 u^{k-1} + ... via
/// the r x r determinant det(-f_{s-t+1}), with f_0 = 1 and f_j = 0 for j < 0.
///
/// Division-free evaluation: Laplace expansion memoized over the set of
/// remaining columns (the matrix is lower Hessenberg, but at desk scale the
/// bitmask expansion is simplest).
pub fn det_inversion_coeff(ring: LocalRing, f: &[LocalScalar], r: usize) -> LocalScalar {
    assert!(f.first().map(LocalScalar::is_one).unwrap_or(false), "f_0 must be 1");
    if r == 0 {
        return ring.one();
    }
    let entry = |s: usize, t: usize| -> LocalScalar {
        // matrix entry (s, t), 1-based: -f_{s-t+1}
        let idx = s as i64 - t as i64 + 1;
        if idx < 0 {
            ring.zero()
        } else {
            let idx = idx as usize;
            if idx < f.len() {
                -&f[idx]
            } else {
                ring.zero()
            }
        }
    };
    // expand along rows; state = bitmask of used columns
    let mut memo: std::collections::HashMap<u32, LocalScalar> = std::collections::HashMap::new();
    fn go(
        r: usize,
        row: usize,
        used: u32,
        entry: &dyn Fn(usize, usize) -> LocalScalar,
        ring: &LocalRing,
        memo: &mut std::collections::HashMap<u32, LocalScalar>,
    ) -> LocalScalar {
        if row == r {
            return ring.one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = ring.zero();
        let mut sign_flip = false;
        for t in 0..r {
            if used & (1 << t) != 0 {
                continue;
            }
            let e = entry(row + 1, t + 1);
            if !e.is_zero() {
                let sub = go(r, row + 1, used | (1 << t), entry, ring, memo);
                let term = &e * &sub;
                acc = if sign_flip { &acc - &term } else { &acc + &term };
            }
            sign_flip = !sign_flip;
        }
        memo.insert(used, acc.clone());
        acc
    }
    go(r, 0, 0, &entry, &ring, &mut memo)
}

/// Expand n(u)/m(u) as a Laurent series with lead_exp = deg n - deg m, for
/// monic m; satisfies m * result = n to the requested precision.
pub fn rational_to_series(n: &MonicPoly, m: &MonicPoly, precision: usize) -> LaurentSeries {
    poly_over_monic(n.poly(), m, precision)
}

/// As `rational_to_series` but the numerator may be any polynomial.
pub fn poly_over_monic(
    n: &crate::localpoly::Poly,
    m: &MonicPoly,
    precision: usize,
) -> LaurentSeries {
    let ring = m.ring();
    if n.is_zero() {
        return LaurentSeries::new(ring, 0, vec![ring.zero(); precision]);
    }
    let dn = n.degree().unwrap() as i64;
    let dm = m.degree() as i64;
    // series of 1/m: m = u^dm (1 + m_{dm-1} u^{-1} + ...)
    let mut mc = Vec::with_capacity(precision);
    for j in 0..precision {
        let idx = dm - j as i64;
        mc.push(if idx >= 0 { m.coeff(idx as usize) } else { ring.zero() });
    }
    let m_series = LaurentSeries::new(ring, dm, mc);
    let m_inv = m_series.invert().expect("monic leading coefficient");
    let mut nc = Vec::with_capacity(precision);
    for j in 0..precision {
        let idx = dn - j as i64;
        nc.push(if idx >= 0 { n.coeff(idx as usize) } else { ring.zero() });
    }
    let n_series = LaurentSeries::new(ring, dn, nc);
    n_series.mul(&m_inv)
}

/// Check e(u) h(-u) = 1 to precision n_vars + 1 with the elementary and
/// complete symmetric polynomials evaluated at the given points.
pub fn symfun_check(points: &[FieldElem]) -> bool {
    let n = points.len();
    assert!(n >= 1);
    let ring = LocalRing {
        field: points[0].field(),
        n: 1,
    };
    let prec = n + 2;
    // e_r by expanding prod (1 + x_i v); h_r by Newton-free recursion
    let mut e = vec![FieldElem::zero(ring.field); n + 1];
    e[0] = FieldElem::one(ring.field);
    for x in points {
        for r in (1..=n).rev() {
            e[r] = &e[r] + &(x * &e[r - 1]);
        }
    }
    // h_r = sum over multisets: use generating recursion h_r = sum_i x_i^... ;
    // simplest exact route: h via the coefficients of 1/prod(1 - x_i v)
    let mut h = vec![FieldElem::zero(ring.field); prec];
    h[0] = FieldElem::one(ring.field);
    // prod (1 - x_i v) coefficients: signed elementary
    let mut denom = vec![FieldElem::zero(ring.field); n + 1];
    denom[0] = FieldElem::one(ring.field);
    for x in points {
        for r in (1..=n).rev() {
            let shifted = &denom[r - 1] * x;
            denom[r] = &denom[r] - &shifted;
        }
    }
    for r in 1..prec {
        // h_r = -sum_{j=1..min(r,n)} denom_j h_{r-j}
        let mut acc = FieldElem::zero(ring.field);
        for j in 1..=r.min(n) {
            acc = &acc + &(&denom[j] * &h[r - j]);
        }
        h[r] = -&acc;
    }
    // e(u) = sum e_r u^{-r}, h(-u) = sum h_r (-u)^{-r}; product must be 1
    let to_series = |coe: &[FieldElem], alternate: bool| {
        let mut c = Vec::with_capacity(prec);
        for (r, a) in coe.iter().take(prec).enumerate() {
            let v = if alternate && r % 2 == 1 { -a } else { a.clone() };
            c.push(ring.from_field(v));
        }
        while c.len() < prec {
            c.push(ring.zero());
        }
        LaurentSeries::new(ring, 0, c)
    };
    let e_series = to_series(&e, false);
    let h_series = to_series(&h, true);
    e_series.mul(&h_series).is_one_to_precision()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localpoly::Poly;
    use crate::scalars::BaseField;

    fn qring() -> LocalRing {
        LocalRing::new(BaseField::Rational, 1).unwrap()
    }

    fn qring3() -> LocalRing {
        LocalRing::new(BaseField::Rational, 3).unwrap()
    }

    #[test]
    fn mul_and_invert() {
        let ring = qring();
        // (u + 1)(u - 1) = u^2 - 1
        let a = LaurentSeries::new(ring, 1, vec![ring.one(), ring.one(), ring.zero()]);
        let b = LaurentSeries::new(ring, 1, vec![ring.one(), -&ring.one(), ring.zero()]);
        let p = a.mul(&b);
        assert_eq!(p.lead_exp(), 2);
        assert_eq!(p.coeff_at(2), ring.one());
        assert_eq!(p.coeff_at(1), ring.zero());
        assert_eq!(p.coeff_at(0), -&ring.one());

        // a * 1 = a
        let one = LaurentSeries::one(ring, 3);
        assert_eq!(a.mul(&one), a);

        // invert(u + 1) = u^{-1} - u^{-2} + u^{-3} - ...
        let inv = a.invert().unwrap();
        assert_eq!(inv.lead_exp(), -1);
        assert_eq!(inv.coeff_at(-1), ring.one());
        assert_eq!(inv.coeff_at(-2), -&ring.one());
        assert_eq!(inv.coeff_at(-3), ring.one());
        assert!(a.mul(&inv).is_one_to_precision());

        // invert(u^k) = u^{-k}
        let uk = LaurentSeries::new(ring, 5, vec![ring.one(), ring.zero()]);
        let uk_inv = uk.invert().unwrap();
        assert_eq!(uk_inv.lead_exp(), -5);
        assert!(uk.mul(&uk_inv).is_one_to_precision());

        // non-unit leading coefficient
        let r2 = LocalRing::new(BaseField::Rational, 2).unwrap();
        let bad = LaurentSeries::new(r2, 1, vec![r2.t(), r2.one()]);
        assert_eq!(bad.invert(), Err(AlgebraError::NotInvertible));
    }

    #[test]
    fn det_inversion_small() {
        let ring = qring3();
        let f1 = &ring.from_int(2) + &ring.t();
        let f2 = ring.from_int(-3);
        let f = vec![ring.one(), f1.clone(), f2.clone()];
        // g_1 = -f_1, g_2 = f_1^2 - f_2 (2x2 determinant)
        assert_eq!(det_inversion_coeff(ring, &f, 1), -&f1);
        assert_eq!(det_inversion_coeff(ring, &f, 2), &(&f1 * &f1) - &f2);
        // f = u^k: all higher coefficients zero
        let f0 = vec![ring.one()];
        assert!(det_inversion_coeff(ring, &f0, 3).is_zero());
    }

    #[test]
    fn det_inversion_matches_invert() {
        // frozen cross-check on one non-trivial input
        let ring = qring3();
        let f = vec![
            ring.one(),
            &ring.from_int(1) + &ring.t(),
            ring.from_int(-2),
            ring.t(),
        ];
        let prec = 10;
        let mut c = f.clone();
        while c.len() < prec {
            c.push(ring.zero());
        }
        let series = LaurentSeries::new(ring, 0, c);
        let inv = series.invert().unwrap();
        for r in 0..=8 {
            assert_eq!(
                det_inversion_coeff(ring, &f, r),
                inv.coeff_at(-(r as i64)),
                "coefficient r = {r}"
            );
        }
    }

    #[test]
    fn rational_series_examples() {
        let ring = qring();
        // n = u + 3, m = u -> 1 + 3 u^{-1}
        let n = MonicPoly::new(Poly::new(ring, vec![ring.from_int(3), ring.one()])).unwrap();
        let m = MonicPoly::monomial(ring, 1);
        let s = rational_to_series(&n, &m, 6);
        assert_eq!(s.lead_exp(), 0);
        assert_eq!(s.coeff_at(0), ring.one());
        assert_eq!(s.coeff_at(-1), ring.from_int(3));
        assert_eq!(s.coeff_at(-2), ring.zero());

        // n = m -> 1
        let s2 = rational_to_series(&m, &m, 6);
        assert!(s2.is_one_to_precision());

        // n = 1, m = u -> u^{-1}
        let one = MonicPoly::one(ring);
        let s3 = rational_to_series(&one, &m, 6);
        assert_eq!(s3.lead_exp(), -1);
        assert_eq!(s3.coeff_at(-1), ring.one());

        // infinite Grassmannian at scalar level: (n/m)(m/n) = 1
        let s4 = rational_to_series(&m, &n, 6);
        assert!(s.mul(&s4).is_one_to_precision());
    }

    #[test]
    fn symfun_identity() {
        let f = BaseField::Rational;
        assert!(symfun_check(&[FieldElem::from_int(f, 1)]));
        assert!(symfun_check(&[
            FieldElem::from_int(f, 1),
            FieldElem::from_int(f, 2),
            FieldElem::from_int(f, 3),
        ]));
        assert!(symfun_check(&[
            FieldElem::from_ratio(f, 1, 2).unwrap(),
            FieldElem::from_int(f, -3),
            FieldElem::from_int(f, 5),
            FieldElem::from_int(f, 7),
            FieldElem::from_ratio(f, -2, 3).unwrap(),
        ]));
    }
}
