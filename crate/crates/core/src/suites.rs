//! Verification suite drivers: deterministic, seeded instance generation for
//! the randomized checks and fixed sweeps for the relation suites. Both the
//! CLI and the acceptance tests run these.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bkiso::{
    km_generators_full_rank, quantum_t_check, roundtrip_check, verify_cyclotomic_klr,
    verify_klr_relations, KLRGenerators,
};
use crate::error::Result;
use crate::gcq::{
    bubble_factorization_check, bubble_series, derive_km_data, dim_report, end_object_checks,
    reconstruction_check, spectral_closure_check, GCQData,
};
use crate::hecke::HeckeAlgebra;
use crate::localpoly::{cluster_factor, cluster_product, MonicPoly, Poly};
use crate::report::{InstanceReport, SuiteReport};
use crate::scalars::{BaseField, FieldElem, LocalRing, LocalScalar, QuantumParam, SqrtConvention};
use crate::series::{det_inversion_coeff, rational_to_series, symfun_check, LaurentSeries};

/// A named cyclotomic test configuration: the case, coefficient ring and
/// level polynomial, with n = 1 unless stated.
#[derive(Debug, Clone)]
pub struct TestLevel {
    pub name: String,
    pub param: QuantumParam,
    pub ring: LocalRing,
    pub m: MonicPoly,
    pub n: MonicPoly,
}

fn int_poly(ring: LocalRing, ints: &[i64]) -> MonicPoly {
    MonicPoly::new(Poly::new(
        ring,
        ints.iter().map(|&v| ring.from_int(v)).collect(),
    ))
    .expect("monic input")
}

fn add_t_to_constant(p: &MonicPoly) -> MonicPoly {
    let ring = p.ring();
    let mut coeffs: Vec<LocalScalar> = p.poly().coeffs().to_vec();
    coeffs[0] = &coeffs[0] + &ring.t();
    MonicPoly::from_coeffs(ring, coeffs).expect("still monic")
}

/// The standard degenerate test levels over Q: m in {u, u(u-1), u^2-u+t}.
pub fn degenerate_levels() -> Vec<TestLevel> {
    let param = QuantumParam::degenerate(BaseField::Rational);
    let r1 = LocalRing::new(BaseField::Rational, 1).unwrap();
    let r2 = LocalRing::new(BaseField::Rational, 2).unwrap();
    let m1 = int_poly(r1, &[0, 1]);
    let m2 = int_poly(r1, &[0, -1, 1]);
    let m3 = add_t_to_constant(&int_poly(r2, &[0, -1, 1]));
    [("deg-u", m1), ("deg-u(u-1)", m2), ("deg-u^2-u+t", m3)]
        .into_iter()
        .map(|(name, m)| TestLevel {
            name: name.into(),
            param: param.clone(),
            ring: m.ring(),
            n: MonicPoly::one(m.ring()),
            m,
        })
        .collect()
}

/// The quantum analogues at q = 2, roots {1, q^2}: m in
/// {u-1, (u-1)(u-4), (u-1)(u-4)+t}.
pub fn quantum_levels() -> Vec<TestLevel> {
    let q = FieldElem::from_int(BaseField::Rational, 2);
    let param = QuantumParam::quantum(q).unwrap();
    let r1 = LocalRing::new(BaseField::Rational, 1).unwrap();
    let r2 = LocalRing::new(BaseField::Rational, 2).unwrap();
    let m1 = int_poly(r1, &[-1, 1]);
    let m2 = int_poly(r1, &[4, -5, 1]);
    let m3 = add_t_to_constant(&int_poly(r2, &[4, -5, 1]));
    [("q2-u-1", m1), ("q2-(u-1)(u-4)", m2), ("q2-(u-1)(u-4)+t", m3)]
        .into_iter()
        .map(|(name, m)| TestLevel {
            name: name.into(),
            param: param.clone(),
            ring: m.ring(),
            n: MonicPoly::one(m.ring()),
            m,
        })
        .collect()
}

pub fn derive(level: &TestLevel) -> Result<GCQData> {
    derive_km_data(&level.param, &level.m, &level.n, &SqrtConvention::new())
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (salt.wrapping_mul(0x9e3779b97f4a7c15)))
}

fn random_j_poly(
    rng: &mut ChaCha8Rng,
    ring: LocalRing,
    deg_below: usize,
    force_nonzero: bool,
) -> Poly {
    // polynomial with all coefficients in J = (t), degree < deg_below
    loop {
        let mut coeffs = vec![];
        for _ in 0..deg_below {
            let mut c = ring.zero();
            for layer in 1..ring.n {
                let v: i64 = rng.gen_range(-3..=3);
                if v != 0 {
                    c = &c + &ring.from_int(v).mul_t_pow(layer);
                }
            }
            coeffs.push(c);
        }
        let p = Poly::new(ring, coeffs);
        if !force_nonzero || !p.is_zero() {
            return p;
        }
        if deg_below == 0 || ring.n == 1 {
            panic!("cannot draw a nonzero J-polynomial here");
        }
    }
}

/// Hensel suite: on `count` random split monic polynomials over Q[t]/(t^3) of
/// degree <= 6, cluster_factor reconstructs the input exactly, already
/// clustered families are returned unchanged, and any nonzero J-perturbation
/// of one factor breaks the product identity.
pub fn hensel_suite(seed: u64, count: usize) -> SuiteReport {
    let ring = LocalRing::new(BaseField::Rational, 3).unwrap();
    let mut rng = rng_for(seed, 1);
    let mut instances = vec![];
    for case in 0..count {
        // random clustered family: roots with multiplicities, total degree <= 6
        let num_roots = rng.gen_range(1..=3usize);
        let mut roots: Vec<i64> = vec![];
        while roots.len() < num_roots {
            let r = rng.gen_range(-3..=3i64);
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        let mut parts = std::collections::BTreeMap::new();
        let mut total = 0usize;
        for r in &roots {
            let max_mult = (6 - total).min(3).max(1);
            let mult = rng.gen_range(1..=max_mult);
            total += mult;
            // f_i = v^mult + (J-coefficients below)
            let head = MonicPoly::monomial(ring, mult);
            let tail = random_j_poly(&mut rng, ring, mult, false);
            let fi = MonicPoly::new(head.poly().add(&tail)).unwrap();
            parts.insert(FieldElem::from_int(BaseField::Rational, *r), fi);
            if total >= 6 {
                break;
            }
        }
        let f = cluster_product(ring, &parts);
        match cluster_factor(&f) {
            Err(e) => instances.push(InstanceReport::fail(
                format!("hensel case {case}"),
                format!("cluster_factor failed: {e}"),
            )),
            Ok(found) => {
                let same_family = found == parts;
                let product_ok = cluster_product(ring, &found) == f;
                let j_ok = found
                    .values()
                    .all(|fi| fi.poly().lower_coeffs_nilpotent());
                instances.push(InstanceReport::check(
                    format!("hensel case {case}"),
                    same_family && product_ok && j_ok,
                    || "cluster family mismatch".to_string(),
                ));
                // uniqueness: perturb one factor by a nonzero J-polynomial
                let idx = rng.gen_range(0..found.len());
                let (root, fi) = found.iter().nth(idx).unwrap();
                if fi.degree() > 0 {
                    let pert = random_j_poly(&mut rng, ring, fi.degree(), true);
                    let fi2 = MonicPoly::new(fi.poly().add(&pert)).unwrap();
                    let mut perturbed = found.clone();
                    perturbed.insert(root.clone(), fi2);
                    instances.push(InstanceReport::check(
                        format!("hensel perturbation {case}"),
                        cluster_product(ring, &perturbed) != f,
                        || "perturbed family still reproduces f".to_string(),
                    ));
                }
            }
        }
    }
    SuiteReport::new("hensel", instances)
}

/// Series suite: determinantal inversion against direct inversion on random
/// inputs, O * O^{-1} = 1, and the symmetric-function identity.
pub fn series_suite(seed: u64, count: usize, precision: usize) -> SuiteReport {
    let ring = LocalRing::new(BaseField::Rational, 3).unwrap();
    let mut rng = rng_for(seed, 2);
    let mut instances = vec![];
    for case in 0..count {
        // monic-normalized coefficient list f_0 = 1, random f_1..f_4
        let mut f = vec![ring.one()];
        for _ in 0..4 {
            let base = ring.from_int(rng.gen_range(-3..=3i64));
            let tpart = random_j_poly(&mut rng, ring, 1, false)
                .coeffs()
                .first()
                .cloned()
                .unwrap_or_else(|| ring.zero());
            f.push(&base + &tpart);
        }
        let mut padded = f.clone();
        while padded.len() < 10 {
            padded.push(ring.zero());
        }
        let series = LaurentSeries::new(ring, 0, padded);
        let inv = series.invert().expect("unit leading coefficient");
        let ok = (0..=8).all(|r| det_inversion_coeff(ring, &f, r) == inv.coeff_at(-(r as i64)));
        instances.push(InstanceReport::check(
            format!("det-inversion case {case}"),
            ok,
            || "determinant disagrees with series inverse".to_string(),
        ));
    }
    // O(u) O(u)^{-1} = 1 on random split m, n
    let mut rng2 = rng_for(seed, 3);
    for case in 0..count.min(10) {
        let m = random_split_monic(&mut rng2, ring, 3);
        let n = random_split_monic(&mut rng2, ring, 3);
        let o = rational_to_series(&n, &m, precision);
        let ok = o.mul(&o.invert().expect("unit lead")).is_one_to_precision();
        instances.push(InstanceReport::check(
            format!("grassmannian case {case}"),
            ok,
            || "O * O^{-1} != 1".to_string(),
        ));
    }
    for n_vars in 1..=5usize {
        let mut pts = vec![];
        for k in 0..n_vars {
            pts.push(FieldElem::from_int(
                BaseField::Rational,
                rng.gen_range(1..=9i64) + k as i64,
            ));
        }
        instances.push(InstanceReport::check(
            format!("symfun n_vars={n_vars}"),
            symfun_check(&pts),
            || "e(u) h(-u) != 1".to_string(),
        ));
    }
    SuiteReport::new("series", instances)
}

fn random_split_monic(rng: &mut ChaCha8Rng, ring: LocalRing, max_deg: usize) -> MonicPoly {
    let deg = rng.gen_range(1..=max_deg);
    let mut acc = MonicPoly::one(ring);
    for _ in 0..deg {
        let root = ring.from_int(rng.gen_range(-2..=2));
        let lin = MonicPoly::linear(ring, &root);
        let deformed = if ring.n > 1 {
            let tail = random_j_poly(rng, ring, 1, false);
            MonicPoly::new(lin.poly().add(&tail)).unwrap()
        } else {
            lin
        };
        acc = acc.mul(&deformed);
    }
    acc
}

/// Quantum-compatible random split monic: roots in the q^{2Z}-orbit of 1,
/// with unit constant term.
fn random_split_monic_quantum(
    rng: &mut ChaCha8Rng,
    ring: LocalRing,
    q: &FieldElem,
    max_deg: usize,
    exact_deg: bool,
) -> MonicPoly {
    let deg = if exact_deg {
        max_deg
    } else {
        rng.gen_range(1..=max_deg)
    };
    let q2 = q * q;
    let mut acc = MonicPoly::one(ring);
    for _ in 0..deg {
        let e = rng.gen_range(0..=2i64);
        let root_val = q2.pow(e).unwrap();
        let root = ring.from_field(root_val);
        let lin = MonicPoly::linear(ring, &root);
        let deformed = if ring.n > 1 {
            let tail = random_j_poly(rng, ring, 1, false);
            MonicPoly::new(lin.poly().add(&tail)).unwrap()
        } else {
            lin
        };
        acc = acc.mul(&deformed);
    }
    acc
}

/// Dimension suite over a grid of (ell, d, N): basis count against
/// ell^d d! dim Z, the defining relations as identities of normal forms, and
/// associativity of the straightening on seeded random triples.
pub fn dims_suite(seed: u64, quantum: bool, ells: &[usize], d_max: usize, ns: &[usize]) -> SuiteReport {
    let mut instances = vec![];
    for &ell in ells {
        for &n in ns {
            let ring = LocalRing::new(BaseField::Rational, n).unwrap();
            let (param, m) = if quantum {
                let q = FieldElem::from_int(BaseField::Rational, 2);
                let param = QuantumParam::quantum(q.clone()).unwrap();
                // roots 1, q^2, q^4
                let q2 = &q * &q;
                let mut acc = MonicPoly::one(ring);
                let mut root = FieldElem::one(BaseField::Rational);
                for _ in 0..ell {
                    acc = acc.mul(&MonicPoly::linear(ring, &ring.from_field(root.clone())));
                    root = &root * &q2;
                }
                let m = if n > 1 { add_t_to_constant(&acc) } else { acc };
                (param, m)
            } else {
                let param = QuantumParam::degenerate(BaseField::Rational);
                let mut acc = MonicPoly::one(ring);
                for r in 0..ell {
                    acc = acc.mul(&MonicPoly::linear(ring, &ring.from_int(r as i64)));
                }
                let m = if n > 1 { add_t_to_constant(&acc) } else { acc };
                (param, m)
            };
            for d in 0..=d_max {
                let alg = match HeckeAlgebra::cyclotomic(param.clone(), d, ring, m.clone()) {
                    Ok(a) => a,
                    Err(e) => {
                        instances.push(InstanceReport::fail(
                            format!("dims ell={ell} d={d} N={n}"),
                            format!("constructor: {e}"),
                        ));
                        continue;
                    }
                };
                let predicted = ell.pow(d as u32) * (1..=d).product::<usize>().max(1) * n;
                instances.push(InstanceReport::check(
                    format!("dims ell={ell} d={d} N={n}"),
                    alg.dim_k() == predicted,
                    || format!("computed {} != predicted {predicted}", alg.dim_k()),
                ));
                instances.extend(relation_sweep(&alg, ell, d, n));
                instances.extend(associativity_sweep(&alg, seed, ell, d, n, 4));
            }
        }
    }
    SuiteReport::new("dims", instances)
}

/// All defining relations as identities of cyclotomic normal forms.
fn relation_sweep(alg: &HeckeAlgebra, ell: usize, d: usize, n: usize) -> Vec<InstanceReport> {
    let mut out = vec![];
    let key = |s: &str| format!("relations ell={ell} d={d} N={n}: {s}");
    let reduce_ok = |e: &crate::hecke::HeckeElem| alg.cyclotomic_reduce(e).expect("reduces");
    let one = reduce_ok(&alg.one());
    // m(x_1) = 0
    if d >= 1 {
        let level = alg.level().unwrap().clone();
        let mx1 = alg.poly_at_dot(level.poly(), 1);
        out.push(InstanceReport::check(
            key("m(x_1) = 0"),
            mx1.is_zero(),
            || format!("m(x_1) = {mx1}"),
        ));
    }
    // dots commute
    for r in 1..=d {
        for s in r + 1..=d {
            let xr = alg.dot(r);
            let xs = alg.dot(s);
            out.push(InstanceReport::check(
                key(&format!("x_{r} x_{s} = x_{s} x_{r}")),
                alg.mul(&xr, &xs) == alg.mul(&xs, &xr),
                || "dots do not commute".to_string(),
            ));
        }
    }
    for r in 1..d {
        let c = alg.crossing(r);
        if alg.param().is_degenerate() {
            out.push(InstanceReport::check(
                key(&format!("s_{r}^2 = 1")),
                alg.mul(&c, &c) == one,
                || "involution fails".to_string(),
            ));
            let lhs = alg.mul(&c, &alg.dot(r + 1));
            let rhs = alg.mul(&alg.dot(r), &c).add(&one);
            out.push(InstanceReport::check(
                key(&format!("s_{r} x_{}+1 slide", r + 1)),
                lhs == rhs,
                || "dot slide fails".to_string(),
            ));
        } else {
            let z = alg.ring().from_field(alg.param().z().clone());
            let lhs = alg.mul(&c, &c);
            let rhs = c.scale(&z).add(&one);
            out.push(InstanceReport::check(
                key(&format!("tau_{r}^2 = z tau + 1")),
                lhs == rhs,
                || "quadratic fails".to_string(),
            ));
            let conj = alg.product(&[&c, &alg.dot(r), &c]);
            out.push(InstanceReport::check(
                key(&format!("tau_{r} X_{r} tau_{r} = X_{}", r + 1)),
                conj == reduce_ok(&alg.dot(r + 1)),
                || "dot conjugation fails".to_string(),
            ));
            // X_1 X_1^{-1} = 1 via the m(0)-unit inversion
            if r == 1 {
                let x1_inv = alg
                    .cyclotomic_reduce(&alg.monomial(
                        {
                            let mut v = vec![0; d];
                            v[0] = -1;
                            v
                        },
                        crate::hecke::Permutation::identity(d),
                    ))
                    .expect("inverse dot reduces");
                out.push(InstanceReport::check(
                    key("X_1 X_1^{-1} = 1"),
                    alg.mul(&alg.dot(1), &x1_inv) == one,
                    || "dot inverse fails".to_string(),
                ));
            }
        }
        // distant commutation with dots
        for t in 1..=d {
            if t == r || t == r + 1 {
                continue;
            }
            out.push(InstanceReport::check(
                key(&format!("s_{r} x_{t} commute")),
                alg.mul(&c, &alg.dot(t)) == alg.mul(&alg.dot(t), &c),
                || "distant dot commutation fails".to_string(),
            ));
        }
    }
    // braid and distant crossing relations
    for r in 1..d.saturating_sub(1) {
        let a = alg.crossing(r);
        let b = alg.crossing(r + 1);
        out.push(InstanceReport::check(
            key(&format!("braid s_{r} s_{} s_{r}", r + 1)),
            alg.product(&[&a, &b, &a]) == alg.product(&[&b, &a, &b]),
            || "braid fails".to_string(),
        ));
    }
    for r in 1..d {
        for s in r + 2..d {
            let a = alg.crossing(r);
            let b = alg.crossing(s);
            out.push(InstanceReport::check(
                key(&format!("s_{r} s_{s} commute")),
                alg.mul(&a, &b) == alg.mul(&b, &a),
                || "distant crossings fail".to_string(),
            ));
        }
    }
    out
}

fn random_elem(alg: &HeckeAlgebra, rng: &mut ChaCha8Rng, terms: usize) -> crate::hecke::HeckeElem {
    let basis = alg.basis();
    let mut e = alg.zero();
    for _ in 0..terms {
        let b = &basis[rng.gen_range(0..basis.len())];
        let c = alg.ring().from_int(rng.gen_range(-3..=3));
        let mono = alg.monomial(b.exps.clone(), b.perm.clone()).scale(&c);
        e = e.add(&mono);
    }
    e
}

/// (ab)c = a(bc) on seeded random triples of normal-form elements.
fn associativity_sweep(
    alg: &HeckeAlgebra,
    seed: u64,
    ell: usize,
    d: usize,
    n: usize,
    count: usize,
) -> Vec<InstanceReport> {
    let mut rng = rng_for(seed, 1000 + (ell * 64 + d * 8 + n) as u64);
    let mut out = vec![];
    for case in 0..count {
        let a = random_elem(alg, &mut rng, 3);
        let b = random_elem(alg, &mut rng, 3);
        let c = random_elem(alg, &mut rng, 3);
        let lhs = alg.mul(&alg.mul(&a, &b), &c);
        let rhs = alg.mul(&a, &alg.mul(&b, &c));
        out.push(InstanceReport::check(
            format!("assoc ell={ell} d={d} N={n} case {case}"),
            lhs == rhs,
            || "associativity fails".to_string(),
        ));
    }
    out
}

/// KLR relation suite over the standard or supplied levels for d <= d_max.
pub fn klr_suite(levels: &[TestLevel], d_max: usize) -> Result<SuiteReport> {
    let mut instances = vec![];
    for level in levels {
        for d in 0..=d_max {
            let alg = HeckeAlgebra::cyclotomic(level.param.clone(), d, level.ring, level.m.clone())?;
            let gens = KLRGenerators::build(&alg)?;
            let rep = verify_klr_relations(&gens)?;
            for mut inst in rep.instances {
                inst.key = format!("{} d={d} {}", level.name, inst.key);
                instances.push(inst);
            }
        }
    }
    Ok(SuiteReport::new("klr", instances))
}

/// Cyclotomic KLR relation mu_{i_1}(y_1) e(i) = 0 over the given levels.
pub fn cyclotomic_klr_suite(levels: &[TestLevel], d_max: usize) -> Result<SuiteReport> {
    let mut instances = vec![];
    for level in levels {
        let g = derive(level)?;
        for d in 1..=d_max {
            let alg = HeckeAlgebra::cyclotomic(level.param.clone(), d, level.ring, level.m.clone())?;
            let gens = KLRGenerators::build(&alg)?;
            let rep = verify_cyclotomic_klr(&gens, &g)?;
            for mut inst in rep.instances {
                inst.key = format!("{} d={d} {}", level.name, inst.key);
                instances.push(inst);
            }
        }
    }
    Ok(SuiteReport::new("cyclotomic_klr", instances))
}

/// Round-trip suite: Theorem-1 and Theorem-3 assignments compose to the
/// identity on generators, both directions.
pub fn roundtrip_suite(levels: &[TestLevel], d_max: usize) -> Result<SuiteReport> {
    let mut instances = vec![];
    for level in levels {
        for d in 0..=d_max {
            let alg = HeckeAlgebra::cyclotomic(level.param.clone(), d, level.ring, level.m.clone())?;
            let gens = KLRGenerators::build(&alg)?;
            let rep = roundtrip_check(&gens)?;
            for mut inst in rep.instances {
                inst.key = format!("{} d={d} {}", level.name, inst.key);
                instances.push(inst);
            }
        }
    }
    Ok(SuiteReport::new("roundtrip", instances))
}

/// Surjectivity/rank suite: the KLR family generates the full algebra.
pub fn rank_suite(levels: &[TestLevel], d_max: usize) -> Result<SuiteReport> {
    let mut instances = vec![];
    for level in levels {
        for d in 0..=d_max {
            let alg = HeckeAlgebra::cyclotomic(level.param.clone(), d, level.ring, level.m.clone())?;
            let gens = KLRGenerators::build(&alg)?;
            let (rank, dim) = km_generators_full_rank(&gens);
            instances.push(InstanceReport::check(
                format!("{} d={d} full rank", level.name),
                rank == dim,
                || format!("rank {rank} < dim {dim}"),
            ));
        }
    }
    Ok(SuiteReport::new("rank", instances))
}

/// Bubble suite: factorization of O(u) into vertex-local ratios on random
/// GCQ data, plus the determinantal cross-check of the inverse coefficients.
pub fn bubbles_suite(seed: u64, count: usize, precision: usize) -> SuiteReport {
    let mut instances = vec![];
    let mut rng = rng_for(seed, 4);
    for case in 0..count {
        let n_trunc = if case % 2 == 0 { 1 } else { 2 };
        let ring = LocalRing::new(BaseField::Rational, n_trunc).unwrap();
        let quantum = case % 4 >= 2;
        let (param, m, n) = if quantum {
            let q = FieldElem::from_int(BaseField::Rational, 2);
            let param = QuantumParam::quantum(q.clone()).unwrap();
            // equal degrees keep m(0)/n(0) an even q-power, so the
            // distinguished square root for t exists over Q
            let deg = rng.gen_range(1..=2usize);
            let m = random_split_monic_quantum(&mut rng, ring, &q, deg, true);
            let n = random_split_monic_quantum(&mut rng, ring, &q, deg, true);
            (param, m, n)
        } else {
            let param = QuantumParam::degenerate(BaseField::Rational);
            (
                param,
                random_split_monic(&mut rng, ring, 3),
                random_split_monic(&mut rng, ring, 3),
            )
        };
        let tag = if quantum { "quantum" } else { "degenerate" };
        match derive_km_data(&param, &m, &n, &SqrtConvention::new()) {
            Err(e) => instances.push(InstanceReport::fail(
                format!("bubble {tag} case {case}"),
                format!("derivation failed: {e}"),
            )),
            Ok(g) => {
                let fact = bubble_factorization_check(&g, precision).unwrap_or(false);
                instances.push(InstanceReport::check(
                    format!("bubble {tag} case {case} factorization"),
                    fact,
                    || "product of vertex ratios differs from O(u)".to_string(),
                ));
                if let Ok(b) = bubble_series(&g, precision) {
                    instances.push(InstanceReport::check(
                        format!("bubble {tag} case {case} inverse"),
                        b.series.mul(&b.inverse).is_one_to_precision(),
                        || "O O^{-1} != 1".to_string(),
                    ));
                    // determinantal cross-check on the monic-normalized tail
                    let k = g.charge;
                    let prec = b.series.precision().min(9);
                    let f: Vec<LocalScalar> =
                        (0..prec).map(|j| b.series.coeff_at(k - j as i64)).collect();
                    let ok = (0..prec)
                        .all(|r| det_inversion_coeff(g.ring, &f, r) == b.inverse.coeff_at(-k - r as i64));
                    instances.push(InstanceReport::check(
                        format!("bubble {tag} case {case} determinant"),
                        ok,
                        || "negatively dotted coefficients disagree".to_string(),
                    ));
                }
                if let Ok(rep) = reconstruction_check(&g) {
                    instances.push(InstanceReport::check(
                        format!("bubble {tag} case {case} reconstruction"),
                        rep.pass,
                        || "boring/music reconstruction failed".to_string(),
                    ));
                }
            }
        }
    }
    SuiteReport::new("bubbles", instances)
}

/// End-object suite over the given levels.
pub fn endchecks_suite(levels: &[TestLevel]) -> Result<SuiteReport> {
    let mut instances = vec![];
    for level in levels {
        let g = derive(level)?;
        let rep = end_object_checks(&g)?;
        for mut inst in rep.instances {
            inst.key = format!("{} {}", level.name, inst.key);
            instances.push(inst);
        }
        let rec = reconstruction_check(&g)?;
        for mut inst in rec.instances {
            inst.key = format!("{} {}", level.name, inst.key);
            instances.push(inst);
        }
    }
    Ok(SuiteReport::new("endchecks", instances))
}

/// Quantum t-parameter suite.
pub fn tparam_suite(levels: &[TestLevel], d_max: usize) -> Result<SuiteReport> {
    let mut instances = vec![];
    for level in levels {
        if level.param.is_degenerate() {
            continue;
        }
        let g = derive(level)?;
        let rep = quantum_t_check(&g, &SqrtConvention::new(), d_max)?;
        for mut inst in rep.instances {
            inst.key = format!("{} {}", level.name, inst.key);
            instances.push(inst);
        }
    }
    Ok(SuiteReport::new("tparam", instances))
}

/// Spectral closure suite over the given levels.
pub fn closure_suite(levels: &[TestLevel], d_max: usize) -> Result<SuiteReport> {
    let mut instances = vec![];
    for level in levels {
        let g = derive(level)?;
        let rep = spectral_closure_check(&g, d_max)?;
        for mut inst in rep.instances {
            inst.key = format!("{} {}", level.name, inst.key);
            instances.push(inst);
        }
    }
    Ok(SuiteReport::new("spectral_closure", instances))
}

/// Dimension-report suite including the per-weight block breakdown.
pub fn dim_report_suite(levels: &[TestLevel], d_max: usize) -> Result<SuiteReport> {
    let mut instances = vec![];
    for level in levels {
        let g = derive(level)?;
        let rows = dim_report(&g, d_max)?;
        for row in rows {
            let blocks: Vec<String> = row
                .weight_blocks
                .iter()
                .map(|(w, dim)| format!("[{w}]: {dim}"))
                .collect();
            instances.push(InstanceReport::check(
                format!("{} dim d={}", level.name, row.d),
                row.pass,
                || format!("computed {} predicted {}", row.computed, row.predicted),
            ));
            instances.push(InstanceReport::pass(format!(
                "{} blocks d={}: {}",
                level.name,
                row.d,
                blocks.join(", ")
            )));
        }
    }
    Ok(SuiteReport::new("dim_report", instances))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hensel_suite_small() {
        let rep = hensel_suite(0, 5);
        assert!(rep.pass, "failures: {:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn series_suite_small() {
        let rep = series_suite(0, 5, 12);
        assert!(rep.pass, "failures: {:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn dims_suite_small() {
        let rep = dims_suite(0, false, &[1, 2], 2, &[1, 2]);
        assert!(rep.pass, "failures: {:?}", rep.failures().collect::<Vec<_>>());
        let repq = dims_suite(0, true, &[1, 2], 2, &[1]);
        assert!(repq.pass, "failures: {:?}", repq.failures().collect::<Vec<_>>());
    }

    #[test]
    fn bubbles_suite_small() {
        let rep = bubbles_suite(0, 6, 12);
        assert!(rep.pass, "failures: {:?}", rep.failures().collect::<Vec<_>>());
    }
}
