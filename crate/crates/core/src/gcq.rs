//! Generalized cyclotomic quotient bookkeeping: deriving the Kac-Moody data
//! (mu, nu, mu_i, nu_i, kappa) from the Heisenberg data (m, n) by Hensel
//! clustering, the bubble series O(u) = n(u)/m(u) and its factorization into
//! vertex-local ratios, endomorphism-ring checks and dimension reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::hecke::HeckeAlgebra;
use crate::localpoly::{cluster_factor, MonicPoly};
use crate::report::{InstanceReport, SuiteReport};
use crate::scalars::{FieldElem, LocalRing, LocalScalar, QuantumParam, SqrtConvention};
use crate::series::{poly_over_monic, rational_to_series, LaurentSeries};
use crate::spectral::{block_idempotents, spectrum};
use crate::weights::{OrbitRegistry, Vertex, Weight};

/// The data of a generalized cyclotomic quotient H_Z(m|n) together with the
/// derived Kac-Moody data.
#[derive(Debug, Clone)]
pub struct GCQData {
    pub param: QuantumParam,
    pub ring: LocalRing,
    pub m: MonicPoly,
    pub n: MonicPoly,
    pub registry: OrbitRegistry,
    /// vertices actually touched by roots of the residues of m and n
    pub vertices: Vec<Vertex>,
    pub mu: Weight,
    pub nu: Weight,
    pub kappa: Weight,
    /// mu_i(v) in v^{<h_i,mu>} + J[v], keyed by vertex
    pub mu_polys: BTreeMap<Vertex, MonicPoly>,
    pub nu_polys: BTreeMap<Vertex, MonicPoly>,
    /// central charge k = deg n - deg m
    pub charge: i64,
    /// level ell = deg m
    pub level: usize,
    /// quantum parameter t = sqrt(m(0)/n(0)), quantum case only
    pub t_param: Option<LocalScalar>,
}

impl GCQData {
    pub fn is_degenerate(&self) -> bool {
        self.param.is_degenerate()
    }
}

/// Derive the Kac-Moody side from monic m(u), n(u) over Z.
///
/// Additive Hensel clusters m(u) = prod m_i(u - i) are computed in both
/// cases; the quantum normalization mu_i(v) = i^{-p} m_i(i v) turns them into
/// the multiplicative form m(u) = prod i^{<h_i,mu>} mu_i(u/i - 1).
pub fn derive_km_data(
    param: &QuantumParam,
    m: &MonicPoly,
    n: &MonicPoly,
    conv: &SqrtConvention,
) -> Result<GCQData> {
    let ring = m.ring();
    if n.ring() != ring {
        return Err(AlgebraError::config("m and n over different rings"));
    }
    if !param.is_degenerate() {
        if !m.constant_term().is_unit() || !n.constant_term().is_unit() {
            return Err(AlgebraError::InvalidLevelData(
                "quantum case needs unit constant terms m(0), n(0)".into(),
            ));
        }
    }
    let m_clusters = cluster_factor(m)?;
    let n_clusters = cluster_factor(n)?;

    let mut registry = OrbitRegistry::new(param.clone());
    // register all roots in canonical order for deterministic orbit ids
    let mut all_roots: Vec<FieldElem> = m_clusters
        .keys()
        .chain(n_clusters.keys())
        .cloned()
        .collect();
    all_roots.sort();
    all_roots.dedup();
    let mut vertices = vec![];
    for root in &all_roots {
        vertices.push(registry.register(root)?);
    }
    vertices.sort();
    vertices.dedup();

    let mut mu = Weight::zero();
    let mut nu = Weight::zero();
    let mut mu_polys = BTreeMap::new();
    let mut nu_polys = BTreeMap::new();
    for (clusters, weight, polys) in [
        (&m_clusters, &mut mu, &mut mu_polys),
        (&n_clusters, &mut nu, &mut nu_polys),
    ] {
        for (root, cluster) in clusters.iter() {
            let v = registry
                .vertex_of(root)
                .expect("root registered above");
            weight.add_term(v, cluster.degree() as i64);
            let km_poly = if param.is_degenerate() {
                cluster.clone()
            } else {
                // mu_i(v) = i^{-p} m_i(i v)
                let i_val = ring.from_field(root.clone());
                cluster.scale_var_normalized(&i_val)?
            };
            polys.insert(v, km_poly);
        }
    }
    let kappa = nu.sub(&mu);
    let charge = n.degree() as i64 - m.degree() as i64;
    let t_param = if param.is_degenerate() {
        None
    } else {
        let ratio = &m.constant_term() * &n.constant_term().inv_unit()?;
        Some(ratio.sqrt_unit(conv)?)
    };
    Ok(GCQData {
        param: param.clone(),
        ring,
        m: m.clone(),
        n: n.clone(),
        registry,
        vertices,
        mu,
        nu,
        kappa,
        mu_polys,
        nu_polys,
        charge,
        level: m.degree(),
        t_param,
    })
}

/// Default working precision: deg m + deg n + 2 d_max + 4.
pub fn default_precision(g: &GCQData, d_max: usize) -> usize {
    g.m.degree() + g.n.degree() + 2 * d_max + 4
}

/// The bubble generating series O(u) = n(u)/m(u) and its coefficient
/// extractions O^{(r)}, Otilde^{(r)} under the degenerate and quantum
/// conventions.
pub struct BubbleSeries {
    pub series: LaurentSeries,
    pub inverse: LaurentSeries,
    /// O^{(r)} keyed by r
    pub coeffs: BTreeMap<i64, LocalScalar>,
    /// Otilde^{(r)} keyed by r
    pub inv_coeffs: BTreeMap<i64, LocalScalar>,
}

pub fn bubble_series(g: &GCQData, precision: usize) -> Result<BubbleSeries> {
    let series = rational_to_series(&g.n, &g.m, precision);
    let inverse = series.invert()?;
    let mut coeffs = BTreeMap::new();
    let mut inv_coeffs = BTreeMap::new();
    let k = g.charge;
    if g.is_degenerate() {
        // O(u) = sum O^{(r)} u^{-r-1}, O(u)^{-1} = -sum Otilde^{(r)} u^{-r-1}
        for j in 0..precision as i64 {
            coeffs.insert(-k - 1 + j, series.coeff_at(k - j));
            inv_coeffs.insert(k - 1 + j, -&inverse.coeff_at(-k - j));
        }
    } else {
        // O(u) = z sqrt(n(0)/m(0)) sum O^{(r)} u^{-r}
        let t = g.t_param.clone().expect("quantum data");
        let z = g.ring.from_field(g.param.z().clone());
        // z sqrt(n(0)/m(0)) = z / t
        let front = &z * &t.inv_unit()?;
        let front_inv = front.inv_unit()?;
        // O(u)^{-1} = -z sqrt(m(0)/n(0)) sum Otilde^{(r)} u^{-r}
        let back = &z * &t;
        let back_inv = back.inv_unit()?;
        for j in 0..precision as i64 {
            coeffs.insert(-k + j, &series.coeff_at(k - j) * &front_inv);
            inv_coeffs.insert(k + j, -&(&inverse.coeff_at(-k - j) * &back_inv));
        }
    }
    Ok(BubbleSeries {
        series,
        inverse,
        coeffs,
        inv_coeffs,
    })
}

/// Check the bubble factorization: the product of the vertex-local ratios
/// nu_i/mu_i, evaluated at u - i (degenerate) or i^{<h_i,kappa>} (nu_i/mu_i)
/// at u/i - 1 (quantum), reconstructs O(u) to the given precision.
pub fn bubble_factorization_check(g: &GCQData, precision: usize) -> Result<bool> {
    let o = rational_to_series(&g.n, &g.m, precision);
    let ring = g.ring;
    let mut product = LaurentSeries::one(ring, precision);
    for v in &g.vertices {
        let one = MonicPoly::one(ring);
        let mu_i = g.mu_polys.get(v).unwrap_or(&one).clone();
        let nu_i = g.nu_polys.get(v).unwrap_or(&one).clone();
        let i_val = ring.from_field(g.registry.value_of(*v));
        let (num, den) = if g.is_degenerate() {
            // nu_i(u - i) / mu_i(u - i)
            (nu_i.shift(&(-&i_val)), mu_i.shift(&(-&i_val)))
        } else {
            // i^{<h_i,kappa>} nu_i(u/i - 1) / mu_i(u/i - 1): the i-powers
            // cancel against the monic normalizations i^{deg} p(u/i - 1),
            // since <h_i,kappa> = deg nu_i - deg mu_i.
            debug_assert_eq!(
                g.kappa.pairing(*v),
                g.nu.pairing(*v) - g.mu.pairing(*v)
            );
            (
                quantum_vertex_poly(&nu_i, &i_val)?,
                quantum_vertex_poly(&mu_i, &i_val)?,
            )
        };
        let num_series = poly_over_monic(num.poly(), &den, precision);
        product = product.mul(&num_series);
    }
    Ok(series_eq_to_precision(&product, &o, precision))
}

/// i^{deg p} * p(u/i - 1) as a monic polynomial in u: coefficient j of
/// p(u - 1) picks up i^{deg - j}.
fn quantum_vertex_poly(p: &MonicPoly, i_val: &LocalScalar) -> Result<MonicPoly> {
    let ring = p.ring();
    let shifted = p.shift(&(-&ring.one()));
    let d = shifted.degree();
    let mut pow = ring.one();
    let mut scaled = vec![ring.zero(); d + 1];
    for j in (0..=d).rev() {
        scaled[j] = &shifted.coeff(j) * &pow;
        pow = &pow * i_val;
    }
    MonicPoly::from_coeffs(ring, scaled)
}

fn series_eq_to_precision(a: &LaurentSeries, b: &LaurentSeries, precision: usize) -> bool {
    let top = a.lead_exp().max(b.lead_exp());
    let bottom_a = a.lead_exp() - a.precision() as i64 + 1;
    let bottom_b = b.lead_exp() - b.precision() as i64 + 1;
    let bottom = bottom_a.max(bottom_b).max(top - precision as i64 + 1);
    for e in (bottom..=top).rev() {
        if a.coeff_at(e) != b.coeff_at(e) {
            return false;
        }
    }
    true
}

/// End(EP) and End(E_i P) checks on the d = 1 cyclotomic algebra: the
/// minimal polynomial of x_1 is the residue of m, the algebra has dimension
/// ell * dim Z, and the blocks match the Hensel cluster degrees.
pub fn end_object_checks(g: &GCQData) -> Result<SuiteReport> {
    let mut instances = vec![];
    let alg = HeckeAlgebra::cyclotomic(g.param.clone(), 1, g.ring, g.m.clone())?;
    let mp = alg.min_poly(&alg.dot(1));
    instances.push(InstanceReport::check(
        "min_poly(x_1) = residue(m)",
        mp == g.m.residue(),
        || format!("got {mp}"),
    ));
    let expected_dim = g.level * g.ring.dim();
    instances.push(InstanceReport::check(
        "dim End(EP) = ell * dim Z",
        alg.dim_k() == expected_dim,
        || format!("got {}", alg.dim_k()),
    ));
    let blocks = block_idempotents(&alg)?;
    for b in &blocks {
        let v = g
            .registry
            .vertex_of(&b.tuple[0])
            .ok_or(AlgebraError::NotSplit)?;
        let mu_i = g
            .mu_polys
            .get(&v)
            .ok_or_else(|| AlgebraError::config("block eigenvalue is not a root of m"))?;
        let expected = mu_i.degree() * g.ring.dim();
        let got = crate::spectral::block_dimension(&alg, b);
        instances.push(InstanceReport::check(
            format!("dim End(E_i P) at i = {}: deg mu_i * dim Z", b.tuple[0]),
            got == expected,
            || format!("got {got}, expected {expected}"),
        ));
    }
    instances.push(InstanceReport::check(
        "number of blocks = number of distinct roots of residue(m)",
        blocks.len() == g.mu_polys.len(),
        || format!("got {} blocks", blocks.len()),
    ));
    Ok(SuiteReport::new("endchecks", instances))
}

/// One row of the dimension report.
#[derive(Debug, Clone, Serialize)]
pub struct DimRow {
    pub d: usize,
    pub computed: usize,
    pub predicted: usize,
    /// per-weight two-sided block dimensions, keyed by a display string
    pub weight_blocks: Vec<(String, usize)>,
    pub pass: bool,
}

/// Dimension table dim_k H_d^m(Z) = ell^d d! dim Z for d <= d_max, with the
/// per-weight breakdown of (cup): blocks grouped by kappa + sum alpha_{i_r}.
pub fn dim_report(g: &GCQData, d_max: usize) -> Result<Vec<DimRow>> {
    let mut rows = vec![];
    for d in 0..=d_max {
        let predicted = g.level.pow(d as u32) * factorial(d) * g.ring.dim();
        let alg = HeckeAlgebra::cyclotomic(g.param.clone(), d, g.ring, g.m.clone())?;
        let computed = alg.dim_k();
        let blocks = block_idempotents(&alg)?;
        // group blocks by weight kappa + sum alpha_{i_r}
        let mut by_weight: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (bi, b) in blocks.iter().enumerate() {
            let mut w = g.kappa.clone();
            for i in &b.tuple {
                let v = g
                    .registry
                    .vertex_of(i)
                    .ok_or(AlgebraError::NotSplit)?;
                w = w.add(&g.registry.alpha(v));
            }
            by_weight.entry(w).or_default().push(bi);
        }
        // two-sided piece dimensions: rank of E_w H E_w over k
        let mut weight_blocks = vec![];
        let mut total = 0usize;
        for (w, idxs) in &by_weight {
            let mut e_w = alg.zero();
            for &bi in idxs {
                e_w = e_w.add(&blocks[bi].elem);
            }
            let mut space = crate::linalg::RowSpace::new(alg.dim_k());
            let n = alg.ring().dim();
            for b in alg.basis() {
                for j in 0..n {
                    let be = alg
                        .monomial(b.exps.clone(), b.perm.clone())
                        .scale(&alg.ring().one().mul_t_pow(j));
                    let v = alg.mul(&alg.mul(&e_w, &be), &e_w);
                    space.insert(alg.sparse_coords(&v));
                }
            }
            let dim = space.rank();
            total += dim;
            weight_blocks.push((format_weight(g, w), dim));
        }
        let pass = computed == predicted && total == computed;
        rows.push(DimRow {
            d,
            computed,
            predicted,
            weight_blocks,
            pass,
        });
    }
    Ok(rows)
}

fn factorial(d: usize) -> usize {
    (1..=d).product::<usize>().max(1)
}

pub fn format_weight(g: &GCQData, w: &Weight) -> String {
    if w.is_zero() {
        return "0".to_string();
    }
    let parts: Vec<String> = w
        .support()
        .map(|(v, c)| format!("{c}*L[{}]", g.registry.value_of(*v)))
        .collect();
    parts.join(" + ")
}

/// Reconstruction of (m, n) from the derived vertex data via the boring/music
/// identities, plus the weight bookkeeping invariants.
pub fn reconstruction_check(g: &GCQData) -> Result<SuiteReport> {
    let ring = g.ring;
    let mut instances = vec![];
    for (name, clusters, weight, target) in [
        ("m", &g.mu_polys, &g.mu, &g.m),
        ("n", &g.nu_polys, &g.nu, &g.n),
    ] {
        let mut acc = MonicPoly::one(ring);
        for (v, p) in clusters {
            let i_val = ring.from_field(g.registry.value_of(*v));
            let factor = if g.is_degenerate() {
                // p(u - i)
                p.shift(&(-&i_val))
            } else {
                // i^{<h_i,w>} p(u/i - 1)
                debug_assert_eq!(weight.pairing(*v), p.degree() as i64);
                quantum_vertex_poly(p, &i_val)?
            };
            acc = acc.mul(&factor);
        }
        instances.push(InstanceReport::check(
            format!("reconstruct {name} from vertex data"),
            acc == *target,
            || format!("got {acc}"),
        ));
        // <h_i, w> = deg w_i
        for (v, p) in clusters {
            instances.push(InstanceReport::check(
                format!("deg {name}_i = pairing at {}", g.registry.value_of(*v)),
                weight.pairing(*v) == p.degree() as i64,
                || "degree mismatch".to_string(),
            ));
        }
    }
    // central charge: sum_i <h_i, kappa> = k
    instances.push(InstanceReport::check(
        "sum <h_i, kappa> = k",
        g.kappa.central_charge() == g.charge,
        || format!("kappa charge {}", g.kappa.central_charge()),
    ));
    // zero/pole order of residue(O) at i equals <h_i, kappa>
    for v in &g.vertices {
        let ord_n = g.nu.pairing(*v);
        let ord_m = g.mu.pairing(*v);
        instances.push(InstanceReport::check(
            format!("order of O at {}", g.registry.value_of(*v)),
            ord_n - ord_m == g.kappa.pairing(*v),
            || "order mismatch".to_string(),
        ));
    }
    Ok(SuiteReport::new("reconstruction", instances))
}

/// Spectral closure: every eigenvalue of every dot x_r, for d <= d_max, lies
/// in the trajectory closure I of the roots of residue(m), residue(n).
pub fn spectral_closure_check(g: &GCQData, d_max: usize) -> Result<SuiteReport> {
    let mut instances = vec![];
    for d in 1..=d_max {
        let alg = HeckeAlgebra::cyclotomic(g.param.clone(), d, g.ring, g.m.clone())?;
        for r in 1..=d {
            let spec = spectrum(&alg, r)?;
            for ev in spec.keys() {
                instances.push(InstanceReport::check(
                    format!("d={d} x_{r} eigenvalue {ev} in I"),
                    g.registry.vertex_of(ev).is_some(),
                    || format!("{ev} outside every registered orbit"),
                ));
            }
        }
    }
    Ok(SuiteReport::new("spectral_closure", instances))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localpoly::Poly;
    use crate::scalars::BaseField;

    fn qring(n: usize) -> LocalRing {
        LocalRing::new(BaseField::Rational, n).unwrap()
    }

    #[test]
    fn derive_degenerate_example() {
        // m = u, n = u + 3 over Q: mu = L_0, nu = L_{-3}, k = 0, ell = 1
        let ring = qring(1);
        let m = MonicPoly::monomial(ring, 1);
        let n = MonicPoly::from_coeffs(ring, vec![ring.from_int(3), ring.one()]).unwrap();
        let param = QuantumParam::degenerate(BaseField::Rational);
        let g = derive_km_data(&param, &m, &n, &SqrtConvention::new()).unwrap();
        assert_eq!(g.charge, 0);
        assert_eq!(g.level, 1);
        assert_eq!(g.vertices.len(), 2);
        // both roots on one Z-orbit
        assert_eq!(g.vertices[0].orbit, g.vertices[1].orbit);
        assert_eq!(g.mu.central_charge(), 1);
        assert_eq!(g.nu.central_charge(), 1);
        assert!(g.kappa.central_charge() == 0);
        assert!(reconstruction_check(&g).unwrap().pass);
        // m = n: mu = nu, kappa = 0
        let g2 = derive_km_data(&param, &m, &m, &SqrtConvention::new()).unwrap();
        assert!(g2.kappa.is_zero());
        assert_eq!(g2.charge, 0);
    }

    #[test]
    fn derive_deformed_example() {
        // m = u^2 - u + t over Q[t]/(t^2), n = 1: mu_0 = v - t, mu_1 = v + t,
        // nu = 0, k = -2
        let ring = qring(2);
        let m = MonicPoly::new(Poly::new(
            ring,
            vec![ring.t(), -&ring.one(), ring.one()],
        ))
        .unwrap();
        let n = MonicPoly::one(ring);
        let param = QuantumParam::degenerate(BaseField::Rational);
        let g = derive_km_data(&param, &m, &n, &SqrtConvention::new()).unwrap();
        assert_eq!(g.charge, -2);
        assert!(g.nu.is_zero());
        assert_eq!(g.mu_polys.len(), 2);
        let zero_v = g
            .registry
            .vertex_of(&FieldElem::from_int(BaseField::Rational, 0))
            .unwrap();
        assert_eq!(
            g.mu_polys[&zero_v],
            MonicPoly::new(Poly::new(ring, vec![-&ring.t(), ring.one()])).unwrap()
        );
        assert!(reconstruction_check(&g).unwrap().pass);
    }

    #[test]
    fn bubbles_degenerate() {
        let ring = qring(1);
        let m = MonicPoly::monomial(ring, 1);
        let n = MonicPoly::from_coeffs(ring, vec![ring.from_int(3), ring.one()]).unwrap();
        let param = QuantumParam::degenerate(BaseField::Rational);
        let g = derive_km_data(&param, &m, &n, &SqrtConvention::new()).unwrap();
        let b = bubble_series(&g, 12).unwrap();
        // O(u) = 1 + 3u^{-1}: O^{(-1)} = 1, O^{(0)} = 3, O^{(r>=1)} = 0
        assert!(b.coeffs[&-1].is_one());
        assert_eq!(b.coeffs[&0], ring.from_int(3));
        assert!(b.coeffs[&1].is_zero());
        assert!(b.coeffs[&2].is_zero());
        // O * O^{-1} = 1
        assert!(b.series.mul(&b.inverse).is_one_to_precision());
        // factorization
        assert!(bubble_factorization_check(&g, 12).unwrap());
        // m = n: O = 1
        let g2 = derive_km_data(&param, &m, &m, &SqrtConvention::new()).unwrap();
        let b2 = bubble_series(&g2, 12).unwrap();
        assert!(b2.series.is_one_to_precision());
        assert!(bubble_factorization_check(&g2, 12).unwrap());
    }

    #[test]
    fn quantum_t_and_bubbles() {
        // m = u - 1, n = u - q^{-2} with q = 2: t = sqrt(m(0)/n(0)) = sqrt(4) = 2
        let ring = qring(1);
        let q = FieldElem::from_int(BaseField::Rational, 2);
        let param = QuantumParam::quantum(q).unwrap();
        let m = MonicPoly::from_coeffs(ring, vec![ring.from_int(-1), ring.one()]).unwrap();
        let n = MonicPoly::from_coeffs(
            ring,
            vec![
                -&ring.from_field(FieldElem::from_ratio(BaseField::Rational, 1, 4).unwrap()),
                ring.one(),
            ],
        )
        .unwrap();
        let g = derive_km_data(&param, &m, &n, &SqrtConvention::new()).unwrap();
        assert_eq!(g.t_param.clone().unwrap(), ring.from_int(2));
        assert!(bubble_factorization_check(&g, 12).unwrap());
        assert!(reconstruction_check(&g).unwrap().pass);
    }

    #[test]
    fn dims_and_endchecks() {
        let ring = qring(1);
        let m = MonicPoly::monomial(ring, 1);
        let n = MonicPoly::from_coeffs(ring, vec![ring.from_int(3), ring.one()]).unwrap();
        let param = QuantumParam::degenerate(BaseField::Rational);
        let g = derive_km_data(&param, &m, &n, &SqrtConvention::new()).unwrap();
        let rows = dim_report(&g, 3).unwrap();
        assert_eq!(rows[0].computed, 1);
        assert_eq!(rows[3].computed, 6);
        assert!(rows.iter().all(|r| r.pass));
        assert!(end_object_checks(&g).unwrap().pass);
        assert!(spectral_closure_check(&g, 2).unwrap().pass);
    }
}
