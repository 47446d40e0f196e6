//! Exact dense/sparse linear algebra over the base field: Gaussian
//! elimination, rank accumulation and Krylov-style minimal polynomials.

use crate::scalars::{BaseField, FieldElem};

/// Dense column-major-free matrix over k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zero(field: BaseField, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![FieldElem::zero(field); rows * cols],
        }
    }

    pub fn identity(field: BaseField, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = FieldElem::one(field);
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &FieldElem {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut FieldElem {
        &mut self.data[r * self.cols + c]
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let field = self.data[0].field();
        let mut out = Matrix::zero(field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.at(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let c = out.at(i, j).clone();
                    *out.at_mut(i, j) = &c + &(a * b);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(self.cols, v.len());
        let field = self.data[0].field();
        let mut out = vec![FieldElem::zero(field); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                *o = &*o + &(self.at(i, j) * x);
            }
        }
        out
    }

    pub fn trace(&self) -> FieldElem {
        let field = self.data[0].field();
        let mut t = FieldElem::zero(field);
        for i in 0..self.rows.min(self.cols) {
            t = &t + self.at(i, i);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElem::is_zero)
    }

    /// Solve A x = b; None when singular or inconsistent.
    pub fn solve(&self, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
        assert_eq!(self.rows, b.len());
        let field = self.data[0].field();
        let n = self.rows;
        let m = self.cols;
        // augmented elimination
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        let mut pivot_cols = vec![];
        let mut row = 0;
        for col in 0..m {
            let Some(p) = (row..n).find(|&r| !a.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m {
                    let tmp = a.at(p, c).clone();
                    *a.at_mut(p, c) = a.at(row, c).clone();
                    *a.at_mut(row, c) = tmp;
                }
                rhs.swap(p, row);
            }
            let inv = a.at(row, col).inv().ok()?;
            for c in 0..m {
                let v = a.at(row, c).clone();
                *a.at_mut(row, c) = &v * &inv;
            }
            rhs[row] = &rhs[row] * &inv;
            for r in 0..n {
                if r == row || a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col).clone();
                for c in 0..m {
                    let v = &*a.at(r, c) - &(&factor * a.at(row, c));
                    *a.at_mut(r, c) = v;
                }
                rhs[r] = &rhs[r] - &(&factor * &rhs[row]);
            }
            pivot_cols.push((row, col));
            row += 1;
            if row == n {
                break;
            }
        }
        // consistency: zero rows must have zero rhs
        for r in row..n {
            if !rhs[r].is_zero() {
                return None;
            }
        }
        let mut x = vec![FieldElem::zero(field); m];
        for (r, c) in pivot_cols {
            x[c] = rhs[r].clone();
        }
        Some(x)
    }
}

/// Incremental row space over k with exact pivots; rows are sparse
/// (index, value) lists with strictly increasing indices.
#[derive(Debug, Clone)]
pub struct RowSpace {
    dim: usize,
    /// pivot column -> reduced row (pivot normalized to 1)
    rows: std::collections::BTreeMap<usize, Vec<(usize, FieldElem)>>,
}

impl RowSpace {
    pub fn new(dim: usize) -> RowSpace {
        RowSpace {
            dim,
            rows: std::collections::BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce a vector against the current space; returns the remainder.
    pub fn reduce(&self, mut v: Vec<(usize, FieldElem)>) -> Vec<(usize, FieldElem)> {
        loop {
            v.retain(|(_, a)| !a.is_zero());
            let Some(&(lead, ref c)) = v.first() else {
                return v;
            };
            let Some(row) = self.rows.get(&lead) else {
                return v;
            };
            let factor = c.clone();
            v = sparse_axpy(&v, row, &factor);
        }
    }

    /// Insert a vector; returns true when it increased the rank.
    pub fn insert(&mut self, v: Vec<(usize, FieldElem)>) -> bool {
        let mut rem = self.reduce(v);
        rem.retain(|(_, a)| !a.is_zero());
        let Some((lead, c)) = rem.first().cloned() else {
            return false;
        };
        assert!(lead < self.dim);
        let inv = c.inv().expect("nonzero pivot");
        let normalized: Vec<(usize, FieldElem)> =
            rem.iter().map(|(i, a)| (*i, a * &inv)).collect();
        self.rows.insert(lead, normalized);
        true
    }

    pub fn contains(&self, v: Vec<(usize, FieldElem)>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// v - factor * row, merging sparse representations.
fn sparse_axpy(
    v: &[(usize, FieldElem)],
    row: &[(usize, FieldElem)],
    factor: &FieldElem,
) -> Vec<(usize, FieldElem)> {
    let mut out = Vec::with_capacity(v.len() + row.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < row.len() {
        if j >= row.len() || (i < v.len() && v[i].0 < row[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i >= v.len() || row[j].0 < v[i].0 {
            out.push((row[j].0, -&(factor * &row[j].1)));
            j += 1;
        } else {
            let val = &v[i].1 - &(factor * &row[j].1);
            if !val.is_zero() {
                out.push((v[i].0, val));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Minimal monic polynomial p with p(A) v0 = 0, as low-first coefficients
/// over k, where the operator is given as a closure.
///
/// For a faithful cyclic action (regular representation applied to the
/// identity element) this is the minimal polynomial of the algebra element.
pub fn annihilator_poly(
    field: BaseField,
    v0: Vec<FieldElem>,
    apply: impl Fn(&[FieldElem]) -> Vec<FieldElem>,
) -> Vec<FieldElem> {
    let dim = v0.len();
    // Krylov vectors as rows; solve for the first linear dependence.
    let mut krylov: Vec<Vec<FieldElem>> = vec![v0.clone()];
    let mut space = RowSpace::new(dim);
    let mut reduced_combos: Vec<Vec<FieldElem>> = vec![];
    // maintain elimination with coordinates of combinations
    loop {
        let k = krylov.len() - 1;
        let latest = krylov[k].clone();
        let sparse: Vec<(usize, FieldElem)> = latest
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (i, a.clone()))
            .collect();
        if !space.insert(sparse) {
            // dependence: solve sum c_j A^j v0 = 0 with c_k = 1 by dense solve
            let cols = k + 1;
            let mut m = Matrix::zero(field, dim, cols);
            for (j, kv) in krylov.iter().enumerate() {
                for (i, a) in kv.iter().enumerate() {
                    *m.at_mut(i, j) = a.clone();
                }
            }
            // solve m * c = 0 with last coordinate 1: move last column to rhs
            let mut mm = Matrix::zero(field, dim, cols - 1);
            let mut rhs = vec![FieldElem::zero(field); dim];
            for r in 0..dim {
                for c in 0..cols - 1 {
                    *mm.at_mut(r, c) = m.at(r, c).clone();
                }
                rhs[r] = -m.at(r, cols - 1);
            }
            let sol = mm.solve(&rhs).expect("dependence exists");
            let mut coeffs = sol;
            coeffs.push(FieldElem::one(field));
            return coeffs;
        }
        reduced_combos.push(latest.clone());
        krylov.push(apply(&latest));
        assert!(krylov.len() <= dim + 1, "annihilator search exceeded dimension");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> FieldElem {
        FieldElem::from_int(BaseField::Rational, n)
    }

    #[test]
    fn solve_and_rank() {
        let mut a = Matrix::zero(BaseField::Rational, 2, 2);
        *a.at_mut(0, 0) = q(1);
        *a.at_mut(0, 1) = q(2);
        *a.at_mut(1, 0) = q(3);
        *a.at_mut(1, 1) = q(4);
        let x = a.solve(&[q(5), q(11)]).unwrap();
        assert_eq!(x, vec![q(1), q(2)]);

        let mut s = RowSpace::new(3);
        assert!(s.insert(vec![(0, q(1)), (1, q(1))]));
        assert!(s.insert(vec![(1, q(2))]));
        assert!(!s.insert(vec![(0, q(3)), (1, q(5))]));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn annihilator_of_nilpotent() {
        // A = [[0,1],[0,0]] acting on e0: A e0 = 0 -> min poly u
        let mut a = Matrix::zero(BaseField::Rational, 2, 2);
        *a.at_mut(0, 1) = q(1);
        let p = annihilator_poly(BaseField::Rational, vec![q(1), q(0)], |v| a.apply(v));
        assert_eq!(p, vec![q(0), q(1)]);
        // on e1: A e1 = e0, A^2 e1 = 0 -> u^2
        let p2 = annihilator_poly(BaseField::Rational, vec![q(0), q(1)], |v| a.apply(v));
        assert_eq!(p2, vec![q(0), q(0), q(1)]);
    }
}
