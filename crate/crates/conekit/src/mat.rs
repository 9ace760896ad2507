//! Exact dense linear algebra over arbitrary-precision rationals and integers.
//!
//! Everything here is small and dense (ranks up to about a dozen), so the
//! implementations favor clarity over asymptotics. No floating point anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(int(n), int(d))
}

pub fn rvec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn ivec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn int_to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        s += x * y;
    }
    s
}

pub fn idot(a: &[Int], b: &[Int]) -> Int {
    assert_eq!(a.len(), b.len());
    let mut s = Int::zero();
    for (x, y) in a.iter().zip(b) {
        s += x * y;
    }
    s
}

pub fn vadd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(c: &Rat, a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| c * x).collect()
}

pub fn vneg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn is_zero_ivec(a: &[Int]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn ineg(a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| -x).collect()
}

/// Exact integer vector from a rational one; None if any entry has a denominator.
pub fn to_int_vec(v: &[Rat]) -> Option<Vec<Int>> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// Scale a rational vector by the lcm of denominators to reach integers.
pub fn clear_denominators(v: &[Rat]) -> Vec<Int> {
    let mut l = Int::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    v.iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect()
}

/// Divide a nonzero integer vector by the gcd of its entries.
pub fn primitive_int(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    assert!(!g.is_zero(), "primitive form of the zero vector");
    v.iter().map(|x| x / &g).collect()
}

/// Primitive integer representative of a nonzero rational direction.
/// Sign: first nonzero entry positive.
pub fn primitive_dir(v: &[Rat]) -> Vec<Int> {
    let w = primitive_int(&clear_denominators(v));
    match w.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => ineg(&w),
        _ => w,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    m: Vec<Vec<Rat>>,
    cols: usize,
}

impl QMat {
    pub fn from_rows(m: Vec<Vec<Rat>>) -> Self {
        let cols = m.first().map_or(0, |r| r.len());
        assert!(m.iter().all(|r| r.len() == cols));
        QMat { m, cols }
    }

    pub fn from_int_rows(m: &[Vec<Int>]) -> Self {
        Self::from_rows(m.iter().map(|r| int_to_rat_vec(r)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            m: vec![vec![Rat::zero(); cols]; rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = Self::zeros(n, n);
        for i in 0..n {
            a.m[i][i] = Rat::one();
        }
        a
    }

    pub fn rows(&self) -> usize {
        self.m.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.m[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.m[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.m[i]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        self.m.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows());
        for i in 0..self.rows() {
            for j in 0..self.cols {
                t.m[j][i] = self.m[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows());
        let mut p = QMat::zeros(self.rows(), other.cols);
        for i in 0..self.rows() {
            for k in 0..self.cols {
                if self.m[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self.m[i][k] * &other.m[k][j];
                    p.m[i][j] += t;
                }
            }
        }
        p
    }

    pub fn matvec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        self.m.iter().map(|r| dot(r, v)).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows() != self.cols {
            return false;
        }
        for i in 0..self.rows() {
            for j in 0..i {
                if self.m[i][j] != self.m[j][i] {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        self.rows() == self.cols && *self == QMat::identity(self.rows())
    }

    /// Row echelon reduction in place; returns pivot column indices.
    fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows()).find(|&i| !self.m[i][c].is_zero()) else {
                continue;
            };
            self.m.swap(r, p);
            let inv = self.m[r][c].recip();
            for j in c..self.cols {
                let t = &self.m[r][j] * &inv;
                self.m[r][j] = t;
            }
            for i in 0..self.rows() {
                if i != r && !self.m[i][c].is_zero() {
                    let f = self.m[i][c].clone();
                    for j in c..self.cols {
                        let t = &self.m[r][j] * &f;
                        self.m[i][j] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows() {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        a.row_reduce().len()
    }

    pub fn inverse(&self) -> Option<QMat> {
        let n = self.rows();
        assert_eq!(n, self.cols);
        let mut aug = QMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.m[i][j] = self.m[i][j].clone();
            }
            aug.m[i][n + i] = Rat::one();
        }
        let pivots = aug.row_reduce();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return None;
        }
        let mut inv = QMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.m[i][j] = aug.m[i][n + j].clone();
            }
        }
        Some(inv)
    }

    /// Any solution of self * x = rhs, or None if inconsistent.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows(), rhs.len());
        let mut aug = QMat::zeros(self.rows(), self.cols + 1);
        for i in 0..self.rows() {
            for j in 0..self.cols {
                aug.m[i][j] = self.m[i][j].clone();
            }
            aug.m[i][self.cols] = rhs[i].clone();
        }
        let pivots = aug.row_reduce();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.m[r][self.cols].clone();
        }
        Some(x)
    }

    /// Basis of the right kernel over the rationals.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut a = self.clone();
        let pivots = a.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = -a.m[r][f].clone();
                }
                v
            })
            .collect()
    }

    /// Cast to an integer matrix; None if any entry is non-integral.
    pub fn to_int_rows(&self) -> Option<Vec<Vec<Int>>> {
        self.m.iter().map(|r| to_int_vec(r)).collect()
    }
}

/// Smith normal form u * a * v = d with u, v unimodular.
pub struct Snf {
    pub d: Vec<Vec<Int>>,
    pub u: Vec<Vec<Int>>,
    pub v: Vec<Vec<Int>>,
    pub rank: usize,
}

fn ident_int(n: usize) -> Vec<Vec<Int>> {
    let mut m = vec![vec![Int::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Int::one();
    }
    m
}

fn row_op(m: &mut [Vec<Int>], dst: usize, src: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for j in 0..m[dst].len() {
        let t = q * &m[src][j];
        m[dst][j] -= t;
    }
}

fn col_op(m: &mut [Vec<Int>], dst: usize, src: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let t = q * &row[src];
        row[dst] -= t;
    }
}

fn swap_cols(m: &mut [Vec<Int>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

pub fn smith_normal_form(a: &[Vec<Int>]) -> Snf {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut d: Vec<Vec<Int>> = a.to_vec();
    let mut u = ident_int(rows);
    let mut v = ident_int(cols);
    let lim = rows.min(cols);
    let mut t = 0;
    while t < lim {
        // pick the entry of least absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero()
                    && best
                        .map(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                        .unwrap_or(true)
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap(t, bi);
        u.swap(t, bi);
        swap_cols(&mut d, t, bj);
        swap_cols(&mut v, t, bj);
        let mut dirty = false;
        for i in t + 1..rows {
            let q = d[i][t].div_floor(&d[t][t]);
            row_op(&mut d, i, t, &q);
            row_op(&mut u, i, t, &q);
            if !d[i][t].is_zero() {
                dirty = true;
            }
        }
        for j in t + 1..cols {
            let q = d[t][j].div_floor(&d[t][t]);
            col_op(&mut d, j, t, &q);
            col_op(&mut v, j, t, &q);
            if !d[t][j].is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        // enforce divisibility of the remaining block by the pivot
        let mut retry = false;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&d[i][j] % &d[t][t]).is_zero() {
                    for k in 0..cols {
                        let add = d[i][k].clone();
                        d[t][k] += add;
                    }
                    for k in 0..rows {
                        let add = u[i][k].clone();
                        u[t][k] += add;
                    }
                    retry = true;
                    break 'outer;
                }
            }
        }
        if retry {
            continue;
        }
        if d[t][t].is_negative() {
            for j in 0..cols {
                d[t][j] = -d[t][j].clone();
            }
            for j in 0..rows {
                u[t][j] = -u[t][j].clone();
            }
        }
        t += 1;
    }
    let rank = (0..lim).take_while(|&i| !d[i][i].is_zero()).count();
    Snf { d, u, v, rank }
}

/// Saturated basis of the right integer kernel of a.
pub fn integer_kernel(a: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let cols = a.first().map_or(0, |r| r.len());
    if a.is_empty() {
        return ident_int(cols);
    }
    let snf = smith_normal_form(a);
    (snf.rank..cols)
        .map(|j| snf.v.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Extend a primitive integer vector to a basis of the ambient integer lattice.
/// The returned list starts with the vector itself.
pub fn complete_primitive(c: &[Int]) -> Vec<Vec<Int>> {
    let n = c.len();
    let col: Vec<Vec<Int>> = c.iter().map(|x| vec![x.clone()]).collect();
    let snf = smith_normal_form(&col);
    assert_eq!(snf.rank, 1);
    assert!(snf.d[0][0].is_one(), "vector is not primitive");
    // u * c = ±e1, so the columns of u^-1 extend c
    let u = QMat::from_int_rows(&snf.u);
    let uinv = u.inverse().expect("unimodular");
    let ui = uinv.to_int_rows().expect("unimodular inverse is integral");
    let sign = snf.v[0][0].clone();
    let mut basis = Vec::with_capacity(n);
    let first: Vec<Int> = (0..n).map(|i| &ui[i][0] * &sign).collect();
    assert_eq!(first, c.to_vec());
    basis.push(first);
    for j in 1..n {
        basis.push((0..n).map(|i| ui[i][j].clone()).collect());
    }
    basis
}

/// Signature (positive, negative) of a symmetric rational matrix by exact
/// congruence diagonalization. positive + negative < n means degenerate.
pub fn congruence_signature(g: &QMat) -> (usize, usize) {
    let n = g.rows();
    assert!(g.is_symmetric());
    let mut a = g.clone();
    let mut pos = 0;
    let mut neg = 0;
    for k in 0..n {
        if a.m[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a.m[j][j].is_zero()) {
                a.m.swap(k, j);
                swap_qcols(&mut a, k, j);
            } else {
                let mut found = None;
                'scan: for i in k..n {
                    for j in i + 1..n {
                        if !a.m[i][j].is_zero() {
                            found = Some((i, j));
                            break 'scan;
                        }
                    }
                }
                let Some((i, j)) = found else { break };
                // make a nonzero diagonal entry by a congruence add
                for c in 0..n {
                    let t = a.m[j][c].clone();
                    a.m[i][c] += t;
                }
                for r in 0..n {
                    let t = a.m[r][j].clone();
                    a.m[r][i] += t;
                }
                if i != k {
                    a.m.swap(k, i);
                    swap_qcols(&mut a, k, i);
                }
            }
        }
        if a.m[k][k].is_zero() {
            break;
        }
        if a.m[k][k].is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a.m[i][k].is_zero() {
                continue;
            }
            let f = &a.m[i][k] / &a.m[k][k];
            for c in 0..n {
                let t = &f * &a.m[k][c];
                a.m[i][c] -= t;
            }
            for r in 0..n {
                let t = &f * &a.m[r][k];
                a.m[r][k] = &a.m[r][k] - t;
            }
        }
    }
    (pos, neg)
}

fn swap_qcols(a: &mut QMat, i: usize, j: usize) {
    for r in 0..a.rows() {
        a.m[r].swap(i, j);
    }
}

/// LDL^T data for a negative definite symmetric matrix: q(x) = sum_i d_i (x_i + sum_{j>i} l[i][j] x_j)^2
/// with every d_i < 0. None if the matrix is not negative definite.
pub fn ldl_negdef(g: &QMat) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    let n = g.rows();
    assert!(g.is_symmetric());
    let mut a = g.clone();
    let mut d = Vec::with_capacity(n);
    let mut l = vec![vec![Rat::zero(); n]; n];
    for k in 0..n {
        if !a.m[k][k].is_negative() {
            return None;
        }
        d.push(a.m[k][k].clone());
        for j in k + 1..n {
            l[k][j] = &a.m[k][j] / &a.m[k][k];
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a.m[k][i] * &a.m[k][j] / &a.m[k][k];
                a.m[i][j] -= t;
            }
        }
    }
    Some((d, l))
}

/// Some integral solution x of a x = rhs, or None when none exists.
pub fn integral_solution(a: &[Vec<Int>], rhs: &[Int]) -> Option<Vec<Int>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    assert_eq!(rhs.len(), rows);
    if rows == 0 {
        return Some(vec![Int::zero(); cols]);
    }
    let snf = smith_normal_form(a);
    let b: Vec<Int> = (0..rows)
        .map(|i| (0..rows).map(|j| &snf.u[i][j] * &rhs[j]).sum())
        .collect();
    let mut y = vec![Int::zero(); cols];
    for (i, bi) in b.iter().enumerate() {
        if i < snf.rank {
            let (q, r) = bi.div_rem(&snf.d[i][i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !bi.is_zero() {
            return None;
        }
    }
    Some(
        (0..cols)
            .map(|i| (0..cols).map(|j| &snf.v[i][j] * &y[j]).sum())
            .collect(),
    )
}

/// Largest integer t with t <= alpha + sqrt(beta), for beta >= 0.
pub fn floor_plus_sqrt(alpha: &Rat, beta: &Rat) -> Int {
    assert!(!beta.is_negative());
    let holds = |t: &Int| {
        let diff = Rat::from_integer(t.clone()) - alpha;
        !diff.is_positive() || &diff * &diff <= *beta
    };
    let overshoot = beta.to_integer().max(Int::zero()).sqrt() + int(2);
    let mut t = alpha.floor().to_integer() + overshoot;
    while !holds(&t) {
        t -= 1;
    }
    t
}

/// Smallest integer t with t >= alpha - sqrt(beta), for beta >= 0.
pub fn ceil_minus_sqrt(alpha: &Rat, beta: &Rat) -> Int {
    -floor_plus_sqrt(&-alpha, beta)
}
