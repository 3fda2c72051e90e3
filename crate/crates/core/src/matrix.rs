//! Dense matrices over a [`FieldCtx`] with exact Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, FieldElem, Value};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<Value>,
}

impl Matrix {
    pub fn from_values(ctx: &FieldCtx, rows: usize, cols: usize, data: Vec<Value>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { ctx: ctx.clone(), rows, cols, data }
    }

    pub fn from_fn(ctx: &FieldCtx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Value) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { ctx: ctx.clone(), rows, cols, data }
    }

    /// Integer matrix, for tests and examples.
    pub fn from_i64(ctx: &FieldCtx, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(ctx, r, c, |i, j| ctx.from_i64(rows[i][j]))
    }

    /// Parses a row-major grid of element strings.
    pub fn parse<S: AsRef<str>>(ctx: &FieldCtx, rows: &[Vec<S>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            for s in row {
                data.push(ctx.parse_value(s.as_ref())?);
            }
        }
        Ok(Matrix { ctx: ctx.clone(), rows: r, cols: c, data })
    }

    /// Row-major grid of element strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.ctx.format_value(self.get(i, j))).collect())
            .collect()
    }

    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> Self {
        Self::from_fn(ctx, rows, cols, |_, _| ctx.zero())
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Self {
        Self::from_fn(ctx, n, n, |i, j| if i == j { ctx.one() } else { ctx.zero() })
    }

    pub fn diag(ctx: &FieldCtx, d: &[Value]) -> Self {
        let n = d.len();
        Self::from_fn(ctx, n, n, |i, j| if i == j { d[i].clone() } else { ctx.zero() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ctx: &FieldCtx, rows: usize, cols: &[Vec<Value>]) -> Self {
        Self::from_fn(ctx, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Value {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Value) {
        self.data[i * self.cols + j] = v;
    }

    pub fn elem(&self, i: usize, j: usize) -> FieldElem {
        self.ctx.elem(self.get(i, j).clone())
    }

    pub fn values(&self) -> &[Value] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Value> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Checked product.
    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ctx != other.ctx {
            return Err(Error::CtxMismatch(format!("{} vs {}", self.ctx, other.ctx)));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ctx = &self.ctx;
        let mut out = vec![ctx.zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ctx.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if ctx.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out[idx] = ctx.add(&out[idx], &ctx.mul(a, b));
                }
            }
        }
        Ok(Matrix { ctx: ctx.clone(), rows: self.rows, cols: other.cols, data: out })
    }

    pub fn mul_vec(&self, v: &[Value]) -> Vec<Value> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(self.ctx.zero(), |acc, j| {
                    self.ctx.add(&acc, &self.ctx.mul(self.get(i, j), &v[j]))
                })
            })
            .collect()
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Value, &Value) -> Value) -> Matrix {
        assert!(self.ctx == other.ctx && self.rows == other.rows && self.cols == other.cols);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Matrix { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Value) -> Matrix {
        let data = self.data.iter().map(|a| self.ctx.mul(a, c)).collect();
        Matrix { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.ctx.is_zero(v))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        self.ctx.is_one(v)
                    } else {
                        self.ctx.is_zero(v)
                    }
                })
            })
    }

    pub fn trace(&self) -> Value {
        (0..self.rows.min(self.cols)).fold(self.ctx.zero(), |acc, i| self.ctx.add(&acc, self.get(i, i)))
    }

    pub fn pow(&self, mut e: u128) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(&self.ctx, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Signed power; negative exponents need an invertible matrix.
    pub fn pow_i(&self, e: i64) -> Result<Matrix> {
        if e >= 0 {
            Ok(self.pow(e as u128))
        } else {
            Ok(self.inverse().ok_or(Error::SingularMatrix)?.pow(e.unsigned_abs() as u128))
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let ctx = &self.ctx;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !ctx.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(pr, row);
            let inv = ctx.inv(m.get(row, col)).unwrap();
            for j in col..m.cols {
                let v = ctx.mul(m.get(row, j), &inv);
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col).clone();
                if ctx.is_zero(&f) {
                    continue;
                }
                for j in col..m.cols {
                    let v = ctx.sub(m.get(r, j), &ctx.mul(&f, m.get(row, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : self * v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Value>> {
        let ctx = &self.ctx;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![ctx.zero(); self.cols];
                v[f] = ctx.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = ctx.neg(r.get(i, f));
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Value]) -> Option<Vec<Value>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_fn(&self.ctx, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.ctx.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let ctx = &self.ctx;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Matrix::from_fn(ctx, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                ctx.one()
            } else {
                ctx.zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(ctx, n, n, |i, j| r.get(i, n + j).clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn det(&self) -> Value {
        assert!(self.is_square());
        let ctx = &self.ctx;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = ctx.one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !ctx.is_zero(m.get(r, col))) else {
                return ctx.zero();
            };
            if pr != col {
                m.swap_rows(pr, col);
                det = ctx.neg(&det);
            }
            let pv = m.get(col, col).clone();
            det = ctx.mul(&det, &pv);
            let inv = ctx.inv(&pv).unwrap();
            for r in col + 1..n {
                let f = ctx.mul(m.get(r, col), &inv);
                if ctx.is_zero(&f) {
                    continue;
                }
                for j in col..n {
                    let v = ctx.sub(m.get(r, j), &ctx.mul(&f, m.get(col, j)));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let (r2, c2) = (other.rows, other.cols);
        Matrix::from_fn(&self.ctx, self.rows * r2, self.cols * c2, |i, j| {
            self.ctx.mul(self.get(i / r2, j / c2), other.get(i % r2, j % c2))
        })
    }

    pub fn block_diag(ctx: &FieldCtx, blocks: &[&Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(ctx, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Characteristic polynomial `det(xI - M)` via reduction to upper
    /// Hessenberg form; valid over any field.
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square());
        let ctx = &self.ctx;
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| !ctx.is_zero(h.get(i, j))) else {
                continue;
            };
            if i != j + 1 {
                h.swap_rows(i, j + 1);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + j + 1);
                }
            }
            let inv = ctx.inv(h.get(j + 1, j)).unwrap();
            for k in j + 2..n {
                let u = ctx.mul(h.get(k, j), &inv);
                if ctx.is_zero(&u) {
                    continue;
                }
                // row_k -= u * row_{j+1}; col_{j+1} += u * col_k
                for c in 0..n {
                    let v = ctx.sub(h.get(k, c), &ctx.mul(&u, h.get(j + 1, c)));
                    h.set(k, c, v);
                }
                for r in 0..n {
                    let v = ctx.add(h.get(r, j + 1), &ctx.mul(&u, h.get(r, k)));
                    h.set(r, j + 1, v);
                }
            }
        }
        // p_m = (x - h_mm) p_{m-1} - sum_i h_{m-i,m} (prod_{j=m-i+1}^{m} h_{j,j-1}) p_{m-i-1}
        let mut ps: Vec<Poly> = vec![Poly::one(ctx)];
        for m in 1..=n {
            let mut pm = Poly::linear(ctx, h.get(m - 1, m - 1)).mul(&ps[m - 1]);
            let mut t = ctx.one();
            for i in 1..m {
                t = ctx.mul(&t, h.get(m - i, m - i - 1));
                let coef = ctx.mul(h.get(m - i - 1, m - 1), &t);
                if !ctx.is_zero(&coef) {
                    pm = pm.sub(&ps[m - i - 1].scale(&coef));
                }
            }
            ps.push(pm);
        }
        ps.pop().unwrap()
    }

    /// Minimal polynomial: first linear dependency among `I, M, M^2, ...`.
    pub fn minpoly(&self) -> Poly {
        assert!(self.is_square());
        let ctx = &self.ctx;
        let n = self.rows;
        let mut powers: Vec<Vec<Value>> = vec![Matrix::identity(ctx, n).data];
        let mut cur = Matrix::identity(ctx, n);
        loop {
            cur = &cur * self;
            let a = Matrix::from_columns(ctx, n * n, &powers);
            if let Some(c) = a.solve(&cur.data) {
                let mut coeffs: Vec<Value> = c.iter().map(|v| ctx.neg(v)).collect();
                coeffs.push(ctx.one());
                return Poly::new(ctx, coeffs);
            }
            powers.push(cur.data.clone());
        }
    }

    pub fn eval_poly(&self, p: &Poly) -> Matrix {
        let n = self.rows;
        let ctx = &self.ctx;
        p.coeffs().iter().rev().fold(Matrix::zeros(ctx, n, n), |acc, c| {
            let mut next = &acc * self;
            for i in 0..n {
                let v = ctx.add(next.get(i, i), c);
                next.set(i, i, v);
            }
            next
        })
    }

    /// Applies a map to every entry, landing in another field.
    pub fn map_entries(&self, ctx: &FieldCtx, f: impl Fn(&Value) -> Value) -> Matrix {
        Matrix { ctx: ctx.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map_entries(&self, ctx: &FieldCtx, f: impl Fn(&Value) -> Result<Value>) -> Result<Matrix> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { ctx: ctx.clone(), rows: self.rows, cols: self.cols, data })
    }
}

impl std::ops::Mul for &Matrix {
    type Output = Matrix;
    /// Panics on shape or field mismatch; see [`Matrix::try_mul`].
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl std::ops::Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        let ctx = self.ctx.clone();
        self.zip_with(rhs, |a, b| ctx.add(a, b))
    }
}

impl std::ops::Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        let ctx = self.ctx.clone();
        self.zip_with(rhs, |a, b| ctx.sub(a, b))
    }
}

impl std::ops::Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&self.ctx.neg(&self.ctx.one()))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_strings().iter().map(|r| format!("[{}]", r.join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.ctx)
    }
}
