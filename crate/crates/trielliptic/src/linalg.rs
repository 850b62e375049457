//! Exact integer and rational linear algebra.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("rank deficient: {0} vectors span rank {1}")]
    RankDeficient(usize, usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m.data[i * cols + j] = x.clone();
            }
        }
        m
    }

    pub fn from_cols(cols: &[Vec<BigInt>], rows: usize) -> Self {
        Self::from_rows(cols, rows).transpose()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).fold(BigInt::zero(), |acc, j| acc + self.get(i, j) * &v[j]))
            .collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Rat::from_integer(x.clone())).collect(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    pub fn rank(&self) -> usize {
        self.to_rat().rank()
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rat>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m.data[i * cols + j] = x.clone();
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Rat) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Rat::zero(), |acc, j| acc + self.get(i, j) * &v[j]))
            .collect()
    }

    /// Reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j) - &f * self.get(r, j);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c) / &piv;
                for j in c..n {
                    let v = a.get(i, j) - &f * a.get(c, j);
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Some solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let piv = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &c) in piv.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the right kernel over Q.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut a = self.clone();
        let piv = a.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (r, &c) in piv.iter().enumerate() {
                    v[c] = -a.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        if self.data.iter().any(|x| !x.is_integer()) {
            return None;
        }
        Some(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.to_integer()).collect(),
        })
    }
}

/// Result of [`smith_normal_form`]: `u * m * v == d`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries d1 | d2 | ...
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().len()
    }
}

/// Smith normal form with smallest-absolute-value pivoting.
///
/// Ties are broken by lowest row, then lowest column.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.to_rows();
    let mut u = IntMatrix::identity(r).to_rows();
    let mut v = IntMatrix::identity(c).to_rows();
    let mut t = 0;
    while t < r.min(c) {
        // pivot search over the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if d[i][j].is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if d[i][j].abs() >= d[bi][bj].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        if pj != t {
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
        }
        let mut dirty = false;
        for i in t + 1..r {
            if d[i][t].is_zero() {
                continue;
            }
            let q = d[i][t].div_floor(&d[t][t]);
            let (top, rest) = d.split_at_mut(i);
            for j in t..c {
                let x = &q * &top[t][j];
                rest[0][j] -= x;
            }
            let (ut, ur) = u.split_at_mut(i);
            for j in 0..r {
                let x = &q * &ut[t][j];
                ur[0][j] -= x;
            }
            if !d[i][t].is_zero() {
                dirty = true;
            }
        }
        for j in t + 1..c {
            if d[t][j].is_zero() {
                continue;
            }
            let q = d[t][j].div_floor(&d[t][t]);
            for row in d.iter_mut() {
                let x = &q * &row[t];
                row[j] -= x;
            }
            for row in v.iter_mut() {
                let x = &q * &row[t];
                row[j] -= x;
            }
            if !d[t][j].is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        // divisibility of the trailing block
        let mut bad = None;
        'outer: for i in t + 1..r {
            for j in t + 1..c {
                if !d[i][j].is_multiple_of(&d[t][t]) {
                    bad = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = bad {
            let (top, rest) = d.split_at_mut(i);
            for j in t..c {
                top[t][j] += &rest[0][j];
            }
            let (ut, ur) = u.split_at_mut(i);
            for j in 0..r {
                ut[t][j] += &ur[0][j];
            }
            continue;
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    Snf {
        u: IntMatrix::from_rows(&u, r),
        d: IntMatrix::from_rows(&d, c),
        v: IntMatrix::from_rows(&v, c),
    }
}

/// Row-style Hermite normal form; zero rows are dropped.
pub fn hnf_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.to_rows();
    let cols = m.cols;
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        loop {
            let Some(p) = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()).then(x.cmp(&y)))
            else {
                break;
            };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let (top, rest) = a.split_at_mut(i);
                for j in c..cols {
                    let x = &q * &top[r][j];
                    rest[0][j] -= x;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let q = a[i][c].div_floor(&a[r][c]);
                if q.is_zero() {
                    continue;
                }
                let (top, rest) = a.split_at_mut(r);
                for j in c..cols {
                    let x = &q * &rest[0][j];
                    top[i][j] -= x;
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    IntMatrix::from_rows(&a, cols)
}

/// Z-basis of `{x in Z^n : m x = 0}`, returned in Hermite normal form.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let basis: Vec<Vec<BigInt>> = (rank..m.cols).map(|j| snf.v.col(j)).collect();
    if basis.is_empty() {
        return basis;
    }
    hnf_rows(&IntMatrix::from_rows(&basis, m.cols)).to_rows()
}

/// Z-basis of `span_Q(sub) ∩ Z^n`.
pub fn saturate(sub: &[Vec<BigInt>], n: usize) -> Result<Vec<Vec<BigInt>>, LinalgError> {
    if sub.is_empty() {
        return Ok(Vec::new());
    }
    if sub.iter().any(|v| v.len() != n) {
        return Err(LinalgError::Dimension(format!("expected vectors of length {n}")));
    }
    let s = IntMatrix::from_rows(sub, n);
    let snf = smith_normal_form(&s);
    let k = snf.rank();
    if k < sub.len() {
        return Err(LinalgError::RankDeficient(sub.len(), k));
    }
    // rows of V^{-1} span Z^n; the first k span the same Q-space as `sub`
    let vinv = snf.v.to_rat().inverse().and_then(|x| x.to_int()).expect("V is unimodular");
    let rows: Vec<Vec<BigInt>> = (0..k).map(|i| vinv.row(i)).collect();
    Ok(hnf_rows(&IntMatrix::from_rows(&rows, n)).to_rows())
}

/// True iff the rows of `sub` span a saturated sublattice.
pub fn is_primitive(sub: &[Vec<BigInt>], n: usize) -> bool {
    if sub.is_empty() {
        return true;
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(sub, n));
    snf.rank() == sub.len() && snf.divisors().iter().all(|d| d.is_one())
}

/// Affine constraint `a·x + b < 0` (strict) or `a·x + b <= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub a: Vec<Rat>,
    pub b: Rat,
    pub strict: bool,
}

impl Constraint {
    fn normalized(mut self) -> Self {
        let scale = self.a.iter().chain(std::iter::once(&self.b)).map(|x| x.abs()).max();
        if let Some(s) = scale {
            if !s.is_zero() {
                for x in self.a.iter_mut() {
                    *x = &*x / &s;
                }
                self.b = &self.b / &s;
            }
        }
        self
    }
}

/// Fourier–Motzkin feasibility with an exact witness.
pub fn fourier_motzkin(constraints: &[Constraint], dim: usize) -> Option<Vec<Rat>> {
    let mut stages: Vec<Vec<Constraint>> = Vec::with_capacity(dim + 1);
    let mut cur: Vec<Constraint> = dedup(constraints.iter().cloned().map(Constraint::normalized).collect());
    for k in (0..dim).rev() {
        stages.push(cur.clone());
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for c in cur {
            match c.a[k].cmp(&Rat::zero()) {
                std::cmp::Ordering::Greater => pos.push(c),
                std::cmp::Ordering::Less => neg.push(c),
                std::cmp::Ordering::Equal => zero.push(c),
            }
        }
        for p in &pos {
            for n in &neg {
                let sp = p.a[k].recip();
                let sn = -n.a[k].recip();
                let a: Vec<Rat> = (0..dim).map(|i| &p.a[i] * &sp + &n.a[i] * &sn).collect();
                let b = &p.b * &sp + &n.b * &sn;
                zero.push(Constraint { a, b, strict: p.strict || n.strict }.normalized());
            }
        }
        cur = dedup(zero);
    }
    for c in &cur {
        let ok = if c.strict { c.b < Rat::zero() } else { c.b <= Rat::zero() };
        if !ok {
            return None;
        }
    }
    // back substitution, variable 0 first
    let mut x = vec![Rat::zero(); dim];
    for k in 0..dim {
        let stage = &stages[dim - 1 - k];
        let mut lo: Option<(Rat, bool)> = None;
        let mut hi: Option<(Rat, bool)> = None;
        for c in stage {
            if c.a[k].is_zero() {
                continue;
            }
            let rest = (0..k).fold(c.b.clone(), |acc, i| acc + &c.a[i] * &x[i]);
            let bound = -rest / &c.a[k];
            if c.a[k] > Rat::zero() {
                if hi.as_ref().map_or(true, |(h, s)| bound < *h || (bound == *h && c.strict && !s)) {
                    hi = Some((bound, c.strict));
                }
            } else if lo.as_ref().map_or(true, |(l, s)| bound > *l || (bound == *l && c.strict && !s)) {
                lo = Some((bound, c.strict));
            }
        }
        x[k] = pick(lo, hi);
    }
    Some(x)
}

fn dedup(mut v: Vec<Constraint>) -> Vec<Constraint> {
    let mut seen = std::collections::HashSet::new();
    v.retain(|c| seen.insert(c.clone()));
    v
}

fn pick(lo: Option<(Rat, bool)>, hi: Option<(Rat, bool)>) -> Rat {
    let zero = Rat::zero();
    let inside = |x: &Rat| {
        lo.as_ref().map_or(true, |(l, s)| if *s { x > l } else { x >= l })
            && hi.as_ref().map_or(true, |(h, s)| if *s { x < h } else { x <= h })
    };
    if inside(&zero) {
        return zero;
    }
    match (&lo, &hi) {
        (Some((l, _)), Some((h, _))) => {
            if l == h {
                l.clone()
            } else {
                (l + h) / ri(2)
            }
        }
        (Some((l, _)), None) => l.floor() + Rat::one(),
        (None, Some((h, _))) => h.ceil() - Rat::one(),
        (None, None) => zero,
    }
}

/// Homogeneous feasibility: `s·x < 0` for s in `strict`, `w·x <= 0` for w in
/// `weak`, `c·x >= 0` for c in `cone`. Returns an exact witness or `None`.
pub fn lp_feasible(strict: &[Vec<Rat>], weak: &[Vec<Rat>], cone: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let dim = strict
        .iter()
        .chain(weak)
        .chain(cone)
        .map(|v| v.len())
        .max()
        .unwrap_or(0);
    let mut cs = Vec::new();
    for s in strict {
        cs.push(Constraint { a: pad(s, dim), b: Rat::zero(), strict: true });
    }
    for w in weak {
        cs.push(Constraint { a: pad(w, dim), b: Rat::zero(), strict: false });
    }
    for c in cone {
        cs.push(Constraint { a: pad(c, dim).into_iter().map(|x| -x).collect(), b: Rat::zero(), strict: false });
    }
    if strict.is_empty() {
        return Some(vec![Rat::zero(); dim]);
    }
    // a homogeneous strict system is feasible iff it is feasible with every strict
    // functional <= -1; this keeps the witness away from the origin
    let cs: Vec<Constraint> = cs
        .into_iter()
        .map(|c| if c.strict { Constraint { a: c.a, b: Rat::one(), strict: false } } else { c })
        .collect();
    fourier_motzkin(&cs, dim)
}

fn pad(v: &[Rat], dim: usize) -> Vec<Rat> {
    let mut out = v.to_vec();
    out.resize(dim, Rat::zero());
    out
}

pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| ri(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IntMatrix) {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        assert!(s.d.is_diagonal());
        let d = s.divisors();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn snf_small_examples() {
        let a2 = IntMatrix::from_i64(&[vec![-2, 1], vec![1, -2]]);
        check_snf(&a2);
        assert_eq!(smith_normal_form(&a2).divisors(), big_vec(&[1, 3]));
        let t1 = IntMatrix::from_i64(&[vec![2, 3], vec![3, 0]]);
        assert_eq!(smith_normal_form(&t1).divisors(), big_vec(&[1, 9]));
        let one = IntMatrix::from_i64(&[vec![2]]);
        assert_eq!(smith_normal_form(&one).divisors(), big_vec(&[2]));
        check_snf(&IntMatrix::from_i64(&[vec![0, 0, 0], vec![0, 4, 6]]));
    }

    #[test]
    fn kernel_examples() {
        assert!(integer_kernel(&IntMatrix::identity(3)).is_empty());
        let k = integer_kernel(&IntMatrix::from_i64(&[vec![1, 1]]));
        assert_eq!(k.len(), 1);
        assert!(k[0] == big_vec(&[1, -1]) || k[0] == big_vec(&[-1, 1]));
    }

    #[test]
    fn saturate_examples() {
        assert_eq!(saturate(&[big_vec(&[2, 0])], 2).unwrap(), vec![big_vec(&[1, 0])]);
        let id = vec![big_vec(&[1, 0]), big_vec(&[0, 1])];
        assert_eq!(saturate(&id, 2).unwrap(), id);
        assert_eq!(saturate(&[big_vec(&[3, 0, 1])], 3).unwrap(), vec![big_vec(&[3, 0, 1])]);
        assert!(matches!(
            saturate(&[big_vec(&[1, 2]), big_vec(&[2, 4])], 2),
            Err(LinalgError::RankDeficient(2, 1))
        ));
    }

    #[test]
    fn lp_trivial_cases() {
        assert!(lp_feasible(&[rat_vec(&[1])], &[], &[rat_vec(&[1])]).is_none());
        assert_eq!(lp_feasible(&[], &[], &[]), Some(vec![]));
        let w = lp_feasible(&[rat_vec(&[1, -1])], &[rat_vec(&[-1, 0])], &[]).unwrap();
        assert!(&w[0] - &w[1] < Rat::zero() && -w[0].clone() <= Rat::zero());
    }

    #[test]
    fn det_and_inverse() {
        let m = IntMatrix::from_i64(&[vec![2, 3], vec![3, 0]]);
        assert_eq!(m.det(), BigInt::from(-9));
        let inv = m.to_rat().inverse().unwrap();
        assert_eq!(m.to_rat().mul(&inv), RatMatrix::identity(2));
        assert_eq!(m.to_rat().det(), ri(-9));
    }
}
