//! Integral lattices: Gram matrices, duals, complements, short vectors, root systems.

pub mod catalog;
pub mod eichler;
pub mod embed;
pub mod normal_form;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{hnf_rows, integer_kernel, is_primitive, saturate, IntMatrix, Rat, RatMatrix};
use crate::qform::{discriminant_form, FiniteQuadraticForm, QformError};

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("unknown lattice name {0}")]
    UnknownName(String),
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("lattice is not negative definite (signature {0:?})")]
    NotDefinite((usize, usize)),
    #[error("entry too large for machine integers")]
    Overflow,
    #[error("search bound exceeded: {0}")]
    Inconclusive(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Qform(#[from] QformError),
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
}

/// Lattice given by a symmetric integer Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralLattice {
    pub name: String,
    pub gram: IntMatrix,
}

impl IntegralLattice {
    pub fn new(name: impl Into<String>, gram: IntMatrix) -> Result<Self, LatticeError> {
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        Ok(IntegralLattice { name: name.into(), gram })
    }

    pub fn from_i64(name: impl Into<String>, rows: &[Vec<i64>]) -> Result<Self, LatticeError> {
        Self::new(name, IntMatrix::from_i64(rows))
    }

    pub fn rank(&self) -> usize {
        self.gram.rows
    }

    pub fn det(&self) -> BigInt {
        if self.rank() == 0 {
            return BigInt::one();
        }
        self.gram.det()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| (self.gram.get(i, i) % 2i32).is_zero())
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// (positive, negative) inertia; panics on a degenerate form.
    pub fn signature(&self) -> (usize, usize) {
        let (p, n, z) = inertia(&self.gram.to_rat());
        assert_eq!(z, 0, "degenerate lattice {}", self.name);
        (p, n)
    }

    pub fn is_negative_definite(&self) -> bool {
        let (p, n, z) = inertia(&self.gram.to_rat());
        p == 0 && z == 0 && n == self.rank()
    }

    pub fn gram_i64(&self) -> Result<Vec<Vec<i64>>, LatticeError> {
        self.gram.to_i64_rows().ok_or(LatticeError::Overflow)
    }

    pub fn discriminant_form(&self) -> Result<FiniteQuadraticForm, LatticeError> {
        Ok(discriminant_form(&self.gram)?)
    }

    /// Rows are the dual basis in coordinates of this basis.
    pub fn dual_basis(&self) -> Option<RatMatrix> {
        self.gram.to_rat().inverse()
    }

    pub fn pair(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let n = self.rank();
        let mut acc = Rat::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !y[j].is_zero() {
                    acc += &x[i] * Rat::from_integer(self.gram.get(i, j).clone()) * &y[j];
                }
            }
        }
        acc
    }

    pub fn scaled(&self, k: i64) -> IntegralLattice {
        let rows: Vec<Vec<BigInt>> =
            self.gram.to_rows().into_iter().map(|r| r.into_iter().map(|x| x * k).collect()).collect();
        IntegralLattice { name: format!("{}({k})", self.name), gram: IntMatrix::from_rows(&rows, self.rank()) }
    }

    pub fn direct_sum(parts: &[&IntegralLattice], name: impl Into<String>) -> IntegralLattice {
        let n: usize = parts.iter().map(|p| p.rank()).sum();
        let mut g = IntMatrix::zeros(n, n);
        let mut off = 0;
        for p in parts {
            for i in 0..p.rank() {
                for j in 0..p.rank() {
                    g.set(off + i, off + j, p.gram.get(i, j).clone());
                }
            }
            off += p.rank();
        }
        IntegralLattice { name: name.into(), gram: g }
    }

    /// Sublattice spanned by the given integer coordinate rows (assumed independent).
    pub fn sublattice(&self, basis: &[Vec<BigInt>], name: impl Into<String>) -> IntegralLattice {
        let b = IntMatrix::from_rows(basis, self.rank());
        let g = b.mul(&self.gram).mul(&b.transpose());
        IntegralLattice { name: name.into(), gram: g }
    }

    /// Saturated basis of the orthogonal complement of the span of `vectors`.
    pub fn orthogonal_basis(&self, vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        if vectors.is_empty() {
            return IntMatrix::identity(self.rank()).to_rows();
        }
        let m = IntMatrix::from_rows(vectors, self.rank()).mul(&self.gram);
        integer_kernel(&m)
    }
}

impl fmt::Display for IntegralLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {})", self.name, self.rank())
    }
}

/// Exact inertia (positive, negative, zero) of a symmetric rational matrix.
pub fn inertia(m: &RatMatrix) -> (usize, usize, usize) {
    let n = m.rows;
    let mut a: Vec<Vec<Rat>> = (0..n).map(|i| m.row(i)).collect();
    let (mut p, mut q, mut z) = (0, 0, 0);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, i);
                for row in a.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // replace e_k by e_k + e_j: new a_kk = 2 a_kj
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            } else {
                z += 1;
                k += 1;
                continue;
            }
        }
        let piv = a[k][k].clone();
        if piv.is_positive() {
            p += 1;
        } else {
            q += 1;
        }
        // Schur complement on the trailing block
        let col: Vec<Rat> = (0..n).map(|i| a[i][k].clone()).collect();
        for i in k + 1..n {
            if col[i].is_zero() {
                continue;
            }
            let f = &col[i] / &piv;
            for j in k + 1..n {
                let v = &f * &col[j];
                a[i][j] -= v;
            }
        }
        for i in k + 1..n {
            a[i][k] = Rat::zero();
            a[k][i] = Rat::zero();
        }
        k += 1;
    }
    (p, q, z)
}

/// Visit every nonzero integer x with xᵀ P x ≤ bound for positive definite P.
///
/// The callback receives x and its exact value xᵀ P x.
pub fn fincke_pohst<F: FnMut(&[i64], i64)>(p: &[Vec<i64>], bound: i64, mut visit: F) {
    let n = p.len();
    if n == 0 || bound <= 0 {
        return;
    }
    // q_ii and q_ij (j > i) with Q(x) = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)^2
    let mut q = vec![vec![0f64; n]; n];
    for i in 0..n {
        for j in i..n {
            q[i][j] = p[i][j] as f64;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let t = q[i][j];
            q[j][i] = t;
            q[i][j] = t / q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let mut x = vec![0i64; n];
    let mut st = FpState { p, q: &q, x: &mut x, n };
    st.rec(n - 1, bound as f64 + 1e-6, 0, bound, &mut visit);
}

struct FpState<'a> {
    p: &'a [Vec<i64>],
    q: &'a [Vec<f64>],
    x: &'a mut Vec<i64>,
    n: usize,
}

impl FpState<'_> {
    fn rec<F: FnMut(&[i64], i64)>(&mut self, i: usize, rem: f64, exact: i64, bound: i64, visit: &mut F) {
        let n = self.n;
        let mut c = 0f64;
        let mut lin = 0i64;
        for j in i + 1..n {
            c -= self.q[i][j] * self.x[j] as f64;
            lin += self.p[i][j] * self.x[j];
        }
        let qii = self.q[i][i];
        let r = (rem.max(0.0) / qii).sqrt() + 1e-9;
        let lo = (c - r).ceil() as i64;
        let hi = (c + r).floor() as i64;
        for xi in lo..=hi {
            let d = xi as f64 - c;
            let used = qii * d * d;
            if used > rem {
                continue;
            }
            let e = exact + self.p[i][i] * xi * xi + 2 * xi * lin;
            self.x[i] = xi;
            if i == 0 {
                if e <= bound && self.x.iter().any(|&v| v != 0) {
                    visit(self.x, e);
                }
            } else {
                self.rec(i - 1, rem - used, e, bound, visit);
            }
        }
        self.x[i] = 0;
    }
}

fn negated(g: &[Vec<i64>]) -> Vec<Vec<i64>> {
    g.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

/// All vectors of exact norm `norm` (< 0) in a negative definite lattice, sorted.
pub fn short_vectors(lat: &IntegralLattice, norm: i64) -> Result<Vec<Vec<i64>>, LatticeError> {
    if !lat.is_negative_definite() {
        return Err(LatticeError::NotDefinite(signature_or_zero(lat)));
    }
    let g = lat.gram_i64()?;
    Ok(short_vectors_gram(&g, norm))
}

fn signature_or_zero(lat: &IntegralLattice) -> (usize, usize) {
    let (p, n, _) = inertia(&lat.gram.to_rat());
    (p, n)
}

/// Vectors of norm `norm` for a negative definite i64 Gram matrix (no definiteness check).
pub fn short_vectors_gram(g: &[Vec<i64>], norm: i64) -> Vec<Vec<i64>> {
    let p = negated(g);
    let mut out = Vec::new();
    fincke_pohst(&p, -norm, |x, e| {
        if e == -norm {
            out.push(x.to_vec());
        }
    });
    out.sort();
    out
}

/// Number of vectors of norm -2, -4, ..., -2k.
pub fn theta_counts(lat: &IntegralLattice, k: usize) -> Result<Vec<u64>, LatticeError> {
    if !lat.is_negative_definite() {
        return Err(LatticeError::NotDefinite(signature_or_zero(lat)));
    }
    let p = negated(&lat.gram_i64()?);
    let mut counts = vec![0u64; k];
    fincke_pohst(&p, 2 * k as i64, |_, e| {
        if e % 2 == 0 {
            counts[(e / 2 - 1) as usize] += 1;
        }
    });
    Ok(counts)
}

pub fn roots(lat: &IntegralLattice) -> Result<Vec<Vec<i64>>, LatticeError> {
    short_vectors(lat, -2)
}

/// Irreducible root system component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RootType {
    E(usize),
    D(usize),
    A(usize),
}

impl RootType {
    pub fn rank(&self) -> usize {
        match *self {
            RootType::A(n) | RootType::D(n) | RootType::E(n) => n,
        }
    }

    pub fn root_count(&self) -> usize {
        match *self {
            RootType::A(n) => n * (n + 1),
            RootType::D(n) => 2 * n * (n - 1),
            RootType::E(6) => 72,
            RootType::E(7) => 126,
            RootType::E(8) => 240,
            RootType::E(_) => 0,
        }
    }

    pub fn identify(rank: usize, count: usize) -> Option<RootType> {
        [RootType::A(rank), RootType::D(rank), RootType::E(rank)]
            .into_iter()
            .filter(|t| match t {
                RootType::D(n) => *n >= 4,
                RootType::E(n) => (6..=8).contains(n),
                RootType::A(n) => *n >= 1,
            })
            .find(|t| t.root_count() == count)
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::D(n) => write!(f, "D{n}"),
            RootType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// Multiset of irreducible components, kept sorted (E before D before A, larger rank first).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootSystem(pub Vec<RootType>);

impl RootSystem {
    pub fn new(mut parts: Vec<RootType>) -> Self {
        parts.sort_by(|a, b| {
            let key = |t: &RootType| match t {
                RootType::E(n) => (0, usize::MAX - n),
                RootType::D(n) => (1, usize::MAX - n),
                RootType::A(n) => (2, usize::MAX - n),
            };
            key(a).cmp(&key(b))
        });
        RootSystem(parts)
    }

    pub fn root_count(&self) -> usize {
        self.0.iter().map(|t| t.root_count()).sum()
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|t| t.rank()).sum()
    }

    /// Parse labels like "E8+E7", "A1^2+A13", "D7 D7" or "E6⊕A2".
    pub fn parse(s: &str) -> Option<RootSystem> {
        let mut parts = Vec::new();
        let cleaned = s.replace(['⊕', '+', ',', '(', ')'], " ");
        for tok in cleaned.split_whitespace() {
            let (base, mult) = match tok.split_once('^') {
                Some((b, m)) => (b, m.parse::<usize>().ok()?),
                None => (tok, 1),
            };
            let kind = base.chars().next()?;
            let n: usize = base[1..].parse().ok()?;
            let t = match kind {
                'A' => RootType::A(n),
                'D' => RootType::D(n),
                'E' => RootType::E(n),
                _ => return None,
            };
            for _ in 0..mult {
                parts.push(t);
            }
        }
        Some(RootSystem::new(parts))
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut groups: Vec<(RootType, usize)> = Vec::new();
        for t in &self.0 {
            match groups.last_mut() {
                Some((u, k)) if u == t => *k += 1,
                _ => groups.push((*t, 1)),
            }
        }
        let s: Vec<String> =
            groups.iter().map(|(t, k)| if *k == 1 { t.to_string() } else { format!("{t}^{k}") }).collect();
        write!(f, "{}", s.join("+"))
    }
}

/// Rank of a set of integer vectors (exact, fraction-free elimination).
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c] == 0 {
                continue;
            }
            let (x, y) = (a[r][c], a[i][c]);
            let mut g = 0i128;
            for j in 0..cols {
                a[i][j] = a[i][j] * x - a[r][j] * y;
                g = gcd128(g, a[i][j]);
            }
            if g > 1 {
                for v in a[i].iter_mut() {
                    *v /= g;
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn pair_i64(g: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut acc = 0;
    for i in 0..x.len() {
        if x[i] == 0 {
            continue;
        }
        let gi = &g[i];
        let mut s = 0;
        for j in 0..y.len() {
            s += gi[j] * y[j];
        }
        acc += x[i] * s;
    }
    acc
}

pub fn gram_times(g: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    g.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// Connected components of roots under nonzero pairing, identified by (rank, count).
pub fn root_system_of(g: &[Vec<i64>], roots: &[Vec<i64>]) -> Result<RootSystem, LatticeError> {
    let n = roots.len();
    let gr: Vec<Vec<i64>> = roots.iter().map(|r| gram_times(g, r)).collect();
    let mut comp = vec![usize::MAX; n];
    let mut parts = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = parts.len();
        comp[s] = id;
        let mut stack = vec![s];
        let mut members = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if comp[j] == usize::MAX && dot(&gr[i], &roots[j]) != 0 {
                    comp[j] = id;
                    stack.push(j);
                    members.push(j);
                }
            }
        }
        let rows: Vec<Vec<i64>> = members.iter().map(|&i| roots[i].clone()).collect();
        let rk = rank_i64(&rows);
        let t = RootType::identify(rk, members.len())
            .ok_or_else(|| LatticeError::Invalid(format!("root component rank {rk} with {} roots", members.len())))?;
        parts.push(t);
    }
    Ok(RootSystem::new(parts))
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn root_system(lat: &IntegralLattice) -> Result<RootSystem, LatticeError> {
    let r = roots(lat)?;
    root_system_of(&lat.gram_i64()?, &r)
}

/// Primitive embedding of one lattice into another, as integer images of the source basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeEmbedding {
    pub source: IntegralLattice,
    pub target: IntegralLattice,
    /// Row i is the image of source basis vector i in target coordinates.
    pub images: Vec<Vec<BigInt>>,
}

impl LatticeEmbedding {
    pub fn new(source: IntegralLattice, target: IntegralLattice, images: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        let e = LatticeEmbedding { source, target, images };
        if e.images.len() != e.source.rank() || e.images.iter().any(|r| r.len() != e.target.rank()) {
            return Err(LatticeError::Invalid("image dimensions".into()));
        }
        let m = IntMatrix::from_rows(&e.images, e.target.rank());
        if m.mul(&e.target.gram).mul(&m.transpose()) != e.source.gram {
            return Err(LatticeError::Invalid("embedding does not preserve the Gram matrix".into()));
        }
        Ok(e)
    }

    pub fn from_i64(source: IntegralLattice, target: IntegralLattice, images: &[Vec<i64>]) -> Result<Self, LatticeError> {
        let imgs = images.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::new(source, target, imgs)
    }

    pub fn is_primitive(&self) -> bool {
        is_primitive(&self.images, self.target.rank())
    }

    /// Saturate the image (the Gram of the source changes if it was not primitive).
    pub fn saturated_image(&self) -> Result<Vec<Vec<BigInt>>, LatticeError> {
        Ok(saturate(&self.images, self.target.rank())?)
    }

    /// Orthogonal complement with its inclusion (basis rows in target coordinates).
    pub fn orthogonal_complement(&self) -> (IntegralLattice, Vec<Vec<BigInt>>) {
        let basis = self.target.orthogonal_basis(&self.images);
        let name = format!("{}^perp in {}", self.source.name, self.target.name);
        (self.target.sublattice(&basis, name), basis)
    }
}

/// Index of the root sublattice R plus its orthogonal R' in L, and |det R'|.
pub fn root_glue_invariant(lat: &IntegralLattice, roots: &[Vec<i64>]) -> Result<(u64, u64), LatticeError> {
    let n = lat.rank();
    if roots.is_empty() {
        return Ok((1, lat.det().abs().to_u64().unwrap_or(0)));
    }
    let rows: Vec<Vec<BigInt>> = roots.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rb = hnf_rows(&IntMatrix::from_rows(&rows, n)).to_rows();
    let rlat = lat.sublattice(&rb, "R");
    let ob = lat.orthogonal_basis(&rb);
    let olat = lat.sublattice(&ob, "R'");
    let prod = rlat.det().abs() * olat.det().abs();
    let dl = lat.det().abs();
    let sq = (&prod / &dl).sqrt();
    if &sq * &sq * &dl != prod {
        return Err(LatticeError::Invalid("root/glue index is not an integer".into()));
    }
    Ok((sq.to_u64().ok_or(LatticeError::Overflow)?, olat.det().abs().to_u64().ok_or(LatticeError::Overflow)?))
}

/// Canonical ordering helper for JSON output.
pub fn gram_json(g: &IntMatrix) -> Vec<Vec<String>> {
    g.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

pub fn counts_map(v: &[u64]) -> BTreeMap<String, u64> {
    v.iter().enumerate().map(|(i, c)| (format!("{}", -2 * (i as i64 + 1)), *c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inertia_basic() {
        let u = IntegralLattice::from_i64("U", &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(u.signature(), (1, 1));
        let a2 = IntegralLattice::from_i64("A2", &[vec![-2, 1], vec![1, -2]]).unwrap();
        assert_eq!(a2.signature(), (0, 2));
        assert!(a2.is_negative_definite());
        let d = IntegralLattice::from_i64("Z", &[vec![0, 0], vec![0, 2]]).unwrap();
        assert_eq!(inertia(&d.gram.to_rat()), (1, 0, 1));
    }

    #[test]
    fn short_vectors_a1_a2() {
        let a1 = IntegralLattice::from_i64("A1", &[vec![-2]]).unwrap();
        assert_eq!(short_vectors(&a1, -2).unwrap().len(), 2);
        assert!(short_vectors(&a1, -4).unwrap().is_empty());
        let a2 = IntegralLattice::from_i64("A2", &[vec![-2, 1], vec![1, -2]]).unwrap();
        assert_eq!(roots(&a2).unwrap().len(), 6);
        assert_eq!(root_system(&a2).unwrap(), RootSystem(vec![RootType::A(2)]));
        assert_eq!(theta_counts(&a2, 3).unwrap(), vec![6, 0, 6]);
    }

    #[test]
    fn root_system_labels() {
        let r = RootSystem::parse("A1^2+A13").unwrap();
        assert_eq!(r.to_string(), "A13+A1^2");
        assert_eq!(RootSystem::parse("E7 ⊕ E8").unwrap().to_string(), "E8+E7");
        assert_eq!(RootType::identify(3, 12), Some(RootType::A(3)));
        assert_eq!(RootType::identify(4, 24), Some(RootType::D(4)));
        assert_eq!(RootType::identify(6, 72), Some(RootType::E(6)));
    }

    #[test]
    fn rank_exact() {
        assert_eq!(rank_i64(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_i64(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]), 2);
    }
}
