//! Finite quadratic forms, Gauss sums and the Picard-rank formula.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{smith_normal_form, IntMatrix, Rat};
use crate::poly::{parse_rat, rat_str};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QformError {
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is odd (diagonal entry {0})")]
    Odd(String),
    #[error("gram matrix is degenerate")]
    Degenerate,
    #[error("invalid generator data: {0}")]
    Invalid(String),
    #[error("group too large to enumerate: order {0}")]
    TooLarge(String),
    #[error("picard formula gave a non-integer value {0}")]
    NonIntegral(f64),
}

const MAX_ORDER: u64 = 1 << 16;

fn mod_q(r: Rat, m: i64) -> Rat {
    let m = Rat::from_integer(BigInt::from(m));
    let k = (&r / &m).floor();
    r - k * m
}

/// Finite abelian group with a Q/2Z-valued quadratic form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteQuadraticForm {
    /// Orders of the generators.
    pub orders: Vec<u64>,
    /// `gram[i][i] = q(g_i)` in [0,2); `gram[i][j] = b(g_i, g_j)` in [0,1).
    pub gram: Vec<Vec<Rat>>,
}

impl FiniteQuadraticForm {
    pub fn trivial() -> Self {
        FiniteQuadraticForm { orders: vec![], gram: vec![] }
    }

    /// Build from generator orders, q-values and off-diagonal pairings.
    pub fn from_generators(orders: Vec<u64>, q: Vec<Rat>, pairings: BTreeMap<(usize, usize), Rat>) -> Result<Self, QformError> {
        let n = orders.len();
        if q.len() != n {
            return Err(QformError::Invalid("one q-value per generator".into()));
        }
        let mut gram = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            gram[i][i] = mod_q(q[i].clone(), 2);
        }
        for (&(i, j), v) in &pairings {
            if i >= n || j >= n || i == j {
                return Err(QformError::Invalid(format!("bad pairing index ({i},{j})")));
            }
            gram[i][j] = mod_q(v.clone(), 1);
            gram[j][i] = gram[i][j].clone();
        }
        let f = FiniteQuadraticForm { orders, gram };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<(), QformError> {
        for i in 0..self.rank() {
            let d = Rat::from_integer(BigInt::from(self.orders[i]));
            if self.orders[i] == 0 {
                return Err(QformError::Invalid("zero order".into()));
            }
            if !(&d * &d * &self.gram[i][i] / Rat::from_integer(2.into())).is_integer() {
                return Err(QformError::Invalid(format!("q(d g_{i}) != 0 mod 2")));
            }
            for j in 0..self.rank() {
                let b = if i == j { mod_q(self.gram[i][i].clone(), 1) } else { self.gram[i][j].clone() };
                if !(&d * b).is_integer() {
                    return Err(QformError::Invalid(format!("d_{i} b(g_{i}, g_{j}) not integral")));
                }
            }
        }
        if self.order() > MAX_ORDER {
            return Err(QformError::TooLarge(self.order().to_string()));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    fn b_gen(&self, i: usize, j: usize) -> Rat {
        if i == j {
            mod_q(self.gram[i][i].clone(), 1)
        } else {
            self.gram[i][j].clone()
        }
    }

    pub fn q(&self, x: &[i64]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank() {
            if x[i] == 0 {
                continue;
            }
            acc += Rat::from_integer(BigInt::from(x[i] * x[i])) * &self.gram[i][i];
            for j in i + 1..self.rank() {
                acc += Rat::from_integer(BigInt::from(2 * x[i] * x[j])) * &self.gram[i][j];
            }
        }
        mod_q(acc, 2)
    }

    pub fn b(&self, x: &[i64], y: &[i64]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                if x[i] != 0 && y[j] != 0 {
                    acc += Rat::from_integer(BigInt::from(x[i] * y[j])) * self.b_gen(i, j);
                }
            }
        }
        mod_q(acc, 1)
    }

    /// All elements in mixed-radix order.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &d in &self.orders {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for e in &out {
                for k in 0..d as i64 {
                    let mut e2 = e.clone();
                    e2.push(k);
                    next.push(e2);
                }
            }
            out = next;
        }
        out
    }

    fn index(&self, x: &[i64]) -> usize {
        let mut idx = 0usize;
        for (k, &d) in x.iter().zip(&self.orders) {
            idx = idx * d as usize + k.rem_euclid(d as i64) as usize;
        }
        idx
    }

    fn reduce(&self, x: &[i64]) -> Vec<i64> {
        x.iter().zip(&self.orders).map(|(k, &d)| k.rem_euclid(d as i64)).collect()
    }

    fn neg_elem(&self, x: &[i64]) -> Vec<i64> {
        self.reduce(&x.iter().map(|k| -k).collect::<Vec<_>>())
    }

    fn elem_order(&self, x: &[i64]) -> u64 {
        x.iter()
            .zip(&self.orders)
            .map(|(&k, &d)| d / (k.rem_euclid(d as i64) as u64).gcd(&d))
            .fold(1, |a, b| a.lcm(&b))
    }

    /// The form with q replaced by -q.
    pub fn negate(&self) -> Self {
        let n = self.rank();
        let mut gram = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = mod_q(-self.gram[i][j].clone(), if i == j { 2 } else { 1 });
            }
        }
        FiniteQuadraticForm { orders: self.orders.clone(), gram }
    }

    /// Invariant factors d1 | d2 | ... of the group (all > 1).
    pub fn invariant_factors(&self) -> Vec<u64> {
        let n = self.rank();
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(self.orders[i]));
        }
        smith_normal_form(&m)
            .divisors()
            .iter()
            .map(|d| d.to_u64().expect("small order"))
            .filter(|&d| d > 1)
            .collect()
    }

    /// Canonical invariant: invariant factors plus the sorted q-value distribution.
    pub fn canonical_data(&self) -> CanonicalForm {
        let mut dist: BTreeMap<String, u64> = BTreeMap::new();
        for x in self.elements() {
            *dist.entry(rat_str(&self.q(&x))).or_insert(0) += 1;
        }
        CanonicalForm { invariant_factors: self.invariant_factors(), q_distribution: dist.into_iter().collect() }
    }

    /// Isometries F -> other, as images of the generators (all of them if `all`).
    fn isometries(&self, other: &FiniteQuadraticForm, all: bool) -> Vec<Vec<Vec<i64>>> {
        if self.order() != other.order() {
            return vec![];
        }
        let targets = other.elements();
        let mut found = Vec::new();
        let mut chosen: Vec<Vec<i64>> = Vec::new();
        self.iso_search(other, &targets, &mut chosen, &mut found, all);
        found
    }

    fn iso_search(
        &self,
        other: &FiniteQuadraticForm,
        targets: &[Vec<i64>],
        chosen: &mut Vec<Vec<i64>>,
        found: &mut Vec<Vec<Vec<i64>>>,
        all: bool,
    ) {
        if !all && !found.is_empty() {
            return;
        }
        let i = chosen.len();
        if i == self.rank() {
            if self.image_size(other, chosen) == self.order() {
                found.push(chosen.clone());
            }
            return;
        }
        for t in targets {
            if self.orders[i] % other.elem_order(t) != 0 {
                continue;
            }
            if other.q(t) != self.gram[i][i] {
                continue;
            }
            if (0..i).any(|j| other.b(t, &chosen[j]) != self.gram[i][j]) {
                continue;
            }
            chosen.push(t.clone());
            self.iso_search(other, targets, chosen, found, all);
            chosen.pop();
        }
    }

    fn map_elem(&self, other: &FiniteQuadraticForm, images: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
        let mut y = vec![0i64; other.rank()];
        for (k, img) in x.iter().zip(images) {
            for j in 0..other.rank() {
                y[j] += k * img[j];
            }
        }
        other.reduce(&y)
    }

    fn image_size(&self, other: &FiniteQuadraticForm, images: &[Vec<i64>]) -> u64 {
        let mut seen = vec![false; other.order() as usize];
        let mut count = 0;
        for x in self.elements() {
            let idx = other.index(&self.map_elem(other, images, &x));
            if !seen[idx] {
                seen[idx] = true;
                count += 1;
            }
        }
        count
    }

    pub fn is_isomorphic(&self, other: &FiniteQuadraticForm) -> bool {
        self.canonical_data() == other.canonical_data() && !self.isometries(other, false).is_empty()
    }

    /// Orbit representatives of the action of `group` (as generator images) on elements.
    fn orbits(&self, group: &[Vec<Vec<i64>>], subset: impl Fn(&[i64]) -> bool) -> Vec<Vec<Vec<i64>>> {
        let elems = self.elements();
        let n = elems.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for g in group {
            for (i, x) in elems.iter().enumerate() {
                let j = self.index(&self.map_elem(self, g, x));
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<Vec<i64>>> = BTreeMap::new();
        for (i, x) in elems.iter().enumerate() {
            if subset(x) {
                let r = find(&mut parent, i);
                classes.entry(r).or_default().push(x.clone());
            }
        }
        classes.into_values().collect()
    }

    fn minus_one(&self) -> Vec<Vec<i64>> {
        (0..self.rank())
            .map(|i| {
                let mut e = vec![0i64; self.rank()];
                e[i] = 1;
                self.neg_elem(&e)
            })
            .collect()
    }

    /// Orbits of {±1} on the elements.
    pub fn pm_orbits(&self) -> Vec<Vec<Vec<i64>>> {
        self.orbits(&[self.minus_one()], |_| true)
    }

    pub fn orthogonal_group(&self) -> Vec<Vec<Vec<i64>>> {
        self.isometries(self, true)
    }

    pub fn is_isotropic(&self, x: &[i64]) -> bool {
        self.q(x).is_zero()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "orders": self.orders,
            "gram": self.gram.iter().map(|r| r.iter().map(rat_str).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub invariant_factors: Vec<u64>,
    pub q_distribution: Vec<(String, u64)>,
}

/// A = L*/L with q(x) = x·x for an even nondegenerate Gram matrix.
pub fn discriminant_form(gram: &IntMatrix) -> Result<FiniteQuadraticForm, QformError> {
    if !gram.is_symmetric() {
        return Err(QformError::NotSymmetric);
    }
    for i in 0..gram.rows {
        if gram.get(i, i).is_odd() {
            return Err(QformError::Odd(gram.get(i, i).to_string()));
        }
    }
    let n = gram.rows;
    if n > 0 && gram.det().is_zero() {
        return Err(QformError::Degenerate);
    }
    if n == 0 {
        return Ok(FiniteQuadraticForm::trivial());
    }
    let snf = smith_normal_form(gram);
    let ginv = gram.to_rat().inverse().ok_or(QformError::Degenerate)?;
    let uinv = snf.u.to_rat().inverse().expect("U unimodular");
    let mut orders = Vec::new();
    let mut ys: Vec<Vec<Rat>> = Vec::new();
    for i in 0..n {
        let d = snf.d.get(i, i).abs();
        if d.is_one() {
            continue;
        }
        let d = d.to_u64().ok_or_else(|| QformError::TooLarge(d.to_string()))?;
        orders.push(d);
        // y = U^{-1} e_i, a lift of the i-th cyclic generator of Z^n / G Z^n
        ys.push((0..n).map(|r| uinv.get(r, i).clone()).collect());
    }
    let k = orders.len();
    let mut gm = vec![vec![Rat::zero(); k]; k];
    for a in 0..k {
        let gy = ginv.mul_vec(&ys[a]);
        for b in 0..k {
            let v = ys[b].iter().zip(&gy).fold(Rat::zero(), |acc, (p, q)| acc + p * q);
            gm[a][b] = if a == b { mod_q(v, 2) } else { mod_q(v, 1) };
        }
    }
    let f = FiniteQuadraticForm { orders, gram: gm };
    f.validate()?;
    Ok(f)
}

/// Parse a form from generator data: orders, q-values and pairings as strings.
pub fn form_from_strings(orders: &[u64], q: &[String], pairings: &[(usize, usize, String)]) -> Result<FiniteQuadraticForm, QformError> {
    let qs: Vec<Rat> = q
        .iter()
        .map(|s| parse_rat(s).ok_or_else(|| QformError::Invalid(format!("bad rational {s}"))))
        .collect::<Result<_, _>>()?;
    let mut pm = BTreeMap::new();
    for (i, j, s) in pairings {
        pm.insert((*i, *j), parse_rat(s).ok_or_else(|| QformError::Invalid(format!("bad rational {s}")))?);
    }
    FiniteQuadraticForm::from_generators(orders.to_vec(), qs, pm)
}

/// Integer combination of N-th roots of unity: sum_k coeffs[k] ζ_N^k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicValue {
    pub n: u64,
    pub coeffs: Vec<i64>,
}

impl CyclotomicValue {
    pub fn integer(k: i64) -> Self {
        CyclotomicValue { n: 1, coeffs: vec![k] }
    }

    /// √-3 = 1 + 2ζ_3.
    pub fn sqrt_minus3() -> Self {
        CyclotomicValue { n: 3, coeffs: vec![1, 2, 0] }
    }

    /// √-1 = ζ_4.
    pub fn i() -> Self {
        CyclotomicValue { n: 4, coeffs: vec![0, 1, 0, 0] }
    }

    pub fn lift(&self, m: u64) -> Self {
        assert!(m % self.n == 0, "lift to a multiple of the order");
        let s = m / self.n;
        let mut coeffs = vec![0i64; m as usize];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[k * s as usize] += c;
        }
        CyclotomicValue { n: m, coeffs }
    }

    pub fn scale(&self, k: i64) -> Self {
        CyclotomicValue { n: self.n, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.n.lcm(&other.n);
        let (a, b) = (self.lift(m), other.lift(m));
        CyclotomicValue { n: m, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.n.lcm(&other.n);
        let (a, b) = (self.lift(m), other.lift(m));
        let mut coeffs = vec![0i64; m as usize];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                coeffs[(i + j) % m as usize] += x * y;
            }
        }
        CyclotomicValue { n: m, coeffs }
    }

    pub fn conj(&self) -> Self {
        let n = self.n as usize;
        let mut coeffs = vec![0i64; n];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[(n - k) % n] += c;
        }
        CyclotomicValue { n: self.n, coeffs }
    }

    /// Exact zero test: reduce modulo the N-th cyclotomic polynomial.
    pub fn is_zero(&self) -> bool {
        let phi = cyclotomic_poly(self.n);
        poly_rem(&self.coeffs, &phi).iter().all(|&c| c == 0)
    }

    pub fn exact_eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    pub fn eval(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            let t = 2.0 * PI * k as f64 / self.n as f64;
            re += c as f64 * t.cos();
            im += c as f64 * t.sin();
        }
        (re, im)
    }
}

/// Coefficients (low degree first) of the N-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let da = a.len() - 1;
    let mut q = vec![0i64; da - db + 1];
    for k in (0..=da - db).rev() {
        let c = r[k + db];
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

fn poly_rem(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let k = r.len() - 1 - db;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] -= c * bj;
        }
        r.pop();
    }
    r
}

/// G(m, F) = sum_γ exp(π i m q(γ)).
pub fn gauss_sum(m: i64, f: &FiniteQuadraticForm) -> CyclotomicValue {
    let vals: Vec<Rat> = f
        .elements()
        .iter()
        .map(|x| mod_q(f.q(x) * Rat::from_integer(BigInt::from(m)) / Rat::from_integer(2.into()), 1))
        .collect();
    let n = vals.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom())).to_u64().expect("small level");
    let mut coeffs = vec![0i64; n as usize];
    for v in vals {
        let k = (v * Rat::from_integer(BigInt::from(n))).to_integer().to_usize().unwrap();
        coeffs[k] += 1;
    }
    CyclotomicValue { n, coeffs }
}

/// |G(1,F) - sqrt|A| e^{2 pi i sigma/8}| for a form of signature sigma.
pub fn milgram_defect(f: &FiniteQuadraticForm, signature: i64) -> f64 {
    let (re, im) = gauss_sum(1, f).eval();
    let r = (f.order() as f64).sqrt();
    let phase = std::f64::consts::PI * signature as f64 / 4.0;
    ((re - r * phase.cos()).powi(2) + (im - r * phase.sin()).powi(2)).sqrt()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaInvariants {
    pub alpha3: String,
    /// Number of ±1-orbits of isotropic elements.
    pub alpha4_isotropic: u64,
    /// |A / ±1| read literally.
    pub alpha4_literal: u64,
}

pub fn alpha3(f: &FiniteQuadraticForm) -> Rat {
    f.pm_orbits()
        .iter()
        .map(|orb| {
            let q = f.q(&orb[0]);
            mod_q(-q / Rat::from_integer(2.into()), 1)
        })
        .fold(Rat::zero(), |a, b| a + b)
}

pub fn alpha_invariants(f: &FiniteQuadraticForm) -> AlphaInvariants {
    let orbits = f.pm_orbits();
    AlphaInvariants {
        alpha3: rat_str(&alpha3(f)),
        alpha4_isotropic: orbits.iter().filter(|o| f.is_isotropic(&o[0])).count() as u64,
        alpha4_literal: orbits.len() as u64,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PicardRank {
    pub rho: i64,
    pub alpha4_used: u64,
    pub convention: String,
    /// Value of the formula with α₄ = |A/±1| literally.
    pub rho_literal: f64,
    pub alpha: AlphaInvariants,
}

fn picard_float(f: &FiniteQuadraticForm, alpha4: u64) -> f64 {
    let g2 = gauss_sum(2, f).eval();
    let g1 = gauss_sum(1, f).eval();
    let g3 = gauss_sum(-3, f).eval();
    let a3 = alpha3(f);
    let a3 = a3.numer().to_f64().unwrap() / a3.denom().to_f64().unwrap();
    // Re[i (G1 + G-3)] = -(Im G1 + Im G-3)
    let re_i = -(g1.1 + g3.1);
    29.0 / 4.0 - g2.0 / 12.0 - a3 - alpha4 as f64 - re_i / (9.0 * 3f64.sqrt())
}

/// The Picard-rank formula, with α₄ taken as the isotropic ±1-orbit count.
pub fn picard_rank(f: &FiniteQuadraticForm) -> Result<PicardRank, QformError> {
    let alpha = alpha_invariants(f);
    let v = picard_float(f, alpha.alpha4_isotropic);
    let r = v.round();
    if (v - r).abs() > 1e-9 {
        return Err(QformError::NonIntegral(v));
    }
    Ok(PicardRank {
        rho: r as i64,
        alpha4_used: alpha.alpha4_isotropic,
        convention: "alpha4 = number of isotropic orbits of A/{±1}".into(),
        rho_literal: picard_float(f, alpha.alpha4_literal),
        alpha,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropicCensus {
    /// Isotropic elements modulo ±1 (including 0).
    pub pm_orbits: u64,
    /// Isotropic elements modulo O(q) (including 0).
    pub oq_orbits: u64,
    pub oq_order: u64,
}

pub fn isotropic_census(f: &FiniteQuadraticForm) -> IsotropicCensus {
    let iso = |x: &[i64]| f.is_isotropic(x);
    let pm = f.orbits(&[f.minus_one()], iso).len() as u64;
    let og = f.orthogonal_group();
    let oq = f.orbits(&og, iso).len() as u64;
    IsotropicCensus { pm_orbits: pm, oq_orbits: oq, oq_order: og.len() as u64 }
}

fn cyclic(d: u64, q: Rat) -> FiniteQuadraticForm {
    FiniteQuadraticForm::from_generators(vec![d], vec![q], BTreeMap::new()).expect("valid cyclic form")
}

/// The discriminant forms of Σ_n as listed by generators.
pub fn sigma_form(n: u8) -> Option<FiniteQuadraticForm> {
    let r = |a: i64, b: i64| Rat::new(a.into(), b.into());
    match n {
        1 => Some(cyclic(9, r(-10, 9))),
        2 => Some(cyclic(9, r(-8, 9))),
        3 => Some(
            FiniteQuadraticForm::from_generators(vec![3, 3], vec![r(-2, 3), r(-4, 3)], BTreeMap::new())
                .expect("valid form"),
        ),
        _ => None,
    }
}

/// Generator data of a form catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormGenerators {
    pub orders: Vec<u64>,
    pub q: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairings: Vec<(usize, usize, String)>,
}

/// Form catalog entry: a Gram matrix, generator data, or both (which must agree).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<FormGenerators>,
}

impl FormEntry {
    pub fn form(&self) -> Result<FiniteQuadraticForm, QformError> {
        let from_gram = self.gram.as_ref().map(|g| discriminant_form(&IntMatrix::from_i64(g))).transpose()?;
        let from_gens = self
            .generators
            .as_ref()
            .map(|g| form_from_strings(&g.orders, &g.q, &g.pairings))
            .transpose()?;
        match (from_gram, from_gens) {
            (Some(a), Some(b)) if !a.is_isomorphic(&b) => {
                Err(QformError::Invalid(format!("{}: gram and generators disagree", self.name)))
            }
            (Some(a), _) => Ok(a),
            (None, Some(b)) => Ok(b),
            (None, None) => Err(QformError::Invalid(format!("{}: needs gram or generators", self.name))),
        }
    }
}

pub fn builtin_forms() -> Vec<FormEntry> {
    let gens = |orders: Vec<u64>, q: &[&str]| FormGenerators {
        orders,
        q: q.iter().map(|s| s.to_string()).collect(),
        pairings: Vec::new(),
    };
    vec![
        FormEntry { name: "Sigma1".into(), gram: None, generators: Some(gens(vec![9], &["-10/9"])) },
        FormEntry { name: "Sigma2".into(), gram: None, generators: Some(gens(vec![9], &["-8/9"])) },
        FormEntry { name: "Sigma3".into(), gram: None, generators: Some(gens(vec![3, 3], &["-2/3", "-4/3"])) },
    ]
}

/// Entries of `dir/forms.json` if present, else the built-in Σ forms.
pub fn load_forms(dir: Option<&std::path::Path>) -> Result<Vec<FormEntry>, QformError> {
    if let Some(p) = dir.map(|d| d.join("forms.json")).filter(|p| p.exists()) {
        let text = std::fs::read_to_string(&p).map_err(|e| QformError::Invalid(format!("{}: {e}", p.display())))?;
        return serde_json::from_str(&text).map_err(|e| QformError::Invalid(format!("{}: {e}", p.display())));
    }
    Ok(builtin_forms())
}

pub fn form_named(name: &str, entries: &[FormEntry]) -> Option<Result<FiniteQuadraticForm, QformError>> {
    entries.iter().find(|e| e.name == name).map(FormEntry::form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;

    fn r(a: i64, b: i64) -> Rat {
        Rat::new(a.into(), b.into())
    }

    #[test]
    fn disc_forms_from_gram() {
        let u = IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert!(discriminant_form(&u).unwrap().is_trivial());
        let a2 = IntMatrix::from_i64(&[vec![-2, 1], vec![1, -2]]);
        let f = discriminant_form(&a2).unwrap();
        assert_eq!(f.orders, vec![3]);
        assert!(f.is_isomorphic(&cyclic(3, r(-2, 3))));
        let t1 = IntMatrix::from_i64(&[vec![2, 3], vec![3, 0]]);
        let f = discriminant_form(&t1).unwrap();
        assert!(f.is_isomorphic(&cyclic(9, r(10, 9))));
        assert!(f.negate().is_isomorphic(&sigma_form(1).unwrap()));
        assert!(discriminant_form(&IntMatrix::from_i64(&[vec![1]])).is_err());
        assert!(discriminant_form(&IntMatrix::from_i64(&[vec![2, 1], vec![1, 0]])).is_err() == false);
    }

    #[test]
    fn gauss_sums_sigma1() {
        let f = sigma_form(1).unwrap();
        assert!(gauss_sum(1, &f).exact_eq(&CyclotomicValue::integer(3)));
        assert!(gauss_sum(2, &f).exact_eq(&CyclotomicValue::integer(3)));
        assert!(gauss_sum(-3, &f).exact_eq(&CyclotomicValue::sqrt_minus3().scale(-3)));
        assert!(gauss_sum(5, &FiniteQuadraticForm::trivial()).exact_eq(&CyclotomicValue::integer(1)));
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert!(CyclotomicValue::sqrt_minus3().mul(&CyclotomicValue::sqrt_minus3()).exact_eq(&CyclotomicValue::integer(-3)));
    }

    #[test]
    fn alpha_and_rho() {
        let a = alpha_invariants(&sigma_form(1).unwrap());
        assert_eq!((a.alpha3.as_str(), a.alpha4_isotropic, a.alpha4_literal), ("5/3", 2, 5));
        let t = alpha_invariants(&FiniteQuadraticForm::trivial());
        assert_eq!((t.alpha3.as_str(), t.alpha4_isotropic, t.alpha4_literal), ("0", 1, 1));
        let rhos: Vec<i64> = (1..=3).map(|n| picard_rank(&sigma_form(n).unwrap()).unwrap().rho).collect();
        assert_eq!(rhos, vec![3, 4, 3]);
    }

    #[test]
    fn milgram_and_conjugation() {
        for n in 1..=3 {
            let f = sigma_form(n).unwrap();
            assert!(milgram_defect(&f, -16) < 1e-9);
            for m in -4..=4 {
                assert!(gauss_sum(m, &f).conj().exact_eq(&gauss_sum(-m, &f)));
            }
        }
        // A2, A3 negative definite: signature = -rank
        for (g, r) in [
            (vec![vec![-2, 1], vec![1, -2]], 2),
            (vec![vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -2]], 3),
        ] {
            let f = discriminant_form(&IntMatrix::from_i64(&g)).unwrap();
            assert!(milgram_defect(&f, -r) < 1e-9);
            assert!(milgram_defect(&f, r) > 1e-3);
        }
    }

    #[test]
    fn isotropic_counts() {
        assert_eq!(isotropic_census(&sigma_form(1).unwrap()).pm_orbits, 2);
        let c3 = isotropic_census(&sigma_form(3).unwrap());
        assert_eq!((c3.pm_orbits, c3.oq_orbits), (3, 2));
        assert_eq!(isotropic_census(&FiniteQuadraticForm::trivial()).oq_orbits, 1);
    }
}
