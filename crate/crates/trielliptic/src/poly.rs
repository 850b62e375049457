//! Sparse multivariate polynomials over Q and bidegree (2,3) forms.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("wrong bidegree: expected (2,3), found term {0:?}")]
    Bidegree(Vec<u32>),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Sparse polynomial in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{c}*{e:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rat::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Rat) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.min_degree()
    }

    /// Part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * Rat::from_integer(BigInt::from(e[i])));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::constant(self.nvars, Rat::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, pt: &[Rat]) -> Rat {
        assert_eq!(pt.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in pt.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `subs[i]` (polynomials in `m` variables) for variable i.
    pub fn substitute(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.nvars);
        let m = subs.first().map_or(0, |p| p.nvars);
        let mut cache: Vec<Vec<Poly>> = subs.iter().map(|s| vec![Poly::constant(m, Rat::one()), s.clone()]).collect();
        let mut out = Poly::zero(m);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while cache[i].len() <= k as usize {
                    let next = &cache[i][cache[i].len() - 1] * &subs[i];
                    cache[i].push(next);
                }
                if k > 0 {
                    t = &t * &cache[i][k as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Translate: p(x + shift).
    pub fn shift(&self, shift: &[Rat]) -> Poly {
        let subs: Vec<Poly> = (0..self.nvars)
            .map(|i| &Poly::var(self.nvars, i) + &Poly::constant(self.nvars, shift[i].clone()))
            .collect();
        self.substitute(&subs)
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, exps: &[u32]) -> Option<Poly> {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().zip(exps).any(|(a, b)| a < b) {
                return None;
            }
            out.terms.insert(e.iter().zip(exps).map(|(a, b)| a - b).collect(), c.clone());
        }
        Some(out)
    }

    /// Largest power of variable `i` dividing every term.
    pub fn var_order(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).min()
    }

    /// Make the leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.terms.iter().next_back() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// True if `self = k * other` for some nonzero rational k.
    pub fn proportional(&self, other: &Poly) -> bool {
        self.monic() == other.monic()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &Rat> {
        self.terms.values()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut acc: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rat::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { nvars: self.nvars, terms: acc }
    }
}

/// Monomial x0^u x1^(2-u) y0^v y1^w y2^(3-v-w).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct BiMonomial {
    pub u: u8,
    pub v: u8,
    pub w: u8,
}

impl BiMonomial {
    pub fn new(u: u8, v: u8, w: u8) -> Self {
        assert!(u <= 2 && v + w <= 3, "not a (2,3) monomial");
        BiMonomial { u, v, w }
    }

    /// All 30 monomials, in lexicographic (u,v,w) order.
    pub fn all() -> Vec<BiMonomial> {
        let mut out = Vec::with_capacity(30);
        for u in 0..=2 {
            for v in 0..=3 {
                for w in 0..=(3 - v) {
                    out.push(BiMonomial { u, v, w });
                }
            }
        }
        out
    }

    pub fn exponents(&self) -> [u32; 5] {
        let (u, v, w) = (self.u as u32, self.v as u32, self.w as u32);
        [u, 2 - u, v, w, 3 - v - w]
    }

    pub fn from_exponents(e: &[u32]) -> Option<BiMonomial> {
        if e.len() != 5 || e[0] + e[1] != 2 || e[2] + e[3] + e[4] != 3 {
            return None;
        }
        Some(BiMonomial { u: e[0] as u8, v: e[2] as u8, w: e[3] as u8 })
    }
}

impl fmt::Display for BiMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x0", "x1", "y0", "y1", "y2"];
        let mut parts = Vec::new();
        for (n, k) in names.iter().zip(self.exponents()) {
            match k {
                0 => {}
                1 => parts.push(n.to_string()),
                _ => parts.push(format!("{n}^{k}")),
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Bidegree (2,3) form, stored sparsely by monomial.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiForm {
    pub coeffs: BTreeMap<BiMonomial, Rat>,
}

impl BiForm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (BiMonomial, Rat)>>(terms: I) -> Self {
        let mut f = Self::new();
        for (m, c) in terms {
            f.add(m, c);
        }
        f
    }

    pub fn add(&mut self, m: BiMonomial, c: Rat) {
        let e = self.coeffs.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn support(&self) -> Vec<BiMonomial> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: BiMonomial) -> Rat {
        self.coeffs.get(&m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::zero(5);
        for (m, c) in &self.coeffs {
            p.add_term(m.exponents().to_vec(), c.clone());
        }
        p
    }

    pub fn from_poly(p: &Poly) -> Result<BiForm, PolyError> {
        let mut f = BiForm::new();
        for (e, c) in &p.terms {
            let m = BiMonomial::from_exponents(e).ok_or_else(|| PolyError::Bidegree(e.clone()))?;
            f.add(m, c.clone());
        }
        Ok(f)
    }

    /// Parse the text format: one `coeff u v w` term per line, `#` comments.
    pub fn parse(text: &str) -> Result<BiForm, PolyError> {
        let mut f = BiForm::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| PolyError::Parse { line: i + 1, msg: msg.to_string() };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 4 {
                return Err(err("expected `coeff u v w`"));
            }
            let c = parse_rat(toks[0]).ok_or_else(|| err("bad coefficient"))?;
            let mut e = [0u8; 3];
            for k in 0..3 {
                e[k] = toks[k + 1].parse().map_err(|_| err("bad exponent"))?;
            }
            if e[0] > 2 || e[1] + e[2] > 3 {
                return Err(PolyError::Bidegree(vec![e[0] as u32, e[1] as u32, e[2] as u32]));
            }
            f.add(BiMonomial::new(e[0], e[1], e[2]), c);
        }
        Ok(f)
    }

    pub fn to_text(&self) -> String {
        self.coeffs
            .iter()
            .map(|(m, c)| format!("{} {} {} {}\n", c, m.u, m.v, m.w))
            .collect()
    }
}

impl fmt::Display for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(BigInt::from_str(n.trim()).ok()?, d))
        }
        None => Some(Rat::from_integer(BigInt::from_str(s).ok()?)),
    }
}

/// Rational to a short string, e.g. "-10/9".
pub fn rat_str(r: &Rat) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}{}/{}", if r.is_negative() { "-" } else { "" }, r.numer().abs(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ri;

    #[test]
    fn thirty_monomials() {
        let all = BiMonomial::all();
        assert_eq!(all.len(), 30);
        for m in &all {
            assert_eq!(BiMonomial::from_exponents(&m.exponents()), Some(*m));
        }
    }

    #[test]
    fn parse_roundtrip() {
        let f = BiForm::parse("3/2 1 1 1\n-1 0 3 0 # x1^2 y0^3\n").unwrap();
        assert_eq!(f.coeff(BiMonomial::new(1, 1, 1)), Rat::new(3.into(), 2.into()));
        assert_eq!(BiForm::parse(&f.to_text()).unwrap(), f);
        assert!(BiForm::parse("1 3 0 0").is_err());
        assert!(BiForm::parse("1 0 0").is_err());
    }

    #[test]
    fn substitution_and_derivative() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = &(&x * &x) - &y;
        assert_eq!(p.derivative(0), x.scale(&ri(2)));
        let q = p.shift(&[ri(1), ri(0)]);
        assert_eq!(q.eval(&[ri(0), ri(1)]), ri(0));
        assert_eq!(p.pow(2).total_degree(), Some(4));
    }
}
