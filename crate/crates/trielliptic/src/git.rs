//! Hilbert–Mumford weight combinatorics for (2,3) forms on P1 x P2.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{fourier_motzkin, lp_feasible, ri, Constraint, RatMatrix, Rat};
use crate::poly::{BiForm, BiMonomial, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GitError {
    #[error("zero polynomial")]
    ZeroForm,
    #[error("maximal set with no catalog label: {0:?}")]
    Unmatched(Vec<String>),
    #[error("inconsistent parameter spec for {label}: dimension {dim}")]
    Inconsistent { label: String, dim: i64 },
    #[error("unknown family label {0}")]
    UnknownLabel(String),
    #[error("torus verdict disagrees with family catalog: {0}")]
    Disagreement(String),
}

/// Normalized weights (a, b, c); full diagonal (a, -a, b, c, -b-c).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OneParamSubgroup {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl OneParamSubgroup {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        OneParamSubgroup { a, b, c }
    }

    pub fn is_normalized(&self) -> bool {
        self.a >= 0 && self.b >= self.c && self.c >= -self.b - self.c
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0
    }

    pub fn diagonal(&self) -> [i64; 5] {
        [self.a, -self.a, self.b, self.c, -self.b - self.c]
    }

    pub fn as_vec(&self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }

    /// Divide by the gcd of the entries.
    pub fn primitive(&self) -> Self {
        let g = self.a.gcd(&self.b).gcd(&self.c);
        if g == 0 {
            return *self;
        }
        OneParamSubgroup::new(self.a / g, self.b / g, self.c / g)
    }

    fn from_rat(v: &[Rat]) -> Self {
        let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let g = if g.is_zero() { BigInt::one() } else { g };
        let f = |x: &BigInt| (x / &g).to_i64().expect("witness fits in i64");
        OneParamSubgroup::new(f(&ints[0]), f(&ints[1]), f(&ints[2]))
    }
}

impl fmt::Display for OneParamSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.diagonal();
        write!(f, "({},{},{},{},{})", d[0], d[1], d[2], d[3], d[4])
    }
}

/// Coefficients of the weight of `m` as a linear form in (a, b, c).
pub fn weight_vector(m: BiMonomial) -> [i64; 3] {
    let (u, v, w) = (m.u as i64, m.v as i64, m.w as i64);
    [2 * u - 2, 2 * v + w - 3, v + 2 * w - 3]
}

pub fn weight(m: BiMonomial, l: OneParamSubgroup) -> i64 {
    let d = l.diagonal();
    let e = m.exponents();
    (0..5).map(|i| d[i] * e[i] as i64).sum()
}

pub fn degeneration_leq(m1: BiMonomial, m2: BiMonomial) -> bool {
    m1.u <= m2.u && m1.v <= m2.v && m1.v + m1.w <= m2.v + m2.w
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Nonpositive,
    Negative,
}

impl Sign {
    fn admits(self, w: i64) -> bool {
        match self {
            Sign::Nonpositive => w <= 0,
            Sign::Negative => w < 0,
        }
    }
}

/// M^sign(λ) for an integer λ.
pub fn monomial_set(l: OneParamSubgroup, sign: Sign) -> BTreeSet<BiMonomial> {
    BiMonomial::all().into_iter().filter(|&m| sign.admits(weight(m, l))).collect()
}

pub fn down_set(gens: &[BiMonomial]) -> BTreeSet<BiMonomial> {
    BiMonomial::all()
        .into_iter()
        .filter(|&m| gens.iter().any(|&g| degeneration_leq(m, g)))
        .collect()
}

/// Maximal elements of `set` under the degeneration order.
pub fn maximal_elements(set: &BTreeSet<BiMonomial>) -> Vec<BiMonomial> {
    set.iter()
        .copied()
        .filter(|&m| !set.iter().any(|&n| n != m && degeneration_leq(m, n)))
        .collect()
}

/// Central hyperplane arrangement cut by a pointed cone, sliced by `slice = 1`.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub hyperplanes: Vec<Vec<i64>>,
    /// Functionals that are >= 0 on the cone.
    pub cone: Vec<Vec<i64>>,
    /// Positive on the cone minus the origin.
    pub slice: Vec<i64>,
}

impl Arrangement {
    fn dim(&self) -> usize {
        self.slice.len()
    }

    /// One rational point in every relatively open face of the arrangement
    /// meeting the slice, ordered deterministically.
    pub fn face_points(&self) -> Vec<Vec<Rat>> {
        let d = self.dim();
        let to_rat = |v: &[i64]| v.iter().map(|&x| ri(x)).collect::<Vec<Rat>>();
        let s = RatMatrix::from_rows(&[to_rat(&self.slice)], d);
        let p0 = s.solve(&[Rat::one()]).expect("slice functional is nonzero");
        let basis = s.kernel();
        let k = basis.len();
        // restrict h to the slice: h(p0) + sum h(b_j) t_j
        let restrict = |h: &[i64]| -> (Vec<Rat>, Rat) {
            let hv = to_rat(h);
            let dot = |x: &[Rat]| hv.iter().zip(x).fold(Rat::zero(), |acc, (p, q)| acc + p * q);
            (basis.iter().map(|b| dot(b)).collect(), dot(&p0))
        };
        let lift = |t: &[Rat]| -> Vec<Rat> {
            let mut x = p0.clone();
            for (tj, b) in t.iter().zip(&basis) {
                for i in 0..d {
                    x[i] += tj * &b[i];
                }
            }
            x
        };
        let base: Vec<Constraint> = self
            .cone
            .iter()
            .map(|c| {
                let (a, b) = restrict(c);
                Constraint { a: a.into_iter().map(|x| -x).collect(), b: -b, strict: false }
            })
            .collect();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut regions: Vec<(Vec<Constraint>, Vec<Rat>)> = match fourier_motzkin(&base, k) {
            Some(w) => vec![(base, w)],
            None => return Vec::new(),
        };
        for h in &self.hyperplanes {
            let key = normalize_hyperplane(h);
            if key.iter().all(|&x| x == 0) || !seen.insert(key) {
                continue;
            }
            let (a, b) = restrict(h);
            let eval = |t: &[Rat]| a.iter().zip(t).fold(b.clone(), |acc, (p, q)| acc + p * q);
            regions = regions
                .into_par_iter()
                .flat_map_iter(|(cons, wit)| {
                    let here = eval(&wit).cmp(&Rat::zero());
                    let mut out = Vec::new();
                    for side in [std::cmp::Ordering::Less, std::cmp::Ordering::Equal, std::cmp::Ordering::Greater] {
                        let mut c2 = cons.clone();
                        let neg: Vec<Rat> = a.iter().map(|x| -x.clone()).collect();
                        match side {
                            std::cmp::Ordering::Less => c2.push(Constraint { a: a.clone(), b: b.clone(), strict: true }),
                            std::cmp::Ordering::Greater => c2.push(Constraint { a: neg, b: -b.clone(), strict: true }),
                            std::cmp::Ordering::Equal => {
                                c2.push(Constraint { a: a.clone(), b: b.clone(), strict: false });
                                c2.push(Constraint { a: neg, b: -b.clone(), strict: false });
                            }
                        }
                        if side == here {
                            out.push((c2, wit.clone()));
                        } else if let Some(w) = fourier_motzkin(&c2, k) {
                            out.push((c2, w));
                        }
                    }
                    out
                })
                .collect();
        }
        regions.into_iter().map(|(_, w)| lift(&w)).collect()
    }
}

fn normalize_hyperplane(h: &[i64]) -> Vec<i64> {
    let g = h.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return h.to_vec();
    }
    let mut v: Vec<i64> = h.iter().map(|x| x / g).collect();
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

/// Inclusion-maximal sets `{i : weights[i]·λ (<=|<) 0}` over the faces of the
/// arrangement, as (bitmask, witness).
pub fn maximal_weight_sets(arr: &Arrangement, weights: &[Vec<i64>], sign: Sign) -> Vec<(u64, Vec<Rat>)> {
    assert!(weights.len() <= 64);
    let mut sets: BTreeMap<u64, Vec<Rat>> = BTreeMap::new();
    for p in arr.face_points() {
        let mut mask = 0u64;
        for (i, w) in weights.iter().enumerate() {
            let val = w.iter().zip(&p).fold(Rat::zero(), |acc, (x, y)| acc + ri(*x) * y);
            let ok = match sign {
                Sign::Nonpositive => !val.is_positive(),
                Sign::Negative => val.is_negative(),
            };
            if ok {
                mask |= 1 << i;
            }
        }
        // keep the witness of smallest integer height
        let e = sets.entry(mask).or_insert_with(|| p.clone());
        if height(&p) < height(e) {
            *e = p;
        }
    }
    let masks: Vec<u64> = sets.keys().copied().collect();
    sets.into_iter()
        .filter(|(m, _)| !masks.iter().any(|&n| n != *m && n & m == *m))
        .collect()
}

fn height(p: &[Rat]) -> BigInt {
    let l = p.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = p.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter().map(|x| (x / &g).abs()).max().unwrap_or_default()
}

fn normalization_cone() -> Vec<Vec<i64>> {
    vec![vec![1, 0, 0], vec![0, 1, -1], vec![0, 1, 2]]
}

/// The arrangement of the 30 weight functionals in the normalization cone.
pub fn weight_arrangement() -> Arrangement {
    Arrangement {
        hyperplanes: BiMonomial::all().into_iter().map(|m| weight_vector(m).to_vec()).collect(),
        cone: normalization_cone(),
        slice: vec![1, 1, 0],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialFamily {
    pub label: String,
    pub sign: Sign,
    pub witness_lambda: OneParamSubgroup,
    pub maximal_monomials: Vec<BiMonomial>,
    pub full_set: BTreeSet<BiMonomial>,
}

/// Maximal sets from the chamber/face enumeration, unlabeled.
pub fn enumerate_maximal_sets(sign: Sign) -> Vec<(BTreeSet<BiMonomial>, OneParamSubgroup)> {
    let all = BiMonomial::all();
    let weights: Vec<Vec<i64>> = all.iter().map(|&m| weight_vector(m).to_vec()).collect();
    maximal_weight_sets(&weight_arrangement(), &weights, sign)
        .into_iter()
        .map(|(mask, w)| {
            let set = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i]).collect();
            (set, OneParamSubgroup::from_rat(&w))
        })
        .collect()
}

/// Enumerate maximal families and attach catalog labels by set equality.
pub fn enumerate_maximal_families(sign: Sign) -> Result<Vec<MonomialFamily>, GitError> {
    let catalog = family_catalog();
    let mut out = Vec::new();
    let mut unmatched = Vec::new();
    for (set, wit) in enumerate_maximal_sets(sign) {
        let label = catalog
            .iter()
            .filter(|e| e.sign == Some(sign))
            .find(|e| e.support() == set)
            .map(|e| e.label.to_string());
        match label {
            Some(label) => out.push(MonomialFamily {
                label,
                sign,
                witness_lambda: wit,
                maximal_monomials: maximal_elements(&set),
                full_set: set,
            }),
            None => unmatched.push(format!("{wit}: {:?}", set.iter().map(|m| m.to_string()).collect::<Vec<_>>())),
        }
    }
    if !unmatched.is_empty() {
        return Err(GitError::Unmatched(unmatched));
    }
    out.sort_by(|x, y| x.label.cmp(&y.label));
    Ok(out)
}

/// Distinct M^sign(λ) over all normalized nonzero integer λ with |a|,|b|,|c| <= bound.
pub fn grid_sets(sign: Sign, bound: i64) -> BTreeSet<BTreeSet<BiMonomial>> {
    (0..=bound)
        .into_par_iter()
        .map(|a| {
            let mut local = BTreeSet::new();
            for b in -bound..=bound {
                for c in -bound..=bound {
                    let l = OneParamSubgroup::new(a, b, c);
                    if l.is_zero() || !l.is_normalized() {
                        continue;
                    }
                    local.insert(monomial_set(l, sign));
                }
            }
            local
        })
        .reduce(BTreeSet::new, |mut x, y| {
            x.extend(y);
            x
        })
}

/// Toy problem: bidegree (1,1) on P1 x P1, monomials x0^u x1^(1-u) y0^v y1^(1-v),
/// torus weights (a, -a), (b, -b), cone a, b >= 0.
pub fn toy_maximal_sets(sign: Sign) -> Vec<BTreeSet<(u8, u8)>> {
    let mons = toy_monomials();
    let weights: Vec<Vec<i64>> = mons.iter().map(|&(u, v)| toy_weight_vector(u, v).to_vec()).collect();
    let arr = Arrangement { hyperplanes: weights.clone(), cone: vec![vec![1, 0], vec![0, 1]], slice: vec![1, 1] };
    maximal_weight_sets(&arr, &weights, sign)
        .into_iter()
        .map(|(mask, _)| (0..mons.len()).filter(|i| mask >> i & 1 == 1).map(|i| mons[i]).collect())
        .collect()
}

pub fn toy_monomials() -> Vec<(u8, u8)> {
    vec![(0, 0), (0, 1), (1, 0), (1, 1)]
}

pub fn toy_weight_vector(u: u8, v: u8) -> [i64; 2] {
    [2 * u as i64 - 1, 2 * v as i64 - 1]
}

/// Monomial grammar term: x0^u x1^(2-u) * y^mult * (any degree-`deg` monomial in `vars`).
#[derive(Clone, Copy, Debug)]
pub struct ShapeTerm {
    pub u: u8,
    pub mult: [u8; 3],
    pub deg: u8,
    pub vars: [bool; 3],
}

const fn sh(u: u8, mult: [u8; 3], deg: u8, vars: [bool; 3]) -> ShapeTerm {
    ShapeTerm { u, mult, deg, vars }
}

const ALL: [bool; 3] = [true, true, true];
const Y01: [bool; 3] = [true, true, false];
const Y12: [bool; 3] = [false, true, true];
const NONE: [bool; 3] = [false, false, false];

impl ShapeTerm {
    pub fn monomials(&self) -> Vec<BiMonomial> {
        let mut out = Vec::new();
        for e0 in 0..=self.deg {
            for e1 in 0..=self.deg - e0 {
                let e2 = self.deg - e0 - e1;
                let e = [e0, e1, e2];
                if (0..3).any(|i| e[i] > 0 && !self.vars[i]) {
                    continue;
                }
                let y: Vec<u8> = (0..3).map(|i| e[i] + self.mult[i]).collect();
                assert_eq!(y.iter().sum::<u8>(), 3, "shape term of wrong degree");
                out.push(BiMonomial::new(self.u, y[0], y[1]));
            }
        }
        out
    }
}

/// A named monomial family with its reference λ and shape.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: &'static str,
    pub sign: Option<Sign>,
    pub lambda: Option<OneParamSubgroup>,
    /// Listed maximal monomials as (u, v, w), when the table gives them.
    pub maximal: Vec<(u8, u8, u8)>,
    pub shape: Vec<ShapeTerm>,
}

impl CatalogEntry {
    pub fn support(&self) -> BTreeSet<BiMonomial> {
        self.shape.iter().flat_map(|t| t.monomials()).collect()
    }

    pub fn listed_maximal(&self) -> Vec<BiMonomial> {
        self.maximal.iter().map(|&(u, v, w)| BiMonomial::new(u, v, w)).collect()
    }
}

/// Non-stable families (N1–N7, U1–U7) and invariant families.
pub fn family_catalog() -> Vec<CatalogEntry> {
    use Sign::*;
    let l = |a, b, c| Some(OneParamSubgroup::new(a, b, c));
    let e = |label, sign, lambda, maximal: Vec<(u8, u8, u8)>, shape: Vec<ShapeTerm>| CatalogEntry {
        label,
        sign,
        lambda,
        maximal,
        shape,
    };
    vec![
        e("N1", Some(Nonpositive), l(3, 2, 2), vec![(0, 3, 0), (1, 2, 0), (2, 1, 0)],
            vec![sh(0, [0, 0, 0], 3, ALL), sh(1, [0, 0, 1], 2, ALL), sh(2, [0, 0, 2], 1, ALL)]),
        e("N2", Some(Nonpositive), l(3, 2, 0), vec![(0, 3, 0), (1, 1, 1), (2, 0, 0)],
            vec![sh(0, [0, 0, 0], 3, ALL), sh(1, [0, 0, 0], 3, Y12), sh(1, [1, 0, 1], 1, Y12), sh(2, [0, 0, 3], 0, NONE)]),
        e("N3", Some(Nonpositive), l(3, 4, -2), vec![(0, 2, 1), (1, 1, 2), (2, 0, 3)],
            vec![
                sh(0, [0, 0, 0], 3, Y12), sh(0, [1, 0, 0], 2, Y12), sh(0, [2, 0, 0], 1, Y12),
                sh(1, [0, 0, 0], 3, Y12), sh(1, [1, 0, 0], 2, Y12), sh(2, [0, 0, 0], 3, Y12),
            ]),
        e("N4", Some(Nonpositive), l(0, 2, -1), vec![(2, 1, 2)],
            (0..=2).flat_map(|u| [sh(u, [0, 0, 0], 3, Y12), sh(u, [1, 0, 0], 2, Y12)]).collect()),
        e("N5", Some(Nonpositive), l(1, 2, 0), vec![(0, 2, 0), (1, 1, 1), (2, 1, 0), (2, 0, 2)],
            vec![
                sh(0, [0, 0, 0], 3, Y12), sh(0, [1, 0, 0], 2, Y12), sh(0, [2, 0, 1], 0, NONE),
                sh(1, [0, 0, 0], 3, Y12), sh(1, [1, 0, 1], 1, Y12),
                sh(2, [0, 0, 1], 2, Y12), sh(2, [1, 0, 2], 0, NONE),
            ]),
        e("N6", Some(Nonpositive), l(0, 1, 1), vec![(2, 2, 0)],
            (0..=2).map(|u| sh(u, [0, 0, 1], 2, ALL)).collect()),
        e("N7", Some(Nonpositive), l(1, 0, 0), vec![(1, 3, 0)],
            vec![sh(0, [0, 0, 0], 3, ALL), sh(1, [0, 0, 0], 3, ALL)]),
        e("U1", Some(Negative), l(5, 3, -1), vec![],
            vec![sh(0, [0, 0, 0], 3, ALL), sh(1, [0, 0, 0], 3, Y12), sh(1, [1, 0, 2], 0, NONE)]),
        e("U2", Some(Negative), l(4, 2, 1), vec![],
            vec![sh(0, [0, 0, 0], 3, ALL), sh(1, [0, 0, 2], 1, ALL), sh(1, [0, 2, 1], 0, NONE), sh(2, [0, 0, 3], 0, NONE)]),
        e("U3", Some(Negative), l(4, 4, -1), vec![],
            vec![
                sh(0, [0, 0, 0], 3, Y12), sh(0, [1, 0, 0], 2, Y12), sh(0, [2, 0, 0], 1, Y12),
                sh(1, [0, 0, 0], 3, Y12), sh(1, [1, 0, 2], 0, NONE), sh(2, [0, 0, 3], 0, NONE),
            ]),
        e("U4", Some(Negative), l(3, 4, -1), vec![],
            vec![
                sh(0, [0, 0, 0], 3, Y12), sh(0, [1, 0, 0], 2, Y12), sh(0, [2, 0, 1], 0, NONE),
                sh(1, [0, 0, 0], 3, Y12), sh(1, [1, 0, 2], 0, NONE), sh(2, [0, 0, 2], 1, Y12),
            ]),
        e("U5", Some(Negative), l(1, 3, -1), vec![],
            vec![
                sh(0, [0, 0, 0], 3, Y12), sh(0, [1, 0, 0], 2, Y12),
                sh(1, [0, 0, 0], 3, Y12), sh(1, [1, 0, 2], 0, NONE), sh(2, [0, 0, 0], 3, Y12),
            ]),
        e("U6", Some(Negative), l(1, 5, -1), vec![],
            vec![
                sh(0, [0, 0, 0], 3, Y12), sh(0, [1, 0, 1], 1, Y12),
                sh(1, [0, 0, 0], 3, Y12), sh(1, [1, 0, 2], 0, NONE),
                sh(2, [0, 0, 0], 3, Y12), sh(2, [1, 0, 2], 0, NONE),
            ]),
        e("U7", Some(Negative), l(2, 3, 1), vec![],
            vec![
                sh(0, [0, 0, 0], 3, Y12), sh(0, [1, 0, 1], 1, Y12), sh(0, [2, 0, 1], 0, NONE),
                sh(1, [0, 0, 2], 1, ALL), sh(1, [0, 2, 1], 0, NONE), sh(2, [0, 0, 2], 1, ALL),
            ]),
        e("alpha", None, l(3, 2, 2), vec![],
            vec![sh(0, [0, 0, 0], 3, Y01), sh(1, [0, 0, 1], 2, Y01), sh(2, [0, 0, 2], 1, Y01)]),
        e("beta", None, l(3, 2, 0), vec![],
            vec![sh(0, [3, 0, 0], 0, NONE), sh(1, [0, 3, 0], 0, NONE), sh(1, [1, 1, 1], 0, NONE), sh(2, [0, 0, 3], 0, NONE)]),
        e("gamma", None, l(0, 1, 1), vec![],
            (0..=2).map(|u| sh(u, [0, 0, 1], 2, Y01)).collect()),
        e("eta", None, l(1, 2, 0), vec![],
            vec![
                sh(0, [1, 2, 0], 0, NONE), sh(0, [2, 0, 1], 0, NONE),
                sh(1, [1, 1, 1], 0, NONE), sh(1, [0, 3, 0], 0, NONE),
                sh(2, [1, 0, 2], 0, NONE), sh(2, [0, 2, 1], 0, NONE),
            ]),
        e("delta", None, l(1, 0, 0), vec![], vec![sh(1, [0, 0, 0], 3, ALL)]),
        e("tau", None, l(4, 3, 2), vec![],
            vec![sh(0, [2, 1, 0], 0, NONE), sh(1, [1, 1, 1], 0, NONE), sh(2, [0, 1, 2], 0, NONE)]),
        e("tau'", None, None, vec![], vec![sh(1, [1, 1, 1], 0, NONE)]),
    ]
}

pub fn catalog_entry(label: &str) -> Result<CatalogEntry, GitError> {
    family_catalog()
        .into_iter()
        .find(|e| e.label == label)
        .ok_or_else(|| GitError::UnknownLabel(label.to_string()))
}

/// The 12 coordinate permutations of the Weyl group of SL2 x SL3.
pub fn weyl_permutations() -> Vec<(bool, [usize; 3])> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::new();
    for swap in [false, true] {
        for p in perms {
            out.push((swap, p));
        }
    }
    out
}

/// Image of `m` under swapping x0, x1 (if `swap`) and sending y_i to y_{p[i]}.
pub fn permute_monomial(m: BiMonomial, swap: bool, p: [usize; 3]) -> BiMonomial {
    let e = m.exponents();
    let ys = [e[2], e[3], e[4]];
    let mut out = [0u32; 3];
    for i in 0..3 {
        out[p[i]] = ys[i];
    }
    let u = if swap { 2 - m.u } else { m.u };
    BiMonomial::new(u, out[0] as u8, out[1] as u8)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum TorusVerdict {
    #[serde(rename = "TORUS_UNSTABLE")]
    Unstable { family: String, lambda: OneParamSubgroup, permutation: String },
    #[serde(rename = "TORUS_STRICTLY_SEMISTABLE")]
    StrictlySemistable { family: String, lambda: OneParamSubgroup, permutation: String },
    /// Every one of the 12 permuted LPs is infeasible.
    #[serde(rename = "TORUS_STABLE")]
    Stable { infeasible_lps: usize },
}

fn perm_name(swap: bool, p: [usize; 3]) -> String {
    format!("{}y->y{}{}{}", if swap { "x0<->x1," } else { "" }, p[0], p[1], p[2])
}

/// Torus-level verdict for `f` in its given coordinates, up to Weyl permutations.
pub fn classify_nonstable(f: &BiForm) -> Result<TorusVerdict, GitError> {
    if f.is_zero() {
        return Err(GitError::ZeroForm);
    }
    let catalog = family_catalog();
    let supp = f.support();
    let cone: Vec<Vec<Rat>> = normalization_cone().iter().map(|c| c.iter().map(|&x| ri(x)).collect()).collect();
    let nonzero = vec![ri(-1), ri(-1), ri(0)];
    for sign in [Sign::Negative, Sign::Nonpositive] {
        for (swap, p) in weyl_permutations() {
            let img: Vec<BiMonomial> = supp.iter().map(|&m| permute_monomial(m, swap, p)).collect();
            let funcs: Vec<Vec<Rat>> =
                img.iter().map(|&m| weight_vector(m).iter().map(|&x| ri(x)).collect()).collect();
            let wit = match sign {
                Sign::Negative => {
                    let mut strict = funcs.clone();
                    strict.push(nonzero.clone());
                    lp_feasible(&strict, &[], &cone)
                }
                Sign::Nonpositive => lp_feasible(&[nonzero.clone()], &funcs, &cone),
            };
            let Some(w) = wit else { continue };
            let img_set: BTreeSet<BiMonomial> = img.into_iter().collect();
            let fam = catalog
                .iter()
                .filter(|e| e.sign == Some(sign))
                .find(|e| img_set.is_subset(&e.support()))
                .map(|e| e.label.to_string())
                .ok_or_else(|| GitError::Disagreement(format!("LP witness {w:?} but no {sign:?} family")))?;
            let lambda = OneParamSubgroup::from_rat(&w);
            let permutation = perm_name(swap, p);
            return Ok(match sign {
                Sign::Negative => TorusVerdict::Unstable { family: fam, lambda, permutation },
                Sign::Nonpositive => TorusVerdict::StrictlySemistable { family: fam, lambda, permutation },
            });
        }
    }
    Ok(TorusVerdict::Stable { infeasible_lps: 2 * weyl_permutations().len() })
}

pub fn fixed_space(h: OneParamSubgroup) -> Vec<BiMonomial> {
    BiMonomial::all().into_iter().filter(|&m| weight(m, h) == 0).collect()
}

pub fn centralizer_dim(h: OneParamSubgroup) -> i64 {
    let sl2 = if h.a != 0 { 1 } else { 3 };
    let w = [h.b, h.c, -h.b - h.c];
    let sl3 = if w[0] == w[1] && w[1] == w[2] {
        8
    } else if w[0] == w[1] || w[1] == w[2] || w[0] == w[2] {
        4
    } else {
        2
    };
    sl2 + sl3
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LunaStratum {
    pub label: String,
    pub h: OneParamSubgroup,
    pub fixed_monomials: Vec<BiMonomial>,
    pub centralizer_dim: i64,
    pub dim: i64,
}

pub fn luna_stratum(label: &str, h: OneParamSubgroup) -> LunaStratum {
    let fixed = fixed_space(h);
    let c = centralizer_dim(h);
    LunaStratum { label: label.to_string(), h, dim: fixed.len() as i64 - c, fixed_monomials: fixed, centralizer_dim: c }
}

pub fn luna_stratum_dim(h: OneParamSubgroup) -> i64 {
    luna_stratum("", h).dim
}

/// A family given by generating polynomials, linear constraints on the
/// coefficients, and the dimension of the group acting on it.
#[derive(Clone, Debug)]
pub struct FamilyParamSpec {
    pub label: String,
    pub generators: Vec<BiForm>,
    /// Each constraint is a linear functional on coefficients: sum c_m * coeff(m) = 0.
    pub constraints: Vec<Vec<(BiMonomial, Rat)>>,
    pub group_dim: i64,
}

impl FamilyParamSpec {
    fn coeff_matrix(&self) -> RatMatrix {
        let all = BiMonomial::all();
        let rows: Vec<Vec<Rat>> = self.generators.iter().map(|g| all.iter().map(|&m| g.coeff(m)).collect()).collect();
        RatMatrix::from_rows(&rows, all.len())
    }

    /// Dimension of the linear space of forms cut out by the spec.
    pub fn linear_dim(&self) -> usize {
        let g = self.coeff_matrix();
        let all = BiMonomial::all();
        // constraints pulled back to generator coordinates
        let rows: Vec<Vec<Rat>> = self
            .constraints
            .iter()
            .map(|c| {
                let func: Vec<Rat> =
                    all.iter().map(|&m| c.iter().filter(|(n, _)| *n == m).fold(Rat::zero(), |a, (_, x)| a + x)).collect();
                g.mul_vec(&func)
            })
            .collect();
        // dim of span(G) ∩ ker(C) = rank G - rank(C G^T)
        g.rank() - RatMatrix::from_rows(&rows, self.generators.len()).rank()
    }

    /// True if `f` lies in the span and satisfies every constraint.
    pub fn contains(&self, f: &BiForm) -> bool {
        let all = BiMonomial::all();
        let target: Vec<Rat> = all.iter().map(|&m| f.coeff(m)).collect();
        if self.coeff_matrix().transpose().solve(&target).is_none() {
            return false;
        }
        self.constraints
            .iter()
            .all(|c| c.iter().fold(Rat::zero(), |acc, (m, x)| acc + x * f.coeff(*m)).is_zero())
    }
}

pub fn stable_stratum_dim(spec: &FamilyParamSpec) -> Result<i64, GitError> {
    let dim = spec.linear_dim() as i64 - 1 - spec.group_dim;
    if dim < 0 {
        return Err(GitError::Inconsistent { label: spec.label.clone(), dim });
    }
    Ok(dim)
}

pub fn h0(a: i64, b: i64) -> i64 {
    (a + 1) * (b + 1) * (b + 2) / 2
}

/// Union of components of the given bidegrees, modulo PGL2 x PGL3.
pub fn reducible_stratum_dim(label: &str, components: &[(i64, i64)]) -> Result<i64, GitError> {
    let dim = components.iter().map(|&(a, b)| h0(a, b) - 1).sum::<i64>() - 11;
    if dim < 0 {
        return Err(GitError::Inconsistent { label: label.to_string(), dim });
    }
    Ok(dim)
}

/// Coefficient index a_{ijk}: x0^(2-i) x1^i y0^(3-j-k) y1^j y2^k.
pub fn a_ijk(i: u8, j: u8, k: u8) -> BiMonomial {
    BiMonomial::new(2 - i, 3 - j - k, j)
}

fn mono_form(ms: &[BiMonomial]) -> Vec<BiForm> {
    ms.iter().map(|&m| BiForm::from_terms([(m, Rat::one())])).collect()
}

fn shape_monomials(shape: &[ShapeTerm]) -> Vec<BiMonomial> {
    let set: BTreeSet<BiMonomial> = shape.iter().flat_map(|t| t.monomials()).collect();
    set.into_iter().collect()
}

/// Five coordinate polynomials (x0, x1, y0, y1, y2).
pub fn coords() -> [Poly; 5] {
    [Poly::var(5, 0), Poly::var(5, 1), Poly::var(5, 2), Poly::var(5, 3), Poly::var(5, 4)]
}

fn mu_combination() -> BiForm {
    // x1^2 y0^3 + 2 x0 x1 y0^2 y1 + x0^2 y0 y1^2
    BiForm::from_terms([
        (BiMonomial::new(0, 3, 0), ri(1)),
        (BiMonomial::new(1, 2, 1), ri(2)),
        (BiMonomial::new(2, 1, 2), ri(1)),
    ])
}

fn eq(pairs: &[(BiMonomial, i64)]) -> Vec<(BiMonomial, Rat)> {
    pairs.iter().map(|&(m, c)| (m, ri(c))).collect()
}

/// Parameter specs for the stable strata with non-ADE singularities.
pub fn normal_form_spec(label: &str) -> Result<FamilyParamSpec, GitError> {
    let [x0, x1, y0, y1, y2] = coords();
    let spec = match label {
        "zeta" => {
            let shape = [
                sh(0, [0, 0, 0], 3, Y12), sh(0, [1, 0, 0], 2, Y12), sh(0, [2, 0, 0], 1, Y12),
                sh(1, [0, 0, 0], 3, Y12), sh(1, [1, 0, 0], 2, Y12),
                sh(2, [0, 2, 0], 1, Y12), sh(2, [0, 1, 2], 0, NONE),
            ];
            let mut gens = mono_form(&shape_monomials(&shape));
            gens.push(mu_combination());
            FamilyParamSpec {
                label: label.into(),
                generators: gens,
                constraints: vec![
                    eq(&[(a_ijk(2, 1, 0), 1), (a_ijk(1, 2, 0), -1), (a_ijk(0, 3, 0), 1)]),
                    eq(&[(a_ijk(2, 0, 1), 1), (a_ijk(1, 1, 1), -1), (a_ijk(0, 2, 1), 1)]),
                    eq(&[(a_ijk(1, 0, 2), 1), (a_ijk(0, 1, 2), -1)]),
                ],
                group_dim: 6,
            }
        }
        "xi" => {
            let shape = [
                sh(0, [0, 0, 3], 0, NONE), sh(0, [0, 1, 2], 0, NONE), sh(0, [0, 2, 1], 0, NONE),
                sh(0, [1, 0, 0], 2, Y12), sh(0, [2, 0, 0], 1, Y12),
                sh(1, [0, 0, 0], 3, Y12), sh(1, [1, 0, 0], 2, Y12),
                sh(2, [0, 0, 0], 3, Y12),
            ];
            let mut gens = mono_form(&shape_monomials(&shape));
            gens.push(mu_combination());
            FamilyParamSpec {
                label: label.into(),
                generators: gens,
                constraints: vec![
                    eq(&[(a_ijk(2, 0, 1), 1), (a_ijk(1, 1, 1), -1), (a_ijk(0, 2, 1), 1)]),
                    eq(&[(a_ijk(2, 2, 0), 1), (a_ijk(1, 3, 0), -1)]),
                    eq(&[(a_ijk(2, 1, 1), 1), (a_ijk(1, 2, 1), -1)]),
                    eq(&[(a_ijk(1, 2, 0), 1), (a_ijk(2, 1, 0), -2)]),
                    eq(&[(a_ijk(1, 2, 0), 1), (a_ijk(0, 3, 0), -2)]),
                    eq(&[(a_ijk(1, 0, 2), 1), (a_ijk(0, 1, 2), -1)]),
                ],
                group_dim: 6,
            }
        }
        "theta" => {
            let s = &(&x0 * &y1) - &(&x1 * &y0);
            let xs = [&x0, &x1];
            let mut gens = Vec::new();
            for xq in [&x0 * &x0, &x0 * &x1, &x1 * &x1] {
                for y in [&y0, &y1, &y2] {
                    gens.push(&(&(&y2 * &y2) * &xq) * y);
                }
            }
            for x in xs {
                for y in [&y0, &y1] {
                    gens.push(&(&(&y2 * &s) * x) * y);
                }
            }
            for y in [&y0, &y1] {
                gens.push(&(&s * &s) * y);
            }
            FamilyParamSpec { label: label.into(), generators: to_forms(&gens)?, constraints: vec![], group_dim: 6 }
        }
        "phi" => {
            let s = &(&x0 * &y1) - &(&x1 * &y0);
            let t = &(&x0 * &y2) - &(&x1 * &y1);
            let mut gens = Vec::new();
            for q in [&s * &s, &s * &t, &t * &t] {
                for y in [&y0, &y1, &y2] {
                    gens.push(&q * y);
                }
            }
            FamilyParamSpec { label: label.into(), generators: to_forms(&gens)?, constraints: vec![], group_dim: 3 }
        }
        other => return Err(GitError::UnknownLabel(other.to_string())),
    };
    Ok(spec)
}

fn to_forms(ps: &[Poly]) -> Result<Vec<BiForm>, GitError> {
    ps.iter()
        .map(|p| BiForm::from_poly(p).map_err(|e| GitError::UnknownLabel(e.to_string())))
        .collect()
}

/// One-parameter subgroups stabilizing the strictly semistable strata.
pub fn luna_strata() -> Vec<LunaStratum> {
    [
        ("alpha", (3, 2, 2)),
        ("beta", (3, 2, 0)),
        ("gamma", (0, 1, 1)),
        ("eta", (1, 2, 0)),
        ("delta", (1, 0, 0)),
    ]
    .iter()
    .map(|&(l, (a, b, c))| luna_stratum(l, OneParamSubgroup::new(a, b, c)))
    .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionRow {
    pub label: String,
    pub dim: i64,
    pub method: String,
}

/// The boundary dimension table for (α, β, γ, η, δ, ζ, ξ, θ, φ, r1, r2).
pub fn dimension_table() -> Result<Vec<DimensionRow>, GitError> {
    let mut rows: Vec<DimensionRow> = luna_strata()
        .into_iter()
        .map(|s| DimensionRow {
            method: format!("luna: {} fixed - {} centralizer", s.fixed_monomials.len(), s.centralizer_dim),
            label: s.label,
            dim: s.dim,
        })
        .collect();
    for l in ["zeta", "xi", "theta", "phi"] {
        let spec = normal_form_spec(l)?;
        rows.push(DimensionRow {
            label: l.to_string(),
            dim: stable_stratum_dim(&spec)?,
            method: format!(
                "params: {} generators, {} constraints, linear dim {}, group {}",
                spec.generators.len(),
                spec.constraints.len(),
                spec.linear_dim(),
                spec.group_dim
            ),
        });
    }
    for (l, comps) in [("r1", vec![(1, 1), (1, 3)]), ("r2", vec![(0, 2), (2, 1)])] {
        rows.push(DimensionRow {
            label: l.to_string(),
            dim: reducible_stratum_dim(l, &comps)?,
            method: format!("reducible: components {comps:?}"),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(u: u8, v: u8, w: u8) -> BiMonomial {
        BiMonomial::new(u, v, w)
    }

    #[test]
    fn weight_examples() {
        let l = OneParamSubgroup::new(3, 2, 2);
        assert_eq!(weight(mono(0, 3, 0), l), 0);
        assert_eq!(weight(mono(2, 0, 0), l), -6);
        for m in BiMonomial::all() {
            assert_eq!(weight(m, OneParamSubgroup::new(0, 0, 0)), 0);
            let wv = weight_vector(m);
            assert_eq!(weight(m, l), wv[0] * 3 + wv[1] * 2 + wv[2] * 2);
        }
    }

    #[test]
    fn degeneration_examples() {
        assert!(!degeneration_leq(mono(1, 2, 0), mono(0, 3, 0)));
        assert!(degeneration_leq(mono(0, 2, 0), mono(0, 3, 0)));
    }

    #[test]
    fn fixed_spaces() {
        assert_eq!(fixed_space(OneParamSubgroup::new(3, 2, 2)).len(), 9);
        let tau: BTreeSet<_> = fixed_space(OneParamSubgroup::new(4, 3, 2)).into_iter().collect();
        assert_eq!(tau, catalog_entry("tau").unwrap().support());
        assert_eq!(fixed_space(OneParamSubgroup::new(0, 0, 0)).len(), 30);
        assert_eq!(luna_stratum_dim(OneParamSubgroup::new(3, 2, 2)), 4);
        assert_eq!(luna_stratum_dim(OneParamSubgroup::new(0, 1, 1)), 2);
        assert_eq!(luna_stratum_dim(OneParamSubgroup::new(1, 0, 0)), 1);
    }

    #[test]
    fn reducible_dims() {
        assert_eq!(reducible_stratum_dim("r1", &[(1, 1), (1, 3)]).unwrap(), 13);
        assert_eq!(reducible_stratum_dim("r2", &[(0, 2), (2, 1)]).unwrap(), 2);
        assert!(reducible_stratum_dim("x", &[(0, 1)]).is_err());
    }

    #[test]
    fn invariant_shapes_are_fixed_spaces() {
        for l in ["alpha", "beta", "gamma", "eta", "delta", "tau"] {
            let e = catalog_entry(l).unwrap();
            let fixed: BTreeSet<_> = fixed_space(e.lambda.unwrap()).into_iter().collect();
            assert_eq!(fixed, e.support(), "{l}");
        }
    }

    #[test]
    fn toy_case_matches_brute_force() {
        for sign in [Sign::Nonpositive, Sign::Negative] {
            let found: BTreeSet<BTreeSet<(u8, u8)>> = toy_maximal_sets(sign).into_iter().collect();
            let mut all = BTreeSet::new();
            for a in 0..=20i64 {
                for b in 0..=20i64 {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let s: BTreeSet<(u8, u8)> = toy_monomials()
                        .into_iter()
                        .filter(|&(u, v)| {
                            let w = toy_weight_vector(u, v);
                            sign.admits(w[0] * a + w[1] * b)
                        })
                        .collect();
                    all.insert(s);
                }
            }
            let maximal: BTreeSet<_> =
                all.iter().filter(|s| !all.iter().any(|t| t != *s && s.is_subset(t))).cloned().collect();
            assert_eq!(found, maximal, "{sign:?}");
        }
    }
}
