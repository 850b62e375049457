//! Exact polynomial geometry on P1 x P2.
//!
//! Variables of a bidegree form are ordered (x0, x1, y0, y1, y2). Plane curves
//! are polynomials in three variables (y0, y1, y2).

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::git::{catalog_entry, normal_form_spec};
use crate::linalg::{ri, Rat, RatMatrix};
use crate::poly::{BiForm, BiMonomial, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("degenerate parametrization: {0}")]
    Degenerate(String),
    #[error("point is not on the hypersurface")]
    NotOnSurface,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("fiber is whole plane")]
    WholePlane,
    #[error("invalid point: {0}")]
    BadPoint(String),
    #[error("expected a ternary form of degree {0}")]
    NotTernary(u32),
    #[error("unknown label: {0}")]
    UnknownLabel(String),
}

/// A curve in P1 x P2 given by a parametrization over P1 with parameters (s, t).
#[derive(Clone, Debug)]
pub enum CurveParam {
    /// {x} x (line through p and q).
    Vertical { x: [Rat; 2], p: [Rat; 3], q: [Rat; 3] },
    /// P1 x {y}.
    Horizontal { y: [Rat; 3] },
    /// Graph of y = (q0, q1, q2)(x0, x1), forms of a common degree d >= 1 in 2 variables.
    Section { forms: [Poly; 3] },
}

impl CurveParam {
    pub fn vertical(x: [i64; 2], p: [i64; 3], q: [i64; 3]) -> Self {
        CurveParam::Vertical { x: x.map(ri), p: p.map(ri), q: q.map(ri) }
    }

    pub fn horizontal(y: [i64; 3]) -> Self {
        CurveParam::Horizontal { y: y.map(ri) }
    }

    pub fn section(forms: [Poly; 3]) -> Self {
        CurveParam::Section { forms }
    }

    pub fn degree(&self) -> Option<u32> {
        match self {
            CurveParam::Section { forms } => forms.iter().filter_map(|f| f.total_degree()).max(),
            _ => None,
        }
    }

    /// Five polynomials in (s, t) substituted for (x0, x1, y0, y1, y2).
    fn substitution(&self) -> Result<Vec<Poly>, GeomError> {
        let c = |r: &Rat| Poly::constant(2, r.clone());
        let s = Poly::var(2, 0);
        let t = Poly::var(2, 1);
        match self {
            CurveParam::Vertical { x, p, q } => {
                if x.iter().all(|a| a.is_zero()) {
                    return Err(GeomError::Degenerate("vertical line over x = 0".into()));
                }
                let m = RatMatrix::from_rows(&[p.to_vec(), q.to_vec()], 3);
                if m.rank() < 2 {
                    return Err(GeomError::Degenerate("line points are dependent".into()));
                }
                let mut out = vec![c(&x[0]), c(&x[1])];
                for i in 0..3 {
                    out.push(&(&s * &c(&p[i])) + &(&t * &c(&q[i])));
                }
                Ok(out)
            }
            CurveParam::Horizontal { y } => {
                if y.iter().all(|a| a.is_zero()) {
                    return Err(GeomError::Degenerate("horizontal line over y = 0".into()));
                }
                Ok(vec![s, t, c(&y[0]), c(&y[1]), c(&y[2])])
            }
            CurveParam::Section { forms } => {
                if forms.iter().all(|f| f.is_zero()) {
                    return Err(GeomError::Degenerate("section forms all zero".into()));
                }
                let degs: BTreeSet<u32> = forms.iter().filter_map(|f| f.total_degree()).collect();
                if degs.len() != 1 || forms.iter().any(|f| f.nvars != 2 || !f.is_homogeneous()) {
                    return Err(GeomError::Degenerate("section forms not homogeneous of one degree".into()));
                }
                if degs.contains(&0) {
                    return Err(GeomError::Degenerate("section of degree 0".into()));
                }
                Ok(vec![s, t, forms[0].clone(), forms[1].clone(), forms[2].clone()])
            }
        }
    }
}

/// True iff f and all five partials vanish identically along the curve.
pub fn jacobian_vanishes_on(f: &BiForm, c: &CurveParam) -> Result<bool, GeomError> {
    let subs = c.substitution()?;
    let p = f.to_poly();
    if !p.substitute(&subs).is_zero() {
        return Ok(false);
    }
    Ok(p.gradient().iter().all(|d| d.substitute(&subs).is_zero()))
}

/// Affine chart around `pt`. `blocks` are the variable ranges of the projective
/// factors. Returns the local polynomial (variables in original order, pivots
/// removed) and, for each local variable, (original index, pivot index, ratio)
/// so that u = v/v_pivot - ratio.
fn affinize(g: &Poly, blocks: &[(usize, usize)], pt: &[Rat]) -> Result<(Poly, Vec<(usize, usize, Rat)>), GeomError> {
    let n = g.nvars;
    if pt.len() != n {
        return Err(GeomError::BadPoint(format!("expected {n} coordinates")));
    }
    let mut pivots = Vec::new();
    for &(lo, hi) in blocks {
        let piv = (lo..hi)
            .find(|&i| !pt[i].is_zero())
            .ok_or_else(|| GeomError::BadPoint("a projective factor is all zero".into()))?;
        pivots.push((lo, hi, piv));
    }
    let mut locals = Vec::new();
    for &(lo, hi, piv) in &pivots {
        for i in lo..hi {
            if i != piv {
                locals.push((i, piv, &pt[i] / &pt[piv]));
            }
        }
    }
    let m = locals.len();
    let mut subs = vec![Poly::zero(m); n];
    for &(_, _, piv) in &pivots {
        subs[piv] = Poly::constant(m, Rat::one());
    }
    for (k, (i, _, r)) in locals.iter().enumerate() {
        subs[*i] = &Poly::var(m, k) + &Poly::constant(m, r.clone());
    }
    Ok((g.substitute(&subs), locals))
}

const BI_BLOCKS: [(usize, usize); 2] = [(0, 2), (2, 5)];
const PLANE_BLOCK: [(usize, usize); 1] = [(0, 3)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Corank {
    NotSingular,
    Corank(u8),
}

fn hessian_rank(local: &Poly) -> usize {
    let m = local.nvars;
    let mut h = RatMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let mut e = vec![0u32; m];
            e[i] += 1;
            e[j] += 1;
            let c = local.coeff(&e);
            h.set(i, j, if i == j { c * ri(2) } else { c });
        }
    }
    h.rank()
}

/// 3 minus the rank of the Hessian of the local equation at p, or NotSingular.
pub fn corank_at(f: &BiForm, p: &[Rat; 5]) -> Result<Corank, GeomError> {
    let (local, _) = affinize(&f.to_poly(), &BI_BLOCKS, p)?;
    if !local.coeff(&[0, 0, 0]).is_zero() {
        return Err(GeomError::NotOnSurface);
    }
    if !local.homogeneous_part(1).is_zero() {
        return Ok(Corank::NotSingular);
    }
    Ok(Corank::Corank((3 - hessian_rank(&local)) as u8))
}

/// Minimal weighted degree of the local equation at p; `weights` assigns a
/// weight to original variables (x0, x1, y0, y1, y2), pivots are ignored.
pub fn local_weighted_order(f: &BiForm, p: &[Rat; 5], weights: &[(usize, Rat)]) -> Result<Option<Rat>, GeomError> {
    let (local, vars) = affinize(&f.to_poly(), &BI_BLOCKS, p)?;
    let w: Vec<Rat> = vars
        .iter()
        .map(|(i, _, _)| weights.iter().find(|(j, _)| j == i).map_or(Rat::zero(), |(_, x)| x.clone()))
        .collect();
    Ok(local
        .terms
        .keys()
        .map(|e| e.iter().zip(&w).fold(Rat::zero(), |a, (&k, x)| a + x * ri(k as i64)))
        .min())
}

/// Plane cubic of the fiber over (t0 : t1).
pub fn fiber_cubic(f: &BiForm, t: &[Rat; 2]) -> Result<Poly, GeomError> {
    if t.iter().all(|a| a.is_zero()) {
        return Err(GeomError::BadPoint("t = 0".into()));
    }
    let subs = vec![
        Poly::constant(3, t[0].clone()),
        Poly::constant(3, t[1].clone()),
        Poly::var(3, 0),
        Poly::var(3, 1),
        Poly::var(3, 2),
    ];
    Ok(f.to_poly().substitute(&subs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CubicType {
    #[serde(rename = "SMOOTH")]
    Smooth,
    #[serde(rename = "NODAL")]
    Nodal,
    #[serde(rename = "CUSPIDAL")]
    Cuspidal,
    #[serde(rename = "CONIC+LINE")]
    ConicLine,
    #[serde(rename = "CONIC+TANGENT_LINE")]
    ConicTangentLine,
    #[serde(rename = "THREE_LINES_GENERAL")]
    ThreeLinesGeneral,
    #[serde(rename = "THREE_CONCURRENT_LINES")]
    ThreeConcurrentLines,
    #[serde(rename = "DOUBLE_LINE+LINE")]
    DoubleLineLine,
    #[serde(rename = "TRIPLE_LINE")]
    TripleLine,
}

impl fmt::Display for CubicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("serializable");
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for k in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// dim (S/I)_k for the ideal generated by homogeneous `gens` in 3 variables.
fn quotient_dim(gens: &[Poly], k: u32) -> usize {
    let basis = monomials_of_degree(3, k);
    let mut rows = Vec::new();
    for g in gens {
        let Some(d) = g.total_degree() else { continue };
        if d > k {
            continue;
        }
        for m in monomials_of_degree(3, k - d) {
            let p = &Poly::monomial(m, Rat::one()) * g;
            rows.push(basis.iter().map(|e| p.coeff(e)).collect::<Vec<_>>());
        }
    }
    if rows.is_empty() {
        return basis.len();
    }
    basis.len() - RatMatrix::from_rows(&rows, basis.len()).rank()
}

/// l with g = c * l^d, if g is a pure power of a linear form.
pub fn linear_power_root(g: &Poly) -> Option<Poly> {
    let d = g.total_degree()?;
    if d == 0 || !g.is_homogeneous() {
        return None;
    }
    let n = g.nvars;
    let mut lin: Option<Poly> = None;
    for e in monomials_of_degree(n, d - 1) {
        let mut h = g.clone();
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                h = h.derivative(i);
            }
        }
        if h.is_zero() {
            continue;
        }
        match &lin {
            None => lin = Some(h),
            Some(l) if l.proportional(&h) => {}
            Some(_) => return None,
        }
    }
    let l = lin?;
    if g.proportional(&l.pow(d)) {
        Some(l.monic())
    } else {
        None
    }
}

fn hessian_matrix(c: &Poly) -> Vec<Vec<Poly>> {
    let g = c.gradient();
    (0..3).map(|i| (0..3).map(|j| g[i].derivative(j)).collect()).collect()
}

/// Classification of a plane cubic through Tjurina lengths of the Jacobian
/// scheme and the locus where the Hessian has rank at most 1.
pub fn classify_cubic(c: &Poly) -> Result<CubicType, GeomError> {
    if c.is_zero() {
        return Err(GeomError::WholePlane);
    }
    if c.nvars != 3 || !c.is_homogeneous() || c.total_degree() != Some(3) {
        return Err(GeomError::NotTernary(3));
    }
    if linear_power_root(c).is_some() {
        return Ok(CubicType::TripleLine);
    }
    let jac = c.gradient();
    let (t8, t9) = (quotient_dim(&jac, 8), quotient_dim(&jac, 9));
    if t9 > t8 {
        return Ok(CubicType::DoubleLineLine);
    }
    let h = hessian_matrix(c);
    let mut gens = jac.clone();
    for (i0, i1) in [(0, 1), (0, 2), (1, 2)] {
        for (j0, j1) in [(0, 1), (0, 2), (1, 2)] {
            gens.push(&(&h[i0][j0] * &h[i1][j1]) - &(&h[i0][j1] * &h[i1][j0]));
        }
    }
    let degenerate_point = quotient_dim(&gens, 9) > 0;
    Ok(match (t9, degenerate_point) {
        (0, _) => CubicType::Smooth,
        (1, _) => CubicType::Nodal,
        (2, true) => CubicType::Cuspidal,
        (2, false) => CubicType::ConicLine,
        (3, true) => CubicType::ConicTangentLine,
        (3, false) => CubicType::ThreeLinesGeneral,
        _ => CubicType::ThreeConcurrentLines,
    })
}

#[derive(Clone, Debug)]
pub struct BranchLocus {
    pub sextic: Poly,
    /// Some fiber is the whole plane, so f has a factor from P1.
    pub degenerate: bool,
}

fn y_part(f: &BiForm, u: u8) -> Poly {
    let mut p = Poly::zero(3);
    for m in f.support() {
        if m.u == u {
            let e = m.exponents();
            p.add_term(vec![e[2], e[3], e[4]], f.coeff(m));
        }
    }
    p
}

/// Coefficients (A, B, C) of f = A x0^2 + B x0 x1 + C x1^2.
pub fn abc(f: &BiForm) -> [Poly; 3] {
    [y_part(f, 2), y_part(f, 1), y_part(f, 0)]
}

/// Discriminant B^2 - 4AC of f as a quadratic form in x.
pub fn branch_locus(f: &BiForm) -> BranchLocus {
    let [a, b, c] = abc(f);
    let sextic = &(&b * &b) - &(&(&a * &c).scale(&ri(4)));
    BranchLocus { sextic, degenerate: has_whole_fiber(f) }
}

/// True iff some fiber of f is identically zero.
pub fn has_whole_fiber(f: &BiForm) -> bool {
    let [a, b, c] = abc(f);
    let ms: BTreeSet<Vec<u32>> = a.terms.keys().chain(b.terms.keys()).chain(c.terms.keys()).cloned().collect();
    let rows: Vec<Vec<Rat>> = ms.iter().map(|m| vec![a.coeff(m), b.coeff(m), c.coeff(m)]).collect();
    if rows.is_empty() {
        return true;
    }
    let mut mat = RatMatrix::from_rows(&rows, 3);
    let piv = mat.rref();
    match piv.len() {
        1 => true,
        2 => {
            // two binary quadratics in (t0, t1): common root iff resultant vanishes
            let (p, q) = (mat.row(0), mat.row(1));
            let syl = RatMatrix::from_rows(
                &[
                    vec![p[0].clone(), p[1].clone(), p[2].clone(), Rat::zero()],
                    vec![Rat::zero(), p[0].clone(), p[1].clone(), p[2].clone()],
                    vec![q[0].clone(), q[1].clone(), q[2].clone(), Rat::zero()],
                    vec![Rat::zero(), q[0].clone(), q[1].clone(), q[2].clone()],
                ],
                4,
            );
            syl.det().is_zero()
        }
        _ => false,
    }
}

fn check_plane_point(g: &Poly, o: &[Rat; 3]) -> Result<(), GeomError> {
    if g.nvars != 3 || !g.is_homogeneous() {
        return Err(GeomError::NotTernary(g.total_degree().unwrap_or(0)));
    }
    if o.iter().all(|a| a.is_zero()) {
        return Err(GeomError::BadPoint("o = 0".into()));
    }
    if !g.eval(o).is_zero() {
        return Err(GeomError::NotOnCurve);
    }
    Ok(())
}

/// Lowest-degree part of g at o, written as a form in (y0, y1, y2).
pub fn tangent_cone(g: &Poly, o: &[Rat; 3]) -> Result<Poly, GeomError> {
    check_plane_point(g, o)?;
    let (local, vars) = affinize(g, &PLANE_BLOCK, o)?;
    let d = local.min_degree().unwrap_or(0);
    let cone = local.homogeneous_part(d);
    let subs: Vec<Poly> = vars
        .iter()
        .map(|(i, piv, r)| &Poly::var(3, *i) - &Poly::var(3, *piv).scale(r))
        .collect();
    Ok(cone.substitute(&subs))
}

/// A point of the line {l = 0} not proportional to o.
fn second_point(line: &[Rat; 3], o: &[Rat; 3]) -> Result<[Rat; 3], GeomError> {
    let dot: Rat = line.iter().zip(o).fold(Rat::zero(), |a, (x, y)| a + x * y);
    if !dot.is_zero() {
        return Err(GeomError::BadPoint("o is not on the line".into()));
    }
    if line.iter().all(|a| a.is_zero()) {
        return Err(GeomError::Degenerate("zero line".into()));
    }
    let ker = RatMatrix::from_rows(&[line.to_vec()], 3).kernel();
    for v in ker {
        if RatMatrix::from_rows(&[v.clone(), o.to_vec()], 3).rank() == 2 {
            return Ok([v[0].clone(), v[1].clone(), v[2].clone()]);
        }
    }
    Err(GeomError::Degenerate("line is a point".into()))
}

/// Order in s of g(..., o + s q, ...) where the plane coordinates start at `off`;
/// `None` if the restriction is identically zero.
fn restricted_order(g: &Poly, off: usize, line: &[Rat; 3], o: &[Rat; 3]) -> Result<Option<u32>, GeomError> {
    let q = second_point(line, o)?;
    let n = g.nvars;
    // new ring: the non-plane variables followed by s
    let m = n - 3 + 1;
    let s = Poly::var(m, m - 1);
    let mut subs = Vec::with_capacity(n);
    let mut k = 0;
    for i in 0..n {
        if (off..off + 3).contains(&i) {
            let j = i - off;
            subs.push(&Poly::constant(m, o[j].clone()) + &s.scale(&q[j]));
        } else {
            subs.push(Poly::var(m, k));
            k += 1;
        }
    }
    Ok(g.substitute(&subs).var_order(m - 1))
}

/// Intersection multiplicity at o of the plane curve g with the line {l = 0}.
pub fn line_multiplicity(g: &Poly, line: &[Rat; 3], o: &[Rat; 3]) -> Result<Option<u32>, GeomError> {
    check_plane_point(g, o)?;
    restricted_order(g, 0, line, o)
}

/// Minimum over all fibers F of mult_o(F, L), as an identity in x.
pub fn fiberwise_line_multiplicity(f: &BiForm, line: &[Rat; 3], o: &[Rat; 3]) -> Result<Option<u32>, GeomError> {
    restricted_order(&f.to_poly(), 2, line, o)
}

/// Largest k with l^k dividing g (plane coordinates starting at `off`).
pub fn linear_factor_order(g: &Poly, off: usize, line: &[Rat; 3]) -> Option<u32> {
    let i = (0..3).find(|&i| !line[i].is_zero())?;
    let n = g.nvars;
    // y_i -> (y_i - sum_{j != i} l_j y_j) / l_i turns l into y_i
    let subs: Vec<Poly> = (0..n)
        .map(|v| {
            if v == off + i {
                let mut p = Poly::var(n, v);
                for j in 0..3 {
                    if j != i {
                        p = &p - &Poly::var(n, off + j).scale(&line[j]);
                    }
                }
                p.scale(&line[i].recip())
            } else {
                Poly::var(n, v)
            }
        })
        .collect();
    g.substitute(&subs).var_order(off + i)
}

/// Restriction of f to the hyperplane {v = 0} for a single variable v.
pub fn restrict_var_zero(p: &Poly, v: usize) -> Poly {
    let subs: Vec<Poly> =
        (0..p.nvars).map(|i| if i == v { Poly::zero(p.nvars) } else { Poly::var(p.nvars, i) }).collect();
    p.substitute(&subs)
}

/// 2f = x0 f_x0 + x1 f_x1 and 3f = sum y_i f_yi.
pub fn euler_holds(f: &BiForm) -> bool {
    let p = f.to_poly();
    let g = p.gradient();
    let v = |i| Poly::var(5, i);
    let xs = &(&v(0) * &g[0]) + &(&v(1) * &g[1]);
    let ys = &(&(&v(2) * &g[2]) + &(&v(3) * &g[3])) + &(&v(4) * &g[4]);
    xs == p.scale(&ri(2)) && ys == p.scale(&ri(3))
}

pub const FAMILY_LABELS: [&str; 21] = [
    "N1", "N2", "N3", "N4", "N5", "N6", "N7", "U1", "U2", "U3", "U4", "U5", "U6", "U7", "alpha", "beta", "gamma", "eta",
    "delta", "tau", "tau'",
];

/// Canonical ASCII label for the accepted spellings.
pub fn canonical_label(label: &str) -> Result<&'static str, GeomError> {
    let l = match label {
        "α" => "alpha",
        "β" => "beta",
        "γ" => "gamma",
        "η" => "eta",
        "δ" => "delta",
        "τ" => "tau",
        "τ'" | "τ′" | "tau_prime" | "tau′" => "tau'",
        "θ" => "theta",
        "φ" | "ϕ" => "phi",
        "ζ" | "E7tilde" | "E7tilde(6.1)" => "zeta",
        "ξ" | "E8tilde" | "E8tilde(6.2)" => "xi",
        other => other,
    };
    FAMILY_LABELS
        .iter()
        .chain(["theta", "phi", "zeta", "xi"].iter())
        .find(|x| **x == l)
        .copied()
        .ok_or_else(|| GeomError::UnknownLabel(label.to_string()))
}

/// Support inside the family span and all linear constraints satisfied.
pub fn matches_normal_form(f: &BiForm, label: &str) -> Result<bool, GeomError> {
    let l = canonical_label(label)?;
    match l {
        "theta" | "phi" | "zeta" | "xi" => {
            let spec = normal_form_spec(l).map_err(|e| GeomError::UnknownLabel(e.to_string()))?;
            Ok(spec.contains(f))
        }
        _ => {
            let e = catalog_entry(l).map_err(|e| GeomError::UnknownLabel(e.to_string()))?;
            let span = e.support();
            Ok(f.support().iter().all(|m| span.contains(m)))
        }
    }
}

fn pt5(v: [i64; 5]) -> [Rat; 5] {
    v.map(ri)
}

fn pt3(v: [i64; 3]) -> [Rat; 3] {
    v.map(ri)
}

fn w(n: i64, d: i64) -> Rat {
    crate::linalg::rat(n, d)
}

/// Permute y1 and y2.
fn swap_y12(f: &BiForm) -> BiForm {
    BiForm::from_terms(f.support().into_iter().map(|m| {
        let e = m.exponents();
        (BiMonomial::from_exponents(&[e[0], e[1], e[2], e[4], e[3]]).expect("bidegree kept"), f.coeff(m))
    }))
}

/// Named boolean checks making up the geometric statement for one family.
/// A witness point off the surface or curve counts as a failed check.
pub fn family_predicate(label: &str, f: &BiForm) -> Result<Vec<(String, bool)>, GeomError> {
    let l = canonical_label(label)?;
    match predicate_checks(l, f) {
        Err(e @ (GeomError::NotOnSurface | GeomError::NotOnCurve)) => Ok(vec![(format!("witness point: {e}"), false)]),
        r => r,
    }
}

fn predicate_checks(l: &str, f: &BiForm) -> Result<Vec<(String, bool)>, GeomError> {
    let mut out: Vec<(String, bool)> = Vec::new();
    let mut check = |name: &str, ok: bool| out.push((name.to_string(), ok));
    let p = f.to_poly();
    let l_y2 = pt3([0, 0, 1]);
    let l_y0 = pt3([1, 0, 0]);
    let o = pt3([1, 0, 0]);
    let p10 = pt5([1, 0, 1, 0, 0]);
    let t10 = [ri(1), ri(0)];
    let t01 = [ri(0), ri(1)];
    let vert = CurveParam::vertical([1, 0], [1, 0, 0], [0, 1, 0]);
    let horiz = CurveParam::horizontal([1, 0, 0]);
    let corank = |pt: &[Rat; 5]| corank_at(f, pt);
    let e8_at = |pt: &[Rat; 5], ws: [(usize, Rat); 3]| -> Result<bool, GeomError> {
        Ok(local_weighted_order(f, pt, &ws)?.is_some_and(|x| x >= Rat::one()))
    };
    let cone_b_order = |line: &[Rat; 3]| -> Result<Option<u32>, GeomError> {
        let cone = tangent_cone(&branch_locus(f).sextic, &o)?;
        Ok(linear_factor_order(&cone, 0, line))
    };
    match l {
        "N1" => check("singular along vertical line {x1=y2=0}", jacobian_vanishes_on(f, &vert)?),
        "N2" => {
            check("corank 2 at (1,0,1,0,0)", corank(&p10)? == Corank::Corank(2));
            check(
                "at least E8~ weights (x1,y1,y2)=(1/2,1/6,1/3)",
                e8_at(&p10, [(1, w(1, 2)), (3, w(1, 6)), (4, w(1, 3))])?,
            );
            check("fiber over (1,0) is a triple line", classify_cubic(&fiber_cubic(f, &t10)?)? == CubicType::TripleLine);
        }
        "N3" => check("corank 3 at (1,0,1,0,0)", corank(&p10)? == Corank::Corank(3)),
        "N4" => check("singular along horizontal line P1x(1,0,0)", jacobian_vanishes_on(f, &horiz)?),
        "N5" => {
            check("corank 2 at (1,0,1,0,0)", corank(&p10)? == Corank::Corank(2));
            check(
                "at least E7~ weights (x1,y1,y2)=(1/4,1/4,1/2)",
                e8_at(&p10, [(1, w(1, 4)), (3, w(1, 4)), (4, w(1, 2))])?,
            );
            check("fiber over (1,0) contains L={y2=0}", line_multiplicity(&fiber_cubic(f, &t10)?, &l_y2, &o)?.is_none());
            check(
                "mult_o(F, L) >= 2 for every fiber",
                fiberwise_line_multiplicity(f, &l_y2, &o)?.is_none_or(|m| m >= 2),
            );
        }
        "N6" => check("contains P1xP1 = {y2=0}", restrict_var_zero(&p, 4).is_zero()),
        "N7" => check("contains P2 = {x1=0}", restrict_var_zero(&p, 1).is_zero()),
        "U1" => {
            check("contains P2 = {x1=0}", restrict_var_zero(&p, 1).is_zero());
            let rest = p.div_monomial(&[0, 1, 0, 0, 0]);
            let cusp = match rest {
                Some(r) => classify_cubic(&cubic_on_x1_zero(&r))? == CubicType::Cuspidal,
                None => false,
            };
            check("residual meets P2 along a cuspidal cubic", cusp);
        }
        "U2" => {
            check("singular along vertical line {x1=y2=0}", jacobian_vanishes_on(f, &vert)?);
            let fib = fiber_cubic(f, &t10)?;
            check(
                "its fiber is the triple line 3L, L={y2=0}",
                linear_power_root(&fib).is_some_and(|r| r.proportional(&Poly::var(3, 2))),
            );
            let b = branch_locus(f).sextic;
            let ord = linear_factor_order(&b, 0, &l_y2);
            check("B(S) = 2L + B'", ord == Some(2));
            let bp = b.div_monomial(&[0, 0, 2]);
            let quartic = match bp {
                Some(bp) if ord == Some(2) => {
                    line_multiplicity(&bp, &l_y2, &o)? == Some(4) && bp.total_degree() == Some(4)
                }
                _ => false,
            };
            check("L meets B' in a single quartic point o", quartic);
        }
        "U3" => {
            check("corank 3 at (1,0,1,0,0)", corank(&p10)? == Corank::Corank(3));
            check("fiber over (1,0) is a triple line", classify_cubic(&fiber_cubic(f, &t10)?)? == CubicType::TripleLine);
            check("tangent cone of B(S) at o contains 3L", cone_b_order(&l_y2)?.is_some_and(|k| k >= 3));
        }
        "U4" => {
            check("corank 3 at (1,0,1,0,0)", corank(&p10)? == Corank::Corank(3));
            let fib = fiber_cubic(f, &t10)?;
            check("fiber over (1,0) is 2L1 + L2", classify_cubic(&fib)? == CubicType::DoubleLineLine);
            check("L1 = {y2=0} is the double line", linear_factor_order(&fib, 0, &l_y2) == Some(2));
            check("L1 and L2 meet at o", tangent_cone(&fib, &o)?.total_degree() == Some(3));
            check(
                "mult_o(F, L1) >= 2 for every fiber",
                fiberwise_line_multiplicity(f, &l_y2, &o)?.is_none_or(|m| m >= 2),
            );
            check("tangent cone of B(S) at o contains 3L1", cone_b_order(&l_y2)?.is_some_and(|k| k >= 3));
        }
        "U5" => {
            check("singular along horizontal line P1x{o}", jacobian_vanishes_on(f, &horiz)?);
            let fib = fiber_cubic(f, &t10)?;
            check("fiber over (1,0) is three concurrent lines", classify_cubic(&fib)? == CubicType::ThreeConcurrentLines);
            check("the lines meet at o", tangent_cone(&fib, &o)?.total_degree() == Some(3));
            let cone = tangent_cone(&branch_locus(f).sextic, &o)?;
            let deg = cone.total_degree().unwrap_or(0);
            check("tangent cone of B(S) at o is at least a quadruple line", deg > 4 || (deg == 4 && linear_power_root(&cone).is_some()));
        }
        "U6" => {
            check("singular along horizontal line P1x{o}", jacobian_vanishes_on(f, &horiz)?);
            let cone = tangent_cone(&fiber_cubic(f, &t10)?, &o)?;
            check(
                "fiber F0 has tangent cone 2L at o, L={y2=0}",
                cone.total_degree() == Some(2) && linear_power_root(&cone).is_some_and(|r| r.proportional(&Poly::var(3, 2))),
            );
            check(
                "mult_o(F, L) >= 3 for every fiber",
                fiberwise_line_multiplicity(f, &l_y2, &o)?.is_none_or(|m| m >= 3),
            );
            check("tangent cone of B(S) at o contains 3L", cone_b_order(&l_y2)?.is_some_and(|k| k >= 3));
        }
        "U7" => {
            check("singular along vertical line {x1=y2=0}", jacobian_vanishes_on(f, &vert)?);
            check(
                "L meets every fiber not containing it in at least a triple point o",
                fiberwise_line_multiplicity(f, &l_y2, &o)?.is_none_or(|m| m >= 3),
            );
            let b = branch_locus(f).sextic;
            let ord = linear_factor_order(&b, 0, &l_y2);
            check("B(S) = 2L + B'", ord.is_some_and(|k| k >= 2));
            let triple = match b.div_monomial(&[0, 0, 2]) {
                Some(bp) if !bp.is_zero() => line_multiplicity(&bp, &l_y2, &o)?.is_none_or(|m| m >= 3),
                _ => false,
            };
            check("L meets B' in at least a triple point at o", triple);
        }
        "alpha" => {
            check("singular along vertical line {x1=y2=0}", jacobian_vanishes_on(f, &vert)?);
            let q = pt5([0, 1, 0, 0, 1]);
            check("corank 3 at p=(0,1,0,0,1)", corank(&q)? == Corank::Corank(3));
            check("pi'(p) not on L", !Poly::var(3, 2).eval(&pt3([0, 0, 1])).is_zero());
        }
        "beta" => {
            let q = pt5([0, 1, 0, 0, 1]);
            check("corank 2 at p=(1,0,1,0,0)", corank(&p10)? == Corank::Corank(2));
            check("corank 2 at q=(0,1,0,0,1)", corank(&q)? == Corank::Corank(2));
            check("E8~ weights at p", e8_at(&p10, [(1, w(1, 2)), (3, w(1, 6)), (4, w(1, 3))])?);
            check("E8~ weights at q", e8_at(&q, [(0, w(1, 2)), (3, w(1, 6)), (2, w(1, 3))])?);
            let (f1, f2) = (fiber_cubic(f, &t10)?, fiber_cubic(f, &t01)?);
            let (r1, r2) = (linear_power_root(&f1), linear_power_root(&f2));
            check("fibers over pi(p), pi(q) are triple lines", r1.is_some() && r2.is_some());
            check(
                "the two lines differ",
                matches!((&r1, &r2), (Some(a), Some(b)) if !a.proportional(b)),
            );
        }
        "gamma" => {
            check("contains P1xP1 = {y2=0}", restrict_var_zero(&p, 4).is_zero());
            let c = CurveParam::horizontal([0, 0, 1]);
            check("singular along horizontal line C = P1x(0,0,1)", jacobian_vanishes_on(f, &c)?);
            check("C misses P1xP1", !Poly::var(3, 2).eval(&pt3([0, 0, 1])).is_zero());
        }
        "eta" => {
            let q = pt5([0, 1, 0, 0, 1]);
            let oq = pt3([0, 0, 1]);
            check("corank 2 at p=(1,0,1,0,0)", corank(&p10)? == Corank::Corank(2));
            check("corank 2 at q=(0,1,0,0,1)", corank(&q)? == Corank::Corank(2));
            check("E7~ weights at p", e8_at(&p10, [(1, w(1, 4)), (3, w(1, 4)), (4, w(1, 2))])?);
            check("E7~ weights at q", e8_at(&q, [(0, w(1, 4)), (3, w(1, 4)), (2, w(1, 2))])?);
            check("fiber over pi(p) contains L1={y2=0}", line_multiplicity(&fiber_cubic(f, &t10)?, &l_y2, &o)?.is_none());
            check("fiber over pi(q) contains L2={y0=0}", line_multiplicity(&fiber_cubic(f, &t01)?, &l_y0, &oq)?.is_none());
            check(
                "mult_p'(F, L1) >= 2 for every fiber",
                fiberwise_line_multiplicity(f, &l_y2, &o)?.is_none_or(|m| m >= 2),
            );
            check(
                "mult_q'(F, L2) >= 2 for every fiber",
                fiberwise_line_multiplicity(f, &l_y0, &oq)?.is_none_or(|m| m >= 2),
            );
        }
        "delta" => {
            check("contains P2 = {x0=0}", restrict_var_zero(&p, 0).is_zero());
            check("contains P2 = {x1=0}", restrict_var_zero(&p, 1).is_zero());
            check("residual is P1 x C", !f.is_zero() && f.support().iter().all(|m| m.u == 1));
        }
        "tau" => {
            check(
                "fixed by the 1-PS (4,-4,3,2,-5)",
                f.support().iter().all(|m| {
                    let e = m.exponents();
                    4 * e[0] as i64 - 4 * e[1] as i64 + 3 * e[2] as i64 + 2 * e[3] as i64 - 5 * e[4] as i64 == 0
                }),
            );
            check("specializes alpha", matches_normal_form(f, "alpha")?);
            let g = swap_y12(f);
            check("specializes gamma after y1<->y2", matches_normal_form(&g, "gamma")?);
            check("specializes eta after y1<->y2", matches_normal_form(&g, "eta")?);
            check("singular along vertical line {x1=y2=0}", jacobian_vanishes_on(f, &vert)?);
            check("contains P1xP1 = {y1=0}", restrict_var_zero(&p, 3).is_zero());
        }
        "tau'" => {
            for (v, name) in ["x0", "x1", "y0", "y1", "y2"].iter().enumerate() {
                check(&format!("contains {{{name}=0}}"), restrict_var_zero(&p, v).is_zero());
            }
            check("specializes delta", matches_normal_form(f, "delta")?);
        }
        "theta" => {
            let s = CurveParam::section([Poly::var(2, 0), Poly::var(2, 1), Poly::zero(2)]);
            check("singular along the degree 1 section y=(x0,x1,0)", jacobian_vanishes_on(f, &s)?);
        }
        "phi" => {
            let (a, b) = (Poly::var(2, 0), Poly::var(2, 1));
            let s = CurveParam::section([&a * &a, &a * &b, &b * &b]);
            check("singular along the degree 2 section y=(x0^2,x0x1,x1^2)", jacobian_vanishes_on(f, &s)?);
        }
        other => return Err(GeomError::UnknownLabel(other.to_string())),
    }
    Ok(out)
}

/// Cubic cut on {x1 = 0} by a form of bidegree (1,3), after setting x0 = 1.
fn cubic_on_x1_zero(p: &Poly) -> Poly {
    let subs = vec![Poly::constant(3, Rat::one()), Poly::zero(3), Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2)];
    p.substitute(&subs)
}

pub const COEFF_BOUND: i64 = 20;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FailedSample {
    pub index: usize,
    pub form: String,
    pub failed: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub label: String,
    pub seed: u64,
    pub samples: usize,
    pub passed: usize,
    pub redraws: usize,
    pub checks: Vec<String>,
    pub failures: Vec<FailedSample>,
}

impl FamilyCheck {
    pub fn all_passed(&self) -> bool {
        self.passed == self.samples
    }
}

fn label_seed(seed: u64, label: &str) -> u64 {
    label.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

/// Generators of a family: monomials of the support, or the spec generators.
fn family_generators(label: &str) -> Result<Vec<BiForm>, GeomError> {
    match label {
        "theta" | "phi" | "zeta" | "xi" => Ok(normal_form_spec(label)
            .map_err(|e| GeomError::UnknownLabel(e.to_string()))?
            .generators),
        _ => {
            let e = catalog_entry(label).map_err(|e| GeomError::UnknownLabel(e.to_string()))?;
            Ok(e.support().into_iter().map(|m| BiForm::from_terms([(m, Rat::one())])).collect())
        }
    }
}

/// Random member with every generator coefficient a nonzero integer in [-20, 20].
pub fn random_member<R: Rng>(label: &str, rng: &mut R, redraws: &mut usize) -> Result<BiForm, GeomError> {
    let l = canonical_label(label)?;
    let gens = family_generators(l)?;
    loop {
        let cs: Vec<i64> = gens.iter().map(|_| rng.gen_range(-COEFF_BOUND..=COEFF_BOUND)).collect();
        if cs.iter().any(|&c| c == 0) {
            *redraws += 1;
            continue;
        }
        let mut f = BiForm::new();
        for (g, &c) in gens.iter().zip(&cs) {
            for m in g.support() {
                f.add(m, g.coeff(m) * ri(c));
            }
        }
        if f.is_zero() || (l != "theta" && l != "phi" && gens.iter().any(|g| g.support().iter().any(|m| f.coeff(*m).is_zero()))) {
            *redraws += 1;
            continue;
        }
        return Ok(f);
    }
}

/// Draw seeded members of a family and evaluate its geometric predicate.
pub fn verify_family(label: &str, samples: usize, seed: u64) -> Result<FamilyCheck, GeomError> {
    let l = canonical_label(label)?;
    let mut rng = ChaCha8Rng::seed_from_u64(label_seed(seed, l));
    let mut redraws = 0;
    let mut passed = 0;
    let mut failures = Vec::new();
    let mut names = Vec::new();
    for index in 0..samples {
        let f = random_member(l, &mut rng, &mut redraws)?;
        let mut checks = family_predicate(l, &f)?;
        checks.push(("member of the family span".into(), matches_normal_form(&f, l)?));
        checks.push(("Euler relations".into(), euler_holds(&f)));
        if names.is_empty() {
            names = checks.iter().map(|(n, _)| n.clone()).collect();
        }
        let failed: Vec<String> = checks.into_iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
        if failed.is_empty() {
            passed += 1;
        } else {
            failures.push(FailedSample { index, form: f.to_text(), failed });
        }
    }
    Ok(FamilyCheck { label: l.to_string(), seed, samples, passed, redraws, checks: names, failures })
}

/// Summary of the local geometry of a single form, used by `geom analyze`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormAnalysis {
    pub form: String,
    pub euler: bool,
    pub branch_locus: String,
    pub branch_degenerate: bool,
    pub fibers: Vec<(String, Option<CubicType>)>,
    pub matching_labels: Vec<String>,
    pub corank: Option<(String, Corank)>,
}

pub fn analyze(f: &BiForm, point: Option<&[Rat; 5]>) -> Result<FormAnalysis, GeomError> {
    let bl = branch_locus(f);
    let mut fibers = Vec::new();
    for t in [[1, 0], [0, 1], [1, 1], [1, -1]] {
        let c = fiber_cubic(f, &[ri(t[0]), ri(t[1])])?;
        let ty = if c.is_zero() { None } else { Some(classify_cubic(&c)?) };
        fibers.push((format!("({}:{})", t[0], t[1]), ty));
    }
    let mut matching = Vec::new();
    for l in FAMILY_LABELS.iter().chain(["theta", "phi", "zeta", "xi"].iter()) {
        if matches_normal_form(f, l)? {
            matching.push(l.to_string());
        }
    }
    let corank = match point {
        Some(p) => Some((
            p.iter().map(crate::poly::rat_str).collect::<Vec<_>>().join(","),
            corank_at(f, p)?,
        )),
        None => None,
    };
    Ok(FormAnalysis {
        form: f.to_text(),
        euler: euler_holds(f),
        branch_locus: format!("{:?}", bl.sextic),
        branch_degenerate: bl.degenerate,
        fibers,
        matching_labels: matching,
        corank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(i: usize) -> Poly {
        Poly::var(3, i)
    }

    /// Terms as (coeff, exponents of x0 x1 y0 y1 y2).
    fn form(terms: &[(i64, [u32; 5])]) -> BiForm {
        let mut p = Poly::zero(5);
        for (c, e) in terms {
            p.add_term(e.to_vec(), ri(*c));
        }
        BiForm::from_poly(&p).unwrap()
    }

    #[test]
    fn cubic_types() {
        let c = |p: Poly| classify_cubic(&p).unwrap();
        assert_eq!(c(y(2).pow(3)), CubicType::TripleLine);
        assert_eq!(c(&(&y(0) * &y(1)) * &y(2)), CubicType::ThreeLinesGeneral);
        // y1^2 y0 - y2^3: cusp
        assert_eq!(c(&(&y(1).pow(2) * &y(0)) - &y(2).pow(3)), CubicType::Cuspidal);
        // y1^2 y0 - y2^2 (y2 + y0): node
        assert_eq!(c(&(&y(1).pow(2) * &y(0)) - &(&y(2).pow(2) * &(&y(2) + &y(0)))), CubicType::Nodal);
        // Fermat
        assert_eq!(c(&(&y(0).pow(3) + &y(1).pow(3)) + &y(2).pow(3)), CubicType::Smooth);
        // y0 (y0 y2 - y1^2): tangent line
        assert_eq!(c(&y(0) * &(&(&y(0) * &y(2)) - &y(1).pow(2))), CubicType::ConicTangentLine);
        // y1 (y0 y2 - y1^2): secant line
        assert_eq!(c(&y(1) * &(&(&y(0) * &y(2)) - &y(1).pow(2))), CubicType::ConicLine);
        // y1 y2 (y1 + y2)
        assert_eq!(c(&(&y(1) * &y(2)) * &(&y(1) + &y(2))), CubicType::ThreeConcurrentLines);
        assert_eq!(c(&y(2).pow(2) * &y(1)), CubicType::DoubleLineLine);
        // irrational lines: y1^3 - 2 y2^3
        assert_eq!(c(&y(1).pow(3) - &y(2).pow(3).scale(&ri(2))), CubicType::ThreeConcurrentLines);
        assert_eq!(classify_cubic(&Poly::zero(3)), Err(GeomError::WholePlane));
    }

    #[test]
    fn tangent_cones_and_multiplicity() {
        let g = &(&y(0) * &y(2).pow(2)) - &y(1).pow(3);
        let o = pt3([1, 0, 0]);
        assert_eq!(tangent_cone(&g, &o).unwrap(), y(2).pow(2));
        let h = &(&y(0) * &y(2)) - &y(1).pow(2);
        assert_eq!(line_multiplicity(&h, &pt3([0, 0, 1]), &o).unwrap(), Some(2));
        assert_eq!(tangent_cone(&h, &pt3([0, 1, 0])), Err(GeomError::NotOnCurve));
        // cone at a non-coordinate point: y0 y2 - y1^2 at (1,1,1) is a smooth point
        let cone = tangent_cone(&h, &pt3([1, 1, 1])).unwrap();
        assert_eq!(cone.total_degree(), Some(1));
        assert!(cone.eval(&pt3([1, 1, 1])).is_zero());
    }

    #[test]
    fn corank_examples() {
        // node: x1^2 y0^3 - x0^2 y0 (y1^2 + y2^2) at (1,0,1,0,0) -> local x1^2 - y1^2 - y2^2
        let f = form(&[(1, [0, 2, 3, 0, 0]), (-1, [2, 0, 1, 2, 0]), (-1, [2, 0, 1, 0, 2])]);
        assert_eq!(corank_at(&f, &pt5([1, 0, 1, 0, 0])).unwrap(), Corank::Corank(0));
        assert_eq!(corank_at(&f, &pt5([1, 1, 1, 1, 1])), Err(GeomError::NotOnSurface));
        let g = form(&[(1, [2, 0, 3, 0, 0]), (1, [0, 2, 0, 3, 0]), (1, [1, 1, 0, 0, 3])]);
        assert_eq!(corank_at(&g, &pt5([1, 1, 1, -1, 0])).unwrap(), Corank::NotSingular);
    }

    #[test]
    fn reference_shapes() {
        // (alpha) shape: singular along {x1 = y2 = 0}
        let a = form(&[(1, [0, 2, 3, 0, 0]), (1, [0, 2, 0, 3, 0]), (1, [1, 1, 1, 1, 1]), (1, [2, 0, 1, 0, 2])]);
        assert!(jacobian_vanishes_on(&a, &CurveParam::vertical([1, 0], [1, 0, 0], [0, 1, 0])).unwrap());
        // (theta) member singular along (x0, x1, 0)
        let spec = normal_form_spec("theta").unwrap();
        let mut t = BiForm::new();
        for (k, g) in spec.generators.iter().enumerate() {
            for m in g.support() {
                t.add(m, g.coeff(m) * ri(k as i64 + 1));
            }
        }
        let sec = CurveParam::section([Poly::var(2, 0), Poly::var(2, 1), Poly::zero(2)]);
        assert!(jacobian_vanishes_on(&t, &sec).unwrap());
        let bad = CurveParam::section([Poly::zero(2), Poly::zero(2), Poly::zero(2)]);
        assert!(jacobian_vanishes_on(&t, &bad).is_err());
        // (beta) with (a,b,c,d) = (1,1,1,1)
        let b = form(&[(1, [0, 2, 3, 0, 0]), (1, [1, 1, 0, 3, 0]), (1, [1, 1, 1, 1, 1]), (1, [2, 0, 0, 0, 3])]);
        assert!(matches_normal_form(&b, "beta").unwrap());
        assert!(matches_normal_form(&b, "β").unwrap());
        assert!(matches!(matches_normal_form(&b, "omega"), Err(GeomError::UnknownLabel(_))));
        // (N2) fiber over (1,0) is the triple line
        let n2 = form(&[(1, [0, 2, 3, 0, 0]), (1, [0, 2, 0, 2, 1]), (1, [1, 1, 0, 3, 0]), (1, [1, 1, 1, 1, 1]), (3, [2, 0, 0, 0, 3])]);
        assert_eq!(classify_cubic(&fiber_cubic(&n2, &[ri(1), ri(0)]).unwrap()).unwrap(), CubicType::TripleLine);
        assert_eq!(corank_at(&n2, &pt5([1, 0, 1, 0, 0])).unwrap(), Corank::Corank(2));
    }

    #[test]
    fn branch_examples() {
        // B = 0 gives -4AC
        let f = form(&[(1, [2, 0, 3, 0, 0]), (1, [0, 2, 0, 3, 0])]);
        let bl = branch_locus(&f);
        assert_eq!(bl.sextic, (&y(0).pow(3) * &y(1).pow(3)).scale(&ri(-4)));
        assert!(!bl.degenerate);
        let g = form(&[(1, [1, 1, 3, 0, 0]), (1, [0, 2, 0, 3, 0])]);
        assert!(branch_locus(&g).degenerate);
        // (alpha) shape: divisible by y2^2
        let a = form(&[(1, [0, 2, 3, 0, 0]), (1, [0, 2, 0, 3, 0]), (1, [1, 1, 1, 1, 1]), (1, [2, 0, 1, 0, 2])]);
        assert_eq!(linear_factor_order(&branch_locus(&a).sextic, 0, &pt3([0, 0, 1])), Some(2));
    }

    #[test]
    fn linear_powers() {
        let l = &(&y(0) + &y(1).scale(&ri(2))) - &y(2);
        assert!(linear_power_root(&l.pow(3)).unwrap().proportional(&l));
        assert!(linear_power_root(&(&l.pow(2) * &y(0))).is_none());
        assert_eq!(linear_factor_order(&(&l.pow(2) * &y(0)), 0, &pt3([1, 2, -1])), Some(2));
    }

    #[test]
    fn generic_form_fails_every_predicate() {
        let mut k = 3i64;
        let f = BiForm::from_terms(BiMonomial::all().into_iter().map(|m| {
            k = (k * 7 + 5) % 41 - 20;
            (m, ri(if k == 0 { 1 } else { k }))
        }));
        for l in FAMILY_LABELS.iter().chain(["theta", "phi"].iter()) {
            let checks = family_predicate(l, &f).unwrap();
            assert!(checks.iter().any(|(_, ok)| !ok), "{l} holds on a generic form");
            assert!(!matches_normal_form(&f, l).unwrap());
        }
    }

    #[test]
    fn every_family_passes_a_few_samples() {
        for l in FAMILY_LABELS.iter().chain(["theta", "phi"].iter()) {
            let r = verify_family(l, 3, 7).unwrap();
            assert!(r.all_passed(), "{l}: {:?}", r.failures);
        }
    }
}
