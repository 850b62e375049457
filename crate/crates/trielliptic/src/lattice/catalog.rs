//! Named lattices and the Niemeier glue-code catalog.

use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{IntegralLattice, LatticeError, RootSystem, RootType};
use crate::linalg::{hnf_rows, IntMatrix, Rat, RatMatrix};
use crate::poly::{parse_rat, rat_str};

pub fn a_gram(n: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; n]; n];
    for i in 0..n {
        g[i][i] = -2;
        if i + 1 < n {
            g[i][i + 1] = 1;
            g[i + 1][i] = 1;
        }
    }
    g
}

/// d1·d3 = 1 and d_i·d_{i+1} = 1 for 2 ≤ i ≤ n-1 (1-based).
pub fn d_gram(n: usize) -> Vec<Vec<i64>> {
    assert!(n >= 3);
    let mut g = vec![vec![0; n]; n];
    for i in 0..n {
        g[i][i] = -2;
    }
    let mut link = |a: usize, b: usize| {
        g[a][b] = 1;
        g[b][a] = 1;
    };
    link(0, 2);
    for i in 1..n - 1 {
        link(i, i + 1);
    }
    g
}

/// e1·e4 = 1 and e_i·e_{i+1} = 1 for 2 ≤ i ≤ n-1 (1-based).
pub fn e_gram(n: usize) -> Vec<Vec<i64>> {
    assert!((6..=8).contains(&n));
    let mut g = vec![vec![0; n]; n];
    for i in 0..n {
        g[i][i] = -2;
    }
    let mut link = |a: usize, b: usize| {
        g[a][b] = 1;
        g[b][a] = 1;
    };
    link(0, 3);
    for i in 1..n - 1 {
        link(i, i + 1);
    }
    g
}

pub fn root_gram(t: RootType) -> Vec<Vec<i64>> {
    match t {
        RootType::A(n) => a_gram(n),
        RootType::D(n) => d_gram(n),
        RootType::E(n) => e_gram(n),
    }
}

pub fn root_lattice(t: RootType) -> IntegralLattice {
    IntegralLattice::from_i64(t.to_string(), &root_gram(t)).expect("symmetric")
}

pub fn l8_gram() -> Vec<Vec<i64>> {
    let mut g = d_gram(7);
    let w = [0, 1, -1, 0, 0, 0, 1];
    for r in g.iter_mut().zip(w) {
        r.0.push(r.1);
    }
    let mut last = w.to_vec();
    last.push(-4);
    g.push(last);
    g
}

pub fn t_gram(n: i64) -> Vec<Vec<i64>> {
    vec![vec![2 * n, 3], vec![3, 0]]
}

pub fn block_sum(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut g = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for i in 0..b.len() {
            for j in 0..b.len() {
                g[off + i][off + j] = b[i][j];
            }
        }
        off += b.len();
    }
    g
}

pub fn u_gram(k: i64) -> Vec<Vec<i64>> {
    vec![vec![0, k], vec![k, 0]]
}

/// K3 lattice U^3 ⊕ E8(-1)^2 in the basis e1,f1,e2,f2,e3,f3, E8, E8.
pub fn k3_gram() -> Vec<Vec<i64>> {
    block_sum(&[u_gram(1), u_gram(1), u_gram(1), e_gram(8), e_gram(8)])
}

/// Niemeier root systems needed here, with Conway–Sloane glue generators.
pub const NIEMEIER: &[(&str, &[(char, usize)], &[&[u8]])] = &[
    ("E8^3", &[('E', 8), ('E', 8), ('E', 8)], &[]),
    ("D16E8", &[('D', 16), ('E', 8)], &[&[1, 0]]),
    ("D24", &[('D', 24)], &[&[1]]),
    ("D12^2", &[('D', 12), ('D', 12)], &[&[1, 2], &[2, 1]]),
    ("D10E7^2", &[('D', 10), ('E', 7), ('E', 7)], &[&[1, 1, 0], &[3, 0, 1]]),
    ("D9A15", &[('D', 9), ('A', 15)], &[&[1, 2]]),
    ("D8^3", &[('D', 8), ('D', 8), ('D', 8)], &[&[1, 2, 2], &[2, 1, 2], &[2, 2, 1]]),
    ("D7E6A11", &[('D', 7), ('E', 6), ('A', 11)], &[&[1, 1, 1]]),
    ("A24", &[('A', 24)], &[&[5]]),
    ("A17E7", &[('A', 17), ('E', 7)], &[&[3, 1]]),
    ("A12^2", &[('A', 12), ('A', 12)], &[&[1, 5]]),
    ("A9^2D6", &[('A', 9), ('A', 9), ('D', 6)], &[&[2, 4, 0], &[5, 0, 1], &[0, 5, 3]]),
    ("A8^3", &[('A', 8), ('A', 8), ('A', 8)], &[&[1, 1, 4], &[4, 1, 1], &[1, 4, 1]]),
    ("E6^4", &[('E', 6), ('E', 6), ('E', 6), ('E', 6)], &[&[1, 0, 1, 2], &[1, 1, 2, 0], &[1, 2, 0, 1]]),
];

/// Rank-16 even unimodular lattices.
pub const RANK16: &[(&str, &[(char, usize)], &[&[u8]])] =
    &[("E8^2", &[('E', 8), ('E', 8)], &[]), ("D16+", &[('D', 16)], &[&[1]])];

/// Target lists per census case, in catalog names.
pub const L8_TARGETS: &[&str] =
    &["E8^3", "D16E8", "D24", "D12^2", "D10E7^2", "D9A15", "D8^3", "D7E6A11"];

fn rtype(c: char, n: usize) -> RootType {
    match c {
        'A' => RootType::A(n),
        'D' => RootType::D(n),
        _ => RootType::E(n),
    }
}

/// Representative of glue class `k` in the dual of one component, in simple-root coordinates.
pub fn glue_class(t: RootType, k: u8) -> Vec<Rat> {
    let g = IntMatrix::from_i64(&root_gram(t)).to_rat().inverse().expect("root lattice");
    let n = t.rank();
    let dual = |i: usize| g.row(i);
    let zero = vec![Rat::zero(); n];
    let scale = |v: Vec<Rat>, s: i64| v.into_iter().map(|x| x * Rat::from_integer(s.into())).collect::<Vec<_>>();
    match (t, k) {
        (_, 0) => zero,
        (RootType::A(_), k) => scale(dual(0), k as i64),
        (RootType::D(_), 1) => dual(0),
        (RootType::D(n), 2) => dual(n - 1),
        (RootType::D(_), 3) => dual(1),
        (RootType::E(6), k) => scale(dual(5), k as i64),
        (RootType::E(7), 1) => dual(6),
        _ => panic!("no glue class {k} for {t}"),
    }
}

/// One entry of the lattice catalog file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    /// Gram matrix of the root lattice (block diagonal).
    pub gram: Vec<Vec<i64>>,
    /// Glue vectors in simple-root coordinates, as exact rational strings.
    pub glue: Vec<Vec<String>>,
    #[serde(default)]
    pub components: Vec<String>,
}

pub fn glue_entry(name: &str, comps: &[(char, usize)], code: &[&[u8]]) -> CatalogEntry {
    let types: Vec<RootType> = comps.iter().map(|&(c, n)| rtype(c, n)).collect();
    let gram = block_sum(&types.iter().map(|&t| root_gram(t)).collect::<Vec<_>>());
    let glue = code
        .iter()
        .map(|word| {
            types
                .iter()
                .zip(word.iter())
                .flat_map(|(&t, &k)| glue_class(t, k))
                .map(|x| rat_str(&x))
                .collect()
        })
        .collect();
    CatalogEntry { name: format!("M({name})"), gram, glue, components: types.iter().map(|t| t.to_string()).collect() }
}

pub fn builtin_entries() -> Vec<CatalogEntry> {
    NIEMEIER.iter().chain(RANK16.iter()).map(|(n, c, g)| glue_entry(n, c, g)).collect()
}

/// Overlattice of a root lattice with glue, with its basis in simple-root coordinates.
#[derive(Clone, Debug)]
pub struct GluedLattice {
    pub lattice: IntegralLattice,
    /// Rows: basis vectors of the overlattice in simple-root coordinates.
    pub basis: RatMatrix,
    pub components: Vec<String>,
}

pub fn build_glued(entry: &CatalogEntry) -> Result<GluedLattice, LatticeError> {
    let n = entry.gram.len();
    let glue: Vec<Vec<Rat>> = entry
        .glue
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| parse_rat(s).ok_or_else(|| LatticeError::Invalid(format!("bad rational {s}"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    if glue.iter().any(|r| r.len() != n) {
        return Err(LatticeError::Invalid(format!("glue vector length in {}", entry.name)));
    }
    let den = glue.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { den.clone() } else { BigInt::zero() }).collect())
        .collect();
    for g in &glue {
        rows.push(g.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect());
    }
    let h = hnf_rows(&IntMatrix::from_rows(&rows, n));
    let dr = Rat::from_integer(den);
    let basis_rows: Vec<Vec<Rat>> =
        h.to_rows().into_iter().map(|r| r.into_iter().map(|x| Rat::from_integer(x) / &dr).collect()).collect();
    let basis = RatMatrix::from_rows(&basis_rows, n);
    let g = IntMatrix::from_i64(&entry.gram).to_rat();
    let gn = basis.mul(&g).mul(&basis.transpose());
    let gram = gn.to_int().ok_or_else(|| LatticeError::Invalid(format!("{}: glue is not integral", entry.name)))?;
    Ok(GluedLattice {
        lattice: IntegralLattice::new(entry.name.clone(), gram)?,
        basis,
        components: entry.components.clone(),
    })
}

/// Check evenness, unimodularity, definiteness and the root count of a glued lattice.
pub fn validate_glued(gl: &GluedLattice) -> Result<(), LatticeError> {
    let l = &gl.lattice;
    if !l.is_even() {
        return Err(LatticeError::Invalid(format!("{} is not even", l.name)));
    }
    if !l.is_unimodular() {
        return Err(LatticeError::Invalid(format!("{} has det {}", l.name, l.det())));
    }
    if !l.is_negative_definite() {
        return Err(LatticeError::NotDefinite(l.signature()));
    }
    let expected = RootSystem::parse(&gl.components.join("+")).ok_or_else(|| LatticeError::Invalid("components".into()))?;
    let rs = super::root_system(l)?;
    if rs != expected {
        return Err(LatticeError::Invalid(format!("{}: root system {rs}, expected {expected}", l.name)));
    }
    Ok(())
}

/// Load catalog entries from `dir/niemeier.json` if present, else the built-in table.
pub fn load_entries(dir: Option<&Path>) -> Result<Vec<CatalogEntry>, LatticeError> {
    if let Some(d) = dir {
        let p = d.join("niemeier.json");
        if p.exists() {
            let text = std::fs::read_to_string(&p).map_err(|e| LatticeError::Invalid(format!("{}: {e}", p.display())))?;
            return serde_json::from_str(&text).map_err(|e| LatticeError::Invalid(format!("{}: {e}", p.display())));
        }
    }
    Ok(builtin_entries())
}

fn normalize_name(name: &str) -> String {
    let s = name.trim().replace(' ', "");
    let s = s.strip_prefix("M(").and_then(|x| x.strip_suffix(')')).unwrap_or(&s).to_string();
    match s.as_str() {
        "A15D9" => "D9A15".into(),
        "E8D16" => "D16E8".into(),
        "E8E8E8" => "E8^3".into(),
        "D12D12" => "D12^2".into(),
        "D8D8D8" => "D8^3".into(),
        "E8E8" => "E8^2".into(),
        "D16^+" => "D16+".into(),
        other => other.to_string(),
    }
}

/// Catalog lookup by name.
///
/// Names: A(n), D(n), E(6|7|8), U, U(k), <k>, T(n), K3, L8, M(R) for Niemeier R, E8^2, D16+.
pub fn catalog(name: &str) -> Result<IntegralLattice, LatticeError> {
    catalog_in(name, &builtin_entries())
}

pub fn catalog_in(name: &str, entries: &[CatalogEntry]) -> Result<IntegralLattice, LatticeError> {
    let unknown = || LatticeError::UnknownName(name.to_string());
    let s = name.trim();
    let arg = |prefix: &str| -> Option<i64> {
        let t = s.strip_prefix(prefix)?;
        let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        t.parse().ok()
    };
    let lat = |g: Vec<Vec<i64>>| IntegralLattice::from_i64(s, &g);
    match s {
        "U" => return lat(u_gram(1)),
        "K3" => return lat(k3_gram()),
        "L8" => return lat(l8_gram()),
        _ => {}
    }
    if let Some(k) = s.strip_prefix('<').and_then(|x| x.strip_suffix('>')) {
        let k: i64 = k.parse().map_err(|_| unknown())?;
        if k == 0 || k % 2 != 0 {
            return Err(unknown());
        }
        return lat(vec![vec![k]]);
    }
    if let Some(k) = arg("U") {
        return lat(u_gram(k));
    }
    if let Some(n) = arg("T") {
        return lat(t_gram(n));
    }
    if let Some(n) = arg("A") {
        if n >= 1 {
            return lat(a_gram(n as usize));
        }
    }
    if let Some(n) = arg("D") {
        if n >= 3 {
            return lat(d_gram(n as usize));
        }
    }
    if let Some(n) = arg("E") {
        if (6..=8).contains(&n) {
            return lat(e_gram(n as usize));
        }
    }
    let key = format!("M({})", normalize_name(s));
    let e = entries.iter().find(|e| e.name == key).ok_or_else(unknown)?;
    let mut l = build_glued(e)?.lattice;
    l.name = key;
    Ok(l)
}

pub fn glued(name: &str) -> Result<GluedLattice, LatticeError> {
    let key = format!("M({})", normalize_name(name));
    let e = builtin_entries().into_iter().find(|e| e.name == key).ok_or_else(|| LatticeError::UnknownName(name.into()))?;
    build_glued(&e)
}

/// Dual basis vector k (1-based) of a lattice, with its norm from the Gram inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeVector {
    pub coords: Vec<Rat>,
    pub norm: Rat,
    pub integral: bool,
}

pub fn dual_vector(lat: &IntegralLattice, k: usize) -> Result<LatticeVector, LatticeError> {
    if k == 0 || k > lat.rank() {
        return Err(LatticeError::Invalid(format!("dual index {k} out of range")));
    }
    let inv = lat.dual_basis().ok_or_else(|| LatticeError::Invalid("degenerate lattice".into()))?;
    let coords = inv.row(k - 1);
    let norm = lat.pair(&coords, &coords);
    let integral = coords.iter().all(|x| x.is_integer());
    Ok(LatticeVector { coords, norm, integral })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use num_traits::Signed;

    #[test]
    fn small_catalog() {
        let l8 = catalog("L8").unwrap();
        assert_eq!(l8.det(), BigInt::from(9));
        assert!(l8.is_negative_definite() && l8.is_even());
        assert_eq!(catalog("U(3)").unwrap().gram, IntMatrix::from_i64(&[vec![0, 3], vec![3, 0]]));
        assert_eq!(catalog("E8").unwrap().det(), BigInt::one());
        assert_eq!(catalog("E7").unwrap().det().abs(), BigInt::from(2));
        assert_eq!(catalog("E6").unwrap().det().abs(), BigInt::from(3));
        assert_eq!(catalog("D5").unwrap().det().abs(), BigInt::from(4));
        assert_eq!(catalog("K3").unwrap().signature(), (3, 19));
        assert!(catalog("X9").is_err());
    }

    #[test]
    fn dual_norms() {
        let d8 = catalog("D8").unwrap();
        assert_eq!(dual_vector(&d8, 1).unwrap().norm, rat(-2, 1));
        assert_eq!(dual_vector(&d8, 8).unwrap().norm, rat(-1, 1));
        let pair = d8.pair(&dual_vector(&d8, 1).unwrap().coords, &dual_vector(&d8, 8).unwrap().coords);
        assert_eq!(pair, rat(-1, 2));
        assert_eq!(dual_vector(&catalog("E7").unwrap(), 7).unwrap().norm, rat(-3, 2));
        assert_eq!(dual_vector(&catalog("E6").unwrap(), 6).unwrap().norm, rat(-4, 3));
        assert_eq!(dual_vector(&catalog("A8").unwrap(), 8).unwrap().norm, rat(-8, 9));
    }

    #[test]
    fn d24_and_d16() {
        let d24 = glued("M(D24)").unwrap();
        validate_glued(&d24).unwrap();
        let d16 = glued("D16+").unwrap();
        validate_glued(&d16).unwrap();
    }
}
