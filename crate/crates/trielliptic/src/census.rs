//! Baily–Borel boundary census for the Σ_n.

use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::catalog::{block_sum, catalog_in, e_gram, k3_gram, l8_gram, u_gram, CatalogEntry, L8_TARGETS};
use crate::lattice::embed::{classify_target, InvariantTuple, Limits, PreparedTarget, TargetResult};
use crate::lattice::normal_form::{find_isotropic_planes, isotropic_normal_form};
use crate::lattice::{IntegralLattice, LatticeEmbedding, LatticeError, RootSystem};
use crate::qform::{isotropic_census, sigma_form, FiniteQuadraticForm, IsotropicCensus};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("n must be 1, 2 or 3, got {0}")]
    BadN(u8),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("Σ_{0} construction failed: {1}")]
    Sigma(u8, String),
}

/// Σ_n = T_n(-1) ⊕ U ⊕ E₈² in the basis p = e₁ - n f₁ - 3 f₂, q = e₂, then U, E₈, E₈.
pub fn build_sigma(n: u8) -> Result<IntegralLattice, CensusError> {
    if !(1..=3).contains(&n) {
        return Err(CensusError::BadN(n));
    }
    let k = n as i64;
    let t = vec![vec![-2 * k, -3], vec![-3, 0]];
    let g = block_sum(&[t, u_gram(1), e_gram(8), e_gram(8)]);
    let lat = IntegralLattice::from_i64(format!("Sigma{n}"), &g)?;
    if lat.signature() != (2, 18) {
        return Err(CensusError::Sigma(n, format!("signature {:?}", lat.signature())));
    }
    let disc = lat.discriminant_form()?;
    if !disc.is_isomorphic(&sigma_form(n).expect("n checked")) {
        return Err(CensusError::Sigma(n, "discriminant form mismatch".into()));
    }
    Ok(lat)
}

/// T_n inside U³ ⊕ E₈² via C = e₁ + n f₁, E = 3 f₁ + e₂, with its complement.
pub fn sigma_as_complement(n: u8) -> Result<(LatticeEmbedding, IntegralLattice), CensusError> {
    if !(1..=3).contains(&n) {
        return Err(CensusError::BadN(n));
    }
    let k = n as i64;
    let tn = IntegralLattice::from_i64(format!("T({n})"), &[vec![2 * k, 3], vec![3, 0]])?;
    let k3 = IntegralLattice::from_i64("K3", &k3_gram())?;
    let mut c = vec![0i64; 22];
    c[0] = 1;
    c[1] = k;
    let mut e = vec![0i64; 22];
    e[1] = 3;
    e[2] = 1;
    let emb = LatticeEmbedding::from_i64(tn, k3, &[c, e])?;
    let (comp, _) = emb.orthogonal_complement();
    Ok((emb, comp))
}

/// Genus of J^⊥/J: rank 16, negative definite, with a given discriminant form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenusTarget {
    pub rank: usize,
    pub signature: (usize, usize),
    pub disc: FiniteQuadraticForm,
}

impl GenusTarget {
    /// G(n,e): disc form A_{Σ_n} for e = 1, trivial for e = 3.
    pub fn for_case(n: u8, e: u64) -> Option<GenusTarget> {
        let disc = match e {
            1 => sigma_form(n)?,
            3 => FiniteQuadraticForm::trivial(),
            _ => return None,
        };
        Some(GenusTarget { rank: 16, signature: (0, 16), disc })
    }
}

pub fn verify_genus_membership(lat: &IntegralLattice, target: &GenusTarget) -> Result<bool, LatticeError> {
    if lat.rank() != target.rank || lat.signature() != target.signature || !lat.is_even() {
        return Ok(false);
    }
    Ok(lat.discriminant_form()?.is_isomorphic(&target.disc))
}

/// Embedding source and Niemeier targets for each (n, e).
pub fn census_source(n: u8, e: u64) -> Option<(IntegralLattice, Vec<&'static str>)> {
    let lat = |g: Vec<Vec<i64>>, name: &str| IntegralLattice::from_i64(name, &g).ok();
    match (n, e) {
        (_, 3) => Some((lat(e_gram(8), "E8")?, vec!["E8^3", "D16E8"])),
        (1, 1) => Some((
            lat(crate::lattice::catalog::a_gram(8), "A8")?,
            vec!["D16E8", "D10E7^2", "A17E7", "D24", "D12^2", "D9A15", "A9^2D6", "D7E6A11", "A8^3", "A12^2", "A24"],
        )),
        (2, 1) => Some((lat(l8_gram(), "L8")?, L8_TARGETS.to_vec())),
        (3, 1) => Some((
            lat(block_sum(&[e_gram(6), crate::lattice::catalog::a_gram(2)]), "E6+A2")?,
            vec!["E8^3", "D16E8", "D10E7^2", "A17E7", "E6^4", "D7E6A11"],
        )),
        _ => None,
    }
}

/// Root systems of the classes listed in the reference classification for each (n, e).
pub fn reference_root_systems(n: u8, e: u64) -> Vec<&'static str> {
    match (n, e) {
        (_, 3) => vec!["E8^2", "D16"],
        (1, 1) => vec![
            "E8+D7", "E7^2+A1", "E7+A8", "D15", "D12+A3", "D9+A6", "A15", "A9+D6", "E6+D7+A2", "A8^2", "A12+A3", "A15",
        ],
        (2, 1) => vec!["E8+E7", "D14+A1", "E8+A8", "D11+A4", "E7+E6+A2", "A13+A1^2", "D7^2", "D8+A6", "D5+A10"],
        (3, 1) => vec!["E8+E6+A2", "D13+A2", "D10+A5", "E7+D7", "A14", "E6^2+A2^2", "D4+A11", "D7+A8"],
        _ => vec![],
    }
}

pub const EXPECTED_CURVES: [usize; 3] = [14, 11, 10];
pub const EXPECTED_POINTS: u64 = 2;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TypeIIClass {
    pub e: u64,
    pub target: String,
    pub root_system: RootSystem,
    pub invariants: InvariantTuple,
    pub disc: serde_json::Value,
    pub in_genus: bool,
    pub complement_gram: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormalFormCheck {
    pub e: u64,
    pub t: u64,
    pub plane: Vec<Vec<String>>,
    pub in_genus: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundaryCensus {
    pub n: u8,
    pub type_ii: Vec<TypeIIClass>,
    pub type_iii: u64,
    pub type_iii_detail: IsotropicCensus,
    pub per_target: Vec<TargetSummary>,
    pub normal_form_checks: Vec<NormalFormCheck>,
    /// Root-system multiset differences against the reference lists (empty when they agree).
    pub discrepancies: Vec<String>,
    pub matches_reference: bool,
}

impl BoundaryCensus {
    pub fn curves(&self) -> usize {
        self.type_ii.len()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TargetSummary {
    pub e: u64,
    pub source: String,
    pub target: String,
    pub weyl_classes: usize,
    pub non_primitive: usize,
    pub classes: usize,
    pub nodes: u64,
    pub pool_sizes: Vec<(i64, usize)>,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub limits: Limits,
    pub entries: Vec<CatalogEntry>,
    /// Search every catalog Niemeier lattice instead of the designated targets.
    pub all_targets: bool,
    pub normal_form_bound: i64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            limits: Limits::default(),
            entries: crate::lattice::catalog::builtin_entries(),
            all_targets: false,
            normal_form_bound: 1,
        }
    }
}

/// Search one (source, targets) case and collect classes of distinct invariant tuples.
pub fn classify_source(
    source: &IntegralLattice,
    targets: &[&str],
    opts: &CensusOptions,
) -> Result<Vec<TargetResult>, LatticeError> {
    let norms: Vec<i64> = {
        let g = source.gram_i64()?;
        let mut v: Vec<i64> = (0..g.len()).map(|i| g[i][i]).collect();
        v.sort();
        v.dedup();
        v
    };
    targets
        .par_iter()
        .map(|name| {
            opts.limits.check(name)?;
            let lat = catalog_in(&format!("M({name})"), &opts.entries)?;
            let t = PreparedTarget::new(lat, &norms)?;
            classify_target(source, &t, opts.limits)
        })
        .collect()
}

pub fn census_type_ii(n: u8, opts: &CensusOptions) -> Result<(Vec<TypeIIClass>, Vec<TargetSummary>), CensusError> {
    if !(1..=3).contains(&n) {
        return Err(CensusError::BadN(n));
    }
    let mut classes: Vec<TypeIIClass> = Vec::new();
    let mut summaries = Vec::new();
    let all: Vec<&str> = crate::lattice::catalog::NIEMEIER.iter().map(|x| x.0).collect();
    for e in [1u64, 3] {
        let (source, targets) = census_source(n, e).expect("known case");
        let targets = if opts.all_targets { all.clone() } else { targets };
        let genus = GenusTarget::for_case(n, e).expect("known case");
        let results = classify_source(&source, &targets, opts)?;
        for r in &results {
            summaries.push(TargetSummary {
                e,
                source: source.name.clone(),
                target: r.target.clone(),
                weyl_classes: r.weyl_classes,
                non_primitive: r.non_primitive,
                classes: r.classes.len(),
                nodes: r.stats.nodes,
                pool_sizes: r.stats.pool_sizes.clone(),
                seconds: r.seconds,
            });
            for c in &r.classes {
                if classes.iter().any(|x| x.e == e && x.invariants == c.invariants) {
                    continue;
                }
                let comp = IntegralLattice::from_i64("complement", &c.complement_gram)?;
                let disc = comp.discriminant_form()?;
                classes.push(TypeIIClass {
                    e,
                    target: r.target.clone(),
                    root_system: c.invariants.root_system.clone(),
                    invariants: c.invariants.clone(),
                    disc: disc.to_json(),
                    in_genus: verify_genus_membership(&comp, &genus)?,
                    complement_gram: c.complement_gram.clone(),
                });
            }
        }
    }
    Ok((classes, summaries))
}

/// Root-system multiset comparison: entries only in the computed list (+) or only in the reference (-).
pub fn compare_root_systems(computed: &[RootSystem], reference: &[&str]) -> Vec<String> {
    let mut left: Vec<RootSystem> = computed.to_vec();
    let mut out = Vec::new();
    for p in reference {
        let rs = RootSystem::parse(p).expect("reference label parses");
        match left.iter().position(|x| *x == rs) {
            Some(i) => {
                left.remove(i);
            }
            None => out.push(format!("-{rs}")),
        }
    }
    out.extend(left.iter().map(|x| format!("+{x}")));
    out
}

pub fn census_type_iii(n: u8) -> Result<IsotropicCensus, CensusError> {
    let f = sigma_form(n).ok_or(CensusError::BadN(n))?;
    Ok(isotropic_census(&f))
}

/// Normal forms of sample isotropic planes ⟨e₃, x⟩ of Σ_n, one per value of e.
pub fn normal_form_checks(n: u8, bound: i64) -> Result<Vec<NormalFormCheck>, CensusError> {
    let sigma = build_sigma(n)?;
    let mut v = vec![0i64; 20];
    v[2] = 1;
    let ranges: Vec<(usize, i64)> = [(0, bound + 1), (1, bound + 1)].into_iter().chain((4..12).map(|i| (i, bound))).collect();
    let planes = find_isotropic_planes(&sigma, &v, &ranges)?;
    let mut out = Vec::new();
    for (e, j) in planes {
        let nf = isotropic_normal_form(&sigma, &j)?;
        let b = nf.b_lattice("J^perp/J")?;
        let genus = GenusTarget::for_case(n, e).ok_or_else(|| CensusError::Sigma(n, format!("unexpected e = {e}")))?;
        out.push(NormalFormCheck {
            e,
            t: nf.t,
            plane: j.iter().map(|r| r.iter().map(BigInt::to_string).collect()).collect(),
            in_genus: verify_genus_membership(&b, &genus)?,
        });
    }
    Ok(out)
}

pub fn census(n: u8, opts: &CensusOptions) -> Result<BoundaryCensus, CensusError> {
    let (type_ii, per_target) = census_type_ii(n, opts)?;
    let detail = census_type_iii(n)?;
    let mut discrepancies = Vec::new();
    for e in [1u64, 3] {
        let rs: Vec<RootSystem> = type_ii.iter().filter(|c| c.e == e).map(|c| c.root_system.clone()).collect();
        for d in compare_root_systems(&rs, &reference_root_systems(n, e)) {
            discrepancies.push(format!("e={e}: {d}"));
        }
    }
    let normal_form_checks = normal_form_checks(n, opts.normal_form_bound)?;
    let matches_reference = discrepancies.is_empty()
        && type_ii.len() == EXPECTED_CURVES[n as usize - 1]
        && detail.oq_orbits == EXPECTED_POINTS
        && type_ii.iter().all(|c| c.in_genus)
        && normal_form_checks.iter().all(|c| c.in_genus);
    Ok(BoundaryCensus {
        n,
        type_ii,
        type_iii: detail.oq_orbits,
        type_iii_detail: detail,
        per_target,
        normal_form_checks,
        discrepancies,
        matches_reference,
    })
}

/// Readings of the rank-20 lattice spanned by C, E, e₁..e₁₈ with e_i·e_j = sign·δ_ij.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NLatticeReading {
    pub sign: i64,
    pub det: String,
    pub signature: (usize, usize),
    pub disc_invariants: Vec<u64>,
}

pub fn n_lattice_readings() -> Result<Vec<NLatticeReading>, LatticeError> {
    let mut out = Vec::new();
    for sign in [1i64, -1] {
        let mut g = vec![vec![0i64; 20]; 20];
        g[0][0] = 2;
        g[0][1] = 3;
        g[1][0] = 3;
        for i in 2..20 {
            g[0][i] = 2;
            g[i][0] = 2;
            g[1][i] = 1;
            g[i][1] = 1;
            g[i][i] = sign;
        }
        let lat = IntegralLattice::from_i64(format!("N({sign})"), &g)?;
        let snf = crate::linalg::smith_normal_form(&lat.gram);
        let inv = snf
            .divisors()
            .iter()
            .map(|d| num_traits::Signed::abs(d))
            .filter(|d| *d != BigInt::from(1))
            .map(|d| num_traits::ToPrimitive::to_u64(&d).unwrap_or(0))
            .collect();
        out.push(NLatticeReading { sign, det: lat.det().to_string(), signature: lat.signature(), disc_invariants: inv });
    }
    Ok(out)
}

/// Wall-clock helper for reports.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed().as_secs_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_lattices() {
        for n in 1..=3 {
            let s = build_sigma(n).unwrap();
            let (emb, comp) = sigma_as_complement(n).unwrap();
            assert!(emb.is_primitive());
            assert_eq!(comp.signature(), (2, 18));
            assert!(comp.discriminant_form().unwrap().is_isomorphic(&s.discriminant_form().unwrap()));
        }
        assert!(build_sigma(4).is_err());
    }

    #[test]
    fn type_iii_counts() {
        for n in 1..=3 {
            assert_eq!(census_type_iii(n).unwrap().oq_orbits, 2);
        }
        assert_eq!(isotropic_census(&FiniteQuadraticForm::trivial()).oq_orbits, 1);
    }

    #[test]
    fn genus_targets() {
        let e8 = IntegralLattice::from_i64("E8", &e_gram(8)).unwrap();
        let e82 = IntegralLattice::direct_sum(&[&e8, &e8], "E8^2");
        let g3 = GenusTarget::for_case(1, 3).unwrap();
        assert!(verify_genus_membership(&e82, &g3).unwrap());
        let d8 = IntegralLattice::from_i64("D8", &crate::lattice::catalog::d_gram(8)).unwrap();
        let e8d8 = IntegralLattice::direct_sum(&[&e8, &d8], "E8+D8");
        assert!(!verify_genus_membership(&e8d8, &g3).unwrap());
    }

    #[test]
    fn normal_forms_on_sigma() {
        for n in 1..=3 {
            let checks = normal_form_checks(n, 1).unwrap();
            let es: Vec<u64> = checks.iter().map(|c| c.e).collect();
            assert_eq!(es, vec![1, 3], "n={n}");
            assert!(checks.iter().all(|c| c.in_genus));
            assert_eq!(checks[0].t, 0);
        }
    }

    #[test]
    fn root_system_comparison() {
        let rs = vec![RootSystem::parse("E8+E7").unwrap(), RootSystem::parse("D8+A7").unwrap()];
        let d = compare_root_systems(&rs, &["E7+E8", "D8+A6"]);
        assert_eq!(d, vec!["-D8+A6".to_string(), "+D8+A7".to_string()]);
    }

    #[test]
    fn n_lattice_has_no_27_reading() {
        let r = n_lattice_readings().unwrap();
        assert_eq!(r[0].disc_invariants, vec![171]);
        assert_eq!(r[1].disc_invariants, vec![189]);
        assert_eq!(r[1].signature, (1, 19));
    }
}
