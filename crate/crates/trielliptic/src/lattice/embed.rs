//! Embedding search into definite lattices up to the Weyl group, and complement invariants.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    dot, gram_times, root_glue_invariant, root_system_of, short_vectors_gram, theta_counts, IntegralLattice,
    LatticeEmbedding, LatticeError, RootSystem,
};
use crate::qform::{CanonicalForm, FiniteQuadraticForm};

/// Vectors of one norm with a lookup index.
#[derive(Clone, Debug)]
pub struct Pool {
    pub norm: i64,
    pub vecs: Vec<Vec<i64>>,
    pub gv: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl Pool {
    fn new(g: &[Vec<i64>], norm: i64) -> Self {
        let vecs = short_vectors_gram(g, norm);
        let gv = vecs.iter().map(|v| gram_times(g, v)).collect();
        let index = vecs.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Pool { norm, vecs, gv, index }
    }
}

/// Negative definite target with cached vector pools.
#[derive(Clone, Debug)]
pub struct PreparedTarget {
    pub lattice: IntegralLattice,
    pub g: Vec<Vec<i64>>,
    pub pools: BTreeMap<i64, Pool>,
}

impl PreparedTarget {
    pub fn new(lattice: IntegralLattice, norms: &[i64]) -> Result<Self, LatticeError> {
        if !lattice.is_negative_definite() {
            return Err(LatticeError::NotDefinite(lattice.signature()));
        }
        let g = lattice.gram_i64()?;
        let mut all: Vec<i64> = norms.to_vec();
        all.push(-2);
        all.sort();
        all.dedup();
        let pools = all.par_iter().map(|&n| (n, Pool::new(&g, n))).collect();
        Ok(PreparedTarget { lattice, g, pools })
    }

    pub fn roots(&self) -> &Pool {
        &self.pools[&-2]
    }
}

/// Search limits: a node budget and an optional wall-clock deadline.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_nodes: u64,
    pub deadline: Option<Instant>,
}

impl Limits {
    pub fn nodes(max_nodes: u64) -> Self {
        Limits { max_nodes, deadline: None }
    }
}

impl Limits {
    /// Error out if the wall-clock deadline has passed.
    pub fn check(&self, stage: &str) -> Result<(), LatticeError> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(LatticeError::Inconclusive(format!("time budget exceeded in {stage}"))),
            _ => Ok(()),
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::nodes(10_000_000)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    /// Size of each vector pool searched (norm, count).
    pub pool_sizes: Vec<(i64, usize)>,
    /// Orbit representatives tried at each depth.
    pub reps_per_depth: Vec<u64>,
    pub budget: u64,
}

/// Source basis order: roots first, each next vector maximally linked to the chosen ones.
fn search_order(src: &[Vec<i64>]) -> Vec<usize> {
    let n = src.len();
    let mut order = Vec::new();
    let mut used = vec![false; n];
    while order.len() < n {
        let best = (0..n)
            .filter(|&i| !used[i])
            .max_by_key(|&i| {
                let links = order.iter().filter(|&&j| src[i][j] != 0).count();
                let deg = (0..n).filter(|&j| j != i && src[i][j] != 0).count();
                (src[i][i] == -2, links, deg, std::cmp::Reverse(i))
            })
            .unwrap();
        used[best] = true;
        order.push(best);
    }
    order
}

struct Search<'a> {
    src: &'a [Vec<i64>],
    order: Vec<usize>,
    target: &'a PreparedTarget,
    deadline: Option<Instant>,
    chosen: Vec<(Vec<i64>, Vec<i64>)>,
    found: Vec<Vec<Vec<i64>>>,
    stats: SearchStats,
}

impl Search<'_> {
    fn rec(&mut self, depth: usize) -> Result<(), LatticeError> {
        let n = self.src.len();
        if depth == n {
            let mut imgs = vec![Vec::new(); n];
            for (d, &k) in self.order.iter().enumerate() {
                imgs[k] = self.chosen[d].0.clone();
            }
            self.found.push(imgs);
            return Ok(());
        }
        let k = self.order[depth];
        let pool = self
            .target
            .pools
            .get(&self.src[k][k])
            .ok_or_else(|| LatticeError::Invalid(format!("no vector pool for norm {}", self.src[k][k])))?;
        let want: Vec<i64> = self.order[..depth].iter().map(|&j| self.src[k][j]).collect();
        let cands: Vec<usize> = (0..pool.vecs.len())
            .filter(|&i| self.chosen.iter().zip(&want).all(|((_, gc), w)| dot(&pool.vecs[i], gc) == *w))
            .collect();
        let reps = self.orbit_reps(pool, &cands);
        self.stats.reps_per_depth[depth] += reps.len() as u64;
        for r in reps {
            self.stats.nodes += 1;
            if self.stats.nodes > self.stats.budget {
                return Err(LatticeError::Inconclusive(format!(
                    "node budget {} exceeded in {}",
                    self.stats.budget, self.target.lattice.name
                )));
            }
            if self.stats.nodes % 256 == 0 && self.deadline.is_some_and(|d| Instant::now() > d) {
                return Err(LatticeError::Inconclusive(format!("time budget exceeded in {}", self.target.lattice.name)));
            }
            self.chosen.push((pool.vecs[r].clone(), pool.gv[r].clone()));
            self.rec(depth + 1)?;
            self.chosen.pop();
        }
        Ok(())
    }

    /// Orbit representatives under reflections in roots orthogonal to the chosen vectors.
    fn orbit_reps(&self, pool: &Pool, cands: &[usize]) -> Vec<usize> {
        let roots = self.target.roots();
        let gens: Vec<usize> = (0..roots.vecs.len())
            .filter(|&i| roots.vecs[i].iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
            .filter(|&i| self.chosen.iter().all(|(_, gc)| dot(&roots.vecs[i], gc) == 0))
            .collect();
        let mut comp: HashMap<usize, usize> = HashMap::with_capacity(cands.len());
        let mut reps = Vec::new();
        for &s in cands {
            if comp.contains_key(&s) {
                continue;
            }
            comp.insert(s, s);
            reps.push(s);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                let xv = &pool.vecs[x];
                for &r in &gens {
                    let c = dot(xv, &roots.gv[r]);
                    if c == 0 {
                        continue;
                    }
                    let y: Vec<i64> = xv.iter().zip(&roots.vecs[r]).map(|(a, b)| a + c * b).collect();
                    let yi = pool.index[&y];
                    if let std::collections::hash_map::Entry::Vacant(e) = comp.entry(yi) {
                        e.insert(s);
                        stack.push(yi);
                    }
                }
            }
        }
        reps
    }
}

/// All embeddings of `source` into the target, up to the Weyl group of the target's roots.
///
/// Exhaustive: every candidate of the right norm and pairings is examined.
pub fn embed_search(
    source: &IntegralLattice,
    target: &PreparedTarget,
    limits: Limits,
) -> Result<(Vec<Vec<Vec<i64>>>, SearchStats), LatticeError> {
    let src = source.gram_i64()?;
    let n = src.len();
    let mut s = Search {
        src: &src,
        order: search_order(&src),
        target,
        deadline: limits.deadline,
        chosen: Vec::new(),
        found: Vec::new(),
        stats: SearchStats {
            nodes: 0,
            pool_sizes: target.pools.values().map(|p| (p.norm, p.vecs.len())).collect(),
            reps_per_depth: vec![0; n],
            budget: limits.max_nodes,
        },
    };
    s.rec(0)?;
    Ok((s.found, s.stats))
}

/// Isomorphism surrogate for a definite lattice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InvariantTuple {
    pub rank: usize,
    pub disc: CanonicalForm,
    pub root_system: RootSystem,
    /// Number of vectors of norm -2, -4, -6, -8.
    pub theta: Vec<u64>,
    /// (index of R ⊕ R^⊥ in L, |det R^⊥|) for the root sublattice R.
    pub root_glue: (u64, u64),
}

pub const THETA_DEPTH: usize = 4;

pub fn invariant_tuple(lat: &IntegralLattice) -> Result<(InvariantTuple, FiniteQuadraticForm), LatticeError> {
    let lat = pair_reduced(lat)?;
    let g = lat.gram_i64()?;
    let roots = short_vectors_gram(&g, -2);
    let rs = root_system_of(&g, &roots)?;
    let disc = lat.discriminant_form()?;
    let theta = theta_counts(&lat, THETA_DEPTH)?;
    let root_glue = root_glue_invariant(&lat, &roots)?;
    Ok((
        InvariantTuple { rank: lat.rank(), disc: disc.canonical_data(), root_system: rs, theta, root_glue },
        disc,
    ))
}

/// Pairwise size reduction of a definite basis (not LLL): |2 b_i·b_j| ≤ |b_j·b_j|.
pub fn pair_reduced(lat: &IntegralLattice) -> Result<IntegralLattice, LatticeError> {
    let mut g = lat.gram_i64()?;
    let n = g.len();
    let mut changed = true;
    let mut rounds = 0;
    while changed && rounds < 1000 {
        changed = false;
        rounds += 1;
        for i in 0..n {
            for j in 0..n {
                if i == j || g[j][j] == 0 {
                    continue;
                }
                let q = (g[i][j] as f64 / g[j][j] as f64).round() as i64;
                if q == 0 || 2 * g[i][j].abs() <= g[j][j].abs() {
                    continue;
                }
                // b_i -= q b_j
                let diag = g[i][i] - 2 * q * g[i][j] + q * q * g[j][j];
                for k in 0..n {
                    g[i][k] -= q * g[j][k];
                }
                g[i][i] = diag;
                for k in 0..n {
                    g[k][i] = g[i][k];
                }
                changed = true;
            }
        }
    }
    IntegralLattice::from_i64(lat.name.clone(), &g)
}

/// One embedding with its complement data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmbeddingClass {
    pub target: String,
    pub primitive: bool,
    pub images: Vec<Vec<i64>>,
    pub complement_gram: Vec<Vec<i64>>,
    pub invariants: InvariantTuple,
    /// Raw embeddings (Weyl classes) that produced this invariant tuple.
    pub multiplicity: usize,
}

/// Complement of a (checked) embedding and its invariant tuple.
pub fn classify_complement(emb: &LatticeEmbedding) -> Result<(IntegralLattice, InvariantTuple, FiniteQuadraticForm), LatticeError> {
    let (comp, _) = emb.orthogonal_complement();
    if !comp.is_negative_definite() {
        return Err(LatticeError::NotDefinite(comp.signature()));
    }
    let (t, d) = invariant_tuple(&comp)?;
    Ok((comp, t, d))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TargetResult {
    pub target: String,
    pub stats: SearchStats,
    pub weyl_classes: usize,
    pub non_primitive: usize,
    pub classes: Vec<EmbeddingClass>,
    pub seconds: f64,
}

/// Search one target and collect distinct complement classes of primitive embeddings.
pub fn classify_target(source: &IntegralLattice, target: &PreparedTarget, limits: Limits) -> Result<TargetResult, LatticeError> {
    let start = Instant::now();
    limits.check(&target.lattice.name)?;
    let (found, stats) = embed_search(source, target, limits)?;
    let mut non_primitive = 0;
    let results: Vec<Result<Option<EmbeddingClass>, LatticeError>> = found
        .par_iter()
        .map(|imgs| {
            let emb = LatticeEmbedding::from_i64(source.clone(), target.lattice.clone(), imgs)?;
            if !emb.is_primitive() {
                return Ok(None);
            }
            let (comp, inv, _) = classify_complement(&emb)?;
            Ok(Some(EmbeddingClass {
                target: target.lattice.name.clone(),
                primitive: true,
                images: imgs.clone(),
                complement_gram: comp.gram_i64()?,
                invariants: inv,
                multiplicity: 1,
            }))
        })
        .collect();
    let mut classes: Vec<EmbeddingClass> = Vec::new();
    for r in results {
        match r? {
            None => non_primitive += 1,
            Some(c) => match classes.iter_mut().find(|x| x.invariants == c.invariants) {
                Some(x) => x.multiplicity += 1,
                None => classes.push(c),
            },
        }
    }
    limits.check(&target.lattice.name)?;
    Ok(TargetResult {
        target: target.lattice.name.clone(),
        weyl_classes: found.len(),
        stats,
        non_primitive,
        classes,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Distinct complement classes across several targets, in first-seen order.
pub fn distinct_classes(results: &[TargetResult]) -> Vec<&EmbeddingClass> {
    let mut out: Vec<&EmbeddingClass> = Vec::new();
    for r in results {
        for c in &r.classes {
            if !out.iter().any(|x| x.invariants == c.invariants) {
                out.push(c);
            }
        }
    }
    out
}

pub fn big_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn small_rows(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i64>>> {
    rows.iter().map(|r| r.iter().map(|x| x.to_i64()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::super::catalog::catalog;
    use super::super::RootType;
    use super::*;

    #[test]
    fn a1_into_e8_gives_e7() {
        let e8 = PreparedTarget::new(catalog("E8").unwrap(), &[]).unwrap();
        assert_eq!(e8.roots().vecs.len(), 240);
        let a1 = catalog("A1").unwrap();
        let r = classify_target(&a1, &e8, Limits::nodes(1000)).unwrap();
        assert_eq!(r.weyl_classes, 1);
        assert_eq!(r.classes.len(), 1);
        assert_eq!(r.classes[0].invariants.root_system, RootSystem(vec![RootType::E(7)]));
        assert_eq!(r.classes[0].invariants.theta[0], 126);
    }

    #[test]
    fn a2_into_e6_complement() {
        let e6 = PreparedTarget::new(catalog("E6").unwrap(), &[]).unwrap();
        let r = classify_target(&catalog("A2").unwrap(), &e6, Limits::nodes(1000)).unwrap();
        let rs: Vec<String> = r.classes.iter().map(|c| c.invariants.root_system.to_string()).collect();
        assert_eq!(rs, vec!["A2^2".to_string()]);
    }

    #[test]
    fn budget_is_reported() {
        let e8 = PreparedTarget::new(catalog("E8").unwrap(), &[]).unwrap();
        let err = embed_search(&catalog("A4").unwrap(), &e8, Limits::nodes(2)).unwrap_err();
        assert!(matches!(err, LatticeError::Inconclusive(_)));
    }

    #[test]
    fn reduction_preserves_det() {
        let l = IntegralLattice::from_i64("x", &[vec![-2, 5], vec![5, -14]]).unwrap();
        let r = pair_reduced(&l).unwrap();
        assert_eq!(r.det(), l.det());
        assert!(r.gram_i64().unwrap()[0][1].abs() * 2 <= 2);
    }
}
