//! Brute-force orbit checks for dual vectors of root lattices.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::catalog::root_gram;
use super::{fincke_pohst, RootType};
use crate::linalg::{IntMatrix, Rat};

/// Permutations of the nodes preserving the Gram matrix.
pub fn diagram_automorphisms(g: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = g.len();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(k: usize, g: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = g.len();
        if k == n {
            out.push(perm.clone());
            return;
        }
        for t in 0..n {
            if used[t] || g[t][t] != g[k][k] {
                continue;
            }
            if (0..k).any(|j| g[perm[j]][t] != g[j][k]) {
                continue;
            }
            perm[k] = t;
            used[t] = true;
            rec(k + 1, g, perm, used, out);
            used[t] = false;
        }
        perm[k] = usize::MAX;
    }
    rec(0, g, &mut perm, &mut used, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCheck {
    pub lattice: String,
    pub vector: String,
    pub norm: String,
    /// Number of dual vectors of that norm (in the coset if restricted).
    pub candidates: usize,
    pub orbit_size: usize,
    pub holds: bool,
}

/// Vectors are stored in dual-basis coordinates y (x = Σ y_i v_i*), so x·v_j = y_j.
fn orbit(g: &[Vec<i64>], start: Vec<i64>, autos: &[Vec<usize>]) -> HashSet<Vec<i64>> {
    let n = g.len();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(y) = queue.pop_front() {
        let mut next = Vec::new();
        for j in 0..n {
            if y[j] != 0 {
                // s_j(x) = x + (x·v_j) v_j and v_j = Σ_i g_ji v_i*
                next.push((0..n).map(|i| y[i] + y[j] * g[j][i]).collect::<Vec<_>>());
            }
        }
        for p in autos {
            let mut z = vec![0; n];
            for i in 0..n {
                z[p[i]] = y[i];
            }
            next.push(z);
        }
        for z in next {
            if seen.insert(z.clone()) {
                queue.push_back(z);
            }
        }
    }
    seen
}

/// All dual vectors (dual coordinates) whose norm equals the norm of `v`, optionally within v + L.
fn same_norm_duals(g: &[Vec<i64>], v: &[i64], coset_only: bool) -> (Vec<Vec<i64>>, Rat) {
    let n = g.len();
    let inv = IntMatrix::from_i64(g).to_rat().inverse().expect("nondegenerate");
    let den = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .fold(BigInt::one(), |acc, (i, j)| acc.lcm(inv.get(i, j).denom()));
    let scaled: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| -(inv.get(i, j) * Rat::from_integer(den.clone())).to_integer().to_i64().unwrap()).collect())
        .collect();
    let vn: i64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| v[i] * scaled[i][j] * v[j]).sum();
    let norm = -Rat::new(BigInt::from(vn), den);
    let mut out = Vec::new();
    fincke_pohst(&scaled, vn, |y, e| {
        if e != vn {
            return;
        }
        if coset_only {
            // y - v must lie in the image of L: G^{-1}(y - v) integral
            let d: Vec<Rat> = y.iter().zip(v).map(|(a, b)| Rat::from_integer(BigInt::from(a - b))).collect();
            if !inv.mul_vec(&d).iter().all(|x| x.is_integer()) {
                return;
            }
        }
        out.push(y.to_vec());
    });
    (out, norm)
}

fn check(t: RootType, k: usize, coset_only: bool, label: &str) -> OrbitCheck {
    let g = root_gram(t);
    let n = g.len();
    let mut v = vec![0i64; n];
    v[k] = 1;
    let (cands, norm) = same_norm_duals(&g, &v, coset_only);
    let autos = diagram_automorphisms(&g);
    let orb = orbit(&g, v, &autos);
    let cand_set: BTreeSet<Vec<i64>> = cands.into_iter().collect();
    let holds = cand_set.iter().all(|c| orb.contains(c));
    OrbitCheck {
        lattice: t.to_string(),
        vector: label.to_string(),
        norm: crate::poly::rat_str(&norm),
        candidates: cand_set.len(),
        orbit_size: orb.len(),
        holds,
    }
}

/// Every x in D_n* with x² = δ_n² lies in the O(D_n)-orbit of δ_n.
pub fn eichler_orbit_check(n: usize) -> OrbitCheck {
    check(RootType::D(n), n - 1, false, &format!("delta{n}"))
}

/// Coset-restricted variant for (E6, ε6), (E7, ε7), (A_n, α_n).
pub fn coset_orbit_check(t: RootType) -> OrbitCheck {
    let (k, label) = match t {
        RootType::E(6) => (5, "eps6".to_string()),
        RootType::E(7) => (6, "eps7".to_string()),
        RootType::A(n) => (n - 1, format!("alpha{n}")),
        RootType::D(n) => (n - 1, format!("delta{n}")),
        _ => panic!("no orbit check for {t}"),
    };
    check(t, k, true, &label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagram_symmetries() {
        assert_eq!(diagram_automorphisms(&root_gram(RootType::D(4))).len(), 6);
        assert_eq!(diagram_automorphisms(&root_gram(RootType::D(6))).len(), 2);
        assert_eq!(diagram_automorphisms(&root_gram(RootType::E(8))).len(), 1);
        assert_eq!(diagram_automorphisms(&root_gram(RootType::A(5))).len(), 2);
    }

    #[test]
    fn eichler_small() {
        let c4 = eichler_orbit_check(4);
        assert!(c4.holds);
        assert_eq!(c4.candidates, 24);
        let c6 = eichler_orbit_check(6);
        assert!(c6.holds);
        assert_eq!(c6.candidates, 12);
        assert_eq!(c6.norm, "-1");
    }

    #[test]
    fn minuscule_cosets() {
        let e6 = coset_orbit_check(RootType::E(6));
        assert!(e6.holds);
        assert_eq!((e6.candidates, e6.norm.as_str()), (27, "-4/3"));
        let e7 = coset_orbit_check(RootType::E(7));
        assert!(e7.holds);
        assert_eq!(e7.candidates, 56);
        assert_eq!(coset_orbit_check(RootType::A(11)).candidates, 12);
    }
}
