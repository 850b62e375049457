//! Normal form of a lattice of signature (2,k) along a primitive isotropic plane J.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{IntegralLattice, LatticeError};
use crate::linalg::{is_primitive, smith_normal_form, IntMatrix, Rat};

type Row = Vec<BigInt>;

fn pair(g: &IntMatrix, x: &[BigInt], y: &[BigInt]) -> BigInt {
    let gy = g.mul_vec(y);
    x.iter().zip(&gy).map(|(a, b)| a * b).sum()
}

fn axpy(y: &mut [BigInt], a: &BigInt, x: &[BigInt]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Extend primitive rows `s` to a basis of ℤ^n, keeping `s` first.
pub fn extend_to_basis(s: &[Row], n: usize) -> Result<Vec<Row>, LatticeError> {
    if s.is_empty() {
        return Ok(IntMatrix::identity(n).to_rows());
    }
    if !is_primitive(s, n) {
        return Err(LatticeError::Invalid("rows do not span a primitive sublattice".into()));
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(s, n));
    let vinv = snf.v.to_rat().inverse().and_then(|m| m.to_int()).expect("unimodular");
    let mut out: Vec<Row> = s.to_vec();
    out.extend((s.len()..n).map(|i| vinv.row(i)));
    Ok(out)
}

/// |H_J|: the index of J in (J ⊗ ℚ) ∩ L*, i.e. the product of the elementary divisors of J·G.
pub fn h_j(lat: &IntegralLattice, j: &[Row]) -> Result<u64, LatticeError> {
    check_plane(lat, j)?;
    let m = IntMatrix::from_rows(j, lat.rank()).mul(&lat.gram);
    let snf = smith_normal_form(&m);
    let d = snf.divisors();
    if d.len() != 2 {
        return Err(LatticeError::Invalid("J·G has rank < 2".into()));
    }
    let e = (&d[0] * &d[1]).abs();
    let a = lat.det().abs();
    if !(&a % (&e * &e)).is_zero() {
        return Err(LatticeError::Invalid(format!("e² = {} does not divide |A_L| = {a}", &e * &e)));
    }
    e.to_u64().ok_or(LatticeError::Overflow)
}

fn check_plane(lat: &IntegralLattice, j: &[Row]) -> Result<(), LatticeError> {
    if j.len() != 2 || j.iter().any(|r| r.len() != lat.rank()) {
        return Err(LatticeError::Invalid("J must be given by two vectors of the lattice".into()));
    }
    for a in j {
        for b in j {
            if !pair(&lat.gram, a, b).is_zero() {
                return Err(LatticeError::Invalid("J is not isotropic".into()));
            }
        }
    }
    if !is_primitive(j, lat.rank()) {
        return Err(LatticeError::Invalid("J is not primitive".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormalForm {
    pub e: u64,
    pub t: u64,
    /// Gram of J^⊥/J.
    pub b: IntMatrix,
    /// New basis v_1..v_n as rows in the original coordinates.
    pub basis: IntMatrix,
    /// Gram matrix in the new basis (block form).
    pub gram: IntMatrix,
}

impl NormalForm {
    pub fn b_lattice(&self, name: impl Into<String>) -> Result<IntegralLattice, LatticeError> {
        IntegralLattice::new(name, self.b.clone())
    }
}

/// Basis v_1..v_n with J = ⟨v_1,v_2⟩, J^⊥ = ⟨v_1..v_{n-2}⟩ and Gram
/// [[0,0,A],[0,B,0],[Aᵗ,0,D]], A = [[0,1],[e,0]], D = diag(2t,0), 0 ≤ t < e.
pub fn isotropic_normal_form(lat: &IntegralLattice, j: &[Row]) -> Result<NormalForm, LatticeError> {
    check_plane(lat, j)?;
    let n = lat.rank();
    let g = &lat.gram;
    let m = n - 4;
    // J^⊥ as an integral kernel, then a basis of it starting with J.
    let perp = lat.orthogonal_basis(j);
    if perp.len() != n - 2 {
        return Err(LatticeError::Invalid("J^⊥ has wrong rank".into()));
    }
    let pm = IntMatrix::from_rows(&perp, n).to_rat();
    let pt = pm.transpose();
    let mut jc = Vec::new();
    for v in j {
        let sol = pt
            .solve(&v.iter().map(|x| Rat::from_integer(x.clone())).collect::<Vec<_>>())
            .ok_or_else(|| LatticeError::Invalid("J not inside J^⊥".into()))?;
        if !sol.iter().all(|x| x.is_integer()) {
            return Err(LatticeError::Invalid("J not integral in J^⊥ basis".into()));
        }
        jc.push(sol.iter().map(|x| x.to_integer()).collect::<Row>());
    }
    let ext = extend_to_basis(&jc, n - 2)?;
    let perp_basis = IntMatrix::from_rows(&ext, n - 2).mul(&IntMatrix::from_rows(&perp, n)).to_rows();
    let full = extend_to_basis(&perp_basis, n)?;
    let mut jv: Vec<Row> = full[0..2].to_vec();
    let mut mid: Vec<Row> = full[2..n - 2].to_vec();
    let mut lv: Vec<Row> = full[n - 2..n].to_vec();

    // A_0 -> [[0,1],[e,0]]
    let a0 = IntMatrix::from_rows(
        &jv.iter().map(|a| lv.iter().map(|b| pair(g, a, b)).collect()).collect::<Vec<Row>>(),
        2,
    );
    let snf = smith_normal_form(&a0);
    let d = snf.divisors();
    if d.len() != 2 || !d[0].abs().is_one() {
        return Err(LatticeError::Invalid(format!("pairing block J × L/J^⊥ has divisors {d:?}")));
    }
    let jn: Vec<Row> = (0..2).map(|r| lin(&snf.u.row(r), &jv)).collect();
    let vt = snf.v.transpose();
    let ln: Vec<Row> = (0..2).map(|r| lin(&vt.row(r), &lv)).collect();
    jv = jn;
    lv = vec![ln[1].clone(), ln[0].clone()];
    // normalize signs so A = [[0,1],[e,0]] with e > 0
    if pair(g, &jv[0], &lv[1]).is_negative() {
        lv[1] = lv[1].iter().map(|x| -x).collect();
    }
    if pair(g, &jv[1], &lv[0]).is_negative() {
        lv[0] = lv[0].iter().map(|x| -x).collect();
    }
    let e = pair(g, &jv[1], &lv[0]);

    // Clear C: mid_i += V_i·J, l_b += Σ Y_ib mid_i, so that C + V A + B Y = 0.
    let bmat = IntMatrix::from_rows(&mid.iter().map(|a| mid.iter().map(|b| pair(g, a, b)).collect()).collect::<Vec<Row>>(), m);
    let c: Vec<Row> = mid.iter().map(|a| lv.iter().map(|b| pair(g, a, b)).collect()).collect();
    // column 0 (pairs with e·j_1): solve B y ≡ -c_0 (mod e)
    let mut y = vec![BigInt::zero(); m];
    if m > 0 && !e.is_one() {
        let det = bmat.det();
        let (gcd, inv) = mod_inverse(&det, &e);
        if !gcd.is_one() {
            return Err(LatticeError::Invalid(format!("gcd(e, det B) = {gcd}")));
        }
        let adj = bmat.to_rat().inverse().expect("B nondegenerate");
        for i in 0..m {
            let mut s = BigInt::zero();
            for k in 0..m {
                let a = (adj.get(i, k) * Rat::from_integer(det.clone())).to_integer();
                s += a * &c[k][0];
            }
            y[i] = (-(s * &inv)).mod_floor(&e);
        }
    }
    let by = bmat.mul_vec(&y);
    for i in 0..m {
        axpy(&mut lv[0], &y[i], &mid[i]);
    }
    for i in 0..m {
        let c0 = &c[i][0] + &by[i];
        if !(&c0 % &e).is_zero() {
            return Err(LatticeError::Invalid("C column 0 not cleared modulo e".into()));
        }
        let v1 = -(c0 / &e);
        let v0 = -c[i][1].clone();
        let (j0, j1) = (jv[0].clone(), jv[1].clone());
        axpy(&mut mid[i], &v0, &j0);
        axpy(&mut mid[i], &v1, &j1);
    }

    // Clear D.
    let d01 = pair(g, &lv[0], &lv[1]);
    let j0 = jv[0].clone();
    axpy(&mut lv[0], &-d01, &j0);
    let d11 = pair(g, &lv[1], &lv[1]);
    let h: BigInt = -(d11 / BigInt::from(2));
    axpy(&mut lv[1], &h, &j0);
    let d00: BigInt = pair(g, &lv[0], &lv[0]) / BigInt::from(2);
    let t = d00.mod_floor(&e);
    let b = (&t - &d00) / &e;
    let j1 = jv[1].clone();
    axpy(&mut lv[0], &b, &j1);

    let mut rows: Vec<Row> = jv.clone();
    rows.extend(mid.iter().cloned());
    rows.extend(lv.iter().cloned());
    let basis = IntMatrix::from_rows(&rows, n);
    if !basis.is_unimodular() {
        return Err(LatticeError::Invalid("normal form basis is not unimodular".into()));
    }
    let gram = basis.mul(g).mul(&basis.transpose());
    let bm = IntMatrix::from_rows(&(2..n - 2).map(|i| (2..n - 2).map(|k| gram.get(i, k).clone()).collect()).collect::<Vec<Row>>(), m);
    let expect = block_form(&e, &t, &bm);
    if gram != expect {
        return Err(LatticeError::Invalid("block form verification failed".into()));
    }
    Ok(NormalForm {
        e: e.to_u64().ok_or(LatticeError::Overflow)?,
        t: t.to_u64().ok_or(LatticeError::Overflow)?,
        b: bm,
        basis,
        gram,
    })
}

fn lin(coeffs: &[BigInt], rows: &[Row]) -> Row {
    let mut out = vec![BigInt::zero(); rows[0].len()];
    for (c, r) in coeffs.iter().zip(rows) {
        axpy(&mut out, c, r);
    }
    out
}

/// (gcd(a, m), a^{-1} mod m when the gcd is 1).
fn mod_inverse(a: &BigInt, m: &BigInt) -> (BigInt, BigInt) {
    let ext = a.mod_floor(m).extended_gcd(m);
    (ext.gcd.clone(), ext.x.mod_floor(m))
}

/// The expected Gram [[0,0,A],[0,B,0],[Aᵗ,0,D]].
pub fn block_form(e: &BigInt, t: &BigInt, b: &IntMatrix) -> IntMatrix {
    let m = b.rows;
    let n = m + 4;
    let mut q = IntMatrix::zeros(n, n);
    for i in 0..m {
        for k in 0..m {
            q.set(i + 2, k + 2, b.get(i, k).clone());
        }
    }
    let (l0, l1) = (n - 2, n - 1);
    for (a, bb, v) in [(0, l1, BigInt::one()), (1, l0, e.clone())] {
        q.set(a, bb, v.clone());
        q.set(bb, a, v);
    }
    q.set(l0, l0, BigInt::from(2) * t);
    q
}

/// Primitive isotropic planes ⟨v, x⟩ with x ⊥ v isotropic, x_i in {-b..b} for each (i, b) in `ranges`
/// and 0 elsewhere. One plane per value of e is kept (first x in enumeration order).
pub fn find_isotropic_planes(
    lat: &IntegralLattice,
    v: &[i64],
    ranges: &[(usize, i64)],
) -> Result<Vec<(u64, Vec<Row>)>, LatticeError> {
    let n = lat.rank();
    let g = lat.gram_i64()?;
    let gv = super::gram_times(&g, v);
    if super::dot(v, &gv) != 0 {
        return Err(LatticeError::Invalid("v is not isotropic".into()));
    }
    let mut out: Vec<(u64, Vec<Row>)> = Vec::new();
    let k = ranges.len();
    let mut digits: Vec<i64> = ranges.iter().map(|r| -r.1).collect();
    loop {
        let mut x = vec![0i64; n];
        for (d, &(i, _)) in digits.iter().zip(ranges) {
            x[i] = *d;
        }
        if x.iter().any(|&a| a != 0) && super::dot(&x, &gv) == 0 && super::pair_i64(&g, &x, &x) == 0 {
            let rows: Vec<Row> = [v.to_vec(), x.clone()].iter().map(|r| r.iter().map(|&a| BigInt::from(a)).collect()).collect();
            if super::rank_i64(&[v.to_vec(), x.clone()]) == 2 {
                let sat = crate::linalg::saturate(&rows, n)?;
                if let Ok(e) = h_j(lat, &sat) {
                    if !out.iter().any(|(f, _)| *f == e) {
                        out.push((e, sat));
                    }
                }
            }
        }
        let mut p = 0;
        while p < k && digits[p] == ranges[p].1 {
            digits[p] = -ranges[p].1;
            p += 1;
        }
        if p == k {
            break;
        }
        digits[p] += 1;
    }
    out.sort_by_key(|(e, _)| *e);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::catalog::{block_sum, catalog, u_gram};

    fn rows(v: &[&[i64]]) -> Vec<Row> {
        v.iter().map(|r| r.iter().map(|&a| BigInt::from(a)).collect()).collect()
    }

    #[test]
    fn hyperbolic_pair_of_planes() {
        let l = IntegralLattice::from_i64("U+U", &block_sum(&[u_gram(1), u_gram(1)])).unwrap();
        let j = rows(&[&[1, 0, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(h_j(&l, &j).unwrap(), 1);
        let nf = isotropic_normal_form(&l, &j).unwrap();
        assert_eq!((nf.e, nf.t, nf.b.rows), (1, 0, 0));
    }

    #[test]
    fn twisted_plane_has_e3() {
        let l = IntegralLattice::from_i64("U+U(3)", &block_sum(&[u_gram(1), u_gram(3)])).unwrap();
        let j = rows(&[&[1, 0, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(h_j(&l, &j).unwrap(), 3);
        let nf = isotropic_normal_form(&l, &j).unwrap();
        assert_eq!(nf.e, 3);
        assert!(nf.t < 3);
    }

    #[test]
    fn with_definite_part() {
        let g = block_sum(&[u_gram(1), u_gram(3), catalog("A1").unwrap().gram_i64().unwrap()]);
        let l = IntegralLattice::from_i64("U+U(3)+A1", &g).unwrap();
        // 3bc = d² forces 3 | d, so every plane through e₁ has e = 3
        let found = find_isotropic_planes(&l, &[1, 0, 0, 0, 0], &[(2, 3), (3, 3), (4, 3)]).unwrap();
        assert_eq!(found.iter().map(|x| x.0).collect::<Vec<_>>(), vec![3]);
        for (e, j) in &found {
            let nf = isotropic_normal_form(&l, j).unwrap();
            assert_eq!(nf.e, *e);
            assert_eq!(nf.b.rows, 1);
            assert_eq!(nf.gram.det(), l.det());
        }
    }

    #[test]
    fn gcd_condition_checked() {
        let g = block_sum(&[u_gram(1), u_gram(3), catalog("A2").unwrap().gram_i64().unwrap()]);
        let l = IntegralLattice::from_i64("U+U(3)+A2", &g).unwrap();
        let j = rows(&[&[1, 0, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0]]);
        assert_eq!(h_j(&l, &j).unwrap(), 3);
        assert!(isotropic_normal_form(&l, &j).is_err());
    }

    #[test]
    fn rejects_non_isotropic() {
        let l = IntegralLattice::from_i64("U+U", &block_sum(&[u_gram(1), u_gram(1)])).unwrap();
        let j = rows(&[&[1, 1, 0, 0], &[0, 0, 1, 0]]);
        assert!(h_j(&l, &j).is_err());
    }
}
