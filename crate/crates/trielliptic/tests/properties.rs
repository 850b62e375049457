use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use trielliptic::geometry::euler_holds;
use trielliptic::git::{degeneration_leq, down_set, monomial_set, weight, OneParamSubgroup, Sign};
use trielliptic::lattice::catalog::{a_gram, block_sum, d_gram, e_gram};
use trielliptic::linalg::{is_primitive, saturate, smith_normal_form, IntMatrix, Rat};
use trielliptic::poly::{BiForm, BiMonomial};
use trielliptic::qform::{discriminant_form, gauss_sum, milgram_defect};

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-12i64..=12, c), r))
}

fn root_block() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop_oneof![
        (1usize..=8).prop_map(a_gram),
        (4usize..=8).prop_map(d_gram),
        (6usize..=8).prop_map(e_gram),
    ]
}

fn root_sum() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(root_block(), 1..=3).prop_map(|b| block_sum(&b))
}

fn lambda() -> impl Strategy<Value = OneParamSubgroup> {
    (0i64..=30, -30i64..=30, -30i64..=30)
        .prop_map(|(a, b, c)| OneParamSubgroup::new(a, b, c))
        .prop_filter("normalized, nonzero", |l| l.is_normalized() && !l.is_zero())
}

fn monomial() -> impl Strategy<Value = BiMonomial> {
    prop::sample::select(BiMonomial::all())
}

fn biform() -> impl Strategy<Value = BiForm> {
    prop::collection::vec(-9i64..=9, 30).prop_map(|cs| {
        BiForm::from_terms(
            BiMonomial::all().into_iter().zip(cs).map(|(m, c)| (m, Rat::from_integer(BigInt::from(c)))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_reconstructs(rows in matrix()) {
        let m = IntMatrix::from_i64(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.u.det().abs().is_one() && s.v.det().abs().is_one());
        let d = s.divisors();
        prop_assert!(d.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        prop_assert_eq!(d.len(), m.rank());
    }

    #[test]
    fn saturation_is_primitive_and_idempotent(rows in matrix()) {
        let m = IntMatrix::from_i64(&rows);
        prop_assume!(m.rank() == m.rows && m.rows <= m.cols);
        let sub = m.to_rows();
        let sat = saturate(&sub, m.cols).unwrap();
        prop_assert!(is_primitive(&sat, m.cols));
        let mut both = sat.clone();
        both.extend(sub.iter().cloned());
        prop_assert_eq!(IntMatrix::from_rows(&both, m.cols).rank(), m.rows);
        prop_assert_eq!(saturate(&sat, m.cols).unwrap(), sat);
    }

    #[test]
    fn milgram_holds_for_root_lattices(g in root_sum()) {
        let f = discriminant_form(&IntMatrix::from_i64(&g)).unwrap();
        prop_assert!(milgram_defect(&f, -(g.len() as i64)) < 1e-9);
    }

    #[test]
    fn scaling_by_minus_one_negates_the_form(g in root_sum()) {
        let f = discriminant_form(&IntMatrix::from_i64(&g)).unwrap();
        let neg: Vec<Vec<i64>> = g.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        let fneg = discriminant_form(&IntMatrix::from_i64(&neg)).unwrap();
        prop_assert!(fneg.is_isomorphic(&f.negate()));
    }

    #[test]
    fn gauss_sums_conjugate(g in root_block(), m in -6i64..=6) {
        let f = discriminant_form(&IntMatrix::from_i64(&g)).unwrap();
        prop_assert!(gauss_sum(-m, &f).exact_eq(&gauss_sum(m, &f).conj()));
    }

    #[test]
    fn quadratic_values_scale(g in root_block(), k in -5i64..=5) {
        let f = discriminant_form(&IntMatrix::from_i64(&g)).unwrap();
        let two = Rat::from_integer(BigInt::from(2));
        for x in f.elements() {
            let kx: Vec<i64> = x.iter().map(|c| c * k).collect();
            let diff = f.q(&kx) - f.q(&x) * Rat::from_integer(BigInt::from(k * k));
            prop_assert!((diff / &two).is_integer());
        }
    }

    #[test]
    fn degeneration_order_is_monotone(m1 in monomial(), m2 in monomial(), l in lambda()) {
        if degeneration_leq(m1, m2) {
            prop_assert!(weight(m1, l) <= weight(m2, l));
        }
    }

    #[test]
    fn destabilized_sets_are_down_sets(l in lambda()) {
        for sign in [Sign::Nonpositive, Sign::Negative] {
            let s = monomial_set(l, sign);
            let gens: Vec<BiMonomial> = s.iter().copied().collect();
            prop_assert_eq!(down_set(&gens), s);
        }
    }

    #[test]
    fn forms_satisfy_euler_and_round_trip(f in biform()) {
        prop_assert!(euler_holds(&f));
        prop_assert_eq!(BiForm::parse(&f.to_text()).unwrap(), f);
    }
}
