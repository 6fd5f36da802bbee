use proptest::prelude::*;

use gtbasis::branching::{branch_a, branching_sum, weyl_dim, weyl_dim_positive};
use gtbasis::exact::{Rat, SparseMat};
use gtbasis::export::{export_gl, Export};
use gtbasis::gln::build_irrep;
use gtbasis::liealg_bcd::build_bcd_irrep;
use gtbasis::patterns::{enumerate, flip_convention, fmt_doubled, parse_doubled, Family};
use gtbasis::yangian::{build_tensor_module, HWString};
use gtbasis::Series;

fn rat() -> impl Strategy<Value = Rat> {
    (-30i64..30, 1i64..12).prop_map(|(n, d)| Rat::new(n, d))
}

/// Doubled dominant gl_n weights with entries in `lo..=hi`.
fn gl_weight(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(lo..=hi, n).prop_map(|mut v| {
        v.sort_by(|a, b| b.cmp(a));
        v.into_iter().map(|x| 2 * x).collect()
    })
}

/// Doubled dominant weights in the usual convention.
fn positive_weight(s: Series, n: usize, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    (
        proptest::collection::vec(0..=hi, n),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(move |(mut v, half, neg)| {
            v.sort_by(|a, b| b.cmp(a));
            let half = half && s != Series::C;
            let mut w: Vec<i64> = v.into_iter().map(|x| 2 * x + i64::from(half)).collect();
            if s == Series::D && neg {
                let last = w.len() - 1;
                w[last] = -w[last];
            }
            w
        })
}

fn bcd_case(hi: i64) -> impl Strategy<Value = (Series, Vec<i64>)> {
    (
        prop_oneof![Just(Series::B), Just(Series::C), Just(Series::D)],
        1usize..=3,
    )
        .prop_flat_map(move |(s, n)| (Just(s), positive_weight(s, n, hi)))
        .prop_filter("D of rank one is abelian", |(s, l)| {
            *s != Series::D || l.len() > 1
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_form_a_field(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Rat>().unwrap(), a);
    }

    #[test]
    fn weight_syntax_round_trips(v in proptest::collection::vec(-9i64..9, 1..5)) {
        prop_assert_eq!(parse_doubled(&fmt_doubled(&v)).unwrap(), v.clone());
        prop_assert_eq!(flip_convention(&flip_convention(&v)), v);
    }

    #[test]
    fn sparse_products_associate(x in proptest::collection::vec(rat(), 9), y in proptest::collection::vec(rat(), 9)) {
        let m = |v: &[Rat]| SparseMat::from_dense(&[v[0..3].to_vec(), v[3..6].to_vec(), v[6..9].to_vec()], 3);
        let (a, b) = (m(&x), m(&y));
        let ab = a.try_mul(&b).unwrap();
        prop_assert_eq!(ab.transpose(), b.transpose().try_mul(&a.transpose()).unwrap());
        prop_assert_eq!((&ab - &ab).nnz(), 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gl_modules_satisfy_the_relations(l in (1usize..=3).prop_flat_map(|n| gl_weight(n, -1, 2))) {
        let m = build_irrep(l.len(), &l).unwrap();
        prop_assert_eq!(m.dim() as u64, weyl_dim(Series::A, &l).unwrap());
        prop_assert_eq!(m.commutator_failures(), 0);
        prop_assert_eq!(m.adjointness_failures(), 0);
        prop_assert_eq!(m.lowering_basis_mismatches(), 0);
        if l.len() > 1 {
            let total: u64 = branch_a(&l).unwrap().iter().map(|mu| weyl_dim(Series::A, mu).unwrap()).sum();
            prop_assert_eq!(total, m.dim() as u64);
        }
    }

    #[test]
    fn gl_export_round_trips(l in (1usize..=3).prop_flat_map(|n| gl_weight(n, 0, 2))) {
        let m = build_irrep(l.len(), &l).unwrap();
        let e = export_gl(&m);
        let back = Export::from_json(&e.to_json()).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.matrices().unwrap()[&format!("E_1_{}", l.len())].clone(), m.gen(1, l.len()).clone());
    }

    #[test]
    fn pattern_counts_match_weyl((s, l) in bcd_case(3)) {
        let s3 = flip_convention(&l);
        let (f3, f4) = match s {
            Series::B => (Family::B3, Some(Family::B4)),
            Series::C => (Family::C3, None),
            _ => (Family::D3, Some(Family::D4)),
        };
        let d = weyl_dim_positive(s, &l).unwrap();
        let ps = enumerate(f3, &s3).unwrap();
        prop_assert_eq!(ps.len() as u64, d);
        prop_assert!(ps.iter().all(|p| p.validate().unwrap()));
        prop_assert!(ps.windows(2).all(|w| w[0].key() > w[1].key()));
        prop_assert_eq!(branching_sum(s, &s3).unwrap(), d);
        if let Some(f4) = f4 {
            let ps = enumerate(f4, &l).unwrap();
            prop_assert_eq!(ps.len() as u64, d);
            prop_assert!(ps.iter().all(|p| p.validate().unwrap()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn bcd_modules_have_weyl_dimension((s, l) in bcd_case(1)) {
        let s3 = flip_convention(&l);
        let d = weyl_dim(s, &s3).unwrap();
        prop_assume!(d <= 40);
        let m = build_bcd_irrep(s, &s3).unwrap();
        prop_assert_eq!(m.dim() as u64, d);
        prop_assert!(m.highest_check());
        let b = m.gt_basis_bcd().unwrap();
        prop_assert_eq!(b.len() as u64, d);
    }

    #[test]
    fn yangian_tensor_modules((a, la, b, lb) in (-2i64..=2, 0i64..=2, -2i64..=2, 0i64..=2)) {
        let f = vec![HWString::ints(a + la, a).unwrap(), HWString::ints(b + lb, b).unwrap()];
        let m = build_tensor_module(&f).unwrap();
        let pts: Vec<(Rat, Rat)> = (1..=5).map(|k| (Rat::new(k, 3), Rat::new(-2 * k - 1, 7))).collect();
        prop_assert!(m.rtt_check(&pts));
        prop_assert!(m.qdet_check());
        prop_assert!(m.highest_check());
    }
}
