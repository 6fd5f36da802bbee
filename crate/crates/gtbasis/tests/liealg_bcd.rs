use gtbasis::branching::{children_bcd, weyl_dim, weyl_dim_positive};
use gtbasis::exact::{is_zero_vec, rank_of, unit_vec, Rat, Vector};
use gtbasis::liealg_bcd::*;
use gtbasis::patterns::{enumerate_b3, enumerate_b4, enumerate_c3, enumerate_d3, enumerate_d4};
use gtbasis::{Error, Series};

fn vecs<T>(b: &[(T, Vector)]) -> Vec<Vector> {
    b.iter().map(|x| x.1.clone()).collect()
}

fn small_cases() -> Vec<(Series, Vec<i64>)> {
    vec![
        (Series::C, vec![0, -2]),
        (Series::C, vec![-2, -2]),
        (Series::C, vec![-2, -4]),
        (Series::C, vec![0, -4]),
        (Series::C, vec![0, 0, -2]),
        (Series::C, vec![0, -2, -2]),
        (Series::B, vec![-1, -1]),
        (Series::B, vec![0, -2]),
        (Series::B, vec![-2, -2]),
        (Series::B, vec![-1, -3]),
        (Series::B, vec![0, 0, -2]),
        (Series::B, vec![-1, -1, -1]),
        (Series::D, vec![0, -2]),
        (Series::D, vec![-2, -2]),
        (Series::D, vec![2, -2]),
        (Series::D, vec![-1, -1]),
        (Series::D, vec![0, 0, -2]),
        (Series::D, vec![0, -2, -2]),
        (Series::D, vec![2, -2, -2]),
    ]
}

fn in_plus(m: &BcdIrrep, v: &Vector, mu: &[i64]) -> bool {
    let n = m.n();
    let sub = m.raising_level(n - 1);
    let prefix = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .all(|(i, _)| m.weights[i][..n - 1] == *mu);
    !is_zero_vec(v) && prefix && m.project(&sub, v) == *v
}

#[test]
fn documented_dimensions() {
    let cases: &[(Series, &[i64], usize)] = &[
        (Series::C, &[0, -2], 4),
        (Series::C, &[-2, -2], 5),
        (Series::B, &[-1, -1], 4),
        (Series::B, &[0, 0], 1),
        (Series::C, &[0, 0, 0], 1),
        (Series::D, &[0, 0], 1),
    ];
    for &(s, l, d) in cases {
        let m = build_bcd_irrep(s, l).unwrap();
        assert_eq!(m.dim(), d);
        assert!(m.highest_check());
        assert_eq!(m.commutator_failures(), 0);
    }
}

#[test]
fn modules_match_the_weyl_oracle() {
    for (s, l) in small_cases() {
        let m = build_bcd_irrep(s, &l).unwrap();
        assert_eq!(m.dim() as u64, weyl_dim(s, &l).unwrap(), "{s:?} {l:?}");
        assert!(m.highest_check(), "{s:?} {l:?}");
        if m.dim() <= 16 {
            assert_eq!(m.commutator_failures(), 0, "{s:?} {l:?}");
            assert!(m.contravariance_check(), "{s:?} {l:?}");
        }
    }
}

#[test]
fn gt_bases_have_full_rank_and_pattern_weights() {
    for (s, l) in small_cases() {
        let m = build_bcd_irrep(s, &l).unwrap();
        let b = m.gt_basis_bcd().unwrap();
        let count = match s {
            Series::B => enumerate_b3(&l).unwrap().len(),
            Series::C => enumerate_c3(&l).unwrap().len(),
            _ => enumerate_d3(&l).unwrap().len(),
        };
        assert_eq!(b.len(), count, "{s:?} {l:?}");
        assert_eq!(b.len(), m.dim(), "{s:?} {l:?}");
        assert_eq!(rank_of(&vecs(&b)), m.dim(), "{s:?} {l:?}");
        for (p, v) in &b {
            assert_eq!(
                m.weight_of(v),
                Some(p.weight()),
                "{s:?} {l:?} {:?}",
                p.key()
            );
        }
    }
}

#[test]
fn multiplicity_bases_in_both_product_forms() {
    for (s, l) in small_cases() {
        let m = build_bcd_irrep(s, &l).unwrap();
        for spec in children_bcd(s, &l).unwrap() {
            let mu = &spec.mu;
            let a = m.multiplicity_basis(mu).unwrap();
            let b = m.multiplicity_basis_strings(mu).unwrap();
            assert_eq!(a.len(), spec.multiplicity());
            assert_eq!(vecs(&a), vecs(&b), "{s:?} {l:?} {mu:?}");
            assert_eq!(rank_of(&vecs(&a)), a.len());
            assert_eq!(m.plus_mu(mu).unwrap().len(), a.len());
            for (_, v) in &a {
                assert!(in_plus(&m, v, mu), "{s:?} {l:?} {mu:?}");
            }
        }
    }
}

#[test]
fn symplectic_multiplicity_is_a_product_of_string_lengths() {
    for l in [
        vec![0, -2],
        vec![-2, -4],
        vec![0, -4],
        vec![0, -2, -2],
        vec![-2, -2, -4],
    ] {
        let m = build_bcd_irrep(Series::C, &l).unwrap();
        for spec in children_bcd(Series::C, &l).unwrap() {
            let params = m.yangian_parameters(&spec.mu).unwrap();
            let prod: usize = params[0].0.iter().map(|s| s.len() + 1).product();
            assert_eq!(prod, spec.multiplicity(), "{l:?} {:?}", spec.mu);
        }
    }
}

#[test]
fn f_nn_and_f_n_minus_n_act_by_their_formulas() {
    for l in [vec![0, -2], vec![-2, -2], vec![-2, -4], vec![0, -2, -2]] {
        let m = build_bcd_irrep(Series::C, &l).unwrap();
        for spec in children_bcd(Series::C, &l).unwrap() {
            assert!(m.fnn_action_check(&spec.mu).unwrap(), "{l:?} {:?}", spec.mu);
        }
    }
    for l in [vec![-2], vec![-6]] {
        let m = build_bcd_irrep(Series::C, &l).unwrap();
        assert!(m.fnn_action_check(&[]).unwrap());
        assert_eq!(m.multiplicity_basis(&[]).unwrap().len(), m.dim());
    }
}

#[test]
fn z_operators_shift_weights_and_commute() {
    for (s, l) in small_cases() {
        let m = build_bcd_irrep(s, &l).unwrap();
        let n = m.n() as i64;
        let labels: Vec<i64> = (-(n - 1)..n)
            .filter(|&i| i != 0 || s == Series::B)
            .collect();
        for spec in children_bcd(s, &l).unwrap() {
            let mu = &spec.mu;
            for v in m.plus_mu(mu).unwrap() {
                for &i in labels.iter().filter(|&&i| i > 0) {
                    for a in [-n, n] {
                        let w = m.z_ia(m.n(), i, a, &v).unwrap();
                        if !is_zero_vec(&w) {
                            let mut up = mu.clone();
                            up[i as usize - 1] += 2;
                            assert!(in_plus(&m, &w, &up), "{s:?} {l:?} z_({i},{a})");
                        }
                        let w = m.z_ai(m.n(), a, i, &v).unwrap();
                        if !is_zero_vec(&w) {
                            let mut down = mu.clone();
                            down[i as usize - 1] -= 2;
                            assert!(in_plus(&m, &w, &down), "{s:?} {l:?} z_({a},{i})");
                        }
                    }
                }
                for &i in &labels {
                    for &j in &labels {
                        if i + j == 0 || i >= j {
                            continue;
                        }
                        for a in [-n, n] {
                            let ij = m
                                .z_ia(m.n(), i, a, &m.z_ia(m.n(), j, a, &v).unwrap())
                                .unwrap();
                            let ji = m
                                .z_ia(m.n(), j, a, &m.z_ia(m.n(), i, a, &v).unwrap())
                                .unwrap();
                            assert_eq!(ij, ji, "{s:?} {l:?} z_({i},{a}) z_({j},{a})");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn interpolation_is_even_with_leading_coefficient() {
    for (s, l) in small_cases() {
        let m = build_bcd_irrep(s, &l).unwrap();
        let n = m.n();
        let top = if s == Series::D { n - 1 } else { n };
        for spec in children_bcd(s, &l).unwrap() {
            for v in m.plus_mu(&spec.mu).unwrap() {
                let poly = match m.z_interp_vecpoly(n, &v) {
                    Ok(p) => p,
                    Err(Error::Singular(_)) => continue,
                    Err(e) => panic!("{e}"),
                };
                assert!(poly.len() < 2 * top || poly[2 * top - 1..].iter().all(|c| is_zero_vec(c)));
                for (d, c) in poly.iter().enumerate() {
                    assert!(d % 2 == 0 || is_zero_vec(c));
                }
                if s == Series::C {
                    let lead = poly
                        .get(2 * n - 2)
                        .cloned()
                        .unwrap_or_else(|| vec![Rat::zero(); m.dim()]);
                    assert_eq!(lead, m.gen(n as i64, -(n as i64)).apply(&v));
                }
            }
        }
    }
}

#[test]
fn zab_operators_realize_the_twisted_yangian() {
    for (s, l) in small_cases() {
        let m = build_bcd_irrep(s, &l).unwrap();
        for spec in children_bcd(s, &l).unwrap() {
            let rep = m.zab_yangian_check(&spec.mu);
            match rep {
                Ok(r) => assert!(r.ok(), "{s:?} {l:?} {:?}: {r:?}", spec.mu),
                Err(Error::Singular(_)) => {
                    assert_eq!(s, Series::B);
                    assert_eq!(spec.mu[0], 0);
                }
                Err(e) => panic!("{s:?} {l:?} {:?}: {e}", spec.mu),
            }
        }
    }
}

#[test]
fn zab_vanish_on_the_trivial_module() {
    for s in [Series::C, Series::D] {
        let m = build_bcd_irrep(s, &[0, 0]).unwrap();
        let (_, z) = m.zab_operators_mu(&[0]).unwrap();
        assert!(z[0][1].is_zero() && z[1][0].is_zero());
    }
}

#[test]
fn lowering_matrices_agree_with_vector_application() {
    let m = build_bcd_irrep(Series::C, &[-2, -4]).unwrap();
    let z = m.lowering_zia(1, -2).unwrap();
    let zt = m.realize(&LoweringOp::ZTop).unwrap();
    let interp = m.z_interp_poly().unwrap();
    for v in m
        .plus_mu(&[-2])
        .unwrap()
        .into_iter()
        .chain(m.plus_mu(&[-4]).unwrap())
    {
        assert_eq!(z.apply(&v), m.z_ia(2, 1, -2, &v).unwrap());
        assert_eq!(zt.apply(&v), m.z_top(2, &v).unwrap());
        let u0 = Rat::new(3, 7);
        assert_eq!(
            m.z_interp(&u0).unwrap().apply(&v),
            interp.eval(&u0).apply(&v)
        );
    }
    let d = m.dim();
    let zz = m.lowering_zia(2, 1).unwrap();
    assert_eq!(
        zz.apply(&unit_vec(d, 0)),
        m.z_ai(2, 2, 1, &unit_vec(d, 0)).unwrap()
    );
}

#[test]
fn orthogonal_chain_bases() {
    let cases: Vec<(Series, Vec<i64>)> = vec![
        (Series::B, vec![0]),
        (Series::B, vec![2]),
        (Series::B, vec![1]),
        (Series::B, vec![4]),
        (Series::B, vec![2, 0]),
        (Series::B, vec![1, 1]),
        (Series::B, vec![2, 2]),
        (Series::B, vec![3, 1]),
        (Series::B, vec![4, 2]),
        (Series::D, vec![2, 0]),
        (Series::D, vec![2, 2]),
        (Series::D, vec![2, -2]),
        (Series::D, vec![1, 1]),
        (Series::D, vec![3, 1]),
        (Series::D, vec![4, 2]),
        (Series::B, vec![2, 0, 0]),
        (Series::B, vec![1, 1, 1]),
        (Series::D, vec![2, 0, 0]),
        (Series::D, vec![2, 2, 0]),
    ];
    for (s, l) in cases {
        let m = build_orth_irrep(s, &l).unwrap();
        let b = m.orth_gt_basis().unwrap();
        let count = match s {
            Series::B => enumerate_b4(&l).unwrap().len(),
            _ => enumerate_d4(&l).unwrap().len(),
        };
        assert_eq!(b.len(), count, "{s:?} {l:?}");
        assert_eq!(
            b.len() as u64,
            weyl_dim_positive(s, &l).unwrap(),
            "{s:?} {l:?}"
        );
        assert!(is_orthogonal_positive(&m.gram_of(&vecs(&b))), "{s:?} {l:?}");
        for (p, v) in &b {
            assert_eq!(m.o2_charge(v), Some(p.weight()[0]), "{s:?} {l:?}");
        }
    }
}

#[test]
fn printed_operator_order_is_not_a_basis() {
    let m = build_orth_irrep(Series::B, &[2, 2]).unwrap();
    let b = m.orth_gt_basis_ordered(true).unwrap();
    let vs = vecs(&b);
    assert!(rank_of(&vs) < m.dim() || !is_orthogonal_positive(&m.gram_of(&vs)));
}

#[test]
fn orthogonal_step_operators_lower_the_charge() {
    let m = build_orth_irrep(Series::B, &[2]).unwrap();
    let xi = m.highest();
    let v = m.s_prime(1, 1, &xi).unwrap();
    assert_eq!(m.o2_charge(&v), Some(0));
    let w = m.s_prime(1, 1, &v).unwrap();
    assert_eq!(m.o2_charge(&w), Some(-2));
    assert!(is_zero_vec(&m.s_prime(1, 1, &w).unwrap()));
    assert!(matches!(m.s_plain(1, 1, &xi), Err(Error::Domain(_))));
}

#[test]
fn refusals() {
    assert!(matches!(
        build_bcd_irrep(Series::C, &[2, 0]),
        Err(Error::NotDominant(_))
    ));
    assert!(matches!(
        build_bcd_irrep(Series::A, &[0, 0]),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        build_bcd_irrep_capped(Series::C, &[-4, -4], 10),
        Err(Error::TooLarge(_))
    ));
    assert!(matches!(
        build_orth_irrep(Series::B, &[0, 2]),
        Err(Error::NotDominant(_))
    ));
    let m = build_bcd_irrep(Series::C, &[0, -2]).unwrap();
    assert!(matches!(
        m.z_ia(2, 2, -2, &m.highest()),
        Err(Error::Domain(_))
    ));
}
