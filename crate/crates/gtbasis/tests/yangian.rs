use gtbasis::exact::{rank_of, Rat};
use gtbasis::yangian::*;

fn strings(max_len: i64, range: std::ops::RangeInclusive<i64>) -> Vec<HWString> {
    let mut out = Vec::new();
    for b in range {
        for l in 0..=max_len {
            out.push(HWString::ints(b + l, b).unwrap());
        }
    }
    out
}

#[test]
fn y2_predicate_matches_brute_force() {
    let all = strings(3, -2..=2);
    for a in &all {
        for b in &all {
            let f = vec![a.clone(), b.clone()];
            let m = build_tensor_module(&f).unwrap();
            if m.dim > 8 {
                continue;
            }
            assert_eq!(
                irreducible_y2(&f),
                brute_force_irreducible(&m.generator_matrices(None), m.dim),
                "{a} {b}"
            );
        }
    }
}

#[test]
fn twisted_predicates_match_brute_force() {
    let all = strings(2, -2..=1);
    let deltas = [
        Rat::int(0),
        Rat::int(1),
        Rat::int(-1),
        Rat::new(1, 2),
        Rat::new(1, 3),
    ];
    for a in &all {
        for b in &all {
            let f = vec![a.clone(), b.clone()];
            let m = build_tensor_module(&f).unwrap();
            if m.dim > 8 {
                continue;
            }
            let minus = brute_force_irreducible(&m.generator_matrices(Some(&Twist::Minus)), m.dim);
            assert_eq!(irreducible_yminus(&f), minus, "Y- {a} {b}");
            for d in &deltas {
                let tw = Twist::Plus(d.clone());
                let plus = brute_force_irreducible(&m.generator_matrices(Some(&tw)), m.dim);
                assert_eq!(irreducible_yplus(&f, d), plus, "Y+ δ={d} {a} {b}");
            }
        }
    }
}

#[test]
fn single_factor_twisted_predicates() {
    for s in strings(3, -3..=2) {
        let f = vec![s.clone()];
        let m = build_tensor_module(&f).unwrap();
        assert!(
            brute_force_irreducible(&m.generator_matrices(Some(&Twist::Minus)), m.dim),
            "{s}"
        );
        for d in [Rat::int(0), Rat::int(1), Rat::int(-2), Rat::new(1, 2)] {
            let tw = Twist::Plus(d.clone());
            let plus = brute_force_irreducible(&m.generator_matrices(Some(&tw)), m.dim);
            assert_eq!(irreducible_yplus(&f, &d), plus, "Y+ δ={d} {s}");
        }
    }
}

#[test]
fn rational_strings() {
    let a = HWString::new(Rat::new(5, 2), Rat::new(1, 2)).unwrap();
    let b = HWString::new(Rat::new(4, 3), Rat::new(1, 3)).unwrap();
    let f = vec![a, b];
    let m = build_tensor_module(&f).unwrap();
    assert!(m.qdet_check());
    let pts: Vec<(Rat, Rat)> = (1..6)
        .map(|j| (Rat::new(j, 7), Rat::new(2 - j, 5)))
        .collect();
    assert!(m.rtt_check(&pts));
    assert!(m.eta_action_check().unwrap());
    let b = m.twisted_basis(&Twist::Minus).unwrap();
    assert_eq!(
        rank_of(&b.iter().map(|x| x.1.clone()).collect::<Vec<_>>()),
        m.dim
    );
}

#[test]
fn twisted_bases_span() {
    let cases = [vec![(2, 0), (5, 4)], vec![(1, 0), (4, 2)], vec![(3, 1)]];
    for c in cases {
        let f: Vec<HWString> = c
            .iter()
            .map(|&(a, b)| HWString::ints(a, b).unwrap())
            .collect();
        let m = build_tensor_module(&f).unwrap();
        for tw in [Twist::Minus, Twist::Plus(Rat::new(1, 3))] {
            assert!(m.twisted_symmetry_check(&tw));
            assert!(m.twisted_action_check(&tw).unwrap());
            let b = m.twisted_basis(&tw).unwrap();
            assert_eq!(
                rank_of(&b.iter().map(|x| x.1.clone()).collect::<Vec<_>>()),
                m.dim
            );
        }
    }
}

#[test]
fn refusals() {
    let f = vec![HWString::ints(2, 0).unwrap(), HWString::ints(3, 1).unwrap()];
    let m = build_tensor_module(&f).unwrap();
    assert!(matches!(m.eta_basis(), Err(gtbasis::Error::Hypothesis(_))));
    let f = vec![
        HWString::ints(2, 0).unwrap(),
        HWString::ints(1, -1).unwrap(),
    ];
    let m = build_tensor_module(&f).unwrap();
    assert!(matches!(
        m.twisted_basis(&Twist::Minus),
        Err(gtbasis::Error::Hypothesis(_))
    ));
    assert!(HWString::new(Rat::new(1, 2), Rat::zero()).is_err());
}
