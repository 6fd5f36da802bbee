//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use gtbasis::branching::{
    branch_a, branching_sum, children_bcd, schur, schur_poly, weyl_dim, weyl_dim_positive,
};
use gtbasis::exact::{rank_of, OpPoly, Rat, SparseMat, Vector};
use gtbasis::gln::{build_irrep, gt_eigenvalues, GlnIrrep};
use gtbasis::liealg_bcd::{build_bcd_irrep, build_orth_irrep, is_orthogonal_positive};
use gtbasis::patterns::{
    enumerate_a, enumerate_b3, enumerate_b4, enumerate_c3, enumerate_d3, GtPattern,
};
use gtbasis::yangian::{
    brute_force_irreducible, build_tensor_module, irreducible_y2, irreducible_yminus,
    irreducible_yplus, HWString, Twist,
};
use gtbasis::Series;

/// Exact arithmetic throughout: every equality is checked with zero tolerance.
const TOLERANCE: i64 = 0;
const LIMIT_GL: Duration = Duration::from_secs(5);
const LIMIT_YANGIAN: Duration = Duration::from_secs(30);
const LIMIT_BCD: Duration = Duration::from_secs(60);

type Outcome = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn d(xs: &[i64]) -> Vec<i64> {
    xs.iter().map(|x| 2 * x).collect()
}

fn gl_cases() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for n in 2..=4usize {
        let mut a = vec![0; n];
        a[0] = 1;
        out.push(a);
        let mut b = vec![0; n];
        b[0] = 2;
        b[1] = 1;
        out.push(b);
    }
    out.push(vec![3, 1, 0, 0]);
    out.into_iter().map(|l| d(&l)).collect()
}

fn gl(l: &[i64]) -> Result<GlnIrrep, String> {
    build_irrep(l.len(), l).map_err(|e| e.to_string())
}

fn c1_structure() -> Outcome {
    for l in gl_cases() {
        let m = gl(&l)?;
        let weyl = weyl_dim(Series::A, &l).map_err(|e| e.to_string())?;
        let count = enumerate_a(&l).map_err(|e| e.to_string())?.len();
        ensure(m.commutator_failures() == 0, || {
            format!("commutators fail for {l:?}")
        })?;
        ensure(m.dim() == count && count as u64 == weyl, || {
            format!("dim/patterns/Weyl disagree for {l:?}")
        })?;
    }
    ensure(gl(&d(&[2, 1, 0]))?.dim() == 8, || {
        "dim L(2,1,0) != 8".into()
    })
}

fn c2_adjointness() -> Outcome {
    for l in gl_cases() {
        let m = gl(&l)?;
        ensure(m.adjointness_failures() as i64 <= TOLERANCE, || {
            format!("adjointness fails for {l:?}")
        })?;
    }
    Ok(())
}

fn c3_lowering() -> Outcome {
    for l in gl_cases().into_iter().filter(|l| l.len() <= 3) {
        let m = gl(&l)?;
        ensure(m.lowering_basis_mismatches() == 0, || {
            format!("lowering basis differs for {l:?}")
        })?;
    }
    Ok(())
}

fn c4_capelli() -> Outcome {
    for l in gl_cases().into_iter().filter(|l| l.len() <= 3) {
        let m = gl(&l)?;
        let c = m.capelli_det(m.n).map_err(|e| e.to_string())?;
        ensure(
            c == OpPoly::scalar_poly(m.dim(), &m.capelli_eigen_poly()),
            || format!("C(u) not scalar for {l:?}"),
        )?;
        for i in 1..m.n {
            ensure(
                m.capelli_interpolation_check(i)
                    .map_err(|e| e.to_string())?,
                || format!("interpolation at h_{i} fails for {l:?}"),
            )?;
        }
    }
    Ok(())
}

fn c5_drinfeld() -> Outcome {
    let m = gl(&d(&[2, 1, 0]))?;
    ensure(m.drinfeld_check().map_err(|e| e.to_string())?, || {
        "A_m, B_m, C_m formulas fail".into()
    })?;
    let k = m.kappa_constants().map_err(|e| e.to_string())?;
    ensure(k.iter().all(|x| !x.is_zero()), || {
        "κ constant vanishes".into()
    })
}

fn c6_separation() -> Outcome {
    let m = gl(&d(&[2, 1, 0]))?;
    let tuples: Vec<Vec<Vec<Rat>>> = m.basis.iter().map(gt_eigenvalues).collect();
    ensure(tuples.len() == 8, || "expected 8 patterns".into())?;
    for i in 0..tuples.len() {
        for j in 0..i {
            ensure(tuples[i] != tuples[j], || {
                format!("patterns {i} and {j} share eigenvalues")
            })?;
        }
    }
    ensure(m.gt_subalgebra_check().map_err(|e| e.to_string())?, || {
        "a_mi do not act by α_mi".into()
    })
}

fn c7_characteristic() -> Outcome {
    for l in [d(&[1, 0]), d(&[2, 1, 0])] {
        let m = gl(&l)?;
        ensure(m.characteristic_identity_check(), || {
            format!("characteristic identity fails for {l:?}")
        })?;
        let ps = m.projections();
        let size = m.n * m.dim();
        let sum = ps.iter().fold(SparseMat::zeros(size, size), |a, p| &a + p);
        ensure(sum == SparseMat::identity(size), || {
            "projections do not sum to 1".into()
        })?;
        ensure(ps.iter().all(|p| &(p * p) == p), || {
            "projection not idempotent".into()
        })?;
    }
    Ok(())
}

fn c8_character() -> Outcome {
    for l in [
        [0, 0, 0],
        [1, 0, 0],
        [2, 1, 0],
        [2, 0, 0],
        [3, 1, 0],
        [2, 2, 1],
    ] {
        let m = gl(&d(&l))?;
        let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for p in &m.basis {
            let w: Vec<usize> = p.weight().iter().map(|x| (x / 2) as usize).collect();
            *counts.entry(w).or_insert(0) += 1;
        }
        let shape: Vec<usize> = l.iter().map(|&x| x as usize).collect();
        ensure(counts == schur_poly(&shape, 3), || {
            format!("character differs from s_λ for {l:?}")
        })?;
        let points = [
            (Rat::new(1, 2), Rat::new(3, 1)),
            (Rat::new(-2, 3), Rat::new(5, 7)),
            (Rat::new(4, 1), Rat::new(-1, 5)),
        ];
        for (x1, x2) in points {
            let lhs = schur(&shape, &[x1.clone(), x2.clone(), Rat::one()]);
            let rhs: Rat = branch_a(&d(&l))
                .map_err(|e| e.to_string())?
                .iter()
                .map(|mu| {
                    let mu: Vec<usize> = mu.iter().map(|x| (x / 2) as usize).collect();
                    schur(&mu, &[x1.clone(), x2.clone()])
                })
                .sum();
            ensure(lhs == rhs, || format!("s_λ(x,1) branching fails for {l:?}"))?;
        }
    }
    Ok(())
}

fn c9_yangian() -> Outcome {
    let modules: Vec<Vec<(i64, i64)>> = vec![
        vec![(1, 0)],
        vec![(3, 0)],
        vec![(1, 0), (3, 2)],
        vec![(2, 0), (5, 4)],
        vec![(1, 0), (4, 2)],
        vec![(1, 0), (3, 2), (6, 5)],
        vec![(2, 1), (6, 5), (4, 3)],
    ];
    let pts: Vec<(Rat, Rat)> = [(1, 2), (2, -3), (5, 7), (-4, 9), (3, 11), (7, -2)]
        .iter()
        .map(|&(a, b)| (Rat::new(a, 3), Rat::new(b, 5)))
        .collect();
    for f in &modules {
        let hs: Vec<HWString> = f
            .iter()
            .map(|&(a, b)| HWString::ints(a, b).unwrap())
            .collect();
        let m = build_tensor_module(&hs).map_err(|e| e.to_string())?;
        ensure(m.eta_action_check().map_err(|e| e.to_string())?, || {
            format!("action formulas fail for {f:?}")
        })?;
        ensure(m.rtt_check(&pts), || format!("RTT fails for {f:?}"))?;
        ensure(m.qdet_check(), || {
            format!("quantum determinant fails for {f:?}")
        })?;
        ensure(m.highest_check(), || {
            format!("highest vector fails for {f:?}")
        })?;
    }
    for a in -1..=1i64 {
        for la in 0..=3i64 {
            for b in -1..=2i64 {
                for lb in 0..=3i64 {
                    let hs = vec![
                        HWString::ints(a + la, a).unwrap(),
                        HWString::ints(b + lb, b).unwrap(),
                    ];
                    let m = build_tensor_module(&hs).map_err(|e| e.to_string())?;
                    if m.dim > 8 {
                        continue;
                    }
                    let brute = brute_force_irreducible(&m.generator_matrices(None), m.dim);
                    ensure(brute == irreducible_y2(&hs), || {
                        format!("predicate disagrees on {hs:?}")
                    })?;
                    if m.dim > 6 {
                        continue;
                    }
                    for tw in [
                        Twist::Minus,
                        Twist::Plus(Rat::zero()),
                        Twist::Plus(Rat::new(1, 2)),
                    ] {
                        let crit = match &tw {
                            Twist::Minus => irreducible_yminus(&hs),
                            Twist::Plus(delta) => irreducible_yplus(&hs, delta),
                        };
                        let brute =
                            brute_force_irreducible(&m.generator_matrices(Some(&tw)), m.dim);
                        ensure(brute == crit, || {
                            format!("twisted predicate disagrees on {hs:?}, {tw:?}")
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn c10_bcd() -> Outcome {
    let dims: [(Series, Vec<i64>, usize); 3] = [
        (Series::C, vec![0, -2], 4),
        (Series::C, vec![-2, -2], 5),
        (Series::B, vec![-1, -1], 4),
    ];
    for (s, l, want) in &dims {
        let m = build_bcd_irrep(*s, l).map_err(|e| e.to_string())?;
        ensure(m.dim() == *want, || {
            format!("{s} {l:?}: dim {} != {want}", m.dim())
        })?;
        let sum = branching_sum(*s, l).map_err(|e| e.to_string())?;
        ensure(sum == *want as u64, || {
            format!("{s} {l:?}: branching sum {sum}")
        })?;
    }
    let cases: Vec<(Series, Vec<i64>)> = vec![
        (Series::C, vec![0, -2]),
        (Series::C, vec![-2, -2]),
        (Series::C, vec![-2, -4]),
        (Series::C, vec![0, -2, -2]),
        (Series::B, vec![-1, -1]),
        (Series::B, vec![0, -2]),
        (Series::B, vec![-1, -3]),
        (Series::B, vec![0, 0, -2]),
        (Series::D, vec![0, -2]),
        (Series::D, vec![2, -2]),
        (Series::D, vec![0, -2, -2]),
    ];
    for (s, l) in &cases {
        let m = build_bcd_irrep(*s, l).map_err(|e| e.to_string())?;
        let b = m.gt_basis_bcd().map_err(|e| e.to_string())?;
        let count = match s {
            Series::B => enumerate_b3(l).map(|v| v.len()),
            Series::C => enumerate_c3(l).map(|v| v.len()),
            _ => enumerate_d3(l).map(|v| v.len()),
        }
        .map_err(|e| e.to_string())?;
        let weyl = weyl_dim(*s, l).map_err(|e| e.to_string())?;
        let vs: Vec<Vector> = b.iter().map(|x| x.1.clone()).collect();
        ensure(
            rank_of(&vs) == b.len() && b.len() == count && count as u64 == weyl,
            || format!("{s} {l:?}: rank/pattern/Weyl disagree"),
        )?;
        if *s == Series::C {
            for sp in children_bcd(*s, l).map_err(|e| e.to_string())? {
                let params = m.yangian_parameters(&sp.mu).map_err(|e| e.to_string())?;
                let prod: usize = params[0].0.iter().map(|h| h.len() + 1).product();
                ensure(prod == sp.multiplicity(), || {
                    format!("C {l:?} μ={:?}: c(μ) != ∏(α-β+1)", sp.mu)
                })?;
            }
        }
    }
    Ok(())
}

fn c11_sp4() -> Outcome {
    for l in [vec![0, -2], vec![-2, -2], vec![-2, -4], vec![0, -4]] {
        let m = build_bcd_irrep(Series::C, &l).map_err(|e| e.to_string())?;
        for sp in children_bcd(Series::C, &l).map_err(|e| e.to_string())? {
            ensure(
                m.fnn_action_check(&sp.mu).map_err(|e| e.to_string())?,
                || format!("{l:?} μ={:?}: F_nn or F_n,-n formula fails", sp.mu),
            )?;
        }
    }
    Ok(())
}

fn c12_orthogonal() -> Outcome {
    let m = build_orth_irrep(Series::B, &[2]).map_err(|e| e.to_string())?;
    let b = m.orth_gt_basis().map_err(|e| e.to_string())?;
    let vs: Vec<Vector> = b.iter().map(|x| x.1.clone()).collect();
    ensure(
        vs.len() == 3 && is_orthogonal_positive(&m.gram_of(&vs)),
        || "o_3 (1): not 3 orthogonal vectors".into(),
    )?;
    let l = [2, 0];
    let m = build_orth_irrep(Series::B, &l).map_err(|e| e.to_string())?;
    let b = m.orth_gt_basis().map_err(|e| e.to_string())?;
    let vs: Vec<Vector> = b.iter().map(|x| x.1.clone()).collect();
    let count = enumerate_b4(&l).map_err(|e| e.to_string())?.len();
    let weyl = weyl_dim_positive(Series::B, &l).map_err(|e| e.to_string())?;
    ensure(
        vs.len() == count && count as u64 == weyl && rank_of(&vs) == vs.len(),
        || "o_5 (1,0): count/pattern/Weyl disagree".into(),
    )?;
    ensure(is_orthogonal_positive(&m.gram_of(&vs)), || {
        "o_5 (1,0): Gram matrix not diagonal positive".into()
    })
}

struct Criterion {
    name: &'static str,
    run: fn() -> Outcome,
    limit: Option<Duration>,
}

fn main() {
    let criteria = [
        Criterion {
            name: "gl_n structure: commutators, dim = patterns = Weyl",
            run: c1_structure,
            limit: Some(LIMIT_GL),
        },
        Criterion {
            name: "adjointness of E_k,k+1 and E_k+1,k with the norms",
            run: c2_adjointness,
            limit: None,
        },
        Criterion {
            name: "lowering-operator basis equals the formula basis",
            run: c3_lowering,
            limit: None,
        },
        Criterion {
            name: "Capelli eigenvalue and interpolation on L(λ)^+",
            run: c4_capelli,
            limit: None,
        },
        Criterion {
            name: "Drinfeld generator actions and κ proportionality",
            run: c5_drinfeld,
            limit: None,
        },
        Criterion {
            name: "GT subalgebra separates the basis of (2,1,0)",
            run: c6_separation,
            limit: None,
        },
        Criterion {
            name: "characteristic identity and projections",
            run: c7_characteristic,
            limit: None,
        },
        Criterion {
            name: "character = Schur polynomial, branching of s_λ",
            run: c8_character,
            limit: None,
        },
        Criterion {
            name: "Yangian modules: actions, RTT, qdet, irreducibility",
            run: c9_yangian,
            limit: Some(LIMIT_YANGIAN),
        },
        Criterion {
            name: "B/C/D modules, bases and branching",
            run: c10_bcd,
            limit: Some(LIMIT_BCD),
        },
        Criterion {
            name: "sp_4 F_nn and F_n,-n formulas on multiplicity bases",
            run: c11_sp4,
            limit: None,
        },
        Criterion {
            name: "orthogonal-chain bases of o_3 and o_5",
            run: c12_orthogonal,
            limit: Some(LIMIT_BCD),
        },
    ];
    let mut failed = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut res = (c.run)();
        let took = start.elapsed();
        if let (Ok(()), Some(limit)) = (&res, c.limit) {
            if took > limit {
                res = Err(format!("took {took:.2?}, limit {limit:?}"));
            }
        }
        match res {
            Ok(()) => println!("PASS {:>2}. {} ({took:.2?})", k + 1, c.name),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2}. {} ({took:.2?}): {e}", k + 1, c.name);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
