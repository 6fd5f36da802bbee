//! Weyl dimension oracle, Schur polynomials and branching-rule enumerations.
//!
//! Weights are doubled integers. For `B`, `C`, `D` the non-positive convention of the
//! explicit constructions is used unless a function name says otherwise.
//! The Weyl oracle below deliberately uses no pattern code.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exact::Rat;
use crate::{Error, Result, Series};

fn fmt_w(xs: &[i64]) -> String {
    let parts: Vec<String> = xs
        .iter()
        .map(|&x| {
            if x % 2 == 0 {
                (x / 2).to_string()
            } else {
                format!("{x}/2")
            }
        })
        .collect();
    format!("({})", parts.join(","))
}

fn same_parity(xs: &[i64]) -> bool {
    xs.windows(2).all(|w| (w[0] - w[1]) % 2 == 0)
}

/// Positive roots of the series in the ε-basis, standard (positive) convention.
fn positive_roots(series: Series, n: usize) -> Vec<Vec<i64>> {
    let mut roots = Vec::new();
    let e = |i: usize, c: i64, v: &mut Vec<i64>| v[i] += c;
    for i in 0..n {
        for j in i + 1..n {
            let mut a = vec![0; n];
            e(i, 1, &mut a);
            e(j, -1, &mut a);
            roots.push(a);
            if series != Series::A {
                let mut b = vec![0; n];
                e(i, 1, &mut b);
                e(j, 1, &mut b);
                roots.push(b);
            }
        }
        match series {
            Series::B => {
                let mut a = vec![0; n];
                e(i, 1, &mut a);
                roots.push(a);
            }
            Series::C => {
                let mut a = vec![0; n];
                e(i, 2, &mut a);
                roots.push(a);
            }
            _ => {}
        }
    }
    roots
}

/// Doubled ρ in the standard convention.
fn rho2(series: Series, n: usize) -> Vec<i64> {
    (1..=n as i64)
        .map(|i| {
            let n = n as i64;
            match series {
                Series::A => 2 * (n - i),
                Series::B => 2 * (n - i) + 1,
                Series::C => 2 * (n - i + 1),
                Series::D => 2 * (n - i),
            }
        })
        .collect()
}

/// Dominance check in the standard (positive) convention.
pub fn check_dominant_positive(series: Series, lambda: &[i64]) -> Result<()> {
    let n = lambda.len();
    let err = |why: &str| {
        Err(Error::NotDominant(format!(
            "{series}-type weight {}: {why}",
            fmt_w(lambda)
        )))
    };
    if n == 0 {
        return err("empty");
    }
    if series == Series::A {
        if lambda
            .windows(2)
            .any(|w| w[0] < w[1] || (w[0] - w[1]) % 2 != 0)
        {
            return err("needs λ_i - λ_(i+1) in Z_+");
        }
        return Ok(());
    }
    if !same_parity(lambda) {
        return err("entries must be all integers or all half-integers");
    }
    if lambda[..n - 1].windows(2).any(|w| w[0] < w[1]) {
        return err("entries must weakly decrease");
    }
    match series {
        Series::B => {
            if n >= 2 && lambda[n - 2] < lambda[n - 1] || lambda[n - 1] < 0 {
                return err("needs λ_1 >= ... >= λ_n >= 0");
            }
        }
        Series::C => {
            if n >= 2 && lambda[n - 2] < lambda[n - 1] || lambda[n - 1] < 0 || lambda[0] % 2 != 0 {
                return err("needs integers λ_1 >= ... >= λ_n >= 0");
            }
        }
        Series::D => {
            if n >= 2 && lambda[n - 2] < lambda[n - 1].abs() {
                return err("needs λ_(n-1) >= |λ_n|");
            }
        }
        Series::A => unreachable!(),
    }
    Ok(())
}

/// Weyl dimension `∏_{α>0} ⟨λ+ρ,α⟩/⟨ρ,α⟩` for a standard-convention dominant weight.
pub fn weyl_dim_positive(series: Series, lambda: &[i64]) -> Result<u64> {
    check_dominant_positive(series, lambda)?;
    let n = lambda.len();
    let rho = rho2(series, n);
    let mut d = Rat::one();
    for a in positive_roots(series, n) {
        let num: i64 = (0..n).map(|i| (lambda[i] + rho[i]) * a[i]).sum();
        let den: i64 = (0..n).map(|i| rho[i] * a[i]).sum();
        d = d * Rat::new(num, den);
    }
    d.to_i64()
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| Error::TooLarge(format!("dimension {d} does not fit in u64")))
}

/// Weyl dimension with `B`, `C`, `D` weights in the non-positive convention
/// (reverse-and-negate to the standard one). `A` weights are taken as is.
pub fn weyl_dim(series: Series, lambda: &[i64]) -> Result<u64> {
    match series {
        Series::A => weyl_dim_positive(series, lambda),
        _ => {
            let flipped: Vec<i64> = lambda.iter().rev().map(|x| -x).collect();
            weyl_dim_positive(series, &flipped).map_err(|e| match e {
                Error::NotDominant(_) => Error::NotDominant(format!(
                    "{series}-type weight {} is not dominant in the non-positive convention",
                    fmt_w(lambda)
                )),
                other => other,
            })
        }
    }
}

/// Weyl dimension of the subalgebra `g_{n-1}` (same series, rank one less). Rank zero gives 1.
pub fn weyl_dim_child(series: Series, mu: &[i64]) -> Result<u64> {
    if mu.is_empty() {
        Ok(1)
    } else {
        weyl_dim(series, mu)
    }
}

// ----------------------------------------------------------------------------
// Type A
// ----------------------------------------------------------------------------

/// All `μ` with `λ_i >= μ_i >= λ_{i+1}` and integral differences, in lexicographic
/// order with larger entries first.
pub fn branch_a(lambda: &[i64]) -> Result<Vec<Vec<i64>>> {
    check_dominant_positive(Series::A, lambda)?;
    let mut out = vec![Vec::new()];
    for i in 0..lambda.len().saturating_sub(1) {
        let mut next = Vec::new();
        for p in &out {
            let mut v = lambda[i];
            while v >= lambda[i + 1] {
                let mut q: Vec<i64> = p.clone();
                q.push(v);
                next.push(q);
                v -= 2;
            }
        }
        out = next;
    }
    if lambda.len() == 1 {
        return Ok(vec![Vec::new()]);
    }
    Ok(out)
}

/// Schur polynomial `s_λ(x)` as a sum over semistandard tableaux.
pub fn schur(lambda: &[usize], x: &[Rat]) -> Rat {
    schur_poly(lambda, x.len())
        .into_iter()
        .map(|(exp, mult)| {
            let mono: Rat = exp.iter().zip(x).map(|(&e, xi)| xi.pow(e as u32)).product();
            mono * Rat::from(mult)
        })
        .sum()
}

/// Monomial exponents of `s_λ(x_1..x_n)` with multiplicities.
pub fn schur_poly(lambda: &[usize], n: usize) -> BTreeMap<Vec<usize>, usize> {
    let shape: Vec<usize> = lambda.iter().copied().filter(|&l| l > 0).collect();
    let mut out = BTreeMap::new();
    if shape.len() > n {
        return out;
    }
    for t in crate::patterns::enumerate_tableaux(&shape, n) {
        *out.entry(t.content(n)).or_insert(0) += 1;
    }
    out
}

// ----------------------------------------------------------------------------
// Types B, C, D
// ----------------------------------------------------------------------------

/// Admissible tuples for one pair `(λ, μ)`. For `B` each tuple is `(σ, ν_1..ν_n)`
/// after re-encoding; for `C` it is `ν_1..ν_n`; for `D` it is `ν_1..ν_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchSpec {
    pub series: Series,
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub data: Vec<(u8, Vec<i64>)>,
}

impl BranchSpec {
    pub fn multiplicity(&self) -> usize {
        self.data.len()
    }
}

fn decreasing(xs: &[i64]) -> bool {
    xs.windows(2).all(|w| w[0] >= w[1])
}

fn interleave(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = Vec::new();
    for i in 0..a.len().max(b.len()) {
        if i < a.len() {
            out.push(a[i]);
        }
        if i < b.len() {
            out.push(b[i]);
        }
    }
    out
}

/// Grid of doubled values `lo..=hi` with the parity of `par`.
fn grid(lo: i64, hi: i64, par: i64) -> Vec<i64> {
    let start = if (lo - par).rem_euclid(2) == 0 {
        lo
    } else {
        lo + 1
    };
    (0..)
        .map(|t| start + 2 * t)
        .take_while(|&v| v <= hi)
        .collect()
}

fn tuples(ranges: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for r in ranges {
        let mut next = Vec::new();
        for p in &out {
            for &v in r {
                let mut q: Vec<i64> = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Enumerates the admissible tuples of the branching rule `g_n ↓ g_{n-1}` for `λ ↦ μ`.
pub fn branch_bcd(series: Series, lambda: &[i64], mu: &[i64]) -> Result<BranchSpec> {
    if series == Series::A {
        return Err(Error::Domain("branch_bcd needs series B, C or D".into()));
    }
    weyl_dim(series, lambda)?;
    let n = lambda.len();
    if mu.len() + 1 != n {
        return Err(Error::Shape(format!("μ must have {} entries", n - 1)));
    }
    let par = lambda[0];
    let mut spec = BranchSpec {
        series,
        lambda: lambda.to_vec(),
        mu: mu.to_vec(),
        data: Vec::new(),
    };
    if !mu.iter().all(|&m| (m - par) % 2 == 0) {
        return Ok(spec);
    }
    let lo = lambda[n - 1];
    let hi = -lambda[n - 1];
    match series {
        Series::B => {
            // (ν'_1, ν_2, ..., ν_n)
            let ranges: Vec<Vec<i64>> = (0..n).map(|_| grid(lo, hi, par)).collect();
            for t in tuples(&ranges) {
                let nu1p = t[0];
                let mut c1 = vec![-lambda[0], nu1p];
                c1.extend(interleave(lambda, &t[1..]));
                let ok2 = if n >= 2 {
                    let mut c2 = vec![-mu[0], nu1p];
                    c2.extend(interleave(mu, &t[1..]));
                    decreasing(&c2)
                } else {
                    true
                };
                if decreasing(&c1) && ok2 {
                    let mut nu = t.clone();
                    let sigma = if nu1p <= 0 {
                        0
                    } else {
                        nu[0] = -nu1p;
                        1
                    };
                    spec.data.push((sigma, nu));
                }
            }
        }
        Series::C => {
            if par % 2 != 0 {
                return Ok(spec);
            }
            let ranges: Vec<Vec<i64>> = (0..n).map(|_| grid(lo, 0, 0)).collect();
            for t in tuples(&ranges) {
                let mut c1 = vec![0];
                c1.extend(interleave(&t, lambda));
                let mut c2 = vec![0];
                c2.extend(interleave(&t, mu));
                if decreasing(&c1) && decreasing(&c2) {
                    spec.data.push((0, t));
                }
            }
        }
        Series::D => {
            let ranges: Vec<Vec<i64>> = (0..n - 1).map(|_| grid(lo, hi, par)).collect();
            for t in tuples(&ranges) {
                let mut c1 = vec![-lambda[0].abs()];
                c1.extend(interleave(&t, &lambda[1..]));
                let mut c2 = vec![-mu.first().map_or(0, |m: &i64| m.abs())];
                c2.extend(interleave(&t, mu.get(1..).unwrap_or(&[])));
                if decreasing(&c1) && decreasing(&c2) {
                    spec.data.push((0, t));
                }
            }
        }
        Series::A => unreachable!(),
    }
    Ok(spec)
}

/// All `μ` with nonzero multiplicity, each with its admissible tuples.
pub fn children_bcd(series: Series, lambda: &[i64]) -> Result<Vec<BranchSpec>> {
    weyl_dim(series, lambda)?;
    let n = lambda.len();
    let lo = lambda[n - 1];
    let par = lambda[0];
    let ranges: Vec<Vec<i64>> = (0..n - 1).map(|_| grid(lo, -lo, par)).collect();
    let mut out = Vec::new();
    let mut mus = tuples(&ranges);
    mus.sort_by(|a, b| b.cmp(a));
    for mu in mus {
        let spec = branch_bcd(series, lambda, &mu)?;
        if spec.multiplicity() > 0 {
            out.push(spec);
        }
    }
    Ok(out)
}

/// `Σ_μ c(μ) dim V'(μ)`; equals `dim V(λ)` by the branching rule.
pub fn branching_sum(series: Series, lambda: &[i64]) -> Result<u64> {
    let mut total = 0u64;
    for spec in children_bcd(series, lambda)? {
        total += spec.multiplicity() as u64 * weyl_dim_child(series, &spec.mu)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(xs: &[i64]) -> Vec<i64> {
        xs.iter().map(|x| 2 * x).collect()
    }

    #[test]
    fn weyl_examples() {
        for s in [Series::A, Series::B, Series::C, Series::D] {
            assert_eq!(weyl_dim(s, &d(&[0, 0, 0])).unwrap(), 1);
        }
        assert_eq!(weyl_dim(Series::A, &d(&[2, 1, 0])).unwrap(), 8);
        assert_eq!(weyl_dim(Series::C, &d(&[0, -1])).unwrap(), 4);
        assert_eq!(weyl_dim(Series::C, &d(&[-1, -1])).unwrap(), 5);
        assert_eq!(weyl_dim(Series::B, &[-1, -1]).unwrap(), 4);
        assert_eq!(weyl_dim(Series::B, &d(&[0, -1])).unwrap(), 5);
        assert_eq!(weyl_dim(Series::D, &d(&[0, -1])).unwrap(), 4);
        assert_eq!(weyl_dim(Series::D, &d(&[0, 0, -1])).unwrap(), 6);
        assert_eq!(weyl_dim(Series::B, &d(&[0, 0, -1])).unwrap(), 7);
        assert_eq!(weyl_dim(Series::B, &d(&[-1, -1])).unwrap(), 10);
        assert!(weyl_dim(Series::C, &d(&[-1, 0])).is_err());
        assert!(weyl_dim(Series::A, &d(&[0, 1])).is_err());
    }

    #[test]
    fn branch_a_examples() {
        assert_eq!(branch_a(&d(&[0, 0])).unwrap(), vec![d(&[0])]);
        assert_eq!(branch_a(&d(&[1, 0])).unwrap(), vec![d(&[1]), d(&[0])]);
        let mus = branch_a(&d(&[2, 1, 0])).unwrap();
        assert_eq!(mus, vec![d(&[2, 1]), d(&[2, 0]), d(&[1, 1]), d(&[1, 0])]);
        let total: u64 = mus.iter().map(|m| weyl_dim(Series::A, m).unwrap()).sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn schur_examples() {
        let x = [Rat::int(3), Rat::int(5)];
        assert_eq!(schur(&[1, 0], &x), Rat::int(8));
        let ones = [Rat::one(), Rat::one(), Rat::one()];
        assert_eq!(schur(&[2, 1, 0], &ones), Rat::int(8));
    }

    #[test]
    fn branching_sums() {
        for (s, l) in [
            (Series::C, d(&[0, -1])),
            (Series::C, d(&[-1, -1])),
            (Series::B, vec![-1, -1]),
            (Series::B, d(&[0, -1])),
            (Series::D, d(&[0, -1])),
            (Series::D, d(&[1, -1, -2])),
            (Series::C, d(&[0, 0])),
        ] {
            assert_eq!(
                branching_sum(s, &l).unwrap(),
                weyl_dim(s, &l).unwrap(),
                "{s:?} {l:?}"
            );
        }
        let trivial = children_bcd(Series::C, &d(&[0, 0])).unwrap();
        assert_eq!(trivial.len(), 1);
        assert_eq!(trivial[0].mu, d(&[0]));
        assert_eq!(trivial[0].multiplicity(), 1);
    }
}
