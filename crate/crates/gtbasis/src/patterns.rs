//! Gelfand–Tsetlin type patterns for gl_n, o_N and sp_2n, and semistandard tableaux.
//!
//! All entries are stored as doubled integers so that half-integer weights of the
//! orthogonal algebras need no rational arithmetic. A value `x` is stored as `2x`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::exact::Rat;
use crate::{Error, Result};

/// Pattern family. `B3`, `C3`, `D3` follow the non-positive (s3) weight convention
/// with index set `-n..n`; `B4`, `D4` use the positive convention for `o_N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B3,
    C3,
    D3,
    B4,
    D4,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B3" => Family::B3,
            "C3" => Family::C3,
            "D3" => Family::D3,
            "B4" => Family::B4,
            "D4" => Family::D4,
            _ => return Err(Error::Parse(format!("unknown pattern family {s:?}"))),
        })
    }
}

fn all_same_parity(xs: &[i64]) -> bool {
    xs.windows(2).all(|w| (w[0] - w[1]).rem_euclid(2) == 0)
}

fn weakly_decreasing(xs: &[i64]) -> bool {
    xs.windows(2).all(|w| w[0] >= w[1])
}

/// Values from `hi` down to `lo` in steps of 2 (one unit in doubled storage).
fn range_desc(hi: i64, lo: i64) -> impl Iterator<Item = i64> {
    let count = if hi >= lo { (hi - lo) / 2 + 1 } else { 0 };
    (0..count).map(move |t| hi - 2 * t)
}

/// Cartesian product of descending ranges, in lexicographic order with larger values first.
fn boxes(bounds: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in bounds {
        let mut next = Vec::new();
        for prefix in &out {
            for v in range_desc(hi, lo) {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn sort_canonical<P: GtPattern>(v: &mut [P]) {
    v.sort_by(canonical_cmp);
}

/// Canonical basis order: lexicographic in the printed reading order, larger entries first.
pub fn canonical_cmp<P: GtPattern>(a: &P, b: &P) -> Ordering {
    b.key().cmp(&a.key())
}

/// Common interface for every pattern family.
pub trait GtPattern: Clone {
    fn family(&self) -> Family;
    /// Rank `n` (number of entries of the top row).
    fn n(&self) -> usize;
    /// Structural check; errors if the array is not well shaped.
    fn check_shape(&self) -> Result<()>;
    /// True iff all inequalities and parity rules of the family hold.
    /// Malformed arrays give an error rather than `false`.
    fn validate(&self) -> Result<bool>;
    /// Entries flattened in the printed reading order; defines the canonical order.
    fn key(&self) -> Vec<i64>;
    /// Weight of the basis vector, doubled.
    fn weight(&self) -> Vec<i64>;
    fn top(&self) -> Vec<i64>;
}

fn check_rows(rows: &[Vec<i64>], expect: impl Fn(usize) -> usize, what: &str) -> Result<()> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != expect(i) {
            return Err(Error::Malformed(format!(
                "{what} row {} has {} entries, expected {}",
                i + 1,
                r.len(),
                expect(i)
            )));
        }
    }
    Ok(())
}

// ----------------------------------------------------------------------------
// gl_n
// ----------------------------------------------------------------------------

/// A gl_n pattern. `rows[0]` is the top row (length n), `rows[n-1]` the bottom entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GTPatternA {
    pub rows: Vec<Vec<i64>>,
}

impl GTPatternA {
    /// Doubled entry `λ_{ki}` with `1 <= i <= k <= n`.
    pub fn entry(&self, k: usize, i: usize) -> i64 {
        let n = self.rows.len();
        self.rows[n - k][i - 1]
    }

    /// Row `k` (length k).
    pub fn row(&self, k: usize) -> &[i64] {
        &self.rows[self.rows.len() - k]
    }

    /// `l_{ki} = λ_{ki} - i + 1`.
    pub fn l(&self, k: usize, i: usize) -> Rat {
        Rat::half(self.entry(k, i)) - Rat::from(i) + Rat::one()
    }

    /// The array with entry `(k, i)` shifted by `delta` (not doubled); `None` if invalid.
    pub fn shifted(&self, k: usize, i: usize, delta: i64) -> Option<GTPatternA> {
        let mut p = self.clone();
        let n = p.rows.len();
        p.rows[n - k][i - 1] += 2 * delta;
        match p.validate() {
            Ok(true) => Some(p),
            _ => None,
        }
    }
}

impl GtPattern for GTPatternA {
    fn family(&self) -> Family {
        Family::A
    }

    fn n(&self) -> usize {
        self.rows.len()
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.rows.len();
        if n == 0 {
            return Err(Error::Malformed("empty pattern".into()));
        }
        check_rows(&self.rows, |i| n - i, "A-pattern")
    }

    fn validate(&self) -> Result<bool> {
        self.check_shape()?;
        let flat: Vec<i64> = self.rows.concat();
        if !all_same_parity(&flat) {
            return Ok(false);
        }
        for w in self.rows.windows(2) {
            let (up, down) = (&w[0], &w[1]);
            for i in 0..down.len() {
                if !(up[i] >= down[i] && down[i] >= up[i + 1]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn key(&self) -> Vec<i64> {
        self.rows.concat()
    }

    fn weight(&self) -> Vec<i64> {
        let n = self.n();
        (1..=n)
            .map(|k| {
                let s: i64 = self.row(k).iter().sum();
                let t: i64 = if k > 1 {
                    self.row(k - 1).iter().sum()
                } else {
                    0
                };
                s - t
            })
            .collect()
    }

    fn top(&self) -> Vec<i64> {
        self.rows[0].clone()
    }
}

/// Dominance for gl_n: consecutive differences are nonnegative integers.
pub fn check_dominant_a(lambda: &[i64]) -> Result<()> {
    if lambda.is_empty() {
        return Err(Error::NotDominant("empty highest weight".into()));
    }
    if lambda
        .windows(2)
        .any(|w| w[0] < w[1] || (w[0] - w[1]) % 2 != 0)
    {
        return Err(Error::NotDominant(format!(
            "gl_n weight {} needs λ_i - λ_(i+1) in Z_+",
            fmt_doubled(lambda)
        )));
    }
    Ok(())
}

pub fn enumerate_a(lambda: &[i64]) -> Result<Vec<GTPatternA>> {
    check_dominant_a(lambda)?;
    let mut out = Vec::new();
    let mut rows = vec![lambda.to_vec()];
    fn rec(rows: &mut Vec<Vec<i64>>, out: &mut Vec<GTPatternA>) {
        let last = rows.last().unwrap().clone();
        if last.len() == 1 {
            out.push(GTPatternA { rows: rows.clone() });
            return;
        }
        let bounds: Vec<(i64, i64)> = (0..last.len() - 1)
            .map(|i| (last[i + 1], last[i]))
            .collect();
        for r in boxes(&bounds) {
            rows.push(r);
            rec(rows, out);
            rows.pop();
        }
    }
    rec(&mut rows, &mut out);
    sort_canonical(&mut out);
    Ok(out)
}

// ----------------------------------------------------------------------------
// B, C, D patterns, non-positive convention
// ----------------------------------------------------------------------------

/// B-type pattern for `o_{2n+1}`: rows `λ_k` and `λ'_k` (k entries each) and flags `σ_k`,
/// stored with index `k - 1`. The top row `lam[n-1]` is the highest weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternB3 {
    pub sigma: Vec<u8>,
    pub lam: Vec<Vec<i64>>,
    pub lamp: Vec<Vec<i64>>,
}

/// C-type pattern for `sp_{2n}`: rows `λ_k` and `λ'_k`, index `k - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternC3 {
    pub lam: Vec<Vec<i64>>,
    pub lamp: Vec<Vec<i64>>,
}

/// D-type pattern for `o_{2n}`: rows `λ_k` (k = 1..n) and `λ'_k` (k = 1..n-1), index `k - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternD3 {
    pub lam: Vec<Vec<i64>>,
    pub lamp: Vec<Vec<i64>>,
}

/// Interleaving `a_1 >= b_1 >= a_2 >= b_2 >= ...` over the concatenated sequence.
fn chain(seq: &[i64]) -> bool {
    weakly_decreasing(seq)
}

fn interleave(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
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

fn check_bc_shape(lam: &[Vec<i64>], lamp: &[Vec<i64>], what: &str) -> Result<usize> {
    let n = lam.len();
    if n == 0 || lamp.len() != n {
        return Err(Error::Malformed(format!(
            "{what}: expected n rows of each kind"
        )));
    }
    check_rows(lam, |i| i + 1, what)?;
    check_rows(lamp, |i| i + 1, what)?;
    Ok(n)
}

/// Shared B/C inequalities: `λ'_k` interleaves `λ_k` from above and `λ_{k-1}` from outside.
fn bc_inequalities(lam: &[Vec<i64>], lamp: &[Vec<i64>]) -> bool {
    let n = lam.len();
    for k in 1..=n {
        if !chain(&interleave(&lamp[k - 1], &lam[k - 1])) {
            return false;
        }
        if k >= 2 && !chain(&interleave(&lamp[k - 1], &lam[k - 2])) {
            return false;
        }
    }
    true
}

/// F_kk weight of a B or C basis vector: `2Σλ'_k - Σλ_k - Σλ_{k-1} (+ σ_k)`.
fn bc_weight(lam: &[Vec<i64>], lamp: &[Vec<i64>], sigma: Option<&[u8]>) -> Vec<i64> {
    let n = lam.len();
    (1..=n)
        .map(|k| {
            let nu: i64 = lamp[k - 1].iter().sum();
            let l: i64 = lam[k - 1].iter().sum();
            let m: i64 = if k > 1 { lam[k - 2].iter().sum() } else { 0 };
            let s = sigma.map_or(0, |s| 2 * s[k - 1] as i64);
            2 * nu - l - m + s
        })
        .collect()
}

fn bc_key(lam: &[Vec<i64>], lamp: &[Vec<i64>], sigma: Option<&[u8]>) -> Vec<i64> {
    let n = lam.len();
    let mut key = Vec::new();
    for k in (1..=n).rev() {
        if let Some(s) = sigma {
            key.push(s[k - 1] as i64);
        }
        key.extend(&lam[k - 1]);
        key.extend(&lamp[k - 1]);
    }
    key
}

impl GtPattern for PatternB3 {
    fn family(&self) -> Family {
        Family::B3
    }

    fn n(&self) -> usize {
        self.lam.len()
    }

    fn check_shape(&self) -> Result<()> {
        let n = check_bc_shape(&self.lam, &self.lamp, "B-pattern")?;
        if self.sigma.len() != n {
            return Err(Error::Malformed("B-pattern: expected n flags".into()));
        }
        Ok(())
    }

    fn validate(&self) -> Result<bool> {
        self.check_shape()?;
        if self.sigma.iter().any(|&s| s > 1) {
            return Ok(false);
        }
        let flat = [self.lam.concat(), self.lamp.concat()].concat();
        if !all_same_parity(&flat) || flat.iter().any(|&x| x > 0) {
            return Ok(false);
        }
        if !bc_inequalities(&self.lam, &self.lamp) {
            return Ok(false);
        }
        let integer = flat[0] % 2 == 0;
        if integer {
            for k in 0..self.n() {
                if self.sigma[k] == 1 && self.lamp[k][0] > -2 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn key(&self) -> Vec<i64> {
        bc_key(&self.lam, &self.lamp, Some(&self.sigma))
    }

    fn weight(&self) -> Vec<i64> {
        bc_weight(&self.lam, &self.lamp, Some(&self.sigma))
    }

    fn top(&self) -> Vec<i64> {
        self.lam.last().unwrap().clone()
    }
}

impl GtPattern for PatternC3 {
    fn family(&self) -> Family {
        Family::C3
    }

    fn n(&self) -> usize {
        self.lam.len()
    }

    fn check_shape(&self) -> Result<()> {
        check_bc_shape(&self.lam, &self.lamp, "C-pattern").map(|_| ())
    }

    fn validate(&self) -> Result<bool> {
        self.check_shape()?;
        let flat = [self.lam.concat(), self.lamp.concat()].concat();
        if flat.iter().any(|&x| x > 0 || x % 2 != 0) {
            return Ok(false);
        }
        Ok(bc_inequalities(&self.lam, &self.lamp))
    }

    fn key(&self) -> Vec<i64> {
        bc_key(&self.lam, &self.lamp, None)
    }

    fn weight(&self) -> Vec<i64> {
        bc_weight(&self.lam, &self.lamp, None)
    }

    fn top(&self) -> Vec<i64> {
        self.lam.last().unwrap().clone()
    }
}

impl PatternD3 {
    /// The derived entry `λ'_{k-1,0} = max(λ_{k1}, λ_{k-1,1})` for `k >= 2`; never stored.
    pub fn lamp0(&self, k: usize) -> i64 {
        self.lam[k - 1][0].max(self.lam[k - 2][0])
    }
}

impl GtPattern for PatternD3 {
    fn family(&self) -> Family {
        Family::D3
    }

    fn n(&self) -> usize {
        self.lam.len()
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.lam.len();
        if n == 0 || self.lamp.len() + 1 != n {
            return Err(Error::Malformed(
                "D-pattern: expected n rows λ and n-1 rows λ'".into(),
            ));
        }
        check_rows(&self.lam, |i| i + 1, "D-pattern")?;
        check_rows(&self.lamp, |i| i + 1, "D-pattern")
    }

    fn validate(&self) -> Result<bool> {
        self.check_shape()?;
        let flat = [self.lam.concat(), self.lamp.concat()].concat();
        if !all_same_parity(&flat) {
            return Ok(false);
        }
        // Every entry except the first of each λ row is non-positive; the first
        // entries are bounded in absolute value by the chains below.
        for row in &self.lam {
            if row[1..].iter().any(|&x| x > 0) {
                return Ok(false);
            }
        }
        if self.lamp.concat().iter().any(|&x| x > 0) {
            return Ok(false);
        }
        for k in 2..=self.n() {
            let top = &self.lam[k - 1];
            let mid = &self.lamp[k - 2];
            let low = &self.lam[k - 2];
            // -|λ_k1| >= λ'_{k-1,1} >= λ_k2 >= ... >= λ'_{k-1,k-1} >= λ_kk
            let mut s1 = vec![-top[0].abs()];
            s1.extend(interleave(mid, &top[1..]));
            if !chain(&s1) {
                return Ok(false);
            }
            // -|λ_{k-1,1}| >= λ'_{k-1,1} >= λ_{k-1,2} >= ... >= λ'_{k-1,k-1}
            let mut s2 = vec![-low[0].abs()];
            s2.extend(interleave(mid, &low[1..]));
            if !chain(&s2) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn key(&self) -> Vec<i64> {
        let n = self.n();
        let mut key = self.lam[n - 1].clone();
        for k in (1..n).rev() {
            key.extend(&self.lamp[k - 1]);
            key.extend(&self.lam[k - 1]);
        }
        key
    }

    fn weight(&self) -> Vec<i64> {
        let n = self.n();
        let mut w = vec![self.lam[0][0]];
        for k in 2..=n {
            let nu: i64 = self.lamp0(k) + self.lamp[k - 2].iter().sum::<i64>();
            let l: i64 = self.lam[k - 1].iter().sum();
            let m: i64 = self.lam[k - 2].iter().sum();
            w.push(2 * nu - l - m);
        }
        w
    }

    fn top(&self) -> Vec<i64> {
        self.lam.last().unwrap().clone()
    }
}

/// Dominance in the non-positive convention: `λ_1 >= ... >= λ_n` with `-2λ_1 ∈ Z_+` (B),
/// `-λ_1 ∈ Z_+` (C) or `-λ_1-λ_2 ∈ Z_+` (D), entries all integers or all half-integers.
pub fn check_dominant_s3(series: char, lambda: &[i64]) -> Result<()> {
    let bad = |why: &str| {
        Err(Error::NotDominant(format!(
            "{series}-type weight {}: {why}",
            fmt_doubled(lambda)
        )))
    };
    if lambda.is_empty() {
        return bad("empty");
    }
    if !weakly_decreasing(lambda) {
        return bad("entries must weakly decrease");
    }
    if !all_same_parity(lambda) {
        return bad("entries must be all integers or all half-integers");
    }
    match series {
        'B' => {
            if lambda[0] > 0 {
                return bad("needs -2λ_1 ∈ Z_+");
            }
        }
        'C' => {
            if lambda[0] > 0 || lambda[0] % 2 != 0 {
                return bad("needs -λ_1 ∈ Z_+");
            }
        }
        'D' => {
            if lambda.len() >= 2 && lambda[0] + lambda[1] > 0 {
                return bad("needs -λ_1-λ_2 ∈ Z_+");
            }
            if lambda.len() >= 2 && (lambda[0] + lambda[1]) % 2 != 0 {
                return bad("needs -λ_1-λ_2 ∈ Z_+");
            }
        }
        _ => return bad("unknown series"),
    }
    Ok(())
}

pub fn enumerate_b3(lambda: &[i64]) -> Result<Vec<PatternB3>> {
    check_dominant_s3('B', lambda)?;
    let n = lambda.len();
    let integer = lambda[0] % 2 == 0;
    let mut out = Vec::new();
    let mut lam = vec![Vec::new(); n];
    let mut lamp = vec![Vec::new(); n];
    let mut sigma = vec![0u8; n];
    lam[n - 1] = lambda.to_vec();
    fn rec(
        k: usize,
        integer: bool,
        lam: &mut Vec<Vec<i64>>,
        lamp: &mut Vec<Vec<i64>>,
        sigma: &mut Vec<u8>,
        out: &mut Vec<PatternB3>,
    ) {
        let row = lam[k - 1].clone();
        // λ'_k1 in [λ_k1, 0]; λ'_ki in [λ_ki, λ_{k,i-1}]
        let cap0 = if integer { 0 } else { -1 };
        let bounds: Vec<(i64, i64)> = (0..k)
            .map(|i| (row[i], if i == 0 { cap0 } else { row[i - 1] }))
            .collect();
        for p in boxes(&bounds) {
            for s in [1u8, 0] {
                if s == 1 && integer && p[0] > -2 {
                    continue;
                }
                sigma[k - 1] = s;
                lamp[k - 1] = p.clone();
                if k == 1 {
                    out.push(PatternB3 {
                        sigma: sigma.clone(),
                        lam: lam.clone(),
                        lamp: lamp.clone(),
                    });
                    continue;
                }
                let below: Vec<(i64, i64)> = (0..k - 1).map(|i| (p[i + 1], p[i])).collect();
                for r in boxes(&below) {
                    lam[k - 2] = r;
                    rec(k - 1, integer, lam, lamp, sigma, out);
                }
            }
        }
    }
    rec(n, integer, &mut lam, &mut lamp, &mut sigma, &mut out);
    out.retain(|p| p.validate().unwrap_or(false));
    sort_canonical(&mut out);
    Ok(out)
}

pub fn enumerate_c3(lambda: &[i64]) -> Result<Vec<PatternC3>> {
    check_dominant_s3('C', lambda)?;
    let n = lambda.len();
    let mut out = Vec::new();
    let mut lam = vec![Vec::new(); n];
    let mut lamp = vec![Vec::new(); n];
    lam[n - 1] = lambda.to_vec();
    fn rec(k: usize, lam: &mut Vec<Vec<i64>>, lamp: &mut Vec<Vec<i64>>, out: &mut Vec<PatternC3>) {
        let row = lam[k - 1].clone();
        let bounds: Vec<(i64, i64)> = (0..k)
            .map(|i| (row[i], if i == 0 { 0 } else { row[i - 1] }))
            .collect();
        for p in boxes(&bounds) {
            lamp[k - 1] = p.clone();
            if k == 1 {
                out.push(PatternC3 {
                    lam: lam.clone(),
                    lamp: lamp.clone(),
                });
                continue;
            }
            let below: Vec<(i64, i64)> = (0..k - 1).map(|i| (p[i + 1], p[i])).collect();
            for r in boxes(&below) {
                lam[k - 2] = r;
                rec(k - 1, lam, lamp, out);
            }
        }
    }
    rec(n, &mut lam, &mut lamp, &mut out);
    out.retain(|p| p.validate().unwrap_or(false));
    sort_canonical(&mut out);
    Ok(out)
}

pub fn enumerate_d3(lambda: &[i64]) -> Result<Vec<PatternD3>> {
    check_dominant_s3('D', lambda)?;
    let n = lambda.len();
    let mut out = Vec::new();
    let mut lam = vec![Vec::new(); n];
    let mut lamp = vec![Vec::new(); n.saturating_sub(1)];
    lam[n - 1] = lambda.to_vec();
    fn rec(k: usize, lam: &mut Vec<Vec<i64>>, lamp: &mut Vec<Vec<i64>>, out: &mut Vec<PatternD3>) {
        if k == 1 {
            out.push(PatternD3 {
                lam: lam.clone(),
                lamp: lamp.clone(),
            });
            return;
        }
        let row = lam[k - 1].clone();
        // λ'_{k-1,1} in [λ_k2, -|λ_k1|]; λ'_{k-1,i} in [λ_{k,i+1}, λ_{k,i}]
        let bounds: Vec<(i64, i64)> = (0..k - 1)
            .map(|i| {
                let hi = if i == 0 { -row[0].abs() } else { row[i] };
                (row[i + 1], hi)
            })
            .collect();
        for p in boxes(&bounds) {
            lamp[k - 2] = p.clone();
            // |λ_{k-1,1}| <= -λ'_{k-1,1}; λ_{k-1,i} in [λ'_{k-1,i}, λ'_{k-1,i-1}]
            let below: Vec<(i64, i64)> = (0..k - 1)
                .map(|i| {
                    if i == 0 {
                        (p[0], -p[0])
                    } else {
                        (p[i], p[i - 1])
                    }
                })
                .collect();
            for r in boxes(&below) {
                lam[k - 2] = r;
                rec(k - 1, lam, lamp, out);
            }
        }
    }
    rec(n, &mut lam, &mut lamp, &mut out);
    out.retain(|p| p.validate().unwrap_or(false));
    sort_canonical(&mut out);
    Ok(out)
}

// ----------------------------------------------------------------------------
// Positive-convention orthogonal patterns
// ----------------------------------------------------------------------------

/// Pattern for `o_{2n+1}` along `o_{2n+1} ⊃ o_{2n} ⊃ o_{2n-1} ⊃ ... ⊃ o_2`.
/// `lam[k-1]` is the `o_{2k+1}` row, `lamp[k-1]` the `o_{2k}` row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternB4 {
    pub lam: Vec<Vec<i64>>,
    pub lamp: Vec<Vec<i64>>,
}

/// Pattern for `o_{2n}` along `o_{2n} ⊃ o_{2n-1} ⊃ ... ⊃ o_2`.
/// `lam[k-1]` is the `o_{2k}` row, `lamp[k-1]` the `o_{2k+1}` row (k < n).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternD4 {
    pub lam: Vec<Vec<i64>>,
    pub lamp: Vec<Vec<i64>>,
}

/// `a_1 >= b_1 >= a_2 >= ... >= last >= |tail|` where `last` is the final entry of the chain.
fn chain_abs(seq: &[i64], tail: i64) -> bool {
    chain(seq) && seq.last().is_none_or(|&x| x >= tail.abs())
}

impl GtPattern for PatternB4 {
    fn family(&self) -> Family {
        Family::B4
    }

    fn n(&self) -> usize {
        self.lam.len()
    }

    fn check_shape(&self) -> Result<()> {
        check_bc_shape(&self.lam, &self.lamp, "B4-pattern").map(|_| ())
    }

    fn validate(&self) -> Result<bool> {
        self.check_shape()?;
        let flat = [self.lam.concat(), self.lamp.concat()].concat();
        if !all_same_parity(&flat) {
            return Ok(false);
        }
        for k in 1..=self.n() {
            let l = &self.lam[k - 1];
            let p = &self.lamp[k - 1];
            // λ_k1 >= λ'_k1 >= ... >= λ'_{k,k-1} >= λ_kk >= |λ'_kk|
            if !chain_abs(&interleave(l, &p[..k - 1]), p[k - 1]) {
                return Ok(false);
            }
            if k >= 2 {
                // λ'_k1 >= λ_{k-1,1} >= ... >= λ_{k-1,k-1} >= |λ'_kk|
                if !chain_abs(&interleave(&p[..k - 1], &self.lam[k - 2]), p[k - 1]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn key(&self) -> Vec<i64> {
        let mut key = Vec::new();
        for k in (1..=self.n()).rev() {
            key.extend(&self.lam[k - 1]);
            key.extend(&self.lamp[k - 1]);
        }
        key
    }

    /// Only the bottom `o_2` charge is a weight of these vectors; returned as a one-entry list.
    fn weight(&self) -> Vec<i64> {
        vec![self.lamp[0][0]]
    }

    fn top(&self) -> Vec<i64> {
        self.lam.last().unwrap().clone()
    }
}

impl GtPattern for PatternD4 {
    fn family(&self) -> Family {
        Family::D4
    }

    fn n(&self) -> usize {
        self.lam.len()
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.lam.len();
        if n == 0 || self.lamp.len() + 1 != n {
            return Err(Error::Malformed(
                "D4-pattern: expected n rows λ and n-1 rows λ'".into(),
            ));
        }
        check_rows(&self.lam, |i| i + 1, "D4-pattern")?;
        check_rows(&self.lamp, |i| i + 1, "D4-pattern")
    }

    fn validate(&self) -> Result<bool> {
        self.check_shape()?;
        let flat = [self.lam.concat(), self.lamp.concat()].concat();
        if !all_same_parity(&flat) {
            return Ok(false);
        }
        for k in 2..=self.n() {
            let l = &self.lam[k - 1];
            let p = &self.lamp[k - 2];
            // λ_k1 >= λ'_{k-1,1} >= ... >= λ_{k,k-1} >= λ'_{k-1,k-1} >= |λ_kk|
            if !chain_abs(&interleave(&l[..k - 1], p), l[k - 1]) {
                return Ok(false);
            }
        }
        for k in 1..self.n() {
            let l = &self.lam[k - 1];
            let p = &self.lamp[k - 1];
            // λ'_k1 >= λ_k1 >= ... >= λ_{k,k-1} >= λ'_kk >= |λ_kk|
            if !chain_abs(&interleave(p, &l[..k - 1]), l[k - 1]) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn key(&self) -> Vec<i64> {
        let n = self.n();
        let mut key = self.lam[n - 1].clone();
        for k in (1..n).rev() {
            key.extend(&self.lamp[k - 1]);
            key.extend(&self.lam[k - 1]);
        }
        key
    }

    /// Only the bottom `o_2` charge is a weight of these vectors; returned as a one-entry list.
    fn weight(&self) -> Vec<i64> {
        vec![self.lam[0][0]]
    }

    fn top(&self) -> Vec<i64> {
        self.lam.last().unwrap().clone()
    }
}

/// Dominance in the positive convention: `λ_1 >= ... >= λ_n >= 0` (B) or
/// `λ_1 >= ... >= λ_{n-1} >= |λ_n|` (D), entries all integers or all half-integers.
pub fn check_dominant_s4(series: char, lambda: &[i64]) -> Result<()> {
    let bad = |why: &str| {
        Err(Error::NotDominant(format!(
            "{series}-type weight {} (positive convention): {why}",
            fmt_doubled(lambda)
        )))
    };
    if lambda.is_empty() {
        return bad("empty");
    }
    if !all_same_parity(lambda) || !weakly_decreasing(&lambda[..lambda.len() - 1]) {
        return bad("entries must weakly decrease and share parity");
    }
    let n = lambda.len();
    match series {
        'B' => {
            if !weakly_decreasing(lambda) || lambda[n - 1] < 0 {
                return bad("needs 2λ_n ∈ Z_+");
            }
        }
        'D' => {
            if n >= 2 && lambda[n - 2] < lambda[n - 1].abs() {
                return bad("needs λ_(n-1) >= |λ_n|");
            }
        }
        _ => return bad("unknown series"),
    }
    Ok(())
}

pub fn enumerate_b4(lambda: &[i64]) -> Result<Vec<PatternB4>> {
    check_dominant_s4('B', lambda)?;
    let n = lambda.len();
    let mut out = Vec::new();
    let mut lam = vec![Vec::new(); n];
    let mut lamp = vec![Vec::new(); n];
    lam[n - 1] = lambda.to_vec();
    fn rec(k: usize, lam: &mut Vec<Vec<i64>>, lamp: &mut Vec<Vec<i64>>, out: &mut Vec<PatternB4>) {
        let row = lam[k - 1].clone();
        // λ'_ki in [λ_{k,i+1}, λ_ki] for i < k; λ'_kk in [-λ_kk, λ_kk]
        let bounds: Vec<(i64, i64)> = (0..k)
            .map(|i| {
                if i + 1 < k {
                    (row[i + 1], row[i])
                } else {
                    (-row[i], row[i])
                }
            })
            .collect();
        for p in boxes(&bounds) {
            lamp[k - 1] = p.clone();
            if k == 1 {
                out.push(PatternB4 {
                    lam: lam.clone(),
                    lamp: lamp.clone(),
                });
                continue;
            }
            let below: Vec<(i64, i64)> = (0..k - 1)
                .map(|i| {
                    (
                        if i + 1 < k - 1 {
                            p[i + 1]
                        } else {
                            p[k - 1].abs()
                        },
                        p[i],
                    )
                })
                .collect();
            for r in boxes(&below) {
                lam[k - 2] = r;
                rec(k - 1, lam, lamp, out);
            }
        }
    }
    rec(n, &mut lam, &mut lamp, &mut out);
    out.retain(|p| p.validate().unwrap_or(false));
    sort_canonical(&mut out);
    Ok(out)
}

pub fn enumerate_d4(lambda: &[i64]) -> Result<Vec<PatternD4>> {
    check_dominant_s4('D', lambda)?;
    let n = lambda.len();
    let mut out = Vec::new();
    let mut lam = vec![Vec::new(); n];
    let mut lamp = vec![Vec::new(); n.saturating_sub(1)];
    lam[n - 1] = lambda.to_vec();
    fn rec(k: usize, lam: &mut Vec<Vec<i64>>, lamp: &mut Vec<Vec<i64>>, out: &mut Vec<PatternD4>) {
        if k == 1 {
            out.push(PatternD4 {
                lam: lam.clone(),
                lamp: lamp.clone(),
            });
            return;
        }
        let row = lam[k - 1].clone();
        // λ'_{k-1,i} in [λ_{k,i+1}, λ_ki] with the last one bounded below by |λ_kk|
        let bounds: Vec<(i64, i64)> = (0..k - 1)
            .map(|i| {
                let lo = if i + 1 < k - 1 {
                    row[i + 1]
                } else {
                    row[i + 1].max(row[k - 1].abs())
                };
                (lo, row[i])
            })
            .collect();
        for p in boxes(&bounds) {
            lamp[k - 2] = p.clone();
            // λ_{k-1,i} in [λ'_{k-1,i+1}, λ'_{k-1,i}], last one in [-λ'_{k-1,k-1}, λ'_{k-1,k-1}]
            let below: Vec<(i64, i64)> = (0..k - 1)
                .map(|i| {
                    if i + 1 < k - 1 {
                        (p[i + 1], p[i])
                    } else {
                        (-p[i], p[i])
                    }
                })
                .collect();
            for r in boxes(&below) {
                lam[k - 2] = r;
                rec(k - 1, lam, lamp, out);
            }
        }
    }
    rec(n, &mut lam, &mut lamp, &mut out);
    out.retain(|p| p.validate().unwrap_or(false));
    sort_canonical(&mut out);
    Ok(out)
}

// ----------------------------------------------------------------------------
// Family-tagged wrapper
// ----------------------------------------------------------------------------

/// Any pattern, tagged by family for serialization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum AnyPattern {
    A(GTPatternA),
    B3(PatternB3),
    C3(PatternC3),
    D3(PatternD3),
    B4(PatternB4),
    D4(PatternD4),
}

impl AnyPattern {
    pub fn validate(&self) -> Result<bool> {
        match self {
            AnyPattern::A(p) => p.validate(),
            AnyPattern::B3(p) => p.validate(),
            AnyPattern::C3(p) => p.validate(),
            AnyPattern::D3(p) => p.validate(),
            AnyPattern::B4(p) => p.validate(),
            AnyPattern::D4(p) => p.validate(),
        }
    }

    pub fn weight(&self) -> Vec<i64> {
        match self {
            AnyPattern::A(p) => p.weight(),
            AnyPattern::B3(p) => p.weight(),
            AnyPattern::C3(p) => p.weight(),
            AnyPattern::D3(p) => p.weight(),
            AnyPattern::B4(p) => p.weight(),
            AnyPattern::D4(p) => p.weight(),
        }
    }

    pub fn key(&self) -> Vec<i64> {
        match self {
            AnyPattern::A(p) => p.key(),
            AnyPattern::B3(p) => p.key(),
            AnyPattern::C3(p) => p.key(),
            AnyPattern::D3(p) => p.key(),
            AnyPattern::B4(p) => p.key(),
            AnyPattern::D4(p) => p.key(),
        }
    }
}

/// All patterns of a family with top row `lambda` (doubled), in canonical order.
pub fn enumerate(family: Family, lambda: &[i64]) -> Result<Vec<AnyPattern>> {
    Ok(match family {
        Family::A => enumerate_a(lambda)?
            .into_iter()
            .map(AnyPattern::A)
            .collect(),
        Family::B3 => enumerate_b3(lambda)?
            .into_iter()
            .map(AnyPattern::B3)
            .collect(),
        Family::C3 => enumerate_c3(lambda)?
            .into_iter()
            .map(AnyPattern::C3)
            .collect(),
        Family::D3 => enumerate_d3(lambda)?
            .into_iter()
            .map(AnyPattern::D3)
            .collect(),
        Family::B4 => enumerate_b4(lambda)?
            .into_iter()
            .map(AnyPattern::B4)
            .collect(),
        Family::D4 => enumerate_d4(lambda)?
            .into_iter()
            .map(AnyPattern::D4)
            .collect(),
    })
}

/// Converts between the non-positive (s3) convention and the conventional dominant
/// (positive) convention: reverse the entries and negate. The map is an involution.
pub fn flip_convention(lambda: &[i64]) -> Vec<i64> {
    lambda.iter().rev().map(|x| -x).collect()
}

/// Parses a comma list of integers and half-integers (`p/2`) into doubled integers.
pub fn parse_doubled(s: &str) -> Result<Vec<i64>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let r: Rat = t.parse()?;
            r.to_doubled().ok_or_else(|| {
                Error::Parse(format!("{:?} is not an integer or half-integer", t.trim()))
            })
        })
        .collect()
}

/// Formats doubled integers as a comma list, half-integers written `p/2`.
pub fn fmt_doubled(xs: &[i64]) -> String {
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

// ----------------------------------------------------------------------------
// Tableaux
// ----------------------------------------------------------------------------

/// Semistandard tableau: rows weakly increase, columns strictly increase; entries in 1..n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemistandardTableau {
    pub rows: Vec<Vec<usize>>,
}

impl SemistandardTableau {
    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn is_semistandard(&self, n: usize) -> bool {
        let shape = self.shape();
        if shape.windows(2).any(|w| w[0] < w[1]) {
            return false;
        }
        for (r, row) in self.rows.iter().enumerate() {
            if row.iter().any(|&x| x == 0 || x > n) || row.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            if r > 0
                && row
                    .iter()
                    .enumerate()
                    .any(|(c, &x)| self.rows[r - 1][c] >= x)
            {
                return false;
            }
        }
        true
    }

    /// Content: number of entries equal to `k`, for k = 1..n.
    pub fn content(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0; n];
        for &x in self.rows.iter().flatten() {
            c[x - 1] += 1;
        }
        c
    }
}

/// Strip rule: entry `k` fills the boxes of `λ^(k) / λ^(k-1)`.
pub fn pattern_to_tableau(p: &GTPatternA) -> Result<SemistandardTableau> {
    if !p.validate()? {
        return Err(Error::Domain("not a valid pattern".into()));
    }
    if p.rows.concat().iter().any(|&x| x < 0 || x % 2 != 0) {
        return Err(Error::Domain(
            "the tableau bijection needs non-negative integer entries".into(),
        ));
    }
    let n = p.n();
    let top = p.row(n);
    let mut rows: Vec<Vec<usize>> = top
        .iter()
        .map(|&x| Vec::with_capacity((x / 2) as usize))
        .collect();
    for k in 1..=n {
        let cur = p.row(k);
        for i in 0..k {
            let prev = if i < k - 1 { p.row(k - 1)[i] / 2 } else { 0 };
            for _ in prev..cur[i] / 2 {
                rows[i].push(k);
            }
        }
    }
    while rows.last().is_some_and(Vec::is_empty) {
        rows.pop();
    }
    Ok(SemistandardTableau { rows })
}

/// Inverse of [`pattern_to_tableau`]: row `k` counts entries `<= k` in each tableau row.
pub fn tableau_to_pattern(t: &SemistandardTableau, n: usize) -> Result<GTPatternA> {
    if !t.is_semistandard(n) || t.rows.len() > n {
        return Err(Error::Domain(
            "not a semistandard tableau with entries in 1..n".into(),
        ));
    }
    let rows = (1..=n)
        .rev()
        .map(|k| {
            (0..k)
                .map(|i| {
                    t.rows
                        .get(i)
                        .map_or(0, |r| r.iter().filter(|&&x| x <= k).count() as i64 * 2)
                })
                .collect()
        })
        .collect();
    Ok(GTPatternA { rows })
}

/// All semistandard tableaux of a partition shape with entries in `1..n`.
pub fn enumerate_tableaux(shape: &[usize], n: usize) -> Vec<SemistandardTableau> {
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut rows: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l]).collect();
    let mut out = Vec::new();
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        rows: &mut Vec<Vec<usize>>,
        n: usize,
        out: &mut Vec<SemistandardTableau>,
    ) {
        if idx == cells.len() {
            out.push(SemistandardTableau { rows: rows.clone() });
            return;
        }
        let (r, c) = cells[idx];
        let lo_row = if c > 0 { rows[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=n {
            rows[r][c] = v;
            rec(idx + 1, cells, rows, n, out);
        }
        rows[r][c] = 0;
    }
    rec(0, &cells, &mut rows, n, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(xs: &[i64]) -> Vec<i64> {
        xs.iter().map(|x| 2 * x).collect()
    }

    #[test]
    fn weight_syntax() {
        assert_eq!(parse_doubled("-1/2,-1/2").unwrap(), vec![-1, -1]);
        assert_eq!(parse_doubled("2,1,0").unwrap(), vec![4, 2, 0]);
        assert_eq!(fmt_doubled(&parse_doubled("3/2,-1").unwrap()), "(3/2,-1)");
        assert!(matches!(parse_doubled("1/3"), Err(Error::Parse(_))));
        assert!(matches!(parse_doubled("x"), Err(Error::Parse(_))));
    }

    #[test]
    fn a_validation() {
        let p = GTPatternA {
            rows: vec![d(&[2, 1, 0]), d(&[2, 0]), d(&[1])],
        };
        assert!(p.validate().unwrap());
        let q = GTPatternA {
            rows: vec![d(&[2, 1, 0]), d(&[0, 2]), d(&[1])],
        };
        assert!(!q.validate().unwrap());
        let bad = GTPatternA {
            rows: vec![d(&[2, 1, 0]), d(&[2])],
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn a_counts() {
        assert_eq!(enumerate_a(&d(&[0, 0, 0])).unwrap().len(), 1);
        assert_eq!(enumerate_a(&d(&[2, 1, 0])).unwrap().len(), 8);
        assert!(enumerate_a(&d(&[0, 1])).is_err());
    }

    #[test]
    fn a_weights() {
        let ps = enumerate_a(&d(&[1, 0])).unwrap();
        let top = ps.iter().find(|p| p.entry(1, 1) == 2).unwrap();
        assert_eq!(top.weight(), d(&[1, 0]));
        let total = enumerate_a(&d(&[2, 1, 0]))
            .unwrap()
            .iter()
            .map(|p| p.weight())
            .fold(vec![0; 3], |acc, w| {
                acc.iter().zip(&w).map(|(a, b)| a + b).collect()
            });
        assert_eq!(total, d(&[8, 8, 8]));
    }

    #[test]
    fn b3_sigma_rule() {
        let p = PatternB3 {
            sigma: vec![1],
            lam: vec![d(&[-1])],
            lamp: vec![d(&[0])],
        };
        assert!(!p.validate().unwrap());
        let q = PatternB3 {
            sigma: vec![1],
            lam: vec![d(&[-1])],
            lamp: vec![d(&[-1])],
        };
        assert!(q.validate().unwrap());
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_c3(&d(&[0, -1])).unwrap().len(), 4);
        assert_eq!(enumerate_c3(&d(&[-1, -1])).unwrap().len(), 5);
        assert_eq!(enumerate_b3(&d(&[-1])).unwrap().len(), 3);
        assert_eq!(enumerate_b3(&[-1, -1]).unwrap().len(), 4);
        assert_eq!(enumerate_d3(&d(&[0, -1])).unwrap().len(), 4);
        let b4 = enumerate_b4(&d(&[1])).unwrap();
        assert_eq!(
            b4.iter().map(|p| p.lamp[0][0] / 2).collect::<Vec<_>>(),
            vec![1, 0, -1]
        );
        assert_eq!(enumerate_b4(&d(&[1, 0])).unwrap().len(), 5);
        assert_eq!(enumerate_d4(&d(&[1, 0])).unwrap().len(), 4);
    }

    #[test]
    fn tableau_examples() {
        let p = GTPatternA {
            rows: vec![d(&[1])],
        };
        assert_eq!(pattern_to_tableau(&p).unwrap().rows, vec![vec![1]]);
        let top = GTPatternA {
            rows: vec![d(&[2, 1, 0]), d(&[2, 1]), d(&[2])],
        };
        assert_eq!(
            pattern_to_tableau(&top).unwrap().rows,
            vec![vec![1, 1], vec![2]]
        );
        for p in enumerate_a(&d(&[2, 1, 0])).unwrap() {
            let t = pattern_to_tableau(&p).unwrap();
            assert_eq!(tableau_to_pattern(&t, 3).unwrap(), p);
        }
        let neg = GTPatternA {
            rows: vec![d(&[0, -1]), d(&[0])],
        };
        assert!(pattern_to_tableau(&neg).is_err());
    }

    #[test]
    fn flip_is_involution() {
        let l = vec![0, -2, -3];
        assert_eq!(flip_convention(&flip_convention(&l)), l);
        assert_eq!(flip_convention(&d(&[0, -1])), d(&[1, 0]));
    }
}
