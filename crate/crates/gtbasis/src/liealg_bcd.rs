//! Irreducible `o_N` and `sp_{2n}` modules built exactly from the highest weight, the
//! lowering operators `z_ia`, the polynomials `Z_ab(u)`, the bases along
//! `g_1 ⊂ g_2 ⊂ ... ⊂ g_n`, and the orthogonal bases along `o_N ⊃ o_{N-1} ⊃ ... ⊃ o_2`.
//!
//! Weights are doubled integers. Rows and columns of the defining matrices are labelled
//! `-n..n`, with `0` present only for type B.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use crate::branching::{branch_bcd, weyl_dim};
use crate::exact::{
    independent_subset, inverse, is_zero_vec, nullspace, poly_mul, solve_in_span, unit_vec,
    vec_add, vec_scale, vec_sub, zero_vec, OpPoly, Rat, SparseMat, Vector,
};
use crate::patterns::{
    check_dominant_s3, check_dominant_s4, enumerate_b3, enumerate_b4, enumerate_c3, enumerate_d3,
    enumerate_d4, flip_convention, GtPattern, PatternB3, PatternB4, PatternC3, PatternD3,
    PatternD4,
};
use crate::yangian::{build_tensor_module, HWString, Twist, M, P};
use crate::{Error, Result, Series};

/// Largest rank accepted by the constructions.
pub const MAX_RANK: usize = 3;
/// Default dimension cap.
pub const MAX_DIM: usize = 600;

type DefMat = Vec<Vec<i64>>;
/// Vector-valued polynomial in `u`, coefficients in increasing degree.
pub type VecPoly = Vec<Vector>;

// ----------------------------------------------------------------------------
// The algebra
// ----------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalAlgebra {
    pub series: Series,
    pub n: usize,
}

impl ClassicalAlgebra {
    pub fn new(series: Series, n: usize) -> Result<Self> {
        if series == Series::A {
            return Err(Error::Domain("expected series B, C or D".into()));
        }
        if n == 0 {
            return Err(Error::Domain("rank must be positive".into()));
        }
        Ok(ClassicalAlgebra { series, n })
    }

    pub fn orthogonal(&self) -> bool {
        self.series != Series::C
    }

    pub fn contains(&self, i: i64) -> bool {
        i.unsigned_abs() as usize <= self.n && (i != 0 || self.series == Series::B)
    }

    /// Row labels `-n..n` in increasing order.
    pub fn indices(&self) -> Vec<i64> {
        let n = self.n as i64;
        (-n..=n).filter(|&i| self.contains(i)).collect()
    }

    pub fn size(&self) -> usize {
        2 * self.n + usize::from(self.series == Series::B)
    }

    fn pos(&self, i: i64) -> usize {
        let n = self.n as i64;
        if self.series == Series::B || i < 0 {
            (i + n) as usize
        } else {
            (i + n - 1) as usize
        }
    }

    pub fn theta(&self, i: i64, j: i64) -> i64 {
        if self.orthogonal() {
            1
        } else {
            i.signum() * j.signum()
        }
    }

    /// `ρ_i` for `i >= 1`.
    pub fn rho(&self, i: i64) -> Rat {
        match self.series {
            Series::B => Rat::new(1 - 2 * i, 2),
            Series::C => Rat::int(-i),
            _ => Rat::int(1 - i),
        }
    }

    /// `F_ij = E_ij - θ_ij E_{-j,-i}` in the defining representation.
    pub fn defining(&self, i: i64, j: i64) -> DefMat {
        let s = self.size();
        let mut m = vec![vec![0; s]; s];
        m[self.pos(i)][self.pos(j)] += 1;
        m[self.pos(-j)][self.pos(-i)] -= self.theta(i, j);
        m
    }

    /// Weight of `F_ij` in the coordinates `F_11..F_nn`.
    pub fn root(&self, i: i64, j: i64) -> Vec<i64> {
        let mut w = vec![0; self.n];
        for (x, s) in [(i, 1), (j, -1)] {
            if x != 0 {
                w[x.unsigned_abs() as usize - 1] += s * x.signum();
            }
        }
        w
    }

    /// Labels `(i, j)` of the simple root vectors `F_ij`.
    pub fn simple_roots(&self) -> Vec<(i64, i64)> {
        let n = self.n as i64;
        let mut out: Vec<(i64, i64)> = (1..n).map(|k| (k, k + 1)).collect();
        match self.series {
            Series::B => out.insert(0, (0, 1)),
            Series::C => out.insert(0, (-1, 1)),
            _ if n >= 2 => out.insert(0, (-1, 2)),
            _ => {}
        }
        out
    }

    /// Canonical representative of `{F_ij, F_{-j,-i}}`; Cartan elements use `i > 0`.
    fn canonical(&self, i: i64, j: i64) -> bool {
        if i == j {
            return i > 0;
        }
        (i, j) <= (-j, -i)
    }
}

fn def_mul(a: &DefMat, b: &DefMat) -> DefMat {
    let s = a.len();
    let mut m = vec![vec![0; s]; s];
    for i in 0..s {
        for k in 0..s {
            if a[i][k] != 0 {
                for j in 0..s {
                    m[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    m
}

fn def_comm(a: &DefMat, b: &DefMat) -> DefMat {
    let x = def_mul(a, b);
    let y = def_mul(b, a);
    x.iter()
        .zip(&y)
        .map(|(r, t)| r.iter().zip(t).map(|(p, q)| p - q).collect())
        .collect()
}

fn def_zero(a: &DefMat) -> bool {
    a.iter().all(|r| r.iter().all(|&x| x == 0))
}

/// `c` with `a = c b`, if any.
fn def_ratio(a: &DefMat, b: &DefMat) -> Option<Rat> {
    let (r, c) = (0..b.len())
        .flat_map(|r| (0..b.len()).map(move |c| (r, c)))
        .find(|&(r, c)| b[r][c] != 0)?;
    let k = Rat::new(a[r][c], b[r][c]);
    let ok = a.iter().zip(b).all(|(x, y)| {
        x.iter()
            .zip(y)
            .all(|(&p, &q)| Rat::int(p) == &k * &Rat::int(q))
    });
    ok.then_some(k)
}

fn add_w(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_w(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mat_vec(m: &[Vector], v: &[Rat]) -> Vector {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, _)| !a.is_zero())
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect()
}

fn mat_col(m: &[Vector], j: usize) -> Vector {
    m.iter().map(|row| row[j].clone()).collect()
}

fn half(x: i64) -> Rat {
    Rat::new(x, 2)
}

/// Nonnegative integer exponent from a doubled difference.
fn exponent(d: i64) -> Result<usize> {
    if d < 0 || d % 2 != 0 {
        return Err(Error::Contract(format!("invalid exponent {}", half(d))));
    }
    Ok((d / 2) as usize)
}

/// Integer steps from `lo` up to `hi`, exclusive: `lo, lo+1, ..., hi-1`.
fn steps(lo: &Rat, hi: &Rat) -> Result<Vec<Rat>> {
    let d = hi - lo;
    if !d.is_integer() {
        return Err(Error::Contract(format!("non-integral range {lo}..{hi}")));
    }
    let k = d.to_i64().unwrap();
    Ok((0..k.max(0)).map(|t| lo + &Rat::int(t)).collect())
}

// ----------------------------------------------------------------------------
// The module
// ----------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightBlock {
    pub weight: Vec<i64>,
    pub offset: usize,
    pub len: usize,
}

struct PlusBlock {
    coords: Vec<usize>,
    basis: Vec<Vector>,
    left: Vec<Vector>,
}

/// A raising set defining a subalgebra's highest vectors.
#[derive(Clone)]
pub struct Raising {
    pub key: String,
    pub ops: Vec<SparseMat>,
    /// Weight component not seen by the subalgebra's Cartan, if any.
    pub ignore: Option<usize>,
}

#[derive(Clone)]
pub struct BcdIrrep {
    pub alg: ClassicalAlgebra,
    pub lambda: Vec<i64>,
    pub weights: Vec<Vec<i64>>,
    pub blocks: Vec<WeightBlock>,
    block_of: Vec<usize>,
    gram: Vec<Vec<Vector>>,
    f: BTreeMap<(i64, i64), SparseMat>,
    plus_cache: RefCell<HashMap<(String, usize), Rc<PlusBlock>>>,
    group_cache: RefCell<HashMap<(String, usize), Rc<Vec<Vec<usize>>>>>,
}

impl fmt::Debug for BcdIrrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BcdIrrep({}{}, λ={:?}, dim={})",
            self.alg.series.letter(),
            self.alg.n,
            self.lambda,
            self.dim()
        )
    }
}

struct Space {
    dim: usize,
    g: Vec<Vector>,
    e: Vec<Option<Vec<Vector>>>,
    f: Vec<Option<Vec<Vector>>>,
}

pub fn build_bcd_irrep(series: Series, lambda: &[i64]) -> Result<BcdIrrep> {
    build_bcd_irrep_capped(series, lambda, MAX_DIM)
}

/// Builds `V(λ)` (non-positive convention, doubled) as the quotient of the module generated from
/// the highest vector by the kernel of the contravariant form.
pub fn build_bcd_irrep_capped(series: Series, lambda: &[i64], max_dim: usize) -> Result<BcdIrrep> {
    let alg = ClassicalAlgebra::new(series, lambda.len())?;
    if alg.n > MAX_RANK {
        return Err(Error::TooLarge(format!(
            "rank {} exceeds the cap {MAX_RANK}",
            alg.n
        )));
    }
    check_dominant_s3(series.letter(), lambda)?;
    let expected = if series == Series::D && alg.n == 1 {
        1
    } else {
        weyl_dim(series, lambda)?
    };
    if expected > max_dim as u64 {
        return Err(Error::TooLarge(format!(
            "dimension {expected} exceeds the cap {max_dim}"
        )));
    }

    let simples = alg.simple_roots();
    let ns = simples.len();
    let roots2: Vec<Vec<i64>> = simples
        .iter()
        .map(|&(i, j)| alg.root(i, j).iter().map(|x| 2 * x).collect())
        .collect();
    let hcoef: Vec<Vec<Rat>> = simples
        .iter()
        .map(|&(i, j)| {
            let d = def_comm(&alg.defining(i, j), &alg.defining(j, i));
            (1..=alg.n as i64)
                .map(|k| Rat::int(d[alg.pos(k)][alg.pos(k)]))
                .collect()
        })
        .collect();
    let h_at =
        |a: usize, w: &[i64]| -> Rat { hcoef[a].iter().zip(w).map(|(c, &x)| c * &half(x)).sum() };

    let mut spaces: BTreeMap<Vec<i64>, Space> = BTreeMap::new();
    spaces.insert(
        lambda.to_vec(),
        Space {
            dim: 1,
            g: vec![vec![Rat::one()]],
            e: vec![None; ns],
            f: vec![None; ns],
        },
    );
    let mut levels: Vec<Vec<Vec<i64>>> = vec![vec![lambda.to_vec()]];
    let mut total = 1usize;
    loop {
        let prev = levels.last().unwrap();
        let cands: BTreeSet<Vec<i64>> = prev
            .iter()
            .flat_map(|nu| roots2.iter().map(move |r| sub_w(nu, r)))
            .collect();
        let mut next = Vec::new();
        for mu in cands.into_iter().rev() {
            let ups: Vec<usize> = (0..ns)
                .filter(|&a| spaces.contains_key(&add_w(&mu, &roots2[a])))
                .collect();
            let spanning: Vec<(usize, usize)> = ups
                .iter()
                .flat_map(|&a| (0..spaces[&add_w(&mu, &roots2[a])].dim).map(move |j| (a, j)))
                .collect();
            // acts[a][t] = e_a applied to spanning vector t, in V_{μ+α_a}
            let mut gacts: Vec<Vec<Vector>> = vec![Vec::new(); ns];
            let mut acts: Vec<Vec<Vector>> = vec![Vec::new(); ns];
            for &a in &ups {
                let up_a = add_w(&mu, &roots2[a]);
                let sa = &spaces[&up_a];
                for &(b, w) in &spanning {
                    let mut v = zero_vec(sa.dim);
                    if a == b {
                        v[w] = h_at(a, &up_a);
                    }
                    let up_b = add_w(&mu, &roots2[b]);
                    if let (Some(ea), Some(fb)) = (&spaces[&up_b].e[a], &sa.f[b]) {
                        let x = mat_col(ea, w);
                        v = vec_add(&v, &mat_vec(fb, &x));
                    }
                    gacts[a].push(mat_vec(&sa.g, &v));
                    acts[a].push(v);
                }
            }
            let gram: Vec<Vector> = spanning
                .iter()
                .map(|&(a, u)| {
                    (0..spanning.len())
                        .map(|t| gacts[a][t][u].clone())
                        .collect()
                })
                .collect();
            let sel = independent_subset(&gram);
            if sel.is_empty() {
                continue;
            }
            let d = sel.len();
            total += d;
            if total > max_dim {
                return Err(Error::TooLarge(format!(
                    "dimension exceeds the cap {max_dim}"
                )));
            }
            let g: Vec<Vector> = sel
                .iter()
                .map(|&r| sel.iter().map(|&c| gram[r][c].clone()).collect())
                .collect();
            let ginv = inverse(&g).ok_or_else(|| Error::Contract("singular Gram block".into()))?;
            let coords: Vec<Vector> = (0..spanning.len())
                .map(|t| {
                    let col: Vector = sel.iter().map(|&r| gram[r][t].clone()).collect();
                    mat_vec(&ginv, &col)
                })
                .collect();
            let mut fmaps = vec![None; ns];
            let mut emaps = vec![None; ns];
            for &a in &ups {
                let cols: Vec<usize> = (0..spanning.len())
                    .filter(|&t| spanning[t].0 == a)
                    .collect();
                fmaps[a] = Some(
                    (0..d)
                        .map(|r| cols.iter().map(|&t| coords[t][r].clone()).collect())
                        .collect(),
                );
                let dim_a = spaces[&add_w(&mu, &roots2[a])].dim;
                emaps[a] = Some(
                    (0..dim_a)
                        .map(|r| sel.iter().map(|&t| acts[a][t][r].clone()).collect())
                        .collect(),
                );
            }
            spaces.insert(
                mu.clone(),
                Space {
                    dim: d,
                    g,
                    e: emaps,
                    f: fmaps,
                },
            );
            next.push(mu);
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    if total as u64 != expected {
        return Err(Error::Contract(format!(
            "constructed dimension {total} differs from the Weyl dimension {expected}"
        )));
    }

    // global assembly
    let mut blocks = Vec::new();
    let mut offset_of: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut weights = Vec::new();
    let mut block_of = Vec::new();
    let mut gram = Vec::new();
    for level in &levels {
        for w in level {
            let sp = &spaces[w];
            offset_of.insert(w.clone(), weights.len());
            for _ in 0..sp.dim {
                weights.push(w.clone());
                block_of.push(blocks.len());
            }
            blocks.push(WeightBlock {
                weight: w.clone(),
                offset: offset_of[w],
                len: sp.dim,
            });
            gram.push(sp.g.clone());
        }
    }
    let dim = weights.len();
    let mut emat = vec![SparseMat::zeros(dim, dim); ns];
    let mut fmat = vec![SparseMat::zeros(dim, dim); ns];
    for (w, sp) in &spaces {
        let o = offset_of[w];
        for a in 0..ns {
            let up = add_w(w, &roots2[a]);
            if let Some(m) = &sp.e[a] {
                let ou = offset_of[&up];
                for (r, row) in m.iter().enumerate() {
                    for (c, x) in row.iter().enumerate() {
                        if !x.is_zero() {
                            emat[a].set(ou + r, o + c, x.clone());
                        }
                    }
                }
            }
            if let Some(m) = &sp.f[a] {
                let ou = offset_of[&up];
                for (r, row) in m.iter().enumerate() {
                    for (c, x) in row.iter().enumerate() {
                        if !x.is_zero() {
                            fmat[a].set(o + r, ou + c, x.clone());
                        }
                    }
                }
            }
        }
    }

    // all root vectors by commutators of simple ones
    let bfs = |gens: &[(DefMat, SparseMat, Vec<i64>)]| -> HashMap<Vec<i64>, (DefMat, SparseMat)> {
        let mut found: HashMap<Vec<i64>, (DefMat, SparseMat)> = HashMap::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for (d, m, w) in gens {
            found.insert(w.clone(), (d.clone(), m.clone()));
            queue.push(w.clone());
        }
        while let Some(w) = queue.pop() {
            let (xd, xm) = found[&w].clone();
            for (d, m, gw) in gens {
                let nw = add_w(&w, gw);
                if found.contains_key(&nw) {
                    continue;
                }
                let yd = def_comm(d, &xd);
                if def_zero(&yd) {
                    continue;
                }
                found.insert(nw.clone(), (yd, SparseMat::commutator(m, &xm)));
                queue.push(nw);
            }
        }
        found
    };
    let pos_gens: Vec<_> = simples
        .iter()
        .enumerate()
        .map(|(a, &(i, j))| (alg.defining(i, j), emat[a].clone(), alg.root(i, j)))
        .collect();
    let neg_gens: Vec<_> = simples
        .iter()
        .enumerate()
        .map(|(a, &(i, j))| (alg.defining(j, i), fmat[a].clone(), alg.root(j, i)))
        .collect();
    let pos = bfs(&pos_gens);
    let neg = bfs(&neg_gens);
    let mut f = BTreeMap::new();
    for &i in &alg.indices() {
        for &j in &alg.indices() {
            if i == j {
                if i != 0 {
                    let k = i.unsigned_abs() as usize - 1;
                    let d: Vec<Rat> = weights.iter().map(|w| half(w[k] * i.signum())).collect();
                    f.insert((i, i), SparseMat::diag(&d));
                }
                continue;
            }
            let d = alg.defining(i, j);
            if def_zero(&d) {
                continue;
            }
            let table = if i < j { &pos } else { &neg };
            let (rd, rm) = table
                .get(&alg.root(i, j))
                .ok_or_else(|| Error::Contract(format!("root vector for F_{i}_{j} not found")))?;
            let c = def_ratio(&d, rd)
                .ok_or_else(|| Error::Contract("root spaces are not one-dimensional".into()))?;
            f.insert((i, j), rm.scale(&c));
        }
    }

    Ok(BcdIrrep {
        alg,
        lambda: lambda.to_vec(),
        weights,
        blocks,
        block_of,
        gram,
        f,
        plus_cache: RefCell::new(HashMap::new()),
        group_cache: RefCell::new(HashMap::new()),
    })
}

impl BcdIrrep {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn n(&self) -> usize {
        self.alg.n
    }

    pub fn series(&self) -> Series {
        self.alg.series
    }

    /// `F_ij`, or a zero matrix when `F_ij = 0`.
    pub fn gen(&self, i: i64, j: i64) -> SparseMat {
        self.f
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| SparseMat::zeros(self.dim(), self.dim()))
    }

    /// All nonzero generators keyed by label.
    pub fn generators(&self) -> &BTreeMap<(i64, i64), SparseMat> {
        &self.f
    }

    pub fn highest(&self) -> Vector {
        unit_vec(self.dim(), 0)
    }

    fn apply(&self, i: i64, j: i64, v: &[Rat]) -> Vector {
        match self.f.get(&(i, j)) {
            Some(m) => m.apply(v),
            None => zero_vec(v.len()),
        }
    }

    /// Contravariant form, `<ξ,ξ> = 1` and `<F_ij u, v> = <u, F_ji v>`.
    pub fn form(&self, u: &[Rat], v: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (b, blk) in self.blocks.iter().enumerate() {
            let us = &u[blk.offset..blk.offset + blk.len];
            if is_zero_vec(us) {
                continue;
            }
            let gv = mat_vec(&self.gram[b], &v[blk.offset..blk.offset + blk.len]);
            acc += &us.iter().zip(&gv).map(|(a, c)| a * c).sum::<Rat>();
        }
        acc
    }

    pub fn gram_of(&self, vs: &[Vector]) -> Vec<Vector> {
        vs.iter()
            .map(|a| vs.iter().map(|b| self.form(a, b)).collect())
            .collect()
    }

    /// The weight shared by all nonzero coordinates of `v`.
    pub fn weight_of(&self, v: &[Rat]) -> Option<Vec<i64>> {
        let mut w: Option<&Vec<i64>> = None;
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                match w {
                    None => w = Some(&self.weights[i]),
                    Some(u) if *u != self.weights[i] => return None,
                    _ => {}
                }
            }
        }
        w.cloned()
    }

    /// Expansion of the defining-matrix commutator in canonical generators.
    fn decompose(&self, c: &DefMat) -> Vec<((i64, i64), Rat)> {
        let mut out = Vec::new();
        for &p in &self.alg.indices() {
            for &q in &self.alg.indices() {
                if !self.alg.canonical(p, q) {
                    continue;
                }
                let d = self.alg.defining(p, q);
                let (r0, c0) = (self.alg.pos(p), self.alg.pos(q));
                if d[r0][c0] == 0 || c[r0][c0] == 0 {
                    continue;
                }
                out.push(((p, q), Rat::new(c[r0][c0], d[r0][c0])));
            }
        }
        out
    }

    /// Number of pairs `(F_ij, F_kl)` whose module commutator differs from the defining one.
    pub fn commutator_failures(&self) -> usize {
        let keys: Vec<(i64, i64)> = self.f.keys().cloned().collect();
        let mut bad = 0;
        for (x, &(i, j)) in keys.iter().enumerate() {
            for &(k, l) in &keys[x + 1..] {
                let c = def_comm(&self.alg.defining(i, j), &self.alg.defining(k, l));
                let mut want = SparseMat::zeros(self.dim(), self.dim());
                let mut rebuilt = vec![vec![Rat::zero(); self.alg.size()]; self.alg.size()];
                for ((p, q), coef) in self.decompose(&c) {
                    want = &want + &self.gen(p, q).scale(&coef);
                    let d = self.alg.defining(p, q);
                    for (r, row) in d.iter().enumerate() {
                        for (s, &e) in row.iter().enumerate() {
                            rebuilt[r][s] += &(&coef * &Rat::int(e));
                        }
                    }
                }
                let exact = rebuilt
                    .iter()
                    .zip(&c)
                    .all(|(a, b)| a.iter().zip(b).all(|(p, &q)| *p == Rat::int(q)));
                if !exact || SparseMat::commutator(&self.f[&(i, j)], &self.f[&(k, l)]) != want {
                    bad += 1;
                }
            }
        }
        bad
    }

    /// `F_ij ξ = 0` for `i < j` and `F_kk ξ = λ_k ξ`.
    pub fn highest_check(&self) -> bool {
        let xi = self.highest();
        self.f.iter().all(|(&(i, j), m)| {
            let v = m.apply(&xi);
            if i < j {
                is_zero_vec(&v)
            } else if i == j && i > 0 {
                v == vec_scale(&xi, &half(self.lambda[i as usize - 1]))
            } else {
                true
            }
        })
    }

    /// `<F_ij u, v> = <u, F_ji v>` on basis vectors.
    pub fn contravariance_check(&self) -> bool {
        let d = self.dim();
        self.f.iter().all(|(&(i, j), m)| {
            let t = self.gen(j, i);
            (0..d).all(|a| {
                let ua = unit_vec(d, a);
                let fa = m.apply(&ua);
                (0..d).all(|b| {
                    let ub = unit_vec(d, b);
                    self.form(&fa, &ub) == self.form(&ua, &t.apply(&ub))
                })
            })
        })
    }

    // ------------------------------------------------------------------
    // Highest-vector subspaces and projections
    // ------------------------------------------------------------------

    /// Blocks grouped by the weight with the ignored component dropped.
    fn groups(&self, sub: &Raising) -> Rc<Vec<Vec<usize>>> {
        let key = (format!("{}#groups", sub.key), 0);
        if let Some(p) = self.group_cache.borrow().get(&key) {
            return p.clone();
        }
        let mut map: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (b, blk) in self.blocks.iter().enumerate() {
            let mut w = blk.weight.clone();
            if let Some(c) = sub.ignore {
                w.remove(c);
            }
            map.entry(w).or_default().push(b);
        }
        let out = Rc::new(map.into_values().collect::<Vec<_>>());
        self.group_cache.borrow_mut().insert(key, out.clone());
        out
    }

    fn plus_block(&self, sub: &Raising, group: &[usize]) -> Rc<PlusBlock> {
        let key = (sub.key.clone(), group[0]);
        if let Some(p) = self.plus_cache.borrow().get(&key) {
            return p.clone();
        }
        let coords: Vec<usize> = group
            .iter()
            .flat_map(|&b| self.blocks[b].offset..self.blocks[b].offset + self.blocks[b].len)
            .collect();
        let local_of: HashMap<usize, usize> =
            coords.iter().enumerate().map(|(l, &c)| (c, l)).collect();
        let len = coords.len();
        let mut rows: Vec<Vector> = Vec::new();
        for op in &sub.ops {
            for r in 0..self.dim() {
                let mut v: Option<Vector> = None;
                for (c, x) in op.row(r) {
                    if let Some(&l) = local_of.get(c) {
                        v.get_or_insert_with(|| zero_vec(len))[l] = x.clone();
                    }
                }
                rows.extend(v);
            }
        }
        let basis = if rows.is_empty() {
            (0..len).map(|i| unit_vec(len, i)).collect()
        } else {
            nullspace(&SparseMat::from_dense(&rows, len))
        };
        let mut g = vec![zero_vec(len); len];
        let mut at = 0;
        for &b in group {
            let gb = &self.gram[b];
            for (i, row) in gb.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    g[at + i][at + j] = x.clone();
                }
            }
            at += gb.len();
        }
        let gb: Vec<Vector> = basis.iter().map(|v| mat_vec(&g, v)).collect();
        let small: Vec<Vector> = basis
            .iter()
            .map(|x| {
                gb.iter()
                    .map(|y| x.iter().zip(y).map(|(p, q)| p * q).sum())
                    .collect()
            })
            .collect();
        let left = if basis.is_empty() {
            Vec::new()
        } else {
            let inv =
                inverse(&small).expect("contravariant form is nondegenerate on highest vectors");
            inv.iter()
                .map(|row| {
                    (0..len)
                        .map(|c| row.iter().zip(&gb).map(|(r, y)| r * &y[c]).sum())
                        .collect()
                })
                .collect()
        };
        let p = Rc::new(PlusBlock {
            coords,
            basis,
            left,
        });
        self.plus_cache.borrow_mut().insert(key, p.clone());
        p
    }

    /// Highest vectors for `sub` whose weights pass `filter`, as global vectors.
    pub fn plus_space(&self, sub: &Raising, filter: impl Fn(&[i64]) -> bool) -> Vec<Vector> {
        let mut out = Vec::new();
        for group in self.groups(sub).iter() {
            if !filter(&self.blocks[group[0]].weight) {
                continue;
            }
            let pb = self.plus_block(sub, group);
            for v in &pb.basis {
                let mut g = zero_vec(self.dim());
                for (&c, x) in pb.coords.iter().zip(v) {
                    g[c] = x.clone();
                }
                out.push(g);
            }
        }
        out
    }

    /// Contravariant-orthogonal projection onto the highest vectors of `sub`.
    pub fn project(&self, sub: &Raising, v: &[Rat]) -> Vector {
        let mut out = zero_vec(self.dim());
        for group in self.groups(sub).iter() {
            let pb_needed = group.iter().any(|&b| {
                let blk = &self.blocks[b];
                !is_zero_vec(&v[blk.offset..blk.offset + blk.len])
            });
            if !pb_needed {
                continue;
            }
            let pb = self.plus_block(sub, group);
            let part: Vector = pb.coords.iter().map(|&c| v[c].clone()).collect();
            let coef = mat_vec(&pb.left, &part);
            for (c, bv) in coef.iter().zip(&pb.basis) {
                if c.is_zero() {
                    continue;
                }
                for (&i, x) in pb.coords.iter().zip(bv) {
                    if !x.is_zero() {
                        out[i] += &(c * x);
                    }
                }
            }
        }
        out
    }

    /// Raising operators of `g_k` (labels `-k..k`).
    pub fn raising_level(&self, k: usize) -> Raising {
        let k = k as i64;
        let ops = self
            .f
            .iter()
            .filter(|(&(i, j), _)| i < j && i.abs() <= k && j.abs() <= k)
            .map(|(_, m)| m.clone())
            .collect();
        Raising {
            key: format!("g{k}"),
            ops,
            ignore: None,
        }
    }

    // ------------------------------------------------------------------
    // Lowering operators z_ia and the polynomials Z(u)
    // ------------------------------------------------------------------

    /// `f_j` on a vector of doubled weight `w`.
    pub fn fval(&self, j: i64, w: &[i64]) -> Rat {
        if j == 0 {
            return Rat::new(-1, 2);
        }
        let k = j.unsigned_abs() as usize;
        let f = &half(w[k - 1]) + &self.alg.rho(k as i64);
        if j > 0 {
            f
        } else {
            -f
        }
    }

    fn gval(&self, j: i64, w: &[i64]) -> Rat {
        &self.fval(j, w) + &Rat::new(1, 2)
    }

    /// Labels of `g_{k-1}` inside `g_k`, decreasing.
    fn inner(&self, k: usize) -> Vec<i64> {
        let k = k as i64;
        (-(k - 1)..k)
            .rev()
            .filter(|&x| self.alg.contains(x))
            .collect()
    }

    /// Multiplies each coordinate by a function of its weight.
    fn scale_by(&self, v: &[Rat], mut phi: impl FnMut(&[i64]) -> Result<Rat>) -> Result<Vector> {
        let mut cache: HashMap<usize, Rat> = HashMap::new();
        let mut out = zero_vec(v.len());
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let b = self.block_of[i];
            let c = match cache.get(&b) {
                Some(c) => c.clone(),
                None => {
                    let c = phi(&self.weights[i])?;
                    cache.insert(b, c.clone());
                    c
                }
            };
            out[i] = x * &c;
        }
        Ok(out)
    }

    /// Applies `F_{p0 p1} F_{p1 p2} ... ` to `v`.
    fn apply_chain(&self, path: &[i64], v: &[Rat]) -> Vector {
        let mut x = v.to_vec();
        for w in path.windows(2).rev() {
            x = self.apply(w[0], w[1], &x);
            if is_zero_vec(&x) {
                break;
            }
        }
        x
    }

    fn check_level(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n() {
            return Err(Error::Domain(format!("level {k} outside 1..{}", self.n())));
        }
        Ok(())
    }

    /// `z_ia` of the pair `g_{k-1} ⊂ g_k` applied to `v`; `a ∈ {-k, k}`, `i` a label of `g_{k-1}`.
    pub fn z_ia(&self, k: usize, i: i64, a: i64, v: &[Rat]) -> Result<Vector> {
        self.check_level(k)?;
        let inner = self.inner(k);
        if a.unsigned_abs() as usize != k || !inner.contains(&i) {
            return Err(Error::Domain(format!(
                "z_({i},{a}) is not defined at level {k}"
            )));
        }
        let is_d = self.alg.series == Series::D;
        let s: Vec<i64> = inner.iter().cloned().filter(|&x| x < i).collect();
        let mut out = zero_vec(v.len());
        for mask in 0..(1u64 << s.len()) {
            let chosen: Vec<i64> = (0..s.len())
                .filter(|&t| mask >> t & 1 == 1)
                .map(|t| s[t])
                .collect();
            let mut path = vec![i];
            path.extend(&chosen);
            path.push(a);
            if path.windows(2).any(|w| !self.f.contains_key(&(w[0], w[1]))) {
                continue;
            }
            let through_mirror = is_d && chosen.contains(&-i);
            let scaled = self.scale_by(v, |w| {
                let fi = self.fval(i, w);
                let mut c = Rat::one();
                for &x in &s {
                    if chosen.contains(&x) || (is_d && x == -i) {
                        continue;
                    }
                    c = c * (&fi - &self.fval(x, w));
                }
                if through_mirror {
                    let d = &fi - &self.fval(-i, w);
                    if d.is_zero() {
                        return Err(Error::Singular(format!(
                            "f_{i} - f_{} vanishes in z_({i},{a})",
                            -i
                        )));
                    }
                    c = c / d;
                }
                Ok(c)
            })?;
            out = vec_add(&out, &self.apply_chain(&path, &scaled));
        }
        Ok(out)
    }

    /// `z_ai = (-1)^{k-i} z_{-i,-a}`, with an extra `sgn a` in the symplectic case.
    pub fn z_ai(&self, k: usize, a: i64, i: i64, v: &[Rat]) -> Result<Vector> {
        let mut sign = if (k as i64 - i).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        if !self.alg.orthogonal() {
            sign *= a.signum();
        }
        Ok(vec_scale(&self.z_ia(k, -i, -a, v)?, &Rat::int(sign)))
    }

    /// `z_{k,-k}`.
    pub fn z_top(&self, k: usize, v: &[Rat]) -> Result<Vector> {
        self.check_level(k)?;
        let kk = k as i64;
        let s = self.inner(k);
        let is_d = self.alg.series == Series::D;
        let mut out = zero_vec(v.len());
        for mask in 0..(1u64 << s.len()) {
            let chosen: Vec<i64> = (0..s.len())
                .filter(|&t| mask >> t & 1 == 1)
                .map(|t| s[t])
                .collect();
            let mut path = vec![kk];
            path.extend(&chosen);
            path.push(-kk);
            if path.windows(2).any(|w| !self.f.contains_key(&(w[0], w[1]))) {
                continue;
            }
            let scaled = self.scale_by(v, |w| {
                let fk = self.fval(kk, w);
                let mut c = Rat::one();
                for &x in &s {
                    if !chosen.contains(&x) {
                        c = c * (&fk - &self.fval(x, w));
                    }
                }
                if is_d {
                    if fk.is_zero() {
                        return Err(Error::Singular(format!(
                            "f_{kk} vanishes in z_({kk},{})",
                            -kk
                        )));
                    }
                    c = c / (Rat::int(2) * fk);
                }
                Ok(c)
            })?;
            out = vec_add(&out, &self.apply_chain(&path, &scaled));
        }
        Ok(out)
    }

    /// Applies a weight-dependent scalar polynomial to `v`, giving a vector polynomial.
    fn poly_scale(
        &self,
        v: &[Rat],
        mut phi: impl FnMut(&[i64]) -> Result<Vec<Rat>>,
    ) -> Result<VecPoly> {
        let mut cache: HashMap<usize, Vec<Rat>> = HashMap::new();
        let mut out: VecPoly = Vec::new();
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let b = self.block_of[i];
            if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(b) {
                let p = phi(&self.weights[i])?;
                e.insert(p);
            }
            let p = &cache[&b];
            while out.len() < p.len() {
                out.push(zero_vec(v.len()));
            }
            for (m, c) in p.iter().enumerate() {
                out[m][i] = x * c;
            }
        }
        Ok(out)
    }

    /// Lagrange factors `∏_{j≠i} (u²-g_j²)/(g_i²-g_j²)` over `j ∈ nodes`.
    fn lagrange_sq(&self, i: i64, nodes: &[i64], w: &[i64]) -> Result<Vec<Rat>> {
        let gi2 = self.gval(i, w).pow(2);
        let mut p = vec![Rat::one()];
        for &j in nodes {
            if j == i {
                continue;
            }
            let gj2 = self.gval(j, w).pow(2);
            let d = &gi2 - &gj2;
            if d.is_zero() {
                return Err(Error::Singular(format!(
                    "g_{i}^2 = g_{j}^2 in the interpolation polynomial"
                )));
            }
            let dinv = d.recip();
            p = poly_mul(&p, &[-(&gj2 * &dinv), Rat::zero(), dinv]);
        }
        Ok(p)
    }

    /// `Z_{k,-k}(u) v` from the interpolation formula, with `z_kk = 1`.
    pub fn z_interp_vecpoly(&self, k: usize, v: &[Rat]) -> Result<VecPoly> {
        self.check_level(k)?;
        let top = if self.alg.series == Series::D {
            k - 1
        } else {
            k
        };
        let nodes: Vec<i64> = (1..=top as i64).collect();
        let kk = k as i64;
        let mut out: VecPoly = Vec::new();
        for &i in &nodes {
            let scaled = self.poly_scale(v, |w| self.lagrange_sq(i, &nodes, w))?;
            for (m, c) in scaled.iter().enumerate() {
                let t = if i == kk {
                    self.z_top(k, c)?
                } else {
                    self.z_ai(k, kk, i, &self.z_ia(k, i, -kk, c)?)?
                };
                while out.len() <= m {
                    out.push(zero_vec(v.len()));
                }
                out[m] = vec_add(&out[m], &t);
            }
        }
        Ok(out)
    }

    /// `Z_ab(u) v` from the Mickelsson–Zhelobenko formulas; `a, b ∈ {-k, k}`. In type D the
    /// result is `(2u+1) Z_ab(u) v`, which need not be divisible by `2u+1`.
    pub fn zab_vecpoly(&self, k: usize, a: i64, b: i64, v: &[Rat]) -> Result<VecPoly> {
        self.check_level(k)?;
        let kk = k as i64;
        if a.abs() != kk || b.abs() != kk {
            return Err(Error::Domain(format!("Z_({a},{b}) needs labels ±{k}")));
        }
        let inner = self.inner(k);
        let series = self.alg.series;
        let prod = self.poly_scale(v, |w| {
            let mut p = vec![Rat::one()];
            for &i in &inner {
                p = poly_mul(&p, &[self.gval(i, w), Rat::one()]);
            }
            Ok(p)
        })?;
        let mut term1: VecPoly = prod.iter().map(|c| self.apply(a, b, c)).collect();
        if a == b {
            let c0 = &self.alg.rho(kk) + &Rat::new(1, 2);
            term1.push(zero_vec(v.len()));
            for (m, c) in prod.iter().enumerate() {
                term1[m] = vec_add(&term1[m], &vec_scale(c, &c0));
                term1[m + 1] = vec_add(&term1[m + 1], c);
            }
        }
        let mut term2: VecPoly = Vec::new();
        for &i in &inner {
            let scaled = self.poly_scale(v, |w| {
                let gi = self.gval(i, w);
                let mut p = vec![Rat::one()];
                if series == Series::D {
                    p = poly_mul(&p, &[self.gval(-i, w), Rat::one()]);
                }
                for &j in &inner {
                    if j == i || (series == Series::D && j == -i) {
                        continue;
                    }
                    let gj = self.gval(j, w);
                    let d = &gi - &gj;
                    if d.is_zero() {
                        return Err(Error::Singular(format!("g_{i} = g_{j} in Z_({a},{b})")));
                    }
                    let dinv = d.recip();
                    p = poly_mul(&p, &[&gj * &dinv, dinv]);
                }
                Ok(p)
            })?;
            for (m, c) in scaled.iter().enumerate() {
                let t = self.z_ai(k, a, i, &self.z_ia(k, i, b, c)?)?;
                while term2.len() <= m {
                    term2.push(zero_vec(v.len()));
                }
                term2[m] = vec_add(&term2[m], &t);
            }
        }
        let diff = vp_sub(&term1, &term2);
        match series {
            Series::B => Ok(vp_sub(&term2, &term1)),
            Series::C => Ok(diff),
            _ => Ok(diff.iter().map(|c| vec_scale(c, &-Rat::one())).collect()),
        }
    }

    /// `Z_{k,-k}(u) v`: the interpolation form, or the `Z_ab` form where the former is singular.
    pub fn z_vecpoly(&self, k: usize, v: &[Rat]) -> Result<VecPoly> {
        match self.z_interp_vecpoly(k, v) {
            Err(Error::Singular(_)) => {
                let p = self.zab_vecpoly(k, k as i64, -(k as i64), v)?;
                if self.series() != Series::D {
                    return Ok(p);
                }
                // divide by 1 + 2u
                let mut q: VecPoly = vec![zero_vec(v.len()); p.len().saturating_sub(1)];
                let mut rem = p;
                for m in (1..rem.len()).rev() {
                    let c = vec_scale(&rem[m], &Rat::new(1, 2));
                    rem[m - 1] = vec_sub(&rem[m - 1], &c);
                    q[m - 1] = c;
                }
                if !rem.first().is_none_or(|r| is_zero_vec(r)) {
                    return Err(Error::Singular("Z(u) has a pole at u = -1/2".into()));
                }
                Ok(q)
            }
            r => r,
        }
    }

    /// `Z_{k,-k}(u0) v`: the interpolation form, or the `Z_ab` form where the former is singular.
    pub fn z_eval(&self, k: usize, u0: &Rat, v: &[Rat]) -> Result<Vector> {
        let vp = match self.z_interp_vecpoly(k, v) {
            Ok(p) => p,
            Err(Error::Singular(_)) => {
                let p = self.zab_vecpoly(k, k as i64, -(k as i64), v)?;
                if self.series() == Series::D {
                    let d = &(&Rat::int(2) * u0) + &Rat::one();
                    if d.is_zero() {
                        return Err(Error::Singular("Z(u) at u = -1/2".into()));
                    }
                    return Ok(vec_scale(&vp_eval(&p, u0, v.len()), &d.recip()));
                }
                p
            }
            Err(e) => return Err(e),
        };
        Ok(vp_eval(&vp, u0, v.len()))
    }

    // ------------------------------------------------------------------
    // Multiplicity spaces and bases
    // ------------------------------------------------------------------

    /// `V(λ)^+_μ` at the top level: `g_{n-1}`-highest vectors with `F_ii = μ_i`, `i < n`.
    pub fn plus_mu(&self, mu: &[i64]) -> Result<Vec<Vector>> {
        let n = self.n();
        if mu.len() + 1 != n {
            return Err(Error::Shape(format!("μ must have {} entries", n - 1)));
        }
        let sub = self.raising_level(n - 1);
        Ok(self.plus_space(&sub, |w| w[..n - 1] == *mu))
    }

    /// Applies `z_{n,-n}`-type operators: first `z_{i,-n}^{e_up}`, then `z_{ni}^{e_down}`.
    fn lift(&self, k: usize, i: i64, e_up: usize, e_down: usize, mut v: Vector) -> Result<Vector> {
        let kk = k as i64;
        for _ in 0..e_up {
            v = self.z_ia(k, i, -kk, &v)?;
        }
        for _ in 0..e_down {
            v = self.z_ai(k, kk, i, &v)?;
        }
        Ok(v)
    }

    /// `ξ_μ = ∏ z_ni^{max(λ_i,μ_i)-μ_i} z_{i,-n}^{max(λ_i,μ_i)-λ_i} ξ`.
    pub fn xi_mu(&self, mu: &[i64]) -> Result<Vector> {
        let n = self.n();
        let mut v = self.highest();
        for i in (1..n).rev() {
            let m = self.lambda[i - 1].max(mu[i - 1]);
            v = self.lift(
                n,
                i as i64,
                exponent(m - self.lambda[i - 1])?,
                exponent(m - mu[i - 1])?,
                v,
            )?;
        }
        Ok(v)
    }

    /// Basis of `V(λ)^+_μ` in the product form of the lemmas, one vector per admissible tuple.
    pub fn multiplicity_basis(&self, mu: &[i64]) -> Result<Vec<((u8, Vec<i64>), Vector)>> {
        let n = self.n();
        let spec = branch_bcd(self.series(), &self.lambda, mu)?;
        let lam = &self.lambda;
        let mut out = Vec::new();
        for (sigma, nu) in spec.data {
            let mut v = self.highest();
            let l_n = &half(lam[n - 1]) + &self.alg.rho(n as i64) + Rat::new(1, 2);
            let zs = match self.series() {
                Series::D => {
                    let g = &half(nu[n - 2]) + &self.alg.rho(n as i64 - 1) + Rat::new(1, 2);
                    steps(&l_n, &(&g - &Rat::one()))?
                }
                _ => {
                    let g = &half(nu[n - 1]) + &self.alg.rho(n as i64) + Rat::new(1, 2);
                    steps(&l_n, &g)?
                }
            };
            for t in zs.iter().rev() {
                v = self.z_eval(n, t, &v)?;
            }
            for i in (1..n).rev() {
                let top = match self.series() {
                    Series::D => {
                        if i == 1 {
                            lam[0].max(mu[0])
                        } else {
                            nu[i - 2]
                        }
                    }
                    _ => nu[i - 1],
                };
                v = self.lift(
                    n,
                    i as i64,
                    exponent(top - lam[i - 1])?,
                    exponent(top - mu[i - 1])?,
                    v,
                )?;
            }
            if sigma == 1 {
                v = self.z_ai(n, n as i64, 0, &v)?;
            }
            out.push(((sigma, nu), v));
        }
        Ok(out)
    }

    /// String endpoints `β_i` and the Yangian parameters `γ_i` of a tuple.
    fn string_params(&self, mu: &[i64], nu: &[i64]) -> (Vec<Rat>, Vec<Rat>) {
        let n = self.n();
        let lam = &self.lambda;
        match self.series() {
            Series::D => {
                let beta = (1..n)
                    .map(|i| {
                        let m = if i + 1 < n { lam[i].max(mu[i]) } else { lam[i] };
                        &half(m) - &Rat::int(i as i64) + Rat::new(1, 2)
                    })
                    .collect();
                let gamma = (1..n)
                    .map(|i| &half(nu[i - 1]) - &Rat::int(i as i64) + Rat::new(1, 2))
                    .collect();
                (beta, gamma)
            }
            s => {
                let shift = if s == Series::B {
                    Rat::one()
                } else {
                    Rat::new(1, 2)
                };
                let beta = (1..=n)
                    .map(|i| {
                        let m = if i < n {
                            lam[i - 1].max(mu[i - 1])
                        } else {
                            lam[i - 1]
                        };
                        &half(m) - &Rat::int(i as i64) + shift.clone()
                    })
                    .collect();
                let gamma = (1..=n)
                    .map(|i| &half(nu[i - 1]) - &Rat::int(i as i64) + shift.clone())
                    .collect();
                (beta, gamma)
            }
        }
    }

    /// `ξ_ν = [z_{n0}^σ] ∏_i Z(γ_i - 1)...Z(β_i) ξ_μ` for any tuple, admissible or not.
    pub fn xi_nu_product(&self, mu: &[i64], sigma: u8, nu: &[i64]) -> Result<Vector> {
        let n = self.n();
        let (beta, gamma) = self.string_params(mu, nu);
        let mut v = self.xi_mu(mu)?;
        for i in (0..beta.len()).rev() {
            for t in steps(&beta[i], &gamma[i])? {
                v = self.z_eval(n, &t, &v)?;
            }
        }
        if sigma == 1 {
            v = self.z_ai(n, n as i64, 0, &v)?;
        }
        Ok(v)
    }

    /// Basis of `V(λ)^+_μ` in the product form over the strings.
    pub fn multiplicity_basis_strings(&self, mu: &[i64]) -> Result<Vec<((u8, Vec<i64>), Vector)>> {
        let spec = branch_bcd(self.series(), &self.lambda, mu)?;
        spec.data
            .into_iter()
            .map(|(s, nu)| Ok(((s, nu.clone()), self.xi_nu_product(mu, s, &nu)?)))
            .collect()
    }

    /// Checks the `F_nn` eigenvalues and the `F_{n,-n}` action on the string-form basis (type C).
    pub fn fnn_action_check(&self, mu: &[i64]) -> Result<bool> {
        if self.series() != Series::C {
            return Err(Error::Domain("the F_{n,-n} formula is for type C".into()));
        }
        let n = self.n() as i64;
        let basis = self.multiplicity_basis_strings(mu)?;
        let sl: i64 = self.lambda.iter().sum();
        let sm: i64 = mu.iter().sum();
        for ((_, nu), v) in &basis {
            let eig = half(2 * nu.iter().sum::<i64>() - sl - sm);
            if self.apply(n, n, v) != vec_scale(v, &eig) {
                return Ok(false);
            }
            let (_, gamma) = self.string_params(mu, nu);
            let mut want = zero_vec(self.dim());
            for i in 0..gamma.len() {
                let mut c = Rat::one();
                for a in 0..gamma.len() {
                    if a != i {
                        c = c / (gamma[i].pow(2) - gamma[a].pow(2));
                    }
                }
                let mut up = nu.clone();
                up[i] += 2;
                let w = self.xi_nu_product(mu, 0, &up)?;
                want = vec_add(&want, &vec_scale(&w, &c));
            }
            if self.apply(n, -n, v) != want {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Gelfand–Tsetlin type basis of `V(λ)` along `g_1 ⊂ ... ⊂ g_n`, one vector per pattern.
    pub fn gt_basis_bcd(&self) -> Result<Vec<(BcdPattern, Vector)>> {
        let n = self.n();
        let rho = |i: usize| self.alg.rho(i as i64);
        let hh = Rat::new(1, 2);
        let mut out = Vec::new();
        match self.series() {
            Series::C | Series::B => {
                let pats: Vec<(Vec<u8>, Vec<Vec<i64>>, Vec<Vec<i64>>, BcdPattern)> =
                    if self.series() == Series::C {
                        enumerate_c3(&self.lambda)?
                            .into_iter()
                            .map(|p| (vec![0; n], p.lam.clone(), p.lamp.clone(), BcdPattern::C(p)))
                            .collect()
                    } else {
                        enumerate_b3(&self.lambda)?
                            .into_iter()
                            .map(|p| {
                                (
                                    p.sigma.clone(),
                                    p.lam.clone(),
                                    p.lamp.clone(),
                                    BcdPattern::B(p),
                                )
                            })
                            .collect()
                    };
                for (sigma, lam, lamp, pat) in pats {
                    let mut v = self.highest();
                    for k in (1..=n).rev() {
                        let l_kk = &half(lam[k - 1][k - 1]) + &rho(k) + hh.clone();
                        let lp_kk = &half(lamp[k - 1][k - 1]) + &rho(k) + hh.clone();
                        for t in steps(&l_kk, &lp_kk)?.iter().rev() {
                            v = self.z_eval(k, t, &v)?;
                        }
                        for i in (1..k).rev() {
                            let e_up = exponent(lamp[k - 1][i - 1] - lam[k - 1][i - 1])?;
                            let e_down = exponent(lamp[k - 1][i - 1] - lam[k - 2][i - 1])?;
                            v = self.lift(k, i as i64, e_up, e_down, v)?;
                        }
                        if sigma[k - 1] == 1 {
                            v = self.z_ai(k, k as i64, 0, &v)?;
                        }
                    }
                    out.push((pat, v));
                }
            }
            _ => {
                for p in enumerate_d3(&self.lambda)? {
                    let mut v = self.highest();
                    for k in (2..=n).rev() {
                        let l_kk = &half(p.lam[k - 1][k - 1]) + &rho(k) + hh.clone();
                        let lp = &half(p.lamp[k - 2][k - 2]) + &rho(k - 1) + hh.clone();
                        for t in steps(&l_kk, &(&lp - &Rat::one()))?.iter().rev() {
                            v = self.z_eval(k, t, &v)?;
                        }
                        for i in (1..k).rev() {
                            let top = if i == 1 {
                                p.lamp0(k)
                            } else {
                                p.lamp[k - 2][i - 2]
                            };
                            let e_up = exponent(top - p.lam[k - 1][i - 1])?;
                            let e_down = exponent(top - p.lam[k - 2][i - 1])?;
                            v = self.lift(k, i as i64, e_up, e_down, v)?;
                        }
                    }
                    out.push((BcdPattern::D(p), v));
                }
            }
        }
        Ok(out)
    }

    // ------------------------------------------------------------------
    // Z_ab(u) on the multiplicity space and the twisted Yangian
    // ------------------------------------------------------------------

    /// Restricts a vector-polynomial valued operator to the span of `basis`.
    pub fn restrict(
        &self,
        basis: &[Vector],
        op: impl Fn(&Vector) -> Result<VecPoly>,
    ) -> Result<OpPoly> {
        let d = basis.len();
        let mut cols: Vec<VecPoly> = Vec::new();
        for b in basis {
            cols.push(op(b)?);
        }
        let deg = cols.iter().map(|c| c.len()).max().unwrap_or(0);
        let mut coeffs = Vec::new();
        for m in 0..deg {
            let mut mat = SparseMat::zeros(d, d);
            for (j, c) in cols.iter().enumerate() {
                if let Some(vm) = c.get(m) {
                    let x = solve_in_span(basis, vm)
                        .ok_or_else(|| Error::Contract("operator leaves the subspace".into()))?;
                    for (i, e) in x.into_iter().enumerate() {
                        if !e.is_zero() {
                            mat.set(i, j, e);
                        }
                    }
                }
            }
            coeffs.push(mat);
        }
        OpPoly::from_coeffs(d, d, coeffs)
    }

    /// `Z_ab(u)` on `V(λ)^+_μ` in the basis `basis`, for the labels `a, b ∈ {-n, n}` encoded as `M, P`.
    pub fn zab_operators(&self, basis: &[Vector]) -> Result<[[OpPoly; 2]; 2]> {
        let n = self.n() as i64;
        let lab = [-n, n];
        let mut out: Vec<Vec<OpPoly>> = Vec::new();
        for &a in &lab {
            let mut row = Vec::new();
            for &b in &lab {
                row.push(self.restrict(basis, |v| self.zab_vecpoly(self.n(), a, b, v))?);
            }
            out.push(row);
        }
        let mut it = out.into_iter().map(|r| {
            let mut r = r.into_iter();
            [r.next().unwrap(), r.next().unwrap()]
        });
        Ok([it.next().unwrap(), it.next().unwrap()])
    }

    /// `c(u)` and `m` with `s_ab(u)` proportional to `c(u) u^{-2m} Z_ab(u)` up to an even
    /// scalar factor; `Z_ab` is the polynomial returned by [`Self::zab_vecpoly`].
    pub fn yangian_scaling(&self) -> (Vec<Rat>, usize) {
        let n = self.n();
        match self.series() {
            Series::B => (vec![-Rat::one()], n),
            Series::C => (vec![Rat::new(1, 2), Rat::one()], n),
            _ => (vec![Rat::new(-1, 2), Rat::one()], n - 1),
        }
    }

    /// The Yangian side of the multiplicity space: tensor factors and twist for each
    /// irreducible summand (two for type B, one otherwise).
    pub fn yangian_parameters(&self, mu: &[i64]) -> Result<Vec<(Vec<HWString>, Twist)>> {
        let n = self.n();
        let lam: Vec<Rat> = self.lambda.iter().map(|&x| half(x)).collect();
        let mu_r: Vec<Rat> = mu.iter().map(|&x| half(x)).collect();
        let min = |a: &Rat, b: &Rat| if a < b { a.clone() } else { b.clone() };
        let max = |a: &Rat, b: &Rat| if a > b { a.clone() } else { b.clone() };
        let ii = |i: usize| Rat::int(i as i64);
        match self.series() {
            Series::C => {
                let mut f = Vec::new();
                for i in 1..=n {
                    let alpha = if i == 1 {
                        Rat::new(-1, 2)
                    } else {
                        &min(&lam[i - 2], &mu_r[i - 2]) - &ii(i) + Rat::new(1, 2)
                    };
                    let top = if i < n {
                        max(&lam[i - 1], &mu_r[i - 1])
                    } else {
                        lam[i - 1].clone()
                    };
                    let beta = &top - &ii(i) + Rat::new(1, 2);
                    f.push(HWString::new(alpha, beta)?);
                }
                Ok(vec![(f, Twist::Minus)])
            }
            Series::B => {
                let integral = self.lambda[0] % 2 == 0;
                let mut rest = Vec::new();
                for i in 2..=n {
                    let alpha = &min(&lam[i - 2], &mu_r[i - 2]) - &ii(i) + Rat::one();
                    let top = if i < n {
                        max(&lam[i - 1], &mu_r[i - 1])
                    } else {
                        lam[i - 1].clone()
                    };
                    rest.push(HWString::new(alpha, &top - &ii(i) + Rat::one())?);
                }
                let beta1 = if n > 1 {
                    max(&lam[0], &mu_r[0])
                } else {
                    lam[0].clone()
                };
                let mut out = Vec::new();
                let firsts: Vec<(Rat, Rat)> = if integral {
                    vec![(Rat::zero(), Rat::new(1, 2)), (-Rat::one(), Rat::new(1, 2))]
                } else {
                    vec![
                        (Rat::new(-1, 2), Rat::zero()),
                        (Rat::new(-1, 2), Rat::one()),
                    ]
                };
                for (a1, delta) in firsts {
                    let mut f = vec![];
                    match HWString::new(a1, beta1.clone()) {
                        Ok(s) => f.push(s),
                        Err(_) => continue,
                    }
                    f.extend(rest.iter().cloned());
                    out.push((f, Twist::Plus(delta)));
                }
                Ok(out)
            }
            _ => {
                if n < 2 {
                    return Err(Error::Domain(
                        "type D multiplicity spaces need n >= 2".into(),
                    ));
                }
                let a1 = &min(&-lam[0].abs(), &-mu_r[0].abs()) - &Rat::new(1, 2);
                let a0 = &a1 + &(&lam[0] + &mu_r[0]).abs();
                let mut f = Vec::new();
                for i in 1..n {
                    let alpha = if i == 1 {
                        a1.clone()
                    } else {
                        &min(&lam[i - 1], &mu_r[i - 1]) - &ii(i) + Rat::new(1, 2)
                    };
                    let top = if i + 1 < n {
                        max(&lam[i], &mu_r[i])
                    } else {
                        lam[i].clone()
                    };
                    f.push(HWString::new(alpha, &top - &ii(i) + Rat::new(1, 2))?);
                }
                Ok(vec![(f, Twist::Plus(-a0))])
            }
        }
    }

    /// Cross-validates `Z_ab(u)` on `V(λ)^+_μ` against the Yangian description.
    pub fn zab_yangian_check(&self, mu: &[i64]) -> Result<ZabReport> {
        let n = self.n();
        let basis = self.plus_mu(mu)?;
        let params = self.yangian_parameters(mu)?;
        let predicted: usize = params
            .iter()
            .map(|(f, _)| f.iter().map(|s| s.len() + 1).product::<usize>())
            .sum();
        let mut rep = ZabReport {
            dim: basis.len(),
            predicted_dim: predicted,
            ..Default::default()
        };
        if basis.is_empty() {
            return Ok(rep);
        }
        let z = self.zab_operators(&basis)?;
        let (c, m) = self.yangian_scaling();
        rep.interpolation_agrees = {
            let interp = self.restrict(&basis, |v| self.z_interp_vecpoly(n, v));
            match interp {
                Ok(p) if self.series() == Series::D => {
                    Some(p.mul_scalar_poly(&[Rat::one(), Rat::int(2)]) == z[P][M])
                }
                Ok(p) => Some(p == z[P][M]),
                Err(Error::Singular(_)) => None,
                Err(e) => return Err(e),
            }
        };
        // twisted symmetry for s_ab = c(u) u^{-2m} Z_ab(u), cleared
        let d = basis.len();
        let cz: Vec<Vec<OpPoly>> = (0..2)
            .map(|a| (0..2).map(|b| z[a][b].mul_scalar_poly(&c)).collect())
            .collect();
        let two_u = OpPoly::scalar_poly(d, &[Rat::zero(), Rat::int(2)]);
        let orth = self.alg.orthogonal();
        let pm = if orth { Rat::one() } else { -Rat::one() };
        let lab = [-(n as i64), n as i64];
        rep.symmetry = (0..2).all(|a| {
            (0..2).all(|b| {
                let th = Rat::int(self.alg.theta(lab[a], lab[b]));
                let s = &cz[a][b];
                let lhs = (&two_u * &cz[1 - b][1 - a].neg_var()).scale(&th);
                let rhs = &(&two_u * s) + &(s - &s.neg_var()).scale(&pm);
                lhs == rhs
            })
        });
        let _ = m;
        // highest vectors and eigenvalues
        let xi = self.xi_mu(mu)?;
        let mut tops = vec![xi.clone()];
        if self.series() == Series::B {
            tops.push(self.z_ai(n, n as i64, 0, &xi)?);
        }
        rep.highest = true;
        rep.eigen = true;
        for (t, (factors, tw)) in tops.iter().zip(&params) {
            if is_zero_vec(t) {
                rep.highest = false;
                continue;
            }
            let down = self.zab_vecpoly(n, -(n as i64), n as i64, t)?;
            if down.iter().any(|c| !is_zero_vec(c)) {
                rep.highest = false;
            }
            let up = self.zab_vecpoly(n, n as i64, n as i64, t)?;
            let Some(lie) = eigen_poly(&up, t) else {
                rep.eigen = false;
                continue;
            };
            let ym = build_tensor_module(factors)?;
            let eta = ym.eta();
            let sp = match tw {
                Twist::Minus => ym.s_poly(tw, P, P),
                Twist::Plus(_) => ym.s_poly_w(tw, P, P),
            };
            let yv: VecPoly = sp.coeffs().iter().map(|c| c.apply(&eta)).collect();
            let Some(yang) = eigen_poly(&yv, &eta) else {
                rep.eigen = false;
                continue;
            };
            let k = factors.len() as i64;
            let sign = Rat::int(if k % 2 == 0 { 1 } else { -1 });
            let lhs: Vec<Rat> = match self.series() {
                Series::C => poly_mul(&lie, &[Rat::new(1, 2), Rat::one()]),
                Series::B => poly_mul(&lie, &[Rat::new(-1, 2), -Rat::one()]),
                _ => lie.iter().map(|x| -x.clone()).collect(),
            };
            let rhs: Vec<Rat> = yang.iter().map(|x| x * &sign).collect();
            if crate::exact::poly_trim(lhs) != crate::exact::poly_trim(rhs) {
                rep.eigen = false;
            }
        }
        if self.series() == Series::B && params.len() < tops.len() {
            // U' = 0: the second candidate must vanish
            rep.highest = rep.highest || is_zero_vec(&tops[1]);
        }
        if self.series() != Series::B && d <= 8 {
            let gens: Vec<SparseMat> = z
                .iter()
                .flatten()
                .flat_map(|p| p.coeffs().to_vec())
                .collect();
            rep.irreducible = Some(crate::yangian::brute_force_irreducible(&gens, d));
        }
        Ok(rep)
    }
}

/// A lowering operator realized as a matrix on the whole module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoweringOp {
    /// `z_ia` of `g_{n-1} ⊂ g_n`.
    Zia(i64, i64),
    /// `z_{n,-n}`.
    ZTop,
    /// `s'_{mi}` of the orthogonal chain.
    SPrime(usize, usize),
    /// `s_{ki}` of the orthogonal chain.
    S(usize, usize),
}

impl BcdIrrep {
    fn matrix_of(&self, op: impl Fn(&Vector) -> Result<Vector>) -> Result<SparseMat> {
        let d = self.dim();
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            cols.push(op(&unit_vec(d, j))?);
        }
        Ok(SparseMat::from_columns(d, &cols))
    }

    /// Matrix of `op` composed with the projection onto `V(λ)^+` at the top level.
    fn on_plus(&self, op: impl Fn(&Vector) -> Result<Vector>) -> Result<SparseMat> {
        let sub = self.raising_level(self.n() - 1);
        self.matrix_of(|v| op(&self.project(&sub, v)))
    }

    /// Realizes a lowering operator; the `z` operators act through the projection onto `V(λ)^+`.
    pub fn realize(&self, op: &LoweringOp) -> Result<SparseMat> {
        let n = self.n();
        match *op {
            LoweringOp::Zia(i, a) if i.unsigned_abs() as usize == n => {
                self.on_plus(|v| self.z_ai(n, i, a, v))
            }
            LoweringOp::Zia(i, a) => self.on_plus(|v| self.z_ia(n, i, a, v)),
            LoweringOp::ZTop => self.on_plus(|v| self.z_top(n, v)),
            LoweringOp::SPrime(m, i) => self.matrix_of(|v| self.s_prime(m, i, v)),
            LoweringOp::S(k, i) => self.matrix_of(|v| self.s_plain(k, i, v)),
        }
    }

    /// `z_ia` (or `z_ai` when the first label is `±n`) on `V(λ)^+`, extended by zero on its complement.
    pub fn lowering_zia(&self, i: i64, a: i64) -> Result<SparseMat> {
        self.realize(&LoweringOp::Zia(i, a))
    }

    /// `Z_{n,-n}(u0)` on `V(λ)^+`, extended by zero on its complement.
    pub fn z_interp(&self, u0: &Rat) -> Result<SparseMat> {
        let n = self.n();
        self.on_plus(|v| self.z_eval(n, u0, v))
    }

    /// `Z_{n,-n}(u)` on `V(λ)^+` as an operator polynomial, extended by zero on its complement.
    pub fn z_interp_poly(&self) -> Result<OpPoly> {
        let n = self.n();
        let sub = self.raising_level(n - 1);
        let d = self.dim();
        let mut cols: Vec<VecPoly> = Vec::with_capacity(d);
        for j in 0..d {
            cols.push(self.z_vecpoly(n, &self.project(&sub, &unit_vec(d, j)))?);
        }
        let deg = cols.iter().map(|c| c.len()).max().unwrap_or(0).max(1);
        let coeffs = (0..deg)
            .map(|m| {
                let cs: Vec<Vector> = cols
                    .iter()
                    .map(|c| c.get(m).cloned().unwrap_or_else(|| zero_vec(d)))
                    .collect();
                SparseMat::from_columns(d, &cs)
            })
            .collect();
        OpPoly::from_coeffs(d, d, coeffs)
    }

    /// `Z_ab(u)` on `V(λ)^+_μ` in the basis returned by [`Self::plus_mu`].
    pub fn zab_operators_mu(&self, mu: &[i64]) -> Result<(Vec<Vector>, [[OpPoly; 2]; 2])> {
        let basis = self.plus_mu(mu)?;
        if basis.is_empty() {
            return Err(Error::Domain(format!("V(λ)^+_μ is zero for μ = {mu:?}")));
        }
        let z = self.zab_operators(&basis)?;
        Ok((basis, z))
    }
}

/// Outcome of [`BcdIrrep::zab_yangian_check`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZabReport {
    pub dim: usize,
    pub predicted_dim: usize,
    /// `Z_{n,-n}(u)` equals the interpolation polynomial (`None` if the latter is singular).
    pub interpolation_agrees: Option<bool>,
    pub symmetry: bool,
    pub highest: bool,
    pub eigen: bool,
    pub irreducible: Option<bool>,
}

impl ZabReport {
    pub fn ok(&self) -> bool {
        self.dim == self.predicted_dim
            && self.interpolation_agrees != Some(false)
            && self.symmetry
            && self.highest
            && self.eigen
            && self.irreducible != Some(false)
    }
}

/// The scalar polynomial `p` with `vp = p(u) v`, if it exists.
fn eigen_poly(vp: &VecPoly, v: &[Rat]) -> Option<Vec<Rat>> {
    vp.iter()
        .map(|c| {
            if is_zero_vec(c) {
                Some(Rat::zero())
            } else {
                crate::exact::proportionality(c, v)
            }
        })
        .collect()
}

fn vp_sub(a: &VecPoly, b: &VecPoly) -> VecPoly {
    let n = a.len().max(b.len());
    let dim = a.first().or(b.first()).map_or(0, |v| v.len());
    (0..n)
        .map(|m| {
            let x = a.get(m).cloned().unwrap_or_else(|| zero_vec(dim));
            match b.get(m) {
                Some(y) => vec_sub(&x, y),
                None => x,
            }
        })
        .collect()
}

fn vp_eval(vp: &VecPoly, u: &Rat, dim: usize) -> Vector {
    let mut acc = zero_vec(dim);
    for c in vp.iter().rev() {
        acc = vec_add(&vec_scale(&acc, u), c);
    }
    acc
}

/// Evaluates a vector polynomial at `u`.
pub fn vecpoly_eval(vp: &VecPoly, u: &Rat, dim: usize) -> Vector {
    vp_eval(vp, u, dim)
}

/// The pattern indexing a basis vector of [`BcdIrrep::gt_basis_bcd`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BcdPattern {
    B(PatternB3),
    C(PatternC3),
    D(PatternD3),
}

impl BcdPattern {
    pub fn weight(&self) -> Vec<i64> {
        match self {
            BcdPattern::B(p) => p.weight(),
            BcdPattern::C(p) => p.weight(),
            BcdPattern::D(p) => p.weight(),
        }
    }

    pub fn key(&self) -> Vec<i64> {
        match self {
            BcdPattern::B(p) => p.key(),
            BcdPattern::C(p) => p.key(),
            BcdPattern::D(p) => p.key(),
        }
    }
}

// ----------------------------------------------------------------------------
// Orthogonal chain o_N ⊃ o_{N-1} ⊃ ... ⊃ o_2
// ----------------------------------------------------------------------------

/// `V(λ)` for `o_{2n+1}` (`Series::B`) or `o_{2n}` (`Series::D`) from a positive-convention `λ`.
pub fn build_orth_irrep(series: Series, lambda: &[i64]) -> Result<BcdIrrep> {
    if !matches!(series, Series::B | Series::D) {
        return Err(Error::Domain(
            "the orthogonal chain needs series B or D".into(),
        ));
    }
    check_dominant_s4(series.letter(), lambda)?;
    build_bcd_irrep(series, &flip_convention(lambda))
}

/// Labels of the positive-convention index `i` of every member of the chain.
fn label(n: usize, i: usize) -> i64 {
    -((n + 1 - i) as i64)
}

impl BcdIrrep {
    /// `H_i`, the `i`-th Cartan element in the positive convention, on weight `w`.
    fn h4(&self, i: usize, w: &[i64]) -> Rat {
        -half(w[self.n() - i])
    }

    fn raising_from(
        &self,
        key: String,
        keep: impl Fn(i64, i64) -> bool,
        extra: Vec<SparseMat>,
        ignore: Option<usize>,
    ) -> Raising {
        let mut ops: Vec<SparseMat> = self
            .f
            .iter()
            .filter(|(&(i, j), _)| i < j && keep(i, j))
            .map(|(_, m)| m.clone())
            .collect();
        ops.extend(extra);
        Raising { key, ops, ignore }
    }

    /// Raising operators of the coordinate `o_{2m}` on labels `|j| >= n-m+1`.
    fn even_sub(&self, m: usize) -> Raising {
        let c0 = (self.n() + 1 - m) as i64;
        self.raising_from(
            format!("even{m}"),
            |i, j| i.abs() >= c0 && j.abs() >= c0,
            Vec::new(),
            None,
        )
    }

    /// Raising operators of `o_{2m+1}`: the whole algebra at the top of type B, otherwise
    /// the stabilizer of `e_{-c} + e_c` in `o_{2m+2}`, `c = n - m`.
    fn odd_sub(&self, m: usize) -> Raising {
        let n = self.n();
        if self.series() == Series::B && m == n {
            return self.raising_from(format!("odd{m}"), |_, _| true, Vec::new(), None);
        }
        let c = (n - m) as i64;
        let extra = ((c + 1)..=(n as i64))
            .map(|j| &self.gen(-c, j) - &self.gen(c, j))
            .collect();
        self.raising_from(
            format!("odd{m}"),
            |i, j| i.abs() > c && j.abs() > c,
            extra,
            Some(c as usize - 1),
        )
    }

    /// `s'_{mi}` for `o_{2m+1} ↓ o_{2m}`, `i = 1..m`.
    pub fn s_prime(&self, m: usize, i: usize, v: &[Rat]) -> Result<Vector> {
        let n = self.n();
        if m == 0 || m > n || i == 0 || i > m || (m == n && self.series() == Series::D) {
            return Err(Error::Domain(format!("s'_({m},{i}) is not defined here")));
        }
        let j = label(n, i);
        let x = if self.series() == Series::B && m == n {
            self.gen(0, j)
        } else {
            let c = (n - m) as i64;
            &self.gen(-c, j) - &self.gen(c, j)
        };
        let scaled = self.scale_by(v, |w| {
            let hi = self.h4(i, w);
            let mut p = Rat::one();
            for jj in i + 1..=m {
                p = p * (&hi - &self.h4(jj, w) + Rat::int(jj as i64 - i as i64));
            }
            for jj in 1..=m {
                if jj != i {
                    p = p * (&hi + &self.h4(jj, w) + Rat::int(2 * m as i64 - i as i64 - jj as i64));
                }
            }
            Ok(p)
        })?;
        Ok(self.project(&self.even_sub(m), &x.apply(&scaled)))
    }

    /// `s_{ki}` for `o_{2k} ↓ o_{2k-1}`, `i = 1..k-1`.
    pub fn s_plain(&self, k: usize, i: usize, v: &[Rat]) -> Result<Vector> {
        let n = self.n();
        if k < 2 || k > n || i == 0 || i >= k {
            return Err(Error::Domain(format!("s_({k},{i}) is not defined here")));
        }
        let c = (n + 1 - k) as i64;
        let j = label(n, i);
        let x = &self.gen(-c, j) + &self.gen(c, j);
        let scaled = self.scale_by(v, |w| {
            let hi = self.h4(i, w);
            let mut p = Rat::one();
            for jj in i + 1..k {
                p = p * (&hi - &self.h4(jj, w) + Rat::int(jj as i64 - i as i64));
            }
            let fi = Rat::int(2) * (&hi + &Rat::int(k as i64 - i as i64));
            p = p * fi.clone() * (fi + Rat::one());
            for jj in 1..k {
                if jj != i {
                    p = p
                        * (&hi
                            + &self.h4(jj, w)
                            + Rat::int(2 * k as i64 - 1 - i as i64 - jj as i64));
                }
            }
            Ok(p)
        })?;
        Ok(self.project(&self.odd_sub(k - 1), &x.apply(&scaled)))
    }

    fn apply_s_prime_row(
        &self,
        m: usize,
        top: &[i64],
        low: &[i64],
        mut v: Vector,
    ) -> Result<Vector> {
        for i in (1..=m).rev() {
            for _ in 0..exponent(top[i - 1] - low[i - 1])? {
                v = self.s_prime(m, i, &v)?;
            }
        }
        Ok(v)
    }

    fn apply_s_row(&self, k: usize, top: &[i64], low: &[i64], mut v: Vector) -> Result<Vector> {
        for i in (1..k).rev() {
            for _ in 0..exponent(top[i - 1] - low[i - 1])? {
                v = self.s_plain(k, i, &v)?;
            }
        }
        Ok(v)
    }

    /// Orthogonal basis along `o_N ⊃ o_{N-1} ⊃ ... ⊃ o_2`. The operators of each step act
    /// on vectors that are highest for the larger algebra of that step.
    pub fn orth_gt_basis(&self) -> Result<Vec<(OrthPattern, Vector)>> {
        self.orth_gt_basis_ordered(false)
    }

    /// As [`Self::orth_gt_basis`], optionally with the two operator groups of each factor
    /// applied in the order they are printed.
    pub fn orth_gt_basis_ordered(&self, printed: bool) -> Result<Vec<(OrthPattern, Vector)>> {
        let n = self.n();
        let lam4 = flip_convention(&self.lambda);
        let mut out = Vec::new();
        match self.series() {
            Series::B => {
                for p in enumerate_b4(&lam4)? {
                    let mut v = self.highest();
                    for k in (1..=n).rev() {
                        let prime =
                            |v: Vector| self.apply_s_prime_row(k, &p.lam[k - 1], &p.lamp[k - 1], v);
                        let plain = |v: Vector| {
                            if k >= 2 {
                                self.apply_s_row(k, &p.lamp[k - 1], &p.lam[k - 2], v)
                            } else {
                                Ok(v)
                            }
                        };
                        v = if printed {
                            prime(plain(v)?)?
                        } else {
                            plain(prime(v)?)?
                        };
                    }
                    out.push((OrthPattern::B(p), v));
                }
            }
            Series::D => {
                for p in enumerate_d4(&lam4)? {
                    let mut v = self.highest();
                    for k in (1..n).rev() {
                        let plain =
                            |v: Vector| self.apply_s_row(k + 1, &p.lam[k], &p.lamp[k - 1], v);
                        let prime =
                            |v: Vector| self.apply_s_prime_row(k, &p.lamp[k - 1], &p.lam[k - 1], v);
                        v = if printed {
                            plain(prime(v)?)?
                        } else {
                            prime(plain(v)?)?
                        };
                    }
                    out.push((OrthPattern::D(p), v));
                }
            }
            _ => {
                return Err(Error::Domain(
                    "the orthogonal chain needs series B or D".into(),
                ))
            }
        }
        Ok(out)
    }

    /// `o_2` charge `H_1` of a vector, doubled.
    pub fn o2_charge(&self, v: &[Rat]) -> Option<i64> {
        let mut q = None;
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                let c = -self.weights[i][self.n() - 1];
                if *q.get_or_insert(c) != c {
                    return None;
                }
            }
        }
        q
    }
}

/// The pattern indexing a basis vector of [`BcdIrrep::orth_gt_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrthPattern {
    B(PatternB4),
    D(PatternD4),
}

impl OrthPattern {
    pub fn weight(&self) -> Vec<i64> {
        match self {
            OrthPattern::B(p) => p.weight(),
            OrthPattern::D(p) => p.weight(),
        }
    }

    pub fn key(&self) -> Vec<i64> {
        match self {
            OrthPattern::B(p) => p.key(),
            OrthPattern::D(p) => p.key(),
        }
    }
}

/// True when the Gram matrix is diagonal with positive diagonal.
pub fn is_orthogonal_positive(gram: &[Vector]) -> bool {
    gram.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, x)| if i == j { x.is_positive() } else { x.is_zero() })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rank_of;

    fn vecs<T>(b: &[(T, Vector)]) -> Vec<Vector> {
        b.iter().map(|x| x.1.clone()).collect()
    }

    #[test]
    fn small_modules() {
        let cases: &[(Series, &[i64], usize)] = &[
            (Series::C, &[0, 0], 1),
            (Series::C, &[0, -2], 4),
            (Series::C, &[-2, -2], 5),
            (Series::B, &[-1, -1], 4),
            (Series::B, &[-2], 3),
            (Series::D, &[0, -2], 4),
            (Series::C, &[-2], 2),
        ];
        for &(s, l, d) in cases {
            let m = build_bcd_irrep(s, l).unwrap();
            assert_eq!(m.dim(), d, "{s:?} {l:?}");
            assert!(m.highest_check());
            assert_eq!(m.commutator_failures(), 0, "{s:?} {l:?}");
            assert!(m.contravariance_check());
        }
    }

    #[test]
    fn refusals() {
        assert!(matches!(
            build_bcd_irrep(Series::C, &[2, 0]),
            Err(Error::NotDominant(_))
        ));
        assert!(matches!(
            build_bcd_irrep_capped(Series::C, &[-4, -4], 10),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            build_bcd_irrep(Series::C, &[0, 0, 0, 0]),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn z_shifts_weights() {
        let m = build_bcd_irrep(Series::C, &[0, -2]).unwrap();
        let xi = m.highest();
        assert!(is_zero_vec(&m.z_ia(2, 1, -2, &xi).unwrap()));
        let v = m.z_ai(2, 2, 1, &xi).unwrap();
        assert!(!is_zero_vec(&v));
        assert_eq!(m.weight_of(&v).unwrap(), vec![-2, 0]);
        let sub = m.raising_level(1);
        assert_eq!(m.project(&sub, &v), v);
    }

    #[test]
    fn bases_c2() {
        for l in [[0, -2], [-2, -2], [-2, -4]] {
            let m = build_bcd_irrep(Series::C, &l).unwrap();
            let b = m.gt_basis_bcd().unwrap();
            assert_eq!(b.len(), m.dim());
            assert_eq!(rank_of(&vecs(&b)), m.dim());
            for (p, v) in &b {
                assert_eq!(m.weight_of(v).unwrap(), p.weight());
            }
        }
    }

    #[test]
    fn orthogonal_small() {
        let m = build_orth_irrep(Series::B, &[2]).unwrap();
        let b = m.orth_gt_basis().unwrap();
        assert_eq!(b.len(), 3);
        assert!(is_orthogonal_positive(&m.gram_of(&vecs(&b))));
        for (p, v) in &b {
            assert_eq!(m.o2_charge(v), Some(p.weight()[0]));
        }
        let t = build_orth_irrep(Series::B, &[0]).unwrap();
        assert_eq!(t.orth_gt_basis().unwrap().len(), 1);
    }
}
