//! Tensor product modules over Y(2) and the twisted Yangians, with their
//! Gelfand–Tsetlin type bases.
//!
//! Row and column labels `-n, n` are encoded as `M` and `P`. In each gl_2 factor the
//! label `-n` is the first index, so `E_{-n,n}` is the raising generator.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::{is_zero_vec, rank_of, unit_vec, OpPoly, Rat, SparseMat, Vector};
use crate::gln::build_irrep;
use crate::{Error, Result};

/// Label `-n`.
pub const M: usize = 0;
/// Label `n`.
pub const P: usize = 1;

fn flip(a: usize) -> usize {
    1 - a
}

/// `sgn` of a label.
fn sgn(a: usize) -> i64 {
    if a == M {
        -1
    } else {
        1
    }
}

/// Pair `(α, β)` with `α - β ∈ Z_+`; its string is `{β, β+1, ..., α-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HWString {
    pub alpha: Rat,
    pub beta: Rat,
}

impl HWString {
    pub fn new(alpha: Rat, beta: Rat) -> Result<Self> {
        let d = &alpha - &beta;
        if !d.is_integer() || d.is_negative() {
            return Err(Error::Domain(format!(
                "α - β must be a nonnegative integer, got α={alpha}, β={beta}"
            )));
        }
        Ok(HWString { alpha, beta })
    }

    pub fn ints(alpha: i64, beta: i64) -> Result<Self> {
        Self::new(Rat::int(alpha), Rat::int(beta))
    }

    /// `α - β`, the number of string elements.
    pub fn len(&self) -> usize {
        (&self.alpha - &self.beta)
            .to_i64()
            .expect("integral length") as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `S(-β, -α)`.
    pub fn reflected(&self) -> HWString {
        HWString {
            alpha: -&self.beta,
            beta: -&self.alpha,
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let d = x - &self.beta;
        d.is_integer() && !d.is_negative() && x < &self.alpha
    }

    fn same_class(&self, o: &HWString) -> bool {
        (&self.beta - &o.beta).is_integer()
    }

    /// Subset relation on strings; the empty string is contained in everything.
    pub fn subset_of(&self, o: &HWString) -> bool {
        self.is_empty() || (self.same_class(o) && self.beta >= o.beta && self.alpha <= o.alpha)
    }

    pub fn disjoint(&self, o: &HWString) -> bool {
        if self.is_empty() || o.is_empty() || !self.same_class(o) {
            return true;
        }
        let lo = if self.beta > o.beta {
            &self.beta
        } else {
            &o.beta
        };
        let hi = if self.alpha < o.alpha {
            &self.alpha
        } else {
            &o.alpha
        };
        lo >= hi
    }
}

impl fmt::Display for HWString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{})", self.alpha, self.beta)
    }
}

/// True iff the union of two nonempty strings is again a string.
fn union_is_string(a: &HWString, b: &HWString) -> bool {
    if a.is_empty() || b.is_empty() || !a.same_class(b) {
        return false;
    }
    let lo = if a.beta > b.beta { &a.beta } else { &b.beta };
    let hi = if a.alpha < b.alpha {
        &a.alpha
    } else {
        &b.alpha
    };
    lo <= hi
}

/// General position: the union is not a string, or one string contains the other.
pub fn string_general_position(a: &HWString, b: &HWString) -> bool {
    !union_is_string(a, b) || a.subset_of(b) || b.subset_of(a)
}

pub fn irreducible_y2(factors: &[HWString]) -> bool {
    pairs(factors).all(|(a, b)| string_general_position(a, b))
}

pub fn irreducible_yminus(factors: &[HWString]) -> bool {
    pairs(factors)
        .all(|(a, b)| string_general_position(a, b) && string_general_position(a, &b.reflected()))
}

pub fn irreducible_yplus(factors: &[HWString], delta: &Rat) -> bool {
    let md = -delta;
    irreducible_yminus(factors)
        && factors
            .iter()
            .all(|s| !s.contains(&md) && !s.reflected().contains(&md))
}

fn pairs(f: &[HWString]) -> impl Iterator<Item = (&HWString, &HWString)> {
    (0..f.len()).flat_map(move |i| (i + 1..f.len()).map(move |j| (&f[i], &f[j])))
}

fn pairwise_disjoint(f: &[HWString]) -> bool {
    pairs(f).all(|(a, b)| a.disjoint(b))
}

fn reflected_disjoint(f: &[HWString]) -> bool {
    pairs(f).all(|(a, b)| a.disjoint(&b.reflected()))
}

/// Which twisted Yangian acts: `Minus` is the symplectic case, `Plus(δ)` the orthogonal
/// case twisted by the one-dimensional module `W(δ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Twist {
    Minus,
    Plus(Rat),
}

/// Kronecker product of operator polynomials.
pub fn poly_kron(a: &OpPoly, b: &OpPoly) -> OpPoly {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut coeffs = vec![SparseMat::zeros(ar * br, ac * bc); a.coeffs().len() + b.coeffs().len()];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            coeffs[i + j] = &coeffs[i + j] + &SparseMat::kron(x, y);
        }
    }
    OpPoly::from_coeffs(ar * br, ac * bc, coeffs).expect("shape")
}

/// `L(α_1,β_1) ⊗ ... ⊗ L(α_k,β_k)` with `T_ab(u) = u^k t_ab(u)`.
#[derive(Clone, Debug)]
pub struct YTensorModule {
    pub factors: Vec<HWString>,
    pub dim: usize,
    t: [[OpPoly; 2]; 2],
}

/// gl_2 generators of `L(α, β)` indexed by labels.
fn gl2_factor(s: &HWString) -> Result<[[SparseMat; 2]; 2]> {
    let m = 2 * s.len() as i64;
    let rep = build_irrep(2, &[m, 0])?;
    let id = SparseMat::identity(rep.dim());
    let shift = id.scale(&s.beta);
    Ok([
        [rep.gen(1, 1) + &shift, rep.gen(1, 2).clone()],
        [rep.gen(2, 1).clone(), rep.gen(2, 2) + &shift],
    ])
}

pub fn build_tensor_module(factors: &[HWString]) -> Result<YTensorModule> {
    if factors.is_empty() {
        return Err(Error::Domain(
            "a tensor module needs at least one factor".into(),
        ));
    }
    let mut t: Option<[[OpPoly; 2]; 2]> = None;
    for s in factors {
        let e = gl2_factor(s)?;
        let d = e[0][0].nrows();
        let local: [[OpPoly; 2]; 2] = std::array::from_fn(|a| {
            std::array::from_fn(|b| {
                if a == b {
                    OpPoly::linear(SparseMat::identity(d), e[a][b].clone()).expect("shape")
                } else {
                    OpPoly::constant(e[a][b].clone())
                }
            })
        });
        t = Some(match t {
            None => local,
            Some(prev) => std::array::from_fn(|a| {
                std::array::from_fn(|b| {
                    let x = poly_kron(&prev[a][M], &local[M][b]);
                    let y = poly_kron(&prev[a][P], &local[P][b]);
                    &x + &y
                })
            }),
        });
    }
    let t = t.unwrap();
    let dim = t[0][0].shape().0;
    Ok(YTensorModule {
        factors: factors.to_vec(),
        dim,
        t,
    })
}

/// All `γ` with `α_i - γ_i ∈ Z_+`, `γ_i - β_i ∈ Z_+`, in lexicographic order of offsets.
pub fn gamma_tuples(factors: &[HWString]) -> Vec<Vec<Rat>> {
    let mut out = vec![Vec::new()];
    for s in factors {
        let mut next = Vec::new();
        for p in &out {
            for j in 0..=s.len() {
                let mut q: Vec<Rat> = p.clone();
                q.push(&s.beta + &Rat::from(j));
                next.push(q);
            }
        }
        out = next;
    }
    out
}

impl YTensorModule {
    pub fn k(&self) -> usize {
        self.factors.len()
    }

    /// `T_ab(u)`.
    pub fn t(&self, a: usize, b: usize) -> &OpPoly {
        &self.t[a][b]
    }

    /// `η = ξ_1 ⊗ ... ⊗ ξ_k`.
    pub fn eta(&self) -> Vector {
        unit_vec(self.dim, 0)
    }

    /// Checks `(u-v)[T_ab(u),T_cd(v)] = T_cb(u)T_ad(v) - T_cb(v)T_ad(u)` for all labels at the given points.
    pub fn rtt_check(&self, points: &[(Rat, Rat)]) -> bool {
        for (u, v) in points {
            let tu: Vec<Vec<SparseMat>> = (0..2)
                .map(|a| (0..2).map(|b| self.t[a][b].eval(u)).collect())
                .collect();
            let tv: Vec<Vec<SparseMat>> = (0..2)
                .map(|a| (0..2).map(|b| self.t[a][b].eval(v)).collect())
                .collect();
            for a in 0..2 {
                for b in 0..2 {
                    for c in 0..2 {
                        for d in 0..2 {
                            let lhs = SparseMat::commutator(&tu[a][b], &tv[c][d]).scale(&(u - v));
                            let rhs = &(&tu[c][b] * &tv[a][d]) - &(&tv[c][b] * &tu[a][d]);
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// `d(u)` by the first form.
    pub fn quantum_det(&self) -> OpPoly {
        let one = Rat::one();
        let a = &self.t[M][M].shift(&one) * &self.t[P][P];
        let b = &self.t[P][M].shift(&one) * &self.t[M][P];
        &a - &b
    }

    /// `d(u)` by the second form.
    pub fn quantum_det_alt(&self) -> OpPoly {
        let one = Rat::one();
        let a = &self.t[M][M] * &self.t[P][P].shift(&one);
        let b = &self.t[M][P] * &self.t[P][M].shift(&one);
        &a - &b
    }

    /// The scalar `∏(u+α_i+1)(u+β_i)`, increasing-degree coefficients.
    pub fn qdet_scalar(&self) -> Vec<Rat> {
        let shifts: Vec<Rat> = self
            .factors
            .iter()
            .flat_map(|s| [&s.alpha + &Rat::one(), s.beta.clone()])
            .collect();
        crate::exact::poly_from_shifts(&shifts)
    }

    /// Both forms of `d(u)` agree, equal the scalar, and commute with every `T_ab` coefficient.
    pub fn qdet_check(&self) -> bool {
        let d = self.quantum_det();
        if d != self.quantum_det_alt() || d != OpPoly::scalar_poly(self.dim, &self.qdet_scalar()) {
            return false;
        }
        let gens: Vec<&SparseMat> = self.t.iter().flatten().flat_map(|p| p.coeffs()).collect();
        d.coeffs()
            .iter()
            .all(|c| gens.iter().all(|g| SparseMat::commutator(c, g).is_zero()))
    }

    /// Highest-vector conditions: `T_{-n,n}(u)η = 0` and the two eigenvalue formulas.
    pub fn highest_check(&self) -> bool {
        let eta = self.eta();
        let am: Vec<Rat> = self.factors.iter().map(|s| s.alpha.clone()).collect();
        let bm: Vec<Rat> = self.factors.iter().map(|s| s.beta.clone()).collect();
        let ea = crate::exact::poly_from_shifts(&am);
        let eb = crate::exact::poly_from_shifts(&bm);
        let ok_coeffs = |p: &OpPoly, want: &[Rat]| {
            (0..=self.k()).all(|j| {
                let mut v = vec![Rat::zero(); self.dim];
                v[0] = want.get(j).cloned().unwrap_or_else(Rat::zero);
                p.coeff(j).apply(&eta) == v
            })
        };
        self.t[M][P]
            .coeffs()
            .iter()
            .all(|c| is_zero_vec(&c.apply(&eta)))
            && ok_coeffs(&self.t[M][M], &ea)
            && ok_coeffs(&self.t[P][P], &eb)
    }

    /// `η_γ` for every admissible `γ`; refuses unless the module is irreducible with
    /// pairwise disjoint strings.
    pub fn eta_basis(&self) -> Result<Vec<(Vec<Rat>, Vector)>> {
        if !irreducible_y2(&self.factors) || !pairwise_disjoint(&self.factors) {
            return Err(Error::Hypothesis(
                "the η_γ basis needs an irreducible module with pairwise disjoint strings".into(),
            ));
        }
        let mut out = Vec::new();
        for g in gamma_tuples(&self.factors) {
            let mut v = self.eta();
            for (i, s) in self.factors.iter().enumerate().rev() {
                let steps = (&g[i] - &s.beta).to_i64().unwrap();
                for j in 0..steps {
                    let u0 = -(&s.beta + &Rat::int(j));
                    v = self.t[P][M].eval(&u0).apply(&v);
                }
            }
            out.push((g, v));
        }
        Ok(out)
    }

    /// Verifies the four action formulas on every `η_γ`, and that the `η_γ` are a basis.
    pub fn eta_action_check(&self) -> Result<bool> {
        let basis = self.eta_basis()?;
        let vecs: Vec<Vector> = basis.iter().map(|(_, v)| v.clone()).collect();
        if rank_of(&vecs) != self.dim || vecs.len() != self.dim {
            return Ok(false);
        }
        let find = |g: &[Rat]| {
            basis
                .iter()
                .find(|(h, _)| h.as_slice() == g)
                .map(|(_, v)| v.clone())
        };
        let k = self.k();
        let samples: Vec<Rat> = (0..2 * k as i64 + 3)
            .map(|j| Rat::new(2 * j + 1, 3))
            .collect();
        for (g, v) in &basis {
            // T_nn(u) η_γ = ∏(u+γ_i) η_γ
            let want = crate::exact::poly_from_shifts(g);
            for (j, c) in want.iter().enumerate() {
                if self.t[P][P].coeff(j).apply(v) != crate::exact::vec_scale(v, c) {
                    return Ok(false);
                }
            }
            for i in 0..k {
                let mgi = -g[i].clone();
                // T_{n,-n}(-γ_i) η_γ = η_{γ+δ_i}
                let mut up = g.clone();
                up[i] = &up[i] + &Rat::one();
                let target = if up[i] <= self.factors[i].alpha {
                    find(&up)
                } else {
                    None
                };
                let image = self.t[P][M].eval(&mgi).apply(v);
                match target {
                    Some(w) if image != w => return Ok(false),
                    None if !is_zero_vec(&image) => return Ok(false),
                    _ => {}
                }
                // T_{-n,n}(-γ_i) η_γ = -∏(α_m-γ_i+1)(β_m-γ_i) η_{γ-δ_i}
                let coef: Rat = -self
                    .factors
                    .iter()
                    .map(|s| (&s.alpha - &g[i] + Rat::one()) * (&s.beta - &g[i]))
                    .product::<Rat>();
                let mut down = g.clone();
                down[i] = &down[i] - &Rat::one();
                let image = self.t[M][P].eval(&mgi).apply(v);
                let want = if down[i] >= self.factors[i].beta {
                    crate::exact::vec_scale(&find(&down).unwrap(), &coef)
                } else {
                    vec![Rat::zero(); self.dim]
                };
                if image != want {
                    return Ok(false);
                }
            }
            // ∏(u+γ_i+1) T_{-n,-n}(u) η_γ = ∏(u+α_i+1)(u+β_i) η_γ + T_{-n,n}(u)T_{n,-n}(u+1) η_γ
            for u in &samples {
                let den: Rat = g.iter().map(|x| u + x + Rat::one()).product();
                let lhs = crate::exact::vec_scale(&self.t[M][M].eval(u).apply(v), &den);
                let sc: Rat = self
                    .factors
                    .iter()
                    .map(|s| (u + &s.alpha + Rat::one()) * (u + &s.beta))
                    .product();
                let extra = self.t[M][P]
                    .eval(u)
                    .apply(&self.t[P][M].eval(&(u + &Rat::one())).apply(v));
                let rhs = crate::exact::vec_add(&crate::exact::vec_scale(v, &sc), &extra);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    // ------------------------------------------------------------------
    // Twisted Yangians
    // ------------------------------------------------------------------

    fn theta(tw: &Twist, a: usize, b: usize) -> i64 {
        match tw {
            Twist::Plus(_) => 1,
            Twist::Minus => sgn(a) * sgn(b),
        }
    }

    /// `(-1)^k u^{2k} s_ab(u)` for `L` as a module over `Y^-(2)` or over `Y^+(2)` without `W(δ)`:
    /// `θ_nb T_an(u)T_{-b,-n}(-u) + θ_{-n,b} T_{a,-n}(u)T_{-b,n}(-u)`.
    pub fn s_poly(&self, tw: &Twist, a: usize, b: usize) -> OpPoly {
        let x =
            (&self.t[a][P] * &self.t[flip(b)][M].neg_var()).scale(&Rat::int(Self::theta(tw, P, b)));
        let y =
            (&self.t[a][M] * &self.t[flip(b)][P].neg_var()).scale(&Rat::int(Self::theta(tw, M, b)));
        &x + &y
    }

    /// Cleared twisted symmetry: `2u θ_ab S_{-b,-a}(-u) = 2u S_ab(u) ± (S_ab(u) - S_ab(-u))`,
    /// upper sign orthogonal; checked as an exact polynomial identity for all labels.
    pub fn twisted_symmetry_check(&self, tw: &Twist) -> bool {
        let dim = self.dim;
        let two_u = OpPoly::scalar_poly(dim, &[Rat::zero(), Rat::int(2)]);
        let pm = match tw {
            Twist::Plus(_) => Rat::one(),
            Twist::Minus => -Rat::one(),
        };
        (0..2).all(|a| {
            (0..2).all(|b| {
                let s = self.s_poly(tw, a, b);
                let lhs = (&two_u * &self.s_poly(tw, flip(b), flip(a)).neg_var())
                    .scale(&Rat::int(Self::theta(tw, a, b)));
                let rhs = &(&two_u * &s) + &(&s - &s.neg_var()).scale(&pm);
                lhs == rhs
            })
        })
    }

    /// `[s_{n,-n}(u), s_{n,-n}(v)] = 0` at the given points.
    pub fn s_commute_check(&self, tw: &Twist, points: &[(Rat, Rat)]) -> bool {
        let s = self.s_poly(tw, P, M);
        points
            .iter()
            .all(|(u, v)| SparseMat::commutator(&s.eval(u), &s.eval(v)).is_zero())
    }

    /// The polynomial `S_{n,-n}(u)` of the closed forms (symplectic, or orthogonal with `δ`).
    pub fn twisted_snn(&self, tw: &Twist) -> Result<OpPoly> {
        let k = self.k();
        let a = &self.t[P][M] * &self.t[P][P].neg_var();
        let b = &self.t[P][M].neg_var() * &self.t[P][P];
        let num = match tw {
            Twist::Minus => &a - &b,
            Twist::Plus(delta) => {
                let um = OpPoly::scalar_poly(self.dim, &[-delta.clone(), Rat::one()]);
                let up = OpPoly::scalar_poly(self.dim, &[delta.clone(), Rat::one()]);
                &(&um * &a) + &(&up * &b)
            }
        };
        let sign = Rat::int(if k.is_multiple_of(2) { 1 } else { -1 });
        let s = num
            .div_u()
            .ok_or_else(|| Error::Contract("S_{n,-n}(u) numerator is not divisible by u".into()))?
            .scale(&sign);
        if !s.is_even() || s.degree().is_some_and(|d| d + 2 > 2 * k) {
            return Err(Error::Contract(
                "S_{n,-n}(u) should be even of degree at most 2k-2".into(),
            ));
        }
        Ok(s)
    }

    /// `(-1)^k (u+1/2) S_{n,-n}(u)` against the definition of `s_{n,-n}(u)`, cleared of denominators.
    pub fn snn_matches_coproduct(&self, tw: &Twist) -> Result<bool> {
        let k = self.k();
        let sign = Rat::int(if k.is_multiple_of(2) { 1 } else { -1 });
        let half = OpPoly::scalar_poly(self.dim, &[Rat::new(1, 2), Rat::one()]);
        let lhs = (&half * &self.twisted_snn(tw)?).scale(&sign);
        let rhs = match tw {
            Twist::Minus => self.s_poly(tw, P, M),
            Twist::Plus(_) => self.s_poly_w(tw, P, M),
        };
        Ok(lhs == rhs)
    }

    /// `(-1)^k u^{2k}(u+1/2) s_ab(u)` on `L ⊗ W(δ) ≅ L` for the orthogonal twisted Yangian.
    pub fn s_poly_w(&self, tw: &Twist, a: usize, b: usize) -> OpPoly {
        let delta = match tw {
            Twist::Plus(d) => d.clone(),
            Twist::Minus => {
                return self
                    .s_poly(tw, a, b)
                    .mul_scalar_poly(&[Rat::new(1, 2), Rat::one()])
            }
        };
        let x = (&self.t[a][P] * &self.t[flip(b)][M].neg_var())
            .mul_scalar_poly(&[delta.clone(), Rat::one()]);
        let y = (&self.t[a][M] * &self.t[flip(b)][P].neg_var())
            .mul_scalar_poly(&[Rat::one() - delta, Rat::one()]);
        &x + &y
    }

    /// Verifies the formula for `S_{n,-n}(γ_i) η_γ` on every `η_γ`.
    pub fn twisted_action_check(&self, tw: &Twist) -> Result<bool> {
        let s = self.twisted_snn(tw)?;
        let basis = self.eta_basis()?;
        let k = self.k();
        for (g, v) in &basis {
            for i in 0..k {
                let mut coef: Rat = Rat::int(2)
                    * (0..k)
                        .filter(|&a| a != i)
                        .map(|a| -(&g[i] + &g[a]))
                        .product::<Rat>();
                if let Twist::Plus(delta) = tw {
                    coef = coef * (-(delta + &g[i]));
                }
                let mut up = g.clone();
                up[i] = &up[i] + &Rat::one();
                let image = s.eval(&g[i]).apply(v);
                let want = match basis.iter().find(|(h, _)| *h == up) {
                    Some((_, w)) => crate::exact::vec_scale(w, &coef),
                    None => vec![Rat::zero(); self.dim],
                };
                if image != want {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `ξ_γ = ∏_i S_{n,-n}(γ_i-1)...S_{n,-n}(β_i) η` under the corollary hypotheses.
    pub fn twisted_basis(&self, tw: &Twist) -> Result<Vec<(Vec<Rat>, Vector)>> {
        let irreducible = match tw {
            Twist::Minus => irreducible_yminus(&self.factors),
            Twist::Plus(d) => irreducible_yplus(&self.factors, d),
        };
        if !irreducible {
            return Err(Error::Hypothesis(
                "the twisted-Yangian module is not irreducible".into(),
            ));
        }
        if !pairwise_disjoint(&self.factors) || !reflected_disjoint(&self.factors) {
            return Err(Error::Hypothesis(
                "strings must be pairwise disjoint and disjoint from the reflected strings S(-β_j,-α_j)".into(),
            ));
        }
        let s = self.twisted_snn(tw)?;
        let mut out = Vec::new();
        for g in gamma_tuples(&self.factors) {
            let mut v = self.eta();
            for (i, st) in self.factors.iter().enumerate().rev() {
                let steps = (&g[i] - &st.beta).to_i64().unwrap();
                for j in 0..steps {
                    v = s.eval(&(&st.beta + &Rat::int(j))).apply(&v);
                }
            }
            out.push((g, v));
        }
        Ok(out)
    }

    /// All coefficient matrices of the generators of the acting algebra.
    pub fn generator_matrices(&self, tw: Option<&Twist>) -> Vec<SparseMat> {
        let mut gens = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                let p = match tw {
                    None => self.t[a][b].clone(),
                    Some(t @ Twist::Minus) => self.s_poly(t, a, b),
                    Some(t @ Twist::Plus(_)) => self.s_poly_w(t, a, b),
                };
                gens.extend(p.coeffs().iter().cloned());
            }
        }
        gens
    }
}

/// Irreducibility by brute force: the generated matrix algebra is all of `End(L)`.
pub fn brute_force_irreducible(gens: &[SparseMat], dim: usize) -> bool {
    let mut echelon: Vec<(usize, Vector)> = Vec::new();
    let mut insert = |m: &SparseMat| -> bool {
        let mut v: Vector = m.to_dense().concat();
        for (p, row) in &echelon {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                v = crate::exact::vec_sub(&v, &crate::exact::vec_scale(row, &c));
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let c = v[p].recip();
                let v = crate::exact::vec_scale(&v, &c);
                for (_, row) in echelon.iter_mut() {
                    if !row[p].is_zero() {
                        let r = row[p].clone();
                        *row = crate::exact::vec_sub(row, &crate::exact::vec_scale(&v, &r));
                    }
                }
                echelon.push((p, v));
                true
            }
        }
    };
    let id = SparseMat::identity(dim);
    insert(&id);
    let mut frontier = vec![id];
    let mut count = 1;
    while !frontier.is_empty() && count < dim * dim {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = g * x;
                if insert(&y) {
                    count += 1;
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    count == dim * dim
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: i64, b: i64) -> HWString {
        HWString::ints(a, b).unwrap()
    }

    #[test]
    fn general_position_examples() {
        assert!(string_general_position(&s(2, 0), &s(4, 3)));
        assert!(!string_general_position(&s(2, 0), &s(3, 1)));
        assert!(string_general_position(&s(3, 0), &s(2, 1)));
        assert!(irreducible_y2(&[s(2, 0)]));
        assert!(irreducible_y2(&[s(2, 0), s(4, 3)]));
        assert!(!irreducible_y2(&[s(2, 0), s(3, 1)]));
        assert!(irreducible_yminus(&[s(2, 0)]));
        assert!(!irreducible_yminus(&[s(2, 0), s(1, -1)]));
        let st = s(2, 0);
        assert!(!irreducible_yplus(
            std::slice::from_ref(&st),
            &-st.beta.clone()
        ));
    }

    #[test]
    fn single_factor_module() {
        let m = build_tensor_module(&[s(1, 0)]).unwrap();
        assert_eq!(m.dim, 2);
        assert!(m.highest_check());
        let eta = m.eta();
        assert_eq!(
            m.t(P, P).eval(&Rat::int(5)).apply(&eta),
            crate::exact::vec_scale(&eta, &Rat::int(5))
        );
        assert!(m.qdet_check());
        assert_eq!(
            m.qdet_scalar(),
            crate::exact::poly_from_shifts(&[Rat::int(2), Rat::int(0)])
        );
        let triv = build_tensor_module(&[s(0, 0)]).unwrap();
        assert_eq!(triv.dim, 1);
        assert!(triv.t(P, M).is_zero());
        assert!(triv.twisted_snn(&Twist::Minus).unwrap().is_zero());
    }

    #[test]
    fn two_factor_module() {
        let m = build_tensor_module(&[s(1, 0), s(3, 2)]).unwrap();
        let want =
            crate::exact::poly_from_shifts(&[Rat::int(2), Rat::int(0), Rat::int(4), Rat::int(2)]);
        assert_eq!(m.qdet_scalar(), want);
        assert!(m.qdet_check());
        let pts: Vec<(Rat, Rat)> = (1..6).map(|j| (Rat::new(j, 2), Rat::new(-j, 3))).collect();
        assert!(m.rtt_check(&pts));
        assert!(m.eta_action_check().unwrap());
    }

    #[test]
    fn twisted_examples() {
        let m = build_tensor_module(&[s(1, 0)]).unwrap();
        assert!(m.twisted_action_check(&Twist::Minus).unwrap());
        let b = m.twisted_basis(&Twist::Minus).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(
            rank_of(&b.iter().map(|x| x.1.clone()).collect::<Vec<_>>()),
            2
        );
        for tw in [Twist::Minus, Twist::Plus(Rat::new(1, 3))] {
            assert!(m.twisted_symmetry_check(&tw));
            assert!(m.snn_matches_coproduct(&tw).unwrap());
        }
        let m2 = build_tensor_module(&[s(1, 0), s(4, 3)]).unwrap();
        let tw = Twist::Plus(Rat::new(1, 2));
        assert!(m2.twisted_action_check(&tw).unwrap());
        assert!(m2.snn_matches_coproduct(&tw).unwrap());
        assert!(m2.snn_matches_coproduct(&Twist::Minus).unwrap());
        assert_eq!(m2.twisted_basis(&tw).unwrap().len(), 4);
    }

    #[test]
    fn brute_force_agrees() {
        let good = build_tensor_module(&[s(2, 0), s(4, 3)]).unwrap();
        assert!(brute_force_irreducible(
            &good.generator_matrices(None),
            good.dim
        ));
        let bad = build_tensor_module(&[s(2, 0), s(3, 1)]).unwrap();
        assert!(!brute_force_irreducible(
            &bad.generator_matrices(None),
            bad.dim
        ));
    }
}
