//! Irreducible representations of gl_n in the Gelfand–Tsetlin basis with exact matrices.

use std::collections::{BTreeMap, HashMap};

use crate::exact::{
    factorial, is_zero_vec, nullspace, proportionality, unit_vec, OpPoly, Rat, SparseMat, Vector,
};
use crate::patterns::{enumerate_a, GTPatternA, GtPattern};
use crate::{Error, Result};

/// `L(λ)` with the generator matrices in the basis `ξ_Λ`.
#[derive(Clone, Debug)]
pub struct GlnIrrep {
    pub n: usize,
    pub lambda: Vec<i64>,
    pub basis: Vec<GTPatternA>,
    index: HashMap<GTPatternA, usize>,
    /// All generators `E_ij` keyed by `(i, j)`, 1-based. Near-diagonal ones come from
    /// the basis formulas, the rest from commutators.
    pub e: BTreeMap<(usize, usize), SparseMat>,
    pub normsq: Vec<Rat>,
}

fn l_of(p: &GTPatternA, k: usize, i: usize) -> Rat {
    p.l(k, i)
}

/// Builds `L(λ)` for a doubled-integer highest weight of length `n`.
pub fn build_irrep(n: usize, lambda: &[i64]) -> Result<GlnIrrep> {
    if lambda.len() != n || n == 0 {
        return Err(Error::Shape(format!(
            "highest weight must have {n} entries"
        )));
    }
    let basis = enumerate_a(lambda)?;
    let dim = basis.len();
    let index: HashMap<GTPatternA, usize> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut e = BTreeMap::new();

    for k in 1..=n {
        let diag: Vec<Rat> = basis.iter().map(|p| Rat::half(p.weight()[k - 1])).collect();
        e.insert((k, k), SparseMat::diag(&diag));
    }
    for k in 1..n {
        let mut up = SparseMat::zeros(dim, dim);
        let mut down = SparseMat::zeros(dim, dim);
        for (c, p) in basis.iter().enumerate() {
            for i in 1..=k {
                let lki = l_of(p, k, i);
                let mut den = Rat::one();
                for j in (1..=k).filter(|&j| j != i) {
                    let d = &lki - &l_of(p, k, j);
                    assert!(!d.is_zero(), "row entries of a pattern give distinct l");
                    den = den * d;
                }
                if let Some(q) = p.shifted(k, i, 1) {
                    let num: Rat = (1..=k + 1).map(|j| &lki - &l_of(p, k + 1, j)).product();
                    up.add_at(index[&q], c, &(-(num / den.clone())));
                }
                if let Some(q) = p.shifted(k, i, -1) {
                    let num: Rat = (1..k).map(|j| &lki - &l_of(p, k - 1, j)).product();
                    down.add_at(index[&q], c, &(num / den));
                }
            }
        }
        e.insert((k, k + 1), up);
        e.insert((k + 1, k), down);
    }
    for gap in 2..n {
        for i in 1..=n - gap {
            let j = i + gap;
            let a = SparseMat::commutator(&e[&(i, j - 1)], &e[&(j - 1, j)]);
            let b = SparseMat::commutator(&e[&(j, i + 1)], &e[&(i + 1, i)]);
            e.insert((i, j), a);
            e.insert((j, i), b);
        }
    }
    let normsq = basis.iter().map(norm_sq).collect();
    Ok(GlnIrrep {
        n,
        lambda: lambda.to_vec(),
        basis,
        index,
        e,
        normsq,
    })
}

/// `N_Λ = ⟨ξ_Λ, ξ_Λ⟩` from the factorial product formula.
pub fn norm_sq(p: &GTPatternA) -> Rat {
    let n = p.n();
    let fact = |r: Rat| factorial(r.to_i64().expect("integral factorial argument"));
    let mut acc = Rat::one();
    for k in 2..=n {
        for i in 1..k {
            for j in i..k {
                acc = acc * fact(l_of(p, k, i) - l_of(p, k - 1, j))
                    / fact(l_of(p, k - 1, i) - l_of(p, k - 1, j));
            }
        }
        for i in 1..=k {
            for j in i + 1..=k {
                let a = l_of(p, k, i) - l_of(p, k, j) - Rat::one();
                acc = acc * fact(a);
                if i < k {
                    acc = acc / fact(l_of(p, k - 1, i) - l_of(p, k, j) - Rat::one());
                }
            }
        }
    }
    acc
}

impl GlnIrrep {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, p: &GTPatternA) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `E_ij`, 1-based.
    pub fn gen(&self, i: usize, j: usize) -> &SparseMat {
        &self.e[&(i, j)]
    }

    /// `E_ij` recomputed as `[E_ik, E_kj]` through an arbitrary intermediate `k`.
    pub fn gen_via(&self, i: usize, k: usize, j: usize) -> SparseMat {
        SparseMat::commutator(self.gen(i, k), self.gen(k, j))
    }

    /// `h_i = E_ii - i + 1`.
    pub fn h(&self, i: usize) -> SparseMat {
        let id = SparseMat::identity(self.dim());
        self.gen(i, i) - &id.scale(&Rat::from(i as i64 - 1))
    }

    /// Coordinate vector of the highest vector `ξ`.
    pub fn highest(&self) -> Vector {
        unit_vec(self.dim(), 0)
    }

    /// Number of `(i, j, k, l)` for which `[E_ij, E_kl] = δ_jk E_il - δ_li E_kj` fails.
    pub fn commutator_failures(&self) -> usize {
        let n = self.n;
        let mut bad = 0;
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        let lhs = SparseMat::commutator(self.gen(i, j), self.gen(k, l));
                        let mut rhs = SparseMat::zeros(self.dim(), self.dim());
                        if j == k {
                            rhs = &rhs + self.gen(i, l);
                        }
                        if l == i {
                            rhs = &rhs - self.gen(k, j);
                        }
                        if lhs != rhs {
                            bad += 1;
                        }
                    }
                }
            }
        }
        bad
    }

    /// Number of entries violating `N_M (E_ij)_{MΛ} = N_Λ (E_ji)_{ΛM}`.
    pub fn adjointness_failures(&self) -> usize {
        let mut bad = 0;
        for (&(i, j), m) in &self.e {
            let t = self.gen(j, i);
            for r in 0..self.dim() {
                for c in 0..self.dim() {
                    let a = &self.normsq[r] * &m.get(r, c);
                    let b = &self.normsq[c] * &t.get(c, r);
                    if a != b {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    // ------------------------------------------------------------------
    // Lowering and raising operators
    // ------------------------------------------------------------------

    /// `z_{ki}` (lowering) realized in `gl_k ⊂ gl_n`, for `1 <= i < k <= n`.
    pub fn z_lower(&self, k: usize, i: usize) -> SparseMat {
        let mids: Vec<usize> = (i + 1..k).collect();
        let mut acc = SparseMat::zeros(self.dim(), self.dim());
        for mask in 0u32..(1 << mids.len()) {
            let chain: Vec<usize> = mids
                .iter()
                .enumerate()
                .filter(|(t, _)| mask >> t & 1 == 1)
                .map(|(_, &m)| m)
                .collect();
            let comp: Vec<usize> = mids
                .iter()
                .copied()
                .filter(|m| !chain.contains(m))
                .collect();
            // E_{i_1 i} E_{i_2 i_1} ... E_{k i_s}
            let mut seq = vec![i];
            seq.extend(&chain);
            seq.push(k);
            let mut term = SparseMat::identity(self.dim());
            for w in seq.windows(2) {
                term = &term * self.gen(w[1], w[0]);
            }
            for &j in &comp {
                term = &term * &(&self.h(i) - &self.h(j));
            }
            acc = &acc + &term;
        }
        acc
    }

    /// `z_{ik}` (raising) realized in `gl_k ⊂ gl_n`, for `1 <= i < k <= n`.
    pub fn z_raise(&self, k: usize, i: usize) -> SparseMat {
        let mids: Vec<usize> = (1..i).rev().collect();
        let mut acc = SparseMat::zeros(self.dim(), self.dim());
        for mask in 0u32..(1 << mids.len()) {
            let chain: Vec<usize> = mids
                .iter()
                .enumerate()
                .filter(|(t, _)| mask >> t & 1 == 1)
                .map(|(_, &m)| m)
                .collect();
            let comp: Vec<usize> = mids
                .iter()
                .copied()
                .filter(|m| !chain.contains(m))
                .collect();
            // E_{i i_1} E_{i_1 i_2} ... E_{i_s k}
            let mut seq = vec![i];
            seq.extend(&chain);
            seq.push(k);
            let mut term = SparseMat::identity(self.dim());
            for w in seq.windows(2) {
                term = &term * self.gen(w[0], w[1]);
            }
            for &j in &comp {
                term = &term * &(&self.h(i) - &self.h(j));
            }
            acc = &acc + &term;
        }
        acc
    }

    /// `ξ_Λ` rebuilt as an ordered product of lowering operators applied to `ξ`.
    pub fn basis_via_lowering(&self) -> Vec<Vector> {
        let n = self.n;
        let zs: BTreeMap<(usize, usize), SparseMat> = (2..=n)
            .flat_map(|k| (1..k).map(move |i| (k, i)))
            .map(|(k, i)| ((k, i), self.z_lower(k, i)))
            .collect();
        self.basis
            .iter()
            .map(|p| {
                let mut v = self.highest();
                for k in (2..=n).rev() {
                    for i in (1..k).rev() {
                        let times = (p.entry(k, i) - p.entry(k - 1, i)) / 2;
                        for _ in 0..times {
                            v = zs[&(k, i)].apply(&v);
                        }
                    }
                }
                v
            })
            .collect()
    }

    /// Number of patterns whose lowering-operator vector differs from the unit vector `ξ_Λ`.
    pub fn lowering_basis_mismatches(&self) -> usize {
        self.basis_via_lowering()
            .iter()
            .enumerate()
            .filter(|(c, v)| **v != unit_vec(self.dim(), *c))
            .count()
    }

    /// `ξ_μ = z_{n1}^{λ_1-μ_1} ... z_{n,n-1}^{λ_{n-1}-μ_{n-1}} ξ`.
    pub fn xi_mu(&self, mu: &[i64]) -> Result<Vector> {
        let n = self.n;
        if mu.len() + 1 != n {
            return Err(Error::Shape(format!("μ must have {} entries", n - 1)));
        }
        for i in 0..n - 1 {
            let ok = mu[i] <= self.lambda[i]
                && mu[i] >= self.lambda[i + 1]
                && (self.lambda[i] - mu[i]) % 2 == 0;
            if !ok {
                return Err(Error::Domain(format!(
                    "μ violates betweenness at position {}",
                    i + 1
                )));
            }
        }
        let mut v = self.highest();
        for i in (1..n).rev() {
            let z = self.z_lower(n, i);
            for _ in 0..(self.lambda[i - 1] - mu[i - 1]) / 2 {
                v = z.apply(&v);
            }
        }
        Ok(v)
    }

    /// Coefficient `c` in `z_in ξ_μ = c ξ_{μ+δ_i}`, checked against `-(m_i-l_1)...(m_i-l_n)`.
    pub fn lemma_aximu_check(&self, mu: &[i64], i: usize) -> Result<Rat> {
        let n = self.n;
        let xi = self.xi_mu(mu)?;
        let image = self.z_raise(n, i).apply(&xi);
        let m_i = Rat::half(mu[i - 1]) - Rat::from(i) + Rat::one();
        let closed: Rat = (1..=n)
            .map(|j| &m_i - &(Rat::half(self.lambda[j - 1]) - Rat::from(j) + Rat::one()))
            .product::<Rat>()
            * Rat::int(-1);
        let got = if mu[i - 1] == self.lambda[i - 1] {
            if !is_zero_vec(&image) {
                return Err(Error::Contract("z_in ξ_μ should vanish".into()));
            }
            Rat::zero()
        } else {
            let mut up = mu.to_vec();
            up[i - 1] += 2;
            let target = self.xi_mu(&up)?;
            proportionality(&image, &target).ok_or_else(|| {
                Error::Contract("z_in ξ_μ is not proportional to ξ_(μ+δ_i)".into())
            })?
        };
        if got != closed {
            return Err(Error::Contract(format!(
                "z_in coefficient {got} differs from closed form {closed}"
            )));
        }
        Ok(got)
    }

    /// Basis of `L(λ)^+`, the vectors killed by `E_ij` for `i < j < n`.
    pub fn highest_subspace(&self) -> Vec<Vector> {
        let dim = self.dim();
        let mut rows = Vec::new();
        for i in 1..self.n.saturating_sub(1) {
            let m = self.gen(i, i + 1);
            rows.extend(m.to_dense());
        }
        if rows.is_empty() {
            return (0..dim).map(|c| unit_vec(dim, c)).collect();
        }
        nullspace(&SparseMat::from_dense(&rows, dim))
    }

    // ------------------------------------------------------------------
    // Capelli determinant and quantum minors
    // ------------------------------------------------------------------

    /// `E(u - c)_{ab} = δ_ab (u - c) + E_ab`.
    fn eu(&self, a: usize, b: usize, c: i64) -> OpPoly {
        let dim = self.dim();
        let id = SparseMat::identity(dim);
        if a == b {
            OpPoly::linear(id.clone(), self.gen(a, b) - &id.scale(&Rat::int(c))).expect("shape")
        } else {
            OpPoly::constant(self.gen(a, b).clone())
        }
    }

    /// Quantum minor by column expansion: `Σ sgn σ E(u)_{a_σ(1) b_1} ... E(u-s+1)_{a_σ(s) b_s}`.
    pub fn quantum_minor(&self, rows: &[usize], cols: &[usize]) -> Result<OpPoly> {
        self.check_minor(rows, cols)?;
        let s = rows.len();
        let mut acc = OpPoly::zero(self.dim(), self.dim());
        for (perm, sign) in permutations(s) {
            let mut term = OpPoly::scalar_poly(self.dim(), &[Rat::int(sign)]);
            for r in 0..s {
                term = &term * &self.eu(rows[perm[r]], cols[r], r as i64);
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Quantum minor by row expansion: `Σ sgn σ E(u-s+1)_{a_1 b_σ(1)} ... E(u)_{a_s b_σ(s)}`.
    pub fn quantum_minor_rows(&self, rows: &[usize], cols: &[usize]) -> Result<OpPoly> {
        self.check_minor(rows, cols)?;
        let s = rows.len();
        let mut acc = OpPoly::zero(self.dim(), self.dim());
        for (perm, sign) in permutations(s) {
            let mut term = OpPoly::scalar_poly(self.dim(), &[Rat::int(sign)]);
            for r in 0..s {
                term = &term * &self.eu(rows[r], cols[perm[r]], (s - 1 - r) as i64);
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    fn check_minor(&self, rows: &[usize], cols: &[usize]) -> Result<()> {
        if rows.len() != cols.len() || rows.is_empty() {
            return Err(Error::Shape(
                "quantum minor needs equally many rows and columns".into(),
            ));
        }
        if rows.iter().chain(cols).any(|&a| a == 0 || a > self.n) {
            return Err(Error::Domain(format!(
                "minor indices must lie in 1..{}",
                self.n
            )));
        }
        Ok(())
    }

    /// Capelli determinant of the top-left `m x m` block.
    pub fn capelli_det(&self, m: usize) -> Result<OpPoly> {
        let idx: Vec<usize> = (1..=m).collect();
        self.quantum_minor(&idx, &idx)
    }

    /// `τ_ni(u)` for `1 <= i < n`.
    pub fn tau_lower(&self, i: usize) -> Result<OpPoly> {
        let n = self.n;
        let rows: Vec<usize> = (i + 1..=n).collect();
        let cols: Vec<usize> = (i..n).collect();
        self.quantum_minor(&rows, &cols)
    }

    /// `τ_in(u) = (-1)^{i-1} E(u)^{1..i}_{1..i-1,n}` for `1 <= i < n`.
    pub fn tau_raise(&self, i: usize) -> Result<OpPoly> {
        let rows: Vec<usize> = (1..=i).collect();
        let mut cols: Vec<usize> = (1..i).collect();
        cols.push(self.n);
        let sign = if (i - 1).is_multiple_of(2) { 1 } else { -1 };
        Ok(self.quantum_minor(&rows, &cols)?.scale(&Rat::int(sign)))
    }

    /// Checks `τ_ni(-h_i-i+1) = z_ni` and `τ_in(-h_i) = z_in` on `L(λ)^+`.
    pub fn tau_equals_z_check(&self, i: usize) -> Result<bool> {
        let n = self.n;
        let dim = self.dim();
        let id = SparseMat::identity(dim);
        let at_low = &(-&self.h(i)) - &id.scale(&Rat::from(i as i64 - 1));
        let low = self.tau_lower(i)?.eval_left(&at_low)?;
        let high = self.tau_raise(i)?.eval_left(&(-&self.h(i)))?;
        let zl = self.z_lower(n, i);
        let zr = self.z_raise(n, i);
        Ok(self
            .highest_subspace()
            .iter()
            .all(|v| low.apply(v) == zl.apply(v) && high.apply(v) == zr.apply(v)))
    }

    /// Checks `C(-h_i+1) = (-1)^{n-1} z_in z_ni` and `C(-h_i) = (-1)^{n-1} z_ni z_in` on `L(λ)^+`.
    pub fn capelli_interpolation_check(&self, i: usize) -> Result<bool> {
        let n = self.n;
        let dim = self.dim();
        let id = SparseMat::identity(dim);
        let c = self.capelli_det(n)?;
        let sign = Rat::int(if (n - 1).is_multiple_of(2) { 1 } else { -1 });
        let a = c.eval_left(&(&id - &self.h(i)))?;
        let b = c.eval_left(&(-&self.h(i)))?;
        let zl = self.z_lower(n, i);
        let zr = self.z_raise(n, i);
        let ab = (&zr * &zl).scale(&sign);
        let ba = (&zl * &zr).scale(&sign);
        Ok(self
            .highest_subspace()
            .iter()
            .all(|v| a.apply(v) == ab.apply(v) && b.apply(v) == ba.apply(v)))
    }

    /// The scalar polynomial `(u+l_1)...(u+l_n)` as increasing-degree coefficients.
    pub fn capelli_eigen_poly(&self) -> Vec<Rat> {
        let ls: Vec<Rat> = (1..=self.n)
            .map(|i| Rat::half(self.lambda[i - 1]) - Rat::from(i) + Rat::one())
            .collect();
        crate::exact::poly_from_shifts(&ls)
    }

    // ------------------------------------------------------------------
    // Drinfeld-type generators
    // ------------------------------------------------------------------

    /// `A_m(u)`, `B_m(u)` or `C_m(u)` as an operator polynomial.
    pub fn drinfeld_poly(&self, m: usize, which: char) -> Result<OpPoly> {
        let top: Vec<usize> = (1..=m).collect();
        let mut swapped: Vec<usize> = (1..m).collect();
        swapped.push(m + 1);
        match which {
            'A' => self.quantum_minor(&top, &top),
            'B' => self.quantum_minor(&top, &swapped),
            'C' => self.quantum_minor(&swapped, &top),
            _ => Err(Error::Parse(format!(
                "unknown generator {which:?}; expected A, B or C"
            ))),
        }
    }

    /// Value of a Drinfeld generator at a scalar `u0`.
    pub fn drinfeld_action(&self, m: usize, which: char, u0: &Rat) -> Result<SparseMat> {
        if which != 'A' && m >= self.n {
            return Err(Error::Domain(format!("B_m and C_m need m < {}", self.n)));
        }
        Ok(self.drinfeld_poly(m, which)?.eval(u0))
    }

    /// Verifies the eigenvalue and shift formulas of `A_m`, `B_m`, `C_m` on every basis vector.
    pub fn drinfeld_check(&self) -> Result<bool> {
        let n = self.n;
        let dim = self.dim();
        for m in 1..=n {
            let a = self.drinfeld_poly(m, 'A')?;
            for (c, p) in self.basis.iter().enumerate() {
                let shifts: Vec<Rat> = (1..=m).map(|i| p.l(m, i)).collect();
                let want = crate::exact::poly_from_shifts(&shifts);
                for (deg, coef) in want.iter().enumerate() {
                    let col = a.coeff(deg).column(c);
                    let mut expect = vec![Rat::zero(); dim];
                    expect[c] = coef.clone();
                    if col != expect {
                        return Ok(false);
                    }
                }
            }
            if m == n {
                continue;
            }
            let b = self.drinfeld_poly(m, 'B')?;
            let cc = self.drinfeld_poly(m, 'C')?;
            for (c, p) in self.basis.iter().enumerate() {
                let v = unit_vec(dim, c);
                for j in 1..=m {
                    let lmj = p.l(m, j);
                    let coef_b: Rat = -(1..=m + 1)
                        .map(|i| p.l(m + 1, i) - lmj.clone())
                        .product::<Rat>();
                    let mut want_b = vec![Rat::zero(); dim];
                    if let Some(q) = p.shifted(m, j, 1) {
                        want_b[self.index[&q]] = coef_b;
                    }
                    if b.eval(&-lmj.clone()).apply(&v) != want_b {
                        return Ok(false);
                    }
                    let coef_c: Rat = (1..m).map(|i| p.l(m - 1, i) - lmj.clone()).product();
                    let mut want_c = vec![Rat::zero(); dim];
                    if let Some(q) = p.shifted(m, j, -1) {
                        want_c[self.index[&q]] = coef_c;
                    }
                    if cc.eval(&-lmj).apply(&v) != want_c {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `κ_Λ` from ordered products of `C_m` evaluations applied to `ξ`.
    pub fn kappa_basis(&self) -> Result<Vec<Vector>> {
        let n = self.n;
        let cs: Vec<OpPoly> = (1..n)
            .map(|m| self.drinfeld_poly(m, 'C'))
            .collect::<Result<_>>()?;
        let l_top = |k: usize| Rat::half(self.lambda[k - 1]) - Rat::from(k) + Rat::one();
        let mut out = Vec::new();
        for p in &self.basis {
            let mut v = self.highest();
            for k in (1..n).rev() {
                for m in k..n {
                    // C_m(-l_k), C_m(-l_k+1), ..., C_m(-l_mk-1), rightmost first
                    let steps = (self.lambda[k - 1] - p.entry(m, k)) / 2;
                    for t in 0..steps {
                        let u0 = -(l_top(k) - Rat::int(t));
                        v = cs[m - 1].eval(&u0).apply(&v);
                    }
                }
            }
            out.push(v);
        }
        Ok(out)
    }

    /// Ratios `κ_Λ / ξ_Λ`; errors if some `κ_Λ` is not a nonzero multiple of `ξ_Λ`.
    pub fn kappa_constants(&self) -> Result<Vec<Rat>> {
        self.kappa_basis()?
            .iter()
            .enumerate()
            .map(|(c, v)| {
                let r = proportionality(v, &unit_vec(self.dim(), c));
                match r {
                    Some(x) if !x.is_zero() => Ok(x),
                    _ => Err(Error::Contract(format!(
                        "κ for basis vector {c} is not a nonzero multiple of ξ"
                    ))),
                }
            })
            .collect()
    }

    /// Checks that `a_mi` (coefficients of `A_m(u)`) act diagonally with eigenvalues `α_mi(Λ)`.
    pub fn gt_subalgebra_check(&self) -> Result<bool> {
        for m in 1..=self.n {
            let a = self.drinfeld_poly(m, 'A')?;
            for i in 1..=m {
                let coef = a.coeff(m - i);
                let want: Vec<Rat> = self
                    .basis
                    .iter()
                    .map(|p| gt_eigenvalues(p)[m - 1][i - 1].clone())
                    .collect();
                if coef != SparseMat::diag(&want) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    // ------------------------------------------------------------------
    // Characteristic identity
    // ------------------------------------------------------------------

    /// `E = Σ e_ij ⊗ E_ij` on `L* ⊗ L(λ)`.
    pub fn big_e(&self) -> SparseMat {
        let n = self.n;
        let dim = self.dim();
        let mut acc = SparseMat::zeros(n * dim, n * dim);
        for i in 1..=n {
            for j in 1..=n {
                let mut unit = SparseMat::zeros(n, n);
                unit.set(i - 1, j - 1, Rat::one());
                acc = &acc + &SparseMat::kron(&unit, self.gen(i, j));
            }
        }
        acc
    }

    /// `α_r = λ_r + n - r`.
    pub fn alphas(&self) -> Vec<Rat> {
        (1..=self.n)
            .map(|r| Rat::half(self.lambda[r - 1]) + Rat::from(self.n - r))
            .collect()
    }

    /// Projections `P[r]`; zero when `λ_r = λ_{r+1}`.
    pub fn projections(&self) -> Vec<SparseMat> {
        let big = self.big_e();
        let size = big.nrows();
        let id = SparseMat::identity(size);
        let al = self.alphas();
        (0..self.n)
            .map(|r| {
                let mut p = id.clone();
                let mut den = Rat::one();
                for s in (0..self.n).filter(|&s| s != r) {
                    p = &p * &(&big - &id.scale(&al[s]));
                    den = den * (&al[r] - &al[s]);
                }
                p.scale(&den.recip())
            })
            .collect()
    }

    /// Verifies `∏(E - α_r) = 0`, idempotence of `P[r]`, `Σ P[r] = 1`, `Σ α_r P[r] = E`,
    /// and that `P[r]` vanishes exactly for the zero summands.
    pub fn characteristic_identity_check(&self) -> bool {
        let big = self.big_e();
        let size = big.nrows();
        let id = SparseMat::identity(size);
        let al = self.alphas();
        let mut prod = id.clone();
        let mut minimal = id.clone();
        for r in 0..self.n {
            let f = &big - &id.scale(&al[r]);
            prod = &prod * &f;
            if self.summand_present(r + 1) {
                minimal = &minimal * &f;
            }
        }
        if !prod.is_zero() || !minimal.is_zero() {
            return false;
        }
        let ps = self.projections();
        let mut sum = SparseMat::zeros(size, size);
        let mut spec = SparseMat::zeros(size, size);
        for (r, p) in ps.iter().enumerate() {
            if &(p * p) != p || p.is_zero() == self.summand_present(r + 1) {
                return false;
            }
            sum = &sum + p;
            spec = &spec + &p.scale(&al[r]);
        }
        sum == id && spec == big
    }

    /// `L(λ - δ_r)` is present unless `λ_r = λ_{r+1}`.
    pub fn summand_present(&self, r: usize) -> bool {
        r == self.n || self.lambda[r - 1] != self.lambda[r]
    }
}

/// `α_mi(Λ)`: the `i`-th elementary symmetric polynomial in `l_m1, ..., l_mm`; `out[m-1][i-1]`.
pub fn gt_eigenvalues(p: &GTPatternA) -> Vec<Vec<Rat>> {
    (1..=p.n())
        .map(|m| {
            let ls: Vec<Rat> = (1..=m).map(|i| p.l(m, i)).collect();
            let poly = crate::exact::poly_from_shifts(&ls);
            (1..=m).map(|i| poly[m - i].clone()).collect()
        })
        .collect()
}

/// Permutations of `0..s` with signs.
pub fn permutations(s: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..s).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if k == cur.len() {
            out.push((cur.clone(), sign));
            return;
        }
        for t in k..cur.len() {
            cur.swap(k, t);
            rec(k + 1, cur, if t == k { sign } else { -sign }, out);
            cur.swap(k, t);
        }
    }
    rec(0, &mut cur, 1, &mut out);
    out
}
