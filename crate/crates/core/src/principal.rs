//! Minimal principal series `I_t ≅ ℋ0` at numeric torus points:
//! Laplace transforms, intertwiners, the sesquilinear pairing, matrix
//! elements, the spherical function and the truncated Eisenstein series.

use std::collections::BTreeSet;

use crate::bernstein::{Bernstein, BernsteinElem, GroupAlgebraElem};
use crate::coeffring::{LaurentPoly, Monomial};
use crate::error::{HeckeError, Result};
use crate::hecke::{HeckeAlgebra, HeckeElem};
use crate::lattice::{self, Vector};
use crate::scalar::Scalar;
use crate::tracegen::{TorusPoint, TraceGen};
use crate::weyl::{AffineWeylGroup, WeylGroup};

/// Square matrix over a numeric field, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zero(n: usize) -> Mat<S> {
        Mat { n, data: vec![S::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Mat<S> {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(cols: &[Vec<S>]) -> Mat<S> {
        let n = cols.len();
        let mut m = Mat::zero(n);
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn mul(&self, o: &Mat<S>) -> Mat<S> {
        let n = self.n;
        let mut out: Mat<S> = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_negligible() && S::is_exact() {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j).clone() + a.clone() * o.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &[S]) -> Vec<S> {
        (0..self.n)
            .map(|i| (0..self.n).fold(S::zero(), |acc, j| acc + self.get(i, j).clone() * x[j].clone()))
            .collect()
    }

    pub fn scale(&self, c: &S) -> Mat<S> {
        Mat { n: self.n, data: self.data.iter().map(|v| v.clone() * c.clone()).collect() }
    }

    pub fn add(&self, o: &Mat<S>) -> Mat<S> {
        Mat { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, o: &Mat<S>) -> Mat<S> {
        Mat { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    pub fn trace(&self) -> S {
        (0..self.n).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.modulus()).fold(0.0, f64::max)
    }
}

/// Rank of a list of rows by Gaussian elimination.
pub fn rank_of<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let mut m: Vec<Vec<S>> = rows.to_vec();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..m.len())
            .filter(|&r| !m[r][col].is_negligible())
            .max_by(|&a, &b| m[a][col].modulus().total_cmp(&m[b][col].modulus()));
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = S::one() / m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_negligible() {
                let f = m[r][col].clone() * inv.clone();
                for c in col..ncols {
                    let v = m[r][c].clone() - f.clone() * m[rank][c].clone();
                    m[r][c] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Numeric label values and the derived `ℋ0` constants.
#[derive(Clone, Debug)]
pub struct Params<S> {
    /// `v_c = √q_c` per label variable.
    pub v: Vec<S>,
    /// `q(s_i)` per finite simple reflection.
    pub q_s: Vec<S>,
    /// `q(w)` per element of `W0`.
    pub q_w: Vec<S>,
    /// `P0 = Σ_{w ∈ W0} q(w)`
    pub p0: S,
    pub q_w0: S,
}

/// `θ_x^+` in three forms, each to be divided by `P0²`.
#[derive(Clone, Debug)]
pub struct ThetaPlus {
    /// `δ(−x)^{1/2}(Σ T_w)T_{t_x}(Σ T_w)`
    pub two_sided: HeckeElem,
    /// `δ(−x)^{1/2}P_x(Σ_{u ∈ W^x} T_u)T_{t_x}(Σ T_w)`
    pub coset: HeckeElem,
    /// `δ(−x)^{1/2}q(w^x)P_x Σ_{u ∈ W^x, v ∈ W0} T_{u t_x v}`
    pub closed: HeckeElem,
    /// `P0²`
    pub denom: LaurentPoly,
}

/// A quotient of Laurent polynomials.
#[derive(Clone, Debug)]
pub struct Fraction {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl Fraction {
    pub fn same_as(&self, o: &Fraction) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

/// Truncated two-sided comparison at a torus point.
#[derive(Clone, Debug)]
pub struct NumericCheck<S> {
    pub lhs: S,
    pub rhs: S,
    pub gap: f64,
}

impl<S: Scalar> NumericCheck<S> {
    fn new(lhs: S, rhs: S) -> NumericCheck<S> {
        let gap = (lhs.clone() - rhs.clone()).modulus();
        NumericCheck { lhs, rhs, gap }
    }
}

/// The principal series of one Hecke algebra.
#[derive(Clone, Debug)]
pub struct Principal {
    bern: Bernstein,
    tg: TraceGen,
}

impl Principal {
    pub fn new(alg: &HeckeAlgebra) -> Result<Principal> {
        Ok(Principal { bern: Bernstein::new(alg)?, tg: TraceGen::new(alg)? })
    }

    pub fn algebra(&self) -> &HeckeAlgebra {
        self.bern.algebra()
    }

    pub fn bernstein(&self) -> &Bernstein {
        &self.bern
    }

    pub fn tracegen(&self) -> &TraceGen {
        &self.tg
    }

    fn group(&self) -> &AffineWeylGroup {
        self.algebra().group()
    }

    fn w0(&self) -> &WeylGroup {
        self.group().finite()
    }

    fn order(&self) -> usize {
        self.w0().order()
    }

    fn eval_mono<S: Scalar>(m: &Monomial, v: &[S]) -> Result<S> {
        LaurentPoly::mono(m.clone()).evaluate(v)
    }

    pub fn params<S: Scalar>(&self, v: Vec<S>) -> Result<Params<S>> {
        let alg = self.algebra();
        let g = self.group();
        let w0 = self.w0();
        let q_s = (0..w0.num_simple())
            .map(|i| Self::eval_mono(alg.q_s(i), &v))
            .collect::<Result<Vec<S>>>()?;
        let q_w = (0..w0.order())
            .map(|w| Self::eval_mono(&alg.q(&g.from_finite(w)), &v))
            .collect::<Result<Vec<S>>>()?;
        let p0 = q_w.iter().fold(S::zero(), |a, b| a + b.clone());
        if p0.is_negligible() {
            return Err(HeckeError::DivisionByZero("P0 vanishes at these labels".into()));
        }
        let q_w0 = q_w[w0.longest()].clone();
        Ok(Params { v, q_s, q_w, p0, q_w0 })
    }

    /// The `(R0 index, doubled)` data of the `R1` root that is a positive
    /// multiple of `α_j`.
    fn r1_multiple(&self, j: usize) -> (Vector, bool) {
        let d = self.group().datum();
        let doubled = self.algebra().labels().is_doubled(j);
        let a = &d.roots()[j];
        (if doubled { lattice::scale(2, a) } else { a.clone() }, doubled)
    }

    /// `Δ_β = 1 − θ_{−β}` for the `R1` multiple `β` of `α_j`.
    pub fn delta_beta(&self, j: usize) -> GroupAlgebraElem {
        let (beta, _) = self.r1_multiple(j);
        let n = beta.len();
        let mut f = GroupAlgebraElem::one(n);
        f.add_term(&lattice::neg(&beta), -LaurentPoly::one());
        f
    }

    /// `n_β = q̃_β Δ_{−β} c_{−β}` as an element of `𝒜`: `q_{β∨} − θ_β` when
    /// `2β ∉ R_nr`, otherwise `(q_{α∨/2}^{1/2} + θ_α)(q_{α∨/2}^{1/2}q_{α∨} − θ_α)`
    /// with `β = 2α`.
    pub fn n_beta(&self, j: usize) -> GroupAlgebraElem {
        let d = self.group().datum();
        let l = self.algebra().labels();
        let a = &d.roots()[j];
        let q = LaurentPoly::mono(l.q_coroot(j));
        if l.is_doubled(j) {
            let h = LaurentPoly::mono(l.q_half_sqrt(j));
            let mut f1 = GroupAlgebraElem::term(&lattice::zero(d.rank()), h.clone());
            f1.add_term(a, LaurentPoly::one());
            let mut f2 = GroupAlgebraElem::term(&lattice::zero(d.rank()), &h * &q);
            f2.add_term(a, -LaurentPoly::one());
            f1.mul(&f2)
        } else {
            let mut f = GroupAlgebraElem::term(&lattice::zero(d.rank()), q);
            f.add_term(a, -LaurentPoly::one());
            f
        }
    }

    /// `D_β = n_β n_{−β}`
    pub fn d_beta(&self, j: usize) -> GroupAlgebraElem {
        let d = self.group().datum();
        self.n_beta(j).mul(&self.n_beta(d.negate_index(j)))
    }

    fn eval_a<S: Scalar>(&self, f: &GroupAlgebraElem, t: &TorusPoint<S>, p: &Params<S>) -> Result<S> {
        f.evaluate(&p.v, |x| t.eval(x))
    }

    /// Positive roots `α_j` of `R0` with `w(α_j) < 0`.
    fn inversions(&self, w: usize) -> Vec<usize> {
        let npos = self.group().datum().num_positive();
        (0..npos).filter(|&j| self.w0().act_root(w, j) >= npos).collect()
    }

    /// `f_w(t) = ∏_{β ∈ R1,+ ∩ w⁻¹R1,−} f_β(t)`
    fn product_over<S: Scalar>(
        &self,
        w: usize,
        t: &TorusPoint<S>,
        p: &Params<S>,
        f: impl Fn(usize) -> GroupAlgebraElem,
    ) -> Result<S> {
        let mut acc = S::one();
        for j in self.inversions(w) {
            acc = acc * self.eval_a(&f(j), t, p)?;
        }
        Ok(acc)
    }

    pub fn n_w<S: Scalar>(&self, w: usize, t: &TorusPoint<S>, p: &Params<S>) -> Result<S> {
        self.product_over(w, t, p, |j| self.n_beta(j))
    }

    pub fn delta_w<S: Scalar>(&self, w: usize, t: &TorusPoint<S>, p: &Params<S>) -> Result<S> {
        self.product_over(w, t, p, |j| self.delta_beta(j))
    }

    /// `D_w(t) = n_w(t)n_w(t⁻¹)`
    pub fn d_w<S: Scalar>(&self, w: usize, t: &TorusPoint<S>, p: &Params<S>) -> Result<S> {
        Ok(self.n_w(w, t, p)? * self.n_w(w, &t.inverse(), p)?)
    }

    /// `Δ(t)`, `n(t)` and `D(t)` for the longest element.
    pub fn delta<S: Scalar>(&self, t: &TorusPoint<S>, p: &Params<S>) -> Result<S> {
        self.delta_w(self.w0().longest(), t, p)
    }

    pub fn n<S: Scalar>(&self, t: &TorusPoint<S>, p: &Params<S>) -> Result<S> {
        self.n_w(self.w0().longest(), t, p)
    }

    pub fn d<S: Scalar>(&self, t: &TorusPoint<S>, p: &Params<S>) -> Result<S> {
        self.d_w(self.w0().longest(), t, p)
    }

    /// `R_s = (1 − θ_{−α})T_s + (1 − q_{α∨})`, or for `2α ∈ R_nr`
    /// `(1 − θ_{−2α})T_s + ((1 − q_{α∨/2}q_{α∨}) + q_{α∨/2}^{1/2}(1 − q_{α∨})θ_{−α})`.
    pub fn intertwiner_element(&self, i: usize) -> Result<HeckeElem> {
        let f = self.intertwiner_parts(i, false);
        let alg = self.algebra();
        let left = alg.mul(&self.bern.embed(&f.0), &alg.t_simple(i))?;
        Ok(left.add(&self.bern.embed(&f.1)))
    }

    /// `R_s = T_s(1 − θ_α) + (q_{α∨} − 1)θ_α`, or for `2α ∈ R_nr`
    /// `T_s(1 − θ_{2α}) + ((q_{α∨/2}q_{α∨} − 1)θ_{2α} + q_{α∨/2}^{1/2}(q_{α∨} − 1)θ_α)`.
    pub fn intertwiner_right(&self, i: usize) -> Result<HeckeElem> {
        let f = self.intertwiner_parts(i, true);
        let alg = self.algebra();
        let right = alg.mul(&alg.t_simple(i), &self.bern.embed(&f.0))?;
        Ok(right.add(&self.bern.embed(&f.1)))
    }

    /// The `𝒜` factor next to `T_s` and the `𝒜` summand.
    fn intertwiner_parts(&self, i: usize, right: bool) -> (GroupAlgebraElem, GroupAlgebraElem) {
        let d = self.group().datum();
        let l = self.algebra().labels();
        let r = d.rank();
        let a = &d.roots()[i];
        let sign = if right { 1 } else { -1 };
        let one = LaurentPoly::one();
        let q = LaurentPoly::mono(l.q_coroot(i));
        let mut first = GroupAlgebraElem::one(r);
        let mut second = GroupAlgebraElem::zero();
        if l.is_doubled(i) {
            let qh = LaurentPoly::mono(l.q_half(i));
            let h = LaurentPoly::mono(l.q_half_sqrt(i));
            first.add_term(&lattice::scale(2 * sign, a), -one.clone());
            let c0 = &(&qh * &q) - &one;
            let c1 = &h * &(&q - &one);
            if right {
                second.add_term(&lattice::scale(2, a), c0);
                second.add_term(a, c1);
            } else {
                second.add_term(&lattice::zero(r), -c0);
                second.add_term(&lattice::neg(a), -c1);
            }
        } else {
            first.add_term(&lattice::scale(sign, a), -one.clone());
            if right {
                second.add_term(a, &q - &one);
            } else {
                second.add_term(&lattice::zero(r), &one - &q);
            }
        }
        (first, second)
    }

    /// `R_{s_1}⋯R_{s_m}` for a word in the finite simple reflections.
    pub fn intertwiner_word(&self, word: &[usize]) -> Result<HeckeElem> {
        let mut acc = self.algebra().one();
        for &i in word {
            acc = self.algebra().mul(&acc, &self.intertwiner_element(i)?)?;
        }
        Ok(acc)
    }

    /// `D_s` as an element of `𝒜`, for the `i`-th finite simple reflection.
    pub fn d_simple(&self, i: usize) -> GroupAlgebraElem {
        self.d_beta(i)
    }

    /// `ĥ(t)` from a Bernstein form: column `v` is `b·T_v` evaluated at `t`.
    pub fn laplace_bernstein<S: Scalar>(
        &self,
        b: &BernsteinElem,
        t: &TorusPoint<S>,
        p: &Params<S>,
    ) -> Result<Mat<S>> {
        let n = self.order();
        let mut cols = Vec::with_capacity(n);
        for v in 0..n {
            let bv = self.bern.right_finite(b, v);
            let col = (0..n)
                .map(|w| self.eval_a(bv.part(w), t, p))
                .collect::<Result<Vec<S>>>()?;
            cols.push(col);
        }
        Ok(Mat::from_columns(&cols))
    }

    /// `ĥ(t)` acting on `I_t ≅ ℋ0` in the basis `T_w`.
    pub fn laplace<S: Scalar>(&self, h: &HeckeElem, t: &TorusPoint<S>, p: &Params<S>) -> Result<Mat<S>> {
        self.laplace_bernstein(&self.bern.to_bernstein(h), t, p)
    }

    /// `T_{s_i}·x` in `ℋ0`.
    fn h0_left_t<S: Scalar>(&self, i: usize, x: &[S], p: &Params<S>) -> Vec<S> {
        let w0 = self.w0();
        let s = w0.simple(i);
        let q = &p.q_s[i];
        let mut out = vec![S::zero(); x.len()];
        for (w, c) in x.iter().enumerate() {
            if c.is_negligible() && S::is_exact() {
                continue;
            }
            let sw = w0.mul(s, w);
            if w0.length(sw) > w0.length(w) {
                out[sw] = out[sw].clone() + c.clone();
            } else {
                out[w] = out[w].clone() + (q.clone() - S::one()) * c.clone();
                out[sw] = out[sw].clone() + q.clone() * c.clone();
            }
        }
        out
    }

    /// `x·y` in `ℋ0`.
    pub fn h0_mul<S: Scalar>(&self, x: &[S], y: &[S], p: &Params<S>) -> Vec<S> {
        let mut out = vec![S::zero(); x.len()];
        for (w, c) in x.iter().enumerate() {
            if c.is_negligible() && S::is_exact() {
                continue;
            }
            let mut cur = y.to_vec();
            for &i in self.w0().elem(w).word.iter().rev() {
                cur = self.h0_left_t(i, &cur, p);
            }
            for (o, v) in out.iter_mut().zip(cur) {
                *o = o.clone() + c.clone() * v;
            }
        }
        out
    }

    /// `Σ c_w T_w ↦ Σ c̄_w T_{w⁻¹}`
    pub fn h0_star<S: Scalar>(&self, x: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); x.len()];
        for (w, c) in x.iter().enumerate() {
            out[self.w0().inverse(w)] = c.conj();
        }
        out
    }

    /// `(x, y) = τ(x*y) = Σ_w x̄_w y_w q(w)`
    pub fn pairing<S: Scalar>(&self, x: &[S], y: &[S], p: &Params<S>) -> S {
        x.iter()
            .zip(y)
            .zip(&p.q_w)
            .fold(S::zero(), |acc, ((a, b), q)| acc + a.conj() * b.clone() * q.clone())
    }

    /// Left multiplication by `y ∈ ℋ0` as a matrix.
    pub fn h0_left_matrix<S: Scalar>(&self, y: &[S], p: &Params<S>) -> Mat<S> {
        let n = self.order();
        let cols: Vec<Vec<S>> = (0..n).map(|v| self.h0_mul(y, &unit_vec(n, v), p)).collect();
        Mat::from_columns(&cols)
    }

    /// Right multiplication by `y ∈ ℋ0` as a matrix.
    pub fn h0_right_matrix<S: Scalar>(&self, y: &[S], p: &Params<S>) -> Mat<S> {
        let n = self.order();
        let cols: Vec<Vec<S>> = (0..n).map(|v| self.h0_mul(&unit_vec(n, v), y, p)).collect();
        Mat::from_columns(&cols)
    }

    /// `T_w` as a vector.
    pub fn t_vec<S: Scalar>(&self, w: usize) -> Vec<S> {
        unit_vec(self.order(), w)
    }

    /// `T_0^+ = P0⁻¹ Σ T_w`
    pub fn t0_plus<S: Scalar>(&self, p: &Params<S>) -> Vec<S> {
        let c = S::one() / p.p0.clone();
        vec![c; self.order()]
    }

    /// `r_w(t) = R̂_w(t)(T_e)` along the canonical reduced word of `w`.
    pub fn r_vector<S: Scalar>(&self, w: usize, t: &TorusPoint<S>, p: &Params<S>) -> Result<Vec<S>> {
        let word = self.w0().elem(w).word.clone();
        self.r_vector_word(&word, t, p)
    }

    /// `r_w(t)` along a given word.
    pub fn r_vector_word<S: Scalar>(&self, word: &[usize], t: &TorusPoint<S>, p: &Params<S>) -> Result<Vec<S>> {
        let mut cur = self.t_vec::<S>(0);
        for &i in word.iter().rev() {
            let m = self.laplace(&self.intertwiner_element(i)?, t, p)?;
            cur = m.apply(&cur);
        }
        Ok(cur)
    }

    /// `r_w^0(t) = n_w(t)⁻¹ r_w(t)`
    pub fn r0_vector<S: Scalar>(&self, w: usize, t: &TorusPoint<S>, p: &Params<S>) -> Result<Vec<S>> {
        let n = self.n_w(w, t, p)?;
        let inv = n
            .checked_inv()
            .ok_or_else(|| HeckeError::DivisionByZero(format!("n_w(t) = 0 for w = {w}")))?;
        Ok(self.r_vector(w, t, p)?.into_iter().map(|c| c * inv.clone()).collect())
    }

    /// `t̄⁻¹`
    pub fn dual_point<S: Scalar>(t: &TorusPoint<S>) -> TorusPoint<S> {
        t.conj().inverse()
    }

    /// `E_t^{u,v}` evaluated on an endomorphism `ĥ(t)`.
    pub fn matrix_element_hat<S: Scalar>(
        &self,
        u: usize,
        v: usize,
        t: &TorusPoint<S>,
        p: &Params<S>,
        hhat: &Mat<S>,
    ) -> Result<S> {
        let w0 = self.w0();
        let longest = w0.longest();
        let left = self.h0_mul(
            &self.t_vec::<S>(longest),
            &self.r_vector(w0.mul(longest, u), &Self::dual_point(t), p)?,
            p,
        );
        let right = hhat.apply(&self.r_vector(v, t, p)?);
        Ok(self.pairing(&left, &right, p))
    }

    /// `E_t^{u,v}(h) = (T_{w0} r_{w0u}(t̄⁻¹), ĥ(t) r_v(t))`
    pub fn matrix_element<S: Scalar>(
        &self,
        u: usize,
        v: usize,
        t: &TorusPoint<S>,
        p: &Params<S>,
        h: &HeckeElem,
    ) -> Result<S> {
        self.matrix_element_hat(u, v, t, p, &self.laplace(h, t, p)?)
    }

    /// `E_t^{u,v}(h)` recomputed at `st` for a simple reflection `s`:
    /// `n_v(t)n_{us}(st) / (n_u(t)n_{vs}(st)) · E_{st}^{us,vs}(h)`.
    pub fn matrix_element_via_simple<S: Scalar>(
        &self,
        i: usize,
        u: usize,
        v: usize,
        t: &TorusPoint<S>,
        p: &Params<S>,
        h: &HeckeElem,
    ) -> Result<S> {
        let w0 = self.w0();
        let s = w0.simple(i);
        let st = t.act(w0, s);
        let (us, vs) = (w0.mul(u, s), w0.mul(v, s));
        let num = self.n_w(v, t, p)? * self.n_w(us, &st, p)?;
        let den = self.n_w(u, t, p)? * self.n_w(vs, &st, p)?;
        let inv = den
            .checked_inv()
            .ok_or_else(|| HeckeError::DivisionByZero(format!("n-factor vanishes for u = {u}, v = {v}")))?;
        Ok(num * inv * self.matrix_element(us, vs, &st, p, h)?)
    }

    /// `E(ψ, t)(h) = tr(ψ ĥ(t))`
    pub fn matrix_coefficient<S: Scalar>(psi: &Mat<S>, hhat: &Mat<S>) -> S {
        psi.mul(hhat).trace()
    }

    /// `φ_t` on an endomorphism: `P0 (T_0^+, ĥ(t)T_0^+)`.
    pub fn spherical_hat<S: Scalar>(&self, p: &Params<S>, hhat: &Mat<S>) -> S {
        let tp = self.t0_plus(p);
        p.p0.clone() * self.pairing(&tp, &hhat.apply(&tp), p)
    }

    /// Macdonald's spherical function `φ_t(h)`.
    pub fn spherical<S: Scalar>(&self, t: &TorusPoint<S>, p: &Params<S>, h: &HeckeElem) -> Result<S> {
        Ok(self.spherical_hat(p, &self.laplace(h, t, p)?))
    }

    /// `(T_0^+θ_xT_0^+)^(t)` from matrices.
    pub fn theta_plus_hat<S: Scalar>(&self, x: &[i64], t: &TorusPoint<S>, p: &Params<S>) -> Result<Mat<S>> {
        let tp = self.h0_left_matrix(&self.t0_plus(p), p);
        let th = self.laplace_bernstein(
            &BernsteinElem::single(self.order(), 0, GroupAlgebraElem::theta(x)),
            t,
            p,
        )?;
        Ok(tp.mul(&th).mul(&tp))
    }

    /// `φ_t(θ_x^+)` computed in `End(I_t)`.
    pub fn spherical_theta_plus<S: Scalar>(&self, x: &[i64], t: &TorusPoint<S>, p: &Params<S>) -> Result<S> {
        Ok(self.spherical_hat(p, &self.theta_plus_hat(x, t, p)?))
    }

    /// `c(t)`
    pub fn c<S: Scalar>(&self, t: &TorusPoint<S>, p: &Params<S>) -> Result<S> {
        self.tg.c_full(t, &p.v)
    }

    /// `(q(w0)/P0) Σ_w c(wt)·(wt)(x)` for dominant `x`.
    pub fn macdonald<S: Scalar>(&self, x: &[i64], t: &TorusPoint<S>, p: &Params<S>) -> Result<S> {
        if !self.group().datum().is_dominant(x) {
            return Err(HeckeError::NotDominant(x.to_vec()));
        }
        let mut acc = S::zero();
        for w in 0..self.order() {
            let wt = t.act(self.w0(), w);
            acc = acc + self.c(&wt, p)? * wt.eval(x);
        }
        Ok(acc * p.q_w0.clone() / p.p0.clone())
    }

    /// `θ_x^+ = δ(−x)^{1/2}T_0^+T_{t_x}T_0^+` in its three forms.
    pub fn theta_plus(&self, x: &[i64]) -> Result<ThetaPlus> {
        let alg = self.algebra();
        let g = self.group();
        let d = g.datum();
        let w0 = self.w0();
        let l = alg.labels();
        let cd = w0.coset_data(d, x)?;
        let scale = LaurentPoly::mono(l.delta_sqrt(g, x).inv());
        let sum = |set: &[usize]| {
            let mut h = HeckeElem::zero();
            for &w in set {
                h.add_term(g.from_finite(w), LaurentPoly::one());
            }
            h
        };
        let all: Vec<usize> = (0..w0.order()).collect();
        let s0 = sum(&all);
        let tx = alg.t(&g.translation(x));
        let two_sided = alg.mul_all(&[&s0, &tx, &s0])?.scale(&scale);
        let px = l.poincare(g, &cd.stabilizer);
        let coset = alg.mul_all(&[&sum(&cd.representatives), &tx, &s0])?.scale(&(&scale * &px));
        let mut closed = HeckeElem::zero();
        let c = &(&scale * &px) * &LaurentPoly::mono(alg.q(&g.from_finite(cd.longest_rep)));
        for &u in &cd.representatives {
            for v in 0..w0.order() {
                let e = g.mul(&g.mul(&g.from_finite(u), &g.translation(x)), &g.from_finite(v));
                closed.add_term(e, c.clone());
            }
        }
        let p0 = l.poincare_w0(g);
        Ok(ThetaPlus { two_sided, coset, closed, denom: &p0 * &p0 })
    }

    /// `(θ_x^+, θ_y^+)` computed from the `T` expansions.
    pub fn inner_plus(&self, x: &[i64], y: &[i64]) -> Result<Fraction> {
        let a = self.theta_plus(x)?;
        let b = self.theta_plus(y)?;
        Ok(Fraction { num: self.algebra().inner(&a.two_sided, &b.two_sided), den: &a.denom * &b.denom })
    }

    /// `δ_{x,y} q(w^x)/(P0 P^x)`
    pub fn inner_plus_expected(&self, x: &[i64], y: &[i64]) -> Result<Fraction> {
        let g = self.group();
        let l = self.algebra().labels();
        let cd = self.w0().coset_data(g.datum(), x)?;
        self.w0().coset_data(g.datum(), y)?;
        let p0 = l.poincare_w0(g);
        let px_up = l.poincare(g, &cd.representatives);
        let num = if x == y {
            LaurentPoly::mono(self.algebra().q(&g.from_finite(cd.longest_rep)))
        } else {
            LaurentPoly::zero()
        };
        Ok(Fraction { num, den: &p0 * &px_up })
    }

    /// `τ(θ_x h)` for `h` in Bernstein form, using `τ(θ_x T_w θ_y) = τ(T_w θ_{x+y})`.
    fn trace_theta_times(&self, x: &[i64], b: &BernsteinElem) -> Result<LaurentPoly> {
        let alg = self.algebra();
        let g = self.group();
        let l = alg.labels();
        let d = g.datum();
        let mut acc = LaurentPoly::zero();
        for (w, f) in b.parts().iter().enumerate() {
            for (y, c) in f.terms() {
                let z = lattice::add(x, y);
                if !d.in_negative_cone(&z) {
                    continue;
                }
                // τ(T_w θ_z) with θ_z = δ(−y')^{1/2}δ(z')^{1/2}T_{t_{y'}}T_{t_{z'}}⁻¹
                let (yp, zp) = d.compact_decomposition(&z);
                let k = l.delta_sqrt(g, &yp).inv().mul(&l.delta_sqrt(g, &zp));
                let head = alg.mul(&alg.t(&g.from_finite(w)), &alg.t(&g.translation(&yp)))?;
                let tau = alg.tau_letters(&head, &alg.inverse_letters(&g.translation(&zp)))?;
                acc += &(&tau.shift(&k) * c);
            }
        }
        Ok(acc)
    }

    /// Lattice points `x = −κ − y` with `κ ∈ Q_+` of height at most
    /// `radius` and `y` in the Bernstein support of `b`.
    pub fn eisenstein_points(&self, b: &BernsteinElem, radius: i64) -> Vec<Vector> {
        let mut supp: BTreeSet<Vector> = BTreeSet::new();
        for f in b.parts() {
            for (y, _) in f.terms() {
                supp.insert(y.clone());
            }
        }
        let mut out: BTreeSet<Vector> = BTreeSet::new();
        for k in self.tg.negative_cone(radius) {
            for y in &supp {
                out.insert(lattice::sub(&k, y));
            }
        }
        out.into_iter().collect()
    }

    /// `Σ t(−x) τ(θ_x h)` over [`Principal::eisenstein_points`].
    pub fn eisenstein_partial<S: Scalar>(
        &self,
        t: &TorusPoint<S>,
        p: &Params<S>,
        h: &HeckeElem,
        radius: i64,
    ) -> Result<S> {
        use rayon::prelude::*;
        let b = self.bern.to_bernstein(h);
        let pts = self.eisenstein_points(&b, radius);
        let vals: Vec<Result<S>> = pts
            .par_iter()
            .map(|x| Ok(self.trace_theta_times(x, &b)?.evaluate(&p.v)? * t.eval(&lattice::neg(x))))
            .collect();
        let mut acc = S::zero();
        for v in vals {
            acc = acc + v?;
        }
        Ok(acc)
    }

    /// `D(t)·Σ t(−x)τ(θ_x h)` against `Δ(t⁻¹)E_t(h)`.
    pub fn eisenstein_check<S: Scalar>(
        &self,
        t: &TorusPoint<S>,
        p: &Params<S>,
        h: &HeckeElem,
        radius: i64,
    ) -> Result<NumericCheck<S>> {
        if !self.tg.in_region(t, &p.v)? {
            return Err(HeckeError::OutsideRegion(format!("{:?}", t.images())));
        }
        let lhs = self.d(t, p)? * self.eisenstein_partial(t, p, h, radius)?;
        let rhs = self.delta(&t.inverse(), p)? * self.matrix_element(0, 0, t, p, h)?;
        Ok(NumericCheck::new(lhs, rhs))
    }

    /// `Σ t(−x)τ(θ_x h)` against `E_t(h)/(q(w0)²Δ(t)c(t⁻¹)c(t))`.
    pub fn eisenstein_global<S: Scalar>(
        &self,
        t: &TorusPoint<S>,
        p: &Params<S>,
        h: &HeckeElem,
        radius: i64,
    ) -> Result<NumericCheck<S>> {
        let lhs = self.eisenstein_partial(t, p, h, radius)?;
        let den = p.q_w0.clone() * p.q_w0.clone() * self.delta(t, p)? * self.c(&t.inverse(), p)? * self.c(t, p)?;
        let den_inv = den.checked_inv().ok_or_else(|| HeckeError::Pole("Δ(t)c(t)c(t⁻¹) vanishes".into()))?;
        let rhs = self.matrix_element(0, 0, t, p, h)? * den_inv;
        Ok(NumericCheck::new(lhs, rhs))
    }

    /// Rank of the matrix `(E_t^{u,v}(T_a θ_x))` over the probes
    /// `T_a θ_x`, `a ∈ W0`, `x ∈ points`.
    pub fn gram_rank<S: Scalar>(&self, t: &TorusPoint<S>, p: &Params<S>, points: &[Vector]) -> Result<usize> {
        let n = self.order();
        let mut hats = Vec::new();
        for a in 0..n {
            for x in points {
                let b = BernsteinElem::single(n, a, GroupAlgebraElem::theta(x));
                hats.push(self.laplace_bernstein(&b, t, p)?);
            }
        }
        let mut rows = Vec::new();
        for u in 0..n {
            for v in 0..n {
                let row = hats
                    .iter()
                    .map(|hh| self.matrix_element_hat(u, v, t, p, hh))
                    .collect::<Result<Vec<S>>>()?;
                rows.push(row);
            }
        }
        Ok(rank_of(&rows))
    }

    /// `R(w, t): I_t → I_{wt}`, `x ↦ x·r_{w⁻¹}(wt)`.
    pub fn intertwining_map<S: Scalar>(&self, w: usize, t: &TorusPoint<S>, p: &Params<S>) -> Result<Mat<S>> {
        let wt = t.act(self.w0(), w);
        let r = self.r_vector(self.w0().inverse(w), &wt, p)?;
        Ok(self.h0_right_matrix(&r, p))
    }
}

fn unit_vec<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{Preset, RootDatum};
    use crate::scalar::rat;
    use num_complex::Complex64;
    use num_rational::BigRational;
    use std::sync::Arc;

    fn setup(p: Preset) -> Principal {
        let d = RootDatum::preset(p).unwrap();
        let g = Arc::new(AffineWeylGroup::from_datum(d).unwrap());
        Principal::new(&HeckeAlgebra::generic(g).unwrap()).unwrap()
    }

    fn rat_params(pr: &Principal, v: &[i64]) -> Params<BigRational> {
        pr.params(v.iter().map(|&x| rat(x, 1)).collect()).unwrap()
    }

    #[test]
    fn laplace_identity_and_center() {
        let pr = setup(Preset::A2);
        let p = rat_params(&pr, &[2]);
        let t = TorusPoint::new(vec![rat(2, 3), rat(5, 1)]).unwrap();
        let id = pr.laplace(&pr.algebra().one(), &t, &p).unwrap();
        assert_eq!(id, Mat::identity(6));
        let alpha = pr.group().datum().simple_roots()[0].clone();
        let z = pr.bernstein().center_element(&alpha);
        let m = pr.laplace(&z, &t, &p).unwrap();
        let scalar = pr
            .w0()
            .orbit(&alpha)
            .iter()
            .fold(rat(0, 1), |acc, x| acc + t.eval(x));
        assert_eq!(m, Mat::identity(6).scale(&scalar));
    }

    #[test]
    fn laplace_is_multiplicative() {
        let pr = setup(Preset::B2);
        let p = rat_params(&pr, &[2, 3]);
        let t = TorusPoint::new(vec![rat(3, 2), rat(-2, 5)]).unwrap();
        let alg = pr.algebra();
        let a = alg.t_simple(2).add(&pr.bernstein().theta(&[1, 0]));
        let b = alg.t_simple(0).add(&pr.bernstein().theta(&[0, -1]));
        let ab = alg.mul(&a, &b).unwrap();
        let lhs = pr.laplace(&ab, &t, &p).unwrap();
        let rhs = pr.laplace(&a, &t, &p).unwrap().mul(&pr.laplace(&b, &t, &p).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn intertwiner_forms_and_square() {
        for preset in [Preset::A1Weight, Preset::A1Root, Preset::BnCn(2)] {
            let pr = setup(preset);
            let alg = pr.algebra();
            for i in 0..pr.w0().num_simple() {
                let r = pr.intertwiner_element(i).unwrap();
                assert_eq!(r, pr.intertwiner_right(i).unwrap());
                let sq = alg.mul(&r, &r).unwrap();
                assert_eq!(sq, pr.bernstein().embed(&pr.d_simple(i)), "{preset:?} {i}");
            }
        }
        let pr = setup(Preset::A1Weight);
        assert_eq!(pr.d_simple(0).len(), 3);
        let r = pr.intertwiner_element(0).unwrap();
        let b = pr.bernstein();
        let lhs = pr.algebra().mul(&r, &b.theta(&[1])).unwrap();
        let rhs = pr.algebra().mul(&b.theta(&[-1]), &r).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn braid_relations() {
        let pr = setup(Preset::A2);
        assert_eq!(pr.intertwiner_word(&[0, 1, 0]).unwrap(), pr.intertwiner_word(&[1, 0, 1]).unwrap());
    }

    #[test]
    fn r_vectors() {
        let pr = setup(Preset::A2);
        let p = rat_params(&pr, &[3]);
        let t = TorusPoint::new(vec![rat(2, 1), rat(-3, 7)]).unwrap();
        assert_eq!(pr.r_vector(0, &t, &p).unwrap(), pr.t_vec::<BigRational>(0));
        let a = pr.r_vector_word(&[0, 1, 0], &t, &p).unwrap();
        let b = pr.r_vector_word(&[1, 0, 1], &t, &p).unwrap();
        assert_eq!(a, b);
        let w0 = pr.w0();
        for w in 0..w0.order() {
            // r_{w⁻¹}(wt) r_w(t) = D_w(t)
            let wt = t.act(w0, w);
            let prod = pr.h0_mul(&pr.r_vector(w0.inverse(w), &wt, &p).unwrap(), &pr.r_vector(w, &t, &p).unwrap(), &p);
            let dw = pr.d_w(w, &t, &p).unwrap();
            let mut expect = pr.t_vec::<BigRational>(0);
            expect[0] = dw;
            assert_eq!(prod, expect);
            // leading coefficient Δ_w(t⁻¹)
            let r = pr.r_vector(w, &t, &p).unwrap();
            assert_eq!(r[w], pr.delta_w(w, &t.inverse(), &p).unwrap());
            // eigenvector with weight wt
            let th = pr
                .laplace_bernstein(&BernsteinElem::single(6, 0, GroupAlgebraElem::theta(&[1, 2])), &t, &p)
                .unwrap();
            let lhs = th.apply(&r);
            let ev = wt.eval(&[1, 2]);
            assert_eq!(lhs, r.iter().map(|c| c.clone() * ev.clone()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn adjoint_of_r() {
        let pr = setup(Preset::A2);
        let p = pr.params(vec![Complex64::new(1.5, 0.0)]).unwrap();
        let t = TorusPoint::new(vec![Complex64::new(0.7, 0.4), Complex64::new(-1.1, 0.3)]).unwrap();
        let w0 = pr.w0();
        for w in 0..w0.order() {
            let lhs = pr.h0_star(&pr.r_vector(w, &t, &p).unwrap());
            let wtd = Principal::dual_point(&t).act(w0, w);
            let rhs = pr.r_vector(w0.inverse(w), &wtd, &p).unwrap();
            for (a, b) in lhs.iter().zip(&rhs) {
                assert!((a - b).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn matrix_elements_at_identity() {
        let pr = setup(Preset::B2);
        let p = rat_params(&pr, &[2, 3]);
        let t = TorusPoint::new(vec![rat(3, 1), rat(-1, 2)]).unwrap();
        let w0 = pr.w0();
        let e = pr.algebra().one();
        for u in 0..w0.order() {
            for v in 0..w0.order() {
                let val = pr.matrix_element(u, v, &t, &p, &e).unwrap();
                if u == v {
                    let ut = t.act(w0, u);
                    assert_eq!(val, p.q_w0.clone() * pr.delta(&ut, &p).unwrap());
                } else {
                    assert_eq!(val, rat(0, 1));
                }
            }
        }
    }

    #[test]
    fn character_from_matrix_elements() {
        let pr = setup(Preset::A2);
        let p = rat_params(&pr, &[2]);
        let t = TorusPoint::new(vec![rat(3, 1), rat(-5, 2)]).unwrap();
        let h = pr.algebra().t_simple(2).add(&pr.bernstein().theta(&[1, -1]));
        let hhat = pr.laplace(&h, &t, &p).unwrap();
        let w0 = pr.w0();
        let mut sum = rat(0, 1);
        let mut sum_shifted = rat(0, 1);
        for w in 0..w0.order() {
            let wt = t.act(w0, w);
            let dw = pr.delta(&wt, &p).unwrap();
            sum += pr.matrix_element_hat(w, w, &t, &p, &hhat).unwrap() / dw.clone();
            sum_shifted += pr.matrix_element(0, 0, &wt, &p, &h).unwrap() / dw;
        }
        assert_eq!(sum.clone() / p.q_w0.clone(), hhat.trace());
        assert_eq!(sum_shifted / p.q_w0.clone(), hhat.trace());
    }

    #[test]
    fn spherical_normalization_and_macdonald() {
        let pr = setup(Preset::A1Weight);
        let p = rat_params(&pr, &[2]);
        let t = TorusPoint::new(vec![rat(3, 7)]).unwrap();
        assert_eq!(pr.spherical(&t, &p, &pr.algebra().one()).unwrap(), rat(1, 1));
        assert_eq!(pr.spherical_theta_plus(&[0], &t, &p).unwrap(), rat(1, 1));
        for x in 0..4 {
            assert_eq!(pr.macdonald(&[x], &t, &p).unwrap(), pr.spherical_theta_plus(&[x], &t, &p).unwrap());
        }
    }

    #[test]
    fn theta_plus_forms_and_orthogonality() {
        let pr = setup(Preset::A1Weight);
        for x in [0i64, 1, 2] {
            let tp = pr.theta_plus(&[x]).unwrap();
            assert_eq!(tp.two_sided, tp.coset);
            assert_eq!(tp.two_sided, tp.closed);
        }
        // (θ_1^+, θ_1^+) = q/(1+q)²
        let f = pr.inner_plus(&[1], &[1]).unwrap();
        let q = LaurentPoly::mono(Monomial::var(0, 2));
        let one_plus_q = &LaurentPoly::one() + &q;
        let expect = Fraction { num: q.clone(), den: &one_plus_q * &one_plus_q };
        assert!(f.same_as(&expect));
        assert!(f.same_as(&pr.inner_plus_expected(&[1], &[1]).unwrap()));
        let f0 = pr.inner_plus(&[0], &[0]).unwrap();
        assert!(f0.same_as(&Fraction { num: LaurentPoly::one(), den: one_plus_q }));
        assert!(pr.inner_plus(&[0], &[1]).unwrap().num.is_zero());
    }

    #[test]
    fn lemma_on_trivial_idempotent() {
        let pr = setup(Preset::B2);
        let p = rat_params(&pr, &[2, 3]);
        let t = TorusPoint::new(vec![rat(5, 2), rat(-1, 3)]).unwrap();
        let tp = pr.t0_plus(&p);
        let mut sum = vec![rat(0, 1); pr.order()];
        for w in 0..pr.order() {
            let r0 = pr.r0_vector(w, &t, &p).unwrap();
            assert_eq!(pr.h0_mul(&tp, &r0, &p), tp);
            let c = pr.c(&t.act(pr.w0(), w), &p).unwrap();
            for (s, v) in sum.iter_mut().zip(&r0) {
                *s = s.clone() + c.clone() * v.clone();
            }
        }
        let scale = p.q_w0.clone() / p.p0.clone();
        assert_eq!(sum.into_iter().map(|v| v * scale.clone()).collect::<Vec<_>>(), tp);
    }

    #[test]
    fn eisenstein_a1_small() {
        let pr = setup(Preset::A1Weight);
        let p = pr.params(vec![Complex64::new(2.0, 0.0)]).unwrap();
        let d = pr.group().datum();
        let t = TorusPoint::from_root_values(d, &[Complex64::new(0.1, 0.0)]).unwrap();
        let h = pr.algebra().t_simple(0);
        let c = pr.eisenstein_check(&t, &p, &h, 20).unwrap();
        assert!(c.gap < 1e-6, "{c:?}");
        let g = pr.eisenstein_global(&t, &p, &h, 20).unwrap();
        assert!(g.gap < 1e-6, "{g:?}");
    }

    #[test]
    fn gram_rank_full() {
        let pr = setup(Preset::A1Weight);
        let p = rat_params(&pr, &[2]);
        let t = TorusPoint::new(vec![rat(3, 1)]).unwrap();
        let pts: Vec<Vector> = [-1i64, 0, 1].iter().map(|&x| lattice::unit(1, 0).iter().map(|c| c * x).collect()).collect();
        assert_eq!(pr.gram_rank(&t, &p, &pts).unwrap(), 4);
    }

    fn a2_setup() -> (Principal, Params<BigRational>, TorusPoint<BigRational>) {
        let pr = setup(Preset::A2);
        let p = rat_params(&pr, &[3]);
        let t = TorusPoint::new(vec![rat(5, 2), rat(-2, 7)]).unwrap();
        (pr, p, t)
    }

    #[test]
    fn normalized_cocycle() {
        let (pr, p, t) = a2_setup();
        let w0 = pr.w0();
        for u in 0..w0.order() {
            for v in 0..w0.order() {
                let vt = t.act(w0, v);
                let lhs = pr.h0_mul(&pr.r0_vector(u, &vt, &p).unwrap(), &pr.r0_vector(v, &t, &p).unwrap(), &p);
                assert_eq!(lhs, pr.r0_vector(w0.mul(u, v), &t, &p).unwrap(), "u={u} v={v}");
            }
        }
    }

    #[test]
    fn pairing_orthogonality() {
        let pr = setup(Preset::B2);
        let p = rat_params(&pr, &[2, 3]);
        let t = TorusPoint::new(vec![rat(4, 3), rat(-3, 2)]).unwrap();
        let w0 = pr.w0();
        let longest = w0.longest();
        let td = Principal::dual_point(&t);
        for v in 0..w0.order() {
            let left = pr.h0_mul(&pr.t_vec::<BigRational>(longest), &pr.r_vector(w0.mul(longest, v), &td, &p).unwrap(), &p);
            for w in 0..w0.order() {
                let val = pr.pairing(&left, &pr.r_vector(w, &t, &p).unwrap(), &p);
                let expect = if v == w { p.q_w0.clone() * pr.delta(&t.act(w0, w), &p).unwrap() } else { rat(0, 1) };
                assert_eq!(val, expect, "v={v} w={w}");
            }
        }
    }

    #[test]
    fn matrix_elements_are_theta_equivariant() {
        let (pr, p, t) = a2_setup();
        let w0 = pr.w0();
        let alg = pr.algebra();
        let b = pr.bernstein();
        let h = alg.t_simple(1).add(&b.theta(&[-1, 1]));
        let (x1, x2) = ([1i64, 0], [0i64, -2]);
        let sandwiched = alg.mul_all(&[&b.theta(&x1), &h, &b.theta(&x2)]).unwrap();
        for u in 0..w0.order() {
            for v in 0..w0.order() {
                let lhs = pr.matrix_element(u, v, &t, &p, &sandwiched).unwrap();
                let k = t.act(w0, u).eval(&x1) * t.act(w0, v).eval(&x2);
                assert_eq!(lhs, k * pr.matrix_element(u, v, &t, &p, &h).unwrap());
            }
        }
    }

    #[test]
    fn trivial_projection_of_e() {
        let pr = setup(Preset::B2);
        let p = rat_params(&pr, &[2, 3]);
        let t = TorusPoint::new(vec![rat(3, 2), rat(-5, 3)]).unwrap();
        let alg = pr.algebra();
        let h = alg.t_simple(0).add(&pr.bernstein().theta(&[1, -1]));
        let hhat = pr.laplace(&h, &t, &p).unwrap();
        let tp = pr.h0_left_matrix(&pr.t0_plus(&p), &p);
        let lhs = pr.matrix_element_hat(0, 0, &t, &p, &tp.mul(&hhat).mul(&tp)).unwrap();
        let rhs = p.q_w0.clone() * pr.n(&t.inverse(), &p).unwrap() / p.p0.clone() * pr.spherical_hat(&p, &hhat);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn laplace_respects_star() {
        let pr = setup(Preset::B2);
        let p = rat_params(&pr, &[2, 3]);
        let t = TorusPoint::new(vec![rat(2, 5), rat(7, 3)]).unwrap();
        let alg = pr.algebra();
        let b = pr.bernstein();
        let x = alg.mul(&alg.t_simple(1), &b.theta(&[1, 1])).unwrap().add(&b.theta(&[0, -1]));
        let ys: Vec<Vec<BigRational>> = (0..pr.order()).map(|i| pr.t_vec(i)).collect();
        let lx = pr.laplace(&x, &t, &p).unwrap();
        let lstar = pr.laplace(&alg.star(&x), &Principal::dual_point(&t), &p).unwrap();
        for y in &ys {
            for z in &ys {
                assert_eq!(pr.pairing(&lstar.apply(y), z, &p), pr.pairing(y, &lx.apply(z), &p));
            }
        }
    }

    #[test]
    fn intertwining_maps() {
        let (pr, p, t) = a2_setup();
        let w0 = pr.w0();
        let alg = pr.algebra();
        let h = alg.t_simple(0).add(&pr.bernstein().theta(&[2, -1]));
        let psi = pr.laplace(&alg.t_simple(1), &t, &p).unwrap().add(&Mat::identity(6).scale(&rat(1, 3)));
        for w in 0..w0.order() {
            let wt = t.act(w0, w);
            let winv = w0.inverse(w);
            let fwd = pr.intertwining_map(w, &t, &p).unwrap();
            let back = pr.intertwining_map(winv, &wt, &p).unwrap();
            let dw = pr.d_w(w, &t, &p).unwrap();
            assert_eq!(back.mul(&fwd), Mat::identity(6).scale(&dw));
            // R(w, t) intertwines I_t with I_{wt}
            assert_eq!(fwd.mul(&pr.laplace(&h, &t, &p).unwrap()), pr.laplace(&h, &wt, &p).unwrap().mul(&fwd));
            let moved = fwd.mul(&psi).mul(&back);
            let lhs = Principal::matrix_coefficient(&moved, &pr.laplace(&h, &wt, &p).unwrap());
            let rhs = dw * Principal::matrix_coefficient(&psi, &pr.laplace(&h, &t, &p).unwrap());
            assert_eq!(lhs, rhs, "w={w}");
        }
    }

    #[test]
    fn simple_reflection_shift() {
        for preset in [Preset::A2, Preset::B2] {
            let pr = setup(preset);
            let p = if preset == Preset::A2 { rat_params(&pr, &[3]) } else { rat_params(&pr, &[2, 3]) };
            let t = TorusPoint::new(vec![rat(5, 2), rat(-2, 7)]).unwrap();
            let w0 = pr.w0();
            let h = pr.algebra().t_simple(1).add(&pr.bernstein().theta(&[1, -1]));
            for i in 0..w0.num_simple() {
                for u in 0..w0.order() {
                    for v in 0..w0.order() {
                        let lhs = pr.matrix_element(u, v, &t, &p, &h).unwrap();
                        let rhs = pr.matrix_element_via_simple(i, u, v, &t, &p, &h).unwrap();
                        assert_eq!(lhs, rhs, "{preset:?} s={i} u={u} v={v}");
                    }
                }
            }
        }
    }

    #[test]
    fn gram_rank_a2() {
        let (pr, p, t) = a2_setup();
        let pts: Vec<Vector> = crate::tracegen::box_points(2, 1);
        assert_eq!(pr.gram_rank(&t, &p, &pts).unwrap(), 36);
    }
}
