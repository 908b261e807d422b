//! The Bernstein presentation: the commutative subalgebra `𝒜 = C[θ_x]`,
//! elements written as `Σ_{w ∈ W0} T_w f_w` with `f_w ∈ 𝒜`, Lusztig's
//! commutation relation and the center `𝒜^{W0}`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::coeffring::{LaurentPoly, Monomial};
use crate::error::{HeckeError, Result};
use crate::hecke::{HeckeAlgebra, HeckeElem, Letter};
use crate::lattice::{self, Vector};
use crate::scalar::Scalar;
use crate::weyl::{AffineWeylElem, AffineWeylGroup};

/// Element of `𝒜`: a finite sum `Σ c_x θ_x`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupAlgebraElem {
    terms: BTreeMap<Vector, LaurentPoly>,
}

impl GroupAlgebraElem {
    pub fn zero() -> GroupAlgebraElem {
        GroupAlgebraElem::default()
    }

    /// `θ_0`
    pub fn one(rank: usize) -> GroupAlgebraElem {
        GroupAlgebraElem::theta(&lattice::zero(rank))
    }

    pub fn theta(x: &[i64]) -> GroupAlgebraElem {
        GroupAlgebraElem::term(x, LaurentPoly::one())
    }

    pub fn term(x: &[i64], c: LaurentPoly) -> GroupAlgebraElem {
        let mut e = GroupAlgebraElem::zero();
        e.add_term(x, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vector, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x: &[i64]) -> LaurentPoly {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, x: &[i64], c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let key: Vector = x.iter().copied().collect();
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &GroupAlgebraElem) -> GroupAlgebraElem {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &GroupAlgebraElem) {
        for (x, c) in &o.terms {
            self.add_term(x, c.clone());
        }
    }

    pub fn sub(&self, o: &GroupAlgebraElem) -> GroupAlgebraElem {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> GroupAlgebraElem {
        GroupAlgebraElem { terms: self.terms.iter().map(|(x, c)| (x.clone(), -c)).collect() }
    }

    pub fn mul(&self, o: &GroupAlgebraElem) -> GroupAlgebraElem {
        let mut out = GroupAlgebraElem::zero();
        for (x, c) in &self.terms {
            for (y, d) in &o.terms {
                out.add_term(&lattice::add(x, y), c * d);
            }
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> GroupAlgebraElem {
        let mut out = GroupAlgebraElem::zero();
        for (x, d) in &self.terms {
            out.add_term(x, c * d);
        }
        out
    }

    pub fn scale_monomial(&self, m: &Monomial) -> GroupAlgebraElem {
        GroupAlgebraElem { terms: self.terms.iter().map(|(x, c)| (x.clone(), c.shift(m))).collect() }
    }

    /// `f · θ_y`
    pub fn shift(&self, y: &[i64]) -> GroupAlgebraElem {
        GroupAlgebraElem {
            terms: self.terms.iter().map(|(x, c)| (lattice::add(x, y), c.clone())).collect(),
        }
    }

    /// `w(f)`, with `w(θ_x) = θ_{wx}`.
    pub fn act(&self, g: &AffineWeylGroup, w: usize) -> GroupAlgebraElem {
        GroupAlgebraElem {
            terms: self.terms.iter().map(|(x, c)| (g.finite().act(w, x), c.clone())).collect(),
        }
    }

    /// Largest absolute coordinate in the support.
    pub fn radius(&self) -> i64 {
        self.terms.keys().flat_map(|x| x.iter().map(|v| v.abs())).max().unwrap_or(0)
    }

    /// `f(t)`, given label values and the character `x ↦ t(x)`.
    pub fn evaluate<S: Scalar>(&self, values: &[S], t: impl Fn(&[i64]) -> S) -> Result<S> {
        let mut acc = S::zero();
        for (x, c) in &self.terms {
            acc = acc + c.evaluate(values)? * t(x);
        }
        Ok(acc)
    }
}

/// `Σ_{w ∈ W0} T_w f_w`, indexed by `W0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernsteinElem {
    parts: Vec<GroupAlgebraElem>,
}

impl BernsteinElem {
    pub fn zero(order: usize) -> BernsteinElem {
        BernsteinElem { parts: vec![GroupAlgebraElem::zero(); order] }
    }

    /// `T_w f`
    pub fn single(order: usize, w: usize, f: GroupAlgebraElem) -> BernsteinElem {
        let mut b = BernsteinElem::zero(order);
        b.parts[w] = f;
        b
    }

    pub fn part(&self, w: usize) -> &GroupAlgebraElem {
        &self.parts[w]
    }

    pub fn parts(&self) -> &[GroupAlgebraElem] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }

    pub fn add_assign(&mut self, o: &BernsteinElem) {
        for (a, b) in self.parts.iter_mut().zip(&o.parts) {
            a.add_assign(b);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> BernsteinElem {
        BernsteinElem { parts: self.parts.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn scale_monomial(&self, m: &Monomial) -> BernsteinElem {
        BernsteinElem { parts: self.parts.iter().map(|p| p.scale_monomial(m)).collect() }
    }

    /// `b · f` for `f ∈ 𝒜`.
    pub fn mul_a(&self, f: &GroupAlgebraElem) -> BernsteinElem {
        BernsteinElem { parts: self.parts.iter().map(|p| p.mul(f)).collect() }
    }

    /// `b · θ_y`
    pub fn shift(&self, y: &[i64]) -> BernsteinElem {
        BernsteinElem { parts: self.parts.iter().map(|p| p.shift(y)).collect() }
    }

    /// Coefficient map `(w, x) ↦ c`.
    pub fn coefficients(&self) -> BTreeMap<(usize, Vector), LaurentPoly> {
        let mut out = BTreeMap::new();
        for (w, p) in self.parts.iter().enumerate() {
            for (x, c) in p.terms() {
                out.insert((w, x.clone()), c.clone());
            }
        }
        out
    }

    pub fn radius(&self) -> i64 {
        self.parts.iter().map(|p| p.radius()).max().unwrap_or(0)
    }
}

/// Data for the affine simple reflection `s_0 = s_ϑ t_{−ϑ}`.
#[derive(Clone, Debug)]
struct AffineSimple {
    /// `ϑ`, dominant.
    theta: Vector,
    /// Reduced word of `s_ϑ` in the finite simple reflections.
    word: Vec<usize>,
    /// `δ(ϑ)^{1/2}`
    delta_sqrt: Monomial,
}

/// Bernstein presentation of a Hecke algebra.
#[derive(Clone, Debug)]
pub struct Bernstein {
    alg: HeckeAlgebra,
    nsimple: usize,
    affine: BTreeMap<usize, AffineSimple>,
}

impl Bernstein {
    pub fn new(alg: &HeckeAlgebra) -> Result<Bernstein> {
        let g = alg.group();
        let d = g.datum();
        let w0 = g.finite();
        let nsimple = w0.num_simple();
        let mut affine = BTreeMap::new();
        for (i, a) in g.fundamental().iter().enumerate().skip(nsimple) {
            let jpos = d.negate_index(a.coroot);
            let theta: Vector = d.roots()[jpos].clone();
            let s_theta = w0.reflection(d, jpos);
            let word = w0.elem(s_theta).word.clone();
            // t_ϑ = s_0 s_ϑ with lengths adding
            let t = g.translation(&theta);
            let prod = g.mul(g.simple_reflection(i), &g.from_finite(s_theta));
            if prod != t || g.length(&t) != 1 + word.len() {
                return Err(HeckeError::InvalidInput(format!(
                    "affine simple reflection {i} does not factor t_ϑ"
                )));
            }
            let delta_sqrt = alg.labels().delta_sqrt(g, &theta);
            affine.insert(i, AffineSimple { theta, word, delta_sqrt });
        }
        Ok(Bernstein { alg: alg.clone(), nsimple, affine })
    }

    pub fn algebra(&self) -> &HeckeAlgebra {
        &self.alg
    }

    fn group(&self) -> &AffineWeylGroup {
        self.alg.group()
    }

    fn order(&self) -> usize {
        self.group().finite().order()
    }

    fn rank(&self) -> usize {
        self.group().rank()
    }

    /// `θ_x` in the `T` basis: `δ(−y)^{1/2}δ(z)^{1/2}T_{t_y}T_{t_z}⁻¹` for the
    /// canonical decomposition `x = y − z`.
    pub fn theta(&self, x: &[i64]) -> HeckeElem {
        let (y, z) = self.group().datum().dominant_decomposition(x);
        self.theta_with(&y, &z).expect("canonical decomposition is dominant")
    }

    /// `θ_{y−z}` computed from the given dominant pair.
    pub fn theta_with(&self, y: &[i64], z: &[i64]) -> Result<HeckeElem> {
        let g = self.group();
        let d = g.datum();
        for v in [y, z] {
            if !d.is_dominant(v) {
                return Err(HeckeError::NotDominant(v.to_vec()));
            }
        }
        let l = self.alg.labels();
        let c = l.delta_sqrt(g, y).inv().mul(&l.delta_sqrt(g, z));
        let ty = HeckeElem::term(g.translation(y), LaurentPoly::mono(c));
        if lattice::is_zero(z) {
            return Ok(ty);
        }
        self.alg.mul_letters(&ty, &self.alg.inverse_letters(&g.translation(z)))
    }

    /// Image of `f ∈ 𝒜` in the `T` basis.
    pub fn embed(&self, f: &GroupAlgebraElem) -> HeckeElem {
        let mut out = HeckeElem::zero();
        for (x, c) in f.terms() {
            out = out.add(&self.theta(x).scale(c));
        }
        out
    }

    /// `(θ_x − θ_{s(x)}) / (1 − θ_{−α})` or its `2α` analogue, expanded
    /// as a finite sum, times the prefactor of the relevant branch.
    /// This is `θ_x T_s − T_s θ_{s(x)}` for the finite simple reflection `i`.
    pub fn lusztig_tail(&self, i: usize, x: &[i64]) -> GroupAlgebraElem {
        let d = self.group().datum();
        let l = self.alg.labels();
        let m = d.pair(x, &d.coroots()[i]);
        if m == 0 {
            return GroupAlgebraElem::zero();
        }
        let alpha = &d.roots()[i];
        let q = LaurentPoly::mono(l.q_coroot(i));
        let one = LaurentPoly::one();
        let (step, n, pref) = if l.is_doubled(i) {
            let qh = LaurentPoly::mono(l.q_half(i));
            let qhs = LaurentPoly::mono(l.q_half_sqrt(i));
            let mut pref = GroupAlgebraElem::term(&lattice::zero(d.rank()), &(&qh * &q) - &one);
            pref.add_term(&lattice::neg(alpha), &qhs * &(&q - &one));
            (lattice::scale(2, alpha), m / 2, pref)
        } else {
            (alpha.clone(), m, GroupAlgebraElem::term(&lattice::zero(d.rank()), &q - &one))
        };
        let mut geo = GroupAlgebraElem::zero();
        if n > 0 {
            for j in 0..n {
                geo.add_term(&lattice::sub(x, &lattice::scale(j, &step)), LaurentPoly::one());
            }
        } else {
            for j in 1..=-n {
                geo.add_term(&lattice::add(x, &lattice::scale(j, &step)), -LaurentPoly::one());
            }
        }
        pref.mul(&geo)
    }

    /// `b · T_{s_i}` for a finite simple reflection.
    fn right_t_finite(&self, b: &BernsteinElem, i: usize) -> BernsteinElem {
        let g = self.group();
        let w0 = g.finite();
        let s = w0.simple(i);
        let q = LaurentPoly::mono(self.alg.q_s(i).clone());
        let qm1 = &q - &LaurentPoly::one();
        let mut out = BernsteinElem::zero(self.order());
        for (w, f) in b.parts.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let sf = f.act(g, s);
            let ws = w0.mul(w, s);
            if w0.length(ws) > w0.length(w) {
                out.parts[ws].add_assign(&sf);
            } else {
                out.parts[w].add_assign(&sf.scale(&qm1));
                out.parts[ws].add_assign(&sf.scale(&q));
            }
            let mut tail = GroupAlgebraElem::zero();
            for (x, c) in f.terms() {
                tail.add_assign(&self.lusztig_tail(i, x).scale(c));
            }
            out.parts[w].add_assign(&tail);
        }
        out
    }

    /// `b · T_{s_i}⁻¹ = q⁻¹ b T_s + (q⁻¹ − 1) b` for a finite simple reflection.
    fn right_tinv_finite(&self, b: &BernsteinElem, i: usize) -> BernsteinElem {
        let qi = self.alg.q_s(i).inv();
        let mut out = self.right_t_finite(b, i).scale_monomial(&qi);
        out.add_assign(&b.scale(&(&LaurentPoly::mono(qi) - &LaurentPoly::one())));
        out
    }

    /// `b · T_w` for `w ∈ W0`.
    pub fn right_finite(&self, b: &BernsteinElem, w: usize) -> BernsteinElem {
        let word = self.group().finite().elem(w).word.clone();
        word.iter().fold(b.clone(), |acc, &i| self.right_t_finite(&acc, i))
    }

    /// `b · L`
    pub fn right_letter(&self, b: &BernsteinElem, letter: &Letter) -> BernsteinElem {
        let g = self.group();
        match letter {
            Letter::T(i) if *i < self.nsimple => self.right_t_finite(b, *i),
            Letter::TInv(i) if *i < self.nsimple => self.right_tinv_finite(b, *i),
            Letter::T(i) => {
                // T_{s0} = δ(ϑ)^{1/2} θ_ϑ T_{s_ϑ}⁻¹
                let a = &self.affine[i];
                let mut cur = b.shift(&a.theta).scale_monomial(&a.delta_sqrt);
                for &j in a.word.iter().rev() {
                    cur = self.right_tinv_finite(&cur, j);
                }
                cur
            }
            Letter::TInv(i) => {
                let a = &self.affine[i];
                let mut cur = b.clone();
                for &j in &a.word {
                    cur = self.right_t_finite(&cur, j);
                }
                cur.shift(&lattice::neg(&a.theta)).scale_monomial(&a.delta_sqrt.inv())
            }
            Letter::Omega(om) => {
                // T_ω = δ(x)^{1/2} T_w θ_x for ω = w t_x
                let c = self.alg.labels().delta_sqrt(g, &om.x);
                self.right_finite(b, om.finite()).shift(&om.x).scale_monomial(&c)
            }
        }
    }

    /// `T_g` in Bernstein form.
    pub fn basis_to_bernstein(&self, g: &AffineWeylElem) -> BernsteinElem {
        let one = BernsteinElem::single(self.order(), 0, GroupAlgebraElem::one(self.rank()));
        self.alg.letters(g).iter().fold(one, |acc, l| self.right_letter(&acc, l))
    }

    pub fn to_bernstein(&self, h: &HeckeElem) -> BernsteinElem {
        let terms: Vec<(&AffineWeylElem, &LaurentPoly)> = h.terms().collect();
        let parts: Vec<BernsteinElem> =
            terms.par_iter().map(|(g, c)| self.basis_to_bernstein(g).scale(c)).collect();
        let mut out = BernsteinElem::zero(self.order());
        for p in &parts {
            out.add_assign(p);
        }
        out
    }

    /// `Σ_w T_w f_w` back in the `T` basis.
    pub fn from_bernstein(&self, b: &BernsteinElem) -> Result<HeckeElem> {
        let g = self.group();
        let mut out = HeckeElem::zero();
        for (w, f) in b.parts.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let letters = self.alg.letters(&g.from_finite(w));
            out = out.add(&self.alg.letters_mul(&letters, &self.embed(f))?);
        }
        Ok(out)
    }

    /// `b · b'` computed inside the Bernstein presentation.
    pub fn mul(&self, a: &BernsteinElem, b: &BernsteinElem) -> BernsteinElem {
        let mut out = BernsteinElem::zero(self.order());
        for (v, f) in b.parts.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            out.add_assign(&self.right_finite(a, v).mul_a(f));
        }
        out
    }

    /// Coefficients `c_{w,x}` with `h = Σ c_{w,x} T_w θ_x`; the support
    /// must lie in `[−radius, radius]^rank`.
    pub fn expand_in_bernstein(
        &self,
        h: &HeckeElem,
        radius: i64,
    ) -> Result<BTreeMap<(usize, Vector), LaurentPoly>> {
        let b = self.to_bernstein(h);
        for p in &b.parts {
            if let Some(x) = p.terms().map(|(x, _)| x).find(|x| x.iter().any(|v| v.abs() > radius)) {
                return Err(HeckeError::BoxTooSmall { radius, found: x.to_vec() });
            }
        }
        Ok(b.coefficients())
    }

    /// `(θ_x T_s − T_s θ_{s(x)}, closed form)`, both in the `T` basis.
    pub fn lusztig_commutation(&self, x: &[i64], i: usize) -> Result<(HeckeElem, HeckeElem)> {
        if i >= self.nsimple {
            return Err(HeckeError::InvalidInput(format!("{i} is not a finite simple root")));
        }
        let d = self.group().datum();
        let ts = self.alg.t_simple(i);
        let sx = d.simple_reflect(i, x);
        let lhs = self
            .alg
            .mul(&self.theta(x), &ts)?
            .sub(&self.alg.mul(&ts, &self.theta(&sx))?);
        let rhs = self.embed(&self.lusztig_tail(i, x));
        Ok((lhs, rhs))
    }

    /// `Σ_{x′ ∈ W0 x} θ_{x′}`
    pub fn center_element_a(&self, x: &[i64]) -> GroupAlgebraElem {
        let mut f = GroupAlgebraElem::zero();
        for y in self.group().finite().orbit(x) {
            f.add_term(&y, LaurentPoly::one());
        }
        f
    }

    pub fn center_element(&self, x: &[i64]) -> HeckeElem {
        self.embed(&self.center_element_a(x))
    }

    /// `θ_x* = T_{w0} θ_{−w0(x)} T_{w0}⁻¹`
    pub fn star_theta_check(&self, x: &[i64]) -> Result<bool> {
        let g = self.group();
        let w0 = g.from_finite(g.finite().longest());
        let lhs = self.alg.star(&self.theta(x));
        let y = lattice::neg(&g.finite().act(g.finite().longest(), x));
        let rhs = self.alg.letters_mul(&self.alg.letters(&w0), &self.theta(&y))?;
        let rhs = self.alg.mul_letters(&rhs, &self.alg.inverse_letters(&w0))?;
        Ok(lhs == rhs)
    }

    /// `[a, b] = ab − ba`
    pub fn commutator(&self, a: &HeckeElem, b: &HeckeElem) -> Result<HeckeElem> {
        Ok(self.alg.mul(a, b)?.sub(&self.alg.mul(b, a)?))
    }
}
