//! The Iwahori-Hecke algebra `ℋ` with basis `T_w`, `w ∈ W`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffring::{LabelSet, LaurentPoly, Monomial, PolyJson};
use crate::error::{HeckeError, Result};
use crate::weyl::{AffineWeylElem, AffineWeylGroup, AffineWeylJson};

/// Intermediate elements larger than this abort the computation.
pub const SUPPORT_GUARD: usize = 1_000_000;

/// `Σ c_w T_w` with finitely many nonzero `c_w`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct HeckeElem {
    terms: BTreeMap<AffineWeylElem, LaurentPoly>,
}

impl fmt::Debug for HeckeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl HeckeElem {
    pub fn zero() -> HeckeElem {
        HeckeElem::default()
    }

    /// `c·T_w`
    pub fn term(w: AffineWeylElem, c: LaurentPoly) -> HeckeElem {
        let mut h = HeckeElem::zero();
        h.add_term(w, c);
        h
    }

    pub fn basis(w: AffineWeylElem) -> HeckeElem {
        HeckeElem::term(w, LaurentPoly::one())
    }

    pub fn from_map(map: HashMap<AffineWeylElem, LaurentPoly>) -> HeckeElem {
        HeckeElem { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
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

    pub fn terms(&self) -> impl Iterator<Item = (&AffineWeylElem, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &AffineWeylElem) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: AffineWeylElem, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &HeckeElem) -> HeckeElem {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &HeckeElem) -> HeckeElem {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> HeckeElem {
        HeckeElem { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElem {
        if c.is_zero() {
            return HeckeElem::zero();
        }
        let mut r = HeckeElem::zero();
        for (w, x) in &self.terms {
            r.add_term(w.clone(), x * c);
        }
        r
    }

    pub fn scale_monomial(&self, m: &Monomial) -> HeckeElem {
        HeckeElem { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.shift(m))).collect() }
    }

    /// Coefficient of `T_e` (identified by the caller's identity element).
    pub fn coeff_at_identity(&self) -> LaurentPoly {
        self.terms
            .iter()
            .find(|(w, _)| w.w == 0 && w.x.iter().all(|&c| c == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }
}

/// One factor in a product of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    /// `T_{s}` for the `i`-th simple affine reflection.
    T(usize),
    /// `T_{s}⁻¹`
    TInv(usize),
    /// `T_ω` for a length-zero element.
    Omega(AffineWeylElem),
}

/// Serialized `HeckeElem`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct HeckeTermJson {
    pub elem: AffineWeylJson,
    pub coeff: PolyJson,
}

/// `ℋ(W, q)` for a fixed group and label set.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra {
    group: Arc<AffineWeylGroup>,
    labels: LabelSet,
    /// `q(s)` per simple affine reflection.
    q_s: Vec<Monomial>,
    /// `q(s)⁻¹`
    q_s_inv: Vec<Monomial>,
}

impl HeckeAlgebra {
    pub fn new(group: Arc<AffineWeylGroup>, labels: LabelSet) -> HeckeAlgebra {
        let q_s: Vec<Monomial> = (0..group.fundamental().len()).map(|i| labels.q_s(i)).collect();
        let q_s_inv = q_s.iter().map(|m| m.inv()).collect();
        HeckeAlgebra { group, labels, q_s, q_s_inv }
    }

    /// Generic labels (one variable per class).
    pub fn generic(group: Arc<AffineWeylGroup>) -> Result<HeckeAlgebra> {
        let labels = LabelSet::for_group(&group)?;
        Ok(HeckeAlgebra::new(group, labels))
    }

    pub fn equal_labels(group: Arc<AffineWeylGroup>) -> HeckeAlgebra {
        let labels = LabelSet::equal(&group);
        HeckeAlgebra::new(group, labels)
    }

    pub fn group(&self) -> &AffineWeylGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<AffineWeylGroup> {
        &self.group
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    pub fn var_names(&self) -> &[String] {
        self.labels.names()
    }

    pub fn one(&self) -> HeckeElem {
        HeckeElem::basis(self.group.identity())
    }

    pub fn t(&self, w: &AffineWeylElem) -> HeckeElem {
        HeckeElem::basis(w.clone())
    }

    /// `T_s` for the `i`-th element of `F`.
    pub fn t_simple(&self, i: usize) -> HeckeElem {
        HeckeElem::basis(self.group.simple_reflection(i).clone())
    }

    pub fn q_s(&self, i: usize) -> &Monomial {
        &self.q_s[i]
    }

    /// `q(w)`
    pub fn q(&self, w: &AffineWeylElem) -> Monomial {
        self.labels.q_of_w(&self.group, w)
    }

    fn check(&self, h: &HeckeElem) -> Result<()> {
        for w in h.terms.keys() {
            self.group.check(w)?;
        }
        Ok(())
    }

    fn guard(n: usize) -> Result<()> {
        if n > SUPPORT_GUARD {
            Err(HeckeError::SupportOverflow(n))
        } else {
            Ok(())
        }
    }

    /// Apply one letter on the right of a working map.
    fn apply_right(
        &self,
        src: HashMap<AffineWeylElem, LaurentPoly>,
        letter: &Letter,
    ) -> HashMap<AffineWeylElem, LaurentPoly> {
        let g = &*self.group;
        let mut out: HashMap<AffineWeylElem, LaurentPoly> = HashMap::with_capacity(src.len() * 2);
        let mut add = |w: AffineWeylElem, c: LaurentPoly| {
            if c.is_zero() {
                return;
            }
            match out.entry(w) {
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += &c;
                }
            }
        };
        match letter {
            Letter::Omega(om) => {
                for (u, c) in src {
                    add(g.mul(&u, om), c);
                }
            }
            Letter::T(i) => {
                let s = g.simple_reflection(*i);
                let q = &self.q_s[*i];
                for (u, c) in src {
                    let us = g.mul(&u, s);
                    if g.right_ascent(&u, *i) {
                        add(us, c);
                    } else {
                        // T_u T_s = (q−1)T_u + q T_{us}
                        let qc = c.shift(q);
                        add(u, &qc - &c);
                        add(us, qc);
                    }
                }
            }
            Letter::TInv(i) => {
                let s = g.simple_reflection(*i);
                let qi = &self.q_s_inv[*i];
                for (u, c) in src {
                    let us = g.mul(&u, s);
                    if g.right_ascent(&u, *i) {
                        // T_u T_s⁻¹ = q⁻¹T_{us} + (q⁻¹−1)T_u
                        let qc = c.shift(qi);
                        add(u, &qc - &c);
                        add(us, qc);
                    } else {
                        add(us, c);
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Apply one letter on the left.
    fn apply_left(
        &self,
        letter: &Letter,
        src: HashMap<AffineWeylElem, LaurentPoly>,
    ) -> HashMap<AffineWeylElem, LaurentPoly> {
        let g = &*self.group;
        let mut out: HashMap<AffineWeylElem, LaurentPoly> = HashMap::with_capacity(src.len() * 2);
        let mut add = |w: AffineWeylElem, c: LaurentPoly| {
            if c.is_zero() {
                return;
            }
            *out.entry(w).or_default() += &c;
        };
        match letter {
            Letter::Omega(om) => {
                for (u, c) in src {
                    add(g.mul(om, &u), c);
                }
            }
            Letter::T(i) | Letter::TInv(i) => {
                let s = g.simple_reflection(*i);
                let inverse = matches!(letter, Letter::TInv(_));
                let q = if inverse { &self.q_s_inv[*i] } else { &self.q_s[*i] };
                for (u, c) in src {
                    let su = g.mul(s, &u);
                    // l(su) > l(u) iff u⁻¹(a) > 0
                    let ascent = g.right_ascent(&g.inverse(&u), *i);
                    if ascent != inverse {
                        add(su, c);
                    } else {
                        let qc = c.shift(q);
                        add(u, &qc - &c);
                        add(su, qc);
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Letters of `T_w = T_ω T_{s_1} ⋯ T_{s_k}`.
    pub fn letters(&self, w: &AffineWeylElem) -> Vec<Letter> {
        let (omega, word) = self.group.factor_extended(w);
        let mut out = Vec::with_capacity(word.len() + 1);
        if omega != self.group.identity() {
            out.push(Letter::Omega(omega));
        }
        out.extend(word.into_iter().map(Letter::T));
        out
    }

    /// Letters of `T_w⁻¹ = T_{s_k}⁻¹ ⋯ T_{s_1}⁻¹ T_{ω⁻¹}`.
    pub fn inverse_letters(&self, w: &AffineWeylElem) -> Vec<Letter> {
        let (omega, word) = self.group.factor_extended(w);
        let mut out: Vec<Letter> = word.into_iter().rev().map(Letter::TInv).collect();
        if omega != self.group.identity() {
            out.push(Letter::Omega(self.group.inverse(&omega)));
        }
        out
    }

    /// `a · L_1 ⋯ L_n`
    pub fn mul_letters(&self, a: &HeckeElem, letters: &[Letter]) -> Result<HeckeElem> {
        let mut cur: HashMap<AffineWeylElem, LaurentPoly> =
            a.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        for l in letters {
            cur = self.apply_right(cur, l);
            Self::guard(cur.len())?;
        }
        Ok(HeckeElem::from_map(cur))
    }

    /// `L_1 ⋯ L_n · a`
    pub fn letters_mul(&self, letters: &[Letter], a: &HeckeElem) -> Result<HeckeElem> {
        let mut cur: HashMap<AffineWeylElem, LaurentPoly> =
            a.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        for l in letters.iter().rev() {
            cur = self.apply_left(l, cur);
            Self::guard(cur.len())?;
        }
        Ok(HeckeElem::from_map(cur))
    }

    /// `a · b`
    pub fn mul(&self, a: &HeckeElem, b: &HeckeElem) -> Result<HeckeElem> {
        self.check(a)?;
        self.check(b)?;
        if a.is_zero() || b.is_zero() {
            return Ok(HeckeElem::zero());
        }
        let right = a.len() >= b.len();
        let parts: Vec<Result<HeckeElem>> = if right {
            b.terms
                .par_iter()
                .map(|(v, c)| Ok(self.mul_letters(a, &self.letters(v))?.scale(c)))
                .collect()
        } else {
            a.terms
                .par_iter()
                .map(|(u, c)| Ok(self.letters_mul(&self.letters(u), b)?.scale(c)))
                .collect()
        };
        let mut acc: HashMap<AffineWeylElem, LaurentPoly> = HashMap::new();
        for p in parts {
            for (w, c) in p?.terms {
                *acc.entry(w).or_default() += &c;
            }
            Self::guard(acc.len())?;
        }
        Ok(HeckeElem::from_map(acc))
    }

    pub fn mul_all(&self, factors: &[&HeckeElem]) -> Result<HeckeElem> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// `T_w⁻¹`
    pub fn invert_basis(&self, w: &AffineWeylElem) -> HeckeElem {
        self.mul_letters(&self.one(), &self.inverse_letters(w))
            .expect("inverse of a basis element stays within the guard")
    }

    /// `(Σ c_w T_w)* = Σ c̄_w T_{w⁻¹}`; coefficients are real.
    pub fn star(&self, a: &HeckeElem) -> HeckeElem {
        HeckeElem {
            terms: a.terms.iter().map(|(w, c)| (self.group.inverse(w), c.clone())).collect(),
        }
    }

    /// `τ(a)`, the coefficient of `T_e`.
    pub fn tau(&self, a: &HeckeElem) -> LaurentPoly {
        a.coeff(&self.group.identity())
    }

    /// `τ(ab) = Σ_v a_{v⁻¹} b_v q(v)` without forming the product.
    pub fn tau_product(&self, a: &HeckeElem, b: &HeckeElem) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for (v, c) in &b.terms {
            if let Some(ac) = a.terms.get(&self.group.inverse(v)) {
                acc.add_scaled(&(ac * c), &self.q(v), &BigRational::one());
            }
        }
        acc
    }

    /// `(a, b) = τ(a* b) = Σ_w c̄_w d_w q(w)`.
    pub fn inner(&self, a: &HeckeElem, b: &HeckeElem) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for (w, c) in &a.terms {
            if let Some(d) = b.terms.get(w) {
                acc.add_scaled(&(c * d), &self.q(w), &BigRational::one());
            }
        }
        acc
    }

    /// `τ(a · L_1 ⋯ L_n)`. Terms whose length exceeds the number of
    /// remaining `T_s^{±1}` letters can no longer reach `T_e` and are dropped.
    pub fn tau_letters(&self, a: &HeckeElem, letters: &[Letter]) -> Result<LaurentPoly> {
        let g = &*self.group;
        let mut remaining: Vec<usize> = vec![0; letters.len() + 1];
        for i in (0..letters.len()).rev() {
            remaining[i] = remaining[i + 1] + usize::from(!matches!(letters[i], Letter::Omega(_)));
        }
        let mut cur: HashMap<AffineWeylElem, LaurentPoly> = a
            .terms
            .iter()
            .filter(|(w, _)| g.length(w) <= remaining[0])
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        for (i, l) in letters.iter().enumerate() {
            cur = self.apply_right(cur, l);
            let r = remaining[i + 1];
            cur.retain(|w, _| g.length(w) <= r);
            Self::guard(cur.len())?;
        }
        Ok(cur.remove(&g.identity()).unwrap_or_default())
    }

    pub fn to_json(&self, a: &HeckeElem) -> Vec<HeckeTermJson> {
        a.terms
            .iter()
            .map(|(w, c)| HeckeTermJson {
                elem: self.group.to_json(w),
                coeff: c.to_json(self.labels.names()),
            })
            .collect()
    }

    pub fn from_json(&self, j: &[HeckeTermJson]) -> Result<HeckeElem> {
        let mut h = HeckeElem::zero();
        for t in j {
            h.add_term(self.group.from_json(&t.elem)?, LaurentPoly::from_json(&t.coeff)?);
        }
        Ok(h)
    }

    pub fn display(&self, a: &HeckeElem) -> String {
        if a.is_zero() {
            return "0".into();
        }
        a.terms
            .iter()
            .map(|(w, c)| format!("({})·T[{}]", c.display_with(self.labels.names()), self.group.display(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{Preset, RootDatum};

    fn algebra(p: Preset) -> HeckeAlgebra {
        let g = AffineWeylGroup::from_datum(RootDatum::preset(p).unwrap()).unwrap();
        HeckeAlgebra::generic(Arc::new(g)).unwrap()
    }

    #[test]
    fn quadratic_relation() {
        for p in [Preset::A1Weight, Preset::A1Root, Preset::B2, Preset::BnCn(2), Preset::G2] {
            let h = algebra(p);
            for i in 0..h.group().fundamental().len() {
                let ts = h.t_simple(i);
                let q = LaurentPoly::mono(h.q_s(i).clone());
                let lhs = h.mul(&ts, &ts).unwrap();
                let rhs = ts.scale(&(&q - &LaurentPoly::one())).add(&h.one().scale(&q));
                assert_eq!(lhs, rhs, "{}", p.name());
            }
        }
    }

    #[test]
    fn unit_and_inverse() {
        let h = algebra(Preset::A2);
        let g = h.group();
        let w = g.from_factorization(&g.identity(), &[0, 1, 2]);
        let tw = h.t(&w);
        assert_eq!(h.mul(&h.one(), &tw).unwrap(), tw);
        let inv = h.invert_basis(&w);
        assert_eq!(h.mul(&inv, &tw).unwrap(), h.one());
        assert_eq!(h.mul(&tw, &inv).unwrap(), h.one());
        assert_eq!(h.invert_basis(&g.identity()), h.one());
    }

    #[test]
    fn omega_is_a_unit() {
        let h = algebra(Preset::A1Weight);
        let g = h.group();
        let omega = g.mul(&g.translation(&[1]), &g.from_finite(1));
        let t = h.t(&omega);
        assert_eq!(h.mul(&t, &t).unwrap(), h.one());
    }

    #[test]
    fn tau_product_and_pruned_tau_agree_with_full_product() {
        let h = algebra(Preset::BnCn(2));
        let g = h.group();
        let a = h.t(&g.translation(&[1, 0]));
        let b = h.invert_basis(&g.translation(&[1, 0]));
        let full = h.tau(&h.mul(&a, &b).unwrap());
        assert!(full.is_one());
        assert_eq!(h.tau_product(&a, &b), full);
        let letters = h.inverse_letters(&g.translation(&[1, 0]));
        assert_eq!(h.tau_letters(&a, &letters).unwrap(), full);
        let c = h.t(&g.translation(&[1, 1]));
        let d = h.invert_basis(&g.translation(&[2, 1]));
        let full = h.tau(&h.mul(&c, &d).unwrap());
        let letters = h.inverse_letters(&g.translation(&[2, 1]));
        assert_eq!(h.tau_letters(&c, &letters).unwrap(), full);
        assert_eq!(h.tau_product(&c, &d), full);
    }

    #[test]
    fn orthogonality_small() {
        let h = algebra(Preset::A2);
        let g = h.group();
        let elems: Vec<AffineWeylElem> =
            [vec![], vec![0], vec![2], vec![0, 1], vec![2, 0, 1]]
                .iter()
                .map(|w| g.from_factorization(&g.identity(), w))
                .collect();
        for u in &elems {
            for v in &elems {
                let val = h.tau(&h.mul(&h.star(&h.t(u)), &h.t(v)).unwrap());
                if u == v {
                    assert_eq!(val, LaurentPoly::mono(h.q(u)));
                } else {
                    assert!(val.is_zero());
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let h = algebra(Preset::B2);
        let g = h.group();
        let a = h.invert_basis(&g.from_factorization(&g.identity(), &[0, 2]));
        let j = h.to_json(&a);
        assert_eq!(h.from_json(&j).unwrap(), a);
    }
}
