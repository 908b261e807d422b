//! Parameter labels: one formal variable `v_c` per `W`-conjugacy class of
//! simple affine reflections, with `q(s) = v_c²`.
//!
//! A class is determined by the `W0`-orbit of `α∨` and, when `α∨ ∈ 2Y`, by
//! the parity of the level `k`: translations shift `k` by `(x, α∨)`, which
//! is always even in that case.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use super::laurent::{LaurentPoly, Monomial};
use crate::error::{HeckeError, Result};
use crate::scalar::rational_sqrt;
use crate::weyl::{AffineRoot, AffineWeylElem, AffineWeylGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    pub orbit: usize,
    pub parity: u8,
}

#[derive(Clone, Debug)]
pub struct LabelSet {
    names: Vec<String>,
    classes: Vec<ClassKey>,
    class_var: Vec<usize>,
    key_index: HashMap<ClassKey, usize>,
    /// Coroot index → orbit id.
    orbit_of: Vec<usize>,
    /// Orbit id → `α∨ ∈ 2Y`.
    doubled: Vec<bool>,
    /// `F` index → class.
    fundamental_class: Vec<usize>,
}

impl LabelSet {
    fn skeleton(g: &AffineWeylGroup) -> LabelSet {
        let d = g.datum();
        let w = g.finite();
        let ncor = d.coroots().len();
        let mut orbit_of = vec![usize::MAX; ncor];
        let mut doubled = Vec::new();
        for j in 0..ncor {
            if orbit_of[j] != usize::MAX {
                continue;
            }
            let id = doubled.len();
            for u in 0..w.order() {
                orbit_of[w.act_root(u, j)] = id;
            }
            doubled.push(d.coroots()[j].iter().all(|c| c % 2 == 0));
        }
        let mut s = LabelSet {
            names: Vec::new(),
            classes: Vec::new(),
            class_var: Vec::new(),
            key_index: HashMap::new(),
            orbit_of,
            doubled,
            fundamental_class: Vec::new(),
        };
        for &a in g.fundamental() {
            let key = s.key(a);
            let next = s.classes.len();
            let c = *s.key_index.entry(key).or_insert(next);
            if c == next {
                s.classes.push(key);
            }
            s.fundamental_class.push(c);
        }
        s
    }

    /// One independent variable per class.
    pub fn generic(g: &AffineWeylGroup) -> LabelSet {
        let mut s = LabelSet::skeleton(g);
        let n = s.classes.len();
        s.names = if n == 1 { vec!["v".into()] } else { (1..=n).map(|i| format!("v{i}")).collect() };
        s.class_var = (0..n).collect();
        s
    }

    /// All classes share the single variable `v`.
    pub fn equal(g: &AffineWeylGroup) -> LabelSet {
        let mut s = LabelSet::skeleton(g);
        s.names = vec!["v".into()];
        s.class_var = vec![0; s.classes.len()];
        s
    }

    /// Classes named explicitly (`"0"`, `"1"`, … → variable name); classes
    /// with the same name share a variable. Every class must be named.
    pub fn from_names(g: &AffineWeylGroup, map: &BTreeMap<String, String>) -> Result<LabelSet> {
        let mut s = LabelSet::skeleton(g);
        let n = s.classes.len();
        let mut assigned: Vec<Option<String>> = vec![None; n];
        for (k, name) in map {
            let c: usize = k
                .trim()
                .parse()
                .map_err(|_| HeckeError::InvalidLabels(format!("class key `{k}` is not an index")))?;
            if c >= n {
                return Err(HeckeError::InvalidLabels(format!(
                    "class {c} does not exist ({n} classes)"
                )));
            }
            if name.trim().is_empty() {
                return Err(HeckeError::InvalidLabels(format!("empty name for class {c}")));
            }
            assigned[c] = Some(name.trim().to_string());
        }
        if let Some(c) = assigned.iter().position(|a| a.is_none()) {
            return Err(HeckeError::InvalidLabels(format!("class {c} has no label")));
        }
        for name in assigned.into_iter().flatten() {
            let var = match s.names.iter().position(|n| *n == name) {
                Some(v) => v,
                None => {
                    s.names.push(name);
                    s.names.len() - 1
                }
            };
            s.class_var.push(var);
        }
        Ok(s)
    }

    /// Labels from the datum's own `labels` map, or generic ones.
    pub fn for_group(g: &AffineWeylGroup) -> Result<LabelSet> {
        if g.datum().label_names().is_empty() {
            Ok(LabelSet::generic(g))
        } else {
            LabelSet::from_names(g, g.datum().label_names())
        }
    }

    pub fn key(&self, a: AffineRoot) -> ClassKey {
        let orbit = self.orbit_of[a.coroot];
        let parity = if self.doubled[orbit] { a.k.rem_euclid(2) as u8 } else { 0 };
        ClassKey { orbit, parity }
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ClassKey] {
        &self.classes
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn class_variable(&self, c: usize) -> usize {
        self.class_var[c]
    }

    /// Class of the reflection in the affine root `a`.
    pub fn class_of(&self, a: AffineRoot) -> usize {
        self.key_index[&self.key(a)]
    }

    /// Class of `s_a`, `a` the `i`-th element of `F`.
    pub fn class_of_fundamental(&self, i: usize) -> usize {
        self.fundamental_class[i]
    }

    pub fn is_doubled(&self, coroot: usize) -> bool {
        self.doubled[self.orbit_of[coroot]]
    }

    fn class_var_of_key(&self, key: ClassKey) -> usize {
        self.class_var[self.key_index[&key]]
    }

    /// `v_c`
    pub fn v_class(&self, c: usize) -> Monomial {
        Monomial::var(self.class_var[c], 1)
    }

    /// `q(s_a) = v_c²` for the class of `a`.
    pub fn q_reflection(&self, a: AffineRoot) -> Monomial {
        Monomial::var(self.class_var_of_key(self.key(a)), 2)
    }

    /// `q(s)` for the `i`-th simple affine reflection.
    pub fn q_s(&self, i: usize) -> Monomial {
        Monomial::var(self.class_var[self.fundamental_class[i]], 2)
    }

    /// Label `q_a` of an affine root: `q(s_a)` when `α∨ ∉ 2Y`, and the label
    /// of the opposite parity class otherwise (the diagram swap of the
    /// `C_n^aff` component, so that `q_a = q(s_{a−1})` holds for all `a`).
    pub fn q_affine(&self, a: AffineRoot) -> Monomial {
        self.q_reflection(AffineRoot { coroot: a.coroot, k: a.k + 1 })
    }

    /// `q_{α∨}` for the root of index `j`.
    pub fn q_coroot(&self, j: usize) -> Monomial {
        self.q_affine(AffineRoot { coroot: j, k: 0 })
    }

    /// `q_{α∨/2} = q_{1+α∨}/q_{α∨}`; trivial unless `α∨ ∈ 2Y`.
    pub fn q_half(&self, j: usize) -> Monomial {
        self.q_affine(AffineRoot { coroot: j, k: 1 }).mul(&self.q_coroot(j).inv())
    }

    /// `q_{α∨/2}^{1/2}`
    pub fn q_half_sqrt(&self, j: usize) -> Monomial {
        self.q_half(j).half().expect("labels are squares of variables")
    }

    /// `q(w) = ∏_{a ∈ R_+ ∩ w⁻¹R_−} q(s_a)`.
    pub fn q_of_w(&self, g: &AffineWeylGroup, w: &AffineWeylElem) -> Monomial {
        let d = g.datum();
        let npos = d.num_positive();
        let mut counts: BTreeMap<ClassKey, i64> = BTreeMap::new();
        for j in 0..d.coroots().len() {
            let m = d.pair(&w.x, &d.coroots()[j]);
            let k_min = if j < npos { 0 } else { 1 };
            let image_pos = g.finite().act_root(w.finite(), j) < npos;
            let k_max = m - i64::from(image_pos);
            if k_max < k_min {
                continue;
            }
            let orbit = self.orbit_of[j];
            if self.doubled[orbit] {
                let evens = k_max.div_euclid(2) - (k_min - 1).div_euclid(2);
                let total = k_max - k_min + 1;
                *counts.entry(ClassKey { orbit, parity: 0 }).or_default() += evens;
                *counts.entry(ClassKey { orbit, parity: 1 }).or_default() += total - evens;
            } else {
                *counts.entry(ClassKey { orbit, parity: 0 }).or_default() += k_max - k_min + 1;
            }
        }
        let mut exps = vec![0i32; self.nvars()];
        for (key, n) in counts {
            if n != 0 {
                exps[self.class_var_of_key(key)] += 2 * n as i32;
            }
        }
        Monomial::new(&exps)
    }

    /// `q(w)` as a polynomial.
    pub fn q_poly(&self, g: &AffineWeylGroup, w: &AffineWeylElem) -> LaurentPoly {
        LaurentPoly::mono(self.q_of_w(g, w))
    }

    /// `δ(x)^{1/2} = ∏_{β ∈ R_nr,+} q_{β∨}^{(x, β∨)/2}`.
    pub fn delta_sqrt(&self, g: &AffineWeylGroup, x: &[i64]) -> Monomial {
        let d = g.datum();
        let mut acc = Monomial::one();
        for j in 0..d.num_positive() {
            let m = d.pair(x, &d.coroots()[j]) as i32;
            if m == 0 {
                continue;
            }
            let mut part = self.q_coroot(j).half().expect("square").pow(m);
            if self.is_doubled(j) {
                // 2α ∈ R_nr with coroot α∨/2
                part = part.mul(&self.q_half_sqrt(j).pow(m / 2));
            }
            acc = acc.mul(&part);
        }
        acc
    }

    /// `δ(x) = ∏_{β ∈ R_nr,+} q_{β∨}^{(x, β∨)}`.
    pub fn delta(&self, g: &AffineWeylGroup, x: &[i64]) -> Monomial {
        self.delta_sqrt(g, x).pow(2)
    }

    /// `Σ_{w ∈ subset} q(w)` over elements of `W0`.
    pub fn poincare(&self, g: &AffineWeylGroup, subset: &[usize]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &w in subset {
            p.add_term(self.q_of_w(g, &g.from_finite(w)), BigRational::from_integer(1.into()));
        }
        p
    }

    /// `P_0 = Σ_{w ∈ W0} q(w)`.
    pub fn poincare_w0(&self, g: &AffineWeylGroup) -> LaurentPoly {
        let all: Vec<usize> = (0..g.finite().order()).collect();
        self.poincare(g, &all)
    }

    /// Variable values `v = √q` from rational parameter values per variable;
    /// each `q` must be a rational square.
    pub fn rational_values(&self, q: &[BigRational]) -> Result<Vec<BigRational>> {
        if q.len() != self.nvars() {
            return Err(HeckeError::InvalidLabels(format!(
                "expected {} values, got {}",
                self.nvars(),
                q.len()
            )));
        }
        q.iter()
            .zip(&self.names)
            .map(|(x, n)| {
                if x <= &BigRational::from_integer(BigInt::from(1)) {
                    return Err(HeckeError::InvalidLabels(format!("{n}² = {x} must exceed 1")));
                }
                rational_sqrt(x).ok_or_else(|| {
                    HeckeError::InvalidLabels(format!(
                        "{n}² = {x} is not a rational square; use complex mode"
                    ))
                })
            })
            .collect()
    }

    pub fn complex_values(&self, q: &[f64]) -> Result<Vec<Complex64>> {
        if q.len() != self.nvars() {
            return Err(HeckeError::InvalidLabels(format!(
                "expected {} values, got {}",
                self.nvars(),
                q.len()
            )));
        }
        q.iter()
            .map(|&x| {
                if x > 1.0 {
                    Ok(Complex64::new(x.sqrt(), 0.0))
                } else {
                    Err(HeckeError::InvalidLabels(format!("q = {x} must exceed 1")))
                }
            })
            .collect()
    }

    /// Human-readable description of the classes.
    pub fn describe(&self, g: &AffineWeylGroup) -> Vec<String> {
        let d = g.datum();
        (0..self.classes.len())
            .map(|c| {
                let fi: Vec<String> = (0..g.fundamental().len())
                    .filter(|&i| self.fundamental_class[i] == c)
                    .map(|i| {
                        let a = g.fundamental()[i];
                        format!("({:?}, {})", d.coroots()[a.coroot].as_slice(), a.k)
                    })
                    .collect();
                format!("class {c}: {} -> {}", fi.join(" "), self.names[self.class_var[c]])
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{Preset, RootDatum};
    use crate::scalar::rat;

    fn group(p: Preset) -> AffineWeylGroup {
        AffineWeylGroup::from_datum(RootDatum::preset(p).unwrap()).unwrap()
    }

    #[test]
    fn class_counts() {
        for (p, n) in [
            (Preset::A1Weight, 1),
            (Preset::A1Root, 2),
            (Preset::A2, 1),
            (Preset::B2, 2),
            (Preset::C2, 2),
            (Preset::G2, 2),
            (Preset::BnCn(2), 3),
            (Preset::BnCn(3), 3),
            (Preset::GLn(3), 1),
        ] {
            let g = group(p);
            assert_eq!(LabelSet::generic(&g).num_classes(), n, "{}", p.name());
        }
    }

    #[test]
    fn a1_values() {
        let g = group(Preset::A1Weight);
        let l = LabelSet::generic(&g);
        let s = g.from_finite(1);
        assert_eq!(l.q_of_w(&g, &s), Monomial::var(0, 2));
        assert_eq!(l.q_of_w(&g, &g.identity()), Monomial::one());
        assert_eq!(l.delta(&g, &[3]), Monomial::var(0, 6));
        assert_eq!(l.delta_sqrt(&g, &[1]), Monomial::var(0, 1));
        let p0 = l.poincare_w0(&g);
        assert_eq!(p0, &LaurentPoly::one() + &LaurentPoly::mono(Monomial::var(0, 2)));
    }

    #[test]
    fn a2_poincare() {
        let g = group(Preset::A2);
        let l = LabelSet::generic(&g);
        let q = LaurentPoly::mono(Monomial::var(0, 2));
        let expected = &(&(&LaurentPoly::one() + &q.scale(&rat(2, 1))) + &q.pow(2).scale(&rat(2, 1))) + &q.pow(3);
        assert_eq!(l.poincare_w0(&g), expected);
    }

    #[test]
    fn a1_root_half_label() {
        let g = group(Preset::A1Root);
        let l = LabelSet::generic(&g);
        // classes: 0 from (α∨, 0), 1 from (−α∨, 1)
        assert_eq!(l.q_coroot(0), Monomial::var(1, 2));
        assert_eq!(l.q_half(0), Monomial::new(&[2, -2]));
        // q(s_α) = q_{α∨} q_{α∨/2}
        let s = g.from_finite(1);
        assert_eq!(l.q_of_w(&g, &s), l.q_coroot(0).mul(&l.q_half(0)));
        // q(t_x) = δ(x) for dominant x
        for x in 0..5 {
            assert_eq!(l.q_of_w(&g, &g.translation(&[x])), l.delta(&g, &[x]));
        }
    }

    #[test]
    fn bncn2_length_three_element_against_inversions() {
        let g = group(Preset::BnCn(2));
        let l = LabelSet::generic(&g);
        // s0 s2 s1 with s0 the affine node
        let e = g.from_factorization(&g.identity(), &[2, 1, 0]);
        assert_eq!(g.length(&e), 3);
        let mut by_hand = Monomial::one();
        for a in g.inversions(&e) {
            let plus_one = AffineRoot { coroot: a.coroot, k: a.k + 1 };
            by_hand = by_hand.mul(&l.q_affine(plus_one));
        }
        assert_eq!(l.q_of_w(&g, &e), by_hand);
        // three different classes appear once each
        assert_eq!(by_hand, Monomial::new(&[2, 2, 2]));
    }

    #[test]
    fn explicit_names() {
        let g = group(Preset::BnCn(2));
        let mut m = BTreeMap::new();
        m.insert("0".to_string(), "a".to_string());
        m.insert("1".to_string(), "b".to_string());
        m.insert("2".to_string(), "a".to_string());
        let l = LabelSet::from_names(&g, &m).unwrap();
        assert_eq!(l.nvars(), 2);
        m.insert("7".to_string(), "c".to_string());
        assert!(matches!(LabelSet::from_names(&g, &m), Err(HeckeError::InvalidLabels(_))));
        m.remove("7");
        m.remove("2");
        assert!(LabelSet::from_names(&g, &m).is_err());
    }

    #[test]
    fn q_is_one_on_omega() {
        let g = group(Preset::A1Weight);
        let l = LabelSet::generic(&g);
        let omega = g.mul(&g.translation(&[1]), &g.from_finite(1));
        assert!(l.q_of_w(&g, &omega).is_one());
    }
}
