//! The finite Weyl group `W0` and the extended affine Weyl group
//! `W = W0 ⋉ X`, with affine roots `(α∨, k)` acting on `X` by
//! `x ↦ (x, α∨) + k`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{HeckeError, Result};
use crate::lattice::{self, IntMatrix, Vector};
use crate::rootdata::RootDatum;

/// Hard cap on `|W0|`.
pub const W0_BOUND: usize = 100_000;

/// Multiplication tables are precomputed up to this order.
const TABLE_BOUND: usize = 1024;

/// An element of `W0` with its action on `X` and `Y`.
#[derive(Clone, Debug)]
pub struct FiniteWeylElem {
    pub index: usize,
    /// Action on `X`.
    pub action: IntMatrix,
    /// Action on `Y` (contragredient).
    pub coaction: IntMatrix,
    /// Canonical reduced word in simple-reflection indices.
    pub word: Vec<usize>,
    /// `perm[j]` is the index of `w(α_j)` in `R0`.
    pub perm: Vec<u32>,
    pub length: usize,
}

impl PartialEq for FiniteWeylElem {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}

impl Eq for FiniteWeylElem {}

/// `W0` enumerated, with lookup tables.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    elems: Vec<FiniteWeylElem>,
    lookup: HashMap<SmallVec<[u32; 8]>, usize>,
    table: Option<Vec<u32>>,
    inverse: Vec<usize>,
    longest: usize,
    nsimple: usize,
    npos: usize,
}

fn simple_matrices(d: &RootDatum) -> (Vec<IntMatrix>, Vec<IntMatrix>) {
    let n = d.rank();
    let p = d.pairing_matrix();
    let mut on_x = Vec::new();
    let mut on_y = Vec::new();
    for (a, c) in d.simple_roots().iter().zip(d.simple_coroots()) {
        // (x, α∨) = Σ_c x_c (P α∨)_c
        let pc = p.apply(c);
        // (α, y) = Σ_c (αᵀ P)_c y_c
        let ap = p.transpose().apply(a);
        let mut mx = IntMatrix::identity(n);
        let mut my = IntMatrix::identity(n);
        for r in 0..n {
            for col in 0..n {
                mx.data[r * n + col] -= a[r] * pc[col];
                my.data[r * n + col] -= c[r] * ap[col];
            }
        }
        on_x.push(mx);
        on_y.push(my);
    }
    (on_x, on_y)
}

impl WeylGroup {
    pub fn new(d: &RootDatum) -> Result<WeylGroup> {
        WeylGroup::with_bound(d, W0_BOUND)
    }

    pub fn with_bound(d: &RootDatum, bound: usize) -> Result<WeylGroup> {
        let n = d.rank();
        let nsimple = d.simple_roots().len();
        let npos = d.num_positive();
        let (sx, sy) = simple_matrices(d);
        let perm_of = |m: &IntMatrix| -> Vec<u32> {
            d.roots()
                .iter()
                .map(|r| d.root_index(&m.apply(r)).expect("W0 permutes R0") as u32)
                .collect()
        };
        let key_of = |perm: &[u32]| -> SmallVec<[u32; 8]> { perm[..nsimple].iter().copied().collect() };

        let mut elems: Vec<FiniteWeylElem> = Vec::new();
        let mut lookup = HashMap::new();
        let id = IntMatrix::identity(n);
        let perm = perm_of(&id);
        lookup.insert(key_of(&perm), 0);
        elems.push(FiniteWeylElem {
            index: 0,
            action: id.clone(),
            coaction: id,
            word: Vec::new(),
            perm,
            length: 0,
        });
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in 0..nsimple {
                let action = elems[i].action.mul(&sx[s]);
                let perm = perm_of(&action);
                let key = key_of(&perm);
                if lookup.contains_key(&key) {
                    continue;
                }
                if elems.len() >= bound {
                    return Err(HeckeError::EnumerationBound(bound));
                }
                let coaction = elems[i].coaction.mul(&sy[s]);
                let idx = elems.len();
                let length = perm[..npos].iter().filter(|&&j| j as usize >= npos).count();
                lookup.insert(key, idx);
                elems.push(FiniteWeylElem {
                    index: idx,
                    action,
                    coaction,
                    word: Vec::new(),
                    perm,
                    length,
                });
                queue.push_back(idx);
            }
        }
        let mut g = WeylGroup {
            elems,
            lookup,
            table: None,
            inverse: Vec::new(),
            longest: 0,
            nsimple,
            npos,
        };
        let size = g.elems.len();
        if size <= TABLE_BOUND {
            let mut t = vec![0u32; size * size];
            for u in 0..size {
                for v in 0..size {
                    t[u * size + v] = g.mul_slow(u, v) as u32;
                }
            }
            g.table = Some(t);
        }
        g.inverse = (0..size)
            .map(|u| {
                let mut inv = vec![0u32; g.elems[u].perm.len()];
                for (j, &k) in g.elems[u].perm.iter().enumerate() {
                    inv[k as usize] = j as u32;
                }
                g.lookup[&key_of(&inv)]
            })
            .collect();
        for u in 0..size {
            let word = g.greedy_word(u);
            g.elems[u].word = word;
        }
        g.longest = (0..size).max_by_key(|&u| g.elems[u].length).unwrap_or(0);
        Ok(g)
    }

    fn mul_slow(&self, u: usize, v: usize) -> usize {
        let pu = &self.elems[u].perm;
        let pv = &self.elems[v].perm;
        let key: SmallVec<[u32; 8]> = (0..self.nsimple).map(|j| pu[pv[j] as usize]).collect();
        self.lookup[&key]
    }

    /// Lowest simple right descent: `w(α_i) < 0`.
    pub fn right_descent(&self, w: usize) -> Option<usize> {
        (0..self.nsimple).find(|&i| self.elems[w].perm[i] as usize >= self.npos)
    }

    fn greedy_word(&self, w: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w;
        while let Some(i) = self.right_descent(cur) {
            word.push(i);
            cur = self.mul(cur, self.simple(i));
        }
        word.reverse();
        word
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[FiniteWeylElem] {
        &self.elems
    }

    pub fn elem(&self, w: usize) -> &FiniteWeylElem {
        &self.elems[w]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of the simple reflection `s_i` (BFS puts it at `i + 1`).
    pub fn simple(&self, i: usize) -> usize {
        i + 1
    }

    pub fn num_simple(&self) -> usize {
        self.nsimple
    }

    #[inline]
    pub fn mul(&self, u: usize, v: usize) -> usize {
        match &self.table {
            Some(t) => t[u * self.elems.len() + v] as usize,
            None => self.mul_slow(u, v),
        }
    }

    #[inline]
    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w]
    }

    pub fn longest(&self) -> usize {
        self.longest
    }

    pub fn length(&self, w: usize) -> usize {
        self.elems[w].length
    }

    pub fn act(&self, w: usize, x: &[i64]) -> Vector {
        self.elems[w].action.apply(x)
    }

    pub fn coact(&self, w: usize, y: &[i64]) -> Vector {
        self.elems[w].coaction.apply(y)
    }

    /// Index of `w(α_j)`; also of `w(α_j∨)`.
    #[inline]
    pub fn act_root(&self, w: usize, j: usize) -> usize {
        self.elems[w].perm[j] as usize
    }

    /// Element with the given word.
    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &i| self.mul(acc, self.simple(i)))
    }

    /// Reflection `s_α` for the root of index `j`.
    pub fn reflection(&self, d: &RootDatum, j: usize) -> usize {
        // s_{wα_i} = w s_i w⁻¹ for any w mapping α_i to α.
        for w in 0..self.order() {
            for i in 0..self.nsimple {
                if self.act_root(w, i) == j {
                    return self.mul(self.mul(w, self.simple(i)), self.inverse(w));
                }
            }
        }
        let _ = d;
        unreachable!("every root is W0-conjugate to a simple root")
    }

    /// `(W_x, W^x, w_x, w^x)` for dominant `x`.
    pub fn coset_data(&self, d: &RootDatum, x: &[i64]) -> Result<CosetData> {
        if !d.is_dominant(x) {
            return Err(HeckeError::NotDominant(x.to_vec()));
        }
        let walls: Vec<usize> = (0..self.nsimple)
            .filter(|&i| d.pair(x, &d.simple_coroots()[i]) == 0)
            .collect();
        let stabilizer: Vec<usize> = (0..self.order())
            .filter(|&w| self.act(w, x).as_slice() == x)
            .collect();
        let reps: Vec<usize> = (0..self.order())
            .filter(|&u| walls.iter().all(|&i| self.act_root(u, i) < self.npos))
            .collect();
        let longest_stab = *stabilizer.iter().max_by_key(|&&w| self.length(w)).unwrap();
        let longest_rep = self.mul(self.longest, self.inverse(longest_stab));
        Ok(CosetData { stabilizer, representatives: reps, longest_stabilizer: longest_stab, longest_rep })
    }

    /// `W0`-orbit of `x`, sorted and deduplicated.
    pub fn orbit(&self, x: &[i64]) -> Vec<Vector> {
        let mut v: Vec<Vector> = (0..self.order()).map(|w| self.act(w, x)).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Stabilizer and coset data of a dominant vector.
#[derive(Clone, Debug)]
pub struct CosetData {
    /// `W_x`
    pub stabilizer: Vec<usize>,
    /// `W^x`, shortest representatives of `W0 / W_x`.
    pub representatives: Vec<usize>,
    /// `w_x`
    pub longest_stabilizer: usize,
    /// `w^x` with `w0 = w^x w_x`.
    pub longest_rep: usize,
}

/// `w·t_x` with `w` an index into [`WeylGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeylElem {
    pub w: u32,
    pub x: Vector,
}

impl AffineWeylElem {
    pub fn new(w: usize, x: Vector) -> Self {
        AffineWeylElem { w: w as u32, x }
    }

    pub fn finite(&self) -> usize {
        self.w as usize
    }
}

/// Affine root `(α∨, k)`, the function `x ↦ (x, α∨) + k`; `coroot` indexes
/// `R0∨`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub coroot: usize,
    pub k: i64,
}

/// Serialized form of an affine Weyl element.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AffineWeylJson {
    pub word: Vec<usize>,
    pub translation: Vec<i64>,
}

/// The extended affine Weyl group of a root datum.
#[derive(Debug)]
pub struct AffineWeylGroup {
    datum: Arc<RootDatum>,
    w0: WeylGroup,
    /// `F`: simple affine roots `(α_i∨, 0)` first, then `(α∨, 1)` for the
    /// minimal coroots.
    fundamental: Vec<AffineRoot>,
    /// Reflections `s_a` for `a ∈ F`.
    reflections: Vec<AffineWeylElem>,
    /// Root index of `α` for each affine simple root (its `α∨`).
    fundamental_roots: Vec<usize>,
}

impl fmt::Display for AffineWeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({}), |W0| = {}", self.datum.name(), self.w0.order())
    }
}

impl AffineWeylGroup {
    pub fn new(datum: Arc<RootDatum>) -> Result<AffineWeylGroup> {
        let w0 = WeylGroup::new(&datum)?;
        let mut fundamental: Vec<AffineRoot> =
            (0..datum.simple_roots().len()).map(|i| AffineRoot { coroot: i, k: 0 }).collect();
        for j in datum.minimal_coroots() {
            fundamental.push(AffineRoot { coroot: j, k: 1 });
        }
        let mut g = AffineWeylGroup {
            datum,
            w0,
            fundamental: fundamental.clone(),
            reflections: Vec::new(),
            fundamental_roots: Vec::new(),
        };
        g.fundamental_roots = fundamental.iter().map(|a| a.coroot).collect();
        g.reflections = fundamental.iter().map(|&a| g.affine_reflection(a)).collect();
        Ok(g)
    }

    pub fn from_datum(datum: RootDatum) -> Result<AffineWeylGroup> {
        AffineWeylGroup::new(Arc::new(datum))
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn datum_arc(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn finite(&self) -> &WeylGroup {
        &self.w0
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn fundamental(&self) -> &[AffineRoot] {
        &self.fundamental
    }

    /// `s_a` for the `i`-th element of `F`.
    pub fn simple_reflection(&self, i: usize) -> &AffineWeylElem {
        &self.reflections[i]
    }

    pub fn identity(&self) -> AffineWeylElem {
        AffineWeylElem::new(0, lattice::zero(self.rank()))
    }

    pub fn translation(&self, x: &[i64]) -> AffineWeylElem {
        AffineWeylElem::new(0, x.iter().copied().collect())
    }

    pub fn from_finite(&self, w: usize) -> AffineWeylElem {
        AffineWeylElem::new(w, lattice::zero(self.rank()))
    }

    /// `s_a = s_α t_{kα}` for `a = (α∨, k)`.
    pub fn affine_reflection(&self, a: AffineRoot) -> AffineWeylElem {
        let alpha = &self.datum.roots()[a.coroot];
        let s = self.w0.reflection(&self.datum, a.coroot);
        AffineWeylElem::new(s, lattice::scale(a.k, alpha))
    }

    pub fn check(&self, g: &AffineWeylElem) -> Result<()> {
        if g.x.len() != self.rank() || g.finite() >= self.w0.order() {
            return Err(HeckeError::ForeignElement(format!("{g:?}")));
        }
        Ok(())
    }

    /// `w t_x · w′ t_{x′} = ww′ t_{w′⁻¹x + x′}`
    pub fn mul(&self, g: &AffineWeylElem, h: &AffineWeylElem) -> AffineWeylElem {
        let w = self.w0.mul(g.finite(), h.finite());
        let moved = self.w0.act(self.w0.inverse(h.finite()), &g.x);
        AffineWeylElem::new(w, lattice::add(&moved, &h.x))
    }

    /// Checked multiplication.
    pub fn multiply(&self, g: &AffineWeylElem, h: &AffineWeylElem) -> Result<AffineWeylElem> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(g, h))
    }

    /// `(w t_x)⁻¹ = w⁻¹ t_{−wx}`
    pub fn inverse(&self, g: &AffineWeylElem) -> AffineWeylElem {
        let w = g.finite();
        AffineWeylElem::new(self.w0.inverse(w), lattice::neg(&self.w0.act(w, &g.x)))
    }

    /// `w t_x (p) = w(p + x)`
    pub fn act_point(&self, g: &AffineWeylElem, p: &[i64]) -> Vector {
        self.w0.act(g.finite(), &lattice::add(p, &g.x))
    }

    /// `w t_x (α∨, k) = (wα∨, k − (x, α∨))`
    pub fn act_root(&self, g: &AffineWeylElem, a: AffineRoot) -> AffineRoot {
        let c = &self.datum.coroots()[a.coroot];
        AffineRoot {
            coroot: self.w0.act_root(g.finite(), a.coroot),
            k: a.k - self.datum.pair(&g.x, c),
        }
    }

    pub fn is_positive(&self, a: AffineRoot) -> bool {
        a.k > 0 || (a.k == 0 && self.datum.is_positive_index(a.coroot))
    }

    pub fn coroot_vector(&self, a: AffineRoot) -> &Vector {
        &self.datum.coroots()[a.coroot]
    }

    /// Value of the affine function `a` at `p`.
    pub fn eval_root(&self, a: AffineRoot, p: &[i64]) -> i64 {
        self.datum.pair(p, self.coroot_vector(a)) + a.k
    }

    /// Length by counting positive affine roots made negative.
    pub fn length(&self, g: &AffineWeylElem) -> usize {
        let d = &self.datum;
        let npos = d.num_positive();
        let mut total = 0i64;
        for j in 0..d.coroots().len() {
            let m = d.pair(&g.x, &d.coroots()[j]);
            let k_min = if j < npos { 0 } else { 1 };
            let image_pos = self.w0.act_root(g.finite(), j) < npos;
            let k_max = m - i64::from(image_pos);
            if k_max >= k_min {
                total += k_max - k_min + 1;
            }
        }
        total as usize
    }

    /// Length from the closed sum
    /// `Σ_{wα<0} |(x, α∨) + 1| + Σ_{wα>0} |(x, α∨)|` over `α ∈ R0,+`.
    pub fn length_by_sum(&self, g: &AffineWeylElem) -> usize {
        let d = &self.datum;
        let npos = d.num_positive();
        let mut total = 0i64;
        for j in 0..npos {
            let m = d.pair(&g.x, &d.coroots()[j]);
            if self.w0.act_root(g.finite(), j) >= npos {
                total += (m + 1).abs();
            } else {
                total += m.abs();
            }
        }
        total as usize
    }

    /// All positive affine roots sent to negative ones (the inversion set).
    pub fn inversions(&self, g: &AffineWeylElem) -> Vec<AffineRoot> {
        let d = &self.datum;
        let npos = d.num_positive();
        let mut out = Vec::new();
        for j in 0..d.coroots().len() {
            let m = d.pair(&g.x, &d.coroots()[j]);
            let k_min = if j < npos { 0 } else { 1 };
            let image_pos = self.w0.act_root(g.finite(), j) < npos;
            let k_max = m - i64::from(image_pos);
            for k in k_min..=k_max {
                out.push(AffineRoot { coroot: j, k });
            }
        }
        out
    }

    /// `l(g s_a) = l(g) + 1` iff `g(a) > 0`.
    pub fn right_ascent(&self, g: &AffineWeylElem, i: usize) -> bool {
        self.is_positive(self.act_root(g, self.fundamental[i]))
    }

    /// Lowest-indexed `a ∈ F` with `g⁻¹(a) < 0`.
    pub fn descent(&self, g: &AffineWeylElem) -> Option<AffineRoot> {
        let inv = self.inverse(g);
        self.fundamental.iter().copied().find(|&a| !self.is_positive(self.act_root(&inv, a)))
    }

    /// Lowest-indexed `i` with `g(a_i) < 0`.
    pub fn right_descent(&self, g: &AffineWeylElem) -> Option<usize> {
        (0..self.fundamental.len()).find(|&i| !self.right_ascent(g, i))
    }

    /// `g = ω·s_{a_1}⋯s_{a_k}` with `l(ω) = 0` and `k = l(g)`. The word is
    /// returned as indices into `F`.
    pub fn factor_extended(&self, g: &AffineWeylElem) -> (AffineWeylElem, Vec<usize>) {
        let mut cur = g.clone();
        let mut word = Vec::new();
        while let Some(i) = self.right_descent(&cur) {
            word.push(i);
            cur = self.mul(&cur, &self.reflections[i]);
        }
        word.reverse();
        (cur, word)
    }

    pub fn from_factorization(&self, omega: &AffineWeylElem, word: &[usize]) -> AffineWeylElem {
        word.iter().fold(omega.clone(), |acc, &i| self.mul(&acc, &self.reflections[i]))
    }

    /// For `ω ∈ Ω`, the permutation of `F` induced by `a ↦ ω(a)`.
    pub fn omega_permutation(&self, omega: &AffineWeylElem) -> Option<Vec<usize>> {
        self.fundamental
            .iter()
            .map(|&a| {
                let b = self.act_root(omega, a);
                self.fundamental.iter().position(|&f| f == b)
            })
            .collect()
    }

    /// Index in `F` of `g(a_i)` if that lands in `F`.
    pub fn fundamental_index(&self, a: AffineRoot) -> Option<usize> {
        self.fundamental.iter().position(|&f| f == a)
    }

    pub fn to_json(&self, g: &AffineWeylElem) -> AffineWeylJson {
        AffineWeylJson {
            word: self.w0.elem(g.finite()).word.clone(),
            translation: g.x.to_vec(),
        }
    }

    pub fn from_json(&self, j: &AffineWeylJson) -> Result<AffineWeylElem> {
        if j.translation.len() != self.rank() {
            return Err(HeckeError::DimensionMismatch {
                expected: self.rank(),
                found: j.translation.len(),
            });
        }
        if let Some(&i) = j.word.iter().find(|&&i| i >= self.w0.num_simple()) {
            return Err(HeckeError::InvalidInput(format!("no simple reflection {i}")));
        }
        Ok(AffineWeylElem::new(self.w0.from_word(&j.word), j.translation.iter().copied().collect()))
    }

    /// Human-readable `s1s2·t(1,0)` form.
    pub fn display(&self, g: &AffineWeylElem) -> String {
        let word = &self.w0.elem(g.finite()).word;
        let mut s = String::new();
        for i in word {
            s.push_str(&format!("s{}", i + 1));
        }
        if !lattice::is_zero(&g.x) || s.is_empty() {
            if !s.is_empty() {
                s.push('·');
            }
            s.push_str(&format!("t{:?}", g.x.as_slice()));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Preset;

    fn group(p: Preset) -> AffineWeylGroup {
        AffineWeylGroup::from_datum(RootDatum::preset(p).unwrap()).unwrap()
    }

    fn v(x: &[i64]) -> Vector {
        x.iter().copied().collect()
    }

    #[test]
    fn weyl_orders() {
        for (p, n) in [
            (Preset::A1Weight, 2),
            (Preset::A2, 6),
            (Preset::B2, 8),
            (Preset::C2, 8),
            (Preset::G2, 12),
            (Preset::BnCn(3), 48),
            (Preset::GLn(4), 24),
        ] {
            let g = group(p);
            assert_eq!(g.finite().order(), n, "{}", p.name());
            let w0 = g.finite().longest();
            assert_eq!(g.finite().length(w0), g.datum().num_positive());
            assert_eq!(g.finite().mul(w0, w0), 0);
        }
    }

    #[test]
    fn words_are_reduced_and_reassemble() {
        let g = group(Preset::G2);
        let w = g.finite();
        for e in w.elements() {
            assert_eq!(e.word.len(), e.length);
            assert_eq!(w.from_word(&e.word), e.index);
        }
    }

    #[test]
    fn omega_squared_is_identity_in_a1_weight() {
        let g = group(Preset::A1Weight);
        let s = g.from_finite(1);
        let t1 = g.translation(&[1]);
        let omega = g.mul(&t1, &s);
        assert_eq!(omega, AffineWeylElem::new(1, v(&[-1])));
        assert_eq!(g.mul(&omega, &omega), g.identity());
        assert_eq!(g.length(&omega), 0);
    }

    #[test]
    fn length_examples() {
        let g = group(Preset::A1Weight);
        assert_eq!(g.length(&g.identity()), 0);
        assert_eq!(g.length(&g.translation(&[1])), 1);
        assert_eq!(g.length(&g.translation(&[-2])), 2);
        let g = group(Preset::A2);
        assert_eq!(g.length(&g.from_finite(g.finite().longest())), 3);
    }

    #[test]
    fn t1_factors_through_omega() {
        let g = group(Preset::A1Weight);
        let t1 = g.translation(&[1]);
        let (omega, word) = g.factor_extended(&t1);
        assert_eq!(word, vec![0]);
        let s = g.from_finite(1);
        assert_eq!(omega, g.mul(&t1, &s));
    }

    #[test]
    fn descent_shortens_t_minus_two() {
        let g = group(Preset::A1Weight);
        let mut cur = g.translation(&[-2]);
        let mut len = g.length(&cur);
        assert_eq!(len, 2);
        while let Some(a) = g.descent(&cur) {
            cur = g.mul(&g.affine_reflection(a), &cur);
            let l = g.length(&cur);
            assert_eq!(l + 1, len);
            len = l;
        }
        assert_eq!(len, 0);
    }

    #[test]
    fn fundamental_reflections_have_length_one() {
        for p in [Preset::A1Root, Preset::A2, Preset::B2, Preset::G2, Preset::BnCn(2), Preset::GLn(3)] {
            let g = group(p);
            for i in 0..g.fundamental().len() {
                let s = g.simple_reflection(i);
                assert_eq!(g.length(s), 1, "{}", p.name());
                assert_eq!(g.descent(s), Some(g.fundamental()[i]));
                assert_eq!(g.mul(s, s), g.identity());
            }
        }
    }

    #[test]
    fn coset_data_on_a2_wall() {
        let g = group(Preset::A2);
        let w = g.finite();
        let d = g.datum();
        // ω2 = (0, 1) lies on the α1 wall.
        let c = w.coset_data(d, &[0, 1]).unwrap();
        assert_eq!(c.stabilizer.len(), 2);
        assert_eq!(c.representatives.len(), 3);
        assert_eq!(w.mul(c.longest_rep, c.longest_stabilizer), w.longest());
        assert_eq!(
            w.length(c.longest_rep) + w.length(c.longest_stabilizer),
            w.length(w.longest())
        );
        let c = w.coset_data(d, &[1, 1]).unwrap();
        assert_eq!(c.stabilizer, vec![0]);
        let c = w.coset_data(d, &[0, 0]).unwrap();
        assert_eq!(c.representatives, vec![0]);
        assert!(w.coset_data(d, &[-1, 0]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = group(Preset::B2);
        let e = AffineWeylElem::new(5, v(&[2, -1]));
        let j = g.to_json(&e);
        assert_eq!(g.from_json(&j).unwrap(), e);
    }
}
