//! Values of the trace on the commutative subalgebra: c-functions, the
//! rank-one coefficients `d(α; k)`, the weighted partition formula for
//! `τ(θ_x)`, and a direct computation of `τ(θ_x)` in the `T` basis.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::coeffring::{LaurentPoly, Monomial};
use crate::error::{HeckeError, Result};
use crate::hecke::{HeckeAlgebra, HeckeElem};
use crate::lattice::{self, CoordinateSystem, Vector};
use crate::rootdata::RootDatum;
use crate::scalar::Scalar;
use crate::weyl::{AffineWeylGroup, WeylGroup};

/// A character `t ∈ T = Hom(X, C^×)`, stored by its values on the standard
/// basis of `X`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint<S> {
    images: Vec<S>,
}

impl<S: Scalar> TorusPoint<S> {
    pub fn new(images: Vec<S>) -> Result<TorusPoint<S>> {
        if images.iter().any(|v| v.is_negligible()) {
            return Err(HeckeError::InvalidInput("torus coordinates must be nonzero".into()));
        }
        Ok(TorusPoint { images })
    }

    pub fn images(&self) -> &[S] {
        &self.images
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// `t(x)`
    pub fn eval(&self, x: &[i64]) -> S {
        let mut acc = S::one();
        for (v, &e) in self.images.iter().zip(x) {
            if e != 0 {
                acc = acc * v.powi(e);
            }
        }
        acc
    }

    /// `t⁻¹`
    pub fn inverse(&self) -> TorusPoint<S> {
        TorusPoint { images: self.images.iter().map(|v| S::one() / v.clone()).collect() }
    }

    /// `t̄`
    pub fn conj(&self) -> TorusPoint<S> {
        TorusPoint { images: self.images.iter().map(|v| v.conj()).collect() }
    }

    pub fn mul(&self, o: &TorusPoint<S>) -> TorusPoint<S> {
        TorusPoint {
            images: self.images.iter().zip(&o.images).map(|(a, b)| a.clone() * b.clone()).collect(),
        }
    }

    /// `(wt)(x) = t(w⁻¹x)`
    pub fn act(&self, w0: &WeylGroup, w: usize) -> TorusPoint<S> {
        let winv = w0.inverse(w);
        let n = self.rank();
        TorusPoint { images: (0..n).map(|j| self.eval(&w0.act(winv, &lattice::unit(n, j)))).collect() }
    }

    fn close(&self, o: &TorusPoint<S>) -> bool {
        self.images.iter().zip(&o.images).all(|(a, b)| (a.clone() - b.clone()).is_negligible())
    }

    /// `wt ≠ t` for every `w ≠ e`.
    pub fn is_regular(&self, w0: &WeylGroup) -> bool {
        (1..w0.order()).all(|w| !self.close(&self.act(w0, w)))
    }
}

impl TorusPoint<Complex64> {
    /// The point with prescribed values on the simple roots, when these span
    /// `X ⊗ Q`. Fractional powers use the principal branch.
    pub fn from_root_values(d: &RootDatum, vals: &[Complex64]) -> Result<TorusPoint<Complex64>> {
        let n = d.rank();
        if d.simple_roots().len() != n || vals.len() != n {
            return Err(HeckeError::InvalidInput(
                "simple roots must form a basis of X ⊗ Q".into(),
            ));
        }
        let cs = CoordinateSystem::new(d.simple_roots())
            .ok_or_else(|| HeckeError::InvalidInput("simple roots are dependent".into()))?;
        let mut images = Vec::with_capacity(n);
        for j in 0..n {
            let (num, den) = cs
                .rational_coords(&lattice::unit(n, j))
                .ok_or_else(|| HeckeError::InvalidInput("simple roots are dependent".into()))?;
            let mut v = Complex64::new(1.0, 0.0);
            for (c, a) in num.iter().zip(vals) {
                v *= a.powf(*c as f64 / den as f64);
            }
            images.push(v);
        }
        TorusPoint::new(images)
    }

    pub fn from_rational(t: &TorusPoint<BigRational>) -> TorusPoint<Complex64> {
        TorusPoint { images: t.images.iter().map(|v| v.to_complex()).collect() }
    }
}

/// Labels attached to a positive root of `R_nr`.
#[derive(Clone, Debug)]
pub struct RootLabel {
    pub root: Vector,
    /// Coordinates in the simple roots.
    pub coords: Vec<i64>,
    /// `q_{α∨}`
    pub q: Monomial,
    /// `q_{α∨/2}^{1/2}`, trivial unless `2α ∈ R_nr`.
    pub q_half_sqrt: Monomial,
    /// Index in `R0` of `α` or of `α/2`.
    pub base: usize,
    /// `true` for the added roots `2α`.
    pub doubled: bool,
}

/// Outcome of a truncated generating-function comparison.
#[derive(Clone, Debug)]
pub struct GeneratingCheck<S> {
    pub lhs: S,
    pub rhs: S,
    pub gap: f64,
}

/// Trace formulas for one Hecke algebra.
#[derive(Clone, Debug)]
pub struct TraceGen {
    alg: HeckeAlgebra,
    roots: Vec<RootLabel>,
}

impl TraceGen {
    pub fn new(alg: &HeckeAlgebra) -> Result<TraceGen> {
        let g = alg.group();
        let d = g.datum();
        let l = alg.labels();
        let mut roots = Vec::new();
        for &i in &d.derived().nr_positive {
            let r = &d.derived().nr[i];
            let coords = d.root_lattice_coords(&r.root).ok_or_else(|| {
                HeckeError::InvalidInput(format!("root {:?} outside the root lattice", r.root))
            })?;
            let (q, q_half_sqrt) = if r.doubled {
                // (2α)∨ = α∨/2, whose half is not a coroot
                (l.q_half(r.base), Monomial::one())
            } else {
                (l.q_coroot(r.base), l.q_half_sqrt(r.base))
            };
            roots.push(RootLabel { root: r.root.clone(), coords, q, q_half_sqrt, base: r.base, doubled: r.doubled });
        }
        Ok(TraceGen { alg: alg.clone(), roots })
    }

    pub fn algebra(&self) -> &HeckeAlgebra {
        &self.alg
    }

    fn group(&self) -> &AffineWeylGroup {
        self.alg.group()
    }

    /// Positive roots of `R_nr` in the fixed enumeration order.
    pub fn positive_roots(&self) -> &[RootLabel] {
        &self.roots
    }

    /// Index into [`TraceGen::positive_roots`] of a root vector.
    pub fn root_position(&self, alpha: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.root.as_slice() == alpha)
    }

    /// `q(w0) = ∏_{α ∈ R_nr,+} q_{α∨}`
    pub fn q_w0(&self) -> Monomial {
        let g = self.group();
        self.alg.q(&g.from_finite(g.finite().longest()))
    }

    /// `c(α, t) = (1 − q_{α∨/2}^{−1/2} q_{α∨}^{−1} t(−α)) / (1 − q_{α∨/2}^{−1/2} t(−α))`
    /// for the `i`-th positive root of `R_nr`.
    pub fn c_factor<S: Scalar>(&self, i: usize, t: &TorusPoint<S>, v: &[S]) -> Result<S> {
        let r = &self.roots[i];
        let a = LaurentPoly::mono(r.q_half_sqrt.inv()).evaluate(v)?;
        let b = LaurentPoly::mono(r.q_half_sqrt.mul(&r.q).inv()).evaluate(v)?;
        let u = t.eval(&lattice::neg(&r.root));
        let den = S::one() - a * u.clone();
        if den.is_negligible() {
            return Err(HeckeError::Pole(format!("c({:?}, t)", r.root)));
        }
        Ok((S::one() - b * u) / den)
    }

    /// `c0(α, t) = c(α, t)c(2α, t)` from its closed form, `α ∈ R0,+` of index `j`.
    pub fn c0<S: Scalar>(&self, j: usize, t: &TorusPoint<S>, v: &[S]) -> Result<S> {
        let d = self.group().datum();
        let l = self.alg.labels();
        let alpha = &d.roots()[j];
        let u = t.eval(&lattice::neg(alpha));
        let q = LaurentPoly::mono(l.q_coroot(j)).evaluate(v)?;
        let one = S::one();
        if l.is_doubled(j) {
            let h = LaurentPoly::mono(l.q_half_sqrt(j).inv()).evaluate(v)?;
            let den = one.clone() - u.clone() * u.clone();
            if den.is_negligible() {
                return Err(HeckeError::Pole(format!("c0({alpha:?}, t)")));
            }
            let num = (one.clone() + h.clone() * u.clone()) * (one - h * u / q);
            Ok(num / den)
        } else {
            let den = one.clone() - u.clone();
            if den.is_negligible() {
                return Err(HeckeError::Pole(format!("c0({alpha:?}, t)")));
            }
            Ok((one - u / q) / den)
        }
    }

    /// `c1(β, t) = c(β, t)c(β/2, t)` for `β ∈ R1,+`.
    pub fn c1<S: Scalar>(&self, i: usize, t: &TorusPoint<S>, v: &[S]) -> Result<S> {
        let r = &self.roots[i];
        let mut out = self.c_factor(i, t, v)?;
        let mut half = r.root.clone();
        if half.iter().all(|c| c % 2 == 0) {
            half.iter_mut().for_each(|c| *c /= 2);
            if let Some(k) = self.root_position(&half) {
                out = out * self.c_factor(k, t, v)?;
            }
        }
        Ok(out)
    }

    /// `c(t) = ∏_{α ∈ R_nr,+} c(α, t)`
    pub fn c_full<S: Scalar>(&self, t: &TorusPoint<S>, v: &[S]) -> Result<S> {
        let mut acc = S::one();
        for i in 0..self.roots.len() {
            acc = acc * self.c_factor(i, t, v)?;
        }
        Ok(acc)
    }

    /// `c(t)` as products over `R_nr,+`, `R0,+` and `R1,+`.
    pub fn c_groupings<S: Scalar>(&self, t: &TorusPoint<S>, v: &[S]) -> Result<[S; 3]> {
        let d = self.group().datum();
        let nr = self.c_full(t, v)?;
        let mut r0 = S::one();
        for j in 0..d.num_positive() {
            r0 = r0 * self.c0(j, t, v)?;
        }
        let mut r1 = S::one();
        for (i, r) in self.roots.iter().enumerate() {
            let mut twice = r.root.clone();
            twice.iter_mut().for_each(|c| *c *= 2);
            if self.root_position(&twice).is_none() {
                r1 = r1 * self.c1(i, t, v)?;
            }
        }
        Ok([nr, r0, r1])
    }

    /// `d(α; k)` for the `i`-th positive root of `R_nr`.
    pub fn d_coeff(&self, i: usize, k: u32) -> Result<LaurentPoly> {
        if k == 0 {
            return Ok(LaurentPoly::one());
        }
        let r = &self.roots[i];
        // q_{α∨/2} = 1 on the doubled root: the factor c(2β) is trivial
        if r.q.is_one() {
            return Ok(LaurentPoly::zero());
        }
        let one = LaurentPoly::one();
        let q = LaurentPoly::mono(r.q.clone());
        let qh = LaurentPoly::mono(r.q_half_sqrt.pow(2));
        let b = r.q_half_sqrt.mul(&r.q);
        let num = &(&(&q - &one) * &(&(&qh * &q) - &one))
            * &(&LaurentPoly::mono(b.pow(k as i32)) - &LaurentPoly::mono(b.pow(-(k as i32))));
        let den = &(&qh * &q.pow(2)) - &one;
        num.exact_div(&den)
    }

    /// Both sides of the rank-one identity
    /// `Σ_k d(α; k)z^k = (q_{α∨}c(α, z)c(α, z⁻¹))⁻¹` to order `n`: the closed
    /// form coefficients and the geometric-series expansion.
    pub fn rank_one_series(&self, i: usize, n: usize) -> Result<(Vec<LaurentPoly>, Vec<LaurentPoly>)> {
        let lhs = (0..=n).map(|k| self.d_coeff(i, k as u32)).collect::<Result<Vec<_>>>()?;
        let r = &self.roots[i];
        // With a = q_{α∨/2}^{−1/2} and b = a/q_{α∨}, the right side is
        // (1 − z/a)(1 − az) / ((1 − z/b)(1 − bz)).
        let a = r.q_half_sqrt.inv();
        let b = a.mul(&r.q.inv());
        let lin = |m: &Monomial| -> Vec<LaurentPoly> {
            let mut s = vec![LaurentPoly::zero(); n + 1];
            s[0] = LaurentPoly::one();
            if n >= 1 {
                s[1] = -LaurentPoly::mono(m.clone());
            }
            s
        };
        let geo = |m: &Monomial| -> Vec<LaurentPoly> {
            (0..=n).map(|k| LaurentPoly::mono(m.pow(k as i32))).collect()
        };
        let mut unit = vec![LaurentPoly::zero(); n + 1];
        unit[0] = LaurentPoly::one();
        let rhs = [lin(&a.inv()), lin(&a), geo(&b.inv()), geo(&b)]
            .iter()
            .fold(unit, |acc, s| series_mul(&acc, s));
        Ok((lhs, rhs))
    }

    /// All partitions of `κ` over `R_nr,+`, as multiplicity vectors in the
    /// order of [`TraceGen::positive_roots`].
    pub fn partitions(&self, kappa: &[i64]) -> Vec<Vec<u32>> {
        let d = self.group().datum();
        let Some(target) = d.root_lattice_coords(kappa) else { return Vec::new() };
        if target.iter().any(|&c| c < 0) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.roots.len()];
        self.partition_dfs(0, &mut target.clone(), &mut cur, &mut out);
        out
    }

    fn partition_dfs(&self, i: usize, rem: &mut Vec<i64>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem.iter().all(|&c| c == 0) {
            out.push(cur.clone());
            return;
        }
        if i == self.roots.len() {
            return;
        }
        let c = &self.roots[i].coords;
        let max = c
            .iter()
            .zip(rem.iter())
            .filter(|(a, _)| **a > 0)
            .map(|(a, r)| r / a)
            .min()
            .unwrap_or(0);
        for m in (0..=max).rev() {
            for (r, a) in rem.iter_mut().zip(c) {
                *r -= m * a;
            }
            cur[i] = m as u32;
            self.partition_dfs(i + 1, rem, cur, out);
            for (r, a) in rem.iter_mut().zip(c) {
                *r += m * a;
            }
        }
        cur[i] = 0;
    }

    /// `τ(θ_x) = Σ_π ∏_α d(α; π_α)` over the partitions of `−x`.
    pub fn trace_theta_partition(&self, x: &[i64]) -> Result<LaurentPoly> {
        let parts = self.partitions(&lattice::neg(x));
        let mut table: BTreeMap<(usize, u32), LaurentPoly> = BTreeMap::new();
        let mut acc = LaurentPoly::zero();
        for p in &parts {
            let mut term = LaurentPoly::one();
            for (i, &m) in p.iter().enumerate() {
                if m == 0 {
                    continue;
                }
                if let Entry::Vacant(e) = table.entry((i, m)) {
                    e.insert(self.d_coeff(i, m)?);
                }
                term = &term * &table[&(i, m)];
            }
            acc += &term;
        }
        Ok(acc)
    }

    /// `τ(θ_x)` from the `T` basis: with dominant `y, z` and `x = y − z`,
    /// `τ(θ_x) = δ(−y)^{1/2}δ(z)^{1/2} τ(T_{t_y}T_{t_z}⁻¹)`.
    pub fn trace_theta_direct(&self, x: &[i64]) -> Result<LaurentPoly> {
        let g = self.group();
        let (y, z) = g.datum().compact_decomposition(x);
        let l = self.alg.labels();
        let c = l.delta_sqrt(g, &y).inv().mul(&l.delta_sqrt(g, &z));
        let ty = HeckeElem::basis(g.translation(&y));
        let tau = self.alg.tau_letters(&ty, &self.alg.inverse_letters(&g.translation(&z)))?;
        Ok(tau.shift(&c))
    }

    /// `x ∈ Q_−` with `height(−x) ≤ radius`, ordered by height then `x`.
    pub fn negative_cone(&self, radius: i64) -> Vec<Vector> {
        let d = self.group().datum();
        let simple = d.simple_roots();
        let n = simple.len();
        let mut out: Vec<(i64, Vector)> = Vec::new();
        let mut coords = vec![0i64; n];
        loop {
            let h: i64 = coords.iter().sum();
            if h <= radius {
                let mut x = lattice::zero(d.rank());
                for (c, a) in coords.iter().zip(simple) {
                    x = lattice::sub(&x, &lattice::scale(*c, a));
                }
                out.push((h, x));
            }
            // odometer over coordinates with total ≤ radius
            let mut k = 0;
            while k < n {
                coords[k] += 1;
                if coords.iter().sum::<i64>() <= radius {
                    break;
                }
                coords[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        out.sort();
        out.into_iter().map(|(_, x)| x).collect()
    }

    /// `|t(α)| < δ^{−1/2}(α)` for every `α ∈ R0,+`.
    pub fn in_region<S: Scalar>(&self, t: &TorusPoint<S>, v: &[S]) -> Result<bool> {
        let g = self.group();
        let d = g.datum();
        let l = self.alg.labels();
        for a in d.positive_roots() {
            let bound = LaurentPoly::mono(l.delta_sqrt(g, a).inv()).evaluate(v)?.modulus();
            if t.eval(a).modulus() >= bound {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Partial sum `Σ_{x ∈ Q_−, height(−x) ≤ radius} τ(θ_x)t(−x)` against
    /// `1/(q(w0)c(t)c(t⁻¹))`.
    pub fn generating_check<S: Scalar>(
        &self,
        t: &TorusPoint<S>,
        v: &[S],
        radius: i64,
    ) -> Result<GeneratingCheck<S>> {
        if !self.in_region(t, v)? {
            return Err(HeckeError::OutsideRegion(format!("{:?}", t.images())));
        }
        let qw0 = LaurentPoly::mono(self.q_w0()).evaluate(v)?;
        let cc = self.c_full(t, v)? * self.c_full(&t.inverse(), v)?;
        let den = qw0 * cc;
        let rhs = den
            .checked_inv()
            .ok_or_else(|| HeckeError::Pole("c(t)c(t⁻¹) vanishes".into()))?;
        let pts = self.negative_cone(radius);
        let vals: Vec<Result<S>> = pts
            .par_iter()
            .map(|x| Ok(self.trace_theta_partition(x)?.evaluate(v)? * t.eval(&lattice::neg(x))))
            .collect();
        let mut lhs = S::zero();
        for val in vals {
            lhs = lhs + val?;
        }
        let gap = (lhs.clone() - rhs.clone()).modulus();
        Ok(GeneratingCheck { lhs, rhs, gap })
    }

    /// Nonzero `τ(θ_x)` for `x ∈ [−radius, radius]^rank`, ordered by height
    /// of `−x` then lexicographically.
    pub fn series(&self, radius: i64) -> Result<Vec<(Vector, LaurentPoly)>> {
        let d = self.group().datum();
        let mut pts: Vec<(i64, Vector)> = box_points(d.rank(), radius)
            .into_iter()
            .filter(|x| d.in_negative_cone(x))
            .map(|x| (d.height(&lattice::neg(&x)).unwrap_or(0), x))
            .collect();
        pts.sort();
        let vals: Vec<Result<(Vector, LaurentPoly)>> = pts
            .par_iter()
            .map(|(_, x)| Ok((x.clone(), self.trace_theta_partition(x)?)))
            .collect();
        let mut out = Vec::new();
        for r in vals {
            let (x, p) = r?;
            if !p.is_zero() {
                out.push((x, p));
            }
        }
        Ok(out)
    }
}

/// Product of truncated power series.
pub fn series_mul(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let n = a.len().min(b.len());
    let mut out = vec![LaurentPoly::zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n - i {
            out[i + j] += &(&a[i] * &b[j]);
        }
    }
    out
}

/// All points of `[−radius, radius]^rank`.
pub fn box_points(rank: usize, radius: i64) -> Vec<Vector> {
    let mut out = Vec::new();
    let mut v = vec![-radius; rank];
    loop {
        out.push(v.iter().copied().collect());
        let mut k = 0;
        while k < rank {
            v[k] += 1;
            if v[k] <= radius {
                break;
            }
            v[k] = -radius;
            k += 1;
        }
        if k == rank {
            break;
        }
    }
    out
}

/// Value `A + B√2` of a polynomial at `v = √2` for every variable.
pub fn eval_at_sqrt2(p: &LaurentPoly) -> (BigRational, BigRational) {
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    let two = BigRational::from_integer(BigInt::from(2));
    for (m, c) in p.terms() {
        let e: i64 = m.exps().iter().map(|&x| x as i64).sum();
        let (h, odd) = e.div_mod_floor(&2);
        let val = c * two.powi(h);
        if odd == 1 {
            b += val;
        } else {
            a += val;
        }
    }
    (a, b)
}

/// Exact sign test `A + B√2 > 0`.
pub fn positive_at_sqrt2(p: &LaurentPoly) -> bool {
    let (a, b) = eval_at_sqrt2(p);
    let two = BigRational::from_integer(BigInt::from(2));
    match (a.is_positive() || a.is_zero(), b.is_positive() || b.is_zero()) {
        (true, true) => !(a.is_zero() && b.is_zero()),
        (false, false) => false,
        // compare A² with 2B²
        (true, false) => &a * &a > &two * &b * &b,
        (false, true) => &two * &b * &b > &a * &a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Preset;
    use crate::scalar::rat;
    use std::sync::Arc;

    fn setup(p: Preset) -> TraceGen {
        let d = RootDatum::preset(p).unwrap();
        let g = Arc::new(AffineWeylGroup::from_datum(d).unwrap());
        TraceGen::new(&HeckeAlgebra::generic(g).unwrap()).unwrap()
    }

    fn q() -> LaurentPoly {
        LaurentPoly::mono(Monomial::var(0, 2))
    }

    /// `(q−1)(q^k − q^{−k})/(q+1)` in the single variable `v`.
    fn a1_closed(k: i32) -> LaurentPoly {
        let one = LaurentPoly::one();
        let qk = LaurentPoly::mono(Monomial::var(0, 2 * k));
        let qmk = LaurentPoly::mono(Monomial::var(0, -2 * k));
        (&(&q() - &one) * &(&qk - &qmk)).exact_div(&(&q() + &one)).unwrap()
    }

    #[test]
    fn d_examples() {
        let tg = setup(Preset::A1Weight);
        assert_eq!(tg.d_coeff(0, 0).unwrap(), LaurentPoly::one());
        let qi = LaurentPoly::mono(Monomial::var(0, -2));
        assert_eq!(tg.d_coeff(0, 1).unwrap(), &(&q() + &qi) - &LaurentPoly::from_int(2));
        for k in 1..6 {
            assert_eq!(tg.d_coeff(0, k).unwrap(), a1_closed(k as i32));
        }
    }

    #[test]
    fn equal_labels_on_doubled_root() {
        let d = RootDatum::preset(Preset::A1Root).unwrap();
        let g = Arc::new(AffineWeylGroup::from_datum(d).unwrap());
        let tg = TraceGen::new(&HeckeAlgebra::equal_labels(g)).unwrap();
        for i in 0..tg.positive_roots().len() {
            let (lhs, rhs) = tg.rank_one_series(i, 8).unwrap();
            assert_eq!(lhs, rhs);
        }
        for x in tg.negative_cone(6) {
            assert_eq!(tg.trace_theta_partition(&x).unwrap(), tg.trace_theta_direct(&x).unwrap());
        }
    }

    #[test]
    fn a1_traces() {
        let tg = setup(Preset::A1Weight);
        assert_eq!(tg.trace_theta_partition(&[0]).unwrap(), LaurentPoly::one());
        assert_eq!(tg.trace_theta_direct(&[0]).unwrap(), LaurentPoly::one());
        assert!(tg.trace_theta_partition(&[-1]).unwrap().is_zero());
        assert!(tg.trace_theta_direct(&[-1]).unwrap().is_zero());
        for k in 1..5 {
            let x = [-2 * k];
            assert_eq!(tg.trace_theta_direct(&x).unwrap(), a1_closed(k as i32));
            assert_eq!(tg.trace_theta_partition(&x).unwrap(), a1_closed(k as i32));
        }
    }

    #[test]
    fn a2_two_partitions() {
        let tg = setup(Preset::A2);
        let d = tg.group().datum();
        let x = lattice::neg(&lattice::add(&d.simple_roots()[0], &d.simple_roots()[1]));
        assert_eq!(tg.partitions(&lattice::neg(&x)).len(), 2);
        assert_eq!(tg.trace_theta_partition(&x).unwrap(), tg.trace_theta_direct(&x).unwrap());
    }

    /// Coin-change count of vector partitions.
    fn dp_count(tg: &TraceGen, target: &[i64]) -> u64 {
        let n = target.len();
        let size: usize = target.iter().map(|&t| (t + 1) as usize).product();
        let index = |c: &[i64]| -> usize {
            let mut i = 0usize;
            for k in (0..n).rev() {
                i = i * (target[k] + 1) as usize + c[k] as usize;
            }
            i
        };
        let mut ways = vec![0u64; size];
        ways[0] = 1;
        let all: Vec<Vec<i64>> = {
            let mut v = vec![vec![]];
            for &t in target {
                v = v.into_iter().flat_map(|p: Vec<i64>| (0..=t).map(move |c| { let mut q = p.clone(); q.push(c); q })).collect();
            }
            v
        };
        for r in tg.positive_roots() {
            // increasing order of every coordinate
            let mut pts = all.clone();
            pts.sort_by_key(|p| p.iter().sum::<i64>());
            for p in &pts {
                let prev: Vec<i64> = p.iter().zip(&r.coords).map(|(a, b)| a - b).collect();
                if prev.iter().all(|&c| c >= 0) {
                    ways[index(p)] += ways[index(&prev)];
                }
            }
        }
        ways[index(target)]
    }

    #[test]
    fn partitions_against_dp() {
        for p in [Preset::A2, Preset::B2, Preset::BnCn(2), Preset::G2] {
            let tg = setup(p);
            let d = tg.group().datum();
            for a in 0..4 {
                for b in 0..4 {
                    let kappa = lattice::add(&lattice::scale(a, &d.simple_roots()[0]), &lattice::scale(b, &d.simple_roots()[1]));
                    let parts = tg.partitions(&kappa);
                    let mut seen = std::collections::BTreeSet::new();
                    for pi in &parts {
                        let mut sum = lattice::zero(d.rank());
                        for (r, &m) in tg.positive_roots().iter().zip(pi) {
                            sum = lattice::add(&sum, &lattice::scale(m as i64, &r.root));
                        }
                        assert_eq!(sum, kappa);
                        assert!(seen.insert(pi.clone()));
                    }
                    assert_eq!(parts.len() as u64, dp_count(&tg, &[a, b]), "{p:?} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn c_function_groupings() {
        let tg = setup(Preset::BnCn(2));
        let v = vec![Complex64::new(1.3, 0.0), Complex64::new(1.7, 0.0), Complex64::new(2.1, 0.0)];
        let t = TorusPoint::new(vec![Complex64::new(0.3, 0.2), Complex64::new(-0.4, 0.5)]).unwrap();
        let [a, b, c] = tg.c_groupings(&t, &v).unwrap();
        assert!((a - b).norm() < 1e-12 && (a - c).norm() < 1e-12);

        let tg = setup(Preset::A2);
        let v = vec![rat(3, 2)];
        let t = TorusPoint::new(vec![rat(2, 7), rat(5, 3)]).unwrap();
        let [a, b, c] = tg.c_groupings(&t, &v).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        let cc = a * tg.c_full(&t.inverse(), &v).unwrap();
        assert!(!cc.is_zero());
    }

    #[test]
    fn c_zero_and_pole() {
        let tg = setup(Preset::A1Weight);
        let v = vec![rat(2, 1)];
        // t(−α) = q = 4 kills the numerator
        let t = TorusPoint::new(vec![rat(1, 2)]).unwrap();
        assert!(tg.c_factor(0, &t, &v).unwrap().is_zero());
        let t = TorusPoint::new(vec![rat(1, 1)]).unwrap();
        assert!(matches!(tg.c_factor(0, &t, &v), Err(HeckeError::Pole(_))));
    }

    #[test]
    fn rank_one_series_examples() {
        for p in [Preset::A1Weight, Preset::A1Root] {
            let tg = setup(p);
            let (l, r) = tg.rank_one_series(0, 8).unwrap();
            assert_eq!(l, r, "{p:?}");
        }
    }

    #[test]
    fn sqrt2_sign() {
        let one = LaurentPoly::one();
        let v = LaurentPoly::var(0);
        // √2 − 1 > 0, 1 − √2 < 0, 3 − 2√2 > 0
        assert!(positive_at_sqrt2(&(&v - &one)));
        assert!(!positive_at_sqrt2(&(&one - &v)));
        let p = &LaurentPoly::from_int(3) - &v.scale(&rat(2, 1));
        assert!(positive_at_sqrt2(&p));
        assert!(!positive_at_sqrt2(&LaurentPoly::zero()));
        assert_eq!(eval_at_sqrt2(&v.pow(3)), (rat(0, 1), rat(2, 1)));
    }

    #[test]
    fn torus_point_action() {
        let tg = setup(Preset::A2);
        let w0 = tg.group().finite();
        let t = TorusPoint::new(vec![rat(2, 1), rat(3, 1)]).unwrap();
        assert!(t.is_regular(w0));
        let x = [1i64, -2];
        for w in 0..w0.order() {
            let wt = t.act(w0, w);
            assert_eq!(wt.eval(&w0.act(w, &x)), t.eval(&x));
        }
        let one = TorusPoint::new(vec![rat(1, 1), rat(1, 1)]).unwrap();
        assert!(!one.is_regular(w0));
    }

    #[test]
    fn generating_small_radius() {
        let tg = setup(Preset::A1Weight);
        let v = vec![Complex64::new(2.0, 0.0)];
        let d = tg.group().datum();
        let t = TorusPoint::from_root_values(d, &[Complex64::new(0.1, 0.0)]).unwrap();
        let mut last = f64::INFINITY;
        for r in [2, 4, 8, 16] {
            let g = tg.generating_check(&t, &v, r).unwrap();
            assert!(g.gap < last);
            last = g.gap;
        }
        let far = TorusPoint::from_root_values(d, &[Complex64::new(0.5, 0.0)]).unwrap();
        assert!(matches!(tg.generating_check(&far, &v, 2), Err(HeckeError::OutsideRegion(_))));
    }

    #[test]
    fn series_a1() {
        let tg = setup(Preset::A1Weight);
        let s = tg.series(6).unwrap();
        let xs: Vec<i64> = s.iter().map(|(x, _)| x[0]).collect();
        assert_eq!(xs, vec![0, -2, -4, -6]);
    }
}
