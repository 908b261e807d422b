//! Sparse multivariate Laurent polynomials over `Q`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{HeckeError, Result};
use crate::scalar::Scalar;

/// Exponent vector; trailing zeros are trimmed so equal monomials compare
/// equal regardless of how many variables were in scope.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[i32; 4]>);

impl Monomial {
    pub fn new(exps: &[i32]) -> Monomial {
        let mut v: SmallVec<[i32; 4]> = exps.iter().copied().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    /// `v_i^e`
    pub fn var(i: usize, e: i32) -> Monomial {
        let mut v = vec![0; i + 1];
        v[i] = e;
        Monomial::new(&v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let n = self.0.len().max(o.0.len());
        let mut v: SmallVec<[i32; 4]> = SmallVec::with_capacity(n);
        for i in 0..n {
            v.push(self.get(i) + o.get(i));
        }
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// `Some(m/2)` when every exponent is even.
    pub fn half(&self) -> Option<Monomial> {
        if self.0.iter().all(|e| e % 2 == 0) {
            Some(Monomial(self.0.iter().map(|e| e / 2).collect()))
        } else {
            None
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            match self.get(i).cmp(&other.get(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `Σ c_m v^m` with `c_m ∈ Q`; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(Monomial::one(), BigRational::one())
    }

    pub fn constant(c: BigRational) -> LaurentPoly {
        LaurentPoly::monomial(Monomial::one(), c)
    }

    pub fn from_int(n: i64) -> LaurentPoly {
        LaurentPoly::constant(rat_int(n))
    }

    pub fn monomial(m: Monomial, c: BigRational) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    /// The monomial `m` with coefficient 1.
    pub fn mono(m: Monomial) -> LaurentPoly {
        LaurentPoly::monomial(m, BigRational::one())
    }

    /// `v_i`
    pub fn var(i: usize) -> LaurentPoly {
        LaurentPoly::mono(Monomial::var(i, 1))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map(|(m, c)| m.is_one() && c.is_one()).unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::one())
    }

    /// The single monomial and coefficient if there is exactly one term.
    pub fn as_monomial(&self) -> Option<(&Monomial, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · m · other`
    pub fn add_scaled(&mut self, other: &LaurentPoly, m: &Monomial, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        for (om, oc) in &other.terms {
            let mm = if m.is_one() { om.clone() } else { om.mul(m) };
            let cc = if c.is_one() { oc.clone() } else { oc * c };
            self.add_term(mm, cc);
        }
    }

    /// Multiply by a monomial.
    pub fn shift(&self, m: &Monomial) -> LaurentPoly {
        if m.is_one() {
            return self.clone();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        let mut b = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Multiplicative inverse when `self` is a single term.
    pub fn inverse_monomial(&self) -> Option<LaurentPoly> {
        let (m, c) = self.as_monomial()?;
        Some(LaurentPoly::monomial(m.inv(), c.recip()))
    }

    /// Lex-leading and lex-trailing monomials.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn trailing(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next()
    }

    /// Number of variables in scope (highest index with a nonzero exponent + 1).
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|m| m.exps().len()).max().unwrap_or(0)
    }

    fn exponent_box(&self, n: usize) -> (Vec<i32>, Vec<i32>) {
        let mut lo = vec![i32::MAX; n];
        let mut hi = vec![i32::MIN; n];
        for m in self.terms.keys() {
            for i in 0..n {
                lo[i] = lo[i].min(m.get(i));
                hi[i] = hi[i].max(m.get(i));
            }
        }
        (lo, hi)
    }

    /// Exact division in the Laurent ring; errors if `divisor` does not
    /// divide `self`.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(HeckeError::DivisionByZero("Laurent division by zero".into()));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if let Some(inv) = divisor.inverse_monomial() {
            return Ok(self * &inv);
        }
        let n = self.nvars().max(divisor.nvars());
        // Newton polytopes add under multiplication, so every quotient
        // exponent lies in this box.
        let (plo, phi) = self.exponent_box(n);
        let (dlo, dhi) = divisor.exponent_box(n);
        let qlo: Vec<i32> = (0..n).map(|i| plo[i] - dlo[i]).collect();
        let qhi: Vec<i32> = (0..n).map(|i| phi[i] - dhi[i]).collect();
        let (dm, dc) = divisor.leading().unwrap();
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.mul(&dm.inv());
            if (0..n).any(|i| qm.get(i) < qlo[i] || qm.get(i) > qhi[i]) {
                return Err(HeckeError::InexactDivision(format!("{self} by {divisor}")));
            }
            let qc = rc / &dc;
            rem.add_scaled(divisor, &qm, &-qc.clone());
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Ring-homomorphic evaluation at `v_i = values[i]`.
    pub fn evaluate<S: Scalar>(&self, values: &[S]) -> Result<S> {
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = S::from_rational(c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let Some(v) = values.get(i) else {
                    return Err(HeckeError::InvalidInput(format!(
                        "no value assigned to variable {i}"
                    )));
                };
                if e < 0 && v.is_negligible() {
                    return Err(HeckeError::DivisionByZero(format!(
                        "variable {i} is zero with negative exponent"
                    )));
                }
                t = t * v.powi(e as i64);
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Substitute `v_i ↦ images[i]` (monomials), e.g. to identify variables.
    pub fn substitute(&self, images: &[Monomial]) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut mm = Monomial::one();
            for (i, &e) in m.exps().iter().enumerate() {
                if e != 0 {
                    mm = mm.mul(&images[i].pow(e));
                }
            }
            out.add_term(mm, c.clone());
        }
        out
    }

    /// Integer-coefficient check.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn to_json(&self, vars: &[String]) -> PolyJson {
        PolyJson {
            vars: vars.to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exp: Vec<i32> = m.exps().to_vec();
                    exp.resize(vars.len().max(exp.len()), 0);
                    TermJson { exp, num: big_to_json(c.numer()), den: big_to_json(c.denom()) }
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        for t in &j.terms {
            let num = json_to_big(&t.num)?;
            let den = json_to_big(&t.den)?;
            if den.is_zero() {
                return Err(HeckeError::InvalidInput("zero denominator".into()));
            }
            p.add_term(Monomial::new(&t.exp), BigRational::new(num, den));
        }
        Ok(p)
    }

    pub fn display_with(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = vars.get(i).cloned().unwrap_or_else(|| format!("v{i}"));
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            if factors.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&a.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Largest absolute coefficient as `f64`, for diagnostics.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
    }
}

fn big_to_json(b: &BigInt) -> serde_json::Value {
    match b.to_i64() {
        Some(n) => serde_json::Value::from(n),
        None => serde_json::Value::from(b.to_string()),
    }
}

fn json_to_big(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| HeckeError::InvalidInput(format!("non-integer {n}"))),
        serde_json::Value::String(s) => {
            s.parse().map_err(|_| HeckeError::InvalidInput(format!("bad integer {s}")))
        }
        other => Err(HeckeError::InvalidInput(format!("bad integer {other}"))),
    }
}

/// Serialized form `{vars, terms: [{exp, num, den}]}`, lex-ordered.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub exp: Vec<i32>,
    pub num: serde_json::Value,
    pub den: serde_json::Value,
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut r = LaurentPoly::zero();
        for (m, c) in &small.terms {
            r.add_scaled(big, m, c);
        }
        r
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, o: LaurentPoly) -> LaurentPoly {
        self += &o;
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, o: LaurentPoly) -> LaurentPoly {
        self -= &o;
        self
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        &self * &o
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, o: &LaurentPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, o: &LaurentPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, o: &LaurentPoly) {
        *self = &*self * o;
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl From<i64> for LaurentPoly {
    fn from(n: i64) -> Self {
        LaurentPoly::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn v() -> LaurentPoly {
        LaurentPoly::var(0)
    }

    #[test]
    fn monomial_order_pads_with_zeros() {
        assert_eq!(Monomial::new(&[1, 0, 0]), Monomial::new(&[1]));
        assert!(Monomial::new(&[0, -1]) < Monomial::one());
        assert!(Monomial::new(&[0, 1]) > Monomial::one());
        assert!(Monomial::new(&[1]) > Monomial::new(&[0, 5]));
    }

    #[test]
    fn evaluate_examples() {
        let v2 = v().pow(2);
        assert_eq!(v2.evaluate(&[rat(2, 1)]).unwrap(), rat(4, 1));
        let q = v2.clone();
        let qinv = q.inverse_monomial().unwrap();
        let p = &(&q + &qinv) - &LaurentPoly::from_int(2);
        assert_eq!(p.evaluate(&[rat(2, 1)]).unwrap(), rat(9, 4));
        assert_eq!(LaurentPoly::one().evaluate::<BigRational>(&[]).unwrap(), rat(1, 1));
        assert!(matches!(qinv.evaluate(&[rat(0, 1)]), Err(HeckeError::DivisionByZero(_))));
    }

    #[test]
    fn exact_division() {
        let q = v().pow(2);
        let one = LaurentPoly::one();
        // (q^3 - 1) / (q - 1) = q^2 + q + 1
        let num = &q.pow(3) - &one;
        let den = &q - &one;
        let quot = num.exact_div(&den).unwrap();
        assert_eq!(quot, &(&q.pow(2) + &q) + &one);
        // q + 1 does not divide q
        assert!(matches!(q.exact_div(&(&q + &one)), Err(HeckeError::InexactDivision(_))));
        // Laurent case: (q - q^{-1}) / (1 + q^{-1}) = q - 1
        let qi = q.inverse_monomial().unwrap();
        let r = (&q - &qi).exact_div(&(&one + &qi)).unwrap();
        assert_eq!(r, &q - &one);
    }

    #[test]
    fn multivariate_division() {
        let a = LaurentPoly::var(0);
        let b = LaurentPoly::var(1);
        let one = LaurentPoly::one();
        let f = &(&a * &b) - &one;
        let g = &(&a + &b.inverse_monomial().unwrap()) + &one;
        let prod = &f * &g;
        assert_eq!(prod.exact_div(&g).unwrap(), f);
        assert_eq!(prod.exact_div(&f).unwrap(), g);
    }

    #[test]
    fn json_round_trip() {
        let p = &(&v().pow(3).scale(&rat(-3, 2)) + &LaurentPoly::var(1)) + &LaurentPoly::from_int(7);
        let j = p.to_json(&["v".into(), "w".into()]);
        assert_eq!(LaurentPoly::from_json(&j).unwrap(), p);
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.contains("\"num\":-3"));
    }

    #[test]
    fn display() {
        let p = &v().pow(2) - &LaurentPoly::one();
        assert_eq!(p.display_with(&["v".into()]), "v^2 - 1");
    }
}
