//! Root data `(X, Y, R0, R0∨, F0)` with `X = Y = Z^rank` and an explicit
//! integer pairing, the generated root system, and the derived systems
//! `R_nr` (possibly non-reduced) and `R1` (its reduced part).

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{HeckeError, Result};
use crate::lattice::{self, CoordinateSystem, Vector};

/// Closure aborts past this many roots.
pub const ROOT_BOUND: usize = 1000;

/// JSON schema for user-supplied root data.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RootDatumDesc {
    pub rank: usize,
    pub pairing: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
}

/// Named presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `X = Z`, `α = 2`, `α∨ = 1`.
    A1Weight,
    /// `X = Zα`, `α = 1`, `α∨ = 2`.
    A1Root,
    A2,
    B2,
    C2,
    G2,
    /// `X = Y = Z^n`, `R0 = B_n`, `R0∨ = C_n`.
    BnCn(usize),
    GLn(usize),
}

impl Preset {
    pub const CATALOG: &'static [&'static str] =
        &["A1-weight", "A1-root", "A2", "B2", "C2", "G2", "BnCn(n)", "GLn(n)"];

    pub fn parse(name: &str) -> Result<Preset> {
        let lower = name.trim().to_ascii_lowercase();
        let with_n = |prefix: &str| -> Option<usize> {
            let rest = lower.strip_prefix(prefix)?;
            let rest = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
            rest.parse().ok()
        };
        let p = match lower.as_str() {
            "a1-weight" | "a1" => Preset::A1Weight,
            "a1-root" => Preset::A1Root,
            "a2" => Preset::A2,
            "b2" => Preset::B2,
            "c2" => Preset::C2,
            "g2" => Preset::G2,
            _ => {
                if let Some(n) = with_n("bncn") {
                    if n == 0 {
                        return Err(HeckeError::UnknownPreset(name.into()));
                    }
                    Preset::BnCn(n)
                } else if let Some(n) = with_n("gln") {
                    if n < 2 {
                        return Err(HeckeError::UnknownPreset(name.into()));
                    }
                    Preset::GLn(n)
                } else {
                    return Err(HeckeError::UnknownPreset(name.into()));
                }
            }
        };
        Ok(p)
    }

    pub fn name(&self) -> String {
        match self {
            Preset::A1Weight => "A1-weight".into(),
            Preset::A1Root => "A1-root".into(),
            Preset::A2 => "A2".into(),
            Preset::B2 => "B2".into(),
            Preset::C2 => "C2".into(),
            Preset::G2 => "G2".into(),
            Preset::BnCn(n) => format!("BnCn({n})"),
            Preset::GLn(n) => format!("GLn({n})"),
        }
    }

    pub fn desc(&self) -> RootDatumDesc {
        match *self {
            Preset::A1Weight => simple(&[vec![2]], &[vec![1]], 1),
            Preset::A1Root => simple(&[vec![1]], &[vec![2]], 1),
            Preset::A2 => simply_connected(&[vec![2, -1], vec![-1, 2]]),
            // α1 long, α2 short
            Preset::B2 => simply_connected(&[vec![2, -2], vec![-1, 2]]),
            // α1 short, α2 long
            Preset::C2 => simply_connected(&[vec![2, -1], vec![-2, 2]]),
            // α1 short, α2 long
            Preset::G2 => simply_connected(&[vec![2, -1], vec![-3, 2]]),
            Preset::BnCn(n) => {
                let mut roots = Vec::new();
                let mut coroots = Vec::new();
                for i in 0..n - 1 {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    v[i + 1] = -1;
                    roots.push(v.clone());
                    coroots.push(v);
                }
                let mut e = vec![0; n];
                e[n - 1] = 1;
                roots.push(e.clone());
                e[n - 1] = 2;
                coroots.push(e);
                simple(&roots, &coroots, n)
            }
            Preset::GLn(n) => {
                let roots: Vec<Vec<i64>> = (0..n - 1)
                    .map(|i| {
                        let mut v = vec![0; n];
                        v[i] = 1;
                        v[i + 1] = -1;
                        v
                    })
                    .collect();
                simple(&roots, &roots, n)
            }
        }
    }
}

fn simple(roots: &[Vec<i64>], coroots: &[Vec<i64>], rank: usize) -> RootDatumDesc {
    let pairing = lattice::IntMatrix::identity(rank).rows();
    RootDatumDesc {
        rank,
        pairing,
        simple_roots: roots.to_vec(),
        simple_coroots: coroots.to_vec(),
        labels: BTreeMap::new(),
    }
}

/// Simply connected datum from a Cartan matrix `A[i][j] = (α_i, α_j∨)`:
/// `X` in fundamental-weight coordinates, `Y` in simple-coroot coordinates.
fn simply_connected(cartan: &[Vec<i64>]) -> RootDatumDesc {
    let n = cartan.len();
    let coroots: Vec<Vec<i64>> = (0..n).map(|i| lattice::unit(n, i).to_vec()).collect();
    simple(cartan, &coroots, n)
}

/// A validated root datum together with its generated root system.
#[derive(Clone, Debug)]
pub struct RootDatum {
    name: String,
    rank: usize,
    pairing: lattice::IntMatrix,
    simple_roots: Vec<Vector>,
    simple_coroots: Vec<Vector>,
    /// Positive roots first (ordered by height), then their negatives in the
    /// same order: `roots[i + npos] = -roots[i]`.
    roots: Vec<Vector>,
    coroots: Vec<Vector>,
    npos: usize,
    root_index: HashMap<Vector, usize>,
    coroot_index: HashMap<Vector, usize>,
    root_coords: CoordinateSystem,
    coroot_coords: CoordinateSystem,
    /// `(α_i, α_j∨)`
    cartan: Vec<Vec<i64>>,
    derived: DerivedRoots,
    label_names: BTreeMap<String, String>,
}

/// A root of the possibly non-reduced system `R_nr`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NrRoot {
    pub root: Vector,
    pub coroot: Vector,
    /// Index in `R0` of `α` where this root is `α` or `2α`.
    pub base: usize,
    /// `true` for the added roots `2α` with `α∨ ∈ 2Y`.
    pub doubled: bool,
}

/// `R_nr`, `R1` and the half-sums built from the positive roots.
#[derive(Clone, Debug)]
pub struct DerivedRoots {
    /// All of `R_nr`.
    pub nr: Vec<NrRoot>,
    /// Indices into `nr` of the positive roots.
    pub nr_positive: Vec<usize>,
    /// Indices into `nr` of `R1 = {α ∈ R_nr | 2α ∉ R_nr}`.
    pub r1: Vec<usize>,
    pub r1_positive: Vec<usize>,
    /// `2ρ`, the sum of the positive roots of `R0`.
    pub two_rho: Vector,
    /// `2ρ∨`, the sum of the positive coroots.
    pub two_rho_check: Vector,
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (rank {}, {} roots, {} simple)",
            self.name,
            self.rank,
            self.roots.len(),
            self.simple_roots.len()
        )
    }
}

fn to_vec(v: &[i64]) -> Vector {
    v.iter().copied().collect()
}

/// Closure of the simple roots/coroots under the simple reflections.
///
/// Returns `(R0, R0∨)` as parallel lists, in discovery order.
pub fn generate_roots(
    simple_roots: &[Vector],
    simple_coroots: &[Vector],
    pairing: &lattice::IntMatrix,
) -> Result<(Vec<Vector>, Vec<Vector>)> {
    generate_roots_bounded(simple_roots, simple_coroots, pairing, ROOT_BOUND)
}

pub fn generate_roots_bounded(
    simple_roots: &[Vector],
    simple_coroots: &[Vector],
    pairing: &lattice::IntMatrix,
    bound: usize,
) -> Result<(Vec<Vector>, Vec<Vector>)> {
    if simple_roots.len() != simple_coroots.len() {
        return Err(HeckeError::AxiomViolation(
            "simple roots and coroots must be in bijection".into(),
        ));
    }
    let pair = |x: &[i64], y: &[i64]| pair_with(pairing, x, y);
    for (a, c) in simple_roots.iter().zip(simple_coroots) {
        if pair(a, c) != 2 {
            return Err(HeckeError::AxiomViolation(format!(
                "(α, α∨) = {} ≠ 2 for simple root {:?}",
                pair(a, c),
                a.as_slice()
            )));
        }
    }
    let mut roots: Vec<Vector> = Vec::new();
    let mut coroots: Vec<Vector> = Vec::new();
    let mut index: HashMap<Vector, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut push = |r: Vector, c: Vector, roots: &mut Vec<Vector>, coroots: &mut Vec<Vector>, queue: &mut VecDeque<usize>| -> Result<()> {
        if let Some(&i) = index.get(&r) {
            if coroots[i] != c {
                return Err(HeckeError::AxiomViolation(format!(
                    "root {:?} reached with two different coroots",
                    r.as_slice()
                )));
            }
            return Ok(());
        }
        if roots.len() >= bound {
            return Err(HeckeError::RootBoundExceeded(bound));
        }
        index.insert(r.clone(), roots.len());
        queue.push_back(roots.len());
        roots.push(r);
        coroots.push(c);
        Ok(())
    };
    for (a, c) in simple_roots.iter().zip(simple_coroots) {
        push(a.clone(), c.clone(), &mut roots, &mut coroots, &mut queue)?;
        push(lattice::neg(a), lattice::neg(c), &mut roots, &mut coroots, &mut queue)?;
    }
    while let Some(i) = queue.pop_front() {
        for (a, c) in simple_roots.iter().zip(simple_coroots) {
            let b = roots[i].clone();
            let bc = coroots[i].clone();
            let r = lattice::sub(&b, &lattice::scale(pair(&b, c), a));
            let rc = lattice::sub(&bc, &lattice::scale(pair(a, &bc), c));
            push(r, rc, &mut roots, &mut coroots, &mut queue)?;
        }
    }
    Ok((roots, coroots))
}

fn pair_with(p: &lattice::IntMatrix, x: &[i64], y: &[i64]) -> i64 {
    let n = p.n;
    let mut s = 0;
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        for j in 0..n {
            s += x[i] * p.get(i, j) * y[j];
        }
    }
    s
}

impl RootDatum {
    pub fn preset(p: Preset) -> Result<RootDatum> {
        let mut d = RootDatum::from_desc(&p.desc())?;
        d.name = p.name();
        Ok(d)
    }

    /// Build from a preset name such as `"A2"` or `"BnCn(2)"`.
    pub fn build_preset(name: &str) -> Result<RootDatum> {
        RootDatum::preset(Preset::parse(name)?)
    }

    pub fn from_json(text: &str) -> Result<RootDatum> {
        let desc: RootDatumDesc = serde_json::from_str(text)?;
        RootDatum::from_desc(&desc)
    }

    pub fn from_desc(desc: &RootDatumDesc) -> Result<RootDatum> {
        let rank = desc.rank;
        if rank == 0 {
            return Err(HeckeError::InvalidInput("rank must be positive".into()));
        }
        if desc.pairing.len() != rank || desc.pairing.iter().any(|r| r.len() != rank) {
            return Err(HeckeError::DimensionMismatch {
                expected: rank,
                found: desc.pairing.len(),
            });
        }
        for v in desc.simple_roots.iter().chain(&desc.simple_coroots) {
            if v.len() != rank {
                return Err(HeckeError::DimensionMismatch { expected: rank, found: v.len() });
            }
        }
        let det = lattice::determinant(&desc.pairing);
        let one = num_rational::BigRational::from_integer(1.into());
        if det != one && det != -one {
            return Err(HeckeError::AxiomViolation("pairing is not perfect (det ≠ ±1)".into()));
        }
        let pairing = lattice::IntMatrix::from_rows(&desc.pairing);
        let simple_roots: Vec<Vector> = desc.simple_roots.iter().map(|v| to_vec(v)).collect();
        let simple_coroots: Vec<Vector> = desc.simple_coroots.iter().map(|v| to_vec(v)).collect();
        let root_coords = CoordinateSystem::new(&simple_roots).ok_or_else(|| {
            HeckeError::AxiomViolation("fundamental roots are not linearly independent".into())
        })?;
        let coroot_coords = CoordinateSystem::new(&simple_coroots).ok_or_else(|| {
            HeckeError::AxiomViolation("fundamental coroots are not linearly independent".into())
        })?;
        let (raw_roots, raw_coroots) = generate_roots(&simple_roots, &simple_coroots, &pairing)?;

        // Split into positive / negative using coordinates in F0.
        let mut pos: Vec<(i64, Vec<i64>, Vector, Vector)> = Vec::new();
        for (r, c) in raw_roots.iter().zip(&raw_coroots) {
            let coords = root_coords.integer_coords(r).ok_or_else(|| {
                HeckeError::AxiomViolation(format!("root {:?} is not in Z·F0", r.as_slice()))
            })?;
            let nonneg = coords.iter().all(|&x| x >= 0);
            let nonpos = coords.iter().all(|&x| x <= 0);
            if !nonneg && !nonpos {
                return Err(HeckeError::AxiomViolation(format!(
                    "root {:?} is neither positive nor negative",
                    r.as_slice()
                )));
            }
            if nonneg {
                let h = coords.iter().sum();
                pos.push((h, coords, r.clone(), c.clone()));
            }
        }
        pos.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
        let npos = pos.len();
        if 2 * npos != raw_roots.len() {
            return Err(HeckeError::AxiomViolation("R0 is not symmetric under negation".into()));
        }
        let mut roots: Vec<Vector> = pos.iter().map(|p| p.2.clone()).collect();
        let mut coroots: Vec<Vector> = pos.iter().map(|p| p.3.clone()).collect();
        for i in 0..npos {
            roots.push(lattice::neg(&roots[i]));
            coroots.push(lattice::neg(&coroots[i]));
        }
        let root_index: HashMap<Vector, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let coroot_index: HashMap<Vector, usize> =
            coroots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let cartan = simple_roots
            .iter()
            .map(|a| simple_coroots.iter().map(|c| pair_with(&pairing, a, c)).collect())
            .collect();

        let mut d = RootDatum {
            name: "custom".into(),
            rank,
            pairing,
            simple_roots,
            simple_coroots,
            roots,
            coroots,
            npos,
            root_index,
            coroot_index,
            root_coords,
            coroot_coords,
            cartan,
            derived: DerivedRoots {
                nr: Vec::new(),
                nr_positive: Vec::new(),
                r1: Vec::new(),
                r1_positive: Vec::new(),
                two_rho: lattice::zero(rank),
                two_rho_check: lattice::zero(rank),
            },
            label_names: desc.labels.clone(),
        };
        // Simple roots must occupy the first slots.
        for i in 0..d.simple_roots.len() {
            if d.roots[i] != d.simple_roots[i] {
                return Err(HeckeError::AxiomViolation(
                    "simple roots are not of height one".into(),
                ));
            }
        }
        d.check_axioms()?;
        d.derived = d.compute_derived();
        Ok(d)
    }

    /// Assert the axioms on the generated system.
    pub fn check_axioms(&self) -> Result<()> {
        for (a, c) in self.roots.iter().zip(&self.coroots) {
            if self.pair(a, c) != 2 {
                return Err(HeckeError::AxiomViolation(format!(
                    "(α, α∨) ≠ 2 for {:?}",
                    a.as_slice()
                )));
            }
            let twice = lattice::scale(2, a);
            if self.root_index.contains_key(&twice) {
                return Err(HeckeError::AxiomViolation(format!(
                    "2α ∈ R0 for α = {:?}",
                    a.as_slice()
                )));
            }
        }
        for i in 0..self.roots.len() {
            for (b, bc) in self.roots.iter().zip(&self.coroots) {
                let r = self.reflect_index(i, b);
                let rc = self.reflect_coroot_index(i, bc);
                match self.root_index.get(&r) {
                    Some(&j) if self.coroots[j] == rc => {}
                    _ => {
                        return Err(HeckeError::AxiomViolation(format!(
                            "s_α does not preserve R0 / R0∨ (α = {:?})",
                            self.roots[i].as_slice()
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_derived(&self) -> DerivedRoots {
        let mut nr = Vec::new();
        for (i, (r, c)) in self.roots.iter().zip(&self.coroots).enumerate() {
            nr.push(NrRoot { root: r.clone(), coroot: c.clone(), base: i, doubled: false });
        }
        for (i, (r, c)) in self.roots.iter().zip(&self.coroots).enumerate() {
            if c.iter().all(|x| x % 2 == 0) {
                nr.push(NrRoot {
                    root: lattice::scale(2, r),
                    coroot: c.iter().map(|x| x / 2).collect(),
                    base: i,
                    doubled: true,
                });
            }
        }
        let nr_positive: Vec<usize> =
            (0..nr.len()).filter(|&i| nr[i].base < self.npos).collect();
        let doubles: std::collections::HashSet<Vector> = nr.iter().map(|r| r.root.clone()).collect();
        let r1: Vec<usize> = (0..nr.len())
            .filter(|&i| !doubles.contains(&lattice::scale(2, &nr[i].root)))
            .collect();
        let r1_positive = r1.iter().copied().filter(|&i| nr[i].base < self.npos).collect();
        let mut two_rho = lattice::zero(self.rank);
        let mut two_rho_check = lattice::zero(self.rank);
        for i in 0..self.npos {
            two_rho = lattice::add(&two_rho, &self.roots[i]);
            two_rho_check = lattice::add(&two_rho_check, &self.coroots[i]);
        }
        DerivedRoots { nr, nr_positive, r1, r1_positive, two_rho, two_rho_check }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn pairing_matrix(&self) -> &lattice::IntMatrix {
        &self.pairing
    }

    /// `(x, y)` for `x ∈ X`, `y ∈ Y`.
    #[inline]
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        pair_with(&self.pairing, x, y)
    }

    pub fn simple_roots(&self) -> &[Vector] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vector] {
        &self.simple_coroots
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vector] {
        &self.coroots
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn positive_roots(&self) -> &[Vector] {
        &self.roots[..self.npos]
    }

    pub fn is_positive_index(&self, i: usize) -> bool {
        i < self.npos
    }

    pub fn negate_index(&self, i: usize) -> usize {
        if i < self.npos {
            i + self.npos
        } else {
            i - self.npos
        }
    }

    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.root_index.get(r).copied()
    }

    pub fn coroot_index(&self, c: &[i64]) -> Option<usize> {
        self.coroot_index.get(c).copied()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn derived(&self) -> &DerivedRoots {
        &self.derived
    }

    pub fn label_names(&self) -> &BTreeMap<String, String> {
        &self.label_names
    }

    fn reflect_index(&self, i: usize, x: &[i64]) -> Vector {
        let k = self.pair(x, &self.coroots[i]);
        lattice::sub(x, &lattice::scale(k, &self.roots[i]))
    }

    fn reflect_coroot_index(&self, i: usize, y: &[i64]) -> Vector {
        let k = self.pair(&self.roots[i], y);
        lattice::sub(y, &lattice::scale(k, &self.coroots[i]))
    }

    /// `s_α(x) = x − (x, α∨)α`.
    pub fn reflect(&self, alpha: &[i64], x: &[i64]) -> Result<Vector> {
        let i = self
            .root_index(alpha)
            .ok_or_else(|| HeckeError::NotARoot(alpha.to_vec()))?;
        Ok(self.reflect_index(i, x))
    }

    /// `s_α(y) = y − (α, y)α∨` on `Y`.
    pub fn reflect_coroot(&self, alpha: &[i64], y: &[i64]) -> Result<Vector> {
        let i = self
            .root_index(alpha)
            .ok_or_else(|| HeckeError::NotARoot(alpha.to_vec()))?;
        Ok(self.reflect_coroot_index(i, y))
    }

    /// Simple reflection `s_i` applied to `x`.
    pub fn simple_reflect(&self, i: usize, x: &[i64]) -> Vector {
        self.reflect_index(i, x)
    }

    pub fn is_dominant(&self, x: &[i64]) -> bool {
        self.simple_coroots.iter().all(|c| self.pair(x, c) >= 0)
    }

    pub fn is_strictly_dominant(&self, x: &[i64]) -> bool {
        self.simple_coroots.iter().all(|c| self.pair(x, c) > 0)
    }

    /// `(x, 2ρ∨)`, an integer.
    pub fn two_rho_check_pairing(&self, x: &[i64]) -> i64 {
        self.pair(x, &self.derived.two_rho_check)
    }

    /// `height(κ) = (κ, ρ∨)` for `κ ∈ Q`; `None` off the root lattice.
    pub fn height(&self, kappa: &[i64]) -> Option<i64> {
        let coords = self.root_coords.integer_coords(kappa)?;
        Some(coords.iter().sum())
    }

    /// Coordinates of `x` in `F0` if `x ∈ Q = Z R0`.
    pub fn root_lattice_coords(&self, x: &[i64]) -> Option<Vec<i64>> {
        self.root_coords.integer_coords(x)
    }

    pub fn in_root_lattice(&self, x: &[i64]) -> bool {
        self.root_lattice_coords(x).is_some()
    }

    /// `x ∈ Q_- = Z_{≤0} F0`.
    pub fn in_negative_cone(&self, x: &[i64]) -> bool {
        self.root_lattice_coords(x)
            .map(|c| c.iter().all(|&v| v <= 0))
            .unwrap_or(false)
    }

    /// Dominance order on `Y`: `y ≥ y'` iff `y − y' ∈ Z_{≥0} R∨_{0,+}`.
    pub fn coroot_geq(&self, y: &[i64], y2: &[i64]) -> bool {
        let d = lattice::sub(y, y2);
        self.coroot_coords
            .integer_coords(&d)
            .map(|c| c.iter().all(|&v| v >= 0))
            .unwrap_or(false)
    }

    /// Indices of the coroots minimal for the dominance order.
    pub fn minimal_coroots(&self) -> Vec<usize> {
        (0..self.coroots.len())
            .filter(|&i| {
                !(0..self.coroots.len())
                    .any(|j| j != i && self.coroot_geq(&self.coroots[i], &self.coroots[j]))
            })
            .collect()
    }

    /// `x = y − z` with `y, z` dominant and `z = N·2ρ`, `N` minimal.
    pub fn dominant_decomposition(&self, x: &[i64]) -> (Vector, Vector) {
        let two_rho = &self.derived.two_rho;
        let mut n = 0i64;
        for c in &self.simple_coroots {
            let need = -self.pair(x, c);
            let step = self.pair(two_rho, c);
            if need > 0 {
                n = n.max((need + step - 1) / step);
            }
        }
        let z = lattice::scale(n, two_rho);
        (lattice::add(x, &z), z)
    }

    /// Dominant `z` with `x + z` dominant, minimising `(z, 2ρ∨)` among
    /// combinations of fundamental-direction vectors. Used for fast paths only;
    /// [`RootDatum::dominant_decomposition`] is the canonical choice.
    pub fn compact_decomposition(&self, x: &[i64]) -> (Vector, Vector) {
        if self.is_dominant(x) {
            return (to_vec(x), lattice::zero(self.rank));
        }
        // Greedy: add the cheapest dominant generator until x + z is dominant.
        let gens = self.dominant_generators();
        let mut z = lattice::zero(self.rank);
        let mut guard = 0;
        while !self.is_dominant(&lattice::add(x, &z)) {
            let y = lattice::add(x, &z);
            let i = (0..self.simple_coroots.len())
                .find(|&i| self.pair(&y, &self.simple_coroots[i]) < 0)
                .unwrap();
            z = lattice::add(&z, &gens[i]);
            guard += 1;
            if guard > 100_000 {
                return self.dominant_decomposition(x);
            }
        }
        (lattice::add(x, &z), z)
    }

    /// For each simple coroot `α_i∨`, a dominant vector pairing positively
    /// with it and as little as possible with the others.
    fn dominant_generators(&self) -> Vec<Vector> {
        let n = self.simple_coroots.len();
        let mut out = Vec::with_capacity(n);
        // Search small dominant vectors in a box; fall back to 2ρ.
        let r = self.rank;
        let bound = 3i64;
        for i in 0..n {
            let mut best: Option<(i64, Vector)> = None;
            let mut v = vec![-bound; r];
            loop {
                if self.is_dominant(&v) && self.pair(&v, &self.simple_coroots[i]) > 0 {
                    let cost = self.two_rho_check_pairing(&v);
                    if best.as_ref().map(|b| cost < b.0).unwrap_or(true) {
                        best = Some((cost, to_vec(&v)));
                    }
                }
                let mut k = 0;
                loop {
                    if k == r {
                        break;
                    }
                    v[k] += 1;
                    if v[k] > bound {
                        v[k] = -bound;
                        k += 1;
                    } else {
                        break;
                    }
                }
                if k == r {
                    break;
                }
            }
            out.push(best.map(|b| b.1).unwrap_or_else(|| self.derived.two_rho.clone()));
        }
        out
    }

    /// Dominance order on `X` restricted to `Q`: `x ≥ x'` iff
    /// `x − x' ∈ Z_{≥0} F0`.
    pub fn root_geq(&self, x: &[i64], x2: &[i64]) -> bool {
        let d = lattice::sub(x, x2);
        self.root_lattice_coords(&d)
            .map(|c| c.iter().all(|&v| v >= 0))
            .unwrap_or(false)
    }

    pub fn desc(&self) -> RootDatumDesc {
        RootDatumDesc {
            rank: self.rank,
            pairing: self.pairing.rows(),
            simple_roots: self.simple_roots.iter().map(|v| v.to_vec()).collect(),
            simple_coroots: self.simple_coroots.iter().map(|v| v.to_vec()).collect(),
            labels: self.label_names.clone(),
        }
    }
}
