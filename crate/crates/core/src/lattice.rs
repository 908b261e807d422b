//! Integer vectors and the small amount of exact linear algebra the root
//! datum needs (rank, coordinates in a sublattice basis).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

/// A lattice vector in coordinates of `Z^rank`.
pub type Vector = SmallVec<[i64; 4]>;

pub fn zero(rank: usize) -> Vector {
    SmallVec::from_elem(0, rank)
}

pub fn unit(rank: usize, i: usize) -> Vector {
    let mut v = zero(rank);
    v[i] = 1;
    v
}

pub fn add(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(k: i64, a: &[i64]) -> Vector {
    a.iter().map(|x| k * x).collect()
}

pub fn neg(a: &[i64]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[i64]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Integer matrix stored row-major; acts on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub n: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        IntMatrix { n, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn apply(&self, v: &[i64]) -> Vector {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.get(i, j);
            }
        }
        IntMatrix { n, data }
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

fn to_rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Row-reduce a rational matrix in place; returns pivot columns.
fn row_reduce(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a list of integer vectors.
pub fn rank(vectors: &[Vector]) -> usize {
    let mut m: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| to_rat(x)).collect())
        .collect();
    row_reduce(&mut m).len()
}

pub fn determinant(rows: &[Vec<i64>]) -> BigRational {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| to_rat(x)).collect())
        .collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for j in c..n {
                    let t = &f * &m[c][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    det
}

/// Coordinates with respect to a linearly independent family of integer
/// vectors. Precomputes a rational left inverse so repeated queries are
/// integer arithmetic plus one exactness check.
#[derive(Clone, Debug)]
pub struct CoordinateSystem {
    basis: Vec<Vector>,
    /// `coords = inv * x[selected] / denom`
    selected: Vec<usize>,
    inv: Vec<Vec<i64>>,
    denom: i64,
}

impl CoordinateSystem {
    /// Returns `None` if the basis is not linearly independent.
    pub fn new(basis: &[Vector]) -> Option<Self> {
        let k = basis.len();
        let n = basis.first().map(|b| b.len()).unwrap_or(0);
        if k == 0 {
            return Some(CoordinateSystem {
                basis: Vec::new(),
                selected: Vec::new(),
                inv: Vec::new(),
                denom: 1,
            });
        }
        // Columns of B are the basis vectors; pick k independent rows of B.
        let rows_t: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..k).map(|j| to_rat(basis[j][i])).collect())
            .collect();
        // Row reduce B^T to find independent rows of B.
        let mut bt: Vec<Vec<BigRational>> = (0..k)
            .map(|j| (0..n).map(|i| to_rat(basis[j][i])).collect())
            .collect();
        let selected = row_reduce(&mut bt);
        if selected.len() < k {
            return None;
        }
        // Square k x k matrix M[p][j] = basis[j][selected[p]]; invert.
        let mut aug: Vec<Vec<BigRational>> = selected
            .iter()
            .enumerate()
            .map(|(p, &i)| {
                let mut row = rows_t[i].clone();
                row.extend((0..k).map(|c| if c == p { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        row_reduce(&mut aug);
        let inv_rat: Vec<Vec<BigRational>> = aug.iter().map(|r| r[k..].to_vec()).collect();
        let mut denom = BigInt::one();
        for r in &inv_rat {
            for x in r {
                denom = num_integer::Integer::lcm(&denom, x.denom());
            }
        }
        let d = BigRational::from_integer(denom.clone());
        let inv = inv_rat
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        let y = (x * &d).to_integer();
                        i64::try_from(y).expect("coordinate inverse overflow")
                    })
                    .collect()
            })
            .collect();
        Some(CoordinateSystem {
            basis: basis.to_vec(),
            selected,
            inv,
            denom: i64::try_from(denom).expect("denominator overflow"),
        })
    }

    /// Rational coordinates `(num, denom)` if `x` lies in the rational span.
    pub fn rational_coords(&self, x: &[i64]) -> Option<(Vec<i64>, i64)> {
        let nums: Vec<i64> = self
            .inv
            .iter()
            .map(|row| row.iter().zip(&self.selected).map(|(a, &i)| a * x[i]).sum())
            .collect();
        // Verify the full equation sum c_j b_j = x (scaled by denom).
        for (i, &xi) in x.iter().enumerate() {
            let s: i64 = nums.iter().zip(&self.basis).map(|(c, b)| c * b[i]).sum();
            if s != xi * self.denom {
                return None;
            }
        }
        Some((nums, self.denom))
    }

    /// Integer coordinates if `x` lies in the lattice spanned by the basis.
    pub fn integer_coords(&self, x: &[i64]) -> Option<Vec<i64>> {
        let (nums, d) = self.rational_coords(x)?;
        if nums.iter().all(|c| c % d == 0) {
            Some(nums.into_iter().map(|c| c / d).collect())
        } else {
            None
        }
    }
}
