//! Phase-diagonal encoding of adjacency matrices.
//!
//! An order-`N` adjacency matrix `A` becomes the `N^2`-entry sign diagonal
//! `(-1)^{A[i][j]}` on the basis `|i, j>` (index `i * N + j`). Signs are kept
//! as packed bits (set bit = `-1`), so composition is exact XOR.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;

/// Largest order for which [`distinguishable`] builds the doubled operators
/// explicitly.
pub const DOUBLING_ORDER_CAP: usize = 4;

/// Entrywise tolerance used when comparing dense operators.
const OPERATOR_TOLERANCE: f64 = 1e-10;

/// A `±1` diagonal of length `N^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SignsJson", into = "SignsJson")]
pub struct PhaseDiagonal {
    order: usize,
    words: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct SignsJson {
    order: usize,
    signs: Vec<i8>,
}

impl TryFrom<SignsJson> for PhaseDiagonal {
    type Error = Error;
    fn try_from(j: SignsJson) -> Result<Self> {
        PhaseDiagonal::from_signs(j.order, &j.signs)
    }
}

impl From<PhaseDiagonal> for SignsJson {
    fn from(d: PhaseDiagonal) -> Self {
        SignsJson { order: d.order, signs: d.signs() }
    }
}

impl PhaseDiagonal {
    /// All `+1`.
    pub fn identity(order: usize) -> Self {
        Self { order, words: vec![0; (order * order).div_ceil(64)] }
    }

    /// Builds a diagonal from explicit `±1` entries. Only symmetry under
    /// `(i, j) <-> (j, i)` is required, so diagonal `-1` entries (graphs with
    /// self-loops) are representable here even though [`AdjacencyMatrix`]
    /// rejects them.
    pub fn from_signs(order: usize, signs: &[i8]) -> Result<Self> {
        if order == 0 || !order.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(order));
        }
        if signs.len() != order * order {
            return Err(Error::SizeMismatch(format!("{} signs for order {order}", signs.len())));
        }
        let mut d = Self::identity(order);
        for (idx, &s) in signs.iter().enumerate() {
            match s {
                1 => {}
                -1 => d.words[idx / 64] |= 1 << (idx % 64),
                _ => return Err(Error::InvalidParameter(format!("sign {s} at {idx} is not ±1"))),
            }
        }
        for i in 0..order {
            for j in 0..i {
                if d.is_negative(i * order + j) != d.is_negative(j * order + i) {
                    return Err(Error::InvalidParameter(format!("signs not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(d)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of entries, `N^2`.
    pub fn len(&self) -> usize {
        self.order * self.order
    }

    pub fn is_empty(&self) -> bool {
        self.order == 0
    }

    #[inline]
    pub fn is_negative(&self, index: usize) -> bool {
        (self.words[index / 64] >> (index % 64)) & 1 == 1
    }

    pub fn sign(&self, index: usize) -> i8 {
        if self.is_negative(index) {
            -1
        } else {
            1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.len()).map(|i| self.sign(i)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

/// `exp(h(A))` as a sign diagonal.
pub fn phase_diagonal(a: &AdjacencyMatrix) -> PhaseDiagonal {
    let n = a.order();
    let mut d = PhaseDiagonal::identity(n);
    for i in 0..n {
        for j in 0..n {
            if a.get(i, j) {
                let idx = i * n + j;
                d.words[idx / 64] |= 1 << (idx % 64);
            }
        }
    }
    d
}

/// Product of two diagonals of the same order.
pub fn compose(d1: &PhaseDiagonal, d2: &PhaseDiagonal) -> Result<PhaseDiagonal> {
    if d1.order != d2.order {
        return Err(Error::SizeMismatch(format!("diagonal orders {} and {}", d1.order, d2.order)));
    }
    Ok(PhaseDiagonal { order: d1.order, words: d1.words.iter().zip(&d2.words).map(|(a, b)| a ^ b).collect() })
}

/// Embeds `b` in the upper-left block of a zero matrix of order `target_order`.
pub fn extend_pattern(b: &AdjacencyMatrix, target_order: usize) -> Result<AdjacencyMatrix> {
    if target_order < b.order() {
        return Err(Error::SizeMismatch(format!("cannot extend order {} down to {target_order}", b.order())));
    }
    let mut out = AdjacencyMatrix::zeros(target_order)?;
    for i in 0..b.order() {
        for j in i + 1..b.order() {
            if b.get(i, j) {
                out.set_edge(i, j);
            }
        }
    }
    Ok(out)
}

/// Dense square complex matrix, row-major. Only used for small operators.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    /// Conjugate-transpose.
    pub fn adjoint(&self) -> Self {
        let mut data = vec![Complex64::default(); self.data.len()];
        for r in 0..self.dim {
            for c in 0..self.dim {
                data[c * self.dim + r] = self.get(r, c).conj();
            }
        }
        Self { dim: self.dim, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut data = vec![Complex64::default(); n * n];
        for r in 0..n {
            for m in 0..n {
                let x = self.get(r, m);
                if x == Complex64::default() {
                    continue;
                }
                for c in 0..n {
                    data[r * n + c] += x * other.get(m, c);
                }
            }
        }
        Self { dim: n, data }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.data.iter().zip(&other.data).all(|(a, b)| (a - b).norm() <= tol)
    }
}

/// `H^{⊗m} D H^{⊗m}` for the diagonal `D`, where `m = 2k + 1` and
/// `D = I ⊕ exp(h(A))` when `controlled`, or `m = 2k` and `D = exp(h(A))`
/// otherwise.
pub fn log_hadamard_operator(d: &PhaseDiagonal, controlled: bool) -> DenseOperator {
    let n2 = d.len();
    let dim = if controlled { 2 * n2 } else { n2 };
    let entry = |x: usize| -> f64 {
        if controlled && x < n2 {
            1.0
        } else {
            d.sign(x % n2) as f64
        }
    };
    let scale = 1.0 / dim as f64;
    let mut data = vec![Complex64::default(); dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            let mut acc = 0.0;
            for x in 0..dim {
                let parity = ((r & x).count_ones() + (x & c).count_ones()) & 1;
                let h = if parity == 0 { 1.0 } else { -1.0 };
                acc += h * entry(x);
            }
            data[r * dim + c] = Complex64::new(acc * scale, 0.0);
        }
    }
    DenseOperator { dim, data }
}

/// Whether `conj(u) ⊗ u == conj(v) ⊗ v`, entry by entry. The doubled
/// operators are compared lazily so the `dim^2 x dim^2` tensor is never
/// stored; the first differing entry ends the scan.
pub fn doubled_equal(u: &DenseOperator, v: &DenseOperator) -> bool {
    if u.dim != v.dim {
        return false;
    }
    let n = u.dim;
    for r1 in 0..n {
        for c1 in 0..n {
            let (a1, b1) = (u.get(r1, c1).conj(), v.get(r1, c1).conj());
            for r2 in 0..n {
                for c2 in 0..n {
                    if (a1 * u.get(r2, c2) - b1 * v.get(r2, c2)).norm() > OPERATOR_TOLERANCE {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Whether the log-Hadamard operators of `a` and `b` are physically
/// distinguishable, i.e. differ after doubling (which erases global phase).
///
/// Up to [`DOUBLING_ORDER_CAP`] the doubled operators are compared entrywise.
/// Above it the answer is read off the sign diagonals, since doubling is
/// injective on log-Hadamard operators of adjacency matrices.
pub fn distinguishable(a: &AdjacencyMatrix, b: &AdjacencyMatrix) -> Result<bool> {
    if a.order() != b.order() {
        return Err(Error::SizeMismatch(format!("orders {} and {}", a.order(), b.order())));
    }
    let (da, db) = (phase_diagonal(a), phase_diagonal(b));
    if a.order() > DOUBLING_ORDER_CAP {
        return Ok(da != db);
    }
    let ua = log_hadamard_operator(&da, true);
    let ub = log_hadamard_operator(&db, true);
    Ok(!doubled_equal(&ua, &ub))
}
