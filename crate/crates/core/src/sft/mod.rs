//! Subshifts of finite type given by non-negative integer matrices.

mod equivalence;

pub use equivalence::{gl2z_similar, shift_equivalent, SeCertificate, SeVerdict, SimilarityVerdict};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Poly;
use crate::normal_form::smith_diagonal;
use crate::IntMatrix;

/// Largest number of edge sequences `per_count_enumerate` will walk.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;

/// A square matrix with non-negative entries, with irreducibility and
/// primitivity computed once on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftMatrix {
    matrix: IntMatrix,
    irreducible: bool,
    primitive: bool,
}

impl SftMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} is not a square matrix",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.is_nonnegative() {
            return Err(Error::Precondition(format!("matrix {matrix} has a negative entry")));
        }
        let pattern = support(&matrix);
        let n = matrix.rows();
        let mut reach = pattern.clone();
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        let reach = bool_pow(&reach, n.saturating_sub(1) as u64);
        let irreducible = all_true(&reach);
        // Wielandt: a primitive matrix has A^((n-1)^2+1) > 0
        let primitive = irreducible && all_true(&bool_pow(&pattern, ((n - 1) * (n - 1) + 1) as u64));
        Ok(SftMatrix { matrix, irreducible, primitive })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    /// Number of edges of the associated multigraph.
    pub fn edge_count(&self) -> BigInt {
        self.matrix.entries().iter().sum()
    }
}

type BoolMatrix = Vec<Vec<bool>>;

fn support(m: &IntMatrix) -> BoolMatrix {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| !m.get(i, j).is_zero()).collect()).collect()
}

fn bool_mul(a: &BoolMatrix, b: &BoolMatrix) -> BoolMatrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] && b[k][j])).collect()).collect()
}

fn bool_pow(a: &BoolMatrix, mut e: u64) -> BoolMatrix {
    let n = a.len();
    let mut out: BoolMatrix = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            out = bool_mul(&out, &base);
        }
        base = bool_mul(&base, &base);
        e >>= 1;
    }
    out
}

fn all_true(a: &BoolMatrix) -> bool {
    a.iter().all(|r| r.iter().all(|&x| x))
}

fn check_period(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("period must be at least 1".into()));
    }
    Ok(())
}

/// `tr(A^n)`.
pub fn per_count_trace(a: &SftMatrix, n: u32) -> Result<BigInt> {
    check_period(n)?;
    Ok(a.matrix.pow(n).trace())
}

/// Closed edge paths of length `n` counted one by one in the multigraph
/// with `A[i][j]` parallel edges from `i` to `j`.
pub fn per_count_enumerate(a: &SftMatrix, n: u32) -> Result<BigInt> {
    check_period(n)?;
    let edges_big = a.edge_count();
    let over = || Error::BudgetExceeded(format!("{edges_big}^{n} edge sequences exceed {ENUMERATION_BUDGET}"));
    let edge_total = edges_big.to_u64().ok_or_else(over)?;
    let mut space: u64 = 1;
    for _ in 0..n {
        space = space.checked_mul(edge_total).filter(|&s| s <= ENUMERATION_BUDGET).ok_or_else(over)?;
    }
    // edges leaving each vertex, as (target) with multiplicity expanded
    let size = a.size();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); size];
    for (i, targets) in out_edges.iter_mut().enumerate() {
        for j in 0..size {
            let k = a.matrix.get(i, j).to_usize().expect("bounded by the edge budget");
            targets.extend(std::iter::repeat_n(j, k));
        }
    }
    let mut count: u64 = 0;
    // stack of (vertex, index of next edge to try)
    for start in 0..size {
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        while let Some(&(v, next)) = stack.last() {
            let depth = stack.len() - 1;
            if depth == n as usize {
                if v == start {
                    count += 1;
                }
                stack.pop();
                continue;
            }
            if next == out_edges[v].len() {
                stack.pop();
                continue;
            }
            stack.last_mut().expect("nonempty").1 += 1;
            stack.push((out_edges[v][next], 0));
        }
    }
    Ok(BigInt::from(count))
}

/// `num / den` in the variable `t` with `den(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaRational {
    pub num: Poly<BigInt>,
    pub den: Poly<BigInt>,
}

impl ZetaRational {
    /// Power-series coefficients of degree `0..=terms`.
    pub fn series(&self, terms: usize) -> Vec<BigInt> {
        let inv = self.den.series_inverse(terms + 1).expect("den(0) = 1");
        let mut out = vec![BigInt::zero(); terms + 1];
        for (i, c) in self.num.coeffs().iter().enumerate() {
            for (j, d) in inv.iter().enumerate() {
                if i + j <= terms {
                    out[i + j] += c * d;
                }
            }
        }
        out
    }
}

impl fmt::Display for ZetaRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.pretty("t");
        if self.den.is_one_poly() {
            return write!(f, "{num}");
        }
        let num = if self.num.degree().unwrap_or(0) > 0 { format!("({num})") } else { num };
        write!(f, "{num}/({})", self.den.pretty("t"))
    }
}

impl Serialize for ZetaRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

trait IsOnePoly {
    fn is_one_poly(&self) -> bool;
}

impl IsOnePoly for Poly<BigInt> {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.coeffs()[0].is_one()
    }
}

/// `1 / det(I - tA)`; the denominator is the reversed characteristic polynomial.
pub fn zeta_sft(a: &SftMatrix) -> ZetaRational {
    let cp = a.matrix.charpoly();
    let den = cp.reversed(a.size());
    ZetaRational { num: Poly::one(), den }
}

/// `Z^rank` plus the cyclic factors `Z/d` for each `d` in `torsion`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupInvariant {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupInvariant {
    /// Cokernel of an integer matrix, read off its Smith form.
    pub fn cokernel(m: &IntMatrix) -> Self {
        let diag = smith_diagonal(m);
        let rank = diag.iter().filter(|d| d.is_zero()).count() + m.rows().saturating_sub(diag.len());
        let torsion = diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
        AbelianGroupInvariant { rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroupInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for AbelianGroupInvariant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AbelianGroupInvariant", 3)?;
        st.serialize_field("rank", &self.rank)?;
        let torsion: Vec<crate::serde_int::Int<'_, BigInt>> = self.torsion.iter().map(crate::serde_int::Int).collect();
        st.serialize_field("torsion", &torsion)?;
        st.serialize_field("text", &self.to_string())?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KInvariants {
    #[serde(rename = "K0")]
    pub k0: AbelianGroupInvariant,
    #[serde(rename = "K1_rank")]
    pub k1_rank: usize,
    #[serde(rename = "BowenFranks")]
    pub bowen_franks: AbelianGroupInvariant,
}

/// `K0 = Z^n / (I - A^t) Z^n`, `K1 = ker(I - A^t)` (free, so only its rank),
/// and the Bowen-Franks group `Z^n / (I - A) Z^n`.
pub fn k_invariants(a: &SftMatrix) -> KInvariants {
    k_invariants_of(&a.matrix).expect("SFT matrices are square")
}

/// The same groups for any square integer matrix.
pub fn k_invariants_of(a: &IntMatrix) -> Result<KInvariants> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("K-theory needs a square matrix".into()));
    }
    let id = IntMatrix::identity(a.rows());
    let k0 = AbelianGroupInvariant::cokernel(&(&id - &a.transpose()));
    let bowen_franks = AbelianGroupInvariant::cokernel(&(&id - a));
    Ok(KInvariants { k1_rank: k0.rank, k0, bowen_franks })
}

/// Largest absolute eigenvalue, by power iteration in `f64`. Informational only.
pub fn spectral_radius(a: &SftMatrix) -> f64 {
    let n = a.size();
    let m: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| a.matrix.get(i, j).to_f64().unwrap_or(f64::MAX)).collect()).collect();
    // (A + I) shares the Perron vector and avoids periodic oscillation
    let mut v = vec![1.0; n];
    let mut lambda = 0.0;
    for _ in 0..10_000 {
        let w: Vec<f64> = (0..n).map(|i| v[i] + (0..n).map(|j| m[i][j] * v[j]).sum::<f64>()).collect();
        let norm = w.iter().cloned().fold(0.0, f64::max);
        if norm == 0.0 {
            return 0.0;
        }
        let next: Vec<f64> = w.iter().map(|x| x / norm).collect();
        let done = (norm - lambda).abs() <= 1e-14 * norm;
        lambda = norm;
        v = next;
        if done {
            break;
        }
    }
    lambda - 1.0
}

impl fmt::Display for SftMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

impl FromStr for SftMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SftMatrix::new(s.parse()?).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for SftMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(s)
    }
}
