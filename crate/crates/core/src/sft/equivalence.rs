//! Bounded searches for shift equivalence over Z+ and GL2(Z) similarity.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{AbelianGroupInvariant, SftMatrix};
use crate::error::{Error, Result};
use crate::normal_form::smith_diagonal;
use crate::{IntMatrix, QMatrix, Rational};

/// Most candidate matrices either search will enumerate.
pub const SEARCH_BUDGET: u64 = 2_000_000;

/// Non-negative `R`, `S` and lag `k` with `AR = RB`, `BS = SA`, `A^k = RS`
/// and `SR = B^k`. Only constructible when all four hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeCertificate {
    #[serde(rename = "R")]
    r: IntMatrix,
    #[serde(rename = "S")]
    s: IntMatrix,
    k: u32,
}

impl SeCertificate {
    pub fn new(a: &IntMatrix, b: &IntMatrix, r: IntMatrix, s: IntMatrix, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("lag must be positive".into()));
        }
        if !r.is_nonnegative() || !s.is_nonnegative() {
            return Err(Error::Precondition("R and S must be non-negative".into()));
        }
        let holds = a.checked_mul(&r)? == r.checked_mul(b)?
            && b.checked_mul(&s)? == s.checked_mul(a)?
            && a.pow(k) == r.checked_mul(&s)?
            && s.checked_mul(&r)? == b.pow(k);
        if !holds {
            return Err(Error::Precondition("shift-equivalence equations fail".into()));
        }
        Ok(SeCertificate { r, s, k })
    }

    pub fn r(&self) -> &IntMatrix {
        &self.r
    }

    pub fn s(&self) -> &IntMatrix {
        &self.s
    }

    pub fn lag(&self) -> u32 {
        self.k
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum SeVerdict {
    Equivalent { certificate: SeCertificate },
    NotEquivalent { witness: String },
    Unknown { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum SimilarityVerdict {
    Similar {
        #[serde(rename = "T")]
        t: IntMatrix,
    },
    NotSimilar {
        witness: String,
    },
    Unknown {
        reason: String,
    },
}

impl fmt::Display for SeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeVerdict::Equivalent { certificate: c } => {
                write!(f, "Equivalent (lag {}, R = {}, S = {})", c.k, c.r, c.s)
            }
            SeVerdict::NotEquivalent { witness } => write!(f, "NotEquivalent ({witness})"),
            SeVerdict::Unknown { reason } => write!(f, "Unknown ({reason})"),
        }
    }
}

impl fmt::Display for SimilarityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimilarityVerdict::Similar { t } => write!(f, "Similar (T = {t})"),
            SimilarityVerdict::NotSimilar { witness } => write!(f, "NotSimilar ({witness})"),
            SimilarityVerdict::Unknown { reason } => write!(f, "Unknown ({reason})"),
        }
    }
}

/// Characteristic polynomial with the factor `t^m` of the nilpotent part removed.
fn nonzero_charpoly(a: &IntMatrix) -> Vec<BigInt> {
    let cp = a.charpoly();
    let z = cp.trailing_zeros().unwrap_or(0);
    cp.coeffs()[z..].to_vec()
}

fn check_bounds(entry_bound: u32, lag_bound: u32) -> Result<()> {
    if entry_bound == 0 || lag_bound == 0 {
        return Err(Error::Precondition("search bounds must be at least 1".into()));
    }
    Ok(())
}

fn search_space(values: u64, cells: usize) -> Option<u64> {
    let mut total: u64 = 1;
    for _ in 0..cells {
        total = total.checked_mul(values).filter(|&t| t <= SEARCH_BUDGET)?;
    }
    Some(total)
}

/// All `n x n` matrices with entries from `values`, in lexicographic order of
/// their row-major entry sequence (ordered as `values` is).
fn for_each_matrix(n: usize, values: &[BigInt], mut f: impl FnMut(&IntMatrix) -> bool) {
    let cells = n * n;
    let mut idx = vec![0usize; cells];
    loop {
        let m = IntMatrix::new(n, n, idx.iter().map(|&i| values[i].clone()).collect()).expect("square");
        if f(&m) {
            return;
        }
        let mut pos = cells;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < values.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Decides shift equivalence over Z+ as far as the invariants and a bounded
/// search allow. The certificate returned is the least in the order
/// (lag, R, S) with matrices compared entrywise in row-major order.
pub fn shift_equivalent(a: &SftMatrix, b: &SftMatrix, entry_bound: u32, lag_bound: u32) -> Result<SeVerdict> {
    check_bounds(entry_bound, lag_bound)?;
    if a.size() != b.size() {
        return Err(Error::DimensionMismatch(format!("sizes {} and {}", a.size(), b.size())));
    }
    let (am, bm) = (a.matrix(), b.matrix());
    if am == bm {
        let cert = SeCertificate::new(am, bm, IntMatrix::identity(a.size()), am.clone(), 1)?;
        return Ok(SeVerdict::Equivalent { certificate: cert });
    }
    if let Some(witness) = se_obstruction(am, bm) {
        return Ok(SeVerdict::NotEquivalent { witness });
    }
    let n = a.size();
    let values: Vec<BigInt> = (0..=entry_bound).map(BigInt::from).collect();
    if search_space(values.len() as u64, n * n).is_none() {
        return Ok(SeVerdict::Unknown {
            reason: format!("({}+1)^{} candidates exceed the search budget {SEARCH_BUDGET}", entry_bound, n * n),
        });
    }
    let mut r_list = Vec::new();
    let mut s_list = Vec::new();
    for_each_matrix(n, &values, |m| {
        if am * m == m * bm {
            r_list.push(m.clone());
        }
        if bm * m == m * am {
            s_list.push(m.clone());
        }
        false
    });
    let bound = BigInt::from(entry_bound);
    for k in 1..=lag_bound {
        let (ak, bk) = (am.pow(k), bm.pow(k));
        for r in &r_list {
            let rq: QMatrix = r.map(|x| Rational::from_integer(x.clone()));
            let candidates: Vec<IntMatrix> = match rq.inverse() {
                Some(inv) => {
                    let s = &inv * &ak.map(|x| Rational::from_integer(x.clone()));
                    if s.entries().iter().all(|x| x.is_integer() && !x.is_negative() && x.to_integer() <= bound) {
                        let s = s.map(|x| x.to_integer());
                        if bm * &s == &s * am {
                            vec![s]
                        } else {
                            vec![]
                        }
                    } else {
                        vec![]
                    }
                }
                None => s_list.clone(),
            };
            for s in candidates {
                if r * &s == ak && &s * r == bk {
                    let cert = SeCertificate::new(am, bm, r.clone(), s, k)?;
                    return Ok(SeVerdict::Equivalent { certificate: cert });
                }
            }
        }
    }
    Ok(SeVerdict::Unknown { reason: format!("no certificate with entries <= {entry_bound} and lag <= {lag_bound}") })
}

/// An invariant of shift equivalence that tells `A` and `B` apart.
fn se_obstruction(a: &IntMatrix, b: &IntMatrix) -> Option<String> {
    let (ta, tb) = (a.trace(), b.trace());
    if ta != tb {
        return Some(format!("trace {ta} != {tb}"));
    }
    let (da, db) = (a.det(), b.det());
    if !da.is_zero() && !db.is_zero() && da != db {
        return Some(format!("determinant {da} != {db}"));
    }
    let (ca, cb) = (nonzero_charpoly(a), nonzero_charpoly(b));
    if ca != cb {
        let show = |c: &[BigInt]| crate::exactnum::Poly::new(c.to_vec()).pretty("t");
        return Some(format!("nonzero spectrum differs: {} vs {}", show(&ca), show(&cb)));
    }
    let id = IntMatrix::identity(a.rows());
    let (ga, gb) = (AbelianGroupInvariant::cokernel(&(&id - a)), AbelianGroupInvariant::cokernel(&(&id - b)));
    if ga != gb {
        return Some(format!("Bowen-Franks group {ga} != {gb}"));
    }
    None
}

/// Integers in the order 0, 1, -1, 2, -2, ... up to `bound`.
fn signed_values(bound: u32) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero()];
    for i in 1..=bound as i64 {
        v.push(BigInt::from(i));
        v.push(BigInt::from(-i));
    }
    v
}

/// Looks for `T` in GL2(Z) with `T^-1 A T = B`, trying smaller max-norm first.
pub fn gl2z_similar(a: &IntMatrix, b: &IntMatrix, bound: u32) -> Result<SimilarityVerdict> {
    if bound == 0 {
        return Err(Error::Precondition("search bound must be at least 1".into()));
    }
    for (name, m) in [("A", a), ("B", b)] {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::DimensionMismatch(format!("{name} must be 2x2")));
        }
    }
    if a == b {
        return Ok(SimilarityVerdict::Similar { t: IntMatrix::identity(2) });
    }
    if a.charpoly() != b.charpoly() {
        return Ok(SimilarityVerdict::NotSimilar { witness: "characteristic polynomials differ".into() });
    }
    if let Some(w) = similarity_obstruction(a, b) {
        return Ok(SimilarityVerdict::NotSimilar { witness: w });
    }
    let values = signed_values(bound);
    if search_space(values.len() as u64, 4).is_none() {
        return Ok(SimilarityVerdict::Unknown { reason: format!("bound {bound} exceeds the search budget") });
    }
    let mut best: Option<(BigInt, IntMatrix)> = None;
    for_each_matrix(2, &values, |t| {
        if !t.det().abs().is_one() || a * t != t * b {
            return false;
        }
        let norm = t.entries().iter().map(|x| x.abs()).max().expect("nonempty");
        if best.as_ref().is_none_or(|(n, _)| &norm < n) {
            best = Some((norm, t.clone()));
        }
        false
    });
    Ok(match best {
        Some((_, t)) => SimilarityVerdict::Similar { t },
        None => SimilarityVerdict::Unknown { reason: format!("no T with entries bounded by {bound}") },
    })
}

/// Compares the Smith forms of `A - cI` and `B - cI` for integer eigenvalues
/// `c` and a few small shifts.
fn similarity_obstruction(a: &IntMatrix, b: &IntMatrix) -> Option<String> {
    let cp = a.charpoly();
    let mut shifts: Vec<i64> = (-2..=2).collect();
    // integer roots of the monic charpoly divide its constant term
    let c0 = cp.coeff(0);
    if let Some(c) = c0.abs().to_i64() {
        for d in 1..=c.min(10_000) {
            if c % d == 0 {
                shifts.extend([d, -d]);
            }
        }
    }
    if c0.is_zero() {
        shifts.push(0);
    }
    shifts.sort_unstable();
    shifts.dedup();
    for c in shifts {
        let ci = IntMatrix::scalar(2, BigInt::from(c));
        let (sa, sb) = (smith_diagonal(&(a - &ci)), smith_diagonal(&(b - &ci)));
        if sa != sb {
            let show = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            return Some(format!("Smith form of A-({c})I is [{}] but of B-({c})I is [{}]", show(&sa), show(&sb)));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sft(s: &str) -> SftMatrix {
        s.parse().unwrap()
    }

    fn m(s: &str) -> IntMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example_pair() {
        let v = shift_equivalent(&sft("0,1;2,0"), &sft("0,2;1,0"), 10, 6).unwrap();
        let SeVerdict::Equivalent { certificate: c } = v else { panic!("{v}") };
        assert_eq!((c.r(), c.s(), c.lag()), (&m("0,1;1,0"), &m("2,0;0,1"), 1));
    }

    #[test]
    fn reflexive_and_filtered() {
        let a = sft("1,2;3,0");
        let SeVerdict::Equivalent { certificate: c } = shift_equivalent(&a, &a, 10, 6).unwrap() else { panic!() };
        assert_eq!((c.r(), c.lag()), (&IntMatrix::identity(2), 1));
        let v = shift_equivalent(&sft("2"), &sft("3"), 10, 6).unwrap();
        assert!(matches!(v, SeVerdict::NotEquivalent { .. }), "{v}");
        assert!(shift_equivalent(&sft("2"), &sft("2,0;0,0"), 10, 6).is_err());
        assert!(shift_equivalent(&a, &a, 0, 6).is_err());
    }

    #[test]
    fn nilpotent_part_is_ignored() {
        // [[1,1],[0,0]] has nonzero spectrum {1}, like [[1,0],[1,0]]
        let v = shift_equivalent(&sft("1,1;0,0"), &sft("1,0;1,0"), 3, 3).unwrap();
        assert!(matches!(v, SeVerdict::Equivalent { .. }), "{v}");
    }

    #[test]
    fn budget_gives_unknown() {
        let a = sft("1,1,0;0,1,1;1,0,1");
        let b = sft("1,0,1;1,1,0;0,1,1");
        let v = shift_equivalent(&a, &b, 10, 2).unwrap();
        assert!(matches!(v, SeVerdict::Unknown { .. }), "{v}");
    }

    #[test]
    fn certificate_rejects_false_claims() {
        let a = m("0,1;2,0");
        assert!(SeCertificate::new(&a, &a, IntMatrix::identity(2), IntMatrix::identity(2), 1).is_err());
        assert!(SeCertificate::new(&a, &a, IntMatrix::identity(2), a.clone(), 0).is_err());
    }

    #[test]
    fn similarity_examples() {
        let a = m("0,1;2,0");
        assert_eq!(gl2z_similar(&a, &a, 3).unwrap(), SimilarityVerdict::Similar { t: IntMatrix::identity(2) });
        assert_eq!(gl2z_similar(&a, &m("0,2;1,0"), 3).unwrap(), SimilarityVerdict::Similar { t: m("0,1;1,0") });
        let v = gl2z_similar(&m("2,0;0,2"), &m("2,1;0,2"), 3).unwrap();
        assert!(matches!(v, SimilarityVerdict::NotSimilar { .. }), "{v}");
        let v = gl2z_similar(&a, &m("1,1;1,0"), 3).unwrap();
        assert!(matches!(v, SimilarityVerdict::NotSimilar { .. }));
        assert!(gl2z_similar(&a, &a, 0).is_err());
    }

    #[test]
    fn json_shape() {
        let v = shift_equivalent(&sft("0,1;2,0"), &sft("0,2;1,0"), 10, 6).unwrap();
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["verdict"], "Equivalent");
        assert_eq!(j["certificate"]["R"], serde_json::json!([[0, 1], [1, 0]]));
        assert_eq!(j["certificate"]["k"], 1);
    }

    fn gl2() -> impl Strategy<Value = IntMatrix> {
        prop::collection::vec(-3i64..=3, 4).prop_filter_map("not unimodular", |v| {
            let t = IntMatrix::new(2, 2, v.into_iter().map(BigInt::from).collect()).ok()?;
            t.det().abs().is_one().then_some(t)
        })
    }

    fn small(max: i64) -> impl Strategy<Value = IntMatrix> {
        prop::collection::vec(0..=max, 4)
            .prop_map(|v| IntMatrix::new(2, 2, v.into_iter().map(BigInt::from).collect()).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn certificates_reverify(a in small(3), b in small(3)) {
            let (sa, sb) = (SftMatrix::new(a.clone()).unwrap(), SftMatrix::new(b.clone()).unwrap());
            if let SeVerdict::Equivalent { certificate: c } = shift_equivalent(&sa, &sb, 3, 2).unwrap() {
                prop_assert!(SeCertificate::new(&a, &b, c.r().clone(), c.s().clone(), c.lag()).is_ok());
            }
        }

        #[test]
        fn conjugates_are_found(a in small(4), t in gl2()) {
            let inv = t.map(|x| Rational::from_integer(x.clone())).inverse().unwrap().map(|x| x.to_integer());
            let b = &(&inv * &a) * &t;
            let v = gl2z_similar(&a, &b, 3).unwrap();
            prop_assert!(!matches!(v, SimilarityVerdict::NotSimilar { .. }), "{}", v);
            if let SimilarityVerdict::Similar { t: found } = v {
                prop_assert_eq!(&a * &found, &found * &b);
            }
        }
    }
}
