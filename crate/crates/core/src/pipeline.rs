//! The end-to-end chain from a CM curve and a multiplier to a Cuntz-Krieger
//! matrix, plus comparison and self-check reports.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::cfrac::{expand, period_matrix};
use crate::dynsys::periodic_counts;
use crate::error::{Error, Result};
use crate::lattes::EllipticCurve;
use crate::lattice::{cm_to_rm, degree_of, scale_lattice, PseudoLattice};
use crate::ratmap::RationalMap;
use crate::sft::{
    gl2z_similar, k_invariants, per_count_enumerate, per_count_trace, shift_equivalent, zeta_sft,
    AbelianGroupInvariant, SeVerdict, SftMatrix, SimilarityVerdict, ZetaRational,
};
use crate::{CFrac, IntMatrix, QuadElem, QuadSurd};

/// Largest period `comparison_report` will iterate to.
pub const MAX_COMPARISON_PERIOD: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorOutput {
    #[serde(rename = "D")]
    pub d: u64,
    pub epsilon: QuadElem,
    #[serde(rename = "A")]
    pub a: IntMatrix,
    pub theta_prime: QuadSurd,
    pub cf: CFrac,
    #[serde(rename = "T")]
    pub t: IntMatrix,
    pub zeta: ZetaRational,
    #[serde(rename = "K0")]
    pub k0: AbelianGroupInvariant,
    /// `[Z + Z sqrt(D) : eps (Z + Z sqrt(D))]`.
    #[serde(serialize_with = "crate::serde_int::serialize")]
    pub index: BigInt,
    /// The normalized sublattice `Z + Z theta'`.
    pub lattice: PseudoLattice,
    /// Degree `|N(eps)|` of multiplication by `eps`.
    #[serde(serialize_with = "crate::serde_int::serialize")]
    pub endomorphism_degree: BigInt,
    /// Doubling map of the curve, when one was supplied.
    pub lattes_map: Option<RationalMap>,
    pub lattes_degree: Option<usize>,
}

/// The chain for `Z + Z sqrt(d)` and a multiplier `eps`, without a curve.
pub fn functor_rm(d: u64, eps: &QuadElem) -> Result<FunctorOutput> {
    let d = cm_to_rm(d)?;
    if eps.d() != d {
        return Err(Error::FieldMismatch { left: d, right: eps.d() });
    }
    let a = eps.companion_matrix()?;
    let sft = SftMatrix::new(a.clone()).map_err(|_| {
        Error::Precondition(format!("companion matrix {a} of {eps} has a negative entry, so it defines no subshift"))
    })?;
    let lattice = PseudoLattice::standard(d)?;
    let sub = scale_lattice(&lattice, eps)?;
    let theta_prime = sub.normalized.theta().clone();
    let cf = expand(&theta_prime);
    let t = period_matrix(&cf)?;
    Ok(FunctorOutput {
        d,
        epsilon: eps.clone(),
        a,
        theta_prime,
        cf,
        t,
        zeta: zeta_sft(&sft),
        k0: k_invariants(&sft).k0,
        index: sub.index,
        lattice: sub.normalized,
        endomorphism_degree: degree_of(eps),
        lattes_map: None,
        lattes_degree: None,
    })
}

/// The chain starting from a curve with complex multiplication by `sqrt(-D)`.
pub fn functor_f(curve: &EllipticCurve, eps: &QuadElem) -> Result<FunctorOutput> {
    let d = curve
        .cm_d()
        .ok_or_else(|| Error::Precondition("curve has no complex-multiplication discriminant set".into()))?;
    let mut out = functor_rm(d, eps)?;
    let phi = curve.duplication_map();
    out.lattes_degree = Some(phi.degree());
    out.lattes_map = Some(phi);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyVerdict {
    pub shift_equivalence: SeVerdict,
    pub gl2z_similarity: SimilarityVerdict,
}

/// Shift equivalence of the two matrices, with GL2(Z) similarity reported
/// alongside as corroboration.
pub fn conjugacy_test(
    first: &FunctorOutput,
    second: &FunctorOutput,
    entry_bound: u32,
    lag_bound: u32,
) -> Result<ConjugacyVerdict> {
    conjugacy_test_matrices(&first.a, &second.a, entry_bound, lag_bound)
}

pub fn conjugacy_test_matrices(
    a: &IntMatrix,
    b: &IntMatrix,
    entry_bound: u32,
    lag_bound: u32,
) -> Result<ConjugacyVerdict> {
    let (sa, sb) = (SftMatrix::new(a.clone())?, SftMatrix::new(b.clone())?);
    Ok(ConjugacyVerdict {
        shift_equivalence: shift_equivalent(&sa, &sb, entry_bound, lag_bound)?,
        gl2z_similarity: gl2z_similar(a, b, entry_bound)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub n: u32,
    /// `tr(A^n)`.
    #[serde(serialize_with = "crate::serde_int::serialize")]
    pub trace_count: BigInt,
    /// Closed paths counted by enumeration; `None` past the enumeration budget.
    pub enumeration_count: Option<u64>,
    /// Distinct solutions of `phi^n(x) = x` on the projective line.
    pub distinct_count: u128,
    /// Solutions counted with multiplicity, always `d^n + 1`.
    pub multiplicity_count: u128,
    pub infinity_fixed: bool,
    pub trace_matches_distinct: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub map: RationalMap,
    pub degree: usize,
    #[serde(rename = "A")]
    pub a: IntMatrix,
    pub rows: Vec<ComparisonRow>,
    pub note: String,
}

/// Periodic-point counts of the doubling map next to `tr(A^n)` for
/// `n = 1..=n_max`. Only the identities forced by construction are checked;
/// disagreement between the trace and the point counts is reported.
pub fn comparison_report(curve: &EllipticCurve, eps: &QuadElem, n_max: u32) -> Result<ComparisonReport> {
    if n_max == 0 || n_max > MAX_COMPARISON_PERIOD {
        return Err(Error::Precondition(format!("n_max must be in 1..={MAX_COMPARISON_PERIOD}, got {n_max}")));
    }
    let out = functor_f(curve, eps)?;
    let phi = out.lattes_map.clone().expect("functor_f sets the map");
    let sft = SftMatrix::new(out.a.clone())?;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let counts = periodic_counts(&phi, n)?;
        let trace = per_count_trace(&sft, n)?;
        let enumeration = match per_count_enumerate(&sft, n) {
            Ok(c) => Some(c),
            Err(Error::BudgetExceeded(_)) => None,
            Err(e) => return Err(e),
        };
        if let Some(e) = &enumeration {
            if e != &trace {
                return Err(Error::Precondition(format!("trace {trace} differs from enumeration {e} at n = {n}")));
            }
        }
        let expected = (phi.degree() as u128).pow(n) + 1;
        if counts.count_with_multiplicity != expected {
            return Err(Error::Precondition(format!("multiplicity count at n = {n} is not d^n + 1")));
        }
        rows.push(ComparisonRow {
            n,
            trace_matches_distinct: trace.to_u128() == Some(counts.count_distinct),
            trace_count: trace,
            enumeration_count: enumeration.and_then(|e| e.to_u64()),
            distinct_count: counts.count_distinct,
            multiplicity_count: counts.count_with_multiplicity,
            infinity_fixed: counts.infinity_fixed,
        });
    }
    let mismatched: Vec<String> = rows.iter().filter(|r| !r.trace_matches_distinct).map(|r| r.n.to_string()).collect();
    let note = if mismatched.is_empty() {
        "tr(A^n) equals the number of distinct periodic points for every n in the table".to_string()
    } else {
        format!(
            "tr(A^n) differs from the distinct periodic-point count of the degree-{} map at n = {}; \
             the map fixes infinity: {}; multiplication by the multiplier has degree {}",
            phi.degree(),
            mismatched.join(", "),
            rows.first().is_some_and(|r| r.infinity_fixed),
            out.endomorphism_degree.abs(),
        )
    };
    Ok(ComparisonReport { degree: phi.degree(), map: phi, a: out.a, rows, note })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Replays the worked example: curve `y^2 = x^3 + 4x^2 + 2x`, `D = 2`,
/// `eps = sqrt 2`, and compares every value with its known exact form.
pub fn verify_worked_example() -> Result<VerifyReport> {
    let curve = EllipticCurve::from_ints(4, 2, 0)?.with_cm(2);
    let eps: QuadElem = "0+1*sqrt(2)".parse()?;
    let out = functor_f(&curve, &eps)?;
    let phi = out.lattes_map.as_ref().expect("curve supplied");
    let expected: [(&'static str, &str, String); 9] = [
        ("A", "0,1;2,0", out.a.to_string()),
        ("theta_prime", "(0+sqrt(2))/2", out.theta_prime.to_string()),
        ("cf", "[0,1;(2)]", out.cf.to_string()),
        ("T", "2,1;1,0", out.t.to_string()),
        ("zeta", "1/(1-2t^2)", out.zeta.to_string()),
        ("lattice", "Z+Z*(0+sqrt(2))/2", out.lattice.to_string()),
        ("index", "2", out.index.to_string()),
        ("K0", "0", out.k0.to_string()),
        ("lattes_map", "4,0,-4,0,1 / 0,8,16,4", phi.to_string()),
    ];
    let checks: Vec<Check> = expected
        .into_iter()
        .map(|(name, want, got)| Check { name, ok: want == got, expected: want.to_string(), actual: got })
        .collect();
    let passed = checks.iter().all(|c| c.ok);
    Ok(VerifyReport { checks, passed })
}
