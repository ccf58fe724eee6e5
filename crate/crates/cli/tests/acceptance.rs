//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;
use serde_json::{json, Value};

use lattes_core::bigfloat::BigComplex;
use lattes_core::cfrac::expand;
use lattes_core::dynsys::zeta_from_counts;
use lattes_core::pipeline::comparison_report;
use lattes_core::sft::{
    k_invariants, k_invariants_of, per_count_enumerate, per_count_trace, shift_equivalent, zeta_sft, SeCertificate,
    SeVerdict,
};
use lattes_core::{EllipticCurve, IntMatrix, QuadElem, QuadSurd, Rational, SftMatrix};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn matrix(n: usize, entries: Vec<i64>) -> IntMatrix {
    IntMatrix::new(n, n, entries.into_iter().map(BigInt::from).collect()).expect("square")
}

fn random_nonneg(rng: &mut ChaCha8Rng, n: usize, max: i64) -> SftMatrix {
    SftMatrix::new(matrix(n, (0..n * n).map(|_| rng.gen_range(0..=max)).collect())).expect("non-negative")
}

fn criterion_1() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_lattes");
    let start = Instant::now();
    let verify = Command::new(bin).args(["verify", "--output", "json"]).output().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(verify.status.success(), || format!("verify exited with {:?}", verify.status.code()))?;
    let report: Value = serde_json::from_slice(&verify.stdout).map_err(|e| e.to_string())?;
    ensure(report["passed"] == true, || format!("verify report: {report}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("verify took {elapsed:?}"))?;

    let out = Command::new(bin)
        .args(["functor", "--curve", "4,2,0", "--D", "2", "--eps", "0+1*sqrt(2)", "--output", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let expected = [
        ("A", json!([[0, 1], [2, 0]])),
        ("cf", json!("[0,1;(2)]")),
        ("T", json!([[2, 1], [1, 0]])),
        ("zeta", json!("1/(1-2t^2)")),
        ("theta_prime", json!("(0+sqrt(2))/2")),
        ("lattice", json!("Z+Z*(0+sqrt(2))/2")),
        ("index", json!(2)),
    ];
    ensure(v["K0"]["text"] == "0", || format!("K0: {}", v["K0"]))?;
    for (key, want) in expected {
        ensure(v[key] == want, || format!("{key}: expected {want}, got {}", v[key]))?;
    }
    Ok(format!("verify in {:.3} s; A, cf, T, zeta, sublattice, index and K0 exact", elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for code in 0..256u32 {
        let entries: Vec<i64> = (0..4).map(|k| ((code >> (2 * k)) & 3) as i64).collect();
        let a = SftMatrix::new(matrix(2, entries)).expect("non-negative");
        for n in 1..=6 {
            let t = per_count_trace(&a, n).map_err(|e| e.to_string())?;
            let e = per_count_enumerate(&a, n).map_err(|e| e.to_string())?;
            ensure(t == e, || format!("A = {a}, n = {n}: trace {t} vs enumeration {e}"))?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} (matrix, n) pairs agree in {:.2} s", elapsed.as_secs_f64()))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let a = random_nonneg(&mut rng, 2, 5);
        let counts: Vec<Rational> = (1..=8)
            .map(|n| per_count_trace(&a, n).map(Rational::from_integer))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let exp_series = zeta_from_counts(&counts, 8).map_err(|e| e.to_string())?;
        let rational: Vec<Rational> = zeta_sft(&a).series(8).into_iter().map(Rational::from_integer).collect();
        ensure(exp_series == rational, || format!("A = {a}: {exp_series:?} vs {rational:?}"))?;
    }
    Ok("50 random matrices agree through t^8".into())
}

fn random_curve(rng: &mut ChaCha8Rng) -> EllipticCurve {
    loop {
        let mut r = || Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into());
        if let Ok(e) = EllipticCurve::new(r(), r(), r()) {
            return e;
        }
    }
}

fn criterion_4() -> Outcome {
    let prec = 128;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let curve = random_curve(&mut rng);
        let phi = curve.duplication_map();
        let mut done = 0;
        while done < 100 {
            let x = BigComplex::from_f64(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0), prec);
            let y = curve.lift_y(&x);
            if y.abs().to_f64() < 1e-6 {
                continue;
            }
            let (x2, _) = curve.double_point(&x, &y, prec).map_err(|e| e.to_string())?;
            let Some(fx) = phi.eval_complex(&x) else { continue };
            let err = (&x2 - &fx).abs().to_f64() / fx.abs().to_f64().max(f64::MIN_POSITIVE);
            worst = worst.max(err);
            ensure(err < 1e-9, || format!("curve {curve}, x = {x}: relative error {err:e}"))?;
            done += 1;
        }
    }
    Ok(format!("1000 points on 10 curves, worst relative error {worst:.2e}"))
}

fn to_rug(x: &BigInt) -> rug::Integer {
    x.to_string().parse().expect("integer")
}

fn criterion_5() -> Outcome {
    let prec = 512;
    for d in [2u64, 3, 5, 7, 13] {
        let surd = QuadSurd::new(BigInt::from(0), BigInt::one(), BigInt::from(d)).map_err(|e| e.to_string())?;
        let cf = expand(&surd);
        let exact: Vec<BigInt> = cf.terms().take(30).cloned().collect();
        let alpha = Float::with_val(prec, d).sqrt();
        let mut x = alpha.clone();
        let mut oracle = Vec::new();
        for _ in 0..30 {
            let a = x.clone().floor();
            oracle.push(a.to_integer().expect("finite").to_string().parse::<BigInt>().expect("integer"));
            x = Float::with_val(prec, 1) / (x - a);
        }
        ensure(exact == oracle, || format!("sqrt({d}): {cf} disagrees with float oracle {oracle:?}"))?;
        for c in cf.convergents(30) {
            let p = Float::with_val(prec, to_rug(c.numer()));
            let q = Float::with_val(prec, to_rug(c.denom()));
            let gap = Float::with_val(prec, &alpha - Float::with_val(prec, &p / &q)).abs();
            let bound = Float::with_val(prec, 1) / Float::with_val(prec, &q * &q);
            ensure(gap < bound, || format!("sqrt({d}): convergent {c} violates |alpha - p/q| < 1/q^2"))?;
        }
    }
    Ok("sqrt(D), D in {2,3,5,7,13}: 30 partial quotients match the 512-bit oracle".into())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..20 {
        let a = random_nonneg(&mut rng, 2 + i % 2, 5);
        match shift_equivalent(&a, &a, 10, 6).map_err(|e| e.to_string())? {
            SeVerdict::Equivalent { certificate } if certificate.lag() == 1 => {}
            v => return Err(format!("({a}, {a}): {v}")),
        }
    }
    let a = matrix(2, vec![0, 1, 2, 0]);
    let b = matrix(2, vec![0, 2, 1, 0]);
    let (sa, sb) = (SftMatrix::new(a.clone()).unwrap(), SftMatrix::new(b.clone()).unwrap());
    let SeVerdict::Equivalent { certificate } = shift_equivalent(&sa, &sb, 10, 6).map_err(|e| e.to_string())? else {
        return Err("worked pair not certified".into());
    };
    let (r, s, k) = (certificate.r(), certificate.s(), certificate.lag());
    let equations = &a * r == r * &b && &b * s == s * &a && a.pow(k) == r * s && s * r == b.pow(k);
    ensure(equations, || "certificate fails the equations".into())?;
    ensure(SeCertificate::new(&a, &b, r.clone(), s.clone(), k).is_ok(), || "certificate rejected".into())?;
    // independent scan over lag 1, entries 0..=2, for the least (R, S)
    let mut least = None;
    'scan: for code in 0..3u32.pow(8) {
        let digits: Vec<i64> = (0..8).map(|i| ((code / 3u32.pow(7 - i)) % 3) as i64).collect();
        let (rr, ss) = (matrix(2, digits[..4].to_vec()), matrix(2, digits[4..].to_vec()));
        if &a * &rr == &rr * &b && &b * &ss == &ss * &a && a == &rr * &ss && &ss * &rr == b {
            least = Some((rr, ss));
            break 'scan;
        }
    }
    let (lr, ls) = least.ok_or("scan found nothing")?;
    ensure(k == 1 && r == &lr && s == &ls, || format!("certificate R = {r}, S = {s}, expected R = {lr}, S = {ls}"))?;
    let v = shift_equivalent(
        &SftMatrix::new(matrix(1, vec![2])).unwrap(),
        &SftMatrix::new(matrix(1, vec![3])).unwrap(),
        10,
        6,
    )
    .map_err(|e| e.to_string())?;
    ensure(matches!(v, SeVerdict::NotEquivalent { .. }), || format!("([[2]], [[3]]): {v}"))?;
    Ok(format!("20 reflexive pairs at lag 1; R = {r}, S = {s}; [[2]] vs [[3]] rejected"))
}

fn criterion_7() -> Outcome {
    let k = k_invariants(&SftMatrix::new(matrix(2, vec![0, 1, 2, 0])).unwrap());
    ensure(k.k0.is_trivial(), || format!("K0 of [[0,1],[2,0]] is {}", k.k0))?;
    let k = k_invariants(&SftMatrix::new(matrix(1, vec![3])).unwrap());
    ensure(k.k0.rank == 0 && k.k0.torsion == vec![BigInt::from(2)], || format!("K0 of [[3]] is {}", k.k0))?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 20 {
        let t = matrix(2, (0..4).map(|_| rng.gen_range(-3..=3)).collect());
        let det = t.det();
        if !det.abs().is_one() {
            continue;
        }
        let d = det.to_i64().unwrap();
        let (p, q, r, s) = (t.get(0, 0), t.get(0, 1), t.get(1, 0), t.get(1, 1));
        let inv = IntMatrix::from_rows(vec![vec![s * d, -q * d], vec![-r * d, p * d]]).unwrap();
        let a = random_nonneg(&mut rng, 2, 6).matrix().clone();
        let conj = &(&inv * &a) * &t;
        let (ka, kc) = (k_invariants_of(&a).unwrap(), k_invariants_of(&conj).unwrap());
        ensure(ka == kc, || format!("A = {a}, T = {t}: {ka:?} vs {kc:?}"))?;
        done += 1;
    }
    Ok("K0([[0,1],[2,0]]) = 0, K0([[3]]) = Z/2, 20 GL2(Z) conjugations preserve the invariants".into())
}

fn criterion_8() -> Outcome {
    let curve = EllipticCurve::from_ints(4, 2, 0).map_err(|e| e.to_string())?.with_cm(2);
    let eps: QuadElem = "0+1*sqrt(2)".parse().map_err(|e: lattes_core::Error| e.to_string())?;
    let report = comparison_report(&curve, &eps, 3).map_err(|e| e.to_string())?;
    ensure(report.rows.len() == 3, || "expected rows n = 1..3".into())?;
    let mut cells = Vec::new();
    for row in &report.rows {
        let expected = 4u128.pow(row.n) + 1;
        ensure(row.multiplicity_count == expected, || {
            format!("n = {}: multiplicity {}", row.n, row.multiplicity_count)
        })?;
        let enumerated = row.enumeration_count.map(BigInt::from);
        ensure(enumerated.as_ref() == Some(&row.trace_count), || format!("n = {}: trace vs enumeration", row.n))?;
        cells.push(format!(
            "n={} tr={} distinct={} mult={}",
            row.n, row.trace_count, row.distinct_count, row.multiplicity_count
        ));
    }
    Ok(format!("{}; trace vs distinct recorded, not asserted", cells.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("worked example reproduction", criterion_1),
        ("trace formula vs enumeration", criterion_2),
        ("zeta series identity", criterion_3),
        ("duplication oracle", criterion_4),
        ("continued-fraction engine", criterion_5),
        ("shift equivalence", criterion_6),
        ("K-theory via Smith form", criterion_7),
        ("periodic-point comparison harness", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} ({name}): PASS: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
