//! Simultaneous root finding (Aberth iteration) at arbitrary precision.

use std::cmp::Ordering;

use rug::float::Constant;
use rug::Float;

use crate::bigfloat::BigComplex;
use crate::QPoly;

pub const MAX_SWEEPS: usize = 200;

/// Extra bits carried internally so the stopping test at `prec` is reachable
/// for moderately ill-conditioned roots.
const GUARD_BITS: u32 = 32;

#[derive(Clone, Debug)]
pub struct Roots {
    /// Sorted by real part, then imaginary part.
    pub roots: Vec<BigComplex>,
    pub converged: bool,
    pub sweeps: usize,
}

/// All complex roots of a square-free polynomial. Convergence means every
/// correction in the last sweep satisfied `|w| <= 2^-(prec-10) * max(|z|, 1)`.
pub fn aberth(p: &QPoly, prec: u32) -> Roots {
    let Some(m) = p.degree().filter(|&m| m > 0) else {
        return Roots { roots: Vec::new(), converged: true, sweeps: 0 };
    };
    let work = prec + GUARD_BITS;
    let lead = p.leading().expect("nonzero").clone();
    let coeffs: Vec<BigComplex> = p.coeffs().iter().map(|c| BigComplex::from_rational(&(c / &lead), work)).collect();
    let dcoeffs: Vec<BigComplex> = (1..=m)
        .map(|k| {
            let c = &coeffs[k];
            let kf = BigComplex::from_f64(k as f64, 0.0, work);
            &kf * c
        })
        .collect();

    let mut z = initial_guesses(&coeffs, work);
    let tol_exp = -((prec as i32) - 10);
    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut all_small = true;
        for k in 0..m {
            let pz = horner(&coeffs, &z[k]);
            if pz.is_zero() {
                continue;
            }
            let dpz = horner(&dcoeffs, &z[k]);
            let Some(ratio) = pz.checked_div(&dpz) else {
                all_small = false;
                z[k] = &z[k] + &BigComplex::from_f64(1e-3, 1e-3, work);
                continue;
            };
            let mut sum = BigComplex::zero(work);
            for j in 0..m {
                if j != k {
                    if let Some(inv) = BigComplex::from_f64(1.0, 0.0, work).checked_div(&(&z[k] - &z[j])) {
                        sum = &sum + &inv;
                    }
                }
            }
            let one = BigComplex::from_f64(1.0, 0.0, work);
            let w = ratio.checked_div(&(&one - &(&ratio * &sum))).unwrap_or(ratio);
            let scale = z[k].abs().to_f64().max(1.0);
            let bound = Float::with_val(work, Float::i_exp(1, tol_exp)) * scale;
            if w.abs() > bound {
                all_small = false;
            }
            z[k] = &z[k] - &w;
        }
        if all_small {
            converged = true;
            break;
        }
    }
    let mut roots: Vec<BigComplex> =
        z.into_iter().map(|r| BigComplex::new(Float::with_val(prec, &r.re), Float::with_val(prec, &r.im))).collect();
    roots.sort_by(cmp_complex);
    Roots { roots, converged, sweeps }
}

pub(crate) fn cmp_complex(a: &BigComplex, b: &BigComplex) -> Ordering {
    a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal).then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
}

fn horner(coeffs: &[BigComplex], x: &BigComplex) -> BigComplex {
    let mut acc = BigComplex::zero(x.prec());
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Points on a circle whose radius is the Fujiwara bound of the monic
/// polynomial, rotated off the real axis.
fn initial_guesses(monic: &[BigComplex], prec: u32) -> Vec<BigComplex> {
    let m = monic.len() - 1;
    let mut radius: f64 = 0.0;
    for (i, c) in monic.iter().enumerate().take(m) {
        let a = c.abs().to_f64();
        if a > 0.0 {
            let mut r = a.powf(1.0 / (m - i) as f64);
            if i == 0 {
                r *= 0.5f64.powf(1.0 / m as f64);
            }
            radius = radius.max(r);
        }
    }
    let radius = Float::with_val(prec, if radius > 0.0 { radius } else { 1.0 });
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    (0..m)
        .map(|k| {
            let angle = Float::with_val(prec, &two_pi * k as u32) / m as u32 + 0.4f64;
            let (s, c) = angle.sin_cos(Float::new(prec));
            BigComplex::new(c * &radius, s * &radius)
        })
        .collect()
}

/// `|F(x)| / (max_i |c_i| * max(1, |x|)^deg F)`.
pub fn relative_residual(p: &QPoly, x: &BigComplex) -> f64 {
    let prec = x.prec();
    let coeffs: Vec<BigComplex> = p.coeffs().iter().map(|c| BigComplex::from_rational(c, prec)).collect();
    let value = horner(&coeffs, x).abs().to_f64();
    let norm = coeffs.iter().map(|c| c.abs().to_f64()).fold(0.0, f64::max);
    let growth = x.abs().to_f64().max(1.0).powi(coeffs.len().saturating_sub(1) as i32);
    if norm == 0.0 {
        0.0
    } else {
        value / (norm * growth)
    }
}
