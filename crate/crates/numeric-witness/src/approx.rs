//! Bounded-denominator approximation of complex logarithms inside a blur
//! group H = exp(Q-span of a fixed exponent basis).

use algebra_core::Rat;
use gamma_config::HSpec;
use num_bigint::BigInt;
use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::WitnessError;

/// How close a parsed basis value must be to 1 or 2πi to count as that
/// lattice direction.
const BASIS_MATCH_TOL: f64 = 1e-9;

/// Best rational p/q with 1 <= q <= qmax approximating x, by continued
/// fraction convergents plus the final semiconvergent.
pub fn best_rational(x: f64, qmax: u64) -> Rat {
    let (p, q) = best_rational_i128(x, qmax.max(1) as i128);
    Rat::new(BigInt::from(p), BigInt::from(q))
}

fn best_rational_i128(x: f64, qmax: i128) -> (i128, i128) {
    let err = |p: i128, q: i128| (x - p as f64 / q as f64).abs();
    let a0 = x.floor();
    let mut p_prev = 1i128;
    let mut q_prev = 0i128;
    let mut p_cur = a0 as i128;
    let mut q_cur = 1i128;
    let mut best = (p_cur, q_cur);
    let mut rem = x - a0;
    for _ in 0..48 {
        if rem.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / rem;
        let a_f = inv.floor();
        if !(1.0..9.0e17).contains(&a_f) {
            break;
        }
        let a = a_f as i128;
        let (Some(p_next), Some(q_next)) = (
            a.checked_mul(p_cur).and_then(|v| v.checked_add(p_prev)),
            a.checked_mul(q_cur).and_then(|v| v.checked_add(q_prev)),
        ) else {
            break;
        };
        if q_next > qmax {
            // deepest semiconvergent still under the cap
            let k = (qmax - q_prev) / q_cur;
            if k >= 1 {
                let (ps, qs) = (k * p_cur + p_prev, k * q_cur + q_prev);
                if err(ps, qs) < err(best.0, best.1) {
                    best = (ps, qs);
                }
            }
            break;
        }
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        if err(p_cur, q_cur) < err(best.0, best.1) {
            best = (p_cur, q_cur);
        }
        rem = inv - a_f;
    }
    best
}

/// Componentwise: write the principal logarithm of t_i as α + β·2πi and
/// return rationals (p/q, r/s) with denominators at most `qmax` such that
/// |log t_i - (p/q + (r/s)·2πi)| < eps. The blur group decides which of the
/// two exponent directions are available; H = {1} pins every exponent to
/// (0, 0). Fails with the best achievable error when eps is out of reach.
pub fn approximate_in_h(
    t: &[Complex64],
    h: &HSpec,
    qmax: u64,
    eps: f64,
) -> Result<Vec<(Rat, Rat)>, WitnessError> {
    if t.is_empty() {
        return Err(WitnessError::BadInput("empty approximation target".into()));
    }
    if t.iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite() || z.norm() == 0.0)
    {
        return Err(WitnessError::BadInput(
            "approximation targets must be finite and nonzero".into(),
        ));
    }
    if qmax == 0 {
        return Err(WitnessError::BadInput("qmax must be at least 1".into()));
    }
    if !(eps > 0.0) {
        return Err(WitnessError::BadInput("eps must be positive".into()));
    }
    let (has_one, has_tau) = exponent_directions(h)?;
    let zero = Rat::from_integer(0.into());
    let mut out = Vec::with_capacity(t.len());
    let mut worst = 0.0f64;
    for z in t {
        let alpha = z.norm().ln();
        let beta = z.arg() / TAU;
        let p = if has_one {
            best_rational(alpha, qmax)
        } else {
            zero.clone()
        };
        let r = if has_tau {
            best_rational(beta, qmax)
        } else {
            zero.clone()
        };
        let err = (alpha - rat_f64(&p)).hypot(TAU * (beta - rat_f64(&r)));
        worst = worst.max(err);
        out.push((p, r));
    }
    if worst >= eps {
        return Err(WitnessError::PrecisionUnreachable { best: worst, qmax });
    }
    Ok(out)
}

/// Which of the directions 1 and 2πi the blur group exposes.
fn exponent_directions(h: &HSpec) -> Result<(bool, bool), WitnessError> {
    match h {
        HSpec::Trivial => Ok((false, false)),
        HSpec::LatticeExp(_) => {
            let mut has_one = false;
            let mut has_tau = false;
            for v in h.basis_values()? {
                if (v - Complex64::new(1.0, 0.0)).norm() < BASIS_MATCH_TOL {
                    has_one = true;
                } else if (v - Complex64::new(0.0, TAU)).norm() < BASIS_MATCH_TOL {
                    has_tau = true;
                } else {
                    return Err(WitnessError::BadInput(format!(
                        "unsupported exponent basis value {v}; only 1 and 2*pi*i are handled"
                    )));
                }
            }
            Ok((has_one, has_tau))
        }
        other => Err(WitnessError::BadInput(format!(
            "{other:?} has no exponent lattice to approximate in"
        ))),
    }
}

pub(crate) fn rat_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}
