//! The witness pipeline: regular point, transversality, approximation of
//! θ inside H, then Gauss-Newton on {V equations, y_i - h_i·exp(x_i)}.

use algebra_core::{rat_from_str, Rat};
use gamma_config::HSpec;
use gamma_geometry::{CPoint, GSubvariety, NumericSystem};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};
use serde_json::{json, Value};
use std::f64::consts::TAU;

use crate::approx::{approximate_in_h, rat_f64};
use crate::regular::{fiber_stack_rank, random_unit, regular_attempt, Attempt};
use crate::WitnessError;

/// Restart budget: slicings, and Newton starts per slicing. The search is
/// sequential, so the first success in (slicing, start) order wins.
pub const MAX_SLICINGS: u32 = 16;
pub const STARTS_PER_SLICING: u32 = 32;

const GAMMA_NEWTON_ITERS: u32 = 64;

/// A certified numeric point of Γ_H^n ∩ V together with everything needed
/// to replay and re-verify it.
#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub point: CPoint,
    /// Per coordinate (p/q, r/s) with h_i = exp(p/q + (r/s)·2πi).
    pub h_exponents: Vec<(Rat, Rat)>,
    pub residual_variety: f64,
    pub residual_gamma: f64,
    pub jacobian_condition: f64,
    pub iterations: u32,
    pub seed: u64,
    pub tol: f64,
    pub qmax: u64,
}

pub(crate) fn h_value(e: &(Rat, Rat)) -> Complex64 {
    Complex64::from_polar(rat_f64(&e.0).exp(), TAU * rat_f64(&e.1))
}

fn gamma_residual(
    sys: &NumericSystem,
    n: usize,
    hval: &[Complex64],
    z: &[Complex64],
) -> DVector<Complex64> {
    let mut f = DVector::from_element(sys.len() + n, Complex64::new(0.0, 0.0));
    let base = sys.residual(z);
    for i in 0..sys.len() {
        f[i] = base[i];
    }
    for i in 0..n {
        f[sys.len() + i] = z[n + i] - hval[i] * z[i].exp();
    }
    f
}

fn gamma_jacobian(
    sys: &NumericSystem,
    n: usize,
    hval: &[Complex64],
    z: &[Complex64],
) -> DMatrix<Complex64> {
    let rows = sys.len() + n;
    let mut j = DMatrix::from_element(rows, 2 * n, Complex64::new(0.0, 0.0));
    let jb = sys.jacobian(z);
    for i in 0..sys.len() {
        for c in 0..2 * n {
            j[(i, c)] = jb[(i, c)];
        }
    }
    for i in 0..n {
        j[(sys.len() + i, i)] = -hval[i] * z[i].exp();
        j[(sys.len() + i, n + i)] = Complex64::new(1.0, 0.0);
    }
    j
}

fn gamma_newton(
    sys: &NumericSystem,
    n: usize,
    hval: &[Complex64],
    start: &[Complex64],
    tol: f64,
) -> Option<(Vec<Complex64>, u32)> {
    let mut z = start.to_vec();
    for it in 0..GAMMA_NEWTON_ITERS {
        let f = gamma_residual(sys, n, hval, &z);
        let err = f.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if err < tol {
            return Some((z, it));
        }
        if !err.is_finite() || err > 1e12 {
            return None;
        }
        let j = gamma_jacobian(sys, n, hval, &z);
        let svd = j.svd(true, true);
        let step = svd.solve(&f, 1e-13).ok()?;
        for c in 0..2 * n {
            z[c] -= step[c];
        }
    }
    None
}

/// Full witness search on a rotund, free V with dim V = n. Deterministic in
/// (V, H, seed, tol, qmax); the approximation step takes the best available
/// exponents at the denominator bound and leaves convergence to Newton.
pub fn find_witness(
    v: &GSubvariety,
    h: &HSpec,
    seed: u64,
    tol: f64,
    qmax: u64,
) -> Result<WitnessReport, WitnessError> {
    let n = v.n();
    let d = v.dim()?;
    if d != n as i64 {
        return Err(WitnessError::BadInput(format!(
            "witness search needs dim V = {n}, the defining ideal has dimension {d}"
        )));
    }
    if !(tol > 0.0) || tol < 1e-14 {
        return Err(WitnessError::BadInput(
            "tol must lie in [1e-14, inf) for a double-precision search".into(),
        ));
    }
    if qmax == 0 {
        return Err(WitnessError::BadInput("qmax must be at least 1".into()));
    }
    // reject blur groups the approximation step cannot express up front
    approximate_in_h(&[Complex64::new(1.0, 0.0)], h, qmax, f64::INFINITY)?;

    let sys = NumericSystem::new(v.ideal().gens(), 2 * n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut regular_seen = false;
    let mut converged_seen = false;
    let mut transversal_seen = false;
    for si in 0..MAX_SLICINGS {
        let dirs: Vec<Vec<Complex64>> = (0..n)
            .map(|_| (0..2 * n).map(|_| random_unit(&mut rng)).collect())
            .collect();
        let mut logged = false;
        for ki in 0..STARTS_PER_SLICING {
            let p = match regular_attempt(&sys, n, n, &dirs, &mut rng) {
                Attempt::NoConverge => continue,
                Attempt::Singular => {
                    converged_seen = true;
                    continue;
                }
                Attempt::Regular(p) => p,
            };
            converged_seen = true;
            regular_seen = true;
            let rho = fiber_stack_rank(&sys, n, &p);
            if rho < 2 * n {
                if !logged {
                    eprintln!(
                        "ax-check: slicing {si} start {ki}: stacked rank {rho} < {}, \
                         tangent overlap {}; a witness here would violate td - r >= d",
                        2 * n,
                        2 * n - rho
                    );
                    logged = true;
                }
                continue;
            }
            transversal_seen = true;
            let theta: Vec<Complex64> = (0..n).map(|i| p[n + i] * (-p[i]).exp()).collect();
            let hexp = approximate_in_h(&theta, h, qmax, f64::INFINITY)?;
            let hval: Vec<Complex64> = hexp.iter().map(h_value).collect();
            let Some((z, iterations)) = gamma_newton(&sys, n, &hval, &p, tol) else {
                continue;
            };
            if z[n..].iter().any(|y| y.norm() < 1e-8) {
                continue;
            }
            let f = gamma_residual(&sys, n, &hval, &z);
            let residual_variety = f
                .iter()
                .take(sys.len())
                .map(|c| c.norm())
                .fold(0.0, f64::max);
            let residual_gamma = f
                .iter()
                .skip(sys.len())
                .map(|c| c.norm())
                .fold(0.0, f64::max);
            let sv = gamma_jacobian(&sys, n, &hval, &z)
                .svd(false, false)
                .singular_values;
            let smax = sv.iter().cloned().fold(0.0, f64::max);
            let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
            let mut jacobian_condition = if smin > 0.0 { smax / smin } else { f64::MAX };
            if !jacobian_condition.is_finite() {
                jacobian_condition = f64::MAX;
            }
            return Ok(WitnessReport {
                point: CPoint::from_coords(&z),
                h_exponents: hexp,
                residual_variety,
                residual_gamma,
                jacobian_condition,
                iterations,
                seed,
                tol,
                qmax,
            });
        }
    }
    if transversal_seen {
        Err(WitnessError::NewtonDiverged)
    } else if regular_seen {
        Err(WitnessError::NoTransversalPoint)
    } else if converged_seen {
        Err(WitnessError::SingularLocusOnly)
    } else {
        Err(WitnessError::MaxRestartsExceeded(
            MAX_SLICINGS * STARTS_PER_SLICING,
        ))
    }
}

fn c_json(c: &Complex64) -> Value {
    json!([format!("{:e}", c.re), format!("{:e}", c.im)])
}

fn c_from_json(v: &Value) -> Result<Complex64, WitnessError> {
    let parts = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| WitnessError::BadInput("complex values are [re, im] strings".into()))?;
    let mut out = [0.0f64; 2];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part
            .as_str()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| WitnessError::BadInput(format!("bad coordinate {part}")))?;
    }
    Ok(Complex64::new(out[0], out[1]))
}

impl WitnessReport {
    pub fn to_json(&self) -> Value {
        json!({
            "point": {
                "x": self.point.x.iter().map(c_json).collect::<Vec<_>>(),
                "y": self.point.y.iter().map(c_json).collect::<Vec<_>>(),
            },
            "h_exponents": self
                .h_exponents
                .iter()
                .map(|(p, r)| json!([p.to_string(), r.to_string()]))
                .collect::<Vec<_>>(),
            "residual_variety": self.residual_variety,
            "residual_gamma": self.residual_gamma,
            "jacobian_condition": self.jacobian_condition,
            "iterations": self.iterations,
            "seed": self.seed,
            "tol": self.tol,
            "qmax": self.qmax,
            "precision": "f64",
        })
    }

    pub fn from_json(v: &Value) -> Result<WitnessReport, WitnessError> {
        let bad = |what: &str| WitnessError::BadInput(format!("report is missing {what}"));
        let complexes = |v: &Value, what: &str| -> Result<Vec<Complex64>, WitnessError> {
            v.as_array()
                .ok_or_else(|| bad(what))?
                .iter()
                .map(c_from_json)
                .collect()
        };
        let x = complexes(&v["point"]["x"], "point.x")?;
        let y = complexes(&v["point"]["y"], "point.y")?;
        if x.len() != y.len() {
            return Err(WitnessError::BadInput("mismatched x/y lengths".into()));
        }
        let h_exponents = v["h_exponents"]
            .as_array()
            .ok_or_else(|| bad("h_exponents"))?
            .iter()
            .map(|pair| {
                let parts = pair
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| bad("h_exponents entry"))?;
                let rat = |p: &Value| {
                    p.as_str()
                        .and_then(|s| rat_from_str(s).ok())
                        .ok_or_else(|| WitnessError::BadInput(format!("bad exponent {p}")))
                };
                Ok((rat(&parts[0])?, rat(&parts[1])?))
            })
            .collect::<Result<Vec<_>, WitnessError>>()?;
        let f = |key: &str| v[key].as_f64().ok_or_else(|| bad(key));
        let u = |key: &str| v[key].as_u64().ok_or_else(|| bad(key));
        Ok(WitnessReport {
            point: CPoint { x, y },
            h_exponents,
            residual_variety: f("residual_variety")?,
            residual_gamma: f("residual_gamma")?,
            jacobian_condition: f("jacobian_condition")?,
            iterations: u("iterations")? as u32,
            seed: u("seed")?,
            tol: f("tol")?,
            qmax: u("qmax")?,
        })
    }
}
