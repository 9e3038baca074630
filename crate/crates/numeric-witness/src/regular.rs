//! Regular-point search and the fiber transversality test.
//!
//! A point of V is regular when the Jacobian of the defining equations has
//! numerical rank equal to the codimension of V in the 2n ambient
//! coordinates. Transversality at a point a asks that the tangent space of
//! V meets the tangent space of the θ-fiber {(x, c·exp x)} through a only
//! in zero; stacking the variety Jacobian over the fiber equations' Jacobian
//! [-diag(a_y) | I] turns that into a full-rank test.

use gamma_geometry::{newton_refine, CPoint, GSubvariety, GeomError, NumericSystem, Slice};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use crate::WitnessError;

/// Residual bound for the inner point refinement.
pub(crate) const POINT_TOL: f64 = 1e-12;
/// How far off V a queried point may sit before it is rejected.
pub(crate) const ON_V_TOL: f64 = 1e-8;
/// Singular values below max(RANK_ABS, σ_max·RANK_RTOL) do not count
/// towards numerical rank. The absolute floor catches non-reduced equations
/// such as (y-x)^2, whose Jacobian shrinks with the refinement residual.
const RANK_ABS: f64 = 1e-5;
const RANK_RTOL: f64 = 1e-8;

const REGULAR_RESTARTS: u32 = 512;

/// Refined points farther out than this are discarded: witness points live
/// at desk scale, and far-out points lose the residual accuracy that the
/// rank floor relies on (evaluating a degree-d polynomial at |z| ~ 10^3
/// leaves only ~10^-10 of absolute accuracy).
const MAX_COORD: f64 = 100.0;

pub(crate) fn numeric_rank(m: &DMatrix<Complex64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let thresh = RANK_ABS.max(smax * RANK_RTOL);
    sv.iter().filter(|s| **s > thresh).count()
}

pub(crate) fn random_unit(rng: &mut ChaCha8Rng) -> Complex64 {
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::new(theta.cos(), theta.sin())
}

/// Random start with moderate x and y on a loose annulus, as the sampler
/// draws them.
pub(crate) fn draw_start(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let mut z = Vec::with_capacity(2 * n);
    for _ in 0..n {
        z.push(Complex64::new(
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
        ));
    }
    for _ in 0..n {
        let r = rng.gen_range(0.6..1.6);
        z.push(random_unit(rng) * r);
    }
    z
}

pub(crate) enum Attempt {
    NoConverge,
    Singular,
    Regular(Vec<Complex64>),
}

/// One seeded sampling attempt: slice along `dirs` through a fresh random
/// start, refine, filter degenerate points, then rank-test the Jacobian.
pub(crate) fn regular_attempt(
    sys: &NumericSystem,
    n: usize,
    codim: usize,
    dirs: &[Vec<Complex64>],
    rng: &mut ChaCha8Rng,
) -> Attempt {
    let z = draw_start(rng, n);
    let slices: Vec<Slice> = dirs
        .iter()
        .map(|a| {
            let b = a.iter().zip(&z).map(|(ai, zi)| ai * zi).sum();
            Slice { a: a.clone(), b }
        })
        .collect();
    let Some(p) = newton_refine(sys, &slices, &z, 80, POINT_TOL) else {
        return Attempt::NoConverge;
    };
    if p[n..].iter().any(|y| y.norm() < 1e-4) || p.iter().any(|c| c.norm() > MAX_COORD) {
        return Attempt::NoConverge;
    }
    if numeric_rank(&sys.jacobian(&p)) == codim {
        Attempt::Regular(p)
    } else {
        Attempt::Singular
    }
}

/// Seeded search for a regular point of V: random affine slicing plus
/// Newton refinement from random complex starts, keeping the first point
/// whose Jacobian reaches full codimension rank.
pub fn find_regular_point(v: &GSubvariety, seed: u64) -> Result<CPoint, WitnessError> {
    let n = v.n();
    let d = v.dim()?;
    if d < 0 {
        return Err(GeomError::MalformedVariety("empty variety".into()).into());
    }
    let codim = (2 * n) as i64 - d;
    let sys = NumericSystem::new(v.ideal().gens(), 2 * n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut converged = 0u32;
    for _ in 0..REGULAR_RESTARTS {
        let dirs: Vec<Vec<Complex64>> = (0..d as usize)
            .map(|_| (0..2 * n).map(|_| random_unit(&mut rng)).collect())
            .collect();
        match regular_attempt(&sys, n, codim as usize, &dirs, &mut rng) {
            Attempt::Regular(p) => return Ok(CPoint::from_coords(&p)),
            Attempt::Singular => converged += 1,
            Attempt::NoConverge => {}
        }
    }
    if converged > 0 {
        Err(WitnessError::SingularLocusOnly)
    } else {
        Err(WitnessError::MaxRestartsExceeded(REGULAR_RESTARTS))
    }
}

/// Stack the variety Jacobian over the θ-fiber Jacobian [-diag(y) | I] and
/// return the numerical rank; 2n means the tangent spaces meet trivially.
pub(crate) fn fiber_stack_rank(sys: &NumericSystem, n: usize, z: &[Complex64]) -> usize {
    let rows = sys.len() + n;
    let mut k = DMatrix::from_element(rows, 2 * n, Complex64::new(0.0, 0.0));
    let jb = sys.jacobian(z);
    for i in 0..sys.len() {
        for c in 0..2 * n {
            k[(i, c)] = jb[(i, c)];
        }
    }
    for i in 0..n {
        k[(sys.len() + i, i)] = -z[n + i];
        k[(sys.len() + i, n + i)] = Complex64::new(1.0, 0.0);
    }
    numeric_rank(&k)
}

/// True when the tangent space of V at `a` intersects the tangent space of
/// the θ-fiber through `a` trivially, licensing local inversion of θ.
pub fn check_fiber_transversality(v: &GSubvariety, a: &CPoint) -> Result<bool, WitnessError> {
    let n = v.n();
    if a.n() != n {
        return Err(WitnessError::BadInput(format!(
            "point lives in G^{} but the variety sits in G^{n}",
            a.n()
        )));
    }
    let z = a.coords();
    if z.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(WitnessError::BadInput("non-finite coordinates".into()));
    }
    if a.y.iter().any(|y| y.norm() == 0.0) {
        return Err(WitnessError::BadInput("zero y-coordinate".into()));
    }
    let sys = NumericSystem::new(v.ideal().gens(), 2 * n);
    let worst = sys.residual(&z).iter().map(|c| c.norm()).fold(0.0, f64::max);
    if worst > ON_V_TOL {
        return Err(GeomError::PointNotOnVariety.into());
    }
    Ok(fiber_stack_rank(&sys, n, &z) == 2 * n)
}
