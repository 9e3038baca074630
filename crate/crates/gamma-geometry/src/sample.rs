//! Floating-point sampling of points on a subvariety of G^n.
//!
//! Points are found by slicing with random affine hyperplanes through a
//! random start and running a Gauss-Newton iteration on the combined
//! system. Everything is seeded, so sampling is reproducible.

use algebra_core::Polynomial;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use crate::variety::GSubvariety;
use crate::GeomError;

/// A numeric point of G^n: x-part and y-part.
#[derive(Clone, Debug)]
pub struct CPoint {
    pub x: Vec<Complex64>,
    pub y: Vec<Complex64>,
}

impl CPoint {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Coordinates in ring order x1..xn, y1..yn.
    pub fn coords(&self) -> Vec<Complex64> {
        let mut c = self.x.clone();
        c.extend_from_slice(&self.y);
        c
    }

    pub fn from_coords(z: &[Complex64]) -> Self {
        let n = z.len() / 2;
        CPoint {
            x: z[..n].to_vec(),
            y: z[n..].to_vec(),
        }
    }
}

/// A polynomial flattened to f64 coefficients for fast repeated evaluation.
#[derive(Clone, Debug)]
struct CompiledPoly {
    terms: Vec<(Complex64, Vec<(usize, u16)>)>,
}

impl CompiledPoly {
    fn compile(p: &Polynomial) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| {
                let coef = Complex64::new(
                    c.re.to_f64().unwrap_or(f64::NAN),
                    c.im.to_f64().unwrap_or(f64::NAN),
                );
                (coef, m.iter().collect::<Vec<_>>())
            })
            .collect();
        CompiledPoly { terms }
    }

    fn eval(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, exps) in &self.terms {
            let mut t = *c;
            for &(v, e) in exps {
                t *= z[v].powi(e as i32);
            }
            acc += t;
        }
        acc
    }
}

/// Polynomial evaluation at a complex point (coordinates in ring order).
pub fn eval_poly(p: &Polynomial, z: &[Complex64]) -> Complex64 {
    CompiledPoly::compile(p).eval(z)
}

/// A polynomial system with its Jacobian, compiled for evaluation.
pub struct NumericSystem {
    pub n_vars: usize,
    polys: Vec<CompiledPoly>,
    jac: Vec<Vec<CompiledPoly>>,
}

impl NumericSystem {
    pub fn new(gens: &[Polynomial], n_vars: usize) -> Self {
        let polys: Vec<CompiledPoly> = gens.iter().map(CompiledPoly::compile).collect();
        let jac = gens
            .iter()
            .map(|g| {
                (0..n_vars)
                    .map(|v| CompiledPoly::compile(&g.partial(v)))
                    .collect()
            })
            .collect();
        NumericSystem { n_vars, polys, jac }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn residual(&self, z: &[Complex64]) -> DVector<Complex64> {
        DVector::from_iterator(self.polys.len(), self.polys.iter().map(|p| p.eval(z)))
    }

    pub fn jacobian(&self, z: &[Complex64]) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.polys.len(), self.n_vars, |i, j| self.jac[i][j].eval(z))
    }
}

/// An affine slice a . z = b.
#[derive(Clone, Debug)]
pub struct Slice {
    pub a: Vec<Complex64>,
    pub b: Complex64,
}

/// Gauss-Newton on the system plus affine slices, starting from `start`.
/// Returns the refined point when the residual drops below `tol`.
pub fn newton_refine(
    sys: &NumericSystem,
    slices: &[Slice],
    start: &[Complex64],
    max_iter: usize,
    tol: f64,
) -> Option<Vec<Complex64>> {
    let nv = sys.n_vars;
    let rows = sys.len() + slices.len();
    let mut z = start.to_vec();
    for _ in 0..max_iter {
        let mut f = DVector::from_element(rows, Complex64::new(0.0, 0.0));
        let base = sys.residual(&z);
        for i in 0..sys.len() {
            f[i] = base[i];
        }
        for (k, s) in slices.iter().enumerate() {
            let dot: Complex64 = s.a.iter().zip(&z).map(|(a, zi)| a * zi).sum();
            f[sys.len() + k] = dot - s.b;
        }
        let err = f.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if err < tol {
            return Some(z);
        }
        if !err.is_finite() || err > 1e12 {
            return None;
        }
        let mut j = DMatrix::from_element(rows, nv, Complex64::new(0.0, 0.0));
        let jb = sys.jacobian(&z);
        for i in 0..sys.len() {
            for c in 0..nv {
                j[(i, c)] = jb[(i, c)];
            }
        }
        for (k, s) in slices.iter().enumerate() {
            for c in 0..nv {
                j[(sys.len() + k, c)] = s.a[c];
            }
        }
        let svd = j.svd(true, true);
        let step = svd.solve(&f, 1e-13).ok()?;
        for c in 0..nv {
            z[c] -= step[c];
        }
    }
    None
}

fn random_unit(rng: &mut ChaCha8Rng) -> Complex64 {
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::new(theta.cos(), theta.sin())
}

/// Draws `count` numeric points on V, seeded and reproducible. Points keep
/// every y-coordinate away from zero. Fails with `SamplingFailed` when the
/// Newton iteration cannot locate smooth points.
pub fn sample_points(
    v: &GSubvariety,
    count: usize,
    seed: u64,
) -> Result<Vec<CPoint>, GeomError> {
    let n = v.n();
    let nv = 2 * n;
    let d = v.dim()?;
    if d < 0 {
        return Err(GeomError::MalformedVariety("empty variety".into()));
    }
    let sys = NumericSystem::new(v.ideal().gens(), nv);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let max_attempts = 40 * count.max(1);
    for _ in 0..max_attempts {
        if out.len() == count {
            break;
        }
        // random start: x anywhere moderate, y on a loose annulus
        let mut z: Vec<Complex64> = Vec::with_capacity(nv);
        for _ in 0..n {
            z.push(Complex64::new(
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
            ));
        }
        for _ in 0..n {
            let r = rng.gen_range(0.6..1.6);
            z.push(random_unit(&mut rng) * r);
        }
        // slices through the start pin down the remaining degrees of freedom
        let slices: Vec<Slice> = (0..d as usize)
            .map(|_| {
                let a: Vec<Complex64> = (0..nv).map(|_| random_unit(&mut rng)).collect();
                let b = a.iter().zip(&z).map(|(ai, zi)| ai * zi).sum();
                Slice { a, b }
            })
            .collect();
        let Some(p) = newton_refine(&sys, &slices, &z, 80, 1e-12) else {
            continue;
        };
        if p[n..].iter().any(|y| y.norm() < 1e-4) {
            continue;
        }
        if p.iter().any(|c| c.norm() > 1e6) {
            continue;
        }
        out.push(CPoint::from_coords(&p));
    }
    if out.len() < count {
        return Err(GeomError::SamplingFailed(format!(
            "found {} of {count} points after {max_attempts} attempts",
            out.len()
        )));
    }
    Ok(out)
}
