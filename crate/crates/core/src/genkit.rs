//! Seeded generators of Dupin cyclides with known parameters, negatives near
//! the variety, and point samplers.

use nalgebra::{DMatrix, Vector3};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::darboux::{apply_motion, DarbouxCoefficients, EuclideanMotion};
use crate::recognize::recognize_quartic_oracle;
use crate::scalar::{k, Rational, Scalar, TolerancePolicy};
use crate::Error;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Canonical quartic with `s = alpha^2, t = gamma^2, u = delta^2` and
/// `m = alpha gamma delta`. The torus with radii r < R is `(R^2, 0, r^2, 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticSeed<T> {
    pub s: T,
    pub t: T,
    pub u: T,
    pub m: T,
}

impl<T: Scalar> QuarticSeed<T> {
    pub fn torus(r2: T, big_r2: T) -> Self {
        QuarticSeed { s: big_r2, t: T::zero(), u: r2, m: T::zero() }
    }

    pub fn coefficients(&self) -> DarbouxCoefficients<T> {
        let (s, t, u) = (&self.s, &self.t, &self.u);
        let two = k::<T>(2);
        let mut c = DarbouxCoefficients::zero();
        c.a0 = T::one();
        c.c = [
            -(two.clone() * &(s.clone() + t + u)),
            two.clone() * &(t.clone() - s - u),
            two * &(s.clone() - t - u),
        ];
        c.e[0] = k::<T>(4) * &self.m;
        let w = s.clone() - t - u;
        c.f0 = w.clone() * &w - &(k::<T>(4) * t * u);
        c
    }
}

/// `2x r - (p+q)x^2 - p y^2 - q z^2 + pq/2 x`
pub fn canonical_cubic<T: Scalar>(p: &T, q: &T) -> DarbouxCoefficients<T> {
    let mut c = DarbouxCoefficients::zero();
    c.b[0] = T::one();
    c.c = [-(p.clone() + q), -p.clone(), -q.clone()];
    c.e[0] = p.clone() * q / &k(4);
    c
}

/// Rotation from the quaternion `(a, b, c, d)`, exact over the rationals.
pub fn quaternion_rotation(a: i64, b: i64, c: i64, d: i64) -> [[Rational; 3]; 3] {
    let n = a * a + b * b + c * c + d * d;
    assert!(n != 0, "zero quaternion");
    let r = |v: i64| Rational::from_ratio(v, n);
    [
        [r(a * a + b * b - c * c - d * d), r(2 * (b * c - a * d)), r(2 * (b * d + a * c))],
        [r(2 * (b * c + a * d)), r(a * a - b * b + c * c - d * d), r(2 * (c * d - a * b))],
        [r(2 * (b * d - a * c)), r(2 * (c * d + a * b)), r(a * a - b * b - c * c + d * d)],
    ]
}

/// Random exact orthogonal matrix; with `allow_reflection` the determinant
/// is -1 half of the time.
pub fn random_rotation(rng: &mut Rng8, allow_reflection: bool) -> [[Rational; 3]; 3] {
    let q = loop {
        let q: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        if q.iter().any(|&v| v != 0) {
            break q;
        }
    };
    let mut r = quaternion_rotation(q[0], q[1], q[2], q[3]);
    if allow_reflection && rng.gen_bool(0.5) {
        r[0] = r[0].each_ref().map(|v| -v.clone());
    }
    r
}

pub fn small_rational(rng: &mut Rng8, num: i64, den: i64) -> Rational {
    Rational::from_ratio(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn random_motion(rng: &mut Rng8) -> EuclideanMotion<Rational> {
    EuclideanMotion {
        rotation: random_rotation(rng, true),
        translation: std::array::from_fn(|_| small_rational(rng, 4, 2)),
    }
}

fn random_positive(rng: &mut Rng8) -> Rational {
    let choices = [(1, 2), (2, 3), (1, 1), (3, 2), (2, 1)];
    let (n, d) = *choices.choose(rng).unwrap();
    Rational::from_ratio(n, d)
}

/// Seed with `s, t, u` signed squares of small integers, so `m` is rational
/// and ties between parameters are frequent.
pub fn random_quartic_seed(rng: &mut Rng8) -> QuarticSeed<Rational> {
    let patterns = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];
    let sg = patterns.choose(rng).unwrap();
    let v: [i64; 3] = std::array::from_fn(|_| rng.gen_range(0..=3));
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    QuarticSeed {
        s: k(sg[0] * v[0] * v[0]),
        t: k(sg[1] * v[1] * v[1]),
        u: k(sg[2] * v[2] * v[2]),
        m: k(sign * v[0] * v[1] * v[2]),
    }
}

/// A generated surface with everything needed to reproduce it.
#[derive(Clone, Debug)]
pub struct Generated {
    pub coeffs: DarbouxCoefficients<Rational>,
    pub seed: GenSeed,
    pub lambda: Rational,
    /// projective factor applied last
    pub mu: Rational,
    pub motion: EuclideanMotion<Rational>,
}

#[derive(Clone, Debug)]
pub enum GenSeed {
    Quartic(QuarticSeed<Rational>),
    Cubic { p: Rational, q: Rational },
}

impl Generated {
    /// Coefficients in the `a0`..`f0` JSON layout plus a `provenance` block.
    pub fn to_json(&self, rng_seed: u64) -> Value {
        let mut v = crate::io::coefficients_to_json(&self.coeffs);
        let seed = match &self.seed {
            GenSeed::Quartic(s) => json!({"s": s.s.to_json(), "t": s.t.to_json(), "u": s.u.to_json(), "m": s.m.to_json()}),
            GenSeed::Cubic { p, q } => json!({"p": p.to_json(), "q": q.to_json()}),
        };
        let m = &self.motion;
        v["provenance"] = json!({
            "rng_seed": rng_seed,
            "seed": seed,
            "lambda": self.lambda.to_json(),
            "mu": self.mu.to_json(),
            "rotation": m.rotation.each_ref().map(|r| r.each_ref().map(|x| x.to_json())),
            "translation": m.translation.each_ref().map(|x| x.to_json()),
        });
        v
    }
}

fn place(c: &DarbouxCoefficients<Rational>, lambda: &Rational, mu: &Rational, motion: &EuclideanMotion<Rational>) -> DarbouxCoefficients<Rational> {
    let moved = apply_motion(&c.weighted_rescale(lambda), motion).expect("generated motions are orthogonal");
    moved.scale(mu)
}

pub fn generate_quartic_from(seed: QuarticSeed<Rational>, rng: &mut Rng8) -> Generated {
    let lambda = random_positive(rng);
    let mu = random_positive(rng) * &k::<Rational>(if rng.gen_bool(0.5) { 1 } else { -1 });
    let motion = random_motion(rng);
    let coeffs = place(&seed.coefficients(), &lambda, &mu, &motion);
    Generated { coeffs, seed: GenSeed::Quartic(seed), lambda, mu, motion }
}

pub fn generate_quartic(rng: &mut Rng8) -> Generated {
    let seed = random_quartic_seed(rng);
    generate_quartic_from(seed, rng)
}

/// Cubic with small rational `p, q`. The projective factor is kept positive
/// so that the recovered `(p, q)` equal `lambda (p, q)` rather than their negatives.
pub fn generate_cubic(rng: &mut Rng8) -> Generated {
    let p = small_rational(rng, 4, 2);
    let q = small_rational(rng, 4, 2);
    let lambda = random_positive(rng);
    let mu = random_positive(rng);
    let motion = random_motion(rng);
    let coeffs = place(&canonical_cubic(&p, &q), &lambda, &mu, &motion);
    Generated { coeffs, seed: GenSeed::Cubic { p, q }, lambda, mu, motion }
}

/// Moves a Dupin quartic off the variety by changing one of `e1, e2, e3, f0`,
/// resampling until the generator oracle rejects it.
pub fn perturb_off_variety(c: &DarbouxCoefficients<Rational>, rng: &mut Rng8) -> DarbouxCoefficients<Rational> {
    let pol = TolerancePolicy::exact();
    loop {
        let mut out = c.clone();
        let delta = loop {
            let d = small_rational(rng, 5, 4);
            if !num_traits::Zero::is_zero(&d) {
                break d;
            }
        };
        match rng.gen_range(0..4) {
            i @ 0..=2 => out.e[i] = out.e[i].clone() + &delta,
            _ => out.f0 = out.f0.clone() + &delta,
        }
        if let Ok((false, _)) = recognize_quartic_oracle(&out, &pol) {
            return out;
        }
    }
}

/// Exact points on the torus `(r + R^2 - r^2)^2 = 4R^2(x^2+y^2)` from the
/// rational parametrisation of the circle.
pub fn sample_torus_exact(r: &Rational, big_r: &Rational, n: usize, rng: &mut Rng8) -> Vec<[Rational; 3]> {
    (0..n)
        .map(|_| {
            let (c1, s1) = rational_circle(small_rational(rng, 6, 5));
            let (c2, s2) = rational_circle(small_rational(rng, 6, 5));
            let rad = big_r.clone() + &(r.clone() * &c1);
            [rad.clone() * &c2, rad * &s2, r.clone() * &s1]
        })
        .collect()
}

fn rational_circle(t: Rational) -> (Rational, Rational) {
    let one = Rational::from_i64(1);
    let d = one.clone() + &(t.clone() * &t);
    ((one - &(t.clone() * &t)) / &d, (k::<Rational>(2) * &t) / &d)
}

pub fn sample_torus(r: f64, big_r: f64, n: usize, rng: &mut Rng8) -> Vec<[f64; 3]> {
    (0..n)
        .map(|_| {
            let u: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let v: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let rad = big_r + r * u.cos();
            [rad * v.cos(), rad * v.sin(), r * u.sin()]
        })
        .collect()
}

/// Points on a quartic or cubic surface, found by intersecting random lines
/// through a ball of the given radius with the surface.
pub fn sample_surface(c: &DarbouxCoefficients<f64>, n: usize, radius: f64, rng: &mut Rng8) -> Result<Vec<[f64; 3]>, Error> {
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0;
    while out.len() < n {
        attempts += 1;
        if attempts > 200 * n + 1000 {
            return Err(Error::NoRealPoints);
        }
        let p = Vector3::from_fn(|_, _| rng.gen_range(-radius..radius));
        let dir = Vector3::from_fn(|_, _| rng.gen_range(-1.0..1.0f64));
        if dir.norm() < 1e-3 {
            continue;
        }
        let dir = dir.normalize();
        let at = |t: f64| {
            let q = p + dir * t;
            [q.x, q.y, q.z]
        };
        // interpolate F along the line at t = -2..2
        let ts = [-2.0, -1.0, 0.0, 1.0, 2.0];
        let vals: Vec<f64> = ts.iter().map(|&t| c.eval(&at(t * radius))).collect();
        let vander = DMatrix::from_fn(5, 5, |i, j| ts[i].powi(j as i32));
        let Some(coef) = vander.lu().solve(&nalgebra::DVector::from_vec(vals)) else { continue };
        for t in real_roots(coef.as_slice()) {
            let mut t = t * radius;
            // Newton polish on the exact function
            for _ in 0..4 {
                let h = 1e-7 * (1.0 + t.abs());
                let f = c.eval(&at(t));
                let df = (c.eval(&at(t + h)) - c.eval(&at(t - h))) / (2.0 * h);
                if df == 0.0 {
                    break;
                }
                t -= f / df;
            }
            if (t.abs()) < 4.0 * radius {
                out.push(at(t));
                if out.len() == n {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Real roots of `sum coef[i] t^i` via companion-matrix eigenvalues.
pub fn real_roots(coef: &[f64]) -> Vec<f64> {
    let scale = coef.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let mut deg = coef.len();
    while deg > 0 && coef[deg - 1].abs() <= 1e-12 * scale {
        deg -= 1;
    }
    if deg <= 1 {
        return Vec::new();
    }
    let n = deg - 1;
    let lead = coef[n];
    let comp = DMatrix::from_fn(n, n, |i, j| {
        if i == 0 {
            -coef[n - 1 - j] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    comp.complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() <= 1e-7 * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognize::{recognize, VerdictKind};

    #[test]
    fn quaternion_example() {
        let r = quaternion_rotation(1, 1, 0, 0);
        let i = |v| Rational::from_i64(v);
        assert_eq!(r, [[i(1), i(0), i(0)], [i(0), i(0), i(-1)], [i(0), i(1), i(0)]]);
    }

    #[test]
    fn torus_seed_is_the_torus() {
        let c = QuarticSeed::torus(k::<Rational>(1), k(4)).coefficients();
        assert_eq!(c.c, [k(-10), k(-10), k(6)]);
        assert_eq!(c.f0, k::<Rational>(9));
    }

    #[test]
    fn exact_torus_samples_lie_on_torus() {
        let c = QuarticSeed::torus(k::<Rational>(1), k(4)).coefficients();
        let mut g = rng(3);
        for p in sample_torus_exact(&k(1), &k(2), 20, &mut g) {
            assert_eq!(c.eval(&p), k::<Rational>(0));
        }
        // t = 1 on both circles
        let (c1, s1) = rational_circle(k(1));
        assert_eq!((c1, s1), (k(0), k(1)));
    }

    #[test]
    fn generated_surfaces_are_dupin() {
        let mut g = rng(11);
        let pol = TolerancePolicy::exact();
        for _ in 0..20 {
            let q = generate_quartic(&mut g);
            assert_eq!(recognize(&q.coeffs, &pol).unwrap().kind, VerdictKind::DupinQuartic);
            let c = generate_cubic(&mut g);
            assert_eq!(recognize(&c.coeffs, &pol).unwrap().kind, VerdictKind::DupinCubic);
        }
    }

    #[test]
    fn line_sampler_hits_surface() {
        let c = QuarticSeed::torus(1.0, 4.0).coefficients();
        let mut g = rng(5);
        let pts = sample_surface(&c, 30, 3.0, &mut g).unwrap();
        assert_eq!(pts.len(), 30);
        for p in pts {
            assert!(c.eval(&p).abs() < 1e-9 * (1.0 + p.iter().map(|v| v * v).sum::<f64>().powi(2)));
        }
    }

    #[test]
    fn same_seed_same_output() {
        let a = generate_quartic(&mut rng(99)).coeffs;
        let b = generate_quartic(&mut rng(99)).coeffs;
        assert_eq!(a, b);
    }
}
