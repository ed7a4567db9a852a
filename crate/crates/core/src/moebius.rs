//! Torus radii of canonical quartic cyclides and the inversions that carry
//! tori onto them. Inversions need square roots, so maps live in `f64`.
//!
//! The printed maps send points of the torus side onto the cyclide side. The
//! remaining sign choices (which square root, which sign of the center, the
//! axis swap, the direction) are fixed by calibration against sample points.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::canonical::CanonicalQuartic;
use crate::darboux::{DarbouxCoefficients, TriPoly};
use crate::genkit::QuarticSeed;
use crate::scalar::Scalar;
use crate::Error;

/// Squared radii; negative values describe tori without real points.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusSpec<T> {
    pub r_sq: T,
    pub big_r_sq: T,
}

impl<T: Scalar> TorusSpec<T> {
    /// `r^2 / R^2`
    pub fn ratio(&self) -> T {
        self.r_sq.clone() / &self.big_r_sq
    }

    /// `(r^2/R^2)(1 - r^2/R^2)`, the `J0` of the torus.
    pub fn j0(&self) -> T {
        let rho = self.ratio();
        rho.clone() * &(T::one() - &rho)
    }

    pub fn coefficients(&self) -> DarbouxCoefficients<T> {
        QuarticSeed::torus(self.r_sq.clone(), self.big_r_sq.clone()).coefficients()
    }

    pub fn to_json(&self) -> Value {
        json!({"r_sq": self.r_sq.to_json(), "R_sq": self.big_r_sq.to_json()})
    }
}

/// Radii normalized to `(eps^2, beta^2) = (delta^2 - gamma^2, alpha^2 - gamma^2)`.
pub fn torus_radii_scaled<T: Scalar>(q: &CanonicalQuartic<T>) -> Result<TorusSpec<T>, Error> {
    let big = q.alpha2.clone() - &q.gamma2;
    if big.is_zero() {
        return Err(Error::DegenerateRatio);
    }
    Ok(TorusSpec { r_sq: q.delta2.clone() - &q.gamma2, big_r_sq: big })
}

/// Radii of the torus that the inversion with center `(gamma, 0, 0)` carries
/// onto the cyclide. With `gamma = 0` the cyclide already is that torus.
pub fn torus_radii(q: &CanonicalQuartic<f64>) -> Result<TorusSpec<f64>, Error> {
    let scale = q.alpha2.abs().max(q.gamma2.abs()).max(q.delta2.abs());
    if (q.alpha2 - q.gamma2).abs() <= 1e-12 * scale {
        return Err(Error::DegenerateRatio);
    }
    if q.gamma2.abs() <= 1e-12 * scale {
        return Ok(TorusSpec { r_sq: q.delta2, big_r_sq: q.alpha2 });
    }
    torus_side(q, Variant::Mobt, Signs { root: 1.0, center: 1.0 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// inversion centered at `(gamma, 0, 0)`
    Mobt,
    /// the same with the roles of `alpha` and `gamma` exchanged
    Mobt2a,
    /// between the tori with minor radii `r` and `sqrt(R^2 - r^2)`
    Mobt2,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Mobt, Variant::Mobt2a, Variant::Mobt2];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Mobt => "mobt",
            Variant::Mobt2a => "mobt2a",
            Variant::Mobt2 => "mobt2",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// torus side to cyclide side, as printed
    Forward,
    Inverse,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Forward => "forward",
            Direction::Inverse => "inverse",
        }
    }

    fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Inverse,
            Direction::Inverse => Direction::Forward,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Signs {
    /// sign of the square root `beta eps`
    root: f64,
    /// sign of the center coordinate
    center: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Convention {
    pub root_sign: i8,
    pub center_sign: i8,
    pub swap_flip: bool,
    pub direction: Direction,
}

impl Convention {
    pub const PRINTED: Convention = Convention { root_sign: 1, center_sign: 1, swap_flip: false, direction: Direction::Forward };

    pub fn all() -> Vec<Convention> {
        let mut out = Vec::with_capacity(16);
        for direction in [Direction::Forward, Direction::Inverse] {
            for swap_flip in [false, true] {
                for center_sign in [1, -1] {
                    for root_sign in [1, -1] {
                        out.push(Convention { root_sign, center_sign, swap_flip, direction });
                    }
                }
            }
        }
        out
    }

    fn signs(&self) -> Signs {
        Signs { root: self.root_sign as f64, center: self.center_sign as f64 }
    }
}

/// `P -> translation + factor * S(P - center) / |P - center|^2`, `S` the
/// optional swap of `y` and `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct MoebiusMap {
    pub center: [f64; 3],
    pub translation: [f64; 3],
    pub factor: f64,
    pub swap: bool,
    pub direction: Direction,
}

impl MoebiusMap {
    pub fn apply(&self, p: &[f64; 3]) -> Result<[f64; 3], Error> {
        let v = [p[0] - self.center[0], p[1] - self.center[1], p[2] - self.center[2]];
        let n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if n2 == 0.0 {
            return Err(Error::PoleInput);
        }
        let v = if self.swap { [v[0], v[2], v[1]] } else { v };
        let s = self.factor / n2;
        Ok([self.translation[0] + s * v[0], self.translation[1] + s * v[1], self.translation[2] + s * v[2]])
    }

    /// Also an inversion: center and translation trade places.
    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap {
            center: self.translation,
            translation: self.center,
            factor: self.factor,
            swap: self.swap,
            direction: self.direction.flip(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "center": self.center,
            "translation": self.translation,
            "factor": self.factor,
            "swap": self.swap,
            "direction": self.direction.name(),
        })
    }
}

fn tiny(x: f64, scale: f64) -> bool {
    x.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE)
}

fn not_real(what: &str) -> Error {
    Error::NotRealOverR(what.into())
}

fn param_scale(q: &CanonicalQuartic<f64>) -> f64 {
    q.alpha2.abs().max(q.gamma2.abs()).max(q.delta2.abs())
}

fn agd(q: &CanonicalQuartic<f64>) -> f64 {
    q.agd.unwrap_or_else(|| q.agd_sq.max(0.0).sqrt())
}

/// The printed map (forward direction) for the given sign choices.
fn printed_map(q: &CanonicalQuartic<f64>, variant: Variant, sg: Signs) -> Result<MoebiusMap, Error> {
    let sc = param_scale(q);
    let (center, translation, factor, swap) = match variant {
        Variant::Mobt | Variant::Mobt2a => {
            // mobt2a is mobt with alpha and gamma exchanged
            let (inv2, other2) = if variant == Variant::Mobt { (q.gamma2, q.alpha2) } else { (q.alpha2, q.gamma2) };
            if inv2 <= 0.0 || tiny(inv2, sc) {
                return Err(not_real("inversion center is not a real nonzero point"));
            }
            let c = sg.center * inv2.sqrt();
            let prod = (other2 - inv2) * (q.delta2 - inv2);
            if prod < 0.0 && !tiny(prod, sc * sc) {
                return Err(not_real("beta eps is imaginary"));
            }
            let be = sg.root * prod.max(0.0).sqrt();
            if tiny(be, sc) {
                return Err(Error::DegenerateRatio);
            }
            // alpha delta (resp. gamma delta) through the sign-fixed product agd
            let od = agd(q) / c;
            (c, (od + be) / c, 2.0 * be, variant == Variant::Mobt2a)
        }
        Variant::Mobt2 => {
            if !tiny(q.gamma2, sc) {
                return Err(Error::NotApplicable("mobt2 takes a torus (gamma^2 = 0)".into()));
            }
            if q.delta2 <= 0.0 || tiny(q.delta2, sc) {
                return Err(not_real("minor radius is not real and positive"));
            }
            let diff = q.alpha2 - q.delta2;
            if diff <= 0.0 || tiny(diff, sc) {
                return Err(not_real("R^2 - r^2 is not positive"));
            }
            let r = sg.center * q.delta2.sqrt();
            let w = sg.root * diff.sqrt();
            (r, w, 2.0 * r * w, true)
        }
    };
    Ok(MoebiusMap { center: [center, 0.0, 0.0], translation: [translation, 0.0, 0.0], factor, swap, direction: Direction::Forward })
}

pub fn build_map(q: &CanonicalQuartic<f64>, variant: Variant, conv: Convention) -> Result<MoebiusMap, Error> {
    let mut m = printed_map(q, variant, conv.signs())?;
    m.swap ^= conv.swap_flip;
    Ok(match conv.direction {
        Direction::Forward => m,
        Direction::Inverse => m.inverse(),
    })
}

fn real_square(z: Complex64, sc: f64) -> Result<f64, Error> {
    let z2 = z * z;
    if z2.im.abs() > 1e-9 * z2.norm().max(sc) {
        return Err(not_real("torus radius is not real"));
    }
    Ok(z2.re)
}

/// The torus that the printed map sends onto the cyclide.
fn torus_side(q: &CanonicalQuartic<f64>, variant: Variant, sg: Signs) -> Result<TorusSpec<f64>, Error> {
    if variant == Variant::Mobt2 {
        return Ok(TorusSpec { r_sq: q.alpha2 - q.delta2, big_r_sq: q.alpha2 });
    }
    let sc = param_scale(q);
    let csqrt = |x: f64| Complex64::new(x, 0.0).sqrt();
    let (inv2, other2) = if variant == Variant::Mobt { (q.gamma2, q.alpha2) } else { (q.alpha2, q.gamma2) };
    if inv2 < 0.0 {
        return Err(not_real("inversion center"));
    }
    let c = sg.center * inv2.sqrt();
    let other = csqrt(other2);
    let delta = if tiny(other2, sc) { csqrt(q.delta2) } else { Complex64::new(agd(q) / c, 0.0) / other };
    let beta = csqrt(other2 - inv2);
    let eps = if beta.norm() == 0.0 {
        return Err(Error::DegenerateRatio);
    } else {
        Complex64::new(sg.root * ((other2 - inv2) * (q.delta2 - inv2)).max(0.0).sqrt(), 0.0) / beta
    };
    let den = other * eps + beta * delta;
    if den.norm() <= 1e-12 * sc.sqrt() {
        return Err(Error::DegenerateRatio);
    }
    let r = eps * inv2 / den;
    let big_r = beta * inv2 / den;
    Ok(TorusSpec { r_sq: real_square(r, sc)?, big_r_sq: real_square(big_r, sc)? })
}

/// `|F(p)|` relative to the sum of the absolute values of its terms.
pub fn surface_residual(f: &TriPoly<f64>, p: &[f64; 3]) -> f64 {
    let den = f.eval_abs_terms(p);
    if den == 0.0 {
        return 0.0;
    }
    f.eval(p).abs() / den
}

#[derive(Clone, Debug)]
pub struct Calibration {
    pub variant: Variant,
    pub convention: Convention,
    pub map: MoebiusMap,
    /// torus on the other side of the map
    pub torus: TorusSpec<f64>,
    /// worst of the source residual of a sample and the target residual of its image
    pub residual: f64,
    /// conventions that produced a real map
    pub tried: usize,
}

impl Calibration {
    pub fn to_json(&self) -> Value {
        json!({
            "variant": self.variant.name(),
            "map": self.map.to_json(),
            "convention": {
                "root_sign": self.convention.root_sign,
                "center_sign": self.convention.center_sign,
                "swap_flip": self.convention.swap_flip,
                "direction": self.convention.direction.name(),
            },
            "torus": self.torus.to_json(),
            "source": match self.convention.direction { Direction::Forward => "torus", Direction::Inverse => "cyclide" },
            "residual": self.residual,
        })
    }
}

pub const CALIBRATION_THRESHOLD: f64 = 1e-9;

/// Tries every convention and keeps the one whose map carries the samples
/// (on either side) onto the other side: the first within the threshold, or
/// failing that the least residual.
pub fn calibrate_convention(q: &CanonicalQuartic<f64>, variant: Variant, samples: &[[f64; 3]]) -> Result<Calibration, Error> {
    if samples.len() < 10 {
        return Err(Error::NotApplicable("calibration needs at least 10 sample points".into()));
    }
    let cyclide = QuarticSeed { s: q.alpha2, t: q.gamma2, u: q.delta2, m: agd(q) }.coefficients().to_poly();
    let mut best: Option<Calibration> = None;
    let mut tried = 0;
    let mut last_err = None;
    for conv in Convention::all() {
        let (map, torus) = match build_map(q, variant, conv).and_then(|m| Ok((m, torus_side(q, variant, conv.signs())?))) {
            Ok(v) => v,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        tried += 1;
        let torus_poly = torus.coefficients().to_poly();
        let (source, target) = match conv.direction {
            Direction::Forward => (&torus_poly, &cyclide),
            Direction::Inverse => (&cyclide, &torus_poly),
        };
        let mut residual = 0.0f64;
        for p in samples {
            let r = match map.apply(p) {
                Ok(img) => surface_residual(source, p).max(surface_residual(target, &img)),
                Err(_) => f64::INFINITY,
            };
            residual = residual.max(if r.is_nan() { f64::INFINITY } else { r });
        }
        // conventions are listed from the printed one outwards; several fit
        // equally well up to round-off, so the first good one is kept
        let settled = best.as_ref().is_some_and(|b| b.residual <= CALIBRATION_THRESHOLD);
        if !settled && best.as_ref().is_none_or(|b| residual < b.residual) {
            best = Some(Calibration { variant, convention: conv, map, torus, residual, tried: 0 });
        }
    }
    let Some(mut best) = best else {
        return Err(last_err.unwrap_or(Error::CalibrationFailed(f64::INFINITY)));
    };
    best.tried = tried;
    if best.residual > CALIBRATION_THRESHOLD {
        return Err(Error::CalibrationFailed(best.residual));
    }
    Ok(best)
}

/// Canonical parameters of the torus `(r^2, R^2)` viewed as a cyclide.
pub fn torus_params(r_sq: f64, big_r_sq: f64) -> CanonicalQuartic<f64> {
    CanonicalQuartic { alpha2: big_r_sq, gamma2: 0.0, delta2: r_sq, agd_sq: 0.0, agd: Some(0.0) }
}

/// Float canonical parameters from `(alpha^2, gamma^2, delta^2)` with `agd >= 0`.
pub fn cyclide_params(alpha2: f64, gamma2: f64, delta2: f64) -> CanonicalQuartic<f64> {
    let agd_sq = alpha2 * gamma2 * delta2;
    CanonicalQuartic { alpha2, gamma2, delta2, agd_sq, agd: Some(agd_sq.max(0.0).sqrt()) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genkit::{rng, sample_surface, sample_torus};

    fn close(a: &[f64; 3], b: &[f64; 3], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * (1.0 + y.abs()))
    }

    #[test]
    fn printed_torus_map_values() {
        let s3 = 3f64.sqrt();
        let m = build_map(&torus_params(1.0, 4.0), Variant::Mobt2, Convention::PRINTED).unwrap();
        assert!(close(&m.center, &[1.0, 0.0, 0.0], 1e-15));
        assert!(close(&m.translation, &[s3, 0.0, 0.0], 1e-15));
        assert!((m.factor - 2.0 * s3).abs() < 1e-14);
        assert!(m.swap);
        assert!(close(&m.apply(&[2.0 + s3, 0.0, 0.0]).unwrap(), &[3.0, 0.0, 0.0], 1e-14));
        assert!(close(&m.apply(&[2.0 - s3, 0.0, 0.0]).unwrap(), &[-3.0, 0.0, 0.0], 1e-14));
        assert!(matches!(m.apply(&[1.0, 0.0, 0.0]), Err(Error::PoleInput)));
    }

    #[test]
    fn printed_cyclide_map_values() {
        let q = cyclide_params(4.0, 1.0, 2.0);
        let m = build_map(&q, Variant::Mobt, Convention::PRINTED).unwrap();
        let s3 = 3f64.sqrt();
        assert!(close(&m.center, &[1.0, 0.0, 0.0], 1e-15));
        assert!(close(&m.translation, &[2.0 * 2f64.sqrt() + s3, 0.0, 0.0], 1e-14));
        assert!((m.factor - 2.0 * s3).abs() < 1e-14);
        assert!(!m.swap);
        assert!(matches!(build_map(&cyclide_params(4.0, 0.0, 1.0), Variant::Mobt, Convention::PRINTED), Err(Error::NotRealOverR(_))));
    }

    #[test]
    fn radii() {
        let t = torus_radii(&cyclide_params(4.0, 0.0, 1.0)).unwrap();
        assert_eq!((t.r_sq, t.big_r_sq), (1.0, 4.0));
        let q = cyclide_params(4.0, 1.0, 2.0);
        let s = torus_radii_scaled(&q).unwrap();
        assert_eq!((s.r_sq, s.big_r_sq), (1.0, 3.0));
        let t = torus_radii(&q).unwrap();
        assert!((t.ratio() - 1.0 / 3.0).abs() < 1e-14);
        assert!((t.j0() - 2.0 / 9.0).abs() < 1e-14);
        assert!(matches!(torus_radii(&cyclide_params(2.0, 2.0, 1.0)), Err(Error::DegenerateRatio)));
    }

    #[test]
    fn calibrates_torus_pair() {
        let mut g = rng(7);
        let pts = sample_torus(3f64.sqrt(), 2.0, 50, &mut g);
        let cal = calibrate_convention(&torus_params(1.0, 4.0), Variant::Mobt2, &pts).unwrap();
        assert_eq!(cal.convention.direction, Direction::Forward);
        assert!(cal.residual <= 1e-9, "{}", cal.residual);
        let img = cal.map.apply(&[2.0 + 3f64.sqrt(), 0.0, 0.0]).unwrap();
        assert!(close(&img, &[3.0, 0.0, 0.0], 1e-14));
        for p in &pts {
            let back = cal.map.inverse().apply(&cal.map.apply(p).unwrap()).unwrap();
            assert!(close(&back, p, 1e-12));
        }
    }

    #[test]
    fn calibrates_cyclide() {
        let q = cyclide_params(4.0, 1.0, 2.0);
        let mut g = rng(11);
        let c = QuarticSeed { s: q.alpha2, t: q.gamma2, u: q.delta2, m: q.agd.unwrap() }.coefficients();
        let pts = sample_surface(&c, 50, 3.0, &mut g).unwrap();
        let cal = calibrate_convention(&q, Variant::Mobt, &pts).unwrap();
        assert!(cal.residual <= 1e-9, "{}", cal.residual);
        assert!((cal.torus.j0() - 2.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn empty_samples_rejected() {
        assert!(matches!(calibrate_convention(&torus_params(1.0, 4.0), Variant::Mobt2, &[]), Err(Error::NotApplicable(_))));
    }
}
