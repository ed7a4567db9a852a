//! Dupin recognition for quartic, cubic and quadric Darboux cyclides.

use serde_json::{json, Map, Value};

use crate::darboux::{normalize_quartic, DarbouxCoefficients, Degree};
use crate::invariants::{cubic_residuals, quadric_det, quadric_forms, GeneratorValues, InvariantBundle, ReducedGenerators};
use crate::scalar::{Scalar, TolerancePolicy};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    DupinQuartic,
    DupinCubic,
    DupinQuadric,
    NotDupin,
}

impl VerdictKind {
    pub fn name(self) -> &'static str {
        match self {
            VerdictKind::DupinQuartic => "DupinQuartic",
            VerdictKind::DupinCubic => "DupinCubic",
            VerdictKind::DupinQuadric => "DupinQuadric",
            VerdictKind::NotDupin => "NotDupin",
        }
    }

    pub fn is_dupin(self) -> bool {
        self != VerdictKind::NotDupin
    }
}

/// Branch of the quartic case analysis; `A`..`C` need `e1`, `e2`, `e3` nonzero,
/// `D`..`F` apply when `e = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuarticCase {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl QuarticCase {
    pub fn label(self) -> &'static str {
        match self {
            QuarticCase::A => "a",
            QuarticCase::B => "b",
            QuarticCase::C => "c",
            QuarticCase::D => "d",
            QuarticCase::E => "e",
            QuarticCase::F => "f",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadricBits {
    pub rotational: bool,
    pub singular: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict<T> {
    pub kind: VerdictKind,
    /// quartic branch that decided the verdict (or was tested last)
    pub case: Option<QuarticCase>,
    /// failing equation with the largest residual, for `NotDupin`
    pub witness: Option<(String, T)>,
    pub residuals: Vec<(String, T)>,
    pub quadric: Option<QuadricBits>,
    pub notes: Vec<String>,
}

impl<T: Scalar> Verdict<T> {
    fn new(kind: VerdictKind) -> Self {
        Verdict { kind, case: None, witness: None, residuals: Vec::new(), quadric: None, notes: Vec::new() }
    }

    pub fn to_json(&self) -> Value {
        let mut res = Map::new();
        for (n, v) in &self.residuals {
            res.insert(n.clone(), v.to_json());
        }
        let mut out = json!({
            "kind": self.kind.name(),
            "case": self.case.map(|c| c.label()),
            "witness": self.witness.as_ref().map(|(n, v)| json!({"name": n, "value": v.to_json()})),
            "residuals": Value::Object(res),
        });
        if let Some(q) = self.quadric {
            out["rotational"] = json!(q.rotational);
            out["singular"] = json!(q.singular);
        }
        if !self.notes.is_empty() {
            out["notes"] = json!(self.notes);
        }
        out
    }
}

/// Quartic coefficients after dividing by `a0`, removing `b`, and (in float
/// mode) scaling to unit weighted size: `coeffs(x) = F(s x + t) / (a0 s^4)`.
#[derive(Clone, Debug)]
pub struct PreparedQuartic<T> {
    pub coeffs: DarbouxCoefficients<T>,
    pub shift: [T; 3],
    pub scale: T,
}

pub fn prepare_quartic<T: Scalar>(c: &DarbouxCoefficients<T>) -> Result<PreparedQuartic<T>, Error> {
    let (n, shift) = normalize_quartic(c)?;
    if T::EXACT {
        return Ok(PreparedQuartic { coeffs: n, shift, scale: T::one() });
    }
    let n = clear_translation_noise(c, n);
    let s = quartic_weighted_scale(&n);
    if s == 0.0 || !s.is_finite() {
        return Ok(PreparedQuartic { coeffs: n, shift, scale: T::one() });
    }
    let st = T::from_rational(&crate::scalar::rational_from_f64(s).ok_or(Error::Parse("non-finite".into()))?);
    let coeffs = n.weighted_rescale(&(T::one() / &st));
    Ok(PreparedQuartic { coeffs, shift, scale: st })
}

/// Relative size, in units of the input's weighted scale, below which a
/// coefficient of the translated quartic is cancellation noise.
pub const TRANSLATION_NOISE: f64 = 1e-12;

/// Removing `b` from a float quartic cancels terms of the input's size; what
/// is left at round-off level is set to zero instead of being rescaled up.
fn clear_translation_noise<T: Scalar>(c: &DarbouxCoefficients<T>, mut n: DarbouxCoefficients<T>) -> DarbouxCoefficients<T> {
    let a = c.a0.to_f64().abs();
    let b = c.b.iter().map(|x| x.to_f64().abs() / a).fold(0.0, f64::max);
    let s0 = b.max(quartic_weighted_scale(&c.scale(&(T::one() / &c.a0))));
    if s0 == 0.0 || !s0.is_finite() {
        return n;
    }
    let clear = |v: &mut T, w: i32| {
        if v.to_f64().abs() <= TRANSLATION_NOISE * s0.powi(w) {
            *v = T::zero();
        }
    };
    n.c.iter_mut().chain(n.d.iter_mut()).for_each(|v| clear(v, 2));
    n.e.iter_mut().for_each(|v| clear(v, 3));
    clear(&mut n.f0, 4);
    n
}

/// `max(|c|^(1/2), |d|^(1/2), |e|^(1/3), |f0|^(1/4))` for `a0 = 1, b = 0`.
pub fn quartic_weighted_scale<T: Scalar>(n: &DarbouxCoefficients<T>) -> f64 {
    let m = |v: &[T]| v.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    let cd = m(&n.c).max(m(&n.d)).sqrt();
    let e = m(&n.e).cbrt();
    let f = n.f0.to_f64().abs().powf(0.25);
    cd.max(e).max(f)
}

pub fn recognize<T: Scalar>(c: &DarbouxCoefficients<T>, pol: &TolerancePolicy) -> Result<Verdict<T>, Error> {
    if c.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    match effective_degree(c, pol) {
        Degree::Quartic => recognize_quartic_cases(c, pol),
        Degree::Cubic => recognize_cubic(c, pol),
        Degree::Quadric => recognize_quadric(c, pol),
        Degree::Low => {
            let mut v = Verdict::new(VerdictKind::NotDupin);
            v.notes.push("degree below two".into());
            Ok(v)
        }
    }
}

/// Degree with near-zero leading parts treated as zero in float mode.
pub fn effective_degree<T: Scalar>(c: &DarbouxCoefficients<T>, pol: &TolerancePolicy) -> Degree {
    let scale = c.max_abs();
    let zero = |v: &T| pol.is_zero_scaled(v, scale);
    if !zero(&c.a0) {
        Degree::Quartic
    } else if c.b.iter().any(|v| !zero(v)) {
        Degree::Cubic
    } else if c.c.iter().chain(c.d.iter()).any(|v| !zero(v)) {
        Degree::Quadric
    } else {
        Degree::Low
    }
}

fn check<T: Scalar>(eqs: Vec<(&str, T)>, pol: &TolerancePolicy) -> (bool, Vec<(String, T)>) {
    let ok = eqs.iter().all(|(_, v)| pol.is_zero(v));
    (ok, eqs.into_iter().map(|(n, v)| (n.to_string(), v)).collect())
}

fn worst<T: Scalar>(res: &[(String, T)], pol: &TolerancePolicy) -> Option<(String, T)> {
    res.iter()
        .filter(|(_, v)| !pol.is_zero(v))
        .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap_or(std::cmp::Ordering::Equal))
        .cloned()
}

fn case_equations<T: Scalar>(case: QuarticCase, n: &DarbouxCoefficients<T>) -> Vec<(&'static str, T)> {
    match case {
        QuarticCase::A | QuarticCase::B | QuarticCase::C => {
            let g = GeneratorValues::of(n);
            match case {
                QuarticCase::A => vec![("s12K1", g.k[1].clone()), ("s13K1", g.k[2].clone()), ("L1", g.l[0].clone()), ("M1", g.m[0].clone())],
                QuarticCase::B => vec![("K1", g.k[0].clone()), ("s13K1", g.k[2].clone()), ("s12L1", g.l[1].clone()), ("s12M1", g.m[1].clone())],
                _ => vec![("K1", g.k[0].clone()), ("s12K1", g.k[1].clone()), ("s13L1", g.l[2].clone()), ("s13M1", g.m[2].clone())],
            }
        }
        QuarticCase::D => {
            let r = ReducedGenerators::of(n);
            vec![("W1+4f0", r.phi), ("W2-C0W1", r.psi)]
        }
        QuarticCase::E => {
            let r = ReducedGenerators::of(n);
            vec![("Y0", r.y0), ("Y1", r.y1)]
        }
        QuarticCase::F => {
            let r = ReducedGenerators::of(n);
            vec![("W1+3f0", r.w1_3f0), ("(W2-C0W1)^2-4f0^3", r.psi2_f3)]
        }
    }
}

/// Square root of the tolerance; `e` or `C0` below this are also tried on
/// the branch that assumes them zero.
fn borderline(pol: &TolerancePolicy) -> f64 {
    pol.tau_rel.sqrt()
}

/// First-match case analysis on the prepared quartic.
pub fn recognize_quartic_cases<T: Scalar>(c: &DarbouxCoefficients<T>, pol: &TolerancePolicy) -> Result<Verdict<T>, Error> {
    let prep = prepare_quartic(c)?;
    let n = &prep.coeffs;
    let mut candidates: Vec<QuarticCase> = Vec::new();
    let open = [QuarticCase::A, QuarticCase::B, QuarticCase::C];
    let first_open = (0..3).find(|&i| !pol.is_zero(&n.e[i]));
    if let Some(i) = first_open {
        candidates.push(open[i]);
    }
    let e_small = !T::EXACT && n.e.iter().all(|v| v.to_f64().abs() <= borderline(pol));
    if first_open.is_none() || e_small {
        candidates.push(QuarticCase::D);
        let c0 = InvariantBundle::of(n).c0;
        let c0_zero = pol.is_zero(&c0);
        let c0_border = !T::EXACT && c0.to_f64().abs() <= borderline(pol);
        if !c0_zero || c0_border {
            candidates.push(QuarticCase::E);
        }
        if c0_zero || c0_border {
            candidates.push(QuarticCase::F);
        }
    }
    let mut last = Verdict::new(VerdictKind::NotDupin);
    for case in candidates {
        let (ok, res) = check(case_equations(case, n), pol);
        if ok {
            let mut v = Verdict::new(VerdictKind::DupinQuartic);
            v.case = Some(case);
            v.residuals = res;
            return Ok(v);
        }
        // report the first branch tried, preferring one of the C0 branches over d
        if last.case.is_none() || (last.case == Some(QuarticCase::D) && case != QuarticCase::D) {
            last.case = Some(case);
            last.witness = worst(&res, pol);
            last.residuals = res;
        }
    }
    Ok(last)
}

/// All twelve generators vanish on the prepared quartic. Independent of the
/// case analysis; used to cross-check it.
pub fn recognize_quartic_oracle<T: Scalar>(c: &DarbouxCoefficients<T>, pol: &TolerancePolicy) -> Result<(bool, Vec<(String, T)>), Error> {
    let prep = prepare_quartic(c)?;
    let g = GeneratorValues::of(&prep.coeffs);
    Ok(check(g.named(), pol))
}

/// Cubic coefficients scaled so that `|b| = 1` and the other coefficients have
/// unit weighted size (float mode only; exact input is returned unchanged).
pub fn prepare_cubic<T: Scalar>(c: &DarbouxCoefficients<T>) -> DarbouxCoefficients<T> {
    if T::EXACT {
        return c.clone();
    }
    let b0 = c.b.iter().map(|v| v.to_f64().powi(2)).sum::<f64>();
    let rb = b0.sqrt();
    if rb == 0.0 {
        return c.clone();
    }
    let m = |v: &[T]| v.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    let rho = (m(&c.c) / rb).max(m(&c.d) / rb).max((m(&c.e) / rb).sqrt()).max((c.f0.to_f64().abs() / rb).cbrt());
    let to_t = |x: f64| T::from_rational(&crate::scalar::rational_from_f64(x).unwrap_or_default());
    let mut out = c.clone();
    if rho > 0.0 && rho.is_finite() {
        out = out.weighted_rescale(&to_t(1.0 / rho));
    }
    let nb = out.b.iter().map(|v| v.to_f64().powi(2)).sum::<f64>().sqrt();
    out.scale(&to_t(1.0 / nb))
}

pub fn recognize_cubic<T: Scalar>(c: &DarbouxCoefficients<T>, pol: &TolerancePolicy) -> Result<Verdict<T>, Error> {
    let n = prepare_cubic(c);
    let names = ["e1", "e2", "e3", "f0"];
    let (ok, res) = check(names.into_iter().zip(cubic_residuals(&n)).collect(), pol);
    let mut v = Verdict::new(if ok { VerdictKind::DupinCubic } else { VerdictKind::NotDupin });
    if !ok {
        v.witness = worst(&res, pol);
    }
    v.residuals = res;
    Ok(v)
}

pub fn prepare_quadric<T: Scalar>(c: &DarbouxCoefficients<T>) -> DarbouxCoefficients<T> {
    if T::EXACT {
        return c.clone();
    }
    let m = |v: &[T]| v.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    let m2 = m(&c.c).max(m(&c.d));
    if m2 == 0.0 {
        return c.clone();
    }
    let rho = (m(&c.e) / m2).max((c.f0.to_f64().abs() / m2).sqrt());
    let to_t = |x: f64| T::from_rational(&crate::scalar::rational_from_f64(x).unwrap_or_default());
    let mut out = c.clone();
    let mut cd = m2;
    if rho > 0.0 && rho.is_finite() {
        out = out.weighted_rescale(&to_t(1.0 / rho));
        cd = m2 / (rho * rho);
    }
    out.scale(&to_t(1.0 / cd))
}

pub fn recognize_quadric<T: Scalar>(c: &DarbouxCoefficients<T>, pol: &TolerancePolicy) -> Result<Verdict<T>, Error> {
    let n = prepare_quadric(c);
    let names = ["S0", "S1", "s12S1", "s13S1", "T1", "s12T1", "s13T1"];
    let (rotational, mut res) = check(names.into_iter().zip(quadric_forms(&n)).collect(), pol);
    let det = quadric_det(&n);
    let singular = pol.is_zero(&det);
    res.push(("det".into(), det));
    let dupin = rotational && singular;
    let mut v = Verdict::new(if dupin { VerdictKind::DupinQuadric } else { VerdictKind::NotDupin });
    v.quadric = Some(QuadricBits { rotational, singular });
    if rotational && !singular {
        v.notes.push("smooth rotational quadric".into());
    }
    if !dupin {
        v.witness = worst(&res, pol);
    }
    v.residuals = res;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{k, Rational};

    fn torus21() -> DarbouxCoefficients<Rational> {
        let mut c = DarbouxCoefficients::<Rational>::zero();
        c.a0 = k(1);
        c.c = [k(-10), k(-10), k(6)];
        c.f0 = k(9);
        c
    }

    #[test]
    fn torus_is_case_e() {
        let v = recognize(&torus21(), &TolerancePolicy::exact()).unwrap();
        assert_eq!(v.kind, VerdictKind::DupinQuartic);
        assert_eq!(v.case, Some(QuarticCase::E));
        assert!(v.residuals.iter().all(|(_, r)| r == &k::<Rational>(0)));
    }

    #[test]
    fn torus_in_float_mode() {
        let v = recognize(&torus21().to_f64(), &TolerancePolicy::float(1e-9)).unwrap();
        assert_eq!(v.kind, VerdictKind::DupinQuartic);
        assert_eq!(v.case, Some(QuarticCase::E));
    }

    #[test]
    fn perturbed_torus_rejected() {
        let mut c = torus21();
        c.f0 = k(10);
        let v = recognize(&c, &TolerancePolicy::exact()).unwrap();
        assert_eq!(v.kind, VerdictKind::NotDupin);
        assert_eq!(v.case, Some(QuarticCase::E));
        assert!(v.witness.is_some());
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        let c = DarbouxCoefficients::<Rational>::zero();
        assert!(matches!(recognize(&c, &TolerancePolicy::exact()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn quadrics() {
        let pol = TolerancePolicy::exact();
        // cylinder x^2 + y^2 = 1
        let mut cyl = DarbouxCoefficients::<Rational>::zero();
        cyl.c = [k(1), k(1), k(0)];
        cyl.f0 = k(-1);
        assert_eq!(recognize(&cyl, &pol).unwrap().kind, VerdictKind::DupinQuadric);
        // cone x^2 + y^2 = z^2
        let mut cone = DarbouxCoefficients::<Rational>::zero();
        cone.c = [k(1), k(1), k(-1)];
        assert_eq!(recognize(&cone, &pol).unwrap().kind, VerdictKind::DupinQuadric);
        // sphere
        let mut sph = DarbouxCoefficients::<Rational>::zero();
        sph.c = [k(1), k(1), k(1)];
        sph.f0 = k(-1);
        let v = recognize(&sph, &pol).unwrap();
        assert_eq!(v.kind, VerdictKind::NotDupin);
        assert_eq!(v.quadric, Some(QuadricBits { rotational: true, singular: false }));
        assert_eq!(v.notes, vec!["smooth rotational quadric".to_string()]);
        // elliptic cylinder is singular but not rotational
        let mut ell = DarbouxCoefficients::<Rational>::zero();
        ell.c = [k(1), k(2), k(0)];
        ell.f0 = k(-1);
        assert_eq!(recognize(&ell, &pol).unwrap().kind, VerdictKind::NotDupin);
    }

    #[test]
    fn planes_are_low_degree() {
        let mut c = DarbouxCoefficients::<Rational>::zero();
        c.e = [k(1), k(0), k(0)];
        let v = recognize(&c, &TolerancePolicy::exact()).unwrap();
        assert_eq!(v.kind, VerdictKind::NotDupin);
        assert_eq!(v.notes, vec!["degree below two".to_string()]);
    }
}
