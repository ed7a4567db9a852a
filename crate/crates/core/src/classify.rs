//! Geometric class and the Mobius invariant `J0` of recognized cyclides.

use std::cmp::Ordering::{self, Equal, Greater, Less};

use serde_json::{json, Value};

use crate::canonical::{canonicalize_cubic, recover_a1, spectral_data, CanonicalCubic, CanonicalQuartic, SpectralData};
use crate::darboux::DarbouxCoefficients;
use crate::invariants::{y5, y6, InvariantBundle};
use crate::recognize::{prepare_cubic, prepare_quartic, recognize, VerdictKind};
use crate::scalar::{k, sq, Scalar, TolerancePolicy};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceClass {
    SmoothRing,
    Spindle,
    Horn,
    TwoTouchingSpheres,
    SphereAndPoint,
    DoubleSphere,
    Circle,
    OnePoint,
    TwoPoints,
    NoRealPoints,
    SphereTangentPlane,
    PlaneAndPoint,
}

impl SurfaceClass {
    pub const ALL: [SurfaceClass; 12] = [
        SurfaceClass::SmoothRing,
        SurfaceClass::Spindle,
        SurfaceClass::Horn,
        SurfaceClass::TwoTouchingSpheres,
        SurfaceClass::SphereAndPoint,
        SurfaceClass::DoubleSphere,
        SurfaceClass::Circle,
        SurfaceClass::OnePoint,
        SurfaceClass::TwoPoints,
        SurfaceClass::NoRealPoints,
        SurfaceClass::SphereTangentPlane,
        SurfaceClass::PlaneAndPoint,
    ];

    pub fn code(self) -> &'static str {
        match self {
            SurfaceClass::SmoothRing => "SM",
            SurfaceClass::Spindle => "SP",
            SurfaceClass::Horn => "H",
            SurfaceClass::TwoTouchingSpheres => "R",
            SurfaceClass::SphereAndPoint => "Q",
            SurfaceClass::DoubleSphere => "D",
            SurfaceClass::Circle => "C",
            SurfaceClass::OnePoint => "P",
            SurfaceClass::TwoPoints => "PP",
            SurfaceClass::NoRealPoints => "NP",
            SurfaceClass::SphereTangentPlane => "ST",
            SurfaceClass::PlaneAndPoint => "PT",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.code() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: SurfaceClass,
    /// more than one region matched within tolerance
    pub ambiguous: bool,
    pub matches: Vec<SurfaceClass>,
}

/// Region test on `A1` and the root pair `lo <= hi` of `A2, A3`, with
/// `kappa = A1 - A2 - A3` and `s = A2 + A3`. Regions are tried in order.
pub fn classify_quartic<T: Scalar>(sd: &SpectralData<T>, pol: &TolerancePolicy) -> Result<Classification, Error> {
    use SurfaceClass::*;
    let sd = sd.normalized();
    let sc = if T::EXACT { 1.0 } else { sd.scale2().max(f64::MIN_POSITIVE) };
    let pair = &sd.pair;
    if !pair.is_real(pol, sc) {
        return Err(Error::NotDupin);
    }
    let a1 = &sd.a1;
    let s = &pair.sum;
    let kappa = sd.kappa();
    let sign = |x: &T| pol.sign_scaled(x, sc.sqrt());
    let lo = |r: &T| pair.cmp_lo(r, pol, sc);
    let hi = |r: &T| pair.cmp_hi(r, pol, sc);
    let ge = |o: Ordering| o != Less;
    let le = |o: Ordering| o != Greater;
    let double = pair.is_double(pol, sc);
    let distinct = !double;
    // the double root, when there is one
    let a = s.clone() / &k(2);
    let three_a = k::<T>(3) * &a;

    let tests: [(SurfaceClass, bool); 10] = [
        (SmoothRing, ge(lo(a1)) && lo(&kappa) == Less && hi(&kappa) == Greater),
        (
            Horn,
            distinct && ((hi(&kappa) == Equal && le(sign(&kappa))) || (lo(&kappa) == Equal && sign(s) == Less)),
        ),
        (
            Spindle,
            distinct && ((ge(lo(a1)) && hi(&kappa) == Less) || (lo(&kappa) == Greater && le(sign(s)))),
        ),
        (
            TwoTouchingSpheres,
            double
                && ((pol.cmp(&three_a, a1) == Less && pol.cmp(a1, &a) == Less)
                    || (pol.cmp(a1, &three_a) == Less && le(sign(&a)))),
        ),
        (SphereAndPoint, double && pol.cmp(a1, &three_a) == Equal && sign(&a) == Less),
        (DoubleSphere, double && pol.cmp(a1, &a) == Equal && sign(&a) == Less),
        (Circle, sign(s) == Equal && lo(a1) == Equal && sign(a1) == Less),
        (
            TwoPoints,
            (lo(&kappa) == Less && ge(sign(s)) && ge(hi(a1))) || (le(hi(a1)) && le(sign(s)) && distinct),
        ),
        (
            OnePoint,
            (lo(&kappa) == Equal && le(sign(&kappa)) && sign(s) == Greater)
                || (double && pol.cmp(&a, a1) == Less)
                || (double && sign(&a) == Equal && sign(a1) == Equal),
        ),
        (NoRealPoints, lo(&kappa) == Greater && le(lo(a1)) && ge(hi(a1))),
    ];
    let matches: Vec<SurfaceClass> = tests.iter().filter(|(_, ok)| *ok).map(|(c, _)| *c).collect();
    let class = *matches.first().ok_or(Error::NoMatch)?;
    Ok(Classification { class, ambiguous: matches.len() > 1, matches })
}

/// Classes of cubic cyclides from the sign of `pq` and whether `p = q`.
pub fn classify_cubic<T: Scalar>(cc: &CanonicalCubic<T>, pol: &TolerancePolicy) -> Classification {
    use SurfaceClass::*;
    let prod = pol.sign(&cc.pair.prod);
    let equal = cc.pair.is_double(pol, 1.0);
    let class = match (prod, equal) {
        (Less, _) => SmoothRing,
        (Greater, false) => Spindle,
        (Greater, true) => SphereTangentPlane,
        (Equal, false) => Horn,
        (Equal, true) => PlaneAndPoint,
    };
    Classification { class, ambiguous: false, matches: vec![class] }
}

#[derive(Clone, Debug, PartialEq)]
pub enum J0Value<T> {
    Finite(T),
    MinusInfinity,
    Undefined,
}

impl<T: Scalar> J0Value<T> {
    pub fn to_json(&self) -> Value {
        match self {
            J0Value::Finite(v) => v.to_json(),
            J0Value::MinusInfinity => json!("-inf"),
            J0Value::Undefined => json!("undefined"),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            J0Value::Finite(v) => v.to_f64(),
            J0Value::MinusInfinity => f64::NEG_INFINITY,
            J0Value::Undefined => f64::NAN,
        }
    }
}

/// Unevaluated quotient. `0/0` means the formula says nothing at this point.
#[derive(Clone, Debug, PartialEq)]
pub struct Fraction<T> {
    pub num: T,
    pub den: T,
}

impl<T: Scalar> Fraction<T> {
    pub fn value(&self, pol: &TolerancePolicy) -> J0Value<T> {
        match (pol.is_zero(&self.num), pol.is_zero(&self.den)) {
            (true, true) => J0Value::Undefined,
            (false, true) => J0Value::MinusInfinity,
            _ => J0Value::Finite(self.num.clone() / &self.den),
        }
    }
}

/// The three expressions for `J0` of a quartic: through the pair `{A2, A3}`,
/// through `A1` and the invariants, and through the invariants alone.
/// Evaluated on the prepared coefficients (`a0 = 1`, `b = 0`).
pub fn j0_quartic_formulas<T: Scalar>(c: &DarbouxCoefficients<T>, pol: &TolerancePolicy) -> Result<[Fraction<T>; 3], Error> {
    let n = prepare_quartic(c)?.coeffs;
    let inv = InvariantBundle::of(&n);
    let a1 = recover_a1(&n, pol);
    let (c0, w1, w2, e0, f0) = (&inv.c0, &inv.w1, &inv.w2, &inv.e0, &n.f0);
    let s = c0.clone() - &a1;
    let p = w1.clone() - &(a1.clone() * &s);
    let two = k::<T>(2);

    // -(A1 - 2A2 - A3)(A2 + 2A3 - A1) / (A2 - A3)^2 in symmetric form
    let by_pair = Fraction {
        num: -((s.clone() - &a1) * &(two.clone() * &s - &a1) + &p),
        den: sq(&s) - &(k::<T>(4) * &p),
    };
    let by_a1 = Fraction {
        num: k::<T>(7) * &sq(&a1) - &(k::<T>(8) * c0 * &a1) + &(two.clone() * &sq(c0)) + w1,
        den: k::<T>(3) * &sq(&a1) - &(two.clone() * c0 * &a1) - &sq(c0) + &(k::<T>(4) * w1),
    };
    let four_f_c = k::<T>(4) * f0 - &sq(c0);
    let t28 = k::<T>(28) * f0 + &sq(c0);
    let w2e = w2.clone() - &(two * e0);
    let by_invariants = Fraction {
        num: four_f_c.clone() * &t28 + &(k::<T>(4) * &(k::<T>(8) * f0 + &sq(c0)) * w1) - &(k::<T>(12) * c0 * &w2e),
        den: k::<T>(12) * f0 * &four_f_c + &(t28 * w1) - &(k::<T>(8) * c0 * &w2e),
    };
    Ok([by_pair, by_a1, by_invariants])
}

/// Combines independent evaluations: determinate values must agree, `0/0`
/// values are skipped, and if nothing is determinate the result is undefined.
pub fn agree<T: Scalar>(vals: &[J0Value<T>], pol: &TolerancePolicy) -> Result<J0Value<T>, Error> {
    let mut out: Option<&J0Value<T>> = None;
    for v in vals {
        if *v == J0Value::Undefined {
            continue;
        }
        match out {
            None => out = Some(v),
            Some(prev) => {
                let same = match (prev, v) {
                    (J0Value::Finite(a), J0Value::Finite(b)) => {
                        if T::EXACT {
                            a == b
                        } else {
                            let tol = pol.tau_rel.sqrt() * a.to_f64().abs().max(1.0);
                            (a.to_f64() - b.to_f64()).abs() <= tol
                        }
                    }
                    (J0Value::MinusInfinity, J0Value::MinusInfinity) => true,
                    _ => false,
                };
                if !same {
                    return Err(Error::FormulaDisagreement(format!("{prev:?} vs {v:?}")));
                }
            }
        }
    }
    Ok(out.cloned().unwrap_or(J0Value::Undefined))
}

pub fn j0_quartic<T: Scalar>(c: &DarbouxCoefficients<T>, pol: &TolerancePolicy) -> Result<J0Value<T>, Error> {
    let f = j0_quartic_formulas(c, pol)?;
    let vals: Vec<J0Value<T>> = f.iter().map(|x| x.value(pol)).collect();
    agree(&vals, pol)
}

/// `J0 = -(delta^2 - gamma^2)(delta^2 - alpha^2) / (alpha^2 - gamma^2)^2`
pub fn j0_from_params<T: Scalar>(q: &CanonicalQuartic<T>, pol: &TolerancePolicy) -> J0Value<T> {
    Fraction {
        num: -((q.delta2.clone() - &q.gamma2) * &(q.delta2.clone() - &q.alpha2)),
        den: sq(&(q.alpha2.clone() - &q.gamma2)),
    }
    .value(pol)
}

/// `J0` of a cubic from its coefficients, and from `(p, q)` as `-pq/(p-q)^2`.
pub fn j0_cubic_formulas<T: Scalar>(c: &DarbouxCoefficients<T>, cc: &CanonicalCubic<T>) -> [Fraction<T>; 2] {
    let n = prepare_cubic(c);
    let inv = InvariantBundle::of(&n);
    let [c1, c2, c3] = &n.c;
    let cross = c1.clone() * c2 + &(c1.clone() * c3) + &(c2.clone() * c3);
    let (y5, y6) = (y5(&n), y6(&n));
    let b0 = &inv.b0;
    let squares = sq(c1) + &sq(c2) + &sq(c3);
    let by_coeffs = Fraction {
        num: k::<T>(3) * &(b0.clone() * &(cross.clone() - &(k::<T>(2) * &y5)) + &y6),
        den: b0.clone() * &(y5.clone() + &(k::<T>(2) * &squares) + &cross) + &(k::<T>(2) * &y6),
    };
    let by_pq = Fraction { num: -cc.pair.prod.clone(), den: cc.pair.disc() };
    [by_coeffs, by_pq]
}

pub fn j0_cubic<T: Scalar>(c: &DarbouxCoefficients<T>, cc: &CanonicalCubic<T>, pol: &TolerancePolicy) -> Result<J0Value<T>, Error> {
    let vals: Vec<J0Value<T>> = j0_cubic_formulas(c, cc).iter().map(|f| f.value(pol)).collect();
    agree(&vals, pol)
}

/// `pi^2 / sqrt(J0)` for `J0 > 0`; other values have no real torus model.
pub fn willmore_energy<T: Scalar>(j0: &J0Value<T>) -> Option<f64> {
    match j0 {
        J0Value::Finite(v) if v.is_positive() => Some(std::f64::consts::PI.powi(2) / v.to_f64().sqrt()),
        _ => None,
    }
}

pub struct ClassReport<T> {
    pub classification: Classification,
    pub j0: J0Value<T>,
}

impl<T: Scalar> ClassReport<T> {
    pub fn to_json(&self) -> Value {
        let mut v = json!({"class": self.classification.class.code(), "J0": self.j0.to_json()});
        if self.classification.ambiguous {
            v["ambiguous"] = json!(true);
            v["matches"] = json!(self.classification.matches.iter().map(|c| c.code()).collect::<Vec<_>>());
        }
        if let Some(w) = willmore_energy(&self.j0) {
            v["willmore"] = json!(w);
        }
        v
    }
}

pub fn classify<T: Scalar>(c: &DarbouxCoefficients<T>, pol: &TolerancePolicy) -> Result<ClassReport<T>, Error> {
    match recognize(c, pol)?.kind {
        VerdictKind::DupinQuartic => {
            let sd = spectral_data(c, pol)?;
            Ok(ClassReport { classification: classify_quartic(&sd, pol)?, j0: j0_quartic(c, pol)? })
        }
        VerdictKind::DupinCubic => {
            let cc = canonicalize_cubic(c, pol)?;
            Ok(ClassReport { classification: classify_cubic(&cc, pol), j0: j0_cubic(c, &cc, pol)? })
        }
        VerdictKind::DupinQuadric => Err(Error::NotApplicable("quadric cyclides are not classified".into())),
        VerdictKind::NotDupin => Err(Error::NotDupin),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genkit::{canonical_cubic, QuarticSeed};
    use crate::scalar::Rational;

    /// caller keeps `m^2 = a g d`
    fn qm(a: i64, g: i64, d: i64, m: i64) -> DarbouxCoefficients<Rational> {
        assert_eq!(m * m, a * g * d);
        QuarticSeed { s: k(a), t: k(g), u: k(d), m: k(m) }.coefficients()
    }

    fn q(a: i64, g: i64, d: i64) -> DarbouxCoefficients<Rational> {
        qm(a, g, d, 0)
    }

    #[test]
    fn named_j0_values() {
        let pol = TolerancePolicy::exact();
        assert_eq!(j0_quartic(&q(4, 0, 1), &pol).unwrap(), J0Value::Finite(Rational::from_ratio(3, 16)));
        let mut dsph = DarbouxCoefficients::<Rational>::zero();
        dsph.a0 = k(1);
        dsph.c = [k(-2), k(-2), k(-2)];
        dsph.f0 = k(1);
        assert_eq!(j0_quartic(&dsph, &pol).unwrap(), J0Value::MinusInfinity);
        let c22 = canonical_cubic(&k::<Rational>(2), &k(-2));
        let cc = canonicalize_cubic(&c22, &pol).unwrap();
        assert_eq!(j0_cubic(&c22, &cc, &pol).unwrap(), J0Value::Finite(Rational::from_ratio(1, 4)));
    }

    #[test]
    fn willmore_of_torus() {
        let w = willmore_energy(&J0Value::Finite(Rational::from_ratio(3, 16))).unwrap();
        let want = 4.0 * std::f64::consts::PI.powi(2) / 3f64.sqrt();
        assert!((w - want).abs() <= 1e-12 * want);
        assert_eq!(willmore_energy(&J0Value::<Rational>::MinusInfinity), None);
        assert_eq!(willmore_energy(&J0Value::Finite(k::<Rational>(-1))), None);
    }

    #[test]
    fn sphere_and_point_is_undefined() {
        let pol = TolerancePolicy::exact();
        assert_eq!(j0_quartic(&qm(1, 1, 1, 1), &pol).unwrap(), J0Value::Undefined);
        let sd = spectral_data(&qm(1, 1, 1, 1), &pol).unwrap();
        assert_eq!(classify_quartic(&sd, &pol).unwrap().class, SurfaceClass::SphereAndPoint);
    }

    #[test]
    fn cubic_classes() {
        let pol = TolerancePolicy::exact();
        let cls = |p: i64, qq: i64| {
            let c = canonical_cubic(&k::<Rational>(p), &k(qq));
            classify(&c, &pol).unwrap().classification.class
        };
        assert_eq!(cls(2, -2), SurfaceClass::SmoothRing);
        assert_eq!(cls(1, 3), SurfaceClass::Spindle);
        assert_eq!(cls(0, 3), SurfaceClass::Horn);
        assert_eq!(cls(2, 2), SurfaceClass::SphereTangentPlane);
        assert_eq!(cls(0, 0), SurfaceClass::PlaneAndPoint);
    }
}
