//! Region labels against an independent description in terms of the seed
//! `(alpha^2, gamma^2, delta^2)`.

use cyclide::canonical::spectral_data;
use cyclide::classify::{classify_quartic, SurfaceClass, SurfaceClass::*};
use cyclide::genkit::QuarticSeed;
use cyclide::scalar::k;
use cyclide::{Rational, TolerancePolicy};

/// Labels read off the parameter picture, one rule per region.
fn region(a: i64, g: i64, d: i64) -> SurfaceClass {
    if a == g {
        return match (a.signum(), d.signum()) {
            (0, 0) => OnePoint,
            (1, _) if d == a => SphereAndPoint,
            (1, _) => TwoTouchingSpheres,
            (0, 1) => DoubleSphere,
            (0, -1) => NoRealPoints,
            (-1, _) => OnePoint,
            _ => unreachable!(),
        };
    }
    let (lo, hi) = (a.min(g), a.max(g));
    if lo >= 0 && d >= 0 {
        if d == lo || d == hi {
            if d == 0 { Circle } else { Horn }
        } else if lo < d && d < hi {
            SmoothRing
        } else {
            Spindle
        }
    } else if d > 0 {
        TwoPoints
    } else if d == lo {
        OnePoint
    } else if lo < d && d <= 0 {
        TwoPoints
    } else {
        NoRealPoints
    }
}

fn admissible(a: i64, g: i64, d: i64) -> bool {
    a * g * d >= 0 && !(a < 0 && g < 0 && d < 0)
}

fn isqrt(n: i64) -> Option<i64> {
    let r = (n as f64).sqrt().round() as i64;
    (r * r == n).then_some(r)
}

#[test]
fn parameter_grid_exact() {
    let pol = TolerancePolicy::exact();
    let mut checked = 0;
    for a in -4..=4 {
        for g in -4..=4 {
            for d in -4..=4 {
                if !admissible(a, g, d) {
                    continue;
                }
                let Some(m) = isqrt(a * g * d) else { continue };
                let c = QuarticSeed { s: k::<Rational>(a), t: k(g), u: k(d), m: k(m) }.coefficients();
                let sd = spectral_data(&c, &pol).unwrap();
                let got = classify_quartic(&sd, &pol).unwrap();
                assert_eq!(got.class, region(a, g, d), "({a},{g},{d}) matches {:?}", got.matches);
                checked += 1;
            }
        }
    }
    assert!(checked > 200, "{checked}");
}

#[test]
fn parameter_grid_float() {
    let pol = TolerancePolicy::float(1e-9);
    for a in -4..=4 {
        for g in -4..=4 {
            for d in -4..=4 {
                if !admissible(a, g, d) {
                    continue;
                }
                let m = ((a * g * d) as f64).sqrt();
                let c = QuarticSeed { s: a as f64, t: g as f64, u: d as f64, m }.coefficients();
                let sd = spectral_data(&c, &pol).unwrap();
                let got = classify_quartic(&sd, &pol).unwrap();
                assert_eq!(got.class, region(a, g, d), "({a},{g},{d}) matches {:?}", got.matches);
            }
        }
    }
}

/// Torus family `(r^2, R^2)`: seed `(R^2, 0, r^2)`.
fn torus_label(r2: i64, big: i64) -> SurfaceClass {
    match (r2.signum(), big.signum()) {
        (1, 1) if r2 < big => SmoothRing,
        (1, 1) if r2 == big => Horn,
        (1, 1) => Spindle,
        (1, 0) => DoubleSphere,
        (0, 1) => Circle,
        _ if r2 == big => OnePoint,
        _ if r2 < big => NoRealPoints,
        _ => TwoPoints,
    }
}

#[test]
fn torus_grid() {
    let pol = TolerancePolicy::exact();
    let vals = [-2, -1, 0, 1, 2, 4];
    for r2 in vals {
        for big in vals {
            let c = QuarticSeed::torus(k::<Rational>(r2), k(big)).coefficients();
            let sd = spectral_data(&c, &pol).unwrap();
            let got = classify_quartic(&sd, &pol).unwrap();
            assert_eq!(got.class, torus_label(r2, big), "r2={r2} R2={big}");
            assert!(!got.ambiguous, "r2={r2} R2={big}: {:?}", got.matches);
        }
    }
}
