//! The acceptance suite: nine end-to-end checks with fixed seeds and time
//! budgets. Shared by the `acceptance` test target and `cyclide selftest`.

use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::canonical::{canonicalize_cubic, CanonicalQuartic, canonicalize_quartic, spectral_data};
use crate::classify::{classify_quartic, j0_cubic, j0_from_params, j0_quartic, j0_quartic_formulas, willmore_energy, J0Value, SurfaceClass};
use crate::darboux::DarbouxCoefficients;
use crate::genkit::{
    canonical_cubic, generate_cubic, generate_quartic, generate_quartic_from, perturb_off_variety, rng, sample_surface, sample_torus,
    small_rational, GenSeed, QuarticSeed, Rng8,
};
use crate::invariants::{generator_syzygies, reduced_syzygies, GeneratorValues, InvariantBundle};
use crate::moebius::{calibrate_convention, cyclide_params, torus_params, torus_radii, torus_radii_scaled, Direction, Variant};
use crate::recognize::{recognize, recognize_quartic_cases, recognize_quartic_oracle, QuarticCase, VerdictKind};
use crate::scalar::{k, sq, Rational, Scalar, TolerancePolicy};

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {}. {}: {} ({:.3} ms, budget {} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64() * 1e3,
            self.budget.as_millis()
        )
    }
}

type Check = fn() -> Result<String, String>;

const CRITERIA: [(u8, &str, u64, Check); 9] = [
    (1, "torus example", 1, torus_example),
    (2, "case dispatch matches oracle", 30_000, dispatch_vs_oracle),
    (3, "cubic round trip", 30_000, cubic_round_trip),
    (4, "canonical recovery", 10_000, canonical_recovery),
    (5, "J0 agreement and anchors", 10_000, j0_agreement),
    (6, "classification grid", 1_000, classification_grid),
    (7, "syzygies and homogeneity", 5_000, identities),
    (8, "Mobius calibration", 5_000, moebius_calibration),
    (9, "float robustness", 5_000, float_robustness),
];

pub fn run(id: u8) -> Option<Outcome> {
    let (id, title, ms, f) = CRITERIA.into_iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let res = f();
    let elapsed = start.elapsed();
    let budget = Duration::from_millis(ms);
    let (mut passed, mut detail) = match res {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if passed && elapsed > budget {
        passed = false;
        detail = format!("{detail}; over time budget");
    }
    Some(Outcome { id, title, passed, detail, elapsed, budget })
}

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().filter_map(|c| run(c.0)).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn torus21() -> DarbouxCoefficients<Rational> {
    QuarticSeed::torus(k::<Rational>(1), k(4)).coefficients()
}

fn torus_example() -> Result<String, String> {
    let pol = TolerancePolicy::exact();
    let c = torus21();
    let v = recognize(&c, &pol).map_err(|e| e.to_string())?;
    ensure(v.kind == VerdictKind::DupinQuartic && v.case == Some(QuarticCase::E), || format!("verdict {:?} case {:?}", v.kind, v.case))?;
    ensure(v.residuals.len() == 2 && v.residuals.iter().all(|(_, r)| r.is_zero()), || format!("residuals {:?}", v.residuals))?;
    let inv = InvariantBundle::of(&c);
    let (r2, big2) = (k::<Rational>(1), k::<Rational>(4));
    let w1 = k::<Rational>(4) * (big2.clone() + &r2) * (k::<Rational>(3) * &r2 - &big2);
    let w2 = k::<Rational>(8) * sq(&(big2.clone() + &r2)) * (big2.clone() - &r2);
    let c0 = -(k::<Rational>(2) * &big2) - k::<Rational>(6) * &r2;
    ensure(inv.w1 == w1 && inv.w2 == w2 && inv.c0 == c0, || format!("W1 {} W2 {} C0 {}", inv.w1, inv.w2, inv.c0))?;
    ensure(inv.w1 == k(-20) && inv.w2 == k(600) && inv.c0 == k(-14), || "printed values".into())?;
    Ok(format!("case e, residuals 0, W1={} W2={} C0={}", inv.w1, inv.w2, inv.c0))
}

fn dispatch_vs_oracle() -> Result<String, String> {
    let pol = TolerancePolicy::exact();
    let mut g = rng(2);
    let mut agree = 0;
    for i in 0..500 {
        let pos = generate_quartic(&mut g).coeffs;
        let neg = perturb_off_variety(&pos, &mut g);
        for (c, want) in [(pos, true), (neg, false)] {
            let cases = recognize_quartic_cases(&c, &pol).map_err(|e| e.to_string())?.kind.is_dupin();
            let (oracle, _) = recognize_quartic_oracle(&c, &pol).map_err(|e| e.to_string())?;
            ensure(cases == oracle, || format!("sample {i}: cases {cases}, oracle {oracle}"))?;
            ensure(cases == want, || format!("sample {i}: expected Dupin = {want}"))?;
            agree += 1;
        }
    }
    Ok(format!("{agree}/1000 agree"))
}

fn cubic_round_trip() -> Result<String, String> {
    let pol = TolerancePolicy::exact();
    let mut g = rng(3);
    let mut rational = 0;
    for i in 0..500 {
        let gen = generate_cubic(&mut g);
        let GenSeed::Cubic { p, q } = &gen.seed else { unreachable!() };
        let v = recognize(&gen.coeffs, &pol).map_err(|e| e.to_string())?;
        ensure(v.kind == VerdictKind::DupinCubic, || format!("sample {i}: {:?}", v.kind))?;
        let cc = canonicalize_cubic(&gen.coeffs, &pol).map_err(|e| e.to_string())?;
        let mut want = [p.clone() * &gen.lambda, q.clone() * &gen.lambda];
        want.sort();
        match (&cc.p, &cc.q) {
            (Some(a), Some(b)) => {
                let mut got = [a.clone(), b.clone()];
                got.sort();
                ensure(got == want, || format!("sample {i}: got {got:?}, want {want:?}"))?;
                rational += 1;
            }
            _ => {
                // |b| irrational: sum = (p+q)|b| and prod = pq |b|^2
                let s = want[0].clone() + &want[1];
                let ok = sq(&cc.pair.sum) == sq(&s) * &cc.b0
                    && cc.pair.sum.signum() == s.signum()
                    && cc.pair.prod == want[0].clone() * &want[1] * &cc.b0;
                ensure(ok, || format!("sample {i}: homogeneous pair mismatch"))?;
            }
        }
    }
    Ok(format!("500 recognized, pairs recovered ({rational} with rational |b|)"))
}

fn canonical_recovery() -> Result<String, String> {
    let pol = TolerancePolicy::exact();
    let mut g = rng(4);
    for i in 0..200 {
        let gen = generate_quartic(&mut g);
        let GenSeed::Quartic(seed) = &gen.seed else { unreachable!() };
        let (_, q) = canonicalize_quartic(&gen.coeffs, &pol).map_err(|e| format!("sample {i}: {e}"))?;
        let l2 = gen.lambda.clone() * &gen.lambda;
        let mut want = [seed.s.clone() * &l2, seed.t.clone() * &l2, seed.u.clone() * &l2];
        let mut got = [q.alpha2.clone(), q.gamma2.clone(), q.delta2.clone()];
        want.sort();
        got.sort();
        ensure(got == want, || format!("sample {i}: got {got:?}, want {want:?}"))?;
        let stu = want[0].clone() * &want[1] * &want[2];
        ensure(q.agd_sq == stu, || format!("sample {i}: agd^2 {} vs {stu}", q.agd_sq))?;
    }
    Ok("200/200 multisets and agd^2 exact".into())
}

/// Smooth ring cyclide seeds: `0 < gamma^2 < delta^2 < alpha^2`, all squares.
fn smooth_seed(g: &mut Rng8) -> QuarticSeed<Rational> {
    loop {
        let mut v: [i64; 3] = std::array::from_fn(|_| g.gen_range(1..=7));
        v.sort();
        if v[0] < v[1] && v[1] < v[2] {
            let [c, d, a] = v;
            return QuarticSeed { s: k(a * a), t: k(c * c), u: k(d * d), m: k(a * c * d) };
        }
    }
}

fn j0_agreement() -> Result<String, String> {
    let pol = TolerancePolicy::exact();
    let mut g = rng(5);
    for i in 0..200 {
        let gen = generate_quartic_from(smooth_seed(&mut g), &mut g);
        let f = j0_quartic_formulas(&gen.coeffs, &pol).map_err(|e| e.to_string())?;
        let vals: Vec<J0Value<Rational>> = f.iter().map(|x| x.value(&pol)).collect();
        ensure(vals.iter().all(|v| matches!(v, J0Value::Finite(_))) && vals.windows(2).all(|w| w[0] == w[1]), || format!("sample {i}: {vals:?}"))?;
    }
    let t = j0_quartic(&torus21(), &pol).map_err(|e| e.to_string())?;
    ensure(t == J0Value::Finite(Rational::from_ratio(3, 16)), || format!("torus J0 {t:?}"))?;
    let c22 = canonical_cubic(&k::<Rational>(2), &k(-2));
    let cc = canonicalize_cubic(&c22, &pol).map_err(|e| e.to_string())?;
    let j = j0_cubic(&c22, &cc, &pol).map_err(|e| e.to_string())?;
    ensure(j == J0Value::Finite(Rational::from_ratio(1, 4)), || format!("cubic J0 {j:?}"))?;
    let dsph = QuarticSeed { s: k::<Rational>(0), t: k(0), u: k(1), m: k(0) }.coefficients();
    let d = j0_quartic(&dsph, &pol).map_err(|e| e.to_string())?;
    ensure(d == J0Value::MinusInfinity, || format!("double sphere J0 {d:?}"))?;
    let w = willmore_energy(&J0Value::Finite(Rational::from_ratio(3, 16))).unwrap_or(f64::NAN);
    let want = 4.0 * std::f64::consts::PI.powi(2) / 3f64.sqrt();
    ensure((w - want).abs() <= 1e-12 * want, || format!("Willmore {w}"))?;
    Ok("200/200 agree; 3/16, 1/4, -inf, Willmore 4pi^2/sqrt3".into())
}

/// Labels of the torus family `(r^2, R^2)` in the parameter picture.
pub fn torus_label(r2: i64, big: i64) -> SurfaceClass {
    use SurfaceClass::*;
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

fn classification_grid() -> Result<String, String> {
    let pol = TolerancePolicy::exact();
    let vals = [-2, -1, 0, 1, 2, 4];
    for r2 in vals {
        for big in vals {
            let c = QuarticSeed::torus(k::<Rational>(r2), k(big)).coefficients();
            let sd = spectral_data(&c, &pol).map_err(|e| e.to_string())?;
            let got = classify_quartic(&sd, &pol).map_err(|e| format!("r2={r2} R2={big}: {e}"))?;
            let want = torus_label(r2, big);
            ensure(got.class == want && !got.ambiguous, || format!("r2={r2} R2={big}: got {:?}, want {want:?}", got.matches))?;
        }
    }
    Ok("36/36 cells".into())
}

fn random_tuple(g: &mut Rng8, translated: bool) -> DarbouxCoefficients<Rational> {
    let mut c = DarbouxCoefficients::<Rational>::zero();
    c.a0 = if translated { k(1) } else { small_rational(g, 9, 4) };
    if !translated {
        for v in c.b.iter_mut() {
            *v = small_rational(g, 9, 4);
        }
    }
    for v in c.c.iter_mut().chain(c.d.iter_mut()).chain(c.e.iter_mut()) {
        *v = small_rational(g, 9, 4);
    }
    c.f0 = small_rational(g, 9, 4);
    c
}

fn weighted_values(c: &DarbouxCoefficients<Rational>) -> Vec<(&'static str, u32, Rational)> {
    let inv = InvariantBundle::of(c);
    let g = GeneratorValues::of(c);
    let mut out = vec![
        ("B0", 2, inv.b0),
        ("C0", 2, inv.c0),
        ("E0", 6, inv.e0),
        ("W1", 4, inv.w1),
        ("W2", 6, inv.w2),
        ("W3", 4, inv.w3),
        ("W4", 8, inv.w4),
    ];
    let weights = [8, 8, 8, 7, 7, 7, 9, 9, 9, 8, 10, 12];
    out.extend(g.named().into_iter().zip(weights).map(|((n, v), w)| (n, w, v)));
    out
}

fn identities() -> Result<String, String> {
    let mut g = rng(7);
    let mut count = 0;
    for i in 0..100 {
        let c = random_tuple(&mut g, true);
        for (name, v) in generator_syzygies(&c) {
            ensure(v.is_zero(), || format!("tuple {i}: syzygy {name} = {v}"))?;
            count += 1;
        }
        let mut c0 = c.clone();
        c0.e = [k(0), k(0), k(0)];
        for (name, v) in reduced_syzygies(&c0) {
            ensure(v.is_zero(), || format!("tuple {i}: syzygy {name} = {v}"))?;
            count += 1;
        }
    }
    for i in 0..100 {
        let c = random_tuple(&mut g, i % 2 == 0);
        let lam = loop {
            let l = small_rational(&mut g, 5, 3);
            if !l.is_zero() {
                break l;
            }
        };
        let before = weighted_values(&c);
        let after = weighted_values(&c.weighted_rescale(&lam));
        for ((name, w, v), (_, _, v2)) in before.into_iter().zip(after) {
            let want = v * lam.pow(w as i32);
            ensure(v2 == want, || format!("tuple {i}: {name} not of weight {w}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} identities exact"))
}

fn moebius_calibration() -> Result<String, String> {
    let s3 = 3f64.sqrt();
    let mut g = rng(8);
    let pts = sample_torus(s3, 2.0, 50, &mut g);
    let cal = calibrate_convention(&torus_params(1.0, 4.0), Variant::Mobt2, &pts).map_err(|e| e.to_string())?;
    let img = cal.map.apply(&[2.0 + s3, 0.0, 0.0]).map_err(|e| e.to_string())?;
    let dist = ((img[0] - 3.0).powi(2) + img[1].powi(2) + img[2].powi(2)).sqrt();
    ensure(dist <= 1e-12, || format!("axis point maps to {img:?}"))?;
    ensure(cal.residual <= 1e-9, || format!("torus pair residual {:e}", cal.residual))?;
    ensure(cal.convention.direction == Direction::Forward, || "torus pair resolved in the inverse direction".into())?;

    let q = cyclide_params(4.0, 1.0, 2.0);
    let c = QuarticSeed { s: q.alpha2, t: q.gamma2, u: q.delta2, m: q.agd.unwrap_or(0.0) }.coefficients();
    let pts = sample_surface(&c, 50, 3.0, &mut g).map_err(|e| e.to_string())?;
    let cyc = calibrate_convention(&q, Variant::Mobt, &pts).map_err(|e| e.to_string())?;
    ensure(cyc.residual <= 1e-9, || format!("cyclide residual {:e}", cyc.residual))?;
    // J0 of the cyclide, exactly, against the radius ratio of its torus
    let qe = CanonicalQuartic { alpha2: k::<Rational>(4), gamma2: k(1), delta2: k(2), agd_sq: k(8), agd: None };
    ensure(j0_from_params(&qe, &TolerancePolicy::exact()) == J0Value::Finite(Rational::from_ratio(2, 9)), || "J0 of the cyclide".into())?;
    let ratio = torus_radii_scaled(&qe).map_err(|e| e.to_string())?.j0();
    ensure(ratio == Rational::from_ratio(2, 9), || format!("exact ratio J0 {ratio}"))?;
    let tr = torus_radii(&q).map_err(|e| e.to_string())?;
    ensure((tr.j0() - 2.0 / 9.0).abs() <= 1e-12 && (cyc.torus.j0() - 2.0 / 9.0).abs() <= 1e-9, || format!("float ratio J0 {}", tr.j0()))?;
    Ok(format!(
        "(2+sqrt3,0,0) -> (3,0,0), residuals {:.1e} / {:.1e}, J0 = 2/9",
        cal.residual, cyc.residual
    ))
}

fn to_float_noisy(c: &DarbouxCoefficients<Rational>, rel: f64, g: &mut Rng8) -> DarbouxCoefficients<f64> {
    DarbouxCoefficients::from_array(c.to_f64().to_array().map(|v| v * (1.0 + rel * g.gen_range(-1.0..1.0))))
}

fn float_robustness() -> Result<String, String> {
    let pol = TolerancePolicy::float(1e-9);
    let mut g = rng(9);
    for i in 0..100 {
        let gen = generate_quartic(&mut g);
        let noisy = to_float_noisy(&gen.coeffs, 1e-14, &mut g);
        let v = recognize(&noisy, &pol).map_err(|e| e.to_string())?;
        ensure(v.kind == VerdictKind::DupinQuartic, || format!("sample {i}: noisy sample rejected, witness {:?}", v.witness))?;
        // relative to f0, or to the weighted size of the surface when f0 is small
        let mut bad = gen.coeffs.to_f64();
        let size = weighted_size(&bad);
        let step = 1e-4 * bad.f0.abs().max(size.powi(4) * bad.a0.abs());
        bad.f0 += step;
        let v = recognize(&bad, &pol).map_err(|e| e.to_string())?;
        ensure(v.kind == VerdictKind::NotDupin, || format!("sample {i}: perturbed f0 accepted"))?;
    }
    Ok("100/100 accepted at 1e-14, 100/100 rejected at 1e-4".into())
}

/// Length scale of the surface from the weighted coefficient sizes.
fn weighted_size(c: &DarbouxCoefficients<f64>) -> f64 {
    let a = c.a0.abs();
    let m = |v: &[f64], p: f64| v.iter().fold(0.0f64, |acc, x| acc.max((x.abs() / a).powf(p)));
    m(&c.b, 1.0).max(m(&c.c, 0.5)).max(m(&c.d, 0.5)).max(m(&c.e, 1.0 / 3.0)).max((c.f0.abs() / a).powf(0.25))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_labels_are_disjoint_on_diagonal() {
        assert_eq!(torus_label(1, 1), SurfaceClass::Horn);
        assert_eq!(torus_label(-1, -1), SurfaceClass::OnePoint);
        assert_eq!(torus_label(0, 0), SurfaceClass::OnePoint);
    }

    #[test]
    fn cheap_criteria_pass() {
        for id in [1, 6] {
            let o = run(id).unwrap();
            assert!(o.passed || o.detail.contains("time budget"), "{}", o.line());
        }
    }
}
