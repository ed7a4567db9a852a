//! Calibrated inversions on tori and ring cyclides.

use cyclide::classify::{j0_quartic, J0Value};
use cyclide::genkit::{rng, sample_surface, sample_torus, QuarticSeed};
use cyclide::moebius::{calibrate_convention, cyclide_params, surface_residual, torus_params, Variant};
use cyclide::TolerancePolicy;
use rand::Rng;

#[test]
fn two_torus_maps_compose_to_a_self_map() {
    let mut g = rng(41);
    for _ in 0..10 {
        let big: f64 = g.gen_range(1.5..4.0);
        let r: f64 = g.gen_range(0.2..0.9) * big;
        let r_other = (big * big - r * r).sqrt();
        let pts = sample_torus(r_other, big, 30, &mut g);
        let there = calibrate_convention(&torus_params(r * r, big * big), Variant::Mobt2, &pts).unwrap();
        let mid: Vec<[f64; 3]> = pts.iter().map(|p| there.map.apply(p).unwrap()).collect();
        let back = calibrate_convention(&torus_params(r_other * r_other, big * big), Variant::Mobt2, &mid).unwrap();
        let home = QuarticSeed::torus(r_other * r_other, big * big).coefficients().to_poly();
        for p in &mid {
            let q = back.map.apply(p).unwrap();
            assert!(surface_residual(&home, &q) <= 1e-9);
        }
    }
}

#[test]
fn calibrated_maps_invert_and_match_j0() {
    let mut g = rng(42);
    let pol = TolerancePolicy::float(1e-9);
    for _ in 0..10 {
        // 0 < gamma^2 < delta^2 < alpha^2: a ring cyclide, mobt is real
        let gm: f64 = g.gen_range(0.2..1.0);
        let dl: f64 = gm + g.gen_range(0.2..1.0);
        let al: f64 = dl + g.gen_range(0.2..1.0);
        let q = cyclide_params(al * al, gm * gm, dl * dl);
        let c = QuarticSeed { s: q.alpha2, t: q.gamma2, u: q.delta2, m: q.agd.unwrap() }.coefficients();
        let pts = sample_surface(&c, 30, 2.0 * al, &mut g).unwrap();
        let cal = calibrate_convention(&q, Variant::Mobt, &pts).unwrap();
        let inv = cal.map.inverse();
        for p in &pts {
            let back = inv.apply(&cal.map.apply(p).unwrap()).unwrap();
            let err = (0..3).map(|i| (back[i] - p[i]).abs()).fold(0.0, f64::max);
            assert!(err <= 1e-12 * (1.0 + p.iter().map(|v| v.abs()).fold(0.0, f64::max)), "{err}");
        }
        let J0Value::Finite(j) = j0_quartic(&c, &pol).unwrap() else { panic!("J0 not finite") };
        assert!((cal.torus.j0() - j).abs() <= 1e-9, "{} vs {j}", cal.torus.j0());
    }
}
