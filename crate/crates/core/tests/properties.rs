//! Algebraic identities and invariance laws on random rational inputs.

use cyclide::canonical::spectral_data;
use cyclide::classify::{classify_quartic, j0_quartic};
use cyclide::darboux::apply_motion;
use cyclide::genkit::{generate_quartic, quaternion_rotation, rng};
use cyclide::invariants::{n_values, GeneratorValues, InvariantBundle};
use cyclide::io::{coefficients_from_json, coefficients_to_json};
use cyclide::recognize::{recognize, VerdictKind};
use cyclide::scalar::{k, sq};
use cyclide::{DarbouxCoefficients, EuclideanMotion, Permutation, Rational, Scalar, TolerancePolicy};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::from_ratio(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=5, any::<bool>()).prop_map(|(n, d, neg)| Rational::from_ratio(if neg { -n } else { n }, d))
}

/// Translated quartic tuple: `a0 = 1`, `b = 0`.
fn translated() -> impl Strategy<Value = DarbouxCoefficients<Rational>> {
    proptest::collection::vec(rational(), 10).prop_map(|v| {
        let mut c = DarbouxCoefficients::<Rational>::zero();
        c.a0 = k(1);
        c.c = [v[0].clone(), v[1].clone(), v[2].clone()];
        c.d = [v[3].clone(), v[4].clone(), v[5].clone()];
        c.e = [v[6].clone(), v[7].clone(), v[8].clone()];
        c.f0 = v[9].clone();
        c
    })
}

fn general() -> impl Strategy<Value = DarbouxCoefficients<Rational>> {
    proptest::collection::vec(rational(), 14).prop_map(|v| {
        let mut a: [Rational; 14] = std::array::from_fn(|i| v[i].clone());
        if num_traits::Zero::is_zero(&a[0]) {
            a[0] = k(1);
        }
        DarbouxCoefficients::from_array(a)
    })
}

fn rotation() -> impl Strategy<Value = EuclideanMotion<Rational>> {
    ((-3i64..=3), (-3i64..=3), (-3i64..=3), (-3i64..=3), proptest::collection::vec(rational(), 3))
        .prop_filter("nonzero quaternion", |(a, b, c, d, _)| a * a + b * b + c * c + d * d > 0)
        .prop_map(|(a, b, c, d, t)| EuclideanMotion {
            rotation: quaternion_rotation(a, b, c, d),
            translation: [t[0].clone(), t[1].clone(), t[2].clone()],
        })
}

/// `a x + b` and `x^2 + p x + q`.
fn res_linear_linear(a1: &Rational, b1: &Rational, a2: &Rational, b2: &Rational) -> Rational {
    a1.clone() * b2 - a2.clone() * b1
}

fn res_linear_monic(a: &Rational, b: &Rational, p: &Rational, q: &Rational) -> Rational {
    sq(b) - p.clone() * a * b + q.clone() * sq(a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn n1_from_eigen_relations(c in translated(), a1 in rational()) {
        let inv = InvariantBundle::of(&c);
        let (c0, w1, e0, f0) = (&inv.c0, &inv.w1, &inv.e0, &c.f0);
        let h1 = k::<Rational>(2) * inv.phi(f0) * &a1 + inv.psi() - k::<Rational>(4) * e0;
        let l2 = sq(c0) + k::<Rational>(4) * w1 + k::<Rational>(12) * f0;
        let h2 = l2.clone() * &a1 - sq(c0) * c0 + k::<Rational>(4) * c0 * f0 - k::<Rational>(4) * e0;
        let h3 = sq(&a1) - k::<Rational>(2) * c0 * &a1 + sq(c0) - w1 - k::<Rational>(4) * f0;
        let [d1, d2, d3] = &c.d;
        let [e1, e2, e3] = &c.e;
        let [c1, c2, c3] = &c.c;
        let g1 = -(e1.clone() * &a1) + c1.clone() * e1 + d3.clone() * e2 + d2.clone() * e3;
        let g2 = -(e2.clone() * &a1) + d3.clone() * e1 + c2.clone() * e2 + d1.clone() * e3;
        let g3 = -(e3.clone() * &a1) + d2.clone() * e1 + d1.clone() * e2 + c3.clone() * e3;
        let n1 = -(l2 * &h3) + a1.clone() * &h2 - c0.clone() * (h2.clone() + k::<Rational>(2) * &h1)
            - k::<Rational>(4) * (e1.clone() * &g1 + e2.clone() * &g2 + e3.clone() * &g3);
        prop_assert_eq!(n1, n_values(&c)[0].clone());
    }

    #[test]
    fn n2_n3_are_resultants(c in translated()) {
        let inv = InvariantBundle::of(&c);
        let (c0, w1, e0, f0) = (&inv.c0, &inv.w1, &inv.e0, &c.f0);
        let (a1, b1) = (k::<Rational>(2) * inv.phi(f0), inv.psi() - k::<Rational>(4) * e0);
        let a2 = sq(c0) + k::<Rational>(4) * w1 + k::<Rational>(12) * f0;
        let b2 = -(sq(c0) * c0) + k::<Rational>(4) * c0 * f0 - k::<Rational>(4) * e0;
        let (p, q) = (-(k::<Rational>(2) * c0), sq(c0) - w1 - k::<Rational>(4) * f0);
        let [_, n2, n3] = n_values(&c);
        prop_assert_eq!(n2, -res_linear_linear(&a1, &b1, &a2, &b2));
        prop_assert_eq!(n3, res_linear_monic(&a1, &b1, &p, &q));
    }

    #[test]
    fn generators_are_weighted_homogeneous(c in translated(), lam in nonzero_rational()) {
        let before = GeneratorValues::of(&c).named();
        let after = GeneratorValues::of(&c.weighted_rescale(&lam)).named();
        let weights = [8, 8, 8, 7, 7, 7, 9, 9, 9, 8, 10, 12];
        for (((name, v), (_, v2)), w) in before.into_iter().zip(after).zip(weights) {
            prop_assert_eq!(v2, v * lam.pow(w), "{}", name);
        }
    }

    #[test]
    fn invariants_are_orthogonal_invariants(c in translated(), m in rotation()) {
        let rot = EuclideanMotion { rotation: m.rotation.clone(), translation: [k(0), k(0), k(0)] };
        let moved = apply_motion(&c, &rot).unwrap();
        let (a, b) = (InvariantBundle::of(&c), InvariantBundle::of(&moved));
        prop_assert_eq!((a.c0, a.e0, a.w1, a.w2, a.w4), (b.c0, b.e0, b.w1, b.w2, b.w4));
    }

    #[test]
    fn permutation_is_an_involution_and_keeps_invariants(c in general()) {
        for s in [Permutation::Sigma12, Permutation::Sigma13, Permutation::Sigma23] {
            let p = c.permute(s);
            prop_assert_eq!(&p.permute(s), &c);
            prop_assert_eq!(InvariantBundle::of(&p), InvariantBundle::of(&c));
        }
    }

    #[test]
    fn motion_composition(c in general(), m1 in rotation(), m2 in rotation()) {
        let step = apply_motion(&apply_motion(&c, &m1).unwrap(), &m2).unwrap();
        let once = apply_motion(&c, &m1.compose(&m2)).unwrap();
        prop_assert_eq!(step, once);
    }

    #[test]
    fn json_roundtrip(c in general()) {
        prop_assert_eq!(coefficients_from_json(&coefficients_to_json(&c)).unwrap(), c);
    }

    #[test]
    fn normalize_matches_closed_form(c in general()) {
        // translating by t = -b/(2 a0): the constant term becomes F(t)/a0
        let (n, t) = cyclide::darboux::normalize_quartic(&c).unwrap();
        prop_assert_eq!(n.f0.clone(), c.eval(&t) / &c.a0);
        prop_assert!(n.b.iter().all(num_traits::Zero::is_zero));
    }
}

#[test]
fn recognition_and_j0_survive_motions() {
    let pol = TolerancePolicy::exact();
    let mut g = rng(31);
    for _ in 0..40 {
        let gen = generate_quartic(&mut g);
        let c = &gen.coeffs;
        let m = EuclideanMotion { rotation: quaternion_rotation(1, 2, -1, 1), translation: [k(1), Rational::from_ratio(-1, 2), k(3)] };
        let moved = apply_motion(c, &m).unwrap().weighted_rescale(&Rational::from_ratio(3, 2));
        assert_eq!(recognize(&moved, &pol).unwrap().kind, VerdictKind::DupinQuartic);
        assert_eq!(j0_quartic(c, &pol).unwrap(), j0_quartic(&moved, &pol).unwrap());
        let (s1, s2) = (spectral_data(c, &pol).unwrap(), spectral_data(&moved, &pol).unwrap());
        assert_eq!(s1.dsq_from_spectrum(), s1.dsq);
        assert_eq!(classify_quartic(&s1, &pol).unwrap().class, classify_quartic(&s2, &pol).unwrap().class);
    }
}

#[test]
fn float_and_exact_agree_on_generated_quartics() {
    let exact = TolerancePolicy::exact();
    let float = TolerancePolicy::float(1e-9);
    let mut g = rng(32);
    for _ in 0..40 {
        let c = generate_quartic(&mut g).coeffs;
        let je = j0_quartic(&c, &exact).unwrap();
        let jf = j0_quartic(&c.to_f64(), &float).unwrap();
        let (a, b) = (je.to_f64(), jf.to_f64());
        assert!(a == b || (a.is_nan() && b.is_nan()) || (a - b).abs() <= 1e-6 * a.abs().max(1.0), "{a} vs {b}");
    }
}
