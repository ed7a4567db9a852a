//! Orthogonal invariants and the polynomial generators of the Dupin conditions.
//! Weights: b 1, c and d 2, e 3, f0 4.

use crate::darboux::{DarbouxCoefficients, Permutation};
use crate::scalar::{k, sq, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantBundle<T> {
    pub b0: T,
    pub c0: T,
    pub e0: T,
    pub w1: T,
    pub w2: T,
    pub w3: T,
    pub w4: T,
}

impl<T: Scalar> InvariantBundle<T> {
    pub fn of(co: &DarbouxCoefficients<T>) -> Self {
        let [b1, b2, b3] = &co.b;
        let [c1, c2, c3] = &co.c;
        let [d1, d2, d3] = &co.d;
        let [e1, e2, e3] = &co.e;
        let two = k::<T>(2);
        let b0 = sq(b1) + &sq(b2) + &sq(b3);
        let c0 = c1.clone() + c2 + c3;
        let e0 = sq(e1) + &sq(e2) + &sq(e3);
        let w1 = c1.clone() * c2 + &(c1.clone() * c3) + &(c2.clone() * c3) - &sq(d1) - &sq(d2) - &sq(d3);
        let w2 = c1.clone() * c2 * c3 + &(two.clone() * d1 * d2 * d3)
            - &(c1.clone() * &sq(d1))
            - &(c2.clone() * &sq(d2))
            - &(c3.clone() * &sq(d3));
        let w3 = sq(b1) * c1 + &(sq(b2) * c2) + &(sq(b3) * c3)
            + &(two.clone() * b2 * b3 * d1)
            + &(two.clone() * b1 * b3 * d2)
            + &(two.clone() * b1 * b2 * d3);
        let w4 = sq(e1) * c1 + &(sq(e2) * c2) + &(sq(e3) * c3)
            + &(two.clone() * d1 * e2 * e3)
            + &(two.clone() * d2 * e1 * e3)
            + &(two * d3 * e1 * e2);
        InvariantBundle { b0, c0, e0, w1, w2, w3, w4 }
    }

    /// `W1 + 4 f0`
    pub fn phi(&self, f0: &T) -> T {
        self.w1.clone() + &(k::<T>(4) * f0)
    }

    /// `W2 - C0 W1`
    pub fn psi(&self) -> T {
        self.w2.clone() - &(self.c0.clone() * &self.w1)
    }
}

pub fn k1<T: Scalar>(co: &DarbouxCoefficients<T>) -> T {
    let [_, c2, c3] = &co.c;
    let [d1, d2, d3] = &co.d;
    let [e1, e2, e3] = &co.e;
    (c3.clone() - c2) * e2 * e3 + &(d1.clone() * &(sq(e2) - &sq(e3))) + &((d2.clone() * e2 - &(d3.clone() * e3)) * e1)
}

pub fn l1<T: Scalar>(co: &DarbouxCoefficients<T>) -> T {
    let inv = InvariantBundle::of(co);
    let [_, c2, c3] = &co.c;
    let [d1, d2, d3] = &co.d;
    let [e1, e2, e3] = &co.e;
    let c0 = &inv.c0;
    let a = inv.phi(&co.f0) - &sq(&(c2.clone() + c3)) - &sq(d2) - &sq(d3);
    let b = c0.clone() * d3 + &(c3.clone() * d3) - &(d1.clone() * d2);
    let c = c0.clone() * d2 + &(c2.clone() * d2) - &(d1.clone() * d3);
    a * e1 + &(b * e2) + &(c * e3)
}

pub fn m1<T: Scalar>(co: &DarbouxCoefficients<T>) -> T {
    let inv = InvariantBundle::of(co);
    let [c1, ..] = &co.c;
    let [_, d2, d3] = &co.d;
    let [e1, e2, e3] = &co.e;
    let g = c1.clone() * e1 + &(d3.clone() * e2) + &(d2.clone() * e3);
    k::<T>(2) * &g * &inv.phi(&co.f0) + &(e1.clone() * &(inv.psi() - &(k::<T>(4) * &inv.e0)))
}

pub fn n_values<T: Scalar>(co: &DarbouxCoefficients<T>) -> [T; 3] {
    let inv = InvariantBundle::of(co);
    let f0 = &co.f0;
    let (c0, w1, w2, e0, w4) = (&inv.c0, &inv.w1, &inv.w2, &inv.e0, &inv.w4);
    let phi = inv.phi(f0);
    let psi = inv.psi();
    let c0sq = sq(c0);
    let n1 = (k::<T>(4) * w1 + &(k::<T>(12) * f0) - &(k::<T>(3) * &c0sq)) * &phi
        - &(k::<T>(2) * c0 * &(psi.clone() - &(k::<T>(6) * e0)))
        - &(k::<T>(4) * w4);
    // W2 + C0 W1 + 8 C0 f0 - 4 E0
    let chi = w2.clone() + &(c0.clone() * w1) + &(k::<T>(8) * c0 * f0) - &(k::<T>(4) * e0);
    let n2 = k::<T>(4) * &(psi - &(k::<T>(2) * e0)) * &phi + &((c0sq - &(k::<T>(4) * f0)) * &chi);
    let n3 = sq(&chi) - &(k::<T>(4) * &phi * &phi * &phi);
    [n1, n2, n3]
}

/// Generator values at one coefficient tuple. `k`, `l`, `m` hold the base
/// generator and its images under the transpositions (1 2) and (1 3).
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorValues<T> {
    pub k: [T; 3],
    pub l: [T; 3],
    pub m: [T; 3],
    pub n: [T; 3],
}

impl<T: Scalar> GeneratorValues<T> {
    pub fn of(co: &DarbouxCoefficients<T>) -> Self {
        let p12 = co.permute(Permutation::Sigma12);
        let p13 = co.permute(Permutation::Sigma13);
        GeneratorValues {
            k: [k1(co), k1(&p12), k1(&p13)],
            l: [l1(co), l1(&p12), l1(&p13)],
            m: [m1(co), m1(&p12), m1(&p13)],
            n: n_values(co),
        }
    }

    /// The twelve generators with their names, in a fixed order.
    pub fn named(&self) -> Vec<(&'static str, T)> {
        let names = [
            "K1", "s12K1", "s13K1", "L1", "s12L1", "s13L1", "M1", "s12M1", "s13M1", "N1", "N2", "N3",
        ];
        let vals = self.k.iter().chain(&self.l).chain(&self.m).chain(&self.n).cloned();
        names.into_iter().zip(vals).collect()
    }
}

/// Polynomials relevant when `e = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedGenerators<T> {
    /// `W1 + 4 f0`
    pub phi: T,
    /// `W2 - C0 W1`
    pub psi: T,
    pub y0: T,
    pub y1: T,
    pub y2: T,
    pub y3: T,
    /// `W1 + 3 f0`
    pub w1_3f0: T,
    /// `(W2 - C0 W1)^2 - 4 f0^3`
    pub psi2_f3: T,
}

impl<T: Scalar> ReducedGenerators<T> {
    pub fn of(co: &DarbouxCoefficients<T>) -> Self {
        let inv = InvariantBundle::of(co);
        let f0 = &co.f0;
        let (c0, w1, w2) = (&inv.c0, &inv.w1, &inv.w2);
        let phi = inv.phi(f0);
        let psi = inv.psi();
        let c0sq = sq(c0);
        let four_w1_12f = k::<T>(4) * w1 + &(k::<T>(12) * f0);
        let y0 = sq(&(four_w1_12f.clone() - &c0sq)) - &(k::<T>(16) * f0 * &c0sq);
        let y1 = (four_w1_12f - &(k::<T>(3) * &c0sq)) * &phi - &(k::<T>(2) * c0 * &psi);
        let y2 = psi.clone() * &(c0sq.clone() - &(k::<T>(4) * w1) - &(k::<T>(4) * f0)) - &(k::<T>(8) * w2 * &phi);
        let y3 = sq(&(c0.clone() * w1 + &(k::<T>(9) * w2)))
            - &(k::<T>(4) * w1 * w1 * w1)
            - &(k::<T>(4) * w2 * &(c0sq.clone() * c0 + &(k::<T>(27) * w2)));
        let w1_3f0 = w1.clone() + &(k::<T>(3) * f0);
        let psi2_f3 = sq(&psi) - &(k::<T>(4) * f0 * f0 * f0);
        ReducedGenerators { phi, psi, y0, y1, y2, y3, w1_3f0, psi2_f3 }
    }
}

/// `B0^3 E1`, the denominator-free form of the rational expression for `4 e1`
/// on a cubic Dupin cyclide.
pub fn e1_cleared<T: Scalar>(co: &DarbouxCoefficients<T>) -> T {
    let inv = InvariantBundle::of(co);
    let [b1, b2, b3] = &co.b;
    let [c1, c2, c3] = &co.c;
    let [d1, d2, d3] = &co.d;
    let (b0, w3) = (&inv.b0, &inv.w3);
    let two = k::<T>(2);
    let b0sq = sq(b0);
    let bd = b3.clone() * d2 + &(b2.clone() * d3);
    let t1 = -(b1.clone() * &sq(&(w3.clone() - &((c2.clone() + c3) * b0))));
    let t2 = two.clone() * &sq(b1) * b0 * &(b3.clone() * c3 * d2 + &(b2.clone() * c2 * d3));
    let t3 = -(k::<T>(4) * b1 * b0 * &sq(&bd));
    let t4 = two.clone() * b0 * &bd * &((sq(b2) + &sq(b3)) * c1 - &(two.clone() * b2 * b3 * d1));
    let t5 = -(two.clone() * b0 * b2 * b3 * &(c2.clone() - c3) * &(b2.clone() * d2 - &(b3.clone() * d3)));
    let t6 = b1.clone() * &b0sq * &((c1.clone() - c2) * &(c1.clone() - c3) - &sq(d1) + &sq(d2) + &sq(d3));
    let t7 = two * d1 * &b0sq * &(b2.clone() * d2 + &(b3.clone() * d3));
    t1 + &t2 + &t3 + &t4 + &t5 + &t6 + &t7
}

/// Residuals of the cubic Dupin conditions, cleared of denominators:
/// `[4 e_i B0^3 - B0^3 E_i]` for i = 1,2,3 and
/// `4 B0^4 f0 - W3 (W3 - C0 B0)^2 - W3 W1 B0^2 - (W2 - C0 W1) B0^3`.
pub fn cubic_residuals<T: Scalar>(co: &DarbouxCoefficients<T>) -> [T; 4] {
    let inv = InvariantBundle::of(co);
    let b0 = &inv.b0;
    let b0cube = b0.clone() * b0 * b0;
    let four = k::<T>(4);
    let e_res = |c: &DarbouxCoefficients<T>, i: usize| four.clone() * &co.e[i] * &b0cube - &e1_cleared(c);
    let r1 = e_res(co, 0);
    let r2 = e_res(&co.permute(Permutation::Sigma12), 1);
    let r3 = e_res(&co.permute(Permutation::Sigma13), 2);
    let (c0, w1, w3) = (&inv.c0, &inv.w1, &inv.w3);
    let rf = four.clone() * &b0cube * b0 * &co.f0
        - &(w3.clone() * &sq(&(w3.clone() - &(c0.clone() * b0))))
        - &(w3.clone() * w1 * b0 * b0)
        - &(inv.psi() * &b0cube);
    [r1, r2, r3, rf]
}

/// `Y5 = |d|^2 - 4 b.e`
pub fn y5<T: Scalar>(co: &DarbouxCoefficients<T>) -> T {
    let [b1, b2, b3] = &co.b;
    let [e1, e2, e3] = &co.e;
    let dd = co.d.iter().fold(T::zero(), |acc, v| acc + &sq(v));
    dd - &(k::<T>(4) * &(b1.clone() * e1 + &(b2.clone() * e2) + &(b3.clone() * e3)))
}

pub fn y6<T: Scalar>(co: &DarbouxCoefficients<T>) -> T {
    let inv = InvariantBundle::of(co);
    let [b1, b2, b3] = &co.b;
    let [c1, c2, c3] = &co.c;
    let [d1, d2, d3] = &co.d;
    let five = k::<T>(5);
    let ten = k::<T>(10);
    let four = k::<T>(4);
    five.clone() * &sq(b1) * &sq(d1)
        + &(five.clone() * &sq(b2) * &sq(d2))
        + &(five * &sq(b3) * &sq(d3))
        + &(ten.clone() * b1 * b2 * &(c3.clone() * d3 - &(d1.clone() * d2)))
        + &(ten.clone() * b1 * b3 * &(c2.clone() * d2 - &(d1.clone() * d3)))
        + &(ten * b2 * b3 * &(c1.clone() * d1 - &(d2.clone() * d3)))
        - &(k::<T>(2) * &inv.c0 * &(b1.clone() * b2 * d3 + &(b1.clone() * b3 * d2) + &(b2.clone() * b3 * d1)))
        - &(sq(b1) * &(sq(c1) + &(four.clone() * c2 * c3)))
        - &(sq(b2) * &(sq(c2) + &(four.clone() * c1 * c3)))
        - &(sq(b3) * &(sq(c3) + &(four * c1 * c2)))
}

/// Invariants deciding whether a quadric is rotational: `S0`, `S1` with its
/// two transposition images, `T1` with its two images.
pub fn quadric_forms<T: Scalar>(co: &DarbouxCoefficients<T>) -> [T; 7] {
    let s0 = {
        let [c1, c2, c3] = &co.c;
        let [d1, d2, d3] = &co.d;
        (c3.clone() - c2) * &sq(d1)
            + &((c1.clone() - c3) * &sq(d2))
            + &((c2.clone() - c1) * &sq(d3))
            + &((c1.clone() - c2) * &(c1.clone() - c3) * &(c2.clone() - c3))
    };
    let s1 = |co: &DarbouxCoefficients<T>| {
        let [c1, c2, c3] = &co.c;
        let [d1, d2, d3] = &co.d;
        let two = k::<T>(2);
        d1.clone() * &(sq(d2) + &sq(d3) - &(two.clone() * &sq(d1)))
            + &((c2.clone() + c3 - &(two.clone() * c1)) * d2 * d3)
            + &(two * &(c2.clone() - c1) * &(c3.clone() - c1) * d1)
    };
    let t1 = |co: &DarbouxCoefficients<T>| {
        let [_, c2, c3] = &co.c;
        let [d1, d2, d3] = &co.d;
        d1.clone() * &(sq(d2) - &sq(d3)) + &((c2.clone() - c3) * d2 * d3)
    };
    let p12 = co.permute(Permutation::Sigma12);
    let p13 = co.permute(Permutation::Sigma13);
    [s0, s1(co), s1(&p12), s1(&p13), t1(co), t1(&p12), t1(&p13)]
}

/// Determinant of the symmetric 4x4 matrix of the quadric part
/// `[[c1,d3,d2,e1],[d3,c2,d1,e2],[d2,d1,c3,e3],[e1,e2,e3,f0]]`.
pub fn quadric_det<T: Scalar>(co: &DarbouxCoefficients<T>) -> T {
    let [c1, c2, c3] = &co.c;
    let [d1, d2, d3] = &co.d;
    let [e1, e2, e3] = &co.e;
    let m = [
        [c1.clone(), d3.clone(), d2.clone(), e1.clone()],
        [d3.clone(), c2.clone(), d1.clone(), e2.clone()],
        [d2.clone(), d1.clone(), c3.clone(), e3.clone()],
        [e1.clone(), e2.clone(), e3.clone(), co.f0.clone()],
    ];
    det(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

/// Laplace expansion; only used for tiny matrices.
pub fn det<T: Scalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = T::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<T>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = m[0][j].clone() * &det(&minor);
        acc = if j % 2 == 0 { acc + &term } else { acc - &term };
    }
    acc
}

/// Differences `lhs - rhs` of the identities among the generators on the
/// translated quartic space (`a0 = 1`, `b = 0`). All vanish identically.
/// Here `K2 = -s12K1`, `K3 = -s13K1`, `L2 = s12L1`, `L3 = s13L1`, `M2 = s12M1`.
pub fn generator_syzygies<T: Scalar>(co: &DarbouxCoefficients<T>) -> Vec<(&'static str, T)> {
    let g = GeneratorValues::of(co);
    let [c1, c2, c3] = &co.c;
    let [d1, d2, d3] = &co.d;
    let [e1, e2, e3] = &co.e;
    let f0 = &co.f0;
    let two = k::<T>(2);
    let (k1, k2, k3) = (g.k[0].clone(), -g.k[1].clone(), -g.k[2].clone());
    let [l1, l2, l3] = &g.l;
    let (m1, m2) = (&g.m[0], &g.m[1]);
    let kl = e1.clone() * &k1 + &(e2.clone() * &k2) + &(e3.clone() * &k3);
    let l12 = e1.clone() * l2 - &(e2.clone() * l1)
        - &(d2.clone() * &k1 + &(d1.clone() * &k2) + &((c1.clone() + c2 + &(two.clone() * c3)) * &k3));
    let l31 = e3.clone() * l1 - &(e1.clone() * l3)
        - &(d3.clone() * &k1 + &(d1.clone() * &k3) + &((c1.clone() + &(two.clone() * c2) + c3) * &k2));
    let l23 = e2.clone() * l3 - &(e3.clone() * l2)
        - &(d3.clone() * &k2 + &(d2.clone() * &k3) + &((two.clone() * c1 + c2 + c3) * &k1));
    let rhs = (c2.clone() * d2 - &(c3.clone() * d2) - &(two.clone() * d1 * d3)) * &k1
        - &((two.clone() * c2 * d1 + &(two.clone() * c3 * d1) + &(d2.clone() * d3)) * &k2)
        - &((two.clone() * &sq(c3) + &(two.clone() * &sq(d1)) + &sq(d2) - &(k::<T>(8) * f0)) * &k3)
        + &(two.clone() * &(d3.clone() * e1 - &(c1.clone() * e2) - &(c3.clone() * e2) + &(d1.clone() * e3)) * l1)
        + &((two.clone() * c2 * e1 + &(two.clone() * c3 * e1) - &(two.clone() * d3 * e2) - &(d2.clone() * e3)) * l2)
        - &(d2.clone() * e2 * l3);
    let m12 = two.clone() * e1 * m2 - &(two * e2 * m1) - &rhs;
    vec![("eK", kl), ("L12", l12), ("L31", l31), ("L23", l23), ("M12", m12)]
}

/// Identities for `e = 0` among `N1..N3` and `Y0..Y3`, as differences.
pub fn reduced_syzygies<T: Scalar>(co: &DarbouxCoefficients<T>) -> Vec<(&'static str, T)> {
    let inv = InvariantBundle::of(co);
    let r = ReducedGenerators::of(co);
    let [n1, n2, n3] = n_values(co);
    let (c0, w1, w2, f0) = (&inv.c0, &inv.w1, &inv.w2, &co.f0);
    let c0sq = sq(c0);
    let y0n = r.y0.clone() * &r.phi
        - &((c0sq.clone() + &(k::<T>(4) * w1) + &(k::<T>(12) * f0)) * &n1)
        - &(k::<T>(2) * c0 * &n2);
    let y2 = -(k::<T>(2) * c0 * &r.y2)
        - &(k::<T>(3) * &r.y0 * &r.phi)
        - &((c0sq.clone() - &(k::<T>(12) * w1) - &(k::<T>(36) * f0)) * &r.y1);
    let y3 = -(k::<T>(2) * c0 * &r.y3)
        - &((k::<T>(9) * w2 - &(c0.clone() * w1)) * &(r.y0.clone() - &(k::<T>(3) * &r.y1)))
        + &((c0sq.clone() - &(k::<T>(3) * w1)) * &r.y2);
    let n3s = sq(&r.psi)
        - &n3
        - &(k::<T>(4) * &(sq(&r.phi) - &(c0.clone() * w2) - &(k::<T>(4) * &c0sq * f0)) * &r.phi);
    vec![("Y0N", y0n), ("Y2", y2), ("Y3", y3), ("N3", n3s)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn torus21() -> DarbouxCoefficients<Rational> {
        let mut c = DarbouxCoefficients::<Rational>::zero();
        c.a0 = k(1);
        c.c = [k(-10), k(-10), k(6)];
        c.f0 = k(9);
        c
    }

    #[test]
    fn torus_invariants() {
        let inv = InvariantBundle::of(&torus21());
        assert_eq!(inv.c0, k::<Rational>(-14));
        assert_eq!(inv.w1, k::<Rational>(-20));
        assert_eq!(inv.w2, k::<Rational>(600));
        let r = ReducedGenerators::of(&torus21());
        assert_eq!(r.y0, k::<Rational>(0));
        assert_eq!(r.y1, k::<Rational>(0));
    }

    #[test]
    fn cubic_canonical_form_satisfies_cubic_conditions() {
        let mut c = DarbouxCoefficients::<Rational>::zero();
        c.b = [k(1), k(0), k(0)];
        c.c = [k(0), k(-2), k(2)];
        c.e = [k(-1), k(0), k(0)];
        for r in cubic_residuals(&c) {
            assert_eq!(r, k::<Rational>(0));
        }
        assert_eq!(y5(&c), k::<Rational>(4));
        assert_eq!(y6(&c), k::<Rational>(16));
    }

    #[test]
    fn determinant_matches_product_on_diagonal() {
        let mut c = DarbouxCoefficients::<Rational>::zero();
        c.c = [k(2), k(3), k(5)];
        c.f0 = k(-1);
        assert_eq!(quadric_det(&c), k::<Rational>(-30));
    }

    #[test]
    fn syzygies_vanish() {
        let mut g = crate::genkit::rng(5);
        for _ in 0..20 {
            let mut c = DarbouxCoefficients::<Rational>::zero();
            c.a0 = k(1);
            for v in c.c.iter_mut().chain(c.d.iter_mut()).chain(c.e.iter_mut()) {
                *v = crate::genkit::small_rational(&mut g, 9, 4);
            }
            c.f0 = crate::genkit::small_rational(&mut g, 9, 4);
            for (n, v) in generator_syzygies(&c) {
                assert!(num_traits::Zero::is_zero(&v), "{n}");
            }
            c.e = [k(0), k(0), k(0)];
            for (n, v) in reduced_syzygies(&c) {
                assert!(num_traits::Zero::is_zero(&v), "{n}");
            }
        }
    }
}
