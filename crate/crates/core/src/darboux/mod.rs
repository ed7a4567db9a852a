//! Darboux cyclides
//! `a0 r^2 + 2(b.x) r + c1x^2+c2y^2+c3z^2 + 2d1yz+2d2xz+2d3xy + 2(e.x) + f0`
//! with `r = x^2+y^2+z^2`.

mod motion;
mod poly;

pub use motion::{apply_motion, normalize_quartic, EuclideanMotion};
pub use poly::{Monomial, TriPoly};

use crate::scalar::{k, sq, Rational, Scalar};
use crate::Error;

pub const KEYS: [&str; 14] = [
    "a0", "b1", "b2", "b3", "c1", "c2", "c3", "d1", "d2", "d3", "e1", "e2", "e3", "f0",
];

#[derive(Clone, Debug, PartialEq)]
pub struct DarbouxCoefficients<T> {
    pub a0: T,
    pub b: [T; 3],
    pub c: [T; 3],
    pub d: [T; 3],
    pub e: [T; 3],
    pub f0: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Quartic,
    Cubic,
    Quadric,
    /// only linear and constant terms remain
    Low,
}

/// Coordinate transpositions. `d_i` belongs to the monomial without the i-th
/// variable, so it is permuted like the vector coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Permutation {
    Sigma12,
    Sigma13,
    Sigma23,
}

impl Permutation {
    pub fn index(self, i: usize) -> usize {
        let (a, b) = match self {
            Permutation::Sigma12 => (0, 1),
            Permutation::Sigma13 => (0, 2),
            Permutation::Sigma23 => (1, 2),
        };
        if i == a {
            b
        } else if i == b {
            a
        } else {
            i
        }
    }

    pub fn apply<T: Clone>(self, v: &[T; 3]) -> [T; 3] {
        [0, 1, 2].map(|i| v[self.index(i)].clone())
    }
}

impl<T: Scalar> DarbouxCoefficients<T> {
    pub fn zero() -> Self {
        DarbouxCoefficients {
            a0: T::zero(),
            b: [T::zero(), T::zero(), T::zero()],
            c: [T::zero(), T::zero(), T::zero()],
            d: [T::zero(), T::zero(), T::zero()],
            e: [T::zero(), T::zero(), T::zero()],
            f0: T::zero(),
        }
    }

    /// Values in `KEYS` order.
    pub fn to_array(&self) -> [T; 14] {
        let [b1, b2, b3] = self.b.clone();
        let [c1, c2, c3] = self.c.clone();
        let [d1, d2, d3] = self.d.clone();
        let [e1, e2, e3] = self.e.clone();
        [self.a0.clone(), b1, b2, b3, c1, c2, c3, d1, d2, d3, e1, e2, e3, self.f0.clone()]
    }

    pub fn from_array(v: [T; 14]) -> Self {
        let [a0, b1, b2, b3, c1, c2, c3, d1, d2, d3, e1, e2, e3, f0] = v;
        DarbouxCoefficients { a0, b: [b1, b2, b3], c: [c1, c2, c3], d: [d1, d2, d3], e: [e1, e2, e3], f0 }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> DarbouxCoefficients<U> {
        DarbouxCoefficients::from_array(self.to_array().each_ref().map(f))
    }

    pub fn to_f64(&self) -> DarbouxCoefficients<f64> {
        self.map(|v| v.to_f64())
    }

    pub fn from_rational(c: &DarbouxCoefficients<Rational>) -> Self {
        c.map(|v| T::from_rational(v))
    }

    pub fn is_zero(&self) -> bool {
        self.to_array().iter().all(|v| v.is_zero())
    }

    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn degree(&self) -> Degree {
        if !self.a0.is_zero() {
            Degree::Quartic
        } else if self.b.iter().any(|v| !v.is_zero()) {
            Degree::Cubic
        } else if self.c.iter().chain(self.d.iter()).any(|v| !v.is_zero()) {
            Degree::Quadric
        } else {
            Degree::Low
        }
    }

    pub fn permute(&self, s: Permutation) -> Self {
        DarbouxCoefficients {
            a0: self.a0.clone(),
            b: s.apply(&self.b),
            c: s.apply(&self.c),
            d: s.apply(&self.d),
            e: s.apply(&self.e),
            f0: self.f0.clone(),
        }
    }

    /// Multiplies the whole equation by `s` (same surface).
    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| v.clone() * s)
    }

    /// Coefficients of `lambda^4 F(x/lambda)`, the surface scaled by `lambda`.
    pub fn weighted_rescale(&self, lambda: &T) -> Self {
        let l2 = lambda.clone() * lambda;
        let l3 = l2.clone() * lambda;
        let l4 = l3.clone() * lambda;
        DarbouxCoefficients {
            a0: self.a0.clone(),
            b: self.b.each_ref().map(|v| v.clone() * lambda),
            c: self.c.each_ref().map(|v| v.clone() * &l2),
            d: self.d.each_ref().map(|v| v.clone() * &l2),
            e: self.e.each_ref().map(|v| v.clone() * &l3),
            f0: self.f0.clone() * &l4,
        }
    }

    pub fn eval(&self, p: &[T; 3]) -> T {
        let [x, y, z] = p;
        let r = sq(x) + &sq(y) + &sq(z);
        let two = k::<T>(2);
        let bx = self.b[0].clone() * x + &(self.b[1].clone() * y) + &(self.b[2].clone() * z);
        let ex = self.e[0].clone() * x + &(self.e[1].clone() * y) + &(self.e[2].clone() * z);
        let quad = self.c[0].clone() * &sq(x)
            + &(self.c[1].clone() * &sq(y))
            + &(self.c[2].clone() * &sq(z))
            + &(two.clone() * &self.d[0] * y * z)
            + &(two.clone() * &self.d[1] * x * z)
            + &(two.clone() * &self.d[2] * x * y);
        self.a0.clone() * &r * &r + &(two.clone() * &bx * &r) + &quad + &(two * &ex) + &self.f0
    }

    pub fn to_poly(&self) -> TriPoly<T> {
        let mut p = TriPoly::zero();
        let two = k::<T>(2);
        for (m, c) in [([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1), ([2, 2, 0], 2), ([2, 0, 2], 2), ([0, 2, 2], 2)] {
            p.add_term(m, self.a0.clone() * &k(c));
        }
        for i in 0..3 {
            let b2 = self.b[i].clone() * &two;
            for j in 0..3 {
                let mut m = [0u8; 3];
                m[i] += 1;
                m[j] += 2;
                p.add_term(m, b2.clone());
            }
            let mut m = [0u8; 3];
            m[i] = 2;
            p.add_term(m, self.c[i].clone());
            let mut m = [1u8; 3];
            m[i] = 0;
            p.add_term(m, self.d[i].clone() * &two);
            let mut m = [0u8; 3];
            m[i] = 1;
            p.add_term(m, self.e[i].clone() * &two);
        }
        p.add_term([0, 0, 0], self.f0.clone());
        p
    }

    /// Reads Darboux coefficients off a polynomial. Fails if the polynomial is
    /// not of Darboux shape (exactly for rationals, relative 1e-9 for floats).
    pub fn from_poly(p: &TriPoly<T>) -> Result<Self, Error> {
        let half = T::one() / &k(2);
        let mut c = Self::zero();
        c.a0 = p.coeff([4, 0, 0]);
        for i in 0..3 {
            let mut m = [0u8; 3];
            m[i] = 3;
            c.b[i] = p.coeff(m) * &half;
            let mut m = [0u8; 3];
            m[i] = 2;
            c.c[i] = p.coeff(m);
            let mut m = [1u8; 3];
            m[i] = 0;
            c.d[i] = p.coeff(m) * &half;
            let mut m = [0u8; 3];
            m[i] = 1;
            c.e[i] = p.coeff(m) * &half;
        }
        c.f0 = p.coeff([0, 0, 0]);
        if p.degree().unwrap_or(0) > 4 {
            return Err(Error::NotDarboux("degree above four".into()));
        }
        let diff = p.sub(&c.to_poly());
        let scale = p.terms().map(|(_, v)| v.to_f64().abs()).fold(0.0, f64::max);
        for (m, v) in diff.terms() {
            let bad = if T::EXACT { !v.is_zero() } else { v.to_f64().abs() > 1e-9 * scale };
            if bad {
                return Err(Error::NotDarboux(format!("unexpected monomial x^{} y^{} z^{}", m[0], m[1], m[2])));
            }
        }
        Ok(c)
    }
}
