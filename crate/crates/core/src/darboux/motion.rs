use crate::scalar::{k, Scalar};
use crate::Error;

use super::DarbouxCoefficients;

/// `x -> R x + t` with `R` orthogonal.
#[derive(Clone, Debug, PartialEq)]
pub struct EuclideanMotion<T> {
    pub rotation: [[T; 3]; 3],
    pub translation: [T; 3],
}

impl<T: Scalar> EuclideanMotion<T> {
    pub fn identity() -> Self {
        let o = T::zero;
        let l = T::one;
        EuclideanMotion { rotation: [[l(), o(), o()], [o(), l(), o()], [o(), o(), l()]], translation: [o(), o(), o()] }
    }

    pub fn translation(t: [T; 3]) -> Self {
        EuclideanMotion { translation: t, ..Self::identity() }
    }

    pub fn rotation(r: [[T; 3]; 3]) -> Self {
        EuclideanMotion { rotation: r, ..Self::identity() }
    }

    pub fn apply_point(&self, p: &[T; 3]) -> [T; 3] {
        [0, 1, 2].map(|i| {
            let r = &self.rotation[i];
            r[0].clone() * &p[0] + &(r[1].clone() * &p[1]) + &(r[2].clone() * &p[2]) + &self.translation[i]
        })
    }

    /// `self o other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        let r = [0, 1, 2].map(|i| {
            [0, 1, 2].map(|j| {
                (0..3).fold(T::zero(), |acc, m| acc + &(self.rotation[i][m].clone() * &other.rotation[m][j]))
            })
        });
        EuclideanMotion { rotation: r, translation: self.apply_point(&other.translation) }
    }

    pub fn inverse(&self) -> Self {
        let rt = [0, 1, 2].map(|i| [0, 1, 2].map(|j| self.rotation[j][i].clone()));
        let back = EuclideanMotion { rotation: rt, translation: [T::zero(), T::zero(), T::zero()] };
        let t = back.apply_point(&self.translation).map(|v| -v);
        EuclideanMotion { translation: t, ..back }
    }

    /// Largest entry of `R R^T - I`.
    pub fn orthogonality_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = (0..3).fold(T::zero(), |acc, m| acc + &(self.rotation[i][m].clone() * &self.rotation[j][m]));
                if i == j {
                    s = s - &T::one();
                }
                if s.abs() > worst {
                    worst = s.abs();
                }
            }
        }
        worst
    }

    pub fn is_orthogonal(&self) -> bool {
        let d = self.orthogonality_defect();
        if T::EXACT {
            d.is_zero()
        } else {
            d.to_f64() <= 1e-12
        }
    }

    pub fn to_f64(&self) -> EuclideanMotion<f64> {
        EuclideanMotion {
            rotation: self.rotation.each_ref().map(|r| r.each_ref().map(|v| v.to_f64())),
            translation: self.translation.each_ref().map(|v| v.to_f64()),
        }
    }
}

/// Precomposition `G(x) = F(R x + t)`: the surface `G = 0` is the preimage of
/// `F = 0` under the motion. Consequently
/// `apply_motion(apply_motion(c, m1), m2) == apply_motion(c, m1.compose(m2))`.
pub fn apply_motion<T: Scalar>(c: &DarbouxCoefficients<T>, m: &EuclideanMotion<T>) -> Result<DarbouxCoefficients<T>, Error> {
    if !m.is_orthogonal() {
        return Err(Error::NotOrthogonal);
    }
    let p = c.to_poly().substitute_affine(&m.rotation, &m.translation);
    DarbouxCoefficients::from_poly(&p)
}

/// Divides by `a0` and translates so that `b = 0`. Returns the normalized
/// coefficients and the translation `t` with `normalized(x) = F(x + t) / a0`.
pub fn normalize_quartic<T: Scalar>(c: &DarbouxCoefficients<T>) -> Result<(DarbouxCoefficients<T>, [T; 3]), Error> {
    if c.a0.is_zero() {
        return Err(Error::NotQuartic);
    }
    let inv = T::one() / &c.a0;
    let mut unit = c.scale(&inv);
    unit.a0 = T::one();
    let half = T::one() / &k(2);
    let t = unit.b.each_ref().map(|v| -(v.clone() * &half));
    let mut out = apply_motion(&unit, &EuclideanMotion::translation(t.clone()))?;
    // b vanishes identically; clear float round-off
    out.b = [T::zero(), T::zero(), T::zero()];
    Ok((out, t))
}
