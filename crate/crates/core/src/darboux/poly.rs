use std::collections::BTreeMap;

use crate::scalar::Scalar;

pub type Monomial = [u8; 3];

/// Sparse polynomial in x, y, z. Used as the ground truth for substitutions;
/// the closed-form coefficient updates elsewhere are only cross-checks.
#[derive(Clone, Debug, PartialEq)]
pub struct TriPoly<T> {
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> TriPoly<T> {
    pub fn zero() -> Self {
        TriPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(m: Monomial, c: T) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// `c0 + l0 x + l1 y + l2 z`
    pub fn linear(l: &[T; 3], c0: &T) -> Self {
        let mut p = Self::constant(c0.clone());
        for (i, li) in l.iter().enumerate() {
            let mut m = [0u8; 3];
            m[i] = 1;
            p.add_term(m, li.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(T::zero);
        *entry = entry.clone() + &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn coeff(&self, m: Monomial) -> T {
        self.terms.get(&m).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().map(|&e| e as u32).sum()).max()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.clone() * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
                out.add_term(m, ca.clone() * cb);
            }
        }
        out
    }

    pub fn eval(&self, p: &[T; 3]) -> T {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..m[i] {
                    t = t * &p[i];
                }
            }
            acc = acc + &t;
        }
        acc
    }

    /// Sum of absolute values of the terms at `p`, the natural scale for a
    /// relative residual.
    pub fn eval_abs_terms(&self, p: &[T; 3]) -> T {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..m[i] {
                    t = t * &p[i];
                }
            }
            acc = acc + &t.abs();
        }
        acc
    }

    /// Precomposition with an affine map: `x_i -> sum_j a[i][j] x_j + t[i]`.
    pub fn substitute_affine(&self, a: &[[T; 3]; 3], t: &[T; 3]) -> Self {
        let max_deg = self.terms.keys().flat_map(|m| m.iter().copied()).max().unwrap_or(0) as usize;
        let images: Vec<TriPoly<T>> = (0..3).map(|i| Self::linear(&a[i], &t[i])).collect();
        let mut powers: Vec<Vec<TriPoly<T>>> = Vec::with_capacity(3);
        for img in &images {
            let mut pw = vec![Self::constant(T::one())];
            for k in 1..=max_deg {
                let next = pw[k - 1].mul(img);
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let term = powers[0][m[0] as usize]
                .mul(&powers[1][m[1] as usize])
                .mul(&powers[2][m[2] as usize]);
            out = out.add(&term.scale(c));
        }
        out
    }
}
