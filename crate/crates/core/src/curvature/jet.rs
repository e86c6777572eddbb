//! Truncated Taylor series in one variable.
//!
//! A `Jet<N>` stores `f(x₀), f'(x₀), f''(x₀)/2!, …` up to order `N - 1`, so
//! arithmetic on jets propagates exact derivatives through closed-form
//! profiles and the cutoff bump.

use core::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<const N: usize> {
    c: [f64; N],
}

impl<const N: usize> Jet<N> {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = v;
        Jet { c }
    }

    /// The identity function expanded at `x`.
    pub fn variable(x: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = x;
        if N > 1 {
            c[1] = 1.0;
        }
        Jet { c }
    }

    pub fn from_coefficients(c: [f64; N]) -> Self {
        Jet { c }
    }

    pub fn coefficients(&self) -> &[f64; N] {
        &self.c
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// `m`-th derivative at the expansion point.
    pub fn derivative(&self, m: usize) -> f64 {
        let fact: f64 = (1..=m).map(|k| k as f64).product();
        self.c[m] * fact
    }

    /// Jet of the derivative; the top coefficient is lost and set to zero.
    pub fn differentiate(&self) -> Self {
        let mut c = [0.0; N];
        for k in 0..N.saturating_sub(1) {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Jet { c }
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut c = self.c;
        c.iter_mut().for_each(|x| *x *= s);
        Jet { c }
    }

    pub fn recip(&self) -> Self {
        let a = &self.c;
        let mut b = [0.0; N];
        b[0] = 1.0 / a[0];
        for k in 1..N {
            let s: f64 = (1..=k).map(|j| a[j] * b[k - j]).sum();
            b[k] = -s * b[0];
        }
        Jet { c: b }
    }

    pub fn exp(&self) -> Self {
        let a = &self.c;
        let mut b = [0.0; N];
        b[0] = libm::exp(a[0]);
        for k in 1..N {
            let s: f64 = (1..=k).map(|j| j as f64 * a[j] * b[k - j]).sum();
            b[k] = s / k as f64;
        }
        Jet { c: b }
    }

    pub fn sqrt(&self) -> Self {
        let a = &self.c;
        let mut b = [0.0; N];
        b[0] = libm::sqrt(a[0]);
        for k in 1..N {
            let s: f64 = (1..k).map(|j| b[j] * b[k - j]).sum();
            b[k] = (a[k] - s) / (2.0 * b[0]);
        }
        Jet { c: b }
    }

    pub fn powi(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(1.0), |acc, _| acc * *self)
    }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self.c.iter_mut().zip(o.c).for_each(|(x, y)| *x += y);
        self
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        self.c.iter_mut().zip(o.c).for_each(|(x, y)| *x -= y);
        self
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut c = [0.0; N];
        for i in 0..N {
            for j in 0..N - i {
                c[i + j] += self.c[i] * o.c[j];
            }
        }
        Jet { c }
    }
}

impl<const N: usize> Div for Jet<N> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl<const N: usize> Add<f64> for Jet<N> {
    type Output = Self;
    fn add(mut self, o: f64) -> Self {
        self.c[0] += o;
        self
    }
}

impl<const N: usize> Sub<f64> for Jet<N> {
    type Output = Self;
    fn sub(mut self, o: f64) -> Self {
        self.c[0] -= o;
        self
    }
}

impl<const N: usize> Mul<f64> for Jet<N> {
    type Output = Self;
    fn mul(self, o: f64) -> Self {
        self.scale(o)
    }
}

impl<const N: usize> Sub<Jet<N>> for f64 {
    type Output = Jet<N>;
    fn sub(self, o: Jet<N>) -> Jet<N> {
        -o + self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + b.abs())
    }

    #[test]
    fn polynomial_derivatives() {
        let x = Jet::<4>::variable(2.0);
        let p = x.powi(3) * 2.0 - x + 1.0; // 2x³ - x + 1
        assert!(close(p.value(), 15.0));
        assert!(close(p.derivative(1), 23.0));
        assert!(close(p.derivative(2), 24.0));
        assert!(close(p.derivative(3), 12.0));
    }

    #[test]
    fn transcendental_rules() {
        let x = Jet::<3>::variable(0.7);
        let e = (x * 2.0).exp();
        assert!(close(e.derivative(2), 4.0 * libm::exp(1.4)));
        let s = x.sqrt();
        assert!(close(s.derivative(1), 0.5 / libm::sqrt(0.7)));
        assert!(close(s.derivative(2), -0.25 * libm::pow(0.7, -1.5)));
        let r = x.recip();
        assert!(close(r.derivative(2), 2.0 / (0.7 * 0.7 * 0.7)));
        let d = (x * x).differentiate();
        assert!(close(d.value(), 1.4));
        assert!(close(d.derivative(1), 2.0));
    }
}
