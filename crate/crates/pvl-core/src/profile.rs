//! One-dimensional radial profiles and quadrature.
//!
//! This is the closed-form side of the oracle pairs: profiles tabulate a
//! function of one radial variable together with a composite quadrature
//! rule, and the adaptive Gauss-Legendre integrator supplies reference
//! values independent of any grid pipeline.

use crate::error::{Error, Result};

/// Gauss-Legendre nodes and weights on `[-1, 1]`, computed by Newton
/// iteration on the Legendre polynomial.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n(x) and P_n'(x) by the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            dp = n as f64 * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn gl_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64, nodes: &[f64], weights: &[f64]) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut s = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        s += w * f(mid + half * x);
    }
    s * half
}

/// Composite Gauss-Legendre rule with `panels` equal panels of order `order`.
pub fn integrate_panels(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(order);
    let width = (b - a) / panels as f64;
    let mut s = 0.0;
    for p in 0..panels {
        let pa = a + p as f64 * width;
        s += gl_panel(&f, pa, pa + width, &nodes, &weights);
    }
    s
}

/// Adaptive Gauss-Legendre integration by panel bisection.
///
/// Accepts a panel when the GL10 value of the panel agrees with the sum of
/// its halves within the locally apportioned tolerance.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (nodes, weights) = gauss_legendre(10);
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: usize,
        nodes: &[f64],
        weights: &[f64],
    ) -> f64 {
        let mid = 0.5 * (a + b);
        let left = gl_panel(f, a, mid, nodes, weights);
        let right = gl_panel(f, mid, b, nodes, weights);
        if depth >= 48 || (left + right - whole).abs() <= tol {
            return left + right;
        }
        recurse(f, a, mid, left, 0.5 * tol, depth + 1, nodes, weights)
            + recurse(f, mid, b, right, 0.5 * tol, depth + 1, nodes, weights)
    }
    let whole = gl_panel(&f, a, b, &nodes, &weights);
    recurse(&f, a, b, whole, tol, 0, &nodes, &weights)
}

/// A tabulated function of one radial variable `r >= 0` on uniform nodes,
/// carrying composite Simpson weights and an explicit support radius.
#[derive(Clone, Debug)]
pub struct RadialProfile {
    nodes: Vec<f64>,
    values: Vec<f64>,
    weights: Vec<f64>,
    support_radius: f64,
}

fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    // n is odd (an even number of intervals).
    let mut w = vec![0.0; n];
    for (i, wi) in w.iter_mut().enumerate() {
        *wi = if i == 0 || i == n - 1 {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        } * h
            / 3.0;
    }
    w
}

impl RadialProfile {
    /// Tabulates `f` on `n` uniform nodes over `[0, r_max]` (n is rounded
    /// up to odd so the composite Simpson rule applies).
    pub fn from_fn(
        f: impl Fn(f64) -> f64,
        r_max: f64,
        n: usize,
        support_radius: f64,
    ) -> Result<Self> {
        if !(r_max > 0.0 && r_max.is_finite()) || support_radius < 0.0 {
            return Err(Error::InvalidField(format!(
                "bad profile extent r_max={r_max}, support={support_radius}"
            )));
        }
        let n = if n % 2 == 0 { n + 1 } else { n }.max(9);
        let h = r_max / (n - 1) as f64;
        let nodes: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
        let values: Vec<f64> = nodes
            .iter()
            .map(|&r| if r > support_radius { 0.0 } else { f(r) })
            .collect();
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidField("non-finite profile value".to_string()));
        }
        Ok(Self {
            nodes,
            values,
            weights: simpson_weights(n, h),
            support_radius,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn r_max(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    fn spacing(&self) -> f64 {
        self.nodes[1] - self.nodes[0]
    }

    /// Value at `r`: exactly zero beyond the support radius, otherwise a
    /// 6-point Lagrange interpolation of the table.
    pub fn eval(&self, r: f64) -> f64 {
        if r > self.support_radius || r < 0.0 {
            return 0.0;
        }
        let n = self.nodes.len();
        let h = self.spacing();
        let pos = r / h;
        let center = (pos.round() as isize).clamp(0, n as isize - 1) as usize;
        let lo = center.saturating_sub(2).min(n - 6);
        let mut sum = 0.0;
        for i in lo..lo + 6 {
            let mut basis = 1.0;
            for j in lo..lo + 6 {
                if j != i {
                    basis *= (r - self.nodes[j]) / (self.nodes[i] - self.nodes[j]);
                }
            }
            sum += basis * self.values[i];
        }
        sum
    }

    /// `sum_i w_i f_i`, the composite rule applied to the tabulated values.
    pub fn integral(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| v * w)
            .sum()
    }

    /// `sum_i w_i g(r_i) f_i` for a smooth weight `g`.
    pub fn integral_weighted(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(self.values.iter().zip(&self.weights))
            .map(|(&r, (v, w))| g(r) * v * w)
            .sum()
    }

    /// Profile of the outer integral `r -> sign * int_r^inf g(f(s), s) ds`,
    /// tabulated on the same nodes (the integrand vanishes beyond the
    /// support, so the upper limit is the support radius).
    pub fn outer_cumulative(
        &self,
        integrand: impl Fn(f64, f64) -> f64,
        sign: f64,
    ) -> RadialProfile {
        let n = self.nodes.len();
        let mut vals = vec![0.0; n];
        let (gn, gw) = gauss_legendre(6);
        let mut acc = 0.0;
        // March inward from r_max, accumulating per-interval GL6 panels.
        for i in (0..n - 1).rev() {
            let a = self.nodes[i];
            let b = self.nodes[i + 1];
            if a < self.support_radius {
                let f = |s: f64| integrand(self.eval(s), s);
                acc += gl_panel(&f, a, b.min(self.support_radius), &gn, &gw);
            }
            vals[i] = sign * acc;
        }
        RadialProfile {
            nodes: self.nodes.clone(),
            values: vals,
            weights: self.weights.clone(),
            support_radius: self.support_radius,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        // GL with n nodes is exact up to degree 2n-1.
        let (nodes, weights) = gauss_legendre(5);
        let val: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| w * (x.powi(8) + 3.0 * x.powi(3) - x))
            .sum();
        // int_{-1}^{1} x^8 = 2/9; odd terms vanish.
        assert!((val - 2.0 / 9.0).abs() < 1e-14, "got {val}");
    }

    #[test]
    fn adaptive_integrator_hits_reference_values() {
        let v = integrate(|x| x.exp(), 0.0, 1.0, 1e-13);
        assert!((v - (1.0f64.exp() - 1.0)).abs() < 1e-12);
        // A sharper integrand: int_0^1 1/sqrt(x+1e-4) dx.
        let v = integrate(|x| 1.0 / (x + 1e-4).sqrt(), 0.0, 1.0, 1e-12);
        let exact = 2.0 * ((1.0f64 + 1e-4).sqrt() - 1e-2);
        assert!((v - exact).abs() < 1e-10, "got {v}, want {exact}");
    }

    #[test]
    fn profile_rule_integrates_polynomial_within_1e10() {
        let p = RadialProfile::from_fn(|r| r * r * (1.0 - r), 1.0, 2049, 1.0).unwrap();
        // int_0^1 r^2 (1 - r) dr = 1/12.
        assert!((p.integral() - 1.0 / 12.0).abs() < 1e-10);
    }

    #[test]
    fn profile_eval_interpolates_and_vanishes_beyond_support() {
        let p = RadialProfile::from_fn(|r| (3.0 * r).sin(), 2.0, 513, 1.5).unwrap();
        assert!((p.eval(0.7371) - (3.0 * 0.7371f64).sin()).abs() < 1e-10);
        assert_eq!(p.eval(1.7), 0.0);
    }

    #[test]
    fn outer_cumulative_matches_closed_form() {
        // f(r) = r on [0, 1]; int_r^1 s^2 / s ds applied to f^2/s gives
        // int_r^1 s ds = (1 - r^2) / 2.
        let f = RadialProfile::from_fn(|r| r, 1.0, 1025, 1.0).unwrap();
        let p = f.outer_cumulative(|fv, s| fv * fv / s, -1.0);
        for &r in &[0.0, 0.25, 0.5, 0.9] {
            let want = -(1.0 - r * r) / 2.0;
            assert!((p.eval(r) - want).abs() < 1e-10, "r={r}");
        }
    }
}
