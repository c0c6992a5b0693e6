//! Fourier machinery: transforms, spectral differentiation, and
//! trigonometric interpolation of the periodic representation.
//!
//! Conventions: forward transforms are unnormalized
//! (`F[m] = sum_j f_j exp(-2 pi i m.j / M)`); the inverse divides by
//! `M^dim`. The wavenumber of FFT index `j` along an axis is
//! `k = pi * m / L` with `m = j` for `j <= M/2` and `m = j - M` otherwise,
//! matching the `2L` period of the box.

use std::cell::RefCell;
use std::sync::Arc;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::grid::{GridSpec, ScalarField, VectorField, MAX_DIM};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

pub(crate) fn plan(len: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(len, direction))
}

/// In-place FFT along every axis of a row-major array.
pub(crate) fn fft_all_axes(data: &mut [Complex64], shape: &[usize], direction: FftDirection) {
    let total: usize = shape.iter().product();
    debug_assert_eq!(data.len(), total);
    let dim = shape.len();
    for axis in 0..dim {
        let len = shape[axis];
        let fft = plan(len, direction);
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        let inner: usize = shape[axis + 1..].iter().product();
        if inner == 1 {
            for lane in data.chunks_exact_mut(len) {
                fft.process_with_scratch(lane, &mut scratch);
            }
        } else {
            let outer = total / (len * inner);
            let mut lane = vec![Complex64::default(); len];
            for o in 0..outer {
                let base0 = o * len * inner;
                for i in 0..inner {
                    let base = base0 + i;
                    for (j, l) in lane.iter_mut().enumerate() {
                        *l = data[base + j * inner];
                    }
                    fft.process_with_scratch(&mut lane, &mut scratch);
                    for (j, l) in lane.iter().enumerate() {
                        data[base + j * inner] = *l;
                    }
                }
            }
        }
    }
}

/// Signed integer frequency of FFT index `j` for transform length `m`.
pub(crate) fn signed_freq(m: usize, j: usize) -> i64 {
    if j <= m / 2 {
        j as i64
    } else {
        j as i64 - m as i64
    }
}

/// Wavenumber `pi * m_signed / L` of FFT index `j`.
pub(crate) fn wavenumber(half_width: f64, m: usize, j: usize) -> f64 {
    std::f64::consts::PI * signed_freq(m, j) as f64 / half_width
}

/// Complex DFT coefficients of a scalar field, same row-major layout.
#[derive(Clone)]
pub(crate) struct Spectrum {
    pub grid: GridSpec,
    pub data: Vec<Complex64>,
}

impl Spectrum {
    pub fn shape(&self) -> Vec<usize> {
        vec![self.grid.points(); self.grid.dim()]
    }
}

pub(crate) fn forward(f: &ScalarField) -> Spectrum {
    let grid = f.grid();
    let mut data: Vec<Complex64> = f
        .samples()
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    fft_all_axes(&mut data, &vec![grid.points(); grid.dim()], FftDirection::Forward);
    Spectrum { grid, data }
}

pub(crate) fn inverse(spec: &Spectrum) -> ScalarField {
    let grid = spec.grid;
    let mut data = spec.data.clone();
    fft_all_axes(&mut data, &spec.shape(), FftDirection::Inverse);
    let norm = 1.0 / grid.len() as f64;
    let samples: Vec<f64> = data.iter().map(|c| c.re * norm).collect();
    ScalarField::from_samples(grid, samples).expect("inverse transform produced non-finite data")
}

/// Applies `multiplier(axis_index_j)` along one axis of a spectrum in place.
fn apply_axis_multiplier(
    spec: &mut Spectrum,
    axis: usize,
    multiplier: impl Fn(usize) -> Complex64,
) {
    let m = spec.grid.points();
    let stride = spec.grid.strides()[axis];
    let table: Vec<Complex64> = (0..m).map(multiplier).collect();
    for (flat, v) in spec.data.iter_mut().enumerate() {
        let j = (flat / stride) % m;
        *v *= table[j];
    }
}

fn derivative_multiplier(half_width: f64, m: usize, order: usize) -> impl Fn(usize) -> Complex64 {
    move |j: usize| {
        let k = wavenumber(half_width, m, j);
        match order {
            1 => {
                // Odd-order derivatives zero the Nyquist mode.
                if j == m / 2 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(0.0, k)
                }
            }
            2 => Complex64::new(-k * k, 0.0),
            _ => unreachable!("order validated by caller"),
        }
    }
}

/// Spectral partial derivative of order 1 or 2 along `axis` (0-based).
pub fn partial_derivative(f: &ScalarField, axis: usize, order: usize) -> Result<ScalarField> {
    let grid = f.grid();
    if axis >= grid.dim() {
        return Err(Error::GridCompatibility(format!(
            "axis {axis} out of range for dim {}",
            grid.dim()
        )));
    }
    if !(1..=2).contains(&order) {
        return Err(Error::UnsupportedOrder(order));
    }
    let mut spec = forward(f);
    apply_axis_multiplier(
        &mut spec,
        axis,
        derivative_multiplier(grid.half_width(), grid.points(), order),
    );
    Ok(inverse(&spec))
}

/// Spectral divergence `sum_a d_a v_a`.
pub fn divergence(v: &VectorField) -> Result<ScalarField> {
    let grid = v.grid();
    let shape = vec![grid.points(); grid.dim()];
    let mut acc = vec![Complex64::default(); grid.len()];
    for a in 0..grid.dim() {
        let mut spec = forward(&v.component_field(a));
        apply_axis_multiplier(
            &mut spec,
            a,
            derivative_multiplier(grid.half_width(), grid.points(), 1),
        );
        for (s, d) in acc.iter_mut().zip(&spec.data) {
            *s += d;
        }
    }
    let mut spec = Spectrum { grid, data: acc };
    fft_all_axes(&mut spec.data, &shape, FftDirection::Inverse);
    let norm = 1.0 / grid.len() as f64;
    let samples = spec.data.iter().map(|c| c.re * norm).collect();
    ScalarField::from_samples(grid, samples)
}

/// Spectral Laplacian (the Nyquist mode keeps its `-k^2` weight).
pub fn laplacian(f: &ScalarField) -> ScalarField {
    let grid = f.grid();
    let mut spec = forward(f);
    let m = grid.points();
    let strides = grid.strides();
    let l = grid.half_width();
    let ksq: Vec<f64> = (0..m).map(|j| wavenumber(l, m, j).powi(2)).collect();
    for (flat, v) in spec.data.iter_mut().enumerate() {
        let mut s = 0.0;
        for a in 0..grid.dim() {
            let j = (flat / strides[a]) % m;
            s += ksq[j];
        }
        *v *= Complex64::new(-s, 0.0);
    }
    inverse(&spec)
}

/// Phase table `exp(i pi m_signed (x + L) / L)` in FFT index order.
pub(crate) fn phase_table(half_width: f64, m: usize, x: f64) -> Vec<Complex64> {
    let base = std::f64::consts::PI * (x + half_width) / half_width;
    (0..m)
        .map(|j| {
            let theta = base * signed_freq(m, j) as f64;
            Complex64::from_polar(1.0, theta)
        })
        .collect()
}

/// Evaluates the trigonometric interpolant of a spectrum at one point by
/// full summation over modes (separable contraction, `O(M^dim)`).
pub(crate) fn eval_interpolant(spec: &Spectrum, point: &[f64]) -> f64 {
    let grid = spec.grid;
    let m = grid.points();
    let l = grid.half_width();
    let dim = grid.dim();
    let tables: Vec<Vec<Complex64>> = (0..dim).map(|a| phase_table(l, m, point[a])).collect();
    let total = match dim {
        2 => {
            let t0 = &tables[0];
            let t1 = &tables[1];
            let mut acc = Complex64::default();
            for (i, w0) in t0.iter().enumerate() {
                let row = &spec.data[i * m..(i + 1) * m];
                let mut inner = Complex64::default();
                for (c, w1) in row.iter().zip(t1.iter()) {
                    inner += c * w1;
                }
                acc += w0 * inner;
            }
            acc
        }
        3 => {
            let t0 = &tables[0];
            let t1 = &tables[1];
            let t2 = &tables[2];
            let mut acc = Complex64::default();
            for (i, w0) in t0.iter().enumerate() {
                let plane = &spec.data[i * m * m..(i + 1) * m * m];
                let mut mid = Complex64::default();
                for (j, w1) in t1.iter().enumerate() {
                    let row = &plane[j * m..(j + 1) * m];
                    let mut inner = Complex64::default();
                    for (c, w2) in row.iter().zip(t2.iter()) {
                        inner += c * w2;
                    }
                    mid += w1 * inner;
                }
                acc += w0 * mid;
            }
            acc
        }
        _ => unreachable!(),
    };
    total.re / grid.len() as f64
}

/// Trigonometric (spectral) interpolation at points inside the box.
///
/// Exact on grid nodes and for band-limited data; points outside the box
/// are an error. Unused trailing point coordinates are ignored.
pub fn interpolate(f: &ScalarField, points: &[[f64; MAX_DIM]]) -> Result<Vec<f64>> {
    let grid = f.grid();
    for p in points {
        if !grid.contains(&p[..grid.dim()]) {
            return Err(Error::OutOfDomain {
                point: p[..grid.dim()].to_vec(),
                half_width: grid.half_width(),
                dim: grid.dim(),
            });
        }
    }
    let spec = forward(f);
    Ok(points
        .par_iter()
        .map(|p| eval_interpolant(&spec, &p[..grid.dim()]))
        .collect())
}

/// Interpolation against a precomputed spectrum, without the domain check
/// (evaluating the periodic extension is well defined everywhere).
pub(crate) fn interpolate_spectrum(spec: &Spectrum, points: &[[f64; MAX_DIM]]) -> Vec<f64> {
    points
        .par_iter()
        .map(|p| eval_interpolant(spec, &p[..spec.grid.dim()]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid2(m: usize, l: f64) -> GridSpec {
        GridSpec::new(2, m, l).unwrap()
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let g = grid2(32, 1.0);
        let f = ScalarField::from_fn(g, |_| 3.25);
        let d = partial_derivative(&f, 0, 1).unwrap();
        assert!(d.max_abs() < 1e-13);
    }

    #[test]
    fn second_derivative_eigenfunction() {
        // f = sin(pi x / L) is an eigenfunction with eigenvalue -(pi/L)^2.
        let l = 1.7;
        let g = grid2(64, l);
        let f = ScalarField::from_fn(g, |x| (PI * x[0] / l).sin());
        let d2 = partial_derivative(&f, 0, 2).unwrap();
        let lam = -(PI / l).powi(2);
        let mut err = 0.0f64;
        for (a, b) in d2.samples().iter().zip(f.samples()) {
            err = err.max((a - lam * b).abs());
        }
        assert!(err < 1e-11, "eigenfunction error {err}");
    }

    #[test]
    fn mixed_partials_commute() {
        let g = grid2(32, 1.0);
        // Band-limited pseudo-random data: a handful of low modes.
        let f = ScalarField::from_fn(g, |x| {
            (PI * x[0]).sin() * (2.0 * PI * x[1]).cos()
                + 0.3 * (3.0 * PI * x[0]).cos() * (PI * x[1]).sin()
        });
        let d12 = partial_derivative(&partial_derivative(&f, 0, 1).unwrap(), 1, 1).unwrap();
        let d21 = partial_derivative(&partial_derivative(&f, 1, 1).unwrap(), 0, 1).unwrap();
        let scale = d12.max_abs().max(1e-300);
        let mut err = 0.0f64;
        for (a, b) in d12.samples().iter().zip(d21.samples()) {
            err = err.max((a - b).abs());
        }
        assert!(err / scale < 1e-12, "relative asymmetry {}", err / scale);
    }

    #[test]
    fn band_limited_derivative_is_exact() {
        // Modes up to M/3 are differentiated to ~machine precision.
        let l = 1.0;
        let g = grid2(64, l);
        let kx = 10.0 * PI / l; // mode 10 < 64/3 on the half-axis? 64/3 = 21.
        let f = ScalarField::from_fn(g, |x| (kx * x[0]).sin());
        let d = partial_derivative(&f, 0, 1).unwrap();
        let mut err = 0.0f64;
        for (flat, v) in d.samples().iter().enumerate() {
            let x = g.node(flat);
            err = err.max((v - kx * (kx * x[0]).cos()).abs());
        }
        assert!(err / kx < 1e-10, "relative error {}", err / kx);
    }

    #[test]
    fn interpolation_is_nodal_exact_and_reproduces_band_limited() {
        let l = 2.0;
        let g = grid2(32, l);
        let f = ScalarField::from_fn(g, |x| (PI * x[0] / l).cos() * (PI * x[1] / l).sin());
        // Node exactness.
        let pts: Vec<[f64; 3]> = vec![[g.coord(3), g.coord(17), 0.0], [g.coord(0), g.coord(31), 0.0]];
        let vals = interpolate(&f, &pts).unwrap();
        assert!((vals[0] - f.samples()[g.flat_index(&[3, 17])]).abs() < 1e-13);
        assert!((vals[1] - f.samples()[g.flat_index(&[0, 31])]).abs() < 1e-13);
        // Band-limited off-node value: cos(pi/2 / L * ...) at x = L/2.
        let p = [[l / 2.0, 0.37, 0.0]];
        let v = interpolate(&f, &p).unwrap()[0];
        let exact = (PI / 2.0).cos() * (PI * 0.37 / l).sin();
        assert!((v - exact).abs() < 1e-12, "got {v}, want {exact}");
    }

    #[test]
    fn interpolation_rejects_outside_points() {
        let g = grid2(16, 1.0);
        let f = ScalarField::zeros(g);
        let err = interpolate(&f, &[[1.0, 0.0, 0.0]]);
        assert!(matches!(err, Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn laplacian_matches_sum_of_second_derivatives() {
        let g = grid2(32, 1.0);
        let f = ScalarField::from_fn(g, |x| (2.0 * PI * x[0]).cos() * (PI * x[1]).sin());
        let lap = laplacian(&f);
        let mut d = partial_derivative(&f, 0, 2).unwrap();
        let d2 = partial_derivative(&f, 1, 2).unwrap();
        d.add(&d2).unwrap();
        let mut err = 0.0f64;
        for (a, b) in lap.samples().iter().zip(d.samples()) {
            err = err.max((a - b).abs());
        }
        assert!(err < 1e-9 * lap.max_abs().max(1.0));
    }

    #[test]
    fn divergence_of_constant_field_is_zero() {
        let g = grid2(32, 1.0);
        let v = VectorField::from_components(
            g,
            vec![vec![1.5; g.len()], vec![-0.25; g.len()]],
        )
        .unwrap();
        let d = divergence(&v).unwrap();
        assert!(d.max_abs() < 1e-13);
    }
}
