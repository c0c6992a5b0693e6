//! Uniform periodic-representation Cartesian grids and sampled fields.
//!
//! Fields live on `[-L, L)^dim` with `M` nodes per axis and are stored
//! row-major (last axis fastest). Although the storage is periodic, every
//! generator in this crate produces data supported well inside the box, so
//! the samples represent compactly supported functions on the whole space
//! and spectral differentiation is free of wraparound artifacts.

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 3;

/// Grid metadata: dimension (2 or 3), half-width `L`, nodes per axis `M`.
///
/// Node coordinates along each axis are `x = -L + i * h` with `h = 2L / M`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    dim: usize,
    points: usize,
    half_width: f64,
}

impl GridSpec {
    pub fn new(dim: usize, points: usize, half_width: f64) -> Result<Self> {
        if !(2..=MAX_DIM).contains(&dim) {
            return Err(Error::GridCompatibility(format!(
                "dim must be 2 or 3, got {dim}"
            )));
        }
        if !points.is_power_of_two() || points < 16 {
            return Err(Error::GridCompatibility(format!(
                "points per axis must be a power of two >= 16, got {points}"
            )));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::GridCompatibility(format!(
                "half-width must be positive and finite, got {half_width}"
            )));
        }
        Ok(Self {
            dim,
            points,
            half_width,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points as f64
    }

    /// Total node count `M^dim`.
    pub fn len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coordinate of node index `i` along any axis.
    pub fn coord(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.spacing()
    }

    /// Row-major strides, last axis fastest.
    pub fn strides(&self) -> [usize; MAX_DIM] {
        let mut s = [0usize; MAX_DIM];
        let mut acc = 1;
        for a in (0..self.dim).rev() {
            s[a] = acc;
            acc *= self.points;
        }
        s
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dim);
        let s = self.strides();
        let mut flat = 0;
        for a in 0..self.dim {
            debug_assert!(idx[a] < self.points);
            flat += idx[a] * s[a];
        }
        flat
    }

    /// Multi-index of a flat offset.
    pub fn multi_index(&self, flat: usize) -> [usize; MAX_DIM] {
        let mut idx = [0usize; MAX_DIM];
        let mut rem = flat;
        for a in (0..self.dim).rev() {
            idx[a] = rem % self.points;
            rem /= self.points;
        }
        idx
    }

    /// Node coordinates of a flat offset (unused trailing entries are 0).
    pub fn node(&self, flat: usize) -> [f64; MAX_DIM] {
        let idx = self.multi_index(flat);
        let mut x = [0.0; MAX_DIM];
        for a in 0..self.dim {
            x[a] = self.coord(idx[a]);
        }
        x
    }

    /// Euclidean distance of a node from the box center.
    pub fn node_radius(&self, flat: usize) -> f64 {
        let x = self.node(flat);
        x[..self.dim].iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.dim
            && point
                .iter()
                .all(|&c| c >= -self.half_width && c < self.half_width)
    }
}

fn check_finite(samples: &[f64]) -> Result<()> {
    if samples.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidField(
            "non-finite sample encountered".to_string(),
        ))
    }
}

/// A scalar sampled on a [`GridSpec`], row-major.
#[derive(Clone, Debug)]
pub struct ScalarField {
    grid: GridSpec,
    samples: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            samples: vec![0.0; grid.len()],
        }
    }

    pub fn from_samples(grid: GridSpec, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::InvalidField(format!(
                "expected {} samples, got {}",
                grid.len(),
                samples.len()
            )));
        }
        check_finite(&samples)?;
        Ok(Self { grid, samples })
    }

    /// Sample a closure at every node.
    pub fn from_fn(grid: GridSpec, f: impl Fn(&[f64]) -> f64 + Sync) -> Self {
        let mut samples = vec![0.0; grid.len()];
        for (flat, v) in samples.iter_mut().enumerate() {
            let x = grid.node(flat);
            *v = f(&x[..grid.dim()]);
        }
        Self { grid, samples }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [f64] {
        &mut self.samples
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Box integral by the trapezoidal rule (exact for the periodic
    /// representation): `h^dim * sum(samples)`.
    pub fn box_integral(&self) -> f64 {
        let hd = self.grid.spacing().powi(self.grid.dim() as i32);
        hd * self.samples.iter().sum::<f64>()
    }

    /// `h^dim * sum(|samples|)`, the discrete L1 norm.
    pub fn l1_norm(&self) -> f64 {
        let hd = self.grid.spacing().powi(self.grid.dim() as i32);
        hd * self.samples.iter().map(|v| v.abs()).sum::<f64>()
    }

    pub fn scale(&mut self, factor: f64) {
        for v in &mut self.samples {
            *v *= factor;
        }
    }

    /// Pointwise sum; grids must match.
    pub fn add(&mut self, other: &ScalarField) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridCompatibility(
                "cannot add fields on different grids".to_string(),
            ));
        }
        for (a, b) in self.samples.iter_mut().zip(&other.samples) {
            *a += b;
        }
        Ok(())
    }

    /// Largest node radius carrying a sample above `threshold * max_abs`.
    /// Returns 0 for an identically zero field.
    pub fn support_radius(&self, threshold: f64) -> f64 {
        let cut = threshold * self.max_abs();
        let mut r = 0.0f64;
        for (flat, v) in self.samples.iter().enumerate() {
            if v.abs() > cut {
                r = r.max(self.grid.node_radius(flat));
            }
        }
        r
    }
}

/// A `dim`-component vector field sampled on a [`GridSpec`].
#[derive(Clone, Debug)]
pub struct VectorField {
    grid: GridSpec,
    components: Vec<Vec<f64>>,
    solenoidal: bool,
}

impl VectorField {
    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            components: (0..grid.dim()).map(|_| vec![0.0; grid.len()]).collect(),
            solenoidal: true,
        }
    }

    pub fn from_components(grid: GridSpec, components: Vec<Vec<f64>>) -> Result<Self> {
        if components.len() != grid.dim() {
            return Err(Error::InvalidField(format!(
                "expected {} components, got {}",
                grid.dim(),
                components.len()
            )));
        }
        for c in &components {
            if c.len() != grid.len() {
                return Err(Error::InvalidField(format!(
                    "component length {} does not match grid size {}",
                    c.len(),
                    grid.len()
                )));
            }
            check_finite(c)?;
        }
        Ok(Self {
            grid,
            components,
            solenoidal: false,
        })
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn component(&self, a: usize) -> &[f64] {
        &self.components[a]
    }

    pub fn component_mut(&mut self, a: usize) -> &mut [f64] {
        &mut self.components[a]
    }

    pub fn component_field(&self, a: usize) -> ScalarField {
        ScalarField {
            grid: self.grid,
            samples: self.components[a].clone(),
        }
    }

    /// Whether the field was constructed by a divergence-free recipe.
    pub fn is_solenoidal(&self) -> bool {
        self.solenoidal
    }

    pub(crate) fn set_solenoidal(&mut self, flag: bool) {
        self.solenoidal = flag;
    }

    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for c in &self.components {
            for v in c {
                m = m.max(v.abs());
            }
        }
        m
    }

    /// Pointwise Euclidean norm at a flat node index.
    pub fn norm_at(&self, flat: usize) -> f64 {
        self.components
            .iter()
            .map(|c| c[flat] * c[flat])
            .sum::<f64>()
            .sqrt()
    }

    /// Discrete squared L2 norm `h^dim * sum |v|^2`.
    pub fn energy(&self) -> f64 {
        let hd = self.grid.spacing().powi(self.grid.dim() as i32);
        let mut s = 0.0;
        for c in &self.components {
            s += c.iter().map(|v| v * v).sum::<f64>();
        }
        hd * s
    }

    /// Root-mean-square amplitude over the box.
    pub fn box_rms(&self) -> f64 {
        let n = (self.grid.dim() * self.grid.len()) as f64;
        let mut s = 0.0;
        for c in &self.components {
            s += c.iter().map(|v| v * v).sum::<f64>();
        }
        (s / n * self.grid.dim() as f64).sqrt()
    }

    pub fn scale(&mut self, factor: f64) {
        for c in &mut self.components {
            for v in c {
                *v *= factor;
            }
        }
    }

    /// Largest node radius where `|v| > threshold * max_abs`.
    pub fn support_radius(&self, threshold: f64) -> f64 {
        let cut = threshold * self.max_abs();
        let mut r = 0.0f64;
        for flat in 0..self.grid.len() {
            if self.norm_at(flat) > cut {
                r = r.max(self.grid.node_radius(flat));
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_rejects_bad_parameters() {
        assert!(GridSpec::new(1, 32, 1.0).is_err());
        assert!(GridSpec::new(4, 32, 1.0).is_err());
        assert!(GridSpec::new(2, 24, 1.0).is_err());
        assert!(GridSpec::new(2, 8, 1.0).is_err());
        assert!(GridSpec::new(2, 32, -1.0).is_err());
        assert!(GridSpec::new(2, 32, 1.0).is_ok());
    }

    #[test]
    fn indexing_round_trips() {
        let g = GridSpec::new(3, 16, 2.0).unwrap();
        for flat in [0usize, 1, 17, 255, 4095] {
            let idx = g.multi_index(flat);
            assert_eq!(g.flat_index(&idx[..3]), flat);
        }
        assert_eq!(g.coord(0), -2.0);
        assert_eq!(g.coord(8), 0.0);
        assert!((g.spacing() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn fields_reject_non_finite() {
        let g = GridSpec::new(2, 16, 1.0).unwrap();
        let mut s = vec![0.0; g.len()];
        s[3] = f64::NAN;
        assert!(matches!(
            ScalarField::from_samples(g, s),
            Err(Error::InvalidField(_))
        ));
    }

    #[test]
    fn box_integral_of_constant() {
        let g = GridSpec::new(2, 32, 1.5).unwrap();
        let f = ScalarField::from_fn(g, |_| 1.0);
        // Periodic trapezoid over [-L, L)^2 has measure (2L)^2.
        assert!((f.box_integral() - 9.0).abs() < 1e-12);
    }
}
