use crate::error::{Error, Result};

/// Boundary treatment on every axis of a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Walls at both ends of each axis; the end points are sampled and the
    /// field vanishes there during evolution.
    Dirichlet,
    Periodic,
}

/// How spatial derivatives are discretised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DerivativeScheme {
    /// Second-order central differences, one-sided second order at
    /// Dirichlet walls.
    #[default]
    Central,
    /// Fourier differentiation. Periodic grids only.
    Spectral,
}

/// Uniform tensor-product grid in one to three dimensions.
///
/// Points are stored row-major with the last axis fastest. Along axis `k`
/// the coordinate of sample `i` is `origin[k] + i * spacing(k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    points: Vec<usize>,
    lengths: Vec<f64>,
    origin: Vec<f64>,
    boundary: Boundary,
    scheme: DerivativeScheme,
}

impl GridSpec {
    pub fn new(points: Vec<usize>, lengths: Vec<f64>, boundary: Boundary) -> Result<Self> {
        let dim = points.len();
        if !(1..=3).contains(&dim) {
            return Err(Error::config(format!("grid dimension must be 1, 2 or 3, got {dim}")));
        }
        if lengths.len() != dim {
            return Err(Error::config(format!(
                "axis count mismatch: {dim} point counts but {} lengths",
                lengths.len()
            )));
        }
        if let Some(n) = points.iter().find(|&&n| n < 3) {
            return Err(Error::config(format!("need at least 3 points per axis, got {n}")));
        }
        if let Some(l) = lengths.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
            return Err(Error::config(format!("axis lengths must be positive, got {l}")));
        }
        Ok(GridSpec {
            origin: vec![0.0; dim],
            points,
            lengths,
            boundary,
            scheme: DerivativeScheme::Central,
        })
    }

    /// One-dimensional grid on `[0, length]` (Dirichlet) or `[0, length)` (periodic).
    pub fn line(points: usize, length: f64, boundary: Boundary) -> Result<Self> {
        Self::new(vec![points], vec![length], boundary)
    }

    pub fn with_origin(mut self, origin: Vec<f64>) -> Result<Self> {
        if origin.len() != self.dim() {
            return Err(Error::config(format!(
                "axis count mismatch: {} origin entries for a {}-d grid",
                origin.len(),
                self.dim()
            )));
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(Error::config("grid origin must be finite"));
        }
        self.origin = origin;
        Ok(self)
    }

    /// Shift the origin so the grid is symmetric about zero on every axis.
    pub fn centred(mut self) -> Self {
        for k in 0..self.dim() {
            self.origin[k] = -0.5 * self.lengths[k];
        }
        self
    }

    pub fn with_scheme(mut self, scheme: DerivativeScheme) -> Result<Self> {
        if scheme == DerivativeScheme::Spectral && self.boundary != Boundary::Periodic {
            return Err(Error::config("spectral derivatives require a periodic grid"));
        }
        self.scheme = scheme;
        Ok(self)
    }

    /// Same extent, boundary and scheme with `n` points on every axis.
    pub fn with_points(&self, n: usize) -> Result<Self> {
        let mut g = GridSpec::new(vec![n; self.dim()], self.lengths.clone(), self.boundary)?;
        g.origin = self.origin.clone();
        g.scheme = self.scheme;
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn scheme(&self) -> DerivativeScheme {
        self.scheme
    }

    pub fn len(&self) -> usize {
        self.points.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        match self.boundary {
            Boundary::Dirichlet => self.lengths[axis] / (self.points[axis] - 1) as f64,
            Boundary::Periodic => self.lengths[axis] / self.points[axis] as f64,
        }
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.dim()).map(|k| self.spacing(k)).product()
    }

    pub fn min_length(&self) -> f64 {
        self.lengths.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn stride(&self, axis: usize) -> usize {
        self.points[axis + 1..].iter().product()
    }

    /// Index of flat point `flat` along `axis`.
    pub fn axis_index(&self, flat: usize, axis: usize) -> usize {
        (flat / self.stride(axis)) % self.points[axis]
    }

    pub fn coordinate(&self, axis: usize, i: usize) -> f64 {
        self.origin[axis] + i as f64 * self.spacing(axis)
    }

    /// Coordinates of a flat point, one entry per axis.
    pub fn position(&self, flat: usize) -> Vec<f64> {
        (0..self.dim())
            .map(|k| self.coordinate(k, self.axis_index(flat, k)))
            .collect()
    }

    /// Which Cartesian component (0 = x, 1 = y, 2 = z) each grid axis
    /// represents. A 1-d grid is the z axis so that a single spin-up state
    /// couples through σ₃; 2-d grids span x and y.
    pub fn cartesian_axes(&self) -> &'static [usize] {
        match self.dim() {
            1 => &[2],
            2 => &[0, 1],
            _ => &[0, 1, 2],
        }
    }

    /// True if Cartesian component `c` is spanned by some grid axis.
    pub fn spans_cartesian(&self, c: usize) -> bool {
        self.cartesian_axes().contains(&c)
    }

    /// Quadrature weight of a flat point: trapezoid on Dirichlet grids,
    /// rectangle on periodic grids.
    pub fn weight(&self, flat: usize) -> f64 {
        let mut w = self.cell_volume();
        if self.boundary == Boundary::Dirichlet {
            for k in 0..self.dim() {
                let i = self.axis_index(flat, k);
                if i == 0 || i + 1 == self.points[k] {
                    w *= 0.5;
                }
            }
        }
        w
    }

    /// True for Dirichlet wall points (any axis index at an end).
    pub fn is_wall(&self, flat: usize) -> bool {
        self.boundary == Boundary::Dirichlet
            && (0..self.dim()).any(|k| {
                let i = self.axis_index(flat, k);
                i == 0 || i + 1 == self.points[k]
            })
    }

    /// Starting flat index of every grid line running along `axis`.
    pub fn line_starts(&self, axis: usize) -> Vec<usize> {
        let stride = self.stride(axis);
        let n = self.points[axis];
        (0..self.len())
            .filter(|&flat| (flat / stride).is_multiple_of(n))
            .collect()
    }

    pub(crate) fn ensure_same(&self, other: &GridSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::config("grid mismatch between operands"))
        }
    }
}
