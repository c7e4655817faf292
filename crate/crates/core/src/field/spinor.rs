use num_complex::Complex64;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Value of a two-component field at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor {
    pub up: Complex64,
    pub down: Complex64,
}

impl Spinor {
    pub const ZERO: Spinor = Spinor {
        up: Complex64::new(0.0, 0.0),
        down: Complex64::new(0.0, 0.0),
    };

    pub const fn new(up: Complex64, down: Complex64) -> Self {
        Spinor { up, down }
    }

    pub fn real(up: f64, down: f64) -> Self {
        Spinor::new(Complex64::new(up, 0.0), Complex64::new(down, 0.0))
    }

    /// `|up|² + |down|²`
    pub fn norm_sqr(&self) -> f64 {
        self.up.norm_sqr() + self.down.norm_sqr()
    }

    /// `self† · other`
    pub fn dot(&self, other: &Spinor) -> Complex64 {
        self.up.conj() * other.up + self.down.conj() * other.down
    }

    pub fn conj(&self) -> Spinor {
        Spinor::new(self.up.conj(), self.down.conj())
    }

    pub fn is_finite(&self) -> bool {
        self.up.is_finite() && self.down.is_finite()
    }

    pub fn component(&self, c: Component) -> Complex64 {
        match c {
            Component::Up => self.up,
            Component::Down => self.down,
        }
    }

    pub fn component_mut(&mut self, c: Component) -> &mut Complex64 {
        match c {
            Component::Up => &mut self.up,
            Component::Down => &mut self.down,
        }
    }

    /// Scale to unit norm. `None` for the zero spinor.
    pub fn normalised(&self) -> Option<Spinor> {
        let n = self.norm_sqr().sqrt();
        (n > 0.0 && n.is_finite()).then(|| *self * (1.0 / n))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    Up,
    Down,
}

impl Component {
    pub const BOTH: [Component; 2] = [Component::Up, Component::Down];
}

impl Add for Spinor {
    type Output = Spinor;
    fn add(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.up + rhs.up, self.down + rhs.down)
    }
}

impl AddAssign for Spinor {
    fn add_assign(&mut self, rhs: Spinor) {
        self.up += rhs.up;
        self.down += rhs.down;
    }
}

impl Sub for Spinor {
    type Output = Spinor;
    fn sub(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.up - rhs.up, self.down - rhs.down)
    }
}

impl Neg for Spinor {
    type Output = Spinor;
    fn neg(self) -> Spinor {
        Spinor::new(-self.up, -self.down)
    }
}

impl Mul<Complex64> for Spinor {
    type Output = Spinor;
    fn mul(self, rhs: Complex64) -> Spinor {
        Spinor::new(self.up * rhs, self.down * rhs)
    }
}

impl Mul<f64> for Spinor {
    type Output = Spinor;
    fn mul(self, rhs: f64) -> Spinor {
        Spinor::new(self.up * rhs, self.down * rhs)
    }
}
