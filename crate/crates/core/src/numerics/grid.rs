use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform cell-centered axis: `count` cells spanning [min, max].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub const MIN_COUNT: usize = 8;

    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        let a = Axis { min, max, count };
        a.check()?;
        Ok(a)
    }

    /// Symmetric axis [−half_width, half_width].
    pub fn symmetric(half_width: f64, count: usize) -> Result<Self> {
        Self::new(-half_width, half_width, count)
    }

    pub fn check(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite() && self.max > self.min) {
            return Err(Error::InvalidAxis(format!(
                "range [{}, {}] must have positive width",
                self.min, self.max
            )));
        }
        if self.count < Self::MIN_COUNT {
            return Err(Error::InvalidAxis(format!(
                "count {} below minimum {}",
                self.count,
                Self::MIN_COUNT
            )));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / self.count as f64
    }

    pub fn center(&self, i: usize) -> f64 {
        self.min + (i as f64 + 0.5) * self.step()
    }

    pub fn centers(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.center(i))
    }
}

/// Row-major samples over two axes; `values[i * axes[1].count + j]` sits at
/// (axes[0].center(i), axes[1].center(j)).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    pub axes: [Axis; 2],
    pub values: Vec<f64>,
}

impl Grid2D {
    pub fn new(axes: [Axis; 2], values: Vec<f64>) -> Result<Self> {
        for a in &axes {
            a.check()?;
        }
        if values.len() != axes[0].count * axes[1].count {
            return Err(Error::InvalidAxis(format!(
                "{} values for a {}x{} grid",
                values.len(),
                axes[0].count,
                axes[1].count
            )));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::InvalidAxis(format!("grid value {v} is not a finite non-negative number")));
        }
        Ok(Grid2D { axes, values })
    }

    pub fn from_fn<F: Fn(f64, f64) -> f64>(axes: [Axis; 2], f: F) -> Result<Self> {
        let mut values = Vec::with_capacity(axes[0].count * axes[1].count);
        for x in axes[0].centers() {
            for y in axes[1].centers() {
                values.push(f(x, y));
            }
        }
        Self::new(axes, values)
    }

    pub fn cell_area(&self) -> f64 {
        self.axes[0].step() * self.axes[1].step()
    }

    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.cell_area()
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.axes[1].count + j]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: [f64; 2],
    pub var: [f64; 2],
    pub covar: f64,
}

impl Moments {
    pub fn correlation(&self) -> f64 {
        self.covar / (self.var[0] * self.var[1]).sqrt()
    }
}

/// First and second central moments of the grid, treated as a density.
pub fn grid_moments(g: &Grid2D) -> Result<Moments> {
    let total: f64 = g.values.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::ZeroMass);
    }
    let ny = g.axes[1].count;
    let xs: Vec<f64> = g.axes[0].centers().collect();
    let ys: Vec<f64> = g.axes[1].centers().collect();

    let (mut mx, mut my) = (0.0, 0.0);
    for (i, row) in g.values.chunks(ny).enumerate() {
        let rs: f64 = row.iter().sum();
        mx += xs[i] * rs;
        my += row.iter().zip(&ys).map(|(v, y)| v * y).sum::<f64>();
    }
    mx /= total;
    my /= total;

    let (mut vx, mut vy, mut cxy) = (0.0, 0.0, 0.0);
    for (i, row) in g.values.chunks(ny).enumerate() {
        let dx = xs[i] - mx;
        for (v, y) in row.iter().zip(&ys) {
            let dy = y - my;
            vx += v * dx * dx;
            vy += v * dy * dy;
            cxy += v * dx * dy;
        }
    }
    Ok(Moments {
        mean: [mx, my],
        var: [vx / total, vy / total],
        covar: cxy / total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gauss(x: f64, s: f64) -> f64 {
        (-x * x / (2.0 * s * s)).exp()
    }

    #[test]
    fn gaussian_variance_recovered() {
        let s = 1.7;
        let ax = Axis::symmetric(6.0 * s, 128).unwrap();
        let g = Grid2D::from_fn([ax, ax], |x, y| gauss(x, s) * gauss(y, s)).unwrap();
        let m = grid_moments(&g).unwrap();
        for v in m.var {
            assert!((v / (s * s) - 1.0).abs() < 1e-3);
        }
        assert!(m.covar.abs() < 1e-12);
    }

    #[test]
    fn zero_mass_rejected() {
        let ax = Axis::symmetric(1.0, 8).unwrap();
        let g = Grid2D::new([ax, ax], vec![0.0; 64]).unwrap();
        assert!(matches!(grid_moments(&g), Err(Error::ZeroMass)));
        assert!(Grid2D::new([ax, ax], vec![-1.0; 64]).is_err());
        assert!(Axis::new(0.0, 1.0, 4).is_err());
        assert!(Axis::new(1.0, 1.0, 16).is_err());
    }

    proptest! {
        #[test]
        fn separable_grids_are_uncorrelated(
            sx in 0.3f64..3.0, sy in 0.3f64..3.0, mx in -1.0f64..1.0, my in -1.0f64..1.0,
            skew in 0.0f64..0.9,
        ) {
            let ax = Axis::new(-12.0, 12.0, 200).unwrap();
            let ay = Axis::new(-10.0, 11.0, 180).unwrap();
            // Asymmetric factors: the covariance must still vanish.
            let fx = |x: f64| gauss(x - mx, sx) * (1.0 + skew * (x / 4.0).tanh());
            let fy = |y: f64| gauss(y - my, sy) + 0.3 * gauss(y - my - 1.0, 0.5 * sy);
            let g = Grid2D::from_fn([ax, ay], |x, y| fx(x) * fy(y)).unwrap();
            let m = grid_moments(&g).unwrap();
            prop_assert!(m.correlation().abs() < 1e-6);
        }
    }
}
