//! Uniform 2D and 3D sample grids with second-order central stencils.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::ComplexValue;

/// Width of the boundary band excluded from residual statistics.
pub const MARGIN: usize = 2;

/// Values on a uniform `nx × nz` grid, stored x-major (`i * nz + j`).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2<T> {
    pub nx: usize,
    pub nz: usize,
    pub hx: f64,
    pub hz: f64,
    pub origin: (f64, f64),
    pub values: Vec<T>,
}

pub type ScalarGrid2 = Grid2<f64>;
pub type ComplexGrid2 = Grid2<ComplexValue>;

impl<T: Copy> Grid2<T> {
    pub fn new(
        nx: usize,
        nz: usize,
        hx: f64,
        hz: f64,
        origin: (f64, f64),
        values: Vec<T>,
    ) -> Result<Self> {
        if nx < 5 || nz < 5 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 5 points per axis, got {nx}x{nz}"
            )));
        }
        if !(hx > 0.0 && hz > 0.0) {
            return Err(Error::InvalidParameter(
                "grid spacings must be positive".into(),
            ));
        }
        if values.len() != nx * nz {
            return Err(Error::InvalidParameter(format!(
                "expected {} values, got {}",
                nx * nz,
                values.len()
            )));
        }
        Ok(Grid2 {
            nx,
            nz,
            hx,
            hz,
            origin,
            values,
        })
    }

    pub fn from_fn<F: Fn(f64, f64) -> T>(
        nx: usize,
        nz: usize,
        hx: f64,
        hz: f64,
        origin: (f64, f64),
        f: F,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(nx * nz);
        for i in 0..nx {
            for j in 0..nz {
                values.push(f(origin.0 + i as f64 * hx, origin.1 + j as f64 * hz));
            }
        }
        Self::new(nx, nz, hx, hz, origin, values)
    }

    /// Same shape and coordinates, new values.
    pub fn map_from<U: Copy, F: Fn(f64, f64) -> T>(like: &Grid2<U>, f: F) -> Result<Self> {
        Self::from_fn(like.nx, like.nz, like.hx, like.hz, like.origin, f)
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        i * self.nz + j
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> T {
        self.values[i * self.nz + j]
    }

    pub fn x(&self, i: usize) -> f64 {
        self.origin.0 + i as f64 * self.hx
    }

    pub fn z(&self, j: usize) -> f64 {
        self.origin.1 + j as f64 * self.hz
    }

    pub fn same_layout<U>(&self, other: &Grid2<U>) -> bool {
        self.nx == other.nx
            && self.nz == other.nz
            && self.hx == other.hx
            && self.hz == other.hz
            && self.origin == other.origin
    }

    /// Interior indices `(i, j)` with the standard margin.
    pub fn interior(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (MARGIN..self.nx - MARGIN)
            .flat_map(move |i| (MARGIN..self.nz - MARGIN).map(move |j| (i, j)))
    }
}

impl<T> Grid2<T>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    /// Central `∂/∂x`; valid for `1 <= i < nx-1`.
    #[inline]
    pub fn dx(&self, i: usize, j: usize) -> T {
        (self.at(i + 1, j) - self.at(i - 1, j)) * (0.5 / self.hx)
    }

    #[inline]
    pub fn dz(&self, i: usize, j: usize) -> T {
        (self.at(i, j + 1) - self.at(i, j - 1)) * (0.5 / self.hz)
    }

    #[inline]
    pub fn dxx(&self, i: usize, j: usize) -> T {
        (self.at(i + 1, j) + self.at(i - 1, j) - self.at(i, j) * 2.0) * (1.0 / (self.hx * self.hx))
    }

    #[inline]
    pub fn dzz(&self, i: usize, j: usize) -> T {
        (self.at(i, j + 1) + self.at(i, j - 1) - self.at(i, j) * 2.0) * (1.0 / (self.hz * self.hz))
    }

    /// Five-point Laplacian.
    #[inline]
    pub fn laplacian(&self, i: usize, j: usize) -> T {
        self.dxx(i, j) + self.dzz(i, j)
    }
}

/// Values on a uniform 3D grid with axes `(x⁰, x¹, x³) = (ct, x, z)`,
/// stored with the last axis fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarGrid3 {
    pub dims: [usize; 3],
    pub h: [f64; 3],
    pub origin: [f64; 3],
    pub values: Vec<f64>,
}

impl ScalarGrid3 {
    pub fn from_fn<F: Fn([f64; 3]) -> f64>(
        dims: [usize; 3],
        h: [f64; 3],
        origin: [f64; 3],
        f: F,
    ) -> Result<Self> {
        if dims.iter().any(|&n| n < 5) {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 5 points per axis, got {dims:?}"
            )));
        }
        if h.iter().any(|&s| !(s > 0.0)) {
            return Err(Error::InvalidParameter(
                "grid spacings must be positive".into(),
            ));
        }
        let mut values = Vec::with_capacity(dims[0] * dims[1] * dims[2]);
        for a in 0..dims[0] {
            for b in 0..dims[1] {
                for c in 0..dims[2] {
                    values.push(f([
                        origin[0] + a as f64 * h[0],
                        origin[1] + b as f64 * h[1],
                        origin[2] + c as f64 * h[2],
                    ]));
                }
            }
        }
        Ok(ScalarGrid3 {
            dims,
            h,
            origin,
            values,
        })
    }

    #[inline]
    pub fn idx(&self, p: [usize; 3]) -> usize {
        (p[0] * self.dims[1] + p[1]) * self.dims[2] + p[2]
    }

    #[inline]
    pub fn at(&self, p: [usize; 3]) -> f64 {
        self.values[self.idx(p)]
    }

    pub fn same_layout(&self, other: &ScalarGrid3) -> bool {
        self.dims == other.dims && self.h == other.h && self.origin == other.origin
    }

    fn shifted(p: [usize; 3], axis: usize, up: bool) -> [usize; 3] {
        let mut q = p;
        if up {
            q[axis] += 1;
        } else {
            q[axis] -= 1;
        }
        q
    }

    /// Central first difference along `axis`.
    #[inline]
    pub fn d(&self, p: [usize; 3], axis: usize) -> f64 {
        (self.at(Self::shifted(p, axis, true)) - self.at(Self::shifted(p, axis, false)))
            * (0.5 / self.h[axis])
    }

    /// Compact central second difference along `axis`.
    #[inline]
    pub fn dd(&self, p: [usize; 3], axis: usize) -> f64 {
        let h = self.h[axis];
        (self.at(Self::shifted(p, axis, true)) + self.at(Self::shifted(p, axis, false))
            - 2.0 * self.at(p))
            / (h * h)
    }

    /// Points at least `margin` away from every face.
    pub fn points_with_margin(&self, margin: usize) -> Vec<[usize; 3]> {
        let d = self.dims;
        let mut out = Vec::new();
        for a in margin..d[0] - margin {
            for b in margin..d[1] - margin {
                for c in margin..d[2] - margin {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }
}
