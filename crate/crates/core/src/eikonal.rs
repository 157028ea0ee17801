//! Residuals of the real/imaginary splittings: Helmholtz, the optical
//! amplitude/phase pair, the stationary Schrödinger (Madelung) pair with its
//! quantum potential, and the relativistic short-wave pair on a `(t, x, z)`
//! section.
//!
//! Derivatives are second-order central differences; statistics cover the
//! interior, i.e. everything outside a two-point boundary band.

use crate::error::{Error, Result};
use crate::grid::{ComplexGrid2, ScalarGrid2, ScalarGrid3, MARGIN};
use crate::residual::ResidualReport;

/// `(+,−,−)` on the `(t, x, z)` section.
pub const TXZ_SIGNATURE: [f64; 3] = [1.0, -1.0, -1.0];

fn check_layout<A, B>(a: &crate::grid::Grid2<A>, b: &crate::grid::Grid2<B>) -> Result<()>
where
    A: Copy,
    B: Copy,
{
    if a.same_layout(b) {
        Ok(())
    } else {
        Err(Error::GridMismatch)
    }
}

fn check_positive_interior(g: &ScalarGrid2) -> Result<()> {
    for (i, j) in g.interior() {
        if !(g.at(i, j) > 0.0) {
            return Err(Error::NonpositiveAmplitude { index: g.idx(i, j) });
        }
    }
    Ok(())
}

/// `∇²U + (n k)² U` with the five-point Laplacian; the report is on `|·|`.
pub fn helmholtz_residual(u: &ComplexGrid2, k: f64, n: &ScalarGrid2) -> Result<ResidualReport> {
    check_layout(u, n)?;
    let r: Vec<f64> = u
        .interior()
        .map(|(i, j)| {
            let nk = n.at(i, j) * k;
            (u.laplacian(i, j) + u.at(i, j) * (nk * nk)).norm()
        })
        .collect();
    Ok(ResidualReport::from_values(&r))
}

/// Amplitude/phase split of the Helmholtz equation:
/// `|∇S̃|² − n² − λ̄²∇²a/a` and `2∇a·∇S̃ + a∇²S̃`.
pub fn optical_split_residuals(
    a: &ScalarGrid2,
    s: &ScalarGrid2,
    n: &ScalarGrid2,
    lambda_bar: f64,
) -> Result<(ResidualReport, ResidualReport)> {
    check_layout(a, s)?;
    check_layout(a, n)?;
    check_positive_interior(a)?;
    let lb2 = lambda_bar * lambda_bar;
    let (mut real, mut imag) = (Vec::new(), Vec::new());
    for (i, j) in a.interior() {
        let (sx, sz) = (s.dx(i, j), s.dz(i, j));
        let (ax, az) = (a.dx(i, j), a.dz(i, j));
        let av = a.at(i, j);
        let nv = n.at(i, j);
        real.push(sx * sx + sz * sz - nv * nv - lb2 * a.laplacian(i, j) / av);
        imag.push(2.0 * (ax * sx + az * sz) + av * s.laplacian(i, j));
    }
    Ok((
        ResidualReport::from_values(&real),
        ResidualReport::from_values(&imag),
    ))
}

/// Stationary Madelung split (`S(r,t) = −Et + S(r)`):
/// `−E + |∇S|²/2m + V − (ħ²/2m)∇²R/R` and `∇·(R²∇S/m)`.
pub fn schrodinger_split_residuals(
    r: &ScalarGrid2,
    s: &ScalarGrid2,
    v: &ScalarGrid2,
    m: f64,
    hbar: f64,
    e: f64,
) -> Result<(ResidualReport, ResidualReport)> {
    check_layout(r, s)?;
    check_layout(r, v)?;
    check_positive_interior(r)?;
    // flux R²∇S/m on every point with a central neighbour, then its divergence
    let flux = |i: usize, j: usize| {
        let r2 = r.at(i, j) * r.at(i, j) / m;
        (r2 * s.dx(i, j), r2 * s.dz(i, j))
    };
    let (mut real, mut imag) = (Vec::new(), Vec::new());
    for (i, j) in r.interior() {
        let (sx, sz) = (s.dx(i, j), s.dz(i, j));
        let q = -hbar * hbar / (2.0 * m) * r.laplacian(i, j) / r.at(i, j);
        real.push(-e + (sx * sx + sz * sz) / (2.0 * m) + v.at(i, j) + q);
        let div = (flux(i + 1, j).0 - flux(i - 1, j).0) / (2.0 * r.hx)
            + (flux(i, j + 1).1 - flux(i, j - 1).1) / (2.0 * r.hz);
        imag.push(div);
    }
    Ok((
        ResidualReport::from_values(&real),
        ResidualReport::from_values(&imag),
    ))
}

/// One-sided second-order second derivative at index 0 of `f0..f3`.
fn one_sided_dd(f0: f64, f1: f64, f2: f64, f3: f64, h: f64) -> f64 {
    (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h)
}

/// `Q = −ħ²∇²R/(2mR)` on every grid point; interior points use central
/// stencils, boundary rows use one-sided second-order stencils.
pub fn quantum_potential(r: &ScalarGrid2, m: f64, hbar: f64) -> Result<ScalarGrid2> {
    for (idx, &v) in r.values.iter().enumerate() {
        if !(v > 0.0) {
            return Err(Error::NonpositiveAmplitude { index: idx });
        }
    }
    let (nx, nz) = (r.nx, r.nz);
    let dxx = |i: usize, j: usize| {
        if i == 0 {
            one_sided_dd(r.at(0, j), r.at(1, j), r.at(2, j), r.at(3, j), r.hx)
        } else if i == nx - 1 {
            one_sided_dd(
                r.at(i, j),
                r.at(i - 1, j),
                r.at(i - 2, j),
                r.at(i - 3, j),
                r.hx,
            )
        } else {
            r.dxx(i, j)
        }
    };
    let dzz = |i: usize, j: usize| {
        if j == 0 {
            one_sided_dd(r.at(i, 0), r.at(i, 1), r.at(i, 2), r.at(i, 3), r.hz)
        } else if j == nz - 1 {
            one_sided_dd(
                r.at(i, j),
                r.at(i, j - 1),
                r.at(i, j - 2),
                r.at(i, j - 3),
                r.hz,
            )
        } else {
            r.dzz(i, j)
        }
    };
    let scale = -hbar * hbar / (2.0 * m);
    ScalarGrid2::from_fn(nx, nz, r.hx, r.hz, r.origin, |_, _| 0.0).map(|mut q| {
        for i in 0..nx {
            for j in 0..nz {
                let k = q.idx(i, j);
                q.values[k] = scale * (dxx(i, j) + dzz(i, j)) / r.at(i, j);
            }
        }
        q
    })
}

fn check_density3(rho: &ScalarGrid3, s: &ScalarGrid3) -> Result<()> {
    if !rho.same_layout(s) {
        return Err(Error::GridMismatch);
    }
    for p in rho.points_with_margin(1) {
        if !(rho.at(p) > 0.0) {
            return Err(Error::NonpositiveDensity { index: rho.idx(p) });
        }
    }
    Ok(())
}

fn eta_grad_product(a: &ScalarGrid3, b: &ScalarGrid3, p: [usize; 3], sig: &[f64; 3]) -> f64 {
    (0..3).map(|mu| sig[mu] * a.d(p, mu) * b.d(p, mu)).sum()
}

fn box_op(a: &ScalarGrid3, p: [usize; 3], sig: &[f64; 3]) -> f64 {
    (0..3).map(|mu| sig[mu] * a.dd(p, mu)).sum()
}

/// Short-wave split of the Proca equation for `u = ρ^{1/2} exp(iS̃/λ)`:
/// `η∂S̃∂S̃ − 1 − λ²□ρ^{1/2}/ρ^{1/2}` and `2η∂S̃∂ρ^{1/2} + ρ^{1/2}□S̃`.
pub fn shortwave_split_residuals(
    rho: &ScalarGrid3,
    s: &ScalarGrid3,
    lambda: f64,
    signature: [f64; 3],
) -> Result<(ResidualReport, ResidualReport)> {
    check_density3(rho, s)?;
    let mut amp = rho.clone();
    amp.values.iter_mut().for_each(|v| *v = v.max(0.0).sqrt());
    let l2 = lambda * lambda;
    let (mut real, mut imag) = (Vec::new(), Vec::new());
    for p in rho.points_with_margin(MARGIN) {
        let a = amp.at(p);
        real.push(
            eta_grad_product(s, s, p, &signature) - 1.0 - l2 * box_op(&amp, p, &signature) / a,
        );
        imag.push(2.0 * eta_grad_product(s, &amp, p, &signature) + a * box_op(s, p, &signature));
    }
    Ok((
        ResidualReport::from_values(&real),
        ResidualReport::from_values(&imag),
    ))
}

/// Zeroth and first order in `λ`: `η∂S̃∂S̃ − 1` and `∂_ν(ρ ∂^ν S̃)`.
pub fn hj_continuity_check(
    rho: &ScalarGrid3,
    s: &ScalarGrid3,
    signature: [f64; 3],
) -> Result<(ResidualReport, ResidualReport)> {
    check_density3(rho, s)?;
    let flux = |p: [usize; 3], mu: usize| rho.at(p) * signature[mu] * s.d(p, mu);
    let (mut hj, mut cont) = (Vec::new(), Vec::new());
    for p in rho.points_with_margin(MARGIN) {
        hj.push(eta_grad_product(s, s, p, &signature) - 1.0);
        let mut div = 0.0;
        for mu in 0..3 {
            let (mut up, mut down) = (p, p);
            up[mu] += 1;
            down[mu] -= 1;
            div += (flux(up, mu) - flux(down, mu)) / (2.0 * rho.h[mu]);
        }
        cont.push(div);
    }
    Ok((
        ResidualReport::from_values(&hj),
        ResidualReport::from_values(&cont),
    ))
}
