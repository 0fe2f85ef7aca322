//! Fidelity and the Bures metric on density elements, the Fuchs-van de Graaf
//! bracket against the L1 metric, and the unitization consistency check.

use crate::error::{Error, Result};
use crate::linalg::{matrix_abs, matrix_sqrt, HermitianMatrix};
use crate::model::{l1_distance, DensityElement, UnitizedElement};
use crate::tol::Tolerances;

/// Fidelity F(x, y) = tau(|sqrt(x) sqrt(y)|), in [0, 1].
///
/// sqrt(x(n)) sqrt(y(n)) is a general complex matrix, so the absolute value
/// must go through |A| = sqrt(A†A); there is no symmetric shortcut.
pub fn fidelity(x: &DensityElement, y: &DensityElement) -> Result<f64> {
    if x.spec() != y.spec() {
        return Err(Error::SpecMismatch);
    }
    let n = x.spec().matrix_dim() as f64;
    let mut acc = 0.0;
    for m in 1..=x.spec().truncation() {
        let sx = matrix_sqrt(&HermitianMatrix::new(x.site(m))?)?;
        let sy = matrix_sqrt(&HermitianMatrix::new(y.site(m))?)?;
        let prod = sx.as_matrix().mul(sy.as_matrix());
        let abs = matrix_abs(&prod)?;
        acc += abs.as_matrix().trace().re * x.spec().weight(m) / n;
    }
    clamp_fidelity(acc)
}

/// Clamps roundoff-sized excursions outside [0, 1]; larger ones are real
/// defects and are reported instead of hidden.
pub fn clamp_fidelity(value: f64) -> Result<f64> {
    let drift = Tolerances::DEFAULT.fidelity_drift;
    if value < -drift || value > 1.0 + drift {
        return Err(Error::NumericalDrift { value });
    }
    Ok(value.clamp(0.0, 1.0))
}

/// Bures distance d_B(x, y) = sqrt(1 - F(x, y)).
pub fn bures_distance(x: &DensityElement, y: &DensityElement) -> Result<f64> {
    let f = fidelity(x, y)?;
    Ok((1.0 - f).max(0.0).sqrt())
}

/// Slack in the two Fuchs-van de Graaf inequalities
/// 2 d_B^2 <= d_1 <= 2 sqrt(1 - F^2); both slacks are nonnegative up to
/// roundoff.
#[derive(Debug, Clone, Copy)]
pub struct FvdgMargins {
    pub lower_slack: f64,
    pub upper_slack: f64,
    pub l1: f64,
    pub fidelity: f64,
}

pub fn fvdg_margins(x: &DensityElement, y: &DensityElement) -> Result<FvdgMargins> {
    let f = fidelity(x, y)?;
    let d1 = l1_distance(x.as_site_function(), y.as_site_function())?;
    let lower_slack = d1 - 2.0 * (1.0 - f);
    let upper_slack = 2.0 * (1.0 - f * f).max(0.0).sqrt() - d1;
    Ok(FvdgMargins {
        lower_slack,
        upper_slack,
        l1: d1,
        fidelity: f,
    })
}

/// Computes the fidelity a second time through the concrete unitized model
/// ((x,0) and (y,0), all sites plus infinity, tail-weighted trace) and
/// returns |F_unitized - F_direct|. The two routes agree to 1e-9.
pub fn unitization_fidelity_check(x: &DensityElement, y: &DensityElement) -> Result<f64> {
    let direct = fidelity(x, y)?;

    let u = UnitizedElement::embed(x.as_site_function().clone());
    let v = UnitizedElement::embed(y.as_site_function().clone());
    let spec = x.spec();
    let n = spec.matrix_dim() as f64;

    let mut unitized = 0.0;
    let k = spec.truncation();
    for m in 1..=(k + 1) {
        let (uval, weight) = if m <= k {
            (u.value_at(m), spec.weight(m))
        } else {
            (u.value_at_infinity(), spec.tail_mass())
        };
        let vval = if m <= k {
            v.value_at(m)
        } else {
            v.value_at_infinity()
        };
        let su = matrix_sqrt(&HermitianMatrix::new(uval)?)?;
        let sv = matrix_sqrt(&HermitianMatrix::new(vval)?)?;
        let abs = matrix_abs(&su.as_matrix().mul(sv.as_matrix()))?;
        unitized += abs.as_matrix().trace().re * weight / n;
    }

    Ok((clamp_fidelity(unitized)? - direct).abs())
}

/// Lifts a scalar density to the matrix model of dimension `matrix_dim`.
pub fn lift_density(x: &DensityElement, matrix_dim: usize) -> Result<DensityElement> {
    let lifted = crate::model::lift_scalar_to_matrix(x.as_site_function(), matrix_dim)?;
    DensityElement::new(lifted)
}
