//! Central tolerance record. Every module reads its thresholds from here so
//! the numeric contract lives in one place.

/// Numeric tolerances used across the crate.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Absolute entrywise asymmetry allowed in a Hermitian matrix.
    pub hermit_tol: f64,
    /// How far below zero an eigenvalue may sit and still count as PSD;
    /// eigenvalues in [-psd_tol, 0) are clamped to 0.
    pub psd_tol: f64,
    /// Allowed deviation of a density's trace from 1.
    pub density_tol: f64,
    /// Fidelity values outside [-fidelity_drift, 1 + fidelity_drift] are
    /// rejected instead of clamped.
    pub fidelity_drift: f64,
    /// Relative off-diagonal mass at which the Jacobi sweep stops.
    pub eig_off_tol: f64,
    /// Componentwise feasibility slack accepted from the LP solver.
    pub lp_feas_tol: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermit_tol: 1e-12,
        psd_tol: 1e-10,
        density_tol: 1e-9,
        fidelity_drift: 1e-9,
        eig_off_tol: 1e-13,
        lp_feas_tol: 1e-8,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances::DEFAULT
    }
}
