//! The quantum-metric side of the model: tail-average conditional
//! expectations E_n, the seminorm L_beta, the Monge-Kantorovich distance on
//! density elements as a linear program over the Lipschitz ball, pointwise
//! control margins, ball radii, and greedy epsilon-nets.

use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{operator_norm, ComplexMatrix, HermitianMatrix};
use crate::lpsolve::{solve_lp, LinearProgram, LpStatus};
use crate::model::{
    concrete_trace, extended_trace, DensityElement, SiteFunction, TraceSpec, UnitizedElement,
};

/// Scaling sequence beta(0..K+1) for the seminorm: positive, nonincreasing,
/// beta(0) = beta(1).
#[derive(Debug, Clone, PartialEq)]
pub struct BetaSequence {
    values: Vec<f64>,
}

impl BetaSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::BadInput("beta needs at least two entries".into()));
        }
        if values.iter().any(|b| !(*b > 0.0)) {
            return Err(Error::BadInput("beta entries must be positive".into()));
        }
        if (values[0] - values[1]).abs() > 1e-15 {
            return Err(Error::BadInput("beta(0) must equal beta(1)".into()));
        }
        if values.windows(2).any(|w| w[1] > w[0] + 1e-15) {
            return Err(Error::BadInput("beta must be nonincreasing".into()));
        }
        Ok(BetaSequence { values })
    }

    /// Default beta(n) = 2^(-n) for n >= 1 with beta(0) = 1/2, sized for
    /// truncation K (indices 0..=K+1).
    pub fn geometric(truncation: usize) -> Self {
        let mut values = vec![0.5];
        for n in 1..=(truncation + 1) {
            values.push(0.5f64.powi(n as i32));
        }
        BetaSequence { values }
    }

    pub fn get(&self, n: usize) -> f64 {
        self.values[n]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scale(&self, c: f64) -> Result<BetaSequence> {
        BetaSequence::new(self.values.iter().map(|b| c * b).collect())
    }

    fn check_len(&self, spec: &TraceSpec) -> Result<()> {
        if self.values.len() != spec.truncation() + 2 {
            return Err(Error::BadInput(format!(
                "beta has {} entries, expected {}",
                self.values.len(),
                spec.truncation() + 2
            )));
        }
        Ok(())
    }
}

/// The state phi_x = tau(x . ) attached to a density element.
pub struct StateVector {
    x: DensityElement,
}

impl StateVector {
    pub fn new(x: DensityElement) -> Self {
        StateVector { x }
    }

    /// Evaluates the extended state on a unitized element through concrete
    /// values; the unit evaluates to 1 because the density has unit trace.
    pub fn evaluate(&self, g: &UnitizedElement) -> Result<Complex64> {
        if self.x.spec() != g.spec() {
            return Err(Error::SpecMismatch);
        }
        let n = self.x.spec().matrix_dim() as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 1..=self.x.spec().truncation() {
            acc += self.x.site(m).mul(&g.value_at(m)).trace() * (self.x.spec().weight(m) / n);
        }
        Ok(acc)
    }
}

/// Conditional expectation E_n: the tail average from site n onward.
///
/// E_0 projects onto scalar multiples of the unit (the trace state applied
/// to the whole element); E_n for n >= 1 leaves sites below n alone and
/// replaces everything from n on, infinity included, by the weighted tail
/// mean; E_{K+1} is the identity on the truncated model.
pub fn cond_exp(u: &UnitizedElement, n: usize) -> Result<UnitizedElement> {
    let spec = u.spec().clone();
    let k = spec.truncation();
    if n > k + 1 {
        return Err(Error::IndexOutOfRange { index: n, max: k + 1 });
    }

    if n == 0 {
        let t0 = extended_trace(u) / spec.total_mass();
        let limit = ComplexMatrix::scalar(spec.matrix_dim(), t0);
        return UnitizedElement::with_limit(SiteFunction::zero(spec), limit);
    }
    if n == k + 1 {
        return Ok(u.clone());
    }

    let denom = spec.tail_mass_from(n);
    let mut tail = ComplexMatrix::zeros(spec.matrix_dim());
    for m in n..=k {
        tail = tail.add(&u.value_at(m).scale(Complex64::new(spec.weight(m), 0.0)));
    }
    tail = tail.add(&u.value_at_infinity().scale(Complex64::new(spec.tail_mass(), 0.0)));
    let mean = tail.scale(Complex64::new(1.0 / denom, 0.0));

    let values: Vec<ComplexMatrix> = (1..=k)
        .map(|m| {
            if m < n {
                u.value_at(m).sub(&mean)
            } else {
                ComplexMatrix::zeros(spec.matrix_dim())
            }
        })
        .collect();
    UnitizedElement::with_limit(SiteFunction::from_values(spec, values)?, mean)
}

/// L_beta(u) = max over n of ||u - E_n(u)||_inf / beta(n), the sup norm taken
/// over all concrete values including infinity. Zero exactly on real
/// multiples of the unit.
pub fn seminorm(u: &UnitizedElement, beta: &BetaSequence) -> Result<f64> {
    beta.check_len(u.spec())?;
    let mut worst = 0.0f64;
    for n in 0..=(u.spec().truncation() + 1) {
        let e = cond_exp(u, n)?;
        let residual = u.sub(&e)?;
        worst = worst.max(residual.concrete_sup_norm() / beta.get(n));
    }
    Ok(worst)
}

/// Which test functions the Monge-Kantorovich LP ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MkVariant {
    /// N = 1 site values.
    Scalar,
    /// Real diagonal site values; the operator norm of a residual is then
    /// the max absolute diagonal entry and every ball constraint is linear.
    Diagonal,
}

/// Index map for the LP: variable (site m, diagonal slot d) at
/// (m-1)*n_diag + d, sites 1..K.
#[derive(Debug, Clone)]
pub struct MkLayout {
    pub truncation: usize,
    pub n_diag: usize,
}

impl MkLayout {
    pub fn var(&self, site: usize, d: usize) -> usize {
        (site - 1) * self.n_diag + d
    }

    pub fn num_vars(&self) -> usize {
        self.truncation * self.n_diag
    }
}

/// Builds the LP for sup { phi_x(g) - phi_y(g) } over the truncated
/// Lipschitz ball of C0 test functions (g(inf) = 0, no unit component).
///
/// For every n in 0..=K+1, site m in 1..K and infinity, and diagonal slot d,
/// the residual g_d(m) - E_n(g)_d(m) is linear in the variables and bounded
/// by beta(n) in both directions: 2 (K+2) (K+1) n_diag rows.
pub fn assemble_mk_lp(
    x: &DensityElement,
    y: &DensityElement,
    beta: &BetaSequence,
    variant: MkVariant,
) -> Result<(LinearProgram, MkLayout)> {
    if x.spec() != y.spec() {
        return Err(Error::SpecMismatch);
    }
    let spec = x.spec();
    beta.check_len(spec)?;
    if variant == MkVariant::Scalar && spec.matrix_dim() != 1 {
        return Err(Error::BadInput("scalar variant needs matrix_dim 1".into()));
    }
    let layout = MkLayout {
        truncation: spec.truncation(),
        n_diag: spec.matrix_dim(),
    };
    let nvars = layout.num_vars();
    let nmat = spec.matrix_dim() as f64;
    let k = spec.truncation();

    let mut objective = vec![0.0; nvars];
    for m in 1..=k {
        let delta = x.site(m).sub(&y.site(m));
        for d in 0..layout.n_diag {
            objective[layout.var(m, d)] = delta.get(d, d).re * spec.weight(m) / nmat;
        }
    }

    let mut rows = Vec::with_capacity(2 * (k + 2) * (k + 1) * layout.n_diag);
    let mut bounds = Vec::with_capacity(rows.capacity());
    let mut push = |coeffs: Vec<f64>, bound: f64| {
        bounds.push(bound);
        bounds.push(bound);
        let negated = coeffs.iter().map(|c| -c).collect();
        rows.push(coeffs);
        rows.push(negated);
    };

    for n in 0..=(k + 1) {
        // mean coefficients of E_n per variable; E_0 mixes the diagonal
        // slots through the normalized trace, E_n (n >= 1) averages each
        // slot separately over the tail
        for m in 1..=(k + 1) {
            // m == k+1 stands for the site at infinity, where g vanishes
            for d in 0..layout.n_diag {
                let mut coeffs = vec![0.0; nvars];
                if n == 0 {
                    for mp in 1..=k {
                        for dp in 0..layout.n_diag {
                            coeffs[layout.var(mp, dp)] -=
                                spec.weight(mp) / (nmat * spec.total_mass());
                        }
                    }
                    if m <= k {
                        coeffs[layout.var(m, d)] += 1.0;
                    }
                } else if n <= k {
                    if m >= n {
                        let denom = spec.tail_mass_from(n);
                        for mp in n..=k {
                            coeffs[layout.var(mp, d)] -= spec.weight(mp) / denom;
                        }
                        if m <= k {
                            coeffs[layout.var(m, d)] += 1.0;
                        }
                    }
                    // sites m < n: E_n leaves them unchanged, residual 0
                }
                // n == k+1: identity, residual 0
                push(coeffs, beta.get(n));
            }
        }
    }

    Ok((LinearProgram::new(objective, rows, bounds)?, layout))
}

/// Monge-Kantorovich distance via the LP, with the closed-form upper
/// certificate 2 max(beta(n), beta(m)) attached for point-mass pairs.
#[derive(Debug, Clone)]
pub struct MkDistance {
    /// LP optimum: the exact supremum over the truncated diagonal ball and
    /// a certified lower bound for the full metric.
    pub lp_value: f64,
    pub certificate: Option<f64>,
    pub iterations: usize,
}

pub fn mk_distance(
    x: &DensityElement,
    y: &DensityElement,
    beta: &BetaSequence,
    variant: MkVariant,
) -> Result<MkDistance> {
    let (lp, _) = assemble_mk_lp(x, y, beta, variant)?;
    let out = solve_lp(&lp)?;
    if out.status != LpStatus::Optimal {
        // the ball is compact, so anything else is a modeling bug
        return Err(Error::LpNotOptimal { status: out.status });
    }
    let lp_value = out.value.max(0.0);

    let certificate = match (x.as_point_mass(), y.as_point_mass()) {
        (Some(n), Some(m)) if n != m => Some(2.0 * beta.get(n).max(beta.get(m))),
        _ => None,
    };
    if let Some(cert) = certificate {
        if lp_value > cert + 1e-9 {
            return Err(Error::CertificateExceeded {
                lp_value,
                certificate: cert,
            });
        }
    }
    Ok(MkDistance {
        lp_value,
        certificate,
        iterations: out.iterations,
    })
}

/// Feasible single-site witness: chi_n / L(chi_n) evaluated against the
/// state difference; a lower bound any LP optimum must reach.
pub fn point_mass_witness(
    x: &DensityElement,
    y: &DensityElement,
    site: usize,
    beta: &BetaSequence,
) -> Result<f64> {
    let spec = x.spec();
    let mut values: Vec<ComplexMatrix> = (0..spec.truncation())
        .map(|_| ComplexMatrix::zeros(spec.matrix_dim()))
        .collect();
    values[site - 1] = ComplexMatrix::identity(spec.matrix_dim());
    let chi = UnitizedElement::embed(SiteFunction::from_values(spec.clone(), values)?);
    let s = seminorm(&chi, beta)?;
    if s <= 0.0 {
        return Err(Error::ZeroTestFunction);
    }
    let g = chi.scale(Complex64::new(1.0 / s, 0.0));
    let phi_x = StateVector::new(x.clone()).evaluate(&g)?;
    let phi_y = StateVector::new(y.clone()).evaluate(&g)?;
    Ok((phi_x - phi_y).re.abs())
}

/// Margin of the pointwise-control inequality
/// |Tr((x(M) - y(M)) H)| <= N 2^M-like factor * L(chi_{M,H}) * d(x, y),
/// computed with the LP value; nonnegative up to roundoff whenever the
/// scaled test function is feasible for the LP (diagonal H, or N = 1).
pub fn pointwise_control_margin(
    x: &DensityElement,
    y: &DensityElement,
    site: usize,
    h: &HermitianMatrix,
    beta: &BetaSequence,
) -> Result<f64> {
    let spec = x.spec();
    if site < 1 || site > spec.truncation() {
        return Err(Error::IndexOutOfRange {
            index: site,
            max: spec.truncation(),
        });
    }
    if operator_norm(h.as_matrix()) <= 1e-14 {
        return Err(Error::ZeroTestFunction);
    }

    let mut values: Vec<ComplexMatrix> = (0..spec.truncation())
        .map(|_| ComplexMatrix::zeros(spec.matrix_dim()))
        .collect();
    values[site - 1] = h.as_matrix().clone();
    let chi = UnitizedElement::embed(SiteFunction::from_values(spec.clone(), values)?);
    let s = seminorm(&chi, beta)?;

    let variant = if spec.matrix_dim() == 1 {
        MkVariant::Scalar
    } else {
        MkVariant::Diagonal
    };
    let d = mk_distance(x, y, beta, variant)?.lp_value;

    let observed = x.site(site).sub(&y.site(site)).mul(h.as_matrix()).trace().re.abs();
    let allowance = spec.matrix_dim() as f64 / spec.weight(site) * s * d;
    Ok(allowance - observed)
}

/// Radius of the normalized Lipschitz ball
/// { g : L(g) <= 1, (1/N) Tr(g(mu_site)) = 0 } over concrete values:
/// the max of +-g_d(m) over all sites (infinity included), found by LP.
/// Finite, and the constant in the C*-norm domination of the metric.
pub fn lipschitz_ball_radius(
    spec: &TraceSpec,
    beta: &BetaSequence,
    mu_site: usize,
) -> Result<f64> {
    beta.check_len(spec)?;
    if mu_site < 1 || mu_site > spec.truncation() {
        return Err(Error::IndexOutOfRange {
            index: mu_site,
            max: spec.truncation(),
        });
    }
    let k = spec.truncation();
    let n_diag = spec.matrix_dim();
    let nmat = n_diag as f64;
    // variables: g_d(m) for m in 1..K, then the scalar unit coefficient
    let nvars = k * n_diag + 1;
    let alpha = nvars - 1;
    let var = |site: usize, d: usize| (site - 1) * n_diag + d;

    let mut rows = Vec::new();
    let mut bounds = Vec::new();
    let mut push = |coeffs: Vec<f64>, bound: f64| {
        bounds.push(bound);
        bounds.push(bound);
        let negated = coeffs.iter().map(|c| -c).collect();
        rows.push(coeffs);
        rows.push(negated);
    };

    // ball constraints; the unit component cancels out of every residual
    for n in 0..=(k + 1) {
        for m in 1..=(k + 1) {
            for d in 0..n_diag {
                let mut coeffs = vec![0.0; nvars];
                if n == 0 {
                    for mp in 1..=k {
                        for dp in 0..n_diag {
                            coeffs[var(mp, dp)] -= spec.weight(mp) / (nmat * spec.total_mass());
                        }
                    }
                    if m <= k {
                        coeffs[var(m, d)] += 1.0;
                    }
                } else if n <= k && m >= n {
                    let denom = spec.tail_mass_from(n);
                    for mp in n..=k {
                        coeffs[var(mp, d)] -= spec.weight(mp) / denom;
                    }
                    if m <= k {
                        coeffs[var(m, d)] += 1.0;
                    }
                }
                push(coeffs, beta.get(n));
            }
        }
    }

    // normalization (1/N) sum_d (g_d(mu) + alpha) = 0, as two inequalities
    let mut norm_row = vec![0.0; nvars];
    for d in 0..n_diag {
        norm_row[var(mu_site, d)] = 1.0 / nmat;
    }
    norm_row[alpha] = 1.0;
    push(norm_row, 0.0);

    let mut radius = 0.0f64;
    for m in 1..=(k + 1) {
        for d in 0..n_diag {
            for sign in [1.0, -1.0] {
                let mut objective = vec![0.0; nvars];
                if m <= k {
                    objective[var(m, d)] = sign;
                }
                objective[alpha] += sign;
                let lp = LinearProgram::new(objective, rows.clone(), bounds.clone())?;
                let out = solve_lp(&lp)?;
                if out.status != LpStatus::Optimal {
                    return Err(Error::LpNotOptimal { status: out.status });
                }
                radius = radius.max(out.value);
            }
        }
    }
    Ok(radius)
}

/// Greedy first-fit cover: walks the points in order and opens a new center
/// whenever a point is farther than eps from every existing center. Returns
/// center indices; every point ends up within eps of some center.
pub fn epsilon_net<F>(count: usize, eps: f64, mut dist: F) -> Result<Vec<usize>>
where
    F: FnMut(usize, usize) -> Result<f64>,
{
    let mut centers: Vec<usize> = Vec::new();
    for p in 0..count {
        let mut covered = false;
        for &c in &centers {
            if dist(p, c)? <= eps {
                covered = true;
                break;
            }
        }
        if !covered {
            centers.push(p);
        }
    }
    Ok(centers)
}

/// CSV emitter for point-mass grids: n, m, lp_value, certificate.
pub fn write_pointmass_csv(
    w: &mut dyn Write,
    entries: &[(usize, usize, f64, f64)],
) -> std::io::Result<()> {
    writeln!(w, "n,m,lp_value,certificate")?;
    for (n, m, lp, cert) in entries {
        writeln!(w, "{n},{m},{lp},{cert}")?;
    }
    Ok(())
}

/// CSV emitter for truncation-convergence curves: K, lp_value.
pub fn write_convergence_csv(w: &mut dyn Write, entries: &[(usize, f64)]) -> std::io::Result<()> {
    writeln!(w, "K,lp_value")?;
    for (k, lp) in entries {
        writeln!(w, "{k},{lp}")?;
    }
    Ok(())
}

/// CSV emitter for net-size tables: eps, net_size.
pub fn write_net_csv(w: &mut dyn Write, entries: &[(f64, usize)]) -> std::io::Result<()> {
    writeln!(w, "eps,net_size")?;
    for (eps, size) in entries {
        writeln!(w, "{eps},{size}")?;
    }
    Ok(())
}

/// Trace-preservation drift of E_n, for tests: |tau~(E_n u) - tau~(u)|.
pub fn trace_preservation_drift(u: &UnitizedElement, n: usize) -> Result<f64> {
    let e = cond_exp(u, n)?;
    Ok((extended_trace(&e) - extended_trace(u)).norm().max(
        (concrete_trace(&e) - concrete_trace(u)).norm(),
    ))
}
