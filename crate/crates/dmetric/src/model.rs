//! Truncated model of matrix-valued functions on the quantized interval:
//! C_0(N, M_N(C)) cut off after K sites, together with its compactification.
//!
//! An element is a list of K matrix values at sites 1..K; sites beyond K are
//! zero. The weighted trace is tau(f) = sum_n (1/N) Tr(f(n)) w(n) with the
//! geometric default w(n) = 2^(-n). The total mass of the untruncated measure
//! is carried explicitly so unitized formulas keep their infinite-space
//! meaning: tail_mass = total_mass - sum w(n) is the weight of everything
//! past the truncation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, matrix_abs, operator_norm, positive_negative_parts, ComplexMatrix,
    HermitianMatrix,
};
use crate::tol::Tolerances;

/// Weighted-trace specification: matrix dimension, truncation, site weights,
/// and the mass carried by the (truncated) tail.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceSpec {
    matrix_dim: usize,
    truncation: usize,
    site_weights: Vec<f64>,
    total_mass: f64,
    tail_mass: f64,
}

impl TraceSpec {
    /// Default model: w(n) = 2^(-n), total mass 1, tail mass 2^(-K).
    pub fn geometric(matrix_dim: usize, truncation: usize) -> Self {
        assert!(matrix_dim >= 1 && truncation >= 1);
        let site_weights: Vec<f64> = (1..=truncation).map(|n| 0.5f64.powi(n as i32)).collect();
        let tail_mass = 0.5f64.powi(truncation as i32);
        TraceSpec {
            matrix_dim,
            truncation,
            site_weights,
            total_mass: 1.0,
            tail_mass,
        }
    }

    pub fn with_weights(
        matrix_dim: usize,
        site_weights: Vec<f64>,
        total_mass: f64,
    ) -> Result<Self> {
        if matrix_dim < 1 || site_weights.is_empty() {
            return Err(Error::BadInput("empty trace specification".into()));
        }
        if site_weights.iter().any(|w| !(*w > 0.0)) {
            return Err(Error::BadInput("site weights must be positive".into()));
        }
        let sum: f64 = site_weights.iter().sum();
        let tail_mass = total_mass - sum;
        if tail_mass < -1e-12 {
            return Err(Error::BadInput(format!(
                "total mass {total_mass} smaller than weight sum {sum}"
            )));
        }
        Ok(TraceSpec {
            matrix_dim,
            truncation: site_weights.len(),
            site_weights,
            total_mass,
            tail_mass: tail_mass.max(0.0),
        })
    }

    pub fn matrix_dim(&self) -> usize {
        self.matrix_dim
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Weight of site n, 1-indexed.
    pub fn weight(&self, n: usize) -> f64 {
        self.site_weights[n - 1]
    }

    pub fn weights(&self) -> &[f64] {
        &self.site_weights
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// Mass of sites n..K plus the tail: the denominator of the tail average
    /// starting at site n.
    pub fn tail_mass_from(&self, n: usize) -> f64 {
        self.site_weights[(n - 1)..].iter().sum::<f64>() + self.tail_mass
    }

    /// Same sites and weights, different matrix dimension.
    pub fn with_matrix_dim(&self, matrix_dim: usize) -> TraceSpec {
        TraceSpec {
            matrix_dim,
            ..self.clone()
        }
    }
}

/// Finitely supported element of C_0(N, M_N(C)): matrix values at sites 1..K.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteFunction {
    spec: TraceSpec,
    values: Vec<ComplexMatrix>,
}

impl SiteFunction {
    pub fn zero(spec: TraceSpec) -> Self {
        let values = (0..spec.truncation)
            .map(|_| ComplexMatrix::zeros(spec.matrix_dim))
            .collect();
        SiteFunction { spec, values }
    }

    pub fn from_values(spec: TraceSpec, values: Vec<ComplexMatrix>) -> Result<Self> {
        if values.len() != spec.truncation {
            return Err(Error::BadInput(format!(
                "expected {} site values, got {}",
                spec.truncation,
                values.len()
            )));
        }
        if values.iter().any(|v| v.dim() != spec.matrix_dim) {
            return Err(Error::BadInput("site value dimension mismatch".into()));
        }
        Ok(SiteFunction { spec, values })
    }

    /// Scalar model shortcut (N = 1).
    pub fn from_scalars(spec: TraceSpec, scalars: &[f64]) -> Result<Self> {
        if spec.matrix_dim != 1 {
            return Err(Error::BadInput("from_scalars needs matrix_dim 1".into()));
        }
        let values = scalars
            .iter()
            .map(|x| ComplexMatrix::scalar(1, Complex64::new(*x, 0.0)))
            .collect();
        Self::from_values(spec, values)
    }

    pub fn spec(&self) -> &TraceSpec {
        &self.spec
    }

    /// Value at site n (1-indexed); zero beyond the truncation.
    pub fn site(&self, n: usize) -> ComplexMatrix {
        if n >= 1 && n <= self.spec.truncation {
            self.values[n - 1].clone()
        } else {
            ComplexMatrix::zeros(self.spec.matrix_dim)
        }
    }

    pub fn sites(&self) -> &[ComplexMatrix] {
        &self.values
    }

    pub fn map_sites(&self, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> SiteFunction {
        SiteFunction {
            spec: self.spec.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &SiteFunction) -> Result<SiteFunction> {
        check_specs(&self.spec, &other.spec)?;
        Ok(SiteFunction {
            spec: self.spec.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &SiteFunction) -> Result<SiteFunction> {
        check_specs(&self.spec, &other.spec)?;
        Ok(SiteFunction {
            spec: self.spec.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn scale(&self, c: Complex64) -> SiteFunction {
        self.map_sites(|m| m.scale(c))
    }

    pub fn adjoint(&self) -> SiteFunction {
        self.map_sites(|m| m.adjoint())
    }

    /// Sitewise product.
    pub fn mul(&self, other: &SiteFunction) -> Result<SiteFunction> {
        check_specs(&self.spec, &other.spec)?;
        Ok(SiteFunction {
            spec: self.spec.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        })
    }

    pub fn is_hermitian(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.asymmetry() <= Tolerances::DEFAULT.hermit_tol)
    }

    pub fn serialize_json(&self) -> serde_json::Value {
        serde_json::to_value(SiteFunctionFile::from(self)).expect("plain data")
    }

    pub fn deserialize_json(value: &serde_json::Value) -> Result<SiteFunction> {
        let file: SiteFunctionFile = serde_json::from_value(value.clone())?;
        file.into_site_function()
    }
}

fn check_specs(a: &TraceSpec, b: &TraceSpec) -> Result<()> {
    if a != b {
        return Err(Error::SpecMismatch);
    }
    Ok(())
}

/// Wire format: {"N", "K", "weights", "sites"} with row-major [re, im] pairs.
#[derive(Serialize, Deserialize)]
struct SiteFunctionFile {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "K")]
    k: usize,
    weights: Vec<f64>,
    sites: Vec<Vec<[f64; 2]>>,
}

impl From<&SiteFunction> for SiteFunctionFile {
    fn from(f: &SiteFunction) -> Self {
        SiteFunctionFile {
            n: f.spec.matrix_dim,
            k: f.spec.truncation,
            weights: f.spec.site_weights.clone(),
            sites: f
                .values
                .iter()
                .map(|m| m.entries().iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

impl SiteFunctionFile {
    fn into_site_function(self) -> Result<SiteFunction> {
        // The file carries no total mass. Geometric weights get the exact
        // full-space mass 1; anything else is treated as a fully truncated
        // measure (tail 0).
        let geometric = self.weights.len() == self.k
            && self
                .weights
                .iter()
                .enumerate()
                .all(|(i, w)| (w - 0.5f64.powi(i as i32 + 1)).abs() <= 1e-12);
        let spec = if geometric {
            TraceSpec::geometric(self.n, self.k)
        } else {
            let sum: f64 = self.weights.iter().sum();
            TraceSpec::with_weights(self.n, self.weights.clone(), sum)?
        };
        let values = self
            .sites
            .iter()
            .map(|entries| {
                if entries.len() != self.n * self.n {
                    return Err(Error::BadInput("site entry count mismatch".into()));
                }
                let mut m = ComplexMatrix::zeros(self.n);
                for (idx, [re, im]) in entries.iter().enumerate() {
                    m.set(idx / self.n, idx % self.n, Complex64::new(*re, *im));
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        SiteFunction::from_values(spec, values)
    }
}

/// Weighted trace tau(f) = sum_n (1/N) Tr(f(n)) w(n). Complex for general
/// inputs, real for Hermitian sites.
pub fn trace_tau(f: &SiteFunction) -> Complex64 {
    let n = f.spec.matrix_dim as f64;
    f.values
        .iter()
        .zip(&f.spec.site_weights)
        .map(|(v, w)| v.trace() * (*w / n))
        .sum()
}

/// L1 distance tau(|x - y|); a metric on self-adjoint site functions.
pub fn l1_distance(x: &SiteFunction, y: &SiteFunction) -> Result<f64> {
    check_specs(&x.spec, &y.spec)?;
    let diff = x.sub(y)?;
    l1_norm(&diff)
}

/// L1 norm tau(|x|).
pub fn l1_norm(x: &SiteFunction) -> Result<f64> {
    let mut abs_values = Vec::with_capacity(x.values.len());
    for v in &x.values {
        abs_values.push(matrix_abs(v)?.into_matrix());
    }
    let abs = SiteFunction::from_values(x.spec.clone(), abs_values)?;
    Ok(trace_tau(&abs).re)
}

/// C*-norm of the truncated model: max over sites of the operator norm.
pub fn sup_norm(f: &SiteFunction) -> f64 {
    f.values
        .iter()
        .map(operator_norm)
        .fold(0.0, f64::max)
}

/// Jordan decomposition: x = (P - Q) + i (R - S) with all four sitewise PSD,
/// P orthogonal to Q and R orthogonal to S at every site.
pub fn jordan_decompose(
    x: &SiteFunction,
) -> Result<(SiteFunction, SiteFunction, SiteFunction, SiteFunction)> {
    let half = Complex64::new(0.5, 0.0);
    let minus_half_i = Complex64::new(0.0, -0.5);
    let re = x.add(&x.adjoint())?.scale(half);
    let im = x.sub(&x.adjoint())?.scale(minus_half_i);

    let mut parts = [
        Vec::with_capacity(x.values.len()),
        Vec::with_capacity(x.values.len()),
        Vec::with_capacity(x.values.len()),
        Vec::with_capacity(x.values.len()),
    ];
    for (r, i) in re.values.iter().zip(&im.values) {
        let (rp, rn) = positive_negative_parts(&HermitianMatrix::symmetrized(r))?;
        let (ip, ineg) = positive_negative_parts(&HermitianMatrix::symmetrized(i))?;
        parts[0].push(rp.into_matrix());
        parts[1].push(rn.into_matrix());
        parts[2].push(ip.into_matrix());
        parts[3].push(ineg.into_matrix());
    }
    let [p, q, r, s] = parts;
    Ok((
        SiteFunction::from_values(x.spec.clone(), p)?,
        SiteFunction::from_values(x.spec.clone(), q)?,
        SiteFunction::from_values(x.spec.clone(), r)?,
        SiteFunction::from_values(x.spec.clone(), s)?,
    ))
}

/// Positive element of trace 1: a point of the density space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityElement {
    f: SiteFunction,
}

impl DensityElement {
    /// Validates sitewise positivity (within psd_tol) and unit trace (within
    /// density_tol).
    pub fn new(f: SiteFunction) -> Result<Self> {
        for v in &f.values {
            let h = HermitianMatrix::new(v.clone())?;
            let min = hermitian_eig(&h)?.eigenvalues[0];
            if min < -Tolerances::DEFAULT.psd_tol {
                return Err(Error::NotPsd { min_eigenvalue: min });
            }
        }
        let trace = trace_tau(&f).re;
        if (trace - 1.0).abs() > Tolerances::DEFAULT.density_tol {
            return Err(Error::NotDensity { integral: trace });
        }
        Ok(DensityElement { f })
    }

    pub fn as_site_function(&self) -> &SiteFunction {
        &self.f
    }

    pub fn spec(&self) -> &TraceSpec {
        self.f.spec()
    }

    pub fn site(&self, n: usize) -> ComplexMatrix {
        self.f.site(n)
    }

    /// The point mass a_n = (1/w(n)) chi_n I, the density supported on one
    /// site (2^n chi_n for the geometric weights).
    pub fn point_mass(spec: &TraceSpec, n: usize) -> Result<Self> {
        if n < 1 || n > spec.truncation {
            return Err(Error::IndexOutOfRange {
                index: n,
                max: spec.truncation,
            });
        }
        let mut values: Vec<ComplexMatrix> = (0..spec.truncation)
            .map(|_| ComplexMatrix::zeros(spec.matrix_dim))
            .collect();
        values[n - 1] = ComplexMatrix::scalar(
            spec.matrix_dim,
            Complex64::new(1.0 / spec.weight(n), 0.0),
        );
        DensityElement::new(SiteFunction::from_values(spec.clone(), values)?)
    }

    /// Some(n) when this density is the point mass at site n.
    pub fn as_point_mass(&self) -> Option<usize> {
        let mut support = None;
        for n in 1..=self.spec().truncation {
            if operator_norm(&self.f.values[n - 1]) > 1e-12 {
                if support.is_some() {
                    return None;
                }
                support = Some(n);
            }
        }
        let n = support?;
        let expected = ComplexMatrix::scalar(
            self.spec().matrix_dim,
            Complex64::new(1.0 / self.spec().weight(n), 0.0),
        );
        if self.f.values[n - 1].max_entry_distance(&expected) <= 1e-9 {
            Some(n)
        } else {
            None
        }
    }
}

/// Scales a nonzero sitewise-PSD element to trace 1.
pub fn normalize_to_density(y: &SiteFunction) -> Result<DensityElement> {
    let trace = trace_tau(y).re;
    if trace <= Tolerances::DEFAULT.density_tol {
        return Err(Error::ZeroElement { trace });
    }
    DensityElement::new(y.scale(Complex64::new(1.0 / trace, 0.0)))
}

/// Element of the compactified model C(N-bar, M_N(C)): site values at 1..K
/// plus a limit value shared by all sites past K and the point at infinity.
///
/// A minimal-unitization pair (f, alpha) is the special case of a scalar
/// limit alpha I; conditional expectations of matrix-valued elements need
/// the general form.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitizedElement {
    f: SiteFunction,
    limit: ComplexMatrix,
}

impl UnitizedElement {
    /// The pair (f, alpha) of the minimal unitization.
    pub fn from_pair(f: SiteFunction, alpha: Complex64) -> Self {
        let limit = ComplexMatrix::scalar(f.spec.matrix_dim, alpha);
        UnitizedElement { f, limit }
    }

    /// Embeds an ideal element as (f, 0).
    pub fn embed(f: SiteFunction) -> Self {
        Self::from_pair(f, Complex64::new(0.0, 0.0))
    }

    pub fn unit(spec: &TraceSpec) -> Self {
        Self::from_pair(SiteFunction::zero(spec.clone()), Complex64::new(1.0, 0.0))
    }

    pub fn with_limit(f: SiteFunction, limit: ComplexMatrix) -> Result<Self> {
        if limit.dim() != f.spec.matrix_dim {
            return Err(Error::BadInput("limit dimension mismatch".into()));
        }
        Ok(UnitizedElement { f, limit })
    }

    pub fn spec(&self) -> &TraceSpec {
        self.f.spec()
    }

    pub fn ideal_part(&self) -> &SiteFunction {
        &self.f
    }

    pub fn limit(&self) -> &ComplexMatrix {
        &self.limit
    }

    /// Concrete value at site m: f(m) + limit for m <= K, limit past K.
    pub fn value_at(&self, m: usize) -> ComplexMatrix {
        if m >= 1 && m <= self.spec().truncation {
            self.f.values[m - 1].add(&self.limit)
        } else {
            self.limit.clone()
        }
    }

    pub fn value_at_infinity(&self) -> ComplexMatrix {
        self.limit.clone()
    }

    /// Concrete values at sites 1..K followed by the value at infinity.
    pub fn concrete_values(&self) -> Vec<ComplexMatrix> {
        let mut out: Vec<ComplexMatrix> = (1..=self.spec().truncation)
            .map(|m| self.value_at(m))
            .collect();
        out.push(self.value_at_infinity());
        out
    }

    pub fn add(&self, other: &UnitizedElement) -> Result<UnitizedElement> {
        check_specs(&self.f.spec, &other.f.spec)?;
        Ok(UnitizedElement {
            f: self.f.add(&other.f)?,
            limit: self.limit.add(&other.limit),
        })
    }

    pub fn sub(&self, other: &UnitizedElement) -> Result<UnitizedElement> {
        check_specs(&self.f.spec, &other.f.spec)?;
        Ok(UnitizedElement {
            f: self.f.sub(&other.f)?,
            limit: self.limit.sub(&other.limit),
        })
    }

    pub fn scale(&self, c: Complex64) -> UnitizedElement {
        UnitizedElement {
            f: self.f.scale(c),
            limit: self.limit.scale(c),
        }
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.f.is_hermitian() && self.limit.asymmetry() <= Tolerances::DEFAULT.hermit_tol
    }

    /// Sup norm over all concrete values, infinity included.
    pub fn concrete_sup_norm(&self) -> f64 {
        self.concrete_values()
            .iter()
            .map(operator_norm)
            .fold(0.0, f64::max)
    }

    pub fn max_concrete_distance(&self, other: &UnitizedElement) -> f64 {
        self.concrete_values()
            .iter()
            .zip(other.concrete_values())
            .map(|(a, b)| a.max_entry_distance(&b))
            .fold(0.0, f64::max)
    }
}

/// Product in the unitization: (a, A)(b, B) = (ab + aB + Ab, AB), applied
/// sitewise. Reduces to (ab + beta a + alpha b, alpha beta) for scalar
/// limits.
pub fn unitized_product(u: &UnitizedElement, v: &UnitizedElement) -> Result<UnitizedElement> {
    check_specs(&u.f.spec, &v.f.spec)?;
    let spec = u.f.spec.clone();
    let values: Vec<ComplexMatrix> = u
        .f
        .values
        .iter()
        .zip(&v.f.values)
        .map(|(a, b)| a.mul(b).add(&a.mul(&v.limit)).add(&u.limit.mul(b)))
        .collect();
    Ok(UnitizedElement {
        f: SiteFunction::from_values(spec, values)?,
        limit: u.limit.mul(&v.limit),
    })
}

/// Extension of the trace to the unitization:
/// tau~((f, alpha)) = tau(f) + alpha * total_mass.
pub fn extended_trace(u: &UnitizedElement) -> Complex64 {
    let n = u.spec().matrix_dim as f64;
    trace_tau(&u.f) + u.limit.trace() * (u.spec().total_mass / n)
}

/// The same trace evaluated from concrete values only:
/// sum_{m<=K} (1/N) Tr(value(m)) w(m) + (1/N) Tr(value(inf)) tail_mass.
pub fn concrete_trace(u: &UnitizedElement) -> Complex64 {
    let n = u.spec().matrix_dim as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 1..=u.spec().truncation {
        acc += u.value_at(m).trace() * (u.spec().weight(m) / n);
    }
    acc + u.value_at_infinity().trace() * (u.spec().tail_mass() / n)
}

/// Lifts a scalar site function to matrices: g(n) I. Preserves the trace
/// (the matrix trace is normalized) and, on densities, the Bures distance.
pub fn lift_scalar_to_matrix(g: &SiteFunction, matrix_dim: usize) -> Result<SiteFunction> {
    if g.spec.matrix_dim != 1 {
        return Err(Error::BadInput("lift input must be scalar-valued".into()));
    }
    let spec = g.spec.with_matrix_dim(matrix_dim);
    let values = g
        .values
        .iter()
        .map(|v| ComplexMatrix::scalar(matrix_dim, v.get(0, 0)))
        .collect();
    SiteFunction::from_values(spec, values)
}
