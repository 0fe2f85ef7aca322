//! Deterministic 64-bit generator for the property sweeps.
//!
//! The generator is splitmix64 so sweeps can be reproduced in any language
//! from the seed alone:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! output = z ^ (z >> 31)
//! ```
//!
//! Doubles come from the top 53 bits: `(output >> 11) * 2^-53`, uniform in
//! [0, 1).

use num_complex::Complex64;

use crate::linalg::{positive_negative_parts, ComplexMatrix, HermitianMatrix};
use crate::model::{DensityElement, SiteFunction, TraceSpec};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    pub fn index(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// Random Hermitian matrix with entries in the unit box.
pub fn random_hermitian(rng: &mut SplitMix64, dim: usize) -> HermitianMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m.set(i, i, Complex64::new(rng.uniform(-1.0, 1.0), 0.0));
        for j in (i + 1)..dim {
            let z = Complex64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
            m.set(i, j, z);
            m.set(j, i, z.conj());
        }
    }
    HermitianMatrix::new(m).expect("constructed Hermitian")
}

/// Random general (non-normal) complex matrix.
pub fn random_complex(rng: &mut SplitMix64, dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            m.set(
                i,
                j,
                Complex64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)),
            );
        }
    }
    m
}

/// Random site function with general complex values.
pub fn random_site_function(rng: &mut SplitMix64, spec: &TraceSpec) -> SiteFunction {
    let values = (0..spec.truncation())
        .map(|_| random_complex(rng, spec.matrix_dim()))
        .collect();
    SiteFunction::from_values(spec.clone(), values).expect("dims match")
}

/// Random self-adjoint site function.
pub fn random_hermitian_site_function(rng: &mut SplitMix64, spec: &TraceSpec) -> SiteFunction {
    let values = (0..spec.truncation())
        .map(|_| random_hermitian(rng, spec.matrix_dim()).into_matrix())
        .collect();
    SiteFunction::from_values(spec.clone(), values).expect("dims match")
}

/// Random strictly positive density: positive part of a random Hermitian per
/// site, plus 1e-3 * I to stay clear of the PSD boundary, then normalized.
pub fn random_density(rng: &mut SplitMix64, spec: &TraceSpec) -> DensityElement {
    let eps = ComplexMatrix::scalar(spec.matrix_dim(), Complex64::new(1e-3, 0.0));
    let values: Vec<ComplexMatrix> = (0..spec.truncation())
        .map(|_| {
            let h = random_hermitian(rng, spec.matrix_dim());
            let (pos, _) = positive_negative_parts(&h).expect("hermitian");
            pos.as_matrix().add(&eps)
        })
        .collect();
    let f = SiteFunction::from_values(spec.clone(), values).expect("dims match");
    crate::model::normalize_to_density(&f).expect("strictly positive")
}

/// Random piecewise-linear density on [0, 1], normalized by its exact
/// (trapezoid) integral.
pub fn random_plf_density(rng: &mut SplitMix64) -> crate::continuum::PiecewiseLinearFn {
    loop {
        let segments = 3 + rng.index(5);
        let mut pts = vec![0.0, 1.0];
        for _ in 0..segments {
            pts.push(rng.next_f64());
        }
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-3);
        if pts.len() < 3 {
            continue;
        }
        let values: Vec<f64> = pts.iter().map(|_| rng.uniform(0.0, 2.0)).collect();
        let f = crate::continuum::PiecewiseLinearFn::new(pts, values).expect("ascending");
        let area = f.exact_integral();
        if area > 0.05 {
            return f.scale(1.0 / area);
        }
    }
}
