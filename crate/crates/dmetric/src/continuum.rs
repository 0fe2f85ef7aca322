//! Piecewise-linear density models on an interval with Simpson quadrature:
//! the Hellinger identity, a ramp family with closed-form fidelity, disjoint
//! triangular bumps, and the divergent Monge-Kantorovich witness on [0, inf).

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Continuous piecewise-linear function: values at strictly ascending
/// breakpoints, linear in between, zero outside the breakpoint range.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearFn {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewiseLinearFn {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.len() != values.len() || breakpoints.len() < 2 {
            return Err(Error::BadInput(
                "need matching breakpoint/value lists of length >= 2".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadInput("breakpoints must be strictly ascending".into()));
        }
        if values.iter().chain(breakpoints.iter()).any(|v| !v.is_finite()) {
            return Err(Error::BadInput("non-finite breakpoint data".into()));
        }
        Ok(PiecewiseLinearFn { breakpoints, values })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (lo, hi) = self.domain();
        if x < lo || x > hi {
            return 0.0;
        }
        // binary search for the segment containing x
        let idx = match self
            .breakpoints
            .binary_search_by(|b| b.partial_cmp(&x).unwrap())
        {
            Ok(i) => return self.values[i],
            Err(i) => i,
        };
        let (x0, x1) = (self.breakpoints[idx - 1], self.breakpoints[idx]);
        let (y0, y1) = (self.values[idx - 1], self.values[idx]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| *v >= 0.0)
    }

    /// Exact integral (sum of trapezoids); the analytic oracle for
    /// quadrature tests and for normalization.
    pub fn exact_integral(&self) -> f64 {
        self.breakpoints
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, y)| 0.5 * (y[0] + y[1]) * (x[1] - x[0]))
            .sum()
    }

    pub fn scale(&self, c: f64) -> PiecewiseLinearFn {
        PiecewiseLinearFn {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    /// Supports are disjoint when the breakpoint ranges do not overlap.
    pub fn support_disjoint(&self, other: &PiecewiseLinearFn) -> bool {
        let (a0, a1) = self.domain();
        let (b0, b1) = other.domain();
        a1 <= b0 || b1 <= a0
    }
}

/// Composite Simpson with panels aligned to the supplied breakpoints; each
/// inter-breakpoint interval is split into panels of width at most `step`.
/// Integrands with kinks at the breakpoints stay smooth panel by panel.
pub fn integrate(breakpoints: &[f64], f: impl Fn(f64) -> f64, step: f64) -> f64 {
    assert!(step > 0.0, "step must be positive");
    let mut total = 0.0;
    for w in breakpoints.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let panels = ((b - a) / step).ceil().max(1.0) as usize;
        let h = (b - a) / panels as f64;
        let mut acc = 0.0;
        for p in 0..panels {
            let x0 = a + p as f64 * h;
            let x1 = x0 + h;
            let mid = 0.5 * (x0 + x1);
            acc += (f(x0) + 4.0 * f(mid) + f(x1)) * h / 6.0;
        }
        total += acc;
    }
    total
}

fn merged_breakpoints(f: &PiecewiseLinearFn, g: &PiecewiseLinearFn) -> Vec<f64> {
    let mut pts: Vec<f64> = f
        .breakpoints
        .iter()
        .chain(g.breakpoints.iter())
        .copied()
        .collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15);
    pts
}

fn check_density(f: &PiecewiseLinearFn, step: f64) -> Result<()> {
    let integral = integrate(f.breakpoints(), |x| f.eval(x), step);
    if (integral - 1.0).abs() > 1e-6 {
        return Err(Error::NotDensity { integral });
    }
    Ok(())
}

/// Continuum fidelity F(f, g) = integral of sqrt(f g).
pub fn fidelity_cont(f: &PiecewiseLinearFn, g: &PiecewiseLinearFn, step: f64) -> Result<f64> {
    check_density(f, step)?;
    check_density(g, step)?;
    let pts = merged_breakpoints(f, g);
    let value = integrate(&pts, |x| (f.eval(x) * g.eval(x)).max(0.0).sqrt(), step);
    crate::bures::clamp_fidelity(value)
}

/// Bures distance sqrt(1 - F).
pub fn bures_cont(f: &PiecewiseLinearFn, g: &PiecewiseLinearFn, step: f64) -> Result<f64> {
    let fid = fidelity_cont(f, g, step)?;
    Ok((1.0 - fid).max(0.0).sqrt())
}

/// Hellinger distance sqrt(1/2 * integral of (sqrt f - sqrt g)^2); on
/// commutative densities this equals the Bures distance.
pub fn hellinger_distance(
    f: &PiecewiseLinearFn,
    g: &PiecewiseLinearFn,
    step: f64,
) -> Result<f64> {
    check_density(f, step)?;
    check_density(g, step)?;
    let pts = merged_breakpoints(f, g);
    let value = integrate(
        &pts,
        |x| {
            let d = f.eval(x).max(0.0).sqrt() - g.eval(x).max(0.0).sqrt();
            d * d
        },
        step,
    );
    Ok((0.5 * value).max(0.0).sqrt())
}

/// The ramp family on (0, 1]: n = 0 is the limit density
///   f(x) = (18/5) x on (0, 1/3], 6/5 on (1/3, 1],
/// and n >= 1 gives
///   f_n(x) = (18 2^n / (5 2^n - 3)) x on (0, 1/3],
///            constant on (1/3, 1 - 2^(-n)), then linear to 0 at 1.
pub fn paper_family(n: u32) -> PiecewiseLinearFn {
    if n == 0 {
        return PiecewiseLinearFn::new(vec![0.0, 1.0 / 3.0, 1.0], vec![0.0, 1.2, 1.2])
            .expect("static data");
    }
    let pow = 2.0f64.powi(n as i32);
    let plateau = 6.0 * pow / (5.0 * pow - 3.0);
    let knee = 1.0 - 0.5f64.powi(n as i32);
    PiecewiseLinearFn::new(
        vec![0.0, 1.0 / 3.0, knee, 1.0],
        vec![0.0, plateau, plateau, 0.0],
    )
    .expect("static data")
}

/// Closed-form fidelity between the ramp family member n and its limit:
/// three terms over sqrt(25 2^n - 15), tending to 1/5 + 4/5 + 0 = 1.
pub fn closed_form_fidelity(n: u32) -> f64 {
    assert!(n >= 1);
    let pow = 2.0f64.powi(n as i32);
    let denom = (25.0 * pow - 15.0).sqrt();
    let half_pow = 2.0f64.powf(n as f64 / 2.0);
    let t1 = half_pow / denom;
    let t2 = 2.0f64.powf(1.0 - n as f64 / 2.0) * (2.0 * pow - 3.0) / denom;
    let t3 = 4.0 * pow * 8.0f64.powf(-(n as f64)).sqrt() / denom;
    t1 + t2 + t3
}

/// Triangular bump supported on (2^(-n), 2^(1-n)) with slope 2^(2(n+1)) up
/// to peak 2^(n+1); area 1, pairwise disjoint supports.
pub fn bump_family(n: u32) -> PiecewiseLinearFn {
    assert!(n >= 1);
    let lo = 0.5f64.powi(n as i32);
    let hi = 0.5f64.powi(n as i32 - 1);
    let peak = 2.0f64.powi(n as i32 + 1);
    PiecewiseLinearFn::new(vec![lo, 0.5 * (lo + hi), hi], vec![0.0, peak, 0.0])
        .expect("static data")
}

/// One witness value for the divergence of the Monge-Kantorovich metric
/// against the Cauchy density h(x) = 1/(pi (1 + x^2)).
#[derive(Debug, Clone, Copy)]
pub struct DivergenceWitness {
    /// Integral of f_n * h over the full support of f_n.
    pub quadrature_value: f64,
    /// Integral of x * h(x) over the ramp [0, T_n] alone; certified against
    /// the closed form.
    pub ramp_quadrature: f64,
    /// (1/(2 pi)) ln(tan(pi/2 (1 - 2^(-n)))^2 + 1).
    pub closed_form_lower_bound: f64,
}

/// Builds the slope-1 ramp up to T_n = tan(pi/2 (1 - 2^(-n))), descends with
/// slope -1 to zero, and integrates against h. The ramp integral has the
/// closed form (1/(2 pi)) ln(T_n^2 + 1), a lower bound that grows without
/// bound in n.
pub fn divergence_witness(n: u32, step: f64) -> DivergenceWitness {
    assert!(n >= 1);
    let t = (PI / 2.0 * (1.0 - 0.5f64.powi(n as i32))).tan();
    let f = PiecewiseLinearFn::new(vec![0.0, t, 2.0 * t], vec![0.0, t, 0.0]).expect("static");
    let h = |x: f64| 1.0 / (PI * (1.0 + x * x));

    let quadrature_value = integrate(f.breakpoints(), |x| f.eval(x) * h(x), step);
    let ramp_quadrature = integrate(&[0.0, t], |x| x * h(x), step);
    let closed_form_lower_bound = (t * t + 1.0).ln() / (2.0 * PI);
    DivergenceWitness {
        quadrature_value,
        ramp_quadrature,
        closed_form_lower_bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    use crate::rng::random_plf_density;

    const STEP: f64 = 1e-4;

    #[test]
    fn integrate_constant_one() {
        let v = integrate(&[0.0, 1.0], |_| 1.0, STEP);
        assert!((v - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn ramp_family_members_are_densities() {
        // analytic piecewise integration: (9/5)(1/9) + (6/5)(2/3) = 1, and the
        // trapezoid oracle is exact for every member
        let f = paper_family(0);
        assert!((f.exact_integral() - 1.0).abs() <= 1e-12);
        assert!((integrate(f.breakpoints(), |x| f.eval(x), STEP) - 1.0).abs() <= 1e-10);
        for n in 1..=10 {
            let fam = paper_family(n);
            assert!((fam.exact_integral() - 1.0).abs() <= 1e-12, "n={n}");
            assert!(
                (integrate(fam.breakpoints(), |x| fam.eval(x), STEP) - 1.0).abs() <= 1e-8,
                "n={n}"
            );
        }
    }

    #[test]
    fn ramp_family_breakpoint_values() {
        let f = paper_family(0);
        assert!((f.eval(1.0 / 3.0) - 1.2).abs() <= 1e-15);
        let f1 = paper_family(1);
        assert_eq!(f1.eval(1.0), 0.0);
        assert!((f1.eval(1.0 / 3.0) - 12.0 / 7.0).abs() <= 1e-15);
    }

    #[test]
    fn closed_form_examples() {
        // n = 1 simplifies to 4 sqrt(2) / sqrt(35)
        let expected = 4.0 * 2.0f64.sqrt() / 35.0f64.sqrt();
        assert!((closed_form_fidelity(1) - expected).abs() <= 1e-12);
        assert!((closed_form_fidelity(20) - 1.0).abs() <= 1e-3);
        let mut prev = 0.0;
        for n in 1..=20 {
            let v = closed_form_fidelity(n);
            assert!(v > prev, "not increasing at n={n}");
            assert!(v < 1.0);
            prev = v;
        }
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let f = paper_family(0);
        for n in 1..=10 {
            let fid = fidelity_cont(&paper_family(n), &f, STEP).unwrap();
            let cf = closed_form_fidelity(n);
            assert!(
                (fid - cf).abs() <= 1e-6,
                "n={n}: quadrature {fid} vs closed form {cf}"
            );
        }
    }

    #[test]
    fn fidelity_trivial_cases() {
        let f = paper_family(0);
        assert!((fidelity_cont(&f, &f, STEP).unwrap() - 1.0).abs() <= 1e-9);
        assert!(bures_cont(&f, &f, STEP).unwrap() <= 1e-4);

        let b1 = bump_family(1);
        let b2 = bump_family(2);
        assert!(fidelity_cont(&b1, &b2, STEP).unwrap() <= 1e-12);
        assert!((bures_cont(&b1, &b2, STEP).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn not_a_density_is_rejected() {
        let f = paper_family(0).scale(2.0);
        assert!(matches!(
            fidelity_cont(&f, &paper_family(0), STEP),
            Err(Error::NotDensity { .. })
        ));
    }

    #[test]
    fn bumps_have_area_one_and_disjoint_supports() {
        for n in 1..=10 {
            let b = bump_family(n);
            assert!((b.exact_integral() - 1.0).abs() <= 1e-12);
            assert!(
                (integrate(b.breakpoints(), |x| b.eval(x), 1e-3) - 1.0).abs() <= 1e-9,
                "n={n}"
            );
            for m in 1..=10 {
                if n != m {
                    assert!(b.support_disjoint(&bump_family(m)));
                }
            }
        }
    }

    #[test]
    fn bump_pairwise_bures_is_one() {
        for n in 1..=4u32 {
            for m in (n + 1)..=4 {
                let d = bures_cont(&bump_family(n), &bump_family(m), 1e-3).unwrap();
                assert!((d - 1.0).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn hellinger_identity_on_random_densities() {
        let mut rng = SplitMix64::new(101);
        for _ in 0..200 {
            let f = random_plf_density(&mut rng);
            let g = random_plf_density(&mut rng);
            let b = bures_cont(&f, &g, STEP).unwrap();
            let h = hellinger_distance(&f, &g, STEP).unwrap();
            assert!(
                (b * b - h * h).abs() <= 2e-6,
                "identity residual {} for bures {b}, hellinger {h}",
                (b * b - h * h).abs()
            );
            assert!((b - h).abs() <= 2e-6);
        }
    }

    #[test]
    fn quadrature_error_contracts_under_step_halving() {
        let f = paper_family(0);
        let g = paper_family(3);
        let reference = fidelity_cont(&g, &f, 1e-5).unwrap();
        let e1 = (fidelity_cont(&g, &f, 8e-3).unwrap() - reference).abs();
        let e2 = (fidelity_cont(&g, &f, 4e-3).unwrap() - reference).abs();
        let e3 = (fidelity_cont(&g, &f, 2e-3).unwrap() - reference).abs();
        // order >= 2 would give a factor 4 per halving; allow half that
        assert!(e2 <= e1 / 2.0 + 1e-12, "e1={e1:e}, e2={e2:e}");
        assert!(e3 <= e2 / 2.0 + 1e-12, "e2={e2:e}, e3={e3:e}");
    }

    #[test]
    fn divergence_witness_examples() {
        // n = 1: tan(pi/4) = 1, bound = ln(2)/(2 pi)
        let w1 = divergence_witness(1, 1e-4);
        let expected = 2.0f64.ln() / (2.0 * std::f64::consts::PI);
        assert!((w1.closed_form_lower_bound - expected).abs() <= 1e-12);
        assert!((w1.ramp_quadrature - expected).abs() <= 1e-9);
        assert!(w1.quadrature_value >= w1.closed_form_lower_bound - 1e-6);

        let w4 = divergence_witness(4, 1e-4);
        let t4 = (std::f64::consts::PI / 2.0 * (1.0 - 0.0625)).tan();
        let expected4 = (t4 * t4 + 1.0).ln() / (2.0 * std::f64::consts::PI);
        assert!((w4.closed_form_lower_bound - expected4).abs() <= 1e-12);

        let mut prev = DivergenceWitness {
            quadrature_value: 0.0,
            ramp_quadrature: 0.0,
            closed_form_lower_bound: 0.0,
        };
        let mut exceeded_one = false;
        for n in 1..=12 {
            let w = divergence_witness(n, 1e-3);
            assert!((w.ramp_quadrature - w.closed_form_lower_bound).abs() <= 1e-6, "n={n}");
            assert!(w.quadrature_value > prev.quadrature_value, "n={n}");
            assert!(w.closed_form_lower_bound > prev.closed_form_lower_bound);
            if w.quadrature_value > 1.0 {
                exceeded_one = true;
            }
            prev = w;
        }
        assert!(exceeded_one, "witness never exceeded 1 by n = 12");
    }

    #[test]
    fn eval_outside_domain_is_zero() {
        let b = bump_family(2);
        assert_eq!(b.eval(0.0), 0.0);
        assert_eq!(b.eval(1.0), 0.0);
        assert!(b.eval(0.375) > 0.0);
    }
}
