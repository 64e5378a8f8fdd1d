use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{Coordinate, Expr, Rational};

use super::NumericError;

pub const DEFAULT_STEP: f64 = 1e-4;
pub const DEFAULT_TOLERANCE: f64 = 1e-5;
pub const DEFAULT_HALF_WIDTH: f64 = 2.0;

/// Sample points and finite-difference settings for a crosscheck.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplePlan {
    pub points: Vec<[f64; 3]>,
    pub h: f64,
    pub tolerance: f64,
    pub seed: u64,
}

impl SamplePlan {
    /// `n` points drawn uniformly from `[-2, 2]^3`.
    pub fn seeded(n: usize, seed: u64) -> SamplePlan {
        SamplePlan::in_box(n, seed, DEFAULT_HALF_WIDTH)
    }

    pub fn in_box(n: usize, seed: u64, half_width: f64) -> SamplePlan {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..n)
            .map(|_| {
                let mut p = [0.0; 3];
                for v in &mut p {
                    *v = rng.gen_range(-half_width..=half_width);
                }
                p
            })
            .collect();
        SamplePlan {
            points,
            h: DEFAULT_STEP,
            tolerance: DEFAULT_TOLERANCE,
            seed,
        }
    }

    pub fn with_step(mut self, h: f64) -> Result<SamplePlan, NumericError> {
        self.h = h;
        self.validate()?;
        Ok(self)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<SamplePlan, NumericError> {
        self.tolerance = tolerance;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), NumericError> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(NumericError::InvalidPlan(format!("step must be positive, got {}", self.h)));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(NumericError::InvalidPlan(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.points.iter().flatten().any(|v| !v.is_finite()) {
            return Err(NumericError::InvalidPlan("sample points must be finite".into()));
        }
        Ok(())
    }

    /// Absolute tolerance for values of magnitude at most 10, relative beyond.
    pub fn allowed(&self, reference: f64) -> f64 {
        allowed(self.tolerance, reference)
    }
}

pub fn allowed(tolerance: f64, reference: f64) -> f64 {
    if reference.abs() <= 10.0 {
        tolerance
    } else {
        tolerance * reference.abs()
    }
}

/// Random polynomial in `t, x, y` of total degree at most `max_degree`, with
/// up to `max_terms` distinct monomials and rational coefficients in
/// `[-3, 3]` with denominators at most 4.
pub fn random_polynomial<R: Rng>(rng: &mut R, max_degree: u32, max_terms: usize) -> Expr {
    random_polynomial_in(rng, &Coordinate::ALL, max_degree, max_terms)
}

/// As [`random_polynomial`], restricted to the coordinates in `vars`.
pub fn random_polynomial_in<R: Rng>(rng: &mut R, vars: &[Coordinate], max_degree: u32, max_terms: usize) -> Expr {
    let n = rng.gen_range(1..=max_terms.max(1));
    let mut seen = BTreeSet::new();
    let mut e = Expr::zero();
    for _ in 0..n {
        let degree = rng.gen_range(0..=max_degree);
        let mut powers = [0u32; 3];
        if !vars.is_empty() {
            for _ in 0..degree {
                powers[vars[rng.gen_range(0..vars.len())].index()] += 1;
            }
        }
        if !seen.insert(powers) {
            continue;
        }
        let den = rng.gen_range(1..=4i64);
        let mut num = 0;
        while num == 0 {
            num = rng.gen_range(-3 * den..=3 * den);
        }
        let mut m = Expr::one();
        for c in Coordinate::ALL {
            m = &m * &Expr::coord(c).pow(powers[c.index()]);
        }
        e += &m.scale(&Rational::new(num.into(), den.into()));
    }
    e
}
