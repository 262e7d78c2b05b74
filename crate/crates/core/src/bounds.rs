//! The counting lower bound for universal point sets of stacked
//! triangulations: `2^(n-4) (n-3)!` labeled stacked triangulations must fit
//! into the `m! / (m-n)!` injections of `n` vertices into `m` points.

use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("n = {0} is below 4")]
    OutOfRange(usize),
}

/// `2^(n-4) (n-3)!`, the number of labeled stacked triangulations on `n`
/// vertices.
pub fn labeled_stacked_count(n: usize) -> Result<BigUint, BoundsError> {
    if n < 4 {
        return Err(BoundsError::OutOfRange(n));
    }
    let fact: BigUint = (2..=n as u64 - 3).map(BigUint::from).product();
    Ok(fact << (n - 4))
}

/// `m! / (m-n)!`.
fn falling(m: usize, n: usize) -> BigUint {
    (m - n + 1..=m).map(|k| BigUint::from(k as u64)).product()
}

/// Smallest `m >= n` with `|T_n| <= m! / (m-n)!`.
pub fn min_universal_size_counting(n: usize) -> Result<usize, BoundsError> {
    let t = labeled_stacked_count(n)?;
    let mut m = n;
    let mut f = falling(m, n);
    while f < t {
        m += 1;
        f = f * BigUint::from(m as u64) / BigUint::from((m - n) as u64);
    }
    Ok(m)
}

/// `min_universal_size_counting(n) / n`.
pub fn asymptotic_ratio(n: usize) -> Result<Ratio<u64>, BoundsError> {
    let m = min_universal_size_counting(n)?;
    Ok(Ratio::new(m as u64, n as u64))
}

/// `alpha ln alpha + (1 - alpha) ln(alpha - 1) - ln 2`; increasing on
/// `(1, 2]`.
pub fn alpha_residual(a: f64) -> f64 {
    a * a.ln() + (1.0 - a) * (a - 1.0).ln() - 2f64.ln()
}

/// Root of `alpha^alpha (alpha - 1)^(1 - alpha) = 2` in `(1, 2]`, by
/// bisection until the bracket is narrower than `tolerance`.
pub fn solve_alpha(tolerance: f64) -> f64 {
    assert!(tolerance > 0.0, "tolerance must be positive");
    let (mut lo, mut hi) = (1.0 + 1e-12, 2.0);
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        if alpha_residual(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub labeled_count: BigUint,
    pub min_m: usize,
    pub ratio: Ratio<u64>,
    pub alpha: f64,
    /// `alpha * n`, the leading term of the asymptotic bound.
    pub alpha_n: f64,
}

impl BoundReport {
    pub fn new(n: usize, alpha_tolerance: f64) -> Result<Self, BoundsError> {
        let alpha = solve_alpha(alpha_tolerance);
        Ok(BoundReport {
            n,
            labeled_count: labeled_stacked_count(n)?,
            min_m: min_universal_size_counting(n)?,
            ratio: asymptotic_ratio(n)?,
            alpha,
            alpha_n: alpha * n as f64,
        })
    }

    /// `key=value` lines.
    pub fn to_key_values(&self) -> String {
        format!(
            "n={}\nlabeled_count={}\nmin_m={}\nratio={}\nratio_decimal={:.6}\nalpha={:.9}\nalpha_n={:.6}\n",
            self.n,
            self.labeled_count,
            self.min_m,
            self.ratio,
            self.ratio.to_f64().unwrap_or(f64::NAN),
            self.alpha,
            self.alpha_n
        )
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n                              {}", self.n)?;
        writeln!(f, "labeled stacked triangulations {}", self.labeled_count)?;
        writeln!(f, "counting bound on points       {}", self.min_m)?;
        writeln!(f, "counting bound / n             {} ({:.6})", self.ratio, self.ratio.to_f64().unwrap_or(f64::NAN))?;
        writeln!(f, "alpha                          {:.9}", self.alpha)?;
        write!(f, "alpha * n (asymptotic term)    {:.6}", self.alpha_n)
    }
}

/// Whether `m` points leave room for all labeled stacked triangulations on
/// `n` vertices.
pub fn counting_allows(n: usize, m: usize) -> Result<bool, BoundsError> {
    Ok(m >= n && falling(m, n) >= labeled_stacked_count(n)?)
}
