//! Closed forms for isotropic states `[(1-p)/d²] I + p |Ψ⟩⟨Ψ|`.
//!
//! Every conditional state has eigenvalues `(1-p)/d` (`d-1` times) and
//! `p + (1-p)/d`, whatever the measurement, so no search is needed.

use crate::error::{Error, Result};
use crate::linalg::LogBase;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicCorrelations {
    pub classical: f64,
    pub discord: f64,
    /// `classical + discord`.
    pub mutual_information: f64,
    pub s_ab: f64,
    /// `S(ρ_A) = S(ρ_B) = log d`.
    pub s_marginal: f64,
}

/// `x · log(y)` with `0 · log 0 := 0`.
fn x_log_y(x: f64, y: f64, base: LogBase) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * base.log(y)
    }
}

pub fn isotropic_closed_form(d: usize, p: f64, base: LogBase) -> Result<IsotropicCorrelations> {
    if d < 2 {
        return Err(Error::DomainError { what: "isotropic dimension", value: d as f64 });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::DomainError { what: "mixing parameter p", value: p });
    }
    let df = d as f64;
    let q = 1.0 - p;

    let classical = x_log_y((df - 1.0) * q / df, q, base) + x_log_y(p + q / df, df * p + q, base);
    let discord = x_log_y((df - 1.0) * q / (df * df), q, base)
        + x_log_y((df * df * p + q) / (df * df), df * df * p + q, base)
        - x_log_y((df * p + q) / df, df * p + q, base);

    let top = p + q / (df * df);
    let rest = q / (df * df);
    let s_ab = (-x_log_y(top, top, base) - (df * df - 1.0) * x_log_y(rest, rest, base)).max(0.0);

    Ok(IsotropicCorrelations {
        classical,
        discord,
        mutual_information: classical + discord,
        s_ab,
        s_marginal: base.log(df),
    })
}

/// `|Q / (p log_d d) - 1|` with logarithms in base `d`.
///
/// Only meaningful when `p·d ≫ 1 - p`; outside that regime (taken as
/// `p·d < 10 (1 - p)`) or for invalid input this returns `f64::INFINITY`.
pub fn isotropic_large_d_check(d: usize, p: f64) -> f64 {
    if d < 2 || !(p > 0.0 && p <= 1.0) || p * (d as f64) < 10.0 * (1.0 - p) {
        return f64::INFINITY;
    }
    let base = match LogBase::dimension(d) {
        Ok(b) => b,
        Err(_) => return f64::INFINITY,
    };
    match isotropic_closed_form(d, p, base) {
        Ok(c) => (c.discord / p - 1.0).abs(),
        Err(_) => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b3() -> LogBase {
        LogBase::dimension(3).unwrap()
    }

    #[test]
    fn pure_bell_limit() {
        let c = isotropic_closed_form(3, 1.0, b3()).unwrap();
        assert!((c.classical - 1.0).abs() < 1e-15);
        assert!((c.discord - 1.0).abs() < 1e-15);
        assert!(c.s_ab.abs() < 1e-15);
    }

    #[test]
    fn maximally_mixed_limit() {
        let c = isotropic_closed_form(3, 0.0, b3()).unwrap();
        assert!(c.classical.abs() < 1e-15 && c.discord.abs() < 1e-15);
        assert!((c.s_ab - 2.0).abs() < 1e-14);
    }

    #[test]
    fn three_quarters_row() {
        let c = isotropic_closed_form(3, 0.75, b3()).unwrap();
        assert!((c.classical - 0.485).abs() <= 0.005);
        assert!((c.discord - 0.612).abs() <= 0.005);
    }

    #[test]
    fn rejects_out_of_range_p() {
        assert!(isotropic_closed_form(3, 1.5, b3()).is_err());
        assert!(isotropic_closed_form(3, -0.1, b3()).is_err());
    }

    #[test]
    fn large_d_limit() {
        assert!(isotropic_large_d_check(100, 0.5) < 0.05);
        assert!(isotropic_large_d_check(1000, 0.5) < 0.01);
        let guard = isotropic_large_d_check(3, 0.01);
        assert!(guard.is_infinite() && !guard.is_nan());
    }
}
