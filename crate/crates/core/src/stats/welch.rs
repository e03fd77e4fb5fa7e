use statrs::distribution::{ContinuousCDF, StudentsT};

use super::{check_sample, TestOutcome};
use crate::error::{Error, Result};

fn mean_var(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// Welch's unequal-variance t test with Welch-Satterthwaite degrees of
/// freedom.
///
/// When both samples have zero variance the p-value is 1 for equal means and
/// 0 otherwise.
pub fn welch_t(a: &[f64], b: &[f64]) -> Result<TestOutcome> {
    check_sample(a)?;
    check_sample(b)?;
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::InvalidSample("t test needs at least two values per sample".into()));
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (ma, va) = mean_var(a);
    let (mb, vb) = mean_var(b);
    let (sa, sb) = (va / na, vb / nb);
    let se2 = sa + sb;
    if se2 == 0.0 {
        return Ok(if ma == mb {
            TestOutcome { statistic: 0.0, p_value: 1.0 }
        } else {
            TestOutcome { statistic: (ma - mb).signum() * f64::INFINITY, p_value: 0.0 }
        });
    }
    let t = (ma - mb) / se2.sqrt();
    let df = se2 * se2 / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
    let dist = StudentsT::new(0.0, 1.0, df).map_err(|e| Error::InvalidSample(e.to_string()))?;
    let p = (2.0 * dist.sf(t.abs())).min(1.0);
    Ok(TestOutcome { statistic: t, p_value: p })
}
