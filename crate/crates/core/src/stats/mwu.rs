use statrs::function::erf::erfc;

use super::{check_sample, TestOutcome};
use crate::error::Result;

/// Largest `n * m` handled by exact enumeration.
pub const EXACT_MAX_PRODUCT: usize = 400;

/// Midranks of `values` (1-based, ties share the average rank).
pub fn midranks(values: &[f64]) -> Vec<f64> {
    doubled_ranks(values).into_iter().map(|r| r as f64 / 2.0).collect()
}

/// Twice the midranks, which are always integers.
fn doubled_ranks(values: &[f64]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // positions i+1 ..= j share (i + 1 + j) / 2
        for &k in &order[i..j] {
            ranks[k] = (i + 1 + j) as u64;
        }
        i = j;
    }
    ranks
}

fn pooled(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().chain(b).copied().collect()
}

/// `U_a = R_a - n(n+1)/2` from rank sums.
fn u_statistic(doubled: &[u64], n: usize) -> f64 {
    let twice_rank_sum: u64 = doubled[..n].iter().sum();
    (twice_rank_sum as f64 - (n * (n + 1)) as f64) / 2.0
}

/// Mann-Whitney U test. Exact when `n * m <= EXACT_MAX_PRODUCT`, otherwise a
/// tie-corrected normal approximation with continuity correction. The
/// statistic is `U` of the first sample.
pub fn mann_whitney_u(a: &[f64], b: &[f64]) -> Result<TestOutcome> {
    if a.len() * b.len() <= EXACT_MAX_PRODUCT {
        mann_whitney_u_exact(a, b)
    } else {
        mann_whitney_u_asymptotic(a, b)
    }
}

/// Exact permutation p-value, with ties, by counting rank-sum subsets.
pub fn mann_whitney_u_exact(a: &[f64], b: &[f64]) -> Result<TestOutcome> {
    check_sample(a)?;
    check_sample(b)?;
    let (n, m) = (a.len(), b.len());
    let doubled = doubled_ranks(&pooled(a, b));
    let u = u_statistic(&doubled, n);

    // Count subsets of the smaller group's size by doubled rank sum. The
    // two-sided p-value is symmetric in which group is enumerated.
    let k = n.min(m);
    let total_sum: u64 = doubled.iter().sum();
    let max_sum = total_sum as usize;
    let mut ways = vec![vec![0f64; max_sum + 1]; k + 1];
    ways[0][0] = 1.0;
    let mut reach = 0usize;
    for &r in &doubled {
        let r = r as usize;
        reach += r;
        for c in (1..=k).rev() {
            let (lower, upper) = ways.split_at_mut(c);
            let (prev, cur) = (&lower[c - 1], &mut upper[0]);
            for s in (r..=reach.min(max_sum)).rev() {
                if prev[s - r] != 0.0 {
                    cur[s] += prev[s - r];
                }
            }
        }
    }

    // deviation |2U - nm| in doubled units, for the enumerated group size k
    let nm = (n * m) as i64;
    let offset = (k * (k + 1)) as i64;
    let deviation = |twice_sum: i64| ((twice_sum - offset) - nm).abs();
    let observed = (2.0 * u - nm as f64).abs().round() as i64;
    let (mut hit, mut total) = (0f64, 0f64);
    for (s, &w) in ways[k].iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        total += w;
        if deviation(s as i64) >= observed {
            hit += w;
        }
    }
    Ok(TestOutcome { statistic: u, p_value: (hit / total).min(1.0) })
}

/// Normal approximation with tie-corrected variance and continuity
/// correction.
pub fn mann_whitney_u_asymptotic(a: &[f64], b: &[f64]) -> Result<TestOutcome> {
    check_sample(a)?;
    check_sample(b)?;
    let (n, m) = (a.len() as f64, b.len() as f64);
    let all = pooled(a, b);
    let doubled = doubled_ranks(&all);
    let u = u_statistic(&doubled, a.len());

    let mut sorted = all;
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    for group in sorted.chunk_by(|x, y| x == y) {
        let t = group.len() as f64;
        tie_term += t * t * t - t;
    }
    let big_n = n + m;
    let variance = n * m / 12.0 * ((big_n + 1.0) - tie_term / (big_n * (big_n - 1.0)));
    if variance <= 0.0 {
        return Ok(TestOutcome { statistic: u, p_value: 1.0 });
    }
    let shift = ((u - n * m / 2.0).abs() - 0.5).max(0.0);
    let z = shift / variance.sqrt();
    let p = erfc(z / std::f64::consts::SQRT_2).min(1.0);
    Ok(TestOutcome { statistic: u, p_value: p })
}
