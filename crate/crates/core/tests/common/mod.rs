//! Brute-force reference implementations used as test oracles.
#![allow(dead_code)]

use niching::ea::{Direction, Individual};

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..a.len() {
        s += (a[i] - b[i]) * (a[i] - b[i]);
    }
    s.sqrt()
}

fn better(dir: Direction, a: f64, b: f64) -> bool {
    match dir {
        Direction::Minimize => a < b,
        Direction::Maximize => a > b,
    }
}

/// Index the child would replace among `candidates`, if any.
pub fn crowding_oracle(
    child: &Individual,
    members: &[Individual],
    candidates: &[usize],
    dir: Direction,
) -> Option<usize> {
    let min = candidates.iter().map(|&c| dist(&child.genome, &members[c].genome)).fold(f64::INFINITY, f64::min);
    let nearest = *candidates.iter().filter(|&&c| dist(&child.genome, &members[c].genome) == min).min()?;
    better(dir, child.fitness(), members[nearest].fitness()).then_some(nearest)
}

/// Seeds by repeated selection of the best unvisited member.
pub fn species_seeds_oracle(members: &[Individual], sigma: f64, dir: Direction) -> Vec<usize> {
    let mut visited = vec![false; members.len()];
    let mut seeds: Vec<usize> = Vec::new();
    for _ in 0..members.len() {
        let mut pick: Option<usize> = None;
        for i in 0..members.len() {
            if visited[i] {
                continue;
            }
            match pick {
                Some(p) if !better(dir, members[i].fitness(), members[p].fitness()) => {}
                _ => pick = Some(i),
            }
        }
        let i = pick.unwrap();
        visited[i] = true;
        if seeds.iter().all(|&s| dist(&members[s].genome, &members[i].genome) >= sigma / 2.0) {
            seeds.push(i);
        }
    }
    seeds
}

pub fn avg_min_distance_oracle(members: &[Individual], peaks: &[Vec<f64>]) -> f64 {
    let mut total = 0.0;
    for p in peaks {
        let mut best = f64::INFINITY;
        for m in members {
            let d = dist(p, &m.genome);
            if d < best {
                best = d;
            }
        }
        total += best;
    }
    total / peaks.len() as f64
}

pub fn distinct_peaks_oracle(members: &[Individual], threshold: f64, radius: f64, dir: Direction) -> usize {
    let mut counted: Vec<usize> = Vec::new();
    for (i, m) in members.iter().enumerate() {
        if better(dir, m.fitness(), threshold) && counted.iter().all(|&c| dist(&members[c].genome, &m.genome) >= radius)
        {
            counted.push(i);
        }
    }
    counted.len()
}

/// `U` of `a` from pairwise comparisons.
pub fn u_pairwise(a: &[f64], b: &[f64]) -> f64 {
    let mut u = 0.0;
    for x in a {
        for y in b {
            if x > y {
                u += 1.0;
            } else if x == y {
                u += 0.5;
            }
        }
    }
    u
}

/// Exact two-sided permutation p-value of `U` by enumerating every split of
/// the pooled sample.
pub fn mwu_exact_oracle(a: &[f64], b: &[f64]) -> (f64, f64) {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (n, total) = (a.len(), pooled.len());
    let centre = (a.len() * b.len()) as f64 / 2.0;
    let u_obs = u_pairwise(a, b);
    let observed = (u_obs - centre).abs();
    let (mut hit, mut count) = (0u64, 0u64);
    for mask in 0u32..(1 << total) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let (mut x, mut y) = (Vec::new(), Vec::new());
        for (i, &v) in pooled.iter().enumerate() {
            if mask >> i & 1 == 1 {
                x.push(v);
            } else {
                y.push(v);
            }
        }
        count += 1;
        if (u_pairwise(&x, &y) - centre).abs() >= observed - 1e-9 {
            hit += 1;
        }
    }
    (u_obs, hit as f64 / count as f64)
}

/// `max |F_a(x) - F_b(x)|` evaluated at every pooled point.
pub fn ks_statistic_oracle(a: &[f64], b: &[f64]) -> f64 {
    let cdf = |s: &[f64], x: f64| s.iter().filter(|&&v| v <= x).count() as f64 / s.len() as f64;
    a.iter().chain(b).map(|&x| (cdf(a, x) - cdf(b, x)).abs()).fold(0.0, f64::max)
}

/// Kolmogorov survival: alternating series above 0.6, theta series below.
pub fn kolmogorov_survival_oracle(lambda: f64) -> f64 {
    use std::f64::consts::PI;
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda >= 0.6 {
        let mut s = 0.0;
        for k in (1..=200).rev() {
            let kf = k as f64;
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            s += sign * (-2.0 * kf * kf * lambda * lambda).exp();
        }
        (2.0 * s).clamp(0.0, 1.0)
    } else {
        let mut s = 0.0;
        for k in (1..=60).rev() {
            let odd = (2 * k - 1) as f64;
            s += (-odd * odd * PI * PI / (8.0 * lambda * lambda)).exp();
        }
        (1.0 - (2.0 * PI).sqrt() / lambda * s).clamp(0.0, 1.0)
    }
}

pub fn ks_oracle(a: &[f64], b: &[f64]) -> (f64, f64) {
    let d = ks_statistic_oracle(a, b);
    let (n, m) = (a.len() as f64, b.len() as f64);
    (d, kolmogorov_survival_oracle((n * m / (n + m)).sqrt() * d))
}

/// Compass search from `x0`, clamped to the box, until the step falls below
/// `tol`. Returns a point no axis move can improve at that resolution.
pub fn compass_search(
    f: &dyn Fn(&[f64]) -> f64,
    x0: &[f64],
    lo: &[f64],
    hi: &[f64],
    dir: Direction,
    tol: f64,
) -> Vec<f64> {
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut step: Vec<f64> = lo.iter().zip(hi).map(|(l, h)| (h - l) / 20.0).collect();
    while step.iter().cloned().fold(0.0, f64::max) > tol {
        let mut moved = false;
        for k in 0..x.len() {
            for sign in [1.0, -1.0] {
                let mut y = x.clone();
                y[k] = (y[k] + sign * step[k]).clamp(lo[k], hi[k]);
                let fy = f(&y);
                if better(dir, fy, fx) {
                    x = y;
                    fx = fy;
                    moved = true;
                }
            }
        }
        if !moved {
            step.iter_mut().for_each(|s| *s /= 2.0);
        }
    }
    x
}

/// Greedy clustering: representatives at least `radius` apart.
pub fn cluster(points: &[Vec<f64>], radius: f64) -> Vec<Vec<f64>> {
    let mut reps: Vec<Vec<f64>> = Vec::new();
    for p in points {
        if reps.iter().all(|r| dist(r, p) >= radius) {
            reps.push(p.clone());
        }
    }
    reps
}
