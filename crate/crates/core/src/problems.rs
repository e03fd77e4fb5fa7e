//! Benchmark objectives for multimodal optimization.
//!
//! | name             | formula                                              | box                      | dir | optima |
//! |------------------|------------------------------------------------------|--------------------------|-----|--------|
//! | `deb1`           | `sin^6(5 pi x)`                                      | `[0, 1]`                 | max | 5      |
//! | `himmelblau`     | `(x^2 + y - 11)^2 + (x + y^2 - 7)^2`                 | `[-6, 6]^2`              | min | 4      |
//! | `six_hump_camel` | `(4 - 2.1x^2 + x^4/3)x^2 + xy + (-4 + 4y^2)y^2`      | `[-1.9,1.9]x[-1.1,1.1]`  | min | 2      |
//! | `branin`         | `a(y - bx^2 + cx - r)^2 + s(1 - t)cos(x) + s`        | `[-5,10]x[0,15]`         | min | 3      |
//! | `rosenbrock`     | `(1 - x)^2 + 100(y - x^2)^2`                         | `[-2, 2]^2`              | min | 1      |
//!
//! Known optima are the global ones; they are what peak ratio and the
//! average minimum distance are measured against.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::ea::{Bounds, Direction};
use crate::error::{Error, Result};

pub type Objective = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// An objective over a box with a direction and, when known, its optima.
#[derive(Clone)]
pub struct BoundedProblem {
    name: String,
    bounds: Bounds,
    direction: Direction,
    objective: Objective,
    known_peaks: Vec<Vec<f64>>,
    optimum_value: Option<f64>,
    normalized_peak_distance: bool,
}

impl BoundedProblem {
    pub fn new(
        name: impl Into<String>,
        bounds: Bounds,
        direction: Direction,
        objective: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            bounds,
            direction,
            objective: Arc::new(objective),
            known_peaks: Vec::new(),
            optimum_value: None,
            normalized_peak_distance: false,
        }
    }

    /// Attaches the known optima. Every peak must lie in the box.
    pub fn with_known_peaks(mut self, peaks: Vec<Vec<f64>>) -> Result<Self> {
        for p in &peaks {
            self.bounds.check_dim(p)?;
            if !self.bounds.contains(p) {
                return Err(Error::config(format!("{}: peak {p:?} lies outside the bounds", self.name)));
            }
        }
        self.known_peaks = peaks;
        Ok(self)
    }

    pub fn with_optimum_value(mut self, value: f64) -> Self {
        self.optimum_value = Some(value);
        self
    }

    /// Measure distinct-peak distances in min-max normalized coordinates.
    pub fn with_normalized_peak_distance(mut self) -> Self {
        self.normalized_peak_distance = true;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.bounds.dim()
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn known_peaks(&self) -> &[Vec<f64>] {
        &self.known_peaks
    }

    pub fn optimum_value(&self) -> Option<f64> {
        self.optimum_value
    }

    pub fn normalized_peak_distance(&self) -> bool {
        self.normalized_peak_distance
    }

    /// Raw objective value. Does not touch any budget; algorithms go through
    /// [`crate::ea::evaluate`].
    pub fn objective(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }
}

impl fmt::Debug for BoundedProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundedProblem")
            .field("name", &self.name)
            .field("bounds", &self.bounds)
            .field("direction", &self.direction)
            .field("known_peaks", &self.known_peaks)
            .field("optimum_value", &self.optimum_value)
            .finish_non_exhaustive()
    }
}

pub const BENCHMARK_NAMES: [&str; 5] = ["deb1", "himmelblau", "six_hump_camel", "branin", "rosenbrock"];

/// Looks up one of the built-in benchmarks by name.
pub fn by_name(name: &str) -> Option<BoundedProblem> {
    match name {
        "deb1" => Some(deb1()),
        "himmelblau" => Some(himmelblau()),
        "six_hump_camel" => Some(six_hump_camel()),
        "branin" => Some(branin()),
        "rosenbrock" => Some(rosenbrock()),
        _ => None,
    }
}

pub fn benchmarks() -> Vec<BoundedProblem> {
    BENCHMARK_NAMES.iter().filter_map(|n| by_name(n)).collect()
}

pub fn deb1_fn(x: &[f64]) -> f64 {
    (5.0 * PI * x[0]).sin().powi(6)
}

pub fn himmelblau_fn(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (a * a + b - 11.0).powi(2) + (a + b * b - 7.0).powi(2)
}

pub fn six_hump_camel_fn(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let a2 = a * a;
    (4.0 - 2.1 * a2 + a2 * a2 / 3.0) * a2 + a * b + (-4.0 + 4.0 * b * b) * b * b
}

pub fn branin_fn(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let bb = 5.1 / (4.0 * PI * PI);
    let c = 5.0 / PI;
    let t = 1.0 / (8.0 * PI);
    (b - bb * a * a + c * a - 6.0).powi(2) + 10.0 * (1.0 - t) * a.cos() + 10.0
}

pub fn rosenbrock_fn(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (1.0 - a).powi(2) + 100.0 * (b - a * a).powi(2)
}

pub fn deb1() -> BoundedProblem {
    BoundedProblem::new("deb1", Bounds::uniform(0.0, 1.0, 1).unwrap(), Direction::Maximize, deb1_fn)
        .with_known_peaks(vec![vec![0.1], vec![0.3], vec![0.5], vec![0.7], vec![0.9]])
        .unwrap()
        .with_optimum_value(1.0)
}

pub fn himmelblau() -> BoundedProblem {
    BoundedProblem::new("himmelblau", Bounds::uniform(-6.0, 6.0, 2).unwrap(), Direction::Minimize, himmelblau_fn)
        .with_known_peaks(vec![
            vec![3.0, 2.0],
            vec![-2.805_118_086_952_745, 3.131_312_518_250_573],
            vec![-3.779_310_253_377_747, -3.283_185_991_286_169_4],
            vec![3.584_428_340_330_491_7, -1.848_126_526_964_403_6],
        ])
        .unwrap()
        .with_optimum_value(0.0)
}

pub fn six_hump_camel() -> BoundedProblem {
    let b = Bounds::new(vec![(-1.9, 1.9), (-1.1, 1.1)]).unwrap();
    BoundedProblem::new("six_hump_camel", b, Direction::Minimize, six_hump_camel_fn)
        .with_known_peaks(vec![
            vec![0.089_842_013_100_318_06, -0.712_656_403_020_739_6],
            vec![-0.089_842_013_100_318_06, 0.712_656_403_020_739_6],
        ])
        .unwrap()
        .with_optimum_value(-1.031_628_453_489_877_3)
}

pub fn branin() -> BoundedProblem {
    let b = Bounds::new(vec![(-5.0, 10.0), (0.0, 15.0)]).unwrap();
    // cos(x) = -1 at x = -pi, pi, 3pi with y = b x^2 - c x + 6 making the
    // squared term vanish.
    BoundedProblem::new("branin", b, Direction::Minimize, branin_fn)
        .with_known_peaks(vec![vec![-PI, 12.275], vec![PI, 2.275], vec![3.0 * PI, 2.475]])
        .unwrap()
        .with_optimum_value(5.0 / (4.0 * PI))
}

pub fn rosenbrock() -> BoundedProblem {
    BoundedProblem::new("rosenbrock", Bounds::uniform(-2.0, 2.0, 2).unwrap(), Direction::Minimize, rosenbrock_fn)
        .with_known_peaks(vec![vec![1.0, 1.0]])
        .unwrap()
        .with_optimum_value(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_values() {
        assert_eq!(deb1_fn(&[0.0]), 0.0);
        assert!((deb1_fn(&[0.1]) - 1.0).abs() < 1e-15);
        assert_eq!(himmelblau_fn(&[3.0, 2.0]), 0.0);
        assert_eq!(himmelblau_fn(&[0.0, 0.0]), 170.0);
        assert_eq!(rosenbrock_fn(&[1.0, 1.0]), 0.0);
        let camel = six_hump_camel_fn(&[0.0898, -0.7126]);
        assert!((camel + 1.0316).abs() < 1e-4, "{camel}");
    }

    #[test]
    fn peak_counts_and_values() {
        assert_eq!(deb1().known_peaks().len(), 5);
        assert_eq!(himmelblau().known_peaks().len(), 4);
        assert_eq!(six_hump_camel().known_peaks().len(), 2);
        assert_eq!(branin().known_peaks().len(), 3);
        assert_eq!(rosenbrock().known_peaks().len(), 1);
        for p in benchmarks() {
            let opt = p.optimum_value().unwrap();
            for peak in p.known_peaks() {
                let f = p.objective(peak);
                assert!((f - opt).abs() < 1e-12, "{}: f({peak:?}) = {f}, optimum {opt}", p.name());
            }
        }
    }

    #[test]
    fn peak_outside_bounds_rejected() {
        let p = BoundedProblem::new("x", Bounds::uniform(0.0, 1.0, 1).unwrap(), Direction::Minimize, |x| x[0]);
        assert!(p.with_known_peaks(vec![vec![2.0]]).is_err());
    }

    #[test]
    fn lookup_by_name() {
        for n in BENCHMARK_NAMES {
            assert_eq!(by_name(n).unwrap().name(), n);
        }
        assert!(by_name("foo").is_none());
    }
}
