use serde::{Deserialize, Serialize};

use super::{SampleSet, TestKind};
use crate::error::{Error, Result};

/// Pairwise significance grid; both axes share `labels` order. A cell is
/// `true` when the pair differs at level `alpha`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignificanceMatrix {
    pub labels: Vec<String>,
    pub cells: Vec<Vec<bool>>,
    /// Diagonal entries are 1.
    pub p_values: Vec<Vec<f64>>,
    pub alpha: f64,
    pub test: TestKind,
    pub metric: String,
}

impl SignificanceMatrix {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[i][j]
    }
}

pub fn pairwise_matrix(
    samples: &[SampleSet],
    test: TestKind,
    alpha: f64,
    metric: impl Into<String>,
) -> Result<SignificanceMatrix> {
    if samples.len() < 2 {
        return Err(Error::InvalidSample("pairwise comparison needs at least two sample sets".into()));
    }
    let k = samples.len();
    let mut p_values = vec![vec![1.0; k]; k];
    let mut cells = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let p = test.run(&samples[i].values, &samples[j].values)?.p_value;
            p_values[i][j] = p;
            p_values[j][i] = p;
            cells[i][j] = p < alpha;
            cells[j][i] = p < alpha;
        }
    }
    Ok(SignificanceMatrix {
        labels: samples.iter().map(|s| s.label.clone()).collect(),
        cells,
        p_values,
        alpha,
        test,
        metric: metric.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_sets_are_not_significant() {
        let a = SampleSet::new("a", vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = SampleSet::new("b", vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        for t in TestKind::ALL {
            let m = pairwise_matrix(&[a.clone(), b.clone()], t, 0.05, "x").unwrap();
            assert!(m.cells.iter().flatten().all(|c| !c));
        }
    }

    #[test]
    fn separated_sets_at_fifty_runs() {
        let a = SampleSet::new("a", (0..50).map(f64::from).collect()).unwrap();
        let b = SampleSet::new("b", (100..150).map(f64::from).collect()).unwrap();
        let c = SampleSet::new("c", (0..50).map(f64::from).collect()).unwrap();
        let m = pairwise_matrix(&[a, b, c], TestKind::MannWhitney, 0.05, "peaks").unwrap();
        assert!(m.get(0, 1) && m.get(1, 0) && m.get(1, 2));
        assert!(!m.get(0, 2));
        assert!((0..3).all(|i| !m.get(i, i)));
        assert!(m.p_values[0][1] < 1e-15);
    }

    #[test]
    fn needs_two_sets() {
        let a = SampleSet::new("a", vec![1.0]).unwrap();
        assert!(pairwise_matrix(&[a], TestKind::KolmogorovSmirnov, 0.05, "x").is_err());
    }
}
