//! Minimal-empirical-risk learning over atomic universes, empirical sample
//! complexity, and uniform-convergence deviations.

mod estimate;
mod gc;

pub use estimate::{
    estimate_sample_complexity, ComplexityEstimate, EstimateConfig, EstimateStatus, LearningProblem, Probe,
};
pub use gc::{gc_deviation, GcConfig, GcMode, GcStats};

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::concepts::{AtomLabeling, Concept};
use crate::error::{arg, Error, Result};
use crate::measures::AtomicMeasure;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledSample {
    points: Vec<f64>,
    labels: Vec<bool>,
}

impl LabeledSample {
    pub fn new(points: Vec<f64>, labels: Vec<bool>) -> Result<Self> {
        if points.len() != labels.len() {
            return Err(arg("points and labels differ in length"));
        }
        Ok(LabeledSample { points, labels })
    }

    /// Labels `points` with `target`.
    pub fn labeled_by(points: Vec<f64>, target: &Concept) -> Self {
        let labels = points.iter().map(|&x| target.member(x)).collect();
        LabeledSample { points, labels }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A labeling of every atom of the universe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub labeling: AtomLabeling,
}

impl Hypothesis {
    pub fn to_concept(&self) -> Concept {
        Concept::AtomLabels(self.labeling.clone())
    }

    /// Fraction of sample points labeled differently by the hypothesis.
    pub fn empirical_risk(&self, sample: &LabeledSample) -> f64 {
        if sample.is_empty() {
            return 0.0;
        }
        let wrong = sample
            .points
            .iter()
            .zip(&sample.labels)
            .filter(|(&x, &l)| self.labeling.label(x) != l)
            .count();
        wrong as f64 / sample.len() as f64
    }
}

/// Per-atom majority vote; ties and unseen atoms get label 0.
pub fn erm_learn(sample: &LabeledSample, universe: &AtomicMeasure) -> Result<Hypothesis> {
    let mut votes = alloc::vec![0i64; universe.len()];
    for (&x, &l) in sample.points.iter().zip(&sample.labels) {
        let i = universe.index_of(x).ok_or(Error::OffAtom(x))?;
        votes[i] += if l { 1 } else { -1 };
    }
    let bits = votes.iter().map(|&v| v > 0).collect();
    let labeling = AtomLabeling::new(universe.locations(), bits, false)?;
    Ok(Hypothesis { labeling })
}

/// Mass of the atoms on which `h` and `target` disagree.
pub fn true_error(h: &Hypothesis, target: &Concept, mu: &AtomicMeasure) -> f64 {
    mu.atoms()
        .iter()
        .filter(|a| h.labeling.label(a.location) != target.member(a.location))
        .map(|a| a.mass)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn five() -> AtomicMeasure {
        AtomicMeasure::uniform_on(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap()
    }

    #[test]
    fn empty_sample_gives_zeros() {
        let h = erm_learn(&LabeledSample::new(vec![], vec![]).unwrap(), &five()).unwrap();
        assert!(h.labeling.bits().iter().all(|b| !b));
    }

    #[test]
    fn majority_vote() {
        let u = AtomicMeasure::uniform_on(&[0.5, 1.5]).unwrap();
        let s = LabeledSample::new(vec![0.5, 0.5, 1.5, 0.5], vec![true, true, false, true]).unwrap();
        let h = erm_learn(&s, &u).unwrap();
        assert_eq!(h.labeling.bits(), &[true, false]);
        let tie = LabeledSample::new(vec![0.5, 0.5], vec![true, false]).unwrap();
        assert_eq!(erm_learn(&tie, &u).unwrap().labeling.bits(), &[false, false]);
    }

    #[test]
    fn off_atom_is_rejected() {
        let s = LabeledSample::new(vec![2.5], vec![true]).unwrap();
        assert_eq!(erm_learn(&s, &five()), Err(Error::OffAtom(2.5)));
    }

    #[test]
    fn error_examples() {
        let u = five();
        let ones = Concept::AtomLabels(AtomLabeling::new(u.locations(), vec![true; 5], false).unwrap());
        let zeros = erm_learn(&LabeledSample::new(vec![], vec![]).unwrap(), &u).unwrap();
        assert_eq!(true_error(&zeros, &ones, &u), 1.0);
        let same = Hypothesis { labeling: AtomLabeling::new(u.locations(), vec![true; 5], false).unwrap() };
        assert_eq!(true_error(&same, &ones, &u), 0.0);

        let mut pairs = vec![(0.0, 0.8)];
        pairs.extend((1..=20).map(|i| (i as f64, 0.16 / 20.0)));
        pairs.push((100.0, 0.04));
        let mu = AtomicMeasure::from_pairs(&pairs).unwrap();
        let target = Concept::AtomLabels(AtomLabeling::new(vec![3.0], vec![true], false).unwrap());
        let h = erm_learn(&LabeledSample::new(vec![], vec![]).unwrap(), &mu).unwrap();
        assert_eq!(true_error(&h, &target, &mu), 0.16 / 20.0);
    }

    #[test]
    fn consistent_sample_error_is_unseen_mass() {
        use crate::stream;
        use rand::Rng;
        let u = AtomicMeasure::from_pairs(&[(1.0, 0.5), (2.0, 0.2), (3.0, 0.1), (4.0, 0.1), (5.0, 0.1)]).unwrap();
        let mut rng = stream::rng(4);
        for _ in 0..50 {
            let bits: Vec<bool> = (0..5).map(|_| rng.random()).collect();
            let target = Concept::AtomLabels(AtomLabeling::new(u.locations(), bits.clone(), false).unwrap());
            let idx = u.sample_indices(&mut rng, 200);
            let points: Vec<f64> = idx.iter().map(|&i| u.atoms()[i].location).collect();
            let sample = LabeledSample::labeled_by(points, &target);
            let h = erm_learn(&sample, &u).unwrap();
            assert_eq!(h.empirical_risk(&sample), 0.0);
            let unseen: f64 = (0..5).filter(|i| !idx.contains(i)).map(|i| u.atoms()[i].mass).sum();
            assert!(true_error(&h, &target, &u) <= unseen + 1e-15);
        }
    }
}
