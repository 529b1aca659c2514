use super::CensusResult;
use crate::arrangement::FaceType;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub face_type: FaceType,
    /// Faces of this type per arc of its starting color.
    pub density: f64,
}

impl Prediction {
    /// The census densities themselves, used as a null comparison.
    pub fn from_census(c: &CensusResult) -> Vec<Prediction> {
        c.types.iter().map(|t| Prediction { face_type: t.face_type.clone(), density: c.type_density(&t.face_type).0 }).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareCell {
    pub face_type: FaceType,
    pub observed: u64,
    pub expected: f64,
    pub empirical: f64,
    pub predicted: f64,
    pub std_error: f64,
    /// `None` when the standard error is zero and the values differ.
    pub z: Option<f64>,
    pub zero_variance: bool,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub threshold: f64,
    pub min_expected: f64,
    pub cells: Vec<CompareCell>,
    /// Cells with expected count at least `min_expected`.
    pub eligible: usize,
    pub eligible_within: usize,
}

impl CompareReport {
    pub fn eligible_fraction(&self) -> f64 {
        if self.eligible == 0 {
            1.0
        } else {
            self.eligible_within as f64 / self.eligible as f64
        }
    }

    pub fn flagged(&self) -> impl Iterator<Item = &CompareCell> {
        self.cells.iter().filter(|c| c.flagged)
    }
}

/// z-scores of the census densities against `predictions`, flagging
/// `|z| > 3`.
pub fn compare(census: &CensusResult, predictions: &[Prediction]) -> CompareReport {
    compare_with(census, predictions, 3.0, 25.0)
}

pub fn compare_with(census: &CensusResult, predictions: &[Prediction], threshold: f64, min_expected: f64) -> CompareReport {
    let mut cells = Vec::with_capacity(predictions.len());
    let (mut eligible, mut eligible_within) = (0, 0);
    for p in predictions {
        let (empirical, se) = census.type_density(&p.face_type);
        let observed = census.type_cell(&p.face_type).map_or(0, |c| c.count);
        let expected = p.density * census.arcs.get(p.face_type.color) as f64;
        let diff = empirical - p.density;
        let zero_variance = se == 0.0;
        let z = if zero_variance { (diff == 0.0).then_some(0.0) } else { Some(diff / se) };
        let flagged = z.map_or(true, |z| z.abs() > threshold);
        if expected >= min_expected {
            eligible += 1;
            eligible_within += !flagged as usize;
        }
        cells.push(CompareCell { face_type: p.face_type.clone(), observed, expected, empirical, predicted: p.density, std_error: se, z, zero_variance, flagged });
    }
    CompareReport { threshold, min_expected, cells, eligible, eligible_within }
}
