use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::concepts::{l1_distance, Concept};
use crate::error::{arg, Error, Result};
use crate::exec::{Sequential, TrialRunner};
use crate::measures::Measure;

/// A finite pseudometric space indexed `0..len`.
pub trait Metric: Sync {
    fn len(&self) -> usize;
    fn distance(&self, i: usize, j: usize) -> f64;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Concepts with their pairwise `L¹(μ)` distances.
#[derive(Debug, Clone)]
pub struct FiniteFamily {
    concepts: Vec<Concept>,
    matrix: Vec<f64>,
}

impl FiniteFamily {
    pub fn new(concepts: Vec<Concept>, measure: &Measure) -> Result<Self> {
        Self::with_runner(concepts, measure, &Sequential)
    }

    /// Distance rows are computed through `runner`.
    pub fn with_runner<R: TrialRunner>(concepts: Vec<Concept>, measure: &Measure, runner: &R) -> Result<Self> {
        let n = concepts.len();
        let rows = runner.map(n as u64, |i| {
            let i = i as usize;
            (0..n)
                .map(|j| if j <= i { 0.0 } else { l1_distance(&concepts[i], &concepts[j], measure) })
                .collect::<Vec<f64>>()
        });
        let mut matrix = alloc::vec![0.0; n * n];
        for (i, row) in rows.into_iter().enumerate() {
            for j in i + 1..n {
                matrix[i * n + j] = row[j];
                matrix[j * n + i] = row[j];
            }
        }
        Self::from_matrix(concepts, matrix)
    }

    pub fn from_matrix(concepts: Vec<Concept>, matrix: Vec<f64>) -> Result<Self> {
        let n = concepts.len();
        if n == 0 {
            return Err(arg("family must be non-empty"));
        }
        if matrix.len() != n * n {
            return Err(arg("distance matrix has the wrong size"));
        }
        for i in 0..n {
            if matrix[i * n + i] != 0.0 {
                return Err(arg("distance matrix needs a zero diagonal"));
            }
            for j in 0..i {
                if matrix[i * n + j] != matrix[j * n + i] || !(matrix[i * n + j] >= 0.0) {
                    return Err(arg("distance matrix must be symmetric and non-negative"));
                }
            }
        }
        Ok(FiniteFamily { concepts, matrix })
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }
}

impl Metric for FiniteFamily {
    fn len(&self) -> usize {
        self.concepts.len()
    }

    fn distance(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.concepts.len() + j]
    }
}

/// Labelings of up to 64 atoms as bit masks; the distance between two
/// labelings is the total mass of the atoms where they differ.
#[derive(Debug, Clone)]
pub struct MaskFamily {
    masses: Vec<f64>,
    members: Option<Vec<u64>>,
}

impl MaskFamily {
    /// All `2^k` labelings of atoms with the given masses (`k ≤ 24`).
    pub fn all_labelings(masses: &[f64]) -> Result<Self> {
        if masses.len() > 24 {
            return Err(arg("at most 24 atoms can be enumerated"));
        }
        Ok(MaskFamily { masses: masses.to_vec(), members: None })
    }

    /// An explicit list of labelings.
    pub fn from_masks(masses: &[f64], members: Vec<u64>) -> Result<Self> {
        if masses.len() > 64 || members.is_empty() {
            return Err(arg("need at most 64 atoms and at least one member"));
        }
        Ok(MaskFamily { masses: masses.to_vec(), members: Some(members) })
    }

    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        let members = indices.iter().map(|&i| self.mask(i)).collect();
        Self::from_masks(&self.masses, members)
    }

    pub fn mask(&self, i: usize) -> u64 {
        match &self.members {
            Some(m) => m[i],
            None => i as u64,
        }
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn mask_distance(&self, a: u64, b: u64) -> f64 {
        let mut diff = a ^ b;
        let mut d = 0.0;
        while diff != 0 {
            let bit = diff.trailing_zeros() as usize;
            d += self.masses[bit];
            diff &= diff - 1;
        }
        d
    }
}

impl Metric for MaskFamily {
    fn len(&self) -> usize {
        match &self.members {
            Some(m) => m.len(),
            None => 1usize << self.masses.len(),
        }
    }

    fn distance(&self, i: usize, j: usize) -> f64 {
        self.mask_distance(self.mask(i), self.mask(j))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cover {
    pub centers: Vec<usize>,
    pub radius: f64,
    /// Largest distance from a member to its nearest center.
    pub achieved: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingResult {
    pub selected: Vec<usize>,
    pub radius: f64,
    /// True when `selected` is a maximum packing, not just a maximal one.
    pub certified: bool,
}

/// Farthest-point cover: centers are added at the member farthest from the
/// current centers until every member is within `eps`.
pub fn greedy_cover<M: Metric>(family: &M, eps: f64) -> Result<Cover> {
    if !(eps > 0.0) {
        return Err(arg("cover radius must be positive"));
    }
    let n = family.len();
    if n == 0 {
        return Err(arg("family must be non-empty"));
    }
    let mut centers = alloc::vec![0usize];
    let mut nearest: Vec<f64> = (0..n).map(|j| family.distance(0, j)).collect();
    loop {
        let (far, &dist) = nearest
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("non-empty");
        if dist <= eps {
            let cover = Cover { centers, radius: eps, achieved: dist };
            if !verify_cover(family, &cover) {
                return Err(Error::Invariant("greedy cover failed verification".into()));
            }
            return Ok(cover);
        }
        centers.push(far);
        for (j, d) in nearest.iter_mut().enumerate() {
            *d = d.min(family.distance(far, j));
        }
    }
}

/// Every member within `cover.radius` of some center.
pub fn verify_cover<M: Metric>(family: &M, cover: &Cover) -> bool {
    (0..family.len()).all(|j| cover.centers.iter().any(|&c| family.distance(c, j) <= cover.radius))
}

/// Pairwise distances of the selected members are at least the radius.
pub fn verify_packing<M: Metric>(family: &M, packing: &PackingResult) -> bool {
    let s = &packing.selected;
    (0..s.len()).all(|a| (a + 1..s.len()).all(|b| family.distance(s[a], s[b]) >= packing.radius))
}

/// Maximal (by inclusion) `radius`-separated subset, scanning in index order.
pub fn greedy_packing<M: Metric>(family: &M, radius: f64) -> Result<PackingResult> {
    greedy_packing_limited(family, radius, usize::MAX)
}

/// [`greedy_packing`] stopping once `limit` members are selected; the result
/// is still a valid packing.
pub fn greedy_packing_limited<M: Metric>(family: &M, radius: f64, limit: usize) -> Result<PackingResult> {
    if !(radius > 0.0) {
        return Err(arg("packing radius must be positive"));
    }
    if family.is_empty() {
        return Err(arg("family must be non-empty"));
    }
    let mut selected: Vec<usize> = Vec::new();
    for j in 0..family.len() {
        if selected.len() >= limit {
            break;
        }
        if selected.iter().all(|&s| family.distance(s, j) >= radius) {
            selected.push(j);
        }
    }
    let packing = PackingResult { selected, radius, certified: false };
    if !verify_packing(family, &packing) {
        return Err(Error::Invariant("greedy packing failed verification".into()));
    }
    Ok(packing)
}

/// Maximum `radius`-separated subset by branch and bound (at most 24
/// members).
pub fn exact_packing<M: Metric>(family: &M, radius: f64) -> Result<PackingResult> {
    let n = family.len();
    if n == 0 || n > 24 {
        return Err(arg("exact packing handles 1 to 24 members"));
    }
    let compatible: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && family.distance(i, j) >= radius)
                .fold(0u32, |m, j| m | (1 << j))
        })
        .collect();

    fn grow(candidates: u32, current: u32, best: &mut u32, compatible: &[u32]) {
        if candidates == 0 {
            if current.count_ones() > best.count_ones() {
                *best = current;
            }
            return;
        }
        if current.count_ones() + candidates.count_ones() <= best.count_ones() {
            return;
        }
        let i = candidates.trailing_zeros() as usize;
        let bit = 1u32 << i;
        grow(candidates & compatible[i], current | bit, best, compatible);
        grow(candidates & !bit, current, best, compatible);
    }

    let mut best = 0u32;
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    grow(all, 0, &mut best, &compatible);
    let selected = (0..n).filter(|&i| best & (1 << i) != 0).collect();
    Ok(PackingResult { selected, radius, certified: true })
}
