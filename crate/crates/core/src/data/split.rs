//! Seeded, optionally stratified train/validation/test splitting.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::persist::{KvFile, KvWriter};
use crate::rng::SeededRng;

/// Subset percentages; must sum to 100.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitRatios {
    pub train: u32,
    pub validation: u32,
    pub test: u32,
}

impl Default for SplitRatios {
    fn default() -> Self {
        Self {
            train: 80,
            validation: 10,
            test: 10,
        }
    }
}

impl SplitRatios {
    pub fn new(train: u32, validation: u32, test: u32) -> Result<Self> {
        let sum = train + validation + test;
        if sum != 100 {
            return Err(Error::BadRatios(sum));
        }
        Ok(Self {
            train,
            validation,
            test,
        })
    }
}

/// Disjoint, exhaustive index sets for the three subsets, plus the settings
/// that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitAssignment {
    pub train: Vec<usize>,
    pub validation: Vec<usize>,
    pub test: Vec<usize>,
    pub ratios: SplitRatios,
    pub seed: u64,
    pub stratified: bool,
}

impl SplitAssignment {
    pub fn total(&self) -> usize {
        self.train.len() + self.validation.len() + self.test.len()
    }

    /// Split manifest in the key-value format.
    pub fn to_text(&self) -> String {
        let mut w = KvWriter::new("split");
        w.push("seed", self.seed);
        w.push_list(
            "ratios",
            [self.ratios.train, self.ratios.validation, self.ratios.test],
        );
        w.push("stratified", self.stratified);
        w.push_list("counts", [self.train.len(), self.validation.len(), self.test.len()]);
        w.push_list("train", self.train.iter());
        w.push_list("validation", self.validation.iter());
        w.push_list("test", self.test.iter());
        w.finish()
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = KvFile::read(path)?;
        file.expect_kind("split")?;
        let ratios: Vec<u32> = file.get_list("ratios")?;
        if ratios.len() != 3 {
            return Err(file.error("ratios expects three values"));
        }
        Ok(Self {
            train: file.get_list("train")?,
            validation: file.get_list("validation")?,
            test: file.get_list("test")?,
            ratios: SplitRatios::new(ratios[0], ratios[1], ratios[2])?,
            seed: file.get_one("seed")?,
            stratified: file.get_one("stratified")?,
        })
    }
}

/// Assigns each index to train/validation/test.
///
/// Deterministic in the seed. When stratified, indices are grouped by label,
/// each group is shuffled and apportioned by largest remainder, so per-class
/// proportions in every subset track the global ones. Requires at least two
/// distinct labels under stratification.
pub fn split_dataset<L: Ord + std::fmt::Display>(
    labels: &[L],
    ratios: SplitRatios,
    seed: u64,
    stratified: bool,
) -> Result<SplitAssignment> {
    if labels.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut groups: BTreeMap<&L, Vec<usize>> = BTreeMap::new();
    for (i, label) in labels.iter().enumerate() {
        groups.entry(label).or_default().push(i);
    }
    if stratified && groups.len() < 2 {
        let only = groups.keys().next().expect("non-empty").to_string();
        return Err(Error::ClassAbsent(format!("all records are '{only}'; a second class")));
    }
    if !stratified {
        let all: Vec<usize> = (0..labels.len()).collect();
        groups = BTreeMap::new();
        groups.insert(&labels[0], all);
    }

    let mut rng = SeededRng::new(seed);
    let mut train = Vec::new();
    let mut validation = Vec::new();
    let mut test = Vec::new();
    for indices in groups.values() {
        let mut shuffled = indices.clone();
        rng.shuffle(&mut shuffled);
        let (n_train, n_val, n_test) = apportion(shuffled.len(), ratios);
        train.extend_from_slice(&shuffled[..n_train]);
        validation.extend_from_slice(&shuffled[n_train..n_train + n_val]);
        test.extend_from_slice(&shuffled[n_train + n_val..n_train + n_val + n_test]);
    }
    train.sort_unstable();
    validation.sort_unstable();
    test.sort_unstable();
    Ok(SplitAssignment {
        train,
        validation,
        test,
        ratios,
        seed,
        stratified,
    })
}

/// Largest-remainder apportionment of `n` items into the three ratios.
fn apportion(n: usize, ratios: SplitRatios) -> (usize, usize, usize) {
    let parts = [ratios.train, ratios.validation, ratios.test];
    let mut counts = [0usize; 3];
    let mut remainders = [(0u32, 0usize); 3];
    let mut assigned = 0;
    for (k, &p) in parts.iter().enumerate() {
        let exact = n * p as usize;
        counts[k] = exact / 100;
        // Remainder in hundredths; ties resolve toward the earlier subset.
        remainders[k] = ((exact % 100) as u32, k);
        assigned += counts[k];
    }
    let mut leftover = n - assigned;
    remainders.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut i = 0;
    while leftover > 0 {
        counts[remainders[i % 3].1] += 1;
        leftover -= 1;
        i += 1;
    }
    (counts[0], counts[1], counts[2])
}
