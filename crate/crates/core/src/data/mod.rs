//! Data preparation: molecular-string encoding, gap-class labeling, outlier
//! and length filtering, stratified splitting, 2D feature ingestion, and the
//! synthetic benchmark generator.

mod smiles;
mod split;
mod synth;

pub use smiles::{build_dictionary, decode_indices, encode_smiles, CharDictionary, ENCODED_LEN};
pub use split::{split_dataset, SplitAssignment, SplitRatios};
pub use synth::{bayes_accuracy, synth_dataset};

use std::path::Path;

use crate::error::{Error, Result};

/// Spectroscopic gap class of a polymer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GapClass {
    /// Mid-infrared, gap in [0.025, 0.4] eV.
    Mir,
    /// Near-infrared, gap in (0.4, 1.6] eV.
    Nir,
    /// Visible, gap in (1.6, 4.0] eV.
    Vis,
}

impl GapClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            GapClass::Mir => "MIR",
            GapClass::Nir => "NIR",
            GapClass::Vis => "VIS",
        }
    }
}

impl std::fmt::Display for GapClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for GapClass {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "MIR" => Ok(GapClass::Mir),
            "NIR" => Ok(GapClass::Nir),
            "VIS" => Ok(GapClass::Vis),
            _ => Err(()),
        }
    }
}

/// Class of a gap energy. The boundaries at 0.4 and 1.6 eV belong to the
/// lower class (the range above excludes them); gaps outside [0.025, 4.0] eV
/// are rejected.
pub fn label_gap(gap_ev: f64) -> Result<GapClass> {
    if !(0.025..=4.0).contains(&gap_ev) {
        return Err(Error::GapOutOfRange(gap_ev));
    }
    Ok(if gap_ev <= 0.4 {
        GapClass::Mir
    } else if gap_ev <= 1.6 {
        GapClass::Nir
    } else {
        GapClass::Vis
    })
}

/// One polymer: the monomer string, its gap, and derived artifacts.
#[derive(Debug, Clone, PartialEq)]
pub struct PolymerRecord {
    pub smiles: String,
    pub gap_ev: f64,
    pub class: GapClass,
    /// Character-index encoding padded to [`ENCODED_LEN`], when computed.
    pub encoded: Option<Vec<u16>>,
    /// Extracted 2D feature vector in [-1, 1]^2, when available.
    pub features: Option<[f64; 2]>,
}

impl PolymerRecord {
    /// Labels the record from its gap; out-of-range gaps are rejected, which
    /// keeps the class consistent with the gap by construction.
    pub fn new(smiles: impl Into<String>, gap_ev: f64) -> Result<Self> {
        Ok(Self {
            smiles: smiles.into(),
            gap_ev,
            class: label_gap(gap_ev)?,
            encoded: None,
            features: None,
        })
    }
}

/// Keeps records whose string is strictly shorter than `critical_len`
/// characters (they still fit the fixed-length encoding after padding).
pub fn filter_length(records: Vec<PolymerRecord>, critical_len: usize) -> Vec<PolymerRecord> {
    records
        .into_iter()
        .filter(|r| r.smiles.chars().count() < critical_len)
        .collect()
}

/// Default length cutoff: strings of 140+ characters are dropped.
pub const CRITICAL_LENGTH: usize = 140;

/// Removes records whose normalized gap deviates more than `k_sigma` standard
/// deviations from the mean. Zero-variance or sub-2-element inputs come back
/// unchanged.
pub fn filter_outliers(records: Vec<PolymerRecord>, k_sigma: f64) -> Vec<PolymerRecord> {
    if records.len() < 2 {
        return records;
    }
    let n = records.len() as f64;
    let mean = records.iter().map(|r| r.gap_ev).sum::<f64>() / n;
    let var = records.iter().map(|r| (r.gap_ev - mean).powi(2)).sum::<f64>() / n;
    let std = var.sqrt();
    if std == 0.0 {
        return records;
    }
    records
        .into_iter()
        .filter(|r| ((r.gap_ev - mean) / std).abs() <= k_sigma)
        .collect()
}

/// Default outlier cutoff in standard deviations.
pub const OUTLIER_SIGMA: f64 = 3.0;

/// Which gap class carries the +1 label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelConvention {
    /// VIS -> +1, NIR -> -1.
    #[default]
    VisPositive,
    /// VIS -> -1, NIR -> +1.
    VisNegative,
}

impl LabelConvention {
    pub fn label_of(&self, class: GapClass) -> Option<f64> {
        let sign = match class {
            GapClass::Vis => 1.0,
            GapClass::Nir => -1.0,
            GapClass::Mir => return None,
        };
        Some(match self {
            LabelConvention::VisPositive => sign,
            LabelConvention::VisNegative => -sign,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            LabelConvention::VisPositive => "vis_positive",
            LabelConvention::VisNegative => "vis_negative",
        }
    }
}

impl std::str::FromStr for LabelConvention {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "vis_positive" => Ok(LabelConvention::VisPositive),
            "vis_negative" => Ok(LabelConvention::VisNegative),
            _ => Err(()),
        }
    }
}

impl std::fmt::Display for LabelConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Labeled 2D feature vectors in [-1, 1]^2 with labels in {+1, -1}.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Dataset2D {
    points: Vec<[f64; 2]>,
    labels: Vec<f64>,
}

impl Dataset2D {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, point: [f64; 2], label: f64) -> Result<()> {
        for &v in &point {
            if !(-1.0..=1.0).contains(&v) {
                return Err(Error::FeatureOutsideUnitBox(v));
            }
        }
        if label != 1.0 && label != -1.0 {
            return Err(Error::BadLabel(label));
        }
        self.points.push(point);
        self.labels.push(label);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn iter(&self) -> impl Iterator<Item = ([f64; 2], f64)> + '_ {
        self.points.iter().copied().zip(self.labels.iter().copied())
    }

    pub fn subset(&self, indices: &[usize]) -> Self {
        Self {
            points: indices.iter().map(|&i| self.points[i]).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
        }
    }

    /// Applies a split to produce (train, validation, test) views.
    pub fn split(&self, assignment: &SplitAssignment) -> (Self, Self, Self) {
        (
            self.subset(&assignment.train),
            self.subset(&assignment.validation),
            self.subset(&assignment.test),
        )
    }

    /// Reads the `x1,x2,label` CSV layout. Labels may be class names (mapped
    /// through `convention`) or literal +1/-1. Rejects out-of-range features
    /// and reports the row number of any malformed line.
    pub fn load_csv(path: &Path, convention: LabelConvention) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_csv(&text, convention)
    }

    pub fn parse_csv(text: &str, convention: LabelConvention) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let header = loop {
            match lines.next() {
                Some((_, line)) if line.trim().is_empty() || line.starts_with('#') => continue,
                Some((_, line)) => break line.trim(),
                None => return Err(Error::EmptyDataset),
            }
        };
        if header != "x1,x2,label" {
            return Err(Error::MalformedRow {
                row: 1,
                message: format!("expected header 'x1,x2,label', got '{header}'"),
            });
        }
        let mut data = Self::new();
        for (idx, line) in lines {
            let row = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::MalformedRow {
                    row,
                    message: format!("expected 3 fields, got {}", parts.len()),
                });
            }
            let mut point = [0.0; 2];
            for (slot, raw) in point.iter_mut().zip(&parts[..2]) {
                *slot = raw.trim().parse().map_err(|_| Error::MalformedRow {
                    row,
                    message: format!("cannot parse feature '{raw}'"),
                })?;
                if !(-1.0..=1.0).contains(slot) {
                    return Err(Error::FeatureOutOfRange { row, value: *slot });
                }
            }
            let label_text = parts[2].trim();
            let label = match label_text.parse::<GapClass>() {
                Ok(class) => convention.label_of(class).ok_or(Error::MalformedRow {
                    row,
                    message: format!("class {class} carries no binary label"),
                })?,
                Err(()) => match label_text {
                    "+1" | "1" => 1.0,
                    "-1" => -1.0,
                    other => {
                        return Err(Error::MalformedRow {
                            row,
                            message: format!("unknown label '{other}'"),
                        })
                    }
                },
            };
            data.push(point, label).map_err(|e| match e {
                Error::FeatureOutsideUnitBox(v) => Error::FeatureOutOfRange { row, value: v },
                other => other,
            })?;
        }
        if data.is_empty() {
            return Err(Error::EmptyDataset);
        }
        Ok(data)
    }

    /// Writes the `x1,x2,label` layout with literal +1/-1 labels.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("# format_version 1\n# kind dataset_2d\nx1,x2,label\n");
        for (p, y) in self.iter() {
            let label = if y > 0.0 { "+1" } else { "-1" };
            out.push_str(&format!("{},{},{}\n", p[0], p[1], label));
        }
        out
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}
