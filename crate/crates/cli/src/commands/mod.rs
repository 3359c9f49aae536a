pub mod boundary;
pub mod fit_kernel;
pub mod predict;
pub mod prepare;
pub mod score;
pub mod synth;
pub mod train;

use std::path::Path;

use photonic_core::data::Dataset2D;
use photonic_core::gkm::GkmModel;
use photonic_core::persist::KvFile;
use photonic_core::rks::RksModel;
use photonic_core::vqc::VqcModel;

use crate::CliError;

/// Any persisted classifier, dispatched on the file's `kind` line.
pub enum AnyModel {
    Gkm(GkmModel),
    Rks(RksModel),
    Vqc(VqcModel),
}

impl AnyModel {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let kind = KvFile::read(path)?.kind()?;
        Ok(match kind.as_str() {
            "gkm" => AnyModel::Gkm(GkmModel::load(path)?),
            "rks" => AnyModel::Rks(RksModel::load(path)?),
            "vqc" => AnyModel::Vqc(VqcModel::load(path)?),
            other => {
                return Err(CliError::Config(format!(
                    "{}: unknown model kind '{other}'",
                    path.display()
                )))
            }
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AnyModel::Gkm(_) => "gkm",
            AnyModel::Rks(_) => "rks",
            AnyModel::Vqc(_) => "vqc",
        }
    }

    pub fn decision(&self, x: [f64; 2]) -> Result<f64, CliError> {
        Ok(match self {
            AnyModel::Gkm(model) => model.decision(x),
            AnyModel::Rks(model) => model.decision(x),
            AnyModel::Vqc(model) => model.decision(x)?,
        })
    }

    pub fn score(&self, data: &Dataset2D) -> Result<f64, CliError> {
        Ok(match self {
            AnyModel::Gkm(model) => model.score(data)?,
            AnyModel::Rks(model) => model.score(data)?,
            AnyModel::Vqc(model) => model.score(data)?,
        })
    }
}
