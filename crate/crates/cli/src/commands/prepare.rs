//! `prepare-data`: encode a polymer table, filter it, and split it.
//!
//! Reads a `smiles,gap_ev` CSV, labels every record from its gap, drops
//! overlong strings and gap outliers, builds the character dictionary from
//! the remaining corpus, excludes the mid-infrared class, encodes, and
//! writes the encoded table, the dictionary, and the split manifest.

use std::path::{Path, PathBuf};

use clap::Args as ClapArgs;
use photonic_core::data::{
    build_dictionary, encode_smiles, filter_length, filter_outliers, split_dataset, GapClass,
    PolymerRecord, SplitRatios, CRITICAL_LENGTH, ENCODED_LEN, OUTLIER_SIGMA,
};
use photonic_core::persist::KvWriter;
use photonic_core::Error;

use crate::config::RunConfig;
use crate::CliError;

#[derive(ClapArgs)]
pub struct Args {
    /// Polymer CSV with header smiles,gap_ev.
    #[arg(long)]
    input: PathBuf,
    /// Directory for encoded.csv, dictionary.txt, and split.txt.
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long)]
    split_seed: Option<u64>,
    /// Outlier cutoff in standard deviations.
    #[arg(long, default_value_t = OUTLIER_SIGMA)]
    outlier_sigma: f64,
    /// Drop strings of this length or longer.
    #[arg(long, default_value_t = CRITICAL_LENGTH)]
    critical_length: usize,
    /// Keep index 0 for padding only (shifts character indices up by one).
    #[arg(long)]
    reserve_padding: bool,
}

pub fn run(args: Args, config_file: Option<&Path>) -> Result<(), CliError> {
    let mut config = RunConfig::resolve(config_file)?;
    if let Some(v) = args.split_seed {
        config.split_seed = v;
    }

    let records = read_polymer_csv(&args.input)?;
    let total = records.len();
    let records = filter_length(records, args.critical_length);
    let after_length = records.len();
    let records = filter_outliers(records, args.outlier_sigma);
    let after_outliers = records.len();

    if records.is_empty() {
        return Err(Error::EmptyDataset.into());
    }
    let corpus: Vec<&str> = records.iter().map(|r| r.smiles.as_str()).collect();
    let mut dictionary = build_dictionary(&corpus)?;
    if args.reserve_padding {
        dictionary = dictionary.reserve_padding();
    }

    // Binary classification set: the mid-infrared class is excluded.
    let binary: Vec<&PolymerRecord> = records
        .iter()
        .filter(|r| r.class != GapClass::Mir)
        .collect();
    let mir_dropped = records.len() - binary.len();
    let vis = binary.iter().filter(|r| r.class == GapClass::Vis).count();
    let nir = binary.len() - vis;
    if vis == 0 {
        return Err(Error::ClassAbsent("VIS".to_string()).into());
    }
    if nir == 0 {
        return Err(Error::ClassAbsent("NIR".to_string()).into());
    }

    let labels: Vec<GapClass> = binary.iter().map(|r| r.class).collect();
    let ratios = SplitRatios::new(config.ratios.0, config.ratios.1, config.ratios.2)?;
    let split = split_dataset(&labels, ratios, config.split_seed, config.stratified)?;

    std::fs::create_dir_all(&args.out_dir).map_err(Error::from)?;

    let mut encoded_csv = String::new();
    encoded_csv.push_str("# format_version 1\n# kind encoded_polymers\n");
    encoded_csv.push_str(&format!("# length {ENCODED_LEN}\n"));
    encoded_csv.push_str("class,gap_ev,indices\n");
    for record in &binary {
        let encoded = encode_smiles(&record.smiles, &dictionary, ENCODED_LEN)?;
        let indices: Vec<String> = encoded.iter().map(u16::to_string).collect();
        encoded_csv.push_str(&format!(
            "{},{},{}\n",
            record.class,
            record.gap_ev,
            indices.join(" ")
        ));
    }
    std::fs::write(args.out_dir.join("encoded.csv"), encoded_csv).map_err(Error::from)?;

    let mut dict_file = KvWriter::new("dictionary");
    dict_file.push("size", dictionary.len());
    dict_file.push("padding_reserved", dictionary.padding_reserved());
    for (c, i) in dictionary.entries() {
        dict_file.push_list("entry", [c.to_string(), i.to_string()]);
    }
    dict_file.write_to(&args.out_dir.join("dictionary.txt"))?;

    split.save(&args.out_dir.join("split.txt"))?;

    println!(
        "prepare-data: {total} records, {} kept after length filter, {} after outlier filter",
        after_length, after_outliers
    );
    println!(
        "class balance: VIS {vis} ({:.1}%), NIR {nir} ({:.1}%), MIR dropped {mir_dropped}",
        100.0 * vis as f64 / binary.len() as f64,
        100.0 * nir as f64 / binary.len() as f64,
    );
    println!(
        "split {}/{}/{} -> {}",
        split.train.len(),
        split.validation.len(),
        split.test.len(),
        args.out_dir.display()
    );
    Ok(())
}

fn read_polymer_csv(path: &Path) -> Result<Vec<PolymerRecord>, CliError> {
    let text = std::fs::read_to_string(path).map_err(Error::from)?;
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, line)) if line.trim().is_empty() || line.starts_with('#') => continue,
            Some((_, line)) => break line.trim(),
            None => return Err(Error::EmptyDataset.into()),
        }
    };
    if header != "smiles,gap_ev" {
        return Err(Error::MalformedRow {
            row: 1,
            message: format!("expected header 'smiles,gap_ev', got '{header}'"),
        }
        .into());
    }
    let mut records = Vec::new();
    for (idx, line) in lines {
        let row = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (smiles, gap_text) = line.rsplit_once(',').ok_or(Error::MalformedRow {
            row,
            message: "expected 'smiles,gap_ev'".to_string(),
        })?;
        let gap: f64 = gap_text.trim().parse().map_err(|_| Error::MalformedRow {
            row,
            message: format!("cannot parse gap '{gap_text}'"),
        })?;
        let record = PolymerRecord::new(smiles.trim(), gap).map_err(|e| Error::MalformedRow {
            row,
            message: e.to_string(),
        })?;
        records.push(record);
    }
    if records.is_empty() {
        return Err(Error::EmptyDataset.into());
    }
    Ok(records)
}
