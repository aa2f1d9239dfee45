//! `cqmetrics` command-line front end.
//!
//! Every subcommand loads its inputs, computes the requested tables in
//! memory, and only then writes CSV files, `summary.json` and
//! `manifest.json` into the output directory. On failure nothing is left
//! behind and a single `error: ...` line goes to stderr.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use cqmetrics::corpus::{load_annotations, load_dataset, load_embeddings, RatingEncoding};
use cqmetrics::readability::{ReadabilityOptions, WordList};
use cqmetrics::report::{build_report, ReportInputs, ReportOptions, Sections};
use cqmetrics::semantics::AnalysisConfig;
use cqmetrics::{Error, Execution};

#[derive(Debug, Parser)]
#[command(
    name = "cqmetrics",
    version,
    about = "Quantitative metrics for competency-question sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// Per-CQ readability and complexity features, with per-set aggregates.
    Features,
    /// Suitability, acceptance, agreement, ambiguity and relevance tables.
    Suitability,
    /// Internal diversity of each set over embeddings.
    Diversity,
    /// Pairwise centroid similarity and coverage for all set pairs.
    Compare,
    /// Min-max feature profiles and correlations with the suitability score.
    Correlate,
    /// Everything above.
    Report,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Features => "features",
            Command::Suitability => "suitability",
            Command::Diversity => "diversity",
            Command::Compare => "compare",
            Command::Correlate => "correlate",
            Command::Report => "report",
        }
    }
}

#[derive(Debug, Args)]
struct Options {
    /// Dataset CSV.
    #[arg(long, global = true)]
    dataset: Option<PathBuf>,
    /// Parse and requirement-primitive annotations (JSON).
    #[arg(long, global = true)]
    annotations: Option<PathBuf>,
    /// Sentence embeddings (JSON, optionally with a binary sidecar).
    #[arg(long, global = true)]
    embeddings: Option<PathBuf>,
    /// Coverage threshold on cosine similarity.
    #[arg(long, global = true, default_value_t = 0.75)]
    tau: f64,
    /// Cluster count for the entropy measure.
    #[arg(long, global = true, default_value_t = 5)]
    k: usize,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 46)]
    seed: u64,
    /// k-means restarts.
    #[arg(long, global = true, default_value_t = 10)]
    restarts: usize,
    /// Restrict the analysis to these sets, in this order.
    #[arg(long, global = true, value_delimiter = ',')]
    sets: Option<Vec<String>>,
    /// Rater column encoding: plus-minus-one or zero-one.
    #[arg(long, global = true, default_value = "plus-minus-one")]
    rating_encoding: RatingEncoding,
    /// Replacement for the bundled Dale-Chall familiar-word list.
    #[arg(long, global = true)]
    dale_chall_list: Option<PathBuf>,
    /// Also emit GFI, CLI and ARI.
    #[arg(long, global = true)]
    extra_readability: bool,
    /// Use the adjusted DCR (adds 3.6365 above 5% difficult words).
    #[arg(long, global = true)]
    adjusted_dcr: bool,
    /// Include internal diversity in `report`.
    #[arg(long, global = true)]
    internal_diversity: bool,
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
    /// Output directory.
    #[arg(long, global = true, env = "CQMETRICS_OUT", default_value = "cqmetrics-out")]
    out: PathBuf,
}

#[derive(Debug, Serialize)]
struct InputChecksum {
    path: String,
    sha256: String,
}

#[derive(Debug, Serialize)]
struct ManifestConfig {
    tau: f64,
    k: usize,
    seed: u64,
    restarts: usize,
    sets: Option<Vec<String>>,
    rating_encoding: RatingEncoding,
    extra_readability: bool,
    adjusted_dcr: bool,
    internal_diversity: bool,
    dale_chall_sha256: String,
}

#[derive(Debug, Serialize)]
struct RunManifest {
    tool: &'static str,
    version: &'static str,
    command: Command,
    inputs: Vec<(String, InputChecksum)>,
    config: ManifestConfig,
    outputs: Vec<String>,
    timestamp: String,
}

fn sha256_file(path: &Path) -> Result<String, Error> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(format!("{:x}", Sha256::digest(&bytes)))
}

fn require<'a>(path: &'a Option<PathBuf>, flag: &str, command: Command) -> Result<&'a Path, Error> {
    path.as_deref()
        .ok_or_else(|| Error::InvalidConfig(format!("{} requires --{flag}", command.name())))
}

fn sections(command: Command, internal_diversity: bool) -> Sections {
    let none = Sections::default();
    match command {
        Command::Features => Sections { features: true, ..none },
        Command::Suitability => Sections {
            suitability: true,
            ..none
        },
        Command::Diversity => Sections {
            diversity: true,
            ..none
        },
        Command::Compare => Sections { compare: true, ..none },
        Command::Correlate => Sections {
            correlate: true,
            ..none
        },
        Command::Report => Sections::all(internal_diversity),
    }
}

/// Writes all files or none: anything already written is removed if a later
/// write fails.
fn write_outputs(dir: &Path, files: &[(String, String)]) -> Result<(), Error> {
    let existed = dir.exists();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written: Vec<PathBuf> = Vec::new();
    for (name, contents) in files {
        let path = dir.join(name);
        let res = fs::File::create(&path).and_then(|mut f| f.write_all(contents.as_bytes()));
        if let Err(e) = res {
            for p in written.iter().chain(std::iter::once(&path)) {
                let _ = fs::remove_file(p);
            }
            if !existed {
                let _ = fs::remove_dir(dir);
            }
            return Err(Error::io(&path, e));
        }
        written.push(path);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    let opts = &cli.opts;
    let command = cli.command;
    let wanted = sections(command, opts.internal_diversity);
    let needs_annotations = command == Command::Report;
    let needs_embeddings = wanted.diversity || wanted.compare;

    let dataset_path = require(&opts.dataset, "dataset", command)?;
    if needs_annotations {
        require(&opts.annotations, "annotations", command)?;
    }
    if needs_embeddings {
        require(&opts.embeddings, "embeddings", command)?;
    }

    let analysis = AnalysisConfig {
        tau: opts.tau,
        k: opts.k,
        seed: opts.seed,
        restarts: opts.restarts,
        execution: if opts.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        },
    };
    analysis.validate()?;

    let dataset = load_dataset(dataset_path, opts.rating_encoding)?;
    let mut inputs = vec![("dataset".to_string(), dataset_path.to_path_buf())];
    let annotations = match &opts.annotations {
        Some(p) if wanted.features || wanted.correlate => {
            inputs.push(("annotations".into(), p.clone()));
            Some(load_annotations(p, Some(&dataset))?)
        }
        _ => None,
    };
    let embeddings = match &opts.embeddings {
        Some(p) if needs_embeddings => {
            inputs.push(("embeddings".into(), p.clone()));
            Some(load_embeddings(p, None)?)
        }
        _ => None,
    };
    let word_list = match &opts.dale_chall_list {
        Some(p) => {
            inputs.push(("dale_chall_list".into(), p.clone()));
            WordList::load(p)?
        }
        None => WordList::bundled(),
    };
    let sets = match &opts.sets {
        Some(names) => dataset.select_sets(names)?,
        None => dataset.sets().to_vec(),
    };

    let report = build_report(
        &ReportInputs {
            dataset: &dataset,
            sets,
            annotations: annotations.as_ref(),
            embeddings: embeddings.as_ref(),
            word_list: &word_list,
        },
        &ReportOptions {
            readability: ReadabilityOptions {
                adjusted_dcr: opts.adjusted_dcr,
            },
            extra_readability: opts.extra_readability,
            analysis,
        },
        wanted,
    )?;

    let mut files = report.files();
    files.push(("summary.json".into(), report.summary_json()));
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command,
        inputs: inputs
            .into_iter()
            .map(|(kind, path)| {
                Ok((
                    kind,
                    InputChecksum {
                        sha256: sha256_file(&path)?,
                        path: path.display().to_string(),
                    },
                ))
            })
            .collect::<Result<_, Error>>()?,
        config: ManifestConfig {
            tau: opts.tau,
            k: opts.k,
            seed: opts.seed,
            restarts: opts.restarts,
            sets: opts.sets.clone(),
            rating_encoding: opts.rating_encoding,
            extra_readability: opts.extra_readability,
            adjusted_dcr: opts.adjusted_dcr,
            internal_diversity: opts.internal_diversity,
            dale_chall_sha256: word_list.checksum().to_string(),
        },
        outputs: files.iter().map(|(n, _)| n.clone()).collect(),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
    };
    let mut manifest_json = serde_json::to_string_pretty(&manifest).map_err(|e| Error::json("manifest", e))?;
    manifest_json.push('\n');
    files.push(("manifest.json".into(), manifest_json));

    write_outputs(&opts.out, &files)?;
    log::info!("wrote {} files to {}", files.len(), opts.out.display());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            ExitCode::from(if e.is_validation() { 2 } else { 1 })
        }
    }
}
