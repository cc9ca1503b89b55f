//! Thin command-line front end; all behavior lives in the library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use textscope::pipeline::{self, CorpusFormat, HighlightMethod, RunConfig, RunReport, Scorer};

#[derive(Parser)]
#[command(
    name = "textscope",
    version,
    about = "Explore a text corpus through its relevant words: per-class word clouds, \
             document clustering and relevance heatmaps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    /// directory of .txt files, or one subdirectory per class
    Dirs,
    /// one JSON object per line with "id", "text" and optional "label"
    Jsonl,
    /// locally saved newspaper-archive JSON (response.docs[])
    Nyt,
}

impl From<FormatArg> for CorpusFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Dirs => CorpusFormat::Dirs,
            FormatArg::Jsonl => CorpusFormat::Jsonl,
            FormatArg::Nyt => CorpusFormat::Nyt,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ScorerArg {
    TfidfSum,
    Lrp,
    Distinctive,
}

impl From<ScorerArg> for Scorer {
    fn from(s: ScorerArg) -> Self {
        match s {
            ScorerArg::TfidfSum => Scorer::TfidfSum,
            ScorerArg::Lrp => Scorer::Lrp,
            ScorerArg::Distinctive => Scorer::Distinctive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Lrp,
    Tfidf,
}

impl From<MethodArg> for HighlightMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Lrp => HighlightMethod::Lrp,
            MethodArg::Tfidf => HighlightMethod::Tfidf,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Corpus to analyze
    #[arg(long)]
    input: PathBuf,

    /// How the input is laid out on disk
    #[arg(long, value_enum, default_value_t = FormatArg::Dirs)]
    format: FormatArg,

    /// Detect meaningful bigrams and join them into single tokens
    #[arg(long)]
    bigrams: bool,

    /// Minimum bigram score for joining, in (0, 1]
    #[arg(long, default_value_t = 0.1)]
    bigram_threshold: f64,

    /// Words per cloud
    #[arg(long, default_value_t = 50)]
    top_k: usize,

    /// Minimum cosine similarity within a cluster (distance threshold is 1 - min_sim)
    #[arg(long, default_value_t = 0.55)]
    min_sim: f64,

    /// Minimum documents per cluster
    #[arg(long, default_value_t = 3)]
    min_samples: usize,

    /// Kernel PCA components kept before clustering
    #[arg(long, default_value_t = 250)]
    components: usize,

    /// Held-out fraction for the accuracy check, in (0, 1)
    #[arg(long, default_value_t = 0.2)]
    split: f64,

    /// Seed for everything stochastic (splits, training order, cloud layout)
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output directory
    #[arg(long, default_value = "textscope-out")]
    out: PathBuf,

    /// Warn when held-out accuracy falls below this
    #[arg(long, default_value_t = 0.6)]
    accuracy_floor: f64,
}

impl CommonArgs {
    fn into_config(self, scorers: Vec<Scorer>) -> RunConfig {
        RunConfig {
            input: self.input,
            format: self.format.into(),
            bigrams: self.bigrams,
            bigram_threshold: self.bigram_threshold,
            scorers,
            top_k: self.top_k,
            min_sim: self.min_sim,
            min_samples: self.min_samples,
            components: self.components,
            split: self.split,
            seed: self.seed,
            out: self.out,
            accuracy_floor: self.accuracy_floor,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Score a labeled corpus per class and render a cloud per class and scorer
    Analyze {
        #[command(flatten)]
        common: CommonArgs,
        /// Scorers to run (repeat the flag for several)
        #[arg(long = "scorer", value_enum)]
        scorers: Vec<ScorerArg>,
    },
    /// Discover clusters in an unlabeled corpus and score each cluster's words
    Cluster {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Render a relevance heatmap for one document (uses artifacts from `analyze`)
    Highlight {
        #[command(flatten)]
        common: CommonArgs,
        /// Document id, as listed in the corpus
        #[arg(long)]
        doc_id: String,
        /// Class whose weights to explain (required for --method lrp)
        #[arg(long)]
        class: Option<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Lrp)]
        method: MethodArg,
    },
    /// Contrast two document groups (e.g. date ranges) with distinctive words
    Compare {
        #[command(flatten)]
        common: CommonArgs,
        /// First group: date:<start>..<end> or prefix:<id-prefix>
        #[arg(long)]
        group_a: String,
        /// Second group, same syntax
        #[arg(long)]
        group_b: String,
    },
    /// Print the bigram table as TSV (token_a, token_b, pair_count, score)
    Bigrams {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn print_report(report: &RunReport) {
    if let Some(acc) = report.held_out_accuracy {
        println!("held-out accuracy: {acc:.3}");
    }
    if let Some(clusters) = report.cluster_count {
        println!(
            "found {clusters} cluster(s); {} document(s) considered noise",
            report.noise_count.unwrap_or(0)
        );
    }
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    println!("wrote {} file(s)", report.outputs.len());
    for path in &report.outputs {
        println!("  {}", path.display());
    }
}

fn run(cli: Cli) -> textscope::Result<()> {
    match cli.command {
        Command::Analyze { common, scorers } => {
            let scorers: Vec<Scorer> = if scorers.is_empty() {
                vec![Scorer::TfidfSum, Scorer::Lrp, Scorer::Distinctive]
            } else {
                let mut converted: Vec<Scorer> = scorers.into_iter().map(Into::into).collect();
                converted.dedup();
                converted
            };
            let config = common.into_config(scorers);
            print_report(&pipeline::run_analyze(&config)?);
        }
        Command::Cluster { common } => {
            let config = common.into_config(Vec::new());
            print_report(&pipeline::run_cluster(&config)?);
        }
        Command::Highlight {
            common,
            doc_id,
            class,
            method,
        } => {
            let config = common.into_config(Vec::new());
            let report =
                pipeline::run_highlight(&config, &doc_id, class.as_deref(), method.into())?;
            print_report(&report);
        }
        Command::Compare {
            common,
            group_a,
            group_b,
        } => {
            let config = common.into_config(Vec::new());
            print_report(&pipeline::run_compare(&config, &group_a, &group_b)?);
        }
        Command::Bigrams { common } => {
            let config = common.into_config(Vec::new());
            let table = pipeline::bigram_table(&config)?;
            print!("{}", table.to_tsv());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("TEXTSCOPE_LOG", "warn"))
        .format_timestamp(None)
        .init();

    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
