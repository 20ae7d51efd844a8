use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dowker_centrality::cli::{run, Artifact, Command, RunConfig};
use dowker_centrality::Error;

#[derive(Parser)]
#[command(name = "dowker", version, about = "Topological centrality for directed weighted networks")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Write the effective-distance network.
    Transform(Common),
    /// Score nodes with one measure, or all of them.
    Centrality(Common),
    /// Every centrality measure as one wide table.
    Compare(Common),
    /// Persistence diagrams of the Dowker sink filtration.
    Persistence {
        #[command(flatten)]
        common: Common,
        /// Also write the filtration table here.
        #[arg(long)]
        filtration: Option<PathBuf>,
    },
    /// Bottleneck distance between two diagram files.
    Bottleneck(Common),
    /// Impact dendrogram; `--output` names a directory.
    Dendrogram(Common),
}

#[derive(Args)]
struct Common {
    /// Input file; bottleneck takes it twice.
    #[arg(long, short, required = true)]
    input: Vec<String>,
    /// edge-list, adjacency or network-json (default: from the extension).
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    epsilon: Option<f64>,
    /// Largest simplex dimension in the filtration.
    #[arg(long)]
    max_dim: Option<usize>,
    /// quasi, in_degree, out_degree, katz, pagerank, pagerank_reversed,
    /// hits_hub, hits_authority or all.
    #[arg(long)]
    measure: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    reversed: bool,
    #[arg(long, env = "DOWKER_THREADS")]
    threads: Option<usize>,
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// csv, json, svg or newick.
    #[arg(long)]
    output_format: Option<String>,
}

fn config(command: Command, c: &Common) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::new(command, c.input.clone());
    if let Some(f) = &c.format {
        cfg.format = f.parse()?;
    }
    if let Some(e) = c.epsilon {
        cfg.epsilon = e;
    }
    if let Some(d) = c.max_dim {
        cfg = cfg.with_max_dim(d);
    }
    if let Some(m) = &c.measure {
        if !matches!(command, Command::Centrality) {
            return Err(Error::Usage("--measure applies only to `centrality`".into()));
        }
        cfg.measure = Some(m.parse()?);
    }
    cfg.alpha = c.alpha;
    cfg.beta = c.beta;
    cfg.reversed = c.reversed;
    if let Some(f) = &c.output_format {
        cfg.output_format = f.parse()?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_outputs(
    command: Command,
    artifacts: &[Artifact],
    output: Option<&PathBuf>,
    filtration: Option<&PathBuf>,
) -> Result<(), Error> {
    match (command, output) {
        (Command::Dendrogram, Some(dir)) => {
            std::fs::create_dir_all(dir)?;
            for a in artifacts {
                std::fs::write(dir.join(&a.name), &a.contents)?;
            }
        }
        (_, Some(path)) => std::fs::write(path, &artifacts[0].contents)?,
        (_, None) => print!("{}", artifacts[0].contents),
    }
    if let (Some(path), Some(table)) = (filtration, artifacts.iter().find(|a| a.name == "filtration.csv")) {
        std::fs::write(path, &table.contents)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let (command, common, filtration) = match &cli.command {
        Sub::Transform(c) => (Command::Transform, c, None),
        Sub::Centrality(c) => (Command::Centrality, c, None),
        Sub::Compare(c) => (Command::Compare, c, None),
        Sub::Persistence { common, filtration } => (Command::Persistence, common, filtration.as_ref()),
        Sub::Bottleneck(c) => (Command::Bottleneck, c, None),
        Sub::Dendrogram(c) => (Command::Dendrogram, c, None),
    };

    let result = config(command, common).and_then(|cfg| {
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(t) = common.threads {
            if t == 0 {
                return Err(Error::Usage("--threads must be positive".into()));
            }
            pool = pool.num_threads(t);
        }
        let pool = pool
            .build()
            .map_err(|e| Error::Usage(format!("cannot start thread pool: {e}")))?;
        let artifacts = pool.install(|| run(&cfg))?;
        write_outputs(command, &artifacts, common.output.as_ref(), filtration)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
