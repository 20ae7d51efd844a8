//! File-to-file pipelines behind the `dowker` binary.
//!
//! Every command takes a [`RunConfig`] and returns its outputs as
//! in-memory [`Artifact`]s; the binary decides where they go. Each artifact
//! starts with a header echoing the configuration (a `# config:` line in
//! CSV, a `config` field in JSON, a comment in Newick and SVG). Thread
//! count and output location are deliberately not part of the config, so
//! outputs are byte-identical across thread counts.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::bottleneck::{bottleneck_distance, diagram_distance};
use crate::centrality::{
    compare_all, degree_centrality, hits, katz, pagerank, quasi_centrality, CentralityReport,
    CompareParams, HitsParams, KatzParams, Measure, PageRankParams,
};
use crate::dowker::{build_filtration, DEFAULT_MAX_DIM};
use crate::error::{Error, Result};
use crate::hierarchy::{
    build_object_set, distance_matrix_long_csv, distance_matrix_wide_csv, single_linkage,
    ObjectSetOptions, STANDARD,
};
use crate::network::{
    check_epsilon, effective_distance, parse_adjacency_csv, parse_edge_list, DirectedNetwork,
    EffectiveDistanceNetwork, NetworkKind, DEFAULT_EPSILON,
};
use crate::persistence::{compute_persistence, PersistenceDiagram};
use crate::render::{barcode_svg, dendrogram_svg};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Transform,
    Centrality,
    Compare,
    Persistence,
    Bottleneck,
    Dendrogram,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputFormat {
    EdgeList,
    Adjacency,
    NetworkJson,
}

impl InputFormat {
    /// `.json` files are read as network JSON, anything else as an edge list.
    pub fn guess(path: &str) -> Self {
        if path.to_ascii_lowercase().ends_with(".json") {
            InputFormat::NetworkJson
        } else {
            InputFormat::EdgeList
        }
    }
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edges" | "csv" => Ok(InputFormat::EdgeList),
            "adjacency" => Ok(InputFormat::Adjacency),
            "network-json" | "json" => Ok(InputFormat::NetworkJson),
            _ => Err(Error::Usage(format!(
                "unknown input format `{s}` (expected edge-list, adjacency or network-json)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
    Newick,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "svg" => Ok(OutputFormat::Svg),
            "newick" | "nwk" => Ok(OutputFormat::Newick),
            _ => Err(Error::Usage(format!(
                "unknown output format `{s}` (expected csv, json, svg or newick)"
            ))),
        }
    }
}

/// A single measure or all of them side by side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureChoice {
    One(Measure),
    All,
}

impl FromStr for MeasureChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('-', "_");
        if key == "all" {
            return Ok(MeasureChoice::All);
        }
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .map(MeasureChoice::One)
            .ok_or_else(|| {
                let names: Vec<&str> = Measure::ALL.iter().map(|m| m.name()).collect();
                Error::Usage(format!("unknown measure `{s}` (expected all, {})", names.join(", ")))
            })
    }
}

impl fmt::Display for MeasureChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureChoice::One(m) => f.write_str(m.name()),
            MeasureChoice::All => f.write_str("all"),
        }
    }
}

impl Serialize for MeasureChoice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Everything that determines a command's output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub inputs: Vec<String>,
    pub format: InputFormat,
    pub epsilon: f64,
    pub max_dim: usize,
    pub homology_dims: Vec<usize>,
    pub measure: Option<MeasureChoice>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub reversed: bool,
    pub output_format: OutputFormat,
}

impl RunConfig {
    /// Config with defaults for `command`; the format is guessed from the
    /// first input's extension.
    pub fn new(command: Command, inputs: Vec<String>) -> Self {
        let format = inputs.first().map_or(InputFormat::EdgeList, |p| InputFormat::guess(p));
        let output_format = match command {
            Command::Transform | Command::Persistence => OutputFormat::Json,
            Command::Centrality | Command::Compare | Command::Bottleneck => OutputFormat::Csv,
            Command::Dendrogram => OutputFormat::Newick,
        };
        let measure = match command {
            Command::Centrality => Some(MeasureChoice::One(Measure::Quasi)),
            Command::Compare => Some(MeasureChoice::All),
            _ => None,
        };
        Self {
            command,
            inputs,
            format,
            epsilon: DEFAULT_EPSILON,
            max_dim: DEFAULT_MAX_DIM,
            homology_dims: (0..DEFAULT_MAX_DIM).collect(),
            measure,
            alpha: None,
            beta: None,
            reversed: false,
            output_format,
        }
    }

    pub fn with_max_dim(mut self, max_dim: usize) -> Self {
        self.max_dim = max_dim;
        self.homology_dims = (0..max_dim).collect();
        self
    }

    /// Checks flag combinations; failures are usage errors.
    pub fn validate(&self) -> Result<()> {
        check_epsilon(self.epsilon).map_err(|e| match e {
            Error::Domain(msg) => Error::Usage(msg),
            other => other,
        })?;
        if self.max_dim == 0 {
            return Err(Error::Usage("--max-dim must be at least 1".into()));
        }
        if let Some(&top) = self.homology_dims.iter().max() {
            if self.max_dim < top + 1 {
                return Err(Error::Usage(format!(
                    "--max-dim {} cannot support homology in dimension {top}",
                    self.max_dim
                )));
            }
        }
        let wanted = match self.command {
            Command::Bottleneck => 2,
            _ => 1,
        };
        if self.inputs.len() != wanted {
            return Err(Error::Usage(format!(
                "{:?} takes {wanted} input(s), got {}",
                self.command,
                self.inputs.len()
            )));
        }
        let allowed: &[OutputFormat] = match self.command {
            Command::Transform => &[OutputFormat::Json, OutputFormat::Csv],
            Command::Centrality | Command::Compare | Command::Bottleneck => {
                &[OutputFormat::Csv, OutputFormat::Json]
            }
            Command::Persistence => &[OutputFormat::Json, OutputFormat::Csv, OutputFormat::Svg],
            Command::Dendrogram => &[
                OutputFormat::Newick,
                OutputFormat::Json,
                OutputFormat::Svg,
                OutputFormat::Csv,
            ],
        };
        if !allowed.contains(&self.output_format) {
            return Err(Error::Usage(format!(
                "{:?} cannot write {:?} output",
                self.command, self.output_format
            )));
        }
        let tunable = matches!(
            self.measure,
            Some(MeasureChoice::One(Measure::Katz | Measure::PageRank | Measure::PageRankReversed))
        );
        if (self.alpha.is_some() || self.beta.is_some()) && !tunable {
            return Err(Error::Usage(
                "--alpha and --beta apply only to --measure katz or pagerank".into(),
            ));
        }
        if self.reversed
            && !matches!(self.measure, Some(MeasureChoice::One(Measure::PageRank | Measure::PageRankReversed)))
        {
            return Err(Error::Usage("--reversed applies only to --measure pagerank".into()));
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self).expect("config is always serializable")
    }

    fn csv_header(&self) -> String {
        format!("# config: {}\n", self.to_json_value())
    }

    /// `key=value` pairs that survive inside a Newick `[...]` comment.
    fn newick_header(&self) -> String {
        let Value::Object(map) = self.to_json_value() else {
            unreachable!()
        };
        let pairs: Vec<String> = map
            .iter()
            .map(|(k, v)| {
                let v = match v {
                    Value::Null => "none".to_string(),
                    Value::String(s) => s.clone(),
                    Value::Array(items) => items
                        .iter()
                        .map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_string))
                        .collect::<Vec<_>>()
                        .join(" "),
                    other => other.to_string(),
                };
                format!("{k}={}", v.replace(['[', ']'], "_"))
            })
            .collect();
        format!("[config: {}]\n", pairs.join("; "))
    }

    fn svg_comment(&self) -> String {
        format!("config: {}", self.to_json_value())
    }

    fn with_config(&self, mut body: Value) -> Result<String> {
        match &mut body {
            Value::Object(map) => {
                map.insert("config".into(), self.to_json_value());
            }
            _ => body = json!({ "config": self.to_json_value(), "data": body }),
        }
        Ok(serde_json::to_string_pretty(&body)? + "\n")
    }
}

/// A named output file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

impl Artifact {
    fn new(name: impl Into<String>, contents: String) -> Self {
        Self {
            name: name.into(),
            contents,
        }
    }
}

/// `%g`-style formatting with six significant digits.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..6).contains(&exp) {
        let s = format!("{:.*}", (5 - exp) as usize, x);
        trim_zeros(&s)
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn read_input(path: &str) -> Result<String> {
    std::fs::read_to_string(Path::new(path)).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("cannot read `{path}`: {e}")))
    })
}

/// Reads the network named by `config.inputs[0]`.
pub fn load_network(config: &RunConfig) -> Result<DirectedNetwork> {
    let path = config
        .inputs
        .first()
        .ok_or_else(|| Error::Usage("no input file given".into()))?;
    let text = read_input(path)?;
    match config.format {
        InputFormat::EdgeList => parse_edge_list(&text),
        InputFormat::Adjacency => Ok(parse_adjacency_csv(&text)?.network),
        InputFormat::NetworkJson => DirectedNetwork::from_json(&text),
    }
}

fn distances_of(g: &DirectedNetwork, epsilon: f64) -> Result<EffectiveDistanceNetwork> {
    match g.kind() {
        NetworkKind::Flow => effective_distance(g, epsilon),
        NetworkKind::Dissimilarity => EffectiveDistanceNetwork::from_dissimilarity(g.clone()),
    }
}

/// Writes the effective-distance network, sentinel included.
pub fn cmd_transform(config: &RunConfig) -> Result<Vec<Artifact>> {
    config.validate()?;
    let g = load_network(config)?;
    let m = distances_of(&g, config.epsilon)?;
    let out = match config.output_format {
        OutputFormat::Csv => {
            let mut s = config.csv_header();
            s.push_str(&format!("# sentinel: {}\nsource,target,distance\n", format_sig6(m.sentinel())));
            for (i, a) in m.nodes().iter().enumerate() {
                for (j, b) in m.nodes().iter().enumerate() {
                    if i != j && m.network().has_edge(i, j) {
                        s.push_str(&format!("{},{},{}\n", csv_cell(a), csv_cell(b), format_sig6(m.distance(i, j))));
                    }
                }
            }
            Artifact::new("distances.csv", s)
        }
        _ => Artifact::new(
            "distances.json",
            config.with_config(serde_json::to_value(m.network())?)?,
        ),
    };
    Ok(vec![out])
}

fn centrality_reports(config: &RunConfig, g: &DirectedNetwork) -> Result<Vec<CentralityReport>> {
    let choice = config.measure.unwrap_or(MeasureChoice::One(Measure::Quasi));
    let measure = match choice {
        MeasureChoice::All => {
            return compare_all(
                g,
                &CompareParams {
                    epsilon: config.epsilon,
                    ..CompareParams::default()
                },
            )
        }
        MeasureChoice::One(Measure::PageRank) if config.reversed => Measure::PageRankReversed,
        MeasureChoice::One(m) => m,
    };
    let report = match measure {
        Measure::Quasi => quasi_centrality(g, config.epsilon)?,
        Measure::InDegree => degree_centrality(g).0,
        Measure::OutDegree => degree_centrality(g).1,
        Measure::Katz => {
            let d = KatzParams::default();
            katz(
                g,
                &KatzParams {
                    alpha: config.alpha.unwrap_or(d.alpha),
                    beta: config.beta.unwrap_or(d.beta),
                    ..d
                },
            )?
        }
        Measure::PageRank | Measure::PageRankReversed => pagerank(
            g,
            &PageRankParams {
                alpha: config.alpha.unwrap_or(PageRankParams::default().alpha),
                beta: config.beta,
                reversed: measure == Measure::PageRankReversed,
                ..PageRankParams::default()
            },
        )?,
        Measure::HitsHub => hits(g, &HitsParams::default())?.0,
        Measure::HitsAuthority => hits(g, &HitsParams::default())?.1,
    };
    Ok(vec![report])
}

/// Runs the configured measure; with `--measure all` every measure is
/// written as one column of a wide table.
pub fn cmd_centrality(config: &RunConfig) -> Result<Vec<Artifact>> {
    config.validate()?;
    let g = load_network(config)?;
    let reports = centrality_reports(config, &g)?;
    let out = match config.output_format {
        OutputFormat::Json => Artifact::new(
            "centrality.json",
            config.with_config(json!({ "reports": reports }))?,
        ),
        _ => {
            let mut s = config.csv_header();
            if let [single] = reports.as_slice() {
                s.push_str("node,score\n");
                for (node, v) in &single.scores {
                    s.push_str(&format!("{},{}\n", csv_cell(node), format_sig6(*v)));
                }
            } else {
                s.push_str("node");
                for r in &reports {
                    s.push(',');
                    s.push_str(r.measure.name());
                }
                s.push('\n');
                for (i, node) in g.nodes().iter().enumerate() {
                    s.push_str(&csv_cell(node));
                    for r in &reports {
                        s.push(',');
                        s.push_str(&format_sig6(r.scores[i].1));
                    }
                    s.push('\n');
                }
            }
            Artifact::new("centrality.csv", s)
        }
    };
    Ok(vec![out])
}

/// All measures side by side.
pub fn cmd_compare(config: &RunConfig) -> Result<Vec<Artifact>> {
    let mut config = config.clone();
    config.measure = Some(MeasureChoice::All);
    cmd_centrality(&config)
}

/// Diagrams of the effective-distance network in the configured format,
/// followed by the filtration table as `filtration.csv`.
pub fn cmd_persistence(config: &RunConfig) -> Result<Vec<Artifact>> {
    config.validate()?;
    let g = load_network(config)?;
    let m = distances_of(&g, config.epsilon)?;
    let f = build_filtration(&m, config.max_dim)?;
    let top = config.homology_dims.iter().copied().max().unwrap_or(0);
    let diagrams: Vec<PersistenceDiagram> = compute_persistence(&f, top)?
        .into_iter()
        .filter(|d| config.homology_dims.contains(&d.dimension()))
        .collect();
    let primary = match config.output_format {
        OutputFormat::Csv => {
            let mut s = config.csv_header();
            s.push_str("dim,birth,death,essential\n");
            for d in &diagrams {
                for b in d.bars() {
                    s.push_str(&format!(
                        "{},{},{},{}\n",
                        b.dimension,
                        format_sig6(b.birth),
                        format_sig6(b.death),
                        b.essential
                    ));
                }
            }
            Artifact::new("diagrams.csv", s)
        }
        OutputFormat::Svg => Artifact::new("barcode.svg", barcode_svg(&diagrams, Some(&config.svg_comment()))),
        _ => Artifact::new(
            "diagrams.json",
            config.with_config(json!({ "cap": m.sentinel(), "diagrams": diagrams }))?,
        ),
    };
    let filtration = Artifact::new("filtration.csv", config.csv_header() + &f.to_csv());
    Ok(vec![primary, filtration])
}

/// Reads a diagram file: a single diagram, an array of diagrams, or the
/// JSON written by [`cmd_persistence`].
pub fn load_diagrams(path: &str) -> Result<Vec<PersistenceDiagram>> {
    let value: Value = serde_json::from_str(&read_input(path)?)?;
    let list = match value {
        Value::Object(mut map) if map.contains_key("diagrams") => map.remove("diagrams").unwrap_or_default(),
        Value::Array(items) => Value::Array(items),
        single => Value::Array(vec![single]),
    };
    Ok(serde_json::from_value(list)?)
}

/// Bottleneck distance between two diagram files. Two single diagrams are
/// compared directly; diagram sets use the maximum over the homology
/// dimensions.
pub fn cmd_bottleneck(config: &RunConfig) -> Result<Vec<Artifact>> {
    config.validate()?;
    let a = load_diagrams(&config.inputs[0])?;
    let b = load_diagrams(&config.inputs[1])?;
    let d = match (a.as_slice(), b.as_slice()) {
        ([x], [y]) => bottleneck_distance(x, y)?,
        _ => diagram_distance(&a, &b, &config.homology_dims)?,
    };
    let out = match config.output_format {
        OutputFormat::Json => Artifact::new("bottleneck.json", config.with_config(json!({ "distance": d }))?),
        _ => Artifact::new(
            "bottleneck.csv",
            format!("{}distance\n{}\n", config.csv_header(), format_sig6(d)),
        ),
    };
    Ok(vec![out])
}

/// Object set, bottleneck distances and the single-linkage dendrogram.
///
/// The artifact matching the output format comes first; the rest are
/// `dendrogram.{nwk,json,svg}`, `join_times.csv`, `distances.csv` and
/// `distances_wide.csv`.
pub fn cmd_dendrogram(config: &RunConfig) -> Result<Vec<Artifact>> {
    config.validate()?;
    let g = load_network(config)?;
    let m = distances_of(&g, config.epsilon)?;
    let top = config.homology_dims.iter().copied().max().unwrap_or(0);
    let set = build_object_set(
        &m,
        &ObjectSetOptions {
            max_hom_dim: top,
            ..ObjectSetOptions::default()
        },
    )?;
    let dist = set.distance_matrix(&config.homology_dims)?;
    let dendrogram = single_linkage(&dist, set.labels())?;

    let newick = Artifact::new("dendrogram.nwk", config.newick_header() + &dendrogram.to_newick() + "\n");
    let merges: Value = serde_json::from_str(&dendrogram.to_json()?)?;
    let json = Artifact::new("dendrogram.json", config.with_config(merges)?);
    let svg = Artifact::new(
        "dendrogram.svg",
        dendrogram_svg(&dendrogram, Some(&config.svg_comment())),
    );
    let mut times = config.csv_header() + "node,t\n";
    for (node, t) in dendrogram.join_times(STANDARD)? {
        times.push_str(&format!("{},{}\n", csv_cell(&node), format_sig6(t)));
    }
    let times = Artifact::new("join_times.csv", times);
    let long = Artifact::new(
        "distances.csv",
        config.csv_header() + &distance_matrix_long_csv(set.labels(), &dist),
    );
    let wide = Artifact::new(
        "distances_wide.csv",
        config.csv_header() + &distance_matrix_wide_csv(set.labels(), &dist),
    );

    let mut all = vec![newick, json, svg, times, long, wide];
    let first = match config.output_format {
        OutputFormat::Newick => 0,
        OutputFormat::Json => 1,
        OutputFormat::Svg => 2,
        OutputFormat::Csv => 3,
    };
    all.swap(0, first);
    Ok(all)
}

/// Dispatches on `config.command`.
pub fn run(config: &RunConfig) -> Result<Vec<Artifact>> {
    match config.command {
        Command::Transform => cmd_transform(config),
        Command::Centrality => cmd_centrality(config),
        Command::Compare => cmd_compare(config),
        Command::Persistence => cmd_persistence(config),
        Command::Bottleneck => cmd_bottleneck(config),
        Command::Dendrogram => cmd_dendrogram(config),
    }
}
