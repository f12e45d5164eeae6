//! `phylolattice` command-line tool.

mod input;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use phylolattice::cluster::{agglomerate, single_linkage, Linkage};
use phylolattice::elder::ph0_elder;
use phylolattice::experiment::{bottleneck_progression, gen_random_treegrams, ExperimentConfig};
use phylolattice::filtration::filtration_interleaving;
use phylolattice::gram::{cliquegram_from_network, join_grams, treegram_from_ultranetwork};
use phylolattice::io::dot::reeb_to_dot;
use phylolattice::io::json::{gram_to_json, labeled_mergegram_to_json, mergegram_to_json};
use phylolattice::io::matrix::write_matrix_csv;
use phylolattice::io::newick::ultranetwork_from_newick;
use phylolattice::io::svg::{diagram_svg, line_chart_svg};
use phylolattice::io::Document;
use phylolattice::mergegram::{join_mergegram_of_treegrams, labeled_mergegram};
use phylolattice::metrics::{bottleneck_distance, linf_labeled_distance};
use phylolattice::reeb::face_reeb_graph;
use phylolattice::{JoinMode, Ultranetwork};

use input::{load_grams, load_ultranetworks, read, Options};

#[derive(Parser)]
#[command(name = "phylolattice", version, about = "Cliquegrams, facegrams and mergegrams of phylogenetic trees")]
struct Cli {
    /// Worker threads for clique enumeration and distances (0 = all cores).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Snap matrix entries closer than this to a common value.
    #[arg(long, global = true)]
    merge_tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file parses and satisfies its invariants.
    Validate { file: PathBuf },
    /// Cliquegram of a matrix.
    Cliquegram {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Treegram of one Newick tree.
    Treegram {
        #[arg(long)]
        newick: PathBuf,
        /// Which tree of the file to use, counting from 0.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        ultrametrize: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Join of the grams of several trees, matrices or grams.
    Join {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, num_args = 1.., required = true)]
        trees: Vec<PathBuf>,
        #[arg(long)]
        ultrametrize: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Mergegram of a gram, matrix or Newick file; several trees are joined first.
    Mergegram(MergegramArgs),
    /// Face-Reeb graph in Graphviz format.
    Reeb {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Elder-rule 0-dimensional persistence of a matrix.
    Ph0 {
        #[arg(long, alias = "in")]
        matrix: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Distance between two inputs.
    Dist {
        #[arg(long, value_enum)]
        metric: Metric,
        a: PathBuf,
        b: PathBuf,
    },
    /// Random ultrametric trees from clustered random matrices.
    GenTrees {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Reproducible experiments.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Args)]
struct MergegramArgs {
    #[arg(long = "in", num_args = 1.., required = true)]
    input: Vec<PathBuf>,
    /// Keep the face of every interval.
    #[arg(long)]
    labeled: bool,
    /// Compute the join of trees directly from the tree matrices.
    #[arg(long)]
    fast_tree_join: bool,
    /// Recompute through the gram join and fail on any difference.
    #[arg(long, requires = "fast_tree_join")]
    verify: bool,
    #[arg(long)]
    ultrametrize: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Number of taxa.
    #[arg(short = 'n', long = "taxa", default_value_t = 20)]
    taxa: usize,
    /// Number of trees.
    #[arg(short = 'l', long = "count", default_value_t = 21)]
    count: usize,
    #[arg(long, value_enum, default_value_t = Method::Upgma)]
    method: Method,
}

#[derive(Subcommand)]
enum Experiment {
    /// Bottleneck distance from the mergegram of each partial join to that of the full join.
    BottleneckProgression {
        /// Tree files; random trees are generated when omitted.
        #[arg(long, num_args = 1..)]
        trees: Vec<PathBuf>,
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long, value_enum, default_value_t = ProgressionMode::Both)]
        mode: ProgressionMode,
        #[arg(long)]
        ultrametrize: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Cliquegram,
    Facegram,
}

impl From<Mode> for JoinMode {
    fn from(m: Mode) -> JoinMode {
        match m {
            Mode::Cliquegram => JoinMode::Cliquegram,
            Mode::Facegram => JoinMode::Facegram,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ProgressionMode {
    Cliquegram,
    Facegram,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Upgma,
    #[value(alias = "single-linkage")]
    Single,
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Bottleneck,
    Interleaving,
    Linf,
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    log::info!("wrote {}", path.display());
    Ok(())
}

fn validate(file: &Path, opts: &Options) -> Result<()> {
    let input = read(file)?;
    let summary = match &input.doc {
        Document::Gram(g) => format!(
            "gram: {} over {} taxa, {} levels, classified as {}",
            g.kind(),
            g.taxa().len(),
            g.levels().len(),
            g.classify()
        ),
        Document::Mergegram(m) => format!("mergegram: {} intervals", m.len()),
        Document::LabeledMergegram(m) => {
            m.to_gram().with_context(|| input.name())?;
            format!("labeled mergegram: {} intervals over {} taxa", m.len(), m.taxa().len())
        }
        Document::Matrix(net) => format!(
            "matrix: {} taxa, {}",
            net.len(),
            if net.is_ultranetwork() { "ultranetwork" } else { "not an ultranetwork" }
        ),
        Document::Trees(_) => {
            let us = opts.ultranetworks(&input)?;
            format!("newick: {} trees, {} leaves in the first", us.len(), us[0].len())
        }
    };
    println!("{}: {summary}", input.name());
    Ok(())
}

fn mergegram_cmd(args: &MergegramArgs, opts: &Options) -> Result<()> {
    let single = if args.input.len() == 1 { Some(read(&args.input[0])?) } else { None };
    let many_trees = match &single {
        Some(i) => matches!(&i.doc, Document::Trees(t) if t.len() > 1),
        None => true,
    };
    let labeled = if args.fast_tree_join {
        let trees = load_ultranetworks(&args.input, opts)?;
        let fast = join_mergegram_of_treegrams(&trees)?;
        if args.verify {
            let grams: Vec<_> = trees.iter().map(treegram_from_ultranetwork).collect();
            let slow = labeled_mergegram(&join_grams(&grams, JoinMode::Facegram)?);
            if slow != fast {
                bail!("fast tree join disagrees with the gram join");
            }
            log::info!("fast tree join verified on {} trees", trees.len());
        }
        Some(fast)
    } else if many_trees {
        let grams = load_grams(&args.input, opts)?;
        Some(labeled_mergegram(&join_grams(&grams, JoinMode::Facegram)?))
    } else {
        let input = single.as_ref().expect("one input");
        match &input.doc {
            Document::Mergegram(_) if args.labeled => bail!("{}: mergegram has no labels", input.name()),
            Document::Mergegram(_) => None,
            _ => Some(opts.labeled(input)?),
        }
    };
    let unlabeled = match (&labeled, &single) {
        (Some(l), _) => l.mergegram(),
        (None, Some(i)) => opts.mergegram(i)?,
        (None, None) => unreachable!("several inputs always give a labeled result"),
    };
    let text = match (&labeled, args.labeled) {
        (Some(l), true) => labeled_mergegram_to_json(l),
        _ => mergegram_to_json(&unlabeled),
    };
    emit(args.output.as_deref(), &text)?;
    if let Some(svg) = &args.svg {
        let title = args.input[0].file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        write_file(svg, &diagram_svg(&unlabeled, &title))?;
    }
    Ok(())
}

fn ph0_cmd(matrix: &Path, output: Option<&Path>, opts: &Options) -> Result<()> {
    let input = read(matrix)?;
    let u = match &input.doc {
        Document::Matrix(net) => {
            let net = match opts.merge_tol {
                Some(tol) if tol > 0.0 => net.coalesced(tol),
                _ => net.clone(),
            };
            if net.is_ultranetwork() {
                Ultranetwork::new(net)?
            } else {
                log::info!("{}: not an ultranetwork, clustering by single linkage", input.name());
                single_linkage(&net)
            }
        }
        _ => {
            let mut us = opts.ultranetworks(&input)?;
            if us.len() != 1 {
                bail!("{}: holds {} trees, expected one", input.name(), us.len());
            }
            us.pop().expect("one tree")
        }
    };
    let diagram = ph0_elder(&u).with_context(|| input.name())?;
    emit(output, &mergegram_to_json(&diagram.to_mergegram()))
}

fn dist_cmd(metric: Metric, a: &Path, b: &Path, opts: &Options) -> Result<()> {
    let (ia, ib) = (read(a)?, read(b)?);
    let d = match metric {
        Metric::Bottleneck => bottleneck_distance(&opts.mergegram(&ia)?, &opts.mergegram(&ib)?),
        Metric::Linf => {
            let la = opts.labeled(&ia)?;
            let lb = match &ib.doc {
                Document::LabeledMergegram(m) if m.taxa() == la.taxa() => m.clone(),
                _ => labeled_mergegram(&opts.gram(&ib)?.reindexed(la.taxa()).with_context(|| ib.name())?),
            };
            linf_labeled_distance(&la, &lb)?
        }
        Metric::Interleaving => {
            let fa = opts.filtration(&ia, None)?;
            let fb = opts.filtration(&ib, Some(fa.universe()))?;
            filtration_interleaving(&fa, &fb)?
        }
    };
    println!("{d}");
    Ok(())
}

fn config(gen: &GenArgs, seed: u64) -> ExperimentConfig {
    let linkage = match gen.method {
        Method::Upgma => Linkage::Upgma,
        Method::Single => Linkage::Single,
    };
    ExperimentConfig { taxa: gen.taxa, trees: gen.count, seed, linkage }
}

fn gen_trees(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    let trees = gen_random_treegrams(cfg)?;
    let width = trees.len().to_string().len();
    let mut newick = String::new();
    for (k, u) in trees.iter().enumerate() {
        write_file(&out.join(format!("tree_{:0width$}.csv", k + 1)), &write_matrix_csv(u))?;
        // single linkage of an ultrametric returns the same ultrametric
        newick.push_str(&agglomerate(u, Linkage::Single).to_newick());
        newick.push('\n');
    }
    write_file(&out.join("trees.nwk"), &newick)
}

fn progression_cmd(
    trees: &[PathBuf],
    cfg: &ExperimentConfig,
    mode: ProgressionMode,
    opts: &Options,
    out: &Path,
) -> Result<()> {
    let trees = if trees.is_empty() {
        cfg.validate()?;
        log::info!("generating {} {} trees over {} taxa, seed {}", cfg.trees, cfg.linkage, cfg.taxa, cfg.seed);
        gen_random_treegrams(cfg)?
    } else {
        load_ultranetworks(trees, opts)?
    };
    let modes: Vec<JoinMode> = match mode {
        ProgressionMode::Cliquegram => vec![JoinMode::Cliquegram],
        ProgressionMode::Facegram => vec![JoinMode::Facegram],
        ProgressionMode::Both => vec![JoinMode::Cliquegram, JoinMode::Facegram],
    };
    let mut runs = Vec::new();
    for m in modes {
        let p = bottleneck_progression(&trees, m)?;
        log::info!("{m}: first distance {}, monotone {}", p.rows[0].distance, p.monotone);
        runs.push(p);
    }
    let mut csv = String::from("k");
    for p in &runs {
        csv.push_str(&format!(",{}", p.mode));
    }
    csv.push('\n');
    for k in 0..trees.len() {
        csv.push_str(&(k + 1).to_string());
        for p in &runs {
            csv.push_str(&format!(",{}", p.rows[k].distance));
        }
        csv.push('\n');
    }
    write_file(&out.join("progression.csv"), &csv)?;
    let labels: Vec<String> = runs.iter().map(|p| p.mode.to_string()).collect();
    let series: Vec<(&str, Vec<(f64, f64)>)> = runs
        .iter()
        .zip(&labels)
        .map(|(p, l)| (l.as_str(), p.rows.iter().map(|r| (r.k as f64, r.distance)).collect()))
        .collect();
    let title = format!("{} trees over {} taxa", trees.len(), trees[0].len());
    write_file(
        &out.join("progression.svg"),
        &line_chart_svg(&series, &title, "trees joined", "bottleneck distance to full join"),
    )?;
    if let Some(p) = runs.iter().find(|p| !p.monotone) {
        bail!("{} partial joins are not monotone", p.mode);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let base = Options { merge_tol: cli.merge_tol, ultrametrize: false };
    let with = |ultrametrize: bool| Options { ultrametrize, ..base };
    match cli.command {
        Command::Validate { file } => validate(&file, &base),
        Command::Cliquegram { matrix, output } => {
            let input = read(&matrix)?;
            let Document::Matrix(net) = &input.doc else {
                bail!("{}: expected a matrix, found a {}", input.name(), input.doc.kind());
            };
            let net = match cli.merge_tol {
                Some(tol) if tol > 0.0 => net.coalesced(tol),
                _ => net.clone(),
            };
            emit(output.as_deref(), &gram_to_json(&cliquegram_from_network(&net)))
        }
        Command::Treegram { newick, index, ultrametrize, output } => {
            let input = read(&newick)?;
            let Document::Trees(trees) = &input.doc else {
                bail!("{}: expected Newick trees, found a {}", input.name(), input.doc.kind());
            };
            let Some(tree) = trees.get(index) else {
                bail!("{}: holds {} trees, no tree {index}", input.name(), trees.len());
            };
            let u = ultranetwork_from_newick(tree, ultrametrize).with_context(|| input.name())?;
            let u = match cli.merge_tol {
                Some(tol) if tol > 0.0 => Ultranetwork::new(u.coalesced(tol))?,
                _ => u,
            };
            emit(output.as_deref(), &gram_to_json(&treegram_from_ultranetwork(&u)))
        }
        Command::Join { mode, trees, ultrametrize, output } => {
            let grams = load_grams(&trees, &with(ultrametrize))?;
            log::info!("joining {} grams", grams.len());
            emit(output.as_deref(), &gram_to_json(&join_grams(&grams, mode.into())?))
        }
        Command::Mergegram(args) => mergegram_cmd(&args, &with(args.ultrametrize)),
        Command::Reeb { input, output } => {
            let input = read(&input)?;
            let reeb = face_reeb_graph(&base.gram(&input)?);
            log::info!("{} vertices, {} loops", reeb.total_vertices(), reeb.loop_count());
            emit(output.as_deref(), &reeb_to_dot(&reeb))
        }
        Command::Ph0 { matrix, output } => ph0_cmd(&matrix, output.as_deref(), &base),
        Command::Dist { metric, a, b } => dist_cmd(metric, &a, &b, &base),
        Command::GenTrees { gen, output } => {
            let cfg = config(&gen, cli.seed);
            cfg.validate()?;
            gen_trees(&cfg, &output)
        }
        Command::Experiment(Experiment::BottleneckProgression { trees, gen, mode, ultrametrize, output }) => {
            progression_cmd(&trees, &config(&gen, cli.seed), mode, &with(ultrametrize), &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("PHYLOLATTICE_LOG", "warn")).init();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
        log::warn!("thread pool: {e}");
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
