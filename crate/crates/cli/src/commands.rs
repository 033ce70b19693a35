use std::fs;
use std::path::Path;

use cascade_clock::cascade::{choose_initial_set, simulate_ic, simulate_lt};
use cascade_clock::clockwork::{distance, stretch_distort};
use cascade_clock::experiments::{sweep, write_results, Axis, GraphSpec, TrialConfig};
use cascade_clock::{
    estimators, CascadeParams, Clock, EstimationInput, EstimatorKind, Graph, InfectionSequence,
    ObservedSequence, Thresholds,
};
use log::info;
use serde::Deserialize;

use crate::{
    CascadeModel, Command, DistortArgs, EstimateArgs, EvaluateArgs, GenGraphArgs, GraphModel,
    SimulateArgs, SweepArgs,
};

pub enum Failure {
    /// Bad invocation: exit code 1.
    Usage(String),
    /// Invalid or unreadable data: exit code 2.
    Data(cascade_clock::Error),
}

impl From<cascade_clock::Error> for Failure {
    fn from(err: cascade_clock::Error) -> Self {
        Failure::Data(err)
    }
}

type Outcome = Result<(), Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::GenGraph(args) => gen_graph(args),
        Command::Simulate(args) => simulate(args),
        Command::Distort(args) => distort(args),
        Command::Estimate(args) => estimate(args),
        Command::Evaluate(args) => evaluate(args),
        Command::Sweep(args) => run_sweep(args),
    }
}

fn gen_graph(args: GenGraphArgs) -> Outcome {
    let graph = match args.model {
        GraphModel::Er => {
            let n = args
                .n
                .ok_or_else(|| Failure::Usage("--n is required for ER graphs".into()))?;
            GraphSpec::Er { n, alpha: args.alpha, p: args.p }.build(args.seed)?
        }
        GraphModel::Sbm => {
            let n = match (&args.sizes, args.n) {
                (Some(sizes), _) => sizes.iter().sum(),
                (None, Some(n)) => n,
                (None, None) => {
                    return Err(Failure::Usage("SBM needs --n or --sizes".into()));
                }
            };
            GraphSpec::Sbm {
                n,
                block_sizes: args.sizes,
                p_intra: args.p_intra,
                p_inter: args.p_inter,
            }
            .build(args.seed)?
        }
    };
    graph.save(&args.out)?;
    info!(
        "wrote graph with {} vertices and {} edges",
        graph.vertex_count(),
        graph.edge_count()
    );
    Ok(())
}

fn simulate(args: SimulateArgs) -> Outcome {
    let graph = Graph::load(&args.graph)?;
    let s0 = match args.s0 {
        Some(vertices) => vertices,
        None => choose_initial_set(graph.vertex_count(), args.s0_size, args.seed)?,
    };
    let seq = match args.model {
        CascadeModel::Ic => {
            let params = CascadeParams::new(args.pn, args.pe)?;
            simulate_ic(&graph, &params, &s0, args.max_steps, args.seed)?
        }
        CascadeModel::Lt => simulate_lt(
            &graph,
            &Thresholds::Uniform { seed: args.seed },
            &s0,
            args.max_steps,
        )?,
    };
    seq.save(&args.out)?;
    Ok(())
}

fn distort(args: DistortArgs) -> Outcome {
    let seq = InfectionSequence::load(&args.input)?;
    let (observed, clock) = stretch_distort(&seq, args.stretch, args.seed)?;
    observed.save(&args.out)?;
    clock.save(&args.clock_out)?;
    Ok(())
}

fn estimate(args: EstimateArgs) -> Outcome {
    let kind: EstimatorKind = args
        .estimator
        .parse()
        .map_err(|e: cascade_clock::Error| Failure::Usage(e.to_string()))?;
    let graph = Graph::load(&args.graph)?;
    let observed = ObservedSequence::load(&args.observed)?;
    let params = CascadeParams::new(args.pn, args.pe)?;
    let input = EstimationInput::new(&graph, params, &observed, args.s0_size)?;
    let record = estimators::run_estimator(kind, &input)?;
    record.clock.save(&args.out)?;
    let meta = serde_json::to_string_pretty(&record).map_err(cascade_clock::Error::from)?;
    match &args.meta {
        Some(path) => write_text(path, &meta)?,
        None => println!("{meta}"),
    }
    Ok(())
}

fn evaluate(args: EvaluateArgs) -> Outcome {
    let observed = ObservedSequence::load(&args.observed)?;
    let truth = Clock::load(&args.truth)?;
    let estimate = Clock::load(&args.estimate)?;
    let d: f64 = distance(&observed.sizes(), &truth, &estimate)?;
    println!("{d:?}");
    Ok(())
}

/// Sweep file: trial configuration fields plus optional sweep settings.
#[derive(Debug, Default, Deserialize)]
struct SweepFile {
    #[serde(flatten)]
    base: TrialConfig,
    axis: Option<String>,
    values: Option<Vec<f64>>,
    trials: Option<usize>,
}

fn run_sweep(args: SweepArgs) -> Outcome {
    let file = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| cascade_clock::Error::Io { path: path.clone(), source: e })?;
            serde_json::from_str::<SweepFile>(&text).map_err(cascade_clock::Error::from)?
        }
        None => SweepFile::default(),
    };
    let mut base = file.base;
    base.seed = args.seed;
    if let Some(n) = args.n {
        match &mut base.graph {
            GraphSpec::Er { n: target, .. } | GraphSpec::Sbm { n: target, .. } => *target = n,
        }
    }
    if let Some(p) = args.p {
        match &mut base.graph {
            GraphSpec::Er { p: target, .. } => *target = Some(p),
            GraphSpec::Sbm { .. } => {
                return Err(Failure::Usage("--p only applies to ER graphs".into()));
            }
        }
    }
    if let Some(pn) = args.pn {
        base.p_n = pn;
    }
    if let Some(pe) = args.pe {
        base.p_e = pe;
    }
    if let Some(stretch) = args.stretch {
        base.stretch = stretch;
    }
    if let Some(cap) = args.dp_cap {
        base.dp_cap = cap;
    }
    if let Some(names) = &args.estimator {
        base.estimators = names
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, cascade_clock::Error>>()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }

    let axis_name = args
        .axis
        .or(file.axis)
        .ok_or_else(|| Failure::Usage("sweep needs --axis (or `axis` in the config)".into()))?;
    let axis: Axis = axis_name
        .parse()
        .map_err(|e: cascade_clock::Error| Failure::Usage(e.to_string()))?;
    let values = args
        .values
        .or(file.values)
        .ok_or_else(|| Failure::Usage("sweep needs --values (or `values` in the config)".into()))?;
    let trials = args.trials.or(file.trials).unwrap_or(50);

    let threads = match std::env::var("CASCADE_CLOCK_THREADS") {
        Ok(v) => Some(v.parse::<usize>().map_err(|_| {
            Failure::Usage(format!("CASCADE_CLOCK_THREADS must be a positive integer, got `{v}`"))
        })?),
        Err(_) => None,
    };

    let table = sweep(&base, axis, &values, trials, threads)?;
    write_results(&table, &args.out)?;
    for row in &table.rows {
        eprintln!(
            "{}={} {}: {} trials, {} degenerate excluded, {} skipped",
            row.axis, row.value, row.estimator, row.trials, row.degenerate, row.skipped
        );
    }
    Ok(())
}

fn write_text(path: &Path, text: &str) -> Result<(), cascade_clock::Error> {
    fs::write(path, format!("{text}\n")).map_err(|e| cascade_clock::Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}
