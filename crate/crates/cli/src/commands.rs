use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use outpart::cnf::{parse_dimacs, FormulaMode};
use outpart::gadgets::{
    find_no_even_cycle_outregular, make_chain_gadget, make_connector, make_d2_gadget, make_forcers, make_forcing_gadget,
    make_kernel_gadgets, make_variable_gadget, make_xz_forcers, thomassen_seed, GadgetError, GadgetInstance,
};
use outpart::generators::{circulant, directed_cycle, random_digraph, random_out_regular, rotational_tournament, seeded_rng};
use outpart::oracle::{
    coloring_brute_force, exhaustive_partition_search, kernel_search, pruned_partition_search, sat_brute_force,
    sat_partition_search, OracleError, Property, SearchOptions,
};
use outpart::partition::{check_kernel, kernel_to_text, parse_kernel};
use outpart::reductions::{
    reduce_coloring_to_reducing_partition, reduce_nae_to_kk_partition, reduce_sat_to_delta_partition,
    reduce_sat_to_kernel, ReductionArtifact, ReductionError,
};
use outpart::solvers::{
    solve_k_all_partition_2k_plus_1, solve_k_all_partition_2k_with_budget, solve_one_all_2partition_with_budget,
    solve_one_max_2partition_with_budget, SolveError, SolveOutcome,
};
use outpart::structure::{BudgetExceeded, DEFAULT_CYCLE_BUDGET};
use outpart::{parse_edge_list, Digraph, Partition, Verdict};

use crate::manifest::Inputs;
use crate::{
    CheckArgs, Cli, Command, Engine, GadgetArgs, GadgetKind, GenerateArgs, GenerateKind, OracleCommand, Outcome,
    ReduceArgs, ReduceKind, SolveArgs, Variant,
};

/// Marks errors that map to exit code 3.
#[derive(Debug)]
struct Unsupported(String);

impl std::fmt::Display for Unsupported {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Unsupported {}

pub fn name(command: &Command) -> &'static str {
    match command {
        Command::Check(_) => "check",
        Command::Solve(_) => "solve",
        Command::Reduce(_) => "reduce",
        Command::Gadget(_) => "gadget",
        Command::Oracle(_) => "oracle",
        Command::Generate(_) => "generate",
    }
}

/// 3 for unsupported regimes and exhausted budgets, 2 for everything else.
pub fn exit_code(e: &anyhow::Error) -> i32 {
    for cause in e.chain() {
        let unsupported = cause.is::<Unsupported>()
            || cause.is::<BudgetExceeded>()
            || matches!(cause.downcast_ref(), Some(OracleError::Budget(_)))
            || matches!(cause.downcast_ref(), Some(SolveError::Unsupported(_) | SolveError::Indeterminate(_)))
            || matches!(cause.downcast_ref(), Some(GadgetError::Unsupported(_) | GadgetError::Budget(_)))
            || matches!(cause.downcast_ref(), Some(ReductionError::Unsupported(_)));
        if unsupported {
            return 3;
        }
    }
    2
}

pub fn run(cli: &Cli, inputs: &mut Inputs) -> Result<Outcome> {
    let opts = SearchOptions {
        budget: cli.global.budget,
        jobs: cli.global.jobs.max(1),
    };
    match &cli.command {
        Command::Check(a) => check(a, inputs),
        Command::Solve(a) => solve(a, inputs, opts),
        Command::Reduce(a) => reduce(a, inputs),
        Command::Gadget(a) => gadget(a),
        Command::Oracle(o) => oracle(o, inputs, opts),
        Command::Generate(a) => generate(a, cli.global.seed),
    }
}

fn read_digraph(path: &Path, inputs: &mut Inputs) -> Result<Digraph> {
    let text = inputs.read(path)?;
    parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn verdict_outcome(verdict: Verdict) -> Outcome {
    match verdict {
        Verdict::Valid => {
            println!("Valid");
            Outcome {
                code: 0,
                summary: "valid".into(),
                witness: None,
            }
        }
        Verdict::Violation(v) => {
            println!("{v}");
            Outcome {
                code: 1,
                summary: format!("violation: {v}"),
                witness: None,
            }
        }
    }
}

fn parse_caps(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once(',').ok_or_else(|| anyhow!("expected K1,K2, got `{s}`"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn check(a: &CheckArgs, inputs: &mut Inputs) -> Result<Outcome> {
    let d = read_digraph(&a.digraph, inputs)?;
    let text = inputs.read(&a.witness)?;
    if a.kernel {
        let kernel = parse_kernel(&text)?;
        return Ok(verdict_outcome(check_kernel(&d, &kernel)?));
    }
    let prop = if a.all_reducing {
        Property::AllReducing {
            k: a.k.ok_or_else(|| anyhow!("--all-reducing needs -k"))?,
        }
    } else if a.max_reducing {
        Property::MaxReducing {
            k: a.k.ok_or_else(|| anyhow!("--max-reducing needs -k"))?,
        }
    } else if let Some(caps) = &a.delta {
        let (k1, k2) = parse_caps(caps)?;
        Property::DeltaBounded { k1, k2 }
    } else {
        Property::Majority
    };
    let pi = Partition::parse(&text, a.p)?;
    Ok(verdict_outcome(prop.check(&d, &pi)?))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<Option<String>> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            Ok(Some(path.display().to_string()))
        }
        None => {
            print!("{text}");
            Ok(None)
        }
    }
}

fn solve(a: &SolveArgs, inputs: &mut Inputs, opts: SearchOptions) -> Result<Outcome> {
    let d = read_digraph(&a.digraph, inputs)?;
    let (k, p) = (a.k, a.p);
    let solved = match (a.variant, k, p) {
        (Variant::All, 1, 2) => Some(solve_one_all_2partition_with_budget(&d, opts.budget)?),
        (Variant::Max, 1, 2) => Some(solve_one_max_2partition_with_budget(&d, opts.budget)?),
        // a k-all-reducing partition is also k-max-reducing
        (_, k, p) if k >= 1 && p == 2 * k + 1 => Some(SolveOutcome::Partition(solve_k_all_partition_2k_plus_1(&d, k)?)),
        (Variant::All, k, p) if k >= 2 && p == 2 * k => Some(solve_k_all_partition_2k_with_budget(&d, k, opts.budget)?),
        _ => None,
    };
    let solved = match solved {
        Some(s) => s,
        None if a.oracle => {
            let prop = match a.variant {
                Variant::All => Property::AllReducing { k },
                Variant::Max => Property::MaxReducing { k },
            };
            match pruned_partition_search(&d, prop, p, opts)? {
                Some(pi) => SolveOutcome::Partition(pi),
                None => {
                    println!("none (exhaustive)");
                    return Ok(Outcome {
                        code: 1,
                        summary: "no partition (exhaustive oracle)".into(),
                        witness: None,
                    });
                }
            }
        }
        None => {
            return Err(Unsupported(format!(
                "no polynomial algorithm for {:?} with k = {k}, p = {p} (NP-complete regime, use --oracle)",
                a.variant
            ))
            .into())
        }
    };
    match solved {
        SolveOutcome::Partition(pi) => {
            let witness = emit(&pi.to_text(), a.out.as_ref())?;
            Ok(Outcome {
                code: 0,
                summary: "partition found".into(),
                witness,
            })
        }
        SolveOutcome::NonExistence(ob) => {
            let report = serde_json::to_string(&ob)?;
            println!("NonExistence {report}");
            Ok(Outcome {
                code: 1,
                summary: format!("no partition: {report}"),
                witness: None,
            })
        }
    }
}

fn write_artifact(prefix: &Path, digraph: &Digraph, json: &str) -> Result<String> {
    let edges = prefix.with_extension("edges");
    let roles = prefix.with_extension("json");
    std::fs::write(&edges, digraph.to_edge_list()).with_context(|| format!("writing {}", edges.display()))?;
    std::fs::write(&roles, json).with_context(|| format!("writing {}", roles.display()))?;
    Ok(edges.display().to_string())
}

fn reduce(a: &ReduceArgs, inputs: &mut Inputs) -> Result<Outcome> {
    let text = inputs.read(&a.input)?;
    let artifact: ReductionArtifact = match a.kind {
        ReduceKind::Coloring => {
            let g = parse_edge_list(&text)?.underlying_graph();
            reduce_coloring_to_reducing_partition(&g, a.k, a.p)?.artifact
        }
        ReduceKind::Nae => {
            let f = parse_dimacs(&text, FormulaMode::MonotoneNae)?;
            reduce_nae_to_kk_partition(&f, a.k)?.artifact
        }
        kind => {
            let f = parse_dimacs(&text, FormulaMode::Plain3Sat)?;
            match kind {
                ReduceKind::Kernel => reduce_sat_to_kernel(&f, false)?.artifact,
                ReduceKind::KernelStrong => reduce_sat_to_kernel(&f, true)?.artifact,
                _ => reduce_sat_to_delta_partition(&f, a.k1, a.k2)?.artifact,
            }
        }
    };
    let path = write_artifact(&a.out, &artifact.digraph, &artifact.to_json())?;
    let summary = format!(
        "{}: {} vertices, {} arcs",
        artifact.provenance,
        artifact.digraph.n(),
        artifact.digraph.arc_count()
    );
    println!("{summary}");
    Ok(Outcome {
        code: 0,
        summary,
        witness: Some(path),
    })
}

fn gadget(a: &GadgetArgs) -> Result<Outcome> {
    let pair = |(x, z): (GadgetInstance, GadgetInstance)| vec![("X", x), ("Z", z)];
    let parts: Vec<(&str, GadgetInstance)> = match a.kind {
        GadgetKind::Connector => vec![("connector", make_connector(a.i, a.p)?)],
        GadgetKind::Forcing => vec![("forcing", make_forcing_gadget(a.k, &thomassen_seed(a.k)?)?)],
        GadgetKind::KernelW => vec![("W", make_kernel_gadgets().0)],
        GadgetKind::KernelH => vec![("H", make_kernel_gadgets().1)],
        GadgetKind::Variable => vec![("variable", make_variable_gadget(a.k1, a.k2)?)],
        GadgetKind::Forcers => {
            let (one, two) = make_forcers(a.k1, a.k2, &thomassen_seed(a.k2)?)?;
            vec![("force1", one), ("force2", two)]
        }
        GadgetKind::Xz => pair(make_xz_forcers(a.k2, &thomassen_seed(a.k2 - 1)?)?),
        GadgetKind::D2 => vec![("D2", make_d2_gadget(a.k, a.p)?)],
        GadgetKind::Chain => vec![("chain", make_chain_gadget(a.k, a.p, a.n)?)],
        GadgetKind::Seed => {
            let cert = find_no_even_cycle_outregular(a.k, 0, a.n.max(7), DEFAULT_CYCLE_BUDGET)?;
            for line in &cert.transcript {
                eprintln!("{line}");
            }
            let roles = [("T".to_string(), cert.digraph.vertices().collect())].into_iter().collect();
            vec![("seed", GadgetInstance { digraph: cert.digraph, roles })]
        }
    };
    let mut witness = None;
    let mut summary = Vec::new();
    for (label, g) in &parts {
        summary.push(format!("{label}: {} vertices, {} arcs", g.digraph.n(), g.digraph.arc_count()));
        match &a.out {
            Some(prefix) => {
                let stem = if parts.len() == 1 {
                    prefix.clone()
                } else {
                    PathBuf::from(format!("{}.{label}", prefix.display()))
                };
                let path = write_artifact(&stem, &g.digraph, &g.roles_json())?;
                witness.get_or_insert(path);
            }
            None => {
                if parts.len() > 1 {
                    println!("# {label}");
                }
                print!("{}", g.digraph.to_edge_list());
                println!("{}", g.roles_json());
            }
        }
    }
    Ok(Outcome {
        code: 0,
        summary: summary.join("; "),
        witness,
    })
}

fn found<T>(value: Option<T>, render: impl FnOnce(&T) -> String) -> Outcome {
    match value {
        Some(v) => {
            print!("{}", render(&v));
            Outcome {
                code: 0,
                summary: "found".into(),
                witness: None,
            }
        }
        None => {
            println!("none (exhaustive)");
            Outcome {
                code: 1,
                summary: "none (exhaustive)".into(),
                witness: None,
            }
        }
    }
}

fn oracle(o: &OracleCommand, inputs: &mut Inputs, opts: SearchOptions) -> Result<Outcome> {
    match o {
        OracleCommand::Partition {
            digraph,
            property,
            p,
            engine,
        } => {
            let d = read_digraph(digraph, inputs)?;
            let prop: Property = property.parse().map_err(|e| anyhow!("{e}"))?;
            let w = match engine {
                Engine::Exhaustive => exhaustive_partition_search(&d, prop, *p, opts)?,
                Engine::Pruned => pruned_partition_search(&d, prop, *p, opts)?,
                Engine::Cdcl => sat_partition_search(&d, prop, *p, opts)?,
            };
            Ok(found(w, |pi| pi.to_text()))
        }
        OracleCommand::Kernel { digraph } => {
            let d = read_digraph(digraph, inputs)?;
            Ok(found(kernel_search(&d), |k| kernel_to_text(k)))
        }
        OracleCommand::Sat { cnf, nae } => {
            let mode = if *nae {
                FormulaMode::MonotoneNae
            } else {
                FormulaMode::Plain3Sat
            };
            let f = parse_dimacs(&inputs.read(cnf)?, mode)?;
            Ok(found(sat_brute_force(&f)?, |a| {
                let lits: Vec<String> = a
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| if b { format!("{}", i + 1) } else { format!("-{}", i + 1) })
                    .collect();
                format!("v {} 0\n", lits.join(" "))
            }))
        }
        OracleCommand::Color { graph, p } => {
            let g = read_digraph(graph, inputs)?.underlying_graph();
            let c = coloring_brute_force(&g, *p, opts.budget)?;
            Ok(found(c, |c| c.iter().enumerate().map(|(v, c)| format!("{v} {c}\n")).collect()))
        }
    }
}

fn generate(a: &GenerateArgs, seed: u64) -> Result<Outcome> {
    let d = match a.kind {
        GenerateKind::Cycle => directed_cycle(a.n),
        GenerateKind::Circulant => {
            let steps: Vec<usize> = a
                .steps
                .split(',')
                .map(|s| s.trim().parse())
                .collect::<Result<_, _>>()
                .context("parsing --steps")?;
            circulant(a.n, &steps)
        }
        GenerateKind::Tournament => rotational_tournament(a.n),
        GenerateKind::Random => {
            if !(0.0..=1.0).contains(&a.density) {
                bail!("--density must lie in [0, 1]");
            }
            random_digraph(&mut seeded_rng(seed), a.n, a.density)
        }
        GenerateKind::OutRegular => {
            if a.k >= a.n {
                bail!("out-degree {} needs more than {} vertices", a.k, a.n);
            }
            random_out_regular(&mut seeded_rng(seed), a.n, a.k)
        }
    };
    print!("{}", d.to_edge_list());
    Ok(Outcome {
        code: 0,
        summary: format!("{} vertices, {} arcs", d.n(), d.arc_count()),
        witness: None,
    })
}
