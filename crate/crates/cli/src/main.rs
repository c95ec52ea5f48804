mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use boxlab_core::certificate::{box_rep_from_json, graph_hash, labels_to_json, Certificate, Verification};
use boxlab_core::constructions::{
    bipartite_power, build_g, build_g_prime, build_t, build_x, cobip_completion, lift_box_representation, FamilyGraph,
};
use boxlab_core::interval::{is_interval_graph, verify_box_representation, IntervalVerdict};
use boxlab_core::io::{read_graph, write_graph, Format};
use boxlab_core::random::{random_bipartite, random_rooted_tree};
use boxlab_core::recognition::{
    is_chordal, is_chordal_bipartite, is_simple_vertex, is_strongly_chordal, split_completion, CbgWitness,
    ChordalVerdict, CrossCheck, StronglyChordalVerdict,
};
use boxlab_core::solver::{
    boxicity_upper_from_parts, exact_boxicity, refute_boxicity_at_most, BoxicityCertificate, BoxicityOutcome,
    CertificateKind, RefuteOutcome, SolverConfig,
};
use boxlab_core::{Bipartition, BoxRep, Graph, Side};
use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use config::{FileConfig, SolverFlags, DEFAULT_SEED};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_EXCEEDED: u8 = 3;

#[derive(Parser)]
#[command(name = "boxlab", version, about = "Boxicity, interval models and chordal bipartite constructions")]
struct Cli {
    /// TOML file with `budget`, `threads`, `max_b`, `refute_cap`, `seed`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Tree,
    Power,
    #[value(name = "G")]
    G,
    #[value(name = "Gprime")]
    GPrime,
    #[value(name = "X")]
    X,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Edges,
    G6,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Interval,
    Chordal,
    StronglyChordal,
    Cbg,
}

#[derive(clap::Args)]
struct SolverArgs {
    #[arg(long)]
    max_b: Option<usize>,
    /// Search-node budget.
    #[arg(long, env = "BOXLAB_BUDGET")]
    budget: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    /// Largest vertex count accepted for exhaustive refutation.
    #[arg(long)]
    refute_cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family graph (or the bipartite power of an input graph).
    Gen {
        family: FamilyArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "edges")]
        format: FormatArg,
        /// Build past the size guardrail.
        #[arg(long)]
        force: bool,
        /// Input graph for `power`.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Decide class membership and emit a certificate.
    Recognize {
        class: ClassArg,
        input: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Exact boxicity, or a single `box <= b` question with `--refute-at`.
    Boxicity {
        input: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        refute_at: Option<usize>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Turn a box representation of a bipartite graph into one of its co-bipartite completion.
    Lift {
        graph: PathBuf,
        rep: PathBuf,
        /// Comma-separated side A; defaults to the computed bipartition.
        #[arg(long, value_delimiter = ',')]
        side_a: Option<Vec<usize>>,
        /// Certificate for the completion.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the completed graph here.
        #[arg(long)]
        completion: Option<PathBuf>,
    },
    /// Re-check a certificate against a graph.
    Verify {
        cert: PathBuf,
        graph: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Run the randomized property suites.
    Check {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let file = FileConfig::load(cli.config.as_deref())?;
    match cli.command {
        Command::Gen {
            family,
            k,
            out,
            format,
            force,
            input,
        } => cmd_gen(family, k, &out, format, force, input.as_deref()),
        Command::Recognize { class, input, cert } => cmd_recognize(class, &input, cert.as_deref()),
        Command::Boxicity {
            input,
            solver,
            refute_at,
            cert,
        } => cmd_boxicity(&input, solver_config(&solver, &file), refute_at, cert.as_deref()),
        Command::Lift {
            graph,
            rep,
            side_a,
            out,
            completion,
        } => cmd_lift(&graph, &rep, side_a, out.as_deref(), completion.as_deref()),
        Command::Verify { cert, graph, solver } => cmd_verify(&cert, &graph, solver_config(&solver, &file)),
        Command::Check { seed, trials } => cmd_check(seed.or(file.seed).unwrap_or(DEFAULT_SEED), trials),
    }
}

fn solver_config(args: &SolverArgs, file: &FileConfig) -> SolverConfig {
    config::resolve(
        SolverFlags {
            budget: args.budget,
            threads: args.threads,
            max_b: args.max_b,
            refute_cap: args.refute_cap,
        },
        file,
    )
}

fn format_of(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6") => Format::Graph6,
        _ => Format::EdgeList,
    }
}

fn read_graph_file(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_graph(&text, format_of(path)).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn labels_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".labels.json");
    PathBuf::from(s)
}

fn cmd_gen(family: FamilyArg, k: usize, out: &Path, format: FormatArg, force: bool, input: Option<&Path>) -> Result<u8> {
    let fg: Option<FamilyGraph> = match family {
        FamilyArg::Tree => Some(build_t(k)?.1),
        FamilyArg::G => Some(build_g(k, force)?),
        FamilyArg::GPrime => Some(build_g_prime(k, force)?),
        FamilyArg::X => Some(build_x(k, force)?),
        FamilyArg::Power => None,
    };
    let graph = match (&fg, input) {
        (Some(fg), _) => fg.graph.clone(),
        (None, Some(input)) => bipartite_power(&read_graph_file(input)?, k)?,
        (None, None) => bail!("`gen power` needs --input"),
    };
    let format = match format {
        FormatArg::Edges => Format::EdgeList,
        FormatArg::G6 => Format::Graph6,
    };
    write_file(out, &write_graph(&graph, format))?;
    let mut line = format!("GEN {} n={} m={}", out.display(), graph.n(), graph.edge_count());
    if let Some(fg) = &fg {
        let labels = labels_path(out);
        write_file(&labels, &labels_to_json(fg))?;
        line.push_str(&format!(" labels={}", labels.display()));
    }
    println!("{line}");
    Ok(EXIT_OK)
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Short inline form of a certificate for the verdict line.
fn summary(cert: &Certificate) -> String {
    match cert {
        Certificate::Upper { b, .. } => format!("upper:b={b}"),
        Certificate::Refutation { b, .. } => format!("refutation:b={b}"),
        Certificate::Perfect { ordering, .. }
        | Certificate::Simple { ordering, .. }
        | Certificate::ChordalBipartite { ordering, .. } => format!("{}:{}", cert.kind(), join(ordering)),
        Certificate::ChordlessCycle { cycle, .. } | Certificate::LongCycle { cycle, .. } | Certificate::OddCycle { cycle, .. } => {
            format!("{}:{}", cert.kind(), join(cycle))
        }
        Certificate::Stuck { residual, .. } => format!("stuck:{}", join(residual)),
        Certificate::NoConsecutiveArrangement { cliques, .. } => format!("no-consecutive-arrangement:cliques={cliques}"),
    }
}

fn emit(cert: &Certificate, path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => {
            write_file(p, &cert.to_json())?;
            Ok(p.display().to_string())
        }
        None => Ok(summary(cert)),
    }
}

fn cmd_recognize(class: ClassArg, input: &Path, cert_path: Option<&Path>) -> Result<u8> {
    let g = read_graph_file(input)?;
    let hash = graph_hash(&g);
    let (name, yes, cert) = match class {
        ClassArg::Interval => {
            let cert = match is_interval_graph(&g) {
                IntervalVerdict::Interval(rep) => {
                    Certificate::from_boxicity(&boxicity_upper_from_parts(&g, vec![rep])?)
                }
                IntervalVerdict::NotChordal(cycle) => Certificate::ChordlessCycle { cycle, graph_hash: hash },
                IntervalVerdict::NoConsecutiveArrangement { cliques, states_explored } => {
                    Certificate::NoConsecutiveArrangement {
                        cliques,
                        states_explored,
                        graph_hash: hash,
                    }
                }
            };
            ("interval", matches!(cert, Certificate::Upper { .. }), cert)
        }
        ClassArg::Chordal => match is_chordal(&g) {
            ChordalVerdict::Chordal(c) => ("chordal", true, Certificate::from_elimination(&g, &c)),
            ChordalVerdict::NotChordal(cycle) => ("chordal", false, Certificate::ChordlessCycle { cycle, graph_hash: hash }),
        },
        ClassArg::StronglyChordal => match is_strongly_chordal(&g) {
            StronglyChordalVerdict::StronglyChordal(c) => ("strongly-chordal", true, Certificate::from_elimination(&g, &c)),
            StronglyChordalVerdict::Stuck { residual, .. } => (
                "strongly-chordal",
                false,
                Certificate::Stuck {
                    residual,
                    split_side_a: None,
                    graph_hash: hash,
                },
            ),
        },
        ClassArg::Cbg => {
            let v = is_chordal_bipartite(&g)?;
            if v.cross_check == CrossCheck::Inconclusive {
                eprintln!("note: bounded induced-cycle search could not confirm the negative answer");
            }
            let side_a = v.bipartition.as_ref().map(Bipartition::a);
            let cert = match (v.certificate, v.witness) {
                (Some(c), _) => Certificate::ChordalBipartite {
                    side_a: side_a.clone().unwrap_or_default(),
                    ordering: c.ordering,
                    graph_hash: hash,
                },
                (None, Some(CbgWitness::OddCycle(cycle))) => Certificate::OddCycle { cycle, graph_hash: hash },
                (None, Some(CbgWitness::LongCycle(cycle))) => Certificate::LongCycle { cycle, graph_hash: hash },
                (None, Some(CbgWitness::Stuck(residual))) => Certificate::Stuck {
                    residual,
                    split_side_a: side_a,
                    graph_hash: hash,
                },
                (None, None) => bail!("negative chordal bipartite verdict without a witness"),
            };
            ("cbg", v.is_cbg, cert)
        }
    };
    let witness = emit(&cert, cert_path)?;
    println!("CLASS {name} {} witness={witness}", if yes { "yes" } else { "no" });
    Ok(if yes { EXIT_OK } else { EXIT_NEGATIVE })
}

/// `out.json` -> `out.refute-2.json`.
fn sibling(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let ext = path.extension().map(|e| format!(".{}", e.to_string_lossy())).unwrap_or_default();
    path.with_file_name(format!("{stem}.{tag}{ext}"))
}

fn write_certs(main: &BoxicityCertificate, refutations: &[BoxicityCertificate], path: Option<&Path>) -> Result<String> {
    let Some(path) = path else {
        return Ok(String::new());
    };
    write_file(path, &Certificate::from_boxicity(main).to_json())?;
    for r in refutations {
        write_file(&sibling(path, &format!("refute-{}", r.b)), &Certificate::from_boxicity(r).to_json())?;
    }
    Ok(format!(" witness={}", path.display()))
}

fn cmd_boxicity(input: &Path, cfg: SolverConfig, refute_at: Option<usize>, cert: Option<&Path>) -> Result<u8> {
    let g = read_graph_file(input)?;
    let name = input.display();
    if let Some(b) = refute_at {
        let hash = graph_hash(&g);
        return Ok(match refute_boxicity_at_most(&g, b, &cfg)? {
            RefuteOutcome::Refuted { nodes } => {
                let c = BoxicityCertificate {
                    kind: CertificateKind::Refutation,
                    b,
                    nodes_explored: nodes,
                    graph_hash: hash,
                };
                let w = write_certs(&c, &[], cert)?;
                println!("BOXICITY {name} box>{b} (refuted) nodes={nodes}{w}");
                EXIT_NEGATIVE
            }
            RefuteOutcome::Representation { rep, nodes } => {
                let mut c = boxicity_upper_from_parts(&g, rep.into_reps())?;
                c.nodes_explored = nodes;
                let w = write_certs(&c, &[], cert)?;
                println!("BOXICITY {name} box<={b} nodes={nodes}{w}");
                EXIT_OK
            }
            RefuteOutcome::Exceeded { nodes } => {
                println!("BOXICITY {name} exceeded nodes={nodes}");
                EXIT_EXCEEDED
            }
        });
    }
    Ok(match exact_boxicity(&g, &cfg)? {
        BoxicityOutcome::Exact {
            boxicity,
            upper,
            refutations,
        } => {
            let w = write_certs(&upper, &refutations, cert)?;
            println!("BOXICITY {name} box={boxicity}{w}");
            EXIT_OK
        }
        BoxicityOutcome::AboveMax { max_b, refutations } => {
            let last = refutations.last().ok_or_else(|| anyhow!("no refutation recorded"))?;
            let w = write_certs(last, &refutations[..refutations.len() - 1], cert)?;
            println!("BOXICITY {name} box>{max_b} (refuted){w}");
            EXIT_NEGATIVE
        }
        BoxicityOutcome::Exceeded { b, nodes, .. } => {
            println!("BOXICITY {name} exceeded b={b} nodes={nodes}");
            EXIT_EXCEEDED
        }
    })
}

fn cmd_lift(
    graph: &Path,
    rep_path: &Path,
    side_a: Option<Vec<usize>>,
    out: Option<&Path>,
    completion: Option<&Path>,
) -> Result<u8> {
    let g = read_graph_file(graph)?;
    let text = fs::read_to_string(rep_path).with_context(|| format!("reading {}", rep_path.display()))?;
    let rep: BoxRep = box_rep_from_json(&text)?;
    let p = match side_a {
        Some(a) => Bipartition::new(&g, &a)?,
        None => g
            .bipartition()
            .map_err(|cycle| anyhow!("graph is not bipartite (odd cycle {cycle:?})"))?,
    };
    let lifted = lift_box_representation(&g, &rep, &p)?;
    let target = cobip_completion(&g, &p)?;
    let cert = Certificate::from_boxicity(&boxicity_upper_from_parts(&target, lifted.into_reps())?);
    if let Some(path) = completion {
        write_file(path, &write_graph(&target, format_of(path)))?;
    }
    let witness = match out {
        Some(path) => {
            write_file(path, &cert.to_json())?;
            path.display().to_string()
        }
        None => cert.to_json(),
    };
    let Certificate::Upper { b, .. } = &cert else { unreachable!() };
    println!("LIFT {} b={b} verified witness={witness}", graph.display());
    Ok(EXIT_OK)
}

fn cmd_verify(cert_path: &Path, graph: &Path, cfg: SolverConfig) -> Result<u8> {
    let g = read_graph_file(graph)?;
    let text = fs::read_to_string(cert_path).with_context(|| format!("reading {}", cert_path.display()))?;
    let bare = serde_json::from_str::<serde_json::Value>(&text)
        .map(|v| v.get("kind").is_none())
        .unwrap_or(false);
    let verdict = if bare {
        let rep = box_rep_from_json(&text)?;
        if rep.n() != g.n() {
            Verification::Rejected(format!("representation has {} vertices, graph has {}", rep.n(), g.n()))
        } else {
            match verify_box_representation(&g, &rep)? {
                None => Verification::Accepted,
                Some(d) => Verification::Rejected(boxlab_core::Error::from(d).to_string()),
            }
        }
    } else {
        Certificate::from_json(&text)?.verify(&g, &cfg)?
    };
    Ok(match verdict {
        Verification::Accepted => {
            println!("VERIFY {} accepted", cert_path.display());
            EXIT_OK
        }
        Verification::Rejected(why) => {
            println!("VERIFY {} rejected ({why})", cert_path.display());
            EXIT_NEGATIVE
        }
    })
}

fn cmd_check(seed: u64, trials: usize) -> Result<u8> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failed = false;
    type Suite = fn(&mut StdRng) -> Result<bool>;
    let suites: [(&str, Suite); 4] = [
        ("leaf-removal", check_leaf_removal),
        ("farthest-leaf-simple", check_farthest_leaf),
        ("power-is-cbg", check_power_cbg),
        ("lift", check_lift),
    ];
    for (name, suite) in suites {
        let mut passed = 0;
        for _ in 0..trials {
            if suite(&mut rng)? {
                passed += 1;
            }
        }
        let ok = passed == trials;
        failed |= !ok;
        println!("CHECK {name} {} {passed}/{trials} seed={seed}", if ok { "pass" } else { "fail" });
    }
    Ok(if failed { EXIT_NEGATIVE } else { EXIT_OK })
}

fn check_leaf_removal(rng: &mut StdRng) -> Result<bool> {
    let t = random_rooted_tree(rng.gen_range(2..=14), rng);
    let leaves = t.leaves();
    let x = leaves[rng.gen_range(0..leaves.len())];
    for k in [1, 3, 5] {
        let after = bipartite_power(t.graph(), k)?.remove_vertex(x)?.graph;
        let before = bipartite_power(&t.graph().remove_vertex(x)?.graph, k)?;
        if after != before {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_farthest_leaf(rng: &mut StdRng) -> Result<bool> {
    let t = random_rooted_tree(rng.gen_range(2..=14), rng);
    let x = t.farthest_from(t.root());
    let p = t.graph().bipartition().map_err(|c| anyhow!("tree with odd cycle {c:?}"))?;
    let side_a = p.members(p.side(x)).to_vec();
    for k in [1, 3, 5] {
        let power = bipartite_power(t.graph(), k)?;
        let split = split_completion(&power, &Bipartition::new(&power, &side_a)?, Side::B)?;
        if is_simple_vertex(&split, x).is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_power_cbg(rng: &mut StdRng) -> Result<bool> {
    let t = random_rooted_tree(rng.gen_range(1..=14), rng);
    for k in [1, 3, 5] {
        if !is_chordal_bipartite(&bipartite_power(t.graph(), k)?)?.is_cbg {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_lift(rng: &mut StdRng) -> Result<bool> {
    let n = rng.gen_range(2..=8);
    let g = random_bipartite(n, 0.5, rng);
    let p = g.bipartition().map_err(|c| anyhow!("odd cycle {c:?}"))?;
    let reps = match exact_boxicity(&g, &SolverConfig::default())? {
        BoxicityOutcome::Exact {
            upper: BoxicityCertificate {
                kind: CertificateKind::Upper(reps),
                ..
            },
            ..
        } => reps,
        other => bail!("no exact boxicity: {other:?}"),
    };
    let rep = if reps.is_empty() {
        BoxRep::new(vec![boxlab_core::IntervalRep::new(&vec![(0, 0); n])?])?
    } else {
        BoxRep::new(reps)?
    };
    let lifted = lift_box_representation(&g, &rep, &p)?;
    Ok(lifted.realize() == cobip_completion(&g, &p)?)
}
