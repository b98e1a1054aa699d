//! `qcg`: batch access to weight enumeration, twisted cohomology, external
//! edge cocycles and the factorization checks.
//!
//! Exit status is 0 on success, 1 when a verification fails (the output
//! carries a witness) and 2 on bad input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use qcg_core::cohomology::{brute_force_class_count, cohomology_group_order, CocycleTable};
use qcg_core::external::{construct_external_cocycle, parity_reports, ExternalReport};
use qcg_core::factorization::{characterize_cocycle, decompose_weights, verify_characterization, verify_functoriality};
use qcg_core::graph::{cut_edges, parse_graph, Cycle, GraphFile};
use qcg_core::io::{cycle_ids, parse_cocycle, weights_tsv, write_cocycle};
use qcg_core::representation::{character, rep_matrix_cycle};
use qcg_core::{Level, WeightSpace};

#[derive(Parser)]
#[command(
    name = "qcg",
    version,
    about = "Admissible weights and twisted cohomology of unitrivalent graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Graph file with `edge` and `boundary` lines.
    #[arg(long)]
    graph: PathBuf,
    /// Level k.
    #[arg(long)]
    level: u32,
    /// Work bound for exhaustive enumerations.
    #[arg(long, default_value_t = 1_000_000)]
    cap: u128,
    /// Output file, `-` for stdout.
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Subcommand)]
enum Command {
    /// Admissible weights as TSV rows of doubled labels.
    Enumerate(Common),
    /// Orbits of the homology action with their stabilizers.
    Orbits(Common),
    /// Order of the first twisted cohomology and per-orbit stabilizers.
    Cohomology(Common),
    /// An external edge cocycle with its per-orbit report.
    ExtCocycle(Common),
    /// The monomial matrix of a cycle.
    Rep {
        #[command(flatten)]
        common: Common,
        /// Comma-separated edge ids of the cycle.
        #[arg(long)]
        cycle: String,
        /// Cocycle table; the external edge cocycle when omitted.
        #[arg(long)]
        cocycle: Option<PathBuf>,
    },
    /// Check the parity identity on every orbit.
    VerifyParity(Common),
    /// Check that the external class restricts to external classes.
    VerifyFunctorial(Common),
    /// Check necklace restrictions against the standard cocycle.
    VerifyCharacterization {
        #[command(flatten)]
        common: Common,
        /// Check this cocycle's necklace restrictions instead.
        #[arg(long)]
        cocycle: Option<PathBuf>,
    },
    /// Cut edges and count the weights of the two parts per cut label.
    Cut {
        #[command(flatten)]
        common: Common,
        /// Comma-separated edge ids to cut.
        #[arg(long)]
        edges: String,
        /// Edge ids whose components form the first part; all when omitted.
        #[arg(long)]
        first: Option<String>,
    },
    /// Count cohomology classes by brute force and compare with the order.
    OracleCount(Common),
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{context}{source}")]
    Core { context: String, source: qcg_core::Error },
    #[error("{0}")]
    Usage(String),
}

impl From<qcg_core::Error> for CliError {
    fn from(source: qcg_core::Error) -> Self {
        CliError::Core {
            context: String::new(),
            source,
        }
    }
}

/// Report text and whether every check passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, passed: true }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(common: &Common) -> Result<Arc<WeightSpace>, CliError> {
    let text = read(&common.graph)?;
    let GraphFile { graph, boundary } = parse_graph(&text).map_err(|source| CliError::Core {
        context: format!("{}: ", common.graph.display()),
        source,
    })?;
    Ok(WeightSpace::shared(graph, Level::new(common.level)?, boundary)?)
}

fn load_cocycle(space: &Arc<WeightSpace>, path: &Path) -> Result<CocycleTable, CliError> {
    parse_cocycle(space.clone(), &read(path)?).map_err(|source| CliError::Core {
        context: format!("{}: ", path.display()),
        source,
    })
}

fn ids(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn orbit_lines(space: &WeightSpace, out: &mut String) {
    for o in 0..space.orbit_count() {
        let basis: Vec<String> = space
            .stabilizer(o)
            .iter()
            .map(|c| cycle_ids(space, &space.cycle(c)))
            .collect();
        let basis = if basis.is_empty() {
            "-".to_owned()
        } else {
            basis.join(" ")
        };
        writeln!(
            out,
            "orbit {o} rep {} size {} stabilizer-dim {} basis {basis}",
            space.weight(space.representative(o)).compact(),
            space.orbit_members(o).len(),
            space.stabilizer_dim(o),
        )
        .unwrap();
    }
}

fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Enumerate(c) => Ok(Outcome::ok(weights_tsv(&*load(c)?))),
        Command::Orbits(c) => {
            let s = load(c)?;
            let mut out = format!("orbits {}\n", s.orbit_count());
            orbit_lines(&s, &mut out);
            Ok(Outcome::ok(out))
        }
        Command::Cohomology(c) => {
            let s = load(c)?;
            let mut out = format!("order {}\n", cohomology_group_order(&s));
            orbit_lines(&s, &mut out);
            Ok(Outcome::ok(out))
        }
        Command::ExtCocycle(c) => {
            let s = load(c)?;
            let report = ExternalReport::new(&s)?;
            let mut out = report.to_string();
            match construct_external_cocycle(s.clone()) {
                Ok(t) => {
                    out.push_str(&write_cocycle(&t));
                    Ok(Outcome::ok(out))
                }
                Err(e @ qcg_core::Error::ParityFailure { .. }) => {
                    writeln!(out, "FAIL {e}").unwrap();
                    Ok(Outcome {
                        text: out,
                        passed: false,
                    })
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Rep { common, cycle, cocycle } => {
            let s = load(common)?;
            let t = match cocycle {
                Some(p) => load_cocycle(&s, p)?,
                None => construct_external_cocycle(s.clone())?,
            };
            let lambda = Cycle::from_edge_ids(s.graph(), &ids(cycle))?;
            let coords = s.coordinates(&lambda);
            let mut out = format!("character {}\n", character(&t, &coords)?);
            out.push_str(&rep_matrix_cycle(&t, &lambda)?.to_string());
            Ok(Outcome::ok(out))
        }
        Command::VerifyParity(c) => {
            let s = load(c)?;
            let mut out = String::new();
            let mut passed = true;
            for r in parity_reports(&s)? {
                match &r.violation {
                    None => writeln!(
                        out,
                        "PASS orbit {} rep {}",
                        r.orbit,
                        s.weight(r.representative).compact()
                    ),
                    Some(v) => {
                        passed = false;
                        writeln!(
                            out,
                            "FAIL orbit {} rep {} witness {}",
                            r.orbit,
                            s.weight(r.representative).compact(),
                            v.describe(s.graph())
                        )
                    }
                }
                .unwrap();
            }
            Ok(Outcome { text: out, passed })
        }
        Command::VerifyFunctorial(c) => {
            let report = verify_functoriality(load(c)?, c.cap)?;
            Ok(Outcome {
                passed: report.passed(),
                text: report.to_string(),
            })
        }
        Command::VerifyCharacterization { common, cocycle } => {
            let s = load(common)?;
            let report = match cocycle {
                Some(p) => characterize_cocycle(&load_cocycle(&s, p)?, common.cap)?,
                None => verify_characterization(s, common.cap)?,
            };
            Ok(Outcome {
                passed: report.passed(),
                text: report.to_string(),
            })
        }
        Command::Cut { common, edges, first } => {
            let s = load(common)?;
            let g = s.graph();
            let cut: Vec<usize> = ids(edges)
                .into_iter()
                .map(|id| {
                    g.edge_index(id)
                        .ok_or_else(|| qcg_core::Error::UnknownEdge(id.to_owned()))
                })
                .collect::<Result<_, _>>()?;
            let cg = cut_edges(g, &cut)?;
            let mut chosen = vec![first.is_none(); cg.graph.component_count()];
            if let Some(list) = first {
                for id in ids(list) {
                    let e = (0..cg.graph.edge_count())
                        .find(|&e| cg.graph.edge_id(e) == id)
                        .ok_or_else(|| CliError::Usage(format!("no edge `{id}` in the cut graph")))?;
                    chosen[cg.graph.component_of_edge(e)] = true;
                }
            }
            let dec = cg.split(&chosen);
            let mut out = String::new();
            for (name, part) in [("first", &dec.first), ("second", &dec.second)] {
                writeln!(out, "part {name}").unwrap();
                for e in 0..part.graph.edge_count() {
                    let [a, b] = part.graph.ends(e);
                    writeln!(
                        out,
                        "  edge {} {} {}",
                        part.graph.edge_id(e),
                        part.graph.vertex_id(a),
                        part.graph.vertex_id(b)
                    )
                    .unwrap();
                }
            }
            let split = decompose_weights(&s, &dec)?;
            let mut total = 0;
            for (labels, (w1, w2)) in &split {
                let labels: Vec<String> = labels.iter().map(u32::to_string).collect();
                writeln!(out, "labels {}\t{}\t{}", labels.join(","), w1.len(), w2.len()).unwrap();
                total += w1.len() * w2.len();
            }
            let passed = total == s.len();
            writeln!(
                out,
                "total {total} whole {} {}",
                s.len(),
                if passed { "PASS" } else { "FAIL" }
            )
            .unwrap();
            Ok(Outcome { text: out, passed })
        }
        Command::OracleCount(c) => {
            let s = load(c)?;
            let order = cohomology_group_order(&s);
            let count = brute_force_class_count(s, c.cap)?;
            let passed = count == order;
            let verdict = if passed { "PASS" } else { "FAIL" };
            Ok(Outcome {
                text: format!("brute-force {count}\norder {order}\n{verdict}\n"),
                passed,
            })
        }
    }
}

fn output_of(command: &Command) -> &str {
    match command {
        Command::Enumerate(c)
        | Command::Orbits(c)
        | Command::Cohomology(c)
        | Command::ExtCocycle(c)
        | Command::VerifyParity(c)
        | Command::VerifyFunctorial(c)
        | Command::OracleCount(c) => &c.output,
        Command::Rep { common, .. } | Command::VerifyCharacterization { common, .. } | Command::Cut { common, .. } => {
            &common.output
        }
    }
}

fn emit(target: &str, text: &str) -> Result<(), CliError> {
    if target == "-" {
        print!("{text}");
        Ok(())
    } else {
        std::fs::write(target, text).map_err(|source| CliError::Io {
            path: target.to_owned(),
            source,
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let message: Vec<&str> = text
                .lines()
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect();
            eprintln!("error: {}", message.join(" ").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    let outcome = run(&cli.command).and_then(|o| emit(output_of(&cli.command), &o.text).map(|_| o.passed));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
