//! Command-line front end. `run` is the whole program minus process exit,
//! so it can be driven from tests.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use crate::cohomology::{enumerate_rank2_subgroups, h1_z2};
use crate::flips::{default_max_steps, edge_flip, flip_site, promote_to_ii4_free, FlipError};
use crate::generators::{layered_solid_torus, twisted_layered_loop};
use crate::report::{analyze, to_json, AnalysisReport};
use crate::tri::{are_isomorphic, check_closed_orientable, compute_skeleton, parse_triangulation, serialize, Triangulation};

#[derive(Debug, Parser)]
#[command(name = "z2norm", version, about = "Z2 colourings, normal surfaces and flips of 3-manifold triangulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit a generated triangulation in TRI-v1.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Print the analysis report as JSON.
    Analyze {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Worker threads when several files are given.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Apply a 4-4 flip about a degree-4 edge.
    Flip {
        file: PathBuf,
        #[arg(long)]
        edge: usize,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..2))]
        axis: u8,
    },
    /// Flip (II,4) layered solid tori away for the first rank-2 subgroup.
    Promote {
        file: PathBuf,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Test two triangulations for combinatorial isomorphism.
    Iso { a: PathBuf, b: PathBuf },
    /// Print skeleton counts and the edge-degree histogram.
    Skeleton { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum Family {
    /// Twisted layered loop with k tetrahedra.
    TwistedLoop {
        #[arg(long)]
        k: usize,
    },
    /// Layered solid torus; each entry picks the edge to layer on (0, 1 or 2).
    Lst {
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        seq: Vec<u8>,
    },
}

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn check(message: impl ToString) -> Failure {
        Failure { code: EXIT_CHECK, message: message.to_string() }
    }

    fn usage(message: impl ToString) -> Failure {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read_input(&mut self, path: &PathBuf) -> Result<(String, Triangulation), Failure> {
        let name = path.display().to_string();
        let text = if name == "-" {
            let mut buf = String::new();
            self.stdin.read_to_string(&mut buf).map_err(|e| Failure::usage(format!("stdin: {e}")))?;
            buf
        } else {
            std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{name}: {e}")))?
        };
        let t = parse_triangulation(&text).map_err(|e| Failure::usage(format!("{name}: {e}")))?;
        Ok((name, t))
    }

    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        self.stdout.write_all(text.as_bytes()).map_err(|e| Failure::check(format!("write: {e}")))
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut io = Io { stdin, stdout };
    match dispatch(cli.command, &mut io, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, io: &mut Io, stderr: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Gen { family } => {
            let t = match family {
                Family::TwistedLoop { k } => twisted_layered_loop(k).map_err(Failure::usage)?,
                Family::Lst { seq } => layered_solid_torus(&seq).map_err(Failure::usage)?.triangulation,
            };
            io.emit(&serialize(&t))?;
            Ok(EXIT_OK)
        }
        Command::Analyze { files, jobs } => analyze_files(&files, jobs, io, stderr),
        Command::Flip { file, edge, axis } => {
            let (_, t) = io.read_input(&file)?;
            check_closed_orientable(&t).map_err(Failure::check)?;
            let s = compute_skeleton(&t).map_err(Failure::check)?;
            if edge >= s.edge_count() {
                return Err(Failure::usage(format!("edge {edge} out of range (0..{})", s.edge_count())));
            }
            let site = flip_site(&t, &s, edge).map_err(Failure::check)?;
            let r = edge_flip(&t, &site, axis).map_err(Failure::check)?;
            io.emit(&serialize(&r.triangulation))?;
            Ok(EXIT_OK)
        }
        Command::Promote { file, max_steps } => {
            let (_, t) = io.read_input(&file)?;
            check_closed_orientable(&t).map_err(Failure::check)?;
            let s = compute_skeleton(&t).map_err(Failure::check)?;
            if s.vertex_count() != 1 {
                return Err(Failure::check(format!("promotion needs one vertex, found {}", s.vertex_count())));
            }
            let h = h1_z2(&s);
            let subgroups = enumerate_rank2_subgroups(&h).map_err(Failure::check)?;
            let max_steps = max_steps.unwrap_or_else(|| default_max_steps(&t));
            match promote_to_ii4_free(&t, &subgroups[0], max_steps) {
                Ok(p) => {
                    let mut out = String::new();
                    for (i, step) in p.trace.iter().enumerate() {
                        out += &format!("# step {}: ii4_lsts={} type_iv_tets={}\n", i + 1, step.ii4_lsts, step.type_iv_tets);
                    }
                    out += &serialize(&p.triangulation);
                    io.emit(&out)?;
                    Ok(EXIT_OK)
                }
                Err(e @ (FlipError::StepLimitExceeded { .. } | FlipError::PromotionStuck { .. })) => {
                    let (FlipError::StepLimitExceeded { trace, .. } | FlipError::PromotionStuck { trace, .. }) = &e
                    else {
                        unreachable!()
                    };
                    for (i, step) in trace.iter().enumerate() {
                        let _ = writeln!(stderr, "# step {}: ii4_lsts={} type_iv_tets={}", i + 1, step.ii4_lsts, step.type_iv_tets);
                    }
                    Err(Failure::check(e))
                }
                Err(e) => Err(Failure::check(e)),
            }
        }
        Command::Iso { a, b } => {
            let (_, ta) = io.read_input(&a)?;
            let (_, tb) = io.read_input(&b)?;
            if are_isomorphic(&ta, &tb).is_some() {
                io.emit("isomorphic\n")?;
                Ok(EXIT_OK)
            } else {
                io.emit("not isomorphic\n")?;
                Ok(EXIT_CHECK)
            }
        }
        Command::Skeleton { file } => {
            let (_, t) = io.read_input(&file)?;
            let s = compute_skeleton(&t).map_err(Failure::check)?;
            let mut out = format!(
                "V={} E={} F={} T={}\n",
                s.vertex_count(),
                s.edge_count(),
                s.face_count(),
                t.tet_count()
            );
            for (d, n) in s.degree_histogram() {
                out += &format!("degree {d}: {n}\n");
            }
            io.emit(&out)?;
            Ok(EXIT_OK)
        }
    }
}

fn analyze_files(files: &[PathBuf], jobs: Option<usize>, io: &mut Io, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let mut inputs = Vec::with_capacity(files.len());
    for f in files {
        inputs.push(io.read_input(f)?);
    }
    let work = |(name, t): &(String, Triangulation)| (name.clone(), analyze(t).map_err(|e| e.to_string()));
    let results: Vec<(String, Result<AnalysisReport, String>)> = match jobs {
        Some(n) if n > 1 && inputs.len() > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Failure::usage(format!("--jobs: {e}")))?;
            pool.install(|| inputs.par_iter().map(work).collect())
        }
        _ => inputs.iter().map(work).collect(),
    };
    let mut code = EXIT_OK;
    let mut out = String::new();
    for (name, result) in &results {
        match result {
            Ok(report) => {
                if report.subgroups.iter().any(|s| !s.identities.all_hold()) {
                    let _ = writeln!(stderr, "{name}: an identity check failed");
                    code = EXIT_CHECK;
                }
                out += &to_json(report);
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: {name}: {e}");
                code = EXIT_CHECK;
            }
        }
    }
    io.emit(&out)?;
    Ok(code)
}
