//! Command-line front end for `cubepath`.
//!
//! Reports go to stdout (or `--output`), diagnostics to stderr. Verdicts
//! such as "not spatial" are report content; exit codes only say whether
//! the command ran: 0 ok, 2 usage, 3 malformed input, 4 resource cap.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use cubepath::chains::{enumerate_chains, ChainCategory};
use cubepath::dpath::{self, parse_dpath};
use cubepath::flow::{deadlock_states, path_space_model, resolve_grade_bound};
use cubepath::pcs::{self, CellWord};
use cubepath::spatial::{self, CubeSubcomplex};
use cubepath::{pv, Error, PrecubicalSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "cubepath", version, about = "Directed path spaces of precubical sets")]
pub struct Cli {
    /// Write the report here instead of stdout (`-` is stdout).
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every violated precubical identity.
    Validate { input: PathBuf },
    /// Cell counts and basic invariants.
    Info { input: PathBuf },
    /// Generate a standard complex in `pcs v1` form.
    #[command(subcommand)]
    Gen(Gen),
    /// Per-grade chain categories, components and Betti numbers.
    Pathspace(Endpoints),
    /// Objects and morphisms of the chain categories.
    Chains(Endpoints),
    /// Homology of the path space model, per grade.
    Homology(Endpoints),
    /// Whether cells are determined by their extreme vertices.
    Proper { input: PathBuf },
    /// Spatiality verdict with certificate paths for each defect.
    Spatial {
        input: PathBuf,
        /// Use only this grid parameter instead of the default escalation.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Check, naturalize and compute the carrier of a PL d-path.
    Dpath {
        /// `pcs v1` file.
        complex: PathBuf,
        /// `dpath v1` file.
        path: PathBuf,
    },
    /// PV programs.
    #[command(subcommand)]
    Pv(Pv),
}

#[derive(Subcommand, Debug)]
pub enum Gen {
    /// The standard cube.
    Cube { n: usize },
    /// Boundary of the standard cube.
    Boundary { n: usize },
    /// Cubes of the given dimensions glued end to end.
    Chain {
        #[arg(required = true)]
        dims: Vec<usize>,
    },
    /// Two `n`-cubes glued along a subcomplex of their boundary.
    Amalgam {
        n: usize,
        /// Comma-separated boundary words generating the glued part
        /// (default: the whole boundary).
        #[arg(long)]
        along: Option<String>,
    },
    /// One vertex with one edge from it to itself.
    Loop,
}

#[derive(Subcommand, Debug)]
pub enum Pv {
    /// Compile a program to its state space.
    Compile { input: PathBuf },
    /// Properness, path space from the initial to the final state, deadlocks.
    Analyze { input: PathBuf },
}

#[derive(Args, Debug)]
pub struct Endpoints {
    /// `pcs v1` file, or `-` for stdin.
    pub input: PathBuf,
    /// Initial vertex id.
    #[arg(long)]
    pub from: String,
    /// Final vertex id.
    #[arg(long)]
    pub to: String,
    /// Largest grade; required when directed cycles connect the endpoints.
    #[arg(long)]
    pub max_grade: Option<usize>,
}

/// A failed invocation: exit code and message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit(_) => EXIT_RESOURCE,
            Error::GradeBoundRequired | Error::GridTooSmall(_) => EXIT_USAGE,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

/// Source of the text read for `-`.
pub trait Stdin {
    fn read_all(&mut self) -> std::io::Result<String>;
}

impl<R: Read> Stdin for R {
    fn read_all(&mut self) -> std::io::Result<String> {
        let mut s = String::new();
        self.read_to_string(&mut s)?;
        Ok(s)
    }
}

struct Inputs<'a> {
    stdin: &'a mut dyn Stdin,
    used: bool,
}

impl Inputs<'_> {
    fn text(&mut self, path: &PathBuf) -> Result<String, Failure> {
        if path.as_os_str() == "-" {
            if self.used {
                return Err(usage("stdin can only be used for one input"));
            }
            self.used = true;
            return self.stdin.read_all().map_err(|e| Failure { code: EXIT_INPUT, message: format!("stdin: {e}") });
        }
        std::fs::read_to_string(path)
            .map_err(|e| Failure { code: EXIT_INPUT, message: format!("{}: {e}", path.display()) })
    }

    fn complex(&mut self, path: &PathBuf) -> Result<PrecubicalSet, Failure> {
        Ok(pcs::read_pcs(&self.text(path)?)?)
    }
}

/// Runs a parsed command and returns the report.
pub fn execute(cli: &Cli, stdin: &mut dyn Stdin) -> Result<String, Failure> {
    let mut inputs = Inputs { stdin, used: false };
    match &cli.command {
        Command::Validate { input } => {
            let raw = pcs::parse_pcs(&inputs.text(input)?)?;
            let report = raw.validate();
            let mut out = String::new();
            for v in &report.violations {
                let _ = writeln!(out, "{v}");
            }
            let _ = writeln!(out, "violations = {}", report.violations.len());
            Ok(out)
        }
        Command::Info { input } => Ok(info(&inputs.complex(input)?)),
        Command::Gen(g) => gen(g),
        Command::Pathspace(e) => {
            let k = inputs.complex(&e.input)?;
            let (from, to) = (k.vertex(&e.from)?, k.vertex(&e.to)?);
            Ok(path_space_model(&k, from, to, e.max_grade)?.report(&k))
        }
        Command::Homology(e) => {
            let k = inputs.complex(&e.input)?;
            let (from, to) = (k.vertex(&e.from)?, k.vertex(&e.to)?);
            let model = path_space_model(&k, from, to, e.max_grade)?;
            let mut out = String::new();
            for g in &model.grades {
                let _ = writeln!(out, "grade {}\n{}", g.grade, g.homology);
            }
            Ok(out)
        }
        Command::Chains(e) => {
            let k = inputs.complex(&e.input)?;
            let (from, to) = (k.vertex(&e.from)?, k.vertex(&e.to)?);
            let bound = resolve_grade_bound(&k, from, to, e.max_grade)?;
            let mut out = String::from("chains v1\n");
            for (grade, objects) in enumerate_chains(&k, from, to, bound)? {
                if !objects.is_empty() {
                    out.push_str(&ChainCategory::from_objects(&k, from, to, grade, objects)?.report(&k));
                }
            }
            Ok(out)
        }
        Command::Proper { input } => {
            let k = inputs.complex(input)?;
            Ok(spatial::proper_report(&k, &spatial::is_proper(&k)))
        }
        Command::Spatial { input, grid } => {
            let k = inputs.complex(input)?;
            let report = match grid {
                Some(n) if *n < 2 => return Err(Error::GridTooSmall(*n).into()),
                Some(n) => spatial::is_spatial_with(&k, &[*n])?,
                None => spatial::is_spatial(&k)?,
            };
            Ok(spatial::spatial_report(&k, &report))
        }
        Command::Dpath { complex, path } => {
            let k = inputs.complex(complex)?;
            let p = parse_dpath(&inputs.text(path)?)?;
            Ok(dpath_report(&k, &p))
        }
        Command::Pv(Pv::Compile { input }) => {
            let program = pv::parse_pv(&inputs.text(input)?)?;
            Ok(pv::compile_pv(&program)?.to_pcs_text())
        }
        Command::Pv(Pv::Analyze { input }) => {
            let program = pv::parse_pv(&inputs.text(input)?)?;
            pv_analyze(&pv::compile_pv(&program)?)
        }
    }
}

fn info(k: &PrecubicalSet) -> String {
    let counts = k.counts();
    let euler: i64 = counts.iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
    let dim = k.max_dim().map_or("empty".to_string(), |d| d.to_string());
    let cells: Vec<String> = counts.iter().map(ToString::to_string).collect();
    let proper = if spatial::is_proper(k).proper { "yes" } else { "no" };
    format!("dim {dim}\ncells {}\ntotal {}\neuler {euler}\nproper {proper}\n", cells.join(" "), k.total_cells())
}

fn gen(g: &Gen) -> Result<String, Failure> {
    let k = match g {
        Gen::Cube { n } => pcs::standard_cube(*n),
        Gen::Boundary { n } => pcs::boundary_cube(*n),
        Gen::Chain { dims } => pcs::chain_cube(dims)?,
        Gen::Loop => pcs::loop_complex(),
        Gen::Amalgam { n, along } => {
            let a = match along {
                None => pcs::boundary_cube(*n),
                Some(words) => {
                    let words = words
                        .split(',')
                        .map(|w| w.trim().parse::<CellWord>().map_err(|e| usage(format!("bad word `{w}`: {e}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    CubeSubcomplex::generated_by(*n, &words).map_err(|e| usage(e.to_string()))?.to_complex()
                }
            };
            pcs::amalgam(*n, &a)?.0
        }
    };
    Ok(pcs::write_pcs(&k))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dpath_report(k: &PrecubicalSet, p: &dpath::PlDPath) -> String {
    if let Err(e) = dpath::check_tame(k, p) {
        return format!("tame: no ({e})\n");
    }
    let mut out = String::from("tame: yes\n");
    let _ = writeln!(out, "natural: {}", yes_no(dpath::is_natural(p)));
    let _ = writeln!(out, "length {}", p.length());
    let ends = p.initial_vertex(k).and_then(|a| Ok((a, p.final_vertex(k)?)));
    if let Ok((a, b)) = ends {
        let _ = writeln!(out, "from {} to {}", k.id(a), k.id(b));
    }
    match dpath::carrier_of(k, p) {
        Ok(c) => {
            let cells: Vec<String> = c.0.iter().map(|(id, n)| format!("{id}:{n}")).collect();
            let _ = writeln!(out, "carrier {}", cells.join(" "));
        }
        Err(e) => {
            let _ = writeln!(out, "carrier: error ({e})");
        }
    }
    match dpath::naturalize(k, p) {
        Ok(nat) => {
            out.push_str("naturalized\n");
            out.push_str(&nat.to_string());
        }
        Err(e) => {
            let _ = writeln!(out, "naturalized: error ({e})");
        }
    }
    out
}

fn pv_analyze(c: &pv::CompiledPv) -> Result<String, Failure> {
    let k = &c.complex;
    let mut out = format!("states {}\ncells {}\n", k.num_cells(0), k.total_cells());
    let _ = writeln!(out, "proper: {}", yes_no(spatial::is_proper(k).proper));
    let _ = writeln!(out, "init {}", k.id(c.init));
    let Some(fin) = c.final_state else {
        out.push_str("final: forbidden\n");
        return Ok(out);
    };
    let _ = writeln!(out, "final {}", k.id(fin));
    let dead = deadlock_states(k, c.init, fin)?;
    let ids: Vec<&str> = dead.iter().map(|&v| k.id(v)).collect();
    let _ = writeln!(out, "deadlocks {}{}{}", dead.len(), if ids.is_empty() { "" } else { " : " }, ids.join(" "));
    out.push_str(&path_space_model(k, c.init, fin, None)?.report(k));
    Ok(out)
}

/// Parses `argv`, runs, writes the report; returns the exit code.
pub fn run<I, T>(
    argv: I,
    stdin: &mut dyn Stdin,
    stdout: &mut dyn std::io::Write,
    stderr: &mut dyn std::io::Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, stdin) {
        Ok(report) => {
            let written = match cli.output.as_ref().filter(|p| p.as_os_str() != "-") {
                Some(path) => std::fs::write(path, report),
                None => stdout.write_all(report.as_bytes()),
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(stderr, "error: cannot write report: {e}");
                    EXIT_INPUT
                }
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
