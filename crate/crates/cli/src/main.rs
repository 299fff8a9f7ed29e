//! `glbc`: command-line certificates for simplicial spheres, balls and polytopes.
//!
//! Exit codes: 0 verified/true, 1 refuted/false, 2 precondition failed,
//! 3 resource budget exceeded, 4 input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use glbc_core::algebra::{
    gin, sr_ideal, wlp_check, GinOptions, Ideal, WlpVerdict, DEFAULT_MAX_SPAIRS,
};
use glbc_core::generators::{self, GeneratorSpec};
use glbc_core::geometry::{certify_geometric_triangulation, PointConfiguration};
use glbc_core::homology::{betti_numbers, is_homology_ball, is_homology_sphere};
use glbc_core::verify::{
    glbc_verify, is_shellable, reconstruct_check, FailureWitness, GlbcMode, GlbcOptions, Verdict,
};
use glbc_core::{Error, FieldSpec, SimplicialComplex};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "glbc", version, about = "Exact certificates for the generalized lower bound theorem")]
struct Cli {
    /// Emit the full report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    SimplexBoundary,
    CrossPolytope,
    Cycle,
    Cyclic,
    StackedBall,
    StackedSphere,
    StackedPolytope,
    JoinStacked,
    K8,
    K9,
    /// The Rudin ball, read from `--fixture` or `GLBC_RUDIN_FIXTURE`.
    Rudin,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an example complex.
    Gen {
        family: Family,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout when absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Coordinate output for `stacked-polytope`.
        #[arg(long)]
        coords: Option<PathBuf>,
        /// Facet file for `rudin`.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Print f- and h-vectors.
    Hvector { file: PathBuf },
    /// Compute Δ(i).
    DeltaI {
        file: PathBuf,
        #[arg(long = "i")]
        i: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reduced Betti numbers.
    Homology {
        file: PathBuf,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
    },
    /// Test whether a complex is a homology sphere.
    CheckSphere {
        file: PathBuf,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
    },
    /// Test whether a complex is a homology ball.
    CheckBall {
        file: PathBuf,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
    },
    /// Certify that Δ(d-r) is an (r-1)-stacked ball with boundary Δ.
    Glbc {
        file: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
        /// Also test the weak Lefschetz property.
        #[arg(long)]
        wlp: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Do not verify that the input is a homology sphere.
        #[arg(long)]
        skip_sphere_check: bool,
    },
    /// Check that an (r-1)-stacked ball is Δ(d-r) of its boundary.
    Reconstruct {
        file: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
    },
    /// Test the weak Lefschetz property over ℚ.
    Wlp {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generic initial ideal of an ideal file or of a Stanley–Reisner ideal.
    Gin {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_SPAIRS)]
        max_spairs: usize,
        /// Compute only up to this degree.
        #[arg(long)]
        degree_cap: Option<u32>,
    },
    /// Certify Δ(d-r) as a geometric triangulation of the polytope.
    GeomVerify {
        coords: PathBuf,
        complex: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Search for a shelling order.
    Shellable {
        file: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
}

/// Output of one command: a human summary, a JSON report and an exit code.
struct Outcome {
    text: String,
    report: Value,
    code: u8,
}

fn outcome(text: impl Into<String>, report: impl serde::Serialize, code: u8) -> Result<Outcome, Error> {
    Ok(Outcome { text: text.into(), report: serde_json::to_value(report)?, code })
}

fn read_complex(path: &Path) -> Result<SimplicialComplex, Error> {
    SimplicialComplex::from_json(&fs::read_to_string(path)?)
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => Ok(fs::write(p, format!("{text}\n"))?),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn required(value: Option<usize>, name: &str) -> Result<usize, Error> {
    value.ok_or_else(|| Error::InvalidParameter(format!("this family needs --{name}")))
}

fn describe(w: &FailureWitness) -> String {
    match w.face {
        Some(f) => format!("\n{}: {} at {f:?}", w.check, w.detail),
        None => format!("\n{}: {}", w.check, w.detail),
    }
}

fn verdict_code(v: Verdict) -> u8 {
    v.exit_code() as u8
}

fn generate(
    family: Family,
    (d, n, m, k): (Option<usize>, Option<usize>, Option<usize>, Option<usize>),
    seed: u64,
    output: Option<&Path>,
    coords: Option<&Path>,
    fixture: Option<&Path>,
) -> Result<Outcome, Error> {
    let complex = match family {
        Family::SimplexBoundary => generators::standard_complex(&GeneratorSpec::SimplexBoundary { d: required(d, "d")? })?,
        Family::CrossPolytope => generators::standard_complex(&GeneratorSpec::CrossPolytope { d: required(d, "d")? })?,
        Family::Cycle => generators::standard_complex(&GeneratorSpec::Cycle { m: required(m, "m")? })?,
        Family::Cyclic => {
            generators::standard_complex(&GeneratorSpec::Cyclic { d: required(d, "d")?, n: required(n, "n")? })?
        }
        Family::StackedBall => generators::stacked_ball_and_sphere(required(d, "d")?, required(n, "n")?, seed)?.ball,
        Family::StackedSphere => generators::stacked_ball_and_sphere(required(d, "d")?, required(n, "n")?, seed)?.sphere,
        Family::StackedPolytope => {
            let path = coords.ok_or_else(|| Error::InvalidParameter("stacked-polytope needs --coords".into()))?;
            let (sphere, points) = generators::stacked_polytope_coords(required(d, "d")?, required(n, "n")?, seed)?;
            fs::write(path, format!("{}\n", points.to_json()))?;
            sphere
        }
        Family::JoinStacked => generators::join_stacked_ball(required(m, "m")?, required(k, "k")?)?,
        Family::K8 => generators::k8(),
        Family::K9 => generators::k9(),
        Family::Rudin => generators::rudin_fixture(fixture)?,
    };
    let text = complex.to_json();
    write_or_print(output, &text)?;
    let summary = format!("{} facets on {} vertices, dimension {}", complex.facets().len(), complex.n(), complex.dim());
    let report = json!({ "n": complex.n(), "dim": complex.dim(), "facets": complex.facets().len() });
    if output.is_none() {
        // The complex itself went to stdout.
        return Ok(Outcome { text: String::new(), report: Value::Null, code: 0 });
    }
    Ok(Outcome { text: summary, report, code: 0 })
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Gen { family, d, n, m, k, seed, output, coords, fixture } => {
            generate(*family, (*d, *n, *m, *k), *seed, output.as_deref(), coords.as_deref(), fixture.as_deref())
        }
        Command::Hvector { file } => {
            let c = read_complex(file)?;
            let (f, h) = (c.f_vector(), c.h_vector());
            outcome(format!("f = {:?}\nh = {:?}", f.0, h.0), json!({ "f_vector": f, "h_vector": h }), 0)
        }
        Command::DeltaI { file, i, output } => {
            let c = read_complex(file)?.delta_i(*i);
            write_or_print(output.as_deref(), &c.to_json())?;
            if output.is_none() {
                return Ok(Outcome { text: String::new(), report: Value::Null, code: 0 });
            }
            outcome(format!("Δ({i}) has {} facets", c.facets().len()), c.to_file(), 0)
        }
        Command::Homology { file, field } => {
            let b = betti_numbers(&read_complex(file)?, *field);
            outcome(format!("reduced Betti numbers over {field} (degrees -1..): {:?}", b.values), b, 0)
        }
        Command::CheckSphere { file, field } => {
            let v = is_homology_sphere(&read_complex(file)?, *field);
            let text = match &v.witness {
                None => format!("homology {}-sphere over {field}", v.dim),
                Some(w) => format!("not a homology sphere over {field}: link of {:?} fails in degree {}", w.face, w.index),
            };
            let code = u8::from(!v.is_sphere());
            outcome(text, v, code)
        }
        Command::CheckBall { file, field } => {
            let v = is_homology_ball(&read_complex(file)?, *field);
            let text = match &v.witness {
                None => format!("homology {}-ball over {field}", v.dim),
                Some(w) => format!("not a homology ball over {field}: witness {:?} in degree {}", w.face, w.index),
            };
            let code = u8::from(!v.is_ball());
            outcome(text, v, code)
        }
        Command::Glbc { file, r, field, wlp, seed, skip_sphere_check } => {
            let c = read_complex(file)?;
            let opts = GlbcOptions { check_sphere: !skip_sphere_check, wlp_seed: wlp.then_some(*seed) };
            let rep = glbc_verify(&c, *r, *field, &opts)?;
            let mode = match rep.mode {
                GlbcMode::Full => "full mode (h-equality hypothesis)",
                GlbcMode::ReconstructionOnly => "reconstruction-only mode (r = (d+1)/2, no h-vector hypothesis)",
            };
            let mut text = format!("{:?}: d = {}, r = {}, {mode}", rep.verdict, rep.d, rep.r);
            if let Some(w) = &rep.witness {
                text += &describe(w);
            }
            if let Some(i) = rep.stackedness_index {
                text += &format!("\nstackedness index {i}");
            }
            let code = verdict_code(rep.verdict);
            outcome(text, rep, code)
        }
        Command::Reconstruct { file, r, field } => {
            let rep = reconstruct_check(&read_complex(file)?, *r, *field)?;
            let mut text = format!("{:?}: d = {}, r = {}", rep.verdict, rep.d, rep.r);
            if let Some(w) = &rep.witness {
                text += &describe(w);
            }
            let code = verdict_code(rep.verdict);
            outcome(text, rep, code)
        }
        Command::Wlp { file, seed } => {
            let rep = wlp_check(&read_complex(file)?, *seed)?;
            let code = match rep.verdict {
                WlpVerdict::Holds => 0,
                WlpVerdict::FailsAtDegree { .. } => 1,
                WlpVerdict::LsopNotFound => 2,
            };
            let text = format!(
                "{:?}\ndims {:?}\nranks {:?}\nw attempts {}, Θ attempts {}",
                rep.verdict, rep.dims, rep.ranks, rep.w_attempts, rep.theta_attempts
            );
            outcome(text, rep, code)
        }
        Command::Gin { file, seed, max_spairs, degree_cap } => {
            let text = fs::read_to_string(file)?;
            let value: Value = serde_json::from_str(&text)?;
            let ideal = if value.get("generators").is_some() {
                Ideal::from_json(&text)?
            } else {
                sr_ideal(&SimplicialComplex::from_json(&text)?)
            };
            let res = gin(&ideal, &GinOptions { seed: *seed, max_spairs: *max_spairs, degree_cap: *degree_cap })?;
            let gens: Vec<String> = res.generators.iter().map(|m| m.to_string()).collect();
            let summary = format!(
                "gin = ({})\nstrongly stable: {}\nseeds {} and {} agree",
                gens.join(", "),
                res.strongly_stable,
                res.seed,
                res.second_seed
            );
            let code = u8::from(!res.strongly_stable);
            outcome(summary, res, code)
        }
        Command::GeomVerify { coords, complex, r } => {
            let points = PointConfiguration::from_json(&fs::read_to_string(coords)?)?;
            let boundary = read_complex(complex)?;
            let d = points.dim();
            if *r < 1 || *r > d {
                return Err(Error::InvalidParameter(format!("need 1 <= r <= d = {d}")));
            }
            let candidate = boundary.delta_i(d - r);
            let rep = certify_geometric_triangulation(&candidate, &boundary, &points)?;
            let mut text = format!(
                "{}: Δ({}) with {} facets; volume {} vs facet sum {}",
                if rep.pass { "pass" } else { "fail" },
                d - r,
                candidate.facets().len(),
                rep.volume_polytope,
                rep.volume_facets
            );
            if let Some((a, b)) = rep.offending_pair {
                text += &format!("\noverlapping facets {a:?} and {b:?}");
            }
            if let Some(f) = rep.offending_facet {
                text += &format!("\ndegenerate facet {f:?}");
            }
            let code = u8::from(!rep.pass);
            outcome(text, rep, code)
        }
        Command::Shellable { file, budget } => {
            let c = read_complex(file)?;
            let cert = is_shellable(&c, *budget)?;
            let text = if cert.refuted {
                format!("not shellable (search exhausted after {} nodes)", cert.nodes)
            } else {
                format!("shellable: {:?}", cert.order)
            };
            let code = u8::from(cert.refuted);
            outcome(text, cert, code)
        }
    }
}

/// Exit code for an error.
fn error_code(e: &Error) -> u8 {
    match e {
        Error::Precondition(_) | Error::NotABall(_) | Error::NotPure | Error::LsopNotFound { .. } => 2,
        Error::ResourceBudget(_) | Error::SeedsDisagree { .. } => 3,
        _ => 4,
    }
}

/// Prints a line, ignoring a closed stdout.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json && !out.report.is_null() {
                emit(&serde_json::to_string_pretty(&out.report).expect("reports serialize"));
            } else if !out.text.is_empty() {
                emit(&out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            let code = error_code(&e);
            if cli.json {
                emit(&json!({ "error": e.to_string(), "exit_code": code }).to_string());
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}
