//! Command-line front end: problem files in, reports out.
//!
//! Exit codes: 0 success, 2 validation failure, 3 construction failure within
//! budget, 4 parse or input error.

pub mod problem;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use dynext::dynsys::{validate_system, OrbitOutcome, PolarizedSystem, ProjectiveVariety, RationalPoint, Violation};
use dynext::extender::{
    extend, verify_extension, verify_lifted, Certificates, DimensionMethod, ExtensionConfig, ExtensionFailure,
    ExtensionResult, FailureReason, RPolicy,
};
use dynext::paramcurve::{
    end_to_end_extend, image_basis, implicitize, liftability, replay_on_parametrization, restriction_matrix,
    CurveParametrization, CurveSelfMap, LiftReport, TrailEntry,
};
use dynext::{Monomial, Ring};

use problem::{parse_problem, Body, CurveInput, Problem, SystemInput};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CONSTRUCTION: i32 = 3;
pub const EXIT_PARSE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "dynext", version, about = "Extend polarized self-maps of projective varieties to projective space")]
pub struct Cli {
    /// Line-oriented key=value output.
    #[arg(long, global = true)]
    pub machine: bool,
    /// Accept prime fields below 2^20.
    #[arg(long, global = true)]
    pub allow_small_prime: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every hypothesis of the system or parametrization.
    Validate { file: PathBuf },
    /// Build a certified extension of an iterate of the map.
    Extend {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_r: u32,
        #[arg(long, default_value_t = 64)]
        max_retries: u32,
        #[arg(long, default_value_t = 10)]
        coeff_bound: u64,
        #[arg(long)]
        allow_conjugation: bool,
    },
    /// Decide whether the r-th iterate of a curve self-map lifts to the ambient space.
    Liftability {
        file: PathBuf,
        #[arg(long)]
        r: u32,
    },
    /// Equations of the image of a parametrized curve.
    Implicitize { file: PathBuf },
    /// Image of the restriction map in a given degree.
    ImageBasis {
        file: PathBuf,
        #[arg(long)]
        degree: u32,
    },
    /// Classify orbits as preperiodic or not within a step budget.
    Orbit {
        file: PathBuf,
        #[arg(long)]
        point: Option<String>,
        /// Heights grow geometrically in the degree, so large budgets are slow on wandering points.
        #[arg(long, default_value_t = 20)]
        max_steps: usize,
    },
}

/// Result of one command: exit code and the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    machine: bool,
    out: String,
    err: String,
}

impl Report {
    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.out, "{key}={value}");
    }

    fn line(&mut self, text: impl std::fmt::Display) {
        let _ = writeln!(self.out, "{text}");
    }

    fn error(&mut self, text: impl std::fmt::Display) {
        let _ = writeln!(self.err, "error: {text}");
    }

    fn done(self, code: i32) -> Outcome {
        Outcome { code, stdout: self.out, stderr: self.err }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let mut rep = Report { machine: cli.machine, out: String::new(), err: String::new() };
    let file = match &cli.command {
        Command::Validate { file }
        | Command::Extend { file, .. }
        | Command::Liftability { file, .. }
        | Command::Implicitize { file }
        | Command::ImageBasis { file, .. }
        | Command::Orbit { file, .. } => file,
    };
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            rep.error(format!("cannot read {}: {e}", file.display()));
            return rep.done(EXIT_PARSE);
        }
    };
    let problem = match parse_problem(&text, cli.allow_small_prime) {
        Ok(p) => p,
        Err(e) => {
            rep.error(format!("{}: {e}", file.display()));
            return rep.done(EXIT_PARSE);
        }
    };
    let code = match &cli.command {
        Command::Validate { .. } => cmd_validate(&problem, &mut rep),
        Command::Extend { seed, max_r, max_retries, coeff_bound, allow_conjugation, .. } => {
            let config = ExtensionConfig {
                r_policy: RPolicy::AutoSearch { max_r: *max_r },
                max_retries: *max_retries,
                coeff_bound: *coeff_bound,
                allow_conjugation_fallback: *allow_conjugation,
                seed: *seed,
            };
            cmd_extend(&problem, &config, &mut rep)
        }
        Command::Liftability { r, .. } => cmd_liftability(&problem, *r, &mut rep),
        Command::Implicitize { .. } => cmd_implicitize(&problem, &mut rep),
        Command::ImageBasis { degree, .. } => cmd_image_basis(&problem, *degree, &mut rep),
        Command::Orbit { point, max_steps, .. } => cmd_orbit(&problem, point.as_deref(), *max_steps, &mut rep),
    };
    rep.done(code)
}

fn monomial_list(ring: &Ring, monos: &[Monomial]) -> String {
    monos.iter().map(|m| ring.monomial(m.clone()).to_string()).collect::<Vec<_>>().join(", ")
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

const CHECKS: [&str; 5] = ["arity", "polarization degree", "map degrees", "invariance", "base points"];

fn check_of(v: &Violation) -> usize {
    match v {
        Violation::Arity { .. } => 0,
        Violation::PolarizationDegree { .. } => 1,
        Violation::MapRing { .. } | Violation::MapDegree { .. } => 2,
        Violation::NotInvariant { .. } => 3,
        Violation::BasePointsOnVariety => 4,
    }
}

fn print_check(rep: &mut Report, name: &str, ok: bool, witnesses: &[String]) {
    if rep.machine {
        rep.kv(&format!("check.{}", name.replace(' ', "_")), pass(ok));
        for w in witnesses {
            rep.kv("violation", w);
        }
    } else {
        rep.line(format!("{} {name}", if ok { "PASS" } else { "FAIL" }));
        for w in witnesses {
            rep.line(format!("     {w}"));
        }
    }
}

/// Validates an ideal-presented system, printing every check. `None` when a check fails.
fn build_system(input: &SystemInput, rep: &mut Report, verbose: bool) -> Option<PolarizedSystem> {
    let variety = match ProjectiveVariety::new(input.ring.clone(), input.ideal.clone()) {
        Ok(v) => v,
        Err(e) => {
            print_check(rep, "variety", false, &[e.to_string()]);
            return None;
        }
    };
    if verbose {
        print_check(rep, "variety", true, &[]);
        if rep.machine {
            rep.kv("dimension", variety.dimension());
            rep.kv("ambient_dimension", variety.ambient_dimension());
        } else {
            rep.line(format!(
                "     X has dimension {} in P^{}",
                variety.dimension(),
                variety.ambient_dimension()
            ));
        }
    }
    match validate_system(variety, input.q, input.map.clone()) {
        Ok(sys) => {
            if verbose {
                for name in CHECKS {
                    print_check(rep, name, true, &[]);
                }
            }
            Some(sys)
        }
        Err(violations) => {
            for (k, name) in CHECKS.iter().enumerate() {
                let witnesses: Vec<String> =
                    violations.iter().filter(|v| check_of(v) == k).map(|v| v.to_string()).collect();
                if verbose || !witnesses.is_empty() {
                    print_check(rep, name, witnesses.is_empty(), &witnesses);
                }
            }
            None
        }
    }
}

fn build_curve(input: &CurveInput, rep: &mut Report, verbose: bool) -> Option<(CurveParametrization, CurveSelfMap)> {
    let curve = CurveParametrization::with_ambient(input.forms.clone(), input.ambient.clone());
    let curve_ok = curve.as_ref().err().map(|e| e.to_string());
    if verbose || curve_ok.is_some() {
        print_check(rep, "parametrization", curve_ok.is_none(), curve_ok.as_slice());
    }
    let mut selfmap_errors = Vec::new();
    let selfmap = match input.selfmap.as_slice() {
        [p, q] => match CurveSelfMap::new(p.clone(), q.clone()) {
            Ok(s) if s.degree() == input.q => Some(s),
            Ok(s) => {
                selfmap_errors.push(format!("declared degree {} but the forms have degree {}", input.q, s.degree()));
                None
            }
            Err(e) => {
                selfmap_errors.push(e.to_string());
                None
            }
        },
        other => {
            selfmap_errors.push(format!("expected two forms P and Q, got {}", other.len()));
            None
        }
    };
    if verbose || !selfmap_errors.is_empty() {
        print_check(rep, "selfmap", selfmap_errors.is_empty(), &selfmap_errors);
    }
    Some((curve.ok()?, selfmap?))
}

fn cmd_validate(problem: &Problem, rep: &mut Report) -> i32 {
    let ok = match &problem.body {
        Body::System(input) => build_system(input, rep, true).is_some(),
        Body::Curve(input) => build_curve(input, rep, true).is_some(),
    };
    if rep.machine {
        rep.kv("status", if ok { "valid" } else { "invalid" });
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}

fn method_text(m: &DimensionMethod, machine: bool) -> String {
    match (m, machine) {
        (DimensionMethod::Exact, _) => "exact".into(),
        (DimensionMethod::Modular(p), true) => format!("modular:{p}"),
        (DimensionMethod::Modular(p), false) => format!("mod {p}"),
    }
}

fn print_certificates(rep: &mut Report, c: &Certificates) {
    let dims = c.prefix_dimensions.iter().map(i64::to_string).collect::<Vec<_>>();
    let methods = c.dimension_methods.iter().map(|m| method_text(m, rep.machine)).collect::<Vec<_>>();
    if rep.machine {
        rep.kv("certificate.compatibility", pass(c.compatibility));
        rep.kv("certificate.prefix_dimensions", dims.join(","));
        rep.kv("certificate.dimension_methods", methods.join(","));
        rep.kv("certificate.projective_emptiness", pass(c.projectively_empty));
        rep.kv("certificate.homogeneity", pass(c.homogeneous));
    } else {
        rep.line("certificates:");
        rep.line(format!("  compatibility: {}", pass(c.compatibility)));
        rep.line(format!("  prefix dimensions: {} ({})", dims.join(" "), methods.join(", ")));
        rep.line(format!("  projective emptiness: {}", pass(c.projectively_empty)));
        rep.line(format!("  homogeneity: {}", pass(c.homogeneous)));
    }
}

fn print_result(rep: &mut Report, result: &ExtensionResult, certs: &Certificates) {
    let t = result.transcript();
    if rep.machine {
        rep.kv("status", "success");
        rep.kv("r", result.r());
        rep.kv("degree", result.degree());
        rep.kv("r_star", t.r_star);
        rep.kv("seed", t.seed);
        rep.kv("repairs", t.repair_count());
        rep.kv("conjugated", result.conjugation().is_some());
        for (i, h) in result.psi().iter().enumerate() {
            rep.kv(&format!("psi[{i}]"), h.to_exact_string());
        }
    } else {
        rep.line(format!("r={}", result.r()));
        rep.line(format!(
            "degree {} (r* = {}), seed {}, {} repaired candidate(s)",
            result.degree(),
            t.r_star,
            t.seed,
            t.repair_count()
        ));
        rep.line("psi:");
        for h in result.psi() {
            rep.line(format!("  {}", h.to_exact_string()));
        }
    }
    if let Some(c) = result.conjugation() {
        for i in 0..c.matrix.rows() {
            let row = c.matrix.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            if rep.machine {
                rep.kv(&format!("conjugation[{i}]"), row);
            } else {
                rep.line(format!("conjugated by row {i}: {row}"));
            }
        }
    }
    print_certificates(rep, certs);
}

fn print_failure(rep: &mut Report, failure: &ExtensionFailure) {
    if rep.machine {
        rep.kv("status", "failure");
        let reason = match &failure.reason {
            FailureReason::StepsExhausted => "steps_exhausted".to_string(),
            FailureReason::NoAdmissibleR => "no_admissible_r".to_string(),
            FailureReason::Certificate(e) => format!("certificate: {e}"),
        };
        rep.kv("reason", reason);
        if let Some((r, j)) = failure.blocking_step {
            rep.kv("blocking_r", r);
            rep.kv("blocking_step", j);
        }
        rep.kv("r_star", failure.transcript.r_star);
    } else {
        rep.line(format!("no extension: {failure}"));
    }
    for round in &failure.transcript.rounds {
        let dims: Vec<String> = round
            .steps
            .iter()
            .map(|s| {
                let tried: Vec<String> = s.attempts.iter().map(|a| a.affine_dimension.to_string()).collect();
                format!("step {} target {} tried [{}]", s.step, s.target_dimension, tried.join(" "))
            })
            .collect();
        let label = if round.conjugated { " (conjugated)" } else { "" };
        if rep.machine {
            rep.kv(&format!("round.r{}{}", round.r, if round.conjugated { ".conjugated" } else { "" }), dims.join("; "));
        } else {
            rep.line(format!("  r={}{label}: {}", round.r, dims.join("; ")));
        }
    }
}

fn print_trail(rep: &mut Report, ring: &Ring, trail: &[TrailEntry]) {
    for entry in trail {
        match entry {
            TrailEntry::Obstructed(report) => {
                let monos = monomial_list(ring, &report.obstructing_monomials());
                if rep.machine {
                    rep.kv(&format!("trail.r{}", report.r), format!("obstruction:{}", monos.replace(", ", ",")));
                } else {
                    rep.line(format!("r={}: obstruction at {monos}", report.r));
                }
            }
            TrailEntry::ExtensionFailed { r, failure } => {
                if rep.machine {
                    rep.kv(&format!("trail.r{r}"), format!("extension_failed:{failure}"));
                } else {
                    rep.line(format!("r={r}: lift exists but {failure}"));
                }
            }
        }
    }
}

fn cmd_extend(problem: &Problem, config: &ExtensionConfig, rep: &mut Report) -> i32 {
    match &problem.body {
        Body::System(input) => {
            let Some(sys) = build_system(input, rep, false) else {
                return EXIT_INVALID;
            };
            match extend(&sys, config) {
                Ok(result) => match verify_extension(&sys, &result) {
                    Ok(certs) => {
                        print_result(rep, &result, &certs);
                        EXIT_OK
                    }
                    Err(e) => {
                        rep.error(format!("re-verification failed: {e}"));
                        EXIT_CONSTRUCTION
                    }
                },
                Err(failure) => {
                    print_failure(rep, &failure);
                    EXIT_CONSTRUCTION
                }
            }
        }
        Body::Curve(input) => {
            let Some((curve, selfmap)) = build_curve(input, rep, false) else {
                return EXIT_INVALID;
            };
            match end_to_end_extend(&curve, &selfmap, config) {
                Err(e) => {
                    rep.error(e);
                    EXIT_INVALID
                }
                Ok(Ok(ext)) => {
                    print_trail(rep, curve.param_ring(), &ext.trail);
                    let lifts = ext.lift.lifts.as_deref().expect("successful round has lifts");
                    let replay = replay_on_parametrization(&curve, &selfmap, &ext.result);
                    match (verify_lifted(&ext.variety, lifts, &ext.result), replay) {
                        (Ok(certs), Ok(true)) => {
                            print_result(rep, &ext.result, &certs);
                            if rep.machine {
                                rep.kv("certificate.parametrization_replay", "pass");
                            } else {
                                rep.line("  parametrization replay: pass");
                            }
                            EXIT_OK
                        }
                        (Err(e), _) => {
                            rep.error(format!("re-verification failed: {e}"));
                            EXIT_CONSTRUCTION
                        }
                        (_, Ok(false)) => {
                            rep.error("re-verification failed: parametrization replay mismatch");
                            EXIT_CONSTRUCTION
                        }
                        (_, Err(e)) => {
                            rep.error(e);
                            EXIT_CONSTRUCTION
                        }
                    }
                }
                Ok(Err(failure)) => {
                    print_trail(rep, curve.param_ring(), &failure.trail);
                    let terminal = failure.trail.last().map(|t| match t {
                        TrailEntry::Obstructed(_) => "obstruction",
                        TrailEntry::ExtensionFailed { .. } => "extension_failed",
                    });
                    if rep.machine {
                        rep.kv("status", "failure");
                        rep.kv("reason", terminal.unwrap_or("no_admissible_r"));
                    } else {
                        rep.line(format!("no extension: {failure}"));
                    }
                    EXIT_CONSTRUCTION
                }
            }
        }
    }
}

fn require_curve<'a>(problem: &'a Problem, rep: &mut Report, command: &str) -> Option<&'a CurveInput> {
    match &problem.body {
        Body::Curve(c) => Some(c),
        Body::System(_) => {
            rep.error(format!("{command} needs a parametrized problem ('param ring', 'param:', 'selfmap')"));
            None
        }
    }
}

fn print_lift_report(rep: &mut Report, ring: &Ring, report: &LiftReport) {
    let image = monomial_list(ring, &report.image.image_monomials);
    let missing = monomial_list(ring, &report.image.missing_monomials);
    let obstructing = monomial_list(ring, &report.obstructing_monomials());
    if rep.machine {
        rep.kv("r", report.r);
        rep.kv("degree", report.degree);
        rep.kv("liftable", report.liftable);
        rep.kv("image_rank", report.image.rank);
        rep.kv("image_monomials", image.replace(", ", ","));
        rep.kv("missing_monomials", missing.replace(", ", ","));
        rep.kv("obstructing_monomials", obstructing.replace(", ", ","));
    } else {
        rep.line(format!("r={} (lifts of degree {})", report.r, report.degree));
        rep.line(format!("liftable: {}", if report.liftable { "yes" } else { "no" }));
        rep.line(format!("image monomials ({}): {image}", report.image.rank));
        rep.line(format!("missing monomials ({}): {missing}", report.image.missing_monomials.len()));
    }
    for o in &report.obstructions {
        let parts: Vec<String> =
            o.monomials.iter().map(|(m, c)| format!("{}:{c}", ring.monomial(m.clone()))).collect();
        if rep.machine {
            rep.kv(&format!("obstruction[{}]", o.pullback_index), parts.join(","));
        } else {
            rep.line(format!(
                "pullback {} is not in the image; residual coefficients {}",
                o.pullback_index,
                parts.join(", ")
            ));
        }
    }
    if !rep.machine && !report.liftable {
        rep.line(format!("obstructing monomials: {obstructing}"));
    }
    for (i, f) in report.lifts.iter().flatten().enumerate() {
        if rep.machine {
            rep.kv(&format!("lift[{i}]"), f.to_exact_string());
        } else {
            rep.line(format!("lift[{i}] = {}", f.to_exact_string()));
        }
    }
}

fn cmd_liftability(problem: &Problem, r: u32, rep: &mut Report) -> i32 {
    let Some(input) = require_curve(problem, rep, "liftability") else {
        return EXIT_INVALID;
    };
    if r == 0 {
        rep.error("--r must be at least 1");
        return EXIT_INVALID;
    }
    let Some((curve, selfmap)) = build_curve(input, rep, false) else {
        return EXIT_INVALID;
    };
    match liftability(&curve, &selfmap, r) {
        Ok(report) => {
            print_lift_report(rep, curve.param_ring(), &report);
            EXIT_OK
        }
        Err(e) => {
            rep.error(e);
            EXIT_INVALID
        }
    }
}

fn cmd_implicitize(problem: &Problem, rep: &mut Report) -> i32 {
    let Some(input) = require_curve(problem, rep, "implicitize") else {
        return EXIT_INVALID;
    };
    let curve = match CurveParametrization::with_ambient(input.forms.clone(), input.ambient.clone()) {
        Ok(c) => c,
        Err(e) => {
            print_check(rep, "parametrization", false, &[e.to_string()]);
            return EXIT_INVALID;
        }
    };
    match implicitize(&curve) {
        Ok(gens) => {
            if rep.machine {
                rep.kv("generators", gens.len());
            }
            for (i, g) in gens.iter().enumerate() {
                if rep.machine {
                    rep.kv(&format!("generator[{i}]"), g);
                } else {
                    rep.line(g);
                }
            }
            EXIT_OK
        }
        Err(e) => {
            rep.error(e);
            EXIT_INVALID
        }
    }
}

fn cmd_image_basis(problem: &Problem, degree: u32, rep: &mut Report) -> i32 {
    let Some(input) = require_curve(problem, rep, "image-basis") else {
        return EXIT_INVALID;
    };
    if degree == 0 {
        rep.error("--degree must be at least 1");
        return EXIT_INVALID;
    }
    let curve = match CurveParametrization::with_ambient(input.forms.clone(), input.ambient.clone()) {
        Ok(c) => c,
        Err(e) => {
            print_check(rep, "parametrization", false, &[e.to_string()]);
            return EXIT_INVALID;
        }
    };
    let rm = restriction_matrix(&curve, degree);
    let image = image_basis(&rm);
    let ring = curve.param_ring();
    let listed = monomial_list(ring, &image.image_monomials);
    let missing = monomial_list(ring, &image.missing_monomials);
    if rep.machine {
        rep.kv("degree", degree);
        rep.kv("rows", rm.matrix.rows());
        rep.kv("columns", rm.matrix.cols());
        rep.kv("rank", image.rank);
        rep.kv("image_monomials", listed.replace(", ", ","));
        rep.kv("missing_monomials", missing.replace(", ", ","));
    } else {
        rep.line(format!(
            "restriction to degree {} on P^1: {}x{} matrix of rank {}",
            degree * curve.degree(),
            rm.matrix.rows(),
            rm.matrix.cols(),
            image.rank
        ));
        rep.line(format!("image monomials ({}): {listed}", image.rank));
        rep.line(format!("missing monomials ({}): {missing}", image.missing_monomials.len()));
    }
    EXIT_OK
}

fn cmd_orbit(problem: &Problem, point: Option<&str>, max_steps: usize, rep: &mut Report) -> i32 {
    let Body::System(input) = &problem.body else {
        rep.error("orbit needs an ideal-presented problem ('ring', 'ideal:', 'map')");
        return EXIT_INVALID;
    };
    let points: Vec<RationalPoint> = match point {
        Some(text) => match RationalPoint::parse(problem.field, text) {
            Ok(p) => vec![p],
            Err(e) => {
                rep.error(format!("--point: {e}"));
                return EXIT_PARSE;
            }
        },
        None => problem.points.clone(),
    };
    if points.is_empty() {
        rep.error("no point given (use --point or a 'points:' block)");
        return EXIT_INVALID;
    }
    let Some(sys) = build_system(input, rep, false) else {
        return EXIT_INVALID;
    };
    for (i, p) in points.iter().enumerate() {
        match sys.orbit_classify(p, max_steps) {
            Ok(OrbitOutcome::Preperiodic { tail, cycle, .. }) => {
                if rep.machine {
                    rep.kv(&format!("point[{i}]"), p);
                    rep.kv(&format!("point[{i}].tail"), tail);
                    rep.kv(&format!("point[{i}].cycle"), cycle);
                } else {
                    rep.line(format!("{p}: tail={tail} cycle={cycle}"));
                }
            }
            Ok(OrbitOutcome::NoRepetition { steps }) => {
                if rep.machine {
                    rep.kv(&format!("point[{i}]"), p);
                    rep.kv(&format!("point[{i}].no_repetition_within"), steps);
                } else {
                    rep.line(format!("{p}: no repetition within {steps}"));
                }
            }
            Err(e) => {
                rep.error(e);
                return EXIT_INVALID;
            }
        }
    }
    EXIT_OK
}
