//! The `wsc` command-line driver.
//!
//! Exit codes: 0 success, 1 input error, 2 numerical failure, 3 failed certificate.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chain::{VertexWeights, WeightPair};
use crate::complex::SimplicialComplex;
use crate::exact::{rat, Rational};
use crate::homology::weighted_homology;
use crate::io::{
    exact_string, parse_wsc_bytes, CheckReport, HomologyDegreeReport, HomologyReport, SpectrumDegreeReport,
    SpectrumReport, TorsionReport, TrialReport, ValidateReport,
};
use crate::rtorsion::torsion_equivalence_check;
use crate::spectral::{
    analytic_torsion_with_tol, check_f_scaling, check_g_scaling, check_main_theorem, check_scale_invariance,
    s_exponent, spectral_bundles, torsion_squared_exact, ScalingCertificate,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_CERTIFICATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "wsc", version, about = "Weighted simplicial complexes: homology, Laplace spectra and torsion")]
struct Cli {
    /// Emit a JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Relative threshold used to flag near-zero eigenvalues.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Input `.wsc` file; stdin when absent.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse, close and audit the complex.
    Validate,
    /// Weighted homology with its induced form.
    Homology {
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Spectra of the weighted Hodge–Laplacians on the restricted complex.
    Spectrum {
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Analytic torsion.
    Torsion {
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Randomized certificates for the torsion identities.
    Check {
        #[arg(long, value_enum, default_value_t = Law::Main)]
        law: Law,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Law {
    Scale,
    Gscale,
    Fscale,
    Main,
    Rtorsion,
}

impl Law {
    fn name(self) -> &'static str {
        match self {
            Law::Scale => "scale",
            Law::Gscale => "gscale",
            Law::Fscale => "fscale",
            Law::Main => "main",
            Law::Rtorsion => "rtorsion",
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

/// Run with explicit streams; returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{rendered}");
                EXIT_OK
            } else {
                let _ = write!(stderr, "{rendered}");
                EXIT_INPUT
            };
        }
    };
    match execute(&cli, stdin, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    let bytes = match &cli.input {
        Some(path) => std::fs::read(path)
            .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut buf = Vec::new();
            stdin.read_to_end(&mut buf).map_err(|e| Failure::new(EXIT_INPUT, format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    let (k, w) = parse_wsc_bytes(&bytes).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
    let numerical = |e: &dyn std::fmt::Display| Failure::new(EXIT_NUMERICAL, e.to_string());

    match &cli.command {
        Command::Validate => {
            let audit = k.validate();
            let report = ValidateReport {
                valid: audit.is_ok(),
                vertices: k.vertex_count(),
                dimension: k.dimension(),
                simplex_counts: (0..=k.dimension()).map(|n| k.count(n as usize)).collect(),
                euler_characteristic: k.euler_characteristic(),
                maximal_faces: k
                    .maximal_faces()
                    .iter()
                    .map(|s| s.vertices().iter().map(|&r| k.vertices()[r].id.clone()).collect())
                    .collect(),
            };
            emit(cli.json, out, &report, || {
                let mut s = format!(
                    "valid: {}\nvertices: {}\ndimension: {}\nsimplices per degree: {:?}\neuler characteristic: {}\n",
                    report.valid, report.vertices, report.dimension, report.simplex_counts, report.euler_characteristic
                );
                if let Err(e) = &audit {
                    s.push_str(&format!("audit: {e}\n"));
                }
                s
            })?;
            Ok(if report.valid { EXIT_OK } else { EXIT_CERTIFICATE })
        }
        Command::Homology { max_dim } => {
            let top = k.dimension();
            let top = max_dim.map_or(top, |m| top.min(m as isize));
            let degrees: Vec<HomologyDegreeReport> = (0..=top)
                .map(|n| {
                    let h = weighted_homology(&k, &w, n as usize);
                    HomologyDegreeReport {
                        degree: h.degree,
                        betti: h.betti,
                        form_rank: h.form.positive_rank,
                        inner_product: h.inner_product,
                        gram: matrix_strings(h.gram()),
                    }
                })
                .collect();
            let report = HomologyReport { degrees, euler_characteristic: k.euler_characteristic() };
            emit(cli.json, out, &report, || {
                let mut s = String::new();
                for d in &report.degrees {
                    let kind = if d.inner_product { "inner product" } else { "degenerate" };
                    s.push_str(&format!("H_{}: betti {}, form rank {} ({kind})\n", d.degree, d.betti, d.form_rank));
                }
                let betti: Vec<String> = report.degrees.iter().map(|d| d.betti.to_string()).collect();
                s.push_str(&format!("betti: {}\n", betti.join(" ")));
                s
            })?;
            Ok(EXIT_OK)
        }
        Command::Spectrum { degree } => {
            let bundles = spectral_bundles(&k, &w, cli.tol).map_err(|e| numerical(&e))?;
            let degrees: Vec<SpectrumDegreeReport> = bundles
                .iter()
                .filter(|b| degree.is_none_or(|d| d == b.degree))
                .map(|b| SpectrumDegreeReport {
                    degree: b.degree,
                    dimension: b.dimension(),
                    eigenvalues: b.spectrum.values.clone(),
                    zero_count: b.spectrum.zero_count,
                    exact_rank: b.exact_rank,
                    pseudo_determinant: exact_string(&b.pseudo_det),
                    threshold_disagrees: b.spectrum.threshold_disagrees,
                })
                .collect();
            let report = SpectrumReport { degrees };
            emit(cli.json, out, &report, || {
                let mut s = String::new();
                for d in &report.degrees {
                    let vals: Vec<String> = d.eigenvalues.iter().map(|x| format!("{x:.12}")).collect();
                    s.push_str(&format!(
                        "degree {} (dim {}, rank {}): [{}]\n  det' = {}\n",
                        d.degree,
                        d.dimension,
                        d.exact_rank,
                        vals.join(", "),
                        d.pseudo_determinant
                    ));
                    if d.threshold_disagrees {
                        s.push_str("  warning: float threshold disagrees with exact rank\n");
                    }
                }
                s
            })?;
            Ok(EXIT_OK)
        }
        Command::Torsion { mode } => {
            let s = s_exponent(&k, &w.g.support());
            let report = match mode {
                Mode::Exact => {
                    let t2 = torsion_squared_exact(&k, &w).map_err(|e| numerical(&e))?;
                    TorsionReport {
                        mode: "exact".into(),
                        s_exponent: s,
                        log_torsion: None,
                        torsion: None,
                        torsion_squared: Some(exact_string(&t2)),
                        pseudo_determinants: None,
                        consistent: None,
                    }
                }
                Mode::Float | Mode::Both => {
                    let t = analytic_torsion_with_tol(&k, &w, cli.tol).map_err(|e| numerical(&e))?;
                    let both = *mode == Mode::Both;
                    TorsionReport {
                        mode: if both { "both" } else { "float" }.into(),
                        s_exponent: s,
                        log_torsion: Some(t.log_torsion),
                        torsion: Some(t.torsion),
                        torsion_squared: both.then(|| exact_string(&t.torsion_squared_exact)),
                        pseudo_determinants: both.then(|| t.pseudo_dets.iter().map(exact_string).collect()),
                        consistent: both.then(|| t.is_consistent()),
                    }
                }
            };
            emit(cli.json, out, &report, || {
                let mut s = format!("s = {}\n", report.s_exponent);
                if let (Some(l), Some(t)) = (report.log_torsion, report.torsion) {
                    s.push_str(&format!("log T = {l}\nT ≈ {t}\n"));
                }
                if let Some(t2) = &report.torsion_squared {
                    s.push_str(&format!("T² = {t2}\n"));
                }
                s
            })?;
            if report.consistent == Some(false) {
                return Err(Failure::new(EXIT_NUMERICAL, "float and exact torsion disagree"));
            }
            Ok(EXIT_OK)
        }
        Command::Check { law, trials, seed } => {
            let outcomes: Vec<TrialReport> = (0..*trials).map(|i| run_trial(&k, *law, *seed, i)).collect();
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let report = CheckReport {
                law: law.name().into(),
                seed: *seed,
                trials: *trials,
                passed,
                failed: trials - passed,
                outcomes,
            };
            emit(cli.json, out, &report, || {
                let mut s = String::new();
                for o in report.outcomes.iter().filter(|o| !o.passed) {
                    let why = o.error.clone().unwrap_or_else(|| format!("{:?}", o.sides));
                    s.push_str(&format!("trial {}: FAILED {why}\n", o.trial));
                }
                s.push_str(&format!("{}: {}/{} certificates hold\n", report.law, report.passed, report.trials));
                s
            })?;
            Ok(if report.failed == 0 { EXIT_OK } else { EXIT_CERTIFICATE })
        }
    }
}

fn emit<R: Serialize>(
    json: bool,
    out: &mut dyn Write,
    report: &R,
    text: impl FnOnce() -> String,
) -> Result<(), Failure> {
    let body = if json {
        serde_json::to_string_pretty(report).map_err(|e| Failure::new(EXIT_NUMERICAL, e.to_string()))? + "\n"
    } else {
        text()
    };
    out.write_all(body.as_bytes()).map_err(|e| Failure::new(EXIT_INPUT, format!("cannot write output: {e}")))
}

fn matrix_strings(m: &crate::exact::RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(exact_string).collect()).collect()
}

/// Small random rationals: `|num| ≤ 9`, `1 ≤ den ≤ 9`, zero with probability 1/5.
pub fn random_weight(rng: &mut impl Rng) -> Rational {
    if rng.gen_ratio(1, 5) {
        Rational::zero()
    } else {
        random_nonzero(rng)
    }
}

pub fn random_nonzero(rng: &mut impl Rng) -> Rational {
    let mut n = rng.gen_range(1..=9i64);
    if rng.gen_bool(0.5) {
        n = -n;
    }
    rat(n, rng.gen_range(1..=9))
}

/// Per-trial generator: independent ChaCha stream per trial index.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn draw(rng: &mut ChaCha8Rng, n: usize, nonzero: bool) -> VertexWeights {
    VertexWeights::new((0..n).map(|_| if nonzero { random_nonzero(rng) } else { random_weight(rng) }).collect())
}

fn sides(c: &ScalingCertificate) -> [String; 2] {
    [exact_string(&c.lhs), exact_string(&c.rhs)]
}

fn run_trial(k: &SimplicialComplex, law: Law, seed: u64, trial: usize) -> TrialReport {
    let mut rng = trial_rng(seed, trial);
    let n = k.vertex_count();
    let g = draw(&mut rng, n, false);
    let mut f = draw(&mut rng, n, false);
    if matches!(law, Law::Gscale | Law::Fscale) {
        // g(v) ≠ 0 must force f(v) ≠ 0
        let repl = draw(&mut rng, n, true);
        f = VertexWeights::new(
            (0..n).map(|v| if !g.is_zero_at(v) && f.is_zero_at(v) { repl.get(v).clone() } else { f.get(v).clone() }).collect(),
        );
    }
    let h = draw(&mut rng, n, true);
    let c = random_nonzero(&mut rng);
    let w = WeightPair::new(f, g);

    let outcome: Result<(bool, Vec<[String; 2]>), String> = match law {
        Law::Scale => check_scale_invariance(k, &w, &h).map(|c| (c.holds(), vec![sides(&c)])).map_err(|e| e.to_string()),
        Law::Gscale => check_g_scaling(k, &w, &c).map(|c| (c.holds(), vec![sides(&c)])).map_err(|e| e.to_string()),
        Law::Fscale => check_f_scaling(k, &w, &c).map(|c| (c.holds(), vec![sides(&c)])).map_err(|e| e.to_string()),
        Law::Main => check_main_theorem(k, &w, &h, &c)
            .map(|m| (m.holds(), vec![sides(&m.scale), sides(&m.g_scaling), sides(&m.f_scaling)]))
            .map_err(|e| e.to_string()),
        Law::Rtorsion => torsion_equivalence_check(k, &w)
            .map(|e| {
                (e.holds(), vec![[exact_string(&e.analytic_squared), exact_string(&e.reidemeister_squared)]])
            })
            .map_err(|e| e.to_string()),
    };
    let (passed, sides, error) = match outcome {
        Ok((p, s)) => (p, s, None),
        Err(e) => (false, Vec::new(), Some(e)),
    };
    TrialReport {
        trial,
        passed,
        f: w.f.values().iter().map(exact_string).collect(),
        g: w.g.values().iter().map(exact_string).collect(),
        sides,
        error,
    }
}
