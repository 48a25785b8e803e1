//! Batch verification harness: runs the lemma/theorem suites, collects
//! structured check reports, and renders them as a table, JSON or CSV.

pub mod closed_form;
pub mod export;
mod suites;

use serde::Serialize;

use crate::diffops::DiffCfg;
use crate::{Error, Result};

/// The available suite identifiers, in execution order of `all`.
pub const SUITE_IDS: [&str; 10] = [
    "octonion",
    "lemmas-sigma3",
    "lemmas-J",
    "laplacians",
    "curvature",
    "criticality",
    "parallel-obstruction",
    "energy",
    "diagram-phi",
    "extensions",
];

/// Harness configuration. Every report echoes it.
#[derive(Debug, Clone, Serialize)]
pub struct Config {
    /// Base finite-difference step.
    pub fd_step: f64,
    /// Acceptance tolerance on Richardson extrapolants.
    pub richardson_tol: f64,
    /// Fiber-constraint tolerance.
    pub fiber_tol: f64,
    /// Monte Carlo sample count.
    pub samples: usize,
    /// Random seed.
    pub seed: u64,
    /// Suites to run.
    pub suites: Vec<String>,
    /// Tolerance for checks whose expected values have closed form.
    pub tol: f64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            fd_step: 1e-3,
            richardson_tol: 1e-7,
            fiber_tol: 1e-10,
            samples: 200,
            seed: 42,
            suites: vec!["all".to_string()],
            tol: 1e-6,
        }
    }
}

impl Config {
    /// Tolerance tier for checks that go through pure finite-difference /
    /// Monte Carlo paths at sampled points.
    pub fn sampled_tol(&self) -> f64 {
        self.tol * 100.0
    }

    pub fn diff_cfg(&self) -> DiffCfg {
        DiffCfg {
            step: self.fd_step,
            richardson_tol: self.richardson_tol,
            agreement_tol: 1e-5,
        }
    }
}

/// One verification check: the identity verified, the expected value with
/// its provenance, the computed outcome, and the pass verdict.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    /// Stable identifier, e.g. `laplacian.sigma3.base`.
    pub id: String,
    /// The mathematical statement being checked.
    pub anchor: String,
    /// Expected value descriptor with provenance tag
    /// (`[closed-form]`, `[oracle]`, `[definition]`, `[statistical]`,
    /// `[measured]`).
    pub expected: String,
    /// Computed value descriptor.
    pub computed: String,
    /// Numerical residual of the check.
    pub residual: f64,
    /// Tolerance the residual is held to.
    pub tolerance: f64,
    pub pass: bool,
    /// Wall time in seconds. Zeroed in deterministic JSON output.
    pub wall_time: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub seconds: f64,
}

/// Full report: configuration, checks, summary.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: Config,
    pub checks: Vec<VerificationReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: Config, checks: Vec<VerificationReport>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let failed = checks.len() - passed;
        let seconds = checks.iter().map(|c| c.wall_time).sum();
        Self {
            config,
            checks,
            summary: Summary {
                passed,
                failed,
                seconds,
            },
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Serializes the report as JSON with timing fields zeroed, so that
    /// reruns with the same configuration are byte-identical.
    pub fn to_deterministic_json(&self) -> String {
        let mut clone = self.clone();
        for c in &mut clone.checks {
            c.wall_time = 0.0;
        }
        clone.summary.seconds = 0.0;
        serde_json::to_string_pretty(&clone).expect("report serializes")
    }

    /// CSV dump of the checks.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,residual,tolerance,pass,expected,computed\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{:e},{:e},{},{},{}\n",
                c.id,
                c.residual,
                c.tolerance,
                c.pass,
                csv_quote(&c.expected),
                csv_quote(&c.computed),
            ));
        }
        out
    }

    /// Human-readable fixed-width table.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<46} {:>12} {:>9} {:>6} {:>8}\n",
            "check", "residual", "tol", "pass", "sec"
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "{:<46} {:>12.3e} {:>9.0e} {:>6} {:>8.2}\n",
                c.id,
                c.residual,
                c.tolerance,
                if c.pass { "ok" } else { "FAIL" },
                c.wall_time,
            ));
        }
        out.push_str(&format!(
            "\n{} passed, {} failed, {:.1} s\n",
            self.summary.passed, self.summary.failed, self.summary.seconds
        ));
        out
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Builds one check by timing a closure that returns
/// `(residual, computed-descriptor)`.
pub(crate) fn run_check(
    id: &str,
    anchor: &str,
    expected: &str,
    tolerance: f64,
    body: impl FnOnce() -> Result<(f64, String)>,
) -> VerificationReport {
    let start = std::time::Instant::now();
    let (residual, computed, pass) = match body() {
        Ok((residual, computed)) => (residual, computed, residual <= tolerance),
        Err(e) => (9.9e99, format!("error: {e}"), false),
    };
    VerificationReport {
        id: id.to_string(),
        anchor: anchor.to_string(),
        expected: expected.to_string(),
        computed,
        residual,
        tolerance,
        pass,
        wall_time: start.elapsed().as_secs_f64(),
    }
}

/// Runs one suite (or `all`) and returns its checks in deterministic
/// order.
pub fn run_suite(suite: &str, cfg: &Config) -> Result<Vec<VerificationReport>> {
    match suite {
        "octonion" => Ok(suites::octonion_suite(cfg)),
        "lemmas-sigma3" => Ok(suites::lemmas_sigma3_suite(cfg)),
        "lemmas-J" => Ok(suites::lemmas_j_suite(cfg)),
        "laplacians" => Ok(suites::laplacians_suite(cfg)),
        "curvature" => Ok(suites::curvature_suite(cfg)),
        "criticality" => Ok(suites::criticality_suite(cfg)),
        "parallel-obstruction" => Ok(suites::parallel_obstruction_suite(cfg)),
        "energy" => Ok(suites::energy_suite(cfg)),
        "diagram-phi" => Ok(suites::diagram_phi_suite(cfg)),
        "extensions" => Ok(suites::extensions_suite(cfg)),
        "all" => {
            let mut checks = Vec::new();
            for id in SUITE_IDS {
                checks.extend(run_suite(id, cfg)?);
            }
            Ok(checks)
        }
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

/// Runs every suite named in the configuration and wraps the result.
pub fn run_configured(cfg: &Config) -> Result<Report> {
    let mut checks = Vec::new();
    for suite in &cfg.suites {
        checks.extend(run_suite(suite, cfg)?);
    }
    Ok(Report::new(cfg.clone(), checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(
            run_suite("no-such-suite", &Config::default()),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn octonion_suite_passes_and_serializes() {
        let cfg = Config {
            suites: vec!["octonion".into()],
            ..Config::default()
        };
        let report = run_configured(&cfg).unwrap();
        assert!(report.all_passed(), "{}", report.render_table());
        let j1 = report.to_deterministic_json();
        let report2 = run_configured(&cfg).unwrap();
        assert_eq!(j1, report2.to_deterministic_json());
        assert!(j1.contains("\"checks\""));
        assert!(j1.contains("\"summary\""));
        assert!(j1.contains("\"config\""));
    }
}
