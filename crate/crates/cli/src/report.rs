//! Machine-readable verification reports.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub identity: String,
    pub computed: f64,
    pub reference: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub suite: String,
    pub seed: u64,
    pub params: ReportParams,
    pub checks: Vec<CheckRow>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportParams {
    pub n: u32,
    pub s: f64,
}

impl VerificationReport {
    pub fn new(suite: &str, n: u32, s: f64, seed: u64) -> Self {
        VerificationReport {
            schema: SCHEMA_VERSION,
            suite: suite.to_string(),
            seed,
            params: ReportParams { n, s },
            checks: Vec::new(),
            pass: true,
        }
    }

    /// Record one check; `computed` must match `reference` within
    /// `tolerance` relative (of the reference scale, floored at 1).
    pub fn check_relative(
        &mut self,
        identity: &str,
        computed: f64,
        reference: f64,
        tolerance: f64,
        started: std::time::Instant,
    ) {
        let abs_err = (computed - reference).abs();
        let scale = reference.abs().max(1e-300);
        let rel_err = abs_err / scale;
        let pass = rel_err <= tolerance && computed.is_finite();
        self.push_row(identity, computed, reference, abs_err, rel_err, tolerance, pass, started);
    }

    /// Record one check with an absolute tolerance; the relative column is
    /// scaled against max(|reference|, 1).
    pub fn check_absolute(
        &mut self,
        identity: &str,
        computed: f64,
        reference: f64,
        tolerance: f64,
        started: std::time::Instant,
    ) {
        let abs_err = (computed - reference).abs();
        let scale = reference.abs().max(1.0);
        let pass = abs_err <= tolerance && computed.is_finite();
        self.push_row(identity, computed, reference, abs_err, abs_err / scale, tolerance, pass, started);
    }

    /// Record a one-sided check: pass iff computed ≥ reference.
    pub fn check_at_least(
        &mut self,
        identity: &str,
        computed: f64,
        reference: f64,
        started: std::time::Instant,
    ) {
        let abs_err = (computed - reference).abs();
        let scale = reference.abs().max(1.0);
        let pass = computed >= reference && computed.is_finite();
        self.push_row(identity, computed, reference, abs_err, abs_err / scale, 0.0, pass, started);
    }

    #[allow(clippy::too_many_arguments)]
    fn push_row(
        &mut self,
        identity: &str,
        computed: f64,
        reference: f64,
        abs_err: f64,
        rel_err: f64,
        tolerance: f64,
        pass: bool,
        started: std::time::Instant,
    ) {
        self.pass &= pass;
        self.checks.push(CheckRow {
            identity: identity.to_string(),
            computed,
            reference,
            abs_err,
            rel_err,
            tolerance,
            pass,
            seconds: started.elapsed().as_secs_f64(),
        });
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {} at (n = {}, s = {}), seed {}\n",
            self.suite, self.params.n, self.params.s, self.seed
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {:<44} computed {:+.9e}  reference {:+.9e}  rel {:.2e}  ({:.2}s)\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.identity,
                c.computed,
                c.reference,
                c.rel_err,
                c.seconds
            ));
        }
        out.push_str(&format!(
            "overall: {}",
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}
