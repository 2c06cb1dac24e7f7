use std::fmt::Write as _;

/// One checked property.
#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    pub pass: bool,
    pub name: String,
    pub residual: Option<f64>,
}

/// Ordered list of checks. Rendering is deterministic: insertion order and
/// residuals with three significant digits.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    lines: Vec<Line>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn push(&mut self, pass: bool, name: impl Into<String>, residual: Option<f64>) {
        self.lines.push(Line { pass, name: name.into(), residual });
    }

    /// Passes when `residual <= atol`.
    pub fn residual(&mut self, name: impl Into<String>, residual: f64, atol: f64) {
        self.push(residual <= atol, name, Some(residual));
    }

    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn render(&self) -> String {
        if self.lines.is_empty() {
            return "PASS (0 checks)\n".into();
        }
        let mut out = String::new();
        for l in &self.lines {
            let tag = if l.pass { "PASS" } else { "FAIL" };
            match l.residual {
                Some(r) => writeln!(out, "{tag} {} residual={}", l.name, fmt_residual(r)),
                None => writeln!(out, "{tag} {}", l.name),
            }
            .expect("writing to a String");
        }
        out
    }
}

pub fn fmt_residual(r: f64) -> String {
    format!("{r:.2e}")
}
