//! Minimal runner for acceptance criteria: each check runs once, is timed
//! against its budget and reports a single line.

use std::fmt;
use std::time::{Duration, Instant};

/// One numbered criterion.
pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub budget: Option<Duration>,
    pub check: fn() -> Result<String, String>,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed: Duration,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} [{:>2}] {} ({:.2} s): {}", self.id, self.title, self.elapsed.as_secs_f64(), self.detail)
    }
}

impl Criterion {
    pub fn run(&self) -> Outcome {
        let start = Instant::now();
        let result = std::panic::catch_unwind(self.check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if let Some(b) = self.budget {
            if passed && elapsed > b {
                passed = false;
                detail = format!("{detail}; over the {:.0} s budget", b.as_secs_f64());
            }
        }
        Outcome { id: self.id, title: self.title, passed, elapsed, detail }
    }
}

/// Runs every criterion, prints one line each plus a tally, and returns
/// whether all passed.
pub fn run_all(criteria: &[Criterion]) -> bool {
    let mut failed = 0;
    for c in criteria {
        let o = c.run();
        println!("{o}");
        if !o.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    failed == 0
}

/// `Ok(())` when `cond` holds, otherwise `Err(msg())`.
pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}
