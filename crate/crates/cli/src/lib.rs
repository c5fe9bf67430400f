//! Scenario runner: replays the computations, compares against goldens and
//! reports.

pub mod goldens;
pub mod report;
pub mod scenarios;

use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use goldens::Goldens;
use report::{Report, Status};
use scenarios::{Context, Scenario};

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub seed: u64,
    pub timeout: Option<Duration>,
    /// Report `elapsed_ms = 0` so that output is byte-identical across runs.
    pub no_timing: bool,
}

/// Run one scenario, with an optional wall-clock limit.
pub fn run_scenario(s: &'static Scenario, goldens: &Goldens, opts: &RunOptions) -> Report {
    let Some(golden) = goldens.get(s.name) else {
        return Report::failed(s.name, "", Status::Error, format!("no goldens for scenario `{}`", s.name));
    };
    let ctx = Context { seed: opts.seed };
    let start = Instant::now();
    let (tx, rx) = mpsc::channel();
    let run = s.run;
    thread::spawn(move || {
        let _ = tx.send(run(&ctx));
    });
    let outcome = match opts.timeout {
        Some(t) => rx.recv_timeout(t).map_err(|_| ()),
        None => rx.recv().map_err(|_| ()),
    };
    let elapsed = if opts.no_timing { 0 } else { start.elapsed().as_millis() as u64 };
    let mut r = match outcome {
        Ok(Ok(values)) => Report::compare(s.name, golden, values),
        Ok(Err(e)) => Report::failed(s.name, &golden.anchor, Status::Error, format!("{}: {e}", s.name)),
        Err(()) if opts.timeout.is_some() => Report::failed(
            s.name,
            &golden.anchor,
            Status::Timeout,
            format!("exceeded {} s", opts.timeout.unwrap().as_secs_f64()),
        ),
        Err(()) => Report::failed(s.name, &golden.anchor, Status::Error, "scenario panicked".into()),
    };
    r.elapsed_ms = elapsed;
    r
}

/// Run scenarios in registration order.
pub fn run_all(names: &[&str], goldens: &Goldens, opts: &RunOptions) -> Result<Vec<Report>, String> {
    names
        .iter()
        .map(|n| {
            let s = scenarios::find(n).ok_or_else(|| format!("unknown scenario `{n}`"))?;
            Ok(run_scenario(s, goldens, opts))
        })
        .collect()
}
