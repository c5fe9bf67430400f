use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{value_parser, Arg, ArgAction, Command};

use hkcalc_cli::goldens::load_goldens;
use hkcalc_cli::report::{emit_report, emit_reports, Format};
use hkcalc_cli::scenarios::REGISTRY;
use hkcalc_cli::{run_all, RunOptions};

fn cli() -> Command {
    let mut cmd = Command::new("hkcalc")
        .about("Replay the intersection-theory, lattice and trivector computations and check them against goldens")
        .subcommand_required(true)
        .arg(
            Arg::new("format")
                .long("format")
                .global(true)
                .value_parser(["text", "json"])
                .default_value("text"),
        )
        .arg(Arg::new("seed").long("seed").global(true).value_parser(value_parser!(u64)).default_value("0"))
        .arg(
            Arg::new("fixture")
                .long("fixture")
                .global(true)
                .value_parser(value_parser!(PathBuf))
                .help("goldens file replacing the built-in one"),
        )
        .arg(Arg::new("timeout").long("timeout").global(true).value_parser(value_parser!(f64)).help("seconds per scenario"))
        .arg(
            Arg::new("no-timing")
                .long("no-timing")
                .global(true)
                .action(ArgAction::SetTrue)
                .help("report elapsed_ms = 0 for byte-identical output"),
        )
        .subcommand(Command::new("all").about("run every scenario"))
        .subcommand(Command::new("list").about("list the scenarios"));
    for s in REGISTRY {
        cmd = cmd.subcommand(Command::new(s.name));
    }
    cmd
}

fn main() -> ExitCode {
    let m = cli().get_matches();
    let (sub, _) = m.subcommand().expect("subcommand required");
    if sub == "list" {
        for s in REGISTRY {
            println!("{}", s.name);
        }
        return ExitCode::SUCCESS;
    }
    let format = if m.get_one::<String>("format").map(String::as_str) == Some("json") { Format::Json } else { Format::Text };
    let opts = RunOptions {
        seed: *m.get_one::<u64>("seed").unwrap(),
        timeout: m.get_one::<f64>("timeout").map(|&t| Duration::from_secs_f64(t)),
        no_timing: m.get_flag("no-timing"),
    };
    let goldens = match load_goldens(m.get_one::<PathBuf>("fixture").map(PathBuf::as_path)) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let names: Vec<&str> = if sub == "all" { REGISTRY.iter().map(|s| s.name).collect() } else { vec![sub] };
    let reports = match run_all(&names, &goldens, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if sub == "all" {
        print!("{}", emit_reports(&reports, format));
    } else {
        print!("{}", emit_report(&reports[0], format));
    }
    if reports.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
