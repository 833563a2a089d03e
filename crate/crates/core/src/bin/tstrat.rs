use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let (code, report) = tstrat_core::cli::run(&argv);
    // a closed pipe downstream is not our error
    let _ = writeln!(std::io::stdout(), "{}", report);
    ExitCode::from(code as u8)
}
