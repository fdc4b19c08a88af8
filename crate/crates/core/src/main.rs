use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let seed = std::env::var(wignerkit::cli::SEED_ENV).ok();
    let code = wignerkit::cli::run_with_io(
        std::env::args_os(),
        seed.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
