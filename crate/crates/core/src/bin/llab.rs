use std::process::ExitCode;

fn main() -> ExitCode {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    let code = llab::cli::main_with(std::env::args_os(), &mut out, &mut err, llab::cli::color_from_env());
    ExitCode::from(code as u8)
}
