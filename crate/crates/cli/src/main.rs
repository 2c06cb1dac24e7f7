use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = finmarkov_cli::dispatch(std::env::args_os(), std::env::var_os(finmarkov_cli::ATOL_VAR));
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
