use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let r = catlift_cli::commands::run(std::env::args_os());
    print!("{}", r.stdout);
    eprint!("{}", r.stderr);
    std::io::stdout().flush().ok();
    ExitCode::from(r.code as u8)
}
