use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = twistcon::cli::run(std::env::args_os());
    let _ = if out.code == 0 {
        std::io::stdout().write_all(out.text.as_bytes())
    } else {
        std::io::stderr().write_all(out.text.as_bytes())
    };
    ExitCode::from(out.code as u8)
}
