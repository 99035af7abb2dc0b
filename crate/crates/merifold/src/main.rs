use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (bytes, code) = match merifold::seed_from_env() {
        Ok(seed) => merifold::main_with(std::env::args_os(), seed),
        Err(msg) => {
            let report = merifold::RunReport::usage(msg);
            (merifold::emit(&report, merifold::Format::Json), 1)
        }
    };
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(&bytes);
    let _ = out.flush();
    ExitCode::from(code as u8)
}
