use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (stdin, stdout, stderr) = (io::stdin(), io::stdout(), io::stderr());
    let mut io = mosaic_cli::Io { stdin: &mut stdin.lock(), stdout: &mut stdout.lock(), stderr: &mut stderr.lock() };
    let code = mosaic_cli::dispatch(std::env::args_os(), &mut io);
    ExitCode::from(code as u8)
}
