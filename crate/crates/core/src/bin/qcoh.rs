use std::io;
use std::process::ExitCode;

use qcoh::cli::{self, THREADS_ENV};

fn main() -> ExitCode {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        match v.parse::<usize>() {
            Ok(threads) if threads > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
            }
            _ => eprintln!("warning: ignoring {THREADS_ENV}={v:?}"),
        }
    }
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = cli::main_with_args(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code as u8)
}
