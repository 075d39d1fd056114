use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Some(threads) = std::env::var("HOMOCAT_THREADS").ok().and_then(|t| t.parse::<usize>().ok()) {
        // Ignoring the error is fine: it only fails if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let out = homocat::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
