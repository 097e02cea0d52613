use clap::Parser;

use biquotient::cli::{run, Cli};

fn main() {
    if let Some(n) = std::env::var("BIQ_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    std::process::exit(run(cli));
}
