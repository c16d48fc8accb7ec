use clap::Parser;
use structkit_cli::errors::{classify, ErrorReport};
use structkit_cli::{run, Cli};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        let report = ErrorReport {
            code: classify(&err),
            message: &format!("{err:#}"),
        };
        eprintln!(
            "{}",
            serde_json::to_string(&report).unwrap_or_else(|_| format!("{err:#}"))
        );
        std::process::exit(1);
    }
}
