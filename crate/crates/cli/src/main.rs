use clap::Parser;
use sympair_cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
