use clap::Parser;
use cmcsel::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
