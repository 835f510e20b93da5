use clap::Parser;

use gperm::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
