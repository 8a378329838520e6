use clap::Parser;
use gossip_age::cli::{run, Args};

fn main() {
    std::process::exit(run(&Args::parse()));
}
