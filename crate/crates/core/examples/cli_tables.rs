//! Running subcommands in-process on an inline config and printing CSV.
//!
//! cargo run --example cli_tables

use gossip_age::cli::config::OutputFormat;
use gossip_age::cli::{execute, render, Command, RunConfig};

const CONFIG: &str = "
params.p_e = 0.3
params.beta = 0.6
params.p = 0.2
params.L = 10
topology.class = line
topology.n = 11
cost.kind = quadratic
cost.c0 = 80
optimize.k_min = 4
optimize.k_max = 12
";

fn main() -> Result<(), gossip_age::cli::CliError> {
    let cfg: RunConfig = CONFIG.parse()?;
    for command in [Command::Analyze, Command::Equilibria, Command::Optimize] {
        let outcome = execute(command, &cfg)?;
        println!("# {command:?}");
        print!("{}", render(&outcome, OutputFormat::Csv));
        println!();
    }
    Ok(())
}
