use clap::Parser;
use eof_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    let code = eof_cli::run(&cli, std::env::args().collect());
    std::process::exit(code);
}
