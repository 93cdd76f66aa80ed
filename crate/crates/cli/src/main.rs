use clap::Parser;

fn main() {
    let cli = su2w_cli::Cli::parse();
    if let Err(e) = su2w_cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.code);
    }
}
