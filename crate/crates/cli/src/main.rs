use mirabolic_cli::cli::{parse_args, run};

fn main() {
    let cli = parse_args(std::env::args_os()).unwrap_or_else(|e| e.exit());
    std::process::exit(run(&cli));
}
