use std::io;

fn main() {
    let code = pareto_prune::cli::run_cli(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
