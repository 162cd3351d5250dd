use std::io::Write;

fn main() {
    if let Err(e) = shimura_kit::cli::configure_threads() {
        eprintln!("error: {e}");
        std::process::exit(shimura_kit::cli::EXIT_USAGE);
    }
    let out = shimura_kit::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}
