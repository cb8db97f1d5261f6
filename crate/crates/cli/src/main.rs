use clap::Parser;

fn main() {
    let cli = match helly_cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors share the generic error code
            std::process::exit(if e.use_stderr() { helly_cli::EXIT_ERROR } else { helly_cli::EXIT_OK });
        }
    };
    std::process::exit(helly_cli::run(cli));
}
