use clap::Parser;
use genusgauge_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let code = match run(&cli, &mut stdout) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("genusgauge: {err}");
            err.exit_code()
        }
    };
    std::process::exit(code);
}
