use clap::Parser;

fn main() -> std::process::ExitCode {
    covercert::main_with(covercert::Cli::parse())
}
