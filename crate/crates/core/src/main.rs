use clap::Parser;

fn main() {
    let args = orbitlift::cli::Args::parse();
    std::process::exit(orbitlift::cli::main_with(args));
}
