use clap::Parser;

fn main() {
    let cli = chaincert::Cli::parse();
    let (code, report) = chaincert::run(&cli);
    if chaincert::color_enabled() {
        print!("{}", chaincert::colorize(&report));
    } else {
        print!("{report}");
    }
    std::process::exit(code);
}
