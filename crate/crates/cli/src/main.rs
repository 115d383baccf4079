use clap::Parser;
use treeaug_cli::{run, Cli};

fn main() {
    env_logger::init();
    let cli = Cli::parse();
    let code = run(cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
